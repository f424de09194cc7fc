//! The flat connection of a loop: adapted fields are parallel and the
//! torsion of two of them is minus their bracket at 1.

use sabinin::catalog::builtin_loop;
use sabinin::connection::{adapted_field, connection_from_loop, covariant_derivative, torsion, vf_bracket};
use sabinin::rational::format_q;

fn main() -> sabinin::Result<()> {
    let f = builtin_loop("split-octonion-loop", 3)?;
    let conn = connection_from_loop(&f)?;
    let d = f.dim();
    let unit = |i: usize| {
        let mut v = vec![sabinin::rational::q(0); d];
        v[i] = sabinin::rational::q(1);
        v
    };
    let show = |v: &[sabinin::Q]| v.iter().map(format_q).collect::<Vec<_>>().join(" ");
    for (i, j) in [(1, 2), (1, 4), (2, 5)] {
        let x = adapted_field(&conn, &unit(i))?;
        let y = adapted_field(&conn, &unit(j))?;
        let nab = covariant_derivative(&conn, &x, &y)?;
        let t = torsion(&conn, &x, &y)?;
        let br = vf_bracket(&x, &y)?;
        let one = vec![0u8; d];
        println!(
            "e{} e{}: nabla zero {}, T(1) = [{}], [X, Y](1) = [{}]",
            i + 1,
            j + 1,
            nab.is_zero(),
            show(t.value(&one)),
            show(br.value(&one))
        );
    }
    Ok(())
}
