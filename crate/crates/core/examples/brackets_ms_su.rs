//! Compares the brackets read off the connection of a loop (covariant
//! derivatives of the torsion) with those computed from primitive elements.

use std::time::Instant;

use sabinin::catalog::{builtin_loop, nonlinear_loop_f};
use sabinin::connection::ms_bracket_table;
use sabinin::dist::DistBialgebra;
use sabinin::rational::q;

fn main() -> sabinin::Result<()> {
    let cases = [
        ("split-octonion-loop", builtin_loop("split-octonion-loop", 4)?),
        ("jordan-k3-loop", builtin_loop("jordan-k3-loop", 5)?),
        ("nonlinear-f-loop", nonlinear_loop_f(5)),
    ];
    for (name, f) in cases {
        let b = DistBialgebra::new(f.clone());
        for arity in 2..=f.degree() {
            let start = Instant::now();
            let ms = ms_bracket_table(&f, arity)?;
            let t_ms = start.elapsed();
            let su = b.bracket_table(arity)?;
            let nonzero = ms.entries.iter().filter(|e| e.value.iter().any(|c| *c != q(0))).count();
            println!(
                "{name:<20} arity {arity}: {} entries, {nonzero} nonzero, equal: {}  (ms {:.2?}, su {:.2?})",
                ms.entries.len(),
                ms == su,
                t_ms,
                start.elapsed() - t_ms
            );
        }
    }
    Ok(())
}
