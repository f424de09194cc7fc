//! p(a, ..., a; b; b) in the bialgebra of the loop of a Jordan algebra.

use sabinin::catalog::{jordan_spin_normalized, loop_from_algebra};
use sabinin::dist::DistBialgebra;
use sabinin::rational::format_q;

fn main() -> sabinin::Result<()> {
    let s = jordan_spin_normalized();
    let g = DistBialgebra::new(loop_from_algebra(&s.algebra, 6));
    let show = |v: &[sabinin::Q]| v.iter().map(format_q).collect::<Vec<_>>().join(", ");
    println!("a = ({}), b = ({}), e = ({})", show(&s.a), show(&s.b), show(&s.e));
    for m in 1..=4 {
        let p = g.p_operation(&vec![s.a.clone(); m], std::slice::from_ref(&s.b), &s.b)?;
        println!("p(a^{m}; b; b) = ({})", show(&p));
    }
    Ok(())
}
