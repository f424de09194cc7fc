//! Replaces x + y + x^2 y by a similar right alternative loop and prints
//! the corrections added in each y-degree.

use sabinin::formal::{check_loop_identity, right_alt_modify, FormalLoop};
use sabinin::rational::q;
use sabinin::sym::SymElement;
use sabinin::trees::parse_identity;

fn main() -> sabinin::Result<()> {
    let n = 6;
    let s = SymElement::from_terms(2, [(vec![1, 0], q(1)), (vec![0, 1], q(1)), (vec![2, 1], q(1))])?;
    let f = FormalLoop::from_series(1, n, vec![s])?;
    let (ft, phi) = right_alt_modify(&f)?;
    for k in 2..=n {
        let part = ft.map().filter_multidegree(|md| md[1] == k);
        println!("q_{k} = {}", part.series()[0]);
    }
    println!("similarity: {}", phi.map().series()[0]);
    let ra = parse_identity("((x1*x2)*x2) = (x1*(x2*x2))", 2)?;
    println!("original right alternative: {}", check_loop_identity(&ra, &f)?.holds);
    println!("modified right alternative: {}", check_loop_identity(&ra, &ft)?.holds);
    Ok(())
}
