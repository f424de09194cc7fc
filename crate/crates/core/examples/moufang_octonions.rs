//! The loop of invertible split octonions near 1 satisfies the Moufang
//! identity, and so does its bialgebra of distributions.

use sabinin::catalog::builtin_loop;
use sabinin::dist::DistBialgebra;
use sabinin::formal::check_loop_identity;
use sabinin::trees::parse_identity;

fn main() -> sabinin::Result<()> {
    let f = builtin_loop("split-octonion-loop", 4)?;
    let moufang = parse_identity("(x1*(x2*(x1*x3))) = (((x1*x2)*x1)*x3)", 3)?;
    let v = check_loop_identity(&moufang, &f)?;
    println!("{moufang}\n  in the loop, to degree {}: {}", v.degree, v.holds);
    let lin = DistBialgebra::new(f).check_linearized_identity(&moufang, 25, 2024, 0)?;
    println!(
        "  linearized, {} random triples of degree {} (seed {}): {}",
        lin.samples, lin.sample_degree, lin.seed, lin.holds
    );

    let jordan = builtin_loop("jordan-k3-loop", 4)?;
    let w = check_loop_identity(&moufang, &jordan)?;
    match w.witness {
        Some(w) => println!("the Jordan loop fails it at multidegree {:?}", w.multidegree),
        None => println!("the Jordan loop satisfies it too"),
    }
    Ok(())
}
