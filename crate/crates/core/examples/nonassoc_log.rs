//! The nonassociative logarithm of 1 + x, computed from trees and by
//! inverting the exponential.

use sabinin::free::{associative_collapse, fa_exp, fa_log, fa_log_by_inversion, FaElement};
use sabinin::rational::format_q;

fn main() -> sabinin::Result<()> {
    let n = 5;
    let log = fa_log(n)?;
    println!("log(1 + x) to degree {n}:\n  {}", log.format());
    println!("agrees with the inverse of exp: {}", log == fa_log_by_inversion(n)?);
    let ctx = log.context().clone();
    let one_plus_x = &FaElement::one(&ctx) + &FaElement::gen(&ctx, 0);
    println!("exp(log(1 + x)) = 1 + x: {}", fa_exp(&log, None)? == one_plus_x);
    let collapsed: Vec<String> = associative_collapse(&log).iter().map(format_q).collect();
    println!("associative image, by degree: {}", collapsed.join(", "));
    Ok(())
}
