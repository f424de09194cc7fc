//! A formal map between the Jordan loop and a loop with a nonlinear
//! product, checked to be a homomorphism, and a perturbation that is not.

use sabinin::catalog::{builtin_loop, check_homomorphism, nonlinear_loop_f, perturb_linear, phi_g_to_f};
use sabinin::rational::q;

fn main() -> sabinin::Result<()> {
    let n = 6;
    let g = builtin_loop("jordan-k3-loop", n)?;
    let f = nonlinear_loop_f(n);
    let theta = phi_g_to_f(n);
    let v = check_homomorphism(&theta, &g, &f)?;
    println!("homomorphism to degree {}: {}", v.degree, v.holds);
    let bent = perturb_linear(&theta, 0, 1, &q(1))?;
    let w = check_homomorphism(&bent, &g, &f)?;
    println!("perturbed map is a homomorphism: {}", w.holds);
    if let Some(w) = w.witness {
        println!("  first failure at multidegree {:?}", w.multidegree);
    }
    Ok(())
}
