//! Builds a product similar to a loop's with a prescribed multioperator
//! and checks that the brackets do not change.

use sabinin::catalog::builtin_loop;
use sabinin::dist::{make_similar_product, DistBialgebra, MultioperatorTable};

fn main() -> sabinin::Result<()> {
    let n = 4;
    let b = DistBialgebra::new(builtin_loop("jordan-k3-loop", n)?);
    let phi = b.phi_su_table(n)?;
    println!("original multioperator is zero: {}", phi.is_zero());
    let similar = make_similar_product(&b, &MultioperatorTable::zero(b.dim(), n))?;
    println!("prescribed zero realized: {}", similar.bialgebra.phi_su_table(n)?.is_zero());
    for arity in 2..=n {
        let same = similar.bialgebra.bracket_table(arity)? == b.bracket_table(arity)?;
        println!("brackets of arity {arity} unchanged: {same}");
    }
    let changed = similar.table.iter().filter(|((x, y), v)| b.mul_monomials(x, y).map(|w| **v != *w).unwrap_or(true));
    println!("{} of {} products of basis monomials changed", changed.count(), similar.table.len());
    Ok(())
}
