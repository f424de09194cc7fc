use std::sync::Arc;

use num_traits::One;

use super::element::{FaContext, FaElement};
use super::ops::{fa_associator, fa_commutator, fa_exp, p_operation, su_multioperator};
use crate::error::{Error, Result};
use crate::rational::{factorial_q, qf, Q};

/// Two-generator context `alpha, beta` used for multioperator computations.
pub fn alpha_beta(degree: usize) -> Arc<FaContext> {
    FaContext::new(["α", "β"], degree)
}

/// The Mikheev-Sabinin multioperator `Phi'` of the free loop `x + y + xy`,
/// obtained by solving `sum_k ((a Phi') ... Phi') / k! = ab` with
/// `a = exp(alpha)`, `b = exp(beta)` degree by degree, up to `degree`.
pub fn multioperator_series(degree: usize) -> Result<FaElement> {
    let ctx = alpha_beta(degree);
    let a = fa_exp(&FaElement::gen(&ctx, 0), None)?;
    let b = fa_exp(&FaElement::gen(&ctx, 1), None)?;
    let ab = &a * &b;
    let mut phi = FaElement::zero(&ctx);
    for d in 1..=degree {
        let mut lhs = a.truncate(d);
        let a_phi = a.mul_trunc(&phi, d);
        let mut term = a_phi;
        let mut k = 1usize;
        while !term.is_zero() {
            lhs.add_scaled(&term, &Q::one());
            k += 1;
            term = term.mul_trunc(&phi, d).scale(&(Q::one() / Q::from_integer(k.into())));
        }
        let correction = &ab.homogeneous_part(d) - &lhs.homogeneous_part(d);
        phi.add_scaled(&correction, &Q::one());
    }
    Ok(phi)
}

/// The bidegree `(i, j)` component `Phi'_{i,j}(alpha; beta)`.
pub fn multioperator_ms(degree: usize, bidegree: (usize, usize)) -> Result<FaElement> {
    let (i, j) = bidegree;
    if i + j > degree {
        return Err(Error::DegreeOverflow { requested: i + j, limit: degree });
    }
    Ok(multioperator_series(degree)?.multihomogeneous_part(&[i, j]))
}

/// `Phi^SU_{i,j}(alpha; beta) = p(alpha^i; beta^(j-1); beta) / (i! j!)`, the
/// polynomial form of the Shestakov-Umirbaev multioperator.
pub fn multioperator_su(degree: usize, bidegree: (usize, usize)) -> Result<FaElement> {
    let (i, j) = bidegree;
    if i + j > degree {
        return Err(Error::DegreeOverflow { requested: i + j, limit: degree });
    }
    let ctx = alpha_beta(degree);
    let alpha = FaElement::gen(&ctx, 0);
    let beta = FaElement::gen(&ctx, 1);
    let xs = vec![alpha; i];
    let ys = vec![beta; j];
    let multilinear = su_multioperator(&xs, &ys)?;
    Ok(multilinear.scale(&(Q::one() / (factorial_q(i) * factorial_q(j)))))
}

/// `-(1/12)[beta, (alpha, beta, beta)] - (1/6) p(alpha; beta, beta; beta)`.
pub fn phi13_closed_form(ctx: &Arc<FaContext>) -> Result<FaElement> {
    let a = FaElement::gen(ctx, 0);
    let b = FaElement::gen(ctx, 1);
    let abb = fa_associator(&a, &b, &b)?;
    let bracket = fa_commutator(&b, &abb)?;
    let p = p_operation(&[a], &[b.clone(), b.clone()], &b)?;
    Ok(&bracket.scale(&qf(-1, 12)) + &p.scale(&qf(-1, 6)))
}

/// The displayed shape of `Phi'_{2,3}` with the free symbol filled by `v`:
/// `-(1/12)(a,b,(a,b,b)) + (1/12)(a,(a,b,b),b) - (1/24)[v, p(a,a;b;b)] - (1/12)p(a,a;b,b;b)`.
pub fn phi23_closed_form(ctx: &Arc<FaContext>, v: &FaElement) -> Result<FaElement> {
    let a = FaElement::gen(ctx, 0);
    let b = FaElement::gen(ctx, 1);
    let abb = fa_associator(&a, &b, &b)?;
    let t1 = fa_associator(&a, &b, &abb)?.scale(&qf(-1, 12));
    let t2 = fa_associator(&a, &abb, &b)?.scale(&qf(1, 12));
    let p21 = p_operation(&[a.clone(), a.clone()], std::slice::from_ref(&b), &b)?;
    let t3 = fa_commutator(v, &p21)?.scale(&qf(-1, 24));
    let t4 = p_operation(&[a.clone(), a], &[b.clone(), b.clone()], &b)?.scale(&qf(-1, 12));
    Ok(&(&(&t1 + &t2) + &t3) + &t4)
}
