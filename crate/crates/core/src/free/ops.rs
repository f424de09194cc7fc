use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::{One, Zero};

use super::element::{mono_coproduct, FaContext, FaElement};
use super::mono::Mono;
use crate::error::{Error, Result};
use crate::rational::{factorial_q, Q};
use crate::trees::{enumerate_trees, tree_stats, PlaneTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// `u \ v` (left) or `u / v` (right) in the free bialgebra.
pub fn fa_divide(u: &FaElement, v: &FaElement, side: Side) -> Result<FaElement> {
    u.check_context(v)?;
    let mut out = FaElement::zero(u.context());
    match side {
        Side::Left => {
            for (m, c) in u.iter() {
                out.add_scaled(&ldiv_mono(m, v), c);
            }
        }
        Side::Right => {
            for (m, c) in v.iter() {
                out.add_scaled(&rdiv_mono(u, m), c);
            }
        }
    }
    Ok(out)
}

/// `m \ v = epsilon(m) v - sum' m_(1) \ (m_(2) v)`, the sum omitting `m (x) 1`.
fn ldiv_mono(m: &Mono, v: &FaElement) -> FaElement {
    if m.is_one() {
        return v.clone();
    }
    let ctx = v.context();
    let mut out = FaElement::zero(ctx);
    for (m1, m2, k) in mono_coproduct(m) {
        if m2.is_one() {
            continue;
        }
        let m2v = &FaElement::from_mono(ctx, m2, Q::one()) * v;
        if m2v.is_zero() {
            continue;
        }
        out.add_scaled(&ldiv_mono(&m1, &m2v), &-Q::from_integer(k.into()));
    }
    out
}

/// `u / m = epsilon(m) u - sum' (u m_(1)) / m_(2)`, the sum omitting `1 (x) m`.
fn rdiv_mono(u: &FaElement, m: &Mono) -> FaElement {
    if m.is_one() {
        return u.clone();
    }
    let ctx = u.context();
    let mut out = FaElement::zero(ctx);
    for (m1, m2, k) in mono_coproduct(m) {
        if m1.is_one() {
            continue;
        }
        let um1 = u * &FaElement::from_mono(ctx, m1, Q::one());
        if um1.is_zero() {
            continue;
        }
        out.add_scaled(&rdiv_mono(&um1, &m2), &-Q::from_integer(k.into()));
    }
    out
}

/// `(x, y, z) = (xy)z - x(yz)`.
pub fn fa_associator(x: &FaElement, y: &FaElement, z: &FaElement) -> Result<FaElement> {
    x.check_context(y)?;
    y.check_context(z)?;
    Ok(&(&(x * y) * z) - &(x * &(y * z)))
}

/// `[x, y] = xy - yx`.
pub fn fa_commutator(x: &FaElement, y: &FaElement) -> Result<FaElement> {
    x.check_context(y)?;
    Ok(&(x * y) - &(y * x))
}

/// `((x_1 x_2) ...) x_m`, or `1` for an empty list.
pub fn left_normed(ctx: &Arc<FaContext>, xs: &[FaElement]) -> FaElement {
    xs.iter().fold(FaElement::one(ctx), |acc, x| &acc * x)
}

fn require_primitive(xs: &[&FaElement]) -> Result<()> {
    for x in xs {
        if !x.is_primitive() {
            return Err(Error::NotPrimitive(x.to_string()));
        }
    }
    Ok(())
}

/// `p(u, v, z) = sum (u_(1) v_(1)) \ (u_(2), v_(2), z)` for arbitrary `u`, `v`.
pub fn p_general(u: &FaElement, v: &FaElement, z: &FaElement) -> Result<FaElement> {
    u.check_context(v)?;
    v.check_context(z)?;
    let ctx = u.context();
    let du = u.coproduct();
    let dv = v.coproduct();
    let mut out = FaElement::zero(ctx);
    for ((u1, u2), a) in du.iter() {
        if u2.is_one() {
            continue;
        }
        for ((v1, v2), b) in dv.iter() {
            if v2.is_one() {
                continue;
            }
            let u2 = FaElement::from_mono(ctx, u2.clone(), Q::one());
            let v2 = FaElement::from_mono(ctx, v2.clone(), Q::one());
            let assoc = fa_associator(&u2, &v2, z)?;
            if assoc.is_zero() {
                continue;
            }
            out.add_scaled(&ldiv_mono(&Mono::mul(u1, v1), &assoc), &(a * b));
        }
    }
    Ok(out)
}

/// `p(x_1, ..., x_m; y_1, ..., y_n; z)` on primitive arguments.
pub fn p_operation(xs: &[FaElement], ys: &[FaElement], z: &FaElement) -> Result<FaElement> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::InvalidArgument("p needs non-empty argument blocks".into()));
    }
    let refs: Vec<&FaElement> = xs.iter().chain(ys).chain(std::iter::once(z)).collect();
    require_primitive(&refs)?;
    let ctx = z.context();
    p_general(&left_normed(ctx, xs), &left_normed(ctx, ys), z)
}

/// `<x_1, ..., x_m; y, z>`; with no `x` this is `-[y, z]`.
pub fn su_bracket(xs: &[FaElement], y: &FaElement, z: &FaElement) -> Result<FaElement> {
    let refs: Vec<&FaElement> = xs.iter().chain([y, z]).collect();
    require_primitive(&refs)?;
    if xs.is_empty() {
        return Ok(-&fa_commutator(y, z)?);
    }
    let u = left_normed(z.context(), xs);
    Ok(&p_general(&u, y, z)?.scale(&-Q::one()) + &p_general(&u, z, y)?)
}

/// The Shestakov-Umirbaev multioperator, averaged over both blocks.
pub fn su_multioperator(xs: &[FaElement], ys: &[FaElement]) -> Result<FaElement> {
    if xs.is_empty() || ys.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "the multioperator needs m >= 1 and n >= 2, got m = {}, n = {}",
            xs.len(),
            ys.len()
        )));
    }
    let ctx = ys[0].context();
    let mut out = FaElement::zero(ctx);
    let n = ys.len();
    for tau in (0..xs.len()).permutations(xs.len()) {
        let xp: Vec<FaElement> = tau.iter().map(|&i| xs[i].clone()).collect();
        let u = left_normed(ctx, &xp);
        for sigma in (0..n).permutations(n) {
            let yp: Vec<FaElement> = sigma[..n - 1].iter().map(|&i| ys[i].clone()).collect();
            let v = left_normed(ctx, &yp);
            out.add_scaled(&p_general(&u, &v, &ys[sigma[n - 1]])?, &Q::one());
        }
    }
    let refs: Vec<&FaElement> = xs.iter().chain(ys).collect();
    require_primitive(&refs)?;
    Ok(out.scale(&(Q::one() / (factorial_q(xs.len()) * factorial_q(n)))))
}

/// Solves `a Y = z` (left) or `Y a = z` (right) in `1 + R`, degree by degree.
pub fn fa_loop_divide(a: &FaElement, z: &FaElement, side: Side) -> Result<FaElement> {
    a.check_context(z)?;
    if !a.counit().is_one() {
        return Err(Error::Counit(format!("divisor must have counit 1, found {}", a.counit())));
    }
    let r = a - &FaElement::one(a.context());
    let mut y = z.clone();
    for _ in 0..=a.context().degree() {
        let ry = match side {
            Side::Left => &r * &y,
            Side::Right => &y * &r,
        };
        let next = z - &ry;
        if next == y {
            break;
        }
        y = next;
    }
    Ok(y)
}

/// `exp_b X = b + X + X(b\X)/2! + (X(b\X))(b\X)/3! + ...`; `b = 1` by default.
pub fn fa_exp(x: &FaElement, base: Option<&FaElement>) -> Result<FaElement> {
    if !x.counit().is_zero() {
        return Err(Error::Counit(format!("exponent must have counit 0, found {}", x.counit())));
    }
    let ctx = x.context();
    let (mut out, w) = match base {
        None => (FaElement::one(ctx), x.clone()),
        Some(b) => (b.clone(), fa_loop_divide(b, x, Side::Left)?),
    };
    exp_series(&mut out, x, &w, ctx.degree());
    Ok(out)
}

/// Adds `sum_k ((X W) ... W) / k!` to `out`, keeping degrees `<= n`.
fn exp_series(out: &mut FaElement, x: &FaElement, w: &FaElement, n: usize) {
    let mut term = x.truncate(n);
    let mut k = 1usize;
    while !term.is_zero() {
        out.add_scaled(&term, &Q::one());
        k += 1;
        term = term.mul_trunc(w, n).scale(&(Q::one() / Q::from_integer(k.into())));
    }
}

/// `log(1 + x) = sum_tau B_tau / tau! * tau` in one generator, to degree `n`.
pub fn fa_log(n: usize) -> Result<FaElement> {
    let ctx = FaContext::new(["x"], n);
    let mut out = FaElement::zero(&ctx);
    for d in 1..=n {
        for t in enumerate_trees(d)? {
            let (b, fact) = tree_stats(&t);
            out.add_term(Mono::from_tree(&t, 0), b / Q::from_integer(fact));
        }
    }
    Ok(out)
}

/// `log g` for `epsilon(g) = 1`: the logarithm series evaluated at `g - 1`.
pub fn fa_log_at(g: &FaElement) -> Result<FaElement> {
    if !g.counit().is_one() {
        return Err(Error::Counit(format!("logarithm needs counit 1, found {}", g.counit())));
    }
    let ctx = g.context();
    let y = g - &FaElement::one(ctx);
    let mut memo: HashMap<PlaneTree, FaElement> = HashMap::new();
    let mut out = FaElement::zero(ctx);
    for d in 1..=ctx.degree() {
        for t in enumerate_trees(d)? {
            let (b, fact) = tree_stats(&t);
            let value = eval_tree(&t, &y, &mut memo);
            out.add_scaled(&value, &(b / Q::from_integer(fact)));
        }
    }
    Ok(out)
}

fn eval_tree(t: &PlaneTree, y: &FaElement, memo: &mut HashMap<PlaneTree, FaElement>) -> FaElement {
    if let Some(v) = memo.get(t) {
        return v.clone();
    }
    let v = match t {
        PlaneTree::Leaf => y.clone(),
        PlaneTree::Node(l, r) => &eval_tree(l, y, memo) * &eval_tree(r, y, memo),
    };
    memo.insert(t.clone(), v.clone());
    v
}

/// The same series obtained by solving `exp(L) = 1 + x` degree by degree.
pub fn fa_log_by_inversion(n: usize) -> Result<FaElement> {
    let ctx = FaContext::new(["x"], n);
    let x = FaElement::gen(&ctx, 0);
    let mut l = x.clone();
    for d in 2..=n {
        let mut partial = FaElement::one(&ctx);
        exp_series(&mut partial, &l, &l, d);
        // exp(L) = 1 + L + (terms built from the lower parts of L)
        let excess = partial.homogeneous_part(d);
        l.add_scaled(&excess, &-Q::one());
    }
    Ok(l)
}

/// Coefficients of the associative image of a one-generator series, by degree.
pub fn associative_collapse(x: &FaElement) -> Vec<Q> {
    let n = x.context().degree();
    let mut out = vec![Q::zero(); n + 1];
    for (m, c) in x.iter() {
        out[m.degree()] += c;
    }
    out
}
