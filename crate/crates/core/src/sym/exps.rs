//! Exponent vectors: the monomial basis `e^a = e_1^{a_1} ... e_d^{a_d}` of k[V].

use num_bigint::BigInt;
use num_traits::One;

use crate::rational::{binomial_u64, factorial, Q};

/// Exponents of a monomial; the length is the ambient dimension.
pub type ExpVector = Vec<u8>;

pub fn degree(a: &[u8]) -> usize {
    a.iter().map(|&x| x as usize).sum()
}

/// `a! = a_1! ... a_d!`.
pub fn exp_factorial(a: &[u8]) -> BigInt {
    a.iter().fold(BigInt::one(), |acc, &x| acc * factorial(x as usize))
}

pub fn exp_factorial_q(a: &[u8]) -> Q {
    Q::from_integer(exp_factorial(a))
}

/// `prod_i binom(a_i, b_i)`.
pub fn exp_binomial(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).map(|(&x, &y)| binomial_u64(x as usize, y as usize)).product()
}

pub fn unit_vector(dim: usize, i: usize) -> ExpVector {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

pub fn add_exps(a: &[u8], b: &[u8]) -> ExpVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `a - b`, assuming `b <= a` componentwise.
pub fn sub_exps(a: &[u8], b: &[u8]) -> ExpVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn divides(b: &[u8], a: &[u8]) -> bool {
    b.iter().zip(a).all(|(x, y)| x <= y)
}

/// All monomials of exact degree `deg` in `dim` variables, in descending
/// lexicographic order (so `e_1^deg` comes first).
pub fn monomials_of_degree(dim: usize, deg: usize) -> Vec<ExpVector> {
    fn rec(dim: usize, left: usize, cur: &mut ExpVector, out: &mut Vec<ExpVector>) {
        if cur.len() + 1 == dim {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=left).rev() {
            cur.push(k as u8);
            rec(dim, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        if deg == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(dim, deg, &mut Vec::with_capacity(dim), &mut out);
    out
}

/// All monomials of degree at most `n`, grouped by increasing degree.
pub fn monomials_up_to(dim: usize, n: usize) -> Vec<ExpVector> {
    (0..=n).flat_map(|k| monomials_of_degree(dim, k)).collect()
}

/// Every `b` with `0 <= b <= a`, in an order where `0` comes first and `a` last.
pub fn sub_monomials(a: &[u8]) -> Vec<ExpVector> {
    let mut out = vec![Vec::with_capacity(a.len())];
    for &ai in a {
        let mut next = Vec::with_capacity(out.len() * (ai as usize + 1));
        for prefix in &out {
            for k in 0..=ai {
                let mut p = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Sum of exponents over a contiguous range of coordinates.
pub fn slot_degree(a: &[u8], start: usize, len: usize) -> usize {
    degree(&a[start..start + len])
}

/// Degree of `a` in each slot of the given sizes.
pub fn multidegree(a: &[u8], dims: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(dims.len());
    let mut start = 0;
    for &d in dims {
        out.push(slot_degree(a, start, d));
        start += d;
    }
    out
}

/// Cuts a concatenated exponent vector into per-slot pieces.
pub fn split_by_dims(a: &[u8], dims: &[usize]) -> Vec<ExpVector> {
    let mut out = Vec::with_capacity(dims.len());
    let mut start = 0;
    for &d in dims {
        out.push(a[start..start + d].to_vec());
        start += d;
    }
    out
}

pub fn concat_exps(parts: &[ExpVector]) -> ExpVector {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// Number of monomials of degree `i` in `d` variables.
pub fn graded_dimension(d: usize, i: usize) -> u64 {
    if d == 0 {
        return u64::from(i == 0);
    }
    binomial_u64(i + d - 1, d - 1)
}
