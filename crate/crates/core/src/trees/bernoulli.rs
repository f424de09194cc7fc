use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::tree::{enumerate_trees, PlaneTree};
use crate::error::{Error, Result};
use crate::rational::{factorial, factorial_q, Q};

static BERNOULLI: Mutex<Vec<Q>> = Mutex::new(Vec::new());

/// Bernoulli numbers from `sum_{k<n} B_k / (k! (n-k)!) = 0`, so `B_1 = -1/2`.
pub fn bernoulli_number(k: usize) -> Q {
    let mut memo = BERNOULLI.lock().unwrap_or_else(|e| e.into_inner());
    if memo.is_empty() {
        memo.push(Q::one());
    }
    while memo.len() <= k {
        // solve the relation at n = len + 1 for B_len
        let m = memo.len();
        let n = m + 1;
        let mut acc = Q::zero();
        for (j, b) in memo.iter().enumerate() {
            acc += b / (factorial_q(j) * factorial_q(n - j));
        }
        // B_m / (m! 1!) = -acc
        memo.push(-acc * factorial_q(m));
    }
    memo[k].clone()
}

/// Catalan numbers by the convolution recurrence `C(m) = sum C(i) C(m-1-i)`.
pub fn catalan(m: usize) -> BigInt {
    let mut c = vec![BigInt::one()];
    for k in 1..=m {
        let mut s = BigInt::zero();
        for i in 0..k {
            s += &c[i] * &c[k - 1 - i];
        }
        c.push(s);
    }
    c.swap_remove(m)
}

/// `(B_tau, tau!)` through the left-comb decomposition `tau = (..((x t1) t2)..) tk`.
pub fn tree_stats(t: &PlaneTree) -> (Q, BigInt) {
    let teeth = t.left_comb();
    let k = teeth.len();
    let mut b = bernoulli_number(k);
    let mut fact = factorial(k);
    for tooth in teeth {
        let (bt, ft) = tree_stats(tooth);
        b *= bt;
        fact *= ft;
    }
    (b, fact)
}

/// `sum_{deg tau = n} B_tau / tau!`.
pub fn bernoulli_tree_sum(n: usize) -> Result<Q> {
    Ok(enumerate_trees(n)?
        .iter()
        .map(|t| {
            let (b, f) = tree_stats(t);
            b / Q::from_integer(f)
        })
        .sum())
}

/// `lambda_n = sum_tau prod_v beta_{outdeg(v)}` over plane rooted trees with `n`
/// vertices, read off binary trees: each comb of length `k` is a vertex with
/// `k` children. `beta[r - 1]` holds `beta_r`; leaves carry weight one.
pub fn weighted_tree_sum(n: usize, beta: &[Q]) -> Result<Q> {
    if n > 1 && beta.len() < n - 1 {
        return Err(Error::InvalidArgument(format!("need weights beta_1..beta_{}, got {}", n - 1, beta.len())));
    }
    fn weight(t: &PlaneTree, beta: &[Q]) -> Q {
        let teeth = t.left_comb();
        let mut w = if teeth.is_empty() { Q::one() } else { beta[teeth.len() - 1].clone() };
        for tooth in teeth {
            w *= weight(tooth, beta);
        }
        w
    }
    Ok(enumerate_trees(n)?.iter().map(|t| weight(t, beta)).sum())
}
