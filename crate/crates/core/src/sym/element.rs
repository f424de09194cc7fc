use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::exps::{add_exps, degree, exp_binomial, exp_factorial_q, sub_exps, sub_monomials, unit_vector, ExpVector};
use super::tensor::SymTensor;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

/// An element of V, as coordinates in the standard basis.
pub type VectorElem = Vec<Q>;

/// A finite linear combination of monomials `e^a` in k[V].
///
/// The same type serves as the symmetric algebra (for polynomial and series
/// arithmetic) and as the coalgebra of distributions on V.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymElement {
    dim: usize,
    terms: BTreeMap<ExpVector, Q>,
}

impl SymElement {
    pub fn zero(dim: usize) -> Self {
        SymElement { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::monomial(vec![0; dim])
    }

    pub fn monomial(a: ExpVector) -> Self {
        Self::term(a, Q::one())
    }

    pub fn term(a: ExpVector, c: Q) -> Self {
        let mut s = Self::zero(a.len());
        s.add_term(a, c);
        s
    }

    /// The basis vector `e_i` as a degree-one element.
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::monomial(unit_vector(dim, i))
    }

    /// Embeds a vector of V as a primitive element.
    pub fn from_vector(v: &[Q]) -> Self {
        let mut s = Self::zero(v.len());
        for (i, c) in v.iter().enumerate() {
            s.add_term(unit_vector(v.len(), i), c.clone());
        }
        s
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (ExpVector, Q)>) -> Result<Self> {
        let mut s = Self::zero(dim);
        for (a, c) in terms {
            if a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: a.len() });
            }
            s.add_term(a, c);
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExpVector, Q> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExpVector, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &[u8]) -> Q {
        self.terms.get(a).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, a: ExpVector, c: Q) {
        debug_assert_eq!(a.len(), self.dim);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(a) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &SymElement, c: &Q) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (a, x) in &other.terms {
            self.add_term(a.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> SymElement {
        let mut out = Self::zero(self.dim);
        out.add_scaled(self, c);
        out
    }

    fn check_dim(&self, other: &SymElement) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        Ok(self + other)
    }

    /// Largest degree of a stored monomial, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| degree(a)).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().map(|a| degree(a)).min()
    }

    /// Drops every monomial of degree above `n`.
    pub fn truncate(&self, n: usize) -> SymElement {
        self.filter(|a| degree(a) <= n)
    }

    pub fn homogeneous_part(&self, k: usize) -> SymElement {
        self.filter(|a| degree(a) == k)
    }

    pub fn filter(&self, mut keep: impl FnMut(&[u8]) -> bool) -> SymElement {
        SymElement {
            dim: self.dim,
            terms: self.terms.iter().filter(|(a, _)| keep(a)).map(|(a, c)| (a.clone(), c.clone())).collect(),
        }
    }

    /// Product in the symmetric algebra, keeping degrees `<= n`.
    pub fn mul_trunc(&self, other: &SymElement, n: usize) -> SymElement {
        debug_assert_eq!(self.dim, other.dim);
        let mut out = Self::zero(self.dim);
        let other_by_deg: Vec<(usize, &ExpVector, &Q)> = other.terms.iter().map(|(b, y)| (degree(b), b, y)).collect();
        for (a, x) in &self.terms {
            let da = degree(a);
            if da > n {
                continue;
            }
            for (db, b, y) in &other_by_deg {
                if da + db <= n {
                    out.add_term(add_exps(a, b), x * *y);
                }
            }
        }
        out
    }

    /// Product in the symmetric algebra (exponent addition).
    pub fn product(&self, other: &SymElement) -> Result<SymElement> {
        self.check_dim(other)?;
        Ok(self.mul_trunc(other, usize::MAX))
    }

    /// `e^a * e_i` for every term, i.e. multiplication by a basis vector.
    pub fn mul_basis(&self, i: usize) -> SymElement {
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            let mut b = a.clone();
            b[i] += 1;
            out.add_term(b, x.clone());
        }
        out
    }

    /// Multiplies by a primitive element given as a vector of V.
    pub fn mul_vector(&self, v: &[Q]) -> SymElement {
        let mut out = Self::zero(self.dim);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.mul_basis(i), c);
            }
        }
        out
    }

    /// `epsilon`: the degree-zero coefficient.
    pub fn counit(&self) -> Q {
        self.coeff(&vec![0; self.dim])
    }

    /// `pi_V`: the degree-one coefficients.
    pub fn projection(&self) -> VectorElem {
        (0..self.dim).map(|i| self.coeff(&unit_vector(self.dim, i))).collect()
    }

    pub fn is_primitive(&self) -> bool {
        self.terms.keys().all(|a| degree(a) == 1)
    }

    /// `Delta(e^a) = sum_b binom(a, b) e^b (x) e^(a-b)`.
    pub fn coproduct(&self) -> SymTensor {
        let mut t = SymTensor::zero(vec![self.dim, self.dim]);
        for (a, x) in &self.terms {
            for b in sub_monomials(a) {
                let c = x * Q::from_integer(exp_binomial(a, &b).into());
                let rest = sub_exps(a, &b);
                t.add_term(vec![b, rest], c);
            }
        }
        t
    }

    /// The `k`-fold iterated coproduct into `k` slots (`k >= 1`).
    pub fn iterated_coproduct(&self, k: usize) -> SymTensor {
        assert!(k >= 1, "iterated coproduct needs at least one slot");
        let mut t = SymTensor::zero(vec![self.dim]);
        for (a, x) in &self.terms {
            t.add_term(vec![a.clone()], x.clone());
        }
        for slot in 1..k {
            t = t.split(slot - 1, 2).expect("slot in range");
        }
        t
    }

    /// Converts distribution values `theta(e^a)` to series coefficients
    /// `theta(e^a) / a!`.
    pub fn to_series(&self) -> SymElement {
        self.map_coeffs(|a, c| c / exp_factorial_q(a))
    }

    /// Inverse of [`SymElement::to_series`].
    pub fn from_series(&self) -> SymElement {
        self.map_coeffs(|a, c| c * exp_factorial_q(a))
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&[u8], &Q) -> Q) -> SymElement {
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            out.add_term(a.clone(), f(a, c));
        }
        out
    }

    /// Renames variables: monomial `a` goes to `f(a)` in dimension `dim`.
    pub fn map_monomials(&self, dim: usize, mut f: impl FnMut(&[u8]) -> ExpVector) -> SymElement {
        let mut out = Self::zero(dim);
        for (a, c) in &self.terms {
            out.add_term(f(a), c.clone());
        }
        out
    }

    /// Pads with zero exponents so that the variables occupy positions
    /// `offset..offset + self.dim` of a `dim`-dimensional space.
    pub fn embed(&self, dim: usize, offset: usize) -> SymElement {
        self.map_monomials(dim, |a| {
            let mut v = vec![0; dim];
            v[offset..offset + a.len()].copy_from_slice(a);
            v
        })
    }

    /// Pairing with a formal function given by its values on monomials.
    pub fn pair(&self, f: &SymElement) -> Q {
        let mut acc = Q::zero();
        for (a, c) in &self.terms {
            if let Some(v) = f.terms.get(a) {
                acc += c * v;
            }
        }
        acc
    }
}

impl Add for &SymElement {
    type Output = SymElement;
    fn add(self, other: &SymElement) -> SymElement {
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }
}

impl Sub for &SymElement {
    type Output = SymElement;
    fn sub(self, other: &SymElement) -> SymElement {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }
}

impl Neg for &SymElement {
    type Output = SymElement;
    fn neg(self) -> SymElement {
        self.scale(&-Q::one())
    }
}

fn format_monomial(a: &[u8]) -> String {
    let parts: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("e{}", i + 1) } else { format!("e{}^{}", i + 1, k) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

impl fmt::Display for SymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (a, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let m = format_monomial(a);
            if m == "1" {
                write!(f, "{}", format_q(c))?;
            } else if c.is_one() {
                f.write_str(&m)?;
            } else {
                write!(f, "({})*{}", format_q(c), m)?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u8>,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymJson {
    dim: usize,
    terms: Vec<TermJson>,
}

impl Serialize for SymElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SymJson {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| TermJson { exps: a.clone(), coeff: format_q(c) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = SymJson::deserialize(d)?;
        let mut out = SymElement::zero(j.dim);
        for t in j.terms {
            if t.exps.len() != j.dim {
                return Err(serde::de::Error::custom(format!(
                    "monomial of length {} in dimension {}",
                    t.exps.len(),
                    j.dim
                )));
            }
            out.add_term(t.exps, parse_q(&t.coeff).map_err(serde::de::Error::custom)?);
        }
        Ok(out)
    }
}
