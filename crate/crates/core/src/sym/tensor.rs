use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::element::SymElement;
use super::exps::{add_exps, exp_binomial, sub_exps, sub_monomials, ExpVector};
use crate::error::{Error, Result};
use crate::rational::Q;

/// An element of `k[V_1] (x) ... (x) k[V_n]`, stored on tuples of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymTensor {
    dims: Vec<usize>,
    terms: BTreeMap<Vec<ExpVector>, Q>,
}

impl SymTensor {
    pub fn zero(dims: Vec<usize>) -> Self {
        SymTensor { dims, terms: BTreeMap::new() }
    }

    /// A one-slot tensor holding `x`.
    pub fn from_element(x: &SymElement) -> Self {
        let mut t = Self::zero(vec![x.dim()]);
        for (a, c) in x.iter() {
            t.add_term(vec![a.clone()], c.clone());
        }
        t
    }

    /// `x_1 (x) ... (x) x_n`.
    pub fn pure(xs: &[&SymElement]) -> Self {
        let mut t = Self::zero(Vec::new());
        t.terms.insert(Vec::new(), Q::one());
        for x in xs {
            t = t.tensor(&Self::from_element(x));
        }
        t
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn slots(&self) -> usize {
        self.dims.len()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<ExpVector>, Q> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<ExpVector>, &Q)> {
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

    pub fn coeff(&self, key: &[ExpVector]) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, key: Vec<ExpVector>, c: Q) {
        debug_assert_eq!(key.len(), self.dims.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SymTensor, c: &Q) {
        debug_assert_eq!(self.dims, other.dims);
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn sub(&self, other: &SymTensor) -> SymTensor {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }

    /// Concatenates slots: `(a_1 (x) ... ) (x) (b_1 (x) ...)`.
    pub fn tensor(&self, other: &SymTensor) -> SymTensor {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        let mut out = Self::zero(dims);
        for (k1, x) in &self.terms {
            for (k2, y) in &other.terms {
                let mut k = k1.clone();
                k.extend(k2.iter().cloned());
                out.add_term(k, x * y);
            }
        }
        out
    }

    /// Slotwise product in the symmetric algebras.
    pub fn product(&self, other: &SymTensor) -> Result<SymTensor> {
        if self.dims != other.dims {
            return Err(Error::InvalidArgument("tensor slot dimensions differ".into()));
        }
        let mut out = Self::zero(self.dims.clone());
        for (k1, x) in &self.terms {
            for (k2, y) in &other.terms {
                let k = k1.iter().zip(k2).map(|(a, b)| add_exps(a, b)).collect();
                out.add_term(k, x * y);
            }
        }
        Ok(out)
    }

    /// Applies the `k`-fold coproduct to one slot, which becomes `k` adjacent slots.
    pub fn split(&self, slot: usize, k: usize) -> Result<SymTensor> {
        if slot >= self.dims.len() || k == 0 {
            return Err(Error::InvalidArgument(format!("cannot split slot {slot} into {k} parts")));
        }
        let mut dims = self.dims[..slot].to_vec();
        dims.extend(std::iter::repeat_n(self.dims[slot], k));
        dims.extend_from_slice(&self.dims[slot + 1..]);
        let mut out = Self::zero(dims);
        for (key, x) in &self.terms {
            for (parts, c) in split_monomial(&key[slot], k) {
                let mut nk = key[..slot].to_vec();
                nk.extend(parts);
                nk.extend(key[slot + 1..].iter().cloned());
                out.add_term(nk, x * Q::from_integer(c.into()));
            }
        }
        Ok(out)
    }

    /// Merges each group of slots into one slot by multiplying the monomials.
    /// `groups` must partition `0..slots()`; groups appear in the output in
    /// the given order. Slots in a group must share their dimension.
    pub fn merge(&self, groups: &[Vec<usize>]) -> Result<SymTensor> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        for g in groups {
            if g.is_empty() {
                return Err(Error::InvalidArgument("empty slot group".into()));
            }
            for &s in g {
                if s >= n || seen[s] {
                    return Err(Error::InvalidArgument(format!("slot {s} is missing or repeated")));
                }
                seen[s] = true;
                if self.dims[s] != self.dims[g[0]] {
                    return Err(Error::DimensionMismatch { expected: self.dims[g[0]], found: self.dims[s] });
                }
            }
        }
        if seen.iter().any(|x| !x) {
            return Err(Error::InvalidArgument("slot groups do not cover every slot".into()));
        }
        let dims = groups.iter().map(|g| self.dims[g[0]]).collect();
        let mut out = Self::zero(dims);
        for (key, x) in &self.terms {
            let nk = groups
                .iter()
                .map(|g| g.iter().skip(1).fold(key[g[0]].clone(), |acc, &s| add_exps(&acc, &key[s])))
                .collect();
            out.add_term(nk, x.clone());
        }
        Ok(out)
    }

    /// Applies the counit to one slot, removing it.
    pub fn counit_slot(&self, slot: usize) -> Result<SymTensor> {
        if slot >= self.dims.len() {
            return Err(Error::InvalidArgument(format!("no slot {slot}")));
        }
        let mut dims = self.dims.clone();
        dims.remove(slot);
        let mut out = Self::zero(dims);
        for (key, x) in &self.terms {
            if key[slot].iter().all(|&e| e == 0) {
                let mut nk = key.clone();
                nk.remove(slot);
                out.add_term(nk, x.clone());
            }
        }
        Ok(out)
    }

    /// Swaps two slots.
    pub fn swap(&self, i: usize, j: usize) -> SymTensor {
        let mut dims = self.dims.clone();
        dims.swap(i, j);
        let mut out = Self::zero(dims);
        for (key, x) in &self.terms {
            let mut nk = key.clone();
            nk.swap(i, j);
            out.add_term(nk, x.clone());
        }
        out
    }

    /// Reads a one-slot tensor as an element.
    pub fn into_element(&self) -> Result<SymElement> {
        if self.dims.len() != 1 {
            return Err(Error::InvalidArgument(format!("tensor has {} slots, expected 1", self.dims.len())));
        }
        SymElement::from_terms(self.dims[0], self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
    }

    /// Flattens onto the concatenated space `V_1 x ... x V_n`.
    pub fn concatenate(&self) -> SymElement {
        let dim = self.dims.iter().sum();
        let mut out = SymElement::zero(dim);
        for (key, x) in &self.terms {
            out.add_term(key.iter().flat_map(|a| a.iter().copied()).collect(), x.clone());
        }
        out
    }
}

/// Terms of the `k`-fold coproduct of `e^a`: ordered splittings
/// `a = b_1 + ... + b_k` with multinomial coefficients.
pub fn split_monomial(a: &[u8], k: usize) -> Vec<(Vec<ExpVector>, u64)> {
    if k == 1 {
        return vec![(vec![a.to_vec()], 1)];
    }
    let mut out = Vec::new();
    for b in sub_monomials(a) {
        let c = exp_binomial(a, &b);
        let rest = sub_exps(a, &b);
        for (mut tail, c2) in split_monomial(&rest, k - 1) {
            let mut parts = Vec::with_capacity(k);
            parts.push(b.clone());
            parts.append(&mut tail);
            out.push((parts, c * c2));
        }
    }
    out
}
