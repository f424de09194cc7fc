use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::mono::Mono;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

/// Generator names and the truncation degree shared by a family of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaContext {
    names: Vec<String>,
    degree: usize,
}

impl FaContext {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, degree: usize) -> Arc<Self> {
        Arc::new(FaContext { names: names.into_iter().map(Into::into).collect(), degree })
    }

    pub fn gens(&self) -> usize {
        self.names.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// An element of the free non-associative algebra, truncated at the context degree.
#[derive(Clone, PartialEq, Eq)]
pub struct FaElement {
    ctx: Arc<FaContext>,
    terms: BTreeMap<Mono, Q>,
}

fn insert(terms: &mut BTreeMap<Mono, Q>, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
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

impl FaElement {
    pub fn zero(ctx: &Arc<FaContext>) -> Self {
        FaElement { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn scalar(ctx: &Arc<FaContext>, c: Q) -> Self {
        Self::from_mono(ctx, Mono::one(), c)
    }

    pub fn one(ctx: &Arc<FaContext>) -> Self {
        Self::scalar(ctx, Q::one())
    }

    pub fn gen(ctx: &Arc<FaContext>, i: usize) -> Self {
        assert!(i < ctx.gens(), "generator {i} out of range");
        Self::from_mono(ctx, Mono::gen(i), Q::one())
    }

    pub fn from_mono(ctx: &Arc<FaContext>, m: Mono, c: Q) -> Self {
        let mut x = Self::zero(ctx);
        x.add_term(m, c);
        x
    }

    pub fn context(&self) -> &Arc<FaContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Mono, Q> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Mono, &Q)> {
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

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_else(Q::zero)
    }

    /// Adds `c * m`, silently dropping monomials above the truncation degree.
    pub fn add_term(&mut self, m: Mono, c: Q) {
        if m.degree() <= self.ctx.degree {
            insert(&mut self.terms, m, c);
        }
    }

    pub fn add_scaled(&mut self, other: &FaElement, c: &Q) {
        debug_assert!(self.ctx == other.ctx);
        if c.is_zero() {
            return;
        }
        for (m, x) in &other.terms {
            insert(&mut self.terms, m.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> FaElement {
        let mut out = Self::zero(&self.ctx);
        out.add_scaled(self, c);
        out
    }

    pub fn check_context(&self, other: &FaElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    /// Bilinear tree grafting, truncated at the context degree.
    pub fn product(&self, other: &FaElement) -> Result<FaElement> {
        self.check_context(other)?;
        Ok(self.mul_trunc(other, self.ctx.degree))
    }

    pub fn mul_trunc(&self, other: &FaElement, n: usize) -> FaElement {
        let mut out = Self::zero(&self.ctx);
        let n = n.min(self.ctx.degree);
        let rhs: Vec<(usize, &Mono, &Q)> = other.terms.iter().map(|(m, c)| (m.degree(), m, c)).collect();
        for (a, x) in &self.terms {
            let da = a.degree();
            for (db, b, y) in &rhs {
                // terms are sorted by degree
                if da + db > n {
                    break;
                }
                insert(&mut out.terms, Mono::mul(a, b), x * *y);
            }
        }
        out
    }

    /// Drops every monomial of degree above `n`.
    pub fn truncate(&self, n: usize) -> FaElement {
        self.filter(|m| m.degree() <= n)
    }

    pub fn homogeneous_part(&self, k: usize) -> FaElement {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, mut keep: impl FnMut(&Mono) -> bool) -> FaElement {
        FaElement {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Part of multidegree `degs` in the generators.
    pub fn multihomogeneous_part(&self, degs: &[usize]) -> FaElement {
        let g = self.ctx.gens();
        self.filter(|m| m.multidegree(g) == degs)
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Mono::degree)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Mono::degree)
    }

    /// `epsilon`: the coefficient of `1`.
    pub fn counit(&self) -> Q {
        self.coeff(&Mono::one())
    }

    /// The image in the free associative algebra: words of generator indices.
    pub fn forget_brackets(&self) -> BTreeMap<Vec<usize>, Q> {
        let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = out.entry(m.leaves()).or_insert_with(Q::zero);
            *e += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Coproduct determined by declaring the generators primitive.
    pub fn coproduct(&self) -> FaTensor {
        let mut t = FaTensor::zero(&self.ctx);
        for (m, c) in &self.terms {
            for (l, r, k) in mono_coproduct(m) {
                t.add_term(l, r, c * Q::from_integer(k.into()));
            }
        }
        t
    }

    pub fn is_primitive(&self) -> bool {
        let t = self.coproduct();
        let mut expected = FaTensor::zero(&self.ctx);
        for (m, c) in &self.terms {
            expected.add_term(m.clone(), Mono::one(), c.clone());
            expected.add_term(Mono::one(), m.clone(), c.clone());
        }
        t == expected
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

/// `Delta(m)` for a monomial: the sum over subsets of leaves, with repeated
/// pairs collected into multiplicities.
pub fn mono_coproduct(m: &Mono) -> Vec<(Mono, Mono, u64)> {
    let mut acc: BTreeMap<(Mono, Mono), u64> = BTreeMap::new();
    match m.children() {
        None if m.is_one() => {
            acc.insert((Mono::one(), Mono::one()), 1);
        }
        None => {
            acc.insert((m.clone(), Mono::one()), 1);
            acc.insert((Mono::one(), m.clone()), 1);
        }
        Some((l, r)) => {
            let cl = mono_coproduct(l);
            let cr = mono_coproduct(r);
            for (l1, l2, a) in &cl {
                for (r1, r2, b) in &cr {
                    *acc.entry((Mono::mul(l1, r1), Mono::mul(l2, r2))).or_insert(0) += a * b;
                }
            }
        }
    }
    acc.into_iter().map(|((a, b), k)| (a, b, k)).collect()
}

impl Add for &FaElement {
    type Output = FaElement;
    fn add(self, other: &FaElement) -> FaElement {
        assert!(self.ctx == other.ctx, "elements from different contexts");
        let mut out = self.clone();
        out.add_scaled(other, &Q::one());
        out
    }
}

impl Sub for &FaElement {
    type Output = FaElement;
    fn sub(self, other: &FaElement) -> FaElement {
        assert!(self.ctx == other.ctx, "elements from different contexts");
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one());
        out
    }
}

impl Neg for &FaElement {
    type Output = FaElement;
    fn neg(self) -> FaElement {
        self.scale(&-Q::one())
    }
}

/// Panics on a context mismatch; use [`FaElement::product`] for a checked version.
impl Mul for &FaElement {
    type Output = FaElement;
    fn mul(self, other: &FaElement) -> FaElement {
        self.product(other).expect("elements from different contexts")
    }
}

impl fmt::Display for FaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Q::zero();
            let abs = if neg { -c } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let name = m.format_with(&self.ctx.names);
            if m.is_one() {
                write!(f, "{}", format_q(&abs))?;
            } else if abs.is_one() {
                f.write_str(&name)?;
            } else {
                write!(f, "{}*{}", format_q(&abs), name)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Serialize, Deserialize)]
struct FaTermJson {
    monomial: String,
    coeff: String,
}

impl FaElement {
    /// JSON list of `{"monomial", "coeff"}` records.
    pub fn to_json(&self) -> serde_json::Value {
        let v: Vec<FaTermJson> = self
            .terms
            .iter()
            .map(|(m, c)| FaTermJson { monomial: m.format_with(&self.ctx.names), coeff: format_q(c) })
            .collect();
        serde_json::to_value(v).expect("plain data serializes")
    }

    pub fn from_json(ctx: &Arc<FaContext>, v: &serde_json::Value) -> Result<FaElement> {
        let terms: Vec<FaTermJson> = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(ctx);
        for t in terms {
            let m = Mono::parse_with(&t.monomial, &ctx.names)?;
            if m.degree() > ctx.degree {
                return Err(Error::DegreeOverflow { requested: m.degree(), limit: ctx.degree });
            }
            out.add_term(m, parse_q(&t.coeff)?);
        }
        Ok(out)
    }
}

/// An element of `k{S} (x) k{S}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaTensor {
    ctx: Arc<FaContext>,
    terms: BTreeMap<(Mono, Mono), Q>,
}

impl FaTensor {
    pub fn zero(ctx: &Arc<FaContext>) -> Self {
        FaTensor { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, a: Mono, b: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((a, b)) {
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

    pub fn terms(&self) -> &BTreeMap<(Mono, Mono), Q> {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(Mono, Mono), &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: &Mono, b: &Mono) -> Q {
        self.terms.get(&(a.clone(), b.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Slotwise product, the algebra structure of the tensor square.
    pub fn product(&self, other: &FaTensor) -> FaTensor {
        let mut out = Self::zero(&self.ctx);
        for ((a1, a2), x) in &self.terms {
            for ((b1, b2), y) in &other.terms {
                let l = Mono::mul(a1, b1);
                let r = Mono::mul(a2, b2);
                if l.degree() + r.degree() <= self.ctx.degree {
                    out.add_term(l, r, x * y);
                }
            }
        }
        out
    }
}
