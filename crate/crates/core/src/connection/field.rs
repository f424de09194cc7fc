use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;
use crate::sym::{degree, exp_binomial, monomials_up_to, sub_exps, sub_monomials, ExpVector, SymElement, VectorElem};

pub(crate) fn binom(a: &[u8], b: &[u8]) -> Q {
    Q::from_integer(exp_binomial(a, b).into())
}

pub(crate) fn add_vec(acc: &mut [Q], v: &[Q], c: &Q) {
    for (x, y) in acc.iter_mut().zip(v) {
        *x += y * c;
    }
}

/// A formal function: a linear form on `k[V]`, kept on monomials of degree `<= degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalFunction {
    dim: usize,
    degree: usize,
    values: SymElement,
}

impl FormalFunction {
    /// Missing monomials read as zero; monomials above `degree` are dropped.
    pub fn new(dim: usize, degree: usize, values: SymElement) -> Result<Self> {
        if values.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: values.dim() });
        }
        Ok(FormalFunction { dim, degree, values: values.truncate(degree) })
    }

    /// The counit, `mu -> epsilon(mu)`.
    pub fn counit(dim: usize, degree: usize) -> Self {
        FormalFunction { dim, degree, values: SymElement::one(dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &SymElement {
        &self.values
    }

    pub fn eval(&self, mu: &SymElement) -> Result<Q> {
        check_degree(mu, self.degree)?;
        Ok(mu.pair(&self.values))
    }

    fn at(&self, a: &[u8]) -> Q {
        self.values.coeff(a)
    }

    /// `(fg)(mu) = sum f(mu_(1)) g(mu_(2))`.
    pub fn mul(&self, g: &FormalFunction) -> Result<FormalFunction> {
        check_dims(self.dim, g.dim)?;
        let n = self.degree.min(g.degree);
        let mut values = SymElement::zero(self.dim);
        for a in monomials_up_to(self.dim, n) {
            let mut acc = Q::zero();
            for b in sub_monomials(&a) {
                acc += binom(&a, &b) * self.at(&b) * g.at(&sub_exps(&a, &b));
            }
            values.add_term(a, acc);
        }
        Ok(FormalFunction { dim: self.dim, degree: n, values })
    }

    pub fn add(&self, g: &FormalFunction) -> Result<FormalFunction> {
        check_dims(self.dim, g.dim)?;
        let n = self.degree.min(g.degree);
        Ok(FormalFunction { dim: self.dim, degree: n, values: (&self.values + &g.values).truncate(n) })
    }
}

/// A formal vector field `A: k[V] -> V`, total on monomials of degree `<= degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalVectorField {
    dim: usize,
    degree: usize,
    table: BTreeMap<ExpVector, VectorElem>,
}

impl FormalVectorField {
    /// Rejects tables that miss a monomial of degree `<= degree` or carry extra keys.
    pub fn from_table(dim: usize, degree: usize, table: BTreeMap<ExpVector, VectorElem>) -> Result<Self> {
        for (a, v) in &table {
            check_dims(dim, a.len())?;
            check_dims(dim, v.len())?;
            if crate::sym::degree(a) > degree {
                return Err(Error::InvalidArgument(format!("field entry {a:?} exceeds degree {degree}")));
            }
        }
        let expected = monomials_up_to(dim, degree).len();
        if table.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "field table is partial: {} of {expected} monomials",
                table.len()
            )));
        }
        Ok(FormalVectorField { dim, degree, table })
    }

    pub(crate) fn build(dim: usize, degree: usize, mut f: impl FnMut(&[u8]) -> Result<VectorElem>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for a in monomials_up_to(dim, degree) {
            let v = f(&a)?;
            table.insert(a, v);
        }
        Ok(FormalVectorField { dim, degree, table })
    }

    pub fn zero(dim: usize, degree: usize) -> Self {
        Self::build(dim, degree, |_| Ok(vec![Q::zero(); dim])).expect("infallible")
    }

    /// `mu -> pi_V(mu)`, the field that is not adapted to any vector in general.
    pub fn projection(dim: usize, degree: usize) -> Self {
        Self::build(dim, degree, |a| Ok(SymElement::monomial(a.to_vec()).projection())).expect("infallible")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &BTreeMap<ExpVector, VectorElem> {
        &self.table
    }

    pub fn value(&self, a: &[u8]) -> &VectorElem {
        &self.table[a]
    }

    pub fn apply(&self, mu: &SymElement) -> Result<VectorElem> {
        check_dims(self.dim, mu.dim())?;
        check_degree(mu, self.degree)?;
        let mut out = vec![Q::zero(); self.dim];
        for (a, c) in mu.iter() {
            add_vec(&mut out, &self.table[a], c);
        }
        Ok(out)
    }

    pub fn truncate(&self, n: usize) -> FormalVectorField {
        let table = self.table.iter().filter(|(a, _)| degree(a) <= n).map(|(a, v)| (a.clone(), v.clone())).collect();
        FormalVectorField { dim: self.dim, degree: self.degree.min(n), table }
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|v| v.iter().all(Zero::is_zero))
    }

    pub fn scale(&self, c: &Q) -> FormalVectorField {
        let table = self.table.iter().map(|(a, v)| (a.clone(), v.iter().map(|x| x * c).collect())).collect();
        FormalVectorField { dim: self.dim, degree: self.degree, table }
    }

    pub fn try_add(&self, other: &FormalVectorField) -> Result<FormalVectorField> {
        self.combine(other, &Q::from_integer(1.into()))
    }

    pub fn try_sub(&self, other: &FormalVectorField) -> Result<FormalVectorField> {
        self.combine(other, &Q::from_integer((-1).into()))
    }

    fn combine(&self, other: &FormalVectorField, c: &Q) -> Result<FormalVectorField> {
        check_dims(self.dim, other.dim)?;
        let n = self.degree.min(other.degree);
        Self::build(self.dim, n, |a| {
            let mut v = self.table[a].clone();
            add_vec(&mut v, &other.table[a], c);
            Ok(v)
        })
    }

    /// `sum mu_(1) A(mu_(2))` for `mu = e^a`, a product in the symmetric algebra.
    pub(crate) fn shift(&self, a: &[u8]) -> SymElement {
        let mut out = SymElement::zero(self.dim);
        for b in sub_monomials(a) {
            let rest = sub_exps(a, &b);
            out.add_scaled(&SymElement::monomial(b.clone()).mul_vector(&self.table[&rest]), &binom(a, &b));
        }
        out
    }

    /// `A(f): mu -> sum f(mu_(1) A(mu_(2)))`.
    pub fn derive(&self, f: &FormalFunction) -> Result<FormalFunction> {
        check_dims(self.dim, f.dim())?;
        let n = degree_after(&[self.degree, f.degree()], 1)?;
        let mut values = SymElement::zero(self.dim);
        for a in monomials_up_to(self.dim, n) {
            values.add_term(a.clone(), self.shift(&a).pair(f.values()));
        }
        Ok(FormalFunction { dim: self.dim, degree: n, values })
    }

    /// `fA: mu -> sum f(mu_(1)) A(mu_(2))`.
    pub fn times_function(&self, f: &FormalFunction) -> Result<FormalVectorField> {
        check_dims(self.dim, f.dim())?;
        let n = self.degree.min(f.degree());
        Self::build(self.dim, n, |a| {
            let mut v = vec![Q::zero(); self.dim];
            for b in sub_monomials(a) {
                let fb = f.at(&b);
                if !fb.is_zero() {
                    add_vec(&mut v, &self.table[&sub_exps(a, &b)], &(binom(a, &b) * fb));
                }
            }
            Ok(v)
        })
    }
}

/// `[A, B](mu) = sum B(mu_(1) A(mu_(2))) - A(mu_(1) B(mu_(2)))`.
pub fn vf_bracket(a: &FormalVectorField, b: &FormalVectorField) -> Result<FormalVectorField> {
    check_dims(a.dim, b.dim)?;
    let n = degree_after(&[a.degree, b.degree], 1)?;
    FormalVectorField::build(a.dim, n, |m| {
        let mut v = b.apply(&a.shift(m))?;
        add_vec(&mut v, &a.apply(&b.shift(m))?, &-Q::from_integer(1.into()));
        Ok(v)
    })
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn check_degree(mu: &SymElement, limit: usize) -> Result<()> {
    match mu.degree() {
        Some(d) if d > limit => Err(Error::DegreeOverflow { requested: d, limit }),
        _ => Ok(()),
    }
}

/// `min(degrees) - loss`, or an overflow if a table is too short.
pub(crate) fn degree_after(degrees: &[usize], loss: usize) -> Result<usize> {
    let m = degrees.iter().copied().min().unwrap_or(0);
    m.checked_sub(loss).ok_or(Error::DegreeOverflow { requested: loss, limit: m })
}
