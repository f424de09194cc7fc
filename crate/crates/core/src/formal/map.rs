use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};
use crate::sym::{
    concat_exps, degree, exp_binomial, multidegree, split_by_dims, sub_exps, sub_monomials, ExpVector, SymElement,
    VectorElem,
};

/// A formal map `k[V_1 x ... x V_n] -> W` with `theta(1) = 0`, known up to
/// degree `N`.
///
/// `coords[k]` holds the `k`-th output coordinate in the distribution view:
/// the coefficient of `e^a` is `theta(e^a)_k`, with `a` ranging over the
/// concatenated argument variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalMap {
    arg_dims: Vec<usize>,
    target_dim: usize,
    degree: usize,
    coords: Vec<SymElement>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum View {
    Series,
    Distribution,
}

impl FormalMap {
    pub fn zero(arg_dims: Vec<usize>, target_dim: usize, degree: usize) -> Self {
        let total = arg_dims.iter().sum();
        FormalMap { arg_dims, target_dim, degree, coords: vec![SymElement::zero(total); target_dim] }
    }

    /// Builds a map from distribution-view coordinates; monomials above `degree`
    /// are dropped, a constant term is rejected.
    pub fn from_coords(arg_dims: Vec<usize>, degree: usize, coords: Vec<SymElement>) -> Result<Self> {
        let total: usize = arg_dims.iter().sum();
        for c in &coords {
            if c.dim() != total {
                return Err(Error::DimensionMismatch { expected: total, found: c.dim() });
            }
            if !c.counit().is_zero() {
                return Err(Error::InvalidArgument("a formal map must send 1 to 0".into()));
            }
        }
        let coords = coords.into_iter().map(|c| c.truncate(degree)).collect::<Vec<_>>();
        Ok(FormalMap { arg_dims, target_dim: coords.len(), degree, coords })
    }

    /// Builds a map from power-series coordinates (coefficient of `x^a`).
    pub fn from_series(arg_dims: Vec<usize>, degree: usize, series: Vec<SymElement>) -> Result<Self> {
        Self::from_coords(arg_dims, degree, series.iter().map(SymElement::from_series).collect())
    }

    /// The projection onto argument slot `slot`.
    pub fn projection(arg_dims: Vec<usize>, slot: usize, degree: usize) -> Result<Self> {
        if slot >= arg_dims.len() {
            return Err(Error::InvalidArgument(format!("no argument slot {slot}")));
        }
        let total = arg_dims.iter().sum();
        let offset: usize = arg_dims[..slot].iter().sum();
        let coords = (0..arg_dims[slot]).map(|i| SymElement::basis(total, offset + i)).collect();
        Self::from_coords(arg_dims, degree, coords)
    }

    pub fn identity(dim: usize, degree: usize) -> Self {
        Self::projection(vec![dim], 0, degree).expect("slot 0 exists")
    }

    /// A linear map given by its matrix (`matrix[k][i]` = coordinate `k` of the image of `e_i`).
    pub fn linear(arg_dim: usize, matrix: &[Vec<Q>], degree: usize) -> Result<Self> {
        let coords = matrix
            .iter()
            .map(|row| {
                if row.len() != arg_dim {
                    return Err(Error::DimensionMismatch { expected: arg_dim, found: row.len() });
                }
                Ok(SymElement::from_vector(row))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coords(vec![arg_dim], degree, coords)
    }

    pub fn arg_dims(&self) -> &[usize] {
        &self.arg_dims
    }

    pub fn total_dim(&self) -> usize {
        self.arg_dims.iter().sum()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[SymElement] {
        &self.coords
    }

    /// Power-series coordinates.
    pub fn series(&self) -> Vec<SymElement> {
        self.coords.iter().map(SymElement::to_series).collect()
    }

    /// `theta(e^a)`.
    pub fn value(&self, a: &[u8]) -> VectorElem {
        self.coords.iter().map(|c| c.coeff(a)).collect()
    }

    /// `theta(mu)` for a distribution `mu` on the concatenated arguments.
    pub fn apply(&self, mu: &SymElement) -> Result<VectorElem> {
        if mu.dim() != self.total_dim() {
            return Err(Error::DimensionMismatch { expected: self.total_dim(), found: mu.dim() });
        }
        if let Some(d) = mu.degree() {
            if d > self.degree {
                return Err(Error::DegreeOverflow { requested: d, limit: self.degree });
            }
        }
        Ok(self.coords.iter().map(|c| mu.pair(c)).collect())
    }

    /// Nonzero values grouped by multidegree (one degree per argument slot).
    pub fn components(&self) -> BTreeMap<Vec<usize>, BTreeMap<ExpVector, VectorElem>> {
        let mut out: BTreeMap<Vec<usize>, BTreeMap<ExpVector, VectorElem>> = BTreeMap::new();
        for (k, c) in self.coords.iter().enumerate() {
            for (a, x) in c.iter() {
                let v = out
                    .entry(multidegree(a, &self.arg_dims))
                    .or_default()
                    .entry(a.clone())
                    .or_insert_with(|| vec![Q::zero(); self.target_dim]);
                v[k] = x.clone();
            }
        }
        out
    }

    /// Keeps only the monomials for which `keep` holds.
    pub fn filter(&self, mut keep: impl FnMut(&[u8]) -> bool) -> FormalMap {
        FormalMap { coords: self.coords.iter().map(|c| c.filter(&mut keep)).collect(), ..self.clone() }
    }

    /// Keeps the monomials whose per-slot degrees satisfy `keep`.
    pub fn filter_multidegree(&self, mut keep: impl FnMut(&[usize]) -> bool) -> FormalMap {
        let dims = self.arg_dims.clone();
        self.filter(|a| keep(&multidegree(a, &dims)))
    }

    pub fn truncate(&self, n: usize) -> FormalMap {
        let n = n.min(self.degree);
        FormalMap { coords: self.coords.iter().map(|c| c.truncate(n)).collect(), degree: n, ..self.clone() }
    }

    /// Same coordinates, declared to be known up to a different degree.
    /// Only sound for maps whose higher components are known to vanish.
    pub fn with_degree(&self, n: usize) -> FormalMap {
        FormalMap { degree: n, coords: self.coords.iter().map(|c| c.truncate(n)).collect(), ..self.clone() }
    }

    fn check_same_shape(&self, other: &FormalMap) -> Result<()> {
        if self.arg_dims != other.arg_dims || self.target_dim != other.target_dim {
            return Err(Error::InvalidArgument("formal maps of different shapes".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FormalMap) -> Result<FormalMap> {
        self.check_same_shape(other)?;
        let degree = self.degree.min(other.degree);
        Ok(FormalMap {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| (a + b).truncate(degree)).collect(),
            degree,
            ..self.clone()
        })
    }

    pub fn try_sub(&self, other: &FormalMap) -> Result<FormalMap> {
        self.try_add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> FormalMap {
        FormalMap { coords: self.coords.iter().map(|x| x.scale(c)).collect(), ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(SymElement::is_zero)
    }

    /// Concatenates targets: `(theta_1, ..., theta_m)` as one map.
    pub fn concat(maps: &[FormalMap]) -> Result<FormalMap> {
        let first = maps.first().ok_or_else(|| Error::InvalidArgument("nothing to concatenate".into()))?;
        let degree = maps.iter().map(|m| m.degree).min().unwrap_or(0);
        let mut coords = Vec::new();
        for m in maps {
            if m.arg_dims != first.arg_dims {
                return Err(Error::InvalidArgument("maps have different argument spaces".into()));
            }
            coords.extend(m.coords.iter().map(|c| c.truncate(degree)));
        }
        Self::from_coords(first.arg_dims.clone(), degree, coords)
    }

    /// `G(theta_1, ..., theta_m)` where every `theta_j` is defined on the same
    /// arguments and lands in slot `j` of `G`. Shared variables are duplicated
    /// through the coproduct, which in the series view is plain substitution.
    pub fn compose(&self, inner: &[FormalMap]) -> Result<FormalMap> {
        if inner.len() != self.arg_dims.len() {
            return Err(Error::InvalidArgument(format!(
                "map has {} argument slots but {} inner maps were given",
                self.arg_dims.len(),
                inner.len()
            )));
        }
        for (j, m) in inner.iter().enumerate() {
            if m.target_dim != self.arg_dims[j] {
                return Err(Error::DimensionMismatch { expected: self.arg_dims[j], found: m.target_dim });
            }
        }
        let theta = Self::concat(inner)?;
        let n = theta.degree.min(self.degree);
        let theta_series: Vec<SymElement> = theta.series().iter().map(|s| s.truncate(n)).collect();
        let mut powers = PowerCache::new(theta_series, theta.total_dim(), n);
        let mut out = vec![SymElement::zero(theta.total_dim()); self.target_dim];
        for (k, g) in self.series().iter().enumerate() {
            for (c, x) in g.iter() {
                if degree(c) > n {
                    continue;
                }
                let p = powers.get(c);
                out[k].add_scaled(&p, x);
            }
        }
        Self::from_series(theta.arg_dims.clone(), n, out)
    }

    /// The restriction `theta(x, ..., x)` of a multi-slot map to the diagonal.
    pub fn diagonal(&self) -> Result<FormalMap> {
        let d = self.arg_dims[0];
        if self.arg_dims.iter().any(|&x| x != d) {
            return Err(Error::InvalidArgument("diagonal needs equal slot dimensions".into()));
        }
        let slots = (0..self.arg_dims.len()).map(|_| FormalMap::identity(d, self.degree)).collect::<Vec<_>>();
        self.compose(&slots)
    }

    pub fn to_json(&self, view: View) -> serde_json::Value {
        let coords = match view {
            View::Series => self.series(),
            View::Distribution => self.coords.clone(),
        };
        let shaped = FormalMap { coords, ..self.clone() };
        let components = shaped
            .components()
            .into_iter()
            .map(|(md, entries)| ComponentJson {
                multidegree: md,
                entries: entries
                    .into_iter()
                    .map(|(a, v)| EntryJson {
                        monomials: split_by_dims(&a, &self.arg_dims),
                        value: v.iter().map(format_q).collect(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(MapJson {
            dims: self.arg_dims.clone(),
            target_dim: self.target_dim,
            n: self.degree,
            view: Some(view),
            components,
        })
        .expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FormalMap> {
        let j: MapJson = serde_json::from_value(v.clone())?;
        let total: usize = j.dims.iter().sum();
        let mut coords = vec![SymElement::zero(total); j.target_dim];
        for comp in &j.components {
            for e in &comp.entries {
                if e.monomials.len() != j.dims.len() {
                    return Err(Error::InvalidArgument("entry has the wrong number of monomials".into()));
                }
                for (m, &d) in e.monomials.iter().zip(&j.dims) {
                    if m.len() != d {
                        return Err(Error::DimensionMismatch { expected: d, found: m.len() });
                    }
                }
                if e.value.len() != j.target_dim {
                    return Err(Error::DimensionMismatch { expected: j.target_dim, found: e.value.len() });
                }
                let a = concat_exps(&e.monomials);
                if multidegree(&a, &j.dims) != comp.multidegree {
                    return Err(Error::InvalidArgument(format!(
                        "monomial {:?} is not of multidegree {:?}",
                        e.monomials, comp.multidegree
                    )));
                }
                if degree(&a) > j.n {
                    return Err(Error::DegreeOverflow { requested: degree(&a), limit: j.n });
                }
                for (k, s) in e.value.iter().enumerate() {
                    coords[k].add_term(a.clone(), parse_q(s)?);
                }
            }
        }
        match j.view.unwrap_or(View::Distribution) {
            View::Series => Self::from_series(j.dims, j.n, coords),
            View::Distribution => Self::from_coords(j.dims, j.n, coords),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    monomials: Vec<ExpVector>,
    value: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    multidegree: Vec<usize>,
    entries: Vec<EntryJson>,
}

#[derive(Serialize, Deserialize)]
struct MapJson {
    dims: Vec<usize>,
    target_dim: usize,
    #[serde(rename = "N")]
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    view: Option<View>,
    components: Vec<ComponentJson>,
}

/// Monomials `Theta^c` in a tuple of series, built by repeated multiplication.
struct PowerCache {
    theta: Vec<SymElement>,
    dim: usize,
    degree: usize,
    cache: HashMap<ExpVector, SymElement>,
}

impl PowerCache {
    fn new(theta: Vec<SymElement>, dim: usize, degree: usize) -> Self {
        PowerCache { theta, dim, degree, cache: HashMap::new() }
    }

    fn get(&mut self, c: &[u8]) -> SymElement {
        if let Some(p) = self.cache.get(c) {
            return p.clone();
        }
        let p = match c.iter().position(|&k| k > 0) {
            None => SymElement::one(self.dim),
            Some(i) => {
                let mut rest = c.to_vec();
                rest[i] -= 1;
                let lower = self.get(&rest);
                lower.mul_trunc(&self.theta[i], self.degree)
            }
        };
        self.cache.insert(c.to_vec(), p.clone());
        p
    }
}

/// The coalgebra morphism `theta'` extending a formal map, evaluated lazily on
/// monomials of the concatenated argument space.
///
/// Uses `theta'(e^a) = sum_{b <= a - e_i} binom(a - e_i, b) theta'(e^b) theta(e^(a-b))`
/// where `i` is the first variable occurring in `a`; the product is that of
/// the symmetric algebra on the target.
pub struct Prolongation {
    map: FormalMap,
    memo: Mutex<HashMap<ExpVector, Arc<SymElement>>>,
}

impl Prolongation {
    pub fn new(map: FormalMap) -> Self {
        Prolongation { map, memo: Mutex::new(HashMap::new()) }
    }

    pub fn map(&self) -> &FormalMap {
        &self.map
    }

    pub fn degree(&self) -> usize {
        self.map.degree
    }

    pub fn cached(&self) -> usize {
        self.memo.lock().expect("memo lock").len()
    }

    pub fn monomial(&self, a: &[u8]) -> Result<Arc<SymElement>> {
        let total = self.map.total_dim();
        if a.len() != total {
            return Err(Error::DimensionMismatch { expected: total, found: a.len() });
        }
        let d = degree(a);
        if d > self.map.degree {
            return Err(Error::DegreeOverflow { requested: d, limit: self.map.degree });
        }
        Ok(self.compute(a))
    }

    fn compute(&self, a: &[u8]) -> Arc<SymElement> {
        if let Some(v) = self.memo.lock().expect("memo lock").get(a) {
            return v.clone();
        }
        let w = self.map.target_dim;
        let value = match a.iter().position(|&k| k > 0) {
            None => SymElement::one(w),
            Some(i) => {
                let mut a1 = a.to_vec();
                a1[i] -= 1;
                let mut acc = SymElement::zero(w);
                for b in sub_monomials(&a1) {
                    let rest = sub_exps(a, &b);
                    let v = self.map.value(&rest);
                    if v.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let lower = self.compute(&b);
                    let c = Q::from_integer(exp_binomial(&a1, &b).into());
                    acc.add_scaled(&lower.mul_vector(&v), &c);
                }
                acc
            }
        };
        let value = Arc::new(value);
        self.memo.lock().expect("memo lock").insert(a.to_vec(), value.clone());
        value
    }

    /// `theta'(mu)` for an arbitrary distribution.
    pub fn apply(&self, mu: &SymElement) -> Result<SymElement> {
        let mut out = SymElement::zero(self.map.target_dim);
        for (a, c) in mu.iter() {
            out.add_scaled(&*self.monomial(a)?, c);
        }
        Ok(out)
    }
}

/// `theta'` on every monomial of degree `<= n`, as a table.
pub fn prolong(theta: &FormalMap, n: usize) -> Result<BTreeMap<ExpVector, SymElement>> {
    let p = Prolongation::new(theta.clone());
    let mut out = BTreeMap::new();
    for a in crate::sym::monomials_up_to(theta.total_dim(), n) {
        let v = p.monomial(&a)?;
        out.insert(a, (*v).clone());
    }
    Ok(out)
}
