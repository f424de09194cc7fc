use std::collections::HashMap;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::Side;
use crate::rational::Q;
use crate::sym::{degree, multidegree, split_by_dims, ExpVector, VectorElem};
use crate::trees::{Identity, LoopWord, WordOp};

use super::map::FormalMap;

/// A unital formal multiplication `F: k[V] x k[V] -> V`.
///
/// Divisions are computed on first use. `exact` marks loops whose
/// components above the stored degree are known to vanish (polynomial
/// multiplications), which lets them be regraded to any degree.
#[derive(Clone, Debug)]
pub struct FormalLoop {
    map: FormalMap,
    exact: bool,
    ldiv: OnceLock<FormalMap>,
    rdiv: OnceLock<FormalMap>,
}

impl FormalLoop {
    pub fn new(map: FormalMap) -> Result<Self> {
        check_unital(&map)?;
        Ok(FormalLoop { map, exact: false, ldiv: OnceLock::new(), rdiv: OnceLock::new() })
    }

    /// A loop whose multiplication is a polynomial of degree at most the
    /// stored one.
    pub fn exact(map: FormalMap) -> Result<Self> {
        let mut l = Self::new(map)?;
        l.exact = true;
        Ok(l)
    }

    pub fn from_series(dim: usize, degree: usize, series: Vec<crate::sym::SymElement>) -> Result<Self> {
        Self::new(FormalMap::from_series(vec![dim, dim], degree, series)?)
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn dim(&self) -> usize {
        self.map.target_dim()
    }

    pub fn degree(&self) -> usize {
        self.map.degree()
    }

    pub fn map(&self) -> &FormalMap {
        &self.map
    }

    /// The same loop known up to degree `n`. Raising the degree needs an
    /// exact loop.
    pub fn regrade(&self, n: usize) -> Result<FormalLoop> {
        if n <= self.degree() {
            let mut l = FormalLoop::new(self.map.truncate(n))?;
            l.exact = self.exact;
            return Ok(l);
        }
        if !self.exact {
            return Err(Error::DegreeOverflow { requested: n, limit: self.degree() });
        }
        FormalLoop::exact(self.map.with_degree(n))
    }

    /// `F - x - y`.
    pub fn nonlinear_part(&self) -> FormalMap {
        self.map.filter_multidegree(|md| md[0] > 0 && md[1] > 0)
    }

    pub fn left_division(&self) -> &FormalMap {
        self.ldiv.get_or_init(|| loop_division(self, Side::Left))
    }

    pub fn right_division(&self) -> &FormalMap {
        self.rdiv.get_or_init(|| loop_division(self, Side::Right))
    }

    pub fn operation(&self, op: WordOp) -> &FormalMap {
        match op {
            WordOp::Mul => &self.map,
            WordOp::LDiv => self.left_division(),
            WordOp::RDiv => self.right_division(),
        }
    }

    pub fn to_json(&self, view: super::map::View) -> serde_json::Value {
        self.map.to_json(view)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FormalLoop> {
        FormalLoop::new(FormalMap::from_json(v)?)
    }
}

impl PartialEq for FormalLoop {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map
    }
}

fn check_unital(map: &FormalMap) -> Result<()> {
    let d = map.target_dim();
    if map.arg_dims() != [d, d] {
        return Err(Error::NotUnital(format!(
            "a loop needs two arguments of dimension {d}, found {:?}",
            map.arg_dims()
        )));
    }
    for (md, entries) in map.components() {
        let pure = md[0] == 0 || md[1] == 0;
        if !pure {
            continue;
        }
        if md[0] + md[1] >= 2 {
            return Err(Error::NotUnital(format!("nonzero component at bidegree ({}, {})", md[0], md[1])));
        }
        for (a, v) in entries {
            let i = a.iter().position(|&k| k > 0).expect("degree one") % d;
            for (k, x) in v.iter().enumerate() {
                let want = if k == i { Q::one() } else { Q::zero() };
                if *x != want {
                    return Err(Error::NotUnital(format!(
                        "linear part at bidegree ({}, {}) is not the identity",
                        md[0], md[1]
                    )));
                }
            }
        }
    }
    for i in 0..d {
        for (slot, a) in [(0, i), (1, d + i)] {
            let mut e = vec![0u8; 2 * d];
            e[a] = 1;
            if map.degree() >= 1 && map.value(&e)[i] != Q::one() {
                return Err(Error::NotUnital(format!("argument {} is not passed through", slot + 1)));
            }
        }
    }
    Ok(())
}

/// Solves `F(x, D) = y` (left) or `F(D, y) = x` (right) degree by degree.
///
/// The left quotient is the fixed point of `D = y - x - G(x, D)` where `G` is
/// the nonlinear part of `F`; each pass fixes one more degree.
pub fn loop_division(f: &FormalLoop, side: Side) -> FormalMap {
    let d = f.dim();
    let n = f.degree();
    let dims = vec![d, d];
    let px = FormalMap::projection(dims.clone(), 0, n).expect("slot 0");
    let py = FormalMap::projection(dims, 1, n).expect("slot 1");
    let g = f.nonlinear_part();
    let base = match side {
        Side::Left => py.try_sub(&px),
        Side::Right => px.try_sub(&py),
    }
    .expect("same shape");
    let mut cur = base.clone();
    for pass in 0..=n {
        let inner = match side {
            Side::Left => [px.clone(), cur.clone()],
            Side::Right => [cur.clone(), py.clone()],
        };
        let next = base.try_sub(&g.compose(&inner).expect("shapes agree")).expect("same shape");
        let change = next.try_sub(&cur).expect("same shape");
        debug_assert!(
            change.coords().iter().all(|c| c.min_degree().is_none_or(|m| m > pass + 1)),
            "division pass {pass} changed a settled degree"
        );
        if change.is_zero() {
            return next;
        }
        cur = next;
    }
    cur
}

/// The formal map of a loop word in `nvars` variables.
pub fn eval_word(w: &LoopWord, f: &FormalLoop, nvars: usize) -> Result<FormalMap> {
    let dims = vec![f.dim(); nvars];
    let mut memo = HashMap::new();
    eval_rec(w, f, &dims, &mut memo)
}

fn eval_rec(
    w: &LoopWord,
    f: &FormalLoop,
    dims: &[usize],
    memo: &mut HashMap<LoopWord, FormalMap>,
) -> Result<FormalMap> {
    if let Some(m) = memo.get(w) {
        return Ok(m.clone());
    }
    let n = f.degree();
    let out = match w {
        LoopWord::Var(i) => {
            if *i == 0 || *i > dims.len() {
                return Err(Error::ArityOverflow { index: *i, arity: dims.len() });
            }
            FormalMap::projection(dims.to_vec(), i - 1, n)?
        }
        LoopWord::Unit => FormalMap::zero(dims.to_vec(), f.dim(), n),
        LoopWord::Op(op, a, b) => {
            let l = eval_rec(a, f, dims, memo)?;
            let r = eval_rec(b, f, dims, memo)?;
            f.operation(*op).compose(&[l, r])?
        }
    };
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

/// First failing component of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub multidegree: Vec<usize>,
    pub monomials: Vec<ExpVector>,
    /// `lhs - rhs` at this monomial, as a power-series coefficient.
    #[serde(with = "crate::rational::serde_qvec")]
    pub difference_series: VectorElem,
    /// `lhs - rhs` evaluated on the distribution `e^a`.
    #[serde(with = "crate::rational::serde_qvec")]
    pub difference: VectorElem,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub holds: bool,
    pub degree: usize,
    pub witness: Option<Witness>,
}

/// Compares both sides of an identity up to the degree of the loop.
pub fn check_loop_identity(id: &Identity, f: &FormalLoop) -> Result<IdentityVerdict> {
    let lhs = eval_word(&id.lhs, f, id.nvars)?;
    let rhs = eval_word(&id.rhs, f, id.nvars)?;
    let diff = lhs.try_sub(&rhs)?;
    Ok(IdentityVerdict { holds: diff.is_zero(), degree: f.degree(), witness: first_witness(&diff) })
}

/// Smallest nonzero entry, ordered by total degree, multidegree, then monomial.
pub fn first_witness(diff: &FormalMap) -> Option<Witness> {
    let dims = diff.arg_dims().to_vec();
    let mut best: Option<(usize, Vec<usize>, ExpVector)> = None;
    for c in diff.coords() {
        for (a, _) in c.iter() {
            let key = (degree(a), multidegree(a, &dims), a.clone());
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        }
    }
    let (_, md, a) = best?;
    let fact = crate::sym::exp_factorial_q(&a);
    let difference = diff.value(&a);
    Some(Witness {
        multidegree: md,
        monomials: split_by_dims(&a, &dims),
        difference_series: difference.iter().map(|x| x / &fact).collect(),
        difference,
    })
}

/// A multiplication `Phi(x, y) = y + sum_{i >= 1, j >= 2} Phi_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimilarityMap(FormalMap);

impl SimilarityMap {
    pub fn new(map: FormalMap) -> Result<Self> {
        let d = map.target_dim();
        if map.arg_dims() != [d, d] {
            return Err(Error::InvalidArgument("a similarity takes two arguments of the target dimension".into()));
        }
        let y = FormalMap::projection(vec![d, d], 1, map.degree())?;
        let low = map.filter_multidegree(|md| md[1] <= 1 || md[0] == 0);
        if low != y {
            return Err(Error::InvalidArgument(
                "a similarity must equal y in x-degree 0 and in y-degree at most 1".into(),
            ));
        }
        Ok(SimilarityMap(map))
    }

    pub fn map(&self) -> &FormalMap {
        &self.0
    }

    pub fn into_map(self) -> FormalMap {
        self.0
    }

    /// True when `Phi(x, y) = y`.
    pub fn is_trivial(&self) -> bool {
        let y = FormalMap::projection(self.0.arg_dims().to_vec(), 1, self.0.degree()).expect("slot 1");
        self.0 == y
    }
}

/// The unique right alternative loop with the same canonical connection,
/// and the similarity `Phi` with `F(x, y) = F~(x, Phi(x, y))`.
///
/// For each y-degree `n >= 2` the part `q_n` of `F~` is the solution of
/// `(2 - 2^n) q_n = [F~(x, F~(y, y)) - F~(F~(x, y), y)]_n` computed with
/// `q_n` removed.
pub fn right_alt_modify(f: &FormalLoop) -> Result<(FormalLoop, SimilarityMap)> {
    let d = f.dim();
    let n = f.degree();
    let dims = vec![d, d];
    let px = FormalMap::projection(dims.clone(), 0, n)?;
    let py = FormalMap::projection(dims, 1, n)?;
    let mut ft = f.map().clone();
    for yd in 2..=n {
        let g = ft.filter_multidegree(|md| md[1] != yd);
        let l = g.compose(&[g.clone(), py.clone()])?;
        let r = g.compose(&[px.clone(), g.compose(&[py.clone(), py.clone()])?])?;
        let diff = r.try_sub(&l)?;
        debug_assert!(
            diff.filter_multidegree(|md| md[1] < yd).is_zero(),
            "right alternativity fails below y-degree {yd}"
        );
        let scale = Q::one() / Q::from_integer((2 - (1i64 << yd)).into());
        let q = diff.filter_multidegree(|md| md[1] == yd).scale(&scale);
        ft = g.try_add(&q)?;
    }
    let ft = FormalLoop::new(ft)?;
    let phi = ft.left_division().compose(&[px, f.map().clone()])?;
    Ok((ft, SimilarityMap::new(phi)?))
}

/// The similarity `Phi = x \_{F1} F2(x, y)`, provided both loops agree in
/// y-degree at most 1.
pub fn similarity_between(f1: &FormalLoop, f2: &FormalLoop) -> Result<SimilarityMap> {
    if f1.dim() != f2.dim() {
        return Err(Error::DimensionMismatch { expected: f1.dim(), found: f2.dim() });
    }
    let n = f1.degree().min(f2.degree());
    let a = f1.map().truncate(n).filter_multidegree(|md| md[1] <= 1);
    let b = f2.map().truncate(n).filter_multidegree(|md| md[1] <= 1);
    if let Some(w) = first_witness(&a.try_sub(&b)?) {
        return Err(Error::NotSimilar(format!(
            "canonical connections differ at bidegree ({}, {})",
            w.multidegree[0], w.multidegree[1]
        )));
    }
    let px = FormalMap::projection(vec![f1.dim(); 2], 0, n)?;
    let phi = f1.regrade(n)?.left_division().compose(&[px, f2.map().truncate(n)])?;
    SimilarityMap::new(phi)
}
