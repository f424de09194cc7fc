use std::path::Path;

use num_traits::{One, Zero};
use serde::Serialize;

use super::algebra::{builtin_algebra, AlgebraTable};
use crate::error::{Error, Result};
use crate::formal::{first_witness, FormalLoop, FormalMap, Witness};
use crate::rational::Q;
use crate::sym::SymElement;

/// `x + y + x * y` for the product of an algebra; exact at every degree.
pub fn loop_from_algebra(a: &AlgebraTable, n: usize) -> FormalLoop {
    let d = a.dim();
    let mut coords = vec![SymElement::zero(2 * d); d];
    for (k, c) in coords.iter_mut().enumerate() {
        c.add_term(crate::sym::unit_vector(2 * d, k), Q::one());
        c.add_term(crate::sym::unit_vector(2 * d, d + k), Q::one());
        for i in 0..d {
            for j in 0..d {
                let s = a.constant(i, j, k);
                if !s.is_zero() {
                    let mut e = vec![0u8; 2 * d];
                    e[i] += 1;
                    e[d + j] += 1;
                    c.add_term(e, s.clone());
                }
            }
        }
    }
    let map = FormalMap::from_coords(vec![d, d], n, coords).expect("well-formed coordinates");
    FormalLoop::exact(map).expect("x + y + x*y is unital")
}

/// `sum_{k} (-s)^k` truncated at degree `n`.
fn geometric(s: &SymElement, n: usize) -> SymElement {
    let neg = s.scale(&-Q::one());
    let mut out = SymElement::one(s.dim());
    let mut p = SymElement::one(s.dim());
    for _ in 1..=n {
        p = p.mul_trunc(&neg, n);
        if p.is_zero() {
            break;
        }
        out = &out + &p;
    }
    out
}

fn var(dim: usize, i: usize) -> SymElement {
    SymElement::basis(dim, i)
}

/// `F(x, y) = (x2 + y2, x3 + y3) / (1 + x2 y3 + x3 y2)` on a plane with
/// coordinates `(x2, x3)`.
pub fn nonlinear_loop_f(n: usize) -> FormalLoop {
    let (x2, x3, y2, y3) = (var(4, 0), var(4, 1), var(4, 2), var(4, 3));
    let s = &x2.mul_trunc(&y3, n) + &x3.mul_trunc(&y2, n);
    let g = geometric(&s, n);
    let series = vec![(&x2 + &y2).mul_trunc(&g, n), (&x3 + &y3).mul_trunc(&g, n)];
    FormalLoop::from_series(2, n, series).expect("F is unital")
}

/// `phi(x) = (x2 / (1 + x1), x3 / (1 + x1))`.
pub fn phi_g_to_f(n: usize) -> FormalMap {
    let (x1, x2, x3) = (var(3, 0), var(3, 1), var(3, 2));
    let g = geometric(&x1, n);
    FormalMap::from_series(vec![3], n, vec![x2.mul_trunc(&g, n), x3.mul_trunc(&g, n)]).expect("phi(0) = 0")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomomorphismVerdict {
    pub holds: bool,
    pub degree: usize,
    pub witness: Option<Witness>,
}

/// Compares `H(theta(x), theta(y))` with `theta(F(x, y))`.
pub fn check_homomorphism(theta: &FormalMap, f: &FormalLoop, h: &FormalLoop) -> Result<HomomorphismVerdict> {
    if theta.arg_dims() != [f.dim()] {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: theta.total_dim() });
    }
    if theta.target_dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), found: theta.target_dim() });
    }
    let n = theta.degree().min(f.degree()).min(h.degree());
    let dims = vec![f.dim(); 2];
    let px = FormalMap::projection(dims.clone(), 0, n)?;
    let py = FormalMap::projection(dims, 1, n)?;
    let lhs = h.map().compose(&[theta.compose(&[px])?, theta.compose(&[py])?])?;
    let rhs = theta.compose(&[f.map().clone()])?;
    let diff = lhs.truncate(n).try_sub(&rhs.truncate(n))?;
    let witness = first_witness(&diff);
    Ok(HomomorphismVerdict { holds: witness.is_none(), degree: n, witness })
}

pub const LOOP_NAMES: [&str; 6] = [
    "jordan-k3-loop",
    "jordan-spin-normalized-loop",
    "split-octonion-loop",
    "dual-numbers-loop",
    "assoc-2x2-uppertriangular-loop",
    "nonlinear-f-loop",
];

pub fn builtin_loop(name: &str, n: usize) -> Result<FormalLoop> {
    if name == "nonlinear-f-loop" {
        return Ok(nonlinear_loop_f(n));
    }
    let algebra = name.strip_suffix("-loop").ok_or_else(|| Error::UnknownName(name.into()))?;
    Ok(loop_from_algebra(&builtin_algebra(algebra)?, n))
}

/// Resolves `builtin:NAME`, `file:PATH` or an inline JSON loop spec:
/// `{"type": "builtin", "name": ...}`, `{"type": "from-algebra", "table": ...}`
/// or `{"type": "components", ...}` with the formal map fields.
pub fn load_loop(spec: &str, n: usize) -> Result<FormalLoop> {
    if let Some(name) = spec.strip_prefix("builtin:") {
        return builtin_loop(name, n);
    }
    if let Some(path) = spec.strip_prefix("file:") {
        let text = std::fs::read_to_string(Path::new(path))
            .map_err(|e| Error::InvalidArgument(format!("cannot read {path}: {e}")))?;
        return loop_from_json(&serde_json::from_str(&text)?, n);
    }
    if spec.trim_start().starts_with('{') {
        return loop_from_json(&serde_json::from_str(spec)?, n);
    }
    Err(Error::InvalidArgument(format!("loop spec `{spec}` must be builtin:NAME, file:PATH or inline JSON")))
}

pub fn loop_from_json(v: &serde_json::Value, n: usize) -> Result<FormalLoop> {
    let kind = v.get("type").and_then(|t| t.as_str()).unwrap_or("components");
    match kind {
        "builtin" => {
            let name = v["name"].as_str().ok_or_else(|| Error::InvalidArgument("builtin spec needs a name".into()))?;
            builtin_loop(name, n)
        }
        "from-algebra" => {
            let table = if v["table"].is_string() {
                builtin_algebra(v["table"].as_str().unwrap_or_default())?
            } else {
                AlgebraTable::from_json(&v["table"])?
            };
            Ok(loop_from_algebra(&table, n))
        }
        "components" => {
            let exact = v.get("exact").and_then(|e| e.as_bool()).unwrap_or(false);
            let map = FormalMap::from_json(v)?;
            let l = if exact { FormalLoop::exact(map)? } else { FormalLoop::new(map)? };
            l.regrade(n)
        }
        other => Err(Error::InvalidArgument(format!("unknown loop spec type `{other}`"))),
    }
}

/// Replaces one entry of the linear part of a map, for perturbation tests.
pub fn perturb_linear(theta: &FormalMap, k: usize, i: usize, delta: &Q) -> Result<FormalMap> {
    let mut coords = theta.coords().to_vec();
    let e = crate::sym::unit_vector(theta.total_dim(), i);
    coords[k].add_term(e, delta.clone());
    FormalMap::from_coords(theta.arg_dims().to_vec(), theta.degree(), coords)
}
