use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, q, Q};
use crate::sym::VectorElem;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFlags {
    pub associative: bool,
    pub alternative: bool,
    pub jordan: bool,
    pub commutative: bool,
}

/// A finite-dimensional algebra given by structure constants:
/// `table[i][j]` is the product `e_i * e_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraTable {
    name: String,
    table: Vec<Vec<VectorElem>>,
    flags: AlgebraFlags,
}

impl AlgebraTable {
    /// Builds the algebra and computes its flags by checking the defining
    /// identities on all tuples of basis vectors.
    pub fn new(name: impl Into<String>, table: Vec<Vec<VectorElem>>) -> Result<Self> {
        let d = table.len();
        for row in &table {
            if row.len() != d {
                return Err(Error::DimensionMismatch { expected: d, found: row.len() });
            }
            for v in row {
                if v.len() != d {
                    return Err(Error::DimensionMismatch { expected: d, found: v.len() });
                }
            }
        }
        let mut a = AlgebraTable { name: name.into(), table, flags: AlgebraFlags::default() };
        a.flags = a.compute_flags();
        Ok(a)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn flags(&self) -> AlgebraFlags {
        self.flags
    }

    /// Structure constant `c_{ij}^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.table[i][j][k]
    }

    pub fn basis(&self, i: usize) -> VectorElem {
        (0..self.dim()).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> VectorElem {
        let d = self.dim();
        let mut out = vec![Q::zero(); d];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    pub fn associator(&self, x: &[Q], y: &[Q], z: &[Q]) -> VectorElem {
        let l = self.mul(&self.mul(x, y), z);
        let r = self.mul(x, &self.mul(y, z));
        l.iter().zip(&r).map(|(a, b)| a - b).collect()
    }

    pub fn commutator(&self, x: &[Q], y: &[Q]) -> VectorElem {
        let l = self.mul(x, y);
        let r = self.mul(y, x);
        l.iter().zip(&r).map(|(a, b)| a - b).collect()
    }

    fn compute_flags(&self) -> AlgebraFlags {
        let d = self.dim();
        let e: Vec<VectorElem> = (0..d).map(|i| self.basis(i)).collect();
        let zero = |v: &VectorElem| v.iter().all(Zero::is_zero);
        let add = |a: VectorElem, b: VectorElem| a.iter().zip(&b).map(|(x, y)| x + y).collect::<VectorElem>();
        let commutative = (0..d).cartesian_product(0..d).all(|(i, j)| zero(&self.commutator(&e[i], &e[j])));
        let triples = || (0..3).map(|_| 0..d).multi_cartesian_product();
        let associative = triples().all(|t| zero(&self.associator(&e[t[0]], &e[t[1]], &e[t[2]])));
        // (x, x, y) = 0 = (y, x, x), polarized in x
        let alternative = triples().all(|t| {
            let (x, z, y) = (&e[t[0]], &e[t[1]], &e[t[2]]);
            zero(&add(self.associator(x, z, y), self.associator(z, x, y)))
                && zero(&add(self.associator(y, x, z), self.associator(y, z, x)))
        });
        // (x y)(x x) = x (y (x x)), polarized in x
        let jordan = commutative
            && (0..4).map(|_| 0..d).multi_cartesian_product().all(|t| {
                let y = &e[t[3]];
                let mut acc = vec![Q::zero(); d];
                for p in [t[0], t[1], t[2]].into_iter().permutations(3) {
                    let (xa, xb, xc) = (&e[p[0]], &e[p[1]], &e[p[2]]);
                    let bc = self.mul(xb, xc);
                    let l = self.mul(&self.mul(xa, y), &bc);
                    let r = self.mul(xa, &self.mul(y, &bc));
                    for (o, (u, v)) in acc.iter_mut().zip(l.iter().zip(&r)) {
                        *o += u - v;
                    }
                }
                zero(&acc)
            });
        AlgebraFlags { associative, alternative, jordan, commutative }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<Vec<String>>> =
            self.table.iter().map(|row| row.iter().map(|v| v.iter().map(format_q).collect()).collect()).collect();
        serde_json::json!({ "name": self.name, "dim": self.dim(), "table": table, "flags": self.flags })
    }

    /// Reads `{"name"?, "table": [[["p/q", ...], ...], ...]}`; flags in the
    /// input are ignored and recomputed.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Json {
            #[serde(default)]
            name: Option<String>,
            table: Vec<Vec<Vec<String>>>,
        }
        let j: Json = serde_json::from_value(v.clone())?;
        let table = j
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        Self::new(j.name.unwrap_or_else(|| "custom".into()), table)
    }
}

fn table_from(d: usize, entries: &[(usize, usize, usize, i64)]) -> Vec<Vec<VectorElem>> {
    let mut t = vec![vec![vec![Q::zero(); d]; d]; d];
    for &(i, j, k, c) in entries {
        t[i][j][k] += q(c);
    }
    t
}

/// `x * y = (x1 y1 + x2 y3 + x3 y2, x1 y2 + x2 y1, x1 y3 + x3 y1)`.
pub fn jordan_k3() -> AlgebraTable {
    let t = table_from(
        3,
        &[(0, 0, 0, 1), (1, 2, 0, 1), (2, 1, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)],
    );
    AlgebraTable::new("jordan-k3", t).expect("well-formed table")
}

pub fn dual_numbers() -> AlgebraTable {
    let t = table_from(2, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)]);
    AlgebraTable::new("dual-numbers", t).expect("well-formed table")
}

/// Basis `E11, E12, E22` of upper triangular 2x2 matrices.
pub fn upper_triangular() -> AlgebraTable {
    let t = table_from(3, &[(0, 0, 0, 1), (0, 1, 1, 1), (1, 2, 1, 1), (2, 2, 2, 1)]);
    AlgebraTable::new("assoc-2x2-uppertriangular", t).expect("well-formed table")
}

/// Cayley-Dickson doubling `(a, b)(c, d) = (ac + g conj(d) b, da + b conj(c))`
/// applied to the reals with `g = -1, -1, 1`.
pub fn split_octonions() -> AlgebraTable {
    let gammas = [-1i64, -1, 1];
    let d = 8;
    let mut t = vec![vec![vec![Q::zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let mut x = vec![Q::zero(); d];
            let mut y = vec![Q::zero(); d];
            x[i] = Q::one();
            y[j] = Q::one();
            t[i][j] = cd_mul(&x, &y, &gammas);
        }
    }
    AlgebraTable::new("split-octonion", t).expect("well-formed table")
}

fn cd_conj(x: &[Q]) -> VectorElem {
    x.iter().enumerate().map(|(i, c)| if i == 0 { c.clone() } else { -c }).collect()
}

fn cd_mul(x: &[Q], y: &[Q], gammas: &[i64]) -> VectorElem {
    if x.len() == 1 {
        return vec![&x[0] * &y[0]];
    }
    let h = x.len() / 2;
    let g = q(gammas[gammas.len() - 1]);
    let inner = &gammas[..gammas.len() - 1];
    let (a, b) = x.split_at(h);
    let (c, dd) = y.split_at(h);
    let ac = cd_mul(a, c, inner);
    let db = cd_mul(&cd_conj(dd), b, inner);
    let da = cd_mul(dd, a, inner);
    let bc = cd_mul(b, &cd_conj(c), inner);
    let mut out: VectorElem = ac.iter().zip(&db).map(|(u, v)| u + &g * v).collect();
    out.extend(da.iter().zip(&bc).map(|(u, v)| u + v));
    out
}

/// The table of `jordan-k3` with the vectors `a = e2`, `b = 2 e3` and the
/// unit `e = e1`; `(a, a) = (b, b) = 0` and `(a, b) = 2`.
pub struct JordanSpin {
    pub algebra: AlgebraTable,
    pub a: VectorElem,
    pub b: VectorElem,
    pub e: VectorElem,
}

pub fn jordan_spin_normalized() -> JordanSpin {
    let base = jordan_k3();
    let algebra = AlgebraTable { name: "jordan-spin-normalized".into(), ..base };
    JordanSpin { a: vec![q(0), q(1), q(0)], b: vec![q(0), q(0), q(2)], e: vec![q(1), q(0), q(0)], algebra }
}

pub const ALGEBRA_NAMES: [&str; 5] =
    ["jordan-k3", "jordan-spin-normalized", "split-octonion", "dual-numbers", "assoc-2x2-uppertriangular"];

pub fn builtin_algebra(name: &str) -> Result<AlgebraTable> {
    match name {
        "jordan-k3" => Ok(jordan_k3()),
        "jordan-spin-normalized" => Ok(jordan_spin_normalized().algebra),
        "split-octonion" => Ok(split_octonions()),
        "dual-numbers" => Ok(dual_numbers()),
        "assoc-2x2-uppertriangular" => Ok(upper_triangular()),
        other => Err(Error::UnknownName(other.into())),
    }
}
