use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::field::{add_vec, binom, check_dims, degree_after, FormalVectorField};
use crate::dist::{BracketEntry, BracketTable};
use crate::error::{Error, Result};
use crate::formal::FormalLoop;
use crate::rational::Q;
use crate::sym::{
    concat_exps, degree, monomials_up_to, sub_exps, sub_monomials, unit_vector, ExpVector, SymElement, VectorElem,
};

/// `mu (x) v -> mu * v` on monomials of degree `<= degree`, stored per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatConnection {
    dim: usize,
    degree: usize,
    table: BTreeMap<ExpVector, Vec<VectorElem>>,
}

impl FlatConnection {
    /// `table[a][i] = e^a * e_i`; must be total and the identity on `1 (x) V`.
    pub fn from_table(dim: usize, degree: usize, table: BTreeMap<ExpVector, Vec<VectorElem>>) -> Result<Self> {
        let expected = monomials_up_to(dim, degree).len();
        if table.len() != expected {
            return Err(Error::InvalidArgument(format!(
                "connection table is partial: {} of {expected} monomials",
                table.len()
            )));
        }
        for (a, row) in &table {
            check_dims(dim, a.len())?;
            check_dims(dim, row.len())?;
            for v in row {
                check_dims(dim, v.len())?;
            }
            if crate::sym::degree(a) > degree {
                return Err(Error::InvalidArgument(format!("connection entry {a:?} exceeds degree {degree}")));
            }
        }
        let zero = vec![0; dim];
        for (i, v) in table[&zero].iter().enumerate() {
            if *v != unit_row(dim, i) {
                return Err(Error::InvalidArgument(format!("1 * e{} is not e{}", i + 1, i + 1)));
            }
        }
        Ok(FlatConnection { dim, degree, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn table(&self) -> &BTreeMap<ExpVector, Vec<VectorElem>> {
        &self.table
    }

    pub fn truncate(&self, n: usize) -> FlatConnection {
        let table = self.table.iter().filter(|(a, _)| degree(a) <= n).map(|(a, r)| (a.clone(), r.clone())).collect();
        FlatConnection { dim: self.dim, degree: self.degree.min(n), table }
    }

    /// `mu * v`.
    pub fn star(&self, mu: &SymElement, v: &[Q]) -> Result<VectorElem> {
        check_dims(self.dim, mu.dim())?;
        check_dims(self.dim, v.len())?;
        if let Some(d) = mu.degree().filter(|&d| d > self.degree) {
            return Err(Error::DegreeOverflow { requested: d, limit: self.degree });
        }
        let mut out = vec![Q::zero(); self.dim];
        for (a, c) in mu.iter() {
            self.star_monomial_into(&mut out, a, v, c);
        }
        Ok(out)
    }

    fn star_monomial_into(&self, out: &mut [Q], a: &[u8], v: &[Q], c: &Q) {
        let row = &self.table[a];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                add_vec(out, &row[i], &(c * x));
            }
        }
    }

    fn star_monomial(&self, a: &[u8], v: &[Q]) -> VectorElem {
        let mut out = vec![Q::zero(); self.dim];
        self.star_monomial_into(&mut out, a, v, &Q::one());
        out
    }
}

fn unit_row(dim: usize, i: usize) -> VectorElem {
    (0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()
}

/// The canonical connection of a loop: `mu * v = F(mu (x) v)`, to degree `N - 1`.
pub fn connection_from_loop(f: &FormalLoop) -> Result<FlatConnection> {
    let d = f.dim();
    let c = degree_after(&[f.degree()], 1)?;
    let map = f.map();
    let mut table = BTreeMap::new();
    for a in monomials_up_to(d, c) {
        let row = (0..d).map(|i| map.value(&concat_exps(&[a.clone(), unit_vector(d, i)]))).collect();
        table.insert(a, row);
    }
    FlatConnection::from_table(d, c, table)
}

/// The field `v*: mu -> mu * v`.
pub fn adapted_field(conn: &FlatConnection, v: &[Q]) -> Result<FormalVectorField> {
    check_dims(conn.dim, v.len())?;
    FormalVectorField::build(conn.dim, conn.degree, |a| Ok(conn.star_monomial(a, v)))
}

/// The inverse map `mu (x) u -> mu \* u`, solved by induction on `deg mu` from
/// `sum mu_(1) \* (mu_(2) * v) = epsilon(mu) v`.
pub fn connection_backslash_star(conn: &FlatConnection) -> FlatConnection {
    let d = conn.dim;
    let mut table: BTreeMap<ExpVector, Vec<VectorElem>> = BTreeMap::new();
    for a in monomials_up_to(d, conn.degree) {
        let mut row = Vec::with_capacity(d);
        for i in 0..d {
            let mut out = if degree(&a) == 0 { unit_row(d, i) } else { vec![Q::zero(); d] };
            for c in sub_monomials(&a) {
                if c == a {
                    continue;
                }
                let inner = conn.star_monomial(&sub_exps(&a, &c), &unit_row(d, i));
                let back = &table[&c];
                for (j, x) in inner.iter().enumerate() {
                    if !x.is_zero() {
                        add_vec(&mut out, &back[j], &-(binom(&a, &c) * x));
                    }
                }
            }
            row.push(out);
        }
        table.insert(a, row);
    }
    FlatConnection { dim: d, degree: conn.degree, table }
}

/// `nabla_A(B)(mu) = sum B(mu_(1) A(mu_(2))) - (mu_(1) A(mu_(2))) * (mu_(3) \* B(mu_(4)))`.
///
/// The result is kept to degree `min(deg A, deg B - 1, deg conn - 1)`.
pub fn covariant_derivative(
    conn: &FlatConnection,
    a: &FormalVectorField,
    b: &FormalVectorField,
) -> Result<FormalVectorField> {
    let inverse = connection_backslash_star(conn);
    covariant_with(conn, &inverse, a, b)
}

fn covariant_with(
    conn: &FlatConnection,
    inverse: &FlatConnection,
    a: &FormalVectorField,
    b: &FormalVectorField,
) -> Result<FormalVectorField> {
    check_dims(conn.dim, a.dim())?;
    check_dims(conn.dim, b.dim())?;
    let n = a.degree().min(degree_after(&[b.degree(), conn.degree], 1)?);
    // u(beta) = sum beta_(1) \* B(beta_(2))
    let mut u: BTreeMap<ExpVector, VectorElem> = BTreeMap::new();
    for beta in monomials_up_to(conn.dim, n) {
        let mut acc = vec![Q::zero(); conn.dim];
        for c in sub_monomials(&beta) {
            let bv = b.value(&sub_exps(&beta, &c));
            add_vec(&mut acc, &inverse.star_monomial(&c, bv), &binom(&beta, &c));
        }
        u.insert(beta, acc);
    }
    let mut shifts: BTreeMap<ExpVector, SymElement> = BTreeMap::new();
    FormalVectorField::build(conn.dim, n, |m| {
        let shift_m = shifts.entry(m.to_vec()).or_insert_with(|| a.shift(m)).clone();
        let mut v = b.apply(&shift_m)?;
        for c in sub_monomials(m) {
            let s = shifts.entry(c.clone()).or_insert_with(|| a.shift(&c));
            let w = conn.star(s, &u[&sub_exps(m, &c)])?;
            add_vec(&mut v, &w, &-binom(m, &c));
        }
        Ok(v)
    })
}

/// `T(A, B) = nabla_A(B) - nabla_B(A) - [A, B]`.
pub fn torsion(conn: &FlatConnection, a: &FormalVectorField, b: &FormalVectorField) -> Result<FormalVectorField> {
    let inverse = connection_backslash_star(conn);
    torsion_with(conn, &inverse, a, b)
}

fn torsion_with(
    conn: &FlatConnection,
    inverse: &FlatConnection,
    a: &FormalVectorField,
    b: &FormalVectorField,
) -> Result<FormalVectorField> {
    let ab = covariant_with(conn, inverse, a, b)?;
    let ba = covariant_with(conn, inverse, b, a)?;
    ab.try_sub(&ba)?.try_sub(&super::field::vf_bracket(a, b)?)
}

/// `<x_1, ..., x_n; y, z>_F = nabla_{x_1*} ... nabla_{x_n*} T(y*, z*)(1)`, innermost `x_n`.
pub fn ms_brackets(f: &FormalLoop, xs: &[VectorElem], y: &[Q], z: &[Q]) -> Result<VectorElem> {
    let n = xs.len();
    if n + 2 > f.degree() {
        return Err(Error::DegreeOverflow { requested: n + 2, limit: f.degree() });
    }
    let conn = connection_from_loop(f)?.truncate(n + 1);
    let inverse = connection_backslash_star(&conn);
    let ys = adapted_field(&conn, y)?;
    let zs = adapted_field(&conn, z)?;
    let mut field = torsion_with(&conn, &inverse, &ys, &zs)?;
    for x in xs.iter().rev() {
        let xstar = adapted_field(&conn, x)?.truncate(field.degree());
        field = covariant_with(&conn, &inverse, &xstar, &field)?;
    }
    Ok(field.value(&vec![0; f.dim()]).clone())
}

/// All brackets of the given arity on basis vectors, sharing the inner derivatives.
pub fn ms_bracket_table(f: &FormalLoop, arity: usize) -> Result<BracketTable> {
    if arity < 2 {
        return Err(Error::InvalidArgument("brackets have arity at least 2".into()));
    }
    if arity > f.degree() {
        return Err(Error::DegreeOverflow { requested: arity, limit: f.degree() });
    }
    let d = f.dim();
    let n = arity - 2;
    let conn = connection_from_loop(f)?.truncate(n + 1);
    let inverse = connection_backslash_star(&conn);
    let basis: Vec<FormalVectorField> = (0..d).map(|i| adapted_field(&conn, &unit_row(d, i))).collect::<Result<_>>()?;
    let mut values: BTreeMap<Vec<usize>, VectorElem> = BTreeMap::new();
    for j in 0..d {
        for k in 0..d {
            if k < j {
                continue;
            }
            let t = if j == k {
                FormalVectorField::zero(d, n)
            } else {
                torsion_with(&conn, &inverse, &basis[j], &basis[k])?
            };
            let mut suffix = Vec::with_capacity(n);
            descend(&conn, &inverse, &basis, t, n, &mut suffix, &mut |xs, v| {
                let mut args = xs.to_vec();
                args.extend([j, k]);
                let mut swapped = xs.to_vec();
                swapped.extend([k, j]);
                values.insert(swapped, v.iter().map(|c| -c).collect());
                values.insert(args, v.clone());
            })?;
        }
    }
    let entries = values.into_iter().map(|(args, value)| BracketEntry { args, value }).collect();
    Ok(BracketTable { arity, dim: d, entries })
}

/// Applies `nabla_{x*}` for every basis `x`, outermost last; `xs` grows at the front.
fn descend(
    conn: &FlatConnection,
    inverse: &FlatConnection,
    basis: &[FormalVectorField],
    field: FormalVectorField,
    remaining: usize,
    xs: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize], &VectorElem),
) -> Result<()> {
    if remaining == 0 {
        let mut args = xs.clone();
        args.reverse();
        emit(&args, field.value(&vec![0; conn.dim]));
        return Ok(());
    }
    for (i, x) in basis.iter().enumerate() {
        let next = if field.is_zero() {
            FormalVectorField::zero(conn.dim, field.degree() - 1)
        } else {
            covariant_with(conn, inverse, &x.truncate(field.degree()), &field)?
        };
        xs.push(i);
        descend(conn, inverse, basis, next, remaining - 1, xs, emit)?;
        xs.pop();
    }
    Ok(())
}
