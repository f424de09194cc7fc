use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::error::Error;
use crate::rational::{factorial_q, q, Q};
use crate::sym::{monomials_up_to, split_monomial, SymElement};
use crate::trees::{parse_identity, parse_word};

fn series1(terms: &[(&[u8], i64)], dim: usize) -> SymElement {
    SymElement::from_terms(dim, terms.iter().map(|(a, c)| (a.to_vec(), q(*c)))).unwrap()
}

fn loop1(extra: &[(&[u8], i64)], n: usize) -> FormalLoop {
    let mut terms: Vec<(&[u8], i64)> = vec![(&[1, 0], 1), (&[0, 1], 1)];
    terms.extend_from_slice(extra);
    FormalLoop::from_series(1, n, vec![series1(&terms, 2)]).unwrap()
}

/// `x + y` plus random integer terms of bidegree `(i, j)` with `i, j >= 1`.
fn random_loop(seed: u64, d: usize, n: usize) -> FormalLoop {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let px = FormalMap::projection(vec![d, d], 0, n).unwrap();
    let py = FormalMap::projection(vec![d, d], 1, n).unwrap();
    let mut coords = px.try_add(&py).unwrap().coords().to_vec();
    for c in coords.iter_mut() {
        for a in monomials_up_to(2 * d, n) {
            let md = crate::sym::multidegree(&a, &[d, d]);
            if md[0] >= 1 && md[1] >= 1 && rng.gen_bool(0.5) {
                c.add_term(a, q(rng.gen_range(-2..=2)));
            }
        }
    }
    FormalLoop::new(FormalMap::from_coords(vec![d, d], n, coords).unwrap()).unwrap()
}

fn random_map(seed: u64, d: usize, w: usize, n: usize) -> FormalMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coords = (0..w)
        .map(|_| {
            let mut c = SymElement::zero(d);
            for a in monomials_up_to(d, n).into_iter().skip(1) {
                if rng.gen_bool(0.6) {
                    c.add_term(a, q(rng.gen_range(-3..=3)));
                }
            }
            c
        })
        .collect();
    FormalMap::from_coords(vec![d], n, coords).unwrap()
}

/// `sum_n 1/n! theta(mu_(1)) ... theta(mu_(n))` through the iterated coproduct.
fn prolong_oracle(theta: &FormalMap, a: &[u8]) -> SymElement {
    let w = theta.target_dim();
    let mut out = SymElement::zero(w);
    if a.iter().all(|&k| k == 0) {
        return SymElement::one(w);
    }
    for n in 1..=crate::sym::degree(a) {
        for (parts, c) in split_monomial(a, n) {
            if parts.iter().any(|p| p.iter().all(|&k| k == 0)) {
                continue;
            }
            let mut prod = SymElement::one(w);
            for p in &parts {
                prod = prod.product(&SymElement::from_vector(&theta.value(p))).unwrap();
            }
            out.add_scaled(&prod, &(Q::from_integer(c.into()) / factorial_q(n)));
        }
    }
    out
}

#[test]
fn prolongation_of_projection_is_identity() {
    let id = FormalMap::identity(3, 4);
    for (a, v) in prolong(&id, 4).unwrap() {
        assert_eq!(v, SymElement::monomial(a));
    }
}

#[test]
fn prolongation_of_zero_is_counit() {
    let z = FormalMap::zero(vec![2], 3, 4);
    for (a, v) in prolong(&z, 4).unwrap() {
        let want = if a.iter().all(|&k| k == 0) { SymElement::one(3) } else { SymElement::zero(3) };
        assert_eq!(v, want);
    }
}

#[test]
fn prolongation_of_linear_map_is_symmetric_power() {
    let l = FormalMap::linear(2, &[vec![q(1), q(2)], vec![q(3), q(-1)]], 4).unwrap();
    let p = Prolongation::new(l.clone());
    let e1 = SymElement::from_vector(&l.value(&[1, 0]));
    let e2 = SymElement::from_vector(&l.value(&[0, 1]));
    assert_eq!(*p.monomial(&[1, 1]).unwrap(), e1.product(&e2).unwrap());
    let want = e1.product(&e1).unwrap().product(&e2).unwrap();
    assert_eq!(*p.monomial(&[2, 1]).unwrap(), want);
}

#[test]
fn prolongation_matches_coproduct_formula() {
    let theta = random_map(7, 2, 2, 5);
    let p = Prolongation::new(theta.clone());
    for a in monomials_up_to(2, 5) {
        assert_eq!(*p.monomial(&a).unwrap(), prolong_oracle(&theta, &a), "at {a:?}");
    }
}

#[test]
fn prolongation_rejects_high_degree() {
    let p = Prolongation::new(FormalMap::identity(2, 3));
    assert_eq!(p.monomial(&[2, 2]).unwrap_err(), Error::DegreeOverflow { requested: 4, limit: 3 });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn prolongation_is_coalgebra_morphism(seed in 0u64..1000) {
        let theta = random_map(seed, 2, 2, 4);
        let p = Prolongation::new(theta);
        for a in monomials_up_to(2, 4) {
            let img = p.monomial(&a).unwrap();
            prop_assert_eq!(img.counit(), if a.iter().all(|&k| k == 0) { Q::one() } else { Q::zero() });
            let lhs = img.coproduct();
            let mut rhs = crate::sym::SymTensor::zero(vec![2, 2]);
            for b in crate::sym::sub_monomials(&a) {
                let c = Q::from_integer(crate::sym::exp_binomial(&a, &b).into());
                let rest = crate::sym::sub_exps(&a, &b);
                let t = crate::sym::SymTensor::pure(&[&*p.monomial(&b).unwrap(), &*p.monomial(&rest).unwrap()]);
                rhs.add_scaled(&t, &c);
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn division_laws_hold(seed in 0u64..1000) {
        let f = random_loop(seed, 2, 4);
        let px = FormalMap::projection(vec![2, 2], 0, 4).unwrap();
        let py = FormalMap::projection(vec![2, 2], 1, 4).unwrap();
        let ld = f.left_division();
        let rd = f.right_division();
        // x (x \ y) = y and x \ (x y) = y
        prop_assert_eq!(f.map().compose(&[px.clone(), ld.clone()]).unwrap(), py.clone());
        prop_assert_eq!(ld.compose(&[px.clone(), f.map().clone()]).unwrap(), py.clone());
        // (x / y) y = x and (x y) / y = x
        prop_assert_eq!(f.map().compose(&[rd.clone(), py.clone()]).unwrap(), px.clone());
        prop_assert_eq!(rd.compose(&[f.map().clone(), py.clone()]).unwrap(), px);
    }

    #[test]
    fn right_alt_modification_is_idempotent_and_rebuilds(seed in 0u64..1000) {
        let f = random_loop(seed, 2, 4);
        let (ft, phi) = right_alt_modify(&f).unwrap();
        let ra = parse_identity("((x1*x2)*x2) = (x1*(x2*x2))", 2).unwrap();
        prop_assert!(check_loop_identity(&ra, &ft).unwrap().holds);
        let (ft2, phi2) = right_alt_modify(&ft).unwrap();
        prop_assert_eq!(&ft2, &ft);
        prop_assert!(phi2.is_trivial());
        let px = FormalMap::projection(vec![2, 2], 0, 4).unwrap();
        prop_assert_eq!(ft.map().compose(&[px, phi.map().clone()]).unwrap(), f.map().clone());
        prop_assert_eq!(
            ft.map().filter_multidegree(|md| md[1] <= 1),
            f.map().filter_multidegree(|md| md[1] <= 1)
        );
        prop_assert_eq!(similarity_between(&ft, &f).unwrap(), phi);
    }
}

#[test]
fn composition_examples() {
    let add = loop1(&[], 4);
    let d1 = FormalMap::identity(1, 4);
    let z = FormalMap::zero(vec![1], 1, 4);
    assert_eq!(add.map().compose(&[d1.clone(), z.clone()]).unwrap(), d1);
    assert_eq!(add.map().compose(&[z, d1.clone()]).unwrap(), d1);
    assert_eq!(add.map().diagonal().unwrap(), d1.scale(&q(2)));

    let f = loop1(&[(&[1, 1], 1)], 4);
    let lhs = eval_word(&parse_word("((x1*x2)*x3)", 3).unwrap(), &f, 3).unwrap();
    let rhs = eval_word(&parse_word("(x1*(x2*x3))", 3).unwrap(), &f, 3).unwrap();
    let mut want = SymElement::zero(3);
    for a in monomials_up_to(3, 3) {
        if a.iter().all(|&k| k <= 1) && a.iter().any(|&k| k > 0) {
            want.add_term(a, Q::one());
        }
    }
    assert_eq!(lhs.series(), vec![want]);
    assert_eq!(lhs, rhs);
}

#[test]
fn divisions_of_x_plus_y_plus_xy() {
    let f = loop1(&[(&[1, 1], 1)], 5);
    // (y - x) / (1 + x)
    let mut want = SymElement::zero(2);
    for k in 0..=5u8 {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        if k < 5 {
            want.add_term(vec![k, 1], q(sign));
        }
        if k >= 1 {
            want.add_term(vec![k, 0], q(sign));
        }
    }
    let ld = f.left_division().series();
    assert_eq!(ld, vec![want]);
    assert_eq!(ld[0].coeff(&[2, 0]), q(1));
    assert_eq!(ld[0].coeff(&[2, 1]), q(1));
    // y / x
    let px = FormalMap::projection(vec![1, 1], 0, 5).unwrap();
    let py = FormalMap::projection(vec![1, 1], 1, 5).unwrap();
    assert_eq!(f.right_division().compose(&[py, px]).unwrap().series(), ld);

    let add = loop1(&[], 5);
    let py_minus_px = series1(&[(&[0, 1], 1), (&[1, 0], -1)], 2);
    assert_eq!(add.left_division().series(), vec![py_minus_px]);
}

#[test]
fn unitality_is_checked() {
    let bad = FormalMap::from_series(vec![1, 1], 3, vec![series1(&[(&[1, 0], 1), (&[0, 1], 1), (&[2, 0], 1)], 2)]);
    assert!(matches!(FormalLoop::new(bad.unwrap()), Err(Error::NotUnital(_))));
    let bad = FormalMap::from_series(vec![1, 1], 3, vec![series1(&[(&[1, 0], 1), (&[0, 1], 2)], 2)]);
    assert!(matches!(FormalLoop::new(bad.unwrap()), Err(Error::NotUnital(_))));
    let bad = FormalMap::from_series(vec![1, 2], 3, vec![series1(&[(&[1, 0, 0], 1)], 3)]);
    assert!(matches!(FormalLoop::new(bad.unwrap()), Err(Error::NotUnital(_))));
}

#[test]
fn word_examples() {
    let f = random_loop(3, 2, 4);
    let proj = |slot| FormalMap::projection(vec![2; 2], slot, 4).unwrap();
    let w = parse_word("(x1\\(x1*x2))", 2).unwrap();
    assert_eq!(eval_word(&w, &f, 2).unwrap(), proj(1));
    let w = parse_word("(x1*(x1\\e))", 2).unwrap();
    assert!(eval_word(&w, &f, 2).unwrap().is_zero());
    let w = parse_word("(e/(x1\\e))", 2).unwrap();
    assert_eq!(eval_word(&w, &f, 2).unwrap(), proj(0));
    let w = LoopWord::mul(LoopWord::var(1), LoopWord::var(3));
    assert_eq!(eval_word(&w, &f, 2).unwrap_err(), Error::ArityOverflow { index: 3, arity: 2 });
}

use crate::trees::LoopWord;

/// `(w)'` built from the prolongations of the operations and the coproduct.
fn prolong_word(w: &LoopWord, f: &FormalLoop, a: &[u8]) -> SymElement {
    let d = f.dim();
    match w {
        LoopWord::Var(i) => {
            let slot = crate::sym::split_by_dims(a, &[d, d])[*i - 1].clone();
            let other = crate::sym::split_by_dims(a, &[d, d])[2 - *i].clone();
            if other.iter().any(|&k| k > 0) {
                SymElement::zero(d)
            } else {
                SymElement::monomial(slot)
            }
        }
        LoopWord::Unit => {
            if a.iter().all(|&k| k == 0) {
                SymElement::one(d)
            } else {
                SymElement::zero(d)
            }
        }
        LoopWord::Op(op, l, r) => {
            let p = Prolongation::new(f.operation(*op).clone());
            let mut out = SymElement::zero(d);
            for (parts, c) in split_monomial(a, 2) {
                let lv = prolong_word(l, f, &parts[0]).embed(2 * d, 0);
                let rv = prolong_word(r, f, &parts[1]).embed(2 * d, d);
                let arg = lv.product(&rv).unwrap();
                out.add_scaled(&p.apply(&arg).unwrap(), &Q::from_integer(c.into()));
            }
            out
        }
    }
}

#[test]
fn word_maps_commute_with_prolongation() {
    let f = random_loop(11, 2, 3);
    for src in ["((x1*x2)\\x1)", "(x2/(x1*x2))", "((x1\\e)*(x2/x1))"] {
        let w = parse_word(src, 2).unwrap();
        let p = Prolongation::new(eval_word(&w, &f, 2).unwrap());
        for a in monomials_up_to(4, 3) {
            assert_eq!(*p.monomial(&a).unwrap(), prolong_word(&w, &f, &a), "{src} at {a:?}");
        }
    }
}

#[test]
fn right_alternativity_witness() {
    let f = loop1(&[(&[2, 1], 1)], 5);
    let ra = parse_identity("((x1*x2)*x2) = (x1*(x2*x2))", 2).unwrap();
    let v = check_loop_identity(&ra, &f).unwrap();
    assert!(!v.holds);
    let w = v.witness.unwrap();
    assert_eq!(w.multidegree, vec![1, 2]);
    assert_eq!(w.monomials, vec![vec![1], vec![2]]);
    assert_eq!(w.difference_series, vec![q(2)]);
    assert_eq!(w.difference, vec![q(4)]);

    let lhs = eval_word(&ra.lhs, &f, 2).unwrap();
    let rhs = eval_word(&ra.rhs, &f, 2).unwrap();
    let want = series1(&[(&[1, 2], 2), (&[3, 2], 2), (&[2, 3], 1)], 2);
    assert_eq!(lhs.try_sub(&rhs).unwrap().series(), vec![want]);
}

#[test]
fn associativity_of_an_associative_loop() {
    // x + y + xy on the algebra of upper triangular 2x2 matrices, coordinates (a, b, c)
    let mut coords = Vec::new();
    let entries: [&[(&[u8], i64)]; 3] = [
        &[(&[1, 0, 0, 1, 0, 0], 1)],
        &[(&[1, 0, 0, 0, 1, 0], 1), (&[0, 1, 0, 0, 0, 1], 1)],
        &[(&[0, 0, 1, 0, 0, 1], 1)],
    ];
    for (k, e) in entries.iter().enumerate() {
        let mut s = series1(e, 6);
        s.add_term(crate::sym::unit_vector(6, k), q(1));
        s.add_term(crate::sym::unit_vector(6, 3 + k), q(1));
        coords.push(s);
    }
    let f = FormalLoop::from_series(3, 4, coords).unwrap();
    let assoc = parse_identity("((x1*x2)*x3) = (x1*(x2*x3))", 3).unwrap();
    let v = check_loop_identity(&assoc, &f).unwrap();
    assert!(v.holds);
    assert!(v.witness.is_none());
}

#[test]
fn right_alt_modification_example() {
    let f = loop1(&[(&[2, 1], 1)], 5);
    let (ft, phi) = right_alt_modify(&f).unwrap();
    let q2 = ft.map().filter_multidegree(|md| md[1] == 2).series();
    assert_eq!(q2, vec![series1(&[(&[1, 2], 1), (&[3, 2], 1)], 2)]);
    assert_eq!(ft.map().filter_multidegree(|md| md[1] <= 1), f.map().filter_multidegree(|md| md[1] <= 1));
    let px = FormalMap::projection(vec![1, 1], 0, 5).unwrap();
    assert_eq!(ft.map().compose(&[px, phi.map().clone()]).unwrap(), *f.map());
    for (k, l) in [(1usize, 1usize), (2, 1), (1, 2), (2, 3), (1, 4)] {
        let yk = power_word(2, k);
        let yl = power_word(2, l);
        let x = LoopWord::var(1);
        let lhs = LoopWord::mul(x.clone(), LoopWord::mul(yk.clone(), yl.clone()));
        let rhs = LoopWord::mul(LoopWord::mul(x, yk), yl);
        let id = crate::trees::Identity { lhs, rhs, nvars: 2 };
        assert!(check_loop_identity(&id, &ft).unwrap().holds, "x(y^{k} y^{l})");
    }
}

/// Left-normed power `((y y) y) ...`.
fn power_word(var: usize, k: usize) -> LoopWord {
    let mut w = LoopWord::var(var);
    for _ in 1..k {
        w = LoopWord::mul(w, LoopWord::var(var));
    }
    w
}

#[test]
fn right_alternative_loop_is_its_own_modification() {
    let f = loop1(&[(&[1, 1], 1)], 5);
    let (ft, phi) = right_alt_modify(&f).unwrap();
    assert_eq!(ft, f);
    assert!(phi.is_trivial());
    assert!(similarity_between(&f, &f).unwrap().is_trivial());
}

#[test]
fn different_connections_are_not_similar() {
    let a = loop1(&[], 4);
    let b = loop1(&[(&[1, 1], 1)], 4);
    match similarity_between(&a, &b) {
        Err(Error::NotSimilar(m)) => assert!(m.contains("(1, 1)"), "{m}"),
        other => panic!("expected not-similar, got {other:?}"),
    }
}

#[test]
fn similarity_shape_is_validated() {
    let py = FormalMap::projection(vec![1, 1], 1, 3).unwrap();
    assert!(SimilarityMap::new(py.clone()).unwrap().is_trivial());
    let bad = py.try_add(&FormalMap::from_series(vec![1, 1], 3, vec![series1(&[(&[1, 1], 1)], 2)]).unwrap());
    assert!(SimilarityMap::new(bad.unwrap()).is_err());
}

#[test]
fn json_round_trip_in_both_views() {
    let f = random_loop(5, 2, 3);
    for view in [View::Series, View::Distribution] {
        let j = f.to_json(view);
        assert_eq!(j["view"], serde_json::to_value(view).unwrap());
        assert_eq!(FormalLoop::from_json(&j).unwrap(), f);
    }
    let j = serde_json::json!({
        "dims": [1, 1], "target_dim": 1, "N": 3, "view": "series",
        "components": [
            {"multidegree": [1, 0], "entries": [{"monomials": [[1], [0]], "value": ["1"]}]},
            {"multidegree": [0, 1], "entries": [{"monomials": [[0], [1]], "value": ["1"]}]},
            {"multidegree": [2, 1], "entries": [{"monomials": [[2], [1]], "value": ["1/2"]}]}
        ]
    });
    let g = FormalLoop::from_json(&j).unwrap();
    assert_eq!(g.map().value(&[2, 1]), vec![q(1)]);
    let mut bad = j.clone();
    bad["components"][2]["multidegree"] = serde_json::json!([1, 2]);
    assert!(FormalLoop::from_json(&bad).is_err());
}

#[test]
fn regrading() {
    let f = loop1(&[(&[1, 1], 1)], 3);
    assert!(matches!(f.regrade(5), Err(Error::DegreeOverflow { .. })));
    let e = FormalLoop::exact(f.map().clone()).unwrap();
    let g = e.regrade(6).unwrap();
    assert_eq!(g.degree(), 6);
    assert_eq!(g.left_division().series()[0].coeff(&[5, 1]), q(-1));
    assert_eq!(e.regrade(2).unwrap().degree(), 2);
}
