use super::*;
use crate::error::Error;
use crate::formal::{check_loop_identity, FormalMap};
use crate::rational::q;
use crate::trees::parse_identity;

const MOUFANG: &str = "(x1*(x2*(x1*x3))) = (((x1*x2)*x1)*x3)";

#[test]
fn jordan_table() {
    let a = jordan_k3();
    assert_eq!(a.mul(&a.basis(1), &a.basis(2)), a.basis(0));
    let f = a.flags();
    assert!(f.jordan && f.commutative && !f.associative);
}

#[test]
fn octonion_flags() {
    let o = split_octonions();
    assert_eq!(o.dim(), 8);
    let f = o.flags();
    assert!(f.alternative && !f.associative && !f.commutative && !f.jordan);
    assert_eq!(o.mul(&o.basis(0), &o.basis(5)), o.basis(5));
}

#[test]
fn associative_baselines() {
    for a in [dual_numbers(), upper_triangular()] {
        assert!(a.flags().associative && a.flags().alternative, "{}", a.name());
    }
    assert!(dual_numbers().flags().commutative);
    assert!(!upper_triangular().flags().commutative);
}

#[test]
fn spin_vectors_are_normalized() {
    let s = jordan_spin_normalized();
    let a = &s.algebra;
    // (u, v) e is the e-component of u * v for u, v in the plane spanned by e2, e3
    assert_eq!(a.mul(&s.a, &s.a), vec![q(0); 3]);
    assert_eq!(a.mul(&s.b, &s.b), vec![q(0); 3]);
    assert_eq!(a.mul(&s.a, &s.b), s.e.iter().map(|x| x * q(2)).collect::<Vec<_>>());
}

#[test]
fn unknown_names_are_rejected() {
    assert_eq!(builtin_algebra("sedenion").unwrap_err(), Error::UnknownName("sedenion".into()));
    assert!(load_loop("builtin:sedenion-loop", 3).is_err());
    assert!(load_loop("sedenion", 3).is_err());
}

#[test]
fn loops_from_algebras() {
    let assoc = parse_identity("((x1*x2)*x3) = (x1*(x2*x3))", 3).unwrap();
    let g = loop_from_algebra(&dual_numbers(), 4);
    assert!(check_loop_identity(&assoc, &g).unwrap().holds);
    let g = loop_from_algebra(&jordan_k3(), 4);
    assert!(!check_loop_identity(&assoc, &g).unwrap().holds);
    assert_eq!(g.map().value(&[0, 1, 0, 0, 0, 1]), jordan_k3().basis(0));
}

#[test]
fn octonion_loop_is_moufang() {
    let o = builtin_loop("split-octonion-loop", 4).unwrap();
    let id = parse_identity(MOUFANG, 3).unwrap();
    let v = check_loop_identity(&id, &o).unwrap();
    assert!(v.holds, "{:?}", v.witness);
    let j = builtin_loop("jordan-k3-loop", 4).unwrap();
    assert!(!check_loop_identity(&id, &j).unwrap().holds);
}

#[test]
fn nonlinear_loop_series() {
    let f = nonlinear_loop_f(5);
    let s = f.map().series();
    // variables (x2, x3, y2, y3)
    assert_eq!(s[0].coeff(&[1, 0, 1, 1]), q(-1));
    assert_eq!(s[0].coeff(&[1, 0, 0, 0]), q(1));
    assert_eq!(s[1].coeff(&[0, 1, 0, 0]), q(1));
    assert_eq!(s[0].coeff(&[2, 0, 0, 1]), q(-1));
    assert_eq!(s[0].coeff(&[3, 0, 0, 2]), q(1));
    let px = FormalMap::projection(vec![2, 2], 0, 5).unwrap();
    let py = FormalMap::projection(vec![2, 2], 1, 5).unwrap();
    assert_eq!(f.map().compose(&[px.clone(), f.left_division().clone()]).unwrap(), py);
    assert_eq!(f.map().compose(&[f.right_division().clone(), py.clone()]).unwrap(), px);
}

#[test]
fn covering_map() {
    let phi = phi_g_to_f(4);
    let s = phi.series();
    assert_eq!(s[0].coeff(&[0, 1, 0]), q(1));
    assert_eq!(s[0].coeff(&[1, 0, 0]), q(0));
    assert_eq!(s[1].coeff(&[0, 0, 1]), q(1));
    assert_eq!(s[0].coeff(&[1, 1, 0]), q(-1));
    assert_eq!(s[1].coeff(&[2, 0, 1]), q(1));
}

#[test]
fn covering_map_is_a_homomorphism() {
    let n = 6;
    let g = builtin_loop("jordan-k3-loop", n).unwrap();
    let f = nonlinear_loop_f(n);
    let v = check_homomorphism(&phi_g_to_f(n), &g, &f).unwrap();
    assert!(v.holds, "{:?}", v.witness);
    assert_eq!(v.degree, 6);

    let id = FormalMap::identity(2, n);
    assert!(check_homomorphism(&id, &f, &f).unwrap().holds);

    let bad = perturb_linear(&phi_g_to_f(n), 0, 1, &q(1)).unwrap();
    let v = check_homomorphism(&bad, &g, &f).unwrap();
    assert!(!v.holds);
    assert!(v.witness.is_some());
}

#[test]
fn loop_specs() {
    let a = load_loop("builtin:dual-numbers-loop", 3).unwrap();
    let b = load_loop(r#"{"type": "from-algebra", "table": "dual-numbers"}"#, 3).unwrap();
    assert_eq!(a, b);
    let table = dual_numbers().to_json();
    let c = loop_from_json(&serde_json::json!({"type": "from-algebra", "table": table}), 3).unwrap();
    assert_eq!(a, c);
    let mut j = a.to_json(crate::formal::View::Series);
    j["type"] = "components".into();
    assert_eq!(loop_from_json(&j, 3).unwrap(), a);
    assert!(loop_from_json(&j, 5).is_err());
    j["exact"] = true.into();
    assert_eq!(loop_from_json(&j, 5).unwrap().degree(), 5);
    let d = load_loop(r#"{"type": "builtin", "name": "nonlinear-f-loop"}"#, 3).unwrap();
    assert_eq!(d.dim(), 2);
}

#[test]
fn algebra_json_round_trip() {
    let o = split_octonions();
    assert_eq!(AlgebraTable::from_json(&o.to_json()).unwrap(), o);
}
