//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sabinin::catalog::{
    builtin_loop, check_homomorphism, jordan_spin_normalized, loop_from_algebra, nonlinear_loop_f, phi_g_to_f,
    LOOP_NAMES,
};
use sabinin::connection::{adapted_field, connection_from_loop, covariant_derivative, ms_bracket_table, torsion};
use sabinin::dist::{
    brackets_invariance_check, make_similar_product, pbw_span_check, random_distribution, DistBialgebra,
    MultioperatorTable,
};
use sabinin::formal::{check_loop_identity, right_alt_modify, FormalLoop, FormalMap};
use sabinin::free::{
    fa_exp, fa_log, fa_log_by_inversion, multioperator_ms, multioperator_su, p_operation, phi13_closed_form, FaElement,
};
use sabinin::rational::{format_q, q, qf, Q};
use sabinin::sym::{monomials_up_to, SymElement, SymTensor};
use sabinin::trees::{bernoulli_tree_sum, catalan, parse_identity, Identity, LoopWord};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Debug>(e: E) -> String {
    format!("{e:?}")
}

fn series_map(terms: &[(&[u8], i64)], n: usize) -> FormalMap {
    let s = SymElement::from_terms(2, terms.iter().map(|(a, c)| (a.to_vec(), q(*c)))).unwrap();
    FormalMap::from_series(vec![1, 1], n, vec![s]).unwrap()
}

fn series_loop(terms: &[(&[u8], i64)], n: usize) -> FormalLoop {
    FormalLoop::exact(series_map(terms, n)).unwrap()
}

fn bernoulli_trees() -> Outcome {
    for n in 1..=8 {
        let sum = bernoulli_tree_sum(n).map_err(err)?;
        let want = qf(if n % 2 == 1 { 1 } else { -1 }, n as i64);
        ensure(sum == want, || format!("n = {n}: sum {} != {}", format_q(&sum), format_q(&want)))?;
    }
    Ok(format!("n = 1..8, {} trees at n = 8", catalan(7)))
}

fn logarithm() -> Outcome {
    let log = fa_log(8).map_err(err)?;
    let inv = fa_log_by_inversion(8).map_err(err)?;
    ensure(log == inv, || format!("first difference: {}", &log - &inv))?;
    let ctx = log.context().clone();
    let one_plus_x = &FaElement::one(&ctx) + &FaElement::gen(&ctx, 0);
    let e = fa_exp(&log, None).map_err(err)?;
    ensure(e == one_plus_x, || format!("exp(log(1+x)) - (1+x) = {}", &e - &one_plus_x))?;
    Ok(format!("{} tree terms to degree 8", log.len()))
}

fn ms_equals_su() -> Outcome {
    let cases = [
        ("split-octonion-loop", builtin_loop("split-octonion-loop", 4).map_err(err)?),
        ("jordan-k3-loop", builtin_loop("jordan-k3-loop", 5).map_err(err)?),
        ("nonlinear-f-loop", nonlinear_loop_f(5)),
    ];
    let mut compared = 0;
    for (name, f) in cases {
        let b = DistBialgebra::new(f.clone());
        for arity in 2..=f.degree() {
            let ms = ms_bracket_table(&f, arity).map_err(err)?;
            let su = b.bracket_table(arity).map_err(err)?;
            if let Some((x, y)) = ms.first_difference(&su) {
                return Err(format!("{name}, args {:?}: {:?} vs {:?}", x.args, x.value, y.value));
            }
            compared += ms.entries.len();
        }
    }
    Ok(format!("{compared} basis tuples"))
}

fn jordan_p_values() -> Outcome {
    let s = jordan_spin_normalized();
    let g = DistBialgebra::new(loop_from_algebra(&s.algebra, 6));
    let scaled = |v: &[Q], k: i64| v.iter().map(|c| c * q(k)).collect::<Vec<_>>();
    let want = [scaled(&s.b, 2), scaled(&s.e, -8), scaled(&s.a, 24), vec![q(0); 3]];
    for (m, w) in (1..=4).zip(want) {
        let p = g.p_operation(&vec![s.a.clone(); m], std::slice::from_ref(&s.b), &s.b).map_err(err)?;
        ensure(p == w, || format!("m = {m}: {p:?} != {w:?}"))?;
    }
    Ok("2b, -8e, 24a, 0".into())
}

const MOUFANG: &str = "(x1*(x2*(x1*x3))) = (((x1*x2)*x1)*x3)";

fn moufang() -> Outcome {
    let o = builtin_loop("split-octonion-loop", 4).map_err(err)?;
    let id = parse_identity(MOUFANG, 3).map_err(err)?;
    let v = check_loop_identity(&id, &o).map_err(err)?;
    ensure(v.holds, || format!("loop identity fails: {:?}", v.witness))?;
    let b = DistBialgebra::new(o);
    let lin = b.check_linearized_identity(&id, 25, 2024, 0).map_err(err)?;
    ensure(lin.holds, || format!("linearized identity fails: {:?}", lin.witness))?;
    ensure(lin.sample_degree == 3, || format!("sample degree {}", lin.sample_degree))?;
    Ok(format!("loop to degree 4, {} random triples of degree <= 3", lin.samples))
}

fn power(k: usize) -> LoopWord {
    (1..k).fold(LoopWord::var(2), |w, _| LoopWord::mul(w, LoopWord::var(2)))
}

fn right_alternative() -> Outcome {
    let n = 6;
    let f = series_loop(&[(&[1, 0], 1), (&[0, 1], 1), (&[2, 1], 1)], n);
    let (ft, _) = right_alt_modify(&f).map_err(err)?;
    let q2 = ft.map().filter_multidegree(|md| md[1] == 2);
    let expected = series_map(&[(&[1, 2], 1), (&[3, 2], 1)], n);
    ensure(q2 == expected, || format!("q2 = {:?}", q2.series()))?;
    // back-substitution: F + q2 is right alternative through y-degree 2
    let g = series_loop(&[(&[1, 0], 1), (&[0, 1], 1), (&[2, 1], 1), (&[1, 2], 1), (&[3, 2], 1)], n);
    let ra = parse_identity("((x1*x2)*x2) = (x1*(x2*x2))", 2).map_err(err)?;
    let d = sabinin::formal::eval_word(&ra.lhs, &g, 2)
        .and_then(|l| l.try_sub(&sabinin::formal::eval_word(&ra.rhs, &g, 2)?))
        .map_err(err)?;
    ensure(d.filter_multidegree(|md| md[1] <= 2).is_zero(), || "back-substitution leaves y-degree <= 2 terms".into())?;
    let v = check_loop_identity(&ra, &ft).map_err(err)?;
    ensure(v.holds, || format!("F~ is not right alternative: {:?}", v.witness))?;
    let mut pairs = 0;
    for k in 1..=4 {
        for l in 1..=5 - k {
            let lhs = LoopWord::mul(LoopWord::var(1), LoopWord::mul(power(k), power(l)));
            let rhs = LoopWord::mul(LoopWord::mul(LoopWord::var(1), power(k)), power(l));
            let id = Identity { lhs, rhs, nvars: 2 };
            let v = check_loop_identity(&id, &ft).map_err(err)?;
            ensure(v.holds, || format!("x(y^{k} y^{l}) fails: {:?}", v.witness))?;
            pairs += 1;
        }
    }
    Ok(format!("q2 = xy^2 + x^3y^2, right alternative to degree {n}, {pairs} power identities"))
}

fn multioperator() -> Outcome {
    let ms = multioperator_ms(4, (1, 3)).map_err(err)?;
    let closed = phi13_closed_form(ms.context()).map_err(err)?;
    ensure(ms == closed, || format!("recursion {ms} != closed form {closed}"))?;
    let su = multioperator_su(4, (1, 3)).map_err(err)?;
    let ctx = su.context();
    let (a, b) = (FaElement::gen(ctx, 0), FaElement::gen(ctx, 1));
    let p = p_operation(&[a], &[b.clone(), b.clone()], &b).map_err(err)?.scale(&qf(1, 6));
    ensure(su == p, || format!("primitive form {su} != p/6 {p}"))?;
    let ms_in_ctx = FaElement::from_json(ctx, &ms.to_json()).map_err(err)?;
    ensure(ms_in_ctx != su, || "the two multioperators coincide".into())?;
    Ok("recursion matches the closed form and differs from the primitive form".into())
}

fn similarity() -> Outcome {
    let mut checked = 0;
    for f in [builtin_loop("jordan-k3-loop", 4).map_err(err)?, nonlinear_loop_f(4)] {
        let (ft, phi) = right_alt_modify(&f).map_err(err)?;
        let dot = DistBialgebra::new(f);
        let times = DistBialgebra::new(ft);
        let v = brackets_invariance_check(&times, &dot, &phi, 4).map_err(err)?;
        ensure(v.similarity_holds && v.brackets_equal, || format!("{v:?}"))?;
        checked += v.brackets_compared;

        let phi_su = dot.phi_su_table(4).map_err(err)?;
        let same = make_similar_product(&dot, &phi_su).map_err(err)?;
        for ((x, y), val) in &same.table {
            let orig = dot.mul_monomials(x, y).map_err(err)?;
            ensure(*val == *orig, || format!("Phi = Phi^SU changes {x:?} x {y:?}"))?;
        }
        let zero = make_similar_product(&dot, &MultioperatorTable::zero(dot.dim(), 4)).map_err(err)?;
        let new_phi = zero.bialgebra.phi_su_table(4).map_err(err)?;
        ensure(new_phi.is_zero(), || "Phi = 0 leaves a nonzero multioperator".into())?;
        for arity in 2..=4 {
            let a = zero.bialgebra.bracket_table(arity).map_err(err)?;
            let b = dot.bracket_table(arity).map_err(err)?;
            ensure(a == b, || format!("Phi = 0 changes brackets of arity {arity}"))?;
        }
    }
    Ok(format!("{checked} brackets compared, both prescribed multioperators realized"))
}

fn homomorphism() -> Outcome {
    let n = 6;
    let g = builtin_loop("jordan-k3-loop", n).map_err(err)?;
    let f = nonlinear_loop_f(n);
    let v = check_homomorphism(&phi_g_to_f(n), &g, &f).map_err(err)?;
    ensure(v.holds, || format!("{:?}", v.witness))?;
    Ok(format!("holds to degree {}", v.degree))
}

fn tensor_of_products(b: &DistBialgebra, x: &SymTensor, y: &SymTensor) -> Result<SymTensor, String> {
    let mut out = SymTensor::zero(vec![b.dim(), b.dim()]);
    for (kx, cx) in x.iter() {
        for (ky, cy) in y.iter() {
            let l = b.mul_monomials(&kx[0], &ky[0]).map_err(err)?;
            let r = b.mul_monomials(&kx[1], &ky[1]).map_err(err)?;
            out.add_scaled(&SymTensor::pure(&[&*l, &*r]), &(cx * cy));
        }
    }
    Ok(out)
}

type Suite = fn(&[FormalLoop]) -> Result<(), String>;

fn coalgebra_laws(_: &[FormalLoop]) -> Result<(), String> {
    for a in monomials_up_to(3, 4) {
        let x = SymElement::monomial(a);
        let t = x.coproduct();
        ensure(t.split(0, 2).unwrap() == t.split(1, 2).unwrap(), || format!("coassociativity fails on {x}"))?;
        ensure(t.counit_slot(0).unwrap().into_element().unwrap() == x, || format!("left counit fails on {x}"))?;
        ensure(t.counit_slot(1).unwrap().into_element().unwrap() == x, || format!("right counit fails on {x}"))?;
    }
    Ok(())
}

fn product_is_a_coalgebra_morphism(small: &[FormalLoop]) -> Result<(), String> {
    for f in small {
        let b = DistBialgebra::new(f.clone());
        let d = b.dim();
        for key in monomials_up_to(2 * d, 3) {
            let (x, y) = (SymElement::monomial(key[..d].to_vec()), SymElement::monomial(key[d..].to_vec()));
            let prod = b.mul(&x, &y).map_err(err)?;
            ensure(prod.coproduct() == tensor_of_products(&b, &x.coproduct(), &y.coproduct())?, || {
                format!("Delta(xy) != Delta(x)Delta(y) on {key:?}")
            })?;
        }
    }
    Ok(())
}

fn division_laws(small: &[FormalLoop]) -> Result<(), String> {
    let laws = ["(x1\\(x1*x2)) = x2", "(x1*(x1\\x2)) = x2", "((x2*x1)/x1) = x2", "((x2/x1)*x1) = x2"];
    for f in small.iter().chain([&builtin_loop("split-octonion-loop", 4).map_err(err)?]) {
        for law in laws {
            let v = check_loop_identity(&parse_identity(law, 2).map_err(err)?, f).map_err(err)?;
            ensure(v.holds, || format!("{law} fails: {:?}", v.witness))?;
        }
    }
    for f in small {
        let b = DistBialgebra::new(f.clone());
        let d = b.dim();
        for key in monomials_up_to(2 * d, 4) {
            let (a, nu) = (&key[..d], SymElement::monomial(key[d..].to_vec()));
            let eps = if a.iter().all(|&k| k == 0) { q(1) } else { q(0) };
            let want = nu.scale(&eps);
            let mut sums = vec![SymElement::zero(d); 4];
            for (k, c) in SymElement::monomial(a.to_vec()).coproduct().iter() {
                let (m1, m2) = (SymElement::monomial(k[0].clone()), SymElement::monomial(k[1].clone()));
                let terms = [
                    b.ldiv(&m1, &b.mul(&m2, &nu).map_err(err)?).map_err(err)?,
                    b.mul(&m1, &b.ldiv(&m2, &nu).map_err(err)?).map_err(err)?,
                    b.rdiv(&b.mul(&nu, &m1).map_err(err)?, &m2).map_err(err)?,
                    b.mul(&b.rdiv(&nu, &m1).map_err(err)?, &m2).map_err(err)?,
                ];
                for (s, t) in sums.iter_mut().zip(&terms) {
                    s.add_scaled(t, c);
                }
            }
            ensure(sums.iter().all(|s| *s == want), || format!("distribution division law fails on {key:?}"))?;
        }
    }
    Ok(())
}

fn primitive_operations(small: &[FormalLoop]) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for f in small {
        let b = DistBialgebra::new(f.clone());
        let d = b.dim();
        for _ in 0..6 {
            let u = random_distribution(&mut rng, d, 2);
            let v = random_distribution(&mut rng, d, 1);
            for z in 0..d {
                let p = b.p(&u, &v, &b.basis(z)).map_err(err)?;
                ensure(p.is_primitive(), || format!("p({u}, {v}, e{z}) = {p} is not primitive"))?;
            }
        }
        let t3 = b.bracket_table(3).map_err(err)?;
        for e in &t3.entries {
            let swapped = [e.args[0], e.args[2], e.args[1]];
            let other = t3.entries.iter().find(|x| x.args == swapped).expect("full table");
            let neg: Vec<Q> = other.value.iter().map(|c| -c).collect();
            ensure(e.value == neg, || format!("bracket not antisymmetric at {:?}", e.args))?;
        }
        let e = |i: usize| b.basis(i).projection();
        for (i, j, k) in [(0, 1, d - 1), (1, 0, 0), (d - 1, 1, 0)] {
            let x = b.phi_su(&[e(i), e(j)], &[e(k), e(i)]).map_err(err)?;
            let y = b.phi_su(&[e(j), e(i)], &[e(i), e(k)]).map_err(err)?;
            ensure(x == y, || format!("Phi^SU not block symmetric at {i} {j} {k}"))?;
            let x = b.phi_su(&[e(i)], &[e(j), e(k), e(i)]).map_err(err)?;
            let y = b.phi_su(&[e(i)], &[e(k), e(i), e(j)]).map_err(err)?;
            ensure(x == y, || format!("Phi^SU not symmetric in its second block at {i} {j} {k}"))?;
        }
    }
    Ok(())
}

fn connection_laws(small: &[FormalLoop]) -> Result<(), String> {
    for f in small.iter().chain([&builtin_loop("split-octonion-loop", 4).map_err(err)?]) {
        let b = DistBialgebra::new(f.clone());
        let conn = connection_from_loop(f).map_err(err)?;
        let d = f.dim();
        let unit = |i: usize| SymElement::basis(d, i).projection();
        for i in 0..d {
            for j in 0..d {
                let (x, y) =
                    (adapted_field(&conn, &unit(i)).map_err(err)?, adapted_field(&conn, &unit(j)).map_err(err)?);
                let nab = covariant_derivative(&conn, &x, &y).map_err(err)?;
                ensure(nab.is_zero(), || format!("nabla_(e{i}*) e{j}* != 0"))?;
                if d > 3 && (i + j) % 3 != 0 {
                    continue;
                }
                let t = torsion(&conn, &x, &y).map_err(err)?;
                for a in monomials_up_to(d, t.degree()) {
                    let mu = SymElement::monomial(a.clone());
                    let (bx, by) = (b.basis(i), b.basis(j));
                    let lhs = b.mul(&b.mul(&mu, &by).map_err(err)?, &bx).map_err(err)?;
                    let rhs = b.mul(&b.mul(&mu, &bx).map_err(err)?, &by).map_err(err)?;
                    ensure(*t.value(&a) == (&lhs - &rhs).projection(), || format!("torsion formula fails at {a:?}"))?;
                }
            }
        }
    }
    Ok(())
}

fn pbw_spans(_: &[FormalLoop]) -> Result<(), String> {
    for name in LOOP_NAMES {
        let f = builtin_loop(name, 4).map_err(err)?;
        if f.dim() > 3 {
            continue;
        }
        let v = pbw_span_check(&DistBialgebra::new(f), 4).map_err(err)?;
        ensure(v.full_rank, || format!("{name}: PBW rank deficient {:?}", v.rows))?;
    }
    Ok(())
}

fn structural() -> Outcome {
    let small: Vec<FormalLoop> = vec![
        builtin_loop("jordan-k3-loop", 4).map_err(err)?,
        nonlinear_loop_f(4),
        builtin_loop("assoc-2x2-uppertriangular-loop", 4).map_err(err)?,
    ];
    let suites: [(&str, Suite); 6] = [
        ("coalgebra laws", coalgebra_laws),
        ("product is a coalgebra morphism", product_is_a_coalgebra_morphism),
        ("division laws", division_laws),
        ("primitive operations", primitive_operations),
        ("connection laws", connection_laws),
        ("PBW spans", pbw_spans),
    ];
    for (label, suite) in suites {
        suite(&small).map_err(|e| format!("{label}: {e}"))?;
    }
    Ok(format!("{} suites", suites.len()))
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Bernoulli tree sums", limit: Some(Duration::from_secs(1)), run: bernoulli_trees },
        Criterion {
            id: 2,
            name: "logarithm by trees and by inversion",
            limit: Some(Duration::from_secs(30)),
            run: logarithm,
        },
        Criterion {
            id: 3,
            name: "connection brackets equal primitive brackets",
            limit: Some(Duration::from_secs(120)),
            run: ms_equals_su,
        },
        Criterion { id: 4, name: "Jordan p-values", limit: None, run: jordan_p_values },
        Criterion { id: 5, name: "Moufang on split octonions", limit: None, run: moufang },
        Criterion { id: 6, name: "right alternative modification", limit: None, run: right_alternative },
        Criterion { id: 7, name: "multioperator (1, 3)", limit: None, run: multioperator },
        Criterion { id: 8, name: "similarity invariance", limit: None, run: similarity },
        Criterion { id: 9, name: "homomorphism G -> F", limit: None, run: homomorphism },
        Criterion { id: 10, name: "structural suites", limit: Some(Duration::from_secs(300)), run: structural },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {}: {detail} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {}: {why} ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
