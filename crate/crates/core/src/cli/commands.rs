use serde_json::json;

use super::format::{map_series, vector};
use super::{Method, Mode, Report, RunConfig};
use crate::catalog::load_loop;
use crate::connection::ms_bracket_table;
use crate::dist::{BracketTable, DistBialgebra};
use crate::error::{Error, Result};
use crate::formal::{check_loop_identity, right_alt_modify, FormalLoop, View};
use crate::free::{
    fa_exp, fa_log, fa_log_by_inversion, multioperator_ms, multioperator_su, p_operation, phi13_closed_form, FaElement,
};
use crate::rational::{format_q, q, qf};
use crate::sym::graded_dimension;
use crate::trees::{bernoulli_tree_sum, catalan, enumerate_trees, parse_identity, tree_stats, Identity};

/// Dense size of a loop table: monomials of degree `<= n` in `2d` variables, times `d`.
pub fn dense_size(d: usize, n: usize) -> u64 {
    (0..=n).map(|i| graded_dimension(2 * d, i)).sum::<u64>() * d as u64
}

fn load(cfg: &RunConfig) -> Result<FormalLoop> {
    let spec = cfg.loop_spec.as_deref().ok_or_else(|| Error::InvalidArgument("this command needs --loop".into()))?;
    let d = load_loop(spec, 1)?.dim();
    let size = dense_size(d, cfg.degree);
    if size > cfg.memory_cap {
        return Err(Error::InvalidArgument(format!(
            "a degree-{} table in dimension {d} has {size} entries, over the memory cap {}",
            cfg.degree, cfg.memory_cap
        )));
    }
    load_loop(spec, cfg.degree)
}

/// Parses an identity and sets its arity to the largest variable used.
pub fn parse_loop_identity(text: &str) -> Result<Identity> {
    let id = parse_identity(text, 64)?;
    let nvars = id.lhs.max_var().max(id.rhs.max_var());
    Ok(Identity { nvars, ..id })
}

pub fn verify_identity(cfg: &RunConfig, text: &str, mode: Mode, exhaustive_degree: usize) -> Result<Report> {
    let id = parse_loop_identity(text)?;
    let f = load(cfg)?;
    let mut lines = vec![format!("identity: {id}"), format!("loop: dimension {}, degree {}", f.dim(), f.degree())];
    match mode {
        Mode::Loop => {
            let v = check_loop_identity(&id, &f)?;
            match &v.witness {
                None => lines.push(format!("holds to degree {}", v.degree)),
                Some(w) => {
                    lines.push(format!("fails at multidegree {:?}", w.multidegree));
                    lines.push(format!("  monomials {:?}", w.monomials));
                    lines.push(format!("  series difference {}", vector(&w.difference_series)));
                    lines.push(format!("  distribution difference {}", vector(&w.difference)));
                }
            }
            Ok(Report {
                pass: v.holds,
                result: json!({ "mode": mode, "identity": id.to_string(), "verdict": v }),
                text: lines,
            })
        }
        Mode::Bialgebra => {
            let b = DistBialgebra::new(f);
            let v = b.check_linearized_identity(&id, cfg.samples, cfg.seed, exhaustive_degree)?;
            lines.push(format!(
                "linearized: {} samples of degree {} (seed {}), {} basis tuples to degree {}",
                v.samples, v.sample_degree, v.seed, v.tuples_checked, v.exhaustive_degree
            ));
            match &v.witness {
                None => lines.push("holds on every tuple".into()),
                Some(w) => {
                    lines.push(format!("fails on {}", w.source));
                    for (i, a) in w.args.iter().enumerate() {
                        lines.push(format!("  x{} = {a}", i + 1));
                    }
                    lines.push(format!("  difference {}", w.difference));
                }
            }
            Ok(Report {
                pass: v.holds,
                result: json!({ "mode": mode, "identity": id.to_string(), "verdict": v }),
                text: lines,
            })
        }
    }
}

fn bracket_lines(label: &str, t: &BracketTable) -> Vec<String> {
    let nonzero: Vec<_> = t.entries.iter().filter(|e| e.value.iter().any(|c| *c != q(0))).collect();
    let mut out = vec![format!("{label}: {} entries, {} nonzero", t.entries.len(), nonzero.len())];
    for e in nonzero {
        let m = e.args.len();
        let xs: Vec<String> = e.args[..m - 2].iter().map(|i| format!("e{}", i + 1)).collect();
        out.push(format!(
            "  <{}; e{}, e{}> = {}",
            xs.join(", "),
            e.args[m - 2] + 1,
            e.args[m - 1] + 1,
            vector(&e.value)
        ));
    }
    out
}

pub fn brackets(cfg: &RunConfig, arity: usize, method: Method) -> Result<Report> {
    if arity + 2 > cfg.degree {
        return Err(Error::DegreeOverflow { requested: arity + 2, limit: cfg.degree });
    }
    let f = load(cfg)?;
    let mut lines = vec![format!("brackets with {arity} leading arguments on a loop of dimension {}", f.dim())];
    let mut result = serde_json::Map::new();
    result.insert("arity".into(), json!(arity));
    let su = match method {
        Method::Su | Method::Both => Some(DistBialgebra::new(f.clone()).bracket_table(arity + 2)?),
        Method::Ms => None,
    };
    let ms = match method {
        Method::Ms | Method::Both => Some(ms_bracket_table(&f, arity + 2)?),
        Method::Su => None,
    };
    let mut pass = true;
    if let Some(t) = &su {
        lines.extend(bracket_lines("primitive elements", t));
        result.insert("su".into(), t.to_json());
    }
    if let Some(t) = &ms {
        lines.extend(bracket_lines("torsion derivatives", t));
        result.insert("ms".into(), t.to_json());
    }
    if let (Some(a), Some(b)) = (&su, &ms) {
        pass = a == b;
        lines.push(format!("equal: {pass}"));
        result.insert("equal".into(), json!(pass));
        if let Some((x, y)) = a.first_difference(b) {
            result.insert("witness".into(), json!({ "su": x, "ms": y }));
        }
    }
    Ok(Report { pass, result: serde_json::Value::Object(result), text: lines })
}

pub fn explog(cfg: &RunConfig, check: bool) -> Result<Report> {
    let n = cfg.degree;
    let mut rows = Vec::new();
    let mut lines = vec![format!("log(1 + x) to degree {n}, coefficient of each tree")];
    for d in 1..=n {
        for t in enumerate_trees(d)? {
            let (b, fact) = tree_stats(&t);
            let c = b / crate::rational::Q::from_integer(fact);
            lines.push(format!("  {:<w$} {}", t.encode(), format_q(&c), w = 2 * n + 2));
            rows.push(json!({ "tree": t.encode(), "degree": d, "coefficient": format_q(&c) }));
        }
    }
    let mut result = json!({ "degree": n, "coefficients": rows });
    let mut pass = true;
    if check {
        let log = fa_log(n)?;
        let inverted = fa_log_by_inversion(n)?;
        let agree = log == inverted;
        let ctx = log.context().clone();
        let one_plus_x = &FaElement::one(&ctx) + &FaElement::gen(&ctx, 0);
        let round_trip = fa_exp(&log, None)? == one_plus_x;
        pass = agree && round_trip;
        lines.push(format!("log agrees with the inverse of exp: {}", ok(agree)));
        lines.push(format!("exp(log(1+x)) = 1+x: {}", ok(round_trip)));
        result["inversion_agrees"] = json!(agree);
        result["exp_log_identity"] = json!(round_trip);
    }
    Ok(Report { pass, result, text: lines })
}

fn ok(b: bool) -> &'static str {
    if b {
        "OK"
    } else {
        "FAILED"
    }
}

pub fn bernoulli(max_degree: usize) -> Result<Report> {
    let mut rows = Vec::new();
    let mut lines = vec![format!("{:>3} {:>6} {:>12} {:>12}  check", "n", "trees", "sum", "expected")];
    let mut pass = true;
    for n in 1..=max_degree {
        let sum = bernoulli_tree_sum(n)?;
        let sign = if n % 2 == 1 { 1 } else { -1 };
        let expected = qf(sign, n as i64);
        let good = sum == expected;
        pass &= good;
        let trees = catalan(n - 1);
        lines.push(format!("{n:>3} {trees:>6} {:>12} {:>12}  {}", format_q(&sum), format_q(&expected), ok(good)));
        rows.push(json!({
            "n": n,
            "trees": trees.to_string(),
            "sum": format_q(&sum),
            "expected": format_q(&expected),
            "pass": good,
        }));
    }
    Ok(Report { pass, result: json!({ "rows": rows }), text: lines })
}

pub fn raltify(cfg: &RunConfig) -> Result<Report> {
    let f = load(cfg)?;
    let (ft, phi) = right_alt_modify(&f)?;
    let mut lines = vec![format!("right alternative modification to degree {}", f.degree())];
    let mut parts = Vec::new();
    for k in 2..=f.degree() {
        let q_k = ft.map().filter_multidegree(|md| md[1] == k);
        let text = map_series(&q_k);
        lines.push(format!("  q_{k} = {}", text.join(", ")));
        parts.push(json!({ "y_degree": k, "series": text }));
    }
    let ra = parse_loop_identity("((x1*x2)*x2) = (x1*(x2*x2))")?;
    let verdict = check_loop_identity(&ra, &ft)?;
    lines.push(format!("modified loop: {}", map_series(ft.map()).join(", ")));
    lines.push(format!("similarity: {}", map_series(phi.map()).join(", ")));
    lines.push(format!("right alternative: {}", ok(verdict.holds)));
    Ok(Report {
        pass: verdict.holds,
        result: json!({
            "corrections": parts,
            "loop": ft.to_json(View::Series),
            "similarity": phi.map().to_json(View::Series),
            "right_alternative": verdict,
        }),
        text: lines,
    })
}

pub fn multioperator(cfg: &RunConfig, bidegree: (usize, usize), method: Method) -> Result<Report> {
    let (i, j) = bidegree;
    if i < 1 || j < 2 {
        return Err(Error::InvalidArgument(format!("the multioperator needs i >= 1 and j >= 2, got ({i}, {j})")));
    }
    let mut lines = vec![format!("multioperator component ({i}, {j}) in the free loop on α, β")];
    let mut result = serde_json::Map::new();
    result.insert("bidegree".into(), json!([i, j]));
    let mut pass = true;
    let ms = match method {
        Method::Ms | Method::Both => Some(multioperator_ms(cfg.degree, bidegree)?),
        Method::Su => None,
    };
    let su = match method {
        Method::Su | Method::Both => Some(multioperator_su(cfg.degree, bidegree)?),
        Method::Ms => None,
    };
    if let Some(m) = &ms {
        lines.push(format!("recursive: {}", m.format()));
        result.insert("ms".into(), m.to_json());
        if bidegree == (1, 3) {
            let closed = phi13_closed_form(m.context())?;
            let good = *m == closed;
            pass &= good;
            lines.push(format!("  = -(1/12)[β, (α, β, β)] - (1/6)p(α; β, β; β): {}", ok(good)));
            result.insert("ms_closed_form".into(), json!(good));
        }
    }
    if let Some(s) = &su {
        lines.push(format!("primitive: {}", s.format()));
        result.insert("su".into(), s.to_json());
        if bidegree == (1, 2) {
            let ctx = s.context();
            let (a, b) = (FaElement::gen(ctx, 0), FaElement::gen(ctx, 1));
            let closed = p_operation(&[a], std::slice::from_ref(&b), &b)?.scale(&qf(1, 2));
            let good = *s == closed;
            pass &= good;
            lines.push(format!("  = p(α; β; β)/2: {}", ok(good)));
            result.insert("su_closed_form".into(), json!(good));
        }
    }
    if let (Some(m), Some(s)) = (&ms, &su) {
        let diff = m - s;
        lines.push(format!("equal: {}", diff.is_zero()));
        if !diff.is_zero() {
            lines.push(format!("difference: {}", diff.format()));
        }
        result.insert("equal".into(), json!(diff.is_zero()));
        result.insert("difference".into(), diff.to_json());
    }
    Ok(Report { pass, result: serde_json::Value::Object(result), text: lines })
}
