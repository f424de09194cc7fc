use num_traits::{One, Zero};

use crate::formal::FormalMap;
use crate::rational::{format_q, Q};
use crate::sym::{degree, SymElement};

/// Variable names for a map: `x, y` when each slot is one-dimensional, else `x1, ..., y1, ...`.
pub fn variable_names(arg_dims: &[usize]) -> Vec<String> {
    const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
    let mut out = Vec::new();
    for (s, &d) in arg_dims.iter().enumerate() {
        let letter = LETTERS.get(s).map(|l| l.to_string()).unwrap_or_else(|| format!("s{s}_"));
        if d == 1 {
            out.push(letter);
        } else {
            out.extend((1..=d).map(|i| format!("{letter}{i}")));
        }
    }
    out
}

/// `2*x*y^2 - 1/3*x^3`, terms by degree then exponent.
pub fn polynomial(s: &SymElement, names: &[String]) -> String {
    let mut terms: Vec<(&Vec<u8>, &Q)> = s.iter().collect();
    terms.sort_by_key(|(a, _)| (degree(a), std::cmp::Reverse((*a).clone())));
    let mut out = String::new();
    for (a, c) in terms {
        let factors: Vec<String> = a
            .iter()
            .zip(names)
            .filter(|(k, _)| **k > 0)
            .map(|(k, n)| if *k == 1 { n.clone() } else { format!("{n}^{k}") })
            .collect();
        let neg = *c < Q::zero();
        let mag = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if factors.is_empty() {
            out.push_str(&format_q(&mag));
        } else {
            if !mag.is_one() {
                out.push_str(&format_q(&mag));
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Series coordinates of a map, one polynomial per output coordinate.
pub fn map_series(m: &FormalMap) -> Vec<String> {
    let names = variable_names(m.arg_dims());
    m.series().iter().map(|s| polynomial(s, &names)).collect()
}

pub fn vector(v: &[Q]) -> String {
    format!("({})", v.iter().map(format_q).collect::<Vec<_>>().join(", "))
}
