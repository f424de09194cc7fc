use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::trees::PlaneTree;

/// A non-associative monomial: a binary tree with generator-labelled leaves,
/// or the empty monomial `1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mono(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    One,
    Gen(u8),
    Mul(Arc<Node>),
}

#[derive(PartialEq, Eq, Hash)]
struct Node {
    left: Mono,
    right: Mono,
    degree: usize,
}

impl Mono {
    pub fn one() -> Self {
        Mono(Repr::One)
    }

    pub fn gen(i: usize) -> Self {
        Mono(Repr::Gen(u8::try_from(i).expect("generator index fits in u8")))
    }

    /// Tree grafting; `1` is a two-sided unit.
    pub fn mul(a: &Mono, b: &Mono) -> Mono {
        match (&a.0, &b.0) {
            (Repr::One, _) => b.clone(),
            (_, Repr::One) => a.clone(),
            _ => Mono(Repr::Mul(Arc::new(Node { left: a.clone(), right: b.clone(), degree: a.degree() + b.degree() }))),
        }
    }

    pub fn degree(&self) -> usize {
        match &self.0 {
            Repr::One => 0,
            Repr::Gen(_) => 1,
            Repr::Mul(n) => n.degree,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::One)
    }

    pub fn as_gen(&self) -> Option<usize> {
        match self.0 {
            Repr::Gen(i) => Some(i as usize),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Mono, &Mono)> {
        match &self.0 {
            Repr::Mul(n) => Some((&n.left, &n.right)),
            _ => None,
        }
    }

    /// Generator indices of the leaves, left to right.
    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match &self.0 {
            Repr::One => {}
            Repr::Gen(i) => out.push(*i as usize),
            Repr::Mul(n) => {
                n.left.collect_leaves(out);
                n.right.collect_leaves(out);
            }
        }
    }

    /// Number of leaves labelled by each generator.
    pub fn multidegree(&self, gens: usize) -> Vec<usize> {
        let mut out = vec![0; gens];
        for i in self.leaves() {
            out[i] += 1;
        }
        out
    }

    /// Left-normed product `((g_1 g_2) ...) g_k` of generators.
    pub fn left_normed(gens: &[usize]) -> Mono {
        gens.iter().fold(Mono::one(), |acc, &g| Mono::mul(&acc, &Mono::gen(g)))
    }

    pub fn from_tree(t: &PlaneTree, gen: usize) -> Mono {
        match t {
            PlaneTree::Leaf => Mono::gen(gen),
            PlaneTree::Node(l, r) => Mono::mul(&Mono::from_tree(l, gen), &Mono::from_tree(r, gen)),
        }
    }

    /// The underlying shape; `None` for `1`.
    pub fn shape(&self) -> Option<PlaneTree> {
        match &self.0 {
            Repr::One => None,
            Repr::Gen(_) => Some(PlaneTree::Leaf),
            Repr::Mul(n) => Some(PlaneTree::node(n.left.shape()?, n.right.shape()?)),
        }
    }

    pub fn format_with(&self, names: &[String]) -> String {
        match &self.0 {
            Repr::One => "1".into(),
            Repr::Gen(i) => names.get(*i as usize).cloned().unwrap_or_else(|| format!("g{i}")),
            Repr::Mul(n) => format!("({} {})", n.left.format_with(names), n.right.format_with(names)),
        }
    }

    /// Parses the format produced by [`Mono::format_with`].
    pub fn parse_with(src: &str, names: &[String]) -> Result<Mono> {
        let chars: Vec<char> = src.chars().collect();
        let mut pos = 0;
        let m = parse_rec(&chars, &mut pos, names)?;
        skip_ws(&chars, &mut pos);
        if pos != chars.len() {
            return Err(Error::Syntax { offset: pos, message: "trailing input".into() });
        }
        Ok(m)
    }

    fn structural_cmp(&self, other: &Mono) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::One, Repr::One) => Ordering::Equal,
            (Repr::One, _) => Ordering::Less,
            (_, Repr::One) => Ordering::Greater,
            (Repr::Gen(a), Repr::Gen(b)) => a.cmp(b),
            (Repr::Gen(_), _) => Ordering::Less,
            (_, Repr::Gen(_)) => Ordering::Greater,
            (Repr::Mul(a), Repr::Mul(b)) => {
                if Arc::ptr_eq(a, b) {
                    return Ordering::Equal;
                }
                a.left.cmp(&b.left).then_with(|| a.right.cmp(&b.right))
            }
        }
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_rec(chars: &[char], pos: &mut usize, names: &[String]) -> Result<Mono> {
    skip_ws(chars, pos);
    match chars.get(*pos) {
        Some('(') => {
            *pos += 1;
            let l = parse_rec(chars, pos, names)?;
            let r = parse_rec(chars, pos, names)?;
            skip_ws(chars, pos);
            if chars.get(*pos) != Some(&')') {
                return Err(Error::Syntax { offset: *pos, message: "expected `)`".into() });
            }
            *pos += 1;
            if l.is_one() || r.is_one() {
                return Err(Error::Syntax { offset: *pos, message: "`1` cannot be a factor".into() });
            }
            Ok(Mono::mul(&l, &r))
        }
        Some(c) if c.is_alphanumeric() || *c == '_' => {
            let start = *pos;
            while *pos < chars.len() && (chars[*pos].is_alphanumeric() || chars[*pos] == '_') {
                *pos += 1;
            }
            let name: String = chars[start..*pos].iter().collect();
            if name == "1" {
                return Ok(Mono::one());
            }
            names.iter().position(|n| *n == name).map(Mono::gen).ok_or(Error::UnknownIdentifier { offset: start, name })
        }
        _ => Err(Error::Syntax { offset: *pos, message: "expected a generator or `(`".into() }),
    }
}

/// Monomials are ordered by degree first, then structurally.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.structural_cmp(other))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with(&[]))
    }
}
