use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A rooted binary plane tree, i.e. the shape of a non-associative monomial
/// in one letter. The degree is the number of leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneTree {
    Leaf,
    Node(Box<PlaneTree>, Box<PlaneTree>),
}

impl PlaneTree {
    pub fn node(left: PlaneTree, right: PlaneTree) -> Self {
        PlaneTree::Node(Box::new(left), Box::new(right))
    }

    pub fn degree(&self) -> usize {
        match self {
            PlaneTree::Leaf => 1,
            PlaneTree::Node(l, r) => l.degree() + r.degree(),
        }
    }

    /// Splits `((x t1) t2) ... tk` into `[t1, ..., tk]`. A leaf yields an empty comb.
    pub fn left_comb(&self) -> Vec<&PlaneTree> {
        let mut teeth = Vec::new();
        let mut cur = self;
        while let PlaneTree::Node(l, r) = cur {
            teeth.push(r.as_ref());
            cur = l;
        }
        teeth.reverse();
        teeth
    }

    /// Canonical fully parenthesized encoding, e.g. `((xx)x)`.
    pub fn encode(&self) -> String {
        let mut s = String::new();
        self.write_into(&mut s);
        s
    }

    fn write_into(&self, s: &mut String) {
        match self {
            PlaneTree::Leaf => s.push('x'),
            PlaneTree::Node(l, r) => {
                s.push('(');
                l.write_into(s);
                r.write_into(s);
                s.push(')');
            }
        }
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encode())
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let t = parse_tree(bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(Error::Syntax { offset: pos, message: "trailing input".into() });
        }
        Ok(t)
    }
}

fn parse_tree(b: &[u8], pos: &mut usize) -> Result<PlaneTree> {
    match b.get(*pos) {
        Some(b'x') => {
            *pos += 1;
            Ok(PlaneTree::Leaf)
        }
        Some(b'(') => {
            *pos += 1;
            let l = parse_tree(b, pos)?;
            let r = parse_tree(b, pos)?;
            if b.get(*pos) != Some(&b')') {
                return Err(Error::Syntax { offset: *pos, message: "expected `)`".into() });
            }
            *pos += 1;
            Ok(PlaneTree::node(l, r))
        }
        _ => Err(Error::Syntax { offset: *pos, message: "expected `x` or `(`".into() }),
    }
}

/// All binary plane trees with `n` leaves, sorted by canonical encoding.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlaneTree>> {
    if n == 0 {
        return Err(Error::InvalidArgument("trees have at least one leaf".into()));
    }
    let mut by_degree: Vec<Vec<PlaneTree>> = vec![Vec::new(), vec![PlaneTree::Leaf]];
    for m in 2..=n {
        let mut layer = Vec::new();
        for i in 1..m {
            for l in &by_degree[i] {
                for r in &by_degree[m - i] {
                    layer.push(PlaneTree::node(l.clone(), r.clone()));
                }
            }
        }
        by_degree.push(layer);
    }
    let mut out = by_degree.swap_remove(n);
    out.sort_by_cached_key(|t| t.encode());
    Ok(out)
}
