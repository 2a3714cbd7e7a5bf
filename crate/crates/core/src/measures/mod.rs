//! Exactly computable side results: spanning trees and effective resistance,
//! the random-cluster measure and its limits, and planar duality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::EdgeSet;

mod cluster;
mod dual;
mod tree;

pub use cluster::{rc_exact, rc_limit_distance, rc_na_check, LimitTarget, RCParams, RCResult, RcNaResult, RC_EDGE_BUDGET};
pub use dual::{connected_spanning_count, dual_complement_check, DualCheck, DualSpec};
pub use tree::{
    contract, effective_resistance, rayleigh_check, spanning_tree_count, tree_na_check, RayleighResult, TreeNaResult,
};

pub type Rational = BigRational;

/// An undirected multigraph on vertices `1..=m`. Loops and repeated edges are
/// allowed; edges are identified by their position in the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    m: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(m: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGraph("a multigraph needs at least one vertex".into()));
        }
        for &(u, v) in &edges {
            for w in [u, v] {
                if w == 0 || w > m {
                    return Err(Error::VertexOutOfRange { vertex: w, n: m });
                }
            }
        }
        Ok(Multigraph { m, edges })
    }

    /// The simple graph `edges` on all `n` vertices, edges in rank order.
    pub fn from_edge_set(edges: EdgeSet) -> Self {
        Multigraph {
            m: edges.n(),
            edges: edges.edges().map(|e| (e.x(), e.y())).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_loop(&self, index: usize) -> bool {
        let (u, v) = self.edges[index];
        u == v
    }

    pub(crate) fn edge(&self, index: usize) -> Result<(usize, usize)> {
        self.edges
            .get(index)
            .copied()
            .ok_or_else(|| Error::InvalidGraph(format!("edge index {index} out of range")))
    }

    /// Component count of the spanning subgraph made of the edges in `mask`.
    pub(crate) fn components_of(&self, mask: u64) -> usize {
        let mut parent: Vec<usize> = (0..self.m).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut k = self.m;
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                let (a, b) = (find(&mut parent, u - 1), find(&mut parent, v - 1));
                if a != b {
                    parent[a] = b;
                    k -= 1;
                }
            }
        }
        k
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.m).collect();
        let mut k = self.m;
        for &(u, v) in &self.edges {
            let mut a = u - 1;
            while parent[a] != a {
                a = parent[a];
            }
            let mut b = v - 1;
            while parent[b] != b {
                b = parent[b];
            }
            if a != b {
                parent[a] = b;
                k -= 1;
            }
        }
        k
    }

    /// Merges vertex `y` into `x` and renumbers the rest compactly. Edges keep
    /// their positions; edges between `x` and `y` become loops. Returns the
    /// vertex map old label -> new label.
    pub fn identify(&self, x: usize, y: usize) -> Result<(Multigraph, Vec<usize>)> {
        for w in [x, y] {
            if w == 0 || w > self.m {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.m });
            }
        }
        if x == y {
            return Err(Error::InvalidGraph("cannot identify a vertex with itself".into()));
        }
        let (keep, gone) = (x.min(y), x.max(y));
        let map: Vec<usize> = (0..=self.m)
            .map(|v| match v {
                v if v == gone => keep,
                v if v > gone => v - 1,
                v => v,
            })
            .collect();
        let edges = self.edges.iter().map(|&(u, v)| (map[u], map[v])).collect();
        Ok((Multigraph { m: self.m - 1, edges }, map))
    }

    /// Parses the text format: a header `m=<int> edges=<int>` followed by one
    /// `u v` line per edge. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header line".into()))?;
        let (mut m, mut count) = (None, None);
        for field in header.split_whitespace() {
            let (name, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {field:?}")))?;
            let value: usize = value
                .parse()
                .map_err(|_| Error::Parse(format!("bad header value {field:?}")))?;
            match name {
                "m" => m = Some(value),
                "edges" => count = Some(value),
                _ => return Err(Error::Parse(format!("unknown header field {name:?}"))),
            }
        }
        let (m, count) = match (m, count) {
            (Some(m), Some(c)) => (m, c),
            _ => return Err(Error::Parse("header needs m=<int> and edges=<int>".into())),
        };
        let mut edges = Vec::with_capacity(count);
        for line in lines {
            let mut parts = line.split_whitespace();
            let mut next = || -> Result<usize> {
                parts
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))
            };
            let (u, v) = (next()?, next()?);
            if parts.next().is_some() {
                return Err(Error::Parse(format!("bad edge line {line:?}")));
            }
            edges.push((u, v));
        }
        if edges.len() != count {
            return Err(Error::Parse(format!("header announces {count} edges, found {}", edges.len())));
        }
        Multigraph::new(m, edges)
    }

    /// Converts to a simple graph, rejecting loops and repeated edges.
    pub fn to_edge_set(&self) -> Result<EdgeSet> {
        let pairs: Vec<(usize, usize)> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        if pairs.iter().any(|&(u, v)| u == v) {
            return Err(Error::InvalidGraph("simple graph expected, found a loop".into()));
        }
        let set = EdgeSet::from_pairs(self.m, &pairs)?;
        if set.len() != pairs.len() {
            return Err(Error::InvalidGraph("simple graph expected, found a repeated edge".into()));
        }
        Ok(set)
    }
}

impl FromStr for Multigraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Multigraph::parse(s)
    }
}

impl fmt::Display for Multigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "m={} edges={}", self.m, self.edges.len())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Parses an exact rational: `a/b`, a decimal like `0.25`, or scientific
/// notation like `1e-4`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    let t = text.trim();
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(Rational::new(num, den));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty()
        || !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let int: BigInt = format!("0{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(int);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

pub(crate) fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn rational_pow(base: &Rational, exp: usize) -> Rational {
    let mut out = Rational::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("1e-4").unwrap(), q(1, 10_000));
        assert_eq!(parse_rational("2.5E1").unwrap(), q(25, 1));
        assert_eq!(parse_rational("-3").unwrap(), q(-3, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        for bad in ["", "1/0", "abc", "1e", "1.2.3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn text_format_round_trip() {
        let g = Multigraph::parse("m=2 edges=3\n1 2\n1 2\n# parallel\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 2), (2, 1)]);
        assert_eq!(Multigraph::parse(&g.to_string()).unwrap(), g);
        assert!(Multigraph::parse("m=2 edges=2\n1 2\n").is_err());
        assert!(Multigraph::parse("m=2 edges=1\n1 3\n").is_err());
        assert!(Multigraph::parse("edges=1\n1 2\n").is_err());
        assert!(Multigraph::parse("m=2 edges=1\n1 2 3\n").is_err());
    }

    #[test]
    fn simple_conversion() {
        let k3 = Multigraph::parse("m=3 edges=3\n1 2\n3 1\n2 3\n").unwrap();
        assert_eq!(k3.to_edge_set().unwrap(), EdgeSet::complete(3));
        assert!(Multigraph::new(2, vec![(1, 2), (2, 1)]).unwrap().to_edge_set().is_err());
        assert!(Multigraph::new(2, vec![(1, 1)]).unwrap().to_edge_set().is_err());
    }

    #[test]
    fn identify_vertices() {
        let path = Multigraph::new(3, vec![(1, 2), (2, 3)]).unwrap();
        let (merged, map) = path.identify(3, 1).unwrap();
        assert_eq!(merged.m(), 2);
        assert_eq!(merged.edges(), &[(1, 2), (2, 1)]);
        assert_eq!(map[3], 1);
        assert!(path.is_connected());
        assert!(!Multigraph::new(3, vec![(1, 2)]).unwrap().is_connected());
    }
}
