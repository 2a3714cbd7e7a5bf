use num_traits::{One, Signed, Zero};

use super::{rational_pow, spanning_tree_count, Multigraph, Rational};
use crate::counting::{weighted_sum, CountingProblem, Property, WeightVector};
use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// Largest edge count for exact random-cluster evaluation.
pub const RC_EDGE_BUDGET: usize = 20;

/// Parameters `0 <= p <= 1`, `q > 0` of the random-cluster measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCParams {
    p: Rational,
    q: Rational,
}

impl RCParams {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        if p.is_negative() || p > Rational::one() {
            return Err(Error::InvalidParams(format!("p = {p} must lie in [0, 1]")));
        }
        if !q.is_positive() {
            return Err(Error::InvalidParams(format!("q = {q} must be positive")));
        }
        Ok(RCParams { p, q })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }
}

/// Configuration counts by (open edges, components), optionally split by
/// which edges and edge pairs are open.
struct Tally {
    edges: usize,
    vertices: usize,
    by_class: Vec<u64>,
    by_edge: Vec<u64>,
    by_pair: Vec<u64>,
}

impl Tally {
    fn class(&self, s: usize, k: usize) -> usize {
        s * (self.vertices + 1) + k
    }

    fn build(g: &Multigraph, with_edges: bool) -> Result<Tally> {
        let m = g.edge_count();
        if m > RC_EDGE_BUDGET {
            return Err(Error::Budget { free: m, limit: RC_EDGE_BUDGET });
        }
        let classes = (m + 1) * (g.m() + 1);
        let mut t = Tally {
            edges: m,
            vertices: g.m(),
            by_class: vec![0; classes],
            by_edge: vec![0; if with_edges { m * classes } else { 0 }],
            by_pair: vec![0; if with_edges { m * m * classes } else { 0 }],
        };
        for mask in 0u64..1 << m {
            let c = t.class(mask.count_ones() as usize, g.components_of(mask));
            t.by_class[c] += 1;
            if with_edges {
                let open: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
                for (a, &i) in open.iter().enumerate() {
                    t.by_edge[i * classes + c] += 1;
                    for &j in &open[a + 1..] {
                        t.by_pair[(i * m + j) * classes + c] += 1;
                    }
                }
            }
        }
        Ok(t)
    }

    /// `w(s, k) = p^s (1-p)^(m-s) q^k` for every class.
    fn weights(&self, params: &RCParams) -> Vec<Rational> {
        let closed = Rational::one() - params.p();
        let mut out = vec![Rational::zero(); self.by_class.len()];
        for s in 0..=self.edges {
            let base = rational_pow(params.p(), s) * rational_pow(&closed, self.edges - s);
            for k in 1..=self.vertices {
                out[self.class(s, k)] = &base * rational_pow(params.q(), k);
            }
        }
        out
    }

    fn weigh(counts: &[u64], weights: &[Rational]) -> Rational {
        counts
            .iter()
            .zip(weights)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, w)| w * Rational::from_integer(c.into()))
            .sum()
    }
}

/// Exact partition function, edge marginals and pairwise open probabilities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RCResult {
    pub z: Rational,
    pub marginals: Vec<Rational>,
    /// `pairs[e][f]` = probability that both are open; the diagonal holds marginals.
    pub pairs: Vec<Vec<Rational>>,
}

pub fn rc_exact(g: &Multigraph, params: &RCParams) -> Result<RCResult> {
    let tally = Tally::build(g, true)?;
    let weights = tally.weights(params);
    let classes = weights.len();
    let m = tally.edges;
    let z = Tally::weigh(&tally.by_class, &weights);
    let marginals: Vec<Rational> = (0..m)
        .map(|i| Tally::weigh(&tally.by_edge[i * classes..(i + 1) * classes], &weights) / &z)
        .collect();
    let mut pairs = vec![vec![Rational::zero(); m]; m];
    for i in 0..m {
        pairs[i][i] = marginals[i].clone();
        for j in i + 1..m {
            let start = (i * m + j) * classes;
            let joint = Tally::weigh(&tally.by_pair[start..start + classes], &weights) / &z;
            pairs[i][j] = joint.clone();
            pairs[j][i] = joint;
        }
    }
    Ok(RCResult { z, marginals, pairs })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RcNaResult {
    pub joint: Rational,
    pub product: Rational,
    pub holds: bool,
}

/// `phi(e and f open) <= phi(e open) phi(f open)`, compared exactly.
pub fn rc_na_check(g: &Multigraph, params: &RCParams, e: usize, f: usize) -> Result<RcNaResult> {
    if e == f {
        return Err(Error::InvalidGraph("e and f must differ".into()));
    }
    g.edge(e)?;
    g.edge(f)?;
    let r = rc_exact(g, params)?;
    let joint = r.pairs[e][f].clone();
    let product = &r.marginals[e] * &r.marginals[f];
    let holds = joint <= product;
    Ok(RcNaResult { joint, product, holds })
}

/// Limiting measures of the random-cluster model on a simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitTarget {
    /// Connected spanning subgraphs weighted by `beta^|w|`.
    Connected { beta: Rational },
    /// Forests weighted by `alpha^|w|`.
    Forest { alpha: Rational },
    /// Uniform spanning tree.
    Ust,
}

/// Exact total-variation distance between `phi_{p,q}` on `g` and `target`.
/// Both measures depend on a configuration only through its edge and
/// component counts, so the sum runs over those classes.
pub fn rc_limit_distance(g: EdgeSet, params: &RCParams, target: &LimitTarget) -> Result<Rational> {
    let n = g.n();
    let graph = Multigraph::from_edge_set(g);
    let tally = Tally::build(&graph, false)?;
    let weights = tally.weights(params);
    let z = Tally::weigh(&tally.by_class, &weights);
    let whole = CountingProblem::unconstrained(g);
    let (norm, support): (Rational, Box<dyn Fn(usize, usize) -> Option<Rational>>) = match target {
        LimitTarget::Connected { beta } => {
            let norm = weighted_sum(&whole, Property::Connected, &WeightVector::uniform(beta.clone())?)?;
            let beta = beta.clone();
            (norm, Box::new(move |s, k| (k == 1).then(|| rational_pow(&beta, s))))
        }
        LimitTarget::Forest { alpha } => {
            let norm = weighted_sum(&whole, Property::Forest, &WeightVector::uniform(alpha.clone())?)?;
            let alpha = alpha.clone();
            (norm, Box::new(move |s, k| (s + k == n).then(|| rational_pow(&alpha, s))))
        }
        LimitTarget::Ust => {
            let trees = spanning_tree_count(&graph)?;
            let norm = Rational::from_integer(trees.get().into());
            (norm, Box::new(move |s, k| (s + 1 == n && k == 1).then(Rational::one)))
        }
    };
    if norm.is_zero() {
        return Err(Error::Disconnected);
    }
    let mut total = Rational::zero();
    for s in 0..=tally.edges {
        for k in 1..=tally.vertices {
            let c = tally.by_class[tally.class(s, k)];
            if c == 0 {
                continue;
            }
            let phi = &weights[tally.class(s, k)] / &z;
            let mu = support(s, k).map_or_else(Rational::zero, |w| w / &norm);
            total += (phi - mu).abs() * Rational::from_integer(c.into());
        }
    }
    Ok(total / Rational::from_integer(2.into()))
}
