use std::path::Path;

use super::Multigraph;
use crate::counting::{check_budget, count_forests_oracle, Count, CountingProblem};
use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// A dual graph whose `i`-th edge crosses the `i`-th primal edge in rank order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpec {
    pub dual: Multigraph,
}

impl DualSpec {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(DualSpec {
            dual: Multigraph::parse(text)?,
        })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        DualSpec::parse(&std::fs::read_to_string(path)?)
    }

    /// Primal rank paired with each dual edge index.
    pub fn pairing(&self, primal: EdgeSet) -> Result<Vec<usize>> {
        if primal.len() != self.dual.edge_count() {
            return Err(Error::Parse(format!(
                "primal graph has {} edges but the dual has {}",
                primal.len(),
                self.dual.edge_count()
            )));
        }
        Ok(primal.ranks().collect())
    }

    /// Dual edge mask of a primal edge subset.
    fn image(&self, pairing: &[usize], primal: EdgeSet) -> u64 {
        pairing
            .iter()
            .enumerate()
            .filter(|&(_, &r)| primal.contains_rank(r))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }
}

/// Connected spanning subgraphs of `g` that contain `contain` and avoid
/// `avoid`, both given as edge-index masks.
pub fn connected_spanning_count(g: &Multigraph, contain: u64, avoid: u64) -> Result<Count> {
    let m = g.edge_count();
    if m > 64 {
        return Err(Error::Budget { free: m, limit: 64 });
    }
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    if contain & avoid != 0 || (contain | avoid) & !all != 0 {
        return Err(Error::InvalidProblem("constraint masks overlap or exceed the edge list".into()));
    }
    let free = all & !contain & !avoid;
    check_budget(free.count_ones() as usize)?;
    let mut total = 0u128;
    let mut sub = free;
    loop {
        if g.components_of(contain | sub) == 1 {
            total += 1;
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    Ok(Count::new(total))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualCheck {
    pub lhs: Count,
    pub rhs: Count,
    pub equal: bool,
}

/// Forests of `graph` containing `contain` and avoiding `avoid`, against
/// connected spanning subgraphs of the dual containing the dual of `avoid`
/// and avoiding the dual of `contain`.
pub fn dual_complement_check(graph: EdgeSet, spec: &DualSpec, contain: EdgeSet, avoid: EdgeSet) -> Result<DualCheck> {
    let pairing = spec.pairing(graph)?;
    let problem = CountingProblem::new(graph, contain, avoid)?;
    let lhs = count_forests_oracle(&problem)?;
    let rhs = connected_spanning_count(&spec.dual, spec.image(&pairing, avoid), spec.image(&pairing, contain))?;
    Ok(DualCheck { lhs, rhs, equal: lhs == rhs })
}
