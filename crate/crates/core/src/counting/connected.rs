use super::{check_budget, submasks, Count, CountingProblem};
use crate::error::Result;
use crate::graph::{full_vertex_mask, reach, EdgeSet};

/// Counts spanning connected subgraphs `S` with `X ⊆ S ⊆ E − Y` by subset enumeration.
pub fn count_connected(problem: &CountingProblem) -> Result<Count> {
    let free = problem.free();
    check_budget(free.len())?;
    let n = problem.n();
    let x = problem.contain();
    if !problem.domain().is_connected() {
        return Ok(Count::ZERO);
    }
    let total = submasks(free.bits())
        .filter(|&sub| EdgeSet::from_bits_unchecked(n, x.bits() | sub).is_connected())
        .count();
    Ok(Count::new(total as u128))
}

/// Same count by deletion/inclusion on one free edge at a time:
/// `C^X(D) = C^X(D − d) + C^{X+d}(D)`, cutting branches where `D` is disconnected
/// and finishing early once `X` already spans.
pub fn count_connected_recursive(problem: &CountingProblem) -> Result<Count> {
    let reduced = problem.reduced();
    connected_rec(reduced.edges(), reduced.contain())
}

fn connected_rec(domain: EdgeSet, contain: EdgeSet) -> Result<Count> {
    let n = domain.n();
    let full = full_vertex_mask(n);
    if reach(&domain.adjacency(), 0) != full {
        return Ok(Count::ZERO);
    }
    let free = domain.difference(contain);
    if reach(&contain.adjacency(), 0) == full {
        return Count::pow2(free.len());
    }
    let Some(d) = free.ranks().next() else {
        return Ok(Count::ZERO);
    };
    let without = connected_rec(domain.without_rank(d), contain)?;
    let with = connected_rec(domain, contain.with_rank(d))?;
    without.checked_add(with)
}
