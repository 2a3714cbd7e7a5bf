use super::{check_budget, submasks, Count, CountingProblem};
use crate::error::Result;
use crate::graph::EdgeSet;

/// Counts forests `S` with `X ⊆ S ⊆ E − Y` by visiting every candidate subset.
///
/// Used as the reference for the faster strategies; limited to
/// [`ENUMERATION_BUDGET`](super::ENUMERATION_BUDGET) free edges.
pub fn count_forests_oracle(problem: &CountingProblem) -> Result<Count> {
    let free = problem.free();
    check_budget(free.len())?;
    let x = problem.contain();
    if !x.is_forest() {
        return Ok(Count::ZERO);
    }
    let n = problem.n();
    let total = submasks(free.bits())
        .filter(|&sub| EdgeSet::from_bits_unchecked(n, x.bits() | sub).is_forest())
        .count();
    Ok(Count::new(total as u128))
}
