use super::{Count, CountingProblem};
use crate::error::{Error, Result};
use crate::graph::{ends0, Bits64, EdgeSet};

/// Largest layer [`count_forests_layered`] will hold in memory.
pub const DEFAULT_LAYER_BUDGET: usize = 1 << 26;

/// All forests of one size `s` between the constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub s: usize,
    pub members: Vec<EdgeSet>,
}

/// Builds the layers of forests containing `X` inside `E − Y`, starting from
/// the single layer `{X}` and growing each forest by one free edge that joins
/// two of its components.
///
/// Each forest is produced once: a forest is only extended by free edges of
/// rank above every free edge it already holds.
pub fn forest_layers(problem: &CountingProblem, budget: usize) -> Result<Vec<Layer>> {
    let x = problem.contain();
    if !x.is_forest() {
        return Ok(Vec::new());
    }
    let mut layers = vec![Layer {
        s: x.len(),
        members: vec![x],
    }];
    loop {
        let current = layers.last().expect("at least the seed layer");
        let next = extend(&current.members, x, problem.free(), budget)?;
        if next.is_empty() {
            break;
        }
        let s = current.s + 1;
        layers.push(Layer { s, members: next });
    }
    Ok(layers)
}

/// Counts forests as the sum of layer sizes, holding one layer at a time.
pub fn count_forests_layered(problem: &CountingProblem) -> Result<Count> {
    let x = problem.contain();
    if !x.is_forest() {
        return Ok(Count::ZERO);
    }
    let mut current = vec![x];
    let mut total = Count::ZERO;
    while !current.is_empty() {
        total = total.checked_add(Count::new(current.len() as u128))?;
        current = extend(&current, x, problem.free(), DEFAULT_LAYER_BUDGET)?;
    }
    Ok(total)
}

fn extend(layer: &[EdgeSet], x: EdgeSet, free: EdgeSet, budget: usize) -> Result<Vec<EdgeSet>> {
    let n = x.n();
    let mut next = Vec::new();
    for &forest in layer {
        let placed = forest.difference(x).bits();
        let above = if placed == 0 {
            free.bits()
        } else {
            let top = 63 - placed.leading_zeros();
            free.bits() & !((2u64 << top) - 1)
        };
        if above == 0 {
            continue;
        }
        let comp = forest.component_masks();
        for r in Bits64(above) {
            let (a, b) = ends0(n, r);
            if comp[a] >> b & 1 == 0 {
                next.push(forest.with_rank(r));
            }
        }
        if next.len() > budget {
            return Err(Error::LayerTooLarge(next.len()));
        }
    }
    Ok(next)
}
