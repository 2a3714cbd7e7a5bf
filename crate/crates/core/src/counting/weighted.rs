use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{check_budget, CountingProblem, Property};
use crate::error::{Error, Result};
use crate::graph::{edge_count, EdgeSet};

/// Non-negative edge weights `p_e`, either one value for every edge or one per rank of `K_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightVector {
    Uniform(BigRational),
    PerEdge(Vec<BigRational>),
}

impl WeightVector {
    pub fn uniform(alpha: BigRational) -> Result<Self> {
        if alpha.is_negative() {
            return Err(Error::InvalidParams(format!("weight {alpha} is negative")));
        }
        Ok(WeightVector::Uniform(alpha))
    }

    /// One weight per edge of `K_n`, indexed by rank.
    pub fn per_edge(n: usize, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != edge_count(n) {
            return Err(Error::InvalidParams(format!(
                "expected {} edge weights for n = {n}, got {}",
                edge_count(n),
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::InvalidParams(format!("weight {w} is negative")));
        }
        Ok(WeightVector::PerEdge(weights))
    }

    pub fn weight(&self, rank: usize) -> &BigRational {
        match self {
            WeightVector::Uniform(a) => a,
            WeightVector::PerEdge(w) => &w[rank],
        }
    }
}

/// `Σ Π_{e ∈ S} p_e` over all `S` with `X ⊆ S ⊆ E − Y` having `property`.
pub fn weighted_sum(problem: &CountingProblem, property: Property, weights: &WeightVector) -> Result<BigRational> {
    let free: Vec<usize> = problem.free().ranks().collect();
    check_budget(free.len())?;
    if let WeightVector::PerEdge(w) = weights {
        if w.len() != edge_count(problem.n()) {
            return Err(Error::InvalidParams("weight vector has the wrong length".into()));
        }
    }
    let x = problem.contain();
    match weights {
        WeightVector::Uniform(alpha) => {
            // Tally by size, then evaluate the polynomial once.
            let mut by_size = vec![0u64; problem.domain().len() + 1];
            visit(&free, 0, x, property, &mut |s| by_size[s.len()] += 1);
            let mut total = BigRational::zero();
            let mut power = BigRational::one();
            for &c in &by_size {
                if c > 0 {
                    total += &power * BigRational::from_integer(BigInt::from(c));
                }
                power *= alpha;
            }
            Ok(total)
        }
        WeightVector::PerEdge(_) => {
            let mut total = BigRational::zero();
            visit(&free, 0, x, property, &mut |s| {
                let mut prod = BigRational::one();
                for r in s.ranks() {
                    prod *= weights.weight(r);
                }
                total += prod;
            });
            Ok(total)
        }
    }
}

fn visit(free: &[usize], i: usize, current: EdgeSet, property: Property, f: &mut impl FnMut(EdgeSet)) {
    match property {
        Property::Forest => {
            if !current.is_forest() {
                return;
            }
        }
        Property::Connected => {
            let mut reachable = current;
            for &r in &free[i..] {
                reachable = reachable.with_rank(r);
            }
            if !reachable.is_connected() {
                return;
            }
        }
    }
    if i == free.len() {
        f(current);
        return;
    }
    visit(free, i + 1, current, property, f);
    visit(free, i + 1, current.with_rank(free[i]), property, f);
}
