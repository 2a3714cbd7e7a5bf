//! Exact counting of constrained forests and connected spanning subgraphs.
//!
//! A [`CountingProblem`] `(E, X, Y)` asks for the number of subsets `S` with
//! `X ⊆ S ⊆ E − Y` having the chosen [`Property`]. Forest counts can be
//! computed three ways (subset enumeration, layer-by-layer construction, and
//! the memoised pivot expansion); all three must agree.

mod connected;
mod layered;
mod memo;
mod oracle;
mod weighted;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EdgeSet;

pub use connected::{count_connected, count_connected_recursive};
pub use layered::{count_forests_layered, forest_layers, Layer, DEFAULT_LAYER_BUDGET};
pub use memo::{count_forests_memo, MemoKey, MemoMode, MemoStats, MemoStore};
pub use oracle::count_forests_oracle;
pub use weighted::{weighted_sum, WeightVector};

/// Largest number of free edges the subset-enumeration routines will visit.
pub const ENUMERATION_BUDGET: usize = 24;

/// Exact non-negative count with overflow detection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(u128);

impl Count {
    pub const ZERO: Count = Count(0);
    pub const ONE: Count = Count(1);

    pub const fn new(value: u128) -> Self {
        Count(value)
    }

    pub const fn get(self) -> u128 {
        self.0
    }

    pub fn pow2(exp: usize) -> Result<Self> {
        if exp >= 128 {
            return Err(Error::Overflow);
        }
        Ok(Count(1u128 << exp))
    }

    pub fn checked_add(self, other: Count) -> Result<Count> {
        self.0.checked_add(other.0).map(Count).ok_or(Error::Overflow)
    }

    pub fn checked_mul(self, other: Count) -> Result<Count> {
        self.0.checked_mul(other.0).map(Count).ok_or(Error::Overflow)
    }

    pub fn checked_shl(self, bits: usize) -> Result<Count> {
        if self.0 == 0 {
            return Ok(self);
        }
        if bits >= 128 || self.0.leading_zeros() < bits as u32 {
            return Err(Error::Overflow);
        }
        Ok(Count(self.0 << bits))
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(v as u128)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

// Serialized as a decimal string: JSON consumers rarely handle 128-bit integers.
impl Serialize for Count {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<u128>().map(Count).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Property {
    Forest,
    Connected,
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forest" => Ok(Property::Forest),
            "connected" => Ok(Property::Connected),
            other => Err(Error::Parse(format!("unknown property {other:?}"))),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Forest => "forest",
            Property::Connected => "connected",
        })
    }
}

/// The triple `(E, X, Y)`: count subsets of `E` containing `X` and avoiding `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CountingProblem {
    edges: EdgeSet,
    contain: EdgeSet,
    avoid: EdgeSet,
}

impl CountingProblem {
    pub fn new(edges: EdgeSet, contain: EdgeSet, avoid: EdgeSet) -> Result<Self> {
        if edges.n() != contain.n() || edges.n() != avoid.n() {
            return Err(Error::InvalidProblem("edge sets on different vertex counts".into()));
        }
        if !contain.is_subset(&edges) {
            return Err(Error::InvalidProblem(format!("X = {{{contain}}} is not inside E")));
        }
        if !avoid.is_subset(&edges) {
            return Err(Error::InvalidProblem(format!("Y = {{{avoid}}} is not inside E")));
        }
        if !contain.is_disjoint(&avoid) {
            return Err(Error::InvalidProblem("X and Y intersect".into()));
        }
        Ok(CountingProblem {
            edges,
            contain,
            avoid,
        })
    }

    /// Problem with no constraints.
    pub fn unconstrained(edges: EdgeSet) -> Self {
        let empty = EdgeSet::empty(edges.n());
        CountingProblem {
            edges,
            contain: empty,
            avoid: empty,
        }
    }

    pub fn n(&self) -> usize {
        self.edges.n()
    }

    pub fn edges(&self) -> EdgeSet {
        self.edges
    }

    pub fn contain(&self) -> EdgeSet {
        self.contain
    }

    pub fn avoid(&self) -> EdgeSet {
        self.avoid
    }

    /// `E − Y`: avoiding `Y` is the same as deleting it.
    pub fn domain(&self) -> EdgeSet {
        self.edges.difference(self.avoid)
    }

    /// Edges whose membership is not fixed by the constraints.
    pub fn free(&self) -> EdgeSet {
        self.domain().difference(self.contain)
    }

    /// The equivalent problem `(E − Y, X, ∅)`.
    pub fn reduced(&self) -> Self {
        CountingProblem {
            edges: self.domain(),
            contain: self.contain,
            avoid: EdgeSet::empty(self.n()),
        }
    }

    /// Relabels every set by the 0-based vertex map `image`.
    pub fn relabel(&self, image: &[usize]) -> Self {
        CountingProblem {
            edges: self.edges.relabel(image),
            contain: self.contain.relabel(image),
            avoid: self.avoid.relabel(image),
        }
    }
}

pub(crate) fn check_budget(free: usize) -> Result<()> {
    if free > ENUMERATION_BUDGET {
        Err(Error::Budget {
            free,
            limit: ENUMERATION_BUDGET,
        })
    } else {
        Ok(())
    }
}

/// Iterates every subset of `mask` (including 0 and `mask`).
pub(crate) fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask {
            None
        } else {
            Some((cur.wrapping_sub(mask)) & mask)
        };
        Some(cur)
    })
}

/// Counts with the chosen property, using the memoised expansion for forests
/// and subset enumeration for connected subgraphs.
pub fn count(problem: &CountingProblem, property: Property, mode: MemoMode, store: &MemoStore) -> Result<Count> {
    match property {
        Property::Forest => count_forests_memo(problem, mode, store),
        Property::Connected => count_connected(problem),
    }
}
