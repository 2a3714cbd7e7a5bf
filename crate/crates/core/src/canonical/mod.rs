//! Canonical labelling of partitioned graphs and the index functions built on it.
//!
//! [`canonical_form`] returns a distinguished isomorph of a graph carrying an
//! ordered vertex partition, together with the relabelling that produces it.
//! Two partitioned graphs receive the same form exactly when a
//! cell-preserving isomorphism maps one onto the other.

mod index;
mod search;

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{check_n, full_vertex_mask, Bits16, EdgeSet, VertexSet};

pub use index::{decode_key, encode_key, index_i, index_j, interface, interface_partition, IndexKey, KEY_VERSION};

/// Sequence of disjoint non-empty vertex cells covering `1..=n`. Cell order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedPartition {
    n: usize,
    cells: Vec<VertexSet>,
}

impl OrderedPartition {
    pub fn new(n: usize, cells: Vec<VertexSet>) -> Result<Self> {
        check_n(n)?;
        let mut seen = 0u16;
        for cell in &cells {
            if cell.is_empty() {
                return Err(Error::InvalidPartition("empty cell".into()));
            }
            if cell.mask() & !full_vertex_mask(n) != 0 {
                return Err(Error::InvalidPartition(format!("cell {:?} has vertices above {n}", cell.to_vec())));
            }
            if seen & cell.mask() != 0 {
                return Err(Error::InvalidPartition("cells overlap".into()));
            }
            seen |= cell.mask();
        }
        if seen != full_vertex_mask(n) {
            return Err(Error::InvalidPartition("cells do not cover every vertex".into()));
        }
        Ok(OrderedPartition { n, cells })
    }

    pub fn from_labels(n: usize, cells: &[&[usize]]) -> Result<Self> {
        for cell in cells {
            if let Some(&v) = cell.iter().find(|&&v| v == 0 || v > n) {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
        let sets = cells.iter().map(|c| VertexSet::from_labels(c.iter().copied())).collect();
        Self::new(n, sets)
    }

    /// The partition with a single cell.
    pub fn unit(n: usize) -> Self {
        OrderedPartition {
            n,
            cells: vec![VertexSet(full_vertex_mask(n))],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[VertexSet] {
        &self.cells
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.len()).collect()
    }

    /// `π^γ`: every cell mapped through `gamma`, order kept.
    pub fn permute(&self, gamma: &Permutation) -> Self {
        let cells = self
            .cells
            .iter()
            .map(|c| VertexSet(Bits16(c.mask()).fold(0u16, |m, v| m | 1 << gamma.image[v])))
            .collect();
        OrderedPartition { n: self.n, cells }
    }

    pub(crate) fn masks(&self) -> Vec<u16> {
        self.cells.iter().map(|c| c.mask()).collect()
    }
}

/// A bijection of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { image: (0..n).collect() }
    }

    /// From 1-based images: `images[v - 1]` is the image of `v`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_n(n)?;
        let mut seen = vec![false; n];
        for &w in images {
            if w == 0 || w > n || seen[w - 1] {
                return Err(Error::InvalidParams(format!("{images:?} is not a permutation of 1..={n}")));
            }
            seen[w - 1] = true;
        }
        Ok(Permutation {
            image: images.iter().map(|w| w - 1).collect(),
        })
    }

    pub(crate) fn from_zero_based(image: Vec<usize>) -> Self {
        Permutation { image }
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// Image of vertex `v` (1-based).
    pub fn apply(&self, v: usize) -> usize {
        self.image[v - 1] + 1
    }

    /// 0-based image table.
    pub fn zero_based(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        Permutation { image: inv }
    }

    /// `self` followed by `then`.
    pub fn then(&self, then: &Permutation) -> Self {
        Permutation {
            image: self.image.iter().map(|&w| then.image[w]).collect(),
        }
    }

    /// `G^γ`.
    pub fn act(&self, edges: EdgeSet) -> EdgeSet {
        edges.relabel(&self.image)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.image.iter().map(|w| w + 1)).finish()
    }
}

/// The canonical isomorph of a partitioned graph and the relabelling reaching it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalResult {
    pub canon: EdgeSet,
    /// `canon == delta.act(graph)`.
    pub delta: Permutation,
}

fn check_partition(graph: &EdgeSet, pi: &OrderedPartition) -> Result<()> {
    if pi.n() != graph.n() {
        return Err(Error::InvalidPartition(format!(
            "partition on {} vertices for a graph on {}",
            pi.n(),
            graph.n()
        )));
    }
    Ok(())
}

/// Canonical form of `(graph, pi)` by partition refinement and search.
pub fn canonical_form(graph: EdgeSet, pi: &OrderedPartition) -> Result<CanonicalResult> {
    check_partition(&graph, pi)?;
    let n = graph.n();
    let lab = search::canonize(n, &[graph.bits()], &pi.masks());
    Ok(CanonicalResult {
        canon: EdgeSet::from_bits_unchecked(n, lab.canon[0]),
        delta: Permutation::from_zero_based(lab.image[..n].iter().map(|&p| p as usize).collect()),
    })
}

/// Canonical form minimising over every cell-respecting permutation.
///
/// Independent of the refinement search and exponential in the cell sizes;
/// fine for `n <= 7` or so.
pub fn canonical_form_exhaustive(graph: EdgeSet, pi: &OrderedPartition) -> Result<CanonicalResult> {
    check_partition(&graph, pi)?;
    let n = graph.n();
    let lab = search::canonize_exhaustive(n, &[graph.bits()], &pi.masks());
    Ok(CanonicalResult {
        canon: EdgeSet::from_bits_unchecked(n, lab.canon[0]),
        delta: Permutation::from_zero_based(lab.image[..n].iter().map(|&p| p as usize).collect()),
    })
}

/// Canonical labelling of `domain` with the edges of `marked ⊆ domain` as a second colour.
pub(crate) fn pair_labelling(domain: EdgeSet, marked: EdgeSet) -> Permutation {
    let n = domain.n();
    let lab = search::canonize(n, &[domain.bits(), marked.bits()], &[full_vertex_mask(n)]);
    Permutation::from_zero_based(lab.image[..n].iter().map(|&p| p as usize).collect())
}
