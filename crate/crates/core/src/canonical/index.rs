//! Index functions that identify counting problems with equal forest counts.
//!
//! For a problem with domain `D = E − Y` and constraint `X`, the vertices
//! touching both `X` and `R = D − X` (the interface) are pinned as singleton
//! cells in a fixed order; the key is then the interface size together with
//! the canonical forms of `X` and of `R` under that partition. Equal keys
//! yield equal counts.

use super::{canonical_form, pair_labelling, OrderedPartition, Permutation};
use crate::counting::CountingProblem;
use crate::error::{Error, Result};
use crate::graph::{edge_count, full_vertex_mask, EdgeSet, VertexSet};

pub const KEY_VERSION: u8 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexKey {
    /// Interface cardinality.
    pub k: u8,
    pub cell_sizes: Vec<u8>,
    /// Canonical form of the constraint set under the interface partition.
    pub cx: EdgeSet,
    /// Canonical form of the rest of the domain under the same partition.
    pub cr: EdgeSet,
}

impl IndexKey {
    pub fn n(&self) -> usize {
        self.cx.n()
    }

    pub fn encode(&self) -> Vec<u8> {
        encode_key(self)
    }
}

/// Vertices incident to an edge of `a` and to an edge of `b`.
pub fn interface(a: EdgeSet, b: EdgeSet) -> VertexSet {
    VertexSet(a.support().mask() & b.support().mask())
}

/// `(V_0, {c_1}, …, {c_k})`: non-interface vertices first (omitted when there
/// are none), then one singleton per interface vertex ordered by its image under `delta`.
pub fn interface_partition(x: EdgeSet, rest: EdgeSet, delta: &Permutation) -> OrderedPartition {
    let n = x.n();
    let iface = interface(x, rest);
    let mut pinned: Vec<usize> = iface.iter().collect();
    pinned.sort_by_key(|&v| delta.apply(v));
    let mut cells = Vec::with_capacity(pinned.len() + 1);
    let outside = full_vertex_mask(n) & !iface.mask();
    if outside != 0 {
        cells.push(VertexSet(outside));
    }
    cells.extend(pinned.into_iter().map(|v| VertexSet::from_labels([v])));
    OrderedPartition::new(n, cells).expect("interface partition is valid by construction")
}

/// `j(D, X)`, the index of the problem `(D, X, ∅)`. Requires `X ⊆ D`.
///
/// Interface vertices are coloured by their position in a canonical labelling
/// of `D` with `X` marked, so the key does not depend on vertex names.
pub fn index_j(domain: EdgeSet, x: EdgeSet) -> IndexKey {
    debug_assert!(x.is_subset(&domain));
    let rest = domain.difference(x);
    let delta = pair_labelling(domain, x);
    let pi = interface_partition(x, rest, &delta);
    let cx = canonical_form(x, &pi).expect("same vertex count").canon;
    let cr = canonical_form(rest, &pi).expect("same vertex count").canon;
    let k = interface(x, rest).len() as u8;
    IndexKey {
        k,
        cell_sizes: pi.cell_sizes().into_iter().map(|s| s as u8).collect(),
        cx,
        cr,
    }
}

/// `i(E, X, Y) = j(E − Y, X)`.
pub fn index_i(problem: &CountingProblem) -> IndexKey {
    index_j(problem.domain(), problem.contain())
}

fn graph_bytes(n: usize) -> usize {
    edge_count(n).div_ceil(8)
}

/// Layout: version, `n`, `k`, cell count, cell sizes, then the two canonical
/// graphs as upper-triangular adjacency bits in row-major (rank) order, bit
/// `r` at byte `r / 8`, position `r % 8`, each graph padded to a byte boundary.
pub fn encode_key(key: &IndexKey) -> Vec<u8> {
    let n = key.n();
    let gb = graph_bytes(n);
    let mut out = Vec::with_capacity(4 + key.cell_sizes.len() + 2 * gb);
    out.push(KEY_VERSION);
    out.push(n as u8);
    out.push(key.k);
    out.push(key.cell_sizes.len() as u8);
    out.extend_from_slice(&key.cell_sizes);
    for graph in [key.cx, key.cr] {
        out.extend_from_slice(&graph.bits().to_le_bytes()[..gb]);
    }
    out
}

pub fn decode_key(bytes: &[u8]) -> Result<IndexKey> {
    let bad = |why: &str| Error::Database(format!("corrupt index key: {why}"));
    let [version, n, k, cells, rest @ ..] = bytes else {
        return Err(bad("truncated header"));
    };
    if *version != KEY_VERSION {
        return Err(bad(&format!("unsupported key version {version}")));
    }
    let n = *n as usize;
    crate::graph::check_n(n).map_err(|_| bad("vertex count out of range"))?;
    let cells = *cells as usize;
    if rest.len() < cells {
        return Err(bad("truncated cell sizes"));
    }
    let (sizes, graphs) = rest.split_at(cells);
    if sizes.iter().any(|&s| s == 0) || sizes.iter().map(|&s| s as usize).sum::<usize>() != n {
        return Err(bad("cell sizes do not sum to n"));
    }
    if *k as usize > n {
        return Err(bad("interface larger than n"));
    }
    let gb = graph_bytes(n);
    if graphs.len() != 2 * gb {
        return Err(bad("wrong graph length"));
    }
    let read = |chunk: &[u8]| -> Result<EdgeSet> {
        let mut buf = [0u8; 8];
        buf[..gb].copy_from_slice(chunk);
        EdgeSet::from_bits(n, u64::from_le_bytes(buf)).map_err(|_| bad("edge bit beyond K_n"))
    };
    Ok(IndexKey {
        k: *k,
        cell_sizes: sizes.to_vec(),
        cx: read(&graphs[..gb])?,
        cr: read(&graphs[gb..])?,
    })
}
