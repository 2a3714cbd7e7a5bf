//! Vertex and edge coding for labelled simple graphs on at most eleven vertices.
//!
//! Vertices are labelled `1..=n`. The edges of the complete graph `K` on those
//! vertices are ranked lexicographically, so `<1,2>` has rank 0 and `<n-1,n>`
//! has rank `n(n-1)/2 - 1`. An [`EdgeSet`] is a subset of `K` stored as a
//! single `u64` keyed by rank, which caps `n` at 11 (55 edges).

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 11;
pub const MAX_EDGES: usize = 55;

type EndsTable = [[(u8, u8); MAX_EDGES]; MAX_VERTICES + 1];
type RankTable = [[[u8; MAX_VERTICES]; MAX_VERTICES]; MAX_VERTICES + 1];

const fn build_ends() -> EndsTable {
    let mut table = [[(0u8, 0u8); MAX_EDGES]; MAX_VERTICES + 1];
    let mut n = 0;
    while n <= MAX_VERTICES {
        let mut r = 0;
        let mut x = 0;
        while x < n {
            let mut y = x + 1;
            while y < n {
                table[n][r] = (x as u8, y as u8);
                r += 1;
                y += 1;
            }
            x += 1;
        }
        n += 1;
    }
    table
}

const fn build_ranks() -> RankTable {
    let ends = build_ends();
    let mut table = [[[u8::MAX; MAX_VERTICES]; MAX_VERTICES]; MAX_VERTICES + 1];
    let mut n = 0;
    while n <= MAX_VERTICES {
        let mut r = 0;
        while r < n * n.saturating_sub(1) / 2 {
            let (x, y) = ends[n][r];
            table[n][x as usize][y as usize] = r as u8;
            table[n][y as usize][x as usize] = r as u8;
            r += 1;
        }
        n += 1;
    }
    table
}

static ENDS: EndsTable = build_ends();
static RANKS: RankTable = build_ranks();

/// Number of edges of the complete graph on `n` vertices.
pub const fn edge_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// 0-based endpoints of the edge with the given rank.
#[inline]
pub(crate) fn ends0(n: usize, rank: usize) -> (usize, usize) {
    let (x, y) = ENDS[n][rank];
    (x as usize, y as usize)
}

/// Rank of the edge joining 0-based vertices `a != b`, in either order.
#[inline]
pub(crate) fn rank0(n: usize, a: usize, b: usize) -> usize {
    RANKS[n][a][b] as usize
}

pub(crate) fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_VERTICES).contains(&n) {
        Ok(())
    } else {
        Err(Error::VertexCount(n))
    }
}

/// An edge `<x,y>` with `1 <= x < y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    x: u8,
    y: u8,
}

impl Edge {
    pub fn new(n: usize, x: usize, y: usize) -> Result<Self> {
        check_n(n)?;
        if x == 0 || x >= y || y > n {
            return Err(Error::InvalidEdge { x, y, n });
        }
        Ok(Edge {
            x: x as u8,
            y: y as u8,
        })
    }

    pub fn x(&self) -> usize {
        self.x as usize
    }

    pub fn y(&self) -> usize {
        self.y as usize
    }

    pub fn rank(&self, n: usize) -> usize {
        rank0(n, self.x as usize - 1, self.y as usize - 1)
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.x == other.x || self.x == other.y || self.y == other.x || self.y == other.y
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.x, self.y)
    }
}

pub fn edge_rank(n: usize, x: usize, y: usize) -> Result<usize> {
    Ok(Edge::new(n, x, y)?.rank(n))
}

pub fn edge_unrank(n: usize, rank: usize) -> Result<Edge> {
    check_n(n)?;
    if rank >= edge_count(n) {
        return Err(Error::RankOutOfRange { rank, n });
    }
    let (x, y) = ends0(n, rank);
    Ok(Edge {
        x: x as u8 + 1,
        y: y as u8 + 1,
    })
}

/// A set of vertices, bit `v - 1` standing for vertex `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub(crate) u16);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn from_labels(labels: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = 0u16;
        for v in labels {
            debug_assert!((1..=MAX_VERTICES).contains(&v));
            mask |= 1 << (v - 1);
        }
        VertexSet(mask)
    }

    pub fn contains(&self, v: usize) -> bool {
        v >= 1 && v <= 16 && self.0 >> (v - 1) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn mask(&self) -> u16 {
        self.0
    }

    /// Labels in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        Bits16(self.0).map(|v| v + 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

/// Iterator over set bit positions of a `u16`.
#[derive(Clone, Copy)]
pub(crate) struct Bits16(pub(crate) u16);

impl Iterator for Bits16 {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Iterator over set bit positions of a `u64`.
#[derive(Clone, Copy)]
pub struct Bits64(pub u64);

impl Iterator for Bits64 {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

/// A subset of the edges of `K_n`, bit `r` standing for the edge of rank `r`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSet {
    n: u8,
    bits: u64,
}

impl EdgeSet {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(EdgeSet { n: n as u8, bits: 0 })
    }

    /// Empty set; panics if `n` is out of range.
    pub fn empty(n: usize) -> Self {
        assert!((1..=MAX_VERTICES).contains(&n), "n = {n} out of range");
        EdgeSet { n: n as u8, bits: 0 }
    }

    pub fn complete(n: usize) -> Self {
        let mut set = EdgeSet::empty(n);
        set.bits = full_mask(n);
        set
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if bits & !full_mask(n) != 0 {
            return Err(Error::RankOutOfRange {
                rank: 63 - bits.leading_zeros() as usize,
                n,
            });
        }
        Ok(EdgeSet { n: n as u8, bits })
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(n: usize, bits: u64) -> Self {
        debug_assert_eq!(bits & !full_mask(n), 0);
        EdgeSet { n: n as u8, bits }
    }

    /// Builds a set from 1-based `(x, y)` pairs; either orientation is accepted.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut set = EdgeSet::new(n)?;
        for &(a, b) in pairs {
            let (x, y) = if a < b { (a, b) } else { (b, a) };
            set.insert(Edge::new(n, x, y)?);
        }
        Ok(set)
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = EdgeSet::new(n)?;
        for e in edges {
            if e.y() > n {
                return Err(Error::InvalidEdge { x: e.x(), y: e.y(), n });
            }
            set.insert(e);
        }
        Ok(set)
    }

    /// Parses the comma-separated `x-y` edge list format, e.g. `1-2,1-3,3-4`.
    ///
    /// Whitespace is ignored. Tokens must have `x < y`; duplicates are rejected.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut set = EdgeSet::new(n)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Ok(set);
        }
        for token in compact.split(',') {
            let (a, b) = token
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("edge token {token:?} is not of the form x-y")))?;
            let x: usize = a
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {a:?} in {token:?}")))?;
            let y: usize = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex {b:?} in {token:?}")))?;
            let edge = Edge::new(n, x, y)
                .map_err(|e| Error::Parse(format!("edge token {token:?}: {e}")))?;
            if set.contains(edge) {
                return Err(Error::Parse(format!("duplicate edge {token:?}")));
            }
            set.insert(edge);
        }
        Ok(set)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.contains_rank(e.rank(self.n()))
    }

    #[inline]
    pub fn contains_rank(&self, rank: usize) -> bool {
        rank < 64 && self.bits >> rank & 1 == 1
    }

    pub fn insert(&mut self, e: Edge) {
        self.bits |= 1 << e.rank(self.n());
    }

    pub fn remove(&mut self, e: Edge) {
        self.bits &= !(1 << e.rank(self.n()));
    }

    #[inline]
    pub fn with_rank(self, rank: usize) -> Self {
        debug_assert!(rank < edge_count(self.n()));
        EdgeSet {
            n: self.n,
            bits: self.bits | 1 << rank,
        }
    }

    #[inline]
    pub fn without_rank(self, rank: usize) -> Self {
        EdgeSet {
            n: self.n,
            bits: self.bits & !(1 << rank),
        }
    }

    pub fn with(self, e: Edge) -> Self {
        self.with_rank(e.rank(self.n()))
    }

    pub fn without(self, e: Edge) -> Self {
        self.without_rank(e.rank(self.n()))
    }

    #[inline]
    pub fn union(self, other: EdgeSet) -> Self {
        debug_assert_eq!(self.n, other.n);
        EdgeSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    #[inline]
    pub fn intersection(self, other: EdgeSet) -> Self {
        debug_assert_eq!(self.n, other.n);
        EdgeSet {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    #[inline]
    pub fn difference(self, other: EdgeSet) -> Self {
        debug_assert_eq!(self.n, other.n);
        EdgeSet {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    #[inline]
    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.bits & other.bits == 0
    }

    /// Ranks in increasing order.
    pub fn ranks(&self) -> Bits64 {
        Bits64(self.bits)
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n();
        self.ranks().map(move |r| {
            let (x, y) = ends0(n, r);
            Edge {
                x: x as u8 + 1,
                y: y as u8 + 1,
            }
        })
    }

    /// Neighbour masks indexed by 0-based vertex.
    #[inline]
    pub(crate) fn adjacency(&self) -> [u16; MAX_VERTICES] {
        let n = self.n();
        let mut adj = [0u16; MAX_VERTICES];
        for r in self.ranks() {
            let (x, y) = ends0(n, r);
            adj[x] |= 1 << y;
            adj[y] |= 1 << x;
        }
        adj
    }

    /// Vertices incident to at least one edge.
    pub fn support(&self) -> VertexSet {
        let n = self.n();
        let mut mask = 0u16;
        for r in self.ranks() {
            let (x, y) = ends0(n, r);
            mask |= 1 << x | 1 << y;
        }
        VertexSet(mask)
    }

    /// For each 0-based vertex, the vertex mask of its component.
    #[inline]
    pub(crate) fn component_masks(&self) -> [u16; MAX_VERTICES] {
        component_masks(self.n(), &self.adjacency())
    }

    /// True iff the set contains no cycle.
    #[inline]
    pub fn is_forest(&self) -> bool {
        let n = self.n();
        if self.len() >= n {
            return false;
        }
        let mut parent = [0u8; MAX_VERTICES];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        fn find(parent: &mut [u8; MAX_VERTICES], mut v: usize) -> usize {
            while parent[v] as usize != v {
                parent[v] = parent[parent[v] as usize];
                v = parent[v] as usize;
            }
            v
        }
        for r in self.ranks() {
            let (x, y) = ends0(n, r);
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a == b {
                return false;
            }
            parent[a] = b as u8;
        }
        true
    }

    /// True iff `(V, self)` is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let adj = self.adjacency();
        reach(&adj, 0) == full_vertex_mask(n)
    }

    pub fn components(&self) -> ComponentView {
        let n = self.n();
        let masks = self.component_masks();
        let mut component_of = vec![usize::MAX; n];
        let mut k = 0;
        for v in 0..n {
            if component_of[v] != usize::MAX {
                continue;
            }
            for u in Bits16(masks[v]) {
                component_of[u] = k;
            }
            k += 1;
        }
        let isolated = VertexSet(full_vertex_mask(n) & !self.support().0);
        ComponentView {
            component_of,
            k,
            isolated,
        }
    }

    pub fn classify(&self) -> Classification {
        let n = self.n();
        let view = self.components();
        let isolated = view.isolated;
        let v_min = isolated.iter().next().unwrap_or(n);
        // Isolated vertices must be exactly the suffix v_min..=n; an empty
        // isolated set satisfies this vacuously.
        let pi_min = isolated.is_empty() || isolated.0 == full_vertex_mask(n) & !((1u16 << (v_min - 1)) - 1);
        Classification {
            is_forest: self.len() + view.k == n,
            is_connected: view.k == 1,
            isolated,
            v_min,
            pi_min,
        }
    }

    /// Image of the set under a vertex map given as 0-based `image[v]`.
    pub fn relabel(&self, image: &[usize]) -> EdgeSet {
        let n = self.n();
        debug_assert_eq!(image.len(), n);
        let mut bits = 0u64;
        for r in self.ranks() {
            let (x, y) = ends0(n, r);
            bits |= 1 << rank0(n, image[x], image[y]);
        }
        EdgeSet { n: self.n, bits }
    }
}

impl fmt::Debug for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeSet(n={}, {{{}}})", self.n, self)
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

// Serialized in the `x-y,...` list form.
impl serde::Serialize for EdgeSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    let m = edge_count(n);
    if m == 64 {
        u64::MAX
    } else {
        (1u64 << m) - 1
    }
}

#[inline]
pub(crate) fn full_vertex_mask(n: usize) -> u16 {
    ((1u32 << n) - 1) as u16
}

#[inline]
pub(crate) fn reach(adj: &[u16; MAX_VERTICES], start: usize) -> u16 {
    let mut seen = 1u16 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adj[u] & !seen;
        seen |= fresh;
        frontier |= fresh;
    }
    seen
}

#[inline]
pub(crate) fn component_masks(n: usize, adj: &[u16; MAX_VERTICES]) -> [u16; MAX_VERTICES] {
    let mut comp = [0u16; MAX_VERTICES];
    let mut seen = 0u16;
    for v in 0..n {
        if seen >> v & 1 == 1 {
            continue;
        }
        let c = reach(adj, v);
        for u in Bits16(c) {
            comp[u] = c;
        }
        seen |= c;
    }
    comp
}

/// Connected components of `(V, E)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentView {
    component_of: Vec<usize>,
    k: usize,
    isolated: VertexSet,
}

impl ComponentView {
    /// Component id of vertex `v` (1-based label); ids are numbered by least member.
    pub fn component(&self, v: usize) -> usize {
        self.component_of[v - 1]
    }

    pub fn count(&self) -> usize {
        self.k
    }

    pub fn isolated(&self) -> VertexSet {
        self.isolated
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.component(u) == self.component(v)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_forest: bool,
    pub is_connected: bool,
    pub isolated: VertexSet,
    /// Least isolated vertex, or `n` when none is isolated.
    pub v_min: usize,
    /// Isolated vertices form a terminal suffix of `1..=n`.
    pub pi_min: bool,
}
