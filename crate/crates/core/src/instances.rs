//! Generation of the edge sets whose conjecture instances get checked.
//!
//! Every instance `(E, e, f)` is equivalent to one whose pair `{e, f}` is one
//! of two seeds: `{<1,2>, <1,3>}` when the edges share a vertex, or
//! `{<1,2>, <3,4>}` when they do not. Levels of edge sets containing a seed
//! grow one edge at a time, adding only edges among the low-numbered vertices
//! so that isolated vertices stay a terminal suffix. An index database of
//! already-checked instances lets whole branches be skipped.

use std::collections::HashSet;

use parking_lot::Mutex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::index_j;
use crate::error::{Error, Result};
use crate::graph::{edge_count, edge_unrank, rank0, Edge, EdgeSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    /// `e` and `f` share a vertex.
    Adjacent = 1,
    /// `e` and `f` are vertex-disjoint.
    Disjoint = 2,
}

impl Category {
    pub const ALL: [Category; 2] = [Category::Adjacent, Category::Disjoint];

    /// The seed pair `(e_i, f_i)`.
    pub fn seed_edges(self, n: usize) -> (Edge, Edge) {
        let e = Edge::new(n, 1, 2).expect("n >= 3");
        let f = match self {
            Category::Adjacent => Edge::new(n, 1, 3),
            Category::Disjoint => Edge::new(n, 3, 4),
        }
        .expect("seed fits n");
        (e, f)
    }

    pub fn seed(self, n: usize) -> EdgeSet {
        let (e, f) = self.seed_edges(n);
        EdgeSet::empty(n).with(e).with(f)
    }

    fn min_n(self) -> usize {
        match self {
            Category::Adjacent => 3,
            Category::Disjoint => 4,
        }
    }

    /// Categories whose seed fits on `n` vertices.
    pub fn available(n: usize) -> impl Iterator<Item = Category> {
        Category::ALL.into_iter().filter(move |c| n >= c.min_n())
    }
}

/// A triple `(E, e, f)` with distinct `e, f ∈ E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ConjectureInstance {
    pub edges: EdgeSet,
    pub e: Edge,
    pub f: Edge,
}

impl ConjectureInstance {
    pub fn new(edges: EdgeSet, e: Edge, f: Edge) -> Result<Self> {
        if e == f {
            return Err(Error::InvalidProblem("e and f must differ".into()));
        }
        if !edges.contains(e) || !edges.contains(f) {
            return Err(Error::InvalidProblem(format!("{e} and {f} must both lie in E = {{{edges}}}")));
        }
        Ok(ConjectureInstance { edges, e, f })
    }

    pub fn category(&self) -> Category {
        if self.e.shares_vertex(&self.f) {
            Category::Adjacent
        } else {
            Category::Disjoint
        }
    }

    pub fn pair(&self) -> EdgeSet {
        EdgeSet::empty(self.edges.n()).with(self.e).with(self.f)
    }

    /// `j(E, {e, f})`, the key recorded once the instance is checked.
    pub fn key(&self) -> Vec<u8> {
        index_j(self.edges, self.pair()).encode()
    }
}

/// One generation of edge sets, all of size `s`, in generation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub s: usize,
    pub members: Vec<EdgeSet>,
}

/// The two seeds (or only the adjacent one when `n = 3`), adjacent seed first.
pub fn seed_level(n: usize) -> Result<Level> {
    if !(3..=crate::graph::MAX_VERTICES).contains(&n) {
        return Err(Error::VertexCount(n));
    }
    Ok(Level {
        s: 2,
        members: Category::available(n).map(|c| c.seed(n)).collect(),
    })
}

/// Edges that may be added to `edges` while keeping isolated vertices a
/// terminal suffix: all missing edges among `1..=v_min`, plus `<v_min, v_min+1>`.
pub fn f_candidates(edges: EdgeSet) -> Result<Vec<Edge>> {
    let class = edges.classify();
    if !class.pi_min {
        return Err(Error::NotMinimal);
    }
    Ok(candidate_ranks(edges, class.v_min)
        .into_iter()
        .map(|r| edge_unrank(edges.n(), r).expect("rank in range"))
        .collect())
}

fn candidate_ranks(edges: EdgeSet, v_min: usize) -> Vec<usize> {
    let n = edges.n();
    let mut ranks: Vec<usize> = Vec::new();
    for i in 0..v_min {
        for j in i + 1..v_min {
            ranks.push(rank0(n, i, j));
        }
    }
    if v_min < n {
        ranks.push(rank0(n, v_min - 1, v_min));
    }
    ranks.sort_unstable();
    ranks.retain(|&r| !edges.contains_rank(r));
    ranks
}

/// One instance per seed contained in `edges`, adjacent seed first.
pub fn instances_of(edges: EdgeSet) -> Vec<ConjectureInstance> {
    instances_in(edges, None)
}

fn instances_in(edges: EdgeSet, only: Option<Category>) -> Vec<ConjectureInstance> {
    let n = edges.n();
    Category::available(n)
        .filter(|&c| only.is_none_or(|o| o == c) && c.seed(n).is_subset(&edges))
        .map(|c| {
            let (e, f) = c.seed_edges(n);
            ConjectureInstance { edges, e, f }
        })
        .collect()
}

/// Encoded index keys of checked instances. Membership is exact: full keys
/// are stored. Safe to share between threads. Keys are never evicted; a full
/// database refuses new keys with an error.
#[derive(Debug)]
pub struct IndexDatabase {
    n: usize,
    capacity: Option<usize>,
    keys: Mutex<HashSet<Vec<u8>>>,
}

impl IndexDatabase {
    pub fn new(n: usize) -> Self {
        IndexDatabase {
            n,
            capacity: None,
            keys: Mutex::new(HashSet::new()),
        }
    }

    pub fn with_capacity_limit(n: usize, capacity: usize) -> Self {
        IndexDatabase {
            capacity: Some(capacity),
            ..IndexDatabase::new(n)
        }
    }

    pub fn from_keys(n: usize, keys: impl IntoIterator<Item = Vec<u8>>) -> Self {
        IndexDatabase {
            n,
            capacity: None,
            keys: Mutex::new(keys.into_iter().collect()),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, key: &[u8]) -> bool {
        self.keys.lock().contains(key)
    }

    /// Inserts `key`; true if it was not present before.
    pub fn check_and_insert(&self, key: Vec<u8>) -> Result<bool> {
        let mut keys = self.keys.lock();
        if keys.contains(&key) {
            return Ok(false);
        }
        if self.capacity.is_some_and(|c| keys.len() >= c) {
            return Err(Error::Database(format!("capacity of {} keys reached", keys.len())));
        }
        keys.insert(key);
        Ok(true)
    }

    /// Adds every key of `other`, ignoring the capacity limit.
    pub fn merge_from(&self, other: &IndexDatabase) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Database(format!("cannot merge n = {} into n = {}", other.n, self.n)));
        }
        let theirs = other.key_set();
        self.keys.lock().extend(theirs);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.keys.lock().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All keys in bytewise order.
    pub fn sorted_keys(&self) -> Vec<Vec<u8>> {
        let mut keys: Vec<Vec<u8>> = self.keys.lock().iter().cloned().collect();
        keys.sort_unstable();
        keys
    }

    pub fn key_set(&self) -> HashSet<Vec<u8>> {
        self.keys.lock().clone()
    }
}

impl PartialEq for IndexDatabase {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.keys.lock() == *other.keys.lock()
    }
}

/// Counters for one level transition. Instance counts cover distinct candidate sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelStats {
    /// Candidate sets `f + E`, counting repeats.
    pub candidates: usize,
    /// Candidates equal to an earlier candidate of the same level.
    pub duplicates: usize,
    /// Instances carried by the distinct candidates.
    pub generated: usize,
    /// Instances whose key was new (or all of them, without pruning).
    pub checked: usize,
    /// Instances whose key was already recorded.
    pub skipped: usize,
}

/// A level together with the instances that still need checking.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub level: Level,
    pub pending: Vec<ConjectureInstance>,
    pub stats: LevelStats,
}

/// Decides which instances of `sets` need checking and records their keys.
///
/// Without pruning every set is kept and every instance is pending. With
/// pruning a set is kept when at least one of its instance keys is new, and
/// only instances with new keys are pending. Decisions follow the order of
/// `sets`; key computation runs in parallel.
fn admit(
    sets: Vec<EdgeSet>,
    db: &IndexDatabase,
    scope: Scope,
    stats: &mut LevelStats,
) -> Result<(Vec<EdgeSet>, Vec<ConjectureInstance>)> {
    let prune = scope.prune;
    let keyed: Vec<Vec<(ConjectureInstance, Vec<u8>)>> = sets
        .par_iter()
        .map(|&s| instances_in(s, scope.only).into_iter().map(|i| (i, i.key())).collect())
        .collect();
    let mut kept = Vec::new();
    let mut pending = Vec::new();
    for (set, instances) in sets.into_iter().zip(keyed) {
        stats.generated += instances.len();
        let mut any_new = false;
        for (instance, key) in instances {
            let new = db.check_and_insert(key)?;
            if new || !prune {
                pending.push(instance);
                stats.checked += 1;
            } else {
                stats.skipped += 1;
            }
            any_new |= new;
        }
        if any_new || !prune {
            kept.push(set);
        }
    }
    Ok((kept, pending))
}

/// How levels are grown: with or without index pruning, over both seed
/// categories or only one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Scope {
    pub prune: bool,
    pub only: Option<Category>,
}

impl Scope {
    pub fn new(prune: bool) -> Self {
        Scope { prune, only: None }
    }
}

/// The seed level with its instances, filtered through `db` like any other level.
pub fn expand_seeds(n: usize, db: &IndexDatabase, prune: bool) -> Result<Expansion> {
    expand_seeds_in(n, db, Scope::new(prune))
}

pub fn expand_seeds_in(n: usize, db: &IndexDatabase, scope: Scope) -> Result<Expansion> {
    let mut seeds = seed_level(n)?;
    if let Some(only) = scope.only {
        seeds.members.retain(|&m| m == only.seed(n));
        if seeds.members.is_empty() {
            return Err(Error::VertexCount(n));
        }
    }
    let mut stats = LevelStats {
        candidates: seeds.members.len(),
        ..LevelStats::default()
    };
    let (_, pending) = admit(seeds.members.clone(), db, scope, &mut stats)?;
    // The seeds always stay: their supersets are the whole search space.
    Ok(Expansion {
        level: seeds,
        pending,
        stats,
    })
}

/// Builds level `s + 1` by adding each candidate edge to each member, in
/// member order then edge order, dropping repeats.
pub fn next_level(level: &Level, db: &IndexDatabase, prune: bool) -> Result<Expansion> {
    next_level_in(level, db, Scope::new(prune))
}

pub fn next_level_in(level: &Level, db: &IndexDatabase, scope: Scope) -> Result<Expansion> {
    let mut stats = LevelStats::default();
    let mut seen = HashSet::new();
    let mut candidates = Vec::new();
    for &members in &level.members {
        let class = members.classify();
        if !class.pi_min {
            return Err(Error::NotMinimal);
        }
        for r in candidate_ranks(members, class.v_min) {
            stats.candidates += 1;
            let grown = members.with_rank(r);
            if seen.insert(grown.bits()) {
                candidates.push(grown);
            } else {
                stats.duplicates += 1;
            }
        }
    }
    drop(seen);
    let (kept, pending) = admit(candidates, db, scope, &mut stats)?;
    Ok(Expansion {
        level: Level {
            s: level.s + 1,
            members: kept,
        },
        pending,
        stats,
    })
}

/// Number of edges of `K_n`; the last level index.
pub fn max_level(n: usize) -> usize {
    edge_count(n)
}
