//! Forest counting by pivot expansion with a shared memo table.
//!
//! For `X ⊆ D` with free edges `d_1 < … < d_k` (rank order),
//! `M^X(D) = Σ_j M^{X_j}(D − d_j) + [D is a forest]` where
//! `X_j = X + {d_1, …, d_{j−1}}`. Sub-results are cached either under the
//! exact pair `(D, X)` or under the index key `j(D, X)`, which merges
//! problems known to have equal counts.

use std::hash::{Hash, Hasher};
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};

use lru::LruCache;
use parking_lot::Mutex;

use super::{Count, CountingProblem};
use crate::canonical::index_j;
use crate::error::Result;
use crate::graph::{ends0, reach, Bits64, EdgeSet};

/// Sub-problems with fewer free edges are expanded directly instead of cached.
const MEMO_MIN_FREE: usize = 4;
const SHARDS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MemoMode {
    #[default]
    Exact,
    Index,
}

impl std::str::FromStr for MemoMode {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(MemoMode::Exact),
            "index" => Ok(MemoMode::Index),
            other => Err(crate::error::Error::Parse(format!("unknown memo mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MemoKey {
    Exact { n: u8, domain: u64, contain: u64 },
    Index(Vec<u8>),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct MemoStats {
    pub hits: u64,
    pub misses: u64,
    pub entries: usize,
}

/// Thread-safe memo table, sharded, with optional least-recently-used eviction.
///
/// Eviction only costs recomputation; lookups never return a wrong value.
pub struct MemoStore {
    shards: Vec<Mutex<LruCache<MemoKey, Count>>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl MemoStore {
    pub fn unbounded() -> Self {
        MemoStore {
            shards: (0..SHARDS).map(|_| Mutex::new(LruCache::unbounded())).collect(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    /// At most `capacity` entries in total (rounded up to a multiple of the shard count).
    pub fn with_capacity(capacity: usize) -> Self {
        let per_shard = NonZeroUsize::new(capacity.div_ceil(SHARDS).max(1)).expect("non-zero");
        MemoStore {
            shards: (0..SHARDS).map(|_| Mutex::new(LruCache::new(per_shard))).collect(),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    fn shard(&self, key: &MemoKey) -> &Mutex<LruCache<MemoKey, Count>> {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        key.hash(&mut h);
        &self.shards[h.finish() as usize % SHARDS]
    }

    pub fn get(&self, key: &MemoKey) -> Option<Count> {
        let found = self.shard(key).lock().get(key).copied();
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    /// Inserts unless present; returns the stored value either way.
    pub fn get_or_insert(&self, key: MemoKey, value: Count) -> Count {
        let mut shard = self.shard(&key).lock();
        *shard.get_or_insert(key, || value)
    }

    pub fn len(&self) -> usize {
        self.shards.iter().map(|s| s.lock().len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            entries: self.len(),
        }
    }
}

impl Default for MemoStore {
    fn default() -> Self {
        MemoStore::unbounded()
    }
}

impl std::fmt::Debug for MemoStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MemoStore").field("stats", &self.stats()).finish()
    }
}

/// Counts forests `S` with `X ⊆ S ⊆ E − Y` by memoised pivot expansion.
pub fn count_forests_memo(problem: &CountingProblem, mode: MemoMode, store: &MemoStore) -> Result<Count> {
    let reduced = problem.reduced();
    Expansion { mode, store }.count(reduced.edges(), reduced.contain())
}

struct Expansion<'a> {
    mode: MemoMode,
    store: &'a MemoStore,
}

impl Expansion<'_> {
    fn count(&self, domain: EdgeSet, x: EdgeSet) -> Result<Count> {
        if !x.is_forest() {
            return Ok(Count::ZERO);
        }
        let (core, bridges) = normalize(domain, x);
        let free = core.difference(x).len();
        if free == 0 || core.is_forest() {
            return Count::pow2(free + bridges);
        }
        let value = if free < MEMO_MIN_FREE {
            self.expand(core, x)?
        } else {
            let key = match self.mode {
                MemoMode::Exact => MemoKey::Exact {
                    n: core.n() as u8,
                    domain: core.bits(),
                    contain: x.bits(),
                },
                MemoMode::Index => MemoKey::Index(index_j(core, x).encode()),
            };
            match self.store.get(&key) {
                Some(v) => v,
                None => {
                    let v = self.expand(core, x)?;
                    self.store.get_or_insert(key, v)
                }
            }
        };
        value.checked_shl(bridges)
    }

    fn expand(&self, domain: EdgeSet, x: EdgeSet) -> Result<Count> {
        let mut total = Count::ZERO;
        let mut xj = x;
        for d in domain.difference(x).ranks() {
            if !xj.is_forest() {
                return Ok(total);
            }
            total = total.checked_add(self.count(domain.without_rank(d), xj)?)?;
            xj = xj.with_rank(d);
        }
        // xj == domain here.
        if xj.is_forest() {
            total = total.checked_add(Count::ONE)?;
        }
        Ok(total)
    }
}

/// Simplifies `(D, X)` with `X` a forest, returning `(D', b)` such that
/// `M^X(D) = 2^b · M^X(D')`.
///
/// Free edges closing a cycle with `X` lie in no counted forest, so they are
/// dropped. Free edges on no cycle of `D` can be added to or removed from any
/// counted forest, so each contributes a factor of two.
fn normalize(domain: EdgeSet, x: EdgeSet) -> (EdgeSet, usize) {
    let n = domain.n();
    let comp = x.component_masks();
    let mut core = domain;
    for r in Bits64(domain.difference(x).bits()) {
        let (a, b) = ends0(n, r);
        if comp[a] >> b & 1 == 1 {
            core = core.without_rank(r);
        }
    }
    let adj = core.adjacency();
    let mut bridges = 0;
    let mut trimmed = core;
    for r in Bits64(core.difference(x).bits()) {
        let (a, b) = ends0(n, r);
        let mut without = adj;
        without[a] &= !(1 << b);
        without[b] &= !(1 << a);
        if reach(&without, a) >> b & 1 == 0 {
            trimmed = trimmed.without_rank(r);
            bridges += 1;
        }
    }
    (trimmed, bridges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::count_forests_oracle;

    fn set(n: usize, s: &str) -> EdgeSet {
        EdgeSet::parse(n, s).unwrap()
    }

    fn oracle(d: EdgeSet, x: EdgeSet) -> u128 {
        count_forests_oracle(&CountingProblem::new(d, x, EdgeSet::empty(d.n())).unwrap())
            .unwrap()
            .get()
    }

    #[test]
    fn triangle_expansion_terms() {
        // Pivots 1-2 < 1-3 < 2-3: terms M^∅({13,23}), M^{12}({12,23}), M^{12,13}({12,13}), [K3 forest].
        let k3 = set(3, "1-2,1-3,2-3");
        let terms = [
            oracle(set(3, "1-3,2-3"), EdgeSet::empty(3)),
            oracle(set(3, "1-2,2-3"), set(3, "1-2")),
            oracle(set(3, "1-2,1-3"), set(3, "1-2,1-3")),
            k3.is_forest() as u128,
        ];
        assert_eq!(terms, [4, 2, 1, 0]);
        for mode in [MemoMode::Exact, MemoMode::Index] {
            let store = MemoStore::unbounded();
            let p = CountingProblem::unconstrained(k3);
            assert_eq!(count_forests_memo(&p, mode, &store).unwrap().get(), 7);
        }
    }

    #[test]
    fn cyclic_constraint_gives_zero() {
        let k4 = EdgeSet::complete(4);
        let p = CountingProblem::new(k4, set(4, "1-2,2-3,1-3"), EdgeSet::empty(4)).unwrap();
        assert_eq!(count_forests_memo(&p, MemoMode::Exact, &MemoStore::unbounded()).unwrap(), Count::ZERO);
    }

    #[test]
    fn normalization_preserves_counts() {
        for bits in (0..1u64 << 10).step_by(3) {
            let d = EdgeSet::from_bits(5, bits).unwrap();
            for xbits in crate::counting::submasks(bits).step_by(5) {
                let x = EdgeSet::from_bits(5, xbits).unwrap();
                if !x.is_forest() {
                    continue;
                }
                let (core, b) = normalize(d, x);
                assert!(x.is_subset(&core));
                assert_eq!(oracle(d, x), oracle(core, x) << b, "{d:?} {x:?}");
            }
        }
    }

    #[test]
    fn bounded_store_stays_exact() {
        let store = MemoStore::with_capacity(8);
        let k6 = CountingProblem::unconstrained(EdgeSet::complete(6));
        for _ in 0..2 {
            assert_eq!(count_forests_memo(&k6, MemoMode::Exact, &store).unwrap().get(), 2932);
        }
        assert!(store.len() <= SHARDS);
    }

    #[test]
    fn store_reuses_entries() {
        let store = MemoStore::unbounded();
        let k6 = CountingProblem::unconstrained(EdgeSet::complete(6));
        count_forests_memo(&k6, MemoMode::Index, &store).unwrap();
        let before = store.stats().hits;
        count_forests_memo(&k6, MemoMode::Index, &store).unwrap();
        assert!(store.stats().hits > before);
    }
}
