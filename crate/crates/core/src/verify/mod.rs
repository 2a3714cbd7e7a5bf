//! Verification runs: checking conjecture instances level by level, with a
//! persistent index database, resumable checkpoints and a JSON report.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{count, Count, CountingProblem, MemoMode, MemoStats, MemoStore, Property};
use crate::error::{Error, Result};
use crate::graph::{edge_count, edge_unrank, EdgeSet};
use crate::instances::{
    expand_seeds_in, next_level_in, Category, ConjectureInstance, Expansion, IndexDatabase, Level, Scope,
};

mod db;

pub use db::{db_from_bytes, db_load, db_merge, db_save, db_to_bytes, DB_MAGIC, DB_VERSION};

/// The four constrained counts of an instance `(E, e, f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceCounts {
    /// Containing both `e` and `f`.
    pub both: Count,
    /// Avoiding both.
    pub neither: Count,
    /// Containing `e`, avoiding `f`.
    pub e_only: Count,
    /// Containing `f`, avoiding `e`.
    pub f_only: Count,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub edges: EdgeSet,
    pub e: crate::graph::Edge,
    pub f: crate::graph::Edge,
    pub category: Category,
    pub counts: InstanceCounts,
    /// `both * neither`.
    pub lhs: Count,
    /// `e_only * f_only`.
    pub rhs: Count,
    pub holds: bool,
    /// Hex of the encoded key `j(E, {e, f})`.
    pub key: String,
    #[serde(serialize_with = "micros")]
    pub elapsed: Duration,
}

fn micros<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(d.as_micros() as u64)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Computes the four counts of `instance` and compares `both * neither`
/// with `e_only * f_only` exactly.
pub fn check_instance(
    instance: &ConjectureInstance,
    property: Property,
    mode: MemoMode,
    store: &MemoStore,
) -> Result<InstanceResult> {
    let start = Instant::now();
    let n = instance.edges.n();
    let none = EdgeSet::empty(n);
    let (e, f) = (none.with(instance.e), none.with(instance.f));
    let pair = e.union(f);
    let run = |contain: EdgeSet, avoid: EdgeSet| -> Result<Count> {
        count(&CountingProblem::new(instance.edges, contain, avoid)?, property, mode, store)
    };
    let counts = InstanceCounts {
        both: run(pair, none)?,
        neither: run(none, pair)?,
        e_only: run(e, f)?,
        f_only: run(f, e)?,
    };
    let lhs = counts.both.checked_mul(counts.neither)?;
    let rhs = counts.e_only.checked_mul(counts.f_only)?;
    Ok(InstanceResult {
        edges: instance.edges,
        e: instance.e,
        f: instance.f,
        category: instance.category(),
        counts,
        lhs,
        rhs,
        holds: lhs <= rhs,
        key: hex(&instance.key()),
        elapsed: start.elapsed(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub n: usize,
    pub max_edges: usize,
    pub property: Property,
    pub prune: bool,
    pub memo_mode: MemoMode,
    /// Memo entries kept before least-recently-used eviction; `None` is unbounded.
    pub memo_capacity: Option<usize>,
    pub db_path: Option<PathBuf>,
    pub report_path: Option<PathBuf>,
    /// Worker threads for instance checks; 0 uses every core.
    pub parallel_width: usize,
    /// Restrict to one seed category.
    pub category: Option<Category>,
    /// Continue from the checkpoint stored next to `db_path`.
    pub resume: bool,
}

pub const DEFAULT_MEMO_CAPACITY: usize = 1 << 21;

impl RunConfig {
    /// Full pruned run over every level.
    pub fn new(n: usize, property: Property) -> Self {
        RunConfig {
            n,
            max_edges: edge_count(n),
            property,
            prune: true,
            memo_mode: MemoMode::Exact,
            memo_capacity: Some(DEFAULT_MEMO_CAPACITY),
            db_path: None,
            report_path: None,
            parallel_width: 0,
            category: None,
            resume: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(3..=crate::graph::MAX_VERTICES).contains(&self.n) {
            return Err(Error::VertexCount(self.n));
        }
        if !(2..=edge_count(self.n)).contains(&self.max_edges) {
            return Err(Error::InvalidParams(format!(
                "max_edges = {} must lie in 2..={} for n = {}",
                self.max_edges,
                edge_count(self.n),
                self.n
            )));
        }
        if self.category == Some(Category::Disjoint) && self.n < 4 {
            return Err(Error::InvalidParams("the disjoint seed needs n >= 4".into()));
        }
        if self.resume && self.db_path.is_none() {
            return Err(Error::InvalidParams("resuming needs a database path".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelReport {
    pub s: usize,
    /// Edge sets kept for growing the next level.
    pub level_size: usize,
    /// Candidate sets before removing repeats.
    pub candidates: usize,
    pub duplicates: usize,
    /// Instances carried by the distinct candidate sets.
    pub generated: usize,
    pub checked: usize,
    pub skipped: usize,
    pub db_size: usize,
    pub violations: usize,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Totals {
    pub generated: usize,
    pub checked: usize,
    pub skipped: usize,
    pub violations: usize,
    pub db_size: usize,
    pub memo: MemoStats,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub levels: Vec<LevelReport>,
    pub violations: Vec<InstanceResult>,
    pub totals: Totals,
    /// Seconds.
    pub wall_time: f64,
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Progress marker written next to the database after every finished level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    property: Property,
    prune: bool,
    category: Option<Category>,
    /// Last level whose instances are all checked.
    completed: usize,
    /// Members of that level, as edge bit masks.
    frontier: Vec<u64>,
    levels: Vec<LevelReport>,
    /// Failing instances so far as (edge bits, e rank, f rank).
    violations: Vec<(u64, usize, usize)>,
}

fn checkpoint_path(db_path: &Path) -> PathBuf {
    let mut p = db_path.as_os_str().to_owned();
    p.push(".progress");
    PathBuf::from(p)
}

impl Checkpoint {
    fn load(db_path: &Path) -> Result<Option<Checkpoint>> {
        let path = checkpoint_path(db_path);
        if !path.exists() {
            return Ok(None);
        }
        Ok(Some(serde_json::from_str(&fs::read_to_string(path)?)?))
    }

    fn save(&self, db_path: &Path) -> Result<()> {
        db::write_atomic(&checkpoint_path(db_path), serde_json::to_string(self)?.as_bytes())
    }

    fn matches(&self, config: &RunConfig) -> bool {
        self.n == config.n && self.property == config.property && self.category.is_none_or(|c| Some(c) == config.category)
    }
}

/// State carried from level to level.
struct Run<'a> {
    config: &'a RunConfig,
    scope: Scope,
    db: IndexDatabase,
    store: MemoStore,
    pool: rayon::ThreadPool,
    levels: Vec<LevelReport>,
    violations: Vec<InstanceResult>,
}

impl Run<'_> {
    fn check_level(&mut self, expansion: Expansion, started: Instant) -> Result<Level> {
        let Expansion { level, pending, stats } = expansion;
        let (property, mode, store) = (self.config.property, self.config.memo_mode, &self.store);
        let results: Vec<InstanceResult> = self.pool.install(|| {
            pending
                .par_iter()
                .map(|i| check_instance(i, property, mode, store))
                .filter(|r| !matches!(r, Ok(r) if r.holds))
                .collect::<Result<Vec<_>>>()
        })?;
        for v in &results {
            log::warn!("violation: E = {{{}}}, e = {}, f = {}, {} > {}", v.edges, v.e, v.f, v.lhs, v.rhs);
        }
        let report = LevelReport {
            s: level.s,
            level_size: level.members.len(),
            candidates: stats.candidates,
            duplicates: stats.duplicates,
            generated: stats.generated,
            checked: stats.checked,
            skipped: stats.skipped,
            db_size: self.db.len(),
            violations: results.len(),
            seconds: started.elapsed().as_secs_f64(),
        };
        log::info!(
            "level {}: {} sets, {} checked, {} skipped, {} keys, {:.2}s",
            report.s,
            report.level_size,
            report.checked,
            report.skipped,
            report.db_size,
            report.seconds
        );
        self.levels.push(report);
        self.violations.extend(results);
        if let Some(path) = &self.config.db_path {
            db_save(&self.db, path)?;
            self.checkpoint(&level).save(path)?;
        }
        Ok(level)
    }

    fn checkpoint(&self, level: &Level) -> Checkpoint {
        Checkpoint {
            n: self.config.n,
            property: self.config.property,
            prune: self.config.prune,
            category: self.config.category,
            completed: level.s,
            frontier: level.members.iter().map(|m| m.bits()).collect(),
            levels: self.levels.clone(),
            violations: self
                .violations
                .iter()
                .map(|v| (v.edges.bits(), v.e.rank(self.config.n), v.f.rank(self.config.n)))
                .collect(),
        }
    }
}

/// Runs the level-by-level verification described by `config`.
///
/// With a database path the database and a progress marker are flushed after
/// every level. An existing database is reused only when its marker shows a
/// finished run of the same problem covering at least `max_edges`, or when
/// `resume` asks to continue from the marker.
pub fn run_verification(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let started = Instant::now();
    let n = config.n;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.parallel_width)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    let store = match config.memo_capacity {
        Some(c) => MemoStore::with_capacity(c),
        None => MemoStore::unbounded(),
    };
    let mut run = Run {
        config,
        scope: Scope {
            prune: config.prune,
            only: config.category,
        },
        db: IndexDatabase::new(n),
        store,
        pool,
        levels: Vec::new(),
        violations: Vec::new(),
    };

    let mut resume_from: Option<Level> = None;
    if let Some(path) = config.db_path.as_deref().filter(|p| p.exists()) {
        let db = db::db_load(path)?;
        if db.n() != n {
            return Err(Error::Database(format!("database is for n = {}, run is for n = {n}", db.n())));
        }
        let marker = Checkpoint::load(path)?
            .ok_or_else(|| Error::Database("existing database has no progress marker".into()))?;
        if !marker.matches(config) {
            return Err(Error::Database(
                "existing database was built for a different vertex count, property or category".into(),
            ));
        }
        if config.resume {
            let members = marker
                .frontier
                .iter()
                .map(|&b| EdgeSet::from_bits(n, b))
                .collect::<Result<Vec<_>>>()?;
            for &(bits, e, f) in &marker.violations {
                let instance =
                    ConjectureInstance::new(EdgeSet::from_bits(n, bits)?, edge_unrank(n, e)?, edge_unrank(n, f)?)?;
                run.violations.push(check_instance(&instance, config.property, config.memo_mode, &run.store)?);
            }
            run.levels = marker.levels;
            resume_from = Some(Level {
                s: marker.completed,
                members,
            });
        } else if marker.completed < config.max_edges {
            return Err(Error::Database(format!(
                "existing database covers levels up to {} only; pass resume to extend it to {}",
                marker.completed, config.max_edges
            )));
        }
        run.db = db;
    }

    let mut level = match resume_from {
        Some(level) => level,
        None => {
            let t = Instant::now();
            let seeds = expand_seeds_in(n, &run.db, run.scope)?;
            run.check_level(seeds, t)?
        }
    };
    while level.s < config.max_edges && !level.members.is_empty() {
        let t = Instant::now();
        let expansion = next_level_in(&level, &run.db, run.scope)?;
        drop(level);
        level = run.check_level(expansion, t)?;
    }

    let totals = Totals {
        generated: run.levels.iter().map(|l| l.generated).sum(),
        checked: run.levels.iter().map(|l| l.checked).sum(),
        skipped: run.levels.iter().map(|l| l.skipped).sum(),
        violations: run.violations.len(),
        db_size: run.db.len(),
        memo: run.store.stats(),
    };
    let report = Report {
        config: config.clone(),
        levels: run.levels,
        violations: run.violations,
        totals,
        wall_time: started.elapsed().as_secs_f64(),
    };
    if let Some(path) = &config.report_path {
        db::write_atomic(path, report.to_json()?.as_bytes())?;
    }
    Ok(report)
}

/// Runs `config` and also returns the final index database.
pub fn run_with_database(config: &RunConfig) -> Result<(Report, IndexDatabase)> {
    let dir = tempdir_for_run()?;
    let path = dir.join("keys.db");
    let mut local = config.clone();
    local.db_path = Some(path.clone());
    local.resume = false;
    let report = run_verification(&local);
    let db = report.as_ref().ok().map(|_| db_load(&path));
    let _ = fs::remove_dir_all(&dir);
    let mut report = report?;
    report.config.db_path = config.db_path.clone();
    Ok((report, db.expect("report succeeded")?))
}

fn tempdir_for_run() -> Result<PathBuf> {
    use std::sync::atomic::{AtomicUsize, Ordering};
    static NEXT: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!(
        "fna-run-{}-{}",
        std::process::id(),
        NEXT.fetch_add(1, Ordering::Relaxed)
    ));
    fs::create_dir_all(&dir)?;
    Ok(dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    fn instance(n: usize, edges: &str, e: (usize, usize), f: (usize, usize)) -> ConjectureInstance {
        ConjectureInstance::new(
            EdgeSet::parse(n, edges).unwrap(),
            Edge::new(n, e.0, e.1).unwrap(),
            Edge::new(n, f.0, f.1).unwrap(),
        )
        .unwrap()
    }

    fn counts(r: &InstanceResult) -> (u128, u128, u128, u128) {
        (r.counts.both.get(), r.counts.neither.get(), r.counts.e_only.get(), r.counts.f_only.get())
    }

    #[test]
    fn instance_examples() {
        let store = MemoStore::unbounded();
        let k3 = instance(3, "1-2,1-3,2-3", (1, 2), (1, 3));
        let r = check_instance(&k3, Property::Forest, MemoMode::Exact, &store).unwrap();
        assert_eq!(counts(&r), (1, 2, 2, 2));
        assert_eq!((r.lhs.get(), r.rhs.get()), (2, 4));
        assert!(r.holds);
        let r = check_instance(&k3, Property::Connected, MemoMode::Exact, &store).unwrap();
        assert_eq!(counts(&r), (2, 0, 1, 1));
        assert!(r.holds);
        let path = instance(3, "1-2,2-3", (1, 2), (2, 3));
        let r = check_instance(&path, Property::Forest, MemoMode::Index, &store).unwrap();
        assert_eq!(counts(&r), (1, 1, 1, 1));
        assert_eq!(r.lhs, r.rhs);
    }

    #[test]
    fn config_validation() {
        let mut c = RunConfig::new(4, Property::Forest);
        assert!(c.validate().is_ok());
        c.max_edges = 7;
        assert!(c.validate().is_err());
        c.max_edges = 1;
        assert!(c.validate().is_err());
        assert!(RunConfig::new(2, Property::Forest).validate().is_err());
        let mut c = RunConfig::new(3, Property::Forest);
        c.category = Some(Category::Disjoint);
        assert!(c.validate().is_err());
    }

    #[test]
    fn small_runs_hold() {
        for (n, property) in [(3, Property::Forest), (4, Property::Forest), (4, Property::Connected)] {
            for prune in [true, false] {
                let mut c = RunConfig::new(n, property);
                c.prune = prune;
                c.parallel_width = 2;
                let r = run_verification(&c).unwrap();
                assert!(r.violations.is_empty());
                assert_eq!(r.levels[0].s, 2);
                for l in &r.levels {
                    assert_eq!(l.generated, l.checked + l.skipped);
                }
                if !prune {
                    assert_eq!(r.totals.skipped, 0);
                }
            }
        }
    }

    #[test]
    fn report_is_json() {
        let r = run_verification(&RunConfig::new(4, Property::Forest)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        for field in ["config", "levels", "violations", "totals", "wall_time"] {
            assert!(v.get(field).is_some(), "{field}");
        }
        assert!(v["levels"][0].get("db_size").is_some());
    }

    #[test]
    fn checkpoint_resume_and_warm_database() {
        let dir = tempfile::tempdir().unwrap();
        let db_path = dir.path().join("n5.db");
        let mut partial = RunConfig::new(5, Property::Forest);
        partial.db_path = Some(db_path.clone());
        partial.max_edges = 5;
        let first = run_verification(&partial).unwrap();
        assert_eq!(first.levels.last().unwrap().s, 5);

        let mut full = partial.clone();
        full.max_edges = 10;
        assert!(run_verification(&full).is_err());
        full.resume = true;
        let resumed = run_verification(&full).unwrap();
        let reference = run_verification(&RunConfig::new(5, Property::Forest)).unwrap();
        let strip = |ls: &[LevelReport]| -> Vec<(usize, usize, usize, usize)> {
            ls.iter().map(|l| (l.s, l.level_size, l.checked, l.skipped)).collect()
        };
        assert_eq!(strip(&resumed.levels), strip(&reference.levels));
        assert_eq!(resumed.totals.db_size, reference.totals.db_size);

        full.resume = false;
        let warm = run_verification(&full).unwrap();
        assert_eq!(warm.totals.checked, 0);
        assert!(warm.violations.is_empty());

        let mut other = full.clone();
        other.property = Property::Connected;
        assert!(run_verification(&other).is_err());
    }
}
