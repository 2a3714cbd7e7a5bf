mod common;

use fna::counting::{CountingProblem, MemoMode, MemoStore, Property};
use fna::graph::{Edge, EdgeSet};
use fna::instances::ConjectureInstance;
use fna::verify::{check_instance, run_verification, run_with_database, RunConfig};
use rand::seq::SliceRandom;

use common::{brute_count, random_edge_set, rng};

#[test]
fn check_instance_matches_oracle() {
    let mut r = rng(21);
    let store = MemoStore::unbounded();
    let mut done = 0;
    while done < 1000 {
        let n = 4 + done % 5;
        let edges = random_edge_set(&mut r, n, 12);
        let mut list: Vec<Edge> = edges.edges().collect();
        if list.len() < 2 {
            continue;
        }
        list.shuffle(&mut r);
        let (e, f) = (list[0], list[1]);
        let instance = ConjectureInstance::new(edges, e, f).unwrap();
        let none = EdgeSet::empty(n);
        let (se, sf) = (none.with(e), none.with(f));
        for property in [Property::Forest, Property::Connected] {
            let brute = |x: EdgeSet, y: EdgeSet| brute_count(&CountingProblem::new(edges, x, y).unwrap(), property);
            let mode = if done % 2 == 0 { MemoMode::Exact } else { MemoMode::Index };
            let got = check_instance(&instance, property, mode, &store).unwrap();
            let expected = [
                brute(se.union(sf), none),
                brute(none, se.union(sf)),
                brute(se, sf),
                brute(sf, se),
            ];
            let c = got.counts;
            assert_eq!([c.both.get(), c.neither.get(), c.e_only.get(), c.f_only.get()], expected);
            assert_eq!(got.lhs.get(), expected[0] * expected[1]);
            assert_eq!(got.rhs.get(), expected[2] * expected[3]);
            assert_eq!(got.holds, got.lhs <= got.rhs);
            assert!(got.holds);
        }
        done += 1;
    }
}

#[test]
fn pruned_and_unpruned_agree_on_five_vertices() {
    for property in [Property::Forest, Property::Connected] {
        let mut pruned = RunConfig::new(5, property);
        pruned.parallel_width = 2;
        let mut full = pruned.clone();
        full.prune = false;
        let (a, db_a) = run_with_database(&pruned).unwrap();
        let (b, db_b) = run_with_database(&full).unwrap();
        assert!(a.violations.is_empty() && b.violations.is_empty());
        assert_eq!(db_a.key_set(), db_b.key_set());
        assert!(a.totals.checked < b.totals.checked);
    }
}

#[test]
fn reports_are_deterministic() {
    let mut c = RunConfig::new(5, Property::Forest);
    c.parallel_width = 3;
    let a = run_verification(&c).unwrap();
    c.parallel_width = 1;
    let b = run_verification(&c).unwrap();
    let shape = |r: &fna::verify::Report| -> Vec<(usize, usize, usize, usize, usize)> {
        r.levels.iter().map(|l| (l.s, l.level_size, l.generated, l.checked, l.db_size)).collect()
    };
    assert_eq!(shape(&a), shape(&b));
}

#[test]
fn category_runs_split_the_work() {
    let mut c = RunConfig::new(5, Property::Forest);
    c.prune = false;
    let both = run_verification(&c).unwrap();
    c.category = Some(fna::instances::Category::Adjacent);
    let adjacent = run_verification(&c).unwrap();
    c.category = Some(fna::instances::Category::Disjoint);
    let disjoint = run_verification(&c).unwrap();
    assert!(adjacent.violations.is_empty() && disjoint.violations.is_empty());
    assert!(adjacent.totals.checked > 0 && disjoint.totals.checked > 0);
    assert!(both.violations.is_empty());
}
