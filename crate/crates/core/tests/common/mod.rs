//! Independent brute-force oracles and random generators shared by the
//! integration tests, plus the checks that compare library results with them.
//! The oracles themselves never call the counting or canonical-labelling code;
//! `connected_graphs` uses canonical forms only to list isomorphism classes.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use fna::canonical::{canonical_form, index_i, OrderedPartition, Permutation};
use fna::counting::{CountingProblem, Property};
use fna::graph::{Edge, EdgeSet, VertexSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn pairs(edges: EdgeSet) -> Vec<(usize, usize)> {
    edges.edges().map(|e| (e.x(), e.y())).collect()
}

fn root(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        v = parent[v];
    }
    v
}

/// Acyclic by union-find on explicit vertex pairs.
pub fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    for &(x, y) in edges {
        let (a, b) = (root(&mut parent, x), root(&mut parent, y));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Every vertex `1..=n` reachable from vertex 1.
pub fn spanning_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(v) = stack.pop() {
        for &(x, y) in edges {
            for (a, b) in [(x, y), (y, x)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen[1..].iter().all(|&s| s)
}

/// Counts subsets `S` with `X ⊆ S ⊆ E − Y` having `property`, by listing them.
pub fn brute_count(problem: &CountingProblem, property: Property) -> u128 {
    let n = problem.n();
    let all = pairs(problem.edges());
    let x: BTreeSet<(usize, usize)> = pairs(problem.contain()).into_iter().collect();
    let y: BTreeSet<(usize, usize)> = pairs(problem.avoid()).into_iter().collect();
    let free: Vec<(usize, usize)> = all.iter().copied().filter(|e| !x.contains(e) && !y.contains(e)).collect();
    assert!(free.len() <= 22, "oracle budget");
    let mut total = 0;
    for mask in 0u32..1 << free.len() {
        let mut subset: Vec<(usize, usize)> = x.iter().copied().collect();
        subset.extend((0..free.len()).filter(|i| mask >> i & 1 == 1).map(|i| free[i]));
        let ok = match property {
            Property::Forest => acyclic(n, &subset),
            Property::Connected => spanning_connected(n, &subset),
        };
        total += ok as u128;
    }
    total
}

pub fn random_edge_set(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> EdgeSet {
    let mut all: Vec<(usize, usize)> = (1..=n).flat_map(|x| (x + 1..=n).map(move |y| (x, y))).collect();
    all.shuffle(rng);
    let size = rng.gen_range(0..=max_edges.min(all.len()));
    EdgeSet::from_pairs(n, &all[..size]).unwrap()
}

/// A random `(E, X, Y)` with `n` in `3..=max_n` and `|E| <= max_edges`.
pub fn random_problem(rng: &mut ChaCha8Rng, max_n: usize, max_edges: usize) -> CountingProblem {
    let n = rng.gen_range(3..=max_n);
    let edges = random_edge_set(rng, n, max_edges);
    let (mut x, mut y) = (EdgeSet::empty(n), EdgeSet::empty(n));
    for e in edges.edges() {
        match rng.gen_range(0..6) {
            0 => x = x.with(e),
            1 => y = y.with(e),
            _ => {}
        }
    }
    CountingProblem::new(edges, x, y).unwrap()
}

/// 0-based image table of a uniformly random permutation.
pub fn random_image(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut image: Vec<usize> = (0..n).collect();
    image.shuffle(rng);
    image
}

pub fn permutation(image: &[usize]) -> Permutation {
    Permutation::from_images(&image.iter().map(|w| w + 1).collect::<Vec<_>>()).unwrap()
}

/// Every permutation of `0..n` as a 0-based image table.
pub fn all_images(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Image of an edge set under a 0-based vertex map, rebuilt from pairs.
pub fn apply(edges: EdgeSet, image: &[usize]) -> EdgeSet {
    let mapped: Vec<(usize, usize)> = pairs(edges)
        .into_iter()
        .map(|(x, y)| {
            let (a, b) = (image[x - 1] + 1, image[y - 1] + 1);
            (a.min(b), a.max(b))
        })
        .collect();
    EdgeSet::from_pairs(edges.n(), &mapped).unwrap()
}

/// Cells as vertex-bit masks (bit `v - 1` for vertex `v`).
pub fn cell_masks(pi: &OrderedPartition) -> Vec<u16> {
    pi.cells()
        .iter()
        .map(|c| c.iter().fold(0u16, |m, v| m | 1 << (v - 1)))
        .collect()
}

pub fn apply_cells(cells: &[u16], image: &[usize]) -> Vec<u16> {
    cells
        .iter()
        .map(|&c| (0..image.len()).filter(|v| c >> v & 1 == 1).fold(0u16, |m, v| m | 1 << image[v]))
        .collect()
}

pub fn partition_from_masks(n: usize, cells: &[u16]) -> OrderedPartition {
    let sets = cells
        .iter()
        .map(|&c| VertexSet::from_labels((0..n).filter(|v| c >> v & 1 == 1).map(|v| v + 1)))
        .collect();
    OrderedPartition::new(n, sets).unwrap()
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> OrderedPartition {
    let k = rng.gen_range(1..=n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cells = vec![0u16; k];
    // The first k vertices seed the k cells so none is empty.
    for (i, &v) in order.iter().enumerate() {
        let c = if i < k { i } else { rng.gen_range(0..k) };
        cells[c] |= 1 << v;
    }
    partition_from_masks(n, &cells)
}

/// Every ordered partition of `0..n` as cell masks.
pub fn all_ordered_partitions(n: usize) -> Vec<Vec<u16>> {
    // Set partitions by restricted growth strings, then every cell order.
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn grow(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Vec<u16>>) {
        let n = labels.len();
        if i == n {
            let k = max;
            let mut cells = vec![0u16; k];
            for (v, &l) in labels.iter().enumerate() {
                cells[l] |= 1 << v;
            }
            for order in all_images(k) {
                out.push(order.iter().map(|&c| cells[c]).collect());
            }
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            grow(i + 1, max.max(l + 1), labels, out);
        }
    }
    if n > 0 {
        grow(0, 0, &mut labels, &mut out);
    }
    out
}

/// Some permutation mapping `(g1, cells1)` onto `(g2, cells2)`, by trying all.
pub fn find_isomorphism(g1: EdgeSet, cells1: &[u16], g2: EdgeSet, cells2: &[u16]) -> Option<Vec<usize>> {
    if g1.len() != g2.len() || cells1.len() != cells2.len() {
        return None;
    }
    all_images(g1.n())
        .into_iter()
        .find(|img| apply(g1, img) == g2 && apply_cells(cells1, img) == cells2)
}

/// Automorphisms of a graph, by trying every permutation.
pub fn automorphisms(g: EdgeSet) -> Vec<Vec<usize>> {
    all_images(g.n()).into_iter().filter(|img| apply(g, img) == g).collect()
}

/// Connected graphs with `1..=max_edges` edges, one per isomorphism class,
/// each on exactly as many vertices as it touches. Classes are told apart by
/// the library's canonical form, which the canonical tests check separately.
pub fn connected_graphs(max_edges: usize) -> Vec<EdgeSet> {
    let mut out: Vec<EdgeSet> = Vec::new();
    let mut frontier: Vec<EdgeSet> = vec![EdgeSet::from_pairs(2, &[(1, 2)]).unwrap()];
    for size in 1..=max_edges {
        out.extend(frontier.iter().copied());
        if size == max_edges {
            break;
        }
        let mut next: Vec<EdgeSet> = Vec::new();
        let mut seen = BTreeSet::new();
        for g in &frontier {
            let n = g.n();
            let mut grown: Vec<EdgeSet> = (1..=n)
                .flat_map(|x| (x + 1..=n).map(move |y| (x, y)))
                .filter(|&(x, y)| !g.contains(Edge::new(n, x, y).unwrap()))
                .map(|(x, y)| g.with(Edge::new(n, x, y).unwrap()))
                .collect();
            if n < fna::graph::MAX_VERTICES {
                let mut base = pairs(*g);
                for v in 1..=n {
                    base.push((v, n + 1));
                    grown.push(EdgeSet::from_pairs(n + 1, &base).unwrap());
                    base.pop();
                }
            }
            for h in grown {
                let unit = OrderedPartition::unit(h.n());
                let canon = fna::canonical::canonical_form(h, &unit).unwrap().canon.bits();
                if seen.insert((h.n(), canon)) {
                    next.push(h);
                }
            }
        }
        frontier = next;
    }
    out
}

/// Smallest edge bit mask over all relabellings.
pub fn min_relabelling(g: EdgeSet) -> u64 {
    all_images(g.n()).iter().map(|img| apply(g, img).bits()).min().unwrap()
}

pub fn edge_positions(g: EdgeSet) -> Vec<(usize, usize)> {
    let m = g.len();
    (0..m).flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

pub fn all_edge_sets(n: usize) -> impl Iterator<Item = EdgeSet> {
    let m = n * (n - 1) / 2;
    (0u64..1 << m).map(move |bits| EdgeSet::from_bits(n, bits).unwrap())
}

/// For every partitioned graph on `n` vertices: equal canonical forms exactly
/// when the brute-force orbit representatives agree.
pub fn check_all_partitioned(n: usize) -> usize {
    let perms = all_images(n);
    let mut checked = 0;
    for cells in all_ordered_partitions(n) {
        let pi = partition_from_masks(n, &cells);
        let mut canon_to_orbit: HashMap<u64, (u64, Vec<u16>)> = HashMap::new();
        let mut orbit_to_canon: HashMap<(u64, Vec<u16>), u64> = HashMap::new();
        for g in all_edge_sets(n) {
            let orbit = perms
                .iter()
                .map(|img| (apply(g, img).bits(), apply_cells(&cells, img)))
                .min()
                .unwrap();
            let canon = canonical_form(g, &pi).unwrap().canon.bits();
            assert_eq!(*canon_to_orbit.entry(canon).or_insert_with(|| orbit.clone()), orbit);
            assert_eq!(*orbit_to_canon.entry(orbit).or_insert(canon), canon);
            checked += 1;
        }
    }
    checked
}

/// Random problems bucketed by index; returns the number of equal-index pairs compared.
pub fn index_soundness(seed: u64, samples: usize) -> usize {
    let mut r = rng(seed);
    let mut buckets: HashMap<Vec<u8>, u128> = HashMap::new();
    let mut pairs = 0;
    for _ in 0..samples {
        // Small domains on few vertices make index collisions frequent.
        let n = r.gen_range(4..=6);
        let edges = random_edge_set(&mut r, n, 7);
        let mut x = EdgeSet::empty(n);
        let mut y = EdgeSet::empty(n);
        for e in edges.edges() {
            match r.gen_range(0..4) {
                0 => x = x.with(e),
                1 => y = y.with(e),
                _ => {}
            }
        }
        let p = CountingProblem::new(edges, x, y).unwrap();
        let count = brute_count(&p, Property::Forest);
        assert_eq!(count, fna::counting::count_forests_oracle(&p).unwrap().get());
        let key = index_i(&p).encode();
        match buckets.get(&key) {
            Some(&c) => {
                assert_eq!(c, count, "index collision with different counts: {p:?}");
                pairs += 1;
            }
            None => {
                buckets.insert(key, count);
            }
        }
    }
    pairs
}

/// Prints one acceptance line and returns whether it passed.
pub fn report(id: usize, passed: bool, detail: &str) -> bool {
    println!("criterion {id:>2}: {} | {detail}", if passed { "PASS" } else { "FAIL" });
    passed
}
