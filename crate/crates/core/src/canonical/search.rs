//! Individualisation-refinement search for a canonical labelling.
//!
//! The graph may carry several edge layers (colours); a labelling is scored
//! by the tuple of relabelled layer bitmasks and the smallest score over the
//! search tree wins. Automorphisms discovered at equal leaves prune sibling
//! branches lying in the same orbit.

use crate::graph::{ends0, rank0, Bits16, Bits64, MAX_VERTICES};

pub(crate) struct Labelling {
    /// Relabelled bitmask of each layer.
    pub canon: Vec<u64>,
    /// `image[v]` is the 0-based canonical position of vertex `v`.
    pub image: [u8; MAX_VERTICES],
}

struct Search<'a> {
    n: usize,
    layers: &'a [u64],
    adj: Vec<[u16; MAX_VERTICES]>,
    best: Option<(Vec<u64>, [u8; MAX_VERTICES])>,
    first: Option<(Vec<u64>, [u8; MAX_VERTICES])>,
    automorphisms: Vec<[u8; MAX_VERTICES]>,
}

/// Canonical labelling of the layered graph under the ordered partition `cells`
/// (vertex masks, in order). Cells must be non-empty, disjoint and cover `0..n`.
pub(crate) fn canonize(n: usize, layers: &[u64], cells: &[u16]) -> Labelling {
    let adj = layers
        .iter()
        .map(|&bits| {
            let mut a = [0u16; MAX_VERTICES];
            for r in Bits64(bits) {
                let (x, y) = ends0(n, r);
                a[x] |= 1 << y;
                a[y] |= 1 << x;
            }
            a
        })
        .collect();
    let mut search = Search {
        n,
        layers,
        adj,
        best: None,
        first: None,
        automorphisms: Vec::new(),
    };
    let mut start = cells.to_vec();
    search.refine(&mut start);
    let mut fixed = Vec::with_capacity(n);
    search.descend(&start, &mut fixed);
    let (canon, image) = search.best.expect("search reaches at least one leaf");
    Labelling { canon, image }
}

impl Search<'_> {
    /// Splits cells until every vertex in a cell has the same number of
    /// neighbours (per layer) in every cell. New pieces keep the position of
    /// the cell they came from, ordered by increasing neighbour counts.
    fn refine(&self, cells: &mut Vec<u16>) {
        let base = self.n as u32 + 1;
        loop {
            let mut changed = false;
            let mut si = 0;
            while si < cells.len() {
                let splitter = cells[si];
                let mut out = Vec::with_capacity(cells.len() + 2);
                for &cell in cells.iter() {
                    if cell.count_ones() == 1 {
                        out.push(cell);
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = Bits16(cell)
                        .map(|v| {
                            let key = self
                                .adj
                                .iter()
                                .fold(0u32, |acc, a| acc * base + (a[v] & splitter).count_ones());
                            (key, v)
                        })
                        .collect();
                    keyed.sort_unstable();
                    let mut piece = 0u16;
                    let mut current = keyed[0].0;
                    for &(key, v) in &keyed {
                        if key != current {
                            out.push(piece);
                            piece = 0;
                            current = key;
                            changed = true;
                        }
                        piece |= 1 << v;
                    }
                    out.push(piece);
                }
                *cells = out;
                si += 1;
            }
            if !changed {
                return;
            }
        }
    }

    fn descend(&mut self, cells: &[u16], fixed: &mut Vec<usize>) {
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            self.leaf(cells);
            return;
        };
        let mut tried = 0u16;
        for v in Bits16(cells[t]) {
            if tried != 0 && self.orbit(v, fixed) & tried != 0 {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1 << v);
            child.push(cells[t] & !(1 << v));
            child.extend_from_slice(&cells[t + 1..]);
            self.refine(&mut child);
            fixed.push(v);
            self.descend(&child, fixed);
            fixed.pop();
            tried |= 1 << v;
        }
    }

    /// Orbit of `v` under the known automorphisms that fix `fixed` pointwise.
    fn orbit(&self, v: usize, fixed: &[usize]) -> u16 {
        let mut orbit = 1u16 << v;
        let usable: Vec<&[u8; MAX_VERTICES]> = self
            .automorphisms
            .iter()
            .filter(|g| fixed.iter().all(|&f| g[f] as usize == f))
            .collect();
        loop {
            let mut grown = orbit;
            for g in &usable {
                for u in Bits16(orbit) {
                    grown |= 1 << g[u];
                }
            }
            if grown == orbit {
                return orbit;
            }
            orbit = grown;
        }
    }

    fn leaf(&mut self, cells: &[u16]) {
        let n = self.n;
        let mut image = [0u8; MAX_VERTICES];
        for (pos, &cell) in cells.iter().enumerate() {
            image[cell.trailing_zeros() as usize] = pos as u8;
        }
        let key: Vec<u64> = self
            .layers
            .iter()
            .map(|&bits| {
                Bits64(bits).fold(0u64, |acc, r| {
                    let (x, y) = ends0(n, r);
                    acc | 1 << rank0(n, image[x] as usize, image[y] as usize)
                })
            })
            .collect();

        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == key {
                // reference^-1 ∘ image maps the graph onto itself.
                let mut inverse = [0u8; MAX_VERTICES];
                for v in 0..n {
                    inverse[reference.1[v] as usize] = v as u8;
                }
                let mut g = [0u8; MAX_VERTICES];
                for v in 0..n {
                    g[v] = inverse[image[v] as usize];
                }
                if (0..n).any(|v| g[v] as usize != v) {
                    self.automorphisms.push(g);
                }
                break;
            }
        }

        if self.first.is_none() {
            self.first = Some((key.clone(), image));
        }
        match &self.best {
            Some((best, _)) if *best <= key => {}
            _ => self.best = Some((key, image)),
        }
    }
}

/// Smallest relabelled layer tuple over every permutation that keeps each
/// cell in its own block of positions. Exponential; test and fallback use only.
pub(crate) fn canonize_exhaustive(n: usize, layers: &[u64], cells: &[u16]) -> Labelling {
    // Positions available to each cell, in order.
    let mut slot_of_cell = Vec::with_capacity(cells.len());
    let mut next = 0u8;
    for &c in cells {
        slot_of_cell.push(next);
        next += c.count_ones() as u8;
    }
    let mut best: Option<(Vec<u64>, [u8; MAX_VERTICES])> = None;
    let mut image = [0u8; MAX_VERTICES];
    let mut used = 0u16;
    let cell_of: Vec<usize> = (0..n)
        .map(|v| cells.iter().position(|&c| c >> v & 1 == 1).expect("cells cover V"))
        .collect();

    #[allow(clippy::too_many_arguments)]
    fn assign(
        v: usize,
        n: usize,
        layers: &[u64],
        cells: &[u16],
        cell_of: &[usize],
        slot_of_cell: &[u8],
        image: &mut [u8; MAX_VERTICES],
        used: &mut u16,
        best: &mut Option<(Vec<u64>, [u8; MAX_VERTICES])>,
    ) {
        if v == n {
            let key: Vec<u64> = layers
                .iter()
                .map(|&bits| {
                    Bits64(bits).fold(0u64, |acc, r| {
                        let (x, y) = ends0(n, r);
                        acc | 1 << rank0(n, image[x] as usize, image[y] as usize)
                    })
                })
                .collect();
            if best.as_ref().map_or(true, |(b, _)| key < *b) {
                *best = Some((key, *image));
            }
            return;
        }
        let c = cell_of[v];
        let lo = slot_of_cell[c];
        let hi = lo + cells[c].count_ones() as u8;
        for pos in lo..hi {
            if *used >> pos & 1 == 0 {
                *used |= 1 << pos;
                image[v] = pos;
                assign(v + 1, n, layers, cells, cell_of, slot_of_cell, image, used, best);
                *used &= !(1 << pos);
            }
        }
    }

    assign(0, n, layers, cells, &cell_of, &slot_of_cell, &mut image, &mut used, &mut best);
    let (canon, image) = best.expect("at least one permutation");
    Labelling { canon, image }
}
