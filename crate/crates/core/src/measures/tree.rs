use super::{ratio, Multigraph, Rational};
use crate::counting::Count;
use crate::error::{Error, Result};

/// Number of spanning trees, by fraction-free elimination on the reduced
/// Laplacian. Loops are ignored; parallel edges count with multiplicity.
pub fn spanning_tree_count(g: &Multigraph) -> Result<Count> {
    let size = g.m() - 1;
    if size == 0 {
        return Ok(Count::ONE);
    }
    let mut lap = vec![vec![0i128; size]; size];
    for &(u, v) in g.edges() {
        if u == v {
            continue;
        }
        let (a, b) = (u - 1, v - 1);
        // Row and column of the last vertex are dropped.
        for (i, j) in [(a, b), (b, a)] {
            if i < size {
                lap[i][i] += 1;
                if j < size {
                    lap[i][j] -= 1;
                }
            }
        }
    }
    let det = bareiss_determinant(lap)?;
    u128::try_from(det).map(Count::new).map_err(|_| Error::Overflow)
}

fn bareiss_determinant(mut a: Vec<Vec<i128>>) -> Result<i128> {
    let size = a.len();
    let mut negate = false;
    let mut prev = 1i128;
    for k in 0..size {
        if a[k][k] == 0 {
            match (k + 1..size).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(0),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let cross = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| a[i][k].checked_mul(a[k][j]).and_then(|y| x.checked_sub(y)))
                    .ok_or(Error::Overflow)?;
                // Exact by Sylvester's identity.
                a[i][j] = cross / prev;
            }
        }
        prev = a[k][k];
    }
    let det = a[size - 1][size - 1];
    Ok(if negate { -det } else { det })
}

/// Contracts edge `index`: its endpoints merge, the edge disappears, and other
/// edges keep their relative order. Parallel copies become loops.
pub fn contract(g: &Multigraph, index: usize) -> Result<Multigraph> {
    contract_with_map(g, index).map(|(h, _)| h)
}

pub(crate) fn contract_with_map(g: &Multigraph, index: usize) -> Result<(Multigraph, Vec<usize>)> {
    let (u, v) = g.edge(index)?;
    if u == v {
        return Err(Error::LoopContraction(index));
    }
    let (merged, map) = g.identify(u, v)?;
    let mut edges = merged.edges().to_vec();
    edges.remove(index);
    Ok((Multigraph::new(merged.m(), edges)?, map))
}

/// Effective resistance between `x` and `y` with unit resistors:
/// `t(G with x, y identified) / t(G)`.
pub fn effective_resistance(g: &Multigraph, x: usize, y: usize) -> Result<Rational> {
    if x == y {
        return Err(Error::InvalidGraph("resistance needs two distinct vertices".into()));
    }
    let total = spanning_tree_count(g)?;
    if total.get() == 0 {
        return Err(Error::Disconnected);
    }
    let (merged, _) = g.identify(x, y)?;
    Ok(ratio(spanning_tree_count(&merged)?.get(), total.get()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNaResult {
    pub t: Count,
    pub t_e: Count,
    pub t_f: Count,
    pub t_ef: Count,
    pub holds: bool,
}

fn trees_containing(g: &Multigraph, index: usize) -> Result<(Count, Option<Multigraph>)> {
    if g.is_loop(index) {
        return Ok((Count::ZERO, None));
    }
    let h = contract(g, index)?;
    Ok((spanning_tree_count(&h)?, Some(h)))
}

/// Edge negative association for the uniform spanning tree:
/// `t^{ef} * t <= t^e * t^f`, with `t^e` counted on the contraction by `e`.
pub fn tree_na_check(g: &Multigraph, e: usize, f: usize) -> Result<TreeNaResult> {
    if e == f {
        return Err(Error::InvalidGraph("e and f must differ".into()));
    }
    g.edge(e)?;
    g.edge(f)?;
    let t = spanning_tree_count(g)?;
    if t.get() == 0 {
        return Err(Error::Disconnected);
    }
    let (t_e, ge) = trees_containing(g, e)?;
    let (t_f, _) = trees_containing(g, f)?;
    let t_ef = match ge {
        Some(ge) => trees_containing(&ge, if f > e { f - 1 } else { f })?.0,
        None => Count::ZERO,
    };
    let holds = t_ef.checked_mul(t)? <= t_e.checked_mul(t_f)?;
    Ok(TreeNaResult { t, t_e, t_f, t_ef, holds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayleighResult {
    pub before: Rational,
    pub after: Rational,
    pub holds: bool,
}

/// Compares the resistance across `e` before and after contracting `f`.
pub fn rayleigh_check(g: &Multigraph, e: usize, f: usize) -> Result<RayleighResult> {
    if e == f {
        return Err(Error::InvalidGraph("e and f must differ".into()));
    }
    let (x, y) = g.edge(e)?;
    if x == y {
        return Err(Error::InvalidGraph(format!("edge {e} is a loop")));
    }
    let before = effective_resistance(g, x, y)?;
    let (h, map) = contract_with_map(g, f)?;
    let after = if map[x] == map[y] {
        Rational::from_integer(0.into())
    } else {
        effective_resistance(&h, map[x], map[y])?
    };
    let holds = after <= before;
    Ok(RayleighResult { before, after, holds })
}
