//! Spanning-tree counts, effective resistance, and the pairwise tree and
//! Rayleigh inequalities on a small multigraph.

use fna::measures::{effective_resistance, rayleigh_check, spanning_tree_count, tree_na_check, Multigraph};

fn main() -> fna::Result<()> {
    // Square with a doubled diagonal.
    let g: Multigraph = "m=4 edges=6\n1 2\n2 3\n3 4\n4 1\n1 3\n1 3\n".parse()?;
    println!("{g}");
    println!("spanning trees: {}", spanning_tree_count(&g)?);
    println!("resistance 1..3: {}", effective_resistance(&g, 1, 3)?);
    println!("resistance 2..4: {}", effective_resistance(&g, 2, 4)?);
    for (i, j) in [(0, 1), (0, 2), (4, 5)] {
        let t = tree_na_check(&g, i, j)?;
        let r = rayleigh_check(&g, i, j)?;
        println!(
            "edges {i},{j}: T*T_ef={} <= T_e*T_f={} {}; resistance {} -> {} {}",
            t.t.get() * t.t_ef.get(),
            t.t_e.get() * t.t_f.get(),
            t.holds,
            r.before,
            r.after,
            r.holds
        );
    }
    Ok(())
}
