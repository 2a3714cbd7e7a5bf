//! Forest counts of a plane graph equal connected-subgraph counts of its
//! dual with the constraints swapped.

use fna::measures::{dual_complement_check, DualSpec, Multigraph};
use fna::EdgeSet;

fn main() -> fna::Result<()> {
    let triangle = Multigraph::parse("m=3 edges=3\n1 2\n1 3\n2 3\n")?.to_edge_set()?;
    // Theta graph: two faces, three parallel edges.
    let theta = DualSpec::parse("m=2 edges=3\n1 2\n1 2\n1 2\n")?;
    let n = triangle.n();
    for (contain, avoid) in [("", ""), ("1-2", ""), ("", "2-3"), ("1-2", "1-3")] {
        let check = dual_complement_check(triangle, &theta, EdgeSet::parse(n, contain)?, EdgeSet::parse(n, avoid)?)?;
        println!(
            "contain [{contain}] avoid [{avoid}]: forests {} dual connected {} equal {}",
            check.lhs, check.rhs, check.equal
        );
    }
    Ok(())
}
