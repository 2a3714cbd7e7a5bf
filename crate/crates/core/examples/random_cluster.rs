//! Exact random-cluster marginals and pair probabilities on K4, and the
//! distance to the forest, connected and uniform-tree limits.

use fna::measures::{parse_rational, rc_exact, rc_limit_distance, rc_na_check, LimitTarget, Multigraph, RCParams};
use fna::EdgeSet;

fn main() -> fna::Result<()> {
    let k4 = EdgeSet::complete(4);
    let g = Multigraph::from_edge_set(k4);
    let r = |s: &str| parse_rational(s).unwrap();

    let params = RCParams::new(r("1/2"), r("1/4"))?;
    let result = rc_exact(&g, &params)?;
    println!("p=1/2 q=1/4: Z={} P(edge 0 open)={}", result.z, result.marginals[0]);
    let na = rc_na_check(&g, &params, 0, 5)?;
    println!("disjoint pair: P(both)={} <= product {}: {}", na.joint, na.product, na.holds);

    let limits = [
        ("connected, beta=1", RCParams::new(r("1/2"), r("1e-4"))?, LimitTarget::Connected { beta: r("1") }),
        ("forest, alpha=1", RCParams::new(r("1e-4"), r("1e-4"))?, LimitTarget::Forest { alpha: r("1") }),
        ("uniform tree", RCParams::new(r("1e-3"), r("1e-6"))?, LimitTarget::Ust),
    ];
    for (name, params, target) in limits {
        let d = rc_limit_distance(k4, &params, &target)?;
        println!("{name}: total variation {:.3e}", num_traits::ToPrimitive::to_f64(&d).unwrap_or(f64::NAN));
    }
    Ok(())
}
