//! Counts constrained forests of K5 with every strategy and shows they agree.

use fna::counting::{
    count_connected, count_forests_layered, count_forests_memo, count_forests_oracle, weighted_sum, CountingProblem,
    MemoMode, MemoStore, Property, WeightVector,
};
use fna::EdgeSet;

fn main() -> fna::Result<()> {
    let n = 5;
    let edges = EdgeSet::complete(n);
    let contain = EdgeSet::parse(n, "1-2")?;
    let avoid = EdgeSet::parse(n, "3-4,4-5")?;
    let problem = CountingProblem::new(edges, contain, avoid)?;

    let store = MemoStore::unbounded();
    println!("forests of K5 containing 1-2, avoiding 3-4 and 4-5");
    println!("  oracle       {}", count_forests_oracle(&problem)?);
    println!("  layered      {}", count_forests_layered(&problem)?);
    println!("  memo exact   {}", count_forests_memo(&problem, MemoMode::Exact, &store)?);
    println!("  memo index   {}", count_forests_memo(&problem, MemoMode::Index, &MemoStore::unbounded())?);
    println!("connected spanning subgraphs, same constraints: {}", count_connected(&problem)?);

    let half = WeightVector::uniform(fna::measures::parse_rational("1/2").unwrap())?;
    let z = weighted_sum(&problem, Property::Forest, &half)?;
    println!("forest weight sum at edge weight 1/2: {z}");
    Ok(())
}
