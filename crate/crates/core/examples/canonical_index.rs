//! Canonical forms of partitioned graphs and the counting-problem index:
//! relabelled problems share an index and therefore a count.

use fna::canonical::{canonical_form, index_i, OrderedPartition};
use fna::counting::{count_forests_oracle, CountingProblem};
use fna::EdgeSet;

fn main() -> fna::Result<()> {
    let n = 5;
    let path = EdgeSet::parse(n, "1-2,2-3,3-4,4-5")?;
    let pi = OrderedPartition::from_labels(n, &[&[1, 5], &[2, 3, 4]])?;
    let c = canonical_form(path, &pi)?;
    println!("graph {path} with cells {{1,5}} {{2,3,4}} -> canonical {}", c.canon);
    println!("relabelling {:?}", c.delta.zero_based());

    let edges = EdgeSet::parse(n, "1-2,1-3,2-3,3-4,4-5,2-5")?;
    let p = CountingProblem::new(edges, EdgeSet::parse(n, "1-2")?, EdgeSet::parse(n, "4-5")?)?;
    // Swap labels 1<->5 and 2<->4.
    let q = p.relabel(&[4, 3, 2, 1, 0]);
    let (kp, kq) = (index_i(&p), index_i(&q));
    println!("index bytes {:02x?}", kp.encode());
    println!("same index: {}", kp == kq);
    println!("counts {} and {}", count_forests_oracle(&p)?, count_forests_oracle(&q)?);
    Ok(())
}
