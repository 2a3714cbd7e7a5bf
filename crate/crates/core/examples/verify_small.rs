//! Runs the pruned exhaustive check for forests and connected subgraphs on
//! small complete graphs and prints the per-level summary.

use fna::counting::Property;
use fna::verify::{run_verification, RunConfig};

fn main() -> fna::Result<()> {
    for property in [Property::Forest, Property::Connected] {
        for n in 4..=6 {
            let report = run_verification(&RunConfig::new(n, property))?;
            println!(
                "{property:?} n={n}: {} checked, {} skipped, {} violations, {:.3}s",
                report.totals.checked,
                report.totals.skipped,
                report.violations.len(),
                report.wall_time
            );
            if n == 5 {
                for l in &report.levels {
                    println!("  |E|={:>2}  sets {:>3}  checked {:>3}  skipped {:>3}", l.s, l.level_size, l.checked, l.skipped);
                }
            }
        }
    }
    Ok(())
}
