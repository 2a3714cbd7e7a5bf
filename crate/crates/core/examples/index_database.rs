//! Persists a run's index database, reloads it, and resumes with a warm
//! database so that nothing needs rechecking.

use fna::counting::Property;
use fna::verify::{db_load, run_verification, RunConfig};

fn main() -> fna::Result<()> {
    let dir = std::env::temp_dir().join(format!("fna-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("n5.db");

    let mut config = RunConfig::new(5, Property::Forest);
    config.db_path = Some(path.clone());
    let first = run_verification(&config)?;
    let db = db_load(&path)?;
    println!("first run: {} checked, database holds {} keys", first.totals.checked, db.len());

    let again = run_verification(&config)?;
    println!("warm run: {} checked, {} skipped", again.totals.checked, again.totals.skipped);

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
