//! Verifying a claim and carrying the proof around.
//!
//! A certificate records the construction recipe, the claim, and the
//! per-color search results in one text file. Anyone can replay it: the
//! recipe rebuilds the exact coloring, the search reruns, and the recorded
//! verdicts either reproduce or they don't.

use std::path::Path;

use stepup::certificate::Certificate;
use stepup::recipe::Recipe;
use stepup::search::{verify_negative_relation, RelationStatement, SearchOptions};

fn main() -> stepup::Result<()> {
    let dir = std::env::temp_dir().join("stepup-certificates");
    std::fs::create_dir_all(&dir)?;

    let recipe = Recipe::parse("base random 4 5 2 42\nstep alpha-one\n")?;
    let oracle = recipe.build(Path::new("."))?;
    let opts = SearchOptions::single_threaded();

    let statement = RelationStatement::for_oracle(oracle.as_ref(), vec![8, 8])?;
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, &opts)?;
    println!(
        "32 vertices, 5-uniform, thresholds 8,8: {}",
        if outcome.pass { "pass" } else { "fail" }
    );

    let cert = Certificate::from_outcome(&recipe, &outcome, None);
    let path = dir.join("step.cert");
    cert.save(&path)?;
    println!("\ncertificate at {}:\n---\n{}---", path.display(), cert.to_text());

    let report = Certificate::load(&path)?.replay(&dir, &opts)?;
    println!("replay: {}", if report.matches { "identical" } else { "diverged" });

    // Tampering is caught: claim a smaller maximum than the search finds.
    let mut forged = cert.clone();
    forged.verdicts[0].max_size -= 1;
    let forged_path = dir.join("forged.cert");
    forged.save(&forged_path)?;
    let report = Certificate::load(&forged_path)?.replay(&dir, &opts)?;
    println!("forged replay: {}", if report.matches { "identical" } else { "diverged" });
    for d in &report.differences {
        println!("  {d}");
    }

    // Failing claims certify too; the certificate then carries a witness.
    let statement = RelationStatement::for_oracle(oracle.as_ref(), vec![7, 7])?;
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, &opts)?;
    let cert = Certificate::from_outcome(&recipe, &outcome, None);
    println!("\nthresholds 7,7 instead:");
    for line in cert.to_text().lines() {
        if line.starts_with("color") || line.starts_with("result") {
            println!("  {line}");
        }
    }

    Ok(())
}
