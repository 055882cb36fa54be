//! Stepping a pair coloring up to a triple coloring.
//!
//! Pair colorings (k = 2) have no room for delta profiles, so they step up
//! through a different rule: the stepped color of a triple combines which
//! of the two deltas is larger with the base color of the delta pair,
//! giving 4 colors from 2. If the base admits no monochromatic n_c-set in
//! color c, the stepped coloring admits no (n_c + 1)-set in either derived
//! color 2b + c.

use stepup::coloring::ColoringOracle;
use stepup::search::{search_all_colors, verify_negative_relation, RelationStatement,
    SearchOptions};
use stepup::stepup::stepup2to3_oracle;
use stepup::KUniformColoring;

fn main() -> stepup::Result<()> {
    let base = KUniformColoring::random(2, 6, 2, 9)?;
    println!("base: 2-coloring of pairs on 6 points, table {:?}", base.table());

    let opts = SearchOptions::single_threaded();
    let maxima: Vec<u32> = search_all_colors(&base, &opts)?
        .outcomes
        .iter()
        .map(|o| o.size)
        .collect();
    println!("base maxima: {maxima:?}");

    let oracle = stepup2to3_oracle(base)?;
    println!(
        "stepped: {}-uniform on {} vertices, {} colors",
        oracle.uniformity(),
        oracle.ground_size(),
        oracle.num_colors()
    );

    // Stepped color 2b + c inherits color c's threshold.
    let thresholds = vec![
        maxima[0] + 2,
        maxima[1] + 2,
        maxima[0] + 2,
        maxima[1] + 2,
    ];
    let statement = RelationStatement::for_oracle(&oracle, thresholds.clone())?;
    let outcome = verify_negative_relation(&oracle, &statement, &opts)?;
    println!("thresholds {thresholds:?}: {}", if outcome.pass { "pass" } else { "fail" });
    for v in &outcome.verdicts {
        println!("  color {}: max {}{}", v.color, v.max_size, if v.reached { "+" } else { "" });
    }

    Ok(())
}
