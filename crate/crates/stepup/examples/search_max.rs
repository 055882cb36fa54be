//! Exact maximum monochromatic sets: pruned search, caps, witnesses, node
//! budgets, and parallel branches.

use stepup::coloring::ColoringOracle;
use stepup::error::Error;
use stepup::search::{exhaustive_check, max_monochromatic, SearchOptions};
use stepup::KUniformColoring;

fn main() -> stepup::Result<()> {
    // A random 2-coloring of triples of 12 points.
    let coloring = KUniformColoring::random(3, 12, 2, 5)?;

    let opts = SearchOptions::single_threaded();
    for color in 0..coloring.num_colors() {
        let out = max_monochromatic(&coloring, color, None, &opts)?;
        println!(
            "color {color}: maximum {} with witness {:?} ({} nodes)",
            out.size, out.witness, out.nodes
        );
        // The unpruned enumeration agrees at the boundary.
        assert!(exhaustive_check(&coloring, color, out.size, None)?);
        assert!(!exhaustive_check(&coloring, color, out.size + 1, None)?);
    }

    // A cap turns the search into a threshold check that stops early.
    let capped = max_monochromatic(&coloring, 0, Some(4), &opts)?;
    println!(
        "\ncapped at 4: reached = {}, explored only {} nodes",
        capped.reached_cap, capped.nodes
    );

    // Node budgets refuse oversized runs instead of guessing.
    let mut tight = SearchOptions::single_threaded();
    tight.node_budget = Some(20);
    match max_monochromatic(&coloring, 0, None, &tight) {
        Err(Error::Budget { required, limit }) => {
            println!("budget {limit} refused: needed more than {required} nodes")
        }
        other => println!("unexpected: {other:?}"),
    }

    // Parallel search splits on the least element of the candidate set.
    // Sizes are exact either way; uncapped runs return the same witness.
    let par = SearchOptions::with_jobs(4);
    for color in 0..coloring.num_colors() {
        let seq = max_monochromatic(&coloring, color, None, &opts)?;
        let p = max_monochromatic(&coloring, color, None, &par)?;
        assert_eq!(seq.size, p.size);
        assert_eq!(seq.witness, p.witness);
        println!("color {color}: 4 jobs agree on maximum {} and witness", p.size);
    }

    // Progress callbacks see each completed first-level branch.
    let mut watched = SearchOptions::single_threaded();
    watched.progress = Some(Box::new(|element, nodes, best| {
        println!("  branch rooted at {element}: {nodes} nodes, best {best}");
    }));
    println!("\nbranch-by-branch progress for color 0:");
    max_monochromatic(&coloring, 0, None, &watched)?;

    Ok(())
}
