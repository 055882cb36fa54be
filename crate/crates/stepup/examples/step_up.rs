//! One full step up: a base coloring of 4-subsets of 5 points becomes a
//! coloring of 5-subsets of 32 points, and the small monochromatic maxima
//! of the base stay small after the step.
//!
//! The stepped color of an increasing tuple of bit strings is decided by
//! the profile of its delta sequence. Monotone profiles hand the sorted
//! delta set to the base coloring; profiles with local extrema are colored
//! by an alpha table from the extremum locations and the type of the first
//! one.

use stepup::coloring::ColoringOracle;
use stepup::order::VertexLabel;
use stepup::search::{search_all_colors, SearchOptions};
use stepup::stepup::{delta_profile, make_alpha_one, stepup_color_of, stepup_oracle};
use stepup::KUniformColoring;

fn main() -> stepup::Result<()> {
    let base = KUniformColoring::random(4, 5, 2, 42)?;
    println!("base table: {:?}", base.table());

    let opts = SearchOptions::single_threaded();
    let base_max = search_all_colors(&base, &opts)?;
    for o in &base_max.outcomes {
        println!("base color {}: maximum monochromatic size {}", o.color, o.size);
    }

    let alpha = make_alpha_one(4, 2)?;
    let oracle = stepup_oracle(base.clone(), alpha.clone())?;
    println!(
        "\nstepped: {}-uniform on {} vertices, {} colors",
        oracle.uniformity(),
        oracle.ground_size(),
        oracle.num_colors()
    );

    // Two tuples, one of each kind. Ground element e is the bit string
    // e - 1, so the tuple below is the strings 00000, 00011, 00111, 01111,
    // 11111 with a strictly increasing delta sequence.
    let monotone: Vec<u64> = vec![1, 4, 8, 16, 32];
    let wiggly: Vec<u64> = vec![1, 5, 6, 8, 16];
    for subset in [&monotone, &wiggly] {
        let labels: Vec<VertexLabel> = subset
            .iter()
            .map(|&e| VertexLabel::new(e - 1, 5).unwrap())
            .collect();
        let profile = delta_profile(&labels)?;
        let kind = if profile.monotone() {
            "monotone, base decides".to_string()
        } else {
            format!("extrema at {:?}, alpha decides", profile.extrema())
        };
        println!(
            "tuple {subset:?}: deltas {:?} ({kind}), color {}",
            profile.deltas().iter().map(|d| d.get()).collect::<Vec<_>>(),
            oracle.color_of(subset)?
        );
    }

    // The tuple interface gives the same colors as the subset interface.
    let labels: Vec<VertexLabel> =
        wiggly.iter().map(|&e| VertexLabel::new(e - 1, 5).unwrap()).collect();
    assert_eq!(
        stepup_color_of(&base, &alpha, &labels)?,
        oracle.color_of(&wiggly)?
    );

    // Maxima after the step: the +3 shift of the base maxima is never hit.
    let stepped_max = search_all_colors(&oracle, &opts)?;
    for (o, b) in stepped_max.outcomes.iter().zip(&base_max.outcomes) {
        println!(
            "stepped color {}: maximum {} (base had {}, threshold {} holds)",
            o.color,
            o.size,
            b.size,
            b.size + 4
        );
        assert!(o.size < b.size + 4);
    }

    Ok(())
}
