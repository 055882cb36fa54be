//! The branching-level function and the two ordering properties that make
//! stepped colorings work.
//!
//! Vertices of the stepped ground set are binary strings, ordered as
//! integers. For two distinct strings, delta is the highest coordinate where
//! they differ. Along any increasing tuple, consecutive deltas are never
//! equal (a), and the delta between the endpoints is the unique maximum of
//! the consecutive deltas (b). Everything the step-up construction does
//! rests on those two facts.

use stepup::order::{delta, delta_sequence, max_delta_index, VertexLabel};

fn main() -> stepup::Result<()> {
    let width = 5;
    let label = |bits: u64| VertexLabel::new(bits, width).unwrap();

    println!("deltas at width {width}:");
    for (a, b) in [(5u64, 6u64), (0, 16), (7, 6), (12, 13)] {
        let d = delta(label(a), label(b))?;
        println!("  delta({a:05b}, {b:05b}) = {}", d.get());
    }

    let tuple: Vec<VertexLabel> = [0u64, 4, 5, 7, 15].iter().map(|&b| label(b)).collect();
    let deltas = delta_sequence(&tuple)?;
    let values: Vec<u32> = deltas.iter().map(|d| d.get()).collect();
    println!("\ntuple 0, 4, 5, 7, 15 has delta sequence {values:?}");
    println!("max is at position {} (1-based)", max_delta_index(&deltas)?);

    // Exhaustive check of (a) and (b) over every increasing triple at this
    // width. The delta between the endpoints equals the larger of the two
    // consecutive deltas, and the two are never equal.
    let m = 1u64 << width;
    let mut checked = 0u64;
    for a in 0..m {
        for b in (a + 1)..m {
            let d1 = delta(label(a), label(b))?.get();
            for c in (b + 1)..m {
                let d2 = delta(label(b), label(c))?.get();
                let span = delta(label(a), label(c))?.get();
                assert_ne!(d1, d2);
                assert_eq!(span, d1.max(d2));
                checked += 1;
            }
        }
    }
    println!("\nproperties (a) and (b) hold on all {checked} increasing triples at width {width}");

    // Property (a) fails for non-consecutive pairs: deltas may repeat
    // further apart, which is why profiles track extrema rather than
    // demanding global distinctness.
    let tuple: Vec<VertexLabel> = [0u64, 1, 4, 5].iter().map(|&b| label(b)).collect();
    let deltas = delta_sequence(&tuple)?;
    let values: Vec<u32> = deltas.iter().map(|d| d.get()).collect();
    println!("tuple 0, 1, 4, 5 has deltas {values:?}: repetition is allowed at distance 2");

    Ok(())
}
