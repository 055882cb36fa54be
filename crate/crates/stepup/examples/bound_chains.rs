//! Symbolic threshold iteration: what repeated step-ups cost.
//!
//! Each step exponentiates the ground set and transforms the thresholds by
//! a fixed rule. Iterating from small k gives tower-type lower bounds; the
//! interesting question is how slowly the thresholds can be made to grow.

use stepup::bounds::{
    iterate_relation, iterate_relation_trace, sk_chain, StepTag, SymbolicRelation,
};

fn main() -> stepup::Result<()> {
    // The projection chain doubles thresholds at every level.
    println!("projection chain from pair thresholds n:");
    let start = SymbolicRelation::diagonal(3, 2)?;
    let trace = iterate_relation_trace(&start, &vec![StepTag::Eh; 4])?;
    for rel in &trace {
        println!("  {rel}");
    }

    // The improved steps only add small constants. p1 works at every k,
    // p2 needs odd k, so they alternate.
    println!("\nalternating p1/p2 chain from k = 4:");
    let start = SymbolicRelation::diagonal(4, 2)?;
    let steps = [StepTag::P1, StepTag::P2, StepTag::P1, StepTag::P2];
    let trace = iterate_relation_trace(&start, &steps)?;
    for rel in &trace {
        println!("  {rel}");
    }

    // Tower heights s(k) with thresholds pinned at a constant: starting
    // from triples on t_7-many points, the alternating chain reaches
    // uniformity k on a tower of height s(k).
    println!("\ntower heights along the alternating chain:");
    let rows = sk_chain(12)?;
    for (k, s) in &rows {
        println!("  k = {k:>2}: ground is a tower of height {s}");
    }
    let (k, s) = rows.last().copied().unwrap();
    assert_eq!(s, (5 * u64::from(k)).div_ceil(2) - 3);

    // Pair colorings enter the game through the two-to-three step.
    println!("\nfrom pairs to triples:");
    let pairs = SymbolicRelation::diagonal(2, 2)?;
    let stepped = iterate_relation(&pairs, &[StepTag::TwoToThree])?;
    println!("  {pairs}");
    println!("  {stepped}");

    // Side conditions are enforced, with the failing step named.
    let err = iterate_relation(&start, &[StepTag::P2]).unwrap_err();
    println!("\np2 straight from k = 4 is refused: {err}");

    Ok(())
}
