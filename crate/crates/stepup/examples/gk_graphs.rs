//! The auxiliary graphs behind the improved alpha tables.
//!
//! G_k lives on {2,...,k-1} x {0,1}. Any proper coloring chi of G_k turns
//! into a valid step-up parameter alpha_chi(S, i) = chi(min S, i). The
//! graph is bipartite exactly when k is odd, where the parity coloring
//! (j + i) mod 2 works with 2 colors; 3 colors always suffice.

use stepup::stepup::{
    gk_graph, make_alpha_chi, make_alpha_one, proper_coloring_parity, proper_coloring_three,
};

fn main() -> stepup::Result<()> {
    for k in 4..=9u32 {
        let g = gk_graph(k)?;
        println!(
            "G_{k}: {} vertices, {} edges, bipartite: {}",
            g.vertex_count(),
            g.edges().len(),
            g.is_bipartite()
        );
        if k <= 6 {
            for ((a, b), (c, d)) in g.edges() {
                print!("  ({a},{b})-({c},{d})");
            }
            println!();
        }
    }

    let k = 7;
    let parity = proper_coloring_parity(k)?;
    let g = gk_graph(k)?;
    parity.validate_proper(&g)?;
    println!("\nparity coloring of G_{k} is proper; its alpha equals the parity alpha:");
    let from_chi = make_alpha_chi(k, 2, &parity)?;
    let alpha_one = make_alpha_one(k, 2)?;
    let mut agree = true;
    for mask in 1..(1u32 << (k - 2)) {
        for i in [0, 1] {
            agree &= from_chi.color(mask, i)? == alpha_one.color(mask, i)?;
        }
    }
    println!("  entry-for-entry agreement: {agree}");

    // Even k has an odd cycle, so 2 colors cannot work, but 3 do.
    let k = 8;
    match proper_coloring_parity(k) {
        Err(e) => println!("\nparity coloring of G_{k} refused: {e}"),
        Ok(_) => unreachable!(),
    }
    let three = proper_coloring_three(k)?;
    three.validate_proper(&gk_graph(k)?)?;
    println!("three-coloring of G_{k} is proper, uses colors {:?}", three.used_colors());

    Ok(())
}
