//! Acceptance suite: one test per criterion, each printing a single
//! `AC-n PASS` line on success. Run with `--nocapture` to see the lines:
//!
//! ```bash
//! cargo test --test acceptance -- --nocapture
//! cargo test --test acceptance -- --nocapture --include-ignored   # slow suite
//! ```
//!
//! AC-3 verifies the odd-k step at 64 stepped vertices, which takes minutes
//! rather than seconds, so it is marked `#[ignore]` and runs with the slow
//! suite. Its certificate replay happens inside the same test; AC-9 covers
//! the certificates of the fast criteria.

use std::path::Path;
use std::time::Instant;

use stepup::bounds::{iterate_relation, sk_chain, StepTag, SymbolicRelation};
use stepup::certificate::Certificate;
use stepup::cli;
use stepup::coloring::{
    colex_rank, materialize_oracle, mix64, next_subset, ColoringOracle, KUniformColoring,
};
use stepup::error::Error;
use stepup::order::{delta, delta_sequence, max_delta_index, VertexLabel};
use stepup::recipe::Recipe;
use stepup::search::{
    exhaustive_check, max_monochromatic, search_all_colors, verify_negative_relation,
    RelationStatement, SearchOptions, VerificationOutcome,
};
use stepup::stepup::{
    gk_graph, make_alpha_one, proper_coloring_parity, proper_coloring_three,
};

fn opts() -> SearchOptions {
    SearchOptions::single_threaded()
}

fn verify_recipe(recipe_text: &str, thresholds: &[u32]) -> (Recipe, VerificationOutcome) {
    let recipe = Recipe::parse(recipe_text).unwrap();
    let oracle = recipe.build(Path::new(".")).unwrap();
    let statement =
        RelationStatement::for_oracle(oracle.as_ref(), thresholds.to_vec()).unwrap();
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, &opts()).unwrap();
    (recipe, outcome)
}

fn measured_maxima(recipe_text: &str) -> Vec<u32> {
    let oracle = Recipe::parse(recipe_text).unwrap().build(Path::new(".")).unwrap();
    search_all_colors(oracle.as_ref(), &opts())
        .unwrap()
        .outcomes
        .iter()
        .map(|o| o.size)
        .collect()
}

/// The thresholds the bound arithmetic claims after one step, starting from
/// constant thresholds m_i + 1 (the smallest sizes the base cannot realize).
fn symbolic_thresholds(k: u32, base_maxima: &[u32], tag: StepTag) -> Vec<u32> {
    let relation = SymbolicRelation {
        k,
        num_colors: base_maxima.len() as u32,
        ground: stepup::bounds::Ground::Finite(0),
        thresholds: base_maxima
            .iter()
            .map(|&m| stepup::bounds::Threshold::constant(i128::from(m) + 1))
            .collect(),
    };
    let stepped = iterate_relation(&relation, &[tag]).unwrap();
    stepped
        .thresholds
        .iter()
        .map(|t| u32::try_from(t.eval(0).unwrap()).unwrap())
        .collect()
}

#[test]
fn ac1_delta_properties_exhaustive() {
    let start = Instant::now();
    let width = 8;
    let label = |bits: u64| VertexLabel::new(bits, width).unwrap();

    // Every increasing triple over all 256 labels.
    let mut triples = 0u64;
    for a in 0..256u64 {
        for b in (a + 1)..256 {
            let d1 = delta(label(a), label(b)).unwrap().get();
            for c in (b + 1)..256 {
                let d2 = delta(label(b), label(c)).unwrap().get();
                assert_ne!(d1, d2, "property (a) fails on ({a},{b},{c})");
                let span = delta(label(a), label(c)).unwrap().get();
                assert_eq!(span, d1.max(d2), "property (b) fails on ({a},{b},{c})");
                triples += 1;
            }
        }
    }
    assert_eq!(triples, 256 * 255 * 254 / 6);

    // 10^5 seeded random increasing 6-tuples.
    let mut counter = 0u64;
    let mut draw = || {
        counter += 1;
        mix64(0xac1 ^ counter) & 0xff
    };
    for _ in 0..100_000 {
        let mut bits: Vec<u64> = Vec::with_capacity(6);
        while bits.len() < 6 {
            let b = draw();
            if !bits.contains(&b) {
                bits.push(b);
            }
        }
        bits.sort_unstable();
        let tuple: Vec<VertexLabel> = bits.iter().map(|&b| label(b)).collect();
        let deltas = delta_sequence(&tuple).unwrap();
        for w in deltas.windows(2) {
            assert_ne!(w[0], w[1], "property (a) fails on {bits:?}");
        }
        let span = delta(tuple[0], tuple[5]).unwrap();
        let max = *deltas.iter().max().unwrap();
        assert_eq!(span, max, "property (b) fails on {bits:?}");
        // The maximum is attained exactly once.
        max_delta_index(&deltas).unwrap_or_else(|_| panic!("repeated max on {bits:?}"));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}, budget 10 s");
    println!(
        "AC-1 PASS: delta properties hold on {triples} triples and 100000 random \
         6-tuples at width 8 ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn ac2_plus_three_step_at_k4() {
    let start = Instant::now();
    // Base: seeded random coloring of 4-subsets of a 5-point set, 2 colors.
    let base_maxima = measured_maxima("base random 4 5 2 42\n");
    assert_eq!(base_maxima, vec![4, 4]);

    // Stepped with the parity alpha, the per-color thresholds shift by +3:
    // no color-i set of size (m_i + 1) + 3 on the 32 stepped vertices.
    let thresholds = [base_maxima[0] + 4, base_maxima[1] + 4];
    assert_eq!(thresholds, [8, 8]);
    assert_eq!(
        symbolic_thresholds(4, &base_maxima, StepTag::P1),
        thresholds.to_vec(),
        "threshold arithmetic and search verify the same statement"
    );
    let (_, outcome) =
        verify_recipe("base random 4 5 2 42\nstep alpha-one\n", &thresholds);
    assert!(outcome.pass, "{outcome:?}");

    // The exact stepped maxima, pinned.
    let stepped_maxima = measured_maxima("base random 4 5 2 42\nstep alpha-one\n");
    assert_eq!(stepped_maxima, vec![7, 7]);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 2 min");
    println!(
        "AC-2 PASS: parity-alpha step at k=4 keeps maxima {stepped_maxima:?} below \
         thresholds {thresholds:?} on 32 vertices ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
#[ignore = "slow suite: 64 stepped vertices at uniformity 6"]
fn ac3_plus_two_step_at_odd_k5() {
    let start = Instant::now();
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let opts = SearchOptions::with_jobs(jobs);

    let base = KUniformColoring::random(5, 6, 2, 7).unwrap();
    let base_maxima: Vec<u32> = search_all_colors(&base, &opts)
        .unwrap()
        .outcomes
        .iter()
        .map(|o| o.size)
        .collect();
    assert_eq!(base_maxima, vec![5, 5]);

    // Odd k admits the +2 shift through the parity alpha.
    let thresholds = vec![base_maxima[0] + 3, base_maxima[1] + 3];
    assert_eq!(thresholds, [8, 8]);
    assert_eq!(symbolic_thresholds(5, &base_maxima, StepTag::P2), thresholds);
    let recipe = Recipe::parse("base random 5 6 2 7\nstep alpha-one\n").unwrap();
    let oracle = recipe.build(Path::new(".")).unwrap();
    assert_eq!(oracle.ground_size(), 64);
    assert_eq!(oracle.uniformity(), 6);
    let statement = RelationStatement::for_oracle(oracle.as_ref(), thresholds.clone()).unwrap();
    let outcome = verify_negative_relation(oracle.as_ref(), &statement, &opts).unwrap();
    assert!(outcome.pass, "{outcome:?}");

    // Replay the certificate with the same parallelism.
    let dir = tempfile::tempdir().unwrap();
    let cert = Certificate::from_outcome(&recipe, &outcome, Some(base_maxima));
    let path = dir.path().join("odd-k.cert");
    cert.save(&path).unwrap();
    let report = Certificate::load(&path).unwrap().replay(dir.path(), &opts).unwrap();
    assert!(report.matches, "{:?}", report.differences);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 900, "took {elapsed:?}, budget 15 min");
    println!(
        "AC-3 PASS: parity-alpha step at odd k=5 verifies thresholds {thresholds:?} \
         on 64 vertices and its certificate replays ({} ms, {jobs} jobs)",
        elapsed.as_millis()
    );
}

#[test]
fn ac4_projection_alpha_and_comparison() {
    let start = Instant::now();
    // Same base instance as AC-2, stepped with the projection alpha. The
    // thresholds double: no color-i set of size 2(m_i + 1) + k - 4.
    let base_maxima = measured_maxima("base random 4 5 2 42\n");
    assert_eq!(base_maxima, vec![4, 4]);
    let k = 4;
    let thresholds: Vec<u32> = base_maxima.iter().map(|m| 2 * (m + 1) + k - 4).collect();
    assert_eq!(thresholds, [10, 10]);
    assert_eq!(symbolic_thresholds(k, &base_maxima, StepTag::Eh), thresholds);
    let (_, outcome) = verify_recipe("base random 4 5 2 42\nstep alpha-eh\n", &thresholds);
    assert!(outcome.pass, "{outcome:?}");

    // Measured maxima under both alphas across several seeds. The parity
    // alpha is expected to do no worse per color; this comparison is
    // reported, while the threshold checks above are the hard gate.
    let expected: [(u64, [u32; 2], [u32; 2]); 4] = [
        (42, [7, 7], [7, 8]),
        (1, [7, 7], [7, 8]),
        (2, [7, 6], [7, 8]),
        (3, [7, 7], [7, 8]),
    ];
    let mut holds = 0;
    for (seed, one_expected, eh_expected) in expected {
        let one = measured_maxima(&format!("base random 4 5 2 {seed}\nstep alpha-one\n"));
        let eh = measured_maxima(&format!("base random 4 5 2 {seed}\nstep alpha-eh\n"));
        assert_eq!(one, one_expected, "seed {seed}");
        assert_eq!(eh, eh_expected, "seed {seed}");
        let le = one.iter().zip(&eh).all(|(a, b)| a <= b);
        if le {
            holds += 1;
        }
        println!(
            "  seed {seed}: parity alpha maxima {one:?}, projection alpha maxima {eh:?}{}",
            if le { "" } else { " (parity alpha worse)" }
        );
    }

    let elapsed = start.elapsed();
    println!(
        "AC-4 PASS: projection-alpha step verifies thresholds {thresholds:?}; parity \
         alpha no worse on {holds}/4 seeds ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn ac5_three_coloring_alpha_with_three_base_colors() {
    let start = Instant::now();
    // Base: seeded random 3-coloring of 4-subsets of a 5-point set.
    let base = KUniformColoring::random(4, 5, 3, 7).unwrap();
    assert_eq!(base.table(), &[2, 2, 2, 0, 2]);
    let base_maxima = measured_maxima("base random 4 5 3 7\n");
    assert_eq!(base_maxima, vec![4, 3, 4]);

    // Colors in the image of the three-coloring get the +2 shift, colors
    // outside it only +1. The three-coloring of the k=4 graph uses exactly
    // the colors 0, 1, 2, so with a 3-color base every color shifts by +2.
    let chi = proper_coloring_three(4).unwrap();
    let used = chi.used_colors();
    assert_eq!(used, vec![0, 1, 2]);
    let thresholds: Vec<u32> = base_maxima
        .iter()
        .enumerate()
        .map(|(j, m)| m + 1 + if used.contains(&(j as u32)) { 2 } else { 1 })
        .collect();
    assert_eq!(thresholds, [7, 6, 7]);
    assert_eq!(symbolic_thresholds(4, &base_maxima, StepTag::P3), thresholds);

    let (_, outcome) =
        verify_recipe("base random 4 5 3 7\nstep alpha-chi three\n", &thresholds);
    assert!(outcome.pass, "{outcome:?}");

    let stepped_maxima = measured_maxima("base random 4 5 3 7\nstep alpha-chi three\n");
    assert_eq!(stepped_maxima, vec![5, 5, 6]);

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget 5 min");
    println!(
        "AC-5 PASS: three-coloring alpha with 3 base colors keeps maxima \
         {stepped_maxima:?} below thresholds {thresholds:?} ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn ac6_lazy_oracle_equivalence_and_exhaustion() {
    let start = Instant::now();
    // 16 stepped vertices: small enough to materialize and exhaust.
    let recipe = Recipe::parse("base random 4 4 2 11\nstep alpha-one\n").unwrap();
    let lazy = recipe.build(Path::new(".")).unwrap();
    assert_eq!(lazy.ground_size(), 16);
    assert_eq!(lazy.uniformity(), 5);

    let table = materialize_oracle(lazy.as_ref()).unwrap();
    assert_eq!(table.table().len(), 4368);
    let mut subset: Vec<u64> = (1..=5).collect();
    let mut entries = 0u64;
    loop {
        let rank = colex_rank(&subset).unwrap();
        assert_eq!(
            lazy.color_of(&subset).unwrap(),
            table.table()[rank as usize],
            "disagreement at {subset:?}"
        );
        entries += 1;
        if !next_subset(&mut subset, 16) {
            break;
        }
    }
    assert_eq!(entries, 4368);

    // The pruned search and the unpruned enumeration agree on the existence
    // of monochromatic m-sets for every color and every m up to 8.
    for color in 0..lazy.num_colors() {
        let found = max_monochromatic(lazy.as_ref(), color, None, &opts()).unwrap();
        for m in 0..=8u32 {
            let exists = exhaustive_check(lazy.as_ref(), color, m, None).unwrap();
            assert_eq!(
                exists,
                found.size >= m,
                "color {color}, m {m}: search says max {}, exhaustion says {exists}",
                found.size
            );
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30 s");
    println!(
        "AC-6 PASS: lazy stepped oracle matches its 4368-entry table and pruned \
         search matches exhaustion for all m <= 8 ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn ac7_auxiliary_graph_suite() {
    for k in 4..=12u32 {
        let g = gk_graph(k).unwrap();
        assert_eq!(g.edges().len() as u32, 2 * k - 3, "edge count at k = {k}");
        assert_eq!(g.is_bipartite(), k % 2 == 1, "bipartiteness at k = {k}");

        let three = proper_coloring_three(k).unwrap();
        three.validate_proper(&g).unwrap();
        assert!(three.used_colors().len() <= 3);

        if k % 2 == 1 {
            let parity = proper_coloring_parity(k).unwrap();
            parity.validate_proper(&g).unwrap();
            // The parity coloring induces exactly the parity alpha.
            let from_chi = stepup::stepup::make_alpha_chi(k, 2, &parity).unwrap();
            let alpha_one = make_alpha_one(k, 2).unwrap();
            for mask in 1..(1u32 << (k - 2)) {
                for i in [0u8, 1] {
                    assert_eq!(
                        from_chi.color(mask, i).unwrap(),
                        alpha_one.color(mask, i).unwrap(),
                        "k {k}, mask {mask}, i {i}"
                    );
                }
            }
        } else {
            assert!(proper_coloring_parity(k).is_err());
        }
    }
    println!(
        "AC-7 PASS: auxiliary graphs for k=4..12 have 2k-3 edges, are bipartite \
         exactly for odd k, and their colorings induce the expected alphas"
    );
}

#[test]
fn ac8_bound_iteration_arithmetic() {
    // Repeated projection-alpha steps from pair colorings: after stepping
    // from k=3 to k, the threshold is 2^(k-3) n - k + 3.
    for k in 3..=13u32 {
        let start = SymbolicRelation::diagonal(3, 2).unwrap();
        let steps = vec![StepTag::Eh; (k - 3) as usize];
        let rel = iterate_relation(&start, &steps).unwrap();
        assert_eq!(rel.k, k);
        for t in &rel.thresholds {
            assert_eq!(t.coeff, 1i128 << (k - 3), "coefficient at k = {k}");
            assert_eq!(t.offset, 3 - i128::from(k), "offset at k = {k}");
        }
    }

    // Ground tower heights along the alternating chain.
    let rows = sk_chain(100).unwrap();
    assert_eq!(rows.first(), Some(&(4, 7)));
    for &(k, s) in &rows {
        assert_eq!(s, (5 * u64::from(k)).div_ceil(2) - 3, "s({k})");
    }

    // A pair 2-coloring steps to a triple 4-coloring with thresholds n + 1.
    let pairs = SymbolicRelation::diagonal(2, 2).unwrap();
    let stepped = iterate_relation(&pairs, &[StepTag::TwoToThree]).unwrap();
    assert_eq!(stepped.k, 3);
    assert_eq!(stepped.num_colors, 4);
    assert_eq!(stepped.thresholds.len(), 4);
    for t in &stepped.thresholds {
        assert_eq!((t.coeff, t.offset), (1, 1));
    }

    println!(
        "AC-8 PASS: projection chains give 2^(k-3) n - k + 3 for k=3..13, tower \
         heights match ceil(5k/2) - 3 up to k=100, and the pair-to-triple step \
         gives 4 colors at n + 1"
    );
}

#[test]
fn ac9_certificates_replay() {
    let dir = tempfile::tempdir().unwrap();
    let instances: [(&str, Vec<u32>, Vec<u32>); 3] = [
        ("base random 4 5 2 42\nstep alpha-one\n", vec![8, 8], vec![4, 4]),
        ("base random 4 5 2 42\nstep alpha-eh\n", vec![10, 10], vec![4, 4]),
        ("base random 4 5 3 7\nstep alpha-chi three\n", vec![7, 6, 7], vec![4, 3, 4]),
    ];
    for (i, (text, thresholds, base_maxima)) in instances.iter().enumerate() {
        let (recipe, outcome) = verify_recipe(text, thresholds);
        assert!(outcome.pass);
        let cert = Certificate::from_outcome(&recipe, &outcome, Some(base_maxima.clone()));
        let path = dir.path().join(format!("ac9-{i}.cert"));
        cert.save(&path).unwrap();

        // Library replay.
        let report = Certificate::load(&path).unwrap().replay(dir.path(), &opts()).unwrap();
        assert!(report.matches, "{:?}", report.differences);

        // Command replay, as the CLI would run it.
        let code = cli::execute(&cli::Command::Verify {
            recipe: None,
            thresholds: vec![],
            out: None,
            replay: Some(path),
            jobs: 1,
            node_budget: None,
            progress: false,
        })
        .unwrap();
        assert_eq!(code, 0, "replay exit code for instance {i}");
    }
    println!("AC-9 PASS: all 3 fast-suite certificates replay to identical results");
}

#[test]
fn budget_refusal_is_distinct_from_failure() {
    // Companion check to the criteria: exceeding a node budget is an error,
    // not a relation verdict.
    let recipe = Recipe::parse("base random 4 5 2 42\nstep alpha-one\n").unwrap();
    let oracle = recipe.build(Path::new(".")).unwrap();
    let statement = RelationStatement::for_oracle(oracle.as_ref(), vec![8, 8]).unwrap();
    let mut tight = SearchOptions::single_threaded();
    tight.node_budget = Some(10);
    match verify_negative_relation(oracle.as_ref(), &statement, &tight) {
        Err(Error::Budget { .. }) => {}
        other => panic!("expected a budget refusal, got {other:?}"),
    }
}
