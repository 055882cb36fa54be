//! Step-up colorings and exact verification of negative partition relations.
//!
//! A negative partition relation says: `N` elements can be colored on
//! `k`-subsets with `l` colors so that no color `i` admits a monochromatic
//! set of size `n_i`. This crate builds such colorings by *stepping up* a
//! small base coloring one uniformity level (from `k`-subsets of `N` points
//! to `(k+1)`-subsets of `2^N` points), verifies the resulting claims
//! exactly by pruned exhaustive search at desk scale, and iterates the
//! matching threshold arithmetic symbolically to any height.
//!
//! The pieces:
//!
//! - [`order`]: vertices of the stepped ground set as bit strings, the
//!   branching level `delta`, and its two ordering properties.
//! - [`coloring`]: the [`coloring::ColoringOracle`] trait, explicit
//!   colex-indexed tables, seeded random bases, and the `.kcol` file format.
//! - [`stepup`]: delta profiles of tuples, the alpha tables that finish the
//!   step-up rule, the auxiliary graph whose proper colorings yield improved
//!   alphas, lazy stepped oracles, and the pair-to-triple construction.
//! - [`search`]: exact per-color maxima with pruning, optional caps, node
//!   budgets, parallel branches, and negative-relation verification.
//! - [`bounds`]: symbolic threshold transformations, tower-height ground
//!   arithmetic, and the alternating chain of step-ups.
//! - [`recipe`]: construction chains as small text files.
//! - [`certificate`]: replayable records of one verification run.
//! - [`cli`]: the `stepup` command-line tool over all of the above.
//!
//! ## Examples
//!
//! ```bash
//! cargo run --release --example delta_properties
//! cargo run --release --example random_base
//! cargo run --release --example step_up
//! cargo run --release --example gk_graphs
//! cargo run --release --example search_max
//! cargo run --release --example two_to_three
//! cargo run --release --example alpha_experiment
//! cargo run --release --example bound_chains
//! cargo run --release --example certificates
//! ```
//!
//! - **`delta_properties`** - the branching-level function and why stepped
//!   colorings work
//! - **`random_base`** - seeded base colorings and the `.kcol` format
//! - **`step_up`** - one full step: base, alpha table, stepped oracle
//! - **`gk_graphs`** - the auxiliary graphs, their proper colorings, and
//!   the alphas they induce
//! - **`search_max`** - exact maximum monochromatic sets, caps, budgets,
//!   and parallel search
//! - **`two_to_three`** - stepping a pair coloring up to a triple coloring
//! - **`alpha_experiment`** - comparing threshold growth across alpha
//!   families over many seeds
//! - **`bound_chains`** - symbolic threshold iteration and tower heights
//! - **`certificates`** - verifying a claim, writing the certificate,
//!   replaying it

pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod coloring;
pub mod error;
pub mod order;
pub mod recipe;
pub mod search;
pub mod stepup;

pub use bounds::{Ground, StepTag, SymbolicRelation, Threshold};
pub use certificate::Certificate;
pub use coloring::{Color, ColoringOracle, KUniformColoring};
pub use error::{Error, Result};
pub use order::{delta, DeltaValue, VertexLabel};
pub use recipe::{BaseSpec, Recipe, StepDirective};
pub use search::{
    max_monochromatic, search_all_colors, verify_negative_relation, RelationStatement,
    SearchOptions, VerificationOutcome,
};
pub use stepup::{
    delta_profile, make_alpha_chi, make_alpha_eh, make_alpha_one, stepup_oracle, AlphaTable,
    DeltaProfile, GkGraph, SteppedOracle,
};
