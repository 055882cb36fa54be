//! Symbolic arithmetic over negative partition relations: tower functions,
//! iterated application of the step-up transformations, and the recursion
//! for the off-diagonal uniformity thresholds s(k).
//!
//! Ground sizes only ever get exponentiated, so they are carried either as
//! concrete integers or as tower expressions t_h(x) with t_1(x) = x and
//! t_{h+1}(x) = 2^{t_h(x)}. Thresholds stay affine in one symbolic size n:
//! coeff * n + offset, which covers every chain the toolkit reproduces.

use std::fmt;

use crate::error::{Error, Result};

/// Iterated exponential, exact or flagged as out of machine range.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TowerValue {
    Exact(u128),
    /// t_height(arg) exceeds u128; kept symbolically instead of wrapping.
    Symbolic { height: u64, arg: u128 },
}

impl fmt::Display for TowerValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerValue::Exact(v) => write!(f, "{v}"),
            TowerValue::Symbolic { height, arg } => write!(f, "t_{height}({arg})"),
        }
    }
}

/// t_1(x) = x, t_{h+1}(x) = 2^{t_h(x)}. Values above u128 come back as
/// [`TowerValue::Symbolic`] rather than wrapping.
pub fn tower(height: u64, arg: u128) -> Result<TowerValue> {
    if height == 0 {
        return Err(Error::input("tower height is 1-based"));
    }
    let mut value = arg;
    for _ in 1..height {
        if value > 127 {
            return Ok(TowerValue::Symbolic { height, arg });
        }
        value = 1u128 << value;
    }
    Ok(TowerValue::Exact(value))
}

/// The argument of a tower expression: a number or a free symbol.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TowerArg {
    Value(u128),
    Symbol(String),
}

impl fmt::Display for TowerArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TowerArg::Value(v) => write!(f, "{v}"),
            TowerArg::Symbol(s) => write!(f, "{s}"),
        }
    }
}

/// Ground-set size of a relation: concrete, or a tower over a base size.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Ground {
    Finite(u128),
    Tower { height: u64, arg: TowerArg },
}

impl Ground {
    pub fn symbol(name: impl Into<String>) -> Self {
        Ground::Tower { height: 1, arg: TowerArg::Symbol(name.into()) }
    }

    /// One application of N -> 2^N, staying exact while it fits.
    pub fn exponentiate(&self) -> Ground {
        match self {
            Ground::Finite(g) if *g <= 127 => Ground::Finite(1u128 << g),
            Ground::Finite(g) => Ground::Tower { height: 2, arg: TowerArg::Value(*g) },
            Ground::Tower { height, arg } => {
                Ground::Tower { height: height + 1, arg: arg.clone() }
            }
        }
    }
}

impl fmt::Display for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ground::Finite(v) => write!(f, "{v}"),
            Ground::Tower { height: 1, arg } => write!(f, "{arg}"),
            Ground::Tower { height: 2, arg } => write!(f, "2^{arg}"),
            Ground::Tower { height, arg } => write!(f, "t_{height}({arg})"),
        }
    }
}

/// A threshold affine in the symbolic set size n: coeff * n + offset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Threshold {
    pub coeff: i128,
    pub offset: i128,
}

impl Threshold {
    pub fn symbolic() -> Self {
        Threshold { coeff: 1, offset: 0 }
    }

    pub fn constant(value: i128) -> Self {
        Threshold { coeff: 0, offset: value }
    }

    fn double_plus(&self, add: i128) -> Threshold {
        Threshold { coeff: 2 * self.coeff, offset: 2 * self.offset + add }
    }

    fn plus(&self, add: i128) -> Threshold {
        Threshold { coeff: self.coeff, offset: self.offset + add }
    }

    /// Value at a concrete n; None for negative results.
    pub fn eval(&self, n: i128) -> Option<u64> {
        let v = self.coeff.checked_mul(n)?.checked_add(self.offset)?;
        u64::try_from(v).ok()
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.coeff, self.offset) {
            (0, o) => write!(f, "{o}"),
            (1, 0) => write!(f, "n"),
            (1, o) if o > 0 => write!(f, "n+{o}"),
            (1, o) => write!(f, "n{o}"),
            (c, 0) => write!(f, "{c}n"),
            (c, o) if o > 0 => write!(f, "{c}n+{o}"),
            (c, o) => write!(f, "{c}n{o}"),
        }
    }
}

/// A (possibly symbolic) negative partition relation:
/// ground !-> (thresholds)^k with num_colors color classes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicRelation {
    pub k: u32,
    pub num_colors: u32,
    pub ground: Ground,
    pub thresholds: Vec<Threshold>,
}

impl SymbolicRelation {
    pub fn new(k: u32, num_colors: u32, ground: Ground, thresholds: Vec<Threshold>) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("uniformity must be at least 1"));
        }
        if num_colors == 0 {
            return Err(Error::input("need at least one color"));
        }
        if thresholds.len() != num_colors as usize {
            return Err(Error::input(format!(
                "{} thresholds for {num_colors} colors",
                thresholds.len()
            )));
        }
        Ok(SymbolicRelation { k, num_colors, ground, thresholds })
    }

    /// The diagonal symbolic start: ground N, every threshold n.
    pub fn diagonal(k: u32, num_colors: u32) -> Result<Self> {
        SymbolicRelation::new(
            k,
            num_colors,
            Ground::symbol("N"),
            vec![Threshold::symbolic(); num_colors as usize],
        )
    }
}

impl fmt::Display for SymbolicRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.thresholds.iter().map(|t| t.to_string()).collect();
        write!(
            f,
            "{} !-> ({})_{}^{}",
            self.ground,
            parts.join(","),
            self.num_colors,
            self.k
        )
    }
}

/// The step-up transformations the toolkit iterates.
///
/// * `Eh`: k >= 3; every threshold becomes 2n + k - 4 (k before the step).
/// * `P1`: k >= 4; the first two thresholds gain 3, the rest gain 1.
/// * `P2`: k >= 4 odd; the first two thresholds gain 2, the rest gain 1.
/// * `P3`: k >= 4 with at least 3 colors; the first three thresholds gain
///   2, the rest gain 1.
/// * `TwoToThree`: k = 2 with 2 colors; becomes a 4-coloring of triples
///   with each derived threshold one larger.
///
/// Every step raises k by one and exponentiates the ground size.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepTag {
    Eh,
    P1,
    P2,
    P3,
    TwoToThree,
}

impl StepTag {
    pub fn parse(text: &str) -> Result<StepTag> {
        match text.to_ascii_lowercase().as_str() {
            "eh" => Ok(StepTag::Eh),
            "p1" => Ok(StepTag::P1),
            "p2" => Ok(StepTag::P2),
            "p3" => Ok(StepTag::P3),
            "two-to-three" | "2to3" => Ok(StepTag::TwoToThree),
            other => Err(Error::input(format!(
                "unknown step tag `{other}`; expected eh, p1, p2, p3, or two-to-three"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StepTag::Eh => "eh",
            StepTag::P1 => "p1",
            StepTag::P2 => "p2",
            StepTag::P3 => "p3",
            StepTag::TwoToThree => "two-to-three",
        }
    }
}

impl fmt::Display for StepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn apply_step(rel: &SymbolicRelation, tag: StepTag, position: usize) -> Result<SymbolicRelation> {
    let fail = |cond: &str| {
        Err(Error::input(format!(
            "step {} ({tag}) refused: {cond} (k = {}, colors = {})",
            position + 1,
            rel.k,
            rel.num_colors
        )))
    };
    let k = i128::from(rel.k);
    let (k_next, colors_next, thresholds) = match tag {
        StepTag::Eh => {
            if rel.k < 3 {
                return fail("needs k >= 3");
            }
            let t = rel.thresholds.iter().map(|t| t.double_plus(k - 4)).collect();
            (rel.k + 1, rel.num_colors, t)
        }
        StepTag::P1 => {
            if rel.k < 4 {
                return fail("needs k >= 4");
            }
            let t = bump_first(&rel.thresholds, 2, 3);
            (rel.k + 1, rel.num_colors, t)
        }
        StepTag::P2 => {
            if rel.k < 4 {
                return fail("needs k >= 4");
            }
            if rel.k % 2 == 0 {
                return fail("needs odd k");
            }
            let t = bump_first(&rel.thresholds, 2, 2);
            (rel.k + 1, rel.num_colors, t)
        }
        StepTag::P3 => {
            if rel.k < 4 {
                return fail("needs k >= 4");
            }
            if rel.num_colors < 3 {
                return fail("needs at least 3 colors");
            }
            let t = bump_first(&rel.thresholds, 3, 2);
            (rel.k + 1, rel.num_colors, t)
        }
        StepTag::TwoToThree => {
            if rel.k != 2 {
                return fail("needs k = 2");
            }
            if rel.num_colors != 2 {
                return fail("needs exactly 2 colors");
            }
            // Color 2b + c of the stepped 4-coloring descends to base color
            // c, so both order patterns inherit threshold n_c + 1.
            let t: Vec<Threshold> = [0usize, 1, 0, 1]
                .iter()
                .map(|&c| rel.thresholds[c].plus(1))
                .collect();
            (3, 4, t)
        }
    };
    SymbolicRelation::new(k_next, colors_next, rel.ground.exponentiate(), thresholds)
}

fn bump_first(thresholds: &[Threshold], head: usize, head_add: i128) -> Vec<Threshold> {
    thresholds
        .iter()
        .enumerate()
        .map(|(i, t)| if i < head { t.plus(head_add) } else { t.plus(1) })
        .collect()
}

/// Applies the tags left to right, checking each side condition at its
/// application point.
pub fn iterate_relation(start: &SymbolicRelation, steps: &[StepTag]) -> Result<SymbolicRelation> {
    let mut rel = start.clone();
    for (i, &tag) in steps.iter().enumerate() {
        rel = apply_step(&rel, tag, i)?;
    }
    Ok(rel)
}

/// Like [`iterate_relation`] but keeping every intermediate relation,
/// starting with `start` itself.
pub fn iterate_relation_trace(
    start: &SymbolicRelation,
    steps: &[StepTag],
) -> Result<Vec<SymbolicRelation>> {
    let mut out = vec![start.clone()];
    for (i, &tag) in steps.iter().enumerate() {
        let next = apply_step(out.last().unwrap(), tag, i)?;
        out.push(next);
    }
    Ok(out)
}

/// Upper bounds on s(k), the least first threshold with tower-type growth
/// in the off-diagonal regime: s(4) = 7, then +2 after an odd k and +3
/// after an even k (the gains of the two threshold transformations).
/// Closed form ceil(5k/2) - 3, asserted along the way.
pub fn sk_chain(k_max: u32) -> Result<Vec<(u32, u64)>> {
    if k_max < 4 {
        return Err(Error::input(format!("the s(k) chain starts at k = 4, got {k_max}")));
    }
    let mut out = Vec::with_capacity(k_max as usize - 3);
    let mut s = 7u64;
    for k in 4..=k_max {
        let closed = (5 * u64::from(k)).div_ceil(2) - 3;
        if s != closed {
            return Err(Error::invariant(format!(
                "s({k}) recursion gives {s}, closed form gives {closed}"
            )));
        }
        out.push((k, s));
        s += if k % 2 == 1 { 2 } else { 3 };
    }
    Ok(out)
}
