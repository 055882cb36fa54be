//! The step-up construction: turning a coloring of k-subsets of [N] into a
//! coloring of (k+1)-subsets of the 2^N binary strings of width N.
//!
//! For an increasing (k+1)-tuple of vertices the consecutive deltas form a
//! sequence of k coordinates with no two consecutive entries equal. If that
//! sequence is monotone its values are k distinct elements of [N] and the
//! tuple inherits the base color of that delta set. Otherwise the locations
//! of the local extrema (a nonempty subset S of {2,...,k-1}) together with
//! the type of the first extremum (minimum or maximum) select a color from
//! an alpha table. Three alpha families matter:
//!
//! * `alpha-eh`: alpha(S, i) = i, the classical projection;
//! * `alpha-one`: alpha(S, i) = (min(S) + i) mod 2;
//! * `alpha-chi`: alpha(S, i) = chi(min(S), i) for a proper coloring chi of
//!   the auxiliary graph [`GkGraph`].
//!
//! There is also a separate pair-to-triple step: a 2-coloring of pairs of
//! [N] becomes a 4-coloring of triples of width-N vertices by combining the
//! order pattern of the two deltas with the base color of the delta pair.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::coloring::{check_subset, Color, ColoringOracle};
use crate::error::{Error, Result};
use crate::order::{compare_vertices, delta_sequence, DeltaValue, VertexLabel};

/// Largest base uniformity for alpha tables; keeps tables (2^(k-1) - 2
/// entries) and extremum masks comfortably in range.
pub const MAX_ALPHA_K: u32 = 24;

/// Whether a local extremum is a minimum or a maximum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExtremumType {
    Minimum,
    Maximum,
}

/// Classification of the delta sequence of an increasing tuple: either
/// monotone, or carrying a nonempty set of local extremum locations whose
/// types alternate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeltaProfile {
    deltas: Vec<DeltaValue>,
    extrema: Vec<u32>,
    first_type: Option<ExtremumType>,
}

impl DeltaProfile {
    /// Classifies a delta sequence directly. The sequence must have no two
    /// consecutive entries equal; sequences coming from increasing tuples
    /// always satisfy that.
    pub fn from_deltas(deltas: Vec<DeltaValue>) -> Result<Self> {
        if deltas.is_empty() {
            return Err(Error::input("delta sequence is empty"));
        }
        for (i, w) in deltas.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::input(format!(
                    "consecutive deltas equal at positions {}..{}",
                    i + 1,
                    i + 2
                )));
            }
        }
        let mut extrema = Vec::new();
        let mut first_type = None;
        // A location i (1-based, 2 <= i <= k-1) is an extremum when its
        // neighbors are both larger or both smaller.
        for i in 1..deltas.len().saturating_sub(1) {
            let (a, b, c) = (deltas[i - 1], deltas[i], deltas[i + 1]);
            let kind = if a < b && b > c {
                Some(ExtremumType::Maximum)
            } else if a > b && b < c {
                Some(ExtremumType::Minimum)
            } else {
                None
            };
            if let Some(kind) = kind {
                extrema.push(i as u32 + 1);
                if first_type.is_none() {
                    first_type = Some(kind);
                }
            }
        }
        Ok(DeltaProfile { deltas, extrema, first_type })
    }

    pub fn deltas(&self) -> &[DeltaValue] {
        &self.deltas
    }

    /// True when the sequence is strictly increasing or strictly decreasing.
    pub fn monotone(&self) -> bool {
        self.first_type.is_none()
    }

    /// Locations of local extrema, increasing, each in {2,...,k-1}.
    pub fn extrema(&self) -> &[u32] {
        &self.extrema
    }

    /// Type of the extremum at the smallest location; None iff monotone.
    pub fn first_type(&self) -> Option<ExtremumType> {
        self.first_type
    }

    /// Extremum type at the extremum location `loc`. Types alternate along
    /// the sorted locations, so the position of `loc` determines it.
    pub fn type_at(&self, loc: u32) -> Option<ExtremumType> {
        let pos = self.extrema.iter().position(|&e| e == loc)?;
        let first = self.first_type?;
        Some(if pos % 2 == 0 { first } else { opposite(first) })
    }

    /// Extremum locations as a bitmask with bit (j - 2) set for location j.
    pub fn extrema_mask(&self) -> u32 {
        self.extrema.iter().fold(0, |m, &j| m | 1 << (j - 2))
    }
}

fn opposite(t: ExtremumType) -> ExtremumType {
    match t {
        ExtremumType::Minimum => ExtremumType::Maximum,
        ExtremumType::Maximum => ExtremumType::Minimum,
    }
}

/// Profile of an increasing tuple of vertices.
pub fn delta_profile(tuple: &[VertexLabel]) -> Result<DeltaProfile> {
    DeltaProfile::from_deltas(delta_sequence(tuple)?)
}

/// The step-up parameter: a color for every pair (S, i) with S a nonempty
/// subset of {2,...,k-1} (encoded as a bitmask, bit j-2 for location j) and
/// i in {0,1}. Stored fully materialized: 2^(k-1) - 2 entries.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlphaTable {
    k: u32,
    ell: u32,
    entries: Vec<Color>,
}

impl AlphaTable {
    /// Builds a table by evaluating `f(mask, i)` on every key. Requires
    /// k >= 3; only the projection family is meaningful at k = 3, where the
    /// domain degenerates to the single set {2}.
    pub fn from_fn(k: u32, ell: u32, mut f: impl FnMut(u32, u8) -> Color) -> Result<Self> {
        if !(3..=MAX_ALPHA_K).contains(&k) {
            return Err(Error::input(format!(
                "alpha tables need 3 <= k <= {MAX_ALPHA_K}, got {k}"
            )));
        }
        if ell < 2 {
            return Err(Error::input("alpha tables need at least 2 colors"));
        }
        let masks = (1u32 << (k - 2)) - 1;
        let mut entries = Vec::with_capacity(2 * masks as usize);
        for mask in 1..=masks {
            for i in 0..2u8 {
                let c = f(mask, i);
                if c >= ell {
                    return Err(Error::input(format!(
                        "alpha color {c} out of range 0..{ell} at mask {mask}, i {i}"
                    )));
                }
                entries.push(c);
            }
        }
        Ok(AlphaTable { k, ell, entries })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn num_colors(&self) -> u32 {
        self.ell
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn check_key(&self, mask: u32, i: u8) -> Result<()> {
        let masks = (1u32 << (self.k - 2)) - 1;
        if mask == 0 || mask > masks {
            return Err(Error::input(format!(
                "extrema mask {mask} out of range 1..={masks} for k = {}",
                self.k
            )));
        }
        if i > 1 {
            return Err(Error::input(format!("alpha second argument must be 0 or 1, got {i}")));
        }
        Ok(())
    }

    /// Color for the extremum-location set `mask` and second argument `i`.
    pub fn color(&self, mask: u32, i: u8) -> Result<Color> {
        self.check_key(mask, i)?;
        Ok(self.entries[2 * (mask as usize - 1) + i as usize])
    }

    /// Overwrites one entry; the customization point for experiments with
    /// arbitrary alpha choices.
    pub fn set(&mut self, mask: u32, i: u8, color: Color) -> Result<()> {
        self.check_key(mask, i)?;
        if color >= self.ell {
            return Err(Error::input(format!("color {color} out of range 0..{}", self.ell)));
        }
        self.entries[2 * (mask as usize - 1) + i as usize] = color;
        Ok(())
    }

    /// Encodes explicit extremum locations as a mask for this table's k.
    pub fn mask_of_locations(&self, locations: &[u32]) -> Result<u32> {
        let mut mask = 0u32;
        for &j in locations {
            if !(2..=self.k - 1).contains(&j) {
                return Err(Error::input(format!(
                    "extremum location {j} outside 2..={} for k = {}",
                    self.k - 1,
                    self.k
                )));
            }
            mask |= 1 << (j - 2);
        }
        if mask == 0 {
            return Err(Error::input("extremum location set must be nonempty"));
        }
        Ok(mask)
    }

    /// Renders the table in the `.alpha` text format (canonical key order).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "alpha 1");
        let _ = writeln!(out, "{} {}", self.k, self.ell);
        let masks = (1u32 << (self.k - 2)) - 1;
        for mask in 1..=masks {
            for i in 0..2u8 {
                let c = self.entries[2 * (mask as usize - 1) + i as usize];
                let _ = writeln!(out, "{mask} {i} {c}");
            }
        }
        out
    }

    /// Parses the `.alpha` text format; accepts the keys in any order as
    /// long as each appears exactly once.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (ln, magic) = lines.next().ok_or_else(|| Error::parse(1, "empty file"))?;
        if magic.trim() != "alpha 1" {
            return Err(Error::parse(ln + 1, format!("expected `alpha 1`, got `{magic}`")));
        }
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(2, "missing `k ell` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::parse(ln + 1, "header must be `k ell`"));
        }
        let k: u32 = fields[0]
            .parse()
            .map_err(|_| Error::parse(ln + 1, format!("cannot parse k from `{}`", fields[0])))?;
        let ell: u32 = fields[1]
            .parse()
            .map_err(|_| Error::parse(ln + 1, format!("cannot parse ell from `{}`", fields[1])))?;
        let mut table = AlphaTable::from_fn(k, ell, |_, _| 0)
            .map_err(|e| Error::parse(ln + 1, e.to_string()))?;
        let mut seen = vec![false; table.entries.len()];
        for (ln, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::parse(ln + 1, "entry must be `mask i color`"));
            }
            let mask: u32 = fields[0]
                .parse()
                .map_err(|_| Error::parse(ln + 1, format!("bad mask `{}`", fields[0])))?;
            let i: u8 = fields[1]
                .parse()
                .map_err(|_| Error::parse(ln + 1, format!("bad argument `{}`", fields[1])))?;
            let c: Color = fields[2]
                .parse()
                .map_err(|_| Error::parse(ln + 1, format!("bad color `{}`", fields[2])))?;
            table.set(mask, i, c).map_err(|e| Error::parse(ln + 1, e.to_string()))?;
            let idx = 2 * (mask as usize - 1) + i as usize;
            if seen[idx] {
                return Err(Error::parse(ln + 1, format!("duplicate key `{mask} {i}`")));
            }
            seen[idx] = true;
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(Error::parse(
                0,
                format!("incomplete table: missing key `{} {}`", missing / 2 + 1, missing % 2),
            ));
        }
        Ok(table)
    }
}

pub fn save_alpha(table: &AlphaTable, path: &Path) -> Result<()> {
    fs::write(path, table.to_text())?;
    Ok(())
}

pub fn load_alpha(path: &Path) -> Result<AlphaTable> {
    let text = fs::read_to_string(path)?;
    AlphaTable::from_text(&text)
}

/// The projection family: alpha(S, i) = i. Defined for every k >= 3.
pub fn make_alpha_eh(k: u32, ell: u32) -> Result<AlphaTable> {
    AlphaTable::from_fn(k, ell, |_, i| Color::from(i))
}

/// The parity family: alpha(S, i) = (min(S) + i) mod 2. Requires k >= 4.
pub fn make_alpha_one(k: u32, ell: u32) -> Result<AlphaTable> {
    if k < 4 {
        return Err(Error::input(format!("alpha-one needs k >= 4, got {k}")));
    }
    AlphaTable::from_fn(k, ell, |mask, i| (min_location(mask) + u32::from(i)) % 2)
}

/// Smallest location in a nonzero extrema mask.
fn min_location(mask: u32) -> u32 {
    mask.trailing_zeros() + 2
}

/// The auxiliary graph on {2,...,k-1} x {0,1}: a rung between (2,0) and
/// (2,1), two paths (j,i)-(j+1,i), and the two crossings (2,0)-(k-1,1) and
/// (2,1)-(k-1,0). Proper colorings of this graph are exactly the valid
/// `alpha-chi` parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GkGraph {
    k: u32,
    edges: Vec<((u32, u8), (u32, u8))>,
}

/// One endpoint pair, stored with the lexicographically smaller end first.
fn edge(a: (u32, u8), b: (u32, u8)) -> ((u32, u8), (u32, u8)) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

pub fn gk_graph(k: u32) -> Result<GkGraph> {
    if k < 4 {
        return Err(Error::input(format!(
            "the auxiliary graph needs k >= 4 (vertex set {{2,...,k-1}} x {{0,1}}), got {k}"
        )));
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::new();
    let mut push = |e: ((u32, u8), (u32, u8))| {
        if seen.insert(e) {
            edges.push(e);
        }
    };
    push(edge((2, 0), (2, 1)));
    for i in 0..2u8 {
        for j in 2..=k - 2 {
            push(edge((j, i), (j + 1, i)));
        }
    }
    push(edge((2, 0), (k - 1, 1)));
    push(edge((2, 1), (k - 1, 0)));
    Ok(GkGraph { k, edges })
}

impl GkGraph {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn vertices(&self) -> impl Iterator<Item = (u32, u8)> + '_ {
        (2..self.k).flat_map(|j| [(j, 0u8), (j, 1u8)])
    }

    pub fn vertex_count(&self) -> usize {
        2 * (self.k as usize - 2)
    }

    pub fn edges(&self) -> &[((u32, u8), (u32, u8))] {
        &self.edges
    }

    fn vertex_index(&self, v: (u32, u8)) -> usize {
        2 * (v.0 as usize - 2) + v.1 as usize
    }

    /// BFS two-coloring test.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            let (ia, ib) = (self.vertex_index(a), self.vertex_index(b));
            adj[ia].push(ib);
            adj[ib].push(ia);
        }
        let mut side = vec![None; n];
        for start in 0..n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!side[v].unwrap());
                            queue.push_back(w);
                        }
                        Some(s) if s == side[v].unwrap() => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }
}

/// A vertex coloring of [`GkGraph`], indexed by (location, side).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexColoring {
    k: u32,
    colors: Vec<Color>,
}

impl VertexColoring {
    pub fn from_fn(k: u32, mut f: impl FnMut(u32, u8) -> Color) -> Result<Self> {
        if k < 4 {
            return Err(Error::input(format!("vertex colorings need k >= 4, got {k}")));
        }
        let colors = (2..k).flat_map(|j| [f(j, 0), f(j, 1)]).collect();
        Ok(VertexColoring { k, colors })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn color(&self, j: u32, i: u8) -> Result<Color> {
        if !(2..self.k).contains(&j) || i > 1 {
            return Err(Error::input(format!(
                "vertex ({j},{i}) outside {{2,...,{}}} x {{0,1}}",
                self.k - 1
            )));
        }
        Ok(self.colors[2 * (j as usize - 2) + i as usize])
    }

    /// Distinct colors actually assigned, ascending.
    pub fn used_colors(&self) -> Vec<Color> {
        let mut u: Vec<Color> = self.colors.clone();
        u.sort_unstable();
        u.dedup();
        u
    }

    /// Errors with the offending edge if any edge is monochromatic.
    pub fn validate_proper(&self, graph: &GkGraph) -> Result<()> {
        if graph.k != self.k {
            return Err(Error::input(format!(
                "coloring is for k = {}, graph for k = {}",
                self.k, graph.k
            )));
        }
        for &(a, b) in graph.edges() {
            if self.color(a.0, a.1)? == self.color(b.0, b.1)? {
                return Err(Error::input(format!(
                    "not a proper coloring: edge ({},{})-({},{}) is monochromatic",
                    a.0, a.1, b.0, b.1
                )));
            }
        }
        Ok(())
    }
}

/// chi(j, i) = (j + i) mod 2. Proper exactly when k is odd: for even k the
/// crossing edges join vertices of equal parity.
pub fn proper_coloring_parity(k: u32) -> Result<VertexColoring> {
    if k < 4 {
        return Err(Error::input(format!("parity coloring needs k >= 5 and odd, got {k}")));
    }
    if k % 2 == 0 {
        return Err(Error::input(format!(
            "parity coloring needs odd k: for k = {k} the crossing edge (2,0)-({},1) \
             would be monochromatic",
            k - 1
        )));
    }
    let chi = VertexColoring::from_fn(k, |j, i| (j + u32::from(i)) % 2)?;
    chi.validate_proper(&gk_graph(k)?)?;
    Ok(chi)
}

/// A proper coloring with at most three colors, for every k >= 4: the
/// parity pattern with the last rung (k-1, either side) recolored to 2.
/// For k = 4 the last rung is also the crossing target, so both sides of
/// location 3 take color 2 directly.
pub fn proper_coloring_three(k: u32) -> Result<VertexColoring> {
    if k < 4 {
        return Err(Error::input(format!("three-coloring needs k >= 4, got {k}")));
    }
    let chi = VertexColoring::from_fn(k, |j, i| {
        if j == k - 1 {
            2
        } else {
            (j + u32::from(i)) % 2
        }
    })?;
    chi.validate_proper(&gk_graph(k)?)?;
    Ok(chi)
}

/// The graph family: alpha(S, i) = chi(min(S), i) for a proper coloring chi.
pub fn make_alpha_chi(k: u32, ell: u32, chi: &VertexColoring) -> Result<AlphaTable> {
    if k < 4 {
        return Err(Error::input(format!("alpha-chi needs k >= 4, got {k}")));
    }
    if chi.k() != k {
        return Err(Error::input(format!(
            "coloring is for k = {}, alpha table for k = {k}",
            chi.k()
        )));
    }
    chi.validate_proper(&gk_graph(k)?)?;
    let mut result = Ok(());
    let table = AlphaTable::from_fn(k, ell, |mask, i| match chi.color(min_location(mask), i) {
        Ok(c) => c,
        Err(e) => {
            if result.is_ok() {
                result = Err(e);
            }
            0
        }
    })?;
    result?;
    Ok(table)
}

/// Stepped color of raw vertex bits (strictly increasing b-values), shared
/// by the public tuple entry point and the lazy oracle. `width` is the base
/// ground size N; deltas land in 1..=N and index the base coloring.
fn stepped_color_from_bits(
    base: &dyn ColoringOracle,
    alpha: &AlphaTable,
    bits: &[u64],
) -> Result<Color> {
    let k = bits.len() - 1;
    let mut deltas = [0u32; 64];
    for i in 0..k {
        let x = bits[i] ^ bits[i + 1];
        deltas[i] = x.ilog2() + 1;
    }
    let d = &deltas[..k];
    let mut mask = 0u32;
    let mut first_is_max = None;
    for pos in 1..k.saturating_sub(1) {
        let (a, b, c) = (d[pos - 1], d[pos], d[pos + 1]);
        if a < b && b > c {
            mask |= 1 << (pos - 1);
            first_is_max.get_or_insert(true);
        } else if a > b && b < c {
            mask |= 1 << (pos - 1);
            first_is_max.get_or_insert(false);
        }
    }
    match first_is_max {
        None => {
            // Monotone: the deltas are k distinct coordinates; hand them to
            // the base coloring in increasing order.
            let mut set = [0u64; 64];
            if d[0] < d[k - 1] {
                for (i, &v) in d.iter().enumerate() {
                    set[i] = u64::from(v);
                }
            } else {
                for (i, &v) in d.iter().rev().enumerate() {
                    set[i] = u64::from(v);
                }
            }
            base.color_of(&set[..k])
        }
        Some(is_max) => alpha.color(mask, u8::from(is_max)),
    }
}

fn check_stepup_compat(base: &dyn ColoringOracle, alpha: &AlphaTable) -> Result<u32> {
    let k = base.uniformity();
    if alpha.k() != k {
        return Err(Error::input(format!(
            "alpha table is for k = {}, base colors {k}-subsets",
            alpha.k()
        )));
    }
    if alpha.num_colors() != base.num_colors() {
        return Err(Error::input(format!(
            "alpha table has {} colors, base has {}",
            alpha.num_colors(),
            base.num_colors()
        )));
    }
    let n = base.ground_size();
    if n > 63 {
        return Err(Error::input(format!(
            "stepping needs base ground size <= 63 (stepped ground is 2^N), got {n}"
        )));
    }
    Ok(n as u32)
}

/// Stepped color of an increasing (k+1)-tuple of width-N vertices over a
/// base coloring of k-subsets of [N].
pub fn stepup_color_of(
    base: &dyn ColoringOracle,
    alpha: &AlphaTable,
    tuple: &[VertexLabel],
) -> Result<Color> {
    let width = check_stepup_compat(base, alpha)?;
    let k = base.uniformity() as usize;
    if tuple.len() != k + 1 {
        return Err(Error::input(format!(
            "expected a {}-tuple over a {k}-uniform base, got {} vertices",
            k + 1,
            tuple.len()
        )));
    }
    let mut bits = [0u64; 64];
    for (i, v) in tuple.iter().enumerate() {
        if v.width() != width {
            return Err(Error::WidthMismatch(v.width(), width));
        }
        bits[i] = v.bits();
        if i > 0 && bits[i - 1] >= bits[i] {
            return Err(Error::input("tuple not strictly increasing"));
        }
    }
    stepped_color_from_bits(base, alpha, &bits[..=k])
}

/// Lazy coloring of (k+1)-subsets of a 2^N ground set; never materializes
/// its table. Ground element e corresponds to the vertex with bits e - 1.
pub struct SteppedOracle<B> {
    base: B,
    alpha: AlphaTable,
    width: u32,
}

pub fn stepup_oracle<B: ColoringOracle>(base: B, alpha: AlphaTable) -> Result<SteppedOracle<B>> {
    let width = check_stepup_compat(&base, &alpha)?;
    if base.uniformity() < 3 {
        return Err(Error::input(format!(
            "alpha step-up needs base uniformity >= 3, got {}; pair bases step up \
             through the two-to-three construction",
            base.uniformity()
        )));
    }
    Ok(SteppedOracle { base, alpha, width })
}

impl<B: ColoringOracle> SteppedOracle<B> {
    pub fn base(&self) -> &B {
        &self.base
    }

    pub fn alpha(&self) -> &AlphaTable {
        &self.alpha
    }

    /// Width of the stepped vertices (the base ground size).
    pub fn width(&self) -> u32 {
        self.width
    }
}

impl<B: ColoringOracle> ColoringOracle for SteppedOracle<B> {
    fn uniformity(&self) -> u32 {
        self.base.uniformity() + 1
    }

    fn ground_size(&self) -> u64 {
        1 << self.width
    }

    fn num_colors(&self) -> u32 {
        self.base.num_colors()
    }

    fn color_of(&self, subset: &[u64]) -> Result<Color> {
        check_subset(subset, self.uniformity(), self.ground_size())?;
        let mut bits = [0u64; 64];
        for (i, &e) in subset.iter().enumerate() {
            bits[i] = e - 1;
        }
        stepped_color_from_bits(&self.base, &self.alpha, &bits[..subset.len()])
    }
}

/// Stepped color of an increasing triple over a 2-coloring of pairs:
/// 2 * [delta1 > delta2] + base({delta1, delta2} sorted). Four colors
/// encode the order pattern of the deltas times the base color.
pub fn stepup2to3_color_of(base: &dyn ColoringOracle, triple: &[VertexLabel]) -> Result<Color> {
    check_two_to_three_base(base)?;
    let width = base.ground_size() as u32;
    if triple.len() != 3 {
        return Err(Error::input(format!("expected a triple, got {} vertices", triple.len())));
    }
    for v in triple {
        if v.width() != width {
            return Err(Error::WidthMismatch(v.width(), width));
        }
    }
    for pair in triple.windows(2) {
        if compare_vertices(pair[0], pair[1])? != std::cmp::Ordering::Less {
            return Err(Error::input("triple not strictly increasing"));
        }
    }
    two_to_three_from_bits(base, triple[0].bits(), triple[1].bits(), triple[2].bits())
}

fn two_to_three_from_bits(base: &dyn ColoringOracle, a: u64, b: u64, c: u64) -> Result<Color> {
    let d1 = u64::from((a ^ b).ilog2() + 1);
    let d2 = u64::from((b ^ c).ilog2() + 1);
    let pair = [d1.min(d2), d1.max(d2)];
    let order_bit: Color = if d1 > d2 { 2 } else { 0 };
    Ok(order_bit + base.color_of(&pair)?)
}

fn check_two_to_three_base(base: &dyn ColoringOracle) -> Result<()> {
    if base.uniformity() != 2 {
        return Err(Error::input(format!(
            "the two-to-three step needs a pair coloring, got uniformity {}",
            base.uniformity()
        )));
    }
    if base.num_colors() != 2 {
        return Err(Error::input(format!(
            "the two-to-three step needs a 2-coloring, got {} colors",
            base.num_colors()
        )));
    }
    if base.ground_size() > 63 {
        return Err(Error::input(format!(
            "stepping needs base ground size <= 63, got {}",
            base.ground_size()
        )));
    }
    Ok(())
}

/// Lazy 4-coloring of triples of a 2^N ground set built from a 2-coloring
/// of pairs of [N].
pub struct TwoToThreeOracle<B> {
    base: B,
    width: u32,
}

pub fn stepup2to3_oracle<B: ColoringOracle>(base: B) -> Result<TwoToThreeOracle<B>> {
    check_two_to_three_base(&base)?;
    let width = base.ground_size() as u32;
    Ok(TwoToThreeOracle { base, width })
}

impl<B: ColoringOracle> ColoringOracle for TwoToThreeOracle<B> {
    fn uniformity(&self) -> u32 {
        3
    }

    fn ground_size(&self) -> u64 {
        1 << self.width
    }

    fn num_colors(&self) -> u32 {
        4
    }

    fn color_of(&self, subset: &[u64]) -> Result<Color> {
        check_subset(subset, 3, self.ground_size())?;
        two_to_three_from_bits(&self.base, subset[0] - 1, subset[1] - 1, subset[2] - 1)
    }
}
