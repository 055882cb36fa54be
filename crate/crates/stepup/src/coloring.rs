//! Explicit colorings of k-subsets of [N], colex indexing, seeded random
//! generation, and the oracle interface shared by every coloring in the
//! toolkit.
//!
//! Ground elements are the integers 1..=N. A subset is passed as a strictly
//! increasing slice. Explicit tables are indexed by colex rank, which does
//! not depend on N, so a table remains valid when the ground set grows.
//!
//! Random tables follow a fixed generation contract so that files and
//! certificates reproduce bit-exactly anywhere: the entry at colex rank r is
//! `(mix64(seed ^ (r + 1)) * ell) >> 64`, where `mix64` is the splitmix64
//! finalizer (see [`mix64`] for the constants; they are normative).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Colors are dense integers 0..ell-1.
pub type Color = u32;

/// Largest explicit table the toolkit will materialize (entries).
pub const MAX_TABLE_ENTRIES: u128 = 100_000_000;

/// A deterministic coloring of all u-subsets of a ground set 1..=M.
///
/// Implementations must answer repeated queries identically and must be
/// safely shareable among parallel search workers.
pub trait ColoringOracle: Send + Sync {
    /// Subset size u that this oracle colors.
    fn uniformity(&self) -> u32;
    /// Ground set size M; elements are 1..=M.
    fn ground_size(&self) -> u64;
    /// Number of colors ell; every answer lies in 0..ell.
    fn num_colors(&self) -> u32;
    /// Color of a strictly increasing u-subset of 1..=M.
    fn color_of(&self, subset: &[u64]) -> Result<Color>;
}

/// Validates that `subset` is a strictly increasing u-subset of 1..=M.
pub fn check_subset(subset: &[u64], uniformity: u32, ground_size: u64) -> Result<()> {
    if subset.len() != uniformity as usize {
        return Err(Error::input(format!(
            "expected a {uniformity}-subset, got {} elements",
            subset.len()
        )));
    }
    let mut prev = 0u64;
    for &e in subset {
        if e <= prev {
            return Err(Error::input(format!(
                "subset not strictly increasing at element {e}"
            )));
        }
        if e > ground_size {
            return Err(Error::input(format!(
                "element {e} exceeds ground size {ground_size}"
            )));
        }
        prev = e;
    }
    Ok(())
}

/// Binomial coefficient with saturation: values above u128::MAX clamp.
/// Exact for every value the toolkit materializes or budgets.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 1..=k {
        let term = (n - k + j) as u128;
        acc = match acc.checked_mul(term) {
            Some(x) => x / j as u128,
            None => return u128::MAX,
        };
    }
    acc
}

/// Colex rank of a strictly increasing k-subset of positive integers:
/// sum over positions j = 1..=k of C(a_j - 1, j). Independent of any
/// ambient ground size.
pub fn colex_rank(subset: &[u64]) -> Result<u128> {
    if subset.is_empty() {
        return Err(Error::input("cannot rank an empty subset"));
    }
    let mut prev = 0u64;
    let mut rank: u128 = 0;
    for (j, &a) in subset.iter().enumerate() {
        if a <= prev {
            return Err(Error::input(format!(
                "subset not strictly increasing at element {a}"
            )));
        }
        rank += binomial(a - 1, j as u64 + 1);
        prev = a;
    }
    Ok(rank)
}

/// Inverse of [`colex_rank`] for k-subsets of 1..=N.
pub fn colex_unrank(rank: u128, k: u32, n: u64) -> Result<Vec<u64>> {
    if k == 0 || u64::from(k) > n {
        return Err(Error::input(format!("invalid subset size {k} for ground {n}")));
    }
    if rank >= binomial(n, k as u64) {
        return Err(Error::input(format!(
            "rank {rank} out of range for {k}-subsets of [{n}]"
        )));
    }
    let mut rest = rank;
    let mut out = vec![0u64; k as usize];
    let mut hi = n;
    for j in (1..=k as u64).rev() {
        // Largest a <= hi with C(a－1, j) <= rest; scan downward from hi.
        let mut a = hi;
        while binomial(a - 1, j) > rest {
            a -= 1;
        }
        rest -= binomial(a - 1, j);
        out[j as usize - 1] = a;
        hi = a - 1;
    }
    Ok(out)
}

/// splitmix64 finalizer. The constants are part of the file-format contract:
/// entry(rank) = (mix64(seed ^ (rank+1)) * ell) >> 64.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// An explicit coloring of all k-subsets of 1..=N, stored as a flat table
/// in colex rank order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct KUniformColoring {
    k: u32,
    n: u64,
    ell: u32,
    table: Vec<Color>,
}

impl KUniformColoring {
    pub fn new(k: u32, n: u64, ell: u32, table: Vec<Color>) -> Result<Self> {
        let expected = table_len(k, n, ell)?;
        if table.len() as u128 != expected {
            return Err(Error::input(format!(
                "table has {} entries, expected C({n},{k}) = {expected}",
                table.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&c| c >= ell) {
            return Err(Error::input(format!("color {bad} out of range 0..{ell}")));
        }
        Ok(KUniformColoring { k, n, ell, table })
    }

    /// Deterministic seeded table: entry(rank) = (mix64(seed ^ (rank+1)) * ell) >> 64.
    pub fn random(k: u32, n: u64, ell: u32, seed: u64) -> Result<Self> {
        let len = table_len(k, n, ell)?;
        let table = (0..len as u64)
            .map(|r| ((u128::from(mix64(seed ^ (r + 1))) * u128::from(ell)) >> 64) as Color)
            .collect();
        Ok(KUniformColoring { k, n, ell, table })
    }

    pub fn color_at_rank(&self, rank: u64) -> Result<Color> {
        self.table
            .get(rank as usize)
            .copied()
            .ok_or_else(|| Error::input(format!("rank {rank} out of range")))
    }

    pub fn table(&self) -> &[Color] {
        &self.table
    }

    /// Renders the coloring in the `.kcol` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(self.table.len() * 2 + 32);
        let _ = writeln!(out, "kcol 1");
        let _ = writeln!(out, "{} {} {}", self.k, self.n, self.ell);
        let _ = writeln!(out, "colex");
        for c in &self.table {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    /// Parses the `.kcol` text format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (ln, magic) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty file"))?;
        if magic.trim() != "kcol 1" {
            return Err(Error::parse(ln + 1, format!("expected `kcol 1`, got `{magic}`")));
        }
        let (ln, header) = lines
            .next()
            .ok_or_else(|| Error::parse(2, "missing `k N ell` header"))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::parse(ln + 1, "header must be `k N ell`"));
        }
        let k: u32 = parse_field(ln + 1, fields[0], "k")?;
        let n: u64 = parse_field(ln + 1, fields[1], "N")?;
        let ell: u32 = parse_field(ln + 1, fields[2], "ell")?;
        let (ln, order) = lines
            .next()
            .ok_or_else(|| Error::parse(3, "missing index order line"))?;
        if order.trim() != "colex" {
            return Err(Error::parse(ln + 1, format!("expected `colex`, got `{order}`")));
        }
        let expected = table_len(k, n, ell).map_err(|e| Error::parse(2, e.to_string()))?;
        let mut table = Vec::with_capacity(expected as usize);
        let mut last_line = 3;
        for (ln, line) in lines {
            let line = line.trim();
            last_line = ln + 1;
            if line.is_empty() {
                return Err(Error::parse(last_line, "blank entry line"));
            }
            let c: Color = parse_field(last_line, line, "color")?;
            if c >= ell {
                return Err(Error::parse(last_line, format!("color {c} out of range 0..{ell}")));
            }
            table.push(c);
        }
        if table.len() as u128 != expected {
            return Err(Error::parse(
                last_line,
                format!("found {} entries, expected C({n},{k}) = {expected}", table.len()),
            ));
        }
        KUniformColoring::new(k, n, ell, table)
    }
}

fn parse_field<T: std::str::FromStr>(line: usize, text: &str, what: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::parse(line, format!("cannot parse {what} from `{text}`")))
}

fn table_len(k: u32, n: u64, ell: u32) -> Result<u128> {
    if k == 0 {
        return Err(Error::input("uniformity must be at least 1"));
    }
    if u64::from(k) > n {
        return Err(Error::input(format!("ground size {n} smaller than uniformity {k}")));
    }
    if ell == 0 {
        return Err(Error::input("need at least one color"));
    }
    let len = binomial(n, k as u64);
    if len > MAX_TABLE_ENTRIES {
        return Err(Error::input(format!(
            "C({n},{k}) = {len} entries exceeds the explicit-table limit {MAX_TABLE_ENTRIES}"
        )));
    }
    Ok(len)
}

impl ColoringOracle for KUniformColoring {
    fn uniformity(&self) -> u32 {
        self.k
    }

    fn ground_size(&self) -> u64 {
        self.n
    }

    fn num_colors(&self) -> u32 {
        self.ell
    }

    fn color_of(&self, subset: &[u64]) -> Result<Color> {
        check_subset(subset, self.k, self.n)?;
        let rank = colex_rank(subset)?;
        Ok(self.table[rank as usize])
    }
}

impl<T: ColoringOracle + ?Sized> ColoringOracle for Arc<T> {
    fn uniformity(&self) -> u32 {
        (**self).uniformity()
    }

    fn ground_size(&self) -> u64 {
        (**self).ground_size()
    }

    fn num_colors(&self) -> u32 {
        (**self).num_colors()
    }

    fn color_of(&self, subset: &[u64]) -> Result<Color> {
        (**self).color_of(subset)
    }
}

pub fn save_coloring(coloring: &KUniformColoring, path: &Path) -> Result<()> {
    fs::write(path, coloring.to_text())?;
    Ok(())
}

pub fn load_coloring(path: &Path) -> Result<KUniformColoring> {
    let text = fs::read_to_string(path)?;
    KUniformColoring::from_text(&text)
}

/// Debug path: turn any small oracle into an explicit table by querying
/// every subset. Gated to tiny instances; the point is cross-checking lazy
/// oracles entry by entry.
pub fn materialize_oracle(oracle: &dyn ColoringOracle) -> Result<KUniformColoring> {
    let (u, m, ell) = (oracle.uniformity(), oracle.ground_size(), oracle.num_colors());
    if m > 64 {
        return Err(Error::input(format!(
            "materialization is a debug path, gated to ground size <= 64 (got {m})"
        )));
    }
    let len = table_len(u, m, ell)?;
    let mut table = Vec::with_capacity(len as usize);
    let mut subset: Vec<u64> = (1..=u64::from(u)).collect();
    loop {
        table.push(oracle.color_of(&subset)?);
        if !next_subset(&mut subset, m) {
            break;
        }
    }
    KUniformColoring::new(u, m, ell, table)
}

/// Advances a strictly increasing subset of 1..=m to its colex successor.
/// Returns false when the last subset was passed in.
pub fn next_subset(subset: &mut [u64], m: u64) -> bool {
    let k = subset.len();
    for i in 0..k {
        let ceiling = if i + 1 < k { subset[i + 1] - 1 } else { m };
        if subset[i] < ceiling {
            subset[i] += 1;
            for (j, slot) in subset.iter_mut().enumerate().take(i) {
                *slot = j as u64 + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(16, 5), 4368);
        assert_eq!(binomial(5, 6), 0);
        assert_eq!(binomial(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn colex_rank_first_subsets() {
        assert_eq!(colex_rank(&[1, 2, 3]).unwrap(), 0);
        assert_eq!(colex_rank(&[1, 2, 4]).unwrap(), 1);
        assert_eq!(colex_rank(&[1, 3, 4]).unwrap(), 2);
        assert_eq!(colex_rank(&[2, 3, 4]).unwrap(), 3);
        assert_eq!(colex_rank(&[1, 2, 5]).unwrap(), 4);
    }

    #[test]
    fn unrank_last_subset() {
        for (k, n) in [(3u32, 7u64), (4, 9), (1, 5), (5, 5)] {
            let last = binomial(n, k as u64) - 1;
            let expect: Vec<u64> = (n - k as u64 + 1..=n).collect();
            assert_eq!(colex_unrank(last, k, n).unwrap(), expect);
        }
    }

    #[test]
    fn rank_unrank_roundtrip_exhaustive() {
        for n in 1u64..=10 {
            for k in 1u32..=n as u32 {
                let total = binomial(n, k as u64);
                let mut subset: Vec<u64> = (1..=u64::from(k)).collect();
                let mut rank = 0u128;
                loop {
                    assert_eq!(colex_rank(&subset).unwrap(), rank);
                    assert_eq!(colex_unrank(rank, k, n).unwrap(), subset);
                    rank += 1;
                    if !next_subset(&mut subset, n) {
                        break;
                    }
                }
                assert_eq!(rank, total);
            }
        }
    }

    #[test]
    fn rank_ignores_ground_size() {
        // Ranks below C(6,3) unrank to the same subset inside [6] and [40].
        for rank in 0..binomial(6, 3) {
            assert_eq!(
                colex_unrank(rank, 3, 6).unwrap(),
                colex_unrank(rank, 3, 40).unwrap()
            );
        }
    }

    #[test]
    fn mix64_fixed_points() {
        // Frozen outputs of the normative finalizer.
        assert_eq!(mix64(1), 0x5692_161d_100b_05e5);
        assert_eq!(mix64(43), 0x4f0a_61d9_c798_d8ca);
    }

    #[test]
    fn random_tables_match_frozen_fixtures() {
        // Values computed once from the generation contract and frozen.
        let cases: [(u32, u64, u32, u64, &[Color]); 5] = [
            (2, 4, 2, 42, &[0, 1, 0, 0, 0, 1]),
            (4, 5, 2, 1, &[0, 0, 1, 1, 1]),
            (4, 5, 2, 42, &[0, 1, 0, 0, 0]),
            (4, 5, 3, 7, &[2, 2, 2, 0, 2]),
            (5, 6, 2, 7, &[1, 1, 1, 0, 1, 0]),
        ];
        for (k, n, ell, seed, expect) in cases {
            let c = KUniformColoring::random(k, n, ell, seed).unwrap();
            assert_eq!(c.table(), expect, "({k},{n},{ell},{seed})");
        }
    }

    #[test]
    fn random_is_pure_and_one_color_means_zero() {
        let a = KUniformColoring::random(3, 8, 4, 99).unwrap();
        let b = KUniformColoring::random(3, 8, 4, 99).unwrap();
        assert_eq!(a, b);
        let z = KUniformColoring::random(3, 8, 1, 99).unwrap();
        assert!(z.table().iter().all(|&c| c == 0));
    }

    #[test]
    fn color_of_validates_and_looks_up() {
        let c = KUniformColoring::random(4, 5, 2, 1).unwrap();
        assert_eq!(c.color_of(&[1, 2, 3, 4]).unwrap(), c.table()[0]);
        assert!(c.color_of(&[1, 2, 3]).is_err());
        assert!(c.color_of(&[1, 2, 3, 6]).is_err());
        assert!(c.color_of(&[1, 2, 4, 3]).is_err());
        assert!(c.color_of(&[1, 2, 3, 3]).is_err());
    }

    #[test]
    fn kcol_roundtrip() {
        let c = KUniformColoring::random(3, 7, 3, 2026).unwrap();
        let text = c.to_text();
        assert_eq!(KUniformColoring::from_text(&text).unwrap(), c);
    }

    #[test]
    fn kcol_parse_errors_name_lines() {
        let good = KUniformColoring::random(2, 4, 2, 5).unwrap().to_text();
        let mut truncated: Vec<&str> = good.lines().collect();
        truncated.pop();
        let err = KUniformColoring::from_text(&truncated.join("\n")).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");

        let bad_color = good.replacen("\n0\n", "\n2\n", 1);
        let err = KUniformColoring::from_text(&bad_color).unwrap_err();
        assert!(err.to_string().contains("out of range"), "{err}");

        let bad_magic = good.replacen("kcol 1", "kcol 2", 1);
        let err = KUniformColoring::from_text(&bad_magic).unwrap_err();
        assert!(err.to_string().contains("line 1"), "{err}");
    }

    #[test]
    fn materialize_agrees_with_direct_queries() {
        let c = KUniformColoring::random(3, 9, 2, 11).unwrap();
        let m = materialize_oracle(&c).unwrap();
        assert_eq!(m, c);
    }

    proptest! {
        #[test]
        fn rank_unrank_random(n in 1u64..=40, seed in any::<u64>()) {
            let k = (seed % n) as u32 + 1;
            let k = k.min(8);
            let total = binomial(n, k as u64);
            let rank = u128::from(mix64(seed)) % total;
            let subset = colex_unrank(rank, k, n).unwrap();
            prop_assert_eq!(colex_rank(&subset).unwrap(), rank);
        }

        #[test]
        fn serialization_roundtrip_random(k in 1u32..=4, extra in 0u64..6, ell in 1u32..5, seed in any::<u64>()) {
            let n = u64::from(k) + extra;
            let c = KUniformColoring::random(k, n, ell, seed).unwrap();
            prop_assert_eq!(&KUniformColoring::from_text(&c.to_text()).unwrap(), &c);
        }
    }
}
