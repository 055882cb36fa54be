//! Binary-string vertices, their ordering, and the delta function.
//!
//! A vertex of the stepped ground set is a binary string of a fixed width N,
//! stored as the integer whose i-th least significant bit is coordinate i
//! (coordinates are 1-based). Comparing vertices is integer comparison, and
//! `delta` of two distinct vertices is the largest coordinate at which they
//! differ. Two structural facts drive everything downstream:
//!
//! * property (a): for a < b < c, delta(a,b) != delta(b,c);
//! * property (b): for an increasing tuple, delta(first,last) is the maximum
//!   of the consecutive deltas, and that maximum is attained exactly once.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Widest supported vertex label. Labels live in a u64, so stepped ground
/// sets go up to 2^63.
pub const MAX_WIDTH: u32 = 63;

/// A vertex of {0,1}^N for N = `width`, stored as an integer in [0, 2^N).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexLabel {
    bits: u64,
    width: u32,
}

impl VertexLabel {
    pub fn new(bits: u64, width: u32) -> Result<Self> {
        if width == 0 || width > MAX_WIDTH {
            return Err(Error::input(format!(
                "vertex width must be in 1..={MAX_WIDTH}, got {width}"
            )));
        }
        if width < 64 && bits >> width != 0 {
            return Err(Error::input(format!(
                "vertex bits {bits} out of range for width {width}"
            )));
        }
        Ok(VertexLabel { bits, width })
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn width(self) -> u32 {
        self.width
    }

    /// Coordinate i (1-based), as 0 or 1.
    pub fn coordinate(self, i: u32) -> Result<u8> {
        if i == 0 || i > self.width {
            return Err(Error::input(format!(
                "coordinate {i} out of range for width {}",
                self.width
            )));
        }
        Ok(((self.bits >> (i - 1)) & 1) as u8)
    }
}

/// A coordinate index in [1, N], the value of the delta function.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DeltaValue(u32);

impl DeltaValue {
    /// Coordinate indices are 1-based; 0 is never a valid delta.
    pub fn new(value: u32) -> Result<Self> {
        if value == 0 {
            return Err(Error::input("delta values are 1-based, got 0"));
        }
        Ok(DeltaValue(value))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

fn check_widths(a: VertexLabel, b: VertexLabel) -> Result<()> {
    if a.width != b.width {
        return Err(Error::WidthMismatch(a.width, b.width));
    }
    Ok(())
}

/// Order two vertices of equal width. Integer order on the stored bits,
/// which coincides with comparing the highest differing coordinate.
pub fn compare_vertices(a: VertexLabel, b: VertexLabel) -> Result<Ordering> {
    check_widths(a, b)?;
    Ok(a.bits.cmp(&b.bits))
}

/// Largest coordinate at which two distinct vertices differ.
pub fn delta(a: VertexLabel, b: VertexLabel) -> Result<DeltaValue> {
    check_widths(a, b)?;
    let x = a.bits ^ b.bits;
    if x == 0 {
        return Err(Error::UndefinedDelta);
    }
    Ok(DeltaValue(x.ilog2() + 1))
}

fn check_increasing(tuple: &[VertexLabel]) -> Result<()> {
    if tuple.len() < 2 {
        return Err(Error::input("tuple must have at least two vertices"));
    }
    for pair in tuple.windows(2) {
        if compare_vertices(pair[0], pair[1])? != Ordering::Less {
            return Err(Error::input(format!(
                "tuple not strictly increasing at bits {} then {}",
                pair[0].bits, pair[1].bits
            )));
        }
    }
    Ok(())
}

/// Consecutive deltas of a strictly increasing tuple: entry i is
/// delta(tuple[i], tuple[i+1]). Consecutive entries are always distinct
/// (property (a)).
pub fn delta_sequence(tuple: &[VertexLabel]) -> Result<Vec<DeltaValue>> {
    check_increasing(tuple)?;
    tuple.windows(2).map(|p| delta(p[0], p[1])).collect()
}

/// The 1-based position of the maximum in a delta sequence. Valid sequences
/// attain their maximum exactly once; a repeated maximum means the input did
/// not come from an increasing tuple.
pub fn max_delta_index(deltas: &[DeltaValue]) -> Result<usize> {
    if deltas.is_empty() {
        return Err(Error::input("delta sequence is empty"));
    }
    let mut at = 0usize;
    let mut seen_twice = false;
    for (i, d) in deltas.iter().enumerate().skip(1) {
        match d.cmp(&deltas[at]) {
            Ordering::Greater => {
                at = i;
                seen_twice = false;
            }
            Ordering::Equal => seen_twice = true,
            Ordering::Less => {}
        }
    }
    if seen_twice {
        return Err(Error::invariant(format!(
            "maximum delta {} attained more than once; not a valid delta sequence",
            deltas[at].get()
        )));
    }
    Ok(at + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(bits: u64, width: u32) -> VertexLabel {
        VertexLabel::new(bits, width).unwrap()
    }

    fn seq(bits: &[u64], width: u32) -> Vec<VertexLabel> {
        bits.iter().map(|&b| v(b, width)).collect()
    }

    #[test]
    fn compare_follows_integer_order() {
        assert_eq!(compare_vertices(v(5, 3), v(6, 3)).unwrap(), Ordering::Less);
        assert_eq!(compare_vertices(v(3, 3), v(3, 3)).unwrap(), Ordering::Equal);
        assert_eq!(compare_vertices(v(4, 3), v(1, 3)).unwrap(), Ordering::Greater);
    }

    #[test]
    fn compare_rejects_width_mismatch() {
        assert!(matches!(
            compare_vertices(v(1, 3), v(1, 4)),
            Err(Error::WidthMismatch(3, 4))
        ));
    }

    #[test]
    fn label_construction_checks_range() {
        assert!(VertexLabel::new(8, 3).is_err());
        assert!(VertexLabel::new(7, 3).is_ok());
        assert!(VertexLabel::new(0, 0).is_err());
        assert!(VertexLabel::new(0, 64).is_err());
        assert!(VertexLabel::new(u64::MAX >> 1, 63).is_ok());
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(v(5, 3), v(6, 3)).unwrap().get(), 2);
        for n in 1..=20 {
            assert_eq!(delta(v(0, n), v(1 << (n - 1), n)).unwrap().get(), n);
        }
        assert_eq!(delta(v(7, 3), v(6, 3)).unwrap().get(), 1);
    }

    #[test]
    fn delta_errors() {
        assert!(matches!(delta(v(3, 3), v(3, 3)), Err(Error::UndefinedDelta)));
        assert!(matches!(delta(v(3, 3), v(3, 4)), Err(Error::WidthMismatch(3, 4))));
    }

    #[test]
    fn coordinate_reads_bits() {
        let x = v(5, 3);
        assert_eq!(x.coordinate(1).unwrap(), 1);
        assert_eq!(x.coordinate(2).unwrap(), 0);
        assert_eq!(x.coordinate(3).unwrap(), 1);
        assert!(x.coordinate(0).is_err());
        assert!(x.coordinate(4).is_err());
    }

    #[test]
    fn delta_sequence_examples() {
        let got: Vec<u32> = delta_sequence(&seq(&[0, 1, 3, 7, 15], 5))
            .unwrap()
            .iter()
            .map(|d| d.get())
            .collect();
        assert_eq!(got, vec![1, 2, 3, 4]);

        let got: Vec<u32> = delta_sequence(&seq(&[0, 4, 5, 7, 15], 5))
            .unwrap()
            .iter()
            .map(|d| d.get())
            .collect();
        assert_eq!(got, vec![3, 1, 2, 4]);

        let got: Vec<u32> = delta_sequence(&seq(&[0, 1], 5))
            .unwrap()
            .iter()
            .map(|d| d.get())
            .collect();
        assert_eq!(got, vec![1]);
    }

    #[test]
    fn delta_sequence_rejects_non_increasing() {
        assert!(delta_sequence(&seq(&[3, 3], 5)).is_err());
        assert!(delta_sequence(&seq(&[4, 2], 5)).is_err());
        assert!(delta_sequence(&seq(&[1], 5)).is_err());
    }

    fn dv(values: &[u32]) -> Vec<DeltaValue> {
        values.iter().map(|&x| DeltaValue::new(x).unwrap()).collect()
    }

    #[test]
    fn max_delta_index_examples() {
        assert_eq!(max_delta_index(&dv(&[1, 2, 3, 4])).unwrap(), 4);
        assert_eq!(max_delta_index(&dv(&[3, 1, 2, 4])).unwrap(), 4);
        assert_eq!(max_delta_index(&dv(&[4, 2, 1])).unwrap(), 1);
        assert_eq!(max_delta_index(&dv(&[5])).unwrap(), 1);
    }

    #[test]
    fn max_delta_index_rejects_repeated_maximum() {
        assert!(matches!(
            max_delta_index(&dv(&[2, 1, 2])),
            Err(Error::Invariant(_))
        ));
        assert!(max_delta_index(&dv(&[])).is_err());
    }

    #[test]
    fn properties_exhaustive_small_width() {
        // Every increasing triple of width 5: property (a), and property (b)
        // together with the unique maximum.
        let n = 5u32;
        let top = 1u64 << n;
        for a in 0..top {
            for b in (a + 1)..top {
                for c in (b + 1)..top {
                    let t = seq(&[a, b, c], n);
                    let d = delta_sequence(&t).unwrap();
                    assert_ne!(d[0], d[1], "property (a) at ({a},{b},{c})");
                    let end = delta(t[0], t[2]).unwrap();
                    assert_eq!(end, *d.iter().max().unwrap(), "property (b)");
                    max_delta_index(&d).unwrap();
                }
            }
        }
    }

    fn increasing_tuple(width: u32, len: usize) -> impl Strategy<Value = Vec<VertexLabel>> {
        prop::collection::btree_set(0..(1u64 << width), len)
            .prop_map(move |s| s.into_iter().map(|b| v(b, width)).collect())
    }

    proptest! {
        #[test]
        fn symmetry(a in 0u64..1 << 16, b in 0u64..1 << 16) {
            prop_assume!(a != b);
            let (x, y) = (v(a, 16), v(b, 16));
            prop_assert_eq!(delta(x, y).unwrap(), delta(y, x).unwrap());
        }

        #[test]
        fn order_agrees_with_highest_differing_bit(a in 0u64..1 << 16, b in 0u64..1 << 16) {
            prop_assume!(a != b);
            let (x, y) = (v(a, 16), v(b, 16));
            let d = delta(x, y).unwrap().get();
            let less = compare_vertices(x, y).unwrap() == Ordering::Less;
            prop_assert_eq!(less, x.coordinate(d).unwrap() == 0 && y.coordinate(d).unwrap() == 1);
        }

        #[test]
        fn property_b_long_tuples(t in increasing_tuple(24, 8)) {
            let d = delta_sequence(&t).unwrap();
            let end = delta(t[0], t[7]).unwrap();
            prop_assert_eq!(end, *d.iter().max().unwrap());
            for w in d.windows(2) {
                prop_assert_ne!(w[0], w[1]);
            }
            max_delta_index(&d).unwrap();
        }
    }
}
