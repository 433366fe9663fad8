//! Arithmetic extension of a basis by a fixed step and the extensibility test.
//!
//! A basis `A_j` ending at `b_0 = a_j` is extended by `b_i = b_{i-1} + p`. It is
//! `p`-extensible when every such extension stays admissible. That happens
//! exactly when the residues of `a_0..a_j` cover every class mod `p` and the
//! extension by `k*` terms is admissible, where `k*` is the unique index with
//! `b_{k*} < 2 b_0 <= b_{k*+1}`.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::basis::{check_modulus, is_p_basis, residue_profile, Basis};
use crate::error::{Error, Result};
use crate::reach::ReachSet;

/// `base` followed by `m` terms `b_i = b_{i-1} + p`.
pub fn extend_arithmetic(base: &Basis, p: u32, m: u32) -> Result<Basis> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "extension step must be positive".into(),
        ));
    }
    let b0 = base.last();
    let mut elements = Vec::with_capacity(base.len() + m as usize);
    elements.extend_from_slice(base.elements());
    elements.extend((1..=m).map(|i| b0 + i * p));
    Ok(Basis::from_unchecked(elements))
}

/// `k* = ceil(b0 / p) - 1`, the unique `k` with `b_k < 2 b0 <= b_{k+1}`.
pub fn extension_threshold(b0: u32, p: u32) -> u32 {
    assert!(b0 >= 1 && p >= 1, "threshold needs b0 >= 1 and p >= 1");
    b0.div_ceil(p) - 1
}

/// How many arithmetic extensions stay admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtensionLimit {
    Finite(u32),
    Unbounded,
}

impl ExtensionLimit {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtensionLimit::Finite(s) => Some(s),
            ExtensionLimit::Unbounded => None,
        }
    }
}

impl fmt::Display for ExtensionLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtensionLimit::Finite(s) => write!(f, "{s}"),
            ExtensionLimit::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl Serialize for ExtensionLimit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtensionLimit::Finite(n) => s.serialize_u32(*n),
            ExtensionLimit::Unbounded => s.serialize_str("unbounded"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtensionLimit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct LimitVisitor;

        impl Visitor<'_> for LimitVisitor {
            type Value = ExtensionLimit;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"unbounded\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                u32::try_from(v)
                    .map(ExtensionLimit::Finite)
                    .map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                u32::try_from(v)
                    .map(ExtensionLimit::Finite)
                    .map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v == "unbounded" {
                    Ok(ExtensionLimit::Unbounded)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }

        d.deserialize_any(LimitVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub extensible: bool,
    pub k_star: u32,
    /// Largest `i` with the `i`-fold extension admissible.
    pub s: ExtensionLimit,
    pub residues_complete: bool,
}

/// Decide `p`-extensibility of an admissible basis and measure `s`.
pub fn is_extensible(base: &Basis, p: u32) -> Result<ExtensionReport> {
    check_modulus(p, 2)?;
    let reach = ReachSet::new(base);
    let start = reach.result();
    if !start.admissible {
        return Err(Error::Inadmissible {
            range: start.n,
            last: base.last(),
        });
    }
    let residues_complete = residue_profile(base, p)?.complete;
    let b0 = base.last();
    let k_star = extension_threshold(b0, p);
    let s = admissible_extensions(reach, p, k_star);
    let extensible = residues_complete && s >= k_star;
    let s = if extensible {
        ExtensionLimit::Unbounded
    } else {
        // With a residue missing the extension must break once b_{m-1} >= 2 b0,
        // i.e. by m = k* + 2, so the scan above always found the failure.
        debug_assert!(s <= k_star + 1, "s = {s}, k* = {k_star}");
        ExtensionLimit::Finite(s)
    };
    Ok(ExtensionReport {
        extensible,
        k_star,
        s,
        residues_complete,
    })
}

/// Step through `b_1, b_2, ...` until the extension first becomes inadmissible
/// and return the last admissible count. Stops early at `k_star` with full
/// residues (the extension is then admissible forever) and at `k_star + 2`
/// otherwise.
fn admissible_extensions(mut reach: ReachSet, p: u32, k_star: u32) -> u32 {
    let mut b = reach.top();
    for i in 1..=k_star + 2 {
        b += p;
        reach.push(b).expect("arithmetic terms increase");
        if reach.range() < b {
            return i - 1;
        }
    }
    k_star + 2
}

/// Fast extensibility verdict for a basis already known to be admissible and
/// residue-complete, given its 2-range. Used in the census hot path.
pub(crate) fn extensible_from_range(elements: &[u32], range: u32, p: u32) -> bool {
    let b0 = *elements.last().expect("non-empty");
    let k_star = extension_threshold(b0, p);
    if k_star == 0 {
        return true;
    }
    // The first extension alone needs range >= b_1 - 1.
    if range + 1 < b0 + p {
        return false;
    }
    let mut reach = ReachSet::new(&Basis::from_unchecked(elements.to_vec()));
    let mut b = b0;
    for _ in 0..k_star {
        b += p;
        reach.push(b).expect("arithmetic terms increase");
        if reach.range() < b {
            return false;
        }
    }
    true
}

/// Check that the range of every extension `A_{p-1+k}`, `k <= k_max`, whose next
/// term satisfies `b_{k+1} >= 2 b_0` is exactly `b_{k+1} - 1`.
///
/// Extensions below that threshold may legitimately reach further and are not
/// checked.
pub fn check_settled_ranges(pbasis: &Basis, p: u32, k_max: u32) -> Result<bool> {
    require_extensible_p_basis(pbasis, p)?;
    let b0 = pbasis.last();
    let mut reach = ReachSet::new(pbasis);
    let mut b = b0;
    for k in 0..=k_max {
        if k > 0 {
            b += p;
            reach.push(b)?;
        }
        let next = b + p;
        if next >= 2 * b0 && reach.range() != next - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ranges `n(A_{j+k})` for `k = 0..=k_max`.
pub fn extension_ranges(base: &Basis, p: u32, k_max: u32) -> Result<Vec<u32>> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "extension step must be positive".into(),
        ));
    }
    let mut reach = ReachSet::new(base);
    let mut out = vec![reach.range()];
    let mut b = base.last();
    for _ in 0..k_max {
        b += p;
        reach.push(b)?;
        out.push(reach.range());
    }
    Ok(out)
}

pub(crate) fn require_extensible_p_basis(pbasis: &Basis, p: u32) -> Result<()> {
    if !is_p_basis(pbasis, p) {
        return Err(Error::NotPBasis {
            basis: pbasis.to_string(),
            p,
        });
    }
    if !is_extensible(pbasis, p)?.extensible {
        return Err(Error::NotExtensible {
            basis: pbasis.to_string(),
            p,
        });
    }
    Ok(())
}

/// An extended basis made admissible by adding its gaps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub basis: Basis,
    /// Values that were not generated below `b_m` and were inserted.
    pub added: Vec<u32>,
    /// Number of arithmetic terms appended.
    pub m: u32,
}

/// Extend `base` by `m` terms with `b_{m-1} < 2 b0 <= b_m`, then insert every
/// value below `b_m` that is still not generated.
///
/// The result is admissible, and because the original residues are complete it
/// is extensible with the same step.
pub fn extensible_completion(base: &Basis, p: u32) -> Result<Completion> {
    let residues = residue_profile(base, p)?;
    if !residues.complete {
        return Err(Error::ResiduesIncomplete {
            basis: base.to_string(),
            p,
        });
    }
    let b0 = base.last();
    let m = b0.div_ceil(p);
    let extended = extend_arithmetic(base, p, m)?;
    let top = extended.last();
    let reach = ReachSet::new(&extended);
    let added: Vec<u32> = reach.gaps_below(top).collect();
    let mut elements = extended.into_elements();
    elements.extend_from_slice(&added);
    elements.sort_unstable();
    Ok(Completion {
        basis: Basis::new(elements)?,
        added,
        m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reach::range;

    fn b(xs: &[u32]) -> Basis {
        Basis::from_slice(xs).unwrap()
    }

    // Admissibility of every extension up to `m`, computed from scratch.
    fn brute_s(base: &Basis, p: u32, m: u32) -> Option<u32> {
        (0..=m)
            .take_while(|&i| range(&extend_arithmetic(base, p, i).unwrap()).admissible)
            .last()
    }

    #[test]
    fn arithmetic_extension() {
        assert_eq!(
            extend_arithmetic(&b(&[1, 3, 4, 7]), 5, 3)
                .unwrap()
                .elements(),
            &[1, 3, 4, 7, 12, 17, 22]
        );
        let base = b(&[1, 3, 5, 6, 7, 10, 12]);
        assert_eq!(extend_arithmetic(&base, 8, 0).unwrap(), base);
        assert_eq!(
            &extend_arithmetic(&base, 8, 3).unwrap().elements()[7..],
            &[20, 28, 36]
        );
        assert!(extend_arithmetic(&base, 0, 3).is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(extension_threshold(7, 5), 1);
        assert_eq!(extension_threshold(22, 10), 2);
        assert_eq!(extension_threshold(48, 15), 3);
        assert_eq!(extension_threshold(53, 17), 3);
        assert_eq!(extension_threshold(26, 11), 2);
        assert_eq!(extension_threshold(2, 3), 0);
        // b_k < 2 b0 <= b_{k+1}
        for b0 in 1..60 {
            for p in 1..20 {
                let k = extension_threshold(b0, p);
                assert!(b0 + k * p < 2 * b0 && 2 * b0 <= b0 + (k + 1) * p);
            }
        }
    }

    #[test]
    fn sharpness_examples() {
        let cases: [(&[u32], u32, u32, u32); 5] = [
            (&[1, 3, 4, 7], 5, 0, 1),
            (&[1, 2, 5, 6, 8, 9, 18, 21, 25, 26], 11, 1, 2),
            (
                &[1, 3, 4, 7, 9, 10, 11, 14, 23, 29, 30, 32, 33, 39, 42, 53],
                17,
                2,
                3,
            ),
            (&[1, 3, 4, 5, 7, 8, 9, 16, 22], 10, 0, 2),
            (
                &[1, 2, 4, 7, 9, 12, 13, 21, 25, 29, 35, 38, 41, 48],
                15,
                1,
                3,
            ),
        ];
        for (xs, p, s, k) in cases {
            let report = is_extensible(&b(xs), p).unwrap();
            assert!(!report.extensible, "{xs:?}");
            assert!(report.residues_complete);
            assert_eq!(report.s, ExtensionLimit::Finite(s), "{xs:?}");
            assert_eq!(report.k_star, k, "{xs:?}");
        }
    }

    #[test]
    fn published_extension_ranges() {
        let ranges = extension_ranges(&b(&[1, 3, 4, 7]), 5, 1).unwrap();
        assert_eq!(ranges[0], 8);
        let ranges = extension_ranges(&b(&[1, 2, 5, 6, 8, 9, 18, 21, 25, 26]), 11, 1).unwrap();
        assert_eq!(ranges[1], 39);
        let ranges = extension_ranges(&b(&[1, 3, 4, 5, 7, 8, 9, 16, 22]), 10, 0).unwrap();
        assert_eq!(ranges[0], 27);
        let ranges = extension_ranges(
            &b(&[1, 3, 4, 7, 9, 10, 11, 14, 23, 29, 30, 32, 33, 39, 42, 53]),
            17,
            2,
        )
        .unwrap();
        assert_eq!(ranges[2], 88);
        let ranges = extension_ranges(
            &b(&[1, 2, 4, 7, 9, 12, 13, 21, 25, 29, 35, 38, 41, 48]),
            15,
            1,
        )
        .unwrap();
        assert_eq!(ranges[1], 67);
    }

    #[test]
    fn extensible_examples() {
        let report = is_extensible(&b(&[1, 3, 4, 5, 8]), 6).unwrap();
        assert!(report.extensible);
        assert_eq!(report.s, ExtensionLimit::Unbounded);
        assert!(is_extensible(&b(&[1, 2]), 3).unwrap().extensible);
        assert!(matches!(
            is_extensible(&b(&[1, 4]), 3),
            Err(Error::Inadmissible { .. })
        ));
        assert!(is_extensible(&b(&[1, 2]), 1).is_err());
    }

    #[test]
    fn residue_deficient_bases_can_outlast_threshold() {
        // {1,2,4,5} misses residue 3 mod 6, yet b_1 = 11 is still reached.
        let base = b(&[1, 2, 4, 5]);
        let report = is_extensible(&base, 6).unwrap();
        assert!(!report.residues_complete);
        assert!(!report.extensible);
        assert_eq!(report.k_star, 0);
        assert_eq!(report.s, ExtensionLimit::Finite(1));
        assert_eq!(brute_s(&base, 6, 30), Some(1));
    }

    #[test]
    fn report_json() {
        let report = is_extensible(&b(&[1, 3, 4, 7]), 5).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert_eq!(
            text,
            r#"{"extensible":false,"k_star":1,"s":0,"residues_complete":true}"#
        );
        let report = is_extensible(&b(&[1, 3, 4, 5, 8]), 6).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert_eq!(
            text,
            r#"{"extensible":true,"k_star":1,"s":"unbounded","residues_complete":true}"#
        );
        assert_eq!(
            serde_json::from_str::<ExtensionReport>(&text).unwrap(),
            report
        );
        assert!(serde_json::from_str::<ExtensionLimit>(r#""forever""#).is_err());
    }

    #[test]
    fn settled_ranges() {
        assert!(check_settled_ranges(&b(&[1, 3, 4, 5, 8]), 6, 10).unwrap());
        let note = b(&[1, 2, 5, 7, 10, 11, 18, 21, 24, 27, 28, 29, 34, 38]);
        let ranges = extension_ranges(&note, 15, 6).unwrap();
        assert_eq!(ranges[0], 59);
        assert_eq!(ranges[1], 68);
        for (k, &n) in ranges.iter().enumerate().skip(2) {
            assert_eq!(n, 38 + 15 * (k as u32 + 1) - 1);
        }
        assert!(check_settled_ranges(&note, 15, 20).unwrap());
        assert!(matches!(
            check_settled_ranges(&b(&[1, 3, 4, 7]), 5, 4),
            Err(Error::NotExtensible { .. })
        ));
        assert!(matches!(
            check_settled_ranges(&b(&[1, 2, 3]), 5, 4),
            Err(Error::NotPBasis { .. })
        ));
    }

    #[test]
    fn completion() {
        let done = extensible_completion(&b(&[1, 3, 4, 7]), 5).unwrap();
        assert_eq!(done.basis.elements(), &[1, 3, 4, 7, 9, 12, 17]);
        assert_eq!(done.added, vec![9]);
        assert!(is_extensible(&done.basis, 5).unwrap().extensible);

        let done = extensible_completion(&b(&[1, 2]), 3).unwrap();
        assert_eq!(done.basis.elements(), &[1, 2, 5]);
        assert!(done.added.is_empty());

        let done = extensible_completion(&b(&[1, 3, 4, 5, 8]), 6).unwrap();
        assert_eq!(done.basis.elements(), &[1, 3, 4, 5, 8, 14, 20]);
        assert!(done.added.is_empty());

        assert!(matches!(
            extensible_completion(&b(&[1, 2, 4, 5]), 6),
            Err(Error::ResiduesIncomplete { .. })
        ));
    }
}
