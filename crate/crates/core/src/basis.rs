//! The [`Basis`] type and the predicates that only look at its elements.
//!
//! A basis is a strictly increasing list of positive integers starting at 1.
//! The element `a_0 = 0` is implied everywhere (sums of "at most two" elements
//! are sums of exactly two drawn from the basis plus zero) and is never stored.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus the residue bookkeeping supports.
pub const MAX_MODULUS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Basis {
    elements: Vec<u32>,
}

impl Basis {
    pub fn new(elements: Vec<u32>) -> Result<Self> {
        validate(&elements)?;
        Ok(Basis { elements })
    }

    /// The single-element basis `{1}`.
    pub fn unit() -> Self {
        Basis { elements: vec![1] }
    }

    pub fn from_slice(elements: &[u32]) -> Result<Self> {
        Self::new(elements.to_vec())
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<u32> {
        self.elements
    }

    /// Element count `k`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The largest element `a_k`.
    pub fn last(&self) -> u32 {
        *self.elements.last().expect("a basis is never empty")
    }

    /// `a_i` with `a_0 = 0`.
    pub fn get(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.elements[i - 1]
        }
    }

    /// The first `len` elements. `len` is clamped to `1..=k`.
    pub fn prefix(&self, len: usize) -> Basis {
        let len = len.clamp(1, self.len());
        Basis {
            elements: self.elements[..len].to_vec(),
        }
    }

    pub fn with_appended(&self, x: u32) -> Result<Basis> {
        let last = self.last();
        if x <= last {
            return Err(Error::Ordering { new: x, last });
        }
        let mut elements = Vec::with_capacity(self.len() + 1);
        elements.extend_from_slice(&self.elements);
        elements.push(x);
        Ok(Basis { elements })
    }

    pub(crate) fn from_unchecked(elements: Vec<u32>) -> Basis {
        debug_assert!(validate(&elements).is_ok(), "{elements:?}");
        Basis { elements }
    }
}

fn validate(elements: &[u32]) -> Result<()> {
    match elements.first() {
        None => return Err(Error::EmptyBasis),
        Some(&1) => {}
        Some(&first) => return Err(Error::MissingLeadingOne(first)),
    }
    for (index, pair) in elements.windows(2).enumerate() {
        if pair[1] <= pair[0] {
            return Err(Error::NotIncreasing {
                index: index + 1,
                prev: pair[0],
                next: pair[1],
            });
        }
    }
    Ok(())
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in &self.elements {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parse_err = |reason: String| Error::Parse {
            text: text.to_string(),
            reason,
        };
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(parse_err("no elements".into()));
        }
        let elements = trimmed
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|e| parse_err(format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Basis::new(elements)
    }
}

#[derive(Serialize, Deserialize)]
struct BasisRepr {
    elements: Vec<u32>,
}

impl Serialize for Basis {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BasisRepr {
            elements: self.elements.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = BasisRepr::deserialize(deserializer)?;
        Basis::new(repr.elements).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing a basis as a bare list, `[1,3,4]`, for record streams.
pub mod as_list {
    use super::Basis;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(basis: &Basis, s: S) -> Result<S::Ok, S::Error> {
        basis.elements().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Basis, D::Error> {
        let elements = Vec::<u32>::deserialize(d)?;
        Basis::new(elements).map_err(serde::de::Error::custom)
    }
}

/// Residues of `a_0 = 0, a_1, ..., a_k` modulo `p`, in element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueProfile {
    pub residues: Vec<u32>,
    /// Every class `0..p` occurs at least once.
    pub complete: bool,
}

pub fn residue_profile(basis: &Basis, p: u32) -> Result<ResidueProfile> {
    check_modulus(p, 2)?;
    let residues: Vec<u32> = std::iter::once(0)
        .chain(basis.elements().iter().map(|&a| a % p))
        .collect();
    let mut seen = vec![false; p as usize];
    for &r in &residues {
        seen[r as usize] = true;
    }
    Ok(ResidueProfile {
        complete: seen.iter().all(|&s| s),
        residues,
    })
}

pub(crate) fn check_modulus(p: u32, min: u32) -> Result<()> {
    if p < min || p > MAX_MODULUS {
        return Err(Error::Modulus {
            p,
            min,
            max: MAX_MODULUS,
        });
    }
    Ok(())
}

/// True iff `basis` is admissible, has exactly `p - 1` elements and its
/// residues mod `p` are `1..p` each exactly once.
pub fn is_p_basis(basis: &Basis, p: u32) -> bool {
    if !(3..=MAX_MODULUS).contains(&p) || basis.len() != (p - 1) as usize {
        return false;
    }
    if !has_distinct_nonzero_residues(basis.elements(), p) {
        return false;
    }
    crate::reach::range(basis).admissible
}

pub(crate) fn has_distinct_nonzero_residues(elements: &[u32], p: u32) -> bool {
    let mut used = 0u128;
    for &a in elements {
        let r = a % p;
        if r == 0 || used & (1u128 << r) != 0 {
            return false;
        }
        used |= 1u128 << r;
    }
    true
}

/// `a_i + a_{k-i} = a_k` for every `1 <= i <= k - 1`.
pub fn is_symmetric(basis: &Basis) -> bool {
    let k = basis.len();
    let top = basis.last();
    (1..k).all(|i| basis.get(i) + basis.get(k - i) == top)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    /// `k = 2j`, top element `2 a_j`.
    Even,
    /// `k = 2j - 1`, top element `a_j + a_{j-1}`.
    Odd,
}

/// Reflect an initial segment `A_j` into a symmetric basis.
///
/// The odd construction of a one-element segment degenerates to `{1}` itself.
pub fn symmetrize(initial: &Basis, parity: Parity) -> Result<Basis> {
    let j = initial.len();
    let (top, mirror_from) = match parity {
        Parity::Even => (2 * initial.last(), j - 1),
        Parity::Odd if j == 1 => return Ok(initial.clone()),
        Parity::Odd => (initial.get(j) + initial.get(j - 1), j - 2),
    };
    let mut elements = initial.elements().to_vec();
    elements.extend((0..=mirror_from).rev().map(|i| top - initial.get(i)));
    Basis::new(elements)
}
