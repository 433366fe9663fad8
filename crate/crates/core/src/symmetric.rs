//! Symmetric closures `S(p)_k` of extended bases and the symmetricisability test.
//!
//! For an origin `A_r = {1, a_2, ..., a_r = b_0}` extended by `j` terms of step
//! `p`, the closure appends the mirror image `c_i = b_j + b_0 - a_i` for
//! `i = r-1, ..., 0`, giving `k = 2r + j` elements with top element `b_j + b_0`.
//! An admissible closure has range `2 (b_0 + b_j)`.

use serde::{Deserialize, Serialize};

use crate::basis::{check_modulus, is_p_basis, Basis};
use crate::error::{Error, Result};
use crate::extension::{extension_threshold, is_extensible, require_extensible_p_basis};
use crate::reach::{range, ReachSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricClosure {
    pub origin: Basis,
    pub p: u32,
    pub j: u32,
    pub elements: Basis,
    /// `c_{r-1}, ..., c_0` in ascending order.
    pub mirrored_tail: Vec<u32>,
}

impl SymmetricClosure {
    /// Element count, `2r + j`.
    pub fn k(&self) -> usize {
        self.elements.len()
    }

    pub fn b0(&self) -> u32 {
        self.origin.last()
    }

    pub fn is_admissible(&self) -> bool {
        range(&self.elements).admissible
    }
}

pub fn build_symmetric_closure(origin: &Basis, p: u32, j: u32) -> Result<SymmetricClosure> {
    if p == 0 {
        return Err(Error::InvalidArgument(
            "extension step must be positive".into(),
        ));
    }
    let r = origin.len();
    let b0 = origin.last();
    let bj = b0 + j * p;
    let top = bj + b0;
    let mirrored_tail: Vec<u32> = (0..r).rev().map(|i| top - origin.get(i)).collect();
    let mut elements = Vec::with_capacity(2 * r + j as usize);
    elements.extend_from_slice(origin.elements());
    elements.extend((1..=j).map(|i| b0 + i * p));
    elements.extend_from_slice(&mirrored_tail);
    // c_{r-1} = b_j + (b_0 - a_{r-1}) > b_j, so the pieces never interleave;
    // validation still rejects any duplicate.
    let elements = match Basis::new(elements) {
        Ok(basis) => basis,
        Err(Error::NotIncreasing { next, .. }) => return Err(Error::DuplicateElement(next)),
        Err(e) => return Err(e),
    };
    Ok(SymmetricClosure {
        origin: origin.clone(),
        p,
        j,
        elements,
        mirrored_tail,
    })
}

/// `m0 = ceil(b0 / p)`, the least `m` with `b_m >= 2 b0`.
pub fn m_zero(b0: u32, p: u32) -> u32 {
    extension_threshold(b0, p) + 1
}

/// `2 (2 b0 + j p)`: the range of an admissible closure.
pub fn closure_range(b0: u32, p: u32, j: u32) -> u64 {
    2 * (2 * u64::from(b0) + u64::from(j) * u64::from(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetricisabilityReport {
    pub symmetricisable: bool,
    pub m0: u32,
    /// Admissibility of the closure with `m` extension terms, `m = 0..=m0`.
    pub profile: Vec<bool>,
    /// Element count of the closure that decided the verdict.
    pub k0_witness: u32,
}

/// Symmetricisability of an extensible `p`-basis.
pub fn is_symmetricisable(pbasis: &Basis, p: u32) -> Result<SymmetricisabilityReport> {
    require_extensible_p_basis(pbasis, p)?;
    Ok(closure_profile(pbasis, p))
}

/// Symmetricisability of a `p+` basis: a `p`-basis followed by one free element.
pub fn is_symmetricisable_plus(pplus: &Basis, p: u32) -> Result<SymmetricisabilityReport> {
    is_symmetricisable_free(pplus, p, 1)
}

/// Symmetricisability of a `p`-basis followed by `depth` free elements, each
/// within the admissible window of the basis before it.
pub fn is_symmetricisable_free(
    basis: &Basis,
    p: u32,
    depth: u32,
) -> Result<SymmetricisabilityReport> {
    check_modulus(p, 3)?;
    let expected = (p - 1 + depth) as usize;
    if basis.len() != expected {
        return Err(Error::WrongLength {
            basis: basis.to_string(),
            p,
            depth,
            len: basis.len(),
            expected,
        });
    }
    let prefix = basis.prefix((p - 1) as usize);
    if !is_p_basis(&prefix, p) {
        return Err(Error::NotPBasis {
            basis: prefix.to_string(),
            p,
        });
    }
    let mut reach = ReachSet::new(&prefix);
    for &x in &basis.elements()[(p - 1) as usize..] {
        let high = reach.range() + 1;
        if x > high {
            return Err(Error::FreeElementOutOfWindow {
                value: x,
                low: reach.top(),
                high,
            });
        }
        reach.push(x)?;
    }
    if !is_extensible(basis, p)?.extensible {
        return Err(Error::NotExtensible {
            basis: basis.to_string(),
            p,
        });
    }
    Ok(closure_profile(basis, p))
}

/// Admissibility profile of the closures of an extensible origin for
/// `m = 0..=m0`; the verdict is the entry at `m0`.
pub(crate) fn closure_profile(origin: &Basis, p: u32) -> SymmetricisabilityReport {
    let b0 = origin.last();
    let m0 = m_zero(b0, p);
    let profile: Vec<bool> = (0..=m0)
        .map(|m| {
            build_symmetric_closure(origin, p, m)
                .expect("closure of a valid origin")
                .is_admissible()
        })
        .collect();
    SymmetricisabilityReport {
        symmetricisable: profile[m0 as usize],
        m0,
        profile,
        k0_witness: 2 * origin.len() as u32 + m0,
    }
}

/// Verdict only, for the census hot path. `origin` must already be known to
/// be extensible.
pub(crate) fn symmetricisable_unchecked(origin: &[u32], p: u32) -> bool {
    let origin = Basis::from_unchecked(origin.to_vec());
    let m0 = m_zero(origin.last(), p);
    build_symmetric_closure(&origin, p, m0)
        .expect("closure of a valid origin")
        .is_admissible()
}
