//! Coverage of `0..=2 a_k` by sums of at most two basis elements.

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::bits;
use crate::error::{Error, Result};

/// Which integers in `0..=2 a_k` are `0`, some `a_i`, or some `a_i + a_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachSet {
    top: u32,
    covered: Vec<u64>,
    // {0} ∪ basis, kept so that appending an element is one shifted OR.
    members: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeResult {
    /// The 2-range: every `1 <= x <= n` is covered, `n + 1` is not.
    pub n: u32,
    /// `n >= a_k`.
    pub admissible: bool,
}

impl ReachSet {
    pub fn new(basis: &Basis) -> ReachSet {
        let top = basis.last();
        let words = capacity(top);
        let mut members = vec![0u64; words];
        bits::set(&mut members, 0);
        for &a in basis.elements() {
            bits::set(&mut members, a as usize);
        }
        let mut covered = members.clone();
        for &a in basis.elements() {
            bits::or_shifted(&mut covered, &members, a as usize);
        }
        ReachSet {
            top,
            covered,
            members,
        }
    }

    /// `2 a_k`; nothing above it is ever covered.
    pub fn limit(&self) -> u32 {
        2 * self.top
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    pub fn covers(&self, x: u32) -> bool {
        bits::get(&self.covered, x as usize)
    }

    pub fn range(&self) -> u32 {
        // bit limit + 1 is always clear, so the scan terminates inside the buffer
        let gap = bits::first_zero(&self.covered).expect("coverage buffer has a clear guard bit");
        gap as u32 - 1
    }

    pub fn result(&self) -> RangeResult {
        let n = self.range();
        RangeResult {
            n,
            admissible: n >= self.top,
        }
    }

    /// Coverage of the basis with `x` appended.
    pub fn extend(&self, x: u32) -> Result<ReachSet> {
        let mut next = self.clone();
        next.push(x)?;
        Ok(next)
    }

    /// In-place form of [`ReachSet::extend`].
    pub fn push(&mut self, x: u32) -> Result<()> {
        if x <= self.top {
            return Err(Error::Ordering {
                new: x,
                last: self.top,
            });
        }
        let words = capacity(x);
        self.covered.resize(words, 0);
        self.members.resize(words, 0);
        bits::set(&mut self.members, x as usize);
        bits::or_shifted(&mut self.covered, &self.members, x as usize);
        self.top = x;
        Ok(())
    }

    /// Uncovered values in `1..bound`, ascending.
    pub fn gaps_below(&self, bound: u32) -> impl Iterator<Item = u32> + '_ {
        (1..bound).filter(move |&x| !self.covers(x))
    }
}

fn capacity(top: u32) -> usize {
    bits::words_for(2 * top as usize + 2)
}

/// The 2-range of `basis` and whether it is admissible.
pub fn range(basis: &Basis) -> RangeResult {
    ReachSet::new(basis).result()
}

/// Coverage of `basis ∪ {new_element}` computed from the coverage of `basis`.
pub fn extend_reach(reach: &ReachSet, basis: &Basis, new_element: u32) -> Result<ReachSet> {
    if new_element <= basis.last() {
        return Err(Error::Ordering {
            new: new_element,
            last: basis.last(),
        });
    }
    debug_assert_eq!(
        reach.top,
        basis.last(),
        "reach set does not belong to {basis}"
    );
    reach.extend(new_element)
}
