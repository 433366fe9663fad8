//! Greedy continuations `a_{next} = n(A) + 1` and detection of periodic tails.

use serde::{Deserialize, Serialize};

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::reach::ReachSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StohrSequence {
    pub seed: Basis,
    pub terms: Vec<u32>,
    /// `increments[i] = terms[i] - terms[i-1]`, with the seed's last element
    /// standing in for `terms[-1]`.
    pub increments: Vec<u32>,
}

/// Generate `count` terms, each one more than the range of everything before it.
pub fn stohr_sequence(seed: &Basis, count: usize) -> StohrSequence {
    let mut reach = ReachSet::new(seed);
    let mut terms = Vec::with_capacity(count);
    let mut increments = Vec::with_capacity(count);
    let mut prev = seed.last();
    for _ in 0..count {
        // An inadmissible seed has n < a_k; its first term is then a_k + 1.
        let next = (reach.range() + 1).max(prev + 1);
        reach.push(next).expect("greedy terms increase");
        terms.push(next);
        increments.push(next - prev);
        prev = next;
    }
    StohrSequence {
        seed: seed.clone(),
        terms,
        increments,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodReport {
    /// Increments before the periodic part starts.
    pub preperiod: usize,
    pub period_length: usize,
    /// `K`: the sum of one period of increments.
    pub period_sum: u64,
    /// `K / n` in lowest terms.
    pub average_num: u64,
    pub average_den: u64,
    /// Whole periods observed repeating after the preperiod.
    pub verified_periods: usize,
    /// One period of increments, as first observed.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pattern: Vec<u32>,
}

/// Find the shortest period of the greedy increments of `seed`, with the
/// shortest preperiod for that period, that holds through all `max_terms`
/// generated terms and spans at least `verify_periods` full periods.
///
/// This is an observation over a finite window, not a proof of periodicity.
pub fn periodic_scan(
    seed: &Basis,
    max_terms: usize,
    verify_periods: usize,
) -> Result<Option<PeriodReport>> {
    if verify_periods < 2 {
        return Err(Error::InvalidArgument(format!(
            "verify_periods must be at least 2, got {verify_periods}"
        )));
    }
    let seq = stohr_sequence(seed, max_terms);
    Ok(find_period(&seq.increments, verify_periods))
}

pub(crate) fn find_period(d: &[u32], verify_periods: usize) -> Option<PeriodReport> {
    let len = d.len();
    for n in 1..=len / verify_periods {
        // d[i] == d[i + n] must hold for every i >= preperiod; find the last
        // violation and start just after it.
        let preperiod = (0..len - n)
            .rev()
            .find(|&i| d[i] != d[i + n])
            .map_or(0, |i| i + 1);
        let observed = (len - preperiod) / n;
        if observed >= verify_periods {
            let pattern = d[preperiod..preperiod + n].to_vec();
            let period_sum: u64 = pattern.iter().map(|&x| u64::from(x)).sum();
            let g = gcd(period_sum, n as u64);
            return Some(PeriodReport {
                preperiod,
                period_length: n,
                period_sum,
                average_num: period_sum / g,
                average_den: n as u64 / g,
                verified_periods: observed,
                pattern,
            });
        }
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `n p + n (n + 1) / 2`, the most residues mod `K` a period of length `n`
/// can generate; `K` cannot exceed it.
pub fn period_bound(n: u64, p: u64) -> u64 {
    n * p + n * (n + 1) / 2
}
