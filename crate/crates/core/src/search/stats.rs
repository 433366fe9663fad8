//! Census aggregates over all `p`-bases of one modulus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{classify_leaf, par_subtrees, SearchConfig};
use crate::basis::check_modulus;
use crate::error::Result;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailRow {
    pub tail: u32,
    pub n_p: u64,
    pub n_e: u64,
    pub n_s: u64,
}

/// Everything the census tables need, gathered in one pass. Merging is
/// associative and commutative, so subtrees can be combined in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub p: u32,
    pub n_p: u64,
    pub n_e: u64,
    pub n_s: u64,
    /// Bases with `n(A)` below, equal to and above `a_{p-1} + p - 1`.
    pub range_less: u64,
    pub range_equal: u64,
    pub range_greater: u64,
    pub tails: BTreeMap<u32, TailRow>,
}

impl Census {
    pub fn new(p: u32) -> Self {
        Census {
            p,
            ..Default::default()
        }
    }

    pub fn record(
        &mut self,
        elements: &[u32],
        range: u32,
        extensible: bool,
        symmetricisable: bool,
    ) {
        let tail = *elements.last().expect("non-empty");
        self.n_p += 1;
        self.n_e += u64::from(extensible);
        self.n_s += u64::from(symmetricisable);
        let pivot = tail + self.p - 1;
        match range.cmp(&pivot) {
            std::cmp::Ordering::Less => self.range_less += 1,
            std::cmp::Ordering::Equal => self.range_equal += 1,
            std::cmp::Ordering::Greater => self.range_greater += 1,
        }
        let row = self.tails.entry(tail).or_insert(TailRow {
            tail,
            ..Default::default()
        });
        row.n_p += 1;
        row.n_e += u64::from(extensible);
        row.n_s += u64::from(symmetricisable);
    }

    /// Classify and record one basis.
    pub fn observe(&mut self, elements: &[u32], range: u32) {
        let (e, s) = classify_leaf(elements, range, self.p);
        self.record(elements, range, e, s);
    }

    pub fn merge(&mut self, other: &Census) {
        self.n_p += other.n_p;
        self.n_e += other.n_e;
        self.n_s += other.n_s;
        self.range_less += other.range_less;
        self.range_equal += other.range_equal;
        self.range_greater += other.range_greater;
        for (tail, row) in &other.tails {
            let mine = self.tails.entry(*tail).or_insert(TailRow {
                tail: *tail,
                ..Default::default()
            });
            mine.n_p += row.n_p;
            mine.n_e += row.n_e;
            mine.n_s += row.n_s;
        }
    }

    pub fn class_stats(&self) -> ClassStats {
        ClassStats::new(self.p, self.n_p, self.n_e, self.n_s)
    }

    pub fn range_comparison(&self) -> RangeComparison {
        RangeComparison {
            p: self.p,
            less: self.range_less,
            equal: self.range_equal,
            greater: self.range_greater,
        }
    }

    /// Rows for every tail from `p - 1` up to the largest observed, zeros included.
    pub fn tail_distribution(&self) -> TailDistribution {
        let rows = match self.tails.keys().next_back() {
            Some(&v1) => (self.p - 1..=v1)
                .map(|t| {
                    self.tails.get(&t).copied().unwrap_or(TailRow {
                        tail: t,
                        ..Default::default()
                    })
                })
                .collect(),
            None => vec![],
        };
        TailDistribution { p: self.p, rows }
    }

    pub fn maxima(&self) -> Option<MaximaRecord> {
        let v1 = *self.tails.keys().next_back()?;
        let v2 = self
            .tails
            .values()
            .rev()
            .find(|r| r.n_e > 0)
            .map(|r| r.tail);
        Some(MaximaRecord::new(self.p, v1, v2))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassStats {
    pub p: u32,
    pub n_p: u64,
    pub n_e: u64,
    pub n_s: u64,
    /// `100 n_e / n_p`.
    pub pct_e: f64,
    /// `100 n_s / n_e`.
    pub pct_s: f64,
}

impl ClassStats {
    pub fn new(p: u32, n_p: u64, n_e: u64, n_s: u64) -> Self {
        ClassStats {
            p,
            n_p,
            n_e,
            n_s,
            pct_e: percent(n_e, n_p),
            pct_s: percent(n_s, n_e),
        }
    }
}

pub(crate) fn percent(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeComparison {
    pub p: u32,
    pub less: u64,
    pub equal: u64,
    pub greater: u64,
}

impl RangeComparison {
    pub fn total(&self) -> u64 {
        self.less + self.equal + self.greater
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDistribution {
    pub p: u32,
    pub rows: Vec<TailRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaximaRecord {
    pub p: u32,
    /// Largest `a_{p-1}` of any `p`-basis.
    pub v1: u32,
    /// Largest `a_{p-1}` of an extensible `p`-basis.
    pub v2: Option<u32>,
    pub v1_over_p: f64,
    pub v2_over_v1: Option<f64>,
}

impl MaximaRecord {
    pub fn new(p: u32, v1: u32, v2: Option<u32>) -> Self {
        MaximaRecord {
            p,
            v1,
            v2,
            v1_over_p: f64::from(v1) / f64::from(p),
            v2_over_v1: v2.map(|v| f64::from(v) / f64::from(v1)),
        }
    }
}

/// Full census of the `p`-bases.
pub fn census(p: u32, config: &SearchConfig) -> Result<Census> {
    let parts = par_subtrees(p, config, |walker| {
        let mut c = Census::new(p);
        while let Some((xs, n)) = walker.next_basis()? {
            c.observe(xs, n);
        }
        Ok(c)
    })?;
    let mut total = Census::new(p);
    for part in &parts {
        total.merge(part);
    }
    Ok(total)
}

pub fn classify(p: u32) -> Result<ClassStats> {
    check_modulus(p, 5)?;
    Ok(census(p, &SearchConfig::unlimited())?.class_stats())
}

pub fn range_comparison_stats(p: u32) -> Result<RangeComparison> {
    Ok(census(p, &SearchConfig::unlimited())?.range_comparison())
}

pub fn tail_distribution(p: u32) -> Result<TailDistribution> {
    Ok(census(p, &SearchConfig::unlimited())?.tail_distribution())
}

pub fn maxima_record(p: u32) -> Result<MaximaRecord> {
    let c = census(p, &SearchConfig::unlimited())?;
    Ok(c.maxima().expect("every modulus has a p-basis"))
}
