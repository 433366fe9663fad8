//! Maximal symmetricisable bases per modulus, the ranges of their symmetric
//! closures over a `(k, p)` grid, and the best modulus for each `k`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::basis::{check_modulus, Basis};
use crate::error::{Error, Result};
use crate::search::{classify_leaf, par_subtrees, plus_depth_search, SearchConfig};
use crate::symmetric::{closure_profile, closure_range};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Plain,
    Plus,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Plain => "plain",
            Mode::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Mode::Plain),
            "plus" => Ok(Mode::Plus),
            _ => Err(Error::InvalidArgument(format!("unknown mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalBasisSet {
    pub p: u32,
    pub mode: Mode,
    /// `a_{p-1}` in plain mode, `a_p - p` in plus mode.
    pub tail: i64,
    #[serde(with = "list_of_lists")]
    pub bases: Vec<Basis>,
}

mod list_of_lists {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::basis::Basis;

    pub fn serialize<S: Serializer>(bases: &[Basis], s: S) -> Result<S::Ok, S::Error> {
        let lists: Vec<&[u32]> = bases.iter().map(Basis::elements).collect();
        lists.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Basis>, D::Error> {
        let lists = Vec::<Vec<u32>>::deserialize(d)?;
        lists
            .into_iter()
            .map(|xs| Basis::new(xs).map_err(serde::de::Error::custom))
            .collect()
    }
}

impl MaximalBasisSet {
    /// Largest element of each member; shared by all of them.
    pub fn b0(&self) -> u32 {
        self.bases[0].last()
    }
}

/// Every symmetricisable basis of the given mode with the largest tail.
pub fn maximal_symmetricisable(
    p: u32,
    mode: Mode,
    config: &SearchConfig,
) -> Result<MaximalBasisSet> {
    check_modulus(p, 5)?;
    let (tail, bases) = match mode {
        Mode::Plain => {
            let parts = par_subtrees(p, config, |walker| {
                let mut best: Option<u32> = None;
                let mut found: Vec<Vec<u32>> = vec![];
                while let Some((xs, n)) = walker.next_basis()? {
                    let tail = *xs.last().expect("non-empty");
                    if best.is_some_and(|b| tail < b) || !classify_leaf(xs, n, p).1 {
                        continue;
                    }
                    if best != Some(tail) {
                        best = Some(tail);
                        found.clear();
                    }
                    found.push(xs.to_vec());
                }
                Ok((best, found))
            })?;
            let tail = parts.iter().filter_map(|(t, _)| *t).max();
            let bases: Vec<Basis> = parts
                .into_iter()
                .filter(|(t, _)| *t == tail)
                .flat_map(|(_, found)| found)
                .map(Basis::from_unchecked)
                .collect();
            (tail.map(i64::from), bases)
        }
        Mode::Plus => {
            let out = plus_depth_search(p, 1, config)?;
            (
                out.best_comparison_tail,
                out.best.into_iter().map(|r| r.basis).collect(),
            )
        }
    };
    let tail = tail.ok_or_else(|| {
        Error::InvalidArgument(format!(
            "no symmetricisable {mode} basis exists for p = {p}"
        ))
    })?;
    Ok(MaximalBasisSet {
        p,
        mode,
        tail,
        bases,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeEntry {
    pub k: u32,
    pub p: u32,
    pub range: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeTable {
    pub k_max: u32,
    /// Sorted by `(k, p)`.
    pub entries: Vec<RangeEntry>,
    pub maxima: Vec<MaximalBasisSet>,
}

impl RangeTable {
    pub fn get(&self, k: u32, p: u32) -> Option<u64> {
        self.entries
            .binary_search_by(|e| (e.k, e.p).cmp(&(k, p)))
            .ok()
            .map(|i| self.entries[i].range)
    }

    pub fn moduli(&self) -> Vec<u32> {
        self.entries
            .iter()
            .map(|e| e.p)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn ks(&self) -> Vec<u32> {
        self.entries
            .iter()
            .map(|e| e.k)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }
}

/// Ranges of `S*(p)_k` for each maximal set and every `k <= k_max`.
///
/// With `r` origin elements and `j` extension terms, `k = 2r + j` and an
/// admissible closure has range `2 (2 b0 + j p)`. Entries are emitted for
/// `j >= m0`, where admissibility is settled, and for smaller `j` wherever
/// the closure of some maximal basis is admissible.
pub fn range_table(maxima: &[MaximalBasisSet], k_max: u32) -> RangeTable {
    let mut entries = vec![];
    for set in maxima {
        let r = set.bases[0].len() as u32;
        let b0 = set.b0();
        let profiles: Vec<Vec<bool>> = set
            .bases
            .iter()
            .map(|b| closure_profile(b, set.p).profile)
            .collect();
        let m0 = (profiles[0].len() - 1) as u32;
        for j in 0.. {
            let k = 2 * r + j;
            if k > k_max {
                break;
            }
            if j >= m0 || profiles.iter().any(|prof| prof[j as usize]) {
                entries.push(RangeEntry {
                    k,
                    p: set.p,
                    range: closure_range(b0, set.p, j),
                });
            }
        }
    }
    entries.sort_by_key(|e| (e.k, e.p));
    RangeTable {
        k_max,
        entries,
        maxima: maxima.to_vec(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub k_min: u32,
    pub k_max: u32,
    /// Range at `k_min`; it grows by `2p` per unit of `k`.
    pub range: u64,
    pub p: u32,
}

/// Maximal runs of consecutive `k` on which `p` attains the largest range.
/// Ties give one row per tying modulus. Sorted by `(k_min, p)`.
pub fn best_segments(table: &RangeTable) -> Vec<Segment> {
    let mut by_k: BTreeMap<u32, Vec<RangeEntry>> = BTreeMap::new();
    for e in &table.entries {
        by_k.entry(e.k).or_default().push(*e);
    }
    let mut open: BTreeMap<u32, Segment> = BTreeMap::new();
    let mut done = vec![];
    let mut prev_k = None;
    for (&k, row) in &by_k {
        let best = row.iter().map(|e| e.range).max().expect("non-empty row");
        let winners: BTreeMap<u32, u64> = row
            .iter()
            .filter(|e| e.range == best)
            .map(|e| (e.p, e.range))
            .collect();
        let contiguous = prev_k == Some(k.wrapping_sub(1));
        let ps: Vec<u32> = open.keys().copied().collect();
        for p in ps {
            if !(contiguous && winners.contains_key(&p)) {
                done.push(open.remove(&p).expect("open segment"));
            }
        }
        for (&p, &range) in &winners {
            open.entry(p)
                .and_modify(|s| s.k_max = k)
                .or_insert(Segment {
                    k_min: k,
                    k_max: k,
                    range,
                    p,
                });
        }
        prev_k = Some(k);
    }
    done.extend(open.into_values());
    done.sort_by_key(|s| (s.k_min, s.p));
    done
}
