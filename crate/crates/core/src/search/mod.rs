//! Exhaustive enumeration of `p`-bases and their free extensions.

mod checkpoint;
mod plus;
mod stats;
mod walker;

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{as_list, Basis};
use crate::error::{Error, Result};
use crate::extension::extensible_from_range;
use crate::symmetric::symmetricisable_unchecked;

pub use checkpoint::Checkpoint;
pub use plus::{
    enumerate_free, enumerate_p_plus, for_each_free_extension, plus_depth_search,
    DepthSearchOutcome, PlusBasisRecord,
};
pub use stats::{
    census, classify, maxima_record, range_comparison_stats, tail_distribution, Census, ClassStats,
    MaximaRecord, RangeComparison, TailDistribution, TailRow,
};
pub use walker::{Frontier, PBasisWalker};

/// Default cap on visited nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Prefix length whose subtrees are handed to workers.
const SPLIT_DEPTH: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub node_budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: 0,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchConfig {
    pub fn unlimited() -> Self {
        SearchConfig {
            threads: 0,
            node_budget: u64::MAX,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_budget(mut self, node_budget: u64) -> Self {
        self.node_budget = node_budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBasisRecord {
    pub p: u32,
    #[serde(with = "as_list")]
    pub basis: Basis,
    pub tail: u32,
    pub extensible: bool,
    pub symmetricisable: bool,
}

impl PBasisRecord {
    pub fn classify(elements: &[u32], range: u32, p: u32) -> Self {
        let (extensible, symmetricisable) = classify_leaf(elements, range, p);
        PBasisRecord {
            p,
            basis: Basis::from_unchecked(elements.to_vec()),
            tail: *elements.last().expect("non-empty"),
            extensible,
            symmetricisable,
        }
    }
}

/// Extensibility and symmetricisability of a residue-complete admissible
/// basis with known range.
pub(crate) fn classify_leaf(elements: &[u32], range: u32, p: u32) -> (bool, bool) {
    let extensible = extensible_from_range(elements, range, p);
    let symmetricisable = extensible && symmetricisable_unchecked(elements, p);
    (extensible, symmetricisable)
}

/// Visit every `p`-basis in lexicographic order with its range. Returns the count.
pub fn enumerate_p_bases<F>(p: u32, mut visitor: F) -> Result<u64>
where
    F: FnMut(&[u32], u32),
{
    let mut walker = PBasisWalker::new(p)?;
    let mut count = 0;
    while let Some((xs, n)) = walker.next_basis()? {
        visitor(xs, n);
        count += 1;
    }
    Ok(count)
}

/// Classified records for every `p`-basis, in lexicographic order.
pub fn p_basis_records(p: u32, config: &SearchConfig) -> Result<Vec<PBasisRecord>> {
    let parts = par_subtrees(p, config, |walker| {
        let mut out = vec![];
        while let Some((xs, n)) = walker.next_basis()? {
            out.push(PBasisRecord::classify(xs, n, p));
        }
        Ok(out)
    })?;
    Ok(parts.into_iter().flatten().collect())
}

/// Run `job` on each subtree of the `p`-basis walk and return the results in
/// lexicographic subtree order, independent of scheduling.
///
/// The node budget is shared: the call fails iff the walks together create
/// more than `config.node_budget` nodes.
pub fn par_subtrees<T, F>(p: u32, config: &SearchConfig, job: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut PBasisWalker) -> Result<T> + Sync,
{
    let mut roots_walker = PBasisWalker::prefixes(p, SPLIT_DEPTH)?;
    let mut roots = vec![];
    while let Some((xs, _)) = roots_walker.next_basis()? {
        roots.push(xs.to_vec());
    }
    let budget = config.node_budget;
    let spent = AtomicU64::new(0);
    // Nodes above the roots are charged to the first subtree, so totals
    // agree with a single sequential walk.
    let above = roots_walker.visited();
    let run = |(i, root): (usize, &Vec<u32>)| -> Result<T> {
        let mut walker = PBasisWalker::subtree(p, root)?;
        let already = spent.load(Ordering::Relaxed);
        walker.set_node_limit(budget.saturating_sub(already));
        let out =
            if i == 0 { walker.charge(above) } else { Ok(()) }.and_then(|()| job(&mut walker));
        let total = spent.fetch_add(walker.visited(), Ordering::Relaxed) + walker.visited();
        match out {
            Err(Error::BudgetExceeded { .. }) => Err(Error::BudgetExceeded {
                budget,
                visited: total,
            }),
            other => other,
        }
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let out: Vec<T> =
        pool.install(|| roots.par_iter().enumerate().map(run).collect::<Result<_>>())?;
    let total = spent.load(Ordering::Relaxed);
    if total > budget {
        return Err(Error::BudgetExceeded {
            budget,
            visited: total,
        });
    }
    Ok(out)
}
