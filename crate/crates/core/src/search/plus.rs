//! `p`-bases followed by free elements, each anywhere in the admissible
//! window `(a_{q-1}, n(A_{q-1}) + 1]`, before arithmetic extension.

use serde::{Deserialize, Serialize};

use super::{classify_leaf, par_subtrees, PBasisWalker, SearchConfig};
use crate::basis::{as_list, check_modulus, Basis};
use crate::error::{Error, Result};
use crate::reach::ReachSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlusBasisRecord {
    pub p: u32,
    pub depth: u32,
    #[serde(with = "as_list")]
    pub basis: Basis,
    /// The first free element.
    pub a_p: u32,
    /// Last element minus `depth * p`, comparable with a plain tail.
    pub comparison_tail: i64,
    pub extensible: bool,
    pub symmetricisable: bool,
}

impl PlusBasisRecord {
    fn classify(elements: &[u32], range: u32, p: u32, depth: u32) -> Self {
        let (extensible, symmetricisable) = classify_leaf(elements, range, p);
        let last = *elements.last().expect("non-empty");
        PlusBasisRecord {
            p,
            depth,
            basis: Basis::from_unchecked(elements.to_vec()),
            a_p: elements[(p - 1) as usize],
            comparison_tail: i64::from(last) - i64::from(depth) * i64::from(p),
            extensible,
            symmetricisable,
        }
    }
}

fn check_depth(depth: u32) -> Result<()> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    Ok(())
}

/// Visit the free extensions of depth `depth` below every leaf of `walker`.
fn walk_free<F>(walker: &mut PBasisWalker, depth: u32, visit: &mut F) -> Result<u64>
where
    F: FnMut(PlusBasisRecord) -> Result<()>,
{
    let p = walker.p();
    let mut count = 0;
    loop {
        let prefix = match walker.next_basis()? {
            Some((xs, _)) => xs.to_vec(),
            None => return Ok(count),
        };
        let nodes = for_each_free_extension(&prefix, p, depth, &mut |rec| {
            count += 1;
            visit(rec)
        })?;
        walker.charge(nodes)?;
    }
}

/// Classify every extension of the `p`-basis `prefix` by `depth` free
/// elements. Returns the number of search nodes created.
pub fn for_each_free_extension<F>(prefix: &[u32], p: u32, depth: u32, visit: &mut F) -> Result<u64>
where
    F: FnMut(PlusBasisRecord) -> Result<()>,
{
    check_depth(depth)?;
    let reach = ReachSet::new(&Basis::from_unchecked(prefix.to_vec()));
    let mut elems = prefix.to_vec();
    let mut nodes = 0;
    free_below(
        &mut elems,
        &reach,
        depth,
        &mut |xs, n| visit(PlusBasisRecord::classify(xs, n, p, depth)),
        &mut nodes,
    )?;
    Ok(nodes)
}

fn free_below<F>(
    elems: &mut Vec<u32>,
    reach: &ReachSet,
    left: u32,
    visit: &mut F,
    nodes: &mut u64,
) -> Result<()>
where
    F: FnMut(&[u32], u32) -> Result<()>,
{
    if left == 0 {
        return visit(elems, reach.range());
    }
    for x in reach.top() + 1..=reach.range() + 1 {
        *nodes += 1;
        let next = reach.extend(x)?;
        elems.push(x);
        free_below(elems, &next, left - 1, visit, nodes)?;
        elems.pop();
    }
    Ok(())
}

/// Visit every `p`-basis extended by `depth` free elements, in lexicographic
/// order. Returns the number of records.
pub fn enumerate_free<F>(p: u32, depth: u32, node_budget: u64, mut visitor: F) -> Result<u64>
where
    F: FnMut(&PlusBasisRecord),
{
    check_depth(depth)?;
    let mut walker = PBasisWalker::new(p)?;
    walker.set_node_limit(node_budget);
    walk_free(&mut walker, depth, &mut |rec| {
        visitor(&rec);
        Ok(())
    })
}

/// Every `p+` basis: a `p`-basis followed by one admissible `a_p`.
pub fn enumerate_p_plus<F>(p: u32, visitor: F) -> Result<u64>
where
    F: FnMut(&PlusBasisRecord),
{
    check_modulus(p, 5)?;
    enumerate_free(p, 1, u64::MAX, visitor)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepthSearchOutcome {
    pub p: u32,
    pub depth: u32,
    pub records: u64,
    pub symmetricisable: u64,
    /// Largest comparison tail of a symmetricisable record.
    pub best_comparison_tail: Option<i64>,
    /// Every symmetricisable record attaining it, in lexicographic order.
    pub best: Vec<PlusBasisRecord>,
    pub visited: u64,
}

impl DepthSearchOutcome {
    fn new(p: u32, depth: u32) -> Self {
        DepthSearchOutcome {
            p,
            depth,
            records: 0,
            symmetricisable: 0,
            best_comparison_tail: None,
            best: vec![],
            visited: 0,
        }
    }

    fn offer(&mut self, rec: PlusBasisRecord) {
        self.records += 1;
        if !rec.symmetricisable {
            return;
        }
        self.symmetricisable += 1;
        match self.best_comparison_tail {
            Some(t) if rec.comparison_tail < t => {}
            Some(t) if rec.comparison_tail == t => self.best.push(rec),
            _ => {
                self.best_comparison_tail = Some(rec.comparison_tail);
                self.best = vec![rec];
            }
        }
    }

    /// Combine with the outcome of a lexicographically later subtree.
    fn merge(&mut self, other: DepthSearchOutcome) {
        self.records += other.records;
        self.symmetricisable += other.symmetricisable;
        self.visited += other.visited;
        match (self.best_comparison_tail, other.best_comparison_tail) {
            (_, None) => {}
            (Some(a), Some(b)) if b < a => {}
            (Some(a), Some(b)) if b == a => self.best.extend(other.best),
            _ => {
                self.best_comparison_tail = other.best_comparison_tail;
                self.best = other.best;
            }
        }
    }
}

/// Symmetricisable records of depth `depth` and the best comparison tail.
pub fn plus_depth_search(p: u32, depth: u32, config: &SearchConfig) -> Result<DepthSearchOutcome> {
    check_modulus(p, 5)?;
    check_depth(depth)?;
    let parts = par_subtrees(p, config, |walker| {
        let mut out = DepthSearchOutcome::new(p, depth);
        walk_free(walker, depth, &mut |rec| {
            out.offer(rec);
            Ok(())
        })?;
        out.visited = walker.visited();
        Ok(out)
    })?;
    let mut total = DepthSearchOutcome::new(p, depth);
    for part in parts {
        total.merge(part);
    }
    Ok(total)
}
