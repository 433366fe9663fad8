//! Depth-first walk over admissible prefixes with distinct non-zero residues.
//!
//! Elements are placed in increasing order. Once `a_t` is placed every later
//! element is larger, so any sum involving one exceeds `a_t`; a prefix whose
//! coverage has a gap below its own last element can never be repaired. The
//! walk therefore only offers `a_{t+1}` in `(a_t, n(A_t) + 1]`, and only with a
//! residue mod `p` that is non-zero and not yet used.
//!
//! The stack is explicit so that the frontier (prefix plus a next-candidate
//! cursor per level) can be saved and restored exactly.

use crate::basis::check_modulus;
use crate::bits;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frontier {
    pub prefix: Vec<u32>,
    pub cursors: Vec<u32>,
}

#[derive(Debug, Clone)]
pub struct PBasisWalker {
    p: u32,
    target: usize,
    floor: usize,
    words: usize,
    elems: Vec<u32>,
    reach: Vec<u32>,
    used: Vec<u128>,
    cursor: Vec<u32>,
    covered: Vec<u64>,
    members: Vec<u64>,
    pending_pop: bool,
    root_pending: bool,
    done: bool,
    visited: u64,
    node_limit: u64,
}

impl PBasisWalker {
    /// Walk every `p`-basis in lexicographic order.
    pub fn new(p: u32) -> Result<Self> {
        check_modulus(p, 3)?;
        let mut w = Self::empty(p, (p - 1) as usize);
        w.push(1);
        w.root_pending = w.target == 1;
        Ok(w)
    }

    /// Walk the admissible residue-distinct prefixes of length `len` instead
    /// of complete bases. These are the subtree roots used for partitioning.
    pub fn prefixes(p: u32, len: usize) -> Result<Self> {
        check_modulus(p, 3)?;
        let len = len.clamp(1, (p - 1) as usize);
        let mut w = Self::empty(p, len);
        w.push(1);
        w.root_pending = len == 1;
        Ok(w)
    }

    /// Walk only the `p`-bases that start with `prefix`.
    pub fn subtree(p: u32, prefix: &[u32]) -> Result<Self> {
        check_modulus(p, 3)?;
        let mut w = Self::empty(p, (p - 1) as usize);
        w.replay(prefix)?;
        w.floor = prefix.len();
        w.root_pending = prefix.len() == w.target;
        Ok(w)
    }

    /// Continue a full walk from a saved frontier. An empty frontier is a
    /// finished walk.
    pub fn resume(p: u32, frontier: &Frontier) -> Result<Self> {
        check_modulus(p, 3)?;
        let mut w = Self::empty(p, (p - 1) as usize);
        if frontier.prefix.is_empty() {
            w.done = true;
            return Ok(w);
        }
        if frontier.prefix.len() != frontier.cursors.len() {
            return Err(Error::Checkpoint(
                "prefix and cursors differ in length".into(),
            ));
        }
        if frontier.prefix.len() >= w.target {
            return Err(Error::Checkpoint(
                "frontier prefix is a complete basis".into(),
            ));
        }
        w.replay(&frontier.prefix)?;
        for (i, &c) in frontier.cursors.iter().enumerate() {
            let expect_min = frontier.prefix[i] + 1;
            let consistent = match frontier.prefix.get(i + 1) {
                Some(&child) => c == child + 1,
                None => c >= expect_min,
            };
            if !consistent {
                return Err(Error::Checkpoint(format!(
                    "cursor {c} at level {i} is inconsistent"
                )));
            }
            w.cursor[i] = c;
        }
        Ok(w)
    }

    fn empty(p: u32, target: usize) -> Self {
        let words = initial_words(p);
        PBasisWalker {
            p,
            target,
            floor: 1,
            words,
            elems: Vec::with_capacity(target),
            reach: Vec::with_capacity(target),
            used: Vec::with_capacity(target),
            cursor: Vec::with_capacity(target),
            covered: vec![0; target * words],
            members: vec![0; target * words],
            pending_pop: false,
            root_pending: false,
            done: false,
            visited: 0,
            node_limit: u64::MAX,
        }
    }

    fn replay(&mut self, prefix: &[u32]) -> Result<()> {
        if prefix.first() != Some(&1) || prefix.len() > self.target {
            return Err(Error::Checkpoint(format!("invalid prefix {prefix:?}")));
        }
        self.push(1);
        for &x in &prefix[1..] {
            let d = self.elems.len() - 1;
            let r = x % self.p;
            let legal = x > self.elems[d]
                && x <= self.reach[d] + 1
                && r != 0
                && self.used[d] & (1u128 << r) == 0;
            if !legal {
                return Err(Error::Checkpoint(format!(
                    "prefix {prefix:?} is not admissible"
                )));
            }
            self.cursor[d] = x + 1;
            self.push(x);
        }
        // Rebuilding a known prefix is not new work.
        self.visited = 0;
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Nodes (prefixes) created so far, including the root.
    pub fn visited(&self) -> u64 {
        self.visited
    }

    /// Stop with [`Error::BudgetExceeded`] once `limit` nodes have been created.
    pub fn set_node_limit(&mut self, limit: u64) {
        self.node_limit = limit;
    }

    pub fn node_limit(&self) -> u64 {
        self.node_limit
    }

    /// Count extra work done on behalf of this walk against its node limit.
    pub fn charge(&mut self, nodes: u64) -> Result<()> {
        self.visited += nodes;
        if self.visited > self.node_limit {
            return Err(Error::BudgetExceeded {
                budget: self.node_limit,
                visited: self.visited,
            });
        }
        Ok(())
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    /// Where to pick up again. Empty once the walk is finished.
    pub fn frontier(&self) -> Frontier {
        if self.done {
            return Frontier {
                prefix: vec![],
                cursors: vec![],
            };
        }
        let depth = if self.pending_pop {
            self.elems.len() - 1
        } else {
            self.elems.len()
        };
        Frontier {
            prefix: self.elems[..depth].to_vec(),
            cursors: self.cursor[..depth].to_vec(),
        }
    }

    /// The next basis (or prefix, for [`PBasisWalker::prefixes`]) and its 2-range.
    pub fn next_basis(&mut self) -> Result<Option<(&[u32], u32)>> {
        if self.done {
            return Ok(None);
        }
        if self.root_pending {
            self.root_pending = false;
            self.done = true;
            let d = self.elems.len() - 1;
            return Ok(Some((&self.elems, self.reach[d])));
        }
        if self.pending_pop {
            self.pop();
            self.pending_pop = false;
        }
        loop {
            let d = self.elems.len() - 1;
            let limit = self.reach[d] + 1;
            let used = self.used[d];
            let mut x = self.cursor[d];
            while x <= limit {
                let r = x % self.p;
                if r != 0 && used & (1u128 << r) == 0 {
                    break;
                }
                x += 1;
            }
            if x > limit {
                if self.elems.len() == self.floor {
                    self.done = true;
                    return Ok(None);
                }
                self.pop();
                continue;
            }
            if self.visited >= self.node_limit {
                return Err(Error::BudgetExceeded {
                    budget: self.node_limit,
                    visited: self.visited,
                });
            }
            self.cursor[d] = x + 1;
            self.push(x);
            if self.elems.len() == self.target {
                self.pending_pop = true;
                let top = self.elems.len() - 1;
                return Ok(Some((&self.elems, self.reach[top])));
            }
        }
    }

    fn push(&mut self, x: u32) {
        let need = bits::words_for(2 * x as usize + 2);
        if need > self.words {
            self.grow(need.next_power_of_two());
        }
        let w = self.words;
        let d = self.elems.len();
        if d == 0 {
            let (cov, mem) = (&mut self.covered[..w], &mut self.members[..w]);
            cov.fill(0);
            mem.fill(0);
            bits::set(mem, 0);
        } else {
            self.covered.copy_within((d - 1) * w..d * w, d * w);
            self.members.copy_within((d - 1) * w..d * w, d * w);
        }
        let mem = &mut self.members[d * w..(d + 1) * w];
        bits::set(mem, x as usize);
        let cov = &mut self.covered[d * w..(d + 1) * w];
        bits::or_shifted(cov, mem, x as usize);
        if d == 0 {
            bits::set(cov, 0);
        }
        let reach = bits::first_zero(cov).expect("guard bit is clear") as u32 - 1;
        let used = if d == 0 { 0 } else { self.used[d - 1] } | (1u128 << (x % self.p));
        self.elems.push(x);
        self.reach.push(reach);
        self.used.push(used);
        self.cursor.push(x + 1);
        self.visited += 1;
    }

    fn pop(&mut self) {
        self.elems.pop();
        self.reach.pop();
        self.used.pop();
        self.cursor.pop();
    }

    fn grow(&mut self, words: usize) {
        let old = self.words;
        let mut covered = vec![0u64; self.target * words];
        let mut members = vec![0u64; self.target * words];
        for d in 0..self.elems.len() {
            covered[d * words..d * words + old]
                .copy_from_slice(&self.covered[d * old..(d + 1) * old]);
            members[d * words..d * words + old]
                .copy_from_slice(&self.members[d * old..(d + 1) * old]);
        }
        self.covered = covered;
        self.members = members;
        self.words = words;
    }
}

fn initial_words(p: u32) -> usize {
    // Largest tails observed grow a little over 5p; start with room for sums
    // of elements up to about 8p and grow on demand.
    bits::words_for(16 * p as usize + 2).next_power_of_two()
}
