//! Brute-force oracles and the property checks built on them. Shared by the
//! property tests and the acceptance runner.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::TestRunner;

use stampbase_core::{
    build_symmetric_closure, enumerate_p_bases, is_extensible, is_symmetricisable, m_zero, range,
    symmetrize, Basis, Parity, ReachSet,
};

pub type Check = Result<String, String>;

/// Largest `n` with every `1..=n` equal to `0`, an element, or a sum of two.
pub fn naive_range(xs: &[u32]) -> u32 {
    let top = *xs.last().unwrap() as usize;
    let mut hit = vec![false; 2 * top + 2];
    let with_zero: Vec<usize> = std::iter::once(0)
        .chain(xs.iter().map(|&x| x as usize))
        .collect();
    for &a in &with_zero {
        for &b in &with_zero {
            hit[a + b] = true;
        }
    }
    (1..hit.len()).find(|&x| !hit[x]).unwrap() as u32 - 1
}

pub fn naive_admissible(xs: &[u32]) -> bool {
    naive_range(xs) >= *xs.last().unwrap()
}

/// `xs` followed by `m` terms of step `p`.
pub fn extended(xs: &[u32], p: u32, m: u32) -> Vec<u32> {
    let b0 = *xs.last().unwrap();
    xs.iter()
        .copied()
        .chain((1..=m).map(|i| b0 + i * p))
        .collect()
}

fn residues_distinct_nonzero(xs: &[u32], p: u32) -> bool {
    let mut seen = vec![false; p as usize];
    for &x in xs {
        let r = (x % p) as usize;
        if r == 0 || seen[r] {
            return false;
        }
        seen[r] = true;
    }
    true
}

/// Every `p`-basis by generate-and-filter. Candidate lists only use the
/// bound `a_{t+1} <= 2 a_t + 1`, which every admissible basis satisfies since
/// its prefixes are admissible too.
pub fn naive_p_bases(p: u32) -> Vec<Vec<u32>> {
    fn grow(xs: &mut Vec<u32>, len: usize, p: u32, out: &mut Vec<Vec<u32>>) {
        if xs.len() == len {
            if naive_admissible(xs) && residues_distinct_nonzero(xs, p) {
                out.push(xs.clone());
            }
            return;
        }
        let last = *xs.last().unwrap();
        for x in last + 1..=2 * last + 1 {
            xs.push(x);
            grow(xs, len, p, out);
            xs.pop();
        }
    }
    let mut out = vec![];
    grow(&mut vec![1], (p - 1) as usize, p, &mut out);
    out
}

pub fn all_p_bases(p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![];
    enumerate_p_bases(p, |xs, _| out.push(xs.to_vec())).unwrap();
    out
}

fn basis(xs: &[u32]) -> Basis {
    Basis::from_slice(xs).unwrap()
}

/// Random bases: element 1 followed by random positive gaps.
pub fn random_bases(count: usize, max_len: usize, max_gap: u32) -> Vec<Vec<u32>> {
    let strategy = prop::collection::vec(1..=max_gap, 0..max_len);
    let mut runner = TestRunner::deterministic();
    (0..count)
        .map(|_| {
            let gaps = strategy.new_tree(&mut runner).unwrap().current();
            let mut xs = vec![1];
            for g in gaps {
                xs.push(xs.last().unwrap() + g);
            }
            xs
        })
        .collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Admissible symmetric bases have range exactly twice their largest element.
pub fn check_symmetric_range_doubling() -> Check {
    let mut checked = 0;
    let mut candidates = vec![];
    for xs in random_bases(1000, 8, 4) {
        for parity in [Parity::Even, Parity::Odd] {
            candidates.push(symmetrize(&basis(&xs), parity).unwrap());
        }
    }
    for p in 5..=10 {
        for xs in all_p_bases(p) {
            let b = basis(&xs);
            if !is_extensible(&b, p).unwrap().extensible {
                continue;
            }
            for m in 0..=m_zero(b.last(), p) + 3 {
                candidates.push(build_symmetric_closure(&b, p, m).unwrap().elements);
            }
        }
    }
    for c in candidates {
        if !naive_admissible(c.elements()) {
            continue;
        }
        let expect = 2 * c.last();
        ensure(
            naive_range(c.elements()) == expect && range(&c).n == expect,
            || format!("symmetric admissible {c} does not have range {expect}"),
        )?;
        checked += 1;
    }
    ensure(checked > 300, || {
        format!("only {checked} symmetric bases generated")
    })?;
    Ok(format!("{checked} admissible symmetric bases"))
}

/// The extensibility verdict agrees with brute-force admissibility of the
/// first `k* + 25` extensions.
pub fn check_extensibility_vs_brute_force(p_max: u32) -> Check {
    let mut checked = 0;
    for p in 3..=p_max {
        for xs in all_p_bases(p) {
            let report = is_extensible(&basis(&xs), p).unwrap();
            let horizon = report.k_star + 25;
            let brute = (1..=horizon).all(|m| naive_admissible(&extended(&xs, p, m)));
            ensure(report.extensible == brute, || {
                format!(
                    "p = {p}, {xs:?}: verdict {} but brute force {brute}",
                    report.extensible
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} p-bases, p <= {p_max}"))
}

/// For extensible `p`-bases, `n(A_{p-1+k}) = b_{k+1} - 1` once `b_{k+1} >= 2 b0`.
pub fn check_settled_extension_ranges(p_max: u32, k_max: u32) -> Check {
    let mut checked = 0;
    for p in 3..=p_max {
        for xs in all_p_bases(p) {
            if !is_extensible(&basis(&xs), p).unwrap().extensible {
                continue;
            }
            let b0 = *xs.last().unwrap();
            for k in 0..=k_max {
                let next = b0 + (k + 1) * p;
                if next < 2 * b0 {
                    continue;
                }
                let n = naive_range(&extended(&xs, p, k));
                ensure(n == next - 1, || {
                    format!("p = {p}, {xs:?}, k = {k}: range {n}, expected {}", next - 1)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (basis, k) pairs"))
}

/// Closure admissibility is constant for `m0 <= m <= m0 + 8` and equals the
/// symmetricisability verdict.
pub fn check_closure_profile_stability(p_max: u32) -> Check {
    let mut checked = 0;
    for p in 3..=p_max {
        for xs in all_p_bases(p) {
            let b = basis(&xs);
            if !is_extensible(&b, p).unwrap().extensible {
                continue;
            }
            let m0 = m_zero(b.last(), p);
            let verdict = is_symmetricisable(&b, p).unwrap().symmetricisable;
            for m in m0..=m0 + 8 {
                let c = build_symmetric_closure(&b, p, m).unwrap();
                let adm = naive_admissible(c.elements.elements());
                ensure(adm == verdict, || {
                    format!("p = {p}, {xs:?}: S_{m} admissible = {adm}, verdict {verdict}")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} extensible p-bases"))
}

/// The pruned walk returns exactly the generate-and-filter set, in order.
pub fn check_pruned_vs_naive(p_max: u32) -> Check {
    let mut total = 0;
    for p in 3..=p_max {
        let pruned = all_p_bases(p);
        let mut naive = naive_p_bases(p);
        naive.sort();
        ensure(pruned == naive, || {
            format!("p = {p}: pruned {} vs naive {}", pruned.len(), naive.len())
        })?;
        total += pruned.len();
    }
    Ok(format!("{total} bases for p <= {p_max}"))
}

/// Appending elements one at a time agrees with recomputing from scratch.
pub fn check_incremental_reach(count: usize) -> Check {
    for xs in random_bases(count, 30, 9) {
        let mut reach = ReachSet::new(&Basis::unit());
        for t in 1..xs.len() {
            reach.push(xs[t]).unwrap();
            let prefix = &xs[..=t];
            let scratch = range(&basis(prefix)).n;
            ensure(
                reach.range() == scratch && scratch == naive_range(prefix),
                || {
                    format!(
                        "{prefix:?}: incremental {} vs scratch {scratch}",
                        reach.range()
                    )
                },
            )?;
        }
    }
    Ok(format!("{count} random bases"))
}
