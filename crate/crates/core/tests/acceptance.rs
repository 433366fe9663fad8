//! Acceptance runner: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::Check;
use stampbase_core::{
    best_segments, build_symmetric_closure, census, is_extensible, maximal_symmetricisable,
    period_bound, periodic_scan, plus_depth_search, range, range_table, stohr_sequence, Basis,
    ExtensionLimit, MaximalBasisSet, Mode, SearchConfig, Segment,
};

const MAXIMAL_PLAIN: &[(u32, i64, &[&[u32]])] = &[
    (5, 4, &[&[1, 2, 3, 4]]),
    (6, 8, &[&[1, 3, 4, 5, 8]]),
    (7, 9, &[&[1, 3, 4, 5, 6, 9]]),
    (8, 12, &[&[1, 3, 5, 6, 7, 10, 12]]),
    (9, 16, &[&[1, 3, 4, 5, 8, 11, 15, 16]]),
    (10, 19, &[&[1, 2, 5, 6, 8, 13, 14, 17, 19]]),
    (11, 24, &[&[1, 3, 4, 7, 8, 9, 16, 17, 21, 24]]),
    (
        12,
        23,
        &[
            &[1, 2, 3, 6, 7, 8, 10, 16, 17, 21, 23],
            &[1, 2, 3, 6, 7, 8, 16, 17, 21, 22, 23],
            &[1, 2, 3, 6, 7, 9, 16, 17, 20, 22, 23],
            &[1, 2, 3, 7, 8, 10, 16, 17, 18, 21, 23],
            &[1, 2, 4, 5, 8, 9, 10, 15, 18, 19, 23],
            &[1, 2, 4, 6, 7, 10, 15, 17, 20, 21, 23],
            &[1, 2, 5, 6, 8, 9, 10, 15, 16, 19, 23],
            &[1, 2, 5, 6, 8, 10, 15, 16, 19, 21, 23],
            &[1, 2, 5, 7, 8, 9, 15, 16, 18, 22, 23],
            &[1, 3, 4, 6, 7, 8, 9, 10, 14, 17, 23],
            &[1, 3, 4, 6, 8, 9, 14, 17, 19, 22, 23],
            &[1, 3, 4, 6, 9, 10, 14, 17, 19, 20, 23],
            &[1, 3, 4, 7, 8, 10, 14, 17, 18, 21, 23],
            &[1, 3, 4, 7, 9, 10, 14, 17, 18, 20, 23],
        ],
    ),
    (13, 30, &[&[1, 2, 5, 7, 10, 11, 19, 21, 22, 25, 29, 30]]),
    (14, 34, &[&[1, 3, 4, 7, 8, 11, 13, 23, 24, 26, 30, 33, 34]]),
];
const MAXIMAL_PLUS: &[(u32, i64, &[&[u32]])] = &[
    (5, 4, &[&[1, 2, 3, 4, 9], &[1, 3, 4, 7, 9]]),
    (6, 8, &[&[1, 3, 4, 5, 8, 14]]),
    (7, 9, &[&[1, 3, 4, 5, 6, 9, 16]]),
    (8, 13, &[&[1, 3, 4, 6, 10, 13, 15, 21]]),
    (9, 16, &[&[1, 3, 4, 5, 8, 11, 15, 16, 25]]),
    (
        10,
        19,
        &[
            &[1, 2, 5, 6, 8, 13, 14, 17, 19, 29],
            &[1, 3, 4, 6, 8, 12, 17, 19, 25, 29],
        ],
    ),
    (11, 24, &[&[1, 3, 4, 7, 8, 9, 16, 17, 21, 24, 35]]),
    (
        12,
        23,
        &[
            &[1, 2, 3, 5, 7, 8, 16, 18, 22, 23, 33, 35],
            &[1, 2, 3, 6, 7, 8, 10, 16, 17, 21, 23, 35],
            &[1, 2, 3, 6, 7, 8, 16, 17, 21, 22, 23, 35],
            &[1, 2, 3, 6, 7, 9, 10, 20, 23, 28, 29, 35],
            &[1, 2, 3, 6, 7, 9, 16, 17, 20, 22, 23, 35],
            &[1, 2, 3, 7, 8, 10, 16, 17, 18, 21, 23, 35],
            &[1, 2, 4, 5, 8, 9, 10, 15, 18, 19, 23, 35],
            &[1, 2, 4, 5, 8, 10, 15, 21, 23, 30, 31, 35],
            &[1, 2, 4, 6, 7, 9, 10, 20, 23, 27, 29, 35],
            &[1, 2, 4, 6, 7, 10, 15, 17, 20, 21, 23, 35],
            &[1, 2, 4, 6, 8, 9, 17, 19, 22, 23, 27, 35],
            &[1, 2, 4, 6, 9, 10, 15, 19, 20, 23, 29, 35],
            &[1, 2, 4, 6, 9, 10, 17, 19, 20, 23, 27, 35],
            &[1, 2, 5, 6, 8, 9, 10, 15, 16, 19, 23, 35],
            &[1, 2, 5, 6, 8, 10, 15, 16, 19, 21, 23, 35],
            &[1, 2, 5, 7, 8, 9, 15, 16, 18, 22, 23, 35],
            &[1, 2, 5, 7, 8, 10, 18, 21, 23, 27, 28, 35],
            &[1, 3, 4, 5, 6, 10, 14, 20, 21, 23, 31, 35],
            &[1, 3, 4, 5, 8, 10, 14, 21, 23, 30, 31, 35],
            &[1, 3, 4, 6, 7, 8, 9, 10, 14, 17, 23, 35],
            &[1, 3, 4, 6, 8, 9, 14, 17, 19, 22, 23, 35],
            &[1, 3, 4, 6, 9, 10, 14, 17, 19, 20, 23, 35],
            &[1, 3, 4, 6, 10, 14, 19, 20, 21, 23, 29, 35],
            &[1, 3, 4, 7, 8, 10, 14, 17, 18, 21, 23, 35],
            &[1, 3, 4, 7, 8, 10, 18, 23, 26, 29, 33, 35],
            &[1, 3, 4, 7, 9, 10, 14, 17, 18, 20, 23, 35],
            &[1, 3, 4, 7, 9, 14, 18, 20, 22, 23, 29, 35],
            &[1, 3, 5, 6, 9, 10, 16, 20, 23, 26, 31, 35],
            &[1, 3, 5, 7, 8, 10, 16, 18, 21, 23, 26, 35],
        ],
    ),
];

const COUNTS: [u64; 12] = [1, 1, 2, 3, 6, 16, 28, 84, 192, 634, 1658, 6277];

const CLASSES: [(u64, u64); 10] = [
    (1, 1),
    (2, 2),
    (2, 2),
    (4, 4),
    (8, 8),
    (15, 15),
    (33, 33),
    (99, 99),
    (193, 193),
    (601, 599),
];

const RANGE_TRIPLES: [(u64, u64, u64); 10] = [
    (0, 1, 0),
    (0, 1, 0),
    (1, 1, 0),
    (1, 2, 0),
    (4, 2, 0),
    (12, 3, 1),
    (20, 6, 2),
    (69, 11, 4),
    (158, 23, 11),
    (527, 54, 53),
];

fn b(xs: &[u32]) -> Basis {
    Basis::from_slice(xs).unwrap()
}

fn cfg() -> SearchConfig {
    SearchConfig::unlimited()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn census_counts() -> Check {
    for (p, &want) in (3..=14).zip(COUNTS.iter()) {
        let got = census(p, &cfg()).map_err(|e| e.to_string())?.n_p;
        ensure(got == want, || {
            format!("p = {p}: {got} p-bases, expected {want}")
        })?;
    }
    Ok("n_p for p = 3..14".into())
}

fn classification() -> Check {
    for (p, &(ne, ns)) in (5..=14).zip(CLASSES.iter()) {
        let c = census(p, &cfg()).map_err(|e| e.to_string())?;
        ensure((c.n_e, c.n_s) == (ne, ns), || {
            format!(
                "p = {p}: (n_e, n_s) = ({}, {}), expected ({ne}, {ns})",
                c.n_e, c.n_s
            )
        })?;
    }
    Ok("(n_e, n_s) for p = 5..14, 601/599 at p = 14".into())
}

fn range_comparison() -> Check {
    for (p, &want) in (3..=12).zip(RANGE_TRIPLES.iter()) {
        let r = census(p, &cfg())
            .map_err(|e| e.to_string())?
            .range_comparison();
        let got = (r.less, r.equal, r.greater);
        ensure(got == want, || {
            format!("p = {p}: {got:?}, expected {want:?}")
        })?;
    }
    Ok("(n<, n=, n>) for p = 3..12".into())
}

fn compare_sets(mode: Mode, table: &[(u32, i64, &[&[u32]])]) -> Result<(), String> {
    for &(p, tail, bases) in table {
        let got = maximal_symmetricisable(p, mode, &cfg()).map_err(|e| e.to_string())?;
        let want: Vec<Basis> = bases.iter().map(|xs| b(xs)).collect();
        ensure(got.tail == tail, || {
            format!("{mode} p = {p}: tail {}, expected {tail}", got.tail)
        })?;
        ensure(got.bases == want, || {
            format!(
                "{mode} p = {p}: {} bases differ from the {} published",
                got.bases.len(),
                want.len()
            )
        })?;
    }
    Ok(())
}

fn maximal_plain() -> Check {
    compare_sets(Mode::Plain, MAXIMAL_PLAIN)?;
    Ok("tails 4,8,9,12,16,19,24,23,30,34 with exact sets (14 at p = 12)".into())
}

fn maximal_plus() -> Check {
    compare_sets(Mode::Plus, MAXIMAL_PLUS)?;
    Ok("comparison tails for p = 5..12, 13 at p = 8, two bases at p = 5".into())
}

fn range_tables() -> Check {
    let star = build_symmetric_closure(&b(&[1, 3, 4, 5, 8]), 6, 4).unwrap();
    ensure(
        star.elements.elements() == [1, 3, 4, 5, 8, 14, 20, 26, 32, 35, 36, 37, 39, 40],
        || format!("S*(6)_14 = {}", star.elements),
    )?;
    ensure(range(&star.elements).n == 80, || "n(S*(6)_14) != 80".into())?;
    let s4 = build_symmetric_closure(&b(&[1, 2, 3]), 4, 4).unwrap();
    ensure(s4.k() == 10 && range(&s4.elements).n == 44, || {
        "n(S(4)_10) != 44".into()
    })?;

    let maxima: Vec<MaximalBasisSet> = (5..=11)
        .map(|p| maximal_symmetricisable(p, Mode::Plain, &cfg()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let table = range_table(&maxima, 40);
    ensure(table.get(14, 6) == Some(80), || {
        "table entry (14, 6) != 80".into()
    })?;
    let segments = best_segments(&table);
    for (k_min, k_max, range, p) in [(8, 12, 16, 5), (12, 22, 56, 6), (24, 30, 208, 9)] {
        let want = Segment {
            k_min,
            k_max,
            range,
            p,
        };
        ensure(segments.contains(&want), || {
            format!("missing segment {want:?} in {segments:?}")
        })?;
    }
    Ok("n(S*(6)_14) = 80, n(S(4)_10) = 44, segments (8,12,16,5) (12,22,56,6) (24,30,208,9)".into())
}

fn sharpness() -> Check {
    let cases: [(&[u32], u32, u32, u32); 5] = [
        (&[1, 3, 4, 7], 5, 0, 1),
        (&[1, 2, 5, 6, 8, 9, 18, 21, 25, 26], 11, 1, 2),
        (
            &[1, 3, 4, 7, 9, 10, 11, 14, 23, 29, 30, 32, 33, 39, 42, 53],
            17,
            2,
            3,
        ),
        (&[1, 3, 4, 5, 7, 8, 9, 16, 22], 10, 0, 2),
        (
            &[1, 2, 4, 7, 9, 12, 13, 21, 25, 29, 35, 38, 41, 48],
            15,
            1,
            3,
        ),
    ];
    for (xs, p, s, k_star) in cases {
        let r = is_extensible(&b(xs), p).map_err(|e| e.to_string())?;
        ensure(
            r.s == ExtensionLimit::Finite(s) && r.k_star == k_star && !r.extensible,
            || format!("{xs:?} step {p}: s = {:?}, k* = {}", r.s, r.k_star),
        )?;
    }
    Ok("five (s, k*) pairs".into())
}

fn stohr() -> Check {
    let seq = stohr_sequence(&b(&[1, 3, 5, 6, 7, 10, 12]), 6);
    ensure(seq.terms == [21, 23, 25, 34, 36, 38], || {
        format!("terms {:?}", seq.terms)
    })?;
    type Case = (&'static [u32], u32, &'static [u32], u64, &'static [u32]);
    let cases: [Case; 3] = [
        (
            &[
                1, 3, 4, 5, 8, 12, 13, 15, 16, 17, 20, 24, 25, 27, 28, 29, 32,
            ],
            18,
            &[30, 6],
            18,
            &[62, 68, 98, 104],
        ),
        (
            &[
                1, 3, 4, 5, 6, 9, 14, 15, 17, 18, 19, 20, 23, 28, 29, 31, 32, 33, 34, 37,
            ],
            21,
            &[35, 7],
            21,
            &[72, 79, 114, 121],
        ),
        (
            &[
                1, 3, 4, 7, 8, 9, 16, 17, 21, 24, 33, 34, 36, 37, 40, 41, 42, 49, 50, 54, 57,
            ],
            22,
            &[44, 11, 11],
            22,
            &[101, 112, 123, 167, 178, 189],
        ),
    ];
    for (xs, p, pattern, avg, run) in cases {
        let seed = b(xs);
        let report = periodic_scan(&seed, 200, 4)
            .map_err(|e| e.to_string())?
            .ok_or("no period found")?;
        let mut rotated = false;
        for shift in 0..pattern.len() {
            let rot: Vec<u32> = pattern[shift..]
                .iter()
                .chain(&pattern[..shift])
                .copied()
                .collect();
            rotated |= report.pattern == rot;
        }
        ensure(rotated, || format!("p = {p}: pattern {:?}", report.pattern))?;
        ensure((report.average_num, report.average_den) == (avg, 1), || {
            format!(
                "p = {p}: average {}/{}",
                report.average_num, report.average_den
            )
        })?;
        let n = report.period_length as u64;
        ensure(report.period_sum <= period_bound(n, u64::from(p)), || {
            format!("p = {p}: K exceeds bound")
        })?;
        let terms = stohr_sequence(&seed, 60).terms;
        ensure(terms.windows(run.len()).any(|w| w == run), || {
            format!("p = {p}: run {run:?} not in sequence")
        })?;
    }
    Ok("21,23,25,34,36,38; averages 18, 21, 22 with patterns (30,6) (35,7) (44,11,11)".into())
}

fn properties() -> Check {
    let parts = [
        common::check_symmetric_range_doubling()?,
        common::check_extensibility_vs_brute_force(10)?,
        common::check_settled_extension_ranges(10, 15)?,
        common::check_closure_profile_stability(10)?,
        common::check_pruned_vs_naive(8)?,
        common::check_incremental_reach(1000)?,
    ];
    Ok(parts.join("; "))
}

fn depth_two() -> Check {
    for p in 5..=10 {
        let one = plus_depth_search(p, 1, &cfg()).map_err(|e| e.to_string())?;
        let two = plus_depth_search(p, 2, &cfg()).map_err(|e| e.to_string())?;
        let (t1, t2) = (one.best_comparison_tail, two.best_comparison_tail);
        ensure(t2 <= t1, || {
            format!("p = {p}: depth 2 reaches {t2:?} beyond {t1:?}")
        })?;
    }
    Ok("no depth-2 record beats depth 1 for p = 5..10".into())
}

fn main() {
    type Criterion = (u32, &'static str, fn() -> Check);
    let criteria: [Criterion; 10] = [
        (1, "census counts", census_counts),
        (2, "classification", classification),
        (3, "range comparison", range_comparison),
        (4, "maximal p-bases", maximal_plain),
        (5, "maximal p+ bases", maximal_plus),
        (6, "range tables and segments", range_tables),
        (7, "sharpness examples", sharpness),
        (8, "greedy sequences and periods", stohr),
        (9, "property suites", properties),
        (10, "depth-2 free extensions", depth_two),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {id:>2} {name}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {id:>2} {name}: {why} ({secs:.2}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
