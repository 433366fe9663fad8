use std::io::Write;
use std::path::PathBuf;

use clap::Args;

use stampbase_core::{
    best_segments, census, maximal_symmetricisable, range_table, Census, MaximalBasisSet, Mode,
    RangeTable, SearchConfig,
};

use crate::{CliError, Format, Outcome, RunConfig};

#[derive(Args)]
pub struct TableArgs {
    /// Table number: 1-11, or 12-15 for the per-tail chart series
    #[arg(value_parser = clap::value_parser!(u32).range(1..=15))]
    which: u32,
    /// Smallest modulus (defaults to the table's natural start)
    #[arg(long)]
    p_min: Option<u32>,
    #[arg(long, default_value_t = 14)]
    p_max: u32,
    #[arg(long, default_value_t = 40)]
    k_max: u32,
    /// Modulus for the per-tail tables 10 and 12-15 (defaults to --p-max)
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn pct(part: u64, whole: u64) -> String {
    if whole == 0 {
        "0.0".into()
    } else {
        format!("{:.1}", 100.0 * part as f64 / whole as f64)
    }
}

fn ratio(v: f64) -> String {
    format!("{v:.2}")
}

fn joined(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

pub fn run(args: &TableArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let natural_min = match args.which {
        1 | 2 => 3,
        _ => 5,
    };
    let p_min = args.p_min.unwrap_or(natural_min).max(natural_min);
    if args.p_max < p_min {
        return Err(CliError::Usage(format!("--p-max must be at least {p_min}")));
    }
    let search = cfg.search();
    let format = cfg.format.unwrap_or(Format::Csv);
    if format == Format::Wide && !matches!(args.which, 5 | 8) {
        return Err(CliError::Usage(
            "--format wide applies to tables 5 and 8".into(),
        ));
    }
    let json = matches!(format, Format::Json | Format::Jsonl);

    // Compute everything before writing, so a budget failure leaves no partial output.
    let mut rows: Vec<Vec<String>> = vec![];
    let mut json_rows: Vec<serde_json::Value> = vec![];
    let header: Vec<&str>;
    match args.which {
        1 | 2 | 3 | 11 => {
            let censuses = (p_min..=args.p_max)
                .map(|p| census(p, &search))
                .collect::<Result<Vec<Census>, _>>()?;
            header = match args.which {
                1 => vec!["p", "n_p"],
                2 => vec![
                    "p",
                    "n_less",
                    "pct_less",
                    "n_equal",
                    "pct_equal",
                    "n_greater",
                    "pct_greater",
                ],
                3 => vec!["p", "n_p", "n_e", "n_s", "pct_e", "pct_s"],
                _ => vec!["p", "v1", "v2", "v1_over_p", "v2_over_v1"],
            };
            for c in &censuses {
                let p = c.p.to_string();
                rows.push(match args.which {
                    1 => vec![p, c.n_p.to_string()],
                    2 => {
                        let r = c.range_comparison();
                        vec![
                            p,
                            r.less.to_string(),
                            pct(r.less, c.n_p),
                            r.equal.to_string(),
                            pct(r.equal, c.n_p),
                            r.greater.to_string(),
                            pct(r.greater, c.n_p),
                        ]
                    }
                    3 => vec![
                        p,
                        c.n_p.to_string(),
                        c.n_e.to_string(),
                        c.n_s.to_string(),
                        pct(c.n_e, c.n_p),
                        pct(c.n_s, c.n_e),
                    ],
                    _ => {
                        let m = c.maxima().expect("non-empty census");
                        vec![
                            p,
                            m.v1.to_string(),
                            m.v2.map(|v| v.to_string()).unwrap_or_default(),
                            ratio(m.v1_over_p),
                            m.v2_over_v1.map(ratio).unwrap_or_default(),
                        ]
                    }
                });
                json_rows.push(match args.which {
                    1 => serde_json::json!({ "p": c.p, "n_p": c.n_p }),
                    2 => serde_json::to_value(c.range_comparison())?,
                    3 => serde_json::to_value(c.class_stats())?,
                    _ => serde_json::to_value(c.maxima())?,
                });
            }
        }
        10 | 12..=15 => {
            let p = args.p.unwrap_or(args.p_max);
            let c = census(p, &search)?;
            let dist = c.tail_distribution();
            header = match args.which {
                10 => vec!["tail", "n_p", "n_e", "n_s"],
                12 => vec!["tail", "n_p"],
                13 => vec!["tail", "n_e"],
                14 => vec!["tail", "pct_e"],
                _ => vec!["tail", "pct_s"],
            };
            for r in &dist.rows {
                let t = r.tail.to_string();
                rows.push(match args.which {
                    10 => vec![t, r.n_p.to_string(), r.n_e.to_string(), r.n_s.to_string()],
                    12 => vec![t, r.n_p.to_string()],
                    13 => vec![t, r.n_e.to_string()],
                    14 => vec![t, pct(r.n_e, r.n_p)],
                    _ => vec![t, pct(r.n_s, r.n_e)],
                });
                json_rows.push(serde_json::to_value(r)?);
            }
        }
        4 | 7 => {
            let mode = if args.which == 4 {
                Mode::Plain
            } else {
                Mode::Plus
            };
            let sets = maximal_sets(p_min, args.p_max, mode, &search)?;
            header = vec!["p", "tail", "basis"];
            for s in &sets {
                for b in &s.bases {
                    rows.push(vec![
                        s.p.to_string(),
                        s.tail.to_string(),
                        joined(b.elements()),
                    ]);
                }
                json_rows.push(serde_json::to_value(s)?);
            }
        }
        5 | 8 | 6 | 9 => {
            let mode = if matches!(args.which, 5 | 6) {
                Mode::Plain
            } else {
                Mode::Plus
            };
            let sets = maximal_sets(p_min, args.p_max, mode, &search)?;
            let table = range_table(&sets, args.k_max);
            if matches!(args.which, 5 | 8) {
                if format == Format::Wide {
                    return write_wide(&table, args);
                }
                header = vec!["k", "p", "range"];
                for e in &table.entries {
                    rows.push(vec![e.k.to_string(), e.p.to_string(), e.range.to_string()]);
                    json_rows.push(serde_json::to_value(e)?);
                }
            } else {
                header = vec!["k_min", "k_max", "range", "p"];
                for s in best_segments(&table) {
                    rows.push(vec![
                        s.k_min.to_string(),
                        s.k_max.to_string(),
                        s.range.to_string(),
                        s.p.to_string(),
                    ]);
                    json_rows.push(serde_json::to_value(s)?);
                }
            }
        }
        _ => unreachable!("clap restricts the table number"),
    }

    let mut out = crate::output(args.out.as_ref())?;
    if json {
        for v in &json_rows {
            writeln!(out, "{v}")?;
        }
    } else {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(&header)?;
        for r in &rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    out.flush()?;
    Ok(Outcome::Ok)
}

fn maximal_sets(
    p_min: u32,
    p_max: u32,
    mode: Mode,
    search: &SearchConfig,
) -> Result<Vec<MaximalBasisSet>, CliError> {
    Ok((p_min..=p_max)
        .map(|p| maximal_symmetricisable(p, mode, search))
        .collect::<Result<_, _>>()?)
}

/// One row per `k`, one column per modulus; blank where there is no entry.
fn write_wide(table: &RangeTable, args: &TableArgs) -> Result<Outcome, CliError> {
    let ps = table.moduli();
    let mut header = vec!["k".to_string()];
    header.extend(ps.iter().map(|p| format!("p{p}")));
    let mut out = crate::output(args.out.as_ref())?;
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(&header)?;
        let mut tails = vec!["tail".to_string()];
        tails.extend(ps.iter().map(|p| {
            table
                .maxima
                .iter()
                .find(|s| s.p == *p)
                .map(|s| s.tail.to_string())
                .unwrap_or_default()
        }));
        w.write_record(&tails)?;
        for k in table.ks() {
            let mut row = vec![k.to_string()];
            row.extend(
                ps.iter()
                    .map(|&p| table.get(k, p).map(|r| r.to_string()).unwrap_or_default()),
            );
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    out.flush()?;
    Ok(Outcome::Ok)
}
