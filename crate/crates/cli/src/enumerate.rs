use std::fs::OpenOptions;
use std::io::{self, BufWriter, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};
use serde_json::json;

use stampbase_core::{
    for_each_free_extension, par_subtrees, Checkpoint, Error, Mode, PBasisRecord, PBasisWalker,
};

use crate::{parse_mode, CliError, Outcome, RunConfig};

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    p: u32,
    /// plain: p-bases; plus: p-bases followed by free elements
    #[arg(long, default_value = "plain", value_parser = parse_mode)]
    mode: Mode,
    /// Free elements after the p-basis in plus mode
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    depth: u32,
    /// Add extensibility and symmetricisability to plain records
    #[arg(long)]
    classify: bool,
    /// Write records here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Save the search frontier here; forces a single-threaded walk
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Nodes between checkpoint writes
    #[arg(long, default_value_t = 1_000_000)]
    checkpoint_every: u64,
    /// Continue from the checkpoint file
    #[arg(long, requires = "checkpoint")]
    resume: bool,
}

/// Running totals; saved as the checkpoint's partial statistics.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
struct Tally {
    mode: Option<Mode>,
    depth: u32,
    classify: bool,
    records: u64,
    n_e: u64,
    n_s: u64,
    best_comparison_tail: Option<i64>,
    /// Bytes of record output written so far.
    out_bytes: u64,
}

impl Tally {
    fn new(args: &EnumerateArgs) -> Self {
        Tally {
            mode: Some(args.mode),
            depth: if args.mode == Mode::Plus {
                args.depth
            } else {
                0
            },
            classify: args.classify,
            ..Default::default()
        }
    }

    fn merge(&mut self, other: &Tally) {
        self.records += other.records;
        self.n_e += other.n_e;
        self.n_s += other.n_s;
        self.out_bytes += other.out_bytes;
        self.best_comparison_tail = match (self.best_comparison_tail, other.best_comparison_tail) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
    }

    fn summary(&self, p: u32, visited: u64) -> serde_json::Value {
        match self.mode {
            Some(Mode::Plus) => json!({
                "p": p,
                "mode": "plus",
                "depth": self.depth,
                "records": self.records,
                "n_e": self.n_e,
                "n_s": self.n_s,
                "best_comparison_tail": self.best_comparison_tail,
                "visited": visited,
            }),
            _ if self.classify => json!({
                "p": p, "mode": "plain", "n_p": self.records, "n_e": self.n_e, "n_s": self.n_s, "visited": visited,
            }),
            _ => json!({ "p": p, "mode": "plain", "n_p": self.records, "visited": visited }),
        }
    }
}

/// Emit the records below one walker leaf. Returns extra nodes searched.
fn emit_leaf<W: Write>(
    xs: &[u32],
    n: u32,
    p: u32,
    tally: &mut Tally,
    out: &mut W,
) -> Result<u64, Error> {
    let mut line = Vec::with_capacity(128);
    let mut nodes = 0;
    match tally.mode {
        Some(Mode::Plus) => {
            nodes = for_each_free_extension(xs, p, tally.depth, &mut |rec| {
                tally.records += 1;
                tally.n_e += u64::from(rec.extensible);
                tally.n_s += u64::from(rec.symmetricisable);
                if rec.symmetricisable {
                    tally.best_comparison_tail = Some(
                        tally
                            .best_comparison_tail
                            .map_or(rec.comparison_tail, |b| b.max(rec.comparison_tail)),
                    );
                }
                serde_json::to_writer(&mut line, &rec)?;
                line.push(b'\n');
                Ok(())
            })?;
        }
        _ => {
            tally.records += 1;
            if tally.classify {
                let rec = PBasisRecord::classify(xs, n, p);
                tally.n_e += u64::from(rec.extensible);
                tally.n_s += u64::from(rec.symmetricisable);
                serde_json::to_writer(&mut line, &rec)?;
            } else {
                let tail = xs[xs.len() - 1];
                serde_json::to_writer(&mut line, &json!({ "p": p, "basis": xs, "tail": tail }))?;
            }
            line.push(b'\n');
        }
    }
    out.write_all(&line)?;
    tally.out_bytes += line.len() as u64;
    Ok(nodes)
}

pub fn run(args: &EnumerateArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    if args.mode == Mode::Plus && args.p < 5 {
        return Err(CliError::Usage("plus mode needs p >= 5".into()));
    }
    if args.mode == Mode::Plain && args.depth != 1 {
        return Err(CliError::Usage("--depth only applies to plus mode".into()));
    }
    let summary = match &args.checkpoint {
        Some(path) => sequential(args, cfg, path)?,
        None => parallel(args, cfg)?,
    };
    println!("{summary}");
    Ok(Outcome::Ok)
}

fn parallel(args: &EnumerateArgs, cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let p = args.p;
    let parts = par_subtrees(p, &cfg.search(), |walker| {
        let mut tally = Tally::new(args);
        let mut buf = Vec::new();
        while let Some((xs, n)) = walker.next_basis()? {
            let xs = xs.to_vec();
            let extra = emit_leaf(&xs, n, p, &mut tally, &mut buf)?;
            walker.charge(extra)?;
        }
        Ok((tally, buf, walker.visited()))
    })?;
    let mut out = crate::output(args.out.as_ref())?;
    let mut tally = Tally::new(args);
    let mut visited = 0;
    for (part, buf, v) in &parts {
        out.write_all(buf)?;
        tally.merge(part);
        visited += v;
    }
    out.flush()?;
    Ok(tally.summary(p, visited))
}

fn sequential(
    args: &EnumerateArgs,
    cfg: &RunConfig,
    checkpoint: &Path,
) -> Result<serde_json::Value, CliError> {
    let p = args.p;
    let (mut walker, mut tally) = if args.resume {
        let cp: Checkpoint<Tally> = Checkpoint::load(checkpoint)?;
        if cp.p != p {
            return Err(CliError::Usage(format!(
                "checkpoint is for p = {}, not p = {p}",
                cp.p
            )));
        }
        let expected = Tally::new(args);
        let stats = &cp.partial_stats;
        if (stats.mode, stats.depth, stats.classify)
            != (expected.mode, expected.depth, expected.classify)
        {
            return Err(CliError::Usage(
                "checkpoint was written with a different mode, depth or --classify".into(),
            ));
        }
        (cp.walker(p)?, cp.partial_stats)
    } else {
        (PBasisWalker::new(p)?, Tally::new(args))
    };

    let mut out: Box<dyn Write> = match &args.out {
        Some(path) if args.resume => {
            let mut f = OpenOptions::new()
                .write(true)
                .create(true)
                .truncate(false)
                .open(path)?;
            f.set_len(tally.out_bytes)?;
            f.seek(SeekFrom::End(0))?;
            Box::new(BufWriter::new(f))
        }
        Some(path) => crate::output(Some(path))?,
        None => Box::new(BufWriter::new(io::stdout())),
    };

    let start = walker.visited();
    walker.set_node_limit(start.saturating_add(cfg.node_budget));
    let mut last_save = start;
    let result = (|| -> Result<(), Error> {
        while let Some((xs, n)) = walker.next_basis()? {
            let xs = xs.to_vec();
            let extra = emit_leaf(&xs, n, p, &mut tally, &mut out)?;
            walker.charge(extra)?;
            if walker.visited() - last_save >= args.checkpoint_every {
                out.flush()?;
                Checkpoint::capture(&walker, tally.clone()).save(checkpoint)?;
                last_save = walker.visited();
            }
        }
        Ok(())
    })();
    out.flush()?;
    Checkpoint::capture(&walker, tally.clone()).save(checkpoint)?;
    match result {
        Ok(()) => Ok(tally.summary(p, walker.visited())),
        Err(Error::BudgetExceeded { visited, .. }) => Err(CliError::Budget(format!(
            "node budget of {} used up ({} nodes this run); progress saved to {}, continue with --resume",
            cfg.node_budget,
            visited - start,
            checkpoint.display()
        ))),
        Err(e) => Err(e.into()),
    }
}
