use std::fmt::Write as _;

use anyhow::{bail, Context, Result};
use hornlab::flag::{
    min_dimension, random_wheel_configuration, verify_pn, verify_wheel, wheel_construction, witness_pn, FlagTriple,
    PnReport, Trace, WitnessDump,
};
use hornlab::horn::{HornTriple, IndexSet, TripleCache, TripleRecord, Variant};
use hornlab::lr::lr_of_triple;
use hornlab::reduce::{lr_minimal_irreducible, reduce_to_irreducible};
use hornlab::spectra::{sweep, SweepConfig};
use hornlab::Execution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{Cli, Command, Format, TripleArgs};
use crate::cache::{default_cache_dir, DiskCache};
use crate::config::Config;

pub const DEFAULT_SAMPLES: usize = 1000;

/// Rendered output and whether every requested verification passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

impl Outcome {
    fn passed(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = cli.format.or(config.format).unwrap_or(Format::Table);
    let cache_dir = cli.cache_dir.clone().or(config.cache_dir.clone()).or_else(default_cache_dir);
    let cache = match cache_dir {
        Some(dir) if !cli.no_cache => TripleCache::with_store(Box::new(DiskCache::new(dir))),
        _ => TripleCache::new(),
    };

    match cli.command {
        Command::Enum { n, r, variant } => cmd_enum(n, r, variant.into(), format, &cache).map(Outcome::passed),
        Command::Table { n_min, n_max, r } => cmd_table(n_min, n_max, r, format, &cache).map(Outcome::passed),
        Command::Lr(t) => cmd_lr(&t.triple()?, format).map(Outcome::passed),
        Command::Reduce(t) => cmd_reduce(&t.triple()?, format, &cache).map(Outcome::passed),
        Command::VerifyHorn {
            n,
            samples,
            seed,
            tol,
            trace_tol,
            variant,
            per_triple,
        } => {
            let mut sweep_config = SweepConfig::new(
                n,
                samples.or(config.samples).unwrap_or(DEFAULT_SAMPLES),
                seed.or(config.seed).unwrap_or(0),
            );
            sweep_config.variant = variant.into();
            if let Some(tol) = tol.or(config.tol) {
                sweep_config.tol = tol;
            }
            if let Some(tol) = trace_tol.or(config.trace_tol) {
                sweep_config.trace_tol = tol;
            }
            cmd_verify_horn(&sweep_config, per_triple, format, &cache)
        }
        Command::FlagWitness {
            triple,
            dim,
            seed,
            eps,
            dump,
        } => {
            let t = triple.triple()?;
            let eps = parse_trace(eps.or(config.eps).as_deref().unwrap_or("0"))?;
            let outcome = cmd_flag_witness(&t, dim, seed.or(config.seed).unwrap_or(0), eps, format)?;
            if let Some(path) = dump {
                std::fs::write(&path, &outcome.1).with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(outcome.0)
        }
        Command::Wheel { dim, seed, eps, count } => {
            let eps = match eps.or(config.eps) {
                Some(s) => parse_trace(&s)?,
                None => Trace::new(1, dim.max(1) as i64),
            };
            cmd_wheel(dim, seed.or(config.seed).unwrap_or(0), eps, count, format)
        }
    }
}

impl TripleArgs {
    pub fn triple(&self) -> Result<HornTriple> {
        let j = self.j.as_ref().unwrap_or(&self.i);
        let k = self.k.as_ref().unwrap_or(&self.i);
        Ok(HornTriple::from_lists(self.n, &self.i, j, k)?)
    }
}

/// A fraction such as `1/12`, `0` or `2/24`.
pub fn parse_trace(s: &str) -> Result<Trace> {
    let t: Trace = s.trim().parse().map_err(|e| anyhow::anyhow!("bad fraction `{s}`: {e:?}"))?;
    if t < Trace::from_integer(0) {
        bail!("fraction `{s}` is negative");
    }
    Ok(t)
}

/// Digits run together when every element is a single digit, as in `1346`.
pub fn compact(s: &IndexSet) -> String {
    if s.n() <= 9 {
        s.elements().iter().map(|x| x.to_string()).collect()
    } else {
        s.to_string()
    }
}

pub fn compact_triple(t: &HornTriple) -> String {
    format!("({}, {}, {})", compact(&t.i), compact(&t.j), compact(&t.k))
}

fn space_list(s: &IndexSet) -> String {
    s.elements().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn json_lines<T: Serialize>(items: impl IntoIterator<Item = T>) -> Result<String> {
    let mut out = String::new();
    for item in items {
        writeln!(out, "{}", serde_json::to_string(&item)?)?;
    }
    Ok(out)
}

fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn cmd_enum(n: usize, r: usize, variant: Variant, format: Format, cache: &TripleCache) -> Result<String> {
    let set = cache.get(n, r, variant)?;
    match format {
        Format::Json => json_lines(set.triples().iter().map(|t| t.to_record(variant))),
        Format::Csv => csv_string(
            &["n", "r", "variant", "I", "J", "K"],
            set.triples().iter().map(|t| {
                vec![
                    n.to_string(),
                    r.to_string(),
                    variant.to_string(),
                    space_list(&t.i),
                    space_list(&t.j),
                    space_list(&t.k),
                ]
            }),
        ),
        Format::Table => {
            let rows: Vec<[String; 3]> = set
                .triples()
                .iter()
                .map(|t| [t.i.to_string(), t.j.to_string(), t.k.to_string()])
                .collect();
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1).max(1);
            let mut out = String::new();
            writeln!(out, "{:<width$}  {:<width$}  {:<width$}", "I", "J", "K")?;
            for [i, j, k] in &rows {
                writeln!(out, "{i:<width$}  {j:<width$}  {k:<width$}")?;
            }
            writeln!(out, "{} triples in {variant} T(n={n}, r={r})", rows.len())?;
            Ok(out)
        }
    }
}

/// `(n, representatives)` for each `n` in the range.
pub fn table_rows(n_min: usize, n_max: usize, r: usize, cache: &TripleCache) -> Result<Vec<(usize, Vec<HornTriple>)>> {
    if n_min > n_max {
        bail!("empty range {n_min}..={n_max}");
    }
    (n_min.max(r)..=n_max)
        .map(|n| Ok((n, lr_minimal_irreducible(n, r, cache)?)))
        .collect()
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    r: usize,
    triples: Vec<TripleRecord>,
}

pub fn cmd_table(n_min: usize, n_max: usize, r: usize, format: Format, cache: &TripleCache) -> Result<String> {
    let rows = table_rows(n_min, n_max, r, cache)?;
    match format {
        Format::Json => json_lines(rows.iter().map(|(n, ts)| TableRow {
            n: *n,
            r,
            triples: ts.iter().map(|t| t.to_record(Variant::Tilde)).collect(),
        })),
        Format::Csv => csv_string(
            &["n", "r", "I", "J", "K"],
            rows.iter().flat_map(|(n, ts)| {
                let empty = ts.is_empty().then(|| vec![n.to_string(), r.to_string(), String::new(), String::new(), String::new()]);
                ts.iter()
                    .map(move |t| vec![n.to_string(), r.to_string(), space_list(&t.i), space_list(&t.j), space_list(&t.k)])
                    .chain(empty)
                    .collect::<Vec<_>>()
            }),
        ),
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "n   LR-minimal irreducible triples, r = {r}")?;
            for (n, ts) in &rows {
                let body = if ts.is_empty() {
                    "∅".to_string()
                } else {
                    ts.iter().map(compact_triple).collect::<Vec<_>>().join("  ")
                };
                writeln!(out, "{n:<3} {body}")?;
            }
            Ok(out)
        }
    }
}

pub fn cmd_lr(t: &HornTriple, format: Format) -> Result<String> {
    let c = lr_of_triple(t)?;
    let pt = t.phi();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct LrOut {
                triple: TripleRecord,
                lambda: Vec<usize>,
                mu: Vec<usize>,
                nu: Vec<usize>,
                lr: u64,
            }
            Ok(serde_json::to_string(&LrOut {
                triple: t.to_record(Variant::Tilde),
                lambda: pt.lambda.parts().to_vec(),
                mu: pt.mu.parts().to_vec(),
                nu: pt.nu.parts().to_vec(),
                lr: c,
            })? + "\n")
        }
        Format::Csv => csv_string(
            &["n", "I", "J", "K", "lr"],
            [vec![t.n().to_string(), space_list(&t.i), space_list(&t.j), space_list(&t.k), c.to_string()]],
        ),
        Format::Table => Ok(format!("{c}\n")),
    }
}

pub fn cmd_reduce(t: &HornTriple, format: Format, cache: &TripleCache) -> Result<String> {
    let chain = reduce_to_irreducible(t, cache)?;
    match format {
        Format::Json => Ok(serde_json::to_string(&chain.to_records())? + "\n"),
        Format::Csv => csv_string(
            &["step", "u", "v", "w", "n", "I", "J", "K"],
            chain.steps.iter().enumerate().map(|(idx, (wit, s))| {
                vec![
                    (idx + 1).to_string(),
                    wit.u.to_string(),
                    wit.v.to_string(),
                    wit.w.to_string(),
                    s.n().to_string(),
                    space_list(&s.i),
                    space_list(&s.j),
                    space_list(&s.k),
                ]
            }),
        ),
        Format::Table => {
            let mut out = String::new();
            writeln!(out, "start      n={}  {}", t.n(), t)?;
            for (wit, s) in &chain.steps {
                writeln!(out, "{:<10} n={}  {}", wit.to_string(), s.n(), s)?;
            }
            writeln!(out, "irreducible after {} steps: {}", chain.len(), chain.end())?;
            Ok(out)
        }
    }
}

pub fn cmd_verify_horn(config: &SweepConfig, per_triple: bool, format: Format, cache: &TripleCache) -> Result<Outcome> {
    let report = sweep(config, cache, Execution::default())?;
    let ok = report.passed();
    let output = match format {
        Format::Json => serde_json::to_string(&report)? + "\n",
        Format::Csv => csv_string(
            &["n", "r", "I", "J", "K", "min_slack", "argmin_seed"],
            report.triples.iter().map(|t| {
                vec![
                    t.n.to_string(),
                    t.r.to_string(),
                    join_usize(&t.triple.i),
                    join_usize(&t.triple.j),
                    join_usize(&t.triple.k),
                    format!("{:e}", t.min_slack),
                    t.argmin_seed.to_string(),
                ]
            }),
        )?,
        Format::Table => {
            let mut out = String::new();
            if per_triple {
                for t in &report.triples {
                    writeln!(
                        out,
                        "r={} ({:?},{:?},{:?})  min slack {:+.3e}  seed {}",
                        t.r, t.triple.i, t.triple.j, t.triple.k, t.min_slack, t.argmin_seed
                    )?;
                }
            }
            writeln!(
                out,
                "n={} samples={} inequalities={} variant={}",
                config.n,
                config.samples,
                report.triples.len(),
                config.variant
            )?;
            writeln!(out, "min normalized slack  {:+.3e}", report.global_min_slack)?;
            writeln!(out, "max trace defect      {:.3e}", report.max_trace_defect)?;
            writeln!(
                out,
                "slack failures {}  trace failures {}  {}",
                report.slack_failures,
                report.trace_failures,
                if ok { "PASS" } else { "FAIL" }
            )?;
            out
        }
    };
    Ok(Outcome { output, ok })
}

fn join_usize(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn ledger_table(report: &PnReport) -> Result<String> {
    let mut out = String::new();
    for c in &report.checks {
        writeln!(
            out,
            "{:<24} {:>8} {} {:<8} {}",
            c.label,
            c.value.to_string(),
            if c.upper { "<=" } else { ">=" },
            c.bound.to_string(),
            if c.holds() { "ok" } else { "FAIL" }
        )?;
    }
    Ok(out)
}

/// Returns the outcome and the JSON dump.
pub fn cmd_flag_witness(
    t: &HornTriple,
    dim: Option<usize>,
    seed: u64,
    eps: Trace,
    format: Format,
) -> Result<(Outcome, String)> {
    let dim = dim.unwrap_or_else(|| min_dimension(t));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let flags = FlagTriple::random(dim, &mut rng);
    let p = witness_pn(t, &flags).with_context(|| format!("building a witness for {t} in dimension {dim}"))?;
    let report = verify_pn(&p, t, &flags, eps)?;
    let ok = report.holds();
    let dump = serde_json::to_string_pretty(&WitnessDump::new(&p, t, &flags, &report)?)? + "\n";
    let verdict = format!(
        "P_{} {} ({})",
        t.n(),
        if ok { "verified" } else { "FAILED" },
        if eps == Trace::from_integer(0) { "exact".to_string() } else { format!("eps = {eps}") }
    );
    let output = match format {
        Format::Json => dump.clone(),
        Format::Csv => csv_string(
            &["label", "value", "relation", "bound", "holds"],
            report.checks.iter().map(|c| {
                vec![
                    c.label.clone(),
                    c.value.to_string(),
                    if c.upper { "<=" } else { ">=" }.to_string(),
                    c.bound.to_string(),
                    c.holds().to_string(),
                ]
            }),
        )?,
        Format::Table => format!("{t} in dimension {dim}, seed {seed}\n{}{verdict}\n", ledger_table(&report)?),
    };
    Ok((Outcome { output, ok }, dump))
}

pub fn cmd_wheel(dim: usize, seed: u64, eps: Trace, count: usize, format: Format) -> Result<Outcome> {
    if dim == 0 || !dim.is_multiple_of(6) {
        bail!("dimension {dim} is not a positive multiple of 6");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ok = true;
    let mut reports = Vec::with_capacity(count);
    for _ in 0..count {
        let (e, f) = random_wheel_configuration(dim, &mut rng);
        let e = [&e[0], &e[1], &e[2]];
        let f = [&f[0], &f[1], &f[2]];
        let out = wheel_construction(e, f, eps)?;
        let report = verify_wheel(&out.p, e, f, eps)?;
        ok &= report.holds();
        reports.push(report);
    }
    let output = match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Entry {
                label: String,
                value: String,
                bound: String,
                holds: bool,
            }
            json_lines(reports.iter().map(|r| {
                r.checks
                    .iter()
                    .map(|c| Entry {
                        label: c.label.clone(),
                        value: c.value.to_string(),
                        bound: c.bound.to_string(),
                        holds: c.holds(),
                    })
                    .collect::<Vec<_>>()
            }))?
        }
        Format::Csv => csv_string(
            &["configuration", "label", "value", "relation", "bound", "holds"],
            reports.iter().enumerate().flat_map(|(idx, r)| {
                r.checks
                    .iter()
                    .map(|c| {
                        vec![
                            idx.to_string(),
                            c.label.clone(),
                            c.value.to_string(),
                            if c.upper { "<=" } else { ">=" }.to_string(),
                            c.bound.to_string(),
                            c.holds().to_string(),
                        ]
                    })
                    .collect::<Vec<_>>()
            }),
        )?,
        Format::Table => {
            let mut out = String::new();
            for (idx, r) in reports.iter().enumerate() {
                writeln!(out, "configuration {idx} (dimension {dim}, eps = {eps})")?;
                out.push_str(&ledger_table(r)?);
            }
            writeln!(out, "wheel {}", if ok { "verified (exact)" } else { "FAILED" })?;
            out
        }
    };
    Ok(Outcome { output, ok })
}
