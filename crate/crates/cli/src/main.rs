mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use dancount::counting::{polygonal_row, verify_polygonal_family};
use dancount::field::FiniteField;
use dancount::poly::SurfaceSpec;
use rayon::prelude::*;

use config::Settings;
use report::{Failure, SweepRow};

/// Point counts of Danielewski surfaces over finite fields.
#[derive(Debug, Parser)]
#[command(name = "dancount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count one surface and print a JSON report.
    Count(InputArgs),
    /// Count one surface over several fields and print a CSV table.
    Sweep(InputArgs),
    /// Check a polygonal row against `S_m(q)` and print a CSV table.
    Polygonal(InputArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// TOML file with the same keys as the flags.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Field order.
    #[arg(long)]
    q: Option<u64>,
    /// Extension degree, checked against `--q`.
    #[arg(long)]
    r: Option<u32>,
    /// Count `X^d Y = P(X,Z)` instead of a double surface.
    #[arg(long)]
    single: bool,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    d1: Option<u32>,
    #[arg(long)]
    d2: Option<u32>,
    #[arg(long = "P", value_name = "POLY")]
    p: Option<String>,
    #[arg(long = "Q", value_name = "POLY")]
    q_poly: Option<String>,
    /// Comma-separated method names, or `all`.
    #[arg(long)]
    methods: Option<String>,
    /// Field orders: `2,3,4` or a range `2..13` of prime powers.
    #[arg(long)]
    qs: Option<String>,
    /// Polygonal row 1..=4.
    #[arg(long)]
    row: Option<u8>,
}

impl InputArgs {
    fn settings(self) -> Result<Settings> {
        let file = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::default(),
        };
        let qs = self.qs.as_deref().map(parse_qs).transpose()?;
        let flags = Settings {
            q: self.q,
            r: self.r,
            single: self.single.then_some(true),
            d: self.d,
            d1: self.d1,
            d2: self.d2,
            p: self.p,
            q_poly: self.q_poly,
            methods: self.methods,
            qs,
            row: self.row,
            caps: None,
        };
        Ok(file.merge(flags))
    }
}

fn parse_qs(text: &str) -> Result<Vec<u64>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u64 = lo
            .trim()
            .parse()
            .with_context(|| format!("bad range `{text}`"))?;
        let hi: u64 = hi
            .trim()
            .parse()
            .with_context(|| format!("bad range `{text}`"))?;
        return Ok((lo.max(2)..=hi).filter(|&q| is_prime_power(q)).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .with_context(|| format!("bad field order `{s}`"))
        })
        .collect()
}

fn is_prime_power(q: u64) -> bool {
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return true;
    }
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

fn make_field(q: u64, r: Option<u32>) -> Result<FiniteField, Failure> {
    let cap = config::max_q().map_err(Failure::Usage)?;
    let field = FiniteField::from_order(q, cap).map_err(|e| Failure::Usage(e.into()))?;
    if let Some(r) = r {
        if field.r() != r {
            return Err(Failure::Usage(anyhow::anyhow!(
                "--r {r} does not match q = {q} = {}^{}",
                field.p(),
                field.r()
            )));
        }
    }
    Ok(field)
}

fn build_spec(field: &FiniteField, s: &Settings) -> Result<SurfaceSpec, Failure> {
    if let Some(row) = s.row {
        return polygonal_row(field, row).map_err(Failure::from);
    }
    let p =
        s.p.as_deref()
            .ok_or_else(|| Failure::Usage(anyhow::anyhow!("missing --P")))?;
    let spec = if s.single.unwrap_or(false) {
        SurfaceSpec::parse_single(field, s.d.or(s.d1).unwrap_or(1), p)
    } else {
        let q = s
            .q_poly
            .as_deref()
            .ok_or_else(|| Failure::Usage(anyhow::anyhow!("missing --Q")))?;
        SurfaceSpec::parse_double(field, s.d1.or(s.d).unwrap_or(1), s.d2.unwrap_or(1), p, q)
    };
    spec.map_err(|e| Failure::Usage(e.into()))
}

fn cmd_count(s: Settings) -> Result<ExitCode, Failure> {
    let q =
        s.q.ok_or_else(|| Failure::Usage(anyhow::anyhow!("missing --q")))?;
    let methods = s.methods().map_err(Failure::Usage)?;
    let field = make_field(q, s.r)?;
    let spec = build_spec(&field, &s)?;
    let report = report::count(&field, &spec, &methods, &s.caps())?;
    let json = report::count_json(&field, &spec, &methods, &report);
    let text = serde_json::to_string_pretty(&json).expect("json values serialize");
    println!("{text}");
    Ok(if report.agreement {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_sweep(s: Settings) -> Result<ExitCode, Failure> {
    let methods = s.methods().map_err(Failure::Usage)?;
    let qs = s.qs.clone().unwrap_or_default();
    let caps = s.caps();
    let rows: Vec<SweepRow> = qs
        .par_iter()
        .map(|&q| {
            let outcome = make_field(q, None).and_then(|field| {
                let spec = build_spec(&field, &s)?;
                report::count(&field, &spec, &methods, &caps)
            });
            SweepRow::new(q, outcome)
        })
        .collect();
    report::write_sweep(std::io::stdout().lock(), &methods, &rows)
        .map_err(|e| Failure::Usage(e.into()))?;
    Ok(if rows.iter().any(|r| r.disagrees()) {
        ExitCode::from(2)
    } else if rows.iter().any(|r| r.error.is_some()) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_polygonal(s: Settings) -> Result<ExitCode, Failure> {
    let row = s
        .row
        .ok_or_else(|| Failure::Usage(anyhow::anyhow!("missing --row")))?;
    let qs = s.qs.clone().or(s.q.map(|q| vec![q])).unwrap_or_default();
    let caps = s.caps();
    let checks = qs
        .par_iter()
        .map(|&q| {
            let field = make_field(q, None)?;
            verify_polygonal_family(row, &field, &caps).map_err(Failure::from)
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    let mut out = csv::Writer::from_writer(std::io::stdout().lock());
    let io = |e: csv::Error| Failure::Usage(e.into());
    out.write_record(["row", "q", "total", "expected", "match"])
        .map_err(io)?;
    for c in &checks {
        out.write_record([
            c.row.to_string(),
            c.q.to_string(),
            c.count.to_string(),
            c.expected.to_string(),
            c.matched.to_string(),
        ])
        .map_err(io)?;
    }
    out.flush().map_err(|e| Failure::Usage(e.into()))?;
    Ok(if checks.iter().all(|c| c.matched) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Count(a) => cmd_count(a.settings().map_err(Failure::Usage)?),
        Command::Sweep(a) => cmd_sweep(a.settings().map_err(Failure::Usage)?),
        Command::Polygonal(a) => cmd_polygonal(a.settings().map_err(Failure::Usage)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(std::io::stderr(), "error: {failure:#}");
            failure.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qs_lists_and_ranges() {
        assert_eq!(parse_qs("2, 3,4").unwrap(), vec![2, 3, 4]);
        assert_eq!(
            parse_qs("2..13").unwrap(),
            vec![2, 3, 4, 5, 7, 8, 9, 11, 13]
        );
        assert!(parse_qs("").unwrap().is_empty());
        assert!(parse_qs("3,x").is_err());
    }
}
