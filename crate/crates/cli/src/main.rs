//! `stringc`: build, certify and verify rank-3 string C-groups.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use stringc_core::coset::{CosetError, EnumerationLimits};
use stringc_core::families::{
    build_degenerate, build_type1, build_type2, build_type44, build_u, Family, Type1Params,
    Type2Params,
};
use stringc_core::sggi::{certify, Certificate, SggiError};
use stringc_core::text::{format_presentation, parse_presentation};
use stringc_core::verify::{
    csv_summary, divisibility_class, odd_prime_part, run_suite, Grid, Outcome, Suite,
};
use stringc_core::Presentation;

const EXIT_NEGATIVE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_LIMITS: u8 = 3;
const EXIT_CLAIM: u8 = 4;

#[derive(Parser)]
#[command(name = "stringc", version, about = "String C-groups of order 2^n p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prints the presentation of a family member.
    Build(BuildArgs),
    /// Certifies a presentation read from a file or stdin.
    Certify(CertifyArgs),
    /// Runs a verification suite over its parameter grid.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyTag {
    L1,
    L2,
    M1,
    M2,
    #[value(name = "type1")]
    Type1,
    U,
    G,
    H,
    I,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(value_enum, ignore_case = true)]
    family: FamilyTag,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    t: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    l1: Option<u32>,
    #[arg(long)]
    l2: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
}

#[derive(Args)]
struct LimitArgs {
    /// Coset cap; defaults to $STRINGC_MAX_COSETS or 2^20.
    #[arg(long)]
    max_cosets: Option<usize>,
    #[arg(long)]
    max_steps: Option<u64>,
}

impl LimitArgs {
    fn limits(&self) -> Result<EnumerationLimits, String> {
        let cosets = match self.max_cosets {
            Some(c) => c,
            None => match std::env::var("STRINGC_MAX_COSETS") {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad STRINGC_MAX_COSETS `{v}`"))?,
                Err(_) => EnumerationLimits::DEFAULT_MAX_COSETS,
            },
        };
        let steps = self
            .max_steps
            .unwrap_or(EnumerationLimits::DEFAULT_MAX_STEPS);
        EnumerationLimits::new(cosets, steps).map_err(|e| e.to_string())
    }
}

#[derive(Args)]
struct CertifyArgs {
    /// Presentation file; stdin when absent or `-`.
    file: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    /// Prints the certificate as JSON.
    #[arg(long)]
    json: bool,
    /// Reports without judging: exit 0 whenever a certificate is produced.
    #[arg(long)]
    explore: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_parser = parse_suite)]
    suite: Suite,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Writes one JSON record per point.
    #[arg(long)]
    jsonl: Option<PathBuf>,
    #[command(flatten)]
    limits: LimitArgs,
    /// Replaces the k grid.
    #[arg(long, value_delimiter = ',')]
    k: Vec<i64>,
    /// Replaces the b grid.
    #[arg(long, value_delimiter = ',')]
    b: Vec<i64>,
    /// Replaces the m grid (all three families).
    #[arg(long, value_delimiter = ',')]
    m: Vec<u32>,
    /// Replaces the n grid of the order 3*2^n search.
    #[arg(long, value_delimiter = ',')]
    n: Vec<u32>,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
        .map_err(|e: stringc_core::verify::VerifyError| e.to_string())
}

/// Field order is part of the output contract.
#[derive(Serialize)]
struct CertificateJson<'a> {
    order: u64,
    schlafli: &'a [u64],
    is_sggi: bool,
    string_ok: bool,
    intersection_ok: bool,
    degenerate: bool,
    solvable: bool,
    derived_length: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    params: Option<Value>,
    elapsed_ms: u64,
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("stringc: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("missing --{flag}"))
}

fn build(a: &BuildArgs) -> Result<(Presentation, Value), String> {
    let err = |e: stringc_core::families::FamilyError| e.to_string();
    Ok(match a.family {
        FamilyTag::L1 | FamilyTag::L2 => {
            let k = need(a.k, "k")?;
            let v = if matches!(a.family, FamilyTag::L1) {
                1
            } else {
                2
            };
            (
                build_degenerate(k, v).map_err(err)?,
                json!({ "family": format!("L{v}"), "k": k }),
            )
        }
        FamilyTag::M1 | FamilyTag::M2 => {
            let b = need(a.b, "b")?;
            let v = if matches!(a.family, FamilyTag::M1) {
                1
            } else {
                2
            };
            (
                build_type44(b, v).map_err(err)?,
                json!({ "family": format!("M{v}"), "b": b }),
            )
        }
        FamilyTag::Type1 => {
            let p = Type1Params::new(
                need(a.s, "s")?,
                need(a.t, "t")?,
                need(a.n, "n")?,
                need(a.l1, "l1")?,
                need(a.l2, "l2")?,
            )
            .map_err(err)?;
            let params =
                json!({ "family": "type1", "s": p.s, "t": p.t, "n": p.n, "l1": p.l1, "l2": p.l2 });
            (build_type1(&p).map_err(err)?, params)
        }
        FamilyTag::U => (build_u(), json!({ "family": "U" })),
        FamilyTag::G | FamilyTag::H | FamilyTag::I => {
            let f = match a.family {
                FamilyTag::G => Family::G,
                FamilyTag::H => Family::H,
                _ => Family::I,
            };
            let p = Type2Params::new(f, a.m.unwrap_or(1)).map_err(err)?;
            (
                build_type2(&p).map_err(err)?,
                json!({ "family": f.to_string(), "m": p.m }),
            )
        }
    })
}

fn cmd_build(a: &BuildArgs) -> ExitCode {
    match build(a) {
        Ok((p, params)) => {
            print!("# params: {params}\n{}", format_presentation(&p));
            ExitCode::SUCCESS
        }
        Err(e) => usage(e),
    }
}

/// Picks up a `# params: {...}` line left by `build`.
fn embedded_params(text: &str) -> Option<Value> {
    text.lines()
        .find_map(|l| l.trim().strip_prefix("# params:"))
        .and_then(|s| serde_json::from_str(s.trim()).ok())
}

fn print_human(c: &Certificate, elapsed_ms: u64) {
    let k: Vec<String> = c.schlafli.entries.iter().map(u64::to_string).collect();
    println!("order           {}", c.order);
    println!("schlafli        {{{}}}", k.join(","));
    println!("sggi            {}", c.is_sggi);
    println!("string          {}", c.string_ok);
    println!("intersection    {}", c.intersection_ok);
    println!("degenerate      {}", c.degenerate);
    println!("solvable        {}", c.solvable);
    println!("derived length  {}", c.derived_length);
    println!("elapsed         {elapsed_ms} ms");
}

fn cmd_certify(a: &CertifyArgs) -> ExitCode {
    let limits = match a.limits.limits() {
        Ok(l) => l,
        Err(e) => return usage(e),
    };
    let mut text = String::new();
    let read = match &a.file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path).map(|s| text = s),
        _ => io::stdin().read_to_string(&mut text).map(|_| ()),
    };
    if let Err(e) = read {
        return usage(e);
    }
    let p = match parse_presentation(&text) {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let started = Instant::now();
    let distinguished: Vec<usize> = (0..p.n_gens()).collect();
    let cert = match certify(&p, &distinguished, limits) {
        Ok(c) => c,
        Err(SggiError::Coset(e @ CosetError::LimitExceeded { .. })) => {
            eprintln!("stringc: {e}");
            return ExitCode::from(EXIT_LIMITS);
        }
        Err(e) => {
            eprintln!("stringc: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    if a.json {
        let out = CertificateJson {
            order: cert.order,
            schlafli: &cert.schlafli.entries,
            is_sggi: cert.is_sggi,
            string_ok: cert.string_ok,
            intersection_ok: cert.intersection_ok,
            degenerate: cert.degenerate,
            solvable: cert.solvable,
            derived_length: cert.derived_length,
            params: embedded_params(&text),
            elapsed_ms,
        };
        println!(
            "{}",
            serde_json::to_string(&out).expect("certificate serializes")
        );
    } else {
        print_human(&cert, elapsed_ms);
    }
    if a.explore {
        if let Some(p) = odd_prime_part(cert.order) {
            let class = divisibility_class(&cert, p);
            eprintln!("order 2^n*{p}; entries divisible by {p}: {class}");
        }
        return ExitCode::SUCCESS;
    }
    if cert.is_string_c_group() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_NEGATIVE)
    }
}

fn cmd_verify(a: &VerifyArgs) -> ExitCode {
    let limits = match a.limits.limits() {
        Ok(l) => l,
        Err(e) => return usage(e),
    };
    let mut grid = Grid::default();
    if !a.k.is_empty() {
        grid.ks = a.k.clone();
    }
    if !a.b.is_empty() {
        grid.bs = a.b.clone();
    }
    if !a.m.is_empty() {
        let mut pts = Vec::new();
        for &m in &a.m {
            for f in Family::ALL {
                match Type2Params::new(f, m) {
                    Ok(p) => pts.push(p),
                    Err(e) => return usage(e),
                }
            }
        }
        grid.type2 = pts;
    }
    if !a.n.is_empty() {
        grid.cor52 = a.n.clone();
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = a.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return usage(e),
    };
    let reports = match pool.install(|| run_suite(a.suite, &grid, limits)) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    if let Some(path) = &a.jsonl {
        let mut body = String::new();
        for r in &reports {
            body.push_str(&r.to_json_line());
            body.push('\n');
        }
        if let Err(e) = fs::write(path, body) {
            return usage(format!("{}: {e}", path.display()));
        }
    }
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let _ = out.write_all(csv_summary(&reports).as_bytes());
    let _ = out.flush();
    if reports.iter().any(|r| r.outcome == Outcome::Limit) {
        ExitCode::from(EXIT_LIMITS)
    } else if reports.iter().any(|r| !r.pass) {
        ExitCode::from(EXIT_CLAIM)
    } else {
        ExitCode::SUCCESS
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Build(a) => cmd_build(a),
        Command::Certify(a) => cmd_certify(a),
        Command::Verify(a) => cmd_verify(a),
    }
}
