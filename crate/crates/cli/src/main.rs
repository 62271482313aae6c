//! `typical`: generate expansions, analyze them, apply the reductions and run
//! the verification experiments.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use typical::analysis::{
    density_series, discrepancy_with_block, freq_tables_at, typicality_series, FreqTable,
};
use typical::bitstream::Finite;
use typical::constructions::{self, Polynomial};
use typical::harness::{self, HarnessConfig};
use typical::hp::format_sig;
use typical::reductions::{
    action_f_prime, action_g_prime, phi, reduction_f, zero_density_g, NatSeqDescriptor,
};
use typical::{BitStream, Exec, Prefix};

use typical_cli::output::Output;
use typical_cli::positions::PositionSpec;
use typical_cli::settings::Settings;

/// Default length of sampled prefixes when none is given.
const DEFAULT_LIMIT: u64 = 1 << 20;
const DEFAULT_M: usize = 3;

#[derive(Parser, Debug)]
#[command(
    name = "typical",
    version,
    about = "Run-length typicality of binary expansions"
)]
struct Cli {
    /// Flat key=value file supplying defaults for any flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the first digits of a constructed number.
    Generate(GenerateArgs),
    /// Run-length, frequency, discrepancy or density series.
    Analyze(AnalyzeArgs),
    /// Apply a reduction map to a sequence descriptor.
    Reduce(ReduceArgs),
    /// Run verification experiments; exit 0 iff no claim fails.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Largest number of digits that may be materialized or streamed (1e8 style accepted).
    #[arg(long)]
    cap: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<String>,
    /// Directory for output files (also TPCN_OUT_DIR).
    #[arg(long)]
    out_dir: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug, Default)]
struct Source {
    /// champernowne | y | z | omega | omega-prime | nakai
    #[arg(long)]
    number: Option<String>,
    /// Repetition exponent for z.
    #[arg(long)]
    a: Option<String>,
    /// Nakai coefficients, highest degree first, e.g. 1/4,3/4.
    #[arg(long)]
    poly: Option<String>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    length: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: Source,
    /// Digit file (ASCII, or packed with --packed-length).
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long)]
    packed_length: Option<String>,
    /// runlength | discrepancy | frequency | density
    #[arg(long)]
    metric: Option<String>,
    /// checkpoints:a..b | list:p1,p2,... | geometric:start,count[,ratio]
    #[arg(long)]
    positions: Option<String>,
    /// Longest block length for frequency tables.
    #[arg(long)]
    m: Option<String>,
    /// Descriptor whose zero-density set is measured by --metric density.
    #[arg(long)]
    seq: Option<String>,
    /// Prefix length used when positions are not given.
    #[arg(long)]
    length: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ReduceArgs {
    /// f | g-prime | f-prime | phi
    #[arg(long)]
    map: Option<String>,
    #[arg(long)]
    seq: Option<String>,
    /// Stream modified by g-prime and f-prime (default omega-prime).
    #[arg(long)]
    base: Option<String>,
    #[arg(long)]
    length: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    experiment: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// 2 for bad input, 3 when a cap is exceeded, 4 for unsupported requests.
fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.chain().find_map(|c| c.downcast_ref::<typical::Error>()) {
        Some(typical::Error::Resource { .. }) => 3,
        Some(typical::Error::Unsupported(_)) => 4,
        _ => 2,
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = Settings::load(cli.config.as_deref())?;
    match cli.command {
        Command::Generate(a) => generate(a, &settings),
        Command::Analyze(a) => analyze(a, &settings),
        Command::Reduce(a) => reduce(a, &settings),
        Command::Verify(a) => verify(a, &settings),
    }
}

fn cap_of(common: &Common, st: &Settings) -> Result<u64> {
    Ok(st
        .pick_u64(common.cap.clone(), "cap")?
        .unwrap_or(harness::DEFAULT_CAP))
}

fn output_of(common: &Common, st: &Settings, default_name: &str) -> Output {
    Output::new(
        st.pick(common.out.clone(), "out"),
        st.pick(common.out_dir.clone(), "out_dir"),
        default_name,
    )
}

fn stream_of(src: &Source, st: &Settings) -> Result<Option<(String, BitStream)>> {
    let Some(name) = st.pick(src.number.clone(), "number") else {
        return Ok(None);
    };
    let a = st.pick_u64(src.a.clone(), "a")?.map(|v| v as u32);
    let poly = st
        .pick(src.poly.clone(), "poly")
        .map(|p| Polynomial::parse(&p))
        .transpose()
        .context("invalid --poly")?;
    let s = constructions::by_name(&name, a, poly.as_ref())?;
    Ok(Some((name, s)))
}

fn generate(args: GenerateArgs, st: &Settings) -> Result<ExitCode> {
    let (name, s) = stream_of(&args.source, st)?.context("--number is required")?;
    let len = st
        .pick_u64(args.length.clone(), "length")?
        .context("--length is required")?;
    let cap = cap_of(&args.common, st)?;
    let prefix = s.take(len, cap)?;
    let format = st
        .pick(args.common.format.clone(), "format")
        .unwrap_or("ascii".into());
    let bytes = match format.as_str() {
        "ascii" => prefix.to_ascii().into_bytes(),
        "packed" => prefix.to_packed(),
        other => bail!("generate supports --format ascii|packed, got {other:?}"),
    };
    output_of(&args.common, st, &format!("{name}.txt")).write(&bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn read_digit_file(path: &PathBuf, packed_length: Option<u64>) -> Result<Prefix> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(match packed_length {
        Some(n) => Prefix::from_packed(&bytes, n as usize)?,
        None => {
            let text = String::from_utf8(bytes).context("digit file is not ASCII")?;
            Prefix::from_ascii(&text)?
        }
    })
}

fn analyze(args: AnalyzeArgs, st: &Settings) -> Result<ExitCode> {
    let cap = cap_of(&args.common, st)?;
    let metric = st
        .pick(args.metric.clone(), "metric")
        .unwrap_or_else(|| "runlength".into());
    let m = st
        .pick_u64(args.m.clone(), "m")?
        .unwrap_or(DEFAULT_M as u64) as usize;
    if !(1..=typical::analysis::freq::MAX_BLOCK_LEN).contains(&m) {
        bail!(
            "--m must be in 1..={}",
            typical::analysis::freq::MAX_BLOCK_LEN
        );
    }
    let file = args
        .file
        .clone()
        .or_else(|| st.get("file").map(PathBuf::from));
    let (label, stream, limit) = match (file, stream_of(&args.source, st)?) {
        (Some(_), Some(_)) => bail!("give either --file or --number, not both"),
        (Some(path), None) => {
            let packed = st.pick_u64(args.packed_length.clone(), "packed_length")?;
            let prefix = read_digit_file(&path, packed)?;
            let n = prefix.len() as u64;
            if n > cap {
                return Err(typical::Error::Resource {
                    what: format!("analysis of {}", path.display()),
                    requested: n.to_string(),
                    cap,
                }
                .into());
            }
            let label = path
                .file_stem()
                .map_or("file".into(), |s| s.to_string_lossy().into_owned());
            (
                label,
                Some(BitStream::new(Finite::new("file", prefix))),
                Some(n),
            )
        }
        (None, Some((name, s))) => (name, Some(s), None),
        (None, None) => ("density".into(), None, None),
    };
    let limit = match limit {
        Some(n) => n,
        None => st
            .pick_u64(args.length.clone(), "length")?
            .unwrap_or(DEFAULT_LIMIT),
    };
    let spec = st
        .pick(args.positions.clone(), "positions")
        .map(|p| PositionSpec::parse(&p))
        .transpose()?;
    let default_format = if metric == "discrepancy" {
        "json"
    } else {
        "csv"
    };
    let format = st
        .pick(args.common.format.clone(), "format")
        .unwrap_or_else(|| default_format.into());
    if format != "csv" && format != "json" {
        bail!("analyze supports --format csv|json, got {format:?}");
    }
    let exec = Exec::default();
    let within = |positions: &[BigUint]| -> Result<Vec<u64>> {
        positions
            .iter()
            .map(|p| {
                let v = p
                    .to_string()
                    .parse::<u64>()
                    .ok()
                    .filter(|&v| v <= limit.max(cap) && v <= cap);
                match v {
                    Some(v) if args.file.is_none() || v <= limit => Ok(v),
                    Some(v) => bail!("position {v} is beyond the {limit} digits in the file"),
                    None => Err(typical::Error::Resource {
                        what: format!("{metric} series"),
                        requested: p.to_string(),
                        cap,
                    }
                    .into()),
                }
            })
            .collect()
    };

    let table: Table = match metric.as_str() {
        "runlength" => {
            let s = stream.context("runlength needs --number or --file")?;
            let positions = spec
                .unwrap_or_else(|| PositionSpec::default_up_to(limit))
                .resolve(Some(&s))?;
            if args.file.is_some() {
                within(&positions)?;
            }
            let rows = typicality_series(&s, &positions, cap, exec)?;
            Table {
                header: vec!["n", "L", "log2n", "ratio"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.position.to_string(),
                            r.l.to_string(),
                            r.log2n.to_sig_string(12),
                            r.ratio.to_sig_string(12),
                        ]
                    })
                    .collect(),
                single: false,
            }
        }
        "discrepancy" => {
            let s = stream.context("discrepancy needs --number or --file")?;
            let single = spec.is_none();
            let positions = match spec {
                Some(p) => within(&p.resolve(Some(&s))?)?,
                None => within(&[BigUint::from(limit)])?,
            };
            let tables = freq_tables_at(&s, &positions, m, exec)?;
            let mut rows = Vec::new();
            for t in &tables {
                let (d, block) = discrepancy_with_block(t)?;
                rows.push(vec![
                    t.position().to_string(),
                    m.to_string(),
                    ratio_text(&d),
                    block.to_string(),
                ]);
            }
            Table {
                header: vec!["n", "m", "discrepancy", "block"],
                rows,
                single,
            }
        }
        "frequency" => {
            let s = stream.context("frequency needs --number or --file")?;
            let n = match spec {
                Some(p) => *within(&p.resolve(Some(&s))?)?
                    .last()
                    .context("no positions")?,
                None => within(&[BigUint::from(limit)])?[0],
            };
            let t = &freq_tables_at(&s, &[n], m, exec)?[0];
            Table {
                header: vec!["block", "count", "frequency"],
                rows: frequency_rows(t, m),
                single: false,
            }
        }
        "density" => {
            let d = st
                .pick(args.seq.clone(), "seq")
                .context("density needs --seq")?;
            let d = NatSeqDescriptor::parse(&d)?;
            let positions = within(
                &spec
                    .unwrap_or_else(|| PositionSpec::default_up_to(limit))
                    .resolve(stream.as_ref())?,
            )?;
            let rows = density_series(&zero_density_g(d), &positions, exec)?;
            Table {
                header: vec!["n", "count", "density"],
                rows: rows
                    .iter()
                    .map(|r| vec![r.n.to_string(), r.count.to_string(), ratio_text(&r.density)])
                    .collect(),
                single: false,
            }
        }
        other => {
            bail!("unknown metric {other:?}; use runlength, discrepancy, frequency or density")
        }
    };
    let ext = if format == "csv" { "csv" } else { "json" };
    let body = if format == "csv" {
        table.csv()
    } else {
        table.json()
    };
    output_of(&args.common, st, &format!("{label}-{metric}.{ext}")).write(body.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn ratio_text(r: &num_rational::BigRational) -> String {
    typical::hp::Real::from_ratio(r).to_sig_string(12)
}

fn frequency_rows(t: &FreqTable, m: usize) -> Vec<Vec<String>> {
    let mut rows = Vec::new();
    let n = t.position() as f64;
    for l in 1..=m {
        for (v, &c) in t.counts_of_len(l).iter().enumerate() {
            let block = typical::Block::from_value(v as u64, l);
            rows.push(vec![
                block.to_string(),
                c.to_string(),
                format_sig(c as f64 / n, 12),
            ]);
        }
    }
    rows
}

struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
    /// Emit a single JSON object rather than an array.
    single: bool,
}

impl Table {
    fn csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    fn json(&self) -> String {
        let objs: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = serde_json::Map::new();
                for (h, v) in self.header.iter().zip(r) {
                    m.insert(h.to_string(), Value::String(v.clone()));
                }
                Value::Object(m)
            })
            .collect();
        let v = if self.single && objs.len() == 1 {
            objs.into_iter().next().unwrap()
        } else {
            Value::Array(objs)
        };
        let mut s = serde_json::to_string_pretty(&v).expect("json");
        s.push('\n');
        s
    }
}

fn reduce(args: ReduceArgs, st: &Settings) -> Result<ExitCode> {
    let map = st
        .pick(args.map.clone(), "map")
        .context("--map is required")?;
    let seq = st
        .pick(args.seq.clone(), "seq")
        .context("--seq is required")?;
    let d = NatSeqDescriptor::parse(&seq).context("invalid --seq descriptor")?;
    let len = st
        .pick_u64(args.length.clone(), "length")?
        .context("--length is required")?;
    let cap = cap_of(&args.common, st)?;
    let base_name = st
        .pick(args.base.clone(), "base")
        .unwrap_or_else(|| "omega-prime".into());
    let base = || constructions::by_name(&base_name, None, None);
    let s = match map.as_str() {
        "f" => reduction_f(d.clone()),
        "g-prime" => action_g_prime(d.clone(), base()?),
        "f-prime" => action_f_prime(d.clone(), base()?),
        "phi" => phi(&d),
        other => bail!("unknown map {other:?}; use f, g-prime, f-prime or phi"),
    };
    let prefix = s.take(len, cap)?;
    let class = d.classify();
    let format = st
        .pick(args.common.format.clone(), "format")
        .unwrap_or("ascii".into());
    let bytes = match format.as_str() {
        "ascii" => prefix.to_ascii().into_bytes(),
        "packed" => prefix.to_packed(),
        "json" => {
            let v = json!({
                "map": map,
                "seq": d.to_string(),
                "length": len,
                "digits": prefix.to_ascii().trim_end(),
                "classification": {"P3": class.in_p3, "C": class.in_c, "D": class.in_d},
            });
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s.into_bytes()
        }
        other => bail!("reduce supports --format ascii|packed|json, got {other:?}"),
    };
    if map == "phi" && format != "json" {
        eprintln!(
            "classification: {{P3:{}, C:{}, D:{}}}",
            class.in_p3, class.in_c, class.in_d
        );
    }
    output_of(&args.common, st, &format!("{map}.txt")).write(&bytes)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs, st: &Settings) -> Result<ExitCode> {
    let experiment = st
        .pick(args.experiment.clone(), "experiment")
        .context("--experiment is required")?;
    if !harness::EXPERIMENTS.contains(&experiment.as_str()) {
        bail!(
            "unknown experiment {experiment:?}; valid names: {}",
            harness::EXPERIMENTS.join(", ")
        );
    }
    let mut cfg = HarnessConfig {
        cap: cap_of(&args.common, st)?,
        ..HarnessConfig::default()
    };
    cfg.freq_cap = cfg.freq_cap.min(cfg.cap);
    if let Some(seed) = st.pick_u64(args.seed.clone(), "seed")? {
        cfg.seed = seed;
    }
    if let Some(a) = st.pick_u64(args.a.clone(), "a")? {
        cfg.z_exponent = a as u32;
    }
    let reports = harness::run_experiment(&experiment, &cfg)?;
    let passed = reports.iter().all(|r| r.passed());
    let format = st
        .pick(args.common.format.clone(), "format")
        .unwrap_or("json".into());
    let body = match format.as_str() {
        "json" => {
            let v = if experiment == "all" {
                json!({"experiment": "all", "passed": passed, "cap": cfg.cap, "seed": cfg.seed, "reports": reports})
            } else {
                serde_json::to_value(&reports[0])?
            };
            let mut s = serde_json::to_string_pretty(&v)?;
            s.push('\n');
            s
        }
        "text" => reports
            .iter()
            .map(|r| r.to_text())
            .collect::<Vec<_>>()
            .join("\n"),
        other => bail!("verify supports --format json|text, got {other:?}"),
    };
    let ext = if format == "json" { "json" } else { "txt" };
    output_of(&args.common, st, &format!("verify-{experiment}.{ext}")).write(body.as_bytes())?;
    for r in &reports {
        for c in r
            .claims
            .iter()
            .filter(|c| c.verdict == harness::Verdict::Fail)
        {
            eprintln!("FAIL {}/{}: {}", r.experiment, c.id, c.evidence);
        }
    }
    Ok(if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
