//! Command-line front end. Exit codes: 0 all verified, 1 any refuted,
//! 2 usage error, 3 domain error, 4 inconclusive (and nothing refuted).

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{
    bo_gap_audit_q, cassini_audit, find_min_bo_threshold, golden_bounds_audit, scan_bo, scan_logconcavity,
    AnalysisError,
};
use crate::criteria::{
    check_prop42, check_ratio_descent, check_thm43, limsup_probe, preset, run_preset, CriterionError,
};
use crate::envelopes::config::{load_config, ConfigFile, EnvelopeSpec};
use crate::envelopes::{
    certify_sequence, EnvelopeError, MahlerParams, PrecisionPolicy, WrightParams,
};
use crate::report::{verdict_csv, ReportEnvelope, ValueRow};
use crate::seq_core::{SeqError, Sequence, SequenceSpec};
use crate::verdict::{Horizon, Status, Verdict};

pub const EXIT_VERIFIED: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "partineq", version, about = "Exact partition sequences, certified envelopes and BO/log-concavity criteria")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for scans (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Upper bound on interval precision, in fractional bits.
    #[arg(long, global = true, default_value_t = 4096)]
    pub precision_cap: u32,
    /// Omit timing information, making output byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
    /// Declarative envelope / criterion config (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print exact sequence values: `compute euler 26`, `compute plane 0..5`.
    Compute {
        /// euler | restricted:1,2,5 | plane | mary:M | fib-even | shift:J:INNER
        seq: String,
        /// An index `n` or an inclusive range `a..b`.
        range: String,
    },
    /// Certify an envelope against exact values.
    Certify {
        /// lehmer | chen | wright | mahler (may come from --config instead).
        envelope: Option<String>,
        /// Sequence to certify; defaults to the envelope's own.
        #[arg(long)]
        seq: Option<String>,
        /// First index; defaults to the envelope's claimed start.
        #[arg(long)]
        from: Option<u64>,
        /// Last index.
        #[arg(long, alias = "to", default_value_t = 1000)]
        horizon: u64,
        /// Base for the mahler envelope.
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Run a criterion preset: bo-euler-example21 | bo-planepartition | bo-mary | lc-chen.
    Criterion {
        preset: Option<String>,
        #[arg(long, default_value_t = 500)]
        horizon: u64,
        /// Base for bo-mary.
        #[arg(long, default_value_t = 2)]
        m: u64,
    },
    /// Exhaustive exact scans.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Identity and implication audits.
    Audit {
        #[command(subcommand)]
        kind: AuditKind,
    },
    /// Re-render a saved JSON report.
    Report {
        path: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum ScanKind {
    /// F(a)F(b) > F(a+b) for min <= b <= a, a + b <= sum-max.
    Bo {
        seq: String,
        #[arg(long, default_value_t = 1)]
        min: u64,
        #[arg(long)]
        sum_max: u64,
    },
    /// F(n)^2 > F(n-1)F(n+1) for min <= n <= max.
    Lc {
        seq: String,
        #[arg(long)]
        min: Option<u64>,
        #[arg(long)]
        max: u64,
    },
    /// Least T with no BO violation for T <= b <= a, a + b <= horizon.
    Threshold {
        seq: String,
        #[arg(long)]
        horizon: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum AuditKind {
    /// q(n)^2 - q(n-1)q(n+1) = 1 for 1 <= n <= max.
    Cassini {
        #[arg(long, default_value_t = 10_000)]
        max: u64,
    },
    /// phi^{2n}/sqrt5 - 1 < q(n) < phi^{2n}/sqrt5.
    Golden {
        #[arg(long, default_value_t = 500)]
        max: u64,
    },
    /// The BO gap of q for 3 <= a + b <= sum-max.
    BoGap {
        #[arg(long, default_value_t = 40)]
        sum_max: u64,
    },
    /// F(n)/F(n-1) > F(n+1)/F(n) for n0 < n <= horizon.
    RatioDescent {
        seq: String,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        horizon: u64,
    },
    /// The shift hypothesis F(n)F(n0) > F(n+n0) with its BO conclusion.
    Prop42 {
        seq: String,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        horizon: u64,
    },
    /// The F(0) >= 1 implication.
    Thm43 {
        seq: String,
        #[arg(long)]
        horizon: u64,
    },
    /// Finite probe of limsup F(n+n0)/F(n) < F(n0).
    Limsup {
        seq: String,
        #[arg(long)]
        n0: u64,
        #[arg(long)]
        horizon: u64,
    },
}

/// Errors mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(String),
}

impl From<SeqError> for CliError {
    fn from(e: SeqError) -> Self {
        match e {
            SeqError::InvalidSpec(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<EnvelopeError> for CliError {
    fn from(e: EnvelopeError) -> Self {
        match e {
            EnvelopeError::Config(_) => CliError::Usage(e.to_string()),
            EnvelopeError::Sequence(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Sequence(s) => s.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<CriterionError> for CliError {
    fn from(e: CriterionError) -> Self {
        match e {
            CriterionError::UnknownPreset(_) => CliError::Usage(e.to_string()),
            CriterionError::Sequence(s) => s.into(),
            CriterionError::Envelope(x) => x.into(),
            CriterionError::Analysis(x) => x.into(),
            CriterionError::InvalidInput(_) => CliError::Domain(e.to_string()),
        }
    }
}

pub fn exit_code(status: Status) -> i32 {
    match status {
        Status::Verified => EXIT_VERIFIED,
        Status::Refuted => EXIT_REFUTED,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn parse_seq(s: &str) -> Result<SequenceSpec, CliError> {
    Ok(s.parse()?)
}

fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected n or a..b, got {s:?}"));
    let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let n = num(s)?;
            Ok((n, n))
        }
    }
}

fn load(path: &Option<PathBuf>) -> Result<ConfigFile, CliError> {
    match path {
        Some(p) => Ok(load_config(p)?),
        None => Ok(ConfigFile::default()),
    }
}

fn envelope_spec(name: Option<&str>, cfg: &ConfigFile, m: u64) -> Result<EnvelopeSpec, CliError> {
    match (name, &cfg.envelope) {
        (None, Some(spec)) => Ok(spec.clone()),
        (Some("lehmer"), _) => Ok(EnvelopeSpec::Lehmer),
        (Some("chen"), _) => Ok(EnvelopeSpec::Chen),
        (Some("wright"), Some(spec @ EnvelopeSpec::Wright(_))) => Ok(spec.clone()),
        (Some("wright"), _) => Ok(EnvelopeSpec::Wright(WrightParams::calibrated())),
        (Some("mahler"), Some(spec @ EnvelopeSpec::Mahler(_))) => Ok(spec.clone()),
        (Some("mahler"), _) => Ok(EnvelopeSpec::Mahler(MahlerParams::new(m))),
        (Some(other), _) => Err(CliError::Usage(format!("unknown envelope {other:?}"))),
        (None, None) => Err(CliError::Usage("name an envelope or pass --config with an [envelope] block".into())),
    }
}

fn default_seq(spec: &EnvelopeSpec) -> SequenceSpec {
    match spec {
        EnvelopeSpec::Lehmer | EnvelopeSpec::Chen => SequenceSpec::EulerP,
        EnvelopeSpec::Wright(_) => SequenceSpec::PlaneP,
        EnvelopeSpec::Mahler(p) => SequenceSpec::MAry(p.m),
    }
}

fn policy(opts: &GlobalOpts) -> Result<PrecisionPolicy, CliError> {
    if opts.precision_cap == 0 {
        return Err(CliError::Usage("--precision-cap must be positive".into()));
    }
    Ok(PrecisionPolicy::with_cap(opts.precision_cap))
}

fn positive(name: &str, v: u64) -> Result<(), CliError> {
    if v == 0 {
        Err(CliError::Usage(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Executes one parsed command and builds its report.
pub fn execute(cli: &Cli) -> Result<ReportEnvelope, CliError> {
    let g = &cli.global;
    let policy = policy(g)?;
    match &cli.command {
        Command::Compute { seq, range } => {
            let spec = parse_seq(seq)?;
            let (a, b) = parse_range(range)?;
            let mut s = Sequence::new(spec.clone())?;
            let mut r = ReportEnvelope::new("compute");
            r.echo("seq", &spec);
            r.echo("range", format!("{a}..{b}"));
            for n in a..=b {
                r.values.push(ValueRow { n, value: s.eval(n)?.to_string() });
            }
            Ok(r)
        }
        Command::Certify { envelope, seq, from, horizon, m } => {
            positive("--horizon", *horizon)?;
            let cfg = load(&g.config)?;
            let spec = envelope_spec(envelope.as_deref(), &cfg, *m)?;
            let seq = match seq {
                Some(s) => parse_seq(s)?,
                None => default_seq(&spec),
            };
            let env = spec.build();
            let from = from.unwrap_or(env.n0).max(1);
            if from > *horizon {
                return Err(CliError::Domain(format!("--from {from} exceeds --horizon {horizon}")));
            }
            let mut r = ReportEnvelope::new("certify");
            r.echo("envelope", &env.label);
            r.echo("seq", &seq);
            r.echo("from", from);
            r.echo("horizon", horizon);
            r.echo("precision_cap", policy.cap);
            r.push_certification(certify_sequence(&env, &seq, from, *horizon, &policy)?);
            Ok(r)
        }
        Command::Criterion { preset: id, horizon, m } => {
            positive("--horizon", *horizon)?;
            let cfg = load(&g.config)?;
            let id = id
                .clone()
                .or_else(|| cfg.criterion.as_ref().and_then(|c| c.preset.clone()))
                .ok_or_else(|| CliError::Usage("name a preset or set criterion.preset in --config".into()))?;
            let instance = preset(&id, *m)?.with_config(&cfg)?;
            let mut r = ReportEnvelope::new("criterion");
            r.echo("preset", &id);
            r.echo("seq", &instance.seq);
            r.echo("horizon", horizon);
            r.echo("precision_cap", policy.cap);
            if let Some(p) = &g.config {
                r.echo("config", p.display());
            }
            r.push_verdict(run_preset(&instance, *horizon, &policy)?);
            Ok(r)
        }
        Command::Scan { kind } => {
            let mut r = ReportEnvelope::new("scan");
            match kind {
                ScanKind::Bo { seq, min, sum_max } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "bo");
                    r.echo("seq", &spec);
                    r.echo("min", min);
                    r.echo("sum_max", sum_max);
                    r.push_scan(scan_bo(&spec, *min, *sum_max)?);
                }
                ScanKind::Lc { seq, min, max } => {
                    let spec = parse_seq(seq)?;
                    let min = min.unwrap_or(spec.domain_start() + 1).max(1);
                    r.echo("kind", "lc");
                    r.echo("seq", &spec);
                    r.echo("min", min);
                    r.echo("max", max);
                    r.push_scan(scan_logconcavity(&spec, min, *max)?);
                }
                ScanKind::Threshold { seq, horizon } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "threshold");
                    r.echo("seq", &spec);
                    r.echo("horizon", horizon);
                    let t = find_min_bo_threshold(&spec, *horizon)?;
                    let mut v = Verdict::new(
                        format!("{spec}: least T with F(a)F(b) > F(a+b) for T <= b <= a, a + b <= {horizon}"),
                        Horizon { description: format!("a + b <= {horizon}"), from: 1, to: *horizon },
                    );
                    match t {
                        Some(t) => {
                            v.thresholds.insert("T".into(), t);
                        }
                        None => {
                            let b = horizon / 2;
                            v.refute(crate::verdict::Witness::new(vec![horizon - b, b], "", "").with_note(
                                "violations persist to the edge of the region",
                            ))
                        }
                    }
                    r.push_verdict(v);
                }
            }
            Ok(r)
        }
        Command::Audit { kind } => {
            let mut r = ReportEnvelope::new("audit");
            match kind {
                AuditKind::Cassini { max } => {
                    r.echo("kind", "cassini");
                    r.echo("max", max);
                    r.push_verdict(cassini_audit(*max)?);
                }
                AuditKind::Golden { max } => {
                    r.echo("kind", "golden");
                    r.echo("max", max);
                    r.echo("precision_cap", policy.cap);
                    r.push_verdict(golden_bounds_audit(*max, &policy)?);
                }
                AuditKind::BoGap { sum_max } => {
                    r.echo("kind", "bo-gap");
                    r.echo("sum_max", sum_max);
                    r.echo("precision_cap", policy.cap);
                    r.push_verdict(bo_gap_audit_q(*sum_max, &policy)?);
                }
                AuditKind::RatioDescent { seq, n0, horizon } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "ratio-descent");
                    r.echo("seq", &spec);
                    r.echo("n0", n0);
                    r.echo("horizon", horizon);
                    r.push_verdict(check_ratio_descent(&spec, *n0, *horizon)?);
                }
                AuditKind::Prop42 { seq, n0, horizon } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "prop42");
                    r.echo("seq", &spec);
                    r.echo("n0", n0);
                    r.echo("horizon", horizon);
                    r.push_verdict(check_prop42(&spec, *n0, *horizon)?);
                }
                AuditKind::Thm43 { seq, horizon } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "thm43");
                    r.echo("seq", &spec);
                    r.echo("horizon", horizon);
                    r.push_verdict(check_thm43(&spec, *horizon)?);
                }
                AuditKind::Limsup { seq, n0, horizon } => {
                    let spec = parse_seq(seq)?;
                    r.echo("kind", "limsup");
                    r.echo("seq", &spec);
                    r.echo("n0", n0);
                    r.echo("horizon", horizon);
                    let probe = limsup_probe(&spec, *n0, *horizon)?;
                    // A probe is evidence, not a verdict; it never moves the exit code.
                    r.probes.push(probe);
                }
            }
            Ok(r)
        }
        Command::Report { path } => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            ReportEnvelope::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
        }
    }
}

/// Renders a report in the requested format.
pub fn render(report: &ReportEnvelope, format: Format) -> Result<String, CliError> {
    match format {
        Format::Text => Ok(report.to_text()),
        Format::Json => Ok(report.to_json()),
        Format::Csv => {
            let mut buf = Vec::new();
            if !report.values.is_empty() {
                let mut w = csv::Writer::from_writer(&mut buf);
                let io = |e: csv::Error| CliError::Domain(e.to_string());
                w.write_record(["n", "value"]).map_err(io)?;
                for row in &report.values {
                    w.write_record([row.n.to_string(), row.value.clone()]).map_err(io)?;
                }
                w.flush().map_err(|e| CliError::Domain(e.to_string()))?;
            } else if !report.scans.is_empty() {
                for s in &report.scans {
                    s.write_csv(&mut buf).map_err(|e| CliError::Domain(e.to_string()))?;
                }
            } else {
                verdict_csv(&report.verdicts, &mut buf).map_err(|e| CliError::Domain(e.to_string()))?;
            }
            Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
        }
    }
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    if cli.global.threads == 0 {
        eprintln!("error: --threads must be positive");
        return EXIT_USAGE;
    }
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    let outcome = pool.install(|| execute(&cli));
    let mut report = match outcome {
        Ok(r) => r,
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            return EXIT_USAGE;
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("domain error: {msg}");
            return EXIT_DOMAIN;
        }
    };
    if !cli.global.no_timing && !matches!(cli.command, Command::Report { .. }) {
        report.timing_ms = Some(started.elapsed().as_millis() as u64);
    }
    let text = match render(&report, cli.global.format) {
        Ok(t) => t,
        Err(CliError::Usage(m)) | Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            return EXIT_DOMAIN;
        }
    };
    if let Err(CliError::Usage(m) | CliError::Domain(m)) = write_out(&cli.global.out, &text) {
        eprintln!("error: {m}");
        return EXIT_DOMAIN;
    }
    exit_code(report.status)
}
