//! Command-line front end. The `olfm` binary only forwards to [`run`].

use std::ffi::OsString;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::decision::{DecisionVector, Outcome, TieRule};
use crate::error::Error;
use crate::rule::{DecisionRule, FractionValue};
use crate::scores::{normalization_total, rae, sat_all, ScoreConfig, DEFAULT_CAP};
use crate::society::{ActorClass, ActorId, Society};
use crate::suite::{run_axiom_suite, run_negative_control, InfluencerDomain, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_AXIOM_FAILURE: i32 = 3;
pub const EXIT_RESOURCE_CAP: i32 = 4;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::TooLarge { .. } => EXIT_RESOURCE_CAP,
        _ => EXIT_VALIDATION,
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "olfm",
    version,
    about = "Collective decisions, satisfaction scores and axiom checks on layered influence societies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: RunConfig,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-actor class, layer and degrees.
    Classify { input: PathBuf },
    /// Collective vector c(x) and decision C(x) for one initial vector.
    Decide {
        input: PathBuf,
        /// Bitstring, leftmost character = actor 1.
        x: String,
        /// Read `x` as an integer whose most significant bit is actor 1.
        #[arg(long)]
        integer: bool,
    },
    /// Every initial vector in binary order with c(x) and C(x).
    Table { input: PathBuf },
    /// Satisfaction, Banzhaf and Rae scores with cross-checks.
    Scores { input: PathBuf },
    /// Randomized axiom suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleKind {
    Unanimity,
    Fraction,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Override the society's influence rule.
    #[arg(long, global = true, value_enum)]
    pub rule: Option<RuleKind>,
    /// Fraction value as NUM/DEN or decimal (with --rule fraction).
    #[arg(long, global = true)]
    pub q: Option<String>,
    #[arg(long, global = true, default_value = "reject", value_parser = parse_tie_rule)]
    pub tie_rule: TieRule,
    /// Largest n accepted for 2^n enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: usize,
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Inclusive actor-count range, e.g. 3..11 (only odd sizes are drawn).
    #[arg(long, default_value = "3..11", value_parser = parse_range)]
    pub n_range: RangeInclusive<usize>,
    #[arg(long, default_value_t = 4)]
    pub max_layers: usize,
    /// Comma-separated property labels (1,2,3,4,4b,5,5b,6,6b,7); default all.
    #[arg(long, value_delimiter = ',')]
    pub properties: Vec<String>,
    /// Restrict the new influencer of pair properties to leaders and independents.
    #[arg(long)]
    pub sources_only: bool,
    /// Perturb the satisfaction score and require every trial to break an axiom.
    #[arg(long)]
    pub negative_control: bool,
}

fn parse_tie_rule(text: &str) -> Result<TieRule, String> {
    text.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(text: &str) -> Result<RangeInclusive<usize>, String> {
    let (lo, hi) = text
        .split_once("..=")
        .or_else(|| text.split_once(".."))
        .ok_or_else(|| format!("expected LO..HI, got {text:?}"))?;
    let lo: usize = lo.trim().parse().map_err(|_| format!("bad lower bound in {text:?}"))?;
    let hi: usize = hi.trim().parse().map_err(|_| format!("bad upper bound in {text:?}"))?;
    if lo > hi {
        return Err(format!("empty range {text:?}"));
    }
    Ok(lo..=hi)
}

impl RunConfig {
    pub fn score_config(&self) -> Result<ScoreConfig, Error> {
        if self.workers == 0 {
            return Err(Error::InvalidParams("--workers must be at least 1".into()));
        }
        Ok(ScoreConfig {
            cap: self.cap,
            workers: self.workers,
            ties: self.tie_rule,
        })
    }

    fn rule_override(&self) -> Result<Option<DecisionRule>, Error> {
        match (self.rule, &self.q) {
            (None, None) => Ok(None),
            (Some(RuleKind::Unanimity), None) => Ok(Some(DecisionRule::Unanimity)),
            (Some(RuleKind::Unanimity), Some(_)) => {
                Err(Error::InvalidParams("--q only applies to --rule fraction".into()))
            }
            (Some(RuleKind::Fraction) | None, Some(q)) => Ok(Some(DecisionRule::Fraction(q.parse::<FractionValue>()?))),
            (Some(RuleKind::Fraction), None) => Err(Error::InvalidParams("--rule fraction needs --q".into())),
        }
    }

    /// Reads a society file and applies the rule override.
    pub fn load(&self, path: &PathBuf) -> Result<Society, Error> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let society = Society::from_json(&text)?;
        Ok(match self.rule_override()? {
            Some(rule) => society.with_rule(rule),
            None => society,
        })
    }
}

/// Output of one command: text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub exit_code: i32,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report {
            stdout,
            exit_code: EXIT_OK,
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

#[derive(Serialize)]
struct ClassRow {
    actor: ActorId,
    class: ActorClass,
    layer: u32,
    indegree: u32,
    outdegree: u32,
}

pub fn cmd_classify(s: &Society, format: Format) -> Result<Report, Error> {
    let rows: Vec<ClassRow> = s
        .actors()
        .map(|a| {
            let d = s.degree(a)?;
            Ok(ClassRow {
                actor: a,
                class: s.classify(a)?,
                layer: s.layer(a)?,
                indegree: d.indegree,
                outdegree: d.outdegree,
            })
        })
        .collect::<Result<_, Error>>()?;
    let out = match format {
        Format::Json => json(&rows),
        Format::Tsv => {
            let mut out = String::from("actor\tclass\tlayer\tindegree\toutdegree\n");
            for r in &rows {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    r.actor, r.class, r.layer, r.indegree, r.outdegree
                ));
            }
            out
        }
    };
    Ok(Report::ok(out))
}

fn outcome_text(outcome: Outcome, ties: TieRule) -> String {
    match outcome.resolve(ties) {
        Some(true) => "1".into(),
        Some(false) => "0".into(),
        None => "tie".into(),
    }
}

pub fn cmd_decide(s: &Society, x: DecisionVector, ties: TieRule, format: Format) -> Result<Report, Error> {
    let c = s.propagate(x)?;
    let outcome = s.decide(x)?;
    let decision = outcome
        .resolve(ties)
        .ok_or_else(|| Error::TieEncountered(x.to_string()))?;
    let out = match format {
        Format::Tsv => format!("c={c} C={}\n", u8::from(decision)),
        Format::Json => json(&serde_json::json!({
            "x": x.to_string(),
            "x_int": x.to_integer(),
            "c": c.to_string(),
            "c_int": c.to_integer(),
            "C": u8::from(decision),
        })),
    };
    Ok(Report::ok(out))
}

pub fn cmd_table(s: &Society, cfg: &ScoreConfig, format: Format) -> Result<Report, Error> {
    if s.n() > cfg.cap || s.n() > 62 {
        return Err(Error::TooLarge { n: s.n(), cap: cfg.cap });
    }
    let n = s.n();
    let mut rows = Vec::with_capacity(1 << n);
    for value in 0..(1u64 << n) {
        let x = DecisionVector::from_integer(n, value)?;
        let c = s.propagate(x)?;
        rows.push((x, c, outcome_text(s.decide(x)?, cfg.ties)));
    }
    let out = match format {
        Format::Tsv => {
            let mut out = String::with_capacity((rows.len() + 1) * (2 * n + 4));
            out.push_str("x\tc\tC\n");
            for (x, c, o) in &rows {
                out.push_str(&format!("{x}\t{c}\t{o}\n"));
            }
            out
        }
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(x, c, o)| serde_json::json!({"x": x.to_string(), "c": c.to_string(), "C": o}))
                .collect();
            json(&rows)
        }
    };
    Ok(Report::ok(out))
}

pub fn cmd_scores(s: &Society, cfg: &ScoreConfig, format: Format) -> Result<Report, Error> {
    let table = sat_all(s, cfg)?;
    let half = 1u64 << (s.n() - 1);
    let raes: Vec<u64> = s.actors().map(|a| rae(s, a, cfg)).collect::<Result<_, _>>()?;
    let consistent: Vec<bool> = table
        .actors
        .iter()
        .zip(&raes)
        .map(|(a, &r)| a.sat == r && a.sat == half + a.banzhaf)
        .collect();
    let normalization = normalization_total(s, cfg)?;
    let norm_ok = normalization == table.sat_sum() && normalization == table.total_sat;
    let out = match format {
        Format::Tsv => {
            let mut out = String::from("actor\tclass\tlayer\tsat\tbanzhaf\trae\tconsistent\n");
            for ((a, r), ok) in table.actors.iter().zip(&raes).zip(&consistent) {
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    a.actor,
                    a.class.letter(),
                    a.layer,
                    a.sat,
                    a.banzhaf,
                    r,
                    if *ok { "ok" } else { "FAIL" }
                ));
            }
            out.push_str(&format!(
                "# total_sat={} sum_sat={} normalization={}\n",
                table.total_sat,
                table.sat_sum(),
                if norm_ok { "ok" } else { "FAIL" }
            ));
            out
        }
        Format::Json => json(&serde_json::json!({
            "n": table.n,
            "actors": table.actors,
            "rae": raes,
            "consistent": consistent,
            "total_sat": table.total_sat,
            "sum_sat": table.sat_sum(),
            "normalization_total": normalization,
        })),
    };
    Ok(Report {
        stdout: out,
        exit_code: if norm_ok && consistent.iter().all(|&b| b) {
            EXIT_OK
        } else {
            EXIT_AXIOM_FAILURE
        },
    })
}

pub fn cmd_verify(args: &VerifyArgs, cfg: &ScoreConfig, format: Format) -> Result<Report, Error> {
    let properties = if args.properties.is_empty() {
        crate::suite::Property::ALL.to_vec()
    } else {
        args.properties.iter().map(|p| p.parse()).collect::<Result<_, _>>()?
    };
    let suite = SuiteConfig {
        seed: args.seed,
        trials: args.trials,
        min_n: *args.n_range.start(),
        max_n: *args.n_range.end(),
        max_layers: args.max_layers,
        scores: *cfg,
        properties,
        influencers: if args.sources_only {
            InfluencerDomain::Sources
        } else {
            InfluencerDomain::Any
        },
    };
    if args.negative_control {
        let summary = run_negative_control(&suite)?;
        let passed = summary.every_trial_violates();
        let stdout = match format {
            Format::Tsv => summary.render(),
            Format::Json => json(&summary),
        };
        return Ok(Report {
            stdout,
            exit_code: if passed { EXIT_OK } else { EXIT_AXIOM_FAILURE },
        });
    }
    if args.trials == 0 {
        return Ok(Report::ok(match format {
            Format::Tsv => String::new(),
            Format::Json => json(&serde_json::json!({"tallies": []})),
        }));
    }
    let summary = run_axiom_suite(&suite)?;
    let stdout = match format {
        Format::Tsv => summary.render(),
        Format::Json => json(&summary),
    };
    Ok(Report {
        stdout,
        exit_code: if summary.all_hold() {
            EXIT_OK
        } else {
            EXIT_AXIOM_FAILURE
        },
    })
}

pub fn execute(cli: &Cli) -> Result<Report, Error> {
    let opts = &cli.options;
    let cfg = opts.score_config()?;
    match &cli.command {
        Command::Classify { input } => cmd_classify(&opts.load(input)?, opts.format),
        Command::Decide { input, x, integer } => {
            let s = opts.load(input)?;
            let x = if *integer {
                let value = x
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("not an integer: {x:?}")))?;
                DecisionVector::from_integer(s.n(), value)?
            } else {
                x.parse()?
            };
            cmd_decide(&s, x, opts.tie_rule, opts.format)
        }
        Command::Table { input } => cmd_table(&opts.load(input)?, &cfg, opts.format),
        Command::Scores { input } => cmd_scores(&opts.load(input)?, &cfg, opts.format),
        Command::Verify(args) => cmd_verify(args, &cfg, opts.format),
    }
}

/// Parses arguments, runs the command and returns `(stdout, stderr, exit code)`.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            return (String::new(), e.render().to_string(), code);
        }
    };
    match execute(&cli) {
        Ok(report) => (report.stdout, String::new(), report.exit_code),
        Err(e) => (String::new(), format!("error: {e}\n"), exit_code(&e)),
    }
}
