//! The `monkey` command line.
//!
//! Exit codes: 0 on success, 1 for usage errors (bad flags, unsupported
//! combinations), 2 for input or data errors (unreadable files, invalid
//! UTF-8, empty or untypeable text, text too short to estimate).

mod gallery;
mod report;

pub use gallery::{GalleryEntry, GALLERY};
pub use report::{Cell, Format, Report};

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::entropy::{preset_estimates, standard_estimators, EntropyError};
use crate::simulate::{simulate_source, SimulateError, SymbolSource};
use crate::textnorm::{decode_utf8, normalize, Alphabet, NormalizedText, CANONICAL_SYMBOLS};
use crate::waiting::{
    exact_expected_wait_uniform_integer, standard_rules, Mode, MonkeyModel, TypingSpeed,
    WaitingError, WaitingEstimate, CANONICAL_ALPHABET_SIZE, DEFAULT_CHARS_PER_WORD,
    DEFAULT_DAYS_PER_YEAR, DEFAULT_ENTROPY_RATE, DEFAULT_HOURS_PER_DAY, DEFAULT_WORDS_PER_MINUTE,
};

/// Total expected keystrokes one `simulate` call may spend.
pub const SIMULATION_BUDGET: f64 = 1e12;

const EXTERNAL_INPUT: &str = "external input required";

#[derive(Debug, Error)]
pub enum CliError {
    /// Already rendered by the argument parser.
    #[error("{0}")]
    Parse(String),
    #[error("error: {0}")]
    Usage(String),
    #[error("error: {0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Parse(_) | Self::Usage(_) => 1,
            Self::Data(_) => 2,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn data(e: impl ToString) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "monkey",
    version,
    about = "Expected typing times for random and educated monkeys"
)]
pub struct Cli {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// 7.3×10^(cℓ−9) shorthand for the educated monkey; m^ℓ for the random one
    Rounded,
    /// Unrounded 2^(ℓh) and m^ℓ
    Precise,
    /// Border-sum mean for the random monkey; 2^(ℓh) for the educated one
    Exact,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Rounded => Mode::RoundedRule,
            ModeArg::Precise => Mode::FullPrecision,
            ModeArg::Exact => Mode::ExactBorder,
        }
    }
}

/// Settings shared by every command. Flags beat `MONKEY_*` variables, which
/// beat the defaults.
#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Educated monkey's entropy rate, bits per character
    #[arg(long = "h", global = true, env = "MONKEY_H", default_value_t = DEFAULT_ENTROPY_RATE)]
    pub h: f64,
    /// Keys on the random monkey's keyboard
    #[arg(long, global = true, env = "MONKEY_M", default_value_t = CANONICAL_ALPHABET_SIZE)]
    pub m: u32,
    /// Typing speed, words per minute
    #[arg(long, global = true, env = "MONKEY_WPM", default_value_t = DEFAULT_WORDS_PER_MINUTE)]
    pub wpm: f64,
    #[arg(long, global = true, env = "MONKEY_CHARS_PER_WORD", default_value_t = DEFAULT_CHARS_PER_WORD)]
    pub chars_per_word: f64,
    #[arg(long, global = true, env = "MONKEY_HOURS_PER_DAY", default_value_t = DEFAULT_HOURS_PER_DAY)]
    pub hours_per_day: f64,
    #[arg(long, global = true, env = "MONKEY_DAYS_PER_YEAR", default_value_t = DEFAULT_DAYS_PER_YEAR)]
    pub days_per_year: f64,
    #[arg(long, global = true, env = "MONKEY_MODE", value_enum, default_value_t = ModeArg::Rounded)]
    pub mode: ModeArg,
    #[arg(long, global = true, env = "MONKEY_FORMAT", value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Waiting times for one phrase
    Quote {
        /// The phrase; several arguments are joined with spaces
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Waiting times for a whole UTF-8 file ("-" reads stdin)
    Corpus { path: PathBuf },
    /// The gallery of famous lines
    Table,
    /// Entropy rate of a UTF-8 file ("-" reads stdin)
    Estimate {
        path: PathBuf,
        #[arg(long, env = "MONKEY_METHOD", default_value = "ngram")]
        method: String,
        /// Block length n for the n-gram estimator
        #[arg(long, env = "MONKEY_NGRAM_ORDER", default_value_t = 3)]
        ngram_order: usize,
        /// Window length for the match-length estimator
        #[arg(long, env = "MONKEY_WINDOW", default_value_t = 1 << 16)]
        window: usize,
    },
    /// Monte Carlo waiting times for a random m-key monkey
    Simulate {
        pattern: String,
        #[arg(long, env = "MONKEY_TRIALS", default_value_t = 10_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        #[arg(long, env = "MONKEY_SEED", default_value_t = 1)]
        seed: u64,
    },
    /// Published estimates of the entropy of English
    Presets,
}

/// Validated settings.
#[derive(Debug, Clone)]
pub struct Config {
    pub educated: MonkeyModel,
    pub random: MonkeyModel,
    pub m: u32,
    pub speed: TypingSpeed,
    pub mode: Mode,
    pub format: Format,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<Config, CliError> {
        Ok(Config {
            educated: MonkeyModel::educated(self.h).map_err(usage)?,
            random: MonkeyModel::uniform(self.m).map_err(usage)?,
            m: self.m,
            speed: TypingSpeed::new(self.wpm, self.chars_per_word, self.hours_per_day, self.days_per_year)
                .map_err(usage)?,
            mode: self.mode.into(),
            format: self.format,
        })
    }
}

impl Config {
    fn educated_rate(&self) -> f64 {
        match self.educated {
            MonkeyModel::Educated { h } => h,
            _ => unreachable!("educated model"),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// report to `out`. Help and version text count as success.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<(), CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            write!(out, "{}", e.render()).map_err(data)?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Parse(e.render().to_string())),
    };
    let config = cli.config.resolve()?;
    let report = match &cli.command {
        Command::Quote { words } => cmd_quote(&words.join(" "), &config)?,
        Command::Corpus { path } => cmd_corpus(path, &config)?,
        Command::Table => cmd_table(&config)?,
        Command::Estimate {
            path,
            method,
            ngram_order,
            window,
        } => cmd_estimate(path, method, *ngram_order, *window, &config)?,
        Command::Simulate {
            pattern,
            trials,
            seed,
        } => cmd_simulate(pattern, *trials, *seed, &config)?,
        Command::Presets => cmd_presets(),
    };
    report.write(config.format, out).map_err(data)
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(std::env::args_os(), &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let _ = out.flush();
            let message = e.to_string();
            eprintln!("{}", message.trim_end());
            ExitCode::from(e.exit_code())
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let bytes = if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| data(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| data(format!("cannot read {}: {e}", path.display())))?
    };
    decode_utf8(&bytes)
        .map(str::to_owned)
        .map_err(|e| data(format!("{}: {e}", path.display())))
}

/// Canonical normalization, then a check that an `m`-key monkey can type it.
fn typeable_text(raw: &str, m: u32) -> Result<NormalizedText, CliError> {
    let text = normalize(raw, &Alphabet::canonical());
    if (m as usize) < CANONICAL_SYMBOLS.len() {
        let keys = Alphabet::first(m as usize).map_err(usage)?;
        NormalizedText::parse(text.as_str(), &keys).map_err(|e| {
            data(format!(
                "{e}; a {m}-key monkey types only {:?}",
                keys.symbols().iter().collect::<String>()
            ))
        })?;
    }
    Ok(text)
}

/// Which rule each monkey uses under a requested mode. The random monkey is
/// always at least full precision; the educated one has no exact form.
fn rule_modes(mode: Mode) -> (Mode, Mode) {
    match mode {
        Mode::RoundedRule => (Mode::RoundedRule, Mode::FullPrecision),
        Mode::FullPrecision => (Mode::FullPrecision, Mode::FullPrecision),
        Mode::ExactBorder => (Mode::FullPrecision, Mode::ExactBorder),
    }
}

fn waiting_error(e: WaitingError) -> CliError {
    match e {
        WaitingError::RoundedRuleUnsupported | WaitingError::RoundedRuleAlphabet(_) => {
            usage(format!("{e}; use --mode precise"))
        }
        other => data(other),
    }
}

struct Estimates {
    educated: WaitingEstimate,
    random: WaitingEstimate,
}

fn estimate_both(text: &NormalizedText, config: &Config) -> Result<Estimates, CliError> {
    let rules = standard_rules();
    let (educated_mode, random_mode) = rule_modes(config.mode);
    let run = |mode: Mode, model: &MonkeyModel| {
        rules
            .get(mode.cli_name())
            .expect("every mode has a rule")
            .estimate(text, model, &config.speed)
            .map_err(waiting_error)
    };
    Ok(Estimates {
        educated: run(educated_mode, &config.educated)?,
        random: run(random_mode, &config.random)?,
    })
}

const WAITING_COLUMNS: [&str; 8] = [
    "educated_log10_keystrokes",
    "educated_log10_years",
    "educated_time",
    "educated_mode",
    "random_log10_keystrokes",
    "random_log10_years",
    "random_time",
    "random_mode",
];

fn waiting_cells(e: &WaitingEstimate) -> [Cell; 4] {
    [
        Cell::rounded(e.keystrokes.log10(), 4),
        Cell::rounded(e.years.log10(), 4),
        Cell::text(&e.display),
        Cell::text(e.mode.as_str()),
    ]
}

fn waiting_report(leading: Vec<(&'static str, Cell)>, estimates: &Estimates) -> Report {
    let (names, mut row): (Vec<_>, Vec<_>) = leading.into_iter().unzip();
    let mut report = Report::new(names.into_iter().chain(WAITING_COLUMNS).collect());
    row.extend(waiting_cells(&estimates.educated));
    row.extend(waiting_cells(&estimates.random));
    report.push(row);
    report
}

pub fn cmd_quote(phrase: &str, config: &Config) -> Result<Report, CliError> {
    let text = typeable_text(phrase, config.m)?;
    if text.is_empty() {
        return Err(data(format!("{phrase:?} has no typeable characters")));
    }
    let estimates = estimate_both(&text, config)?;
    Ok(waiting_report(
        vec![
            ("phrase", Cell::text(phrase)),
            ("normalized", Cell::text(text.as_str())),
            ("length", Cell::Int(text.len() as i64)),
        ],
        &estimates,
    ))
}

/// Large corpora report bare `10^E` exponents above `10^1000`. Which edition
/// of a text was measured changes ℓ, so compare exponents, not digits.
pub fn cmd_corpus(path: &Path, config: &Config) -> Result<Report, CliError> {
    let raw = read_input(path)?;
    let text = typeable_text(&raw, config.m)?;
    let estimates = estimate_both(&text, config)?;
    Ok(waiting_report(
        vec![
            ("path", Cell::text(path.display().to_string())),
            ("length", Cell::Int(text.len() as i64)),
        ],
        &estimates,
    ))
}

pub fn cmd_table(config: &Config) -> Result<Report, CliError> {
    let mut report = Report::new(vec![
        "source",
        "phrase",
        "length",
        "educated_log10_years",
        "educated_time",
        "quoted_educated",
        "random_log10_years",
        "random_time",
        "quoted_random",
        "status",
    ]);
    let quoted = |s: &'static str| if s.is_empty() { Cell::Missing } else { Cell::text(s) };
    let mut rounded_gap: Option<f64> = None;
    let mut modes = None;
    for entry in &GALLERY {
        let Some(phrase) = entry.text else {
            report.push(vec![
                Cell::text(entry.source),
                Cell::Missing,
                Cell::Missing,
                Cell::Missing,
                Cell::Missing,
                quoted(entry.quoted_educated),
                Cell::Missing,
                Cell::Missing,
                quoted(entry.quoted_random),
                Cell::text(EXTERNAL_INPUT),
            ]);
            continue;
        };
        let text = typeable_text(phrase, config.m)?;
        let e = estimate_both(&text, config)?;
        if config.mode != Mode::RoundedRule {
            if let Ok(r) = standard_rules()
                .get(Mode::RoundedRule.cli_name())
                .expect("registered")
                .estimate(&text, &config.educated, &config.speed)
            {
                let gap = e.educated.years.relative_error(&r.years);
                rounded_gap = Some(rounded_gap.map_or(gap, |g: f64| g.max(gap)));
            }
        }
        modes = Some((e.educated.mode, e.random.mode));
        report.push(vec![
            Cell::text(entry.source),
            Cell::text(phrase),
            Cell::Int(text.len() as i64),
            Cell::rounded(e.educated.years.log10(), 4),
            Cell::text(&e.educated.display),
            quoted(entry.quoted_educated),
            Cell::rounded(e.random.years.log10(), 4),
            Cell::text(&e.random.display),
            quoted(entry.quoted_random),
            Cell::text("ok"),
        ]);
    }
    if let Some((educated, random)) = modes {
        report.note(format!(
            "educated monkey: {educated}, h = {}; random monkey: {random}, {} keys",
            config.educated_rate(),
            config.m
        ));
    }
    if let Some(gap) = rounded_gap {
        report.note(format!(
            "unrounded coefficients: educated times differ from the quoted rounded-rule figures by up to {:.1}%",
            gap * 100.0
        ));
    }
    report.note(format!(
        "rows marked \"{EXTERNAL_INPUT}\" need the full text: run `monkey corpus FILE`"
    ));
    Ok(report)
}

pub fn cmd_estimate(
    path: &Path,
    method: &str,
    ngram_order: usize,
    window: usize,
    config: &Config,
) -> Result<Report, CliError> {
    let estimators = standard_estimators();
    let estimator = estimators.get(method).ok_or_else(|| {
        usage(format!("unknown method {method:?}; choose one of {}", estimators.names().join(", ")))
    })?;
    let parameter = match estimator.parameter_name() {
        "window" => window,
        _ => ngram_order,
    };
    let raw = read_input(path)?;
    let alphabet = if (config.m as usize) < CANONICAL_SYMBOLS.len() {
        Alphabet::first(config.m as usize).map_err(usage)?
    } else {
        Alphabet::canonical()
    };
    let text = normalize(&raw, &alphabet);
    let estimate = estimator.estimate(&text, parameter).map_err(|e| match e {
        EntropyError::InvalidParameter(_) => usage(e),
        other => data(other),
    })?;
    let mut report = Report::new(vec![
        "path",
        "method",
        "parameter_name",
        "parameter",
        "bits_per_character",
        "sample_size",
        "alphabet_size",
    ]);
    report.push(vec![
        Cell::text(path.display().to_string()),
        Cell::text(estimate.method),
        Cell::text(estimator.parameter_name()),
        Cell::Int(estimate.parameter as i64),
        Cell::rounded(estimate.value, 6),
        Cell::Int(estimate.sample_size as i64),
        Cell::Int(alphabet.size() as i64),
    ]);
    Ok(report)
}

pub fn cmd_simulate(pattern: &str, trials: u64, seed: u64, config: &Config) -> Result<Report, CliError> {
    let m = config.m;
    let source = SymbolSource::uniform(m).map_err(usage)?;
    let text = typeable_text(pattern, m)?;
    if text.is_empty() {
        return Err(data(format!("{pattern:?} has no typeable characters")));
    }
    let symbols = text.symbols();
    let exact = exact_expected_wait_uniform_integer(&symbols, m).map_err(data)?;
    let exact_f64: f64 = exact.to_string().parse().expect("integer parses as f64");
    if exact_f64 * trials as f64 > SIMULATION_BUDGET {
        return Err(usage(format!(
            "about {exact_f64:.3e} keystrokes per trial times {trials} trials exceeds the budget of {SIMULATION_BUDGET:e}; \
             shorten the pattern or lower --trials"
        )));
    }
    let rule = (m as f64).powi(symbols.len() as i32);
    let summary = simulate_source(&source, &symbols, trials, seed).map_err(|e| match e {
        SimulateError::ZeroTrials => usage(e),
        other => data(other),
    })?;
    let mut report = Report::new(vec![
        "pattern",
        "m",
        "trials",
        "seed",
        "empirical_mean",
        "std_error",
        "min",
        "max",
        "exact",
        "rule_of_thumb",
        "empirical_over_exact",
        "exact_over_rule",
    ]);
    report.push(vec![
        Cell::text(text.as_str()),
        Cell::Int(m as i64),
        Cell::Int(summary.trials as i64),
        Cell::Int(seed as i64),
        Cell::rounded(summary.mean, 4),
        Cell::rounded(summary.std_error, 4),
        Cell::Int(summary.min as i64),
        Cell::Int(summary.max as i64),
        Cell::Int(exact_f64 as i64),
        Cell::Int(rule as i64),
        Cell::rounded(summary.mean / exact_f64, 6),
        Cell::rounded(exact_f64 / rule, 6),
    ]);
    Ok(report)
}

pub fn cmd_presets() -> Report {
    let mut report = Report::new(vec!["key", "method", "estimate", "unit", "note", "default"]);
    for p in preset_estimates() {
        report.push(vec![
            Cell::text(p.key),
            Cell::text(p.method),
            Cell::text(p.display_value()),
            Cell::text(p.unit),
            Cell::text(p.note),
            Cell::text(if p.is_default { "yes" } else { "" }),
        ]);
    }
    report
}
