use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use accentforge_core::data::{FixtureSource, DATA_ENV};
use accentforge_core::inventory::{
    load_profiles, phoneme_frequencies, tier_assignment, validate_rules, RuleTagMap, Tier,
    ValidationConfig, VerdictFixture, DEFAULT_P_HIGH, DEFAULT_P_MID,
};
use accentforge_core::lexicon::stats;
use accentforge_core::mining::{self, categorize, Grouping, MiningConfig, DEFAULT_THETA};
use accentforge_core::{
    Error as CoreError, Lexicon, ParseMode, PhoneSet, RuleQuery, RuleSet, SymbolTable,
};
use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "accentforge",
    version,
    about = "Indian English pronunciation rules: adapt, mine, analyse"
)]
struct Cli {
    /// Directory with fixture files overriding the built-in copies.
    #[arg(long, global = true, env = DATA_ENV, value_name = "DIR")]
    data_dir: Option<PathBuf>,

    /// Symbol table TSV.
    #[arg(long, global = true, value_name = "FILE")]
    symbols: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rewrite every pronunciation of a lexicon.
    Adapt(AdaptArgs),
    /// Mine rules from transcription pairs.
    Mine(MineArgs),
    /// Phoneme frequencies and percentile tiers across languages.
    Tiers(TiersArgs),
    /// Classify rules as universal, regional or discarded.
    Validate(ValidateArgs),
    /// Cohen's kappa of two label columns.
    Kappa(KappaArgs),
    /// Convert a phone string between phone sets.
    Convert(ConvertArgs),
}

#[derive(Args)]
struct RuleArgs {
    /// Rule file; repeat to layer files (later ids replace earlier ones).
    #[arg(long = "rules", value_name = "FILE")]
    rules: Vec<PathBuf>,
}

#[derive(Args)]
struct AdaptArgs {
    lexicon: PathBuf,
    #[command(flatten)]
    rules: RuleArgs,
    /// `universal`, `lang:<name>[,<name>...]` or `group:<n>[,<n>...]`.
    #[arg(long, default_value = "universal")]
    scope: String,
    #[arg(long, default_value = "arpabet")]
    from_set: PhoneSet,
    #[arg(long, default_value = "cps")]
    to_set: PhoneSet,
    /// Output file (default: stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write the rule applications of each entry as JSON lines.
    #[arg(long, value_name = "FILE")]
    trace: Option<PathBuf>,
    /// Keep unknown tokens and skip malformed lines instead of failing.
    #[arg(long)]
    lenient: bool,
    /// Print the summary as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MineArgs {
    /// TSV of `word  canonical  annotated  [language]`.
    pairs: PathBuf,
    #[arg(long, default_value_t = DEFAULT_THETA)]
    theta: f64,
    /// Merge candidates that differ only in context.
    #[arg(long)]
    context_free: bool,
    /// One candidate per edit instead of per run of adjacent edits.
    #[arg(long)]
    per_operation: bool,
    /// Half-cost substitutions between phones sharing a place of articulation.
    #[arg(long)]
    place_discount: bool,
    /// Literature rule file to split the mined rules against.
    #[arg(long, value_name = "FILE")]
    literature: Option<PathBuf>,
    /// Mined rule file (default: stdout).
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Category report file (default: stdout).
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TiersArgs {
    #[arg(long, value_name = "FILE")]
    profiles: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_P_HIGH)]
    p_high: f64,
    #[arg(long, default_value_t = DEFAULT_P_MID)]
    p_mid: f64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    rules: RuleArgs,
    #[arg(long, value_name = "FILE")]
    profiles: Option<PathBuf>,
    /// Rule-to-characteristic map.
    #[arg(long, value_name = "FILE")]
    tags: Option<PathBuf>,
    /// Compare with expected verdicts (the shipped ones without a path).
    #[arg(long, value_name = "FILE", num_args = 0..=1)]
    fixture: Option<Option<PathBuf>>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KappaArgs {
    /// Two label columns, one item per line.
    labels: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConvertArgs {
    tokens: String,
    #[arg(long, default_value = "arpabet")]
    from: PhoneSet,
    #[arg(long, default_value = "cps")]
    to: PhoneSet,
    #[arg(long)]
    lenient: bool,
}

/// Failure with a specific exit status.
#[derive(Debug)]
struct Exit(u8, String);

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.1)
    }
}

impl std::error::Error for Exit {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if let Some(Exit(code, _)) = err.downcast_ref::<Exit>() {
        return *code;
    }
    match err.downcast_ref::<CoreError>() {
        Some(e) if e.is_mapping() => 2,
        _ => 1,
    }
}

struct Env {
    source: FixtureSource,
    table: SymbolTable,
}

impl Env {
    fn new(cli: &Cli) -> Result<Self> {
        let source = match &cli.data_dir {
            Some(d) => FixtureSource::dir(d),
            None => FixtureSource::embedded(),
        };
        let table = match &cli.symbols {
            Some(p) => SymbolTable::load(p)?,
            None => source.symbol_table()?,
        };
        Ok(Env { source, table })
    }

    fn rules(&self, args: &RuleArgs) -> Result<RuleSet> {
        let Some((first, rest)) = args.rules.split_first() else {
            return Ok(self.source.default_rules(&self.table)?);
        };
        let mut set = RuleSet::load(first, &self.table)?;
        for p in rest {
            set.merge(&RuleSet::load(p, &self.table)?);
        }
        Ok(set)
    }

    fn profiles(&self, path: &Option<PathBuf>) -> Result<Vec<accentforge_core::LanguageProfile>> {
        Ok(match path {
            Some(p) => load_profiles(p, &self.table)?,
            None => self.source.profiles(&self.table)?,
        })
    }
}

fn parse_scope(scope: &str) -> Result<RuleQuery> {
    let mut q = RuleQuery::universal();
    if scope == "universal" {
        return Ok(q);
    }
    if let Some(list) = scope.strip_prefix("lang:") {
        q.languages
            .extend(list.split(',').map(|s| s.trim().to_string()));
    } else if let Some(list) = scope.strip_prefix("group:") {
        for g in list.split(',') {
            let g = g.trim().trim_start_matches('g');
            q.groups
                .insert(g.parse().with_context(|| format!("bad group `{g}`"))?);
        }
    } else {
        bail!("scope must be `universal`, `lang:<names>` or `group:<numbers>`, got `{scope}`");
    }
    Ok(q)
}

fn write_output(path: &Option<PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn adapt(env: &Env, a: &AdaptArgs) -> Result<()> {
    let mode = if a.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    let rules = env.rules(&a.rules)?.select(&parse_scope(&a.scope)?)?;
    let loaded = Lexicon::load(&a.lexicon, a.from_set, &env.table, mode)?;
    let (adapted, traces) = loaded.lexicon.adapt_traced(&rules.compile());
    let text = adapted.emit(a.to_set, &env.table, mode)?;
    write_output(&a.out, &text)?;

    if let Some(path) = &a.trace {
        #[derive(Serialize)]
        struct Line<'a> {
            word: &'a str,
            steps: &'a [accentforge_core::TraceStep],
        }
        let mut out = String::new();
        for (entry, trace) in adapted.entries.iter().zip(&traces) {
            if !trace.is_empty() {
                out.push_str(&serde_json::to_string(&Line {
                    word: &entry.word,
                    steps: &trace.steps,
                })?);
                out.push('\n');
            }
        }
        std::fs::write(path, out).with_context(|| format!("writing {}", path.display()))?;
    }

    let s = stats(&traces);
    if a.json {
        #[derive(Serialize)]
        struct Summary<'a> {
            #[serde(flatten)]
            stats: &'a accentforge_core::AdaptStats,
            warnings: usize,
        }
        eprint!(
            "{}",
            to_json(&Summary {
                stats: &s,
                warnings: loaded.warnings
            })?
        );
    } else {
        eprintln!(
            "adapted {} entries: {} changed, {} rule applications",
            s.entries, s.changed, s.applications
        );
        if loaded.warnings > 0 {
            eprintln!("warning: {} unreadable tokens or lines", loaded.warnings);
        }
    }
    Ok(())
}

fn mine(env: &Env, a: &MineArgs) -> Result<()> {
    let pairs = mining::load_pairs(&a.pairs, &env.table)?;
    let config = MiningConfig {
        theta: a.theta,
        grouping: if a.per_operation {
            Grouping::PerOperation
        } else {
            Grouping::MaximalRun
        },
        context_free: a.context_free,
        place_discount: a.place_discount,
    };
    let result = mining::mine(&pairs, &config, &env.table)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    let mined = result.rule_set();
    let partition = match &a.literature {
        Some(p) => Some(categorize(
            mined.rules(),
            RuleSet::load(p, &env.table)?.rules(),
        )),
        None => None,
    };

    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            pairs: usize,
            theta: f64,
            accepted: &'a [accentforge_core::CandidateRule],
            rejected: usize,
            partition: Option<&'a accentforge_core::CategoryPartition>,
        }
        return write_output(
            &a.out,
            &to_json(&Report {
                pairs: pairs.len(),
                theta: a.theta,
                accepted: &result.accepted,
                rejected: result.rejected,
                partition: partition.as_ref(),
            })?,
        );
    }

    let mut text = format!("# mined from {} pairs at theta {}\n", pairs.len(), a.theta);
    for (rule, c) in mined.rules().iter().zip(&result.accepted) {
        writeln!(
            text,
            "{rule} # {}/{} = {:.3}",
            c.count, c.opportunity, c.rate
        )?;
    }
    write_output(&a.out, &text)?;

    if let Some(part) = partition {
        let mut report = String::new();
        let sections = [
            ("category 1 (mined and literature)", &part.cat1),
            ("category 2 (mined only)", &part.cat2),
            ("category 3 (literature only)", &part.cat3),
        ];
        for (title, rules) in sections {
            writeln!(report, "# {title}: {}", rules.len())?;
            for r in rules {
                writeln!(report, "{r}")?;
            }
        }
        write_output(&a.report, &report)?;
    }
    Ok(())
}

fn tiers(env: &Env, a: &TiersArgs) -> Result<()> {
    let profiles = env.profiles(&a.profiles)?;
    let report = tier_assignment(
        &phoneme_frequencies(&profiles),
        profiles.len(),
        a.p_high,
        a.p_mid,
    )?;
    if a.json {
        return write_output(&None, &to_json(&report)?);
    }
    let mut rows: Vec<_> = report.frequencies.iter().collect();
    rows.sort_by(|x, y| y.1.cmp(x.1).then_with(|| x.0.cmp(y.0)));
    let mut out = String::new();
    writeln!(out, "phone\tlanguages\ttier")?;
    for (phone, freq) in rows {
        writeln!(out, "{phone}\t{freq}\t{}", report.tiers[phone].name())?;
    }
    writeln!(out)?;
    writeln!(out, "languages: {}", report.languages)?;
    writeln!(out, "phones: {}", report.frequencies.len())?;
    writeln!(
        out,
        "thresholds: high >= {}, mid >= {}",
        report.t_high, report.t_mid
    )?;
    for tier in [Tier::High, Tier::Mid, Tier::Low] {
        writeln!(out, "{}: {}", tier.name(), report.members(tier).count())?;
    }
    let universal: Vec<&str> = report.universal_phones.iter().map(|p| p.as_str()).collect();
    writeln!(
        out,
        "universal ({}): {}",
        universal.len(),
        universal.join(" ")
    )?;
    write_output(&None, &out)
}

fn validate(env: &Env, a: &ValidateArgs) -> Result<()> {
    let rules = env.rules(&a.rules)?;
    let profiles = env.profiles(&a.profiles)?;
    let tags = match &a.tags {
        Some(p) => RuleTagMap::load(p)?,
        None => env.source.rule_tags()?,
    };
    let verdicts = validate_rules(&rules, &tags, &profiles, &ValidationConfig::default());
    if a.json {
        write_output(&None, &to_json(&verdicts)?)?;
    } else {
        let mut out = String::new();
        for v in &verdicts {
            let tags: Vec<&str> = v.tags.iter().map(|t| t.name()).collect();
            let tags = if tags.is_empty() {
                "-".to_string()
            } else {
                tags.join(",")
            };
            writeln!(
                out,
                "{}\t{}\t{}\t{} languages",
                v.rule,
                v.verdict,
                tags,
                v.languages.len()
            )?;
        }
        write_output(&None, &out)?;
    }

    if let Some(path) = &a.fixture {
        let fixture = match path {
            Some(p) => VerdictFixture::load(p)?,
            None => env.source.verdicts()?,
        };
        let mismatches = fixture.compare(&verdicts);
        if !mismatches.is_empty() {
            let lines: Vec<String> = mismatches.iter().map(|m| m.to_string()).collect();
            return Err(Exit(3, format!("fixture mismatch:\n  {}", lines.join("\n  "))).into());
        }
        eprintln!("all {} verdicts match the fixture", fixture.0.len());
    }
    Ok(())
}

fn kappa(a: &KappaArgs) -> Result<()> {
    let (x, y) = mining::load_labels(&a.labels)?;
    let k = mining::cohens_kappa(&x, &y)?;
    let text = if a.json {
        to_json(&k)?
    } else {
        format!(
            "kappa\t{:.6}\np_o\t{:.6}\np_e\t{:.6}\nitems\t{}\n",
            k.kappa,
            k.p_o,
            k.p_e,
            x.len()
        )
    };
    write_output(&None, &text)
}

fn convert(env: &Env, a: &ConvertArgs) -> Result<()> {
    let mode = if a.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    };
    let parsed = env.table.parse_phone_string(&a.tokens, a.from, mode)?;
    let out = env.table.convert(&parsed.seq, a.to, mode)?;
    write_output(&None, &format!("{out}\n"))
}

fn run(cli: &Cli) -> Result<()> {
    let env = Env::new(cli)?;
    match &cli.command {
        Command::Adapt(a) => adapt(&env, a),
        Command::Mine(a) => mine(&env, a),
        Command::Tiers(a) => tiers(&env, a),
        Command::Validate(a) => validate(&env, a),
        Command::Kappa(a) => kappa(a),
        Command::Convert(a) => convert(&env, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
