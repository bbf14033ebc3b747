use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use grpaut::algebra::{GroupKind, GroupSpec};
use grpaut::automaton::{self, validate, AutomatonError, GroupAutomaton, Severity};
use grpaut::constructions::{
    homomorphic_image, kambites_convert, posrat_spec, verify_embedding, ConstructionError, Embedding,
    EmbeddingKind,
};
use grpaut::gallery::{self, GalleryError, CATALOG};
use grpaut::growth::{
    ball, counting_audit, dissimilar_from_ball, lk_oracle, lk_witness, resolve_generators, verify_witness,
    word_problem_oracle, GrowthError, LanguageOracle, WitnessSet,
};
use grpaut::report::{bundle, BundleError, BundleItem};
use grpaut::simulator::{
    audit_strong, audit_weak, enumerate, format_run, run, words_up_to, Budget, Limits, SimError, Verdict,
};

/// Exit status for anything other than a run verdict.
enum Failure {
    Usage(String),
    Data(String),
    Cap(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Data(_) => 65,
            Failure::Cap(_) => 70,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Data(m) | Failure::Cap(m) => m,
        }
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::ConfigurationCap(_) | SimError::EnumerationCap { .. } => Failure::Cap(e.to_string()),
            SimError::BadBudget(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<GrowthError> for Failure {
    fn from(e: GrowthError) -> Self {
        match e {
            GrowthError::Cap { .. } => Failure::Cap(e.to_string()),
            GrowthError::Sim(s) => s.into(),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<GalleryError> for Failure {
    fn from(e: GalleryError) -> Self {
        match e {
            GalleryError::Unknown(_) => Failure::Usage(e.to_string()),
            GalleryError::Sim(s) => s.into(),
            GalleryError::Automaton(_) => Failure::Data(e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::UnknownEmbedding(_) => Failure::Usage(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl From<AutomatonError> for Failure {
    fn from(e: AutomatonError) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<BundleError> for Failure {
    fn from(e: BundleError) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<ExitCode, Failure>;

#[derive(Parser)]
#[command(name = "grpaut", version, about = "Workbench for finite automata with a group register")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Csv,
    Jsonl,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Cap on stored configurations (or ball elements).
    #[arg(long, default_value_t = Limits::default().max_configurations)]
    max_configs: usize,
    /// Cap on enumerated words.
    #[arg(long, default_value_t = Limits::default().max_words)]
    max_words: usize,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        Limits {
            max_configurations: self.max_configs,
            max_words: self.max_words,
        }
    }
}

/// A group given as `--group "<kind>"` plus optional `--gen name=literal`.
#[derive(Args, Clone)]
struct GroupArgs {
    /// Group kind, e.g. "free 2", "abelian 2", "heisenberg".
    #[arg(long)]
    group: String,
    /// Extra generator binding `name=literal`; repeatable.
    #[arg(long = "gen", value_name = "NAME=LITERAL")]
    bind: Vec<String>,
    /// Comma-separated generating set; defaults to the kind's standard set.
    #[arg(long, value_delimiter = ',')]
    gens: Option<Vec<String>>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, Failure> {
        let kind = GroupKind::parse(&self.group).map_err(|e| Failure::Usage(e.to_string()))?;
        let mut spec = GroupSpec::new(kind);
        for b in &self.bind {
            let (name, lit) = b
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected NAME=LITERAL, got `{b}`")))?;
            let g = spec.kind().parse_element(lit).map_err(|e| Failure::Data(e.to_string()))?;
            spec.bind(name.trim(), g).map_err(|e| Failure::Data(e.to_string()))?;
        }
        Ok(spec)
    }

    fn generators(&self, spec: &GroupSpec) -> Result<Vec<usize>, Failure> {
        Ok(resolve_generators(spec, self.gens.as_deref())?)
    }
}

fn budget_arg(text: &str) -> Result<Budget, String> {
    Budget::parse(text).map_err(|e| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Decide one input; exit 0 accepted, 1 rejected, 2 budget exhausted.
    Run {
        #[arg(long)]
        automaton: PathBuf,
        /// Input word; symbols separated by spaces or written contiguously.
        #[arg(long, default_value = "")]
        input: String,
        /// `a,b` for t(n) = a·n + b, or a fixed step cap.
        #[arg(long, value_parser = budget_arg, default_value = "2,16")]
        budget: Budget,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Verdicts for every input up to a length.
    Enum {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_parser = budget_arg, default_value = "2,16")]
        budget: Budget,
        /// Print accepted inputs only.
        #[arg(long)]
        accepted: bool,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Automaton conversions.
    #[command(subcommand)]
    Convert(ConvertCommand),
    /// Apply an embedding (sanov, diag, block, heis-abelian) to an
    /// automaton, or sample-check the embedding itself.
    Embed {
        name: String,
        #[arg(long, required_unless_present = "verify")]
        automaton: Option<PathBuf>,
        /// Check the embedding on this many random word pairs instead.
        #[arg(long)]
        verify: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ball sizes g(r) for r up to the radius.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
        /// Shorthand for `--format csv`.
        #[arg(long, conflicts_with = "format")]
        csv: bool,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Uniformly dissimilar string sets.
    #[command(subcommand)]
    Dissim(DissimCommand),
    /// Built-in automata.
    #[command(subcommand)]
    Gallery(GalleryCommand),
    /// Time-bound and counting audits.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Copy output files into a directory with a checksummed manifest.
    Bundle {
        #[arg(long)]
        out: PathBuf,
        /// `PATH` or `PATH::PARAMETERS`.
        inputs: Vec<String>,
    },
}

#[derive(Subcommand)]
enum ConvertCommand {
    /// Polycyclic automaton to an equivalent free-group automaton.
    Kambites {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum DissimCommand {
    /// Ball-based witness for the word problem of a group.
    Build {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Check a witness file; exit 1 with a counterexample when it fails.
    Verify {
        #[arg(long)]
        witness: PathBuf,
        #[command(flatten)]
        group: Option<GroupArgs>,
        /// Verify against L_k instead of a word problem.
        #[arg(long, conflicts_with = "group")]
        lk: Option<usize>,
    },
    /// Odometer witness for L_k.
    Lk {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GalleryCommand {
    List {
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print an entry's automaton file.
    Emit {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulator-versus-oracle agreement; exit 1 on any disagreement.
    Verify {
        /// Entries to check; all catalog entries when omitted.
        names: Vec<String>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Subcommand)]
enum AuditCommand {
    /// Minimum accepting runs against t(n), with an extended search.
    Weak {
        #[arg(long)]
        automaton: PathBuf,
        /// Word to audit; repeatable.
        #[arg(long)]
        word: Vec<String>,
        /// File with one word per line.
        #[arg(long)]
        words: Option<PathBuf>,
        /// Audit every word up to this length.
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_parser = budget_arg, default_value = "2,16")]
        budget: Budget,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Runs of any kind that outlive t(n).
    Strong {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_parser = budget_arg, default_value = "2,16")]
        budget: Budget,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Reachable configurations against a dissimilar witness.
    Configs {
        #[arg(long)]
        automaton: PathBuf,
        /// `L<k>` or a gallery entry name.
        #[arg(long)]
        oracle: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = budget_arg, default_value = "2,16")]
        budget: Budget,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(64) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Run {
            automaton,
            input,
            budget,
            limits,
        } => cmd_run(&automaton, &input, budget, limits.limits()),
        Command::Enum {
            automaton,
            max_len,
            budget,
            accepted,
            format,
            limits,
        } => cmd_enum(&automaton, max_len, budget, accepted, format, limits.limits()),
        Command::Convert(ConvertCommand::Kambites { automaton, out }) => {
            let a = load(&automaton)?;
            let converted = kambites_convert(&a)?;
            emit(out.as_deref(), &converted.serialize())
        }
        Command::Embed {
            name,
            automaton,
            verify,
            seed,
            out,
        } => cmd_embed(&name, automaton.as_deref(), verify, seed, out.as_deref()),
        Command::Growth {
            group,
            radius,
            csv,
            format,
            limits,
        } => {
            let format = if csv { Format::Csv } else { format.unwrap_or_default() };
            cmd_growth(&group, radius, format, limits.limits())
        }
        Command::Dissim(c) => cmd_dissim(c),
        Command::Gallery(c) => cmd_gallery(c),
        Command::Audit(c) => cmd_audit(c),
        Command::Bundle { out, inputs } => {
            let items: Vec<BundleItem> = inputs
                .iter()
                .map(|i| match i.split_once("::") {
                    Some((p, params)) => BundleItem::new(p, params),
                    None => BundleItem::new(i.as_str(), ""),
                })
                .collect();
            let manifest = bundle(&out, &items)?;
            emit(None, &manifest.serialize())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

/// Parses an automaton file and reports warnings on stderr.
fn load(path: &Path) -> Result<GroupAutomaton, Failure> {
    let a = automaton::parse(&read(path)?).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    for f in validate(&a) {
        if f.severity == Severity::Warning {
            eprintln!("warning: {}: {f}", path.display());
        }
    }
    Ok(a)
}

fn emit(out: Option<&Path>, text: &str) -> Outcome {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?,
        None => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Renders rows as text (space separated), csv (with header) or jsonl.
fn table(format: Format, header: &[&str], rows: &[Vec<serde_json::Value>]) -> String {
    let cell = |v: &serde_json::Value| match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Null => "-".to_string(),
        other => other.to_string(),
    };
    let mut out = String::new();
    match format {
        Format::Text => {
            for row in rows {
                let line: Vec<String> = row.iter().map(cell).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "{}", header.join(","));
            for row in rows {
                let line: Vec<String> = row
                    .iter()
                    .map(|v| match v {
                        serde_json::Value::Null => String::new(),
                        v => csv_field(&cell(v)),
                    })
                    .collect();
                let _ = writeln!(out, "{}", line.join(","));
            }
        }
        Format::Jsonl => {
            for row in rows {
                let obj: serde_json::Map<String, serde_json::Value> =
                    header.iter().map(|h| h.to_string()).zip(row.iter().cloned()).collect();
                let _ = writeln!(out, "{}", serde_json::Value::Object(obj));
            }
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn word_text(a: &GroupAutomaton, w: &[usize]) -> String {
    if w.is_empty() {
        "_".to_string()
    } else {
        a.format_input(w)
    }
}

fn cmd_run(path: &Path, input: &str, budget: Budget, limits: Limits) -> Outcome {
    let a = load(path)?;
    let word = if input == "_" { Vec::new() } else { a.parse_input(input)? };
    let result = run(&a, &word, budget, limits)?;
    let _ = io::stdout().write_all(format_run(&a, &word, &result).as_bytes());
    Ok(ExitCode::from(match result.verdict {
        Verdict::Accepted => 0,
        Verdict::RejectedWithinBudget => 1,
        Verdict::BudgetExhausted => 2,
    }))
}

fn cmd_enum(path: &Path, max_len: usize, budget: Budget, accepted: bool, format: Format, limits: Limits) -> Outcome {
    let a = load(path)?;
    let rows: Vec<Vec<serde_json::Value>> = enumerate(&a, max_len, budget, limits)?
        .into_iter()
        .filter(|r| !accepted || r.verdict == Verdict::Accepted)
        .map(|r| {
            vec![
                json!(word_text(&a, &r.word)),
                json!(r.word.len()),
                json!(r.verdict.to_string()),
                json!(r.min_steps),
            ]
        })
        .collect();
    emit(None, &table(format, &["word", "length", "verdict", "min_steps"], &rows))
}

fn default_source(kind: EmbeddingKind) -> Result<GroupSpec, Failure> {
    Ok(match kind {
        EmbeddingKind::Diag => posrat_spec(&[("two", 2, 1), ("third", 1, 3), ("threehalf", 3, 2)])
            .map_err(|e| Failure::Data(e.to_string()))?,
        other => GroupSpec::new(other.source_kind()),
    })
}

fn cmd_embed(name: &str, automaton: Option<&Path>, verify: Option<usize>, seed: u64, out: Option<&Path>) -> Outcome {
    let kind = EmbeddingKind::parse(name)?;
    let source = match automaton {
        Some(p) => Some(load(p)?),
        None => None,
    };
    if let Some(samples) = verify {
        let spec = match &source {
            Some(a) => a.spec().clone(),
            None => default_source(kind)?,
        };
        let e = Embedding::new(kind, &spec)?;
        let report = verify_embedding(&e, samples, seed);
        let mut text = format!("embedding={kind}\nsamples={}\nfailures={}\n", report.samples, report.failures.len());
        for f in &report.failures {
            let _ = writeln!(text, "failure: {f}");
        }
        emit(out, &text)?;
        return Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) });
    }
    let a = source.expect("automaton required without --verify");
    let e = Embedding::new(kind, a.spec())?;
    emit(out, &homomorphic_image(&a, &e)?.serialize())
}

fn cmd_growth(group: &GroupArgs, radius: usize, format: Format, limits: Limits) -> Outcome {
    let spec = group.spec()?;
    let gens = group.generators(&spec)?;
    let table_ = ball(&spec, &gens, radius, limits.max_configurations)?;
    let names = table_.generator_names();
    let text = match format {
        Format::Csv => {
            eprintln!("generators: {}", names.join(" "));
            table_.to_csv()
        }
        Format::Text => {
            let mut s = format!("# generators {}\n", names.join(" "));
            for (r, g) in table_.sizes().iter().enumerate() {
                let _ = writeln!(s, "{r} {g}");
            }
            s
        }
        Format::Jsonl => {
            let rows: Vec<_> = table_
                .sizes()
                .iter()
                .enumerate()
                .map(|(r, g)| vec![json!(r), json!(g), json!(names)])
                .collect();
            table(format, &["r", "g", "generators"], &rows)
        }
    };
    emit(None, &text)
}

fn cmd_dissim(c: DissimCommand) -> Outcome {
    match c {
        DissimCommand::Build { group, n, out, limits } => {
            let spec = group.spec()?;
            let gens = group.generators(&spec)?;
            let ws = dissimilar_from_ball(&spec, &gens, n, limits.limits().max_configurations)?;
            emit(out.as_deref(), &ws.serialize())
        }
        DissimCommand::Lk { k, m, out } => {
            if k == 0 {
                return Err(Failure::Usage("k must be at least 1".into()));
            }
            emit(out.as_deref(), &lk_witness(k, m).serialize())
        }
        DissimCommand::Verify { witness, group, lk } => {
            let oracle: LanguageOracle = match (group, lk) {
                (_, Some(k)) if k > 0 => lk_oracle(k),
                (Some(g), None) => {
                    let spec = g.spec()?;
                    word_problem_oracle(&spec, &g.generators(&spec)?)?
                }
                _ => return Err(Failure::Usage("give --group or --lk".into())),
            };
            let ws = WitnessSet::parse(&read(&witness)?, &oracle)?;
            let check = verify_witness(&ws, &oracle);
            match check.counterexample {
                None if check.ok => {
                    emit(None, &format!("ok oracle={} n={} size={}\n", oracle.name(), ws.n, ws.len()))
                }
                other => {
                    let why = other.map_or_else(
                        || "verification failed".to_string(),
                        |(i, j, reason)| format!("entry {i} against entry {j}: {reason}"),
                    );
                    emit(None, &format!("fail oracle={} n={}: {why}\n", oracle.name(), ws.n))?;
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn cmd_gallery(c: GalleryCommand) -> Outcome {
    match c {
        GalleryCommand::List { format } => {
            let mut rows = Vec::new();
            for name in CATALOG {
                let e = gallery::build(name)?;
                rows.push(vec![
                    json!(e.name),
                    json!(e.automaton.spec().kind().to_string()),
                    json!(e.budget.to_string()),
                    json!(e.max_len),
                    json!(e.description),
                ]);
            }
            if let Format::Text = format {
                let mut s = String::new();
                for r in &rows {
                    let _ = writeln!(
                        s,
                        "{:<14} {:<28} {:<8} {:>3}  {}",
                        r[0].as_str().unwrap_or_default(),
                        r[1].as_str().unwrap_or_default(),
                        r[2].as_str().unwrap_or_default(),
                        r[3].to_string(),
                        r[4].as_str().unwrap_or_default()
                    );
                }
                return emit(None, &s);
            }
            emit(None, &table(format, &["name", "group", "budget", "max_len", "description"], &rows))
        }
        GalleryCommand::Emit { name, out } => {
            let e = gallery::build(&name)?;
            let text = format!(
                "# {}: {}\n# budget {}\n{}",
                e.name,
                e.description,
                e.budget,
                e.automaton.serialize()
            );
            emit(out.as_deref(), &text)
        }
        GalleryCommand::Verify {
            names,
            max_len,
            format,
            limits,
        } => {
            let names: Vec<String> = if names.is_empty() {
                CATALOG.iter().map(|s| s.to_string()).collect()
            } else {
                names
            };
            let mut rows = Vec::new();
            let mut all_agree = true;
            for name in &names {
                let r = gallery::verify_entry(name, max_len, limits.limits())?;
                all_agree &= r.agrees();
                for (w, v, member) in &r.disagreements {
                    eprintln!("{name}: `{w}` simulator {v}, oracle member={member}");
                }
                rows.push(vec![
                    json!(r.name),
                    json!(r.max_len),
                    json!(r.words),
                    json!(r.accepted),
                    json!(r.exhausted),
                    json!(r.disagreements.len()),
                    json!(r.max_min_steps),
                    json!(r.agrees()),
                ]);
            }
            emit(
                None,
                &table(
                    format,
                    &["name", "max_len", "words", "accepted", "exhausted", "disagreements", "max_min_steps", "agrees"],
                    &rows,
                ),
            )?;
            Ok(if all_agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn cmd_audit(c: AuditCommand) -> Outcome {
    match c {
        AuditCommand::Weak {
            automaton,
            word,
            words,
            max_len,
            budget,
            format,
            limits,
        } => {
            let a = load(&automaton)?;
            let mut texts = word;
            if let Some(p) = words {
                texts.extend(read(&p)?.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from));
            }
            let mut inputs = texts
                .iter()
                .map(|t| if t == "_" { Ok(Vec::new()) } else { a.parse_input(t) })
                .collect::<Result<Vec<_>, _>>()?;
            if let Some(n) = max_len {
                inputs.extend(words_up_to(a.alphabet().len(), n, limits.limits())?);
            }
            if inputs.is_empty() {
                return Err(Failure::Usage("give --word, --words or --max-len".into()));
            }
            let report = audit_weak(&a, &inputs, budget, limits.limits())?;
            let rows: Vec<_> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        json!(word_text(&a, &r.word)),
                        json!(r.bound),
                        json!(r.min_steps),
                        json!(r.beyond_bound),
                        json!(r.unresolved),
                        json!(r.flagged()),
                    ]
                })
                .collect();
            emit(
                None,
                &table(format, &["word", "bound", "min_steps", "beyond_bound", "unresolved", "flagged"], &rows),
            )
        }
        AuditCommand::Strong {
            automaton,
            max_len,
            budget,
            format,
            limits,
        } => {
            let a = load(&automaton)?;
            let report = audit_strong(&a, max_len, budget, limits.limits())?;
            eprintln!("words_checked={} violations={}", report.words_checked, report.violations.len());
            let rows: Vec<_> = report
                .violations
                .iter()
                .map(|v| {
                    let run: Vec<String> = v.run.iter().map(|&t| a.format_transition(&a.transitions()[t])).collect();
                    vec![json!(word_text(&a, &v.word)), json!(v.bound), json!(run.join(" | "))]
                })
                .collect();
            emit(None, &table(format, &["word", "bound", "run"], &rows))
        }
        AuditCommand::Configs {
            automaton,
            oracle,
            n,
            budget,
            format,
            limits,
        } => {
            let a = load(&automaton)?;
            let oracle = gallery::oracle_by_name(&oracle)?;
            let r = counting_audit(&a, &oracle, budget, n, limits.limits())?;
            if let Format::Text = format {
                return emit(None, &r.to_string());
            }
            let row = vec![
                json!(oracle.name()),
                json!(r.n),
                json!(r.t),
                json!(r.registers),
                json!(r.states),
                json!(r.configurations),
                json!(r.witness_size),
                json!(r.flagged),
            ];
            emit(
                None,
                &table(
                    format,
                    &["oracle", "n", "t", "registers", "states", "configurations", "witness_size", "flagged"],
                    &[row],
                ),
            )
        }
    }
}
