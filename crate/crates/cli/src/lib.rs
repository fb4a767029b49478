//! The `cdlab` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code together with everything that would go to stdout and stderr, so
//! the binary and the tests share one code path.

use std::cmp::Ordering;
use std::io::Read;
use std::time::Instant;

use cdlab::generators::{
    black_single_peaked, caterpillar_group_separable, enumerate_min_abundant, fishburn_alternating,
    generate_from_never_law, s_construction, search_min_abundant, set_alternating, single_crossing, NeverLaw,
    SearchSpec,
};
use cdlab::io::{domain_json, write_domain};
use cdlab::sampling::histograms_to_csv;
use cdlab::{
    abundance_vector_upto, close_to_maximal, compare_abundance, compute_index, exact_abundance,
    find_uniform_never_subset, is_condorcet, is_discordant, is_maximal, restriction_sizes, run_experiment,
    sample_profile, AlternativeSet, Domain, ExperimentConfig, IndexKind, Profile,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

mod input;

use input::Inputs;

/// Exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DATA: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Lib(cdlab::Error),
    Context(String, Box<CliError>),
}

impl CliError {
    fn context(self, what: &str) -> CliError {
        match self {
            CliError::Usage(_) | CliError::Io(_) => self,
            other => CliError::Context(what.to_string(), Box::new(other)),
        }
    }

    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Lib(_) => EXIT_DATA,
            CliError::Context(_, inner) => inner.code(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Lib(e @ cdlab::Error::Capability { .. }) => write!(f, "{e} (--allow-long)"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Context(what, inner) => write!(f, "{what}: {inner}"),
        }
    }
}

impl From<cdlab::Error> for CliError {
    fn from(e: cdlab::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(
    name = "cdlab",
    version,
    about = "Condorcet domains: checks, abundance, generators and sampling"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, env = "CDLAB_WORKERS")]
    workers: Option<usize>,

    /// Lift the size limits on slow computations.
    #[arg(long, global = true)]
    allow_long: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct DomainArg {
    /// Domain file, or `-` for stdin.
    domain: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the domain a Condorcet domain? Exit 1 when not.
    Check(DomainArg),
    /// Is the Condorcet domain maximal? Exit 1 when not.
    Maximal(DomainArg),
    /// Extend a Condorcet domain to a maximal one.
    Close(DomainArg),
    /// Is the maximal domain discordant? Exit 1 when not.
    Discordant(DomainArg),
    /// Largest alternative subset obeying one never condition on every triple.
    UniformSubset {
        domain: String,
        /// Smallest subset worth reporting.
        #[arg(long, default_value_t = 3)]
        min_size: usize,
    },
    /// Exact abundance at subset size k; with --s, exit 1 unless (k,s)-abundant.
    Abundance {
        domain: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: Option<usize>,
        /// List the restriction size of every k-subset.
        #[arg(long)]
        all: bool,
    },
    /// Abundance vector for k = 1..n (or up to --k).
    Vector {
        domain: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Compare two domains by abundance vector.
    Compare { first: String, second: String },
    /// Restrict a domain to a set of alternatives.
    Restrict {
        domain: String,
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<u8>,
    },
    /// Build a domain from a named family.
    Generate(GenerateArgs),
    /// Diversity indices of a profile (JSON census, SOC file, or domain).
    Indices {
        profile: String,
        /// One index; all of them when omitted.
        #[arg(long)]
        index: Option<IndexKind>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Draw agents uniformly from a domain.
    Sample {
        domain: String,
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Abundance histograms of sampled profiles.
    Experiment {
        domain: String,
        #[arg(long)]
        agents: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        k: Vec<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Read a PrefLib SOC file and summarise its support.
    IngestSoc {
        file: String,
        /// Drop this alternative first.
        #[arg(long)]
        without: Option<u8>,
        /// Drop the alternative every agent ranks first, if any.
        #[arg(long)]
        drop_universal_top: bool,
        /// Keep only the m most popular alternatives (lowest mean position).
        #[arg(long)]
        top: Option<usize>,
        /// Emit the support domain instead of the report.
        #[arg(long)]
        support: bool,
    },
    /// Canonical representative of the domain's isomorphism class.
    Canon(DomainArg),
    /// Smallest-size search for a (k,s)-abundant Condorcet domain.
    SearchMin {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        s: usize,
        /// Largest domain size to try (default: s).
        #[arg(long)]
        max_size: Option<usize>,
        /// Enumerate every isomorphism class at the smallest size found.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    BlackSp,
    ArrowSp,
    Fishburn,
    SetAlternating,
    CaterpillarGs,
    SingleCrossing,
    SConstruction,
    NeverLaw,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Alternatives for set-alternating, comma separated.
    #[arg(long, value_delimiter = ',')]
    set: Vec<u8>,
    /// Never-law file for never-law and arrow-sp.
    #[arg(long)]
    law: Option<String>,
    /// Domain files for s-construction.
    #[arg(long)]
    left: Option<String>,
    #[arg(long)]
    right: Option<String>,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I, stdin: &mut dyn Read) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandOutcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let mut out = CommandOutcome::default();
    // only `-` arguments read stdin, and each command reads at most one
    let piped = if argv.iter().skip(1).any(|a| a == "-") {
        let mut s = String::new();
        if let Err(e) = stdin.read_to_string(&mut s) {
            out.code = EXIT_DATA;
            out.stderr = format!("error: cannot read stdin: {e}\n");
            return out;
        }
        Some(s)
    } else {
        None
    };
    let result = match cli.workers {
        Some(0) => Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => match rayon::ThreadPoolBuilder::new().num_threads(w).build() {
            Ok(pool) => pool.install(|| execute(&cli, piped.clone(), &mut out)),
            Err(e) => Err(CliError::Io(format!("cannot start worker pool: {e}"))),
        },
        None => execute(&cli, piped.clone(), &mut out),
    };
    match result {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = e.code();
            out.stderr.push_str(&format!("error: {e}\n"));
        }
    }
    out
}

struct Ctx<'o> {
    format: Option<Format>,
    allow_long: bool,
    out: &'o mut CommandOutcome,
}

impl Ctx<'_> {
    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }

    fn note(&mut self, msg: impl AsRef<str>) {
        self.out.stderr.push_str(msg.as_ref());
        self.out.stderr.push('\n');
    }

    fn emit(&mut self, text: impl AsRef<str>) {
        self.out.stdout.push_str(text.as_ref());
        if !self.out.stdout.ends_with('\n') {
            self.out.stdout.push('\n');
        }
    }

    fn json(&mut self, v: &Value) {
        let s = serde_json::to_string_pretty(v).expect("JSON values always serialise");
        self.emit(s);
    }

    /// Report commands: JSON by default, `key: value` lines as text.
    fn report(&mut self, v: Value, csv: Option<String>) -> CliResult<()> {
        match self.format(Format::Json) {
            Format::Json => self.json(&v),
            Format::Text => self.emit(text_report(&v)),
            Format::Csv => match csv {
                Some(c) => self.emit(c),
                None => return Err(CliError::Usage("this command has no CSV output".into())),
            },
        }
        Ok(())
    }

    /// Domain-producing commands: domain text by default so output pipes
    /// into the next command.
    fn domain(&mut self, d: &Domain) -> CliResult<()> {
        match self.format(Format::Text) {
            Format::Text => self.emit(write_domain(d)),
            Format::Json => self.json(&serde_json::to_value(domain_json(d)).expect("serialisable")),
            Format::Csv => return Err(CliError::Usage("domains have no CSV output".into())),
        }
        Ok(())
    }

    fn profile(&mut self, p: &Profile) -> CliResult<()> {
        match self.format(Format::Json) {
            Format::Json => self.json(&serde_json::to_value(p.to_json()).expect("serialisable")),
            Format::Text => self.emit(soc_text(p)?),
            Format::Csv => {
                let mut s = String::from("count,order\n");
                for (c, o) in p.census() {
                    s.push_str(&format!("{c},{}\n", o.compact()));
                }
                self.emit(s)
            }
        }
        Ok(())
    }

    /// Wraps a long computation with progress lines on stderr.
    fn timed<T>(&mut self, what: &str, long: bool, f: impl FnOnce() -> T) -> T {
        if !long {
            return f();
        }
        self.note(format!("{what}: started"));
        let start = Instant::now();
        let v = f();
        self.note(format!(
            "{what}: finished in {:.1}s",
            start.elapsed().as_secs_f64()
        ));
        v
    }
}

fn soc_text(p: &Profile) -> CliResult<String> {
    if AlternativeSet::range(p.n()).ok().as_ref() != Some(p.alternatives()) {
        return Err(CliError::Usage(
            "SOC output needs alternatives 1..n; use --format json".into(),
        ));
    }
    let mut s = format!(
        "# DATA TYPE: soc\n# NUMBER ALTERNATIVES: {}\n# NUMBER VOTERS: {}\n",
        p.n(),
        p.agents()
    );
    let mut rows: Vec<_> = p.census().to_vec();
    rows.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    for (c, o) in rows {
        let r: Vec<String> = o.ranking().iter().map(u8::to_string).collect();
        s.push_str(&format!("{c}: {}\n", r.join(",")));
    }
    Ok(s)
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = a.iter().map(text_value).collect();
            format!("({})", parts.join(","))
        }
        other => other.to_string(),
    }
}

fn text_report(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, x)| format!("{k}: {}", text_value(x)))
            .collect::<Vec<_>>()
            .join("\n"),
        other => text_value(other),
    }
}

fn predicate(b: bool) -> i32 {
    if b {
        EXIT_OK
    } else {
        EXIT_FALSE
    }
}

fn ordering_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn execute(cli: &Cli, stdin: Option<String>, out: &mut CommandOutcome) -> CliResult<i32> {
    let mut inputs = Inputs::new(stdin);
    let mut ctx = Ctx {
        format: cli.format,
        allow_long: cli.allow_long,
        out,
    };
    match &cli.command {
        Command::Check(a) => {
            let d = inputs.domain(&a.domain)?;
            let r = is_condorcet(&d);
            let conditions: serde_json::Map<String, Value> = r
                .per_triple
                .iter()
                .map(|(t, cs)| {
                    (
                        t.to_string(),
                        json!(cs.iter().map(|c| c.fishburn.to_string()).collect::<Vec<_>>()),
                    )
                })
                .collect();
            let mut v = json!({ "is_cd": r.is_cd, "n": d.n(), "size": d.len() });
            if let Some(w) = r.witness {
                v["witness"] = json!(w.to_string());
            }
            if ctx.format(Format::Json) == Format::Json {
                v["conditions"] = Value::Object(conditions);
            }
            ctx.report(v, None)?;
            Ok(predicate(r.is_cd))
        }
        Command::Maximal(a) => {
            let d = inputs.domain(&a.domain)?;
            let m = is_maximal(&d)?;
            ctx.report(json!({ "maximal": m, "size": d.len() }), None)?;
            Ok(predicate(m))
        }
        Command::Close(a) => {
            let d = inputs.domain(&a.domain)?;
            let m = close_to_maximal(&d)?;
            ctx.note(format!("closed {} orders to {}", d.len(), m.len()));
            ctx.domain(&m)?;
            Ok(EXIT_OK)
        }
        Command::Discordant(a) => {
            let d = inputs.domain(&a.domain)?;
            let r = is_discordant(&d)?;
            let v = serde_json::to_value(&r).expect("serialisable");
            let mut csv = String::from("removed,size,maximal\n");
            for s in &r.subsets {
                csv.push_str(&format!("{},{},{}\n", s.removed, s.size, s.maximal));
            }
            ctx.report(v, Some(csv))?;
            Ok(predicate(r.discordant))
        }
        Command::UniformSubset { domain, min_size } => {
            let d = inputs.domain(domain)?;
            match find_uniform_never_subset(&d, *min_size)? {
                Some(u) => {
                    let r = d.restrict(&u.alternatives)?;
                    ctx.report(
                        json!({
                            "found": true,
                            "alternatives": u.alternatives,
                            "condition": u.condition,
                            "restricted_size": r.len(),
                        }),
                        None,
                    )?;
                    Ok(EXIT_OK)
                }
                None => {
                    ctx.report(json!({ "found": false }), None)?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Abundance { domain, k, s, all } => {
            let d = inputs.domain(domain)?;
            let a = exact_abundance(&d, *k)?;
            let mut v = json!({ "k": a.k, "s": a.s, "argmin": a.argmin });
            if let Some(s) = s {
                v["target"] = json!(s);
                v["abundant"] = json!(a.s >= *s);
            }
            let mut csv = None;
            if *all {
                let sizes = restriction_sizes(&d, *k)?;
                let mut c = String::from("subset,size\n");
                for (set, n) in &sizes {
                    let labels: Vec<String> = set.labels().iter().map(u8::to_string).collect();
                    c.push_str(&format!("{},{n}\n", labels.join(" ")));
                }
                csv = Some(c);
                v["restrictions"] = sizes
                    .iter()
                    .map(|(set, n)| json!({ "subset": set, "size": n }))
                    .collect();
            }
            ctx.report(v, csv)?;
            Ok(s.map_or(EXIT_OK, |s| predicate(a.s >= s)))
        }
        Command::Vector { domain, k } => {
            let d = inputs.domain(domain)?;
            let max_k = k.unwrap_or(d.n());
            let long = ctx.allow_long && d.n() > cdlab::abundance::DEFAULT_VECTOR_CAP;
            let allow = ctx.allow_long;
            let v = ctx.timed("abundance vector", long, || {
                abundance_vector_upto(&d, max_k, allow)
            })?;
            let mut csv = String::from("k,s\n");
            for (i, s) in v.entries.iter().enumerate() {
                csv.push_str(&format!("{},{s}\n", i + 1));
            }
            if ctx.format(Format::Text) == Format::Text {
                ctx.emit(text_value(&json!(v.entries)));
            } else {
                ctx.report(
                    json!({ "n": d.n(), "entries": v.entries, "argmins": v.argmins }),
                    Some(csv),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Compare { first, second } => {
            let a = inputs.domain(first)?;
            let b = inputs.domain(second)?;
            let ord = compare_abundance(&a, &b)?;
            let va = abundance_vector_upto(&a, a.n(), ctx.allow_long)?;
            let vb = abundance_vector_upto(&b, b.n(), ctx.allow_long)?;
            ctx.report(
                json!({ "first": va.entries, "second": vb.entries, "order": ordering_name(ord) }),
                None,
            )?;
            Ok(EXIT_OK)
        }
        Command::Restrict { domain, set } => {
            let d = inputs.domain(domain)?;
            let subset = AlternativeSet::new(set.iter().copied())?;
            ctx.domain(&d.restrict(&subset)?)?;
            Ok(EXIT_OK)
        }
        Command::Generate(g) => {
            let d = generate(g, &mut inputs, &mut ctx)?;
            ctx.domain(&d)?;
            Ok(EXIT_OK)
        }
        Command::Indices { profile, index, k } => {
            let p = inputs.profile(profile)?;
            let kinds: Vec<IndexKind> = match index {
                Some(i) => vec![*i],
                None => IndexKind::ALL.to_vec(),
            };
            let default_k = k.unwrap_or(3.min(p.n()));
            let mut rows = Vec::new();
            let mut csv = String::from("index,k,value\n");
            let mut text = format!("agents: {}\nn: {}\n", p.agents(), p.n());
            for kind in kinds {
                let kk = kind.needs_k().then_some(default_k);
                let v = compute_index(&p, kind, kk)?;
                let k_text = kk.map_or(String::new(), |k| k.to_string());
                csv.push_str(&format!("{kind},{k_text},{}\n", v.value));
                text.push_str(&format!(
                    "{kind}{}: {}\n",
                    kk.map_or(String::new(), |k| format!("[{k}]")),
                    v.value
                ));
                rows.push(serde_json::to_value(&v).expect("serialisable"));
            }
            if ctx.format(Format::Json) == Format::Text {
                ctx.emit(text);
            } else {
                ctx.report(
                    json!({ "agents": p.agents(), "n": p.n(), "indices": rows }),
                    Some(csv),
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Sample { domain, agents, seed } => {
            let d = inputs.domain(domain)?;
            let p = sample_profile(&d, *agents, *seed)?;
            ctx.profile(&p)?;
            Ok(EXIT_OK)
        }
        Command::Experiment {
            domain,
            agents,
            trials,
            k,
            seed,
        } => {
            let d = inputs.domain(domain)?;
            let cfg = ExperimentConfig {
                source: d,
                agents: *agents,
                trials: *trials,
                ks: k.clone(),
                master_seed: *seed,
            };
            let hists = ctx.timed("experiment", ctx.allow_long, || run_experiment(&cfg))?;
            let csv = histograms_to_csv(&hists);
            let v = json!({
                "agents": agents,
                "trials": trials,
                "seed": seed,
                "histograms": serde_json::to_value(&hists).expect("serialisable"),
            });
            ctx.report(v, Some(csv))?;
            Ok(EXIT_OK)
        }
        Command::IngestSoc {
            file,
            without,
            drop_universal_top,
            top,
            support,
        } => {
            let mut p = inputs.profile(file)?;
            let mut dropped = Vec::new();
            if *drop_universal_top {
                if let Some(t) = p.universal_top() {
                    p = p.without(t)?;
                    dropped.push(t);
                }
            }
            if let Some(l) = without {
                p = p.without(*l)?;
                dropped.push(*l);
            }
            if let Some(m) = top {
                let keep = p.most_popular(*m, &[])?;
                p = p.restrict(&keep)?;
            }
            let d = p.support();
            if *support {
                ctx.domain(&d)?;
                return Ok(EXIT_OK);
            }
            let cd = is_condorcet(&d);
            let vector = abundance_vector_upto(&d, d.n(), ctx.allow_long)?;
            let ample = d.n() < 2 || vector.get(2) == Some(2);
            ctx.report(
                json!({
                    "agents": p.agents(),
                    "alternatives": p.alternatives(),
                    "dropped": dropped,
                    "support_size": d.len(),
                    "universal_top": p.universal_top(),
                    "is_cd": cd.is_cd,
                    "ample": ample,
                    "vector": vector.entries,
                }),
                None,
            )?;
            Ok(EXIT_OK)
        }
        Command::Canon(a) => {
            let d = inputs.domain(&a.domain)?;
            ctx.domain(&d.canonical_form())?;
            Ok(EXIT_OK)
        }
        Command::SearchMin {
            n,
            k,
            s,
            max_size,
            all,
        } => {
            let spec = SearchSpec {
                allow_long: ctx.allow_long,
                ..SearchSpec::new(*n, *k, *s, max_size.unwrap_or(*s))
            };
            let long = ctx.allow_long && *n > 8;
            let found = ctx.timed("search", long, || search_min_abundant(spec))?;
            let Some(d) = found else {
                ctx.note(format!(
                    "no ({k},{s})-abundant Condorcet domain on {n} alternatives within the size limit"
                ));
                if ctx.format(Format::Text) == Format::Json {
                    ctx.json(&json!({ "found": false }));
                }
                return Ok(EXIT_FALSE);
            };
            if *all {
                let classes = ctx.timed("enumeration", long, || enumerate_min_abundant(spec, d.len()))?;
                ctx.note(format!(
                    "{} isomorphism classes of size {}",
                    classes.len(),
                    d.len()
                ));
                match ctx.format(Format::Text) {
                    Format::Json => {
                        let v: Vec<Value> = classes
                            .iter()
                            .map(|c| serde_json::to_value(domain_json(c)).expect("serialisable"))
                            .collect();
                        ctx.json(&json!({ "size": d.len(), "classes": v }));
                    }
                    Format::Text => {
                        let parts: Vec<String> = classes.iter().map(write_domain).collect();
                        ctx.emit(parts.join("\n"));
                    }
                    Format::Csv => return Err(CliError::Usage("domains have no CSV output".into())),
                }
            } else {
                ctx.domain(&d)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn need_n(g: &GenerateArgs) -> CliResult<usize> {
    g.n.ok_or_else(|| CliError::Usage(format!("--n is required for {:?}", g.family)))
}

fn generate(g: &GenerateArgs, inputs: &mut Inputs, ctx: &mut Ctx<'_>) -> CliResult<Domain> {
    let d = match g.family {
        Family::BlackSp => black_single_peaked(need_n(g)?)?,
        Family::Fishburn => {
            let n = need_n(g)?;
            let allow = ctx.allow_long;
            ctx.timed("fishburn", allow && n > 10, || fishburn_alternating(n, allow))?
        }
        Family::SetAlternating => set_alternating(need_n(g)?, &g.set)?,
        Family::CaterpillarGs => caterpillar_group_separable(need_n(g)?)?,
        Family::SingleCrossing => single_crossing(need_n(g)?)?,
        Family::SConstruction => {
            let (Some(l), Some(r)) = (&g.left, &g.right) else {
                return Err(CliError::Usage("s-construction needs --left and --right".into()));
            };
            let a = inputs.domain(l)?;
            let b = inputs.domain(r)?;
            s_construction(&a, &b)?
        }
        Family::NeverLaw | Family::ArrowSp => {
            let n = need_n(g)?;
            let path = g
                .law
                .as_deref()
                .ok_or_else(|| CliError::Usage("--law is required for this family".into()))?;
            let text = inputs.text(path)?;
            let law = NeverLaw::parse(n, &text).map_err(|e| CliError::from(e).context(path))?;
            if g.family == Family::ArrowSp {
                for (t, conds) in law.iter() {
                    if conds.len() != 1 || conds[0].rank != 3 {
                        return Err(CliError::Lib(cdlab::Error::InvalidArgument(format!(
                            "arrow-sp needs exactly one xN3 condition per triple; triple {t} has {}",
                            if conds.is_empty() {
                                "none".to_string()
                            } else {
                                conds.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
                            }
                        ))));
                    }
                }
            }
            let allow = ctx.allow_long;
            ctx.timed("never-law", allow && n > 10, || {
                generate_from_never_law(&law, allow)
            })?
        }
    };
    Ok(d)
}
