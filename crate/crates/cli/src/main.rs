//! `bdes`: distribution tables, verification suites, series expansions,
//! bijections, quasisymmetric expansions and conjecture scans.
//!
//! Exit codes: 0 success, 1 check failure, 2 invalid input, 3 resource guard.

mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use bdes_core::bijections::{apply, invert, parse_obj, BijectionId};
use bdes_core::conjectures::{branden_check, conjecture_scan, stembridge_consistent, Property};
use bdes_core::genfun::{
    b231_joint, b_value, carlitz_lhs_coeff, carlitz_rhs_coeff, eulerian_r, expand, expand_functional, FormulaId, GfId,
};
use bdes_core::perm::{distribution_table_with, PatternSet, StatName};
use bdes_core::symfunc::{qsym_sum, qsym_sum_fundamental, schur_expand, symmetry_witness};
use bdes_core::verify::{self, Check, Report, Scope};
use bdes_core::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::Config;

#[derive(Parser)]
#[command(name = "bdes", version, about = "Big descents over pattern-avoiding permutations")]
struct Cli {
    /// TOML config file with guards and defaults (also read from $BDES_CONFIG).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(flatten)]
    overrides: Overrides,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Overrides {
    #[arg(long, global = true)]
    max_n_unrestricted: Option<usize>,
    #[arg(long, global = true)]
    max_n_restricted: Option<usize>,
    #[arg(long, global = true)]
    max_n_qsym: Option<usize>,
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Worker threads; 0 lets rayon choose.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Tsv,
    Bfile,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Closed,
    Functional,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Basis {
    Schur,
    Monomial,
    Fundamental,
}

#[derive(Subcommand)]
enum Command {
    /// Distribution of a statistic over S_n(Π).
    Table {
        /// Comma-separated patterns; "" for the full symmetric group.
        #[arg(long, allow_hyphen_values = true)]
        patterns: String,
        /// A length, or a range such as 0..9.
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "bdes")]
        stat: String,
        /// Print every k = 0..n, including trailing zeros.
        #[arg(long)]
        full: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite; exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        scope: String,
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a generating function.
    Series {
        #[arg(long)]
        id: String,
        /// Run length for R_run.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, value_enum, default_value = "closed")]
        route: RouteArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Apply a bijection or its inverse to one object.
    Bijection {
        #[arg(long)]
        id: String,
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Quasisymmetric sum of F_{n,Des_r(π)} over S_n(Π).
    Qsym {
        #[arg(long, allow_hyphen_values = true)]
        patterns: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long, value_enum, default_value = "schur")]
        basis: Basis,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Scan a conjectured property; exit 0 iff every predicted outcome is observed.
    Conjecture {
        /// real-rooted, log-concave, unimodal, schur-positive, branden or stembridge.
        #[arg(long)]
        which: String,
        #[arg(long, default_value_t = 9)]
        max_n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a closed counting formula.
    Formula {
        #[arg(long)]
        id: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

enum Failure {
    Check(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Lib(Error::Resource { .. }) => 3,
            Failure::Lib(Error::InvalidInput(_) | Error::DomainViolation { .. }) => 2,
            Failure::Lib(_) => 1,
        }
    }
}

type Outcome = Result<String, (String, Failure)>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match load_config(&cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("bdes: {msg}");
            return ExitCode::from(2);
        }
    };
    if cfg.runtime.threads > 0 {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.runtime.threads)
            .build_global();
    }
    match run(&cli.command, &cfg) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, failure)) => {
            print!("{out}");
            match &failure {
                Failure::Check(msg) => eprintln!("bdes: {msg}"),
                Failure::Lib(e) => eprintln!("bdes: {e}"),
            }
            ExitCode::from(failure.code())
        }
    }
}

fn load_config(cli: &Cli) -> Result<Config, String> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os("BDES_CONFIG").map(PathBuf::from));
    let mut cfg = match path {
        Some(p) => Config::load(&p)?,
        None => Config::default(),
    };
    let o = &cli.overrides;
    let g = &mut cfg.guards;
    for (slot, v) in [
        (&mut g.max_n_unrestricted, o.max_n_unrestricted),
        (&mut g.max_n_restricted, o.max_n_restricted),
        (&mut g.max_n_qsym, o.max_n_qsym),
        (&mut g.max_order, o.max_order),
    ] {
        if let Some(v) = v {
            *slot = v;
        }
    }
    if let Some(t) = o.threads {
        cfg.runtime.threads = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn lib<T>(r: bdes_core::Result<T>) -> Result<T, (String, Failure)> {
    r.map_err(|e| (String::new(), Failure::Lib(e)))
}

fn invalid(msg: impl Into<String>) -> (String, Failure) {
    (String::new(), Failure::Lib(Error::InvalidInput(msg.into())))
}

fn unsupported(format: Format, cmd: &str) -> (String, Failure) {
    let name = format.to_possible_value().unwrap().get_name().to_string();
    invalid(format!("{cmd} does not support --format {name}"))
}

fn run(cmd: &Command, cfg: &Config) -> Outcome {
    match cmd {
        Command::Table { patterns, n, stat, full, format } => table(patterns, n, stat, *full, *format, cfg),
        Command::Verify { scope, max_n, format } => verify_cmd(scope, *max_n, *format, cfg),
        Command::Series { id, r, order, route, format } => series(id, *r, *order, *route, *format, cfg),
        Command::Bijection { id, input, inverse, format } => bijection(id, input, *inverse, *format),
        Command::Qsym { patterns, n, r, basis, format } => qsym(patterns, *n, *r, *basis, *format, cfg),
        Command::Conjecture { which, max_n, format } => conjecture(which, *max_n, *format, cfg),
        Command::Formula { id, n, k, j, r, format } => formula(id, *n, *k, *j, *r, *format),
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), (String, Failure)> {
    let bad = || invalid(format!("bad length or range {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            Ok((a, b))
        }
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn table(patterns: &str, n: &str, stat: &str, full: bool, format: Format, cfg: &Config) -> Outcome {
    let pats: PatternSet = lib(patterns.parse())?;
    let stat: StatName = lib(stat.parse())?;
    let (lo, hi) = parse_range(n)?;
    let mut tables = Vec::new();
    for n in lo..=hi {
        tables.push(lib(distribution_table_with(n, &pats, stat, &cfg.guards))?);
    }
    let shown = |t: &bdes_core::perm::DistributionTable| -> Vec<u64> {
        if full {
            t.counts.clone()
        } else {
            t.trimmed().to_vec()
        }
    };
    let mut out = String::new();
    match format {
        Format::Text => {
            for t in &tables {
                let row: Vec<String> = shown(t).iter().map(u64::to_string).collect();
                if lo == hi {
                    writeln!(out, "{}", row.join(" ")).unwrap();
                } else {
                    writeln!(out, "{}: {}", t.n, row.join(" ")).unwrap();
                }
            }
        }
        Format::Tsv => {
            out.push_str("n\tk\tcount\n");
            for t in &tables {
                for (k, c) in shown(t).iter().enumerate() {
                    writeln!(out, "{}\t{k}\t{c}", t.n).unwrap();
                }
            }
        }
        Format::Json => {
            let objs: Vec<_> = tables
                .iter()
                .map(|t| {
                    let pats: Vec<String> = t.pattern_set.patterns().iter().map(|p| p.to_string()).collect();
                    json!({"patterns": pats, "n": t.n, "stat": t.stat.to_string(), "counts": t.counts})
                })
                .collect();
            let v = if lo == hi { objs.into_iter().next().unwrap() } else { serde_json::Value::Array(objs) };
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Bfile => {
            // row-major over (n, k) with k = 0..=n; index 0 is (lo, 0)
            writeln!(out, "# {stat} over S_n({pats}), n = {lo}..{hi}, T(n,k) for 0 <= k <= n, offset 0 at (n,k) = ({lo},0)")
                .unwrap();
            let mut i = 0;
            for t in &tables {
                for c in &t.counts {
                    writeln!(out, "{i} {c}").unwrap();
                    i += 1;
                }
            }
        }
    }
    Ok(out)
}

fn render_report(report: &Report, format: Format) -> Result<String, (String, Failure)> {
    let mut out = String::new();
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(report).unwrap()).unwrap();
        }
        Format::Text => {
            for c in &report.checks {
                write_check(&mut out, c);
            }
            let failed = report.failures().count();
            writeln!(out, "{} checks, {} failed", report.checks.len(), failed).unwrap();
        }
        Format::Tsv => {
            out.push_str("name\tn\tpopulation\tpass\twitness\n");
            for c in &report.checks {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}",
                    c.name,
                    c.n,
                    c.population,
                    c.pass,
                    c.witness.as_deref().unwrap_or("")
                )
                .unwrap();
            }
        }
        Format::Bfile => return Err(unsupported(format, "verify")),
    }
    Ok(out)
}

fn write_check(out: &mut String, c: &Check) {
    let status = if c.pass { "ok  " } else { "FAIL" };
    write!(out, "{status} n={:<2} pop={:<6} {}", c.n, c.population, c.name).unwrap();
    if let Some(w) = &c.witness {
        write!(out, " -- {w}").unwrap();
    }
    out.push('\n');
}

fn verify_cmd(scope: &str, max_n: usize, format: Format, cfg: &Config) -> Outcome {
    let scope: Scope = lib(scope.parse())?;
    let report = lib(verify::run(scope, max_n, &cfg.guards))?;
    let out = render_report(&report, format)?;
    if report.all_pass() {
        Ok(out)
    } else {
        let n = report.failures().count();
        Err((out, Failure::Check(format!("{n} check(s) failed"))))
    }
}

fn series(id: &str, r: Option<usize>, order: Option<usize>, route: RouteArg, format: Format, cfg: &Config) -> Outcome {
    let id = lib(GfId::parse_with(id, r))?;
    let order = order.unwrap_or(cfg.series.order);
    lib(cfg.guards.check_order(order))?;
    let s = match route {
        RouteArg::Closed => lib(expand(id, order))?,
        RouteArg::Functional => lib(expand_functional(id, order))?,
        RouteArg::Both => {
            let a = lib(expand(id, order))?;
            let b = lib(expand_functional(id, order))?;
            if a != b {
                let n = (0..=order).find(|&n| a.coeff(n) != b.coeff(n)).unwrap_or(0);
                return Err((
                    String::new(),
                    Failure::Check(format!(
                        "{id}: routes disagree at x^{n}: {} vs {}",
                        a.coeff(n),
                        b.coeff(n)
                    )),
                ));
            }
            a
        }
    };
    let mut out = String::new();
    match format {
        Format::Text => out.push_str(&s.to_string()),
        Format::Tsv => {
            out.push_str("n\tpoly\n");
            for (n, p) in s.rows() {
                writeln!(out, "{n}\t{p}").unwrap();
            }
        }
        Format::Json => {
            let rows: Vec<_> = s.rows().into_iter().map(|(n, p)| json!({"n": n, "poly": p})).collect();
            let v = json!({"id": id.to_string(), "order": order, "rows": rows});
            writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap()).unwrap();
        }
        Format::Bfile => return Err(unsupported(format, "series")),
    }
    Ok(out)
}

fn bijection(id: &str, input: &str, inverse: bool, format: Format) -> Outcome {
    let id: BijectionId = lib(id.parse())?;
    let x = lib(parse_obj(id, input, inverse))?;
    let y = if inverse { lib(invert(id, &x))? } else { lib(apply(id, &x))? };
    Ok(match format {
        Format::Text => format!("{y}\n"),
        Format::Json => {
            let v = json!({"id": id.name(), "inverse": inverse, "input": x.to_string(), "output": y.to_string()});
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
        Format::Tsv => format!("{x}\t{y}\n"),
        Format::Bfile => return Err(unsupported(format, "bijection")),
    })
}

fn qsym(patterns: &str, n: usize, r: u32, basis: Basis, format: Format, cfg: &Config) -> Outcome {
    let pats: PatternSet = lib(patterns.parse())?;
    if format == Format::Bfile || format == Format::Tsv {
        return Err(unsupported(format, "qsym"));
    }
    let fundamental = lib(qsym_sum_fundamental(n, &pats, r, &cfg.guards))?;
    let json_out = |basis: &str, symmetric: bool, terms: serde_json::Value| {
        let v = json!({"patterns": pats.to_string(), "n": n, "r": r, "basis": basis, "symmetric": symmetric, "terms": terms});
        format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
    };
    match basis {
        Basis::Fundamental => {
            let terms: Vec<_> = fundamental.coeffs.iter().map(|(c, k)| json!([c.0, k])).collect();
            let sym = lib(symmetry_witness(&fundamental))?.is_none();
            Ok(match format {
                Format::Json => json_out("fundamental", sym, terms.into()),
                _ => format!("{fundamental}\n"),
            })
        }
        Basis::Monomial => {
            let q = lib(qsym_sum(n, &pats, r, &cfg.guards))?;
            let witness = lib(symmetry_witness(&q))?;
            let terms: Vec<_> = q.coeffs.iter().map(|(c, k)| json!([c.0, k])).collect();
            Ok(match format {
                Format::Json => json_out("monomial", witness.is_none(), terms.into()),
                _ => {
                    let banner = match &witness {
                        None => "symmetry=true".to_string(),
                        Some((a, b)) => format!("symmetry=false (M{a} and M{b} differ)"),
                    };
                    format!("{banner}\n{q}\n")
                }
            })
        }
        Basis::Schur => {
            let q = lib(fundamental.to_monomial())?;
            if let Some((a, b)) = lib(symmetry_witness(&q))? {
                return Err(invalid(format!(
                    "Q_{n}({pats}) is not symmetric (M{a} and M{b} differ); use --basis monomial"
                )));
            }
            let e = lib(schur_expand(&q))?;
            Ok(match format {
                Format::Json => json_out("schur", true, e.to_json()),
                _ => format!("{e}\n"),
            })
        }
    }
}

fn conjecture(which: &str, max_n: usize, format: Format, cfg: &Config) -> Outcome {
    if format == Format::Bfile {
        return Err(unsupported(format, "conjecture"));
    }
    let identity: Option<(&str, fn(usize, &bdes_core::perm::Guards) -> bdes_core::Result<bool>)> =
        match which.trim() {
            "branden" => Some(("descent/peak identity over S_n(231)", branden_check)),
            "stembridge" => Some(("descent and peak polynomials agree on real-rootedness", stembridge_consistent)),
            _ => None,
        };
    if let Some((name, f)) = identity {
        let mut checks = Vec::new();
        for n in 1..=max_n {
            let ok = lib(f(n, &cfg.guards))?;
            checks.push(Check::new(name, n, 1, (!ok).then(|| "identity fails".to_string())));
        }
        let report = Report { checks };
        let out = render_report(&report, format)?;
        return if report.all_pass() {
            Ok(out)
        } else {
            Err((out, Failure::Check(format!("{which} failed"))))
        };
    }
    let property: Property = lib(which.parse())?;
    let report = lib(conjecture_scan(property, max_n, &cfg.guards))?;
    let mut out = String::new();
    match format {
        Format::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).unwrap();
        }
        Format::Tsv => {
            out.push_str("property\tpattern_set\tn\tpass\texpected\twitness\n");
            for r in &report.records {
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.property,
                    r.pattern_set,
                    r.n,
                    r.pass,
                    r.expected,
                    r.witness.as_deref().unwrap_or("")
                )
                .unwrap();
            }
        }
        _ => {
            let total = report.records.len();
            let fails: Vec<_> = report.records.iter().filter(|r| !r.pass).collect();
            for r in &fails {
                let tag = if r.expected { "UNEXPECTED" } else { "predicted" };
                writeln!(
                    out,
                    "fail ({tag}) {{{}}} n={}: {}",
                    r.pattern_set,
                    r.n,
                    r.witness.as_deref().unwrap_or("")
                )
                .unwrap();
            }
            for (set, n) in report.first_failures() {
                writeln!(out, "smallest failing n for {{{set}}}: {n}").unwrap();
            }
            let verdict = if report.outcomes_as_predicted() { "pass" } else { "FAIL" };
            writeln!(out, "{property} through n={max_n}: {total} cases, {} failing; {verdict}", fails.len()).unwrap();
        }
    }
    if report.outcomes_as_predicted() {
        Ok(out)
    } else {
        Err((out, Failure::Check(format!("{property}: outcome differs from prediction"))))
    }
}

fn formula(id: &str, n: usize, k: Option<usize>, j: Option<usize>, r: Option<usize>, format: Format) -> Outcome {
    let id: FormulaId = lib(id.parse())?;
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| invalid(format!("{id} needs --{name}")));
    let values: Vec<String> = match id {
        FormulaId::B231Joint => vec![b231_joint(n, need(j, "j")?, need(k, "k")?).to_string()],
        FormulaId::EulerianR => eulerian_r(n, need(r, "r")?).iter().map(i128::to_string).collect(),
        FormulaId::CarlitzLhsCoeff => {
            let (r, k) = (need(r, "r")?, need(k, "k")?);
            let lhs = carlitz_lhs_coeff(n, r, k);
            let rhs = carlitz_rhs_coeff(n, r, k);
            if lhs != rhs {
                return Err((format!("{lhs}\n"), Failure::Check(format!("differs from {rhs}"))));
            }
            vec![lhs.to_string()]
        }
        _ => match k {
            Some(k) => vec![lib(b_value(id, n, k))?.to_string()],
            None => {
                let mut row = lib((0..=n).map(|k| b_value(id, n, k)).collect::<bdes_core::Result<Vec<_>>>())?;
                while row.len() > 1 && row.last() == Some(&0) {
                    row.pop();
                }
                row.iter().map(u128::to_string).collect()
            }
        },
    };
    Ok(match format {
        Format::Text => format!("{}\n", values.join(" ")),
        Format::Tsv => values.iter().enumerate().map(|(i, v)| format!("{i}\t{v}\n")).collect(),
        Format::Bfile => values.iter().enumerate().map(|(i, v)| format!("{i} {v}\n")).collect(),
        Format::Json => {
            let v = json!({"id": id.name(), "n": n, "k": k, "j": j, "r": r, "values": values});
            format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
        }
    })
}
