//! `divcode`: command-line front end for divisible-code computations.
//!
//! Exit codes: 0 success, 1 mathematical negative (infeasible length,
//! non-divisible input, failed claim, infinite gamma), 2 usage or input
//! error, 3 budget exhausted before a definite answer.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use divcode::census::{self, Budget, Census, CensusKey};
use divcode::codes::{self, GeneratorMatrix};
use divcode::lengths::{self, Gamma};
use divcode::pg;

/// Environment variable naming the default census cache directory.
const CACHE_ENV: &str = "DIVCODE_CACHE_DIR";

#[derive(Parser)]
#[command(name = "divcode", version, about = "Divisible linear codes as multisets of points in PG(k-1, q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format; defaults to csv for `tables`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout; witnesses go to `<out>.witness.txt`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Stop a census after this many lifts.
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Stop a census after this many seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<f64>,
    /// Directory for cached census levels.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,
    /// Worker threads for the census (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// S_q(r)-adic expansion of n.
    Expand {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Whether a Delta-divisible multiset of cardinality n exists.
    Feasible {
        #[arg(long)]
        q: u64,
        /// Divisibility constant; alternatively give --r for Delta = q^r.
        #[arg(long, conflicts_with = "r")]
        delta: Option<u64>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Invariants of a generator matrix file (`-` for stdin).
    Check {
        input: PathBuf,
        /// Require divisibility by this constant.
        #[arg(long)]
        delta: Option<u64>,
        /// Require this effective length.
        #[arg(long)]
        n: Option<u64>,
        /// Require this maximum column multiplicity.
        #[arg(long)]
        max_gamma: Option<u32>,
    },
    /// Count (and list) inequivalent Delta-divisible codes of effective length n.
    Census {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        n: u32,
        /// Dimension; all dimensions when omitted.
        #[arg(long)]
        k: Option<u32>,
        /// Only codes whose columns repeat at most this often.
        #[arg(long)]
        max_gamma: Option<u32>,
    },
    /// Gamma_q(Delta, n), the least possible maximum column multiplicity.
    Gamma {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        n: u32,
        /// Use the closed-form table instead of exhaustive search.
        #[arg(long)]
        lookup: bool,
    },
    /// Check a classification statement exhaustively.
    VerifyClaim {
        /// Claim identifier; see --list.
        #[arg(required_unless_present_any = ["all", "list"])]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
    /// Regenerate a census table.
    Tables {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest effective length (default: the published range).
        #[arg(long)]
        n: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Even,
    DoublyEven,
    TriplyEven,
    Sixteen,
    Ternary,
    Quaternary,
    /// Per-class data of 4-divisible binary multisets of cardinality 17.
    AppendixA,
}

impl Suite {
    /// `(q, delta, default n_max)`
    fn params(self) -> (usize, u64, u32) {
        match self {
            Suite::Even => (2, 2, 10),
            Suite::DoublyEven => (2, 4, 20),
            Suite::TriplyEven => (2, 8, 32),
            Suite::Sixteen => (2, 16, 48),
            Suite::Ternary => (3, 3, 7),
            Suite::Quaternary => (4, 4, 17),
            Suite::AppendixA => (2, 4, 17),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Ok = 0,
    Negative = 1,
    Usage = 2,
    Budget = 3,
}

struct Output {
    status: Status,
    body: String,
    witness: Option<String>,
}

impl Output {
    fn new(status: Status, body: String) -> Self {
        Output { status, body, witness: None }
    }
}

type Res = Result<Output, String>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let out = match run(&cli) {
        Ok(o) => o,
        Err(msg) => {
            eprintln!("error: {msg}\n\nRun `divcode help` for the flag grammar.");
            return ExitCode::from(Status::Usage as u8);
        }
    };
    if let Err(e) = emit(&cli.common.out, &out) {
        eprintln!("error: {e}");
        return ExitCode::from(Status::Usage as u8);
    }
    ExitCode::from(out.status as u8)
}

fn emit(out: &Option<PathBuf>, o: &Output) -> std::io::Result<()> {
    match out {
        None => print!("{}", o.body),
        Some(path) => {
            fs::write(path, &o.body)?;
            if let Some(w) = &o.witness {
                fs::write(witness_path(path), w)?;
            }
        }
    }
    Ok(())
}

fn witness_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".witness.txt");
    PathBuf::from(s)
}

fn run(cli: &Cli) -> Res {
    let c = &cli.common;
    let fmt = c.format.unwrap_or(if matches!(cli.command, Command::Tables { .. }) { Format::Csv } else { Format::Json });
    match &cli.command {
        Command::Expand { q, r, n } => expand(fmt, *q, *r, *n),
        Command::Feasible { q, delta, r, n } => feasible(fmt, *q, *delta, *r, *n),
        Command::Check { input, delta, n, max_gamma } => check(fmt, input, *delta, *n, *max_gamma),
        Command::Census { q, delta, n, k, max_gamma } => run_census(fmt, c, *q, *delta, *n, *k, *max_gamma),
        Command::Gamma { q, delta, n, lookup } => gamma(fmt, c, *q, *delta, *n, *lookup),
        Command::VerifyClaim { id, all, list } => verify(fmt, c, id.as_deref(), *all, *list),
        Command::Tables { suite, n } => tables(fmt, c, *suite, *n),
    }
}

fn json_line<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data");
    s.push('\n');
    s
}

/// `key: value` lines from a flat JSON object.
fn text_lines(v: &serde_json::Value) -> String {
    let mut s = String::new();
    if let Some(obj) = v.as_object() {
        for (k, val) in obj {
            match val {
                serde_json::Value::String(t) if t.contains('\n') => writeln!(s, "{k}:\n{t}").unwrap(),
                serde_json::Value::String(t) => writeln!(s, "{k}: {t}").unwrap(),
                other => writeln!(s, "{k}: {other}").unwrap(),
            }
        }
    }
    s
}

/// Renders a flat object in the requested format (csv: header + one row).
fn render(fmt: Format, v: serde_json::Value) -> String {
    match fmt {
        Format::Json => json_line(&v),
        Format::Text => text_lines(&v),
        Format::Csv => {
            let obj = v.as_object().expect("flat object");
            let cell = |x: &serde_json::Value| match x {
                serde_json::Value::String(t) => t.replace('\n', "|"),
                serde_json::Value::Array(a) => a.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(";"),
                other => other.to_string(),
            };
            let head: Vec<&str> = obj.keys().map(String::as_str).collect();
            let row: Vec<String> = obj.values().map(cell).collect();
            format!("{}\n{}\n", head.join(","), row.join(","))
        }
    }
}

fn check_field(q: u64) -> Result<(), String> {
    if matches!(q, 2..=4) {
        Ok(())
    } else {
        Err(format!("--q must be 2, 3 or 4 (got {q})"))
    }
}

fn expand(fmt: Format, q: u64, r: u32, n: i64) -> Res {
    check_field(q)?;
    if r > 16 {
        return Err("--r must be at most 16".into());
    }
    let e = lengths::sqr_adic_expansion(n, q, r);
    let v = json!({ "n": n, "q": q, "r": r, "digits": e.coefficients(), "feasible": e.feasible });
    Ok(Output::new(Status::Ok, render(fmt, v)))
}

/// Splits `delta = q^r * d` with `d` coprime to the characteristic.
fn delta_exponent(q: u64, delta: u64) -> Result<(u32, u64), String> {
    let (pe, d) = lengths::ward_reduce(q, delta).map_err(|e| e.to_string())?;
    let mut r = 0;
    let mut x = pe;
    while x % q == 0 {
        x /= q;
        r += 1;
    }
    if x != 1 {
        return Err(format!("Delta = {delta}: the {pe}-part is not a power of q = {q}; length feasibility is only decided for Delta = q^r * d"));
    }
    Ok((r, d))
}

fn feasible(fmt: Format, q: u64, delta: Option<u64>, r: Option<u32>, n: i64) -> Res {
    check_field(q)?;
    let (r, d) = match (delta, r) {
        (Some(0), _) => return Err("--delta must be positive".into()),
        (Some(delta), _) => delta_exponent(q, delta)?,
        (None, Some(r)) if r <= 16 => (r, 1),
        (None, Some(_)) => return Err("--r must be at most 16".into()),
        (None, None) => return Err("give --delta or --r".into()),
    };
    // a Delta-divisible multiset is d times a q^r-divisible one
    let ok = n >= 0 && n % d as i64 == 0;
    let e = lengths::sqr_adic_expansion(if ok { n / d as i64 } else { n }, q, r);
    let feasible = ok && e.feasible;
    let v = json!({
        "n": n, "q": q, "delta": q.pow(r) * d, "r": r, "cofactor": d,
        "digits": e.coefficients(), "feasible": feasible,
    });
    Ok(Output::new(if feasible { Status::Ok } else { Status::Negative }, render(fmt, v)))
}

fn read_input(path: &Path) -> Result<String, String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
    }
}

fn check(fmt: Format, input: &Path, delta: Option<u64>, n: Option<u64>, max_gamma: Option<u32>) -> Res {
    let g = GeneratorMatrix::parse_text(&read_input(input)?).map_err(|e| e.to_string())?;
    let m = codes::to_multiset(&g);
    let hyperplanes = pg::gauss(m.k() as u32, m.q() as u64);
    if hyperplanes > codes::ENUMERATION_CAP {
        return Err(format!("{hyperplanes} hyperplanes is too many to sweep"));
    }
    let eff = m.cardinality();
    let gamma1 = m.gamma1();
    let mults = m.hyperplane_mults();
    // largest Delta with M(H) = n (mod Delta) for all H; 0 if M(H) = n always
    let divisor = mults.iter().fold(0, |acc, &h| gcd(acc, eff - h));
    let mut spectrum = pg::Spectrum::new();
    for &h in &mults {
        *spectrum.entry(h).or_insert(0) += 1;
    }
    let mut ok = true;
    let mut v = json!({
        "q": g.q(), "k": g.k(), "length": g.n(), "effective_length": eff, "rank": g.rank(),
        "gamma1": gamma1, "largest_divisor": divisor,
        "spectrum": spectrum.iter().map(|(h, a)| format!("{h}:{a}")).collect::<Vec<_>>().join(";"),
    });
    let obj = v.as_object_mut().unwrap();
    if let Some(d) = delta {
        if d == 0 {
            return Err("--delta must be positive".into());
        }
        let div = divisor % d == 0;
        ok &= div;
        obj.insert("delta".into(), json!(d));
        obj.insert("divisible".into(), json!(div));
    }
    if let Some(want) = n {
        ok &= eff == want;
        obj.insert("length_ok".into(), json!(eff == want));
    }
    if let Some(want) = max_gamma {
        ok &= gamma1 == want;
        obj.insert("gamma1_ok".into(), json!(gamma1 == want));
    }
    Ok(Output::new(if ok { Status::Ok } else { Status::Negative }, render(fmt, v)))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn budget(c: &Common) -> Budget {
    Budget { max_nodes: c.budget_nodes, max_seconds: c.budget_seconds }
}

fn census_for(c: &Common, q: usize, delta: u64) -> Result<Census, String> {
    let mut cen = Census::new(q, delta).map_err(|e| e.to_string())?.with_budget(budget(c));
    if let Some(dir) = &c.cache_dir {
        fs::create_dir_all(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
        cen = cen.with_cache_dir(dir);
    }
    if let Some(t) = c.threads {
        cen = cen.with_threads(t.max(1));
    }
    Ok(cen)
}

fn run_census(fmt: Format, c: &Common, q: usize, delta: u64, n: u32, k: Option<u32>, cap: Option<u32>) -> Res {
    check_field(q as u64)?;
    let mut cen = census_for(c, q, delta)?;
    let ks: Vec<u32> = match k {
        Some(0) => return Err("--k must be positive".into()),
        Some(k) if k > n => return Err(format!("--k {k} exceeds --n {n}")),
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    let mut records = Vec::new();
    for k in ks {
        let mut key = CensusKey::new(q, delta, n, k);
        if let Some(g) = cap {
            key = key.with_cap(g);
        }
        match cen.record(key) {
            Ok(r) => records.push(r),
            Err(census::CensusError::Ambient { .. }) => {
                records.push(census::CensusRecord { key, count: 0, reps: Vec::new(), partial: true });
                break;
            }
            Err(e) => return Err(e.to_string()),
        }
    }
    let partial = records.iter().any(|r| r.partial);
    let body = match fmt {
        Format::Csv => census::counts_csv(&records.iter().map(|r| (n, r.key.k, r.count)).collect::<Vec<_>>()),
        Format::Json => json_line(&json!({
            "q": q, "delta": delta, "n": n, "max_gamma": cap, "partial": partial,
            "counts": records.iter().map(|r| json!({"k": r.key.k, "count": r.count, "partial": r.partial})).collect::<Vec<_>>(),
            "total": records.iter().map(|r| r.count).sum::<usize>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for r in &records {
                writeln!(s, "# n={n} k={} count={}{}", r.key.k, r.count, if r.partial { " (partial)" } else { "" }).unwrap();
                for g in &r.reps {
                    writeln!(s, "{}", g.to_text()).unwrap();
                }
            }
            s
        }
    };
    Ok(Output::new(if partial { Status::Budget } else { Status::Ok }, body))
}

fn gamma(fmt: Format, c: &Common, q: usize, delta: u64, n: u32, lookup: bool) -> Res {
    check_field(q as u64)?;
    if delta == 0 {
        return Err("--delta must be positive".into());
    }
    let (value, witness, certificate, partial, verified_below) = if lookup {
        let r = lengths::gamma_lookup(q as u64, delta, n as i64).map_err(|e| e.to_string())?;
        (r.value, r.witness, r.certificate, false, None)
    } else {
        let mut cen = census_for(c, q, delta)?;
        let r = census::compute_gamma(&mut cen, n).map_err(|e| e.to_string())?;
        (r.value, r.witness, r.certificate, r.partial, Some(r.verified_below))
    };
    let witness_text = witness.as_ref().map(GeneratorMatrix::to_text);
    let v = json!({
        "q": q, "delta": delta, "n": n,
        "method": if lookup { "lookup" } else { "search" },
        "gamma": value.to_string(),
        "partial": partial,
        "verified_below": verified_below,
        "certificate": certificate.map(|e| e.coefficients()),
        "witness": witness_text,
    });
    let status = match value {
        _ if partial => Status::Budget,
        Gamma::Finite(_) => Status::Ok,
        Gamma::Infinite => Status::Negative,
    };
    let mut o = Output::new(status, render(fmt, v));
    o.witness = witness_text;
    Ok(o)
}

fn verify(fmt: Format, c: &Common, id: Option<&str>, all: bool, list: bool) -> Res {
    if list {
        let mut s = String::new();
        for id in census::claim_ids() {
            writeln!(s, "{id}").unwrap();
        }
        return Ok(Output::new(Status::Ok, s));
    }
    let ids: Vec<String> = if all { census::claim_ids().into_iter().map(String::from).collect() } else { vec![id.unwrap().to_string()] };
    let mut reports = Vec::new();
    for id in &ids {
        reports.push(census::verify_claim(id, budget(c)).map_err(|e| e.to_string())?);
    }
    let status = if reports.iter().any(|r| matches!(r.outcome, census::Verdict::Fail(_))) {
        Status::Negative
    } else if reports.iter().any(|r| matches!(r.outcome, census::Verdict::BudgetExceeded)) {
        Status::Budget
    } else {
        Status::Ok
    };
    let body = match fmt {
        Format::Json if reports.len() == 1 => json_line(&reports[0]),
        Format::Json => json_line(&reports),
        Format::Csv => {
            let mut s = String::from("id,verdict,classes,nodes\n");
            for r in &reports {
                writeln!(s, "{},{},{},{}", r.id, r.verdict, r.classes, r.nodes).unwrap();
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                writeln!(s, "{}: {} ({} classes) -- {}", r.id, r.verdict, r.classes, r.statement).unwrap();
                if let Some(cx) = &r.counterexample {
                    write!(s, "{cx}").unwrap();
                }
            }
            s
        }
    };
    Ok(Output::new(status, body))
}

fn tables(fmt: Format, c: &Common, suite: Suite, n_max: Option<u32>) -> Res {
    let (q, delta, default_n) = suite.params();
    let mut cen = census_for(c, q, delta)?;
    if let Suite::AppendixA = suite {
        let n = n_max.unwrap_or(default_n);
        let mut records = Vec::new();
        for k in 1..=n {
            match cen.record(CensusKey::new(q, delta, n, k)) {
                Ok(r) => records.push(r),
                Err(census::CensusError::Ambient { .. }) => break,
                Err(e) => return Err(e.to_string()),
            }
        }
        let partial = records.iter().any(|r| r.partial);
        let rows = census::stats_table(&records);
        let body = match fmt {
            Format::Json => json_line(&rows),
            _ => census::stats_csv(&rows),
        };
        return Ok(Output::new(if partial { Status::Budget } else { Status::Ok }, body));
    }
    let n_max = n_max.unwrap_or(default_n);
    let mut rows = Vec::new();
    let mut partial = false;
    for n in 1..=n_max {
        let (counts, p) = cen.counts(n, n).map_err(|e| e.to_string())?;
        partial |= p;
        rows.extend(counts.into_iter().enumerate().filter(|&(_, c)| c > 0).map(|(i, c)| (n, i as u32 + 1, c)));
        if p {
            break;
        }
    }
    let body = match fmt {
        Format::Json => json_line(&json!({
            "q": q, "delta": delta, "n_max": n_max, "partial": partial,
            "rows": rows.iter().map(|&(n, k, c)| json!({"n": n, "k": k, "count": c})).collect::<Vec<_>>(),
        })),
        _ => census::counts_csv(&rows),
    };
    Ok(Output::new(if partial { Status::Budget } else { Status::Ok }, body))
}
