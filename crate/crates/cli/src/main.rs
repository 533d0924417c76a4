//! `steinforge`: constructions and verification suites for the groups sV.
//!
//! Exit status is 0 when every check passes, 1 when a property fails (the
//! failing witness is printed), and 2 on bad input or an exceeded guard.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use steinforge::complexes::{connectivity_report, homology, HomologyReport};
use steinforge::dyadic::{enumerate_coarsenings, enumerate_elementary_bounded, Covering};
use steinforge::groupsv::{DyadicMap, PVertex};
use steinforge::guard::Guards;
use steinforge::matching::{make_skn, matching_complex, nu};
use steinforge::steinlocal::enumerate_posets;
use steinforge::verify::{run_suite, SuiteConfig, SUITES};

#[derive(Parser)]
#[command(name = "steinforge", version, about = "Exact combinatorics of the Brin-Thompson groups sV")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on the bricks of a covering whose coarsenings are enumerated.
    #[arg(long, global = true)]
    max_bricks: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Homology of the matching complex of sK_n and its nu(n)-1 verdict.
    Matching {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        oriented: bool,
        /// Build only the skeleton up to this dimension.
        #[arg(long)]
        max_dim: Option<usize>,
    },
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Operations on elements of sV and on vertices of P1, read from JSON files.
    #[command(subcommand)]
    Group(GroupCmd),
    /// List finite families in canonical order.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name; `--list` shows them all.
    #[arg(required_unless_present = "list")]
    suite: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    s: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    max_dim: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum GroupCmd {
    /// `f ∘ g`: apply `g`, then `f`.
    Compose { f: PathBuf, g: PathBuf },
    Invert { f: PathBuf },
    Equal { f: PathBuf, g: PathBuf },
    /// Canonical representative of the vertex `[f]`.
    Canon { f: PathBuf },
    /// Elements of sV fixing the vertex `[x]`.
    Stab { x: PathBuf },
    /// `g` with `x · g = y`, for vertices with one block.
    Transporter { x: PathBuf, y: PathBuf },
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// Coarsenings of the covering in a JSON file.
    Coarsenings { covering: PathBuf },
    /// Elementary coverings of one block of I^s.
    Elementary {
        #[arg(long)]
        s: u32,
        /// Only coverings with this many bricks.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        labeled: bool,
    },
    /// Elementary mergings E_n.
    En {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u32,
    },
    /// Very elementary mergings VE_n.
    Ve {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n: u32,
    },
}

/// `println!` that ends the process quietly once stdout is closed, as
/// when the output is piped into `head`.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

/// Failure carrying the process exit status.
struct Failure {
    code: u8,
    message: String,
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure { code: 2, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut guards = Guards::from_env().map_err(usage)?;
    if let Some(b) = cli.common.max_bricks {
        guards.max_bricks = b;
    }
    let format = cli.common.format;
    if format == Format::Csv && !matches!(cli.command, Command::Matching { .. }) {
        return Err(usage("--format csv is only available for homology tables (the matching command)"));
    }
    match cli.command {
        Command::Matching { s, n, oriented, max_dim } => cmd_matching(s, n, oriented, max_dim, &guards, format),
        Command::Verify(args) => cmd_verify(args, guards, format),
        Command::Group(cmd) => cmd_group(cmd, &guards, format),
        Command::Enumerate(cmd) => cmd_enumerate(cmd, &guards, format),
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn homology_csv(h: &HomologyReport) {
    out!("dim,betti,torsion");
    for g in &h.groups {
        let torsion: Vec<String> = g.torsion.iter().map(|t| t.to_string()).collect();
        out!("{},{},{}", g.dim, g.betti, torsion.join(" "));
    }
}

fn homology_text(h: &HomologyReport) -> String {
    let parts: Vec<String> = h
        .groups
        .iter()
        .map(|g| {
            let mut summands = Vec::new();
            if g.betti > 0 {
                summands.push(if g.betti == 1 { "Z".to_string() } else { format!("Z^{}", g.betti) });
            }
            summands.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            let group = if summands.is_empty() { "0".to_string() } else { summands.join(" + ") };
            format!("H~{} = {}", g.dim, group)
        })
        .collect();
    parts.join(", ")
}

fn cmd_matching(
    s: u32,
    n: u32,
    oriented: bool,
    max_dim: Option<usize>,
    guards: &Guards,
    format: Format,
) -> Result<u8, Failure> {
    let g = make_skn(s, n).map_err(usage)?;
    let (_, complex) = matching_complex(&g, oriented, max_dim, guards.max_simplices).map_err(usage)?;
    let h = homology(&complex, true).map_err(usage)?;
    let k = (nu(n as i64) - 1) as isize;
    // below k = 0 the bound only asks for nonemptiness and is not reported
    let verdict = if k < 0 { None } else { Some(connectivity_report(&complex, k).map_err(usage)?) };
    let pass = verdict.as_ref().map_or(true, |v| v.pass);
    match format {
        Format::Json => print_json(&json!({
            "s": s, "n": n, "oriented": oriented, "counts": complex.counts(),
            "homology": h, "k": k, "verdict": verdict,
        })),
        Format::Csv => homology_csv(&h),
        Format::Text => {
            let name = if oriented { "M°" } else { "M" };
            out!("{name}({s}K_{n}): simplices per dimension {:?}", complex.counts());
            out!("{}", homology_text(&h));
            match &verdict {
                None => out!("verdict: n/a (nu({n}) - 1 = {k})"),
                Some(v) => out!("verdict: {} ({k}-connected)", if v.pass { "pass" } else { "FAIL" }),
            }
            if let Some(v) = verdict.as_ref().filter(|v| !v.pass) {
                out!("{}", serde_json::to_string(v).expect("serializable"));
            }
        }
    }
    Ok(if pass { 0 } else { 1 })
}

fn cmd_verify(args: VerifyArgs, guards: Guards, format: Format) -> Result<u8, Failure> {
    if args.list {
        for (name, about) in SUITES {
            out!("{name:<18} {about}");
        }
        return Ok(0);
    }
    let suite = args.suite.expect("required unless --list");
    let cfg = SuiteConfig {
        s: args.s,
        n: args.n,
        m: args.m,
        seed: args.seed,
        trials: args.trials,
        max_dim: args.max_dim,
        jobs: args.jobs,
        guards,
    };
    let verdicts = run_suite(&suite, &cfg).map_err(|e| Failure { code: if e.is_usage() { 2 } else { 1 }, message: e.to_string() })?;
    let passed = verdicts.iter().filter(|v| v.pass).count();
    let all = passed == verdicts.len();
    let summary = format!("{suite}: {} {passed}/{} (seed {})", if all { "pass" } else { "FAIL" }, verdicts.len(), cfg.seed);
    match format {
        Format::Json => print_json(&json!({
            "suite": suite, "seed": cfg.seed, "passed": passed, "total": verdicts.len(), "pass": all,
            "verdicts": verdicts,
        })),
        Format::Csv => unreachable!("rejected before running"),
        Format::Text => {
            out!("{summary}");
            for v in &verdicts {
                out!("{}", serde_json::to_string(v).expect("serializable"));
            }
        }
    }
    if !all {
        eprintln!("{summary}");
    }
    Ok(if all { 0 } else { 1 })
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit(value: Value, format: Format) {
    match format {
        Format::Json | Format::Csv => print_json(&value),
        Format::Text => out!("{}", serde_json::to_string(&value).expect("serializable")),
    }
}

fn cmd_group(cmd: GroupCmd, guards: &Guards, format: Format) -> Result<u8, Failure> {
    let value = match cmd {
        GroupCmd::Compose { f, g } => {
            let (f, g): (DyadicMap, DyadicMap) = (read_json(&f)?, read_json(&g)?);
            let fg = DyadicMap::compose(&f, &g).map_err(usage)?;
            let identity = fg.m() == fg.n() && fg.equals(&DyadicMap::identity(fg.s(), fg.m())).map_err(usage)?;
            json!({"map": fg, "identity": identity})
        }
        GroupCmd::Invert { f } => json!({"map": read_json::<DyadicMap>(&f)?.inverse()}),
        GroupCmd::Equal { f, g } => {
            let (f, g): (DyadicMap, DyadicMap) = (read_json(&f)?, read_json(&g)?);
            json!({"equal": f.equals(&g).map_err(usage)?})
        }
        GroupCmd::Canon { f } => json!({"vertex": read_json::<PVertex>(&f)?}),
        GroupCmd::Stab { x } => {
            let x: PVertex = read_json(&x)?;
            let stab = x.stabilizer(guards.max_stabilizer_t).map_err(usage)?;
            json!({"t": x.t(), "count": stab.len(), "elements": stab})
        }
        GroupCmd::Transporter { x, y } => {
            let (x, y): (PVertex, PVertex) = (read_json(&x)?, read_json(&y)?);
            json!({"map": x.transporter(&y).map_err(usage)?})
        }
    };
    emit(value, format);
    Ok(0)
}

fn listing<T: serde::Serialize>(kind: &str, items: &[T], format: Format) {
    match format {
        Format::Json => print_json(&json!({"kind": kind, "count": items.len(), "items": items})),
        Format::Csv => unreachable!("rejected before running"),
        Format::Text => {
            out!("{kind}: {}", items.len());
            for item in items {
                out!("{}", serde_json::to_string(item).expect("serializable"));
            }
        }
    }
}

fn cmd_enumerate(cmd: EnumerateCmd, guards: &Guards, format: Format) -> Result<u8, Failure> {
    match cmd {
        EnumerateCmd::Coarsenings { covering } => {
            let u: Covering = read_json(&covering)?;
            listing("coarsenings", &enumerate_coarsenings(&u, guards.max_bricks).map_err(usage)?, format);
        }
        EnumerateCmd::Elementary { s, n, labeled } => {
            let all = enumerate_elementary_bounded(s, labeled, n, guards.max_enum_dim).map_err(usage)?;
            listing("elementary", &all, format);
        }
        EnumerateCmd::En { s, n } => {
            listing("en", &enumerate_posets(s, n, false, guards).map_err(usage)?.elements, format);
        }
        EnumerateCmd::Ve { s, n } => {
            listing("ve", &enumerate_posets(s, n, true, guards).map_err(usage)?.elements, format);
        }
    }
    Ok(0)
}
