mod commands;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};
use sheafchain::poly::OrderSpec;
use sheafchain::session::{LoadOptions, Session};
use sheafchain::Error;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Lowest sheaf of the chain containing a form; every form when none is given
    Classify,
    /// Dimension of the span of forms modulo a level
    SpanDim,
    /// Which probe multiples of a form lie in a level
    Annihilate,
    /// Trace of a function on a branched covering
    Trace,
    /// Generators of the top-degree traced sheaf of a covering
    OmegaBasis,
    /// Charts of the blow-up of a chart along a coordinate center
    Blowup,
    /// Charts of the Nash transform of a hypersurface
    Nash,
    /// Checks integral dependence relations; every relation when none is given
    VerifyDependence,
    /// Certifies resolution leaves smooth; every resolution when none is given
    CheckResolution,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Lex,
    Degrevlex,
}

#[derive(Parser, Debug)]
#[command(name = "sheafchain", version, about = "Places meromorphic forms on hypersurface singularities in the chain of holomorphic form sheaves")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Session file
    pub session: PathBuf,
    /// Space (or chart) name
    #[arg(long)]
    pub space: Option<String>,
    /// Form name or expression; a comma-separated list for span-dim
    #[arg(long)]
    pub form: Option<String>,
    #[arg(long)]
    pub resolution: Option<String>,
    #[arg(long)]
    pub relation: Option<String>,
    #[arg(long)]
    pub graph: Option<String>,
    /// Function to trace
    #[arg(long)]
    pub h: Option<String>,
    /// Trace h / P' instead of h
    #[arg(long)]
    pub over_pprime: bool,
    /// Level for span-dim and annihilate
    #[arg(long)]
    pub level: Option<String>,
    /// Comma-separated probe functions for annihilate
    #[arg(long)]
    pub probes: Option<String>,
    /// Comma-separated center variables for blowup; all variables by default
    #[arg(long)]
    pub center: Option<String>,
    /// Monomial order of every space
    #[arg(long, value_enum)]
    pub order: Option<Order>,
    /// Non-zero-divisor override for --space
    #[arg(long)]
    pub nzd: Option<String>,
    /// JSON on stdout, human text on stderr
    #[arg(long)]
    pub json: bool,
}

/// What a command found, before wrapping into the output record.
pub struct Outcome {
    pub space: Option<String>,
    pub form: Option<String>,
    pub verdict: Value,
    pub certificates: Value,
    pub flags: Value,
    pub text: String,
    pub undecided: bool,
}

fn load(cli: &Cli) -> sheafchain::Result<Session> {
    let text = std::fs::read_to_string(&cli.session).map_err(|e| Error::Io(format!("{}: {e}", cli.session.display())))?;
    let mut opts = LoadOptions {
        order: cli.order.map(|o| match o {
            Order::Lex => OrderSpec::lex(),
            Order::Degrevlex => OrderSpec::degrevlex(),
        }),
        nzd: BTreeMap::new(),
    };
    if let Some(nzd) = &cli.nzd {
        let space = cli.space.clone().ok_or_else(|| Error::InvalidInput("--nzd needs --space".into()))?;
        opts.nzd.insert(space, nzd.clone());
    }
    Session::parse_with(&text, &opts)
}

fn query(cli: &Cli) -> Value {
    let mut q = serde_json::Map::new();
    let name = cli.command.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    q.insert("command".into(), json!(name));
    q.insert("session".into(), json!(cli.session.display().to_string()));
    let opt = [
        ("space", &cli.space),
        ("form", &cli.form),
        ("resolution", &cli.resolution),
        ("relation", &cli.relation),
        ("graph", &cli.graph),
        ("h", &cli.h),
        ("level", &cli.level),
        ("probes", &cli.probes),
        ("center", &cli.center),
        ("nzd", &cli.nzd),
    ];
    for (k, v) in opt {
        if let Some(v) = v {
            q.insert(k.into(), json!(v));
        }
    }
    if cli.over_pprime {
        q.insert("over_pprime".into(), json!(true));
    }
    if let Some(o) = cli.order {
        q.insert("order".into(), json!(format!("{o:?}").to_lowercase()));
    }
    Value::Object(q)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let start = Instant::now();
    let session = match load(&cli) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let loaded = start.elapsed();
    let out = match commands::run(&cli, &session) {
        Ok(o) => o,
        Err(e) => return fail(&e),
    };
    let total = start.elapsed();
    if cli.json {
        let record = json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "query": query(&cli),
            "space": out.space,
            "form": out.form,
            "verdict": out.verdict,
            "certificates": out.certificates,
            "flags": out.flags,
            "timings_ms": {
                "load": loaded.as_secs_f64() * 1e3,
                "total": total.as_secs_f64() * 1e3,
            },
        });
        println!("{}", serde_json::to_string_pretty(&record).expect("serializable"));
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    if out.undecided {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error[{}]: {e}", e.code());
    ExitCode::from(1)
}
