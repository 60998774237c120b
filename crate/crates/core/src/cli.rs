//! Command-line front end.

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::builders::sequence_metric;
use crate::error::{Error, Result};
use crate::format::{self, FunctionValue, Workspace};
use crate::prolim::{Characteristic, IndFunction, LevelValue, MultiplierSystem, Stability, Tower};
use crate::ring::LocalizedClass;
use crate::variety::ConstructibleSet;
use crate::BigInt;

/// Bundled model files, by name.
pub const DEMOS: &[(&str, &str)] = &[
    ("p1_power", include_str!("../demos/p1_power.model")),
    ("arc_a1", include_str!("../demos/arc_a1.model")),
    ("arc_a2", include_str!("../demos/arc_a2.model")),
    ("arc_p1", include_str!("../demos/arc_p1.model")),
    ("sequence", include_str!("../demos/sequence.model")),
    ("bundles", include_str!("../demos/bundles.model")),
    ("collapse", include_str!("../demos/collapse.model")),
];

pub fn demo(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, src)| *src)
}

#[derive(Parser, Debug)]
#[command(
    name = "proeuler",
    version,
    about = "Exact Euler calculus and pro-characteristics on stratified models"
)]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Plain, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Plain,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every entity in a model file and run the invariant checks.
    Check { file: PathBuf },
    /// Motivic measure of a cylinder set.
    Measure {
        file: PathBuf,
        #[arg(long)]
        tower: String,
        #[arg(long)]
        level: usize,
        /// Comma-separated stratum ids; all strata when omitted.
        #[arg(long)]
        set: Option<String>,
    },
    /// Pro-Euler characteristic of a function declared on a tower level.
    ChiInd {
        file: PathBuf,
        #[arg(long)]
        tower: String,
        #[arg(long)]
        function: String,
        /// Top level of the direct stability check.
        #[arg(long)]
        horizon: Option<usize>,
        /// Lift the representative to this level first.
        #[arg(long)]
        level: Option<usize>,
    },
    /// Partial sum and tail bound of the sequence-space metric.
    Metric {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Print a bundled model file, or list them when no name is given.
    Demo { name: Option<String> },
}

/// Failure categories, mapped to exit codes 1 and 2.
enum Failure {
    Validation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invalid(_)
            | Error::Unstable { .. }
            | Error::Uncertified(_)
            | Error::ZeroMultiplier { .. }
            | Error::NotFiberSquare { .. } => Failure::Validation(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

/// Run the command line `args` (including the program name), writing output
/// to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let json = cli.format == OutputFormat::Json;
    let result = match cli.command {
        Command::Check { file } => check(&file, json),
        Command::Measure {
            file,
            tower,
            level,
            set,
        } => measure(&file, &tower, level, set.as_deref(), json),
        Command::ChiInd {
            file,
            tower,
            function,
            horizon,
            level,
        } => chi_ind(&file, &tower, &function, horizon, level, json),
        Command::Metric { k, a, b } => metric(k, &a, &b, json),
        Command::Demo { name } => demo_text(name.as_deref()),
    };
    match result {
        Ok(text) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(Failure::Validation(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn read(file: &PathBuf) -> std::result::Result<format::ModelFile, Failure> {
    let src = std::fs::read_to_string(file)
        .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
    format::parse(&src).map_err(|e| Failure::Usage(format!("{}:{e}", file.display())))
}

fn load(file: &PathBuf) -> std::result::Result<Workspace, Failure> {
    let parsed = read(file)?;
    let (ws, report) = format::check(&parsed);
    if report.is_valid() {
        Ok(ws)
    } else {
        Err(Failure::Validation(format!(
            "{} is invalid:\n{report}",
            file.display()
        )))
    }
}

fn check(file: &PathBuf, json: bool) -> Outcome {
    let parsed = read(file)?;
    let (_, report) = format::check(&parsed);
    let text = if json {
        let violations: Vec<_> = report
            .violations()
            .iter()
            .map(|v| json!({"subject": v.subject, "kind": v.kind.label(), "detail": v.detail}))
            .collect();
        format!(
            "{}\n",
            json!({"valid": report.is_valid(), "violations": violations})
        )
    } else {
        format!("{report}\n")
    };
    if report.is_valid() {
        Ok(text)
    } else {
        Err(Failure::Validation(text.trim_end().to_string()))
    }
}

fn fraction_output(value: &LocalizedClass<BigInt>, stability: &str, json: bool) -> String {
    let normal = value.normalize();
    if json {
        format!(
            "{}\n",
            json!({
                "numerator": normal.numerator().to_string(),
                "denominator": normal.denominator().to_string(),
                "stability": stability,
            })
        )
    } else {
        format!("{value}\n")
    }
}

fn measure(file: &PathBuf, tower: &str, level: usize, set: Option<&str>, json: bool) -> Outcome {
    let ws = load(file)?;
    let tw = ws.tower(tower)?;
    let model = tw.level(level)?;
    let set = match set {
        None => ConstructibleSet::all(&model),
        Some(list) => {
            let ids: Vec<&str> = list
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            ConstructibleSet::from_ids(&model, &ids)?
        }
    };
    let steps = ws
        .multipliers_for(tower, Characteristic::Gamma)
        .ok_or_else(|| Error::Uncertified(tower.to_string()))?;
    let value = measure_with(tw, level, &set, &steps)?;
    Ok(fraction_output(&value, "certified", json))
}

fn measure_with(
    tw: &Arc<Tower<BigInt>>,
    level: usize,
    set: &ConstructibleSet,
    steps: &MultiplierSystem<BigInt>,
) -> Result<LocalizedClass<BigInt>> {
    if !tw.certifies(Characteristic::Gamma, steps, level) {
        return Err(Error::Uncertified(tw.name().to_string()));
    }
    let cylinder: IndFunction<BigInt, crate::variety::ConstructibleFn<BigInt>> =
        crate::prolim::cylinder_function(tw, level, set)?;
    cylinder.pro_characteristic(steps, Characteristic::Gamma)
}

fn chi_ind(
    file: &PathBuf,
    tower: &str,
    function: &str,
    horizon: Option<usize>,
    lift: Option<usize>,
    json: bool,
) -> Outcome {
    let ws = load(file)?;
    let tw = ws.tower(tower)?;
    let entry = ws.function(function)?;
    let level = match &entry.level {
        Some((t, n)) if t == tower => *n,
        _ => {
            return Err(Failure::Usage(format!(
                "function `{function}` is not declared on tower `{tower}`"
            )))
        }
    };
    let steps = ws
        .multipliers_for(tower, Characteristic::Euler)
        .ok_or_else(|| Failure::Validation(format!("tower `{tower}` has no Euler multipliers")))?;
    let (value, stability) = match &entry.value {
        FunctionValue::Constructible(v) => evaluate(tw, level, v.clone(), &steps, horizon, lift)?,
        FunctionValue::Motivic(v) => evaluate(tw, level, v.clone(), &steps, horizon, lift)?,
    };
    let label = stability.label();
    if json {
        Ok(fraction_output(&value, label, true))
    } else {
        let how = if stability.certified {
            "certified".to_string()
        } else {
            format!("horizon-checked up to level {}", stability.horizon)
        };
        Ok(format!("{value}\nstability: {how}\n"))
    }
}

fn evaluate<V: LevelValue<BigInt>>(
    tw: &Arc<Tower<BigInt>>,
    level: usize,
    value: V,
    steps: &MultiplierSystem<BigInt>,
    horizon: Option<usize>,
    lift: Option<usize>,
) -> Result<(LocalizedClass<BigInt>, Stability)> {
    let mut f = IndFunction::plain(tw.clone(), level, value)?;
    if let Some(m) = lift {
        f = f.lift(m)?;
    }
    let horizon = horizon.unwrap_or_else(|| f.default_horizon());
    f.pro_characteristic_at(steps, Characteristic::Euler, horizon)
}

fn symbols(s: &str) -> std::result::Result<Vec<u32>, Failure> {
    let parts: Vec<&str> = if s.contains(',') {
        s.split(',').map(str::trim).collect()
    } else {
        s.split("").filter(|c| !c.is_empty()).collect()
    };
    parts
        .into_iter()
        .map(|p| {
            p.parse::<u32>()
                .map_err(|_| Failure::Usage(format!("`{p}` is not a symbol")))
        })
        .collect()
}

fn metric(k: u32, a: &str, b: &str, json: bool) -> Outcome {
    let (partial, tail) = sequence_metric(k, &symbols(a)?, &symbols(b)?)?;
    Ok(if json {
        format!(
            "{}\n",
            json!({"partial": partial.to_string(), "tail_bound": tail.to_string()})
        )
    } else {
        format!("partial {partial}\ntail_bound {tail}\n")
    })
}

fn demo_text(name: Option<&str>) -> Outcome {
    match name {
        None => Ok(DEMOS.iter().map(|(n, _)| format!("{n}\n")).collect()),
        Some(n) => demo(n)
            .map(str::to_string)
            .ok_or_else(|| Failure::Usage(format!("unknown demo `{n}`"))),
    }
}
