mod config;
mod figures;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Arg, ArgAction, ArgMatches, Command};
use lattice_mcts::harness::{records_csv, run_trials, summarize, ExperimentRow, SUMMARY_CSV_HEADER};

use config::{expand_target, parse_config, parse_header, ConfigError, Resolver, Settings, KEYS};
use figures::{figure_defaults, run_figure, FIGURES, FIGURE_TRIALS};

const WORKERS_ENV: &str = "LATTICE_MCTS_WORKERS";

enum Failure {
    Config(String),
    Io(String),
    Capped(usize),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<lattice_mcts::error::Error> for Failure {
    fn from(e: lattice_mcts::error::Error) -> Self {
        Failure::Config(e.to_string())
    }
}

fn key_args() -> Vec<Arg> {
    let mut args: Vec<Arg> = KEYS
        .iter()
        .map(|k| {
            let default = if k.default.is_empty() { "unset" } else { k.default };
            let arg = Arg::new(k.name)
                .long(k.name)
                .value_name("VALUE")
                .help(format!("{} [default: {default}]", k.help))
                .help_heading("Keys");
            if k.name == "grid.n" {
                arg.visible_alias("grid")
            } else {
                arg
            }
        })
        .collect();
    args.push(
        Arg::new("config")
            .long("config")
            .value_name("FILE")
            .help("key=value file; flags override it"),
    );
    args.push(
        Arg::new("target")
            .long("target")
            .value_name("SPEC")
            .help("delta:X,Y | gaussian:SIGMA[@MX,MY] | uniform"),
    );
    args
}

fn output_args() -> Vec<Arg> {
    vec![
        Arg::new("output")
            .long("output")
            .short('o')
            .value_name("DIR")
            .default_value("out")
            .help("directory for the output files"),
        Arg::new("workers")
            .long("workers")
            .value_name("N")
            .help(format!("trial threads, 0 for all cores [default: ${WORKERS_ENV} or 0]")),
        Arg::new("strict")
            .long("strict")
            .action(ArgAction::SetTrue)
            .help("exit with status 4 if any trial hit its step cap"),
    ]
}

fn figure_args() -> Vec<Arg> {
    vec![
        Arg::new("scale")
            .long("scale")
            .value_name("F")
            .help(format!("multiply the trial count ({FIGURE_TRIALS} unless `trials` is set)")),
        Arg::new("sigma")
            .long("sigma")
            .value_name("SIGMA")
            .help("target-histogram: gaussian sigma, or inf [default: 5]"),
        Arg::new("draws").long("draws").value_name("N").help("target-histogram: draws [default: 10000]"),
        Arg::new("sigmas")
            .long("sigmas")
            .value_name("LIST")
            .help("gauss-sweep: sigma list [default: 0,2,5,10,inf]"),
        Arg::new("loops-list")
            .long("loops-list")
            .value_name("LIST")
            .help("budget-loops: loop budgets [default: 10,100,1000,10000]"),
        Arg::new("time-list")
            .long("time-list")
            .value_name("LIST")
            .help("budget-time: milliseconds per move [default: 1,2,5,10]"),
        Arg::new("sizes")
            .long("sizes")
            .value_name("LIST")
            .help("nsarw-convergence: grid sides [default: 11,21,41]"),
    ]
}

fn cli() -> Command {
    Command::new("lattice-mcts")
        .about("UCT search for a hidden target on a periodic lattice")
        .version(env!("CARGO_PKG_VERSION"))
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(
            Command::new("run")
                .about("Run one strategy on one target distribution")
                .args(key_args())
                .args(output_args()),
        )
        .subcommand(
            Command::new("figure")
                .about("Run a preset experiment (N=40, 1000 trials, r_v=1)")
                .arg(
                    Arg::new("name")
                        .required(true)
                        .value_parser(clap::builder::PossibleValuesParser::new(FIGURES)),
                )
                .args(key_args())
                .args(output_args())
                .args(figure_args()),
        )
        .subcommand(
            Command::new("histogram")
                .about("Same as `figure target-histogram`")
                .args(key_args())
                .args(output_args())
                .args(figure_args()),
        )
        .subcommand(
            Command::new("replay")
                .about("Rerun the experiment recorded in an output file header")
                .arg(Arg::new("file").required(true).value_name("FILE"))
                .args(output_args()),
        )
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Config file, then `--target`, then individual key flags.
fn gather(m: &ArgMatches) -> Result<Settings, Failure> {
    let mut settings = match m.get_one::<String>("config") {
        Some(path) => parse_config(&read(Path::new(path))?)
            .map_err(|e| Failure::Config(format!("{path}: {e}")))?,
        None => Settings::new(),
    };
    if let Some(spec) = m.get_one::<String>("target") {
        expand_target(spec, &mut settings)?;
    }
    for k in KEYS {
        if let Some(v) = m.get_one::<String>(k.name) {
            settings.insert(k.name.to_string(), v.clone());
        }
    }
    Ok(settings)
}

fn workers(m: &ArgMatches) -> Result<usize, Failure> {
    let (raw, from) = match m.get_one::<String>("workers") {
        Some(v) => (Some(v.clone()), "--workers"),
        None => (std::env::var(WORKERS_ENV).ok(), WORKERS_ENV),
    };
    match raw {
        None => Ok(0),
        Some(v) => v.trim().parse().map_err(|_| Failure::Config(format!("{from}: invalid worker count `{v}`"))),
    }
}

fn header(figure: Option<&str>, settings: &Settings) -> Result<String, Failure> {
    let mut out = String::new();
    if let Some(name) = figure {
        out.push_str(&format!("# figure={name}\n"));
    }
    for (k, v) in Resolver::new(settings).echo()? {
        out.push_str(&format!("# {k}={v}\n"));
    }
    for (k, v) in settings.iter().filter(|(k, _)| config::is_figure_key(k)) {
        out.push_str(&format!("# {k}={v}\n"));
    }
    Ok(out)
}

fn summary_files(head: &str, settings: &Settings, rows: &[ExperimentRow]) -> Result<Vec<(&'static str, String)>, Failure> {
    let mut csv = format!("{head}{SUMMARY_CSV_HEADER}\n");
    for row in rows {
        csv.push_str(&row.to_csv());
        csv.push('\n');
    }
    let config: serde_json::Map<String, serde_json::Value> = Resolver::new(settings)
        .echo()?
        .into_iter()
        .chain(settings.iter().filter(|(k, _)| config::is_figure_key(k)).map(|(k, v)| (k.clone(), v.clone())))
        .map(|(k, v)| (k, serde_json::Value::String(v)))
        .collect();
    let flat: Vec<_> = rows.iter().map(ExperimentRow::flat).collect();
    let json = serde_json::json!({ "config": config, "rows": flat });
    let json = serde_json::to_string_pretty(&json).map_err(|e| Failure::Io(e.to_string()))? + "\n";
    Ok(vec![("summary.csv", csv), ("summary.json", json)])
}

fn write_all(dir: &Path, files: &[(&str, String)]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    for (name, body) in files {
        let path = dir.join(name);
        fs::write(&path, body).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn strict_check(strict: bool, capped: usize) -> Result<(), Failure> {
    if strict && capped > 0 {
        Err(Failure::Capped(capped))
    } else {
        Ok(())
    }
}

fn cmd_run(settings: &Settings, out: &Path, workers: usize, strict: bool) -> Result<(), Failure> {
    let r = Resolver::new(settings);
    let cfg = r.grid()?;
    let dist = r.target()?;
    let strategy = r.strategy()?;
    let (trials, seed) = (r.trials()?, r.seed()?);
    let records = run_trials(&strategy, &dist, &cfg, trials, seed, workers)?;
    let row = ExperimentRow {
        experiment: r.experiment()?,
        strategy: strategy.label(),
        side: cfg.side(),
        sigma: dist.sigma(),
        budget: match &strategy {
            lattice_mcts::harness::Strategy::Mcts(m) => Some(m.get_budget()),
            lattice_mcts::harness::Strategy::Baseline(_) => None,
        },
        trials,
        base_seed: seed,
        summary: summarize(&records)?,
    };
    let head = header(None, settings)?;
    let mut files = vec![("records.csv", format!("{head}{}", records_csv(&records)))];
    files.extend(summary_files(&head, settings, std::slice::from_ref(&row))?);
    write_all(out, &files)?;
    println!("{SUMMARY_CSV_HEADER}\n{}", row.to_csv());
    strict_check(strict, row.summary.capped_count)
}

fn cmd_figure(name: &str, mut settings: Settings, out: &Path, workers: usize, strict: bool) -> Result<(), Failure> {
    for (k, v) in figure_defaults(name) {
        settings.entry(k.to_string()).or_insert_with(|| v.to_string());
    }
    let head = header(Some(name), &settings)?;
    let fig = run_figure(name, &settings, workers)?;
    let mut files = Vec::new();
    if !fig.rows.is_empty() {
        files.extend(summary_files(&head, &settings, &fig.rows)?);
    }
    if let Some((file, body)) = &fig.extra {
        files.push((file, format!("{head}{body}")));
    }
    write_all(out, &files)?;
    if fig.rows.is_empty() {
        if let Some((_, body)) = &fig.extra {
            print!("{body}");
        }
    } else {
        println!("{SUMMARY_CSV_HEADER}");
        for row in &fig.rows {
            println!("{}", row.to_csv());
        }
    }
    strict_check(strict, fig.rows.iter().map(|r| r.summary.capped_count).sum())
}

/// Figure presets start from 1000 trials, scaled by `--scale`,
/// unless `trials` was given explicitly.
fn figure_settings(m: &ArgMatches) -> Result<Settings, Failure> {
    let mut settings = gather(m)?;
    let scale = match m.get_one::<String>("scale") {
        Some(s) => s
            .parse::<f64>()
            .ok()
            .filter(|f| f.is_finite() && *f > 0.0)
            .ok_or_else(|| Failure::Config(format!("--scale: invalid factor `{s}`")))?,
        None => 1.0,
    };
    let base = if settings.contains_key("trials") { Resolver::new(&settings).trials()? } else { FIGURE_TRIALS };
    settings.insert("trials".into(), ((base as f64 * scale).round() as u64).max(2).to_string());
    for (flag, key) in [
        ("sigma", "figure.sigma"),
        ("draws", "figure.draws"),
        ("sigmas", "figure.sigmas"),
        ("loops-list", "figure.loops"),
        ("time-list", "figure.time_ms"),
        ("sizes", "figure.sizes"),
    ] {
        if let Some(v) = m.get_one::<String>(flag) {
            settings.insert(key.into(), v.clone());
        }
    }
    Ok(settings)
}

fn dispatch(m: &ArgMatches) -> Result<(), Failure> {
    let (sub, sm) = m.subcommand().expect("subcommand required");
    let out = PathBuf::from(sm.get_one::<String>("output").expect("has default"));
    let strict = sm.get_flag("strict");
    let workers = workers(sm)?;
    match sub {
        "run" => cmd_run(&gather(sm)?, &out, workers, strict),
        "figure" => {
            let name = sm.get_one::<String>("name").expect("required");
            cmd_figure(name, figure_settings(sm)?, &out, workers, strict)
        }
        "histogram" => cmd_figure("target-histogram", figure_settings(sm)?, &out, workers, strict),
        "replay" => {
            let path = sm.get_one::<String>("file").expect("required");
            let (figure, settings) = parse_header(&read(Path::new(path))?)
                .map_err(|e| Failure::Config(format!("{path}: {e}")))?;
            match figure {
                Some(name) => cmd_figure(&name, settings, &out, workers, strict),
                None => cmd_run(&settings, &out, workers, strict),
            }
        }
        _ => unreachable!("clap rejects unknown subcommands"),
    }
}

fn main() -> ExitCode {
    let matches = cli().get_matches();
    match dispatch(&matches) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Capped(n)) => {
            eprintln!("error: {n} trial(s) hit the step cap");
            ExitCode::from(4)
        }
    }
}
