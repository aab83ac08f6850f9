use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use heegaard_links::diagram::{to_braid_text, SlopeRange};
use heegaard_links::export::{dt_text, render_svg, to_dt, to_gauss, to_pd, SvgOptions};
use heegaard_links::sweep::{sweep, sweep_tsv};
use heegaard_links::validate::validate_template_str;
use heegaard_links::{
    bridge_upper_bound, build_path, crossing_census, default_slopes, fill, verify_bound,
    Execution, FillingSystem, LinkTemplate,
};

const OUT_ENV: &str = "AGOL_LINKS_OUT";
const DEFAULT_OUT: &str = "heegaard-links-out";

#[derive(Parser)]
#[command(name = "heegaard-links", version, about = "Explicit small links of prescribed Heegaard genus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the link for (n, l) and write every artifact plus a report.
    Generate(GenerateArgs),
    /// Re-check a persisted template.json.
    Validate { template: PathBuf },
    /// Tab-separated census and bound table over a range of n.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    l: usize,
    /// Uniform slope 1/s on every loop and on the augmentation circle.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "slope_file")]
    slope: Option<i64>,
    /// Per-loop slopes, one `key value` pair per line.
    #[arg(long)]
    slope_file: Option<PathBuf>,
    #[arg(long, env = OUT_ENV, default_value = DEFAULT_OUT)]
    out: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "pd,gauss,dt,svg,braid")]
    formats: Vec<Format>,
    /// Draw every crossing in the SVG instead of twist boxes.
    #[arg(long)]
    expand_twists: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Range `nmin:nmax`, inclusive.
    #[arg(long, value_parser = parse_range)]
    sweep: (usize, usize),
    /// Restrict to one component count.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Format {
    Pd,
    Gauss,
    Dt,
    Svg,
    Braid,
}

/// Failure carried to `main`: exit code plus a JSON body for stderr.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Failure {
        Failure { code: 2, body: json!({ "error": kind, "message": message.into() }) }
    }

    fn validation(kind: &str, message: impl Into<String>) -> Failure {
        Failure { code: 1, body: json!({ "error": kind, "message": message.into() }) }
    }

    fn io(path: &Path, e: std::io::Error) -> Failure {
        Failure::usage("io", format!("{}: {e}", path.display()))
    }
}

type CmdResult = Result<(), Failure>;

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected nmin:nmax")?;
    let a: usize = a.trim().parse().map_err(|_| format!("bad lower end {a:?}"))?;
    let b: usize = b.trim().parse().map_err(|_| format!("bad upper end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Slope file lines: `q S` for the augmentation circle, `* S` for every loop,
/// `b{i}_{j} S` for loops of that curve, `@k S` for the loop of path step `k`.
/// Later lines override earlier ones; `#` starts a comment.
fn read_slope_file(path: &Path, t: &LinkTemplate, window: SlopeRange) -> Result<FillingSystem, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let mut f = FillingSystem::uniform(t, window.lower);
    f.range = Some(window);
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |m: String| Failure::usage("slope_file", format!("{}:{}: {m}", path.display(), lineno + 1));
        let mut parts = line.split_whitespace();
        let (Some(key), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad(format!("expected `key slope`, got {line:?}")));
        };
        let s: i64 = value.parse().map_err(|_| bad(format!("bad slope {value:?}")))?;
        if s == 0 {
            return Err(bad("slope 0 is not a filling".into()));
        }
        if key == "q" {
            f.s_q = s;
            continue;
        }
        let steps: Vec<usize> = if key == "*" {
            t.loops.iter().map(|lp| lp.step).collect()
        } else if let Some(step) = key.strip_prefix('@') {
            let step: usize = step.parse().map_err(|_| bad(format!("bad step {key:?}")))?;
            vec![step]
        } else {
            t.loops.iter().filter(|lp| lp.label() == key).map(|lp| lp.step).collect()
        };
        if steps.is_empty() || steps.iter().any(|k| !f.s_loops.contains_key(k)) {
            return Err(bad(format!("{key:?} matches no loop")));
        }
        for k in steps {
            f.s_loops.insert(k, s);
        }
    }
    Ok(f)
}

fn write(dir: &Path, name: &str, body: &str, files: &mut Vec<String>) -> CmdResult {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|e| Failure::io(&path, e))?;
    files.push(name.to_string());
    Ok(())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn generate(args: &GenerateArgs) -> CmdResult {
    let core = |e: heegaard_links::Error| Failure::usage("parameters", e.to_string());
    let path = build_path(args.n, args.l).map_err(core)?;
    let t = heegaard_links::link_template::template_from_path(
        &path,
        heegaard_links::link_template::DEFAULT_EXTRA_FULL_TWISTS,
    );
    let window = SlopeRange::for_parameters(t.n, t.l);
    let slopes = match (args.slope, &args.slope_file) {
        (Some(0), _) => return Err(Failure::usage("slope", "slope 0 is not a filling")),
        (Some(s), _) => {
            let mut f = FillingSystem::uniform(&t, s);
            f.range = Some(window);
            f
        }
        (None, Some(file)) => read_slope_file(file, &t, window)?,
        (None, None) => default_slopes(&t),
    };
    let d = fill(&t, &slopes).map_err(|e| Failure::validation("fill", e.to_string()))?;
    let census = crossing_census(&t, &slopes).map_err(|e| Failure::validation("census", e.to_string()))?;
    let bound = verify_bound(&t, &slopes).map_err(|e| Failure::validation("bound", e.to_string()))?;

    fs::create_dir_all(&args.out).map_err(|e| Failure::io(&args.out, e))?;
    let mut files = Vec::new();
    let template_text = pretty(&t.to_json());
    write(&args.out, "template.json", &template_text, &mut files)?;
    write(&args.out, "path.json", &pretty(&path.to_json()), &mut files)?;

    let mut checks: BTreeMap<&str, Value> = BTreeMap::new();
    checks.insert("census_matches_diagram", json!(census == d.crossing_total as u64));
    checks.insert("components_equal_l", json!(d.components() == t.l));
    checks.insert("bound", json!(bound.pass));
    checks.insert("endpoint_matches_monodromy", json!(path.endpoint_matches_monodromy()));
    checks.insert("template_round_trip", json!(validate_template_str(&template_text).ok));

    let mut notes = Vec::new();
    let mut formats = args.formats.clone();
    formats.sort();
    formats.dedup();
    for format in formats {
        match format {
            Format::Braid => write(&args.out, "braid.txt", &to_braid_text(&d, t.l), &mut files)?,
            Format::Pd => {
                let pd = to_pd(&d);
                checks.insert("pd", json!(pd.check().is_ok()));
                write(&args.out, "link.pd", &pd.to_string(), &mut files)?;
            }
            Format::Gauss => {
                let g = to_gauss(&d);
                checks.insert("gauss", json!(g.check().is_ok()));
                write(&args.out, "link.gauss", &g.to_string(), &mut files)?;
            }
            Format::Dt => match to_dt(&d) {
                Ok(code) => write(&args.out, "link.dt", &dt_text(&code), &mut files)?,
                Err(e) => notes.push(format!("link.dt skipped: {e}")),
            },
            Format::Svg => {
                let options = SvgOptions { expand_twists: args.expand_twists };
                let svg = render_svg(&d, &t, &options).map_err(|e| Failure::validation("svg", e.to_string()))?;
                write(&args.out, "link.svg", &svg, &mut files)?;
            }
        }
    }

    let ok = checks.values().all(|v| v.as_bool() == Some(true));
    let loop_slopes: BTreeMap<String, i64> = t
        .loops
        .iter()
        .map(|lp| (format!("{}@{}", lp.label(), lp.step), slopes.loop_slope(lp.step).unwrap_or(0)))
        .collect();
    let report = json!({
        "ok": ok,
        "n": t.n,
        "l": t.l,
        "path_length": t.path_length,
        "loop_census": t.width_census(),
        "slopes": {
            "window": window,
            "in_window": bound.slopes_in_range,
            "augmentation": slopes.s_q,
            "loops": loop_slopes,
        },
        "crossing_census": census,
        "crossing_total": d.crossing_total,
        "bound": bound.bound,
        "margin": bound.margin,
        "bound_pass": bound.pass,
        "published_estimates": {
            "multiplier_2pi(2n-1)+2": bound.estimate_2n_minus_1,
            "multiplier_2pi(2n-l)+2": bound.estimate_2n_minus_l,
        },
        "components": d.components(),
        "bridge_upper_bound": bridge_upper_bound(&d),
        "checks": checks,
        "notes": notes,
        "files": files,
    });
    write(&args.out, "report.json", &pretty(&report), &mut Vec::new())?;
    print!("{}", pretty(&report));
    if ok {
        Ok(())
    } else {
        let failed: Vec<&str> =
            checks.iter().filter(|(_, v)| v.as_bool() != Some(true)).map(|(k, _)| *k).collect();
        Err(Failure::validation("checks_failed", failed.join(",")))
    }
}

fn validate(template: &Path) -> CmdResult {
    let text = fs::read_to_string(template).map_err(|e| Failure::io(template, e))?;
    let report = validate_template_str(&text);
    let body = serde_json::to_value(&report).expect("report serializes");
    print!("{}", pretty(&body));
    if report.ok {
        Ok(())
    } else {
        Err(Failure { code: 1, body: json!({ "error": "validation", "findings": body["findings"] }) })
    }
}

fn run_sweep(args: &SweepArgs) -> CmdResult {
    let (nmin, nmax) = args.sweep;
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let rows = sweep(nmin, nmax, args.l, exec).map_err(|e| Failure::usage("parameters", e.to_string()))?;
    if rows.is_empty() {
        return Err(Failure::usage("parameters", format!("no (n, l) pairs in {nmin}:{nmax}")));
    }
    print!("{}", sweep_tsv(&rows));
    let failing: Vec<String> = rows.iter().filter(|r| !r.pass).map(|r| format!("n={} l={}", r.n, r.l)).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(Failure::validation("bound", failing.join(",")))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let body = json!({ "error": "usage", "message": e.render().to_string().trim() });
            eprintln!("{body}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Generate(args) => generate(args),
        Command::Validate { template } => validate(template),
        Command::Sweep(args) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.body);
            ExitCode::from(f.code)
        }
    }
}
