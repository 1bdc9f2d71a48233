//! Command-line front end for `lifedens`. [`run`] takes the argument vector
//! and returns the exit status and the report text, so it can be driven
//! from tests without spawning a process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lifedens::bounds::{bound_suite, optimal_weights_lp_with_limit, verify_certificate, MAX_LP_ROWS};
use lifedens::constructions::{gallery, gallery_names, generate};
use lifedens::io::{parse_certificate, parse_pattern, write_grid, write_torus, PatternFile};
use lifedens::rational::ratio;
use lifedens::rules::{
    interior_max_degree, interior_still_life_check, life_step, oscillator_phases, still_life_report, StillLifeReport,
    DEFAULT_MAX_STEPS,
};
use lifedens::search::{self, DEFAULT_BUDGET};
use lifedens::voronoi::{augment_isolated, cell_areas, classify_config, LocalConfig};
use lifedens::{Cell, Constraint, Error, FiniteGrid, Neighborhood, Rational, TorusPattern};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSIFIED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lifedens", version, about = "Densities of lattice patterns under neighbor-count constraints")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report density and degree of a pattern, or check still-life conditions.
    Check(CheckArgs),
    /// Print the density of a pattern.
    Density { file: PathBuf },
    /// Apply the Life rule to a torus pattern.
    Evolve {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Find the Life period of a torus pattern.
    Period {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
        max_steps: usize,
    },
    /// Voronoi cell areas of a planar torus pattern, as TSV.
    Voronoi {
        file: PathBuf,
        /// Add the center of every empty 3x3 block first.
        #[arg(long)]
        augment: bool,
    },
    /// Upper bounds: certificate verification, LP weights, closed forms.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Maximum density over patterns on a torus.
    Search(SearchArgs),
    /// Generate a named construction.
    Gen {
        name: String,
        /// Comma-separated integer parameters.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<i64>,
        /// Tile to these dimensions, e.g. 8x8.
        #[arg(long)]
        tile: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print or list the figure gallery.
    Gallery {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Print the periodic torus instead of the printed window.
        #[arg(long)]
        torus: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct CheckArgs {
    file: PathBuf,
    /// Check the three still-life conditions.
    #[arg(long)]
    still_life: bool,
    /// Require every cell to have at most this many neighbors.
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long, default_value = "moore8")]
    neighborhood: String,
}

#[derive(Debug, Subcommand)]
enum BoundCommand {
    /// Verify a weight certificate file.
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Optimal box weights by linear programming.
    Lp {
        /// Box size, e.g. 3x3.
        #[arg(long = "box")]
        box_dims: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "moore8")]
        neighborhood: String,
        #[arg(long, default_value_t = MAX_LP_ROWS)]
        max_rows: usize,
    },
    /// The best closed-form bound.
    Analytic {
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "moore8")]
        neighborhood: String,
    },
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Torus dimensions, e.g. 5x5 or 2x2x4.
    #[arg(long)]
    dims: String,
    #[arg(long, required_unless_present = "still_life")]
    degree: Option<usize>,
    #[arg(long, default_value = "moore8")]
    neighborhood: String,
    /// Maximize over still lifes instead.
    #[arg(long, conflicts_with = "degree")]
    still_life: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// List every optimum up to symmetry.
    #[arg(long)]
    enumerate: bool,
}

/// A report: exit status, text, and the JSON mirror of the text.
struct Report {
    status: i32,
    text: String,
    json: Value,
}

impl Report {
    fn new(status: i32, text: String, json: Value) -> Self {
        Report { status, text, json }
    }
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExhausted(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (status, e.to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(r) if json => (r.status, format!("{}\n", serde_json::to_string_pretty(&r.json).expect("valid json"))),
        Ok(r) => (r.status, r.text),
        Err(Failure::Usage(msg)) => (EXIT_USAGE, format!("error: {msg}\n")),
        Err(Failure::Budget(msg)) => (EXIT_BUDGET, format!("error: {msg}\n")),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Check(a) => check(a),
        Command::Density { file } => density(&file),
        Command::Evolve { file, steps, output } => evolve(&file, steps, output.as_deref()),
        Command::Period { file, max_steps } => period(&file, max_steps),
        Command::Voronoi { file, augment } => voronoi(&file, augment),
        Command::Bound(b) => bound(b),
        Command::Search(a) => search_cmd(a),
        Command::Gen { name, params, tile, output } => gen(&name, &params, tile.as_deref(), output.as_deref()),
        Command::Gallery { name, list, torus, output } => gallery_cmd(name.as_deref(), list, torus, output.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_pattern(path: &Path) -> Result<PatternFile, Failure> {
    parse_pattern(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_torus(path: &Path) -> Result<TorusPattern, Failure> {
    match read_pattern(path)? {
        PatternFile::Torus(p) => Ok(p),
        PatternFile::Grid(_) => Err(Failure::Usage(format!("{}: expected a torus pattern", path.display()))),
    }
}

fn write_out(path: Option<&Path>, body: String) -> Result<String, Failure> {
    match path {
        Some(p) => {
            fs::write(p, &body).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            Ok(format!("wrote {}\n", p.display()))
        }
        None => Ok(body),
    }
}

fn parse_dims(s: &str) -> Result<Vec<usize>, Failure> {
    s.split('x')
        .map(|t| t.trim().parse::<usize>().ok().filter(|&d| d > 0))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Failure::Usage(format!("invalid dimensions `{s}`; expected e.g. 5x5")))
}

fn neighborhood(name: &str) -> Result<Neighborhood, Failure> {
    Ok(Neighborhood::by_name(name)?)
}

fn cells_json(cells: &[Cell]) -> Value {
    Value::Array(cells.iter().map(|c| json!(c.coords())).collect())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn still_life_lines(out: &mut String, rep: &StillLifeReport) {
    for (label, cells) in [("births", &rep.births), ("lonely", &rep.lonely), ("crowded", &rep.crowded)] {
        if !cells.is_empty() {
            let shown: Vec<String> = cells.iter().take(8).map(|c| c.to_string()).collect();
            let more = if cells.len() > 8 { " ..." } else { "" };
            let _ = writeln!(out, "  {label}: {} {}{more}", cells.len(), shown.join(" "));
        }
    }
}

fn still_life_json(rep: &StillLifeReport) -> Value {
    json!({
        "cond1": rep.cond1(),
        "cond2": rep.cond2(),
        "cond3": rep.cond3(),
        "births": cells_json(&rep.births),
        "lonely": cells_json(&rep.lonely),
        "crowded": cells_json(&rep.crowded),
    })
}

fn grid_density(g: &FiniteGrid) -> Rational {
    ratio(g.len() as i64, (g.width() * g.height()) as i64)
}

fn check(a: CheckArgs) -> Outcome {
    let nb = neighborhood(&a.neighborhood)?;
    let mut text = String::new();
    let mut ok = true;
    let mut obj = serde_json::Map::new();
    match read_pattern(&a.file)? {
        PatternFile::Torus(p) => {
            let d = p.density();
            obj.insert("kind".into(), json!("torus"));
            obj.insert("dims".into(), json!(p.dims()));
            obj.insert("density".into(), json!(d.to_string()));
            if a.still_life {
                let rep = still_life_report(&p)?;
                ok &= rep.is_still_life();
                let _ = writeln!(text, "still life: {}, density {d}", yes_no(rep.is_still_life()));
                still_life_lines(&mut text, &rep);
                obj.insert("still_life".into(), json!(rep.is_still_life()));
                obj.insert("conditions".into(), still_life_json(&rep));
            } else {
                let _ = writeln!(text, "density {d}");
            }
            let deg = p.max_degree(&nb)?;
            let _ = writeln!(text, "max degree {deg} ({})", a.neighborhood);
            obj.insert("max_degree".into(), json!(deg));
            if let Some(n) = a.degree {
                let pass = deg <= n;
                ok &= pass;
                let _ = writeln!(text, "degree ≤ {n}: {}", yes_no(pass));
                obj.insert("degree_ok".into(), json!(pass));
            }
        }
        PatternFile::Grid(g) => {
            let d = grid_density(&g);
            obj.insert("kind".into(), json!("grid"));
            obj.insert("dims".into(), json!([g.width(), g.height()]));
            obj.insert("window_density".into(), json!(d.to_string()));
            if a.still_life {
                let rep = interior_still_life_check(&g)?;
                ok &= rep.is_still_life();
                let _ = writeln!(text, "interior still life: {}, window density {d}", yes_no(rep.is_still_life()));
                still_life_lines(&mut text, &rep);
                obj.insert("still_life".into(), json!(rep.is_still_life()));
                obj.insert("conditions".into(), still_life_json(&rep));
            } else {
                let _ = writeln!(text, "window density {d}");
            }
            let deg = interior_max_degree(&g, &nb)?;
            match deg {
                Some(v) => {
                    let _ = writeln!(text, "interior max degree {v} ({})", a.neighborhood);
                }
                None => text.push_str("interior max degree: no interior cells\n"),
            }
            obj.insert("max_degree".into(), json!(deg));
            if let Some(n) = a.degree {
                let pass = deg.is_none_or(|v| v <= n);
                ok &= pass;
                let _ = writeln!(text, "degree ≤ {n}: {}", yes_no(pass));
                obj.insert("degree_ok".into(), json!(pass));
            }
        }
    }
    let status = if ok { EXIT_OK } else { EXIT_FALSIFIED };
    Ok(Report::new(status, text, Value::Object(obj)))
}

fn density(file: &Path) -> Outcome {
    Ok(match read_pattern(file)? {
        PatternFile::Torus(p) => {
            let d = p.density();
            Report::new(
                EXIT_OK,
                format!("density {d} ({} of {} cells)\n", p.len(), p.volume()),
                json!({"density": d.to_string(), "cells": p.len(), "volume": p.volume()}),
            )
        }
        PatternFile::Grid(g) => {
            let d = grid_density(&g);
            let area = g.width() * g.height();
            Report::new(
                EXIT_OK,
                format!("window density {d} ({} of {area} cells)\n", g.len()),
                json!({"window_density": d.to_string(), "cells": g.len(), "volume": area}),
            )
        }
    })
}

fn evolve(file: &Path, steps: usize, output: Option<&Path>) -> Outcome {
    let mut p = read_torus(file)?;
    for _ in 0..steps {
        p = life_step(&p)?;
    }
    let body = write_torus(&p);
    let json = json!({"steps": steps, "density": p.density().to_string(), "pattern": body});
    Ok(Report::new(EXIT_OK, write_out(output, body)?, json))
}

fn period(file: &Path, max_steps: usize) -> Outcome {
    let p = read_torus(file)?;
    match oscillator_phases(&p, max_steps) {
        Ok(phases) => {
            let densities: Vec<Rational> = phases.iter().map(|q| q.density()).collect();
            let avg: Rational =
                densities.iter().sum::<Rational>() / Rational::from_integer((phases.len() as i64).into());
            let list: Vec<String> = densities.iter().map(|d| d.to_string()).collect();
            Ok(Report::new(
                EXIT_OK,
                format!("period {}\nphase densities {}\naverage density {avg}\n", phases.len(), list.join(" ")),
                json!({"period": phases.len(), "phase_densities": list, "average_density": avg.to_string()}),
            ))
        }
        Err(Error::NotOscillator(n)) => Ok(Report::new(
            EXIT_FALSIFIED,
            format!("no period within {n} steps\n"),
            json!({"period": null, "max_steps": n}),
        )),
        Err(e) => Err(e.into()),
    }
}

fn voronoi(file: &Path, augment: bool) -> Outcome {
    let mut p = read_torus(file)?;
    if augment {
        p = augment_isolated(&p)?;
    }
    let areas = cell_areas(&p)?;
    let mut text = String::from("x\ty\tarea\talpha\talpha0\ttype\n");
    let mut rows = Vec::new();
    let mut sigma = 0;
    let mut sigma0 = 0;
    for c in p.cells() {
        let a = areas[p.index_of(c.coords())];
        let cfg = LocalConfig::of(&p, &c)?;
        let a0 = lifedens::voronoi::alpha0(cfg);
        let ty = classify_config(cfg).map_or("-", |t| t.label());
        sigma += a.alpha();
        sigma0 += a0;
        let _ = writeln!(text, "{}\t{}\t{}\t{}\t{a0}\t{ty}", c.x(), c.y(), a, a.alpha());
        rows.push(json!({"x": c.x(), "y": c.y(), "area": a.to_string(), "alpha": a.alpha(), "alpha0": a0, "type": ty}));
    }
    let _ = writeln!(text, "# cells {} sigma {sigma} sigma0 {sigma0} density {}", p.len(), p.density());
    Ok(Report::new(
        EXIT_OK,
        text,
        json!({"cells": rows, "sigma": sigma, "sigma0": sigma0, "density": p.density().to_string()}),
    ))
}

fn bound(cmd: BoundCommand) -> Outcome {
    match cmd {
        BoundCommand::Verify { file, budget } => {
            let cert =
                parse_certificate(&read(&file)?).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let r = verify_certificate(&cert, budget)?;
            let (m, t) = (r.max_weight.clone(), r.total_weight.clone());
            let sign = if r.valid { "≤" } else { ">" };
            let verdict = if r.valid { "valid" } else { "invalid" };
            let mut text = format!("max weight {m}/{t} {sign} {}: {verdict}\n", cert.d);
            let _ = writeln!(text, "bound {}", &m / &t);
            for s in &r.tight_subsets {
                let cells: Vec<String> = s.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(text, "tight {}", cells.join(" "));
            }
            let _ = writeln!(text, "nodes {}", r.nodes_explored);
            let tight: Vec<Value> = r.tight_subsets.iter().map(|s| cells_json(s)).collect();
            let json = json!({
                "max_weight": m.to_string(),
                "total_weight": t.to_string(),
                "claimed": cert.d.to_string(),
                "valid": r.valid,
                "bound": (m / t).to_string(),
                "tight_subsets": tight,
                "nodes_explored": r.nodes_explored,
            });
            Ok(Report::new(if r.valid { EXIT_OK } else { EXIT_FALSIFIED }, text, json))
        }
        BoundCommand::Lp { box_dims, degree, neighborhood: name, max_rows } => {
            let dims = parse_dims(&box_dims)?;
            let [w, h] = dims[..] else {
                return Err(Failure::Usage(format!("box must be WxH, got `{box_dims}`")));
            };
            let nb = neighborhood(&name)?;
            let lp = optimal_weights_lp_with_limit(w, h, &nb, degree, max_rows)?;
            let mut text = format!("D* {}\nconstraints {}\nweights\n", lp.d_star, lp.constraints);
            let strs: Vec<String> = lp.weights.iter().map(|v| v.to_string()).collect();
            for row in strs.chunks(w) {
                let _ = writeln!(text, "{}", row.join(" "));
            }
            let json = json!({"d_star": lp.d_star.to_string(), "constraints": lp.constraints, "weights": strs});
            Ok(Report::new(EXIT_OK, text, json))
        }
        BoundCommand::Analytic { degree, neighborhood: name } => {
            let nb = neighborhood(&name)?;
            if degree > nb.len() {
                return Err(Failure::Usage(format!("degree {degree} exceeds neighborhood size {}", nb.len())));
            }
            let b = bound_suite(&nb, degree);
            Ok(Report::new(
                EXIT_OK,
                format!("bound {} ({})\n", b.bound, b.method),
                json!({"bound": b.bound.to_string(), "method": b.method.to_string()}),
            ))
        }
    }
}

fn search_cmd(a: SearchArgs) -> Outcome {
    let dims = parse_dims(&a.dims)?;
    let nb = neighborhood(&a.neighborhood)?;
    let con = a.degree.map(|n| Constraint::max_degree(nb, n));
    let r = match &con {
        Some(c) => search::max_density(&dims, c, a.budget)?,
        None => search::max_still_life_density(&dims, a.budget)?,
    };
    let what = if con.is_some() { "max density" } else { "max still-life density" };
    let mut text = if r.proven_optimal {
        format!("{what} {}\n", r.best_value)
    } else {
        format!("budget exhausted after {} nodes; best found {}\n", r.nodes_explored, r.best_value)
    };
    let _ = writeln!(text, "nodes {}", r.nodes_explored);
    text.push_str(&write_torus(&r.witness));
    let mut json = json!({
        "max_density": r.best_value.to_string(),
        "proven_optimal": r.proven_optimal,
        "nodes_explored": r.nodes_explored,
        "witness": write_torus(&r.witness),
    });
    if !r.proven_optimal {
        return Ok(Report::new(EXIT_BUDGET, text, json));
    }
    if a.enumerate {
        let Some(c) = &con else {
            return Err(Failure::Usage("--enumerate needs --degree".into()));
        };
        let classes = search::enumerate_optima(&dims, c, a.budget)?;
        let _ = writeln!(text, "optima up to symmetry: {}", classes.len());
        for p in &classes {
            text.push_str(&write_torus(p));
        }
        json["optima"] = Value::Array(classes.iter().map(|p| json!(write_torus(p))).collect());
    }
    Ok(Report::new(EXIT_OK, text, json))
}

fn gen(name: &str, params: &[i64], tile: Option<&str>, output: Option<&Path>) -> Outcome {
    let mut p = generate(name, params)?;
    if let Some(t) = tile {
        p = p.tile_to(&parse_dims(t)?)?;
    }
    let body = write_torus(&p);
    let json = json!({"name": name, "dims": p.dims(), "density": p.density().to_string(), "pattern": body});
    Ok(Report::new(EXIT_OK, write_out(output, body)?, json))
}

fn gallery_cmd(name: Option<&str>, list: bool, torus: bool, output: Option<&Path>) -> Outcome {
    if list || name.is_none() {
        let names = gallery_names();
        let mut text = String::new();
        for n in &names {
            let _ = writeln!(text, "{n}");
        }
        return Ok(Report::new(EXIT_OK, text, json!(names)));
    }
    let g = gallery(name.expect("checked above"))?;
    let body = if torus {
        let t = g.torus.as_ref().ok_or_else(|| Failure::Usage(format!("`{}` has no periodic torus form", g.name)))?;
        write_torus(t)
    } else {
        write_grid(&g.grid)
    };
    let json = json!({"name": g.name, "pattern": body});
    Ok(Report::new(EXIT_OK, write_out(output, body)?, json))
}
