//! Subcommands. Every command produces a [`Report`]: the outcome lines printed
//! on stdout (and recorded in the manifest), the exit code, and the files to
//! write under `--out`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wallkit_core::contact::SymmetryOptions;
use wallkit_core::corona::{
    thickness_number_with, verify_witness, CoronaOptions, CoronaOutcome, SurroundResult, ThicknessBounds, ThicknessNumber,
};
use wallkit_core::layout::ContactIndex;
use wallkit_core::shape::{corpus, corpus_names, CorpusParams, DecoratedShape, RealizedShape};
use wallkit_core::wall::{verify_thickness, WallBounds, WallOutcome};

use crate::driver::{find_wall_parallel, surround_with_index};
use crate::format::{self, CertificateInfo, FormatError};
use crate::svg;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wallkit", version, about = "Walls, thickness numbers and Heesch coronas of non-tiling shapes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Shape files and the built-in corpus.
    #[command(subcommand)]
    Shape(ShapeCmd),
    /// Bracket the thickness number with wall searches and corona searches.
    Thickness(ThicknessArgs),
    /// Search for or verify a wall.
    #[command(subcommand)]
    Wall(WallCmd),
    /// Search for n layers of copies around one copy.
    Corona(CoronaArgs),
    /// Draw a wall certificate or corona witness as SVG.
    Render(RenderArgs),
    /// Re-run the command recorded in a manifest and compare outcomes.
    Replay {
        manifest: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum ShapeCmd {
    /// Check a shape file and print its canonical form.
    Validate { path: PathBuf },
    /// Print a corpus shape (or shape file) as canonical JSON.
    Export {
        #[command(flatten)]
        shape: ShapeArg,
    },
    /// List the corpus shapes and their parameters.
    List,
}

#[derive(Subcommand, Debug)]
pub enum WallCmd {
    /// Search for a wall of thickness `t`.
    Find(WallFindArgs),
    /// Re-verify a wall certificate file.
    Verify { path: PathBuf },
}

#[derive(Args, Debug, Clone)]
pub struct ShapeArg {
    /// Corpus name or path to a shape file.
    pub shape: String,
    /// Corpus parameter `key=value`; repeatable.
    #[arg(short = 'p', long = "param", value_name = "KEY=VALUE")]
    pub params: Vec<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    /// Units per period across all classes (K).
    #[arg(long, default_value_t = 8)]
    pub max_units_per_period: usize,
    /// Transverse width limit in shape diameters.
    #[arg(long, default_value_t = 6)]
    pub max_width: u32,
    /// Use only orientation-preserving copies.
    #[arg(long)]
    pub no_reflections: bool,
    /// Order of the rotation group (1, 2, 3, 4, 6 or 12).
    #[arg(long, default_value_t = 12)]
    pub rotations: u8,
    /// Worker threads; never changes results.
    #[arg(long, short = 'j', default_value_t = 1)]
    pub jobs: usize,
    /// Directory for the manifest and result files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ThicknessArgs {
    #[command(flatten)]
    pub shape: ShapeArg,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Largest thickness tried.
    #[arg(long, default_value_t = 8)]
    pub max_thickness: usize,
    /// Deepest corona tried.
    #[arg(long, default_value_t = 3)]
    pub corona_cap: usize,
    /// Node limit per corona branch.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct WallFindArgs {
    #[command(flatten)]
    pub shape: ShapeArg,
    /// Number of unit classes, i.e. the wall's thickness.
    #[arg(short = 't', long, default_value_t = 1)]
    pub thickness: usize,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Args, Debug)]
pub struct CoronaArgs {
    #[command(flatten)]
    pub shape: ShapeArg,
    /// Number of layers around the central copy.
    #[arg(short = 'n', long, default_value_t = 1)]
    pub layers: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Node limit per branch.
    #[arg(long)]
    pub node_limit: Option<u64>,
}

#[derive(Args, Debug)]
pub struct RenderArgs {
    /// Wall certificate or corona witness file.
    pub path: PathBuf,
    /// SVG file to write.
    #[arg(long)]
    pub out: PathBuf,
    /// Periods of a wall to draw.
    #[arg(long, default_value_t = 3)]
    pub periods: usize,
}

/// Result of one command.
#[derive(Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub code: i32,
    /// Files to write under `--out`, by name.
    pub files: Vec<(String, String)>,
    /// Manifest fields other than the outcome; `None` for commands without one.
    pub manifest: Option<serde_json::Map<String, Value>>,
}

#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        CliError(e.0)
    }
}

fn fail<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError(msg.into()))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn parse_params(raw: &[String]) -> Result<CorpusParams, CliError> {
    let mut out = BTreeMap::new();
    for p in raw {
        let Some((k, v)) = p.split_once('=') else { return fail(format!("parameter `{p}`: expected KEY=VALUE")) };
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

/// Resolves a corpus name or shape file.
pub fn load_shape(arg: &ShapeArg) -> Result<DecoratedShape, CliError> {
    let params = parse_params(&arg.params)?;
    if corpus_names().contains(&arg.shape.as_str()) {
        return corpus(&arg.shape, &params).map_err(|e| CliError(format!("{}: {e}", arg.shape)));
    }
    let path = Path::new(&arg.shape);
    if !path.exists() {
        return fail(format!("`{}` is neither a corpus shape ({}) nor a file", arg.shape, corpus_names().join(", ")));
    }
    if !params.is_empty() {
        return fail("parameters apply only to corpus shapes");
    }
    Ok(format::shape_from_json(&read_json(path)?)?)
}

fn realize(shape: &DecoratedShape) -> Result<RealizedShape, CliError> {
    shape.realize().map_err(|e| CliError(e.to_string()))
}

fn symmetry(s: &SearchArgs) -> Result<SymmetryOptions, CliError> {
    let o = SymmetryOptions { allow_reflections: !s.no_reflections, rotations: s.rotations };
    if !o.is_valid() {
        return fail(format!("--rotations {}: must be 1, 2, 3, 4, 6 or 12", s.rotations));
    }
    Ok(o)
}

fn wall_bounds(s: &SearchArgs) -> Result<WallBounds, CliError> {
    if s.max_units_per_period == 0 || s.max_width == 0 {
        return fail("--max-units-per-period and --max-width must be positive");
    }
    Ok(WallBounds { max_units: s.max_units_per_period, max_width: s.max_width })
}

fn base_manifest(shape: &DecoratedShape, sym: Option<&SymmetryOptions>) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("kind".into(), "run-manifest".into());
    m.insert("tool_version".into(), format::TOOL_VERSION.into());
    m.insert("shape_digest".into(), format::shape_digest(shape).into());
    m.insert("shape".into(), format::shape_to_json(shape));
    if let Some(s) = sym {
        m.insert("symmetry".into(), format::symmetry_to_json(s));
    }
    m
}

fn header_lines(shape: &DecoratedShape) -> Vec<String> {
    let mut out = vec![format!("shape: {} (sha256 {})", shape.name, &format::shape_digest(shape)[..16])];
    if shape.name == "friedman_region" || shape.name == "mann_region" {
        out.push(format!("note: {} is a reconstruction; results depend on its parameters", shape.name));
    }
    out
}

fn wall_line(t: usize, o: &WallOutcome) -> String {
    match o {
        WallOutcome::Found(tc) => format!("wall t={t}: found ({} units per period)", tc.config.units.len()),
        WallOutcome::Infeasible { bounds, stats, .. } => format!(
            "wall t={t}: infeasible within bounds K={} width={} ({} nodes)",
            bounds.max_units, bounds.max_width, stats.nodes
        ),
        WallOutcome::Inconsistent(_) => format!("wall t={t}: INCONSISTENT (verifier rejected a search result)"),
    }
}

fn corona_line(r: &SurroundResult) -> String {
    let n = r.layers_requested;
    match &r.outcome {
        CoronaOutcome::Witness(w) => {
            let sizes: Vec<String> = w.layers.iter().map(|l| l.len().to_string()).collect();
            format!("corona {n}: witness (layer sizes {})", sizes.join(", "))
        }
        CoronaOutcome::Exhausted(s) => format!("corona {n}: exhausted ({} nodes; placement model: vertex-anchored and frontier-anchored contacts)", s.nodes),
        CoronaOutcome::Unknown(s) => format!("corona {n}: unknown (node limit reached after {} nodes)", s.nodes),
        CoronaOutcome::Inconsistent(_) => format!("corona {n}: INCONSISTENT (verifier rejected a search result)"),
    }
}

fn wall_files(shape: &DecoratedShape, real: &RealizedShape, t: usize, o: &WallOutcome, sym: &SymmetryOptions) -> Option<(String, String)> {
    match o {
        WallOutcome::Found(tc) => {
            let union = verify_thickness(real, tc).ok().map(|r| r.union);
            let info = CertificateInfo { shape, cert: tc, union: union.as_ref(), bounds: None, symmetry: Some(sym) };
            Some((format!("wall-t{t}.json"), format::pretty(&format::certificate_to_json(&info))))
        }
        WallOutcome::Infeasible { bounds, stats, .. } => Some((
            format!("wall-t{t}-exhaustion.json"),
            format::pretty(&format::wall_exhaustion_to_json(shape, t, bounds, sym, stats)),
        )),
        WallOutcome::Inconsistent(tc) => {
            let info = CertificateInfo { shape, cert: tc, union: None, bounds: None, symmetry: Some(sym) };
            Some((format!("wall-t{t}-rejected.json"), format::pretty(&format::certificate_to_json(&info))))
        }
    }
}

fn corona_file(shape: &DecoratedShape, r: &SurroundResult) -> Option<(String, String)> {
    let n = r.layers_requested;
    match &r.outcome {
        CoronaOutcome::Witness(w) | CoronaOutcome::Inconsistent(w) => {
            Some((format!("corona-{n}.json"), format::pretty(&format::witness_to_json(shape, w, &r.symmetry))))
        }
        CoronaOutcome::Exhausted(s) => Some((
            format!("corona-{n}-exhaustion.json"),
            format::pretty(&format::corona_exhaustion_to_json(shape, n, &r.symmetry, s)),
        )),
        CoronaOutcome::Unknown(_) => None,
    }
}

pub fn shape_validate(path: &Path) -> Result<Report, CliError> {
    let shape = format::shape_from_json(&read_json(path)?)?;
    let real = realize(&shape)?;
    let mut lines = vec![format::pretty(&format::shape_to_json(&shape)).trim_end().to_string()];
    lines.push(format!("valid: {} vertices, area {}", real.region.outer().len(), real.area().pretty()));
    Ok(Report { lines, ..Report::default() })
}

pub fn shape_export(arg: &ShapeArg) -> Result<Report, CliError> {
    let shape = load_shape(arg)?;
    Ok(Report { lines: vec![format::pretty(&format::shape_to_json(&shape)).trim_end().to_string()], ..Report::default() })
}

pub fn shape_list() -> Report {
    let params = |name: &str| match name {
        "chopped_disk" | "square_semicircle" => "m=<even, default 4>",
        "heesch_pentagon" => "variant=heesch|house",
        "friedman_region" => "additions=x,y;x,y;x,y (default -1,3;2,7;2,-1) notch=x,y (default 4,3) | hole=x,y",
        "deformed_hexagon" => "variant=<int, default 3>",
        "mann_region" => "pattern=<6 of o|i|-, default -oiioo>",
        _ => "",
    };
    Report { lines: corpus_names().iter().map(|n| format!("{n}  {}", params(n))).collect(), ..Report::default() }
}

pub fn thickness(a: &ThicknessArgs, preset: Option<DecoratedShape>) -> Result<Report, CliError> {
    let shape = match preset {
        Some(s) => s,
        None => load_shape(&a.shape)?,
    };
    let real = realize(&shape)?;
    let sym = symmetry(&a.search)?;
    let bounds = ThicknessBounds {
        wall: wall_bounds(&a.search)?,
        thickness_cap: a.max_thickness.max(1),
        corona_cap: a.corona_cap,
        corona_node_limit: a.node_limit,
    };
    let jobs = a.search.jobs;
    let index = ContactIndex::new(&real, sym);
    let copts = CoronaOptions { symmetry: sym, node_limit: bounds.corona_node_limit };
    let tn = thickness_number_with(
        &bounds,
        |t| {
            log::info!("wall search t={t}");
            find_wall_parallel(&real, t, &bounds.wall, sym, jobs)
        },
        |n| {
            log::info!("corona search n={n}");
            surround_with_index(&real, &index, n, copts, jobs)
        },
    );
    Ok(thickness_report(&shape, &real, &sym, &tn))
}

fn thickness_report(shape: &DecoratedShape, real: &RealizedShape, sym: &SymmetryOptions, tn: &ThicknessNumber) -> Report {
    let b = &tn.bounds;
    let mut lines = header_lines(shape);
    lines.push(format!(
        "bounds: K={} width={} thickness cap={} corona cap={}",
        b.wall.max_units, b.wall.max_width, b.thickness_cap, b.corona_cap
    ));
    lines.push(format!("symmetry: {}", format::symmetry_label(sym)));
    let mut files = Vec::new();
    let mut inconsistent = tn.bound_conflict.is_some();
    for r in &tn.coronas {
        lines.push(corona_line(r));
        inconsistent |= matches!(r.outcome, CoronaOutcome::Inconsistent(_));
        files.extend(corona_file(shape, r));
    }
    for (t, o) in &tn.walls {
        lines.push(wall_line(*t, o));
        inconsistent |= matches!(o, WallOutcome::Inconsistent(_));
        files.extend(wall_files(shape, real, *t, o, sym));
    }
    let hi = tn.hi.map_or("?".to_string(), |h| h.to_string());
    lines.push(format!("interval: [{}, {hi}]", tn.lo));
    lines.extend(tn.verdict());
    let code = if inconsistent { EXIT_INCONSISTENT } else if tn.lo >= 1 { EXIT_OK } else { EXIT_INFEASIBLE };
    let mut m = base_manifest(shape, Some(sym));
    m.insert(
        "bounds".into(),
        json!({
            "max_units_per_period": b.wall.max_units,
            "max_width": b.wall.max_width,
            "thickness_cap": b.thickness_cap,
            "corona_cap": b.corona_cap,
            "corona_node_limit": b.corona_node_limit,
        }),
    );
    Report { lines, code, files, manifest: Some(m) }
}

pub fn wall_find(a: &WallFindArgs, preset: Option<DecoratedShape>) -> Result<Report, CliError> {
    let shape = match preset {
        Some(s) => s,
        None => load_shape(&a.shape)?,
    };
    if a.thickness == 0 {
        return fail("-t must be at least 1");
    }
    let real = realize(&shape)?;
    let sym = symmetry(&a.search)?;
    let bounds = wall_bounds(&a.search)?;
    let o = find_wall_parallel(&real, a.thickness, &bounds, sym, a.search.jobs);
    let mut lines = header_lines(&shape);
    lines.push(format!("bounds: K={} width={}", bounds.max_units, bounds.max_width));
    lines.push(format!("symmetry: {}", format::symmetry_label(&sym)));
    lines.push(wall_line(a.thickness, &o));
    let code = match o {
        WallOutcome::Found(_) => EXIT_OK,
        WallOutcome::Infeasible { .. } => EXIT_INFEASIBLE,
        WallOutcome::Inconsistent(_) => EXIT_INCONSISTENT,
    };
    let files = wall_files(&shape, &real, a.thickness, &o, &sym).into_iter().collect();
    let mut m = base_manifest(&shape, Some(&sym));
    m.insert("bounds".into(), format::bounds_to_json(&bounds));
    Ok(Report { lines, code, files, manifest: Some(m) })
}

pub fn wall_verify(path: &Path) -> Result<Report, CliError> {
    let (shape, tc) = format::certificate_from_json(&read_json(path)?)?;
    let real = realize(&shape)?;
    let mut lines = header_lines(&shape);
    let code = match verify_thickness(&real, &tc) {
        Err(e) => {
            lines.push(format!("invalid: {e}"));
            EXIT_INFEASIBLE
        }
        Ok(r) => {
            let u = &r.union;
            lines.push(format!(
                "union: connected={} complement components={} cavities={} sides separated={}",
                u.connected, u.complement_count, u.cavities, u.separated
            ));
            for (k, c) in r.classes.iter().enumerate() {
                lines.push(format!("class {}: {}", k + 1, if c.is_wall() { "wall" } else { "not a wall" }));
            }
            lines.push(format!("consecutive classes share boundary: {}", r.consecutive_share));
            lines.push(format!("non-consecutive classes disjoint: {}", r.nonconsecutive_clear));
            if r.is_valid() {
                lines.push(format!("valid: wall of thickness {}", tc.thickness()));
                EXIT_OK
            } else {
                lines.push("invalid: certificate conditions fail".into());
                EXIT_INFEASIBLE
            }
        }
    };
    Ok(Report { lines, code, files: Vec::new(), manifest: Some(base_manifest(&shape, None)) })
}

pub fn corona(a: &CoronaArgs, preset: Option<DecoratedShape>) -> Result<Report, CliError> {
    let shape = match preset {
        Some(s) => s,
        None => load_shape(&a.shape)?,
    };
    if a.layers == 0 {
        return fail("-n must be at least 1");
    }
    let real = realize(&shape)?;
    let sym = symmetry(&a.search)?;
    let index = ContactIndex::new(&real, sym);
    let r = surround_with_index(&real, &index, a.layers, CoronaOptions { symmetry: sym, node_limit: a.node_limit }, a.search.jobs);
    let mut lines = header_lines(&shape);
    lines.push(format!("symmetry: {}", format::symmetry_label(&sym)));
    lines.push(corona_line(&r));
    let code = match &r.outcome {
        CoronaOutcome::Witness(w) if verify_witness(&real, w).is_valid() => EXIT_OK,
        CoronaOutcome::Witness(_) | CoronaOutcome::Inconsistent(_) => EXIT_INCONSISTENT,
        CoronaOutcome::Exhausted(_) | CoronaOutcome::Unknown(_) => EXIT_INFEASIBLE,
    };
    let files = corona_file(&shape, &r).into_iter().collect();
    let mut m = base_manifest(&shape, Some(&sym));
    m.insert("bounds".into(), json!({ "node_limit": a.node_limit }));
    Ok(Report { lines, code, files, manifest: Some(m) })
}

pub fn render(a: &RenderArgs) -> Result<Report, CliError> {
    let v = read_json(&a.path)?;
    let kind = v.get("kind").and_then(Value::as_str).unwrap_or("");
    let (shape, doc) = match kind {
        "wall-certificate" => {
            let (shape, tc) = format::certificate_from_json(&v)?;
            let real = realize(&shape)?;
            match verify_thickness(&real, &tc) {
                Ok(r) if r.is_valid() => {}
                Ok(_) => return fail("certificate does not verify"),
                Err(e) => return fail(format!("certificate does not verify: {e}")),
            }
            (shape, svg::render_wall(&real.region, &tc, a.periods.max(1)))
        }
        "corona-witness" => {
            let (shape, w) = format::witness_from_json(&v)?;
            let real = realize(&shape)?;
            if !verify_witness(&real, &w).is_valid() {
                return fail("witness does not verify");
            }
            (shape, svg::render_witness(&real.region, &w))
        }
        _ => return fail("expected a wall-certificate or corona-witness file"),
    };
    std::fs::write(&a.out, doc).map_err(|e| CliError(format!("{}: {e}", a.out.display())))?;
    Ok(Report { lines: vec![format!("{}: wrote {}", shape.name, a.out.display())], ..Report::default() })
}

/// Drops `--out`/`--jobs` (and their values) so that a manifest names only
/// what determines the outcome.
pub fn normalized_command(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if matches!(a.as_str(), "--out" | "--jobs" | "-j") {
            skip = true;
            continue;
        }
        if a.starts_with("--out=") || a.starts_with("--jobs=") || (a.starts_with("-j") && a.len() > 2) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn out_dir(c: &Command) -> Option<&PathBuf> {
    match c {
        Command::Thickness(a) => a.search.out.as_ref(),
        Command::Wall(WallCmd::Find(a)) => a.search.out.as_ref(),
        Command::Corona(a) => a.search.out.as_ref(),
        _ => None,
    }
}

/// Runs a parsed command; `preset` replaces the shape argument (used by replay).
pub fn run(c: &Command, preset: Option<DecoratedShape>) -> Result<Report, CliError> {
    match c {
        Command::Shape(ShapeCmd::Validate { path }) => shape_validate(path),
        Command::Shape(ShapeCmd::Export { shape }) => shape_export(shape),
        Command::Shape(ShapeCmd::List) => Ok(shape_list()),
        Command::Thickness(a) => thickness(a, preset),
        Command::Wall(WallCmd::Find(a)) => wall_find(a, preset),
        Command::Wall(WallCmd::Verify { path }) => wall_verify(path),
        Command::Corona(a) => corona(a, preset),
        Command::Render(a) => render(a),
        Command::Replay { manifest } => replay(manifest),
    }
}

pub fn replay(path: &Path) -> Result<Report, CliError> {
    let v = read_json(path)?;
    if v.get("kind").and_then(Value::as_str) != Some("run-manifest") {
        return fail("expected a run-manifest file");
    }
    let argv: Vec<String> = match v.get("command") {
        Some(Value::Array(xs)) => xs.iter().map(|x| x.as_str().map(String::from)).collect::<Option<_>>(),
        _ => None,
    }
    .ok_or_else(|| CliError("manifest: `command` must be a list of strings".into()))?;
    let recorded: Vec<String> = match v.get("outcome") {
        Some(Value::Array(xs)) => xs.iter().map(|x| x.as_str().map(String::from)).collect::<Option<_>>(),
        _ => None,
    }
    .ok_or_else(|| CliError("manifest: `outcome` must be a list of strings".into()))?;
    let shape = format::embedded_shape(&v)?;
    let cli = Cli::try_parse_from(std::iter::once("wallkit".to_string()).chain(argv.iter().cloned()))
        .map_err(|e| CliError(format!("manifest command: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return fail("a manifest cannot replay another manifest");
    }
    let preset = matches!(cli.command, Command::Thickness(_) | Command::Wall(WallCmd::Find(_)) | Command::Corona(_)).then_some(shape);
    let r = run(&cli.command, preset)?;
    let mut lines = r.lines.clone();
    let same = r.lines == recorded;
    let recorded_code = v.get("exit_code").and_then(Value::as_i64);
    let code = if same && recorded_code.map_or(true, |c| c == r.code as i64) {
        lines.push("replay: outcome identical".into());
        r.code
    } else {
        lines.push("replay: OUTCOME DIFFERS from the manifest".into());
        EXIT_INCONSISTENT
    };
    Ok(Report { lines, code, files: Vec::new(), manifest: None })
}

/// Parses, runs, prints and writes files; returns the exit code.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let report = match run(&cli.command, None) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    {
        use std::io::Write;
        let mut stdout = std::io::stdout().lock();
        for l in &report.lines {
            // a closed pipe (e.g. `| head`) is not an error of the run
            if writeln!(stdout, "{l}").is_err() {
                break;
            }
        }
    }
    if let (Some(dir), Some(mut m)) = (out_dir(&cli.command), report.manifest.clone()) {
        if let Err(e) = write_outputs(dir, &args[1..], &report, &mut m) {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    }
    report.code
}

fn write_outputs(dir: &Path, argv: &[String], report: &Report, m: &mut serde_json::Map<String, Value>) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    m.insert("command".into(), json!(normalized_command(argv)));
    m.insert("outcome".into(), json!(report.lines));
    m.insert("exit_code".into(), report.code.into());
    m.insert("files".into(), json!(report.files.iter().map(|(n, _)| n).collect::<Vec<_>>()));
    for (name, text) in &report.files {
        std::fs::write(dir.join(name), text).map_err(io)?;
    }
    std::fs::write(dir.join("manifest.json"), format::pretty(&Value::Object(m.clone()))).map_err(io)?;
    Ok(())
}
