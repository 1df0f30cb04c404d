//! The `cohring` command line.
//!
//! Exit codes: 0 when everything asked for succeeded, 1 when a verification
//! check failed, 2 on malformed input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, IsTerminal, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cohring::atlas::{builtin_ring, Atlas, Site, SpaceData};
use cohring::charclass::{
    bundle_relation_check, g_context, gysin_sphere_bundle, reduced_chern_classes, spin_weights, vector_weights,
    Chirality,
};
use cohring::dsl::parse_rings;
use cohring::exactpoly::{Polynomial, Rational};
use cohring::gring::{solve_presentation_change, FundamentalClass, GradedRingPresentation};
use cohring::zlinalg::determinant;

#[derive(Parser, Debug)]
#[command(name = "cohring", version, about = "Exact graded cohomology rings and characteristic classes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Read extra ring definitions; they shadow built-in spaces of the same name.
    #[arg(long, global = true, value_name = "FILE")]
    pub define: Vec<PathBuf>,

    /// A degree, for commands that take one.
    #[arg(long, global = true, value_name = "N")]
    pub degree: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChiralityArg {
    Even,
    Odd,
}

impl From<ChiralityArg> for Chirality {
    fn from(c: ChiralityArg) -> Self {
        match c {
            ChiralityArg::Even => Chirality::Even,
            ChiralityArg::Odd => Chirality::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsArg {
    /// Half-spin, even number of minus signs.
    SpinPlus,
    /// Half-spin, odd number of minus signs.
    SpinMinus,
    /// Vector representation.
    Vector,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run verification checks.
    Verify {
        /// `all` or a comma-separated list of check names.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Report elapsed milliseconds per check.
        #[arg(long)]
        timings: bool,
        /// Half-spin representation tried first.
        #[arg(long, value_enum, default_value_t = ChiralityArg::Even)]
        chirality: ChiralityArg,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
        /// Shift one stored entry before running, e.g. `pairing_R32_values[4]:-1`.
        #[arg(long, value_name = "CONSTANT[INDEX]:DELTA", allow_hyphen_values = true)]
        inject: Vec<String>,
    },
    /// Ranks of the graded pieces (groups for spaces stored without products).
    Betti { space: String },
    /// Integral basis and torsion of one graded piece.
    Basis { space: String },
    /// Normal form of a polynomial in a ring.
    Reduce { space: String, polynomial: String },
    /// Values on the top degree, or the pairing matrix in a degree.
    Pairing { space: String, degree: Option<u32> },
    /// Cohomology of a sphere bundle over a space from the Gysin sequence.
    Gysin { space: String, euler: String, fibre_dim: u32 },
    /// Stored characteristic classes of a space, or classes of a weight system.
    Chern {
        space: Option<String>,
        #[arg(long, value_enum, conflicts_with = "space")]
        weights: Option<WeightsArg>,
        /// Shift every weight by this multiple of y.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        twist: i64,
    },
    /// Rewrite H*(R; Q) with a degree-8 generator x = lambda t^4 + mu w.
    SolveX {
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        /// Skip the cubic relation that picks the sign of mu.
        #[arg(long)]
        no_filter: bool,
    },
    /// Solve for the images of q1..q4, e, y in H*(R; Q).
    Phi {
        #[arg(long, value_enum, default_value_t = ChiralityArg::Even)]
        chirality: ChiralityArg,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit code 2.
    Input(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn input(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    let color = out_is_terminal() && std::env::var_os("NO_COLOR").map_or(true, |v| v.is_empty());
    match execute(&cli, out, color) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn out_is_terminal() -> bool {
    io::stdout().is_terminal()
}

struct Spaces {
    defined: BTreeMap<String, Arc<GradedRingPresentation>>,
}

impl Spaces {
    fn load(files: &[PathBuf]) -> Result<Spaces, CliError> {
        let mut defined = BTreeMap::new();
        for path in files {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
            for ring in parse_rings(&text).map_err(|e| input(format!("{}:{e}", path.display())))? {
                defined.insert(ring.name().to_string(), Arc::new(ring));
            }
        }
        Ok(Spaces { defined })
    }

    fn ring(&self, name: &str) -> Result<Arc<GradedRingPresentation>, CliError> {
        if let Some(r) = self.defined.get(name) {
            return Ok(r.clone());
        }
        builtin_ring(name).map_err(|_| {
            if name == "S" {
                input("S is stored as graded groups only; it has no ring structure")
            } else {
                input(format!("unknown space `{name}`"))
            }
        })
    }

    fn is_builtin(&self, name: &str) -> bool {
        !self.defined.contains_key(name)
    }

    /// Fixes the sign of `[X]`: a monomial for the built-in spaces, the
    /// first top-degree basis element otherwise.
    fn fundamental_class(&self, name: &str) -> Result<FundamentalClass, CliError> {
        let ring = self.ring(name)?;
        let top = ring.top_degree().ok_or_else(|| input(format!("{name} has no top degree")))?;
        let distinguished = match (self.is_builtin(name), name) {
            (true, "P") => ring.parse("a^2").map_err(input)?,
            (true, "Q") => ring.parse("s^3*v^3").map_err(input)?,
            (true, "R") => ring.parse("t^4*w^3").map_err(input)?,
            (true, "Gr2R9") => ring.parse("e^3*b").map_err(input)?,
            _ => ring
                .graded_basis(top)
                .basis
                .first()
                .cloned()
                .ok_or_else(|| input(format!("H^{top}({name}) is zero")))?,
        };
        FundamentalClass::new(ring, &distinguished).map_err(input)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write, color: bool) -> Result<i32, CliError> {
    let spaces = Spaces::load(&cli.define)?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Verify { suite, timings, chirality, list, inject } => {
            if *list {
                for (name, citation) in Atlas::check_catalog() {
                    if json {
                        writeln!(out, "{}", json!({ "check": name, "citation": citation }))?;
                    } else {
                        writeln!(out, "{name:<20} {citation}")?;
                    }
                }
                return Ok(0);
            }
            let mut atlas = Atlas::new().with_chirality((*chirality).into());
            for spec in inject {
                let (site, delta) = parse_injection(spec)?;
                atlas = atlas.perturbed(&site, delta).map_err(input)?;
            }
            verify(&atlas, suite, *timings, json, color, out)
        }
        Command::Betti { space } => betti(&spaces, space, cli.degree, json, out),
        Command::Basis { space } => {
            let degree = cli.degree.ok_or_else(|| input("basis needs --degree N"))?;
            basis(&spaces, space, degree, json, out)
        }
        Command::Reduce { space, polynomial } => {
            let ring = spaces.ring(space)?;
            let p = ring.parse(polynomial).map_err(input)?;
            let reduced = ring.reduce(&p).map_err(input)?;
            if json {
                writeln!(out, "{}", json!({ "space": space, "input": p.to_string(), "normal_form": reduced.to_string() }))?;
            } else {
                writeln!(out, "{reduced}")?;
            }
            Ok(0)
        }
        Command::Pairing { space, degree } => {
            let fc = spaces.fundamental_class(space)?;
            let degree = degree.or(cli.degree).unwrap_or(fc.top_degree());
            pairing(&fc, space, degree, json, out)
        }
        Command::Gysin { space, euler, fibre_dim } => {
            let ring = spaces.ring(space)?;
            let e = ring.parse(euler).map_err(input)?;
            let table = gysin_sphere_bundle(&ring, &e, *fibre_dim).map_err(input)?;
            if json {
                for row in &table {
                    writeln!(out, "{}", serde_json::to_string(row).expect("serializable"))?;
                }
            } else {
                for row in &table {
                    match &row.group {
                        Some(g) if g.is_trivial() => {}
                        Some(g) => writeln!(out, "H^{:<3} = {g}", row.degree)?,
                        None => writeln!(
                            out,
                            "H^{:<3} : extension of {} by {} (not determined)",
                            row.degree, row.kernel, row.cokernel
                        )?,
                    }
                }
            }
            Ok(0)
        }
        Command::Chern { space, weights, twist } => chern(space.as_deref(), *weights, *twist, json, out),
        Command::SolveX { alpha, beta, no_filter } => solve_x(alpha.as_deref(), beta.as_deref(), *no_filter, json, out),
        Command::Phi { chirality } => phi((*chirality).into(), json, out),
    }
}

fn parse_injection(spec: &str) -> Result<(Site, i64), CliError> {
    let bad = || input(format!("`{spec}`: expected CONSTANT[INDEX]:DELTA"));
    let (site, delta) = spec.rsplit_once(':').ok_or_else(bad)?;
    let (constant, index) = site.strip_suffix(']').and_then(|s| s.split_once('[')).ok_or_else(bad)?;
    let index = index.parse().map_err(|_| bad())?;
    let delta = delta.parse().map_err(|_| bad())?;
    Ok((Site { constant: constant.to_string(), index }, delta))
}

fn verify(atlas: &Atlas, suite: &str, timings: bool, json: bool, color: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let names: Vec<&str> = if suite == "all" {
        Atlas::check_names()
    } else {
        suite.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
    };
    if names.is_empty() {
        return Err(input("empty suite"));
    }
    let mut results = atlas.run_checks(&names).map_err(input)?;
    if !timings {
        for r in &mut results {
            r.millis = 0;
        }
    }
    let failed = results.iter().filter(|r| !r.passed()).count();
    for r in &results {
        if json {
            writeln!(out, "{}", r.to_json_line())?;
            continue;
        }
        let tag = match (r.passed(), color) {
            (true, true) => "\x1b[32mPASS\x1b[0m",
            (true, false) => "PASS",
            (false, true) => "\x1b[31mFAIL\x1b[0m",
            (false, false) => "FAIL",
        };
        let mut line = format!("{tag} {:<20} {}", r.check, r.computed);
        if timings {
            let _ = write!(line, " ({} ms)", r.millis);
        }
        writeln!(out, "{line}")?;
        if !r.passed() {
            writeln!(out, "     expected: {}", r.expected)?;
            writeln!(out, "     citation: {}", r.citation)?;
        }
    }
    if !json {
        writeln!(out, "{} of {} checks passed", results.len() - failed, results.len())?;
    }
    Ok(if failed == 0 { 0 } else { 1 })
}

fn betti(spaces: &Spaces, space: &str, maxdeg: Option<u32>, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if space == "S" && spaces.is_builtin("S") {
        let entry = Atlas::new().get_space("S").map_err(input)?;
        let SpaceData::Groups(groups) = entry.data else { unreachable!("S is stored as groups") };
        if json {
            let v: Vec<Value> = groups.iter().map(|(d, g)| json!({ "degree": d, "group": g.to_string() })).collect();
            writeln!(out, "{}", json!({ "space": "S", "groups": v }))?;
        } else {
            for (d, g) in groups {
                writeln!(out, "H^{d:<3} = {g}")?;
            }
        }
        return Ok(0);
    }
    let ring = spaces.ring(space)?;
    let top = maxdeg.or(ring.top_degree()).ok_or_else(|| input(format!("{space} has no top degree; pass --degree")))?;
    let series = ring.poincare_series(top);
    if json {
        writeln!(out, "{}", json!({ "space": space, "ranks": series }))?;
        return Ok(0);
    }
    let degrees: Vec<usize> = (0..series.len()).filter(|&d| d % 2 == 0 || series[d] != 0).collect();
    let width = degrees.iter().map(|d| d.to_string().len()).max().unwrap_or(1);
    let row = |f: &dyn Fn(usize) -> String| degrees.iter().map(|&d| format!("{:>width$}", f(d))).collect::<Vec<_>>().join(" ");
    writeln!(out, "degree {}", row(&|d| d.to_string()))?;
    writeln!(out, "rank   {}", row(&|d| series[d].to_string()))?;
    Ok(0)
}

fn basis(spaces: &Spaces, space: &str, degree: u32, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let ring = spaces.ring(space)?;
    let piece = ring.graded_basis(degree);
    let basis: Vec<String> = piece.basis.iter().map(|b| b.to_string()).collect();
    let torsion: Vec<Value> = piece
        .torsion
        .iter()
        .zip(&piece.torsion_generators)
        .map(|(order, g)| json!({ "order": order.to_string(), "generator": g.to_string() }))
        .collect();
    if json {
        writeln!(
            out,
            "{}",
            json!({ "space": space, "degree": degree, "group": piece.group().to_string(), "basis": basis, "torsion": torsion })
        )?;
    } else {
        writeln!(out, "H^{degree}({space}) = {}", piece.group())?;
        for b in &basis {
            writeln!(out, "  {b}")?;
        }
        for (order, g) in piece.torsion.iter().zip(&piece.torsion_generators) {
            writeln!(out, "  {g} (order {order})")?;
        }
    }
    Ok(0)
}

fn pairing(fc: &FundamentalClass, space: &str, degree: u32, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let ring = fc.ring();
    let top = fc.top_degree();
    if degree > top {
        return Err(input(format!("degree {degree} exceeds the top degree {top}")));
    }
    if degree == top {
        let values = fc.monomial_values().map_err(input)?;
        let ctx = ring.context();
        if json {
            let v: Vec<Value> = values
                .iter()
                .map(|(m, x)| json!({ "monomial": m.display(ctx), "value": x.to_string() }))
                .collect();
            writeln!(out, "{}", json!({ "space": space, "degree": top, "values": v }))?;
        } else {
            for (m, x) in &values {
                writeln!(out, "<{}, [{space}]> = {x}", m.display(ctx))?;
            }
        }
        return Ok(0);
    }
    let m = fc.pairing_matrix(degree).map_err(input)?;
    let left = ring.graded_basis(degree);
    let right = ring.graded_basis(top - degree);
    let det = if m.is_square() { Some(determinant(&m).map_err(input)?) } else { None };
    if json {
        writeln!(
            out,
            "{}",
            json!({
                "space": space,
                "degree": degree,
                "complementary": top - degree,
                "rows": left.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "columns": right.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                "matrix": m.to_string_rows(),
                "determinant": det.as_ref().map(|d| d.to_string()),
            })
        )?;
    } else {
        let cols: Vec<String> = right.basis.iter().map(|b| b.to_string()).collect();
        let rows: Vec<String> = left.basis.iter().map(|b| b.to_string()).collect();
        let w = rows.iter().chain(&cols).map(String::len).chain(m.to_string_rows().iter().flatten().map(String::len)).max().unwrap_or(1);
        writeln!(out, "{:w$} {}", "", cols.iter().map(|c| format!("{c:>w$}")).collect::<Vec<_>>().join(" "))?;
        for (i, r) in rows.iter().enumerate() {
            let entries: Vec<String> = (0..m.cols()).map(|j| format!("{:>w$}", m.get(i, j).to_string())).collect();
            writeln!(out, "{r:>w$} {}", entries.join(" "))?;
        }
        if let Some(d) = det {
            writeln!(out, "det = {d}")?;
        }
    }
    Ok(0)
}

fn chern(space: Option<&str>, weights: Option<WeightsArg>, twist: i64, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(w) = weights {
        let ws = match w {
            WeightsArg::SpinPlus => spin_weights(10, Chirality::Even),
            WeightsArg::SpinMinus => spin_weights(10, Chirality::Odd),
            WeightsArg::Vector => vector_weights(10),
        }
        .map_err(input)?
        .twist(twist);
        let classes = reduced_chern_classes(&ws).map_err(input)?;
        if json {
            let map: serde_json::Map<String, Value> = classes
                .iter()
                .enumerate()
                .map(|(i, c)| (format!("c{}", i + 1), Value::String(c.to_string())))
                .collect();
            writeln!(out, "{}", json!({ "representation": ws.label, "classes": map }))?;
        } else {
            writeln!(out, "{} in q1, q2, q3, q4, e, y:", ws.label)?;
            for (i, c) in classes.iter().enumerate() {
                writeln!(out, "c{} = {c}", i + 1)?;
            }
        }
        return Ok(0);
    }
    let space = space.ok_or_else(|| input("chern needs a space or --weights"))?;
    let entry = Atlas::new().get_space(space).map_err(input)?;
    if entry.classes.is_empty() {
        return Err(input(format!("no characteristic classes stored for {space}")));
    }
    for (name, table) in &entry.classes {
        if json {
            writeln!(out, "{}", json!({ "space": space, "class": name, "components": table.to_json() }))?;
        } else {
            writeln!(out, "{name}:")?;
            for (k, c) in &table.classes {
                writeln!(out, "  {}{k} = {c}", table.kind.symbol())?;
            }
        }
    }
    Ok(0)
}

fn solve_x(alpha: Option<&str>, beta: Option<&str>, no_filter: bool, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let atlas = Atlas::new();
    let stored = atlas.rationals("presentation_alpha_beta").map_err(input)?;
    let parse = |s: Option<&str>, default: &Rational| -> Result<Rational, CliError> {
        match s {
            Some(s) => s.parse::<Rational>().map_err(|e| input(format!("`{s}`: {e}"))),
            None => Ok(default.clone()),
        }
    };
    let alpha = parse(alpha, &stored[0])?;
    let beta = parse(beta, &stored[1])?;
    let ring = builtin_ring("R").map_err(input)?;
    let cubic = atlas.polynomial("presentation_relation").map_err(input)?;
    let filter = if no_filter { None } else { Some((&cubic, "a8")) };
    let solutions = solve_presentation_change(&ring, &alpha, &beta, filter).map_err(input)?;
    if json {
        let v: Vec<Value> = solutions
            .iter()
            .map(|s| json!({ "lambda": s.lambda.to_string(), "mu": s.mu.to_string(), "generator": s.generator.to_string() }))
            .collect();
        writeln!(out, "{}", json!({ "alpha": alpha.to_string(), "beta": beta.to_string(), "solutions": v }))?;
    } else {
        for s in &solutions {
            writeln!(out, "lambda = {}, mu = {}: x = {}", s.lambda, s.mu, s.generator)?;
        }
    }
    Ok(0)
}

fn phi(chirality: Chirality, json: bool, out: &mut dyn Write) -> Result<i32, CliError> {
    let atlas = Atlas::new();
    let phi = atlas.phi(chirality).map_err(input)?;
    let bundle = bundle_relation_check(phi, chirality).map_err(input)?;
    let gctx = g_context();
    let ring = phi.ring();
    let four_y = phi
        .apply(&Polynomial::var(&gctx, "y").map_err(input)?.scale(&Rational::from_integer(4.into())))
        .map_err(input)?;
    let t = ring.generator("t").map_err(input)?;
    let note = if four_y == t { "phi(4y) = t, suggesting c1(L) = t (not asserted)" } else { "phi(4y) != t" };
    if json {
        let images: serde_json::Map<String, Value> =
            gctx.names().iter().map(|n| (n.clone(), Value::String(phi.images[n].to_string()))).collect();
        writeln!(
            out,
            "{}",
            json!({
                "chirality": chirality.to_string(),
                "images": images,
                "solved_at": phi.solved_at,
                "equations": phi.scalar_equations(),
                "unknowns": phi.unknowns(),
                "residuals_zero": phi.all_residuals_zero(),
                "bundle_relation": bundle.holds,
                "note": note,
            })
        )?;
    } else {
        writeln!(out, "chirality: {chirality}")?;
        for n in gctx.names() {
            let at = phi.solved_at.get(n).map_or(String::new(), |d| format!("  (fixed in degree {d})"));
            writeln!(out, "phi({n}) = {}{at}", phi.images[n])?;
        }
        writeln!(
            out,
            "{} equations, {} unknowns, residuals {}",
            phi.scalar_equations(),
            phi.unknowns(),
            if phi.all_residuals_zero() { "all zero" } else { "nonzero" }
        )?;
        writeln!(out, "bundle relation: {}", if bundle.holds { "product = 1" } else { "fails" })?;
        writeln!(out, "{note}")?;
    }
    Ok(0)
}
