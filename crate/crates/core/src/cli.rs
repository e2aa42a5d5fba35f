//! Batch front end over the text formats.
//!
//! Exit codes: 0 success or verified, 1 verified negative, 2 inconclusive,
//! 3 input error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cover::{check_compatibility, fiber_genus, FiberLift};
use crate::error::Error;
use crate::factor::{hurwitz_equivalent, validate, Factorization, SearchOptions, SearchOutcome, DEFAULT_MAX_STATES};
use crate::lefschetz::{fiber_sum, from_branch_data, invariants, sp_validity, LFibration};
use crate::text;
use crate::vankampen::{
    abelianization, count_homs, presentation, stabilized, structure_check, HomOptions, Presentation,
    DEFAULT_TARGET_BOUND,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug, Clone)]
#[command(name = "monodromy", version, about = "Braid monodromy, branched covers and Lefschetz fibrations")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Human)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Machine,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check that a factorization multiplies to the full twist.
    Validate { factorization: PathBuf },
    /// Hurwitz-invariant data of a factorization.
    Invariants { factorization: PathBuf },
    /// Search for Hurwitz moves between two factorizations.
    Hurwitz {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
        max_states: usize,
        /// Also allow global conjugation by the standard generators.
        #[arg(long)]
        conjugation: bool,
    },
    /// Check a covering against a factorization and build its fibration.
    Cover {
        factorization: PathBuf,
        covering: PathBuf,
        /// Write the resulting Lefschetz fibration here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Action of a liftable braid on the first homology of the fiber.
    Lift {
        covering: PathBuf,
        /// Braid in the form `B<d>: <signed ints>`.
        #[arg(long, allow_hyphen_values = true)]
        braid: String,
    },
    /// Invariants and monodromy check of a Lefschetz fibration.
    Lefschetz { fibration: PathBuf },
    /// Fiber sum of two Lefschetz fibrations.
    Fibersum {
        left: PathBuf,
        right: PathBuf,
        /// Gluing matrix file.
        #[arg(long)]
        twist: Option<PathBuf>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Presentation of the curve complement and its finite shadows.
    Vankampen {
        factorization: PathBuf,
        #[arg(long)]
        affine: bool,
        #[command(flatten)]
        homs: HomArgs,
        /// Covering for the structure check.
        #[arg(long)]
        cover: Option<PathBuf>,
        /// Generators of the lattice for the structure check, `a,b;c,d`.
        #[arg(long, requires = "cover", allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Quotient by commutators of disjoint geometric generators.
    Stabilize {
        factorization: PathBuf,
        covering: PathBuf,
        #[arg(long, default_value_t = 1)]
        conjugator_bound: usize,
        #[arg(long)]
        affine: bool,
        #[command(flatten)]
        homs: HomArgs,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct HomArgs {
    /// Target group: a file, or `S<n>` / `Z<n>`.
    #[arg(long)]
    pub hom_target: Option<String>,
    #[arg(long, default_value_t = DEFAULT_TARGET_BOUND)]
    pub target_bound: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

/// Exit status and report text of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub exit_code: i32,
    pub report: String,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotLiftable
            | Error::InvalidFactorization(_)
            | Error::Incompatible(_)
            | Error::NotClosedOverInfinity(_)
            | Error::NotConnected
            | Error::OddEuler(_)
            | Error::NotCancellingPair(_) => EXIT_NEGATIVE,
            Error::Internal(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Ordered `key=value` report with a one-line human summary.
struct Report {
    command: &'static str,
    summary: String,
    fields: Vec<(String, String)>,
    exit_code: i32,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            summary: String::new(),
            fields: Vec::new(),
            exit_code: EXIT_OK,
        }
    }

    fn field(&mut self, key: &str, value: impl Display) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Machine => {
                out += &format!("command={}\n", self.command);
                for (k, v) in &self.fields {
                    out += &format!("{k}={}\n", v.replace('\n', "; "));
                }
                out += &format!("exit={}\n", self.exit_code);
            }
            Format::Human => {
                out += &self.summary;
                out.push('\n');
                let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &self.fields {
                    if v.contains('\n') {
                        out += &format!("  {k}:\n");
                        for line in v.lines() {
                            out += &format!("    {line}\n");
                        }
                    } else {
                        out += &format!("  {k:width$}  {v}\n");
                    }
                }
            }
        }
        out
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse<T>(path: &Path, parser: fn(&str) -> crate::error::Result<T>) -> Result<T, Failure> {
    let content = read(path)?;
    parser(&content).map_err(|e| match e {
        Error::Parse { line, column, message } => Failure {
            code: EXIT_INPUT,
            message: format!("{}:{line}:{column}: {message}", path.display()),
        },
        other => Failure {
            code: EXIT_INPUT,
            message: format!("{}: {other}", path.display()),
        },
    })
}

fn write(path: &Path, content: &str) -> Result<(), Failure> {
    fs::write(path, content).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn target(spec: &str) -> Result<crate::vankampen::FiniteGroup, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        parse(path, text::parse_target)
    } else {
        text::parse_target(spec).map_err(|e| Failure {
            code: EXIT_INPUT,
            message: format!("hom target '{spec}': {e}"),
        })
    }
}

/// Parses arguments (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            RunOutput {
                exit_code: code,
                report: e.to_string(),
            }
        }
    }
}

pub fn run(config: &RunConfig) -> RunOutput {
    match dispatch(&config.command) {
        Ok(report) => RunOutput {
            exit_code: report.exit_code,
            report: report.render(config.format),
        },
        Err(f) => RunOutput {
            exit_code: f.code,
            report: match config.format {
                Format::Machine => format!("error={}\nexit={}\n", f.message, f.code),
                Format::Human => format!("error: {}\n", f.message),
            },
        },
    }
}

fn dispatch(command: &Command) -> Result<Report, Failure> {
    match command {
        Command::Validate { factorization } => cmd_validate(&parse(factorization, text::parse_factorization)?),
        Command::Invariants { factorization } => cmd_invariants(&parse(factorization, text::parse_factorization)?),
        Command::Hurwitz {
            left,
            right,
            max_states,
            conjugation,
        } => {
            let a = parse(left, text::parse_factorization)?;
            let b = parse(right, text::parse_factorization)?;
            let options = SearchOptions {
                max_states: *max_states,
                allow_conjugation: *conjugation,
                conjugators: None,
            };
            cmd_hurwitz(&a, &b, &options)
        }
        Command::Cover {
            factorization,
            covering,
            emit,
        } => {
            let f = parse(factorization, text::parse_factorization)?;
            let theta = parse(covering, text::parse_covering)?;
            cmd_cover(&f, &theta, emit.as_deref())
        }
        Command::Lift { covering, braid } => {
            let theta = parse(covering, text::parse_covering)?;
            let b = text::parse_braid(braid).map_err(|e| Failure {
                code: EXIT_INPUT,
                message: format!("--braid: {e}"),
            })?;
            let lift = FiberLift::new(&theta)?;
            let m = lift.lift(&b)?;
            let mut r = Report::new("lift");
            r.summary = format!("lift of {b} on H1 of the genus-{} fiber", lift.genus());
            r.field("genus", lift.genus());
            r.field("matrix", &m);
            Ok(r)
        }
        Command::Lefschetz { fibration } => cmd_lefschetz(&parse(fibration, text::parse_lfibration)?, "lefschetz"),
        Command::Fibersum { left, right, twist, emit } => {
            let a = parse(left, text::parse_lfibration)?;
            let b = parse(right, text::parse_lfibration)?;
            let t = twist.as_deref().map(|p| parse(p, text::parse_twist)).transpose()?;
            let sum = fiber_sum(&a, &b, t.as_ref())?;
            if let Some(p) = emit {
                write(p, &text::print_lfibration(&sum))?;
            }
            cmd_lefschetz(&sum, "fibersum")
        }
        Command::Vankampen {
            factorization,
            affine,
            homs,
            cover,
            lambda,
            emit,
        } => {
            let f = parse(factorization, text::parse_factorization)?;
            let p = presentation(&f, !affine)?;
            if let Some(path) = emit {
                write(path, &text::print_presentation(&p))?;
            }
            let mut r = Report::new("vankampen");
            r.summary = format!(
                "{} presentation: {} generators, {} relators",
                if *affine { "affine" } else { "projective" },
                p.generators(),
                p.relators().len()
            );
            group_fields(&mut r, &p, homs)?;
            if let Some(path) = cover {
                let theta = parse(path, text::parse_covering)?;
                let lambda = lambda
                    .as_deref()
                    .map(|s| {
                        text::parse_lambda(s).map_err(|e| Failure {
                            code: EXIT_INPUT,
                            message: format!("--lambda: {e}"),
                        })
                    })
                    .transpose()?;
                let s = structure_check(&p, &theta, lambda.as_deref())?;
                r.field("structure_relators_in_kernel", s.relators_in_kernel());
                r.field("structure_linking_well_defined", s.linking_well_defined);
                r.field("structure_parity_consistent", s.parity_consistent);
                if let (Some(o), Some(a)) = (s.image_order, s.ambient_order) {
                    r.field("structure_image_order", o);
                    r.field("structure_ambient_order", a);
                }
                if let Some(q) = &s.lambda_quotient {
                    r.field("structure_lambda_quotient", q);
                }
                if !s.passes() {
                    r.exit_code = EXIT_NEGATIVE;
                }
            }
            Ok(r)
        }
        Command::Stabilize {
            factorization,
            covering,
            conjugator_bound,
            affine,
            homs,
            emit,
        } => {
            let f = parse(factorization, text::parse_factorization)?;
            let theta = parse(covering, text::parse_covering)?;
            let p = presentation(&f, !affine)?;
            let s = stabilized(&p, &theta, *conjugator_bound)?;
            if let Some(path) = emit {
                write(path, &text::print_presentation(&s.presentation))?;
            }
            let mut r = Report::new("stabilize");
            r.summary = format!(
                "stabilized presentation with conjugators of length <= {}: {} commutators added{}",
                s.conjugator_bound,
                s.added_relators,
                if s.exact { " (exact)" } else { " (bounded)" }
            );
            r.field("conjugator_bound", s.conjugator_bound);
            r.field("added_relators", s.added_relators);
            r.field("exact", s.exact);
            group_fields(&mut r, &s.presentation, homs)?;
            Ok(r)
        }
    }
}

fn group_fields(r: &mut Report, p: &Presentation, homs: &HomArgs) -> Result<(), Failure> {
    r.field("generators", p.generators());
    r.field("relators", p.relators().len());
    r.field("abelianization", abelianization(p));
    if let Some(spec) = &homs.hom_target {
        let g = target(spec)?;
        let options = HomOptions {
            bound: homs.target_bound,
            threads: homs.threads.max(1),
        };
        let c = count_homs(p, &g, &options)?;
        r.field("hom_target", &c.target);
        r.field("hom_target_order", c.target_order);
        r.field("hom_count", c.count);
    }
    Ok(())
}

fn cmd_validate(f: &Factorization) -> Result<Report, Failure> {
    let v = validate(f);
    let mut r = Report::new("validate");
    let mut parts = Vec::new();
    for (n, one, many) in [
        (v.tangencies, "tangency", "tangencies"),
        (v.positive_nodes, "positive node", "positive nodes"),
        (v.negative_nodes, "negative node", "negative nodes"),
        (v.cusps, "cusp", "cusps"),
    ] {
        if n > 0 {
            parts.push(format!("{n} {}", if n == 1 { one } else { many }));
        }
    }
    r.summary = format!(
        "product=Δ² {}, {}",
        if v.is_valid() { "OK" } else { "FAILED" },
        if parts.is_empty() { "no factors".to_string() } else { parts.join(", ") }
    );
    r.field("valid", v.is_valid());
    r.field("degree", v.degree);
    r.field("factors", v.factor_count);
    r.field("tangencies", v.tangencies);
    r.field("positive_nodes", v.positive_nodes);
    r.field("negative_nodes", v.negative_nodes);
    r.field("cusps", v.cusps);
    r.field("exponent_sum", v.exponent_sum);
    r.field("expected_exponent_sum", v.degree * v.degree.saturating_sub(1));
    if !v.is_valid() {
        r.exit_code = EXIT_NEGATIVE;
    }
    Ok(r)
}

fn cmd_invariants(f: &Factorization) -> Result<Report, Failure> {
    let v = validate(f);
    let mut r = Report::new("invariants");
    r.summary = format!("Hurwitz invariants of a degree-{} factorization with {} factors", f.degree(), f.len());
    r.field("degree", f.degree());
    r.field("factors", f.len());
    r.field("valid", v.is_valid());
    let mut types: Vec<(i32, Vec<usize>)> = f
        .factors()
        .iter()
        .map(|x| (x.exponent().value(), x.permutation().cycle_type()))
        .collect();
    types.sort();
    let types: Vec<String> = types
        .iter()
        .map(|(e, c)| format!("{e}:{}", c.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    r.field("exponent_cycle_types", types.join(" "));
    r.field("affine_abelianization", abelianization(&presentation(f, false)?));
    if v.is_valid() {
        r.field("projective_abelianization", abelianization(&presentation(f, true)?));
    }
    Ok(r)
}

fn cmd_hurwitz(a: &Factorization, b: &Factorization, options: &SearchOptions) -> Result<Report, Failure> {
    let mut r = Report::new("hurwitz");
    r.field("max_states", options.max_states);
    r.field("conjugation", options.allow_conjugation);
    match hurwitz_equivalent(a, b, options)? {
        SearchOutcome::Found(moves) => {
            r.summary = format!("equivalent: {} moves", moves.len());
            r.field("verdict", "equivalent");
            r.field("moves", moves.len());
            let path: Vec<String> = moves.iter().map(ToString::to_string).collect();
            r.field("path", path.join(" "));
        }
        SearchOutcome::Refuted(why) => {
            r.summary = format!("not equivalent: {why} differs");
            r.field("verdict", "refuted");
            r.field("invariant", why);
            r.exit_code = EXIT_NEGATIVE;
        }
        SearchOutcome::Exhausted { states } => {
            r.summary = format!("inconclusive: budget of {states} states exhausted");
            r.field("verdict", "exhausted");
            r.field("states", states);
            r.exit_code = EXIT_INCONCLUSIVE;
        }
    }
    Ok(r)
}

fn cmd_cover(f: &Factorization, theta: &crate::cover::CoveringData, emit: Option<&Path>) -> Result<Report, Failure> {
    let mut r = Report::new("cover");
    let c = check_compatibility(theta, f)?;
    let list = |v: &[usize]| v.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
    r.field("compatible", c.is_compatible());
    r.field("transitive", c.transitive);
    r.field("global_failures", list(&c.global_failures));
    r.field("local_failures", list(&c.local_failures));
    if !c.is_compatible() {
        r.summary = "covering is not compatible with the factorization".into();
        r.exit_code = EXIT_NEGATIVE;
        return Ok(r);
    }
    let g = fiber_genus(theta)?;
    let l = from_branch_data(f, theta)?;
    if let Some(p) = emit {
        write(p, &text::print_lfibration(&l))?;
    }
    let inv = invariants(&l);
    let valid = sp_validity(&l)?.is_valid();
    r.summary = format!(
        "compatible covering: genus-{g} fiber, {} vanishing cycles, χ={}",
        l.len(),
        inv.euler_characteristic
    );
    r.field("sheets", theta.sheets());
    r.field("fiber_genus", g);
    r.field("critical_points", inv.critical_points);
    r.field("separating", inv.separating);
    r.field("euler_characteristic", inv.euler_characteristic);
    r.field("h1", &inv.h1);
    r.field("monodromy_is_identity", valid);
    if !valid {
        r.exit_code = EXIT_NEGATIVE;
    }
    Ok(r)
}

fn cmd_lefschetz(l: &LFibration, command: &'static str) -> Result<Report, Failure> {
    let inv = invariants(l);
    let valid = sp_validity(l)?;
    let b1 = inv.h1.free_rank;
    let mut r = Report::new(command);
    r.summary = format!(
        "χ={}, b₁={b1}, H₁={}, monodromy {}",
        inv.euler_characteristic,
        inv.h1,
        if valid.is_valid() { "trivial" } else { "NOT trivial" }
    );
    r.field("genus", inv.genus);
    r.field("critical_points", inv.critical_points);
    r.field("separating", inv.separating);
    r.field("euler_characteristic", inv.euler_characteristic);
    r.field("b1", b1);
    r.field("h1", &inv.h1);
    r.field("monodromy_is_identity", valid.is_valid());
    if !valid.is_valid() {
        r.field("monodromy", &valid.monodromy);
        r.exit_code = EXIT_NEGATIVE;
    }
    Ok(r)
}
