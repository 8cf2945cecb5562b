//! Command-line front end: analysis, simulation, characteristic polynomials
//! and orbit enumeration for rules described in a JSON document.

pub mod error;
pub mod report;
pub mod spec;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use finpow::additive::{component_reports, decide_properties};
use finpow::lca::{decide_all, render_cell, FiniteConfiguration, PropertyReport};
use finpow::polymat::char_poly;
use finpow::power_semigroup::{
    decide_finite_powers, detect_orbit, sampled_degrees, Budget, LaurentMatrix, OrbitOutcome,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use error::CliError;
use report::*;
use spec::{CaSpec, Model};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SPEC_ERROR: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Powers `A^{2^j}`, `j` in this range, sampled for the degree-growth note.
const GROWTH_SAMPLES: (u32, u32) = (0, 5);

#[derive(Debug, Parser)]
#[command(
    name = "finpow",
    version,
    about = "Analyse linear and additive cellular automata"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Maximum number of matrix products for orbit enumeration.
    #[arg(
        long,
        global = true,
        default_value_t = Budget::DEFAULT_MULTIPLICATIONS,
        value_parser = clap::value_parser!(u64).range(1..)
    )]
    pub budget: u64,

    /// Maximum stored coefficients in one matrix power.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_TERMS)]
    pub max_terms: usize,

    /// Cells -W..=W are shown by `simulate`.
    #[arg(long, global = true, default_value_t = 10)]
    pub window: u32,

    #[arg(long, global = true, default_value_t = 10)]
    pub steps: u64,

    /// Seed for a random initial configuration when the spec has none.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide sensitivity, equicontinuity, injectivity, surjectivity and transitivity.
    Analyze { path: PathBuf },
    /// Print a space-time diagram.
    Simulate { path: PathBuf },
    /// Characteristic polynomial of the associated matrix with integrality verdicts.
    Charpoly { path: PathBuf },
    /// Enumerate the powers of the associated matrix.
    Orbit { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Rendered output and exit code.
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            code: EXIT_OK,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let path = match &cli.command {
        Command::Analyze { path }
        | Command::Simulate { path }
        | Command::Charpoly { path }
        | Command::Orbit { path } => path,
    };
    let shown = path.display().to_string();
    let spec = CaSpec::load(path)?;
    let model = spec.build(&shown)?;
    match &cli.command {
        Command::Analyze { .. } => {
            let report = analyze(&model, cli.seed);
            Ok(Output::ok(emit(cli.format, &report, render_analyze)))
        }
        Command::Simulate { .. } => {
            let initial = match spec.initial_config(&model, &shown)? {
                Some(c) => (c, InitialSource::Spec),
                None => match cli.seed {
                    Some(seed) => (
                        random_config(&model, seed, cli.window),
                        InitialSource::Random,
                    ),
                    None => {
                        return Err(CliError::Field {
                            path: shown,
                            field: "initial".into(),
                            message: "simulate needs an initial configuration (or --seed)".into(),
                        })
                    }
                },
            };
            let report = simulate(
                &model, &initial.0, initial.1, cli.steps, cli.window, cli.seed,
            );
            Ok(Output::ok(emit(cli.format, &report, render_simulate)))
        }
        Command::Charpoly { .. } => {
            let a = linear_matrix(&model, "charpoly")?;
            let report = charpoly(&model, &a, cli.seed);
            Ok(Output::ok(emit(cli.format, &report, render_charpoly)))
        }
        Command::Orbit { .. } => {
            let a = linear_matrix(&model, "orbit")?;
            let budget = Budget {
                max_multiplications: cli.budget,
                max_terms: cli.max_terms,
            };
            let report = orbit(&model, &a, budget, cli.seed);
            // a finite verdict demands an orbit shape
            let code = if report.finite && report.status == OrbitStatus::Indeterminate {
                EXIT_BUDGET
            } else {
                EXIT_OK
            };
            Ok(Output {
                text: emit(cli.format, &report, render_orbit),
                code,
            })
        }
    }
}

fn emit<T: Serialize>(format: Format, report: &T, text: fn(&T) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => text(report),
    }
}

fn summary(model: &Model) -> RuleSummary {
    RuleSummary {
        kind: model.kind(),
        alphabet: model.alphabet(),
        n: model.dim(),
        radius: model.radius(),
    }
}

fn linear_matrix(model: &Model, verb: &str) -> Result<LaurentMatrix, CliError> {
    match model {
        Model::Linear(rule) => Ok(rule.associated_matrix()),
        Model::Additive(_) => Err(CliError::Unsupported(format!(
            "{verb} needs a linear rule; use analyze for additive rules"
        ))),
    }
}

pub fn analyze(model: &Model, seed: Option<u64>) -> AnalyzeReport {
    let (properties, components) = match model {
        Model::Linear(rule) => (decide_all(rule), Vec::new()),
        Model::Additive(rule) => {
            let comps = component_reports(rule).expect("validated rule");
            let components = comps
                .into_iter()
                .map(|(group, _, properties)| ComponentReport {
                    prime: group.primes()[0],
                    group: group.to_string(),
                    properties,
                })
                .collect();
            (decide_properties(rule).expect("validated rule"), components)
        }
    };
    AnalyzeReport {
        rule: summary(model),
        properties,
        components,
        seed,
    }
}

pub fn charpoly(model: &Model, a: &LaurentMatrix, seed: Option<u64>) -> CharpolyReport {
    let chi = char_poly(a).expect("associated matrix is square");
    let modulus = finpow::Modulus::new(chi.ctx()).expect("valid modulus");
    let coefficients: Vec<CoefficientReport> = chi
        .coeffs()
        .iter()
        .enumerate()
        .map(|(index, c)| {
            let reductions: Vec<Reduction> = modulus
                .primes()
                .map(|p| {
                    let r = c.reduce_mod_prime(p).expect("prime divides modulus");
                    Reduction {
                        prime: p,
                        value: r.to_string(),
                        constant: r.is_constant(),
                    }
                })
                .collect();
            CoefficientReport {
                index,
                value: c.to_string(),
                integral: reductions.iter().all(|r| r.constant),
                reductions,
            }
        })
        .collect();
    CharpolyReport {
        rule: summary(model),
        chi: chi.to_string(),
        finite: coefficients.iter().all(|c| c.integral),
        coefficients,
        seed,
    }
}

pub fn orbit(model: &Model, a: &LaurentMatrix, budget: Budget, seed: Option<u64>) -> OrbitReport {
    let verdict = decide_finite_powers(a).expect("associated matrix is square");
    let outcome = detect_orbit(a, budget).expect("budget is positive");
    let degree_growth = verdict.reason.as_ref().map(|r| DegreeGrowth {
        prime: r.prime,
        samples: sampled_degrees(a, r.prime, GROWTH_SAMPLES.0, GROWTH_SAMPLES.1)
            .expect("prime divides modulus"),
    });
    let mut report = OrbitReport {
        rule: summary(model),
        status: OrbitStatus::Indeterminate,
        finite: verdict.finite,
        preperiod: None,
        period: None,
        size: None,
        multiplications: None,
        budget,
        exhaustion: None,
        degree_growth,
        seed,
    };
    match outcome {
        OrbitOutcome::Found {
            shape,
            multiplications,
        } => {
            report.status = OrbitStatus::Found;
            report.preperiod = Some(shape.preperiod);
            report.period = Some(shape.period);
            report.size = Some(shape.size());
            report.multiplications = Some(multiplications);
        }
        OrbitOutcome::Indeterminate(why) => report.exhaustion = Some(why.to_string()),
    }
    report
}

fn random_config(model: &Model, seed: u64, window: u32) -> FiniteConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = model.orders();
    let mut c = model.empty_config();
    let w = i64::from(window);
    for pos in -w..=w {
        let v: Vec<u64> = orders.iter().map(|&q| rng.gen_range(0..q)).collect();
        c.set(pos, model.cell_from_input(&v).expect("length matches"))
            .expect("length matches");
    }
    c
}

pub fn simulate(
    model: &Model,
    initial: &FiniteConfiguration,
    source: InitialSource,
    steps: u64,
    window: u32,
    seed: Option<u64>,
) -> SimulateReport {
    let w = i64::from(window);
    let mut rows = Vec::with_capacity(steps as usize + 1);
    let mut c = initial.clone();
    for t in 0..=steps {
        if t > 0 {
            c = model.step(&c).expect("configuration matches rule");
        }
        rows.push(
            (-w..=w)
                .map(|i| model.cell_to_input(&c.value(i)).expect("length matches"))
                .collect(),
        );
    }
    SimulateReport {
        rule: summary(model),
        steps,
        window: w,
        initial: source,
        rows,
        seed,
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rule_line(rule: &RuleSummary) -> String {
    let kind = match rule.kind {
        spec::Kind::Linear => "linear",
        spec::Kind::Additive => "additive",
    };
    format!(
        "{kind} rule over {}, radius {}\n",
        rule.alphabet, rule.radius
    )
}

fn property_lines(out: &mut String, p: &PropertyReport, indent: &str) {
    let reason = |key: &str| p.reasons.get(key).cloned().unwrap_or_default();
    let rows = [
        ("sensitive", p.sensitive, reason("sensitivity")),
        ("equicontinuous", p.equicontinuous, String::new()),
        ("surjective", p.surjective, reason("surjectivity")),
        ("injective", p.injective, reason("injectivity")),
        ("transitive", p.transitive, reason("transitivity")),
    ];
    for (name, value, why) in rows {
        let _ = write!(out, "{indent}{name:<15}{:<4}", yes_no(value));
        if !why.is_empty() {
            let _ = write!(out, "{why}");
        }
        out.push('\n');
    }
}

pub fn render_analyze(r: &AnalyzeReport) -> String {
    let mut out = rule_line(&r.rule);
    property_lines(&mut out, &r.properties, "");
    if r.rule.kind == spec::Kind::Additive {
        for c in &r.components {
            let _ = writeln!(out, "component {} (p = {}):", c.group, c.prime);
            let mut p = c.properties.clone();
            p.reasons.clear();
            property_lines(&mut out, &p, "  ");
        }
    }
    out
}

pub fn render_simulate(r: &SimulateReport) -> String {
    let mut out = String::new();
    for row in &r.rows {
        let cells: Vec<String> = row.iter().map(|v| render_cell(v)).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn render_charpoly(r: &CharpolyReport) -> String {
    let mut out = rule_line(&r.rule);
    let _ = writeln!(out, "chi = {}", r.chi);
    for c in &r.coefficients {
        let _ = write!(
            out,
            "a_{} = {}: {}",
            c.index,
            c.value,
            if c.integral {
                "integral"
            } else {
                "not integral"
            }
        );
        let mods: Vec<String> = c
            .reductions
            .iter()
            .map(|m| {
                format!(
                    "mod {}: {} ({})",
                    m.prime,
                    m.value,
                    if m.constant {
                        "constant"
                    } else {
                        "not constant"
                    }
                )
            })
            .collect();
        let _ = writeln!(out, " [{}]", mods.join(", "));
    }
    let _ = writeln!(
        out,
        "powers: {}",
        if r.finite { "finite" } else { "infinite" }
    );
    out
}

pub fn render_orbit(r: &OrbitReport) -> String {
    let mut out = rule_line(&r.rule);
    let _ = writeln!(
        out,
        "powers: {}",
        if r.finite { "finite" } else { "infinite" }
    );
    match r.status {
        OrbitStatus::Found => {
            let _ = writeln!(
                out,
                "orbit: preperiod {}, period {}, size {} ({} products)",
                r.preperiod.unwrap_or(0),
                r.period.unwrap_or(0),
                r.size.unwrap_or(0),
                r.multiplications.unwrap_or(0)
            );
        }
        OrbitStatus::Indeterminate => {
            let _ = writeln!(
                out,
                "orbit: indeterminate (budget {}): {}",
                r.budget.max_multiplications,
                r.exhaustion.as_deref().unwrap_or("")
            );
        }
    }
    if let Some(g) = &r.degree_growth {
        let samples: Vec<String> = g
            .samples
            .iter()
            .map(|(k, d)| format!("D(A^{k}) = {d}"))
            .collect();
        let _ = writeln!(out, "degree mod {} grows: {}", g.prime, samples.join(", "));
    }
    out
}
