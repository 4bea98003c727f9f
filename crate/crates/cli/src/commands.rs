use std::error::Error as StdError;
use std::fs;
use std::path::Path;

use erasure::ensemble::{compare_with_reading, Reading};
use erasure::eraser::{eraser_state, sweep, EraserSetup, GammaGrid};
use erasure::probe::probe_c3;
use erasure::steering::optimize_steering;
use erasure::validation::{
    dim3_suite, ensemble_suite, eraser_suite, fidelity_suite, steering_suite, structural_suite, theorem_suite, Scale,
    SuiteOutcome,
};
use erasure::{MeasureReport, PureState, StateFile, TripartiteDims};
use serde::Serialize;

use crate::format::{csv_line, sig15};
use crate::{Command, OutputFormat, ReadingArg, ScaleArg, StateKind, VERSION};

type CliResult<T> = Result<T, Box<dyn StdError>>;

pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, success: true }
    }
}

/// Output wrapper that stamps version and seed on every JSON object.
#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    version: &'a str,
    /// None when the body carries its own seed.
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(flatten)]
    body: T,
}

fn stamped_json<T: Serialize>(seed: Option<u64>, body: T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(&Stamped {
        version: VERSION,
        seed,
        body,
    })?;
    s.push('\n');
    Ok(s)
}

fn to_json<T: Serialize>(seed: u64, body: T) -> CliResult<String> {
    stamped_json(Some(seed), body)
}

pub fn run(command: Command, seed: u64) -> CliResult<Outcome> {
    match command {
        Command::Measures { path } => measures(&path, seed).map(Outcome::ok),
        Command::Ensemble {
            a,
            k,
            samples,
            format,
            reading,
        } => ensemble(a, k, samples, seed, format, reading).map(Outcome::ok),
        Command::Mzi {
            gamma_start,
            gamma_end,
            gamma_step,
            phi,
            env_overlap,
            marker_in_env,
            format,
        } => {
            let grid = GammaGrid::new(gamma_start, gamma_end, gamma_step)?;
            let setup = EraserSetup {
                phi,
                env_overlap,
                marker_in_env,
            };
            mzi(&grid, &setup, seed, format).map(Outcome::ok)
        }
        Command::Steer { path, budget } => steer(&path, budget, seed).map(Outcome::ok),
        Command::Export {
            kind,
            alice,
            env,
            gamma,
            phi,
        } => export(kind, alice, env, gamma, phi, seed).map(Outcome::ok),
        Command::Selftest { scale } => Ok(selftest(scale, seed)),
        Command::ProbeC3 { trials } => stamped_json(None, probe_c3(trials, seed)?).map(Outcome::ok),
    }
}

fn read_state(path: &Path) -> CliResult<PureState> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: StateFile = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(file.into_state()?)
}

fn measures(path: &Path, seed: u64) -> CliResult<String> {
    let psi = read_state(path)?;
    to_json(seed, MeasureReport::compute(&psi)?)
}

fn ensemble(
    a: usize,
    k: usize,
    samples: usize,
    seed: u64,
    format: OutputFormat,
    reading: ReadingArg,
) -> CliResult<String> {
    let reading = match reading {
        ReadingArg::Adopted => Reading::Adopted,
        ReadingArg::Traced => Reading::Traced,
    };
    let report = compare_with_reading(a, k, samples, seed, reading)?;
    match format {
        OutputFormat::Json => stamped_json(None, &report),
        OutputFormat::Csv => {
            let mut out = csv_line([
                "a",
                "K",
                "samples",
                "seed",
                "mc_mean",
                "mc_stderr",
                "closed_form",
                "z_score",
                "version",
            ]);
            out += &csv_line([
                report.a.to_string(),
                report.k.to_string(),
                report.samples.to_string(),
                report.seed.to_string(),
                sig15(report.mc_mean),
                sig15(report.mc_stderr),
                sig15(report.closed_form),
                sig15(report.z_score),
                VERSION.to_string(),
            ]);
            Ok(out)
        }
    }
}

fn mzi(grid: &GammaGrid, setup: &EraserSetup, seed: u64, format: OutputFormat) -> CliResult<String> {
    let rows = sweep(grid, setup)?;
    match format {
        OutputFormat::Json => {
            #[derive(Serialize)]
            struct Sweep<'a> {
                phi: f64,
                env_overlap: f64,
                marker_in_env: bool,
                rows: &'a [erasure::eraser::EraserRow],
            }
            to_json(
                seed,
                Sweep {
                    phi: setup.phi,
                    env_overlap: setup.env_overlap,
                    marker_in_env: setup.marker_in_env,
                    rows: &rows,
                },
            )
        }
        OutputFormat::Csv => {
            let mut out = format!(
                "# erasure {VERSION} seed={seed} phi={} env_overlap={} marker_in_env={}\n",
                sig15(setup.phi),
                sig15(setup.env_overlap),
                setup.marker_in_env
            );
            out += &csv_line(["gamma", "c1", "c2"]);
            for r in rows {
                out += &csv_line([sig15(r.gamma), sig15(r.c1), sig15(r.c2)]);
            }
            Ok(out)
        }
    }
}

fn steer(path: &Path, budget: usize, seed: u64) -> CliResult<String> {
    let psi = read_state(path)?;
    let r = optimize_steering(&psi, budget, seed)?;

    #[derive(Serialize)]
    struct Steering {
        budget: usize,
        evaluations: usize,
        best_value: f64,
        search_best: f64,
        analytic_bound: f64,
        gap: f64,
        /// Measurement vectors on A, each as [[re, im], ...].
        basis: Vec<Vec<[f64; 2]>>,
    }
    let basis = r
        .best_basis
        .vectors()
        .iter()
        .map(|v| v.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    to_json(
        seed,
        Steering {
            budget,
            evaluations: r.evaluations,
            best_value: r.best_value,
            search_best: r.search_best,
            analytic_bound: r.analytic_bound,
            gap: r.analytic_bound - r.best_value,
            basis,
        },
    )
}

fn export(kind: StateKind, alice: usize, env: usize, gamma: f64, phi: f64, seed: u64) -> CliResult<String> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let psi = match kind {
        StateKind::Haar => PureState::haar_sample(TripartiteDims::new(alice, env)?, seed),
        StateKind::Mzi => PureState::mzi(gamma, phi)?,
        StateKind::Eraser => eraser_state(
            gamma,
            &EraserSetup {
                phi,
                ..EraserSetup::default()
            },
        )?,
        StateKind::Bell | StateKind::Ghz => {
            // (|0>_A|0>_B|0>_E + |1>_A|1>_B|1>_E) / sqrt 2, E trivial for Bell
            let env = if kind == StateKind::Bell { 1 } else { 2 };
            let dims = TripartiteDims::new(2, env)?;
            let mut amplitudes = vec![[0.0, 0.0]; dims.total()];
            amplitudes[dims.index(0, 0, 0)] = [h, 0.0];
            amplitudes[dims.index(1, 1, env - 1)] = [h, 0.0];
            StateFile {
                dims: dims.as_triple(),
                amplitudes,
            }
            .into_state()?
        }
    };
    let mut s = serde_json::to_string(&StateFile::from_state(&psi))?;
    s.push('\n');
    Ok(s)
}

fn selftest(scale: ScaleArg, seed: u64) -> Outcome {
    let scale = match scale {
        ScaleArg::Quick => Scale::Quick,
        ScaleArg::Full => Scale::Full,
    };
    let suites: [fn(u64, Scale) -> SuiteOutcome; 7] = [
        theorem_suite,
        dim3_suite,
        steering_suite,
        ensemble_suite,
        fidelity_suite,
        structural_suite,
        |_, _| eraser_suite(),
    ];
    let scale_name = if scale == Scale::Full { "full" } else { "quick" };
    println!("# erasure {VERSION} selftest seed={seed} scale={scale_name}");
    let mut failed = 0;
    for suite in suites {
        let outcome = suite(seed, scale);
        if !outcome.passed() {
            failed += 1;
        }
        // printed as each suite finishes, full scale takes a while
        println!("{outcome}");
    }
    let summary = if failed == 0 {
        "all suites passed\n".to_string()
    } else {
        format!("{failed} suite(s) failed\n")
    };
    Outcome {
        stdout: summary,
        success: failed == 0,
    }
}
