//! Command implementations. Each returns its report text and exit status; the caller
//! owns stdout.

use std::fmt::Write as _;
use std::path::Path;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use requilibrium::combinat::{binomial, subset_rank};
use requilibrium::detsr::{build_system_matrix, check_dependence_relations, det_sr};
use requilibrium::equilibrium::{
    check_force_relations, check_force_relations_structural, residual, solve_nontrivial, theorem_consistency,
};
use requilibrium::witnesses::{
    cross_product_forces, difference_configuration, random_points, random_vector, seeded_rng, wedge_forces,
    witness_search, witness_search_range, Witness,
};
use requilibrium::{CoefficientSystem, ExactRational, WitnessReport};

use crate::error::CliError;
use crate::tensor_file::{format_scalar, Tensor, TensorFile};

/// Report text plus process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub status: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, status: 0 }
    }

    fn failed(text: String) -> Self {
        Outcome { text, status: 1 }
    }
}

fn verdict(zero: bool) -> &'static str {
    if zero {
        "ZERO"
    } else {
        "NONZERO"
    }
}

pub fn det(input: &Path, matrix: bool) -> Result<Outcome, CliError> {
    let tensor = TensorFile::load(input)?;
    let v = tensor.configuration();
    if v.q() != v.r() * v.d() {
        return Err(CliError::Precondition(format!(
            "q = {} but det needs q = r*d = {}",
            v.q(),
            v.r() * v.d()
        )));
    }
    let mut out = String::new();
    if matrix {
        let system = build_system_matrix(&v)?;
        let m = &system.matrix;
        let cols: Vec<String> = system.col_labels.iter().map(ToString::to_string).collect();
        writeln!(out, "matrix {}x{}", m.rows(), m.cols()).unwrap();
        writeln!(out, "columns: {}", cols.join(" ")).unwrap();
        for (i, label) in system.row_labels.iter().enumerate() {
            let row: Vec<String> = m.row(i).iter().map(format_scalar).collect();
            writeln!(out, "E{}[{}]: {}", label.equation, label.coord, row.join(" ")).unwrap();
        }
    }
    let value = det_sr(&v)?;
    writeln!(out, "det = {}", format_scalar(&value)).unwrap();
    writeln!(out, "{}", verdict(value.is_zero())).unwrap();
    Ok(Outcome::ok(out))
}

pub fn solve(input: &Path) -> Result<Outcome, CliError> {
    let Tensor::Forces(f) = TensorFile::load(input)? else {
        return Err(CliError::Input("solve needs a file of kind \"forces\"".into()));
    };
    let mut out = String::new();
    let mut status = 0;
    match solve_nontrivial(&f)? {
        Some(lambda) => {
            let res = residual(&f, &lambda)?;
            writeln!(out, "SOLVABLE").unwrap();
            writeln!(out, "lambda:").unwrap();
            let mut entries: Vec<_> = lambda.iter().collect();
            entries.sort_by_key(|(t, _)| subset_rank(t, f.q()).expect("tuples are bounded by q"));
            for (t, x) in entries {
                writeln!(out, "  {} = {}", t, format_scalar(x)).unwrap();
            }
            writeln!(out, "residual = {}", format_scalar(&res)).unwrap();
            if !res.is_zero() {
                status = 1;
            }
        }
        None => writeln!(out, "UNSOLVABLE").unwrap(),
    }
    if f.q() == f.r() * f.d() {
        let report = theorem_consistency(&f)?;
        writeln!(out, "det = {}", format_scalar(&report.det_value)).unwrap();
        let ok = report.consistent && report.reduced_equivalent();
        writeln!(out, "consistency: {}", if ok { "CONSISTENT" } else { "INCONSISTENT" }).unwrap();
        if !ok {
            status = 1;
        }
    }
    Ok(Outcome { text: out, status })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExampleName {
    /// Forces `(p_j - p_i) x (p_k - p_i)` from nine points in 3-space.
    CrossProduct,
    /// Forces `v_i^v_j + v_j^v_k + v_k^v_i` in the second exterior power of an s-space.
    Wedge,
    /// Configuration `v_{i,j} = p_j - p_i` from 2d points in d-space.
    Differences,
}

#[derive(Debug, Clone, Copy)]
pub struct ExampleParams {
    pub seed: u64,
    pub bound: i64,
    pub d: usize,
    pub s: usize,
}

pub fn example_tensor(name: ExampleName, p: ExampleParams) -> Result<Tensor, CliError> {
    if p.bound < 1 {
        return Err(CliError::Input("bound must be at least 1".into()));
    }
    let mut rng = seeded_rng(p.seed, 0);
    Ok(match name {
        ExampleName::CrossProduct => Tensor::Forces(cross_product_forces(&random_points(9, 3, p.bound, &mut rng))?),
        ExampleName::Wedge => {
            if p.s < 3 {
                return Err(CliError::Input(format!("wedge needs s >= 3, got {}", p.s)));
            }
            let q = 3 * binomial(p.s, 2);
            Tensor::Forces(wedge_forces(p.s, &random_points(q, p.s, p.bound, &mut rng))?)
        }
        ExampleName::Differences => {
            if p.d < 1 {
                return Err(CliError::Input("differences needs d >= 1".into()));
            }
            Tensor::Configuration(difference_configuration(&random_points(2 * p.d, p.d, p.bound, &mut rng))?)
        }
    })
}

/// Writes the example to `output`, or returns it as the report when no path is given.
pub fn example(name: ExampleName, p: ExampleParams, output: Option<&Path>) -> Result<Outcome, CliError> {
    let json = TensorFile::from_tensor(&example_tensor(name, p)?).to_json();
    match output {
        Some(path) => {
            std::fs::write(path, json)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(format!("wrote {}\n", path.display())))
        }
        None => Ok(Outcome::ok(json)),
    }
}

#[derive(Serialize)]
struct WitnessJson {
    trial: u64,
    det: String,
    configuration: TensorFile,
}

#[derive(Serialize)]
struct ReportJson {
    r: usize,
    d: usize,
    bound: i64,
    seed: u64,
    trials: u64,
    nonzero_count: u64,
    first_witness: Option<WitnessJson>,
}

fn report_json(report: &WitnessReport) -> String {
    let json = ReportJson {
        r: report.r,
        d: report.d,
        bound: report.bound,
        seed: report.seed,
        trials: report.trials,
        nonzero_count: report.nonzero_count,
        first_witness: report.first_witness.as_ref().map(|w: &Witness| WitnessJson {
            trial: w.trial,
            det: format_scalar(&w.det),
            configuration: TensorFile::from_configuration(&w.configuration),
        }),
    };
    let mut s = serde_json::to_string_pretty(&json).expect("reports always serialize");
    s.push('\n');
    s
}

/// Runs one trial per task; the merge keeps the lowest-index witness, so the result
/// equals the sequential search.
pub fn parallel_witness_search(r: usize, d: usize, trials: u64, bound: i64, seed: u64) -> Result<WitnessReport, CliError> {
    if trials == 0 {
        return Err(CliError::Input("trials must be at least 1".into()));
    }
    let report = (0..trials)
        .into_par_iter()
        .map(|t| witness_search_range(r, d, bound, seed, t..t + 1))
        .try_reduce_with(|a, b| Ok(a.merge(b)))
        .expect("at least one trial")?;
    Ok(report)
}

pub fn witness(r: usize, d: usize, trials: u64, bound: i64, seed: u64, parallel: bool) -> Result<Outcome, CliError> {
    let report = if parallel {
        parallel_witness_search(r, d, trials, bound, seed)?
    } else {
        witness_search(r, d, trials, bound, seed)?
    };
    Ok(Outcome::ok(report_json(&report)))
}

/// Symmetric coefficients with entries in `[-bound, bound]`, drawn from stream `trial`.
pub fn random_lambda(r: usize, q: usize, bound: i64, seed: u64, trial: u64) -> Result<CoefficientSystem, CliError> {
    let mut rng = seeded_rng(seed, trial);
    let values: Vec<ExactRational> = random_vector(binomial(q, r), bound, &mut rng);
    Ok(CoefficientSystem::from_colex_vector(r, q, &values)?)
}

/// Checks the dependence relations among the equations at `trials` random `λ`; for
/// forces it also checks that the relations annihilate the rows of the full system.
pub fn verify_relations(input: &Path, trials: u64, seed: u64) -> Result<Outcome, CliError> {
    let tensor = TensorFile::load(input)?;
    let (r, q) = match &tensor {
        Tensor::Forces(f) => (f.r(), f.q()),
        Tensor::Configuration(v) => (v.r(), v.q()),
    };
    let mut out = String::new();
    if let Tensor::Forces(f) = &tensor {
        let ok = check_force_relations_structural(f)?;
        writeln!(out, "structural: {}", if ok { "HOLD" } else { "VIOLATED" }).unwrap();
        if !ok {
            return Ok(Outcome::failed(out));
        }
    }
    for trial in 0..trials {
        let lambda = random_lambda(r, q, 5, seed, trial)?;
        let ok = match &tensor {
            Tensor::Forces(f) => check_force_relations(f, &lambda)?,
            Tensor::Configuration(v) => check_dependence_relations(v, &lambda)?,
        };
        if !ok {
            writeln!(out, "relations: VIOLATED at trial {trial}").unwrap();
            return Ok(Outcome::failed(out));
        }
    }
    writeln!(out, "relations: HOLD ({trials} trials)").unwrap();
    Ok(Outcome::ok(out))
}
