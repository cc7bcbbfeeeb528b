use std::fmt::Write as _;

use serde_json::{json, Value};
use serialsum::ar_model::{acf, acf_check, char_roots, simulate, to_csv, ArError, ArModel};
use serialsum::lambda_sums::{
    conjecture_probe, evaluate, finite_sum, finite_sum_direct, linear_coefficient,
    series_oracle_with_budget, FiniteSumSpec, ProbeOutcome, RootMultiset, ShiftSpec, SlopeSpec,
    SumsError, DEFAULT_BUDGET,
};
use serialsum::CNum;

use crate::output::{complex, complex_vec, format_complex};
use crate::parse;
use crate::{
    AcfArgs, AlphaArgs, CheckArgs, ConjectureArgs, EvalArgs, FiniteArgs, RootArgs, SeriesArgs,
    ShiftArgs, SimulateArgs, SlopeArgs,
};

pub const BUDGET_ENV: &str = "SERIALSUM_BUDGET";

pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub result: Value,
    pub err_estimate: f64,
    pub text: String,
    /// False when a check ran but did not pass (exit code 1).
    pub success: bool,
}

pub struct Failure {
    pub command: &'static str,
    pub inputs: Value,
    pub message: String,
    pub payload: Value,
    pub err_estimate: f64,
}

pub enum CliError {
    Usage(String),
    Failure(Box<Failure>),
}

impl CliError {
    fn failure(command: &'static str, inputs: &Value, message: String, payload: Value, err_estimate: f64) -> Self {
        CliError::Failure(Box::new(Failure {
            command,
            inputs: inputs.clone(),
            message,
            payload,
            err_estimate,
        }))
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

fn sums_error(command: &'static str, inputs: &Value, err: SumsError) -> CliError {
    match err {
        SumsError::BudgetExceeded { budget, achievable } => CliError::failure(
            command,
            inputs,
            err.to_string(),
            json!({ "error": "BudgetExceeded", "budget": budget, "achievable": achievable }),
            achievable,
        ),
        SumsError::Numerics(_) | SumsError::Collision => CliError::failure(
            command,
            inputs,
            err.to_string(),
            json!({ "error": err.to_string() }),
            0.0,
        ),
        other => usage(other.to_string()),
    }
}

fn ar_error(command: &'static str, inputs: &Value, err: ArError) -> CliError {
    match err {
        ArError::NotStationary { max_modulus } => CliError::failure(
            command,
            inputs,
            err.to_string(),
            json!({ "error": "NotStationary", "max_modulus": max_modulus }),
            0.0,
        ),
        ArError::RootFinding { .. } | ArError::Singular | ArError::DegenerateSample => CliError::failure(
            command,
            inputs,
            err.to_string(),
            json!({ "error": err.to_string() }),
            0.0,
        ),
        other => usage(other.to_string()),
    }
}

fn budget() -> Result<u64, CliError> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| usage(format!("{BUDGET_ENV} must be a positive integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn check_inside(values: &[CNum]) -> Result<(), CliError> {
    match values.iter().find(|z| z.norm() >= 1.0) {
        Some(z) => Err(usage(format!("root {} is not inside the unit disk", format_complex(*z)))),
        None => Ok(()),
    }
}

/// Parsed roots with multiplicities and the aggregated shift.
struct RootInput {
    entries: Vec<(CNum, usize)>,
    ell: usize,
    s: u32,
    shifts: Option<Vec<i64>>,
}

impl RootInput {
    fn expanded(&self) -> Vec<CNum> {
        self.entries
            .iter()
            .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
            .collect()
    }

    fn inputs(&self) -> Value {
        json!({
            "lambdas": complex_vec(&self.entries.iter().map(|e| e.0).collect::<Vec<_>>()),
            "mult": self.entries.iter().map(|e| e.1).collect::<Vec<_>>(),
            "S": self.s,
            "shifts": self.shifts,
        })
    }
}

fn root_input(roots: &RootArgs, shift: &ShiftArgs) -> Result<RootInput, CliError> {
    let values = parse::complex_list(&roots.lambdas).map_err(usage)?;
    let mult = match &roots.mult {
        Some(m) => parse::usize_list(m).map_err(usage)?,
        None => vec![1; values.len()],
    };
    if mult.len() != values.len() {
        return Err(usage(format!("{} multiplicities for {} roots", mult.len(), values.len())));
    }
    if mult.contains(&0) {
        return Err(usage("multiplicities must be at least 1"));
    }
    check_inside(&values)?;
    let entries: Vec<(CNum, usize)> = values.into_iter().zip(mult).collect();
    let ell: usize = entries.iter().map(|e| e.1).sum();
    if !(serialsum::lambda_sums::MIN_ELL..=serialsum::lambda_sums::MAX_ELL).contains(&ell) {
        return Err(usage(format!("need between 2 and 6 root slots, got {ell}")));
    }
    let (s, shifts) = match (shift.s, &shift.shifts) {
        (Some(s), None) => {
            let s = u32::try_from(s).map_err(|_| usage(format!("S must be a non-negative integer, got {s}")))?;
            (s, None)
        }
        (None, Some(text)) => {
            let shifts = parse::int_list(text).map_err(usage)?;
            if shifts.len() != ell {
                return Err(usage(format!("{} shifts for {ell} root slots", shifts.len())));
            }
            (ShiftSpec::new(shifts.clone()).aggregate(), Some(shifts))
        }
        _ => return Err(usage("give exactly one of --S and --shifts")),
    };
    if !roots.allow_complex_result && !conjugate_closed(&entries) {
        return Err(usage(
            "roots are not closed under conjugation; pass --allow-complex-result to accept a complex value",
        ));
    }
    Ok(RootInput { entries, ell, s, shifts })
}

fn conjugate_closed(entries: &[(CNum, usize)]) -> bool {
    let values: Vec<CNum> = entries
        .iter()
        .flat_map(|&(z, m)| std::iter::repeat_n(z, m))
        .collect();
    match RootMultiset::from_values(&values) {
        Ok(r) => r.is_conjugate_closed(),
        Err(_) => false,
    }
}

pub fn eval(args: EvalArgs) -> Result<Report, CliError> {
    let input = root_input(&args.roots, &args.shift)?;
    let inputs = input.inputs();
    let roots = RootMultiset::cluster(input.entries.clone()).map_err(|e| sums_error("eval", &inputs, e))?;
    let route = if roots.is_distinct() { "distinct" } else { "confluent" };
    let value = evaluate(&roots, input.s).map_err(|e| sums_error("eval", &inputs, e))?;
    let merged: Vec<CNum> = roots.entries().iter().map(|e| e.0).collect();
    let result = json!({
        "value": complex(value.value),
        "is_real_certified": value.is_real_certified,
        "route": route,
        "ell": input.ell,
        "roots": complex_vec(&merged),
        "mult": roots.entries().iter().map(|e| e.1).collect::<Vec<_>>(),
    });
    let text = format!(
        "F_{}(S={}) = {}\nerr_estimate = {:e}\nreal = {}\nroute = {}\n",
        input.ell,
        input.s,
        format_complex(value.value),
        value.err_estimate,
        value.is_real_certified,
        route
    );
    Ok(Report {
        command: "eval",
        inputs,
        result,
        err_estimate: value.err_estimate,
        text,
        success: true,
    })
}

pub fn oracle_series(args: SeriesArgs) -> Result<Report, CliError> {
    let input = root_input(&args.roots, &args.shift)?;
    let budget = budget()?;
    let mut inputs = input.inputs();
    inputs["tol"] = json!(args.tol);
    inputs["budget"] = json!(budget);
    let lambdas = input.expanded();
    let out = series_oracle_with_budget(&lambdas, input.s, args.tol, budget)
        .map_err(|e| sums_error("oracle series", &inputs, e))?;
    let result = json!({
        "value": complex(out.value.value),
        "truncation": out.truncation,
        "work": out.work,
        "is_real_certified": out.value.is_real_certified,
    });
    let text = format!(
        "series = {}\nerr_estimate = {:e}\ntruncation J = {}\n",
        format_complex(out.value.value),
        out.value.err_estimate,
        out.truncation
    );
    Ok(Report {
        command: "oracle series",
        inputs,
        result,
        err_estimate: out.value.err_estimate,
        text,
        success: true,
    })
}

fn adjust_list(text: &Option<String>, ell: usize) -> Result<Vec<i64>, CliError> {
    match text {
        Some(t) => parse::int_list(t).map_err(usage),
        None => Ok(vec![0; ell]),
    }
}

pub fn oracle_finite(args: FiniteArgs) -> Result<Report, CliError> {
    let lambdas = parse::complex_list(&args.lambdas).map_err(usage)?;
    check_inside(&lambdas)?;
    let shifts = parse::int_list(&args.shifts).map_err(usage)?;
    let adjust = adjust_list(&args.adjust, lambdas.len())?;
    let inputs = json!({
        "lambdas": complex_vec(&lambdas),
        "shifts": shifts,
        "n": args.n,
        "adjust": adjust,
        "direct": args.direct,
    });
    let spec = FiniteSumSpec::new(lambdas, shifts, args.n).with_adjust(adjust);
    let value = if args.direct {
        finite_sum_direct(&spec)
    } else {
        finite_sum(&spec)
    }
    .map_err(|e| sums_error("oracle finite", &inputs, e))?;
    let method = if args.direct { "enumeration" } else { "reduction" };
    let result = json!({
        "value": complex(value),
        "n": args.n,
        "exact": true,
        "method": method,
    });
    let text = format!("finite sum = {}\nn = {}\n", format_complex(value), args.n);
    Ok(Report {
        command: "oracle finite",
        inputs,
        result,
        err_estimate: 0.0,
        text,
        success: true,
    })
}

pub fn oracle_slope(args: SlopeArgs) -> Result<Report, CliError> {
    let lambdas = parse::complex_list(&args.lambdas).map_err(usage)?;
    check_inside(&lambdas)?;
    let shifts = parse::int_list(&args.shifts).map_err(usage)?;
    let adjust = adjust_list(&args.adjust, lambdas.len())?;
    let inputs = json!({
        "lambdas": complex_vec(&lambdas),
        "shifts": shifts,
        "adjust": adjust,
        "n_base": args.n_base,
    });
    let spec = FiniteSumSpec::new(lambdas.clone(), shifts.clone(), args.n_base.max(1)).with_adjust(adjust.clone());
    spec.validate().map_err(|e| sums_error("oracle slope", &inputs, e))?;
    let template = SlopeSpec::new(lambdas, shifts).with_adjust(adjust);
    let lc = linear_coefficient(&template, args.n_base).map_err(|e| sums_error("oracle slope", &inputs, e))?;
    let result = json!({
        "value": complex(lc.value),
        "n_base": args.n_base,
        "is_real_certified": lc.is_real_certified,
    });
    let text = format!("slope = {}\nerr_estimate = {:e}\n", format_complex(lc.value), lc.err_estimate);
    Ok(Report {
        command: "oracle slope",
        inputs,
        result,
        err_estimate: lc.err_estimate,
        text,
        success: true,
    })
}

pub fn conjecture(args: ConjectureArgs) -> Result<Report, CliError> {
    if args.ell != 5 && args.ell != 6 {
        return Err(usage(format!(
            "--ell must be 5 or 6 (ℓ ≤ 4 is covered by the closed form), got {}",
            args.ell
        )));
    }
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    let budget = budget()?;
    let inputs = json!({
        "ell": args.ell,
        "trials": args.trials,
        "seed": args.seed,
        "tol": args.tol,
        "budget": budget,
    });
    let report = conjecture_probe(args.ell, args.trials, args.seed, args.tol, budget)
        .map_err(|e| sums_error("conjecture", &inputs, e))?;
    let label = |o: ProbeOutcome| match o {
        ProbeOutcome::Pass => "pass",
        ProbeOutcome::Fail => "fail",
        ProbeOutcome::Skip => "skip",
    };
    let trials: Vec<Value> = report
        .trials
        .iter()
        .map(|t| {
            json!({
                "roots": complex_vec(&t.roots),
                "S": t.s,
                "closed_form": complex(t.closed_form),
                "oracle": t.oracle.map(complex),
                "oracle_err": t.oracle_err,
                "discrepancy": t.discrepancy,
                "outcome": label(t.outcome),
            })
        })
        .collect();
    let mut text = String::new();
    for (i, t) in report.trials.iter().enumerate() {
        let roots: Vec<String> = t.roots.iter().map(|&z| format_complex(z)).collect();
        let gap = t.discrepancy.map_or("-".to_string(), |d| format!("{d:.3e}"));
        let _ = writeln!(text, "{i:>4}  {}  S={}  discrepancy={gap}  [{}]", label(t.outcome), t.s, roots.join(", "));
    }
    let _ = writeln!(
        text,
        "passed {} / failed {} / skipped {}; max discrepancy {:.3e}",
        report.passed(),
        report.failed(),
        report.skipped(),
        report.max_discrepancy()
    );
    let result = json!({
        "trials": trials,
        "passed": report.passed(),
        "failed": report.failed(),
        "skipped": report.skipped(),
        "max_discrepancy": report.max_discrepancy(),
    });
    Ok(Report {
        command: "conjecture",
        inputs,
        result,
        err_estimate: report.max_discrepancy(),
        text,
        success: report.all_passed(),
    })
}

fn alphas(args: &AlphaArgs) -> Result<Vec<f64>, CliError> {
    parse::real_list(&args.alpha).map_err(usage)
}

pub fn ar_roots(args: AlphaArgs) -> Result<Report, CliError> {
    let alphas = alphas(&args)?;
    let inputs = json!({ "alpha": alphas });
    let roots = char_roots(&alphas).map_err(|e| ar_error("ar roots", &inputs, e))?;
    let moduli: Vec<f64> = roots.roots.iter().map(|z| z.norm()).collect();
    let result = json!({
        "roots": complex_vec(&roots.roots),
        "moduli": moduli,
        "stationary": roots.stationary,
    });
    let mut text = String::new();
    for z in &roots.roots {
        let _ = writeln!(text, "{}  |λ| = {:?}", format_complex(*z), z.norm());
    }
    let _ = writeln!(text, "stationary = {}", roots.stationary);
    Ok(Report {
        command: "ar roots",
        inputs,
        result,
        err_estimate: 0.0,
        text,
        success: true,
    })
}

pub fn ar_acf(args: AcfArgs) -> Result<Report, CliError> {
    let alphas = alphas(&args.alpha)?;
    let inputs = json!({ "alpha": alphas, "jmax": args.jmax });
    let a = acf(&alphas, args.jmax).map_err(|e| ar_error("ar acf", &inputs, e))?;
    let (coeffs, note) = match &a.model {
        Ok(m) => (complex_vec(&m.coeffs), Value::Null),
        Err(e) => (Value::Null, json!(e.to_string())),
    };
    let result = json!({
        "roots": complex_vec(&a.roots.roots),
        "coeffs": coeffs,
        "coeffs_unavailable": note,
        "rho": a.rho,
    });
    let mut text = String::new();
    match &a.model {
        Ok(m) => {
            for (l, c) in m.roots.iter().zip(&m.coeffs) {
                let _ = writeln!(text, "λ = {}  A = {}", format_complex(*l), format_complex(*c));
            }
        }
        Err(e) => {
            let _ = writeln!(text, "A_i unavailable: {e}");
        }
    }
    for (j, r) in a.rho.iter().enumerate() {
        let _ = writeln!(text, "rho[{j}] = {r:?}");
    }
    Ok(Report {
        command: "ar acf",
        inputs,
        result,
        err_estimate: 0.0,
        text,
        success: true,
    })
}

pub fn ar_simulate(args: SimulateArgs) -> Result<Report, CliError> {
    let alphas = alphas(&args.alpha)?;
    let inputs = json!({
        "alpha": alphas,
        "sigma": args.sigma,
        "n": args.n,
        "seed": args.seed,
        "burn_in": args.burn_in,
        "output": args.output.as_ref().map(|p| p.display().to_string()),
    });
    let model = ArModel::new(alphas, args.sigma).map_err(|e| ar_error("ar simulate", &inputs, e))?;
    let sample = simulate(&model, args.n, args.burn_in, args.seed).map_err(|e| ar_error("ar simulate", &inputs, e))?;
    let csv = to_csv(&sample.values);
    let (result, text) = match &args.output {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            (
                json!({ "burn_in": sample.burn_in, "n": sample.values.len(), "path": path.display().to_string() }),
                format!("wrote {} values to {}\n", sample.values.len(), path.display()),
            )
        }
        None => (
            json!({ "burn_in": sample.burn_in, "n": sample.values.len(), "values": sample.values }),
            csv,
        ),
    };
    Ok(Report {
        command: "ar simulate",
        inputs,
        result,
        err_estimate: 0.0,
        text,
        success: true,
    })
}

pub fn ar_check(args: CheckArgs) -> Result<Report, CliError> {
    let alphas = alphas(&args.alpha)?;
    let inputs = json!({
        "alpha": alphas,
        "sigma": args.sigma,
        "n": args.n,
        "seed": args.seed,
        "seeds": args.seeds,
        "jmax": args.jmax,
        "z_max": args.z_max,
    });
    if args.seeds < 2 {
        return Err(usage("--seeds must be at least 2"));
    }
    if args.jmax == 0 {
        return Err(usage("--jmax must be at least 1"));
    }
    let model = ArModel::new(alphas, args.sigma).map_err(|e| ar_error("ar check", &inputs, e))?;
    let seeds: Vec<u64> = (0..args.seeds as u64).map(|i| args.seed.wrapping_add(i)).collect();
    let check = acf_check(&model, args.n, &seeds, args.jmax).map_err(|e| ar_error("ar check", &inputs, e))?;
    let passed = check.lags.iter().all(|l| l.z.abs() <= args.z_max);
    let lags: Vec<Value> = check
        .lags
        .iter()
        .map(|l| {
            json!({
                "lag": l.lag,
                "theoretical": l.theoretical,
                "empirical": l.mean,
                "std_err": l.std_err,
                "z": l.z,
            })
        })
        .collect();
    let mut text = String::new();
    for l in &check.lags {
        let _ = writeln!(
            text,
            "lag {}: rho = {:.6}  empirical = {:.6}  se = {:.2e}  z = {:+.2}",
            l.lag, l.theoretical, l.mean, l.std_err, l.z
        );
    }
    let _ = writeln!(text, "{}", if passed { "ok" } else { "FAILED" });
    Ok(Report {
        command: "ar check",
        inputs,
        result: json!({ "lags": lags, "max_abs_z": check.max_abs_z(), "passed": passed }),
        err_estimate: check.lags.iter().map(|l| l.std_err).fold(0.0, f64::max),
        text,
        success: passed,
    })
}
