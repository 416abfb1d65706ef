use std::fmt::Write as _;
use std::io::Write;

use serde::Serialize;

use crate::algebra::{Rational, RationalFunction};
use crate::analysis::{order_error_scan, radius_estimate, structure_check, tail_fit, tail_fit_coupled, OracleMode};
use crate::closed_form::UnperturbedState;
use crate::engine::{
    energy_eval, solve_tau, solve_tau_symbolic, strength_param, wave_coefficients, ModelParams, Parity,
    PreparedWave, SolveOptions,
};
use crate::oracle::{find_kappa, find_kappa_precise, shoot_profile, ExactHamiltonian, Hamiltonian, ShootingConfig};
use crate::par::{map_slice, Execution};

use super::json::{rational_str, rational_strs, RationalFunctionJson};
use super::output::{float17, write_atomic};
use super::{
    AnalyzeKind, CliError, Command, EnergyArgs, ExpandArgs, Format, OutputArgs, ShootingArgs, UnperturbedArgs,
    VerifyArgs, WaveArgs,
};

/// Half-width of the oracle bracket around the series κ.
const BRACKET: f64 = 0.2;

pub(super) fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Expand(args) => expand(args, out),
        Command::Energy(args) => energy(args, out),
        Command::Wavefunction(args) => wavefunction(args, out),
        Command::Unperturbed(args) => unperturbed(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Analyze(args) => analyze(args.kind, out),
    }
}

fn format_of(o: &OutputArgs, default: Format, allowed: &[Format]) -> Result<Format, CliError> {
    let f = o.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(CliError::Usage(format!("format {f:?} is not available for this command")));
    }
    Ok(f)
}

fn emit(o: &OutputArgs, content: String, out: &mut dyn Write) -> Result<(), CliError> {
    match &o.output {
        Some(path) => write_atomic(path, &content)?,
        None => out.write_all(content.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn shooting_config(kappa: f64, s: &ShootingArgs) -> ShootingConfig {
    let mut cfg = ShootingConfig::around(Parity::Even, kappa, BRACKET);
    if let Some(x) = s.x_max {
        cfg.x_max = x;
    }
    if let Some(h) = s.step {
        cfg.step = h;
    }
    if let Some(t) = s.tol {
        cfg.tol = t;
    }
    cfg
}

#[derive(Serialize)]
#[serde(untagged)]
enum Moments {
    Numeric(#[serde(serialize_with = "rational_strs")] Vec<Rational>),
    Symbolic(Vec<RationalFunctionJson>),
}

#[derive(Serialize)]
struct ExpandReport {
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a: Option<String>,
    order: usize,
    tau: Moments,
}

fn expand(args: ExpandArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = format_of(&args.out, Format::Json, &[Format::Json, Format::Text])?;
    let opts = SolveOptions::from_env();
    let (report, lines) = if args.symbolic {
        let tau = solve_tau_symbolic(args.order, &opts)?.tau;
        let lines: Vec<String> = tau.coeffs().iter().map(RationalFunction::to_string).collect();
        let json = tau.coeffs().iter().map(RationalFunctionJson::from).collect();
        let report = ExpandReport {
            mode: "symbolic",
            mu: None,
            a: None,
            order: args.order,
            tau: Moments::Symbolic(json),
        };
        (report, lines)
    } else {
        let (mu, a) = match (args.mu, args.a) {
            (Some(mu), None) => {
                let a = strength_param(&mu)?;
                (mu, a)
            }
            (None, Some(a)) => (&(&a * &Rational::from_int(2)) - &Rational::frac(1, 2), a),
            _ => return Err(CliError::Usage("give exactly one of --mu, --a or --symbolic".into())),
        };
        if !mu.is_positive() {
            return Err(CliError::Usage(format!("a = {a} gives non-positive mu = {mu}")));
        }
        let tau = solve_tau(a.clone(), args.order, &opts)?.tau;
        let lines = tau.coeffs().iter().map(Rational::to_string).collect();
        let report = ExpandReport {
            mode: "numeric",
            mu: Some(mu.to_string()),
            a: Some(a.to_string()),
            order: args.order,
            tau: Moments::Numeric(tau.coeffs().to_vec()),
        };
        (report, lines)
    };
    let content = match format {
        Format::Json => to_json(&report)?,
        _ => lines
            .iter()
            .enumerate()
            .fold(String::new(), |mut s, (j, l)| {
                let _ = writeln!(s, "tau({j}) = {l}");
                s
            }),
    };
    emit(&args.out, content, out)
}

#[derive(Serialize)]
struct OracleReport {
    mode: OracleMode,
    kappa: f64,
    energy: f64,
    abs_diff: f64,
}

#[derive(Serialize)]
struct EnergyReport {
    #[serde(serialize_with = "rational_str")]
    mu: Rational,
    #[serde(serialize_with = "rational_str")]
    lambda: Rational,
    order: usize,
    kappa: f64,
    energy: f64,
    #[serde(serialize_with = "rational_str")]
    kappa_exact: Rational,
    #[serde(serialize_with = "rational_str")]
    energy_exact: Rational,
    outside_window: bool,
    oracle: Option<OracleReport>,
}

fn energy(args: EnergyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = format_of(&args.out, Format::Json, &[Format::Json, Format::Text])?;
    let params = ModelParams::ground(args.mu.clone(), args.lambda.clone())?;
    let tau = solve_tau(strength_param(&args.mu)?, args.order, &SolveOptions::from_env())?.tau;
    let est = energy_eval(&params, &tau)?;
    let oracle = if args.oracle {
        let cfg = shooting_config(est.kappa, &args.shooting);
        Some(if args.precise {
            let r = find_kappa_precise(&ExactHamiltonian::from(&params), cfg.bracket)?;
            let diff = r.energy - crate::oracle::to_two_float(&est.energy_exact);
            OracleReport {
                mode: OracleMode::Precise,
                kappa: r.kappa.hi(),
                energy: r.energy.hi(),
                abs_diff: diff.hi().abs(),
            }
        } else {
            let r = find_kappa(&Hamiltonian::from(&params), &cfg)?;
            OracleReport {
                mode: OracleMode::Standard,
                kappa: r.kappa,
                energy: r.energy,
                abs_diff: (r.energy - est.energy).abs(),
            }
        })
    } else {
        None
    };
    let report = EnergyReport {
        mu: args.mu,
        lambda: args.lambda,
        order: args.order,
        kappa: est.kappa,
        energy: est.energy,
        kappa_exact: est.kappa_exact,
        energy_exact: est.energy_exact,
        outside_window: est.outside_window,
        oracle,
    };
    let content = match format {
        Format::Json => to_json(&report)?,
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "kappa = {}", report.kappa);
            let _ = writeln!(s, "E_series = {}", report.energy);
            if let Some(o) = &report.oracle {
                let _ = writeln!(s, "E_oracle = {}", o.energy);
                let _ = writeln!(s, "abs_diff = {:e}", o.abs_diff);
            }
            s
        }
    };
    emit(&args.out, content, out)?;
    if let (Some(tol), Some(o)) = (args.tolerance, &report.oracle) {
        if !(o.abs_diff <= tol) {
            return Err(CliError::Verification(format!("|E_series - E_oracle| = {:e} exceeds {tol:e}", o.abs_diff)));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct WaveRow {
    x: f64,
    psi_series: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    psi_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_diff: Option<f64>,
}

fn wavefunction(args: WaveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = format_of(&args.out, Format::Csv, &[Format::Csv, Format::Json])?;
    if args.points < 2 || !(args.from < args.to) {
        return Err(CliError::Usage("need --points >= 2 and --from < --to".into()));
    }
    let params = ModelParams::ground(args.mu.clone(), args.lambda.clone())?;
    let tau = solve_tau(strength_param(&args.mu)?, args.order, &SolveOptions::from_env())?.tau;
    let wave = wave_coefficients(&tau, args.n_max)?;
    let prepared = PreparedWave::new(&params, &tau, &wave, args.terms.unwrap_or(args.n_max + 1))?;
    let xs: Vec<f64> = (0..args.points)
        .map(|i| args.from + (args.to - args.from) * i as f64 / (args.points - 1) as f64)
        .collect();
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let series = map_slice(exec, &xs, |&x| prepared.eval(x));

    let oracle = if args.oracle {
        let ham = Hamiltonian::from(&params);
        let mut cfg = shooting_config(prepared.kappa, &args.shooting);
        let eig = find_kappa(&ham, &cfg)?;
        cfg.x_max = cfg.x_max.max(args.to.abs().max(args.from.abs()) + 1.0);
        let profile = shoot_profile(eig.kappa, &ham, &cfg)?;
        let at_one = profile.eval(1.0).ok_or_else(|| CliError::Usage("profile does not reach x = 1".into()))?;
        let scale = prepared.eval(1.0) / at_one;
        let values = xs
            .iter()
            .map(|&x| profile.eval(x.abs()).map(|v| v * scale))
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| CliError::Usage("sample range exceeds the oracle integration range".into()))?;
        Some(values)
    } else {
        None
    };

    let rows: Vec<WaveRow> = xs
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let psi_oracle = oracle.as_ref().map(|o| o[i]);
            WaveRow {
                x,
                psi_series: series[i],
                psi_oracle,
                abs_diff: psi_oracle.map(|o| (o - series[i]).abs()),
            }
        })
        .collect();
    let content = match format {
        Format::Json => to_json(&rows)?,
        _ => {
            let mut s = String::from(if oracle.is_some() { "x,psi_series,psi_oracle,abs_diff\n" } else { "x,psi_series\n" });
            for r in &rows {
                let _ = write!(s, "{},{}", float17(r.x), float17(r.psi_series));
                if let (Some(o), Some(d)) = (r.psi_oracle, r.abs_diff) {
                    let _ = write!(s, ",{},{}", float17(o), float17(d));
                }
                s.push('\n');
            }
            s
        }
    };
    emit(&args.out, content, out)
}

#[derive(Serialize)]
struct UnperturbedReport {
    #[serde(serialize_with = "rational_str")]
    mu: Rational,
    level: u32,
    parity: u32,
    #[serde(serialize_with = "rational_str")]
    kappa0: Rational,
    #[serde(serialize_with = "rational_str")]
    energy0: Rational,
    #[serde(serialize_with = "rational_strs")]
    coeffs: Vec<Rational>,
}

fn unperturbed(args: UnperturbedArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = format_of(&args.out, Format::Json, &[Format::Json, Format::Text])?;
    let parity = Parity::from_index(args.parity)
        .ok_or_else(|| CliError::Usage(format!("parity must be 0 or 1, got {}", args.parity)))?;
    let state = UnperturbedState::new(&args.mu, args.level, parity)?;
    let report = UnperturbedReport {
        energy0: -(&state.kappa0 * &state.kappa0),
        mu: state.mu,
        level: state.level,
        parity: args.parity,
        kappa0: state.kappa0,
        coeffs: state.coeffs,
    };
    let content = match format {
        Format::Json => to_json(&report)?,
        _ => {
            let coeffs: Vec<String> = report.coeffs.iter().map(Rational::to_string).collect();
            format!("kappa0 = {}\nE0 = {}\ncoeffs = [{}]\n", report.kappa0, report.energy0, coeffs.join(", "))
        }
    };
    emit(&args.out, content, out)
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let format = format_of(&args.out, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let mode = if args.precise { OracleMode::Precise } else { OracleMode::Standard };
    let exec = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let table = order_error_scan(&args.mu, &args.lambdas, args.order, mode, exec)?;
    let content = match format {
        Format::Json => to_json(&table)?,
        Format::Csv => {
            let mut s = String::from("lambda,e_series,e_oracle,abs_diff\n");
            for r in &table.rows {
                let _ = writeln!(s, "{},{},{},{}", r.lambda, float17(r.e_series), float17(r.e_oracle), float17(r.abs_diff));
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in &table.rows {
                let _ = writeln!(s, "lambda = {:<8} E_series = {:.15} E_oracle = {:.15} |diff| = {:e}", r.lambda.to_string(), r.e_series, r.e_oracle, r.abs_diff);
            }
            if let Some(slope) = table.slope {
                let _ = writeln!(s, "slope = {slope:.4}");
            }
            s
        }
    };
    emit(&args.out, content, out)?;
    if args.check {
        let k = args.order as f64;
        match table.slope {
            Some(s) if (k + 0.5..=k + 1.5).contains(&s) => {}
            other => {
                return Err(CliError::Verification(format!(
                    "error slope {other:?} outside [{}, {}]",
                    k + 0.5,
                    k + 1.5
                )))
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TailReport {
    epsilon: f64,
    mu: f64,
    n_lo: u64,
    n_hi: u64,
    lambda: Option<f64>,
    exponent: f64,
}

fn analyze(kind: AnalyzeKind, out: &mut dyn Write) -> Result<(), CliError> {
    match kind {
        AnalyzeKind::Tail {
            epsilon,
            mu,
            n_lo,
            n_hi,
            lambda,
            check,
            out: o,
        } => {
            let format = format_of(&o, Format::Json, &[Format::Json, Format::Text])?;
            let exponent = match lambda {
                Some(l) => tail_fit_coupled(epsilon, mu, l, n_lo, n_hi)?,
                None => tail_fit(epsilon, mu, n_lo, n_hi)?,
            };
            let report = TailReport {
                epsilon,
                mu,
                n_lo,
                n_hi,
                lambda,
                exponent,
            };
            let content = match format {
                Format::Json => to_json(&report)?,
                _ => format!("exponent = {exponent:.6}\n"),
            };
            emit(&o, content, out)?;
            if check && !(-1.6..=-1.4).contains(&exponent) {
                return Err(CliError::Verification(format!("tail exponent {exponent} outside [-1.6, -1.4]")));
            }
            Ok(())
        }
        AnalyzeKind::Radius {
            mu,
            order,
            method,
            out: o,
        } => {
            let format = format_of(&o, Format::Json, &[Format::Json, Format::Text])?;
            let tau = solve_tau(strength_param(&mu)?, order, &SolveOptions::from_env())?.tau;
            let report = radius_estimate(&tau, method)?;
            let content = match format {
                Format::Json => to_json(&report)?,
                _ => report.estimates.iter().fold(String::new(), |mut s, (k, e)| {
                    let _ = writeln!(s, "k = {k:<3} estimate = {e:.10}");
                    s
                }),
            };
            emit(&o, content, out)
        }
        AnalyzeKind::Structure { order, check, out: o } => {
            let format = format_of(&o, Format::Json, &[Format::Json, Format::Text])?;
            let tau = solve_tau_symbolic(order, &SolveOptions::from_env())?.tau;
            let moment = tau.moment(order).ok_or_else(|| CliError::Usage("order must be at least 2".into()))?;
            let report = structure_check(moment, order)?;
            let content = match format {
                Format::Json => to_json(&report)?,
                _ => format!(
                    "K = {}\nM = {:?}\ndeg D = {:?} (expected {})\nD = {}\ndenominator = {:?}\nclauses = {:?}\n",
                    report.order,
                    report.prefactor_pow2,
                    report.degree_l,
                    report.expected_degree,
                    report.numerator_extra,
                    report.denominator_exponents,
                    report.clauses
                ),
            };
            emit(&o, content, out)?;
            if check && !report.matches_ansatz() {
                return Err(CliError::Verification(format!("tau^({order}) misses clauses {:?}", report.clauses)));
            }
            Ok(())
        }
    }
}
