//! Subcommand bodies. Each returns what goes to stdout; errors carry their
//! exit code.

use std::path::Path;

use povm_coherence::bounds::{
    bound_table, check_exponents, example1_state, example2_state, BoundTable,
};
use povm_coherence::coherence::{coherence, is_povm_incoherent, Measure, DEFAULT_INCOHERENCE_TOL};
use povm_coherence::haar::{avg_c_l1_bound, avg_c_r, avg_c_tsallis, ExponentMap};
use povm_coherence::lsm::{
    ensemble_from, ensemble_tsallis_identity, lsm_build, tsallis_lsm_identity, IdentityCheck,
    Restriction,
};
use povm_coherence::uncertainty::uncertainty_report;
use povm_coherence::{DensityMatrix, Povm};
use serde_json::{json, Value};

use crate::args::{
    BoundsArgs, ComputeArgs, HaarArgs, HaarMeasureArg, LsmArgs, MeasureArg, SweepRange,
    UncertaintyArgs,
};
use crate::error::CliError;
use crate::format::{matrix_to_json, MatrixFile};
use crate::mc::par_mc_average;

/// Exponent grid used when `bounds` gets no `--pq`.
pub const DEFAULT_PQ: [(f64, f64); 3] = [(2.0, 2.0), (3.0, 1.5), (4.0, 4.0 / 3.0)];

/// Monte Carlo agreement gate, in standard errors.
pub const MC_SIGMA_GATE: f64 = 4.0;
/// Slack for the MC mean against the l1 upper bound, in standard errors.
pub const L1_BOUND_SIGMA_SLACK: f64 = 3.0;

/// Tolerance for reporting a bound as satisfied.
const REPORT_TOL: f64 = 1e-8;

pub const SEED_ENV: &str = "COH_SEED";

pub enum Output {
    Json(Value),
    Csv(String),
}

fn load_state(path: &Path) -> Result<DensityMatrix, CliError> {
    MatrixFile::load(path)?.to_density()
}

fn load_povm(path: &Path) -> Result<Povm, CliError> {
    MatrixFile::load(path)?.to_povm()
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn measure_from(arg: MeasureArg, alpha: Option<f64>) -> Result<Measure, CliError> {
    match (arg, alpha) {
        (MeasureArg::Tsallis, Some(alpha)) => Ok(Measure::Tsallis { alpha }),
        (MeasureArg::Tsallis, None) => Err(usage("alpha required")),
        (_, Some(_)) => Err(usage("--alpha only applies to --measure tsallis")),
        (MeasureArg::R, None) => Ok(Measure::RelativeEntropy),
        (MeasureArg::L1, None) => Ok(Measure::L1),
    }
}

pub fn compute(args: &ComputeArgs) -> Result<Output, CliError> {
    let measure = measure_from(args.measure, args.alpha)?;
    if let Some(alpha) = measure.alpha() {
        povm_coherence::coherence::check_alpha(alpha)?;
    }
    let rho = load_state(&args.state)?;
    let e = load_povm(&args.povm)?;
    let result = coherence(&rho, &e, measure)?;
    let check = is_povm_incoherent(&rho, &e, DEFAULT_INCOHERENCE_TOL)?;
    Ok(Output::Json(json!({
        "measure": measure.id(),
        "alpha": measure.alpha(),
        "value": result.value,
        "roundoff_clamped": result.roundoff_clamped,
        "incoherence_defect": check.max_defect,
        "incoherent": check.incoherent,
    })))
}

fn holder_column(p: f64, q: f64) -> String {
    format!("thm1_p{p}_q{q}")
}

fn push_row(
    out: &mut csv::Writer<Vec<u8>>,
    parameter: Option<f64>,
    t: &BoundTable,
) -> Result<(), CliError> {
    let mut row = vec![
        parameter.map(|x| x.to_string()).unwrap_or_default(),
        t.c_l1.to_string(),
    ];
    row.extend(t.holder.iter().map(|(_, v)| v.to_string()));
    row.push(t.ordered.to_string());
    row.push(t.uniform.to_string());
    match t.basis_bounds {
        Some((b1, b2, b3)) => row.extend([b1, b2, b3].map(|v| v.to_string())),
        None => row.extend(std::iter::repeat_n(String::new(), 3)),
    }
    out.write_record(&row).map_err(|e| usage(e.to_string()))
}

/// Default sweep for each built-in figure.
fn default_range(figure: u8) -> SweepRange {
    match figure {
        1 => SweepRange {
            start: 0.0,
            end: 0.8,
            step: 0.01,
        },
        _ => SweepRange {
            start: 0.0,
            end: 0.24,
            step: 0.01,
        },
    }
}

pub fn bounds(args: &BoundsArgs) -> Result<Output, CliError> {
    let grid: Vec<(f64, f64)> = if args.pq.is_empty() {
        DEFAULT_PQ.to_vec()
    } else {
        args.pq.clone()
    };
    for &(p, q) in &grid {
        check_exponents(p, q)?;
    }
    let mut header = vec!["parameter".to_string(), "c_l1".to_string()];
    header.extend(grid.iter().map(|&(p, q)| holder_column(p, q)));
    header.extend(["thm2_ordered", "thm2_uniform", "b1", "b2", "b3"].map(String::from));
    let mut out = csv::Writer::from_writer(Vec::new());
    out.write_record(&header)
        .map_err(|e| usage(e.to_string()))?;

    match (args.figure, &args.state, &args.povm) {
        (Some(fig), None, None) => {
            let range = args.range.unwrap_or_else(|| default_range(fig));
            let e = Povm::computational(if fig == 1 { 2 } else { 3 });
            let points = range.points();
            // validate the whole sweep before computing anything
            let states = points
                .iter()
                .map(|&x| {
                    if fig == 1 {
                        example1_state(x)
                    } else {
                        example2_state(x)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            for (&x, rho) in points.iter().zip(&states) {
                push_row(&mut out, Some(x), &bound_table(rho, &e, &grid)?)?;
            }
        }
        (None, Some(state), Some(povm)) => {
            if args.range.is_some() {
                return Err(usage("--range only applies with --figure"));
            }
            let rho = load_state(state)?;
            let e = load_povm(povm)?;
            push_row(&mut out, None, &bound_table(&rho, &e, &grid)?)?;
        }
        _ => return Err(usage("give either --state and --povm, or --figure")),
    }
    let bytes = out.into_inner().map_err(|e| usage(e.to_string()))?;
    Ok(Output::Csv(
        String::from_utf8(bytes).expect("csv output is utf-8"),
    ))
}

fn identity_json(check: &IdentityCheck) -> Value {
    json!({
        "tsallis_half": check.tsallis_half,
        "twice_error": check.twice_error,
        "defect": check.defect,
    })
}

pub fn lsm(args: &LsmArgs) -> Result<Output, CliError> {
    match (&args.ensemble, &args.state, &args.povm) {
        (Some(path), None, None) => {
            let ens = MatrixFile::load(path)?.to_ensemble()?;
            let inst = lsm_build(&ens)?;
            let (check, pair) = ensemble_tsallis_identity(&ens)?;
            let (restriction, rank) = match pair.restriction {
                Restriction::FullRank => ("full_rank", ens.dim()),
                Restriction::SupportRestricted { rank } => ("support_restricted", rank),
            };
            Ok(Output::Json(json!({
                "mode": "ensemble",
                "dim": ens.dim(),
                "error_probability": inst.error_probability,
                "success_probability": 1.0 - inst.error_probability,
                "support_rank": inst.support_rank,
                "restriction": restriction,
                "support_restricted": restriction == "support_restricted",
                "restricted_dim": rank,
                "measurement": inst.measurement.iter().map(matrix_to_json).collect::<Vec<_>>(),
                "state": MatrixFile::from_density(&pair.state),
                "povm": MatrixFile::from_povm(&pair.povm),
                "support_basis": pair.support_basis.as_ref().map(matrix_to_json),
                "identity": identity_json(&check),
            })))
        }
        (None, Some(state), Some(povm)) => {
            let rho = load_state(state)?;
            let e = load_povm(povm)?;
            let induced = ensemble_from(&rho, &e)?;
            let lsm = lsm_build(&induced.ensemble)?;
            let check = tsallis_lsm_identity(&rho, &e)?;
            Ok(Output::Json(json!({
                "mode": "state_povm",
                "dim": rho.dim(),
                "ensemble": MatrixFile::from_ensemble(&induced.ensemble),
                "outcomes": induced.outcomes,
                "error_probability": lsm.error_probability,
                "success_probability": 1.0 - lsm.error_probability,
                "identity": identity_json(&check),
            })))
        }
        _ => Err(usage("give either --ensemble, or --state and --povm")),
    }
}

/// Purity threshold above which the pure-state bound is reported as applicable.
const PURE_TOL: f64 = 1e-10;

pub fn uncertainty(args: &UncertaintyArgs) -> Result<Output, CliError> {
    let rho = load_state(&args.state)?;
    let e = load_povm(&args.povm)?;
    let f = load_povm(&args.povm2)?;
    let r = uncertainty_report(&rho, &e, &f)?;
    let pure = rho.purity() >= 1.0 - PURE_TOL;
    Ok(Output::Json(json!({
        "lhs": r.lhs,
        "c": r.c,
        "c_prime": r.c_prime,
        "bound_c": r.bound_c,
        "bound_c_prime": r.bound_c_prime,
        "entropy": r.entropy_rho,
        "holds": r.holds(REPORT_TOL),
        "pure": pure,
        "pure_state_bound": r.pure_state_bound,
        "pure_state_bound_holds": pure.then_some(r.lhs >= r.pure_state_bound - REPORT_TOL),
    })))
}

/// `--seed`, else `$COH_SEED`, else 0.
pub fn resolve_seed(flag: Option<u64>, env: Option<String>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(v)) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        (None, None) => Ok(0),
    }
}

pub fn haar(args: &HaarArgs) -> Result<Output, CliError> {
    let measure = match (args.measure, args.alpha) {
        (HaarMeasureArg::Tsallis, Some(alpha)) => Measure::Tsallis { alpha },
        (HaarMeasureArg::Tsallis, None) => return Err(usage("alpha required")),
        (HaarMeasureArg::R, Some(_)) => {
            return Err(usage("--alpha only applies to --measure tsallis"))
        }
        (HaarMeasureArg::R, None) => Measure::RelativeEntropy,
        (HaarMeasureArg::L1bound, _) => Measure::L1,
    };
    if let Some(alpha) = measure.alpha() {
        povm_coherence::coherence::check_alpha(alpha)?;
    }
    let seed = if args.mc.is_some() {
        Some(resolve_seed(args.seed, std::env::var(SEED_ENV).ok())?)
    } else {
        None
    };
    let e = load_povm(&args.povm)?;

    let mut report = json!({
        "measure": match args.measure {
            HaarMeasureArg::L1bound => "l1_bound",
            _ => measure.id(),
        },
        "alpha": measure.alpha(),
        "dim": e.dim(),
        "outcomes": e.len(),
    });
    let analytic = match args.measure {
        HaarMeasureArg::R => avg_c_r(&e)?,
        HaarMeasureArg::Tsallis => avg_c_tsallis(&e, measure.alpha().expect("tsallis has alpha"))?,
        HaarMeasureArg::L1bound => {
            let b = avg_c_l1_bound(&e, &ExponentMap::default())?;
            report["universal_bound"] = json!(b.universal);
            b.bound
        }
    };
    report["analytic"] = json!(analytic);

    if let (Some(samples), Some(seed)) = (args.mc, seed) {
        let est = par_mc_average(&e, measure, samples, seed)?;
        let universal = (e.len() - 1) as f64;
        let mut mc = json!({
            "seed": seed,
            "samples": est.samples,
            "mean": est.mean,
            "std_error": est.std_error,
            "max_l1": est.max_l1,
            "pointwise_l1_within_n_minus_1": est.max_l1 <= universal + REPORT_TOL,
        });
        if args.measure == HaarMeasureArg::L1bound {
            mc["within_bound"] = json!(est.mean <= analytic + L1_BOUND_SIGMA_SLACK * est.std_error);
        } else {
            let sigma = est.sigma_distance(analytic);
            mc["sigma_distance"] = json!(sigma);
            mc["agrees"] = json!(sigma <= MC_SIGMA_GATE);
        }
        report["mc"] = mc;
    }
    Ok(Output::Json(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(Some(5), Some("9".into())).unwrap(), 5);
        assert_eq!(resolve_seed(None, Some(" 9 ".into())).unwrap(), 9);
        assert_eq!(resolve_seed(None, None).unwrap(), 0);
        assert_eq!(
            resolve_seed(None, Some("x".into()))
                .unwrap_err()
                .exit_code(),
            2
        );
    }

    #[test]
    fn alpha_is_required_only_for_tsallis() {
        let err = measure_from(MeasureArg::Tsallis, None).unwrap_err();
        assert_eq!(err.to_string(), "alpha required");
        assert!(measure_from(MeasureArg::R, Some(0.5)).is_err());
        assert_eq!(measure_from(MeasureArg::L1, None).unwrap(), Measure::L1);
    }

    #[test]
    fn holder_column_names() {
        assert_eq!(holder_column(2.0, 2.0), "thm1_p2_q2");
        assert_eq!(holder_column(3.0, 1.5), "thm1_p3_q1.5");
    }
}
