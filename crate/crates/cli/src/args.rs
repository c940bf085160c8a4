use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "coherence",
    version,
    about = "Coherence of quantum states with respect to POVMs",
    long_about = "Coherence of quantum states with respect to POVMs.\n\n\
        Inputs are JSON matrix files tagged by kind (state, pure_state, povm, ensemble). \
        Results go to stdout as JSON (CSV for `bounds`). Failures print a JSON error \
        object on stderr and exit with 2 (input), 3 (dimension mismatch) or 4 (numeric)."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coherence of a state with respect to a POVM, plus its incoherence defect.
    Compute(ComputeArgs),
    /// CSV of C_l1 and its upper bounds, for one pair or a built-in sweep.
    Bounds(BoundsArgs),
    /// Least-square measurement discrimination and its Tsallis-1/2 identity.
    Lsm(LsmArgs),
    /// Entropic uncertainty relation for two POVMs.
    Uncertainty(UncertaintyArgs),
    /// Haar averages over pure states, optionally checked by Monte Carlo.
    Haar(HaarArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    /// Relative entropy of coherence, in bits.
    R,
    /// l1 norm of coherence.
    L1,
    /// Tsallis relative alpha-entropy of coherence; needs --alpha.
    Tsallis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HaarMeasureArg {
    R,
    Tsallis,
    /// Upper bound on the l1 average with p = q = 2 for every pair.
    L1bound,
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub povm: PathBuf,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long)]
    pub povm: Option<PathBuf>,
    /// Hölder exponents `p,q` (repeatable). Defaults to 2,2 3,1.5 4,4/3.
    #[arg(long = "pq", value_parser = parse_pq, allow_negative_numbers = true)]
    pub pq: Vec<(f64, f64)>,
    /// Built-in sweep: 1 over z in [0, 0.8] (qubit), 2 over x in [0, 1/sqrt(17)] (qutrit).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub figure: Option<u8>,
    /// Sweep grid `start:end:step`, endpoints included.
    #[arg(long, value_parser = parse_range, allow_negative_numbers = true)]
    pub range: Option<SweepRange>,
}

#[derive(Debug, Args)]
pub struct LsmArgs {
    #[arg(long)]
    pub ensemble: Option<PathBuf>,
    #[arg(long)]
    pub state: Option<PathBuf>,
    #[arg(long)]
    pub povm: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct UncertaintyArgs {
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub povm: PathBuf,
    #[arg(long)]
    pub povm2: PathBuf,
}

#[derive(Debug, Args)]
pub struct HaarArgs {
    #[arg(long)]
    pub povm: PathBuf,
    #[arg(long, value_enum)]
    pub measure: HaarMeasureArg,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Monte Carlo sample count (at least 100).
    #[arg(long)]
    pub mc: Option<usize>,
    /// Monte Carlo seed; falls back to $COH_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
}

/// Parses `p,q`.
pub fn parse_pq(s: &str) -> Result<(f64, f64), String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q, got {s:?}"))?;
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad exponent {t:?}: {e}"))
    };
    Ok((num(p)?, num(q)?))
}

/// Inclusive grid `start, start + step, ...` up to `end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

/// Grid points are rounded to multiples of `1 / GRID_SCALE` so that
/// `0.1 + 0.01·k` lands on the decimal it names.
const GRID_SCALE: f64 = 1e12;

impl SweepRange {
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                (x * GRID_SCALE).round() / GRID_SCALE
            })
            .collect()
    }
}

pub fn parse_range(s: &str) -> Result<SweepRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, h] = parts[..] else {
        return Err(format!("expected start:end:step, got {s:?}"));
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad number {t:?}: {e}"))
    };
    let r = SweepRange {
        start: num(a)?,
        end: num(b)?,
        step: num(h)?,
    };
    if !(r.start.is_finite() && r.end.is_finite() && r.step.is_finite()) {
        return Err("range bounds must be finite".into());
    }
    if !(r.step > 0.0) {
        return Err(format!("step must be positive, got {}", r.step));
    }
    if r.end < r.start {
        return Err(format!("end {} is below start {}", r.end, r.start));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_first_sweep_has_81_points() {
        let pts = parse_range("0:0.8:0.01").unwrap().points();
        assert_eq!(pts.len(), 81);
        assert_eq!(pts[50], 0.5);
        assert_eq!(pts[80], 0.8);
        assert_eq!(pts[7], 0.07);
    }

    #[test]
    fn second_sweep_hits_named_decimals() {
        let pts = parse_range("0:0.24:0.01").unwrap().points();
        assert_eq!(pts.len(), 25);
        assert_eq!(pts[21], 0.21);
        assert_eq!(pts[10], 0.1);
    }

    #[test]
    fn degenerate_range_is_one_point() {
        assert_eq!(parse_range("0.3:0.3:1").unwrap().points(), vec![0.3]);
    }

    #[test]
    fn bad_ranges_are_rejected() {
        for s in [
            "0:1",
            "0:1:0",
            "1:0:0.1",
            "0:1:-0.1",
            "a:1:0.1",
            "0:inf:0.1",
            "0:1:NaN",
        ] {
            assert!(parse_range(s).is_err(), "{s}");
        }
    }

    #[test]
    fn exponent_pairs() {
        assert_eq!(parse_pq("3,1.5").unwrap(), (3.0, 1.5));
        assert_eq!(parse_pq(" 2 , 2 ").unwrap(), (2.0, 2.0));
        assert!(parse_pq("2").is_err());
        assert!(parse_pq("2,x").is_err());
    }
}
