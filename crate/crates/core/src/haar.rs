//! Averages of POVM coherence over Haar-random pure states.
//!
//! For a PSD operator `A` with spectrum `λ_1..λ_d` and `f` smooth on
//! `[0, ∞)`, `∫ f(⟨ψ|A|ψ⟩) dψ = Γ(d) F[λ_1, …, λ_d]` where `F` is the
//! `(d−1)`-fold antiderivative of `f` vanishing to high order at 0 and
//! `F[…]` its divided difference over the spectrum. This gives
//!
//! - `∫ ⟨ψ|E|ψ⟩^β dψ = B(E, β)
//!    = Γ(d)Γ(1+β)/Γ(d+β) · (w^{d+β−1})[λ]`,
//! - `∫ C_r(ψ, E) dψ = −1/(d ln 2) Σ_j g[λ_j]` with
//!   `g(w) = w^d (ln w − Σ_{m=2}^d 1/m)`,
//! - `∫ C_{T,α}(ψ, E) dψ = (Σ_j B(E_j, 1/α) − 1)/(α − 1)`.
//!
//! Repeated eigenvalues go through the confluent divided difference in
//! [`crate::divided`].
//!
//! The Monte Carlo estimator splits the sample budget into fixed chunks of
//! [`MC_CHUNK`] samples. Chunk `i` draws from its own ChaCha stream `i`
//! under the master seed, and partial results are merged in chunk order, so
//! any parallel schedule that merges in the same order reproduces the
//! sequential result bit for bit.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::LN_2;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::check_exponents;
use crate::coherence::{check_alpha, Measure};
use crate::divided::{divided_difference, Kernel};
use crate::error::{Error, Result};
use crate::gamma::ln_gamma;
use crate::matrix::ComplexMatrix;
use crate::quantum::{haar_random_pure, Povm};
use crate::spectral::eig_hermitian;

/// Samples per Monte Carlo chunk.
pub const MC_CHUNK: usize = 1024;
pub const MC_MIN_SAMPLES: usize = 100;

fn spectrum(m: &ComplexMatrix) -> Result<Vec<f64>> {
    eig_hermitian(m)?.psd_eigenvalues()
}

/// `∫ ⟨ψ|E|ψ⟩^β dψ` over Haar-random pure states.
pub fn b_function(e: &ComplexMatrix, beta: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::BetaNonPositive(beta));
    }
    let nodes = spectrum(e)?;
    let d = nodes.len() as f64;
    let kernel = Kernel::Power {
        exponent: d + beta - 1.0,
    };
    let prefactor = (ln_gamma(d) + ln_gamma(1.0 + beta) - ln_gamma(d + beta)).exp();
    Ok(prefactor * divided_difference(&nodes, &kernel)?)
}

/// `Σ_{m=2}^d 1/m`.
fn harmonic_tail(d: usize) -> f64 {
    (2..=d).map(|m| 1.0 / m as f64).sum()
}

/// Exact average of `C_r(ψ, E)`, in bits.
pub fn avg_c_r(e: &Povm) -> Result<f64> {
    let d = e.dim();
    let kernel = Kernel::PowerLog {
        power: d as u32,
        shift: harmonic_tail(d),
    };
    let mut total = 0.0;
    for el in e.elements() {
        total += divided_difference(&spectrum(el)?, &kernel)?;
    }
    Ok(-total / (d as f64 * LN_2))
}

/// Exact average of `C_{T,α}(ψ, E)`.
pub fn avg_c_tsallis(e: &Povm, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let mut total = 0.0;
    for el in e.elements() {
        total += b_function(el, 1.0 / alpha)?;
    }
    Ok((total - 1.0) / (alpha - 1.0))
}

/// `2 {1 − Σ_j [(tr E_j)² + tr E_j²] / (d(d+1))}`, the `α = 1/2` average
/// as a trace polynomial.
pub fn avg_c_t_half_closed(e: &Povm) -> f64 {
    let d = e.dim() as f64;
    let s: f64 = e
        .elements()
        .iter()
        .map(|el| {
            let t = el.real_trace();
            t * t + el.trace_product(el).re
        })
        .sum();
    2.0 * (1.0 - s / (d * (d + 1.0)))
}

/// Hölder exponents per ordered outcome pair `(j, k)`, falling back to a
/// default pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentMap {
    default: (f64, f64),
    overrides: BTreeMap<(usize, usize), (f64, f64)>,
}

impl Default for ExponentMap {
    fn default() -> Self {
        ExponentMap::uniform(2.0, 2.0)
    }
}

impl ExponentMap {
    pub fn uniform(p: f64, q: f64) -> Self {
        ExponentMap {
            default: (p, q),
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_pair(mut self, j: usize, k: usize, p: f64, q: f64) -> Self {
        self.overrides.insert((j, k), (p, q));
        self
    }

    pub fn get(&self, j: usize, k: usize) -> (f64, f64) {
        self.overrides.get(&(j, k)).copied().unwrap_or(self.default)
    }

    fn all_two(&self) -> bool {
        core::iter::once(&self.default)
            .chain(self.overrides.values())
            .all(|&pq| pq == (2.0, 2.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct L1AverageBound {
    pub bound: f64,
    /// `n − 1`, reported when every pair uses `p = q = 2` (where the bound
    /// collapses to exactly this value).
    pub universal: Option<f64>,
}

/// `Σ_{j≠k} (B(E_j, p_jk/2)/p_jk + B(E_k, q_jk/2)/q_jk)`, an upper bound on
/// the average of `C_l1(ψ, E)`.
pub fn avg_c_l1_bound(e: &Povm, exponents: &ExponentMap) -> Result<L1AverageBound> {
    let n = e.len();
    let mut cache: BTreeMap<(usize, u64), f64> = BTreeMap::new();
    let mut b = |j: usize, beta: f64| -> Result<f64> {
        if let Some(&v) = cache.get(&(j, beta.to_bits())) {
            return Ok(v);
        }
        let v = b_function(&e.elements()[j], beta)?;
        cache.insert((j, beta.to_bits()), v);
        Ok(v)
    };
    let mut bound = 0.0;
    for j in 0..n {
        for k in 0..n {
            if j == k {
                continue;
            }
            let (p, q) = exponents.get(j, k);
            check_exponents(p, q)?;
            bound += b(j, p / 2.0)? / p + b(k, q / 2.0)? / q;
        }
    }
    Ok(L1AverageBound {
        bound,
        universal: exponents.all_two().then_some(n as f64 - 1.0),
    })
}

/// Streaming mean/variance over one chunk of samples, mergeable in a fixed
/// order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct McPartial {
    pub count: usize,
    pub mean: f64,
    /// Sum of squared deviations from the mean.
    pub m2: f64,
    /// Largest pointwise `C_l1(ψ, E)` seen, whatever the measure.
    pub max_l1: f64,
}

impl McPartial {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &McPartial) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        let (na, nb) = (self.count as f64, other.count as f64);
        self.mean += delta * nb / n;
        self.m2 += other.m2 + delta * delta * na * nb / n;
        self.count += other.count;
        self.max_l1 = self.max_l1.max(other.max_l1);
    }

    pub fn estimate(&self) -> McEstimate {
        let n = self.count as f64;
        let variance = if self.count > 1 {
            self.m2 / (n - 1.0)
        } else {
            0.0
        };
        McEstimate {
            mean: self.mean,
            std_error: (variance / n).sqrt(),
            samples: self.count,
            max_l1: self.max_l1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
    pub max_l1: f64,
}

impl McEstimate {
    /// `|value − mean|` in units of the standard error.
    pub fn sigma_distance(&self, value: f64) -> f64 {
        let diff = (value - self.mean).abs();
        if self.std_error > 0.0 {
            diff / self.std_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Sizes of the chunks a budget of `samples` splits into.
pub fn chunk_sizes(samples: usize) -> impl Iterator<Item = usize> {
    let full = samples / MC_CHUNK;
    let rest = samples % MC_CHUNK;
    core::iter::repeat_n(MC_CHUNK, full).chain((rest > 0).then_some(rest))
}

/// Evaluates `measure` on `samples` Haar-random pure states drawn from
/// stream `chunk` of the master `seed`.
pub fn mc_chunk(e: &Povm, measure: Measure, seed: u64, chunk: usize, samples: usize) -> McPartial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    let mut partial = McPartial::default();
    for _ in 0..samples {
        let psi = haar_random_pure(e.dim(), &mut rng);
        let p = e.probabilities(psi.amplitudes());
        partial.push(measure.pure_state_value(&p));
        partial.max_l1 = partial.max_l1.max(Measure::L1.pure_state_value(&p));
    }
    partial
}

/// Checks the sample budget and the measure's parameter.
pub fn check_mc_request(measure: Measure, samples: usize) -> Result<()> {
    if samples < MC_MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MC_MIN_SAMPLES,
            got: samples,
        });
    }
    if let Some(alpha) = measure.alpha() {
        check_alpha(alpha)?;
    }
    Ok(())
}

/// Sample mean and standard error of `measure` over Haar-random pure
/// states, evaluated chunk by chunk on one thread.
pub fn mc_average(e: &Povm, measure: Measure, samples: usize, seed: u64) -> Result<McEstimate> {
    check_mc_request(measure, samples)?;
    let mut total = McPartial::default();
    for (i, n) in chunk_sizes(samples).enumerate() {
        total.merge(&mc_chunk(e, measure, seed, i, n));
    }
    Ok(total.estimate())
}
