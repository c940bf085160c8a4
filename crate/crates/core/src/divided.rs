//! Confluent Newton divided differences.
//!
//! `f[λ_1, …, λ_n]` for distinct nodes equals
//! `Σ_k f(λ_k) Π_{l≠k} (λ_k − λ_l)^{-1}`. When nodes repeat, the table uses
//! Taylor coefficients instead: `f[λ, …, λ]` with `m + 1` copies is
//! `f^{(m)}(λ)/m!`. Nodes closer than [`CLUSTER_TOL`] are merged to their
//! mean first, so nearly degenerate spectra are evaluated as exactly
//! degenerate ones.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

pub const CLUSTER_TOL: f64 = 1e-8;

/// Functions with closed-form Taylor coefficients on `[0, ∞)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `w^exponent`.
    Power { exponent: f64 },
    /// `w^power (ln w − shift)`, extended by continuity to `w = 0`.
    PowerLog { power: u32, shift: f64 },
}

impl Kernel {
    pub fn value(&self, w: f64) -> Option<f64> {
        self.taylor(w, 0)
    }

    /// `f^{(m)}(w)/m!`, or `None` where that coefficient is undefined
    /// (negative nodes for non-integer powers, or the log singularity).
    pub fn taylor(&self, w: f64, m: usize) -> Option<f64> {
        match *self {
            Kernel::Power { exponent: c } => power_taylor(c, w, m),
            Kernel::PowerLog { power: p, shift } => power_log_taylor(p, shift, w, m),
        }
    }
}

/// Generalised binomial coefficient `c (c−1) ⋯ (c−m+1) / m!`.
fn binomial(c: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (c - i as f64) / (i + 1) as f64)
}

fn power_taylor(c: f64, w: f64, m: usize) -> Option<f64> {
    let coeff = binomial(c, m);
    if coeff == 0.0 {
        return Some(0.0);
    }
    let e = c - m as f64;
    if w > 0.0 {
        return Some(coeff * w.powf(e));
    }
    if w == 0.0 {
        return if e > 0.0 {
            Some(0.0)
        } else if e == 0.0 {
            Some(coeff)
        } else {
            None
        };
    }
    if c == c.trunc() {
        Some(coeff * w.powi(e as i32))
    } else {
        None
    }
}

fn harmonic(n: u32) -> f64 {
    (1..=n).map(|k| 1.0 / k as f64).sum()
}

fn power_log_taylor(p: u32, shift: f64, w: f64, m: usize) -> Option<f64> {
    let pm = p as usize;
    if w == 0.0 {
        // every coefficient below order p carries a positive power of w
        return if m < pm { Some(0.0) } else { None };
    }
    if w < 0.0 {
        return None;
    }
    let scale = w.powi(p as i32 - m as i32);
    if m <= pm {
        // d^m/dw^m [w^p ln w] = p!/(p−m)! w^{p−m} (ln w + H_p − H_{p−m})
        let log_part = w.ln() + harmonic(p) - harmonic(p - m as u32) - shift;
        Some(binomial(p as f64, m) * scale * log_part)
    } else {
        // beyond order p only the log term survives:
        // p! (−1)^{m−p−1} (m−p−1)! w^{p−m}, divided by m!
        let k = m - pm;
        let sign = if (k - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        let fact = |n: usize| (1..=n).fold(1.0, |acc, i| acc * i as f64);
        Some(sign * fact(pm) * fact(k - 1) / fact(m) * scale)
    }
}

/// Sorts the nodes and snaps each cluster of nodes within [`CLUSTER_TOL`]
/// of the cluster's first node to the cluster mean.
pub fn cluster_nodes(nodes: &[f64]) -> Vec<f64> {
    let mut sorted = nodes.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] - sorted[i] <= CLUSTER_TOL {
            j += 1;
        }
        if j - i > 1 {
            let mean = sorted[i..j].iter().sum::<f64>() / (j - i) as f64;
            sorted[i..j].iter_mut().for_each(|x| *x = mean);
        }
        i = j;
    }
    sorted
}

/// `f[nodes]` by a confluent Newton table. An empty node list yields 0.
pub fn divided_difference(nodes: &[f64], f: &Kernel) -> Result<f64> {
    let z = cluster_nodes(nodes);
    let n = z.len();
    if n == 0 {
        return Ok(0.0);
    }
    let coeff = |w: f64, m: usize| {
        f.taylor(w, m)
            .ok_or(Error::DerivativeUnavailable { node: w, order: m })
    };
    // column k holds f[z_i, …, z_{i+k}] for i = 0..n−k
    let mut col: Vec<f64> = z.iter().map(|&w| coeff(w, 0)).collect::<Result<_>>()?;
    for k in 1..n {
        let mut next = Vec::with_capacity(n - k);
        for i in 0..n - k {
            let (a, b) = (z[i], z[i + k]);
            next.push(if a == b {
                coeff(a, k)?
            } else {
                (col[i + 1] - col[i]) / (b - a)
            });
        }
        col = next;
    }
    Ok(col[0])
}

/// `Σ_k f(λ_k) Π_{l≠k} (λ_k − λ_l)^{-1}` evaluated literally. Only
/// meaningful for distinct nodes; used as an independent check of
/// [`divided_difference`].
pub fn explicit_divided_difference(nodes: &[f64], f: &Kernel) -> Result<f64> {
    let mut total = 0.0;
    for (k, &x) in nodes.iter().enumerate() {
        let fx = f
            .value(x)
            .ok_or(Error::DerivativeUnavailable { node: x, order: 0 })?;
        let denom: f64 = nodes
            .iter()
            .enumerate()
            .filter(|&(l, _)| l != k)
            .map(|(_, &y)| x - y)
            .product();
        total += fx / denom;
    }
    Ok(total)
}
