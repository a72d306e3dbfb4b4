//! Weak-drive taper transmission of the cavity–nanoparticle–emitter system.
//!
//! The state vector is `(a_cw, a_ccw, σ₋)` in the frame rotating at ω_c. The
//! taper drives the clockwise mode. The nanoparticle adds the same complex
//! term `h − i(κ_R + κ_m)/2` to every element of the 2×2 mode block, which
//! shifts and damps the standing-wave combination `a_cw + a_ccw` and leaves
//! `a_cw − a_ccw` untouched. The emitter couples to both modes with equal
//! phase, so it sees the symmetric mode with strength √2·G.
//!
//! Writing `i dx/dt = M x − i√κ₁ a_in e₁`, the eigenvalues of `M` are
//! `ω_k − iΓ_k/2`: line positions on the real axis, half-widths below it.

use nalgebra::{DMatrix, Matrix3, Vector3};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::hybrid::HybridParams;
use crate::{Error, Result};

pub const DEFAULT_POINTS: usize = 2001;
pub const DEFAULT_SPAN_FACTOR: f64 = 3.0;

/// Minimum grid points per narrowest linewidth before a trace is flagged.
pub const MIN_POINTS_PER_LINEWIDTH: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearSystemModel {
    pub rates: HybridParams,
    pub include_mnp: bool,
    pub include_dipole: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Dip {
    /// Probe detuning Δ = ω − ω_c of the refined minimum, rad/s.
    pub delta: f64,
    pub transmission: f64,
    /// Full width at half depth below unity, rad/s, when both half-depth
    /// crossings are resolved.
    pub width: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumTrace {
    pub delta: Vec<f64>,
    pub transmission: Vec<f64>,
    pub dips: Vec<Dip>,
    /// Set when the grid has fewer than five points across the narrowest line.
    pub coarse_grid: bool,
}

impl LinearSystemModel {
    pub fn new(rates: HybridParams, include_mnp: bool, include_dipole: bool) -> Self {
        Self {
            rates,
            include_mnp,
            include_dipole,
        }
    }

    /// Emitter coupling used in the model (zero without the emitter).
    pub fn coupling(&self) -> f64 {
        match (self.include_dipole, self.include_mnp) {
            (false, _) => 0.0,
            (true, true) => self.rates.g_cm,
            (true, false) => self.rates.g_c,
        }
    }

    /// The frequency matrix `M` over (a_cw, a_ccw, σ₋).
    pub fn dynamical_matrix(&self) -> Matrix3<Complex64> {
        let r = &self.rates;
        let (shift, extra) = if self.include_mnp {
            (r.h, r.kappa_mnp())
        } else {
            (0.0, 0.0)
        };
        let diag = Complex64::new(shift, -(r.kappa_bare() + extra) / 2.0);
        let cross = Complex64::new(shift, -extra / 2.0);
        let g = Complex64::new(self.coupling(), 0.0);
        let emitter = Complex64::new(r.delta_ec, -r.gamma_s / 2.0);
        Matrix3::new(
            diag, cross, g, //
            cross, diag, g, //
            g, g, emitter,
        )
    }

    /// Intracavity amplitudes (a_cw, a_ccw, σ₋) for unit input at detuning `delta`.
    pub fn steady_state(&self, delta: f64) -> Result<Vector3<Complex64>> {
        let m =
            self.dynamical_matrix() - Matrix3::from_diagonal_element(Complex64::new(delta, 0.0));
        let drive = Vector3::new(
            Complex64::new(0.0, -self.rates.kappa_1.sqrt()),
            0.0.into(),
            0.0.into(),
        );
        m.lu()
            .solve(&drive)
            .filter(|x| x.iter().all(|c| c.re.is_finite() && c.im.is_finite()))
            .ok_or_else(|| {
                Error::Numerical(format!("singular steady-state system at Δ = {delta:e}"))
            })
    }

    /// Transmitted power fraction |a_in − √κ₁ a_cw|² / |a_in|².
    pub fn transmission(&self, delta: f64) -> Result<f64> {
        let x = self.steady_state(delta)?;
        Ok((Complex64::new(1.0, 0.0) - self.rates.kappa_1.sqrt() * x[0]).norm_sqr())
    }

    /// Eigenvalues of the smallest block that carries the physics: the
    /// driven mode alone (1×1) without particle or emitter, the two modes
    /// (2×2) with the particle only, and the full 3×3 otherwise. Sorted by
    /// line position.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let full = self.dynamical_matrix();
        let dim = match (self.include_dipole, self.include_mnp) {
            (false, false) => 1,
            (false, true) => 2,
            (true, _) => 3,
        };
        let block = DMatrix::from_fn(dim, dim, |i, j| full[(i, j)]);
        let mut values: Vec<Complex64> = block
            .eigenvalues()
            .ok_or_else(|| Error::Numerical("eigenvalue iteration did not converge".into()))?
            .iter()
            .copied()
            .collect();
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Ok(values)
    }

    /// Half-width of the default probe window: `factor · max(G_c,m, κ_total)`.
    pub fn default_half_span(&self, factor: f64) -> f64 {
        factor * self.rates.g_cm.max(self.rates.kappa_total())
    }

    /// Uniform grid over the default window.
    pub fn default_grid(&self, points: usize) -> Vec<f64> {
        symmetric_grid(self.default_half_span(DEFAULT_SPAN_FACTOR), points)
    }
}

/// `points` uniformly spaced detunings on [−half_span, half_span].
pub fn symmetric_grid(half_span: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| -half_span + 2.0 * half_span * i as f64 / (n - 1) as f64)
        .collect()
}

/// Vertex abscissa of the parabola through three points.
fn parabola_vertex(x: [f64; 3], y: [f64; 3]) -> f64 {
    let (a, b) = (x[1] - x[0], x[1] - x[2]);
    let num = a * a * (y[1] - y[2]) - b * b * (y[1] - y[0]);
    let den = a * (y[1] - y[2]) - b * (y[1] - y[0]);
    if den == 0.0 {
        x[1]
    } else {
        (x[1] - 0.5 * num / den).clamp(x[0], x[2])
    }
}

/// Walks from `start` in direction `step` until the trace crosses `level`,
/// returning the interpolated abscissa. Gives up at a local maximum below
/// the level or at the edge of the grid.
fn crossing(delta: &[f64], t: &[f64], start: usize, step: isize, level: f64) -> Option<f64> {
    let mut i = start;
    loop {
        let j = i.checked_add_signed(step)?;
        if j >= t.len() {
            return None;
        }
        if t[j] >= level {
            let frac = (level - t[i]) / (t[j] - t[i]);
            return Some(delta[i] + frac * (delta[j] - delta[i]));
        }
        if t[j] < t[i] {
            return None;
        }
        i = j;
    }
}

fn find_dips(model: &LinearSystemModel, delta: &[f64], t: &[f64]) -> Result<Vec<Dip>> {
    let mut dips = Vec::new();
    for i in 1..t.len().saturating_sub(1) {
        if !(t[i] < t[i - 1] && t[i] <= t[i + 1]) || 1.0 - t[i] < 1e-9 {
            continue;
        }
        let x = parabola_vertex(
            [delta[i - 1], delta[i], delta[i + 1]],
            [t[i - 1], t[i], t[i + 1]],
        );
        let depth_at = model.transmission(x)?;
        let level = 0.5 * (1.0 + t[i]);
        let width = match (
            crossing(delta, t, i, -1, level),
            crossing(delta, t, i, 1, level),
        ) {
            (Some(lo), Some(hi)) => Some(hi - lo),
            _ => None,
        };
        dips.push(Dip {
            delta: x,
            transmission: depth_at,
            width,
        });
    }
    Ok(dips)
}

/// Evaluates the transmission over `grid` and extracts its dips.
pub fn sweep_spectrum(model: &LinearSystemModel, grid: &[f64]) -> Result<SpectrumTrace> {
    if grid.len() < 3 {
        return Err(Error::Domain(
            "spectrum grid needs at least three points".into(),
        ));
    }
    if grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain(
            "spectrum grid must be strictly increasing".into(),
        ));
    }
    let transmission = grid
        .par_iter()
        .map(|&d| model.transmission(d))
        .collect::<Result<Vec<_>>>()?;
    let dips = find_dips(model, grid, &transmission)?;

    let narrowest = model
        .eigenvalues()?
        .iter()
        .map(|e| -2.0 * e.im)
        .filter(|w| *w > 0.0)
        .fold(f64::INFINITY, f64::min);
    let max_step = grid.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    Ok(SpectrumTrace {
        delta: grid.to_vec(),
        transmission,
        dips,
        coarse_grid: max_step * MIN_POINTS_PER_LINEWIDTH > narrowest,
    })
}
