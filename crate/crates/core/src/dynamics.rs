//! Collective spin dynamics of N emitters in the dispersive regime.
//!
//! With the emitters far detuned from the hybrid mode, eliminating the
//! cavity leaves the one-axis-twisting Hamiltonian H = χ(J_z − J_z²). The
//! protocol's pulses and H are collective, so states stay in the symmetric
//! Dicke subspace of dimension N + 1, indexed here by m = −N/2 … N/2 with
//! index 0 the all-ground state |g⟩^⊗N.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::optimize::golden_section_max;
use crate::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-12;

/// Pure state in the symmetric subspace.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n_spins: usize,
    amplitudes: Vec<Complex64>,
}

impl DickeState {
    pub fn new(n_spins: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n_spins == 0 {
            return Err(Error::Domain("need at least one spin".into()));
        }
        if amplitudes.len() != n_spins + 1 {
            return Err(Error::Domain(format!(
                "{} spins need {} amplitudes, got {}",
                n_spins,
                n_spins + 1,
                amplitudes.len()
            )));
        }
        if amplitudes
            .iter()
            .any(|a| !(a.re.is_finite() && a.im.is_finite()))
        {
            return Err(Error::Domain("amplitudes must be finite".into()));
        }
        let state = Self {
            n_spins,
            amplitudes,
        };
        if (state.norm() - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Domain(format!(
                "state norm is {}, not 1",
                state.norm()
            )));
        }
        Ok(state)
    }

    /// All spins in |g⟩ (m = −N/2).
    pub fn ground(n_spins: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_spins + 1];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Self {
            n_spins,
            amplitudes,
        }
    }

    /// All spins in |e⟩ (m = +N/2).
    pub fn excited(n_spins: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_spins + 1];
        amplitudes[n_spins] = Complex64::new(1.0, 0.0);
        Self {
            n_spins,
            amplitudes,
        }
    }

    /// (|g⟩^⊗N + e^{iφ}|e⟩^⊗N)/√2.
    pub fn noon(n_spins: usize, branch_phase: f64) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_spins + 1];
        amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        amplitudes[n_spins] = Complex64::from_polar(FRAC_1_SQRT_2, branch_phase);
        Self {
            n_spins,
            amplitudes,
        }
    }

    pub fn n_spins(&self) -> usize {
        self.n_spins
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// J_z eigenvalue of each index.
    pub fn m_values(&self) -> impl Iterator<Item = f64> + '_ {
        let j = self.n_spins as f64 / 2.0;
        (0..=self.n_spins).map(move |k| k as f64 - j)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &DickeState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn with_global_phase(&self, phase: f64) -> Self {
        let p = Complex64::from_polar(1.0, phase);
        Self {
            n_spins: self.n_spins,
            amplitudes: self.amplitudes.iter().map(|a| a * p).collect(),
        }
    }

    fn to_vector(&self) -> DVector<Complex64> {
        DVector::from_column_slice(&self.amplitudes)
    }

    fn from_vector(n_spins: usize, v: DVector<Complex64>) -> Self {
        Self {
            n_spins,
            amplitudes: v.iter().copied().collect(),
        }
    }
}

/// Rotation axis for collective pulses.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RotationAxis {
    X,
    Y,
    /// cos φ J_x + sin φ J_y.
    Equatorial(f64),
}

impl RotationAxis {
    fn azimuth(self) -> f64 {
        match self {
            RotationAxis::X => 0.0,
            RotationAxis::Y => FRAC_PI_2,
            RotationAxis::Equatorial(phi) => phi,
        }
    }
}

/// Collective angular-momentum matrices (J_x, J_y, J_z) for spin j = N/2,
/// built from ⟨m+1|J₊|m⟩ = √(j(j+1) − m(m+1)).
pub fn spin_matrices(n_spins: usize) -> [DMatrix<Complex64>; 3] {
    let dim = n_spins + 1;
    let j = n_spins as f64 / 2.0;
    let mut raise = DMatrix::<Complex64>::zeros(dim, dim);
    for k in 0..n_spins {
        let m = k as f64 - j;
        raise[(k + 1, k)] = Complex64::new((j * (j + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let lower = raise.adjoint();
    let jx = (&raise + &lower) * Complex64::new(0.5, 0.0);
    let jy = (&raise - &lower) * Complex64::new(0.0, -0.5);
    let jz = DMatrix::from_diagonal(&DVector::from_fn(dim, |k, _| {
        Complex64::new(k as f64 - j, 0.0)
    }));
    [jx, jy, jz]
}

/// exp(−i·angle·J_axis) by eigendecomposition of the Hermitian generator.
pub fn rotation_matrix(n_spins: usize, axis: RotationAxis, angle: f64) -> DMatrix<Complex64> {
    let [jx, jy, _] = spin_matrices(n_spins);
    let phi = axis.azimuth();
    let generator = jx * Complex64::new(phi.cos(), 0.0) + jy * Complex64::new(phi.sin(), 0.0);
    let eig = generator.symmetric_eigen();
    let phases = DMatrix::from_diagonal(
        &eig.eigenvalues
            .map(|l| Complex64::from_polar(1.0, -angle * l)),
    );
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn collective_rotation(state: &DickeState, axis: RotationAxis, angle: f64) -> DickeState {
    let u = rotation_matrix(state.n_spins, axis, angle);
    DickeState::from_vector(state.n_spins, u * state.to_vector())
}

/// exp(−iθJ_z), diagonal.
pub fn rotate_z(state: &DickeState, angle: f64) -> DickeState {
    let amplitudes = state
        .amplitudes
        .iter()
        .zip(state.m_values())
        .map(|(a, m)| a * Complex64::from_polar(1.0, -angle * m))
        .collect();
    DickeState {
        n_spins: state.n_spins,
        amplitudes,
    }
}

/// Exact evolution under H = χ(J_z − J_z²) for time `t`.
pub fn evolve_twisting(state: &DickeState, chi: f64, t: f64) -> DickeState {
    let amplitudes = state
        .amplitudes
        .iter()
        .zip(state.m_values())
        .map(|(a, m)| a * Complex64::from_polar(1.0, -chi * t * (m - m * m)))
        .collect();
    DickeState {
        n_spins: state.n_spins,
        amplitudes,
    }
}

/// Twisting rate χ = 2G_c,m²/(Δ_ec − N h).
pub fn chi_rate(g_cm: f64, delta_ec: f64, n_spins: usize, h: f64) -> Result<f64> {
    let denom = delta_ec - n_spins as f64 * h;
    if denom == 0.0 {
        return Err(Error::Singular(
            "Δ_ec = N·h: emitters resonant with the shifted mode".into(),
        ));
    }
    Ok(2.0 * g_cm * g_cm / denom)
}

/// Effective twisting model of N emitters dispersively coupled to the hybrid mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistingModel {
    pub chi: f64,
    pub n_spins: usize,
    pub delta_ec: f64,
    pub h: f64,
    pub g_cm: f64,
}

impl TwistingModel {
    pub fn new(g_cm: f64, delta_ec: f64, n_spins: usize, h: f64) -> Result<Self> {
        Ok(Self {
            chi: chi_rate(g_cm, delta_ec, n_spins, h)?,
            n_spins,
            delta_ec,
            h,
            g_cm,
        })
    }

    /// True when |Δ_ec| ≥ 10·G_c,m, where eliminating the cavity is justified.
    pub fn is_dispersive(&self) -> bool {
        self.delta_ec.abs() >= 10.0 * self.g_cm
    }

    /// Evolution time that accumulates a twisting angle χt = π/2.
    pub fn noon_time(&self) -> f64 {
        FRAC_PI_2 / self.chi.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoonOutcome {
    pub n_spins: usize,
    /// Twisting angle χt used between the pulses.
    pub chi_t: f64,
    pub fidelity: f64,
    /// Azimuth of the second π/2 pulse's axis.
    pub pulse_phase: f64,
    /// Relative phase of the |e⟩^⊗N branch in the best-matching NOON state.
    pub branch_phase: f64,
}

/// The pulse that turns |g⟩ into (|g⟩ + |e⟩)/√2 on every spin.
pub fn preparation_pulse(n_spins: usize) -> DickeState {
    collective_rotation(&DickeState::ground(n_spins), RotationAxis::Y, -FRAC_PI_2)
}

/// Overlap with the best NOON state, maximized over its branch phase:
/// (|c_g| + |c_e|)²/2.
fn noon_overlap(amplitudes: &[Complex64]) -> (f64, f64) {
    let (g, e) = (amplitudes[0], amplitudes[amplitudes.len() - 1]);
    let fidelity = 0.5 * (g.norm() + e.norm()).powi(2);
    let phase = (e.arg() - g.arg()).rem_euclid(2.0 * PI);
    (fidelity, phase)
}

/// Pulse, twist by `chi_t`, pulse. The second π/2 pulse's azimuth is scanned
/// over [0, 2π) at 1e-3 rad and refined by golden section.
pub fn noon_protocol(n_spins: usize, chi_t: f64) -> Result<NoonOutcome> {
    if n_spins < 2 {
        return Err(Error::Domain(
            "NOON protocol needs at least two spins".into(),
        ));
    }
    let twisted = evolve_twisting(&preparation_pulse(n_spins), chi_t, 1.0).to_vector();
    // R(φ) = e^{−iφJz} Rx e^{iφJz}; only the outer phases depend on φ.
    let rx = rotation_matrix(n_spins, RotationAxis::X, FRAC_PI_2);
    let j = n_spins as f64 / 2.0;
    let final_amplitudes = |phi: f64| -> Vec<Complex64> {
        let inner = DVector::from_fn(n_spins + 1, |k, _| {
            twisted[k] * Complex64::from_polar(1.0, phi * (k as f64 - j))
        });
        let out = &rx * inner;
        out.iter()
            .enumerate()
            .map(|(k, a)| a * Complex64::from_polar(1.0, -phi * (k as f64 - j)))
            .collect()
    };
    let fidelity_at = |phi: f64| noon_overlap(&final_amplitudes(phi)).0;

    let step = 1e-3;
    let points = (2.0 * PI / step).ceil() as usize;
    let (best_k, _) = (0..points)
        .map(|k| (k, fidelity_at(k as f64 * step)))
        .fold((0, f64::NEG_INFINITY), |b, p| if p.1 > b.1 { p } else { b });
    let centre = best_k as f64 * step;
    let refined = golden_section_max(fidelity_at, centre - step, centre + step, 1e-12);
    // Reported in (−π, π].
    let phi = refined.x - 2.0 * PI * (refined.x / (2.0 * PI)).round();
    let (fidelity, branch_phase) = noon_overlap(&final_amplitudes(phi));
    Ok(NoonOutcome {
        n_spins,
        chi_t,
        fidelity,
        pulse_phase: phi,
        branch_phase,
    })
}

fn expectation(state: &DVector<Complex64>, op: &DMatrix<Complex64>) -> f64 {
    state.dotc(&(op * state)).re
}

/// Wineland-style squeezing ξ² = 4·min⊥⟨ΔJ²⟩/N over directions perpendicular
/// to the mean spin.
pub fn squeezing_parameter(state: &DickeState) -> Result<f64> {
    let n = state.n_spins;
    let psi = state.to_vector();
    let ops = spin_matrices(n);
    let mean: Vec<f64> = ops.iter().map(|op| expectation(&psi, op)).collect();
    let length = mean.iter().map(|x| x * x).sum::<f64>().sqrt();
    if length < 1e-12 * (n as f64 / 2.0) {
        return Err(Error::ZeroMeanSpin);
    }
    let unit = [mean[0] / length, mean[1] / length, mean[2] / length];
    // e1 = normalize(unit × ẑ), or x̂ when the mean spin is along z.
    let cross = [unit[1], -unit[0], 0.0];
    let cn = (cross[0] * cross[0] + cross[1] * cross[1]).sqrt();
    let e1 = if cn > 1e-9 {
        [cross[0] / cn, cross[1] / cn, 0.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let e2 = [
        unit[1] * e1[2] - unit[2] * e1[1],
        unit[2] * e1[0] - unit[0] * e1[2],
        unit[0] * e1[1] - unit[1] * e1[0],
    ];
    let project = |e: [f64; 3]| -> DMatrix<Complex64> {
        &ops[0] * Complex64::new(e[0], 0.0)
            + &ops[1] * Complex64::new(e[1], 0.0)
            + &ops[2] * Complex64::new(e[2], 0.0)
    };
    let (j1, j2) = (project(e1), project(e2));
    let m1 = expectation(&psi, &j1);
    let m2 = expectation(&psi, &j2);
    let v11 = expectation(&psi, &(&j1 * &j1)) - m1 * m1;
    let v22 = expectation(&psi, &(&j2 * &j2)) - m2 * m2;
    let anti = &j1 * &j2 + &j2 * &j1;
    let c12 = 0.5 * expectation(&psi, &anti) - m1 * m2;
    let min_var = 0.5 * (v11 + v22) - (0.25 * (v11 - v22).powi(2) + c12 * c12).sqrt();
    Ok(4.0 * min_var / n as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezingOptimum {
    pub n_spins: usize,
    pub xi2_min: f64,
    /// Twisting angle χt at the minimum.
    pub chi_t_opt: f64,
}

/// Minimum of ξ² along the twisting trajectory of the x-polarized coherent
/// state, over χt ∈ (0, π/2].
pub fn optimal_squeezing(n_spins: usize) -> Result<SqueezingOptimum> {
    if n_spins == 0 {
        return Err(Error::Domain("need at least one spin".into()));
    }
    let start = preparation_pulse(n_spins);
    let xi2 = |chi_t: f64| {
        squeezing_parameter(&evolve_twisting(&start, chi_t, 1.0)).unwrap_or(f64::INFINITY)
    };
    let points = 2000;
    let step = FRAC_PI_2 / points as f64;
    let (best_k, _) = (1..=points)
        .map(|k| (k, xi2(k as f64 * step)))
        .fold((1, f64::INFINITY), |b, p| if p.1 < b.1 { p } else { b });
    let centre = best_k as f64 * step;
    let lo = (centre - step).max(step * 1e-3);
    let hi = (centre + step).min(FRAC_PI_2);
    let refined = golden_section_max(|x| -xi2(x), lo, hi, 1e-12);
    let (chi_t_opt, xi2_min) = if -refined.value <= xi2(centre) {
        (refined.x, -refined.value)
    } else {
        (centre, xi2(centre))
    };
    Ok(SqueezingOptimum {
        n_spins,
        xi2_min,
        chi_t_opt,
    })
}
