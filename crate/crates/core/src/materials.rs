//! Metal dispersion and the quasi-static dipolar response of a sphere.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Free-electron (Drude) metal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DrudeMetal {
    /// Bulk plasma frequency ω_p in rad/s.
    pub omega_p: f64,
    /// Ohmic damping rate γ_m in rad/s.
    pub gamma_m: f64,
}

/// Homogeneous dielectric surrounding the nanoparticle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    /// Relative permittivity ε_b.
    pub eps_b: f64,
}

impl Default for DrudeMetal {
    /// Gold-like parameters: ω_p = 6×10¹⁵ rad/s, γ_m = 3×10¹⁴ rad/s.
    fn default() -> Self {
        Self {
            omega_p: 6e15,
            gamma_m: 3e14,
        }
    }
}

impl Default for Medium {
    /// Air.
    fn default() -> Self {
        Self { eps_b: 1.0 }
    }
}

impl Medium {
    pub fn new(eps_b: f64) -> Result<Self> {
        let medium = Self { eps_b };
        medium.validate()?;
        Ok(medium)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_b.is_finite() && self.eps_b >= 1.0) {
            return Err(Error::validation(
                "medium.eps_b",
                format!("must be finite and >= 1, got {}", self.eps_b),
            ));
        }
        Ok(())
    }
}

impl DrudeMetal {
    pub fn new(omega_p: f64, gamma_m: f64) -> Result<Self> {
        let metal = Self { omega_p, gamma_m };
        metal.validate()?;
        Ok(metal)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega_p.is_finite() && self.omega_p > 0.0) {
            return Err(Error::validation(
                "metal.omega_p",
                format!("must be positive, got {}", self.omega_p),
            ));
        }
        if !(self.gamma_m.is_finite() && self.gamma_m >= 0.0) {
            return Err(Error::validation(
                "metal.gamma_m",
                format!("must be non-negative, got {}", self.gamma_m),
            ));
        }
        if self.gamma_m >= self.omega_p {
            return Err(Error::validation(
                "metal.gamma_m",
                "damping must be smaller than the plasma frequency",
            ));
        }
        Ok(())
    }

    /// Relative permittivity ε_m(ω) = 1 − ω_p²/[ω(ω + iγ_m)].
    pub fn permittivity(&self, omega: f64) -> Result<Complex64> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::Domain(format!(
                "permittivity requires a positive angular frequency, got {omega}"
            )));
        }
        let denom = Complex64::new(omega * omega, omega * self.gamma_m);
        Ok(Complex64::new(1.0, 0.0) - self.omega_p * self.omega_p / denom)
    }

    /// Dipolar plasmon resonance ω_sp, the exact root of Re ε_m(ω) = −2ε_b:
    /// ω_sp = sqrt(ω_p²/(1 + 2ε_b) − γ_m²).
    pub fn lspr_frequency(&self, medium: &Medium) -> Result<f64> {
        let square =
            self.omega_p * self.omega_p / (1.0 + 2.0 * medium.eps_b) - self.gamma_m * self.gamma_m;
        if square <= 0.0 {
            return Err(Error::NoResonance(format!(
                "ω_p² = {:e} does not exceed (1 + 2ε_b)·γ_m² = {:e}",
                self.omega_p * self.omega_p,
                (1.0 + 2.0 * medium.eps_b) * self.gamma_m * self.gamma_m
            )));
        }
        Ok(square.sqrt())
    }
}

/// Clausius–Mossotti factor β = (ε_m − ε_b)/(ε_m + 2ε_b).
pub fn clausius_mossotti(eps_m: Complex64, medium: &Medium) -> Result<Complex64> {
    let denom = eps_m + 2.0 * medium.eps_b;
    if denom == Complex64::new(0.0, 0.0) {
        return Err(Error::Singular(
            "ε_m = −2ε_b exactly (lossless metal at resonance)".into(),
        ));
    }
    Ok((eps_m - medium.eps_b) / denom)
}

/// Quasi-static polarizability α = 4π r_m³ β in m³.
pub fn polarizability(r_m: f64, beta: Complex64) -> Complex64 {
    4.0 * std::f64::consts::PI * r_m.powi(3) * beta
}
