//! Nanoparticle-induced modification of the cavity mode.
//!
//! A metal nanosphere of radius `r_m` sits in the evanescent field of the
//! cavity with an emitter a gap `d` from its surface, on the axis parallel to
//! the cavity polarization. In the quasi-static limit the sphere turns into a
//! point dipole whose near field enhances the emitter coupling, mixes the two
//! counter-propagating modes and adds scattering and ohmic decay channels.
//! Every function here takes β evaluated at the cavity frequency.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cavity::{self, CavityConfig, EmitterConfig};
use crate::constants::SPEED_OF_LIGHT;
use crate::materials::{clausius_mossotti, DrudeMetal, Medium};
use crate::{Error, Result};

/// Sphere radius and emitter gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NanoGeometry {
    /// Sphere radius r_m in m.
    pub r_m: f64,
    /// Gap d between the emitter and the sphere surface in m.
    pub d: f64,
}

impl Default for NanoGeometry {
    fn default() -> Self {
        Self {
            r_m: 12e-9,
            d: 3e-9,
        }
    }
}

impl NanoGeometry {
    pub fn new(r_m: f64, d: f64) -> Result<Self> {
        let g = Self { r_m, d };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_m.is_finite() && self.r_m > 0.0) {
            return Err(Error::validation(
                "geometry.r_m",
                format!("must be positive, got {}", self.r_m),
            ));
        }
        if !(self.d.is_finite() && self.d > 0.0) {
            return Err(Error::validation(
                "geometry.d",
                format!("must be positive, got {}", self.d),
            ));
        }
        Ok(())
    }

    /// Emitter distance from the sphere centre, r = r_m + d.
    pub fn center_distance(&self) -> f64 {
        self.r_m + self.d
    }

    /// (r_m / r)³ at the emitter.
    pub fn volume_ratio(&self) -> f64 {
        (self.r_m / self.center_distance()).powi(3)
    }
}

/// Total field along the cavity polarization, relative to the unperturbed
/// cavity field, at distance `r` from the sphere centre and polar angle
/// `theta` from the polarization axis.
///
/// Inside the sphere the field is uniform, (1 − β). Outside it is the
/// incident field plus the induced dipole field, whose projection on the
/// polarization axis is 1 + β (r_m/r)³ (3cos²θ − 1).
pub fn field_enhancement(beta: Complex64, r_m: f64, r: f64, theta: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if r <= r_m {
        return one - beta;
    }
    let c = theta.cos();
    one + beta * (r_m / r).powi(3) * (3.0 * c * c - 1.0)
}

/// Hybrid mode volume V_c,m = ε_c V_c / [ε_b |1 + 2β|² f_c²].
pub fn hybrid_mode_volume(cavity: &CavityConfig, medium: &Medium, beta: Complex64) -> Result<f64> {
    let peak = (1.0 + 2.0 * beta).norm_sqr();
    if peak == 0.0 {
        return Err(Error::Singular("β = −1/2 cancels the peak field".into()));
    }
    Ok(cavity.eps_c * cavity.mode_volume / (medium.eps_b * peak * cavity.field_fraction.powi(2)))
}

/// Emitter coupling next to the sphere, G_c,m = G_c |1 + 2β r_m³/r³|.
pub fn enhanced_coupling(g_c: f64, beta: Complex64, geometry: &NanoGeometry) -> f64 {
    g_c * (1.0 + 2.0 * beta * geometry.volume_ratio()).norm()
}

/// Scattering-induced coupling between the counter-propagating modes,
/// h = 2π r_m³ ε_b ω_c |β|² f_c² / (ε_c V_c).
pub fn mixing_strength(cavity: &CavityConfig, medium: &Medium, beta: Complex64, r_m: f64) -> f64 {
    2.0 * PI
        * r_m.powi(3)
        * medium.eps_b
        * cavity.omega_c
        * beta.norm_sqr()
        * cavity.field_fraction.powi(2)
        / (cavity.eps_c * cavity.mode_volume)
}

/// Radiative scattering loss,
/// κ_R = ε_b^{5/2} (4π r_m³)² |β|⁴ ω_c⁴ f_c² / (6π c³ ε_c V_c).
pub fn scattering_decay(cavity: &CavityConfig, medium: &Medium, beta: Complex64, r_m: f64) -> f64 {
    medium.eps_b.powf(2.5)
        * (4.0 * PI * r_m.powi(3)).powi(2)
        * beta.norm_sqr().powi(2)
        * cavity.omega_c.powi(4)
        * cavity.field_fraction.powi(2)
        / (6.0 * PI * SPEED_OF_LIGHT.powi(3) * cavity.eps_c * cavity.mode_volume)
}

/// Ohmic absorption loss,
/// κ_m = 4π r_m³ |1 − β|² ω_p² γ_m f_c² / (3 ε_c ω_c² V_c).
pub fn absorption_decay(
    cavity: &CavityConfig,
    metal: &DrudeMetal,
    beta: Complex64,
    r_m: f64,
) -> f64 {
    4.0 * PI
        * r_m.powi(3)
        * (1.0 - beta).norm_sqr()
        * metal.omega_p.powi(2)
        * metal.gamma_m
        * cavity.field_fraction.powi(2)
        / (3.0 * cavity.eps_c * cavity.omega_c.powi(2) * cavity.mode_volume)
}

/// Complete rate set for one scenario. Rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridParams {
    pub omega_c: f64,
    pub delta_ec: f64,
    pub beta: Complex64,
    pub g_c: f64,
    pub g_cm: f64,
    pub h: f64,
    pub kappa_0: f64,
    pub kappa_1: f64,
    pub kappa_r: f64,
    pub kappa_m: f64,
    pub gamma_s: f64,
    pub v_cm: f64,
    pub c_c: f64,
    pub c_cm: f64,
}

fn cooperativity_of(g: f64, gamma_s: f64, kappa: f64) -> Result<f64> {
    let denom = gamma_s * kappa;
    if !(denom > 0.0) {
        return Err(Error::Domain(format!(
            "cooperativity needs positive γ_s·κ, got γ_s = {gamma_s:e}, κ = {kappa:e}"
        )));
    }
    Ok(2.0 * g * g / denom)
}

impl HybridParams {
    pub fn derive(
        metal: &DrudeMetal,
        medium: &Medium,
        cavity: &CavityConfig,
        emitter: &EmitterConfig,
        geometry: &NanoGeometry,
    ) -> Result<Self> {
        let beta = clausius_mossotti(metal.permittivity(cavity.omega_c)?, medium)?;
        let g_c = cavity::bare_coupling(cavity, emitter);
        let kappa_0 = cavity::kappa_0(cavity);
        let kappa_1 = cavity::kappa_1(cavity);
        let gamma_s = cavity::spontaneous_rate(emitter, medium, cavity.emitter_frequency(emitter))?;
        let g_cm = enhanced_coupling(g_c, beta, geometry);
        let kappa_r = scattering_decay(cavity, medium, beta, geometry.r_m);
        let kappa_m = absorption_decay(cavity, metal, beta, geometry.r_m);
        let c_c = cooperativity_of(g_c, gamma_s, kappa_0 + kappa_1)?;
        let c_cm = cooperativity_of(g_cm, gamma_s, kappa_0 + kappa_1 + kappa_r + kappa_m)?;
        Ok(Self {
            omega_c: cavity.omega_c,
            delta_ec: emitter.delta_ec,
            beta,
            g_c,
            g_cm,
            h: mixing_strength(cavity, medium, beta, geometry.r_m),
            kappa_0,
            kappa_1,
            kappa_r,
            kappa_m,
            gamma_s,
            v_cm: hybrid_mode_volume(cavity, medium, beta)?,
            c_c,
            c_cm,
        })
    }

    /// κ₀ + κ₁.
    pub fn kappa_bare(&self) -> f64 {
        self.kappa_0 + self.kappa_1
    }

    /// κ_R + κ_m.
    pub fn kappa_mnp(&self) -> f64 {
        self.kappa_r + self.kappa_m
    }

    /// κ₀ + κ₁ + κ_R + κ_m.
    pub fn kappa_total(&self) -> f64 {
        self.kappa_bare() + self.kappa_mnp()
    }

    /// 2G²/(γ_s κ), with or without the nanoparticle.
    pub fn cooperativity(&self, include_mnp: bool) -> Result<f64> {
        if include_mnp {
            cooperativity_of(self.g_cm, self.gamma_s, self.kappa_total())
        } else {
            cooperativity_of(self.g_c, self.gamma_s, self.kappa_bare())
        }
    }

    /// Near-resonance limit C^I where nanoparticle losses dominate.
    pub fn cooperativity_near_resonance(&self) -> Result<f64> {
        cooperativity_of(self.g_cm, self.gamma_s, self.kappa_mnp())
    }

    /// Off-resonance limit C^II where cavity losses dominate.
    pub fn cooperativity_off_resonance(&self) -> Result<f64> {
        cooperativity_of(self.g_cm, self.gamma_s, self.kappa_bare())
    }

    /// C_c,m / C_c.
    pub fn enhancement(&self) -> f64 {
        self.c_cm / self.c_c
    }
}
