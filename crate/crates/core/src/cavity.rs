//! Bare whispering-gallery cavity and emitter rates.

use serde::{Deserialize, Serialize};

use crate::constants::{EPSILON_0, HBAR, SPEED_OF_LIGHT};
use crate::materials::Medium;
use crate::{Error, Result};

/// Whispering-gallery cavity mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    /// Resonance ω_c in rad/s.
    pub omega_c: f64,
    /// Relative permittivity of the resonator material.
    pub eps_c: f64,
    /// Mode volume V_c in m³.
    pub mode_volume: f64,
    /// Normalized field amplitude f_c(R₀) at the nanoparticle site.
    pub field_fraction: f64,
    /// Intrinsic quality factor Q₀.
    pub q0: f64,
    /// Taper loading κ₁/κ₀.
    pub kappa1_ratio: f64,
    /// Toroid major radius (m). Descriptive only.
    pub major_radius: Option<f64>,
    /// Toroid minor radius (m). Descriptive only.
    pub minor_radius: Option<f64>,
}

/// Two-level dipole emitter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterConfig {
    /// Transition dipole moment µ in C·m.
    pub mu: f64,
    /// Emitter–cavity detuning Δ_ec = ω_e − ω_c in rad/s.
    pub delta_ec: f64,
}

impl Default for EmitterConfig {
    /// CdSe quantum dot on resonance with the cavity.
    fn default() -> Self {
        Self {
            mu: 2.4e-28,
            delta_ec: 0.0,
        }
    }
}

impl CavityConfig {
    /// Silica microtoroid (30 µm / 3 µm radii) at resonance `omega_c`.
    pub fn silica_toroid(omega_c: f64) -> Self {
        Self {
            omega_c,
            eps_c: 1.45 * 1.45,
            mode_volume: 200e-18,
            field_fraction: 0.3,
            q0: 1e7,
            kappa1_ratio: 5.0,
            major_radius: Some(30e-6),
            minor_radius: Some(3e-6),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("cavity.omega_c", self.omega_c),
            ("cavity.eps_c", self.eps_c),
            ("cavity.V_c", self.mode_volume),
            ("cavity.f_c0", self.field_fraction),
            ("cavity.kappa1_ratio", self.kappa1_ratio),
        ];
        for (field, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::validation(
                    field,
                    format!("must be positive, got {value}"),
                ));
            }
        }
        if self.field_fraction > 1.0 {
            return Err(Error::validation(
                "cavity.f_c0",
                format!(
                    "normalized field must not exceed 1, got {}",
                    self.field_fraction
                ),
            ));
        }
        if !(self.q0.is_finite() && self.q0 >= 1.0) {
            return Err(Error::validation(
                "cavity.Q0",
                format!("must be >= 1, got {}", self.q0),
            ));
        }
        for (field, value) in [
            ("cavity.major_radius", self.major_radius),
            ("cavity.minor_radius", self.minor_radius),
        ] {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::validation(
                        field,
                        format!("must be positive, got {v}"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Emitter transition frequency ω_e = ω_c + Δ_ec.
    pub fn emitter_frequency(&self, emitter: &EmitterConfig) -> f64 {
        self.omega_c + emitter.delta_ec
    }
}

impl EmitterConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.mu.is_finite() && self.mu > 0.0) {
            return Err(Error::validation(
                "emitter.mu",
                format!("must be positive, got {}", self.mu),
            ));
        }
        if !self.delta_ec.is_finite() {
            return Err(Error::validation("emitter.delta_ec", "must be finite"));
        }
        Ok(())
    }
}

/// Intrinsic energy decay κ₀ = ω_c/Q₀.
pub fn kappa_0(cavity: &CavityConfig) -> f64 {
    cavity.omega_c / cavity.q0
}

/// Taper coupling rate κ₁.
pub fn kappa_1(cavity: &CavityConfig) -> f64 {
    cavity.kappa1_ratio * kappa_0(cavity)
}

/// Bare single-photon coupling G_c = µ f_c(R₀) sqrt(ω_c/(2ħε₀ε_c V_c)).
pub fn bare_coupling(cavity: &CavityConfig, emitter: &EmitterConfig) -> f64 {
    emitter.mu
        * cavity.field_fraction
        * (cavity.omega_c / (2.0 * HBAR * EPSILON_0 * cavity.eps_c * cavity.mode_volume)).sqrt()
}

/// Free-space spontaneous emission into the surrounding medium,
/// γ_s = ε_b^{1/2} µ² ω_e³ / (3π ε₀ ħ c³).
pub fn spontaneous_rate(emitter: &EmitterConfig, medium: &Medium, omega_e: f64) -> Result<f64> {
    if !(omega_e.is_finite() && omega_e > 0.0) {
        return Err(Error::Domain(format!(
            "emitter frequency must be positive, got {omega_e}"
        )));
    }
    Ok(medium.eps_b.sqrt() * emitter.mu.powi(2) * omega_e.powi(3)
        / (3.0 * std::f64::consts::PI * EPSILON_0 * HBAR * SPEED_OF_LIGHT.powi(3)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::TWO_PI;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const OMEGA_SP: f64 = 3.451_086_785_347_479e15;

    #[test]
    fn kappa_0_definition() {
        let cavity = CavityConfig::silica_toroid(OMEGA_SP);
        assert!((kappa_0(&cavity) / TWO_PI / 1e6 - 55.0).abs() < 0.5);
        assert_eq!(kappa_0(&cavity) * cavity.q0, cavity.omega_c);

        let unit = CavityConfig {
            q0: 3e14 * TWO_PI,
            ..CavityConfig::silica_toroid(TWO_PI * 3e14)
        };
        assert_relative_eq!(kappa_0(&unit), 1.0, max_relative = 1e-15);

        let doubled = CavityConfig { q0: 2e7, ..cavity };
        assert_relative_eq!(
            kappa_0(&doubled),
            kappa_0(&cavity) / 2.0,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            kappa_1(&cavity),
            5.0 * kappa_0(&cavity),
            max_relative = 1e-15
        );
    }

    #[test]
    fn bare_coupling_default() {
        let g = bare_coupling(
            &CavityConfig::silica_toroid(OMEGA_SP),
            &EmitterConfig::default(),
        );
        assert!(
            (g / TWO_PI / 1e6 / 760.0 - 1.0).abs() < 0.05,
            "{}",
            g / TWO_PI
        );
    }

    #[test]
    fn bare_coupling_scalings() {
        let cavity = CavityConfig::silica_toroid(OMEGA_SP);
        let emitter = EmitterConfig::default();
        let g = bare_coupling(&cavity, &emitter);
        let node = CavityConfig {
            field_fraction: 0.0,
            ..cavity
        };
        assert_eq!(bare_coupling(&node, &emitter), 0.0);
        let big = CavityConfig {
            mode_volume: 4.0 * cavity.mode_volume,
            ..cavity
        };
        assert_relative_eq!(bare_coupling(&big, &emitter), g / 2.0, max_relative = 1e-14);
    }

    #[test]
    fn spontaneous_rate_default() {
        let gs = spontaneous_rate(&EmitterConfig::default(), &Medium::default(), OMEGA_SP).unwrap();
        assert!((gs / TWO_PI / 1.6e9 - 1.0).abs() < 0.03, "{}", gs / TWO_PI);
    }

    #[test]
    fn spontaneous_rate_scalings() {
        let medium = Medium::default();
        let emitter = EmitterConfig::default();
        let gs = spontaneous_rate(&emitter, &medium, 3e15).unwrap();
        let gs2 = spontaneous_rate(&emitter, &medium, 6e15).unwrap();
        assert_relative_eq!(gs2, 8.0 * gs, max_relative = 1e-14);
        let dark = EmitterConfig { mu: 0.0, ..emitter };
        assert_eq!(spontaneous_rate(&dark, &medium, 3e15).unwrap(), 0.0);
        assert!(spontaneous_rate(&emitter, &medium, 0.0).is_err());
    }

    #[test]
    fn validation_names_fields() {
        let mut cavity = CavityConfig::silica_toroid(OMEGA_SP);
        cavity.field_fraction = 1.5;
        match cavity.validate() {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "cavity.f_c0"),
            other => panic!("{other:?}"),
        }
        cavity.field_fraction = 0.3;
        cavity.q0 = 0.5;
        assert!(cavity.validate().is_err());
        assert!(EmitterConfig {
            mu: -1.0,
            delta_ec: 0.0
        }
        .validate()
        .is_err());
    }

    proptest! {
        #[test]
        fn coupling_is_linear_in_dipole_and_field(
            mu_scale in 0.01f64..100.0,
            f in 0.01f64..1.0,
        ) {
            let cavity = CavityConfig::silica_toroid(OMEGA_SP);
            let emitter = EmitterConfig::default();
            let base = bare_coupling(&cavity, &emitter);
            let scaled = bare_coupling(
                &CavityConfig { field_fraction: f, ..cavity },
                &EmitterConfig { mu: emitter.mu * mu_scale, ..emitter },
            );
            let expected = base * mu_scale * f / cavity.field_fraction;
            prop_assert!((scaled / expected - 1.0).abs() < 1e-12);
        }
    }
}
