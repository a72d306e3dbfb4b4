//! Scenario documents, validation, normalization and run reports.
//!
//! A scenario is a TOML document. Every dimensionful value is a string with
//! an explicit unit (see [`crate::units`]); dimensionless values are plain
//! numbers. Missing keys take the default scenario. Example:
//!
//! ```toml
//! schema_version = 1
//! delta_sp = "0 gamma_m"      # cavity–plasmon detuning ω_c − ω_sp
//!
//! [metal]
//! omega_p = "6e15 rad/s"
//! gamma_m = "3e14 rad/s"
//!
//! [medium]
//! eps_b = 1.0
//!
//! [cavity]
//! eps_c = 2.1025
//! V_c = "200 um^3"
//! f_c0 = 0.3
//! Q0 = 1e7
//! kappa1_ratio = 5.0
//! major_radius = "30 um"
//! minor_radius = "3 um"
//! # lambda_c = "550 nm" or omega_c = "3.4e15 rad/s" instead of delta_sp
//!
//! [emitter]
//! mu = "2.4e-28 C*m"
//! delta_ec = "0 GHz"
//!
//! [geometry]
//! r_m = "12 nm"
//! d = "3 nm"
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use toml::{Table, Value};

use crate::cavity::{CavityConfig, EmitterConfig};
use crate::constants::{omega_from_wavelength, wavelength_from_omega, TWO_PI};
use crate::hybrid::{HybridParams, NanoGeometry};
use crate::materials::{DrudeMetal, Medium};
use crate::units::{format_si, parse_quantity, Dimension};
use crate::{Error, Result};

pub const SCHEMA_VERSION: i64 = 1;

/// Largest sphere radius for which the quasi-static response is used.
pub const MAX_RADIUS: f64 = 50e-9;

/// Smallest emitter–surface gap; closer gaps allow charge tunnelling.
pub const MIN_GAP: f64 = 1e-9;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    schema_version: Option<i64>,
    delta_sp: Option<Value>,
    #[serde(default)]
    metal: RawMetal,
    #[serde(default)]
    medium: RawMedium,
    #[serde(default)]
    cavity: RawCavity,
    #[serde(default)]
    emitter: RawEmitter,
    #[serde(default)]
    geometry: RawGeometry,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMetal {
    omega_p: Option<Value>,
    gamma_m: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMedium {
    eps_b: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCavity {
    lambda_c: Option<Value>,
    omega_c: Option<Value>,
    eps_c: Option<Value>,
    #[serde(rename = "V_c")]
    v_c: Option<Value>,
    f_c0: Option<Value>,
    #[serde(rename = "Q0")]
    q0: Option<Value>,
    kappa1_ratio: Option<Value>,
    major_radius: Option<Value>,
    minor_radius: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEmitter {
    mu: Option<Value>,
    delta_ec: Option<Value>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGeometry {
    r_m: Option<Value>,
    d: Option<Value>,
}

fn quantity(
    field: &str,
    value: Option<&Value>,
    dim: Dimension,
    rate_unit: Option<(&str, f64)>,
) -> Result<Option<f64>> {
    let Some(value) = value else { return Ok(None) };
    let parsed = match value {
        Value::String(s) => parse_quantity(s, dim, rate_unit),
        Value::Float(f) if dim == Dimension::Dimensionless => Ok(*f),
        Value::Integer(i) if dim == Dimension::Dimensionless => Ok(*i as f64),
        Value::Float(_) | Value::Integer(_) => Err(format!(
            "`{value}` needs an explicit unit, write it as a string such as \"{value} {}\"",
            match dim {
                Dimension::Length => "nm",
                Dimension::Volume => "um^3",
                Dimension::Rate => "rad/s",
                _ => "C*m",
            }
        )),
        other => Err(format!(
            "expected a number or unit-tagged string, got {}",
            other.type_str()
        )),
    };
    parsed
        .map(Some)
        .map_err(|message| Error::validation(field, message))
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

/// A parsed but not yet validated scenario document. Overrides are applied
/// here, before any defaulting or validation.
#[derive(Debug, Clone, Default)]
pub struct ConfigDocument {
    table: Table,
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let table: Table = toml::from_str(text).map_err(|e| Error::Parse {
            line: e.span().map(|s| line_of(text, s.start)),
            message: e.message().to_string(),
        })?;
        Ok(Self { table })
    }

    /// Applies a dotted-path override such as `geometry.r_m=20nm`. Values that
    /// parse as plain numbers are stored as numbers, everything else as text.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let path: Vec<&str> = key.trim().split('.').collect();
        if path.iter().any(|p| p.is_empty()) {
            return Err(Error::validation(key, "malformed override key"));
        }
        let value = value.trim();
        let value = match value.parse::<f64>() {
            Ok(f) if !value.is_empty() => Value::Float(f),
            _ => Value::String(value.to_string()),
        };
        let (last, parents) = path.split_last().expect("non-empty path");
        let mut table = &mut self.table;
        for part in parents {
            let entry = table
                .entry(part.to_string())
                .or_insert_with(|| Value::Table(Table::new()));
            table = entry
                .as_table_mut()
                .ok_or_else(|| Error::validation(key, format!("`{part}` is not a section")))?;
        }
        table.insert(last.to_string(), value);
        Ok(())
    }

    /// Parses `key=value`.
    pub fn apply_override(&mut self, assignment: &str) -> Result<()> {
        let (key, value) = assignment.split_once('=').ok_or_else(|| {
            Error::validation(assignment, "override must have the form section.key=value")
        })?;
        self.set(key, value)
    }

    pub fn build(&self) -> Result<SystemConfig> {
        let raw: RawDocument =
            Value::Table(self.table.clone())
                .try_into()
                .map_err(|e: toml::de::Error| Error::Parse {
                    line: None,
                    message: e.message().to_string(),
                })?;
        SystemConfig::from_raw(raw)
    }
}

/// A complete, validated scenario. The cavity resonance is always
/// `lspr + delta_sp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub metal: DrudeMetal,
    pub medium: Medium,
    pub cavity: CavityConfig,
    pub emitter: EmitterConfig,
    pub geometry: NanoGeometry,
    /// Cavity–plasmon detuning Δ_sp = ω_c − ω_sp in rad/s.
    pub delta_sp: f64,
}

impl Default for SystemConfig {
    fn default() -> Self {
        let metal = DrudeMetal::default();
        let medium = Medium::default();
        let omega_sp = metal
            .lspr_frequency(&medium)
            .expect("default metal has a resonance");
        Self {
            metal,
            medium,
            cavity: CavityConfig::silica_toroid(omega_sp),
            emitter: EmitterConfig::default(),
            geometry: NanoGeometry::default(),
            delta_sp: 0.0,
        }
    }
}

impl SystemConfig {
    fn from_raw(raw: RawDocument) -> Result<Self> {
        if let Some(v) = raw.schema_version {
            if v != SCHEMA_VERSION {
                return Err(Error::validation(
                    "schema_version",
                    format!("unsupported version {v}, expected {SCHEMA_VERSION}"),
                ));
            }
        }
        let mut cfg = SystemConfig::default();
        use Dimension::*;

        if let Some(v) = quantity("metal.omega_p", raw.metal.omega_p.as_ref(), Rate, None)? {
            cfg.metal.omega_p = v;
        }
        if let Some(v) = quantity("metal.gamma_m", raw.metal.gamma_m.as_ref(), Rate, None)? {
            cfg.metal.gamma_m = v;
        }
        cfg.metal.validate()?;
        if let Some(v) = quantity(
            "medium.eps_b",
            raw.medium.eps_b.as_ref(),
            Dimensionless,
            None,
        )? {
            cfg.medium.eps_b = v;
        }
        cfg.medium.validate()?;

        let c = &raw.cavity;
        let cav = &mut cfg.cavity;
        if let Some(v) = quantity("cavity.eps_c", c.eps_c.as_ref(), Dimensionless, None)? {
            cav.eps_c = v;
        }
        if let Some(v) = quantity("cavity.V_c", c.v_c.as_ref(), Volume, None)? {
            cav.mode_volume = v;
        }
        if let Some(v) = quantity("cavity.f_c0", c.f_c0.as_ref(), Dimensionless, None)? {
            cav.field_fraction = v;
        }
        if let Some(v) = quantity("cavity.Q0", c.q0.as_ref(), Dimensionless, None)? {
            cav.q0 = v;
        }
        if let Some(v) = quantity(
            "cavity.kappa1_ratio",
            c.kappa1_ratio.as_ref(),
            Dimensionless,
            None,
        )? {
            cav.kappa1_ratio = v;
        }
        if let Some(v) = quantity("cavity.major_radius", c.major_radius.as_ref(), Length, None)? {
            cav.major_radius = Some(v);
        }
        if let Some(v) = quantity("cavity.minor_radius", c.minor_radius.as_ref(), Length, None)? {
            cav.minor_radius = Some(v);
        }

        let e = &raw.emitter;
        if let Some(v) = quantity("emitter.mu", e.mu.as_ref(), DipoleMoment, None)? {
            cfg.emitter.mu = v;
        }
        if let Some(v) = quantity("emitter.delta_ec", e.delta_ec.as_ref(), Rate, None)? {
            cfg.emitter.delta_ec = v;
        }
        let g = &raw.geometry;
        if let Some(v) = quantity("geometry.r_m", g.r_m.as_ref(), Length, None)? {
            cfg.geometry.r_m = v;
        }
        if let Some(v) = quantity("geometry.d", g.d.as_ref(), Length, None)? {
            cfg.geometry.d = v;
        }

        let omega_sp = cfg.metal.lspr_frequency(&cfg.medium)?;
        let gamma_unit = Some(("gamma_m", cfg.metal.gamma_m));
        let detuning = quantity("delta_sp", raw.delta_sp.as_ref(), Rate, gamma_unit)?;
        let lambda = quantity("cavity.lambda_c", c.lambda_c.as_ref(), Length, None)?;
        let omega = quantity("cavity.omega_c", c.omega_c.as_ref(), Rate, None)?;
        let explicit_omega = match (lambda, omega) {
            (Some(_), Some(_)) => {
                return Err(Error::validation(
                    "cavity.omega_c",
                    "give either cavity.lambda_c or cavity.omega_c, not both",
                ))
            }
            (Some(l), None) => {
                if !(l > 0.0) {
                    return Err(Error::validation("cavity.lambda_c", "must be positive"));
                }
                Some(omega_from_wavelength(l))
            }
            (None, w) => w,
        };
        cfg.delta_sp = match (explicit_omega, detuning) {
            (Some(_), Some(_)) => {
                return Err(Error::validation(
                    "delta_sp",
                    "the cavity resonance is fixed by cavity.lambda_c/omega_c; drop delta_sp",
                ))
            }
            (Some(w), None) => w - omega_sp,
            (None, d) => d.unwrap_or(0.0),
        };
        cfg.cavity.omega_c = omega_sp + cfg.delta_sp;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.metal.validate()?;
        self.medium.validate()?;
        self.emitter.validate()?;
        self.geometry.validate()?;
        if self.geometry.r_m > MAX_RADIUS {
            return Err(Error::validation(
                "geometry.r_m",
                format!(
                    "{:.4} nm exceeds the 50 nm quasi-static bound (radius must stay far below the wavelength)",
                    self.geometry.r_m * 1e9
                ),
            ));
        }
        if self.geometry.d < MIN_GAP {
            return Err(Error::validation(
                "geometry.d",
                format!(
                    "{:.4} nm is below the 1 nm tunnelling bound on the emitter gap",
                    self.geometry.d * 1e9
                ),
            ));
        }
        if !self.delta_sp.is_finite() {
            return Err(Error::validation("delta_sp", "must be finite"));
        }
        if !(self.cavity.omega_c > 0.0) {
            return Err(Error::Domain(format!(
                "cavity frequency ω_sp + Δ_sp = {:e} rad/s is not positive",
                self.cavity.omega_c
            )));
        }
        self.cavity.validate()?;
        if !(self.cavity.emitter_frequency(&self.emitter) > 0.0) {
            return Err(Error::validation(
                "emitter.delta_ec",
                "emitter frequency ω_c + Δ_ec must be positive",
            ));
        }
        Ok(())
    }

    pub fn lspr_frequency(&self) -> Result<f64> {
        self.metal.lspr_frequency(&self.medium)
    }

    /// Same scenario with the cavity moved to ω_sp + `delta_sp`.
    pub fn with_delta_sp(&self, delta_sp: f64) -> Result<Self> {
        let mut next = *self;
        next.delta_sp = delta_sp;
        next.cavity.omega_c = self.lspr_frequency()? + delta_sp;
        next.validate()?;
        Ok(next)
    }

    pub fn with_geometry(&self, r_m: f64, d: f64) -> Result<Self> {
        let mut next = *self;
        next.geometry = NanoGeometry { r_m, d };
        next.validate()?;
        Ok(next)
    }

    pub fn derive(&self) -> Result<HybridParams> {
        HybridParams::derive(
            &self.metal,
            &self.medium,
            &self.cavity,
            &self.emitter,
            &self.geometry,
        )
    }

    /// Canonical SI rendering of the scenario. Loading this text yields a
    /// bit-identical configuration.
    pub fn to_normalized_toml(&self) -> String {
        use Dimension::*;
        let q = |v: f64, d: Dimension| format!("\"{}\"", format_si(v, d));
        let n = |v: f64| format_si(v, Dimensionless);
        let mut out = String::new();
        out.push_str(&format!("schema_version = {SCHEMA_VERSION}\n"));
        out.push_str(&format!("delta_sp = {}\n", q(self.delta_sp, Rate)));
        out.push_str("\n[metal]\n");
        out.push_str(&format!("omega_p = {}\n", q(self.metal.omega_p, Rate)));
        out.push_str(&format!("gamma_m = {}\n", q(self.metal.gamma_m, Rate)));
        out.push_str("\n[medium]\n");
        out.push_str(&format!("eps_b = {}\n", n(self.medium.eps_b)));
        out.push_str("\n[cavity]\n");
        out.push_str(&format!("eps_c = {}\n", n(self.cavity.eps_c)));
        out.push_str(&format!("V_c = {}\n", q(self.cavity.mode_volume, Volume)));
        out.push_str(&format!("f_c0 = {}\n", n(self.cavity.field_fraction)));
        out.push_str(&format!("Q0 = {}\n", n(self.cavity.q0)));
        out.push_str(&format!("kappa1_ratio = {}\n", n(self.cavity.kappa1_ratio)));
        if let Some(r) = self.cavity.major_radius {
            out.push_str(&format!("major_radius = {}\n", q(r, Length)));
        }
        if let Some(r) = self.cavity.minor_radius {
            out.push_str(&format!("minor_radius = {}\n", q(r, Length)));
        }
        out.push_str("\n[emitter]\n");
        out.push_str(&format!("mu = {}\n", q(self.emitter.mu, DipoleMoment)));
        out.push_str(&format!("delta_ec = {}\n", q(self.emitter.delta_ec, Rate)));
        out.push_str("\n[geometry]\n");
        out.push_str(&format!("r_m = {}\n", q(self.geometry.r_m, Length)));
        out.push_str(&format!("d = {}\n", q(self.geometry.d, Length)));
        out
    }

    /// `sha256:<hex>` of the normalized document.
    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.to_normalized_toml().as_bytes());
        let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }
}

/// Parses, defaults and validates a scenario document.
pub fn load_config(text: &str) -> Result<SystemConfig> {
    ConfigDocument::parse(text)?.build()
}

/// Full rate set for a scenario.
pub fn derive_all(config: &SystemConfig) -> Result<HybridParams> {
    config.derive()
}

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub input_digest: String,
    /// Only filled when explicitly requested, so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<String>,
}

impl Provenance {
    pub fn for_config(config: &SystemConfig) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: config.digest(),
            generated_at: None,
        }
    }
}

/// Rates divided by 2π, in MHz.
#[derive(Debug, Clone, Serialize)]
pub struct RatesMhz {
    pub g_c: f64,
    pub g_cm: f64,
    pub h: f64,
    pub kappa_0: f64,
    pub kappa_1: f64,
    pub kappa_r: f64,
    pub kappa_m: f64,
    pub gamma_s: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DerivedSummary {
    pub lspr_wavelength_nm: f64,
    pub cavity_wavelength_nm: f64,
    pub delta_sp_over_gamma_m: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub beta_abs: f64,
    pub rates_over_2pi_mhz: RatesMhz,
    pub v_cm_um3: f64,
    pub cooperativity_bare: f64,
    pub cooperativity_hybrid: f64,
    pub cooperativity_near_resonance: f64,
    pub cooperativity_off_resonance: f64,
    pub enhancement: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub provenance: Provenance,
    pub config: SystemConfig,
    pub summary: DerivedSummary,
    pub params: HybridParams,
}

impl RunReport {
    pub fn new(config: &SystemConfig) -> Result<Self> {
        let params = config.derive()?;
        let mhz = |r: f64| r / TWO_PI / 1e6;
        let summary = DerivedSummary {
            lspr_wavelength_nm: wavelength_from_omega(config.lspr_frequency()?) * 1e9,
            cavity_wavelength_nm: wavelength_from_omega(config.cavity.omega_c) * 1e9,
            delta_sp_over_gamma_m: config.delta_sp / config.metal.gamma_m,
            beta_re: params.beta.re,
            beta_im: params.beta.im,
            beta_abs: params.beta.norm(),
            rates_over_2pi_mhz: RatesMhz {
                g_c: mhz(params.g_c),
                g_cm: mhz(params.g_cm),
                h: mhz(params.h),
                kappa_0: mhz(params.kappa_0),
                kappa_1: mhz(params.kappa_1),
                kappa_r: mhz(params.kappa_r),
                kappa_m: mhz(params.kappa_m),
                gamma_s: mhz(params.gamma_s),
            },
            v_cm_um3: params.v_cm * 1e18,
            cooperativity_bare: params.c_c,
            cooperativity_hybrid: params.c_cm,
            cooperativity_near_resonance: params.cooperativity_near_resonance()?,
            cooperativity_off_resonance: params.cooperativity_off_resonance()?,
            enhancement: params.enhancement(),
        };
        Ok(Self {
            provenance: Provenance::for_config(config),
            config: *config,
            summary,
            params,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_defaults() {
        let cfg = load_config("").unwrap();
        assert_eq!(cfg, SystemConfig::default());
        assert_eq!(cfg.geometry.r_m, 12e-9);
        assert_eq!(cfg.geometry.d, 3e-9);
        assert_eq!(cfg.delta_sp, 0.0);
    }

    #[test]
    fn radius_bound() {
        let err = load_config("[geometry]\nr_m = \"80 nm\"\n").unwrap_err();
        match err {
            Error::Validation { field, message } => {
                assert_eq!(field, "geometry.r_m");
                assert!(message.contains("quasi-static"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn gap_bound() {
        let err = load_config("[geometry]\nd = \"0.5 nm\"\n").unwrap_err();
        match err {
            Error::Validation { field, message } => {
                assert_eq!(field, "geometry.d");
                assert!(message.contains("tunnelling"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_lines() {
        let err = load_config("[metal]\nomega_p = \n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, Some(2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(load_config("[geometry]\nradius = \"3 nm\"\n").is_err());
        assert!(load_config("colour = 3\n").is_err());
        let mut doc = ConfigDocument::default();
        doc.set("geometry.rm", "3nm").unwrap();
        assert!(doc.build().is_err());
    }

    #[test]
    fn bare_numbers_need_units_for_dimensionful_fields() {
        let err = load_config("[geometry]\nr_m = 12\n").unwrap_err();
        assert!(matches!(err, Error::Validation { ref field, .. } if field == "geometry.r_m"));
    }

    #[test]
    fn overrides_apply_before_validation() {
        let mut doc = ConfigDocument::parse("[geometry]\nr_m = \"80 nm\"\n").unwrap();
        doc.apply_override("geometry.r_m=20nm").unwrap();
        doc.apply_override("cavity.Q0=2e7").unwrap();
        let cfg = doc.build().unwrap();
        assert_eq!(cfg.geometry.r_m, 2e-8);
        assert_eq!(cfg.cavity.q0, 2e7);
        assert!(doc.apply_override("no_equals_sign").is_err());
    }

    #[test]
    fn detuning_in_units_of_gamma() {
        let cfg = load_config("delta_sp = \"-6 gamma_m\"\n").unwrap();
        assert_eq!(cfg.delta_sp, -1.8e15);
        assert_eq!(cfg.cavity.omega_c, cfg.lspr_frequency().unwrap() - 1.8e15);
    }

    #[test]
    fn explicit_wavelength_sets_detuning() {
        let cfg = load_config("[cavity]\nlambda_c = \"600 nm\"\n").unwrap();
        let expected = omega_from_wavelength(600e-9);
        assert!((cfg.cavity.omega_c - expected).abs() <= 2.0 * f64::EPSILON * expected);
        assert!(cfg.delta_sp < 0.0);
        assert!(load_config("delta_sp = \"0 Hz\"\n[cavity]\nlambda_c = \"600 nm\"\n").is_err());
        assert!(
            load_config("[cavity]\nlambda_c = \"600 nm\"\nomega_c = \"3e15 rad/s\"\n").is_err()
        );
    }

    #[test]
    fn non_positive_cavity_frequency_is_a_domain_error() {
        let err = load_config("delta_sp = \"-20 gamma_m\"\n").unwrap_err();
        assert!(matches!(err, Error::Domain(_)), "{err:?}");
    }

    #[test]
    fn schema_version_checked() {
        assert!(load_config("schema_version = 1\n").is_ok());
        assert!(load_config("schema_version = 2\n").is_err());
    }

    #[test]
    fn normalization_is_idempotent() {
        let text = "delta_sp = \"-1.5 gamma_m\"\n[geometry]\nr_m = \"20 nm\"\nd = \"0.004 um\"\n\
                    [cavity]\nV_c = \"150 um^3\"\n[emitter]\ndelta_ec = \"90 GHz\"\n";
        let once = load_config(text).unwrap();
        let normalized = once.to_normalized_toml();
        let twice = load_config(&normalized).unwrap();
        assert_eq!(once, twice);
        assert_eq!(twice.to_normalized_toml(), normalized);
        assert_eq!(once.digest(), twice.digest());
    }

    #[test]
    fn unit_choice_does_not_change_parameters() {
        let a = load_config(
            "[geometry]\nr_m = \"12 nm\"\nd = \"3 nm\"\n[cavity]\nV_c = \"200 um^3\"\n",
        )
        .unwrap();
        let b = load_config(
            "[geometry]\nr_m = \"0.012 um\"\nd = \"3e-9 m\"\n[cavity]\nV_c = \"2e11 nm^3\"\n",
        )
        .unwrap();
        assert_eq!(a, b);
        let (pa, pb) = (a.derive().unwrap(), b.derive().unwrap());
        assert_eq!(format!("{pa:?}"), format!("{pb:?}"));
    }

    #[test]
    fn report_contains_digest_and_rates() {
        let cfg = SystemConfig::default();
        let report = RunReport::new(&cfg).unwrap();
        assert!(report.provenance.input_digest.starts_with("sha256:"));
        assert!((report.summary.rates_over_2pi_mhz.g_cm / 9000.0 - 1.0).abs() < 0.05);
        let json = report.to_json();
        assert!(json.contains("\"input_digest\""));
        assert!(!json.contains("generated_at"));
    }
}
