//! Cooperativity maps over sphere radius, gap and cavity–plasmon detuning.
//!
//! Detuning sweeps move the cavity resonance ω_c = ω_sp + Δ_sp across the
//! fixed plasmon band. Every ω_c-dependent quantity (β, G_c, κ₀, κ₁, h, κ_R,
//! κ_m, γ_s) is re-evaluated at each point, so the bare cooperativity drifts
//! slightly along the axis and the enhancement is always taken at equal ω_c.

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{SystemConfig, MAX_RADIUS, MIN_GAP};
use crate::optimize::scan_then_refine;
use crate::{Error, Result};

/// Inclusive linear range with `steps` samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRange {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl SweepRange {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        let range = Self { min, max, steps };
        range.validate("range")?;
        Ok(range)
    }

    fn validate(&self, field: &str) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::validation(field, "needs at least 2 steps"));
        }
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::validation(
                field,
                format!("needs min < max, got [{}, {}]", self.min, self.max),
            ));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    self.max
                } else {
                    self.min + (self.max - self.min) * i as f64 / (n - 1) as f64
                }
            })
            .collect()
    }
}

/// Sweep axes. Radii and gaps in m, detuning in units of γ_m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub r_m: SweepRange,
    pub d: SweepRange,
    pub delta_sp: SweepRange,
    pub base: SystemConfig,
}

impl SweepSpec {
    /// Axes of the radius–gap contour and of the detuning scans.
    pub fn standard(base: SystemConfig) -> Self {
        Self {
            r_m: SweepRange {
                min: 1e-9,
                max: 30e-9,
                steps: 59,
            },
            d: SweepRange {
                min: 1e-9,
                max: 20e-9,
                steps: 39,
            },
            delta_sp: SweepRange {
                min: -6.0,
                max: 4.0,
                steps: 201,
            },
            base,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.r_m.validate("sweep.r_m")?;
        self.d.validate("sweep.d")?;
        self.delta_sp.validate("sweep.delta_sp")?;
        if self.r_m.min <= 0.0 || self.r_m.max > MAX_RADIUS {
            return Err(Error::validation(
                "sweep.r_m",
                "radii must lie in (0, 50 nm] for the quasi-static model",
            ));
        }
        if self.d.min < MIN_GAP {
            return Err(Error::validation("sweep.d", "gaps must be at least 1 nm"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Argmax {
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Enhancement values on a grid, row-major over `axes` (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    pub values: Vec<f64>,
    pub argmax: Argmax,
}

impl SweepResult {
    fn from_grid(axes: Vec<Axis>, values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::Numerical(format!(
                "non-positive or non-finite enhancement {bad}"
            )));
        }
        let best = values
            .iter()
            .enumerate()
            .fold(0, |b, (i, v)| if *v > values[b] { i } else { b });
        let mut coords = Vec::with_capacity(axes.len());
        let mut rest = best;
        for axis in axes.iter().rev() {
            coords.push(axis.values[rest % axis.values.len()]);
            rest /= axis.values.len();
        }
        coords.reverse();
        let value = values[best];
        Ok(Self {
            axes,
            values,
            argmax: Argmax { coords, value },
        })
    }
}

/// C_c,m / C_c for one scenario.
pub fn enhancement(config: &SystemConfig) -> Result<f64> {
    Ok(config.derive()?.enhancement())
}

/// Enhancement map over radius (rows) and gap (columns) at the base detuning.
pub fn sweep_rm_d(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let radii = spec.r_m.values();
    let gaps = spec.d.values();
    let values = radii
        .iter()
        .flat_map(|&r| gaps.iter().map(move |&d| (r, d)))
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(r, d)| enhancement(&spec.base.with_geometry(r, d)?))
        .collect::<Result<Vec<_>>>()?;
    SweepResult::from_grid(
        vec![
            Axis {
                name: "r_m".into(),
                values: radii,
            },
            Axis {
                name: "d".into(),
                values: gaps,
            },
        ],
        values,
    )
}

fn detuned(base: &SystemConfig, r_m: f64, delta_in_gamma: f64) -> Result<SystemConfig> {
    base.with_geometry(r_m, base.geometry.d)?
        .with_delta_sp(delta_in_gamma * base.metal.gamma_m)
}

/// One enhancement curve against Δ_sp/γ_m per radius in `radii`.
pub fn sweep_detuning(spec: &SweepSpec, radii: &[f64]) -> Result<Vec<SweepResult>> {
    spec.delta_sp.validate("sweep.delta_sp")?;
    let detunings = spec.delta_sp.values();
    radii
        .iter()
        .map(|&r| {
            let values = detunings
                .par_iter()
                .map(|&x| enhancement(&detuned(&spec.base, r, x)?))
                .collect::<Result<Vec<_>>>()?;
            SweepResult::from_grid(
                vec![Axis {
                    name: "delta_sp_over_gamma_m".into(),
                    values: detunings.clone(),
                }],
                values,
            )
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetuningOptimum {
    pub r_m: f64,
    /// Optimal Δ_sp in rad/s.
    pub delta_sp: f64,
    pub delta_sp_over_gamma_m: f64,
    pub enhancement: f64,
}

/// Search window for the detuning optimum, in units of γ_m.
pub const DETUNING_WINDOW: (f64, f64) = (-6.0, 4.0);

/// Best Δ_sp in [−6γ_m, 4γ_m] for radius `r_m`: a 201-point scan followed by
/// golden-section refinement to 1e-4 relative precision on Δ_sp.
pub fn optimize_detuning(config: &SystemConfig, r_m: f64) -> Result<DetuningOptimum> {
    let (lo, hi) = DETUNING_WINDOW;
    // Validate once so the closure below can treat failures as -inf.
    detuned(config, r_m, lo)?;
    detuned(config, r_m, hi)?;
    let objective = |x: f64| {
        detuned(config, r_m, x)
            .and_then(|c| enhancement(&c))
            .unwrap_or(f64::NEG_INFINITY)
    };
    let coarse = 201;
    let step = (hi - lo) / (coarse - 1) as f64;
    let first = scan_then_refine(objective, lo, hi, coarse, 1e-6 * step);
    // Relative tolerance 1e-4 on Δ_sp, absolute floor for optima near zero.
    let tol = (1e-4 * first.x.abs()).max(1e-7);
    let best = scan_then_refine(objective, first.x - step, first.x + step, 21, tol);
    let best = if best.value >= first.value {
        best
    } else {
        first
    };
    if !best.value.is_finite() {
        return Err(Error::Numerical("detuning objective was not finite".into()));
    }
    Ok(DetuningOptimum {
        r_m,
        delta_sp: best.x * config.metal.gamma_m,
        delta_sp_over_gamma_m: best.x,
        enhancement: best.value,
    })
}

/// C_c,m with its near-resonance (C^I) and off-resonance (C^II) limits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegimeCurves {
    pub r_m: f64,
    pub delta_sp_over_gamma_m: Vec<f64>,
    pub c_cm: Vec<f64>,
    pub c_near: Vec<f64>,
    pub c_far: Vec<f64>,
}

pub fn regime_curves(config: &SystemConfig, r_m: f64, range: &SweepRange) -> Result<RegimeCurves> {
    range.validate("sweep.delta_sp")?;
    let xs = range.values();
    let rows = xs
        .par_iter()
        .map(|&x| {
            let p = detuned(config, r_m, x)?.derive()?;
            Ok((
                p.cooperativity(true)?,
                p.cooperativity_near_resonance()?,
                p.cooperativity_off_resonance()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegimeCurves {
        r_m,
        delta_sp_over_gamma_m: xs,
        c_cm: rows.iter().map(|r| r.0).collect(),
        c_near: rows.iter().map(|r| r.1).collect(),
        c_far: rows.iter().map(|r| r.2).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SystemConfig {
        SystemConfig::default()
    }

    /// Dense brute-force maximum of the enhancement over the window.
    fn brute_force_optimum(r_m: f64, points: usize) -> (f64, f64) {
        let (lo, hi) = DETUNING_WINDOW;
        (0..points)
            .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
            .map(|x| (x, enhancement(&detuned(&base(), r_m, x).unwrap()).unwrap()))
            .fold(
                (0.0, f64::NEG_INFINITY),
                |b, p| if p.1 > b.1 { p } else { b },
            )
    }

    #[test]
    fn range_values_hit_endpoints() {
        let r = SweepRange::new(-6.0, 4.0, 11).unwrap().values();
        assert_eq!(r.len(), 11);
        assert_eq!(r[0], -6.0);
        assert_eq!(r[10], 4.0);
        assert_eq!(r[6], 0.0);
        assert!(SweepRange::new(1.0, 1.0, 5).is_err());
        assert!(SweepRange::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn reference_point_exceeds_hundredfold() {
        let spec = SweepSpec {
            r_m: SweepRange::new(11e-9, 13e-9, 3).unwrap(),
            d: SweepRange::new(2e-9, 4e-9, 3).unwrap(),
            ..SweepSpec::standard(base())
        };
        let result = sweep_rm_d(&spec).unwrap();
        assert_eq!(result.values.len(), 9);
        assert!(result.values[4] > 100.0, "{}", result.values[4]);
        assert_eq!(
            result.argmax.value,
            result.values.iter().cloned().fold(0.0, f64::max)
        );
    }

    #[test]
    fn far_particle_only_costs_loss() {
        let cfg = base().with_geometry(12e-9, 50e-9).unwrap();
        let e = enhancement(&cfg).unwrap();
        let p = cfg.derive().unwrap();
        let oracle = (p.g_cm / p.g_c).powi(2) * p.kappa_bare() / p.kappa_total();
        assert!((e / oracle - 1.0).abs() < 1e-12);
        assert!(e < 1.1);
    }

    #[test]
    fn vanishing_particle_is_neutral() {
        let e = enhancement(&base().with_geometry(1e-9, 20e-9).unwrap()).unwrap();
        assert!((e - 1.0).abs() < 0.01, "{e}");
    }

    #[test]
    fn invalid_sweeps_rejected() {
        let mut spec = SweepSpec::standard(base());
        spec.r_m.max = 80e-9;
        assert!(sweep_rm_d(&spec).is_err());
        let mut spec = SweepSpec::standard(base());
        spec.d.min = 0.5e-9;
        assert!(sweep_rm_d(&spec).is_err());
        let mut spec = SweepSpec::standard(base());
        spec.delta_sp = SweepRange {
            min: -20.0,
            max: 0.0,
            steps: 5,
        };
        assert!(matches!(
            sweep_detuning(&spec, &[12e-9]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn optimum_off_resonance_for_large_radius() {
        let opt = optimize_detuning(&base(), 20e-9).unwrap();
        let (x, v) = brute_force_optimum(20e-9, 20_001);
        assert!(opt.delta_sp_over_gamma_m.abs() > 0.5);
        assert!(
            (opt.delta_sp_over_gamma_m - x).abs() < 1e-3,
            "{opt:?} vs {x}"
        );
        assert!(opt.enhancement >= v - 1e-9 * v);
    }

    #[test]
    fn optimum_near_resonance_for_small_radius() {
        let opt = optimize_detuning(&base(), 5e-9).unwrap();
        let (x, _) = brute_force_optimum(5e-9, 20_001);
        assert!(opt.delta_sp_over_gamma_m.abs() < 1.0);
        assert!((opt.delta_sp_over_gamma_m - x).abs() < 1e-3);
    }

    #[test]
    fn regimes_bracket_the_total() {
        let range = SweepRange::new(-6.0, 4.0, 101).unwrap();
        let curves = regime_curves(&base(), 20e-9, &range).unwrap();
        for i in 0..curves.c_cm.len() {
            let lhs = 1.0 / curves.c_cm[i];
            let rhs = 1.0 / curves.c_near[i] + 1.0 / curves.c_far[i];
            assert!((lhs - rhs).abs() <= 1e-12 * lhs);
        }
        let at_zero = curves
            .delta_sp_over_gamma_m
            .iter()
            .position(|x| *x == 0.0)
            .unwrap();
        let ratio = curves.c_cm[at_zero] / curves.c_near[at_zero];
        assert!((0.5..=1.0).contains(&ratio), "{ratio}");
        let ratio = curves.c_cm[0] / curves.c_far[0];
        assert!((0.5..=1.0).contains(&ratio), "{ratio}");
    }
}
