//! C ABI over the `wgm-plasmon` model.
//!
//! Every fallible entry point returns a [`WgmStatus`] and writes results
//! through out-pointers. On failure a message is kept per thread and can be
//! read with [`wgm_last_error_message`]. Handles are opaque and owned by the
//! caller until passed to their `_free` function. Panics never cross the
//! boundary; they surface as `WGM_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use wgm_plasmon::config::ConfigDocument;
use wgm_plasmon::dynamics::{noon_protocol, optimal_squeezing};
use wgm_plasmon::spectra::{
    sweep_spectrum, symmetric_grid, LinearSystemModel, DEFAULT_SPAN_FACTOR,
};
use wgm_plasmon::sweeps::optimize_detuning;
use wgm_plasmon::{Error, SystemConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WgmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed document, unknown key or a value outside its physical bounds.
    Config = 3,
    /// Arguments outside the domain of the model.
    Domain = 4,
    Numerical = 5,
    OutOfRange = 6,
    Panic = 7,
}

/// Derived rates in rad/s, volumes in m^3.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WgmRates {
    pub omega_c: f64,
    pub beta_re: f64,
    pub beta_im: f64,
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
    pub enhancement: f64,
}

/// A transmission minimum. `width` is NaN when the half-depth crossings fall
/// outside the grid.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WgmDip {
    pub delta: f64,
    pub transmission: f64,
    pub width: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WgmDetuningOptimum {
    pub r_m: f64,
    pub delta_sp: f64,
    pub delta_sp_over_gamma_m: f64,
    pub enhancement: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WgmNoonOutcome {
    pub fidelity: f64,
    pub pulse_phase: f64,
    pub branch_phase: f64,
}

/// A validated scenario plus the document it was built from.
pub struct WgmScenario {
    document: ConfigDocument,
    config: SystemConfig,
}

/// A computed transmission trace.
pub struct WgmSpectrum {
    delta: Vec<f64>,
    transmission: Vec<f64>,
    dips: Vec<WgmDip>,
    coarse_grid: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: WgmStatus,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Validation { .. } | Error::Io { .. } => WgmStatus::Config,
            Error::Domain(_) | Error::NoResonance(_) => WgmStatus::Domain,
            Error::Singular(_) | Error::Numerical(_) | Error::ZeroMeanSpin => WgmStatus::Numerical,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn failure(status: WgmStatus, message: impl Into<String>) -> Failure {
    Failure {
        status,
        message: message.into(),
    }
}

fn set_last_error(message: Option<String>) {
    let c = message.map(|m| CString::new(m.replace('\0', " ")).expect("NULs removed"));
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> WgmStatus {
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|payload| {
        let text = payload
            .downcast_ref::<&str>()
            .map(|s| s.to_string())
            .or_else(|| payload.downcast_ref::<String>().cloned())
            .unwrap_or_else(|| "unknown panic".into());
        Err(failure(WgmStatus::Panic, format!("panic: {text}")))
    });
    match outcome {
        Ok(()) => {
            set_last_error(None);
            WgmStatus::Ok
        }
        Err(Failure { status, message }) => {
            set_last_error(Some(message));
            status
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(failure(WgmStatus::NullPointer, format!("{what} is NULL")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| failure(WgmStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| failure(WgmStatus::NullPointer, format!("{what} is NULL")))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(failure(WgmStatus::NullPointer, format!("{what} is NULL")));
    }
    out.write(value);
    Ok(())
}

fn scenario_from_document(document: ConfigDocument) -> Result<Box<WgmScenario>, Failure> {
    let config = document.build()?;
    Ok(Box::new(WgmScenario { document, config }))
}

/// Creates a scenario with the built-in defaults.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_default(out: *mut *mut WgmScenario) -> WgmStatus {
    guard(|| {
        let s = scenario_from_document(ConfigDocument::parse("")?)?;
        write(out, Box::into_raw(s), "out")
    })
}

/// Parses a TOML scenario document.
///
/// # Safety
/// `toml` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_from_toml(
    toml: *const c_char,
    out: *mut *mut WgmScenario,
) -> WgmStatus {
    guard(|| {
        let s = scenario_from_document(ConfigDocument::parse(text(toml, "toml")?)?)?;
        write(out, Box::into_raw(s), "out")
    })
}

/// Overrides one dotted key, e.g. `("geometry.r_m", "20nm")`. The scenario is
/// left unchanged when the result fails validation.
///
/// # Safety
/// `scenario` must be a live handle; `key` and `value` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_set(
    scenario: *mut WgmScenario,
    key: *const c_char,
    value: *const c_char,
) -> WgmStatus {
    guard(|| {
        let s = scenario
            .as_mut()
            .ok_or_else(|| failure(WgmStatus::NullPointer, "scenario is NULL"))?;
        let mut document = s.document.clone();
        document.set(text(key, "key")?, text(value, "value")?)?;
        let config = document.build()?;
        s.document = document;
        s.config = config;
        Ok(())
    })
}

/// Releases a scenario. NULL is ignored.
///
/// # Safety
/// `scenario` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_free(scenario: *mut WgmScenario) {
    if !scenario.is_null() {
        drop(Box::from_raw(scenario));
    }
}

/// Writes the `sha256:` digest of the normalized scenario into `buf` (NUL
/// terminated). `needed` receives the required size including the NUL.
///
/// # Safety
/// `buf` must hold `cap` bytes (or be NULL with `cap == 0`); `needed` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_digest(
    scenario: *const WgmScenario,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> WgmStatus {
    guard(|| {
        let digest = handle(scenario, "scenario")?.config.digest();
        let bytes = digest.as_bytes();
        if !needed.is_null() {
            needed.write(bytes.len() + 1);
        }
        if cap < bytes.len() + 1 || buf.is_null() {
            return Err(failure(
                WgmStatus::OutOfRange,
                "buffer too small for digest",
            ));
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        buf.add(bytes.len()).write(0);
        Ok(())
    })
}

/// Derives the full rate set.
///
/// # Safety
/// `scenario` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_scenario_derive(
    scenario: *const WgmScenario,
    out: *mut WgmRates,
) -> WgmStatus {
    guard(|| {
        let p = handle(scenario, "scenario")?.config.derive()?;
        let rates = WgmRates {
            omega_c: p.omega_c,
            beta_re: p.beta.re,
            beta_im: p.beta.im,
            g_c: p.g_c,
            g_cm: p.g_cm,
            h: p.h,
            kappa_0: p.kappa_0,
            kappa_1: p.kappa_1,
            kappa_r: p.kappa_r,
            kappa_m: p.kappa_m,
            gamma_s: p.gamma_s,
            v_cm: p.v_cm,
            c_c: p.c_c,
            c_cm: p.c_cm,
            enhancement: p.enhancement(),
        };
        write(out, rates, "out")
    })
}

fn model(
    s: &WgmScenario,
    include_mnp: bool,
    include_dipole: bool,
) -> Result<LinearSystemModel, Failure> {
    Ok(LinearSystemModel::new(
        s.config.derive()?,
        include_mnp,
        include_dipole,
    ))
}

/// Taper transmission at probe detuning `delta` (rad/s).
///
/// # Safety
/// `scenario` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_transmission(
    scenario: *const WgmScenario,
    include_mnp: bool,
    include_dipole: bool,
    delta: f64,
    out: *mut f64,
) -> WgmStatus {
    guard(|| {
        let m = model(handle(scenario, "scenario")?, include_mnp, include_dipole)?;
        write(out, m.transmission(delta)?, "out")
    })
}

/// Sweeps the transmission over the default symmetric window with `points`
/// samples (at least 3).
///
/// # Safety
/// `scenario` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_compute(
    scenario: *const WgmScenario,
    include_mnp: bool,
    include_dipole: bool,
    points: usize,
    out: *mut *mut WgmSpectrum,
) -> WgmStatus {
    guard(|| {
        if points < 3 {
            return Err(failure(WgmStatus::OutOfRange, "points must be at least 3"));
        }
        let m = model(handle(scenario, "scenario")?, include_mnp, include_dipole)?;
        let grid = symmetric_grid(m.default_half_span(DEFAULT_SPAN_FACTOR), points);
        let trace = sweep_spectrum(&m, &grid)?;
        let spectrum = WgmSpectrum {
            dips: trace
                .dips
                .iter()
                .map(|d| WgmDip {
                    delta: d.delta,
                    transmission: d.transmission,
                    width: d.width.unwrap_or(f64::NAN),
                })
                .collect(),
            delta: trace.delta,
            transmission: trace.transmission,
            coarse_grid: trace.coarse_grid,
        };
        write(out, Box::into_raw(Box::new(spectrum)), "out")
    })
}

/// Number of samples; 0 for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_len(spectrum: *const WgmSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.delta.len())
}

/// Probe detunings (rad/s), valid while the handle lives; NULL for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_delta(spectrum: *const WgmSpectrum) -> *const f64 {
    spectrum.as_ref().map_or(ptr::null(), |s| s.delta.as_ptr())
}

/// Transmission samples, valid while the handle lives; NULL for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_transmission(spectrum: *const WgmSpectrum) -> *const f64 {
    spectrum
        .as_ref()
        .map_or(ptr::null(), |s| s.transmission.as_ptr())
}

/// True when the grid resolves the narrowest mode with fewer than five points.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_coarse_grid(spectrum: *const WgmSpectrum) -> bool {
    spectrum.as_ref().is_some_and(|s| s.coarse_grid)
}

/// Number of dips; 0 for NULL.
///
/// # Safety
/// `spectrum` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_dip_count(spectrum: *const WgmSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.dips.len())
}

/// Copies dip `index` (ordered by detuning) into `out`.
///
/// # Safety
/// `spectrum` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_dip(
    spectrum: *const WgmSpectrum,
    index: usize,
    out: *mut WgmDip,
) -> WgmStatus {
    guard(|| {
        let s = handle(spectrum, "spectrum")?;
        let dip = *s.dips.get(index).ok_or_else(|| {
            failure(
                WgmStatus::OutOfRange,
                format!("dip {index} of {}", s.dips.len()),
            )
        })?;
        write(out, dip, "out")
    })
}

/// Releases a spectrum. NULL is ignored.
///
/// # Safety
/// `spectrum` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn wgm_spectrum_free(spectrum: *mut WgmSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Best cavity–plasmon detuning for sphere radius `r_m` (m); pass a
/// non-positive radius to use the scenario's own.
///
/// # Safety
/// `scenario` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_optimize_detuning(
    scenario: *const WgmScenario,
    r_m: f64,
    out: *mut WgmDetuningOptimum,
) -> WgmStatus {
    guard(|| {
        let cfg = &handle(scenario, "scenario")?.config;
        let r = if r_m > 0.0 { r_m } else { cfg.geometry.r_m };
        let o = optimize_detuning(cfg, r)?;
        write(
            out,
            WgmDetuningOptimum {
                r_m: o.r_m,
                delta_sp: o.delta_sp,
                delta_sp_over_gamma_m: o.delta_sp_over_gamma_m,
                enhancement: o.enhancement,
            },
            "out",
        )
    })
}

/// Phase-optimized NOON fidelity after twisting by `chi_t` (rad).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_noon_fidelity(
    n_spins: usize,
    chi_t: f64,
    out: *mut WgmNoonOutcome,
) -> WgmStatus {
    guard(|| {
        let o = noon_protocol(n_spins, chi_t)?;
        write(
            out,
            WgmNoonOutcome {
                fidelity: o.fidelity,
                pulse_phase: o.pulse_phase,
                branch_phase: o.branch_phase,
            },
            "out",
        )
    })
}

/// Minimum squeezing parameter along the twisting trajectory and the
/// twisting angle where it occurs. Either out-pointer may be NULL.
///
/// # Safety
/// Non-NULL out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn wgm_squeezing_min(
    n_spins: usize,
    xi2_min: *mut f64,
    chi_t_opt: *mut f64,
) -> WgmStatus {
    guard(|| {
        let o = optimal_squeezing(n_spins)?;
        if !xi2_min.is_null() {
            xi2_min.write(o.xi2_min);
        }
        if !chi_t_opt.is_null() {
            chi_t_opt.write(o.chi_t_opt);
        }
        Ok(())
    })
}

/// Message for the most recent failure on this thread, or NULL after a
/// success. Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wgm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wgm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
