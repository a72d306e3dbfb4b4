#ifndef WGM_PLASMON_H
#define WGM_PLASMON_H

/* Generated with cbindgen:0.29.4 */

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum WgmStatus {
  WGM_STATUS_OK = 0,
  WGM_STATUS_NULL_POINTER = 1,
  WGM_STATUS_INVALID_UTF8 = 2,
  // Malformed document, unknown key or a value outside its physical bounds.
  WGM_STATUS_CONFIG = 3,
  // Arguments outside the domain of the model.
  WGM_STATUS_DOMAIN = 4,
  WGM_STATUS_NUMERICAL = 5,
  WGM_STATUS_OUT_OF_RANGE = 6,
  WGM_STATUS_PANIC = 7,
} WgmStatus;

// A validated scenario plus the document it was built from.
typedef struct WgmScenario WgmScenario;

// A computed transmission trace.
typedef struct WgmSpectrum WgmSpectrum;

// Derived rates in rad/s, volumes in m^3.
typedef struct WgmRates {
  double omega_c;
  double beta_re;
  double beta_im;
  double g_c;
  double g_cm;
  double h;
  double kappa_0;
  double kappa_1;
  double kappa_r;
  double kappa_m;
  double gamma_s;
  double v_cm;
  double c_c;
  double c_cm;
  double enhancement;
} WgmRates;

// A transmission minimum. `width` is NaN when the half-depth crossings fall
// outside the grid.
typedef struct WgmDip {
  double delta;
  double transmission;
  double width;
} WgmDip;

typedef struct WgmDetuningOptimum {
  double r_m;
  double delta_sp;
  double delta_sp_over_gamma_m;
  double enhancement;
} WgmDetuningOptimum;

typedef struct WgmNoonOutcome {
  double fidelity;
  double pulse_phase;
  double branch_phase;
} WgmNoonOutcome;

// Creates a scenario with the built-in defaults.
//
// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum WgmStatus wgm_scenario_default(struct WgmScenario **out);

// Parses a TOML scenario document.
//
// # Safety
// `toml` must be a NUL-terminated string; `out` must be writable.
enum WgmStatus wgm_scenario_from_toml(const char *toml, struct WgmScenario **out);

// Overrides one dotted key, e.g. `("geometry.r_m", "20nm")`. The scenario is
// left unchanged when the result fails validation.
//
// # Safety
// `scenario` must be a live handle; `key` and `value` NUL-terminated strings.
enum WgmStatus wgm_scenario_set(struct WgmScenario *scenario, const char *key, const char *value);

// Releases a scenario. NULL is ignored.
//
// # Safety
// `scenario` must be NULL or a handle not yet freed.
void wgm_scenario_free(struct WgmScenario *scenario);

// Writes the `sha256:` digest of the normalized scenario into `buf` (NUL
// terminated). `needed` receives the required size including the NUL.
//
// # Safety
// `buf` must hold `cap` bytes (or be NULL with `cap == 0`); `needed` may be NULL.
enum WgmStatus wgm_scenario_digest(const struct WgmScenario *scenario,
                                   char *buf,
                                   uintptr_t cap,
                                   uintptr_t *needed);

// Derives the full rate set.
//
// # Safety
// `scenario` must be a live handle; `out` writable.
enum WgmStatus wgm_scenario_derive(const struct WgmScenario *scenario, struct WgmRates *out);

// Taper transmission at probe detuning `delta` (rad/s).
//
// # Safety
// `scenario` must be a live handle; `out` writable.
enum WgmStatus wgm_transmission(const struct WgmScenario *scenario,
                                bool include_mnp,
                                bool include_dipole,
                                double delta,
                                double *out);

// Sweeps the transmission over the default symmetric window with `points`
// samples (at least 3).
//
// # Safety
// `scenario` must be a live handle; `out` writable.
enum WgmStatus wgm_spectrum_compute(const struct WgmScenario *scenario,
                                    bool include_mnp,
                                    bool include_dipole,
                                    uintptr_t points,
                                    struct WgmSpectrum **out);

// Number of samples; 0 for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
uintptr_t wgm_spectrum_len(const struct WgmSpectrum *spectrum);

// Probe detunings (rad/s), valid while the handle lives; NULL for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
const double *wgm_spectrum_delta(const struct WgmSpectrum *spectrum);

// Transmission samples, valid while the handle lives; NULL for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
const double *wgm_spectrum_transmission(const struct WgmSpectrum *spectrum);

// True when the grid resolves the narrowest mode with fewer than five points.
//
// # Safety
// `spectrum` must be NULL or a live handle.
bool wgm_spectrum_coarse_grid(const struct WgmSpectrum *spectrum);

// Number of dips; 0 for NULL.
//
// # Safety
// `spectrum` must be NULL or a live handle.
uintptr_t wgm_spectrum_dip_count(const struct WgmSpectrum *spectrum);

// Copies dip `index` (ordered by detuning) into `out`.
//
// # Safety
// `spectrum` must be a live handle; `out` writable.
enum WgmStatus wgm_spectrum_dip(const struct WgmSpectrum *spectrum,
                                uintptr_t index,
                                struct WgmDip *out);

// Releases a spectrum. NULL is ignored.
//
// # Safety
// `spectrum` must be NULL or a handle not yet freed.
void wgm_spectrum_free(struct WgmSpectrum *spectrum);

// Best cavity–plasmon detuning for sphere radius `r_m` (m); pass a
// non-positive radius to use the scenario's own.
//
// # Safety
// `scenario` must be a live handle; `out` writable.
enum WgmStatus wgm_optimize_detuning(const struct WgmScenario *scenario,
                                     double r_m,
                                     struct WgmDetuningOptimum *out);

// Phase-optimized NOON fidelity after twisting by `chi_t` (rad).
//
// # Safety
// `out` must be writable.
enum WgmStatus wgm_noon_fidelity(uintptr_t n_spins, double chi_t, struct WgmNoonOutcome *out);

// Minimum squeezing parameter along the twisting trajectory and the
// twisting angle where it occurs. Either out-pointer may be NULL.
//
// # Safety
// Non-NULL out-pointers must be writable.
enum WgmStatus wgm_squeezing_min(uintptr_t n_spins, double *xi2_min, double *chi_t_opt);

// Message for the most recent failure on this thread, or NULL after a
// success. Valid until the next call into this library on the same thread.
const char *wgm_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *wgm_version(void);

#endif  /* WGM_PLASMON_H */
