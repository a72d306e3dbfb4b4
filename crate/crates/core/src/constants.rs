//! CODATA 2018 physical constants (SI).

/// Reduced Planck constant ħ in J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity ε₀ in F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Speed of light in vacuum in m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

pub const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Vacuum wavelength (m) of light at angular frequency `omega` (rad/s).
pub fn wavelength_from_omega(omega: f64) -> f64 {
    TWO_PI * SPEED_OF_LIGHT / omega
}

/// Angular frequency (rad/s) of light with vacuum wavelength `lambda` (m).
pub fn omega_from_wavelength(lambda: f64) -> f64 {
    TWO_PI * SPEED_OF_LIGHT / lambda
}
