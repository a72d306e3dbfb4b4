//! Unit-tagged scalar parsing.
//!
//! A quantity is written `<decimal> [space] <unit>`, for example `12 nm`,
//! `0.2e-15 m^3` or `55MHz`. Decimal prefixes are applied by shifting the
//! decimal exponent in the text before a single correctly-rounded parse, so
//! `12 nm`, `0.012 um` and `1.2e-8 m` give the same `f64` bit pattern.
//!
//! Rates tagged `Hz`, `kHz`, `MHz`, `GHz` or `THz` are ordinary frequencies
//! and are multiplied by 2π; `rad/s` is taken as an angular rate as is.

use crate::constants::TWO_PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Volume,
    /// Angular frequency or decay rate, rad/s internally.
    Rate,
    /// Dipole moment in C·m.
    DipoleMoment,
    Dimensionless,
}

impl Dimension {
    fn accepted(self) -> &'static str {
        match self {
            Dimension::Length => "m, mm, um, nm, pm",
            Dimension::Volume => "m^3, mm^3, um^3, nm^3",
            Dimension::Rate => "rad/s, Hz, kHz, MHz, GHz, THz",
            Dimension::DipoleMoment => "C*m",
            Dimension::Dimensionless => "no unit",
        }
    }
}

/// How a unit maps a decimal number onto SI.
enum Scale {
    /// Multiply by 10^k exactly (decimal shift).
    Decimal(i32),
    /// Decimal shift, then multiply by 2π.
    Cycles(i32),
    /// Multiply by a context value (e.g. γ_m for detunings).
    Factor(f64),
}

fn lookup(dim: Dimension, unit: &str, rate_unit: Option<(&str, f64)>) -> Option<Scale> {
    use Scale::*;
    let scale = match (dim, unit) {
        (Dimension::Length, "m") => Decimal(0),
        (Dimension::Length, "mm") => Decimal(-3),
        (Dimension::Length, "um" | "µm" | "μm") => Decimal(-6),
        (Dimension::Length, "nm") => Decimal(-9),
        (Dimension::Length, "pm") => Decimal(-12),
        (Dimension::Volume, "m^3" | "m3") => Decimal(0),
        (Dimension::Volume, "mm^3" | "mm3") => Decimal(-9),
        (Dimension::Volume, "um^3" | "µm^3" | "μm^3" | "um3") => Decimal(-18),
        (Dimension::Volume, "nm^3" | "nm3") => Decimal(-27),
        (Dimension::Rate, "rad/s") => Decimal(0),
        (Dimension::Rate, "Hz") => Cycles(0),
        (Dimension::Rate, "kHz") => Cycles(3),
        (Dimension::Rate, "MHz") => Cycles(6),
        (Dimension::Rate, "GHz") => Cycles(9),
        (Dimension::Rate, "THz") => Cycles(12),
        (Dimension::DipoleMoment, "C*m" | "C·m" | "C.m" | "Cm") => Decimal(0),
        (Dimension::Rate, u) => match rate_unit {
            Some((name, value)) if name == u => Factor(value),
            _ => return None,
        },
        _ => return None,
    };
    Some(scale)
}

/// Splits `text` into (mantissa, exponent, unit). The mantissa keeps its sign
/// and decimal point; the exponent is the integer after `e`/`E`, if any.
fn split_number(text: &str) -> Result<(&str, i32, &str), String> {
    let text = text.trim();
    let bytes = text.as_bytes();
    let mut i = 0;
    if i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
        i += 1;
    }
    let digits_start = i;
    while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
        i += 1;
    }
    if i == digits_start {
        return Err(format!("`{text}` does not start with a number"));
    }
    let mantissa = &text[..i];
    let mut exponent = 0i32;
    if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
        let mut j = i + 1;
        if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
            j += 1;
        }
        let exp_digits = j;
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        if j > exp_digits {
            exponent = text[i + 1..j]
                .parse()
                .map_err(|_| format!("bad exponent in `{text}`"))?;
            i = j;
        }
    }
    mantissa
        .parse::<f64>()
        .map_err(|_| format!("bad number `{mantissa}` in `{text}`"))?;
    Ok((mantissa, exponent, text[i..].trim()))
}

fn shifted(mantissa: &str, exponent: i32) -> Result<f64, String> {
    let v: f64 = format!("{mantissa}e{exponent}")
        .parse()
        .map_err(|_| format!("bad number `{mantissa}e{exponent}`"))?;
    if !v.is_finite() {
        return Err(format!("`{mantissa}e{exponent}` overflows"));
    }
    Ok(v)
}

/// Parses a quantity of the given dimension into SI. `rate_unit` optionally
/// adds a named rate unit such as `("gamma_m", γ_m)`.
pub fn parse_quantity(
    text: &str,
    dim: Dimension,
    rate_unit: Option<(&str, f64)>,
) -> Result<f64, String> {
    let (mantissa, exponent, unit) = split_number(text)?;
    if dim == Dimension::Dimensionless {
        if !unit.is_empty() {
            return Err(format!("`{text}` is dimensionless and takes no unit"));
        }
        return shifted(mantissa, exponent);
    }
    if unit.is_empty() {
        return Err(format!(
            "`{text}` needs an explicit unit (one of: {}{})",
            dim.accepted(),
            rate_unit.map(|(n, _)| format!(", {n}")).unwrap_or_default()
        ));
    }
    let scale = lookup(dim, unit, rate_unit).ok_or_else(|| {
        format!(
            "unknown unit `{unit}` (expected one of: {}{})",
            dim.accepted(),
            rate_unit.map(|(n, _)| format!(", {n}")).unwrap_or_default()
        )
    })?;
    match scale {
        Scale::Decimal(k) => shifted(mantissa, exponent + k),
        Scale::Cycles(k) => Ok(shifted(mantissa, exponent + k)? * TWO_PI),
        Scale::Factor(f) => Ok(shifted(mantissa, exponent)? * f),
    }
}

/// Formats an SI value with its canonical unit, round-trip exact.
pub fn format_si(value: f64, dim: Dimension) -> String {
    match dim {
        Dimension::Length => format!("{value:e} m"),
        Dimension::Volume => format!("{value:e} m^3"),
        Dimension::Rate => format!("{value:e} rad/s"),
        Dimension::DipoleMoment => format!("{value:e} C*m"),
        Dimension::Dimensionless => format!("{value:e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lengths_are_bit_identical_across_prefixes() {
        let a = parse_quantity("12 nm", Dimension::Length, None).unwrap();
        let b = parse_quantity("0.012 um", Dimension::Length, None).unwrap();
        let c = parse_quantity("1.2e-8 m", Dimension::Length, None).unwrap();
        let d = parse_quantity("12nm", Dimension::Length, None).unwrap();
        let e = parse_quantity("12000 pm", Dimension::Length, None).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_eq!(a.to_bits(), c.to_bits());
        assert_eq!(a.to_bits(), d.to_bits());
        assert_eq!(a.to_bits(), e.to_bits());
        assert_eq!(a, 1.2e-8);
    }

    #[test]
    fn volumes_and_rates() {
        let v = parse_quantity("200 um^3", Dimension::Volume, None).unwrap();
        assert_eq!(v, 2e-16);
        let r = parse_quantity("1 GHz", Dimension::Rate, None).unwrap();
        let s = parse_quantity("1000 MHz", Dimension::Rate, None).unwrap();
        assert_eq!(r.to_bits(), s.to_bits());
        assert_eq!(r, 1e9 * TWO_PI);
        assert_eq!(
            parse_quantity("6e15 rad/s", Dimension::Rate, None).unwrap(),
            6e15
        );
        let g = parse_quantity("-6 gamma_m", Dimension::Rate, Some(("gamma_m", 3e14))).unwrap();
        assert_eq!(g, -1.8e15);
        assert_eq!(
            parse_quantity("2.4e-28 C*m", Dimension::DipoleMoment, None).unwrap(),
            2.4e-28
        );
    }

    #[test]
    fn errors_are_descriptive() {
        let e = parse_quantity("12", Dimension::Length, None).unwrap_err();
        assert!(e.contains("explicit unit"), "{e}");
        let e = parse_quantity("12 furlong", Dimension::Length, None).unwrap_err();
        assert!(e.contains("unknown unit"), "{e}");
        let e = parse_quantity("nm", Dimension::Length, None).unwrap_err();
        assert!(e.contains("number"), "{e}");
        assert!(parse_quantity("3 nm", Dimension::Dimensionless, None).is_err());
        assert!(parse_quantity("1 gamma_m", Dimension::Rate, None).is_err());
        assert!(parse_quantity("1e400 m", Dimension::Length, None).is_err());
    }

    proptest! {
        #[test]
        fn canonical_format_round_trips(v in -1e20f64..1e20) {
            for dim in [Dimension::Length, Dimension::Volume, Dimension::Rate,
                        Dimension::DipoleMoment, Dimension::Dimensionless] {
                let text = format_si(v, dim);
                prop_assert_eq!(parse_quantity(&text, dim, None).unwrap().to_bits(), v.to_bits());
            }
        }

        #[test]
        fn prefix_shift_is_exact(int in 1u32..100000, frac in 0u32..1000) {
            let nm = format!("{int}.{frac:03} nm");
            let um = format!("{}.{:03}{:03} um", int / 1000, int % 1000, frac);
            let a = parse_quantity(&nm, Dimension::Length, None).unwrap();
            let b = parse_quantity(&um, Dimension::Length, None).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
