//! One-dimensional maximization: coarse scan plus golden-section refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`, stopping
/// when the bracket is narrower than `abs_tol`.
pub fn golden_section_max<F>(mut f: F, mut lo: f64, mut hi: f64, abs_tol: f64) -> Maximum
where
    F: FnMut(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut evaluations = 2;
    while (hi - lo) > abs_tol && evaluations < 500 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        evaluations += 1;
    }
    if f1 >= f2 {
        Maximum {
            x: x1,
            value: f1,
            evaluations,
        }
    } else {
        Maximum {
            x: x2,
            value: f2,
            evaluations,
        }
    }
}

/// Scans `points` uniformly spaced abscissae on `[lo, hi]`, then refines the
/// best bracket by golden section. Never returns less than the best scanned
/// value.
pub fn scan_then_refine<F>(f: F, lo: f64, hi: f64, points: usize, abs_tol: f64) -> Maximum
where
    F: Fn(f64) -> f64,
{
    let n = points.max(3);
    let xs: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let values: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let best = values
        .iter()
        .enumerate()
        .fold(0, |b, (i, v)| if *v > values[b] { i } else { b });
    let a = xs[best.saturating_sub(1)];
    let b = xs[(best + 1).min(n - 1)];
    let refined = golden_section_max(&f, a, b, abs_tol);
    if refined.value >= values[best] {
        Maximum {
            evaluations: refined.evaluations + n,
            ..refined
        }
    } else {
        Maximum {
            x: xs[best],
            value: values[best],
            evaluations: refined.evaluations + n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let m = golden_section_max(|x| -(x - 0.3).powi(2), -1.0, 2.0, 1e-10);
        assert!((m.x - 0.3).abs() < 1e-9);
    }

    #[test]
    fn scan_escapes_local_maxima() {
        // Two bumps; the taller one is narrow and away from the centre.
        let f = |x: f64| (-(x + 1.0).powi(2)).exp() + 2.0 * (-(x - 2.0).powi(2) * 50.0).exp();
        let m = scan_then_refine(f, -4.0, 4.0, 101, 1e-10);
        assert!((m.x - 2.0).abs() < 1e-4, "{m:?}");
        assert!(m.value >= 2.0 - 1e-12);
    }

    #[test]
    fn edge_maximum() {
        let m = scan_then_refine(|x| x, 0.0, 1.0, 11, 1e-12);
        assert!((m.x - 1.0).abs() < 1e-9);
    }
}
