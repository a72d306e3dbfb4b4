//! Brute-force N-spin simulation in the full 2^N product space.
//!
//! Bit i of a basis index is spin i, with 0 = |g⟩ and 1 = |e⟩. Nothing here
//! uses the library's collective-spin machinery.

#![allow(dead_code)]

use num_complex::Complex64;

pub type Mat2 = [[Complex64; 2]; 2];

const fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn ground(n: usize) -> Vec<Complex64> {
    let mut psi = vec![c(0.0, 0.0); 1 << n];
    psi[0] = c(1.0, 0.0);
    psi
}

/// exp(−iθ n̂·σ/2) for a unit vector n̂, in the (g, e) basis where
/// σ_z = diag(−1, 1) and σ₊ = |e⟩⟨g|.
pub fn single_rotation(axis: [f64; 3], theta: f64) -> Mat2 {
    let (cs, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let [x, y, z] = axis;
    // n̂·σ = [[−z, x + i y], [x − i y, z]]
    let ns = [[c(-z, 0.0), c(x, y)], [c(x, -y), c(z, 0.0)]];
    let mut u = [[c(0.0, 0.0); 2]; 2];
    for r in 0..2 {
        for k in 0..2 {
            let id = if r == k { cs } else { 0.0 };
            u[r][k] = c(id, 0.0) + c(0.0, -sn) * ns[r][k];
        }
    }
    u
}

pub fn apply_single(psi: &[Complex64], spin: usize, u: &Mat2) -> Vec<Complex64> {
    let mut out = psi.to_vec();
    let bit = 1 << spin;
    for idx in 0..psi.len() {
        if idx & bit == 0 {
            let (a0, a1) = (psi[idx], psi[idx | bit]);
            out[idx] = u[0][0] * a0 + u[0][1] * a1;
            out[idx | bit] = u[1][0] * a0 + u[1][1] * a1;
        }
    }
    out
}

/// The same single-spin rotation on every spin.
pub fn product_rotation(psi: &[Complex64], n: usize, axis: [f64; 3], theta: f64) -> Vec<Complex64> {
    let u = single_rotation(axis, theta);
    (0..n).fold(psi.to_vec(), |acc, i| apply_single(&acc, i, &u))
}

fn magnetization(idx: usize, n: usize) -> f64 {
    idx.count_ones() as f64 - n as f64 / 2.0
}

/// exp(−iθ(J_z − J_z²)), diagonal in the product basis.
pub fn twist(psi: &[Complex64], n: usize, theta: f64) -> Vec<Complex64> {
    psi.iter()
        .enumerate()
        .map(|(idx, a)| {
            let m = magnetization(idx, n);
            a * Complex64::from_polar(1.0, -theta * (m - m * m))
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Projection onto the Dicke states, indexed by the number of excitations.
pub fn to_dicke(psi: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); n + 1];
    for (idx, a) in psi.iter().enumerate() {
        out[idx.count_ones() as usize] += a;
    }
    for (k, a) in out.iter_mut().enumerate() {
        *a /= binomial(n, k).sqrt();
    }
    out
}

/// Embeds a symmetric-subspace state into the product space.
pub fn from_dicke(amps: &[Complex64], n: usize) -> Vec<Complex64> {
    (0..1usize << n)
        .map(|idx| {
            let k = idx.count_ones() as usize;
            amps[k] / binomial(n, k).sqrt()
        })
        .collect()
}

/// Σ_i σ_a^(i)/2 applied to psi, a ∈ {0: x, 1: y, 2: z}.
pub fn apply_collective(psi: &[Complex64], n: usize, a: usize) -> Vec<Complex64> {
    let mut out = vec![c(0.0, 0.0); psi.len()];
    for i in 0..n {
        let bit = 1 << i;
        for (idx, amp) in psi.iter().enumerate() {
            let excited = idx & bit != 0;
            match a {
                0 => out[idx ^ bit] += amp * 0.5,
                // σ_y|g⟩ = −i|e⟩, σ_y|e⟩ = i|g⟩
                1 => out[idx ^ bit] += amp * c(0.0, if excited { 0.5 } else { -0.5 }),
                _ => out[idx] += amp * if excited { 0.5 } else { -0.5 },
            }
        }
    }
    out
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// ξ² = 4·min⟨ΔJ_⊥²⟩/N from the full 3×3 covariance matrix.
pub fn squeezing(psi: &[Complex64], n: usize) -> f64 {
    let j: Vec<Vec<Complex64>> = (0..3).map(|a| apply_collective(psi, n, a)).collect();
    let mean: Vec<f64> = (0..3).map(|a| dot(psi, &j[a]).re).collect();
    let cov = nalgebra::Matrix3::from_fn(|a, b| dot(&j[a], &j[b]).re - mean[a] * mean[b]);
    let unit = nalgebra::Vector3::new(mean[0], mean[1], mean[2]).normalize();
    let helper = if unit.z.abs() < 0.9 {
        nalgebra::Vector3::z()
    } else {
        nalgebra::Vector3::x()
    };
    let e1 = unit.cross(&helper).normalize();
    let e2 = unit.cross(&e1);
    let basis = nalgebra::Matrix3x2::from_columns(&[e1, e2]);
    let reduced = basis.transpose() * cov * basis;
    let eig = nalgebra::SymmetricEigen::new(reduced);
    4.0 * eig.eigenvalues.min() / n as f64
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
