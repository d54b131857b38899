//! Coordinate-space eigenfunctions of the spin-independent trap problem in
//! cylindrical coordinates, built from generalized Laguerre and Hermite
//! polynomials evaluated by stable three-term recurrences.
//!
//! Natural units `ħ = m = ωz = 1` throughout, so the axial scale is
//! `s0 = 1` and the radial scale is `r0 = σ^{−1/2}`. A state is labelled by
//! `(N, K̂, M̂)` with `N ≥ |M̂|`, `N − |M̂|` even, `K̂ ≥ 0`:
//!
//! `Ψ = C (ρ/r0)^{|M̂|} e^{−(k/4)(ρ/r0)² − z²/2 + iM̂φ}
//!      L^{|M̂|}_{(N−|M̂|)/2}((k/2)(ρ/r0)²) H_{K̂}(z)`
//!
//! with `k = Ω/ωc`. Checks are numerical: quadrature norms and overlaps, and
//! a pointwise PDE residual built from analytic recurrence derivatives.

pub mod quadrature;

use crate::exec;
use crate::trap::{Scalar, TrapParameters};
use num::complex::Complex64;
use quadrature::{gauss_hermite, gauss_laguerre};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum WaveError {
    /// `σ > √2` strictly; the `k = 0` boundary changes the solutions and is
    /// rejected.
    #[error("sigma = {0} is not above the trapping limit sqrt(2)")]
    SigmaBelowTrappingLimit(f64),
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
}

/// Radial/axial scales derived from σ in natural units.
#[derive(Clone, Copy, Debug)]
pub struct WaveParams {
    pub sigma: f64,
    /// `k = Ω/ωc = √(σ² − 2)/σ ∈ (0, 1]`.
    pub k: f64,
    /// `r0 = (ħ/mωc)^{1/2} = σ^{−1/2}`.
    pub r0: f64,
}

impl WaveParams {
    pub fn new(sigma: f64) -> Result<WaveParams, WaveError> {
        if sigma <= std::f64::consts::SQRT_2 {
            return Err(WaveError::SigmaBelowTrappingLimit(sigma));
        }
        let omega = (sigma * sigma - 2.0).sqrt();
        Ok(WaveParams { sigma, k: omega / sigma, r0: sigma.powf(-0.5) })
    }

    pub fn big_omega(&self) -> f64 {
        self.k * self.sigma
    }
}

/// Separation quantum numbers `(N, K̂, M̂)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuantumNumbersNKM {
    pub n: u32,
    pub k_hat: u32,
    pub m_hat: i64,
}

impl QuantumNumbersNKM {
    pub fn new(n: u32, k_hat: u32, m_hat: i64) -> Result<QuantumNumbersNKM, WaveError> {
        if m_hat.unsigned_abs() > n as u64 {
            return Err(WaveError::InvalidQuantumNumbers(format!(
                "need N >= |M|, got N = {n}, M = {m_hat}"
            )));
        }
        if (n as i64 - m_hat) % 2 != 0 {
            return Err(WaveError::InvalidQuantumNumbers(format!(
                "N - M must be even, got N = {n}, M = {m_hat}"
            )));
        }
        Ok(QuantumNumbersNKM { n, k_hat, m_hat })
    }

    /// Radial node count `(N − |M̂|)/2`.
    pub fn radial_index(&self) -> u32 {
        (self.n - self.m_hat.unsigned_abs() as u32) / 2
    }

    pub fn m_abs(&self) -> u32 {
        self.m_hat.unsigned_abs() as u32
    }
}

/// Generalized Laguerre `L_n^α(x)` by the forward three-term recurrence.
pub fn laguerre(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0 + alpha - x) * cur - (jf + alpha) * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Physicists' Hermite `H_n(z)` by the forward three-term recurrence.
pub fn hermite(n: u32, z: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * z;
    for j in 1..n {
        let next = 2.0 * z * cur - 2.0 * j as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Lanczos log-gamma, `x > 0`.
#[allow(clippy::excessive_precision)]
pub fn ln_gamma(x: f64) -> f64 {
    const G: f64 = 7.0;
    const COEFFS: [f64; 9] = [
        0.999_999_999_999_809_93,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_13,
        -176.615_029_162_140_59,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_571_6e-6,
        1.505_632_735_149_311_6e-7,
    ];
    debug_assert!(x > 0.0);
    let xm1 = x - 1.0;
    let mut acc = COEFFS[0];
    for (i, &c) in COEFFS.iter().enumerate().skip(1) {
        acc += c / (xm1 + i as f64);
    }
    let t = xm1 + G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (xm1 + 0.5) * t.ln() - t + acc.ln()
}

/// Closed-form normalization constant, via log-gamma for stability. Depends
/// on `M̂` only through `|M̂|`.
pub fn normalization(n: u32, k_hat: u32, m_abs: u32, wp: &WaveParams) -> f64 {
    let nr = ((n - m_abs) / 2) as f64;
    let m = m_abs as f64;
    let ln_c2 = (m + 1.0) * (wp.k / 2.0).ln() + ln_gamma(nr + 1.0)
        - 2.0 * wp.r0.ln()
        - k_hat as f64 * 2.0f64.ln()
        - 1.5 * std::f64::consts::PI.ln()
        - ln_gamma(nr + m + 1.0)
        - ln_gamma(k_hat as f64 + 1.0);
    (0.5 * ln_c2).exp()
}

/// The real radial × axial profile `R(ρ) Z(z)`; the full wavefunction is this
/// times `e^{iM̂φ}`.
pub fn radial_axial(qn: &QuantumNumbersNKM, wp: &WaveParams, rho: f64, z: f64) -> f64 {
    let m = qn.m_abs();
    let c = normalization(qn.n, qn.k_hat, m, wp);
    let u = rho / wp.r0;
    let x = 0.5 * wp.k * u * u;
    c * u.powi(m as i32)
        * (-0.25 * wp.k * u * u - 0.5 * z * z).exp()
        * laguerre(qn.radial_index(), m as f64, x)
        * hermite(qn.k_hat, z)
}

/// Full complex wavefunction at `(ρ, φ, z)`, `ρ ≥ 0`.
pub fn psi(qn: &QuantumNumbersNKM, wp: &WaveParams, rho: f64, phi: f64, z: f64) -> Complex64 {
    let angle = qn.m_hat as f64 * phi;
    radial_axial(qn, wp, rho, z) * Complex64::new(angle.cos(), angle.sin())
}

/// Analytic eigenvalue `E/ħωz = ½[ΩN + 2ωzK̂ − ωcM̂ + Ω + ωz]`, exact when
/// the parameters are.
pub fn energy_nkm(qn: &QuantumNumbersNKM, params: &TrapParameters) -> Scalar {
    let omega = params.big_omega();
    let n = Scalar::from_int(qn.n as i64);
    let k = Scalar::from_int(qn.k_hat as i64);
    let m = Scalar::from_int(qn.m_hat);
    omega
        .mul(&n)
        .add(&k.mul(&Scalar::from_int(2)))
        .sub(&params.sigma().mul(&m))
        .add(omega)
        .add(&Scalar::one())
        .div(&Scalar::from_int(2))
}

pub fn energy_nkm_f64(qn: &QuantumNumbersNKM, sigma: f64) -> f64 {
    let omega = (sigma * sigma - 2.0).sqrt();
    0.5 * (omega * qn.n as f64 + 2.0 * qn.k_hat as f64 - sigma * qn.m_hat as f64 + omega + 1.0)
}

/// Pointwise residual of the stationary problem with an explicit trial
/// energy; each point contributes
/// `|H̃Ψ − EΨ| / (|EΨ| + Σ|contributions|)`, so the figure is relative to
/// the scale of the computation and stays finite at nodes of `Ψ`.
pub fn pde_residual_with_energy(
    qn: &QuantumNumbersNKM,
    wp: &WaveParams,
    energy: f64,
    points: &[(f64, f64)],
) -> f64 {
    let m = qn.m_abs();
    let mf = m as f64;
    let nr = qn.radial_index();
    let kq = qn.k_hat;
    let c = normalization(qn.n, kq, m, wp);
    let k = wp.k;
    let r0 = wp.r0;
    let omega = wp.big_omega();
    let m_signed = qn.m_hat as f64;

    let residuals = exec::map_indices(points.len(), |idx| {
        let (rho, z) = points[idx];
        debug_assert!(rho > 0.0);
        let u = rho / r0;
        let x = 0.5 * k * u * u;
        let l0 = laguerre(nr, mf, x);
        let l1 = if nr >= 1 { laguerre(nr - 1, mf + 1.0, x) } else { 0.0 };
        let l2 = if nr >= 2 { laguerre(nr - 2, mf + 2.0, x) } else { 0.0 };

        // P(u) = u^m L0(x(u)), with dL/dx = −L_{n−1}^{α+1}.
        let p0 = u.powi(m as i32) * l0;
        let dp = if m >= 1 { mf * u.powi(m as i32 - 1) * l0 } else { 0.0 } - k * u.powi(m as i32 + 1) * l1;
        let d2p = if m >= 2 {
            mf * (mf - 1.0) * u.powi(m as i32 - 2) * l0
        } else {
            0.0
        } - k * (2.0 * mf + 1.0) * u.powi(m as i32) * l1
            + k * k * u.powi(m as i32 + 2) * l2;

        let g0 = (-0.25 * k * u * u).exp();
        let dg = -0.5 * k * u * g0;
        let d2g = (-0.5 * k + 0.25 * k * k * u * u) * g0;

        let r = c * p0 * g0;
        let dr = c * (dp * g0 + p0 * dg) / r0;
        let d2r = c * (d2p * g0 + 2.0 * dp * dg + p0 * d2g) / (r0 * r0);

        let h0 = hermite(kq, z);
        let h1 = if kq >= 1 { hermite(kq - 1, z) } else { 0.0 };
        let h2 = if kq >= 2 { hermite(kq - 2, z) } else { 0.0 };
        let ez = (-0.5 * z * z).exp();
        let z0 = ez * h0;
        let d2z = ez * (4.0 * (kq as f64) * (kq as f64 - 1.0) * h2 - 4.0 * kq as f64 * z * h1
            + (z * z - 1.0) * h0);

        let kinetic_rho = -0.5 * (d2r + dr / rho - mf * mf * r / (rho * rho)) * z0;
        let kinetic_z = -0.5 * r * d2z;
        let pot_rho = 0.125 * omega * omega * rho * rho * r * z0;
        let pot_z = 0.5 * z * z * r * z0;
        let magnetic = -0.5 * wp.sigma * m_signed * r * z0;

        let h_psi = kinetic_rho + kinetic_z + pot_rho + pot_z + magnetic;
        let e_psi = energy * r * z0;
        // Scale from the pre-cancellation magnitudes: at radial nodes the
        // Laplacian pieces cancel to rounding and the lumped kinetic term
        // would underestimate the computation's size.
        let scale = e_psi.abs()
            + 0.5 * (d2r.abs() + (dr / rho).abs() + (mf * mf * r / (rho * rho)).abs()) * z0.abs()
            + kinetic_z.abs()
            + pot_rho.abs()
            + pot_z.abs()
            + magnetic.abs()
            + 1e-300;
        (h_psi - e_psi).abs() / scale
    });
    residuals.into_iter().fold(0.0, f64::max)
}

/// Max relative PDE residual at the analytic eigenvalue.
pub fn pde_residual(qn: &QuantumNumbersNKM, wp: &WaveParams, points: &[(f64, f64)]) -> f64 {
    pde_residual_with_energy(qn, wp, energy_nkm_f64(qn, wp.sigma), points)
}

fn radical_inverse(mut index: usize, base: usize) -> f64 {
    let mut result = 0.0;
    let mut f = 1.0 / base as f64;
    while index > 0 {
        result += (index % base) as f64 * f;
        index /= base;
        f /= base as f64;
    }
    result
}

/// Deterministic quasi-random sample points `(ρ, z)` with
/// `ρ ∈ (0, 4 r0 k^{−1/2}]`, `z ∈ (−4, 4)` (Halton bases 2 and 3).
pub fn sample_points(wp: &WaveParams, count: usize) -> Vec<(f64, f64)> {
    let rho_max = 4.0 * wp.r0 / wp.k.sqrt();
    (1..=count)
        .map(|i| {
            (
                radical_inverse(i, 2) * rho_max,
                (2.0 * radical_inverse(i, 3) - 1.0) * 4.0,
            )
        })
        .collect()
}

fn overlap_with_rules(
    s1: &QuantumNumbersNKM,
    s2: &QuantumNumbersNKM,
    wp: &WaveParams,
    radial_rule: &quadrature::GaussRule,
    axial_rule: &quadrature::GaussRule,
) -> f64 {
    // The φ integral is analytic: 2π δ_{M̂₁ M̂₂}.
    if s1.m_hat != s2.m_hat {
        return 0.0;
    }
    let m = s1.m_abs();
    let mf = m as f64;
    let c1 = normalization(s1.n, s1.k_hat, m, wp);
    let c2 = normalization(s2.n, s2.k_hat, m, wp);
    let radial = radial_rule
        .integrate(|x| laguerre(s1.radial_index(), mf, x) * laguerre(s2.radial_index(), mf, x));
    let axial = axial_rule.integrate(|z| hermite(s1.k_hat, z) * hermite(s2.k_hat, z));
    let prefactor = 2.0 * std::f64::consts::PI * (wp.r0 * wp.r0 / wp.k) * (2.0 / wp.k).powi(m as i32);
    c1 * c2 * prefactor * radial * axial
}

fn gram(states: &[QuantumNumbersNKM], wp: &WaveParams, nodes: usize) -> Vec<Vec<f64>> {
    let n = states.len();
    // One radial rule per |M̂| in play.
    let mut alphas: Vec<u32> = states.iter().map(QuantumNumbersNKM::m_abs).collect();
    alphas.sort_unstable();
    alphas.dedup();
    let radial_rules: Vec<(u32, quadrature::GaussRule)> = alphas
        .iter()
        .map(|&m| (m, gauss_laguerre(nodes, m as f64)))
        .collect();
    let axial_rule = gauss_hermite(nodes);
    let entries = exec::map_indices(n * n, |idx| {
        let (i, j) = (idx / n, idx % n);
        if j < i {
            return 0.0; // filled from symmetry below
        }
        let rule = &radial_rules
            .iter()
            .find(|(m, _)| *m == states[i].m_abs())
            .expect("rule prepared for every |M|")
            .1;
        overlap_with_rules(&states[i], &states[j], wp, rule, &axial_rule)
    });
    let mut out = vec![vec![0.0; n]; n];
    for (i, j) in (0..n).flat_map(|i| (i..n).map(move |j| (i, j))) {
        out[i][j] = entries[i * n + j];
        out[j][i] = entries[i * n + j];
    }
    out
}

/// Numerical Gram matrix by product quadrature (Gauss–Laguerre in the
/// squared radius, analytic in φ, Gauss–Hermite in z). Node counts start at
/// 40 per axis and double until the matrix moves by less than `1e−10`.
pub fn overlap_matrix(states: &[QuantumNumbersNKM], wp: &WaveParams) -> Vec<Vec<f64>> {
    let mut nodes = 40;
    let mut current = gram(states, wp, nodes);
    while nodes < 320 {
        let refined = gram(states, wp, nodes * 2);
        let drift = current
            .iter()
            .flatten()
            .zip(refined.iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        current = refined;
        nodes *= 2;
        if drift < 1e-10 {
            break;
        }
    }
    current
}

/// Quadrature norm `⟨Ψ|Ψ⟩` of a single state.
pub fn norm(qn: &QuantumNumbersNKM, wp: &WaveParams) -> f64 {
    overlap_matrix(std::slice::from_ref(qn), wp)[0][0]
}
