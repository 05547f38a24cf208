//! Vandermonde matrices over consecutive integer nodes and their Gram-based
//! pseudoinverses.
//!
//! `V` has rows `(s+j)^i` for `i < 2p` over nodes `s..=r`; `W` and `Z` are
//! the same construction over nodes `1..=r` and `1..s`, so that
//! `VVᵀ = WWᵀ − ZZᵀ`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::combin::{choose, factorial, rising_factorial_coeffs};
use crate::error::{domain, Result};
use crate::matrix::RatMatrix;
use crate::scalar::{big, Rational};

/// Shape of a Vandermonde system: `2p` power rows over nodes `s..=r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VandermondeSpec {
    pub p: usize,
    pub s: usize,
    pub r: usize,
}

impl VandermondeSpec {
    pub fn new(p: usize, s: usize, r: usize) -> Result<Self> {
        if p == 0 || s == 0 {
            return domain(format!("need p >= 1 and s >= 1, got p={p} s={s}"));
        }
        if r < s || r - s + 1 < 2 * p {
            return domain(format!("need r - s + 1 >= 2p, got p={p} s={s} r={r}"));
        }
        Ok(Self { p, s, r })
    }

    pub fn node_count(&self) -> usize {
        self.r - self.s + 1
    }
}

fn power_rows(rows: usize, first: usize, count: usize) -> RatMatrix {
    RatMatrix::from_fn(rows, count, |i, j| big(BigInt::from(first + j).pow(i as u32)))
}

pub fn build_v(spec: &VandermondeSpec) -> RatMatrix {
    power_rows(2 * spec.p, spec.s, spec.node_count())
}

/// `2p × r` over nodes `1..=r`.
pub fn build_w(p: usize, r: usize) -> Result<RatMatrix> {
    if p == 0 || r < 2 * p {
        return domain(format!("build_w needs p >= 1 and r >= 2p, got p={p} r={r}"));
    }
    Ok(power_rows(2 * p, 1, r))
}

/// `2p × (s−1)` over nodes `1..s`; empty when `s = 1`.
pub fn build_z(p: usize, s: usize) -> Result<RatMatrix> {
    if p == 0 || s == 0 {
        return domain(format!("build_z needs p >= 1 and s >= 1, got p={p} s={s}"));
    }
    Ok(power_rows(2 * p, 1, s - 1))
}

/// Right pseudoinverse `Mᵀ(MMᵀ)⁻¹` of a full-row-rank wide matrix.
pub fn pinv_exact(m: &RatMatrix) -> Result<RatMatrix> {
    if m.rows() > m.cols() {
        return domain(format!("pinv_exact expects rows <= cols, got {}x{}", m.rows(), m.cols()));
    }
    m.transpose().mul(&m.gram().invert()?)
}

/// Left-normalised pseudoinverse rows `(MMᵀ)⁻¹M`, the transpose of [`pinv_exact`].
pub fn gram_pinv_rows(m: &RatMatrix) -> Result<RatMatrix> {
    m.gram().invert()?.mul(m)
}

/// How the closed form for `(W†)_{q,k}` reads its Stirling numbers and the
/// sign of the innermost alternating sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DaggerConvention {
    /// Use signed Stirling numbers `(−1)^{n−k}[n, k]` instead of unsigned ones.
    pub signed_stirling: bool,
    /// Inner alternating factor `(−1)^{j+1}` instead of `(−1)^j`.
    pub shifted_inner_sign: bool,
}

impl DaggerConvention {
    pub const ALL: [DaggerConvention; 4] = [
        DaggerConvention { signed_stirling: false, shifted_inner_sign: false },
        DaggerConvention { signed_stirling: false, shifted_inner_sign: true },
        DaggerConvention { signed_stirling: true, shifted_inner_sign: false },
        DaggerConvention { signed_stirling: true, shifted_inner_sign: true },
    ];
}

/// The convention that reproduces `(WWᵀ)⁻¹W` exactly, fixed by sweeping all
/// four against the Gram oracle (see the `vander` tests and the acceptance suite).
pub const W_DAGGER_CONVENTION: DaggerConvention = DaggerConvention {
    signed_stirling: false,
    shifted_inner_sign: false,
};

/// `Σ_{j ≤ min(t,k)} (−1)^j C(k,j) C(j+t,j) C(r−j−1, r−t−1)`.
pub(crate) fn alternating_sum(t: usize, k: usize, r: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k.min(t) {
        let term = choose(k as u64, j as u64) * choose((j + t) as u64, j as u64) * choose((r - j - 1) as u64, (r - t - 1) as u64);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Entry `(q, k)` of `(WWᵀ)⁻¹W` from the Stirling-number closed form.
pub fn w_dagger_closed(q: usize, k: usize, p: usize, r: usize) -> Result<Rational> {
    w_dagger_with(W_DAGGER_CONVENTION, q, k, p, r)
}

pub fn w_dagger_with(conv: DaggerConvention, q: usize, k: usize, p: usize, r: usize) -> Result<Rational> {
    if p == 0 || r < 2 * p {
        return domain(format!("need p >= 1 and r >= 2p, got p={p} r={r}"));
    }
    if q >= 2 * p || k >= r {
        return domain(format!("entry ({q}, {k}) outside a {}x{r} matrix", 2 * p));
    }
    let mut total = Rational::zero();
    for w in q..2 * p {
        let mut stirling = rising_factorial_coeffs(w as u64 + 1).swap_remove(q + 1);
        if conv.signed_stirling && (w - q) % 2 == 1 {
            stirling = -stirling;
        }
        if stirling.is_zero() {
            continue;
        }
        let mut inner = Rational::zero();
        for t in w..2 * p {
            let num = choose((t + w) as u64, w as u64) * choose((r - w - 1) as u64, (r - t - 1) as u64);
            let den = choose(2 * t as u64, t as u64) * choose((r + t) as u64, (2 * t + 1) as u64);
            let mut a = alternating_sum(t, k, r);
            if conv.shifted_inner_sign {
                a = -a;
            }
            inner += Rational::new(num * a, den);
        }
        total += Rational::new(stirling, factorial(w as u64)) * inner;
    }
    Ok(if q % 2 == 1 { -total } else { total })
}

/// `X = (VVᵀ)⁻¹(WWᵀ) − I`, so that `(VVᵀ)⁻¹ = (I + X)(WWᵀ)⁻¹`.
pub fn neumann_x(spec: &VandermondeSpec) -> Result<RatMatrix> {
    let vv = build_v(spec).gram();
    let ww = build_w(spec.p, spec.r)?.gram();
    vv.invert()?.mul(&ww)?.sub(&RatMatrix::identity(2 * spec.p))
}

/// Float estimate of `κ₂(WWᵀ)` next to the reference `(2p)²/(4p−1)·r^{4p−2}`.
///
/// `WWᵀ` is symmetric positive definite, so `κ₂ = ‖WWᵀ‖₂‖(WWᵀ)⁻¹‖₂`; the
/// inverse is exact and only the norms are estimated.
pub fn gram_condition_diagnostic(p: usize, r: usize) -> Result<(f64, f64)> {
    let ww = build_w(p, r)?.gram();
    let inv = ww.invert()?;
    let tol = 1e-13;
    let kappa = ww.spectral_norm_estimate(tol)? * inv.spectral_norm_estimate(tol)?;
    let p = p as f64;
    let reference = (2.0 * p).powi(2) / (4.0 * p - 1.0) * (r as f64).powf(4.0 * p - 2.0);
    Ok((kappa, reference))
}

/// `‖X‖₂` ceiling `8p²s^{4p−1}/(r − 8p²s^{4p−1})`; `None` when the
/// denominator is not positive.
pub fn neumann_bound(p: usize, s: usize, r: usize) -> Option<f64> {
    let c = 8.0 * (p * p) as f64 * (s as f64).powi(4 * p as i32 - 1);
    let den = r as f64 - c;
    (den > 0.0).then(|| c / den)
}

/// Reconstruct `(VVᵀ)⁻¹` from `X` and `(WWᵀ)⁻¹`.
pub fn reconstruct_vv_inverse(spec: &VandermondeSpec, x: &RatMatrix) -> Result<RatMatrix> {
    let ww_inv = build_w(spec.p, spec.r)?.gram().invert()?;
    RatMatrix::identity(2 * spec.p).add(x)?.mul(&ww_inv)
}
