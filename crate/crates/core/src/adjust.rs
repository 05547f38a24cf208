//! Cosine polynomials `Σ_{k=s}^{r} b_k cos 2kx` whose power-basis expansion
//! starts with prescribed coefficients `a_0, a_1, …, a_{p−1}` at
//! `cos⁰x, cos²x, …, cos^{2p−2}x`, followed by `cos^{2p}x · g(cos x)`.
//!
//! The coefficients solve the `2p`-row system `T b = a` with the minimum-`l₂`
//! right inverse `b = Tᵀ(TTᵀ)⁻¹a`, where `T = Y⁻¹ Ñ V S` factors the rows
//! `(t_{2i}^{2k})_{k=s..r}` through a Vandermonde matrix over the nodes `s..=r`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cheb::{trig_to_power, y_value};
use crate::error::{domain, Error, Result};
use crate::matrix::RatMatrix;
use crate::poly::{AnyPoly, PowerPoly, TrigPoly};
use crate::scalar::{big, format_rational, int, Rational};
use crate::vander::{build_v, VandermondeSpec};

/// `L = (√2+1)^{1+1/√2} (√2−1)^{−1+1/√2} 2^{−1/(2√2)} ≈ 4.5616`.
pub fn lemma_l() -> f64 {
    let rt2 = std::f64::consts::SQRT_2;
    (rt2 + 1.0).powf(1.0 + 1.0 / rt2) * (rt2 - 1.0).powf(-1.0 + 1.0 / rt2) * 2f64.powf(-1.0 / (2.0 * rt2))
}

/// Constants of the norm certificate for a given `(p, s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Constants {
    pub l: f64,
    /// `max(16p²s^{4p−1}, 8L^{2p−1}p³)`.
    pub c1: f64,
    /// `⌈c1⌉`, the smallest `r` for which the norm bound is claimed.
    pub c1_threshold: usize,
    /// `2¹⁶ p^{4p+9} s^{4p−1}`, exact.
    pub c2: BigInt,
}

pub fn constants(p: usize, s: usize) -> Result<Constants> {
    if p == 0 || s == 0 {
        return domain(format!("constants need p >= 1 and s >= 1, got p={p} s={s}"));
    }
    let l = lemma_l();
    let (pf, sf) = (p as f64, s as f64);
    let c1 = (16.0 * pf * pf * sf.powi(4 * p as i32 - 1)).max(8.0 * l.powi(2 * p as i32 - 1) * pf.powi(3));
    let c2 = (BigInt::one() << 16) * BigInt::from(p).pow(4 * p as u32 + 9) * BigInt::from(s).pow(4 * p as u32 - 1);
    Ok(Constants { l, c1, c1_threshold: c1.ceil() as usize, c2 })
}

/// `2p×2p` matrix with `(2k, 2u) = 2^{−2k} y_k^{2u}`, identity on the odd
/// rows and columns, zero elsewhere.
pub fn build_y(p: usize) -> Result<RatMatrix> {
    if p == 0 {
        return domain("build_y needs p >= 1");
    }
    Ok(RatMatrix::from_fn(2 * p, 2 * p, |i, j| match (i % 2, j % 2) {
        (1, 1) if i == j => int(1),
        (0, 0) => y_value(i / 2, j / 2) / big(BigInt::one() << i),
        _ => int(0),
    }))
}

/// `diag((−1)^{offset+j})` for `j < count`.
pub fn build_signs(count: usize, offset: usize) -> Result<RatMatrix> {
    if count == 0 {
        return domain("build_signs needs count >= 1");
    }
    Ok(RatMatrix::diagonal((0..count).map(|j| int(if (offset + j).is_multiple_of(2) { 1 } else { -1 })).collect()))
}

/// `diag` with `(−1)^i` at row `2i` and `1` at every odd row.
pub fn tilde_n(p: usize) -> RatMatrix {
    RatMatrix::diagonal(
        (0..2 * p)
            .map(|i| int(if i % 2 == 1 || (i / 2) % 2 == 0 { 1 } else { -1 }))
            .collect(),
    )
}

/// A request for `p` prescribed coefficients using frequencies `2s..=2r`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjustmentProblem {
    pub p: usize,
    pub s: usize,
    pub r: usize,
    pub a: Vec<Rational>,
}

impl AdjustmentProblem {
    pub fn new(p: usize, s: usize, r: usize, a: Vec<Rational>) -> Result<Self> {
        VandermondeSpec::new(p, s, r)?;
        if a.len() != p {
            return domain(format!("expected {p} target coefficients, got {}", a.len()));
        }
        Ok(Self { p, s, r, a })
    }

    pub fn spec(&self) -> VandermondeSpec {
        VandermondeSpec { p: self.p, s: self.s, r: self.r }
    }

    pub fn node_count(&self) -> usize {
        self.r - self.s + 1
    }

    /// `(a_0, 0, a_1, 0, …, a_{p−1}, 0)`.
    pub fn target_vector(&self) -> Vec<Rational> {
        self.a.iter().flat_map(|v| [v.clone(), Rational::zero()]).collect()
    }

    pub fn with_targets(&self, a: Vec<Rational>) -> Result<Self> {
        Self::new(self.p, self.s, self.r, a)
    }
}

/// `T = Y⁻¹ Ñ V S` with `S = diag((−1)^k)`, `k = s..=r`. Row `2i` equals
/// `(t_{2i}^{2k})_{k=s..r}`.
pub fn build_t_full(problem: &AdjustmentProblem) -> Result<RatMatrix> {
    let y_inv = build_y(problem.p)?.invert()?;
    let v = build_v(&problem.spec());
    let left = y_inv.mul(&tilde_n(problem.p))?;
    let lv = left.mul(&v)?;
    Ok(apply_node_signs(lv, problem.s))
}

/// Right-multiply by `diag((−1)^{s+j})` without forming the diagonal.
fn apply_node_signs(mut m: RatMatrix, s: usize) -> RatMatrix {
    for i in 0..m.rows() {
        for j in ((1 - s % 2)..m.cols()).step_by(2) {
            let v = std::mem::take(&mut m[(i, j)]);
            m[(i, j)] = -v;
        }
    }
    m
}

/// Everything produced for one problem, with the exact checks already run.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjustmentCertificate {
    pub p: usize,
    pub s: usize,
    pub r: usize,
    pub a: Vec<Rational>,
    /// Coefficient of `cos 2kx` at index `k − s`.
    pub b: Vec<Rational>,
    pub g: PowerPoly,
    pub l1_b: Rational,
    pub l1_a: Rational,
    /// `C₂(p, s)/r · Σ|a_t|`.
    pub bound: Rational,
    pub c1: f64,
    pub c1_threshold: usize,
    pub identity_ok: bool,
    pub norm_ok: bool,
    pub deg_g: Option<usize>,
    /// `deg g < 2r − 2p` (only possible when the top coefficient vanishes).
    pub deg_g_short: bool,
}

#[derive(Serialize)]
struct CertificateJson {
    p: usize,
    s: usize,
    r: usize,
    a: Vec<String>,
    b: Vec<String>,
    g: serde_json::Value,
    l1_b: String,
    l1_a: String,
    bound: String,
    identity_ok: bool,
    norm_ok: bool,
    c1: f64,
    c1_threshold: usize,
    deg_g: Option<usize>,
    deg_g_short: bool,
}

impl AdjustmentCertificate {
    /// The cosine polynomial `Σ b_k cos 2kx`.
    pub fn trig_poly(&self) -> TrigPoly {
        TrigPoly::from_pairs(self.b.iter().enumerate().map(|(j, v)| (2 * (self.s + j), v.clone())))
    }

    pub fn to_value(&self) -> serde_json::Value {
        let strings = |v: &[Rational]| v.iter().map(format_rational).collect::<Vec<_>>();
        serde_json::to_value(CertificateJson {
            p: self.p,
            s: self.s,
            r: self.r,
            a: strings(&self.a),
            b: strings(&self.b),
            g: AnyPoly::Power(self.g.clone()).to_value(),
            l1_b: format_rational(&self.l1_b),
            l1_a: format_rational(&self.l1_a),
            bound: format_rational(&self.bound),
            identity_ok: self.identity_ok,
            norm_ok: self.norm_ok,
            c1: self.c1,
            c1_threshold: self.c1_threshold,
            deg_g: self.deg_g,
            deg_g_short: self.deg_g_short,
        })
        .expect("certificate JSON is always serializable")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("certificate JSON is always serializable")
    }

    pub fn summary(&self) -> String {
        format!(
            "p={} s={} r={}: sum|b_k| = {:.6e}, C2/r * sum|a_t| = {:.6e}, identity_ok={}, norm_ok={}",
            self.p,
            self.s,
            self.r,
            self.l1_b.to_f64().unwrap_or(f64::NAN),
            self.bound.to_f64().unwrap_or(f64::NAN),
            self.identity_ok,
            self.norm_ok,
        )
    }
}

/// `b = Tᵀ(TTᵀ)⁻¹a` for each target vector against the same `T`.
pub fn solve_coefficients(t: &RatMatrix, targets: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let gram_inv = t.gram().invert()?;
    let tt = t.transpose();
    targets
        .iter()
        .map(|a| {
            let c = gram_inv.mul_vec(a)?;
            tt.mul_vec(&c)
        })
        .collect()
}

pub fn construct_b(problem: &AdjustmentProblem) -> Result<AdjustmentCertificate> {
    let t = build_t_full(problem)?;
    let mut all = construct_many_with(problem, &t, std::slice::from_ref(&problem.a))?;
    Ok(all.remove(0))
}

/// Certificates for several target vectors sharing `(p, s, r)`; `T` and the
/// Gram inverse are built once.
pub fn construct_many(problem: &AdjustmentProblem, targets: &[Vec<Rational>]) -> Result<Vec<AdjustmentCertificate>> {
    let t = build_t_full(problem)?;
    construct_many_with(problem, &t, targets)
}

fn construct_many_with(
    problem: &AdjustmentProblem,
    t: &RatMatrix,
    targets: &[Vec<Rational>],
) -> Result<Vec<AdjustmentCertificate>> {
    let problems: Vec<AdjustmentProblem> = targets.iter().map(|a| problem.with_targets(a.clone())).collect::<Result<_>>()?;
    let rhs: Vec<Vec<Rational>> = problems.iter().map(AdjustmentProblem::target_vector).collect();
    let solutions = solve_coefficients(t, &rhs)?;
    let consts = constants(problem.p, problem.s)?;
    problems
        .into_iter()
        .zip(rhs)
        .zip(solutions)
        .map(|((prob, target), b)| certify(&prob, t, &target, b, &consts))
        .collect()
}

fn certify(
    problem: &AdjustmentProblem,
    t: &RatMatrix,
    target: &[Rational],
    b: Vec<Rational>,
    consts: &Constants,
) -> Result<AdjustmentCertificate> {
    let (p, s, r) = (problem.p, problem.s, problem.r);
    if t.mul_vec(&b)? != target {
        return Err(Error::IdentityViolation(format!("T·b != a for p={p} s={s} r={r}")));
    }
    let trig = TrigPoly::from_pairs(b.iter().enumerate().map(|(j, v)| (2 * (s + j), v.clone())));
    let mut diff = trig_to_power(&trig);
    for (t_idx, v) in problem.a.iter().enumerate() {
        diff.add_term(2 * t_idx, -v.clone());
    }
    if !diff.has_parity(0) {
        return Err(Error::IdentityViolation(format!("odd powers present for p={p} s={s} r={r}")));
    }
    let (g, rem) = diff.div_rem_monomial(2 * p);
    if !rem.is_zero() {
        return Err(Error::IdentityViolation(format!(
            "expansion is not a_t at y^(2t) plus y^(2p)·g for p={p} s={s} r={r}: remainder has {} terms",
            rem.len()
        )));
    }

    let l1_b = b.iter().fold(Rational::zero(), |acc, v| acc + v.abs());
    let l1_a = problem.a.iter().fold(Rational::zero(), |acc, v| acc + v.abs());
    let bound = Rational::new(consts.c2.clone(), BigInt::from(r)) * &l1_a;
    let norm_ok = l1_b < bound;
    let deg_g = g.degree();
    let deg_g_short = deg_g != Some(2 * r - 2 * p);
    Ok(AdjustmentCertificate {
        p,
        s,
        r,
        a: problem.a.clone(),
        b,
        g,
        l1_b,
        l1_a,
        bound,
        c1: consts.c1,
        c1_threshold: consts.c1_threshold,
        identity_ok: true,
        norm_ok,
        deg_g,
        deg_g_short,
    })
}

/// `M = Yᵀ Ñ (VVᵀ)⁻¹ V S`, the `2p × (r−s+1)` matrix with `bᵀ = aᵀM` for the
/// interleaved target `a`.
pub fn norm_matrix(spec: &VandermondeSpec) -> Result<RatMatrix> {
    let v = build_v(spec);
    let left = build_y(spec.p)?.transpose().mul(&tilde_n(spec.p))?;
    let rows = left.mul(&v.gram().invert()?)?.mul(&v)?;
    Ok(apply_node_signs(rows, spec.s))
}

/// `‖M‖` as the maximal row `l₁` sum of [`norm_matrix`]; only claimed to be
/// below `C₂(p, s)/r` once `r ≥ ⌈C₁(p, s)⌉`.
pub fn norm_matrix_diagnostic(spec: &VandermondeSpec) -> Result<Rational> {
    let consts = constants(spec.p, spec.s)?;
    if spec.r < consts.c1_threshold {
        return domain(format!(
            "norm bound is only claimed for r >= {} (got r={})",
            consts.c1_threshold, spec.r
        ));
    }
    Ok(norm_matrix(spec)?.row_l1_max())
}

/// `C₂(p, s)/r`.
pub fn norm_bound(p: usize, s: usize, r: usize) -> Result<Rational> {
    Ok(Rational::new(constants(p, s)?.c2, BigInt::from(r)))
}
