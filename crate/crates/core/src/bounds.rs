//! The alternating binomial sum
//! `A(t, k, r) = Σ_{j ≤ min(k,t)} (−1)^j C(k,j) C(j+t,j) C(r−j−1, r−t−1)`,
//! its residue representation, the bounds claimed for it, and the
//! coefficients `c_n^γ` that control its normalised size.
//!
//! Every comparison is exact; only the precondition thresholds that involve
//! the irrational constant `L` use floats.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use serde::Serialize;

use crate::adjust::lemma_l;
use crate::combin::{binomial_unchecked, choose, factorial};
use crate::error::{domain, Result};
use crate::scalar::{big, format_rational, int, Rational};
use crate::vander::alternating_sum;

/// `A(t, k, r)` by direct summation.
pub fn a_sum(t: usize, k: usize, r: usize) -> Result<BigInt> {
    if r == 0 || t >= r {
        return domain(format!("A(t, k, r) needs r >= 1 and t <= r - 1, got t={t} r={r}"));
    }
    Ok(alternating_sum(t, k, r))
}

/// Residue contribution of the pole structure at `x = 1`, `m`-th Leibniz
/// term: `C(t,m)(r−1−k+m)!(t+k−m)! / (t!² (r−t−1−k+m)! (k−m)!)`, zero when a
/// factorial argument in the denominator is negative.
pub fn residue_term(m: usize, t: usize, k: usize, r: usize) -> Rational {
    if m > k || r + m < t + 1 + k {
        return Rational::zero();
    }
    let num = choose(t as u64, m as u64) * factorial((r + m - 1 - k) as u64) * factorial((t + k - m) as u64);
    let ft = factorial(t as u64);
    let den = &ft * &ft * factorial((r + m - t - 1 - k) as u64) * factorial((k - m) as u64);
    Rational::new(num, den)
}

fn check_dm_domain(t: usize, k: usize, r: usize) -> Result<()> {
    if r == 0 || t >= r || k >= r {
        return domain(format!("need 0 <= t, k <= r - 1, got t={t} k={k} r={r}"));
    }
    Ok(())
}

/// `A(t, k, r) = Σ_{m ≤ t} (−1)^m residue_term(m, t, k, r)`.
pub fn a_via_dm(t: usize, k: usize, r: usize) -> Result<Rational> {
    check_dm_domain(t, k, r)?;
    Ok(alternating(t, |m| residue_term(m, t, k, r)))
}

/// The simplified term `D_m = (r−1−k+m)!(t+k−m)! / ((r−t−1)! t! m! (t−m)!)`.
///
/// This form drives the monotonicity argument (`D_{m+1}/D_m` crosses `1`
/// between `k = q` and `k = r−1−q`), but `−Σ(−1)^m D_m` does not reproduce
/// `A` in general; see [`a_via_printed_dm`].
pub fn d_m(m: usize, r: usize, t: usize, k: usize) -> Result<Rational> {
    check_dm_domain(t, k, r)?;
    if m > t {
        return domain(format!("need m <= t, got m={m} t={t}"));
    }
    let num = factorial((r - 1 - k + m) as u64) * factorial((t + k - m) as u64);
    let den = factorial((r - t - 1) as u64) * factorial(t as u64) * factorial(m as u64) * factorial((t - m) as u64);
    Ok(Rational::new(num, den))
}

/// `−Σ_{m ≤ t} (−1)^m D_m(r, t, k)` with the simplified [`d_m`].
pub fn a_via_printed_dm(t: usize, k: usize, r: usize) -> Result<Rational> {
    check_dm_domain(t, k, r)?;
    Ok(-alternating(t, |m| d_m(m, r, t, k).expect("domain checked above")))
}

fn alternating(t: usize, term: impl Fn(usize) -> Rational) -> Rational {
    (0..=t).fold(Rational::zero(), |acc, m| if m % 2 == 0 { acc + term(m) } else { acc - term(m) })
}

/// Which claim a record checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundCase {
    Lemma3a,
    Lemma3b,
    Lemma3c,
    Lemma4,
    S4,
}

impl fmt::Display for BoundCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundCase::Lemma3a => "lemma3a",
            BoundCase::Lemma3b => "lemma3b",
            BoundCase::Lemma3c => "lemma3c",
            BoundCase::Lemma4 => "lemma4",
            BoundCase::S4 => "s4",
        })
    }
}

/// The relation a record asserts between `lhs` and `rhs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Relation {
    Le,
    Lt,
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Eq => "==",
        }
    }
}

/// One exact comparison `lhs ⋈ rhs` at named parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundCheckRecord {
    pub case: BoundCase,
    pub params: Vec<(&'static str, Rational)>,
    pub lhs: Rational,
    pub rhs: Rational,
    pub relation: Relation,
    pub ok: bool,
}

impl BoundCheckRecord {
    pub fn new(case: BoundCase, params: Vec<(&'static str, Rational)>, lhs: Rational, rhs: Rational, relation: Relation) -> Self {
        let ok = relation.holds(&lhs, &rhs);
        Self { case, params, lhs, rhs, relation, ok }
    }

    /// `name=value` pairs joined by `;`, values as `num/den` unless integral.
    pub fn parameters(&self) -> String {
        self.params
            .iter()
            .map(|(name, v)| if v.is_integer() { format!("{name}={}", v.numer()) } else { format!("{name}={}", format_rational(v)) })
            .collect::<Vec<_>>()
            .join(";")
    }

    /// Total order by case, then parameter values, then relation.
    pub fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.case
            .cmp(&other.case)
            .then_with(|| self.params.iter().map(|p| &p.1).cmp(other.params.iter().map(|p| &p.1)))
            .then_with(|| self.relation.cmp(&other.relation))
    }
}

fn n(v: usize) -> Rational {
    int(v as i64)
}

/// `|A(t,k,r)| ≤ 4 (q/(r−1−q))^{q−t} C(r−1, t)` for `q ≥ t ≥ 2`,
/// `r ≥ q + 2q²`, `q ≤ k ≤ r−q−1`.
pub fn check_lemma3a(q: usize, t: usize, k: usize, r: usize) -> Result<BoundCheckRecord> {
    if t < 2 || q < t || r < q + 2 * q * q || k < q || k + q + 1 > r {
        return domain(format!("lemma3a needs q >= t >= 2, r >= q + 2q^2, q <= k <= r - q - 1; got q={q} t={t} k={k} r={r}"));
    }
    let lhs = big(a_sum(t, k, r)?.abs());
    let ratio = Rational::new(BigInt::from(q), BigInt::from(r - 1 - q));
    let rhs = int(4) * Pow::pow(ratio, (q - t) as u32) * big(choose((r - 1) as u64, t as u64));
    Ok(BoundCheckRecord::new(
        BoundCase::Lemma3a,
        vec![("q", n(q)), ("t", n(t)), ("k", n(k)), ("r", n(r))],
        lhs,
        rhs,
        Relation::Le,
    ))
}

/// `|A(t,k,r)| < C(r−1, t)` for `t ≥ 2`, `r ≥ 2t³ + t`, `k < t`.
pub fn check_lemma3b(t: usize, k: usize, r: usize) -> Result<BoundCheckRecord> {
    if t < 2 || r < 2 * t * t * t + t || k >= t {
        return domain(format!("lemma3b needs t >= 2, r >= 2t^3 + t, k < t; got t={t} k={k} r={r}"));
    }
    let lhs = big(a_sum(t, k, r)?.abs());
    let rhs = big(choose((r - 1) as u64, t as u64));
    Ok(BoundCheckRecord::new(
        BoundCase::Lemma3b,
        vec![("t", n(t)), ("k", n(k)), ("r", n(r))],
        lhs,
        rhs,
        Relation::Lt,
    ))
}

/// `2Lᵗt^{1.5}` in floats.
pub fn lemma3c_radius(t: usize) -> f64 {
    2.0 * lemma_l().powi(t as i32) * (t as f64).powf(1.5)
}

/// Smallest integer `r` with `r ≥ 2Lᵗt^{1.5}`.
pub fn lemma3c_threshold(t: usize) -> usize {
    lemma3c_radius(t).ceil() as usize
}

/// `|A(t,k,r)| < 3 C(r−1, t)` for `t ≥ 2`, `r ≥ 2Lᵗt^{1.5}`, `t ≤ k ≤ r−1`.
pub fn check_lemma3c(t: usize, k: usize, r: usize) -> Result<BoundCheckRecord> {
    if t < 2 || (r as f64) < lemma3c_radius(t) || k < t || k >= r {
        return domain(format!("lemma3c needs t >= 2, r >= 2L^t t^1.5, t <= k <= r - 1; got t={t} k={k} r={r}"));
    }
    let lhs = big(a_sum(t, k, r)?.abs());
    let rhs = int(3) * big(choose((r - 1) as u64, t as u64));
    Ok(BoundCheckRecord::new(
        BoundCase::Lemma3c,
        vec![("t", n(t)), ("k", n(k)), ("r", n(r))],
        lhs,
        rhs,
        Relation::Lt,
    ))
}

/// `c_n^γ = Σ_{j ≤ n} C(n, n−j) C(−n−1, j) γ^j`, the coefficient of `xⁿ` in
/// `(1+x)ⁿ(1+γx)^{−n−1}`.
pub fn c_gamma(n: usize, gamma: &Rational) -> Result<Rational> {
    if n == 0 || gamma.is_negative() || *gamma > Rational::one() {
        return domain(format!("c_gamma needs n >= 1 and 0 <= gamma <= 1, got n={n} gamma={}", format_rational(gamma)));
    }
    let mut power = Rational::one();
    let mut acc = Rational::zero();
    for j in 0..=n {
        let coeff = choose(n as u64, (n - j) as u64) * binomial_unchecked(-(n as i64) - 1, j as u64);
        acc += big(coeff) * &power;
        power *= gamma;
    }
    Ok(acc)
}

/// For each `γ`: `|c_n^γ| ≤ 2`, and `c_n^γ = (−1)ⁿ c_n^{1−γ}`.
pub fn check_lemma4(n: usize, gamma_grid: &[Rational]) -> Result<Vec<BoundCheckRecord>> {
    let mut out = Vec::with_capacity(2 * gamma_grid.len());
    for gamma in gamma_grid {
        let c = c_gamma(n, gamma)?;
        let mirror = c_gamma(n, &(Rational::one() - gamma))?;
        let mirror = if n.is_multiple_of(2) { mirror } else { -mirror };
        let params = vec![("n", int(n as i64)), ("gamma", gamma.clone()), ("check", int(0))];
        out.push(BoundCheckRecord::new(BoundCase::Lemma4, params, c.abs(), int(2), Relation::Le));
        let params = vec![("n", int(n as i64)), ("gamma", gamma.clone()), ("check", int(1))];
        out.push(BoundCheckRecord::new(BoundCase::Lemma4, params, c, mirror, Relation::Eq));
    }
    Ok(out)
}

/// `A/C(r−1,t) = S₃ + S₄` with `S₃ = c_t^{(k+1)/r}`.
pub fn s3_s4_split(t: usize, k: usize, r: usize) -> Result<(Rational, Rational)> {
    if t == 0 || k >= r || t >= r {
        return domain(format!("split needs t >= 1, 0 <= k <= r - 1, t <= r - 1; got t={t} k={k} r={r}"));
    }
    let s3 = c_gamma(t, &Rational::new(BigInt::from(k + 1), BigInt::from(r)))?;
    let normalised = Rational::new(a_sum(t, k, r)?, choose((r - 1) as u64, t as u64));
    let s4 = normalised - &s3;
    Ok((s3, s4))
}

/// `|S₃| ≤ 2` and `|S₄| < 1` for t ≥ 2 and r above the `lemma3c_radius` threshold.
pub fn check_s3_s4(t: usize, k: usize, r: usize) -> Result<[BoundCheckRecord; 2]> {
    if t < 2 || (r as f64) < lemma3c_radius(t) || k >= r {
        return domain(format!("S3/S4 bounds need t >= 2, r >= 2L^t t^1.5, k <= r - 1; got t={t} k={k} r={r}"));
    }
    let (s3, s4) = s3_s4_split(t, k, r)?;
    let params = || vec![("t", n(t)), ("k", n(k)), ("r", n(r))];
    Ok([
        BoundCheckRecord::new(BoundCase::Lemma4, params(), s3.abs(), int(2), Relation::Le),
        BoundCheckRecord::new(BoundCase::S4, params(), s4.abs(), int(1), Relation::Lt),
    ])
}

/// For `k = q` the terms `D_m` increase in `m`; for `k = r−1−q` they
/// decrease. Returns the number of violated ratio comparisons.
pub fn dm_ratio_violations(q: usize, t: usize, r: usize) -> Result<usize> {
    if t < 2 || q < t || r < q + 2 * q * q {
        return domain(format!("ratio check needs q >= t >= 2 and r >= q + 2q^2; got q={q} t={t} r={r}"));
    }
    let mut bad = 0;
    for m in 0..t {
        if d_m(m + 1, r, t, q)? <= d_m(m, r, t, q)? {
            bad += 1;
        }
        let far = r - 1 - q;
        if d_m(m + 1, r, t, far)? >= d_m(m, r, t, far)? {
            bad += 1;
        }
    }
    Ok(bad)
}
