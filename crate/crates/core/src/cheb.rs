//! Chebyshev coefficient matrices and conversion between the cosine and
//! power bases.
//!
//! `t_m^k` is the coefficient of `x^m` in `T_k(x)`. `T_n` collects these for
//! `m, k < n`; `T_{k,l}` is the `l×l` block with entry `(i, j) = t_i^{k+j}`.
//! Both inverses are available in closed form and are checked against exact
//! elimination in the tests.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combin::{binomial_unchecked, choose, factorial};
use crate::error::{domain, Result};
use crate::matrix::RatMatrix;
use crate::poly::{PowerPoly, TrigPoly};
use crate::scalar::{big, Rational, Ring, Scalar};

/// Coefficient of `x^m` in `T_k(x)`, with `t_0^0 = 1`.
pub fn cheb_entry(m: usize, k: usize) -> BigInt {
    if m > k || (k - m) % 2 == 1 {
        return BigInt::zero();
    }
    if k == 0 {
        return BigInt::one();
    }
    let half = (k + m) / 2;
    let mag = BigInt::from(k) * (BigInt::one() << m) * choose(half as u64, m as u64) / BigInt::from(k + m);
    if ((k - m) / 2) % 2 == 1 {
        -mag
    } else {
        mag
    }
}

/// Upper-triangular `n×n` matrix of `t_m^k`.
pub fn build_t(n: usize) -> Result<RatMatrix> {
    if n == 0 {
        return domain("build_t needs n >= 1");
    }
    Ok(RatMatrix::from_fn(n, n, |m, k| big(cheb_entry(m, k))))
}

/// Entry `h_i^j` of `T_n⁻¹`; independent of `n` for `n > max(i, j)`.
pub fn inv_tn_entry(i: usize, j: usize) -> Rational {
    if (i + j) % 2 == 1 || i > j {
        return Rational::zero();
    }
    let (half_i, half_j) = (i / 2, j / 2);
    // Only the even columns double their non-constant terms; in odd columns
    // every entry is 2^{-2j}·C(2j+1, j−i).
    let doubled = usize::from(j.is_multiple_of(2) && half_i != 0);
    let num = choose(j as u64, (half_j - half_i) as u64) << doubled;
    Rational::new(num, BigInt::one() << (2 * half_j))
}

fn check_even_k(k: usize) -> Result<()> {
    if k % 2 == 1 {
        return domain(format!("block offset k must be even, got {k}"));
    }
    Ok(())
}

/// `l×l` matrix with entry `(i, j) = t_i^{k+j}`, `k` even and positive.
pub fn build_tkl(k: usize, l: usize) -> Result<RatMatrix> {
    check_even_k(k)?;
    if k == 0 || l == 0 {
        return domain("build_tkl needs k >= 2 and l >= 1");
    }
    Ok(RatMatrix::from_fn(l, l, |i, j| big(cheb_entry(i, k + j))))
}

fn sign(exp: usize) -> BigInt {
    if exp.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn product_except(range: std::ops::RangeInclusive<usize>, skip: usize, f: impl Fn(usize) -> BigInt) -> BigInt {
    range.filter(|&d| d != skip).fold(BigInt::one(), |acc, d| acc * f(d))
}

/// Entry `g_i^j` of `T_{k,l}⁻¹` from the closed form.
///
/// `k = 0` is the plain triangular matrix `T_l` and is answered by
/// [`inv_tn_entry`].
pub fn inv_tkl_entry(k: usize, l: usize, i: usize, j: usize) -> Result<Rational> {
    check_even_k(k)?;
    if i >= l || j >= l {
        return domain(format!("index ({i}, {j}) outside a {l}x{l} block"));
    }
    if k == 0 {
        return Ok(inv_tn_entry(i, j));
    }
    if (i + j) % 2 == 1 {
        return Ok(Rational::zero());
    }
    let half_k = k / 2;
    let sq = |x: i64| BigInt::from(x * x);

    if i.is_multiple_of(2) {
        let (i, j) = (i / 2, j / 2);
        let alpha = l.div_ceil(2) - 1;
        let num = sign(alpha + j + half_k)
            * factorial(2 * j as u64)
            * factorial((k + i - 1) as u64)
            * BigInt::from(k + 2 * i);
        let den = (BigInt::from(4u32).pow(j as u32))
            * factorial(i as u64)
            * factorial((alpha - i) as u64)
            * factorial((alpha + k + i) as u64);
        let sum = (0..=j).fold(Rational::zero(), |acc, b| {
            let b = b as i64;
            let top = product_except(0..=alpha, i, |d| sq(b) - sq(half_k as i64 + d as i64));
            let bottom = product_except(0..=j, b as usize, |d| sq(b) - sq(d as i64));
            acc + Rational::new(top, bottom)
        });
        Ok(Rational::new(num, den) * sum)
    } else {
        let (i, j) = ((i - 1) / 2, (j - 1) / 2);
        let beta = l / 2 - 1;
        let num = sign(beta + j + half_k) * factorial(2 * j as u64 + 1) * factorial((k + i) as u64);
        let den = (BigInt::from(4u32).pow(beta as u32))
            * factorial(i as u64)
            * factorial((beta - i) as u64)
            * factorial((beta + k + i + 1) as u64);
        let sum = (0..=j).fold(Rational::zero(), |acc, b| {
            let odd_b = 2 * b as i64 + 1;
            let top = product_except(0..=beta, i, |d| sq(odd_b) - sq((k + 2 * d + 1) as i64));
            let bottom = product_except(0..=j, b, |d| sq(odd_b) - sq(2 * d as i64 + 1));
            acc + Rational::new(top, bottom)
        });
        Ok(Rational::new(num, den) * sum)
    }
}

/// Clenshaw summation of `Σ c_k φ_k` in the variable `w = 4y² − 2`, where
/// `φ_{k+1} = w φ_k − φ_{k−1}`. Returns the `β_0`, `β_1` polynomials in `w`.
fn clenshaw_in_w<R: Ring>(c: &[R]) -> (Vec<R>, Vec<R>) {
    let mut b1: Vec<R> = Vec::new();
    let mut b2: Vec<R> = Vec::new();
    for ck in c.iter().rev() {
        // β_k = c_k + w β_{k+1} − β_{k+2}, written into b2's storage.
        let len = b1.len() + 1;
        b2.resize(len, R::zero());
        for x in b2.iter_mut() {
            *x = -std::mem::replace(x, R::zero());
        }
        for (i, v) in b1.iter().enumerate() {
            b2[i + 1] += v;
        }
        b2[0] += ck;
        std::mem::swap(&mut b1, &mut b2);
    }
    (b1, b2)
}

/// Rewrite `P(w)` with `w = 4u − 2` as a polynomial in `u`.
fn substitute_w<R: Ring>(mut p: Vec<R>) -> Vec<R> {
    // w = 2v with v = 2u − 1: scale by 2^j, shift v ↦ v' − 1, then v' = 2u.
    let two = R::from_i64(2);
    let mut pow = R::one();
    for c in p.iter_mut() {
        *c = std::mem::replace(c, R::zero()) * pow.clone();
        pow = pow * two.clone();
    }
    let n = p.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let (lo, hi) = p.split_at_mut(j + 1);
            lo[j] -= &hi[0];
        }
    }
    let mut pow = R::one();
    for c in p.iter_mut() {
        *c = std::mem::replace(c, R::zero()) * pow.clone();
        pow = pow * two.clone();
    }
    p
}

/// Monomial coefficients of `Σ a_k T_k(y)` for dense `a`.
///
/// Even and odd parts are summed separately: `T_{2k}(y) = T_k(2y² − 1)` and
/// `T_{2k+1}(y)/y` both satisfy the three-term recurrence in `w = 4y² − 2`,
/// so each part needs only additions followed by one Taylor shift.
pub fn expand_chebyshev<R: Ring>(a: &[R]) -> Vec<R> {
    let mut out = vec![R::zero(); a.len()];
    if a.is_empty() {
        return out;
    }

    let even: Vec<R> = a.iter().step_by(2).cloned().collect();
    let (b0, b1) = clenshaw_in_w(&even);
    // 2S = 2β_0 − wβ_1 (φ_0 = 1, φ_1 = w/2).
    let mut twice = vec![R::zero(); b0.len().max(b1.len() + 1)];
    for (i, v) in b0.iter().enumerate() {
        twice[i] += v;
        twice[i] += v;
    }
    for (i, v) in b1.iter().enumerate() {
        twice[i + 1] -= v;
    }
    let two = R::from_i64(2);
    for (i, v) in substitute_w(twice).into_iter().enumerate() {
        if 2 * i < out.len() {
            out[2 * i] = v / two.clone();
        }
    }

    let odd: Vec<R> = a.iter().skip(1).step_by(2).cloned().collect();
    if !odd.is_empty() {
        let (b0, b1) = clenshaw_in_w(&odd);
        // S/y = β_0 − β_1 (φ_0 = 1, φ_1 = w − 1).
        let mut s = b0;
        for (i, v) in b1.iter().enumerate() {
            s[i] -= v;
        }
        for (i, v) in substitute_w(s).into_iter().enumerate() {
            if 2 * i + 1 < out.len() {
                out[2 * i + 1] = v;
            }
        }
    }
    out
}

/// Power-basis expansion: coefficient of `yᵐ` is `Σ_k a_k t_m^k`.
pub fn trig_to_power<T: Scalar>(p: &TrigPoly<T>) -> PowerPoly<T> {
    if p.is_zero() {
        return PowerPoly::zero();
    }
    PowerPoly::from_dense(T::chebyshev_to_monomial(&p.to_dense()))
}

/// Cosine-basis expansion using the columns of `T_n⁻¹`.
pub fn power_to_trig<T: Scalar>(p: &PowerPoly<T>) -> TrigPoly<T> {
    let mut out = TrigPoly::zero();
    for (j, c) in p.terms() {
        let half = j / 2;
        let scale = c.clone() / T::from_bigint(&(BigInt::one() << (2 * half)));
        // cosʲx = 2^{-2h} Σ_{m ≤ h} w_m C(j, m) cos((j − 2m)x), where w_m = 2 for
        // the non-constant terms of even j and 1 otherwise.
        let mut binom = BigInt::one();
        for m in 0..=half {
            let freq = j - 2 * m;
            let weight = if j % 2 == 0 && freq != 0 { &binom << 1 } else { binom.clone() };
            out.add_term(freq, scale.clone() * T::from_bigint(&weight));
            binom = binom * (j - m) / (m + 1);
        }
    }
    out
}

/// `(cos^q x)'' = q(q−1)cos^{q−2}x − q²cos^q x`, applied termwise.
pub fn second_derivative<T: Scalar>(p: &PowerPoly<T>) -> PowerPoly<T> {
    let mut out = PowerPoly::zero();
    for (q, c) in p.terms() {
        let qq = q as i64;
        if q >= 2 {
            out.add_term(q - 2, c.clone() * T::from_i64(qq * (qq - 1)));
        }
        out.add_term(q, -(c.clone() * T::from_i64(qq * qq)));
    }
    out
}

/// Constant term of `(cos^{2j} x)^{(2p)}` viewed as a polynomial in `cos x`:
/// `(−4)^{p−j} Σ_k (−1)^k C(2j, k)(j − k)^{2p}` with `0⁰ = 1`.
pub fn y_value(p: usize, j: usize) -> Rational {
    let mut sum = BigInt::zero();
    for k in 0..=2 * j {
        let base = BigInt::from(j as i64 - k as i64);
        let term = binomial_unchecked(2 * j as i64, k as u64) * base.pow(2 * p as u32);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let scale = BigInt::from(-4).pow(p.abs_diff(j) as u32);
    if p >= j {
        big(sum * scale)
    } else {
        Rational::new(sum, scale)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use proptest::prelude::*;

    /// T_0..=T_n via T_{k+1} = 2x T_k − T_{k−1}, dense over powers of x.
    fn recurrence_table(n: usize) -> Vec<Vec<BigInt>> {
        let mut t = vec![vec![BigInt::one()], vec![BigInt::zero(), BigInt::one()]];
        for k in 1..n {
            let mut next = vec![BigInt::zero(); k + 2];
            for (m, c) in t[k].iter().enumerate() {
                next[m + 1] += c * 2;
            }
            for (m, c) in t[k - 1].iter().enumerate() {
                next[m] -= c;
            }
            t.push(next);
        }
        t.truncate(n + 1);
        t
    }

    #[test]
    fn entry_examples() {
        assert_eq!(cheb_entry(2, 2), BigInt::from(2));
        assert_eq!(cheb_entry(1, 2), BigInt::zero());
        assert_eq!(cheb_entry(0, 4), BigInt::one());
        assert_eq!(cheb_entry(0, 0), BigInt::one());
        assert_eq!(cheb_entry(5, 3), BigInt::zero());
    }

    #[test]
    fn entries_match_recurrence() {
        let table = recurrence_table(40);
        for (k, row) in table.iter().enumerate() {
            for m in 0..=k + 1 {
                let want = row.get(m).cloned().unwrap_or_default();
                assert_eq!(cheb_entry(m, k), want, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn build_t_examples() {
        assert_eq!(build_t(1).unwrap(), RatMatrix::identity(1));
        assert_eq!(build_t(2).unwrap(), RatMatrix::identity(2));
        let want = RatMatrix::from_rows(vec![
            vec![int(1), int(0), int(-1)],
            vec![int(0), int(1), int(0)],
            vec![int(0), int(0), int(2)],
        ])
        .unwrap();
        assert_eq!(build_t(3).unwrap(), want);
        assert!(build_t(0).is_err());
    }

    #[test]
    fn inv_tn_examples() {
        assert_eq!(inv_tn_entry(0, 0), int(1));
        assert_eq!(inv_tn_entry(0, 2), ratio(1, 2));
        assert_eq!(inv_tn_entry(2, 2), ratio(1, 2));
        assert_eq!(inv_tn_entry(1, 2), int(0));
        assert_eq!(inv_tn_entry(3, 1), int(0));
        let inv = build_t(3).unwrap().invert().unwrap();
        assert_eq!(inv[(0, 2)], ratio(1, 2));
    }

    #[test]
    fn inv_tn_matches_inversion() {
        for n in 1..=16 {
            let inv = build_t(n).unwrap().invert().unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(inv_tn_entry(i, j), inv[(i, j)], "n={n} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn build_tkl_examples() {
        assert_eq!(build_tkl(2, 1).unwrap(), RatMatrix::diagonal(vec![int(-1)]));
        assert_eq!(build_tkl(2, 2).unwrap(), RatMatrix::diagonal(vec![int(-1), int(-3)]));
        assert_eq!(build_tkl(4, 1).unwrap(), RatMatrix::identity(1));
        assert!(build_tkl(3, 2).is_err());
        assert!(build_tkl(0, 2).is_err());
    }

    #[test]
    fn inv_tkl_examples() {
        assert_eq!(inv_tkl_entry(2, 1, 0, 0).unwrap(), int(-1));
        assert_eq!(inv_tkl_entry(2, 2, 1, 1).unwrap(), ratio(-1, 3));
        for (k, l) in [(2, 5), (4, 6), (6, 7)] {
            for i in 0..l {
                for j in 0..l {
                    if (i + j) % 2 == 1 {
                        assert_eq!(inv_tkl_entry(k, l, i, j).unwrap(), int(0));
                    }
                }
            }
        }
        assert!(inv_tkl_entry(3, 2, 0, 0).is_err());
        assert!(inv_tkl_entry(2, 2, 2, 0).is_err());
        // k = 0 falls back to T_l⁻¹
        assert_eq!(inv_tkl_entry(0, 3, 0, 2).unwrap(), ratio(1, 2));
    }

    #[test]
    fn inv_tkl_matches_inversion_small() {
        for k in (2..=6).step_by(2) {
            for l in 1..=6 {
                let inv = build_tkl(k, l).unwrap().invert().unwrap();
                for i in 0..l {
                    for j in 0..l {
                        assert_eq!(inv_tkl_entry(k, l, i, j).unwrap(), inv[(i, j)], "k={k} l={l} ({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn trig_to_power_examples() {
        let p = TrigPoly::from_pairs([(0, int(1))]);
        assert_eq!(trig_to_power(&p), PowerPoly::from_pairs([(0, int(1))]));
        let p = TrigPoly::from_pairs([(2, int(1))]);
        assert_eq!(trig_to_power(&p), PowerPoly::from_pairs([(0, int(-1)), (2, int(2))]));
        let p = TrigPoly::from_pairs([(2, ratio(1, 2)), (0, ratio(1, 2))]);
        assert_eq!(trig_to_power(&p), PowerPoly::from_pairs([(2, int(1))]));
        assert!(trig_to_power(&TrigPoly::<Rational>::zero()).is_zero());
    }

    #[test]
    fn power_to_trig_examples() {
        let p = PowerPoly::from_pairs([(0, int(1))]);
        assert_eq!(power_to_trig(&p), TrigPoly::from_pairs([(0, int(1))]));
        let p = PowerPoly::from_pairs([(2, int(1))]);
        assert_eq!(power_to_trig(&p), TrigPoly::from_pairs([(0, ratio(1, 2)), (2, ratio(1, 2))]));
        let p = PowerPoly::from_pairs([(3, int(1))]);
        assert_eq!(power_to_trig(&p), TrigPoly::from_pairs([(1, ratio(3, 4)), (3, ratio(1, 4))]));
        let column = build_t(4).unwrap().invert().unwrap().column(3);
        assert_eq!(column[1], ratio(3, 4));
        assert_eq!(column[3], ratio(1, 4));
    }

    #[test]
    fn expansion_matches_entry_sum() {
        // Direct oracle: coefficient of y^m is Σ_k a_k t_m^k.
        let a: Vec<Rational> = (0..=23).map(|k| ratio((k * 7 % 11) as i64 - 5, 1 + (k % 4) as i64)).collect();
        let p = TrigPoly::from_dense(a.clone());
        let got = trig_to_power(&p);
        for m in 0..=23 {
            let want = a
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (k, ak)| acc + ak * big(cheb_entry(m, k)));
            assert_eq!(got.coeff(m), want, "m={m}");
        }
    }

    #[test]
    fn float_expansion_agrees() {
        let p = TrigPoly::<f64>::from_pairs([(3, 1.0), (4, 0.5)]);
        let q = trig_to_power(&p);
        // T3 = 4y³ − 3y, T4 = 8y⁴ − 8y² + 1
        let want = [(0, 0.5), (1, -3.0), (2, -4.0), (3, 4.0), (4, 4.0)];
        for (k, v) in want {
            assert!((q.coeff(k) - v).abs() < 1e-12, "k={k}");
        }
        let x = 0.37f64;
        assert!((p.eval(x) - q.eval(x.cos())).abs() < 1e-12);
    }

    #[test]
    fn parity_is_preserved() {
        let p = TrigPoly::from_pairs([(2, int(3)), (6, ratio(-1, 5)), (10, int(1))]);
        assert!(trig_to_power(&p).has_parity(0));
        let p = TrigPoly::from_pairs([(1, int(3)), (7, ratio(-1, 5))]);
        assert!(trig_to_power(&p).has_parity(1));
    }

    #[test]
    fn second_derivative_examples() {
        assert!(second_derivative(&PowerPoly::from_pairs([(0, int(1))])).is_zero());
        assert_eq!(
            second_derivative(&PowerPoly::from_pairs([(2, int(1))])),
            PowerPoly::from_pairs([(0, int(2)), (2, int(-4))])
        );
        assert_eq!(
            second_derivative(&PowerPoly::from_pairs([(4, int(1))])),
            PowerPoly::from_pairs([(2, int(12)), (4, int(-16))])
        );
    }

    #[test]
    fn y_value_examples() {
        assert_eq!(y_value(0, 0), int(1));
        assert_eq!(y_value(1, 1), int(2));
        assert_eq!(y_value(2, 1), int(-8));
        // (2α)! at p = α, zero below
        assert_eq!(y_value(3, 3), big(factorial(6)));
        assert_eq!(y_value(1, 3), int(0));
        // cos²x has no constant term
        assert_eq!(y_value(0, 1), int(0));
    }

    #[test]
    fn y_value_matches_derivative_oracle() {
        for j in 0..=6 {
            let mut poly = PowerPoly::from_pairs([(2 * j, int(1))]);
            for p in 0..=6 {
                assert_eq!(y_value(p, j), poly.coeff(0), "p={p} j={j}");
                poly = second_derivative(&poly);
            }
        }
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn roundtrip_trig(coeffs in proptest::collection::vec((0usize..=50, rational()), 0..12)) {
            let p = TrigPoly::from_pairs(coeffs);
            prop_assert_eq!(power_to_trig(&trig_to_power(&p)), p);
        }

        #[test]
        fn roundtrip_power(coeffs in proptest::collection::vec((0usize..=50, rational()), 0..12)) {
            let p = PowerPoly::from_pairs(coeffs);
            prop_assert_eq!(trig_to_power(&power_to_trig(&p)), p);
        }
    }
}
