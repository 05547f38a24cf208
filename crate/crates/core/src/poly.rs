//! Sparse polynomials over the cosine basis `{cos kx}` and the power basis
//! `{cosᵏx}`. Zero coefficients are never stored.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational, Scalar};

macro_rules! sparse_poly {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name<T = Rational> {
            coeffs: BTreeMap<usize, T>,
        }

        impl<T: Scalar> Default for $name<T> {
            fn default() -> Self {
                Self { coeffs: BTreeMap::new() }
            }
        }

        impl<T: Scalar> $name<T> {
            pub fn zero() -> Self {
                Self::default()
            }

            /// Accumulates repeated indices; zeros are dropped.
            pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, T)>) -> Self {
                let mut p = Self::default();
                for (k, v) in pairs {
                    p.add_term(k, v);
                }
                p
            }

            /// Dense coefficients, index = basis position.
            pub fn from_dense(dense: Vec<T>) -> Self {
                Self::from_pairs(dense.into_iter().enumerate())
            }

            pub fn to_dense(&self) -> Vec<T> {
                let mut out = vec![T::zero(); self.degree().map_or(0, |d| d + 1)];
                for (&k, v) in &self.coeffs {
                    out[k] = v.clone();
                }
                out
            }

            pub fn add_term(&mut self, k: usize, v: T) {
                if v.is_zero() {
                    return;
                }
                let slot = self.coeffs.entry(k).or_insert_with(T::zero);
                *slot += &v;
                if slot.is_zero() {
                    self.coeffs.remove(&k);
                }
            }

            pub fn coeff(&self, k: usize) -> T {
                self.coeffs.get(&k).cloned().unwrap_or_else(T::zero)
            }

            pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
                self.coeffs.iter().map(|(&k, v)| (k, v))
            }

            pub fn degree(&self) -> Option<usize> {
                self.coeffs.keys().next_back().copied()
            }

            pub fn len(&self) -> usize {
                self.coeffs.len()
            }

            pub fn is_empty(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.is_empty()
            }

            pub fn l1_norm(&self) -> T {
                self.coeffs.values().fold(T::zero(), |acc, v| acc + v.abs())
            }

            pub fn scale(&self, factor: &T) -> Self {
                Self::from_pairs(self.terms().map(|(k, v)| (k, v.clone() * factor.clone())))
            }

            pub fn sub(&self, other: &Self) -> Self {
                let mut out = self.clone();
                for (k, v) in other.terms() {
                    out.add_term(k, -v.clone());
                }
                out
            }
        }
    };
}

sparse_poly!(
    /// `Σ a_k cos kx`.
    TrigPoly
);

sparse_poly!(
    /// `Σ c_m cosᵐx`, equivalently a polynomial in `y = cos x`.
    PowerPoly
);

impl<T: Scalar> PowerPoly<T> {
    /// True when every stored exponent has the given parity (0 even, 1 odd).
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs.keys().all(|k| k % 2 == parity)
    }

    /// Split into `(q, rem)` with `self = y^n · q + rem` and `deg rem < n`.
    pub fn div_rem_monomial(&self, n: usize) -> (Self, Self) {
        let mut q = Self::default();
        let mut rem = Self::default();
        for (k, v) in self.terms() {
            if k >= n {
                q.add_term(k - n, v.clone());
            } else {
                rem.add_term(k, v.clone());
            }
        }
        (q, rem)
    }

    pub fn eval(&self, y: f64) -> f64 {
        self.terms().map(|(k, v)| v.to_f64() * y.powi(k as i32)).sum()
    }
}

impl<T: Scalar> TrigPoly<T> {
    pub fn eval(&self, x: f64) -> f64 {
        self.terms().map(|(k, v)| v.to_f64() * (k as f64 * x).cos()).sum()
    }
}

/// Which basis a serialized polynomial is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Trig,
    Power,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    k: usize,
    v: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    basis: Basis,
    coeffs: Vec<TermJson>,
}

/// A polynomial tagged with its basis, as read from or written to JSON:
/// `{"basis": "trig"|"power", "coeffs": [{"k": int, "v": "num/den"}, ...]}`.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Trig(TrigPoly),
    Power(PowerPoly),
}

impl AnyPoly {
    pub fn basis(&self) -> Basis {
        match self {
            AnyPoly::Trig(_) => Basis::Trig,
            AnyPoly::Power(_) => Basis::Power,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PolyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut seen = BTreeMap::new();
        for term in &raw.coeffs {
            let v = parse_rational(&term.v)?;
            if seen.insert(term.k, v).is_some() {
                return Err(Error::Parse(format!("duplicate coefficient index {}", term.k)));
            }
        }
        Ok(match raw.basis {
            Basis::Trig => AnyPoly::Trig(TrigPoly::from_pairs(seen)),
            Basis::Power => AnyPoly::Power(PowerPoly::from_pairs(seen)),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_value()).expect("polynomial JSON is always serializable")
    }

    pub fn to_value(&self) -> serde_json::Value {
        let (basis, terms): (Basis, Vec<(usize, &Rational)>) = match self {
            AnyPoly::Trig(p) => (Basis::Trig, p.terms().collect()),
            AnyPoly::Power(p) => (Basis::Power, p.terms().collect()),
        };
        let raw = PolyJson {
            basis,
            coeffs: terms
                .into_iter()
                .map(|(k, v)| TermJson { k, v: format_rational(v) })
                .collect(),
        };
        serde_json::to_value(raw).expect("polynomial JSON is always serializable")
    }
}
