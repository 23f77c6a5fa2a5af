//! Integer Laurent polynomials in one formal variable.
//!
//! Stored densely: `coeffs[i]` is the coefficient of `x^(low + i)`. The first
//! and last stored coefficients are nonzero, so two polynomials are equal
//! exactly when their exponent/coefficient maps are equal. Coefficients are
//! `i64`; every arithmetic path checks for overflow.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("exponent scale factor must be nonzero")]
    ZeroScale,
    #[error("coefficient overflow")]
    Overflow,
    #[error("exponent {exponent} is not divisible by {divisor}")]
    NotDivisible { exponent: i64, divisor: i32 },
    #[error("exponent out of range")]
    ExponentRange,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i32,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        Self { low: exp, coeffs: vec![coeff] }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i32, i64)>>(terms: I) -> Result<Self, PolyError> {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = acc.checked_add(&Self::monomial(c, e))?;
        }
        Ok(acc)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != 0).count()
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        let i = exp as i64 - self.low as i64;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(move |(i, c)| (self.low + i as i32, *c))
    }

    fn from_dense(low: i32, mut coeffs: Vec<i64>) -> Self {
        let last = coeffs.iter().rposition(|c| *c != 0);
        let Some(last) = last else { return Self::zero() };
        coeffs.truncate(last + 1);
        let first = coeffs.iter().position(|c| *c != 0).unwrap_or(0);
        if first > 0 {
            coeffs.drain(..first);
        }
        Self { low: low + first as i32, coeffs }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut out = vec![0i64; (high - low + 1) as usize];
        for (src, base) in [(self, self.low), (other, other.low)] {
            let off = (base - low) as usize;
            for (i, c) in src.coeffs.iter().enumerate() {
                out[off + i] = out[off + i].checked_add(*c).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Self::from_dense(low, out))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.checked_add(&other.checked_neg()?)
    }

    pub fn checked_neg(&self) -> Result<Self, PolyError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.checked_neg().ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { low: self.low, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let low = self.low.checked_add(other.low).ok_or(PolyError::ExponentRange)?;
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a.checked_mul(*b).ok_or(PolyError::Overflow)?;
                out[i + j] = out[i + j].checked_add(term).ok_or(PolyError::Overflow)?;
            }
        }
        Ok(Self::from_dense(low, out))
    }

    /// Multiplies by `c * x^e`.
    pub fn checked_mul_monomial(&self, c: i64, e: i32) -> Result<Self, PolyError> {
        if c == 0 || self.is_zero() {
            return Ok(Self::zero());
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|x| x.checked_mul(c).ok_or(PolyError::Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        let low = self.low.checked_add(e).ok_or(PolyError::ExponentRange)?;
        Ok(Self { low, coeffs })
    }

    /// `x ↦ x⁻¹`.
    pub fn invert_var(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self { low: -self.max_exp().unwrap(), coeffs }
    }

    /// `x ↦ x^k`.
    pub fn scale_exponents(&self, k: i32) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::ZeroScale);
        }
        let terms = self
            .terms()
            .map(|(e, c)| e.checked_mul(k).map(|e| (e, c)).ok_or(PolyError::ExponentRange))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_terms(terms)
    }

    /// `x^k ↦ x`; every exponent must be a multiple of `k`.
    pub fn divide_exponents(&self, k: i32) -> Result<Self, PolyError> {
        if k == 0 {
            return Err(PolyError::ZeroScale);
        }
        let mut terms = Vec::with_capacity(self.coeffs.len());
        for (e, c) in self.terms() {
            if e % k != 0 {
                return Err(PolyError::NotDivisible { exponent: e as i64, divisor: k });
            }
            terms.push((e / k, c));
        }
        Self::from_terms(terms)
    }

    /// Renders with the given variable name, terms in ascending order:
    /// `-t^-4 + t^-3 + t^-1`.
    pub fn render(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else if c < 0 {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if e == 0 {
                let _ = write!(out, "{mag}");
                continue;
            }
            if mag != 1 {
                let _ = write!(out, "{mag}");
            }
            out.push_str(var);
            if e != 1 {
                let _ = write!(out, "^{e}");
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self.render("x"))
    }
}

// Operator forms panic on overflow; fallible code paths use the checked
// methods directly.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent polynomial coefficient overflow")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent polynomial coefficient overflow")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent polynomial coefficient overflow")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("Laurent polynomial coefficient overflow")
    }
}
