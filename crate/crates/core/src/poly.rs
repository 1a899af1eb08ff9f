//! Polynomials in `t` with big-integer coefficients, and the napkinless
//! distribution polynomial built on them.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};

/// `Σ c_k t^k` over the integers. Trailing zero coefficients are trimmed,
/// so the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::new(vec![c.into()])
    }

    /// `c · t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c.into());
        IntPoly::new(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly::default()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        let k = k.into();
        IntPoly::new(self.coeffs.iter().map(|c| c * &k).collect())
    }

    /// `p(1)`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `p'(1)`.
    pub fn derivative_at_one(&self) -> BigInt {
        self.coeffs.iter().enumerate().map(|(k, c)| c * BigInt::from(k)).sum()
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let (neg, mag) = (c.sign() == BigSign::Minus, c.magnitude());
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Distribution of the napkinless count over all `2^n` preference orders:
/// `coeffs[k]` orders leave exactly `k` diners without a napkin.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NapkinPolynomial {
    pub n: usize,
    pub coeffs: Vec<BigUint>,
}

impl NapkinPolynomial {
    pub fn from_counts(n: usize, counts: &[u64]) -> Self {
        let mut coeffs: Vec<BigUint> = counts.iter().map(|&c| BigUint::from(c)).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        NapkinPolynomial { n, coeffs }
    }

    /// Fails if any coefficient is negative.
    pub fn from_int_poly(n: usize, p: &IntPoly) -> Result<Self> {
        let coeffs = p
            .coeffs()
            .iter()
            .map(|c| {
                c.to_biguint()
                    .ok_or_else(|| Error::InvalidArgument(format!("negative coefficient {c} in distribution for n = {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(NapkinPolynomial { n, coeffs })
    }

    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| BigInt::from(c.clone())).collect())
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `Σ k · coeffs[k] / 2^n`.
    pub fn expectation(&self) -> Dyadic {
        let weighted: BigUint = self.coeffs.iter().enumerate().map(|(k, c)| c * BigUint::from(k)).sum();
        Dyadic::new(BigInt::from(weighted), self.n as u64)
    }

    /// Coefficients divided by four, if every one is a multiple of four.
    pub fn quarters(&self) -> Option<Vec<BigUint>> {
        let four = BigUint::from(4u32);
        self.coeffs
            .iter()
            .map(|c| (c % &four).is_zero().then(|| c / &four))
            .collect()
    }

    /// Checks the structural invariants: total `2^n`, degree at most
    /// `⌊n/3⌋` (for `n ≥ 1`), and divisibility by four for `n ≥ 2`.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        if self.total() != BigUint::one() << self.n {
            return Err(format!("coefficients sum to {}, not 2^{}", self.total(), self.n));
        }
        if self.n >= 1 && self.degree() > self.n / 3 {
            return Err(format!("degree {} exceeds ⌊{}/3⌋", self.degree(), self.n));
        }
        if self.n >= 2 && self.quarters().is_none() {
            return Err("a coefficient is not divisible by 4".into());
        }
        Ok(())
    }

    pub fn coeffs_u64(&self) -> Vec<u64> {
        self.coeffs.iter().map(|c| u64::try_from(c).unwrap_or(u64::MAX)).collect()
    }
}

impl fmt::Display for NapkinPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_int_poly().fmt(f)
    }
}
