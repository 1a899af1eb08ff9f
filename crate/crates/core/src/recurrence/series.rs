//! Power-series expansion of rational functions in `z`.
//!
//! For `F(z) = N(z) / D(z)` the coefficients satisfy
//! `D_0 a_n = N_n - Σ_{j≥1} D_j a_{n-j}`, so they come out of a linear
//! recurrence with no division beyond the leading denominator term. That
//! term must be a unit (over `Z[t]`) or a signed power of two (over the
//! dyadics).

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// First `terms` coefficients of `num / den` with coefficients in `Z[t]`.
pub fn expand_rational(num: &[IntPoly], den: &[IntPoly], terms: usize) -> Result<Vec<IntPoly>> {
    let lead = den.first().map(|d| d.coeffs().to_vec()).unwrap_or_default();
    let sign = match lead.as_slice() {
        [c] if c.abs().is_one() => c.clone(),
        _ => return Err(Error::InvalidArgument("leading denominator coefficient must be ±1".into())),
    };
    let mut out: Vec<IntPoly> = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for (j, d) in den.iter().enumerate().skip(1).take_while(|(j, _)| *j <= n) {
            acc = &acc - &(d * &out[n - j]);
        }
        out.push(acc.scale(sign.clone()));
    }
    Ok(out)
}

/// First `terms` coefficients of `num / den` with dyadic coefficients.
pub fn expand_rational_dyadic(num: &[Dyadic], den: &[Dyadic], terms: usize) -> Result<Vec<Dyadic>> {
    let lead = den.first().cloned().unwrap_or_default();
    let mag = lead.numerator().abs();
    if lead.exponent() != 0 || mag.magnitude().count_ones() != 1 {
        return Err(Error::InvalidArgument("leading denominator coefficient must be ±2^k".into()));
    }
    let shift = mag.trailing_zeros().unwrap_or(0);
    let negative = lead.numerator().is_negative();
    let mut out: Vec<Dyadic> = Vec::with_capacity(terms);
    for n in 0..terms {
        let mut acc = num.get(n).cloned().unwrap_or_default();
        for (j, d) in den.iter().enumerate().skip(1).take_while(|(j, _)| *j <= n) {
            acc = &acc - &(d * &out[n - j]);
        }
        let a = acc.shr(shift);
        out.push(if negative { -&a } else { a });
    }
    Ok(out)
}

/// Convenience for integer coefficient lists.
pub fn dyadics(values: &[i64]) -> Vec<Dyadic> {
    values.iter().map(|&v| Dyadic::from_int(BigInt::from(v))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        // 1 / (1 - z) = 1 + z + z^2 + ...
        let one = IntPoly::constant(1);
        let out = expand_rational(std::slice::from_ref(&one), &[one.clone(), IntPoly::constant(-1)], 5).unwrap();
        assert!(out.iter().all(|c| *c == one));
    }

    #[test]
    fn fibonacci_with_parameter() {
        // 1 / (1 - z - t z^2): coefficients are Fibonacci polynomials
        let den = [IntPoly::constant(1), IntPoly::constant(-1), IntPoly::monomial(-1, 1)];
        let out = expand_rational(&[IntPoly::constant(1)], &den, 5).unwrap();
        assert_eq!(out[2], IntPoly::from_i64s(&[1, 1]));
        assert_eq!(out[3], IntPoly::from_i64s(&[1, 2]));
        assert_eq!(out[4], IntPoly::from_i64s(&[1, 3, 1]));
    }

    #[test]
    fn dyadic_leading_power_of_two() {
        // 1 / (2 - z) = 1/2 + z/4 + z^2/8 + ...
        let out = expand_rational_dyadic(&dyadics(&[1]), &dyadics(&[2, -1]), 4).unwrap();
        let want: Vec<Dyadic> = (1..=4).map(|e| Dyadic::new(1, e)).collect();
        assert_eq!(out, want);
        assert!(expand_rational_dyadic(&dyadics(&[1]), &dyadics(&[3, -1]), 4).is_err());
        assert!(expand_rational(&[IntPoly::constant(1)], &[IntPoly::constant(2)], 2).is_err());
    }
}
