//! Trap setting: the napkinless distribution `W_n(t)` and its expectation
//! by three routes (the three-term polynomial recurrence, expansion of the
//! rational generating function, and the closed form), plus the linear
//! recurrence the expectations obey.

use num_bigint::BigInt;

use super::series::{dyadics, expand_rational, expand_rational_dyadic};
use super::PolySeries;
use super::SeriesFamily;
use crate::dyadic::Dyadic;
use crate::poly::{IntPoly, NapkinPolynomial};

/// `W_0 = 2, W_1 = 2, W_2 = 4` and, for `n ≥ 3`,
/// `W_n = W_{n-1} + 2 W_{n-2} + 2(t - 1) W_{n-3}`.
///
/// `W_0 = 2` is a convention that makes the recurrence start at `n = 3`;
/// it is not a distribution.
pub fn trap_series(max_n: usize) -> PolySeries {
    let t_minus_one_twice = IntPoly::from_i64s(&[-2, 2]);
    let mut w = vec![IntPoly::constant(2), IntPoly::constant(2), IntPoly::constant(4)];
    for n in 3..=max_n {
        let next = &(&w[n - 1] + &w[n - 2].scale(2)) + &(&t_minus_one_twice * &w[n - 3]);
        w.push(next);
    }
    w.truncate(max_n + 1);
    PolySeries::new(SeriesFamily::TrapCircular, w)
}

/// `W_n(t)` from the recurrence.
pub fn w_poly(n: usize) -> NapkinPolynomial {
    let series = trap_series(n);
    NapkinPolynomial::from_int_poly(n, series.get(n).expect("computed up to n"))
        .expect("trap-setting coefficients are non-negative")
}

/// Coefficients of `(2 - 2z^2) / (1 - z - 2z^2 - 2(t-1) z^3)` up to `z^max_n`.
pub fn w_gf_series(max_n: usize) -> PolySeries {
    let num = [IntPoly::constant(2), IntPoly::zero(), IntPoly::constant(-2)];
    let den = [
        IntPoly::constant(1),
        IntPoly::constant(-1),
        IntPoly::constant(-2),
        IntPoly::from_i64s(&[2, -2]),
    ];
    let coeffs = expand_rational(&num, &den, max_n + 1).expect("denominator has unit constant term");
    PolySeries::new(SeriesFamily::TrapGeneratingFunction, coeffs)
}

/// Closed form: `E_{m+3} = ((3m+7) 2^{m-1} + (-1)^m) / (9 · 2^m)`, and zero
/// below three diners.
pub fn e_w(n: usize) -> Dyadic {
    if n < 3 {
        return Dyadic::zero();
    }
    let m = (n - 3) as u64;
    // ((3m+7) 2^m + 2(-1)^m) / (9 · 2^{m+1})
    let sign = if m.is_multiple_of(2) { 2 } else { -2 };
    let top = (BigInt::from(3 * m + 7) << m) + sign;
    Dyadic::new(top, m + 1)
        .div_exact(9)
        .expect("numerator is always a multiple of 9")
}

/// `E_1 = E_2 = 0`, `E_3 = 1/2`, then `E_n = E_{n-1}/2 + E_{n-2}/2 + 1/4`.
pub fn e_w_linear(max_n: usize) -> Vec<Dyadic> {
    let mut e = vec![Dyadic::zero(), Dyadic::zero(), Dyadic::zero(), Dyadic::new(1, 1)];
    let quarter = Dyadic::new(1, 2);
    for n in 4..=max_n {
        let next = &(&e[n - 1] + &e[n - 2]).half() + &quarter;
        e.push(next);
    }
    e.truncate(max_n + 1);
    e
}

/// Coefficients of `z^3 (2 - z) / (2 (1-z)^2 (2+z))`, i.e. of
/// `(2z^3 - z^4) / (4 - 6z + 2z^3)`.
pub fn e_w_series(max_n: usize) -> Vec<Dyadic> {
    expand_rational_dyadic(&dyadics(&[0, 0, 0, 2, -1]), &dyadics(&[4, -6, 0, 2]), max_n + 1)
        .expect("leading denominator term is a power of two")
}

/// `E_m = ((3m - 2) - 16 (-1)^m 2^{-m}) / 18`, for `m ≥ 3`; dividing by
/// `m` gives the napkinless proportion.
pub fn e_w_proportion_form(m: usize) -> Dyadic {
    let m64 = m as u64;
    let sign = if m.is_multiple_of(2) { -16 } else { 16 };
    let top = (BigInt::from(3 * m64) - 2) * (BigInt::from(1) << m64) + sign;
    Dyadic::new(top, m64)
        .div_exact(18)
        .expect("numerator is always a multiple of 9")
}
