//! Continued fractions of `sqrt(D)` and the negative Pell equation
//! `x^2 - D*y^2 = -1`.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use serde::{Deserialize, Serialize};

/// Errors from the continued fraction expansion.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PellError {
    /// `sqrt(D)` is an integer, so there is no periodic expansion.
    #[error("{d} is a perfect square, sqrt has no periodic continued fraction")]
    PerfectSquare { d: u64 },
}

/// The periodic continued fraction `sqrt(D) = [a0; period...]`.
///
/// The period always ends with `2*a0`, and the terms before that last one
/// form a palindrome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub d: u64,
    pub a0: u64,
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn period_len(&self) -> usize {
        self.period.len()
    }
}

/// Outcome for `x^2 - D*y^2 = -1`. Perfect squares and even-period `D` are
/// reported as unsolvable; otherwise `solution` holds the fundamental
/// (minimal positive) pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PellSolution {
    pub d: u64,
    pub solvable: bool,
    #[serde(with = "crate::arith::big_serde::opt_uint_pair")]
    pub solution: Option<(BigUint, BigUint)>,
}

/// Expands `sqrt(D)` with the standard quadratic surd recurrence
/// `m' = d*a - m`, `d' = (D - m'^2)/d`, `a' = floor((a0 + m')/d')`,
/// stopping at the first return to denominator 1.
pub fn continued_fraction_sqrt(d: u64) -> Result<ContinuedFraction, PellError> {
    let a0 = d.sqrt();
    if a0 * a0 == d {
        return Err(PellError::PerfectSquare { d });
    }
    let mut m = 0u64;
    let mut den = 1u64;
    let mut a = a0;
    let mut period = Vec::new();
    loop {
        m = den * a - m;
        den = (d - m * m) / den;
        a = (a0 + m) / den;
        period.push(a);
        if den == 1 {
            return Ok(ContinuedFraction { d, a0, period });
        }
    }
}

/// Decides `x^2 - D*y^2 = -1` by the period parity of `sqrt(D)`: solvable
/// exactly when the period length is odd, with the fundamental solution read
/// off the convergent just before the end of the first period.
pub fn solve_negative_pell(d: u64) -> PellSolution {
    let cf = match continued_fraction_sqrt(d) {
        Ok(cf) => cf,
        Err(PellError::PerfectSquare { .. }) => {
            return PellSolution { d, solvable: false, solution: None };
        }
    };
    let len = cf.period_len();
    if len % 2 == 0 {
        return PellSolution { d, solvable: false, solution: None };
    }
    // Convergent p/q of [a0; a1, ..., a_{len-1}], len terms in total.
    let mut p_prev = BigUint::from(1u32);
    let mut p = BigUint::from(cf.a0);
    let mut q_prev = BigUint::from(0u32);
    let mut q = BigUint::from(1u32);
    for &a in &cf.period[..len - 1] {
        let a = BigUint::from(a);
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
    }
    let x = BigInt::from(p.clone());
    let y = BigInt::from(q.clone());
    debug_assert_eq!(&x * &x - BigInt::from(d) * &y * &y, BigInt::from(-1));
    PellSolution { d, solvable: true, solution: Some((p, q)) }
}
