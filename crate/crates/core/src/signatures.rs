//! Levine-Tristram signatures: an integer closed form for (2, 2n+1) torus
//! knots, a floating-point fallback for arbitrary Seifert matrices, and the
//! exact ordinary signature.

use crate::arith::{ceil_div, Rational};
use crate::seifert::{SeifertMatrix, TwistKnot};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// Default bound under which a numeric eigenvalue counts as dangerously
/// close to zero. Entries are small integers times unit-modulus complex
/// numbers, so conditioning is benign away from Alexander roots.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Errors from signature evaluation.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SignatureError {
    /// The angle parameter `s` is zero (or otherwise outside `0 < s < m`),
    /// where the Hermitian form degenerates or is undefined.
    #[error("angle {s}/{m} is outside the open range (0, 1)")]
    AngleOutOfRange { s: u64, m: u64 },
    /// A numeric eigenvalue fell below tolerance in absolute value, meaning
    /// omega is too close to a root of the Alexander polynomial for the
    /// count to be trusted.
    #[error("eigenvalue {eigenvalue:e} within tolerance {tolerance:e} of zero at angle {s}/{m}")]
    NearSingular { s: u64, m: u64, eigenvalue: f64, tolerance: f64 },
    /// The symmetrized matrix is singular, so the signature is not defined.
    #[error("symmetrized matrix is singular")]
    Degenerate,
    /// The angle denominator does not match the torus knot the closed form
    /// is being asked about.
    #[error("closed form for the (2,{q}) torus knot needs denominator {expected}, got {got}")]
    TorusParameterMismatch { q: u64, expected: u64, got: u64 },
    /// The angle denominator does not match the order of the knot's double
    /// branched cover homology.
    #[error("angle denominator {got} does not match knot order {expected}")]
    KnotOrderMismatch { expected: u64, got: u64 },
}

/// The angle `omega = e^{2 pi i s/m}` on the unit circle, kept unreduced
/// because characters are indexed by `s` mod `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalAngle {
    s: u64,
    m: u64,
}

impl RationalAngle {
    pub fn new(s: u64, m: u64) -> Result<Self, SignatureError> {
        if m == 0 || s >= m {
            return Err(SignatureError::AngleOutOfRange { s, m });
        }
        Ok(RationalAngle { s, m })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// The angle value `2 pi s/m` in radians.
    pub fn radians(&self) -> f64 {
        2.0 * std::f64::consts::PI * (self.s as f64) / (self.m as f64)
    }
}

/// Levine-Tristram signature of the torus knot `T(2, q)` for odd `q = 2n+1`
/// at `omega = e^{2 pi i s/(4n+1)}`, by the closed form
///
/// ```text
/// sigma = -2 ceil(s/2)               for 1 <= s <= 2n,
/// sigma = -2 ceil((m-s)/2)           for 2n+1 <= s <= 4n,  m = 4n+1.
/// ```
///
/// The signature starts at -2 once omega passes the first root of the
/// Alexander polynomial and drops by 2 at each later root; counting the
/// roots of the form (2j-1)/(2q) below s/m gives the expression above. The
/// overall sign matches the negative-definite symmetrized form of the
/// band Seifert matrix.
pub fn lt_signature_torus_2q(q_odd: u64, angle: RationalAngle) -> Result<i64, SignatureError> {
    assert!(q_odd % 2 == 1 && q_odd >= 1, "torus parameter must be odd and positive");
    let n = (q_odd - 1) / 2;
    let expected_m = 4 * n + 1;
    if angle.m() != expected_m {
        return Err(SignatureError::TorusParameterMismatch {
            q: q_odd,
            expected: expected_m,
            got: angle.m(),
        });
    }
    let s = angle.s();
    if s == 0 {
        return Err(SignatureError::AngleOutOfRange { s, m: angle.m() });
    }
    let value = if s <= 2 * n {
        -2 * ceil_div(s as i128, 2)
    } else {
        -2 * ceil_div((expected_m - s) as i128, 2)
    };
    Ok(value as i64)
}

/// Levine-Tristram signature of an arbitrary Seifert matrix at
/// `omega = e^{2 pi i s/m}`: the signature of the Hermitian matrix
/// `(1-omega) A + (1-conj(omega)) A^T`, evaluated in floating point.
///
/// The Hermitian matrix `X + iY` is realified to the symmetric block matrix
/// `[[X, -Y], [Y, X]]`, which has each eigenvalue doubled. Eigenvalues
/// closer to zero than `tolerance` raise `NearSingular`.
pub fn lt_signature_generic(
    a: &SeifertMatrix,
    angle: RationalAngle,
    tolerance: f64,
) -> Result<i64, SignatureError> {
    if angle.s() == 0 {
        return Err(SignatureError::AngleOutOfRange { s: angle.s(), m: angle.m() });
    }
    let size = a.size();
    if size == 0 {
        return Ok(0);
    }
    let theta = angle.radians();
    let (sin, cos) = theta.sin_cos();
    // (1-omega)A + (1-conj(omega))A^T = (1-cos)(A+A^T) + i sin (A^T-A).
    let mut real = DMatrix::<f64>::zeros(2 * size, 2 * size);
    for i in 0..size {
        for j in 0..size {
            let aij = a.entry(i, j) as f64;
            let aji = a.entry(j, i) as f64;
            let x = (1.0 - cos) * (aij + aji);
            let y = sin * (aji - aij);
            real[(i, j)] = x;
            real[(size + i, size + j)] = x;
            real[(i, size + j)] = -y;
            real[(size + i, j)] = y;
        }
    }
    let eigenvalues = real.symmetric_eigenvalues();
    let mut positive = 0i64;
    let mut negative = 0i64;
    for &lambda in eigenvalues.iter() {
        if lambda.abs() < tolerance {
            return Err(SignatureError::NearSingular {
                s: angle.s(),
                m: angle.m(),
                eigenvalue: lambda,
                tolerance,
            });
        }
        if lambda > 0.0 {
            positive += 1;
        } else {
            negative += 1;
        }
    }
    debug_assert_eq!((positive - negative) % 2, 0);
    Ok((positive - negative) / 2)
}

/// Ordinary signature: the exact signature of `A + A^T`, computed over the
/// rationals by symmetric congruence elimination. No floating point.
pub fn ordinary_signature(a: &SeifertMatrix) -> Result<i64, SignatureError> {
    let size = a.size();
    let sym: Vec<Vec<Rational>> = (0..size)
        .map(|i| {
            (0..size)
                .map(|j| Rational::from_integer(a.entry(i, j) + a.entry(j, i)))
                .collect()
        })
        .collect();
    signature_of_symmetric(sym)
}

/// Levine-Tristram signature of the twist knot itself, which vanishes at
/// every angle: for `A = [[-1,1],[0,n]]` the Hermitian form has determinant
/// `-(2-2cos)(n(2-2cos)+1) < 0` whenever `omega != 1`, so the two
/// eigenvalues always have opposite signs. Exact, no floating point.
pub fn twist_lt_signature(k: &TwistKnot, angle: RationalAngle) -> Result<i64, SignatureError> {
    if angle.m() != k.m() {
        return Err(SignatureError::KnotOrderMismatch { expected: k.m(), got: angle.m() });
    }
    if angle.s() == 0 {
        return Err(SignatureError::AngleOutOfRange { s: angle.s(), m: angle.m() });
    }
    Ok(0)
}

/// Exact signature of a symmetric rational matrix by congruence
/// elimination: a nonzero diagonal pivot contributes its sign and is
/// cleared; if the diagonal is all zero but some off-diagonal entry is not,
/// adding basis vector `e_j` to `e_i` manufactures a nonzero diagonal entry;
/// a remaining all-zero block means the matrix was singular.
fn signature_of_symmetric(mut m: Vec<Vec<Rational>>) -> Result<i64, SignatureError> {
    let mut active: Vec<usize> = (0..m.len()).collect();
    let mut sig = 0i64;
    while !active.is_empty() {
        if let Some(pos) = active.iter().position(|&i| !m[i][i].is_zero()) {
            let i = active[pos];
            sig += m[i][i].signum() as i64;
            active.remove(pos);
            let pivot = m[i][i].clone();
            for &j in &active {
                let factor = &m[j][i] / &pivot;
                if factor.is_zero() {
                    continue;
                }
                for &k in &active {
                    let delta = &factor * &m[i][k];
                    let updated = &m[j][k] - &delta;
                    m[j][k] = updated;
                }
            }
        } else if let Some((i, j)) = first_nonzero_pair(&m, &active) {
            for &k in &active {
                let updated = &m[i][k] + &m[j][k];
                m[i][k] = updated;
            }
            for &k in &active {
                let updated = &m[k][i] + &m[k][j];
                m[k][i] = updated;
            }
        } else {
            return Err(SignatureError::Degenerate);
        }
    }
    Ok(sig)
}

fn first_nonzero_pair(m: &[Vec<Rational>], active: &[usize]) -> Option<(usize, usize)> {
    for (pos, &i) in active.iter().enumerate() {
        for &j in &active[pos + 1..] {
            if !m[i][j].is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::torus_2q_matrix;
    use proptest::prelude::*;

    fn angle(s: u64, m: u64) -> RationalAngle {
        RationalAngle::new(s, m).unwrap()
    }

    fn knot(n: u64) -> TwistKnot {
        TwistKnot::new(n).unwrap()
    }

    #[test]
    fn angle_construction() {
        assert!(RationalAngle::new(24, 25).is_ok());
        assert!(RationalAngle::new(0, 25).is_ok());
        assert!(RationalAngle::new(25, 25).is_err());
        assert!(RationalAngle::new(0, 0).is_err());
    }

    #[test]
    fn torus_closed_form_examples() {
        assert_eq!(lt_signature_torus_2q(13, angle(1, 25)).unwrap(), -2);
        assert_eq!(lt_signature_torus_2q(13, angle(2, 25)).unwrap(), -2);
        assert_eq!(lt_signature_torus_2q(13, angle(24, 25)).unwrap(), -2);
        assert_eq!(lt_signature_torus_2q(13, angle(12, 25)).unwrap(), -12);
        assert_eq!(lt_signature_torus_2q(13, angle(13, 25)).unwrap(), -12);
        assert!(matches!(
            lt_signature_torus_2q(13, angle(0, 25)),
            Err(SignatureError::AngleOutOfRange { .. })
        ));
        assert!(matches!(
            lt_signature_torus_2q(13, angle(1, 24)),
            Err(SignatureError::TorusParameterMismatch { .. })
        ));
    }

    #[test]
    fn generic_signature_examples() {
        let twist6 = knot(6).seifert_matrix_tau();
        assert_eq!(lt_signature_generic(&twist6, angle(1, 2), DEFAULT_TOLERANCE).unwrap(), 0);

        let trefoil = SeifertMatrix::from_rows(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(lt_signature_generic(&trefoil, angle(1, 2), DEFAULT_TOLERANCE).unwrap(), -2);

        assert!(matches!(
            lt_signature_generic(&trefoil, angle(0, 2), DEFAULT_TOLERANCE),
            Err(SignatureError::AngleOutOfRange { .. })
        ));
    }

    #[test]
    fn generic_signature_near_alexander_root() {
        // omega = e^{pi i/3} is a root of the trefoil's Alexander polynomial.
        let trefoil = SeifertMatrix::from_rows(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert!(matches!(
            lt_signature_generic(&trefoil, angle(1, 6), DEFAULT_TOLERANCE),
            Err(SignatureError::NearSingular { .. })
        ));
    }

    #[test]
    fn ordinary_signature_examples() {
        for n in 1u64..=50 {
            assert_eq!(ordinary_signature(&knot(n).seifert_matrix_tau()).unwrap(), 0);
        }
        let trefoil = SeifertMatrix::from_rows(vec![vec![-1, 1], vec![0, -1]]).unwrap();
        assert_eq!(ordinary_signature(&trefoil).unwrap(), -2);
        assert_eq!(ordinary_signature(&knot(5).seifert_matrix_pell()).unwrap(), 0);
        assert_eq!(ordinary_signature(&torus_2q_matrix(13)).unwrap(), -12);
        let empty = SeifertMatrix::from_rows(vec![]).unwrap();
        assert_eq!(ordinary_signature(&empty).unwrap(), 0);
    }

    #[test]
    fn exact_elimination_flags_singular_matrices() {
        let singular = vec![
            vec![Rational::from_integer(1), Rational::from_integer(1)],
            vec![Rational::from_integer(1), Rational::from_integer(1)],
        ];
        assert_eq!(signature_of_symmetric(singular), Err(SignatureError::Degenerate));
        let zero = vec![vec![Rational::zero(); 3]; 3];
        assert_eq!(signature_of_symmetric(zero), Err(SignatureError::Degenerate));
        let hyperbolic = vec![
            vec![Rational::zero(), Rational::one()],
            vec![Rational::one(), Rational::zero()],
        ];
        assert_eq!(signature_of_symmetric(hyperbolic), Ok(0));
    }

    #[test]
    fn ordinary_matches_generic_at_minus_one() {
        for n in 0u64..=20 {
            let a = knot(n).seifert_matrix_tau();
            let exact = ordinary_signature(&a).unwrap();
            let numeric = lt_signature_generic(&a, angle(1, 2), DEFAULT_TOLERANCE).unwrap();
            assert_eq!(exact, numeric, "n={n}");
        }
        for q in [3u64, 5, 7, 9, 11, 13] {
            let a = torus_2q_matrix(q);
            let exact = ordinary_signature(&a).unwrap();
            let numeric = lt_signature_generic(&a, angle(1, 2), DEFAULT_TOLERANCE).unwrap();
            assert_eq!(exact, numeric, "q={q}");
        }
    }

    #[test]
    fn torus_closed_form_matches_numeric_small() {
        for n in 1u64..=12 {
            let q = 2 * n + 1;
            let m = 4 * n + 1;
            let band = torus_2q_matrix(q);
            for s in 1..m {
                let closed = lt_signature_torus_2q(q, angle(s, m)).unwrap();
                let numeric = lt_signature_generic(&band, angle(s, m), DEFAULT_TOLERANCE).unwrap();
                assert_eq!(closed, numeric, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn torus_closed_form_matches_numeric_sampled_to_fifty() {
        for n in 13u64..=50 {
            let q = 2 * n + 1;
            let m = 4 * n + 1;
            let band = torus_2q_matrix(q);
            for s in [1, 2, 3, n, 2 * n - 1, 2 * n, 2 * n + 1, 2 * n + 2, 3 * n, 4 * n - 1, 4 * n]
            {
                let closed = lt_signature_torus_2q(q, angle(s, m)).unwrap();
                let numeric = lt_signature_generic(&band, angle(s, m), DEFAULT_TOLERANCE).unwrap();
                assert_eq!(closed, numeric, "n={n} s={s}");
            }
        }
    }

    #[test]
    fn twist_knot_signatures_vanish_at_every_angle() {
        for n in 0u64..=50 {
            let k = knot(n);
            let a = k.seifert_matrix_tau();
            let m = k.m();
            for s in 1..m {
                let numeric = lt_signature_generic(&a, angle(s, m), DEFAULT_TOLERANCE).unwrap();
                assert_eq!(numeric, 0, "n={n} s={s}");
                assert_eq!(twist_lt_signature(&k, angle(s, m)).unwrap(), 0);
            }
        }
    }

    proptest! {
        #[test]
        fn torus_closed_form_is_symmetric(n in 1u64..500, raw in 1u64..u64::MAX) {
            let q = 2 * n + 1;
            let m = 4 * n + 1;
            let s = 1 + raw % (m - 1);
            let left = lt_signature_torus_2q(q, angle(s, m)).unwrap();
            let right = lt_signature_torus_2q(q, angle(m - s, m)).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn generic_is_symmetric_in_conjugation(n in 1u64..30, raw in 1u64..u64::MAX) {
            let k = knot(n);
            let a = k.seifert_matrix_tau();
            let m = k.m();
            let s = 1 + raw % (m - 1);
            let left = lt_signature_generic(&a, angle(s, m), DEFAULT_TOLERANCE).unwrap();
            let right = lt_signature_generic(&a, angle(m - s, m), DEFAULT_TOLERANCE).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
