//! Casson-Gordon tau-signatures: Gilmer's genus-one formula, its exact
//! twist-knot specialization, and full signature tables.

use crate::arith::{ceil_div, factorize, Rational};
use crate::seifert::TwistKnot;
use num_bigint::BigInt;
use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Errors from tau-signature evaluation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TauError {
    #[error("character index {s} is outside 0..{m}")]
    IndexOutOfRange { s: u64, m: u64 },
    /// Gilmer's formula certifies the signature only for prime-power
    /// character order.
    #[error("order {m} is not a prime power, formula value is not certified")]
    NonPrimePowerOrder { m: u64 },
}

/// A character on the order-`m` first homology of the double branched
/// cover, indexed by where it sends the distinguished generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    s: u64,
    m: u64,
}

impl Character {
    pub fn new(s: u64, m: u64) -> Result<Self, TauError> {
        if m == 0 || s >= m {
            return Err(TauError::IndexOutOfRange { s, m });
        }
        Ok(Character { s, m })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn is_trivial(&self) -> bool {
        self.s == 0
    }
}

/// Inputs to Gilmer's genus-one formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GilmerInput {
    /// Self-pairing of the distinguished homology class.
    #[serde(with = "crate::arith::big_serde::int")]
    pub theta_xx: BigInt,
    /// Levine-Tristram signature of the companion knot at `s/m`.
    pub sigma_j: i64,
    /// Ordinary signature of the ambient knot.
    pub sigma_k: i64,
    pub s: u64,
    pub m: u64,
}

/// A formula value together with whether the prime-power hypothesis held,
/// which is what certifies it as an actual tau-signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GilmerValue {
    pub value: Rational,
    pub certified: bool,
}

/// Genus-one signature formula: `2 sigma_J + sigma_K + 4 (m-s) s theta / m^2`,
/// evaluated exactly. Certification of the result as a tau-signature is the
/// caller's concern; see `gilmer_tau`.
pub fn gilmer_formula(input: &GilmerInput) -> Rational {
    let m = BigInt::from(input.m);
    let spread = BigInt::from(input.m - input.s) * BigInt::from(input.s) * 4;
    Rational::from_integer(2 * input.sigma_j + input.sigma_k)
        + Rational::new(spread * &input.theta_xx, &m * &m)
}

/// Gilmer's genus-one formula
///
/// ```text
/// sigma_1(tau(K, chi)) = 2 sigma_{s/m}(J) + 4(m-s)s/m^2 * theta(x,x) + sigma(K)
/// ```
///
/// in strict mode: the order `m` must be a prime power, otherwise the
/// right-hand side is not a certified tau-signature and this returns
/// `NonPrimePowerOrder`.
pub fn gilmer_tau(input: &GilmerInput) -> Result<Rational, TauError> {
    if input.s == 0 || input.s >= input.m {
        return Err(TauError::IndexOutOfRange { s: input.s, m: input.m });
    }
    if !factorize(input.m).is_prime_power() {
        return Err(TauError::NonPrimePowerOrder { m: input.m });
    }
    Ok(gilmer_formula(input))
}

/// Same right-hand side without the strict gate; `certified` records
/// whether the prime-power hypothesis held.
pub fn gilmer_tau_permissive(input: &GilmerInput) -> Result<GilmerValue, TauError> {
    if input.s == 0 || input.s >= input.m {
        return Err(TauError::IndexOutOfRange { s: input.s, m: input.m });
    }
    Ok(GilmerValue {
        value: gilmer_formula(input),
        certified: factorize(input.m).is_prime_power(),
    })
}

/// Exact tau-signature of the twist knot at character index `s`:
///
/// ```text
/// s = 0:              0
/// 1 <= s <= 2n:       -4 ceil(s/2)       + 4(m-s)s/m
/// 2n+1 <= s <= 4n:    -4 ceil((m-s)/2)   + 4(m-s)s/m,    m = 4n+1.
/// ```
pub fn tau_twist(k: &TwistKnot, s: u64) -> Result<Rational, TauError> {
    let m = k.m();
    if s >= m {
        return Err(TauError::IndexOutOfRange { s, m });
    }
    if s == 0 {
        return Ok(Rational::zero());
    }
    let folded = if s <= 2 * k.n() { s } else { m - s };
    let lead = -4 * ceil_div(folded as i128, 2);
    let spread = BigInt::from(m - s) * BigInt::from(s) * 4;
    Ok(Rational::from_integer(lead) + Rational::new(spread, BigInt::from(m)))
}

/// Full table of tau-signatures of a twist knot, indexed by character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauTable {
    knot: TwistKnot,
    values: Vec<Rational>,
}

/// All `m = 4n+1` values of `tau_twist`, in character order. Rows are
/// independent, so the table fills in parallel when the `parallel` feature
/// is on.
pub fn tau_table(k: &TwistKnot) -> TauTable {
    #[cfg(feature = "parallel")]
    {
        let compute = |s: u64| tau_twist(k, s).expect("index ranges over 0..m");
        let values: Vec<Rational> = (0..k.m()).into_par_iter().map(compute).collect();
        TauTable { knot: *k, values }
    }
    #[cfg(not(feature = "parallel"))]
    {
        tau_table_seq(k)
    }
}

/// Single-threaded twin of `tau_table`, for benchmarks and determinism
/// checks.
pub fn tau_table_seq(k: &TwistKnot) -> TauTable {
    let compute = |s: u64| tau_twist(k, s).expect("index ranges over 0..m");
    let values: Vec<Rational> = (0..k.m()).map(compute).collect();
    TauTable { knot: *k, values }
}

impl TauTable {
    pub fn knot(&self) -> &TwistKnot {
        &self.knot
    }

    pub fn m(&self) -> u64 {
        self.knot.m()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, s: u64) -> Option<&Rational> {
        self.values.get(s as usize)
    }

    /// `(s, value)` pairs in index order.
    pub fn pairs(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.values.iter().enumerate().map(|(s, v)| (s as u64, v))
    }

    /// CSV with one `#` metadata line, a header, and one row per character.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# tau n={} m={} precision={}\n",
            self.knot.n(),
            self.m(),
            precision
        ));
        out.push_str("element,signature_exact,signature_decimal\n");
        for (s, v) in self.pairs() {
            out.push_str(&format!("{s},{v},{}\n", v.to_decimal(precision)));
        }
        out
    }

    /// Parses the output of `to_csv`, recovering the exact rationals.
    pub fn from_csv(text: &str) -> Result<TauTable, TableParseError> {
        let fail = |line: usize, message: String| TableParseError { line, message };
        let mut values = Vec::new();
        let mut saw_header = false;
        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            if line.starts_with('#') || line.is_empty() {
                continue;
            }
            if !saw_header {
                if line != "element,signature_exact,signature_decimal" {
                    return Err(fail(lineno, format!("unexpected header {line:?}")));
                }
                saw_header = true;
                continue;
            }
            let mut cells = line.split(',');
            let (Some(element), Some(exact), Some(_decimal), None) =
                (cells.next(), cells.next(), cells.next(), cells.next())
            else {
                return Err(fail(lineno, "expected three cells".to_string()));
            };
            let element: u64 =
                element.parse().map_err(|e| fail(lineno, format!("bad element: {e}")))?;
            if element as usize != values.len() {
                return Err(fail(lineno, format!("element {element} out of order")));
            }
            let exact: Rational =
                exact.parse().map_err(|e| fail(lineno, format!("bad rational: {e}")))?;
            values.push(exact);
        }
        if !saw_header {
            return Err(fail(0, "missing header".to_string()));
        }
        let m = values.len() as u64;
        if m % 4 != 1 {
            return Err(fail(0, format!("{m} rows do not form a twist-knot table")));
        }
        let knot = TwistKnot::new((m - 1) / 4)
            .map_err(|e| fail(0, format!("unsupported knot: {e}")))?;
        Ok(TauTable { knot, values })
    }
}

impl Serialize for TauTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("TauTable", 3)?;
        state.serialize_field("n", &self.knot.n())?;
        state.serialize_field("m", &self.m())?;
        state.serialize_field("values", &self.values)?;
        state.end()
    }
}

impl<'de> Deserialize<'de> for TauTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: u64,
            #[serde(default)]
            m: Option<u64>,
            values: Vec<Rational>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let knot = TwistKnot::new(raw.n).map_err(de::Error::custom)?;
        if let Some(m) = raw.m {
            if m != knot.m() {
                return Err(de::Error::custom(format!("m={} does not match n={}", m, raw.n)));
            }
        }
        if raw.values.len() as u64 != knot.m() {
            return Err(de::Error::custom(format!(
                "expected {} values, got {}",
                knot.m(),
                raw.values.len()
            )));
        }
        Ok(TauTable { knot, values: raw.values })
    }
}

/// Malformed table text.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("table parse error at line {line}: {message}")]
pub struct TableParseError {
    pub line: usize,
    pub message: String,
}
