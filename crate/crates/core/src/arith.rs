//! Exact rational arithmetic, ceiling division, and integer factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Arbitrary-precision rational, kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `p/q` and reduces it.
    ///
    /// # Panics
    ///
    /// Panics if `q` is zero.
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(p.into(), q.into()))
    }

    pub fn from_integer(p: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(p.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Sign as -1, 0, or 1.
    pub fn signum(&self) -> i32 {
        if self.0.is_negative() {
            -1
        } else if self.0.is_zero() {
            0
        } else {
            1
        }
    }

    /// Fixed-point decimal rendering, rounding half away from zero.
    ///
    /// Exact integers render without a decimal point so that `4/1` comes out
    /// as `"4"`, not `"4.00"`. Everything else gets exactly `precision`
    /// digits after the point. A value that rounds to zero drops its sign.
    pub fn to_decimal(&self, precision: usize) -> String {
        if self.is_integer() {
            return self.numer().to_string();
        }
        let num = self.numer().abs();
        let den = self.denom().clone();
        let scaled = num * BigInt::from(10u32).pow(precision as u32);
        let (mut q, r) = scaled.div_rem(&den);
        if &r * 2 >= den {
            q += 1;
        }
        let digits = q.to_string();
        let mut body = if precision == 0 {
            digits
        } else {
            let padded = format!("{digits:0>width$}", width = precision + 1);
            let split = padded.len() - precision;
            format!("{}.{}", &padded[..split], &padded[split..])
        };
        if self.is_negative() && !q.is_zero() {
            body.insert(0, '-');
        }
        body
    }
}

impl fmt::Display for Rational {
    /// Canonical exact form: `p/q`, or just `p` when the value is an integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error parsing a `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}")]
pub struct ParseRationalError {
    pub input: String,
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRationalError { input: s.to_string() };
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(Rational::new(p, q))
            }
            None => {
                let p: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational::from_integer(p))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RationalVisitor;

impl Visitor<'_> for RationalVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a rational as a \"p/q\" string or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rational, E> {
        v.parse().map_err(|_| E::custom(format!("invalid rational {v:?}")))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rational, E> {
        Ok(Rational::from_integer(v))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(RationalVisitor)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }

        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }

        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }

        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl DivAssign<&Rational> for Rational {
    fn div_assign(&mut self, rhs: &Rational) {
        self.0 /= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_integer(v)
    }
}

/// Serde adapters rendering big integers as decimal strings, so JSON output
/// stays readable and exact at any magnitude.
pub(crate) mod big_serde {
    use num_bigint::{BigInt, BigUint};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub(crate) mod int {
        use super::*;

        pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
            s.serialize_str(&v.to_string())
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
            let s = String::deserialize(d)?;
            s.parse().map_err(serde::de::Error::custom)
        }
    }

    pub(crate) mod int_vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
            let strings: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            strings.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
            let strings = Vec::<String>::deserialize(d)?;
            strings.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
        }
    }

    pub(crate) mod opt_uint_pair {
        use super::*;

        pub fn serialize<S: Serializer>(
            v: &Option<(BigUint, BigUint)>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|(x, y)| (x.to_string(), y.to_string())).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<(BigUint, BigUint)>, D::Error> {
            let pair = Option::<(String, String)>::deserialize(d)?;
            pair.map(|(x, y)| {
                Ok((
                    x.parse().map_err(serde::de::Error::custom)?,
                    y.parse().map_err(serde::de::Error::custom)?,
                ))
            })
            .transpose()
        }
    }
}

/// Ceiling of `a / b` for positive `b`, exact at every magnitude.
///
/// # Panics
///
/// Panics if `b <= 0`.
pub fn ceil_div(a: i128, b: i128) -> i128 {
    assert!(b > 0, "ceil_div requires a positive divisor, got {b}");
    let q = a.div_euclid(b);
    if a.rem_euclid(b) != 0 {
        q + 1
    } else {
        q
    }
}

/// Prime factorization of a positive integer, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub value: u64,
    /// `(prime, exponent)` pairs in ascending prime order.
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The distinct primes, ascending.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// True when the value is `p^k` for a single prime `p` (so `1` is not a
    /// prime power).
    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for Factorization {
    /// Compact form like `3^2*89`; the empty product renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for &(p, e) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factors a positive integer. Trial division handles small factors and a
/// Brent-cycle Pollard rho splits whatever survives past `10^12`.
///
/// # Panics
///
/// Panics if `v` is zero.
pub fn factorize(v: u64) -> Factorization {
    assert!(v >= 1, "factorize requires a positive integer");
    let mut rest = v;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut push = |p: u64, e: u32| factors.push((p, e));

    for p in std::iter::once(2).chain((3..=1_000_000).step_by(2)) {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            push(p, e);
        }
    }

    if rest > 1 {
        if rest < 1_000_000_000_000 || is_prime(rest) {
            // No divisor up to 10^6 survived, so below 10^12 the remainder
            // is prime.
            push(rest, 1);
        } else {
            let mut large = Vec::new();
            split_composite(rest, &mut large);
            large.sort_unstable();
            let mut i = 0;
            while i < large.len() {
                let p = large[i];
                let mut e = 0;
                while i < large.len() && large[i] == p {
                    e += 1;
                    i += 1;
                }
                push(p, e);
            }
        }
    }

    factors.sort_unstable();
    Factorization { value: v, factors }
}

fn split_composite(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_composite(d, out);
    split_composite(n / d, out);
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d & 1 == 0 {
        d >>= 1;
        r += 1;
    }
    // This witness set decides primality for every n below 3.3 * 10^24,
    // which covers u64.
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Finds one nontrivial divisor of an odd composite with no small factors.
/// Brent's cycle variant with a deterministic parameter sweep.
fn pollard_rho(n: u64) -> u64 {
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = num_integer::gcd(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 22 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    unreachable!("rho parameter sweep exhausted on {n}")
}
