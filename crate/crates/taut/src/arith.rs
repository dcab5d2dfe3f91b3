//! Exact scalars and the closed-form constants used for intersection numbers.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::Rat;

/// Rational from a pair of machine integers. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Canonical text form: `p/q` in lowest terms, `0/1` for zero.
pub fn rat_str(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Usage(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Serde adapter storing a [`Rat`] as its canonical string.
pub mod serde_rat {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_str(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `n!!` with `(-1)!! = 0!! = 1`.
pub fn double_factorial(n: i64) -> Result<Rat> {
    if n < -1 {
        return domain(format!("double factorial of {n}"));
    }
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    Ok(Rat::from_integer(acc))
}

/// All Bernoulli numbers `B_0..=B_m` with `B_1 = -1/2`.
pub fn bernoulli_table(m: usize) -> Vec<Rat> {
    let mut b: Vec<Rat> = Vec::with_capacity(m + 1);
    b.push(Rat::one());
    for n in 1..=m {
        // sum_{k=0}^{n} C(n+1,k) B_k = 0
        let mut s = Rat::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += Rat::from_integer(binomial(n as u64 + 1, k as u64)) * bk;
            }
        }
        b.push(-s / Rat::from_integer(BigInt::from(n + 1)));
    }
    b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bern {
    pub index: u32,
    #[serde(with = "serde_rat")]
    pub value: Rat,
}

/// `B_m` for even `m >= 0`.
pub fn bernoulli(m: i64) -> Result<Rat> {
    if m < 0 || m.is_odd() {
        return domain(format!("bernoulli index {m} must be even and non-negative"));
    }
    static CACHE: Mutex<Vec<Rat>> = Mutex::new(Vec::new());
    let mut table = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if table.len() <= m as usize {
        *table = bernoulli_table(m as usize);
    }
    Ok(table[m as usize].clone())
}

pub fn bern(m: i64) -> Result<Bern> {
    Ok(Bern { index: m as u32, value: bernoulli(m)? })
}

/// `A_g = (-1)^{g-1} B_{2g} (g-1)! / (2^g (2g)!)`.
pub fn a_g(g: i64) -> Result<Rat> {
    if g < 2 {
        return domain(format!("A_g needs g >= 2, got {g}"));
    }
    let b = bernoulli(2 * g)?;
    let sign = if (g - 1).is_odd() { -Rat::one() } else { Rat::one() };
    let num = Rat::from_integer(factorial(g as u64 - 1));
    let den = Rat::from_integer(BigInt::from(2).pow(g as u32) * factorial(2 * g as u64));
    Ok(sign * b * num / den)
}

/// The constant `C` attached to a top profile `(d; k)` with `sum d + sum k = g - 1`.
pub fn c_const(g: i64, d: &[i64], k: &[i64]) -> Result<Rat> {
    if g < 2 {
        return domain(format!("c_const needs g >= 2, got {g}"));
    }
    if d.iter().chain(k).any(|&x| x < 0) {
        return domain("c_const entries must be non-negative");
    }
    let total: i64 = d.iter().chain(k).sum();
    if total != g - 1 {
        return domain(format!("profile degree {total} != g-1 = {}", g - 1));
    }
    let n = (d.len() + k.len()) as i64;
    let mut den = Rat::from_integer(factorial(2 * g as u64 - 2));
    for &x in d.iter().chain(k) {
        den *= double_factorial(2 * x + 1)?;
    }
    let num = Rat::from_integer(factorial((2 * g - 3 + n) as u64)) * double_factorial(2 * g - 3)?;
    Ok(num / den)
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Rat) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}
