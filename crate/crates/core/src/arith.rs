//! Small exact-integer helpers used throughout: gcd/lcm, extended gcd,
//! modular inverses, trial-division factoring, and a two-modulus CRT.
//! Everything is checked; sizes at play are tiny (group exponents fit u64
//! comfortably) but overflow still surfaces as an error instead of wrapping.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b).
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        // Normalize so g >= 0.
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Inverse of a modulo m, in {0, .., m-1}. For m == 1 the inverse is 0.
pub fn mod_inverse(a: u64, m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("modulus must be positive".into()));
    }
    if m == 1 {
        return Ok(0);
    }
    let a = (a % m) as i64;
    let (g, x, _) = ext_gcd(a, m as i64);
    if g != 1 {
        return Err(Error::InvalidInput(format!(
            "{a} is not invertible modulo {m}"
        )));
    }
    Ok((x.rem_euclid(m as i64)) as u64)
}

/// Distinct prime divisors of n, ascending. Empty for n <= 1.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Full factorization of n as (prime, exponent) pairs, ascending primes.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut n = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn smallest_prime_divisor(n: u64) -> Option<u64> {
    prime_divisors(n).into_iter().next()
}

/// Unique x in {0, .., m1*m2 - 1} with x = r1 (mod m1) and x = r2 (mod m2).
/// Requires gcd(m1, m2) = 1.
pub fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> Result<u64> {
    if gcd(m1, m2) != 1 {
        return Err(Error::InvalidInput("CRT moduli are not coprime".into()));
    }
    let m = m1.checked_mul(m2).ok_or(Error::Overflow("crt"))?;
    // x = r1 + m1 * t where t = (r2 - r1) * m1^{-1} (mod m2).
    let inv = mod_inverse(m1 % m2.max(1), m2)?;
    let diff = ((r2 % m2) as i128 - (r1 % m2) as i128).rem_euclid(m2 as i128) as u64;
    let t = (diff as u128 * inv as u128 % m2.max(1) as u128) as u64;
    Ok(((r1 as u128 + m1 as u128 * t as u128) % m as u128) as u64)
}
