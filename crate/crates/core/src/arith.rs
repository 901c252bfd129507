//! Machine-integer number theory used by the field layer: primality,
//! factorization of small integers, modular powers and ℓ-adic valuations.

use crate::error::{Error, Result};

/// Deterministic primality test by trial division (inputs are below 2^32 in practice).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q` as `p^m` if it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut m = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        m += 1;
    }
    Some((p, m))
}

/// Largest `v` with `ell^v | x`.
pub fn ell_adic_valuation(x: u64, ell: u64) -> Result<u32> {
    if x == 0 {
        return Err(Error::InvalidArgument("valuation of 0 is undefined".into()));
    }
    if !is_prime(ell) {
        return Err(Error::InvalidArgument(format!("{ell} is not prime")));
    }
    let mut v = 0;
    let mut x = x;
    while x.is_multiple_of(ell) {
        x /= ell;
        v += 1;
    }
    Ok(v)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// `ell^e`, or `None` on u64 overflow.
pub fn checked_pow(ell: u64, e: u32) -> Option<u64> {
    ell.checked_pow(e)
}
