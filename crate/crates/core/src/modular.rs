//! Arithmetic in `Z/(q-1)`, the coefficient ring of every congruence.

use crate::error::{Error, Result};

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Non-negative representative of `x mod m`.
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Image of `num / den` in `Z/m`; the reduced denominator must be a unit mod `m`.
pub fn fraction_residue(num: i128, den: i128, m: u64) -> Result<u64> {
    if den == 0 {
        return Err(Error::Inconsistency("zero denominator".into()));
    }
    let g = gcd(num, den);
    let (mut n, mut d) = (num / g.max(1), den / g.max(1));
    if d < 0 {
        n = -n;
        d = -d;
    }
    if m == 1 {
        return Ok(0);
    }
    let inv = mod_inverse(reduce(d, m), m).ok_or_else(|| {
        Error::Inconsistency(format!("denominator {d} of {num}/{den} is not invertible modulo {m}"))
    })?;
    Ok(((reduce(n, m) as u128 * inv as u128) % m as u128) as u64)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| reduce(old_s, m))
}

/// `a / b` as an exact integer division, failing loudly otherwise.
pub fn exact_div(a: i128, b: i128, what: &str) -> Result<i128> {
    if b == 0 || a % b != 0 {
        return Err(Error::Inconsistency(format!("{what}: {a} is not divisible by {b}")));
    }
    Ok(a / b)
}
