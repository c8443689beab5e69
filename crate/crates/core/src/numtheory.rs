//! Deterministic integer number theory.
//!
//! Primality, factorization by trial division, multiplicative orders,
//! primorials, least primes in arithmetic progressions, prime-power
//! recognition and the Chinese remainder theorem. Nothing here is
//! probabilistic: Miller-Rabin runs with the first twelve primes as
//! witnesses, which is a proof of primality below 3.3 * 10^24, and larger
//! inputs are rejected.

use std::fmt;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Miller-Rabin witnesses 2..=37. Deterministic for every n below
/// [`DETERMINISTIC_BOUND`] (Sorenson and Webster).
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// 3 317 044 064 679 887 385 961 981.
pub const DETERMINISTIC_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
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

/// Primality for any `u64`; never probabilistic.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    if n < 41 * 41 {
        return true;
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primality for arbitrary-precision input. Values at or above
/// [`DETERMINISTIC_BOUND`] are rejected with `MagnitudeExceeded`.
pub fn is_prime_big(n: &BigUint) -> Result<bool> {
    if let Some(small) = n.to_u64() {
        return Ok(is_prime(small));
    }
    if *n >= BigUint::from(DETERMINISTIC_BOUND) {
        return Err(Error::MagnitudeExceeded(n.to_string()));
    }
    for &p in &WITNESSES {
        if (n % p).is_zero() {
            return Ok(false);
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &WITNESSES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Least prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Primes strictly greater than a starting point, in increasing order.
#[derive(Debug, Clone)]
pub struct PrimesAfter {
    current: u64,
}

impl Iterator for PrimesAfter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.current = next_prime(self.current);
        Some(self.current)
    }
}

pub fn primes_after(n: u64) -> PrimesAfter {
    PrimesAfter { current: n }
}

/// Primes `<= n`, by a plain sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Least prime dividing `n`.
pub fn smallest_prime_factor(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::domain(format!(
            "smallest_prime_factor({n}): need n >= 2"
        )));
    }
    if n.is_multiple_of(2) {
        return Ok(2);
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return Ok(d);
        }
        d += 2;
    }
    Ok(n)
}

/// Prime factorization with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| (p as u128).pow(e))
            .product()
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Trial-division factorization of `n >= 1` (`1` factors as the empty product).
pub fn factorize(mut n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("factorize(0)"));
    }
    let mut factors = Vec::new();
    let mut d = 2u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Ok(Factorization { factors })
}

/// Product of the primes `<= n`; `primorial(1) == 1`.
pub fn primorial(n: u64) -> BigUint {
    primes_up_to(n)
        .into_iter()
        .fold(BigUint::one(), |acc, p| acc * p)
}

/// Order of `q` modulo `p`, given the factorization of `p - 1`.
pub(crate) fn order_with(q: u64, p: u64, p_minus_1: &Factorization) -> u64 {
    let mut order = p - 1;
    for &(s, _) in &p_minus_1.factors {
        while order.is_multiple_of(s) && pow_mod(q, order / s, p) == 1 {
            order /= s;
        }
    }
    order
}

/// Multiplicative order of `q` modulo the prime `p`, by divisor descent
/// from `p - 1`.
pub fn mult_order(q: u64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::domain(format!(
            "mult_order: modulus {p} is not prime"
        )));
    }
    if q.is_multiple_of(p) {
        return Err(Error::domain(format!("mult_order: {p} divides {q}")));
    }
    Ok(order_with(q, p, &factorize(p - 1)?))
}

/// Least prime in `a + d, a + 2d, a + 3d, ...`, examining at most
/// `max_terms` terms.
///
/// The progression starts at `n = 1`, so the result is always greater
/// than `d`.
pub fn least_prime_in_ap(a: u64, d: u64, max_terms: u64) -> Result<u64> {
    if a == 0 || a >= d {
        return Err(Error::domain(format!(
            "least_prime_in_ap: need 0 < a < d, got a={a}, d={d}"
        )));
    }
    if a.gcd(&d) != 1 {
        return Err(Error::domain(format!(
            "least_prime_in_ap: gcd({a}, {d}) != 1"
        )));
    }
    let mut x = a;
    for _ in 0..max_terms {
        x = x
            .checked_add(d)
            .ok_or_else(|| Error::MagnitudeExceeded(format!("{a} + n*{d}")))?;
        if is_prime(x) {
            return Ok(x);
        }
    }
    Err(Error::cap(format!("least prime = {a} mod {d}"), max_terms))
}

/// A prime power `base^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub base: u64,
    pub exponent: u32,
    pub value: u64,
}

impl PrimePower {
    /// Checked constructor: `base` must be prime, `exponent >= 1`, and the
    /// value must fit in `u64`.
    pub fn new(base: u64, exponent: u32) -> Result<Self> {
        if !is_prime(base) || exponent == 0 {
            return Err(Error::domain(format!(
                "{base}^{exponent} is not a prime power"
            )));
        }
        let value = base
            .checked_pow(exponent)
            .ok_or_else(|| Error::MagnitudeExceeded(format!("{base}^{exponent}")))?;
        Ok(PrimePower {
            base,
            exponent,
            value,
        })
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{}^{}", self.base, self.exponent)
        }
    }
}

/// `Some((q, r))` with `n = q^r` and `q` prime when `n` is a prime power.
pub fn as_prime_power(n: u64) -> Result<Option<PrimePower>> {
    if n < 2 {
        return Err(Error::domain(format!("as_prime_power({n}): need n >= 2")));
    }
    // Try the largest exponent first so that the base found is prime when
    // n is a prime power.
    for r in (1..=63u32).rev() {
        let q = n.nth_root(r);
        if q < 2 {
            continue;
        }
        if q.checked_pow(r) == Some(n) && is_prime(q) {
            return Ok(Some(PrimePower {
                base: q,
                exponent: r,
                value: n,
            }));
        }
    }
    Ok(None)
}

/// Least non-negative `x` with `x = r_i (mod m_i)` for every pair.
/// Moduli must be positive and pairwise coprime.
pub fn crt(residues: &[(u64, u64)]) -> Result<BigUint> {
    let mut x = BigUint::zero();
    let mut modulus = BigUint::one();
    for &(r, m) in residues {
        if m == 0 {
            return Err(Error::domain("crt: zero modulus"));
        }
        let m_big = BigUint::from(m);
        if !modulus.gcd(&m_big).is_one() {
            return Err(Error::domain(format!(
                "crt: modulus {m} shares a factor with earlier moduli"
            )));
        }
        // Solve x + modulus * k = r (mod m).
        let modulus_mod_m = (&modulus % m).to_u64().unwrap_or(0);
        let x_mod_m = (&x % m).to_u64().unwrap_or(0);
        let target = ((r % m) as i128 - x_mod_m as i128).rem_euclid(m as i128) as u64;
        let inv = mod_inverse(modulus_mod_m, m)
            .ok_or_else(|| Error::domain("crt: moduli not coprime"))?;
        let k = mul_mod(target, inv, m);
        x += &modulus * k;
        modulus *= m_big;
    }
    Ok(x)
}

/// Inverse of `a` modulo `m`, when it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = extended_gcd(a as i128, m as i128);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m as i128) as u64)
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = extended_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}
