//! The threshold functions, computed exactly.
//!
//! * `t(p)`, `r(p)`: least prime powers `q^d > ...` with `q > p` prime and
//!   `ord_p(q) = d >= 1` (resp. `>= 2`).
//! * `f_n(p) = (1 + (p² - 1)/t(p)) / p²`, `f_s(p)` likewise with `r(p)`.
//! * `g_n(p) = max_{q >= p prime} f_n(q)`, `g_s(p)` likewise.
//! * `k(p)`, `l(p)`: least `m > 1` with every prime factor `>= p` and
//!   `2m + 1 = q^e`, `q >= p` prime (`e >= 2` for `l`).
//! * `h_n(p) = 3k(p)/(k(p)+2)`, `h_s(p) = 3l(p)/(l(p)+2)`.
//! * `f(t, r) = t(r+1)/(t+r)`.
//! * An explicit cube `2l + 1 = q^3` with `gcd(l, (p-1)#) = 1`, proving that
//!   `k(p)` and `l(p)` exist.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::numtheory::{
    crt, factorize, is_prime, is_prime_big, mult_order, order_with, primes_after, primes_up_to,
    primorial, smallest_prime_factor, PrimePower,
};
use crate::rational::Rational;

fn require_odd_prime(p: u64, what: &str) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what}: p = {p} must be an odd prime"
        )))
    }
}

/// Whether `p` is a Zsigmondy prime for `<q, r>`: `p ∤ q` and `ord_p(q) = r`.
pub fn is_zsigmondy(p: u64, q: u64, r: u64) -> bool {
    !q.is_multiple_of(p) && mult_order(q, p).is_ok_and(|d| d == r)
}

/// `min T(p, l)` together with the prime power attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZsigmondyMinimum {
    pub p: u64,
    pub l: u32,
    pub witness: PrimePower,
    pub value: u64,
}

/// Minimum of `T(p, l)` for `l ∈ {1, 2}`.
///
/// Primes `q > p` are visited in order; each contributes `q^ord_p(q)` when
/// that order is at least `l`. Every candidate from `q` is at least `q^l`,
/// so the scan stops once `q^l` reaches the best value.
pub fn zsig_min(p: u64, l: u32, limits: &Limits) -> Result<ZsigmondyMinimum> {
    require_odd_prime(p, "zsig_min")?;
    if !(1..=2).contains(&l) {
        return Err(Error::domain(format!("zsig_min: l = {l} not in {{1, 2}}")));
    }
    let p_minus_1 = factorize(p - 1)?;
    let mut best: Option<PrimePower> = None;
    for q in primes_after(p) {
        if let Some(b) = best {
            if q.checked_pow(l).is_none_or(|floor| floor >= b.value) {
                break;
            }
        }
        if q > limits.prime_scan_cap {
            return Err(Error::cap(
                format!("T({p}, {l}) prime scan"),
                limits.prime_scan_cap,
            ));
        }
        let d = order_with(q, p, &p_minus_1);
        if d < l as u64 {
            continue;
        }
        let Ok(exponent) = u32::try_from(d) else {
            continue;
        };
        if let Some(value) = q.checked_pow(exponent) {
            if best.is_none_or(|b| value < b.value) {
                best = Some(PrimePower {
                    base: q,
                    exponent,
                    value,
                });
            }
        }
    }
    let witness = best.expect("loop exits only with a candidate");
    Ok(ZsigmondyMinimum {
        p,
        l,
        witness,
        value: witness.value,
    })
}

/// `t(p)`.
pub fn t_of(p: u64, limits: &Limits) -> Result<ZsigmondyMinimum> {
    zsig_min(p, 1, limits)
}

/// `r(p)`.
pub fn r_of(p: u64, limits: &Limits) -> Result<ZsigmondyMinimum> {
    zsig_min(p, 2, limits)
}

/// `(1 + (p² - 1)/t) / p²`.
pub fn commuting_bound_formula(p: u64, t: u64) -> Rational {
    let p2 = p as u128 * p as u128;
    Rational::new(t as u128 + p2 - 1, t as u128 * p2)
}

pub fn f_n(p: u64, limits: &Limits) -> Result<Rational> {
    Ok(commuting_bound_formula(p, t_of(p, limits)?.value))
}

pub fn f_s(p: u64, limits: &Limits) -> Result<Rational> {
    Ok(commuting_bound_formula(p, r_of(p, limits)?.value))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    #[serde(rename = "f_n")]
    Fn,
    #[serde(rename = "f_s")]
    Fs,
    #[serde(rename = "g_n")]
    Gn,
    #[serde(rename = "g_s")]
    Gs,
    #[serde(rename = "h_n")]
    Hn,
    #[serde(rename = "h_s")]
    Hs,
}

impl BoundKind {
    pub const ALL: [BoundKind; 6] = [
        BoundKind::Fn,
        BoundKind::Fs,
        BoundKind::Gn,
        BoundKind::Gs,
        BoundKind::Hn,
        BoundKind::Hs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Fn => "f_n",
            BoundKind::Fs => "f_s",
            BoundKind::Gn => "g_n",
            BoundKind::Gs => "g_s",
            BoundKind::Hn => "h_n",
            BoundKind::Hs => "h_s",
        }
    }

    /// Commuting-probability kinds (as opposed to acd kinds).
    pub fn is_commuting(self) -> bool {
        !matches!(self, BoundKind::Hn | BoundKind::Hs)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "");
        BoundKind::ALL
            .into_iter()
            .find(|k| k.name().replace('_', "") == key)
            .ok_or_else(|| Error::domain(format!("unknown bound kind {s:?}")))
    }
}

/// What attains a bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum BoundWitness {
    /// `f(q)` with `q` the maximizing prime (`q = p` for `f_n`, `f_s`).
    Zsigmondy { q: u64, minimum: ZsigmondyMinimum },
    /// `k(p)` or `l(p)` and the prime power `2m + 1`.
    HalfPrimePower {
        m: u64,
        prime_power: PrimePower,
        base_equals_p: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub p: u64,
    pub kind: BoundKind,
    pub value: Rational,
    pub witness: BoundWitness,
}

fn f_report(p: u64, l: u32, kind: BoundKind, limits: &Limits) -> Result<BoundReport> {
    let minimum = zsig_min(p, l, limits)?;
    Ok(BoundReport {
        p,
        kind,
        value: commuting_bound_formula(p, minimum.value),
        witness: BoundWitness::Zsigmondy { q: p, minimum },
    })
}

/// Maximum of `f(q)` over primes `q >= p`.
///
/// `t(q) >= q + 2` gives `f_n(q) < 1/q`, and `r(q) > q²` gives
/// `f_s(q) < 2/q²`, so the scan ends once that ceiling drops to `best`.
fn g_report(p: u64, l: u32, kind: BoundKind, limits: &Limits) -> Result<BoundReport> {
    require_odd_prime(p, kind.name())?;
    let mut best_min = zsig_min(p, l, limits)?;
    let mut best_q = p;
    let mut best = commuting_bound_formula(p, best_min.value);
    for q in primes_after(p) {
        let ceiling = if l == 1 {
            Rational::new(1u64, q)
        } else {
            Rational::new(2u64, q as u128 * q as u128)
        };
        if ceiling <= best {
            break;
        }
        let minimum = zsig_min(q, l, limits)?;
        let value = commuting_bound_formula(q, minimum.value);
        if value > best {
            best = value;
            best_q = q;
            best_min = minimum;
        }
    }
    Ok(BoundReport {
        p,
        kind,
        value: best,
        witness: BoundWitness::Zsigmondy {
            q: best_q,
            minimum: best_min,
        },
    })
}

pub fn g_n(p: u64, limits: &Limits) -> Result<BoundReport> {
    g_report(p, 1, BoundKind::Gn, limits)
}

pub fn g_s(p: u64, limits: &Limits) -> Result<BoundReport> {
    g_report(p, 2, BoundKind::Gs, limits)
}

/// Result of the `k(p)` / `l(p)` searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfPrimePower {
    pub m: u64,
    pub prime_power: PrimePower,
}

/// Least `m > 1` with `smallest_prime_factor(m) >= p` and `2m + 1 = q^e`,
/// `q >= p` prime, `e >= min_exponent`.
///
/// Prime powers are visited in increasing value through a min-heap holding
/// the next power of each base seen so far; a new base enters once the
/// previous one has been popped at its first power.
fn half_prime_power_search(p: u64, min_exponent: u32, limits: &Limits) -> Result<HalfPrimePower> {
    let cap = limits.prime_power_cap;
    let exhausted = || Error::cap(format!("prime powers 2m+1 >= {p}^{min_exponent}"), cap);
    let first = |q: u64| q.checked_pow(min_exponent).ok_or_else(exhausted);

    let mut heap = BinaryHeap::new();
    let mut newest_base = p;
    heap.push(Reverse((first(p)?, p, min_exponent)));
    while let Some(Reverse((value, base, exponent))) = heap.pop() {
        if value > cap {
            return Err(exhausted());
        }
        if let Some(next) = value.checked_mul(base) {
            heap.push(Reverse((next, base, exponent + 1)));
        }
        if base == newest_base && exponent == min_exponent {
            newest_base = primes_after(newest_base)
                .next()
                .expect("infinitely many primes");
            if let Ok(v) = first(newest_base) {
                heap.push(Reverse((v, newest_base, min_exponent)));
            }
        }
        let m = (value - 1) / 2;
        if m > 1 && smallest_prime_factor(m)? >= p {
            return Ok(HalfPrimePower {
                m,
                prime_power: PrimePower {
                    base,
                    exponent,
                    value,
                },
            });
        }
    }
    Err(exhausted())
}

/// `k(p)`.
pub fn k_search(p: u64, limits: &Limits) -> Result<HalfPrimePower> {
    require_odd_prime(p, "k_search")?;
    half_prime_power_search(p, 1, limits)
}

/// `l(p)`.
pub fn l_search(p: u64, limits: &Limits) -> Result<HalfPrimePower> {
    require_odd_prime(p, "l_search")?;
    half_prime_power_search(p, 2, limits)
}

/// `3m / (m + 2)`.
pub fn acd_bound_formula(m: u64) -> Rational {
    Rational::new(3 * m as u128, m as u128 + 2)
}

fn h_report(p: u64, kind: BoundKind, hit: HalfPrimePower) -> BoundReport {
    BoundReport {
        p,
        kind,
        value: acd_bound_formula(hit.m),
        witness: BoundWitness::HalfPrimePower {
            m: hit.m,
            prime_power: hit.prime_power,
            base_equals_p: hit.prime_power.base == p,
        },
    }
}

pub fn h_n(p: u64, limits: &Limits) -> Result<BoundReport> {
    Ok(h_report(p, BoundKind::Hn, k_search(p, limits)?))
}

pub fn h_s(p: u64, limits: &Limits) -> Result<BoundReport> {
    if p <= 3 {
        return Err(Error::domain(format!("h_s: p = {p} must be a prime > 3")));
    }
    Ok(h_report(p, BoundKind::Hs, l_search(p, limits)?))
}

/// Dispatches on `kind`.
pub fn bound(p: u64, kind: BoundKind, limits: &Limits) -> Result<BoundReport> {
    match kind {
        BoundKind::Fn => {
            require_odd_prime(p, "f_n")?;
            f_report(p, 1, kind, limits)
        }
        BoundKind::Fs => {
            require_odd_prime(p, "f_s")?;
            f_report(p, 2, kind, limits)
        }
        BoundKind::Gn => g_n(p, limits),
        BoundKind::Gs => g_s(p, limits),
        BoundKind::Hn => h_n(p, limits),
        BoundKind::Hs => h_s(p, limits),
    }
}

/// `f(t, r) = t(r + 1) / (t + r)`. Requires `t + r > 0`.
pub fn f_tr(t: u64, r: u64) -> Rational {
    assert!(t + r > 0, "f(0, 0) is undefined");
    Rational::new(t as u128 * (r as u128 + 1), t as u128 + r as u128)
}

mod big_decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::from_str(&text).map_err(serde::de::Error::custom)
    }
}

/// A cube `2l + 1 = q^3` with `gcd(l, (p-1)#) = 1` and `q > p` prime.
/// Big integers travel as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerrWitness {
    pub p: u64,
    /// CRT residue modulo `(p-1)#` with `a = -1 (mod r)` for primes `r < p`.
    #[serde(with = "big_decimal")]
    pub a: BigUint,
    #[serde(with = "big_decimal")]
    pub n: BigUint,
    #[serde(with = "big_decimal")]
    pub q: BigUint,
    #[serde(with = "big_decimal")]
    pub l: BigUint,
}

impl KerrWitness {
    /// Re-checks `2l + 1 = q^3`, `gcd(l, (p-1)#) = 1`, `q > p` and `q`
    /// prime.
    pub fn verify(&self) -> Result<bool> {
        let cube = &self.q * &self.q * &self.q;
        let coprime = self.l.gcd(&primorial(self.p - 1)).is_one();
        Ok(&self.l * 2u32 + 1u32 == cube
            && coprime
            && self.q > BigUint::from(self.p)
            && is_prime_big(&self.q)?)
    }
}

/// Builds the cube witness: `a` by CRT from `a = -1 (mod r)` for every
/// prime `r < p`, then the least prime `q > p` in
/// `2a + 1, 2a + 1 + 2(p-1)#, ...`, `n = (q - 1)/2`, `l = n(4n² + 6n + 3)`.
pub fn kerr_witness(p: u64, limits: &Limits) -> Result<KerrWitness> {
    if !is_prime(p) {
        return Err(Error::domain(format!("kerr_witness: {p} is not prime")));
    }
    let residues: Vec<(u64, u64)> = primes_up_to(p - 1)
        .into_iter()
        .map(|r| (r - 1, r))
        .collect();
    let a = crt(&residues)?;
    let step = primorial(p - 1) * 2u32;
    let mut q = &a * 2u32 + 1u32;
    let p_big = BigUint::from(p);
    let mut found = false;
    for _ in 0..limits.prime_scan_cap {
        if q > p_big && is_prime_big(&q)? {
            found = true;
            break;
        }
        q += &step;
    }
    if !found {
        return Err(Error::cap(
            format!("Kerr prime scan for p = {p}"),
            limits.prime_scan_cap,
        ));
    }
    let n: BigUint = (&q - 1u32) / 2u32;
    let l = &n * (&n * &n * 4u32 + &n * 6u32 + 3u32);
    let witness = KerrWitness { p, a, n, q, l };
    assert!(
        witness.verify()?,
        "Kerr construction invariants failed for p = {p}"
    );
    Ok(witness)
}
