//! Explicit models of GF(q^m).
//!
//! A field is the residue ring GF(q)[x]/(f) for the lexicographically least
//! monic irreducible `f` of degree `m`. Elements are addressed by their
//! *rank*: the coefficient vector `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` read
//! as the base-q integer `c_0 + c_1 q + ... + c_{m-1} q^{m-1}`. Ranks give
//! stable indices for the group constructions built on top of this module.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, is_prime, mod_inverse};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 10_000_000;

/// Polynomial over GF(q), coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Poly {
    coeffs: Vec<u64>,
    modulus: u64,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>, modulus: u64) -> Self {
        for c in coeffs.iter_mut() {
            *c %= modulus;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs, modulus }
    }

    pub fn zero(modulus: u64) -> Self {
        Poly::new(Vec::new(), modulus)
    }

    pub fn one(modulus: u64) -> Self {
        Poly::new(vec![1], modulus)
    }

    /// The polynomial `x`.
    pub fn x(modulus: u64) -> Self {
        Poly::new(vec![0, 1], modulus)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let q = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % q
            })
            .collect();
        Poly::new(out, q)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let q = self.modulus;
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + q - b) % q
            })
            .collect();
        Poly::new(out, q)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let q = self.modulus;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(q);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b % q) % q;
            }
        }
        Poly::new(out, q)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let q = self.modulus;
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = mod_inverse(divisor.coeffs[dd], q).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem[top] * lead_inv % q;
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (k, &dk) in divisor.coeffs.iter().enumerate() {
                    rem[shift + k] = (rem[shift + k] + q - c * dk % q) % q;
                }
            }
            rem.pop();
        }
        (Poly::new(quot, q), Poly::new(rem, q))
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => {
                let inv = mod_inverse(lead, self.modulus).expect("nonzero lead");
                let q = self.modulus;
                Poly::new(self.coeffs.iter().map(|c| c * inv % q).collect(), q)
            }
        }
    }

    /// `self^exp mod m`.
    pub fn pow_mod(&self, mut exp: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.modulus).rem(m);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            exp >>= 1;
        }
        acc
    }

    fn eval(&self, x: u64) -> u64 {
        let q = self.modulus;
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (acc * x + c) % q)
    }

    pub fn has_root(&self) -> bool {
        (0..self.modulus).any(|x| self.eval(x) == 0)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Rabin's test: a monic `f` of degree `m` over GF(q) is irreducible iff
/// `x^(q^m) = x (mod f)` and `gcd(x^(q^(m/s)) - x, f) = 1` for every prime
/// `s | m`.
pub fn is_irreducible(f: &Poly) -> bool {
    let q = f.modulus();
    let m = match f.degree() {
        None | Some(0) => return false,
        Some(m) => m,
    };
    if m == 1 {
        return true;
    }
    let x = Poly::x(q);
    // frob[k] = x^(q^k) mod f
    let mut frob = vec![x.rem(f)];
    for k in 1..=m {
        let next = frob[k - 1].pow_mod(q, f);
        frob.push(next);
    }
    if frob[m] != x.rem(f) {
        return false;
    }
    let primes: Vec<u64> = factorize(m as u64)
        .map(|fac| fac.primes().collect())
        .unwrap_or_default();
    primes.into_iter().all(|s| {
        let g = frob[m / s as usize].sub(&x).gcd(f);
        g.degree() == Some(0)
    })
}

/// Least monic irreducible polynomial of degree `m` over GF(q), ordering
/// candidates by the rank of their lower coefficients.
pub fn find_irreducible(q: u64, m: usize) -> Result<Poly> {
    if !is_prime(q) {
        return Err(Error::domain(format!("find_irreducible: {q} is not prime")));
    }
    if m == 0 {
        return Err(Error::domain("find_irreducible: degree must be >= 1"));
    }
    let span = field_order(q, m)?;
    for lower in 0..span {
        let mut coeffs = digits(lower, q, m);
        coeffs.push(1);
        let f = Poly::new(coeffs, q);
        if is_irreducible(&f) {
            return Ok(f);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn field_order(q: u64, m: usize) -> Result<u64> {
    u32::try_from(m)
        .ok()
        .and_then(|m| q.checked_pow(m))
        .filter(|&order| order <= MAX_FIELD_ORDER)
        .ok_or_else(|| {
            Error::domain(format!(
                "GF({q}^{m}) exceeds the supported order {MAX_FIELD_ORDER}"
            ))
        })
}

fn digits(mut rank: u64, q: u64, m: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(rank % q);
        rank /= q;
    }
    out
}

/// GF(q^m) with a fixed irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Field {
    characteristic: u64,
    degree: usize,
    modulus: Poly,
    order: u64,
}

impl Field {
    pub fn new(q: u64, m: usize) -> Result<Arc<Field>> {
        let order = field_order(q, m).and_then(|o| {
            if is_prime(q) && m >= 1 {
                Ok(o)
            } else {
                Err(Error::domain(format!(
                    "GF({q}^{m}): need prime q and m >= 1"
                )))
            }
        })?;
        let modulus = find_irreducible(q, m)?;
        Ok(Arc::new(Field {
            characteristic: q,
            degree: m,
            modulus,
            order,
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn poly_of(&self, rank: u64) -> Poly {
        Poly::new(
            digits(rank, self.characteristic, self.degree),
            self.characteristic,
        )
    }

    pub fn rank_of(&self, poly: &Poly) -> u64 {
        let reduced = poly.rem(&self.modulus);
        reduced
            .coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.characteristic + c)
    }

    // Rank arithmetic. Callers guarantee ranks are below `order`.

    pub fn add_ranks(&self, a: u64, b: u64) -> u64 {
        let q = self.characteristic;
        let (mut a, mut b, mut place, mut out) = (a, b, 1u64, 0u64);
        while a > 0 || b > 0 {
            out += ((a % q + b % q) % q) * place;
            a /= q;
            b /= q;
            place *= q;
        }
        out
    }

    pub fn neg_rank(&self, a: u64) -> u64 {
        let q = self.characteristic;
        let (mut a, mut place, mut out) = (a, 1u64, 0u64);
        while a > 0 {
            out += ((q - a % q) % q) * place;
            a /= q;
            place *= q;
        }
        out
    }

    pub fn mul_ranks(&self, a: u64, b: u64) -> u64 {
        let product = self.poly_of(a).mul(&self.poly_of(b));
        self.rank_of(&product)
    }

    pub fn pow_rank(&self, a: u64, exp: u64) -> u64 {
        let r = self.poly_of(a).pow_mod(exp, &self.modulus);
        self.rank_of(&r)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv_rank(&self, a: u64) -> Option<u64> {
        (a != 0).then(|| self.pow_rank(a, self.order - 2))
    }

    pub fn element(self: &Arc<Self>, rank: u64) -> Result<FieldElement> {
        if rank >= self.order {
            return Err(Error::domain(format!(
                "rank {rank} out of range for GF({})",
                self.order
            )));
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            rank,
        })
    }

    /// Embeds an integer of the prime subfield.
    pub fn from_int(self: &Arc<Self>, n: u64) -> FieldElement {
        FieldElement {
            field: Arc::clone(self),
            rank: n % self.characteristic,
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}) mod {}",
            self.characteristic, self.degree, self.modulus
        )
    }
}

/// An element of a specific [`Field`]. Mixing elements of different fields
/// is an error.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Arc<Field>,
    rank: u64,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Arc<Field>, b: &Arc<Field>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn rep(&self) -> Poly {
        self.field.poly_of(self.rank)
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_one(&self) -> bool {
        self.rank == 1
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch(format!(
                "{} vs {}",
                self.field, other.field
            )))
        }
    }

    fn with_rank(&self, rank: u64) -> FieldElement {
        FieldElement {
            field: Arc::clone(&self.field),
            rank,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_rank(self.field.add_ranks(self.rank, other.rank)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with_rank(self.field.neg_rank(self.rank))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with_rank(self.field.mul_ranks(self.rank, other.rank)))
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        self.with_rank(self.field.pow_rank(self.rank, exp))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        self.field
            .inv_rank(self.rank)
            .map(|r| self.with_rank(r))
            .ok_or_else(|| Error::domain("inverse of zero"))
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let group_order = self.field.order - 1;
        let fac = factorize(group_order).ok()?;
        let mut order = group_order;
        for s in fac.primes() {
            while order.is_multiple_of(s) && self.pow(order / s).is_one() {
                order /= s;
            }
        }
        Some(order)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep())
    }
}

/// An element of multiplicative order exactly `n`.
///
/// Candidates `g` are scanned by increasing rank; `z = g^((order-1)/n)` is
/// accepted once `z^(n/s) != 1` for every prime `s | n`.
pub fn element_of_order(field: &Arc<Field>, n: u64) -> Result<FieldElement> {
    let group_order = field.order - 1;
    if n == 0 || !group_order.is_multiple_of(n) {
        return Err(Error::domain(format!(
            "no element of order {n} in GF({}): {n} does not divide {group_order}",
            field.order
        )));
    }
    let primes: Vec<u64> = factorize(n)?.primes().collect();
    for g in 1..field.order {
        let z = field.pow_rank(g, group_order / n);
        if primes.iter().all(|&s| field.pow_rank(z, n / s) != 1) {
            return field.element(z);
        }
    }
    unreachable!("the multiplicative group is cyclic")
}

/// Degree over GF(q) of the minimal polynomial of `z`: the size of the
/// Frobenius orbit `{z, z^q, z^(q^2), ...}`.
pub fn min_poly_degree(field: &Arc<Field>, z: &FieldElement) -> Result<usize> {
    if !same_field(field, z.field()) {
        return Err(Error::FieldMismatch(format!("{} vs {}", field, z.field())));
    }
    if z.is_zero() {
        return Err(Error::domain("min_poly_degree of zero"));
    }
    let q = field.characteristic;
    let mut current = field.pow_rank(z.rank, q);
    let mut degree = 1;
    while current != z.rank {
        current = field.pow_rank(current, q);
        degree += 1;
    }
    Ok(degree)
}
