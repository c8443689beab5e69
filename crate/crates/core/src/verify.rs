//! Sharpness checks on constructed witnesses, and the prime sweep comparing
//! `t(p)`, `r(p)` with least primes in progressions.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{
    commuting_bound_formula, g_n, g_s, h_n, h_s, k_search, l_search, r_of, t_of, BoundReport,
    BoundWitness, HalfPrimePower,
};
use crate::charorbit::{acd_direct_with_cyclic, char_degrees_abelian_by_cyclic};
use crate::error::{Error, Result};
use crate::finitefield::MAX_FIELD_ORDER;
use crate::groupengine::{affine_group, affine_label, conjugacy_classes, direct_with_cyclic};
use crate::limits::Limits;
use crate::numtheory::{as_prime_power, is_prime, least_prime_in_ap, primes_up_to, PrimePower};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    A,
    B,
    C,
    D,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [Theorem::A, Theorem::B, Theorem::C, Theorem::D];
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Theorem::A),
            "B" => Ok(Theorem::B),
            "C" => Ok(Theorem::C),
            "D" => Ok(Theorem::D),
            _ => Err(Error::domain(format!(
                "unknown theorem {s:?}; expected A, B, C or D"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    /// A size cap prevented the witness computation.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub p: u64,
    pub theorem: Theorem,
    pub bound_value: Rational,
    pub witness_label: String,
    pub witness_order: u64,
    /// Brute-force `Pr` (A, B) or orbit-method `acd` (C, D); absent when
    /// skipped.
    pub witness_value: Option<Rational>,
    #[serde(rename = "match")]
    pub matched: bool,
    pub status: Status,
    pub notes: Vec<String>,
}

impl SharpnessReport {
    fn new(p: u64, theorem: Theorem, bound: &BoundReport, label: String, order: u64) -> Self {
        SharpnessReport {
            p,
            theorem,
            bound_value: bound.value.clone(),
            witness_label: label,
            witness_order: order,
            witness_value: None,
            matched: false,
            status: Status::Skipped,
            notes: Vec::new(),
        }
    }

    /// Sets `witness_value`, `matched` and `status`; a failed side check
    /// already recorded as a mismatch stays one.
    fn settle(&mut self, value: Rational) {
        self.matched = value == self.bound_value;
        self.witness_value = Some(value);
        if self.status != Status::Mismatch {
            self.status = if self.matched {
                Status::Match
            } else {
                Status::Mismatch
            };
        }
    }
}

fn require_prime_at_least(p: u64, min: u64, theorem: Theorem) -> Result<()> {
    if p >= min && is_prime(p) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "theorem {theorem}: p = {p} must be a prime >= {min}"
        )))
    }
}

fn zsigmondy_witness(report: &BoundReport) -> (u64, PrimePower) {
    match &report.witness {
        BoundWitness::Zsigmondy { q, minimum } => (*q, minimum.witness),
        BoundWitness::HalfPrimePower { .. } => unreachable!("g reports carry Zsigmondy witnesses"),
    }
}

/// `C_p × (GF(base^exponent)+ ⋊ C_q)`, Pr by conjugacy classes.
fn commuting_sharpness(
    p: u64,
    theorem: Theorem,
    bound: BoundReport,
    limits: &Limits,
) -> Result<SharpnessReport> {
    let (q, t) = zsigmondy_witness(&bound);
    let pp = as_prime_power(t.value)?.expect("Zsigmondy minima are prime powers");
    debug_assert_eq!(pp, t);
    let inner_label = affine_label(pp.base, pp.exponent as usize, q);
    let label = format!("C_{p} × ({inner_label})");
    let order = p as u128 * q as u128 * pp.value as u128;
    let mut report = SharpnessReport::new(
        p,
        theorem,
        &bound,
        label,
        order.min(u64::MAX as u128) as u64,
    );
    report.notes.push(format!(
        "maximizing prime q = {q}, witness field order {pp}"
    ));

    if order > limits.group_size_cap as u128 {
        report.notes.push(format!(
            "skipped: witness order {order} exceeds group size cap {}",
            limits.group_size_cap
        ));
        return Ok(report);
    }
    let inner = affine_group(pp.base, pp.exponent as usize, q)?;
    let group = direct_with_cyclic(p as usize, inner)?;
    let classes = conjugacy_classes(&group, limits.group_size_cap)?.len() as u64;

    let profile = char_degrees_abelian_by_cyclic(pp.base, pp.exponent as usize, q)?;
    let irr = p * profile.total_count;
    if irr == classes {
        report.notes.push(format!("k(G) = {classes} = |Irr(G)|"));
    } else {
        report.status = Status::Mismatch;
        report.notes.push(format!(
            "k(G) = {classes} but orbit method gives |Irr(G)| = {irr}"
        ));
    }
    let closed_form = commuting_bound_formula(q, t.value);
    let pr = Rational::new(classes, order as u64);
    if pr != closed_form {
        report.status = Status::Mismatch;
        report.notes.push(format!(
            "Pr = {pr} differs from the closed form {closed_form}"
        ));
    }
    report.settle(pr);
    Ok(report)
}

/// `C_p × (H_{2m+1} ⋊ C_m)`, acd by the orbit method.
fn acd_sharpness(
    p: u64,
    theorem: Theorem,
    bound: BoundReport,
    hit: HalfPrimePower,
    limits: &Limits,
) -> Result<SharpnessReport> {
    let pp = hit.prime_power;
    let m = hit.m;
    let inner_label = affine_label(pp.base, pp.exponent as usize, m);
    let label = format!("C_{p} × ({inner_label})");
    let order = p as u128 * m as u128 * pp.value as u128;
    let mut report = SharpnessReport::new(
        p,
        theorem,
        &bound,
        label,
        order.min(u64::MAX as u128) as u64,
    );
    report.notes.push(format!("2·{m} + 1 = {pp}"));

    if pp.value > MAX_FIELD_ORDER {
        report.notes.push(format!(
            "skipped: field order {} exceeds the field model limit {MAX_FIELD_ORDER}",
            pp.value
        ));
        return Ok(report);
    }
    let profile = char_degrees_abelian_by_cyclic(pp.base, pp.exponent as usize, m)?;
    let acd = acd_direct_with_cyclic(p, &profile);
    let degrees: Vec<String> = profile
        .degrees
        .iter()
        .map(|(d, k)| format!("{d}^{k}"))
        .collect();
    report
        .notes
        .push(format!("degrees of {inner_label}: {}", degrees.join(", ")));

    if order <= limits.group_size_cap as u128 {
        let group =
            direct_with_cyclic(p as usize, affine_group(pp.base, pp.exponent as usize, m)?)?;
        let classes = conjugacy_classes(&group, limits.group_size_cap)?.len() as u64;
        let irr = p * profile.total_count;
        if classes == irr {
            report.notes.push(format!("k(G) = {classes} = |Irr(G)|"));
        } else {
            report.status = Status::Mismatch;
            report.notes.push(format!(
                "k(G) = {classes} but orbit method gives |Irr(G)| = {irr}"
            ));
        }
    } else {
        report.notes.push(format!(
            "class count cross-check skipped: order {order} exceeds group size cap {}",
            limits.group_size_cap
        ));
    }
    report.settle(acd);
    Ok(report)
}

/// `C_p × T_q` attains `g_n(p)`.
#[allow(non_snake_case)]
pub fn verify_theorem_A(p: u64, limits: &Limits) -> Result<SharpnessReport> {
    require_prime_at_least(p, 3, Theorem::A)?;
    commuting_sharpness(p, Theorem::A, g_n(p, limits)?, limits)
}

/// `C_p × R_q` attains `g_s(p)`.
#[allow(non_snake_case)]
pub fn verify_theorem_B(p: u64, limits: &Limits) -> Result<SharpnessReport> {
    require_prime_at_least(p, 3, Theorem::B)?;
    commuting_sharpness(p, Theorem::B, g_s(p, limits)?, limits)
}

/// `C_p × (H_{2k(p)+1} ⋊ C_{k(p)})` attains `h_n(p)`.
#[allow(non_snake_case)]
pub fn verify_theorem_C(p: u64, limits: &Limits) -> Result<SharpnessReport> {
    require_prime_at_least(p, 3, Theorem::C)?;
    let hit = k_search(p, limits)?;
    acd_sharpness(p, Theorem::C, h_n(p, limits)?, hit, limits)
}

/// `C_p × (H_{2l(p)+1} ⋊ C_{l(p)})` attains `h_s(p)`.
#[allow(non_snake_case)]
pub fn verify_theorem_D(p: u64, limits: &Limits) -> Result<SharpnessReport> {
    require_prime_at_least(p, 5, Theorem::D)?;
    let hit = l_search(p, limits)?;
    acd_sharpness(p, Theorem::D, h_s(p, limits)?, hit, limits)
}

pub fn verify_theorem(p: u64, theorem: Theorem, limits: &Limits) -> Result<SharpnessReport> {
    match theorem {
        Theorem::A => verify_theorem_A(p, limits),
        Theorem::B => verify_theorem_B(p, limits),
        Theorem::C => verify_theorem_C(p, limits),
        Theorem::D => verify_theorem_D(p, limits),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub p: u64,
    pub t_p: u64,
    /// `P(1, p)`.
    pub p1: u64,
    pub r_p: u64,
    /// `P(p-1, p)²`.
    pub p2_sq: u64,
    pub part_a_match: bool,
    pub part_b_match: bool,
    pub notes: String,
}

impl ConjectureReport {
    pub fn all_match(&self) -> bool {
        self.part_a_match && self.part_b_match
    }
}

fn at_prime(p: u64, err: Error) -> Error {
    match err {
        Error::CapExhausted { what, cap } => Error::CapExhausted {
            what: format!("p = {p}: {what}"),
            cap,
        },
        Error::MagnitudeExceeded(what) => Error::MagnitudeExceeded(format!("p = {p}: {what}")),
        other => other,
    }
}

fn conjecture_row(p: u64, limits: &Limits) -> Result<ConjectureReport> {
    let t_p = t_of(p, limits)?.value;
    let r_p = r_of(p, limits)?.value;
    let p1 = least_prime_in_ap(1, p, limits.prime_scan_cap)?;
    let p2 = least_prime_in_ap(p - 1, p, limits.prime_scan_cap)?;
    let p2_sq = p2
        .checked_mul(p2)
        .ok_or_else(|| Error::MagnitudeExceeded(format!("P({}, {p})²", p - 1)))?;
    Ok(ConjectureReport {
        p,
        t_p,
        p1,
        r_p,
        p2_sq,
        part_a_match: t_p == p1,
        part_b_match: r_p == p2_sq,
        notes: String::new(),
    })
}

/// Notes where `f_n` or `f_s` is larger than at the previous odd prime.
fn annotate(rows: &mut [ConjectureReport]) {
    for i in 1..rows.len() {
        let (prev, cur) = (&rows[i - 1], &rows[i]);
        let mut notes = Vec::new();
        for (name, a, b) in [("f_n", prev.t_p, cur.t_p), ("f_s", prev.r_p, cur.r_p)] {
            let before = commuting_bound_formula(prev.p, a);
            let after = commuting_bound_formula(cur.p, b);
            if after > before {
                notes.push(format!(
                    "{name}({}) = {before} < {name}({}) = {after}",
                    prev.p, cur.p
                ));
            }
        }
        rows[i].notes = notes.join("; ");
    }
}

/// One report per odd prime `p <= p_max`, in increasing `p`. `jobs`
/// workers share the primes; `p_max < 3` gives an empty sweep. On failure
/// the error for the least failing prime is returned.
pub fn conjecture_sweep(p_max: u64, jobs: usize, limits: &Limits) -> Result<Vec<ConjectureReport>> {
    if jobs == 0 {
        return Err(Error::domain("jobs must be at least 1"));
    }
    let primes: Vec<u64> = primes_up_to(p_max).into_iter().filter(|&p| p > 2).collect();
    let row = |p: u64| conjecture_row(p, limits).map_err(|e| at_prime(p, e));
    let results: Vec<Result<ConjectureReport>> = if jobs == 1 {
        primes.iter().map(|&p| row(p)).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
        pool.install(|| primes.par_iter().map(|&p| row(p)).collect())
    };
    let mut rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    annotate(&mut rows);
    Ok(rows)
}
