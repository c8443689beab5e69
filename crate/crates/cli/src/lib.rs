//! Command layer behind the `sharpbound` binary.
//!
//! Each `cmd_*` function returns the rendered document and the process exit
//! code, so the commands can be driven without spawning a process.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use sharpbound::bounds::{self, BoundKind, BoundReport, BoundWitness, KerrWitness};
use sharpbound::charorbit::{char_degrees_abelian_by_cyclic, orbit_sizes};
use sharpbound::finitefield::MAX_FIELD_ORDER;
use sharpbound::groupengine::{affine_group, group_stats, GroupStats};
use sharpbound::numtheory::primes_up_to;
use sharpbound::verify::{self, ConjectureReport, SharpnessReport, Status, Theorem};
use sharpbound::{CharacterProfile, Error, Limits, Rational};

pub mod exit {
    pub const OK: i32 = 0;
    pub const MISMATCH: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const CAP: i32 = 3;
    pub const SKIPPED: i32 = 4;
}

/// Digits after the point in text-mode approximations.
pub const APPROX_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn report(stdout: String, code: i32) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code,
        }
    }

    pub fn error(err: &Error) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
            code: if err.is_cap() {
                exit::CAP
            } else {
                exit::INVALID
            },
        }
    }
}

pub const BOUND_CSV_HEADER: &str =
    "p,kind,value_num,value_den,q,prime_power_base,prime_power_exponent,prime_power_value,m,base_equals_p";
pub const CONJECTURE_CSV_HEADER: &str = "p,t_p,p1,r_p,p2_sq,part_a_match,part_b_match,notes";
pub const WITNESS_CSV_HEADER: &str =
    "p,theorem,bound_num,bound_den,witness_label,witness_order,witness_num,witness_den,match,status,notes";
pub const GROUP_CSV_HEADER: &str =
    "q,m,n,label,size,class_count,pr_num,pr_den,derived_size,center_size,acd_num,acd_den,degrees,orbit_sizes";
pub const KERR_CSV_HEADER: &str = "p,a,n,q,l,cube_check,gcd_check,spf_at_least_p";

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_document(header: &str, rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(header.split(',')).expect("in-memory csv");
    for row in rows {
        w.write_record(&row).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

fn approx(r: &Rational) -> String {
    format!(
        "≈ {} (approximate, {APPROX_DIGITS} digits)",
        r.to_decimal(APPROX_DIGITS)
    )
}

fn num(r: &Rational) -> String {
    r.numer().to_string()
}

fn den(r: &Rational) -> String {
    r.denom().to_string()
}

/// `d^k` pairs joined by spaces.
fn multiset(pairs: &[(u64, u64)]) -> String {
    pairs
        .iter()
        .map(|(d, k)| format!("{d}^{k}"))
        .collect::<Vec<_>>()
        .join(" ")
}

// ---------------------------------------------------------------- bound

pub fn cmd_bound(p: u64, kind: BoundKind, format: Format, limits: &Limits) -> Output {
    match bounds::bound(p, kind, limits) {
        Ok(report) => Output::report(render_bound(&report, format), exit::OK),
        Err(e) => Output::error(&e),
    }
}

fn render_bound(r: &BoundReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let row = match &r.witness {
                BoundWitness::Zsigmondy { q, minimum } => {
                    let pp = minimum.witness;
                    vec![
                        q.to_string(),
                        pp.base.to_string(),
                        pp.exponent.to_string(),
                        pp.value.to_string(),
                        String::new(),
                        String::new(),
                    ]
                }
                BoundWitness::HalfPrimePower {
                    m,
                    prime_power: pp,
                    base_equals_p,
                } => vec![
                    String::new(),
                    pp.base.to_string(),
                    pp.exponent.to_string(),
                    pp.value.to_string(),
                    m.to_string(),
                    base_equals_p.to_string(),
                ],
            };
            let mut full = vec![
                r.p.to_string(),
                r.kind.to_string(),
                num(&r.value),
                den(&r.value),
            ];
            full.extend(row);
            csv_document(BOUND_CSV_HEADER, vec![full])
        }
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "{}({}) = {}", r.kind, r.p, r.value).unwrap();
            writeln!(s, "  {}", approx(&r.value)).unwrap();
            match &r.witness {
                BoundWitness::Zsigmondy { q, minimum } => {
                    let name = if minimum.l == 1 { "t" } else { "r" };
                    writeln!(s, "  attained at q = {q}").unwrap();
                    if minimum.witness.exponent > 1 {
                        writeln!(s, "  {name}({q}) = {} = {}", minimum.value, minimum.witness)
                            .unwrap();
                    } else {
                        writeln!(s, "  {name}({q}) = {}", minimum.value).unwrap();
                    }
                }
                BoundWitness::HalfPrimePower {
                    m,
                    prime_power,
                    base_equals_p,
                } => {
                    let name = if r.kind == BoundKind::Hn { "k" } else { "l" };
                    writeln!(s, "  {name}({}) = {m}", r.p).unwrap();
                    writeln!(s, "  2·{m} + 1 = {prime_power}").unwrap();
                    writeln!(s, "  base equals p: {base_equals_p}").unwrap();
                }
            }
            s
        }
    }
}

// ----------------------------------------------------------- conjecture

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureDocument {
    pub p_max: u64,
    pub prime_count: usize,
    pub all_match: bool,
    pub rows: Vec<ConjectureReport>,
}

pub fn cmd_conjecture(p_max: u64, format: Format, jobs: usize, limits: &Limits) -> Output {
    let rows = match verify::conjecture_sweep(p_max, jobs, limits) {
        Ok(rows) => rows,
        Err(e) => return Output::error(&e),
    };
    let doc = ConjectureDocument {
        p_max,
        prime_count: rows.len(),
        all_match: rows.iter().all(ConjectureReport::all_match),
        rows,
    };
    let code = if doc.all_match {
        exit::OK
    } else {
        exit::MISMATCH
    };
    Output::report(render_conjecture(&doc, format), code)
}

fn render_conjecture(doc: &ConjectureDocument, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Csv => csv_document(
            CONJECTURE_CSV_HEADER,
            doc.rows
                .iter()
                .map(|r| {
                    vec![
                        r.p.to_string(),
                        r.t_p.to_string(),
                        r.p1.to_string(),
                        r.r_p.to_string(),
                        r.p2_sq.to_string(),
                        r.part_a_match.to_string(),
                        r.part_b_match.to_string(),
                        r.notes.clone(),
                    ]
                })
                .collect(),
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(
                s,
                "{:>6} {:>10} {:>10} {:>6} {:>14} {:>14} {:>6}  notes",
                "p", "t(p)", "P(1,p)", "a", "r(p)", "P(p-1,p)^2", "b"
            )
            .unwrap();
            for r in &doc.rows {
                writeln!(
                    s,
                    "{:>6} {:>10} {:>10} {:>6} {:>14} {:>14} {:>6}  {}",
                    r.p, r.t_p, r.p1, r.part_a_match, r.r_p, r.p2_sq, r.part_b_match, r.notes
                )
                .unwrap();
            }
            let mismatches = doc.rows.iter().filter(|r| !r.all_match()).count();
            writeln!(
                s,
                "{} odd primes <= {}: {}",
                doc.prime_count,
                doc.p_max,
                if mismatches == 0 {
                    "all match".to_string()
                } else {
                    format!("{mismatches} mismatching")
                }
            )
            .unwrap();
            s
        }
    }
}

// -------------------------------------------------------------- witness

pub fn cmd_witness(p: u64, theorem: Theorem, format: Format, limits: &Limits) -> Output {
    let report = match verify::verify_theorem(p, theorem, limits) {
        Ok(r) => r,
        Err(e) => return Output::error(&e),
    };
    let code = match report.status {
        Status::Match => exit::OK,
        Status::Mismatch => exit::MISMATCH,
        Status::Skipped => exit::SKIPPED,
    };
    Output::report(render_witness(&report, format), code)
}

fn render_witness(r: &SharpnessReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let (wn, wd) = r
                .witness_value
                .as_ref()
                .map_or((String::new(), String::new()), |v| (num(v), den(v)));
            csv_document(
                WITNESS_CSV_HEADER,
                vec![vec![
                    r.p.to_string(),
                    r.theorem.to_string(),
                    num(&r.bound_value),
                    den(&r.bound_value),
                    r.witness_label.clone(),
                    r.witness_order.to_string(),
                    wn,
                    wd,
                    r.matched.to_string(),
                    status_name(r.status).to_string(),
                    r.notes.join("; "),
                ]],
            )
        }
        Format::Text => {
            let quantity = match r.theorem {
                Theorem::A | Theorem::B => "Pr",
                Theorem::C | Theorem::D => "acd",
            };
            let mut s = String::new();
            writeln!(
                s,
                "theorem {} at p = {}: {}",
                r.theorem,
                r.p,
                status_name(r.status)
            )
            .unwrap();
            writeln!(
                s,
                "  bound    = {}  {}",
                r.bound_value,
                approx(&r.bound_value)
            )
            .unwrap();
            writeln!(
                s,
                "  witness  = {} (order {})",
                r.witness_label, r.witness_order
            )
            .unwrap();
            match &r.witness_value {
                Some(v) => writeln!(s, "  {quantity:<8} = {v}").unwrap(),
                None => writeln!(s, "  {quantity:<8} = (not computed)").unwrap(),
            }
            for note in &r.notes {
                writeln!(s, "  note: {note}").unwrap();
            }
            s
        }
    }
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Match => "match",
        Status::Mismatch => "mismatch",
        Status::Skipped => "skipped",
    }
}

// ---------------------------------------------------------------- group

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupReport {
    pub q: u64,
    pub m: usize,
    pub n: u64,
    pub stats: GroupStats,
    pub characters: CharacterProfile,
    /// `(size, multiplicity)` of the orbits of `C_n` on `GF(q^m) \ {0}`.
    pub orbit_sizes: Vec<(u64, u64)>,
}

pub fn cmd_group(q: u64, m: usize, n: u64, format: Format, limits: &Limits) -> Output {
    match group_report(q, m, n, limits) {
        Ok(report) => Output::report(render_group(&report, format), exit::OK),
        Err(e) => Output::error(&e),
    }
}

fn group_report(q: u64, m: usize, n: u64, limits: &Limits) -> Result<GroupReport, Error> {
    let field_order = u32::try_from(m)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .filter(|&o| o <= MAX_FIELD_ORDER)
        .ok_or_else(|| {
            Error::Domain(format!(
                "GF({q}^{m}) exceeds the supported order {MAX_FIELD_ORDER}"
            ))
        })?;
    let size = (field_order as u128) * (n as u128);
    if n > 0 && (field_order - 1) % n == 0 && size > limits.group_size_cap as u128 {
        return Err(Error::GroupTooLarge {
            size: size.min(usize::MAX as u128) as usize,
            cap: limits.group_size_cap,
        });
    }
    let group = affine_group(q, m, n)?;
    let stats = group_stats(&group, limits.group_size_cap)?;
    let characters = char_degrees_abelian_by_cyclic(q, m, n)?;
    let mut orbits: Vec<(u64, u64)> = Vec::new();
    for s in orbit_sizes(q, m, n)? {
        match orbits.last_mut() {
            Some((size, count)) if *size == s => *count += 1,
            _ => orbits.push((s, 1)),
        }
    }
    Ok(GroupReport {
        q,
        m,
        n,
        stats,
        characters,
        orbit_sizes: orbits,
    })
}

fn render_group(r: &GroupReport, format: Format) -> String {
    let st = &r.stats;
    let ch = &r.characters;
    match format {
        Format::Json => json(r),
        Format::Csv => csv_document(
            GROUP_CSV_HEADER,
            vec![vec![
                r.q.to_string(),
                r.m.to_string(),
                r.n.to_string(),
                st.label.clone(),
                st.size.to_string(),
                st.class_count.to_string(),
                num(&st.pr),
                den(&st.pr),
                st.derived_size.to_string(),
                st.center_size.to_string(),
                num(&ch.acd),
                den(&ch.acd),
                multiset(&ch.degrees),
                multiset(&r.orbit_sizes),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "G = {}", st.label).unwrap();
            writeln!(s, "  |G|      = {}", st.size).unwrap();
            writeln!(s, "  k(G)     = {}", st.class_count).unwrap();
            writeln!(s, "  Pr(G)    = {}  {}", st.pr, approx(&st.pr)).unwrap();
            writeln!(s, "  |G'|     = {}", st.derived_size).unwrap();
            writeln!(s, "  |Z(G)|   = {}", st.center_size).unwrap();
            writeln!(s, "  degrees  = {}", multiset(&ch.degrees)).unwrap();
            writeln!(s, "  acd(G)   = {}  {}", ch.acd, approx(&ch.acd)).unwrap();
            writeln!(s, "  orbits   = {}", multiset(&r.orbit_sizes)).unwrap();
            s
        }
    }
}

// ----------------------------------------------------------------- kerr

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KerrReport {
    pub witness: KerrWitness,
    /// `2l + 1 = q^3`.
    pub cube_check: bool,
    /// `gcd(l, (p-1)#) = 1`.
    pub gcd_check: bool,
    /// No prime below `p` divides `l`.
    pub spf_at_least_p: bool,
}

pub fn cmd_kerr(p: u64, format: Format, limits: &Limits) -> Output {
    let witness = match bounds::kerr_witness(p, limits) {
        Ok(w) => w,
        Err(e) => return Output::error(&e),
    };
    let cube = &witness.q * &witness.q * &witness.q;
    let cube_check = &witness.l * 2u32 + 1u32 == cube;
    let primorial = sharpbound::numtheory::primorial(p - 1);
    let gcd_check = witness.l.gcd(&primorial) == BigUint::from(1u32);
    let spf_at_least_p = primes_up_to(p - 1)
        .into_iter()
        .all(|r| &witness.l % r != BigUint::from(0u32));
    let report = KerrReport {
        witness,
        cube_check,
        gcd_check,
        spf_at_least_p,
    };
    let ok = report.cube_check && report.gcd_check && report.spf_at_least_p;
    let code = if ok { exit::OK } else { exit::MISMATCH };
    Output::report(render_kerr(&report, format), code)
}

fn render_kerr(r: &KerrReport, format: Format) -> String {
    let w = &r.witness;
    match format {
        Format::Json => json(r),
        Format::Csv => csv_document(
            KERR_CSV_HEADER,
            vec![vec![
                w.p.to_string(),
                w.a.to_string(),
                w.n.to_string(),
                w.q.to_string(),
                w.l.to_string(),
                r.cube_check.to_string(),
                r.gcd_check.to_string(),
                r.spf_at_least_p.to_string(),
            ]],
        ),
        Format::Text => {
            let mut s = String::new();
            writeln!(s, "cube witness for p = {}", w.p).unwrap();
            writeln!(s, "  a = {}", w.a).unwrap();
            writeln!(s, "  q = {}", w.q).unwrap();
            writeln!(s, "  n = {}", w.n).unwrap();
            writeln!(s, "  l = {}", w.l).unwrap();
            writeln!(s, "  2l + 1 = q^3: {}", r.cube_check).unwrap();
            writeln!(s, "  gcd(l, ({} - 1)#) = 1: {}", w.p, r.gcd_check).unwrap();
            writeln!(
                s,
                "  every prime factor of l is >= {}: {}",
                w.p, r.spf_at_least_p
            )
            .unwrap();
            s
        }
    }
}
