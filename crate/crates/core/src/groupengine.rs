//! Finite groups on an indexed carrier.
//!
//! A [`Group`] has elements `0..size` with an explicit multiplication law.
//! The constructors cover what the witness families need: cyclic groups,
//! the affine groups `GF(q^m)+ ⋊ <ζ>` and direct products with a cyclic
//! factor. Class, center and derived-subgroup computations work by closure
//! under the generators, so they cost `O(|G| * #generators)` rather than
//! `O(|G|^2)`.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finitefield::{element_of_order, min_poly_degree, Field};
use crate::rational::Rational;

/// Groups at or below this order get a cached multiplication table.
pub const TABLE_CACHE_LIMIT: usize = 1024;

pub struct Group {
    label: String,
    size: usize,
    identity: usize,
    generators: Vec<usize>,
    law: Law,
    table: Option<Vec<u16>>,
}

enum Law {
    Cyclic {
        n: usize,
    },
    Affine(AffineLaw),
    /// `C_factor × inner`, element `(g, c)` stored at `g * factor + c`.
    Direct {
        factor: usize,
        inner: Box<Group>,
    },
}

/// `(a, i) · (b, j) = (a + ζ^i b, i + j mod n)`, element `(a, i)` stored at
/// `i * |F| + rank(a)`.
struct AffineLaw {
    field: Arc<Field>,
    field_order: usize,
    n: usize,
    /// `scaled[i * |F| + b] = rank(ζ^i · b)`.
    scaled: Vec<u32>,
}

impl AffineLaw {
    fn mul(&self, x: usize, y: usize) -> usize {
        let (i, a) = (x / self.field_order, x % self.field_order);
        let (j, b) = (y / self.field_order, y % self.field_order);
        let zb = self.scaled[i * self.field_order + b] as u64;
        let sum = self.field.add_ranks(a as u64, zb) as usize;
        ((i + j) % self.n) * self.field_order + sum
    }

    fn inv(&self, x: usize) -> usize {
        let (i, a) = (x / self.field_order, x % self.field_order);
        let back = (self.n - i) % self.n;
        let za = self.scaled[back * self.field_order + a] as u64;
        back * self.field_order + self.field.neg_rank(za) as usize
    }
}

impl Law {
    fn mul(&self, x: usize, y: usize) -> usize {
        match self {
            Law::Cyclic { n } => (x + y) % n,
            Law::Affine(law) => law.mul(x, y),
            Law::Direct { factor, inner } => {
                let g = inner.mul(x / factor, y / factor);
                g * factor + (x % factor + y % factor) % factor
            }
        }
    }

    fn inv(&self, x: usize) -> usize {
        match self {
            Law::Cyclic { n } => (n - x) % n,
            Law::Affine(law) => law.inv(x),
            Law::Direct { factor, inner } => {
                inner.inv(x / factor) * factor + (factor - x % factor) % factor
            }
        }
    }
}

impl Group {
    fn from_law(
        label: String,
        size: usize,
        identity: usize,
        generators: Vec<usize>,
        law: Law,
    ) -> Group {
        let mut group = Group {
            label,
            size,
            identity,
            generators,
            law,
            table: None,
        };
        if size <= TABLE_CACHE_LIMIT {
            let mut table = Vec::with_capacity(size * size);
            for x in 0..size {
                for y in 0..size {
                    table.push(group.law.mul(x, y) as u16);
                }
            }
            group.table = Some(table);
        }
        group
    }

    pub fn trivial() -> Group {
        Group::from_law("1".into(), 1, 0, Vec::new(), Law::Cyclic { n: 1 })
    }

    pub fn cyclic(n: usize) -> Result<Group> {
        if n == 0 {
            return Err(Error::domain("cyclic group of order 0"));
        }
        let generators = if n > 1 { vec![1] } else { Vec::new() };
        Ok(Group::from_law(
            format!("C_{n}"),
            n,
            0,
            generators,
            Law::Cyclic { n },
        ))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.table {
            Some(t) => t[x * self.size + y] as usize,
            None => self.law.mul(x, y),
        }
    }

    pub fn inv(&self, x: usize) -> usize {
        self.law.inv(x)
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| {
            self.generators
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.size > cap {
            Err(Error::GroupTooLarge {
                size: self.size,
                cap,
            })
        } else {
            Ok(())
        }
    }

    /// Subgroup generated by `gens`, as a membership mask.
    fn generate(&self, gens: &[usize]) -> Vec<bool> {
        let mut member = vec![false; self.size];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(h) = queue.pop_front() {
            for &t in gens {
                let ht = self.mul(h, t);
                if !member[ht] {
                    member[ht] = true;
                    queue.push_back(ht);
                }
            }
        }
        member
    }

    /// Checks that the generators generate the whole carrier.
    pub fn generators_generate(&self) -> bool {
        self.generate(&self.generators).iter().all(|&m| m)
    }

    /// Spot-checks the group axioms on `samples` pseudo-random triples
    /// (exhaustively on tiny groups).
    pub fn check_axioms(&self, samples: usize) -> bool {
        let e = self.identity;
        let n = self.size;
        let mut state = 0x9E37_79B9_7F4A_7C15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % n as u64) as usize
        };
        (0..samples).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, e) == a
                && self.mul(e, a) == a
                && self.mul(a, self.inv(a)) == e
                && self.mul(self.inv(a), a) == e
        })
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("size", &self.size)
            .field("generators", &self.generators)
            .finish()
    }
}

/// Display name of `GF(q^m)+ ⋊ C_n`.
pub fn affine_label(q: u64, m: usize, n: u64) -> String {
    if m == 1 {
        format!("C_{q} ⋊ C_{n}")
    } else {
        format!("GF({q}^{m})+ ⋊ C_{n}")
    }
}

/// `GF(q^m)+ ⋊ <ζ>` with `ζ = element_of_order(GF(q^m), n)`; order `n q^m`.
pub fn affine_group(q: u64, m: usize, n: u64) -> Result<Group> {
    let field = Field::new(q, m)?;
    let zeta = element_of_order(&field, n)?;
    let field_order = field.order() as usize;
    let n = n as usize;
    let size = n
        .checked_mul(field_order)
        .filter(|&s| s <= u32::MAX as usize)
        .ok_or_else(|| Error::domain("affine group too large to index"))?;

    let mut scaled = Vec::with_capacity(size);
    scaled.extend((0..field_order).map(|b| b as u32));
    for i in 1..n {
        for b in 0..field_order {
            let prev = scaled[(i - 1) * field_order + b] as u64;
            scaled.push(field.mul_ranks(zeta.rank(), prev) as u32);
        }
    }

    // Additive basis x^k, plus ζ itself.
    let mut generators: Vec<usize> = (0..m).map(|k| (q as usize).pow(k as u32)).collect();
    if n > 1 {
        generators.push(field_order);
    }
    let label = affine_label(q, m, n as u64);
    let law = AffineLaw {
        field,
        field_order,
        n,
        scaled,
    };
    Ok(Group::from_law(
        label,
        size,
        0,
        generators,
        Law::Affine(law),
    ))
}

/// `C_p × G`.
pub fn direct_with_cyclic(p: usize, group: Group) -> Result<Group> {
    if p == 0 {
        return Err(Error::domain("C_0 is not a group"));
    }
    let size = p
        .checked_mul(group.size)
        .ok_or_else(|| Error::domain("direct product too large"))?;
    let mut generators: Vec<usize> = group.generators.iter().map(|&g| g * p).collect();
    if p > 1 {
        generators.push(group.identity * p + 1);
    }
    let identity = group.identity * p;
    let label = if group.size == 1 {
        format!("C_{p}")
    } else {
        format!("C_{p} × ({})", group.label)
    };
    Ok(Group::from_law(
        label,
        size,
        identity,
        generators,
        Law::Direct {
            factor: p,
            inner: Box::new(group),
        },
    ))
}

/// Conjugacy classes, each sorted, listed by least element.
pub fn conjugacy_classes(group: &Group, cap: usize) -> Result<Vec<Vec<usize>>> {
    group.check_cap(cap)?;
    let gens: Vec<(usize, usize)> = group
        .generators
        .iter()
        .map(|&g| (g, group.inv(g)))
        .collect();
    let mut seen = vec![false; group.size];
    let mut classes = Vec::new();
    for start in 0..group.size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut class = vec![start];
        let mut cursor = 0;
        while cursor < class.len() {
            let y = class[cursor];
            cursor += 1;
            for &(g, g_inv) in &gens {
                let z = group.mul(group.mul(g, y), g_inv);
                if !seen[z] {
                    seen[z] = true;
                    class.push(z);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    Ok(classes)
}

/// `k(G) / |G|`.
pub fn commuting_probability(group: &Group, cap: usize) -> Result<Rational> {
    let k = conjugacy_classes(group, cap)?.len();
    Ok(Rational::new(k as u64, group.size as u64))
}

/// Order of the derived subgroup: the normal closure of the commutators of
/// generator pairs.
pub fn derived_subgroup_size(group: &Group, cap: usize) -> Result<usize> {
    group.check_cap(cap)?;
    let gens = &group.generators;
    let mut normal_gens: Vec<usize> = Vec::new();
    for &a in gens {
        for &b in gens {
            let c = group.mul(group.mul(group.inv(a), group.inv(b)), group.mul(a, b));
            if c != group.identity && !normal_gens.contains(&c) {
                normal_gens.push(c);
            }
        }
    }
    loop {
        let member = group.generate(&normal_gens);
        let missing = normal_gens
            .iter()
            .flat_map(|&t| gens.iter().map(move |&g| (g, t)))
            .map(|(g, t)| group.conj(g, t))
            .find(|&c| !member[c]);
        match missing {
            Some(c) => normal_gens.push(c),
            None => return Ok(member.iter().filter(|&&m| m).count()),
        }
    }
}

/// Order of the center.
pub fn center_size(group: &Group, cap: usize) -> Result<usize> {
    group.check_cap(cap)?;
    Ok((0..group.size)
        .filter(|&x| {
            group
                .generators
                .iter()
                .all(|&g| group.mul(g, x) == group.mul(x, g))
        })
        .count())
}

/// Whether `<ζ>` acts irreducibly on `GF(q^m)` as a GF(q)-space, i.e. the
/// minimal polynomial of `ζ` has degree `m`.
pub fn action_is_simple(q: u64, m: usize, n: u64) -> Result<bool> {
    let field = Field::new(q, m)?;
    let zeta = element_of_order(&field, n)?;
    Ok(min_poly_degree(&field, &zeta)? == m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupStats {
    pub label: String,
    pub size: usize,
    pub class_count: usize,
    pub pr: Rational,
    pub derived_size: usize,
    pub center_size: usize,
}

pub fn group_stats(group: &Group, cap: usize) -> Result<GroupStats> {
    let classes = conjugacy_classes(group, cap)?;
    let stats = GroupStats {
        label: group.label.clone(),
        size: group.size,
        class_count: classes.len(),
        pr: Rational::new(classes.len() as u64, group.size as u64),
        derived_size: derived_subgroup_size(group, cap)?,
        center_size: center_size(group, cap)?,
    };
    debug_assert_eq!(stats.size % stats.derived_size, 0);
    debug_assert_eq!(stats.size % stats.center_size, 0);
    Ok(stats)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: usize = 50_000;

    /// Oracle: definitional count of commuting ordered pairs.
    fn commuting_pairs(g: &Group) -> u64 {
        let mut count = 0;
        for x in 0..g.size() {
            for y in 0..g.size() {
                if g.mul(x, y) == g.mul(y, x) {
                    count += 1;
                }
            }
        }
        count
    }

    fn class_sizes(g: &Group) -> Vec<usize> {
        let mut sizes: Vec<usize> = conjugacy_classes(g, CAP)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect();
        sizes.sort_unstable();
        sizes
    }

    #[test]
    fn affine_examples() {
        let g = affine_group(7, 1, 3).unwrap();
        assert_eq!(g.size(), 21);
        assert_eq!(conjugacy_classes(&g, CAP).unwrap().len(), 5);
        assert_eq!(
            commuting_probability(&g, CAP).unwrap(),
            Rational::new(5, 21)
        );

        let s3 = affine_group(3, 1, 2).unwrap();
        assert_eq!(s3.size(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(class_sizes(&s3), vec![1, 2, 3]);
        assert_eq!(
            commuting_probability(&s3, CAP).unwrap(),
            Rational::new(1, 2)
        );
        assert_eq!(derived_subgroup_size(&s3, CAP).unwrap(), 3);

        let g = affine_group(5, 2, 3).unwrap();
        assert_eq!(g.size(), 75);
        assert!(affine_group(5, 2, 5).is_err());
    }

    #[test]
    fn direct_examples() {
        let c3 = direct_with_cyclic(3, Group::trivial()).unwrap();
        assert_eq!(c3.size(), 3);
        assert!(c3.is_abelian());
        assert_eq!(c3.label(), "C_3");
        let t3 = affine_group(7, 1, 3).unwrap();
        let g = direct_with_cyclic(3, t3).unwrap();
        assert_eq!(g.size(), 63);
        assert_eq!(
            commuting_probability(&g, CAP).unwrap(),
            Rational::new(5, 21)
        );
        assert!(direct_with_cyclic(0, Group::trivial()).is_err());
    }

    #[test]
    fn abelian_groups() {
        for g in [
            Group::cyclic(12).unwrap(),
            affine_group(5, 2, 1).unwrap(),
            Group::trivial(),
        ] {
            assert_eq!(class_sizes(&g), vec![1; g.size()]);
            assert_eq!(commuting_probability(&g, CAP).unwrap(), Rational::one());
            assert_eq!(derived_subgroup_size(&g, CAP).unwrap(), 1);
            assert_eq!(center_size(&g, CAP).unwrap(), g.size());
        }
    }

    #[test]
    fn simple_action_examples() {
        assert_eq!(action_is_simple(7, 1, 3), Ok(true));
        assert_eq!(action_is_simple(5, 2, 3), Ok(true));
        assert_eq!(action_is_simple(5, 2, 4), Ok(false));
        assert!(action_is_simple(5, 2, 7).is_err());
    }

    #[test]
    fn derived_subgroup_of_frobenius_witnesses() {
        // Fixed-point-free action: G' = A.
        for (q, m, n) in [
            (7u64, 1usize, 3u64),
            (5, 2, 3),
            (2, 2, 3),
            (11, 1, 5),
            (3, 2, 4),
            (13, 2, 7),
        ] {
            let g = affine_group(q, m, n).unwrap();
            assert_eq!(
                derived_subgroup_size(&g, CAP).unwrap() as u64,
                q.pow(m as u32)
            );
            assert_eq!(center_size(&g, CAP).unwrap(), 1);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let g = affine_group(7, 1, 3).unwrap();
        assert!(matches!(
            conjugacy_classes(&g, 20),
            Err(Error::GroupTooLarge { size: 21, cap: 20 })
        ));
        assert!(derived_subgroup_size(&g, 20).is_err());
        assert!(commuting_probability(&g, 21).is_ok());
    }

    #[test]
    fn closure_and_axioms() {
        let groups = vec![
            affine_group(3, 1, 2).unwrap(),
            affine_group(2, 3, 7).unwrap(),
            affine_group(3, 2, 8).unwrap(),
            direct_with_cyclic(5, affine_group(11, 1, 5).unwrap()).unwrap(),
            affine_group(5, 2, 3).unwrap(),  // table-cached
            affine_group(19, 2, 5).unwrap(), // computed law
        ];
        for g in &groups {
            assert!(g.generators_generate(), "{}", g.label());
            assert!(g.check_axioms(500), "{}", g.label());
        }
    }

    #[test]
    fn class_formula_matches_pair_count() {
        for (q, m, n) in [
            (3u64, 1usize, 2u64),
            (7, 1, 3),
            (2, 2, 3),
            (5, 1, 4),
            (3, 2, 8),
            (2, 3, 7),
            (13, 1, 12),
        ] {
            let g = affine_group(q, m, n).unwrap();
            let k = conjugacy_classes(&g, CAP).unwrap().len() as u64;
            let s = g.size() as u64;
            assert_eq!(commuting_pairs(&g), k * s, "{}", g.label());
        }
    }

    #[test]
    fn stats_are_consistent() {
        let g = direct_with_cyclic(3, affine_group(5, 2, 3).unwrap()).unwrap();
        let stats = group_stats(&g, CAP).unwrap();
        assert_eq!(stats.size, 225);
        assert_eq!(stats.pr, Rational::new(11, 75));
        assert_eq!(stats.derived_size, 25);
        assert_eq!(stats.center_size, 3);
        let sum: usize = conjugacy_classes(&g, CAP)
            .unwrap()
            .iter()
            .map(Vec::len)
            .sum();
        assert_eq!(sum, 225);
    }
}
