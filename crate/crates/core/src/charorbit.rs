//! Character degrees of `A ⋊ C_n` with `A = GF(q^m)+` elementary abelian.
//!
//! With a cyclic complement every character of `A` extends to its inertia
//! group, so an orbit of size `s` of `C_n` on `Irr(A)` contributes `n / s`
//! irreducible characters of degree `s`. Orbits are taken on `A \ {0}`
//! instead of `Irr(A) \ {1}`: for a cyclic acting group the two orbit-size
//! multisets coincide (Brauer's permutation lemma).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bounds::f_tr;
use crate::error::Result;
use crate::finitefield::{element_of_order, Field};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterProfile {
    /// `(degree, multiplicity)`, increasing degree.
    pub degrees: Vec<(u64, u64)>,
    /// `|Irr(G)|`.
    pub total_count: u64,
    pub acd: Rational,
}

impl CharacterProfile {
    pub fn from_degrees(degrees: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        for (d, k) in degrees {
            if k > 0 {
                *merged.entry(d).or_default() += k;
            }
        }
        let degrees: Vec<(u64, u64)> = merged.into_iter().collect();
        let total_count: u64 = degrees.iter().map(|&(_, k)| k).sum();
        let degree_sum: u64 = degrees.iter().map(|&(d, k)| d * k).sum();
        CharacterProfile {
            acd: Rational::new(degree_sum, total_count),
            degrees,
            total_count,
        }
    }

    /// `Σ multiplicity · degree²`, which must equal `|G|`.
    pub fn sum_of_squares(&self) -> u128 {
        self.degrees
            .iter()
            .map(|&(d, k)| k as u128 * d as u128 * d as u128)
            .sum()
    }

    /// Number of linear characters, `|G : G'|`.
    pub fn linear_count(&self) -> u64 {
        self.degrees
            .iter()
            .find(|&&(d, _)| d == 1)
            .map_or(0, |&(_, k)| k)
    }

    /// Nonlinear degrees, without multiplicity.
    pub fn nonlinear_degrees(&self) -> Vec<u64> {
        self.degrees
            .iter()
            .map(|&(d, _)| d)
            .filter(|&d| d > 1)
            .collect()
    }

    /// Profile of `C_p × G`: every degree repeated `p` times as often.
    pub fn direct_with_cyclic(&self, p: u64) -> CharacterProfile {
        CharacterProfile::from_degrees(self.degrees.iter().map(|&(d, k)| (d, k * p)))
    }
}

/// Orbit sizes of `<ζ>` acting by multiplication on `GF(q^m) \ {0}`,
/// sorted.
pub fn orbit_sizes(q: u64, m: usize, n: u64) -> Result<Vec<u64>> {
    let field = Field::new(q, m)?;
    let zeta = element_of_order(&field, n)?.rank();
    let order = field.order() as usize;
    let mut seen = vec![false; order];
    let mut sizes = Vec::new();
    for start in 1..order {
        if seen[start] {
            continue;
        }
        let mut size = 0;
        let mut x = start as u64;
        while !seen[x as usize] {
            seen[x as usize] = true;
            size += 1;
            x = field.mul_ranks(zeta, x);
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    Ok(sizes)
}

/// Character degrees and acd of `GF(q^m)+ ⋊ C_n` by the orbit method.
pub fn char_degrees_abelian_by_cyclic(q: u64, m: usize, n: u64) -> Result<CharacterProfile> {
    let orbits = orbit_sizes(q, m, n)?;
    let trivial = std::iter::once((1u64, n));
    let profile = CharacterProfile::from_degrees(trivial.chain(orbits.iter().map(|&s| (s, n / s))));

    let group_order = n as u128 * q.pow(m as u32) as u128;
    assert_eq!(
        profile.sum_of_squares(),
        group_order,
        "orbit method broke the sum-of-squares identity for ({q}, {m}, {n})"
    );
    assert_eq!(
        profile.total_count,
        profile.degrees.iter().map(|&(_, k)| k).sum::<u64>()
    );
    Ok(profile)
}

/// acd of `C_p × G`, computed from the expanded profile. Equals `acd(G)`.
pub fn acd_direct_with_cyclic(p: u64, profile: &CharacterProfile) -> Rational {
    let expanded = profile.direct_with_cyclic(p);
    assert_eq!(expanded.acd, profile.acd, "acd(C_p × G) must equal acd(G)");
    expanded.acd
}

/// `max_t f(t, r)` over the nontrivial orbit sizes `t`, with `r` the number
/// of nontrivial orbits; zero when there are none.
pub fn orbit_acd_lower_bound(q: u64, m: usize, n: u64) -> Result<Rational> {
    let orbits = orbit_sizes(q, m, n)?;
    let r = orbits.len() as u64;
    Ok(orbits
        .iter()
        .map(|&t| f_tr(t, r))
        .max()
        .unwrap_or_else(Rational::zero))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        assert_eq!(orbit_sizes(7, 1, 3).unwrap(), vec![3, 3]);
        assert_eq!(orbit_sizes(3, 1, 2).unwrap(), vec![2]);
        // 2k + 1 = 23, k = 11.
        assert_eq!(orbit_sizes(23, 1, 11).unwrap(), vec![11, 11]);
        assert_eq!(orbit_sizes(5, 2, 1).unwrap(), vec![1; 24]);
        assert!(orbit_sizes(7, 1, 4).is_err());
    }

    #[test]
    fn profile_examples() {
        let s3 = char_degrees_abelian_by_cyclic(3, 1, 2).unwrap();
        assert_eq!(s3.degrees, vec![(1, 2), (2, 1)]);
        assert_eq!(s3.acd, Rational::new(4, 3));

        let a4 = char_degrees_abelian_by_cyclic(2, 2, 3).unwrap();
        assert_eq!(a4.degrees, vec![(1, 3), (3, 1)]);
        assert_eq!(a4.acd, Rational::new(3, 2));

        let g = char_degrees_abelian_by_cyclic(11, 1, 5).unwrap();
        assert_eq!(g.degrees, vec![(1, 5), (5, 2)]);
        assert_eq!(g.acd, Rational::new(15, 7));
    }

    #[test]
    fn direct_product_examples() {
        let s3 = char_degrees_abelian_by_cyclic(3, 1, 2).unwrap();
        assert_eq!(acd_direct_with_cyclic(3, &s3), Rational::new(4, 3));
        let g = char_degrees_abelian_by_cyclic(11, 1, 5).unwrap();
        assert_eq!(acd_direct_with_cyclic(5, &g), Rational::new(15, 7));
        let g = char_degrees_abelian_by_cyclic(23, 1, 11).unwrap();
        assert_eq!(acd_direct_with_cyclic(7, &g), Rational::new(33, 13));
        let expanded = g.direct_with_cyclic(7);
        assert_eq!(expanded.sum_of_squares(), 7 * 253);
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(orbit_acd_lower_bound(7, 1, 3).unwrap(), Rational::new(9, 5));
        assert!(Rational::new(9, 5) <= char_degrees_abelian_by_cyclic(7, 1, 3).unwrap().acd);
        assert_eq!(orbit_acd_lower_bound(3, 1, 2).unwrap(), Rational::new(4, 3));
        assert_eq!(orbit_acd_lower_bound(7, 1, 1).unwrap(), f_tr(1, 6));
        let trivial = char_degrees_abelian_by_cyclic(2, 1, 1).unwrap();
        assert_eq!(trivial.acd, Rational::one());
        // Trivial action: every nonzero element is its own orbit, f(1, r) = 1 = acd.
        assert_eq!(orbit_acd_lower_bound(2, 1, 1).unwrap(), Rational::one());
        assert_eq!(orbit_acd_lower_bound(5, 2, 1).unwrap(), Rational::one());
    }

    #[test]
    fn sophie_germain_family_closed_form() {
        for k in 1..=200u64 {
            let Some(pp) = crate::numtheory::as_prime_power(2 * k + 1).unwrap() else {
                continue;
            };
            let profile = char_degrees_abelian_by_cyclic(pp.base, pp.exponent as usize, k).unwrap();
            assert_eq!(profile.acd, Rational::new(3 * k, k + 2), "k = {k}");
        }
    }
}
