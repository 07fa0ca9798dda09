//! Characters `h_E(x) = Σ_{i ∈ E} x_i` of genetic Volterra algebras.
//!
//! Every character of a Volterra algebra is such a coordinate-subset sum,
//! and `h_E` is multiplicative iff `p_{ij,j} = 0` for all `i ∉ E`, `j ∈ E`.
//! [`is_character`] decides that coefficient condition;
//! [`verify_character_bruteforce`] checks multiplicativity on basis pairs.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::algebra::AlgebraSpec;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Default largest dimension for [`enumerate_characters`] (it visits `2^m` subsets).
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharacterSet {
    /// Sorted 0-based indices.
    pub subset: Vec<usize>,
    /// `E = ∅`, the zero functional.
    pub is_trivial: bool,
}

pub fn is_character(algebra: &AlgebraSpec, subset: &[usize]) -> Result<bool> {
    let member = membership(algebra.dim(), subset)?;
    let m = algebra.dim();
    Ok((0..m).filter(|&i| !member[i]).all(|i| {
        (0..m)
            .filter(|&j| member[j])
            .all(|j| algebra.heredity(i, j, j).is_zero())
    }))
}

/// `h_E(e_i ∘ e_j) = h_E(e_i) h_E(e_j)` for every basis pair, which is
/// enough by bilinearity.
pub fn verify_character_bruteforce(algebra: &AlgebraSpec, subset: &[usize]) -> Result<bool> {
    let member = membership(algebra.dim(), subset)?;
    let m = algebra.dim();
    let h = |coords: &[Rational]| -> Rational {
        coords
            .iter()
            .zip(&member)
            .filter(|(_, &inside)| inside)
            .map(|(x, _)| x)
            .sum()
    };
    for i in 0..m {
        for j in 0..m {
            let product = algebra.multiply(&algebra.basis(i), &algebra.basis(j))?;
            let lhs = h(product.coords());
            let rhs = h(algebra.basis(i).coords()) * h(algebra.basis(j).coords());
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All characters, ordered by size and then lexicographically.
pub fn enumerate_characters(
    algebra: &AlgebraSpec,
    include_trivial: bool,
) -> Result<Vec<CharacterSet>> {
    enumerate_characters_capped(algebra, include_trivial, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_characters_capped(
    algebra: &AlgebraSpec,
    include_trivial: bool,
    cap: usize,
) -> Result<Vec<CharacterSet>> {
    let m = algebra.dim();
    if m > cap.min(63) {
        return Err(Error::Capacity {
            what: "character enumeration dimension",
            requested: m,
            cap,
        });
    }
    // absorbs[j]: bitmask of the i with p_{ij,j} = 0.
    let absorbs: Vec<u64> = (0..m)
        .map(|j| {
            (0..m)
                .filter(|&i| i != j && algebra.heredity(i, j, j).is_zero())
                .fold(0u64, |mask, i| mask | (1 << i))
        })
        .collect();
    let full: u64 = (1u64 << m) - 1;

    let mut found: Vec<CharacterSet> = (0..=full)
        .filter(|&set| {
            let outside = full & !set;
            (0..m)
                .filter(|&j| set & (1 << j) != 0)
                .all(|j| outside & !absorbs[j] == 0)
        })
        .filter(|&set| include_trivial || set != 0)
        .map(|set| CharacterSet {
            subset: (0..m).filter(|&i| set & (1 << i) != 0).collect(),
            is_trivial: set == 0,
        })
        .collect();
    found.sort_by(|a, b| (a.subset.len(), &a.subset).cmp(&(b.subset.len(), &b.subset)));
    Ok(found)
}

fn membership(dim: usize, subset: &[usize]) -> Result<Vec<bool>> {
    let mut member = vec![false; dim];
    for &index in subset {
        if index >= dim {
            return Err(Error::Index { index, dim });
        }
        member[index] = true;
    }
    Ok(member)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::half;
    use crate::structure::canonical_associative;

    fn symmetric(m: usize) -> AlgebraSpec {
        AlgebraSpec::from_upper(m, |_, _| half()).unwrap()
    }

    #[test]
    fn full_and_empty_sets_are_characters() {
        let a = AlgebraSpec::from_upper(4, |i, j| crate::rational::ratio((i * j % 3) as i64, 3))
            .unwrap();
        for subset in [vec![], vec![0, 1, 2, 3]] {
            assert!(is_character(&a, &subset).unwrap());
            assert!(verify_character_bruteforce(&a, &subset).unwrap());
        }
    }

    #[test]
    fn half_coefficient_breaks_multiplicativity() {
        let a = symmetric(2);
        assert!(!verify_character_bruteforce(&a, &[0]).unwrap());
        assert!(!is_character(&a, &[0]).unwrap());
    }

    #[test]
    fn canonical_characters_are_prefixes() {
        let a = canonical_associative(3);
        assert!(!is_character(&a, &[2]).unwrap());
        assert!(!verify_character_bruteforce(&a, &[2]).unwrap());
        for m in 1..=6 {
            let a = canonical_associative(m);
            let sets = enumerate_characters(&a, true).unwrap();
            let prefixes: Vec<Vec<usize>> = (0..=m).map(|k| (0..k).collect()).collect();
            assert_eq!(
                sets.iter().map(|c| c.subset.clone()).collect::<Vec<_>>(),
                prefixes
            );
            for c in &sets {
                assert!(verify_character_bruteforce(&a, &c.subset).unwrap());
            }
        }
    }

    #[test]
    fn symmetric_algebra_has_only_the_extreme_sets() {
        let full: Vec<usize> = (0..5).collect();
        let sets = enumerate_characters(&symmetric(5), false).unwrap();
        assert_eq!(
            sets,
            vec![CharacterSet {
                subset: full,
                is_trivial: false
            }]
        );
        let with_trivial = enumerate_characters(&symmetric(5), true).unwrap();
        assert_eq!(with_trivial.len(), 2);
        assert!(with_trivial[0].subset.is_empty() && with_trivial[0].is_trivial);
    }

    #[test]
    fn errors() {
        let a = symmetric(3);
        assert_eq!(
            is_character(&a, &[3]),
            Err(Error::Index { index: 3, dim: 3 })
        );
        assert!(verify_character_bruteforce(&a, &[7]).is_err());
        assert!(matches!(
            enumerate_characters_capped(&a, true, 2),
            Err(Error::Capacity { .. })
        ));
    }
}
