//! Associativity of genetic Volterra algebras.
//!
//! Three independent deciders are provided and must always agree:
//!
//! * [`is_associative_direct`] multiplies out `e_i ∘ (e_j ∘ e_k)` and
//!   `(e_i ∘ e_j) ∘ e_k` for every basis triple;
//! * [`is_associative_theorem`] checks the coefficient conditions
//!   `p_{ij,i} ∈ {0, 1}` and
//!   `p_{jk,j} p_{ij,i} + p_{jk,k} p_{ik,i} = p_{ij,i} p_{ik,i}` for distinct triples;
//! * [`is_associative_tournament`] requires the algebra to be extremal
//!   (`|a_{ik}| = 1`) with a tournament free of cyclic triples.

mod tournament;

use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::algebra::{AlgebraElement, AlgebraSpec, SkewMatrix};
use crate::error::{Error, Result};
use crate::rational::Rational;

pub use tournament::{tournaments_isomorphic, Tournament, ISOMORPHISM_CAP};

/// Default number of failing triples kept by [`is_associative_direct`].
pub const DEFAULT_WITNESS_CAP: usize = 10;

/// A basis triple on which the product is not associative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// `e_i ∘ (e_j ∘ e_k)`
    pub left: AlgebraElement,
    /// `(e_i ∘ e_j) ∘ e_k`
    pub right: AlgebraElement,
}

/// Outcome of the brute-force triple check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectCheck {
    pub associative: bool,
    pub witnesses: Vec<AssociativityWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociativityReport {
    pub direct: bool,
    pub by_theorem: bool,
    /// Present only for extremal algebras.
    pub by_tournament: Option<bool>,
    pub witnesses: Vec<AssociativityWitness>,
}

impl AssociativityReport {
    pub fn consistent(&self) -> bool {
        self.direct == self.by_theorem && self.by_tournament.is_none_or(|t| t == self.direct)
    }
}

pub fn associativity_report(algebra: &AlgebraSpec) -> AssociativityReport {
    let direct = is_associative_direct(algebra, DEFAULT_WITNESS_CAP);
    AssociativityReport {
        direct: direct.associative,
        by_theorem: is_associative_theorem(algebra),
        by_tournament: tournament_verdict(algebra),
        witnesses: direct.witnesses,
    }
}

/// Checks all `m³` basis triples, keeping at most `witness_cap` failures.
pub fn is_associative_direct(algebra: &AlgebraSpec, witness_cap: usize) -> DirectCheck {
    let m = algebra.dim();
    let basis: Vec<AlgebraElement> = (0..m).map(|i| algebra.basis(i)).collect();
    let product = |x: &AlgebraElement, y: &AlgebraElement| {
        algebra
            .multiply(x, y)
            .expect("basis vectors match the algebra")
    };
    let pairs: Vec<Vec<AlgebraElement>> = basis
        .iter()
        .map(|x| basis.iter().map(|y| product(x, y)).collect())
        .collect();

    let mut associative = true;
    let mut witnesses = Vec::new();
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let left = product(&basis[i], &pairs[j][k]);
                let right = product(&pairs[i][j], &basis[k]);
                if left != right {
                    associative = false;
                    if witnesses.len() < witness_cap {
                        witnesses.push(AssociativityWitness {
                            i,
                            j,
                            k,
                            left,
                            right,
                        });
                    }
                }
            }
        }
    }
    DirectCheck {
        associative,
        witnesses,
    }
}

/// Condition (a) on every pair and condition (b) on every ordered triple of
/// distinct indices.
pub fn is_associative_theorem(algebra: &AlgebraSpec) -> bool {
    let m = algebra.dim();
    let p = |i: usize, j: usize| algebra.coeff(i, j);
    let zero_or_one = (0..m).all(|i| (0..m).all(|j| p(i, j).is_zero() || p(i, j).is_one()));
    if !zero_or_one {
        return false;
    }
    for i in 0..m {
        for j in (0..m).filter(|&j| j != i) {
            for k in (0..m).filter(|&k| k != i && k != j) {
                // p_{jk,j} p_{ij,i} + p_{jk,k} p_{ik,i} = p_{ij,i} p_{ik,i}
                let lhs = p(j, k) * p(i, j) + p(k, j) * p(i, k);
                if lhs != p(i, j) * p(i, k) {
                    return false;
                }
            }
        }
    }
    true
}

/// Evaluates both forms of the distinct-triple associativity identity and
/// reports whether they agree (they always should).
///
/// The first form is `p_{jk,j} p_{ij,i} + p_{jk,k} p_{ik,i} = p_{ij,i} p_{ik,i}`,
/// the second `p_{ij,i} p_{ik,k} + p_{ij,j} p_{jk,k} = p_{jk,k} p_{ik,k}`.
/// The six inputs must satisfy the complement relations
/// `p_{jk,j} + p_{jk,k} = p_{ij,i} + p_{ij,j} = p_{ik,i} + p_{ik,k} = 1`.
pub fn identity_forms_agree(
    p_jk_j: &Rational,
    p_ij_i: &Rational,
    p_jk_k: &Rational,
    p_ik_i: &Rational,
    p_ij_j: &Rational,
    p_ik_k: &Rational,
) -> Result<bool> {
    let one = Rational::one();
    for (first, second, i, j) in [
        (p_jk_j, p_jk_k, 1, 2),
        (p_ij_i, p_ij_j, 0, 1),
        (p_ik_i, p_ik_k, 0, 2),
    ] {
        let sum = first + second;
        if sum != one {
            return Err(Error::Complement {
                i,
                j,
                sum: alloc::string::ToString::to_string(&sum),
            });
        }
    }
    let first_form = p_jk_j * p_ij_i + p_jk_k * p_ik_i == p_ij_i * p_ik_i;
    let second_form = p_ij_i * p_ik_k + p_ij_j * p_jk_k == p_jk_k * p_ik_k;
    Ok(first_form == second_form)
}

/// `|a_{ik}| = 1` for every `i ≠ k`.
pub fn is_extremal(skew: &SkewMatrix) -> bool {
    let m = skew.dim();
    (0..m).all(|i| (0..m).all(|k| i == k || skew.entry(i, k).abs().is_one()))
}

/// The tournament criterion: `None` when the algebra is not extremal,
/// otherwise whether its tournament is free of cyclic triples.
pub fn tournament_verdict(algebra: &AlgebraSpec) -> Option<bool> {
    let skew = algebra.to_skew();
    if !is_extremal(&skew) {
        return None;
    }
    let tournament = Tournament::from_skew(&skew).expect("extremal matrices have no zero entries");
    Some(tournament.is_transitive())
}

/// Associative iff extremal and the tournament has no cyclic triple; a
/// non-extremal algebra is never associative.
pub fn is_associative_tournament(algebra: &AlgebraSpec) -> bool {
    tournament_verdict(algebra).unwrap_or(false)
}

/// `p_{ij,i} = 1` if `i ≥ j` and `0` otherwise.
pub fn canonical_associative(dim: usize) -> AlgebraSpec {
    AlgebraSpec::from_upper(dim, |_, _| Rational::zero()).expect("0/1 pattern is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, int, ratio};
    use alloc::vec;

    fn cyclic_extremal() -> AlgebraSpec {
        // p_{12,1} = 1, p_{23,2} = 1, p_{31,3} = 1 (1-based)
        AlgebraSpec::from_upper(3, |i, j| match (i, j) {
            (0, 1) | (1, 2) => int(1),
            _ => int(0),
        })
        .unwrap()
    }

    #[test]
    fn canonical_coefficients() {
        assert_eq!(canonical_associative(1).coeffs(), &[vec![int(1)]]);
        let a = canonical_associative(2);
        assert_eq!(a.coeff(1, 0), &int(1));
        assert_eq!(a.coeff(0, 1), &int(0));
    }

    #[test]
    fn canonical_is_associative_every_way() {
        for m in 1..=6 {
            let a = canonical_associative(m);
            let report = associativity_report(&a);
            assert!(report.direct && report.by_theorem, "m = {m}");
            assert_eq!(report.by_tournament, Some(true));
            assert!(report.witnesses.is_empty());
        }
    }

    #[test]
    fn cyclic_extremal_is_not_associative() {
        let a = cyclic_extremal();
        assert_eq!(a.heredity(2, 0, 2), int(1));
        let report = associativity_report(&a);
        assert!(!report.direct && !report.by_theorem);
        assert_eq!(report.by_tournament, Some(false));
        assert!(!report.witnesses.is_empty());
        // condition (b) at (i, j, k) = (1, 2, 3): left side 1, right side 0
        let p = |i: usize, j: usize| a.coeff(i, j).clone();
        assert_eq!(p(1, 2) * p(0, 1) + p(2, 1) * p(0, 2), int(1));
        assert_eq!(p(0, 1) * p(0, 2), int(0));
    }

    #[test]
    fn symmetric_is_not_associative() {
        let a = AlgebraSpec::from_upper(3, |_, _| half()).unwrap();
        let report = associativity_report(&a);
        assert!(!report.direct && !report.by_theorem);
        assert_eq!(report.by_tournament, None);
        assert!(!is_associative_tournament(&a));
    }

    #[test]
    fn witnesses_are_capped_and_genuine() {
        let a = AlgebraSpec::from_upper(4, |_, _| half()).unwrap();
        let check = is_associative_direct(&a, 3);
        assert_eq!(check.witnesses.len(), 3);
        for w in &check.witnesses {
            assert_ne!(w.left, w.right);
        }
        assert!(is_associative_direct(&a, 0).witnesses.is_empty());
    }

    #[test]
    fn extremality() {
        assert!(is_extremal(&canonical_associative(5).to_skew()));
        assert!(!is_extremal(&SkewMatrix::zero(3)));
        let a = vec![
            vec![int(0), int(1), half()],
            vec![int(-1), int(0), int(1)],
            vec![-half(), int(-1), int(0)],
        ];
        assert!(!is_extremal(&SkewMatrix::new(3, a).unwrap()));
    }

    #[test]
    fn identity_form_examples() {
        let h = half();
        assert!(identity_forms_agree(&h, &h, &h, &h, &h, &h).unwrap());
        // canonical triple i > j > k: p_{ij,i} = p_{jk,j} = p_{ik,i} = 1
        let (one, zero) = (int(1), int(0));
        assert!(identity_forms_agree(&one, &one, &zero, &one, &zero, &zero).unwrap());
        let bad = ratio(1, 3);
        assert!(matches!(
            identity_forms_agree(&bad, &h, &h, &h, &h, &h),
            Err(Error::Complement { .. })
        ));
    }
}
