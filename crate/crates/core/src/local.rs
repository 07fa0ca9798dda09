//! Local derivations: linear maps `Δ` such that every `x` has some
//! derivation `D_x` with `Δ(x) = D_x(x)`.
//!
//! Evaluating the definition at the basis vectors gives necessary
//! conditions: `Δ(e_i)` must lie in `V_i = { D(e_i) : D ∈ Der(A) }`. The maps
//! satisfying them form the candidate space, which contains every local
//! derivation. In dimension 3 the candidate space equals `Der(A)`, so every
//! local derivation is a derivation. [`probe_conjecture`] runs the same
//! comparison in higher dimensions and adds sampled conditions at interior
//! points of the simplex.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::derivations::{derivation_space, verify_derivation, DerivationSpace, LinearMap};
use crate::error::{Error, Result};
use crate::linalg::{self, RowSpace};
use crate::rational::Rational;

/// Default number of sampled points for [`probe_conjecture`].
pub const DEFAULT_PROBE_SAMPLES: usize = 200;
/// Largest denominator of a sampled point.
pub const MAX_SAMPLE_DENOMINATOR: u32 = 97;
/// Rank-test failures kept in a [`ProbeReport`].
pub const RANK_WITNESS_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCandidateSpace {
    pub dim: usize,
    pub basis: Vec<LinearMap>,
    /// For each `i`, a basis of `V_i = { D(e_i) : D ∈ Der(A) }`.
    pub per_basis_ranges: Vec<Vec<AlgebraElement>>,
}

impl LocalCandidateSpace {
    pub fn dim_space(&self) -> usize {
        self.basis.len()
    }

    /// `Δ(e_i) ∈ V_i` for every `i`.
    pub fn contains(&self, map: &LinearMap) -> bool {
        self.per_basis_ranges.iter().enumerate().all(|(i, range)| {
            let span = RowSpace::from_rows(self.dim, range.iter().map(|v| v.coords().to_vec()));
            span.contains(map.image_of_basis(i).coords())
        })
    }
}

/// The candidate space of a 3-dimensional algebra.
pub fn local_candidate_space(algebra: &AlgebraSpec) -> Result<LocalCandidateSpace> {
    require_dim_3(algebra)?;
    Ok(candidate_space(&derivation_space(algebra)?))
}

/// Candidate space built from an already computed derivation space, in any
/// dimension.
pub fn candidate_space(derivations: &DerivationSpace) -> LocalCandidateSpace {
    let m = derivations.dim;
    let per_basis_ranges: Vec<Vec<AlgebraElement>> = (0..m)
        .map(|i| {
            let images = derivations.basis.iter().map(|d| d.entries()[i].clone());
            linalg::canonical_basis(m, images)
                .into_iter()
                .map(AlgebraElement::new)
                .collect()
        })
        .collect();
    let maps = per_basis_ranges.iter().enumerate().flat_map(|(i, range)| {
        range.iter().map(move |v| {
            let mut flat = vec![Rational::zero(); m * m];
            flat[i * m..(i + 1) * m].clone_from_slice(v.coords());
            flat
        })
    });
    let basis = linalg::canonical_basis(m * m, maps)
        .iter()
        .map(|flat| LinearMap::from_flat(m, flat))
        .collect();
    LocalCandidateSpace {
        dim: m,
        basis,
        per_basis_ranges,
    }
}

/// Every local derivation of a 3-dimensional algebra is a derivation:
/// the candidate space has the same dimension as `Der(A)` and each of its
/// basis maps passes [`verify_derivation`].
pub fn local_equals_derivation(algebra: &AlgebraSpec) -> Result<bool> {
    require_dim_3(algebra)?;
    let derivations = derivation_space(algebra)?;
    let candidates = candidate_space(&derivations);
    if candidates.dim_space() != derivations.dim_space() {
        return Ok(false);
    }
    for map in &candidates.basis {
        if !verify_derivation(algebra, map)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeVerdict {
    /// Every local derivation is a derivation for this algebra: the
    /// candidate space, possibly cut down by the sampled conditions,
    /// equals `Der(A)`.
    Pass,
    /// A derivation failed the pointwise rank test, which means the probe
    /// itself is unsound.
    Fail,
    /// The sampled conditions leave a space strictly larger than `Der(A)`.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFailure {
    /// Index into the candidate basis.
    pub candidate: usize,
    pub sample: usize,
    pub point: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub dim: usize,
    pub seed: u64,
    pub samples: usize,
    pub derivation_dim: usize,
    pub candidate_dim: usize,
    /// Dimension of the candidates satisfying `Δ(x) ∈ span{D(x)}` at every sample.
    pub refined_dim: usize,
    /// Candidate basis maps that are not derivations.
    pub non_derivation_candidates: Vec<usize>,
    pub rank_failures: Vec<RankFailure>,
    pub soundness_failures: usize,
    pub verdict: ProbeVerdict,
}

/// Experimental check of "local derivations are derivations" for `m ≥ 3`.
///
/// Sampled points are simplex-interior with denominators at most
/// [`MAX_SAMPLE_DENOMINATOR`], drawn from a ChaCha8 stream seeded by `seed`.
pub fn probe_conjecture(algebra: &AlgebraSpec, seed: u64, samples: usize) -> Result<ProbeReport> {
    let m = algebra.dim();
    if m < 3 {
        return Err(Error::Dimension {
            expected: "at least 3",
            found: m,
        });
    }
    let derivations = derivation_space(algebra)?;
    let candidates = candidate_space(&derivations);

    let mut non_derivation_candidates = Vec::new();
    for (t, map) in candidates.basis.iter().enumerate() {
        if !verify_derivation(algebra, map)? {
            non_derivation_candidates.push(t);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut constraints = RowSpace::new(candidates.dim_space());
    let mut rank_failures = Vec::new();
    let mut soundness_failures = 0;
    for sample in 0..samples {
        let x = AlgebraElement::new(sample_interior_point(&mut rng, m));
        let images = RowSpace::from_rows(
            m,
            derivations.basis.iter().map(|d| d.apply(&x).into_coords()),
        );

        // Any element of Der(A) must pass the pointwise test.
        if !derivations.basis.is_empty() {
            let coeffs: Vec<Rational> = derivations
                .basis
                .iter()
                .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-5i64..=5))))
                .collect();
            let probe = LinearMap::combination(m, &derivations.basis, &coeffs);
            if !images.contains(probe.apply(&x).coords()) {
                soundness_failures += 1;
            }
        }

        let values: Vec<Vec<Rational>> = candidates
            .basis
            .iter()
            .map(|delta| delta.apply(&x).into_coords())
            .collect();
        for (t, value) in values.iter().enumerate() {
            if !images.contains(value) && rank_failures.len() < RANK_WITNESS_CAP {
                rank_failures.push(RankFailure {
                    candidate: t,
                    sample,
                    point: x.coords().to_vec(),
                });
            }
        }
        // Δ = Σ c_t Δ_t satisfies Δ(x) ∈ span{D(x)} iff w · Δ(x) = 0 for
        // every w annihilating that span.
        for w in images.nullspace() {
            let row = values
                .iter()
                .map(|value| value.iter().zip(&w).map(|(a, b)| a * b).sum())
                .collect();
            constraints.insert(row);
        }
    }

    let derivation_dim = derivations.dim_space();
    let candidate_dim = candidates.dim_space();
    let refined_dim = candidate_dim - constraints.rank();
    let verdict = if soundness_failures > 0 {
        ProbeVerdict::Fail
    } else if (candidate_dim == derivation_dim && non_derivation_candidates.is_empty())
        || refined_dim == derivation_dim
    {
        ProbeVerdict::Pass
    } else {
        ProbeVerdict::Inconclusive
    };
    Ok(ProbeReport {
        dim: m,
        seed,
        samples,
        derivation_dim,
        candidate_dim,
        refined_dim,
        non_derivation_candidates,
        rank_failures,
        soundness_failures,
        verdict,
    })
}

/// A random point with positive coordinates `n_i / q`, `m ≤ q ≤ 97`.
fn sample_interior_point(rng: &mut ChaCha8Rng, m: usize) -> Vec<Rational> {
    let q = rng.gen_range((m as u32).max(1)..=MAX_SAMPLE_DENOMINATOR.max(m as u32));
    // m - 1 distinct cut points in 1..q split q into m positive parts.
    let mut cuts: Vec<u32> = (1..q).collect();
    for t in 0..m - 1 {
        let pick = rng.gen_range(t..cuts.len());
        cuts.swap(t, pick);
    }
    cuts.truncate(m - 1);
    cuts.sort_unstable();
    let mut bounds = vec![0];
    bounds.extend(cuts);
    bounds.push(q);
    bounds
        .windows(2)
        .map(|w| Rational::new(BigInt::from(w[1] - w[0]), BigInt::from(q)))
        .collect()
}

fn require_dim_3(algebra: &AlgebraSpec) -> Result<()> {
    if algebra.dim() == 3 {
        Ok(())
    } else {
        Err(Error::Dimension {
            expected: "3",
            found: algebra.dim(),
        })
    }
}
