//! Trajectories of the Volterra operator on the simplex.
//!
//! [`evolve`] iterates `V(x)_k = x_k (1 + Σ_i a_{ik} x_i)` in `f64`,
//! renormalizing after every step. [`evolve_exact`] iterates the quadratic
//! stochastic operator over the integers and serves as the reference for
//! short horizons.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{AlgebraSpec, SimplexPoint, SkewMatrix};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Largest accepted `|Σ x_i - 1|` for a floating-point starting point.
pub const SIMPLEX_TOLERANCE: f64 = 1e-12;
/// Negative coordinates down to `-CLAMP_THRESHOLD` are rounding noise and
/// are set to zero; anything below is an error.
pub const CLAMP_THRESHOLD: f64 = 1e-15;
/// Default bound on the bit length of the exact trajectory's common denominator (1 MiB).
pub const DEFAULT_EXACT_BIT_CAP: u64 = 8 * 1024 * 1024;

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    /// `points[0]` is the starting point; one entry per step after it.
    pub points: Vec<Vec<f64>>,
    /// `|Σ x_i - 1|` of each step's image before renormalization.
    pub drift: Vec<f64>,
}

impl Trajectory {
    pub fn steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn last(&self) -> &[f64] {
        self.points
            .last()
            .expect("a trajectory holds its starting point")
    }

    pub fn max_drift(&self) -> f64 {
        self.drift.iter().copied().fold(0.0, f64::max)
    }
}

pub fn evolve(skew: &SkewMatrix, x0: &[f64], steps: usize) -> Result<Trajectory> {
    let m = skew.dim();
    if x0.len() != m {
        return Err(Error::Shape(format!(
            "starting point has {} coordinates, matrix has dimension {m}",
            x0.len()
        )));
    }
    if let Some(k) = x0.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { step: 0, coord: k });
    }
    if let Some(k) = x0.iter().position(|&v| v < -CLAMP_THRESHOLD) {
        return Err(Error::Simplex(format!(
            "coordinate {} is negative ({})",
            k + 1,
            x0[k]
        )));
    }
    let sum: f64 = x0.iter().sum();
    if (sum - 1.0).abs() > SIMPLEX_TOLERANCE {
        return Err(Error::Simplex(format!("coordinates sum to {sum}")));
    }

    let a = skew.to_f64();
    let mut x: Vec<f64> = x0.iter().map(|&v| v.max(0.0)).collect();
    let mut points = Vec::with_capacity(steps + 1);
    let mut drift = Vec::with_capacity(steps);
    points.push(x.clone());
    for step in 1..=steps {
        let mut next: Vec<f64> = (0..m)
            .map(|k| {
                let growth: f64 = (0..m).map(|i| a[i][k] * x[i]).sum();
                x[k] * (1.0 + growth)
            })
            .collect();
        for (k, v) in next.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { step, coord: k });
            }
            if *v < 0.0 {
                if *v < -CLAMP_THRESHOLD {
                    return Err(Error::Simplex(format!(
                        "coordinate {} fell to {} at step {step}",
                        k + 1,
                        *v
                    )));
                }
                *v = 0.0;
            }
        }
        let sum: f64 = next.iter().sum();
        drift.push((sum - 1.0).abs());
        for v in &mut next {
            *v /= sum;
        }
        points.push(next.clone());
        x = next;
    }
    Ok(Trajectory { points, drift })
}

/// One state of an exact trajectory, `x_k = numerators[k] / denominator`.
///
/// The fraction is kept unreduced: reducing multi-megabit numbers every
/// step would dominate the cost of the iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactState {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

impl ExactState {
    fn from_point(x: &SimplexPoint) -> Self {
        let denominator = x
            .coords()
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numerators = x
            .coords()
            .iter()
            .map(|v| v.numer() * (&denominator / v.denom()))
            .collect();
        Self {
            numerators,
            denominator,
        }
    }

    pub fn denominator_bits(&self) -> u64 {
        self.denominator.bits()
    }

    /// The state as reduced rationals.
    pub fn to_point(&self) -> SimplexPoint {
        let coords = self
            .numerators
            .iter()
            .map(|n| Rational::new(n.clone(), self.denominator.clone()))
            .collect();
        SimplexPoint::new(coords).expect("exact iteration stays on the simplex")
    }

    /// Correctly rounded `f64` coordinates, computed without reducing.
    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|n| {
                Ratio::new_raw(n.clone(), self.denominator.clone())
                    .to_f64()
                    .unwrap_or(f64::NAN)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactTrajectory {
    pub states: Vec<ExactState>,
}

impl ExactTrajectory {
    pub fn steps(&self) -> usize {
        self.states.len() - 1
    }

    pub fn points(&self) -> Vec<SimplexPoint> {
        self.states.iter().map(ExactState::to_point).collect()
    }
}

pub fn evolve_exact(
    algebra: &AlgebraSpec,
    x0: &SimplexPoint,
    steps: usize,
) -> Result<ExactTrajectory> {
    evolve_exact_capped(algebra, x0, steps, DEFAULT_EXACT_BIT_CAP)
}

/// Iterates `x' = x ∘ x` exactly.
///
/// On the simplex the Volterra condition collapses the product to
/// `x'_k = x_k (x_k + Σ_{i≠k} 2 p_{ki,k} x_i)`. With `L` the common
/// denominator of the `2 p_{ki,k}`, each step maps `(N, Q)` to
/// `N'_k = N_k (L N_k + Σ_{i≠k} L·2p_{ki,k} N_i)` and `Q' = L Q²`.
pub fn evolve_exact_capped(
    algebra: &AlgebraSpec,
    x0: &SimplexPoint,
    steps: usize,
    bit_cap: u64,
) -> Result<ExactTrajectory> {
    let m = algebra.dim();
    if x0.len() != m {
        return Err(Error::Shape(format!(
            "starting point has {} coordinates, algebra has dimension {m}",
            x0.len()
        )));
    }
    let two = rational::int(2);
    let doubled: Vec<Vec<Rational>> = (0..m)
        .map(|k| (0..m).map(|i| &two * algebra.coeff(k, i)).collect())
        .collect();
    let scale = doubled
        .iter()
        .enumerate()
        .flat_map(|(k, row)| row.iter().enumerate().filter(move |(i, _)| *i != k))
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let weights: Vec<Vec<BigInt>> = doubled
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.numer() * (&scale / v.denom()))
                .collect()
        })
        .collect();

    let mut state = ExactState::from_point(x0);
    check_bits(&state, bit_cap)?;
    let mut states = Vec::with_capacity(steps + 1);
    for _ in 0..steps {
        let n = &state.numerators;
        let numerators = (0..m)
            .map(|k| {
                if n[k].is_zero() {
                    return BigInt::zero();
                }
                let mut factor = &scale * &n[k];
                for i in (0..m).filter(|&i| i != k) {
                    if !weights[k][i].is_zero() && !n[i].is_zero() {
                        factor += &weights[k][i] * &n[i];
                    }
                }
                &n[k] * factor
            })
            .collect();
        let denominator = &scale * &state.denominator * &state.denominator;
        let next = ExactState {
            numerators,
            denominator,
        };
        check_bits(&next, bit_cap)?;
        states.push(core::mem::replace(&mut state, next));
    }
    states.push(state);
    Ok(ExactTrajectory { states })
}

fn check_bits(state: &ExactState, cap: u64) -> Result<()> {
    let bits = state.denominator_bits();
    if bits > cap {
        return Err(Error::Capacity {
            what: "exact trajectory denominator bits",
            requested: bits as usize,
            cap: cap as usize,
        });
    }
    Ok(())
}
