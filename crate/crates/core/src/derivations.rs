//! Derivations `D(u ∘ v) = D(u) ∘ v + u ∘ D(v)` of genetic Volterra algebras.
//!
//! Writing `D(e_i) = Σ_j d_{ij} e_j`, the Leibniz rule on basis pairs is a
//! homogeneous linear system in the `m²` unknowns `d_{11}, d_{12}, …, d_{mm}`.
//! [`derivation_space`] assembles it from closed-form coefficients and
//! returns its exact nullspace. [`verify_derivation`] is the independent
//! check: it evaluates both sides of the rule with the algebra product.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, AlgebraSpec};
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::rational::{self, Rational};

/// Largest dimension handed to the exact solver.
pub const DERIVATION_CAP: usize = 12;

/// A square matrix acting on the basis: row `i` holds the coordinates of `D(e_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    entries: Vec<Vec<Rational>>,
}

impl LinearMap {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let m = entries.len();
        if let Some(i) = entries.iter().position(|row| row.len() != m) {
            return Err(Error::Shape(format!(
                "row {} of the map is not length {m}",
                i + 1
            )));
        }
        Ok(Self { entries })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            entries: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    /// Reads `d_{11}, d_{12}, …, d_{mm}` row by row.
    pub fn from_flat(dim: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), dim * dim);
        Self {
            entries: flat.chunks(dim).map(<[Rational]>::to_vec).collect(),
        }
    }

    pub fn to_flat(&self) -> Vec<Rational> {
        self.entries.iter().flatten().cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    /// `D(e_i)`.
    pub fn image_of_basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::new(self.entries[i].clone())
    }

    /// `D(x) = Σ_i x_i D(e_i)`.
    pub fn apply(&self, x: &AlgebraElement) -> AlgebraElement {
        let m = self.dim();
        assert_eq!(x.len(), m, "element and map dimensions differ");
        let mut out = vec![Rational::zero(); m];
        for (xi, row) in x.coords().iter().zip(&self.entries) {
            if xi.is_zero() {
                continue;
            }
            for (o, d) in out.iter_mut().zip(row) {
                if !d.is_zero() {
                    *o += xi * d;
                }
            }
        }
        AlgebraElement::new(out)
    }

    pub fn row_sums(&self) -> Vec<Rational> {
        self.entries.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn has_zero_row_sums(&self) -> bool {
        self.row_sums().iter().all(Zero::is_zero)
    }

    /// `Σ_t coeffs[t] · maps[t]`.
    pub fn combination(dim: usize, maps: &[LinearMap], coeffs: &[Rational]) -> Self {
        assert_eq!(maps.len(), coeffs.len());
        let mut flat = vec![Rational::zero(); dim * dim];
        for (map, c) in maps.iter().zip(coeffs) {
            for (f, d) in flat.iter_mut().zip(map.to_flat()) {
                *f += c * d;
            }
        }
        Self::from_flat(dim, &flat)
    }
}

/// A basis of the space of all derivations, in reduced echelon form over
/// the ordering `d_{11}, d_{12}, …, d_{mm}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub dim: usize,
    pub basis: Vec<LinearMap>,
}

impl DerivationSpace {
    pub fn dim_space(&self) -> usize {
        self.basis.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    /// Whether `map` lies in the span of the basis.
    pub fn contains(&self, map: &LinearMap) -> bool {
        let span = RowSpace::from_rows(
            self.dim * self.dim,
            self.basis.iter().map(LinearMap::to_flat),
        );
        span.contains(&map.to_flat())
    }
}

pub fn derivation_space(algebra: &AlgebraSpec) -> Result<DerivationSpace> {
    solve(algebra, false)
}

fn solve(algebra: &AlgebraSpec, ordered_pairs: bool) -> Result<DerivationSpace> {
    let m = algebra.dim();
    if m > DERIVATION_CAP {
        return Err(Error::Capacity {
            what: "derivation solver dimension",
            requested: m,
            cap: DERIVATION_CAP,
        });
    }
    let mut system = RowSpace::new(m * m);
    for a in 0..m {
        let first_b = if ordered_pairs { 0 } else { a };
        for b in first_b..m {
            for k in 0..m {
                system.insert(leibniz_row(algebra, a, b, k));
            }
        }
    }
    let basis = system
        .nullspace()
        .iter()
        .map(|v| LinearMap::from_flat(m, v))
        .collect();
    Ok(DerivationSpace { dim: m, basis })
}

/// Coefficients over the unknowns `d_{ij}` of the `e_k` component of
/// `D(e_a ∘ e_b) - D(e_a) ∘ e_b - e_a ∘ D(e_b)`.
fn leibniz_row(algebra: &AlgebraSpec, a: usize, b: usize, k: usize) -> Vec<Rational> {
    let m = algebra.dim();
    let p = |i: usize, j: usize| algebra.coeff(i, j);
    let var = |i: usize, j: usize| i * m + j;
    let mut row = vec![Rational::zero(); m * m];

    // D(e_a ∘ e_b) = p_{ab,a} D(e_a) + p_{ab,b} D(e_b), or D(e_a) when a = b.
    if a == b {
        row[var(a, k)] += Rational::one();
    } else {
        row[var(a, k)] += p(a, b);
        row[var(b, k)] += p(b, a);
    }

    // D(u) ∘ e_c = Σ_j d_{uj} (p_{jc,j} e_j + p_{jc,c} e_c), with e_c ∘ e_c = e_c.
    let mut subtract_product = |u: usize, c: usize| {
        if k == c {
            row[var(u, c)] -= Rational::one();
            for j in (0..m).filter(|&j| j != c) {
                row[var(u, j)] -= p(c, j);
            }
        } else {
            row[var(u, k)] -= p(k, c);
        }
    };
    subtract_product(a, b);
    subtract_product(b, a);
    row
}

/// Leibniz identity on every ordered basis pair, evaluated with the product.
pub fn verify_derivation(algebra: &AlgebraSpec, map: &LinearMap) -> Result<bool> {
    let m = algebra.dim();
    if map.dim() != m {
        return Err(Error::Shape(format!(
            "map has dimension {}, algebra has dimension {m}",
            map.dim()
        )));
    }
    for i in 0..m {
        for j in 0..m {
            let (ei, ej) = (algebra.basis(i), algebra.basis(j));
            let lhs = map.apply(&algebra.multiply(&ei, &ej)?);
            let rhs = &algebra.multiply(&map.apply(&ei), &ej)?
                + &algebra.multiply(&ei, &map.apply(&ej))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `I_i = { j : p_{ij,i} = 1/2 }` (never contains `i`, since `p_{ii,i} = 1`).
pub fn half_set(algebra: &AlgebraSpec, i: usize) -> Result<Vec<usize>> {
    let m = algebra.dim();
    if i >= m {
        return Err(Error::Index { index: i, dim: m });
    }
    let half = rational::half();
    Ok((0..m).filter(|&j| *algebra.coeff(i, j) == half).collect())
}

/// Every basis derivation has `d_{ij} = 0` whenever `j ≠ i` and `j ∉ I_i`.
pub fn check_support_pattern(algebra: &AlgebraSpec, space: &DerivationSpace) -> bool {
    let m = algebra.dim();
    let half = rational::half();
    space.basis.iter().all(|d| {
        (0..m).all(|i| {
            (0..m)
                .filter(|&j| j != i && *algebra.coeff(i, j) != half)
                .all(|j| d.entry(i, j).is_zero())
        })
    })
}

/// For `m = 3`: some `{i, j, k} = {1, 2, 3}` has `p_{ij,i} = 1/2` and
/// `p_{ik,i} = p_{jk,j}`.
pub fn exists_nontrivial_derivation_3d(algebra: &AlgebraSpec) -> Result<bool> {
    if algebra.dim() != 3 {
        return Err(Error::Dimension {
            expected: "3",
            found: algebra.dim(),
        });
    }
    const PERMUTATIONS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let half = rational::half();
    let p = |i: usize, j: usize| algebra.coeff(i, j);
    Ok(PERMUTATIONS
        .iter()
        .any(|&[i, j, k]| *p(i, j) == half && p(i, k) == p(j, k)))
}
