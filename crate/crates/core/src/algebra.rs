//! Genetic Volterra algebras in reduced heredity form, the algebra product,
//! the quadratic stochastic operator, and the skew-symmetric representation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A genetic Volterra algebra, stored as the reduced matrix `p[i][j] = p_{ij,i}`.
///
/// The full heredity tensor is never stored: the Volterra condition makes
/// `p_{ij,k} = 0` for `k ∉ {i, j}`, so [`AlgebraSpec::heredity`] rebuilds any
/// entry from the reduced matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    dim: usize,
    p: Vec<Vec<Rational>>,
}

impl AlgebraSpec {
    /// Validates a reduced coefficient matrix.
    ///
    /// The diagonal must be exactly 1, every entry must lie in `[0, 1]`, and
    /// `p[i][j] + p[j][i] = 1` off the diagonal.
    pub fn from_coeffs(dim: usize, p: Vec<Vec<Rational>>) -> Result<Self> {
        check_square(dim, &p)?;
        for (i, row) in p.iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                if !rational::in_unit_interval(value) {
                    return Err(Error::Range {
                        row: i,
                        col: j,
                        value: value.to_string(),
                        allowed: "[0, 1]",
                    });
                }
            }
        }
        for (i, row) in p.iter().enumerate() {
            if !row[i].is_one() {
                return Err(Error::Diagonal {
                    index: i,
                    value: row[i].to_string(),
                });
            }
            for j in (i + 1)..dim {
                let sum = &p[i][j] + &p[j][i];
                if !sum.is_one() {
                    return Err(Error::Complement {
                        i,
                        j,
                        sum: sum.to_string(),
                    });
                }
            }
        }
        Ok(Self { dim, p })
    }

    /// Builds an algebra from the strict upper triangle `upper(i, j) = p_{ij,i}`
    /// for `i < j`; the lower triangle is filled with complements.
    pub fn from_upper<F>(dim: usize, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Rational,
    {
        let mut p = vec![vec![Rational::one(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let value = upper(i, j);
                p[j][i] = Rational::one() - &value;
                p[i][j] = value;
            }
        }
        Self::from_coeffs(dim, p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The reduced matrix, row `i` holding `p_{ij,i}`.
    pub fn coeffs(&self) -> &[Vec<Rational>] {
        &self.p
    }

    /// `p_{ij,i}`: the weight of `e_i` in `e_i ∘ e_j`.
    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.p[i][j]
    }

    /// The full heredity coefficient `p_{ij,k}`.
    pub fn heredity(&self, i: usize, j: usize, k: usize) -> Rational {
        if k == i {
            self.p[i][j].clone()
        } else if k == j {
            self.p[j][i].clone()
        } else {
            Rational::zero()
        }
    }

    pub fn basis(&self, i: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, i)
    }

    /// `(x ∘ y)_k = Σ_{i,j} p_{ij,k} x_i y_j`, summed over the only nonzero
    /// terms `i = k` or `j = k`.
    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_len(x)?;
        self.check_len(y)?;
        let coords = (0..self.dim)
            .map(|k| {
                let mut acc = &x[k] * &y[k];
                for j in (0..self.dim).filter(|&j| j != k) {
                    let cross = &x[k] * &y[j] + &x[j] * &y[k];
                    if !cross.is_zero() {
                        acc += self.heredity(k, j, k) * cross;
                    }
                }
                acc
            })
            .collect();
        Ok(AlgebraElement(coords))
    }

    /// One generation of the quadratic stochastic operator, `V(x) = x ∘ x`.
    pub fn apply_qso(&self, x: &SimplexPoint) -> Result<SimplexPoint> {
        let image = self.multiply(x.as_element(), x.as_element())?;
        debug_assert!(image.sum().is_one());
        Ok(SimplexPoint(image))
    }

    /// `a[i][k] = 2 p_{ik,k} - 1` off the diagonal.
    pub fn to_skew(&self) -> SkewMatrix {
        let two = rational::int(2);
        let a = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|k| {
                        if i == k {
                            Rational::zero()
                        } else {
                            &two * &self.p[k][i] - Rational::one()
                        }
                    })
                    .collect()
            })
            .collect();
        SkewMatrix { dim: self.dim, a }
    }

    /// Inverse of [`AlgebraSpec::to_skew`]: `p_{ik,k} = (1 + a[i][k]) / 2`.
    pub fn from_skew(skew: &SkewMatrix) -> Self {
        let half = rational::half();
        let dim = skew.dim;
        let p = (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|i| {
                        if i == k {
                            Rational::one()
                        } else {
                            (Rational::one() + &skew.a[i][k]) * &half
                        }
                    })
                    .collect()
            })
            .collect();
        Self { dim, p }
    }

    fn check_len(&self, x: &AlgebraElement) -> Result<()> {
        if x.len() == self.dim {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.len(),
                self.dim
            )))
        }
    }
}

/// Skew-symmetric matrix `(a_{ik})` with `|a_{ik}| ≤ 1`, representing the
/// Volterra operator `V(x)_k = x_k (1 + Σ_i a_{ik} x_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewMatrix {
    dim: usize,
    a: Vec<Vec<Rational>>,
}

impl SkewMatrix {
    pub fn new(dim: usize, a: Vec<Vec<Rational>>) -> Result<Self> {
        check_square(dim, &a)?;
        for i in 0..dim {
            for k in i..dim {
                if a[i][k] != -a[k][i].clone() {
                    return Err(Error::NotSkew { i, k });
                }
                if a[i][k].abs() > Rational::one() {
                    return Err(Error::Range {
                        row: i,
                        col: k,
                        value: a[i][k].to_string(),
                        allowed: "[-1, 1]",
                    });
                }
            }
        }
        Ok(Self { dim, a })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            a: vec![vec![Rational::zero(); dim]; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.a
    }

    pub fn entry(&self, i: usize, k: usize) -> &Rational {
        &self.a[i][k]
    }

    /// Exact `V(x)_k = x_k (1 + Σ_i a_{ik} x_i)`.
    pub fn apply(&self, x: &SimplexPoint) -> Result<SimplexPoint> {
        if x.len() != self.dim {
            return Err(Error::Shape(format!(
                "point has {} coordinates, matrix has dimension {}",
                x.len(),
                self.dim
            )));
        }
        let coords = (0..self.dim)
            .map(|k| {
                let mut factor = Rational::one();
                for i in 0..self.dim {
                    if !self.a[i][k].is_zero() && !x[i].is_zero() {
                        factor += &self.a[i][k] * &x[i];
                    }
                }
                &x[k] * factor
            })
            .collect();
        Ok(SimplexPoint(AlgebraElement(coords)))
    }

    /// Entries as `f64`, for the floating-point dynamics.
    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.a
            .iter()
            .map(|row| row.iter().map(rational::to_f64).collect())
            .collect()
    }
}

/// A vector `x = Σ x_i e_i` in the algebra's natural basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement(Vec<Rational>);

impl AlgebraElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim])
    }

    /// The basis vector `e_i`.
    pub fn basis(dim: usize, i: usize) -> Self {
        let mut coords = vec![Rational::zero(); dim];
        coords[i] = Rational::one();
        Self(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `‖x‖₁ = Σ |x_i|`.
    pub fn l1_norm(&self) -> Rational {
        self.0.iter().map(Signed::abs).sum()
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * factor).collect())
    }
}

impl Index<usize> for AlgebraElement {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;

    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len());
        AlgebraElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;

    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        assert_eq!(self.len(), rhs.len());
        AlgebraElement(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// A point of the simplex: nonnegative coordinates summing to exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplexPoint(AlgebraElement);

impl SimplexPoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Simplex("no coordinates".into()));
        }
        if let Some(i) = coords.iter().position(Signed::is_negative) {
            return Err(Error::Simplex(format!(
                "coordinate {} is negative ({})",
                i + 1,
                coords[i]
            )));
        }
        let sum: Rational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::Simplex(format!("coordinates sum to {sum}")));
        }
        Ok(Self(AlgebraElement(coords)))
    }

    pub fn vertex(dim: usize, i: usize) -> Self {
        Self(AlgebraElement::basis(dim, i))
    }

    /// The barycenter `(1/m, …, 1/m)`.
    pub fn barycenter(dim: usize) -> Self {
        let share = Rational::one() / rational::int(dim as i64);
        Self(AlgebraElement(vec![share; dim]))
    }

    pub fn as_element(&self) -> &AlgebraElement {
        &self.0
    }

    pub fn coords(&self) -> &[Rational] {
        self.0.coords()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl Index<usize> for SimplexPoint {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

fn check_square(dim: usize, m: &[Vec<Rational>]) -> Result<()> {
    if dim == 0 {
        return Err(Error::Shape("dimension must be positive".into()));
    }
    if m.len() != dim {
        return Err(Error::Shape(format!(
            "expected {dim} rows, found {}",
            m.len()
        )));
    }
    if let Some((i, row)) = m.iter().enumerate().find(|(_, row)| row.len() != dim) {
        return Err(Error::Shape(format!(
            "row {} has {} entries, expected {dim}",
            i + 1,
            row.len()
        )));
    }
    Ok(())
}
