//! Deterministic corpora of algebras for the theorem sweeps.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use volterra_core::rational::{self, ratio};
use volterra_core::{AlgebraSpec, Error, Rational, SkewMatrix};

/// Largest dimension accepted by extremal enumeration (2^15 sign patterns).
pub const EXTREMAL_DIM_CAP: usize = 6;

/// Random coefficients are drawn from `k / RANDOM_DENOMINATOR`.
pub const RANDOM_DENOMINATOR: i64 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusMode {
    Random,
    ExtremalExhaustive,
    Grid3d,
}

impl CorpusMode {
    pub fn name(self) -> &'static str {
        match self {
            CorpusMode::Random => "random",
            CorpusMode::ExtremalExhaustive => "extremal-exhaustive",
            CorpusMode::Grid3d => "grid-3d",
        }
    }
}

impl fmt::Display for CorpusMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(CorpusMode::Random),
            "extremal-exhaustive" => Ok(CorpusMode::ExtremalExhaustive),
            "grid-3d" => Ok(CorpusMode::Grid3d),
            other => Err(format!(
                "unknown corpus mode `{other}` (expected random, extremal-exhaustive or grid-3d)"
            )),
        }
    }
}

/// Everything needed to regenerate a corpus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusDescriptor {
    pub mode: CorpusMode,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of algebras requested in random mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(
        skip_serializing_if = "Vec::is_empty",
        serialize_with = "serialize_rationals"
    )]
    pub grid: Vec<Rational>,
}

fn serialize_rationals<S: serde::Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(values.iter().map(rational::format))
}

impl CorpusDescriptor {
    pub fn random(dim: usize, seed: u64, count: usize) -> Self {
        Self {
            mode: CorpusMode::Random,
            dim,
            seed: Some(seed),
            count: Some(count),
            grid: Vec::new(),
        }
    }

    pub fn extremal(dim: usize) -> Self {
        Self {
            mode: CorpusMode::ExtremalExhaustive,
            dim,
            seed: None,
            count: None,
            grid: Vec::new(),
        }
    }

    pub fn grid_3d(values: Vec<Rational>) -> Self {
        Self {
            mode: CorpusMode::Grid3d,
            dim: 3,
            seed: None,
            count: None,
            grid: values,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus {
    pub descriptor: CorpusDescriptor,
    pub algebras: Vec<AlgebraSpec>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("random corpora need an explicit seed")]
    MissingSeed,
    #[error("random corpora need an explicit count")]
    MissingCount,
    #[error("grid-3d corpora need at least one grid value")]
    EmptyGrid,
    #[error(transparent)]
    Algebra(#[from] Error),
}

pub fn generate_corpus(descriptor: &CorpusDescriptor) -> Result<Corpus, CorpusError> {
    let dim = descriptor.dim;
    let algebras = match descriptor.mode {
        CorpusMode::Random => {
            let seed = descriptor.seed.ok_or(CorpusError::MissingSeed)?;
            let count = descriptor.count.ok_or(CorpusError::MissingCount)?;
            random_algebras(dim, seed, count)
        }
        CorpusMode::ExtremalExhaustive => extremal_algebras(dim)?,
        CorpusMode::Grid3d => {
            if dim != 3 {
                return Err(Error::Dimension {
                    expected: "3",
                    found: dim,
                }
                .into());
            }
            if descriptor.grid.is_empty() {
                return Err(CorpusError::EmptyGrid);
            }
            grid_algebras(&descriptor.grid)?
        }
    };
    Ok(Corpus {
        descriptor: descriptor.clone(),
        algebras,
    })
}

/// `count` algebras with every `p_{ij,i}`, `i < j`, uniform on `{0, 1/64, …, 1}`.
pub fn random_algebras(dim: usize, seed: u64, count: usize) -> Vec<AlgebraSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            AlgebraSpec::from_upper(dim, |_, _| {
                ratio(rng.gen_range(0..=RANDOM_DENOMINATOR), RANDOM_DENOMINATOR)
            })
            .expect("coefficients lie in [0, 1]")
        })
        .collect()
}

/// All `2^(m(m-1)/2)` algebras with `a_{ik} = ±1`. Bit `b` of the pattern
/// negates the `b`-th upper-triangular entry in row-major order.
pub fn extremal_algebras(dim: usize) -> Result<Vec<AlgebraSpec>, Error> {
    if dim > EXTREMAL_DIM_CAP {
        return Err(Error::Capacity {
            what: "extremal enumeration dimension",
            requested: dim,
            cap: EXTREMAL_DIM_CAP,
        });
    }
    let pairs = dim * dim.saturating_sub(1) / 2;
    Ok((0u64..1 << pairs)
        .map(|pattern| {
            let mut a = vec![vec![rational::int(0); dim]; dim];
            let mut bit = 0;
            for i in 0..dim {
                for k in i + 1..dim {
                    let sign: i64 = if pattern >> bit & 1 == 1 { -1 } else { 1 };
                    a[i][k] = rational::int(sign);
                    a[k][i] = rational::int(-sign);
                    bit += 1;
                }
            }
            AlgebraSpec::from_skew(&SkewMatrix::new(dim, a).expect("±1 entries are skew"))
        })
        .collect())
}

/// The cube over `(p_{12,1}, p_{13,1}, p_{23,2})`, last coordinate fastest.
pub fn grid_algebras(values: &[Rational]) -> Result<Vec<AlgebraSpec>, Error> {
    let mut out = Vec::with_capacity(values.len().pow(3));
    for p12 in values {
        for p13 in values {
            for p23 in values {
                out.push(AlgebraSpec::from_upper(3, |i, j| match (i, j) {
                    (0, 1) => p12.clone(),
                    (0, 2) => p13.clone(),
                    _ => p23.clone(),
                })?);
            }
        }
    }
    Ok(out)
}

/// `{0, 1/4, 1/2, 3/4, 1}`
pub fn quarter_grid() -> Vec<Rational> {
    (0..=4).map(|k| ratio(k, 4)).collect()
}
