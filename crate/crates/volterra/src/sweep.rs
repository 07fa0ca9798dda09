//! Theorem sweeps: every algebra of a corpus goes through a module's oracle
//! comparisons, and any disagreement is recorded as a violation.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use volterra_core::characters::{
    enumerate_characters_capped, is_character, verify_character_bruteforce,
};
use volterra_core::derivations::{
    check_support_pattern, derivation_space, exists_nontrivial_derivation_3d, verify_derivation,
    LinearMap,
};
use volterra_core::local::{candidate_space, local_equals_derivation};
use volterra_core::rational::{self, half, int};
use volterra_core::structure::{
    associativity_report, tournaments_isomorphic, Tournament, ISOMORPHISM_CAP,
};
use volterra_core::{AlgebraSpec, Error};

use crate::corpus::{Corpus, CorpusDescriptor, CorpusMode};

/// Largest dimension for which the character suite enumerates all subsets.
pub const CHARACTER_SUITE_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Characters,
    Associativity,
    Derivations,
    Local,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Characters => "characters",
            Suite::Associativity => "associativity",
            Suite::Derivations => "derivations",
            Suite::Local => "local",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "characters" => Ok(Suite::Characters),
            "associativity" => Ok(Suite::Associativity),
            "derivations" => Ok(Suite::Derivations),
            "local" => Ok(Suite::Local),
            other => Err(format!(
                "unknown suite `{other}` (expected characters, associativity, derivations or local)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Characters {
        subsets_checked: usize,
        /// Nonempty characters.
        characters: usize,
    },
    Associativity {
        associative: bool,
        extremal: bool,
        cyclic_triple: bool,
    },
    Derivations {
        /// `p_{ij,i}` for `i < j`, row-major.
        upper: Vec<String>,
        dim_space: usize,
        /// The dimension-3 classification condition.
        #[serde(skip_serializing_if = "Option::is_none")]
        condition: Option<bool>,
    },
    Local {
        candidate_dim: usize,
        derivation_dim: usize,
        equal: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraResult {
    /// Position in the corpus; serialized 1-based.
    #[serde(serialize_with = "serialize_one_based")]
    pub index: usize,
    #[serde(flatten)]
    pub outcome: Outcome,
}

/// A disagreement between a decision procedure and its oracle. `index` is
/// absent for corpus-level checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "serialize_one_based_opt"
    )]
    pub index: Option<usize>,
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub suite: Suite,
    pub corpus: CorpusDescriptor,
    pub algebras: usize,
    pub results: Vec<AlgebraResult>,
    pub counts: BTreeMap<&'static str, usize>,
    pub violations: Vec<Violation>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, key: &str) -> usize {
        self.counts.get(key).copied().unwrap_or(0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error("the corpus is empty")]
    EmptyCorpus,
    #[error("algebra #{}: {source}", index + 1)]
    Algebra {
        index: usize,
        #[source]
        source: Error,
    },
}

struct Checked {
    outcome: Outcome,
    counts: Vec<&'static str>,
    violations: Vec<(&'static str, String)>,
}

impl Checked {
    fn new(outcome: Outcome) -> Self {
        Self {
            outcome,
            counts: Vec::new(),
            violations: Vec::new(),
        }
    }

    fn expect(&mut self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.violations.push((check, detail()));
        }
    }
}

/// Runs `suite` over every algebra of `corpus`, in parallel on the current
/// rayon pool. Results and violations come back in corpus order.
pub fn run_suite(suite: Suite, corpus: &Corpus) -> Result<SweepReport, SweepError> {
    if corpus.algebras.is_empty() {
        return Err(SweepError::EmptyCorpus);
    }
    let checked: Vec<Result<Checked, Error>> = corpus
        .algebras
        .par_iter()
        .map(|a| match suite {
            Suite::Characters => check_characters(a),
            Suite::Associativity => check_associativity(a),
            Suite::Derivations => check_derivations(a),
            Suite::Local => check_local(a),
        })
        .collect();

    let mut results = Vec::with_capacity(checked.len());
    let mut counts: BTreeMap<&'static str, usize> = BTreeMap::new();
    let mut violations = Vec::new();
    for (index, item) in checked.into_iter().enumerate() {
        let item = item.map_err(|source| SweepError::Algebra { index, source })?;
        for key in item.counts {
            *counts.entry(key).or_default() += 1;
        }
        violations.extend(
            item.violations
                .into_iter()
                .map(|(check, detail)| Violation {
                    index: Some(index),
                    check,
                    detail,
                }),
        );
        results.push(AlgebraResult {
            index,
            outcome: item.outcome,
        });
    }

    if suite == Suite::Associativity && corpus.descriptor.mode == CorpusMode::ExtremalExhaustive {
        // one associative sign pattern per labeling of the transitive tournament
        let labelings: usize = (1..=corpus.descriptor.dim).product();
        let found = counts.get("associative").copied().unwrap_or(0);
        if found != labelings {
            violations.push(Violation {
                index: None,
                check: "labeling-count",
                detail: format!("{found} associative sign patterns, expected {labelings}"),
            });
        }
    }

    Ok(SweepReport {
        suite,
        corpus: corpus.descriptor.clone(),
        algebras: results.len(),
        results,
        counts,
        violations,
    })
}

fn serialize_one_based<S: serde::Serializer>(index: &usize, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u64(*index as u64 + 1)
}

fn serialize_one_based_opt<S: serde::Serializer>(
    index: &Option<usize>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match index {
        Some(i) => serialize_one_based(i, s),
        None => s.serialize_none(),
    }
}

fn one_based(subset: &[usize]) -> Vec<usize> {
    subset.iter().map(|i| i + 1).collect()
}

fn check_characters(a: &AlgebraSpec) -> Result<Checked, Error> {
    let m = a.dim();
    if m > CHARACTER_SUITE_CAP {
        return Err(Error::Capacity {
            what: "character sweep dimension",
            requested: m,
            cap: CHARACTER_SUITE_CAP,
        });
    }
    let mut hits = Vec::new();
    let mut mismatches = Vec::new();
    for mask in 0u32..1 << m {
        let subset: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let by_condition = is_character(a, &subset)?;
        if by_condition != verify_character_bruteforce(a, &subset)? {
            mismatches.push(subset.clone());
        }
        if by_condition {
            hits.push(subset);
        }
    }
    let enumerated: Vec<Vec<usize>> = enumerate_characters_capped(a, true, CHARACTER_SUITE_CAP)?
        .into_iter()
        .map(|c| c.subset)
        .collect();
    let characters = hits.iter().filter(|s| !s.is_empty()).count();
    let mut checked = Checked::new(Outcome::Characters {
        subsets_checked: 1 << m,
        characters,
    });
    for subset in mismatches {
        checked.violations.push((
            "character-oracle",
            format!(
                "condition and brute force disagree on E = {:?}",
                one_based(&subset)
            ),
        ));
    }
    let full: Vec<usize> = (0..m).collect();
    checked.expect(hits.contains(&full), "full-set-character", || {
        "the full index set is not a character".into()
    });
    hits.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    checked.expect(hits == enumerated, "character-enumeration", || {
        format!(
            "enumeration returned {} sets, subset scan {}",
            enumerated.len(),
            hits.len()
        )
    });
    checked
        .counts
        .extend(std::iter::repeat_n("characters", characters));
    Ok(checked)
}

fn check_associativity(a: &AlgebraSpec) -> Result<Checked, Error> {
    let report = associativity_report(a);
    let extremal = report.by_tournament.is_some();
    let associative = report.direct;
    let cyclic_triple = report.by_tournament == Some(false);
    let mut checked = Checked::new(Outcome::Associativity {
        associative,
        extremal,
        cyclic_triple,
    });
    checked.expect(report.consistent(), "associativity-deciders", || {
        format!(
            "direct = {}, coefficient conditions = {}, tournament = {:?}",
            report.direct, report.by_theorem, report.by_tournament
        )
    });
    if associative {
        checked.counts.push("associative");
        checked.expect(extremal, "associative-not-extremal", || {
            "associative algebra has a non-extremal skew matrix".into()
        });
        let derivations = derivation_space(a)?;
        checked.counts.push("derivations_checked");
        checked.expect(derivations.is_trivial(), "associative-derivations", || {
            format!(
                "associative algebra has {} independent derivations",
                derivations.dim_space()
            )
        });
        if extremal && a.dim() <= ISOMORPHISM_CAP {
            let tournament = Tournament::from_skew(&a.to_skew())?;
            let relabeling = tournaments_isomorphic(&tournament, &Tournament::transitive(a.dim()))?;
            checked.counts.push("isomorphic_to_canonical");
            checked.expect(relabeling.is_some(), "canonical-isomorphism", || {
                "tournament is not isomorphic to the transitive one".into()
            });
        }
    }
    if extremal {
        checked.counts.push("extremal");
    }
    if cyclic_triple {
        checked.counts.push("cyclic_triple");
    }
    Ok(checked)
}

fn check_derivations(a: &AlgebraSpec) -> Result<Checked, Error> {
    let m = a.dim();
    let space = derivation_space(a)?;
    let dim_space = space.dim_space();
    let condition = if m == 3 {
        Some(exists_nontrivial_derivation_3d(a)?)
    } else {
        None
    };
    let upper = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .map(|(i, j)| rational::format(a.coeff(i, j)))
        .collect();
    let mut checked = Checked::new(Outcome::Derivations {
        upper,
        dim_space,
        condition,
    });

    for (n, d) in space.basis.iter().enumerate() {
        checked.expect(verify_derivation(a, d)?, "basis-derivation", || {
            format!("basis map #{} fails the Leibniz rule", n + 1)
        });
        checked.expect(d.has_zero_row_sums(), "zero-row-sums", || {
            format!("basis map #{} has nonzero row sums", n + 1)
        });
    }
    checked.expect(check_support_pattern(a, &space), "support-pattern", || {
        "a basis map has support outside the half sets".into()
    });
    if !space.basis.is_empty() {
        let weights: Vec<_> = (1..=dim_space as i64)
            .map(|n| int(if n % 2 == 0 { -n } else { n }))
            .collect();
        let combination = LinearMap::combination(m, &space.basis, &weights);
        checked.expect(verify_derivation(a, &combination)?, "span-closure", || {
            "a combination of basis maps fails the Leibniz rule".into()
        });
    }
    let has_half = (0..m).any(|i| (0..m).any(|j| i != j && a.coeff(i, j) == &half()));
    if !has_half {
        checked.counts.push("no_half_entries");
        checked.expect(dim_space == 0, "no-half-trivial", || {
            format!("no coefficient equals 1/2 but dim Der = {dim_space}")
        });
    }
    if let Some(condition) = condition {
        checked.expect(condition == (dim_space >= 1), "classification-3d", || {
            format!("condition = {condition}, dim Der = {dim_space}")
        });
    }
    if associativity_report(a).direct {
        checked.counts.push("associative");
        checked.expect(dim_space == 0, "associative-derivations", || {
            format!("associative algebra has {dim_space} independent derivations")
        });
    }
    if dim_space >= 1 {
        checked.counts.push("nontrivial");
    }
    Ok(checked)
}

fn check_local(a: &AlgebraSpec) -> Result<Checked, Error> {
    let equal = local_equals_derivation(a)?;
    let derivations = derivation_space(a)?;
    let candidates = candidate_space(&derivations);
    let mut checked = Checked::new(Outcome::Local {
        candidate_dim: candidates.dim_space(),
        derivation_dim: derivations.dim_space(),
        equal,
    });
    checked.expect(equal, "local-equals-derivation", || {
        format!(
            "candidate space has dimension {}, derivation space {}",
            candidates.dim_space(),
            derivations.dim_space()
        )
    });
    if equal {
        checked.counts.push("equal");
    }
    Ok(checked)
}
