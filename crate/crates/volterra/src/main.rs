use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use volterra::corpus::{quarter_grid, CorpusDescriptor, CorpusMode};
use volterra::format::{parse_rational_list, to_json, AlgebraFile, Form};
use volterra::sweep::{Outcome, Suite, SweepReport};
use volterra::{configure_threads, generate_corpus, run_suite};
use volterra_core::characters::{enumerate_characters_capped, DEFAULT_ENUMERATION_CAP};
use volterra_core::derivations::derivation_space;
use volterra_core::dynamics::{evolve, evolve_exact};
use volterra_core::local::{
    local_candidate_space, local_equals_derivation, probe_conjecture, ProbeVerdict,
};
use volterra_core::rational::{self, Rational};
use volterra_core::structure::{
    associativity_report, canonical_associative, is_extremal, tournaments_isomorphic, Tournament,
};
use volterra_core::{AlgebraElement, SimplexPoint};

#[derive(Parser)]
#[command(
    name = "volterra",
    version,
    about = "Genetic Volterra algebras: characters, associativity, derivations and dynamics"
)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Coeffs,
    Skew,
}

#[derive(Subcommand)]
enum Command {
    /// List the index subsets whose indicator functional is a character.
    Characters {
        #[arg(long)]
        algebra: PathBuf,
        /// Also report the empty set (the zero functional).
        #[arg(long)]
        include_trivial: bool,
    },
    /// Decide associativity three ways and show failing basis triples.
    Associativity {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Build the tournament of the skew matrix and classify it.
    Tournament {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Check associativity over every extremal sign pattern of one dimension.
    SweepExtremal {
        #[arg(long)]
        dim: usize,
    },
    /// Compute a basis of the derivation space.
    Derivations {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Tabulate derivation dimensions over a cube of 3-dimensional algebras.
    #[command(name = "derivation-sweep-3d")]
    DerivationSweep3d {
        /// Comma-separated coefficient values.
        #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
        grid: String,
    },
    /// Compare the local-derivation candidate space with the derivation space (dimension 3).
    LocalCheck {
        #[arg(long)]
        algebra: PathBuf,
    },
    /// Probe whether local derivations are derivations in dimension 3 and up.
    ProbeConjecture {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = volterra_core::local::DEFAULT_PROBE_SAMPLES)]
        samples: usize,
    },
    /// Iterate the Volterra operator from a starting point.
    Evolve {
        #[arg(long)]
        algebra: PathBuf,
        /// Comma-separated starting point, e.g. "1/2,1/4,1/4".
        #[arg(long)]
        x0: String,
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Exact rational iteration instead of floating point.
        #[arg(long)]
        exact: bool,
    },
    /// Print the canonical associative algebra as an algebra file.
    Canonical {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "coeffs")]
        form: FormArg,
    },
    /// Run a theorem sweep over a generated corpus.
    Sweep {
        #[arg(long)]
        suite: Suite,
        #[arg(long)]
        mode: CorpusMode,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Required for random corpora.
        #[arg(long)]
        seed: Option<u64>,
        /// Number of algebras in a random corpus.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Coefficient values for grid-3d corpora.
        #[arg(long, default_value = "0,1/4,1/2,3/4,1")]
        grid: String,
    },
}

/// What a command produced: its rendered output and whether it found a
/// theorem violation.
struct Rendered {
    text: String,
    violations: bool,
}

impl From<String> for Rendered {
    fn from(text: String) -> Self {
        Self {
            text,
            violations: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli)) {
        Ok(rendered) => {
            print!("{}", rendered.text);
            if !rendered.text.ends_with('\n') {
                println!();
            }
            if rendered.violations {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Rendered> {
    let output = cli.output;
    match cli.command {
        Command::Characters {
            algebra,
            include_trivial,
        } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let sets = enumerate_characters_capped(&a, include_trivial, DEFAULT_ENUMERATION_CAP)?;
            let subsets: Vec<Vec<usize>> = sets.iter().map(|c| one_based(&c.subset)).collect();
            match output.unwrap_or(Output::Json) {
                Output::Json => {
                    let list: Vec<Value> = sets
                        .iter()
                        .zip(&subsets)
                        .map(|(c, s)| json!({ "subset": s, "is_trivial": c.is_trivial }))
                        .collect();
                    json_out(&list)
                }
                Output::Csv => {
                    let mut out = String::from("subset,is_trivial\n");
                    for (c, s) in sets.iter().zip(&subsets) {
                        writeln!(out, "\"{}\",{}", join(s, " "), c.is_trivial)?;
                    }
                    Ok(out.into())
                }
                Output::Text => {
                    let mut out = String::new();
                    for (c, s) in sets.iter().zip(&subsets) {
                        let mark = if c.is_trivial { "  (trivial)" } else { "" };
                        writeln!(out, "{{{}}}{mark}", join(s, ", "))?;
                    }
                    writeln!(out, "{} character(s)", sets.len())?;
                    Ok(out.into())
                }
            }
        }

        Command::Associativity { algebra } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let report = associativity_report(&a);
            let witnesses: Vec<Value> = report
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "triple": [w.i + 1, w.j + 1, w.k + 1],
                        "left": element(&w.left),
                        "right": element(&w.right),
                    })
                })
                .collect();
            let value = json!({
                "associative": report.direct,
                "direct": report.direct,
                "by_theorem": report.by_theorem,
                "by_tournament": report.by_tournament,
                "extremal": report.by_tournament.is_some(),
                "consistent": report.consistent(),
                "witnesses": witnesses,
            });
            let rendered = match output.unwrap_or(Output::Json) {
                Output::Json => json_out(&value)?,
                Output::Csv => no_csv("associativity")?,
                Output::Text => {
                    let mut out = String::new();
                    writeln!(out, "associative:        {}", report.direct)?;
                    writeln!(out, "coefficient test:   {}", report.by_theorem)?;
                    match report.by_tournament {
                        Some(t) => writeln!(out, "tournament test:    {t}")?,
                        None => writeln!(out, "tournament test:    not extremal")?,
                    }
                    for w in &report.witnesses {
                        writeln!(
                            out,
                            "e{} (e{} e{}) = {}  but  (e{} e{}) e{} = {}",
                            w.i + 1,
                            w.j + 1,
                            w.k + 1,
                            join(&element(&w.left), " "),
                            w.i + 1,
                            w.j + 1,
                            w.k + 1,
                            join(&element(&w.right), " ")
                        )?;
                    }
                    out.into()
                }
            };
            Ok(Rendered {
                violations: !report.consistent(),
                ..rendered
            })
        }

        Command::Tournament { algebra } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let skew = a.to_skew();
            let extremal = is_extremal(&skew);
            let t = Tournament::from_skew(&skew)?;
            let cyclic = t.cyclic_triple().map(|(x, y, z)| [x + 1, y + 1, z + 1]);
            let relabeling = if t.is_transitive() {
                tournaments_isomorphic(&t, &Tournament::transitive(t.dim()))?
            } else {
                None
            };
            let classification = if t.is_transitive() {
                "transitive"
            } else {
                "cyclic"
            };
            let adjacency: Vec<Vec<u8>> = t
                .adjacency()
                .iter()
                .map(|row| row.iter().map(|&b| b as u8).collect())
                .collect();
            let value = json!({
                "dim": t.dim(),
                "adjacency": adjacency,
                "scores": t.scores(),
                "classification": classification,
                "cyclic_triple": cyclic,
                "extremal": extremal,
                "associative": extremal && t.is_transitive(),
                "relabeling_to_canonical": relabeling.as_ref().map(|p| one_based(p)),
            });
            match output.unwrap_or(Output::Json) {
                Output::Json => json_out(&value),
                Output::Csv => {
                    let mut out = String::new();
                    for row in &adjacency {
                        writeln!(out, "{}", join(row, ","))?;
                    }
                    Ok(out.into())
                }
                Output::Text => {
                    let mut out = String::new();
                    for (k, row) in t.adjacency().iter().enumerate() {
                        let wins: Vec<usize> =
                            (0..t.dim()).filter(|&i| row[i]).map(|i| i + 1).collect();
                        writeln!(out, "{} -> {{{}}}", k + 1, join(&wins, ", "))?;
                    }
                    writeln!(out, "classification: {classification}")?;
                    if let Some([x, y, z]) = cyclic {
                        writeln!(out, "cyclic triple: {x} -> {y} -> {z} -> {x}")?;
                    }
                    writeln!(out, "extremal: {extremal}")?;
                    Ok(out.into())
                }
            }
        }

        Command::SweepExtremal { dim } => {
            let corpus = generate_corpus(&CorpusDescriptor::extremal(dim))?;
            let report = run_suite(Suite::Associativity, &corpus)?;
            let labelings: usize = (1..=dim).product();
            let rendered = match output.unwrap_or(Output::Text) {
                Output::Json => json_out(&json!({
                    "dim": dim,
                    "patterns": report.algebras,
                    "associative": report.count("associative"),
                    "cyclic_triple": report.count("cyclic_triple"),
                    "labelings": labelings,
                    "violations": report.violations,
                }))?,
                format => {
                    let header = [
                        "dim",
                        "patterns",
                        "associative",
                        "cyclic_triple",
                        "labelings",
                    ];
                    let row = [
                        dim,
                        report.algebras,
                        report.count("associative"),
                        report.count("cyclic_triple"),
                        labelings,
                    ];
                    let mut out = table(format, &header, &[row.map(|v| v.to_string()).to_vec()]);
                    violation_lines(&mut out, format, &report);
                    out.into()
                }
            };
            Ok(Rendered {
                violations: !report.is_clean(),
                ..rendered
            })
        }

        Command::Derivations { algebra } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let space = derivation_space(&a)?;
            let basis: Vec<Vec<Vec<String>>> =
                space.basis.iter().map(|d| matrix(d.entries())).collect();
            match output.unwrap_or(Output::Json) {
                Output::Json => {
                    json_out(&json!({ "dim_space": space.dim_space(), "basis": basis }))
                }
                Output::Csv => {
                    let m = a.dim();
                    let mut header = vec!["map".to_string()];
                    header.extend(
                        (0..m).flat_map(|i| (0..m).map(move |j| format!("d_{}_{}", i + 1, j + 1))),
                    );
                    let mut out = header.join(",") + "\n";
                    for (n, d) in space.basis.iter().enumerate() {
                        let flat: Vec<String> = d.to_flat().iter().map(rational::format).collect();
                        writeln!(out, "{},{}", n + 1, flat.join(","))?;
                    }
                    Ok(out.into())
                }
                Output::Text => {
                    let mut out = format!("dim Der = {}\n", space.dim_space());
                    for (n, d) in basis.iter().enumerate() {
                        writeln!(out, "\nD{}:", n + 1)?;
                        out.push_str(&matrix_text(d));
                    }
                    Ok(out.into())
                }
            }
        }

        Command::DerivationSweep3d { grid } => {
            let values = parse_rational_list(&grid).context("invalid --grid")?;
            let corpus = generate_corpus(&CorpusDescriptor::grid_3d(values))?;
            let report = run_suite(Suite::Derivations, &corpus)?;
            let rows: Vec<Vec<String>> = report
                .results
                .iter()
                .filter_map(|r| match &r.outcome {
                    Outcome::Derivations {
                        upper,
                        dim_space,
                        condition,
                    } => {
                        let mut row = upper.clone();
                        row.push(condition.unwrap_or(false).to_string());
                        row.push(dim_space.to_string());
                        Some(row)
                    }
                    _ => None,
                })
                .collect();
            let rendered = match output.unwrap_or(Output::Text) {
                Output::Json => {
                    let list: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            json!({
                                "p12_1": r[0], "p13_1": r[1], "p23_2": r[2],
                                "condition": r[3] == "true",
                                "dim_space": r[4].parse::<usize>().expect("numeric"),
                            })
                        })
                        .collect();
                    json_out(&json!({ "rows": list, "violations": report.violations }))?
                }
                format => {
                    let header = ["p12_1", "p13_1", "p23_2", "condition", "dim_space"];
                    let mut out = table(format, &header, &rows);
                    violation_lines(&mut out, format, &report);
                    out.into()
                }
            };
            Ok(Rendered {
                violations: !report.is_clean(),
                ..rendered
            })
        }

        Command::LocalCheck { algebra } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let candidates = local_candidate_space(&a)?;
            let derivation_dim = derivation_space(&a)?.dim_space();
            let equal = local_equals_derivation(&a)?;
            let rendered = match output.unwrap_or(Output::Json) {
                Output::Json => json_out(&json!({
                    "candidate_dim": candidates.dim_space(),
                    "derivation_dim": derivation_dim,
                    "equal": equal,
                }))?,
                Output::Csv => format!("candidate_dim,derivation_dim,equal\n{},{derivation_dim},{equal}\n", candidates.dim_space()).into(),
                Output::Text => format!(
                    "candidate space dimension:  {}\nderivation space dimension: {derivation_dim}\nequal: {equal}\n",
                    candidates.dim_space()
                )
                .into(),
            };
            Ok(Rendered {
                violations: !equal,
                ..rendered
            })
        }

        Command::ProbeConjecture {
            algebra,
            seed,
            samples,
        } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let report = probe_conjecture(&a, seed, samples)?;
            let verdict = match report.verdict {
                ProbeVerdict::Pass => "pass",
                ProbeVerdict::Fail => "fail",
                ProbeVerdict::Inconclusive => "inconclusive",
            };
            let failures: Vec<Value> = report
                .rank_failures
                .iter()
                .map(|f| {
                    json!({
                        "candidate": f.candidate + 1,
                        "sample": f.sample + 1,
                        "point": f.point.iter().map(rational::format).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let rendered = match output.unwrap_or(Output::Json) {
                Output::Json => json_out(&json!({
                    "dim": report.dim,
                    "seed": report.seed,
                    "samples": report.samples,
                    "derivation_dim": report.derivation_dim,
                    "candidate_dim": report.candidate_dim,
                    "refined_dim": report.refined_dim,
                    "non_derivation_candidates": one_based(&report.non_derivation_candidates),
                    "rank_failures": failures,
                    "soundness_failures": report.soundness_failures,
                    "verdict": verdict,
                }))?,
                Output::Csv => no_csv("probe-conjecture")?,
                Output::Text => format!(
                    "dim Der = {}, candidates = {}, after {} samples = {}\nverdict: {verdict}\n",
                    report.derivation_dim, report.candidate_dim, report.samples, report.refined_dim
                )
                .into(),
            };
            Ok(Rendered {
                violations: report.verdict == ProbeVerdict::Fail,
                ..rendered
            })
        }

        Command::Evolve {
            algebra,
            x0,
            steps,
            exact,
        } => {
            let a = AlgebraFile::read(&algebra)?.algebra;
            let start = SimplexPoint::new(parse_rational_list(&x0).context("invalid --x0")?)
                .context("invalid --x0")?;
            if start.len() != a.dim() {
                bail!(
                    "--x0 has {} coordinates but the algebra has dimension {}",
                    start.len(),
                    a.dim()
                );
            }
            let (rows, footer) = if exact {
                let trajectory = evolve_exact(&a, &start, steps)?;
                let rows: Vec<Vec<String>> = trajectory
                    .points()
                    .iter()
                    .map(|p| p.coords().iter().map(rational::format).collect())
                    .collect();
                let bits = trajectory.states.last().map_or(0, |s| s.denominator_bits());
                (
                    rows,
                    format!("exact=true drift=0 final_denominator_bits={bits}"),
                )
            } else {
                let floats: Vec<f64> = start.coords().iter().map(rational::to_f64).collect();
                let trajectory = evolve(&a.to_skew(), &floats, steps)?;
                let rows = trajectory
                    .points
                    .iter()
                    .map(|p| p.iter().map(|v| format!("{v:.17e}")).collect())
                    .collect();
                (
                    rows,
                    format!("exact=false max_drift={:.3e}", trajectory.max_drift()),
                )
            };
            match output.unwrap_or(Output::Csv) {
                Output::Json => json_out(&json!({ "points": rows, "diagnostics": footer })),
                format => {
                    let mut header = vec!["step".to_string()];
                    header.extend((1..=a.dim()).map(|k| format!("x_{k}")));
                    let numbered: Vec<Vec<String>> = rows
                        .into_iter()
                        .enumerate()
                        .map(|(n, row)| std::iter::once(n.to_string()).chain(row).collect())
                        .collect();
                    let header: Vec<&str> = header.iter().map(String::as_str).collect();
                    let mut out = table(format, &header, &numbered);
                    writeln!(out, "# {footer}")?;
                    Ok(out.into())
                }
            }
        }

        Command::Canonical { dim, form } => {
            let a = canonical_associative(dim);
            let form = match form {
                FormArg::Coeffs => Form::Coeffs,
                FormArg::Skew => Form::Skew,
            };
            match output.unwrap_or(Output::Json) {
                Output::Json => Ok(to_json(&a, form).into()),
                format => {
                    let entries = match form {
                        Form::Coeffs => matrix(a.coeffs()),
                        Form::Skew => matrix(a.to_skew().entries()),
                    };
                    Ok(match format {
                        Output::Csv => entries
                            .iter()
                            .map(|r| r.join(",") + "\n")
                            .collect::<String>(),
                        _ => matrix_text(&entries),
                    }
                    .into())
                }
            }
        }

        Command::Sweep {
            suite,
            mode,
            dim,
            seed,
            count,
            grid,
        } => {
            let descriptor = match mode {
                CorpusMode::Random => {
                    let seed = seed.context("random corpora need --seed")?;
                    CorpusDescriptor::random(dim, seed, count)
                }
                CorpusMode::ExtremalExhaustive => CorpusDescriptor::extremal(dim),
                CorpusMode::Grid3d => {
                    let values = if grid.is_empty() {
                        quarter_grid()
                    } else {
                        parse_rational_list(&grid).context("invalid --grid")?
                    };
                    CorpusDescriptor {
                        dim,
                        ..CorpusDescriptor::grid_3d(values)
                    }
                }
            };
            let corpus = generate_corpus(&descriptor)?;
            let report = run_suite(suite, &corpus)?;
            let rendered = match output.unwrap_or(Output::Json) {
                Output::Json => json_out(&report)?,
                Output::Csv => sweep_csv(&report)?.into(),
                Output::Text => {
                    let mut out = format!(
                        "suite {} on {} corpus, dim {}: {} algebras\n",
                        report.suite, report.corpus.mode, report.corpus.dim, report.algebras
                    );
                    for (key, n) in &report.counts {
                        writeln!(out, "  {key}: {n}")?;
                    }
                    violation_lines(&mut out, Output::Text, &report);
                    out.into()
                }
            };
            Ok(Rendered {
                violations: !report.is_clean(),
                ..rendered
            })
        }
    }
}

fn one_based(indices: &[usize]) -> Vec<usize> {
    indices.iter().map(|i| i + 1).collect()
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn element(x: &AlgebraElement) -> Vec<String> {
    x.coords().iter().map(rational::format).collect()
}

fn matrix(rows: &[Vec<Rational>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(rational::format).collect())
        .collect()
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(0);
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v:>width$}"))
                .collect::<Vec<_>>()
                .join("  ")
                + "\n"
        })
        .collect()
}

fn json_out<T: serde::Serialize + ?Sized>(value: &T) -> Result<Rendered> {
    Ok(serde_json::to_string_pretty(value)?.into())
}

fn no_csv(command: &str) -> Result<Rendered> {
    bail!("csv output is not available for `{command}`; use json or text")
}

/// CSV, or a space-aligned table for text output.
fn table(format: Output, header: &[&str], rows: &[Vec<String>]) -> String {
    if format == Output::Csv {
        let mut out = header.join(",") + "\n";
        for row in rows {
            out += &(row.join(",") + "\n");
        }
        return out;
    }
    let widths: Vec<usize> = (0..header.len())
        .map(|c| {
            rows.iter()
                .map(|r| r[c].len())
                .chain([header[c].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
            + "\n"
    };
    let mut out = line(header.to_vec());
    for row in rows {
        out += &line(row.iter().map(String::as_str).collect());
    }
    out
}

/// Violation summary; comment lines in CSV output.
fn violation_lines(out: &mut String, format: Output, report: &SweepReport) {
    let prefix = if format == Output::Csv { "# " } else { "" };
    if report.is_clean() {
        out.push_str(&format!("{prefix}no violations\n"));
        return;
    }
    for v in &report.violations {
        let at = v
            .index
            .map_or("corpus".to_string(), |i| format!("algebra #{}", i + 1));
        out.push_str(&format!(
            "{prefix}VIOLATION {at} [{}]: {}\n",
            v.check, v.detail
        ));
    }
}

fn sweep_csv(report: &SweepReport) -> Result<String> {
    let mut out = String::new();
    for (n, r) in report.results.iter().enumerate() {
        let (header, cells): (&str, Vec<String>) = match &r.outcome {
            Outcome::Characters {
                subsets_checked,
                characters,
            } => (
                "subsets_checked,characters",
                vec![subsets_checked.to_string(), characters.to_string()],
            ),
            Outcome::Associativity {
                associative,
                extremal,
                cyclic_triple,
            } => (
                "associative,extremal,cyclic_triple",
                vec![
                    associative.to_string(),
                    extremal.to_string(),
                    cyclic_triple.to_string(),
                ],
            ),
            Outcome::Derivations {
                upper,
                dim_space,
                condition,
            } => (
                "upper,dim_space,condition",
                vec![
                    format!("\"{}\"", upper.join(" ")),
                    dim_space.to_string(),
                    condition.map_or(String::new(), |c| c.to_string()),
                ],
            ),
            Outcome::Local {
                candidate_dim,
                derivation_dim,
                equal,
            } => (
                "candidate_dim,derivation_dim,equal",
                vec![
                    candidate_dim.to_string(),
                    derivation_dim.to_string(),
                    equal.to_string(),
                ],
            ),
        };
        if n == 0 {
            writeln!(out, "index,{header}")?;
        }
        writeln!(out, "{},{}", r.index + 1, cells.join(","))?;
    }
    Ok(out)
}
