//! I/O and theorem sweeps for genetic Volterra algebras. The `volterra`
//! binary is a thin front end over this crate.

pub mod corpus;
pub mod format;
pub mod sweep;

pub use corpus::{generate_corpus, Corpus, CorpusDescriptor, CorpusMode};
pub use format::{AlgebraFile, Form, FormatError};
pub use sweep::{run_suite, Suite, SweepReport};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "VOLTERRA_THREADS";

/// Sizes the global rayon pool from `VOLTERRA_THREADS` when it is set.
/// Must run before any parallel work; later calls have no effect.
pub fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got `{value}`")
        })?;
    // a pool that already exists keeps its size
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}
