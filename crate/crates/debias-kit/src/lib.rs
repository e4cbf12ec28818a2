//! Post-processing toolkit for word embeddings that disentangles a pair of
//! concept directions (for example a gender direction and an occupation
//! direction) by a graded in-plane rotation, alongside three projection-based
//! baselines, intrinsic association metrics, and generators/scorers for NLI
//! probe datasets.
//!
//! The crate is organised around a small set of modules:
//!
//! - [`embedding`]: GloVe-format text parsing, a binary cache format, and the
//!   immutable [`embedding::EmbeddingTable`].
//! - [`numerics`]: the dense-vector kernel (normalisation, Gram-Schmidt
//!   residual, power-iteration PCA, Spearman correlation, a seeded logistic
//!   classifier).
//! - [`subspace`]: concept directions from word pairs and word lists.
//! - [`oscar`]: the graded rectification operator that makes two concept
//!   directions orthogonal while fixing their orthogonal complement.
//! - [`debias`]: linear projection, hard debiasing with equalize, and
//!   iterative nullspace projection.
//! - [`metrics`]: association effect sizes, the embedding coherence test,
//!   random-set calibration, and word-similarity evaluation.
//! - [`templates`]: NLI premise/hypothesis dataset generation and prediction
//!   scoring.
//! - [`synthetic`]: seeded corpora with a documented planted association,
//!   used by the test suite and handy for demos.
//!
//! All operations are deterministic given their seeds, and tables are
//! immutable after construction: transforms return new tables.

pub mod debias;
pub mod embedding;
pub mod metrics;
pub mod numerics;
pub mod oscar;
pub mod subspace;
pub mod synthetic;
pub mod templates;
