//! Dense-vector kernel shared by every other module: inner products, unit
//! normalisation, planar Gram-Schmidt, power-iteration PCA, Spearman rank
//! correlation, and a small seeded logistic classifier.
//!
//! Everything here is a pure function of its inputs; all arithmetic is f64.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Norm below which a vector is considered degenerate and cannot be
/// normalised.
pub const DEGENERATE_NORM: f64 = 1e-12;

/// Absolute cosine above which two directions are treated as collinear.
pub const COLLINEAR_COS: f64 = 1.0 - 1e-9;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("degenerate direction: input norm {norm:e} is below {DEGENERATE_NORM:e}")]
    DegenerateDirection { norm: f64 },
    #[error("collinear subspaces: |<v1,v2>| = {cos} leaves no plane to work in")]
    CollinearSubspaces { cos: f64 },
    #[error("degenerate input: all rows are numerically zero")]
    DegenerateRows,
    #[error("power iteration did not converge in {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("need at least {required} values, got {got}")]
    TooFewValues { required: usize, got: usize },
    #[error("undefined correlation: an input has zero rank variance")]
    UndefinedCorrelation,
    #[error("cannot train a classifier with an empty {0} class")]
    EmptyClass(&'static str),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// A unit vector representing a one-dimensional concept subspace.
///
/// Invariant: the L2 norm is 1 within 1e-9. Construct through [`unit`],
/// which normalises and rejects near-zero inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    components: Vec<f64>,
}

impl Direction {
    pub fn as_slice(&self) -> &[f64] {
        &self.components
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    /// Inner product with an arbitrary vector of the same dimension.
    pub fn component_of(&self, x: &[f64]) -> f64 {
        dot(&self.components, x)
    }

    /// Flip the direction in place. The unit-norm invariant is unaffected.
    pub fn negate(&mut self) {
        for c in &mut self.components {
            *c = -*c;
        }
    }
}

impl AsRef<[f64]> for Direction {
    fn as_ref(&self) -> &[f64] {
        &self.components
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Cosine similarity; 0.0 when either vector is numerically zero.
pub fn cosine(a: &[f64], b: &[f64]) -> f64 {
    let na = norm(a);
    let nb = norm(b);
    if na < DEGENERATE_NORM || nb < DEGENERATE_NORM {
        return 0.0;
    }
    dot(a, b) / (na * nb)
}

/// Normalise `v` to unit length.
///
/// Fails with a degenerate-direction error when the norm is at or below
/// [`DEGENERATE_NORM`].
pub fn unit(v: &[f64]) -> Result<Direction, NumericsError> {
    let n = norm(v);
    if !(n > DEGENERATE_NORM) {
        return Err(NumericsError::DegenerateDirection { norm: n });
    }
    Ok(Direction {
        components: v.iter().map(|x| x / n).collect(),
    })
}

/// Planar Gram-Schmidt: the unit residual of `v2` after removing its `v1`
/// component, so that `span(v1, result) == span(v1, v2)` and the result is
/// orthogonal to `v1`.
///
/// (Anti)parallel inputs leave no residual and are rejected.
pub fn orthogonalize_second(v1: &Direction, v2: &Direction) -> Result<Direction, NumericsError> {
    if v1.dim() != v2.dim() {
        return Err(NumericsError::DimensionMismatch {
            expected: v1.dim(),
            got: v2.dim(),
        });
    }
    let c = dot(v1.as_slice(), v2.as_slice());
    if c.abs() >= COLLINEAR_COS {
        return Err(NumericsError::CollinearSubspaces { cos: c });
    }
    let residual: Vec<f64> = v2
        .as_slice()
        .iter()
        .zip(v1.as_slice())
        .map(|(b, a)| b - a * c)
        .collect();
    unit(&residual)
}

const POWER_MAX_ITERATIONS: usize = 1000;
const POWER_TOLERANCE: f64 = 1e-10;

/// Dominant direction of the uncentered second-moment operator of `rows`:
/// the unit `v` maximising the sum of squared projections.
///
/// Power iteration on the Gram operator, applied matrix-free as
/// `X^T (X v)`, so each pass costs O(rows * dim). The sign is fixed so the
/// first row has a non-negative component along the result.
pub fn principal_component(rows: &[&[f64]]) -> Result<Direction, NumericsError> {
    if rows.len() < 2 {
        return Err(NumericsError::TooFewValues {
            required: 2,
            got: rows.len(),
        });
    }
    let dim = rows[0].len();
    for r in rows {
        if r.len() != dim {
            return Err(NumericsError::DimensionMismatch {
                expected: dim,
                got: r.len(),
            });
        }
    }
    if rows.iter().all(|r| norm(r) < DEGENERATE_NORM) {
        return Err(NumericsError::DegenerateRows);
    }

    // Deterministic start; a fixed seed keeps repeated runs identical while
    // avoiding accidental orthogonality to the dominant direction.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_9a1e);
    let start: Vec<f64> = (0..dim).map(|_| rng.random::<f64>() - 0.5).collect();
    let mut v = unit(&start)?;

    let mut residual = f64::INFINITY;
    for _ in 0..POWER_MAX_ITERATIONS {
        let mut next = vec![0.0; dim];
        for row in rows {
            let coeff = dot(row, v.as_slice());
            for (n, x) in next.iter_mut().zip(*row) {
                *n += coeff * x;
            }
        }
        let next = unit(&next)?;
        // The Gram operator is positive semi-definite, so the iterate cannot
        // flip sign between steps.
        residual = v
            .as_slice()
            .iter()
            .zip(next.as_slice())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        v = next;
        if residual < POWER_TOLERANCE {
            let first = dot(rows[0], v.as_slice());
            if first < 0.0 {
                v.negate();
            }
            return Ok(v);
        }
    }
    Err(NumericsError::NoConvergence {
        iterations: POWER_MAX_ITERATIONS,
        residual,
    })
}

/// Average ranks (1-based), ties resolved by the mean of the tied positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));

    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) share the average of ranks i+1..=j+1.
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation with average-rank tie handling: the Pearson
/// correlation of the two rank vectors.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, NumericsError> {
    if xs.len() != ys.len() {
        return Err(NumericsError::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() < 2 {
        return Err(NumericsError::TooFewValues {
            required: 2,
            got: xs.len(),
        });
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    pearson(&rx, &ry)
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, NumericsError> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        let dx = x - mx;
        let dy = y - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx <= 0.0 || syy <= 0.0 {
        return Err(NumericsError::UndefinedCorrelation);
    }
    Ok(sxy / (sxx.sqrt() * syy.sqrt()))
}

/// A trained linear decision rule: `x` is labelled positive when
/// `<weights, x> + bias >= 0`.
#[derive(Debug, Clone)]
pub struct LinearClassifier {
    pub weights: Vec<f64>,
    pub bias: f64,
    /// Fraction of the training data the final rule labels correctly.
    pub train_accuracy: f64,
}

impl LinearClassifier {
    pub fn decision(&self, x: &[f64]) -> f64 {
        dot(&self.weights, x) + self.bias
    }

    pub fn predict(&self, x: &[f64]) -> bool {
        self.decision(x) >= 0.0
    }
}

const LOGISTIC_EPOCHS: usize = 500;
const LOGISTIC_STEP: f64 = 0.1;
const LOGISTIC_L2: f64 = 1e-3;
const LOGISTIC_INIT_SCALE: f64 = 1e-3;

fn sigmoid(z: f64) -> f64 {
    1.0 / (1.0 + (-z).exp())
}

/// Train an L2-regularised logistic regression separating `pos` from `neg`
/// by full-batch gradient descent (fixed 500 epochs, step 0.1,
/// regularisation 1e-3). Weights are initialised with tiny seeded noise, so
/// the outcome is a pure function of (pos, neg, seed).
pub fn train_linear_classifier(
    pos: &[&[f64]],
    neg: &[&[f64]],
    seed: u64,
) -> Result<LinearClassifier, NumericsError> {
    if pos.is_empty() {
        return Err(NumericsError::EmptyClass("positive"));
    }
    if neg.is_empty() {
        return Err(NumericsError::EmptyClass("negative"));
    }
    let dim = pos[0].len();
    for x in pos.iter().chain(neg.iter()) {
        if x.len() != dim {
            return Err(NumericsError::DimensionMismatch {
                expected: dim,
                got: x.len(),
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights: Vec<f64> = (0..dim)
        .map(|_| (rng.random::<f64>() - 0.5) * 2.0 * LOGISTIC_INIT_SCALE)
        .collect();
    let mut bias = 0.0;

    let n = (pos.len() + neg.len()) as f64;
    let mut grad = vec![0.0; dim];
    for _ in 0..LOGISTIC_EPOCHS {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_bias = 0.0;
        for (rows, label) in [(pos, 1.0), (neg, 0.0)] {
            for x in rows {
                let r = sigmoid(dot(&weights, x) + bias) - label;
                for (g, xi) in grad.iter_mut().zip(*x) {
                    *g += r * xi;
                }
                grad_bias += r;
            }
        }
        for (w, g) in weights.iter_mut().zip(&grad) {
            *w -= LOGISTIC_STEP * (g / n + LOGISTIC_L2 * *w);
        }
        bias -= LOGISTIC_STEP * grad_bias / n;
    }

    let clf = LinearClassifier {
        weights,
        bias,
        train_accuracy: 0.0,
    };
    let correct = pos.iter().filter(|x| clf.predict(x)).count()
        + neg.iter().filter(|x| !clf.predict(x)).count();
    Ok(LinearClassifier {
        train_accuracy: correct as f64 / n,
        ..clf
    })
}
