//! Vector configurations over exact scalars: determinant brackets,
//! genericity, projection from a vector, and cross-ratios.
//!
//! The volume form is always the standard determinant. Indices are 1-based
//! throughout, matching the labels used by the symbolic layer.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{contract, Error, Result};
use crate::exact::{determinant, rank, ExactScalar};

/// Number of rejection-sampling attempts in [`random_generic`].
pub const GENERIC_RETRY_BUDGET: usize = 1000;

/// Sorted list of distinct 1-based indices into a configuration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSubset(Vec<usize>);

impl IndexSubset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(contract(format!("repeated index in subset {indices:?}")));
        }
        if indices.first() == Some(&0) {
            return Err(contract("indices are 1-based"));
        }
        Ok(IndexSubset(indices))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    dim: usize,
    vectors: Vec<Vec<ExactScalar>>,
}

/// Outcome of [`is_generic`]; `failing` names a smallest dependent subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub generic: bool,
    pub failing: Option<IndexSubset>,
}

impl Configuration {
    pub fn new(dim: usize, vectors: Vec<Vec<ExactScalar>>) -> Result<Self> {
        if dim == 0 {
            return Err(contract("dimension must be positive"));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::SizeMismatch { expected: dim, got: v.len() });
            }
            if v.iter().all(Zero::is_zero) {
                return Err(Error::ZeroVector(i + 1));
            }
        }
        Ok(Configuration { dim, vectors })
    }

    pub fn from_integers(dim: usize, rows: &[&[i64]]) -> Result<Self> {
        let vectors = rows
            .iter()
            .map(|r| r.iter().map(|&x| ExactScalar::from_integer(x)).collect())
            .collect();
        Configuration::new(dim, vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<ExactScalar>] {
        &self.vectors
    }

    pub fn vector(&self, index: usize) -> Result<&[ExactScalar]> {
        index
            .checked_sub(1)
            .and_then(|i| self.vectors.get(i))
            .map(Vec::as_slice)
            .ok_or(Error::IndexOutOfRange { index, count: self.len() })
    }

    /// Apply a linear map `g` (given by rows) to every vector: `v ↦ g·v`.
    pub fn transform(&self, g: &[Vec<ExactScalar>]) -> Result<Configuration> {
        if g.len() != self.dim || g.iter().any(|r| r.len() != self.dim) {
            return Err(contract("transformation must be dim × dim"));
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                g.iter()
                    .map(|row| row.iter().zip(v).fold(ExactScalar::zero(), |acc, (a, b)| acc + a * b))
                    .collect()
            })
            .collect();
        Configuration::new(self.dim, vectors)
    }

    /// Multiply vector `index` by `factor`.
    pub fn scale(&self, index: usize, factor: &ExactScalar) -> Result<Configuration> {
        self.vector(index)?;
        let mut vectors = self.vectors.clone();
        for x in &mut vectors[index - 1] {
            *x = &*x * factor;
        }
        Configuration::new(self.dim, vectors)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Configuration = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Configuration::new(raw.dim, raw.vectors)
    }
}

fn rows_for(config: &Configuration, indices: &[usize]) -> Result<Vec<Vec<ExactScalar>>> {
    indices.iter().map(|&i| config.vector(i).map(<[_]>::to_vec)).collect()
}

/// Determinant of the selected vectors, in subset order, optionally
/// permuted first. `permutation[k]` is the position in `subset` of row `k`.
pub fn bracket(config: &Configuration, subset: &IndexSubset, permutation: Option<&[usize]>) -> Result<ExactScalar> {
    if subset.len() != config.dim {
        return Err(Error::SizeMismatch { expected: config.dim, got: subset.len() });
    }
    let order: Vec<usize> = match permutation {
        None => subset.as_slice().to_vec(),
        Some(p) => {
            let mut seen = vec![false; p.len()];
            if p.len() != subset.len() || p.iter().any(|&k| k >= p.len() || std::mem::replace(&mut seen[k], true)) {
                return Err(contract("permutation does not match subset size"));
            }
            p.iter().map(|&k| subset.as_slice()[k]).collect()
        }
    };
    bracket_of(config, &order)
}

/// Determinant of the vectors at `indices`, taken in the given order.
/// Repeated indices give zero.
pub fn bracket_of(config: &Configuration, indices: &[usize]) -> Result<ExactScalar> {
    if indices.len() != config.dim {
        return Err(Error::SizeMismatch { expected: config.dim, got: indices.len() });
    }
    Ok(determinant(&rows_for(config, indices)?))
}

fn subsets(m: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Vec<usize> = (1..=k).collect();
    let mut done = k > m;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur.clone();
        // advance to the next k-subset of 1..=m in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if cur[i] < m - (k - 1 - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        if k == 0 {
            done = true;
        }
        Some(out)
    })
}

/// Every subset of at most `dim` vectors is linearly independent.
pub fn is_generic(config: &Configuration) -> GenericityCertificate {
    let m = config.len();
    for k in 1..=config.dim.min(m) {
        for s in subsets(m, k) {
            let rows = rows_for(config, &s).expect("indices in range");
            let independent = if k == config.dim {
                !determinant(&rows).is_zero()
            } else {
                rank(&rows) == k
            };
            if !independent {
                return GenericityCertificate { generic: false, failing: Some(IndexSubset(s)) };
            }
        }
    }
    GenericityCertificate { generic: true, failing: None }
}

/// Project along vector `center` into explicit coordinates of dimension
/// `dim − 1`, normalized so that the projected bracket of any subset equals
/// the bracket of the center followed by that subset.
pub fn project(config: &Configuration, center: usize) -> Result<Configuration> {
    if config.dim < 2 {
        return Err(contract("projection needs dim >= 2"));
    }
    let c = config.vector(center)?;
    let pivot = c.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector(center))?;
    // completing c by the unit vectors e_i (i ≠ pivot) gives det = (-1)^pivot · c_pivot
    let sign = if pivot % 2 == 0 { ExactScalar::one() } else { -ExactScalar::one() };
    let normalizer = &sign * &c[pivot];
    let mut vectors = Vec::with_capacity(config.len() - 1);
    for (i, v) in config.vectors.iter().enumerate() {
        if i + 1 == center {
            continue;
        }
        let alpha = &v[pivot] / &c[pivot];
        let mut coords: Vec<ExactScalar> = (0..config.dim)
            .filter(|&j| j != pivot)
            .map(|j| &v[j] - &(&alpha * &c[j]))
            .collect();
        coords[0] = &coords[0] * &normalizer;
        if coords.iter().all(Zero::is_zero) {
            // proportional to the center: the projected vector vanishes
            return Err(Error::ZeroVector(i + 1));
        }
        vectors.push(coords);
    }
    Configuration::new(config.dim - 1, vectors)
}

/// Cross-ratio `(x3−x1)(x4−x2) / ((x3−x2)(x4−x1))` of four points given either
/// as affine scalars (length 1) or as vectors in dimension 2, where
/// differences become brackets.
pub fn cross_ratio(points: [&[ExactScalar]; 4]) -> Result<ExactScalar> {
    let len = points[0].len();
    if points.iter().any(|p| p.len() != len) || !(1..=2).contains(&len) {
        return Err(contract("cross-ratio takes four points of dimension 1 or 2"));
    }
    let diff = |a: usize, b: usize| -> ExactScalar {
        let (x, y) = (points[a], points[b]);
        if len == 1 {
            &y[0] - &x[0]
        } else {
            &(&x[0] * &y[1]) - &(&x[1] * &y[0])
        }
    };
    let num = diff(0, 2) * diff(1, 3);
    let den = diff(1, 2) * diff(0, 3);
    if den.is_zero() {
        return Err(Error::DegenerateCrossRatio);
    }
    Ok(num / den)
}

/// Seeded generic configuration with integer entries in `[-bound, bound]`.
pub fn random_generic(dim: usize, count: usize, seed: u64, bound: i64) -> Result<Configuration> {
    if count < dim {
        return Err(contract(format!("count {count} < dim {dim}")));
    }
    if dim == 0 || bound < 1 {
        return Err(contract("dim and bound must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERIC_RETRY_BUDGET {
        let rows: Vec<Vec<ExactScalar>> = (0..count)
            .map(|_| (0..dim).map(|_| ExactScalar::from_integer(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if rows.iter().any(|r| r.iter().all(Zero::is_zero)) {
            continue;
        }
        let config = Configuration { dim, vectors: rows };
        if is_generic(&config).generic {
            return Ok(config);
        }
    }
    Err(Error::RetryBudget { attempts: GENERIC_RETRY_BUDGET })
}
