//! Ordered weighted averaging.
//!
//! Weights come from the regular increasing monotone quantifier
//! `Q(r) = r^beta`: `w_i = Q(i/m) - Q((i-1)/m)`. `beta = 0` yields the
//! maximum operator, `beta = 1` the arithmetic mean and `beta -> inf` the
//! minimum. The orness of `Q_beta` is `1 / (beta + 1)`.

use crate::error::{Error, Result};

/// Tolerance for the sum-to-one check on weight vectors.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

/// Values closer than this are reported as ties when sorting.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Nonnegative OWA weights summing to one. `w[0]` multiplies the largest
/// input value.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::domain("weight vector must have at least one entry"));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::domain(format!("invalid weight {w}")));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::domain(format!("weights sum to {sum}, not 1")));
        }
        Ok(WeightVector(weights))
    }

    /// `[1/m, ..., 1/m]`.
    pub fn uniform(m: usize) -> Result<Self> {
        WeightVector::new(vec![1.0 / m as f64; m])
    }

    /// `[1, 0, ..., 0]`.
    pub fn max_operator(m: usize) -> Result<Self> {
        quantifier_weights(Quantifier::new(0.0)?, m)
    }

    /// `[0, ..., 0, 1]`.
    pub fn min_operator(m: usize) -> Result<Self> {
        let mut w = vec![0.0; m];
        *w.last_mut()
            .ok_or_else(|| Error::domain("weight vector must have at least one entry"))? = 1.0;
        Ok(WeightVector(w))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Discrete orness `sum_j (m - j) / (m - 1) * w_j`, 1-based `j`.
    /// See [`orness_discrete`].
    pub fn orness(&self) -> Result<f64> {
        orness_discrete(self)
    }
}

/// `Q(r) = r^beta` with `beta >= 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantifier {
    beta: f64,
}

impl Quantifier {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || beta < 0.0 {
            return Err(Error::domain(format!("quantifier exponent must be >= 0, got {beta}")));
        }
        Ok(Quantifier { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `Q(r)`, with `Q(0) = 0` for every beta including zero.
    pub fn eval(&self, r: f64) -> f64 {
        if r == 0.0 {
            0.0
        } else {
            r.powf(self.beta)
        }
    }

    pub fn orness(&self) -> f64 {
        1.0 / (self.beta + 1.0)
    }

    pub fn andness(&self) -> f64 {
        1.0 - self.orness()
    }
}

pub fn quantifier_weights(q: Quantifier, m: usize) -> Result<WeightVector> {
    if m == 0 {
        return Err(Error::domain("weight vector length must be >= 1"));
    }
    let mf = m as f64;
    let w: Vec<f64> = (1..=m)
        .map(|i| q.eval(i as f64 / mf) - q.eval((i - 1) as f64 / mf))
        .collect();
    WeightVector::new(w)
}

/// `1 / (beta + 1)`.
pub fn orness_quantifier(q: Quantifier) -> f64 {
    q.orness()
}

/// Discrete orness, evaluated in the centered form
/// `1/2 + sum_j ((m-1)/2 - j) / (m-1) * w_j` with mirrored weights paired,
/// which keeps the uniform, max and min anchors exact.
pub fn orness_discrete(w: &WeightVector) -> Result<f64> {
    let m = w.len();
    if m < 2 {
        return Err(Error::domain("discrete orness needs at least two weights"));
    }
    let w = w.as_slice();
    let half = (m - 1) as f64 / 2.0;
    let skew: f64 = (0..m / 2)
        .map(|j| (half - j as f64) * (w[j] - w[m - 1 - j]))
        .sum();
    Ok(0.5 + skew / (m - 1) as f64)
}

/// Values sorted descending; equal values keep their input order.
pub fn sort_descending(values: &[f64]) -> Vec<f64> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    sorted
}

/// True when two of the values lie within [`TIE_TOLERANCE`] of each other.
pub fn has_near_ties(values: &[f64]) -> bool {
    sort_descending(values)
        .windows(2)
        .any(|p| (p[0] - p[1]).abs() <= TIE_TOLERANCE)
}

/// `sum_j w_j * b_j` where `b_j` is the j-th largest input.
pub fn owa(values: &[f64], w: &WeightVector) -> Result<f64> {
    if values.len() != w.len() {
        return Err(Error::Dimension {
            expected: w.len(),
            actual: values.len(),
        });
    }
    if let Some(v) = values.iter().find(|v| !(0.0..=1.0).contains(*v)) {
        return Err(Error::domain(format!("satisfaction value {v} outside [0, 1]")));
    }
    let sorted = sort_descending(values);
    if log::log_enabled!(log::Level::Debug) && has_near_ties(values) {
        log::debug!("tied satisfaction values {values:?}; ties keep input order");
    }
    Ok(sorted
        .iter()
        .zip(w.as_slice())
        .map(|(b, wj)| wj * b)
        .sum())
}

/// Opsahl's degree/strength blend `deg * (s / deg)^alpha`, computed as
/// `deg^(1 - alpha) * s^alpha` so both endpoints are exact. Zero degree
/// yields zero.
pub fn opsahl_degree(deg: f64, strength: f64, alpha: f64) -> f64 {
    if deg == 0.0 {
        return 0.0;
    }
    deg.powf(1.0 - alpha) * strength.powf(alpha)
}
