use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-10;

/// Logarithm base for entropies: bits or nats.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LogBase {
    Two,
    E,
}

/// Finite distribution with one label per outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityDistribution {
    probabilities: Vec<f64>,
    labels: Vec<String>,
}

impl ProbabilityDistribution {
    /// Labels default to the outcome index.
    pub fn new(probabilities: Vec<f64>) -> Result<Self> {
        let labels = (0..probabilities.len()).map(|i| i.to_string()).collect();
        Self::with_labels(probabilities, labels)
    }

    pub fn with_labels(probabilities: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if probabilities.len() != labels.len() {
            return Err(Error::validation(format!(
                "{} probabilities but {} labels",
                probabilities.len(),
                labels.len()
            )));
        }
        if probabilities.is_empty() {
            return Err(Error::validation("empty distribution"));
        }
        if let Some(p) = probabilities
            .iter()
            .find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0)
        {
            return Err(Error::validation(format!("probability {p} outside [0, 1]")));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::validation(format!(
                "probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            probabilities,
            labels,
        })
    }

    pub fn uniform(c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::validation("empty distribution"));
        }
        Self::new(vec![1.0 / c as f64; c])
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }
}

/// `−Σ p log p` with `0 log 0 = 0`.
pub fn shannon_entropy(d: &ProbabilityDistribution, base: LogBase) -> f64 {
    let nats: f64 = d
        .probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum();
    let h = match base {
        LogBase::E => nats,
        LogBase::Two => nats / std::f64::consts::LN_2,
    };
    // rounding can leave -0.0 or a tiny negative for point masses
    h.max(0.0)
}
