//! Pairwise distances between feature vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance formula used to rank neighbors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceMetric {
    /// `sqrt(sum (a_l - b_l)^2)`, the l2 norm of the difference.
    Euclidean,
    /// `sum |a_l - b_l|`, the l1 norm of the difference.
    Manhattan,
    /// `(sum |a_l - b_l|^p)^(1/p)` for a finite order `p >= 1`.
    Minkowski { p: f64 },
    /// Tanimoto dissimilarity `1 - a.b / (|a|^2 + |b|^2 - a.b)` for binary
    /// vectors; the all-zeros pair is defined to have distance 0.
    Jaccard,
}

impl DistanceMetric {
    /// Checks metric parameters (Minkowski order).
    pub fn validate(&self) -> Result<()> {
        if let DistanceMetric::Minkowski { p } = self {
            if !p.is_finite() || *p < 1.0 {
                return Err(Error::InvalidOrder(*p));
            }
        }
        Ok(())
    }

    /// Distance between `a` and `b` under this metric.
    pub fn distance(&self, a: &[f64], b: &[f64]) -> Result<f64> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::EmptyInput);
        }
        self.validate()?;
        match self {
            DistanceMetric::Euclidean => Ok(euclidean(a, b)),
            DistanceMetric::Manhattan => Ok(manhattan(a, b)),
            DistanceMetric::Minkowski { p } => Ok(minkowski(a, b, *p)),
            DistanceMetric::Jaccard => jaccard(a, b),
        }
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn manhattan(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

fn minkowski(a: &[f64], b: &[f64], p: f64) -> f64 {
    // |d|^p overflows quickly for large p; factor out the largest
    // coordinate difference so every ratio is <= 1.
    let max = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0_f64, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let sum: f64 = a
        .iter()
        .zip(b)
        .map(|(x, y)| ((x - y).abs() / max).powf(p))
        .sum();
    max * sum.powf(1.0 / p)
}

fn jaccard(a: &[f64], b: &[f64]) -> Result<f64> {
    for (index, &value) in a.iter().chain(b).enumerate() {
        if value != 0.0 && value != 1.0 {
            return Err(Error::NonBinaryInput {
                index: index % a.len(),
                value,
            });
        }
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let norm_a: f64 = a.iter().map(|x| x * x).sum();
    let norm_b: f64 = b.iter().map(|x| x * x).sum();
    let denom = norm_a + norm_b - dot;
    if denom == 0.0 {
        // Both vectors are all zeros.
        return Ok(0.0);
    }
    Ok(1.0 - dot / denom)
}

impl fmt::Display for DistanceMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceMetric::Euclidean => write!(f, "euclidean"),
            DistanceMetric::Manhattan => write!(f, "manhattan"),
            DistanceMetric::Minkowski { p } => write!(f, "minkowski:{p}"),
            DistanceMetric::Jaccard => write!(f, "jaccard"),
        }
    }
}

impl FromStr for DistanceMetric {
    type Err = String;

    /// Parses the CLI form `euclidean|manhattan|minkowski:<p>|jaccard`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "euclidean" => Ok(DistanceMetric::Euclidean),
            "manhattan" => Ok(DistanceMetric::Manhattan),
            "jaccard" => Ok(DistanceMetric::Jaccard),
            other => {
                if let Some(order) = other.strip_prefix("minkowski:") {
                    let p: f64 = order
                        .parse()
                        .map_err(|_| format!("invalid Minkowski order: {order:?}"))?;
                    if !p.is_finite() || p < 1.0 {
                        return Err(format!("Minkowski order must be >= 1, got {p}"));
                    }
                    Ok(DistanceMetric::Minkowski { p })
                } else {
                    Err(format!(
                        "unknown metric {s:?} (expected euclidean, manhattan, minkowski:<p>, or jaccard)"
                    ))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclidean_three_four_five() {
        let d = DistanceMetric::Euclidean
            .distance(&[0.0, 0.0], &[3.0, 4.0])
            .unwrap();
        assert_eq!(d, 5.0);
    }

    #[test]
    fn manhattan_sums_absolute_differences() {
        let d = DistanceMetric::Manhattan
            .distance(&[1.0, 2.0], &[4.0, 6.0])
            .unwrap();
        assert_eq!(d, 7.0);
    }

    #[test]
    fn minkowski_two_reduces_to_euclidean() {
        let d = DistanceMetric::Minkowski { p: 2.0 }
            .distance(&[0.0, 0.0], &[3.0, 4.0])
            .unwrap();
        assert!((d - 5.0).abs() < 1e-12);
    }

    #[test]
    fn minkowski_rejects_order_below_one() {
        let err = DistanceMetric::Minkowski { p: 0.5 }
            .distance(&[0.0], &[1.0])
            .unwrap_err();
        assert!(matches!(err, Error::InvalidOrder(_)));
    }

    #[test]
    fn minkowski_large_order_does_not_overflow() {
        let d = DistanceMetric::Minkowski { p: 400.0 }
            .distance(&[0.0, 0.0], &[1e200, 1e199])
            .unwrap();
        assert!(d.is_finite());
        // As p grows the l_p norm approaches the max coordinate.
        assert!((d - 1e200).abs() / 1e200 < 1e-2);
    }

    #[test]
    fn jaccard_identity_and_disjoint() {
        let m = DistanceMetric::Jaccard;
        assert_eq!(m.distance(&[1.0, 0.0, 1.0], &[1.0, 0.0, 1.0]).unwrap(), 0.0);
        assert_eq!(m.distance(&[1.0, 0.0], &[0.0, 1.0]).unwrap(), 1.0);
        assert_eq!(m.distance(&[0.0, 0.0], &[0.0, 0.0]).unwrap(), 0.0);
    }

    #[test]
    fn jaccard_rejects_non_binary() {
        let err = DistanceMetric::Jaccard
            .distance(&[0.5, 0.0], &[1.0, 0.0])
            .unwrap_err();
        assert!(matches!(err, Error::NonBinaryInput { .. }));
    }

    #[test]
    fn length_mismatch_detected() {
        let err = DistanceMetric::Euclidean
            .distance(&[1.0], &[1.0, 2.0])
            .unwrap_err();
        assert!(matches!(err, Error::LengthMismatch { left: 1, right: 2 }));
    }

    #[test]
    fn metric_flag_round_trip() {
        for text in ["euclidean", "manhattan", "minkowski:2.5", "jaccard"] {
            let metric: DistanceMetric = text.parse().unwrap();
            assert_eq!(metric.to_string(), text);
        }
        assert!("minkowski:0.3".parse::<DistanceMetric>().is_err());
        assert!("cosine".parse::<DistanceMetric>().is_err());
    }
}
