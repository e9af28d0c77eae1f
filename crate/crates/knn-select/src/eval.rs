//! Loss functions, seeded train/test splitting, and replication statistics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Fraction of positions where `predicted` equals `actual`.
pub fn accuracy<T: PartialEq>(predicted: &[T], actual: &[T]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput);
    }
    let hits = predicted
        .iter()
        .zip(actual)
        .filter(|(p, a)| p == a)
        .count();
    Ok(hits as f64 / predicted.len() as f64)
}

/// Mean squared error `(1/n) sum (pred_i - actual_i)^2`.
pub fn mse(predicted: &[f64], actual: &[f64]) -> Result<f64> {
    if predicted.len() != actual.len() {
        return Err(Error::LengthMismatch {
            left: predicted.len(),
            right: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(Error::EmptyInput);
    }
    let sum: f64 = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (p - a) * (p - a))
        .sum();
    Ok(sum / predicted.len() as f64)
}

/// A reproducible partition of `0..n` into train and test indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub train_indices: Vec<usize>,
    pub test_indices: Vec<usize>,
    pub seed: u64,
    pub train_fraction: f64,
}

/// Splits `0..n` by a seeded Fisher-Yates shuffle; the first
/// `round(train_fraction * n)` shuffled indices (round half up) become the
/// training set.
pub fn split(n: usize, train_fraction: f64, seed: u64) -> Result<SplitPlan> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) || n < 2 {
        return Err(Error::DegenerateSplit { n, train_fraction });
    }
    let train_len = (train_fraction * n as f64 + 0.5).floor() as usize;
    if train_len == 0 || train_len >= n {
        return Err(Error::DegenerateSplit { n, train_fraction });
    }
    let mut order: Vec<usize> = (0..n).collect();
    SplitMix64::new(seed).shuffle(&mut order);
    let test_indices = order.split_off(train_len);
    Ok(SplitPlan {
        train_indices: order,
        test_indices,
        seed,
        train_fraction,
    })
}

/// Sample statistics over replication losses.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateStats {
    pub mean: f64,
    pub median: f64,
    pub sd: f64,
    pub min: f64,
    pub max: f64,
    pub q1: f64,
    pub q3: f64,
}

/// Mean, median, sample standard deviation, extremes, and quartiles.
/// Quantiles interpolate linearly between order statistics
/// (`q(h) = x_(f) + (h - f) * (x_(f+1) - x_(f))` with `h = (n-1)q`).
pub fn replicate_stats(losses: &[f64]) -> Result<ReplicateStats> {
    if losses.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = losses.len();
    let mean = losses.iter().sum::<f64>() / n as f64;
    let sd = if n > 1 {
        let ss: f64 = losses.iter().map(|x| (x - mean) * (x - mean)).sum();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let mut sorted = losses.to_vec();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite losses"));
    Ok(ReplicateStats {
        mean,
        median: quantile(&sorted, 0.5),
        sd,
        min: sorted[0],
        max: sorted[n - 1],
        q1: quantile(&sorted, 0.25),
        q3: quantile(&sorted, 0.75),
    })
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accuracy_counts_exact_matches() {
        let pred = ["a", "b", "a"];
        let actual = ["a", "b", "b"];
        assert!((accuracy(&pred, &actual).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(accuracy(&pred, &pred).unwrap(), 1.0);
        let flipped = ["b", "a", "b"];
        assert_eq!(accuracy(&pred, &flipped).unwrap(), 0.0);
    }

    #[test]
    fn accuracy_rejects_bad_shapes() {
        assert!(matches!(
            accuracy(&["a"], &["a", "b"]),
            Err(Error::LengthMismatch { .. })
        ));
        let empty: [&str; 0] = [];
        assert!(matches!(accuracy(&empty, &empty), Err(Error::EmptyInput)));
    }

    #[test]
    fn mse_examples() {
        assert_eq!(mse(&[1.0, 2.0], &[1.0, 2.0]).unwrap(), 0.0);
        assert_eq!(mse(&[0.0, 0.0], &[3.0, 4.0]).unwrap(), 12.5);
    }

    #[test]
    fn mse_matches_two_pass_oracle() {
        // Independent oracle: accumulate squared differences one at a time
        // in a second pass over an index loop.
        let mut rng = SplitMix64::new(17);
        let pred: Vec<f64> = (0..100).map(|_| rng.next_f64() * 10.0).collect();
        let actual: Vec<f64> = (0..100).map(|_| rng.next_f64() * 10.0).collect();
        let mut oracle = 0.0;
        for i in 0..pred.len() {
            let d = pred[i] - actual[i];
            oracle += d * d;
        }
        oracle /= pred.len() as f64;
        let got = mse(&pred, &actual).unwrap();
        assert!((got - oracle).abs() <= 1e-12 * oracle.abs());
    }

    #[test]
    fn split_sizes_and_cover() {
        let plan = split(10, 0.7, 99).unwrap();
        assert_eq!(plan.train_indices.len(), 7);
        assert_eq!(plan.test_indices.len(), 3);
        let mut all: Vec<usize> = plan
            .train_indices
            .iter()
            .chain(&plan.test_indices)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn split_is_deterministic_and_seed_sensitive() {
        assert_eq!(split(50, 0.7, 3).unwrap(), split(50, 0.7, 3).unwrap());
        let base = split(50, 0.7, 0).unwrap();
        let mut distinct = 0;
        for seed in 1..=10 {
            if split(50, 0.7, seed).unwrap() != base {
                distinct += 1;
            }
        }
        assert_eq!(distinct, 10);
    }

    #[test]
    fn split_rejects_degenerate_requests() {
        assert!(matches!(split(1, 0.7, 0), Err(Error::DegenerateSplit { .. })));
        assert!(matches!(split(10, 0.0, 0), Err(Error::DegenerateSplit { .. })));
        assert!(matches!(split(10, 1.0, 0), Err(Error::DegenerateSplit { .. })));
        // round(0.98 * 10) = 10 leaves no test rows.
        assert!(matches!(split(10, 0.98, 0), Err(Error::DegenerateSplit { .. })));
    }

    #[test]
    fn split_test_membership_is_uniform_over_seeds() {
        // Each of the 10 indices should land in the 3-element test side
        // about 300 times over 1000 seeds; binomial sd is sqrt(1000*0.3*0.7).
        let mut counts = [0u32; 10];
        for seed in 0..1000 {
            for &idx in &split(10, 0.7, seed).unwrap().test_indices {
                counts[idx] += 1;
            }
        }
        let sd = (1000.0_f64 * 0.3 * 0.7).sqrt();
        for (idx, &count) in counts.iter().enumerate() {
            assert!(
                (count as f64 - 300.0).abs() <= 4.0 * sd,
                "index {idx} landed in test {count} times"
            );
        }
    }

    #[test]
    fn stats_on_small_list() {
        let s = replicate_stats(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.median, 2.0);
        assert_eq!(s.min, 1.0);
        assert_eq!(s.max, 3.0);
        assert_eq!(s.q1, 1.5);
        assert_eq!(s.q3, 2.5);
        assert!((s.sd - 1.0).abs() < 1e-15);
    }

    #[test]
    fn stats_on_constant_list() {
        let s = replicate_stats(&[4.2; 8]).unwrap();
        assert_eq!(s.sd, 0.0);
        assert_eq!(s.median, 4.2);
    }

    #[test]
    fn quartiles_match_sort_oracle() {
        // Oracle: same interpolation rule written against explicit order
        // statistics of an independently sorted copy.
        let mut rng = SplitMix64::new(8);
        let draws: Vec<f64> = (0..50).map(|_| rng.next_f64()).collect();
        let mut sorted = draws.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let oracle = |q: f64| {
            let h = (sorted.len() - 1) as f64 * q;
            let lo = sorted[h.floor() as usize];
            let hi = sorted[h.ceil() as usize];
            lo + (h - h.floor()) * (hi - lo)
        };
        let s = replicate_stats(&draws).unwrap();
        assert!((s.q1 - oracle(0.25)).abs() <= 1e-12);
        assert!((s.median - oracle(0.5)).abs() <= 1e-12);
        assert!((s.q3 - oracle(0.75)).abs() <= 1e-12);
    }

    #[test]
    fn stats_reject_empty() {
        assert!(matches!(replicate_stats(&[]), Err(Error::EmptyInput)));
    }
}
