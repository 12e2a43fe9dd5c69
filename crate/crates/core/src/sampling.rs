//! Seeded, splittable random sampling and Monte Carlo bookkeeping.
//!
//! Every estimate in this crate is reproducible: it is produced from an
//! explicit seed via per-worker ChaCha substreams with fixed quotas, so the
//! result is a pure function of `(seed, workers, samples)` regardless of
//! thread scheduling. Estimates always travel with their sample count and
//! a one-sigma width; consumers compare at three sigma.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::numerics::{Int, Rat, RVector};

/// Deterministic substream `stream` of the generator seeded by `seed`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform rational `k / den` with `k` drawn from `0..=den`.
pub fn rat_unit(rng: &mut ChaCha8Rng, den: u64) -> Rat {
    Rat::new(Int::from(rng.gen_range(0..=den)), Int::from(den))
}

/// Uniform rational on `[lo, hi]` over the lattice with denominator `den`.
pub fn rat_in_range(rng: &mut ChaCha8Rng, lo: &Rat, hi: &Rat, den: u64) -> Rat {
    lo + (hi - lo) * rat_unit(rng, den)
}

/// Vector of uniform integers in `lo..=hi` as rationals.
pub fn int_vector(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> RVector {
    RVector::new(
        (0..n)
            .map(|_| Rat::from_integer(Int::from(rng.gen_range(lo..=hi))))
            .collect(),
    )
}

/// `n` pairwise distinct positive lattice rationals with denominator `den`,
/// drawn from `(0, 1]`. Resamples on collision, so the output is generic
/// for order-pattern arguments.
pub fn distinct_positive_rationals(rng: &mut ChaCha8Rng, n: usize, den: u64) -> Vec<Rat> {
    assert!(den as usize >= 4 * n, "lattice too coarse for distinctness");
    let mut out: Vec<Rat> = Vec::with_capacity(n);
    while out.len() < n {
        let cand = Rat::new(Int::from(rng.gen_range(1..=den)), Int::from(den));
        if !out.contains(&cand) {
            out.push(cand);
        }
    }
    out
}

/// A Monte Carlo estimate with full reproducibility metadata.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    /// One standard error; consumers compare at three of these.
    pub sigma: f64,
    pub samples: u64,
    pub seed: u64,
    pub workers: u64,
}

impl McEstimate {
    /// Rescales estimate and sigma by a constant factor (for example a
    /// bounding-box volume around an acceptance fraction).
    pub fn scaled(&self, factor: f64) -> McEstimate {
        McEstimate {
            estimate: self.estimate * factor,
            sigma: self.sigma * factor.abs(),
            ..*self
        }
    }

    /// Whether `value` lies within three sigma of the estimate.
    pub fn covers(&self, value: f64) -> bool {
        (value - self.estimate).abs() <= 3.0 * self.sigma
    }
}

/// Fraction of predicate hits over `samples` draws, split across `workers`
/// deterministic substreams. The binomial standard error is reported.
pub fn mc_fraction<F>(seed: u64, workers: u64, samples: u64, hit: F) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    assert!(workers >= 1);
    let base = samples / workers;
    let extra = samples % workers;
    let hits: u64 = (0..workers)
        .into_par_iter()
        .map(|w| {
            let quota = base + u64::from(w < extra);
            let mut rng = rng_for(seed, w);
            let mut count = 0u64;
            for _ in 0..quota {
                if hit(&mut rng) {
                    count += 1;
                }
            }
            count
        })
        .sum();
    let p = if samples == 0 {
        0.0
    } else {
        hits as f64 / samples as f64
    };
    let sigma = if samples == 0 {
        0.0
    } else {
        (p * (1.0 - p) / samples as f64).sqrt()
    };
    McEstimate {
        estimate: p,
        sigma,
        samples,
        seed,
        workers,
    }
}

/// Conditional fraction: among draws landing in the base set, the fraction
/// also in the subset. `in_base` returns a payload for accepted draws, which
/// `in_subset` then classifies. The returned sigma is the binomial standard
/// error with respect to the (random) base-set hit count.
pub fn mc_conditional<P, F, G>(
    seed: u64,
    workers: u64,
    samples: u64,
    in_base: F,
    in_subset: G,
) -> McEstimate
where
    F: Fn(&mut ChaCha8Rng) -> Option<P> + Sync,
    G: Fn(&P) -> bool + Sync,
{
    assert!(workers >= 1);
    let base = samples / workers;
    let extra = samples % workers;
    let (hits, sub_hits): (u64, u64) = (0..workers)
        .into_par_iter()
        .map(|w| {
            let quota = base + u64::from(w < extra);
            let mut rng = rng_for(seed, w);
            let mut h = 0u64;
            let mut s = 0u64;
            for _ in 0..quota {
                if let Some(point) = in_base(&mut rng) {
                    h += 1;
                    if in_subset(&point) {
                        s += 1;
                    }
                }
            }
            (h, s)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let p = if hits == 0 {
        0.0
    } else {
        sub_hits as f64 / hits as f64
    };
    let sigma = if hits == 0 {
        0.0
    } else {
        (p * (1.0 - p) / hits as f64).sqrt()
    };
    McEstimate {
        estimate: p,
        sigma,
        samples: hits,
        seed,
        workers,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substreams_are_deterministic_and_distinct() {
        let a: Vec<u64> = {
            let mut r = rng_for(7, 0);
            (0..4).map(|_| r.gen()).collect()
        };
        let b: Vec<u64> = {
            let mut r = rng_for(7, 0);
            (0..4).map(|_| r.gen()).collect()
        };
        let c: Vec<u64> = {
            let mut r = rng_for(7, 1);
            (0..4).map(|_| r.gen()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn mc_fraction_is_schedule_independent() {
        let est1 = mc_fraction(42, 8, 10_000, |rng| rng.gen::<f64>() < 0.5);
        let est2 = mc_fraction(42, 8, 10_000, |rng| rng.gen::<f64>() < 0.5);
        assert_eq!(est1.estimate, est2.estimate);
        assert!(est1.covers(0.5), "estimate {} +- 3*{}", est1.estimate, est1.sigma);
    }

    #[test]
    fn worker_count_changes_the_stream_but_not_the_contract() {
        let one = mc_fraction(9, 1, 20_000, |rng| rng.gen::<f64>() < 0.25);
        let many = mc_fraction(9, 8, 20_000, |rng| rng.gen::<f64>() < 0.25);
        assert!(one.covers(0.25));
        assert!(many.covers(0.25));
    }

    #[test]
    fn distinct_rationals_are_distinct_and_positive() {
        let mut rng = rng_for(3, 0);
        let vals = distinct_positive_rationals(&mut rng, 6, 1 << 16);
        assert_eq!(vals.len(), 6);
        for (i, v) in vals.iter().enumerate() {
            assert!(v > &Rat::new(Int::from(0), Int::from(1)));
            for w in &vals[..i] {
                assert_ne!(v, w);
            }
        }
    }

    #[test]
    fn scaled_estimates_keep_relative_width() {
        let est = McEstimate {
            estimate: 0.5,
            sigma: 0.01,
            samples: 100,
            seed: 0,
            workers: 1,
        };
        let s = est.scaled(4.0);
        assert_eq!(s.estimate, 2.0);
        assert_eq!(s.sigma, 0.04);
    }
}
