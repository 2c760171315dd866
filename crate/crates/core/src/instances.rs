//! Deterministic instance generators.
//!
//! Random colored point sets for testing and benchmarking, plus the
//! three-disk construction that forces stretch close to 3 on any subgraph
//! missing a red-blue edge: red points in a disk at the origin, blue points
//! in a disk one-plus-slack away, and the remaining colors as singletons in a
//! third disk twice as far. All disks have radius `epsilon/12`, so every
//! red-blue distance lies in `[1, 1 + epsilon/3]`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as RandDistribution, Normal};

use crate::error::{Error, Result};
use crate::geometry::{Color, ColoredPointSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distribution {
    /// Uniform in the unit cube `[0,1]^d`.
    UniformCube,
    /// One Gaussian blob per color class.
    Clustered,
    /// The three-disk lower-bound family (seedless, `d >= 2`, `k >= 2`).
    LowerBound { epsilon: f64 },
}

#[derive(Clone, Copy, Debug)]
pub struct GeneratorSpec {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub seed: u64,
    pub distribution: Distribution,
}

impl GeneratorSpec {
    fn validate(&self) -> Result<()> {
        if self.k < 1 || self.k > self.n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= k <= n, got k={}, n={}",
                self.k, self.n
            )));
        }
        if self.d < 1 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        if let Distribution::LowerBound { epsilon } = self.distribution {
            if self.k < 2 {
                return Err(Error::InvalidParameter(
                    "lower-bound instances need k >= 2".into(),
                ));
            }
            if self.d < 2 {
                return Err(Error::InvalidParameter(
                    "lower-bound instances need d >= 2".into(),
                ));
            }
            if !(epsilon > 0.0 && epsilon < 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "lower-bound epsilon must lie in (0, 1), got {epsilon}"
                )));
            }
        }
        Ok(())
    }
}

/// Seeded-deterministic random instance. Colors are assigned round-robin and
/// then shuffled, so class sizes differ by at most one and no class is empty.
pub fn gen_random<F: Scalar>(spec: &GeneratorSpec) -> Result<ColoredPointSet<F>> {
    spec.validate()?;
    if let Distribution::LowerBound { epsilon } = spec.distribution {
        return gen_lower_bound(spec.n, spec.k, spec.d, epsilon);
    }
    let mut colors: Vec<Color> = (0..spec.n).map(|i| (i % spec.k) as Color + 1).collect();

    // Coordinate collisions are vanishingly rare but would poison the split
    // tree; redraw deterministically until the set validates.
    for attempt in 0u64..64 {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed.wrapping_add(attempt.wrapping_mul(0x9e37)));
        colors.shuffle(&mut rng);
        let points = match spec.distribution {
            Distribution::UniformCube => (0..spec.n)
                .map(|i| {
                    let coords = (0..spec.d)
                        .map(|_| F::from_f64_lossy(rng.gen::<f64>()))
                        .collect();
                    (colors[i], coords)
                })
                .collect(),
            Distribution::Clustered => {
                let centers: Vec<Vec<f64>> = (0..spec.k)
                    .map(|_| (0..spec.d).map(|_| rng.gen::<f64>()).collect())
                    .collect();
                let blob = Normal::new(0.0, 0.05).expect("valid std");
                (0..spec.n)
                    .map(|i| {
                        let center = &centers[(colors[i] - 1) as usize];
                        let coords = center
                            .iter()
                            .map(|&c| F::from_f64_lossy(c + blob.sample(&mut rng)))
                            .collect();
                        (colors[i], coords)
                    })
                    .collect()
            }
            Distribution::LowerBound { .. } => unreachable!(),
        };
        match ColoredPointSet::new(spec.d, points) {
            Ok(set) => return Ok(set),
            Err(Error::DuplicatePoint { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidParameter(
        "could not draw distinct coordinates".into(),
    ))
}

/// Golden-angle spiral: `count` distinct points strictly inside a disk.
fn sunflower(center_x: f64, radius: f64, count: usize) -> Vec<(f64, f64)> {
    const GOLDEN_ANGLE: f64 = 2.399_963_229_728_653;
    (0..count)
        .map(|i| {
            let r = radius * 0.95 * ((i as f64 + 0.5) / count as f64).sqrt();
            let theta = i as f64 * GOLDEN_ANGLE;
            (center_x + r * theta.cos(), r * theta.sin())
        })
        .collect()
}

/// The lower-bound instance: disks of radius `epsilon/12` centered at
/// `(0,0)`, `(1 + epsilon/6, 0)` and `(2 + epsilon/3, 0)`, holding
/// `ceil((n-k+2)/2)` red points, `floor((n-k+2)/2)` blue points, and `k-2`
/// singleton-colored points respectively. Placement is a fixed sunflower
/// layout, so instances are reproducible byte for byte.
pub fn gen_lower_bound<F: Scalar>(
    n: usize,
    k: usize,
    d: usize,
    epsilon: f64,
) -> Result<ColoredPointSet<F>> {
    let spec = GeneratorSpec {
        n,
        k,
        d,
        seed: 0,
        distribution: Distribution::LowerBound { epsilon },
    };
    spec.validate()?;
    let m = n - k + 2;
    let reds = m.div_ceil(2);
    let blues = m / 2;
    let radius = epsilon / 12.0;

    let embed = |(x, y): (f64, f64)| -> Vec<F> {
        let mut coords = vec![F::zero(); d];
        coords[0] = F::from_f64_lossy(x);
        coords[1] = F::from_f64_lossy(y);
        coords
    };

    let mut points: Vec<(Color, Vec<F>)> = Vec::with_capacity(n);
    for p in sunflower(0.0, radius, reds) {
        points.push((1, embed(p)));
    }
    for p in sunflower(1.0 + epsilon / 6.0, radius, blues) {
        points.push((2, embed(p)));
    }
    for (i, p) in sunflower(2.0 + epsilon / 3.0, radius, k - 2).into_iter().enumerate() {
        points.push((3 + i as Color, embed(p)));
    }
    ColoredPointSet::new(d, points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_distinct_colors_when_k_equals_n() {
        let spec = GeneratorSpec {
            n: 4,
            k: 4,
            d: 2,
            seed: 1,
            distribution: Distribution::UniformCube,
        };
        let s: ColoredPointSet<f64> = gen_random(&spec).unwrap();
        let mut colors: Vec<Color> = (0..4).map(|i| s.color(i)).collect();
        colors.sort();
        assert_eq!(colors, vec![1, 2, 3, 4]);
    }

    #[test]
    fn same_seed_reproduces_the_same_set() {
        let spec = GeneratorSpec {
            n: 64,
            k: 3,
            d: 2,
            seed: 7,
            distribution: Distribution::UniformCube,
        };
        let a: ColoredPointSet<f64> = gen_random(&spec).unwrap();
        let b: ColoredPointSet<f64> = gen_random(&spec).unwrap();
        for i in 0..64 {
            assert_eq!(a.color(i), b.color(i));
            assert_eq!(a.coords(i), b.coords(i));
        }
    }

    #[test]
    fn class_sizes_are_balanced() {
        let spec = GeneratorSpec {
            n: 1000,
            k: 3,
            d: 2,
            seed: 11,
            distribution: Distribution::UniformCube,
        };
        let s: ColoredPointSet<f64> = gen_random(&spec).unwrap();
        for size in s.class_sizes() {
            assert!(size == 333 || size == 334);
        }
    }

    #[test]
    fn clustered_instances_validate_too() {
        let spec = GeneratorSpec {
            n: 200,
            k: 4,
            d: 3,
            seed: 3,
            distribution: Distribution::Clustered,
        };
        let s: ColoredPointSet<f64> = gen_random(&spec).unwrap();
        assert_eq!(s.n(), 200);
        assert_eq!(s.k(), 4);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let bad = GeneratorSpec {
            n: 2,
            k: 3,
            d: 2,
            seed: 0,
            distribution: Distribution::UniformCube,
        };
        assert!(gen_random::<f64>(&bad).is_err());
        assert!(gen_lower_bound::<f64>(10, 2, 1, 0.5).is_err());
        assert!(gen_lower_bound::<f64>(10, 1, 2, 0.5).is_err());
        assert!(gen_lower_bound::<f64>(10, 2, 2, 1.5).is_err());
    }

    #[test]
    fn lower_bound_counts_split_evenly() {
        // n=6, k=2: three red near the origin, three blue near (1.1, 0).
        let s: ColoredPointSet<f64> = gen_lower_bound(6, 2, 2, 0.6).unwrap();
        assert_eq!(s.class_sizes(), vec![3, 3]);
        for i in 0..s.n() {
            for j in 0..s.n() {
                if s.color(i) == 1 && s.color(j) == 2 {
                    let dist = s.distance(i, j);
                    assert!(dist <= 1.0 + 0.6 / 3.0, "red-blue distance {dist}");
                    assert!(dist >= 1.0);
                }
            }
        }
    }

    #[test]
    fn lower_bound_third_disk_gets_singleton_colors() {
        let s: ColoredPointSet<f64> = gen_lower_bound(10, 4, 2, 0.5).unwrap();
        assert_eq!(s.class_sizes(), vec![4, 4, 1, 1]);
        assert_eq!(s.k(), 4);
    }

    #[test]
    fn lower_bound_red_blue_band_and_min_cross_distance() {
        for (n, k, eps) in [(100, 2, 0.6), (21, 3, 0.3), (12, 2, 0.9)] {
            let s: ColoredPointSet<f64> = gen_lower_bound(n, k, 2, eps).unwrap();
            assert_eq!(s.n(), n);
            let mut min_cross = f64::INFINITY;
            for i in 0..n {
                for j in (i + 1)..n {
                    if s.color(i) != s.color(j) {
                        min_cross = min_cross.min(s.distance(i, j));
                    }
                    if (s.color(i) == 1 && s.color(j) == 2)
                        || (s.color(i) == 2 && s.color(j) == 1)
                    {
                        let dist = s.distance(i, j);
                        assert!((1.0..=1.0 + eps / 3.0).contains(&dist));
                    }
                }
            }
            // With at most one point in the third disk every cross-color
            // distance is at least 1 (two third-disk points sit closer).
            if k <= 3 {
                assert!(min_cross >= 1.0);
            }
        }
    }

    #[test]
    fn lower_bound_is_byte_deterministic() {
        let a: ColoredPointSet<f64> = gen_lower_bound(50, 4, 3, 0.4).unwrap();
        let b: ColoredPointSet<f64> = gen_lower_bound(50, 4, 3, 0.4).unwrap();
        for i in 0..50 {
            assert_eq!(a.coords(i), b.coords(i));
            assert_eq!(a.coords(i)[2], 0.0, "extra dimensions are zero");
        }
    }
}
