//! Separation-constant and stretch-bound arithmetic.
//!
//! The certified route derives every constant from a target slack epsilon:
//! the separation constant `s` is the smallest integer with `s >= 12/eps` and
//! `(1+4/s)^2 <= 1 + eps/36`, and `delta` is the smallest positive integer
//! with `2^delta/(2^delta - 1) <= 1 + eps/36`. The remaining quantities
//! follow:
//!
//! ```text
//! mu     = ceil(log2(sqrt(d) * (1+4/s))) + 1
//! zeta   = 2 * delta * (mu*d + 1)
//! t'     = 4 * sqrt(d) * (mu*d + 1) * (1+4/s)^3
//! t_alg1 = 2*t' + 1 + 4/s
//! ```
//!
//! A caller-supplied separation constant skips the epsilon constraints; the
//! resulting bounds are then flagged as not certified.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Alg1,
    Alg2,
    Alg3,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Alg1 => "alg1",
            Algorithm::Alg2 => "alg2",
            Algorithm::Alg3 => "alg3",
        })
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alg1" => Ok(Algorithm::Alg1),
            "alg2" => Ok(Algorithm::Alg2),
            "alg3" => Ok(Algorithm::Alg3),
            other => Err(Error::InvalidParameter(format!(
                "unknown algorithm `{other}` (expected alg1|alg2|alg3)"
            ))),
        }
    }
}

/// All derived constants for one build. Parameter arithmetic is always `f64`
/// regardless of the coordinate scalar.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpannerParams {
    pub s: f64,
    /// Target slack when the parameters were derived from one; `None` for a
    /// caller-supplied separation constant.
    pub epsilon: Option<f64>,
    pub d: usize,
    pub mu: u32,
    pub delta: u32,
    pub zeta: u32,
    pub t_prime: f64,
    pub t_alg1: f64,
}

fn mu_of(s: f64, d: usize) -> u32 {
    ((d as f64).sqrt() * (1.0 + 4.0 / s)).log2().ceil() as u32 + 1
}

fn t_prime_of(s: f64, d: usize, mu: u32) -> f64 {
    4.0 * (d as f64).sqrt() * (mu as f64 * d as f64 + 1.0) * (1.0 + 4.0 / s).powi(3)
}

impl SpannerParams {
    /// Heuristic mode: take `s` (and `delta`) as given.
    pub fn from_separation(s: f64, delta: u32, d: usize) -> Result<Self> {
        if s <= 0.0 || !s.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "separation constant must be positive and finite, got {s}"
            )));
        }
        if delta == 0 {
            return Err(Error::InvalidParameter("delta must be >= 1".into()));
        }
        if d == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        let mu = mu_of(s, d);
        let t_prime = t_prime_of(s, d, mu);
        Ok(SpannerParams {
            s,
            epsilon: None,
            d,
            mu,
            delta,
            zeta: 2 * delta * (mu * d as u32 + 1),
            t_prime,
            t_alg1: 2.0 * t_prime + 1.0 + 4.0 / s,
        })
    }

    /// Whether the induction's Case-2/Case-4 inequalities hold numerically at
    /// `t = t_alg1`, which is what certifies the constant-stretch bound:
    /// `t' + (1+4/s) + 4t/s <= t` and `(1+4/s) + 8t/s <= t`.
    pub fn alg1_case_inequalities_hold(&self) -> bool {
        let t = self.t_alg1;
        let a = 1.0 + 4.0 / self.s;
        self.t_prime + a + 4.0 * t / self.s <= t && a + 8.0 * t / self.s <= t
    }

    /// The stretch bound this parameter set promises for an algorithm, with a
    /// certification flag. Heuristic alg2/alg3 parameters promise nothing.
    pub fn bound_for(&self, alg: Algorithm) -> (Option<f64>, bool) {
        match alg {
            Algorithm::Alg1 => (Some(self.t_alg1), self.alg1_case_inequalities_hold()),
            Algorithm::Alg2 => match self.epsilon {
                Some(eps) => (Some(5.0 + eps), true),
                None => (None, false),
            },
            Algorithm::Alg3 => match self.epsilon {
                Some(eps) => (Some(3.0 + eps), true),
                None => (None, false),
            },
        }
    }
}

/// Certified mode: compute the smallest admissible `s` and `delta` for a
/// target slack `0 < epsilon < 1`.
pub fn derive_params(epsilon: f64, d: usize) -> Result<SpannerParams> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )));
    }
    if d == 0 {
        return Err(Error::InvalidParameter("dimension must be >= 1".into()));
    }
    let cap = 1.0 + epsilon / 36.0;

    let s_ok = |s: u64| {
        let s = s as f64;
        s >= 12.0 / epsilon && (1.0 + 4.0 / s).powi(2) <= cap
    };
    // Closed-form candidate, then settle the exact smallest integer nearby.
    let mut s = ((4.0 / (cap.sqrt() - 1.0)).max(12.0 / epsilon).ceil() as u64).max(1);
    while s > 1 && s_ok(s - 1) {
        s -= 1;
    }
    while !s_ok(s) {
        s += 1;
    }

    let delta_ok = |delta: u32| {
        let p = 2f64.powi(delta as i32);
        p / (p - 1.0) <= cap
    };
    let mut delta = ((1.0 + 36.0 / epsilon).log2().ceil() as u32).max(1);
    while delta > 1 && delta_ok(delta - 1) {
        delta -= 1;
    }
    while !delta_ok(delta) {
        delta += 1;
    }

    let mut params = SpannerParams::from_separation(s as f64, delta, d)?;
    params.epsilon = Some(epsilon);
    Ok(params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_for_half_epsilon_in_the_plane() {
        let p = derive_params(0.5, 2).unwrap();
        assert_eq!(p.s, 578.0);
        assert_eq!(p.delta, 7);
        assert_eq!(p.mu, 2);
        assert_eq!(p.zeta, 70);
        // The two constraints hold at s and fail at s-1.
        let cap = 1.0 + 0.5 / 36.0;
        assert!((1.0 + 4.0 / 578.0f64).powi(2) <= cap);
        assert!((1.0 + 4.0 / 577.0f64).powi(2) > cap);
        assert!(128.0 / 127.0 <= cap);
        assert!(64.0 / 63.0 > cap);
    }

    #[test]
    fn formulas_at_s8_d2() {
        let p = SpannerParams::from_separation(8.0, 1, 2).unwrap();
        assert_eq!(p.mu, 3);
        let expect_tp = 4.0 * 2f64.sqrt() * 7.0 * 1.5f64.powi(3);
        assert!((p.t_prime - expect_tp).abs() < 1e-9);
        assert!((p.t_prime - 133.643).abs() < 1e-3);
        assert!((p.t_alg1 - (2.0 * expect_tp + 1.5)).abs() < 1e-9);
        assert!((p.t_alg1 - 268.79).abs() < 1e-2);
    }

    #[test]
    fn t_prime_never_increases_with_s() {
        for d in [1usize, 2, 3] {
            let mut last = f64::INFINITY;
            for s in [2.0f64, 4.0, 8.0, 16.0, 64.0, 578.0] {
                let p = SpannerParams::from_separation(s, 1, d).unwrap();
                assert!(p.t_prime <= last, "t' grew at s={s}, d={d}");
                last = p.t_prime;
            }
        }
    }

    #[test]
    fn case_inequalities_certify_moderate_s_but_not_tiny_s() {
        assert!(SpannerParams::from_separation(12.0, 1, 2)
            .unwrap()
            .alg1_case_inequalities_hold());
        assert!(!SpannerParams::from_separation(2.0, 1, 2)
            .unwrap()
            .alg1_case_inequalities_hold());
    }

    #[test]
    fn epsilon_out_of_range_is_rejected() {
        assert!(derive_params(0.0, 2).is_err());
        assert!(derive_params(1.0, 2).is_err());
        assert!(derive_params(-0.5, 2).is_err());
    }

    #[test]
    fn derived_s_is_minimal_for_various_epsilon() {
        for eps in [0.1, 0.25, 0.5, 0.9] {
            let p = derive_params(eps, 2).unwrap();
            let cap = 1.0 + eps / 36.0;
            let ok = |s: f64| s >= 12.0 / eps && (1.0 + 4.0 / s).powi(2) <= cap;
            assert!(ok(p.s));
            assert!(!ok(p.s - 1.0), "s not minimal for eps={eps}");
        }
    }

    #[test]
    fn bounds_and_certification_flags() {
        let certified = derive_params(0.5, 2).unwrap();
        assert_eq!(certified.bound_for(Algorithm::Alg2), (Some(5.5), true));
        assert_eq!(certified.bound_for(Algorithm::Alg3), (Some(3.5), true));
        let heuristic = SpannerParams::from_separation(8.0, 1, 2).unwrap();
        assert_eq!(heuristic.bound_for(Algorithm::Alg2), (None, false));
        let (b, _) = heuristic.bound_for(Algorithm::Alg1);
        assert!(b.is_some());
    }
}
