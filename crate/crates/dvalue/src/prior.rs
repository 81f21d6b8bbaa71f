//! Equal-opportunity priors over the unknown true model.
//!
//! A prior here is a distribution over subsets of the `n` candidates whose
//! subset probability depends only on subset size, so it is fully described
//! by the size distribution `delta[0..=n]`. Three parametric families are
//! provided (the ones that recover the Shapley value, the Banzhaf value and
//! the binomial model-size prior), plus the Beta-compounded binomial and
//! fully custom size distributions.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::game::MAX_PLAYERS;

/// Parametric family of a prior.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum PriorKind {
    /// Uniform-over-sizes family tilted by an alternating perturbation;
    /// every member reproduces the Shapley value.
    Shapley { tilt: f64 },
    /// Uniform-over-subsets family tilted by an alternating perturbation;
    /// every member reproduces the Banzhaf value.
    Banzhaf { tilt: f64 },
    /// Each candidate independently relevant with probability `p`;
    /// model size is Binomial(n, p).
    Binomial { p: f64 },
    /// Binomial inclusion probability drawn from Beta(a, b).
    BetaBinomial { a: f64, b: f64 },
    /// Arbitrary size distribution supplied by the caller.
    Custom,
}

/// A size-based prior over subsets of `n` players.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prior {
    n: usize,
    kind: PriorKind,
    delta: Vec<f64>,
}

/// Binomial coefficient as f64. Exact for n <= 30 (well below 2^53).
pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut c = 1.0;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.round()
}

/// ln of the two-parameter Beta function.
pub(crate) fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::Prior(format!(
            "player count must be between 1 and {MAX_PLAYERS}, got {n}"
        )));
    }
    Ok(())
}

impl Prior {
    /// Shapley-family prior. `tilt = 0` gives the uniform model-size prior;
    /// any valid tilt yields the same values (see [`Prior::shapley_tilt_bound`]).
    pub fn shapley(n: usize, tilt: f64) -> Result<Self> {
        check_n(n)?;
        let bound = Self::shapley_tilt_bound(n);
        if tilt.abs() > bound * (1.0 + 1e-9) {
            return Err(Error::Prior(format!(
                "tilt {tilt} outside [-{bound}, {bound}] for the Shapley family with n={n}"
            )));
        }
        let delta = (0..=n)
            .map(|t| {
                let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                clamp_probability(1.0 / (n as f64 + 1.0) + sign * tilt * binomial(n, t))
            })
            .collect();
        Ok(Prior {
            n,
            kind: PriorKind::Shapley { tilt },
            delta,
        })
    }

    /// Banzhaf-family prior. `tilt = 0` gives the uniform-over-subsets prior.
    pub fn banzhaf(n: usize, tilt: f64) -> Result<Self> {
        check_n(n)?;
        let bound = Self::banzhaf_tilt_bound(n);
        if tilt.abs() > bound * (1.0 + 1e-9) {
            return Err(Error::Prior(format!(
                "tilt {tilt} outside [-{bound}, {bound}] for the Banzhaf family with n={n}"
            )));
        }
        let half = 0.5f64.powi(n as i32);
        let delta = (0..=n)
            .map(|t| {
                let sign = if t % 2 == 0 { 1.0 } else { -1.0 };
                clamp_probability((half + sign * tilt) * binomial(n, t))
            })
            .collect();
        Ok(Prior {
            n,
            kind: PriorKind::Banzhaf { tilt },
            delta,
        })
    }

    /// Binomial prior: each candidate is relevant independently with
    /// probability `p` in (0, 1).
    pub fn binomial(n: usize, p: f64) -> Result<Self> {
        check_n(n)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Prior(format!(
                "inclusion probability must lie in (0,1), got {p}"
            )));
        }
        let delta = (0..=n)
            .map(|t| binomial(n, t) * p.powi(t as i32) * (1.0 - p).powi((n - t) as i32))
            .collect();
        Ok(Prior {
            n,
            kind: PriorKind::Binomial { p },
            delta,
        })
    }

    /// Beta-Binomial prior: binomial inclusion probability integrated
    /// against Beta(a, b). `a = b = 1` gives the uniform model-size prior.
    pub fn beta_binomial(n: usize, a: f64, b: f64) -> Result<Self> {
        check_n(n)?;
        if !(a > 0.0) || !(b > 0.0) {
            return Err(Error::Prior(format!(
                "Beta shape parameters must be positive, got ({a}, {b})"
            )));
        }
        let log_norm = ln_beta(a, b);
        let delta = (0..=n)
            .map(|t| {
                let tf = t as f64;
                let nf = n as f64;
                binomial(n, t) * (ln_beta(a + tf, b + nf - tf) - log_norm).exp()
            })
            .collect();
        Ok(Prior {
            n,
            kind: PriorKind::BetaBinomial { a, b },
            delta,
        })
    }

    /// Prior from an explicit size distribution `delta[0..=n]`.
    pub fn custom(delta: Vec<f64>) -> Result<Self> {
        if delta.is_empty() {
            return Err(Error::Prior("empty size distribution".into()));
        }
        let n = delta.len() - 1;
        check_n(n)?;
        for (t, &d) in delta.iter().enumerate() {
            if d < 0.0 || !d.is_finite() {
                return Err(Error::Prior(format!(
                    "size probability for t={t} is {d}; must be nonnegative"
                )));
            }
        }
        let total: f64 = delta.iter().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::Prior(format!(
                "size probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Prior {
            n,
            kind: PriorKind::Custom,
            delta,
        })
    }

    /// Half-width of the valid tilt interval for the Shapley family.
    pub fn shapley_tilt_bound(n: usize) -> f64 {
        let half = (n + 1) / 2;
        // half! * (n - half)! / (n+1)!  ==  1 / ((n+1) * C(n, half))
        1.0 / ((n as f64 + 1.0) * binomial(n, half))
    }

    /// Half-width of the valid tilt interval for the Banzhaf family.
    pub fn banzhaf_tilt_bound(n: usize) -> f64 {
        0.5f64.powi(n as i32)
    }

    /// Valid closed tilt interval for the Shapley or Banzhaf family.
    /// The binomial and Beta-Binomial families are parameterized on open
    /// ranges by construction and are rejected here.
    pub fn tilt_bounds(kind: PriorKind, n: usize) -> Result<(f64, f64)> {
        check_n(n)?;
        let bound = match kind {
            PriorKind::Shapley { .. } => Self::shapley_tilt_bound(n),
            PriorKind::Banzhaf { .. } => Self::banzhaf_tilt_bound(n),
            _ => {
                return Err(Error::Prior(
                    "tilt bounds are defined only for the Shapley and Banzhaf families".into(),
                ))
            }
        };
        Ok((-bound, bound))
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> PriorKind {
        self.kind
    }

    /// Probability that the true model has exactly `t` members.
    pub fn size_probability(&self, t: usize) -> f64 {
        self.delta[t]
    }

    /// Full size distribution `delta[0..=n]`.
    pub fn size_distribution(&self) -> &[f64] {
        &self.delta
    }

    /// Probability of any one specific subset of the given size.
    pub fn subset_probability(&self, size: usize) -> f64 {
        assert!(size <= self.n, "size exceeds player count");
        self.delta[size] / binomial(self.n, size)
    }

    /// Expected model size, sum of t * delta[t].
    pub fn expected_model_size(&self) -> f64 {
        self.delta
            .iter()
            .enumerate()
            .map(|(t, d)| t as f64 * d)
            .sum()
    }

    /// Parse the CLI prior syntax: `sv:<tilt>`, `bv:<tilt>`, `bn:<p>`,
    /// `betabn:<a>,<b>`, or `custom:<file.csv>` with one delta per line.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let (family, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Prior(format!("malformed prior {spec:?}; expected family:params")))?;
        let num = |s: &str| -> Result<f64> {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::Prior(format!("invalid number {s:?} in prior {spec:?}")))
        };
        match family {
            "sv" => Prior::shapley(n, num(rest)?),
            "bv" => Prior::banzhaf(n, num(rest)?),
            "bn" => Prior::binomial(n, num(rest)?),
            "betabn" => {
                let (a, b) = rest.split_once(',').ok_or_else(|| {
                    Error::Prior(format!("betabn takes two parameters, got {rest:?}"))
                })?;
                Prior::beta_binomial(n, num(a)?, num(b)?)
            }
            "custom" => {
                let content = std::fs::read_to_string(rest).map_err(|e| {
                    Error::Prior(format!("cannot read size distribution {rest:?}: {e}"))
                })?;
                let delta: Vec<f64> = content
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(num)
                    .collect::<Result<_>>()?;
                if delta.len() != n + 1 {
                    return Err(Error::Prior(format!(
                        "size distribution has {} entries, expected {} for n={n}",
                        delta.len(),
                        n + 1
                    )));
                }
                Prior::custom(delta)
            }
            other => Err(Error::Prior(format!("unknown prior family {other:?}"))),
        }
    }

    /// Short human tag for reports, mirroring the CLI syntax.
    pub fn describe(&self) -> String {
        match self.kind {
            PriorKind::Shapley { tilt } => format!("sv:{tilt}"),
            PriorKind::Banzhaf { tilt } => format!("bv:{tilt}"),
            PriorKind::Binomial { p } => format!("bn:{p}"),
            PriorKind::BetaBinomial { a, b } => format!("betabn:{a},{b}"),
            PriorKind::Custom => "custom".into(),
        }
    }
}

fn clamp_probability(x: f64) -> f64 {
    // At the exact tilt bound one delta is analytically zero; floating
    // round-off may land a hair below it.
    if x < 0.0 {
        debug_assert!(x > -1e-12, "probability {x} below tolerance");
        0.0
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn binomial_coefficients_exact() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(30, 15), 155_117_520.0);
        assert_eq!(binomial(4, 0), 1.0);
        assert_eq!(binomial(3, 5), 0.0);
    }

    #[test]
    fn subset_probability_examples() {
        let sv = Prior::shapley(3, 0.0).unwrap();
        assert_relative_eq!(sv.subset_probability(1), 1.0 / 12.0, epsilon = 1e-14);

        let bv = Prior::banzhaf(3, 0.0).unwrap();
        for size in 0..=3 {
            assert_relative_eq!(bv.subset_probability(size), 0.125, epsilon = 1e-14);
        }

        let bn = Prior::binomial(3, 0.3).unwrap();
        assert_relative_eq!(bn.subset_probability(1), 0.3 * 0.7 * 0.7, epsilon = 1e-12);
    }

    #[test]
    fn subset_probabilities_sum_to_one() {
        for n in [1, 3, 7, 12, 24, 30] {
            let priors = vec![
                Prior::shapley(n, 0.0).unwrap(),
                Prior::shapley(n, Prior::shapley_tilt_bound(n)).unwrap(),
                Prior::shapley(n, -Prior::shapley_tilt_bound(n)).unwrap(),
                Prior::banzhaf(n, 0.0).unwrap(),
                Prior::banzhaf(n, Prior::banzhaf_tilt_bound(n)).unwrap(),
                Prior::binomial(n, 0.37).unwrap(),
                Prior::beta_binomial(n, 2.5, 0.7).unwrap(),
            ];
            for prior in priors {
                let total: f64 = (0..=n)
                    .map(|t| binomial(n, t) * prior.subset_probability(t))
                    .sum();
                assert!(
                    (total - 1.0).abs() < 1e-10,
                    "prior {} over n={n} sums to {total}",
                    prior.describe()
                );
            }
        }
    }

    #[test]
    fn tilt_bound_examples() {
        assert_relative_eq!(Prior::banzhaf_tilt_bound(3), 0.125, epsilon = 1e-15);
        assert_relative_eq!(Prior::shapley_tilt_bound(3), 1.0 / 12.0, epsilon = 1e-15);
        assert_relative_eq!(Prior::shapley_tilt_bound(1), 0.5, epsilon = 1e-15);
        let (lo, hi) = Prior::tilt_bounds(PriorKind::Banzhaf { tilt: 0.0 }, 3).unwrap();
        assert_eq!((lo, hi), (-0.125, 0.125));
        assert!(Prior::tilt_bounds(PriorKind::Binomial { p: 0.5 }, 3).is_err());
        assert!(Prior::tilt_bounds(PriorKind::BetaBinomial { a: 1.0, b: 1.0 }, 3).is_err());
    }

    #[test]
    fn out_of_band_tilts_rejected() {
        assert!(Prior::shapley(3, 0.09).is_err());
        assert!(Prior::banzhaf(3, 0.13).is_err());
        assert!(Prior::binomial(3, 0.0).is_err());
        assert!(Prior::binomial(3, 1.0).is_err());
        assert!(Prior::beta_binomial(3, 0.0, 1.0).is_err());
        assert!(Prior::beta_binomial(3, 1.0, -2.0).is_err());
    }

    #[test]
    fn expected_model_sizes() {
        assert_relative_eq!(
            Prior::shapley(4, 0.01).unwrap().expected_model_size(),
            2.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            Prior::binomial(20, 0.25).unwrap().expected_model_size(),
            5.0,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            Prior::beta_binomial(6, 1.0, 1.0).unwrap().expected_model_size(),
            3.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn custom_validation() {
        assert!(Prior::custom(vec![0.5, 0.6]).is_err());
        assert!(Prior::custom(vec![1.1, -0.1]).is_err());
        assert!(Prior::custom(vec![]).is_err());
        let p = Prior::custom(vec![0.25, 0.5, 0.25]).unwrap();
        assert_eq!(p.player_count(), 2);
        assert_relative_eq!(p.expected_model_size(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn shapley_tilt_at_bound_zeroes_exactly_one_size() {
        // The symmetric bound is tight for the sign whose parity matches the
        // minimizing size. For odd n that is both signs; for even n the
        // other sign stays strictly positive.
        for n in 2..=10usize {
            let mid = (n + 1) / 2;
            for sign in [1.0f64, -1.0] {
                let prior = Prior::shapley(n, sign * Prior::shapley_tilt_bound(n)).unwrap();
                let zeros = prior
                    .size_distribution()
                    .iter()
                    .filter(|&&d| d.abs() < 1e-12)
                    .count();
                let tight = n % 2 == 1 || (mid % 2 == 1) == (sign > 0.0);
                assert_eq!(zeros, usize::from(tight), "n={n}, sign={sign}");
                assert!(prior.size_distribution().iter().all(|&d| d >= 0.0));
            }
        }
    }

    #[test]
    fn uniform_beta_binomial_matches_uniform_sizes() {
        let bb = Prior::beta_binomial(6, 1.0, 1.0).unwrap();
        let sv = Prior::shapley(6, 0.0).unwrap();
        for t in 0..=6 {
            assert_relative_eq!(
                bb.size_probability(t),
                sv.size_probability(t),
                epsilon = 1e-12
            );
            assert_relative_eq!(bb.size_probability(t), 1.0 / 7.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn parse_cli_syntax() {
        assert_eq!(
            Prior::parse("sv:0", 4).unwrap().kind(),
            PriorKind::Shapley { tilt: 0.0 }
        );
        assert_eq!(
            Prior::parse("bn:0.3", 4).unwrap().kind(),
            PriorKind::Binomial { p: 0.3 }
        );
        assert_eq!(
            Prior::parse("betabn:1,1", 4).unwrap().kind(),
            PriorKind::BetaBinomial { a: 1.0, b: 1.0 }
        );
        assert!(Prior::parse("sv", 4).is_err());
        assert!(Prior::parse("zzz:1", 4).is_err());
        assert!(Prior::parse("betabn:1", 4).is_err());
    }
}
