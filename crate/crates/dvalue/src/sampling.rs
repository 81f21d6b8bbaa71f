//! Monte Carlo estimation of the valuations via random player orderings.
//!
//! Each ordering walks one permutation of the players left to right,
//! evaluating prefix payoffs so that an ordering costs exactly n+1 oracle
//! calls (consecutive prefixes share everything through the game cache).
//! Each player receives exactly one increment per ordering; the increment
//! weight depends only on the prefix length and the prior's size
//! distribution.
//!
//! Determinism contract: orderings are generated from per-(seed, index,
//! player-key) hash substreams and reduced in fixed-size batches, so results
//! are bit-identical for any worker count, including the sequential
//! fallback build.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, mix3, with_workers, ORDERING_BATCH};
use crate::game::{Coalition, Game};
use crate::prior::Prior;

/// Orderings processed before the optional stopping rule may fire.
const ADAPTIVE_MIN_ORDERINGS: u64 = 1024;

/// Relative tolerance for the per-ordering telescoping audit.
const TELESCOPE_TOL: f64 = 1e-9;

/// Sampler configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    /// Number of random orderings to draw.
    pub orderings: u64,
    /// Master seed; all substreams derive from it.
    pub seed: u64,
    /// Reuse each fresh ordering's reversal as the next ordering
    /// (antithetic pairing).
    pub use_reversals: bool,
    /// Thread count; `None` uses the ambient pool.
    pub workers: Option<usize>,
    /// Optional stopping rule: stop once every player's standard error is
    /// at or below this value. Checked every 256 orderings after the first
    /// 1024. `None` always draws exactly `orderings`.
    pub stderr_target: Option<f64>,
}

impl SamplerConfig {
    pub fn new(orderings: u64, seed: u64) -> Self {
        SamplerConfig {
            orderings,
            seed,
            use_reversals: false,
            workers: None,
            stderr_target: None,
        }
    }
}

/// A per-player Monte Carlo estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledEstimate {
    pub mean: f64,
    /// Sample standard deviation of the per-ordering increments over sqrt(s).
    pub stderr: f64,
    /// Orderings contributing (one increment each).
    pub count: u64,
}

/// Run diagnostics common to all sampled estimates.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SampleDiagnostics {
    /// Orderings actually drawn (less than requested only under the
    /// stopping rule).
    pub orderings: u64,
    /// Prefix evaluations that failed and were scored as zero increments.
    pub failed_steps: u64,
    /// Orderings whose raw increments failed to telescope to
    /// v(grand) - v(empty) within tolerance. Always zero for a healthy
    /// payoff function.
    pub telescope_failures: u64,
}

/// Joint estimates of gain, loss, their sum and the bias-adjusted value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledValues {
    pub gamma: Vec<SampledEstimate>,
    pub lambda: Vec<SampledEstimate>,
    pub psi: Vec<SampledEstimate>,
    /// Bias-adjusted estimates; `None` when the aggregate value is ~0.
    pub psi_unbiased: Option<Vec<SampledEstimate>>,
    /// Sample bias ratio (aggregate kappa over aggregate psi).
    pub alpha: Option<f64>,
    pub diagnostics: SampleDiagnostics,
}

/// Estimates for a single valuation (Shapley or bias-adjusted Shapley).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampledSet {
    pub estimates: Vec<SampledEstimate>,
    pub diagnostics: SampleDiagnostics,
}

/// Position weights for the gain and loss channels under a prior:
/// a player entering after k predecessors scores `(k+1) delta[k+1]` toward
/// the gain and `(n-k) delta[k]` toward the loss.
pub(crate) fn position_weights(prior: &Prior) -> (Vec<f64>, Vec<f64>) {
    let n = prior.player_count();
    let delta = prior.size_distribution();
    let gain = (0..n)
        .map(|k| (k as f64 + 1.0) * delta[k + 1])
        .collect();
    let loss = (0..n)
        .map(|k| (n - k) as f64 * delta[k])
        .collect();
    (gain, loss)
}

/// Deterministic random ordering for (seed, index): players sorted by a
/// per-player hash substream. With reversals enabled, odd indices replay
/// the preceding ordering backwards.
fn make_ordering(seed: u64, index: u64, keys: &[u64], use_reversals: bool) -> Vec<usize> {
    let (base, reverse) = if use_reversals {
        (index & !1, index & 1 == 1)
    } else {
        (index, false)
    };
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by_key(|&i| (mix3(seed, base, keys[i]), keys[i], i));
    if reverse {
        order.reverse();
    }
    order
}

/// Raw increments of one ordering: position-k increment for the player at
/// position k, plus failure accounting.
struct OrderingResult {
    /// order[k] received raw increment raw[k].
    order: Vec<usize>,
    raw: Vec<f64>,
    failed_steps: u64,
    telescope_failure: bool,
}

fn walk_ordering(game: &Game, order: Vec<usize>) -> OrderingResult {
    let n = order.len();
    let mut raw = vec![0.0; n];
    let mut failed_steps = 0u64;
    let mut prefix = Coalition::EMPTY;
    let mut prev = match game.evaluate(prefix) {
        Ok(v) => Some(v),
        Err(_) => {
            failed_steps += 1;
            None
        }
    };
    let empty_value = prev;
    let mut raw_sum = 0.0;
    for (k, &player) in order.iter().enumerate() {
        prefix = prefix.with(player);
        match (game.evaluate(prefix), prev) {
            (Ok(cur), Some(p)) => {
                raw[k] = cur - p;
                raw_sum += raw[k];
                prev = Some(cur);
            }
            (Ok(cur), None) => {
                // No usable base payoff; score zero and resume from here.
                failed_steps += 1;
                prev = Some(cur);
            }
            (Err(_), _) => {
                failed_steps += 1;
            }
        }
    }
    let telescope_failure = if failed_steps == 0 {
        let grand = prev.expect("walk ended with a value");
        let v0 = empty_value.expect("no failures");
        let scale = 1.0f64.max(grand.abs()).max(v0.abs());
        (raw_sum - (grand - v0)).abs() > TELESCOPE_TOL * scale
    } else {
        false
    };
    OrderingResult {
        order,
        raw,
        failed_steps,
        telescope_failure,
    }
}

/// Streaming accumulator over ordering results.
trait Accumulator: Sized {
    fn absorb(&mut self, result: &OrderingResult);
    /// Largest per-player standard error of the headline estimate.
    fn max_stderr(&self, count: u64) -> f64;
}

/// Drive the batched, deterministic ordering loop.
fn run<A: Accumulator>(
    game: &Game,
    cfg: &SamplerConfig,
    keys: &[u64],
    acc: &mut A,
) -> Result<SampleDiagnostics> {
    if cfg.orderings == 0 {
        return Err(Error::Config("orderings must be at least 1".into()));
    }
    if keys.len() != game.player_count() {
        return Err(Error::Config(format!(
            "{} player keys supplied for a {}-player game",
            keys.len(),
            game.player_count()
        )));
    }
    let mut diag = SampleDiagnostics::default();
    let mut drawn = 0u64;
    while drawn < cfg.orderings {
        let batch = ORDERING_BATCH.min(cfg.orderings - drawn);
        let results: Vec<OrderingResult> = map_indexed(batch as usize, |offset| {
            let index = drawn + offset as u64;
            walk_ordering(
                game,
                make_ordering(cfg.seed, index, keys, cfg.use_reversals),
            )
        });
        for result in &results {
            acc.absorb(result);
            diag.failed_steps += result.failed_steps;
            diag.telescope_failures += u64::from(result.telescope_failure);
        }
        drawn += batch;
        if let Some(target) = cfg.stderr_target {
            if drawn >= ADAPTIVE_MIN_ORDERINGS && acc.max_stderr(drawn) <= target {
                break;
            }
        }
    }
    diag.orderings = drawn;
    Ok(diag)
}

fn estimate(sum: f64, sumsq: f64, count: u64) -> SampledEstimate {
    let s = count as f64;
    let mean = sum / s;
    let stderr = if count > 1 {
        (((sumsq - s * mean * mean) / (s - 1.0)).max(0.0) / s).sqrt()
    } else {
        0.0
    };
    SampledEstimate {
        mean,
        stderr,
        count,
    }
}

/// Two-channel accumulator for the gain/loss decomposition, with the cross
/// moment needed for the adjusted value's standard error.
struct GainLossAccum {
    gain_w: Vec<f64>,
    loss_w: Vec<f64>,
    sum_g: Vec<f64>,
    ss_g: Vec<f64>,
    sum_l: Vec<f64>,
    ss_l: Vec<f64>,
    cross: Vec<f64>,
}

impl GainLossAccum {
    fn new(prior: &Prior) -> Self {
        let n = prior.player_count();
        let (gain_w, loss_w) = position_weights(prior);
        GainLossAccum {
            gain_w,
            loss_w,
            sum_g: vec![0.0; n],
            ss_g: vec![0.0; n],
            sum_l: vec![0.0; n],
            ss_l: vec![0.0; n],
            cross: vec![0.0; n],
        }
    }
}

impl Accumulator for GainLossAccum {
    fn absorb(&mut self, result: &OrderingResult) {
        for (k, &player) in result.order.iter().enumerate() {
            let g = self.gain_w[k] * result.raw[k];
            let l = self.loss_w[k] * result.raw[k];
            self.sum_g[player] += g;
            self.ss_g[player] += g * g;
            self.sum_l[player] += l;
            self.ss_l[player] += l * l;
            self.cross[player] += g * l;
        }
    }

    fn max_stderr(&self, count: u64) -> f64 {
        let n = self.sum_g.len();
        (0..n)
            .map(|i| {
                let psi_sum = self.sum_g[i] + self.sum_l[i];
                let psi_sq = self.ss_g[i] + 2.0 * self.cross[i] + self.ss_l[i];
                estimate(psi_sum, psi_sq, count).stderr
            })
            .fold(0.0, f64::max)
    }
}

/// Estimate gain, loss, overall and bias-adjusted values under a prior.
pub fn sample_values(game: &Game, prior: &Prior, cfg: &SamplerConfig) -> Result<SampledValues> {
    let keys: Vec<u64> = (0..game.player_count()).map(|i| i as u64).collect();
    sample_values_keyed(game, prior, cfg, &keys)
}

/// As [`sample_values`], with caller-supplied player stream keys. Selection
/// keys streams by variable name so column order cannot affect estimates.
pub fn sample_values_keyed(
    game: &Game,
    prior: &Prior,
    cfg: &SamplerConfig,
    keys: &[u64],
) -> Result<SampledValues> {
    if prior.player_count() != game.player_count() {
        return Err(Error::Config(format!(
            "prior is over {} players but the game has {}",
            prior.player_count(),
            game.player_count()
        )));
    }
    with_workers(cfg.workers, || {
        let n = game.player_count();
        let mut acc = GainLossAccum::new(prior);
        let diag = run(game, cfg, keys, &mut acc)?;
        let s = diag.orderings;
        let gamma: Vec<SampledEstimate> = (0..n)
            .map(|i| estimate(acc.sum_g[i], acc.ss_g[i], s))
            .collect();
        let lambda: Vec<SampledEstimate> = (0..n)
            .map(|i| estimate(acc.sum_l[i], acc.ss_l[i], s))
            .collect();
        let psi: Vec<SampledEstimate> = (0..n)
            .map(|i| {
                estimate(
                    acc.sum_g[i] + acc.sum_l[i],
                    acc.ss_g[i] + 2.0 * acc.cross[i] + acc.ss_l[i],
                    s,
                )
            })
            .collect();

        let psi_total: f64 = psi.iter().map(|e| e.mean).sum();
        let kappa_total: f64 = gamma.iter().map(|e| e.mean).sum::<f64>()
            - lambda.iter().map(|e| e.mean).sum::<f64>();
        let (alpha, psi_unbiased) = if psi_total.abs() < 1e-12 {
            (None, None)
        } else {
            let alpha = kappa_total / psi_total;
            let (wg, wl) = (1.0 - alpha, 1.0 + alpha);
            let adjusted = (0..n)
                .map(|i| {
                    // Mean and variance of the fixed-alpha mixture of the two
                    // channels.
                    let sum = wg * acc.sum_g[i] + wl * acc.sum_l[i];
                    let sumsq = wg * wg * acc.ss_g[i]
                        + 2.0 * wg * wl * acc.cross[i]
                        + wl * wl * acc.ss_l[i];
                    estimate(sum, sumsq, s)
                })
                .collect();
            (Some(alpha), Some(adjusted))
        };
        Ok(SampledValues {
            gamma,
            lambda,
            psi,
            psi_unbiased,
            alpha,
            diagnostics: diag,
        })
    })
}

/// Single-channel accumulator: one position-weight vector shared by all
/// players.
struct SingleAccum {
    weights: Vec<f64>,
    sum: Vec<f64>,
    ss: Vec<f64>,
}

impl SingleAccum {
    fn new(weights: Vec<f64>) -> Self {
        let n = weights.len();
        SingleAccum {
            weights,
            sum: vec![0.0; n],
            ss: vec![0.0; n],
        }
    }
}

impl Accumulator for SingleAccum {
    fn absorb(&mut self, result: &OrderingResult) {
        for (k, &player) in result.order.iter().enumerate() {
            let inc = self.weights[k] * result.raw[k];
            self.sum[player] += inc;
            self.ss[player] += inc * inc;
        }
    }

    fn max_stderr(&self, count: u64) -> f64 {
        (0..self.sum.len())
            .map(|i| estimate(self.sum[i], self.ss[i], count).stderr)
            .fold(0.0, f64::max)
    }
}

fn sample_single(game: &Game, cfg: &SamplerConfig, keys: &[u64], weights: Vec<f64>) -> Result<SampledSet> {
    with_workers(cfg.workers, || {
        let mut acc = SingleAccum::new(weights);
        let diag = run(game, cfg, keys, &mut acc)?;
        let estimates = (0..game.player_count())
            .map(|i| estimate(acc.sum[i], acc.ss[i], diag.orderings))
            .collect();
        Ok(SampledSet {
            estimates,
            diagnostics: diag,
        })
    })
}

fn index_keys(game: &Game) -> Vec<u64> {
    (0..game.player_count()).map(|i| i as u64).collect()
}

/// Estimate the Shapley value: the raw prefix increment is already an
/// unbiased draw of it.
pub fn sample_shapley(game: &Game, cfg: &SamplerConfig) -> Result<SampledSet> {
    sample_shapley_keyed(game, cfg, &index_keys(game))
}

pub fn sample_shapley_keyed(game: &Game, cfg: &SamplerConfig, keys: &[u64]) -> Result<SampledSet> {
    let n = game.player_count();
    sample_single(game, cfg, keys, vec![1.0; n])
}

/// Estimate the bias-adjusted Shapley value: increments weighted by
/// `4 (k+1)(n-k) / ((n+1)(n+2))` for prefix length k.
pub fn sample_unbiased_shapley(game: &Game, cfg: &SamplerConfig) -> Result<SampledSet> {
    sample_unbiased_shapley_keyed(game, cfg, &index_keys(game))
}

pub fn sample_unbiased_shapley_keyed(
    game: &Game,
    cfg: &SamplerConfig,
    keys: &[u64],
) -> Result<SampledSet> {
    let n = game.player_count();
    let denom = (n as f64 + 1.0) * (n as f64 + 2.0);
    let weights = (0..n)
        .map(|k| 4.0 * (k as f64 + 1.0) * (n - k) as f64 / denom)
        .collect();
    sample_single(game, cfg, keys, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{additive_game, unanimity_game};
    use crate::values::{dvalue_exact, shapley_exact, unbiased_shapley_exact};
    use approx::assert_relative_eq;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn random_game(n: usize, seed: u64) -> Game {
        let mut rng = StdRng::seed_from_u64(seed);
        let table: Vec<f64> = (0..(1u64 << n)).map(|_| rng.random_range(-1.0..1.0)).collect();
        Game::from_table(n, table).unwrap()
    }

    #[test]
    fn uniform_size_prior_position_weights() {
        let prior = Prior::shapley(4, 0.0).unwrap();
        let (gain, loss) = position_weights(&prior);
        for k in 0..4 {
            assert_relative_eq!(gain[k], (k as f64 + 1.0) / 5.0, epsilon = 1e-14);
            assert_relative_eq!(loss[k], (4.0 - k as f64) / 5.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn orderings_are_permutations() {
        let keys: Vec<u64> = (0..7).map(|i| i as u64 * 31 + 5).collect();
        for j in 0..50 {
            let mut order = make_ordering(42, j, &keys, false);
            order.sort_unstable();
            assert_eq!(order, (0..7).collect::<Vec<_>>());
        }
        // Reversal pairing replays index 2k backwards at 2k+1.
        let fwd = make_ordering(42, 6, &keys, true);
        let mut rev = make_ordering(42, 7, &keys, true);
        rev.reverse();
        assert_eq!(fwd, rev);
    }

    #[test]
    fn sampled_values_match_exact_within_stderr() {
        let g = random_game(3, 11);
        let prior = Prior::shapley(3, 0.0).unwrap();
        let exact = dvalue_exact(&g, &prior).unwrap();
        let cfg = SamplerConfig::new(5000, 7);
        let sampled = sample_values(&g, &prior, &cfg).unwrap();
        for i in 0..3 {
            let e = sampled.psi[i];
            assert!(
                (e.mean - exact[i]).abs() <= 4.0 * e.stderr.max(1e-12),
                "player {i}: {} vs {} (stderr {})",
                e.mean,
                exact[i],
                e.stderr
            );
            assert_eq!(e.count, 5000);
        }
        assert_eq!(sampled.diagnostics.telescope_failures, 0);
        assert_eq!(sampled.diagnostics.failed_steps, 0);
    }

    #[test]
    fn constant_game_estimates_are_exactly_zero() {
        let g = Game::from_table(3, vec![4.2; 8]).unwrap();
        let prior = Prior::binomial(3, 0.3).unwrap();
        let sampled = sample_values(&g, &prior, &SamplerConfig::new(64, 1)).unwrap();
        for i in 0..3 {
            assert_eq!(sampled.psi[i].mean, 0.0);
            assert_eq!(sampled.psi[i].stderr, 0.0);
            assert_eq!(sampled.gamma[i].mean, 0.0);
            assert_eq!(sampled.lambda[i].mean, 0.0);
        }
        // Aggregate value is zero, so the bias ratio is undefined.
        assert_eq!(sampled.alpha, None);
        assert!(sampled.psi_unbiased.is_none());
    }

    #[test]
    fn additive_game_shapley_sampling_has_zero_variance() {
        let g = additive_game(&[1.0, 2.0, 3.0]);
        let sampled = sample_shapley(&g, &SamplerConfig::new(128, 3)).unwrap();
        for (i, want) in [1.0, 2.0, 3.0].iter().enumerate() {
            assert_relative_eq!(sampled.estimates[i].mean, want, epsilon = 1e-12);
            assert_eq!(sampled.estimates[i].stderr, 0.0);
        }
    }

    #[test]
    fn two_player_shapley_sampling() {
        let g = Game::from_table(2, vec![0.0, 1.0, 0.0, 3.0]).unwrap();
        let sampled = sample_shapley(&g, &SamplerConfig::new(10_000, 5)).unwrap();
        for (i, want) in [2.0, 1.0].iter().enumerate() {
            let e = sampled.estimates[i];
            assert!((e.mean - want).abs() <= 3.0 * e.stderr.max(1e-12));
        }
    }

    #[test]
    fn unanimity_shapley_sampling_near_symmetric_share() {
        let g = unanimity_game(3);
        let sampled = sample_shapley(&g, &SamplerConfig::new(20_000, 17)).unwrap();
        for e in &sampled.estimates {
            assert!((e.mean - 1.0 / 3.0).abs() <= 3.0 * e.stderr.max(1e-12));
        }
    }

    #[test]
    fn unbiased_shapley_sampling_examples() {
        let g = unanimity_game(3);
        let sampled = sample_unbiased_shapley(&g, &SamplerConfig::new(20_000, 23)).unwrap();
        for e in &sampled.estimates {
            assert!((e.mean - 0.2).abs() <= 3.0 * e.stderr.max(1e-12));
        }

        // Dummy player: exactly zero with zero spread.
        let dummy = Game::new(3, |t: Coalition| {
            Ok(t.without(1).members().map(|i| i as f64 + 1.0).sum())
        })
        .unwrap();
        let sampled = sample_unbiased_shapley(&dummy, &SamplerConfig::new(500, 2)).unwrap();
        assert_eq!(sampled.estimates[1].mean, 0.0);
        assert_eq!(sampled.estimates[1].stderr, 0.0);
    }

    #[test]
    fn unbiased_shapley_sampling_matches_exact_on_random_game() {
        let g = random_game(8, 77);
        let exact = unbiased_shapley_exact(&g).unwrap();
        let sampled = sample_unbiased_shapley(&g, &SamplerConfig::new(50_000, 13)).unwrap();
        for i in 0..8 {
            let e = sampled.estimates[i];
            assert!(
                (e.mean - exact[i]).abs() <= 4.0 * e.stderr,
                "player {i}: {} vs {}",
                e.mean,
                exact[i]
            );
        }
        assert_eq!(sampled.diagnostics.telescope_failures, 0);
    }

    #[test]
    fn reversal_pairing_cancels_two_player_noise() {
        let g = Game::from_table(2, vec![0.0, 1.0, 0.0, 3.0]).unwrap();
        let exact = shapley_exact(&g).unwrap();
        let mut cfg = SamplerConfig::new(100, 9);
        cfg.use_reversals = true;
        let sampled = sample_shapley(&g, &cfg).unwrap();
        for i in 0..2 {
            assert_relative_eq!(sampled.estimates[i].mean, exact[i], epsilon = 1e-12);
        }
    }

    #[test]
    fn determinism_across_worker_counts() {
        let g = random_game(6, 5);
        let prior = Prior::binomial(6, 0.4).unwrap();
        let mut cfg = SamplerConfig::new(3000, 99);
        cfg.workers = Some(1);
        let one = sample_values(&g, &prior, &cfg).unwrap();
        let g2 = random_game(6, 5);
        cfg.workers = Some(4);
        let four = sample_values(&g2, &prior, &cfg).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn failed_prefixes_score_zero_and_are_counted() {
        // Payoff fails whenever the coalition is exactly {1}.
        let g = Game::new(3, |t: Coalition| {
            if t.bits() == 0b010 {
                Err("unstable".into())
            } else {
                Ok(t.size() as f64)
            }
        })
        .unwrap();
        let sampled = sample_shapley(&g, &SamplerConfig::new(600, 4)).unwrap();
        assert!(sampled.diagnostics.failed_steps > 0);
        // Estimates remain finite.
        for e in &sampled.estimates {
            assert!(e.mean.is_finite());
        }
    }

    #[test]
    fn adaptive_stopping_halts_early_on_low_noise() {
        let g = additive_game(&[1.0, 2.0, 3.0]);
        let mut cfg = SamplerConfig::new(1_000_000, 8);
        cfg.stderr_target = Some(1e-6);
        let sampled = sample_shapley(&g, &cfg).unwrap();
        assert_eq!(sampled.diagnostics.orderings, 1024);
    }

    #[test]
    fn studentized_errors_calibrated_across_seeds() {
        let g = random_game(5, 123);
        let prior = Prior::shapley(5, 0.0).unwrap();
        let exact = dvalue_exact(&g, &prior).unwrap();
        let mut in_band = 0;
        let mut total = 0;
        for seed in 0..50 {
            let sampled = sample_values(&g, &prior, &SamplerConfig::new(2000, seed)).unwrap();
            for i in 0..5 {
                let e = sampled.psi[i];
                let z = (e.mean - exact[i]) / e.stderr.max(1e-300);
                total += 1;
                if z.abs() <= 4.0 {
                    in_band += 1;
                }
            }
        }
        assert!(
            in_band * 50 >= total * 49,
            "only {in_band}/{total} studentized errors within 4 sigma"
        );
    }

    #[test]
    fn zero_orderings_rejected() {
        let g = additive_game(&[1.0]);
        assert!(sample_shapley(&g, &SamplerConfig::new(0, 1)).is_err());
    }
}
