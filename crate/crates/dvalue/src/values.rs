//! Exact (full-enumeration) valuation of coalitional games.
//!
//! Every operation here enumerates all 2^n coalitions once (through the
//! game's memoized payoff table) and reduces per-player sums with a fixed
//! block structure, so results are bit-identical for any worker count.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_indexed, SUBSET_BLOCK};
use crate::game::{Coalition, Game};
use crate::prior::{binomial, ln_beta, Prior};

/// Per-player valuation report: the marginal-gain and marginal-loss
/// expectations, their sum and difference, the bias ratio, and the
/// bias-adjusted value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueReport {
    /// Which valuation produced `values`.
    pub method: String,
    /// Prior tag (CLI syntax, e.g. `sv:0`).
    pub prior: String,
    /// Player names; defaults to indices when no dataset is attached.
    pub names: Vec<String>,
    /// Headline per-player values for `method`.
    pub values: Vec<f64>,
    /// Expected marginal gain per player.
    pub gamma: Vec<f64>,
    /// Expected marginal loss per player.
    pub lambda: Vec<f64>,
    /// Overall value: gamma + lambda.
    pub psi: Vec<f64>,
    /// Endowment bias: gamma - lambda.
    pub kappa: Vec<f64>,
    /// Bias-adjusted value; absent when the bias ratio is undefined.
    pub psi_unbiased: Option<Vec<f64>>,
    /// Aggregate bias ratio; `None` when the aggregate value is ~0.
    pub alpha: Option<f64>,
    /// Standard errors of `values` when estimated by sampling.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<Vec<f64>>,
    /// Orderings drawn, for sampled reports.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orderings: Option<u64>,
}

impl ValueReport {
    /// Player order sorted by headline value, descending.
    pub fn ranking(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.values.len()).collect();
        idx.sort_by(|&a, &b| {
            self.values[b]
                .partial_cmp(&self.values[a])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        idx
    }
}

/// Size-averaged marginal gains and losses, with the weak-monotonicity flags.
///
/// `omega[j]` is the average marginal gain over coalitions of size `j + 1`;
/// `pi[j]` is the average marginal loss over base coalitions of size `j`.
/// The two arrays therefore align index-by-index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginalityProfile {
    pub omega: Vec<f64>,
    pub pi: Vec<f64>,
    pub diminishing_effect: bool,
    pub diminishing_gain: bool,
    pub diminishing_loss: bool,
}

/// Endowment bias per player with the aggregate bias ratio.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EndowmentBias {
    pub kappa: Vec<f64>,
    /// `None` when the aggregate value is within 1e-12 of zero.
    pub alpha: Option<f64>,
}

/// Aggregate value below which the bias ratio is reported as undefined
/// instead of exploding.
const ALPHA_DENOM_FLOOR: f64 = 1e-12;

/// Materialize all 2^n payoffs into a dense table indexed by bitmask.
fn payoff_table(game: &Game) -> Result<Vec<f64>> {
    game.require_exact()?;
    let n = game.player_count();
    let total = 1u64 << n;
    let blocks = total.div_ceil(SUBSET_BLOCK) as usize;
    let parts: Vec<Result<Vec<f64>>> = map_indexed(blocks, |b| {
        let start = b as u64 * SUBSET_BLOCK;
        let end = (start + SUBSET_BLOCK).min(total);
        (start..end)
            .map(|bits| {
                game.evaluate(Coalition::from_bits(bits as u32))
                    .map_err(Error::from)
            })
            .collect()
    });
    let mut table = Vec::with_capacity(total as usize);
    for part in parts {
        table.extend(part?);
    }
    Ok(table)
}

/// For each channel `c` and player `i`, compute
/// `sum over T containing i of weights[c][|T|] * (v(T) - v(T \ i))`.
///
/// Every exact valuation in this module is an instance of this kernel with
/// a different size-weight vector.
fn weighted_marginal_sums(n: usize, table: &[f64], weights: &[&[f64]]) -> Vec<Vec<f64>> {
    let total = 1u64 << n;
    let blocks = total.div_ceil(SUBSET_BLOCK) as usize;
    let channels = weights.len();
    let parts: Vec<Vec<Vec<f64>>> = map_indexed(blocks, |b| {
        let start = b as u64 * SUBSET_BLOCK;
        let end = (start + SUBSET_BLOCK).min(total);
        let mut local = vec![vec![0.0; n]; channels];
        for bits in start..end {
            let value = table[bits as usize];
            let mut rest = bits;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let marginal = value - table[(bits & !(1u64 << i)) as usize];
                let size = bits.count_ones() as usize;
                for (c, w) in weights.iter().enumerate() {
                    local[c][i] += w[size] * marginal;
                }
            }
        }
        local
    });
    let mut out = vec![vec![0.0; n]; channels];
    for part in parts {
        for (acc, local) in out.iter_mut().zip(part) {
            for (a, l) in acc.iter_mut().zip(local) {
                *a += l;
            }
        }
    }
    out
}

fn subset_probabilities(prior: &Prior) -> Vec<f64> {
    (0..=prior.player_count())
        .map(|t| prior.subset_probability(t))
        .collect()
}

/// Expected marginal gain and loss per player under the prior.
pub fn gamma_lambda_exact(game: &Game, prior: &Prior) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = check_players(game, prior)?;
    let table = payoff_table(game)?;
    let p = subset_probabilities(prior);
    // Gain weights use the probability of T itself; loss weights use the
    // probability of T minus the player (change of variable from T not
    // containing i to T containing i).
    let mut gain_w = vec![0.0; n + 1];
    let mut loss_w = vec![0.0; n + 1];
    for t in 1..=n {
        gain_w[t] = p[t];
        loss_w[t] = p[t - 1];
    }
    let mut sums = weighted_marginal_sums(n, &table, &[&gain_w, &loss_w]);
    let lambda = sums.pop().unwrap();
    let gamma = sums.pop().unwrap();
    Ok((gamma, lambda))
}

/// Overall per-player value: expected marginal effect gamma + lambda.
pub fn dvalue_exact(game: &Game, prior: &Prior) -> Result<Vec<f64>> {
    let (gamma, lambda) = gamma_lambda_exact(game, prior)?;
    Ok(gamma
        .into_iter()
        .zip(lambda)
        .map(|(g, l)| g + l)
        .collect())
}

/// The Shapley value.
pub fn shapley_exact(game: &Game) -> Result<Vec<f64>> {
    game.require_exact()?;
    let n = game.player_count();
    let table = payoff_table(game)?;
    let mut w = vec![0.0; n + 1];
    for t in 1..=n {
        // (t-1)! (n-t)! / n!  ==  1 / (t * C(n, t))
        w[t] = 1.0 / (t as f64 * binomial(n, t));
    }
    Ok(weighted_marginal_sums(n, &table, &[&w]).pop().unwrap())
}

/// The Banzhaf value.
pub fn banzhaf_exact(game: &Game) -> Result<Vec<f64>> {
    game.require_exact()?;
    let n = game.player_count();
    let table = payoff_table(game)?;
    let w = vec![0.5f64.powi(n as i32 - 1); n + 1];
    Ok(weighted_marginal_sums(n, &table, &[&w]).pop().unwrap())
}

/// Per-size weight of the bias-adjusted Shapley value:
/// `4 t! (n-t+1)! / (n+2)!`.
pub(crate) fn unbiased_shapley_weight(n: usize, t: usize) -> f64 {
    4.0 / (binomial(n + 2, t) * (n + 2 - t) as f64)
}

/// The bias-adjusted Shapley value (mid-sized coalitions upweighted so the
/// aggregate gain/loss asymmetry cancels).
pub fn unbiased_shapley_exact(game: &Game) -> Result<Vec<f64>> {
    game.require_exact()?;
    let n = game.player_count();
    let table = payoff_table(game)?;
    let mut w = vec![0.0; n + 1];
    for t in 1..=n {
        w[t] = unbiased_shapley_weight(n, t);
    }
    Ok(weighted_marginal_sums(n, &table, &[&w]).pop().unwrap())
}

/// Endowment bias per player, computed both as gamma - lambda and through
/// the direct payoff-weight identity; the two routes must agree.
pub fn endowment_bias(game: &Game, prior: &Prior) -> Result<EndowmentBias> {
    let n = check_players(game, prior)?;
    let (gamma, lambda) = gamma_lambda_exact(game, prior)?;
    let kappa: Vec<f64> = gamma.iter().zip(&lambda).map(|(g, l)| g - l).collect();

    // Independent route: kappa_i = sum over all T of
    // [2 P_T - P_{T+i} - P_{T-i}] v(T). For members the bracket is
    // P_t - P_{t-1}; for non-members it is P_t - P_{t+1}.
    let table = payoff_table(game)?;
    let p = subset_probabilities(prior);
    let total = 1u64 << n;
    let blocks = total.div_ceil(SUBSET_BLOCK) as usize;
    let parts: Vec<Vec<f64>> = map_indexed(blocks, |b| {
        let start = b as u64 * SUBSET_BLOCK;
        let end = (start + SUBSET_BLOCK).min(total);
        let mut local = vec![0.0; n];
        for bits in start..end {
            let value = table[bits as usize];
            let size = bits.count_ones() as usize;
            for (i, slot) in local.iter_mut().enumerate() {
                let coeff = if bits >> i & 1 == 1 {
                    p[size] - p[size - 1]
                } else {
                    p[size] - p[size + 1]
                };
                *slot += coeff * value;
            }
        }
        local
    });
    let mut direct = vec![0.0; n];
    for part in parts {
        for (a, l) in direct.iter_mut().zip(part) {
            *a += l;
        }
    }

    let scale = table.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    for (i, (a, b)) in kappa.iter().zip(&direct).enumerate() {
        if (a - b).abs() > 1e-9 * scale {
            return Err(Error::InternalCheck(format!(
                "endowment bias routes disagree for player {i}: {a} vs {b}"
            )));
        }
    }

    let psi_total: f64 = gamma.iter().sum::<f64>() + lambda.iter().sum::<f64>();
    let kappa_total: f64 = kappa.iter().sum();
    let alpha = if psi_total.abs() < ALPHA_DENOM_FLOOR {
        None
    } else {
        Some(kappa_total / psi_total)
    };
    Ok(EndowmentBias { kappa, alpha })
}

/// Bias-adjusted value: `(1-alpha) gamma + (1+alpha) lambda`, which zeroes
/// the aggregate gain/loss asymmetry.
pub fn unbiased_dvalue_exact(game: &Game, prior: &Prior) -> Result<Vec<f64>> {
    let (gamma, lambda) = gamma_lambda_exact(game, prior)?;
    let bias = endowment_bias(game, prior)?;
    let alpha = bias.alpha.ok_or(Error::UndefinedBiasRatio {
        psi_total: gamma.iter().sum::<f64>() + lambda.iter().sum::<f64>(),
    })?;
    Ok(gamma
        .iter()
        .zip(&lambda)
        .map(|(g, l)| (1.0 - alpha) * g + (1.0 + alpha) * l)
        .collect())
}

/// D-value under a Beta-compounded binomial prior, via the closed-form
/// Beta-function weights. With `adjusted`, the per-inclusion-probability
/// bias adjustment is compounded as well; at shape (1,1) the unadjusted
/// form is the Shapley value and the adjusted form is the bias-adjusted
/// Shapley value.
pub fn beta_binomial_dvalue(game: &Game, a: f64, b: f64, adjusted: bool) -> Result<Vec<f64>> {
    game.require_exact()?;
    if !(a > 0.0) || !(b > 0.0) {
        return Err(Error::Prior(format!(
            "Beta shape parameters must be positive, got ({a}, {b})"
        )));
    }
    let n = game.player_count();
    let table = payoff_table(game)?;
    let norm = ln_beta(a, b);
    let mut w = vec![0.0; n + 1];
    for t in 1..=n {
        let tf = t as f64;
        let nf = n as f64;
        w[t] = if adjusted {
            4.0 * (ln_beta(a + tf, b + nf - tf + 1.0) - norm).exp()
        } else {
            (ln_beta(a + tf - 1.0, b + nf - tf) - norm).exp()
        };
    }
    Ok(weighted_marginal_sums(n, &table, &[&w]).pop().unwrap())
}

/// Size-averaged marginal gains and losses plus the diminishing flags.
pub fn marginality_profile(game: &Game) -> Result<MarginalityProfile> {
    game.require_exact()?;
    let n = game.player_count();
    let table = payoff_table(game)?;
    let total = 1u64 << n;
    let blocks = total.div_ceil(SUBSET_BLOCK) as usize;
    // Per block: raw gain sums grouped by |T| (1..=n) and raw loss sums
    // grouped by base size (0..n). The two averages are computed from
    // independent summations rather than from each other.
    let parts: Vec<(Vec<f64>, Vec<f64>)> = map_indexed(blocks, |bk| {
        let start = bk as u64 * SUBSET_BLOCK;
        let end = (start + SUBSET_BLOCK).min(total);
        let mut gain = vec![0.0; n + 1];
        let mut loss = vec![0.0; n + 1];
        for bits in start..end {
            let value = table[bits as usize];
            let size = bits.count_ones() as usize;
            for i in 0..n {
                if bits >> i & 1 == 1 {
                    gain[size] += value - table[(bits & !(1u64 << i)) as usize];
                } else {
                    loss[size] += table[(bits | 1u64 << i) as usize] - value;
                }
            }
        }
        (gain, loss)
    });
    let mut gain = vec![0.0; n + 1];
    let mut loss = vec![0.0; n + 1];
    for (g, l) in parts {
        for t in 0..=n {
            gain[t] += g[t];
            loss[t] += l[t];
        }
    }
    let omega: Vec<f64> = (1..=n)
        .map(|t| gain[t] / (t as f64 * binomial(n, t)))
        .collect();
    let pi: Vec<f64> = (0..n)
        .map(|t| loss[t] / ((n - t) as f64 * binomial(n, t)))
        .collect();

    let tol = 1e-9 * omega.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    let diminishing_effect = (1..n).all(|t| omega[t - 1] >= pi[t] - tol);
    let diminishing_gain = omega.windows(2).all(|w| w[0] >= w[1] - tol);
    let diminishing_loss = pi.windows(2).all(|w| w[0] >= w[1] - tol);
    Ok(MarginalityProfile {
        omega,
        pi,
        diminishing_effect,
        diminishing_gain,
        diminishing_loss,
    })
}

/// Expected payoff of the unknown true model under the prior.
pub fn expected_performance(game: &Game, prior: &Prior) -> Result<f64> {
    let n = check_players(game, prior)?;
    let table = payoff_table(game)?;
    let p = subset_probabilities(prior);
    let total = 1u64 << n;
    let blocks = total.div_ceil(SUBSET_BLOCK) as usize;
    let parts: Vec<f64> = map_indexed(blocks, |b| {
        let start = b as u64 * SUBSET_BLOCK;
        let end = (start + SUBSET_BLOCK).min(total);
        (start..end)
            .map(|bits| p[bits.count_ones() as usize] * table[bits as usize])
            .sum()
    });
    Ok(parts.iter().sum())
}

fn check_players(game: &Game, prior: &Prior) -> Result<usize> {
    game.require_exact()?;
    if game.player_count() != prior.player_count() {
        return Err(Error::Config(format!(
            "prior is over {} players but the game has {}",
            prior.player_count(),
            game.player_count()
        )));
    }
    Ok(game.player_count())
}
