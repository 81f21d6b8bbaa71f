//! Coalitions and coalitional games with a memoized payoff oracle.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use dashmap::DashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, EvalError, Result};

/// Largest player count the crate accepts anywhere.
pub const MAX_PLAYERS: usize = 30;

/// Largest player count for which full 2^n enumeration is offered.
/// Beyond this the exact operations refuse and point at the sampler.
pub const EXACT_LIMIT: usize = 24;

/// A subset of player indices `0..n`, stored as a bitmask.
///
/// Player `i` is a member iff bit `i` is set. Membership tests and
/// single-player updates are O(1), and the mask doubles as a canonical
/// cache key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coalition {
    bits: u32,
}

impl Coalition {
    /// The empty coalition.
    pub const EMPTY: Coalition = Coalition { bits: 0 };

    /// Coalition from a raw bitmask.
    pub fn from_bits(bits: u32) -> Self {
        Coalition { bits }
    }

    /// The grand coalition of all `n` players.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n == 32 {
            Coalition { bits: u32::MAX }
        } else {
            Coalition {
                bits: (1u32 << n) - 1,
            }
        }
    }

    /// Coalition containing exactly the given players.
    pub fn of(players: &[usize]) -> Self {
        let mut bits = 0;
        for &p in players {
            bits |= 1u32 << p;
        }
        Coalition { bits }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn contains(self, player: usize) -> bool {
        self.bits >> player & 1 == 1
    }

    /// This coalition with `player` added (no-op if already present).
    #[must_use]
    pub fn with(self, player: usize) -> Self {
        Coalition {
            bits: self.bits | 1 << player,
        }
    }

    /// This coalition with `player` removed (no-op if absent).
    #[must_use]
    pub fn without(self, player: usize) -> Self {
        Coalition {
            bits: self.bits & !(1 << player),
        }
    }

    /// Number of members, i.e. |T|.
    pub fn size(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Members in ascending index order.
    pub fn members(self) -> impl Iterator<Item = usize> {
        let bits = self.bits;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// Union with another coalition.
    #[must_use]
    pub fn union(self, other: Coalition) -> Self {
        Coalition {
            bits: self.bits | other.bits,
        }
    }

    /// Members of `self` not in `other`.
    #[must_use]
    pub fn difference(self, other: Coalition) -> Self {
        Coalition {
            bits: self.bits & !other.bits,
        }
    }
}

impl fmt::Display for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.members() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// All `2^n` coalitions of `n` players, in ascending bitmask order.
pub fn all_coalitions(n: usize) -> impl Iterator<Item = Coalition> {
    assert!(n >= 1 && n <= MAX_PLAYERS, "player count out of range");
    (0..(1u64 << n)).map(|bits| Coalition::from_bits(bits as u32))
}

/// A coalitional game: a player count and a memoized payoff function.
///
/// The payoff oracle may be expensive (an OLS fit per coalition in the
/// selection setting), so every result, including failures, is cached and
/// each coalition is evaluated at most once per thread of execution. The
/// cache is concurrent; racing workers may each evaluate a coalition once,
/// which is benign because payoffs are deterministic.
pub struct Game {
    n: usize,
    payoff: Box<dyn Fn(Coalition) -> std::result::Result<f64, String> + Send + Sync>,
    cache: DashMap<u32, std::result::Result<f64, String>>,
    oracle_calls: AtomicU64,
}

impl Game {
    /// Game over `n` players backed by a payoff oracle.
    pub fn new<F>(n: usize, payoff: F) -> Result<Self>
    where
        F: Fn(Coalition) -> std::result::Result<f64, String> + Send + Sync + 'static,
    {
        if n == 0 || n > MAX_PLAYERS {
            return Err(Error::InvalidPlayerCount {
                n,
                limit: MAX_PLAYERS,
            });
        }
        Ok(Game {
            n,
            payoff: Box::new(payoff),
            cache: DashMap::new(),
            oracle_calls: AtomicU64::new(0),
        })
    }

    /// Game defined by an explicit payoff table of length `2^n`,
    /// indexed by coalition bitmask.
    pub fn from_table(n: usize, table: Vec<f64>) -> Result<Self> {
        if n == 0 || n > EXACT_LIMIT {
            return Err(Error::InvalidPlayerCount {
                n,
                limit: EXACT_LIMIT,
            });
        }
        assert_eq!(table.len() as u64, 1u64 << n, "table length must be 2^n");
        Game::new(n, move |t: Coalition| Ok(table[t.bits() as usize]))
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    /// Memoized payoff v(T).
    pub fn evaluate(&self, t: Coalition) -> std::result::Result<f64, EvalError> {
        debug_assert!(u64::from(t.bits()) < 1u64 << self.n, "coalition out of range");
        if let Some(hit) = self.cache.get(&t.bits()) {
            return hit.clone().map_err(|reason| EvalError {
                coalition: t,
                reason,
            });
        }
        self.oracle_calls.fetch_add(1, Ordering::Relaxed);
        let value = (self.payoff)(t);
        self.cache.insert(t.bits(), value.clone());
        value.map_err(|reason| EvalError {
            coalition: t,
            reason,
        })
    }

    /// Number of oracle invocations so far (cache misses).
    pub fn oracle_calls(&self) -> u64 {
        self.oracle_calls.load(Ordering::Relaxed)
    }

    /// Guard for full-enumeration operations.
    pub(crate) fn require_exact(&self) -> Result<()> {
        if self.n > EXACT_LIMIT {
            Err(Error::TooManyPlayers {
                n: self.n,
                limit: EXACT_LIMIT,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("n", &self.n)
            .field("cached", &self.cache.len())
            .finish()
    }
}

/// Additive game with the given player weights: v(T) = sum of weights in T.
pub fn additive_game(weights: &[f64]) -> Game {
    let w = weights.to_vec();
    Game::new(w.len(), move |t: Coalition| {
        Ok(t.members().map(|i| w[i]).sum())
    })
    .expect("valid weight count")
}

/// Unanimity game on `n` players: v(T) = 1 iff T is the grand coalition.
pub fn unanimity_game(n: usize) -> Game {
    Game::new(n, move |t: Coalition| {
        Ok(if t == Coalition::full(n) { 1.0 } else { 0.0 })
    })
    .expect("valid player count")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn additive_evaluation() {
        let g = additive_game(&[1.0, 2.0, 3.0]);
        assert_eq!(g.evaluate(Coalition::of(&[0, 2])).unwrap(), 4.0);
        assert_eq!(g.evaluate(Coalition::EMPTY).unwrap(), 0.0);
    }

    #[test]
    fn unanimity_evaluation() {
        let g = unanimity_game(3);
        assert_eq!(g.evaluate(Coalition::of(&[0, 1])).unwrap(), 0.0);
        assert_eq!(g.evaluate(Coalition::of(&[0, 1, 2])).unwrap(), 1.0);
    }

    #[test]
    fn empty_coalition_uses_oracle_value() {
        let g = Game::new(2, |t: Coalition| Ok(if t.is_empty() { 7.5 } else { 0.0 })).unwrap();
        assert_eq!(g.evaluate(Coalition::EMPTY).unwrap(), 7.5);
    }

    #[test]
    fn coalition_stream_is_complete_and_ordered() {
        assert_eq!(
            all_coalitions(1).map(Coalition::bits).collect::<Vec<_>>(),
            vec![0, 1]
        );
        assert_eq!(
            all_coalitions(2).map(Coalition::bits).collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
        assert_eq!(all_coalitions(3).count(), 8);
        for n in 1..=12 {
            assert_eq!(all_coalitions(n).count() as u64, 1u64 << n);
        }
    }

    #[test]
    fn with_without_are_complements() {
        for bits in 0..64u32 {
            let t = Coalition::from_bits(bits);
            for i in 0..6 {
                assert_eq!(t.with(i).without(i), t.without(i));
                assert_eq!(t.without(i).with(i), t.with(i));
                assert_eq!(t.size(), t.bits().count_ones() as usize);
            }
        }
    }

    #[test]
    fn cache_prevents_repeat_oracle_calls() {
        let g = Game::new(4, |t: Coalition| Ok(t.size() as f64)).unwrap();
        for t in all_coalitions(4) {
            g.evaluate(t).unwrap();
        }
        for t in all_coalitions(4) {
            g.evaluate(t).unwrap();
        }
        assert_eq!(g.oracle_calls(), 16);
    }

    #[test]
    fn oracle_failure_identifies_coalition() {
        let g = Game::new(3, |t: Coalition| {
            if t.contains(1) {
                Err("singular".to_string())
            } else {
                Ok(1.0)
            }
        })
        .unwrap();
        let err = g.evaluate(Coalition::of(&[1, 2])).unwrap_err();
        assert_eq!(err.coalition, Coalition::of(&[1, 2]));
        assert!(err.reason.contains("singular"));
        // failures are cached too
        let _ = g.evaluate(Coalition::of(&[1, 2]));
        assert_eq!(g.oracle_calls(), 1);
    }

    #[test]
    fn player_count_limits() {
        assert!(Game::new(0, |_| Ok(0.0)).is_err());
        assert!(Game::new(31, |_| Ok(0.0)).is_err());
        let g = Game::new(25, |_| Ok(0.0)).unwrap();
        assert!(matches!(
            g.require_exact(),
            Err(Error::TooManyPlayers { n: 25, limit: 24 })
        ));
    }
}
