//! Finite normal-form games with ordinal preferences.
//!
//! Each player's preference is stored as a rank per profile: lower rank is strictly
//! preferred, equal rank is indifference. Ranks are dense-normalized on construction so that
//! two games with the same labels and the same preference orders are identical, and the
//! canonical id is a SHA-256 digest over that normal form.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

use crate::error::{GameError, Result};
use crate::profile::{ProductIter, Profile};
use crate::subset::{SubsetSpec, MAX_STRATEGIES};

/// Content hash of a game's canonical form.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GameId([u8; 32]);

impl GameId {
    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    /// First 12 hex digits, for human-facing output.
    pub fn short(&self) -> String {
        hex::encode(&self.0[..6])
    }

    pub fn from_hex(s: &str) -> Option<GameId> {
        let bytes = hex::decode(s).ok()?;
        Some(GameId(bytes.try_into().ok()?))
    }
}

impl fmt::Debug for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GameId({})", self.short())
    }
}

impl fmt::Display for GameId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for GameId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for GameId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        GameId::from_hex(&s).ok_or_else(|| serde::de::Error::custom("malformed game id"))
    }
}

/// Input tables for [`build_game`].
#[derive(Debug, Clone, PartialEq)]
pub enum Tables {
    /// Higher payoff is better; converted to ranks and discarded.
    Payoffs(Vec<Vec<f64>>),
    /// Lower rank is better; re-normalized.
    Ranks(Vec<Vec<u64>>),
}

/// An immutable finite game.
#[derive(Clone)]
pub struct Game {
    strategies: Vec<Vec<String>>,
    shape: Vec<usize>,
    strides: Vec<usize>,
    ranks: Vec<Vec<u32>>,
    id: GameId,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for Game {}

impl std::hash::Hash for Game {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id.hash(state)
    }
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Game")
            .field("id", &self.id)
            .field("strategies", &self.strategies)
            .field("ranks", &self.ranks)
            .finish()
    }
}

/// Builds a game from labels and either payoff or rank tables (flat, linear-index order).
pub fn build_game(
    player_count: usize,
    strategies: Vec<Vec<String>>,
    tables: Tables,
) -> Result<Game> {
    if player_count == 0 {
        return Err(GameError::NoPlayers);
    }
    if strategies.len() != player_count {
        return Err(GameError::PlayerCount {
            expected: player_count,
            found: strategies.len(),
        });
    }
    match tables {
        Tables::Payoffs(p) => Game::from_payoffs(strategies, p),
        Tables::Ranks(r) => Game::from_ranks(strategies, r),
    }
}

fn check_labels(strategies: &[Vec<String>]) -> Result<Vec<usize>> {
    if strategies.is_empty() {
        return Err(GameError::NoPlayers);
    }
    let mut shape = Vec::with_capacity(strategies.len());
    for (player, labels) in strategies.iter().enumerate() {
        if labels.is_empty() {
            return Err(GameError::EmptyStrategies { player });
        }
        if labels.len() > MAX_STRATEGIES {
            return Err(GameError::TooManyStrategies {
                player,
                count: labels.len(),
                max: MAX_STRATEGIES,
            });
        }
        let mut seen = HashSet::new();
        for label in labels {
            if !seen.insert(label.as_str()) {
                return Err(GameError::DuplicateLabel {
                    player,
                    label: label.clone(),
                });
            }
        }
        shape.push(labels.len());
    }
    Ok(shape)
}

fn check_table_shape(shape: &[usize], lens: impl ExactSizeIterator<Item = usize>) -> Result<()> {
    if lens.len() != shape.len() {
        return Err(GameError::PlayerCount {
            expected: shape.len(),
            found: lens.len(),
        });
    }
    let expected: usize = shape.iter().product();
    for (player, found) in lens.enumerate() {
        if found != expected {
            return Err(GameError::ShapeMismatch {
                player,
                expected,
                found,
            });
        }
    }
    Ok(())
}

/// Maps arbitrary ordered keys to dense ranks `0..=k` preserving order.
fn dense_normalize<T: Ord + Copy>(values: &[T]) -> Vec<u32> {
    let distinct: Vec<T> = values
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    values
        .iter()
        .map(|v| distinct.binary_search(v).expect("value present") as u32)
        .collect()
}

impl Game {
    pub fn from_ranks(strategies: Vec<Vec<String>>, ranks: Vec<Vec<u64>>) -> Result<Game> {
        let shape = check_labels(&strategies)?;
        check_table_shape(&shape, ranks.iter().map(Vec::len))?;
        let ranks = ranks.iter().map(|r| dense_normalize(r)).collect();
        Ok(Game::assemble(strategies, shape, ranks))
    }

    pub fn from_payoffs(strategies: Vec<Vec<String>>, payoffs: Vec<Vec<f64>>) -> Result<Game> {
        let shape = check_labels(&strategies)?;
        check_table_shape(&shape, payoffs.iter().map(Vec::len))?;
        let mut ranks = Vec::with_capacity(payoffs.len());
        for (player, table) in payoffs.iter().enumerate() {
            if let Some(index) = table.iter().position(|v| !v.is_finite()) {
                return Err(GameError::NonFinitePayoff { player, index });
            }
            // negate so that the highest payoff gets rank 0; +0.0 folds -0.0 into 0.0
            let keys: Vec<i64> = table.iter().map(|&v| order_key(-v + 0.0)).collect();
            ranks.push(dense_normalize(&keys));
        }
        Ok(Game::assemble(strategies, shape, ranks))
    }

    /// Caller guarantees labels and shapes are valid; ranks are normalized here.
    pub(crate) fn from_parts(strategies: Vec<Vec<String>>, ranks: Vec<Vec<u32>>) -> Game {
        let shape = strategies.iter().map(Vec::len).collect();
        let ranks = ranks.iter().map(|r| dense_normalize(r)).collect();
        Game::assemble(strategies, shape, ranks)
    }

    fn assemble(strategies: Vec<Vec<String>>, shape: Vec<usize>, ranks: Vec<Vec<u32>>) -> Game {
        let mut strides = vec![1; shape.len()];
        for p in (0..shape.len().saturating_sub(1)).rev() {
            strides[p] = strides[p + 1] * shape[p + 1];
        }
        let id = canonical_id(&strategies, &ranks);
        Game {
            strategies,
            shape,
            strides,
            ranks,
            id,
        }
    }

    pub fn id(&self) -> GameId {
        self.id
    }

    pub fn player_count(&self) -> usize {
        self.shape.len()
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn strategy_count(&self, player: usize) -> usize {
        self.shape[player]
    }

    pub fn strategies(&self, player: usize) -> &[String] {
        &self.strategies[player]
    }

    pub fn all_strategies(&self) -> &[Vec<String>] {
        &self.strategies
    }

    pub fn profile_count(&self) -> usize {
        self.shape.iter().product()
    }

    pub(crate) fn strides(&self) -> &[usize] {
        &self.strides
    }

    /// Dense ranks of `player`, indexed by linear profile index.
    pub fn rank_table(&self, player: usize) -> &[u32] {
        &self.ranks[player]
    }

    pub fn rank_tables(&self) -> &[Vec<u32>] {
        &self.ranks
    }

    pub fn rank(&self, player: usize, profile: &Profile) -> u32 {
        self.ranks[player][self.linear_index(profile)]
    }

    pub fn linear_index(&self, profile: &Profile) -> usize {
        profile
            .indices()
            .iter()
            .zip(&self.strides)
            .map(|(i, s)| i * s)
            .sum()
    }

    pub fn profile_at(&self, linear: usize) -> Profile {
        Profile::from_linear(linear, &self.shape)
    }

    /// All profiles in linear-index order.
    pub fn profiles(&self) -> impl Iterator<Item = Profile> + '_ {
        (0..self.profile_count()).map(move |l| self.profile_at(l))
    }

    /// `s ≻_player t`.
    pub fn prefers(&self, player: usize, s: &Profile, t: &Profile) -> bool {
        self.rank(player, s) < self.rank(player, t)
    }

    /// `s ⪰_player t`.
    pub fn weakly_prefers(&self, player: usize, s: &Profile, t: &Profile) -> bool {
        self.rank(player, s) <= self.rank(player, t)
    }

    /// `s ∼_player t`.
    pub fn indifferent(&self, player: usize, s: &Profile, t: &Profile) -> bool {
        self.rank(player, s) == self.rank(player, t)
    }

    pub fn check_player(&self, player: usize) -> Result<()> {
        if player < self.player_count() {
            Ok(())
        } else {
            Err(GameError::PlayerOutOfRange { player })
        }
    }

    pub fn check_strategy(&self, player: usize, index: usize) -> Result<()> {
        self.check_player(player)?;
        if index < self.shape[player] {
            Ok(())
        } else {
            Err(GameError::StrategyOutOfRange { player, index })
        }
    }

    pub fn check_profile(&self, profile: &Profile) -> Result<()> {
        if profile.len() != self.player_count() {
            return Err(GameError::ProfileArity {
                expected: self.player_count(),
                found: profile.len(),
            });
        }
        for (player, &index) in profile.indices().iter().enumerate() {
            self.check_strategy(player, index)?;
        }
        Ok(())
    }

    pub fn strategy_index(&self, player: usize, label: &str) -> Result<usize> {
        self.check_player(player)?;
        self.strategies[player]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GameError::UnknownLabel {
                player,
                label: label.to_string(),
            })
    }

    pub fn profile_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<Profile> {
        if labels.len() != self.player_count() {
            return Err(GameError::ProfileArity {
                expected: self.player_count(),
                found: labels.len(),
            });
        }
        labels
            .iter()
            .enumerate()
            .map(|(p, l)| self.strategy_index(p, l.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Profile::new)
    }

    pub fn labels_of(&self, profile: &Profile) -> Vec<String> {
        profile
            .indices()
            .iter()
            .enumerate()
            .map(|(p, &i)| self.strategies[p][i].clone())
            .collect()
    }

    /// `(U,L)` style rendering.
    pub fn format_profile(&self, profile: &Profile) -> String {
        format!("({})", self.labels_of(profile).join(","))
    }

    /// Maps a profile of `self` onto `other` by strategy label.
    pub fn translate(&self, profile: &Profile, other: &Game) -> Option<Profile> {
        if other.player_count() != self.player_count() {
            return None;
        }
        other.profile_from_labels(&self.labels_of(profile)).ok()
    }

    /// Keeps the strategies selected by `subsets` (in original order) and restricts every
    /// player's preference to the surviving profiles.
    pub fn restrict(&self, subsets: &SubsetSpec) -> Result<Game> {
        subsets.validate(self)?;
        let axes: Vec<Vec<usize>> = (0..self.player_count())
            .map(|p| subsets.members(p))
            .collect();
        let strategies = axes
            .iter()
            .enumerate()
            .map(|(p, axis)| {
                axis.iter()
                    .map(|&i| self.strategies[p][i].clone())
                    .collect()
            })
            .collect();
        let parent_indices: Vec<usize> = ProductIter::new(&axes)
            .map(|p| self.linear_index(&p))
            .collect();
        let ranks = self
            .ranks
            .iter()
            .map(|table| parent_indices.iter().map(|&l| table[l]).collect())
            .collect();
        Ok(Game::from_parts(strategies, ranks))
    }
}

/// Total order key for finite f64 (IEEE total order restricted to finite values).
fn order_key(v: f64) -> i64 {
    let bits = v.to_bits() as i64;
    if bits < 0 {
        bits ^ i64::MAX
    } else {
        bits
    }
}

fn canonical_id(strategies: &[Vec<String>], ranks: &[Vec<u32>]) -> GameId {
    let mut hasher = Sha256::new();
    hasher.update(b"nashax-game-v1");
    hasher.update((strategies.len() as u64).to_le_bytes());
    for labels in strategies {
        hasher.update((labels.len() as u64).to_le_bytes());
        for label in labels {
            hasher.update((label.len() as u64).to_le_bytes());
            hasher.update(label.as_bytes());
        }
    }
    for table in ranks {
        for r in table {
            hasher.update(r.to_le_bytes());
        }
    }
    GameId(hasher.finalize().into())
}

/// Shorthand for building label lists in tests and fixtures.
pub fn labels(names: &[&[&str]]) -> Vec<Vec<String>> {
    names
        .iter()
        .map(|ls| ls.iter().map(|s| s.to_string()).collect())
        .collect()
}
