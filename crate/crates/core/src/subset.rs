use serde::{Deserialize, Serialize};

use crate::error::{GameError, Result};
use crate::game::Game;
use crate::profile::Profile;

/// Upper bound on strategies per player; subsets are stored as `u64` bitmasks.
pub const MAX_STRATEGIES: usize = 64;

pub(crate) fn full_mask(count: usize) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}

/// Per-player choice of surviving strategy indices.
///
/// Serialized as a list of index lists, e.g. `[[0, 1], [1]]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct SubsetSpec {
    masks: Vec<u64>,
}

impl SubsetSpec {
    pub fn from_masks(masks: Vec<u64>) -> Self {
        SubsetSpec { masks }
    }

    pub fn from_indices<I, J>(sets: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let mut masks = Vec::new();
        for (player, set) in sets.into_iter().enumerate() {
            let mut mask = 0u64;
            for index in set {
                if index >= MAX_STRATEGIES {
                    return Err(GameError::StrategyOutOfRange { player, index });
                }
                mask |= 1 << index;
            }
            masks.push(mask);
        }
        Ok(SubsetSpec { masks })
    }

    /// Every strategy of every player.
    pub fn full(game: &Game) -> Self {
        SubsetSpec {
            masks: game.shape().iter().map(|&k| full_mask(k)).collect(),
        }
    }

    /// The single profile `profile`.
    pub fn singleton(profile: &Profile) -> Self {
        SubsetSpec {
            masks: profile.indices().iter().map(|&i| 1u64 << i).collect(),
        }
    }

    /// Looks up labels in `game`; each inner slice lists one player's surviving labels.
    pub fn from_labels(game: &Game, labels: &[&[&str]]) -> Result<Self> {
        if labels.len() != game.player_count() {
            return Err(GameError::SubsetArity {
                expected: game.player_count(),
                found: labels.len(),
            });
        }
        let mut masks = Vec::with_capacity(labels.len());
        for (player, names) in labels.iter().enumerate() {
            let mut mask = 0u64;
            for name in names.iter() {
                let idx = game.strategy_index(player, name)?;
                mask |= 1 << idx;
            }
            masks.push(mask);
        }
        Ok(SubsetSpec { masks })
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    pub fn player_count(&self) -> usize {
        self.masks.len()
    }

    pub fn mask(&self, player: usize) -> u64 {
        self.masks[player]
    }

    pub fn size(&self, player: usize) -> usize {
        self.masks[player].count_ones() as usize
    }

    pub fn contains(&self, player: usize, strategy: usize) -> bool {
        strategy < MAX_STRATEGIES && self.masks[player] >> strategy & 1 == 1
    }

    pub fn contains_profile(&self, profile: &Profile) -> bool {
        profile.len() == self.masks.len()
            && profile
                .indices()
                .iter()
                .enumerate()
                .all(|(p, &s)| self.contains(p, s))
    }

    /// Surviving indices for `player`, ascending.
    pub fn members(&self, player: usize) -> Vec<usize> {
        let mask = self.masks[player];
        (0..MAX_STRATEGIES)
            .filter(|&i| mask >> i & 1 == 1)
            .collect()
    }

    /// Player-wise union (the smallest Cartesian product containing both).
    pub fn union(&self, other: &SubsetSpec) -> SubsetSpec {
        SubsetSpec {
            masks: self
                .masks
                .iter()
                .zip(&other.masks)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn profile_count(&self) -> usize {
        (0..self.masks.len()).map(|p| self.size(p)).product()
    }

    pub fn is_full(&self, game: &Game) -> bool {
        self.masks
            .iter()
            .zip(game.shape())
            .all(|(&m, &k)| m == full_mask(k))
    }

    /// Checks arity, non-emptiness, and range against `game`.
    pub fn validate(&self, game: &Game) -> Result<()> {
        if self.masks.len() != game.player_count() {
            return Err(GameError::SubsetArity {
                expected: game.player_count(),
                found: self.masks.len(),
            });
        }
        for (player, (&mask, &count)) in self.masks.iter().zip(game.shape()).enumerate() {
            if mask == 0 {
                return Err(GameError::EmptySubset { player });
            }
            if mask & !full_mask(count) != 0 {
                return Err(GameError::SubsetOutOfRange { player, count });
            }
        }
        Ok(())
    }

    /// Renders as `{U,D}×{R}` using `game`'s labels.
    pub fn describe(&self, game: &Game) -> String {
        (0..self.masks.len())
            .map(|p| {
                let names: Vec<&str> = self
                    .members(p)
                    .into_iter()
                    .map(|i| game.strategies(p)[i].as_str())
                    .collect();
                format!("{{{}}}", names.join(","))
            })
            .collect::<Vec<_>>()
            .join("×")
    }
}

impl TryFrom<Vec<Vec<usize>>> for SubsetSpec {
    type Error = GameError;

    fn try_from(sets: Vec<Vec<usize>>) -> Result<Self> {
        SubsetSpec::from_indices(sets)
    }
}

impl From<SubsetSpec> for Vec<Vec<usize>> {
    fn from(spec: SubsetSpec) -> Self {
        (0..spec.player_count()).map(|p| spec.members(p)).collect()
    }
}

/// Which of the two definitional clauses a reduction satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionFlavor {
    Plain,
    Dummy,
    QuasiDummy,
    DummyAndQuasi,
}

impl ReductionFlavor {
    pub fn has_dummy(self) -> bool {
        matches!(
            self,
            ReductionFlavor::Dummy | ReductionFlavor::DummyAndQuasi
        )
    }

    pub fn has_quasi_dummy(self) -> bool {
        matches!(
            self,
            ReductionFlavor::QuasiDummy | ReductionFlavor::DummyAndQuasi
        )
    }

    pub fn is_dummy_or_quasi(self) -> bool {
        self != ReductionFlavor::Plain
    }
}

/// Classifies the reduction of `parent` selected by `subsets`.
///
/// Dummy: some player is cut to one strategy and every other player keeps either all of
/// their strategies or exactly one. Quasi-dummy: some player is cut to two strategies and
/// every other player keeps all of theirs or at most two.
pub fn reduction_flavor(parent: &Game, subsets: &SubsetSpec) -> Result<ReductionFlavor> {
    subsets.validate(parent)?;
    let n = parent.player_count();
    let full = |i: usize| subsets.mask(i) == full_mask(parent.strategy_count(i));
    let clause = |target: usize, others_ok: &dyn Fn(usize) -> bool| {
        (0..n).any(|j| subsets.size(j) == target && (0..n).filter(|&i| i != j).all(others_ok))
    };
    let dummy = clause(1, &|i| full(i) || subsets.size(i) == 1);
    let quasi = clause(2, &|i| full(i) || subsets.size(i) <= 2);
    Ok(match (dummy, quasi) {
        (true, true) => ReductionFlavor::DummyAndQuasi,
        (true, false) => ReductionFlavor::Dummy,
        (false, true) => ReductionFlavor::QuasiDummy,
        (false, false) => ReductionFlavor::Plain,
    })
}

/// Restricts the reduction stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlavorFilter {
    All,
    DummyOrQuasi,
    Strict,
}

/// Lazy stream of every subset spec of a game, in ascending player-wise bitmask order
/// (player 1 most significant). There are `∏ (2^|S_i| - 1)` specs before filtering.
#[derive(Debug, Clone)]
pub struct Reductions<'g> {
    game: &'g Game,
    filter: FlavorFilter,
    budget: Option<usize>,
    cursor: Vec<u64>,
    emitted: usize,
    done: bool,
}

impl<'g> Reductions<'g> {
    pub fn new(game: &'g Game, filter: FlavorFilter) -> Self {
        Reductions {
            game,
            filter,
            budget: None,
            cursor: vec![1; game.player_count()],
            emitted: 0,
            done: false,
        }
    }

    /// Caps the stream; the item after the cap is `Err(BudgetExceeded)`.
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    fn advance(&mut self) {
        let mut player = self.cursor.len();
        loop {
            if player == 0 {
                self.done = true;
                return;
            }
            player -= 1;
            let full = full_mask(self.game.strategy_count(player));
            if self.cursor[player] < full {
                self.cursor[player] += 1;
                return;
            }
            self.cursor[player] = 1;
        }
    }

    fn accepts(&self, spec: &SubsetSpec) -> bool {
        match self.filter {
            FlavorFilter::All => true,
            FlavorFilter::DummyOrQuasi => reduction_flavor(self.game, spec)
                .map(ReductionFlavor::is_dummy_or_quasi)
                .unwrap_or(false),
            FlavorFilter::Strict => crate::reduction::strict_certificate(self.game, spec).is_some(),
        }
    }
}

impl Iterator for Reductions<'_> {
    type Item = Result<SubsetSpec>;

    fn next(&mut self) -> Option<Self::Item> {
        while !self.done {
            let spec = SubsetSpec::from_masks(self.cursor.clone());
            self.advance();
            if !self.accepts(&spec) {
                continue;
            }
            if let Some(budget) = self.budget {
                if self.emitted >= budget {
                    self.done = true;
                    return Some(Err(GameError::BudgetExceeded { budget }));
                }
            }
            self.emitted += 1;
            return Some(Ok(spec));
        }
        None
    }
}

pub fn enumerate_reductions(game: &Game, filter: FlavorFilter) -> Reductions<'_> {
    Reductions::new(game, filter)
}
