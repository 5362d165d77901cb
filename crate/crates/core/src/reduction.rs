//! Reduction recognition, strict dominance, merging, and player reduction.

use crate::error::{GameError, Result};
use crate::game::Game;
use crate::profile::{ProductIter, Profile};
use crate::subset::SubsetSpec;

/// If `candidate`'s labels form an order-preserving subsequence of `parent`'s for every
/// player, the corresponding subset spec of `parent`.
pub fn label_embedding(candidate: &Game, parent: &Game) -> Option<SubsetSpec> {
    if candidate.player_count() != parent.player_count() {
        return None;
    }
    let mut masks = Vec::with_capacity(parent.player_count());
    for player in 0..parent.player_count() {
        let parent_labels = parent.strategies(player);
        let mut mask = 0u64;
        let mut next = 0usize;
        for label in candidate.strategies(player) {
            let offset = parent_labels[next..].iter().position(|l| l == label)?;
            let idx = next + offset;
            mask |= 1 << idx;
            next = idx + 1;
        }
        masks.push(mask);
    }
    Some(SubsetSpec::from_masks(masks))
}

/// The subset spec under which `candidate` is a reduction of `parent`, if it is one.
///
/// Strategies are matched by label. Because ranks are dense-normalized, preference
/// agreement on every profile pair is the same as equality with the restriction.
pub fn reduction_spec(candidate: &Game, parent: &Game) -> Option<SubsetSpec> {
    let spec = label_embedding(candidate, parent)?;
    let restricted = parent.restrict(&spec).ok()?;
    (restricted.id() == candidate.id()).then_some(spec)
}

pub fn is_reduction(candidate: &Game, parent: &Game) -> bool {
    reduction_spec(candidate, parent).is_some()
}

/// `a` strictly dominates `b` for `player`: better against every opponent sub-profile of
/// the full game. With one player this is a single comparison.
pub fn strictly_dominates(game: &Game, player: usize, a: usize, b: usize) -> Result<bool> {
    game.check_strategy(player, a)?;
    game.check_strategy(player, b)?;
    if a == b {
        return Ok(false);
    }
    let table = game.rank_table(player);
    let stride = game.strides()[player];
    let offset_a = a * stride;
    let offset_b = b * stride;
    Ok(opponent_bases(game, player).all(|base| table[base + offset_a] < table[base + offset_b]))
}

/// Linear indices of the profiles where `player` plays strategy 0, one per `s_{-i}`.
pub(crate) fn opponent_bases(game: &Game, player: usize) -> impl Iterator<Item = usize> + '_ {
    let stride = game.strides()[player];
    let block = stride * game.strategy_count(player);
    (0..game.profile_count()).filter(move |l| l % block < stride)
}

/// One certified removal: `removed` is strictly dominated by the retained `dominator`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Removal {
    pub player: usize,
    pub removed: usize,
    pub dominator: usize,
}

/// For a strict reduction, the first retained dominator of every removed strategy.
/// `None` when nothing is removed or some removed strategy has no retained dominator.
pub fn strict_certificate(parent: &Game, subsets: &SubsetSpec) -> Option<Vec<Removal>> {
    subsets.validate(parent).ok()?;
    let mut removals = Vec::new();
    for player in 0..parent.player_count() {
        let kept = subsets.members(player);
        for removed in (0..parent.strategy_count(player)).filter(|&s| !subsets.contains(player, s))
        {
            let dominator = kept
                .iter()
                .copied()
                .find(|&k| strictly_dominates(parent, player, k, removed).unwrap_or(false))?;
            removals.push(Removal {
                player,
                removed,
                dominator,
            });
        }
    }
    (!removals.is_empty()).then_some(removals)
}

pub fn is_strict_reduction(candidate: &Game, parent: &Game) -> bool {
    reduction_spec(candidate, parent)
        .and_then(|spec| strict_certificate(parent, &spec))
        .is_some()
}

/// Restriction of `parent` to the player-wise union of `a` and `b`.
pub fn merge(parent: &Game, a: &SubsetSpec, b: &SubsetSpec) -> Result<Game> {
    a.validate(parent)?;
    b.validate(parent)?;
    parent.restrict(&a.union(b))
}

/// The game among `keep` when every other player is pinned to their component of `fixed`.
///
/// Kept players are re-indexed in original order; their strategy sets are unchanged.
pub fn reduce_players(game: &Game, keep: &[usize], fixed: &Profile) -> Result<Game> {
    let n = game.player_count();
    game.check_profile(fixed)?;
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    if kept.is_empty() || kept.len() >= n || kept.iter().any(|&p| p >= n) {
        return Err(GameError::InvalidKeep { player_count: n });
    }
    let axes: Vec<Vec<usize>> = (0..n)
        .map(|p| {
            if kept.contains(&p) {
                (0..game.strategy_count(p)).collect()
            } else {
                vec![fixed.get(p)]
            }
        })
        .collect();
    let parents: Vec<usize> = ProductIter::new(&axes)
        .map(|p| game.linear_index(&p))
        .collect();
    let strategies = kept.iter().map(|&p| game.strategies(p).to_vec()).collect();
    let ranks = kept
        .iter()
        .map(|&p| {
            let table = game.rank_table(p);
            parents.iter().map(|&l| table[l]).collect()
        })
        .collect();
    Ok(Game::from_parts(strategies, ranks))
}

/// Components of `profile` belonging to `keep` (sorted), as a profile of the reduced game.
pub fn project_profile(profile: &Profile, keep: &[usize]) -> Profile {
    let mut kept = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    Profile::new(kept.iter().map(|&p| profile.get(p)).collect())
}

/// Every profile of the sub-game selected by `subsets`, as parent-game profiles.
pub fn profiles_within(subsets: &SubsetSpec) -> Vec<Profile> {
    let axes: Vec<Vec<usize>> = (0..subsets.player_count())
        .map(|p| subsets.members(p))
        .collect();
    ProductIter::new(&axes).collect()
}
