//! Solution concepts: maps from a game to a set of its profiles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Game, GameId};
use crate::profile::Profile;
use crate::reduction::opponent_bases;

/// Profiles ordered by linear index.
pub type SolutionSet = BTreeSet<Profile>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConceptError {
    #[error("unknown solution concept `{0}`")]
    Unregistered(String),
    #[error("concept `{concept}` is not defined on {player_count}-player games (game {game})")]
    Domain {
        concept: ConceptId,
        player_count: usize,
        game: GameId,
    },
    #[error("concept `{concept}` does not accept parameter `{key}={value}`")]
    BadParam {
        concept: ConceptId,
        key: String,
        value: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConceptId {
    Nash,
    StrongNash,
    Empty,
    AllProfiles,
    NeIndifferenceClosure,
    ParityNe,
    Ex4Phi,
    Ex4PhiPrime,
    Ex5Phi,
}

impl ConceptId {
    pub const ALL: [ConceptId; 9] = [
        ConceptId::Nash,
        ConceptId::StrongNash,
        ConceptId::Empty,
        ConceptId::AllProfiles,
        ConceptId::NeIndifferenceClosure,
        ConceptId::ParityNe,
        ConceptId::Ex4Phi,
        ConceptId::Ex4PhiPrime,
        ConceptId::Ex5Phi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConceptId::Nash => "nash",
            ConceptId::StrongNash => "strong_nash",
            ConceptId::Empty => "empty",
            ConceptId::AllProfiles => "all_profiles",
            ConceptId::NeIndifferenceClosure => "ne_indifference_closure",
            ConceptId::ParityNe => "parity_ne",
            ConceptId::Ex4Phi => "ex4_phi",
            ConceptId::Ex4PhiPrime => "ex4_phi_prime",
            ConceptId::Ex5Phi => "ex5_phi",
        }
    }
}

impl fmt::Display for ConceptId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConceptId {
    type Err = ConceptError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConceptId::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| ConceptError::Unregistered(s.to_string()))
    }
}

/// How a coalition blocks a profile in [`strong_nash`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Blocking {
    /// Every coalition member strictly gains.
    #[default]
    Strict,
    /// Every member weakly gains and at least one strictly gains.
    Weak,
}

/// A registered concept plus its parameters.
///
/// The only parameter currently understood is `blocking=strict|weak` on `strong_nash`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptSpec {
    pub id: ConceptId,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
}

impl ConceptSpec {
    pub fn new(id: ConceptId) -> Self {
        ConceptSpec {
            id,
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: &str) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Parses `id` or `id[key=value]...`, the form produced by `Display`.
    pub fn parse(s: &str) -> Result<Self, ConceptError> {
        let (id, params) = match s.split_once('[') {
            Some((id, rest)) => (id, Some(rest)),
            None => (s, None),
        };
        let mut spec = ConceptSpec::new(id.trim().parse()?);
        if let Some(params) = params {
            let concept = spec.id;
            let bad = |text: &str| ConceptError::BadParam {
                concept,
                key: text.to_string(),
                value: String::new(),
            };
            let body = params.strip_suffix(']').ok_or_else(|| bad(params))?;
            for param in body.split("][") {
                let (key, value) = param.split_once('=').ok_or_else(|| bad(param))?;
                spec = spec.with_param(key.trim(), value.trim());
            }
        }
        spec.blocking()?;
        Ok(spec)
    }

    fn blocking(&self) -> Result<Blocking, ConceptError> {
        let mut blocking = Blocking::Strict;
        for (key, value) in &self.params {
            match (self.id, key.as_str(), value.as_str()) {
                (ConceptId::StrongNash, "blocking", "strict") => blocking = Blocking::Strict,
                (ConceptId::StrongNash, "blocking", "weak") => blocking = Blocking::Weak,
                _ => {
                    return Err(ConceptError::BadParam {
                        concept: self.id,
                        key: key.clone(),
                        value: value.clone(),
                    })
                }
            }
        }
        Ok(blocking)
    }
}

impl fmt::Display for ConceptSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id.as_str())?;
        for (k, v) in &self.params {
            write!(f, "[{k}={v}]")?;
        }
        Ok(())
    }
}

impl From<ConceptId> for ConceptSpec {
    fn from(id: ConceptId) -> Self {
        ConceptSpec::new(id)
    }
}

/// For `player`, whether each profile is a best response to its own `s_{-i}`.
fn best_response_mask(game: &Game, player: usize) -> Vec<bool> {
    let table = game.rank_table(player);
    let stride = game.strides()[player];
    let count = game.strategy_count(player);
    let mut best = vec![false; game.profile_count()];
    for base in opponent_bases(game, player) {
        let top = (0..count)
            .map(|k| table[base + k * stride])
            .min()
            .unwrap_or(0);
        for k in 0..count {
            best[base + k * stride] = table[base + k * stride] == top;
        }
    }
    best
}

/// Pure Nash equilibria: every player best-responds.
pub fn nash(game: &Game) -> SolutionSet {
    let masks: Vec<Vec<bool>> = (0..game.player_count())
        .map(|p| best_response_mask(game, p))
        .collect();
    (0..game.profile_count())
        .filter(|&l| masks.iter().all(|m| m[l]))
        .map(|l| game.profile_at(l))
        .collect()
}

/// Profiles that no coalition can block by a joint deviation (others held fixed).
pub fn strong_nash(game: &Game, blocking: Blocking) -> SolutionSet {
    let n = game.player_count();
    game.profiles()
        .filter(|s| (1u64..1 << n).all(|coalition| !coalition_blocks(game, s, coalition, blocking)))
        .collect()
}

fn coalition_blocks(game: &Game, s: &Profile, coalition: u64, blocking: Blocking) -> bool {
    let members: Vec<usize> = (0..game.player_count())
        .filter(|p| coalition >> p & 1 == 1)
        .collect();
    let axes: Vec<Vec<usize>> = (0..game.player_count())
        .map(|p| {
            if coalition >> p & 1 == 1 {
                (0..game.strategy_count(p)).collect()
            } else {
                vec![s.get(p)]
            }
        })
        .collect();
    crate::profile::ProductIter::new(&axes).any(|t| match blocking {
        Blocking::Strict => members.iter().all(|&i| game.prefers(i, &t, s)),
        Blocking::Weak => {
            members.iter().all(|&i| game.weakly_prefers(i, &t, s))
                && members.iter().any(|&i| game.prefers(i, &t, s))
        }
    })
}

/// Profiles of weakly dominant strategies: each component is a best response against
/// every opponent sub-profile.
pub fn jointly_optimal(game: &Game) -> SolutionSet {
    let stride_of = |p: usize| game.strides()[p];
    let dominant: Vec<Vec<usize>> = (0..game.player_count())
        .map(|p| {
            let best = best_response_mask(game, p);
            let stride = stride_of(p);
            (0..game.strategy_count(p))
                .filter(|&k| opponent_bases(game, p).all(|b| best[b + k * stride]))
                .collect()
        })
        .collect();
    crate::profile::ProductIter::new(&dominant).collect()
}

fn all_profiles(game: &Game) -> SolutionSet {
    game.profiles().collect()
}

fn indifference_closure(game: &Game) -> SolutionSet {
    let equilibria = nash(game);
    let n = game.player_count();
    game.profiles()
        .filter(|s| {
            equilibria.contains(s)
                || equilibria
                    .iter()
                    .any(|t| (0..n).all(|i| game.indifferent(i, s, t)))
        })
        .collect()
}

/// Evaluates a registered concept on `game`.
pub fn eval_concept(spec: &ConceptSpec, game: &Game) -> Result<SolutionSet, ConceptError> {
    let blocking = spec.blocking()?;
    let n = game.player_count();
    let domain = || ConceptError::Domain {
        concept: spec.id,
        player_count: n,
        game: game.id(),
    };
    Ok(match spec.id {
        ConceptId::Nash => nash(game),
        ConceptId::StrongNash => strong_nash(game, blocking),
        ConceptId::Empty => SolutionSet::new(),
        ConceptId::AllProfiles => all_profiles(game),
        ConceptId::NeIndifferenceClosure => indifference_closure(game),
        ConceptId::ParityNe => {
            if n.is_multiple_of(2) {
                nash(game)
            } else {
                SolutionSet::new()
            }
        }
        ConceptId::Ex4Phi => match n {
            1 => all_profiles(game),
            2 => nash(game),
            _ => return Err(domain()),
        },
        ConceptId::Ex4PhiPrime => match n {
            1 => SolutionSet::new(),
            2 => strong_nash(game, blocking),
            _ => return Err(domain()),
        },
        ConceptId::Ex5Phi => {
            if n != 2 {
                return Err(domain());
            }
            let only_r = game.strategies(1).len() == 1 && game.strategies(1)[0] == "R";
            if only_r && game.profile_count() == 2 {
                SolutionSet::new()
            } else {
                let equilibria = nash(game);
                equilibria
                    .iter()
                    .filter(|s| !equilibria.iter().any(|t| game.prefers(0, t, s)))
                    .cloned()
                    .collect()
            }
        }
    })
}

/// Solution set rendered with labels, in linear-index order.
pub fn labelled(game: &Game, set: &SolutionSet) -> Vec<Vec<String>> {
    set.iter().map(|p| game.labels_of(p)).collect()
}

/// `(U,L) (D,R)`; `{}` for the empty set.
pub fn format_set(game: &Game, set: &SolutionSet) -> String {
    if set.is_empty() {
        return "{}".to_string();
    }
    set.iter()
        .map(|p| game.format_profile(p))
        .collect::<Vec<_>>()
        .join(" ")
}
