//! Exhaustive axiom checks over a finite game class.
//!
//! Every quantifier ranges over games present in the class. Scans run in class order
//! (games, then their in-class reductions, then profiles in linear-index order) and report
//! the first witness in that order; per-game work is spread over rayon but the reported
//! witness is always the order-minimal one.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::class::GameClass;
use crate::concepts::{eval_concept, jointly_optimal, ConceptError, ConceptSpec, SolutionSet};
use crate::error::GameError;
use crate::game::{Game, GameId};
use crate::profile::Profile;
use crate::reduction::{
    is_reduction, is_strict_reduction, label_embedding, project_profile, reduce_players,
    strict_certificate,
};
use crate::subset::SubsetSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error(transparent)]
    Concept(#[from] ConceptError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("witness refers to game {0}, which is not in the class")]
    MissingGame(GameId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    Iis,
    Mc,
    Isds,
    Jo,
    Cons,
    Cocons,
    Ciis,
}

impl Axiom {
    pub const ALL: [Axiom; 7] = [
        Axiom::Iis,
        Axiom::Mc,
        Axiom::Isds,
        Axiom::Jo,
        Axiom::Cons,
        Axiom::Cocons,
        Axiom::Ciis,
    ];

    /// The four axioms of the Nash characterization.
    pub const CORE: [Axiom; 4] = [Axiom::Iis, Axiom::Mc, Axiom::Isds, Axiom::Jo];

    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::Iis => "iis",
            Axiom::Mc => "mc",
            Axiom::Isds => "isds",
            Axiom::Jo => "jo",
            Axiom::Cons => "cons",
            Axiom::Cocons => "cocons",
            Axiom::Ciis => "ciis",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Axiom {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Axiom::ALL
            .into_iter()
            .find(|a| a.as_str() == lower)
            .ok_or_else(|| AxiomError::UnknownAxiom(s.to_string()))
    }
}

/// The three axioms borrowed from the earlier literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteratureAxiom {
    Cons,
    Cocons,
    Ciis,
}

impl From<LiteratureAxiom> for Axiom {
    fn from(a: LiteratureAxiom) -> Self {
        match a {
            LiteratureAxiom::Cons => Axiom::Cons,
            LiteratureAxiom::Cocons => Axiom::Cocons,
            LiteratureAxiom::Ciis => Axiom::Ciis,
        }
    }
}

/// Profile named by strategy labels, comparable across games.
pub type LabelProfile = Vec<String>;

/// A concrete violation. Games are referenced by canonical id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Witness {
    /// `profile ∈ φ(game)`, survives in `reduction`, but is not in `φ(reduction)`.
    Iis {
        game: GameId,
        reduction: GameId,
        subsets: SubsetSpec,
        profile: LabelProfile,
    },
    /// `profile ∈ φ(left) ∩ φ(right)`, the two merge to `game`, but `profile ∉ φ(game)`.
    Mc {
        game: GameId,
        left: GameId,
        right: GameId,
        left_subsets: SubsetSpec,
        right_subsets: SubsetSpec,
        profile: LabelProfile,
    },
    /// `reduction` is a strict reduction of `game` with a different solution set.
    Isds {
        game: GameId,
        reduction: GameId,
        subsets: SubsetSpec,
        only_in_game: Vec<LabelProfile>,
        only_in_reduction: Vec<LabelProfile>,
    },
    /// `profile` consists of weakly dominant strategies but is not a solution.
    Jo { game: GameId, profile: LabelProfile },
    /// `profile ∈ φ(game)` but its restriction to `kept` is not a solution of `reduced`.
    Cons {
        game: GameId,
        profile: LabelProfile,
        kept: Vec<usize>,
        reduced: GameId,
    },
    /// `profile ∉ φ(game)` although every present player-reduced game accepts it.
    Cocons {
        game: GameId,
        profile: LabelProfile,
        kept_sets: Vec<Vec<usize>>,
    },
    /// `profile ∉ φ(game)` although every present proper reduction containing it accepts it.
    Ciis {
        game: GameId,
        profile: LabelProfile,
        reductions: Vec<GameId>,
    },
}

impl Witness {
    pub fn game(&self) -> GameId {
        match self {
            Witness::Iis { game, .. }
            | Witness::Mc { game, .. }
            | Witness::Isds { game, .. }
            | Witness::Jo { game, .. }
            | Witness::Cons { game, .. }
            | Witness::Cocons { game, .. }
            | Witness::Ciis { game, .. } => *game,
        }
    }

    /// The offending profile, when the witness names a single one.
    pub fn profile(&self) -> Option<&LabelProfile> {
        match self {
            Witness::Iis { profile, .. }
            | Witness::Mc { profile, .. }
            | Witness::Jo { profile, .. }
            | Witness::Cons { profile, .. }
            | Witness::Cocons { profile, .. }
            | Witness::Ciis { profile, .. } => Some(profile),
            Witness::Isds { .. } => None,
        }
    }
}

/// How many quantifier instances had their companion game present in the class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub examined: usize,
    pub absent: usize,
}

impl std::ops::Add for Coverage {
    type Output = Coverage;

    fn add(self, rhs: Coverage) -> Coverage {
        Coverage {
            examined: self.examined + rhs.examined,
            absent: self.absent + rhs.absent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Violated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    axiom: Axiom,
    concept: String,
    result: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coverage: Option<Coverage>,
}

impl AxiomVerdict {
    fn new(axiom: Axiom, spec: &ConceptSpec, witness: Option<Witness>) -> Self {
        AxiomVerdict {
            axiom,
            concept: spec.to_string(),
            result: if witness.is_some() {
                Outcome::Violated
            } else {
                Outcome::Pass
            },
            witness,
            coverage: None,
        }
    }

    fn with_coverage(mut self, coverage: Coverage) -> Self {
        self.coverage = Some(coverage);
        self
    }

    pub fn axiom(&self) -> Axiom {
        self.axiom
    }

    pub fn concept(&self) -> &str {
        &self.concept
    }

    pub fn outcome(&self) -> Outcome {
        self.result
    }

    pub fn passed(&self) -> bool {
        self.result == Outcome::Pass
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.witness.as_ref()
    }

    pub fn coverage(&self) -> Option<Coverage> {
        self.coverage
    }
}

/// Index of `strategy` among the members of `mask`.
fn sub_index(mask: u64, strategy: usize) -> usize {
    (mask & ((1u64 << strategy) - 1)).count_ones() as usize
}

/// Parent-game profile → profile of the reduction selected by `spec`.
fn into_reduction(profile: &Profile, spec: &SubsetSpec) -> Profile {
    Profile::new(
        profile
            .indices()
            .iter()
            .enumerate()
            .map(|(p, &s)| sub_index(spec.mask(p), s))
            .collect(),
    )
}

/// Profile of the reduction selected by `spec` → parent-game profile.
fn into_parent(profile: &Profile, spec: &SubsetSpec) -> Profile {
    Profile::new(
        profile
            .indices()
            .iter()
            .enumerate()
            .map(|(p, &s)| spec.members(p)[s])
            .collect(),
    )
}

/// Solutions and in-class reduction structure for one concept over one class.
pub struct Checker<'c> {
    class: &'c GameClass,
    spec: ConceptSpec,
    solutions: Vec<SolutionSet>,
    /// For each game, `(index, spec)` of every class member that is a reduction of it.
    reductions: Vec<Vec<(usize, SubsetSpec)>>,
}

/// For each member, the in-class games that are reductions of it, in class order.
pub fn reduction_relation(class: &GameClass) -> Vec<Vec<(usize, SubsetSpec)>> {
    let games = class.games();
    games
        .par_iter()
        .map(|parent| {
            games
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    c.player_count() == parent.player_count()
                        && c.profile_count() <= parent.profile_count()
                })
                .filter_map(|(ci, c)| {
                    let spec = label_embedding(c, parent)?;
                    let restricted = parent.restrict(&spec).ok()?;
                    (restricted.id() == c.id()).then_some((ci, spec))
                })
                .collect()
        })
        .collect()
}

impl<'c> Checker<'c> {
    pub fn new(spec: &ConceptSpec, class: &'c GameClass) -> Result<Self, AxiomError> {
        let relation = reduction_relation(class);
        Self::with_relation(spec, class, relation)
    }

    /// Reuses a precomputed [`reduction_relation`] for `class`.
    pub fn with_relation(
        spec: &ConceptSpec,
        class: &'c GameClass,
        reductions: Vec<Vec<(usize, SubsetSpec)>>,
    ) -> Result<Self, AxiomError> {
        let solutions = class
            .games()
            .par_iter()
            .map(|g| eval_concept(spec, g))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Checker {
            class,
            spec: spec.clone(),
            solutions,
            reductions,
        })
    }

    pub fn solutions(&self, index: usize) -> &SolutionSet {
        &self.solutions[index]
    }

    fn game(&self, index: usize) -> &Game {
        &self.class.games()[index]
    }

    pub fn check(&self, axiom: Axiom) -> Result<AxiomVerdict, AxiomError> {
        Ok(match axiom {
            Axiom::Iis => self.iis(),
            Axiom::Mc => self.mc(),
            Axiom::Isds => self.isds(),
            Axiom::Jo => self.jo(),
            Axiom::Cons => self.cons()?,
            Axiom::Cocons => self.cocons()?,
            Axiom::Ciis => self.ciis(),
        })
    }

    fn iis(&self) -> AxiomVerdict {
        let witness = (0..self.class.len()).into_par_iter().find_map_first(|gi| {
            let game = self.game(gi);
            self.reductions[gi].iter().find_map(|(ci, spec)| {
                self.solutions[gi]
                    .iter()
                    .filter(|s| spec.contains_profile(s))
                    .find(|s| !self.solutions[*ci].contains(&into_reduction(s, spec)))
                    .map(|s| Witness::Iis {
                        game: game.id(),
                        reduction: self.game(*ci).id(),
                        subsets: spec.clone(),
                        profile: game.labels_of(s),
                    })
            })
        });
        AxiomVerdict::new(Axiom::Iis, &self.spec, witness)
    }

    fn mc(&self) -> AxiomVerdict {
        let witness = (0..self.class.len()).into_par_iter().find_map_first(|gi| {
            let game = self.game(gi);
            let full = SubsetSpec::full(game);
            let reds = &self.reductions[gi];
            for (a, (li, lspec)) in reds.iter().enumerate() {
                for (ri, rspec) in &reds[a..] {
                    if lspec.union(rspec) != full {
                        continue;
                    }
                    for s_left in &self.solutions[*li] {
                        let s = into_parent(s_left, lspec);
                        if rspec.contains_profile(&s)
                            && self.solutions[*ri].contains(&into_reduction(&s, rspec))
                            && !self.solutions[gi].contains(&s)
                        {
                            return Some(Witness::Mc {
                                game: game.id(),
                                left: self.game(*li).id(),
                                right: self.game(*ri).id(),
                                left_subsets: lspec.clone(),
                                right_subsets: rspec.clone(),
                                profile: game.labels_of(&s),
                            });
                        }
                    }
                }
            }
            None
        });
        AxiomVerdict::new(Axiom::Mc, &self.spec, witness)
    }

    fn isds(&self) -> AxiomVerdict {
        let witness = (0..self.class.len()).into_par_iter().find_map_first(|gi| {
            let game = self.game(gi);
            self.reductions[gi].iter().find_map(|(ci, spec)| {
                strict_certificate(game, spec)?;
                let lifted: SolutionSet = self.solutions[*ci]
                    .iter()
                    .map(|s| into_parent(s, spec))
                    .collect();
                let here = &self.solutions[gi];
                (here != &lifted).then(|| Witness::Isds {
                    game: game.id(),
                    reduction: self.game(*ci).id(),
                    subsets: spec.clone(),
                    only_in_game: here
                        .difference(&lifted)
                        .map(|s| game.labels_of(s))
                        .collect(),
                    only_in_reduction: lifted.difference(here).map(|s| game.labels_of(s)).collect(),
                })
            })
        });
        AxiomVerdict::new(Axiom::Isds, &self.spec, witness)
    }

    fn jo(&self) -> AxiomVerdict {
        let witness = (0..self.class.len()).into_par_iter().find_map_first(|gi| {
            let game = self.game(gi);
            jointly_optimal(game)
                .into_iter()
                .find(|s| !self.solutions[gi].contains(s))
                .map(|s| Witness::Jo {
                    game: game.id(),
                    profile: game.labels_of(&s),
                })
        });
        AxiomVerdict::new(Axiom::Jo, &self.spec, witness)
    }

    /// Non-empty proper player subsets of an `n`-player game, ascending by bitmask.
    fn proper_subgroups(n: usize) -> impl Iterator<Item = Vec<usize>> {
        (1u64..(1u64 << n) - 1).map(move |m| (0..n).filter(|p| m >> p & 1 == 1).collect())
    }

    /// Index of `reduce_players(game, keep, s)` in the class, if present.
    fn player_reduced(
        &self,
        game: &Game,
        keep: &[usize],
        s: &Profile,
    ) -> Result<Option<usize>, GameError> {
        let reduced = reduce_players(game, keep, s)?;
        Ok(self.class.position(reduced.id()))
    }

    fn cons(&self) -> Result<AxiomVerdict, AxiomError> {
        let per_game = (0..self.class.len())
            .into_par_iter()
            .map(|gi| -> Result<(Option<Witness>, Coverage), AxiomError> {
                let game = self.game(gi);
                let mut cov = Coverage::default();
                let mut found = None;
                if game.player_count() < 2 {
                    return Ok((None, cov));
                }
                for s in &self.solutions[gi] {
                    for keep in Self::proper_subgroups(game.player_count()) {
                        match self.player_reduced(game, &keep, s)? {
                            None => cov.absent += 1,
                            Some(ri) => {
                                cov.examined += 1;
                                let inside =
                                    self.solutions[ri].contains(&project_profile(s, &keep));
                                if !inside && found.is_none() {
                                    found = Some(Witness::Cons {
                                        game: game.id(),
                                        profile: game.labels_of(s),
                                        kept: keep.clone(),
                                        reduced: self.game(ri).id(),
                                    });
                                }
                            }
                        }
                    }
                }
                Ok((found, cov))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.fold(Axiom::Cons, per_game))
    }

    fn cocons(&self) -> Result<AxiomVerdict, AxiomError> {
        let per_game = (0..self.class.len())
            .into_par_iter()
            .map(|gi| -> Result<(Option<Witness>, Coverage), AxiomError> {
                let game = self.game(gi);
                let mut cov = Coverage::default();
                let mut found = None;
                if game.player_count() < 2 {
                    return Ok((None, cov));
                }
                for s in game.profiles().filter(|s| !self.solutions[gi].contains(s)) {
                    let mut present = Vec::new();
                    let mut all_accept = true;
                    for keep in Self::proper_subgroups(game.player_count()) {
                        match self.player_reduced(game, &keep, &s)? {
                            None => cov.absent += 1,
                            Some(ri) => {
                                cov.examined += 1;
                                all_accept &=
                                    self.solutions[ri].contains(&project_profile(&s, &keep));
                                present.push(keep);
                            }
                        }
                    }
                    if !present.is_empty() && all_accept && found.is_none() {
                        found = Some(Witness::Cocons {
                            game: game.id(),
                            profile: game.labels_of(&s),
                            kept_sets: present,
                        });
                    }
                }
                Ok((found, cov))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.fold(Axiom::Cocons, per_game))
    }

    fn ciis(&self) -> AxiomVerdict {
        let per_game: Vec<(Option<Witness>, Coverage)> = (0..self.class.len())
            .into_par_iter()
            .map(|gi| {
                let game = self.game(gi);
                let mut cov = Coverage::default();
                let mut found = None;
                if game.profile_count() < 3 {
                    return (None, cov);
                }
                let full = SubsetSpec::full(game);
                let proper: Vec<&(usize, SubsetSpec)> = self.reductions[gi]
                    .iter()
                    .filter(|(_, spec)| *spec != full)
                    .collect();
                for s in game.profiles().filter(|s| !self.solutions[gi].contains(s)) {
                    let containing: Vec<&(usize, SubsetSpec)> = proper
                        .iter()
                        .copied()
                        .filter(|(_, spec)| spec.contains_profile(&s))
                        .collect();
                    if containing.is_empty() {
                        cov.absent += 1;
                        continue;
                    }
                    cov.examined += 1;
                    let accepted = containing
                        .iter()
                        .all(|(ci, spec)| self.solutions[*ci].contains(&into_reduction(&s, spec)));
                    if accepted && found.is_none() {
                        found = Some(Witness::Ciis {
                            game: game.id(),
                            profile: game.labels_of(&s),
                            reductions: containing
                                .iter()
                                .map(|(ci, _)| self.game(*ci).id())
                                .collect(),
                        });
                    }
                }
                (found, cov)
            })
            .collect();
        self.fold(Axiom::Ciis, per_game)
    }

    fn fold(&self, axiom: Axiom, per_game: Vec<(Option<Witness>, Coverage)>) -> AxiomVerdict {
        let coverage = per_game
            .iter()
            .fold(Coverage::default(), |acc, (_, c)| acc + *c);
        let witness = per_game.into_iter().find_map(|(w, _)| w);
        AxiomVerdict::new(axiom, &self.spec, witness).with_coverage(coverage)
    }
}

pub fn check(
    axiom: Axiom,
    spec: &ConceptSpec,
    class: &GameClass,
) -> Result<AxiomVerdict, AxiomError> {
    Checker::new(spec, class)?.check(axiom)
}

pub fn check_iis(spec: &ConceptSpec, class: &GameClass) -> Result<AxiomVerdict, AxiomError> {
    check(Axiom::Iis, spec, class)
}

pub fn check_mc(spec: &ConceptSpec, class: &GameClass) -> Result<AxiomVerdict, AxiomError> {
    check(Axiom::Mc, spec, class)
}

pub fn check_isds(spec: &ConceptSpec, class: &GameClass) -> Result<AxiomVerdict, AxiomError> {
    check(Axiom::Isds, spec, class)
}

pub fn check_jo(spec: &ConceptSpec, class: &GameClass) -> Result<AxiomVerdict, AxiomError> {
    check(Axiom::Jo, spec, class)
}

pub fn check_literature_axiom(
    which: LiteratureAxiom,
    spec: &ConceptSpec,
    class: &GameClass,
) -> Result<AxiomVerdict, AxiomError> {
    check(which.into(), spec, class)
}

// Replay re-derives each clause from the definitions, without the scan's index tables.

fn lookup(class: &GameClass, id: GameId) -> Result<&Game, AxiomError> {
    class.get(id).ok_or(AxiomError::MissingGame(id))
}

fn solved(spec: &ConceptSpec, game: &Game, labels: &[String]) -> Result<Option<bool>, AxiomError> {
    let Ok(profile) = game.profile_from_labels(labels) else {
        return Ok(None);
    };
    Ok(Some(eval_concept(spec, game)?.contains(&profile)))
}

fn labelled_set(spec: &ConceptSpec, game: &Game) -> Result<BTreeSet<LabelProfile>, AxiomError> {
    Ok(eval_concept(spec, game)?
        .iter()
        .map(|s| game.labels_of(s))
        .collect())
}

fn proper_subgroups(n: usize) -> Vec<Vec<usize>> {
    Checker::proper_subgroups(n).collect()
}

/// Re-evaluates a witness clause by clause; `true` iff the violation is reproduced.
pub fn replay_witness(
    spec: &ConceptSpec,
    witness: &Witness,
    class: &GameClass,
) -> Result<bool, AxiomError> {
    Ok(match witness {
        Witness::Iis {
            game,
            reduction,
            profile,
            ..
        } => {
            let g = lookup(class, *game)?;
            let r = lookup(class, *reduction)?;
            is_reduction(r, g)
                && solved(spec, g, profile)? == Some(true)
                && solved(spec, r, profile)? == Some(false)
        }
        Witness::Mc {
            game,
            left,
            right,
            profile,
            ..
        } => {
            let g = lookup(class, *game)?;
            let l = lookup(class, *left)?;
            let r = lookup(class, *right)?;
            let merged = (0..g.player_count()).all(|p| {
                let union: BTreeSet<&String> =
                    l.strategies(p).iter().chain(r.strategies(p)).collect();
                union == g.strategies(p).iter().collect()
            });
            is_reduction(l, g)
                && is_reduction(r, g)
                && merged
                && solved(spec, l, profile)? == Some(true)
                && solved(spec, r, profile)? == Some(true)
                && solved(spec, g, profile)? == Some(false)
        }
        Witness::Isds {
            game,
            reduction,
            only_in_game,
            only_in_reduction,
            ..
        } => {
            let g = lookup(class, *game)?;
            let r = lookup(class, *reduction)?;
            let here = labelled_set(spec, g)?;
            let there = labelled_set(spec, r)?;
            let a: Vec<LabelProfile> = here.difference(&there).cloned().collect();
            let b: Vec<LabelProfile> = there.difference(&here).cloned().collect();
            is_strict_reduction(r, g)
                && here != there
                && &a == only_in_game
                && &b == only_in_reduction
        }
        Witness::Jo { game, profile } => {
            let g = lookup(class, *game)?;
            let s = g.profile_from_labels(profile)?;
            jointly_optimal(g).contains(&s) && !eval_concept(spec, g)?.contains(&s)
        }
        Witness::Cons {
            game,
            profile,
            kept,
            reduced,
        } => {
            let g = lookup(class, *game)?;
            let s = g.profile_from_labels(profile)?;
            let r = reduce_players(g, kept, &s)?;
            r.id() == *reduced
                && class.contains(r.id())
                && eval_concept(spec, g)?.contains(&s)
                && !eval_concept(spec, &r)?.contains(&project_profile(&s, kept))
        }
        Witness::Cocons {
            game,
            profile,
            kept_sets,
        } => {
            let g = lookup(class, *game)?;
            let s = g.profile_from_labels(profile)?;
            let mut present = Vec::new();
            let mut all_accept = true;
            for keep in proper_subgroups(g.player_count()) {
                let r = reduce_players(g, &keep, &s)?;
                if class.contains(r.id()) {
                    all_accept &= eval_concept(spec, &r)?.contains(&project_profile(&s, &keep));
                    present.push(keep);
                }
            }
            g.player_count() >= 2
                && !eval_concept(spec, g)?.contains(&s)
                && !present.is_empty()
                && all_accept
                && &present == kept_sets
        }
        Witness::Ciis {
            game,
            profile,
            reductions,
        } => {
            let g = lookup(class, *game)?;
            let mut containing = Vec::new();
            let mut all_accept = true;
            for r in class.games() {
                if r.id() == g.id() || !is_reduction(r, g) {
                    continue;
                }
                if let Some(inside) = solved(spec, r, profile)? {
                    all_accept &= inside;
                    containing.push(r.id());
                }
            }
            g.profile_count() >= 3
                && solved(spec, g, profile)? == Some(false)
                && !containing.is_empty()
                && all_accept
                && &containing == reductions
        }
    })
}

/// Replays the witness of a violated verdict; passing verdicts replay trivially.
pub fn replay(
    spec: &ConceptSpec,
    verdict: &AxiomVerdict,
    class: &GameClass,
) -> Result<bool, AxiomError> {
    match verdict.witness() {
        Some(w) => replay_witness(spec, w, class),
        None => Ok(verdict.passed()),
    }
}

/// One-line human rendering of a witness, using the class to recover labels.
pub fn describe_witness(witness: &Witness, class: &GameClass) -> String {
    let shape = |id: GameId| {
        class
            .get(id)
            .map(|g| SubsetSpec::full(g).describe(g))
            .unwrap_or_else(|| id.short())
    };
    let prof = |p: &LabelProfile| format!("({})", p.join(","));
    match witness {
        Witness::Iis {
            game,
            reduction,
            profile,
            ..
        } => format!(
            "{} solves {} but not its reduction {}",
            prof(profile),
            shape(*game),
            shape(*reduction)
        ),
        Witness::Mc {
            game,
            left,
            right,
            profile,
            ..
        } => format!(
            "{} solves {} and {} but not their merge {}",
            prof(profile),
            shape(*left),
            shape(*right),
            shape(*game)
        ),
        Witness::Isds {
            game,
            reduction,
            only_in_game,
            only_in_reduction,
            ..
        } => format!(
            "strict reduction {} of {} changes the solution set (only in game: {}; only in reduction: {})",
            shape(*reduction),
            shape(*game),
            only_in_game.iter().map(prof).collect::<Vec<_>>().join(" "),
            only_in_reduction.iter().map(prof).collect::<Vec<_>>().join(" ")
        ),
        Witness::Jo { game, profile } => format!(
            "{} is jointly optimal in {} but not a solution",
            prof(profile),
            shape(*game)
        ),
        Witness::Cons {
            game,
            profile,
            kept,
            ..
        } => format!(
            "{} solves {} but its restriction to players {:?} does not solve the reduced game",
            prof(profile),
            shape(*game),
            kept.iter().map(|p| p + 1).collect::<Vec<_>>()
        ),
        Witness::Cocons { game, profile, .. } => format!(
            "{} is accepted by every present player-reduced game but does not solve {}",
            prof(profile),
            shape(*game)
        ),
        Witness::Ciis {
            game,
            profile,
            reductions,
        } => format!(
            "{} solves all {} proper reductions containing it but not {}",
            prof(profile),
            reductions.len(),
            shape(*game)
        ),
    }
}
