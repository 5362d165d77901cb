//! Mechanized constructions behind the Nash characterization.
//!
//! Each construction builds the concrete games a proof step talks about and records every
//! proof obligation as a named, checked step.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{
    reduction_relation, Axiom, AxiomError, AxiomVerdict, Checker, LabelProfile, Outcome,
};
use crate::class::{audit_d_closed, audit_strictly_closed, ClassError, GameClass};
use crate::concepts::{eval_concept, jointly_optimal, nash, ConceptError, ConceptId, ConceptSpec};
use crate::error::GameError;
use crate::game::{Game, GameId};
use crate::oracle::nash_by_deviation;
use crate::profile::Profile;
use crate::reduction::{is_reduction, is_strict_reduction, merge};
use crate::subset::{reduction_flavor, SubsetSpec};

#[derive(Debug, Error)]
pub enum TheoremError {
    #[error("profile {0} is not a solution of the game under this concept")]
    NotASolution(String),
    #[error(
        "profile {0} is a Nash equilibrium; the construction needs a non-equilibrium solution"
    )]
    IsNash(String),
    #[error("profile {0} is not a Nash equilibrium")]
    NotNash(String),
    #[error("game {0} does not have exactly one player")]
    NotOnePlayer(GameId),
    #[error(transparent)]
    Concept(#[from] ConceptError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Axiom(#[from] AxiomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructedGame {
    pub role: String,
    pub id: GameId,
    pub subsets: SubsetSpec,
    pub shape: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub game: GameId,
    pub profile: LabelProfile,
    pub games: Vec<ConstructedGame>,
    pub steps: Vec<Step>,
    /// Axioms the concept was found to violate; filled by the deviation gadget only.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violated: Vec<Axiom>,
}

impl ConstructionReport {
    fn new(construction: &str, game: &Game, profile: &Profile) -> Self {
        ConstructionReport {
            construction: construction.to_string(),
            game: game.id(),
            profile: game.labels_of(profile),
            games: Vec::new(),
            steps: Vec::new(),
            violated: Vec::new(),
        }
    }

    fn step(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.steps.push(Step {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn record(
        &mut self,
        role: impl Into<String>,
        parent: &Game,
        game: &Game,
        subsets: &SubsetSpec,
    ) {
        self.games.push(ConstructedGame {
            role: role.into(),
            id: game.id(),
            subsets: subsets.clone(),
            shape: subsets.describe(parent),
        });
    }

    pub fn passed(&self) -> bool {
        self.steps.iter().all(|s| s.passed)
    }

    pub fn outcome(&self) -> Outcome {
        if self.passed() {
            Outcome::Pass
        } else {
            Outcome::Violated
        }
    }
}

fn spec_fixing_others(game: &Game, s: &Profile, player: usize, own: u64) -> SubsetSpec {
    SubsetSpec::from_masks(
        (0..game.player_count())
            .map(|i| if i == player { own } else { 1u64 << s.get(i) })
            .collect(),
    )
}

/// Takes a non-equilibrium solution `s` of `game` and builds the two-game gadget showing
/// that the concept cannot satisfy IIS, ISDS, and JO together.
///
/// The deviating pair `(j, t_j)` is the first in (player, strategy index) order.
pub fn lemma1a_witness(
    spec: &ConceptSpec,
    game: &Game,
    s: &Profile,
) -> Result<ConstructionReport, TheoremError> {
    game.check_profile(s)?;
    let shown = game.format_profile(s);
    let solutions = eval_concept(spec, game)?;
    if !solutions.contains(s) {
        return Err(TheoremError::NotASolution(shown));
    }
    let (j, t) = (0..game.player_count())
        .flat_map(|j| (0..game.strategy_count(j)).map(move |t| (j, t)))
        .find(|&(j, t)| game.prefers(j, &s.with(j, t), s))
        .ok_or_else(|| TheoremError::IsNash(shown.clone()))?;

    let mut report = ConstructionReport::new("lemma1a", game, s);
    let deviation = s.with(j, t);
    report.step(
        "profitable deviation",
        true,
        format!(
            "player {} prefers {} to {}",
            j + 1,
            game.format_profile(&deviation),
            shown
        ),
    );

    let spec_pair = spec_fixing_others(game, s, j, (1u64 << s.get(j)) | (1u64 << t));
    let spec_single = spec_fixing_others(game, s, j, 1u64 << t);
    let g_pair = game.restrict(&spec_pair)?;
    let g_single = game.restrict(&spec_single)?;
    report.record("G'", game, &g_pair, &spec_pair);
    report.record("G''", game, &g_single, &spec_single);

    for (role, sub, g) in [
        ("G'", &spec_pair, &g_pair),
        ("G''", &spec_single, &g_single),
    ] {
        let flavor = reduction_flavor(game, sub)?;
        report.step(
            format!("{role} is a dummy or quasi-dummy reduction of G"),
            flavor.is_dummy_or_quasi() && is_reduction(g, game),
            format!("{} ({flavor:?})", sub.describe(game)),
        );
    }
    report.step(
        "G'' is a strict reduction of G'",
        is_strict_reduction(&g_single, &g_pair),
        format!(
            "{} strictly beats {} against the fixed opponents",
            game.strategies(j)[t],
            game.strategies(j)[s.get(j)]
        ),
    );
    let only = g_single.profile_at(0);
    let jo_set = jointly_optimal(&g_single);
    report.step(
        "every player in G'' is a dummy, so its jointly optimal set is its single profile",
        jo_set.len() == 1 && jo_set.contains(&only),
        g_single.format_profile(&only),
    );

    let phi_pair = eval_concept(spec, &g_pair)?;
    let phi_single = eval_concept(spec, &g_single)?;
    let labels = |g: &Game, set: &crate::SolutionSet| -> BTreeSet<LabelProfile> {
        set.iter().map(|p| g.labels_of(p)).collect()
    };
    let jo_holds = jo_set.is_subset(&phi_single);
    let isds_holds = labels(&g_pair, &phi_pair) == labels(&g_single, &phi_single);
    let s_in_pair = g_pair.profile_from_labels(&game.labels_of(s))?;
    let iis_holds = phi_pair.contains(&s_in_pair);
    for (axiom, holds) in [
        (Axiom::Jo, jo_holds),
        (Axiom::Isds, isds_holds),
        (Axiom::Iis, iis_holds),
    ] {
        if !holds {
            report.violated.push(axiom);
        }
    }
    report.step(
        "at least one of JO on G'', ISDS on (G', G''), IIS on (G, G') fails",
        !report.violated.is_empty(),
        format!(
            "violated: {}",
            report
                .violated
                .iter()
                .map(|a| a.as_str())
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    Ok(report)
}

/// Builds the sequences `G^1..G^n` and `H^1..H^{n-1}` that carry an equilibrium `s` of
/// `game` up to `game` itself through repeated merges.
///
/// With one player the report holds the single JO membership step.
pub fn lemma1b_construct(game: &Game, s: &Profile) -> Result<ConstructionReport, TheoremError> {
    game.check_profile(s)?;
    let shown = game.format_profile(s);
    if !nash(game).contains(s) {
        return Err(TheoremError::NotNash(shown));
    }
    let n = game.player_count();
    let mut report = ConstructionReport::new("lemma1b", game, s);
    if n == 1 {
        report.step(
            "s is jointly optimal in the one-player game",
            jointly_optimal(game).contains(s),
            shown,
        );
        return Ok(report);
    }

    let full = SubsetSpec::full(game);
    let mut singles = Vec::with_capacity(n);
    for k in 0..n {
        let sub = spec_fixing_others(game, s, k, full.mask(k));
        let g_k = game.restrict(&sub)?;
        let role = format!("G^{}", k + 1);
        let flavor = reduction_flavor(game, &sub)?;
        report.step(
            format!("{role} is a reduction of G with a dummy player"),
            flavor.has_dummy() && is_reduction(&g_k, game),
            sub.describe(game),
        );
        let inside = g_k.profile_from_labels(&game.labels_of(s))?;
        report.step(
            format!("s is jointly optimal in {role}"),
            sub.contains_profile(s) && jointly_optimal(&g_k).contains(&inside),
            g_k.format_profile(&inside),
        );
        report.record(role, game, &g_k, &sub);
        singles.push(sub);
    }

    let mut merged = singles[0].clone();
    for (l, single) in singles.iter().enumerate().skip(1) {
        let h = merge(game, &merged, single)?;
        merged = merged.union(single);
        let role = format!("H^{l}");
        // players 1..=l+1 keep everything, the rest stay at s
        let expected = SubsetSpec::from_masks(
            (0..n)
                .map(|i| {
                    if i <= l {
                        full.mask(i)
                    } else {
                        1u64 << s.get(i)
                    }
                })
                .collect(),
        );
        report.step(
            format!("{role} strategy sets are the player-wise union"),
            merged == expected && h.id() == game.restrict(&expected)?.id(),
            merged.describe(game),
        );
        report.step(
            format!("s lies in {role}"),
            merged.contains_profile(s),
            shown.clone(),
        );
        if l < n - 1 {
            let flavor = reduction_flavor(game, &merged)?;
            report.step(
                format!("{role} is a reduction of G with a dummy player"),
                flavor.has_dummy() && is_reduction(&h, game),
                format!("{flavor:?}"),
            );
        } else {
            report.step(
                format!("{role} equals G"),
                h.id() == game.id(),
                h.id().short(),
            );
        }
        report.record(role, game, &h, &merged);
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub verdicts: Vec<AxiomVerdict>,
    pub games_checked: usize,
    pub oracle_mismatches: Vec<GameId>,
}

impl Theorem1Report {
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(AxiomVerdict::passed) && self.oracle_mismatches.is_empty()
    }
}

/// Audits d-closedness, runs the four core checks on `nash`, and cross-checks every
/// equilibrium set against the brute-force oracle.
pub fn verify_theorem1(class: &GameClass) -> Result<Theorem1Report, TheoremError> {
    audit_d_closed(class)?;
    let spec = ConceptSpec::new(ConceptId::Nash);
    let checker = Checker::new(&spec, class)?;
    let verdicts = Axiom::CORE
        .iter()
        .map(|&a| checker.check(a))
        .collect::<Result<Vec<_>, _>>()?;
    let oracle_mismatches = class
        .games()
        .iter()
        .enumerate()
        .filter(|(i, g)| checker.solutions(*i) != &nash_by_deviation(g))
        .map(|(_, g)| g.id())
        .collect();
    Ok(Theorem1Report {
        verdicts,
        games_checked: class.len(),
        oracle_mismatches,
    })
}

/// Replay of the one-player part-(a) argument for one non-maximal solution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalReplay {
    pub game: GameId,
    pub removed: String,
    pub is_strict_reduction: bool,
    pub in_class: bool,
    pub solution_sets_differ: bool,
}

impl RemovalReplay {
    pub fn reproduced(&self) -> bool {
        self.is_strict_reduction && self.in_class && self.solution_sets_differ
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePlayerFinding {
    pub concept: String,
    /// Set when the concept is undefined on the class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    pub isds_passed: bool,
    pub jo_passed: bool,
    pub equals_nash: bool,
    /// `φ(G) ⊆ NE(G)` for all games; evaluated only when ISDS passes.
    pub within_nash: Option<bool>,
    /// `NE(G) ⊆ φ(G)` for all games; evaluated only when JO passes.
    pub covers_nash: Option<bool>,
    pub replays: Vec<RemovalReplay>,
}

impl OnePlayerFinding {
    /// The lemma's implications hold and every replay reproduces its ISDS violation.
    pub fn consistent(&self) -> bool {
        self.skipped.is_some()
            || (self.within_nash != Some(false)
                && self.covers_nash != Some(false)
                && self.replays.iter().all(RemovalReplay::reproduced)
                && (self.equals_nash || !(self.isds_passed && self.jo_passed)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePlayerReport {
    pub findings: Vec<OnePlayerFinding>,
}

impl OnePlayerReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(OnePlayerFinding::consistent)
    }

    pub fn finding(&self, id: ConceptId) -> Option<&OnePlayerFinding> {
        self.findings.iter().find(|f| f.concept == id.as_str())
    }
}

/// Checks the one-player lemma for every registered concept on a strictly closed class of
/// one-player games.
pub fn verify_one_player_lemma(class: &GameClass) -> Result<OnePlayerReport, TheoremError> {
    if let Some(g) = class.games().iter().find(|g| g.player_count() != 1) {
        return Err(TheoremError::NotOnePlayer(g.id()));
    }
    audit_strictly_closed(class)?;
    let relation = reduction_relation(class);
    let mut findings = Vec::new();
    for id in ConceptId::ALL {
        let spec = ConceptSpec::new(id);
        let checker = match Checker::with_relation(&spec, class, relation.clone()) {
            Ok(c) => c,
            Err(AxiomError::Concept(e @ ConceptError::Domain { .. })) => {
                findings.push(OnePlayerFinding {
                    concept: id.as_str().to_string(),
                    skipped: Some(e.to_string()),
                    isds_passed: false,
                    jo_passed: false,
                    equals_nash: false,
                    within_nash: None,
                    covers_nash: None,
                    replays: Vec::new(),
                });
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let isds_passed = checker.check(Axiom::Isds)?.passed();
        let jo_passed = checker.check(Axiom::Jo)?.passed();
        let mut within = true;
        let mut covers = true;
        let mut equals = true;
        let mut replays = Vec::new();
        for (i, game) in class.games().iter().enumerate() {
            let phi = checker.solutions(i);
            let ne = nash(game);
            within &= phi.is_subset(&ne);
            covers &= ne.is_subset(phi);
            equals &= phi == &ne;
            for s in phi.difference(&ne) {
                let rest = SubsetSpec::from_masks(vec![
                    SubsetSpec::full(game).mask(0) & !(1u64 << s.get(0)),
                ]);
                let reduced = game.restrict(&rest)?;
                let in_class = class.contains(reduced.id());
                // s cannot survive in the reduction, so a solution set containing it differs
                let differs = match class.position(reduced.id()) {
                    Some(ri) => {
                        let there: BTreeSet<LabelProfile> = checker
                            .solutions(ri)
                            .iter()
                            .map(|p| reduced.labels_of(p))
                            .collect();
                        let here: BTreeSet<LabelProfile> =
                            phi.iter().map(|p| game.labels_of(p)).collect();
                        here != there
                    }
                    None => false,
                };
                replays.push(RemovalReplay {
                    game: game.id(),
                    removed: game.strategies(0)[s.get(0)].clone(),
                    is_strict_reduction: is_strict_reduction(&reduced, game),
                    in_class,
                    solution_sets_differ: differs,
                });
            }
        }
        findings.push(OnePlayerFinding {
            concept: id.as_str().to_string(),
            skipped: None,
            isds_passed,
            jo_passed,
            equals_nash: equals,
            within_nash: isds_passed.then_some(within),
            covers_nash: jo_passed.then_some(covers),
            replays,
        });
    }
    Ok(OnePlayerReport { findings })
}
