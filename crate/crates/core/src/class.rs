//! Finite game classes and the closures that build them.
//!
//! Closures are least fixpoints computed breadth-first from the seeds. Each frontier is
//! sorted by canonical id before expansion and children are merged in that order, so the
//! emitted class and its provenance do not depend on how the frontier is parallelized.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::error::GameError;
use crate::fixtures;
use crate::format::{self, FormatError};
use crate::game::{Game, GameId};
use crate::profile::Profile;
use crate::reduction::reduce_players;
use crate::subset::{enumerate_reductions, FlavorFilter, SubsetSpec};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Debug, Error)]
pub enum ClassError {
    #[error("closure exceeded its budget of {budget} games with {frontier} games on the frontier")]
    BudgetExceeded { budget: usize, frontier: usize },
    #[error("a closure needs at least one seed game")]
    NoSeeds,
    #[error("unknown class name `{0}`")]
    UnknownName(String),
    #[error("class is not d-closed: game {game} lacks its reduction {subsets:?}")]
    NotDClosed { game: GameId, subsets: SubsetSpec },
    #[error("class is not strictly closed: game {game} lacks its strict reduction {subsets:?}")]
    NotStrictlyClosed { game: GameId, subsets: SubsetSpec },
    #[error("provenance of {game} refers to {parent}, which is not in the class")]
    DanglingProvenance { game: GameId, parent: GameId },
    #[error("manifest lists {expected} for file {file}, but the file holds {found}")]
    IdMismatch {
        file: String,
        expected: GameId,
        found: GameId,
    },
    #[error("duplicate game {0} in class directory")]
    Duplicate(GameId),
    #[error("malformed manifest {}: {message}", .path.display())]
    Manifest { path: PathBuf, message: String },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

/// How a game entered a class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Seed,
    DummyReduction {
        parent: GameId,
        subsets: SubsetSpec,
    },
    StrictReduction {
        parent: GameId,
        subsets: SubsetSpec,
    },
    Reduction {
        parent: GameId,
        subsets: SubsetSpec,
    },
    PlayerReduction {
        parent: GameId,
        keep: Vec<usize>,
        fixed: Profile,
    },
}

impl Provenance {
    pub fn parent(&self) -> Option<GameId> {
        match self {
            Provenance::Seed => None,
            Provenance::DummyReduction { parent, .. }
            | Provenance::StrictReduction { parent, .. }
            | Provenance::Reduction { parent, .. }
            | Provenance::PlayerReduction { parent, .. } => Some(*parent),
        }
    }

    /// Regenerates the recorded game from its parent.
    pub fn replay(&self, parent: &Game) -> Result<Game, GameError> {
        match self {
            Provenance::Seed => Ok(parent.clone()),
            Provenance::DummyReduction { subsets, .. }
            | Provenance::StrictReduction { subsets, .. }
            | Provenance::Reduction { subsets, .. } => parent.restrict(subsets),
            Provenance::PlayerReduction { keep, fixed, .. } => reduce_players(parent, keep, fixed),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Seed => f.write_str("seed"),
            Provenance::DummyReduction { parent, .. } => {
                write!(f, "dummy-reduction-of {}", parent.short())
            }
            Provenance::StrictReduction { parent, .. } => {
                write!(f, "strict-reduction-of {}", parent.short())
            }
            Provenance::Reduction { parent, .. } => write!(f, "reduction-of {}", parent.short()),
            Provenance::PlayerReduction { parent, .. } => {
                write!(f, "player-reduction-of {}", parent.short())
            }
        }
    }
}

/// A deduplicated, insertion-ordered set of games with provenance.
#[derive(Debug, Clone, Default)]
pub struct GameClass {
    games: Vec<Game>,
    provenance: Vec<Provenance>,
    index: HashMap<GameId, usize>,
}

impl GameClass {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `game` unless an identical game is already present; returns whether it was added.
    pub fn insert(&mut self, game: Game, provenance: Provenance) -> bool {
        if self.index.contains_key(&game.id()) {
            return false;
        }
        self.index.insert(game.id(), self.games.len());
        self.games.push(game);
        self.provenance.push(provenance);
        true
    }

    pub fn games(&self) -> &[Game] {
        &self.games
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.games.len()
    }

    pub fn is_empty(&self) -> bool {
        self.games.is_empty()
    }

    pub fn contains(&self, id: GameId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn position(&self, id: GameId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn get(&self, id: GameId) -> Option<&Game> {
        self.position(id).map(|i| &self.games[i])
    }

    /// Copy without the game `id` (provenance of the others is left as recorded).
    pub fn without(&self, id: GameId) -> GameClass {
        let mut out = GameClass::new();
        for (g, p) in self.games.iter().zip(&self.provenance) {
            if g.id() != id {
                out.insert(g.clone(), p.clone());
            }
        }
        out
    }

    /// Content hash over member ids in insertion order.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for g in &self.games {
            hasher.update(g.id().to_hex().as_bytes());
        }
        hex::encode(&hasher.finalize()[..8])
    }

    /// Checks that every provenance record resolves and regenerates its game.
    pub fn verify_provenance(&self) -> Result<(), ClassError> {
        for (game, prov) in self.games.iter().zip(&self.provenance) {
            let Some(parent_id) = prov.parent() else {
                continue;
            };
            let parent = self.get(parent_id).ok_or(ClassError::DanglingProvenance {
                game: game.id(),
                parent: parent_id,
            })?;
            if prov.replay(parent)?.id() != game.id() {
                return Err(ClassError::DanglingProvenance {
                    game: game.id(),
                    parent: parent_id,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClosureKind {
    Dummy,
    Strict,
}

fn fixpoint(seeds: &[Game], kind: ClosureKind, budget: usize) -> Result<GameClass, ClassError> {
    if seeds.is_empty() {
        return Err(ClassError::NoSeeds);
    }
    let mut class = GameClass::new();
    let mut frontier: Vec<Game> = Vec::new();
    for seed in seeds {
        if class.insert(seed.clone(), Provenance::Seed) {
            frontier.push(seed.clone());
        }
    }
    if class.len() > budget {
        return Err(ClassError::BudgetExceeded {
            budget,
            frontier: frontier.len(),
        });
    }
    let filter = match kind {
        ClosureKind::Dummy => FlavorFilter::DummyOrQuasi,
        ClosureKind::Strict => FlavorFilter::Strict,
    };
    while !frontier.is_empty() {
        frontier.sort_by_key(Game::id);
        let expanded: Vec<Vec<(Game, Provenance)>> = frontier
            .par_iter()
            .map(|parent| {
                enumerate_reductions(parent, filter)
                    .map(|spec| {
                        let spec = spec?;
                        let child = parent.restrict(&spec)?;
                        let prov = match kind {
                            ClosureKind::Dummy => Provenance::DummyReduction {
                                parent: parent.id(),
                                subsets: spec,
                            },
                            ClosureKind::Strict => Provenance::StrictReduction {
                                parent: parent.id(),
                                subsets: spec,
                            },
                        };
                        Ok((child, prov))
                    })
                    .collect::<Result<Vec<_>, GameError>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (child, prov) in expanded.into_iter().flatten() {
            if class.insert(child.clone(), prov) {
                next.push(child);
                if class.len() > budget {
                    return Err(ClassError::BudgetExceeded {
                        budget,
                        frontier: next.len(),
                    });
                }
            }
        }
        frontier = next;
    }
    Ok(class)
}

/// Least class containing `seeds` and every dummy or quasi-dummy reduction of its members.
pub fn d_closure(seeds: &[Game], budget: usize) -> Result<GameClass, ClassError> {
    fixpoint(seeds, ClosureKind::Dummy, budget)
}

/// Least class containing `seeds` and every strict reduction of its members.
pub fn strict_closure(seeds: &[Game], budget: usize) -> Result<GameClass, ClassError> {
    fixpoint(seeds, ClosureKind::Strict, budget)
}

/// `seed` and all of its reductions.
pub fn reduction_closure(seed: &Game, budget: usize) -> Result<GameClass, ClassError> {
    let mut class = GameClass::new();
    class.insert(seed.clone(), Provenance::Seed);
    for spec in enumerate_reductions(seed, FlavorFilter::All) {
        let spec = spec?;
        let child = seed.restrict(&spec)?;
        class.insert(
            child,
            Provenance::Reduction {
                parent: seed.id(),
                subsets: spec,
            },
        );
        if class.len() > budget {
            return Err(ClassError::BudgetExceeded {
                budget,
                frontier: 0,
            });
        }
    }
    Ok(class)
}

/// Adds every one-player game obtained by pinning all but one player of `game`.
fn add_one_player_games(class: &mut GameClass, game: &Game) -> Result<(), ClassError> {
    for player in 0..game.player_count() {
        for fixed in game.profiles() {
            let reduced = reduce_players(game, &[player], &fixed)?;
            class.insert(
                reduced,
                Provenance::PlayerReduction {
                    parent: game.id(),
                    keep: vec![player],
                    fixed,
                },
            );
        }
    }
    Ok(())
}

/// Named classes used by the reproduction suite.
pub const CLASS_NAMES: &[&str] = &[
    "pd_dclosed",
    "ex2_dclosed",
    "ex3_cons",
    "ex4",
    "ex5",
    "ex5_dclosed",
    "three_player_dclosed",
    "one_player_strict",
];

pub fn build_named_class(name: &str, budget: usize) -> Result<GameClass, ClassError> {
    match name {
        "pd_dclosed" => d_closure(&[fixtures::prisoners_dilemma()], budget),
        "ex2_dclosed" => d_closure(&[fixtures::ex2()], budget),
        "ex5_dclosed" => d_closure(&[fixtures::ex5()], budget),
        "three_player_dclosed" => d_closure(&[fixtures::three_player()], budget),
        "one_player_strict" => strict_closure(&[fixtures::one_player_chain()], budget),
        "ex3_cons" => {
            let g = fixtures::ex2();
            let mut class = GameClass::new();
            class.insert(g.clone(), Provenance::Seed);
            add_one_player_games(&mut class, &g)?;
            Ok(class)
        }
        "ex4" => {
            let g = fixtures::ex2();
            let mut class = reduction_closure(&g, budget)?;
            add_one_player_games(&mut class, &g)?;
            Ok(class)
        }
        "ex5" => reduction_closure(&fixtures::ex5(), budget),
        other => Err(ClassError::UnknownName(other.to_string())),
    }
}

/// Every dummy or quasi-dummy reduction of every member is present.
pub fn audit_d_closed(class: &GameClass) -> Result<(), ClassError> {
    audit(class, FlavorFilter::DummyOrQuasi)
}

/// Every strict reduction of every member is present.
pub fn audit_strictly_closed(class: &GameClass) -> Result<(), ClassError> {
    audit(class, FlavorFilter::Strict)
}

fn audit(class: &GameClass, filter: FlavorFilter) -> Result<(), ClassError> {
    for game in class.games() {
        for spec in enumerate_reductions(game, filter) {
            let spec = spec?;
            if !class.contains(game.restrict(&spec)?.id()) {
                return Err(match filter {
                    FlavorFilter::Strict => ClassError::NotStrictlyClosed {
                        game: game.id(),
                        subsets: spec,
                    },
                    _ => ClassError::NotDClosed {
                        game: game.id(),
                        subsets: spec,
                    },
                });
            }
        }
    }
    Ok(())
}

/// Manifest stored next to the game files of a class directory.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassManifest {
    pub name: String,
    pub mode: String,
    pub budget: usize,
    pub members: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub id: GameId,
    pub provenance: Provenance,
}

pub const MANIFEST_FILE: &str = "manifest.json";

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ClassError + '_ {
    move |source| ClassError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Writes `class` under `root/<digest>/` and returns that directory.
pub fn write_class_dir(
    class: &GameClass,
    root: &Path,
    name: &str,
    mode: &str,
    budget: usize,
) -> Result<PathBuf, ClassError> {
    let dir = root.join(class.digest());
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    let mut members = Vec::with_capacity(class.len());
    for (i, (game, prov)) in class.games().iter().zip(class.provenance()).enumerate() {
        let file = format!("{:04}-{}.json", i, game.id().short());
        format::write_game(&dir.join(&file), game)?;
        members.push(ManifestEntry {
            file,
            id: game.id(),
            provenance: prov.clone(),
        });
    }
    let manifest = ClassManifest {
        name: name.to_string(),
        mode: mode.to_string(),
        budget,
        members,
    };
    let path = dir.join(MANIFEST_FILE);
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(dir)
}

pub fn read_class_dir(dir: &Path) -> Result<(GameClass, ClassManifest), ClassError> {
    let path = dir.join(MANIFEST_FILE);
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let manifest: ClassManifest =
        serde_json::from_str(&text).map_err(|e| ClassError::Manifest {
            path: path.clone(),
            message: e.to_string(),
        })?;
    let mut class = GameClass::new();
    for entry in &manifest.members {
        let game = format::read_game(&dir.join(&entry.file))?;
        if game.id() != entry.id {
            return Err(ClassError::IdMismatch {
                file: entry.file.clone(),
                expected: entry.id,
                found: game.id(),
            });
        }
        if !class.insert(game, entry.provenance.clone()) {
            return Err(ClassError::Duplicate(entry.id));
        }
    }
    Ok((class, manifest))
}
