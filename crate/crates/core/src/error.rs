use thiserror::Error;

/// Errors raised while building or transforming games.
///
/// Player numbers in messages are 1-based; the fields themselves hold 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("expected {expected} players, found {found}")]
    PlayerCount { expected: usize, found: usize },
    #[error("player {} has an empty strategy list", .player + 1)]
    EmptyStrategies { player: usize },
    #[error("player {} lists strategy `{label}` more than once", .player + 1)]
    DuplicateLabel { player: usize, label: String },
    #[error("player {} has {count} strategies; at most {max} are supported", .player + 1)]
    TooManyStrategies {
        player: usize,
        count: usize,
        max: usize,
    },
    #[error("table for player {} has {found} entries, expected {expected}", .player + 1)]
    ShapeMismatch {
        player: usize,
        expected: usize,
        found: usize,
    },
    #[error("payoff for player {} at profile {index} is not a finite number", .player + 1)]
    NonFinitePayoff { player: usize, index: usize },
    #[error("player {} is out of range", .player + 1)]
    PlayerOutOfRange { player: usize },
    #[error("strategy index {index} is out of range for player {}", .player + 1)]
    StrategyOutOfRange { player: usize, index: usize },
    #[error("profile has {found} components, game has {expected} players")]
    ProfileArity { expected: usize, found: usize },
    #[error("subset spec covers {found} players, game has {expected}")]
    SubsetArity { expected: usize, found: usize },
    #[error("subset for player {} is empty", .player + 1)]
    EmptySubset { player: usize },
    #[error("subset for player {} names strategies beyond the first {count}", .player + 1)]
    SubsetOutOfRange { player: usize, count: usize },
    #[error("kept players must form a non-empty proper subset of the {player_count} players")]
    InvalidKeep { player_count: usize },
    #[error("unknown strategy label `{label}` for player {}", .player + 1)]
    UnknownLabel { player: usize, label: String },
    #[error("reduction stream exceeded its budget of {budget} items")]
    BudgetExceeded { budget: usize },
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
