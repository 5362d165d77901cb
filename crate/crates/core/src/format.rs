//! Game file format.
//!
//! A JSON document with `players`, `strategies` (one label list per player), and exactly
//! one of `payoffs` or `ranks`: per player a flat table in linear-index order, player 1
//! most significant, so profile `(i1, ..., in)` sits at `((i1·|S2| + i2)·|S3| + ...)`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::GameError;
use crate::game::{build_game, Game, Tables};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: GameError },
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", .path.display())]
    InFile {
        path: PathBuf,
        source: Box<FormatError>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameFile {
    players: usize,
    strategies: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    payoffs: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ranks: Option<Vec<Vec<u64>>>,
}

/// 1-based line of the first occurrence of `"key"`, or 1.
fn key_line(text: &str, key: &str) -> usize {
    let needle = format!("\"{key}\"");
    text.lines()
        .position(|l| l.contains(&needle))
        .map_or(1, |i| i + 1)
}

pub fn parse_game(text: &str) -> Result<Game, FormatError> {
    let file: GameFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    })?;
    let tables = match (file.payoffs, file.ranks) {
        (Some(p), None) => Tables::Payoffs(p),
        (None, Some(r)) => Tables::Ranks(r),
        (Some(_), Some(_)) => {
            return Err(FormatError::Schema {
                line: key_line(text, "ranks"),
                message: "give either `payoffs` or `ranks`, not both".into(),
            })
        }
        (None, None) => {
            return Err(FormatError::Schema {
                line: 1,
                message: "missing `payoffs` or `ranks`".into(),
            })
        }
    };
    let table_key = match tables {
        Tables::Payoffs(_) => "payoffs",
        Tables::Ranks(_) => "ranks",
    };
    build_game(file.players, file.strategies, tables).map_err(|source| {
        let key = match source {
            GameError::NoPlayers | GameError::PlayerCount { .. } => "players",
            GameError::ShapeMismatch { .. } | GameError::NonFinitePayoff { .. } => table_key,
            _ => "strategies",
        };
        FormatError::Invalid {
            line: key_line(text, key),
            source,
        }
    })
}

/// serde_json appends " at line L column C", which the variant already carries.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

/// Serializes with ranks, one table per line.
pub fn game_to_string(game: &Game) -> String {
    let strategies: Vec<String> = game.all_strategies().iter().map(compact).collect();
    let ranks: Vec<String> = game.rank_tables().iter().map(compact).collect();
    format!(
        "{{\n  \"players\": {},\n  \"strategies\": [{}],\n  \"ranks\": [\n    {}\n  ]\n}}\n",
        game.player_count(),
        strategies.join(", "),
        ranks.join(",\n    ")
    )
}

fn compact<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

pub fn read_game(path: &Path) -> Result<Game, FormatError> {
    let text = fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_game(&text).map_err(|e| FormatError::InFile {
        path: path.to_path_buf(),
        source: Box::new(e),
    })
}

pub fn write_game(path: &Path, game: &Game) -> Result<(), FormatError> {
    fs::write(path, game_to_string(game)).map_err(|source| FormatError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn parses_payoff_file() {
        let text = r#"{
            "players": 2,
            "strategies": [["U", "D"], ["L", "R"]],
            "payoffs": [[2, 0, 1, 1], [2, 0, 1, 1]]
        }"#;
        assert_eq!(parse_game(text).unwrap(), fixtures::ex2());
    }

    #[test]
    fn written_games_reparse_identically() {
        for name in fixtures::NAMES {
            let g = fixtures::by_name(name).unwrap();
            let text = game_to_string(&g);
            assert_eq!(parse_game(&text).unwrap().id(), g.id(), "{name}");
        }
    }

    #[test]
    fn syntax_error_has_line() {
        let text = "{\n  \"players\": 2,\n  \"strategies\": [[\"U\"] [\"L\"]]\n}";
        match parse_game(text) {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn schema_errors() {
        let both = "{\"players\":1,\"strategies\":[[\"a\"]],\n\"payoffs\":[[0]],\n\"ranks\":[[0]]}";
        assert!(matches!(
            parse_game(both),
            Err(FormatError::Schema { line: 3, .. })
        ));
        let none = "{\"players\":1,\"strategies\":[[\"a\"]]}";
        assert!(matches!(parse_game(none), Err(FormatError::Schema { .. })));
        let unknown = "{\"players\":1,\"strategies\":[[\"a\"]],\"ranks\":[[0]],\"x\":1}";
        assert!(matches!(
            parse_game(unknown),
            Err(FormatError::Syntax { .. })
        ));
    }

    #[test]
    fn semantic_errors_point_at_field() {
        let text = "{\n\"players\": 1,\n\"strategies\": [[\"a\", \"a\"]],\n\"ranks\": [[0, 1]]\n}";
        match parse_game(text) {
            Err(FormatError::Invalid { line, source }) => {
                assert_eq!(line, 3);
                assert!(matches!(source, GameError::DuplicateLabel { .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        let short = "{\n\"players\": 1,\n\"strategies\": [[\"a\", \"b\"]],\n\"ranks\": [[0]]\n}";
        assert!(matches!(
            parse_game(short),
            Err(FormatError::Invalid { line: 4, .. })
        ));
    }
}
