//! Built-in games used by the named classes, the CLI, and the test suites.
//!
//! The same games ship as files under `fixtures/` at the repository root.

use crate::game::{labels, Game};

fn payoffs(names: &[&[&str]], table: &[Vec<f64>]) -> Game {
    Game::from_payoffs(labels(names), table.to_vec()).expect("fixture is well-formed")
}

/// Prisoner's Dilemma with T > R > P > S: (C,C)=(2,2), (C,D)=(0,3), (D,C)=(3,0), (D,D)=(1,1).
pub fn prisoners_dilemma() -> Game {
    payoffs(
        &[&["C", "D"], &["C", "D"]],
        &[vec![2.0, 0.0, 3.0, 1.0], vec![2.0, 3.0, 0.0, 1.0]],
    )
}

/// Rows U, D against columns L, R: (2,2) (0,0) / (1,1) (1,1).
pub fn ex2() -> Game {
    payoffs(
        &[&["U", "D"], &["L", "R"]],
        &[vec![2.0, 0.0, 1.0, 1.0], vec![2.0, 0.0, 1.0, 1.0]],
    )
}

/// Rows U, C, D against columns L, R: (2,1) (0,0) / (0,0) (1,2) / (2,1) (0,0).
pub fn ex5() -> Game {
    payoffs(
        &[&["U", "C", "D"], &["L", "R"]],
        &[
            vec![2.0, 0.0, 0.0, 1.0, 2.0, 0.0],
            vec![1.0, 0.0, 0.0, 2.0, 1.0, 0.0],
        ],
    )
}

/// 2×2×2 game where strategy A is weakly dominant for every player.
///
/// Player 1 gets 1 for A. Player 2 gets 1 for A or when player 1 plays B. Player 3 gets 1
/// for A or when player 2 plays B.
pub fn three_player() -> Game {
    let names: &[&[&str]] = &[&["A", "B"], &["A", "B"], &["A", "B"]];
    let mut tables = vec![Vec::new(), Vec::new(), Vec::new()];
    for s1 in 0..2 {
        for s2 in 0..2 {
            for s3 in 0..2 {
                tables[0].push(f64::from(s1 == 0));
                tables[1].push(f64::from(s2 == 0 || s1 == 1));
                tables[2].push(f64::from(s3 == 0 || s2 == 1));
            }
        }
    }
    payoffs(names, &tables)
}

/// One player over a, b, c, d with a ≻ b ∼ c ≻ d.
pub fn one_player_chain() -> Game {
    Game::from_ranks(labels(&[&["a", "b", "c", "d"]]), vec![vec![0, 1, 1, 2]])
        .expect("fixture is well-formed")
}

/// Looks up a built-in game by name.
pub fn by_name(name: &str) -> Option<Game> {
    Some(match name {
        "pd" => prisoners_dilemma(),
        "ex2" => ex2(),
        "ex5" => ex5(),
        "three_player" => three_player(),
        "one_player_chain" => one_player_chain(),
        _ => return None,
    })
}

pub const NAMES: &[&str] = &["pd", "ex2", "ex5", "three_player", "one_player_chain"];
