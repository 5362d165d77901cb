//! Brute-force reference computations kept apart from the main engine.

use crate::concepts::SolutionSet;
use crate::game::Game;

/// Pure Nash equilibria by trying every unilateral deviation of every profile.
///
/// Shares nothing with the best-response tables in [`crate::concepts::nash`].
pub fn nash_by_deviation(game: &Game) -> SolutionSet {
    let mut out = SolutionSet::new();
    for linear in 0..game.profile_count() {
        let s = game.profile_at(linear);
        let mut stable = true;
        'players: for player in 0..game.player_count() {
            let current = game.rank(player, &s);
            for t in 0..game.strategy_count(player) {
                if game.rank(player, &s.with(player, t)) < current {
                    stable = false;
                    break 'players;
                }
            }
        }
        if stable {
            out.insert(s);
        }
    }
    out
}
