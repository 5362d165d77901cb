//! Test-only oracles. They work from the definitions on label sets and never touch the
//! engine's reduction tables, subset masks, or scan order.
#![allow(dead_code)]

use std::collections::BTreeSet;

use nashax::concepts::{eval_concept, ConceptSpec};
use nashax::{Axiom, Game, GameClass, Profile};
use proptest::prelude::*;

pub type Labels = Vec<String>;

/// Pure equilibria of a payoff game, straight from raw payoff tables (higher is better).
pub fn payoff_equilibria(labels: &[&[&str]], payoffs: &[&[f64]]) -> BTreeSet<Labels> {
    let shape: Vec<usize> = labels.iter().map(|l| l.len()).collect();
    let total: usize = shape.iter().product();
    let index = |p: &[usize]| p.iter().zip(&shape).fold(0, |acc, (&i, &n)| acc * n + i);
    let mut out = BTreeSet::new();
    for linear in 0..total {
        let mut p = vec![0; shape.len()];
        let mut rest = linear;
        for k in (0..shape.len()).rev() {
            p[k] = rest % shape[k];
            rest /= shape[k];
        }
        let stable = (0..shape.len()).all(|i| {
            (0..shape[i]).all(|t| {
                let mut q = p.clone();
                q[i] = t;
                payoffs[i][index(&q)] <= payoffs[i][index(&p)]
            })
        });
        if stable {
            out.insert(
                p.iter()
                    .enumerate()
                    .map(|(i, &k)| labels[i][k].to_string())
                    .collect(),
            );
        }
    }
    out
}

pub fn solution_labels(spec: &ConceptSpec, g: &Game) -> BTreeSet<Labels> {
    eval_concept(spec, g)
        .expect("concept defined")
        .iter()
        .map(|p| g.labels_of(p))
        .collect()
}

fn label_set(g: &Game, player: usize) -> BTreeSet<&str> {
    g.strategies(player).iter().map(String::as_str).collect()
}

fn lift(h: &Game, g: &Game, p: &Profile) -> Profile {
    g.profile_from_labels(&h.labels_of(p))
        .expect("labels present")
}

/// `h` is obtained from `g` by shrinking strategy sets and restricting preferences.
pub fn naive_is_reduction(h: &Game, g: &Game) -> bool {
    if h.player_count() != g.player_count() {
        return false;
    }
    for i in 0..g.player_count() {
        let kept = label_set(h, i);
        if !kept.is_subset(&label_set(g, i)) {
            return false;
        }
        let in_parent_order: Vec<&String> = g
            .strategies(i)
            .iter()
            .filter(|l| kept.contains(l.as_str()))
            .collect();
        if in_parent_order
            .iter()
            .map(|s| s.as_str())
            .ne(h.strategies(i).iter().map(String::as_str))
        {
            return false;
        }
    }
    let profiles: Vec<Profile> = h.profiles().collect();
    profiles.iter().all(|p| {
        let gp = lift(h, g, p);
        profiles.iter().all(|q| {
            let gq = lift(h, g, q);
            (0..g.player_count())
                .all(|i| h.weakly_prefers(i, p, q) == g.weakly_prefers(i, &gp, &gq))
        })
    })
}

fn is_full_union(g: &Game, a: &Game, b: &Game) -> bool {
    (0..g.player_count()).all(|i| {
        let u: BTreeSet<&str> = label_set(a, i).union(&label_set(b, i)).copied().collect();
        u == label_set(g, i)
    })
}

/// Every label removed from `g` is strictly beaten, against all opponent profiles of `g`,
/// by a label kept in `h`.
pub fn naive_is_strict(h: &Game, g: &Game) -> bool {
    let mut removed_any = false;
    for i in 0..g.player_count() {
        let kept = label_set(h, i);
        for x in 0..g.strategy_count(i) {
            if kept.contains(g.strategies(i)[x].as_str()) {
                continue;
            }
            removed_any = true;
            let beaten = (0..g.strategy_count(i))
                .filter(|&y| kept.contains(g.strategies(i)[y].as_str()))
                .any(|y| {
                    g.profiles()
                        .filter(|p| p.get(i) == x)
                        .all(|p| g.prefers(i, &p.with(i, y), &p))
                });
            if !beaten {
                return false;
            }
        }
    }
    removed_any
}

fn weakly_dominant_everywhere(g: &Game, s: &Profile) -> bool {
    (0..g.player_count()).all(|i| {
        g.profiles()
            .all(|p| g.weakly_prefers(i, &p.with(i, s.get(i)), &p))
    })
}

/// `true` iff a brute-force search over the class finds a violation of `axiom`.
/// Covers the four core axioms.
pub fn naive_violation(spec: &ConceptSpec, class: &GameClass, axiom: Axiom) -> bool {
    let games = class.games();
    let phi: Vec<BTreeSet<Labels>> = games.iter().map(|g| solution_labels(spec, g)).collect();
    let red: Vec<Vec<bool>> = games
        .iter()
        .map(|g| games.iter().map(|h| naive_is_reduction(h, g)).collect())
        .collect();
    let n = games.len();
    match axiom {
        Axiom::Iis => (0..n).any(|gi| {
            (0..n).filter(|&hi| red[gi][hi]).any(|hi| {
                let h = &games[hi];
                phi[gi].iter().any(|s| {
                    let inside = s
                        .iter()
                        .enumerate()
                        .all(|(i, l)| h.strategies(i).contains(l));
                    inside && !phi[hi].contains(s)
                })
            })
        }),
        Axiom::Mc => (0..n).any(|gi| {
            let subs: Vec<usize> = (0..n).filter(|&hi| red[gi][hi]).collect();
            subs.iter().any(|&a| {
                subs.iter().any(|&b| {
                    is_full_union(&games[gi], &games[a], &games[b])
                        && phi[a].intersection(&phi[b]).any(|s| !phi[gi].contains(s))
                })
            })
        }),
        Axiom::Isds => (0..n).any(|gi| {
            (0..n)
                .filter(|&hi| red[gi][hi] && hi != gi)
                .any(|hi| naive_is_strict(&games[hi], &games[gi]) && phi[gi] != phi[hi])
        }),
        Axiom::Jo => games.iter().enumerate().any(|(gi, g)| {
            g.profiles()
                .filter(|s| weakly_dominant_everywhere(g, s))
                .any(|s| !phi[gi].contains(&g.labels_of(&s)))
        }),
        other => panic!("no naive oracle for {other:?}"),
    }
}

/// Random ordinal game with `1..=max_players` players and `1..=max_strategies` strategies each.
pub fn arb_game(max_players: usize, max_strategies: usize) -> impl Strategy<Value = Game> {
    prop::collection::vec(1..=max_strategies, 1..=max_players)
        .prop_flat_map(|shape| {
            let cells: usize = shape.iter().product();
            let n = shape.len();
            (
                Just(shape),
                prop::collection::vec(prop::collection::vec(0u64..4, cells), n),
            )
        })
        .prop_map(|(shape, ranks)| {
            let strategies = shape
                .iter()
                .enumerate()
                .map(|(i, &k)| {
                    (0..k)
                        .map(|s| format!("{}{s}", (b'a' + i as u8) as char))
                        .collect()
                })
                .collect();
            Game::from_ranks(strategies, ranks).expect("well-formed")
        })
}

/// Random per-player non-empty masks within `game`'s shape.
pub fn arb_masks(game: &Game) -> impl Strategy<Value = Vec<u64>> {
    let shape = game.shape().to_vec();
    shape
        .into_iter()
        .map(|k| (1u64..(1u64 << k)).boxed())
        .collect::<Vec<_>>()
}
