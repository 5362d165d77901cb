//! Acceptance criteria 1-10, run as a plain binary so every criterion prints one PASS/FAIL
//! line; the process exits non-zero if any criterion fails. All comparisons are exact: the
//! results are set-valued and combinatorial, so the pinned tolerance is zero.

mod common;

use std::collections::BTreeSet;

use nashax::axioms::{check, replay, replay_witness, Axiom, Witness};
use nashax::class::{build_named_class, d_closure, GameClass, CLASS_NAMES, DEFAULT_BUDGET};
use nashax::concepts::{nash, ConceptId, ConceptSpec};
use nashax::theorem::{lemma1a_witness, lemma1b_construct, verify_one_player_lemma};
use nashax::{fixtures, suite, AxiomError, ConceptError, SubsetSpec};

use common::{naive_violation, payoff_equilibria, solution_labels, Labels};

/// Set comparisons are exact; no numeric tolerance applies anywhere in this suite.
const MISMATCHES_ALLOWED: usize = 0;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn class(name: &str) -> GameClass {
    build_named_class(name, DEFAULT_BUDGET).unwrap()
}

fn set(items: &[&[&str]]) -> BTreeSet<Labels> {
    items
        .iter()
        .map(|p| p.iter().map(|s| s.to_string()).collect())
        .collect()
}

fn verdict(concept: ConceptId, name: &str, axiom: Axiom) -> nashax::AxiomVerdict {
    check(axiom, &concept.into(), &class(name)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let ex2 = payoff_equilibria(
        &[&["U", "D"], &["L", "R"]],
        &[&[2., 0., 1., 1.], &[2., 0., 1., 1.]],
    );
    let ex5 = payoff_equilibria(
        &[&["U", "C", "D"], &["L", "R"]],
        &[&[2., 0., 0., 1., 2., 0.], &[1., 0., 0., 2., 1., 0.]],
    );
    ensure(ex2 == set(&[&["U", "L"], &["D", "R"]]), || {
        format!("oracle on ex2 gave {ex2:?}")
    })?;
    ensure(ex5 == set(&[&["U", "L"], &["C", "R"], &["D", "L"]]), || {
        format!("oracle on ex5 gave {ex5:?}")
    })?;
    let spec = ConceptSpec::new(ConceptId::Nash);
    ensure(solution_labels(&spec, &fixtures::ex2()) == ex2, || {
        "engine differs on ex2".into()
    })?;
    ensure(solution_labels(&spec, &fixtures::ex5()) == ex5, || {
        "engine differs on ex5".into()
    })?;
    Ok("ex2 {(U,L),(D,R)}, ex5 {(U,L),(C,R),(D,L)}, engine = raw-payoff oracle".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for name in ["pd_dclosed", "ex2_dclosed", "ex5_dclosed"] {
        let games = class(name);
        let spec = ConceptSpec::new(ConceptId::Nash);
        for axiom in Axiom::CORE {
            let v = check(axiom, &spec, &games).unwrap();
            ensure(v.passed(), || {
                format!("nash {} on {name}: {:?}", axiom.as_str(), v.witness())
            })?;
            ensure(!naive_violation(&spec, &games, axiom), || {
                format!(
                    "naive oracle finds a nash {} violation on {name}",
                    axiom.as_str()
                )
            })?;
            checked += 1;
        }
    }
    let direct = d_closure(&[fixtures::ex5()], DEFAULT_BUDGET).unwrap();
    ensure(direct.digest() == class("ex5_dclosed").digest(), || {
        "ex5_dclosed is not d_closure(ex5)".into()
    })?;
    Ok(format!("{checked} checks, violations {MISMATCHES_ALLOWED}"))
}

fn criterion_3() -> Outcome {
    let cases = [
        (ConceptId::Empty, "pd_dclosed", Axiom::Jo),
        (ConceptId::AllProfiles, "pd_dclosed", Axiom::Isds),
        (ConceptId::StrongNash, "ex2_dclosed", Axiom::Mc),
        (ConceptId::NeIndifferenceClosure, "ex2_dclosed", Axiom::Iis),
    ];
    for (concept, name, failing) in cases {
        let games = class(name);
        let spec = ConceptSpec::new(concept);
        for axiom in Axiom::CORE {
            let v = check(axiom, &spec, &games).unwrap();
            let should_fail = axiom == failing;
            ensure(v.passed() != should_fail, || {
                format!(
                    "{} {} on {name}: expected {}",
                    concept.as_str(),
                    axiom.as_str(),
                    if should_fail { "violated" } else { "pass" }
                )
            })?;
            ensure(naive_violation(&spec, &games, axiom) == should_fail, || {
                format!(
                    "naive oracle disagrees on {} {}",
                    concept.as_str(),
                    axiom.as_str()
                )
            })?;
        }
    }
    let g2 = class("ex2_dclosed");
    let mc = verdict(ConceptId::StrongNash, "ex2_dclosed", Axiom::Mc);
    match mc.witness() {
        Some(Witness::Mc {
            game,
            profile,
            left_subsets,
            right_subsets,
            ..
        }) => {
            let g = g2.get(*game).unwrap();
            ensure(g.id() == fixtures::ex2().id(), || {
                "mc witness not on the 2x2 game".into()
            })?;
            ensure(profile == &["D", "R"], || {
                format!("mc witness profile {profile:?}")
            })?;
            let pair: BTreeSet<SubsetSpec> = [left_subsets.clone(), right_subsets.clone()].into();
            let expected: BTreeSet<SubsetSpec> = [
                SubsetSpec::from_labels(g, &[&["U", "D"], &["R"]]).unwrap(),
                SubsetSpec::from_labels(g, &[&["D"], &["L", "R"]]).unwrap(),
            ]
            .into();
            ensure(pair == expected, || {
                format!("mc witness reductions {pair:?}")
            })?;
        }
        other => return Err(format!("strong_nash mc witness {other:?}")),
    }
    let iis = verdict(ConceptId::NeIndifferenceClosure, "ex2_dclosed", Axiom::Iis);
    let p = iis.witness().and_then(Witness::profile).cloned();
    ensure(p == Some(vec!["D".into(), "L".into()]), || {
        format!("iis witness profile {p:?}")
    })?;
    Ok(
        "empty:jo, all_profiles:isds, strong_nash:mc (D,R), ne_indifference_closure:iis (D,L)"
            .into(),
    )
}

fn criterion_4() -> Outcome {
    let cases = [
        (ConceptId::ParityNe, "ex3_cons", Axiom::Iis, true),
        (ConceptId::ParityNe, "ex3_cons", Axiom::Cons, false),
        (ConceptId::Ex4Phi, "ex4", Axiom::Mc, true),
        (ConceptId::Ex4Phi, "ex4", Axiom::Cocons, false),
        (ConceptId::Ex4PhiPrime, "ex4", Axiom::Cocons, true),
        (ConceptId::Ex4PhiPrime, "ex4", Axiom::Mc, false),
        (ConceptId::Ex5Phi, "ex5", Axiom::Ciis, true),
        (ConceptId::Ex5Phi, "ex5", Axiom::Mc, false),
    ];
    for (concept, name, axiom, pass) in cases {
        let v = verdict(concept, name, axiom);
        ensure(v.passed() == pass, || {
            format!(
                "{} {} on {name}: got {:?}",
                concept.as_str(),
                axiom.as_str(),
                v.outcome()
            )
        })?;
        if matches!(axiom, Axiom::Iis | Axiom::Mc) {
            let naive = naive_violation(&concept.into(), &class(name), axiom);
            ensure(naive != pass, || {
                format!(
                    "naive oracle disagrees on {} {}",
                    concept.as_str(),
                    axiom.as_str()
                )
            })?;
        }
    }
    Ok("8 verdicts as stated".into())
}

fn concept_matrix() -> Vec<(String, ConceptId, GameClass)> {
    let mut out = Vec::new();
    for &name in CLASS_NAMES {
        for id in ConceptId::ALL {
            out.push((name.to_string(), id, class(name)));
        }
    }
    out
}

fn defined(id: ConceptId, games: &GameClass, axiom: Axiom) -> Option<nashax::AxiomVerdict> {
    match check(axiom, &id.into(), games) {
        Ok(v) => Some(v),
        Err(AxiomError::Concept(ConceptError::Domain { .. })) => None,
        Err(e) => panic!("{e}"),
    }
}

fn criterion_5() -> Outcome {
    let mut mc_passes = 0;
    for (name, id, games) in concept_matrix() {
        let Some(mc) = defined(id, &games, Axiom::Mc) else {
            continue;
        };
        if mc.passed() {
            mc_passes += 1;
            let ciis = defined(id, &games, Axiom::Ciis).unwrap();
            ensure(ciis.passed(), || {
                format!("{} on {name}: mc passes, ciis fails", id.as_str())
            })?;
        }
    }
    Ok(format!(
        "{mc_passes} (class, concept) pairs with mc pass, all pass ciis"
    ))
}

fn criterion_6() -> Outcome {
    let mut constructions = 0;
    for name in ["ex2_dclosed", "pd_dclosed", "three_player_dclosed"] {
        for g in class(name).games() {
            for s in nash(g) {
                let r = lemma1b_construct(g, &s).map_err(|e| e.to_string())?;
                ensure(r.passed(), || {
                    format!(
                        "{name}: failed steps {:?}",
                        r.steps.iter().filter(|s| !s.passed).collect::<Vec<_>>()
                    )
                })?;
                if g.player_count() >= 2 {
                    let last = r.games.last().unwrap();
                    ensure(last.id == g.id(), || {
                        "final merge is not the game itself".into()
                    })?;
                }
                constructions += 1;
            }
        }
    }
    Ok(format!(
        "{constructions} constructions, all assertions hold"
    ))
}

fn criterion_7() -> Outcome {
    let known = [
        (ConceptId::Empty, Axiom::Jo),
        (ConceptId::AllProfiles, Axiom::Isds),
        (ConceptId::StrongNash, Axiom::Mc),
        (ConceptId::NeIndifferenceClosure, Axiom::Iis),
    ];
    let mut reports = 0;
    for (id, failure) in known {
        let spec = ConceptSpec::new(id);
        for name in ["pd_dclosed", "ex2_dclosed"] {
            let games = class(name);
            let failing: BTreeSet<Axiom> = Axiom::CORE
                .into_iter()
                .filter(|&a| !check(a, &spec, &games).unwrap().passed())
                .collect();
            for g in games.games() {
                let phi = nashax::eval_concept(&spec, g).unwrap();
                for s in phi.difference(&nash(g)) {
                    let r = lemma1a_witness(&spec, g, s).map_err(|e| e.to_string())?;
                    ensure(r.passed() && !r.violated.is_empty(), || {
                        format!("{}: no violated axiom", id.as_str())
                    })?;
                    ensure(r.violated.contains(&failure), || {
                        format!(
                            "{} names {:?}, expected {}",
                            id.as_str(),
                            r.violated,
                            failure.as_str()
                        )
                    })?;
                    ensure(r.violated.iter().all(|a| failing.contains(a)), || {
                        format!(
                            "{} names {:?}, which the checker does not report on {name}",
                            id.as_str(),
                            r.violated
                        )
                    })?;
                    reports += 1;
                }
            }
        }
    }
    ensure(reports > 0, || "no non-equilibrium solutions found".into())?;
    Ok(format!(
        "{reports} gadget reports, each naming the known failure"
    ))
}

fn criterion_8() -> Outcome {
    let games = class("one_player_strict");
    ensure(games.len() == 8, || {
        format!("strict closure has {} games", games.len())
    })?;
    let r = verify_one_player_lemma(&games).map_err(|e| e.to_string())?;
    let nash = r.finding(ConceptId::Nash).unwrap();
    ensure(nash.isds_passed && nash.jo_passed, || {
        "nash fails isds or jo".into()
    })?;
    let mut non_ne = 0;
    for f in &r.findings {
        if f.skipped.is_some() || f.equals_nash {
            continue;
        }
        non_ne += 1;
        ensure(!(f.isds_passed && f.jo_passed), || {
            format!("{} passes both", f.concept)
        })?;
        ensure(f.replays.iter().all(|rp| rp.reproduced()), || {
            format!("{} replay fails", f.concept)
        })?;
    }
    let all = r.finding(ConceptId::AllProfiles).unwrap();
    ensure(!all.replays.is_empty(), || {
        "no removal replayed for all_profiles".into()
    })?;
    ensure(!r.finding(ConceptId::Empty).unwrap().jo_passed, || {
        "empty passes jo".into()
    })?;
    ensure(r.passed(), || "lemma inconsistent".into())?;
    Ok(format!(
        "nash passes isds+jo; {non_ne} concepts differing from nash each fail one"
    ))
}

fn criterion_9() -> Outcome {
    let mut violated = 0;
    let mut replayed = 0;
    for (name, id, games) in concept_matrix() {
        let spec = ConceptSpec::new(id);
        for axiom in Axiom::ALL {
            let Some(v) = defined(id, &games, axiom) else {
                continue;
            };
            if v.passed() {
                continue;
            }
            violated += 1;
            if replay(&spec, &v, &games).unwrap() {
                replayed += 1;
            } else {
                return Err(format!(
                    "{} {} on {name} does not replay",
                    id.as_str(),
                    axiom.as_str()
                ));
            }
        }
    }
    // negative control: the empty concept's JO witness is no violation for nash
    let jo = verdict(ConceptId::Empty, "pd_dclosed", Axiom::Jo);
    let control = replay_witness(
        &ConceptId::Nash.into(),
        jo.witness().unwrap(),
        &class("pd_dclosed"),
    )
    .unwrap();
    ensure(!control, || {
        "witness replays under a concept that satisfies the axiom".into()
    })?;
    Ok(format!("{replayed}/{violated} violated verdicts replay"))
}

fn criterion_10() -> Outcome {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| suite::render(&suite::reproduce(DEFAULT_BUDGET).unwrap()))
    };
    let first = run(1);
    for threads in [1, 2, 4, 8] {
        ensure(run(threads) == first, || {
            format!("output differs with {threads} threads")
        })?;
    }
    let rows = suite::reproduce(DEFAULT_BUDGET).unwrap();
    ensure(rows.iter().all(suite::Row::ok), || {
        "reproduce has failing rows".into()
    })?;
    Ok(format!(
        "{} rows, identical over 5 runs at 1, 2, 4, 8 threads",
        rows.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("nash sets match an independent oracle", criterion_1),
        (
            "nash satisfies iis, mc, isds, jo on d-closed classes",
            criterion_2,
        ),
        ("independence of the four axioms", criterion_3),
        ("literature-axiom independence examples", criterion_4),
        ("mc pass implies ciis pass", criterion_5),
        ("equilibrium merge construction", criterion_6),
        ("deviation gadget names the known failure", criterion_7),
        ("one-player lemma", criterion_8),
        ("witness replay", criterion_9),
        ("reproduce determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (title, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2}: PASS  {title}: {detail}", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {title}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: 10/10 criteria pass");
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
