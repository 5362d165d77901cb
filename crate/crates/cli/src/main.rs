use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Result};
use clap::{Parser, Subcommand, ValueEnum};

use nashax::axioms::{describe_witness, Axiom};
use nashax::class::{
    build_named_class, d_closure, read_class_dir, reduction_closure, strict_closure,
    write_class_dir, GameClass, CLASS_NAMES, DEFAULT_BUDGET, MANIFEST_FILE,
};
use nashax::concepts::{eval_concept, format_set, labelled, ConceptSpec};
use nashax::format::read_game;
use nashax::theorem::{
    lemma1a_witness, lemma1b_construct, verify_one_player_lemma, ConstructionReport,
};
use nashax::{fixtures, suite, CheckRecord, Game, Profile};

#[derive(Parser)]
#[command(
    name = "nashax",
    version,
    about = "Solution concepts and their axioms on finite ordinal games"
)]
struct Cli {
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true, env = "NASHAX_JOBS")]
    jobs: Option<usize>,

    /// Maximum number of games a closure may hold.
    #[arg(long, global = true, env = "NASHAX_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the solution set of a game.
    Solve {
        /// Game file, or a bundled fixture name (pd, ex2, ex5, three_player, one_player_chain).
        game: String,
        #[arg(long)]
        concept: String,
        #[arg(long)]
        json: bool,
    },
    /// Close a game or class and write the result as a class directory.
    Closure {
        /// Game file, class directory, named class, or fixture name.
        source: String,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Directory under which the class directory is created.
        #[arg(long, default_value = "classes")]
        out: PathBuf,
    },
    /// Check one axiom for one concept on a class.
    Check {
        #[arg(long)]
        axiom: Axiom,
        #[arg(long)]
        concept: String,
        /// Class directory or named class.
        #[arg(long)]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Run one of the proof constructions on concrete input.
    Construct {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Game for 1a and 1b.
        #[arg(long)]
        game: Option<String>,
        /// Profile labels for 1a and 1b, e.g. `D,L`.
        #[arg(long)]
        profile: Option<String>,
        /// Concept for 1a.
        #[arg(long)]
        concept: Option<String>,
        /// One-player class for 2.
        #[arg(long, default_value = "one_player_strict")]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Run every example, construction and meta-check and print a summary table.
    Reproduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    D,
    Strict,
    Reductions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    #[value(name = "1a")]
    OneA,
    #[value(name = "1b")]
    OneB,
    #[value(name = "2")]
    Two,
}

/// Outcome of a command that ran to completion.
enum Status {
    Ok,
    Unmet,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Unmet) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Status> {
    let budget = cli.budget;
    match cli.command {
        Command::Solve {
            game,
            concept,
            json,
        } => {
            let game = load_game(&game)?;
            let spec = ConceptSpec::parse(&concept)?;
            let set = eval_concept(&spec, &game)?;
            if json {
                println!("{}", serde_json::to_string(&labelled(&game, &set))?);
            } else {
                println!("{}", format_set(&game, &set));
            }
            Ok(Status::Ok)
        }
        Command::Closure { source, mode, out } => {
            let (name, seeds) = load_seeds(&source, budget)?;
            let (class, mode_name) = match mode {
                Mode::D => (d_closure(&seeds, budget)?, "d"),
                Mode::Strict => (strict_closure(&seeds, budget)?, "strict"),
                Mode::Reductions => (union_of_reduction_closures(&seeds, budget)?, "reductions"),
            };
            let dir = write_class_dir(&class, &out, &name, mode_name, budget)?;
            println!("{} games -> {}", class.len(), dir.display());
            Ok(Status::Ok)
        }
        Command::Check {
            axiom,
            concept,
            class,
            json,
        } => {
            let spec = ConceptSpec::parse(&concept)?;
            let (name, games) = load_class(&class, budget)?;
            let verdict = nashax::axioms::check(axiom, &spec, &games)?;
            let record = CheckRecord::from_verdict(&verdict, &name);
            if json {
                println!("{}", record.to_json());
            } else {
                println!("axiom:    {}", record.axiom);
                println!("concept:  {}", record.concept);
                println!("class:    {name} ({} games)", games.len());
                println!(
                    "result:   {}",
                    if verdict.passed() { "pass" } else { "violated" }
                );
                if let Some(w) = verdict.witness() {
                    println!("witness:  {}", describe_witness(w, &games));
                }
                if let Some(c) = verdict.coverage() {
                    println!(
                        "coverage: {} instances examined, {} companions absent",
                        c.examined, c.absent
                    );
                }
            }
            Ok(Status::Ok)
        }
        Command::Construct {
            lemma,
            game,
            profile,
            concept,
            class,
            json,
        } => construct(lemma, game, profile, concept, &class, json, budget),
        Command::Reproduce => {
            let rows = suite::reproduce(budget)?;
            print!("{}", suite::render(&rows));
            Ok(if rows.iter().all(suite::Row::ok) {
                Status::Ok
            } else {
                Status::Unmet
            })
        }
    }
}

fn construct(
    lemma: Lemma,
    game: Option<String>,
    profile: Option<String>,
    concept: Option<String>,
    class: &str,
    json: bool,
    budget: usize,
) -> Result<Status> {
    let report = match lemma {
        Lemma::Two => {
            let (_, games) = load_class(class, budget)?;
            let report = verify_one_player_lemma(&games)?;
            if json {
                println!("{}", serde_json::to_string(&report)?);
            } else {
                for f in &report.findings {
                    match &f.skipped {
                        Some(why) => println!("{:<24} skipped: {why}", f.concept),
                        None => println!(
                            "{:<24} isds {:<8} jo {:<8} equals nash {:<5} removal replays {}/{}",
                            f.concept,
                            pass_word(f.isds_passed),
                            pass_word(f.jo_passed),
                            f.equals_nash,
                            f.replays.iter().filter(|r| r.reproduced()).count(),
                            f.replays.len()
                        ),
                    }
                }
            }
            return Ok(if report.passed() {
                Status::Ok
            } else {
                Status::Unmet
            });
        }
        Lemma::OneA | Lemma::OneB => {
            let game = load_game(
                game.as_deref()
                    .ok_or_else(|| anyhow!("--game is required"))?,
            )?;
            let s = parse_profile(
                &game,
                profile
                    .as_deref()
                    .ok_or_else(|| anyhow!("--profile is required"))?,
            )?;
            if let Lemma::OneA = lemma {
                let spec = ConceptSpec::parse(
                    concept
                        .as_deref()
                        .ok_or_else(|| anyhow!("--concept is required for lemma 1a"))?,
                )?;
                lemma1a_witness(&spec, &game, &s)?
            } else {
                lemma1b_construct(&game, &s)?
            }
        }
    };
    if json {
        println!("{}", serde_json::to_string(&report)?);
    } else {
        print_construction(&report);
    }
    Ok(if report.passed() {
        Status::Ok
    } else {
        Status::Unmet
    })
}

fn pass_word(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "violated"
    }
}

fn print_construction(report: &ConstructionReport) {
    println!(
        "construction {} on ({})",
        report.construction,
        report.profile.join(",")
    );
    for g in &report.games {
        println!("  {:<4} {}  {}", g.role, g.shape, g.id.short());
    }
    for step in &report.steps {
        println!(
            "  [{}] {}: {}",
            if step.passed { "ok" } else { "FAIL" },
            step.name,
            step.detail
        );
    }
}

fn parse_profile(game: &Game, text: &str) -> Result<Profile> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let labels: Vec<&str> = inner.split(',').map(str::trim).collect();
    Ok(game.profile_from_labels(&labels)?)
}

fn load_game(arg: &str) -> Result<Game> {
    let path = Path::new(arg);
    if path.is_file() {
        return Ok(read_game(path)?);
    }
    fixtures::by_name(arg).ok_or_else(|| {
        anyhow!(
            "`{arg}` is neither a game file nor a fixture ({})",
            fixtures::NAMES.join(", ")
        )
    })
}

/// A class directory, or a named class built on the fly.
fn load_class(arg: &str, budget: usize) -> Result<(String, GameClass)> {
    let path = Path::new(arg);
    if path.join(MANIFEST_FILE).is_file() {
        let (class, manifest) = read_class_dir(path)?;
        class.verify_provenance()?;
        return Ok((manifest.name, class));
    }
    if CLASS_NAMES.contains(&arg) {
        return Ok((arg.to_string(), build_named_class(arg, budget)?));
    }
    bail!(
        "`{arg}` is neither a class directory nor a named class ({})",
        CLASS_NAMES.join(", ")
    )
}

fn load_seeds(arg: &str, budget: usize) -> Result<(String, Vec<Game>)> {
    let path = Path::new(arg);
    if path.is_dir() || CLASS_NAMES.contains(&arg) {
        let (name, class) = load_class(arg, budget)?;
        return Ok((name, class.games().to_vec()));
    }
    let game = load_game(arg)?;
    let name = path
        .file_stem()
        .map_or_else(|| arg.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((name, vec![game]))
}

fn union_of_reduction_closures(seeds: &[Game], budget: usize) -> Result<GameClass> {
    let mut class = GameClass::new();
    for seed in seeds {
        let part = reduction_closure(seed, budget)?;
        for (g, p) in part.games().iter().zip(part.provenance()) {
            class.insert(g.clone(), p.clone());
        }
        if class.len() > budget {
            bail!("closure exceeded its budget of {budget} games");
        }
    }
    Ok(class)
}
