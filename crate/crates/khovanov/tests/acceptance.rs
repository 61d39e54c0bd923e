//! Acceptance suite: one pass/fail line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use khovanov::bundled_corpus;
use khovanov::checks::{self, Check, Subject};
use khovanov::compute::table;
use khovanov::core::coeff::SpecVariant;
use khovanov::core::complex::build_complex;
use khovanov::core::diagram::mirror;
use khovanov::core::frobenius::relation_suite;
use khovanov::corpus::{self, fixture_line, CorpusEntry};
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn text(e: &CorpusEntry) -> String {
    std::fs::read_to_string(e.path.as_ref().expect("loaded from disk")).expect("corpus file readable")
}

/// Runs one check on every subject and reports the first failure.
fn check_all(subjects: &[Subject], check: Check) -> Outcome {
    let reports: Vec<_> = subjects.par_iter().map(|s| checks::run(s, &[check], 0)).collect();
    for r in &reports {
        if let Some(c) = r.checks.iter().find(|c| !c.pass) {
            return Err(format!("{}: {}", r.name, c.detail));
        }
    }
    Ok(format!("{} diagrams", reports.len()))
}

fn relations() -> Outcome {
    let results = relation_suite();
    match results.iter().find(|r| !r.holds) {
        Some(r) => Err(format!("{} fails", r.name)),
        None => Ok(format!("{} identities, including sphere = 0 and torus = Z(X+Y)", results.len())),
    }
}

fn even_oracle(entries: &[CorpusEntry]) -> Outcome {
    let knots: Vec<&CorpusEntry> = entries.iter().filter(|e| e.is_knot() && e.diagram.len() <= 7).collect();
    let mismatches: Vec<String> = knots
        .par_iter()
        .filter_map(|e| {
            let ours = build_complex(&e.diagram).map_err(|x| x.to_string()).and_then(|c| {
                table(&c, SpecVariant::Even).map_err(|x| x.to_string())
            });
            let oracle = fixture_line(&common::even_homology(&common::parse(&text(e))));
            match ours {
                Ok(t) if fixture_line(&t) == oracle => None,
                Ok(t) => Some(format!("{}: got {}, oracle {}", e.name, fixture_line(&t), oracle)),
                Err(x) => Some(format!("{}: {x}", e.name)),
            }
        })
        .collect();
    if let Some(m) = mismatches.first() {
        return Err(m.clone());
    }
    let trefoil = entries.iter().find(|e| e.name == "3_1").ok_or("corpus lacks 3_1")?;
    let t = table(&build_complex(&trefoil.diagram).map_err(|x| x.to_string())?, SpecVariant::Even).map_err(|x| x.to_string())?;
    if t.get(3, 7).torsion != vec![2] {
        return Err("trefoil H^3 at q=7 is not Z/2".into());
    }
    Ok(format!("{} knots exact per (i,q); trefoil H^3 has Z/2 at q=7", knots.len()))
}

fn jones(entries: &[CorpusEntry]) -> Outcome {
    for e in entries {
        let j = common::jones(&common::parse(&text(e)));
        let chi = build_complex(&e.diagram).map_err(|x| x.to_string())?.euler_characteristic();
        if chi != j {
            return Err(format!("{}: Euler characteristic differs from the Jones polynomial", e.name));
        }
        let m = build_complex(&mirror(&e.diagram)).map_err(|x| x.to_string())?.euler_characteristic();
        if m.into_iter().map(|(q, v)| (-q, v)).collect::<common::Laurent>() != j {
            return Err(format!("{}: mirror is not q -> 1/q", e.name));
        }
    }
    Ok(format!("{} diagrams and their mirrors", entries.len()))
}

fn main() {
    let entries = corpus::load_dir(&bundled_corpus()).expect("bundled corpus loads");
    let subjects = checks::subjects(&entries);
    let criteria: Vec<(&str, Option<Duration>, Box<dyn Fn() -> Outcome>)> = vec![
        ("relation suite", Some(Duration::from_secs(1)), Box::new(relations)),
        ("d^2 = 0, q and sdeg preserved", Some(Duration::from_secs(60)), Box::new(|| check_all(&subjects, Check::Dsquared))),
        ("even homology equals the oracle", Some(Duration::from_secs(120)), Box::new(|| even_oracle(&entries))),
        ("Euler characteristic equals Jones", Some(Duration::from_secs(60)), Box::new(|| jones(&entries))),
        ("mod 2 agreement", None, Box::new(|| check_all(&subjects, Check::Mod2))),
        ("decomposition into unified blocks", None, Box::new(|| check_all(&subjects, Check::Decomposition))),
        ("duality map and homology duality", None, Box::new(|| check_all(&subjects, Check::Duality))),
        ("invariance", None, Box::new(|| check_all(&subjects, Check::Invariance))),
        ("negated variant equals even", None, Box::new(|| check_all(&subjects, Check::Negated))),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.2?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail} ({elapsed:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {detail} ({elapsed:.2?})", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
