//! Acceptance criteria 1-9, one line per criterion. Exact arithmetic
//! everywhere, so every check demands zero mismatches.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use regulus::coefficients::{
    bridge_congruence_check, hecke_eigen_check, newman_check, newman_four_step, support_check,
    vanishing_consequence_check, vanishing_primes, BridgeId, EtaPowerForm, NewmanParams,
};
use regulus::conditional::{hypothesis_search_report, verify_thm2_unconditional, Part};
use regulus::dissection::{verify_dissection, DissectionIdentityId};
use regulus::eta::frobenius_check;
use regulus::expr::Bindings;
use regulus::family::{generate_grid, Claim, GridBudget, Registry};
use regulus::oracle::RegularityProfile;
use regulus::report::{Status, SuiteReport, VerificationReport};
use regulus::suite::{
    enumeration_check, oracle_equivalence_check, run_suite, thm2_n_max, Selection, SuiteConfig,
    ORACLE_PAIRS,
};

const N: usize = 2000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn clean(reports: &[VerificationReport]) -> Outcome {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| r.status != Status::Pass)
        .map(|r| match r.violations.first() {
            Some(v) => format!("{} fails at index {} ({})", r.id, v.index, v.params),
            None => format!("{} is {}", r.id, r.status.as_str()),
        })
        .collect();
    if bad.is_empty() {
        let indices: u64 = reports.iter().map(|r| r.indices_checked).sum();
        Ok(format!(
            "{} checks, {indices} indices, 0 mismatches",
            reports.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, limit {limit:?}"))
    }
}

fn collect<T>(items: impl IntoIterator<Item = regulus::Result<T>>) -> Result<Vec<T>, String> {
    items
        .into_iter()
        .collect::<regulus::Result<Vec<T>>>()
        .map_err(|e| e.to_string())
}

fn criterion1() -> Outcome {
    let mut reports = Vec::new();
    for id in DissectionIdentityId::ALL {
        let t = Instant::now();
        reports.push(verify_dissection(id, 1000).map_err(|e| e.to_string())?);
        within(t.elapsed(), Duration::from_secs(10), id.name())?;
    }
    clean(&reports)
}

fn criterion2() -> Outcome {
    let t = Instant::now();
    let mut reports = Vec::new();
    for k in [1, 2, 3, 5, 7, 11] {
        for p in [2, 3, 5, 7, 11] {
            reports.push(frobenius_check(k, p, 1000).map_err(|e| e.to_string())?);
        }
    }
    within(t.elapsed(), Duration::from_secs(10), "frobenius sweep")?;
    clean(&reports)
}

fn criterion3() -> Outcome {
    let mut reports = collect(
        ORACLE_PAIRS
            .iter()
            .map(|&(ell, r)| oracle_equivalence_check(&RegularityProfile::uniform(ell, r)?, 300)),
    )?;
    reports.push(enumeration_check(7, 3, 20).map_err(|e| e.to_string())?);
    clean(&reports)
}

fn criterion4() -> Outcome {
    let params = NewmanParams::all_up_to(13);
    let mut reports = collect(params.iter().map(|&p| newman_check(p, N)))?;
    reports.extend(collect(
        [(24, 2), (24, 3), (12, 3), (12, 5)].map(|(r, p)| newman_four_step(r, p, N)),
    )?);
    clean(&reports)
}

fn criterion5() -> Outcome {
    let mut reports = Vec::new();
    for form in [EtaPowerForm::Eta8_3z, EtaPowerForm::Eta6_4z] {
        reports.extend(collect(
            [2, 3, 5, 7, 11, 13].map(|p| hecke_eigen_check(form, p, 1500)),
        )?);
    }
    for form in EtaPowerForm::ALL {
        reports.push(support_check(form, N).map_err(|e| e.to_string())?);
        let primes = vanishing_primes(form, 3);
        if primes.len() != 3 {
            return Err(format!(
                "only {} vanishing primes for {}",
                primes.len(),
                form.name()
            ));
        }
        reports.extend(collect(
            primes
                .into_iter()
                .map(|p| vanishing_consequence_check(form, p, N)),
        )?);
    }
    clean(&reports)
}

fn criterion6() -> Outcome {
    clean(&collect(
        BridgeId::ALL.map(|id| bridge_congruence_check(id, N)),
    )?)
}

fn families(
    registry: &Registry,
    select: impl Fn(&str, &Claim) -> bool,
) -> Result<SuiteReport, String> {
    let ids: Vec<String> = registry
        .families
        .iter()
        .filter(|f| select(&f.id, &f.claim))
        .map(|f| f.id.clone())
        .collect();
    let config = SuiteConfig::new(
        Selection::Only(ids),
        GridBudget::default(),
        registry.clone(),
    )
    .map_err(|e| e.to_string())?;
    run_suite(&config).map_err(|e| e.to_string())
}

fn criterion7() -> Outcome {
    let registry = Registry::builtin();
    let parts = ["thm1.", "thm3.", "thm4.", "thm5.", "thm6.", "cor1."];
    let report = families(&registry, |id, claim| {
        matches!(claim, Claim::Vanishing) && parts.iter().any(|p| id.starts_with(p))
    })?;
    for required in [
        "thm1.i", "thm1.v", "thm3.i", "thm3.iii", "thm4.iii", "thm5.vi", "thm6.iii", "cor1.v",
    ] {
        if !report.checks.iter().any(|c| c.id == required) {
            return Err(format!("{required} missing from the sweep"));
        }
    }
    let thm1 = registry.get("thm1.i").map_err(|e| e.to_string())?;
    let grid = generate_grid(thm1, &GridBudget::default()).map_err(|e| e.to_string())?;
    if !grid
        .progressions
        .iter()
        .any(|p| p.point.primes == [2, 5] && !p.terms.is_empty())
    {
        return Err("thm1.i grid lacks the tuple (2,5)".into());
    }
    let mut reports = report.checks;
    for (part, p) in [(Part::I, 2), (Part::I, 3), (Part::II, 3), (Part::II, 5)] {
        reports.push(
            verify_thm2_unconditional(part, p, thm2_n_max(part, p, N), 100_000)
                .map_err(|e| e.to_string())?,
        );
    }
    let mut found = Vec::new();
    for part in [Part::I, Part::II] {
        let r = hypothesis_search_report(part, 100).map_err(|e| e.to_string())?;
        found.push(format!("{part}: {}", r.notes[0]));
        reports.push(r);
    }
    clean(&reports).map(|s| format!("{s}; {}", found.join(", ")))
}

fn criterion8() -> Outcome {
    let registry = Registry::builtin();
    let report = families(&registry, |id, _| ["eq7", "eq13", "eq18"].contains(&id))?;
    if report.checks.len() != 3 {
        return Err(format!(
            "expected 3 scaling families, ran {}",
            report.checks.len()
        ));
    }
    let eq18 = registry.get("eq18").map_err(|e| e.to_string())?;
    let Claim::Scaling { factor, .. } = &eq18.claim else {
        return Err("eq18 is not a scaling family".into());
    };
    let at3 = factor
        .eval(&Bindings {
            t: Some(1),
            primes: vec![3],
            ..Bindings::default()
        })
        .map_err(|e| e.to_string())?;
    if at3 % 7 != 2 {
        return Err(format!(
            "eq18 multiplier at p=3 is {at3}, expected 9 = 2 mod 7"
        ));
    }
    clean(&report.checks)
}

fn strip_timing(mut report: SuiteReport) -> String {
    for c in &mut report.checks {
        c.ms = 0;
    }
    report.to_json().expect("serializable")
}

fn criterion9() -> Outcome {
    let config = SuiteConfig::new(Selection::All, GridBudget::default(), Registry::builtin())
        .map_err(|e| e.to_string())?;
    let t = Instant::now();
    let first = run_suite(&config).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    within(elapsed, Duration::from_secs(180), "full suite")?;
    if first.any_failed() {
        return Err(clean(&first.checks).unwrap_err());
    }
    let total = first.checks.len();
    let vacuous = first
        .checks
        .iter()
        .filter(|c| c.status == Status::Vacuous)
        .count();
    let second = run_suite(&config).map_err(|e| e.to_string())?;
    let json = strip_timing(first);
    if json != strip_timing(second) {
        return Err("two runs differ outside the timing fields".into());
    }
    if strip_timing(SuiteReport::from_json(&json).map_err(|e| e.to_string())?) != json {
        return Err("report does not round-trip through JSON".into());
    }
    Ok(format!(
        "{total} checks in {elapsed:.1?}, {vacuous} vacuous, reruns byte-identical modulo ms"
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("dissection identities to order 1000", criterion1),
        ("Frobenius congruence to order 1000", criterion2),
        ("series equal oracle counts", criterion3),
        ("Newman recurrence and four-step composition", criterion4),
        ("Hecke, support and vanishing checks", criterion5),
        ("coefficient bridges", criterion6),
        ("congruence families and the three-term relation", criterion7),
        ("scaling congruences", criterion8),
        ("whole suite runtime and determinism", criterion9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} [{detail}] ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} [{detail}] ({ms} ms)", i + 1);
            }
        }
    }
    println!("acceptance: {}/9 criteria pass", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
