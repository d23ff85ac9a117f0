//! The full battery of checks, grouped and run in parallel.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::{SeriesCache, SeriesKey};
use crate::coefficients::{
    bridge_congruence_check, hecke_eigen_check, lacunarity_check, newman_check, newman_four_step,
    support_check, vanishing_consequence_check, vanishing_primes, BridgeId, EtaPowerForm,
    NewmanParams,
};
use crate::conditional::{hypothesis_search_report, verify_thm2_unconditional, Part};
use crate::dissection::{verify_dissection, DissectionIdentityId};
use crate::error::{Error, Result};
use crate::eta::{eta_quotient, frobenius_check, EtaQuotientSpec};
use crate::family::{
    generate_grid, normalize_id, verify_family, Claim, CongruenceFamily, GridBudget, ParameterGrid,
    Registry,
};
use crate::oracle::{enumerate_multipartitions, multipartition_counts, RegularityProfile};
use crate::report::{SuiteReport, VerificationReport, Violation};
use crate::ZZ;

/// Environment variable overriding the default series order.
pub const BUDGET_ENV: &str = "REGULUS_BUDGET_N";
pub const MIN_SUITE_ORDER: usize = 64;

/// Profiles compared against the series engine up to [`ORACLE_ORDER`].
pub const ORACLE_PAIRS: [(u32, u32); 9] = [
    (3, 12),
    (3, 15),
    (5, 6),
    (5, 10),
    (7, 6),
    (7, 7),
    (11, 11),
    (35, 4),
    (55, 21),
];
pub const ORACLE_ORDER: usize = 300;
pub const ENUMERATION_ORDER: usize = 20;

const FROBENIUS_SCALES: [u32; 6] = [1, 2, 3, 5, 7, 11];
const FROBENIUS_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
const FOUR_STEP_PAIRS: [(u32, u64); 4] = [(24, 2), (24, 3), (12, 3), (12, 5)];
const THM2_PRIMES: [(Part, u64); 4] = [(Part::I, 2), (Part::I, 3), (Part::II, 3), (Part::II, 5)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Group {
    Identities,
    Frobenius,
    Oracle,
    Newman,
    Hecke,
    Bridges,
    Families,
    Scaling,
    Thm2,
    Controls,
}

impl Group {
    pub const ALL: [Group; 10] = [
        Group::Identities,
        Group::Frobenius,
        Group::Oracle,
        Group::Newman,
        Group::Hecke,
        Group::Bridges,
        Group::Families,
        Group::Scaling,
        Group::Thm2,
        Group::Controls,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Group::Identities => "identities",
            Group::Frobenius => "frobenius",
            Group::Oracle => "oracle",
            Group::Newman => "newman",
            Group::Hecke => "hecke",
            Group::Bridges => "bridges",
            Group::Families => "families",
            Group::Scaling => "scaling",
            Group::Thm2 => "thm2",
            Group::Controls => "controls",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        Group::ALL
            .into_iter()
            .find(|g| g.name() == key)
            .ok_or_else(|| Error::Unknown(format!("group `{s}`")))
    }
}

/// Which checks to run: everything, or those matching any selector. A
/// selector is a group name, a check id, or a prefix of ids ending at a `.`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    Only(Vec<String>),
}

impl Selection {
    fn matches(&self, group: Group, id: &str) -> bool {
        match self {
            Selection::All => true,
            Selection::Only(sel) => sel.iter().any(|s| {
                let s = normalize_id(s);
                s == group.name() || id == s || id.starts_with(&format!("{s}."))
            }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub selection: Selection,
    pub budget: GridBudget,
    pub registry: Registry,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
}

impl SuiteConfig {
    pub fn new(selection: Selection, budget: GridBudget, registry: Registry) -> Result<Self> {
        if budget.order < MIN_SUITE_ORDER {
            return Err(Error::Config(format!(
                "series order must be at least {MIN_SUITE_ORDER}"
            )));
        }
        if matches!(&selection, Selection::Only(v) if v.is_empty()) {
            return Err(Error::Config("no checks selected".into()));
        }
        budget.validate()?;
        Ok(SuiteConfig {
            selection,
            budget,
            registry,
            jobs: None,
        })
    }

    /// `REGULUS_BUDGET_N` if set, otherwise `default`.
    pub fn order_from_env(default: usize) -> Result<usize> {
        match std::env::var(BUDGET_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{BUDGET_ENV}={v} is not an integer"))),
            Err(_) => Ok(default),
        }
    }
}

struct Ctx<'a> {
    budget: GridBudget,
    registry: &'a Registry,
    cache: SeriesCache,
    grids: HashMap<String, ParameterGrid>,
}

enum Job {
    Identity(DissectionIdentityId),
    Frobenius(u32, u64),
    Oracle(u32, u32),
    Enumeration,
    FamilyOracle,
    Newman(NewmanParams),
    FourStep(u32, u64),
    Hecke(EtaPowerForm, u64),
    Support(EtaPowerForm),
    Vanishing(EtaPowerForm, u64),
    Lacunarity(EtaPowerForm),
    Bridge(BridgeId),
    Family(String),
    Thm2(Part, u64),
    Thm2Search(Part),
    Control,
}

struct Planned {
    id: String,
    group: Group,
    job: Job,
}

fn family_group(f: &CongruenceFamily) -> Group {
    match f.claim {
        Claim::Vanishing => Group::Families,
        Claim::Scaling { .. } => Group::Scaling,
        Claim::Conditional { .. } => Group::Thm2,
    }
}

fn plan(config: &SuiteConfig) -> Vec<Planned> {
    let mut all = Vec::new();
    let mut push = |id: String, group: Group, job: Job| all.push(Planned { id, group, job });
    for id in DissectionIdentityId::ALL {
        push(
            format!("identity.{}", id.name()),
            Group::Identities,
            Job::Identity(id),
        );
    }
    for k in FROBENIUS_SCALES {
        for p in FROBENIUS_PRIMES {
            push(
                format!("frobenius.k{k}.p{p}"),
                Group::Frobenius,
                Job::Frobenius(k, p),
            );
        }
    }
    for (ell, r) in ORACLE_PAIRS {
        push(
            format!("oracle.l{ell}.r{r}"),
            Group::Oracle,
            Job::Oracle(ell, r),
        );
    }
    push("oracle.enumeration".into(), Group::Oracle, Job::Enumeration);
    push(
        "oracle.family_points".into(),
        Group::Oracle,
        Job::FamilyOracle,
    );
    for params in NewmanParams::all_up_to(13) {
        push(
            format!("newman.r{}.p{}", params.r, params.p),
            Group::Newman,
            Job::Newman(params),
        );
    }
    for (r, p) in FOUR_STEP_PAIRS {
        push(
            format!("newman4.r{r}.p{p}"),
            Group::Newman,
            Job::FourStep(r, p),
        );
    }
    for form in [EtaPowerForm::Eta8_3z, EtaPowerForm::Eta6_4z] {
        for p in [2, 3, 5, 7, 11, 13] {
            push(
                format!("hecke.{}.p{p}", form.name()),
                Group::Hecke,
                Job::Hecke(form, p),
            );
        }
        push(
            format!("lacunarity.{}", form.name()),
            Group::Hecke,
            Job::Lacunarity(form),
        );
    }
    for form in EtaPowerForm::ALL {
        push(
            format!("support.{}", form.name()),
            Group::Hecke,
            Job::Support(form),
        );
        for p in vanishing_primes(form, 3) {
            push(
                format!("vanishing.{}.p{p}", form.name()),
                Group::Hecke,
                Job::Vanishing(form, p),
            );
        }
    }
    for id in BridgeId::ALL {
        push(
            format!("bridge.{}", id.name()),
            Group::Bridges,
            Job::Bridge(id),
        );
    }
    for f in &config.registry.families {
        push(
            normalize_id(&f.id),
            family_group(f),
            Job::Family(f.id.clone()),
        );
    }
    for (part, p) in THM2_PRIMES {
        push(
            format!("thm2.{part}.unconditional.p{p}"),
            Group::Thm2,
            Job::Thm2(part, p),
        );
    }
    for part in [Part::I, Part::II] {
        push(
            format!("thm2.{part}.hypothesis_search"),
            Group::Thm2,
            Job::Thm2Search(part),
        );
    }
    push(CONTROL_ID.into(), Group::Controls, Job::Control);
    all.retain(|c| config.selection.matches(c.group, &c.id));
    all
}

/// Ids of the checks a configuration selects, sorted.
pub fn planned_ids(config: &SuiteConfig) -> Vec<String> {
    let mut ids: Vec<String> = plan(config).into_iter().map(|c| c.id).collect();
    ids.sort();
    ids
}

const CONTROL_ID: &str = "control.thm4.ii.alpha17";

/// Coefficients of `prod E_{l_i} / E_1^r` over Z up to `order`.
pub fn profile_coefficients(profile: &RegularityProfile, order: usize) -> Result<Vec<BigInt>> {
    let mut factors: Vec<(u32, i32)> = Vec::new();
    for &l in profile.ells() {
        match factors.iter_mut().find(|(k, _)| *k == l) {
            Some(f) => f.1 += 1,
            None => factors.push((l, 1)),
        }
    }
    factors.push((1, -(profile.len() as i32)));
    let (series, _) = eta_quotient(&EtaQuotientSpec::e_product(&factors), order, &ZZ::new())?;
    Ok(series.into_coeffs())
}

/// Compares `prod E_{l_i} / E_1^r` over Z with the counting oracle.
pub fn oracle_equivalence_check(
    profile: &RegularityProfile,
    order: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let ells = profile.ells();
    let label: Vec<String> = ells.iter().map(u32::to_string).collect();
    let mut report = VerificationReport::new(format!("oracle.{}", label.join("_")));
    let series = profile_coefficients(profile, order)?;
    let table = multipartition_counts(profile, order)?;
    report.sweep(format!("profile ({}) n=0..={order}", label.join(",")));
    for (n, (s, o)) in series.iter().zip(&table.values).enumerate() {
        report.check(|| format!("n={n}"), n as u64, s.clone(), o.clone());
    }
    Ok(report.finish(started))
}

/// Explicit enumeration against the DP for every non-decreasing profile with
/// `r <= max_r` and parts `2 <= l_i <= max_ell`, for `n <= order`.
pub fn enumeration_check(max_ell: u32, max_r: usize, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("oracle.enumeration");
    let mut profiles: Vec<Vec<u32>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..max_r {
        profiles = profiles
            .into_iter()
            .flat_map(|p| {
                let lo = p.last().copied().unwrap_or(2);
                (lo..=max_ell).map(move |l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
        all.extend(profiles.iter().cloned());
    }
    type Row = (String, u64, BigInt, BigInt);
    let results: Vec<Result<Vec<Row>>> = all
        .par_iter()
        .map(|ells| {
            let profile = RegularityProfile::new(ells.clone())?;
            let table = multipartition_counts(&profile, order)?;
            let mut out = Vec::new();
            for n in 0..=order {
                let count = enumerate_multipartitions(&profile, n)?;
                out.push((
                    format!("{ells:?} n={n}"),
                    n as u64,
                    BigInt::from(count),
                    table.values[n].clone(),
                ));
            }
            Ok(out)
        })
        .collect();
    report.sweep(format!(
        "{} profiles, r<={max_r}, l<={max_ell}, n=0..={order}",
        all.len()
    ));
    for r in results {
        for (params, n, a, b) in r? {
            report.check(|| params, n, a, b);
        }
    }
    Ok(report.finish(started))
}

/// Every grid index up to [`ORACLE_ORDER`] rechecked against the counting oracle.
fn family_oracle_check(ctx: &Ctx) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut report = VerificationReport::new("oracle.family_points");
    let mut wanted: BTreeMap<(u32, u32, u64), Vec<(String, u64)>> = BTreeMap::new();
    for f in &ctx.registry.families {
        let Some(grid) = ctx.grids.get(&f.id) else {
            continue;
        };
        for prog in &grid.progressions {
            for term in prog
                .terms
                .iter()
                .filter(|t| t.index as usize <= ORACLE_ORDER)
            {
                let list = wanted.entry((f.ell, prog.r, f.modulus)).or_default();
                list.push((format!("{} {} n={}", f.id, prog.point, term.n), term.index));
                if let Some(b) = term.base {
                    list.push((format!("{} {} base n={}", f.id, prog.point, term.n), b));
                }
            }
        }
    }
    let tables: HashMap<(u32, u32), Vec<BigInt>> = wanted
        .keys()
        .map(|&(ell, r, _)| (ell, r))
        .collect::<std::collections::BTreeSet<_>>()
        .into_par_iter()
        .map(|(ell, r)| Ok(((ell, r), uniform_counts(ell, r, ORACLE_ORDER)?)))
        .collect::<Result<_>>()?;
    report.sweep(format!(
        "{} series, indices <= {ORACLE_ORDER}",
        wanted.len()
    ));
    for ((ell, r, m), points) in &wanted {
        let series = ctx.cache.get(
            SeriesKey {
                ell: *ell,
                r: *r,
                modulus: *m,
            },
            ORACLE_ORDER,
        )?;
        let table = &tables[&(*ell, *r)];
        let mb = BigInt::from(*m);
        for (params, index) in points {
            let i = *index as usize;
            let oracle = (&table[i] % &mb).to_string();
            report.check(
                || params.clone(),
                *index,
                series.coeffs()[i].to_string(),
                oracle,
            );
        }
    }
    Ok(report.finish(started))
}

/// DP counts for the uniform profile `(ell, ..., ell)` with `r` entries.
fn uniform_counts(ell: u32, r: u32, order: usize) -> Result<Vec<BigInt>> {
    Ok(multipartition_counts(&RegularityProfile::uniform(ell, r)?, order)?.values)
}

fn negative_control(ctx: &Ctx) -> Result<VerificationReport> {
    let started = Instant::now();
    let mut fam = ctx.registry.get("thm4.ii")?.clone();
    fam.id = CONTROL_ID.into();
    fam.aliases.clear();
    fam.alpha = Some(vec![17]);
    let grid = generate_grid(&fam, &ctx.budget)?;
    let inner = verify_family(&fam, &grid, &ctx.cache)?;
    let mut report = VerificationReport::new(CONTROL_ID);
    report.params_swept = inner.params_swept.clone();
    report.indices_checked = inner.indices_checked;
    match inner.violations.first() {
        Some(v) => report.note(format!(
            "{} nonzero coefficients mod {} as expected; first at index {}",
            inner.violations.len(),
            fam.modulus,
            v.index
        )),
        None => report.violations.push(Violation {
            params: "alpha=17".into(),
            index: 0,
            value: "no nonzero coefficient".into(),
            expected: "at least one nonzero coefficient".into(),
        }),
    }
    Ok(report.finish(started))
}

/// Largest `n` whose top index fits in `order`, but at least 3.
pub fn thm2_n_max(part: Part, p: u64, order: usize) -> u64 {
    let p4 = p.pow(4);
    let (step, first) = match part {
        Part::I => (p4, p4 - 1),
        Part::II => (7 * p4, (7 * p4 - 3) / 2),
    };
    ((order as u64).saturating_sub(first) / step).max(3)
}

fn run_job(ctx: &Ctx, job: &Job) -> Result<VerificationReport> {
    let n = ctx.budget.order;
    match job {
        Job::Identity(id) => verify_dissection(*id, n),
        Job::Frobenius(k, p) => frobenius_check(*k, *p, n),
        Job::Oracle(ell, r) => {
            let mut rep = oracle_equivalence_check(
                &RegularityProfile::uniform(*ell, *r)?,
                ORACLE_ORDER.min(n),
            )?;
            rep.id = format!("oracle.l{ell}.r{r}");
            Ok(rep)
        }
        Job::Enumeration => enumeration_check(7, 3, ENUMERATION_ORDER),
        Job::FamilyOracle => family_oracle_check(ctx),
        Job::Newman(params) => newman_check(*params, n),
        Job::FourStep(r, p) => newman_four_step(*r, *p, n),
        Job::Hecke(form, p) => hecke_eigen_check(*form, *p, n),
        Job::Support(form) => support_check(*form, n),
        Job::Vanishing(form, p) => vanishing_consequence_check(*form, *p, n),
        Job::Lacunarity(form) => lacunarity_check(*form, 200),
        Job::Bridge(id) => bridge_congruence_check(*id, n),
        Job::Family(id) => {
            let fam = ctx.registry.get(id)?;
            let grid = ctx
                .grids
                .get(id)
                .ok_or_else(|| Error::Unknown(format!("grid for {id}")))?;
            verify_family(fam, grid, &ctx.cache)
        }
        Job::Thm2(part, p) => {
            let n_max = ctx.budget.n_max.unwrap_or_else(|| thm2_n_max(*part, *p, n));
            verify_thm2_unconditional(*part, *p, n_max, ctx.budget.max_order)
        }
        Job::Thm2Search(part) => hypothesis_search_report(*part, ctx.budget.p_max),
        Job::Control => negative_control(ctx),
    }
}

fn error_report(id: &str, err: &Error) -> VerificationReport {
    let mut r = VerificationReport::new(id);
    r.violations.push(Violation {
        params: "error".into(),
        index: 0,
        value: err.to_string(),
        expected: "check completes".into(),
    });
    r.finish(Instant::now())
}

fn run_planned(config: &SuiteConfig, planned: Vec<Planned>) -> Result<SuiteReport> {
    let needs_grids = planned
        .iter()
        .any(|c| matches!(c.job, Job::Family(_) | Job::FamilyOracle));
    let grids: HashMap<String, ParameterGrid> = if needs_grids {
        config
            .registry
            .families
            .par_iter()
            .map(|f| Ok((f.id.clone(), generate_grid(f, &config.budget)?)))
            .collect::<Result<_>>()?
    } else {
        HashMap::new()
    };
    let ctx = Ctx {
        budget: config.budget,
        registry: &config.registry,
        cache: SeriesCache::new(),
        grids,
    };

    // Build each family series once, at the longest prefix any selected grid needs.
    let mut needs: BTreeMap<SeriesKey, usize> = BTreeMap::new();
    for c in &planned {
        if let Job::Family(id) = &c.job {
            let fam = config.registry.get(id)?;
            for (key, order) in ctx.grids[id].series_needs(fam) {
                let e = needs.entry(key).or_default();
                *e = (*e).max(order);
            }
        }
    }
    needs
        .par_iter()
        .try_for_each(|(key, order)| ctx.cache.get(*key, *order).map(|_| ()))?;

    let checks: Vec<VerificationReport> = planned
        .par_iter()
        .map(|c| {
            run_job(&ctx, &c.job)
                .map(|mut r| {
                    r.id = c.id.clone();
                    r
                })
                .unwrap_or_else(|e| error_report(&c.id, &e))
        })
        .collect();
    Ok(SuiteReport::new(checks))
}

/// Runs the selected checks and assembles the sorted report.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let planned = plan(config);
    if planned.is_empty() {
        return Err(Error::Config("selection matches no checks".into()));
    }
    match config.jobs {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            pool.install(|| run_planned(config, planned))
        }
        None => run_planned(config, planned),
    }
}

/// Generates the grid for one family and verifies it.
pub fn verify_single_family(
    registry: &Registry,
    id: &str,
    budget: &GridBudget,
) -> Result<(VerificationReport, ParameterGrid)> {
    let fam = registry.get(id)?;
    let grid = generate_grid(fam, budget)?;
    let cache = SeriesCache::new();
    let report = verify_family(fam, &grid, &cache)?;
    Ok((report, grid))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(sel: &[&str]) -> SuiteConfig {
        let budget = GridBudget {
            order: 300,
            ..GridBudget::default()
        };
        SuiteConfig::new(
            Selection::Only(sel.iter().map(|s| s.to_string()).collect()),
            budget,
            Registry::builtin(),
        )
        .unwrap()
    }

    #[test]
    fn selection_by_group_and_id() {
        assert_eq!(planned_ids(&config(&["identities"])).len(), 4);
        assert_eq!(planned_ids(&config(&["THM1_I"])), vec!["thm1.i"]);
        let thm5 = planned_ids(&config(&["thm5.ii"]));
        assert_eq!(thm5, vec!["thm5.ii", "thm5.ii.mod5", "thm5.ii.mod7"]);
    }

    #[test]
    fn config_validation() {
        let small = GridBudget {
            order: 10,
            ..GridBudget::default()
        };
        assert!(SuiteConfig::new(Selection::All, small, Registry::builtin()).is_err());
        assert!(SuiteConfig::new(
            Selection::Only(vec![]),
            GridBudget::default(),
            Registry::builtin()
        )
        .is_err());
        assert!(run_suite(&config(&["nothing.here"])).is_err());
    }

    #[test]
    fn small_selection_runs() {
        let report = run_suite(&config(&["eq30", "controls"])).unwrap();
        assert_eq!(report.checks.len(), 2);
        assert!(report.checks.iter().all(|c| c.passed()), "{report:?}");
    }
}
