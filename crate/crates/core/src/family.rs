//! Declarative congruence families, parameter grids and their verification.
//!
//! A family names a series `E_ell^r / E_1^r mod m` (with `r` affine in `t`)
//! and an index formula over `n, t, j, alpha, p1..pk`. Three claims exist:
//! the coefficient vanishes, it equals `factor * B(base)`, or it does so only
//! for primes passing a hypothesis on a single coefficient.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::time::Instant;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cache::{SeriesCache, SeriesKey};
use crate::error::{Error, Result};
use crate::expr::{Bindings, IndexExpr};
use crate::primes::is_prime;
use crate::report::{Status, VerificationReport};
use crate::ring::MAX_MODULUS;

const BUILTIN_REGISTRY: &str = include_str!("../registry/families.json");

/// Every statement the built-in registry must cover.
pub const REQUIRED_FAMILIES: &[&str] = &[
    "thm1.i", "thm1.ii", "thm1.iii", "thm1.iv", "thm1.v", "cor1.i", "cor1.ii", "cor1.iii",
    "cor1.iv", "cor1.v", "thm2.i", "thm2.ii", "thm3.i", "thm3.ii", "thm3.iii", "thm4.i", "thm4.ii",
    "thm4.iii", "thm5.i", "thm5.ii", "thm5.iii", "thm5.iv", "thm5.v", "thm5.vi", "thm6.i",
    "thm6.ii", "thm6.iii", "eq7", "eq8", "eq13", "eq14", "eq18", "eq19", "eq30", "eq31", "eq32",
    "eq36", "eq37", "eq39", "eq40", "eq43", "eq44",
];

/// Canonical spelling of a family id: lowercase with `.` separators, so
/// `THM1_I` and `thm1.i` name the same family.
pub fn normalize_id(id: &str) -> String {
    id.trim().to_ascii_lowercase().replace('_', ".")
}

/// `r = slope * t + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineR {
    pub slope: u32,
    pub intercept: u32,
}

impl AffineR {
    pub fn at(&self, t: u32) -> u32 {
        self.slope * t + self.intercept
    }
}

/// `p ≡ residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub modulus: u64,
    pub residue: u64,
}

impl ResidueClass {
    pub fn contains(&self, p: u64) -> bool {
        p % self.modulus == self.residue % self.modulus
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrimeArity {
    /// A single prime `p1`.
    One,
    /// Primes `p1..p_{t+1}`.
    TPlusOne,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRule {
    pub arity: PrimeArity,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub residues: Vec<ResidueClass>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<u64>,
}

impl PrimeRule {
    pub fn admits(&self, p: u64) -> bool {
        is_prime(p) && !self.exclude.contains(&p) && self.residues.iter().all(|c| c.contains(p))
    }

    fn count(&self, t: u32) -> usize {
        match self.arity {
            PrimeArity::One => 1,
            PrimeArity::TPlusOne => t as usize + 1,
        }
    }
}

/// Side conditions on `j`, stated relative to the last prime of the tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JRule {
    #[serde(default)]
    pub coprime_to_last_prime: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiple_of: Option<u64>,
}

impl JRule {
    /// One full residue system `1..=lcm(p, k)` filtered by the conditions.
    pub fn values(&self, p: u64) -> Vec<i64> {
        let k = self.multiple_of.unwrap_or(1);
        let period = p.lcm(&k);
        (1..=period)
            .filter(|j| j % k == 0 && !(self.coprime_to_last_prime && j % p == 0))
            .map(|j| j as i64)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Claim {
    /// `B(index) ≡ 0`.
    Vanishing,
    /// `B(index) ≡ factor * B(base)`.
    Scaling { base: IndexExpr, factor: IndexExpr },
    /// As `Scaling`, for the primes with `B(hypothesis) ≡ 0`.
    Conditional {
        hypothesis: IndexExpr,
        base: IndexExpr,
        factor: IndexExpr,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceFamily {
    pub id: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    pub ell: u32,
    pub r: AffineR,
    pub modulus: u64,
    #[serde(default = "default_t_values")]
    pub t_values: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primes: Option<PrimeRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<JRule>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<i64>>,
    /// Checked primes are additionally reported as in or out of this class.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag_primes: Option<ResidueClass>,
    pub index: IndexExpr,
    #[serde(flatten)]
    pub claim: Claim,
}

fn default_t_values() -> Vec<u32> {
    vec![0]
}

impl CongruenceFamily {
    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Error::Family {
            family: self.id.clone(),
            reason: reason.into(),
        };
        if self.id.trim().is_empty() {
            return Err(bad("empty id"));
        }
        if !(2..MAX_MODULUS).contains(&self.modulus) {
            return Err(bad("modulus must lie in [2, 2^31)"));
        }
        if self.ell < 2 {
            return Err(bad("ell must be at least 2"));
        }
        if self.t_values.is_empty() {
            return Err(bad("no t values"));
        }
        if self.t_values.iter().any(|&t| self.r.at(t) == 0) {
            return Err(bad("r must be positive"));
        }
        if self.j.is_some() && self.primes.is_none() {
            return Err(bad("a j rule needs primes"));
        }
        if let Some(rule) = &self.primes {
            if rule.residues.iter().any(|c| c.modulus == 0) {
                return Err(bad("residue class with modulus 0"));
            }
        }
        if matches!(
            self.j,
            Some(JRule {
                multiple_of: Some(0),
                ..
            })
        ) {
            return Err(bad("j multiple of 0"));
        }
        if matches!(&self.alpha, Some(a) if a.is_empty()) {
            return Err(bad("empty alpha set"));
        }
        if matches!(self.claim, Claim::Conditional { .. }) && self.primes.is_none() {
            return Err(bad("a conditional family needs primes"));
        }
        Ok(())
    }

    pub fn series_key(&self, t: u32) -> SeriesKey {
        SeriesKey {
            ell: self.ell,
            r: self.r.at(t),
            modulus: self.modulus,
        }
    }

    pub fn is_conditional(&self) -> bool {
        matches!(self.claim, Claim::Conditional { .. })
    }

    fn bindings(&self, point: &GridPoint, n: u64) -> Bindings {
        Bindings {
            n: Some(n as i128),
            t: Some(point.t as i128),
            j: point.j.map(i128::from),
            alpha: point.alpha.map(i128::from),
            primes: point.primes.iter().map(|&p| p as i128).collect(),
        }
    }

    /// The coefficient index for one parameter choice.
    pub fn family_index(&self, point: &GridPoint, n: u64) -> Result<u64> {
        self.check_point(point)?;
        eval_index(&self.index, &self.bindings(point, n))
    }

    fn check_point(&self, point: &GridPoint) -> Result<()> {
        let bad = |reason: String| Error::Family {
            family: self.id.clone(),
            reason,
        };
        if !self.t_values.contains(&point.t) {
            return Err(bad(format!(
                "t={} is not one of {:?}",
                point.t, self.t_values
            )));
        }
        match &self.primes {
            Some(rule) => {
                if point.primes.len() != rule.count(point.t) {
                    return Err(bad(format!("expected {} primes", rule.count(point.t))));
                }
                if let Some(&p) = point.primes.iter().find(|&&p| !rule.admits(p)) {
                    return Err(bad(format!("prime {p} is not admissible")));
                }
            }
            None if !point.primes.is_empty() => return Err(bad("family takes no primes".into())),
            None => {}
        }
        match (&self.j, point.j, point.primes.last()) {
            (Some(rule), Some(j), Some(&p)) => {
                let k = rule.multiple_of.unwrap_or(1) as i64;
                if j % k != 0 || (rule.coprime_to_last_prime && j % p as i64 == 0) {
                    return Err(bad(format!("j={j} violates the j constraint")));
                }
            }
            (Some(_), _, _) => return Err(bad("j is required".into())),
            (None, Some(_), _) => return Err(bad("family takes no j".into())),
            (None, None, _) => {}
        }
        match (&self.alpha, point.alpha) {
            (Some(set), Some(a)) if !set.contains(&a) => {
                Err(bad(format!("alpha={a} is not in {set:?}")))
            }
            (Some(_), None) => Err(bad("alpha is required".into())),
            (None, Some(_)) => Err(bad("family takes no alpha".into())),
            _ => Ok(()),
        }
    }
}

fn eval_index(expr: &IndexExpr, b: &Bindings) -> Result<u64> {
    let v = expr.eval(b)?;
    u64::try_from(v).map_err(|_| Error::Expr(format!("negative index {v} from `{expr}`")))
}

/// The collection of families, loadable from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Registry {
    pub version: u32,
    pub families: Vec<CongruenceFamily>,
}

impl Registry {
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN_REGISTRY).expect("built-in registry is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let reg: Registry = serde_json::from_str(s)?;
        let mut seen = HashSet::new();
        for f in &reg.families {
            f.validate()?;
            for name in std::iter::once(&f.id).chain(&f.aliases) {
                if !seen.insert(normalize_id(name)) {
                    return Err(Error::Config(format!(
                        "duplicate family id or alias `{name}`"
                    )));
                }
            }
        }
        Ok(reg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, id: &str) -> Result<&CongruenceFamily> {
        let key = normalize_id(id);
        self.families
            .iter()
            .find(|f| {
                normalize_id(&f.id) == key || f.aliases.iter().any(|a| normalize_id(a) == key)
            })
            .ok_or_else(|| Error::Unknown(format!("family `{id}`")))
    }

    pub fn missing_required(&self) -> Vec<&'static str> {
        REQUIRED_FAMILIES
            .iter()
            .copied()
            .filter(|id| self.get(id).is_err())
            .collect()
    }
}

/// Limits for grid generation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridBudget {
    /// Default series order.
    pub order: usize,
    /// Hard ceiling for the per-family order.
    pub max_order: usize,
    pub n_max: Option<u64>,
    /// Smallest admissible primes taken per family.
    pub max_primes: usize,
    pub max_t: u32,
    /// Prime search bound for conditional families.
    pub p_max: u64,
}

pub const DEFAULT_ORDER: usize = 2000;
pub const MAX_ORDER: usize = 100_000;

impl Default for GridBudget {
    fn default() -> Self {
        GridBudget {
            order: DEFAULT_ORDER,
            max_order: MAX_ORDER,
            n_max: None,
            max_primes: 3,
            max_t: 1,
            p_max: 100,
        }
    }
}

impl GridBudget {
    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.max_primes == 0 || self.p_max < 2 {
            return Err(Error::Config("budget values must be positive".into()));
        }
        if self.max_order < self.order {
            return Err(Error::Config("max_order is below order".into()));
        }
        Ok(())
    }
}

/// One parameter choice apart from `n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridPoint {
    pub t: u32,
    pub primes: Vec<u64>,
    pub j: Option<i64>,
    pub alpha: Option<i64>,
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t={}", self.t)?;
        if !self.primes.is_empty() {
            let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
            write!(f, " p=({})", ps.join(","))?;
        }
        if let Some(j) = self.j {
            write!(f, " j={j}")?;
        }
        if let Some(a) = self.alpha {
            write!(f, " alpha={a}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub n: u64,
    pub index: u64,
    pub base: Option<u64>,
}

/// All checked indices for one grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Progression {
    pub point: GridPoint,
    pub r: u32,
    pub hypothesis: Option<u64>,
    pub terms: Vec<Term>,
}

/// A grid point whose first index lies beyond the budget ceiling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutOfBudget {
    pub point: GridPoint,
    pub r: u32,
    pub first_index: u64,
    pub hypothesis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterGrid {
    pub family: String,
    pub order: usize,
    pub primes: Vec<u64>,
    pub progressions: Vec<Progression>,
    pub out_of_budget: Vec<OutOfBudget>,
}

impl ParameterGrid {
    pub fn index_count(&self) -> usize {
        self.progressions.iter().map(|p| p.terms.len()).sum()
    }

    /// Series and prefix length needed to check the grid.
    pub fn series_needs(&self, family: &CongruenceFamily) -> BTreeMap<SeriesKey, usize> {
        let mut needs = BTreeMap::new();
        let rs = self
            .progressions
            .iter()
            .map(|p| p.r)
            .chain(self.out_of_budget.iter().map(|o| o.r));
        for r in rs {
            needs.insert(
                SeriesKey {
                    ell: family.ell,
                    r,
                    modulus: family.modulus,
                },
                self.order,
            );
        }
        needs
    }
}

/// The smallest admissible primes for a family, skipping any prime that
/// leaves no admissible `j`. Conditional families take every admissible
/// prime up to `p_max` instead.
pub fn admissible_primes(family: &CongruenceFamily, budget: &GridBudget) -> Vec<u64> {
    let Some(rule) = &family.primes else {
        return Vec::new();
    };
    let usable = |p: u64| rule.admits(p) && family.j.is_none_or(|j| !j.values(p).is_empty());
    if family.is_conditional() {
        (2..=budget.p_max).filter(|&p| usable(p)).collect()
    } else {
        (2..)
            .filter(|&p| usable(p))
            .take(budget.max_primes)
            .collect()
    }
}

fn tuples(primes: &[u64], k: usize) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                primes.iter().map(move |&p| {
                    let mut v = prefix.clone();
                    v.push(p);
                    v
                })
            })
            .collect();
    }
    out
}

fn grid_points(family: &CongruenceFamily, budget: &GridBudget, primes: &[u64]) -> Vec<GridPoint> {
    let mut points = Vec::new();
    for &t in family.t_values.iter().filter(|&&t| t <= budget.max_t) {
        let prime_tuples = match &family.primes {
            Some(rule) => tuples(primes, rule.count(t)),
            None => vec![Vec::new()],
        };
        for tuple in prime_tuples {
            let js: Vec<Option<i64>> = match (&family.j, tuple.last()) {
                (Some(rule), Some(&p)) => rule.values(p).into_iter().map(Some).collect(),
                _ => vec![None],
            };
            let alphas: Vec<Option<i64>> = match &family.alpha {
                Some(set) => set.iter().copied().map(Some).collect(),
                None => vec![None],
            };
            for &j in &js {
                for &alpha in &alphas {
                    points.push(GridPoint {
                        t,
                        primes: tuple.clone(),
                        j,
                        alpha,
                    });
                }
            }
        }
    }
    points
}

/// Expands a family into concrete progressions that fit the budget.
///
/// The series order starts at `budget.order` and is raised to the largest
/// first index of any grid point, up to `budget.max_order`; points starting
/// beyond that are listed as out of budget.
pub fn generate_grid(family: &CongruenceFamily, budget: &GridBudget) -> Result<ParameterGrid> {
    budget.validate()?;
    family.validate()?;
    let primes = admissible_primes(family, budget);
    let (hyp_expr, base_expr) = match &family.claim {
        Claim::Vanishing => (None, None),
        Claim::Scaling { base, .. } => (None, Some(base)),
        Claim::Conditional {
            hypothesis, base, ..
        } => (Some(hypothesis), Some(base)),
    };

    let mut kept = Vec::new();
    let mut out_of_budget = Vec::new();
    let mut order = budget.order;
    for point in grid_points(family, budget, &primes) {
        let r = family.r.at(point.t);
        let b0 = family.bindings(&point, 0);
        let first = eval_index(&family.index, &b0)?;
        let hypothesis = hyp_expr.map(|h| eval_index(h, &b0)).transpose()?;
        if first as usize > budget.max_order {
            out_of_budget.push(OutOfBudget {
                point,
                r,
                first_index: first,
                hypothesis,
            });
            continue;
        }
        order = order
            .max(first as usize)
            .max(hypothesis.unwrap_or(0) as usize);
        kept.push((point, r, hypothesis));
    }
    for o in &out_of_budget {
        if let Some(h) = o.hypothesis {
            order = order.max(h as usize);
        }
    }

    let mut progressions = Vec::new();
    for (point, r, hypothesis) in kept {
        let mut terms = Vec::new();
        for n in 0.. {
            if budget.n_max.is_some_and(|m| n > m) {
                break;
            }
            let b = family.bindings(&point, n);
            let index = eval_index(&family.index, &b)?;
            if index as usize > order {
                break;
            }
            let base = base_expr.map(|e| eval_index(e, &b)).transpose()?;
            if base.is_some_and(|i| i as usize > order) {
                break;
            }
            terms.push(Term { n, index, base });
        }
        progressions.push(Progression {
            point,
            r,
            hypothesis,
            terms,
        });
    }
    Ok(ParameterGrid {
        family: family.id.clone(),
        order,
        primes,
        progressions,
        out_of_budget,
    })
}

fn prime_list(ps: &[u64]) -> String {
    let v: Vec<String> = ps.iter().map(u64::to_string).collect();
    format!("[{}]", v.join(", "))
}

/// Checks every index of a grid against the cached series.
pub fn verify_family(
    family: &CongruenceFamily,
    grid: &ParameterGrid,
    cache: &SeriesCache,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let m = family.modulus;
    let mut report = VerificationReport::new(normalize_id(&family.id));
    if let Some(rule) = &family.j {
        let k = rule.multiple_of.unwrap_or(1);
        report.note(format!(
            "j runs over one residue system 1..=lcm(p, {k}); shifting j by that period only shifts n, so negative j add nothing"
        ));
    }
    if family.primes.is_some() {
        report.note(format!("primes {}", prime_list(&grid.primes)));
    }
    if let Some(class) = &family.flag_primes {
        let (inside, outside): (Vec<u64>, Vec<u64>) =
            grid.primes.iter().partition(|&&p| class.contains(p));
        report.note(format!(
            "checked primes with p ≡ {} mod {}: {}; without: {}",
            class.residue,
            class.modulus,
            prime_list(&inside),
            prime_list(&outside)
        ));
    }

    let factor_expr = match &family.claim {
        Claim::Vanishing => None,
        Claim::Scaling { factor, .. } | Claim::Conditional { factor, .. } => Some(factor),
    };
    let conditional = family.is_conditional();
    let mut hypothesis_primes = BTreeSet::new();
    let mut failed_primes = BTreeSet::new();

    for prog in &grid.progressions {
        let series = cache.get(family.series_key(prog.point.t), grid.order)?;
        let c = series.coeffs();
        if let Some(h) = prog.hypothesis {
            if c[h as usize] != 0 {
                failed_primes.extend(prog.point.primes.iter().copied());
                continue;
            }
            hypothesis_primes.extend(prog.point.primes.iter().copied());
        }
        let factor = match factor_expr {
            Some(e) => {
                let v = e.eval(&family.bindings(&prog.point, 0))?;
                v.rem_euclid(m as i128) as u64
            }
            None => 0,
        };
        let last = prog.terms.last().map(|t| t.n);
        report.sweep(match last {
            Some(n) => format!("{} r={} n=0..={n}", prog.point, prog.r),
            None => format!("{} r={} (no index within order)", prog.point, prog.r),
        });
        for term in &prog.terms {
            let value = c[term.index as usize];
            let expected = match term.base {
                Some(b) => (factor as u128 * c[b as usize] as u128 % m as u128) as u64,
                None => 0,
            };
            report.check(
                || format!("{} n={}", prog.point, term.n),
                term.index,
                value,
                expected,
            );
        }
    }

    let mut skipped_hyp = BTreeSet::new();
    let mut skipped = Vec::new();
    for o in &grid.out_of_budget {
        if let Some(h) = o.hypothesis {
            let series = cache.get(family.series_key(o.point.t), grid.order)?;
            if series.coeffs()[h as usize] != 0 {
                failed_primes.extend(o.point.primes.iter().copied());
                continue;
            }
            skipped_hyp.extend(o.point.primes.iter().copied());
        }
        skipped.push(o);
    }
    if let Some(first) = skipped.iter().min_by_key(|o| o.first_index) {
        report.note(format!(
            "{} grid points out of budget (first index > {}); nearest: {} r={} first index {}",
            skipped.len(),
            MAX_ORDER.max(grid.order),
            first.point,
            first.r,
            first.first_index
        ));
    }

    if conditional {
        let found: Vec<u64> = hypothesis_primes
            .iter()
            .chain(&skipped_hyp)
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        report.note(format!(
            "hypothesis holds for primes {}",
            prime_list(&found)
        ));
        if hypothesis_primes.is_empty() {
            report.status = Status::Vacuous;
            report.note("conditional family vacuously unverified at budget");
        }
    }
    if grid.progressions.is_empty() && grid.out_of_budget.is_empty() {
        report.note("empty grid");
    }
    Ok(report.finish(started))
}
