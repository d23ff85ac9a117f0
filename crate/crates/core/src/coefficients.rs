//! Coefficients of `E_1^r` and of three eta powers, with the recurrences and
//! congruences that tie them to the multipartition series.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{eta_quotient, eta_quotient_shifted, EtaQuotientSpec};
use crate::oracle::{CoefficientTable, Provenance};
use crate::primes::is_prime;
use crate::report::VerificationReport;
use crate::ring::{CoeffRing, Zmod};
use crate::series::{euler_e, TruncatedSeries};
use crate::ZZ;

/// `a_r(n)`: coefficients of `E_1^r` up to `order`.
pub fn e1_power_coeffs(r: u32, order: usize) -> Result<CoefficientTable> {
    if r == 0 {
        return Err(Error::OutOfRange {
            what: "power of E_1".into(),
            index: 0,
        });
    }
    let values = euler_e(&ZZ::new(), 1, order).pow(r).into_coeffs();
    Ok(CoefficientTable {
        name: format!("a_{r}"),
        values,
        provenance: Provenance::Series,
    })
}

/// Table lookup with `a(x) = 0` for negative `x`.
fn at(table: &CoefficientTable, x: i64) -> BigInt {
    if x < 0 {
        return BigInt::zero();
    }
    table
        .get(x as usize)
        .cloned()
        .unwrap_or_else(|| panic!("{} needed beyond order {}", table.name, table.order()))
}

/// `a(n / p)`, zero when `p` does not divide `n`.
fn at_quotient(table: &CoefficientTable, n: i64, p: u64) -> BigInt {
    let p = p as i64;
    if n.mod_floor(&p) != 0 {
        BigInt::zero()
    } else {
        at(table, Integer::div_floor(&n, &p))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewmanParams {
    pub r: u32,
    pub p: u64,
    pub delta: u64,
}

impl NewmanParams {
    /// Validates `r` even in `(0, 24]`, `p` prime and `24 | r(p-1)`.
    pub fn new(r: u32, p: u64) -> Result<Self> {
        let fail = |reason: &str| Error::InvalidNewman {
            r,
            p,
            reason: reason.into(),
        };
        if r == 0 || r > 24 || !r.is_multiple_of(2) {
            return Err(fail("r must be even with 0 < r <= 24"));
        }
        if !is_prime(p) {
            return Err(fail("p must be prime"));
        }
        let rp = r as u64 * (p - 1);
        if !rp.is_multiple_of(24) {
            return Err(fail("24 does not divide r(p-1)"));
        }
        Ok(NewmanParams {
            r,
            p,
            delta: rp / 24,
        })
    }

    /// `p^(r/2 - 1)`.
    pub fn weight_power(&self) -> BigInt {
        BigInt::from(self.p).pow(self.r / 2 - 1)
    }

    /// `r(p^k - 1)/24`, the offset after `k` steps of `n -> pn + delta`.
    pub fn delta_k(&self, k: u32) -> u64 {
        self.r as u64 * (self.p.pow(k) - 1) / 24
    }

    /// Every admissible pair with `p <= max_p`.
    pub fn all_up_to(max_p: u64) -> Vec<NewmanParams> {
        let mut out = Vec::new();
        for r in (2..=24).step_by(2) {
            for p in 2..=max_p {
                if let Ok(np) = NewmanParams::new(r, p) {
                    out.push(np);
                }
            }
        }
        out
    }
}

/// Checks `a_r(pn + d) = a_r(d) a_r(n) - p^(r/2-1) a_r((n - d)/p)` for all
/// `n` with `pn + d` inside the table.
pub fn newman_check_with(
    params: NewmanParams,
    table: &CoefficientTable,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let NewmanParams { r, p, delta } = params;
    let order = table.order() as u64;
    if order < p + delta {
        return Err(Error::BudgetExceeded(format!(
            "Newman check r={r} p={p} needs order >= {}",
            p + delta
        )));
    }
    let mut report = VerificationReport::new(format!("newman.r{r}.p{p}"));
    let w = params.weight_power();
    let a_delta = at(table, delta as i64);
    let n_max = (order - delta) / p;
    report.sweep(format!("r={r} p={p} delta={delta} n=0..={n_max}"));
    for n in 0..=n_max {
        let lhs = at(table, (p * n + delta) as i64);
        let rhs =
            &a_delta * at(table, n as i64) - &w * at_quotient(table, n as i64 - delta as i64, p);
        report.check(|| format!("n={n}"), p * n + delta, lhs, rhs);
    }
    Ok(report.finish(started))
}

pub fn newman_check(params: NewmanParams, order: usize) -> Result<VerificationReport> {
    newman_check_with(params, &e1_power_coeffs(params.r, order)?)
}

/// Checks the four-fold composition of the Newman recurrence:
/// `a(p^4 n + d_4) = A(A^2 - 2P) a(pn + d) - P(A^2 - P) a(n)`, with
/// `A = a(d)` and `P = p^(r/2-1)`.
pub fn newman_four_step_with(
    params: NewmanParams,
    table: &CoefficientTable,
) -> Result<VerificationReport> {
    let started = Instant::now();
    let NewmanParams { r, p, delta } = params;
    let order = table.order() as u64;
    let p4 = p.pow(4);
    let d4 = params.delta_k(4);
    if order < d4 {
        return Err(Error::BudgetExceeded(format!(
            "four-step composition r={r} p={p} needs order >= {d4}"
        )));
    }
    let mut report = VerificationReport::new(format!("newman4.r{r}.p{p}"));
    let a = at(table, delta as i64);
    let w = params.weight_power();
    let c1 = &a * (&a * &a - BigInt::from(2) * &w);
    let c0 = &w * (&a * &a - &w);
    let n_max = (order - d4) / p4;
    report.sweep(format!("r={r} p={p} index=p^4 n+{d4} n=0..={n_max}"));
    for n in 0..=n_max {
        let lhs = at(table, (p4 * n + d4) as i64);
        let rhs = &c1 * at(table, (p * n + delta) as i64) - &c0 * at(table, n as i64);
        report.check(|| format!("n={n}"), p4 * n + d4, lhs, rhs);
    }
    Ok(report.finish(started))
}

/// Four-step check for `r` in {12, 24}; `r = 12` needs an odd prime.
pub fn newman_four_step(r: u32, p: u64, order: usize) -> Result<VerificationReport> {
    if r != 12 && r != 24 {
        return Err(Error::InvalidNewman {
            r,
            p,
            reason: "four-step check covers r = 12, 24".into(),
        });
    }
    let params = NewmanParams::new(r, p)?;
    newman_four_step_with(params, &e1_power_coeffs(r, order)?)
}

/// The three eta powers whose Hecke structure drives the prime-modulus
/// families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EtaPowerForm {
    /// `eta^8(3z)`: weight 4, level 9, trivial character.
    Eta8_3z,
    /// `eta^6(4z)`: weight 3, level 16, character `(-1)^((n-1)/2)`.
    Eta6_4z,
    /// `eta^10(12z)`: weight 5, level 144, character `(-1)^((n-1)/2)`.
    Eta10_12z,
}

impl EtaPowerForm {
    pub const ALL: [EtaPowerForm; 3] = [
        EtaPowerForm::Eta8_3z,
        EtaPowerForm::Eta6_4z,
        EtaPowerForm::Eta10_12z,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EtaPowerForm::Eta8_3z => "eta8_3z",
            EtaPowerForm::Eta6_4z => "eta6_4z",
            EtaPowerForm::Eta10_12z => "eta10_12z",
        }
    }

    pub fn spec(&self) -> EtaQuotientSpec {
        match self {
            EtaPowerForm::Eta8_3z => EtaQuotientSpec::eta(&[(3, 8)]),
            EtaPowerForm::Eta6_4z => EtaQuotientSpec::eta(&[(4, 6)]),
            EtaPowerForm::Eta10_12z => EtaQuotientSpec::eta(&[(12, 10)]),
        }
    }

    pub fn weight(&self) -> u32 {
        match self {
            EtaPowerForm::Eta8_3z => 4,
            EtaPowerForm::Eta6_4z => 3,
            EtaPowerForm::Eta10_12z => 5,
        }
    }

    pub fn level(&self) -> u64 {
        match self {
            EtaPowerForm::Eta8_3z => 9,
            EtaPowerForm::Eta6_4z => 16,
            EtaPowerForm::Eta10_12z => 144,
        }
    }

    /// Nebentypus at a prime; zero at primes dividing the level.
    pub fn character(&self, p: u64) -> i64 {
        if self.level().gcd(&p) != 1 {
            return 0;
        }
        match self {
            EtaPowerForm::Eta8_3z => 1,
            EtaPowerForm::Eta6_4z | EtaPowerForm::Eta10_12z => {
                if p % 4 == 1 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// `(modulus, residue)`: coefficients vanish off this class.
    pub fn support(&self) -> (u64, u64) {
        match self {
            EtaPowerForm::Eta8_3z => (3, 1),
            EtaPowerForm::Eta6_4z => (4, 1),
            EtaPowerForm::Eta10_12z => (12, 5),
        }
    }

    /// Whether `p` falls in the class where the two-term vanishing relation holds.
    pub fn vanishing_prime(&self, p: u64) -> bool {
        is_prime(p)
            && match self {
                EtaPowerForm::Eta8_3z => p % 3 == 2,
                EtaPowerForm::Eta6_4z => p % 4 == 3,
                EtaPowerForm::Eta10_12z => p % 4 == 3 && p != 3,
            }
    }
}

impl fmt::Display for EtaPowerForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EtaPowerForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        EtaPowerForm::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

/// `a(n)` for `n <= order`, including the `q`-shift of the eta power.
pub fn eta_power_coeffs(form: EtaPowerForm, order: usize) -> Result<CoefficientTable> {
    let values = eta_quotient_shifted(&form.spec(), order, &ZZ::new())?.into_coeffs();
    Ok(CoefficientTable {
        name: form.name().to_string(),
        values,
        provenance: Provenance::Series,
    })
}

pub fn support_check(form: EtaPowerForm, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let table = eta_power_coeffs(form, order)?;
    let (m, res) = form.support();
    let mut report = VerificationReport::new(format!("support.{}", form.name()));
    report.sweep(format!("n=0..={order} off class {res} mod {m}"));
    for n in (0..=order as u64).filter(|n| n % m != res) {
        report.check(|| format!("n={n}"), n, at(&table, n as i64), BigInt::zero());
    }
    Ok(report.finish(started))
}

/// `a(pn) + chi(p) p^(w-1) a(n/p) = a(p) a(n)` for `1 <= n <= table_order / p`.
pub fn hecke_eigen_check_with(
    form: EtaPowerForm,
    p: u64,
    table: &CoefficientTable,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if form == EtaPowerForm::Eta10_12z {
        return Err(Error::Unknown(
            "eta10_12z is not an eigenform; use the vanishing consequence check".into(),
        ));
    }
    if !is_prime(p) {
        return Err(Error::PrimePrecondition {
            p,
            what: "Hecke operator".into(),
        });
    }
    let mut report = VerificationReport::new(format!("hecke.{}.p{p}", form.name()));
    let coef = BigInt::from(form.character(p)) * BigInt::from(p).pow(form.weight() - 1);
    let ap = at(table, p as i64);
    let n_max = table.order() as u64 / p;
    report.sweep(format!("p={p} chi(p)={} n=1..={n_max}", form.character(p)));
    for n in 1..=n_max {
        let lhs = at(table, (p * n) as i64) + &coef * at_quotient(table, n as i64, p);
        let rhs = &ap * at(table, n as i64);
        report.check(|| format!("n={n}"), p * n, lhs, rhs);
    }
    Ok(report.finish(started))
}

pub fn hecke_eigen_check(form: EtaPowerForm, p: u64, order: usize) -> Result<VerificationReport> {
    hecke_eigen_check_with(form, p, &eta_power_coeffs(form, order)?)
}

/// Two-term relation `a(pn) + chi(p) p^(w-1) a(n/p) = 0` at primes in the
/// form's vanishing class; for the two eigenforms `a(p) = 0` is asserted first.
pub fn vanishing_consequence_check_with(
    form: EtaPowerForm,
    p: u64,
    table: &CoefficientTable,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !form.vanishing_prime(p) {
        return Err(Error::PrimePrecondition {
            p,
            what: format!("vanishing relation for {form}"),
        });
    }
    let mut report = VerificationReport::new(format!("vanishing.{}.p{p}", form.name()));
    if form != EtaPowerForm::Eta10_12z {
        report.check(|| "a(p)".into(), p, at(table, p as i64), BigInt::zero());
    }
    let coef = BigInt::from(form.character(p)) * BigInt::from(p).pow(form.weight() - 1);
    let n_max = table.order() as u64 / p;
    report.sweep(format!("p={p} n=1..={n_max}"));
    for n in 1..=n_max {
        let lhs = at(table, (p * n) as i64) + &coef * at_quotient(table, n as i64, p);
        report.check(|| format!("n={n}"), p * n, lhs, BigInt::zero());
    }
    Ok(report.finish(started))
}

pub fn vanishing_consequence_check(
    form: EtaPowerForm,
    p: u64,
    order: usize,
) -> Result<VerificationReport> {
    vanishing_consequence_check_with(form, p, &eta_power_coeffs(form, order)?)
}

/// `a(p) = 0` for every prime `p <= p_max` in the form's vanishing class.
pub fn lacunarity_check(form: EtaPowerForm, p_max: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let table = eta_power_coeffs(form, p_max as usize)?;
    let mut report = VerificationReport::new(format!("lacunarity.{}", form.name()));
    report.sweep(format!("vanishing-class primes p <= {p_max}"));
    for p in (2..=p_max).filter(|&p| form.vanishing_prime(p)) {
        report.check(|| format!("p={p}"), p, at(&table, p as i64), BigInt::zero());
    }
    Ok(report.finish(started))
}

/// Smallest `count` primes in the form's vanishing class.
pub fn vanishing_primes(form: EtaPowerForm, count: usize) -> Vec<u64> {
    (2..)
        .filter(|&p| form.vanishing_prime(p))
        .take(count)
        .collect()
}

/// Congruences linking a multipartition series to `a_r` or an eta power.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BridgeId {
    /// `B_5^(6)(n) = a_24(n) mod 5`
    B56A24,
    /// `B_7^(6)(7n+2) = 6 a_12(n) mod 7`
    B76A12,
    /// `B_3^(12)(3n) = a(3n+1) mod 3`, `a` from `eta^8(3z)`
    B312Eta8,
    /// `B_3^(15)(3n) = a(12n+5) mod 3`, `a` from `eta^10(12z)`
    B315Eta10,
    /// `B_5^(10)(5n) = a(3n+1) mod 5`, `a` from `eta^8(3z)`
    B510Eta8,
    /// `B_7^(7)(7n) = a(4n+1) mod 7`, `a` from `eta^6(4z)`
    B77Eta6,
    /// `B_11^(11)(11n) = a(12n+5) mod 11`, `a` from `eta^10(12z)`
    B1111Eta10,
}

impl BridgeId {
    pub const ALL: [BridgeId; 7] = [
        BridgeId::B56A24,
        BridgeId::B76A12,
        BridgeId::B312Eta8,
        BridgeId::B315Eta10,
        BridgeId::B510Eta8,
        BridgeId::B77Eta6,
        BridgeId::B1111Eta10,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BridgeId::B56A24 => "b56_a24",
            BridgeId::B76A12 => "b76_a12",
            BridgeId::B312Eta8 => "b312_eta8",
            BridgeId::B315Eta10 => "b315_eta10",
            BridgeId::B510Eta8 => "b510_eta8",
            BridgeId::B77Eta6 => "b77_eta6",
            BridgeId::B1111Eta10 => "b1111_eta10",
        }
    }

    /// `(ell, r)` of the multipartition series.
    pub fn series(&self) -> (u32, u32) {
        match self {
            BridgeId::B56A24 => (5, 6),
            BridgeId::B76A12 => (7, 6),
            BridgeId::B312Eta8 => (3, 12),
            BridgeId::B315Eta10 => (3, 15),
            BridgeId::B510Eta8 => (5, 10),
            BridgeId::B77Eta6 => (7, 7),
            BridgeId::B1111Eta10 => (11, 11),
        }
    }
}

impl FromStr for BridgeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        BridgeId::ALL
            .into_iter()
            .find(|b| b.name() == key || b.name().replace('_', "") == key.replace('_', ""))
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

/// `B_ell^(r)(n) mod m` for `n <= order`.
pub fn multipartition_series_mod(
    ell: u32,
    r: u32,
    m: u64,
    order: usize,
) -> Result<TruncatedSeries<Zmod>> {
    let ring = Zmod::new(m)?;
    Ok(eta_quotient(
        &EtaQuotientSpec::regular_multipartition(ell, r),
        order,
        &ring,
    )?
    .0)
}

/// Verifies a bridge congruence for every index up to `order`.
///
/// For the eta bridges the whole series is compared: indices off the
/// dilated progression must vanish mod `m` as well.
pub fn bridge_congruence_check(id: BridgeId, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    let (ell, r) = id.series();
    let m = ell as u64;
    let ring = Zmod::new(m)?;
    let b = multipartition_series_mod(ell, r, m, order)?;
    let mut report = VerificationReport::new(format!("bridge.{}", id.name()));
    let red = |v: &BigInt| ring.reduce_big(v);
    match id {
        BridgeId::B56A24 => {
            let a = e1_power_coeffs(24, order)?;
            report.sweep(format!("n=0..={order}"));
            for n in 0..=order {
                report.check(
                    || format!("n={n}"),
                    n as u64,
                    b.coeffs()[n],
                    red(&a.values[n]),
                );
            }
        }
        BridgeId::B76A12 => {
            if order < 2 {
                return Err(Error::BudgetExceeded(
                    "bridge b76_a12 needs order >= 2".into(),
                ));
            }
            let n_max = (order - 2) / 7;
            let a = e1_power_coeffs(12, n_max)?;
            report.sweep(format!("n=0..={n_max} index=7n+2"));
            for n in 0..=n_max {
                let idx = 7 * n + 2;
                let want = ring.mul(&6, &red(&a.values[n]));
                report.check(|| format!("n={n}"), idx as u64, b.coeffs()[idx], want);
            }
        }
        _ => {
            // B(ell*n) against a(step*n + offset) of an eta power
            let (form, step, offset) = match id {
                BridgeId::B312Eta8 | BridgeId::B510Eta8 => (EtaPowerForm::Eta8_3z, 3, 1),
                BridgeId::B315Eta10 | BridgeId::B1111Eta10 => (EtaPowerForm::Eta10_12z, 12, 5),
                BridgeId::B77Eta6 => (EtaPowerForm::Eta6_4z, 4, 1),
                _ => unreachable!(),
            };
            let ell = ell as usize;
            let a = eta_power_coeffs(form, step * (order / ell) + offset)?;
            report.sweep(format!(
                "k=0..={order}; k={ell}n against {}({step}n+{offset}), otherwise 0",
                form.name()
            ));
            for k in 0..=order {
                let want = if k % ell == 0 {
                    red(&a.values[step * (k / ell) + offset])
                } else {
                    0
                };
                report.check(|| format!("k={k}"), k as u64, b.coeffs()[k], want);
            }
        }
    }
    Ok(report.finish(started))
}

impl CoefficientTable {
    pub fn is_one_at_zero(&self) -> bool {
        self.values.first().map(One::is_one).unwrap_or(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_r_basics() {
        for r in 1..30 {
            assert!(e1_power_coeffs(r, 5).unwrap().is_one_at_zero());
        }
        assert_eq!(
            e1_power_coeffs(24, 4).unwrap().values[4],
            BigInt::from(4830)
        );
        let a1 = e1_power_coeffs(1, 50).unwrap();
        assert_eq!(a1.values, euler_e(&ZZ::new(), 1, 50).into_coeffs());
        assert!(e1_power_coeffs(0, 5).is_err());
    }

    #[test]
    fn newman_param_validation() {
        assert_eq!(NewmanParams::new(24, 5).unwrap().delta, 4);
        assert_eq!(NewmanParams::new(12, 13).unwrap().delta, 6);
        assert!(NewmanParams::new(12, 2).is_err());
        assert!(NewmanParams::new(26, 13).is_err());
        assert!(NewmanParams::new(7, 13).is_err());
        assert!(NewmanParams::new(24, 9).is_err());
        let all = NewmanParams::all_up_to(13);
        assert!(all.iter().any(|p| p.r == 2 && p.p == 13));
        assert!(all
            .iter()
            .all(|p| (p.r as u64 * (p.p - 1)).is_multiple_of(24)));
    }

    #[test]
    fn newman_small_cases() {
        let params = NewmanParams::new(24, 5).unwrap();
        let rep = newman_check(params, 1504).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.indices_checked, 301);
        assert!(newman_check(NewmanParams::new(12, 13).unwrap(), 1306)
            .unwrap()
            .passed());
        assert!(newman_check(params, 8).is_err());
    }

    #[test]
    fn newman_detects_a_corrupted_table() {
        let params = NewmanParams::new(24, 5).unwrap();
        let mut t = e1_power_coeffs(24, 200).unwrap();
        t.values[104] += 1;
        let rep = newman_check_with(params, &t).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.first_violation_index(), Some(104));
    }

    #[test]
    fn four_step() {
        assert!(newman_four_step(24, 2, 976).unwrap().passed());
        assert!(newman_four_step(12, 3, 1660).unwrap().passed());
        assert!(newman_four_step(18, 5, 2000).is_err());
        assert!(newman_four_step(12, 5, 100).is_err());
    }

    #[test]
    fn eta_power_leading_terms() {
        let a = eta_power_coeffs(EtaPowerForm::Eta8_3z, 10).unwrap();
        assert_eq!(a.values[1], BigInt::one());
        for n in [0, 2, 3] {
            assert!(a.values[n].is_zero());
        }
        let b = eta_power_coeffs(EtaPowerForm::Eta10_12z, 10).unwrap();
        assert!(b.values[..5].iter().all(Zero::is_zero));
        assert_eq!(b.values[5], BigInt::one());
    }

    #[test]
    fn characters() {
        assert_eq!(EtaPowerForm::Eta8_3z.character(3), 0);
        assert_eq!(EtaPowerForm::Eta8_3z.character(7), 1);
        assert_eq!(EtaPowerForm::Eta6_4z.character(2), 0);
        assert_eq!(EtaPowerForm::Eta6_4z.character(3), -1);
        assert_eq!(EtaPowerForm::Eta6_4z.character(5), 1);
        assert_eq!(EtaPowerForm::Eta10_12z.character(3), 0);
        assert_eq!(EtaPowerForm::Eta10_12z.character(7), -1);
        assert_eq!(
            vanishing_primes(EtaPowerForm::Eta10_12z, 3),
            vec![7, 11, 19]
        );
        assert_eq!(vanishing_primes(EtaPowerForm::Eta8_3z, 3), vec![2, 5, 11]);
    }

    #[test]
    fn hecke_and_vanishing() {
        let t8 = eta_power_coeffs(EtaPowerForm::Eta8_3z, 1000).unwrap();
        assert!(t8.values[2].is_zero());
        assert!(hecke_eigen_check_with(EtaPowerForm::Eta8_3z, 2, &t8)
            .unwrap()
            .passed());
        assert!(hecke_eigen_check_with(EtaPowerForm::Eta8_3z, 7, &t8)
            .unwrap()
            .passed());
        assert!(hecke_eigen_check(EtaPowerForm::Eta6_4z, 3, 1200)
            .unwrap()
            .passed());
        assert!(hecke_eigen_check(EtaPowerForm::Eta10_12z, 5, 100).is_err());
        assert!(
            vanishing_consequence_check_with(EtaPowerForm::Eta8_3z, 5, &t8)
                .unwrap()
                .passed()
        );
        assert!(vanishing_consequence_check_with(EtaPowerForm::Eta8_3z, 7, &t8).is_err());
        assert!(
            vanishing_consequence_check(EtaPowerForm::Eta10_12z, 7, 1500)
                .unwrap()
                .passed()
        );
        assert!(vanishing_consequence_check(EtaPowerForm::Eta10_12z, 3, 100).is_err());
        let t6 = eta_power_coeffs(EtaPowerForm::Eta6_4z, 600).unwrap();
        for n in (1..200).filter(|n| n % 3 != 0) {
            assert!(t6.values[3 * n].is_zero());
        }
    }

    #[test]
    fn support_examples() {
        for form in EtaPowerForm::ALL {
            assert!(support_check(form, 300).unwrap().passed(), "{form}");
        }
    }

    #[test]
    fn bridge_small_orders() {
        for id in BridgeId::ALL {
            let rep = bridge_congruence_check(id, 300).unwrap();
            assert!(rep.passed(), "{:?}: {:?}", id, rep.violations.first());
        }
        assert_eq!("B56_A24".parse::<BridgeId>().unwrap(), BridgeId::B56A24);
    }
}
