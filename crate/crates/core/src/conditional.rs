//! The two conditional scaling statements for `B_5^(6)` mod 5 and
//! `B_7^(6)` mod 7: their unconditional three-term form and the search for
//! primes meeting the hypothesis.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coefficients::multipartition_series_mod;
use crate::error::{Error, Result};
use crate::primes::{is_prime, primes_up_to};
use crate::report::VerificationReport;
use crate::ring::{CoeffRing, Zmod};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    /// `B_5^(6)` modulo 5, through `a_24`.
    I,
    /// `B_7^(6)` modulo 7, through `6 a_12`.
    II,
}

impl Part {
    pub fn name(&self) -> &'static str {
        match self {
            Part::I => "i",
            Part::II => "ii",
        }
    }

    fn modulus(&self) -> u64 {
        match self {
            Part::I => 5,
            Part::II => 7,
        }
    }

    fn admits(&self, p: u64) -> bool {
        is_prime(p)
            && match self {
                Part::I => p != 5,
                Part::II => p != 2 && p != 7,
            }
    }

    /// Index of the coefficient the hypothesis asks to vanish.
    pub fn hypothesis_index(&self, p: u64) -> u64 {
        match self {
            Part::I => p - 1,
            Part::II => (7 * p - 3) / 2,
        }
    }

    /// Offset `d` of the progression `x(p n + d)`, where `x` is the
    /// coefficient sequence the recurrence runs on.
    fn delta(&self, p: u64, k: u32) -> u64 {
        let pk = p.pow(k);
        match self {
            Part::I => pk - 1,
            Part::II => (pk - 1) / 2,
        }
    }

    /// Series index holding `x(m)`.
    fn series_index(&self, m: u64) -> u64 {
        match self {
            Part::I => m,
            Part::II => 7 * m + 2,
        }
    }

    /// `p^11` or `p^5`, the Newman weight factor for `r = 24` or `12`.
    fn weight_exp(&self) -> u32 {
        match self {
            Part::I => 11,
            Part::II => 5,
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Part {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "1" => Ok(Part::I),
            "ii" | "2" => Ok(Part::II),
            _ => Err(Error::Unknown(format!("part `{s}`"))),
        }
    }
}

fn series(part: Part, order: usize) -> Result<Vec<u64>> {
    let (ell, m) = match part {
        Part::I => (5, 5),
        Part::II => (7, 7),
    };
    Ok(multipartition_series_mod(ell, 6, m, order)?.into_coeffs())
}

/// Checks
/// `x(p^4 n + d4) = A (A^2 - 2P) x(p n + d1) - P (A^2 - P) x(n)` mod m
/// for `n <= n_max`, with `A = x(d1)` and `P = p^11` (part I) or `p^5`
/// (part II). Here `x(k) = B_5^(6)(k)` in part I and `x(k) = 6 B_7^(6)(7k + 2)`
/// in part II. No hypothesis on `A` is needed.
pub fn verify_thm2_unconditional(
    part: Part,
    p: u64,
    n_max: u64,
    max_order: usize,
) -> Result<VerificationReport> {
    let started = Instant::now();
    if !part.admits(p) {
        return Err(Error::PrimePrecondition {
            p,
            what: format!("part {part} excludes this prime"),
        });
    }
    let m = part.modulus();
    let ring = Zmod::new(m)?;
    let p4 = p
        .checked_pow(4)
        .ok_or_else(|| Error::BudgetExceeded(format!("p={p} too large")))?;
    let top = part.series_index(p4 * n_max + part.delta(p, 4));
    if top as usize > max_order {
        return Err(Error::BudgetExceeded(format!(
            "index {top} exceeds order {max_order}"
        )));
    }
    let b = series(part, top as usize)?;
    let scale = match part {
        Part::I => 1,
        Part::II => 6,
    };
    let x = |k: u64| ring.mul(&scale, &b[part.series_index(k) as usize]);

    let a = x(part.delta(p, 1));
    let big_p = (0..part.weight_exp()).fold(1, |acc, _| ring.mul(&acc, &(p % m)));
    let a2 = ring.mul(&a, &a);
    let c1 = ring.mul(&a, &ring.sub(&a2, &ring.add(&big_p, &big_p)));
    let c0 = ring.mul(&big_p, &ring.sub(&a2, &big_p));

    let mut report = VerificationReport::new(format!("thm2.{part}.unconditional.p{p}"));
    report.sweep(format!("p={p} n=0..={n_max}"));
    report.note(format!("A = {a}, coefficients {c1} and {c0} mod {m}"));
    for n in 0..=n_max {
        let lhs = x(p4 * n + part.delta(p, 4));
        let rhs = ring.sub(
            &ring.mul(&c1, &x(p * n + part.delta(p, 1))),
            &ring.mul(&c0, &x(n)),
        );
        let index = part.series_index(p4 * n + part.delta(p, 4));
        report.check(|| format!("p={p} n={n}"), index, lhs, rhs);
    }
    Ok(report.finish(started))
}

/// Primes `p <= p_max` admitted by the part whose hypothesis coefficient
/// vanishes modulo `m`.
pub fn search_hypothesis_primes(part: Part, p_max: u64) -> Result<Vec<u64>> {
    let candidates: Vec<u64> = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| part.admits(p))
        .collect();
    let Some(top) = candidates.iter().map(|&p| part.hypothesis_index(p)).max() else {
        return Ok(Vec::new());
    };
    let b = series(part, top as usize)?;
    Ok(candidates
        .into_iter()
        .filter(|&p| b[part.hypothesis_index(p) as usize] == 0)
        .collect())
}

/// Report form of [`search_hypothesis_primes`]: one check per candidate
/// prime, recorded as notes since any outcome is acceptable.
pub fn hypothesis_search_report(part: Part, p_max: u64) -> Result<VerificationReport> {
    let started = Instant::now();
    let found = search_hypothesis_primes(part, p_max)?;
    let tested = primes_up_to(p_max)
        .into_iter()
        .filter(|&p| part.admits(p))
        .count();
    let mut report = VerificationReport::new(format!("thm2.{part}.hypothesis_search"));
    report.sweep(format!("primes <= {p_max}"));
    report.indices_checked = tested as u64;
    let list: Vec<String> = found.iter().map(u64::to_string).collect();
    report.note(format!("hypothesis primes: [{}]", list.join(", ")));
    if found.is_empty() {
        report.note("conditional family vacuously unverified at budget");
    }
    Ok(report.finish(started))
}
