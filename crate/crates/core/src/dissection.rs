//! Residue-class products and the 2-, 5-, 7- and 11-dissection identities.
//!
//! Identities are checked over the integers; reduction mod p would only
//! make accidental agreement more likely.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eta::{eta_quotient, EtaQuotientSpec};
use crate::report::VerificationReport;
use crate::ring::{CoeffRing, Integers};
use crate::series::{euler_e, TruncatedSeries};

/// `prod_{m>=1} prod_{(c, e)} (1 - q^(M(m-1) + c))^e` for residues `c` in `[1, M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProduct {
    pub modulus: usize,
    pub factors: Vec<(usize, i32)>,
}

impl ResidueProduct {
    pub fn new(modulus: usize, factors: Vec<(usize, i32)>) -> Self {
        assert!(
            factors.iter().all(|&(c, _)| (1..=modulus).contains(&c)),
            "residues lie in [1, M]"
        );
        ResidueProduct { modulus, factors }
    }

    pub fn expand<R: CoeffRing>(&self, ring: &R, order: usize) -> TruncatedSeries<R> {
        let mut c: Vec<R::Elem> = TruncatedSeries::one(ring.clone(), order).into_coeffs();
        for &(res, e) in &self.factors {
            for k in (res..=order).step_by(self.modulus) {
                for _ in 0..e.unsigned_abs() {
                    if e > 0 {
                        // multiply by (1 - q^k)
                        for n in (k..=order).rev() {
                            c[n] = ring.sub(&c[n], &c[n - k]);
                        }
                    } else {
                        // divide by (1 - q^k)
                        for n in k..=order {
                            c[n] = ring.add(&c[n], &c[n - k]);
                        }
                    }
                }
            }
        }
        TruncatedSeries::from_coeffs(ring.clone(), c)
    }
}

/// The Rogers-Ramanujan product `R(q)`.
pub fn rr_product<R: CoeffRing>(ring: &R, order: usize) -> TruncatedSeries<R> {
    ResidueProduct::new(5, vec![(1, 1), (4, 1), (2, -1), (3, -1)]).expand(ring, order)
}

/// `A_i(q) = prod (1 - q^(7m-i)) (1 - q^(7m-7+i))`, `i` in 1..=3.
pub fn hirschhorn_a<R: CoeffRing>(i: usize, ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    if !(1..=3).contains(&i) {
        return Err(Error::OutOfRange {
            what: "A_i index".into(),
            index: i as i64,
        });
    }
    Ok(ResidueProduct::new(7, vec![(i, 1), (7 - i, 1)]).expand(ring, order))
}

/// `B_i(q) = prod (1 - q^(11m-i)) (1 - q^(11m-11+i))`, `i` in 1..=5.
pub fn hirschhorn_b<R: CoeffRing>(i: usize, ring: &R, order: usize) -> Result<TruncatedSeries<R>> {
    if !(1..=5).contains(&i) {
        return Err(Error::OutOfRange {
            what: "B_i index".into(),
            index: i as i64,
        });
    }
    Ok(ResidueProduct::new(11, vec![(i, 1), (11 - i, 1)]).expand(ring, order))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DissectionIdentityId {
    TwoDissE5OverE1,
    FiveDissE1,
    SevenDissE1,
    ElevenDissE1,
}

impl DissectionIdentityId {
    pub const ALL: [DissectionIdentityId; 4] = [
        DissectionIdentityId::TwoDissE5OverE1,
        DissectionIdentityId::FiveDissE1,
        DissectionIdentityId::SevenDissE1,
        DissectionIdentityId::ElevenDissE1,
    ];

    /// Short CLI name.
    pub fn name(&self) -> &'static str {
        match self {
            DissectionIdentityId::TwoDissE5OverE1 => "2diss",
            DissectionIdentityId::FiveDissE1 => "5diss",
            DissectionIdentityId::SevenDissE1 => "7diss",
            DissectionIdentityId::ElevenDissE1 => "11diss",
        }
    }
}

impl fmt::Display for DissectionIdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DissectionIdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase();
        DissectionIdentityId::ALL
            .into_iter()
            .find(|id| {
                id.name() == key
                    || serde_json::to_value(id)
                        .ok()
                        .and_then(|v| v.as_str().map(|n| n.eq_ignore_ascii_case(s)))
                        .unwrap_or(false)
            })
            .ok_or_else(|| Error::Unknown(s.to_string()))
    }
}

/// Minimum order at which every term of the longest identity contributes.
pub const MIN_DISSECTION_ORDER: usize = 32;

type ZZ = Integers<BigInt>;

fn e_quot(factors: &[(u32, i32)], order: usize) -> Result<TruncatedSeries<ZZ>> {
    Ok(eta_quotient(&EtaQuotientSpec::e_product(factors), order, &ZZ::new())?.0)
}

/// `num(q^k) / den(q^k)` truncated at `order`.
fn dilated_ratio(
    num: &TruncatedSeries<ZZ>,
    den: &TruncatedSeries<ZZ>,
    k: usize,
    order: usize,
) -> Result<TruncatedSeries<ZZ>> {
    Ok(num.div(den)?.dilate(k).truncate(order))
}

/// Builds both sides of an identity to `order` over the integers.
pub fn dissection_sides(
    id: DissectionIdentityId,
    order: usize,
) -> Result<(TruncatedSeries<ZZ>, TruncatedSeries<ZZ>)> {
    let z = ZZ::new();
    let sum_terms = |terms: Vec<(i64, usize, TruncatedSeries<ZZ>)>| -> Result<TruncatedSeries<ZZ>> {
        let mut acc = TruncatedSeries::zero(z, order);
        for (sign, shift, s) in terms {
            let t = s.shift(shift).truncate(order);
            let t = if sign < 0 { t.neg() } else { t };
            acc = acc.add(&t)?;
        }
        Ok(acc)
    };
    let one = || TruncatedSeries::one(z, order);
    match id {
        DissectionIdentityId::TwoDissE5OverE1 => {
            let lhs = e_quot(&[(5, 1), (1, -1)], order)?;
            let rhs = sum_terms(vec![
                (1, 0, e_quot(&[(8, 1), (20, 2), (2, -2), (40, -1)], order)?),
                (
                    1,
                    1,
                    e_quot(
                        &[(4, 3), (10, 1), (40, 1), (2, -3), (8, -1), (20, -1)],
                        order,
                    )?,
                ),
            ])?;
            Ok((lhs, rhs))
        }
        DissectionIdentityId::FiveDissE1 => {
            let lhs = euler_e(&z, 1, order);
            let r = rr_product(&z, order / 5);
            let unit = TruncatedSeries::one(z, order / 5);
            let inner = sum_terms(vec![
                (1, 0, dilated_ratio(&unit, &r, 5, order)?),
                (-1, 1, one()),
                (-1, 2, r.dilate(5).truncate(order)),
            ])?;
            Ok((lhs, euler_e(&z, 25, order).mul(&inner)?))
        }
        DissectionIdentityId::SevenDissE1 => {
            let lhs = euler_e(&z, 1, order);
            let m = order / 7;
            let a = |i| hirschhorn_a(i, &z, m);
            let inner = sum_terms(vec![
                (1, 0, dilated_ratio(&a(2)?, &a(1)?, 7, order)?),
                (-1, 1, dilated_ratio(&a(3)?, &a(2)?, 7, order)?),
                (-1, 2, one()),
                (1, 5, dilated_ratio(&a(1)?, &a(3)?, 7, order)?),
            ])?;
            Ok((lhs, euler_e(&z, 49, order).mul(&inner)?))
        }
        DissectionIdentityId::ElevenDissE1 => {
            let lhs = euler_e(&z, 1, order);
            let m = order / 11;
            let b = |i| hirschhorn_b(i, &z, m);
            let inner = sum_terms(vec![
                (1, 0, dilated_ratio(&b(4)?, &b(2)?, 11, order)?),
                (-1, 1, dilated_ratio(&b(2)?, &b(1)?, 11, order)?),
                (-1, 2, dilated_ratio(&b(5)?, &b(3)?, 11, order)?),
                (1, 5, one()),
                (1, 7, dilated_ratio(&b(3)?, &b(4)?, 11, order)?),
                (-1, 15, dilated_ratio(&b(1)?, &b(5)?, 11, order)?),
            ])?;
            Ok((lhs, euler_e(&z, 121, order).mul(&inner)?))
        }
    }
}

/// Coefficientwise comparison of two sides; every mismatch becomes a violation.
pub fn compare_sides(
    id: &str,
    lhs: &TruncatedSeries<ZZ>,
    rhs: &TruncatedSeries<ZZ>,
    started: Instant,
) -> VerificationReport {
    let mut report = VerificationReport::new(id);
    let order = lhs.order().min(rhs.order());
    report.sweep(format!("order={order}"));
    for n in 0..=order {
        report.check(
            || format!("n={n}"),
            n as u64,
            &rhs.coeffs()[n],
            &lhs.coeffs()[n],
        );
    }
    report.finish(started)
}

pub fn verify_dissection(id: DissectionIdentityId, order: usize) -> Result<VerificationReport> {
    if order < MIN_DISSECTION_ORDER {
        return Err(Error::Config(format!(
            "dissection order must be at least {MIN_DISSECTION_ORDER}"
        )));
    }
    let started = Instant::now();
    let (lhs, rhs) = dissection_sides(id, order)?;
    Ok(compare_sides(
        &format!("identity.{}", id.name()),
        &lhs,
        &rhs,
        started,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> ZZ {
        ZZ::new()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn constant_terms_are_one() {
        assert_eq!(rr_product(&z(), 10).coeffs()[0], BigInt::from(1));
        for i in 1..=3 {
            assert_eq!(
                hirschhorn_a(i, &z(), 10).unwrap().coeffs()[0],
                BigInt::from(1)
            );
        }
        for i in 1..=5 {
            assert_eq!(
                hirschhorn_b(i, &z(), 10).unwrap().coeffs()[0],
                BigInt::from(1)
            );
        }
        assert!(hirschhorn_a(4, &z(), 10).is_err());
        assert!(hirschhorn_b(0, &z(), 10).is_err());
    }

    #[test]
    fn rr_prefix() {
        // (1-q)(1-q^4) / ((1-q^2)(1-q^3)) and onwards, expanded by hand
        assert_eq!(
            rr_product(&z(), 8).to_bigints(),
            ints(&[1, -1, 1, 0, -1, 1, -1, 1, 0])
        );
        let r = rr_product(&z(), 40);
        assert_eq!(
            r.mul(&r.invert().unwrap()).unwrap(),
            TruncatedSeries::one(z(), 40)
        );
    }

    #[test]
    fn a1_prefix() {
        let a1 = hirschhorn_a(1, &z(), 15).unwrap();
        assert_eq!(
            a1.to_bigints(),
            ints(&[1, -1, 0, 0, 0, 0, -1, 1, -1, 1, 0, 0, 0, -1, 2, -2])
        );
    }

    #[test]
    fn a_product_is_e1_over_e7() {
        let n = 200;
        let prod = hirschhorn_a(1, &z(), n)
            .unwrap()
            .mul(&hirschhorn_a(2, &z(), n).unwrap())
            .unwrap()
            .mul(&hirschhorn_a(3, &z(), n).unwrap())
            .unwrap();
        let expected = euler_e(&z(), 1, n).div(&euler_e(&z(), 7, n)).unwrap();
        assert_eq!(prod, expected);
    }

    #[test]
    fn dilated_a_lives_on_multiples_of_seven() {
        let d = hirschhorn_a(2, &z(), 30).unwrap().dilate(7);
        for (k, c) in d.coeffs().iter().enumerate() {
            if k % 7 != 0 {
                assert_eq!(*c, BigInt::from(0));
            }
        }
    }

    #[test]
    fn identities_hold_at_small_order() {
        for id in DissectionIdentityId::ALL {
            let rep = verify_dissection(id, 200).unwrap();
            assert!(rep.passed(), "{id}: {:?}", rep.violations.first());
        }
        assert!(verify_dissection(DissectionIdentityId::FiveDissE1, 31).is_err());
    }

    #[test]
    fn perturbation_is_located() {
        let (mut lhs, rhs) = dissection_sides(DissectionIdentityId::SevenDissE1, 100).unwrap();
        lhs.set_coeff(57, &lhs.coeffs()[57] + BigInt::from(1));
        let rep = compare_sides("p", &lhs, &rhs, Instant::now());
        assert_eq!(rep.first_violation_index(), Some(57));
        assert_eq!(rep.violations.len(), 1);
    }

    #[test]
    fn five_dissection_components() {
        // E_1 restricted to each residue class mod 5 matches the matching term
        let n = 300;
        let e1 = euler_e(&z(), 1, n);
        let e25 = euler_e(&z(), 25, n);
        let r5 = rr_product(&z(), n / 5).dilate(5).truncate(n);
        let inv_r5 = rr_product(&z(), n / 5)
            .invert()
            .unwrap()
            .dilate(5)
            .truncate(n);
        let pieces = [
            e25.mul(&inv_r5).unwrap(),
            e25.shift(1).truncate(n).neg(),
            e25.mul(&r5).unwrap().shift(2).truncate(n).neg(),
        ];
        for res in 0..5 {
            let got = e1.extract_progression(5, res).unwrap();
            if res < 3 {
                let want = pieces[res].extract_progression(5, res).unwrap();
                assert_eq!(got, want.truncate(got.order()));
            } else {
                assert!(got.coeffs().iter().all(|c| *c == BigInt::from(0)));
            }
        }
    }

    #[test]
    fn id_parsing() {
        assert_eq!(
            "11diss".parse::<DissectionIdentityId>().unwrap(),
            DissectionIdentityId::ElevenDissE1
        );
        assert_eq!(
            "FIVE_DISS_E1".parse::<DissectionIdentityId>().unwrap(),
            DissectionIdentityId::FiveDissE1
        );
        assert!("bogus".parse::<DissectionIdentityId>().is_err());
    }
}
