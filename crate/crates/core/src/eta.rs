//! Eta quotients and Euler-product quotients.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::primes::is_prime;
use crate::report::VerificationReport;
use crate::ring::CoeffRing;
use crate::series::{euler_e, TruncatedSeries};
use crate::ZZ;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaForm {
    /// `prod E_k^e`, no fractional prefactor.
    EProduct,
    /// `prod eta(kz)^e`, carrying `q^(k e / 24)` per factor.
    Eta,
}

/// A symbolic product `prod E_{k_i}^{e_i}` or `prod eta(k_i z)^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaQuotientSpec {
    pub factors: Vec<(u32, i32)>,
    pub form: EtaForm,
}

impl EtaQuotientSpec {
    pub fn e_product(factors: &[(u32, i32)]) -> Self {
        EtaQuotientSpec {
            factors: factors.to_vec(),
            form: EtaForm::EProduct,
        }
    }

    pub fn eta(factors: &[(u32, i32)]) -> Self {
        EtaQuotientSpec {
            factors: factors.to_vec(),
            form: EtaForm::Eta,
        }
    }

    /// `E_ell^r / E_1^r`, the generating function of `B_ell^(r)`.
    pub fn regular_multipartition(ell: u32, r: u32) -> Self {
        Self::e_product(&[(ell, r as i32), (1, -(r as i32))])
    }

    /// Integer power of `q` in front of the product part.
    pub fn shift(&self) -> Result<usize> {
        self.validate()?;
        match self.form {
            EtaForm::EProduct => Ok(0),
            EtaForm::Eta => {
                let weight: i64 = self.factors.iter().map(|&(k, e)| k as i64 * e as i64).sum();
                if weight % 24 != 0 {
                    return Err(Error::InvalidEtaQuotient(format!(
                        "sum of k*e = {weight} is not divisible by 24"
                    )));
                }
                if weight < 0 {
                    return Err(Error::InvalidEtaQuotient(format!(
                        "negative q-shift {}",
                        weight / 24
                    )));
                }
                Ok((weight / 24) as usize)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(Error::InvalidEtaQuotient("no factors".into()));
        }
        if self.factors.iter().any(|&(k, _)| k == 0) {
            return Err(Error::InvalidEtaQuotient("scale must be positive".into()));
        }
        Ok(())
    }
}

/// Expands an eta quotient to `order`.
///
/// Returns the Euler-product part and the integer `q`-shift, so the full
/// object is `q^shift * series`. Positive exponents are applied as sparse
/// products and negative ones as sparse divisions.
pub fn eta_quotient<R: CoeffRing>(
    spec: &EtaQuotientSpec,
    order: usize,
    ring: &R,
) -> Result<(TruncatedSeries<R>, usize)> {
    let shift = spec.shift()?;
    let mut acc = TruncatedSeries::one(ring.clone(), order);
    for &(k, e) in &spec.factors {
        if e == 0 {
            continue;
        }
        let ek = euler_e(ring, k as usize, order);
        for _ in 0..e.unsigned_abs() {
            acc = if e > 0 { acc.mul(&ek)? } else { acc.div(&ek)? };
        }
    }
    Ok((acc, shift))
}

/// Coefficients of the full eta quotient `q^shift * series` up to `order`.
pub fn eta_quotient_shifted<R: CoeffRing>(
    spec: &EtaQuotientSpec,
    order: usize,
    ring: &R,
) -> Result<TruncatedSeries<R>> {
    let shift = spec.shift()?;
    if shift > order {
        return Ok(TruncatedSeries::zero(ring.clone(), order));
    }
    let (series, shift) = eta_quotient(spec, order - shift, ring)?;
    Ok(series.shift(shift))
}

/// Checks `E_{kp} = E_k^p` modulo the prime `p`, both sides expanded over Z
/// and reduced afterwards.
pub fn frobenius_check(k: u32, p: u64, order: usize) -> Result<VerificationReport> {
    let started = Instant::now();
    if !is_prime(p) {
        return Err(Error::PrimePrecondition {
            p,
            what: "frobenius congruence needs a prime".into(),
        });
    }
    if k == 0 {
        return Err(Error::InvalidEtaQuotient("scale must be positive".into()));
    }
    let z = ZZ::new();
    let lhs = euler_e(&z, k as usize * p as usize, order).reduce_mod(p)?;
    let rhs = euler_e(&z, k as usize, order).pow(p as u32).reduce_mod(p)?;
    let mut report = VerificationReport::new(format!("frobenius.k{k}.p{p}"));
    report.sweep(format!("k={k} p={p} n=0..={order}"));
    for (n, (a, b)) in lhs.coeffs().iter().zip(rhs.coeffs()).enumerate() {
        report.check(|| format!("n={n}"), n as u64, *a, *b);
    }
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Zmod};
    use num_bigint::BigInt;

    #[test]
    fn eta_shifts() {
        let z = Integers::<BigInt>::new();
        let (s, shift) = eta_quotient(&EtaQuotientSpec::eta(&[(3, 8)]), 30, &z).unwrap();
        assert_eq!(shift, 1);
        assert_eq!(s, euler_e(&z, 3, 30).pow(8));
        let (s, shift) = eta_quotient(&EtaQuotientSpec::eta(&[(12, 10)]), 30, &z).unwrap();
        assert_eq!(shift, 5);
        assert_eq!(s, euler_e(&z, 12, 30).pow(10));
        let (_, shift) = eta_quotient(&EtaQuotientSpec::eta(&[(4, 6)]), 30, &z).unwrap();
        assert_eq!(shift, 1);
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let z = Integers::<i64>::new();
        assert!(eta_quotient(&EtaQuotientSpec::eta(&[(1, 1)]), 5, &z).is_err());
        assert!(eta_quotient(&EtaQuotientSpec::eta(&[(1, -24)]), 5, &z).is_err());
        assert!(eta_quotient(&EtaQuotientSpec::e_product(&[]), 5, &z).is_err());
        assert!(eta_quotient(&EtaQuotientSpec::e_product(&[(1, -24)]), 5, &z).is_ok());
    }

    #[test]
    fn shifted_expansion_places_leading_term() {
        let z = Integers::<i64>::new();
        let a = eta_quotient_shifted(&EtaQuotientSpec::eta(&[(12, 10)]), 20, &z).unwrap();
        assert_eq!(a.order(), 20);
        assert!(a.coeffs()[..5].iter().all(|&c| c == 0));
        assert_eq!(a.coeffs()[5], 1);
    }

    #[test]
    fn regular_quotient_mod_m() {
        let r = Zmod::new(5).unwrap();
        let (s, _) = eta_quotient(&EtaQuotientSpec::regular_multipartition(5, 6), 3, &r).unwrap();
        // B_5^(6)(1) = 6
        assert_eq!(s.coeffs()[1], 1);
    }

    #[test]
    fn frobenius_small_cases() {
        for (k, p) in [(1, 2), (2, 3), (3, 5)] {
            assert!(frobenius_check(k, p, 200).unwrap().passed());
        }
        assert!(frobenius_check(1, 4, 50).is_err());
    }
}
