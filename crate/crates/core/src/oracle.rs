//! Combinatorial counts of regular partitions and multipartitions.
//!
//! Nothing here touches the series engine; these tables are the ground
//! truth the series results are compared against.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The regularity parameters `(l_1, ..., l_r)` of a multipartition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityProfile {
    ells: Vec<u32>,
}

impl RegularityProfile {
    pub fn new(ells: Vec<u32>) -> Result<Self> {
        if ells.is_empty() {
            return Err(Error::InvalidProfile("profile is empty".into()));
        }
        if let Some(bad) = ells.iter().find(|&&l| l < 2) {
            return Err(Error::InvalidProfile(format!("l = {bad} is below 2")));
        }
        Ok(RegularityProfile { ells })
    }

    /// `(ell, ell, ..., ell)` with `r` entries.
    pub fn uniform(ell: u32, r: u32) -> Result<Self> {
        Self::new(vec![ell; r as usize])
    }

    pub fn ells(&self) -> &[u32] {
        &self.ells
    }

    pub fn len(&self) -> usize {
        self.ells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ells.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Oracle,
    Series,
    Enumeration,
}

/// A named integer sequence indexed from 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub name: String,
    pub values: Vec<BigInt>,
    pub provenance: Provenance,
}

impl CoefficientTable {
    pub fn get(&self, n: usize) -> Option<&BigInt> {
        self.values.get(n)
    }

    /// Largest index held.
    pub fn order(&self) -> usize {
        self.values.len() - 1
    }
}

/// Number of partitions of each `n <= order` with no part divisible by `ell`.
pub fn regular_partition_counts(ell: u32, order: usize) -> Result<CoefficientTable> {
    if ell < 2 {
        return Err(Error::InvalidProfile(format!("l = {ell} is below 2")));
    }
    let mut t = vec![BigInt::zero(); order + 1];
    t[0] = BigInt::one();
    for part in (1..=order).filter(|p| p % ell as usize != 0) {
        for n in part..=order {
            let prev = t[n - part].clone();
            t[n] += prev;
        }
    }
    Ok(CoefficientTable {
        name: format!("b_{ell}"),
        values: t,
        provenance: Provenance::Oracle,
    })
}

fn convolve(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let order = a.len().min(b.len()) - 1;
    (0..=order)
        .map(|n| (0..=n).map(|k| &a[k] * &b[n - k]).sum())
        .collect()
}

/// `B_{l_1,...,l_r}(n)` for `n <= order`, as the r-fold convolution of the
/// per-component regular counts.
pub fn multipartition_counts(
    profile: &RegularityProfile,
    order: usize,
) -> Result<CoefficientTable> {
    let mut acc: Option<Vec<BigInt>> = None;
    let mut cache: Vec<(u32, Vec<BigInt>)> = Vec::new();
    for &ell in profile.ells() {
        let single = match cache.iter().find(|(l, _)| *l == ell) {
            Some((_, t)) => t.clone(),
            None => {
                let t = regular_partition_counts(ell, order)?.values;
                cache.push((ell, t.clone()));
                t
            }
        };
        acc = Some(match acc {
            None => single,
            Some(a) => convolve(&a, &single),
        });
    }
    let label: Vec<String> = profile.ells().iter().map(|l| l.to_string()).collect();
    Ok(CoefficientTable {
        name: format!("B_{{{}}}", label.join(",")),
        values: acc.expect("profile is non-empty"),
        provenance: Provenance::Oracle,
    })
}

pub const ENUMERATION_MAX_N: usize = 30;
pub const ENUMERATION_MAX_R: usize = 4;

/// All partitions of `n` into parts not divisible by `ell`, as part lists
/// in non-increasing order.
pub fn regular_partitions(n: usize, ell: u32) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, ell: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            if part % ell == 0 {
                continue;
            }
            cur.push(part);
            go(rest - part, part, ell, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, ell as usize, &mut Vec::new(), &mut out);
    out
}

/// Counts the tuples `(lambda_1, ..., lambda_r)` of regular partitions with
/// total size `n` by walking every tuple explicitly.
pub fn enumerate_multipartitions(profile: &RegularityProfile, n: usize) -> Result<u64> {
    if n > ENUMERATION_MAX_N || profile.len() > ENUMERATION_MAX_R {
        return Err(Error::BudgetExceeded(format!(
            "explicit enumeration needs n <= {ENUMERATION_MAX_N} and r <= {ENUMERATION_MAX_R}, got n = {n}, r = {}",
            profile.len()
        )));
    }
    // by_size[i][s] lists the l_i-regular partitions of s
    let by_size: Vec<Vec<Vec<Vec<usize>>>> = profile
        .ells()
        .iter()
        .map(|&ell| (0..=n).map(|s| regular_partitions(s, ell)).collect())
        .collect();

    fn walk(component: usize, rest: usize, by_size: &[Vec<Vec<Vec<usize>>>]) -> u64 {
        if component == by_size.len() {
            return u64::from(rest == 0);
        }
        let mut count = 0;
        for size in 0..=rest {
            for _lambda in &by_size[component][size] {
                count += walk(component + 1, rest - size, by_size);
            }
        }
        count
    }
    Ok(walk(0, n, &by_size))
}
