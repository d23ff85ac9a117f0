//! Truncated power series in one variable `q`.
//!
//! A series of order `N` knows the coefficients of `q^0..=q^N` exactly.
//! Binary operations return the smaller of the two orders; nothing is ever
//! padded silently.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ring::{CoeffRing, IntScalar, Integers, Zmod};

#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<R: CoeffRing> {
    ring: R,
    coeffs: Vec<R::Elem>,
}

impl<R: CoeffRing> TruncatedSeries<R> {
    /// Wraps a coefficient vector; `coeffs` must be non-empty and canonical.
    pub fn from_coeffs(ring: R, coeffs: Vec<R::Elem>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series holds at least q^0");
        TruncatedSeries { ring, coeffs }
    }

    pub fn from_i64s(ring: R, values: &[i64]) -> Self {
        let coeffs = values.iter().map(|&v| ring.from_i64(v)).collect();
        Self::from_coeffs(ring, coeffs)
    }

    pub fn zero(ring: R, order: usize) -> Self {
        let coeffs = vec![ring.zero(); order + 1];
        TruncatedSeries { ring, coeffs }
    }

    pub fn one(ring: R, order: usize) -> Self {
        Self::monomial(ring, 0, order)
    }

    /// `q^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(ring: R, k: usize, order: usize) -> Self {
        let mut s = Self::zero(ring, order);
        if k <= order {
            s.coeffs[k] = s.ring.one();
        }
        s
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R::Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R::Elem> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Option<&R::Elem> {
        self.coeffs.get(n)
    }

    pub fn set_coeff(&mut self, n: usize, value: R::Elem) {
        self.coeffs[n] = value;
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    /// Nonzero terms as `(exponent, coefficient)` pairs.
    pub fn support(&self) -> Vec<(usize, R::Elem)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.ring.is_zero(c))
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(
                format!("{:?}", self.ring),
                format!("{:?}", other.ring),
            ));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&R::Elem, &R::Elem) -> R::Elem) -> Result<Self> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let coeffs = self.coeffs[..=order]
            .iter()
            .zip(&other.coeffs[..=order])
            .map(|(a, b)| f(a, b))
            .collect();
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.ring.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| self.ring.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| self.ring.neg(c))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        self.map(|x| self.ring.mul(c, x))
    }

    fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    ///
    /// The sparser operand drives the convolution, so multiplying by an
    /// Euler product costs `O(N * sqrt(N))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let order = self.order().min(other.order());
        let a = self.support();
        let b = other.support();
        let (sparse, dense) = if a.len() <= b.len() {
            (a, &other.coeffs)
        } else {
            (b, &self.coeffs)
        };
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: sparse_times_dense(&self.ring, &sparse, dense, order),
        })
    }

    /// `self^e`; `pow(0)` is `1` at the same order.
    pub fn pow(&self, e: u32) -> Self {
        let order = self.order();
        if e == 0 {
            return Self::one(self.ring.clone(), order);
        }
        let nnz = self.support().len().max(1) as u64;
        let n = order as u64 + 1;
        // Repeated sparse products versus square-and-multiply on dense data.
        let sequential_cost = e as u64 * nnz * n;
        let binary_cost = (32 - e.leading_zeros() + e.count_ones()) as u64 * n * n / 2;
        if sequential_cost <= binary_cost {
            let sparse = self.support();
            let mut acc = self.clone();
            for _ in 1..e {
                acc.coeffs = sparse_times_dense(&self.ring, &sparse, &acc.coeffs, order);
            }
            acc
        } else {
            let mut result = Self::one(self.ring.clone(), order);
            let mut base = self.clone();
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    result = result.mul(&base).expect("same ring");
                }
                e >>= 1;
                if e > 0 {
                    base = base.mul(&base).expect("same ring");
                }
            }
            result
        }
    }

    /// `self / divisor` truncated at the smaller order.
    ///
    /// Solves `divisor * c = self` term by term, touching only the nonzero
    /// coefficients of the divisor.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        self.check_ring(divisor)?;
        let ring = &self.ring;
        let lead_inv = ring
            .unit_inverse(&divisor.coeffs[0])
            .ok_or(Error::NonUnitConstant)?;
        let order = self.order().min(divisor.order());
        let tail: Vec<(usize, R::Elem)> = divisor
            .support()
            .into_iter()
            .filter(|(k, _)| *k > 0)
            .collect();
        let mut out: Vec<R::Elem> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = ring.acc_zero();
            ring.acc_add(&mut acc, &self.coeffs[n]);
            for (k, d) in &tail {
                if *k > n {
                    break;
                }
                ring.acc_sub_mul(&mut acc, d, &out[n - k]);
            }
            let v = ring.acc_finish(acc);
            out.push(ring.mul(&v, &lead_inv));
        }
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs: out,
        })
    }

    /// Multiplicative inverse up to the truncation order.
    pub fn invert(&self) -> Result<Self> {
        Self::one(self.ring.clone(), self.order()).div(self)
    }

    /// Substitutes `q -> q^k`. A series of order `N` becomes one of order
    /// `k*N + k - 1`: the first unknown term is `q^(k(N+1))`.
    pub fn dilate(&self, k: usize) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        let order = k * self.order() + k - 1;
        let mut out = Self::zero(self.ring.clone(), order);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i * k] = c.clone();
        }
        out
    }

    /// Multiplies by `q^k`; the order grows by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut coeffs = vec![self.ring.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    /// `result[n] = self[step*n + residue]`.
    pub fn extract_progression(&self, step: usize, residue: usize) -> Result<Self> {
        if step == 0 || residue >= step {
            return Err(Error::OutOfRange {
                what: format!("progression residue mod {step}"),
                index: residue as i64,
            });
        }
        if residue > self.order() {
            return Err(Error::OutOfRange {
                what: format!("series of order {}", self.order()),
                index: residue as i64,
            });
        }
        let coeffs = self.coeffs[residue..]
            .iter()
            .step_by(step)
            .cloned()
            .collect();
        Ok(TruncatedSeries {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    /// Index of the first differing coefficient up to the common order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        let order = self.order().min(other.order());
        (0..=order).find(|&n| self.coeffs[n] != other.coeffs[n])
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| self.ring.to_bigint(c)).collect()
    }
}

/// `c[n] = sum over (k, s) in sparse of s * dense[n - k]`, for `n <= order`.
fn sparse_times_dense<R: CoeffRing>(
    ring: &R,
    sparse: &[(usize, R::Elem)],
    dense: &[R::Elem],
    order: usize,
) -> Vec<R::Elem> {
    (0..=order)
        .map(|n| {
            let mut acc = ring.acc_zero();
            for (k, s) in sparse {
                if *k > n {
                    break;
                }
                ring.acc_add_mul(&mut acc, s, &dense[n - k]);
            }
            ring.acc_finish(acc)
        })
        .collect()
}

impl<T: IntScalar> TruncatedSeries<Integers<T>> {
    /// Coefficientwise canonical reduction into `Z/m`.
    pub fn reduce_mod(&self, m: u64) -> Result<TruncatedSeries<Zmod>> {
        let ring = Zmod::new(m)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| ring.reduce_big(&c.to_big()))
            .collect();
        Ok(TruncatedSeries::from_coeffs(ring, coeffs))
    }
}

impl TruncatedSeries<Zmod> {
    /// Reduction `Z/m -> Z/d` for a divisor `d` of `m`.
    pub fn reduce_mod(&self, d: u64) -> Result<TruncatedSeries<Zmod>> {
        let m = self.ring.modulus();
        if d < 2 || !m.is_multiple_of(d) {
            return Err(Error::InvalidModulus(d));
        }
        let ring = Zmod::new(d)?;
        Ok(TruncatedSeries::from_coeffs(
            ring,
            self.coeffs.iter().map(|c| c % d).collect(),
        ))
    }
}

/// Exponents of the pentagonal expansion `prod (1 - q^m) = sum (-1)^j q^(j(3j-1)/2)`
/// up to `limit`, with their signs, in increasing order.
pub fn pentagonal_terms(limit: usize) -> Vec<(usize, i64)> {
    let mut terms = vec![(0usize, 1i64)];
    for j in 1usize.. {
        let sign = if j % 2 == 1 { -1 } else { 1 };
        let lo = j * (3 * j - 1) / 2;
        let hi = j * (3 * j + 1) / 2;
        if lo > limit {
            break;
        }
        terms.push((lo, sign));
        if hi <= limit {
            terms.push((hi, sign));
        }
    }
    terms
}

/// `E_k = prod_{m>=1} (1 - q^(km))` truncated at `order`.
pub fn euler_e<R: CoeffRing>(ring: &R, k: usize, order: usize) -> TruncatedSeries<R> {
    assert!(k >= 1, "Euler product scale must be positive");
    let mut s = TruncatedSeries::zero(ring.clone(), order);
    for (e, sign) in pentagonal_terms(order / k) {
        s.coeffs[e * k] = ring.from_i64(sign);
    }
    s
}
