//! Integer power series truncated at a fixed degree.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `Σ_{i ≤ N} c_i X^i`, with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntSeries {
    coefficients: Vec<i128>,
}

impl fmt::Debug for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients)
    }
}

impl IntSeries {
    pub fn from_coefficients(coefficients: Vec<i128>) -> Result<IntSeries> {
        if coefficients.is_empty() {
            return Err(Error::invalid("a series needs at least the constant term"));
        }
        Ok(IntSeries { coefficients })
    }

    /// The constant 1, truncated at `X^n`.
    pub fn one(n: usize) -> IntSeries {
        let mut coefficients = vec![0; n + 1];
        coefficients[0] = 1;
        IntSeries { coefficients }
    }

    /// `Π_{k ≥ 1} 1/(1 - X^k)`.
    pub fn partition_series(n: usize) -> Result<IntSeries> {
        let mut s = IntSeries::one(n);
        for k in 1..=n {
            s = s.mul_inv_one_minus_pow(k, 1)?;
        }
        Ok(s)
    }

    pub fn precision(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coefficients.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &IntSeries) -> Result<IntSeries> {
        let n = self.precision().min(other.precision());
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coefficients.iter().enumerate().take(n + 1) {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coefficients.iter().enumerate().take(n + 1 - i) {
                let term = a.checked_mul(b).ok_or(Error::Overflow("series product"))?;
                out[i + j] = out[i + j].checked_add(term).ok_or(Error::Overflow("series product"))?;
            }
        }
        Ok(IntSeries { coefficients: out })
    }

    /// Multiplies by `(1 - X^s)^{-mult}`.
    ///
    /// Each factor `1/(1 - X^s)` is a running sum with stride `s`.
    pub fn mul_inv_one_minus_pow(&self, s: usize, mult: u128) -> Result<IntSeries> {
        if s == 0 {
            return Err(Error::invalid("(1 - X^0) is not invertible"));
        }
        let n = self.precision();
        let mut c = self.coefficients.clone();
        if s > n || mult == 0 {
            return Ok(IntSeries { coefficients: c });
        }
        // binomial expansion (1 - X^s)^{-mult} = Σ_j C(mult + j - 1, j) X^{sj}
        let terms = n / s;
        let mut binom = vec![1i128; terms + 1];
        let m = i128::try_from(mult).map_err(|_| Error::Overflow("series multiplicity"))?;
        for j in 1..=terms {
            let num = binom[j - 1]
                .checked_mul(m + j as i128 - 1)
                .ok_or(Error::Overflow("binomial coefficient"))?;
            binom[j] = num / j as i128;
        }
        let src = c.clone();
        for (i, slot) in c.iter_mut().enumerate() {
            let mut acc = 0i128;
            for j in 0..=(i / s) {
                let term = binom[j]
                    .checked_mul(src[i - j * s])
                    .ok_or(Error::Overflow("series product"))?;
                acc = acc.checked_add(term).ok_or(Error::Overflow("series product"))?;
            }
            *slot = acc;
        }
        Ok(IntSeries { coefficients: c })
    }

    /// `f(X^l)`, truncated at the same degree.
    pub fn substitute_power(&self, l: usize) -> IntSeries {
        let n = self.precision();
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            if i * l <= n {
                out[i * l] = a;
            }
        }
        IntSeries { coefficients: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_series_values() {
        let p = IntSeries::partition_series(10).unwrap();
        assert_eq!(p.coefficients(), &[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn repeated_factors_equal_binomial_expansion() {
        let one = IntSeries::one(12);
        let mut slow = one.clone();
        for _ in 0..5 {
            slow = slow.mul_inv_one_minus_pow(3, 1).unwrap();
        }
        assert_eq!(slow, one.mul_inv_one_minus_pow(3, 5).unwrap());
        // 1/(1-X)^2 = Σ (i+1) X^i
        let s = one.mul_inv_one_minus_pow(1, 2).unwrap();
        assert_eq!(s.coeff(12), 13);
    }

    #[test]
    fn product_and_substitution() {
        let p = IntSeries::partition_series(8).unwrap();
        let q = p.substitute_power(2);
        assert_eq!(q.coefficients(), &[1, 0, 1, 0, 2, 0, 3, 0, 5]);
        // P(X)·(1 - X) inverse check: P·Π(1-X^k) = 1
        let mut r = p.clone();
        for k in 1..=8 {
            let mut f = vec![0i128; 9];
            f[0] = 1;
            f[k] = -1;
            r = r.mul(&IntSeries::from_coefficients(f).unwrap()).unwrap();
        }
        assert_eq!(r, IntSeries::one(8));
        assert!(IntSeries::one(3).mul_inv_one_minus_pow(0, 1).is_err());
    }
}
