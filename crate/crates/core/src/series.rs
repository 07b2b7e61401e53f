//! Truncated formal power series in `z` with exact rational coefficients.
//!
//! A [`Series`] stores `c_0..=c_N` and is trusted only through `z^N`, its
//! valid order. Binary operations truncate to the smaller order of their
//! operands and dividing by `z` drops one order, so no result ever reports a
//! coefficient its inputs do not determine. Reading past the valid order is
//! an error rather than an implicit zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// # Panics
    /// If `coeffs` is empty; every series carries at least `c_0`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least a constant term"
        );
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// The unit series `1 + 0z + ... + 0z^order`.
    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `z`, valid through `z^order` (`order >= 1`).
    pub fn z(order: usize) -> Self {
        let mut s = Self::zero(order.max(1));
        s.coeffs[1] = Rational::one();
        s
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        Series {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn try_from_fn(order: usize, f: impl FnMut(usize) -> Result<Rational>) -> Result<Self> {
        Ok(Series {
            coeffs: (0..=order).map(f).collect::<Result<_>>()?,
        })
    }

    pub fn valid_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&Rational> {
        self.coeffs.get(n).ok_or(Error::OrderExceeded {
            requested: n,
            valid: self.valid_order(),
        })
    }

    pub fn const_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Drops every coefficient above `z^order`. Never extends.
    pub fn truncate(&self, order: usize) -> Series {
        let order = order.min(self.valid_order());
        Series {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    /// Cauchy product, truncated at the smaller valid order.
    pub fn mul(&self, other: &Series) -> Series {
        let order = self.valid_order().min(other.valid_order());
        // convolve integer numerators over common denominators, reduce once
        let (a, da) = cleared(&self.coeffs[..=order]);
        let (b, db) = cleared(&other.coeffs[..=order]);
        let denom = da * db;
        let coeffs = (0..=order)
            .map(|n| {
                let mut acc = BigInt::zero();
                for i in 0..=n {
                    if !a[i].is_zero() && !b[n - i].is_zero() {
                        acc += &a[i] * &b[n - i];
                    }
                }
                Rational::new(acc, denom.clone())
            })
            .collect();
        Series { coeffs }
    }

    /// Multiplicative inverse; requires `c_0 != 0`.
    ///
    /// Fraction-free: with integer coefficients `A_i` (after clearing the
    /// common denominator `D`), `1/A = sum_n B_n / A_0^(n+1) z^n` where
    /// `B_0 = 1` and `B_n = -sum_(i=1..n) A_i B_(n-i) A_0^(i-1)`.
    pub fn recip(&self) -> Result<Series> {
        if self.const_term().is_zero() {
            return Err(Error::ZeroConstantTerm);
        }
        let (a, d) = cleared(&self.coeffs);
        let a0 = &a[0];
        let mut a0_pows = vec![BigInt::one()];
        for i in 1..a.len() {
            let next = &a0_pows[i - 1] * a0;
            a0_pows.push(next);
        }
        let mut b: Vec<BigInt> = Vec::with_capacity(a.len());
        b.push(BigInt::one());
        for n in 1..a.len() {
            let mut acc = BigInt::zero();
            for i in 1..=n {
                if !a[i].is_zero() {
                    acc += &a[i] * &b[n - i] * &a0_pows[i - 1];
                }
            }
            b.push(-acc);
        }
        let coeffs = b
            .into_iter()
            .enumerate()
            .map(|(n, bn)| Rational::new(bn * &d, &a0_pows[n] * a0))
            .collect();
        Ok(Series { coeffs })
    }

    /// Divides by `z`. The constant term must already be zero; the valid
    /// order drops by one, so an order-0 input has nothing left to return.
    pub fn shift_down(&self) -> Result<Series> {
        let c0 = self.const_term();
        if !c0.is_zero() {
            return Err(Error::NonzeroConstantTerm {
                value: c0.to_string(),
            });
        }
        if self.coeffs.len() == 1 {
            return Err(Error::OrderExceeded {
                requested: 1,
                valid: 0,
            });
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplies by `z`; the valid order grows by one.
    pub fn shift_up(&self) -> Series {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Series { coeffs }
    }

    /// Coefficient-wise equality through `z^m`.
    pub fn eq_to_order(&self, other: &Series, m: usize) -> Result<bool> {
        let valid = self.valid_order().min(other.valid_order());
        if m > valid {
            return Err(Error::OrderExceeded {
                requested: m,
                valid,
            });
        }
        Ok(self.coeffs[..=m] == other.coeffs[..=m])
    }

    /// First exponent `<= m` where the two series differ.
    pub fn first_difference(&self, other: &Series, m: usize) -> Result<Option<usize>> {
        let valid = self.valid_order().min(other.valid_order());
        if m > valid {
            return Err(Error::OrderExceeded {
                requested: m,
                valid,
            });
        }
        Ok((0..=m).find(|&n| self.coeffs[n] != other.coeffs[n]))
    }

    /// `sum_{n <= upto} c_n z^n` at a concrete rational `z`.
    pub fn eval_partial(&self, z: &Rational, upto: usize) -> Result<Rational> {
        if upto > self.valid_order() {
            return Err(Error::OrderExceeded {
                requested: upto,
                valid: self.valid_order(),
            });
        }
        // Horner from the top
        let mut acc = Rational::zero();
        for c in self.coeffs[..=upto].iter().rev() {
            acc = acc * z + c;
        }
        Ok(acc)
    }

    fn zip_with(&self, other: &Series, f: impl Fn(&Rational, &Rational) -> Rational) -> Series {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

/// Integer numerators over the least common denominator.
fn cleared(coeffs: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let denom = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = coeffs
        .iter()
        .map(|c| c.numer() * (&denom / c.denom()))
        .collect();
    (nums, denom)
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.valid_order() + 1)
    }
}
