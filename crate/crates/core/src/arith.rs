//! Exact scalar kernel: rationals, q-Pochhammer products and the parameter
//! point `(q, x, y)` every series and coefficient is evaluated at.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal and exponent notation are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("'{s}' is not an exact rational of the form p/q"));
    let is_int = |t: &str| {
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    if !is_int(num) || !is_int(den) || den.starts_with(['+', '-']) {
        return Err(bad());
    }
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::InvalidInput(format!("'{s}' has zero denominator")));
    }
    Ok(Rational::new(num, den))
}

/// `(a;q)_n = (1-a)(1-aq)...(1-aq^(n-1))`; the empty product is 1.
pub fn pochhammer(a: &Rational, q: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= Rational::one() - &term;
        term *= q;
    }
    acc
}

/// `k(k-1)/2`
pub fn q_binom2(k: u64) -> u64 {
    k * k.saturating_sub(1) / 2
}

pub fn q_pow(q: &Rational, e: i64) -> Result<Rational> {
    if e < 0 && q.is_zero() {
        return Err(Error::ZeroBaseNegativeExponent { exponent: e });
    }
    let exp =
        i32::try_from(e).map_err(|_| Error::InvalidInput(format!("exponent {e} too large")))?;
    Ok(num_traits::Pow::pow(q, exp))
}

/// `Q_k = (y - x)(y - xq)...(y - xq^(k-2))`, which equals `y^(k-1) (x/y;q)_(k-1)`
/// whenever `y != 0` but stays defined at `y = 0`. `Q_1 = 1`.
pub fn cross_poch(x: &Rational, y: &Rational, q: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut xq = x.clone();
    for _ in 0..k.saturating_sub(1) {
        acc *= y - &xq;
        xq *= q;
    }
    acc
}

/// An exact assignment of `(q, x, y)` that has been checked admissible up to
/// `depth`: none of `q`, `1 - y`, `1 - x q^j`, `1 - y q^(j+1)`, `1 - q^(j+1)`
/// or `y - x q^j` vanishes for `j < depth`. In Pochhammer terms `(x;q)_depth`,
/// `(yq;q)_depth`, `(q;q)_depth` and `Q_(depth+1)` are all nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoint {
    q: Rational,
    x: Rational,
    y: Rational,
    depth: usize,
}

impl ParamPoint {
    pub fn new(q: Rational, x: Rational, y: Rational, depth: usize) -> Result<Self> {
        check_admissible(&q, &x, &y, depth)?;
        Ok(ParamPoint { q, x, y, depth })
    }

    pub fn from_strs(q: &str, x: &str, y: &str, depth: usize) -> Result<Self> {
        Self::new(
            parse_rational(q)?,
            parse_rational(x)?,
            parse_rational(y)?,
            depth,
        )
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn is_admissible(&self, depth: usize) -> bool {
        depth <= self.depth || check_admissible(&self.q, &self.x, &self.y, depth).is_ok()
    }

    /// Re-validates the point for a larger depth.
    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        if depth > self.depth {
            check_admissible(&self.q, &self.x, &self.y, depth)?;
        }
        Ok(ParamPoint {
            depth,
            ..self.clone()
        })
    }

    pub fn pochhammer_x(&self, n: usize) -> Rational {
        pochhammer(&self.x, &self.q, n)
    }

    pub fn pochhammer_y(&self, n: usize) -> Rational {
        pochhammer(&self.y, &self.q, n)
    }

    /// `(yq;q)_n`
    pub fn pochhammer_yq(&self, n: usize) -> Rational {
        pochhammer(&(&self.y * &self.q), &self.q, n)
    }

    /// `(q;q)_n`
    pub fn pochhammer_q(&self, n: usize) -> Rational {
        pochhammer(&self.q, &self.q, n)
    }

    pub fn cross(&self, k: usize) -> Rational {
        cross_poch(&self.x, &self.y, &self.q, k)
    }

    pub fn q_pow(&self, e: u64) -> Rational {
        num_traits::Pow::pow(&self.q, e)
    }
}

impl fmt::Display for ParamPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(q={}, x={}, y={})", self.q, self.x, self.y)
    }
}

impl Serialize for ParamPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ParamPoint", 4)?;
        st.serialize_field("q", &self.q.to_string())?;
        st.serialize_field("x", &self.x.to_string())?;
        st.serialize_field("y", &self.y.to_string())?;
        st.serialize_field("depth", &self.depth)?;
        st.end()
    }
}

fn check_admissible(q: &Rational, x: &Rational, y: &Rational, depth: usize) -> Result<()> {
    if q.is_zero() {
        return Err(Error::inadmissible("q"));
    }
    if y.is_one() {
        return Err(Error::inadmissible("(1 - y)"));
    }
    let one = Rational::one();
    let mut qj = Rational::one();
    for j in 0..depth {
        // qj = q^j
        if (&one - x * &qj).is_zero() {
            return Err(Error::inadmissible(format!("(1 - x*q^{j})")));
        }
        if (y - x * &qj).is_zero() {
            return Err(Error::inadmissible(format!("(y - x*q^{j})")));
        }
        let qj1 = &qj * q;
        if (&one - y * &qj1).is_zero() {
            return Err(Error::inadmissible(format!("(1 - y*q^{})", j + 1)));
        }
        if (&one - &qj1).is_zero() {
            return Err(Error::inadmissible(format!("(1 - q^{})", j + 1)));
        }
        qj = qj1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), &rat(-5, 2), 0), int(1));
        assert_eq!(pochhammer(&int(1), &rat(1, 2), 3), int(0));
        assert_eq!(pochhammer(&rat(1, 3), &rat(1, 2), 2), rat(5, 9));
    }

    #[test]
    fn binom2_examples() {
        assert_eq!(q_binom2(0), 0);
        assert_eq!(q_binom2(1), 0);
        assert_eq!(q_binom2(4), 6);
    }

    #[test]
    fn q_pow_examples() {
        assert_eq!(q_pow(&rat(1, 2), 0).unwrap(), int(1));
        assert_eq!(q_pow(&rat(1, 2), 3).unwrap(), rat(1, 8));
        assert_eq!(q_pow(&rat(2, 3), -2).unwrap(), rat(9, 4));
        assert_eq!(
            q_pow(&int(0), -1),
            Err(Error::ZeroBaseNegativeExponent { exponent: -1 })
        );
        assert_eq!(q_pow(&int(0), 0).unwrap(), int(1));
    }

    #[test]
    fn cross_poch_examples() {
        let (x, y, q) = (rat(1, 3), rat(1, 5), rat(1, 2));
        assert_eq!(cross_poch(&x, &y, &q, 1), int(1));
        assert_eq!(cross_poch(&x, &y, &q, 2), rat(-2, 15));
        assert_eq!(cross_poch(&x, &y, &q, 3), rat(-1, 225));
        // well defined at y = 0
        assert_eq!(cross_poch(&x, &int(0), &q, 3), rat(1, 18));
    }

    #[test]
    fn parse_accepts_exact_forms_only() {
        assert_eq!(parse_rational("1/3").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational("+2/4").unwrap(), rat(1, 2));
        for bad in ["0.333", "1e3", "", "/", "1/", "a/2", "1/-2", "1/0", "1//2"] {
            assert!(parse_rational(bad).is_err(), "{bad} should be rejected");
        }
    }

    #[test]
    fn display_is_exact() {
        assert_eq!(rat(-10, 9).to_string(), "-10/9");
        assert_eq!(rat(4, 2).to_string(), "2");
    }

    #[test]
    fn admissibility_names_the_factor() {
        let err = ParamPoint::from_strs("1/2", "1/3", "1", 4).unwrap_err();
        assert_eq!(err, Error::inadmissible("(1 - y)"));
        let err = ParamPoint::from_strs("1/2", "4", "1/5", 4).unwrap_err();
        assert_eq!(err, Error::inadmissible("(1 - x*q^2)"));
        let err = ParamPoint::from_strs("1/2", "1/3", "1/3", 4).unwrap_err();
        assert_eq!(err, Error::inadmissible("(y - x*q^0)"));
        let err = ParamPoint::from_strs("-1", "1/3", "1/5", 4).unwrap_err();
        assert_eq!(err, Error::inadmissible("(1 - q^2)"));
        let err = ParamPoint::from_strs("0", "1/3", "1/5", 4).unwrap_err();
        assert_eq!(err, Error::inadmissible("q"));
        // depth 2 does not reach x*q^2
        assert!(ParamPoint::from_strs("1/2", "4", "1/5", 2).is_ok());
        // y = x only breaks Q_k for k >= 2
        assert!(ParamPoint::from_strs("1/2", "1/3", "1/3", 0).is_ok());
    }

    #[test]
    fn depth_extension() {
        let p = ParamPoint::from_strs("1/2", "4", "1/5", 2).unwrap();
        assert!(p.is_admissible(2));
        assert!(!p.is_admissible(3));
        assert!(p.with_depth(3).is_err());
    }
}
