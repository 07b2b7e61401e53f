//! Concrete series at a parameter point: `G(z)`, the initial `s_0, s_1`, and
//! the closed forms for `s_2k` and `s_2k+1`.
//!
//! Every builder checks the exact denominator factors it is about to divide
//! by and names the first one that vanishes.

use num_traits::{One, Zero};

use crate::arith::{pochhammer, q_binom2, ParamPoint, Rational};
use crate::error::{Error, Result};
use crate::series::Series;

/// Which named series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    G,
    /// `s_2k`, `k >= 1`
    SEven(usize),
    /// `s_2k+1`, `k >= 0`
    SOdd(usize),
}

#[derive(Debug, Clone)]
pub struct SeriesSpec {
    pub kind: SeriesKind,
    pub point: ParamPoint,
    pub order: usize,
}

impl SeriesSpec {
    pub fn build(&self) -> Result<Series> {
        match self.kind {
            SeriesKind::G => build_g(&self.point, self.order),
            SeriesKind::SEven(k) => build_s_even(k, &self.point, self.order),
            SeriesKind::SOdd(k) => build_s_odd(k, &self.point, self.order),
        }
    }
}

/// `G(z) = sum_n (y;q)_n / (x;q)_n z^n` through `z^order`.
pub fn build_g(point: &ParamPoint, order: usize) -> Result<Series> {
    require_x_factors(point, 0, order)?;
    let (q, x, y) = (point.q(), point.x(), point.y());
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut c = Rational::one();
    let mut qn = Rational::one();
    coeffs.push(c.clone());
    for _ in 1..=order {
        c = c * (Rational::one() - y * &qn) / (Rational::one() - x * &qn);
        qn *= q;
        coeffs.push(c.clone());
    }
    Ok(Series::new(coeffs))
}

/// `s_0 = 1` and `s_1 = sum_n (y;q)_(n+1) / (x;q)_(n+1) z^n`, the starting
/// pair of the extraction recursion.
pub fn build_s0_s1(point: &ParamPoint, order: usize) -> Result<(Series, Series)> {
    require_x_factors(point, 0, order + 1)?;
    let (x, y) = (point.x(), point.y());
    let s1 = by_term_ratio(
        order,
        |n| point.pochhammer_y(n + 1) / point.pochhammer_x(n + 1),
        |n| {
            let qn = point.q_pow(n as u64);
            (Rational::one() - y * &qn, Rational::one() - x * qn)
        },
    );
    Ok((Series::one(order), s1))
}

/// `s_2k = (-1)^k q^C(k,2) / (q;q)_(k-1) * sum_n z^n (q^(n+1);q)_(k-1) (yq;q)_(n+k) / (xq^k;q)_(n+k)`
pub fn build_s_even(k: usize, point: &ParamPoint, order: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::KZeroUnsupported);
    }
    require_q_factors(point, k - 1)?;
    require_x_factors(point, k, order + 2 * k)?;
    let q = point.q();
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let prefactor = sign * point.q_pow(q_binom2(k as u64)) / point.pochhammer_q(k - 1);
    let xqk = point.x() * point.q_pow(k as u64);
    let one = Rational::one();
    Ok(by_term_ratio(
        order,
        |n| {
            let window = pochhammer(&point.q_pow(n as u64 + 1), q, k - 1);
            &prefactor * window * point.pochhammer_yq(n + k) / pochhammer(&xqk, q, n + k)
        },
        |n| {
            let e = (n + k) as u64;
            (
                (&one - point.q_pow(e - 1)) * (&one - point.y() * point.q_pow(e)),
                (&one - point.q_pow(n as u64)) * (&one - point.x() * point.q_pow(e + k as u64 - 1)),
            )
        },
    ))
}

/// `s_2k+1 = (1-y) Q_(k+1) (-1)^k q^C(k+1,2) * sum_n z^n (q^(n+1);q)_k (yq^(k+1);q)_n / (x;q)_(n+2k+1)`,
/// where `Q_(k+1) = y^k (x/y;q)_k` is taken in its pole-free product form.
pub fn build_s_odd(k: usize, point: &ParamPoint, order: usize) -> Result<Series> {
    require_x_factors(point, 0, order + 2 * k + 1)?;
    let q = point.q();
    let sign = if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    };
    let prefactor = (Rational::one() - point.y())
        * point.cross(k + 1)
        * sign
        * point.q_pow(q_binom2(k as u64 + 1));
    let yqk1 = point.y() * point.q_pow(k as u64 + 1);
    let one = Rational::one();
    Ok(by_term_ratio(
        order,
        |n| {
            let window = pochhammer(&point.q_pow(n as u64 + 1), q, k);
            &prefactor * window * pochhammer(&yqk1, q, n) / point.pochhammer_x(n + 2 * k + 1)
        },
        |n| {
            let e = (n + k) as u64;
            (
                (&one - point.q_pow(e)) * (&one - point.y() * point.q_pow(e)),
                (&one - point.q_pow(n as u64)) * (&one - point.x() * point.q_pow(e + k as u64)),
            )
        },
    ))
}

/// Coefficients `t_0..t_order` of a hypergeometric-type series from the
/// term ratio `t_n / t_(n-1) = num(n) / den(n)`. Falls back to the direct
/// formula whenever the ratio is undefined (a vanishing `num` or `den`
/// factor, possible only when `q` is a root of unity or a term is zero).
fn by_term_ratio(
    order: usize,
    direct: impl Fn(usize) -> Rational,
    ratio: impl Fn(usize) -> (Rational, Rational),
) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut term = direct(0);
    coeffs.push(term.clone());
    for n in 1..=order {
        let (num, den) = ratio(n);
        term = if den.is_zero() || num.is_zero() || term.is_zero() {
            direct(n)
        } else {
            term * (num / den)
        };
        coeffs.push(term.clone());
    }
    Series::new(coeffs)
}

/// `s_i` for any `i >= 0`: the initial values for `i <= 1`, the explicit
/// even/odd formulas beyond.
pub fn build_s(i: usize, point: &ParamPoint, order: usize) -> Result<Series> {
    match i {
        0 => Ok(Series::one(order)),
        1 => Ok(build_s0_s1(point, order)?.1),
        _ if i.is_multiple_of(2) => build_s_even(i / 2, point, order),
        _ => build_s_odd(i / 2, point, order),
    }
}

/// `G` with extra factors: `sum_n z^n prod_j (u_j;q)_n / prod_j (v_j;q)_n * (y;q)_n / (x;q)_n`.
pub fn build_generalized_g(
    point: &ParamPoint,
    numer_params: &[Rational],
    denom_params: &[Rational],
    order: usize,
) -> Result<Series> {
    require_x_factors(point, 0, order)?;
    let q = point.q();
    let mut qn = Rational::one();
    for n in 0..order {
        for (idx, v) in denom_params.iter().enumerate() {
            if (Rational::one() - v * &qn).is_zero() {
                return Err(Error::inadmissible(format!("(1 - v{}*q^{n})", idx + 1)));
            }
        }
        qn *= q;
    }
    let base = build_g(point, order)?;
    let mut coeffs = base.into_coeffs();
    for (n, c) in coeffs.iter_mut().enumerate() {
        for u in numer_params {
            *c *= pochhammer(u, q, n);
        }
        for v in denom_params {
            *c /= pochhammer(v, q, n);
        }
    }
    Ok(Series::new(coeffs))
}

/// Factors `1 - x q^j` for `from <= j < to`.
fn require_x_factors(point: &ParamPoint, from: usize, to: usize) -> Result<()> {
    let mut xq = point.x() * point.q_pow(from as u64);
    for j in from..to {
        if (Rational::one() - &xq).is_zero() {
            return Err(Error::inadmissible(format!("(1 - x*q^{j})")));
        }
        xq *= point.q();
    }
    Ok(())
}

/// Factors of `(q;q)_n`.
fn require_q_factors(point: &ParamPoint, n: usize) -> Result<()> {
    for j in 1..=n {
        if (Rational::one() - point.q_pow(j as u64)).is_zero() {
            return Err(Error::inadmissible(format!("(1 - q^{j})")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn base() -> ParamPoint {
        ParamPoint::from_strs("1/2", "1/3", "1/5", 8).unwrap()
    }

    #[test]
    fn g_examples() {
        let g = build_g(&base(), 2).unwrap();
        assert_eq!(g.coeffs(), &[int(1), rat(6, 5), rat(162, 125)]);
        let geo = ParamPoint::from_strs("2/7", "3/4", "3/4", 0).unwrap();
        let g = build_g(&geo, 6).unwrap();
        assert!(g.coeffs().iter().all(|c| *c == int(1)));
    }

    #[test]
    fn s0_s1_examples() {
        let (s0, s1) = build_s0_s1(&base(), 3).unwrap();
        assert_eq!(s0, Series::one(3));
        assert_eq!(s1.coeffs()[0], rat(6, 5));
        assert_eq!(s1.coeffs()[1], rat(162, 125));
    }

    #[test]
    fn s_even_examples() {
        let s2 = build_s_even(1, &base(), 2).unwrap();
        assert_eq!(s2.coeffs()[0], rat(-27, 25));
        assert_eq!(s2.coeffs()[1], rat(-1539, 1375));
        assert_eq!(build_s_even(0, &base(), 2), Err(Error::KZeroUnsupported));
    }

    #[test]
    fn s_odd_examples() {
        let p = base();
        let s1 = build_s0_s1(&p, 6).unwrap().1;
        assert_eq!(build_s_odd(0, &p, 6).unwrap(), s1);
        assert_eq!(build_s_odd(0, &p, 0).unwrap().coeffs()[0], rat(6, 5));
        // prefactor at k = 1 times the n = 0 sum term (q;q)_1 / (x;q)_3
        let s3 = build_s_odd(1, &p, 0).unwrap();
        let term = p.pochhammer_q(1) / p.pochhammer_x(3);
        assert_eq!(s3.coeffs()[0], rat(4, 75) * term);
    }

    #[test]
    fn inadmissible_is_named() {
        // x q^2 = 1
        let p = ParamPoint::from_strs("1/2", "4", "1/5", 0).unwrap();
        assert_eq!(build_g(&p, 5), Err(Error::inadmissible("(1 - x*q^2)")));
        assert!(build_g(&p, 2).is_ok());
    }

    #[test]
    fn y_zero_is_in_domain() {
        let p = ParamPoint::from_strs("1/2", "1/3", "0", 6).unwrap();
        for i in 0..8 {
            let s = build_s(i, &p, 4).unwrap();
            assert!(!s.const_term().is_zero(), "s_{i}");
        }
    }

    #[test]
    fn generalized_reduces_to_g() {
        let p = base();
        let g = build_g(&p, 6).unwrap();
        assert_eq!(build_generalized_g(&p, &[], &[], 6).unwrap(), g);
        assert_eq!(build_generalized_g(&p, &[int(0)], &[int(0)], 6).unwrap(), g);
        assert!(build_generalized_g(&p, &[], &[int(2)], 6).is_err());
    }

    #[test]
    fn term_ratio_matches_direct_products() {
        let p = base();
        let (q, x, y) = (p.q().clone(), p.x().clone(), p.y().clone());
        for k in 1..4usize {
            let s = build_s_even(k, &p, 6).unwrap();
            for n in 0..=6usize {
                let sign = if k.is_multiple_of(2) { int(1) } else { int(-1) };
                let want = sign * p.q_pow(q_binom2(k as u64)) / p.pochhammer_q(k - 1)
                    * pochhammer(&p.q_pow(n as u64 + 1), &q, k - 1)
                    * pochhammer(&(&y * &q), &q, n + k)
                    / pochhammer(&(&x * p.q_pow(k as u64)), &q, n + k);
                assert_eq!(s.coeffs()[n], want, "s_{} z^{n}", 2 * k);
            }
        }
    }

    #[test]
    fn root_of_unity_q_falls_back_to_direct() {
        // q = -1 makes (1 - q^n) vanish for even n
        let p = ParamPoint::from_strs("-1", "1/3", "1/5", 0).unwrap();
        let s = build_s_odd(1, &p, 4).unwrap();
        for n in 0..=4usize {
            let want = (int(1) - p.y())
                * p.cross(2)
                * int(-1)
                * p.q_pow(1)
                * pochhammer(&p.q_pow(n as u64 + 1), p.q(), 1)
                * pochhammer(&(p.y() * p.q_pow(2)), p.q(), n)
                / p.pochhammer_x(n + 3);
            assert_eq!(s.coeffs()[n], want);
        }
    }

    #[test]
    fn spec_dispatch() {
        let spec = SeriesSpec {
            kind: SeriesKind::SEven(1),
            point: base(),
            order: 2,
        };
        assert_eq!(spec.build().unwrap(), build_s(2, &base(), 2).unwrap());
    }
}
