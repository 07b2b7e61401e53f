//! C-fraction machinery for `z/G(z) = z/(a_1 + z/(a_2 + z/(a_3 + ...)))`.
//!
//! Three independent routes to the partial denominators live here:
//!
//! * [`extract_coeffs`] runs the recursion `z s_(i+1) = s_(i-1) - a_(i+1) s_i`
//!   on actual series, choosing each `a_(i+1)` to cancel the constant term.
//! * [`closed_a`] evaluates the closed forms for `a_2k` and `a_2k+1`, written
//!   through `Q_k = prod_(j<k-1) (y - x q^j)` so that `y = 0` needs no limit.
//! * [`closed_a_y0_printed`] and [`closed_a_x0_printed`] evaluate the
//!   specialized formulas for `y = 0` and `x = 0` exactly as they are
//!   commonly stated, so that they can be compared against the other two.
//!
//! [`convergent`] folds a coefficient list back into a series through the
//! usual three-term recurrences.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{q_binom2, ParamPoint, Rational};
use crate::builders::build_g;
use crate::error::{Error, Result};
use crate::series::Series;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Extracted,
    ClosedGeneral,
    ClosedY0Printed,
    ClosedX0Printed,
}

/// Partial denominators `a_1..a_M`. Never contains a zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFCoeffs {
    values: Vec<Rational>,
    provenance: Provenance,
    point: Option<ParamPoint>,
}

impl CFCoeffs {
    pub fn new(
        values: Vec<Rational>,
        provenance: Provenance,
        point: Option<ParamPoint>,
    ) -> Result<Self> {
        if let Some(pos) = values.iter().position(Zero::is_zero) {
            return Err(Error::Breakdown {
                index: pos + 1,
                series: pos,
            });
        }
        Ok(CFCoeffs {
            values,
            provenance,
            point,
        })
    }

    /// `a_1..a_M` by running the extraction recursion on `G` at `point`.
    pub fn extracted(point: &ParamPoint, m: usize) -> Result<Self> {
        let order = m.saturating_sub(1);
        let g = build_g(point, order)?;
        let mut c = extract_coeffs(&g, &Series::one(order), m)?;
        c.point = Some(point.clone());
        Ok(c)
    }

    /// `a_1..a_M` from the closed forms.
    pub fn closed(point: &ParamPoint, m: usize) -> Result<Self> {
        Self::from_formula(point, m, Provenance::ClosedGeneral, closed_a)
    }

    pub fn closed_y0_printed(point: &ParamPoint, m: usize) -> Result<Self> {
        Self::from_formula(point, m, Provenance::ClosedY0Printed, closed_a_y0_printed)
    }

    pub fn closed_x0_printed(point: &ParamPoint, m: usize) -> Result<Self> {
        Self::from_formula(point, m, Provenance::ClosedX0Printed, closed_a_x0_printed)
    }

    fn from_formula(
        point: &ParamPoint,
        m: usize,
        provenance: Provenance,
        f: fn(usize, &ParamPoint) -> Result<Rational>,
    ) -> Result<Self> {
        let values = (1..=m).map(|i| f(i, point)).collect::<Result<Vec<_>>>()?;
        Self::new(values, provenance, Some(point.clone()))
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// 1-based access: `a(1)` is `a_1`.
    pub fn a(&self, i: usize) -> Option<&Rational> {
        i.checked_sub(1).and_then(|j| self.values.get(j))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn point(&self) -> Option<&ParamPoint> {
        self.point.as_ref()
    }
}

/// Runs `z s_(i+1) = s_(i-1) - a_(i+1) s_i` starting from the pair
/// `(s_prev, s_curr)` and returns the first `m` partial denominators, each the
/// ratio of constant terms that makes the next division by `z` exact.
///
/// Seeding with `(G, 1)` yields `a_1, a_2, ...` of `z/G`; the first derived
/// series is then `s_1 = (G - 1)/z`.
pub fn extract_coeffs(s_prev: &Series, s_curr: &Series, m: usize) -> Result<CFCoeffs> {
    if m == 0 {
        return Err(Error::InvalidInput(
            "at least one coefficient must be requested".into(),
        ));
    }
    let available = s_prev.valid_order().min(s_curr.valid_order());
    // one order is consumed per shift, and the last step only reads c_0
    let needed = m - 1;
    if available < needed {
        return Err(Error::InsufficientOrder {
            requested: m,
            needed,
            available,
        });
    }
    let mut prev = s_prev.truncate(available);
    let mut curr = s_curr.truncate(available);
    let mut values = Vec::with_capacity(m);
    for step in 0..m {
        let denom = curr.const_term();
        if denom.is_zero() {
            return Err(Error::Breakdown {
                index: step + 1,
                series: step,
            });
        }
        let a = prev.const_term() / denom;
        if a.is_zero() {
            return Err(Error::Breakdown {
                index: step + 1,
                series: step,
            });
        }
        if step + 1 < m {
            let next = prev.sub(&curr.scale(&a)).shift_down()?;
            prev = std::mem::replace(&mut curr, next);
        }
        values.push(a);
    }
    CFCoeffs::new(values, Provenance::Extracted, None)
}

/// Closed form for `a_i`:
///
/// ```text
/// a_1    = 1
/// a_2k   = (x;q)_(k-1) (1 - x q^(2k-2)) (yq;q)_(k-1) / ((1-y) q^(k-1) Q_k (q;q)_(k-1))
/// a_2k+1 = -(1-y) Q_k (1 - x q^(2k-1)) (q;q)_(k-1) / ((x;q)_k (yq;q)_k)
/// ```
pub fn closed_a(i: usize, point: &ParamPoint) -> Result<Rational> {
    check_index(i)?;
    if i == 1 {
        return Ok(Rational::one());
    }
    let k = i / 2;
    let one = Rational::one();
    let x = point.x();
    if i.is_multiple_of(2) {
        let kk = k as u64;
        let denom = [
            (one.clone() - point.y(), "(1 - y)".to_string()),
            (point.q_pow(kk - 1), format!("q^{}", kk - 1)),
            (point.cross(k), format!("Q_{k}")),
            (point.pochhammer_q(k - 1), format!("(q;q)_{}", k - 1)),
        ];
        let d = checked_product(denom)?;
        Ok(point.pochhammer_x(k - 1)
            * (one - x * point.q_pow(2 * kk - 2))
            * point.pochhammer_yq(k - 1)
            / d)
    } else {
        let kk = k as u64;
        let denom = [
            (point.pochhammer_x(k), format!("(x;q)_{k}")),
            (point.pochhammer_yq(k), format!("(yq;q)_{k}")),
        ];
        let d = checked_product(denom)?;
        Ok(-(one.clone() - point.y())
            * point.cross(k)
            * (one - x * point.q_pow(2 * kk - 1))
            * point.pochhammer_q(k - 1)
            / d)
    }
}

/// The `y = 0` specialization as printed:
///
/// ```text
/// a_2k   = (x;q)_(k-1) (1 - x q^(2k-2)) / (x^(k-1) q^C(k,2) (q;q)_(k-1))
/// a_2k+1 = -x^(k-1) q^C(k-1,2) (1 - x q^(2k-1)) (q;q)_(k-1) / (x;q)_k
/// ```
///
/// This is `(-1)^(k-1)` times [`closed_a`] at the same point, so the two
/// disagree in sign at indices `2k, 2k+1` for every even `k`.
pub fn closed_a_y0_printed(i: usize, point: &ParamPoint) -> Result<Rational> {
    check_index(i)?;
    if !point.y().is_zero() {
        return Err(Error::WrongSpecialization {
            param: "y",
            value: point.y().to_string(),
        });
    }
    if i == 1 {
        return Ok(Rational::one());
    }
    let k = i / 2;
    let kk = k as u64;
    let one = Rational::one();
    let x = point.x();
    let x_pow = num_traits::Pow::pow(x, kk - 1);
    if i.is_multiple_of(2) {
        let denom = [
            (x_pow, format!("x^{}", kk - 1)),
            (point.q_pow(q_binom2(kk)), format!("q^{}", q_binom2(kk))),
            (point.pochhammer_q(k - 1), format!("(q;q)_{}", k - 1)),
        ];
        let d = checked_product(denom)?;
        Ok(point.pochhammer_x(k - 1) * (one - x * point.q_pow(2 * kk - 2)) / d)
    } else {
        let d = checked_product([(point.pochhammer_x(k), format!("(x;q)_{k}"))])?;
        Ok(-x_pow
            * point.q_pow(q_binom2(kk - 1))
            * (one - x * point.q_pow(2 * kk - 1))
            * point.pochhammer_q(k - 1)
            / d)
    }
}

/// The `x = 0` specialization as printed:
///
/// ```text
/// a_2k   = (yq;q)_(k-1) / ((1-y) (yq)^(k-1) (q;q)_(k-1))
/// a_2k+1 = -(1-y) y^(k-1) (q;q)_(k-1) / (yq;q)_k
/// ```
pub fn closed_a_x0_printed(i: usize, point: &ParamPoint) -> Result<Rational> {
    check_index(i)?;
    if !point.x().is_zero() {
        return Err(Error::WrongSpecialization {
            param: "x",
            value: point.x().to_string(),
        });
    }
    if i == 1 {
        return Ok(Rational::one());
    }
    let k = i / 2;
    let kk = k as u64;
    let one = Rational::one();
    let y = point.y();
    if i.is_multiple_of(2) {
        let yq = y * point.q();
        let denom = [
            (one - y, "(1 - y)".to_string()),
            (
                num_traits::Pow::pow(&yq, kk - 1),
                format!("(yq)^{}", kk - 1),
            ),
            (point.pochhammer_q(k - 1), format!("(q;q)_{}", k - 1)),
        ];
        let d = checked_product(denom)?;
        Ok(point.pochhammer_yq(k - 1) / d)
    } else {
        let d = checked_product([(point.pochhammer_yq(k), format!("(yq;q)_{k}"))])?;
        Ok(-(one - y) * num_traits::Pow::pow(y, kk - 1) * point.pochhammer_q(k - 1) / d)
    }
}

/// Numerator and denominator polynomials `(h_m, k_m)` of the m-th convergent,
/// from `h_n = a_n h_(n-1) + z h_(n-2)`, `k_n = a_n k_(n-1) + z k_(n-2)` with
/// `h_(-1) = 1, h_0 = 0, k_(-1) = 0, k_0 = 1`.
pub fn convergent_polys(coeffs: &CFCoeffs, m: usize, order: usize) -> Result<(Series, Series)> {
    if m == 0 || m > coeffs.len() {
        return Err(Error::InvalidInput(format!(
            "convergent index {m} outside 1..={}",
            coeffs.len()
        )));
    }
    let mut rec = Recurrence::new(order);
    for a in &coeffs.values()[..m] {
        rec.push(a);
    }
    Ok((rec.h, rec.k))
}

/// The m-th convergent `h_m / k_m` as a power series through `z^order`.
pub fn convergent(coeffs: &CFCoeffs, m: usize, order: usize) -> Result<Series> {
    let (h, k) = convergent_polys(coeffs, m, order)?;
    let inv = k
        .recip()
        .map_err(|_| Error::NonInvertibleDenominator { index: m })?;
    Ok(h.mul(&inv))
}

/// Every convergent `C_1..C_M` as a series through `z^order`.
pub fn convergents(coeffs: &CFCoeffs, order: usize) -> Result<Vec<Series>> {
    let mut rec = Recurrence::new(order);
    let mut out = Vec::with_capacity(coeffs.len());
    for (idx, a) in coeffs.values().iter().enumerate() {
        rec.push(a);
        let inv = rec
            .k
            .recip()
            .map_err(|_| Error::NonInvertibleDenominator { index: idx + 1 })?;
        out.push(rec.h.mul(&inv));
    }
    Ok(out)
}

/// Exact values `C_1(z)..C_M(z)` at a rational `z`, via the scalar recurrences.
pub fn eval_convergents(coeffs: &CFCoeffs, z: &Rational) -> Result<Vec<Rational>> {
    let (mut h_prev, mut h) = (Rational::one(), Rational::zero());
    let (mut k_prev, mut k) = (Rational::zero(), Rational::one());
    let mut out = Vec::with_capacity(coeffs.len());
    for (idx, a) in coeffs.values().iter().enumerate() {
        let h_next = a * &h + z * &h_prev;
        let k_next = a * &k + z * &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        if k.is_zero() {
            return Err(Error::DivisionByZero {
                what: format!("convergent C_{} at z = {z}", idx + 1),
            });
        }
        out.push(&h / &k);
    }
    Ok(out)
}

struct Recurrence {
    order: usize,
    h_prev: Series,
    h: Series,
    k_prev: Series,
    k: Series,
}

impl Recurrence {
    fn new(order: usize) -> Self {
        Recurrence {
            order,
            h_prev: Series::one(order),
            h: Series::zero(order),
            k_prev: Series::zero(order),
            k: Series::one(order),
        }
    }

    fn push(&mut self, a: &Rational) {
        let h_next = self
            .h
            .scale(a)
            .add(&self.h_prev.shift_up().truncate(self.order));
        let k_next = self
            .k
            .scale(a)
            .add(&self.k_prev.shift_up().truncate(self.order));
        self.h_prev = std::mem::replace(&mut self.h, h_next);
        self.k_prev = std::mem::replace(&mut self.k, k_next);
    }
}

/// `z / G(z)` through `z^order`.
pub fn z_over_g(point: &ParamPoint, order: usize) -> Result<Series> {
    let g = build_g(point, order.saturating_sub(1))?;
    Ok(g.recip()?.shift_up())
}

fn check_index(i: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::InvalidInput("coefficient indices start at 1".into()));
    }
    Ok(())
}

fn checked_product<const N: usize>(factors: [(Rational, String); N]) -> Result<Rational> {
    let mut acc = Rational::one();
    for (value, name) in factors {
        if value.is_zero() {
            return Err(Error::InadmissiblePoint { factor: name });
        }
        acc *= value;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::builders::build_s0_s1;

    fn base() -> ParamPoint {
        ParamPoint::from_strs("1/2", "1/3", "1/5", 10).unwrap()
    }

    #[test]
    fn extraction_examples() {
        let one = Series::new(vec![int(1)]);
        let c = extract_coeffs(&one, &one, 1).unwrap();
        assert_eq!(c.values(), &[int(1)]);

        let c = CFCoeffs::extracted(&base(), 4).unwrap();
        assert_eq!(c.values(), &[int(1), rat(5, 6), rat(-10, 9), rat(-165, 8)]);
        assert_eq!(c.provenance(), Provenance::Extracted);
    }

    #[test]
    fn extraction_from_initial_pair_skips_a1() {
        let (s0, s1) = build_s0_s1(&base(), 5).unwrap();
        let c = extract_coeffs(&s0, &s1, 3).unwrap();
        assert_eq!(c.values(), &[rat(5, 6), rat(-10, 9), rat(-165, 8)]);
    }

    #[test]
    fn extraction_order_budget() {
        let g = build_g(&base(), 3).unwrap();
        assert!(extract_coeffs(&g, &Series::one(3), 4).is_ok());
        assert_eq!(
            extract_coeffs(&g, &Series::one(3), 5),
            Err(Error::InsufficientOrder {
                requested: 5,
                needed: 4,
                available: 3
            })
        );
    }

    #[test]
    fn extraction_breakdown_is_reported() {
        // G = 1/(1-z): the fraction terminates after a_3 = -1
        let p = ParamPoint::from_strs("1/2", "1/3", "1/3", 0).unwrap();
        let c = CFCoeffs::extracted(&p, 3).unwrap();
        assert_eq!(c.values(), &[int(1), int(1), int(-1)]);
        assert_eq!(
            CFCoeffs::extracted(&p, 4),
            Err(Error::Breakdown {
                index: 4,
                series: 3
            })
        );
        assert_eq!(CFCoeffs::closed(&p, 3).unwrap().values(), c.values());
    }

    #[test]
    fn closed_examples() {
        let p = base();
        assert_eq!(closed_a(1, &p).unwrap(), int(1));
        assert_eq!(closed_a(2, &p).unwrap(), rat(5, 6));
        assert_eq!(closed_a(3, &p).unwrap(), rat(-10, 9));
        assert_eq!(closed_a(4, &p).unwrap(), rat(-165, 8));
        assert!(closed_a(0, &p).is_err());
    }

    #[test]
    fn closed_names_vanishing_factor() {
        let p = ParamPoint::from_strs("1/2", "1/3", "1/3", 0).unwrap();
        assert_eq!(
            closed_a(4, &p),
            Err(Error::InadmissiblePoint {
                factor: "Q_2".into()
            })
        );
    }

    #[test]
    fn printed_specializations() {
        let x0 = ParamPoint::from_strs("1/2", "0", "1/5", 6).unwrap();
        assert_eq!(closed_a_x0_printed(2, &x0).unwrap(), rat(5, 4));
        let y0 = ParamPoint::from_strs("1/2", "1/3", "0", 6).unwrap();
        // -(1 - xq)/(1 - x)
        assert_eq!(closed_a_y0_printed(3, &y0).unwrap(), rat(-5, 4));
        assert_eq!(closed_a_y0_printed(4, &y0).unwrap(), rat(22, 3));
        assert_eq!(closed_a(4, &y0).unwrap(), rat(-22, 3));
        assert!(matches!(
            closed_a_y0_printed(2, &base()),
            Err(Error::WrongSpecialization { param: "y", .. })
        ));
        assert!(matches!(
            closed_a_x0_printed(2, &base()),
            Err(Error::WrongSpecialization { param: "x", .. })
        ));
    }

    #[test]
    fn convergent_examples() {
        let c = CFCoeffs::closed(&base(), 4).unwrap();
        assert_eq!(convergent(&c, 1, 3).unwrap(), Series::z(3));
        let c2 = convergent(&c, 2, 3).unwrap();
        assert_eq!(c2.coeffs(), &[int(0), int(1), rat(-6, 5), rat(36, 25)]);
        let zg = z_over_g(&base(), 3).unwrap();
        assert_eq!(zg.coeffs()[3], rat(18, 125));
        assert!(c2.eq_to_order(&zg, 2).unwrap());
        assert!(!c2.eq_to_order(&zg, 3).unwrap());
        assert!(convergent(&c, 5, 3).is_err());
    }

    #[test]
    fn batch_convergents_match_single() {
        let c = CFCoeffs::closed(&base(), 6).unwrap();
        let all = convergents(&c, 8).unwrap();
        for (m, s) in all.iter().enumerate() {
            assert_eq!(*s, convergent(&c, m + 1, 8).unwrap());
        }
    }

    #[test]
    fn scalar_convergents() {
        let c = CFCoeffs::closed(&base(), 3).unwrap();
        let v = eval_convergents(&c, &rat(1, 10)).unwrap();
        assert_eq!(v[0], rat(1, 10));
        // z/(1 + z/(5/6)) at z = 1/10
        assert_eq!(v[1], rat(1, 10) / (int(1) + rat(6, 50)));
        assert!(eval_convergents(&c, &int(0))
            .unwrap()
            .iter()
            .all(Zero::is_zero));
    }

    #[test]
    fn zero_values_are_rejected() {
        assert!(CFCoeffs::new(vec![int(1), int(0)], Provenance::Extracted, None).is_err());
    }
}
