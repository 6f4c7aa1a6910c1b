use num_complex::Complex;
use num_traits::Zero;

use super::{abs, cone, crat, geo_tail, is_real_eq, summate};
use crate::error::{Error, Result};
use crate::scalar::{cln, Precision, Real};
use crate::series::Series1;

type C<R> = Complex<R>;

/// The recurring quantities at a point q.
#[derive(Clone, Debug)]
pub struct BaseQuantities<R: Real> {
    pub q: C<R>,
    /// q/(1-q)
    pub u: C<R>,
    /// (1-q+q^2)/(1-q)
    pub v: C<R>,
    /// q^2/(1-q+q^2), so that a v = q u.
    pub a: C<R>,
    /// log v / log(1/q); zero at q = 0.
    pub gamma: C<R>,
    /// 1 - 2q
    pub t: C<R>,
    /// `None` at q = 1/2, a pole of A, C and D.
    pub big_a: Option<C<R>>,
    pub big_c: Option<C<R>>,
    pub big_d: Option<C<R>>,
}

impl<R: Real> BaseQuantities<R> {
    /// (A, C, D), or a domain error at the pole q = 1/2.
    pub fn acd(&self) -> Result<(&C<R>, &C<R>, &C<R>)> {
        match (&self.big_a, &self.big_c, &self.big_d) {
            (Some(a), Some(c), Some(d)) => Ok((a, c, d)),
            _ => Err(Error::Domain(
                "q = 1/2 is a double pole of A(q) and C(q); evaluate via Laurent data instead".into(),
            )),
        }
    }
}

pub fn base_quantities<R: Real>(q: &C<R>, prec: &Precision) -> Result<BaseQuantities<R>> {
    prec.check()?;
    if !(abs(q) < 1.0) {
        return Err(Error::Domain(format!("base quantities need |q| < 1, got |q| = {}", abs(q))));
    }
    let bits = prec.bits();
    let one = cone::<R>(bits);
    let omq = &one - q;
    let u = q / &omq;
    let v = &(&omq + &(q * q)) / &omq;
    let a = &(q * q) / &(&v * &omq);
    let gamma = if q.is_zero() { C::zero() } else { cln(&v) / (-cln(q)) };
    let t = &one - &(q * &crat::<R>(2, 1, bits));
    let (big_a, big_c, big_d) = if is_real_eq(q, 0.5) {
        (None, None, None)
    } else {
        let two_q = q * &crat::<R>(2, 1, bits);
        let t2 = &t * &t;
        let big_a = &(&two_q * &(&omq * &omq)) / &t2;
        let q2 = q * q;
        let poly = &(&(&crat::<R>(3, 1, bits) - &(q * &crat::<R>(10, 1, bits))) + &(&q2 * &crat::<R>(9, 1, bits)))
            - &(&q2 * q);
        let big_c = &(&two_q * &poly) / &(&omq * &t2);
        let ratio = pochhammer(&v, q, None, prec)? / pochhammer(&(&a * &v), q, None, prec)?;
        let big_d = &big_c - &(&(&(&q2 / &(&omq * &omq)) * &big_a) * &ratio);
        (Some(big_a), Some(big_c), Some(big_d))
    };
    Ok(BaseQuantities { q: q.clone(), u, v, a, gamma, t, big_a, big_c, big_d })
}

/// The q-Pochhammer symbol (x;q)_n, or (x;q)_inf for `n = None`.
///
/// The infinite product stops once the neglected factors can move it by a
/// relative amount below tolerance: with `lead = |x||q|^K <= 1/2` the tail
/// factors change the logarithm by at most `b = 2 lead/(1-|q|)`, hence the
/// product by at most `2b` relatively.
pub fn pochhammer<R: Real>(x: &C<R>, q: &C<R>, n: Option<usize>, prec: &Precision) -> Result<C<R>> {
    let one = cone::<R>(prec.bits());
    let mut p = one.clone();
    let mut xq = x.clone();
    match n {
        Some(n) => {
            for _ in 0..n {
                p = &p * &(&one - &xq);
                xq = &xq * q;
            }
        }
        None => {
            let aq = abs(q);
            if !(aq < 1.0) {
                return Err(Error::Domain(format!("(x;q)_inf needs |q| < 1, got |q| = {aq}")));
            }
            let ax = abs(x);
            summate(prec, "q-Pochhammer product", |k| {
                p = &p * &(&one - &xq);
                xq = &xq * q;
                let lead = ax * aq.powi(k as i32 + 1);
                let b = 2.0 * lead / (1.0 - aq);
                (lead <= 0.5 && b <= 1.0).then_some(2.0 * b)
            })?;
        }
    }
    Ok(p)
}

/// d_0..=d_nmax from d_nu = d_{nu-1} (v - u q^nu)/(1 - q^nu), d_0 = 1.
pub fn d_nu_recurrence<R: Real>(nmax: usize, q: &C<R>, prec: &Precision) -> Result<Vec<C<R>>> {
    let b = base_quantities(q, prec)?;
    let mut out = vec![cone::<R>(prec.bits())];
    out.extend(d_nu_recurrence_iter(&b, prec.bits()).take(nmax));
    Ok(out)
}

/// d_1, d_2, ... by the recurrence, without end.
pub(crate) fn d_nu_recurrence_iter<R: Real>(b: &BaseQuantities<R>, bits: u32) -> impl Iterator<Item = C<R>> + '_ {
    let one = cone::<R>(bits);
    let mut d = one.clone();
    let mut qn = one.clone();
    std::iter::from_fn(move || {
        qn = &qn * &b.q;
        d = &d * &(&(&b.v - &(&b.u * &qn)) / &(&one - &qn));
        Some(d.clone())
    })
}

/// d_0..=d_nmax from the explicit sum over poles,
/// `d_nu = (a;q)_inf/(q;q)_inf sum_j e_j (v q^j)^nu` with
/// `e_j = prod_{i<=j} (a - q^i)/(1 - q^i)`.  Valid for nu >= 1; d_0 = 1.
pub fn d_nu_formula<R: Real>(nmax: usize, q: &C<R>, prec: &Precision) -> Result<Vec<C<R>>> {
    let b = base_quantities(q, prec)?;
    if !(abs(&b.a) < 1.0) {
        return Err(Error::Domain(format!("pole expansion needs |a| < 1, got {}", abs(&b.a))));
    }
    let one = cone::<R>(prec.bits());
    let pref = pochhammer(&b.a, q, None, prec)? / pochhammer(q, q, None, prec)?;
    let (aa, aq) = (abs(&b.a), abs(q));
    let mut out = vec![one.clone()];
    let mut vn = one.clone();
    let mut qn = one.clone();
    for nu in 1..=nmax {
        vn = &vn * &b.v;
        qn = &qn * q;
        let mut s = C::<R>::zero();
        let mut e = one.clone();
        let mut w = vn.clone();
        let mut qj = one.clone();
        summate(prec, "d_nu pole sum", |j| {
            if j > 0 {
                qj = &qj * q;
                e = &e * &(&(&b.a - &qj) / &(&one - &qj));
                w = &w * &qn;
            }
            let term = &e * &w;
            s = &s + &term;
            let qj1 = aq.powi(j as i32 + 1);
            geo_tail(abs(&term), (aa + qj1) / (1.0 - qj1) * aq.powi(nu as i32))
        })?;
        out.push(&pref * &s);
    }
    Ok(out)
}

/// d_0..=d_nmax as coefficients of the truncated products
/// `prod_{k<K} (1 - q u q^k z) / prod_{k<K} (1 - v q^k z)`, divided as power
/// series in z.
pub fn d_nu_extract<R: Real>(nmax: usize, q: &C<R>, prec: &Precision) -> Result<Vec<C<R>>> {
    let b = base_quantities(q, prec)?;
    let one = cone::<R>(prec.bits());
    let qu = q * &b.u;
    let aq = abs(q);
    let m = 1f64.max(abs(&qu)).max(abs(&b.v));
    let mut num = vec![C::<R>::zero(); nmax + 1];
    let mut den = num.clone();
    num[0] = one.clone();
    den[0] = one.clone();
    let mut cn = qu.clone();
    let mut cd = b.v.clone();
    summate(prec, "d_nu product truncation", |k| {
        for i in (1..=nmax).rev() {
            let tn = &cn * &num[i - 1];
            num[i] = &num[i] - &tn;
            let td = &cd * &den[i - 1];
            den[i] = &den[i] - &td;
        }
        cn = &cn * q;
        cd = &cd * q;
        let lead = aq.powi(k as i32 + 1);
        let bnd = 2.0 * lead / ((1.0 - aq) * (1.0 - lead));
        (bnd <= 1.0).then_some(2.0 * bnd * (nmax as f64 + 1.0) * m.powi(nmax as i32))
    })?;
    let s = Series1::from_coeffs(num).div_unit(&Series1::from_coeffs(den))?;
    Ok(s.into_coeffs())
}

/// Both sides of the partial-fraction expansion
/// `(az;q)_inf/(z;q)_inf = 1 + (a;q)_inf/(q;q)_inf sum_j e_j z q^j/(1 - z q^j)`.
pub fn mittag_leffler_check<R: Real>(a: &C<R>, q: &C<R>, z: &C<R>, prec: &Precision) -> Result<(C<R>, C<R>)> {
    prec.check()?;
    let (aa, aq, az) = (abs(a), abs(q), abs(z));
    if !(aa < 1.0) || !(aq < 1.0) {
        return Err(Error::Domain(format!("expansion needs |a| < 1 and |q| < 1, got {aa} and {aq}")));
    }
    let one = cone::<R>(prec.bits());
    // poles at z = q^-j
    let mut pole = one.clone();
    let qinv = &one / q;
    while abs(&pole) <= 2.0 * az + 2.0 {
        if abs(&(z - &pole)) < 1e-6 {
            return Err(Error::Domain(format!("z is within 1e-6 of the pole {}", pole.re.to_f64())));
        }
        pole = &pole * &qinv;
    }
    let lhs = pochhammer(&(a * z), q, None, prec)? / pochhammer(z, q, None, prec)?;
    let mut s = C::<R>::zero();
    let mut e = one.clone();
    let mut qj = one.clone();
    summate(prec, "partial-fraction sum", |j| {
        if j > 0 {
            qj = &qj * q;
            e = &e * &(&(a - &qj) / &(&one - &qj));
        }
        let zq = z * &qj;
        let term = &(&e * &zq) / &(&one - &zq);
        s = &s + &term;
        let (pj, pj1) = (aq.powi(j as i32), aq.powi(j as i32 + 1));
        if az * pj1 >= 1.0 {
            return None;
        }
        geo_tail(abs(&term), (aa + pj1) / (1.0 - pj1) * aq * (1.0 + az * pj) / (1.0 - az * pj1))
    })?;
    let rhs = &one + &(&(pochhammer(a, q, None, prec)? / pochhammer(q, q, None, prec)?) * &s);
    Ok((lhs, rhs))
}
