use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;

use super::{abs, base_quantities, cone, crat, d_nu_recurrence_iter, geo_tail, pochhammer, summate, BaseQuantities};
use crate::enumerate::{pa3_series, Method};
use crate::error::{Error, Result};
use crate::scalar::{cexp, cln, cpow, cpowi, cre, csin, cx, Precision, Real};

type C<R> = Complex<R>;

/// Route used to evaluate the 3-sided generating function PA(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GfMethod {
    /// Partial sum of the exact counts.
    Taylor,
    /// C - A (v;q)/(qu;q) [q^2/(1-q)^2 + sum d_nu q^(nu+2)/(1-2q+q^(nu+2))].
    Meromorphic,
    /// D - q^2 A (a;q)(v;q)/((q;q)(av;q)) sum_j e_j H_j(q).
    DoubleSum,
    /// The same prefactor times (1-2q)^-gamma Pi(...) U(q) + V(q).
    Singular,
}

impl GfMethod {
    pub const ALL: [GfMethod; 4] = [GfMethod::Taylor, GfMethod::Meromorphic, GfMethod::DoubleSum, GfMethod::Singular];
}

impl fmt::Display for GfMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GfMethod::Taylor => "taylor",
            GfMethod::Meromorphic => "meromorphic",
            GfMethod::DoubleSum => "doublesum",
            GfMethod::Singular => "singular",
        })
    }
}

impl FromStr for GfMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        GfMethod::ALL
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| Error::Usage(format!("unknown method '{s}' (taylor, meromorphic, doublesum, singular)")))
    }
}

/// Optional overrides for the truncations that are otherwise chosen from tail
/// bounds.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GfParams {
    /// Number of exact coefficients in the Taylor route.
    pub taylor_order: Option<usize>,
    /// Largest |k| kept in Pi.
    pub harmonics: Option<usize>,
}

/// Largest |1 - 2q| accepted by the singular route and by U, V.
pub const SINGULAR_RADIUS: f64 = 0.25;

pub fn gf_eval<R: Real>(q: &C<R>, method: GfMethod, params: &GfParams, prec: &Precision) -> Result<C<R>> {
    prec.check()?;
    match method {
        GfMethod::Taylor => taylor(q, params, prec),
        GfMethod::Meromorphic => meromorphic(q, prec),
        GfMethod::DoubleSum => double_sum(q, prec),
        GfMethod::Singular => singular(q, params, prec),
    }
}

/// Order used by the Taylor route at `|q|`: the tail is bounded with
/// `PA_n <= 2^n (2 + n^2)`, which holds on every computed coefficient (see
/// the tests) and is far from tight for large n.
pub fn taylor_order(aq: f64, prec: &Precision) -> Result<usize> {
    let x = 2.0 * aq;
    summate(prec, "taylor tail", |k| {
        let n = (k + 1) as f64;
        let term = x.powf(n) * (2.0 + n * n);
        geo_tail(term, x * (1.0 + (2.0 * n + 1.0) / (2.0 + n * n)))
    })
}

fn taylor<R: Real>(q: &C<R>, params: &GfParams, prec: &Precision) -> Result<C<R>> {
    let aq = abs(q);
    if !(aq < 0.5) {
        return Err(Error::Domain(format!("taylor route needs |q| < 1/2, got |q| = {aq}")));
    }
    let n = match params.taylor_order {
        Some(n) => n * prec.tail_scale as usize,
        None => taylor_order(aq, prec)?,
    };
    let counts = pa3_series(n.max(1), Method::Theorem)?;
    let bits = prec.bits();
    let mut acc = C::<R>::zero();
    for c in counts.counts().iter().rev() {
        acc = &(&acc + &cre(R::from_bigint(c, bits))) * q;
    }
    Ok(acc)
}

fn in_meromorphic_domain<R: Real>(q: &C<R>) -> Result<()> {
    let aq = abs(q);
    let on_slit = q.im.is_zero() && q.re.to_f64() >= 0.5;
    if !(aq < 0.55) || on_slit {
        return Err(Error::Domain(format!(
            "meromorphic route needs |q| < 0.55 off the slit [1/2, 0.55], got q = {} + {}i",
            q.re.to_f64(),
            q.im.to_f64()
        )));
    }
    Ok(())
}

fn meromorphic<R: Real>(q: &C<R>, prec: &Precision) -> Result<C<R>> {
    in_meromorphic_domain(q)?;
    let b = base_quantities(q, prec)?;
    let (big_a, big_c, _) = b.acd()?;
    let bits = prec.bits();
    let one = cone::<R>(bits);
    let omq = &one - q;
    let q2 = q * q;
    let mut s = &q2 / &(&omq * &omq);
    let (aq, at, au, av) = (abs(q), abs(&b.t), abs(&b.u), abs(&b.v));
    let mut d = d_nu_recurrence_iter(&b, bits);
    let mut qn2 = &q2 * q;
    summate(prec, "meromorphic d_nu sum", |k| {
        let nu = k + 1;
        let dn = d.next().expect("endless");
        let term = &(&dn * &qn2) / &(&b.t + &qn2);
        s = &s + &term;
        qn2 = &qn2 * q;
        let p1 = aq.powi(nu as i32 + 1);
        let num = at + aq.powi(nu as i32 + 2);
        let den = at - aq.powi(nu as i32 + 3);
        if den <= 0.0 {
            return None;
        }
        geo_tail(abs(&term), (av + au * p1) / (1.0 - p1) * aq * num / den)
    })?;
    let p = pochhammer(&b.v, q, None, prec)? / pochhammer(&(q * &b.u), q, None, prec)?;
    Ok(big_c - &(&(big_a * &p) * &s))
}

/// The factor q^2 A (a;q)(v;q)/((q;q)(av;q)) multiplying T(q).
fn t_prefactor<R: Real>(b: &BaseQuantities<R>, prec: &Precision) -> Result<C<R>> {
    let (big_a, _, _) = b.acd()?;
    let q = &b.q;
    let num = &pochhammer(&b.a, q, None, prec)? * &pochhammer(&b.v, q, None, prec)?;
    let den = &pochhammer(q, q, None, prec)? * &pochhammer(&(&b.a * &b.v), q, None, prec)?;
    Ok(&(&(q * q) * big_a) * &(num / den))
}

/// Lower bound on |1 - 2q + q^(nu+2)| over nu >= 1.
fn denominator_floor<R: Real>(q: &C<R>, t: &C<R>) -> f64 {
    let (aq, at) = (abs(q), abs(t));
    let mut m = f64::INFINITY;
    let mut p = q * &(q * q);
    let mut nu = 1;
    while aq.powi(nu + 2) >= at / 2.0 && nu < 10_000 {
        m = m.min(abs(&(t + &p)));
        p = &p * q;
        nu += 1;
    }
    m.min(at / 2.0)
}

fn double_sum<R: Real>(q: &C<R>, prec: &Precision) -> Result<C<R>> {
    let b = base_quantities(q, prec)?;
    let (_, _, big_d) = b.acd()?;
    let (aq, aa) = (abs(q), abs(&b.a));
    let x0 = abs(&b.v) * aq;
    if !(x0 < 1.0) || !(aa < 1.0) {
        return Err(Error::Domain(format!("double sum needs |v q| < 1 and |a| < 1, got {x0} and {aa}")));
    }
    let m = denominator_floor(q, &b.t);
    if !(m > 0.0) {
        return Err(Error::Domain("double sum: 1 - 2q + q^(nu+2) vanishes".into()));
    }
    let one = cone::<R>(prec.bits());
    let mut total = C::<R>::zero();
    let mut e = one.clone();
    let mut qj = one.clone();
    let mut inner = Ok(());
    summate(prec, "double sum over j", |j| {
        if j > 0 {
            qj = &qj * q;
            e = &e * &(&(&b.a - &qj) / &(&one - &qj));
        }
        match h_big(&b, j, m, prec) {
            Ok(h) => total = &total + &(&e * &h),
            Err(err) => {
                inner = Err(err);
                return Some(0.0);
            }
        }
        let p1 = aq.powi(j as i32 + 1);
        let rho = (aa + p1) / (1.0 - p1);
        let x1 = x0 * p1;
        if x1 >= 1.0 || rho * aq >= 1.0 {
            return None;
        }
        Some(abs(&e) * rho * x1 / ((1.0 - x1) * m * (1.0 - rho * aq)))
    })?;
    inner?;
    Ok(big_d - &(&t_prefactor(&b, prec)? * &total))
}

/// H_j(q) = sum_{nu>=1} (v q^(j+1))^nu / (1 - 2q + q^(nu+2)); `m` bounds the
/// denominators from below.
fn h_big<R: Real>(b: &BaseQuantities<R>, j: usize, m: f64, prec: &Precision) -> Result<C<R>> {
    let q = &b.q;
    let x = &b.v * &cpowi(q, j as i64 + 1);
    let ax = abs(&x);
    let mut s = C::<R>::zero();
    let mut xn = cone::<R>(prec.bits());
    let mut qn2 = &(q * q) * q;
    summate(prec, "H_j sum over nu", |k| {
        xn = &xn * &x;
        s = &s + &(&xn / &(&b.t + &qn2));
        qn2 = &qn2 * q;
        Some(ax.powi(k as i32 + 2) / ((1.0 - ax) * m))
    })?;
    Ok(s)
}

/// Fourier coefficient p_k = pi / sin(pi gamma + 2 i k pi^2 / log(1/q)).
pub fn pi_coefficient<R: Real>(k: i64, q: &C<R>, gamma: &C<R>, bits: u32) -> C<R> {
    let pi = R::pi(bits);
    let l = -cln(q);
    let arg = &(gamma * &cre(pi.clone())) + &(&cx(pi.zero_like(), (pi.clone() * &pi).mul_i64(2 * k)) / &l);
    &cre(pi) / &csin(&arg)
}

/// Pi(w) = sum_k p_k e^(-2 i k pi w) for the given gamma.  Harmonics are added
/// in pairs +-k; each side is bounded by `2 pi e^-|y_k| / (1 - e^-2|y_k|)`
/// times `|e^(-2ikpi w)|`, which decays geometrically in k.
pub fn pi_series<R: Real>(w: &C<R>, q: &C<R>, gamma: &C<R>, harmonics: Option<usize>, prec: &Precision) -> Result<C<R>> {
    let bits = prec.bits();
    let pi = R::pi(bits);
    let l = -cln(q);
    let il = (&cone::<R>(bits) / &l).re.to_f64();
    let ig = gamma.im.to_f64() * PI;
    let wi = w.im.to_f64();
    let two_pi_w = &cx(pi.zero_like(), pi.mul_i64(-2)) * w;
    let mut s = pi_coefficient(0, q, gamma, bits);
    let term = |k: i64| &pi_coefficient(k, q, gamma, bits) * &cexp(&(&two_pi_w * &crat::<R>(k, 1, bits)));
    let side = |k: f64, sign: f64| {
        let y = (ig + sign * 2.0 * k * PI * PI * il).abs();
        2.0 * PI * (-y).exp() / (1.0 - (-2.0 * y).exp()) * (sign * 2.0 * k * PI * wi).exp()
    };
    let r_plus = (-2.0 * PI * PI * il + 2.0 * PI * wi).exp();
    let r_minus = (-2.0 * PI * PI * il - 2.0 * PI * wi).exp();
    match harmonics {
        Some(kmax) => {
            for k in 1..=(kmax * prec.tail_scale as usize) as i64 {
                s = &(&s + &term(k)) + &term(-k);
            }
        }
        None => {
            summate(prec, "Pi harmonics", |k| {
                let k = k as i64 + 1;
                s = &(&s + &term(k)) + &term(-k);
                let kf = k as f64;
                Some(geo_tail(side(kf, 1.0), r_plus)? + geo_tail(side(kf, -1.0), r_minus)?)
            })?;
        }
    }
    Ok(s)
}

/// Pi(w) at the gamma of q.
pub fn pi_eval<R: Real>(w: &C<R>, q: &C<R>, prec: &Precision) -> Result<C<R>> {
    let b = base_quantities(q, prec)?;
    pi_series(w, q, &b.gamma, None, prec)
}

fn near_half<R: Real>(b: &BaseQuantities<R>, what: &str) -> Result<()> {
    let at = abs(&b.t);
    if !(at <= SINGULAR_RADIUS) {
        return Err(Error::Domain(format!("{what} needs |1 - 2q| <= {SINGULAR_RADIUS}, got {at}")));
    }
    Ok(())
}

/// The singular series U(q) = v q^(3 gamma - 2)/log(1/q) (-t/q;q)/(-a t/q^2;q).
pub fn u_eval<R: Real>(q: &C<R>, prec: &Precision) -> Result<C<R>> {
    let b = base_quantities(q, prec)?;
    near_half(&b, "U(q)")?;
    u_from(&b, prec)
}

fn u_from<R: Real>(b: &BaseQuantities<R>, prec: &Precision) -> Result<C<R>> {
    let q = &b.q;
    let bits = prec.bits();
    let lq = cln(q);
    let e = &(&b.gamma * &crat::<R>(3, 1, bits)) - &crat::<R>(2, 1, bits);
    let pw = cexp(&(&e * &lq));
    let x1 = -(&b.t / q);
    let x2 = -(&(&b.a * &b.t) / &(q * q));
    let ratio = pochhammer(&x1, q, None, prec)? / pochhammer(&x2, q, None, prec)?;
    Ok(&(&(&b.v * &pw) / &(-lq)) * &ratio)
}

/// The regular series V(q).
pub fn v_eval<R: Real>(q: &C<R>, prec: &Precision) -> Result<C<R>> {
    let b = base_quantities(q, prec)?;
    near_half(&b, "V(q)")?;
    v_from(&b, prec)
}

fn v_from<R: Real>(b: &BaseQuantities<R>, prec: &Precision) -> Result<C<R>> {
    let q = &b.q;
    let one = cone::<R>(prec.bits());
    let q2 = q * q;
    let z = -(&(&b.a * &b.t) / &q2);
    let az = abs(&z);
    if !(az < 1.0) {
        return Err(Error::Domain(format!("V(q) needs |a t / q^2| < 1, got {az}")));
    }
    let qq = pochhammer(q, q, None, prec)?;
    let pa = pochhammer(&b.a, q, None, prec)?;
    let av = &b.a * &b.v;
    let first = -(&(&qq / &pa) / &(&q2 + &b.t));
    let pref = &(&(&qq * &pochhammer(&av, q, None, prec)?) / &(&pa * &pochhammer(&b.v, q, None, prec)?)) / &q2;
    let (aq, aav, avv) = (abs(q), abs(&av), abs(&b.v));
    let mut s = C::<R>::zero();
    let mut c = one.clone();
    let mut zr = one.clone();
    let mut qr = one.clone();
    summate(prec, "V(q) hypergeometric sum", |r| {
        if r > 0 {
            c = &c * &(&(&one - &(&qr / &av)) / &(&one - &(&qr / &b.v)));
            zr = &zr * &z;
        }
        let term = &c * &zr;
        s = &s + &term;
        qr = &qr * q;
        let p1 = aq.powi(r as i32 + 1);
        if p1 >= avv {
            return None;
        }
        geo_tail(abs(&term), (1.0 + p1 / aav) / (1.0 - p1 / avv) * az)
    })?;
    Ok(&first + &(&pref * &s))
}

fn singular<R: Real>(q: &C<R>, params: &GfParams, prec: &Precision) -> Result<C<R>> {
    let b = base_quantities(q, prec)?;
    near_half(&b, "singular route")?;
    if q.im.is_zero() && q.re.to_f64() >= 0.5 {
        return Err(Error::Domain("singular route needs q off the cut [1/2, 1)".into()));
    }
    let (_, _, big_d) = b.acd()?;
    let lt = cln(&b.t);
    let w = &lt / &(-cln(q));
    let pi = pi_series(&w, q, &b.gamma, params.harmonics, prec)?;
    let tg = cexp(&(-(&b.gamma * &lt)));
    let t_big = &(&(&tg * &pi) * &u_from(&b, prec)?) + &v_from(&b, prec)?;
    Ok(big_d - &(&t_prefactor(&b, prec)? * &t_big))
}

fn hj_args<R: Real>(t: &R, q: &R, v: &R) -> Result<()> {
    let (t, q, v) = (t.to_f64(), q.to_f64(), v.to_f64());
    if !(q > 0.0 && q < 1.0 && v > 0.0 && t > 0.0) {
        return Err(Error::Domain(format!("h_j needs 0 < q < 1, v > 0, t > 0; got q = {q}, v = {v}, t = {t}")));
    }
    Ok(())
}

/// h_j(t) = q^-2 sum_{nu>=1} (v q^j)^nu / (1 + t q^(-nu-2)), summed directly.
pub fn hj_direct<R: Real>(j: usize, t: &R, q: &R, v: &R, prec: &Precision) -> Result<R> {
    hj_args(t, q, v)?;
    let bits = prec.bits();
    let one = R::from_f64(1.0, bits);
    let x = v.clone() * &q.powi(j as i32);
    let (xf, qf, tf) = (x.to_f64(), q.to_f64(), t.to_f64());
    let qinv = one.clone() / q;
    let mut s = one.zero_like();
    let mut xn = one.clone();
    let mut tq = t.clone() * &qinv * &qinv;
    summate(prec, "h_j direct sum", |k| {
        let nu = k as i32 + 1;
        xn *= &x;
        tq *= &qinv;
        let term = xn.clone() / &(one.clone() + &tq);
        s += &term;
        let s_inv = qf.powi(nu + 2) / tf;
        geo_tail(term.to_f64().abs(), xf * qf * (1.0 + s_inv) / (1.0 + qf * s_inv))
    })?;
    Ok(s / &(q.clone() * q))
}

/// The power-law-with-Pi form of h_j(t).  The r-sum diverges once t > q^2; the
/// part with r > j is therefore resummed in closed form through the geometric
/// series in m, which continues it to the whole range 0 < t < q^-3.
pub fn hj_representation<R: Real>(j: usize, t: &R, q: &R, v: &R, prec: &Precision) -> Result<R> {
    hj_args(t, q, v)?;
    let (tf, qf, vf) = (t.to_f64(), q.to_f64(), v.to_f64());
    if !(tf < qf.powi(-3)) {
        return Err(Error::Domain(format!("h_j representation holds for 0 < t < q^-3 = {}, got t = {tf}", qf.powi(-3))));
    }
    if !(vf > 1.0) {
        return Err(Error::Domain(format!("h_j representation needs v > 1, got {vf}")));
    }
    let bits = prec.bits();
    let one = R::from_f64(1.0, bits);
    let l = (one.clone() / q).ln();
    let gamma = v.ln() / &l;
    let jj = j as i32;
    let sign = if j.is_multiple_of(2) { one.clone() } else { -one.clone() };
    // power-law part
    let cq = cre(q.clone());
    let w = cre(t.ln() / &l);
    let pi = pi_series(&w, &cq, &cre(gamma.clone()), None, prec)?;
    let e = gamma.mul_i64(3) - &one.from_i64_like(2 * jj as i64 + 2);
    let tp = cpow(&cre(t.clone()), &cre(one.from_i64_like(jj as i64) - &gamma)).re;
    let head = sign * v * &q.powf(&e) / &l * &tp;
    let mut total = head * &pi.re;
    // r-sum up to r = j
    let q2 = q.clone() * q;
    let mut rs = one.zero_like();
    for r in 0..=jj {
        let sgn = if r % 2 == 0 { one.clone() } else { -one.clone() };
        let num = v.clone() * &q.powi(jj - 3 * r);
        let den = one.clone() - &(v.clone() * &q.powi(jj - r));
        rs += &(sgn * &num / &den * &t.powi(r));
    }
    // tail r > j: -sum_m v^-m q^-jm (-t q^(m-2))^(j+1) / (1 + t q^(m-2))
    let mut tail = one.zero_like();
    let vinv_qj = one.clone() / &(v.clone() * &q.powi(jj));
    let mut f = one.clone();
    let mut tq = t.clone() / &q2;
    let p = jj + 1;
    summate(prec, "h_j resummed tail", |m| {
        if m > 0 {
            f *= &vinv_qj;
            tq *= q;
        }
        let mut term = f.clone() * &(-tq.clone()).powi(p) / &(one.clone() + &tq);
        term = -term;
        tail += &term;
        let s = tf * qf.powi(m as i32 - 2);
        geo_tail(term.to_f64().abs(), qf / vf * (1.0 + s) / (1.0 + qf * s))
    })?;
    total += &((rs + &tail) / &q2);
    Ok(total)
}

/// Both sides of the h_j identity, restricted to its validity range.
pub fn hj_check<R: Real>(j: usize, t: &R, q: &R, v: &R, prec: &Precision) -> Result<(R, R)> {
    let rep = hj_representation(j, t, q, v, prec)?;
    Ok((hj_direct(j, t, q, v, prec)?, rep))
}
