//! Exact area counts of 2-, 3- and 4-sided prudent polygons.
//!
//! Three independent routes are provided for the 3-sided case: the
//! catalytic functional equation for `W(q,u)`, the explicit q-series sum
//! (kept as a running product), and the meromorphic form built on the
//! coefficients `d_nu(q)`.  The last two are generic over the coefficient
//! ring and also run in multiprecision floats.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{BigFloat, Coeff, Real};
use crate::series::{expand_rational_in, Cat, Series1, Series2, Series3};

/// How a count table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    Functional,
    Theorem,
    Meromorphic,
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed-form",
            Method::Functional => "functional",
            Method::Theorem => "theorem",
            Method::Meromorphic => "meromorphic",
            Method::Oracle => "oracle",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "closed-form" => Method::ClosedForm,
            "functional" => Method::Functional,
            "theorem" => Method::Theorem,
            "meromorphic" => Method::Meromorphic,
            "oracle" => Method::Oracle,
            _ => return Err(Error::Usage(format!("unknown method {s:?}"))),
        })
    }
}

/// `PA_n` for `n = 1..=N` for one sidedness.
#[derive(Clone, Debug, PartialEq)]
pub struct CountTable {
    pub k: u8,
    pub method: Method,
    counts: Vec<BigInt>,
}

impl CountTable {
    pub fn new(k: u8, method: Method, counts: Vec<BigInt>) -> Self {
        CountTable { k, method, counts }
    }

    /// From a series with zero constant term.
    pub fn from_series(k: u8, method: Method, s: &Series1<BigInt>) -> Self {
        assert!(s.coeff(0).is_zero(), "area series has no constant term");
        CountTable { k, method, counts: s.coeffs()[1..].to_vec() }
    }

    pub fn max_area(&self) -> usize {
        self.counts.len()
    }

    /// `PA_n`, `1 <= n <= max_area`.
    pub fn get(&self, n: usize) -> &BigInt {
        &self.counts[n - 1]
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `(n, PA_n)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.counts.iter().enumerate().map(|(i, c)| (i + 1, c))
    }
}

fn need_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("truncation order must be at least 1".into()));
    }
    Ok(())
}

fn one() -> BigInt {
    BigInt::one()
}

// ---------------------------------------------------------------------------
// bargraphs and 2-sided polygons

/// `B(q) = q/(1-2q)`.
pub fn bargraph_series(n: usize) -> Result<Series1<BigInt>> {
    need_order(n)?;
    expand_rational_in(&[0, 1], &[1, -2], n, &one())
}

/// `B(q,u)` by adding columns: iterate `B = qu/(1-q) (1 + B)` to a fixed point.
pub fn bargraph_width_series(n: usize) -> Result<Series2<BigInt>> {
    need_order(n)?;
    let unit = one();
    let mut b = Series2::zero(n, &unit);
    let seed = Series2::from_poly(n, &[(1, 1, 1)], &unit);
    for _ in 0..=n {
        let next = seed.add(&seed.mul(&b)).div_poly(&[(0, 0, 1), (1, 0, -1)])?;
        if next == b {
            return Ok(b);
        }
        b = next;
    }
    Err(Error::Domain("bargraph iteration did not stabilise".into()))
}

/// `(1-q) B - qu - qu B`, zero for the bargraph series.
pub fn bargraph_residual(b: &Series2<BigInt>) -> Series2<BigInt> {
    let n = b.order();
    let qu = Series2::from_poly(n, &[(1, 1, 1)], &one());
    b.mul_poly(&[(0, 0, 1), (1, 0, -1)]).sub(&qu).sub(&b.mul_poly(&[(1, 1, 1)]))
}

/// 2-sided counts from `2q/(1-2q) + 2q/(1-q)`.
pub fn pa2_series(n: usize) -> Result<CountTable> {
    need_order(n)?;
    let a = expand_rational_in(&[0, 2], &[1, -2], n, &one())?;
    let b = expand_rational_in(&[0, 2], &[1, -1], n, &one())?;
    Ok(CountTable::from_series(2, Method::ClosedForm, &(&a + &b)))
}

// ---------------------------------------------------------------------------
// 3-sided: functional equation

const DEN_1_2Q: [(usize, usize, i64); 2] = [(0, 0, 1), (1, 0, -2)];
const DEN_1_Q_QU: [(usize, usize, i64); 3] = [(0, 0, 1), (1, 0, -1), (1, 1, -1)];

/// Solve `W = F + G W(q,qu)` by iterating the substitution.
///
/// `F = qu(1-q)^2 / ((1-2q)(1-q-qu))`,
/// `G = -q(1-q-u+qu-q^2u) / ((1-2q)(1-q-qu))`.
/// The m-th correction starts at `q^(2m+1)`; this is checked at every step.
pub fn w_series(n: usize) -> Result<Series2<BigInt>> {
    need_order(n)?;
    let unit = one();
    let f = Series2::from_poly(n, &[(1, 1, 1), (2, 1, -2), (3, 1, 1)], &unit)
        .div_poly(&DEN_1_2Q)?
        .div_poly(&DEN_1_Q_QU)?;
    let apply_g = |s: &Series2<BigInt>| -> Result<Series2<BigInt>> {
        s.mul_poly(&[(1, 0, -1), (2, 0, 1), (1, 1, 1), (2, 1, -1), (3, 1, 1)])
            .div_poly(&DEN_1_2Q)?
            .div_poly(&DEN_1_Q_QU)
    };
    let mut w = f.clone();
    let mut m = 1;
    while 2 * m < n {
        let next = f.add(&apply_g(&w.subst_scale(1))?);
        let delta = next.sub(&w);
        if delta.valuation() < 2 * m + 1 {
            return Err(Error::Domain(format!(
                "iteration {m} changed W at q^{} (expected valuation >= {})",
                delta.valuation(),
                2 * m + 1
            )));
        }
        w = next;
        m += 1;
    }
    let check = f.add(&apply_g(&w.subst_scale(1))?);
    if check != w {
        return Err(Error::Domain("W did not stabilise".into()));
    }
    Ok(w)
}

/// Residual of the equation for `W` in its combinatorial form, cleared of
/// denominators:
/// `(1-q)(1-q-qu) W - qu(1-q)^2 - q(1-q-qu)(W - W(q,qu)) - qu(1-q)^2 W(q,qu)`.
pub fn w_residual(w: &Series2<BigInt>) -> Series2<BigInt> {
    let n = w.order();
    let unit = one();
    let wq = w.subst_scale(1);
    let lhs = w.mul_poly(&DEN_1_Q_QU).mul_poly(&[(0, 0, 1), (1, 0, -1)]);
    let t1 = Series2::from_poly(n, &[(1, 1, 1), (2, 1, -2), (3, 1, 1)], &unit);
    let t2 = w.sub(&wq).mul_poly(&[(1, 0, 1), (2, 0, -1), (2, 1, -1)]);
    let t3 = wq.mul_poly(&[(1, 1, 1), (2, 1, -2), (3, 1, 1)]);
    lhs.sub(&t1).sub(&t2).sub(&t3)
}

/// `PA(q) = 2 W(q,1) + 2 (q/(1-q) + q/(1-2q))`.
pub fn pa3_from_w(w: &Series2<BigInt>) -> Result<Series1<BigInt>> {
    let n = w.order();
    let unit = one();
    let single = &expand_rational_in(&[0, 1], &[1, -1], n, &unit)?
        + &expand_rational_in(&[0, 1], &[1, -2], n, &unit)?;
    Ok((&w.eval_catalytic() + &single).scale_i64(2))
}

// ---------------------------------------------------------------------------
// 3-sided: explicit sum

/// `C(q) = 2q(3-10q+9q^2-q^3) / ((1-q)(1-2q)^2)`.
fn c_series<C: Coeff>(n: usize, unit: &C) -> Result<Series1<C>> {
    expand_rational_in(&[0, 6, -20, 18, -2], &[1, -5, 8, -4], n, unit)
}

/// `A(q) = 2q(1-q)^2 / (1-2q)^2`.
fn a_series<C: Coeff>(n: usize, unit: &C) -> Result<Series1<C>> {
    expand_rational_in(&[0, 2, -4, 2], &[1, -4, 4], n, unit)
}

/// The explicit sum for `PA(q)` as a running product:
/// `PA = C(q) - 2q^3(1-q)^2/(1-2q)^2 * sum_{m>=1} S_m`, where
/// `S_m = R_m/(1-q-q^{m+1})`, `R_1 = -q^2/(1-2q)` and
/// `R_{m+1} = -q^2 (1-q-q^m+q^{m+1}-q^{m+2}) S_m / (1-2q)`.
/// Term m enters at `q^(2m+3)`.
pub fn pa3_theorem_in<C: Coeff>(n: usize, unit: &C) -> Result<Series1<C>> {
    need_order(n)?;
    let mut r = Series1::monomial(n, 2, unit.from_i64_like(-1)).div_qpoly(&[(0, 1), (1, -2)])?;
    let mut total = Series1::zero(n, unit);
    let mut m = 1;
    while 2 * m + 3 <= n {
        let s = r.div_qpoly(&[(0, 1), (1, -1), (m + 1, -1)])?;
        if s.valuation() < 2 * m {
            return Err(Error::Domain(format!("term {m} starts below q^{}", 2 * m)));
        }
        total = &total + &s;
        r = s
            .mul_qpoly(&[(0, 1), (1, -1), (m, -1), (m + 1, 1), (m + 2, -1)])
            .mul_qpoly(&[(2, -1)])
            .div_qpoly(&[(0, 1), (1, -2)])?;
        m += 1;
    }
    let pre = total.mul_qpoly(&[(3, -2), (4, 4), (5, -2)]).div_qpoly(&[(0, 1), (1, -4), (2, 4)])?;
    Ok(&c_series(n, unit)? + &pre)
}

/// Meromorphic form
/// `PA = C - A (v;q)_inf/(qu;q)_inf [q^2/(1-q)^2 + sum_nu d_nu q^{nu+2}/(1-2q+q^{nu+2})]`
/// with `u = q/(1-q)`, `v = (1-q+q^2)/(1-q)` and
/// `d_nu = d_{nu-1} (v - u q^nu)/(1 - q^nu)`, all expanded as q-series.
pub fn pa3_meromorphic_in<C: Coeff>(n: usize, unit: &C) -> Result<Series1<C>> {
    need_order(n)?;
    let one_q = [(0, 1), (1, -1)];
    // (v;q)_inf: first factor 1-v = -q^2/(1-q); then 1 - q^k v = (1-q^k) - q^{k+2}/(1-q)
    let mut p = Series1::monomial(n, 2, unit.from_i64_like(-1)).div_qpoly(&one_q)?;
    for k in 1..=n {
        let c = p.div_qpoly(&one_q)?;
        p = &(&p + &p.mul_qpoly(&[(k, -1)])) + &c.mul_qpoly(&[(k + 2, -1)]);
    }
    // (qu;q)_inf: 1 - q^{k+1} u = (1-q-q^{k+2})/(1-q)
    for k in 0..n.saturating_sub(1) {
        p = p.mul_qpoly(&one_q).div_qpoly(&[(0, 1), (1, -1), (k + 2, -1)])?;
    }
    let mut bracket = expand_rational_in(&[0, 0, 1], &[1, -2, 1], n, unit)?;
    // e holds d_nu without its q^nu factor, truncated to what can still reach
    // q^n once shifted by nu+2
    let mut e = Series1::one(n, unit);
    let mut nu = 1;
    while nu + 2 <= n {
        let order = n - nu - 2;
        e = e
            .truncate(order)
            .mul_qpoly(&[(0, 1), (1, -1), (2, 1), (nu + 1, -1)])
            .div_qpoly(&one_q)?
            .div_qpoly(&[(0, 1), (nu, -1)])?;
        let t = e.div_qpoly(&[(0, 1), (1, -2), (nu + 2, 1)])?;
        let shift = nu + 2;
        let mut b = bracket.into_coeffs();
        for (i, c) in t.coeffs().iter().enumerate() {
            if i + shift <= n {
                b[i + shift] += c;
            }
        }
        bracket = Series1::from_coeffs(b);
        nu += 1;
    }
    let ap = &a_series(n, unit)? * &p;
    Ok(&c_series(n, unit)? - &(&ap * &bracket))
}

/// Exact 3-sided counts by the chosen route.
pub fn pa3_series(n: usize, method: Method) -> Result<CountTable> {
    need_order(n)?;
    let s = match method {
        Method::Theorem => pa3_theorem_in(n, &one())?,
        Method::Meromorphic => pa3_meromorphic_in(n, &one())?,
        Method::Functional => pa3_from_w(&w_series(n)?)?,
        other => return Err(Error::Usage(format!("method {other} does not apply to 3-sided series"))),
    };
    Ok(CountTable::from_series(3, method, &s))
}

/// Scaled counts `PA_n 2^-n` (the series in `x = 2q`) in `bits`-bit floats,
/// from the meromorphic route.
pub fn pa3_scaled_float(n: usize, bits: u32) -> Result<Series1<BigFloat>> {
    let unit = BigFloat::from_f64(1.0, bits);
    let s = pa3_meromorphic_in(n, &unit)?;
    Ok(s.map(|k, c| c.mul_pow2(-(k as i32))))
}

/// Same quantity from the explicit sum.  The partial sums cancel heavily
/// (about 0.082 decimal digits per order), so `guard_digits` extra digits are
/// carried internally.
pub fn pa3_scaled_float_theorem(n: usize, bits: u32, guard_digits: u32) -> Result<Series1<BigFloat>> {
    let work = bits + (guard_digits as f64 * std::f64::consts::LOG2_10).ceil() as u32;
    let unit = BigFloat::from_f64(1.0, work);
    let s = pa3_theorem_in(n, &unit)?;
    Ok(s.map(|k, c| c.mul_pow2(-(k as i32)).to_bits(bits)))
}

/// Guard digits sufficient for the explicit sum at order `n`.
pub fn theorem_guard_digits(n: usize) -> u32 {
    (0.09 * n as f64).ceil() as u32 + 10
}

// ---------------------------------------------------------------------------
// 4-sided

/// The three generating functions of the 4-sided decomposition.
#[derive(Clone, Debug, PartialEq)]
pub struct Xyz {
    pub x: Series3<BigInt>,
    pub y: Series3<BigInt>,
    pub z: Series3<BigInt>,
}

fn new_x(x: &Series3<BigInt>, y: &Series3<BigInt>, z: &Series3<BigInt>) -> Result<Series3<BigInt>> {
    // (qv [X - X(qu,v) + Y(v,u) - Y(v,qu)] + quv [Z - q Z(qu,v)]) / (1-q)
    let sy = y.swap_catalytics();
    let t1 = x.sub(&x.subst_scale(Cat::U, 1)).add(&sy).sub(&sy.subst_scale(Cat::U, 1));
    let mut acc = Series3::zero(x.order(), &one());
    acc.add_monomial_multiple(&t1, 1, 0, 1, 1);
    acc.add_monomial_multiple(z, 1, 1, 1, 1);
    acc.add_monomial_multiple(&z.subst_scale(Cat::U, 1), 2, 1, 1, -1);
    acc.div_qpoly(&[(0, 1), (1, -1)])
}

fn new_y(x: &Series3<BigInt>, y: &Series3<BigInt>, z: &Series3<BigInt>) -> Result<Series3<BigInt>> {
    let n = y.order();
    let sz = z.swap_catalytics();
    let mut frac = Series3::zero(n, &one());
    frac.add_monomial_multiple(&y.sub(&y.subst_scale(Cat::U, 1)), 1, 0, 1, 1);
    frac.add_monomial_multiple(&sz.sub(&sz.subst_scale(Cat::U, 1)), 1, 0, 2, 1);
    let mut acc = frac.div_qpoly(&[(0, 1), (1, -1)])?;
    if n >= 1 {
        acc.set(1, 1, 1, acc.coeff(1, 1, 1) + BigInt::one());
    }
    acc.add_monomial_multiple(&x.swap_catalytics().subst_scale(Cat::V, 1), 1, 1, 1, 1);
    acc.add_monomial_multiple(&y.subst_scale(Cat::V, 1), 1, 1, 1, 1);
    acc.add_monomial_multiple(&sz.subst_scale(Cat::V, 1), 2, 1, 2, 1);
    Ok(acc)
}

fn new_z(y: &Series3<BigInt>, z: &Series3<BigInt>) -> Result<Series3<BigInt>> {
    let n = z.order();
    let mut frac = Series3::zero(n, &one());
    frac.add_monomial_multiple(&z.sub(&z.subst_scale(Cat::U, 1)), 1, 0, 1, 1);
    let mut acc = frac.div_qpoly(&[(0, 1), (1, -1)])?;
    acc.add_monomial_multiple(&y.swap_catalytics().subst_scale(Cat::V, 1), 1, 0, 1, 1);
    acc.add_monomial_multiple(&z.subst_scale(Cat::V, 1), 1, 1, 1, 1);
    Ok(acc)
}

fn sweep(s: &Xyz) -> Result<Xyz> {
    let x = new_x(&s.x, &s.y, &s.z)?;
    let y = new_y(&x, &s.y, &s.z)?;
    let z = new_z(&y, &s.z)?;
    Ok(Xyz { x, y, z })
}

/// Joint fixed point of the X/Y/Z equations to order `n`.
///
/// Every right-hand side carries a factor `q`, so a sweep at truncation
/// order s is exact once the inputs are exact to order s-1; sweeps are run
/// with growing truncation, then one full-order sweep must change nothing.
pub fn xyz_series(n: usize) -> Result<Xyz> {
    need_order(n)?;
    let unit = one();
    let mut s = Xyz { x: Series3::zero(0, &unit), y: Series3::zero(0, &unit), z: Series3::zero(0, &unit) };
    for order in 1..=n {
        let grown = Xyz { x: s.x.truncate(order), y: s.y.truncate(order), z: s.z.truncate(order) };
        s = sweep(&grown)?;
    }
    let again = sweep(&s)?;
    if again != s {
        return Err(Error::Domain("4-sided system did not stabilise".into()));
    }
    Ok(s)
}

/// Residuals of the three equations multiplied through by `(1-q)`.
pub fn xyz_residual(s: &Xyz) -> [Series3<BigInt>; 3] {
    let (x, y, z) = (&s.x, &s.y, &s.z);
    let n = x.order();
    let unit = one();
    let one_q = [(0, 1), (1, -1)];
    let su = |a: &Series3<BigInt>| a.subst_scale(Cat::U, 1);
    let sv = |a: &Series3<BigInt>| a.subst_scale(Cat::V, 1);
    let (sx, sy, sz) = (x.swap_catalytics(), y.swap_catalytics(), z.swap_catalytics());

    let mut rx = x.mul_qpoly(&one_q);
    rx.add_monomial_multiple(&x.sub(&su(x)), 1, 0, 1, -1);
    rx.add_monomial_multiple(&sy.sub(&su(&sy)), 1, 0, 1, -1);
    rx.add_monomial_multiple(z, 1, 1, 1, -1);
    rx.add_monomial_multiple(&su(z), 2, 1, 1, 1);

    let mut ry = y.mul_qpoly(&one_q);
    let mut rest = Series3::zero(n, &unit);
    if n >= 1 {
        rest.set(1, 1, 1, BigInt::one());
    }
    rest.add_monomial_multiple(&sv(&sx), 1, 1, 1, 1);
    rest.add_monomial_multiple(&sv(y), 1, 1, 1, 1);
    rest.add_monomial_multiple(&sv(&sz), 2, 1, 2, 1);
    ry = ry.sub(&rest.mul_qpoly(&one_q));
    ry.add_monomial_multiple(&y.sub(&su(y)), 1, 0, 1, -1);
    ry.add_monomial_multiple(&sz.sub(&su(&sz)), 1, 0, 2, -1);

    let mut rz = z.mul_qpoly(&one_q);
    rz.add_monomial_multiple(&z.sub(&su(z)), 1, 0, 1, -1);
    let mut tail = Series3::zero(n, &unit);
    tail.add_monomial_multiple(&sv(&sy), 1, 0, 1, 1);
    tail.add_monomial_multiple(&sv(z), 1, 1, 1, 1);
    rz = rz.sub(&tail.mul_qpoly(&one_q));

    [rx, ry, rz]
}

/// 4-sided counts `8 (X+Y+Z)(q,1,1)`.
pub fn pa4_series(n: usize) -> Result<CountTable> {
    let s = xyz_series(n)?;
    let total = &(&s.x.eval_catalytic() + &s.y.eval_catalytic()) + &s.z.eval_catalytic();
    Ok(CountTable::from_series(4, Method::Functional, &total.scale_i64(8)))
}

/// Counts for any supported sidedness by its default exact route.
pub fn counts(k: u8, n: usize) -> Result<CountTable> {
    match k {
        2 => pa2_series(n),
        3 => pa3_series(n, Method::Theorem),
        4 => pa4_series(n),
        _ => Err(Error::Usage(format!("sidedness must be 2, 3 or 4, got {k}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(t: &CountTable) -> Vec<i64> {
        t.counts().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn bargraph_counts() {
        let b = bargraph_series(4).unwrap();
        assert_eq!(*b.coeff(4), BigInt::from(8));
        let bw = bargraph_width_series(6).unwrap();
        assert_eq!(*bw.coeff(4, 2), BigInt::from(3));
        assert_eq!(*bw.coeff(1, 1), BigInt::one());
        assert!(bw.coeff(1, 0).is_zero());
        assert_eq!(bw.eval_catalytic().truncate(4), b);
        assert!(bargraph_residual(&bw).is_zero());
    }

    #[test]
    fn two_sided() {
        let t = pa2_series(10).unwrap();
        assert_eq!(small(&t)[0], 4);
        assert_eq!(small(&t)[2], 10);
        assert_eq!(small(&t)[9], 1026);
    }

    #[test]
    fn w_low_order() {
        let w = w_series(12).unwrap();
        assert_eq!(*w.coeff(1, 1), BigInt::one());
        for n in 0..=12 {
            assert!(w.coeff(n, 0).is_zero());
        }
        assert!(w_residual(&w).is_zero());
    }

    #[test]
    fn three_sided_routes() {
        let want = [6, 10, 20, 42, 92, 204, 454, 1010, 2242, 4962];
        for m in [Method::Theorem, Method::Functional, Method::Meromorphic] {
            assert_eq!(small(&pa3_series(10, m).unwrap()), want, "{m}");
        }
    }

    #[test]
    fn four_sided_low_order() {
        let t = pa4_series(8).unwrap();
        assert_eq!(small(&t), vec![8, 16, 40, 96, 232, 560, 1336, 3176]);
        let s = xyz_series(7).unwrap();
        for r in xyz_residual(&s) {
            assert!(r.is_zero());
        }
    }

    #[test]
    fn float_routes_track_exact() {
        let n = 120;
        let exact = pa3_series(n, Method::Theorem).unwrap();
        let f = pa3_scaled_float(n, 160).unwrap();
        let g = pa3_scaled_float_theorem(n, 160, theorem_guard_digits(n)).unwrap();
        for k in 1..=n {
            let e = BigFloat::from_bigint(exact.get(k), 400).mul_pow2(-(k as i32));
            let rel = ((f.coeff(k).clone() - &e) / &e).abs().to_f64();
            let rel2 = ((g.coeff(k).clone() - &e) / &e).abs().to_f64();
            assert!(rel < 1e-40 && rel2 < 1e-40, "n={k}: {rel} {rel2}");
        }
    }
}
