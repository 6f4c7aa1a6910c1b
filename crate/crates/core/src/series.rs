//! Truncated power series in the area variable `q`, with zero, one or two
//! catalytic variables.  Storage is dense; catalytic degrees are capped by the
//! `q`-degree (a polygon of area n has width and height at most n).

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Sparse polynomial in `q` with small integer coefficients, as
/// `(degree, coefficient)` pairs.
pub type QPoly = [(usize, i64)];

/// Sparse polynomial in `q, u`, as `(q-degree, u-degree, coefficient)`.
pub type QUPoly = [(usize, usize, i64)];

fn unit_constant(p: &QPoly) -> Result<i64> {
    let c0: i64 = p.iter().filter(|t| t.0 == 0).map(|t| t.1).sum();
    if c0 != 1 && c0 != -1 {
        return Err(Error::Usage(format!(
            "divisor must have constant term ±1, got {c0}"
        )));
    }
    Ok(c0)
}

// ---------------------------------------------------------------------------
// Series1

/// Univariate truncated series `sum c[n] q^n`, `n = 0..=order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series1<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> Series1<C> {
    /// Zero series; `unit` fixes the coefficient precision for float rings.
    pub fn zero(order: usize, unit: &C) -> Self {
        Series1 { coeffs: vec![unit.zero_like(); order + 1] }
    }

    pub fn one(order: usize, unit: &C) -> Self {
        Self::monomial(order, 0, unit.clone())
    }

    /// `c q^k` (the zero series if `k > order`).
    pub fn monomial(order: usize, k: usize, c: C) -> Self {
        let mut s = Self::zero(order, &c);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least one coefficient");
        Series1 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    /// Index of the first nonzero coefficient, `order + 1` for the zero series.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() > self.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(order + 1);
        while c.len() < order + 1 {
            c.push(self.coeffs[0].zero_like());
        }
        Series1 { coeffs: c }
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(usize, &C) -> D) -> Series1<D> {
        Series1 { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| f(n, c)).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.coeffs.len();
        let mut r = Self::zero(self.order(), &self.coeffs[0]);
        for i in 0..n.saturating_sub(k) {
            r.coeffs[i + k] = self.coeffs[i].clone();
        }
        r
    }

    pub fn scale(&self, k: &C) -> Self {
        Series1 { coeffs: self.coeffs.iter().map(|c| c.clone() * k).collect() }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        Series1 { coeffs: self.coeffs.iter().map(|c| c.mul_i64(k)).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (a, b) in r.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (a, b) in r.coeffs.iter_mut().zip(&o.coeffs) {
            *a -= b;
        }
        r
    }

    /// Product truncated at the smaller order.  Index ranges below either
    /// valuation are skipped.
    pub fn mul(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = Self::zero(m, &self.coeffs[0]);
        let (va, vb) = (self.valuation(), o.valuation());
        if va + vb > m {
            return r;
        }
        for i in va..=m - vb {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vb..=m - i {
                r.coeffs[i + j].add_mul(a, &o.coeffs[j]);
            }
        }
        r
    }

    /// Product with a sparse integer polynomial in `q`.
    pub fn mul_qpoly(&self, p: &QPoly) -> Self {
        let n = self.coeffs.len();
        let v = self.valuation();
        let mut r = Self::zero(self.order(), &self.coeffs[0]);
        for &(d, k) in p {
            for i in v..n.saturating_sub(d) {
                r.coeffs[i + d].add_mul_i64(&self.coeffs[i], k);
            }
        }
        r
    }

    /// Quotient by a sparse integer polynomial with constant term ±1; exact
    /// in integer arithmetic.
    pub fn div_qpoly(&self, p: &QPoly) -> Result<Self> {
        let c0 = unit_constant(p)?;
        let rest: Vec<(usize, i64)> = p.iter().copied().filter(|t| t.0 > 0 && t.1 != 0).collect();
        let mut r = self.clone();
        let v = self.valuation();
        for n in v..r.coeffs.len() {
            let mut acc = std::mem::replace(&mut r.coeffs[n], self.coeffs[0].zero_like());
            for &(d, k) in &rest {
                if n >= d + v {
                    acc.add_mul_i64(&r.coeffs[n - d], -k);
                }
            }
            if c0 == -1 {
                acc = -acc;
            }
            r.coeffs[n] = acc;
        }
        Ok(r)
    }

    /// Quotient by a series whose constant term is exactly one.
    pub fn div_unit(&self, d: &Self) -> Result<Self> {
        if !d.coeffs[0].is_one() {
            return Err(Error::Usage("divisor series must have constant term 1".into()));
        }
        let m = self.order().min(d.order());
        let mut r = self.truncate(m);
        let dv: Vec<usize> = (1..=m).filter(|&k| !d.coeffs[k].is_zero()).collect();
        for n in 0..=m {
            let mut acc = std::mem::replace(&mut r.coeffs[n], self.coeffs[0].zero_like());
            for &k in &dv {
                if k > n {
                    break;
                }
                let t = r.coeffs[n - k].clone() * &d.coeffs[k];
                acc -= &t;
            }
            r.coeffs[n] = acc;
        }
        Ok(r)
    }
}

impl<C: Coeff> Add for &Series1<C> {
    type Output = Series1<C>;
    fn add(self, o: Self) -> Series1<C> {
        Series1::add(self, o)
    }
}

impl<C: Coeff> Sub for &Series1<C> {
    type Output = Series1<C>;
    fn sub(self, o: Self) -> Series1<C> {
        Series1::sub(self, o)
    }
}

impl<C: Coeff> Mul for &Series1<C> {
    type Output = Series1<C>;
    fn mul(self, o: Self) -> Series1<C> {
        Series1::mul(self, o)
    }
}

impl<C: Coeff> Neg for &Series1<C> {
    type Output = Series1<C>;
    fn neg(self) -> Series1<C> {
        self.scale_i64(-1)
    }
}

/// Expansion of `numerator / denominator` (dense integer coefficient lists,
/// lowest degree first) to order `n`, over the ring of `unit`.
pub fn expand_rational_in<C: Coeff>(
    numerator: &[i64],
    denominator: &[i64],
    n: usize,
    unit: &C,
) -> Result<Series1<C>> {
    let den: Vec<(usize, i64)> = denominator.iter().copied().enumerate().filter(|t| t.1 != 0).collect();
    match denominator.first() {
        Some(1) | Some(-1) => {}
        _ => {
            return Err(Error::Usage(
                "denominator must have constant term ±1 for integer coefficients".into(),
            ))
        }
    }
    let mut s = Series1::zero(n, unit);
    for (d, &k) in numerator.iter().enumerate() {
        if d <= n {
            s.coeffs[d] = unit.from_i64_like(k);
        }
    }
    s.div_qpoly(&den)
}

/// Integer expansion of a rational function with unit-constant denominator.
pub fn expand_rational(numerator: &[i64], denominator: &[i64], n: usize) -> Result<Series1<BigInt>> {
    expand_rational_in(numerator, denominator, n, &BigInt::one())
}

// ---------------------------------------------------------------------------
// Series2

/// Bivariate series `sum c[n][i] q^n u^i` with `0 <= i <= n <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series2<C> {
    rows: Vec<Vec<C>>,
}

fn check_cap2(p: &QUPoly) {
    for &(dq, du, _) in p {
        assert!(du <= dq || (dq == 0 && du == 0), "term q^{dq}u^{du} breaks the degree cap");
    }
}

impl<C: Coeff> Series2<C> {
    pub fn zero(order: usize, unit: &C) -> Self {
        Series2 { rows: (0..=order).map(|n| vec![unit.zero_like(); n + 1]).collect() }
    }

    /// Expansion of a sparse polynomial (each term must respect the cap).
    pub fn from_poly(order: usize, p: &QUPoly, unit: &C) -> Self {
        check_cap2(p);
        let mut s = Self::zero(order, unit);
        for &(dq, du, k) in p {
            if dq <= order {
                s.rows[dq][du].add_mul_i64(&unit.from_i64_like(1), k);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn coeff(&self, n: usize, i: usize) -> &C {
        &self.rows[n][i]
    }

    pub fn row(&self, n: usize) -> &[C] {
        &self.rows[n]
    }

    fn unit_zero(&self) -> C {
        self.rows[0][0].zero_like()
    }

    /// `q`-valuation.
    pub fn valuation(&self) -> usize {
        self.rows.iter().position(|r| r.iter().any(|c| !c.is_zero())).unwrap_or(self.rows.len())
    }

    /// Smallest `u`-degree present (`order + 1` for zero).
    pub fn u_valuation(&self) -> usize {
        self.rows
            .iter()
            .filter_map(|r| r.iter().position(|c| !c.is_zero()))
            .min()
            .unwrap_or(self.rows.len())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() > self.order()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let z = self.unit_zero();
        Series2 {
            rows: (0..=order)
                .map(|n| self.rows.get(n).cloned().unwrap_or_else(|| vec![z.clone(); n + 1]))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (ra, rb) in r.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (ra, rb) in r.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a -= b;
            }
        }
        r
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        Series2 { rows: self.rows.iter().map(|r| r.iter().map(|c| c.mul_i64(k)).collect()).collect() }
    }

    /// Full bivariate product.
    pub fn mul(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = Self::zero(m, &self.rows[0][0]);
        let (va, vb) = (self.valuation(), o.valuation());
        if va + vb > m {
            return r;
        }
        for n1 in va..=m - vb {
            for (i1, a) in self.rows[n1].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for n2 in vb..=m - n1 {
                    for (i2, b) in o.rows[n2].iter().enumerate() {
                        r.rows[n1 + n2][i1 + i2].add_mul(a, b);
                    }
                }
            }
        }
        r
    }

    /// Product with a `u`-free series.
    pub fn mul_series1(&self, s: &Series1<C>) -> Self {
        let m = self.order().min(s.order());
        let mut r = Self::zero(m, &self.rows[0][0]);
        let vs = s.valuation();
        for n1 in self.valuation()..=m {
            for (i, a) in self.rows[n1].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for n2 in vs..=m - n1 {
                    r.rows[n1 + n2][i].add_mul(a, s.coeff(n2));
                }
            }
        }
        r
    }

    pub fn mul_poly(&self, p: &QUPoly) -> Self {
        check_cap2(p);
        let m = self.order();
        let mut r = Self::zero(m, &self.rows[0][0]);
        for n in self.valuation()..=m {
            for (i, a) in self.rows[n].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for &(dq, du, k) in p {
                    if n + dq <= m {
                        r.rows[n + dq][i + du].add_mul_i64(a, k);
                    }
                }
            }
        }
        r
    }

    /// Quotient by a sparse polynomial with constant term ±1.
    pub fn div_poly(&self, p: &QUPoly) -> Result<Self> {
        check_cap2(p);
        let qp: Vec<(usize, i64)> = p.iter().filter(|t| t.1 == 0).map(|t| (t.0, t.2)).collect();
        let c0 = unit_constant(&qp)?;
        let rest: Vec<(usize, usize, i64)> =
            p.iter().copied().filter(|t| t.0 > 0 && t.2 != 0).collect();
        let mut r = self.clone();
        let v = self.valuation();
        for n in v..r.rows.len() {
            for i in 0..=n {
                let mut acc = std::mem::replace(&mut r.rows[n][i], self.unit_zero());
                for &(dq, du, k) in &rest {
                    if n >= dq + v && i >= du && i - du <= n - dq {
                        acc.add_mul_i64(&r.rows[n - dq][i - du], -k);
                    }
                }
                if c0 == -1 {
                    acc = -acc;
                }
                r.rows[n][i] = acc;
            }
        }
        Ok(r)
    }

    /// `u -> q^t u`: moves `c[n][i]` to `c[n + t i][i]`.
    pub fn subst_scale(&self, t: usize) -> Self {
        assert!(t >= 1, "substitution exponent must be positive");
        let m = self.order();
        let mut r = Self::zero(m, &self.rows[0][0]);
        for n in 0..=m {
            for (i, c) in self.rows[n].iter().enumerate() {
                let target = n + t * i;
                if target <= m && !c.is_zero() {
                    r.rows[target][i] = c.clone();
                }
            }
        }
        r
    }

    /// Value at `u = 1`.
    pub fn eval_catalytic(&self) -> Series1<C> {
        let z = self.unit_zero();
        Series1::from_coeffs(
            self.rows
                .iter()
                .map(|r| {
                    let mut s = z.clone();
                    for c in r {
                        s += c;
                    }
                    s
                })
                .collect(),
        )
    }
}

// ---------------------------------------------------------------------------
// Series3

/// Catalytic variable of a trivariate series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cat {
    U,
    V,
}

/// Trivariate series `sum c[n][i][j] q^n u^i v^j`, `0 <= i, j <= n <= order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series3<C> {
    rows: Vec<Vec<C>>, // row n is (n+1)^2 entries, index i*(n+1)+j
}

impl<C: Coeff> Series3<C> {
    pub fn zero(order: usize, unit: &C) -> Self {
        Series3 { rows: (0..=order).map(|n| vec![unit.zero_like(); (n + 1) * (n + 1)]).collect() }
    }

    pub fn order(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn coeff(&self, n: usize, i: usize, j: usize) -> &C {
        &self.rows[n][i * (n + 1) + j]
    }

    pub fn set(&mut self, n: usize, i: usize, j: usize, c: C) {
        assert!(i <= n && j <= n, "catalytic degree above area degree");
        self.rows[n][i * (n + 1) + j] = c;
    }

    fn unit_zero(&self) -> C {
        self.rows[0][0].zero_like()
    }

    pub fn valuation(&self) -> usize {
        self.rows.iter().position(|r| r.iter().any(|c| !c.is_zero())).unwrap_or(self.rows.len())
    }

    pub fn is_zero(&self) -> bool {
        self.valuation() > self.order()
    }

    /// Change the truncation order (padding with zeros when growing).
    pub fn truncate(&self, order: usize) -> Self {
        let z = self.unit_zero();
        Series3 {
            rows: (0..=order)
                .map(|n| self.rows.get(n).cloned().unwrap_or_else(|| vec![z.clone(); (n + 1) * (n + 1)]))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (ra, rb) in r.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        let m = self.order().min(o.order());
        let mut r = self.truncate(m);
        for (ra, rb) in r.rows.iter_mut().zip(&o.rows) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a -= b;
            }
        }
        r
    }

    /// In-place `self += other * k q^dq u^du v^dv`.  Terms pushed past the
    /// truncation order are dropped; a nonzero term landing outside the
    /// degree cap is a logic error and panics.
    pub fn add_monomial_multiple(&mut self, o: &Self, dq: usize, du: usize, dv: usize, k: i64) {
        let m = self.order();
        for n in o.valuation()..=o.order() {
            if n + dq > m {
                break;
            }
            let w = n + 1;
            let tn = n + dq;
            let tw = tn + 1;
            for (idx, c) in o.rows[n].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (idx / w + du, idx % w + dv);
                assert!(i <= tn && j <= tn, "monomial q^{dq}u^{du}v^{dv} breaks the degree cap");
                self.rows[tn][i * tw + j].add_mul_i64(c, k);
            }
        }
    }

    pub fn mul_qpoly(&self, p: &QPoly) -> Self {
        let mut r = Self::zero(self.order(), &self.rows[0][0]);
        for &(d, k) in p {
            r.add_monomial_multiple(self, d, 0, 0, k);
        }
        r
    }

    /// Quotient by a `q`-polynomial with constant term ±1.
    pub fn div_qpoly(&self, p: &QPoly) -> Result<Self> {
        let c0 = unit_constant(p)?;
        let rest: Vec<(usize, i64)> = p.iter().copied().filter(|t| t.0 > 0 && t.1 != 0).collect();
        let mut r = self.clone();
        for n in self.valuation()..r.rows.len() {
            let w = n + 1;
            for &(d, k) in &rest {
                if d > n {
                    continue;
                }
                let (lo, hi) = r.rows.split_at_mut(n);
                let src = &lo[n - d];
                let sw = n - d + 1;
                for (idx, c) in src.iter().enumerate() {
                    if !c.is_zero() {
                        let (i, j) = (idx / sw, idx % sw);
                        hi[0][i * w + j].add_mul_i64(c, -k);
                    }
                }
            }
            if c0 == -1 {
                for c in r.rows[n].iter_mut() {
                    *c = -std::mem::replace(c, self.rows[0][0].zero_like());
                }
            }
        }
        Ok(r)
    }

    /// `u -> q^t u` or `v -> q^t v`.
    pub fn subst_scale(&self, which: Cat, t: usize) -> Self {
        assert!(t >= 1, "substitution exponent must be positive");
        let m = self.order();
        let mut r = Self::zero(m, &self.rows[0][0]);
        for n in 0..=m {
            let w = n + 1;
            for (idx, c) in self.rows[n].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, j) = (idx / w, idx % w);
                let target = n + t * if which == Cat::U { i } else { j };
                if target <= m {
                    r.rows[target][i * (target + 1) + j] = c.clone();
                }
            }
        }
        r
    }

    /// Exchange the two catalytic variables.
    pub fn swap_catalytics(&self) -> Self {
        let mut r = self.clone();
        for (n, row) in self.rows.iter().enumerate() {
            let w = n + 1;
            for i in 0..w {
                for j in 0..w {
                    r.rows[n][j * w + i] = row[i * w + j].clone();
                }
            }
        }
        r
    }

    /// Value at `u = v = 1`.
    pub fn eval_catalytic(&self) -> Series1<C> {
        let z = self.unit_zero();
        Series1::from_coeffs(
            self.rows
                .iter()
                .map(|r| {
                    let mut s = z.clone();
                    for c in r {
                        s += c;
                    }
                    s
                })
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn ints(s: &Series1<BigInt>) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    fn poly(c: &[i64], n: usize) -> Series1<BigInt> {
        let mut v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        v.resize(n + 1, BigInt::zero());
        Series1::from_coeffs(v)
    }

    #[test]
    fn difference_of_squares() {
        let a = poly(&[1, 1], 2);
        let b = poly(&[1, -1], 2);
        assert_eq!(ints(&(&a * &b)), vec![1, 0, -1]);
        let z = Series1::zero(2, &BigInt::one());
        assert!((&a * &z).is_zero());
    }

    #[test]
    fn squared_geometric() {
        let s = expand_rational(&[0, 1], &[1, -2], 5).unwrap();
        assert_eq!(ints(&(&s * &s)), vec![0, 0, 1, 4, 12, 32]);
    }

    #[test]
    fn rational_expansions() {
        assert_eq!(ints(&expand_rational(&[0, 1], &[1, -2], 4).unwrap()), vec![0, 1, 2, 4, 8]);
        assert_eq!(ints(&expand_rational(&[1], &[1], 3).unwrap()), vec![1, 0, 0, 0]);
        assert_eq!(
            ints(&expand_rational(&[1, -2, 1], &[1, -4, 4], 4).unwrap()),
            vec![1, 2, 5, 12, 28]
        );
        // negative unit constant
        assert_eq!(ints(&expand_rational(&[1], &[-1, 1], 3).unwrap()), vec![-1, -1, -1, -1]);
        assert!(matches!(expand_rational(&[1], &[2, 1], 3), Err(Error::Usage(_))));
    }

    #[test]
    fn truncation_to_smaller_order() {
        let a = poly(&[1, 2, 3], 5);
        let b = poly(&[1, 1], 3);
        assert_eq!((&a + &b).order(), 3);
        assert_eq!((&a * &b).order(), 3);
    }

    #[test]
    fn bivariate_substitution() {
        let one = BigInt::one();
        // q u -> q^2 u
        let s = Series2::from_poly(4, &[(1, 1, 1)], &one).subst_scale(1);
        assert_eq!(*s.coeff(2, 1), one);
        assert!(s.coeff(1, 1).is_zero());
        // B(q,u) = qu/(1-q-qu); B(q,qu) = q^2u/(1-q-q^2u)
        let b = Series2::from_poly(8, &[(1, 1, 1)], &one).div_poly(&[(0, 0, 1), (1, 0, -1), (1, 1, -1)]).unwrap();
        let lhs = b.subst_scale(1);
        let rhs = Series2::from_poly(8, &[(2, 1, 1)], &one).div_poly(&[(0, 0, 1), (1, 0, -1), (2, 1, -1)]).unwrap();
        assert_eq!(lhs, rhs);
        // overflow of valuation
        let mut z = b.clone();
        for _ in 0..9 {
            z = z.subst_scale(1);
        }
        assert!(z.is_zero());
    }

    #[test]
    fn trivariate_swap() {
        let one = BigInt::one();
        let mut s = Series3::zero(4, &one);
        s.set(2, 1, 2, BigInt::from(7));
        let t = s.swap_catalytics();
        assert_eq!(*t.coeff(2, 2, 1), BigInt::from(7));
        assert!(t.coeff(2, 1, 2).is_zero());
        assert_eq!(t.swap_catalytics(), s);
    }
}
