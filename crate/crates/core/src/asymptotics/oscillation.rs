use num_complex::Complex;
use num_traits::Zero;

use super::AsymptoticModel;
use crate::enumerate::{pa3_scaled_float, pa3_series, CountTable, Method};
use crate::error::{Error, Result};
use crate::scalar::{cexp, cx, BigFloat, Precision, Real};

/// Orders above this use the float pipeline for scaled counts.
pub const FLOAT_CROSSOVER: usize = 1500;

/// Where a table of scaled counts came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountSource {
    Exact,
    Float,
}

impl CountSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            CountSource::Exact => "exact",
            CountSource::Float => "float",
        }
    }
}

/// PA_n 2^-n for n = 0..=N from exact integers.
pub fn scaled_counts_exact(n: usize, prec: &Precision) -> Result<Vec<BigFloat>> {
    let bits = prec.bits();
    let t = pa3_series(n, Method::Theorem)?;
    let mut out = vec![BigFloat::from_f64(0.0, bits)];
    for (k, c) in t.iter() {
        out.push(BigFloat::from_bigint(c, bits).mul_pow2(-(k as i32)));
    }
    Ok(out)
}

/// PA_n 2^-n for n = 0..=N from the float series in x = 2q.
pub fn scaled_counts_float(n: usize, prec: &Precision) -> Result<Vec<BigFloat>> {
    Ok(pa3_scaled_float(n, prec.bits())?.into_coeffs())
}

/// Scaled counts by the route appropriate to `n`.
pub fn scaled_counts(n: usize, prec: &Precision) -> Result<(Vec<BigFloat>, CountSource)> {
    if n <= FLOAT_CROSSOVER {
        Ok((scaled_counts_exact(n, prec)?, CountSource::Exact))
    } else {
        Ok((scaled_counts_float(n, prec)?, CountSource::Float))
    }
}

#[derive(Clone, Debug)]
pub struct ResidualRow<R> {
    pub n: usize,
    pub log2n: R,
    /// PA_n 2^-n n^-g
    pub scaled: R,
    /// (PA_n - Omega_T(n)) 2^-n n^-g
    pub residual: R,
}

#[derive(Clone, Debug)]
pub struct ResidualTable<R> {
    pub terms: usize,
    pub digits: u32,
    pub rows: Vec<ResidualRow<R>>,
}

/// Residual rows for 2 <= n < scaled.len(); `scaled[n] = PA_n 2^-n`.
pub fn residuals<R: Real>(scaled: &[R], terms: usize, prec: &Precision) -> Result<ResidualTable<R>> {
    let model = AsymptoticModel::<R>::new(terms, 0, prec)?;
    let bits = prec.bits();
    let ln2 = R::ln2(bits);
    let mut rows = Vec::new();
    for (n, s) in scaled.iter().enumerate().skip(2) {
        let nn = R::from_f64(n as f64, bits);
        let ng = nn.powf(&model.g);
        let om = model.omega_scaled(n);
        rows.push(ResidualRow {
            n,
            log2n: nn.ln() / &ln2,
            scaled: s.clone() / &ng,
            residual: (s.clone() - &om) / &ng,
        });
    }
    Ok(ResidualTable { terms, digits: prec.digits, rows })
}

fn window<R: Real>(table: &ResidualTable<R>, u0: f64, u1: f64) -> Result<()> {
    let (first, last) = match (table.rows.first(), table.rows.last()) {
        (Some(f), Some(l)) => (f.log2n.to_f64(), l.log2n.to_f64()),
        _ => return Err(Error::Domain("empty residual table".into())),
    };
    if !(u0 >= first && u1 <= last + 1e-12) || !(u1 > u0) {
        return Err(Error::Domain(format!(
            "window [{u0}, {u1}] not covered by the table (log2 n in [{first}, {last}])"
        )));
    }
    Ok(())
}

fn lerp<R: Real>(a: &ResidualRow<R>, b: &ResidualRow<R>, u: &R) -> R {
    let f = (u.clone() - &a.log2n) / &(b.log2n.clone() - &a.log2n);
    a.residual.clone() + &(f * &(b.residual.clone() - &a.residual))
}

/// Samples (u, r(u)) on [u0, u1]: the table rows inside, plus linearly
/// interpolated end points.
fn samples<R: Real>(table: &ResidualTable<R>, u0: f64, u1: f64) -> Vec<(R, R)> {
    let bits = table.rows[0].log2n.bits();
    let (a, b) = (R::from_f64(u0, bits), R::from_f64(u1, bits));
    let mut out = Vec::new();
    for w in table.rows.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        if p.log2n < a && q.log2n > a {
            out.push((a.clone(), lerp(p, q, &a)));
        }
        if p.log2n >= a && p.log2n <= b {
            out.push((p.log2n.clone(), p.residual.clone()));
        }
        if p.log2n < b && q.log2n > b {
            out.push((b.clone(), lerp(p, q, &b)));
        }
    }
    if let Some(l) = table.rows.last() {
        if l.log2n >= a && l.log2n <= b {
            out.push((l.log2n.clone(), l.residual.clone()));
        }
    }
    out
}

/// Fourier coefficient of the residual over u = log2 n in [u0, u1], by the
/// trapezoidal rule on the (non-uniform) samples.
pub fn fourier_extract<R: Real>(table: &ResidualTable<R>, k: i64, u0: f64, u1: f64) -> Result<Complex<R>> {
    let span = u1 - u0;
    if (span - span.round()).abs() > 1e-9 || span.round() < 1.0 {
        return Err(Error::Domain(format!("window length must be a whole number of periods, got {span}")));
    }
    window(table, u0, u1)?;
    let pts = samples(table, u0, u1);
    let bits = pts[0].0.bits();
    let two_pi_k = R::pi(bits).mul_i64(-2 * k);
    let f = |(u, r): &(R, R)| -> Complex<R> {
        let e = cexp(&cx(u.zero_like(), two_pi_k.clone() * u));
        Complex::new(e.re * r, e.im * r)
    };
    let half = R::from_ratio(1, 2, bits);
    let mut acc = Complex::<R>::zero();
    for w in pts.windows(2) {
        let h = (w[1].0.clone() - &w[0].0) * &half;
        let s = f(&w[0]) + f(&w[1]);
        acc += Complex::new(s.re * &h, s.im * &h);
    }
    let len = R::from_f64(span.round(), bits);
    Ok(Complex::new(acc.re / &len, acc.im / &len))
}

/// Local extrema (n, residual) of the residual inside the window.
pub fn extrema<R: Real>(table: &ResidualTable<R>, u0: f64, u1: f64) -> Vec<(usize, R)> {
    let rows: Vec<&ResidualRow<R>> =
        table.rows.iter().filter(|r| r.log2n.to_f64() >= u0 && r.log2n.to_f64() <= u1).collect();
    let mut out = Vec::new();
    for w in rows.windows(3) {
        let d1 = w[1].residual.clone() - &w[0].residual;
        let d2 = w[2].residual.clone() - &w[1].residual;
        let z = d1.zero_like();
        if (d1 > z && d2 < z) || (d1 < z && d2 > z) {
            out.push((w[1].n, w[1].residual.clone()));
        }
    }
    out
}

/// Least-squares slope of log2(PA_n 2^-n) against log2 n over the top half of
/// the table.
pub fn exponent_fit(counts: &CountTable, prec: &Precision) -> Result<f64> {
    let n = counts.max_area();
    let lo = (n / 2).max(1);
    if n - lo + 1 < 4 {
        return Err(Error::Domain(format!("exponent fit needs at least 8 counts, got {n}")));
    }
    let bits = prec.bits();
    let ln2 = BigFloat::ln2(bits);
    let (mut sx, mut sy, mut sxx, mut sxy, mut m) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for k in lo..=n {
        let c = counts.get(k);
        let y = BigFloat::from_bigint(c, bits).mul_pow2(-(k as i32)).ln() / &ln2;
        let (x, y) = ((k as f64).log2(), y.to_f64());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        m += 1.0;
    }
    Ok((m * sxy - sx * sy) / (m * sxx - sx * sx))
}
