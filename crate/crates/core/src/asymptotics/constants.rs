use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{abs, cone, crat, pochhammer};
use crate::error::{Error, Result};
use crate::scalar::{cabs, cexp, cln, cre, csin, cx, Precision, Real};

type C<R> = Complex<R>;

/// B_0, B_1, ..., B_n as exact rationals.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // sum_{k<=m} binom(m+1, k) B_k = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += BigRational::from_integer(binom.clone()) * bk;
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn rat_to<R: Real>(r: &BigRational, bits: u32) -> R {
    R::from_bigint(r.numer(), bits) / &R::from_bigint(r.denom(), bits)
}

/// Gamma(z) for Re z > 0: shift upward until Re z is large, then Stirling's
/// series for log Gamma with the remainder bound
/// `|B_{2K+2}| / ((2K+2)(2K+1)|w|^(2K+1)) sec^(2K+2)(arg w / 2)`.
pub fn cgamma<R: Real>(z: &C<R>, prec: &Precision) -> Result<C<R>> {
    prec.check()?;
    let re = z.re.to_f64();
    if !(re > 0.0) {
        return Err(Error::Domain(format!("Gamma is implemented for Re z > 0, got {re}")));
    }
    let bits = prec.bits();
    let tol = prec.tol();
    let threshold = 0.4 * (prec.digits as f64 + 5.0) + 10.0;
    let shift = (threshold - re).max(0.0).ceil() as i64;
    let one = cone::<R>(bits);
    let mut prod = one.clone();
    for i in 0..shift {
        prod = &prod * &(z + &crat::<R>(i, 1, bits));
    }
    let w = z + &crat::<R>(shift, 1, bits);
    let aw = abs(&w);
    let sec = 1.0 / (w.im.to_f64().atan2(w.re.to_f64()) / 2.0).cos();
    let half = crat::<R>(1, 2, bits);
    let lnw = cln(&w);
    let two_pi = R::pi(bits).mul_i64(2);
    let mut lng = &(&(&(&w - &half) * &lnw) - &w) + &cre(two_pi.ln() * &R::from_ratio(1, 2, bits));
    let kmax = (prec.digits as usize + 10) * 2 * prec.tail_scale as usize + 20;
    let bern = bernoulli_numbers(2 * kmax + 2);
    let w2 = &w * &w;
    let mut wpow = w.clone();
    let mut target = None;
    for k in 1..=kmax {
        let b2k = rat_to::<R>(&bern[2 * k], bits);
        let denom = (2 * k * (2 * k - 1)) as i64;
        lng = &lng + &(&cre(b2k / &R::from_ratio(denom, 1, bits)) / &wpow);
        wpow = &wpow * &w2;
        let next = bern[2 * k + 2].abs();
        let nb = next.numer().to_string().len() as f64 - next.denom().to_string().len() as f64;
        let log_bound = (nb + 1.0) * std::f64::consts::LN_10
            - (((2 * k + 2) * (2 * k + 1)) as f64).ln()
            - (2 * k + 1) as f64 * aw.ln()
            + (2 * k + 2) as f64 * sec.ln();
        if let Some(t) = target {
            if k >= t {
                return Ok(&cexp(&lng) / &prod);
            }
        } else if log_bound < tol.ln() {
            let t = k * prec.tail_scale as usize;
            if k >= t {
                return Ok(&cexp(&lng) / &prod);
            }
            target = Some(t);
        }
    }
    Err(Error::Domain("Stirling series did not reach tolerance".into()))
}

/// P = (1/3;1/2)(3/2;1/2)/(1/2;1/2)^2, the infinite product in kappa_k.
pub fn kappa_product<R: Real>(prec: &Precision) -> Result<R> {
    let bits = prec.bits();
    let h = crat::<R>(1, 2, bits);
    let p = &pochhammer(&crat::<R>(1, 3, bits), &h, None, prec)? * &pochhammer(&crat::<R>(3, 2, bits), &h, None, prec)?;
    let d = pochhammer(&h, &h, None, prec)?;
    Ok((p / (&d * &d)).re)
}

/// log_2 3, the critical exponent.
pub fn critical_exponent<R: Real>(prec: &Precision) -> R {
    let bits = prec.bits();
    R::from_f64(3.0, bits).ln() / &R::ln2(bits)
}

/// kappa_k = pi P / (9 log 2 sin(pi g + 2ik pi^2/log 2) Gamma(g + 1 + 2ik pi/log 2)).
pub fn kappa<R: Real>(k: i64, prec: &Precision) -> Result<C<R>> {
    let bits = prec.bits();
    let pi = R::pi(bits);
    let ln2 = R::ln2(bits);
    let g = critical_exponent::<R>(prec);
    let p = kappa_product::<R>(prec)?;
    let chi = pi.mul_i64(2 * k) / &ln2;
    let s = csin(&cx(pi.clone() * &g, chi.clone() * &pi));
    let gm = cgamma(&cx(g + &R::from_f64(1.0, bits), chi), prec)?;
    let num = cre(pi * &p);
    Ok(&num / &(&(&s * &gm) * &cre(ln2.mul_i64(9))))
}

/// The two readings of the oscillation amplitude: 2|kappa_1|, and the maximum
/// of |kappa(u)| over a period with all harmonics above tolerance.
#[derive(Clone, Debug)]
pub struct Amplitude<R> {
    pub two_abs_kappa1: R,
    pub max_abs: R,
    pub harmonics: usize,
}

pub fn amplitude<R: Real>(prec: &Precision) -> Result<Amplitude<R>> {
    let bits = prec.bits();
    let k1 = kappa::<R>(1, prec)?;
    let a1 = cabs(&k1).to_f64();
    let mut ks = vec![k1.clone()];
    loop {
        let k = kappa::<R>(ks.len() as i64 + 1, prec)?;
        let small = cabs(&k).to_f64() < prec.tol() * a1;
        ks.push(k);
        if small || ks.len() > 50 {
            break;
        }
    }
    let two_pi = R::pi(bits).mul_i64(2);
    let eval = |u: &R| -> R {
        let mut s = u.zero_like();
        for (i, k) in ks.iter().enumerate() {
            let e = cexp(&cx(u.zero_like(), two_pi.clone() * u * &R::from_f64((i + 1) as f64, bits)));
            s += &(k * &e).re;
        }
        (s.mul_i64(2)).abs()
    };
    let samples = 64;
    let mut best = (0usize, u_at::<R>(0, samples, bits));
    let mut best_v = eval(&best.1);
    for i in 1..samples {
        let u = u_at::<R>(i, samples, bits);
        let v = eval(&u);
        if v > best_v {
            best = (i, u);
            best_v = v;
        }
    }
    // golden-section refinement on the bracketing interval
    let step = R::from_ratio(1, samples as i64, bits);
    let mut lo = best.1.clone() - &step;
    let mut hi = best.1.clone() + &step;
    let phi = (R::from_f64(5.0, bits).sqrt() - &R::from_f64(1.0, bits)) / &R::from_f64(2.0, bits);
    for _ in 0..(prec.bits() as usize + 20) {
        let d = (hi.clone() - &lo) * &phi;
        let x1 = hi.clone() - &d;
        let x2 = lo.clone() + &d;
        if eval(&x1) > eval(&x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    let mid = (lo + &hi) / &R::from_f64(2.0, bits);
    let max_abs = eval(&mid);
    let max_abs = if max_abs > best_v { max_abs } else { best_v };
    Ok(Amplitude { two_abs_kappa1: cabs(&k1).mul_i64(2), max_abs, harmonics: ks.len() })
}

fn u_at<R: Real>(i: usize, n: usize, bits: u32) -> R {
    R::from_ratio(i as i64, n as i64, bits)
}

/// Root in [lo, hi] of a function with f(lo) > 0 > f(hi): bisection to 1e-3,
/// then Newton to tolerance.
fn root<R: Real>(f: impl Fn(&R) -> (R, R), lo: R, hi: R, prec: &Precision) -> Result<R> {
    let (mut lo, mut hi) = (lo, hi);
    let two = R::from_f64(2.0, prec.bits());
    while (hi.clone() - &lo).to_f64() > 1e-3 {
        let mid = (lo.clone() + &hi) / &two;
        if f(&mid).0 > mid.zero_like() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = (lo + &hi) / &two;
    let tol = 10f64.powi(-(prec.digits as i32 / 2 + 2));
    for _ in 0..200 {
        let (fx, dfx) = f(&x);
        let dx = fx / &dfx;
        x -= &dx;
        if dx.to_f64().abs() < tol || dx.is_zero() {
            // convergence is quadratic, so two more steps reach full precision
            for _ in 0..2 {
                let (fx, dfx) = f(&x);
                x -= &(fx / &dfx);
            }
            return Ok(x);
        }
    }
    Err(Error::Domain("Newton iteration did not converge".into()))
}

/// The k-th pole zbar_k: the root in (1/2, 1) of 1 - 2x + x^(k+2).
pub fn pole<R: Real>(k: usize, prec: &Precision) -> Result<R> {
    if k == 0 {
        return Err(Error::Domain("pole index starts at 1".into()));
    }
    prec.check()?;
    let bits = prec.bits();
    let e = k as i32 + 2;
    let one = R::from_f64(1.0, bits);
    let f = |x: &R| {
        let xe1 = x.powi(e - 1);
        let fx = one.clone() - &x.mul_i64(2) + &(xe1.clone() * x);
        let dfx = xe1.mul_i64(e as i64) - &one.from_i64_like(2);
        (fx, dfx)
    };
    // f decreases on [1/2, x*], x* = (2/(k+2))^(1/(k+1)) the minimum of f
    let xstar = R::from_ratio(2, e as i64, bits).powf(&R::from_ratio(1, e as i64 - 1, bits));
    root(f, R::from_ratio(1, 2, bits), xstar, prec)
}

/// zbar_1, ..., zbar_kmax.
pub fn poles<R: Real>(kmax: usize, prec: &Precision) -> Result<Vec<R>> {
    (1..=kmax).map(|k| pole(k, prec)).collect()
}

/// theta: the real root of 1 - 2x + x^2 - x^3.
pub fn theta<R: Real>(prec: &Precision) -> Result<R> {
    prec.check()?;
    let bits = prec.bits();
    let one = R::from_f64(1.0, bits);
    let f = |x: &R| {
        let x2 = x.clone() * x;
        let fx = one.clone() - &x.mul_i64(2) + &x2 - &(x2.clone() * x);
        let dfx = x.mul_i64(2) - &one.from_i64_like(2) - &x2.mul_i64(3);
        (fx, dfx)
    };
    root(f, R::from_ratio(1, 2, bits), R::from_ratio(3, 5, bits), prec)
}

/// Coefficients c_{j,l} of n^(g-j) (log n)^l in Omega_5 / 2^n - 1, as printed
/// to ten digits; row j lists l = 0..=j.
pub const OMEGA5: [&[&str]; 5] = [
    &["0.1083842947"],
    &["0.5442458535", "-0.3928066917"],
    &["0.6985601031", "0.6950193894", "0.2627062704"],
    &["-1.18810811075202", "-1.570478457", "-0.02188678892", "0.08310555463"],
    &["-4.156441653", "-4.663711650", "-3.297513638", "0.05494834609", "0.06722511293"],
];

pub const MAX_OMEGA_TERMS: usize = OMEGA5.len();

/// Closed forms of c_{0,0} = kappa_0 and c_{1,1} = -kappa_0 g log 3 / log^2 2.
pub fn omega_closed_forms<R: Real>(prec: &Precision) -> Result<(R, R)> {
    let bits = prec.bits();
    let k0 = kappa::<R>(0, prec)?.re;
    let g = critical_exponent::<R>(prec);
    let ln2 = R::ln2(bits);
    let c11 = -(k0.clone() * &g * &R::from_f64(3.0, bits).ln() / &(ln2.clone() * &ln2));
    Ok((k0, c11))
}

/// Non-oscillating expansion plus Fourier harmonics of the amplitude.
#[derive(Clone, Debug)]
pub struct AsymptoticModel<R> {
    pub g: R,
    /// (j, l, c_{j,l})
    pub omega_terms: Vec<(usize, usize, R)>,
    /// (k, kappa_k) for 1 <= |k| <= K
    pub harmonics: Vec<(i64, C<R>)>,
}

impl<R: Real> AsymptoticModel<R> {
    /// Model with the first `terms` rows of Omega_5 and `harmonics` pairs of
    /// Fourier coefficients.
    pub fn new(terms: usize, harmonics: usize, prec: &Precision) -> Result<Self> {
        if terms > MAX_OMEGA_TERMS {
            return Err(Error::Domain(format!(
                "only {MAX_OMEGA_TERMS} terms of the expansion are available, asked for {terms}"
            )));
        }
        let bits = prec.bits();
        let mut omega_terms = Vec::new();
        for (j, row) in OMEGA5.iter().enumerate().take(terms) {
            for (l, c) in row.iter().enumerate() {
                omega_terms.push((j, l, R::parse(c, bits)?));
            }
        }
        let mut hs = Vec::new();
        for k in 1..=harmonics as i64 {
            let kk = kappa::<R>(k, prec)?;
            hs.push((-k, kk.conj()));
            hs.push((k, kk));
        }
        Ok(AsymptoticModel { g: critical_exponent(prec), omega_terms, harmonics: hs })
    }

    pub fn terms(&self) -> usize {
        self.omega_terms.iter().map(|t| t.0 + 1).max().unwrap_or(0)
    }

    /// Omega_T(n) / 2^n.
    pub fn omega_scaled(&self, n: usize) -> R {
        let bits = self.g.bits();
        let nn = R::from_f64(n as f64, bits);
        let l = nn.ln();
        let mut s = R::from_f64(1.0, bits);
        for (j, ell, c) in &self.omega_terms {
            let p = nn.powf(&(self.g.clone() - &R::from_f64(*j as f64, bits)));
            s += &(c.clone() * &p * &l.powi(*ell as i32));
        }
        s
    }

    /// The periodic amplitude kappa(u) = sum_k kappa_k e^(2ik pi u).
    pub fn kappa_at(&self, u: &R) -> R {
        let two_pi = R::pi(u.bits()).mul_i64(2);
        let mut s = u.zero_like();
        for (k, kk) in &self.harmonics {
            let e = cexp(&cx(u.zero_like(), two_pi.clone() * u * &R::from_f64(*k as f64, u.bits())));
            s += &(kk * &e).re;
        }
        s
    }
}

/// Omega_T(n) = 2^n (1 + sum_{j<T} n^(g-j) sum_l c_{j,l} (log n)^l).
pub fn omega_predict<R: Real>(n: usize, terms: usize, prec: &Precision) -> Result<R> {
    if n < 2 {
        return Err(Error::Domain(format!("the expansion needs n >= 2, got {n}")));
    }
    let m = AsymptoticModel::<R>::new(terms, 0, prec)?;
    Ok(m.omega_scaled(n).mul_pow2(n as i32))
}
