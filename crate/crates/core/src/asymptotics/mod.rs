//! Numerics near the dominant singularity q = 1/2: q-Pochhammer symbols, the
//! coefficients d_nu, several evaluations of the generating function, the
//! Fourier constants of the oscillating amplitude and the residual pipeline
//! that exposes that oscillation in the exact counts.
//!
//! Everything is generic over [`Real`]; complex values are `Complex<R>`.
//! Infinite sums and products stop through [`summate`], which records a
//! geometric tail bound and honours [`Precision::tail_scale`].

mod constants;
mod gf;
mod oscillation;
mod qseries;

pub use constants::*;
pub use gf::*;
pub use oscillation::*;
pub use qseries::*;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cabs_f64, cre, Precision, Real};

/// Upper limit on the length of any tail-bounded loop.
pub const MAX_TERMS: usize = 200_000;

/// Drive a tail-bounded sum or product.
///
/// `step(k)` folds term `k` into the caller's accumulator and returns a bound
/// on what the remaining terms can still contribute (`None` while no bound is
/// available yet).  The loop stops at the first `k` whose bound is below the
/// tolerance, extended to `tail_scale` times that length.  Returns the number
/// of terms used.
pub fn summate(prec: &Precision, what: &str, mut step: impl FnMut(usize) -> Option<f64>) -> Result<usize> {
    let tol = prec.tol();
    let mut target = None;
    let mut k = 0;
    while k < MAX_TERMS {
        let bound = step(k);
        k += 1;
        match target {
            Some(t) if k >= t => return Ok(k),
            Some(_) => {}
            None => {
                if matches!(bound, Some(b) if b < tol) {
                    let t = k * prec.tail_scale as usize;
                    if k >= t {
                        return Ok(k);
                    }
                    target = Some(t);
                }
            }
        }
    }
    Err(Error::Domain(format!("{what}: tail bound not below 1e-{} after {MAX_TERMS} terms", prec.digits + 5)))
}

/// Geometric tail `x r / (1 - r)`, or `None` when `r` is not below one.
pub(crate) fn geo_tail(x: f64, r: f64) -> Option<f64> {
    if r < 1.0 && r.is_finite() && x.is_finite() {
        Some(x * r / (1.0 - r))
    } else {
        None
    }
}

/// `p/q` as a complex number at `bits`.
pub(crate) fn crat<R: Real>(p: i64, q: i64, bits: u32) -> Complex<R> {
    cre(R::from_ratio(p, q, bits))
}

pub(crate) fn cone<R: Real>(bits: u32) -> Complex<R> {
    crat(1, 1, bits)
}

pub(crate) fn abs(z: &Complex<impl Real>) -> f64 {
    cabs_f64(z)
}

pub(crate) fn is_real_eq(z: &Complex<impl Real>, v: f64) -> bool {
    z.im.is_zero() && z.re == z.re.lit(v)
}
