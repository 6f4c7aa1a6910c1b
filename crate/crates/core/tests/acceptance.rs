//! Acceptance criteria 1 to 8.  Each test prints one `criterion N: PASS|FAIL`
//! line with the measured values, then asserts the criterion (criterion 8 is
//! reported only).

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::One;

use prudent::asymptotics::*;
use prudent::cli::run;
use prudent::enumerate::{
    bargraph_residual, bargraph_width_series, counts, pa3_series, w_residual, w_series, xyz_residual, xyz_series,
    Method,
};
use prudent::oracle::enumerate_prudent_polygons;
use prudent::scalar::{cabs, cre, Real};
use prudent::series::Series1;
use prudent::{BigFloat, Precision};

type R = BigFloat;
type C = Complex<R>;

/// Written straight to the stderr handle so the line shows up without
/// `--nocapture`.
fn say(line: &str) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

fn verdict(n: u32, pass: bool, detail: &str) {
    say(&format!("criterion {n}: {} {detail}", if pass { "PASS" } else { "FAIL" }));
}

fn cli_counts(args: &[&str]) -> Vec<String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("prudent").chain(args.iter().copied()), &mut out, &mut err);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&err));
    String::from_utf8(out)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect()
}

fn strs(v: &[i64]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

#[test]
fn criterion_1_published_series() {
    let t0 = Instant::now();
    let k3 = cli_counts(&["enumerate", "--k", "3", "--max-area", "10"]);
    let k3_ok = k3 == strs(&[6, 10, 20, 42, 92, 204, 454, 1010, 2242, 4962]);
    let k2 = cli_counts(&["enumerate", "--k", "2", "--max-area", "30"]);
    let k2_ok = k2.iter().enumerate().all(|(i, c)| *c == ((BigInt::one() << (i + 1)) + BigInt::from(2)).to_string());
    let k4 = cli_counts(&["enumerate", "--k", "4", "--max-area", "4"]);
    let k4_ok = k4 == strs(&[8, 24, 80, 248]);
    let el = t0.elapsed();
    let pass = k3_ok && k2_ok && k4_ok && el < Duration::from_secs(5);
    verdict(
        1,
        pass,
        &format!(
            "(k=3 {}; k=2 {}; k=4 got {} want 8,24,80,248; {:.2?})",
            if k3_ok { "exact" } else { "differs" },
            if k2_ok { "2^n+2 for n<=30" } else { "differs" },
            k4.join(","),
            el
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_2_dual_route_equality() {
    let t0 = Instant::now();
    let a = pa3_series(200, Method::Theorem).unwrap();
    let b = pa3_series(200, Method::Functional).unwrap();
    let el = t0.elapsed();
    let first_diff = (1..=200).find(|&n| a.get(n) != b.get(n));
    let pass = first_diff.is_none() && el < Duration::from_secs(60);
    verdict(2, pass, &format!("(N=200, first difference {first_diff:?}, {el:.2?})"));
    assert!(pass);
}

#[test]
fn criterion_3_oracle_equivalence() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mut k4 = (Vec::new(), Vec::new());
    for k in 2..=4u8 {
        let o = enumerate_prudent_polygons(k, 8).unwrap();
        let s = counts(k, 8).unwrap();
        for n in 1..=8 {
            if o.get(n) != s.get(n) {
                bad.push((k, n));
            }
        }
        if k == 4 {
            k4 = (o.counts().to_vec(), s.counts().to_vec());
        }
    }
    let el = t0.elapsed();
    let q5 = k4.0[4] == k4.1[4];
    let show = |v: &[BigInt]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
    say(&format!(
        "  4-sided oracle {}; solver {}; printed 8,24,80,248,(no q^5 term),736,2120,5960,16464,44808",
        show(&k4.0),
        show(&k4.1)
    ));
    let pass = bad.is_empty() && q5 && el < Duration::from_secs(600);
    verdict(3, pass, &format!("(k=2,3,4, n<=8, mismatches {bad:?}, n=5 oracle {} solver {}, {el:.2?})", k4.0[4], k4.1[4]));
    assert!(pass);
}

#[test]
fn criterion_4_constants() {
    let p = Precision::new(40);
    let k0 = kappa::<R>(0, &p).unwrap();
    let k0s = k0.re.to_decimal(12);
    let k0_ok = k0s.starts_with("0.1083842946") && k0.im.to_f64().abs() < 1e-40;
    let a = amplitude::<R>(&p).unwrap();
    let amp = format!("{:.5e}", a.two_abs_kappa1.to_f64());
    let amp_ok = amp == "1.54623e-9";
    let (c00, c11) = omega_closed_forms::<R>(&p).unwrap();
    let (s00, s11) = (c00.to_decimal(10), c11.to_decimal(10));
    let om_ok = s00 == OMEGA5[0][0] && s11 == OMEGA5[1][1];
    let pass = k0_ok && amp_ok && om_ok;
    verdict(
        4,
        pass,
        &format!(
            "(kappa0 = {k0s}; 2|kappa1| = {amp} want 1.54623e-9, max|kappa(u)| = {:.5e}; c00 = {s00} c11 = {s11})",
            a.max_abs.to_f64()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_5_gf_identity_matrix() {
    let p = Precision::new(40);
    let bits = p.bits();
    let t0 = Instant::now();
    let c = |re: f64, im: f64| -> C { Complex::new(R::from_f64(re, bits), R::from_f64(im, bits)) };
    let ev = |q: &C, m: GfMethod, order: Option<usize>| {
        gf_eval(q, m, &GfParams { taylor_order: order, harmonics: None }, &p).unwrap()
    };
    let d = |a: &C, b: &C| cabs(&(a - b)).to_f64();
    let q45 = c(0.45, 0.0);
    let e1 = d(&ev(&q45, GfMethod::Taylor, None), &ev(&q45, GfMethod::Singular, None));
    let q25 = c(0.25, 0.0);
    let e2 = d(&ev(&q25, GfMethod::Taylor, None), &ev(&q25, GfMethod::Meromorphic, None));
    let mut e3: f64 = 0.0;
    for th in [2.0 / 3.0, 1.0, 4.0 / 3.0] {
        let a = th * std::f64::consts::PI;
        let q = cre(R::from_ratio(1, 2, bits)) + c(0.03 * a.cos(), 0.03 * a.sin());
        e3 = e3.max(d(&ev(&q, GfMethod::Meromorphic, None), &ev(&q, GfMethod::Singular, None)));
    }
    let el = t0.elapsed();
    let pass = e1 < 1e-12 && e2 < 1e-12 && e3 < 1e-8 && el < Duration::from_secs(300);
    verdict(5, pass, &format!("(taylor/singular {e1:.1e}; taylor/meromorphic {e2:.1e}; sector {e3:.1e}; {el:.2?})"));
    assert!(pass);
}

#[test]
fn criterion_6_oscillation() {
    let p = Precision::new(40);
    let t0 = Instant::now();
    let exact = scaled_counts_exact(800, &p).unwrap();
    let float = scaled_counts_float(4096, &p).unwrap();
    let mut worst: f64 = 0.0;
    for n in 1..=800 {
        worst = worst.max(((exact[n].clone() - &float[n]) / &exact[n]).to_f64().abs());
    }
    let table = residuals(&float, 5, &p).unwrap();
    let ex = extrema(&table, 9.0, 12.0);
    let alternating = ex.windows(2).all(|w| (w[0].1.to_f64() > 0.0) != (w[1].1.to_f64() > 0.0));
    let k0 = cabs(&fourier_extract(&table, 0, 9.0, 12.0).unwrap()).to_f64();
    let k1 = cabs(&fourier_extract(&table, 1, 9.0, 12.0).unwrap()).to_f64();
    let k1_true = cabs(&kappa::<R>(1, &p).unwrap()).to_f64();
    let el = t0.elapsed();
    let rel = (k1 / k1_true - 1.0).abs();
    let pass = worst < 1e-25
        && ex.len() >= 3
        && alternating
        && rel < 0.10
        && k0 < 1e-10
        && el < Duration::from_secs(1800);
    verdict(
        6,
        pass,
        &format!(
            "(float vs exact {worst:.1e}; {} extrema{}; |kappa1 hat| = {k1:.4e} vs {k1_true:.4e}, off {:.0}%; |kappa0 hat| = {k0:.1e}; {el:.2?})",
            ex.len(),
            if alternating { ", alternating" } else { ", not alternating" },
            rel * 100.0
        ),
    );
    assert!(pass);
}

fn lcg(seed: &mut u64) -> i64 {
    *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    ((*seed >> 33) % 41) as i64 - 20
}

fn random_series(seed: &mut u64, n: usize) -> Series1<BigInt> {
    Series1::from_coeffs((0..=n).map(|_| BigInt::from(lcg(seed))).collect())
}

#[test]
fn criterion_7_property_suites() {
    let p = Precision::new(40);
    let bits = p.bits();
    let mut fails: Vec<&str> = Vec::new();
    let c = |re: f64, im: f64| -> C { Complex::new(R::from_f64(re, bits), R::from_f64(im, bits)) };
    let rel = |a: &C, b: &C| cabs(&(a - b)).to_f64() / cabs(b).to_f64();

    // series ring axioms
    let mut seed = 7u64;
    let mut ring = true;
    for _ in 0..50 {
        let (a, b, cc) = (random_series(&mut seed, 15), random_series(&mut seed, 15), random_series(&mut seed, 15));
        ring &= a.mul(&b) == b.mul(&a);
        ring &= a.mul(&b).mul(&cc) == a.mul(&b.mul(&cc));
        ring &= a.mul(&b.add(&cc)) == a.mul(&b).add(&a.mul(&cc));
        ring &= a.add(&b).sub(&b) == a;
    }
    if !ring {
        fails.push("ring axioms");
    }

    // functional equations
    let fe = bargraph_residual(&bargraph_width_series(30).unwrap()).is_zero()
        && w_residual(&w_series(30).unwrap()).is_zero()
        && xyz_residual(&xyz_series(8).unwrap()).iter().all(|r| r.is_zero());
    if !fe {
        fails.push("functional equations");
    }

    // d_nu by three routes
    let mut dn = true;
    for q in [c(0.4, 0.0), c(0.47, 0.02)] {
        let a = d_nu_recurrence(20, &q, &p).unwrap();
        let b = d_nu_formula(20, &q, &p).unwrap();
        let e = d_nu_extract(20, &q, &p).unwrap();
        dn &= (0..=20).all(|i| rel(&a[i], &b[i]) < 1e-35 && rel(&a[i], &e[i]) < 1e-35);
    }
    if !dn {
        fails.push("d_nu routes");
    }

    // h_j grid
    let mut hj = true;
    for q in [R::from_ratio(1, 2, bits), R::from_f64(0.48, bits)] {
        let v = base_quantities(&cre(q.clone()), &p).unwrap().v.re;
        for j in 0..=3 {
            for t in [0.01, 0.2, 1.0, 5.0] {
                let (a, b) = hj_check(j, &R::from_f64(t, bits), &q, &v, &p).unwrap();
                hj &= ((a.clone() - &b) / &a).to_f64().abs() < 1e-35;
            }
        }
    }
    if !hj {
        fails.push("h_j grid");
    }

    // Mittag-Leffler
    let third = cre(R::from_ratio(1, 3, bits));
    let half = cre(R::from_ratio(1, 2, bits));
    let mut ml = true;
    for z in [c(0.3, 0.0), c(1.3, 0.7), c(-2.5, 0.1)] {
        let (l, r) = mittag_leffler_check(&third, &half, &z, &p).unwrap();
        ml &= rel(&l, &r) < 1e-35;
    }
    if !ml {
        fails.push("Mittag-Leffler");
    }

    // poles
    let zs = poles::<R>(8, &p).unwrap();
    let golden = (R::from_f64(5.0, bits).sqrt() - &R::from_f64(1.0, bits)) / &R::from_f64(2.0, bits);
    let mut pl = zs[0].to_decimal(12) == golden.to_decimal(12);
    for (k, z) in zs.iter().enumerate() {
        let res = R::from_f64(1.0, bits) - &(z.clone() * &R::from_f64(2.0, bits)) + &z.powi(k as i32 + 3);
        pl &= res.to_f64().abs() < 1e-30;
    }
    if !pl {
        fails.push("poles");
    }

    // tail-bound doubling
    let pd = p.doubled();
    let qs = cre(R::from_ratio(1, 2, bits)) + c(-0.015, 0.026);
    let mut td = rel(&pochhammer(&third, &half, None, &p).unwrap(), &pochhammer(&third, &half, None, &pd).unwrap()) < 1e-40;
    for m in GfMethod::ALL {
        let q = if m == GfMethod::Taylor { c(0.3, 0.05) } else { qs.clone() };
        let a = gf_eval(&q, m, &GfParams::default(), &p).unwrap();
        let b = gf_eval(&q, m, &GfParams::default(), &pd).unwrap();
        td &= rel(&a, &b) < 1e-40;
    }
    let d1 = d_nu_formula(10, &c(0.45, 0.0), &p).unwrap();
    let d2 = d_nu_formula(10, &c(0.45, 0.0), &pd).unwrap();
    td &= (0..=10).all(|i| rel(&d1[i], &d2[i]) < 1e-40);
    let e1 = d_nu_extract(10, &c(0.45, 0.0), &p).unwrap();
    let e2 = d_nu_extract(10, &c(0.45, 0.0), &pd).unwrap();
    td &= (0..=10).all(|i| rel(&e1[i], &e2[i]) < 1e-40);
    let (_, m1) = mittag_leffler_check(&third, &half, &c(0.3, 0.0), &p).unwrap();
    let (_, m2) = mittag_leffler_check(&third, &half, &c(0.3, 0.0), &pd).unwrap();
    td &= rel(&m1, &m2) < 1e-40;
    for f in [u_eval::<R>, v_eval::<R>] {
        td &= rel(&f(&qs, &p).unwrap(), &f(&qs, &pd).unwrap()) < 1e-40;
    }
    let w = c(0.3, 0.0);
    td &= rel(&pi_eval(&w, &half, &p).unwrap(), &pi_eval(&w, &half, &pd).unwrap()) < 1e-40;
    let (t3, q, v) = (R::from_f64(3.0, bits), R::from_ratio(1, 2, bits), R::from_ratio(3, 2, bits));
    for j in 0..=2 {
        let a = hj_direct(j, &t3, &q, &v, &p).unwrap();
        let b = hj_direct(j, &t3, &q, &v, &pd).unwrap();
        let r1 = hj_representation(j, &t3, &q, &v, &p).unwrap();
        let r2 = hj_representation(j, &t3, &q, &v, &pd).unwrap();
        td &= ((a.clone() - &b) / &a).to_f64().abs() < 1e-40 && ((r1.clone() - &r2) / &r1).to_f64().abs() < 1e-40;
    }
    let g1 = cgamma(&c(2.58, 9.06), &p).unwrap();
    let g2 = cgamma(&c(2.58, 9.06), &pd).unwrap();
    td &= rel(&g1, &g2) < 1e-40;
    if !td {
        fails.push("tail doubling");
    }

    let pass = fails.is_empty();
    verdict(7, pass, &format!("(failing suites: {fails:?})"));
    assert!(pass);
}

#[test]
fn criterion_8_exponent_fits() {
    let p = Precision::new(40);
    let g = critical_exponent::<R>(&p).to_f64();
    let e3 = exponent_fit(&counts(3, 2000).unwrap(), &p).unwrap();
    let e4 = exponent_fit(&counts(4, 150).unwrap(), &p).unwrap();
    let ok = (e3 - g).abs() <= 0.05;
    // reported, not asserted
    verdict(
        8,
        ok,
        &format!(
            "(reported: 3-sided fit at N=2000 is {e3:.4} vs log2 3 = {g:.4}; 4-sided fit at N=150 is {e4:.4} vs conjectured 1+log2 3 = {:.4})",
            1.0 + g
        ),
    );
}
