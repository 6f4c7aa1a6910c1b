//! Command-line front end.  Every command produces a [`Report`], which is
//! written as CSV, JSON or `name = value` text.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use crate::asymptotics::{
    amplitude, critical_exponent, exponent_fit, extrema, fourier_extract, gf_eval, kappa, poles, residuals,
    scaled_counts, theta, u_eval, GfMethod, GfParams,
};
use crate::enumerate::{counts, pa3_series, CountTable, Method};
use crate::error::{Error, Result};
use crate::oracle::enumerate_prudent_polygons;
use crate::scalar::{cabs, cre, cx, BigFloat, Precision, Real};

/// Environment variable that overrides the default working precision.
pub const DIGITS_ENV: &str = "PRUDENT_DIGITS";
pub const DEFAULT_DIGITS: u32 = 40;

#[derive(Parser, Debug)]
#[command(name = "prudent", version, about = "Prudent polygons counted by area: exact counts and asymptotics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Working precision in significant decimal digits.
    #[arg(long, global = true, env = DIGITS_ENV, default_value_t = DEFAULT_DIGITS)]
    pub digits: u32,
    /// Output format; `constants` and `fit` default to text, the rest to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<std::path::PathBuf>,
    /// Leave the timestamp out of the header, for byte-identical reruns.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Counts PA_n from the generating functions.
    Enumerate {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_area: usize,
        /// Route for k = 3 (theorem, functional or meromorphic).
        #[arg(long)]
        method: Option<String>,
    },
    /// Counts by exhaustive walk search.
    Oracle {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_area: usize,
    },
    /// Oracle and series side by side; exit status 3 on any mismatch.
    Verify {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_area: usize,
    },
    /// kappa_0, kappa_k, the amplitude, g, gamma_0, the poles and U(1/2).
    Constants {
        #[arg(long, default_value_t = 3)]
        harmonics: usize,
    },
    /// Evaluate PA(q) by two routes and compare.
    GfCheck {
        /// A complex number: `0.45`, `0.47+0.02i` or `0.47,0.02`.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_delimiter = ',', default_value = "taylor,meromorphic")]
        methods: Vec<String>,
        /// Fixed Taylor order instead of the tail-bound choice.
        #[arg(long)]
        taylor_order: Option<usize>,
        /// Fixed number of Pi harmonics instead of the tail-bound choice.
        #[arg(long)]
        harmonics: Option<usize>,
    },
    /// (PA_n - Omega_T(n)) 2^-n n^-g for 2 <= n <= N.
    Residuals {
        #[arg(long)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        terms: usize,
        /// Also report extrema and Fourier coefficients on this log2 n window.
        #[arg(long, num_args = 2, value_names = ["U0", "U1"])]
        window: Option<Vec<f64>>,
    },
    /// Least-squares growth exponent of PA_n 2^-n.
    Fit {
        #[arg(long)]
        k: u8,
        #[arg(long)]
        max_n: usize,
    },
}

/// Output of one command.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub config: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra `name = value` lines shown after the table in csv and text form.
    pub notes: Vec<(String, String)>,
    /// Set when the command's verdict should turn into a nonzero exit.
    pub failure: Option<Error>,
}

impl Report {
    fn new(columns: &[&str]) -> Self {
        Report { columns: columns.iter().map(|s| s.to_string()).collect(), ..Default::default() }
    }

    fn set(&mut self, k: &str, v: impl Display) {
        self.config.push((k.into(), v.to_string()));
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn note(&mut self, k: &str, v: impl Display) {
        self.notes.push((k.into(), v.to_string()));
    }

    pub fn write_csv(&self, w: &mut dyn Write) -> Result<()> {
        for (k, v) in &self.config {
            writeln!(w, "# {k} = {v}").map_err(io)?;
        }
        {
            let mut c = csv::Writer::from_writer(&mut *w);
            c.write_record(&self.columns).map_err(io)?;
            for r in &self.rows {
                c.write_record(r).map_err(io)?;
            }
            c.flush().map_err(io)?;
        }
        for (k, v) in &self.notes {
            writeln!(w, "# {k} = {v}").map_err(io)?;
        }
        Ok(())
    }

    pub fn write_json(&self, w: &mut dyn Write) -> Result<()> {
        let mut config = serde_json::Map::new();
        for (k, v) in self.config.iter().chain(&self.notes) {
            config.insert(k.clone(), serde_json::Value::String(v.clone()));
        }
        let v = serde_json::json!({ "config": config, "columns": self.columns, "rows": self.rows });
        serde_json::to_writer_pretty(&mut *w, &v).map_err(io)?;
        writeln!(w).map_err(io)
    }

    /// `# key = value` header, then one `name = value` line per row (first
    /// column is the name, the rest are joined with ", ").
    pub fn write_text(&self, w: &mut dyn Write) -> Result<()> {
        for (k, v) in &self.config {
            writeln!(w, "# {k} = {v}").map_err(io)?;
        }
        for r in &self.rows {
            let rest: Vec<&str> = r[1..].iter().map(|s| s.as_str()).filter(|s| !s.is_empty()).collect();
            writeln!(w, "{} = {}", r[0], rest.join(", ")).map_err(io)?;
        }
        for (k, v) in &self.notes {
            writeln!(w, "{k} = {v}").map_err(io)?;
        }
        Ok(())
    }
}

fn io(e: impl Display) -> Error {
    Error::Usage(format!("output failed: {e}"))
}

/// Parse `argv`, run the command and write its output; returns the exit code.
/// Diagnostics go to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let written = match &cli.common.output {
                Some(path) => std::fs::File::create(path)
                    .map_err(io)
                    .and_then(|mut f| emit(&cli, &report, &mut f)),
                None => emit(&cli, &report, out),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return e.exit_code();
            }
            match report.failure {
                Some(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
                None => 0,
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

/// The requested format, or the command's default.
pub fn resolved_format(cli: &Cli) -> Format {
    let default = match cli.command {
        Command::Constants { .. } | Command::Fit { .. } => Format::Text,
        _ => Format::Csv,
    };
    cli.common.format.unwrap_or(default)
}

fn emit(cli: &Cli, report: &Report, w: &mut dyn Write) -> Result<()> {
    match resolved_format(cli) {
        Format::Csv => report.write_csv(w),
        Format::Json => report.write_json(w),
        Format::Text => report.write_text(w),
    }
}

/// Run a parsed command.
pub fn execute(cli: &Cli) -> Result<Report> {
    let prec = Precision::new(cli.common.digits);
    prec.check()?;
    let mut r = match &cli.command {
        Command::Enumerate { k, max_area, method } => enumerate_cmd(*k, *max_area, method.as_deref())?,
        Command::Oracle { k, max_area } => {
            let t = enumerate_prudent_polygons(*k, *max_area)?;
            let mut r = count_report(&t);
            r.set("subcommand", "oracle");
            r.set("k", k);
            r.set("max_area", max_area);
            r
        }
        Command::Verify { k, max_area } => verify_cmd(*k, *max_area)?,
        Command::Constants { harmonics } => constants_cmd(*harmonics, &prec)?,
        Command::GfCheck { q, methods, taylor_order, harmonics } => {
            gf_check_cmd(q, methods, GfParams { taylor_order: *taylor_order, harmonics: *harmonics }, &prec)?
        }
        Command::Residuals { max_n, terms, window } => residuals_cmd(*max_n, *terms, window.as_deref(), &prec)?,
        Command::Fit { k, max_n } => fit_cmd(*k, *max_n, &prec)?,
    };
    r.set("digits", prec.digits);
    r.set("format", format!("{:?}", resolved_format(cli)).to_lowercase());
    if !cli.common.no_timestamp {
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        r.set("timestamp", secs);
    }
    Ok(r)
}

fn count_report(t: &CountTable) -> Report {
    let mut r = Report::new(&["n", "count"]);
    for (n, c) in t.iter() {
        r.row(vec![n.to_string(), c.to_string()]);
    }
    r
}

fn enumerate_cmd(k: u8, n: usize, method: Option<&str>) -> Result<Report> {
    let t = match method {
        None => counts(k, n)?,
        Some(m) => {
            if k != 3 {
                return Err(Error::Usage(format!("--method applies to k = 3 only (k = {k})")));
            }
            let m: Method = m.parse()?;
            if !matches!(m, Method::Theorem | Method::Functional | Method::Meromorphic) {
                return Err(Error::Usage(format!("method {m} is not a series route")));
            }
            pa3_series(n, m)?
        }
    };
    let mut r = count_report(&t);
    r.set("subcommand", "enumerate");
    r.set("k", k);
    r.set("max_area", n);
    r.set("method", t.method);
    Ok(r)
}

fn verify_cmd(k: u8, n: usize) -> Result<Report> {
    let o = enumerate_prudent_polygons(k, n)?;
    let s = counts(k, n)?;
    let mut r = Report::new(&["n", "oracle", "series", "verdict"]);
    let mut bad = Vec::new();
    for n in 1..=n {
        let (a, b) = (o.get(n), s.get(n));
        let ok = a == b;
        if !ok {
            bad.push(n);
        }
        r.row(vec![n.to_string(), a.to_string(), b.to_string(), if ok { "MATCH" } else { "MISMATCH" }.into()]);
    }
    r.set("subcommand", "verify");
    r.set("k", k);
    r.set("max_area", n);
    r.set("series_method", s.method);
    if !bad.is_empty() {
        r.failure = Some(Error::Mismatch(format!("oracle and series differ at n = {bad:?}")));
    }
    Ok(r)
}

fn real(x: &BigFloat, digits: u32) -> String {
    x.to_decimal(digits as usize)
}

fn constants_cmd(harmonics: usize, prec: &Precision) -> Result<Report> {
    let d = prec.digits;
    let mut r = Report::new(&["name", "re", "im"]);
    let mut put = |name: String, re: String, im: String| r.row(vec![name, re, im]);
    let k0 = kappa::<BigFloat>(0, prec)?;
    put("kappa0".into(), real(&k0.re, d), String::new());
    for k in 1..=harmonics as i64 {
        let kk = kappa::<BigFloat>(k, prec)?;
        put(format!("kappa{k}"), real(&kk.re, d), real(&kk.im, d));
    }
    let a = amplitude::<BigFloat>(prec)?;
    put("amplitude_2abs_kappa1".into(), real(&a.two_abs_kappa1, d), String::new());
    put("amplitude_max".into(), real(&a.max_abs, d), String::new());
    put("g".into(), real(&critical_exponent::<BigFloat>(prec), d), String::new());
    let half = cre(BigFloat::from_ratio(1, 2, prec.bits()));
    let b = crate::asymptotics::base_quantities(&half, prec)?;
    put("gamma0".into(), real(&b.gamma.re, d), String::new());
    for (i, z) in poles::<BigFloat>(8, prec)?.iter().enumerate() {
        put(format!("zbar{}", i + 1), real(z, d), String::new());
    }
    put("theta".into(), real(&theta::<BigFloat>(prec)?, d), String::new());
    let u = u_eval(&half, prec)?;
    put("U(1/2)".into(), real(&u.re, d), String::new());
    r.set("subcommand", "constants");
    r.set("harmonics", harmonics);
    r.set("amplitude_harmonics", a.harmonics);
    Ok(r)
}

/// `0.45`, `0.47+0.02i`, `0.47-0.02i`, `-0.3i` or `0.47,0.02`.
pub fn parse_complex(s: &str, bits: u32) -> Result<Complex<BigFloat>> {
    let bad = || Error::Usage(format!("cannot read {s:?} as a complex number"));
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let num = |t: &str| BigFloat::parse(t, bits).map_err(|_| bad());
    if let Some((a, b)) = s.split_once(',') {
        return Ok(cx(num(a)?, num(b)?));
    }
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(cre(num(&s)?));
    };
    // split at the last sign that is not part of an exponent
    let bytes = body.as_bytes();
    let cut = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match cut {
        Some(i) => (num(&body[..i])?, &body[i..]),
        None => (BigFloat::from_f64(0.0, bits), body),
    };
    let im = match im {
        "" | "+" => BigFloat::from_f64(1.0, bits),
        "-" => BigFloat::from_f64(-1.0, bits),
        t => num(t)?,
    };
    Ok(cx(re, im))
}

fn gf_check_cmd(q: &str, methods: &[String], params: GfParams, prec: &Precision) -> Result<Report> {
    if methods.len() != 2 {
        return Err(Error::Usage(format!("--methods takes exactly two routes, got {}", methods.len())));
    }
    let ms: Vec<GfMethod> = methods.iter().map(|m| m.parse()).collect::<Result<_>>()?;
    let qz = parse_complex(q, prec.bits())?;
    let d = prec.digits;
    let mut r = Report::new(&["route", "re", "im", "abs"]);
    let mut vals = Vec::new();
    for m in &ms {
        let v = gf_eval(&qz, *m, &params, prec)?;
        r.row(vec![m.to_string(), real(&v.re, d), real(&v.im, d), real(&cabs(&v), d)]);
        vals.push(v);
    }
    let diff = &vals[0] - &vals[1];
    r.row(vec!["difference".into(), real(&diff.re, d), real(&diff.im, d), real(&cabs(&diff), 6)]);
    r.set("subcommand", "gf-check");
    r.set("q", format!("{},{}", real(&qz.re, d), real(&qz.im, d)));
    r.set("methods", format!("{},{}", ms[0], ms[1]));
    if let Some(n) = params.taylor_order {
        r.set("taylor_order", n);
    }
    if let Some(h) = params.harmonics {
        r.set("harmonics", h);
    }
    Ok(r)
}

fn residuals_cmd(max_n: usize, terms: usize, window: Option<&[f64]>, prec: &Precision) -> Result<Report> {
    if max_n < 2 {
        return Err(Error::Domain(format!("residuals need max-n >= 2, got {max_n}")));
    }
    let (scaled, source) = scaled_counts(max_n, prec)?;
    let t = residuals(&scaled, terms, prec)?;
    let d = prec.digits;
    let mut r = Report::new(&["n", "log2n", "scaled", "residual"]);
    for row in &t.rows {
        r.row(vec![row.n.to_string(), real(&row.log2n, 17), real(&row.scaled, d), real(&row.residual, d)]);
    }
    r.set("subcommand", "residuals");
    r.set("max_n", max_n);
    r.set("terms", terms);
    r.set("source", source.as_str());
    if let Some(&[u0, u1]) = window {
        let ex = extrema(&t, u0, u1);
        r.note("window", format!("[{u0}, {u1}]"));
        r.note("extrema", ex.iter().map(|(n, _)| n.to_string()).collect::<Vec<_>>().join(" "));
        for k in 0..=1 {
            let c = fourier_extract(&t, k, u0, u1)?;
            r.note(&format!("abs_kappa_hat{k}"), real(&cabs(&c), 6));
        }
    }
    Ok(r)
}

fn fit_cmd(k: u8, n: usize, prec: &Precision) -> Result<Report> {
    let t = counts(k, n)?;
    let e = exponent_fit(&t, prec)?;
    let g = critical_exponent::<BigFloat>(prec).to_f64();
    let mut r = Report::new(&["name", "value"]);
    r.row(vec!["exponent".into(), format!("{e:.6}")]);
    match k {
        3 => r.row(vec!["log2(3)".into(), format!("{g:.6}")]),
        4 => r.row(vec!["1+log2(3) (conjectured)".into(), format!("{:.6}", 1.0 + g)]),
        _ => r.row(vec!["exact".into(), "0 (PA_n = 2^n + 2)".into()]),
    }
    r.set("subcommand", "fit");
    r.set("k", k);
    r.set("max_n", n);
    r.set("fit_range", format!("{}..={n}", (n / 2).max(1)));
    Ok(r)
}
