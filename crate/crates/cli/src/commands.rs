use clap::Args;
use jacklab::jack::{jack_basis, power_to_monomial, stanley_cauchy_component, MAX_DEGREE};
use jacklab::measure::MeasureTable;
use jacklab::partition::ch_vee_list;
use jacklab::plancherel::{catalan, kerov_cov_stieltjes, plancherel_mean_stieltjes, semicircle_c, vkls_slope, Sign};
use jacklab::rational::{fmt_q, to_f64};
use jacklab::ribbon::{aoe_table, w_hat};
use jacklab::toeplitz::{
    clt_covariance_stieltjes, clt_mean_stieltjes, limit_shape_slope, spectral_shift_cdf, symbol_range, wiener_hopf,
    LaurentSymbol,
};
use jacklab::{ModeAssignment, Partition, Q};
use num_complex::Complex64;
use serde_json::{Map, Value};

use crate::report::{Cell, Report};
use crate::{echo_spec, parse_complex, Failure, SpecArgs};

type C = Complex64;
type Outcome = Result<(Report, Result<(), Failure>), Failure>;

const MAX_SITES: usize = 3;
const MAX_ELL: usize = 6;

fn fmt_c(z: C) -> String {
    z.to_string()
}

#[derive(Args, Debug)]
pub struct JackTableArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Degree |lambda|
    #[arg(short, long)]
    degree: usize,
    /// Expansion basis for the coefficients
    #[arg(long, value_enum, default_value = "power")]
    basis: Basis,
    /// Verify the Cauchy identity in this degree (exit 3 on failure)
    #[arg(long)]
    check: bool,
    /// Largest degree accepted
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum Basis {
    /// Power sums p_mu
    Power,
    /// Monomial symmetric functions m_mu
    Monomial,
}

pub fn jack_table(a: &JackTableArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    let limit = a.max_degree.min(MAX_DEGREE);
    if a.degree > limit {
        return Err(Failure::Validation(format!("degree {} exceeds the limit {limit}", a.degree)));
    }
    let mut r = Report::new("jack-table", precision);
    r.config("degree", a.degree);
    r.config("basis", format!("{:?}", a.basis).to_lowercase());
    r.config("check", a.check);
    echo_spec(&mut r, &s);
    r.columns = vec!["lambda", "mu", "coefficient"];
    let basis = jack_basis(a.degree, &s.eps)?;
    let table = power_to_monomial(a.degree)?;
    let mut norms = Map::new();
    for lambda in Partition::all(a.degree).iter().rev() {
        let coeffs: Vec<(Partition, Q)> = match a.basis {
            Basis::Power => basis.in_power_sums(lambda).terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect(),
            Basis::Monomial => basis.in_monomials(lambda, &table).into_iter().collect(),
        };
        for (mu, c) in coeffs.iter().rev() {
            r.row(vec![lambda.to_string().into(), mu.to_string().into(), fmt_q(c).into()]);
        }
        norms.insert(lambda.to_string(), fmt_q(&basis.norms[lambda]).into());
    }
    r.summary("norms", Value::Object(norms));
    let mut verdict = Ok(());
    if a.check {
        let ok = stanley_cauchy_component(a.degree, &s.eps)?.is_zero();
        r.summary("cauchy_identity", if ok { "pass" } else { "fail" });
        if !ok {
            verdict = Err(Failure::Tolerance(format!("Cauchy identity fails in degree {}", a.degree)));
        }
    }
    Ok((r, verdict))
}

#[derive(Args, Debug)]
pub struct CumulantArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Statistic indices l_1,...,l_n of ch^vee_l
    #[arg(long, value_delimiter = ',', required = true)]
    ells: Vec<usize>,
    /// Absolute tolerance on top of the truncation allowance
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Multiple of (normalization deficit x statistic scale) added to the tolerance
    #[arg(long, default_value_t = 10.0)]
    deficit_factor: f64,
}

pub fn cumulant(a: &CumulantArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    if a.ells.is_empty() || a.ells.len() > MAX_SITES || a.ells.iter().any(|&l| l == 0 || l > MAX_ELL) {
        return Err(Failure::Validation(format!(
            "need 1..={MAX_SITES} statistics with 1 <= l <= {MAX_ELL}, got {:?}",
            a.ells
        )));
    }
    let spec = s.measure_spec()?;
    let mut r = Report::new("cumulant", precision);
    r.config("ells", a.ells.iter().map(|&l| Value::from(l)).collect::<Vec<_>>());
    r.config("tol", r.float(a.tol));
    r.config("deficit_factor", r.float(a.deficit_factor));
    echo_spec(&mut r, &s);
    r.config("resolved.D", spec.truncation);
    let aoe = aoe_table(&a.ells, &s.modes, true);
    let ribbon = aoe.cumulant(&s.eps);
    let table = MeasureTable::new(&spec)?;
    // exact agreement of the Π-stripped series in every mode degree <= D
    let graded_ok = aoe.graded_cumulant(&s.eps, spec.truncation) == table.stripped_cumulant_series(&a.ells);
    let oracle = table.joint_cumulant(&a.ells)?;
    let deficit = table.deficit();
    // the missing tail is weighted by the statistics, so scale by their size on the support
    let scale: f64 = a
        .ells
        .iter()
        .map(|&l| {
            table.entries.iter().map(|(lambda, _)| to_f64(&ch_vee_list(lambda, &s.eps, l)[l]).abs()).fold(1.0, f64::max)
        })
        .product();
    let diff = (to_f64(&ribbon) - oracle).abs();
    let bound = a.tol + a.deficit_factor * deficit.abs() * scale;
    r.columns = vec!["route", "value", "exact"];
    r.row(vec!["ribbon".into(), to_f64(&ribbon).into(), fmt_q(&ribbon).into()]);
    r.row(vec!["bruteforce".into(), oracle.into(), "".into()]);
    r.summary("graded_exact", graded_ok);
    r.summary("abs_diff", r.float(diff));
    r.summary("deficit", r.float(deficit));
    r.summary("statistic_scale", r.float(scale));
    r.summary("bound", r.float(bound));
    let ok = graded_ok && diff <= bound;
    r.summary("pass", ok);
    let verdict = match (graded_ok, diff <= bound) {
        (false, _) => Err(Failure::Tolerance("graded series disagree".into())),
        (true, false) => Err(Failure::Tolerance(format!("|diff| = {diff:.3e} exceeds {bound:.3e}"))),
        _ => Ok(()),
    };
    Ok((r, verdict))
}

fn real_symbol(s: &jacklab::specfile::SpecFile) -> Result<LaurentSymbol, Failure> {
    if !s.modes.is_real() {
        return Err(jacklab::Error::NonReal.into());
    }
    Ok(s.symbol())
}

#[derive(Args, Debug)]
pub struct LimitShapeArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Left end of the grid (default: symbol minimum - 1)
    #[arg(long, allow_hyphen_values = true)]
    cmin: Option<f64>,
    /// Right end of the grid (default: symbol maximum + 1)
    #[arg(long, allow_hyphen_values = true)]
    cmax: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 41)]
    points: usize,
}

pub fn limit_shape(a: &LimitShapeArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    let v = real_symbol(&s)?;
    let (lo, hi) = symbol_range(&v)?;
    let (cmin, cmax) = (a.cmin.unwrap_or(lo - 1.0), a.cmax.unwrap_or(hi + 1.0));
    if a.points < 2 || !(cmin < cmax) {
        return Err(Failure::Validation("need points >= 2 and cmin < cmax".into()));
    }
    let mut r = Report::new("limit-shape", precision);
    r.config("cmin", r.float(cmin));
    r.config("cmax", r.float(cmax));
    r.config("points", a.points);
    echo_spec(&mut r, &s);
    r.summary("symbol_min", r.float(lo));
    r.summary("symbol_max", r.float(hi));
    r.columns = vec!["c", "xi", "slope"];
    for i in 0..a.points {
        let c = cmin + (cmax - cmin) * i as f64 / (a.points - 1) as f64;
        r.row(vec![c.into(), spectral_shift_cdf(&v, c)?.into(), limit_shape_slope(&v, c)?.into()]);
    }
    Ok((r, Ok(())))
}

fn parse_points(raw: &[String]) -> Result<Vec<C>, Failure> {
    raw.iter().map(|s| parse_complex(s)).collect()
}

#[derive(Args, Debug)]
pub struct CltArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Spectral parameters outside the symbol range, e.g. 3,4,2+1i
    #[arg(long, value_delimiter = ',', default_values_t = ["3".to_string(), "4".to_string()])]
    u: Vec<String>,
}

pub fn clt(a: &CltArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    let v = real_symbol(&s)?;
    let us = parse_points(&a.u)?;
    let mut r = Report::new("clt", precision);
    r.config("u", us.iter().map(|&z| Value::from(fmt_c(z))).collect::<Vec<_>>());
    echo_spec(&mut r, &s);
    r.columns = vec!["u1_re", "u1_im", "u2_re", "u2_im", "cov_re", "cov_im", "mean_u1_re", "mean_u1_im"];
    for (i, &u1) in us.iter().enumerate() {
        let mean = clt_mean_stieltjes(&v, u1)?;
        for &u2 in &us[i..] {
            let cov = clt_covariance_stieltjes(&v, u1, u2)?;
            r.row(vec![
                u1.re.into(),
                u1.im.into(),
                u2.re.into(),
                u2.im.into(),
                cov.re.into(),
                cov.im.into(),
                mean.re.into(),
                mean.im.into(),
            ]);
        }
    }
    Ok((r, Ok(())))
}

#[derive(Args, Debug)]
pub struct SampleArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Number of draws
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// RNG seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

pub fn sample(a: &SampleArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    let spec = s.measure_spec()?;
    let mut r = Report::new("sample", precision);
    r.config("count", a.count);
    r.config("seed", a.seed);
    echo_spec(&mut r, &s);
    r.config("resolved.D", spec.truncation);
    let table = MeasureTable::new(&spec)?;
    let draws = jacklab::measure::sample_many(&spec, a.count, a.seed)?;
    r.columns = vec!["index", "partition", "degree", "ch_vee_2", "ch_vee_3"];
    let (mut deg, mut deg2, mut c2, mut c3) = (0.0, 0.0, 0.0, 0.0);
    for (i, lambda) in draws.iter().enumerate() {
        let chv = ch_vee_list(lambda, &spec.eps, 3);
        let d = lambda.degree() as f64;
        deg += d;
        deg2 += d * d;
        c2 += to_f64(&chv[2]);
        c3 += to_f64(&chv[3]);
        r.row(vec![i.into(), lambda.to_string().into(), lambda.degree().into(), fmt_q(&chv[2]).into(), fmt_q(&chv[3]).into()]);
    }
    let n = a.count.max(1) as f64;
    let mean = deg / n;
    r.summary("mean_degree", r.float(mean));
    r.summary("stderr_degree", r.float(((deg2 / n - mean * mean).max(0.0) / n).sqrt()));
    r.summary("mean_ch_vee_2", r.float(c2 / n));
    r.summary("mean_ch_vee_3", r.float(c3 / n));
    r.summary("expected_ch_vee_2", r.float(table.expectation(&[2])?));
    r.summary("expected_ch_vee_3", r.float(table.expectation(&[3])?));
    r.summary("deficit", r.float(table.deficit()));
    Ok((r, Ok(())))
}

#[derive(Args, Debug)]
pub struct PlancherelCheckArgs {
    /// Tolerance for floating point comparisons
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

pub fn plancherel_check(a: &PlancherelCheckArgs, precision: usize) -> Outcome {
    let mut r = Report::new("plancherel-check", precision);
    r.config("tol", r.float(a.tol));
    r.columns = vec!["check", "point", "abs_err", "tol", "pass"];
    let v = LaurentSymbol::plancherel();
    let mut failures = 0;
    let mut push = |r: &mut Report, name: &str, point: String, err: f64, tol: f64| {
        let ok = err <= tol;
        if !ok {
            failures += 1;
        }
        r.row(vec![name.into(), point.into(), err.into(), tol.into(), if ok { "true" } else { "false" }.into()]);
    };
    let one = ModeAssignment::real_from(&[(1, Q::from_integer(1.into()))]);
    for l in 0..=8 {
        let w = w_hat(0, 0, &[2 * l], &one);
        let err = if w == Q::from_integer(catalan(l)?.into()) { 0.0 } else { 1.0 };
        push(&mut r, "catalan", (2 * l).to_string(), err, 0.0);
    }
    for u in [C::new(3.0, 0.0), C::new(4.0, 0.0), C::new(2.0, 1.0)] {
        let err = (wiener_hopf(&v, u)?.r00() - semicircle_c(u, Sign::Plus)).norm();
        push(&mut r, "resolvent_r00", fmt_c(u), err, a.tol);
    }
    for c in [-1.5, -0.5, 0.0, 0.5, 1.5] {
        let err = (limit_shape_slope(&v, c)? - vkls_slope(c)).abs();
        push(&mut r, "limit_shape_slope", c.to_string(), err, a.tol);
    }
    for (u1, u2) in [(C::new(3.0, 0.0), C::new(4.0, 0.0)), (C::new(3.0, 0.0), C::new(2.0, 1.0))] {
        let err = (clt_covariance_stieltjes(&v, u1, u2)? - kerov_cov_stieltjes(u1, u2, 200)?.value).norm();
        push(&mut r, "clt_covariance", format!("{};{}", fmt_c(u1), fmt_c(u2)), err, a.tol);
    }
    for u in [C::new(3.0, 0.0), C::new(2.0, 1.0)] {
        let err = (clt_mean_stieltjes(&v, u)? - plancherel_mean_stieltjes(u)?).norm();
        push(&mut r, "clt_mean", fmt_c(u), err, a.tol);
    }
    r.summary("failures", failures);
    let verdict = if failures == 0 { Ok(()) } else { Err(Failure::Tolerance(format!("{failures} checks failed"))) };
    Ok((r, verdict))
}

#[derive(Args, Debug)]
pub struct ToeplitzArgs {
    #[command(flatten)]
    spec: SpecArgs,
    /// Spectral parameter u, e.g. 3 or 2+1i
    #[arg(long, default_value = "3", allow_hyphen_values = true)]
    u: String,
    /// Largest height in the resolvent block R_{h+,h-}, 0 <= h <= block
    #[arg(long, default_value_t = 3)]
    block: usize,
}

pub fn toeplitz(a: &ToeplitzArgs, precision: usize) -> Outcome {
    let s = a.spec.resolve()?;
    let v = s.symbol();
    let u = parse_complex(&a.u)?;
    let mut r = Report::new("toeplitz", precision);
    r.config("u", fmt_c(u));
    r.config("block", a.block);
    echo_spec(&mut r, &s);
    let f = wiener_hopf(&v, u)?;
    r.summary("gamma0_re", r.float(f.gamma0.re));
    r.summary("gamma0_im", r.float(f.gamma0.im));
    r.summary("r00_re", r.float(f.r00().re));
    r.summary("r00_im", r.float(f.r00().im));
    r.summary("plus_modes", f.plus_modes.len());
    r.summary("minus_modes", f.minus_modes.len());
    r.columns = vec!["h_plus", "h_minus", "re", "im"];
    for (hp, row) in f.resolvent_block(a.block).into_iter().enumerate() {
        for (hm, z) in row.into_iter().enumerate() {
            r.row(vec![Cell::from(hp), hm.into(), z.re.into(), z.im.into()]);
        }
    }
    Ok((r, Ok(())))
}
