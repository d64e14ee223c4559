//! Scalar Toeplitz operators with Laurent polynomial symbols.
//!
//! Matrix convention: `T_{a,b} = v̂_{a-b}`, where `v̂_j` is the coefficient of
//! `w^j`. The in mode `V_k` is the coefficient of `w^k` and the out mode `V̄_k`
//! the coefficient of `w^{-k}`, so an up-step of size `k` costs `V̄_k`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::Zero;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::fock::ModeAssignment;
use crate::rational::{to_f64, Q};

type C = Complex64;

/// Default number of circle samples.
pub const DEFAULT_SAMPLES: usize = 1 << 12;
const MAX_SAMPLES: usize = 1 << 20;
/// Fourier tail tolerance for `log(u - v)`.
pub const TAIL_TOL: f64 = 1e-14;
const NEAR_TOL: f64 = 1e-10;

/// Laurent polynomial `v(w) = Σ_{k≠0} c_k w^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSymbol {
    modes: BTreeMap<i64, C>,
    /// Optional analyticity radius `r_v` in `(0,1)`; only used to pick contour radii.
    pub radius: Option<f64>,
}

impl LaurentSymbol {
    pub fn new(modes: BTreeMap<i64, C>) -> Result<Self> {
        if modes.contains_key(&0) {
            return Err(Error::InvalidArgument("symbol has no zero mode".into()));
        }
        let modes = modes.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentSymbol { modes, radius: None })
    }

    pub fn zero() -> Self {
        LaurentSymbol { modes: BTreeMap::new(), radius: None }
    }

    /// `w + 1/w`.
    pub fn plancherel() -> Self {
        let mut m = BTreeMap::new();
        m.insert(1, C::new(1.0, 0.0));
        m.insert(-1, C::new(1.0, 0.0));
        LaurentSymbol { modes: m, radius: None }
    }

    pub fn from_modes(modes: &ModeAssignment) -> Self {
        let mut m = BTreeMap::new();
        for (&k, v) in &modes.in_modes {
            m.insert(k as i64, C::new(to_f64(v), 0.0));
        }
        for (&k, v) in &modes.out_modes {
            m.insert(-(k as i64), C::new(to_f64(v), 0.0));
        }
        m.retain(|_, c| !c.is_zero());
        LaurentSymbol { modes: m, radius: None }
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius = Some(r);
        self
    }

    pub fn mode(&self, k: i64) -> C {
        self.modes.get(&k).copied().unwrap_or_else(C::zero)
    }

    pub fn modes(&self) -> &BTreeMap<i64, C> {
        &self.modes
    }

    pub fn support(&self) -> usize {
        self.modes.keys().map(|k| k.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// `mode(-k) = conj(mode(k))` for all `k`.
    pub fn is_real(&self) -> bool {
        self.modes.iter().all(|(&k, c)| (self.mode(-k) - c.conj()).norm() <= 1e-14 * (1.0 + c.norm()))
    }

    pub fn eval(&self, w: C) -> C {
        self.modes.iter().map(|(&k, c)| c * w.powi(k as i32)).sum()
    }

    /// `v(e^{iθ})` as a real number; only meaningful for real symbols.
    pub fn eval_real(&self, theta: f64) -> f64 {
        self.eval(C::from_polar(1.0, theta)).re
    }

    /// `Σ |c_k|`, an upper bound for `|v|` on the unit circle.
    pub fn sup_bound(&self) -> f64 {
        self.modes.values().map(|c| c.norm()).sum()
    }

    /// Contour half-width for the double integral.
    pub fn contour_delta(&self) -> f64 {
        match self.radius {
            Some(r) if r > 0.0 && r < 1.0 => (0.1f64).min((1.0 / r - 1.0) / 4.0),
            _ => 0.1,
        }
    }
}

/// `⟨h_+| T^ℓ |h_-⟩` for exact rational modes.
pub fn toeplitz_vev_exact(modes: &ModeAssignment, l: usize, h_plus: usize, h_minus: usize) -> Q {
    let k = modes.support();
    let top = h_plus.max(h_minus) + l * k;
    // x = T^j e_{h_-}
    let mut x = vec![Q::zero(); top + 1];
    x[h_minus] = Q::from_integer(1.into());
    for _ in 0..l {
        let mut y = vec![Q::zero(); top + 1];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (&kk, val) in &modes.in_modes {
                if b + kk <= top {
                    y[b + kk] += val * xb;
                }
            }
            for (&kk, val) in &modes.out_modes {
                if b >= kk {
                    y[b - kk] += val * xb;
                }
            }
        }
        x = y;
    }
    x[h_plus].clone()
}

/// `⟨h_+| T^ℓ |h_-⟩` in floating point.
pub fn toeplitz_vev(v: &LaurentSymbol, l: usize, h_plus: usize, h_minus: usize) -> C {
    let k = v.support();
    let top = h_plus.max(h_minus) + l * k;
    let mut x = vec![C::zero(); top + 1];
    x[h_minus] = C::new(1.0, 0.0);
    for _ in 0..l {
        let mut y = vec![C::zero(); top + 1];
        for (b, xb) in x.iter().enumerate() {
            if xb.is_zero() {
                continue;
            }
            for (&j, c) in v.modes() {
                let a = b as i64 + j;
                if a >= 0 && a as usize <= top {
                    y[a as usize] += c * xb;
                }
            }
        }
        x = y;
    }
    x[h_plus]
}

/// Limiting moment `∫ c^ℓ dτ = ⟨0|T^ℓ|0⟩`.
pub fn lln_moment(v: &LaurentSymbol, l: usize) -> f64 {
    toeplitz_vev(v, l, 0, 0).re
}

/// `Σ_{ℓ ≤ lmax} u^{-ℓ-1} ⟨0|T^ℓ|0⟩`.
pub fn neumann_r00(v: &LaurentSymbol, u: C, lmax: usize) -> C {
    (0..=lmax).map(|l| toeplitz_vev(v, l, 0, 0) / u.powi(l as i32 + 1)).sum()
}

fn circle(m: usize, r: f64) -> Vec<C> {
    (0..m).map(|j| C::from_polar(r, 2.0 * PI * j as f64 / m as f64)).collect()
}

/// Unwrapped phases along a closed curve, starting at `arg(samples[0])`.
fn unwrapped_phase(samples: &[C]) -> Vec<f64> {
    let mut out = Vec::with_capacity(samples.len() + 1);
    let mut acc = samples[0].arg();
    out.push(acc);
    for j in 0..samples.len() {
        let next = samples[(j + 1) % samples.len()];
        acc += (next / samples[j]).arg();
        out.push(acc);
    }
    out
}

/// Winding number about 0 of a closed curve given by samples.
pub fn winding_number(samples: &[C]) -> Result<i64> {
    let min = samples.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if samples.is_empty() || min < NEAR_TOL {
        return Err(Error::NearSpectrum(min));
    }
    let phase = unwrapped_phase(samples);
    let turns = (phase[phase.len() - 1] - phase[0]) / (2.0 * PI);
    let n = turns.round();
    if (turns - n).abs() > 0.01 {
        return Err(Error::NoConvergence((turns - n).abs()));
    }
    Ok(n as i64)
}

/// Fourier coefficients `c_k = (1/M) Σ_j f(w_j) w_j^{-k}`, indexed FFT-style.
fn fourier(samples: &[C]) -> Vec<C> {
    let m = samples.len();
    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;
    buf.iter().map(|z| z * scale).collect()
}

fn coeff(c: &[C], k: i64) -> C {
    let m = c.len() as i64;
    c[k.rem_euclid(m) as usize]
}

/// Coefficients of `exp(Σ_{k≥1} a_k x^k)` up to order `n`.
fn exp_series_c(a: &[C], n: usize) -> Vec<C> {
    // b' = a' b
    let mut b = vec![C::zero(); n + 1];
    b[0] = C::new(1.0, 0.0);
    for m in 1..=n {
        let mut s = C::zero();
        for k in 1..=m.min(a.len()) {
            s += a[k - 1] * b[m - k] * k as f64;
        }
        b[m] = s / m as f64;
    }
    b
}

/// `u - v(w) = γ_-(w) γ0 γ_+(w)` with `γ_± = exp(L_±)`.
#[derive(Clone, Debug)]
pub struct WienerHopfFactors {
    pub u: C,
    pub gamma0: C,
    /// `L_+ = Σ_{k≥1} plus_modes[k-1] w^k`.
    pub plus_modes: Vec<C>,
    /// `L_- = Σ_{k≥1} minus_modes[k-1] w^{-k}`.
    pub minus_modes: Vec<C>,
    /// Circle samples used.
    pub samples: usize,
}

impl WienerHopfFactors {
    pub fn r00(&self) -> C {
        1.0 / self.gamma0
    }

    pub fn log_plus(&self, w: C) -> C {
        horner(&self.plus_modes, w) * w
    }

    pub fn log_minus(&self, w: C) -> C {
        let z = 1.0 / w;
        horner(&self.minus_modes, z) * z
    }

    pub fn gamma_plus(&self, w: C) -> C {
        self.log_plus(w).exp()
    }

    pub fn gamma_minus(&self, w: C) -> C {
        self.log_minus(w).exp()
    }

    /// `w ∂_w L_+(w)`.
    pub fn w_dlog_plus(&self, w: C) -> C {
        let d: Vec<C> = self.plus_modes.iter().enumerate().map(|(i, c)| c * (i as f64 + 1.0)).collect();
        horner(&d, w) * w
    }

    /// Taylor coefficients of `γ_+^{-1}` and of `γ_-^{-1}` in `w^{-1}`.
    pub fn inverse_coefficients(&self, n: usize) -> (Vec<C>, Vec<C>) {
        let neg = |v: &[C]| v.iter().map(|c| -c).collect::<Vec<_>>();
        (exp_series_c(&neg(&self.plus_modes), n), exp_series_c(&neg(&self.minus_modes), n))
    }

    /// `R_{h+,h-}(u) = [(u - T(v))^{-1}]_{h+,h-}`.
    pub fn resolvent_element(&self, h_plus: usize, h_minus: usize) -> C {
        let (gp, gm) = self.inverse_coefficients(h_plus.max(h_minus));
        resolvent_from(&gp, &gm, self.gamma0, h_plus, h_minus)
    }

    /// All `R_{a,b}` for `a, b ≤ n`.
    pub fn resolvent_block(&self, n: usize) -> Vec<Vec<C>> {
        let (gp, gm) = self.inverse_coefficients(n);
        (0..=n).map(|a| (0..=n).map(|b| resolvent_from(&gp, &gm, self.gamma0, a, b)).collect()).collect()
    }
}

/// `Σ a_i x^i`.
fn horner(a: &[C], x: C) -> C {
    a.iter().rev().fold(C::zero(), |acc, c| acc * x + c)
}

fn resolvent_from(gp: &[C], gm: &[C], gamma0: C, a: usize, b: usize) -> C {
    let s: C = (0..=a.min(b)).map(|j| gp[a - j] * gm[b - j]).sum();
    s / gamma0
}

/// Wiener-Hopf factorization of `u - v(w)` on the unit circle.
pub fn wiener_hopf(v: &LaurentSymbol, u: C) -> Result<WienerHopfFactors> {
    let mut m = DEFAULT_SAMPLES;
    loop {
        let ws = circle(m, 1.0);
        let g: Vec<C> = ws.iter().map(|&w| u - v.eval(w)).collect();
        let wind = winding_number(&g)?;
        if wind != 0 {
            return Err(Error::Winding(wind));
        }
        let phase = unwrapped_phase(&g);
        if (phase[m] - phase[0]).abs() > 1e-8 {
            return Err(Error::Winding(wind));
        }
        let logs: Vec<C> = g.iter().zip(&phase).map(|(z, &p)| C::new(z.norm().ln(), p)).collect();
        let c = fourier(&logs);
        let half = (m / 2) as i64;
        let tail = (half - 8..=half).map(|k| coeff(&c, k).norm().max(coeff(&c, -k).norm())).fold(0.0, f64::max);
        if tail < TAIL_TOL {
            let keep = |sign: i64| -> Vec<C> {
                let mut out: Vec<C> = (1..half).map(|k| coeff(&c, sign * k)).collect();
                // FFT round-off sits near 1e-17; drop the noise floor
                while out.last().is_some_and(|z| z.norm() < 1e-16) {
                    out.pop();
                }
                out
            };
            return Ok(WienerHopfFactors {
                u,
                gamma0: coeff(&c, 0).exp(),
                plus_modes: keep(1),
                minus_modes: keep(-1),
                samples: m,
            });
        }
        if m >= MAX_SAMPLES {
            return Err(Error::NoConvergence(tail));
        }
        m *= 2;
    }
}

/// Right-hand side of the resolvent generating function
/// `Σ w_+^{h+} R_{h+,h-} w_-^{-h- - 1}`.
pub fn kcsw_resolvent(f: &WienerHopfFactors, w_plus: C, w_minus: C) -> Result<C> {
    if w_plus.norm() >= 1.0 {
        return Err(Error::WrongSide(format!("|w_+| = {} must be < 1", w_plus.norm())));
    }
    if w_minus.norm() <= 1.0 {
        return Err(Error::WrongSide(format!("|w_-| = {} must be > 1", w_minus.norm())));
    }
    Ok(1.0 / (f.gamma0 * f.gamma_minus(w_minus) * f.gamma_plus(w_plus) * (w_minus - w_plus)))
}

/// `R_{h+,h-}` by double Fourier extraction from [`kcsw_resolvent`] on radii `rho`, `1/rho`.
pub fn kcsw_extract(f: &WienerHopfFactors, h_plus: usize, h_minus: usize, rho: f64, n: usize) -> Result<C> {
    let wp = circle(n, rho);
    let wm = circle(n, 1.0 / rho);
    let mut s = C::zero();
    for &a in &wp {
        for &b in &wm {
            s += kcsw_resolvent(f, a, b)? * a.powi(-(h_plus as i32)) * b.powi(h_minus as i32 + 1);
        }
    }
    Ok(s / (n * n) as f64)
}

fn require_real(v: &LaurentSymbol) -> Result<()> {
    if v.is_real() {
        Ok(())
    } else {
        Err(Error::NonReal)
    }
}

/// Minimum and maximum of `v` on the unit circle.
pub fn symbol_range(v: &LaurentSymbol) -> Result<(f64, f64)> {
    require_real(v)?;
    let m = DEFAULT_SAMPLES;
    let h = 2.0 * PI / m as f64;
    let refine = |sign: f64| -> f64 {
        let f = |t: f64| sign * v.eval_real(t);
        let j = (0..m).min_by(|&a, &b| f(a as f64 * h).total_cmp(&f(b as f64 * h))).unwrap();
        // golden-section search around the best sample
        let (mut a, mut b) = ((j as f64 - 1.0) * h, (j as f64 + 1.0) * h);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..100 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if f(c) < f(d) {
                b = d;
            } else {
                a = c;
            }
        }
        sign * f(0.5 * (a + b)).min(f(j as f64 * h))
    };
    Ok((refine(1.0), refine(-1.0)))
}

/// `ξ(c) = (1/2π) |{θ : v(e^{iθ}) < c}|`.
pub fn spectral_shift_cdf(v: &LaurentSymbol, c: f64) -> Result<f64> {
    require_real(v)?;
    let m = DEFAULT_SAMPLES.max(64 * v.support());
    let h = 2.0 * PI / m as f64;
    let f = |t: f64| v.eval_real(t) - c;
    let vals: Vec<f64> = (0..=m).map(|j| f(j as f64 * h)).collect();
    let mut measure = 0.0;
    for j in 0..m {
        let (a, b) = (vals[j], vals[j + 1]);
        let (ta, tb) = (j as f64 * h, (j + 1) as f64 * h);
        if a < 0.0 && b < 0.0 {
            measure += h;
        } else if (a < 0.0) != (b < 0.0) {
            let (mut lo, mut hi) = (ta, tb);
            let neg_left = a < 0.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (f(mid) < 0.0) == neg_left {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let root = 0.5 * (lo + hi);
            measure += if neg_left { root - ta } else { tb - root };
        }
    }
    Ok((measure / (2.0 * PI)).clamp(0.0, 1.0))
}

/// Limit-shape slope `f'(c) = 2ξ(c) - 1`.
pub fn limit_shape_slope(v: &LaurentSymbol, c: f64) -> Result<f64> {
    Ok(2.0 * spectral_shift_cdf(v, c)? - 1.0)
}

const GL8: [(f64, f64); 8] = [
    (-0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
    (-0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (-0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (-0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.183_434_642_495_649_8, 0.362_683_783_378_362),
    (0.525_532_409_916_329, 0.313_706_645_877_887_3),
    (0.796_666_477_413_626_7, 0.222_381_034_453_374_47),
    (0.960_289_856_497_536_3, 0.101_228_536_290_376_26),
];

/// `exp(∫ log(1/(u-c)) dξ(c))` by integration by parts against [`spectral_shift_cdf`].
///
/// Equals `R_{0,0}(u)` for real symbols.
pub fn markov_krein_r00(v: &LaurentSymbol, u: C, panels: usize) -> Result<C> {
    let (a, b) = symbol_range(v)?;
    if (b - a) < 1e-14 {
        return Ok(1.0 / (u - a));
    }
    // c = a + (b-a)(1 - cos t)/2 smooths the square-root edges of ξ
    let nodes: Vec<(f64, f64)> = (0..panels)
        .flat_map(|p| {
            let (t0, t1) = (PI * p as f64 / panels as f64, PI * (p + 1) as f64 / panels as f64);
            GL8.iter().map(move |&(x, wt)| (0.5 * (t0 + t1) + 0.5 * (t1 - t0) * x, 0.5 * (t1 - t0) * wt))
        })
        .collect();
    let integral: Result<Vec<C>> = nodes
        .par_iter()
        .map(|&(t, wt)| {
            let c = a + (b - a) * (1.0 - t.cos()) / 2.0;
            let dc = (b - a) * t.sin() / 2.0;
            Ok(spectral_shift_cdf(v, c)? / (u - c) * dc * wt)
        })
        .collect();
    let integral: C = integral?.into_iter().sum();
    Ok((-(u - b).ln() - integral).exp())
}

/// Transition density estimate `-Im R_{0,0}(c + iη)/π`.
pub fn transition_density(v: &LaurentSymbol, c: f64, eta: f64) -> Result<f64> {
    Ok(-wiener_hopf(v, C::new(c, eta))?.r00().im / PI)
}

fn zero_free(v: &LaurentSymbol, u: C, r: f64, m: usize) -> Result<bool> {
    let g: Vec<C> = circle(m, r).iter().map(|&w| u - v.eval(w)).collect();
    Ok(winding_number(&g)? == 0)
}

/// Contour radius offset with no zeros of `u_i - v` in `1-δ ≤ |w| ≤ 1+δ`.
fn safe_delta(v: &LaurentSymbol, us: &[C], m: usize) -> Result<f64> {
    let mut delta = v.contour_delta();
    for _ in 0..40 {
        let mut ok = true;
        for &u in us {
            let inner = zero_free(v, u, 1.0 - delta, m);
            let outer = zero_free(v, u, 1.0 + delta, m);
            if !matches!((inner, outer), (Ok(true), Ok(true))) {
                ok = false;
            }
        }
        if ok {
            return Ok(delta);
        }
        delta /= 2.0;
    }
    Err(Error::NearSpectrum(delta))
}

/// Bergman-kernel double contour integral
/// `(2πi)^{-2} ∬_{|w1|<|w2|} (u1-v(w1))^{-1} (u2-v(w2))^{-1} dw1 dw2/(w1-w2)^2`.
pub fn clt_covariance_stieltjes(v: &LaurentSymbol, u1: C, u2: C) -> Result<C> {
    clt_covariance_with(v, u1, u2, 1024)
}

pub fn clt_covariance_with(v: &LaurentSymbol, u1: C, u2: C, m: usize) -> Result<C> {
    for u in [u1, u2] {
        if zero_free(v, u, 1.0, DEFAULT_SAMPLES)? {
            continue;
        }
        return Err(Error::Winding(1));
    }
    let delta = safe_delta(v, &[u1, u2], DEFAULT_SAMPLES)?;
    let w1s = circle(m, 1.0 - delta);
    let w2s: Vec<C> = circle(m, 1.0 + delta).into_iter().map(|w| w * C::from_polar(1.0, PI / m as f64)).collect();
    let f1: Vec<C> = w1s.iter().map(|&w| w / (u1 - v.eval(w))).collect();
    let f2: Vec<C> = w2s.iter().map(|&w| w / (u2 - v.eval(w))).collect();
    let s: C = f1
        .par_iter()
        .zip(w1s.par_iter())
        .map(|(a, &x)| f2.iter().zip(&w2s).map(|(b, &y)| a * b / ((x - y) * (x - y))).sum::<C>())
        .sum();
    Ok(s / (m * m) as f64)
}

/// Laurent coefficients of `1/(u - v(w))` on the unit circle, FFT-indexed.
pub fn resolvent_symbol_modes(v: &LaurentSymbol, u: C, m: usize) -> Result<Vec<C>> {
    let g: Vec<C> = circle(m, 1.0).iter().map(|&w| u - v.eval(w)).collect();
    let min = g.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    if min < NEAR_TOL {
        return Err(Error::NearSpectrum(min));
    }
    Ok(fourier(&g.iter().map(|z| 1.0 / z).collect::<Vec<_>>()))
}

/// Welding route: `Σ_{k≥1} k a_{-k}(u1) a_k(u2)` with `a` the modes of `1/(u - v)`.
pub fn clt_covariance_welding(v: &LaurentSymbol, u1: C, u2: C) -> Result<C> {
    let m = DEFAULT_SAMPLES;
    let a1 = resolvent_symbol_modes(v, u1, m)?;
    let a2 = resolvent_symbol_modes(v, u2, m)?;
    Ok((1..(m / 2) as i64).map(|k| coeff(&a1, -k) * coeff(&a2, k) * k as f64).sum())
}

/// Mean shift `-(1/2πi) ∮ (u - v(w))^{-1} ∂_w log γ_+(w, u) dw`.
pub fn clt_mean_stieltjes(v: &LaurentSymbol, u: C) -> Result<C> {
    let f = wiener_hopf(v, u)?;
    let m = f.samples;
    let ws = circle(m, 1.0);
    let s: C = ws.par_iter().map(|&w| f.w_dlog_plus(w) / (u - v.eval(w))).sum();
    Ok(-s / m as f64)
}

/// Mean shift via `(1/R_{0,0}) Σ_h h R_{0,h} R_{h,0}`, summed until the terms fall below `1e-16`.
pub fn clt_mean_hsum(v: &LaurentSymbol, u: C) -> Result<C> {
    let f = wiener_hopf(v, u)?;
    let n = f.plus_modes.len().max(f.minus_modes.len()).max(8) * 8;
    let (gp, gm) = f.inverse_coefficients(n);
    let mut s = C::zero();
    for h in 1..=n {
        let t = resolvent_from(&gp, &gm, f.gamma0, 0, h) * resolvent_from(&gp, &gm, f.gamma0, h, 0) * h as f64;
        s += t;
        if t.norm() < 1e-17 && h > 8 {
            break;
        }
    }
    Ok(s / f.r00())
}

/// Green's function `(1/4π) log |(w1 - w̄2)/(w1 - w2)|^2` on the upper half circle.
pub fn gff_kernel(theta1: f64, theta2: f64) -> Result<f64> {
    for t in [theta1, theta2] {
        if !(0.0..=PI).contains(&t) {
            return Err(Error::InvalidArgument(format!("angle {t} outside [0, π]")));
        }
    }
    if (theta1 - theta2).abs() < 1e-12 {
        return Err(Error::Coincident);
    }
    let w1 = C::from_polar(1.0, theta1);
    let w2 = C::from_polar(1.0, theta2);
    Ok(((w1 - w2.conj()).norm() / (w1 - w2).norm()).ln() / (2.0 * PI))
}

/// `(1/π) Σ_{k ≤ kmax} sin(kθ1) sin(kθ2)/k`.
pub fn gff_sine_series(theta1: f64, theta2: f64, kmax: usize) -> f64 {
    (1..=kmax).map(|k| (k as f64 * theta1).sin() * (k as f64 * theta2).sin() / k as f64).sum::<f64>() / PI
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn semicircle(u: C) -> C {
        (u - (u - 2.0).sqrt() * (u + 2.0).sqrt()) / 2.0
    }

    #[test]
    fn vev_examples() {
        let p = ModeAssignment::real_from(&[(1, q(1))]);
        assert_eq!(toeplitz_vev_exact(&ModeAssignment::default(), 3, 0, 0), q(0));
        assert_eq!(toeplitz_vev_exact(&p, 2, 0, 0), q(1));
        assert_eq!(toeplitz_vev_exact(&p, 4, 0, 0), q(2));
        assert_eq!(toeplitz_vev_exact(&p, 6, 0, 0), q(5));
        let mut m = ModeAssignment::default();
        m.in_modes.insert(1, q(2));
        m.out_modes.insert(1, q(1));
        assert_eq!(toeplitz_vev_exact(&m, 2, 0, 0), q(2));
        assert!((toeplitz_vev(&LaurentSymbol::plancherel(), 6, 0, 0).re - 5.0).abs() < 1e-12);
        assert_eq!(lln_moment(&LaurentSymbol::plancherel(), 0), 1.0);
        assert_eq!(lln_moment(&LaurentSymbol::plancherel(), 3), 0.0);
    }

    #[test]
    fn winding_examples() {
        let ws = circle(256, 1.0);
        assert_eq!(winding_number(&ws).unwrap(), 1);
        let g: Vec<C> = ws.iter().map(|&w| 3.0 - (w + 1.0 / w)).collect();
        assert_eq!(winding_number(&g).unwrap(), 0);
        let g: Vec<C> = ws.iter().map(|&w| c(3.0, 4.0) - (w + 1.0 / w)).collect();
        assert_eq!(winding_number(&g).unwrap(), 0);
        let g: Vec<C> = ws.iter().map(|&w| w * w).collect();
        assert_eq!(winding_number(&g).unwrap(), 2);
        assert!(winding_number(&[C::zero(), c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn wiener_hopf_examples() {
        let f = wiener_hopf(&LaurentSymbol::zero(), c(2.0, 1.0)).unwrap();
        assert!((f.gamma0 - c(2.0, 1.0)).norm() < 1e-14);
        assert!(f.plus_modes.is_empty() && f.minus_modes.is_empty());
        let v = LaurentSymbol::plancherel();
        let f = wiener_hopf(&v, c(3.0, 0.0)).unwrap();
        assert!((f.r00().re - 0.381_966_011_250_105_1).abs() < 1e-12);
        let cm = (3.0 + 5f64.sqrt()) / 2.0;
        for w in [c(0.3, 0.1), c(-0.5, 0.2), c(0.0, 0.9)] {
            assert!((f.gamma_plus(w) * f.gamma0 - (cm - w)).norm() < 1e-12);
        }
        for u in [c(3.0, 0.0), c(4.0, 0.0), c(2.0, 1.0)] {
            assert!((wiener_hopf(&v, u).unwrap().r00() - semicircle(u)).norm() < 1e-12);
        }
        assert!(matches!(wiener_hopf(&v, c(1.0, 0.0)), Err(Error::NearSpectrum(_)) | Err(Error::Winding(_))));
    }

    #[test]
    fn kcsw_examples() {
        let f = wiener_hopf(&LaurentSymbol::zero(), c(2.0, 0.0)).unwrap();
        assert!((f.resolvent_element(3, 3) - 0.5).norm() < 1e-14);
        assert!(f.resolvent_element(1, 3).norm() < 1e-14);
        let v = LaurentSymbol::plancherel();
        let f = wiener_hopf(&v, c(3.0, 0.0)).unwrap();
        let r = kcsw_extract(&f, 0, 0, 0.5, 64).unwrap();
        assert!((r - f.r00()).norm() < 1e-10);
        let r12 = kcsw_extract(&f, 1, 2, 0.5, 64).unwrap();
        assert!((r12 - f.resolvent_element(1, 2)).norm() < 1e-10);
        assert!((neumann_r00(&v, c(3.0, 0.0), 40) - f.r00()).norm() < 1e-8);
        assert!(kcsw_resolvent(&f, c(1.5, 0.0), c(2.0, 0.0)).is_err());
    }

    #[test]
    fn shift_and_slope_examples() {
        let v = LaurentSymbol::plancherel();
        assert!((spectral_shift_cdf(&v, 0.0).unwrap() - 0.5).abs() < 1e-12);
        assert!((limit_shape_slope(&v, 1.0).unwrap() - 1.0 / 3.0).abs() < 1e-10);
        assert_eq!(spectral_shift_cdf(&v, 3.0).unwrap(), 1.0);
        assert_eq!(spectral_shift_cdf(&v, -3.0).unwrap(), 0.0);
        let mut m = BTreeMap::new();
        m.insert(1, c(1.0, 1.0));
        let nonreal = LaurentSymbol::new(m).unwrap();
        assert_eq!(spectral_shift_cdf(&nonreal, 0.0), Err(Error::NonReal));
    }

    #[test]
    fn covariance_examples() {
        let z = clt_covariance_stieltjes(&LaurentSymbol::zero(), c(3.0, 0.0), c(4.0, 0.0)).unwrap();
        assert!(z.norm() < 1e-14);
        let v = LaurentSymbol::plancherel();
        let a = clt_covariance_stieltjes(&v, c(3.0, 0.0), c(2.0, 1.0)).unwrap();
        let b = clt_covariance_stieltjes(&v, c(2.0, 1.0), c(3.0, 0.0)).unwrap();
        assert!((a - b).norm() < 1e-10);
        let w = clt_covariance_welding(&v, c(3.0, 0.0), c(2.0, 1.0)).unwrap();
        assert!((a - w).norm() < 1e-10);
    }

    #[test]
    fn mean_examples() {
        assert!(clt_mean_stieltjes(&LaurentSymbol::zero(), c(3.0, 0.0)).unwrap().norm() < 1e-14);
        let v = LaurentSymbol::plancherel();
        let m = clt_mean_stieltjes(&v, c(3.0, 0.0)).unwrap();
        assert!((m.re - 0.076_393_202_250_021).abs() < 1e-12);
        let u = c(2.0, 1.0);
        assert!((clt_mean_stieltjes(&v, u).unwrap() - clt_mean_hsum(&v, u).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn gff_examples() {
        let a = gff_kernel(PI / 2.0, PI / 3.0).unwrap();
        assert!((a - gff_sine_series(PI / 2.0, PI / 3.0, 100_000)).abs() < 1e-5);
        assert!((a - gff_kernel(PI / 3.0, PI / 2.0).unwrap()).abs() < 1e-15);
        assert!(gff_kernel(1.0, 1e-9).unwrap().abs() < 1e-8);
        assert!(gff_kernel(1.0, PI).unwrap().abs() < 1e-12);
        assert_eq!(gff_kernel(1.0, 1.0), Err(Error::Coincident));
    }

    #[test]
    fn markov_krein_matches_zero_mode() {
        let v = LaurentSymbol::plancherel();
        for u in [c(3.0, 0.0), c(2.0, 1.0)] {
            let mk = markov_krein_r00(&v, u, 64).unwrap();
            assert!((mk - semicircle(u)).norm() < 1e-6, "{mk} vs {}", semicircle(u));
        }
    }

    #[test]
    fn spectral_inclusion() {
        let v = LaurentSymbol::plancherel();
        let (a, b) = symbol_range(&v).unwrap();
        assert!((a + 2.0).abs() < 1e-12 && (b - 2.0).abs() < 1e-12);
        assert!(transition_density(&v, 2.5, 1e-2).unwrap().abs() < 1e-2);
        assert!(transition_density(&v, -2.5, 1e-2).unwrap().abs() < 1e-2);
        assert!(transition_density(&v, 0.0, 1e-2).unwrap() > 0.3);
    }
}
