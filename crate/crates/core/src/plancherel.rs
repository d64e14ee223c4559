//! Closed forms for the Plancherel symbol `v(w) = w + 1/w`.
//!
//! Square root branch: `√(u²-4) = √(u-2)·√(u+2)` with principal roots, analytic
//! off `[-2, 2]` and `~ u` at infinity, so `C_+(u) → 0`.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::cumulant::{mobius_weight, set_partitions};
use crate::fock::KernelPoly;
use crate::partition::{arm_leg, EpsilonPair, Partition};
use crate::rational::{factorial, pow, Q};

type C = Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Catalan number `C_ℓ`; overflows past `ℓ = 66`.
pub fn catalan(l: usize) -> Result<u128> {
    let mut c: u128 = 1;
    for n in 0..l as u128 {
        c = c
            .checked_mul(2 * (2 * n + 1))
            .ok_or_else(|| Error::InvalidArgument(format!("catalan({l}) overflows u128")))?
            / (n + 2);
    }
    Ok(c)
}

pub fn sqrt_disc(u: C) -> C {
    (u - 2.0).sqrt() * (u + 2.0).sqrt()
}

/// `C_±(u) = (u ∓ √(u²-4))/2`.
pub fn semicircle_c(u: C, sign: Sign) -> C {
    match sign {
        Sign::Plus => (u - sqrt_disc(u)) / 2.0,
        Sign::Minus => (u + sqrt_disc(u)) / 2.0,
    }
}

/// `(2/π) arcsin(c/2)`, clamped to `±1` outside `[-2, 2]`.
pub fn vkls_slope(c: f64) -> f64 {
    (2.0 / PI) * (c / 2.0).clamp(-1.0, 1.0).asin()
}

fn off_cut(u: C) -> Result<()> {
    if u.im == 0.0 && u.re.abs() <= 2.0 {
        return Err(Error::NearSpectrum(0.0));
    }
    Ok(())
}

/// Truncated covariance series and a bound on the omitted tail.
#[derive(Clone, Copy, Debug)]
pub struct SeriesValue {
    pub value: C,
    pub tail_bound: f64,
}

/// `Σ_{k ≤ kmax} k U_k(u1) U_k(u2)` with `U_k(u) = C_+(u)^k / √(u²-4)`, the
/// Laurent modes of `1/(u - w - 1/w)`.
pub fn kerov_cov_stieltjes(u1: C, u2: C, kmax: usize) -> Result<SeriesValue> {
    off_cut(u1)?;
    off_cut(u2)?;
    let x = semicircle_c(u1, Sign::Plus) * semicircle_c(u2, Sign::Plus);
    let scale = 1.0 / (sqrt_disc(u1) * sqrt_disc(u2));
    let mut value = C::zero();
    let mut xk = C::one();
    for k in 1..=kmax {
        xk *= x;
        value += xk * k as f64;
    }
    let r = x.norm();
    let n = kmax as f64 + 1.0;
    // Σ_{k>kmax} k r^k ≤ r^{n} (n/(1-r) + r/(1-r)^2)
    let tail_bound = scale.norm() * r.powf(n) * (n / (1.0 - r) + r / ((1.0 - r) * (1.0 - r)));
    Ok(SeriesValue { value: value * scale, tail_bound })
}

/// Closed form of the full series: `x/((1-x)^2 √(u1²-4) √(u2²-4))`, `x = C_+(u1) C_+(u2)`.
pub fn kerov_cov_closed(u1: C, u2: C) -> Result<C> {
    off_cut(u1)?;
    off_cut(u2)?;
    let x = semicircle_c(u1, Sign::Plus) * semicircle_c(u2, Sign::Plus);
    Ok(x / ((1.0 - x) * (1.0 - x) * sqrt_disc(u1) * sqrt_disc(u2)))
}

/// `C_+(u)/(u² - 4)`.
pub fn plancherel_mean_stieltjes(u: C) -> Result<C> {
    off_cut(u)?;
    Ok(semicircle_c(u, Sign::Plus) / (u * u - 4.0))
}

/// Same quantity from the weak derivative of `-(1/2π) arcsin(c/2)`: the
/// absolutely continuous part by trapezoid in `c = 2cos t` plus atoms `1/4` at `±2`.
pub fn plancherel_mean_quadrature(u: C, n: usize) -> Result<C> {
    off_cut(u)?;
    // ∫_0^π = (1/2) ∫_0^{2π} for an even periodic integrand
    let h = 2.0 * PI / n as f64;
    let s: C = (0..n).map(|j| 1.0 / (u - 2.0 * (j as f64 * h).cos())).sum::<C>() * h / 2.0;
    Ok(-s / (2.0 * PI) + 0.25 * (1.0 / (u - 2.0) + 1.0 / (u + 2.0)))
}

/// `(d)_e / d^e`.
fn falling_ratio(d: u64, e: usize) -> Q {
    let mut r = Q::one();
    let dq = Q::from_integer(BigInt::from(d));
    for i in 0..e as u64 {
        r *= Q::from_integer(BigInt::from(d) - BigInt::from(i)) / &dq;
    }
    r
}

/// `κ = Σ_π (-1)^{|π|-1}(|π|-1)! ∏_B (d)_{e_B}/d^{e_B}`.
pub fn depoisson_kappa(es: &[usize], d: u64) -> Result<Q> {
    if es.contains(&0) || d == 0 {
        return Err(Error::InvalidArgument("need e_i >= 1 and d >= 1".into()));
    }
    let mut k = Q::zero();
    for pi in set_partitions(es.len()) {
        let mut t = Q::from_integer(mobius_weight(pi.len()).into());
        for b in &pi {
            t *= falling_ratio(d, b.iter().map(|&i| es[i]).sum());
        }
        k += t;
    }
    Ok(k)
}

/// `S(u) = Σ_{e ≤ emax} (e+1) u^{-2e-1} C_e`.
pub fn micro_s(u: C, emax: usize) -> Result<C> {
    let mut s = C::zero();
    for e in 0..=emax {
        s += (e as f64 + 1.0) * catalan(e)? as f64 * u.powi(-(2 * e as i32) - 1);
    }
    Ok(s)
}

/// `1/√(u²-4)`, the limit of [`micro_s`].
pub fn micro_s_closed(u: C) -> Result<C> {
    off_cut(u)?;
    Ok(1.0 / sqrt_disc(u))
}

/// `-Σ_{e1,e2 ≤ emax} (e1+1)(e2+1) u1^{-2e1-1} u2^{-2e2-1} C_{e1} C_{e2}`.
pub fn micro_cov_correction(u1: C, u2: C, emax: usize) -> Result<C> {
    let term = |u: C, e: usize| -> Result<C> {
        Ok((e as f64 + 1.0) * catalan(e)? as f64 * u.powi(-(2 * e as i32) - 1))
    };
    let mut s = C::zero();
    for e1 in 0..=emax {
        let a = term(u1, e1)?;
        for e2 in 0..=emax {
            s += a * term(u2, e2)?;
        }
    }
    Ok(-s)
}

/// `d! / ∏ hooks`.
pub fn dim_hook(lambda: &Partition) -> BigInt {
    let mut hooks = BigInt::one();
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).expect("box in diagram");
        hooks *= BigInt::from(a + l + 1);
    }
    factorial(lambda.degree()) / hooks
}

/// `(V̄_1 V_1)^d / d!`.
pub fn micro_partition_function(d: usize) -> KernelPoly {
    let ones = Partition::from_multiset(vec![1; d]);
    let mut k = KernelPoly::zero();
    k.add_term(ones.clone(), ones, Q::from_integer(BigInt::one()) / Q::from_integer(factorial(d)));
    k
}

/// `[V̄_{-1}, Π_d] = (-ε1ε2) V_1 Π_{d-1}`, checked exactly.
pub fn micro_shift_holds(d: usize, eps: &EpsilonPair) -> bool {
    if d == 0 {
        return micro_partition_function(0).annihilate_left(1, eps).is_zero();
    }
    let lhs = micro_partition_function(d).annihilate_left(1, eps);
    let rhs = micro_partition_function(d - 1).create_right(1, &eps.prod());
    lhs == rhs
}

/// `Σ_{|λ|=d} dim(λ)^2 = d!`.
pub fn dim_squares_sum(d: usize) -> BigInt {
    Partition::all(d).iter().map(|l| pow(&Q::from_integer(dim_hook(l)), 2).to_integer()).sum()
}
