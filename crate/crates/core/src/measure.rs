//! Jack measures on partitions, truncated at a maximal degree.
//!
//! `Prob(λ) = P_λ(V̄) P_λ(V) / ⟨P_λ,P_λ⟩ / Π` with
//! `Π = exp(Σ_k V̄_k V_k / ((-ε1ε2) k))`. The rational part is exact; only the
//! factor `1/Π` is evaluated in floating point.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cumulant::{mobius_weight, set_partitions};
use crate::error::{Error, Result};
use crate::fock::{evaluate, monomial_norm, FockVector, ModeAssignment};
use crate::jack::jack_basis;
use crate::lax::hamiltonian;
use crate::partition::{arm_leg, ch_vee_list, EpsilonPair, Partition};
use crate::rational::{exp_series, qu, series_mul, to_f64, Q};

pub const DEFAULT_THRESHOLD: f64 = 1e-6;

/// Parameters of a truncated Jack measure.
#[derive(Clone, Debug, PartialEq)]
pub struct JackMeasureSpec {
    pub eps: EpsilonPair,
    pub modes: ModeAssignment,
    /// Maximal degree `D` kept in sums.
    pub truncation: usize,
    /// Optional decay radius `r` with `|V_k| ≤ r^k`; informational only.
    pub radius: Option<f64>,
    pub threshold: f64,
}

impl JackMeasureSpec {
    /// Rejects non-real mode assignments.
    pub fn new(eps: EpsilonPair, modes: ModeAssignment, truncation: usize) -> Result<Self> {
        if !modes.is_real() {
            return Err(Error::NonReal);
        }
        Ok(JackMeasureSpec { eps, modes, truncation, radius: None, threshold: DEFAULT_THRESHOLD })
    }

    /// `Σ_k V̄_k V_k / ((-ε1ε2) k)`, so that `Π = exp` of it.
    pub fn kernel_exponent(&self) -> Q {
        let prod = self.eps.prod();
        (1..=self.modes.support())
            .map(|k| self.modes.out_value(k) * self.modes.in_value(k) / (&prod * qu(k)))
            .sum()
    }

    /// Degree-graded coefficients of `Π`, up to degree `n`.
    pub fn kernel_series(&self, n: usize) -> Vec<Q> {
        kernel_series(&self.eps, &self.modes, n, false)
    }

    /// Smallest `D` for which the deficit drops below the threshold.
    pub fn required_truncation(&self) -> usize {
        let x = to_f64(&self.kernel_exponent());
        let mut d = 0;
        loop {
            let s: f64 = self.kernel_series(d).iter().map(to_f64).sum();
            if 1.0 - s * (-x).exp() < self.threshold || d >= 200 {
                return d;
            }
            d += 1;
        }
    }
}

/// Graded coefficients of `Π^{±1}`.
fn kernel_series(eps: &EpsilonPair, modes: &ModeAssignment, n: usize, inverse: bool) -> Vec<Q> {
    let prod = eps.prod();
    let mut a = vec![Q::zero(); n + 1];
    for (k, slot) in a.iter_mut().enumerate().skip(1) {
        let x = modes.out_value(k) * modes.in_value(k) / (&prod * qu(k));
        *slot = if inverse { -x } else { x };
    }
    exp_series(&a, n)
}

/// `P_λ(V̄) P_λ(V)/⟨P_λ,P_λ⟩` for arbitrary (not necessarily real) modes.
pub fn kernel_weight(lambda: &Partition, eps: &EpsilonPair, modes: &ModeAssignment) -> Result<Q> {
    let d = lambda.degree();
    let basis = jack_basis(d, eps)?;
    let p = &basis.vectors[lambda];
    let a = evaluate(p, &modes.out_filled(d))?;
    if a.is_zero() {
        return Ok(Q::zero());
    }
    let b = evaluate(p, &modes.in_filled(d))?;
    Ok(a * b / &basis.norms[lambda])
}

/// All kernel weights up to the truncation degree, in degree order.
#[derive(Clone, Debug)]
pub struct MeasureTable {
    pub spec: JackMeasureSpec,
    pub entries: Vec<(Partition, Q)>,
    /// `exp(-Σ V̄_k V_k/((-ε1ε2)k))`.
    pub prefactor: f64,
}

impl MeasureTable {
    pub fn new(spec: &JackMeasureSpec) -> Result<Self> {
        let mut entries = Vec::new();
        for lambda in Partition::up_to(spec.truncation) {
            let w = kernel_weight(&lambda, &spec.eps, &spec.modes)?;
            entries.push((lambda, w));
        }
        let prefactor = (-to_f64(&spec.kernel_exponent())).exp();
        Ok(MeasureTable { spec: spec.clone(), entries, prefactor })
    }

    pub fn deficit(&self) -> f64 {
        let s: Q = self.entries.iter().map(|(_, w)| w.clone()).sum();
        1.0 - to_f64(&s) * self.prefactor
    }

    fn check_deficit(&self) -> Result<()> {
        let deficit = self.deficit();
        if deficit > self.spec.threshold {
            return Err(Error::DeficitTooLarge {
                deficit,
                threshold: self.spec.threshold,
                required: self.spec.required_truncation(),
            });
        }
        Ok(())
    }

    /// `G_d = Σ_{|λ|=d} ∏ ch^∨_{ℓ_i}(λ) · weight(λ)`, for `d ≤ D`.
    pub fn moment_series(&self, ells: &[usize]) -> Vec<Q> {
        let max_l = ells.iter().copied().max().unwrap_or(0);
        let mut g = vec![Q::zero(); self.spec.truncation + 1];
        for (lambda, w) in &self.entries {
            if w.is_zero() {
                continue;
            }
            let ev = ch_vee_list(lambda, &self.spec.eps, max_l);
            let mut x = w.clone();
            for &l in ells {
                x *= &ev[l];
            }
            g[lambda.degree()] += x;
        }
        g
    }

    /// Moment with `Π` divided out, graded by degree: exact polynomial coefficients.
    pub fn stripped_moment_series(&self, ells: &[usize]) -> Vec<Q> {
        let n = self.spec.truncation;
        let inv = kernel_series(&self.spec.eps, &self.spec.modes, n, true);
        series_mul(&self.moment_series(ells), &inv, n)
    }

    /// Graded joint cumulant with `Π` divided out.
    pub fn stripped_cumulant_series(&self, ells: &[usize]) -> Vec<Q> {
        let n = self.spec.truncation;
        let mut out = vec![Q::zero(); n + 1];
        for pi in set_partitions(ells.len()) {
            let mut term = vec![Q::zero(); n + 1];
            term[0] = Q::one();
            for block in &pi {
                let sub: Vec<usize> = block.iter().map(|&i| ells[i]).collect();
                term = series_mul(&term, &self.stripped_moment_series(&sub), n);
            }
            let c = Q::from_integer(mobius_weight(pi.len()).into());
            for (o, t) in out.iter_mut().zip(term) {
                *o += &c * t;
            }
        }
        out
    }

    pub fn expectation(&self, ells: &[usize]) -> Result<f64> {
        self.check_deficit()?;
        let s: Q = self.moment_series(ells).into_iter().sum();
        Ok(to_f64(&s) * self.prefactor)
    }

    pub fn joint_cumulant(&self, ells: &[usize]) -> Result<f64> {
        self.check_deficit()?;
        let mut total = 0.0;
        for pi in set_partitions(ells.len()) {
            let mut term = mobius_weight(pi.len()) as f64;
            for block in &pi {
                let sub: Vec<usize> = block.iter().map(|&i| ells[i]).collect();
                let s: Q = self.moment_series(&sub).into_iter().sum();
                term *= to_f64(&s) * self.prefactor;
            }
            total += term;
        }
        Ok(total)
    }

    /// Inverse-CDF sampler over the truncated support.
    pub fn sampler(&self) -> Result<Sampler> {
        self.check_deficit()?;
        let mut acc = 0.0;
        let mut cdf = Vec::new();
        for (lambda, w) in &self.entries {
            if w.is_zero() {
                continue;
            }
            acc += to_f64(w) * self.prefactor;
            cdf.push((acc, lambda.clone()));
        }
        Ok(Sampler { cdf })
    }
}

/// Cumulative table of the truncated measure.
#[derive(Clone, Debug)]
pub struct Sampler {
    cdf: Vec<(f64, Partition)>,
}

impl Sampler {
    /// Draws with probability `Prob(λ) / (1 - deficit)`.
    pub fn draw(&self, rng: &mut impl Rng) -> Partition {
        let Some((total, _)) = self.cdf.last() else {
            return Partition::empty();
        };
        let u = rng.random::<f64>() * total;
        let i = self.cdf.partition_point(|(c, _)| *c <= u).min(self.cdf.len() - 1);
        self.cdf[i].1.clone()
    }
}

pub fn probability(spec: &JackMeasureSpec, lambda: &Partition) -> Result<f64> {
    if lambda.degree() > spec.truncation {
        return Err(Error::DegreeTooLarge { degree: lambda.degree(), limit: spec.truncation });
    }
    let w = kernel_weight(lambda, &spec.eps, &spec.modes)?;
    Ok(to_f64(&w) * (-to_f64(&spec.kernel_exponent())).exp())
}

pub fn normalization_deficit(spec: &JackMeasureSpec) -> Result<f64> {
    Ok(MeasureTable::new(spec)?.deficit())
}

pub fn sample(spec: &JackMeasureSpec, seed: u64) -> Result<Partition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(MeasureTable::new(spec)?.sampler()?.draw(&mut rng))
}

/// `count` independent draws from one seeded stream.
pub fn sample_many(spec: &JackMeasureSpec, count: usize, seed: u64) -> Result<Vec<Partition>> {
    let sampler = MeasureTable::new(spec)?.sampler()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count).map(|_| sampler.draw(&mut rng)).collect())
}

pub fn expectation_bruteforce(spec: &JackMeasureSpec, ells: &[usize]) -> Result<f64> {
    MeasureTable::new(spec)?.expectation(ells)
}

pub fn joint_cumulants_bruteforce(spec: &JackMeasureSpec, ells: &[usize]) -> Result<f64> {
    MeasureTable::new(spec)?.joint_cumulant(ells)
}

/// `G_d` computed by applying `O_ℓ` to the truncated kernel `Π_D(V̄)` and
/// evaluating at the out modes; equals [`MeasureTable::moment_series`] for one `ℓ`.
pub fn swindle_series(spec: &JackMeasureSpec, l: usize) -> Result<Vec<Q>> {
    let n = spec.truncation;
    let mut kernel = FockVector::zero();
    let vin = spec.modes.in_filled(n);
    for mu in Partition::up_to(n) {
        let mut c = Q::one() / monomial_norm(&mu, &spec.eps);
        for k in mu.parts() {
            c *= &vin[k];
        }
        kernel.add_term(mu, c);
    }
    let image = hamiltonian(l, &kernel, &spec.eps);
    let vout = spec.modes.out_filled(n);
    (0..=n).map(|d| evaluate(&image.component(d), &vout)).collect()
}

/// Unnormalized arm/leg product for the Jack-Plancherel measure.
pub fn jack_plancherel_weight(lambda: &Partition, eps: &EpsilonPair) -> Q {
    let (e1, e2) = (eps.eps1(), eps.eps2());
    let num = e1 * e1 / eps.prod();
    let mut w = Q::one();
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).expect("box in diagram");
        let f1 = -(e2 * qu(l + 1)) + e1 * qu(a);
        let f2 = -(e2 * qu(l)) + e1 * qu(a + 1);
        w *= &num / (f1 * f2);
    }
    w
}

/// Micro-canonical probability `Prob(λ | |λ|)`.
pub fn jack_plancherel_prob(lambda: &Partition, eps: &EpsilonPair) -> Q {
    let total: Q = Partition::all(lambda.degree()).iter().map(|m| jack_plancherel_weight(m, eps)).sum();
    jack_plancherel_weight(lambda, eps) / total
}

/// Poissonized probability: degree ~ Poisson(1/(-ε1ε2)), then micro-canonical.
pub fn jack_plancherel_poissonized(lambda: &Partition, eps: &EpsilonPair) -> f64 {
    let rate = 1.0 / to_f64(&eps.prod());
    let d = lambda.degree();
    let mut poisson = (-rate).exp();
    for k in 1..=d {
        poisson *= rate / k as f64;
    }
    poisson * to_f64(&jack_plancherel_prob(lambda, eps))
}
