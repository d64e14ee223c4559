//! Jack polynomials as joint eigenvectors of the Hamiltonians `O_ℓ`.
//!
//! Fock variables relate to power sums by `V_k = (-ε2) p_k`. Jacks are
//! P-normalized: the coefficient of the monomial symmetric function `m_λ` is 1.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{inner, FockVector, KernelPoly};
use crate::lax::hamiltonian_sweep;
use crate::linalg::{inverse, nullspace, Matrix};
use crate::partition::{ch_vee_list, EpsilonPair, Partition};
use crate::rational::{pow, qu, Q};

/// Default ceiling on the degree of tabulated bases.
pub const MAX_DEGREE: usize = 14;

/// Transition matrices between power sums and monomial symmetric functions.
#[derive(Clone, Debug)]
pub struct TransitionTable {
    pub degree: usize,
    /// Partitions of `degree`, indexing rows and columns.
    pub partitions: Vec<Partition>,
    /// `p_μ = Σ_ν p_to_m[μ][ν] m_ν`.
    pub p_to_m: Matrix,
    /// `m_μ = Σ_ν m_to_p[μ][ν] p_ν`.
    pub m_to_p: Matrix,
}

impl TransitionTable {
    pub fn index(&self, mu: &Partition) -> Option<usize> {
        self.partitions.iter().position(|p| p == mu)
    }
}

/// Multiplies a monomial-basis expansion by `p_k`.
fn mul_by_power_sum(k: usize, f: &BTreeMap<Partition, Q>) -> BTreeMap<Partition, Q> {
    let mut out: BTreeMap<Partition, Q> = BTreeMap::new();
    for (nu, c) in f {
        let mut values: Vec<usize> = nu.parts().to_vec();
        values.push(0);
        values.dedup();
        for v in values {
            let next = match v {
                0 => nu.with_part(k),
                _ => nu.without_part(v).unwrap().with_part(v + k),
            };
            let mult = next.multiplicity(v + k);
            *out.entry(next).or_insert_with(Q::zero) += c * qu(mult);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn power_to_monomial(d: usize) -> Result<TransitionTable> {
    if d > MAX_DEGREE {
        return Err(Error::DegreeTooLarge { degree: d, limit: MAX_DEGREE });
    }
    let partitions = Partition::all(d);
    let p_to_m: Matrix = partitions
        .iter()
        .map(|mu| {
            let mut f: BTreeMap<Partition, Q> = BTreeMap::new();
            f.insert(Partition::empty(), Q::one());
            for &k in mu.parts() {
                f = mul_by_power_sum(k, &f);
            }
            partitions.iter().map(|nu| f.get(nu).cloned().unwrap_or_else(Q::zero)).collect()
        })
        .collect();
    let m_to_p = inverse(&p_to_m).expect("power sums form a basis");
    Ok(TransitionTable { degree: d, partitions, p_to_m, m_to_p })
}

/// The Jack polynomials of one degree.
#[derive(Clone, Debug)]
pub struct JackBasis {
    pub degree: usize,
    pub eps: EpsilonPair,
    pub vectors: BTreeMap<Partition, FockVector>,
    pub norms: BTreeMap<Partition, Q>,
}

impl JackBasis {
    /// Coefficients of `P_λ` in the power sums `p_μ`.
    pub fn in_power_sums(&self, lambda: &Partition) -> FockVector {
        // V_μ = (-ε2)^{ℓ(μ)} p_μ
        self.vectors[lambda].rescale_modes(&-self.eps.eps2().clone())
    }

    /// Coefficients of `P_λ` in the monomial basis, keyed by partition.
    pub fn in_monomials(&self, lambda: &Partition, table: &TransitionTable) -> BTreeMap<Partition, Q> {
        let p = self.in_power_sums(lambda);
        let mut out = BTreeMap::new();
        for (j, nu) in table.partitions.iter().enumerate() {
            let mut s = Q::zero();
            for (mu, c) in p.terms() {
                let i = table.index(mu).expect("homogeneous");
                s += c * &table.p_to_m[i][j];
            }
            if !s.is_zero() {
                out.insert(nu.clone(), s);
            }
        }
        out
    }
}

/// Matrices of `O_ℓ` on the degree-`d` monomials, for `ℓ = 0..=max_l`.
///
/// `mats[ℓ][i][j]` is the coefficient of `V_{μ_i}` in `O_ℓ V_{μ_j}`.
fn hamiltonian_matrices(basis: &[Partition], max_l: usize, eps: &EpsilonPair) -> Vec<Matrix> {
    let n = basis.len();
    let columns: Vec<Vec<FockVector>> = basis
        .par_iter()
        .map(|mu| hamiltonian_sweep(max_l, &FockVector::monomial(mu.clone(), Q::one()), eps))
        .collect();
    (0..=max_l)
        .map(|l| {
            (0..n)
                .map(|i| (0..n).map(|j| columns[j][l].coeff(&basis[i])).collect())
                .collect()
        })
        .collect()
}

/// Joint kernel of `O_ℓ - ev[ℓ]` for `ℓ` in `2..=max_l`, as column vectors.
fn joint_kernel(mats: &[Matrix], ev: &[Q], max_l: usize) -> Vec<Vec<Q>> {
    let n = mats[0].len();
    // current subspace spanned by columns of `span` (n × r)
    let mut span: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect();
    let mut r = n;
    for l in 2..=max_l {
        if r == 0 {
            break;
        }
        // A = (M_l - ev I) · span
        let m = &mats[l];
        let a: Matrix = (0..n)
            .map(|i| {
                (0..r)
                    .map(|c| {
                        let mut s = Q::zero();
                        for k in 0..n {
                            let x = &span[k][c];
                            if x.is_zero() {
                                continue;
                            }
                            let mut coef = m[i][k].clone();
                            if i == k {
                                coef -= &ev[l];
                            }
                            if !coef.is_zero() {
                                s += coef * x;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        let ns = nullspace(&a, r);
        let r2 = ns.len();
        if r2 == r {
            continue;
        }
        span = (0..n)
            .map(|i| {
                (0..r2)
                    .map(|c| {
                        let mut s = Q::zero();
                        for (k, nk) in ns[c].iter().enumerate() {
                            if !nk.is_zero() {
                                s += &span[i][k] * nk;
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        r = r2;
    }
    (0..r).map(|c| (0..n).map(|i| span[i][c].clone()).collect()).collect()
}

/// Builds `P_λ` for all `|λ| = d` from the Hamiltonians.
pub fn jack_basis(d: usize, eps: &EpsilonPair) -> Result<Arc<JackBasis>> {
    type Key = (usize, EpsilonPair);
    static CACHE: OnceLock<Mutex<HashMap<Key, Arc<JackBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (d, eps.clone());
    if let Some(b) = cache.lock().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let b = Arc::new(build_jack_basis(d, eps)?);
    cache.lock().unwrap().insert(key, b.clone());
    Ok(b)
}

fn build_jack_basis(d: usize, eps: &EpsilonPair) -> Result<JackBasis> {
    let table = power_to_monomial(d)?;
    let basis = &table.partitions;
    let first = (d + 1).max(2);
    let mut mats = hamiltonian_matrices(basis, first, eps);
    let kernels = |mats: &Vec<Matrix>, max_l: usize| -> Vec<Vec<Vec<Q>>> {
        basis
            .par_iter()
            .map(|lambda| joint_kernel(mats, &ch_vee_list(lambda, eps, max_l), max_l))
            .collect()
    };
    let mut ker = kernels(&mats, first);
    if ker.iter().any(|k| k.len() != 1) && 2 * d > first {
        mats = hamiltonian_matrices(basis, 2 * d, eps);
        ker = kernels(&mats, 2 * d);
    }
    let minus_e2 = -eps.eps2().clone();
    let mut vectors = BTreeMap::new();
    let mut norms = BTreeMap::new();
    for (li, (lambda, k)) in basis.iter().zip(ker).enumerate() {
        if k.len() != 1 {
            return Err(Error::Degenerate { partition: lambda.to_string(), dim: k.len() });
        }
        let x = &k[0];
        // coefficient of m_λ after V_μ = (-ε2)^{ℓ(μ)} p_μ
        let mut lead = Q::zero();
        for (i, mu) in basis.iter().enumerate() {
            if !x[i].is_zero() {
                lead += &x[i] * pow(&minus_e2, mu.len()) * &table.p_to_m[i][li];
            }
        }
        let scale = Q::one() / lead;
        let mut v = FockVector::zero();
        for (i, mu) in basis.iter().enumerate() {
            v.add_term(mu.clone(), &x[i] * &scale);
        }
        norms.insert(lambda.clone(), inner(&v, &v, eps));
        vectors.insert(lambda.clone(), v);
    }
    Ok(JackBasis { degree: d, eps: eps.clone(), vectors, norms })
}

/// `Σ_λ P_λ(V̄) P_λ(V)/⟨P_λ,P_λ⟩` minus the degree-`d` Cauchy kernel component.
pub fn stanley_cauchy_component(d: usize, eps: &EpsilonPair) -> Result<KernelPoly> {
    let basis = jack_basis(d, eps)?;
    let mut lhs = KernelPoly::zero();
    for (lambda, p) in &basis.vectors {
        lhs.add_tensor(p, p, &(Q::one() / &basis.norms[lambda]));
    }
    Ok(lhs.sub(&KernelPoly::cauchy_component(d, eps)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn p(v: &[usize]) -> Partition {
        Partition::from_multiset(v.to_vec())
    }

    #[test]
    fn transition_examples() {
        let t = power_to_monomial(2).unwrap();
        let i11 = t.index(&p(&[1, 1])).unwrap();
        let i2 = t.index(&p(&[2])).unwrap();
        assert_eq!(t.p_to_m[i11][i11], q(2));
        assert_eq!(t.p_to_m[i11][i2], q(1));
        assert_eq!(t.p_to_m[i2][i2], q(1));
        assert_eq!(t.p_to_m[i2][i11], q(0));
        let t1 = power_to_monomial(1).unwrap();
        assert_eq!(t1.p_to_m, vec![vec![q(1)]]);
        let t3 = power_to_monomial(3).unwrap();
        let i3 = t3.index(&p(&[3])).unwrap();
        for (j, x) in t3.p_to_m[i3].iter().enumerate() {
            assert_eq!(*x, if j == i3 { q(1) } else { q(0) });
        }
    }

    #[test]
    fn degree_one_and_two() {
        let e = EpsilonPair::int(-1, 2);
        let b1 = jack_basis(1, &e).unwrap();
        // P_(1) = V_1 / (-ε2)
        assert_eq!(b1.vectors[&p(&[1])], FockVector::mode(1));
        let b2 = jack_basis(2, &e).unwrap();
        let alpha = e.alpha();
        let p2 = b2.in_power_sums(&p(&[2]));
        assert_eq!(p2.coeff(&p(&[2])), &alpha / (q(1) + &alpha));
        assert_eq!(p2.coeff(&p(&[1, 1])), q(1) / (q(1) + &alpha));
        let p11 = b2.in_power_sums(&p(&[1, 1]));
        assert_eq!(p11.coeff(&p(&[2])), qf(-1, 2));
        assert_eq!(p11.coeff(&p(&[1, 1])), qf(1, 2));

        let s = jack_basis(2, &EpsilonPair::int(-1, 1)).unwrap();
        let s2 = s.in_power_sums(&p(&[2]));
        assert_eq!(s2.coeff(&p(&[2])), qf(1, 2));
        assert_eq!(s2.coeff(&p(&[1, 1])), qf(1, 2));
    }

    #[test]
    fn cauchy_low_degrees() {
        for e in [EpsilonPair::int(-1, 1), EpsilonPair::int(-1, 2), EpsilonPair::int(-2, 3)] {
            for d in 0..=4 {
                assert!(stanley_cauchy_component(d, &e).unwrap().is_zero());
            }
        }
    }
}
