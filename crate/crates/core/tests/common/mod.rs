//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use jacklab::partition::arm_leg;
use jacklab::{FockVector, Partition, Q};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Polynomial in `n` commuting variables, keyed by exponent vector.
pub type Poly = BTreeMap<Vec<u32>, Q>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(Q::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn poly_one(n: usize) -> Poly {
    let mut p = Poly::new();
    p.insert(vec![0; n], Q::one());
    p
}

fn power_sum(n: usize, k: u32) -> Poly {
    (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = k;
            (e, Q::one())
        })
        .collect()
}

/// Complete homogeneous `h_k` in `n` variables.
fn complete(n: usize, k: i64) -> Poly {
    if k < 0 {
        return Poly::new();
    }
    let mut out = Poly::new();
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Poly) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.insert(cur.clone(), Q::one());
            return;
        }
        for x in 0..=left {
            cur[i] = x;
            rec(i + 1, left - x, cur, out);
        }
    }
    rec(0, k as u32, &mut vec![0; n], &mut out);
    out
}

fn padded(lambda: &Partition, n: usize) -> Vec<u32> {
    let mut e: Vec<u32> = lambda.parts().iter().map(|&x| x as u32).collect();
    e.resize(n, 0);
    e
}

/// Monomial coefficients of a symmetric polynomial in `n ≥ d` variables.
fn to_monomials(p: &Poly, d: usize) -> BTreeMap<Partition, Q> {
    let n = d.max(1);
    Partition::all(d)
        .into_iter()
        .filter_map(|l| p.get(&padded(&l, n)).map(|c| (l, c.clone())))
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

fn z(mu: &Partition) -> Q {
    let mut z = BigInt::one();
    for (k, m) in mu.multiplicities() {
        z *= BigInt::from(k).pow(m as u32);
        for i in 1..=m {
            z *= BigInt::from(i);
        }
    }
    Q::from_integer(z)
}

/// `M[μ][ν]`: coefficient of `m_ν` in `p_μ`, by expanding products of power sums.
pub fn power_to_monomial_oracle(d: usize) -> Vec<Vec<Q>> {
    let n = d.max(1);
    let parts = Partition::all(d);
    parts
        .iter()
        .map(|mu| {
            let p = mu.parts().iter().fold(poly_one(n), |acc, &k| poly_mul(&acc, &power_sum(n, k as u32)));
            let m = to_monomials(&p, d);
            parts.iter().map(|nu| m.get(nu).cloned().unwrap_or_else(Q::zero)).collect()
        })
        .collect()
}

fn invert(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero()).expect("invertible");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for j in 0..2 * n {
                    let t = &f * &m[c][j];
                    m[r][j] -= t;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Jack `P_λ` (parameter `alpha`) in monomials by Gram-Schmidt of `m_λ` along a
/// linear extension of dominance, using `⟨p_μ, p_ν⟩ = δ z_μ α^{ℓ(μ)}`.
pub fn gram_schmidt_jacks(d: usize, alpha: &Q) -> BTreeMap<Partition, BTreeMap<Partition, Q>> {
    let parts = Partition::all(d);
    let n = parts.len();
    let a = invert(&power_to_monomial_oracle(d)); // m = A p
    let zd: Vec<Q> = parts
        .iter()
        .map(|mu| {
            let mut x = z(mu);
            for _ in 0..mu.len() {
                x *= alpha;
            }
            x
        })
        .collect();
    let gram: Vec<Vec<Q>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| &a[i][k] * &zd[k] * &a[j][k]).sum()).collect())
        .collect();
    let ip = |x: &[Q], y: &[Q]| -> Q {
        let mut s = Q::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += &x[i] * &gram[i][j] * &y[j];
            }
        }
        s
    };
    // ascending order: (1^d) first
    let mut done: Vec<(usize, Vec<Q>, Q)> = Vec::new();
    for idx in (0..n).rev() {
        let mut v = vec![Q::zero(); n];
        v[idx] = Q::one();
        let e = v.clone();
        for (_, p, norm) in &done {
            let c = ip(&e, p) / norm;
            for k in 0..n {
                v[k] -= &c * &p[k];
            }
        }
        let norm = ip(&v, &v);
        done.push((idx, v, norm));
    }
    done.into_iter()
        .map(|(idx, v, _)| {
            let coeffs = parts.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p.clone(), c)).collect();
            (parts[idx].clone(), coeffs)
        })
        .collect()
}

/// Schur `s_λ = det(h_{λ_i - i + j})` in monomials.
pub fn jacobi_trudi(lambda: &Partition) -> BTreeMap<Partition, Q> {
    let d = lambda.degree();
    let n = d.max(1);
    let l = lambda.len();
    if l == 0 {
        let mut out = BTreeMap::new();
        out.insert(Partition::empty(), Q::one());
        return out;
    }
    let entry = |i: usize, j: usize| complete(n, lambda.parts()[i] as i64 - i as i64 + j as i64);
    let mut total = Poly::new();
    let mut perm: Vec<usize> = (0..l).collect();
    permute(&mut perm, 0, &mut |p: &[usize]| {
        let inversions = (0..l).flat_map(|i| (i + 1..l).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let mut term = poly_one(n);
        for (i, &j) in p.iter().enumerate() {
            term = poly_mul(&term, &entry(i, j));
            if term.is_empty() {
                return;
            }
        }
        let sign = if inversions % 2 == 0 { Q::one() } else { -Q::one() };
        for (e, c) in term {
            *total.entry(e).or_insert_with(Q::zero) += c * &sign;
        }
    });
    to_monomials(&total, d)
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Micro-canonical Jack-Plancherel probability from hook data:
/// `d! (-ε1ε2)^d ∏_□ 1/((-ε2(l+1) + ε1 a)(-ε2 l + ε1(a+1)))`.
pub fn jack_plancherel_oracle(lambda: &Partition, eps2: &Q, eps1: &Q) -> Q {
    let prod = -(eps1 * eps2);
    let mut w = Q::one();
    for (i, j) in lambda.boxes() {
        let (a, l) = arm_leg(lambda, i, j).unwrap();
        let (a, l) = (Q::from_integer(a.into()), Q::from_integer(l.into()));
        let f1 = -(eps2 * (&l + Q::one())) + eps1 * &a;
        let f2 = -(eps2 * &l) + eps1 * (&a + Q::one());
        w *= &prod / (f1 * f2);
    }
    for k in 1..=lambda.degree() {
        w *= Q::from_integer(k.into());
    }
    w
}

/// Seeded random polynomial of degree `d` in the modes, small integer coefficients.
pub fn sample_vector(d: usize, seed: u64) -> FockVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v = FockVector::zero();
    for mu in Partition::all(d) {
        let c: i64 = rng.random_range(-3..=3);
        v.add_term(mu, Q::from_integer(c.into()));
    }
    v
}
