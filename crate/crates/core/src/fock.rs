//! The polynomial algebra `Q[V_1, V_2, ...]` with its ε-deformed structure.
//!
//! `V_k` acts by multiplication, `V_{-k} = (-ε1ε2) k ∂/∂V_k` is its adjoint for
//! the inner product `⟨V_μ, V_ν⟩ = δ_{μν} z_μ (-ε1ε2)^{ℓ(μ)}`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{EpsilonPair, Partition};
use crate::rational::{fmt_q, pow, qu, Q};

/// Finite linear combination of monomials `V_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<Partition, Q>,
}

impl FockVector {
    pub fn zero() -> Self {
        FockVector::default()
    }

    pub fn one() -> Self {
        FockVector::monomial(Partition::empty(), Q::one())
    }

    pub fn monomial(mu: Partition, c: Q) -> Self {
        let mut v = FockVector::zero();
        v.add_term(mu, c);
        v
    }

    /// The single mode `V_k`.
    pub fn mode(k: usize) -> Self {
        FockVector::monomial(Partition::from_multiset(vec![k]), Q::one())
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn coeff(&self, mu: &Partition) -> Q {
        self.terms.get(mu).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mu: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mu) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &FockVector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (mu, x) in &other.terms {
            self.add_term(mu.clone(), x * c);
        }
    }

    pub fn add(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(other, &Q::one());
        r
    }

    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut r = self.clone();
        r.add_scaled(other, &-Q::one());
        r
    }

    pub fn scale(&self, c: &Q) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    /// Largest degree present, `None` for the zero vector.
    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Partition::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Partition::degree);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> FockVector {
        let lo = Partition::from_multiset(vec![1; d]);
        let hi = Partition::from_multiset(vec![d]);
        FockVector {
            terms: self.terms.range(lo..=hi).map(|(m, x)| (m.clone(), x.clone())).collect(),
        }
    }

    /// Polynomial product.
    pub fn mul(&self, other: &FockVector) -> FockVector {
        let mut r = FockVector::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut parts = a.parts().to_vec();
                parts.extend_from_slice(b.parts());
                r.add_term(Partition::from_multiset(parts), x * y);
            }
        }
        r
    }

    /// Multiplies each monomial `V_μ` by `c^{ℓ(μ)}` (the substitution `V_k -> c V_k`).
    pub fn rescale_modes(&self, c: &Q) -> FockVector {
        FockVector {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * pow(c, m.len()))).collect(),
        }
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mu, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}*V{}", fmt_q(c), mu)?;
        }
        Ok(())
    }
}

/// Multiplication by `V_k`.
pub fn create(k: usize, psi: &FockVector) -> FockVector {
    assert!(k >= 1, "V_0 is absent");
    FockVector {
        terms: psi.terms.iter().map(|(m, x)| (m.with_part(k), x.clone())).collect(),
    }
}

/// `(-ε1ε2) k ∂/∂V_k`.
pub fn annihilate(k: usize, psi: &FockVector, eps: &EpsilonPair) -> FockVector {
    assert!(k >= 1, "V_0 is absent");
    let pk = eps.prod() * qu(k);
    let mut r = FockVector::zero();
    for (m, x) in &psi.terms {
        let mult = m.multiplicity(k);
        if mult > 0 {
            let rest = m.without_part(k).expect("part present");
            r.add_term(rest, x * &pk * qu(mult));
        }
    }
    r
}

/// Norm of a single monomial, `z_μ (-ε1ε2)^{ℓ(μ)}`.
pub fn monomial_norm(mu: &Partition, eps: &EpsilonPair) -> Q {
    Q::from_integer(mu.z()) * pow(&eps.prod(), mu.len())
}

pub fn inner(a: &FockVector, b: &FockVector, eps: &EpsilonPair) -> Q {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut s = Q::zero();
    for (mu, x) in &small.terms {
        if let Some(y) = large.terms.get(mu) {
            s += x * y * monomial_norm(mu, eps);
        }
    }
    s
}

/// Multiplies each degree-`d` component by `d`.
pub fn degree_op(psi: &FockVector) -> FockVector {
    let mut r = FockVector::zero();
    for (m, x) in &psi.terms {
        r.add_term(m.clone(), x * qu(m.degree()));
    }
    r
}

/// Substitutes `V_k = values[k]`.
pub fn evaluate(psi: &FockVector, values: &BTreeMap<usize, Q>) -> Result<Q> {
    let mut s = Q::zero();
    for (m, x) in &psi.terms {
        let mut t = x.clone();
        for &k in m.parts() {
            let v = values.get(&k).ok_or(Error::MissingMode(k))?;
            t *= v;
        }
        s += t;
    }
    Ok(s)
}

/// Numeric values for the out modes `V̄_k` and in modes `V_k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModeAssignment {
    pub out_modes: BTreeMap<usize, Q>,
    pub in_modes: BTreeMap<usize, Q>,
}

impl ModeAssignment {
    /// Real assignment: out modes equal in modes.
    pub fn real(modes: BTreeMap<usize, Q>) -> Self {
        let modes: BTreeMap<usize, Q> = modes.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ModeAssignment { out_modes: modes.clone(), in_modes: modes }
    }

    pub fn real_from(pairs: &[(usize, Q)]) -> Self {
        ModeAssignment::real(pairs.iter().cloned().collect())
    }

    pub fn is_real(&self) -> bool {
        let nz = |m: &BTreeMap<usize, Q>| -> BTreeMap<usize, Q> {
            m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (*k, v.clone())).collect()
        };
        nz(&self.out_modes) == nz(&self.in_modes)
    }

    /// Largest `k` with a nonzero out or in mode.
    pub fn support(&self) -> usize {
        let f = |m: &BTreeMap<usize, Q>| {
            m.iter().filter(|(_, v)| !v.is_zero()).map(|(k, _)| *k).max().unwrap_or(0)
        };
        f(&self.out_modes).max(f(&self.in_modes))
    }

    pub fn out_value(&self, k: usize) -> Q {
        self.out_modes.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn in_value(&self, k: usize) -> Q {
        self.in_modes.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    /// Out modes for `k ≤ n`, zero-filled.
    pub fn out_filled(&self, n: usize) -> BTreeMap<usize, Q> {
        (1..=n).map(|k| (k, self.out_value(k))).collect()
    }

    pub fn in_filled(&self, n: usize) -> BTreeMap<usize, Q> {
        (1..=n).map(|k| (k, self.in_value(k))).collect()
    }

    pub fn swapped(&self) -> ModeAssignment {
        ModeAssignment { out_modes: self.in_modes.clone(), in_modes: self.out_modes.clone() }
    }
}

/// Polynomial in two sets of modes, `V̄` (left) and `V` (right).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KernelPoly {
    terms: BTreeMap<(Partition, Partition), Q>,
}

impl KernelPoly {
    pub fn zero() -> Self {
        KernelPoly::default()
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: Partition, right: Partition, c: Q) {
        if c.is_zero() {
            return;
        }
        let key = (left, right);
        let v = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `self += c · a(V̄) b(V)`.
    pub fn add_tensor(&mut self, a: &FockVector, b: &FockVector, c: &Q) {
        for (m, x) in a.terms() {
            for (n, y) in b.terms() {
                self.add_term(m.clone(), n.clone(), x * y * c);
            }
        }
    }

    pub fn sub(&self, other: &KernelPoly) -> KernelPoly {
        let mut r = self.clone();
        for ((a, b), c) in &other.terms {
            r.add_term(a.clone(), b.clone(), -c.clone());
        }
        r
    }

    /// Degree-`d` part of `∏_k exp(V̄_k V_k / ((-ε1ε2) k))`.
    pub fn cauchy_component(d: usize, eps: &EpsilonPair) -> KernelPoly {
        let mut r = KernelPoly::zero();
        for mu in Partition::all(d) {
            let c = Q::one() / monomial_norm(&mu, eps);
            r.add_term(mu.clone(), mu, c);
        }
        r
    }

    /// Applies `V̄_{-k}` to the left variables.
    pub fn annihilate_left(&self, k: usize, eps: &EpsilonPair) -> KernelPoly {
        let pk = eps.prod() * qu(k);
        let mut r = KernelPoly::zero();
        for ((a, b), c) in &self.terms {
            let mult = a.multiplicity(k);
            if mult > 0 {
                r.add_term(a.without_part(k).unwrap(), b.clone(), c * &pk * qu(mult));
            }
        }
        r
    }

    /// Multiplies by `c · V_k` on the right.
    pub fn create_right(&self, k: usize, c: &Q) -> KernelPoly {
        let mut r = KernelPoly::zero();
        for ((a, b), x) in &self.terms {
            r.add_term(a.clone(), b.with_part(k), x * c);
        }
        r
    }

    pub fn scale(&self, c: &Q) -> KernelPoly {
        let mut r = KernelPoly::zero();
        for ((a, b), x) in &self.terms {
            r.add_term(a.clone(), b.clone(), x * c);
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn v(parts: &[usize]) -> FockVector {
        FockVector::monomial(Partition::from_multiset(parts.to_vec()), Q::one())
    }

    #[test]
    fn create_examples() {
        assert_eq!(create(1, &FockVector::one()), v(&[1]));
        assert_eq!(create(2, &v(&[1])), v(&[2, 1]));
        assert_eq!(create(1, &v(&[1])), v(&[1, 1]));
    }

    #[test]
    fn annihilate_examples() {
        let e11 = EpsilonPair::int(-1, 1);
        let e12 = EpsilonPair::int(-1, 2);
        assert_eq!(annihilate(1, &v(&[1]), &e11), FockVector::one());
        assert!(annihilate(2, &v(&[1, 1]), &e12).is_zero());
        assert_eq!(annihilate(1, &v(&[1, 1]), &e12), v(&[1]).scale(&q(4)));
        assert!(annihilate(1, &FockVector::one(), &e12).is_zero());
    }

    #[test]
    fn inner_examples() {
        let e11 = EpsilonPair::int(-1, 1);
        let e12 = EpsilonPair::int(-1, 2);
        assert_eq!(inner(&v(&[1]), &v(&[1]), &e11), q(1));
        assert_eq!(inner(&v(&[2]), &v(&[1, 1]), &e11), q(0));
        assert_eq!(inner(&v(&[1, 1]), &v(&[1, 1]), &e12), q(8));
    }

    #[test]
    fn degree_and_evaluate_examples() {
        assert!(degree_op(&FockVector::one()).is_zero());
        assert_eq!(degree_op(&v(&[2])), v(&[2]).scale(&q(2)));
        let w = v(&[2, 1]).add(&v(&[3]));
        assert_eq!(degree_op(&w), w.scale(&q(3)));

        let vals: BTreeMap<usize, Q> = [(1, q(2))].into_iter().collect();
        assert_eq!(evaluate(&v(&[1, 1]), &vals).unwrap(), q(4));
        let vals: BTreeMap<usize, Q> = [(1, q(1)), (2, q(3))].into_iter().collect();
        assert_eq!(evaluate(&v(&[2, 1]), &vals).unwrap(), q(3));
        let vals: BTreeMap<usize, Q> = [(1, q(1)), (2, q(2))].into_iter().collect();
        let w = v(&[1]).scale(&q(2)).sub(&v(&[2]));
        assert_eq!(evaluate(&w, &vals).unwrap(), q(0));
        assert_eq!(evaluate(&v(&[3]), &vals), Err(Error::MissingMode(3)));
    }

    #[test]
    fn component_extraction() {
        let w = v(&[2, 1]).add(&v(&[3])).add(&v(&[1])).add(&v(&[4]));
        assert_eq!(w.component(3), v(&[2, 1]).add(&v(&[3])));
        let total = (0..=4).fold(FockVector::zero(), |acc, d| acc.add(&w.component(d)));
        assert_eq!(total, w);
    }
}
