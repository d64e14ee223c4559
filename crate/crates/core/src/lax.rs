//! The Lax operator on `F ⊗ C[w]` and its Hamiltonians `O_ℓ = ⟨0|L^ℓ|0⟩`.
//!
//! Matrix elements: `L_{h+,h-} = V_{h- - h+} + (ε1+ε2) h δ_{h+,h-}`, where a
//! positive index creates and a negative index annihilates.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::fock::{annihilate, create, FockVector};
use crate::jack::jack_basis;
use crate::partition::{ch_vee_list, EpsilonPair, Partition};
use crate::rational::{qu, Q};
use crate::Result;

/// Fock vectors indexed by an auxiliary height.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorVector {
    pub components: BTreeMap<usize, FockVector>,
}

impl TensorVector {
    pub fn at(h: usize, psi: FockVector) -> Self {
        let mut t = TensorVector::default();
        t.add(h, &psi);
        t
    }

    pub fn add(&mut self, h: usize, psi: &FockVector) {
        if psi.is_zero() {
            return;
        }
        let slot = self.components.entry(h).or_default();
        slot.add_scaled(psi, &Q::from_integer(1.into()));
        if slot.is_zero() {
            self.components.remove(&h);
        }
    }

    pub fn component(&self, h: usize) -> FockVector {
        self.components.get(&h).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    /// The set of values `deg + h` over all monomials.
    pub fn grades(&self) -> std::collections::BTreeSet<usize> {
        let mut s = std::collections::BTreeSet::new();
        for (h, psi) in &self.components {
            for mu in psi.terms().keys() {
                s.insert(mu.degree() + h);
            }
        }
        s
    }
}

/// One application of `L`.
pub fn lax_step(x: &TensorVector, eps: &EpsilonPair) -> TensorVector {
    lax_step_filtered(x, eps, None)
}

/// `lax_step`, optionally keeping only output heights `≤ cap`.
fn lax_step_filtered(x: &TensorVector, eps: &EpsilonPair, cap: Option<usize>) -> TensorVector {
    let aniso = eps.aniso();
    let mut out = TensorVector::default();
    let keep = |h: usize| cap.is_none_or(|c| h <= c);
    for (&hm, psi) in &x.components {
        // creation: move down to every lower height
        for hp in 0..hm {
            if keep(hp) {
                out.add(hp, &create(hm - hp, psi));
            }
        }
        // annihilation: climb by k as long as some monomial has a part k
        let mut parts: Vec<usize> =
            psi.terms().keys().flat_map(|m| m.parts().iter().copied()).collect();
        parts.sort_unstable();
        parts.dedup();
        for k in parts {
            if keep(hm + k) {
                out.add(hm + k, &annihilate(k, psi, eps));
            }
        }
        if !aniso.is_zero() && hm > 0 && keep(hm) {
            out.add(hm, &psi.scale(&(&aniso * qu(hm))));
        }
    }
    out
}

/// `O_ℓ(Ψ)`: the height-0 component of `L^ℓ (Ψ ⊗ |0⟩)`.
pub fn hamiltonian(l: usize, psi: &FockVector, eps: &EpsilonPair) -> FockVector {
    if l == 0 {
        return psi.clone();
    }
    let mut x = TensorVector::at(0, psi.clone());
    for step in 0..l {
        let remaining = l - step - 1;
        // a height must be reachable back to 0; with one step left only 0 survives
        let cap = if remaining == 0 { Some(0) } else { None };
        x = lax_step_filtered(&x, eps, cap);
        if x.is_zero() {
            break;
        }
    }
    x.component(0)
}

/// `[O_0 Ψ, O_1 Ψ, ..., O_L Ψ]` from a single sweep.
pub fn hamiltonian_sweep(max_l: usize, psi: &FockVector, eps: &EpsilonPair) -> Vec<FockVector> {
    let mut out = Vec::with_capacity(max_l + 1);
    out.push(psi.clone());
    let mut x = TensorVector::at(0, psi.clone());
    for step in 1..=max_l {
        let cap = if step == max_l { Some(0) } else { None };
        x = lax_step_filtered(&x, eps, cap);
        out.push(x.component(0));
    }
    out
}

/// Checks `O_ℓ P_λ = ch^∨_ℓ(λ) P_λ` for all `ℓ ≤ max_l`.
pub fn verify_diagonal(lambda: &Partition, max_l: usize, eps: &EpsilonPair) -> Result<bool> {
    let basis = jack_basis(lambda.degree(), eps)?;
    let p = &basis.vectors[lambda];
    let ev = ch_vee_list(lambda, eps, max_l);
    let images = hamiltonian_sweep(max_l, p, eps);
    Ok((1..=max_l).all(|l| images[l] == p.scale(&ev[l])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::degree_op;
    use crate::rational::q;

    #[test]
    fn step_examples() {
        let e11 = EpsilonPair::int(-1, 1);
        let e12 = EpsilonPair::int(-1, 2);
        assert!(lax_step(&TensorVector::at(0, FockVector::one()), &e11).is_zero());
        let r = lax_step(&TensorVector::at(0, FockVector::mode(1)), &e11);
        assert_eq!(r, TensorVector::at(1, FockVector::one()));
        let r = lax_step(&TensorVector::at(1, FockVector::one()), &e12);
        let mut expect = TensorVector::at(0, FockVector::mode(1));
        expect.add(1, &FockVector::one());
        assert_eq!(r, expect);
    }

    #[test]
    fn hamiltonian_examples() {
        let e11 = EpsilonPair::int(-1, 1);
        assert_eq!(hamiltonian(2, &FockVector::mode(1), &e11), FockVector::mode(1));
        for l in 1..5 {
            assert!(hamiltonian(l, &FockVector::one(), &EpsilonPair::int(-2, 3)).is_zero());
        }
        // P_(2) = (p_2 + p_1^2)/2 at the Schur point
        let p2 = FockVector::mode(2).add(&FockVector::mode(1).mul(&FockVector::mode(1)));
        assert_eq!(hamiltonian(3, &p2, &e11), p2.scale(&q(2)));
    }

    #[test]
    fn o2_is_degree_operator() {
        let e = EpsilonPair::int(-2, 3);
        for mu in Partition::up_to(5) {
            let v = FockVector::monomial(mu, q(1));
            assert_eq!(hamiltonian(2, &v, &e), degree_op(&v).scale(&e.prod()));
        }
    }

    #[test]
    fn sweep_matches_individual_powers() {
        let e = EpsilonPair::int(-1, 2);
        let v = FockVector::monomial(Partition::from_multiset(vec![2, 1, 1]), q(1))
            .add(&FockVector::mode(4));
        let sweep = hamiltonian_sweep(5, &v, &e);
        for (l, img) in sweep.iter().enumerate().skip(1) {
            assert_eq!(img, &hamiltonian(l, &v, &e), "l = {l}");
        }
    }

    #[test]
    fn verify_diagonal_examples() {
        assert!(verify_diagonal(&Partition::empty(), 6, &EpsilonPair::int(-1, 1)).unwrap());
        let l21 = Partition::new(vec![2, 1]).unwrap();
        assert!(verify_diagonal(&l21, 6, &EpsilonPair::int(-1, 2)).unwrap());
        let l311 = Partition::new(vec![3, 1, 1]).unwrap();
        assert!(verify_diagonal(&l311, 5, &EpsilonPair::int(-2, 3)).unwrap());
    }
}
