//! Randomised invariants over partitions, Fock vectors, symbols and spec files.

mod common;

use std::collections::BTreeMap;

use jacklab::fock::{degree_op, inner};
use jacklab::lax::hamiltonian;
use jacklab::partition::{
    ch_from_chvee, ch_list, ch_vee_list, chvee_from_ch, cotransition_measure, profile_extrema, transition_measure,
};
use jacklab::rational::{fmt_q, parse_q, qf, qu};
use jacklab::ribbon::{aoe_table, enumerate_configs};
use jacklab::specfile::SpecFile;
use jacklab::{EpsilonPair, FockVector, ModeAssignment, Partition, Q};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn eps_strategy() -> impl Strategy<Value = EpsilonPair> {
    (1i64..=3, 1i64..=2, 1i64..=3, 1i64..=2).prop_map(|(a, b, c, d)| EpsilonPair::new(qf(-a, b), qf(c, d)).unwrap())
}

fn partition_strategy(max_part: usize, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len).prop_map(Partition::from_multiset)
}

fn fock_strategy(d: usize) -> impl Strategy<Value = FockVector> {
    let parts = Partition::all(d);
    prop::collection::vec(-3i64..=3, parts.len()).prop_map(move |cs| {
        let mut v = FockVector::zero();
        for (mu, c) in parts.iter().zip(cs) {
            v.add_term(mu.clone(), Q::from_integer(c.into()));
        }
        v
    })
}

fn graded_pair() -> impl Strategy<Value = (usize, FockVector, FockVector)> {
    (1usize..=4).prop_flat_map(|d| (Just(d), fock_strategy(d), fock_strategy(d)))
}

fn rational_strategy() -> impl Strategy<Value = Q> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| qf(n, d))
}

fn modes_strategy() -> impl Strategy<Value = ModeAssignment> {
    prop::collection::btree_map(1usize..=3, rational_strategy(), 1..=2).prop_map(|m| {
        let m: BTreeMap<usize, Q> = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ModeAssignment::real(m)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hamiltonians_are_self_adjoint((_d, a, b) in graded_pair(), l in 1usize..=4, eps in eps_strategy()) {
        prop_assert_eq!(inner(&hamiltonian(l, &a, &eps), &b, &eps), inner(&a, &hamiltonian(l, &b, &eps), &eps));
    }

    #[test]
    fn hamiltonians_commute((_d, a, _b) in graded_pair(), k in 1usize..=4, l in 1usize..=4, eps in eps_strategy()) {
        let kl = hamiltonian(k, &hamiltonian(l, &a, &eps), &eps);
        let lk = hamiltonian(l, &hamiltonian(k, &a, &eps), &eps);
        prop_assert_eq!(kl, lk);
    }

    #[test]
    fn hamiltonians_preserve_degree((d, a, _b) in graded_pair(), l in 0usize..=5, eps in eps_strategy()) {
        let oa = hamiltonian(l, &a, &eps);
        prop_assert!(oa.is_zero() || (oa.is_homogeneous() && oa.max_degree() == Some(d)));
        prop_assert_eq!(degree_op(&oa), hamiltonian(l, &degree_op(&a), &eps));
    }

    #[test]
    fn transition_measures_are_probabilities(lambda in partition_strategy(6, 6), eps in eps_strategy()) {
        let x = profile_extrema(&lambda, &eps);
        prop_assert!(x.is_interlacing());
        prop_assert!(x.center().is_zero());
        let t = transition_measure(&x);
        prop_assert!(t.total_mass().is_one());
        prop_assert!(t.atoms.values().all(|w| w.is_positive()));
        let co = cotransition_measure(&x);
        prop_assert_eq!(co.total_mass(), eps.prod() * qu(lambda.degree()));
        prop_assert!(co.atoms.values().all(|w| w.is_positive()));
    }

    #[test]
    fn ch_and_ch_vee_round_trip(lambda in partition_strategy(5, 5), eps in eps_strategy()) {
        let ch = ch_list(&lambda, &eps, 6);
        let chv = ch_vee_list(&lambda, &eps, 6);
        let t = transition_measure(&profile_extrema(&lambda, &eps));
        for (l, c) in chv.iter().enumerate() {
            prop_assert_eq!(&t.moment(l), c);
        }
        prop_assert_eq!(&chvee_from_ch(&ch), &chv);
        let back = ch_from_chvee(&chv).unwrap();
        prop_assert_eq!(&back[1..], &ch[1..]);
    }

    #[test]
    fn rationals_round_trip(x in rational_strategy()) {
        prop_assert_eq!(parse_q(&fmt_q(&x)).unwrap(), x);
    }

    #[test]
    fn spec_files_round_trip(
        eps in eps_strategy(),
        modes in modes_strategy(),
        d in prop::option::of(0usize..=12),
        radius in prop::option::of(0.05f64..0.95),
        threshold in 1e-12f64..1e-2,
    ) {
        let s = SpecFile { eps, modes, truncation: d, radius, threshold };
        prop_assert_eq!(SpecFile::parse(&s.to_string()).unwrap(), s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ribbon_dp_matches_enumeration(
        ells in prop::collection::vec(1usize..=4, 1..=2),
        modes in modes_strategy(),
        connected in any::<bool>(),
    ) {
        let dp = aoe_table(&ells, &modes, connected);
        let mut ex: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
        for (_, w) in enumerate_configs(&ells, &modes, connected) {
            *ex.entry((w.pairs, w.m, w.grade)).or_insert_with(Q::zero) += w.value;
        }
        ex.retain(|_, v| !v.is_zero());
        prop_assert_eq!(dp.entries, ex);
    }

    #[test]
    fn jack_plancherel_weights_sum_to_one(d in 1usize..=6, eps in eps_strategy()) {
        let total: Q = Partition::all(d)
            .iter()
            .map(|l| common::jack_plancherel_oracle(l, eps.eps2(), eps.eps1()))
            .sum();
        prop_assert!(total.is_one());
    }
}
