mod common;

use std::sync::Arc;

use common::*;
use proptest::prelude::*;
use workbench::filter::{
    cl_of, fil_of, pseudo_sum, psi_extend_with, shift_preimage, theta_extend_with, PFilter,
};
use workbench::semigroup::{ElementSet, FiniteSemigroup, SemigroupError};

fn filt(g: &Arc<FiniteSemigroup>, mask: u64) -> PFilter {
    PFilter::new(
        Arc::clone(g),
        ElementSet::from_mask(g.order(), mask).unwrap(),
    )
    .unwrap()
}

fn set(g: &FiniteSemigroup, mask: u64) -> ElementSet {
    ElementSet::from_mask(g.order(), mask).unwrap()
}

/// A ground from the small catalogue, with three masks reduced into it.
fn ground_and_masks() -> impl Strategy<Value = (Table, u64, u64, u64)> {
    let grounds: Vec<Table> = small_grounds().into_iter().map(|(_, t)| t).collect();
    (0..grounds.len(), any::<u64>(), any::<u64>(), any::<u64>()).prop_map(move |(i, a, b, c)| {
        let t = grounds[i].clone();
        let top = full(order(&t));
        (t, a & top, b & top, c & top)
    })
}

#[test]
fn associativity_exhaustive() {
    for (name, t) in small_grounds() {
        let g = ground(&t);
        let top = full(order(&t));
        let filters: Vec<PFilter> = (1..=top).map(|m| filt(&g, m)).collect();
        for f in &filters {
            for h in &filters {
                let fh = pseudo_sum(f, h).unwrap();
                for k in &filters {
                    let left = pseudo_sum(&fh, k).unwrap();
                    let right = pseudo_sum(f, &pseudo_sum(h, k).unwrap()).unwrap();
                    assert_eq!(left.support(), right.support(), "{name}");
                }
            }
        }
    }
}

#[test]
fn builders_match_reference_tables() {
    for n in 1..=6 {
        assert_eq!(FiniteSemigroup::cyclic_mod(n).unwrap().rows(), cyclic(n));
        assert_eq!(FiniteSemigroup::left_zero(n).unwrap().rows(), left_zero(n));
        assert_eq!(
            FiniteSemigroup::right_zero(n).unwrap().rows(),
            right_zero(n)
        );
    }
    let t2 = FiniteSemigroup::transformation_monoid(2).unwrap();
    assert_eq!(t2.order(), 4);
    assert_eq!(t2.idempotents().len(), 3);
}

#[test]
fn non_associative_table_is_rejected() {
    let err = FiniteSemigroup::from_table(vec![vec![1, 0], vec![0, 0]]).unwrap_err();
    assert!(
        matches!(err, SemigroupError::NonAssociative { .. }),
        "{err:?}"
    );
}

#[test]
fn semigroup_invariants() {
    for (name, t) in small_grounds() {
        let g = ground(&t);
        let idem = g.idempotents();
        assert!(!idem.is_empty(), "{name}");
        assert_eq!(idem.to_vec(), idempotent_points(&t), "{name}");
        for x in 0..g.order() {
            assert!(
                idem.contains(g.power_idempotent(x).unwrap()),
                "{name} x = {x}"
            );
        }
        let minimal: Vec<Vec<usize>> = g
            .minimal_subsemigroups()
            .iter()
            .map(ElementSet::to_vec)
            .collect();
        let singletons: Vec<Vec<usize>> = idem.iter().map(|e| vec![e]).collect();
        assert_eq!(minimal, singletons, "{name}");
        assert_eq!(
            g.minimal_subsemigroups_exhaustive(),
            g.minimal_subsemigroups(),
            "{name}"
        );
    }
}

proptest! {
    #[test]
    fn support_formula_matches_definition((t, f, h, _) in ground_and_masks()) {
        prop_assume!(f != 0 && h != 0);
        let g = ground(&t);
        let got = pseudo_sum(&filt(&g, f), &filt(&g, h)).unwrap().support().mask();
        prop_assert_eq!(got, common::pseudo_sum(&t, f, h));
    }

    #[test]
    fn shift_preimage_is_membership_of_the_shift((t, a, b, v) in ground_and_masks()) {
        let g = ground(&t);
        let v = v as usize % order(&t);
        let from_definition = (0..order(&t))
            .filter(|&n| member(1 << v, shift(&t, a, n)))
            .fold(0u64, |acc, n| acc | 1 << n);
        let pa = shift_preimage(&g, &set(&g, a), v).unwrap();
        prop_assert_eq!(pa.mask(), from_definition);
        let pb = shift_preimage(&g, &set(&g, b), v).unwrap();
        let pab = shift_preimage(&g, &set(&g, a & b), v).unwrap();
        prop_assert_eq!(pab, pa.intersection(&pb));
        for n in 0..order(&t) {
            prop_assert_eq!(shift(&t, a & b, n), shift(&t, a, n) & shift(&t, b, n));
        }
    }

    #[test]
    fn product_set_is_monotone((t, a, b, c) in ground_and_masks()) {
        prop_assume!(a != 0 && b != 0);
        let g = ground(&t);
        let base = g.product_set(&set(&g, a), &set(&g, b)).unwrap();
        let left = g.product_set(&set(&g, a | c), &set(&g, b)).unwrap();
        let right = g.product_set(&set(&g, a), &set(&g, b | c)).unwrap();
        prop_assert!(base.is_subset(&left) && base.is_subset(&right));
    }

    #[test]
    fn fil_and_cl_are_inverse((t, c, _, _) in ground_and_masks()) {
        prop_assume!(c != 0);
        let g = ground(&t);
        let f = fil_of(Arc::clone(&g), set(&g, c)).unwrap();
        prop_assert_eq!(cl_of(&f).mask(), c);
    }

    #[test]
    fn any_chooser_reaches_an_idempotent(
        i in 0..6usize,
        b in any::<u64>(),
        priority in proptest::collection::vec(any::<u32>(), 6),
    ) {
        let (name, t) = curated()[i].clone();
        let b = b & full(order(&t));
        prop_assume!(b != 0 && closed(&t, b));
        let g = ground(&t);
        let f = filt(&g, b);
        let chooser = |s: &ElementSet| s.iter().min_by_key(|&x| (priority[x], x)).unwrap();
        let out = theta_extend_with(&f, &chooser).unwrap();
        let u = out.idempotent;
        prop_assert!(t[u][u] == u && has(b, u), "{} B = {:?}, u = {}", name, elements_of(b), u);
        prop_assert!(out.rounds <= elements_of(b).len());
        prop_assert!(filter_contains(1 << u, out.filter.support().mask()));

        let psi = psi_extend_with(&f, &chooser).unwrap();
        let fix = psi.fixpoint.support().mask();
        prop_assert!(filter_contains(fix, b));
        prop_assert!(filter_contains(1 << psi.v, common::pseudo_sum(&t, fix, 1 << psi.v)));
    }
}
