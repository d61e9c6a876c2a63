mod common;

use std::sync::Arc;

use common::{poly, terms_in_m};
use generica_core::groebner::{FreeVec, Ideal};
use generica_core::ideal_theory::{height, regular_sequence_check};
use generica_core::perturb::{
    perturb_matrix, perturb_to_height, perturb_to_regular, AvoidList, Composite, MatrixTarget, PerturbSpace,
    PerturbWitness, SearchConfig,
};
use generica_core::determinantal::MatrixKind;
use generica_core::ring::{Poly, PolyMatrix, Ring};
use proptest::prelude::*;

fn xy() -> Arc<Ring> {
    Ring::default_with_vars(&["x", "y"])
}

fn cfg(seed: u64) -> SearchConfig {
    SearchConfig { seed, ..SearchConfig::default() }
}

fn regular_witness(f: &[Poly], avoid: &AvoidList, seed: u64) -> PerturbWitness {
    let r = xy();
    let h = Composite::identity(&r, f.len());
    let space = PerturbSpace::maximal_power(&r, f.len(), 2).unwrap();
    perturb_to_regular(&h, &FreeVec::new(f.to_vec()), &Ideal::zero(&r), &space, avoid, &cfg(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn witnesses_reverify_and_avoid(
        a in terms_in_m(2, 3, 2),
        b in terms_in_m(2, 3, 2),
        seed in 0u64..1000,
        avoid_first in any::<bool>(),
    ) {
        let r = xy();
        let f = vec![poly(&r, &a), poly(&r, &b)];
        let mut avoid = AvoidList::empty();
        if avoid_first {
            avoid.push(vec![Ideal::zero(&r), Ideal::unit(&r)]);
        } else {
            avoid.push(vec![Ideal::unit(&r), Ideal::new(&r, vec![r.var(0)])]);
        }
        let w = regular_witness(&f, &avoid, seed);
        prop_assert!(w.reverify().unwrap());
        let fg = FreeVec::new(f.clone()).add(&r, &w.g);
        prop_assert!(!avoid.hits(&w.g));
        prop_assert!(!avoid.hits(&fg));
        prop_assert!(regular_sequence_check(fg.components(), &Ideal::zero(&r), true).unwrap().regular);
    }

    #[test]
    fn satisfied_inputs_short_circuit(
        a in terms_in_m(2, 3, 2),
        seed in 0u64..1000,
    ) {
        let r = xy();
        let f0 = poly(&r, &a);
        prop_assume!(!f0.is_zero());
        let f = vec![f0];
        let zero = Ideal::zero(&r);
        prop_assume!(regular_sequence_check(&f, &zero, true).unwrap().regular);
        let w = regular_witness(&f, &AvoidList::empty(), seed);
        prop_assert!(w.is_zero());
        prop_assert_eq!(w.trials_used, 0);
    }
}

#[test]
fn witnesses_do_not_depend_on_threads() {
    let r = xy();
    let f = vec![r.var(0), r.var(0)];
    let serial: Vec<FreeVec> = (0..8).map(|s| regular_witness(&f, &AvoidList::empty(), s).g).collect();
    let parallel: Vec<FreeVec> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..8)
            .rev()
            .map(|s| {
                let f = f.clone();
                scope.spawn(move || (s, regular_witness(&f, &AvoidList::empty(), s).g))
            })
            .collect();
        let mut out: Vec<(u64, FreeVec)> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        out.sort_by_key(|(s, _)| *s);
        out.into_iter().map(|(_, g)| g).collect()
    });
    // rings compare structurally, so components are comparable across threads
    assert_eq!(serial, parallel);
}

#[test]
fn higher_order_noise_never_breaks_witnesses() {
    let r = xy();
    let (x, y) = (r.var(0), r.var(1));
    let mut witnesses = vec![
        regular_witness(&[x.clone(), x.clone()], &AvoidList::empty(), 1),
        regular_witness(&[r.mul(&x, &y), r.add(&x, &y)], &AvoidList::empty(), 2),
    ];
    let h = Composite::identity(&r, 2);
    let space = PerturbSpace::maximal_power(&r, 2, 2).unwrap();
    witnesses.push(
        perturb_to_height(&h, &FreeVec::new(vec![x.clone(), x.clone()]), 2, &space, &AvoidList::empty(), &cfg(3))
            .unwrap(),
    );
    let s = Ring::default_with_vars(&["a", "b", "c"]);
    let phi = PolyMatrix::from_rows(vec![vec![s.var(0), s.var(1)], vec![s.var(0), s.var(1)]]).unwrap();
    let target = MatrixTarget::DetProfile { kind: MatrixKind::Generic, from: 1 };
    witnesses.push(perturb_matrix(&s, &phi, &Ideal::maximal_power(&s, 2), target, None, &cfg(4)).unwrap().1);
    for (k, w) in witnesses.iter().enumerate() {
        assert!(w.reverify().unwrap());
        assert_eq!(w.monotonicity_drops(3, 100, 100 + k as u64).unwrap(), 0, "witness {k}");
    }
}

#[test]
fn height_witness_has_height() {
    let r = xy();
    let h = Composite::identity(&r, 2);
    let space = PerturbSpace::maximal_power(&r, 2, 2).unwrap();
    let f = FreeVec::new(vec![r.var(0), r.mul(&r.var(0), &r.var(1))]);
    let w = perturb_to_height(&h, &f, 2, &space, &AvoidList::empty(), &cfg(9)).unwrap();
    let fg = f.add(&r, &w.g);
    assert_eq!(height(&Ideal::new(&r, fg.components().to_vec())).unwrap().height, 2);
}
