mod common;

use common::{poly, terms, xyz, Terms};
use generica_core::complexes::homology_vanishes;
use generica_core::groebner::{resolve_quotient, Ideal};
use generica_core::ring::{MonomialOrder, Poly, Ring};
use proptest::prelude::*;

fn ideal(r: &std::sync::Arc<Ring>, gens: &[Terms]) -> Ideal {
    Ideal::new(r, gens.iter().map(|t| poly(r, t)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn basis_of_a_basis_is_itself(gens in prop::collection::vec(terms(3, 3, 3), 1..4)) {
        let r = xyz();
        let i = ideal(&r, &gens);
        let again = Ideal::new(&r, i.groebner().to_vec());
        prop_assert_eq!(again.groebner(), i.groebner());
    }

    #[test]
    fn combinations_are_members(
        gens in prop::collection::vec(terms(3, 3, 3), 1..4),
        coeffs in prop::collection::vec(terms(3, 2, 3), 4),
    ) {
        let r = xyz();
        let i = ideal(&r, &gens);
        let combo: Poly = r.sum(
            i.gens().iter().zip(&coeffs).map(|(g, c)| r.mul(g, &poly(&r, c))).collect::<Vec<_>>().iter(),
        );
        prop_assert!(i.contains(&combo));
        prop_assert!(i.normal_form(&combo).unwrap().is_zero());
    }

    #[test]
    fn low_degree_elements_miss_homogeneous_ideals(
        d in 2u32..4,
        seeds in prop::collection::vec(terms(3, 4, 4), 1..4),
        low in terms(3, 2, 4),
    ) {
        let r = xyz();
        // homogeneous generators of degree exactly d
        let gens: Vec<Poly> = seeds
            .iter()
            .map(|t| r.poly().homogeneous_part(&poly(&r, t), d))
            .filter(|p| !p.is_zero())
            .collect();
        prop_assume!(!gens.is_empty());
        let i = Ideal::new(&r, gens);
        let p = poly(&r, &low);
        prop_assume!(!p.is_zero() && p.degree().unwrap() < d);
        prop_assert!(!i.contains(&p));
    }

    #[test]
    fn membership_does_not_depend_on_the_order(
        gens in prop::collection::vec(terms(3, 3, 3), 1..3),
        probe in terms(3, 3, 3),
        mult in terms(3, 2, 2),
    ) {
        let r = xyz();
        let lex = r.with_order(MonomialOrder::Lex);
        let i = ideal(&r, &gens);
        prop_assume!(!i.is_zero());
        let j = Ideal::new(&lex, i.gens().iter().map(|g| lex.poly().reorder(g)).collect());
        let candidates = [poly(&r, &probe), r.mul(&i.gens()[0], &poly(&r, &mult))];
        for p in candidates {
            prop_assert_eq!(i.contains(&p), j.contains(&lex.poly().reorder(&p)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn resolutions_are_exact_complexes(gens in prop::collection::vec(terms(3, 3, 2), 1..4)) {
        let r = xyz();
        let i = ideal(&r, &gens);
        prop_assume!(!i.is_unit() && !i.is_zero());
        let res = resolve_quotient(&r, i.gens(), 4).unwrap();
        let c = &res.complex;
        for k in 1..=c.length() {
            let cert = homology_vanishes(c, k);
            prop_assert!(cert.vanishes, "H_{} != 0", k);
            prop_assert!(cert.verify(c));
        }
        prop_assert!(!res.truncated);
    }
}

#[test]
fn fixture_resolutions() {
    let r = xyz();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let fixtures: Vec<(Vec<Poly>, Vec<usize>)> = vec![
        (vec![x.clone(), y.clone(), z.clone()], vec![1, 3, 3, 1]),
        (vec![r.mul(&x, &y), r.mul(&x, &z), r.mul(&y, &z)], vec![1, 3, 2]),
        (vec![r.mul(&x, &x), r.mul(&y, &y)], vec![1, 2, 1]),
    ];
    for (gens, betti) in fixtures {
        let res = resolve_quotient(&r, &gens, 5).unwrap();
        assert_eq!(res.betti(), betti);
        for k in 1..=res.length() {
            assert!(homology_vanishes(&res.complex, k).vanishes);
        }
    }
}
