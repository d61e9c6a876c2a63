mod common;

use common::{poly, terms, terms_in_m, xyz};
use generica_core::groebner::{FreeVec, Ideal};
use generica_core::ideal_theory::{grade_koszul, height, regular_sequence_check, Grade};
use generica_core::perturb::{sample, PerturbSpace};
use generica_core::ring::{Poly, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grade(i: &Ideal, m: &Ideal) -> Grade {
    grade_koszul(i, m).unwrap().grade
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn grade_ignores_redundant_generators(
        gens in prop::collection::vec(terms_in_m(3, 3, 2), 1..3),
        mult in prop::collection::vec(terms(3, 2, 2), 3),
    ) {
        let r = xyz();
        let base: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let i = Ideal::new(&r, base.clone());
        prop_assume!(!i.is_zero());
        let extra = r.sum(base.iter().zip(&mult).map(|(g, c)| r.mul(g, &poly(&r, c))).collect::<Vec<_>>().iter());
        let mut more = base.clone();
        more.push(extra);
        let j = Ideal::new(&r, more);
        let zero = Ideal::zero(&r);
        prop_assert_eq!(grade(&i, &zero), grade(&j, &zero));
    }

    #[test]
    fn grade_is_at_most_height(gens in prop::collection::vec(terms_in_m(3, 3, 2), 1..4)) {
        let r = xyz();
        let i = Ideal::new(&r, gens.iter().map(|t| poly(&r, t)).collect());
        prop_assume!(!i.is_zero() && !i.is_unit());
        let g = grade(&i, &Ideal::zero(&r)).finite().unwrap();
        // a polynomial ring is Cohen-Macaulay: the two agree
        prop_assert_eq!(g, height(&i).unwrap().height);
    }

    #[test]
    fn regular_sequences_have_full_koszul_grade(gens in prop::collection::vec(terms_in_m(3, 2, 2), 1..4)) {
        let r = xyz();
        let f: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let zero = Ideal::zero(&r);
        if regular_sequence_check(&f, &zero, true).unwrap().regular {
            let i = Ideal::new(&r, f.clone());
            prop_assert_eq!(grade(&i, &zero), Grade::Finite(f.len()));
        }
    }
}

#[test]
fn grade_below_height_off_cohen_macaulay() {
    // k[x,y,z]/(x) cap (y,z): the line meets the plane, depth 1 at the origin
    let base = xyz();
    let (x, y, z) = (base.var(0), base.var(1), base.var(2));
    let r = base.quotient_by(&[base.mul(&x, &y), base.mul(&x, &z)]);
    let m = Ideal::maximal(&r);
    let g = grade(&m, &Ideal::zero(&r)).finite().unwrap();
    assert_eq!(g, 1);
    assert_eq!(height(&m).unwrap().height, 2);
    let _ = (y, z);
}

/// Curated regular pairs `(f, M)`.
fn regular_fixtures() -> Vec<(std::sync::Arc<Ring>, Vec<Poly>, Ideal)> {
    let r = xyz();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let s = Ring::default_with_vars(&["x", "y"]);
    vec![
        (r.clone(), vec![x.clone(), y.clone()], Ideal::zero(&r)),
        (r.clone(), vec![r.mul(&x, &x), r.add(&y, &r.mul(&z, &z))], Ideal::zero(&r)),
        (r.clone(), vec![y.clone(), z.clone()], Ideal::new(&r, vec![x.clone()])),
        (s.clone(), vec![s.add(&s.var(0), &s.mul(&s.var(1), &s.var(1)))], Ideal::zero(&s)),
    ]
}

#[test]
fn grade_and_height_are_semicontinuous() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (r, f, m) in regular_fixtures() {
        let q = f.iter().filter_map(|p| p.degree()).max().unwrap() + 1;
        let space = PerturbSpace::maximal_power(&r, f.len(), q).unwrap();
        let i0 = Ideal::new(&r, f.clone());
        let g0 = grade(&i0, &m);
        let h0 = height(&i0).unwrap().height;
        for _ in 0..100 {
            let g = sample(&space, &mut rng).unwrap();
            let fg = FreeVec::new(f.clone()).add(&r, &g);
            let i = Ideal::new(&r, fg.components().to_vec());
            assert!(grade(&i, &m) >= g0);
            assert!(height(&i).unwrap().height >= h0);
        }
    }
}
