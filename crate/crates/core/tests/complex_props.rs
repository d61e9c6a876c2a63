mod common;

use common::{poly, terms, terms_in_m, xyz};
use generica_core::complexes::{
    eagon_northcott, en_acyclic_by_grade, homology_vanishes, koszul_complex, koszul_on_module, tor_vanishes, ChainComplex,
};
use generica_core::determinantal::{generic_matrix, MatrixShape};
use generica_core::groebner::Ideal;
use generica_core::ideal_theory::regular_sequence_check;
use generica_core::perturb::{sample, PerturbSpace};
use generica_core::ring::{Poly, PolyMatrix, Ring};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn compose_is_zero(c: &ChainComplex) -> bool {
    let r = c.ring();
    (2..=c.length()).all(|i| c.diff(i - 1).unwrap().mul(r, c.diff(i).unwrap()).unwrap().is_zero())
}

/// `r - max { i : H_i != 0 }`.
fn koszul_grade(f: &[Poly], m: &Ideal) -> usize {
    let k = koszul_on_module(f, m).unwrap();
    (1..=f.len()).rev().find(|&i| !homology_vanishes(&k, i).vanishes).map_or(f.len(), |top| f.len() - top)
}

fn acyclic(c: &ChainComplex) -> bool {
    (1..=c.length()).all(|i| homology_vanishes(c, i).vanishes)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn koszul_complexes_compose_to_zero(gens in prop::collection::vec(terms(3, 3, 3), 1..5)) {
        let r = xyz();
        let f: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        let k = koszul_complex(&r, &f).unwrap();
        prop_assert!(compose_is_zero(&k));
        prop_assert_eq!(k.length(), f.len());
    }

    #[test]
    fn koszul_grade_is_invariant(
        gens in prop::collection::vec(terms_in_m(3, 2, 2), 2..4),
        shift in terms(3, 2, 2),
        perm_seed in 0usize..6,
    ) {
        let r = xyz();
        let f: Vec<Poly> = gens.iter().map(|t| poly(&r, t)).collect();
        prop_assume!(f.iter().any(|p| !p.is_zero()));
        let zero = Ideal::zero(&r);
        let base = koszul_grade(&f, &zero);
        let mut permuted = f.clone();
        permuted.rotate_left(perm_seed % f.len());
        if perm_seed % 2 == 1 {
            permuted.reverse();
        }
        prop_assert_eq!(koszul_grade(&permuted, &zero), base);
        // f_1 += c f_2 with c a polynomial: unimodular row operation
        let mut sheared = f.clone();
        sheared[0] = r.add(&f[0], &r.mul(&poly(&r, &shift), &f[1]));
        prop_assert_eq!(koszul_grade(&sheared, &zero), base);
    }
}

#[test]
fn eagon_northcott_verdicts_match_homology() {
    let (g, phi) = generic_matrix(&MatrixShape::generic(2, 3)).unwrap();
    let mut fixtures = vec![phi.clone()];
    // specializations: repeated column, a zero entry, and perturbed copies
    let mut rep = phi.clone();
    rep.set(0, 2, phi.get(0, 0).clone());
    rep.set(1, 2, phi.get(1, 0).clone());
    fixtures.push(rep.clone());
    let mut zeroed = phi.clone();
    zeroed.set(0, 0, Poly::zero());
    fixtures.push(zeroed);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // homogeneous quadratic perturbations of the repeated-column matrix
    let space = PerturbSpace::new(&g, vec![Ideal::unit(&g); 6], 2, Some(2)).unwrap();
    for _ in 0..3 {
        let psi = sample(&space, &mut rng).unwrap();
        let bumped = PolyMatrix::from_rows(vec![psi.components()[..3].to_vec(), psi.components()[3..].to_vec()]).unwrap();
        fixtures.push(rep.add(&g, &bumped).unwrap());
    }
    for phi in fixtures {
        let v = en_acyclic_by_grade(&g, &phi, -1).unwrap();
        for (i, verdict) in v.verdicts {
            let c = eagon_northcott(&g, &phi, i as usize).unwrap();
            assert!(compose_is_zero(&c));
            assert_eq!(acyclic(&c), verdict, "C^{i} of {}", phi.format(&g));
        }
    }
}

#[test]
fn tor_is_symmetric() {
    let r = xyz();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let ideals = [
        Ideal::new(&r, vec![x.clone()]),
        Ideal::new(&r, vec![x.clone(), y.clone()]),
        Ideal::new(&r, vec![r.mul(&x, &y)]),
        Ideal::new(&r, vec![r.add(&x, &r.mul(&z, &z)), y.clone()]),
    ];
    for a in &ideals {
        for b in &ideals {
            for j in 1..=2 {
                assert_eq!(
                    tor_vanishes(a, b, j).unwrap().vanishes,
                    tor_vanishes(b, a, j).unwrap().vanishes,
                    "Tor_{j}({}, {})",
                    a.format(),
                    b.format()
                );
            }
        }
    }
}

#[test]
fn regular_on_ring_and_module_kills_tor() {
    let r = xyz();
    let (x, y, z) = (r.var(0), r.var(1), r.var(2));
    let zero = Ideal::zero(&r);
    let cases: Vec<(Vec<Poly>, Ideal)> = vec![
        (vec![y.clone(), z.clone()], Ideal::new(&r, vec![x.clone()])),
        (vec![r.add(&x, &y)], Ideal::new(&r, vec![r.mul(&x, &z)])),
        (vec![r.mul(&z, &z), r.sub(&x, &y)], Ideal::new(&r, vec![r.mul(&x, &y)])),
    ];
    for (f, m) in cases {
        assert!(regular_sequence_check(&f, &zero, true).unwrap().regular);
        assert!(regular_sequence_check(&f, &m, true).unwrap().regular);
        let i = Ideal::new(&r, f.clone());
        for j in 1..=f.len() {
            assert!(tor_vanishes(&i, &m, j).unwrap().vanishes);
        }
    }
}

#[test]
fn koszul_over_a_quotient_module() {
    let s = Ring::default_with_vars(&["x", "y"]);
    let (x, y) = (s.var(0), s.var(1));
    // (x, y) on k[x,y]/(x y): grade 1
    let m = Ideal::new(&s, vec![s.mul(&x, &y)]);
    assert_eq!(koszul_grade(&[x, y], &m), 1);
}
