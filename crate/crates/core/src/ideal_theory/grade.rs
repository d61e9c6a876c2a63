use std::fmt;

use rand::Rng;

use crate::complexes::{homology_vanishes, koszul_on_module};
use crate::error::Result;
use crate::groebner::Ideal;
use crate::ring::Poly;

use super::{colon_ideal, height, is_nzd};

/// A grade value; `Infinite` exactly when `IM = M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Finite(usize),
    Infinite,
}

impl Grade {
    pub fn finite(self) -> Option<usize> {
        match self {
            Grade::Finite(g) => Some(g),
            Grade::Infinite => None,
        }
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grade::Finite(g) => write!(f, "{g}"),
            Grade::Infinite => f.write_str("infinity"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GradeMethod {
    Koszul,
    Ext,
    Direct,
}

impl fmt::Display for GradeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GradeMethod::Koszul => "koszul",
            GradeMethod::Ext => "ext",
            GradeMethod::Direct => "direct",
        })
    }
}

#[derive(Clone, Debug)]
pub struct GradeReport {
    pub ideal: Ideal,
    /// `J` with `M = R/J`.
    pub module_ann: Ideal,
    pub grade: Grade,
    pub method: GradeMethod,
    /// Regular sequence found by the direct method.
    pub witness: Vec<Poly>,
    /// False only when the direct search ran out of trials.
    pub certified: bool,
}

/// `grade = r - max { i : H_i(f; M) != 0 }` for the generators `f` of `I`.
pub fn grade_koszul(i: &Ideal, module_ann: &Ideal) -> Result<GradeReport> {
    i.check_same(module_ann)?;
    let report = |grade| GradeReport {
        ideal: i.clone(),
        module_ann: module_ann.clone(),
        grade,
        method: GradeMethod::Koszul,
        witness: Vec::new(),
        certified: true,
    };
    if i.sum(module_ann)?.is_unit() {
        return Ok(report(Grade::Infinite));
    }
    // generators that vanish on M contribute nothing
    let gens: Vec<Poly> = i.gens().iter().filter(|g| !module_ann.contains(g)).cloned().collect();
    if gens.is_empty() {
        return Ok(report(Grade::Finite(0)));
    }
    let k = koszul_on_module(&gens, module_ann)?;
    let r = gens.len();
    for top in (1..=r).rev() {
        if !homology_vanishes(&k, top).vanishes {
            return Ok(report(Grade::Finite(r - top)));
        }
    }
    Ok(report(Grade::Finite(r)))
}

/// Greedy search for a maximal `M`-regular sequence in `I`. A level is
/// certified final when `(J_k : I) != J_k`, i.e. `I` consists of zero
/// divisors on `R/J_k`. Candidates are the generators, then random
/// combinations of them; if `trials` combinations fail the result is an
/// uncertified lower bound.
pub fn grade_direct<R: Rng + ?Sized>(
    i: &Ideal,
    module_ann: &Ideal,
    rng: &mut R,
    trials: usize,
) -> Result<GradeReport> {
    i.check_same(module_ann)?;
    let mut report = GradeReport {
        ideal: i.clone(),
        module_ann: module_ann.clone(),
        grade: Grade::Infinite,
        method: GradeMethod::Direct,
        witness: Vec::new(),
        certified: true,
    };
    if i.sum(module_ann)?.is_unit() {
        return Ok(report);
    }
    let ring = i.ring();
    let field = ring.field();
    let mut current = module_ann.clone();
    loop {
        let k = report.witness.len();
        if !colon_ideal(&current, i)?.same_as(&current) {
            report.grade = Grade::Finite(k);
            return Ok(report);
        }
        let mut found = None;
        for g in i.gens() {
            if is_nzd(g, &current)? {
                found = Some(g.clone());
                break;
            }
        }
        if found.is_none() {
            for _ in 0..trials {
                let combo = ring.sum(
                    i.gens().iter().map(|g| ring.scale(g, &field.random(rng))).collect::<Vec<_>>().iter(),
                );
                if !combo.is_zero() && is_nzd(&combo, &current)? {
                    found = Some(combo);
                    break;
                }
            }
        }
        match found {
            Some(a) => {
                current = current.extended(std::slice::from_ref(&a));
                report.witness.push(a);
            }
            None => {
                report.grade = Grade::Finite(k);
                report.certified = false;
                return Ok(report);
            }
        }
    }
}

/// The cheapest exact grade: `height I` in a polynomial ring acting on
/// itself (a Cohen–Macaulay ring), the Koszul method otherwise.
pub fn grade_of(i: &Ideal, module_ann: &Ideal) -> Result<Grade> {
    i.check_same(module_ann)?;
    if !i.ring().has_base() && module_ann.is_zero() {
        if i.is_unit() {
            return Ok(Grade::Infinite);
        }
        return Ok(Grade::Finite(height(i)?.height));
    }
    Ok(grade_koszul(i, module_ann)?.grade)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::grade_via_ext;
    use crate::ring::Ring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn koszul_examples() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let zero = Ideal::zero(&r);
        let m = Ideal::maximal(&r);
        assert_eq!(grade_koszul(&m, &zero).unwrap().grade, Grade::Finite(3));
        let s = Ring::default_with_vars(&["x", "y"]);
        let xxy = Ideal::new(&s, vec![s.var(0), s.mul(&s.var(0), &s.var(1))]);
        assert_eq!(grade_koszul(&xxy, &Ideal::zero(&s)).unwrap().grade, Grade::Finite(1));
        let ix = Ideal::new(&r, vec![x.clone()]);
        assert_eq!(grade_koszul(&ix, &ix).unwrap().grade, Grade::Finite(0));
        let i = Ideal::new(&r, vec![r.mul(&x, &y), r.mul(&x, &z)]);
        assert_eq!(grade_koszul(&i, &zero).unwrap().grade, Grade::Finite(1));
        assert_eq!(grade_koszul(&Ideal::unit(&r), &zero).unwrap().grade, Grade::Infinite);
    }

    #[test]
    fn direct_examples_match_koszul_and_ext() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let zero = Ideal::zero(&r);
        let fixtures = vec![
            (Ideal::new(&r, vec![x.clone(), y.clone()]), zero.clone()),
            (Ideal::new(&r, vec![r.mul(&x, &y), r.mul(&x, &z)]), zero.clone()),
            (Ideal::new(&r, vec![x.clone()]), Ideal::new(&r, vec![x.clone()])),
            (Ideal::maximal(&r), Ideal::new(&r, vec![r.mul(&x, &y)])),
        ];
        for (i, j) in fixtures {
            let d = grade_direct(&i, &j, &mut rng, 20).unwrap();
            assert!(d.certified);
            assert_eq!(d.grade, grade_koszul(&i, &j).unwrap().grade);
            assert_eq!(d.grade, grade_via_ext(&i, &j).unwrap());
            assert_eq!(d.witness.len(), d.grade.finite().unwrap());
        }
    }

    #[test]
    fn direct_witness_for_the_maximal_ideal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let r = Ring::default_with_vars(&["x", "y"]);
        let d = grade_direct(&Ideal::maximal(&r), &Ideal::zero(&r), &mut rng, 10).unwrap();
        assert_eq!(d.grade, Grade::Finite(2));
        assert_eq!(d.witness, vec![r.var(0), r.var(1)]);
    }

    #[test]
    fn infinity_displays_as_a_word() {
        assert_eq!(Grade::Infinite.to_string(), "infinity");
        assert!(Grade::Finite(7) < Grade::Infinite);
    }
}
