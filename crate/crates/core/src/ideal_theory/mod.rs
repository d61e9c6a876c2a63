//! Ideal arithmetic and the invariants built on it: dimension, height,
//! non-zero-divisors, regular sequences, grade, and graded depth.
//!
//! Modules are cyclic, `M = R/J`, and are passed as the ideal `J`.

mod grade;

use crate::error::{Error, Result};
use crate::groebner::{engine, engine::SVec, resolve_quotient, Ideal};
use crate::ring::{MonomialOrder, Poly, PolyRing, Term};

pub use grade::{grade_direct, grade_koszul, grade_of, Grade, GradeMethod, GradeReport};

pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.sum(b)
}

pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.product(b)
}

fn fresh_name(vars: &[String]) -> String {
    let mut name = String::from("t_");
    while vars.contains(&name) {
        name.push('_');
    }
    name
}

/// `(a + J) cap (b + J)` in `k[x]` by eliminating `t` from
/// `t*a + (1 - t)*b`, as polynomials of the ambient ring.
fn ambient_intersection(poly: &PolyRing, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut vars = vec![fresh_name(poly.vars())];
    vars.extend(poly.vars().iter().cloned());
    let ext = PolyRing::new(poly.field().clone(), vars, MonomialOrder::Elimination(1));
    let t = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let lift = |p: &Poly| ext.from_terms(poly.shift(p, 1));
    let mut gens: Vec<SVec> = a.iter().map(|p| SVec::from_poly(&ext.mul(&t, &lift(p)), 0)).collect();
    gens.extend(b.iter().map(|p| SVec::from_poly(&ext.mul(&one_minus_t, &lift(p)), 0)));
    engine::groebner(&ext, gens)
        .into_iter()
        .map(|v| v.component(0))
        .filter(|p| p.terms().iter().all(|term| term.mono.exponents()[0] == 0))
        .map(|p| {
            poly.from_terms(
                p.into_terms().into_iter().map(|term| Term { mono: term.mono.unshifted(1), coeff: term.coeff }).collect(),
            )
        })
        .collect()
}

/// `a cap b`. Every output generator is checked to lie in both inputs.
pub fn ideal_intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check_same(b)?;
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(a.ring()));
    }
    let gens = ambient_intersection(a.ring().poly(), a.groebner(), b.groebner());
    let out = Ideal::new(a.ring(), gens);
    if !out.gens().iter().all(|g| a.contains(g) && b.contains(g)) {
        return Err(Error::Certificate("intersection generator outside an input".into()));
    }
    Ok(out)
}

/// Result of a colon computation.
#[derive(Clone, Debug)]
pub struct Colon {
    pub ideal: Ideal,
    /// The divisor was zero, so the answer is the unit ideal by convention.
    pub divisor_was_zero: bool,
}

/// `a : f = { g : g f in a }`, as `(a cap (f)) / f`.
pub fn ideal_quotient(a: &Ideal, f: &Poly) -> Result<Colon> {
    crate::groebner::check_poly(a.ring(), f)?;
    let ring = a.ring();
    let f = ring.reduce(f);
    if f.is_zero() {
        return Ok(Colon { ideal: Ideal::unit(ring), divisor_was_zero: true });
    }
    let poly = ring.poly();
    let meet = ambient_intersection(poly, a.groebner(), std::slice::from_ref(&f));
    let mut gens = Vec::with_capacity(meet.len());
    for h in &meet {
        gens.push(
            poly.div_exact(h, &f)
                .ok_or_else(|| Error::Certificate("intersection element not divisible by f".into()))?,
        );
    }
    let out = Ideal::new(ring, gens);
    if !out.gens().iter().all(|g| a.contains(&ring.mul(g, &f))) {
        return Err(Error::Certificate("colon generator times f outside the ideal".into()));
    }
    Ok(Colon { ideal: out, divisor_was_zero: false })
}

/// `a : b = cap_g (a : g)` over the generators `g` of `b`.
pub fn colon_ideal(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check_same(b)?;
    let mut acc: Option<Ideal> = None;
    for g in b.gens() {
        let c = ideal_quotient(a, g)?.ideal;
        acc = Some(match acc {
            None => c,
            Some(prev) => ideal_intersect(&prev, &c)?,
        });
        if acc.as_ref().is_some_and(|i| i.same_as(a)) {
            break;
        }
    }
    Ok(acc.unwrap_or_else(|| Ideal::unit(a.ring())))
}

/// `Ann(R^r / (I_1 + ... + I_r)) = I_1 cap ... cap I_r`.
pub fn annihilator_of_quotient(space: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = space.split_first().ok_or_else(|| Error::Dimension("empty list of ideals".into()))?;
    let mut acc = first.clone();
    for i in rest {
        acc = ideal_intersect(&acc, i)?;
    }
    Ok(acc)
}

/// `dim R/I` from the leading-term ideal: the size of a largest set of
/// variables containing the support of no leading monomial. The unit ideal
/// has dimension -1.
pub fn krull_dim(i: &Ideal) -> i64 {
    if i.is_unit() {
        return -1;
    }
    let v = i.ring().nvars();
    let masks: Vec<u64> = i.leading_monomials().iter().map(|m| m.support_mask()).collect();
    let mut best = 0u32;
    for s in 0u64..(1u64 << v) {
        let size = s.count_ones();
        if size > best && masks.iter().all(|&m| m & !s != 0) {
            best = size;
        }
    }
    best as i64
}

#[derive(Clone, Debug)]
pub struct HeightReport {
    pub ideal: Ideal,
    pub height: usize,
    pub dim_ambient: usize,
    pub dim_quotient: usize,
    /// Set over quotient rings, where `dim R - dim R/I` is only the
    /// codimension of the largest component.
    pub equidimensionality_assumed: bool,
}

/// `height I = dim R - dim R/I`.
pub fn height(i: &Ideal) -> Result<HeightReport> {
    if i.is_unit() {
        return Err(Error::UnitIdealHeight);
    }
    let dim_ambient = krull_dim(&Ideal::zero(i.ring()));
    let dim_quotient = krull_dim(i);
    Ok(HeightReport {
        ideal: i.clone(),
        height: (dim_ambient - dim_quotient) as usize,
        dim_ambient: dim_ambient as usize,
        dim_quotient: dim_quotient as usize,
        equidimensionality_assumed: i.ring().has_base(),
    })
}

/// `f` is a non-zero-divisor on `R/J` iff `J : f = J`.
pub fn is_nzd(f: &Poly, module_ann: &Ideal) -> Result<bool> {
    Ok(ideal_quotient(module_ann, f)?.ideal.same_as(module_ann))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegSeqResult {
    pub regular: bool,
    /// 1-based index of the first element that is a zero divisor.
    pub first_failure: Option<usize>,
    /// `(f)M != M`.
    pub proper: bool,
}

/// Checks that each `f_{i+1}` is a non-zero-divisor on `R/(J + (f_1..f_i))`,
/// and, if `require_proper`, that `J + (f) != R`.
pub fn regular_sequence_check(f: &[Poly], module_ann: &Ideal, require_proper: bool) -> Result<RegSeqResult> {
    let mut current = module_ann.clone();
    for (k, fk) in f.iter().enumerate() {
        if !is_nzd(fk, &current)? {
            let proper = !module_ann.extended(f).is_unit();
            return Ok(RegSeqResult { regular: false, first_failure: Some(k + 1), proper });
        }
        current = current.extended(std::slice::from_ref(fk));
    }
    let proper = !current.is_unit();
    Ok(RegSeqResult { regular: proper || !require_proper, first_failure: None, proper })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub pd: usize,
    pub depth: usize,
    pub dim: usize,
    pub is_cm: bool,
    /// `pd R/I = grade I`.
    pub perfect: bool,
    pub betti: Vec<usize>,
}

/// Projective dimension, depth and the Cohen–Macaulay property of `R/I`
/// for homogeneous `I` in a polynomial ring, via the minimal resolution
/// and Auslander–Buchsbaum.
pub fn pd_depth_cm(i: &Ideal) -> Result<PdReport> {
    let ring = i.ring();
    if ring.has_base() {
        return Err(Error::InvalidRing("graded invariants need a polynomial ring".into()));
    }
    if !i.is_homogeneous() {
        return Err(Error::Inhomogeneous);
    }
    if i.is_unit() {
        return Err(Error::UnitIdealHeight);
    }
    let v = ring.nvars();
    let res = resolve_quotient(ring, i.gens(), v + 1)?;
    if res.truncated {
        return Err(Error::Certificate("resolution longer than the variable count".into()));
    }
    let pd = res.length();
    let depth = v - pd;
    let dim = krull_dim(i) as usize;
    let grade = grade_of(i, &Ideal::zero(ring))?;
    Ok(PdReport {
        pd,
        depth,
        dim,
        is_cm: depth == dim,
        perfect: grade == Grade::Finite(pd),
        betti: res.betti().to_vec(),
    })
}
