//! Buchberger's algorithm on sparse vectors of the free module `k[x]^n`
//! under the position-over-term extension of the ring order.
//!
//! Ideals are handled as rank-one modules. The engine works in the free
//! polynomial ring; quotient rings are handled by callers, who add the base
//! ideal's generators (times each basis vector) to the input.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use crate::ring::{Coeff, Monomial, Poly, PolyRing, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VTerm {
    pub pos: u32,
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// A vector of `k[x]^n` as a list of terms sorted strictly decreasing in
/// position-over-term order (`e_0 > e_1 > ...`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SVec {
    pub terms: Vec<VTerm>,
}

impl SVec {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &VTerm {
        &self.terms[0]
    }

    pub fn from_poly(p: &Poly, pos: u32) -> SVec {
        SVec {
            terms: p
                .terms()
                .iter()
                .map(|t| VTerm { pos, mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        }
    }

    /// Component `pos`, assuming the vector was built under `ring`'s order.
    pub fn component(&self, pos: u32) -> Poly {
        Poly::from_sorted(
            self.terms
                .iter()
                .filter(|t| t.pos == pos)
                .map(|t| Term { mono: t.mono.clone(), coeff: t.coeff.clone() })
                .collect(),
        )
    }

    pub fn single_position(&self) -> bool {
        self.terms.iter().all(|t| t.pos == self.terms[0].pos)
    }

    pub fn min_pos(&self) -> Option<u32> {
        self.terms.first().map(|t| t.pos)
    }
}

#[inline]
pub fn cmp_key(ring: &PolyRing, a_pos: u32, a: &Monomial, b_pos: u32, b: &Monomial) -> Ordering {
    b_pos.cmp(&a_pos).then_with(|| ring.cmp(a, b))
}

pub fn from_terms(ring: &PolyRing, mut terms: Vec<VTerm>) -> SVec {
    let field = ring.field();
    terms.sort_by(|a, b| cmp_key(ring, b.pos, &b.mono, a.pos, &a.mono));
    let mut out: Vec<VTerm> = Vec::with_capacity(terms.len());
    for t in terms {
        match out.last_mut() {
            Some(last) if last.pos == t.pos && last.mono == t.mono => {
                last.coeff = field.add(&last.coeff, &t.coeff);
            }
            _ => out.push(t),
        }
    }
    out.retain(|t| !field.is_zero(&t.coeff));
    SVec { terms: out }
}

/// `a + c * m * b` for sorted term slices.
pub fn add_scaled(ring: &PolyRing, a: &[VTerm], c: &Coeff, m: &Monomial, b: &[VTerm]) -> Vec<VTerm> {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    for tb in b {
        let mono = tb.mono.mul(m);
        let coeff = f.mul(c, &tb.coeff);
        loop {
            if i < a.len() {
                match cmp_key(ring, a[i].pos, &a[i].mono, tb.pos, &mono) {
                    Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                        continue;
                    }
                    Ordering::Equal => {
                        let s = f.add(&a[i].coeff, &coeff);
                        if !f.is_zero(&s) {
                            out.push(VTerm { pos: tb.pos, mono, coeff: s });
                        }
                        i += 1;
                        break;
                    }
                    Ordering::Less => {}
                }
            }
            out.push(VTerm { pos: tb.pos, mono, coeff });
            break;
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

pub fn add(ring: &PolyRing, a: &SVec, b: &SVec) -> SVec {
    let one = ring.field().one();
    SVec { terms: add_scaled(ring, &a.terms, &one, &Monomial::one(ring.nvars()), &b.terms) }
}

pub fn scale(ring: &PolyRing, a: &SVec, c: &Coeff, m: &Monomial) -> SVec {
    let f = ring.field();
    if f.is_zero(c) {
        return SVec::default();
    }
    SVec {
        terms: a
            .terms
            .iter()
            .map(|t| VTerm { pos: t.pos, mono: t.mono.mul(m), coeff: f.mul(c, &t.coeff) })
            .collect(),
    }
}

/// `p * a` for a polynomial `p`.
pub fn mul_poly(ring: &PolyRing, p: &Poly, a: &SVec) -> SVec {
    let mut terms = Vec::with_capacity(p.len() * a.terms.len());
    for s in p.terms() {
        for t in &a.terms {
            terms.push(VTerm { pos: t.pos, mono: t.mono.mul(&s.mono), coeff: ring.field().mul(&s.coeff, &t.coeff) });
        }
    }
    from_terms(ring, terms)
}

pub fn monic(ring: &PolyRing, a: SVec) -> SVec {
    if a.is_zero() || ring.field().is_one(&a.terms[0].coeff) {
        return a;
    }
    let inv = ring.field().inv(&a.terms[0].coeff);
    scale(ring, &a, &inv, &Monomial::one(ring.nvars()))
}

/// S-vector of two monic vectors with the same leading position.
fn s_vector(ring: &PolyRing, f: &SVec, g: &SVec) -> SVec {
    let (lf, lg) = (f.lead(), g.lead());
    debug_assert_eq!(lf.pos, lg.pos);
    let l = lf.mono.lcm(&lg.mono);
    let uf = lf.mono.quotient_of(&l).expect("lcm divisible");
    let ug = lg.mono.quotient_of(&l).expect("lcm divisible");
    let field = ring.field();
    let cf = field.inv(&lf.coeff);
    let cg = field.neg(&field.inv(&lg.coeff));
    let a = scale(ring, &SVec { terms: f.terms[1..].to_vec() }, &cf, &uf);
    SVec { terms: add_scaled(ring, &a.terms, &cg, &ug, &g.terms[1..]) }
}

fn find_divisor(basis: &[SVec], pos: u32, mono: &Monomial) -> Option<usize> {
    basis.iter().position(|g| {
        let l = g.lead();
        l.pos == pos && l.mono.divides(mono)
    })
}

/// Full reduction of `p` modulo `basis` (every element nonzero). The result
/// has no term divisible by a leading term of `basis`.
pub fn reduce(ring: &PolyRing, p: &SVec, basis: &[SVec]) -> SVec {
    reduce_tracked(ring, p, basis, |_, _, _| {})
}

/// Full reduction that reports each step `(basis index, coefficient,
/// monomial)` meaning `p -= c * m * basis[index]`.
pub fn reduce_tracked<F>(ring: &PolyRing, p: &SVec, basis: &[SVec], mut on_step: F) -> SVec
where
    F: FnMut(usize, &Coeff, &Monomial),
{
    let field = ring.field();
    let mut rest = p.terms.clone();
    let mut start = 0;
    let mut out = Vec::new();
    while start < rest.len() {
        let lt = &rest[start];
        match find_divisor(basis, lt.pos, &lt.mono) {
            Some(k) => {
                let g = &basis[k];
                let m = g.lead().mono.quotient_of(&lt.mono).expect("divisor");
                let c = field.div(&lt.coeff, &g.lead().coeff);
                on_step(k, &c, &m);
                let neg = field.neg(&c);
                rest = add_scaled(ring, &rest[start + 1..], &neg, &m, &g.terms[1..]);
                start = 0;
            }
            None => {
                out.push(rest[start].clone());
                start += 1;
            }
        }
    }
    SVec { terms: out }
}

static SELF_CERTIFY: AtomicBool = AtomicBool::new(true);
static COMPUTED: AtomicU64 = AtomicU64::new(0);
static CERTIFIED: AtomicU64 = AtomicU64::new(0);
static FAILED: AtomicU64 = AtomicU64::new(0);

/// Process-wide counters of Gröbner basis computations and their
/// S-vector certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbStats {
    pub computed: u64,
    pub certified: u64,
    pub failed: u64,
}

pub fn stats() -> GbStats {
    GbStats {
        computed: COMPUTED.load(AtomicOrdering::SeqCst),
        certified: CERTIFIED.load(AtomicOrdering::SeqCst),
        failed: FAILED.load(AtomicOrdering::SeqCst),
    }
}

/// Turns the post-hoc S-vector certificate on or off for every subsequent
/// Gröbner basis computation (on by default).
pub fn set_self_certify(on: bool) {
    SELF_CERTIFY.store(on, AtomicOrdering::SeqCst);
}

pub fn self_certify_enabled() -> bool {
    SELF_CERTIFY.load(AtomicOrdering::SeqCst)
}

/// Every S-vector of pairs with equal leading position reduces to zero.
/// No criteria are applied here.
pub fn certify(ring: &PolyRing, basis: &[SVec]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if basis[i].lead().pos != basis[j].lead().pos {
                continue;
            }
            let s = s_vector(ring, &basis[i], &basis[j]);
            if !reduce(ring, &s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}

struct Builder<'a> {
    ring: &'a PolyRing,
    basis: Vec<SVec>,
    queue: BinaryHeap<Reverse<(u32, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
}

impl<'a> Builder<'a> {
    fn insert(&mut self, h: SVec) {
        let h = monic(self.ring, h);
        let n = self.basis.len();
        for k in 0..n {
            let g = &self.basis[k];
            if g.lead().pos != h.lead().pos {
                continue;
            }
            if g.lead().mono.is_coprime(&h.lead().mono) && g.single_position() && h.single_position() {
                continue;
            }
            let deg = g.lead().mono.lcm(&h.lead().mono).degree();
            self.queue.push(Reverse((deg, n, k)));
            self.pending.insert((k, n));
        }
        self.basis.push(h);
    }

    fn chain_criterion(&self, i: usize, j: usize) -> bool {
        let (li, lj) = (self.basis[i].lead(), self.basis[j].lead());
        let l = li.mono.lcm(&lj.mono);
        self.basis.iter().enumerate().any(|(k, g)| {
            k != i
                && k != j
                && g.lead().pos == li.pos
                && g.lead().mono.divides(&l)
                && !self.pending.contains(&(i.min(k), i.max(k)))
                && !self.pending.contains(&(j.min(k), j.max(k)))
        })
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens`: monic,
/// minimal, tail-reduced and sorted by decreasing leading term.
pub fn groebner(ring: &PolyRing, gens: Vec<SVec>) -> Vec<SVec> {
    let mut b = Builder { ring, basis: Vec::new(), queue: BinaryHeap::new(), pending: HashSet::new() };
    for g in gens {
        let r = reduce(ring, &g, &b.basis);
        if !r.is_zero() {
            b.insert(r);
        }
    }
    while let Some(Reverse((_, j, i))) = b.queue.pop() {
        b.pending.remove(&(i, j));
        if b.chain_criterion(i, j) {
            continue;
        }
        let s = s_vector(ring, &b.basis[i], &b.basis[j]);
        let r = reduce(ring, &s, &b.basis);
        if !r.is_zero() {
            b.insert(r);
        }
    }
    let reduced = interreduce(ring, b.basis);
    COMPUTED.fetch_add(1, AtomicOrdering::SeqCst);
    if self_certify_enabled() {
        if certify(ring, &reduced) {
            CERTIFIED.fetch_add(1, AtomicOrdering::SeqCst);
        } else {
            FAILED.fetch_add(1, AtomicOrdering::SeqCst);
        }
    }
    reduced
}

/// Minimalizes and tail-reduces a Gröbner basis.
pub fn interreduce(ring: &PolyRing, basis: Vec<SVec>) -> Vec<SVec> {
    let n = basis.len();
    let mut keep = vec![true; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || !keep[j] {
                continue;
            }
            let (li, lj) = (basis[i].lead(), basis[j].lead());
            if li.pos == lj.pos && lj.mono.divides(&li.mono) && (li.mono != lj.mono || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let kept: Vec<SVec> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();
    let mut out = Vec::with_capacity(kept.len());
    for (i, g) in kept.iter().enumerate() {
        let others: Vec<SVec> =
            kept.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, h)| h.clone()).collect();
        let tail = reduce(ring, &SVec { terms: g.terms[1..].to_vec() }, &others);
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(tail.terms);
        out.push(monic(ring, SVec { terms }));
    }
    out.sort_by(|a, b| {
        let (x, y) = (a.lead(), b.lead());
        cmp_key(ring, y.pos, &y.mono, x.pos, &x.mono)
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, MonomialOrder};

    fn ring(vars: &[&str], order: MonomialOrder) -> PolyRing {
        PolyRing::new(Field::Prime(32003), vars.iter().map(|s| s.to_string()).collect(), order)
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        let (x, y) = (r.var(0), r.var(1));
        let gens = vec![SVec::from_poly(&r.mul(&x, &x), 0), SVec::from_poly(&r.mul(&x, &y), 0)];
        let gb = groebner(&r, gens.clone());
        assert_eq!(gb, gens);
    }

    #[test]
    fn unit_ideal() {
        let r = ring(&["x"], MonomialOrder::Grevlex);
        let x = r.var(0);
        let gb = groebner(&r, vec![SVec::from_poly(&r.add(&x, &r.one()), 0), SVec::from_poly(&x, 0)]);
        assert_eq!(gb, vec![SVec::from_poly(&r.one(), 0)]);
    }

    #[test]
    fn twisted_cubic_certifies() {
        let r = ring(&["z", "y", "x"], MonomialOrder::Lex);
        let (z, y, x) = (r.var(0), r.var(1), r.var(2));
        let g1 = r.sub(&y, &r.pow(&x, 2));
        let g2 = r.sub(&z, &r.pow(&x, 3));
        let gb = groebner(&r, vec![SVec::from_poly(&g1, 0), SVec::from_poly(&g2, 0)]);
        assert!(certify(&r, &gb));
        let target = r.sub(&r.pow(&y, 3), &r.pow(&z, 2));
        assert!(reduce(&r, &SVec::from_poly(&target, 0), &gb).is_zero());
    }

    #[test]
    fn basis_is_idempotent() {
        let r = ring(&["x", "y", "z"], MonomialOrder::Grevlex);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![
            SVec::from_poly(&r.sub(&r.mul(&x, &y), &z), 0),
            SVec::from_poly(&r.sub(&r.mul(&y, &z), &x), 0),
            SVec::from_poly(&r.sub(&r.mul(&z, &x), &y), 0),
        ];
        let gb = groebner(&r, gens);
        assert_eq!(groebner(&r, gb.clone()), gb);
    }
}
