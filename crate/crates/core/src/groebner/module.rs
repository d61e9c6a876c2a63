use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::{Poly, PolyMatrix, Ring};

use super::engine::{self, SVec, VTerm};
use super::ideal::check_poly;

/// An element of the free module `R^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeVec {
    components: Vec<Poly>,
}

impl FreeVec {
    pub fn new(components: Vec<Poly>) -> FreeVec {
        FreeVec { components }
    }

    pub fn zero(rank: usize) -> FreeVec {
        FreeVec { components: vec![Poly::zero(); rank] }
    }

    /// The basis vector `e_i` of `R^rank`.
    pub fn basis(ring: &Ring, rank: usize, i: usize) -> FreeVec {
        let mut v = FreeVec::zero(rank);
        v.components[i] = ring.one();
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.components
    }

    pub fn get(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, ring: &Ring, other: &FreeVec) -> FreeVec {
        FreeVec::new(self.components.iter().zip(&other.components).map(|(a, b)| ring.add(a, b)).collect())
    }

    pub fn scale_by(&self, ring: &Ring, p: &Poly) -> FreeVec {
        FreeVec::new(self.components.iter().map(|a| ring.mul(a, p)).collect())
    }

    pub fn format(&self, ring: &Ring) -> String {
        let parts: Vec<String> = self.components.iter().map(|p| ring.format(p)).collect();
        format!("({})", parts.join(", "))
    }
}

/// Components `offset..offset+len` of `v` become positions of one vector.
pub(crate) fn to_svec(components: &[Poly], offset: u32) -> SVec {
    let mut terms = Vec::new();
    for (i, p) in components.iter().enumerate() {
        let pos = offset + i as u32;
        terms.extend(p.terms().iter().map(|t| VTerm { pos, mono: t.mono.clone(), coeff: t.coeff.clone() }));
    }
    SVec { terms }
}

/// Positions `offset..offset+len` of `v` as polynomials.
pub(crate) fn from_svec(v: &SVec, offset: u32, len: usize) -> Vec<Poly> {
    let mut buckets: Vec<Vec<crate::ring::Term>> = vec![Vec::new(); len];
    for t in &v.terms {
        if t.pos >= offset && ((t.pos - offset) as usize) < len {
            buckets[(t.pos - offset) as usize].push(crate::ring::Term { mono: t.mono.clone(), coeff: t.coeff.clone() });
        }
    }
    buckets.into_iter().map(Poly::from_sorted).collect()
}

fn check_vec(ring: &Ring, rank: usize, v: &FreeVec) -> Result<()> {
    if v.rank() != rank {
        return Err(Error::Dimension(format!("vector of rank {} in a free module of rank {rank}", v.rank())));
    }
    for p in v.components() {
        check_poly(ring, p)?;
    }
    Ok(())
}

fn base_vectors(ring: &Ring, rank: usize) -> Vec<SVec> {
    let mut out = Vec::new();
    for s in 0..rank {
        out.extend(ring.base_gb().iter().map(|b| SVec::from_poly(b, s as u32)));
    }
    out
}

/// A finitely generated submodule of `R^rank` with a lazily cached
/// position-over-term Gröbner basis (of its preimage in `k[x]^rank`).
pub struct Submodule {
    ring: Arc<Ring>,
    rank: usize,
    gens: Vec<FreeVec>,
    gb: OnceLock<Arc<Vec<SVec>>>,
}

impl Clone for Submodule {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Submodule { ring: self.ring.clone(), rank: self.rank, gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.format(&self.ring)).collect();
        write!(f, "Submodule(rank {}, [{}])", self.rank, gens.join(", "))
    }
}

impl Submodule {
    /// Generators are reduced modulo the base ideal; zero vectors dropped.
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: Vec<FreeVec>) -> Result<Submodule> {
        for g in &gens {
            check_vec(ring, rank, g)?;
        }
        let gens = gens
            .into_iter()
            .map(|g| FreeVec::new(g.components.iter().map(|p| ring.reduce(p)).collect()))
            .filter(|g| !g.is_zero())
            .collect();
        Ok(Submodule { ring: ring.clone(), rank, gens, gb: OnceLock::new() })
    }

    /// Column span of a matrix.
    pub fn from_matrix(ring: &Arc<Ring>, m: &PolyMatrix) -> Submodule {
        Submodule::new(ring, m.rows(), m.columns().into_iter().map(FreeVec::new).collect())
            .expect("columns have the row count")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gens(&self) -> &[FreeVec] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn fresh(&self) -> Submodule {
        Submodule { ring: self.ring.clone(), rank: self.rank, gens: self.gens.clone(), gb: OnceLock::new() }
    }

    pub fn to_matrix(&self) -> PolyMatrix {
        PolyMatrix::from_columns(self.rank, &self.gens.iter().map(|g| g.components().to_vec()).collect::<Vec<_>>())
            .expect("consistent rank")
    }

    pub fn groebner(&self) -> &[SVec] {
        self.gb.get_or_init(|| {
            let mut input: Vec<SVec> = self.gens.iter().map(|g| to_svec(g.components(), 0)).collect();
            input.extend(base_vectors(&self.ring, self.rank));
            Arc::new(engine::groebner(self.ring.poly(), input))
        })
    }

    /// The basis elements as vectors of `R^rank`.
    pub fn groebner_vectors(&self) -> Vec<FreeVec> {
        self.groebner().iter().map(|g| FreeVec::new(from_svec(g, 0, self.rank))).collect()
    }

    pub fn normal_form(&self, v: &FreeVec) -> Result<FreeVec> {
        check_vec(&self.ring, self.rank, v)?;
        Ok(self.nf(v))
    }

    pub(crate) fn nf(&self, v: &FreeVec) -> FreeVec {
        let r = engine::reduce(self.ring.poly(), &to_svec(v.components(), 0), self.groebner());
        FreeVec::new(from_svec(&r, 0, self.rank))
    }

    pub fn contains(&self, v: &FreeVec) -> bool {
        self.nf(v).is_zero()
    }

    pub fn contains_module(&self, other: &Submodule) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn same_as(&self, other: &Submodule) -> bool {
        self.ring == other.ring && self.rank == other.rank && self.groebner() == other.groebner()
    }

    /// The submodule is all of `R^rank`.
    pub fn is_whole(&self) -> bool {
        (0..self.rank).all(|s| self.contains(&FreeVec::basis(&self.ring, self.rank, s)))
    }
}

/// Gröbner basis of the module generated by `(c_i, e_i)` in `R^(b+a)`,
/// where `c_i` are the given generators in `R^b`. Elements whose leading
/// position lies in the second block are syzygies; reducing `(v, 0)` to
/// `(0, w)` shows `v = -sum w_i c_i`.
pub struct Lifter {
    ring: Arc<Ring>,
    rank: usize,
    ngens: usize,
    gb: Vec<SVec>,
}

impl Lifter {
    pub fn new(ring: &Arc<Ring>, rank: usize, gens: &[FreeVec]) -> Result<Lifter> {
        for g in gens {
            check_vec(ring, rank, g)?;
        }
        let a = gens.len();
        let mut input = Vec::with_capacity(a + rank * ring.base_gb().len());
        for (i, g) in gens.iter().enumerate() {
            let c: Vec<Poly> = g.components().iter().map(|p| ring.reduce(p)).collect();
            let mut v = to_svec(&c, 0);
            v.terms.push(VTerm {
                pos: (rank + i) as u32,
                mono: crate::ring::Monomial::one(ring.nvars()),
                coeff: ring.field().one(),
            });
            input.push(v);
        }
        input.extend(base_vectors(ring, rank));
        let gb = engine::groebner(ring.poly(), input);
        Ok(Lifter { ring: ring.clone(), rank, ngens: a, gb })
    }

    pub fn from_matrix(ring: &Arc<Ring>, m: &PolyMatrix) -> Lifter {
        let cols: Vec<FreeVec> = m.columns().into_iter().map(FreeVec::new).collect();
        Lifter::new(ring, m.rows(), &cols).expect("columns have the row count")
    }

    /// Generators of the full syzygy module of the generators over `R`.
    pub fn syzygies(&self) -> Vec<FreeVec> {
        let mut out: Vec<FreeVec> = Vec::new();
        for g in &self.gb {
            if (g.lead().pos as usize) < self.rank {
                continue;
            }
            let comps: Vec<Poly> =
                from_svec(g, self.rank as u32, self.ngens).iter().map(|p| self.ring.reduce(p)).collect();
            let v = FreeVec::new(comps);
            if !v.is_zero() && !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    /// Coefficients `a` with `sum a_i c_i = v` in `R`, if `v` lies in the span.
    pub fn lift(&self, v: &FreeVec) -> Option<FreeVec> {
        if v.rank() != self.rank {
            return None;
        }
        let r = engine::reduce(self.ring.poly(), &to_svec(v.components(), 0), &self.gb);
        if r.terms.iter().any(|t| (t.pos as usize) < self.rank) {
            return None;
        }
        let w = from_svec(&r, self.rank as u32, self.ngens);
        Some(FreeVec::new(w.iter().map(|p| self.ring.reduce(&self.ring.neg(p))).collect()))
    }

    /// Normal form of `v` modulo the span of the generators.
    pub fn normal_form(&self, v: &FreeVec) -> FreeVec {
        let r = engine::reduce(self.ring.poly(), &to_svec(v.components(), 0), &self.gb);
        FreeVec::new(from_svec(&r, 0, self.rank))
    }
}

/// `sum a_i c_i` in `R^rank`.
pub fn combine(ring: &Ring, rank: usize, gens: &[FreeVec], coeffs: &FreeVec) -> FreeVec {
    let mut acc = FreeVec::zero(rank);
    for (g, a) in gens.iter().zip(coeffs.components()) {
        if !a.is_zero() {
            acc = acc.add(ring, &g.scale_by(ring, a));
        }
    }
    acc
}

/// Generators of `{a : sum a_i gens_i = 0}` over the ring, all of rank `rank`.
pub fn syzygies(ring: &Arc<Ring>, rank: usize, gens: &[FreeVec]) -> Result<Submodule> {
    let syz = Lifter::new(ring, rank, gens)?.syzygies();
    Submodule::new(ring, gens.len(), syz)
}

/// Syzygies of a list of polynomials (rank-one generators).
pub fn poly_syzygies(ring: &Arc<Ring>, gens: &[Poly]) -> Result<Submodule> {
    let vecs: Vec<FreeVec> = gens.iter().map(|g| FreeVec::new(vec![g.clone()])).collect();
    syzygies(ring, 1, &vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Coeff, Monomial};

    fn vec2(a: Poly, b: Poly) -> FreeVec {
        FreeVec::new(vec![a, b])
    }

    /// Schreyer's syzygies of a Gröbner basis `gb` (given as polynomials),
    /// built from the standard representations of its S-polynomials.
    fn schreyer_syzygies(ring: &Ring, gb: &[Poly]) -> Vec<FreeVec> {
        let p = ring.poly();
        let f = ring.field();
        let basis: Vec<SVec> = gb.iter().map(|g| SVec::from_poly(g, 0)).collect();
        let n = gb.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (li, lj) = (gb[i].lead().unwrap(), gb[j].lead().unwrap());
                let l = li.mono.lcm(&lj.mono);
                let ui = li.mono.quotient_of(&l).unwrap();
                let uj = lj.mono.quotient_of(&l).unwrap();
                let ci = f.inv(&li.coeff);
                let cj = f.neg(&f.inv(&lj.coeff));
                let s = p.add(&p.mul_term(&gb[i], &ci, &ui), &p.mul_term(&gb[j], &cj, &uj));
                let mut syz = vec![Poly::zero(); n];
                syz[i] = p.term(ui.clone(), ci.clone());
                syz[j] = p.term(uj.clone(), cj.clone());
                let mut steps: Vec<(usize, Coeff, Monomial)> = Vec::new();
                let r = engine::reduce_tracked(p, &SVec::from_poly(&s, 0), &basis, |k, c, m| {
                    steps.push((k, c.clone(), m.clone()))
                });
                assert!(r.is_zero(), "input must be a Gröbner basis");
                for (k, c, m) in steps {
                    syz[k] = p.sub(&syz[k], &p.term(m, c));
                }
                out.push(FreeVec::new(syz));
            }
        }
        out
    }

    #[test]
    fn koszul_syzygy() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let syz = poly_syzygies(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(syz.gens().len(), 1);
        let expected = Submodule::new(&r, 2, vec![vec2(y.clone(), r.neg(&x))]).unwrap();
        assert!(syz.same_as(&expected));
    }

    #[test]
    fn syzygy_of_x_and_xy() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let xy = r.mul(&x, &y);
        let syz = poly_syzygies(&r, &[x.clone(), xy.clone()]).unwrap();
        // hand check: y * x - 1 * xy = 0
        let expected = Submodule::new(&r, 2, vec![vec2(y.clone(), r.from_i64(-1))]).unwrap();
        assert!(syz.same_as(&expected));
        // (x, xy) is a Gröbner basis, so Schreyer's syzygies generate everything
        let schreyer = Submodule::new(&r, 2, schreyer_syzygies(&r, &[x, xy])).unwrap();
        assert!(syz.same_as(&schreyer));
    }

    #[test]
    fn syzygies_of_unit_are_zero() {
        let r = Ring::default_with_vars(&["x"]);
        assert!(poly_syzygies(&r, &[r.one()]).unwrap().is_zero());
    }

    #[test]
    fn module_membership() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let n = Submodule::new(&r, 2, vec![vec2(x.clone(), y.clone())]).unwrap();
        assert!(n.contains(&vec2(r.mul(&x, &x), r.mul(&x, &y))));
        assert!(!n.contains(&vec2(x.clone(), Poly::zero())));
        let split = Submodule::new(&r, 2, vec![vec2(x.clone(), Poly::zero()), vec2(Poly::zero(), y.clone())]).unwrap();
        assert_eq!(split.groebner_vectors(), split.gens().to_vec());
    }

    #[test]
    fn lift_recovers_coefficients() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let gens = vec![vec2(x.clone(), y.clone()), vec2(z.clone(), x.clone())];
        let l = Lifter::new(&r, 2, &gens).unwrap();
        let coeffs = vec2(r.mul(&y, &z), r.add(&x, &r.one()));
        let v = combine(&r, 2, &gens, &coeffs);
        let a = l.lift(&v).unwrap();
        assert_eq!(combine(&r, 2, &gens, &a), v);
        assert!(l.lift(&vec2(r.one(), Poly::zero())).is_none());
    }

    #[test]
    fn syzygies_over_a_quotient() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let q = r.quotient_by(&[r.mul(&r.var(0), &r.var(1))]);
        let (x, y) = (q.var(0), q.var(1));
        // over k[x,y]/(xy) the annihilator of x is (y)
        let syz = poly_syzygies(&q, &[x.clone()]).unwrap();
        for s in syz.gens() {
            assert!(q.mul(&s.components()[0], &x).is_zero());
        }
        let expected = Submodule::new(&q, 1, vec![FreeVec::new(vec![y])]).unwrap();
        assert!(syz.same_as(&expected));
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn syzygies_evaluate_to_zero_and_match_schreyer(
            coeffs in prop::collection::vec((0u16..3, 0u16..3, -3i64..4), 2..7),
            split in 1usize..3,
        ) {
            let r = Ring::default_with_vars(&["x", "y"]);
            let mut gens: Vec<Poly> = Vec::new();
            for chunk in coeffs.chunks(coeffs.len().div_ceil(split + 1)) {
                let terms = chunk.iter().map(|&(a, b, c)| crate::ring::Term {
                    mono: Monomial::from_exponents(vec![a, b]),
                    coeff: r.field().from_i64(c),
                }).collect();
                let p = r.poly().from_terms(terms);
                if !p.is_zero() { gens.push(p); }
            }
            prop_assume!(!gens.is_empty());
            let syz = poly_syzygies(&r, &gens).unwrap();
            let vecs: Vec<FreeVec> = gens.iter().map(|g| FreeVec::new(vec![g.clone()])).collect();
            for s in syz.gens() {
                prop_assert!(combine(&r, 1, &vecs, s).is_zero());
            }
            // on a Gröbner basis, compare with Schreyer's generators both ways
            let gb: Vec<Poly> = crate::groebner::Ideal::new(&r, gens).groebner().to_vec();
            let ours = poly_syzygies(&r, &gb).unwrap();
            let theirs = Submodule::new(&r, gb.len(), schreyer_syzygies(&r, &gb)).unwrap();
            prop_assert!(ours.same_as(&theirs));
        }
    }
}
