use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ring::{monomials_of_degree, Monomial, Poly, Ring};

use super::engine::{self, SVec};

/// A finitely generated ideal of a ring context, with a lazily computed
/// reduced Gröbner basis.
///
/// The basis lives in the ambient `k[x]` and is a basis of `gens + J`
/// when the ring is a quotient `k[x]/J`.
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Poly>,
    gb: OnceLock<Arc<Vec<Poly>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self.format())
    }
}

pub(crate) fn check_poly(ring: &Ring, p: &Poly) -> Result<()> {
    match p.lead_monomial() {
        Some(m) if m.nvars() != ring.nvars() => Err(Error::Dimension(format!(
            "polynomial in {} variables used in a ring with {}",
            m.nvars(),
            ring.nvars()
        ))),
        _ => Ok(()),
    }
}

impl Ideal {
    /// Generators are reduced modulo the base ideal; zero generators are
    /// dropped.
    pub fn new(ring: &Arc<Ring>, gens: Vec<Poly>) -> Ideal {
        let gens = gens.iter().map(|g| ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, vec![ring.one()])
    }

    /// The ideal `m = (x_1..x_v)`.
    pub fn maximal(ring: &Arc<Ring>) -> Ideal {
        Ideal::new(ring, ring.jacobson_proxy())
    }

    /// `m^q`, generated by all monomials of degree `q`.
    pub fn maximal_power(ring: &Arc<Ring>, q: u32) -> Ideal {
        Ideal::new(ring, monomials_of_degree(ring.nvars(), q).into_iter().map(|m| ring.poly().monomial(m)).collect())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    /// Same generators, empty cache.
    pub fn fresh(&self) -> Ideal {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: OnceLock::new() }
    }

    /// Reduced Gröbner basis of `gens + J` in `k[x]`.
    pub fn groebner(&self) -> &[Poly] {
        self.gb.get_or_init(|| {
            let mut input: Vec<SVec> = self.gens.iter().map(|g| SVec::from_poly(g, 0)).collect();
            input.extend(self.ring.base_gb().iter().map(|g| SVec::from_poly(g, 0)));
            Arc::new(engine::groebner(self.ring.poly(), input).into_iter().map(|v| v.component(0)).collect())
        })
    }

    pub(crate) fn basis_svecs(&self) -> Vec<SVec> {
        self.groebner().iter().map(|g| SVec::from_poly(g, 0)).collect()
    }

    /// Canonical representative of `p` modulo the ideal.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        check_poly(&self.ring, p)?;
        Ok(self.nf(p))
    }

    pub(crate) fn nf(&self, p: &Poly) -> Poly {
        if p.is_zero() {
            return Poly::zero();
        }
        engine::reduce(self.ring.poly(), &SVec::from_poly(p, 0), &self.basis_svecs()).component(0)
    }

    pub fn contains(&self, p: &Poly) -> bool {
        self.nf(p).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().iter().any(|g| g.is_constant())
    }

    /// Zero in `R`, i.e. contained in the base ideal.
    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality of ideals via reduced Gröbner bases.
    pub fn same_as(&self, other: &Ideal) -> bool {
        self.ring == other.ring && self.groebner() == other.groebner()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().iter().filter_map(|g| g.lead_monomial().cloned()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().chain(self.ring.base_gens()).all(|g| g.is_homogeneous())
    }

    /// Inside `m`: every generator has zero constant term.
    pub fn in_maximal(&self) -> bool {
        self.gens.iter().all(|g| g.constant_term().is_none())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_same(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn power(&self, q: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..q {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: &[Poly]) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub(crate) fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn format(&self) -> String {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        format!("({})", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, MonomialOrder};

    #[test]
    fn normal_form_substitutes_leading_term() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let (x, y) = (r.var(0), r.var(1));
        let i = Ideal::new(&r, vec![r.sub(&r.mul(&x, &x), &y)]);
        let p = r.mul(&r.mul(&x, &x), &y);
        assert_eq!(i.normal_form(&p).unwrap(), r.mul(&y, &y));
        assert!(i.normal_form(&i.gens()[0]).unwrap().is_zero());
    }

    #[test]
    fn constants_are_irreducible_by_m() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let m = Ideal::maximal(&r);
        assert_eq!(m.normal_form(&r.one()).unwrap(), r.one());
    }

    #[test]
    fn ambient_mismatch() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let s = Ring::default_with_vars(&["x", "y", "z"]);
        let i = Ideal::maximal(&r);
        assert!(matches!(i.normal_form(&s.var(2)), Err(Error::Dimension(_))));
    }

    #[test]
    fn twisted_cubic_membership_two_ways() {
        let r = Ring::new(
            Field::Prime(32003),
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Lex,
        )
        .unwrap();
        let (x, y, z) = (r.var(0), r.var(1), r.var(2));
        let i = Ideal::new(&r, vec![r.sub(&y, &r.pow(&x, 2)), r.sub(&z, &r.pow(&x, 3))]);
        let target = r.sub(&r.pow(&y, 3), &r.pow(&z, 2));
        assert!(i.contains(&target));
        // independent oracle: the parametrization (t^3, t^2, t) kills the target
        let t = Ring::default_with_vars(&["t"]);
        let tv = t.var(0);
        let images = [tv.clone(), t.pow(&tv, 2), t.pow(&tv, 3)];
        assert!(t.substitute(&target, r.poly(), &images).unwrap().is_zero());
        // lex with x first eliminates x: some basis element lies in k[y, z]
        assert!(i.groebner().iter().any(|g| g.terms().iter().all(|t| t.mono.exponents()[0] == 0)));
    }

    #[test]
    fn quotient_ring_basis_includes_base() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let q = r.quotient_by(&[r.mul(&r.var(0), &r.var(1))]);
        let i = Ideal::new(&q, vec![q.var(0)]);
        assert!(i.contains(&q.var(0)));
        assert!(!i.contains(&q.var(1)));
        assert!(Ideal::new(&q, vec![q.mul(&q.var(0), &q.var(1))]).is_zero());
    }
}
