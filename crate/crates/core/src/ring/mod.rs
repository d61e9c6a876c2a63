//! Coefficient fields, monomials, polynomials and ring contexts
//! `R = k[x_1..x_v]/J`.

mod field;
mod matrix;
mod monomial;
mod poly;

use std::fmt;
use std::sync::Arc;

pub use field::{Coeff, Field, DEFAULT_PRIME};
pub use matrix::PolyMatrix;
pub use monomial::{monomial_compare, monomials_of_degree, Exponents, Monomial, MonomialOrder};
pub use poly::{Poly, PolyRing, Term};

use crate::error::{Error, Result};
use crate::groebner::engine::{self, SVec};

/// A ring context: the polynomial ring `k[x]` or a quotient `k[x]/J`.
///
/// Elements are always kept as normal forms modulo the reduced Gröbner basis
/// of `J`, so equality of canonical polynomials is equality in `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    poly: PolyRing,
    base_gens: Vec<Poly>,
    base_gb: Vec<Poly>,
}

fn check_vars(vars: &[String]) -> Result<()> {
    if vars.is_empty() {
        return Err(Error::InvalidRing("no variables".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        if vars[..i].contains(v) {
            return Err(Error::InvalidRing(format!("duplicate variable {v}")));
        }
    }
    Ok(())
}

impl Ring {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Result<Arc<Ring>> {
        check_vars(&vars)?;
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::Dimension(format!("cannot eliminate {k} of {} variables", vars.len())));
            }
        }
        Ok(Arc::new(Ring::from_poly_ring(PolyRing::new(field, vars, order))))
    }

    /// `k[x]` over GF(32003) with grevlex.
    pub fn default_with_vars(vars: &[&str]) -> Arc<Ring> {
        Ring::new(Field::Prime(DEFAULT_PRIME), vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::Grevlex)
            .expect("valid variable list")
    }

    pub fn from_poly_ring(poly: PolyRing) -> Ring {
        Ring { poly, base_gens: Vec::new(), base_gb: Vec::new() }
    }

    /// `k[x] / (gens)`; `gens` are polynomials of `poly`.
    pub fn quotient(poly: PolyRing, gens: Vec<Poly>) -> Arc<Ring> {
        let gens: Vec<Poly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        let gb: Vec<Poly> = if gens.is_empty() {
            Vec::new()
        } else {
            engine::groebner(&poly, gens.iter().map(|g| SVec::from_poly(g, 0)).collect())
                .into_iter()
                .map(|v| v.component(0))
                .collect()
        };
        Arc::new(Ring { poly, base_gens: gens, base_gb: gb })
    }

    /// `R / (extra)`, i.e. `k[x] / (J + extra)`.
    pub fn quotient_by(&self, extra: &[Poly]) -> Arc<Ring> {
        let mut gens = self.base_gens.clone();
        gens.extend(extra.iter().map(|p| self.reduce(p)).filter(|p| !p.is_zero()));
        Ring::quotient(self.poly.clone(), gens)
    }

    /// The ambient polynomial ring `k[x]` (dropping `J`).
    pub fn ambient(&self) -> Arc<Ring> {
        Arc::new(Ring::from_poly_ring(self.poly.clone()))
    }

    /// `R[u_1..u_r]` with the parameters placed before the ring variables.
    pub fn with_parameters(&self, names: &[String]) -> Result<Arc<Ring>> {
        let k = names.len();
        let mut vars: Vec<String> = names.to_vec();
        vars.extend(self.poly.vars().iter().cloned());
        check_vars(&vars)?;
        let poly = PolyRing::new(self.poly.field().clone(), vars, self.poly.order());
        let gens = self.base_gens.iter().map(|g| poly.from_terms(self.poly.shift(g, k))).collect();
        Ok(Ring::quotient(poly, gens))
    }

    /// Same variables and base ideal, different term order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        let poly = self.poly.with_order(order);
        let gens = self.base_gens.iter().map(|g| poly.reorder(g)).collect();
        Ring::quotient(poly, gens)
    }

    pub fn poly(&self) -> &PolyRing {
        &self.poly
    }

    pub fn field(&self) -> &Field {
        self.poly.field()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn vars(&self) -> &[String] {
        self.poly.vars()
    }

    pub fn order(&self) -> MonomialOrder {
        self.poly.order()
    }

    pub fn has_base(&self) -> bool {
        !self.base_gb.is_empty()
    }

    pub fn base_gens(&self) -> &[Poly] {
        &self.base_gens
    }

    /// Reduced Gröbner basis of the base ideal `J` (empty for `k[x]`).
    pub fn base_gb(&self) -> &[Poly] {
        &self.base_gb
    }

    /// `R` is the zero ring.
    pub fn is_zero_ring(&self) -> bool {
        self.base_gb.iter().any(|g| g.is_constant())
    }

    /// Normal form modulo the base ideal.
    pub fn reduce(&self, p: &Poly) -> Poly {
        if self.base_gb.is_empty() || p.is_zero() {
            return p.clone();
        }
        let basis: Vec<SVec> = self.base_gb.iter().map(|g| SVec::from_poly(g, 0)).collect();
        engine::reduce(&self.poly, &SVec::from_poly(p, 0), &basis).component(0)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero()
    }

    pub fn one(&self) -> Poly {
        self.reduce(&self.poly.one())
    }

    pub fn var(&self, i: usize) -> Poly {
        self.reduce(&self.poly.var(i))
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        self.reduce(&self.poly.constant(c))
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.reduce(&self.poly.from_i64(v))
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly.add(a, b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly.sub(a, b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        self.poly.neg(a)
    }

    pub fn scale(&self, a: &Poly, c: &Coeff) -> Poly {
        self.poly.scale(a, c)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&self.poly.mul(a, b))
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut result = self.one();
        for _ in 0..e {
            result = self.mul(&result, a);
        }
        result
    }

    pub fn sum<'a, I: IntoIterator<Item = &'a Poly>>(&self, it: I) -> Poly {
        it.into_iter().fold(Poly::zero(), |acc, p| self.add(&acc, p))
    }

    /// The variable images `(x_1..x_v)`, generators of the graded maximal
    /// ideal used as the Jacobson-radical stand-in.
    pub fn jacobson_proxy(&self) -> Vec<Poly> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn format(&self, p: &Poly) -> String {
        self.poly.format(p)
    }

    /// Ring homomorphism from `source` sending variable `i` to `images[i]`
    /// (an element of `self`).
    pub fn substitute(&self, h: &Poly, source: &PolyRing, images: &[Poly]) -> Result<Poly> {
        if images.len() != source.nvars() {
            return Err(Error::Dimension(format!(
                "substitution needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        let mut max_exp = vec![0u16; source.nvars()];
        for t in h.terms() {
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<Poly>> = images
            .iter()
            .zip(&max_exp)
            .map(|(img, &m)| {
                let mut v = vec![self.one()];
                for e in 1..=m as usize {
                    let next = self.mul(&v[e - 1], img);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::zero();
        for t in h.terms() {
            let mut prod = self.constant(t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    prod = self.mul(&prod, &powers[i][e as usize]);
                }
            }
            acc = self.add(&acc, &prod);
        }
        Ok(acc)
    }

    /// Specializes `h` from the parameter ring `R[u_1..u_r]` (built by
    /// [`Ring::with_parameters`]) at `u = assignment`.
    pub fn specialize(&self, h: &Poly, params: &Ring, assignment: &[Poly]) -> Result<Poly> {
        let r = params.nvars().checked_sub(self.nvars()).ok_or_else(|| {
            Error::Dimension("parameter ring smaller than base ring".into())
        })?;
        if assignment.len() != r {
            return Err(Error::Dimension(format!("expected {r} assignments, got {}", assignment.len())));
        }
        let mut images = assignment.to_vec();
        images.extend((0..self.nvars()).map(|i| self.var(i)));
        self.substitute(h, params.poly(), &images)
    }

    /// Embeds an element of `R` into `R[u]` with `k` leading parameters.
    pub fn embed_into_parameters(&self, p: &Poly, params: &Ring) -> Poly {
        let k = params.nvars() - self.nvars();
        params.reduce(&params.poly().from_terms(self.poly.shift(p, k)))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field(), self.vars().join(","))?;
        if self.order() != MonomialOrder::Grevlex {
            write!(f, " order {}", self.order())?;
        }
        if !self.base_gens.is_empty() {
            let gens: Vec<String> = self.base_gens.iter().map(|g| self.format(g)).collect();
            write!(f, " mod {}", gens.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quotient_reduction() {
        let k = Ring::new(Field::Prime(7), vec!["x".into(), "y".into()], MonomialOrder::Grevlex).unwrap();
        let x = k.var(0);
        let q = k.quotient_by(&[k.mul(&x, &x)]);
        let x = q.var(0);
        assert!(q.mul(&x, &x).is_zero());
    }

    #[test]
    fn substitution_examples() {
        let base = Ring::default_with_vars(&["y"]);
        let params = base.with_parameters(&["u1".into(), "u2".into()]).unwrap();
        let (u1, u2, y) = (params.var(0), params.var(1), params.var(2));
        let h = params.sub(&params.mul(&u1, &u2), &y);
        let yb = base.var(0);
        let out = base.specialize(&h, &params, &[yb.clone(), yb.clone()]).unwrap();
        assert_eq!(base.format(&out), "y^2 - y");
        // u1^2 + u2 at (y, -y^2)
        let h2 = params.add(&params.mul(&u1, &u1), &u2);
        let out2 = base.specialize(&h2, &params, &[yb.clone(), base.neg(&base.mul(&yb, &yb))]).unwrap();
        assert!(out2.is_zero());
        assert!(base.specialize(&h2, &params, &[yb]).is_err());
    }

    #[test]
    fn singular_determinant_specialization() {
        let base = Ring::default_with_vars(&["y"]);
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let params = base.with_parameters(&names).unwrap();
        let det = params.sub(&params.mul(&params.var(0), &params.var(3)), &params.mul(&params.var(1), &params.var(2)));
        let vals: Vec<Poly> = [2, 3, 4, 6].iter().map(|&v| base.from_i64(v)).collect();
        assert!(base.specialize(&det, &params, &vals).unwrap().is_zero());
    }

    #[test]
    fn duplicate_variables_rejected() {
        assert!(Ring::new(Field::Rational, vec!["x".into(), "x".into()], MonomialOrder::Lex).is_err());
    }

    fn ring_and_field() -> impl Strategy<Value = Arc<Ring>> {
        prop_oneof![
            Just(Ring::default_with_vars(&["x", "y", "z"])),
            Just(Ring::new(Field::Prime(2), vec!["x".into(), "y".into(), "z".into()], MonomialOrder::Lex).unwrap()),
            Just(Ring::new(Field::Rational, vec!["x".into(), "y".into(), "z".into()], MonomialOrder::Grevlex).unwrap()),
            Just({
                let r = Ring::default_with_vars(&["x", "y", "z"]);
                let g = r.sub(&r.mul(&r.var(0), &r.var(1)), &r.var(2));
                r.quotient_by(&[g])
            }),
        ]
    }

    fn poly_in(r: Arc<Ring>) -> impl Strategy<Value = Poly> {
        prop::collection::vec((prop::collection::vec(0u16..3, 3), -5i64..5), 0..5).prop_map(move |terms| {
            let t = terms
                .into_iter()
                .map(|(e, c)| Term { mono: Monomial::from_exponents(e), coeff: r.field().from_i64(c) })
                .collect();
            r.reduce(&r.poly().from_terms(t))
        })
    }

    fn triple() -> impl Strategy<Value = (Arc<Ring>, Poly, Poly, Poly)> {
        ring_and_field().prop_flat_map(|r| {
            (Just(r.clone()), poly_in(r.clone()), poly_in(r.clone()), poly_in(r))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]
        #[test]
        fn ring_axioms((r, a, b, c) in triple()) {
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            prop_assert_eq!(r.add(&r.add(&a, &b), &c), r.add(&a, &r.add(&b, &c)));
            let p = r.mul(&a, &b);
            prop_assert_eq!(r.reduce(&p), p.clone());
            prop_assert_eq!(r.poly().from_terms(p.terms().to_vec()), p);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn substitution_is_a_homomorphism(
            (r, a, b, _c) in triple(),
            f1 in -3i64..3, f2 in -3i64..3,
        ) {
            let params = r.with_parameters(&["u".into()]).unwrap();
            let ha = r.embed_into_parameters(&a, &params);
            let hb = r.embed_into_parameters(&b, &params);
            let u = params.var(0);
            let ha = params.add(&ha, &params.mul(&u, &hb));
            let hb = params.sub(&hb, &params.mul(&u, &u));
            let img = r.add(&r.from_i64(f1), &r.scale(&r.var(1), &r.field().from_i64(f2)));
            let s = |h: &Poly| r.specialize(h, &params, std::slice::from_ref(&img)).unwrap();
            prop_assert_eq!(s(&params.mul(&ha, &hb)), r.mul(&s(&ha), &s(&hb)));
            prop_assert_eq!(s(&params.add(&ha, &hb)), r.add(&s(&ha), &s(&hb)));
        }
    }
}
