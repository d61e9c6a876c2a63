//! Sparse polynomials over a coefficient field in a free polynomial ring.

use std::cmp::Ordering;

use super::field::{Coeff, Field};
use super::monomial::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub mono: Monomial,
    pub coeff: Coeff,
}

/// A polynomial in canonical form: terms strictly decreasing in the order
/// of the ring that built it, no zero coefficients. Zero is the empty list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    /// Wraps terms that are already canonical for some ring.
    pub(crate) fn from_sorted(terms: Vec<Term>) -> Poly {
        Poly { terms }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    /// Lowest total degree among terms (the m-adic order); `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).min()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    /// Constant term coefficient, if nonzero.
    pub fn constant_term(&self) -> Option<&Coeff> {
        self.terms.last().filter(|t| t.mono.is_one()).map(|t| &t.coeff)
    }
}

/// The free polynomial ring `k[x_1..x_v]` with a term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> PolyRing {
        PolyRing { field, vars, order }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing { field: self.field.clone(), vars: self.vars.clone(), order }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        self.term(Monomial::one(self.nvars()), c)
    }

    pub fn from_i64(&self, v: i64) -> Poly {
        self.constant(self.field.from_i64(v))
    }

    pub fn var(&self, i: usize) -> Poly {
        self.term(Monomial::var(self.nvars(), i), self.field.one())
    }

    pub fn term(&self, mono: Monomial, coeff: Coeff) -> Poly {
        if self.field.is_zero(&coeff) {
            Poly::zero()
        } else {
            Poly { terms: vec![Term { mono, coeff }] }
        }
    }

    pub fn monomial(&self, mono: Monomial) -> Poly {
        self.term(mono, self.field.one())
    }

    /// Canonicalizes an arbitrary list of terms.
    pub fn from_terms(&self, mut terms: Vec<Term>) -> Poly {
        terms.sort_by(|a, b| self.cmp(&b.mono, &a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = self.field.add(&last.coeff, &t.coeff);
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !self.field.is_zero(&t.coeff));
        Poly { terms: out }
    }

    /// Re-sorts a polynomial built under another order on the same variables.
    pub fn reorder(&self, p: &Poly) -> Poly {
        self.from_terms(p.terms.clone())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        self.add_scaled(a, &self.field.one(), &Monomial::one(self.nvars()), b)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let m1 = self.field.neg(&self.field.one());
        self.add_scaled(a, &m1, &Monomial::one(self.nvars()), b)
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: self.field.neg(&t.coeff) })
                .collect(),
        }
    }

    /// `a + c * m * b`, merging sorted term lists.
    pub fn add_scaled(&self, a: &Poly, c: &Coeff, m: &Monomial, b: &Poly) -> Poly {
        let f = &self.field;
        if f.is_zero(c) {
            return a.clone();
        }
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let mut i = 0;
        let mut bi = b.terms.iter().map(|t| Term { mono: t.mono.mul(m), coeff: f.mul(c, &t.coeff) });
        let mut next_b = bi.next();
        while let Some(tb) = next_b.take() {
            if i < a.terms.len() {
                match self.cmp(&a.terms[i].mono, &tb.mono) {
                    Ordering::Greater => {
                        out.push(a.terms[i].clone());
                        i += 1;
                        next_b = Some(tb);
                    }
                    Ordering::Less => {
                        out.push(tb);
                        next_b = bi.next();
                    }
                    Ordering::Equal => {
                        let s = f.add(&a.terms[i].coeff, &tb.coeff);
                        if !f.is_zero(&s) {
                            out.push(Term { mono: tb.mono, coeff: s });
                        }
                        i += 1;
                        next_b = bi.next();
                    }
                }
            } else {
                out.push(tb);
                next_b = bi.next();
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        Poly { terms: out }
    }

    pub fn scale(&self, a: &Poly, c: &Coeff) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), coeff: self.field.mul(&t.coeff, c) })
                .collect(),
        }
    }

    pub fn mul_term(&self, a: &Poly, c: &Coeff, m: &Monomial) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: a
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.mul(m), coeff: self.field.mul(&t.coeff, c) })
                .collect(),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        if small.len() == 1 {
            let t = &small.terms[0];
            return self.mul_term(large, &t.coeff, &t.mono);
        }
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for s in &small.terms {
            for l in &large.terms {
                terms.push(Term { mono: s.mono.mul(&l.mono), coeff: self.field.mul(&s.coeff, &l.coeff) });
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self, a: &Poly) -> Poly {
        match a.lead() {
            None => Poly::zero(),
            Some(t) => {
                let inv = self.field.inv(&t.coeff);
                self.scale(a, &inv)
            }
        }
    }

    /// Exact division `a / b`; `None` if `b` does not divide `a`.
    pub fn div_exact(&self, a: &Poly, b: &Poly) -> Option<Poly> {
        let lb = b.lead()?;
        let inv = self.field.inv(&lb.coeff);
        let mut rem = a.clone();
        let mut quot = Vec::new();
        while let Some(lt) = rem.lead() {
            let m = lb.mono.quotient_of(&lt.mono)?;
            let c = self.field.mul(&lt.coeff, &inv);
            rem = self.add_scaled(&rem, &self.field.neg(&c), &m, b);
            quot.push(Term { mono: m, coeff: c });
        }
        Some(Poly { terms: quot })
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous_part(&self, a: &Poly, d: u32) -> Poly {
        Poly { terms: a.terms.iter().filter(|t| t.mono.degree() == d).cloned().collect() }
    }

    /// Embeds into the ring with `k` extra leading variables.
    pub fn shift(&self, a: &Poly, k: usize) -> Vec<Term> {
        a.terms
            .iter()
            .map(|t| Term { mono: t.mono.shifted(k), coeff: t.coeff.clone() })
            .collect()
    }

    pub fn format(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, t) in p.terms.iter().enumerate() {
            let neg = self.field.is_negative_repr(&t.coeff);
            let abs = if neg { self.field.neg(&t.coeff) } else { t.coeff.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(&t.mono);
            if t.mono.is_one() {
                s.push_str(&self.field.format(&abs));
            } else if self.field.is_one(&abs) {
                s.push_str(&mono);
            } else {
                let cs = self.field.format(&abs);
                if cs.contains('/') {
                    s.push('(');
                    s.push_str(&cs);
                    s.push(')');
                } else {
                    s.push_str(&cs);
                }
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .exponents()
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
