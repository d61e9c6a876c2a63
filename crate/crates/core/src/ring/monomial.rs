//! Dense exponent vectors and term orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u16; 12]>;

/// A monomial `x^e` with a cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents<I: IntoIterator<Item = u16>>(exps: I) -> Monomial {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exponents(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Support as a bitmask over variable indices (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// Monomial in a ring with `k` extra leading variables (all exponent 0).
    pub fn shifted(&self, k: usize) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, k);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree }
    }

    /// Drops the first `k` variables, which must have exponent 0.
    pub fn unshifted(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        Monomial { exps: SmallVec::from_slice(&self.exps[k..]), degree: self.degree }
    }
}

/// A term order on monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: compares their total degree
    /// first, then falls back to grevlex on all variables.
    Elimination(usize),
}

fn cmp_grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree.cmp(&b.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Unchecked comparison; both monomials must have the same length.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => cmp_grevlex(a, b),
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::Elimination(k) => {
                let da: u32 = a.exps[..*k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exps[..*k].iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| cmp_grevlex(a, b))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Elimination(k) => format!("elim({k})"),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn monomial_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.nvars() != b.nvars() {
        return Err(Error::Dimension(format!(
            "monomials in {} and {} variables",
            a.nvars(),
            b.nvars()
        )));
    }
    if let MonomialOrder::Elimination(k) = order {
        if k > a.nvars() {
            return Err(Error::Dimension(format!("cannot eliminate {k} of {} variables", a.nvars())));
        }
    }
    Ok(order.cmp(a, b))
}

/// All monomials in `nvars` variables of total degree exactly `d`, in
/// lexicographically decreasing exponent order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(nvars: usize, d: u32, prefix: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == nvars {
            prefix.push(d as u16);
            out.push(Monomial::from_exponents(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            rec(nvars, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(nvars, d, &mut Vec::with_capacity(nvars), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.iter().copied())
    }

    #[test]
    fn grevlex_tie_break() {
        // x^2 > xy in k[x,y]
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // x y z vs x^2 z? same degree 3 vs 3: last exponent equal, then y: 1 vs 0
        assert_eq!(MonomialOrder::Grevlex.cmp(&m(&[1, 1, 1]), &m(&[2, 0, 1])), Ordering::Less);
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
    }

    #[test]
    fn reflexive_and_length_checked() {
        let a = m(&[1, 2]);
        for o in [MonomialOrder::Grevlex, MonomialOrder::Lex, MonomialOrder::Elimination(1)] {
            assert_eq!(monomial_compare(&a, &a, o).unwrap(), Ordering::Equal);
        }
        assert!(monomial_compare(&a, &m(&[1, 2, 3]), MonomialOrder::Lex).is_err());
    }

    #[test]
    fn elimination_prefers_eliminated_block() {
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(2, 0).len(), 1);
    }

    fn mono3() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u16..5, 3).prop_map(Monomial::from_exponents)
    }

    fn order() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Elimination(1)),
            Just(MonomialOrder::Elimination(2)),
        ]
    }

    proptest! {
        #[test]
        fn term_order_axioms(a in mono3(), b in mono3(), c in mono3(), o in order()) {
            // total degree cache
            prop_assert_eq!(a.degree(), a.exponents().iter().map(|&e| e as u32).sum::<u32>());
            // antisymmetry
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // multiplicative
            prop_assert_eq!(o.cmp(&a.mul(&c), &b.mul(&c)), o.cmp(&a, &b));
            // 1 is minimal
            prop_assert_ne!(o.cmp(&Monomial::one(3), &a), Ordering::Greater);
        }

        #[test]
        fn transitivity(a in mono3(), b in mono3(), c in mono3(), o in order()) {
            if o.cmp(&a, &b) != Ordering::Greater && o.cmp(&b, &c) != Ordering::Greater {
                prop_assert_ne!(o.cmp(&a, &c), Ordering::Greater);
            }
        }
    }
}
