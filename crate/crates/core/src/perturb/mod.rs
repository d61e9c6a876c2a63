//! Las-Vegas search for perturbations `g` in direct-sum spaces
//! `N = F^q I_1 + ... + F^q I_r` (with `F = m` unless stated otherwise).
//!
//! Every accepted perturbation is verified exactly; randomness only affects
//! whether and how fast a witness is found.

mod matrix;
mod search;
mod stability;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{FreeVec, Ideal};
use crate::ring::{monomials_of_degree, Poly, Ring};

pub use matrix::{perturb_matrix, MatrixProblem, MatrixTarget};
pub use search::{
    perturb_to_height, perturb_to_height_sequential, perturb_to_proper_intersection, perturb_to_regular,
    solve, Problem, Target,
};
pub use stability::{stability_order_search, StabilityConfig, StabilityPoint, StabilityPredicate, StabilityReport};

/// Random monomials drawn per generator when sampling a component.
const TERMS_PER_GENERATOR: usize = 6;

/// `N = F^q I_1 + ... + F^q I_r` with sampled terms of degree at most `D`.
pub struct PerturbSpace {
    ring: Arc<Ring>,
    components: Vec<Ideal>,
    min_order: u32,
    degree_bound: u32,
    filtration: Vec<Poly>,
    members: OnceLock<Vec<Ideal>>,
}

impl Clone for PerturbSpace {
    fn clone(&self) -> Self {
        PerturbSpace {
            ring: self.ring.clone(),
            components: self.components.clone(),
            min_order: self.min_order,
            degree_bound: self.degree_bound,
            filtration: self.filtration.clone(),
            members: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PerturbSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self.components.iter().map(|i| i.format()).collect();
        write!(f, "PerturbSpace(q={}, D={}, [{}])", self.min_order, self.degree_bound, comps.join(", "))
    }
}

impl PerturbSpace {
    /// `degree_bound` defaults to `q + 2`.
    pub fn new(ring: &Arc<Ring>, components: Vec<Ideal>, min_order: u32, degree_bound: Option<u32>) -> Result<PerturbSpace> {
        if components.is_empty() {
            return Err(Error::Dimension("perturbation space of length 0".into()));
        }
        for c in &components {
            if c.ring() != ring {
                return Err(Error::RingMismatch);
            }
        }
        Ok(PerturbSpace {
            ring: ring.clone(),
            components,
            min_order,
            degree_bound: degree_bound.unwrap_or(min_order + 2),
            filtration: ring.jacobson_proxy(),
            members: OnceLock::new(),
        })
    }

    /// `(m^q)^r` sampled with the default degree bound.
    pub fn maximal_power(ring: &Arc<Ring>, r: usize, q: u32) -> Result<PerturbSpace> {
        PerturbSpace::new(ring, vec![Ideal::unit(ring); r], q, None)
    }

    /// Replaces `m` by the ideal generated by `gens` as the filtration.
    pub fn with_filtration(mut self, gens: Vec<Poly>) -> PerturbSpace {
        self.filtration = gens.iter().map(|g| self.ring.reduce(g)).filter(|g| !g.is_zero()).collect();
        self.members = OnceLock::new();
        self
    }

    /// Same space with a different order; the degree bound keeps its slack.
    pub fn with_min_order(&self, q: u32) -> PerturbSpace {
        let slack = self.degree_bound.saturating_sub(self.min_order);
        PerturbSpace {
            ring: self.ring.clone(),
            components: self.components.clone(),
            min_order: q,
            degree_bound: q + slack,
            filtration: self.filtration.clone(),
            members: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[Ideal] {
        &self.components
    }

    pub fn min_order(&self) -> u32 {
        self.min_order
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn filtration(&self) -> &[Poly] {
        &self.filtration
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero()) || (self.min_order > 0 && self.filtration.is_empty())
    }

    /// The ideals `F^q I_j` that samples must lie in.
    pub fn member_ideals(&self) -> &[Ideal] {
        self.members.get_or_init(|| {
            let fq = Ideal::new(&self.ring, self.filtration.clone()).power(self.min_order);
            self.components.iter().map(|c| fq.product(c).expect("same ring")).collect()
        })
    }

    pub fn contains(&self, g: &FreeVec) -> bool {
        g.rank() == self.len() && self.member_ideals().iter().zip(g.components()).all(|(i, p)| i.contains(p))
    }
}

/// `sum_k c_k mu_k gen` over the generators of each component, where `mu_k`
/// is a product of `q` filtration generators and a random monomial keeping
/// the total degree within the bound. The result is checked to lie in the
/// space.
pub fn sample<R: Rng + ?Sized>(space: &PerturbSpace, rng: &mut R) -> Result<FreeVec> {
    if space.is_zero() {
        return Err(Error::ZeroSpace);
    }
    let ring = space.ring();
    let field = ring.field();
    let fdeg = space.filtration.iter().filter_map(|p| p.degree()).min().unwrap_or(0);
    let mut out = Vec::with_capacity(space.len());
    for comp in space.components() {
        let mut acc = Poly::zero();
        for gen in comp.gens() {
            let gdeg = gen.degree().unwrap_or(0);
            let base = space.min_order * fdeg + gdeg;
            let extra = space.degree_bound.saturating_sub(base);
            let mut pool = Vec::new();
            for e in 0..=extra {
                pool.extend(monomials_of_degree(ring.nvars(), e));
            }
            pool.shuffle(rng);
            pool.truncate(TERMS_PER_GENERATOR);
            for mono in pool {
                let mut mu = ring.poly().monomial(mono);
                for _ in 0..space.min_order {
                    let f = space.filtration.choose(rng).expect("nonempty filtration");
                    mu = ring.mul(&mu, f);
                }
                let c = field.random(rng);
                acc = ring.add(&acc, &ring.scale(&ring.mul(&mu, gen), &c));
            }
        }
        out.push(acc);
    }
    let g = FreeVec::new(out);
    if !space.contains(&g) {
        return Err(Error::Certificate("sampled tuple outside the perturbation space".into()));
    }
    Ok(g)
}

/// Finitely many submodules `N_a = A_{a,1} + ... + A_{a,r}` to avoid.
#[derive(Clone, Debug, Default)]
pub struct AvoidList {
    entries: Vec<Vec<Ideal>>,
}

impl AvoidList {
    pub fn empty() -> AvoidList {
        AvoidList::default()
    }

    pub fn push(&mut self, summands: Vec<Ideal>) {
        self.entries.push(summands);
    }

    pub fn entries(&self) -> &[Vec<Ideal>] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `v` lies in some `N_a`.
    pub fn hits(&self, v: &FreeVec) -> bool {
        self.entries
            .iter()
            .any(|n| n.len() == v.rank() && n.iter().zip(v.components()).all(|(a, p)| a.contains(p)))
    }

    fn rebuilt(&self, ring: &Arc<Ring>) -> AvoidList {
        AvoidList {
            entries: self
                .entries
                .iter()
                .map(|n| n.iter().map(|a| Ideal::new(ring, a.gens().to_vec())).collect())
                .collect(),
        }
    }
}

/// `h(u_1..u_r)` in `R[u]`, evaluated at tuples of `R`.
#[derive(Clone, Debug)]
pub struct Composite {
    base: Arc<Ring>,
    params: Arc<Ring>,
    h: Vec<Poly>,
    identity: bool,
}

fn param_names(base: &Ring, r: usize) -> Vec<String> {
    let mut prefix = String::from("u");
    while base.vars().iter().any(|v| v.starts_with(&prefix)) {
        prefix.insert(0, '_');
    }
    (1..=r).map(|i| format!("{prefix}{i}")).collect()
}

impl Composite {
    /// `h` must be polynomials of `base.with_parameters(names)`.
    pub fn new(base: &Arc<Ring>, names: &[String], h: Vec<Poly>) -> Result<Composite> {
        let params = base.with_parameters(names)?;
        Ok(Composite { base: base.clone(), params, h, identity: false })
    }

    /// `h_i = u_i`.
    pub fn identity(base: &Arc<Ring>, r: usize) -> Composite {
        let params = base.with_parameters(&param_names(base, r)).expect("fresh parameter names");
        let h = (0..r).map(|i| params.var(i)).collect();
        Composite { base: base.clone(), params, h, identity: true }
    }

    /// Parameter names `u1..ur` that avoid the base ring's variables.
    pub fn parameter_names(base: &Ring, r: usize) -> Vec<String> {
        param_names(base, r)
    }

    pub fn base(&self) -> &Arc<Ring> {
        &self.base
    }

    pub fn params(&self) -> &Arc<Ring> {
        &self.params
    }

    pub fn h(&self) -> &[Poly] {
        &self.h
    }

    pub fn arity(&self) -> usize {
        self.params.nvars() - self.base.nvars()
    }

    pub fn evaluate(&self, f: &FreeVec) -> Result<Vec<Poly>> {
        if f.rank() != self.arity() {
            return Err(Error::Dimension(format!("tuple of length {} for {} parameters", f.rank(), self.arity())));
        }
        if self.identity {
            return Ok(f.components().iter().map(|p| self.base.reduce(p)).collect());
        }
        self.h.iter().map(|p| self.base.specialize(p, &self.params, f.components())).collect()
    }

    fn rebuilt(&self, base: &Arc<Ring>) -> Composite {
        let names: Vec<String> = self.params.vars()[..self.arity()].to_vec();
        let params = base.with_parameters(&names).expect("names were valid");
        Composite { base: base.clone(), params, h: self.h.clone(), identity: self.identity }
    }
}

/// Measured invariant of a candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantValue {
    Flag(bool),
    /// `None` for an undefined value (height of the unit ideal).
    Count(Option<usize>),
    Counts(Vec<Option<usize>>),
}

impl fmt::Display for InvariantValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &Option<usize>| v.map_or("undefined".to_string(), |x| x.to_string());
        match self {
            InvariantValue::Flag(b) => write!(f, "{b}"),
            InvariantValue::Count(c) => f.write_str(&one(c)),
            InvariantValue::Counts(cs) => {
                write!(f, "[{}]", cs.iter().map(one).collect::<Vec<_>>().join(", "))
            }
        }
    }
}

/// The problem a witness answers, kept so that it can be re-checked alone.
#[derive(Clone, Debug)]
pub enum WitnessProblem {
    Tuple(Problem),
    Matrix(MatrixProblem),
}

/// A verified perturbation.
#[derive(Clone, Debug)]
pub struct PerturbWitness {
    pub problem: WitnessProblem,
    pub g: FreeVec,
    pub invariant_before: InvariantValue,
    pub invariant_after: InvariantValue,
    pub trials_used: usize,
    pub seed: u64,
    /// Hypothesis of the existence theorem, when it was checked.
    pub advisory_hypothesis: Option<bool>,
}

impl PerturbWitness {
    pub fn target(&self) -> String {
        match &self.problem {
            WitnessProblem::Tuple(p) => p.target.describe(),
            WitnessProblem::Matrix(p) => p.target.describe(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero()
    }

    /// Re-runs the acceptance check from scratch on rebuilt rings and ideals.
    pub fn reverify(&self) -> Result<bool> {
        match &self.problem {
            WitnessProblem::Tuple(p) => {
                let p = p.rebuilt();
                let (ok, value) = p.evaluate(&self.g)?;
                Ok(ok && value == self.invariant_after && !p.avoid_rejects(&self.g))
            }
            WitnessProblem::Matrix(p) => {
                let p = p.rebuilt();
                let (ok, value) = p.evaluate_flat(&self.g)?;
                Ok(ok && value == self.invariant_after)
            }
        }
    }
}

impl PerturbWitness {
    /// Adds `trials` further perturbations of order `q + extra` to the
    /// witness and counts how often the certified property is lost.
    pub fn monotonicity_drops(&self, extra: u32, trials: usize, seed: u64) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut drops = 0;
        for _ in 0..trials {
            let ok = match &self.problem {
                WitnessProblem::Tuple(p) => {
                    let space = p.space.with_min_order(p.space.min_order() + extra);
                    let more = sample(&space, &mut rng)?;
                    p.evaluate(&self.g.add(space.ring(), &more))?.0
                }
                WitnessProblem::Matrix(p) => {
                    let space = p.space.with_min_order(p.space.min_order() + extra);
                    let more = sample(&space, &mut rng)?;
                    p.evaluate_flat(&self.g.add(space.ring(), &more))?.0
                }
            };
            if !ok {
                drops += 1;
            }
        }
        Ok(drops)
    }
}

/// Budget, seed and options shared by the searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub budget: usize,
    pub seed: u64,
    /// Check the theorem's hypothesis even when a witness is found.
    pub check_hypothesis: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: 200, seed: 0, check_hypothesis: false }
    }
}

/// Statistics of an unsuccessful search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchFailure {
    pub target: String,
    pub trials: usize,
    pub rejected_by_avoid: usize,
    pub predicate_failures: usize,
    pub seed: u64,
    /// Whether the existence hypothesis holds; `None` if it was not decided.
    pub advisory_hypothesis: Option<bool>,
}

impl fmt::Display for SearchFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} after {} trials ({} avoided, {} failed the check, seed {})",
            self.target, self.trials, self.rejected_by_avoid, self.predicate_failures, self.seed
        )?;
        match self.advisory_hypothesis {
            Some(true) => write!(f, "; hypothesis holds"),
            Some(false) => write!(f, "; hypothesis violated"),
            None => Ok(()),
        }
    }
}

/// A ring with the same presentation whose base basis is recomputed.
pub(crate) fn fresh_ring(ring: &Ring) -> Arc<Ring> {
    Ring::quotient(ring.poly().clone(), ring.base_gens().to_vec())
}
