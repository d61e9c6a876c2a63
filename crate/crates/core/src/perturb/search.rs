use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::groebner::{FreeVec, Ideal};
use crate::ideal_theory::{annihilator_of_quotient, grade_of, height, regular_sequence_check, Grade};
use crate::ring::Ring;

use super::{
    fresh_ring, sample, AvoidList, Composite, InvariantValue, PerturbSpace, PerturbWitness, SearchConfig,
    SearchFailure, WitnessProblem,
};

#[derive(Clone, Debug)]
pub enum Target {
    /// `h(f+g)` is an `R/J`-regular sequence.
    Regular { module_ann: Ideal },
    /// `height (h(f+g)) = c`.
    Height { c: usize },
    /// `height(I_Y + (h(f+g))) = height I_Y + height (h(f+g))`.
    ProperIntersection { other: Ideal },
}

impl Target {
    pub fn describe(&self) -> String {
        match self {
            Target::Regular { module_ann } => format!("regular on R/{}", module_ann.format()),
            Target::Height { c } => format!("height {c}"),
            Target::ProperIntersection { other } => format!("proper intersection with {}", other.format()),
        }
    }

    fn in_ring(&self, ring: &Arc<Ring>) -> bool {
        match self {
            Target::Regular { module_ann } => module_ann.ring() == ring,
            Target::Height { .. } => true,
            Target::ProperIntersection { other } => other.ring() == ring,
        }
    }

    fn rebuilt(&self, ring: &Arc<Ring>) -> Target {
        let re = |i: &Ideal| Ideal::new(ring, i.gens().to_vec());
        match self {
            Target::Regular { module_ann } => Target::Regular { module_ann: re(module_ann) },
            Target::Height { c } => Target::Height { c: *c },
            Target::ProperIntersection { other } => Target::ProperIntersection { other: re(other) },
        }
    }

    fn check(&self, ring: &Arc<Ring>, seq: &[crate::ring::Poly]) -> Result<(bool, InvariantValue)> {
        let ideal = Ideal::new(ring, seq.to_vec());
        let ht = |i: &Ideal| -> Result<Option<usize>> {
            if i.is_unit() {
                Ok(None)
            } else {
                Ok(Some(height(i)?.height))
            }
        };
        match self {
            Target::Regular { module_ann } => {
                let r = regular_sequence_check(seq, module_ann, true)?;
                Ok((r.regular, InvariantValue::Flag(r.regular)))
            }
            Target::Height { c } => {
                let h = ht(&ideal)?;
                Ok((h == Some(*c), InvariantValue::Count(h)))
            }
            Target::ProperIntersection { other } => {
                let hx = ht(&ideal)?;
                let hy = ht(other)?;
                let hs = ht(&other.sum(&ideal)?)?;
                let ok = match (hs, hy, hx) {
                    (Some(s), Some(y), Some(x)) => s == x + y,
                    _ => false,
                };
                Ok((ok, InvariantValue::Counts(vec![hs, hy, hx])))
            }
        }
    }

    /// Existence hypothesis for this target over the space `N`.
    fn hypothesis(&self, space: &PerturbSpace, c: usize) -> Result<Option<bool>> {
        let ann = annihilator_of_quotient(space.components())?;
        match self {
            Target::Regular { module_ann } => {
                Ok(Some(grade_of(&ann, module_ann)? >= Grade::Finite(c)))
            }
            Target::Height { .. } | Target::ProperIntersection { .. } => {
                if ann.is_unit() {
                    return Ok(Some(true));
                }
                Ok(Some(height(&ann)?.height >= c))
            }
        }
    }
}

/// A tuple search: find `g` in `space` such that `h(f+g)` meets `target`,
/// avoiding `avoid`, while every earlier `(h', target')` stays satisfied.
#[derive(Clone, Debug)]
pub struct Problem {
    pub h: Composite,
    pub f: FreeVec,
    pub space: PerturbSpace,
    pub target: Target,
    pub avoid: AvoidList,
    pub earlier: Vec<(Composite, Target)>,
}

impl Problem {
    fn ring(&self) -> &Arc<Ring> {
        self.h.base()
    }

    pub(crate) fn evaluate(&self, g: &FreeVec) -> Result<(bool, InvariantValue)> {
        let fg = self.f.add(self.ring(), g);
        for (h, t) in &self.earlier {
            if !t.check(self.ring(), &h.evaluate(&fg)?)?.0 {
                let (_, value) = self.target.check(self.ring(), &self.h.evaluate(&fg)?)?;
                return Ok((false, value));
            }
        }
        self.target.check(self.ring(), &self.h.evaluate(&fg)?)
    }

    pub(crate) fn avoid_rejects(&self, g: &FreeVec) -> bool {
        if self.avoid.is_empty() {
            return false;
        }
        self.avoid.hits(g) || self.avoid.hits(&self.f.add(self.ring(), g))
    }

    pub(crate) fn hypothesis(&self) -> Result<Option<bool>> {
        self.target.hypothesis(&self.space, self.h.h().len())
    }

    pub(crate) fn rebuilt(&self) -> Problem {
        let ring = fresh_ring(self.ring());
        let space = PerturbSpace::new(
            &ring,
            self.space.components().iter().map(|i| Ideal::new(&ring, i.gens().to_vec())).collect(),
            self.space.min_order(),
            Some(self.space.degree_bound()),
        )
        .expect("components were valid")
        .with_filtration(self.space.filtration().to_vec());
        Problem {
            h: self.h.rebuilt(&ring),
            f: self.f.clone(),
            space,
            target: self.target.rebuilt(&ring),
            avoid: self.avoid.rebuilt(&ring),
            earlier: self.earlier.iter().map(|(h, t)| (h.rebuilt(&ring), t.rebuilt(&ring))).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.f.rank() != self.h.arity() {
            return Err(Error::Dimension(format!(
                "tuple of length {} for a composite in {} parameters",
                self.f.rank(),
                self.h.arity()
            )));
        }
        if self.space.len() != self.f.rank() {
            return Err(Error::Dimension(format!(
                "space of length {} for a tuple of length {}",
                self.space.len(),
                self.f.rank()
            )));
        }
        if self.space.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        for n in self.avoid.entries() {
            if n.len() != self.f.rank() {
                return Err(Error::Dimension("avoid entry of the wrong length".into()));
            }
        }
        Ok(())
    }
}

pub(crate) fn run(problem: Problem, cfg: &SearchConfig) -> Result<PerturbWitness> {
    problem.validate()?;
    let zero = FreeVec::zero(problem.f.rank());
    let (ok0, before) = problem.evaluate(&zero)?;
    let advisory = |p: &Problem| if cfg.check_hypothesis { p.hypothesis() } else { Ok(None) };
    if ok0 && problem.avoid.is_empty() {
        let adv = advisory(&problem)?;
        return Ok(PerturbWitness {
            problem: WitnessProblem::Tuple(problem),
            g: zero,
            invariant_after: before.clone(),
            invariant_before: before,
            trials_used: 0,
            seed: cfg.seed,
            advisory_hypothesis: adv,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut avoided = 0;
    let mut failed = 0;
    for trial in 1..=cfg.budget {
        let g = sample(&problem.space, &mut rng)?;
        if problem.avoid_rejects(&g) {
            avoided += 1;
            continue;
        }
        let (ok, after) = problem.evaluate(&g)?;
        if ok {
            let adv = advisory(&problem)?;
            return Ok(PerturbWitness {
                problem: WitnessProblem::Tuple(problem),
                g,
                invariant_before: before,
                invariant_after: after,
                trials_used: trial,
                seed: cfg.seed,
                advisory_hypothesis: adv,
            });
        }
        failed += 1;
    }
    Err(Error::BudgetExhausted(Box::new(SearchFailure {
        target: problem.target.describe(),
        trials: cfg.budget,
        rejected_by_avoid: avoided,
        predicate_failures: failed,
        seed: cfg.seed,
        advisory_hypothesis: problem.hypothesis()?,
    })))
}

/// Runs a general problem, including earlier targets that must be kept.
pub fn solve(problem: Problem, cfg: &SearchConfig) -> Result<PerturbWitness> {
    for (h, t) in &problem.earlier {
        if h.base() != problem.h.base() || !t.in_ring(problem.h.base()) {
            return Err(Error::RingMismatch);
        }
    }
    if !problem.target.in_ring(problem.h.base()) {
        return Err(Error::RingMismatch);
    }
    run(problem, cfg)
}

/// `g` in `space` with `h(f+g)` regular on `R/module_ann`.
pub fn perturb_to_regular(
    h: &Composite,
    f: &FreeVec,
    module_ann: &Ideal,
    space: &PerturbSpace,
    avoid: &AvoidList,
    cfg: &SearchConfig,
) -> Result<PerturbWitness> {
    if module_ann.ring() != h.base() {
        return Err(Error::RingMismatch);
    }
    run(
        Problem {
            h: h.clone(),
            f: f.clone(),
            space: space.clone(),
            target: Target::Regular { module_ann: module_ann.clone() },
            avoid: avoid.clone(),
            earlier: Vec::new(),
        },
        cfg,
    )
}

/// `g` in `space` with `height (h(f+g)) = c`.
pub fn perturb_to_height(
    h: &Composite,
    f: &FreeVec,
    c: usize,
    space: &PerturbSpace,
    avoid: &AvoidList,
    cfg: &SearchConfig,
) -> Result<PerturbWitness> {
    run(
        Problem {
            h: h.clone(),
            f: f.clone(),
            space: space.clone(),
            target: Target::Height { c },
            avoid: avoid.clone(),
            earlier: Vec::new(),
        },
        cfg,
    )
}

/// `g` in `space` making `V(h(f+g))` meet `V(other)` properly.
pub fn perturb_to_proper_intersection(
    h: &Composite,
    f: &FreeVec,
    other: &Ideal,
    space: &PerturbSpace,
    avoid: &AvoidList,
    cfg: &SearchConfig,
) -> Result<PerturbWitness> {
    if other.ring() != h.base() {
        return Err(Error::RingMismatch);
    }
    run(
        Problem {
            h: h.clone(),
            f: f.clone(),
            space: space.clone(),
            target: Target::ProperIntersection { other: other.clone() },
            avoid: avoid.clone(),
            earlier: Vec::new(),
        },
        cfg,
    )
}

/// Meets the height targets one at a time; stage `k` samples from the space
/// with order `q + k` and must keep every earlier target. Returns the total
/// perturbation and one witness per stage (each relative to the previous
/// stages' sum).
pub fn perturb_to_height_sequential(
    stages: &[(Composite, usize)],
    f: &FreeVec,
    space: &PerturbSpace,
    avoid: &AvoidList,
    cfg: &SearchConfig,
) -> Result<(FreeVec, Vec<PerturbWitness>)> {
    let ring = space.ring().clone();
    let mut total = FreeVec::zero(f.rank());
    let mut witnesses = Vec::new();
    let mut earlier: Vec<(Composite, Target)> = Vec::new();
    for (k, (h, c)) in stages.iter().enumerate() {
        let problem = Problem {
            h: h.clone(),
            f: f.add(&ring, &total),
            space: space.with_min_order(space.min_order() + k as u32),
            target: Target::Height { c: *c },
            avoid: avoid.clone(),
            earlier: earlier.clone(),
        };
        let stage_cfg = SearchConfig { seed: cfg.seed.wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(k as u64)), ..*cfg };
        let w = run(problem, &stage_cfg)?;
        total = total.add(&ring, &w.g);
        earlier.push((h.clone(), Target::Height { c: *c }));
        witnesses.push(w);
    }
    Ok((total, witnesses))
}
