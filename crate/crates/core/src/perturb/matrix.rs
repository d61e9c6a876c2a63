use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::determinantal::{det_ideal, det_profile, injectivity_check, MatrixKind};
use crate::error::{Error, Result};
use crate::groebner::{FreeVec, Ideal};
use crate::ideal_theory::{grade_of, height, krull_dim, Grade};
use crate::ring::{PolyMatrix, Ring};

use super::{fresh_ring, sample, InvariantValue, PerturbSpace, PerturbWitness, SearchConfig, SearchFailure, WitnessProblem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixTarget {
    /// Every `I_{j+1}(phi + psi)` with `j >= from` reaches
    /// `min(expected, height J)`.
    DetProfile { kind: MatrixKind, from: usize },
    /// The map given by the columns of `phi + psi` is injective.
    Injectivity,
    /// `psi` has entries in `m^q I_r(phi)`; `I_j` is kept for `j <= r` and the
    /// higher ideals reach `min(expected, height I_r(phi))`.
    PreserveLowMinors { kind: MatrixKind, r: usize, q: u32 },
}

impl MatrixTarget {
    pub fn describe(&self) -> String {
        match self {
            MatrixTarget::DetProfile { kind, from } => format!("{kind} determinantal profile from j = {from}"),
            MatrixTarget::Injectivity => "injective".into(),
            MatrixTarget::PreserveLowMinors { kind, r, q } => {
                format!("{kind} profile keeping I_1..I_{r} (order {q})")
            }
        }
    }

    fn kind(&self) -> MatrixKind {
        match self {
            MatrixTarget::DetProfile { kind, .. } | MatrixTarget::PreserveLowMinors { kind, .. } => *kind,
            MatrixTarget::Injectivity => MatrixKind::Generic,
        }
    }
}

/// Entry positions carrying free perturbations; the rest mirror them.
fn slots(kind: MatrixKind, m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..n {
            let keep = match kind {
                MatrixKind::Generic => true,
                MatrixKind::Symmetric => i <= j,
                MatrixKind::Skew => i < j,
            };
            if keep {
                out.push((i, j));
            }
        }
    }
    out
}

/// `a = b` after localizing at the maximal ideal `m`. With `a` inside `b`,
/// `b / (a + m b)` is killed by `m`, so by Nakayama this holds iff
/// `b` lies in `a + m b`.
fn locally_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if !b.contains_ideal(a) {
        return Ok(false);
    }
    Ok(a.sum(&Ideal::maximal(b.ring()).product(b)?)?.contains_ideal(b))
}

#[derive(Clone, Debug)]
pub struct MatrixProblem {
    pub ring: Arc<Ring>,
    pub phi: PolyMatrix,
    /// Ideal the entries of `psi` come from.
    pub entries: Ideal,
    pub target: MatrixTarget,
    pub space: PerturbSpace,
    /// Height cap for the profile rows.
    pub cap: usize,
    /// `I_1(phi) .. I_r(phi)` when low minors must be kept.
    pub low: Vec<Ideal>,
}

impl MatrixProblem {
    fn new(ring: &Arc<Ring>, phi: &PolyMatrix, j: &Ideal, target: MatrixTarget, degree_bound: Option<u32>) -> Result<MatrixProblem> {
        if j.ring() != ring {
            return Err(Error::RingMismatch);
        }
        let (m, n) = (phi.rows(), phi.cols());
        let kind = target.kind();
        if kind != MatrixKind::Generic && m != n {
            return Err(Error::Shape(format!("{kind} matrices are square")));
        }
        let dim = krull_dim(&Ideal::zero(ring)).max(0) as usize;
        let ht = |i: &Ideal| -> Result<usize> { if i.is_unit() { Ok(dim) } else { Ok(height(i)?.height) } };
        let (entries, q, cap, low) = match &target {
            MatrixTarget::DetProfile { .. } | MatrixTarget::Injectivity => (j.clone(), 0, ht(j)?, Vec::new()),
            MatrixTarget::PreserveLowMinors { r, q, .. } => {
                if *r == 0 || *r > m.min(n) {
                    return Err(Error::Dimension(format!("cannot keep minors of size {r}")));
                }
                let low = (1..=*r).map(|k| det_ideal(ring, phi, k, None)).collect::<Result<Vec<_>>>()?;
                let ir = low[*r - 1].clone();
                (ir.clone(), *q, ht(&ir)?, low)
            }
        };
        if let MatrixTarget::Injectivity = target {
            if n > m {
                return Err(Error::Shape(format!("map from R^{n} to R^{m} has more sources than targets")));
            }
        }
        let count = slots(kind, m, n).len();
        if count == 0 {
            return Err(Error::Dimension("no entries to perturb".into()));
        }
        // homogeneous entries by default: global heights then agree with local ones
        let top = entries.gens().iter().filter_map(|p| p.degree()).max().unwrap_or(0);
        let bound = degree_bound.unwrap_or(q + top);
        let space = PerturbSpace::new(ring, vec![entries.clone(); count], q, Some(bound))?;
        Ok(MatrixProblem { ring: ring.clone(), phi: phi.clone(), entries, target, space, cap, low })
    }

    /// `psi` from the free entries, mirrored for symmetric and skew kinds.
    pub fn psi(&self, g: &FreeVec) -> PolyMatrix {
        let kind = self.target.kind();
        let mut psi = PolyMatrix::zero(self.phi.rows(), self.phi.cols());
        for (&(i, j), p) in slots(kind, self.phi.rows(), self.phi.cols()).iter().zip(g.components()) {
            psi.set(i, j, p.clone());
            match kind {
                MatrixKind::Generic => {}
                MatrixKind::Symmetric => psi.set(j, i, p.clone()),
                MatrixKind::Skew => psi.set(j, i, self.ring.neg(p)),
            }
        }
        psi
    }

    pub(crate) fn evaluate_flat(&self, g: &FreeVec) -> Result<(bool, InvariantValue)> {
        let phi = self.phi.add(&self.ring, &self.psi(g))?;
        match &self.target {
            MatrixTarget::Injectivity => {
                let ok = injectivity_check(&self.ring, &phi)?;
                Ok((ok, InvariantValue::Flag(ok)))
            }
            MatrixTarget::DetProfile { kind, from } => {
                let p = det_profile(&self.ring, &phi, *kind, false, Some(self.cap))?;
                let value = InvariantValue::Counts(p.rows.iter().map(|r| r.height).collect());
                Ok((p.matches_from(*from), value))
            }
            MatrixTarget::PreserveLowMinors { kind, r, .. } => {
                let p = det_profile(&self.ring, &phi, *kind, false, Some(self.cap))?;
                let value = InvariantValue::Counts(p.rows.iter().map(|r| r.height).collect());
                if !p.matches_from(*r) {
                    return Ok((false, value));
                }
                for (k, low) in self.low.iter().enumerate() {
                    if !locally_equal(&det_ideal(&self.ring, &phi, k + 1, None)?, low)? {
                        return Ok((false, value));
                    }
                }
                Ok((true, value))
            }
        }
    }

    /// Grade of the entry ideal is positive (the corollaries' standing
    /// assumption for the perturbation to move anything).
    fn hypothesis(&self) -> Result<Option<bool>> {
        Ok(Some(grade_of(&self.entries, &Ideal::zero(&self.ring))? >= Grade::Finite(1)))
    }

    pub(crate) fn rebuilt(&self) -> MatrixProblem {
        let ring = fresh_ring(&self.ring);
        let re = |i: &Ideal| Ideal::new(&ring, i.gens().to_vec());
        let space = PerturbSpace::new(
            &ring,
            self.space.components().iter().map(re).collect(),
            self.space.min_order(),
            Some(self.space.degree_bound()),
        )
        .expect("components were valid")
        .with_filtration(self.space.filtration().to_vec());
        MatrixProblem {
            ring: ring.clone(),
            phi: self.phi.clone(),
            entries: re(&self.entries),
            target: self.target.clone(),
            space,
            cap: self.cap,
            low: self.low.iter().map(re).collect(),
        }
    }
}

/// Finds `psi` (entries from `J`, or from `m^q I_r(phi)` when keeping low
/// minors) such that `phi + psi` meets the target. Without a degree bound
/// the sampled terms have degree `q` plus the top generator degree. Returns `psi` with the
/// witness, whose `g` lists the free entries row by row.
pub fn perturb_matrix(
    ring: &Arc<Ring>,
    phi: &PolyMatrix,
    j: &Ideal,
    target: MatrixTarget,
    degree_bound: Option<u32>,
    cfg: &SearchConfig,
) -> Result<(PolyMatrix, PerturbWitness)> {
    let problem = MatrixProblem::new(ring, phi, j, target, degree_bound)?;
    let zero = FreeVec::zero(problem.space.len());
    let (ok0, before) = problem.evaluate_flat(&zero)?;
    let advisory = |p: &MatrixProblem| if cfg.check_hypothesis { p.hypothesis() } else { Ok(None) };
    let finish = |problem: MatrixProblem, g: FreeVec, after: InvariantValue, trials: usize, before: InvariantValue| {
        let adv = advisory(&problem)?;
        let psi = problem.psi(&g);
        Ok((
            psi,
            PerturbWitness {
                problem: WitnessProblem::Matrix(problem),
                g,
                invariant_before: before,
                invariant_after: after,
                trials_used: trials,
                seed: cfg.seed,
                advisory_hypothesis: adv,
            },
        ))
    };
    if ok0 {
        return finish(problem, zero, before.clone(), 0, before);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failed = 0;
    for trial in 1..=cfg.budget {
        let g = sample(&problem.space, &mut rng)?;
        let (ok, after) = problem.evaluate_flat(&g)?;
        if ok {
            return finish(problem, g, after, trial, before);
        }
        failed += 1;
    }
    Err(Error::BudgetExhausted(Box::new(SearchFailure {
        target: problem.target.describe(),
        trials: cfg.budget,
        rejected_by_avoid: 0,
        predicate_failures: failed,
        seed: cfg.seed,
        advisory_hypothesis: problem.hypothesis()?,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::determinantal::{generic_matrix, MatrixShape};

    fn cfg(seed: u64) -> SearchConfig {
        SearchConfig { seed, ..SearchConfig::default() }
    }

    #[test]
    fn equal_rows_are_separated() {
        let r = Ring::default_with_vars(&["a", "b", "c"]);
        let (a, b) = (r.var(0), r.var(1));
        let phi = PolyMatrix::from_rows(vec![vec![a.clone(), b.clone()], vec![a, b]]).unwrap();
        let m2 = Ideal::maximal_power(&r, 2);
        let target = MatrixTarget::DetProfile { kind: MatrixKind::Generic, from: 1 };
        let (psi, w) = perturb_matrix(&r, &phi, &m2, target, None, &cfg(1)).unwrap();
        assert!(psi.entries().iter().all(|p| m2.contains(p)));
        let fixed = phi.add(&r, &psi).unwrap();
        let i2 = det_ideal(&r, &fixed, 2, None).unwrap();
        assert_eq!(height(&i2).unwrap().height, 1);
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn generic_matrix_needs_nothing() {
        let (r, phi) = generic_matrix(&MatrixShape::generic(2, 3)).unwrap();
        let target = MatrixTarget::DetProfile { kind: MatrixKind::Generic, from: 0 };
        let (psi, w) = perturb_matrix(&r, &phi, &Ideal::maximal(&r), target, None, &cfg(0)).unwrap();
        assert!(psi.is_zero());
        assert_eq!(w.trials_used, 0);
    }

    #[test]
    fn low_minors_are_kept() {
        let r = Ring::default_with_vars(&["x", "y", "z", "w"]);
        let (x, y) = (r.var(0), r.var(1));
        // rank one: I_2 = 0
        let phi = PolyMatrix::from_rows(vec![vec![x.clone(), y.clone()], vec![x, y]]).unwrap();
        let i1 = det_ideal(&r, &phi, 1, None).unwrap();
        let target = MatrixTarget::PreserveLowMinors { kind: MatrixKind::Generic, r: 1, q: 1 };
        let (psi, w) = perturb_matrix(&r, &phi, &Ideal::unit(&r), target, None, &cfg(3)).unwrap();
        let fixed = phi.add(&r, &psi).unwrap();
        let j1 = det_ideal(&r, &fixed, 1, None).unwrap();
        assert!(i1.contains_ideal(&j1));
        assert!(locally_equal(&j1, &i1).unwrap());
        let i2 = det_ideal(&r, &fixed, 2, None).unwrap();
        assert_eq!(height(&i2).unwrap().height, 1);
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn local_equality() {
        let r = Ring::default_with_vars(&["x"]);
        let x = r.var(0);
        let a = Ideal::new(&r, vec![r.add(&x, &r.mul(&x, &x))]);
        let b = Ideal::new(&r, vec![x.clone()]);
        assert!(!a.same_as(&b));
        assert!(locally_equal(&a, &b).unwrap());
        let c = Ideal::new(&r, vec![r.mul(&x, &x)]);
        assert!(!locally_equal(&c, &b).unwrap());
    }

    #[test]
    fn injectivity_target() {
        let base = Ring::default_with_vars(&["x", "y"]);
        let r = base.quotient_by(&[base.mul(&base.var(0), &base.var(1))]);
        let phi = PolyMatrix::from_rows(vec![vec![r.var(0)]]).unwrap();
        let (psi, w) = perturb_matrix(&r, &phi, &Ideal::maximal(&r), MatrixTarget::Injectivity, None, &cfg(2)).unwrap();
        let fixed = phi.add(&r, &psi).unwrap();
        assert!(injectivity_check(&r, &fixed).unwrap());
        assert_eq!(w.invariant_before, InvariantValue::Flag(false));
        assert!(w.reverify().unwrap());
    }

    #[test]
    fn symmetric_perturbations_stay_symmetric() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let x = r.var(0);
        let phi = PolyMatrix::from_rows(vec![vec![x.clone(), x.clone()], vec![x.clone(), x]]).unwrap();
        let target = MatrixTarget::DetProfile { kind: MatrixKind::Symmetric, from: 0 };
        let (psi, _) = perturb_matrix(&r, &phi, &Ideal::maximal(&r), target, None, &cfg(4)).unwrap();
        assert_eq!(psi.get(0, 1), psi.get(1, 0));
        assert_eq!(psi, psi.transpose());
    }
}
