//! Empirical estimate of the order `n` beyond which perturbations in
//! `F^n R^r` keep a property. This is a Monte-Carlo observation, not a proof.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexes::{homology_vanishes, koszul_on_module, perturb_complex};
use crate::error::{Error, Result};
use crate::groebner::{FreeVec, Ideal};
use crate::ideal_theory::{height, regular_sequence_check};
use crate::ring::{Poly, PolyMatrix, Ring};

use super::{sample, PerturbSpace};

#[derive(Clone, Debug)]
pub enum StabilityPredicate {
    /// The tuple is regular on `R/module_ann`.
    Regular { module_ann: Ideal },
    /// The tuple generates a proper ideal of height at least `h`.
    HeightAtLeast(usize),
    /// The Koszul complex on the tuple, tensored with `R/module_ann`, is
    /// exact in positive degrees.
    KoszulExact { module_ann: Ideal },
}

impl StabilityPredicate {
    fn check(&self, ring: &Arc<Ring>, base: &[Poly], g: &FreeVec) -> Result<bool> {
        let fg: Vec<Poly> = base.iter().zip(g.components()).map(|(a, b)| ring.add(a, b)).collect();
        match self {
            StabilityPredicate::Regular { module_ann } => Ok(regular_sequence_check(&fg, module_ann, true)?.regular),
            StabilityPredicate::HeightAtLeast(h) => {
                let ideal = Ideal::new(ring, fg);
                Ok(!ideal.is_unit() && height(&ideal)?.height >= *h)
            }
            StabilityPredicate::KoszulExact { module_ann } => {
                let k = koszul_on_module(base, module_ann)?;
                let target = koszul_on_module(&fg, module_ann)?;
                let q = k.ring().clone();
                let psi: Vec<PolyMatrix> = target
                    .diffs()
                    .iter()
                    .zip(k.diffs())
                    .map(|(t, d)| t.add(&q, &d.map_entries(|p| q.neg(p))))
                    .collect::<Result<_>>()?;
                let c = perturb_complex(&k, &psi)?;
                Ok((1..=c.length()).all(|i| homology_vanishes(&c, i).vanishes))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityConfig {
    pub max_q: u32,
    pub trials_per_q: usize,
    /// Sampled degree stays within `q * deg F + slack`.
    pub degree_slack: u32,
    /// Generators of `F`; the variables when `None`.
    pub filtration: Option<Vec<Poly>>,
    pub seed: u64,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig { max_q: 4, trials_per_q: 50, degree_slack: 2, filtration: None, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityPoint {
    pub q: u32,
    pub trials: usize,
    pub failures: usize,
}

impl StabilityPoint {
    pub fn failure_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.failures as f64 / self.trials as f64
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport {
    /// The unperturbed tuple satisfies the predicate.
    pub base_ok: bool,
    pub curve: Vec<StabilityPoint>,
    /// Least `q` with no observed failure.
    pub stable_q: Option<u32>,
}

impl StabilityReport {
    pub fn summary(&self) -> String {
        if !self.base_ok {
            return "base does not satisfy the predicate".into();
        }
        match self.stable_q {
            Some(q) => format!("observed stable from q = {q} (empirical)"),
            None => {
                let max = self.curve.last().map_or(0, |p| p.q);
                format!("no stable q <= {max} observed")
            }
        }
    }
}

/// For `q = 1..=max_q`, samples perturbations of `base` in `F^q R^r` and
/// counts the ones breaking the predicate.
pub fn stability_order_search(
    space_of: &PerturbSpace,
    base: &[Poly],
    predicate: &StabilityPredicate,
    cfg: &StabilityConfig,
) -> Result<StabilityReport> {
    if base.len() != space_of.len() {
        return Err(Error::Dimension(format!("tuple of length {} for a space of length {}", base.len(), space_of.len())));
    }
    let ring = space_of.ring().clone();
    let zero = FreeVec::zero(base.len());
    if !predicate.check(&ring, base, &zero)? {
        return Ok(StabilityReport { base_ok: false, curve: Vec::new(), stable_q: None });
    }
    let filtration = cfg.filtration.clone().unwrap_or_else(|| ring.jacobson_proxy());
    let fdeg = filtration.iter().filter_map(|p| p.degree()).min().unwrap_or(0);
    let mut curve = Vec::new();
    for q in 1..=cfg.max_q {
        let space = PerturbSpace::new(&ring, space_of.components().to_vec(), q, Some(q * fdeg + cfg.degree_slack))?
            .with_filtration(filtration.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (u64::from(q) << 32));
        let mut failures = 0;
        for _ in 0..cfg.trials_per_q {
            let g = sample(&space, &mut rng)?;
            if !predicate.check(&ring, base, &g)? {
                failures += 1;
            }
        }
        curve.push(StabilityPoint { q, trials: cfg.trials_per_q, failures });
    }
    let stable_q = curve.iter().find(|p| p.failures == 0).map(|p| p.q);
    Ok(StabilityReport { base_ok: true, curve, stable_q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Field, MonomialOrder, Ring};

    #[test]
    fn regular_pair_is_stable_at_once() {
        let r = Ring::default_with_vars(&["x", "y"]);
        let space = PerturbSpace::maximal_power(&r, 2, 1).unwrap();
        let pred = StabilityPredicate::Regular { module_ann: Ideal::zero(&r) };
        let cfg = StabilityConfig { max_q: 4, trials_per_q: 20, seed: 1, ..StabilityConfig::default() };
        let rep = stability_order_search(&space, &[r.var(0), r.var(1)], &pred, &cfg).unwrap();
        assert!(rep.base_ok);
        assert_eq!(rep.curve.len(), 4);
        assert_eq!(rep.curve[0].failures, 0);
        assert_eq!(rep.stable_q, Some(1));
    }

    #[test]
    fn unit_filtration_never_stabilizes() {
        // k[x1, x2]/(x1 x2) over GF(3), f = 1 + x1, perturbations c (1 + x1)^q
        let base = Ring::new(Field::prime(3).unwrap(), vec!["x1".into(), "x2".into()], MonomialOrder::Grevlex).unwrap();
        let r = base.quotient_by(&[base.mul(&base.var(0), &base.var(1))]);
        let f = r.add(&r.one(), &r.var(0));
        let space = PerturbSpace::new(&r, vec![Ideal::unit(&r)], 1, None).unwrap();
        let pred = StabilityPredicate::Regular { module_ann: Ideal::zero(&r) };
        let cfg = StabilityConfig {
            max_q: 4,
            trials_per_q: 30,
            degree_slack: 0,
            filtration: Some(vec![f.clone()]),
            seed: 7,
        };
        let rep = stability_order_search(&space, &[f], &pred, &cfg).unwrap();
        assert!(rep.base_ok);
        assert!(rep.curve.iter().all(|p| p.failures > 0));
        assert_eq!(rep.stable_q, None);
        assert!(rep.summary().starts_with("no stable q"));
    }

    #[test]
    fn koszul_and_height_predicates() {
        let r = Ring::default_with_vars(&["x", "y", "z"]);
        let space = PerturbSpace::maximal_power(&r, 2, 1).unwrap();
        let cfg = StabilityConfig { max_q: 2, trials_per_q: 5, seed: 2, ..StabilityConfig::default() };
        let base = [r.var(0), r.var(1)];
        let k = StabilityPredicate::KoszulExact { module_ann: Ideal::zero(&r) };
        let rep = stability_order_search(&space, &base, &k, &cfg).unwrap();
        assert_eq!(rep.stable_q, Some(1));
        let h = StabilityPredicate::HeightAtLeast(2);
        assert_eq!(stability_order_search(&space, &base, &h, &cfg).unwrap().stable_q, Some(1));
        let bad = [r.var(0), r.var(0)];
        assert!(!stability_order_search(&space, &bad, &h, &cfg).unwrap().base_ok);
    }
}
