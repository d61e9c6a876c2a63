//! Finite chain complexes of free modules, Koszul and Eagon–Northcott
//! complexes, homology-vanishing certificates, Tor and Ext.

mod eagon_northcott;
mod tor_ext;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{FreeVec, Ideal, Lifter, Submodule};
use crate::ring::{Poly, PolyMatrix, Ring};

pub use eagon_northcott::{eagon_northcott, en_acyclic_by_grade, EnGradeRow, EnVerdict};
pub use tor_ext::{ext_vanishes, grade_via_ext, tor_vanishes};

/// `F_len -> ... -> F_1 -> F_0` with `d_i : F_i -> F_{i-1}`.
///
/// Ranks are stored from `F_0` upward and `diffs[i - 1]` is `d_i`, a
/// `rank(F_{i-1}) x rank(F_i)` matrix. Construction checks that shapes
/// compose and that `d_{i-1} d_i = 0` in the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Arc<Ring>,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
    labels: Option<Vec<String>>,
}

impl ChainComplex {
    pub fn new(ring: &Arc<Ring>, f0_rank: usize, diffs: Vec<PolyMatrix>) -> Result<ChainComplex> {
        let mut ranks = vec![f0_rank];
        let mut reduced = Vec::with_capacity(diffs.len());
        for (i, d) in diffs.into_iter().enumerate() {
            if d.rows() != ranks[i] {
                return Err(Error::Shape(format!(
                    "d{} has {} rows but F{} has rank {}",
                    i + 1,
                    d.rows(),
                    i,
                    ranks[i]
                )));
            }
            ranks.push(d.cols());
            reduced.push(d.map_entries(|p| ring.reduce(p)));
        }
        for i in 1..reduced.len() {
            if !reduced[i - 1].mul(ring, &reduced[i])?.is_zero() {
                return Err(Error::NotAComplex { slot: i });
            }
        }
        Ok(ChainComplex { ring: ring.clone(), ranks, diffs: reduced, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<ChainComplex> {
        if labels.len() != self.ranks.len() {
            return Err(Error::Dimension(format!("{} labels for {} slots", labels.len(), self.ranks.len())));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// `rank F_0, rank F_1, ...`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// Number of differentials.
    pub fn length(&self) -> usize {
        self.diffs.len()
    }

    pub fn diffs(&self) -> &[PolyMatrix] {
        &self.diffs
    }

    /// `d_i`, for `1 <= i <= length`.
    pub fn diff(&self, i: usize) -> Option<&PolyMatrix> {
        if i == 0 {
            None
        } else {
            self.diffs.get(i - 1)
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The same maps read in a quotient `ring` of the same polynomial ring,
    /// i.e. the complex tensored with that quotient.
    pub fn over_ring(&self, ring: &Arc<Ring>) -> Result<ChainComplex> {
        if ring.poly() != self.ring.poly() {
            return Err(Error::RingMismatch);
        }
        ChainComplex::new(ring, self.ranks[0], self.diffs.clone())
    }

    pub fn format(&self) -> String {
        let mut out = format!("ranks {:?}", self.ranks);
        for (i, d) in self.diffs.iter().enumerate() {
            out.push_str(&format!("\nd{} = {}", i + 1, d.format(&self.ring)));
        }
        out
    }
}

/// Evidence for or against `H_i = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyWitness {
    /// `F_i = 0`.
    Trivial,
    /// Each kernel generator paired with a preimage under `d_{i+1}`.
    Lifts(Vec<(FreeVec, FreeVec)>),
    /// A cycle with nonzero normal form modulo the boundaries.
    Obstruction { cycle: FreeVec, residue: FreeVec },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyCertificate {
    pub slot: usize,
    pub vanishes: bool,
    pub witness: HomologyWitness,
}

impl HomologyCertificate {
    /// Re-checks the witness against `c` with fresh Gröbner bases.
    pub fn verify(&self, c: &ChainComplex) -> bool {
        verify_at(c.ring(), c.rank(self.slot), c.diff(self.slot), c.diff(self.slot + 1), self)
    }
}

fn apply(ring: &Ring, d: &PolyMatrix, v: &FreeVec) -> FreeVec {
    FreeVec::new(d.apply(ring, v.components()).expect("shape checked"))
}

/// Homology of `F_{i+1} --incoming--> F_i --outgoing--> F_{i-1}` at `F_i`
/// (of rank `rank`); `None` stands for a zero map.
pub(crate) fn homology_at(
    ring: &Arc<Ring>,
    slot: usize,
    rank: usize,
    outgoing: Option<&PolyMatrix>,
    incoming: Option<&PolyMatrix>,
) -> HomologyCertificate {
    if rank == 0 {
        return HomologyCertificate { slot, vanishes: true, witness: HomologyWitness::Trivial };
    }
    let cycles: Vec<FreeVec> = match outgoing {
        Some(d) => Lifter::from_matrix(ring, d).syzygies(),
        None => (0..rank).map(|s| FreeVec::basis(ring, rank, s)).collect(),
    };
    let boundaries = match incoming {
        Some(d) => Lifter::from_matrix(ring, d),
        None => Lifter::new(ring, rank, &[]).expect("empty generator list"),
    };
    let mut lifts = Vec::with_capacity(cycles.len());
    for z in cycles {
        match boundaries.lift(&z) {
            Some(a) => lifts.push((z, a)),
            None => {
                let residue = boundaries.normal_form(&z);
                return HomologyCertificate {
                    slot,
                    vanishes: false,
                    witness: HomologyWitness::Obstruction { cycle: z, residue },
                };
            }
        }
    }
    HomologyCertificate { slot, vanishes: true, witness: HomologyWitness::Lifts(lifts) }
}

pub(crate) fn verify_at(
    ring: &Arc<Ring>,
    rank: usize,
    outgoing: Option<&PolyMatrix>,
    incoming: Option<&PolyMatrix>,
    cert: &HomologyCertificate,
) -> bool {
    let is_cycle = |z: &FreeVec| z.rank() == rank && outgoing.map_or(true, |d| apply(ring, d, z).is_zero());
    match &cert.witness {
        HomologyWitness::Trivial => rank == 0 && cert.vanishes,
        HomologyWitness::Lifts(pairs) => {
            cert.vanishes
                && pairs.iter().all(|(z, a)| {
                    let image = match incoming {
                        Some(d) => apply(ring, d, a),
                        None => FreeVec::zero(rank),
                    };
                    is_cycle(z) && image == *z
                })
        }
        HomologyWitness::Obstruction { cycle, .. } => {
            let boundaries = match incoming {
                Some(d) => Submodule::from_matrix(ring, d),
                None => Submodule::new(ring, rank, Vec::new()).expect("empty"),
            };
            !cert.vanishes && is_cycle(cycle) && !boundaries.fresh().contains(cycle)
        }
    }
}

/// Tests `H_i(C) = 0`. For `i = 0` this asks whether `d_1` is onto `F_0`.
pub fn homology_vanishes(c: &ChainComplex, i: usize) -> HomologyCertificate {
    homology_at(c.ring(), i, c.rank(i), c.diff(i), c.diff(i + 1))
}

/// Subsets of `{0..r-1}` of size `k` in lexicographic order.
pub(crate) fn subsets(r: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, r: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            if r - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= r {
        go(0, r, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The Koszul complex of `f` over the ring, with basis `e_S` indexed by
/// subsets in lexicographic order and `d(e_S) = sum_t (-1)^t f_{s_t} e_{S - s_t}`.
pub fn koszul_complex(ring: &Arc<Ring>, f: &[Poly]) -> Result<ChainComplex> {
    let r = f.len();
    if r == 0 {
        return Err(Error::Dimension("Koszul complex of an empty tuple".into()));
    }
    let f: Vec<Poly> = f.iter().map(|p| ring.reduce(p)).collect();
    let mut diffs = Vec::with_capacity(r);
    let mut lower = subsets(r, 0);
    for k in 1..=r {
        let upper = subsets(r, k);
        let mut d = PolyMatrix::zero(lower.len(), upper.len());
        for (c, s) in upper.iter().enumerate() {
            for t in 0..s.len() {
                let mut rest = s.clone();
                let removed = rest.remove(t);
                let row = lower.binary_search(&rest).expect("subset present");
                let entry = if t % 2 == 0 { f[removed].clone() } else { ring.neg(&f[removed]) };
                d.set(row, c, entry);
            }
        }
        diffs.push(d);
        lower = upper;
    }
    ChainComplex::new(ring, 1, diffs)
}

/// Koszul complex of `f` tensored with `R/J`.
pub fn koszul_on_module(f: &[Poly], module_ann: &Ideal) -> Result<ChainComplex> {
    let q = module_ann.ring().quotient_by(module_ann.gens());
    koszul_complex(&q, f)
}

/// `C` with `d_i` replaced by `d_i + psi_i`, provided the result is still a
/// complex.
pub fn perturb_complex(c: &ChainComplex, psi: &[PolyMatrix]) -> Result<ChainComplex> {
    if psi.len() != c.length() {
        return Err(Error::Shape(format!("{} perturbations for {} maps", psi.len(), c.length())));
    }
    let mut diffs = Vec::with_capacity(psi.len());
    for (d, p) in c.diffs().iter().zip(psi) {
        diffs.push(d.add(c.ring(), p).map_err(|_| Error::Shape("perturbation shape mismatch".into()))?);
    }
    ChainComplex::new(c.ring(), c.rank(0), diffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Arc<Ring> {
        Ring::default_with_vars(&["x", "y"])
    }

    #[test]
    fn koszul_shapes_and_signs() {
        let r = r2();
        let (x, y) = (r.var(0), r.var(1));
        let k = koszul_complex(&r, &[x.clone(), y.clone()]).unwrap();
        assert_eq!(k.ranks(), &[1, 2, 1]);
        assert_eq!(k.diff(1).unwrap(), &PolyMatrix::from_rows(vec![vec![x.clone(), y.clone()]]).unwrap());
        assert_eq!(k.diff(2).unwrap(), &PolyMatrix::from_rows(vec![vec![r.neg(&y)], vec![x.clone()]]).unwrap());
        assert_eq!(koszul_complex(&r, &[x.clone()]).unwrap().ranks(), &[1, 1]);
        let r3 = Ring::default_with_vars(&["x", "y", "z"]);
        let k3 = koszul_complex(&r3, &[r3.var(0), r3.var(1), r3.var(2)]).unwrap();
        assert_eq!(k3.ranks(), &[1, 3, 3, 1]);
    }

    #[test]
    fn regular_sequence_has_exact_koszul() {
        let r = r2();
        let k = koszul_complex(&r, &[r.var(0), r.var(1)]).unwrap();
        for i in 1..=2 {
            let c = homology_vanishes(&k, i);
            assert!(c.vanishes);
            assert!(c.verify(&k));
        }
        let h0 = homology_vanishes(&k, 0);
        assert!(!h0.vanishes);
        assert!(h0.verify(&k));
    }

    #[test]
    fn x_xy_has_first_homology() {
        let r = r2();
        let (x, y) = (r.var(0), r.var(1));
        let k = koszul_complex(&r, &[x.clone(), r.mul(&x, &y)]).unwrap();
        let c = homology_vanishes(&k, 1);
        assert!(!c.vanishes);
        assert!(c.verify(&k));
        // the class of (y, -1): a cycle outside the boundary span {x (y, -1)}
        let cycle = FreeVec::new(vec![y.clone(), r.from_i64(-1)]);
        let boundaries = Submodule::from_matrix(&r, k.diff(2).unwrap());
        assert!(!boundaries.contains(&cycle));
        assert!(k.diff(1).unwrap().apply(&r, cycle.components()).unwrap()[0].is_zero());
    }

    #[test]
    fn koszul_on_annihilated_module() {
        let r = r2();
        let x = r.var(0);
        let k = koszul_on_module(&[x.clone()], &Ideal::new(&r, vec![x])).unwrap();
        let c = homology_vanishes(&k, 1);
        assert!(!c.vanishes);
        assert!(c.verify(&k));
    }

    #[test]
    fn perturbing_a_complex() {
        let r = r2();
        let (x, y) = (r.var(0), r.var(1));
        let k = koszul_complex(&r, &[x.clone(), y.clone()]).unwrap();
        let zero: Vec<PolyMatrix> = k.diffs().iter().map(|d| PolyMatrix::zero(d.rows(), d.cols())).collect();
        assert_eq!(perturb_complex(&k, &zero).unwrap(), k);

        // Koszul of (x + y^3, y): the perturbation is itself Koszul-shaped
        let y3 = r.pow(&y, 3);
        let psi1 = PolyMatrix::from_rows(vec![vec![y3.clone(), Poly::zero()]]).unwrap();
        let psi2 = PolyMatrix::from_rows(vec![vec![Poly::zero()], vec![y3.clone()]]).unwrap();
        let p = perturb_complex(&k, &[psi1.clone(), psi2]).unwrap();
        assert!(homology_vanishes(&p, 1).vanishes);
        assert!(homology_vanishes(&p, 2).vanishes);

        // psi_1 alone breaks d1 d2 = 0
        let zero2 = PolyMatrix::zero(2, 1);
        assert!(matches!(perturb_complex(&k, &[psi1, zero2]), Err(Error::NotAComplex { slot: 1 })));
    }

    #[test]
    fn lex_subsets() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(2, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }
}
