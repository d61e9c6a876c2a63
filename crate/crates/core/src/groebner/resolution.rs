use std::sync::Arc;

use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::ring::{Poly, PolyMatrix, Ring};

use super::module::{FreeVec, Lifter};

/// A free resolution `F_len -> ... -> F_1 -> F_0` of `F_0 / N`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub complex: ChainComplex,
    /// The next syzygy module was nonzero when `max_length` was reached.
    pub truncated: bool,
}

impl Resolution {
    /// Ranks `F_0, F_1, ...`.
    pub fn betti(&self) -> &[usize] {
        self.complex.ranks()
    }

    pub fn length(&self) -> usize {
        self.complex.length()
    }
}

fn unit_entry(m: &PolyMatrix) -> Option<(usize, usize)> {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let p = m.get(r, c);
            if !p.is_zero() && p.is_constant() {
                return Some((r, c));
            }
        }
    }
    None
}

fn drop_row(m: &PolyMatrix, r: usize) -> PolyMatrix {
    let rows: Vec<usize> = (0..m.rows()).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..m.cols()).collect();
    m.submatrix(&rows, &cols)
}

fn drop_col(m: &PolyMatrix, c: usize) -> PolyMatrix {
    let rows: Vec<usize> = (0..m.rows()).collect();
    let cols: Vec<usize> = (0..m.cols()).filter(|&j| j != c).collect();
    m.submatrix(&rows, &cols)
}

/// Splits off `0 -> R --a--> R -> 0` for a unit `a = d[r, c]` of `diffs[k]`.
fn split_unit(ring: &Ring, diffs: &mut [PolyMatrix], k: usize, r: usize, c: usize) {
    let d = &diffs[k];
    let a_inv = ring.field().inv(&d.get(r, c).lead().expect("unit").coeff);
    let mut next = PolyMatrix::zero(d.rows() - 1, d.cols() - 1);
    let rows: Vec<usize> = (0..d.rows()).filter(|&i| i != r).collect();
    let cols: Vec<usize> = (0..d.cols()).filter(|&j| j != c).collect();
    for (ni, &s) in rows.iter().enumerate() {
        let dsc = ring.scale(d.get(s, c), &a_inv);
        for (nj, &cc) in cols.iter().enumerate() {
            let v = ring.sub(d.get(s, cc), &ring.mul(&dsc, d.get(r, cc)));
            next.set(ni, nj, v);
        }
    }
    diffs[k] = next;
    if k > 0 {
        diffs[k - 1] = drop_col(&diffs[k - 1], r);
    }
    if k + 1 < diffs.len() {
        diffs[k + 1] = drop_row(&diffs[k + 1], c);
    }
}

fn syzygy_matrix(ring: &Arc<Ring>, d: &PolyMatrix) -> PolyMatrix {
    let syz = Lifter::from_matrix(ring, d).syzygies();
    let cols: Vec<Vec<Poly>> = syz.into_iter().map(FreeVec::into_components).collect();
    PolyMatrix::from_columns(d.cols(), &cols).expect("syzygies have the source rank")
}

/// Free resolution of `R^rank / span(gens)`, computed by iterated
/// syzygies. After each step, constant entries of the newest map are split
/// off, so homogeneous input yields the minimal resolution. `F_0` is never
/// altered.
pub fn free_resolution(ring: &Arc<Ring>, rank: usize, gens: &[FreeVec], max_length: usize) -> Result<Resolution> {
    if max_length < 1 {
        return Err(Error::Dimension("resolution length must be at least 1".into()));
    }
    let cols: Vec<Vec<Poly>> =
        gens.iter().map(|g| g.components().iter().map(|p| ring.reduce(p)).collect()).collect();
    let d1 = PolyMatrix::from_columns(rank, &cols)?;
    let keep: Vec<usize> = (0..d1.cols()).filter(|&j| d1.column(j).iter().any(|p| !p.is_zero())).collect();
    let d1 = d1.submatrix(&(0..rank).collect::<Vec<_>>(), &keep);
    let mut diffs = vec![d1];
    let mut truncated = false;
    loop {
        let last = diffs.last().expect("nonempty");
        if last.cols() == 0 {
            diffs.pop();
            break;
        }
        let next = syzygy_matrix(ring, last);
        if next.cols() == 0 {
            break;
        }
        if diffs.len() == max_length {
            truncated = true;
            break;
        }
        diffs.push(next);
        let k = diffs.len() - 1;
        while let Some((r, c)) = unit_entry(&diffs[k]) {
            split_unit(ring, &mut diffs, k, r, c);
        }
        if diffs[k].cols() == 0 {
            diffs.pop();
            break;
        }
    }
    let complex = ChainComplex::new(ring, rank, diffs)?;
    Ok(Resolution { complex, truncated })
}

/// Resolution of `R/I` for an ideal given by generators.
pub fn resolve_quotient(ring: &Arc<Ring>, gens: &[Poly], max_length: usize) -> Result<Resolution> {
    let vecs: Vec<FreeVec> = gens.iter().map(|g| FreeVec::new(vec![g.clone()])).collect();
    free_resolution(ring, 1, &vecs, max_length)
}
