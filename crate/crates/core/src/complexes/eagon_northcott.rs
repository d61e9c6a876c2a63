use std::collections::HashMap;
use std::sync::Arc;

use crate::determinantal::{det_ideal, determinant};
use crate::error::{Error, Result};
use crate::ideal_theory::{grade_koszul, grade_of, Grade};
use crate::groebner::Ideal;
use crate::ring::{monomials_of_degree, Poly, PolyMatrix, Ring};

use super::{subsets, ChainComplex};

/// Basis of `D_a(G*) (x) Lambda^p F`: pairs (exponent vector of length m,
/// column subset of size p), divided-power index outer, subset inner.
type Basis = Vec<(Vec<u16>, Vec<usize>)>;

fn slot_basis(m: usize, n: usize, a: u32, p: usize) -> Basis {
    let mut out = Vec::new();
    for alpha in monomials_of_degree(m, a) {
        for j in subsets(n, p) {
            out.push((alpha.exponents().to_vec(), j));
        }
    }
    out
}

fn index(b: &Basis) -> HashMap<(Vec<u16>, Vec<usize>), usize> {
    b.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect()
}

/// `y^alpha (x) w  |->  sum_s y^(alpha - e_s) (x) (phi_s contracted into w)`.
fn contraction(ring: &Ring, phi: &PolyMatrix, source: &Basis, target: &Basis) -> PolyMatrix {
    let idx = index(target);
    let mut d = PolyMatrix::zero(target.len(), source.len());
    for (c, (alpha, cols)) in source.iter().enumerate() {
        for s in 0..alpha.len() {
            if alpha[s] == 0 {
                continue;
            }
            let mut beta = alpha.clone();
            beta[s] -= 1;
            for t in 0..cols.len() {
                let coeff = phi.get(s, cols[t]);
                if coeff.is_zero() {
                    continue;
                }
                let mut rest = cols.clone();
                rest.remove(t);
                let row = idx[&(beta.clone(), rest)];
                let term = if t % 2 == 0 { coeff.clone() } else { ring.neg(coeff) };
                let entry = ring.add(d.get(row, c), &term);
                d.set(row, c, entry);
            }
        }
    }
    d
}

fn maximal_minor(ring: &Ring, phi: &PolyMatrix, cols: &[usize]) -> Poly {
    let rows: Vec<usize> = (0..phi.rows()).collect();
    determinant(ring, &phi.submatrix(&rows, cols)).expect("square")
}

/// The Eagon–Northcott complex (`i = 0`, resolving `R/I_m(phi)` in the
/// generic case) or the Buchsbaum–Rim complex (`i = 1`, resolving
/// `coker phi`) of an `m x n` matrix with `m <= n`.
pub fn eagon_northcott(ring: &Arc<Ring>, phi: &PolyMatrix, i: usize) -> Result<ChainComplex> {
    let (m, n) = (phi.rows(), phi.cols());
    if m == 0 || m > n {
        return Err(Error::Shape(format!("need 1 <= m <= n, got a {m}x{n} matrix")));
    }
    if i >= 2 {
        return Err(Error::OutOfScope(
            "explicit construction out of scope, use en_acyclic_by_grade".into(),
        ));
    }
    let mut diffs = Vec::new();
    let f0_rank;
    if i == 0 {
        f0_rank = 1;
        let first = subsets(n, m);
        let mut d1 = PolyMatrix::zero(1, first.len());
        for (c, cols) in first.iter().enumerate() {
            d1.set(0, c, maximal_minor(ring, phi, cols));
        }
        diffs.push(d1);
        let mut prev = slot_basis(m, n, 0, m);
        for k in 2.. {
            let p = m + k - 1;
            if p > n {
                break;
            }
            let cur = slot_basis(m, n, (k - 1) as u32, p);
            diffs.push(contraction(ring, phi, &cur, &prev));
            prev = cur;
        }
    } else {
        f0_rank = m;
        diffs.push(phi.clone());
        if m < n {
            let second = subsets(n, m + 1);
            let mut d2 = PolyMatrix::zero(n, second.len());
            for (c, cols) in second.iter().enumerate() {
                for t in 0..cols.len() {
                    let mut rest = cols.clone();
                    rest.remove(t);
                    let minor = maximal_minor(ring, phi, &rest);
                    d2.set(cols[t], c, if t % 2 == 0 { minor } else { ring.neg(&minor) });
                }
            }
            diffs.push(d2);
            let mut prev = slot_basis(m, n, 0, m + 1);
            for k in 3.. {
                let p = m + k - 1;
                if p > n {
                    break;
                }
                let cur = slot_basis(m, n, (k - 2) as u32, p);
                diffs.push(contraction(ring, phi, &cur, &prev));
                prev = cur;
            }
        }
    }
    ChainComplex::new(ring, f0_rank, diffs)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnGradeRow {
    pub j: usize,
    pub grade: Grade,
    /// `(n - j)(m - j)`.
    pub expected: usize,
    pub equal: bool,
}

/// Acyclicity of the generalized complexes `C^i`, `i > r`, read off from
/// determinantal grades.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnVerdict {
    /// Grade of `I_m(phi)` (Koszul method).
    pub top_grade: Grade,
    /// `n - m + 1`, the largest possible value.
    pub required: usize,
    /// `(i, acyclic by the grade criterion)`.
    pub verdicts: Vec<(i64, bool)>,
    /// Grade of `I_{j+1}(phi)` against `(n - j)(m - j)` for each `j < m`.
    pub table: Vec<EnGradeRow>,
}

/// `C^i` is acyclic for every `i >= -1` exactly when `I_m(phi)` has grade
/// `n - m + 1`. Verdicts are listed for `i` from `r + 1` to `max(r + 1, 1)`.
pub fn en_acyclic_by_grade(ring: &Arc<Ring>, phi: &PolyMatrix, r: i64) -> Result<EnVerdict> {
    let (m, n) = (phi.rows(), phi.cols());
    if m == 0 || m > n {
        return Err(Error::Shape(format!("need 1 <= m <= n, got a {m}x{n} matrix")));
    }
    if r < -2 {
        return Err(Error::Dimension("threshold below -2".into()));
    }
    let top = det_ideal(ring, phi, m, None)?;
    let module = Ideal::zero(ring);
    let top_grade = grade_koszul(&top, &module)?.grade;
    let required = n - m + 1;
    let acyclic = top_grade >= Grade::Finite(required);
    let verdicts = ((r + 1)..=(r + 1).max(1)).map(|i| (i, acyclic)).collect();
    let mut table = Vec::with_capacity(m);
    for j in 0..m {
        let ideal = det_ideal(ring, phi, j + 1, None)?;
        let grade = if j + 1 == m { top_grade } else { grade_of(&ideal, &module)? };
        let expected = (n - j) * (m - j);
        table.push(EnGradeRow { j, grade, expected, equal: grade == Grade::Finite(expected) });
    }
    Ok(EnVerdict { top_grade, required, verdicts, table })
}
