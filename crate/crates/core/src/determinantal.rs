//! Determinantal ideals of generic, symmetric and skew-symmetric matrices
//! and of their specializations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::complexes::subsets;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::ideal_theory::{colon_ideal, grade_of, height, Grade};
use crate::ring::{Field, MonomialOrder, Poly, PolyMatrix, Ring, DEFAULT_PRIME};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Generic,
    Symmetric,
    Skew,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Generic => "generic",
            MatrixKind::Symmetric => "symmetric",
            MatrixKind::Skew => "skew",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixShape {
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
}

impl MatrixShape {
    pub fn generic(m: usize, n: usize) -> MatrixShape {
        MatrixShape { kind: MatrixKind::Generic, m, n }
    }

    pub fn symmetric(m: usize) -> MatrixShape {
        MatrixShape { kind: MatrixKind::Symmetric, m, n: m }
    }

    pub fn skew(m: usize) -> MatrixShape {
        MatrixShape { kind: MatrixKind::Skew, m, n: m }
    }

    fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::Dimension("empty matrix shape".into()));
        }
        if self.kind != MatrixKind::Generic && self.m != self.n {
            return Err(Error::Shape(format!("{} matrices are square", self.kind)));
        }
        Ok(())
    }
}

fn var_name(i: usize, j: usize, wide: bool) -> String {
    if wide {
        format!("x{}_{}", i + 1, j + 1)
    } else {
        format!("x{}{}", i + 1, j + 1)
    }
}

/// Variable positions `(i, j)` of a shape: all entries, the upper triangle
/// with diagonal, or the strict upper triangle.
fn variable_slots(shape: &MatrixShape) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..shape.m {
        for j in 0..shape.n {
            let keep = match shape.kind {
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

/// The matrix of a shape over its own polynomial ring (GF(32003), grevlex),
/// with variables named `x{i}{j}` (1-based).
pub fn generic_matrix(shape: &MatrixShape) -> Result<(Arc<Ring>, PolyMatrix)> {
    generic_matrix_over(shape, Field::Prime(DEFAULT_PRIME))
}

pub fn generic_matrix_over(shape: &MatrixShape, field: Field) -> Result<(Arc<Ring>, PolyMatrix)> {
    shape.validate()?;
    let slots = variable_slots(shape);
    if slots.is_empty() {
        return Err(Error::Dimension("shape has no variables".into()));
    }
    let wide = shape.m > 9 || shape.n > 9;
    let vars = slots.iter().map(|&(i, j)| var_name(i, j, wide)).collect();
    let ring = Ring::new(field, vars, MonomialOrder::Grevlex)?;
    let mut phi = PolyMatrix::zero(shape.m, shape.n);
    for (k, &(i, j)) in slots.iter().enumerate() {
        let v = ring.var(k);
        match shape.kind {
            MatrixKind::Generic => phi.set(i, j, v),
            MatrixKind::Symmetric => {
                phi.set(j, i, v.clone());
                phi.set(i, j, v);
            }
            MatrixKind::Skew => {
                phi.set(j, i, ring.neg(&v));
                phi.set(i, j, v);
            }
        }
    }
    Ok((ring, phi))
}

/// Memoized Laplace expansion along the first selected row; keys are
/// (row mask, column mask).
struct Minors<'a> {
    ring: &'a Ring,
    phi: &'a PolyMatrix,
    memo: HashMap<(u64, u64), Poly>,
}

impl<'a> Minors<'a> {
    fn new(ring: &'a Ring, phi: &'a PolyMatrix) -> Minors<'a> {
        Minors { ring, phi, memo: HashMap::new() }
    }

    fn det(&mut self, rows: u64, cols: u64) -> Poly {
        if rows == 0 {
            return self.ring.one();
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & !(1u64 << r);
        let mut acc = Poly::zero();
        let mut sign_odd = false;
        let mut c_bits = cols;
        while c_bits != 0 {
            let c = c_bits.trailing_zeros() as usize;
            c_bits &= !(1u64 << c);
            let entry = self.phi.get(r, c);
            if !entry.is_zero() {
                let sub = self.det(rest, cols & !(1u64 << c));
                if !sub.is_zero() {
                    let term = self.ring.mul(entry, &sub);
                    acc = if sign_odd { self.ring.sub(&acc, &term) } else { self.ring.add(&acc, &term) };
                }
            }
            sign_odd = !sign_odd;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn mask(idx: &[usize]) -> u64 {
    idx.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

pub fn determinant(ring: &Ring, m: &PolyMatrix) -> Result<Poly> {
    if m.rows() != m.cols() {
        return Err(Error::Shape(format!("determinant of a {}x{} matrix", m.rows(), m.cols())));
    }
    if m.rows() > 63 {
        return Err(Error::Dimension("matrix too large".into()));
    }
    let all = (1u64 << m.rows()) - 1;
    Ok(Minors::new(ring, m).det(all, all))
}

/// All `r x r` minors, row subsets outer and column subsets inner, both in
/// lexicographic order.
pub fn minors(ring: &Ring, phi: &PolyMatrix, r: usize) -> Result<Vec<Poly>> {
    let (m, n) = (phi.rows(), phi.cols());
    if r == 0 || r > m.min(n) {
        return Err(Error::Dimension(format!("minor size {r} out of range for a {m}x{n} matrix")));
    }
    if m > 63 || n > 63 {
        return Err(Error::Dimension("matrix too large".into()));
    }
    let mut memo = Minors::new(ring, phi);
    let mut out = Vec::new();
    for rows in subsets(m, r) {
        for cols in subsets(n, r) {
            out.push(memo.det(mask(&rows), mask(&cols)));
        }
    }
    Ok(out)
}

/// Row and column selection for a sub-matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

/// `I_r` of `phi` or of the selected block.
pub fn det_ideal(ring: &Arc<Ring>, phi: &PolyMatrix, r: usize, block: Option<&Block>) -> Result<Ideal> {
    let sub;
    let target = match block {
        None => phi,
        Some(b) => {
            if b.rows.is_empty() || b.cols.is_empty() {
                return Err(Error::Dimension("empty block".into()));
            }
            if b.rows.iter().any(|&i| i >= phi.rows()) || b.cols.iter().any(|&j| j >= phi.cols()) {
                return Err(Error::Dimension("block index out of bounds".into()));
            }
            sub = phi.submatrix(&b.rows, &b.cols);
            &sub
        }
    };
    Ok(Ideal::new(ring, minors(ring, target, r)?))
}

fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

/// Height of `I_{j+1}` for a generic matrix of the given shape.
pub fn expected_height(shape: &MatrixShape, j: usize) -> Result<usize> {
    shape.validate()?;
    let (m, n) = (shape.m, shape.n);
    if j > m.min(n) {
        return Err(Error::Dimension(format!("j = {j} out of range for a {m}x{n} shape")));
    }
    Ok(match shape.kind {
        MatrixKind::Generic => (m - j) * (n - j),
        MatrixKind::Symmetric => binom2(m + 1 - j),
        MatrixKind::Skew if j % 2 == 0 => binom2(m - j),
        MatrixKind::Skew => binom2(m + 1 - j),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetRow {
    pub j: usize,
    pub generators: usize,
    /// `None` when `I_{j+1}` is the unit ideal.
    pub height: Option<usize>,
    pub grade: Option<Grade>,
    pub expected: usize,
    /// `min(expected, cap)`.
    pub target: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetProfile {
    pub kind: MatrixKind,
    pub rows: Vec<DetRow>,
}

impl DetProfile {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(|r| r.matches)
    }

    /// All rows with `j >= from` match.
    pub fn matches_from(&self, from: usize) -> bool {
        self.rows.iter().filter(|r| r.j >= from).all(|r| r.matches)
    }
}

/// Heights (and optionally grades) of `I_{j+1}(phi)` for `j < min(m, n)`
/// against `min(expected_height, cap)`, `cap` defaulting to `dim R`.
pub fn det_profile(
    ring: &Arc<Ring>,
    phi: &PolyMatrix,
    kind: MatrixKind,
    with_grade: bool,
    cap: Option<usize>,
) -> Result<DetProfile> {
    let shape = MatrixShape { kind, m: phi.rows(), n: phi.cols() };
    shape.validate()?;
    let cap = match cap {
        Some(c) => c,
        None => crate::ideal_theory::krull_dim(&Ideal::zero(ring)).max(0) as usize,
    };
    let zero = Ideal::zero(ring);
    let mut rows = Vec::new();
    for j in 0..shape.m.min(shape.n) {
        let ideal = det_ideal(ring, phi, j + 1, None)?;
        let expected = expected_height(&shape, j)?;
        let target = expected.min(cap);
        let h = if ideal.is_unit() { None } else { Some(height(&ideal)?.height) };
        let grade = if with_grade { Some(grade_of(&ideal, &zero)?) } else { None };
        rows.push(DetRow {
            j,
            generators: ideal.gens().len(),
            height: h,
            grade,
            expected,
            target,
            matches: h == Some(target),
        });
    }
    Ok(DetProfile { kind, rows })
}

/// `R^a -> R^b` given by a `b x a` matrix (columns are images) is injective
/// iff `I_a(phi)` contains a non-zero-divisor, i.e. `(0 : I_a(phi)) = 0`.
pub fn injectivity_check(ring: &Arc<Ring>, phi: &PolyMatrix) -> Result<bool> {
    let (b, a) = (phi.rows(), phi.cols());
    if a > b {
        return Err(Error::Shape(format!("map from R^{a} to R^{b} has more sources than targets")));
    }
    let ia = det_ideal(ring, phi, a, None)?;
    let zero = Ideal::zero(ring);
    Ok(colon_ideal(&zero, &ia)?.same_as(&zero))
}
