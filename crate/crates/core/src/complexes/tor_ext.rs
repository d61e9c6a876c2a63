use crate::error::{Error, Result};
use crate::groebner::{resolve_quotient, Ideal, Resolution};
use crate::ideal_theory::Grade;

use super::{homology_at, HomologyCertificate};

fn resolve(a: &Ideal, max_length: usize) -> Result<Resolution> {
    resolve_quotient(a.ring(), a.gens(), max_length)
}

/// `Tor_j(R/I, R/J) = 0`, from a resolution of `R/I` tensored with `R/J`.
pub fn tor_vanishes(a: &Ideal, b: &Ideal, j: usize) -> Result<HomologyCertificate> {
    a.check_same(b)?;
    let res = resolve(a, j + 1)?;
    let len = res.length();
    if res.truncated && j >= len {
        return Err(Error::Undecided(len));
    }
    let q = a.ring().quotient_by(b.gens());
    let c = res.complex.over_ring(&q)?;
    Ok(super::homology_vanishes(&c, j))
}

/// `Ext^j(R/I, R/J) = 0`, from `Hom(F, R/J)` with transposed maps.
pub fn ext_vanishes(a: &Ideal, m: &Ideal, j: usize) -> Result<HomologyCertificate> {
    a.check_same(m)?;
    let res = resolve(a, j + 1)?;
    ext_from_resolution(&res, m, j)
}

fn ext_from_resolution(res: &Resolution, m: &Ideal, j: usize) -> Result<HomologyCertificate> {
    let len = res.length();
    if res.truncated && j >= len {
        return Err(Error::Undecided(len));
    }
    let q = m.ring().quotient_by(m.gens());
    let c = res.complex.over_ring(&q)?;
    let outgoing = c.diff(j + 1).map(|d| d.transpose());
    let incoming = c.diff(j).map(|d| d.transpose());
    Ok(homology_at(&q, j, c.rank(j), outgoing.as_ref(), incoming.as_ref()))
}

/// `grade_I(R/J) = min { j : Ext^j(R/I, R/J) != 0 }`.
pub fn grade_via_ext(i: &Ideal, m: &Ideal) -> Result<Grade> {
    i.check_same(m)?;
    if i.sum(m)?.is_unit() {
        return Ok(Grade::Infinite);
    }
    // a proper IM != M forces grade <= dim M <= v
    let bound = i.ring().nvars();
    let res = resolve(i, bound + 1)?;
    for j in 0..=bound {
        if !ext_from_resolution(&res, m, j)?.vanishes {
            return Ok(Grade::Finite(j));
        }
    }
    Err(Error::Certificate("Ext vanished up to the variable count on a proper quotient".into()))
}
