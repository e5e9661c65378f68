//! Parsing of curve equations typed on the command line.

use vgit::monoform::{parse_affine, parse_monomials, parse_terms, LineVar, MonoError, Monomial};

/// Where the affine variables go, and the degree to homogenize to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineMap {
    pub x_to: LineVar,
    pub y_to: LineVar,
    pub degree: u32,
}

/// Monomials with non-zero coefficient, sorted. Coefficients only matter through the
/// zero test after like terms are collected.
pub fn parse_form(text: &str, affine: Option<AffineMap>) -> Result<Vec<Monomial>, MonoError> {
    let mut ms = match affine {
        None => parse_monomials(text)?,
        Some(map) => parse_affine(text, map.x_to, map.y_to, map.degree)?,
    };
    if ms.is_empty() {
        return Err(MonoError::Empty);
    }
    ms.sort();
    ms.dedup();
    Ok(ms)
}

/// Exponent pairs `(i, j)` of `x^i y^j` with non-zero coefficient.
pub fn parse_germ(text: &str) -> Result<Vec<(u32, u32)>, MonoError> {
    let terms = parse_terms(text, &[("x", 0), ("y", 1)])?;
    if terms.is_empty() {
        return Err(MonoError::Empty);
    }
    Ok(terms.into_iter().map(|(e, _)| (e[0], e[1])).collect())
}
