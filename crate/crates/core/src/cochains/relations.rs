use serde::{Deserialize, Serialize};

use super::{Cochain, Quasicomplex, Sign};
use crate::error::CochainError;
use crate::groups::Base;

/// Factor ordering for the cohomologous relation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// `(∂⁺w) · c = c2 · (∂⁻w)`.
    #[default]
    BoundaryFirst,
    /// `c · (∂⁻w) = (∂⁺w) · c2`.
    CochainFirst,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    Cobordant,
    Cohomologous,
    WeakCohomologous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationWitness {
    pub kind: RelationKind,
    pub witness: Cochain,
    pub verified: bool,
}

fn check_degrees(c: &Cochain, c2: &Cochain, w: &Cochain) -> Result<(), CochainError> {
    if c2.degree() != c.degree() {
        return Err(CochainError::DegreeMismatch { expected: c.degree(), found: c2.degree() });
    }
    if w.degree() + 1 != c.degree() {
        return Err(CochainError::DegreeMismatch { expected: c.degree().saturating_sub(1), found: w.degree() });
    }
    Ok(())
}

/// `∂⁻w = c` and `∂⁺w = c2`.
pub fn is_cobordant<B: Base>(
    qc: &Quasicomplex<'_, B>,
    c: &Cochain,
    c2: &Cochain,
    w: &Cochain,
) -> Result<bool, CochainError> {
    check_degrees(c, c2, w)?;
    Ok(qc.parity_boundary(w, Sign::Minus)? == *c && qc.parity_boundary(w, Sign::Plus)? == *c2)
}

pub fn is_cohomologous<B: Base>(
    qc: &Quasicomplex<'_, B>,
    c: &Cochain,
    c2: &Cochain,
    w: &Cochain,
    convention: Convention,
) -> Result<bool, CochainError> {
    check_degrees(c, c2, w)?;
    let n = qc.coeff();
    let plus = qc.parity_boundary(w, Sign::Plus)?;
    let minus = qc.parity_boundary(w, Sign::Minus)?;
    Ok(match convention {
        Convention::BoundaryFirst => plus.pointwise(n, c) == c2.pointwise(n, &minus),
        Convention::CochainFirst => c.pointwise(n, &minus) == plus.pointwise(n, c2),
    })
}

/// `(∂⁺_{L'} w) · c = c2 · (∂⁻ w)`, where `target` carries `L'`, the
/// quasiaction of `c2`.
pub fn is_weak_cohomologous<B: Base>(
    source: &Quasicomplex<'_, B>,
    target: &Quasicomplex<'_, B>,
    c: &Cochain,
    c2: &Cochain,
    w: &Cochain,
) -> Result<bool, CochainError> {
    check_degrees(c, c2, w)?;
    let n = target.coeff();
    let plus = target.parity_boundary(w, Sign::Plus)?;
    let minus = source.parity_boundary(w, Sign::Minus)?;
    Ok(plus.pointwise(n, c) == c2.pointwise(n, &minus))
}

/// The unique `c2` with `(∂⁺w) · c = c2 · (∂⁻w)`.
pub fn cohomologous_image<B: Base>(
    qc: &Quasicomplex<'_, B>,
    c: &Cochain,
    w: &Cochain,
) -> Result<Cochain, CochainError> {
    if w.degree() + 1 != c.degree() {
        return Err(CochainError::DegreeMismatch { expected: c.degree().saturating_sub(1), found: w.degree() });
    }
    let n = qc.coeff();
    let plus = qc.parity_boundary(w, Sign::Plus)?;
    let minus = qc.parity_boundary(w, Sign::Minus)?;
    Ok(plus.pointwise(n, c).pointwise(n, &minus.pointwise_inverse(n)))
}
