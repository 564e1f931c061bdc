use std::collections::BTreeSet;

use serde::Serialize;

use super::{cochain_count, Cochain, NormalizedCochains, Quasiaction, Quasicomplex, Sign};
use crate::error::{CensusError, CochainError};
use crate::groups::{center, conjugation_map, AutomorphismGroup, Elem, FiniteGroup};

/// `(C_f, 𝓛)`: a cochain valued in `Aut(N)` with quasiaction
/// `𝓛_g(φ) = L_g φ L_g^-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushedCochain {
    pub cochain: Cochain,
    pub action: Quasiaction,
}

/// `𝓛 = C_L`, a quasiaction of `G` on `Aut(N)`.
pub fn conjugation_quasiaction(aut: &AutomorphismGroup, action: &Quasiaction) -> Quasiaction {
    let values = action
        .indices(aut)
        .into_iter()
        .map(|i| conjugation_map(aut.as_group(), i))
        .collect();
    Quasiaction::new(values).expect("conjugation by the identity is the identity")
}

pub fn push_c(
    qc: &Quasicomplex<'_, FiniteGroup>,
    aut: &AutomorphismGroup,
    c: &Cochain,
) -> Result<PushedCochain, CochainError> {
    if aut.base_order() != qc.coeff().order() {
        return Err(CochainError::Incompatible);
    }
    Ok(PushedCochain {
        cochain: c.map(|x| aut.conj_index(x)),
        action: conjugation_quasiaction(aut, qc.action()),
    })
}

/// Stage-by-stage check of `Cen(N) -> N -> Aut(N) -> Out(N)` on cochains of
/// one degree and one quasiaction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    pub degree: usize,
    pub quasiaction: Vec<usize>,
    pub cochains: u128,
    pub center_valued: u128,
    pub inclusion_injective: bool,
    pub center_closed_under_boundaries: bool,
    pub kernel_of_push: u128,
    pub kernel_is_center_valued: bool,
    pub push_images: u128,
    pub images_inner_valued: bool,
    pub aut_cochains: u128,
    pub projection_kernel: u128,
    pub image_is_projection_kernel: bool,
    pub projection_images: u128,
    pub projection_surjective: bool,
    pub outer_action_well_defined: bool,
    pub chain_map: bool,
    pub passed: bool,
}

/// Exhaustive up to `budget` cochains per enumerated space.
pub fn exactness_check(
    qc: &Quasicomplex<'_, FiniteGroup>,
    aut: &AutomorphismGroup,
    degree: usize,
    budget: u128,
) -> Result<ExactnessReport, CensusError> {
    let (g, n) = (qc.base(), qc.coeff());
    let m = g.order();
    let cen = center(n);
    let needed = cochain_count(m, n.order(), degree).max(cochain_count(m, aut.order(), degree));
    if needed > budget {
        return Err(CensusError::BudgetExceeded { needed, budget });
    }
    let pushed_action = conjugation_quasiaction(aut, qc.action());
    let aut_qc = Quasicomplex::new(g, aut.as_group(), &pushed_action)?;

    let mut cochains = 0u128;
    let mut center_valued = BTreeSet::new();
    let mut included = BTreeSet::new();
    let mut center_closed = true;
    let mut kernel = BTreeSet::new();
    let mut images = BTreeSet::new();
    let mut images_inner = true;
    let mut chain_map = true;
    for c in NormalizedCochains::new(m, n.order(), degree) {
        cochains += 1;
        let pushed = c.map(|x| aut.conj_index(x));
        if c.values().iter().all(|&x| cen.contains(x)) {
            center_valued.insert(c.clone());
            // the inclusion is the identity on values
            included.insert(c.values().to_vec());
            for sign in [Sign::Plus, Sign::Minus] {
                let b = qc.parity_boundary(&c, sign)?;
                center_closed &= b.values().iter().all(|&x| cen.contains(x));
            }
        }
        if pushed.is_identity() {
            kernel.insert(c.clone());
        }
        images_inner &= pushed.values().iter().all(|&a| aut.is_inner(a));
        if degree <= 2 {
            for sign in [Sign::Plus, Sign::Minus] {
                let lhs = aut_qc.parity_boundary(&pushed, sign)?;
                let rhs = qc.parity_boundary(&c, sign)?.map(|x| aut.conj_index(x));
                chain_map &= lhs == rhs;
            }
        }
        images.insert(pushed);
    }

    let mut aut_cochains = 0u128;
    let mut projection_kernel = BTreeSet::new();
    let mut projections = BTreeSet::new();
    for phi in NormalizedCochains::new(m, aut.order(), degree) {
        aut_cochains += 1;
        let projected: Vec<Elem> = phi.values().iter().map(|&a| aut.outer_class(a)).collect();
        if projected.iter().all(|&k| k == 0) {
            projection_kernel.insert(phi.clone());
        }
        projections.insert(projected);
    }
    let outer_count = aut.outer_cosets().len();
    let projection_surjective = projections.len() as u128 == cochain_count(m, outer_count, degree);

    let outer_action_well_defined = g.elements().all(|x| {
        aut.outer_cosets().iter().all(|coset| {
            let targets: BTreeSet<usize> =
                coset.iter().map(|&a| aut.outer_class(pushed_action.apply(x, a))).collect();
            targets.len() == 1
        })
    });

    let inclusion_injective = included.len() == center_valued.len();
    let kernel_is_center_valued = kernel == center_valued;
    let image_is_projection_kernel = images == projection_kernel;
    let passed = inclusion_injective
        && center_closed
        && kernel_is_center_valued
        && images_inner
        && image_is_projection_kernel
        && projection_surjective
        && outer_action_well_defined
        && chain_map;
    Ok(ExactnessReport {
        degree,
        quasiaction: qc.action().indices(aut),
        cochains,
        center_valued: center_valued.len() as u128,
        inclusion_injective,
        center_closed_under_boundaries: center_closed,
        kernel_of_push: kernel.len() as u128,
        kernel_is_center_valued,
        push_images: images.len() as u128,
        images_inner_valued: images_inner,
        aut_cochains,
        projection_kernel: projection_kernel.len() as u128,
        image_is_projection_kernel,
        projection_images: projections.len() as u128,
        projection_surjective,
        outer_action_well_defined,
        chain_map,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphism_group, catalog};

    #[test]
    fn abelian_coefficients_push_to_identity() {
        let g = catalog::cyclic(3);
        let n = catalog::cyclic(4);
        let aut = automorphism_group(&n, 12).unwrap();
        let l = Quasiaction::from_indices(&aut, &[0, 1, 1]).unwrap();
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        for c in NormalizedCochains::new(3, 4, 2) {
            assert!(push_c(&qc, &aut, &c).unwrap().cochain.is_identity());
        }
        let report = exactness_check(&qc, &aut, 1, 1 << 20).unwrap();
        assert_eq!(report.kernel_of_push, report.cochains);
        assert!(report.passed);
    }

    #[test]
    fn s3_has_trivial_kernel() {
        let g = catalog::cyclic(2);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        let l = Quasiaction::trivial(2, 6);
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let report = exactness_check(&qc, &aut, 1, 1 << 20).unwrap();
        assert_eq!(report.kernel_of_push, 1);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn q8_kernel_is_sign_valued() {
        let g = catalog::cyclic(2);
        let n = catalog::quaternion();
        let aut = automorphism_group(&n, 12).unwrap();
        let l = Quasiaction::trivial(2, 8);
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let report = exactness_check(&qc, &aut, 1, 1 << 20).unwrap();
        assert_eq!(report.kernel_of_push, 2);
        assert_eq!(report.push_images, 4);
        assert_eq!(report.projection_images, 6);
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn identity_pushes_to_identity() {
        let g = catalog::cyclic(2);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        let l = Quasiaction::from_indices(&aut, &[0, 3]).unwrap();
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let pushed = push_c(&qc, &aut, &Cochain::identity(2, 2)).unwrap();
        assert!(pushed.cochain.is_identity());
    }
}
