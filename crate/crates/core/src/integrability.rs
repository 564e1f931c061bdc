//! Holonomy subgroups and the integrability (MC) condition
//! `L_a L_b = C_{f(a,b)} L_{ab}` on a subgroup.

use serde::Serialize;

use crate::cochains::{conjugation_quasiaction, Cochain, DeltaVariant, Quasiaction, Quasicomplex};
use crate::error::CochainError;
use crate::groups::{conjugation_map, generated_subgroup, AutomorphismGroup, Elem, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HolonomyResult {
    pub subgroup: Subgroup,
    /// Image of the cochain.
    pub orbit_seed: Vec<Elem>,
    /// Orbit of the seed under every quasiaction used.
    pub orbit: Vec<Elem>,
}

/// Subgroup generated by the orbit of `seeds` under the values of every
/// quasiaction in `actions`.
pub fn holonomy_of(coeff: &FiniteGroup, seeds: &[Elem], actions: &[&Quasiaction]) -> HolonomyResult {
    let mut mask = vec![false; coeff.order()];
    let mut work: Vec<Elem> = Vec::new();
    for &s in seeds {
        if !mask[s] {
            mask[s] = true;
            work.push(s);
        }
    }
    while let Some(x) = work.pop() {
        for l in actions {
            for v in l.values() {
                let y = v.apply(x);
                if !mask[y] {
                    mask[y] = true;
                    work.push(y);
                }
            }
        }
    }
    let orbit: Vec<Elem> = (0..coeff.order()).filter(|&x| mask[x]).collect();
    let subgroup = generated_subgroup(coeff, orbit.iter().copied());
    let mut orbit_seed = seeds.to_vec();
    orbit_seed.sort_unstable();
    orbit_seed.dedup();
    HolonomyResult { subgroup, orbit_seed, orbit }
}

/// `𝓘(c, L)`.
pub fn holonomy_group(coeff: &FiniteGroup, c: &Cochain, action: &Quasiaction) -> HolonomyResult {
    holonomy_of(coeff, &c.image(), &[action])
}

/// Whether every value of `action` maps `h` into itself.
pub fn is_invariant(h: &Subgroup, action: &Quasiaction) -> bool {
    action.values().iter().all(|v| h.members().iter().all(|&x| h.contains(v.apply(x))))
}

/// `L'_g = C_{s(g)}^-1 ∘ L_g`.
pub fn corrected_quasiaction(coeff: &FiniteGroup, s: &Cochain, action: &Quasiaction) -> Quasiaction {
    let values = action
        .values()
        .iter()
        .enumerate()
        .map(|(g, l)| conjugation_map(coeff, coeff.inv(s.at(&[g]))).compose(l))
        .collect();
    Quasiaction::new(values).expect("normalized section gives a normalized quasiaction")
}

/// First `(a, b, n)` with `L_a L_b (n) f(a,b) != f(a,b) L_ab(n)` for `n` in `h`.
pub fn mc_defect(
    base: &FiniteGroup,
    coeff: &FiniteGroup,
    f: &Cochain,
    action: &Quasiaction,
    h: &Subgroup,
) -> Option<(Elem, Elem, Elem)> {
    for a in base.elements() {
        for b in base.elements() {
            let fab = f.at(&[a, b]);
            let ab = base.mul(a, b);
            for &n in h.members() {
                let lhs = coeff.mul(action.apply(a, action.apply(b, n)), fab);
                let rhs = coeff.mul(fab, action.apply(ab, n));
                if lhs != rhs {
                    return Some((a, b, n));
                }
            }
        }
    }
    None
}

pub fn mc_check(base: &FiniteGroup, coeff: &FiniteGroup, f: &Cochain, action: &Quasiaction, h: &Subgroup) -> bool {
    mc_defect(base, coeff, f, action, h).is_none()
}

/// The 2-cochain whose MC equation decides integrability: `c`, `δc` or
/// `δδc` for degrees 2, 1, 0.
pub fn curvature_cochain(qc: &Quasicomplex<'_, FiniteGroup>, c: &Cochain) -> Result<Cochain, CochainError> {
    match c.degree() {
        2 => Ok(c.clone()),
        1 => qc.delta(c, DeltaVariant::Delta),
        0 => qc.delta(&qc.delta(c, DeltaVariant::Delta)?, DeltaVariant::Delta),
        d => Err(CochainError::DegreeOutOfRange { degree: d, max: 2 }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegrabilityReport {
    pub holonomy: Vec<Elem>,
    pub integrable: bool,
    pub absolute: bool,
    /// `(a, b, n)` where MC fails on the holonomy group.
    pub witness: Option<(Elem, Elem, Elem)>,
    /// `(a, b, n)` where MC fails on all of `N`.
    pub absolute_witness: Option<(Elem, Elem, Elem)>,
}

pub fn integrability(qc: &Quasicomplex<'_, FiniteGroup>, c: &Cochain) -> Result<IntegrabilityReport, CochainError> {
    let f = curvature_cochain(qc, c)?;
    let hol = holonomy_group(qc.coeff(), c, qc.action());
    let witness = mc_defect(qc.base(), qc.coeff(), &f, qc.action(), &hol.subgroup);
    let absolute_witness = mc_defect(qc.base(), qc.coeff(), &f, qc.action(), &crate::groups::Subgroup::whole(qc.coeff()));
    Ok(IntegrabilityReport {
        holonomy: hol.subgroup.members().to_vec(),
        integrable: witness.is_none(),
        absolute: absolute_witness.is_none(),
        witness,
        absolute_witness,
    })
}

pub fn is_integrable(qc: &Quasicomplex<'_, FiniteGroup>, c: &Cochain, absolute: bool) -> Result<bool, CochainError> {
    let r = integrability(qc, c)?;
    Ok(if absolute { r.absolute } else { r.integrable })
}

/// The four conditions evaluated for a 1-cochain `s` on `𝓘(s, L)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DdsReport {
    /// `∂⁺(δs) = ∂⁻(δs)`.
    pub twice_closed: bool,
    /// `δ_𝓛 L = C_{δs}` on the holonomy group.
    pub curvature_is_inner: bool,
    /// `δ_𝓛 L = δ_𝓛 (C_s)` on the holonomy group.
    pub curvature_matches_pushed: bool,
    /// `C_s^-1 ∘ L` is multiplicative on the holonomy group.
    pub corrected_is_action: bool,
    pub agree: bool,
}

impl DdsReport {
    pub fn conditions(&self) -> [bool; 4] {
        [self.twice_closed, self.curvature_is_inner, self.curvature_matches_pushed, self.corrected_is_action]
    }
}

pub fn dds_battery(
    qc: &Quasicomplex<'_, FiniteGroup>,
    aut: &AutomorphismGroup,
    s: &Cochain,
) -> Result<DdsReport, CochainError> {
    if s.degree() != 1 {
        return Err(CochainError::DegreeMismatch { expected: 1, found: s.degree() });
    }
    let (g, n, l) = (qc.base(), qc.coeff(), qc.action());
    let hol = holonomy_group(n, s, l).subgroup;
    let f = qc.delta(s, DeltaVariant::Delta)?;
    let twice_closed = qc.is_cocycle(&f)?;

    // automorphism-valued side: L and C_s as 1-cochains over (G, Aut(N))
    let pushed_action = conjugation_quasiaction(aut, l);
    let aut_qc = Quasicomplex::new(g, aut.as_group(), &pushed_action)?;
    let l_cochain = Cochain::new(1, g.order(), l.indices(aut))?;
    let cs_cochain = s.map(|x| aut.conj_index(x));
    let dl = aut_qc.delta(&l_cochain, DeltaVariant::Delta)?;
    let dcs = aut_qc.delta(&cs_cochain, DeltaVariant::Delta)?;
    let mut curvature_is_inner = true;
    let mut curvature_matches_pushed = true;
    for (idx, &phi) in dl.values().iter().enumerate() {
        let lhs = aut.get(phi);
        let inner = aut.get(aut.conj_index(f.values()[idx]));
        curvature_is_inner &= lhs.agrees_on(inner, &hol);
        curvature_matches_pushed &= lhs.agrees_on(aut.get(dcs.values()[idx]), &hol);
    }

    let corrected = corrected_quasiaction(n, s, l);
    let corrected_is_action = g.elements().all(|a| {
        g.elements().all(|b| {
            let lhs = corrected.get(a).compose(corrected.get(b));
            lhs.agrees_on(corrected.get(g.mul(a, b)), &hol)
        })
    });

    let c = [twice_closed, curvature_is_inner, curvature_matches_pushed, corrected_is_action];
    Ok(DdsReport {
        twice_closed,
        curvature_is_inner,
        curvature_matches_pushed,
        corrected_is_action,
        agree: c.iter().all(|&x| x == c[0]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::NormalizedCochains;
    use crate::groups::{automorphism_group, catalog};

    fn z3_inversion_on_generator() -> (FiniteGroup, FiniteGroup, Quasiaction) {
        let g = catalog::cyclic(3);
        let n = catalog::cyclic(3);
        let l = Quasiaction::from_images(&n, vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 1, 2]]).unwrap();
        (g, n, l)
    }

    #[test]
    fn holonomy_examples() {
        let z3 = catalog::cyclic(3);
        let inv = Quasiaction::from_images(&z3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
        assert!(holonomy_group(&z3, &Cochain::identity(1, 2), &inv).subgroup.is_trivial());
        let s = Cochain::new(1, 2, vec![0, 1]).unwrap();
        let h = holonomy_group(&z3, &s, &inv);
        assert!(h.subgroup.is_whole());
        assert_eq!(h.orbit, vec![0, 1, 2]);

        let s3 = catalog::symmetric(3);
        let r = catalog::elements_of_order(&s3, 3)[0];
        let f = Cochain::from_fn(2, 2, |t| if t == [1, 1] { r } else { 0 });
        let h = holonomy_group(&s3, &f, &Quasiaction::trivial(2, 6));
        assert_eq!(h.subgroup.order(), 3);
    }

    #[test]
    fn mc_examples() {
        let (g, n, l) = z3_inversion_on_generator();
        let one = Cochain::identity(2, 3);
        assert!(mc_check(&g, &n, &one, &l, &Subgroup::trivial(3)));
        assert_eq!(mc_defect(&g, &n, &one, &l, &Subgroup::whole(&n)).map(|(a, b, _)| (a, b)), Some((1, 2)));
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        assert!(is_integrable(&qc, &one, false).unwrap());
        assert!(!is_integrable(&qc, &one, true).unwrap());
    }

    #[test]
    fn trivial_cochain_mc_is_multiplicativity() {
        let g = catalog::cyclic(3);
        let n = catalog::cyclic(3);
        let aut = automorphism_group(&n, 12).unwrap();
        let one = Cochain::identity(2, 3);
        for a in 0..2 {
            for b in 0..2 {
                let l = Quasiaction::from_indices(&aut, &[0, a, b]).unwrap();
                let whole = Subgroup::whole(&n);
                assert_eq!(mc_check(&g, &n, &one, &l, &whole), l.is_action(&g));
            }
        }
    }

    #[test]
    fn zero_cocycles_are_integrable() {
        let g = catalog::cyclic(2);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        for li in 0..aut.order() {
            let l = Quasiaction::from_indices(&aut, &[0, li]).unwrap();
            let qc = Quasicomplex::new(&g, &n, &l).unwrap();
            for x in n.elements() {
                let c = Cochain::element(2, x);
                if qc.is_cocycle(&c).unwrap() {
                    assert!(is_integrable(&qc, &c, false).unwrap());
                }
            }
        }
    }

    #[test]
    fn standard_cochain_passes_the_battery() {
        let g = catalog::cyclic(3);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        for s in NormalizedCochains::new(3, 6, 1) {
            let l = Quasiaction::new(g.elements().map(|x| conjugation_map(&n, s.at(&[x]))).collect()).unwrap();
            let qc = Quasicomplex::new(&g, &n, &l).unwrap();
            let r = dds_battery(&qc, &aut, &s).unwrap();
            assert_eq!(r.conditions(), [true; 4]);
            assert!(is_integrable(&qc, &s, true).unwrap());
        }
    }

    #[test]
    fn battery_agrees_on_small_pairs() {
        for (g, n) in [
            (catalog::cyclic(2), catalog::symmetric(3)),
            (catalog::cyclic(2), catalog::cyclic(3)),
            (catalog::cyclic(3), catalog::cyclic(3)),
        ] {
            let aut = automorphism_group(&n, 12).unwrap();
            for l in crate::census::quasiactions(&g, &aut) {
                let qc = Quasicomplex::new(&g, &n, &l).unwrap();
                for s in NormalizedCochains::new(g.order(), n.order(), 1) {
                    let r = dds_battery(&qc, &aut, &s).unwrap();
                    assert!(r.agree, "{:?} {:?} {:?}", l.indices(&aut), s.values(), r);
                }
            }
        }
    }

    #[test]
    fn holonomy_is_invariant_under_both_quasiactions() {
        let g = catalog::cyclic(2);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        for li in 0..aut.order() {
            let l = Quasiaction::from_indices(&aut, &[0, li]).unwrap();
            for s in NormalizedCochains::new(g.order(), n.order(), 1) {
                let h = holonomy_group(&n, &s, &l);
                let lp = corrected_quasiaction(&n, &s, &l);
                assert!(is_invariant(&h.subgroup, &l));
                assert!(is_invariant(&h.subgroup, &lp));
                assert_eq!(holonomy_group(&n, &s, &lp).subgroup, h.subgroup);
            }
        }
    }
}
