use serde::Serialize;

use super::families::{boundary_at, cocycle_defect, Family};
use super::{BundleCategory, MonoidalHost, Morphism, QuasiExtensionCategory};
use crate::cochains::{is_weak_cohomologous, Cochain, DeltaVariant, Quasiaction, Quasicomplex, Sign};
use crate::error::CategoryError;
use crate::extensions::QuasiExtension;
use crate::groups::{conjugation_map, quotient, Elem, FiniteGroup, Subgroup};
use crate::sampling::Sampler;

/// `𝓕(s): 𝓕_G -> 𝓕_N` for a normalized function `s`, with monoidal
/// structure `Φ(a, b): s(ab) -> s(a) s(b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctionFunctor {
    pub object_map: Vec<Elem>,
    pub structure: Family,
}

impl FunctionFunctor {
    /// `x: a -> b` goes to the vector `s(b) s(a)^-1: s(a) -> s(b)`.
    pub fn map_morphism(&self, n: &FiniteGroup, x: Morphism) -> Morphism {
        let (sa, sb) = (self.object_map[x.src], self.object_map[x.dst]);
        Morphism { src: sa, dst: sb, value: n.mul(sb, n.inv(sa)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FunctorReport {
    pub preserves_identities: bool,
    pub preserves_composition: bool,
    /// `Φ(a', b') ∘ S(x ⊗ y) = (S(x) ⊗ S(y)) ∘ Φ(a, b)`.
    pub structure_natural: bool,
    /// `(Φ(a, b) ⊗ I) ∘ Φ(ab, c) = (I ⊗ Φ(b, c)) ∘ Φ(a, bc)`, composed directly.
    pub hexagon: bool,
    /// `∂⁺Φ = ∂⁻Φ` through the generic categorical coboundary.
    pub cocycle: bool,
    /// `Φ(a, b)` carries the element `δ s (a, b)` for the quasiaction `C_s`.
    pub matches_group_coboundary: bool,
    pub is_morphism: bool,
    /// Every `Φ(a, b)` is an identity.
    pub strict: bool,
    pub strict_iff_morphism: bool,
    pub passed: bool,
}

pub fn functor_of_function(
    g: &FiniteGroup,
    n: &FiniteGroup,
    s: &[Elem],
) -> Result<(FunctionFunctor, FunctorReport), CategoryError> {
    if s.len() != g.order() || s.iter().any(|&x| x >= n.order()) {
        return Err(CategoryError::TargetMismatch);
    }
    if s[0] != 0 {
        return Err(CategoryError::NotNormalized(s[0]));
    }
    let source = BundleCategory::fiber(g);
    let target = BundleCategory::fiber(n);
    let k = g.order();
    let structure = Family::from_fn(2, k, |t| {
        let (a, b) = (t[0], t[1]);
        target.vector(s[g.mul(a, b)], n.mul(s[a], s[b])).expect("one fiber")
    });
    let functor = FunctionFunctor { object_map: s.to_vec(), structure };
    let map = |x: Morphism| functor.map_morphism(n, x);
    let phi = |a: Elem, b: Elem| functor.structure.at(&[a, b]);

    let preserves_identities = (0..k).all(|a| map(source.identity(a)) == target.identity(s[a]));
    let morphisms = source.morphisms();
    let preserves_composition = morphisms.iter().all(|&x| {
        (0..k).flat_map(|c| source.hom(x.dst, c)).all(|y| {
            map(source.compose(y, x).expect("composable")) == target.compose(map(y), map(x)).expect("composable")
        })
    });
    let structure_natural = morphisms.iter().all(|&x| {
        morphisms.iter().all(|&y| {
            let lhs = target.compose(phi(x.dst, y.dst), map(source.tensor(x, y)));
            let rhs = target.compose(target.tensor(map(x), map(y)), phi(x.src, y.src));
            lhs.is_ok() && lhs == rhs
        })
    });
    let hexagon = (0..k).all(|a| {
        (0..k).all(|b| {
            (0..k).all(|c| {
                let left = target
                    .compose(target.tensor(phi(a, b), target.identity(s[c])), phi(g.mul(a, b), c));
                let right = target
                    .compose(target.tensor(target.identity(s[a]), phi(b, c)), phi(a, g.mul(b, c)));
                left.is_ok() && left == right
            })
        })
    });
    let f = |t: &[Elem]| functor.structure.at(t);
    let cocycle = cocycle_defect(&source, &target, s, &f, 2, None)?.is_none();

    let conj = Quasiaction::new(g.elements().map(|a| conjugation_map(n, s[a])).collect())?;
    let qc = Quasicomplex::new(g, n, &conj)?;
    let delta = qc.delta(&Cochain::new(1, k, s.to_vec())?, DeltaVariant::Delta)?;
    let matches_group_coboundary = delta.tuples().all(|t| delta.at(&t) == phi(t[0], t[1]).value);
    let is_morphism = g.is_homomorphism(n, s);
    let strict = functor.structure.components().iter().all(|m| m.value == 0);
    let strict_iff_morphism = strict == is_morphism;
    let passed = preserves_identities
        && preserves_composition
        && structure_natural
        && hexagon
        && cocycle
        && matches_group_coboundary
        && strict_iff_morphism;
    let report = FunctorReport {
        preserves_identities,
        preserves_composition,
        structure_natural,
        hexagon,
        cocycle,
        matches_group_coboundary,
        is_morphism,
        strict,
        strict_iff_morphism,
        passed,
    };
    Ok((functor, report))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoidalMorphismReport {
    /// `γ(g) = s'(g) s(g)^-1` as elements of `N`.
    pub gamma: Vec<Elem>,
    /// `f'(a, b) ∘ γ(ab) = (γ(a) ⊗ γ(b)) ∘ f(a, b)` in the bundle category.
    pub square_commutes: bool,
    /// `γ(a) ⊗ γ(b) = (I ⊗ γ(b)) ∘ (γ(a) ⊗ I)`.
    pub interchange: bool,
    /// The element under `γ(a) ⊗ γ(b)` is `∂⁺_{L'} γ (a, b)`.
    pub plus_matches: bool,
    /// The element under `γ(ab)` is `∂⁻_L γ (a, b)`.
    pub minus_matches: bool,
    /// `(f, L)` and `(f', L')` are weak cohomologous through `γ`.
    pub weak_cohomologous: bool,
    pub passed: bool,
}

/// Compares the categorical and group-cochain sides of the monoidal
/// morphism `γ: (s, f) -> (s', f')` between two sections of `E -> E/N`,
/// both given on coset indices.
pub fn monoidal_morphism_check(
    e: &FiniteGroup,
    kernel: &Subgroup,
    s: &[Elem],
    s2: &[Elem],
) -> Result<MonoidalMorphismReport, CategoryError> {
    let q = quotient(e, kernel).ok_or(CategoryError::NotNormal)?;
    let g = &q.group;
    let m = g.order();
    for sec in [s, s2] {
        if sec.len() != m || sec.iter().enumerate().any(|(c, &x)| x >= e.order() || q.projection[x] != c) {
            return Err(CategoryError::TargetMismatch);
        }
        if sec[0] != 0 {
            return Err(CategoryError::NotNormalized(sec[0]));
        }
    }
    let host = BundleCategory::new(e, kernel)?;
    let structure = |sec: &[Elem], a: Elem, b: Elem| {
        host.vector(sec[g.mul(a, b)], e.mul(sec[a], sec[b])).expect("same fiber")
    };
    let gamma_m = |a: Elem| host.vector(s[a], s2[a]).expect("same fiber");

    let ngroup = kernel.to_group(e, "N");
    let pos = |x: Elem| kernel.position(x).expect("in kernel");
    let conj_by = |sec: &[Elem]| -> Result<Quasiaction, CategoryError> {
        let images = g
            .elements()
            .map(|a| kernel.members().iter().map(|&k| pos(e.conj(sec[a], k))).collect())
            .collect();
        Ok(Quasiaction::from_images(&ngroup, images)?)
    };
    let (l, l2) = (conj_by(s)?, conj_by(s2)?);
    let qc = Quasicomplex::new(g, &ngroup, &l)?;
    let qc2 = Quasicomplex::new(g, &ngroup, &l2)?;
    let gamma = Cochain::from_fn(1, m, |t| pos(gamma_m(t[0]).value));
    let plus = qc2.parity_boundary(&gamma, Sign::Plus)?;
    let minus = qc.parity_boundary(&gamma, Sign::Minus)?;

    let mut square = true;
    let mut interchange = true;
    let mut plus_ok = true;
    let mut minus_ok = true;
    for a in 0..m {
        for b in 0..m {
            let top = host.compose(structure(s2, a, b), gamma_m(g.mul(a, b)))?;
            let tensor = host.tensor(gamma_m(a), gamma_m(b));
            let bottom = host.compose(tensor, structure(s, a, b))?;
            square &= top == bottom;
            let split = host.compose(
                host.tensor(host.identity(s2[a]), gamma_m(b)),
                host.tensor(gamma_m(a), host.identity(s[b])),
            )?;
            interchange &= split == tensor;
            plus_ok &= pos(tensor.value) == plus.at(&[a, b]);
            minus_ok &= pos(gamma_m(g.mul(a, b)).value) == minus.at(&[a, b]);
        }
    }
    let f = Cochain::from_fn(2, m, |t| pos(structure(s, t[0], t[1]).value));
    let f2 = Cochain::from_fn(2, m, |t| pos(structure(s2, t[0], t[1]).value));
    let weak = is_weak_cohomologous(&qc, &qc2, &f, &f2, &gamma)?;
    Ok(MonoidalMorphismReport {
        gamma: gamma.values().iter().map(|&p| kernel.members()[p]).collect(),
        square_commutes: square,
        interchange,
        plus_matches: plus_ok,
        minus_matches: minus_ok,
        weak_cohomologous: weak,
        passed: square && interchange && plus_ok && minus_ok && weak,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PentagonReport {
    pub samples: usize,
    pub violations: usize,
    pub first_violation: Option<[Elem; 4]>,
    /// `∂(b, c) ∘ ∂(a, b) = ∂(a, c)` on sampled fiber triples.
    pub vector_law_violations: usize,
    pub passed: bool,
}

/// Samples quadruples of the quasi-extension and compares both pentagon
/// composites of the associator, `∂⁺α̃` and `∂⁻α̃`.
pub fn pentagon_sample(e: &QuasiExtension, samples: usize, seed: u64) -> PentagonReport {
    let cat = QuasiExtensionCategory::new(e);
    let k = e.order();
    let ids: Vec<Elem> = (0..k).collect();
    let alpha = |t: &[Elem]| cat.associator(t[0], t[1], t[2]);
    let mut rng = Sampler::new(seed);
    let mut pick = || rng.index(k);
    let mut violations = 0;
    let mut first = None;
    let mut vector_law_violations = 0;
    for _ in 0..samples {
        let t = [pick(), pick(), pick(), pick()];
        let plus = boundary_at(&cat, &cat, &ids, &alpha, 3, Sign::Plus, &t, None);
        let minus = boundary_at(&cat, &cat, &ids, &alpha, 3, Sign::Minus, &t, None);
        if plus.is_err() || plus != minus {
            violations += 1;
            first.get_or_insert(t);
        }
        let (a, b0, c0) = (t[0], t[1], t[2]);
        let fiber = e.project(a);
        let (b, c) = (b0 - e.project(b0) + fiber, c0 - e.project(c0) + fiber);
        let x = cat.vector(a, b).expect("same fiber");
        let y = cat.vector(b, c).expect("same fiber");
        if cat.compose(y, x).ok() != cat.vector(a, c).ok() {
            vector_law_violations += 1;
        }
    }
    PentagonReport {
        samples,
        violations,
        first_violation: first,
        vector_law_violations,
        passed: violations == 0 && vector_law_violations == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::Quasicomplex;
    use crate::extensions::{build_quasi_extension, Fiber};
    use crate::groups::{catalog, generated_subgroup};

    #[test]
    fn function_functor_examples() {
        let z2 = catalog::cyclic(2);
        let z4 = catalog::cyclic(4);
        let (fun, r) = functor_of_function(&z2, &z4, &[0, 1]).unwrap();
        assert_eq!(fun.structure.at(&[1, 1]).value, 2);
        assert!(r.passed && !r.strict && !r.is_morphism);
        let (_, r) = functor_of_function(&z2, &z4, &[0, 2]).unwrap();
        assert!(r.passed && r.strict && r.is_morphism);
        assert_eq!(functor_of_function(&z2, &z4, &[1, 0]).unwrap_err(), CategoryError::NotNormalized(1));
        let z3 = catalog::cyclic(3);
        for v in 0..3 {
            let (_, r) = functor_of_function(&z2, &z3, &[0, v]).unwrap();
            assert!(r.passed);
            assert_eq!(r.is_morphism, v == 0);
        }
    }

    #[test]
    fn sections_of_s3() {
        let s3 = catalog::symmetric(3);
        let r = catalog::elements_of_order(&s3, 3)[0];
        let n = generated_subgroup(&s3, [r]);
        let q = quotient(&s3, &n).unwrap();
        for &x in &q.cosets[1] {
            for &y in &q.cosets[1] {
                let rep = monoidal_morphism_check(&s3, &n, &[0, x], &[0, y]).unwrap();
                assert!(rep.passed, "{rep:?}");
            }
        }
        assert_eq!(monoidal_morphism_check(&s3, &n, &[0, 0], &[0, 0]), Err(CategoryError::TargetMismatch));
    }

    #[test]
    fn pentagon_on_a_non_associative_magma() {
        let z3 = catalog::cyclic(3);
        let l = Quasiaction::from_images(&z3, vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 1, 2]]).unwrap();
        let qc = Quasicomplex::new(&z3, &z3, &l).unwrap();
        let f = Cochain::new(2, 3, vec![0, 0, 0, 0, 1, 0, 0, 2, 1]).unwrap();
        let e = build_quasi_extension(&qc, &f, Fiber::Full).unwrap();
        assert!(!e.is_associative());
        let rep = pentagon_sample(&e, 2000, 7);
        assert!(rep.passed, "{rep:?}");
        assert_eq!(rep, pentagon_sample(&e, 2000, 7));
    }
}
