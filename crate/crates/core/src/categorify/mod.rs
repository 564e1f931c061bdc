//! Categorified groups and extensions: the base category 𝓑_G, the fiber
//! category 𝓕_G, the bundle category of an extension, and the vector
//! category of a quasi-extension.

mod checks;
mod families;
mod functors;

pub use checks::{
    interchange_defect, restriction_check, untwist_check, vectors_and_preservation, RestrictionReport,
    UntwistReport, VectorReport,
};
pub use families::{
    boundary_at, coboundary_family, cocycle_defect, commutativity_constraint_check, coface_at,
    monoidal_structure_check, naturality_defect, Family, NaturalityScope, StructureReport,
};
pub use functors::{
    functor_of_function, monoidal_morphism_check, pentagon_sample, FunctionFunctor, FunctorReport,
    MonoidalMorphismReport, PentagonReport,
};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cochains::Sign;
use crate::error::CategoryError;
use crate::extensions::QuasiExtension;
use crate::groups::{quotient, Elem, FiniteGroup, Subgroup};

/// A morphism `src -> dst` labelled by a group element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Morphism {
    pub src: Elem,
    pub dst: Elem,
    pub value: Elem,
}

/// A finite category with a (not necessarily associative) tensor product.
pub trait MonoidalHost {
    fn object_count(&self) -> usize;
    fn tensor_objects(&self, a: Elem, b: Elem) -> Elem;
    fn has_hom(&self, a: Elem, b: Elem) -> bool;
    /// Labels of the morphisms in any nonempty hom-set.
    fn labels(&self) -> &[Elem];
    fn identity(&self, a: Elem) -> Morphism;
    /// `g ∘ f`.
    fn compose(&self, g: Morphism, f: Morphism) -> Result<Morphism, CategoryError>;
    fn tensor(&self, f: Morphism, g: Morphism) -> Morphism;
    fn vector(&self, a: Elem, b: Elem) -> Result<Morphism, CategoryError>;
    fn is_vector(&self, m: Morphism) -> bool;

    fn hom(&self, a: Elem, b: Elem) -> Vec<Morphism> {
        if !self.has_hom(a, b) {
            return Vec::new();
        }
        self.labels().iter().map(|&value| Morphism { src: a, dst: b, value }).collect()
    }

    fn morphisms(&self) -> Vec<Morphism> {
        let k = self.object_count();
        (0..k).flat_map(|a| (0..k).flat_map(move |b| self.hom(a, b))).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorKind {
    /// `f ⊗ g = t(f) g s(f)^-1`.
    #[default]
    Twisted,
    /// `f ~⊗ g = g`.
    Untwisted,
}

/// The category of an extension `N -> E -> E/N`: objects are elements of
/// `E`, morphisms `a -> b` exist inside a fiber and are labelled by `N`
/// (as elements of `E`), composition is multiplication.
#[derive(Debug, Clone)]
pub struct BundleCategory {
    total: FiniteGroup,
    kernel: Subgroup,
    projection: Vec<Elem>,
    kind: TensorKind,
}

impl BundleCategory {
    pub fn new(total: &FiniteGroup, kernel: &Subgroup) -> Result<Self, CategoryError> {
        let q = quotient(total, kernel).ok_or(CategoryError::NotNormal)?;
        Ok(BundleCategory { total: total.clone(), kernel: kernel.clone(), projection: q.projection, kind: TensorKind::Twisted })
    }

    /// 𝓕_G: one fiber, `Hom(a, b) = G`.
    pub fn fiber(g: &FiniteGroup) -> Self {
        Self::new(g, &Subgroup::whole(g)).expect("whole group is normal")
    }

    /// 𝓑_G: identity morphisms only.
    pub fn base(g: &FiniteGroup) -> Self {
        Self::new(g, &Subgroup::trivial(g.order())).expect("trivial subgroup is normal")
    }

    pub fn with_tensor(mut self, kind: TensorKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn total(&self) -> &FiniteGroup {
        &self.total
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn kind(&self) -> TensorKind {
        self.kind
    }

    pub fn component(&self, a: Elem) -> Elem {
        self.projection[a]
    }

    /// `D(x: a -> b) = b^-1 x a`.
    pub fn untwist(&self, m: Morphism) -> Morphism {
        let e = &self.total;
        Morphism { value: e.mul(e.mul(e.inv(m.dst), m.value), m.src), ..m }
    }

    pub fn dump(&self) -> Value {
        let k = self.object_count();
        let hom: Vec<Vec<usize>> =
            (0..k).map(|a| (0..k).map(|b| if self.has_hom(a, b) { self.labels().len() } else { 0 }).collect()).collect();
        let tensor: Vec<Vec<Elem>> = (0..k).map(|a| (0..k).map(|b| self.tensor_objects(a, b)).collect()).collect();
        json!({
            "objects": k,
            "labels": self.labels(),
            "hom": hom,
            "tensor": tensor,
            "kind": self.kind,
        })
    }
}

impl MonoidalHost for BundleCategory {
    fn object_count(&self) -> usize {
        self.total.order()
    }

    fn tensor_objects(&self, a: Elem, b: Elem) -> Elem {
        self.total.mul(a, b)
    }

    fn has_hom(&self, a: Elem, b: Elem) -> bool {
        self.projection[a] == self.projection[b]
    }

    fn labels(&self) -> &[Elem] {
        self.kernel.members()
    }

    fn identity(&self, a: Elem) -> Morphism {
        Morphism { src: a, dst: a, value: 0 }
    }

    fn compose(&self, g: Morphism, f: Morphism) -> Result<Morphism, CategoryError> {
        if f.dst != g.src {
            return Err(CategoryError::NotComposable(f.dst, g.src));
        }
        Ok(Morphism { src: f.src, dst: g.dst, value: self.total.mul(g.value, f.value) })
    }

    fn tensor(&self, f: Morphism, g: Morphism) -> Morphism {
        let e = &self.total;
        let value = match self.kind {
            TensorKind::Twisted => e.mul(e.mul(f.dst, g.value), e.inv(f.src)),
            TensorKind::Untwisted => g.value,
        };
        Morphism { src: e.mul(f.src, g.src), dst: e.mul(f.dst, g.dst), value }
    }

    fn vector(&self, a: Elem, b: Elem) -> Result<Morphism, CategoryError> {
        if !self.has_hom(a, b) {
            return Err(CategoryError::NoSuchMorphism { src: a, dst: b, label: 0 });
        }
        let value = match self.kind {
            TensorKind::Twisted => self.total.mul(b, self.total.inv(a)),
            // D carries the vector b a^-1 to the loop b^-1 (b a^-1) a = 1.
            TensorKind::Untwisted => 0,
        };
        Ok(Morphism { src: a, dst: b, value })
    }

    fn is_vector(&self, m: Morphism) -> bool {
        self.vector(m.src, m.dst).map(|v| v == m).unwrap_or(false)
    }
}

/// The same category with the tensor product reversed.
#[derive(Debug, Clone, Copy)]
pub struct Opposite<'a, H: ?Sized>(pub &'a H);

impl<H: MonoidalHost + ?Sized> MonoidalHost for Opposite<'_, H> {
    fn object_count(&self) -> usize {
        self.0.object_count()
    }

    fn tensor_objects(&self, a: Elem, b: Elem) -> Elem {
        self.0.tensor_objects(b, a)
    }

    fn has_hom(&self, a: Elem, b: Elem) -> bool {
        self.0.has_hom(a, b)
    }

    fn labels(&self) -> &[Elem] {
        self.0.labels()
    }

    fn identity(&self, a: Elem) -> Morphism {
        self.0.identity(a)
    }

    fn compose(&self, g: Morphism, f: Morphism) -> Result<Morphism, CategoryError> {
        self.0.compose(g, f)
    }

    fn tensor(&self, f: Morphism, g: Morphism) -> Morphism {
        self.0.tensor(g, f)
    }

    fn vector(&self, a: Elem, b: Elem) -> Result<Morphism, CategoryError> {
        self.0.vector(a, b)
    }

    fn is_vector(&self, m: Morphism) -> bool {
        self.0.is_vector(m)
    }
}

/// The category of a quasi-extension: objects are pairs `(n, g)`,
/// morphisms inside a fiber are labelled by the fiber subgroup of `N`, and
/// `(k: e1 -> e2) ⊗ (n: e -> e')` is the `N`-part of `(e2 (n, 1)) e1^*`.
#[derive(Debug, Clone, Copy)]
pub struct QuasiExtensionCategory<'a> {
    ext: &'a QuasiExtension,
}

impl<'a> QuasiExtensionCategory<'a> {
    pub fn new(ext: &'a QuasiExtension) -> Self {
        QuasiExtensionCategory { ext }
    }

    pub fn extension(&self) -> &QuasiExtension {
        self.ext
    }

    /// The associator: the vector `(e1 e2) e3 -> e1 (e2 e3)`.
    pub fn associator(&self, e1: Elem, e2: Elem, e3: Elem) -> Morphism {
        let e = self.ext;
        Morphism {
            src: e.mul(e.mul(e1, e2), e3),
            dst: e.mul(e1, e.mul(e2, e3)),
            value: e.associator_tilde(e1, e2, e3),
        }
    }
}

impl MonoidalHost for QuasiExtensionCategory<'_> {
    fn object_count(&self) -> usize {
        self.ext.order()
    }

    fn tensor_objects(&self, a: Elem, b: Elem) -> Elem {
        self.ext.mul(a, b)
    }

    fn has_hom(&self, a: Elem, b: Elem) -> bool {
        self.ext.project(a) == self.ext.project(b)
    }

    fn labels(&self) -> &[Elem] {
        self.ext.fiber().members()
    }

    fn identity(&self, a: Elem) -> Morphism {
        Morphism { src: a, dst: a, value: 0 }
    }

    fn compose(&self, g: Morphism, f: Morphism) -> Result<Morphism, CategoryError> {
        if f.dst != g.src {
            return Err(CategoryError::NotComposable(f.dst, g.src));
        }
        Ok(Morphism { src: f.src, dst: g.dst, value: self.ext.coeff().mul(g.value, f.value) })
    }

    fn tensor(&self, f: Morphism, g: Morphism) -> Morphism {
        let e = self.ext;
        let moved = e.mul(f.dst, e.embed(g.value).expect("label in fiber"));
        let (value, base) = e.pair(e.mul(moved, e.right_inverse(f.src)));
        debug_assert_eq!(base, 0);
        Morphism { src: e.mul(f.src, g.src), dst: e.mul(f.dst, g.dst), value }
    }

    fn vector(&self, a: Elem, b: Elem) -> Result<Morphism, CategoryError> {
        let value =
            self.ext.vector_between(a, b).map_err(|_| CategoryError::NoSuchMorphism { src: a, dst: b, label: 0 })?;
        Ok(Morphism { src: a, dst: b, value })
    }

    fn is_vector(&self, m: Morphism) -> bool {
        self.vector(m.src, m.dst).map(|v| v == m).unwrap_or(false)
    }
}

/// Composite of cofaces for a sign: `δ0 ∘ δ2 ∘ ...` or `... ∘ δ3 ∘ δ1`.
pub(crate) fn faces_for(sign: Sign, count: usize) -> Vec<usize> {
    match sign {
        Sign::Plus => (0..count).filter(|i| i % 2 == 0).rev().collect(),
        Sign::Minus => (0..count).filter(|i| i % 2 == 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn base_and_fiber_shapes() {
        let b = BundleCategory::base(&catalog::cyclic(1));
        assert_eq!((b.object_count(), b.morphisms().len()), (1, 1));
        let b = BundleCategory::base(&catalog::cyclic(2));
        assert_eq!(b.morphisms().len(), 2);
        assert!(b.morphisms().iter().all(|m| m.src == m.dst && m.value == 0));
        let s3 = catalog::symmetric(3);
        let b = BundleCategory::base(&s3);
        let components: std::collections::BTreeSet<_> = (0..6).map(|a| b.component(a)).collect();
        assert_eq!(components.len(), 6);
        assert_eq!(BundleCategory::fiber(&s3).morphisms().len(), 216);
    }

    #[test]
    fn fiber_tensor_examples() {
        let s3 = catalog::symmetric(3);
        let f = BundleCategory::fiber(&s3);
        let r = catalog::elements_of_order(&s3, 3)[0];
        let r2 = s3.mul(r, r);
        let s = catalog::elements_of_order(&s3, 2)[0];
        let c = s;
        let x = Morphism { src: r, dst: r2, value: s };
        let left = f.tensor(f.identity(c), x);
        assert_eq!(left, Morphism { src: s3.mul(c, r), dst: s3.mul(c, r2), value: s3.conj(c, s) });
        let right = f.tensor(x, f.identity(c));
        assert_eq!(right.value, s3.mul(r2, s3.inv(r)));
        // (s: e -> r) ⊗ (r: r -> s) = r · r · e^-1
        let lhs = f.tensor(Morphism { src: 0, dst: r, value: s }, Morphism { src: r, dst: s, value: r });
        assert_eq!(lhs.value, r2);
    }

    #[test]
    fn quasi_extension_tensor_matches_formula() {
        use crate::cochains::{Cochain, Quasiaction, Quasicomplex};
        use crate::extensions::{build_quasi_extension, Fiber};
        let z2 = catalog::cyclic(2);
        let z4 = catalog::cyclic(4);
        let l = Quasiaction::trivial(2, 4);
        let qc = Quasicomplex::new(&z2, &z4, &l).unwrap();
        let f = Cochain::new(2, 2, vec![0, 0, 0, 1]).unwrap();
        let e = build_quasi_extension(&qc, &f, Fiber::Full).unwrap();
        let cat = QuasiExtensionCategory::new(&e);
        for a in 0..e.order() {
            for a2 in 0..e.order() {
                if !cat.has_hom(a, a2) {
                    continue;
                }
                for b in 0..e.order() {
                    for &n in cat.labels() {
                        let m = cat.tensor(cat.vector(a, a2).unwrap(), Morphism { src: b, dst: b, value: n });
                        let (n1, g) = e.pair(a);
                        let (n2, _) = e.pair(a2);
                        assert_eq!(m.value, z4.mul(z4.mul(n2, l.apply(g, n)), z4.inv(n1)));
                    }
                }
            }
        }
    }
}
