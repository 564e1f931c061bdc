use serde::Serialize;

use super::{faces_for, MonoidalHost, Morphism, Opposite};
use crate::cochains::Sign;
use crate::error::CategoryError;
use crate::groups::Elem;

/// A family of morphisms indexed by object tuples of a fixed arity,
/// stored densely in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    arity: usize,
    objects: usize,
    components: Vec<Morphism>,
}

/// Families of arity `p + 1` have degree `p`; cofaces exist for `p <= 2`.
const MAX_ARITY: usize = 3;

impl Family {
    pub fn from_fn(arity: usize, objects: usize, mut f: impl FnMut(&[Elem]) -> Morphism) -> Self {
        let len = objects.pow(arity as u32);
        let mut t = vec![0; arity];
        let components = (0..len)
            .map(|mut i| {
                for k in (0..arity).rev() {
                    t[k] = i % objects;
                    i /= objects;
                }
                f(&t)
            })
            .collect();
        Family { arity, objects, components }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn components(&self) -> &[Morphism] {
        &self.components
    }

    pub fn at(&self, args: &[Elem]) -> Morphism {
        self.components[args.iter().fold(0, |acc, &a| acc * self.objects + a)]
    }

    pub fn map(&self, f: impl Fn(&[Elem], Morphism) -> Morphism) -> Self {
        Family::from_fn(self.arity, self.objects, |t| f(t, self.at(t)))
    }
}

/// Coface `i` of a family over a functor with object map `object_map`,
/// evaluated at `args` (one longer than the family's arity):
/// `I_F(A1) ⊗ φ(A2, ..)` for `i = 0`, `φ(.., A_i ⊗ A_i+1, ..)` inside and
/// `φ(.., A_p+1) ⊗ I_F(A_p+2)` for the last index.
pub fn coface_at<S, T>(
    source: &S,
    target: &T,
    object_map: &[Elem],
    phi: &dyn Fn(&[Elem]) -> Morphism,
    arity: usize,
    i: usize,
    args: &[Elem],
) -> Morphism
where
    S: MonoidalHost + ?Sized,
    T: MonoidalHost + ?Sized,
{
    debug_assert_eq!(args.len(), arity + 1);
    if i == 0 {
        target.tensor(target.identity(object_map[args[0]]), phi(&args[1..]))
    } else if i == arity + 1 {
        target.tensor(phi(&args[..arity]), target.identity(object_map[args[arity]]))
    } else {
        let mut merged = Vec::with_capacity(arity);
        merged.extend_from_slice(&args[..i - 1]);
        merged.push(source.tensor_objects(args[i - 1], args[i]));
        merged.extend_from_slice(&args[i + 1..]);
        phi(&merged)
    }
}

/// `∂⁺ = δ0 ∘ δ2 ∘ ...` or `∂⁻ = ... ∘ δ3 ∘ δ1` at one tuple. For
/// arity 2 an optional quasi-associator `α` gives `∂⁺ ∘ α` and `α ∘ ∂⁻`.
#[allow(clippy::too_many_arguments)]
pub fn boundary_at<S, T>(
    source: &S,
    target: &T,
    object_map: &[Elem],
    phi: &dyn Fn(&[Elem]) -> Morphism,
    arity: usize,
    sign: Sign,
    args: &[Elem],
    associator: Option<&dyn Fn(&[Elem]) -> Morphism>,
) -> Result<Morphism, CategoryError>
where
    S: MonoidalHost + ?Sized,
    T: MonoidalHost + ?Sized,
{
    if arity == 0 || arity > MAX_ARITY {
        return Err(CategoryError::DegreeOutOfRange(arity.saturating_sub(1)));
    }
    let faces = faces_for(sign, arity + 2);
    let mut acc = coface_at(source, target, object_map, phi, arity, faces[0], args);
    for &i in &faces[1..] {
        acc = target.compose(coface_at(source, target, object_map, phi, arity, i, args), acc)?;
    }
    if let (Some(alpha), 2) = (associator, arity) {
        let a = alpha(args);
        acc = match sign {
            Sign::Plus => target.compose(acc, a)?,
            Sign::Minus => target.compose(a, acc)?,
        };
    }
    Ok(acc)
}

/// `∂±` of a whole family over the identity functor of a host.
pub fn coboundary_family<H: MonoidalHost + ?Sized>(
    host: &H,
    family: &Family,
    sign: Sign,
) -> Result<Family, CategoryError> {
    let ids: Vec<Elem> = (0..host.object_count()).collect();
    let phi = |t: &[Elem]| family.at(t);
    let mut err = None;
    let out = Family::from_fn(family.arity() + 1, host.object_count(), |t| {
        match boundary_at(host, host, &ids, &phi, family.arity(), sign, t, None) {
            Ok(m) => m,
            Err(e) => {
                err.get_or_insert(e);
                Morphism { src: 0, dst: 0, value: 0 }
            }
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// First tuple where `∂⁺φ != ∂⁻φ`, over all tuples of source objects.
pub fn cocycle_defect<S, T>(
    source: &S,
    target: &T,
    object_map: &[Elem],
    phi: &dyn Fn(&[Elem]) -> Morphism,
    arity: usize,
    associator: Option<&dyn Fn(&[Elem]) -> Morphism>,
) -> Result<Option<Vec<Elem>>, CategoryError>
where
    S: MonoidalHost + ?Sized,
    T: MonoidalHost + ?Sized,
{
    let k = source.object_count();
    let len = k.pow(arity as u32 + 1);
    let mut t = vec![0; arity + 1];
    for mut i in 0..len {
        for slot in t.iter_mut().rev() {
            *slot = i % k;
            i /= k;
        }
        let plus = boundary_at(source, target, object_map, phi, arity, Sign::Plus, &t, associator)?;
        let minus = boundary_at(source, target, object_map, phi, arity, Sign::Minus, &t, associator)?;
        if plus != minus {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// Which morphisms naturality squares range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NaturalityScope {
    /// Vectors only: the subcategory on which vector diagrams commute.
    #[default]
    Vectors,
    All,
}

/// First `(f, g)` where `φ(A', B') ∘ (f ⊗ g) != (f ⊗' g) ∘ φ(A, B)` for
/// `f: A -> A'`, `g: B -> B'`; `⊗'` is `⊗` or, with `flip`, `g ⊗ f`.
/// The witness lists `A, A', B, B', f, g`.
pub fn naturality_defect<H: MonoidalHost + ?Sized>(
    host: &H,
    family: &Family,
    flip: bool,
    scope: NaturalityScope,
) -> Option<Vec<Elem>> {
    let morphisms: Vec<Morphism> = host
        .morphisms()
        .into_iter()
        .filter(|&m| scope == NaturalityScope::All || host.is_vector(m))
        .collect();
    for &f in &morphisms {
        for &g in &morphisms {
            let top = family.at(&[f.dst, g.dst]);
            let bottom = family.at(&[f.src, g.src]);
            let lhs = host.compose(top, host.tensor(f, g));
            let other = if flip { host.tensor(g, f) } else { host.tensor(f, g) };
            let rhs = host.compose(other, bottom);
            if lhs.is_err() || lhs != rhs {
                return Some(vec![f.src, f.dst, g.src, g.dst, f.value, g.value]);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub natural: bool,
    pub naturality_witness: Option<Vec<Elem>>,
    /// `∂⁺φ = ∂⁻φ` on every triple.
    pub cocycle: bool,
    pub cocycle_witness: Option<Vec<Elem>>,
    pub passed: bool,
}

impl StructureReport {
    fn new(naturality_witness: Option<Vec<Elem>>, cocycle_witness: Option<Vec<Elem>>) -> Self {
        let natural = naturality_witness.is_none();
        let cocycle = cocycle_witness.is_none();
        StructureReport { natural, naturality_witness, cocycle, cocycle_witness, passed: natural && cocycle }
    }

    /// Fails with the naturality witness if there is one.
    pub fn require_natural(&self) -> Result<(), CategoryError> {
        match &self.naturality_witness {
            Some(w) => Err(CategoryError::NotNatural(w.clone())),
            None => Ok(()),
        }
    }
}

/// A family `Φ(A, B): A ⊗ B -> A ⊗ B` on the identity functor of a strict
/// host: natural, and a 2-cocycle.
pub fn monoidal_structure_check<H: MonoidalHost + ?Sized>(
    host: &H,
    phi: &Family,
    scope: NaturalityScope,
) -> Result<StructureReport, CategoryError> {
    check_arity(phi)?;
    let ids: Vec<Elem> = (0..host.object_count()).collect();
    let f = |t: &[Elem]| phi.at(t);
    let cocycle = cocycle_defect(host, host, &ids, &f, 2, None)?;
    Ok(StructureReport::new(naturality_defect(host, phi, false, scope), cocycle))
}

/// A family `σ(A, B): A ⊗ B -> B ⊗ A`: natural as a transformation from
/// `⊗` to the opposite product, and a 2-cocycle for the identity functor
/// into the opposite category.
pub fn commutativity_constraint_check<H: MonoidalHost + ?Sized>(
    host: &H,
    sigma: &Family,
    scope: NaturalityScope,
) -> Result<StructureReport, CategoryError> {
    check_arity(sigma)?;
    let ids: Vec<Elem> = (0..host.object_count()).collect();
    let f = |t: &[Elem]| sigma.at(t);
    let cocycle = cocycle_defect(host, &Opposite(host), &ids, &f, 2, None)?;
    Ok(StructureReport::new(naturality_defect(host, sigma, true, scope), cocycle))
}

fn check_arity(family: &Family) -> Result<(), CategoryError> {
    if family.arity() != 2 {
        return Err(CategoryError::DegreeOutOfRange(family.arity().saturating_sub(1)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categorify::{BundleCategory, TensorKind};
    use crate::groups::catalog;

    fn identities(host: &BundleCategory, arity: usize) -> Family {
        Family::from_fn(arity, host.object_count(), |t| {
            host.identity(t.iter().fold(0, |acc, &a| host.tensor_objects(acc, a)))
        })
    }

    #[test]
    fn identity_families_are_cocycles() {
        let g = catalog::symmetric(3);
        let host = BundleCategory::fiber(&g);
        for arity in 1..=3 {
            let phi = identities(&host, arity);
            let plus = coboundary_family(&host, &phi, Sign::Plus).unwrap();
            let minus = coboundary_family(&host, &phi, Sign::Minus).unwrap();
            assert_eq!(plus, minus);
            assert!(plus.components().iter().all(|m| m.value == 0));
        }
        let phi = identities(&host, 2);
        assert!(monoidal_structure_check(&host, &phi, NaturalityScope::All).unwrap().passed);
        let bad = Family::from_fn(4, 6, |_| host.identity(0));
        assert_eq!(coboundary_family(&host, &bad, Sign::Plus), Err(CategoryError::DegreeOutOfRange(3)));
    }

    #[test]
    fn first_coface_on_untwisted_z2() {
        let z2 = catalog::cyclic(2);
        let host = BundleCategory::fiber(&z2).with_tensor(TensorKind::Untwisted);
        let phi = Family::from_fn(1, 2, |t| Morphism { src: t[0], dst: t[0], value: t[0] });
        let ids = [0, 1];
        let f = |t: &[Elem]| phi.at(t);
        for a in 0..2 {
            for b in 0..2 {
                let m = coface_at(&host, &host, &ids, &f, 1, 0, &[a, b]);
                assert_eq!(m, host.tensor(host.identity(a), phi.at(&[b])));
            }
        }
    }

    #[test]
    fn commutativity_constraints() {
        let z3 = catalog::cyclic(3);
        for kind in [TensorKind::Twisted, TensorKind::Untwisted] {
            let host = BundleCategory::fiber(&z3).with_tensor(kind);
            let sigma = Family::from_fn(2, 3, |t| host.vector(z3.mul(t[0], t[1]), z3.mul(t[1], t[0])).unwrap());
            assert!(sigma.components().iter().all(|m| m.value == 0));
            assert!(commutativity_constraint_check(&host, &sigma, NaturalityScope::Vectors).unwrap().passed);
        }

        let s3 = catalog::symmetric(3);
        let host = BundleCategory::fiber(&s3);
        let sigma = Family::from_fn(2, 6, |t| host.vector(s3.mul(t[0], t[1]), s3.mul(t[1], t[0])).unwrap());
        let r = commutativity_constraint_check(&host, &sigma, NaturalityScope::Vectors).unwrap();
        assert!(r.passed);
        let r3 = catalog::elements_of_order(&s3, 3)[0];
        let perturbed = sigma.map(|t, m| if t == [1, 2] { Morphism { value: s3.mul(r3, m.value), ..m } } else { m });
        let r = commutativity_constraint_check(&host, &perturbed, NaturalityScope::Vectors).unwrap();
        assert!(!r.natural);
        let w = r.naturality_witness.clone().unwrap();
        assert!(w.len() == 6);
        assert!(matches!(r.require_natural(), Err(CategoryError::NotNatural(_))));
    }
}
