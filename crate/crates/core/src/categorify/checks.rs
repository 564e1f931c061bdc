use rayon::prelude::*;
use serde::Serialize;

use super::{BundleCategory, MonoidalHost, Morphism, TensorKind};
use crate::groups::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VectorReport {
    pub checked: usize,
    /// `∂(a, a') ⊗ ∂(b, b') = ∂(ab, a'b')`.
    pub tensor_of_vectors: bool,
    /// `I_c ⊗ ∂(a, b) = ∂(ca, cb)`.
    pub left_intertwining: bool,
    /// `∂(a, b) ⊗ I_c = ∂(ac, bc)`.
    pub right_intertwining: bool,
    /// `f ⊗ I_c` is a vector for every morphism `f`.
    pub right_identity_truncates: bool,
    /// `∂(b, c) ∘ ∂(a, b) = ∂(a, c)`.
    pub triangles: bool,
    pub first_failure: Option<Vec<Morphism>>,
    pub passed: bool,
}

/// Exhaustive vector checks on a host whose tensor is vector preserving.
pub fn vectors_and_preservation<H: MonoidalHost + ?Sized>(host: &H) -> VectorReport {
    let k = host.object_count();
    let vectors: Vec<Morphism> =
        (0..k).flat_map(|a| (0..k).filter_map(move |b| host.vector(a, b).ok())).collect();
    let mut checked = 0;
    let mut first: Option<Vec<Morphism>> = None;
    let mut record = |ok: bool, witness: &dyn Fn() -> Vec<Morphism>| {
        if !ok && first.is_none() {
            first = Some(witness());
        }
        ok
    };

    let mut tensor_of_vectors = true;
    for &x in &vectors {
        for &y in &vectors {
            checked += 1;
            let t = host.tensor(x, y);
            let want = host.vector(t.src, t.dst).ok();
            tensor_of_vectors &= record(want == Some(t), &|| vec![x, y, t]);
        }
    }
    let mut left = true;
    let mut right = true;
    for &x in &vectors {
        for c in 0..k {
            checked += 2;
            let l = host.tensor(host.identity(c), x);
            left &= record(
                host.vector(host.tensor_objects(c, x.src), host.tensor_objects(c, x.dst)).ok() == Some(l),
                &|| vec![x, l],
            );
            let r = host.tensor(x, host.identity(c));
            right &= record(
                host.vector(host.tensor_objects(x.src, c), host.tensor_objects(x.dst, c)).ok() == Some(r),
                &|| vec![x, r],
            );
        }
    }
    let mut truncates = true;
    for f in host.morphisms() {
        for c in 0..k {
            checked += 1;
            let r = host.tensor(f, host.identity(c));
            truncates &= record(host.is_vector(r), &|| vec![f, r]);
        }
    }
    let mut triangles = true;
    for &x in &vectors {
        for &y in vectors.iter().filter(|y| y.src == x.dst) {
            checked += 1;
            let c = host.compose(y, x).ok();
            triangles &= record(c.is_some() && c == host.vector(x.src, y.dst).ok(), &|| vec![x, y]);
        }
    }
    let passed = tensor_of_vectors && left && right && truncates && triangles;
    VectorReport {
        checked,
        tensor_of_vectors,
        left_intertwining: left,
        right_intertwining: right,
        right_identity_truncates: truncates,
        triangles,
        first_failure: first,
        passed,
    }
}

/// First violation of `(g ∘ f) ⊗ (g' ∘ f') = (g ⊗ g') ∘ (f ⊗ f')` or of
/// `I_a ⊗ I_b = I_ab`, over all composable pairs.
pub fn interchange_defect<H: MonoidalHost + Sync + ?Sized>(host: &H) -> Option<[Morphism; 4]> {
    let k = host.object_count();
    for a in 0..k {
        for b in 0..k {
            if host.tensor(host.identity(a), host.identity(b)) != host.identity(host.tensor_objects(a, b)) {
                let (ia, ib) = (host.identity(a), host.identity(b));
                return Some([ia, ia, ib, ib]);
            }
        }
    }
    let morphisms = host.morphisms();
    let pairs: Vec<(Morphism, Morphism)> = morphisms
        .iter()
        .flat_map(|&f| morphisms.iter().filter(move |g| g.src == f.dst).map(move |&g| (f, g)))
        .collect();
    pairs
        .par_iter()
        .find_map_first(|&(f, g)| {
            let gf = host.compose(g, f).expect("composable");
            pairs.iter().find_map(|&(f2, g2)| {
                let lhs = host.tensor(gf, host.compose(g2, f2).expect("composable"));
                let rhs = host.compose(host.tensor(g, g2), host.tensor(f, f2));
                (rhs.ok() != Some(lhs)).then_some([f, g, f2, g2])
            })
        })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UntwistReport {
    pub morphisms: usize,
    pub pairs: usize,
    pub preserves_identities: bool,
    pub functorial: bool,
    pub bijective: bool,
    /// `D(x ⊗ y) = D(x) ~⊗ D(y)` for all pairs of morphisms.
    pub monoidal: bool,
    pub untwisted_functorial: bool,
    pub first_failure: Option<Vec<Morphism>>,
    pub passed: bool,
}

/// `D: (𝓕_G, ⊗) -> (𝓕_G, ~⊗)` is a strict monoidal isomorphism.
pub fn untwist_check(g: &FiniteGroup) -> UntwistReport {
    let twisted = BundleCategory::fiber(g);
    let untwisted = BundleCategory::fiber(g).with_tensor(TensorKind::Untwisted);
    let k = g.order();
    let morphisms = twisted.morphisms();
    let mut first = None;
    let mut note = |ok: bool, w: Vec<Morphism>| {
        if !ok && first.is_none() {
            first = Some(w);
        }
        ok
    };
    let d = |m: Morphism| twisted.untwist(m);

    let preserves_identities = (0..k).all(|a| d(twisted.identity(a)) == untwisted.identity(a));
    let mut functorial = true;
    for &f in &morphisms {
        for gm in (0..k).flat_map(|c| twisted.hom(f.dst, c)) {
            let lhs = d(twisted.compose(gm, f).expect("composable"));
            let rhs = untwisted.compose(d(gm), d(f)).expect("composable");
            functorial &= note(lhs == rhs, vec![f, gm]);
        }
    }
    let mut bijective = true;
    for a in 0..k {
        for b in 0..k {
            let mut values: Vec<_> = twisted.hom(a, b).into_iter().map(|m| d(m).value).collect();
            values.sort_unstable();
            values.dedup();
            bijective &= values.len() == k;
        }
    }
    let monoidal = morphisms
        .par_iter()
        .find_map_first(|&x| {
            morphisms.iter().find_map(|&y| {
                let lhs = d(twisted.tensor(x, y));
                let rhs = untwisted.tensor(d(x), d(y));
                (lhs != rhs).then(|| vec![x, y])
            })
        });
    let monoidal_ok = note(monoidal.is_none(), monoidal.clone().unwrap_or_default());
    let untwisted_defect = interchange_defect(&untwisted);
    let untwisted_functorial = note(untwisted_defect.is_none(), untwisted_defect.map(|w| w.to_vec()).unwrap_or_default());
    let passed = preserves_identities && functorial && bijective && monoidal_ok && untwisted_functorial;
    UntwistReport {
        morphisms: morphisms.len(),
        pairs: morphisms.len() * morphisms.len(),
        preserves_identities,
        functorial,
        bijective,
        monoidal: monoidal_ok,
        untwisted_functorial,
        first_failure: first,
        passed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    /// The bundle category of `G -> G -> 1` equals 𝓕_G built from its
    /// defining formulas.
    pub trivial_base_is_fiber: bool,
    /// The bundle category of `1 -> G -> G` equals 𝓑_G.
    pub trivial_fiber_is_base: bool,
}

/// Compares both restrictions of the bundle construction with direct
/// constructions of 𝓕_G and 𝓑_G.
pub fn restriction_check(g: &FiniteGroup) -> RestrictionReport {
    let k = g.order();
    let fiber = BundleCategory::fiber(g);
    let base = BundleCategory::base(g);
    let mut fiber_ok = true;
    let mut base_ok = true;
    for a in 0..k {
        for b in 0..k {
            fiber_ok &= fiber.tensor_objects(a, b) == g.mul(a, b);
            base_ok &= base.tensor_objects(a, b) == g.mul(a, b);
            let fh: Vec<_> = fiber.hom(a, b).iter().map(|m| m.value).collect();
            fiber_ok &= fh == g.elements().collect::<Vec<_>>();
            let bh: Vec<_> = base.hom(a, b).iter().map(|m| m.value).collect();
            base_ok &= bh == if a == b { vec![0] } else { Vec::new() };
        }
    }
    for a in 0..k {
        for a2 in 0..k {
            for x in 0..k {
                let f = Morphism { src: a, dst: a2, value: x };
                for b in 0..k {
                    for b2 in 0..k {
                        for y in 0..k {
                            let h = Morphism { src: b, dst: b2, value: y };
                            let want = g.mul(g.mul(a2, y), g.inv(a));
                            fiber_ok &= fiber.tensor(f, h).value == want;
                        }
                    }
                    for z in 0..k {
                        let c = Morphism { src: a2, dst: b, value: z };
                        let comp = fiber.compose(c, f).unwrap();
                        fiber_ok &= comp.value == g.mul(z, x) && comp.src == a && comp.dst == b;
                    }
                }
            }
        }
        let i = base.identity(a);
        base_ok &= base.tensor(i, base.identity(a)) == base.identity(g.mul(a, a));
    }
    RestrictionReport { trivial_base_is_fiber: fiber_ok, trivial_fiber_is_base: base_ok }
}
