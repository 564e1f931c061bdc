use std::collections::HashMap;

use serde::Serialize;

use super::QuasiExtension;
use crate::census::{cohomology_classes, CocycleSearch};
use crate::cochains::{Cochain, Convention, DeltaVariant, NormalizedCochains, Quasiaction, Quasicomplex};
use crate::error::{CochainError, ExtensionError};
use crate::groups::{quotient, Elem, FiniteGroup, Subgroup};
use crate::integrability::{corrected_quasiaction, holonomy_group, mc_defect};

/// `N ⋊_L G` on indices `n * |G| + g`, with
/// `(n1, g1)(n2, g2) = (n1 L_g1(n2), g1 g2)`.
pub fn semidirect_product(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction) -> Result<FiniteGroup, ExtensionError> {
    if let Some((a, b)) = l.action_defect(g) {
        return Err(ExtensionError::NotAnAction { a, b });
    }
    let m = g.order();
    let name = format!("{}x|{}", n.name(), g.name());
    Ok(FiniteGroup::from_fn(name, n.order() * m, None, |x, y| {
        let (n1, g1) = (x / m, x % m);
        let (n2, g2) = (y / m, y % m);
        n.mul(n1, l.apply(g1, n2)) * m + g.mul(g1, g2)
    })?)
}

/// `L` restricted to an invariant subgroup, as a quasiaction on that
/// subgroup's own indices.
fn restrict(coeff: &FiniteGroup, sub: &Subgroup, l: &Quasiaction) -> (FiniteGroup, Quasiaction) {
    let group = sub.to_group(coeff, format!("{}|sub", coeff.name()));
    let images = l
        .values()
        .iter()
        .map(|v| sub.members().iter().map(|&x| sub.position(v.apply(x)).expect("invariant")).collect())
        .collect();
    let q = Quasiaction::from_images(&group, images).expect("restriction of automorphisms");
    (group, q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitIsoReport {
    /// Members of the fiber `F = 𝓘(γ, L)` in `N`.
    pub fiber: Vec<Elem>,
    /// `s'(g) = (γ(g)^-1, g)` as elements of `E`.
    pub section: Vec<Elem>,
    pub section_is_morphism: bool,
    /// Conjugation by `s'(g)` on `F` is `L'_g = C_γ(g)^-1 ∘ L_g`.
    pub section_conjugation_matches: bool,
    pub corrected_is_action: bool,
    /// `φ(k, g) = (k γ(g)^-1, g)` from `F ⋊_L' G` to `E`.
    pub phi: Vec<Elem>,
    pub phi_bijective: bool,
    pub phi_multiplicative: bool,
    pub pairs_checked: usize,
    pub passed: bool,
}

/// For `f = δ_L γ`, exhibits `E_{f,L}` as the semidirect product
/// `F ⋊_L' G` through `φ`.
pub fn split_iso_phi(
    qc: &Quasicomplex<'_, FiniteGroup>,
    f: &Cochain,
    gamma: &Cochain,
) -> Result<SplitIsoReport, ExtensionError> {
    if gamma.degree() != 1 {
        return Err(CochainError::DegreeMismatch { expected: 1, found: gamma.degree() }.into());
    }
    gamma.validate(qc.coeff())?;
    f.validate(qc.coeff())?;
    let (g, n, l) = (qc.base(), qc.coeff(), qc.action());
    let dg = qc.delta(gamma, DeltaVariant::Delta)?;
    if let Some(t) = f.tuples().find(|t| f.at(t) != dg.at(t)) {
        return Err(ExtensionError::WitnessInvalid(t));
    }
    let fiber = holonomy_group(n, gamma, l).subgroup;
    if let Some((a, b, x)) = mc_defect(g, n, f, l, &fiber) {
        return Err(ExtensionError::NotIntegrable { a, b, n: x });
    }
    let e = QuasiExtension::on_fiber(qc, f, fiber.clone());
    let m = g.order();
    let k = e.order();

    let section: Vec<Elem> =
        g.elements().map(|x| e.index((n.inv(gamma.at(&[x])), x)).expect("γ lies in its holonomy")).collect();
    let section_is_morphism =
        g.elements().all(|a| g.elements().all(|b| e.mul(section[a], section[b]) == section[g.mul(a, b)]));

    let corrected = corrected_quasiaction(n, gamma, l);
    let (fgroup, lf) = restrict(n, &fiber, &corrected);
    let corrected_is_action = lf.is_action(g);
    let section_conjugation_matches = corrected_is_action && {
        let grp = e.to_group("E")?;
        g.elements().all(|x| {
            fiber.members().iter().all(|&y| {
                let c = grp.conj(section[x], e.embed(y).expect("in fiber"));
                e.pair(c) == (corrected.apply(x, y), 0)
            })
        })
    };

    let (phi, phi_bijective, phi_multiplicative) = if corrected_is_action {
        let sd = semidirect_product(g, &fgroup, &lf)?;
        let phi: Vec<Elem> = (0..k)
            .map(|z| {
                let (kpos, x) = (z / m, z % m);
                let kv = fiber.members()[kpos];
                e.index((n.mul(kv, n.inv(gamma.at(&[x]))), x)).expect("closed fiber")
            })
            .collect();
        let mut seen = vec![false; k];
        for &v in &phi {
            seen[v] = true;
        }
        let bijective = seen.iter().all(|&s| s);
        let multiplicative = (0..k).all(|a| (0..k).all(|b| phi[sd.mul(a, b)] == e.mul(phi[a], phi[b])));
        (phi, bijective, multiplicative)
    } else {
        (Vec::new(), false, false)
    };
    let passed = section_is_morphism && section_conjugation_matches && phi_bijective && phi_multiplicative;
    Ok(SplitIsoReport {
        fiber: fiber.members().to_vec(),
        section,
        section_is_morphism,
        section_conjugation_matches,
        corrected_is_action,
        phi,
        phi_bijective,
        phi_multiplicative,
        pairs_checked: k * k,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    pub base_order: usize,
    pub kernel_order: usize,
    /// Splittings as maps from coset indices of `E/N` to `E`, in
    /// lexicographic order.
    pub splittings: Vec<Vec<Elem>>,
    /// `N`-conjugacy classes as lists of splitting positions.
    pub conjugacy_classes: Vec<Vec<usize>>,
    pub cocycles: usize,
    pub h1_classes: usize,
    /// `s ↦ γ_s = s0 · s^-1` is a bijection onto the 1-cocycles.
    pub correspondence_bijective: bool,
    /// Conjugacy classes map onto cohomology classes one to one.
    pub classes_correspond: bool,
    pub counts_agree: bool,
}

fn morphism_sections(e: &FiniteGroup, q: &crate::groups::Quotient) -> Vec<Vec<Elem>> {
    let qg = &q.group;
    let m = qg.order();
    let mut out = Vec::new();
    let mut s = vec![usize::MAX; m];
    s[0] = 0;
    fn go(
        c: usize,
        s: &mut Vec<Elem>,
        e: &FiniteGroup,
        qg: &FiniteGroup,
        cosets: &[Vec<Elem>],
        out: &mut Vec<Vec<Elem>>,
    ) {
        let m = qg.order();
        if c == m {
            out.push(s.clone());
            return;
        }
        for &x in &cosets[c] {
            s[c] = x;
            let ok = (0..=c).all(|a| {
                (0..=c).all(|b| {
                    let ab = qg.mul(a, b);
                    ab > c || e.mul(s[a], s[b]) == s[ab]
                })
            });
            if ok {
                go(c + 1, s, e, qg, cosets, out);
            }
        }
        s[c] = usize::MAX;
    }
    if m == 1 {
        return vec![s];
    }
    go(1, &mut s, e, qg, &q.cosets, &mut out);
    out
}

/// All splittings of `E -> E/N`, their `N`-conjugacy classes, and
/// `H^1(E/N, N)` for the conjugation action through the first splitting.
pub fn classify_splittings(e: &FiniteGroup, nsub: &Subgroup) -> Result<SplittingReport, ExtensionError> {
    let q = quotient(e, nsub).ok_or(ExtensionError::NotNormal)?;
    let g = &q.group;
    let splittings = morphism_sections(e, &q);
    let Some(s0) = splittings.first().cloned() else {
        return Err(ExtensionError::NoSplittingFound);
    };
    let pos: HashMap<&[Elem], usize> = splittings.iter().enumerate().map(|(i, s)| (&s[..], i)).collect();

    let mut parent: Vec<usize> = (0..splittings.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, s) in splittings.iter().enumerate() {
        for &x in nsub.members() {
            let t: Vec<Elem> = s.iter().map(|&y| e.conj(x, y)).collect();
            let j = pos[&t[..]];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..splittings.len() {
        let r = find(&mut parent, i);
        by_root.entry(r).or_default().push(i);
    }
    let conjugacy_classes: Vec<Vec<usize>> = by_root.into_values().collect();

    let ngroup = nsub.to_group(e, "N");
    let images = g
        .elements()
        .map(|a| nsub.members().iter().map(|&k| nsub.position(e.conj(s0[a], k)).expect("normal")).collect())
        .collect();
    let l = Quasiaction::from_images(&ngroup, images)?;
    let qc = Quasicomplex::new(g, &ngroup, &l)?;
    let cocycles = CocycleSearch::new(qc, 1).run(1);
    let classes = cohomology_classes(&qc, &cocycles, Convention::default());
    let cocycle_pos: HashMap<&[Elem], usize> = cocycles.iter().enumerate().map(|(i, c)| (c.values(), i)).collect();
    let mut class_of = vec![0; cocycles.len()];
    for (k, cl) in classes.iter().enumerate() {
        for &i in cl {
            class_of[i] = k;
        }
    }

    let gammas: Vec<Option<usize>> = splittings
        .iter()
        .map(|s| {
            let values: Vec<Elem> = g
                .elements()
                .map(|a| nsub.position(e.mul(s0[a], e.inv(s[a]))).expect("same coset"))
                .collect();
            cocycle_pos.get(&values[..]).copied()
        })
        .collect();
    let mut hit = vec![false; cocycles.len()];
    let mut injective = true;
    for gm in gammas.iter().flatten() {
        injective &= !std::mem::replace(&mut hit[*gm], true);
    }
    let correspondence_bijective =
        gammas.iter().all(Option::is_some) && injective && hit.iter().all(|&h| h);
    let classes_correspond = correspondence_bijective && {
        let images: Vec<usize> = conjugacy_classes
            .iter()
            .map(|cl| {
                let k = class_of[gammas[cl[0]].expect("checked")];
                if cl.iter().all(|&i| class_of[gammas[i].expect("checked")] == k) {
                    k
                } else {
                    usize::MAX
                }
            })
            .collect();
        let mut sorted = images.clone();
        sorted.sort_unstable();
        sorted.dedup();
        !images.contains(&usize::MAX) && sorted.len() == images.len() && sorted.len() == classes.len()
    };
    Ok(SplittingReport {
        base_order: g.order(),
        kernel_order: nsub.order(),
        counts_agree: conjugacy_classes.len() == classes.len(),
        splittings,
        conjugacy_classes,
        cocycles: cocycles.len(),
        h1_classes: classes.len(),
        correspondence_bijective,
        classes_correspond,
    })
}

/// A normalized `c: G -> fiber` with `(n, g) ↦ (n c(g), g)` multiplicative
/// from `a` to `b`, if one exists. Both must share base and fiber.
pub fn are_equivalent(a: &QuasiExtension, b: &QuasiExtension) -> Option<Cochain> {
    if a.base().order() != b.base().order()
        || a.coeff().order() != b.coeff().order()
        || a.fiber().members() != b.fiber().members()
    {
        return None;
    }
    let members = a.fiber().members();
    let m = a.base().order();
    let k = a.order();
    NormalizedCochains::new(m, members.len(), 1)
        .map(|digits| digits.map(|d| members[d]))
        .find(|c| {
            let map: Vec<Elem> = (0..k)
                .map(|x| {
                    let (n, g) = a.pair(x);
                    b.index((a.coeff().mul(n, c.at(&[g])), g)).expect("shared fiber")
                })
                .collect();
            (0..k).all(|x| (0..k).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
        })
}
