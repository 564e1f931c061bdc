use std::collections::HashMap;

use super::{Elem, FiniteGroup, Subgroup};
use crate::error::GroupError;

/// Default bound on `|N|` for automorphism group computation.
pub const DEFAULT_AUT_BOUND: usize = 12;

/// Bound used by isomorphism search.
const ISO_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    images: Vec<Elem>,
}

impl Automorphism {
    pub fn identity(order: usize) -> Self {
        Automorphism { images: (0..order).collect() }
    }

    /// Checks bijectivity and the homomorphism property.
    pub fn new(group: &FiniteGroup, images: Vec<Elem>) -> Result<Self, GroupError> {
        let n = group.order();
        if images.len() != n {
            return Err(GroupError::InvalidAutomorphism(format!(
                "{} images for a group of order {n}",
                images.len()
            )));
        }
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n || seen[y] {
                return Err(GroupError::InvalidAutomorphism("not a bijection".into()));
            }
            seen[y] = true;
        }
        if !group.is_homomorphism(group, &images) {
            return Err(GroupError::InvalidAutomorphism("not multiplicative".into()));
        }
        Ok(Automorphism { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Elem>) -> Self {
        Automorphism { images }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { images: other.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Automorphism { images: inv }
    }

    /// Pointwise agreement on a subgroup.
    pub fn agrees_on(&self, other: &Automorphism, on: &Subgroup) -> bool {
        on.members().iter().all(|&x| self.images[x] == other.images[x])
    }
}

/// `C_n(x) = n x n^-1`.
pub fn conjugation_map(group: &FiniteGroup, n: Elem) -> Automorphism {
    Automorphism { images: group.elements().map(|x| group.conj(n, x)).collect() }
}

/// All automorphisms of a group together with their composition table,
/// the inner subgroup and the outer cosets.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    base_order: usize,
    elements: Vec<Automorphism>,
    index: HashMap<Vec<Elem>, usize>,
    as_group: FiniteGroup,
    inner: Subgroup,
    outer_cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
    conj: Vec<usize>,
}

impl AutomorphismGroup {
    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// Automorphisms sorted by image list; index 0 is the identity.
    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.index.get(a.images()).copied()
    }

    /// Composition table: `a * b` is the index of `a ∘ b`.
    pub fn as_group(&self) -> &FiniteGroup {
        &self.as_group
    }

    /// `Int(N)` as a subgroup of [`Self::as_group`].
    pub fn inner(&self) -> &Subgroup {
        &self.inner
    }

    /// Left cosets `a Int(N)`, ordered by smallest member.
    pub fn outer_cosets(&self) -> &[Vec<usize>] {
        &self.outer_cosets
    }

    /// Coset index (element of `Out(N)`) of an automorphism index.
    pub fn outer_class(&self, a: usize) -> usize {
        self.coset_of[a]
    }

    /// Index of `C_n`.
    pub fn conj_index(&self, n: Elem) -> usize {
        self.conj[n]
    }

    pub fn is_inner(&self, a: usize) -> bool {
        self.inner.contains(a)
    }
}

pub fn automorphism_group(n: &FiniteGroup, bound: usize) -> Result<AutomorphismGroup, GroupError> {
    if n.order() > bound {
        return Err(GroupError::OrderBoundExceeded { order: n.order(), bound });
    }
    let mut elements: Vec<Automorphism> = isomorphisms(n, n)
        .into_iter()
        .map(Automorphism::from_images_unchecked)
        .collect();
    elements.sort();
    Ok(assemble(n, elements))
}

/// Reference search: every permutation fixing the identity, filtered by the
/// homomorphism property. Only for `|N| <= 8`.
pub fn automorphisms_by_permutation_scan(n: &FiniteGroup) -> Result<Vec<Automorphism>, GroupError> {
    if n.order() > 8 {
        return Err(GroupError::OrderBoundExceeded { order: n.order(), bound: 8 });
    }
    let k = n.order();
    let mut out = Vec::new();
    let mut perm: Vec<Elem> = vec![0];
    let mut used = vec![false; k];
    used[0] = true;
    fn rec(n: &FiniteGroup, perm: &mut Vec<Elem>, used: &mut [bool], out: &mut Vec<Automorphism>) {
        if perm.len() == used.len() {
            if n.is_homomorphism(n, perm) {
                out.push(Automorphism { images: perm.clone() });
            }
            return;
        }
        for y in 0..used.len() {
            if !used[y] {
                used[y] = true;
                perm.push(y);
                rec(n, perm, used, out);
                perm.pop();
                used[y] = false;
            }
        }
    }
    rec(n, &mut perm, &mut used, &mut out);
    out.sort();
    Ok(out)
}

fn assemble(n: &FiniteGroup, elements: Vec<Automorphism>) -> AutomorphismGroup {
    let index: HashMap<Vec<Elem>, usize> =
        elements.iter().enumerate().map(|(i, a)| (a.images.clone(), i)).collect();
    let k = elements.len();
    let labels = Some((0..k).map(|i| format!("φ{i}")).collect());
    let as_group = FiniteGroup::from_fn(format!("Aut({})", n.name()), k, labels, |a, b| {
        index[elements[a].compose(&elements[b]).images()]
    })
    .expect("automorphisms form a group under composition");
    let conj: Vec<usize> =
        n.elements().map(|x| index[conjugation_map(n, x).images()]).collect();
    let inner = Subgroup::from_members(k, conj.iter().copied());
    let mut coset_of = vec![usize::MAX; k];
    let mut outer_cosets = Vec::new();
    for a in 0..k {
        if coset_of[a] != usize::MAX {
            continue;
        }
        let mut coset: Vec<usize> = inner.members().iter().map(|&h| as_group.mul(a, h)).collect();
        coset.sort_unstable();
        for &c in &coset {
            coset_of[c] = outer_cosets.len();
        }
        outer_cosets.push(coset);
    }
    AutomorphismGroup { base_order: n.order(), elements, index, as_group, inner, outer_cosets, coset_of, conj }
}

/// Greedy generating set, largest element orders first.
fn generating_set(g: &FiniteGroup) -> Vec<Elem> {
    let mut candidates: Vec<Elem> = g.elements().skip(1).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(g.elem_order(x)), x));
    let mut gens = Vec::new();
    let mut span = super::generated_subgroup(g, []);
    for x in candidates {
        if span.is_whole() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = super::generated_subgroup(g, gens.iter().copied());
        }
    }
    gens
}

/// Extends an assignment of generator images to a homomorphism by walking
/// the Cayley graph; `None` if the assignment is inconsistent.
fn extend_hom(a: &FiniteGroup, b: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; a.order()];
    map[0] = 0;
    let mut work = vec![0];
    while let Some(x) = work.pop() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let v = b.mul(map[x], h);
            if map[y] == usize::MAX {
                map[y] = v;
                work.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

fn search(a: &FiniteGroup, b: &FiniteGroup, first_only: bool) -> Vec<Vec<Elem>> {
    if a.order() != b.order() || a.order_profile() != b.order_profile() {
        return Vec::new();
    }
    let gens = generating_set(a);
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&g| {
            let k = a.elem_order(g);
            b.elements().filter(|&y| b.elem_order(y) == k).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(gens.len());
    fn rec(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[Elem],
        candidates: &[Vec<Elem>],
        chosen: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
        first_only: bool,
    ) {
        if first_only && !out.is_empty() {
            return;
        }
        let depth = chosen.len();
        if depth == gens.len() {
            if let Some(map) = extend_hom(a, b, gens, chosen) {
                let mut seen = vec![false; b.order()];
                if map.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
                    out.push(map);
                }
            }
            return;
        }
        for &y in &candidates[depth] {
            if chosen.contains(&y) {
                continue;
            }
            chosen.push(y);
            rec(a, b, gens, candidates, chosen, out, first_only);
            chosen.pop();
        }
    }
    rec(a, b, &gens, &candidates, &mut chosen, &mut out, first_only);
    out
}

/// Every isomorphism `a -> b`, as image arrays.
pub fn isomorphisms(a: &FiniteGroup, b: &FiniteGroup) -> Vec<Vec<Elem>> {
    search(a, b, false)
}

/// Some isomorphism `a -> b`, found by order-profile filtering and
/// generator-image search. Bounded at order 24.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Result<Option<Vec<Elem>>, GroupError> {
    let order = a.order().max(b.order());
    if order > ISO_BOUND {
        return Err(GroupError::OrderBoundExceeded { order, bound: ISO_BOUND });
    }
    Ok(search(a, b, true).into_iter().next())
}
