use std::collections::BTreeSet;

use super::{Elem, FiniteGroup};

/// A subgroup, stored as a sorted member list plus a membership mask over
/// the parent's elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Wraps a member set without checking closure. Use
    /// [`generated_subgroup`] when the set may not be closed.
    pub fn from_members(parent_order: usize, members: impl IntoIterator<Item = Elem>) -> Self {
        let mut mask = vec![false; parent_order];
        mask[0] = true;
        for m in members {
            mask[m] = true;
        }
        let members = (0..parent_order).filter(|&x| mask[x]).collect();
        Subgroup { members, mask }
    }

    pub fn trivial(parent_order: usize) -> Self {
        Self::from_members(parent_order, [0])
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self::from_members(parent.order(), parent.elements())
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.mask[x]
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.mask.len()
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    pub fn is_closed_in(&self, parent: &FiniteGroup) -> bool {
        self.contains(0)
            && self.members.iter().all(|&a| {
                self.contains(parent.inv(a))
                    && self.members.iter().all(|&b| self.contains(parent.mul(a, b)))
            })
    }

    pub fn is_normal_in(&self, parent: &FiniteGroup) -> bool {
        parent
            .elements()
            .all(|g| self.members.iter().all(|&n| self.contains(parent.conj(g, n))))
    }

    /// Materializes the subgroup as a group of its own. Element `i` of the
    /// result is `members()[i]`, so the identity stays at index 0.
    pub fn to_group(&self, parent: &FiniteGroup, name: impl Into<String>) -> FiniteGroup {
        let labels = Some(self.members.iter().map(|&m| parent.label(m)).collect());
        FiniteGroup::from_fn(name, self.order(), labels, |i, j| {
            let p = parent.mul(self.members[i], self.members[j]);
            self.position(p).expect("subgroup is closed")
        })
        .expect("closed subset of a group is a group")
    }
}

/// Smallest subgroup containing `seeds`, by worklist closure under
/// products with the seeds and their inverses.
pub fn generated_subgroup(g: &FiniteGroup, seeds: impl IntoIterator<Item = Elem>) -> Subgroup {
    let mut gens: Vec<Elem> = Vec::new();
    for s in seeds {
        if s != 0 {
            gens.push(s);
            gens.push(g.inv(s));
        }
    }
    gens.sort_unstable();
    gens.dedup();
    let mut mask = vec![false; g.order()];
    mask[0] = true;
    let mut work = vec![0];
    while let Some(x) = work.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                work.push(y);
            }
        }
    }
    Subgroup::from_members(g.order(), (0..g.order()).filter(|&x| mask[x]))
}

/// `{ z | z x = x z for all x }`.
pub fn center(g: &FiniteGroup) -> Subgroup {
    Subgroup::from_members(
        g.order(),
        g.elements().filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z))),
    )
}

/// All subgroups, ordered by (order, members).
pub fn subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<(usize, Subgroup)> = BTreeSet::new();
    let cyclic: Vec<Subgroup> = g.elements().map(|x| generated_subgroup(g, [x])).collect();
    let mut frontier: Vec<Subgroup> = Vec::new();
    for c in cyclic.iter() {
        if found.insert((c.order(), c.clone())) {
            frontier.push(c.clone());
        }
    }
    // joins with cyclic subgroups until nothing new appears
    while let Some(h) = frontier.pop() {
        for x in g.elements() {
            if h.contains(x) {
                continue;
            }
            let j = generated_subgroup(g, h.members().iter().copied().chain([x]));
            if found.insert((j.order(), j.clone())) {
                frontier.push(j);
            }
        }
    }
    found.into_iter().map(|(_, s)| s).collect()
}

/// A quotient `E / N` with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[e]` is the coset index of `e`.
    pub projection: Vec<Elem>,
    /// Cosets ordered by their smallest element; coset 0 is `N`.
    pub cosets: Vec<Vec<Elem>>,
}

pub fn quotient(e: &FiniteGroup, n: &Subgroup) -> Option<Quotient> {
    if !n.is_normal_in(e) {
        return None;
    }
    let mut projection = vec![usize::MAX; e.order()];
    let mut cosets: Vec<Vec<Elem>> = Vec::new();
    for x in e.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<Elem> = n.members().iter().map(|&m| e.mul(x, m)).collect();
        coset.sort_unstable();
        for &y in &coset {
            projection[y] = cosets.len();
        }
        cosets.push(coset);
    }
    let labels = Some(cosets.iter().map(|c| format!("[{}]", e.label(c[0]))).collect());
    let group = FiniteGroup::from_fn(format!("{}/N", e.name()), cosets.len(), labels, |a, b| {
        projection[e.mul(cosets[a][0], cosets[b][0])]
    })
    .ok()?;
    Some(Quotient { group, projection, cosets })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn center_examples() {
        assert!(center(&catalog::cyclic(3)).is_whole());
        assert!(center(&catalog::symmetric(3)).is_trivial());
        let q8 = catalog::quaternion();
        let z = center(&q8);
        assert_eq!(z.order(), 2);
        assert!(z.contains(q8.find_label("-1").unwrap()));
    }

    #[test]
    fn generation_in_s3() {
        let s3 = catalog::symmetric(3);
        assert!(generated_subgroup(&s3, []).is_trivial());
        let r = s3.elements().find(|&x| s3.elem_order(x) == 3).unwrap();
        let s = s3.elements().find(|&x| s3.elem_order(x) == 2).unwrap();
        let h = generated_subgroup(&s3, [r]);
        assert_eq!(h.members(), &{
            let mut v = vec![0, r, s3.mul(r, r)];
            v.sort();
            v
        }[..]);
        assert!(generated_subgroup(&s3, [r, s]).is_whole());
    }

    #[test]
    fn generated_subgroup_is_minimal() {
        let d4 = catalog::dihedral(4);
        for x in d4.elements() {
            for y in d4.elements() {
                let h = generated_subgroup(&d4, [x, y]);
                assert!(h.is_closed_in(&d4));
                for &m in h.members() {
                    if m == 0 || m == x || m == y {
                        continue;
                    }
                    let smaller = Subgroup::from_members(
                        d4.order(),
                        h.members().iter().copied().filter(|&k| k != m),
                    );
                    assert!(!smaller.is_closed_in(&d4));
                }
            }
        }
    }

    #[test]
    fn subgroup_lattice_sizes() {
        assert_eq!(subgroups(&catalog::symmetric(3)).len(), 6);
        assert_eq!(subgroups(&catalog::klein()).len(), 5);
        assert_eq!(subgroups(&catalog::dihedral(4)).len(), 10);
        assert_eq!(subgroups(&catalog::quaternion()).len(), 6);
    }

    #[test]
    fn quotient_of_s3_by_a3() {
        let s3 = catalog::symmetric(3);
        let a3 = subgroups(&s3).into_iter().find(|h| h.order() == 3).unwrap();
        let q = quotient(&s3, &a3).unwrap();
        assert_eq!(q.group.order(), 2);
        assert!(s3.is_homomorphism(&q.group, &q.projection));
        let c2 = subgroups(&s3).into_iter().find(|h| h.order() == 2).unwrap();
        assert!(quotient(&s3, &c2).is_none());
    }
}
