//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`; the identity is always index 0. Tables
//! coming from outside are checked by [`validate_group`], which relabels the
//! identity to 0 before anything else sees the group.

mod automorphism;
pub mod catalog;
mod subgroup;

pub use automorphism::{
    automorphism_group, automorphisms_by_permutation_scan, conjugation_map, find_isomorphism,
    isomorphisms, Automorphism, AutomorphismGroup, DEFAULT_AUT_BOUND,
};
pub use subgroup::{center, generated_subgroup, quotient, subgroups, Quotient, Subgroup};

use crate::error::GroupError;

/// Element index inside a finite group.
pub type Elem = usize;

/// Anything with a finite multiplication table and a two-sided unit at index 0.
///
/// Groups implement it, and so do quasi-extension magmas, which lets the
/// cochain machinery run over a non-associative base.
pub trait Base {
    fn order(&self) -> usize;
    fn mul(&self, a: Elem, b: Elem) -> Elem;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
    labels: Option<Vec<String>>,
}

impl Base for FiniteGroup {
    fn order(&self) -> usize {
        self.order
    }

    #[inline]
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }
}

/// Checks the group axioms on a raw table and returns the group with its
/// identity relabeled to index 0.
///
/// Witnesses in errors refer to the indices of the table as given.
pub fn validate_group(
    name: impl Into<String>,
    rows: &[Vec<usize>],
    labels: Option<Vec<String>>,
) -> Result<FiniteGroup, GroupError> {
    let order = rows.len();
    if order == 0 {
        return Err(GroupError::Malformed("empty table".into()));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
        return Err(GroupError::Malformed(format!(
            "row {i} has length {}, expected {order}",
            r.len()
        )));
    }
    if let Some(l) = &labels {
        if l.len() != order {
            return Err(GroupError::Malformed(format!(
                "{} labels for a table of order {order}",
                l.len()
            )));
        }
    }
    for (row, r) in rows.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= order {
                return Err(GroupError::NotClosed { row, col, value, order });
            }
        }
    }

    let identity = (0..order)
        .find(|&e| (0..order).all(|x| rows[e][x] == x && rows[x][e] == x))
        .ok_or(GroupError::NoIdentity)?;

    // swap identity <-> 0
    let relabel = |x: usize| {
        if x == identity {
            0
        } else if x == 0 {
            identity
        } else {
            x
        }
    };
    let mut table = vec![0; order * order];
    for a in 0..order {
        for b in 0..order {
            table[relabel(a) * order + relabel(b)] = relabel(rows[a][b]);
        }
    }
    let labels = labels.map(|mut l| {
        l.swap(0, identity);
        l
    });

    let mut inverses = vec![usize::MAX; order];
    for x in 0..order {
        let inv = (0..order).find(|&y| table[x * order + y] == 0 && table[y * order + x] == 0);
        match inv {
            Some(y) => inverses[x] = y,
            None => return Err(GroupError::NoInverse(relabel(x))),
        }
    }

    for a in 0..order {
        for b in 0..order {
            let ab = table[a * order + b];
            for c in 0..order {
                let bc = table[b * order + c];
                if table[ab * order + c] != table[a * order + bc] {
                    return Err(GroupError::NotAssociative(relabel(a), relabel(b), relabel(c)));
                }
            }
        }
    }

    Ok(FiniteGroup { name: name.into(), order, table, inverses, labels })
}

impl FiniteGroup {
    /// Builds a group from a closure computing products, then validates it.
    pub fn from_fn(
        name: impl Into<String>,
        order: usize,
        labels: Option<Vec<String>>,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self, GroupError> {
        let rows: Vec<Vec<usize>> =
            (0..order).map(|a| (0..order).map(|b| mul(a, b)).collect()).collect();
        validate_group(name, &rows, labels)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub const fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverses
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: Elem) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    /// Index of the element with the given label, if labels are present.
    pub fn find_label(&self, label: &str) -> Option<Elem> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// `x^k` for `k >= 0`.
    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn elem_order(&self, x: Elem) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.elements().map(|x| self.elem_order(x)).collect();
        p.sort_unstable();
        p
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a b a^-1`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.inv(a))
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let labels = Some(
            (0..self.order * m)
                .map(|i| format!("({},{})", self.label(i / m), other.label(i % m)))
                .collect(),
        );
        FiniteGroup::from_fn(
            format!("{}x{}", self.name, other.name),
            self.order * m,
            labels,
            |x, y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m),
        )
        .expect("direct product of groups is a group")
    }

    /// Whether `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteGroup, map: &[Elem]) -> bool {
        map.len() == self.order
            && self.elements().all(|a| {
                self.elements().all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b]))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_rows() -> Vec<Vec<usize>> {
        (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect()
    }

    #[test]
    fn trivial_table_is_a_group() {
        let g = validate_group("1", &[vec![0]], None).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.inverses(), &[0]);
    }

    #[test]
    fn z4_inverses() {
        let g = validate_group("Z4", &z4_rows(), None).unwrap();
        assert_eq!(g.inverses(), &[0, 3, 2, 1]);
        assert_eq!(g.order_profile(), vec![1, 2, 4, 4]);
    }

    #[test]
    fn swapped_entry_breaks_associativity() {
        let mut rows = z4_rows();
        // row 1 becomes [1, 3, 2, 0]: identity and inverses survive
        rows[1].swap(1, 2);
        let err = validate_group("bad", &rows, None).unwrap_err();
        let GroupError::NotAssociative(a, b, c) = err else {
            panic!("expected NotAssociative, got {err:?}");
        };
        let m = |x: usize, y: usize| rows[x][y];
        assert_ne!(m(m(a, b), c), m(a, m(b, c)));
    }

    #[test]
    fn identity_is_relabeled_to_zero() {
        // Z3 with identity stored at index 2
        let rows = vec![vec![1, 2, 0], vec![2, 0, 1], vec![0, 1, 2]];
        let labels = Some(vec!["x".into(), "y".into(), "e".into()]);
        let g = validate_group("Z3", &rows, labels).unwrap();
        assert_eq!(g.label(0), "e");
        assert!(g.elements().all(|x| g.mul(0, x) == x));
        assert_eq!(g.order_profile(), vec![1, 3, 3]);
    }

    #[test]
    fn rejects_out_of_range_and_missing_identity() {
        let err = validate_group("x", &[vec![0, 2], vec![1, 0]], None).unwrap_err();
        assert!(matches!(err, GroupError::NotClosed { row: 0, col: 1, value: 2, .. }));
        let err = validate_group("x", &[vec![1, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, GroupError::NoIdentity);
        let err = validate_group("x", &[vec![0, 1], vec![1, 1]], None).unwrap_err();
        assert_eq!(err, GroupError::NoInverse(1));
        let err = validate_group("x", &[vec![0, 1]], None).unwrap_err();
        assert!(matches!(err, GroupError::Malformed(_)));
    }
}
