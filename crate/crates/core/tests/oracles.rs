//! Library results against brute-force computations written directly from
//! the defining formulas on raw tables.

use std::collections::BTreeSet;

use parityc::census::{cocycles, cohomology_classes, quasiactions};
use parityc::cochains::{Convention, NormalizedCochains, Quasiaction, Quasicomplex};
use parityc::extensions::{build_quasi_extension, classify_splittings, Fiber};
use parityc::groups::{
    automorphism_group, catalog, generated_subgroup, quotient, subgroups, FiniteGroup, Subgroup, DEFAULT_AUT_BOUND,
};

type Table = Vec<usize>;

fn all_tables(m: usize, k: usize, p: usize) -> Vec<Table> {
    NormalizedCochains::new(m, k, p).map(|c| c.into_values()).collect()
}

/// `s(ab) = L_a(s(b)) s(a)`.
fn is_one_cocycle(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, s: &[usize]) -> bool {
    g.elements().all(|a| {
        g.elements().all(|b| s[g.mul(a, b)] == n.mul(l.apply(a, s[b]), s[a]))
    })
}

/// `L_a(f(b,c)) f(a,bc) = f(a,b) f(ab,c)`.
fn is_two_cocycle(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, f: &[usize]) -> bool {
    let m = g.order();
    let at = |a: usize, b: usize| f[a * m + b];
    g.elements().all(|a| {
        g.elements().all(|b| {
            g.elements().all(|c| {
                n.mul(l.apply(a, at(b, c)), at(a, g.mul(b, c))) == n.mul(at(a, b), at(g.mul(a, b), c))
            })
        })
    })
}

/// Orbits of `s'(a) = L_a(x) s(a) x^-1`.
fn one_classes(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, zs: &[Table]) -> usize {
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for s in zs {
        if seen.contains(s) {
            continue;
        }
        classes += 1;
        for x in n.elements() {
            let t: Table = g.elements().map(|a| n.mul(n.mul(l.apply(a, x), s[a]), n.inv(x))).collect();
            seen.insert(t);
        }
    }
    classes
}

/// Orbits of `f'(a,b) = L_a(w(b)) w(a) f(a,b) w(ab)^-1`.
fn two_classes(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, zs: &[Table]) -> usize {
    let m = g.order();
    let ws = all_tables(m, n.order(), 1);
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for f in zs {
        if seen.contains(f) {
            continue;
        }
        classes += 1;
        for w in &ws {
            let t: Table = (0..m * m)
                .map(|i| {
                    let (a, b) = (i / m, i % m);
                    n.mul(n.mul(n.mul(l.apply(a, w[b]), w[a]), f[i]), n.inv(w[g.mul(a, b)]))
                })
                .collect();
            seen.insert(t);
        }
    }
    classes
}

fn settings() -> Vec<(FiniteGroup, FiniteGroup)> {
    let (c2, c3, c4, v, s3) =
        (catalog::cyclic(2), catalog::cyclic(3), catalog::cyclic(4), catalog::klein(), catalog::symmetric(3));
    vec![
        (c2.clone(), c2.clone()),
        (c2.clone(), c3.clone()),
        (c3.clone(), c3.clone()),
        (c2.clone(), c4.clone()),
        (c2.clone(), v.clone()),
        (v.clone(), c2.clone()),
        (c3.clone(), c2.clone()),
        (c2.clone(), s3.clone()),
        (c4, c2),
    ]
}

#[test]
fn cocycles_match_direct_formula_for_every_quasiaction() {
    for (g, n) in settings() {
        let aut = automorphism_group(&n, DEFAULT_AUT_BOUND).unwrap();
        for l in quasiactions(&g, &aut) {
            let qc = Quasicomplex::new(&g, &n, &l).unwrap();
            for p in [1, 2] {
                if NormalizedCochains::new(g.order(), n.order(), p).count() > 50_000 {
                    continue;
                }
                let expected: Vec<Table> = all_tables(g.order(), n.order(), p)
                    .into_iter()
                    .filter(|t| if p == 1 { is_one_cocycle(&g, &n, &l, t) } else { is_two_cocycle(&g, &n, &l, t) })
                    .collect();
                let found: Vec<Table> = cocycles(qc, p, 2).into_iter().map(|c| c.into_values()).collect();
                assert_eq!(found, expected, "{} {} p={p}", g.name(), n.name());
            }
        }
    }
}

#[test]
fn class_counts_match_orbit_counting() {
    for (g, n) in settings() {
        let aut = automorphism_group(&n, DEFAULT_AUT_BOUND).unwrap();
        for l in quasiactions(&g, &aut) {
            let qc = Quasicomplex::new(&g, &n, &l).unwrap();
            for p in [1, 2] {
                if NormalizedCochains::new(g.order(), n.order(), p).count() > 5_000 {
                    continue;
                }
                let zs = cocycles(qc, p, 1);
                let tables: Vec<Table> = zs.iter().map(|c| c.values().to_vec()).collect();
                let expected = if p == 1 { one_classes(&g, &n, &l, &tables) } else { two_classes(&g, &n, &l, &tables) };
                let found = cohomology_classes(&qc, &zs, Convention::BoundaryFirst).len();
                assert_eq!(found, expected, "{} {} p={p}", g.name(), n.name());
            }
        }
    }
}

fn counts(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, p: usize) -> (usize, usize) {
    let qc = Quasicomplex::new(g, n, l).unwrap();
    let zs = cocycles(qc, p, 1);
    (zs.len(), cohomology_classes(&qc, &zs, Convention::BoundaryFirst).len())
}

#[test]
fn pinned_small_cohomology() {
    let (c2, c3, c4, s3) = (catalog::cyclic(2), catalog::cyclic(3), catalog::cyclic(4), catalog::symmetric(3));
    let triv = |g: &FiniteGroup, n: &FiniteGroup| Quasiaction::trivial(g.order(), n.order());
    assert_eq!(counts(&c2, &c2, &triv(&c2, &c2), 2), (2, 2));
    assert_eq!(counts(&c3, &c3, &triv(&c3, &c3), 2), (9, 3));
    assert_eq!(counts(&c2, &c4, &triv(&c2, &c4), 2).1, 2);
    let inv = Quasiaction::from_images(&c3, vec![vec![0, 1, 2], vec![0, 2, 1]]).unwrap();
    assert_eq!(counts(&c2, &c3, &inv, 1), (3, 1));
    assert_eq!(counts(&c2, &c3, &triv(&c2, &c3), 1), (1, 1));
    // Hom(Z2, S3) has four elements in two conjugacy classes
    assert_eq!(counts(&c2, &s3, &triv(&c2, &s3), 1), (4, 2));
}

/// Homomorphic sections by scanning every function on coset indices.
fn brute_splittings(e: &FiniteGroup, n: &Subgroup) -> (usize, usize) {
    let q = quotient(e, n).unwrap();
    let m = q.group.order();
    let mut sections: Vec<Vec<usize>> = vec![vec![]];
    for coset in &q.cosets {
        sections = sections
            .into_iter()
            .flat_map(|s| coset.iter().map(move |&x| [s.clone(), vec![x]].concat()))
            .collect();
    }
    let homs: Vec<Vec<usize>> = sections
        .into_iter()
        .filter(|s| (0..m).all(|a| (0..m).all(|b| e.mul(s[a], s[b]) == s[q.group.mul(a, b)])))
        .collect();
    let mut seen = BTreeSet::new();
    let mut classes = 0;
    for s in &homs {
        if seen.contains(s) {
            continue;
        }
        classes += 1;
        for &x in n.members() {
            seen.insert(s.iter().map(|&y| e.conj(x, y)).collect::<Vec<_>>());
        }
    }
    (homs.len(), classes)
}

#[test]
fn splittings_match_brute_force() {
    for e in [catalog::klein(), catalog::symmetric(3), catalog::dihedral(4), catalog::cyclic(6), catalog::cyclic(4)] {
        for n in subgroups(&e).into_iter().filter(|s| s.is_normal_in(&e)) {
            let (count, classes) = brute_splittings(&e, &n);
            match classify_splittings(&e, &n) {
                Ok(r) => {
                    assert_eq!((r.splittings.len(), r.conjugacy_classes.len()), (count, classes));
                    assert_eq!(r.h1_classes, classes);
                }
                Err(_) => assert_eq!(count, 0),
            }
        }
    }
    let s3 = catalog::symmetric(3);
    let r3 = generated_subgroup(&s3, [catalog::elements_of_order(&s3, 3)[0]]);
    assert_eq!(brute_splittings(&s3, &r3), (3, 1));
}

#[test]
fn extension_products_follow_the_pair_formula() {
    for (g, n) in settings() {
        let aut = automorphism_group(&n, DEFAULT_AUT_BOUND).unwrap();
        for (i, l) in quasiactions(&g, &aut).into_iter().enumerate().take(6) {
            let qc = Quasicomplex::new(&g, &n, &l).unwrap();
            for f in NormalizedCochains::new(g.order(), n.order(), 2).skip(i).step_by(7).take(5) {
                let e = build_quasi_extension(&qc, &f, Fiber::Full).unwrap();
                for x in 0..e.order() {
                    for y in 0..e.order() {
                        let ((n1, g1), (n2, g2)) = (e.pair(x), e.pair(y));
                        let expected = (n.mul(n.mul(n1, l.apply(g1, n2)), f.at(&[g1, g2])), g.mul(g1, g2));
                        assert_eq!(e.pair(e.mul(x, y)), expected);
                    }
                }
            }
        }
    }
}

#[test]
fn z4_from_the_nontrivial_z2_cocycle() {
    let c2 = catalog::cyclic(2);
    let l = Quasiaction::trivial(2, 2);
    let qc = Quasicomplex::new(&c2, &c2, &l).unwrap();
    let f = parityc::cochains::Cochain::new(2, 2, vec![0, 0, 0, 1]).unwrap();
    let e = build_quasi_extension(&qc, &f, Fiber::Full).unwrap();
    let grp = e.to_group("E").unwrap();
    assert!(parityc::groups::find_isomorphism(&grp, &catalog::cyclic(4)).unwrap().is_some());
}
