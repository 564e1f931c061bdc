//! Builtin groups, addressable by name: `trivial`, `cyclic:n`, `klein`,
//! `sym:n`, `dihedral:n`, `quat:8`.

use super::{Elem, FiniteGroup};
use crate::error::GroupError;

pub const BUILTIN_NAMES: &[&str] = &["trivial", "cyclic:n", "klein", "sym:n", "dihedral:n", "quat:8"];

pub fn builtin(name: &str) -> Result<FiniteGroup, GroupError> {
    let unknown = || GroupError::UnknownBuiltin(name.to_string());
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a.parse::<usize>().map_err(|_| unknown())?)),
        None => (name, None),
    };
    match (head, arg) {
        ("trivial", None) => Ok(cyclic(1)),
        ("cyclic", Some(n)) if (1..=64).contains(&n) => Ok(cyclic(n)),
        ("klein", None) => Ok(klein()),
        ("sym", Some(n)) if (1..=4).contains(&n) => Ok(symmetric(n)),
        ("dihedral", Some(n)) if (1..=12).contains(&n) => Ok(dihedral(n)),
        ("quat", Some(8)) => Ok(quaternion()),
        _ => Err(unknown()),
    }
}

/// The groups every exhaustive suite iterates over: orders up to 4.
pub fn small_catalog() -> Vec<FiniteGroup> {
    vec![cyclic(1), cyclic(2), cyclic(3), cyclic(4), klein()]
}

pub fn cyclic(n: usize) -> FiniteGroup {
    let labels = (0..n)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "a".to_string(),
            k => format!("a^{k}"),
        })
        .collect();
    let name = if n == 1 { "trivial".to_string() } else { format!("cyclic:{n}") };
    FiniteGroup::from_fn(name, n, Some(labels), |a, b| (a + b) % n).expect("cyclic group")
}

pub fn klein() -> FiniteGroup {
    let labels = ["e", "a", "b", "ab"].map(String::from).to_vec();
    FiniteGroup::from_fn("klein", 4, Some(labels), |a, b| a ^ b).expect("klein group")
}

/// Dihedral group of order `2n`; element `i + n j` is `r^i s^j`.
pub fn dihedral(n: usize) -> FiniteGroup {
    let labels = (0..2 * n)
        .map(|x| {
            let (i, j) = (x % n, x / n);
            let r = match i {
                0 => String::new(),
                1 => "r".to_string(),
                i => format!("r^{i}"),
            };
            match (r.is_empty(), j) {
                (true, 0) => "e".to_string(),
                (false, 0) => r,
                (_, _) => format!("{r}s"),
            }
        })
        .collect();
    FiniteGroup::from_fn(format!("dihedral:{n}"), 2 * n, Some(labels), |x, y| {
        let (i, j) = (x % n, x / n);
        let (k, l) = (y % n, y / n);
        let k = if j == 1 { (n - k) % n } else { k };
        (i + k) % n + n * ((j + l) % 2)
    })
    .expect("dihedral group")
}

/// Symmetric group on `n` points; elements are permutations in
/// lexicographic order of their one-line notation, composed as maps
/// (`(p q)(x) = p(q(x))`).
pub fn symmetric(n: usize) -> FiniteGroup {
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("permutation");
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_fn(format!("sym:{n}"), perms.len(), Some(labels), |a, b| {
        let c: Vec<usize> = (0..n).map(|x| perms[a][perms[b][x]]).collect();
        index(&c)
    })
    .expect("symmetric group")
}

/// Quaternion group; indices 0..8 are 1, -1, i, -i, j, -j, k, -k.
pub fn quaternion() -> FiniteGroup {
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    // unit index 0..4 = 1, i, j, k; sign bit in the low position
    let unit_mul = |u: usize, v: usize| -> (usize, bool) {
        match (u, v) {
            (0, v) => (v, false),
            (u, 0) => (u, false),
            (u, v) if u == v => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    FiniteGroup::from_fn("quat:8", 8, Some(labels), |x, y| {
        let (u, su) = (x / 2, x % 2 == 1);
        let (v, sv) = (y / 2, y % 2 == 1);
        let (w, sw) = unit_mul(u, v);
        2 * w + usize::from(su ^ sv ^ sw)
    })
    .expect("quaternion group")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cycle.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// Elements of a given order, in index order.
pub fn elements_of_order(g: &FiniteGroup, k: usize) -> Vec<Elem> {
    g.elements().filter(|&x| g.elem_order(x) == k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_names_resolve() {
        for (name, order) in [
            ("trivial", 1),
            ("cyclic:4", 4),
            ("klein", 4),
            ("sym:3", 6),
            ("dihedral:4", 8),
            ("quat:8", 8),
            ("sym:4", 24),
        ] {
            assert_eq!(builtin(name).unwrap().order(), order, "{name}");
        }
        assert!(builtin("cyclic:x").is_err());
        assert!(builtin("quat:16").is_err());
        assert!(builtin("nope").is_err());
    }

    #[test]
    fn order_profiles() {
        assert_eq!(klein().order_profile(), vec![1, 2, 2, 2]);
        assert_eq!(symmetric(3).order_profile(), vec![1, 2, 2, 2, 3, 3]);
        assert_eq!(dihedral(4).order_profile(), vec![1, 2, 2, 2, 2, 2, 4, 4]);
        assert_eq!(quaternion().order_profile(), vec![1, 2, 4, 4, 4, 4, 4, 4]);
        assert!(!symmetric(3).is_abelian());
        assert!(klein().is_abelian());
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let (m1, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), m1);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), 7);
        assert_eq!(q.mul(q.mul(i, j), k), m1);
    }

    #[test]
    fn dihedral_labels() {
        let d = dihedral(3);
        assert_eq!(d.label(0), "e");
        assert_eq!(d.label(1), "r");
        assert_eq!(d.label(3), "s");
        assert_eq!(d.label(5), "r^2s");
    }
}
