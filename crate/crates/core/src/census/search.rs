use rayon::prelude::*;

use crate::cochains::{decode_into, free_positions, table_len, Cochain, Quasicomplex};
use crate::groups::{Elem, FiniteGroup};

#[derive(Debug, Clone, Copy)]
struct Factor {
    /// Quasiaction value applied to the entry; 0 for none.
    act: Elem,
    idx: usize,
}

#[derive(Debug, Clone)]
struct Constraint {
    plus: Vec<Factor>,
    minus: Vec<Factor>,
}

/// Depth-first cocycle search: free table entries are assigned in table
/// order and each cocycle equation is checked as soon as every entry it
/// reads is assigned.
pub struct CocycleSearch<'a> {
    qc: Quasicomplex<'a, FiniteGroup>,
    degree: usize,
    free: Vec<usize>,
    /// `buckets[k]` holds the equations completed by assigning free slot `k`.
    buckets: Vec<Vec<Constraint>>,
    root_ok: bool,
}

impl<'a> CocycleSearch<'a> {
    pub fn new(qc: Quasicomplex<'a, FiniteGroup>, degree: usize) -> Self {
        let g = qc.base();
        let m = g.order();
        let free = free_positions(m, degree);
        let mut rank = vec![None; table_len(m, degree)];
        for (k, &pos) in free.iter().enumerate() {
            rank[pos] = Some(k);
        }
        let mut buckets: Vec<Vec<Constraint>> = vec![Vec::new(); free.len()];
        let mut root = Vec::new();
        let mut t = vec![0; degree + 1];
        let mut args = vec![0; degree];
        let index = |args: &[Elem]| args.iter().fold(0, |acc, &a| acc * m + a);
        for tidx in 0..table_len(m, degree + 1) {
            decode_into(tidx, m, &mut t);
            let mut face = |i: usize| -> Factor {
                if i == 0 {
                    args.copy_from_slice(&t[1..]);
                    Factor { act: t[0], idx: index(&args) }
                } else if i == degree + 1 {
                    args.copy_from_slice(&t[..degree]);
                    Factor { act: 0, idx: index(&args) }
                } else {
                    args[..i - 1].copy_from_slice(&t[..i - 1]);
                    args[i - 1] = g.mul(t[i - 1], t[i]);
                    args[i..].copy_from_slice(&t[i + 1..]);
                    Factor { act: 0, idx: index(&args) }
                }
            };
            let plus: Vec<Factor> = (0..=degree + 1).filter(|i| i % 2 == 0).map(&mut face).collect();
            let minus: Vec<Factor> = (0..=degree + 1).rev().filter(|i| i % 2 == 1).map(&mut face).collect();
            let last = plus.iter().chain(&minus).filter_map(|f| rank[f.idx]).max();
            let c = Constraint { plus, minus };
            match last {
                Some(k) => buckets[k].push(c),
                None => root.push(c),
            }
        }
        let mut search = CocycleSearch { qc, degree, free, buckets, root_ok: true };
        let zeros = vec![0; table_len(m, degree)];
        search.root_ok = root.iter().all(|c| search.holds(c, &zeros));
        search
    }

    #[inline]
    fn product(&self, factors: &[Factor], values: &[Elem]) -> Elem {
        let n = self.qc.coeff();
        let l = self.qc.action();
        factors.iter().fold(0, |acc, f| {
            let v = values[f.idx];
            let v = if f.act == 0 { v } else { l.apply(f.act, v) };
            n.mul(acc, v)
        })
    }

    #[inline]
    fn holds(&self, c: &Constraint, values: &[Elem]) -> bool {
        self.product(&c.plus, values) == self.product(&c.minus, values)
    }

    fn dfs(&self, depth: usize, values: &mut Vec<Elem>, out: &mut Vec<Cochain>) {
        if depth == self.free.len() {
            out.push(Cochain::new(self.degree, self.qc.base().order(), values.clone()).expect("table size"));
            return;
        }
        let pos = self.free[depth];
        for v in 0..self.qc.coeff().order() {
            values[pos] = v;
            if self.buckets[depth].iter().all(|c| self.holds(c, values)) {
                self.dfs(depth + 1, values, out);
            }
        }
        values[pos] = 0;
    }

    /// All cocycles in lexicographic order. Work is split on the leading
    /// free entries into at least `4 * shards` prefixes, run on a pool of
    /// `shards` threads and concatenated in prefix order.
    pub fn run(&self, shards: usize) -> Vec<Cochain> {
        if !self.root_ok {
            return Vec::new();
        }
        let n = self.qc.coeff().order();
        let mut prefix_len = 0;
        let mut prefixes = 1usize;
        while prefix_len < self.free.len() && prefixes < 4 * shards.max(1) {
            prefix_len += 1;
            prefixes *= n;
        }
        let work = |p: usize| -> Vec<Cochain> {
            let mut values = vec![0; table_len(self.qc.base().order(), self.degree)];
            let mut digits = vec![0; prefix_len];
            decode_into(p, n, &mut digits);
            for (depth, &d) in digits.iter().enumerate() {
                values[self.free[depth]] = d;
                if !self.buckets[depth].iter().all(|c| self.holds(c, &values)) {
                    return Vec::new();
                }
            }
            let mut out = Vec::new();
            self.dfs(prefix_len, &mut values, &mut out);
            out
        };
        let chunks: Vec<Vec<Cochain>> = if shards <= 1 {
            (0..prefixes).map(work).collect()
        } else {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(shards).build().expect("thread pool");
            pool.install(|| (0..prefixes).into_par_iter().map(work).collect())
        };
        chunks.into_iter().flatten().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochains::{NormalizedCochains, Quasiaction};
    use crate::census::quasiactions;
    use crate::groups::{automorphism_group, catalog};

    #[test]
    fn search_matches_brute_force_filter() {
        for (g, n, p) in [
            (catalog::cyclic(3), catalog::cyclic(3), 2),
            (catalog::cyclic(2), catalog::symmetric(3), 2),
            (catalog::klein(), catalog::cyclic(2), 2),
            (catalog::cyclic(3), catalog::symmetric(3), 1),
            (catalog::cyclic(2), catalog::cyclic(3), 3),
            (catalog::cyclic(2), catalog::symmetric(3), 0),
        ] {
            let aut = automorphism_group(&n, 12).unwrap();
            for l in quasiactions(&g, &aut) {
                let qc = Quasicomplex::new(&g, &n, &l).unwrap();
                let brute: Vec<Cochain> = NormalizedCochains::new(g.order(), n.order(), p)
                    .filter(|c| qc.is_cocycle(c).unwrap())
                    .collect();
                let search = CocycleSearch::new(qc, p);
                assert_eq!(search.run(1), brute);
                assert_eq!(search.run(3), brute);
            }
        }
    }

    #[test]
    fn trivial_base_has_only_the_identity() {
        let g = catalog::cyclic(1);
        let n = catalog::cyclic(5);
        let l = Quasiaction::trivial(1, 5);
        let qc = Quasicomplex::new(&g, &n, &l).unwrap();
        let found = CocycleSearch::new(qc, 2).run(2);
        assert_eq!(found, vec![Cochain::identity(2, 1)]);
    }
}
