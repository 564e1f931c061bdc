//! Classical additive cohomology for abelian coefficients, written without
//! the multiplicative cochain machinery so the two can be compared.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cochains::Quasiaction;
use crate::error::CensusError;
use crate::groups::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub cochains: u128,
    pub cocycles: u128,
    pub coboundaries: u128,
    pub classes: u128,
}

/// All normalized maps `G^p -> N` as dense vectors, by a plain odometer.
fn all_cochains(m: usize, n: usize, p: usize) -> Vec<Vec<usize>> {
    let len = m.pow(p as u32);
    let tuple = |mut i: usize| {
        let mut t = vec![0; p];
        for k in (0..p).rev() {
            t[k] = i % m;
            i /= m;
        }
        t
    };
    let free: Vec<usize> = (0..len).filter(|&i| tuple(i).iter().all(|&a| a != 0)).collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; free.len()];
    loop {
        let mut f = vec![0; len];
        for (&pos, &d) in free.iter().zip(&digits) {
            f[pos] = d;
        }
        out.push(f);
        let mut k = digits.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            digits[k] += 1;
            if digits[k] < n {
                break;
            }
            digits[k] = 0;
        }
    }
}

/// `(df)(a1..a_{p+1}) = a1·f(a2..) + Σ (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{p+1} f(a1..ap)`.
fn coboundary(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, p: usize, f: &[usize]) -> Vec<usize> {
    let m = g.order();
    let len = m.pow(p as u32 + 1);
    let at = |args: &[usize]| f[args.iter().fold(0, |acc, &a| acc * m + a)];
    let add = |x: usize, y: usize| n.mul(x, y);
    let signed = |x: usize, positive: bool| if positive { x } else { n.inv(x) };
    (0..len)
        .map(|mut idx| {
            let mut t = vec![0; p + 1];
            for k in (0..=p).rev() {
                t[k] = idx % m;
                idx /= m;
            }
            let mut acc = l.apply(t[0], at(&t[1..]));
            for i in 1..=p {
                let mut args: Vec<usize> = t[..i - 1].to_vec();
                args.push(g.mul(t[i - 1], t[i]));
                args.extend_from_slice(&t[i + 1..]);
                acc = add(acc, signed(at(&args), i % 2 == 0));
            }
            add(acc, signed(at(&t[..p]), (p + 1) % 2 == 0))
        })
        .collect()
}

/// `|Z^p|`, `|B^p|` and `|H^p| = |Z^p| / |B^p|` for an abelian `N` and an
/// action `L`.
pub fn abelian_oracle(g: &FiniteGroup, n: &FiniteGroup, l: &Quasiaction, p: usize) -> Result<OracleCounts, CensusError> {
    if !n.is_abelian() {
        return Err(CensusError::NotAbelian);
    }
    for a in g.elements() {
        for b in g.elements() {
            if n.elements().any(|x| l.apply(a, l.apply(b, x)) != l.apply(g.mul(a, b), x)) {
                return Err(CensusError::NotAnAction);
            }
        }
    }
    let cochains = all_cochains(g.order(), n.order(), p);
    let cocycles = cochains
        .iter()
        .filter(|f| coboundary(g, n, l, p, f).iter().all(|&v| v == 0))
        .count() as u128;
    let coboundaries = if p == 0 {
        1
    } else {
        all_cochains(g.order(), n.order(), p - 1)
            .iter()
            .map(|w| coboundary(g, n, l, p - 1, w))
            .collect::<BTreeSet<_>>()
            .len() as u128
    };
    Ok(OracleCounts { cochains: cochains.len() as u128, cocycles, coboundaries, classes: cocycles / coboundaries })
}
