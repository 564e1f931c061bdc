//! Exhaustive enumeration of quasiactions, cocycles and cohomology classes.

mod oracle;
mod search;

pub use oracle::{abelian_oracle, OracleCounts};
pub use search::CocycleSearch;

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::cochains::{
    cochain_count, Cochain, Convention, NormalizedCochains, Quasiaction, Quasicomplex, Sign,
};
use crate::error::CensusError;
use crate::groups::{AutomorphismGroup, Elem, FiniteGroup, Subgroup};
use crate::integrability::holonomy_group;

/// Default cap on candidate tables per run.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// Number of normalized functions `G -> Aut(N)`.
pub fn quasiaction_count(base_order: usize, aut_order: usize) -> u128 {
    cochain_count(base_order, aut_order, 1)
}

/// Automorphism-index lists of all quasiactions, lexicographic.
pub fn quasiaction_indices(base_order: usize, aut_order: usize) -> Vec<Vec<usize>> {
    NormalizedCochains::new(base_order, aut_order, 1).map(Cochain::into_values).collect()
}

pub fn quasiactions(g: &FiniteGroup, aut: &AutomorphismGroup) -> Vec<Quasiaction> {
    quasiaction_indices(g.order(), aut.order())
        .into_iter()
        .map(|idx| Quasiaction::from_indices(aut, &idx).expect("normalized index list"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiactionEntry {
    pub index: usize,
    pub values: Vec<usize>,
    pub is_action: bool,
}

pub fn enumerate_quasiactions(g: &FiniteGroup, aut: &AutomorphismGroup) -> Vec<QuasiactionEntry> {
    quasiactions(g, aut)
        .into_iter()
        .enumerate()
        .map(|(index, l)| QuasiactionEntry { index, values: l.indices(aut), is_action: l.is_action(g) })
        .collect()
}

/// Which quasiactions a census visits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LScope {
    Trivial,
    All,
    Actions,
    /// Position in the lexicographic enumeration.
    Index(usize),
    /// Automorphism indices, one per element of `G`.
    Values(Vec<usize>),
}

impl LScope {
    pub fn parse(s: &str) -> Option<LScope> {
        match s {
            "trivial" => Some(LScope::Trivial),
            "all" => Some(LScope::All),
            "actions" => Some(LScope::Actions),
            _ if s.contains(',') => {
                s.split(',').map(|x| x.trim().parse().ok()).collect::<Option<Vec<_>>>().map(LScope::Values)
            }
            _ => s.parse().ok().map(LScope::Index),
        }
    }

    pub fn label(&self) -> String {
        match self {
            LScope::Trivial => "trivial".into(),
            LScope::All => "all".into(),
            LScope::Actions => "actions".into(),
            LScope::Index(i) => i.to_string(),
            LScope::Values(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    /// `(enumeration index, quasiaction)` pairs in scope.
    pub fn resolve(
        &self,
        g: &FiniteGroup,
        aut: &AutomorphismGroup,
    ) -> Result<Vec<(usize, Quasiaction)>, CensusError> {
        let all = || quasiactions(g, aut).into_iter().enumerate();
        Ok(match self {
            LScope::Trivial => vec![(0, Quasiaction::trivial(g.order(), aut.base_order()))],
            LScope::All => all().collect(),
            LScope::Actions => all().filter(|(_, l)| l.is_action(g)).collect(),
            LScope::Index(i) => {
                let found = all().nth(*i).ok_or_else(|| {
                    CensusError::Cochain(crate::error::CochainError::InvalidQuasiaction(format!(
                        "index {i} out of range"
                    )))
                })?;
                vec![found]
            }
            LScope::Values(v) => {
                if v.len() != g.order() || v.iter().any(|&x| x >= aut.order()) {
                    return Err(CensusError::Cochain(crate::error::CochainError::InvalidQuasiaction(
                        "value list does not match the groups".into(),
                    )));
                }
                let l = Quasiaction::from_indices(aut, v)?;
                let index = NormalizedCochains::index_of(
                    &Cochain::new(1, g.order(), v.clone()).expect("length checked"),
                    aut.order(),
                ) as usize;
                vec![(index, l)]
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub subgroup: Vec<Elem>,
    pub cocycles: usize,
    pub irreducible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub index: usize,
    pub quasiaction: Vec<usize>,
    pub is_action: bool,
    pub cochains: u128,
    pub cocycles: usize,
    /// Distinct `δw`; absent in degree 0.
    pub coboundaries: Option<usize>,
    /// Cohomology classes; absent in degree 3.
    pub classes: Option<usize>,
    pub strata: Vec<Stratum>,
    /// Lexicographically minimal table of each class, in order.
    pub representatives: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub g: String,
    pub n: String,
    pub degree: usize,
    pub scope: String,
    pub quasiactions: usize,
    pub actions: usize,
    pub fibers: Vec<FiberReport>,
    pub cocycles: usize,
    pub classes: Option<usize>,
    pub weak_classes: Option<usize>,
}

impl CensusReport {
    pub fn to_json(&self) -> Value {
        let p = self.degree;
        let mut v = json!({
            "schema": 1,
            "G": self.g,
            "N": self.n,
            "p": p,
            "L": self.scope,
            "quasiactions": self.quasiactions,
            "actions": self.actions,
        });
        let obj = v.as_object_mut().expect("object");
        obj.insert(format!("Z{p}"), json!(self.cocycles));
        obj.insert(format!("H{p}"), json!(self.classes));
        if let Some(w) = self.weak_classes {
            obj.insert(format!("H{p}_weak"), json!(w));
        }
        obj.insert("fibers".into(), serde_json::to_value(&self.fibers).expect("serializable"));
        v
    }

    pub fn to_tsv(&self) -> String {
        let p = self.degree;
        let mut out = format!("index\tquasiaction\tis_action\tcochains\tZ{p}\tB{p}\tH{p}\tstrata\n");
        let opt = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
        for f in &self.fibers {
            let strata: Vec<String> = f
                .strata
                .iter()
                .map(|s| format!("{}:{}", s.subgroup.len(), s.cocycles))
                .collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                f.index,
                f.quasiaction.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                f.is_action,
                f.cochains,
                f.cocycles,
                opt(f.coboundaries),
                opt(f.classes),
                strata.join(" "),
            ));
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CensusOptions {
    pub budget: u128,
    pub shards: usize,
    pub weak: bool,
    pub convention: Convention,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { budget: DEFAULT_BUDGET, shards: 1, weak: false, convention: Convention::default() }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Keeps the smaller index as root, so roots are minimal members.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.0[hi] = lo;
        }
    }
}

/// `∂⁺w` and `∂⁻w` for every normalized `(p-1)`-cochain.
fn witness_boundaries(qc: &Quasicomplex<'_, FiniteGroup>, degree: usize) -> Vec<(Cochain, Cochain)> {
    NormalizedCochains::new(qc.base().order(), qc.coeff().order(), degree - 1)
        .map(|w| {
            (
                qc.parity_boundary(&w, Sign::Plus).expect("degree checked"),
                qc.parity_boundary(&w, Sign::Minus).expect("degree checked"),
            )
        })
        .collect()
}

/// Partition of sorted `cocycles` into classes; each class lists member
/// positions, the first being the minimal table.
pub fn cohomology_classes(
    qc: &Quasicomplex<'_, FiniteGroup>,
    cocycles: &[Cochain],
    convention: Convention,
) -> Vec<Vec<usize>> {
    let Some(first) = cocycles.first() else {
        return Vec::new();
    };
    let degree = first.degree();
    let mut uf = UnionFind::new(cocycles.len());
    if degree > 0 {
        let n = qc.coeff();
        let pos: HashMap<&[Elem], usize> =
            cocycles.iter().enumerate().map(|(i, c)| (c.values(), i)).collect();
        let bounds = witness_boundaries(qc, degree);
        let mut buf = vec![0; first.values().len()];
        for (i, c) in cocycles.iter().enumerate() {
            for (plus, minus) in &bounds {
                for (k, slot) in buf.iter_mut().enumerate() {
                    let (p, m, x) = (plus.values()[k], minus.values()[k], c.values()[k]);
                    *slot = match convention {
                        Convention::BoundaryFirst => n.mul(n.mul(p, x), n.inv(m)),
                        Convention::CochainFirst => n.mul(n.mul(n.inv(p), x), m),
                    };
                }
                if let Some(&j) = pos.get(&buf[..]) {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..cocycles.len() {
        let r = uf.find(i);
        classes.entry(r).or_default().push(i);
    }
    classes.into_values().collect()
}

/// Cocycles grouped by holonomy subgroup, ordered by (order, members).
pub fn stratify_by_holonomy(
    coeff: &FiniteGroup,
    action: &Quasiaction,
    cocycles: &[Cochain],
) -> Vec<Stratum> {
    let mut strata: BTreeMap<(usize, Vec<Elem>), usize> = BTreeMap::new();
    for c in cocycles {
        let h: Subgroup = holonomy_group(coeff, c, action).subgroup;
        *strata.entry((h.order(), h.members().to_vec())).or_default() += 1;
    }
    strata
        .into_iter()
        .map(|((order, subgroup), cocycles)| Stratum { subgroup, cocycles, irreducible: order == coeff.order() })
        .collect()
}

pub fn cocycles(qc: Quasicomplex<'_, FiniteGroup>, degree: usize, shards: usize) -> Vec<Cochain> {
    CocycleSearch::new(qc, degree).run(shards)
}

pub fn cocycle_census(
    g: &FiniteGroup,
    n: &FiniteGroup,
    aut: &AutomorphismGroup,
    degree: usize,
    scope: &LScope,
    options: &CensusOptions,
) -> Result<CensusReport, CensusError> {
    if degree > crate::cochains::MAX_DEGREE {
        return Err(crate::error::CochainError::DegreeOutOfRange { degree, max: crate::cochains::MAX_DEGREE }.into());
    }
    let fibers_in_scope = scope.resolve(g, aut)?;
    let per_fiber = cochain_count(g.order(), n.order(), degree);
    let needed = per_fiber.saturating_mul(fibers_in_scope.len() as u128);
    if needed > options.budget {
        return Err(CensusError::BudgetExceeded { needed, budget: options.budget });
    }
    let mut fibers = Vec::new();
    let mut per_fiber_cocycles = Vec::new();
    for (index, l) in &fibers_in_scope {
        let qc = Quasicomplex::new(g, n, l)?;
        let found = cocycles(qc, degree, options.shards);
        let (classes, representatives, coboundaries) = if degree == 3 {
            (None, Vec::new(), Some(count_coboundaries(&qc, degree)))
        } else {
            let cls = cohomology_classes(&qc, &found, options.convention);
            let reps = cls.iter().map(|c| found[c[0]].values().to_vec()).collect();
            let cob = (degree > 0).then(|| count_coboundaries(&qc, degree));
            (Some(cls.len()), reps, cob)
        };
        fibers.push(FiberReport {
            index: *index,
            quasiaction: l.indices(aut),
            is_action: l.is_action(g),
            cochains: per_fiber,
            cocycles: found.len(),
            coboundaries,
            classes,
            strata: stratify_by_holonomy(n, l, &found),
            representatives,
        });
        per_fiber_cocycles.push(found);
    }
    let weak_classes = if options.weak && (1..=2).contains(&degree) {
        Some(weak_classes(g, n, &fibers_in_scope, &per_fiber_cocycles)?)
    } else {
        None
    };
    Ok(CensusReport {
        g: g.name().to_string(),
        n: n.name().to_string(),
        degree,
        scope: scope.label(),
        quasiactions: fibers_in_scope.len(),
        actions: fibers.iter().filter(|f| f.is_action).count(),
        cocycles: fibers.iter().map(|f| f.cocycles).sum(),
        classes: fibers.iter().map(|f| f.classes).sum(),
        fibers,
        weak_classes,
    })
}

fn count_coboundaries(qc: &Quasicomplex<'_, FiniteGroup>, degree: usize) -> usize {
    let n = qc.coeff();
    let mut seen: Vec<Vec<Elem>> = witness_boundaries(qc, degree)
        .into_iter()
        .map(|(p, m)| p.pointwise(n, &m.pointwise_inverse(n)).into_values())
        .collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// Classes of the weak relation `(∂⁺_{L'} w) c = c2 (∂⁻ w)` across all
/// fibers in scope.
fn weak_classes(
    g: &FiniteGroup,
    n: &FiniteGroup,
    fibers: &[(usize, Quasiaction)],
    cocycles: &[Vec<Cochain>],
) -> Result<usize, CensusError> {
    let mut offset = Vec::new();
    let mut total = 0;
    for cs in cocycles {
        offset.push(total);
        total += cs.len();
    }
    let pos: Vec<HashMap<&[Elem], usize>> = cocycles
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.values(), i)).collect())
        .collect();
    let Some(degree) = cocycles.iter().flatten().next().map(Cochain::degree) else {
        return Ok(0);
    };
    let witnesses: Vec<Cochain> = NormalizedCochains::new(g.order(), n.order(), degree - 1).collect();
    let mut uf = UnionFind::new(total);
    for (src, cs) in cocycles.iter().enumerate() {
        let qs = Quasicomplex::new(g, n, &fibers[src].1)?;
        let minus: Vec<Cochain> = witnesses
            .iter()
            .map(|w| qs.parity_boundary(w, Sign::Minus).map(|m| m.pointwise_inverse(n)))
            .collect::<Result<_, _>>()?;
        for (dst, (_, l2)) in fibers.iter().enumerate() {
            let qt = Quasicomplex::new(g, n, l2)?;
            for (w, m_inv) in witnesses.iter().zip(&minus) {
                let plus = qt.parity_boundary(w, Sign::Plus)?;
                for (i, c) in cs.iter().enumerate() {
                    let c2 = plus.pointwise(n, c).pointwise(n, m_inv);
                    if let Some(&j) = pos[dst].get(c2.values()) {
                        uf.union(offset[src] + i, offset[dst] + j);
                    }
                }
            }
        }
    }
    Ok((0..total).filter(|&i| uf.find(i) == i).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{automorphism_group, catalog};

    fn census(g: &FiniteGroup, n: &FiniteGroup, p: usize, scope: LScope) -> CensusReport {
        let aut = automorphism_group(n, 12).unwrap();
        cocycle_census(g, n, &aut, p, &scope, &CensusOptions::default()).unwrap()
    }

    #[test]
    fn quasiaction_counts() {
        let z3 = catalog::cyclic(3);
        let aut = automorphism_group(&z3, 12).unwrap();
        let one = enumerate_quasiactions(&catalog::cyclic(1), &aut);
        assert_eq!(one.len(), 1);
        let e = enumerate_quasiactions(&catalog::cyclic(2), &aut);
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|q| q.is_action));
        let e = enumerate_quasiactions(&z3, &aut);
        assert_eq!(e.len(), 4);
        assert_eq!(e.iter().filter(|q| q.is_action).count(), 1);
    }

    #[test]
    fn census_examples() {
        let z2 = catalog::cyclic(2);
        let z3 = catalog::cyclic(3);
        let r = census(&z2, &z2, 2, LScope::Trivial);
        assert_eq!((r.cocycles, r.classes), (2, Some(2)));
        let r = census(&z3, &z3, 2, LScope::Trivial);
        assert_eq!(r.classes, Some(3));
        let r = census(&z2, &z3, 1, LScope::Values(vec![0, 1]));
        assert_eq!((r.cocycles, r.classes), (3, Some(1)));
        let r = census(&catalog::cyclic(1), &catalog::cyclic(5), 2, LScope::All);
        assert_eq!((r.cocycles, r.classes), (1, Some(1)));
    }

    #[test]
    fn strata_partition_the_cocycles() {
        let z2 = catalog::cyclic(2);
        let r = census(&z2, &z2, 2, LScope::Trivial);
        let strata = &r.fibers[0].strata;
        assert_eq!(strata.iter().map(|s| s.cocycles).sum::<usize>(), r.cocycles);
        assert_eq!(strata[0].subgroup, vec![0]);
        assert!(strata[1].irreducible);
        for (g, n) in [(catalog::cyclic(3), catalog::symmetric(3)), (catalog::klein(), catalog::cyclic(2))] {
            let r = census(&g, &n, 2, LScope::All);
            for f in &r.fibers {
                assert_eq!(f.strata.iter().map(|s| s.cocycles).sum::<usize>(), f.cocycles);
            }
        }
    }

    #[test]
    fn representatives_are_minimal() {
        let z3 = catalog::cyclic(3);
        let r = census(&z3, &z3, 2, LScope::Trivial);
        let reps = &r.fibers[0].representatives;
        assert_eq!(reps[0], vec![0; 9]);
        assert!(reps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn budget_is_enforced() {
        let k = catalog::klein();
        let aut = automorphism_group(&k, 12).unwrap();
        let opts = CensusOptions { budget: 1000, ..Default::default() };
        let err = cocycle_census(&k, &k, &aut, 2, &LScope::All, &opts).unwrap_err();
        assert_eq!(err, CensusError::BudgetExceeded { needed: 216 * 262_144, budget: 1000 });
    }

    #[test]
    fn shard_count_does_not_change_the_report() {
        let g = catalog::cyclic(3);
        let n = catalog::symmetric(3);
        let aut = automorphism_group(&n, 12).unwrap();
        let one = cocycle_census(&g, &n, &aut, 2, &LScope::All, &CensusOptions::default()).unwrap();
        let four = cocycle_census(&g, &n, &aut, 2, &LScope::All, &CensusOptions { shards: 4, ..Default::default() })
            .unwrap();
        assert_eq!(one.to_json().to_string(), four.to_json().to_string());
    }

    #[test]
    fn fiber_decomposition_sums() {
        let g = catalog::cyclic(2);
        let n = catalog::cyclic(4);
        let all = census(&g, &n, 2, LScope::All);
        let parts: usize = (0..all.fibers.len()).map(|i| census(&g, &n, 2, LScope::Index(i)).cocycles).sum();
        assert_eq!(all.cocycles, parts);
    }

    #[test]
    fn weak_classes_are_coarser() {
        let g = catalog::cyclic(2);
        let n = catalog::cyclic(3);
        let aut = automorphism_group(&n, 12).unwrap();
        let opts = CensusOptions { weak: true, ..Default::default() };
        let r = cocycle_census(&g, &n, &aut, 1, &LScope::All, &opts).unwrap();
        assert!(r.weak_classes.unwrap() <= r.classes.unwrap());
    }

    #[test]
    fn scope_parsing() {
        assert_eq!(LScope::parse("all"), Some(LScope::All));
        assert_eq!(LScope::parse("3"), Some(LScope::Index(3)));
        assert_eq!(LScope::parse("0,1"), Some(LScope::Values(vec![0, 1])));
        assert_eq!(LScope::parse("x"), None);
    }
}
