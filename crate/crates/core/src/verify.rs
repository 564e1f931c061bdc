//! Named property suites.
//!
//! Every suite expands its scope into a list of [`Instance`]s and checks each
//! one independently. Failed instances are reported with the instance
//! itself, which [`replay`] accepts back. Reports contain no timing or shard
//! information, so identical options give byte-identical output.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::categorify::{
    functor_of_function, interchange_defect, monoidal_morphism_check, pentagon_sample, restriction_check,
    untwist_check, vectors_and_preservation, BundleCategory, TensorKind,
};
use crate::census::{abelian_oracle, cocycles, cohomology_classes, LScope, DEFAULT_BUDGET};
use crate::cochains::{
    cochain_count, exactness_check, free_positions, push_c, table_len, Cochain, Convention, NormalizedCochains,
    Quasiaction, Quasicomplex, Sign,
};
use crate::error::{CensusError, Error, ExtensionError, Result};
use crate::extensions::{
    build_quasi_extension, canonical_roundtrip, classify_splittings, mc_equivalence, Fiber,
};
use crate::groups::{
    automorphism_group, find_isomorphism, quotient, subgroups, AutomorphismGroup, Elem, FiniteGroup, Subgroup,
    DEFAULT_AUT_BOUND,
};
use crate::integrability::{dds_battery, is_integrable};
use crate::io::load_group;
use crate::sampling::{Sampler, GENERATOR};

/// Failed instances kept per report.
pub const WITNESS_CAP: usize = 20;
/// Cochain spaces at most this large are scanned completely by the
/// boundary suite; larger ones are sampled.
pub const BOUNDARY_EXHAUSTIVE_CAP: u128 = 4096;
pub const BOUNDARY_SAMPLES: usize = 64;
pub const PENTAGON_SAMPLES: usize = 10_000;
/// Random quasi-extensions per `(G, N)` pair in the pentagon suite.
pub const PENTAGON_INSTANCES: usize = 3;

const SMALL: &[&str] = &["trivial", "cyclic:2", "cyclic:3", "cyclic:4", "klein"];
const FIBER_GROUPS: &[&str] = &["cyclic:2", "cyclic:3", "cyclic:4", "klein", "sym:3"];
const SPLIT_GROUPS: &[&str] = &["cyclic:2", "cyclic:4", "klein", "sym:3", "dihedral:4", "quat:8", "cyclic:6"];
const MONSTR_GROUPS: &[&str] = &["cyclic:4", "klein", "sym:3", "dihedral:4", "quat:8", "cyclic:6"];
const DDS_PAIRS: &[(&str, &str)] = &[("cyclic:2", "sym:3"), ("cyclic:2", "cyclic:3"), ("cyclic:3", "cyclic:3")];
const ORACLE_PAIRS: &[(&str, &str)] = &[("cyclic:2", "cyclic:2"), ("cyclic:3", "cyclic:3"), ("cyclic:2", "cyclic:4")];
const CHAINMAP_PAIRS: &[(&str, &str)] = &[("cyclic:2", "sym:3")];
const EXACTNESS_PAIRS: &[(&str, &str)] = &[("cyclic:2", "sym:3"), ("cyclic:2", "quat:8")];
const FUNCTOR_PAIRS: &[(&str, &str)] = &[("cyclic:2", "cyclic:3"), ("cyclic:2", "cyclic:4")];
const PENTAGON_PAIRS: &[(&str, &str)] = &[
    ("cyclic:2", "cyclic:2"),
    ("cyclic:2", "cyclic:3"),
    ("cyclic:3", "cyclic:2"),
    ("cyclic:4", "cyclic:2"),
    ("klein", "cyclic:2"),
    ("cyclic:2", "sym:3"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Boundary,
    Roundtrip,
    Dds,
    McEquivalence,
    Split,
    Oracle,
    Untwist,
    Vectors,
    Pentagon,
    Chainmap,
    Exactness,
    Monstr,
    Functor,
}

impl Suite {
    pub const ALL: [Suite; 13] = [
        Suite::Boundary,
        Suite::Roundtrip,
        Suite::Dds,
        Suite::McEquivalence,
        Suite::Split,
        Suite::Oracle,
        Suite::Untwist,
        Suite::Vectors,
        Suite::Pentagon,
        Suite::Chainmap,
        Suite::Exactness,
        Suite::Monstr,
        Suite::Functor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Boundary => "boundary",
            Suite::Roundtrip => "roundtrip",
            Suite::Dds => "dds",
            Suite::McEquivalence => "mc-equivalence",
            Suite::Split => "split",
            Suite::Oracle => "oracle",
            Suite::Untwist => "untwist",
            Suite::Vectors => "vectors",
            Suite::Pentagon => "pentagon",
            Suite::Chainmap => "chainmap",
            Suite::Exactness => "exactness",
            Suite::Monstr => "monstr",
            Suite::Functor => "functor",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// Suites with few, coarse instances list every instance's detail.
    fn lists_details(self) -> bool {
        matches!(
            self,
            Suite::Split | Suite::Oracle | Suite::Untwist | Suite::Vectors | Suite::Pentagon | Suite::Exactness
        )
    }
}

/// Groups and a quasiaction given by automorphism image arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Setting {
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "L")]
    pub l: Vec<Vec<Elem>>,
}

impl Setting {
    fn new(g: &str, n: &str, l: &Quasiaction) -> Self {
        Setting { g: g.into(), n: n.into(), l: l.values().iter().map(|a| a.images().to_vec()).collect() }
    }
}

/// One self-contained check; cochains are flat lexicographic tables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "suite", rename_all = "kebab-case")]
pub enum Instance {
    Boundary {
        #[serde(flatten)]
        at: Setting,
        p: usize,
        f: Vec<Elem>,
    },
    Roundtrip {
        #[serde(flatten)]
        at: Setting,
        f: Vec<Elem>,
    },
    Dds {
        #[serde(flatten)]
        at: Setting,
        s: Vec<Elem>,
    },
    McEquivalence {
        #[serde(flatten)]
        at: Setting,
        f: Vec<Elem>,
    },
    Split {
        #[serde(rename = "E")]
        e: String,
        #[serde(rename = "N")]
        n: Vec<Elem>,
    },
    Oracle {
        #[serde(flatten)]
        at: Setting,
        p: usize,
    },
    Untwist {
        #[serde(rename = "G")]
        g: String,
    },
    Vectors {
        #[serde(rename = "G")]
        g: String,
    },
    Pentagon {
        #[serde(flatten)]
        at: Setting,
        f: Vec<Elem>,
        samples: usize,
        seed: u64,
    },
    Chainmap {
        #[serde(flatten)]
        at: Setting,
        p: usize,
        f: Vec<Elem>,
    },
    Exactness {
        #[serde(flatten)]
        at: Setting,
        p: usize,
    },
    Monstr {
        #[serde(rename = "E")]
        e: String,
        #[serde(rename = "N")]
        n: Vec<Elem>,
        s: Vec<Elem>,
        s2: Vec<Elem>,
    },
    Functor {
        #[serde(rename = "G")]
        g: String,
        #[serde(rename = "N")]
        n: String,
        s: Vec<Elem>,
    },
}

impl Instance {
    pub fn suite(&self) -> Suite {
        match self {
            Instance::Boundary { .. } => Suite::Boundary,
            Instance::Roundtrip { .. } => Suite::Roundtrip,
            Instance::Dds { .. } => Suite::Dds,
            Instance::McEquivalence { .. } => Suite::McEquivalence,
            Instance::Split { .. } => Suite::Split,
            Instance::Oracle { .. } => Suite::Oracle,
            Instance::Untwist { .. } => Suite::Untwist,
            Instance::Vectors { .. } => Suite::Vectors,
            Instance::Pentagon { .. } => Suite::Pentagon,
            Instance::Chainmap { .. } => Suite::Chainmap,
            Instance::Exactness { .. } => Suite::Exactness,
            Instance::Monstr { .. } => Suite::Monstr,
            Instance::Functor { .. } => Suite::Functor,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub checks: u64,
    pub detail: Value,
    #[serde(skip)]
    pub tally: Vec<(&'static str, u64)>,
}

impl Outcome {
    fn new(passed: bool, checks: u64, detail: Value) -> Self {
        Outcome { passed, checks, detail, tally: Vec::new() }
    }

    fn count(mut self, key: &'static str, yes: bool) -> Self {
        self.tally.push((key, yes as u64));
        self
    }
}

/// Scope of a suite run. Unset groups and degrees fall back to each
/// suite's default instances.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub g: Option<String>,
    pub n: Option<String>,
    pub e: Option<String>,
    pub p: Option<usize>,
    pub l: Option<LScope>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub exhaustive: bool,
    /// Cap on the size of any single enumerated cochain space.
    pub budget: u128,
    /// Shards for cocycle enumeration; never affects output.
    pub shards: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            g: None,
            n: None,
            e: None,
            p: None,
            l: None,
            samples: None,
            seed: 0,
            exhaustive: false,
            budget: DEFAULT_BUDGET,
            shards: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    pub instance: Instance,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub generator: &'static str,
    pub seed: u64,
    pub instances: usize,
    pub checks: u64,
    pub failures: usize,
    pub passed: bool,
    pub tally: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub details: Vec<Value>,
    pub witnesses: Vec<Witness>,
}

impl SuiteReport {
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").insert("schema".into(), json!(1));
        v
    }

    pub fn tsv_header() -> &'static str {
        "suite\tinstances\tchecks\tfailures\tpassed\n"
    }

    pub fn tsv_row(&self) -> String {
        format!("{}\t{}\t{}\t{}\t{}\n", self.suite.name(), self.instances, self.checks, self.failures, self.passed)
    }
}

struct Ctx {
    budget: u128,
    shards: usize,
    groups: Mutex<HashMap<String, Arc<FiniteGroup>>>,
    auts: Mutex<HashMap<String, Arc<AutomorphismGroup>>>,
}

impl Ctx {
    fn new(budget: u128, shards: usize) -> Self {
        Ctx { budget, shards: shards.max(1), groups: Mutex::default(), auts: Mutex::default() }
    }

    fn group(&self, r: &str) -> Result<Arc<FiniteGroup>> {
        if let Some(g) = self.groups.lock().expect("poisoned").get(r) {
            return Ok(g.clone());
        }
        let g = Arc::new(load_group(r)?);
        self.groups.lock().expect("poisoned").insert(r.to_string(), g.clone());
        Ok(g)
    }

    fn aut(&self, r: &str) -> Result<Arc<AutomorphismGroup>> {
        if let Some(a) = self.auts.lock().expect("poisoned").get(r) {
            return Ok(a.clone());
        }
        let a = Arc::new(automorphism_group(&*self.group(r)?, DEFAULT_AUT_BOUND)?);
        self.auts.lock().expect("poisoned").insert(r.to_string(), a.clone());
        Ok(a)
    }

    fn setting(&self, at: &Setting) -> Result<(Arc<FiniteGroup>, Arc<FiniteGroup>, Quasiaction)> {
        let g = self.group(&at.g)?;
        let n = self.group(&at.n)?;
        if at.l.len() != g.order() {
            return Err(Error::Input(format!("L has {} entries, G has order {}", at.l.len(), g.order())));
        }
        let l = Quasiaction::from_images(&n, at.l.clone())?;
        Ok((g, n, l))
    }

    fn within(&self, needed: u128) -> Result<()> {
        if needed > self.budget {
            return Err(CensusError::BudgetExceeded { needed, budget: self.budget }.into());
        }
        Ok(())
    }
}

fn is_budget(e: &Error) -> bool {
    matches!(
        e,
        Error::Census(CensusError::BudgetExceeded { .. })
            | Error::Extension(ExtensionError::Census(CensusError::BudgetExceeded { .. }))
    )
}

fn cochain(degree: usize, base_order: usize, values: &[Elem], n: &FiniteGroup) -> Result<Cochain> {
    let c = Cochain::new(degree, base_order, values.to_vec())?;
    c.validate(n)?;
    Ok(c)
}

/// First tuple where two tables differ.
fn first_difference(a: &Cochain, b: &Cochain) -> Option<(Vec<Elem>, Elem, Elem)> {
    a.values()
        .iter()
        .zip(b.values())
        .position(|(x, y)| x != y)
        .map(|i| (a.tuple(i), a.values()[i], b.values()[i]))
}

fn check_with(ctx: &Ctx, instance: &Instance) -> Result<Outcome> {
    match instance {
        Instance::Boundary { at, p, f } => {
            let (g, n, l) = ctx.setting(at)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(*p, g.order(), f, &n)?;
            let mut checks = 0;
            let mut mismatch = Value::Null;
            for sign in [Sign::Plus, Sign::Minus] {
                let generic = qc.parity_boundary(&c, sign)?;
                let explicit = qc.explicit_boundary(&c, sign)?;
                checks += generic.values().len() as u64;
                if mismatch.is_null() {
                    if let Some((t, x, y)) = first_difference(&generic, &explicit) {
                        mismatch = json!({"sign": format!("{sign:?}"), "tuple": t, "generic": x, "explicit": y});
                    }
                }
            }
            Ok(Outcome::new(mismatch.is_null(), checks, json!({ "mismatch": mismatch })))
        }
        Instance::Roundtrip { at, f } => {
            let (g, n, l) = ctx.setting(at)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(2, g.order(), f, &n)?;
            let r = canonical_roundtrip(&qc, &c, Fiber::Holonomy)?;
            let passed = r.passed && r.associative;
            Ok(Outcome::new(passed, 1, serde_json::to_value(&r)?).count("associative", r.associative))
        }
        Instance::Dds { at, s } => {
            let (g, n, l) = ctx.setting(at)?;
            let aut = ctx.aut(&at.n)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(1, g.order(), s, &n)?;
            let r = dds_battery(&qc, &aut, &c)?;
            let all = r.conditions().iter().all(|&x| x);
            let none = r.conditions().iter().all(|&x| !x);
            Ok(Outcome::new(r.agree, 4, serde_json::to_value(r)?)
                .count("agree", r.agree)
                .count("all_hold", all)
                .count("none_hold", none))
        }
        Instance::McEquivalence { at, f } => {
            let (g, n, l) = ctx.setting(at)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(2, g.order(), f, &n)?;
            let m = mc_equivalence(&qc, &c)?;
            let holonomy_associative = build_quasi_extension(&qc, &c, Fiber::Holonomy)?.is_associative();
            let absolute = is_integrable(&qc, &c, true)?;
            let full_trivial = if absolute {
                let e = build_quasi_extension(&qc, &c, Fiber::Full)?;
                let k = e.order();
                (0..k).all(|a| (0..k).all(|b| (0..k).all(|d| e.associator_tilde(a, b, d) == 0)))
            } else {
                true
            };
            let passed = m.agree
                && m.commutator_formula_agrees
                && m.mixed_triples_trivial
                && holonomy_associative == m.mc_on_holonomy
                && full_trivial;
            let mut detail = serde_json::to_value(m)?;
            let obj = detail.as_object_mut().expect("object");
            obj.insert("holonomy_associative".into(), json!(holonomy_associative));
            obj.insert("absolute".into(), json!(absolute));
            obj.insert("full_associator_trivial".into(), json!(full_trivial));
            Ok(Outcome::new(passed, 1, detail)
                .count("integrable", m.mc_on_holonomy)
                .count("absolute", absolute))
        }
        Instance::Split { e, n } => {
            let eg = ctx.group(e)?;
            let sub = members_subgroup(&eg, n)?;
            match classify_splittings(&eg, &sub) {
                Ok(r) => {
                    let passed = r.counts_agree && r.correspondence_bijective && r.classes_correspond;
                    let detail = json!({
                        "E": e,
                        "N": sub.members(),
                        "split": true,
                        "splittings": r.splittings.len(),
                        "classes": r.conjugacy_classes.len(),
                        "Z1": r.cocycles,
                        "H1": r.h1_classes,
                        "correspondence_bijective": r.correspondence_bijective,
                        "classes_correspond": r.classes_correspond,
                    });
                    Ok(Outcome::new(passed, 1, detail).count("split", true))
                }
                Err(ExtensionError::NoSplittingFound) => {
                    Ok(Outcome::new(true, 1, json!({"E": e, "N": sub.members(), "split": false})).count("split", false))
                }
                Err(err) => Err(err.into()),
            }
        }
        Instance::Oracle { at, p } => {
            let (g, n, l) = ctx.setting(at)?;
            ctx.within(cochain_count(g.order(), n.order(), *p))?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let found = cocycles(qc, *p, ctx.shards);
            let classes = cohomology_classes(&qc, &found, Convention::default()).len();
            let oracle = abelian_oracle(&g, &n, &l, *p)?;
            let passed = found.len() as u128 == oracle.cocycles && classes as u128 == oracle.classes;
            let detail = json!({
                "G": at.g, "N": at.n, "L": at.l, "p": p,
                "Z": found.len(), "H": classes,
                "oracle_Z": oracle.cocycles, "oracle_B": oracle.coboundaries, "oracle_H": oracle.classes,
            });
            Ok(Outcome::new(passed, 2, detail))
        }
        Instance::Untwist { g } => {
            let grp = ctx.group(g)?;
            let u = untwist_check(&grp);
            let r = restriction_check(&grp);
            let passed = u.passed && r.trivial_base_is_fiber && r.trivial_fiber_is_base;
            let detail = json!({"G": g, "untwist": u, "restriction": r});
            Ok(Outcome::new(passed, u.pairs as u64 + u.morphisms as u64, detail))
        }
        Instance::Vectors { g } => {
            let grp = ctx.group(g)?;
            let mut passed = true;
            let mut checks = 0;
            let mut detail = serde_json::Map::new();
            detail.insert("G".into(), json!(g));
            for kind in [TensorKind::Twisted, TensorKind::Untwisted] {
                let cat = BundleCategory::fiber(&grp).with_tensor(kind);
                let v = vectors_and_preservation(&cat);
                let defect = interchange_defect(&cat);
                passed &= v.passed && defect.is_none();
                checks += v.checked as u64;
                detail.insert(
                    format!("{kind:?}").to_lowercase(),
                    json!({"vectors": v, "interchange_defect": defect}),
                );
            }
            Ok(Outcome::new(passed, checks, Value::Object(detail)))
        }
        Instance::Pentagon { at, f, samples, seed } => {
            let (g, n, l) = ctx.setting(at)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(2, g.order(), f, &n)?;
            let e = build_quasi_extension(&qc, &c, Fiber::Full)?;
            let r = pentagon_sample(&e, *samples, *seed);
            let detail = json!({
                "G": at.g, "N": at.n, "order": e.order(), "associative": e.is_associative(),
                "samples": r.samples, "violations": r.violations, "first_violation": r.first_violation,
                "vector_law_violations": r.vector_law_violations,
            });
            Ok(Outcome::new(r.passed, *samples as u64, detail).count("associative", e.is_associative()))
        }
        Instance::Chainmap { at, p, f } => {
            let (g, n, l) = ctx.setting(at)?;
            let aut = ctx.aut(&at.n)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let c = cochain(*p, g.order(), f, &n)?;
            let pushed = push_c(&qc, &aut, &c)?;
            let aut_qc = Quasicomplex::new(&*g, aut.as_group(), &pushed.action)?;
            let mut checks = 0;
            let mut mismatch = Value::Null;
            for sign in [Sign::Plus, Sign::Minus] {
                let lhs = qc.parity_boundary(&c, sign)?.map(|x| aut.conj_index(x));
                let rhs = aut_qc.parity_boundary(&pushed.cochain, sign)?;
                checks += lhs.values().len() as u64;
                if mismatch.is_null() {
                    if let Some((t, x, y)) = first_difference(&lhs, &rhs) {
                        mismatch = json!({"sign": format!("{sign:?}"), "tuple": t, "pushed_boundary": x, "boundary_of_pushed": y});
                    }
                }
            }
            Ok(Outcome::new(mismatch.is_null(), checks, json!({ "mismatch": mismatch })))
        }
        Instance::Exactness { at, p } => {
            let (g, n, l) = ctx.setting(at)?;
            let aut = ctx.aut(&at.n)?;
            let qc = Quasicomplex::new(&*g, &*n, &l)?;
            let r = exactness_check(&qc, &aut, *p, ctx.budget)?;
            let mut detail = serde_json::to_value(&r)?;
            let obj = detail.as_object_mut().expect("object");
            obj.insert("G".into(), json!(at.g));
            obj.insert("N".into(), json!(at.n));
            Ok(Outcome::new(r.passed, r.cochains as u64, detail))
        }
        Instance::Monstr { e, n, s, s2 } => {
            let eg = ctx.group(e)?;
            let sub = members_subgroup(&eg, n)?;
            let r = monoidal_morphism_check(&eg, &sub, s, s2)?;
            Ok(Outcome::new(r.passed, 1, serde_json::to_value(&r)?).count("weak_cohomologous", r.weak_cohomologous))
        }
        Instance::Functor { g, n, s } => {
            let gg = ctx.group(g)?;
            let ng = ctx.group(n)?;
            let (_, r) = functor_of_function(&gg, &ng, s)?;
            Ok(Outcome::new(r.passed && r.strict_iff_morphism, 1, serde_json::to_value(&r)?)
                .count("strict", r.strict)
                .count("morphism", r.is_morphism))
        }
    }
}

fn members_subgroup(e: &FiniteGroup, members: &[Elem]) -> Result<Subgroup> {
    if members.iter().any(|&x| x >= e.order()) {
        return Err(Error::Input("subgroup member outside the group".into()));
    }
    let sub = Subgroup::from_members(e.order(), members.iter().copied());
    if !sub.is_closed_in(e) {
        return Err(Error::Input("members do not form a subgroup".into()));
    }
    Ok(sub)
}

/// Normal subgroups of `E` selected by a member list (`0,3`) or by the
/// isomorphism type of a group reference; all of them when `spec` is absent.
pub fn select_normal_subgroups(e: &FiniteGroup, spec: Option<&str>) -> Result<Vec<Subgroup>> {
    let normal = subgroups(e).into_iter().filter(|s| s.is_normal_in(e));
    let Some(spec) = spec else {
        return Ok(normal.collect());
    };
    let members: Option<Vec<Elem>> = spec.split(',').map(|x| x.trim().parse().ok()).collect();
    if let (Some(members), true) = (members, spec.contains(',') || load_group(spec).is_err()) {
        let sub = members_subgroup(e, &members)?;
        if !sub.is_normal_in(e) {
            return Err(ExtensionError::NotNormal.into());
        }
        return Ok(vec![sub]);
    }
    let target = load_group(spec)?;
    let mut out = Vec::new();
    for s in normal {
        if s.order() == target.order() && find_isomorphism(&s.to_group(e, "N"), &target)?.is_some() {
            out.push(s);
        }
    }
    Ok(out)
}

fn pairs(opts: &VerifyOptions, defaults: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut gs: Vec<&str> = Vec::new();
    let mut ns: Vec<&str> = Vec::new();
    for &(g, n) in defaults {
        if !gs.contains(&g) {
            gs.push(g);
        }
        if !ns.contains(&n) {
            ns.push(n);
        }
    }
    match (&opts.g, &opts.n) {
        (Some(g), Some(n)) => vec![(g.clone(), n.clone())],
        (Some(g), None) => ns.iter().map(|n| (g.clone(), n.to_string())).collect(),
        (None, Some(n)) => gs.iter().map(|g| (g.to_string(), n.clone())).collect(),
        (None, None) => defaults.iter().map(|&(g, n)| (g.to_string(), n.to_string())).collect(),
    }
}

fn small_pairs() -> Vec<(&'static str, &'static str)> {
    SMALL.iter().flat_map(|&g| SMALL.iter().map(move |&n| (g, n))).collect()
}

fn groups_list(opt: &Option<String>, defaults: &[&str]) -> Vec<String> {
    match opt {
        Some(g) => vec![g.clone()],
        None => defaults.iter().map(|s| s.to_string()).collect(),
    }
}

fn degrees(opts: &VerifyOptions, defaults: &[usize]) -> Vec<usize> {
    opts.p.map_or_else(|| defaults.to_vec(), |p| vec![p])
}

fn fibers(ctx: &Ctx, g: &str, n: &str, scope: &LScope) -> Result<Vec<Quasiaction>> {
    let gg = ctx.group(g)?;
    let aut = ctx.aut(n)?;
    Ok(scope.resolve(&gg, &aut)?.into_iter().map(|(_, l)| l).collect())
}

fn random_cochain(rng: &mut Sampler, base_order: usize, coeff_order: usize, degree: usize) -> Vec<Elem> {
    let mut values = vec![0; table_len(base_order, degree)];
    for pos in free_positions(base_order, degree) {
        values[pos] = rng.index(coeff_order);
    }
    values
}

/// Every normalized cochain, after a budget check.
fn all_cochains(ctx: &Ctx, base_order: usize, coeff_order: usize, degree: usize) -> Result<Vec<Vec<Elem>>> {
    ctx.within(cochain_count(base_order, coeff_order, degree))?;
    Ok(NormalizedCochains::new(base_order, coeff_order, degree).map(Cochain::into_values).collect())
}

fn cocycle_tables(ctx: &Ctx, g: &str, n: &str, l: &Quasiaction, degree: usize) -> Result<Vec<Vec<Elem>>> {
    let (gg, ng) = (ctx.group(g)?, ctx.group(n)?);
    ctx.within(cochain_count(gg.order(), ng.order(), degree))?;
    let qc = Quasicomplex::new(&*gg, &*ng, l)?;
    Ok(cocycles(qc, degree, ctx.shards).into_iter().map(Cochain::into_values).collect())
}

/// Normalized sections of `E -> E/N` on coset indices.
fn sections(q: &crate::groups::Quotient) -> Vec<Vec<Elem>> {
    let mut out = vec![vec![0]];
    for coset in &q.cosets[1..] {
        out = out
            .into_iter()
            .flat_map(|s| {
                coset.iter().map(move |&x| {
                    let mut t = s.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn instances_with(ctx: &Ctx, suite: Suite, opts: &VerifyOptions) -> Result<Vec<Instance>> {
    let all = LScope::All;
    let scope = opts.l.as_ref().unwrap_or(&all);
    let mut rng = Sampler::new(opts.seed);
    let mut out = Vec::new();
    match suite {
        Suite::Boundary => {
            for (g, n) in pairs(opts, &small_pairs()) {
                let (m, k) = (ctx.group(&g)?.order(), ctx.group(&n)?.order());
                for l in fibers(ctx, &g, &n, scope)? {
                    for p in degrees(opts, &[0, 1, 2, 3]) {
                        let at = Setting::new(&g, &n, &l);
                        let count = cochain_count(m, k, p);
                        let tables = if opts.exhaustive || count <= BOUNDARY_EXHAUSTIVE_CAP {
                            all_cochains(ctx, m, k, p)?
                        } else {
                            let samples = opts.samples.unwrap_or(BOUNDARY_SAMPLES);
                            (0..samples).map(|_| random_cochain(&mut rng, m, k, p)).collect()
                        };
                        out.extend(tables.into_iter().map(|f| Instance::Boundary { at: at.clone(), p, f }));
                    }
                }
            }
        }
        Suite::Roundtrip | Suite::McEquivalence => {
            for (g, n) in pairs(opts, &small_pairs()) {
                for l in fibers(ctx, &g, &n, scope)? {
                    let at = Setting::new(&g, &n, &l);
                    for f in cocycle_tables(ctx, &g, &n, &l, 2)? {
                        out.push(match suite {
                            Suite::Roundtrip => Instance::Roundtrip { at: at.clone(), f },
                            _ => Instance::McEquivalence { at: at.clone(), f },
                        });
                    }
                }
            }
        }
        Suite::Dds => {
            for (g, n) in pairs(opts, DDS_PAIRS) {
                let (m, k) = (ctx.group(&g)?.order(), ctx.group(&n)?.order());
                for l in fibers(ctx, &g, &n, scope)? {
                    let at = Setting::new(&g, &n, &l);
                    for s in all_cochains(ctx, m, k, 1)? {
                        out.push(Instance::Dds { at: at.clone(), s });
                    }
                }
            }
        }
        Suite::Split => {
            for e in groups_list(&opts.e, SPLIT_GROUPS) {
                let eg = ctx.group(&e)?;
                for sub in select_normal_subgroups(&eg, opts.n.as_deref())? {
                    out.push(Instance::Split { e: e.clone(), n: sub.members().to_vec() });
                }
            }
        }
        Suite::Oracle => {
            let actions = LScope::Actions;
            let scope = opts.l.as_ref().unwrap_or(&actions);
            for (g, n) in pairs(opts, ORACLE_PAIRS) {
                let gg = ctx.group(&g)?;
                for l in fibers(ctx, &g, &n, scope)? {
                    if !l.is_action(&*gg) {
                        continue;
                    }
                    for p in degrees(opts, &[1, 2]) {
                        out.push(Instance::Oracle { at: Setting::new(&g, &n, &l), p });
                    }
                }
            }
        }
        Suite::Untwist => {
            out.extend(groups_list(&opts.g, FIBER_GROUPS).into_iter().map(|g| Instance::Untwist { g }));
        }
        Suite::Vectors => {
            out.extend(groups_list(&opts.g, FIBER_GROUPS).into_iter().map(|g| Instance::Vectors { g }));
        }
        Suite::Pentagon => {
            let samples = opts.samples.unwrap_or(PENTAGON_SAMPLES);
            for (g, n) in pairs(opts, PENTAGON_PAIRS) {
                let (m, k) = (ctx.group(&g)?.order(), ctx.group(&n)?.order());
                let ls = fibers(ctx, &g, &n, scope)?;
                for _ in 0..PENTAGON_INSTANCES {
                    let l = &ls[rng.index(ls.len())];
                    let f = random_cochain(&mut rng, m, k, 2);
                    let seed = rng.seed();
                    out.push(Instance::Pentagon { at: Setting::new(&g, &n, l), f, samples, seed });
                }
            }
        }
        Suite::Chainmap => {
            for (g, n) in pairs(opts, CHAINMAP_PAIRS) {
                let (m, k) = (ctx.group(&g)?.order(), ctx.group(&n)?.order());
                for l in fibers(ctx, &g, &n, scope)? {
                    let at = Setting::new(&g, &n, &l);
                    for p in degrees(opts, &[0, 1, 2]) {
                        for f in all_cochains(ctx, m, k, p)? {
                            out.push(Instance::Chainmap { at: at.clone(), p, f });
                        }
                    }
                }
            }
        }
        Suite::Exactness => {
            for (g, n) in pairs(opts, EXACTNESS_PAIRS) {
                for l in fibers(ctx, &g, &n, scope)? {
                    for p in degrees(opts, &[0, 1, 2]) {
                        out.push(Instance::Exactness { at: Setting::new(&g, &n, &l), p });
                    }
                }
            }
        }
        Suite::Monstr => {
            for e in groups_list(&opts.e, MONSTR_GROUPS) {
                let eg = ctx.group(&e)?;
                for sub in select_normal_subgroups(&eg, opts.n.as_deref())? {
                    if opts.n.is_none() && (sub.is_trivial() || sub.is_whole()) {
                        continue;
                    }
                    match classify_splittings(&eg, &sub) {
                        Ok(_) => {}
                        Err(ExtensionError::NoSplittingFound) => continue,
                        Err(err) => return Err(err.into()),
                    }
                    let q = quotient(&eg, &sub).ok_or(ExtensionError::NotNormal)?;
                    let secs = sections(&q);
                    ctx.within((secs.len() * secs.len()) as u128)?;
                    for s in &secs {
                        for s2 in &secs {
                            out.push(Instance::Monstr {
                                e: e.clone(),
                                n: sub.members().to_vec(),
                                s: s.clone(),
                                s2: s2.clone(),
                            });
                        }
                    }
                }
            }
        }
        Suite::Functor => {
            for (g, n) in pairs(opts, FUNCTOR_PAIRS) {
                let (m, k) = (ctx.group(&g)?.order(), ctx.group(&n)?.order());
                for s in all_cochains(ctx, m, k, 1)? {
                    out.push(Instance::Functor { g: g.clone(), n: n.clone(), s });
                }
            }
        }
    }
    Ok(out)
}

/// The instances a suite run visits.
pub fn instances(suite: Suite, opts: &VerifyOptions) -> Result<Vec<Instance>> {
    instances_with(&Ctx::new(opts.budget, opts.shards), suite, opts)
}

/// Checks one instance; errors other than budget overruns are failures of
/// the instance.
pub fn check(instance: &Instance, budget: u128, shards: usize) -> Result<Outcome> {
    settle(check_with(&Ctx::new(budget, shards), instance))
}

fn settle(r: Result<Outcome>) -> Result<Outcome> {
    match r {
        Err(e) if !is_budget(&e) && !matches!(e, Error::Io(_) | Error::Json(_) | Error::Input(_)) => {
            Ok(Outcome::new(false, 1, json!({ "error": e.to_string() })))
        }
        other => other,
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    let ctx = Ctx::new(opts.budget, opts.shards);
    let list = instances_with(&ctx, suite, opts)?;
    let outcomes: Vec<Result<Outcome>> = list.par_iter().map(|i| settle(check_with(&ctx, i))).collect();
    let mut report = SuiteReport {
        suite,
        generator: GENERATOR,
        seed: opts.seed,
        instances: list.len(),
        checks: 0,
        failures: 0,
        passed: true,
        tally: BTreeMap::new(),
        details: Vec::new(),
        witnesses: Vec::new(),
    };
    for (instance, outcome) in list.into_iter().zip(outcomes) {
        let o = outcome?;
        report.checks += o.checks;
        for (k, v) in &o.tally {
            *report.tally.entry(k.to_string()).or_default() += v;
        }
        if suite.lists_details() {
            report.details.push(o.detail.clone());
        }
        if !o.passed {
            report.failures += 1;
            if report.witnesses.len() < WITNESS_CAP {
                report.witnesses.push(Witness { instance, detail: o.detail });
            }
        }
    }
    report.passed = report.failures == 0;
    Ok(report)
}

/// Every suite with the same options, in [`Suite::ALL`] order.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.iter().map(|&s| run_suite(s, opts)).collect()
}

pub fn all_to_json(reports: &[SuiteReport]) -> Value {
    json!({
        "schema": 1,
        "suite": "all",
        "passed": reports.iter().all(|r| r.passed),
        "suites": reports.iter().map(SuiteReport::to_json).collect::<Vec<_>>(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplayEntry {
    pub instance: Instance,
    pub passed: bool,
    pub detail: Value,
}

/// Re-runs witnesses. Accepts a bare instance, a witness
/// (`{"instance": ..}`), a suite report or an `all` report.
pub fn replay(v: &Value, budget: u128, shards: usize) -> Result<Vec<ReplayEntry>> {
    let mut list = Vec::new();
    collect_instances(v, &mut list)?;
    if list.is_empty() {
        return Err(Error::Input("no replayable instance found".into()));
    }
    list.into_iter()
        .map(|instance| {
            let o = check(&instance, budget, shards)?;
            Ok(ReplayEntry { instance, passed: o.passed, detail: o.detail })
        })
        .collect()
}

fn collect_instances(v: &Value, out: &mut Vec<Instance>) -> Result<()> {
    if let Some(suites) = v.get("suites").and_then(Value::as_array) {
        for s in suites {
            collect_instances(s, out)?;
        }
    } else if let Some(ws) = v.get("witnesses").and_then(Value::as_array) {
        for w in ws {
            collect_instances(w, out)?;
        }
    } else if let Some(i) = v.get("instance") {
        out.push(serde_json::from_value(i.clone())?);
    } else if v.get("suite").is_some() {
        out.push(serde_json::from_value(v.clone())?);
    }
    Ok(())
}
