//! JSON file formats for groups, cochains and quasi-extensions.
//!
//! A group reference is either a builtin name (`cyclic:4`, `klein`, `sym:3`,
//! `dihedral:4`, `quat:8`, `trivial`) or a path to a group file. Relative
//! paths inside a file are resolved against that file's directory first.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cochains::{table_len, Cochain, Quasiaction, Quasicomplex, MAX_DEGREE};
use crate::error::{Error, GroupError, Result};
use crate::extensions::{build_on_subgroup, build_quasi_extension, Fiber, QuasiExtension};
use crate::groups::{catalog, validate_group, Elem, FiniteGroup, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<Elem>>,
}

impl GroupFile {
    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile {
            name: g.name().to_string(),
            order: g.order(),
            labels: g.labels().map(<[String]>::to_vec),
            table: g.rows(),
        }
    }

    pub fn into_group(self) -> Result<FiniteGroup> {
        if self.order != self.table.len() {
            return Err(Error::Input(format!(
                "declared order {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        Ok(validate_group(self.name, &self.table, self.labels)?)
    }
}

fn resolve_path(reference: &str, base_dir: Option<&Path>) -> Option<PathBuf> {
    let p = Path::new(reference);
    if p.is_relative() {
        if let Some(dir) = base_dir {
            let joined = dir.join(p);
            if joined.is_file() {
                return Some(joined);
            }
        }
    }
    p.is_file().then(|| p.to_path_buf())
}

/// Resolves a builtin name or a group file.
pub fn load_group(reference: &str) -> Result<FiniteGroup> {
    load_group_from(reference, None)
}

pub fn load_group_from(reference: &str, base_dir: Option<&Path>) -> Result<FiniteGroup> {
    match catalog::builtin(reference) {
        Ok(g) => Ok(g),
        Err(e) => match resolve_path(reference, base_dir) {
            Some(path) => {
                let file: GroupFile = serde_json::from_str(&fs::read_to_string(path)?)?;
                file.into_group()
            }
            None => Err(e.into()),
        },
    }
}

/// Builtin names are tried first, so this only fails for unknown names
/// that are not files either.
pub fn is_group_ref(reference: &str) -> bool {
    catalog::builtin(reference).is_ok() || Path::new(reference).is_file()
}

/// Nested arrays of depth `p` indexed by the arguments, `a1` outermost.
pub fn nest_values(values: &[Elem], base_order: usize, degree: usize) -> Value {
    if degree == 0 {
        return Value::from(values[0]);
    }
    let stride = values.len() / base_order;
    Value::Array(
        values
            .chunks(stride)
            .map(|chunk| nest_values(chunk, base_order, degree - 1))
            .collect(),
    )
}

/// Inverse of [`nest_values`], checking the shape.
pub fn flatten_values(v: &Value, base_order: usize, degree: usize) -> Result<Vec<Elem>> {
    let mut out = Vec::with_capacity(table_len(base_order, degree));
    flatten_into(v, base_order, degree, &mut out)?;
    Ok(out)
}

fn flatten_into(v: &Value, base_order: usize, degree: usize, out: &mut Vec<Elem>) -> Result<()> {
    if degree == 0 {
        let x = v
            .as_u64()
            .ok_or_else(|| Error::Input(format!("expected a nonnegative integer, found {v}")))?;
        out.push(x as Elem);
        return Ok(());
    }
    let arr = v
        .as_array()
        .filter(|a| a.len() == base_order)
        .ok_or_else(|| Error::Input(format!("expected an array of length {base_order} at nesting depth {degree}")))?;
    for x in arr {
        flatten_into(x, base_order, degree - 1, out)?;
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CochainFile {
    pub p: usize,
    #[serde(rename = "G")]
    pub g: String,
    #[serde(rename = "N")]
    pub n: String,
    /// Automorphism image arrays, one per element of `G`; trivial if absent.
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<Vec<Elem>>>,
    pub f: Value,
}

/// A validated cochain together with its groups and quasiaction.
#[derive(Debug, Clone)]
pub struct CochainInput {
    pub g_ref: String,
    pub n_ref: String,
    pub g: FiniteGroup,
    pub n: FiniteGroup,
    pub action: Quasiaction,
    pub cochain: Cochain,
}

impl CochainInput {
    pub fn quasicomplex(&self) -> Quasicomplex<'_, FiniteGroup> {
        Quasicomplex::new(&self.g, &self.n, &self.action).expect("validated at load")
    }
}

impl CochainFile {
    pub fn from_parts(g_ref: &str, n_ref: &str, action: &Quasiaction, c: &Cochain) -> Self {
        CochainFile {
            p: c.degree(),
            g: g_ref.to_string(),
            n: n_ref.to_string(),
            l: Some(action.values().iter().map(|a| a.images().to_vec()).collect()),
            f: nest_values(c.values(), c.base_order(), c.degree()),
        }
    }

    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<CochainInput> {
        if self.p > MAX_DEGREE {
            return Err(crate::error::CochainError::DegreeOutOfRange { degree: self.p, max: MAX_DEGREE }.into());
        }
        let g = load_group_from(&self.g, base_dir)?;
        let n = load_group_from(&self.n, base_dir)?;
        let action = match &self.l {
            Some(images) => {
                if images.len() != g.order() {
                    return Err(Error::Input(format!(
                        "L has {} entries, G has order {}",
                        images.len(),
                        g.order()
                    )));
                }
                Quasiaction::from_images(&n, images.clone())?
            }
            None => Quasiaction::trivial(g.order(), n.order()),
        };
        let values = flatten_values(&self.f, g.order(), self.p)?;
        let cochain = Cochain::new(self.p, g.order(), values)?;
        cochain.validate(&n)?;
        Ok(CochainInput { g_ref: self.g.clone(), n_ref: self.n.clone(), g, n, action, cochain })
    }
}

pub fn load_cochain(path: &Path) -> Result<CochainInput> {
    let file: CochainFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.resolve(path.parent())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FiberSpec {
    Mode(Fiber),
    /// Members of an invariant subgroup of `N`.
    Members(Vec<Elem>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CochainRef {
    Path(String),
    Inline(CochainFile),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionFile {
    pub fiber: FiberSpec,
    pub base: String,
    pub cochain: CochainRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<Elem>>>,
}

#[derive(Debug, Clone)]
pub struct ExtensionInput {
    pub cochain: CochainInput,
    pub extension: QuasiExtension,
}

impl ExtensionFile {
    pub fn from_extension(input: &CochainInput, fiber: FiberSpec, e: &QuasiExtension) -> Self {
        ExtensionFile {
            fiber,
            base: input.g_ref.clone(),
            cochain: CochainRef::Inline(CochainFile::from_parts(
                &input.g_ref,
                &input.n_ref,
                &input.action,
                &input.cochain,
            )),
            table: Some(e.rows()),
        }
    }

    pub fn resolve(&self, base_dir: Option<&Path>) -> Result<ExtensionInput> {
        let cochain = match &self.cochain {
            CochainRef::Inline(c) => c.resolve(base_dir)?,
            CochainRef::Path(p) => {
                let path = resolve_path(p, base_dir)
                    .ok_or_else(|| Error::Input(format!("cochain file `{p}` not found")))?;
                load_cochain(&path)?
            }
        };
        let base = load_group_from(&self.base, base_dir)?;
        if base.rows() != cochain.g.rows() {
            return Err(Error::Input("base group differs from the cochain's G".into()));
        }
        if cochain.cochain.degree() != 2 {
            return Err(Error::Input(format!("extensions need a 2-cochain, found p = {}", cochain.cochain.degree())));
        }
        let qc = cochain.quasicomplex();
        let extension = match &self.fiber {
            FiberSpec::Mode(mode) => build_quasi_extension(&qc, &cochain.cochain, *mode)?,
            FiberSpec::Members(members) => {
                if members.iter().any(|&x| x >= cochain.n.order()) {
                    return Err(GroupError::Malformed("fiber member outside N".into()).into());
                }
                let sub = Subgroup::from_members(cochain.n.order(), members.iter().copied());
                build_on_subgroup(&qc, &cochain.cochain, sub)?
            }
        };
        if let Some(table) = &self.table {
            if *table != extension.rows() {
                return Err(Error::Input("explicit table differs from the one the cochain defines".into()));
            }
        }
        Ok(ExtensionInput { cochain, extension })
    }
}

pub fn load_extension(path: &Path) -> Result<ExtensionInput> {
    let file: ExtensionFile = serde_json::from_str(&fs::read_to_string(path)?)?;
    file.resolve(path.parent())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nesting_roundtrips() {
        for (m, p) in [(2, 0), (3, 1), (2, 2), (3, 2), (2, 3)] {
            let vals: Vec<Elem> = (0..table_len(m, p)).collect();
            let v = nest_values(&vals, m, p);
            assert_eq!(flatten_values(&v, m, p).unwrap(), vals);
        }
        assert_eq!(nest_values(&[0, 0, 0, 1], 2, 2), json!([[0, 0], [0, 1]]));
        assert!(flatten_values(&json!([[0, 0], [0]]), 2, 2).is_err());
        assert!(flatten_values(&json!([[0, 0], [0, -1]]), 2, 2).is_err());
    }

    #[test]
    fn cochain_validation() {
        let ok = CochainFile { p: 2, g: "cyclic:2".into(), n: "cyclic:2".into(), l: None, f: json!([[0, 0], [0, 1]]) };
        let c = ok.resolve(None).unwrap();
        assert_eq!(c.cochain.values(), &[0, 0, 0, 1]);
        let unnormalized = CochainFile { f: json!([[0, 1], [0, 1]]), ..ok.clone() };
        assert!(matches!(unnormalized.resolve(None), Err(Error::Cochain(_))));
        let not_aut = CochainFile { l: Some(vec![vec![0, 1], vec![0, 0]]), ..ok.clone() };
        assert!(not_aut.resolve(None).is_err());
        let out_of_range = CochainFile { f: json!([[0, 0], [0, 2]]), ..ok };
        assert!(out_of_range.resolve(None).is_err());
    }

    #[test]
    fn group_files() {
        let f = GroupFile::from_group(&catalog::cyclic(3));
        assert_eq!(f.clone().into_group().unwrap().rows(), catalog::cyclic(3).rows());
        let bad = GroupFile { order: 4, ..f.clone() };
        assert!(bad.into_group().is_err());
        let mut nonassoc = f;
        nonassoc.table = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(nonassoc.into_group().is_err());
        assert!(load_group("no-such-group").is_err());
    }

    #[test]
    fn extension_from_inline_cochain() {
        let c = CochainFile { p: 2, g: "cyclic:2".into(), n: "cyclic:2".into(), l: None, f: json!([[0, 0], [0, 1]]) };
        let file = ExtensionFile {
            fiber: FiberSpec::Mode(Fiber::Full),
            base: "cyclic:2".into(),
            cochain: CochainRef::Inline(c),
            table: None,
        };
        let e = file.resolve(None).unwrap();
        assert_eq!(e.extension.order(), 4);
        let text = serde_json::to_string(&ExtensionFile::from_extension(&e.cochain, file.fiber.clone(), &e.extension)).unwrap();
        let back: ExtensionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(None).unwrap().extension.rows(), e.extension.rows());
        let wrong_fiber = ExtensionFile { fiber: FiberSpec::Members(vec![0]), ..back };
        assert!(wrong_fiber.resolve(None).is_err());
    }
}
