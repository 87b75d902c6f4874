//! Machine-readable tables of expected invariants, census counts of the
//! coclass forests, and a verifier that diffs computed data against them.
//!
//! Notation follows the tables: abelian types like `2³1`, transfer kernel
//! types like `(0043)`, action flags like `2*` (the star is kept but only
//! the digit is compared), automorphism group orders like `2^3*3^14`.

pub mod pattern;
pub mod verify;

use coclass_invariants::{AbelianType, Tkt};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::path::Path;

pub use verify::{verify_tables, Context, Report, Status};

#[derive(Debug, thiserror::Error)]
pub enum FixtureError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: schema error: {msg}")]
    Schema { path: String, msg: String },
    #[error("table {table}: duplicate selector {select}")]
    Duplicate { table: String, select: String },
    #[error("table {table}: {msg}")]
    Invalid { table: String, msg: String },
    #[error("duplicate table id {0}")]
    DuplicateTable(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum KappaMode {
    /// Positionwise equality.
    #[default]
    Exact,
    /// Equality up to simultaneous relabeling of the maximal subgroups.
    Equivalent,
}

/// Expected values; absent fields are not compared.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fields {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dp: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dl: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau2: Option<String>,
    #[serde(default, rename = "type", skip_serializing_if = "Option::is_none")]
    pub ty: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut: Option<String>,
}

/// Which vertices a table describes, for rows without a selector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum Scope {
    /// Descendants of the class of this selector.
    Tree(String),
    /// The sporadic part of the forest of this coclass.
    Sporadic(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Row {
    /// Number of isomorphism classes described by the row.
    pub count: u32,
    pub lo: u32,
    /// Absent for cumulative rows.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub select: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Database identifier, stored verbatim and never resolved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identifier: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa_mode: Option<KappaMode>,
    /// The count applies to the children of each parent separately.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub per_parent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<Erratum>,
    pub fields: Fields,
}

/// A corrected misprint: `printed` holds the original values of the
/// corrected keys (`select` or field names).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Erratum {
    pub printed: std::collections::BTreeMap<String, String>,
    pub reason: String,
}

const FIELD_NAMES: [&str; 12] = ["k", "dp", "dl", "zeta", "mu", "nu", "tau1", "tau2", "type", "kappa", "sigma", "aut"];

impl Row {
    pub fn label(&self) -> String {
        match (&self.select, &self.name) {
            (Some(s), Some(n)) => format!("{s} ({n})"),
            (Some(s), None) => s.clone(),
            (None, _) => format!("{} cumulative at lo {}", self.count, self.lo),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableFixture {
    pub id: String,
    pub title: String,
    pub coclass: u32,
    pub scope: Scope,
    #[serde(default)]
    pub kappa_mode: KappaMode,
    pub rows: Vec<Row>,
}

impl TableFixture {
    fn validate(&self) -> Result<(), FixtureError> {
        let bad = |msg: String| FixtureError::Invalid { table: self.id.clone(), msg };
        let mut seen = BTreeSet::new();
        for row in &self.rows {
            if let Some(sel) = &row.select {
                let tuples = pattern::expand(sel).map_err(|e| bad(e.to_string()))?;
                if tuples.iter().any(|t| t.log_order() != row.lo) {
                    return Err(bad(format!("{sel} does not have lo {}", row.lo)));
                }
                let key = (sel.clone(), serde_json::to_string(&row.fields).unwrap_or_default());
                if !seen.insert(key) {
                    return Err(FixtureError::Duplicate { table: self.id.clone(), select: sel.clone() });
                }
            }
            let f = &row.fields;
            for t in [&f.zeta, &f.tau1, &f.tau2].into_iter().flatten() {
                t.parse::<AbelianType>().map_err(|e| bad(e.to_string()))?;
            }
            // G/G' has order 9, so a metabelian G' has order 3^(lo-2)
            if let (Some(2), Some(t)) = (f.dl, &f.tau2) {
                let o = t.parse::<AbelianType>().map_err(|e| bad(e.to_string()))?.order_log();
                if o + 2 != row.lo {
                    return Err(bad(format!("{}: tau2 {t} does not have order 3^{}", row.label(), row.lo - 2)));
                }
            }
            if let Some(e) = &row.erratum {
                if e.printed.is_empty() || e.reason.trim().is_empty() {
                    return Err(bad(format!("{}: empty erratum", row.label())));
                }
                if let Some(k) = e.printed.keys().find(|k| *k != "select" && !FIELD_NAMES.contains(&k.as_str())) {
                    return Err(bad(format!("{}: erratum for unknown key {k}", row.label())));
                }
            }
            if let Some(k) = &f.kappa {
                k.parse::<Tkt>().map_err(|e| bad(e.to_string()))?;
            }
            if let Some(s) = &f.sigma {
                sigma_digit(s).ok_or_else(|| bad(format!("bad sigma {s:?}")))?;
            }
        }
        Ok(())
    }
}

/// Base digit of an action flag such as `2*`.
pub fn sigma_digit(s: &str) -> Option<u8> {
    let t = s.trim().trim_end_matches('*');
    match t {
        "0" | "1" | "2" => t.parse().ok(),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrunkVertex {
    pub j: u32,
    pub select: String,
    pub kappa: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identifier: Option<String>,
}

/// Numbers of children of step sizes 1 and 2, and how many are capable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescendantCounts {
    pub n1: u32,
    pub c1: u32,
    pub n2: u32,
    pub c2: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrunkDescendants {
    pub j: u32,
    pub metabelian: DescendantCounts,
    /// Including non-metabelian children; never computed.
    pub all: DescendantCounts,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootFixture {
    pub name: String,
    pub select: String,
    #[serde(rename = "type")]
    pub ty: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub identifier: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PeriodicityFixture {
    pub pre: u32,
    pub len: u32,
    pub start: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BranchFixture {
    pub e: u32,
    /// All vertices, including non-metabelian ones.
    pub total: u32,
    pub metabelian: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFixture {
    pub root: String,
    pub dp: u32,
    pub wd: u32,
    pub ic: u32,
    pub periodicity: PeriodicityFixture,
    pub branches: Vec<BranchFixture>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SporadicFixture {
    /// Metabelian top vertices without children.
    pub isolated: u32,
    /// Metabelian top vertices with children.
    pub roots: u32,
    /// Metabelian children with positive action flag.
    pub distinguished: u32,
    /// Metabelian children with sigma = 0.
    pub sigma0: u32,
    pub metabelian: u32,
    pub nonmetabelian_tops: u32,
    pub nonmetabelian_children: u32,
    pub total: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForestFixture {
    pub r: u32,
    pub roots: Vec<RootFixture>,
    pub trees: Vec<TreeFixture>,
    /// Roots grouped into classes of isomorphic trees.
    pub tree_classes: Vec<Vec<String>>,
    pub sporadic: SporadicFixture,
    pub ic: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Census {
    pub trunk: Vec<TrunkVertex>,
    pub trunk_descendants: Vec<TrunkDescendants>,
    pub forests: Vec<ForestFixture>,
}

impl Census {
    pub fn forest(&self, r: u32) -> Option<&ForestFixture> {
        self.forests.iter().find(|f| f.r == r)
    }

    fn validate(&self) -> Result<(), FixtureError> {
        let bad = |msg: String| FixtureError::Invalid { table: "census".into(), msg };
        for t in &self.trunk {
            pattern::expand(&t.select).map_err(|e| bad(e.to_string()))?;
            t.kappa.parse::<Tkt>().map_err(|e| bad(e.to_string()))?;
        }
        let mut rs = BTreeSet::new();
        for f in &self.forests {
            if !rs.insert(f.r) {
                return Err(bad(format!("forest {} listed twice", f.r)));
            }
            let names: BTreeSet<&str> = f.roots.iter().map(|r| r.name.as_str()).collect();
            if names.len() != f.roots.len() {
                return Err(bad(format!("forest {}: duplicate root name", f.r)));
            }
            for r in &f.roots {
                let t = pattern::expand(&r.select).map_err(|e| bad(e.to_string()))?;
                if t.len() != 1 {
                    return Err(bad(format!("root {} must name one tuple", r.select)));
                }
            }
            for t in &f.trees {
                if !names.contains(t.root.as_str()) {
                    return Err(bad(format!("forest {}: unknown tree root {}", f.r, t.root)));
                }
            }
            let classed: Vec<&String> = f.tree_classes.iter().flatten().collect();
            if classed.len() != f.roots.len() || classed.iter().any(|c| !names.contains(c.as_str())) {
                return Err(bad(format!("forest {}: tree classes must partition the roots", f.r)));
            }
        }
        Ok(())
    }
}

/// All tables and the census.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FixtureSet {
    pub tables: Vec<TableFixture>,
    pub census: Option<Census>,
}

const BUILTIN: &[(&str, &str)] = &[
    ("coclass1.json", include_str!("../data/coclass1.json")),
    ("sporadic-f4.json", include_str!("../data/sporadic-f4.json")),
    ("sporadic-f5.json", include_str!("../data/sporadic-f5.json")),
    ("tree-4-p9.json", include_str!("../data/tree-4-p9.json")),
    ("tree-4-r2.json", include_str!("../data/tree-4-r2.json")),
    ("tree-4-r4.json", include_str!("../data/tree-4-r4.json")),
    ("tree-4-r5.json", include_str!("../data/tree-4-r5.json")),
    ("tree-5-p11.json", include_str!("../data/tree-5-p11.json")),
    ("tree-5-r2.json", include_str!("../data/tree-5-r2.json")),
    ("tree-5-r3.json", include_str!("../data/tree-5-r3.json")),
    ("tree-5-r4.json", include_str!("../data/tree-5-r4.json")),
    ("census.json", include_str!("../data/census.json")),
];

impl FixtureSet {
    /// The tables shipped with the crate.
    pub fn builtin() -> Result<Self, FixtureError> {
        let mut set = FixtureSet::default();
        for (name, text) in BUILTIN {
            set.add_json(name, text)?;
        }
        Ok(set)
    }

    /// A single JSON file, or every `*.json` file of a directory in name
    /// order. A document with a `forests` key is the census.
    pub fn load(path: &Path) -> Result<Self, FixtureError> {
        let io = |e: std::io::Error| FixtureError::Io { path: path.display().to_string(), source: e };
        let mut set = FixtureSet::default();
        if path.is_dir() {
            let mut files: Vec<_> = std::fs::read_dir(path)
                .map_err(io)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            files.sort();
            for f in files {
                let text = std::fs::read_to_string(&f)
                    .map_err(|e| FixtureError::Io { path: f.display().to_string(), source: e })?;
                set.add_json(&f.display().to_string(), &text)?;
            }
        } else {
            let text = std::fs::read_to_string(path).map_err(io)?;
            set.add_json(&path.display().to_string(), &text)?;
        }
        Ok(set)
    }

    /// Parse and add one document.
    pub fn add_json(&mut self, path: &str, text: &str) -> Result<(), FixtureError> {
        let schema = |e: serde_json::Error| FixtureError::Schema { path: path.to_string(), msg: e.to_string() };
        let value: serde_json::Value = serde_json::from_str(text).map_err(schema)?;
        if value.get("forests").is_some() {
            let census: Census = serde_json::from_value(value).map_err(schema)?;
            census.validate()?;
            if self.census.is_some() {
                return Err(FixtureError::DuplicateTable("census".into()));
            }
            self.census = Some(census);
        } else {
            let table: TableFixture = serde_json::from_value(value).map_err(schema)?;
            table.validate()?;
            if self.table(&table.id).is_some() {
                return Err(FixtureError::DuplicateTable(table.id));
            }
            self.tables.push(table);
        }
        Ok(())
    }

    pub fn table(&self, id: &str) -> Option<&TableFixture> {
        self.tables.iter().find(|t| t.id == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_loads() {
        let set = FixtureSet::builtin().unwrap();
        assert_eq!(set.tables.len(), 11);
        let census = set.census.unwrap();
        assert_eq!(census.forest(4).unwrap().roots.len(), 6);
        assert_eq!(census.forest(5).unwrap().roots.len(), 4);
    }

    #[test]
    fn sigma_digits() {
        assert_eq!(sigma_digit("2*"), Some(2));
        assert_eq!(sigma_digit("0"), Some(0));
        assert_eq!(sigma_digit("3"), None);
    }
}
