//! Structured rooted in-trees: vertices, branches, layers and exports.

use crate::TreeError;
use coclass_invariants::GroupInvariants;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub label: GroupInvariants,
    /// Selector of the representative presentation.
    pub params: String,
    pub parent: Option<usize>,
    /// lo(v) - lo(parent); 0 for the root.
    pub step: u32,
    pub mainline: bool,
    pub children: Vec<usize>,
}

impl Vertex {
    pub fn lo(&self) -> u32 {
        self.label.lo
    }

    pub fn in_degree(&self) -> usize {
        self.children.len()
    }

    pub fn out_degree(&self) -> usize {
        usize::from(self.parent.is_some())
    }
}

/// (pre-period length, period length, start of periodicity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Periodicity {
    pub pre: u32,
    pub len: u32,
    pub start: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructuredTree {
    pub name: String,
    pub root: usize,
    pub vertices: Vec<Vertex>,
    /// Largest logarithmic order constructed.
    pub window: u32,
    pub periodicity: Option<Periodicity>,
}

/// One branch B(e): the mainline vertex m_e and its descendants off the
/// mainline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub e: u32,
    pub root: usize,
    pub vertices: Vec<usize>,
}

/// Input row for `StructuredTree::new`.
pub struct VertexSpec {
    pub label: GroupInvariants,
    pub params: String,
    pub parent: Option<usize>,
}

impl StructuredTree {
    /// Build from rows whose parents refer to earlier rows. Exactly one row
    /// (the first) has no parent.
    pub fn new(name: impl Into<String>, rows: Vec<VertexSpec>, window: u32) -> Result<Self, TreeError> {
        let mut vertices: Vec<Vertex> = Vec::with_capacity(rows.len());
        for (id, row) in rows.into_iter().enumerate() {
            let step = match row.parent {
                None if id == 0 => 0,
                None => return Err(TreeError::Structure(format!("second root at vertex {id}"))),
                Some(p) if p >= id => return Err(TreeError::Structure(format!("parent {p} of {id} not earlier"))),
                Some(p) => {
                    let (lp, lc) = (vertices[p].lo(), row.label.lo);
                    if lc <= lp {
                        return Err(TreeError::Structure(format!("step size {lc} - {lp} < 1 at vertex {id}")));
                    }
                    vertices[p].children.push(id);
                    lc - lp
                }
            };
            vertices.push(Vertex {
                id,
                label: row.label,
                params: row.params,
                parent: row.parent,
                step,
                mainline: false,
                children: Vec::new(),
            });
        }
        if vertices.is_empty() {
            return Err(TreeError::Structure("empty tree".into()));
        }
        Ok(StructuredTree { name: name.into(), root: 0, vertices, window, periodicity: None })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn n_star(&self) -> u32 {
        self.vertices[self.root].lo()
    }

    /// Mark a path starting at the root as the mainline.
    pub fn set_mainline(&mut self, path: &[usize]) -> Result<(), TreeError> {
        if path.first() != Some(&self.root) {
            return Err(TreeError::Structure("mainline must start at the root".into()));
        }
        for w in path.windows(2) {
            if self.vertices[w[1]].parent != Some(w[0]) || self.vertices[w[1]].step != 1 {
                return Err(TreeError::Structure(format!("mainline breaks between {} and {}", w[0], w[1])));
            }
        }
        for v in &mut self.vertices {
            v.mainline = false;
        }
        for &v in path {
            self.vertices[v].mainline = true;
        }
        Ok(())
    }

    /// Mainline vertices ordered by lo.
    pub fn mainline(&self) -> Vec<usize> {
        let mut m: Vec<usize> = self.vertices.iter().filter(|v| v.mainline).map(|v| v.id).collect();
        m.sort_by_key(|&v| self.vertices[v].lo());
        m
    }

    pub fn mainline_at(&self, e: u32) -> Option<usize> {
        self.vertices.iter().find(|v| v.mainline && v.lo() == e).map(|v| v.id)
    }

    /// Nearest mainline ancestor (or the vertex itself).
    pub fn anchor(&self, mut v: usize) -> Option<usize> {
        loop {
            if self.vertices[v].mainline {
                return Some(v);
            }
            v = self.vertices[v].parent?;
        }
    }

    pub fn branch(&self, e: u32) -> Branch {
        let Some(m) = self.mainline_at(e) else {
            return Branch { e, root: usize::MAX, vertices: Vec::new() };
        };
        let mut vertices = vec![m];
        let mut stack: Vec<usize> = self.off_mainline_children(m);
        while let Some(v) = stack.pop() {
            vertices.push(v);
            stack.extend(self.vertices[v].children.iter().copied());
        }
        vertices.sort_unstable();
        Branch { e, root: m, vertices }
    }

    /// Children of v, leaving out the next mainline vertex.
    pub fn off_mainline_children(&self, v: usize) -> Vec<usize> {
        self.vertices[v].children.iter().copied().filter(|&c| !self.vertices[c].mainline).collect()
    }

    pub fn branch_depth(&self, b: &Branch) -> u32 {
        b.vertices.iter().map(|&v| self.vertices[v].lo() - b.e).max().unwrap_or(0)
    }

    /// Depth over the branches, the maximal distance from the mainline.
    pub fn depth(&self) -> u32 {
        self.mainline().iter().map(|&m| self.branch_depth(&self.branch(self.vertices[m].lo()))).max().unwrap_or(0)
    }

    /// Branches B(e) known to be complete in the window: e + dp <= window.
    pub fn complete_branches(&self) -> Vec<u32> {
        let dp = self.depth();
        self.mainline().iter().map(|&m| self.vertices[m].lo()).filter(|&e| e + dp <= self.window).collect()
    }

    pub fn layer(&self, n: u32) -> Vec<usize> {
        self.vertices.iter().filter(|v| v.lo() == n).map(|v| v.id).collect()
    }

    pub fn layer_sizes(&self) -> BTreeMap<u32, usize> {
        let mut m = BTreeMap::new();
        for v in &self.vertices {
            *m.entry(v.lo()).or_insert(0) += 1;
        }
        m
    }

    /// Maximal layer size within the window.
    pub fn width(&self) -> usize {
        self.layer_sizes().values().copied().max().unwrap_or(0)
    }

    /// Sum of branch sizes over the pre-period and one period.
    pub fn information_content(&self) -> Option<usize> {
        let p = self.periodicity?;
        let n = self.n_star();
        Some((n..p.start + p.len).map(|e| self.branch(e).vertices.len()).sum())
    }

    /// Descendant counts (N1, C1) of a vertex.
    pub fn descendant_numbers(&self, v: usize) -> (usize, usize) {
        let ch = &self.vertices[v].children;
        let capable = ch.iter().filter(|&&c| !self.vertices[c].children.is_empty()).count();
        (ch.len(), capable)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, TreeError> {
        serde_json::from_str(s).map_err(|e| TreeError::Structure(e.to_string()))
    }

    /// Graphviz source, edges pointing from child to parent.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", self.name.replace('"', "'"));
        let _ = writeln!(s, "  rankdir=BT;");
        let _ = writeln!(s, "  node [shape=circle, fontsize=8];");
        for v in &self.vertices {
            let shape = if v.mainline { ", shape=doublecircle" } else { "" };
            let _ = writeln!(
                s,
                "  v{} [label=\"{}\\n{}\\n{}\"{}];",
                v.id,
                v.lo(),
                v.label.kappa,
                v.label.tau1,
                shape
            );
        }
        for v in &self.vertices {
            if let Some(p) = v.parent {
                let _ = writeln!(s, "  v{} -> v{};", v.id, p);
            }
        }
        s.push_str("}\n");
        s
    }
}
