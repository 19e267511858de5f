//! The generalized tree shift and the proper-shift digraph on free trees.
//!
//! For vertices `x ≠ y` whose connecting path has every interior vertex of
//! degree 2, the shift detaches every neighbour of `y` off the path and
//! reattaches it to `x`. The shift is proper when both `x` and `y` have a
//! neighbour off the path. Proper shifts only move up the poset; the path is
//! its unique minimum and the star its unique maximum.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{enumerate_free_trees, CanonicalTree, LabeledTree};

/// Shifts the off-path neighbours of `y` onto `x`.
pub fn gts_shift(t: &LabeledTree, x: usize, y: usize) -> Result<LabeledTree> {
    let path = admissible_path(t, x, y)?;
    let y_path_nbr = path[path.len() - 2];
    let edges: Vec<_> = t
        .edges()
        .into_iter()
        .map(|(u, v)| {
            if u == y && v != y_path_nbr {
                (x, v)
            } else if v == y && u != y_path_nbr {
                (u, x)
            } else {
                (u, v)
            }
        })
        .collect();
    LabeledTree::from_edges(t.n(), &edges)
}

fn admissible_path(t: &LabeledTree, x: usize, y: usize) -> Result<Vec<usize>> {
    if x >= t.n() || y >= t.n() {
        return Err(Error::OutOfRange {
            index: x.max(y),
            max: t.n() - 1,
        });
    }
    if x == y {
        return Err(Error::ShiftPrecondition("endpoints coincide".into()));
    }
    let path = t.path_between(x, y);
    if let Some(&bad) = path[1..path.len() - 1].iter().find(|&&v| t.degree(v) != 2) {
        return Err(Error::ShiftPrecondition(format!(
            "interior vertex {} has degree {}",
            bad + 1,
            t.degree(bad)
        )));
    }
    Ok(path)
}

/// True when the shift is admissible and both endpoints have an off-path
/// neighbour.
pub fn is_proper_shift(t: &LabeledTree, x: usize, y: usize) -> bool {
    match admissible_path(t, x, y) {
        Ok(_) => t.degree(x) >= 2 && t.degree(y) >= 2,
        Err(_) => false,
    }
}

/// A proper shift taking `lower` to `upper`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GtsPair {
    pub lower: CanonicalTree,
    pub upper: CanonicalTree,
    /// Representative of `lower` the shift was applied to.
    pub tree: LabeledTree,
    /// `x = path[0], …, path[k] = y`.
    pub path: Vec<usize>,
}

impl GtsPair {
    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn lower_tree(&self) -> &LabeledTree {
        &self.tree
    }

    /// A labeled tree in the class of `upper`, obtained by replaying the shift.
    pub fn upper_tree(&self) -> LabeledTree {
        gts_shift(&self.tree, self.path[0], *self.path.last().expect("nonempty path"))
            .expect("witness is admissible")
    }
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    tree: &'a LabeledTree,
    path: Vec<usize>,
}

#[derive(Serialize)]
struct PairJson<'a> {
    lower: &'a str,
    upper: &'a str,
    witness: WitnessJson<'a>,
}

impl Serialize for GtsPair {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PairJson {
            lower: self.lower.code(),
            upper: self.upper.code(),
            witness: WitnessJson {
                tree: &self.tree,
                path: self.path.iter().map(|v| v + 1).collect(),
            },
        }
        .serialize(s)
    }
}

fn pairs_from(lower: &CanonicalTree) -> Vec<GtsPair> {
    let t = lower.representative();
    let n = t.n();
    let mut found: BTreeMap<CanonicalTree, GtsPair> = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            if !is_proper_shift(&t, x, y) {
                continue;
            }
            let shifted = gts_shift(&t, x, y).expect("admissible");
            let upper = shifted.canonical();
            if upper == *lower || found.contains_key(&upper) {
                continue;
            }
            found.insert(
                upper.clone(),
                GtsPair {
                    lower: lower.clone(),
                    upper,
                    tree: t.clone(),
                    path: t.path_between(x, y),
                },
            );
        }
    }
    found.into_values().collect()
}

/// All pairs of distinct classes related by one proper shift, ordered by
/// `(lower, upper)` code. Each pair keeps the first witness in `(x, y)` order.
pub fn proper_gts_pairs(n: usize) -> Vec<GtsPair> {
    let trees = enumerate_free_trees(n);
    trees.par_iter().flat_map_iter(pairs_from).collect()
}

/// The proper-shift digraph: nodes are free trees in code order.
#[derive(Clone, Debug)]
pub struct ShiftDigraph {
    pub nodes: Vec<CanonicalTree>,
    pub edges: Vec<(usize, usize)>,
    pub pairs: Vec<GtsPair>,
}

impl ShiftDigraph {
    pub fn build(n: usize) -> Self {
        let nodes = enumerate_free_trees(n);
        let pairs = proper_gts_pairs(n);
        let index: BTreeMap<&CanonicalTree, usize> =
            nodes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let edges = pairs
            .iter()
            .map(|p| (index[&p.lower], index[&p.upper]))
            .collect();
        ShiftDigraph {
            nodes: nodes.clone(),
            edges,
            pairs,
        }
    }

    fn in_out_degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let mut indeg = vec![0; self.nodes.len()];
        let mut outdeg = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        (indeg, outdeg)
    }

    pub fn sources(&self) -> Vec<usize> {
        let (indeg, _) = self.in_out_degrees();
        (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let (_, outdeg) = self.in_out_degrees();
        (0..self.nodes.len()).filter(|&i| outdeg[i] == 0).collect()
    }

    /// Kahn's algorithm; `None` if there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let (mut indeg, _) = self.in_out_degrees();
        let succ = self.successors();
        let mut queue: VecDeque<usize> = (0..self.nodes.len()).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &succ[u] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push_back(v);
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        succ
    }

    /// Nodes reachable from `start` along edges, including `start`.
    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let succ = self.successors();
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &v in &succ[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    pub fn index_of(&self, c: &CanonicalTree) -> Option<usize> {
        self.nodes.iter().position(|x| x == c)
    }

    /// Graphviz rendering; node labels carry the code and an ASCII sketch.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph gts {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, c) in self.nodes.iter().enumerate() {
            let mut label = format!("{}\\l", c.code());
            for line in c.representative().sketch() {
                label.push_str(&line.replace('\\', "\\\\").replace('"', "\\\""));
                label.push_str("\\l");
            }
            s.push_str(&format!("  t{i} [label=\"{label}\"];\n"));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  t{a} -> t{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize)]
struct NodeJson<'a> {
    id: usize,
    code: &'a str,
    #[serde(rename = "degreeSequence")]
    degree_sequence: Vec<usize>,
}

#[derive(Serialize)]
struct DigraphJson<'a> {
    n: usize,
    nodes: Vec<NodeJson<'a>>,
    pairs: &'a [GtsPair],
}

impl Serialize for ShiftDigraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DigraphJson {
            n: self.nodes.first().map_or(0, CanonicalTree::n),
            nodes: self
                .nodes
                .iter()
                .enumerate()
                .map(|(id, c)| NodeJson {
                    id,
                    code: c.code(),
                    degree_sequence: c.representative().degree_sequence(),
                })
                .collect(),
            pairs: &self.pairs,
        }
        .serialize(s)
    }
}
