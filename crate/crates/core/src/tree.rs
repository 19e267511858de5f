//! Labeled trees, canonical codes of free trees, and matchings.
//!
//! Vertices are `0..n` internally. Every text or JSON format reads and writes
//! them as `1..=n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::rational::int;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabeledTree {
    adj: Vec<Vec<usize>>,
}

impl LabeledTree {
    /// Builds a tree from 0-based edges, checking that it is a spanning tree
    /// on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({}, {}) out of range", u + 1, v + 1)));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {}", u + 1)));
            }
            if adj[u].contains(&v) {
                return Err(Error::InvalidTree(format!("repeated edge ({}, {})", u + 1, v + 1)));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        let tree = LabeledTree { adj };
        if tree.bfs_order(0).len() != n {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(tree)
    }

    /// Same as [`from_edges`](Self::from_edges) with vertices numbered from 1.
    pub fn from_edges_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let zero: Vec<_> = edges
            .iter()
            .map(|&(u, v)| {
                if u == 0 || v == 0 {
                    Err(Error::InvalidTree("vertex 0 in 1-based edge list".into()))
                } else {
                    Ok((u - 1, v - 1))
                }
            })
            .collect::<Result<_>>()?;
        LabeledTree::from_edges(n, &zero)
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        LabeledTree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star with center `0`.
    pub fn star(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
        LabeledTree::from_edges(n, &edges).expect("star is a tree")
    }

    /// Decodes a Prüfer sequence (0-based labels) of length `n - 2`.
    pub fn from_prufer(n: usize, seq: &[usize]) -> Result<Self> {
        if n < 2 || seq.len() != n - 2 || seq.iter().any(|&v| v >= n) {
            return Err(Error::InvalidTree("bad Prüfer sequence".into()));
        }
        let mut degree = vec![1usize; n];
        for &v in seq {
            degree[v] += 1;
        }
        let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &v in seq {
            let leaf = *leaves.iter().next().expect("a leaf always exists");
            leaves.remove(&leaf);
            edges.push((leaf, v));
            degree[v] -= 1;
            if degree[v] == 1 {
                leaves.insert(v);
            }
        }
        let mut rest = leaves.into_iter();
        let (a, b) = (rest.next().expect("two left"), rest.next().expect("two left"));
        edges.push((a, b));
        LabeledTree::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for (u, nbrs) in self.adj.iter().enumerate() {
            for &v in nbrs {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Degrees sorted in decreasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    /// The unique path `x = v_0, …, v_k = y`.
    pub fn path_between(&self, x: usize, y: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.n()];
        parent[x] = x;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            if u == y {
                break;
            }
            for &v in &self.adj[u] {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut path = vec![y];
        let mut cur = y;
        while cur != x {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Applies `perm` to the vertex labels: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        LabeledTree::from_edges(self.n(), &edges)
    }

    /// The one or two vertices minimizing the largest remaining component.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.n();
        let order = self.bfs_order(0);
        let mut parent = vec![usize::MAX; n];
        for &u in &order {
            for &v in &self.adj[u] {
                if v != parent[u] {
                    parent[v] = u;
                }
            }
        }
        parent[0] = usize::MAX;
        let mut size = vec![1usize; n];
        for &u in order.iter().rev() {
            if parent[u] != usize::MAX {
                size[parent[u]] += size[u];
            }
        }
        let heaviest: Vec<usize> = (0..n)
            .map(|u| {
                let below = self.adj[u]
                    .iter()
                    .filter(|&&v| parent[v] == u)
                    .map(|&v| size[v])
                    .max()
                    .unwrap_or(0);
                below.max(n - size[u])
            })
            .collect();
        let best = *heaviest.iter().min().expect("n >= 1");
        (0..n).filter(|&u| heaviest[u] == best).collect()
    }

    /// AHU code of the tree rooted at `root`: `(` + sorted child codes + `)`.
    pub fn rooted_code(&self, root: usize) -> String {
        fn go(tree: &LabeledTree, v: usize, parent: usize) -> String {
            let mut kids: Vec<String> = tree.adj[v]
                .iter()
                .filter(|&&w| w != parent)
                .map(|&w| go(tree, w, v))
                .collect();
            kids.sort_unstable();
            let mut s = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
            s.push('(');
            for k in kids {
                s.push_str(&k);
            }
            s.push(')');
            s
        }
        go(self, root, usize::MAX)
    }

    pub fn canonical(&self) -> CanonicalTree {
        let code = self
            .centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("at least one centroid");
        CanonicalTree { code, n: self.n() }
    }

    pub fn is_isomorphic(&self, other: &LabeledTree) -> bool {
        self.canonical() == other.canonical()
    }

    /// `1 + q²(d_v − 1)`, the diagonal entry of the q-Laplacian.
    pub fn vertex_weight(&self, v: usize) -> QPoly {
        QPoly::from_ints(&[1, 0, self.degree(v) as i64 - 1])
    }

    /// Edge-list text: `n`, then one `u v` line per edge, 1-based.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{}\n", self.n());
        for (u, v) in self.edges() {
            s.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        s
    }

    /// Parses either the edge-list text format or `{"n": .., "edges": [[u, v], ..]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        if trimmed.starts_with('{') {
            let j: TreeJson = serde_json::from_str(trimmed)?;
            return LabeledTree::try_from(j);
        }
        let mut tokens = trimmed
            .lines()
            .map(|l| l.split('#').next().unwrap_or(""))
            .flat_map(str::split_whitespace);
        let bad = |what: &str| Error::Parse(format!("edge list: {what}"));
        let n: usize = tokens
            .next()
            .ok_or_else(|| bad("missing vertex count"))?
            .parse()
            .map_err(|_| bad("vertex count is not an integer"))?;
        let nums: Vec<usize> = tokens
            .map(|t| t.parse::<usize>().map_err(|_| bad(&format!("bad vertex {t:?}"))))
            .collect::<Result<_>>()?;
        if nums.len() % 2 != 0 {
            return Err(bad("odd number of endpoints"));
        }
        let edges: Vec<_> = nums.chunks(2).map(|c| (c[0], c[1])).collect();
        LabeledTree::from_edges_one_based(n, &edges)
    }

    /// Indented ASCII drawing rooted at the first centroid.
    pub fn sketch(&self) -> Vec<String> {
        fn go(t: &LabeledTree, v: usize, parent: usize, prefix: &str, last: bool, root: bool, out: &mut Vec<String>) {
            let line = if root {
                "o".to_string()
            } else {
                format!("{prefix}{}o", if last { "`-" } else { "+-" })
            };
            out.push(line);
            let kids: Vec<usize> = t.adj[v].iter().copied().filter(|&w| w != parent).collect();
            let child_prefix = if root {
                String::new()
            } else {
                format!("{prefix}{}", if last { "  " } else { "| " })
            };
            for (i, &w) in kids.iter().enumerate() {
                go(t, w, v, &child_prefix, i + 1 == kids.len(), false, out);
            }
        }
        let rep = self.canonical().representative();
        let mut out = Vec::new();
        go(&rep, 0, usize::MAX, "", true, true, &mut out);
        out
    }
}

impl fmt::Display for LabeledTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
            .collect();
        write!(f, "[{}]", edges.join(" "))
    }
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<TreeJson> for LabeledTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        LabeledTree::from_edges_one_based(j.n, &edges)
    }
}

impl Serialize for LabeledTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TreeJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u + 1, v + 1]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LabeledTree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        LabeledTree::try_from(TreeJson::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Isomorphism class of a free tree, keyed by its centroid-rooted AHU code.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct CanonicalTree {
    code: String,
    n: usize,
}

impl CanonicalTree {
    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// A labeled tree with this code; vertices are numbered in preorder, so
    /// vertex 0 is a centroid.
    pub fn representative(&self) -> LabeledTree {
        let mut stack: Vec<usize> = Vec::new();
        let mut edges = Vec::new();
        let mut next = 0;
        for ch in self.code.chars() {
            match ch {
                '(' => {
                    if let Some(&p) = stack.last() {
                        edges.push((p, next));
                    }
                    stack.push(next);
                    next += 1;
                }
                _ => {
                    stack.pop();
                }
            }
        }
        LabeledTree::from_edges(self.n, &edges).expect("canonical codes describe trees")
    }

    pub fn is_path(&self) -> bool {
        self.representative().degree_sequence().first().is_none_or(|&d| d <= 2)
    }

    pub fn is_star(&self) -> bool {
        self.n <= 2 || self.representative().degree_sequence()[0] == self.n - 1
    }
}

impl fmt::Display for CanonicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// Rooted trees on `n` vertices as canonical level sequences (root at level
/// 0), in the successor order of Beyer and Hedetniemi.
pub fn rooted_level_sequences(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    let mut seq: Vec<usize> = (0..n).collect();
    let mut out = vec![seq.clone()];
    while let Some(p) = (0..n).rev().find(|&i| seq[i] > 1) {
        let q = (0..p).rev().find(|&i| seq[i] == seq[p] - 1).expect("parent level exists");
        let shift = p - q;
        for i in p..n {
            seq[i] = seq[i - shift];
        }
        out.push(seq.clone());
    }
    out
}

fn tree_from_levels(levels: &[usize]) -> LabeledTree {
    let mut edges = Vec::with_capacity(levels.len().saturating_sub(1));
    for i in 1..levels.len() {
        let parent = (0..i).rev().find(|&j| levels[j] + 1 == levels[i]).expect("valid level sequence");
        edges.push((parent, i));
    }
    LabeledTree::from_edges(levels.len(), &edges).expect("level sequences describe trees")
}

/// One canonical tree per isomorphism class on `n` vertices, sorted by code.
pub fn enumerate_free_trees(n: usize) -> Vec<CanonicalTree> {
    let codes: BTreeSet<CanonicalTree> = rooted_level_sequences(n)
        .iter()
        .map(|levels| tree_from_levels(levels).canonical())
        .collect();
    codes.into_iter().collect()
}

/// A set of pairwise disjoint tree edges, each stored `(u, v)` with `u < v`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn covers(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

/// All matchings including the empty one, ordered by size and then
/// lexicographically by edge list.
pub fn matchings(t: &LabeledTree) -> Vec<Matching> {
    fn go(edges: &[(usize, usize)], used: &mut [bool], cur: &mut Vec<(usize, usize)>, out: &mut Vec<Matching>) {
        out.push(Matching { edges: cur.clone() });
        for (k, &(u, v)) in edges.iter().enumerate() {
            if !used[u] && !used[v] {
                used[u] = true;
                used[v] = true;
                cur.push((u, v));
                go(&edges[k + 1..], used, cur, out);
                cur.pop();
                used[u] = false;
                used[v] = false;
            }
        }
    }
    let edges = t.edges();
    let mut out = Vec::new();
    go(&edges, &mut vec![false; t.n()], &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges.cmp(&b.edges)));
    out
}

/// Number of matchings of each size `0..=⌊n/2⌋`.
pub fn matching_counts(t: &LabeledTree) -> Vec<usize> {
    let mut counts = vec![0; t.n() / 2 + 1];
    for m in matchings(t) {
        counts[m.len()] += 1;
    }
    counts
}

/// Entry `(i, j)` of `I + q²(D − I) − qA`.
pub fn q_laplacian_entry(t: &LabeledTree, i: usize, j: usize) -> QPoly {
    if i == j {
        t.vertex_weight(i)
    } else if t.is_edge(i, j) {
        QPoly::monomial(int(-1), 1)
    } else {
        QPoly::zero()
    }
}

pub fn q_laplacian(t: &LabeledTree) -> Vec<Vec<QPoly>> {
    (0..t.n())
        .map(|i| (0..t.n()).map(|j| q_laplacian_entry(t, i, j)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    #[test]
    fn construction_errors() {
        assert!(LabeledTree::from_edges(3, &[(0, 1)]).is_err());
        assert!(LabeledTree::from_edges(3, &[(0, 1), (0, 1)]).is_err());
        assert!(LabeledTree::from_edges(4, &[(0, 1), (1, 0), (2, 3)]).is_err());
        assert!(LabeledTree::from_edges(2, &[(0, 0)]).is_err());
        assert!(LabeledTree::from_edges(2, &[(0, 2)]).is_err());
        assert!(LabeledTree::from_edges(0, &[]).is_err());
        assert!(LabeledTree::from_edges(1, &[]).is_ok());
    }

    #[test]
    fn canonical_examples() {
        let a = LabeledTree::from_edges_one_based(3, &[(1, 2), (2, 3)]).unwrap();
        let b = LabeledTree::from_edges_one_based(3, &[(2, 1), (1, 3)]).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_ne!(LabeledTree::path(4).canonical(), LabeledTree::star(4).canonical());
        assert_eq!(LabeledTree::path(1).canonical().code(), "()");
        assert_eq!(LabeledTree::path(2).canonical().code(), "(())");
    }

    #[test]
    fn representative_round_trip() {
        for n in 1..=9 {
            for c in enumerate_free_trees(n) {
                let rep = c.representative();
                assert_eq!(rep.canonical(), c);
                assert_eq!(rep.n(), n);
            }
        }
    }

    #[test]
    fn free_tree_counts() {
        let expected = [1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
        for (n, &count) in (1..=12).zip(&expected) {
            assert_eq!(enumerate_free_trees(n).len(), count, "n = {n}");
        }
    }

    #[test]
    fn rooted_counts() {
        // rooted trees: 1, 1, 2, 4, 9, 20, 48, 115, 286
        let expected = [1, 1, 2, 4, 9, 20, 48, 115, 286];
        for (n, &count) in (1..=9).zip(&expected) {
            assert_eq!(rooted_level_sequences(n).len(), count);
        }
    }

    #[test]
    fn path_and_star_flags() {
        for n in 1..=8 {
            let trees = enumerate_free_trees(n);
            assert_eq!(trees.iter().filter(|c| c.is_path()).count(), 1);
            assert_eq!(trees.iter().filter(|c| c.is_star()).count(), 1);
            assert!(LabeledTree::path(n).canonical().is_path());
            assert!(LabeledTree::star(n).canonical().is_star());
        }
    }

    #[test]
    fn prufer_decoding() {
        // sequence [3, 3] on 4 vertices is the star centered at 3
        let t = LabeledTree::from_prufer(4, &[3, 3]).unwrap();
        assert_eq!(t.degree(3), 3);
        let t = LabeledTree::from_prufer(2, &[]).unwrap();
        assert_eq!(t.edges(), vec![(0, 1)]);
        assert!(LabeledTree::from_prufer(4, &[5, 0]).is_err());
    }

    #[test]
    fn matching_examples() {
        let p3 = LabeledTree::path(3);
        let ms = matchings(&p3);
        assert_eq!(ms.len(), 3);
        assert!(ms[0].is_empty());
        assert_eq!(ms[1].edges, vec![(0, 1)]);
        assert_eq!(ms[2].edges, vec![(1, 2)]);

        for n in 2..=8 {
            assert_eq!(matching_counts(&LabeledTree::star(n)), {
                let mut v = vec![0; n / 2 + 1];
                v[0] = 1;
                v[1] = n - 1;
                v
            });
        }
        assert_eq!(matchings(&LabeledTree::path(1)), vec![Matching { edges: vec![] }]);
    }

    #[test]
    fn path_matchings_are_fibonacci() {
        // transfer matrix: f(n) = f(n-1) + f(n-2), f(0) = f(1) = 1
        let mut fib = vec![1usize, 1];
        for k in 2..=14 {
            fib.push(fib[k - 1] + fib[k - 2]);
        }
        for n in 1..=12 {
            assert_eq!(matchings(&LabeledTree::path(n)).len(), fib[n]);
        }
    }

    #[test]
    fn q_laplacian_examples() {
        let p2 = LabeledTree::path(2);
        assert_eq!(q_laplacian_entry(&p2, 0, 0), QPoly::one());
        assert_eq!(q_laplacian_entry(&p2, 0, 1), QPoly::from_ints(&[0, -1]));
        let s4 = LabeledTree::star(4);
        assert_eq!(q_laplacian_entry(&s4, 0, 0), QPoly::from_ints(&[1, 0, 2]));
        assert_eq!(q_laplacian_entry(&s4, 1, 2), QPoly::zero());
    }

    #[test]
    fn q_laplacian_at_one_is_combinatorial() {
        for n in 1..=7 {
            for c in enumerate_free_trees(n) {
                let t = c.representative();
                let lq = q_laplacian(&t);
                for i in 0..n {
                    let row: Vec<_> = lq[i].iter().map(|p| p.eval(&int(1))).collect();
                    for j in 0..n {
                        let expect = if i == j {
                            int(t.degree(i) as i64)
                        } else if t.is_edge(i, j) {
                            int(-1)
                        } else {
                            int(0)
                        };
                        assert_eq!(row[j], expect);
                    }
                    assert!(row.iter().fold(int(0), |a, b| a + b).is_zero());
                }
            }
        }
    }

    #[test]
    fn parse_formats() {
        let t = LabeledTree::parse("3\n1 2\n2 3\n").unwrap();
        assert_eq!(t.edges(), vec![(0, 1), (1, 2)]);
        let j = LabeledTree::parse(r#"{"n": 3, "edges": [[1, 2], [2, 3]]}"#).unwrap();
        assert_eq!(t, j);
        assert_eq!(LabeledTree::parse(&t.to_edge_list()).unwrap(), t);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"n":3,"edges":[[1,2],[2,3]]}"#);
        assert!(LabeledTree::parse("3\n1 2\n").is_err());
        assert!(LabeledTree::parse("3\n1 2\n2").is_err());
        assert!(LabeledTree::parse("x").is_err());
    }

    #[test]
    fn sketch_has_one_line_per_vertex() {
        let t = LabeledTree::star(4);
        let s = t.sketch();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0], "o");
    }
}
