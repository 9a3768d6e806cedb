//! Core trees and their expanded (corona) trees.
//!
//! An expanded tree over an `n`-vertex core attaches one pendant leaf to every
//! core vertex. Core vertices keep ids `0..n`; the leaf of core vertex `i`
//! gets id `n + i`.
//!
//! When the core is a path, its interior positions form the central path.
//! Central labels `v_1..v_{n-2}` (and their leaves `z_1..z_{n-2}`) are counted
//! from the right end of the path: label `i` sits at core position `n - 1 - i`.
//! With that orientation the left-restricted count of `v_i` is `F_{n-i}` and
//! the right-restricted count is `F_{i+1}`.

use std::collections::{BTreeSet, BinaryHeap, VecDeque};
use std::cmp::Reverse;
use std::fmt::{self, Write as _};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid size: a tree needs at least one vertex")]
    InvalidSize,
    #[error("vertex {vertex} out of range for a graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("central label {label} outside the central path 1..={max} (core size {core_size})")]
    NotCentral {
        label: usize,
        max: usize,
        core_size: usize,
    },
    #[error("the central path is empty for a core of size {0}; need at least 3 core vertices")]
    EmptyCentralPath(usize),
    #[error("operation requires a path core")]
    CoreNotPath,
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Dense vertex identifier inside one graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A connected, acyclic, simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    adjacency: Vec<Vec<usize>>,
    // normalized (lo, hi), sorted
    edges: Vec<(usize, usize)>,
}

impl Tree {
    /// Validates an edge list and builds a tree from it.
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Tree, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::InvalidSize);
        }
        let mut seen = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        if seen.len() != vertex_count - 1 {
            return Err(GraphError::NotATree(format!(
                "{} edges on {} vertices",
                seen.len(),
                vertex_count
            )));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let tree = Tree {
            adjacency,
            edges: seen.into_iter().collect(),
        };
        // n-1 edges plus connectivity implies acyclic
        if tree.bfs_order(0).len() != vertex_count {
            return Err(GraphError::NotATree("disconnected".into()));
        }
        Ok(tree)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(lo, hi)` pairs in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b)))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn check_vertex(&self, x: VertexId) -> Result<(), GraphError> {
        if x.0 < self.vertex_count() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: x.0,
                vertex_count: self.vertex_count(),
            })
        }
    }

    pub fn neighbors(&self, x: VertexId) -> Result<impl Iterator<Item = VertexId> + '_, GraphError> {
        self.check_vertex(x)?;
        Ok(self.adjacency[x.0].iter().map(|&v| VertexId(v)))
    }

    pub(crate) fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn degree(&self, x: VertexId) -> Result<usize, GraphError> {
        self.check_vertex(x)?;
        Ok(self.adjacency[x.0].len())
    }

    pub fn is_leaf(&self, x: VertexId) -> Result<bool, GraphError> {
        Ok(self.degree(x)? == 1)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.adjacency
            .get(a.0)
            .is_some_and(|nbrs| nbrs.binary_search(&b.0).is_ok())
    }

    /// True when the tree is a path whose vertex order is `0, 1, ..., n-1`.
    pub fn is_canonical_path(&self) -> bool {
        self.edges
            .iter()
            .enumerate()
            .all(|(i, &(a, b))| a == i && b == i + 1)
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.vertex_count()];
        let mut order = Vec::with_capacity(self.vertex_count());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Subgraph induced on `keep`, relabelled densely in ascending id order.
    /// Returns the subtree and the map from new ids back to old ids.
    pub fn induced_subtree(&self, keep: &[VertexId]) -> Result<(Tree, Vec<VertexId>), GraphError> {
        let mut old_ids: Vec<usize> = keep.iter().map(|v| v.0).collect();
        old_ids.sort_unstable();
        old_ids.dedup();
        let mut new_id = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in old_ids.iter().enumerate() {
            self.check_vertex(VertexId(old))?;
            new_id[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b)| new_id[a] != usize::MAX && new_id[b] != usize::MAX)
            .map(|&(a, b)| (new_id[a], new_id[b]));
        let tree = Tree::from_edges(old_ids.len(), edges)?;
        Ok((tree, old_ids.into_iter().map(VertexId).collect()))
    }
}

/// A path on `n` vertices with edges `{i, i+1}`.
pub fn path_tree(n: usize) -> Result<Tree, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize);
    }
    Tree::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// A star: center 0 joined to `leaves` further vertices.
pub fn star_tree(leaves: usize) -> Tree {
    Tree::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("a star is a tree")
}

/// Uniformly random labeled tree on `n` vertices, decoded from a Prüfer
/// sequence drawn from a ChaCha8 stream seeded with `seed`.
pub fn random_tree(n: usize, seed: u64) -> Result<Tree, GraphError> {
    match n {
        0 => Err(GraphError::InvalidSize),
        1 => Tree::from_edges(1, []),
        2 => Tree::from_edges(2, [(0, 1)]),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            Tree::from_edges(n, decode_pruefer(n, &code))
        }
    }
}

fn decode_pruefer(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut remaining = vec![1usize; n];
    for &c in code {
        remaining[c] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> = (0..n)
        .filter(|&v| remaining[v] == 1)
        .map(Reverse)
        .collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding always has a leaf");
        edges.push((leaf, c));
        remaining[c] -= 1;
        if remaining[c] == 1 {
            leaves.push(Reverse(c));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    edges
}

/// Whether a central-path vertex is the core vertex `v_i` or its leaf `z_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Core,
    Leaf,
}

impl std::str::FromStr for VertexKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(VertexKind::Core),
            "leaf" => Ok(VertexKind::Leaf),
            other => Err(format!("unknown vertex kind {other:?} (expected core or leaf)")),
        }
    }
}

/// A core tree with one pendant leaf attached to each core vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedTree {
    graph: Tree,
    core_size: usize,
    path_core: bool,
}

/// Attaches a leaf to every vertex of `core`.
pub fn expand(core: &Tree) -> ExpandedTree {
    let n = core.vertex_count();
    let core_edges = core.edges.iter().copied();
    let leaf_edges = (0..n).map(|i| (i, n + i));
    let graph = Tree::from_edges(2 * n, core_edges.chain(leaf_edges))
        .expect("a corona of a tree is a tree");
    ExpandedTree {
        graph,
        core_size: n,
        path_core: core.is_canonical_path(),
    }
}

impl ExpandedTree {
    pub fn graph(&self) -> &Tree {
        &self.graph
    }

    pub fn core_size(&self) -> usize {
        self.core_size
    }

    pub fn has_path_core(&self) -> bool {
        self.path_core
    }

    /// Core vertex at position `i`. Panics if `i >= core_size`.
    pub fn core_vertex(&self, i: usize) -> VertexId {
        assert!(i < self.core_size, "core position {i} out of range");
        VertexId(i)
    }

    /// Leaf attached to the core vertex at position `i`. Panics if `i >= core_size`.
    pub fn leaf_of(&self, i: usize) -> VertexId {
        assert!(i < self.core_size, "core position {i} out of range");
        VertexId(self.core_size + i)
    }

    pub fn is_core(&self, x: VertexId) -> bool {
        x.0 < self.core_size
    }

    /// Central labels `1..=n-2`; empty when `n < 3`.
    pub fn central_labels(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.core_size.saturating_sub(2)
    }

    /// Core position of central label `i`, checking that the core is a path
    /// and that `i` is on the central path.
    pub fn central_position(&self, label: usize) -> Result<usize, GraphError> {
        if !self.path_core {
            return Err(GraphError::CoreNotPath);
        }
        let n = self.core_size;
        if n < 3 {
            return Err(GraphError::EmptyCentralPath(n));
        }
        if label == 0 || label > n - 2 {
            return Err(GraphError::NotCentral {
                label,
                max: n - 2,
                core_size: n,
            });
        }
        Ok(n - 1 - label)
    }

    /// The vertex carrying central label `i` of the given kind (`v_i` or `z_i`).
    pub fn central_vertex(&self, label: usize, kind: VertexKind) -> Result<VertexId, GraphError> {
        let pos = self.central_position(label)?;
        Ok(match kind {
            VertexKind::Core => self.core_vertex(pos),
            VertexKind::Leaf => self.leaf_of(pos),
        })
    }

    fn node_name(&self, v: usize) -> String {
        if v < self.core_size {
            format!("v{v}")
        } else {
            format!("z{}", v - self.core_size)
        }
    }

    /// Graphviz DOT text. Core vertices are `v0..v(n-1)`, leaves `z0..z(n-1)`;
    /// nodes and edges are listed in ascending id order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph expanded_tree {\n");
        for v in 0..self.graph.vertex_count() {
            let shape = if v < self.core_size { "circle" } else { "box" };
            let _ = writeln!(out, "  {} [shape={shape}];", self.node_name(v));
        }
        for &(a, b) in &self.graph.edges {
            let _ = writeln!(out, "  {} -- {};", self.node_name(a), self.node_name(b));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json_value(&self) -> ExpandedTreeJson {
        ExpandedTreeJson {
            n: self.core_size,
            edges: self.graph.edges.iter().map(|&(a, b)| [a, b]).collect(),
            core: (0..self.core_size).collect(),
            leaves: (self.core_size..2 * self.core_size).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph JSON serializes")
    }

    /// Rebuilds an expanded tree from its JSON form, validating the layout.
    pub fn from_json(text: &str) -> Result<ExpandedTree, GraphError> {
        let doc: ExpandedTreeJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let n = doc.n;
        if n == 0 {
            return Err(GraphError::InvalidSize);
        }
        if doc.core != (0..n).collect::<Vec<_>>() || doc.leaves != (n..2 * n).collect::<Vec<_>>() {
            return Err(GraphError::Json("core/leaves do not follow the dense layout".into()));
        }
        let graph = Tree::from_edges(2 * n, doc.edges.iter().map(|e| (e[0], e[1])))?;
        let mut core_edges = Vec::new();
        for &(a, b) in &graph.edges {
            match (a < n, b < n) {
                (true, true) => core_edges.push((a, b)),
                (true, false) if b == a + n => {}
                _ => return Err(GraphError::Json(format!("edge {a}-{b} is not a core or pendant edge"))),
            }
        }
        let core = Tree::from_edges(n, core_edges)?;
        let expanded = expand(&core);
        if expanded.graph != graph {
            return Err(GraphError::Json("graph is not the corona of its core".into()));
        }
        Ok(expanded)
    }
}

/// JSON layout: `{"n": .., "edges": [[a,b],..], "core": [..], "leaves": [..]}`
/// with edges sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpandedTreeJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    pub core: Vec<usize>,
    pub leaves: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_list(t: &Tree) -> Vec<(usize, usize)> {
        t.edges().map(|(a, b)| (a.0, b.0)).collect()
    }

    #[test]
    fn path_tree_small_cases() {
        let p1 = path_tree(1).unwrap();
        assert_eq!((p1.vertex_count(), p1.edge_count()), (1, 0));
        assert_eq!(edge_list(&path_tree(2).unwrap()), vec![(0, 1)]);
        assert_eq!(
            edge_list(&path_tree(5).unwrap()),
            vec![(0, 1), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(path_tree(0), Err(GraphError::InvalidSize));
    }

    #[test]
    fn from_edges_rejects_non_trees() {
        assert_eq!(Tree::from_edges(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Tree::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Tree::from_edges(4, [(0, 1), (1, 2), (2, 0)]),
            Err(GraphError::NotATree(_))
        ));
        // right edge count, but a cycle plus an isolated vertex
        assert!(matches!(
            Tree::from_edges(4, [(0, 1), (1, 2), (0, 2)]),
            Err(GraphError::NotATree(_))
        ));
        assert!(matches!(
            Tree::from_edges(2, [(0, 5)]),
            Err(GraphError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn expand_small_paths() {
        let e1 = expand(&path_tree(1).unwrap());
        assert_eq!(edge_list(e1.graph()), vec![(0, 1)]);

        let e3 = expand(&path_tree(3).unwrap());
        let g = e3.graph();
        let core_deg: Vec<_> = (0..3).map(|i| g.degree(e3.core_vertex(i)).unwrap()).collect();
        let leaf_deg: Vec<_> = (0..3).map(|i| g.degree(e3.leaf_of(i)).unwrap()).collect();
        assert_eq!(core_deg, vec![2, 3, 2]);
        assert_eq!(leaf_deg, vec![1, 1, 1]);

        let e5 = expand(&path_tree(5).unwrap());
        assert_eq!(e5.graph().vertex_count(), 10);
        for i in 0..5 {
            assert!(e5.graph().is_leaf(e5.leaf_of(i)).unwrap());
            assert!(e5.graph().has_edge(e5.core_vertex(i), e5.leaf_of(i)));
            if i + 1 < 5 {
                assert!(e5.graph().has_edge(e5.core_vertex(i), e5.core_vertex(i + 1)));
            }
        }
    }

    #[test]
    fn degree_and_leaf_queries() {
        let p5 = path_tree(5).unwrap();
        assert_eq!(p5.degree(VertexId(0)), Ok(1));
        assert_eq!(p5.degree(VertexId(2)), Ok(2));
        assert!(p5.degree(VertexId(5)).is_err());
        assert!(path_tree(2).unwrap().is_leaf(VertexId(0)).unwrap());

        let e3 = expand(&path_tree(3).unwrap());
        assert_eq!(e3.graph().degree(e3.core_vertex(1)), Ok(3));
        assert!(e3.graph().is_leaf(e3.leaf_of(1)).unwrap());
        assert!(!e3.graph().is_leaf(e3.core_vertex(1)).unwrap());
        assert!(e3.graph().is_leaf(VertexId(99)).is_err());
    }

    #[test]
    fn central_labels_run_from_the_right_end() {
        let e5 = expand(&path_tree(5).unwrap());
        assert_eq!(e5.central_labels(), 1..=3);
        assert_eq!(e5.central_position(1), Ok(3));
        assert_eq!(e5.central_position(3), Ok(1));
        assert_eq!(e5.central_vertex(1, VertexKind::Leaf), Ok(VertexId(8)));
        assert!(matches!(e5.central_position(0), Err(GraphError::NotCentral { .. })));
        assert!(matches!(e5.central_position(4), Err(GraphError::NotCentral { .. })));

        let e2 = expand(&path_tree(2).unwrap());
        assert!(e2.central_labels().is_empty());
        assert_eq!(e2.central_position(1), Err(GraphError::EmptyCentralPath(2)));

        let star = expand(&star_tree(3));
        assert_eq!(star.central_position(1), Err(GraphError::CoreNotPath));
    }

    #[test]
    fn dot_export_shape() {
        let dot = expand(&path_tree(1).unwrap()).to_dot();
        assert_eq!(dot, "graph expanded_tree {\n  v0 [shape=circle];\n  z0 [shape=box];\n  v0 -- z0;\n}\n");

        let e3 = expand(&path_tree(3).unwrap());
        let dot = e3.to_dot();
        assert_eq!(dot.lines().filter(|l| l.contains("[shape=")).count(), 6);
        assert_eq!(dot.lines().filter(|l| l.contains(" -- ")).count(), 5);
        assert_eq!(dot, e3.to_dot());
    }

    #[test]
    fn json_layout_and_round_trip() {
        let e2 = expand(&path_tree(2).unwrap());
        assert_eq!(
            e2.to_json(),
            r#"{"n":2,"edges":[[0,1],[0,2],[1,3]],"core":[0,1],"leaves":[2,3]}"#
        );
        let e = expand(&random_tree(9, 3).unwrap());
        assert_eq!(ExpandedTree::from_json(&e.to_json()), Ok(e));
        assert!(ExpandedTree::from_json(r#"{"n":2,"edges":[[0,1],[0,3],[1,2]],"core":[0,1],"leaves":[2,3]}"#).is_err());
        assert!(ExpandedTree::from_json("{").is_err());
    }

    #[test]
    fn random_tree_small_and_deterministic() {
        assert_eq!(random_tree(1, 7).unwrap().vertex_count(), 1);
        assert_eq!(edge_list(&random_tree(2, 7).unwrap()), vec![(0, 1)]);
        assert_eq!(random_tree(0, 7), Err(GraphError::InvalidSize));
        assert_eq!(random_tree(30, 11), random_tree(30, 11));
        assert_ne!(random_tree(30, 11), random_tree(30, 12));
    }

    #[test]
    fn pruefer_decoding_matches_known_example() {
        // code [3,3,3,4] on 6 vertices decodes to the tree with edges 0-3,1-3,2-3,3-4,4-5
        let mut edges = decode_pruefer(6, &[3, 3, 3, 4]);
        edges.iter_mut().for_each(|e| *e = (e.0.min(e.1), e.0.max(e.1)));
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn induced_subtree_relabels() {
        let e3 = expand(&path_tree(3).unwrap());
        let (sub, map) = e3
            .graph()
            .induced_subtree(&[VertexId(0), VertexId(1), VertexId(3), VertexId(4)])
            .unwrap();
        assert_eq!(map, vec![VertexId(0), VertexId(1), VertexId(3), VertexId(4)]);
        assert_eq!(edge_list(&sub), vec![(0, 1), (0, 2), (1, 3)]);
        assert!(e3.graph().induced_subtree(&[VertexId(3), VertexId(4)]).is_err());
    }
}
