//! Maximal independent sets on trees: an enumeration oracle, a three-state
//! tree DP, per-vertex containment counts, and the left/right restricted
//! counts on expanded path trees.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::fib::fib_int;
use crate::graph::{expand, path_tree, ExpandedTree, GraphError, Tree, VertexId, VertexKind};
use crate::rational::Rational;
use crate::report::{Counterexample, IdentityReport};

pub const DEFAULT_ENUMERATION_CAP: usize = 24;
pub const HARD_ENUMERATION_CAP: usize = 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MisError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph has {vertices} vertices, above the enumeration cap of {cap}")]
    Capacity { vertices: usize, cap: usize },
    #[error("enumeration cap {requested} exceeds the hard limit of {}", HARD_ENUMERATION_CAP)]
    CapTooLarge { requested: usize },
}

/// Exact, non-negative number of maximal independent sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MisCount(pub BigUint);

impl MisCount {
    pub fn to_bigint(&self) -> BigInt {
        BigInt::from(self.0.clone())
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.to_bigint())
    }
}

impl From<u64> for MisCount {
    fn from(n: u64) -> Self {
        MisCount(BigUint::from(n))
    }
}

impl fmt::Display for MisCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for &MisCount {
    type Output = MisCount;
    fn add(self, rhs: &MisCount) -> MisCount {
        MisCount(&self.0 + &rhs.0)
    }
}

impl Mul for &MisCount {
    type Output = MisCount;
    fn mul(self, rhs: &MisCount) -> MisCount {
        MisCount(&self.0 * &rhs.0)
    }
}

impl PartialEq<BigInt> for MisCount {
    fn eq(&self, other: &BigInt) -> bool {
        &self.to_bigint() == other
    }
}

/// All maximal independent sets of a graph, each sorted, the family sorted
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MisFamily {
    pub sets: Vec<Vec<VertexId>>,
}

impl MisFamily {
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Members containing `x`.
    pub fn containing(&self, x: VertexId) -> impl Iterator<Item = &Vec<VertexId>> {
        self.sets.iter().filter(move |s| s.binary_search(&x).is_ok())
    }
}

pub fn is_independent(g: &Tree, set: &[VertexId]) -> Result<bool, GraphError> {
    for &x in set {
        g.check_vertex(x)?;
    }
    Ok(set
        .iter()
        .enumerate()
        .all(|(k, &a)| set[k + 1..].iter().all(|&b| !g.has_edge(a, b))))
}

pub fn is_maximal_independent(g: &Tree, set: &[VertexId]) -> Result<bool, GraphError> {
    if !is_independent(g, set)? {
        return Ok(false);
    }
    let mut member = vec![false; g.vertex_count()];
    for &x in set {
        member[x.0] = true;
    }
    let adjacency = g.adjacency();
    Ok((0..g.vertex_count())
        .all(|v| member[v] || adjacency[v].iter().any(|&w| member[w])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Open,
    In,
    Out,
}

/// Brute-force MIS enumeration with a vertex-count cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MisEnumerator {
    cap: usize,
}

impl Default for MisEnumerator {
    fn default() -> Self {
        MisEnumerator {
            cap: DEFAULT_ENUMERATION_CAP,
        }
    }
}

impl MisEnumerator {
    pub fn with_cap(cap: usize) -> Result<Self, MisError> {
        if cap > HARD_ENUMERATION_CAP {
            return Err(MisError::CapTooLarge { requested: cap });
        }
        Ok(MisEnumerator { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Decides every vertex in/out in BFS order. A branch is cut when an
    /// included vertex touches another included vertex, or when an excluded
    /// vertex has all neighbours decided and none included. Survivors are
    /// re-checked with [`is_maximal_independent`].
    pub fn enumerate(&self, g: &Tree) -> Result<MisFamily, MisError> {
        let n = g.vertex_count();
        if n > self.cap {
            return Err(MisError::Capacity {
                vertices: n,
                cap: self.cap,
            });
        }
        let order = g.bfs_order(0);
        let mut choice = vec![Choice::Open; n];
        let mut sets = Vec::new();
        branch(g, &order, 0, &mut choice, &mut sets);
        for s in &mut sets {
            s.sort_unstable();
        }
        sets.sort_unstable();
        Ok(MisFamily { sets })
    }
}

fn undominatable(g: &Tree, choice: &[Choice], v: usize) -> bool {
    choice[v] == Choice::Out
        && g.adjacency()[v]
            .iter()
            .all(|&w| choice[w] == Choice::Out)
}

fn branch(g: &Tree, order: &[usize], depth: usize, choice: &mut [Choice], out: &mut Vec<Vec<VertexId>>) {
    if depth == order.len() {
        let set: Vec<VertexId> = (0..choice.len())
            .filter(|&v| choice[v] == Choice::In)
            .map(VertexId)
            .collect();
        if is_maximal_independent(g, &set).expect("ids are in range") {
            out.push(set);
        }
        return;
    }
    let v = order[depth];
    let nbrs = &g.adjacency()[v];

    if nbrs.iter().all(|&w| choice[w] != Choice::In) {
        choice[v] = Choice::In;
        branch(g, order, depth + 1, choice, out);
    }

    choice[v] = Choice::Out;
    let dead = undominatable(g, choice, v) || nbrs.iter().any(|&w| undominatable(g, choice, w));
    if !dead {
        branch(g, order, depth + 1, choice, out);
    }
    choice[v] = Choice::Open;
}

/// Enumerates with the default cap of 24 vertices.
pub fn enumerate_mis(g: &Tree) -> Result<MisFamily, MisError> {
    MisEnumerator::default().enumerate(g)
}

/// Per-vertex DP values for the subtree rooted at that vertex.
struct DpState {
    /// vertex in the set
    taken: BigUint,
    /// vertex out, dominated by a child
    covered: BigUint,
    /// vertex out, no child in the set (needs its parent)
    waiting: BigUint,
}

fn run_dp(g: &Tree, root: usize, forced_in: Option<usize>) -> BigUint {
    let n = g.vertex_count();
    let order = g.bfs_order(root);
    let mut parent = vec![usize::MAX; n];
    for &v in &order {
        for &w in &g.adjacency()[v] {
            if w != parent[v] {
                parent[w] = v;
            }
        }
    }
    let mut state: Vec<Option<DpState>> = (0..n).map(|_| None).collect();
    for &v in order.iter().rev() {
        let mut taken = BigUint::one();
        let mut any = BigUint::one();
        let mut none_taken = BigUint::one();
        for &c in &g.adjacency()[v] {
            if c == parent[v] {
                continue;
            }
            let child = state[c].take().expect("children are processed first");
            taken *= &child.covered + &child.waiting;
            any *= &child.taken + &child.covered;
            none_taken *= &child.covered;
        }
        let (covered, waiting) = if forced_in == Some(v) {
            (BigUint::zero(), BigUint::zero())
        } else {
            (any - &none_taken, none_taken)
        };
        state[v] = Some(DpState {
            taken,
            covered,
            waiting,
        });
    }
    let top = state[root].take().expect("root processed");
    top.taken + top.covered
}

/// Number of maximal independent sets, rooted at vertex 0.
pub fn count_mis(g: &Tree) -> MisCount {
    MisCount(run_dp(g, 0, None))
}

/// Same count with the DP rooted elsewhere; the value does not depend on the root.
pub fn count_mis_rooted(g: &Tree, root: VertexId) -> Result<MisCount, GraphError> {
    g.check_vertex(root)?;
    Ok(MisCount(run_dp(g, root.0, None)))
}

/// Number of maximal independent sets containing `x`.
pub fn count_mis_containing(g: &Tree, x: VertexId) -> Result<MisCount, GraphError> {
    g.check_vertex(x)?;
    Ok(MisCount(run_dp(g, 0, Some(x.0))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Vertices of the side-restricted subgraph for the vertex at core position
/// `pos`. Left of a core vertex: itself plus every lower core position with its
/// leaf. A leaf's side additionally contains the leaf itself.
pub(crate) fn side_vertices(e: &ExpandedTree, pos: usize, kind: VertexKind, side: Side) -> Vec<VertexId> {
    let n = e.core_size();
    let others: Vec<usize> = match side {
        Side::Left => (0..pos).collect(),
        Side::Right => (pos + 1..n).collect(),
    };
    let mut keep = vec![e.core_vertex(pos)];
    if kind == VertexKind::Leaf {
        keep.push(e.leaf_of(pos));
    }
    for j in others {
        keep.push(e.core_vertex(j));
        keep.push(e.leaf_of(j));
    }
    keep
}

/// Count of MIS of the side-restricted subgraph that contain the vertex at
/// core position `pos`. Works at every position, including path ends.
pub(crate) fn side_count_at(
    e: &ExpandedTree,
    pos: usize,
    kind: VertexKind,
    side: Side,
) -> Result<MisCount, GraphError> {
    if !e.has_path_core() {
        return Err(GraphError::CoreNotPath);
    }
    let x = match kind {
        VertexKind::Core => e.core_vertex(pos),
        VertexKind::Leaf => e.leaf_of(pos),
    };
    let keep = side_vertices(e, pos, kind, side);
    let (sub, map) = e.graph().induced_subtree(&keep)?;
    let local = map.binary_search(&x).expect("x is kept");
    count_mis_containing(&sub, VertexId(local))
}

/// `l(x)` for central label `i` (`v_i` or `z_i`).
pub fn left_count(e: &ExpandedTree, label: usize, kind: VertexKind) -> Result<MisCount, GraphError> {
    let pos = e.central_position(label)?;
    side_count_at(e, pos, kind, Side::Left)
}

/// `r(x)` for central label `i`; the mirror image of [`left_count`].
pub fn right_count(e: &ExpandedTree, label: usize, kind: VertexKind) -> Result<MisCount, GraphError> {
    let pos = e.central_position(label)?;
    side_count_at(e, pos, kind, Side::Right)
}

/// `l`, `r` and `lambda` for one labelled vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideCounts {
    pub l: MisCount,
    pub r: MisCount,
    pub lambda: MisCount,
}

pub fn side_counts(e: &ExpandedTree, label: usize, kind: VertexKind) -> Result<SideCounts, GraphError> {
    let x = e.central_vertex(label, kind)?;
    Ok(SideCounts {
        l: left_count(e, label, kind)?,
        r: right_count(e, label, kind)?,
        lambda: count_mis_containing(e.graph(), x)?,
    })
}

/// Weighted left count `beta * l(x) + alpha * l'(x)`, where `l'` is the left
/// count of the same vertex after deleting the leftmost core vertex (and its
/// leaf). For `v_i` this is `beta F_{n-i} + alpha F_{n-i-1} = G_{n-i}`; for
/// `z_i` it is `G_{n-i+1}`.
pub fn weighted_left_count(
    e: &ExpandedTree,
    label: usize,
    kind: VertexKind,
    alpha: &Rational,
    beta: &Rational,
) -> Result<Rational, GraphError> {
    let pos = e.central_position(label)?;
    let unshortened = side_count_at(e, pos, kind, Side::Left)?;
    let shortened_tree = expand(&path_tree(e.core_size() - 1)?);
    let shortened = side_count_at(&shortened_tree, pos - 1, kind, Side::Left)?;
    Ok(beta * unshortened.to_rational() + alpha * shortened.to_rational())
}

fn record_eq(
    report: &mut IdentityReport,
    check: &str,
    n: usize,
    i: Option<usize>,
    expected: &BigInt,
    actual: &BigInt,
) {
    report.record(expected == actual, || {
        let c = Counterexample::new(actual, expected)
            .at("check", check)
            .at("n", n as i64);
        match i {
            Some(i) => c.at("i", i as i64),
            None => c,
        }
    });
}

/// Checks, on the expanded path of core size `n`, every central label `i`:
/// `lambda(z_i) + lambda(v_i) = M`, `lambda = l * r` for both vertices, the
/// closed forms `l(v_i) = F_{n-i}`, `r(v_i) = F_{i+1}`, `l(z_i) = F_{n-i+1}`,
/// `r(z_i) = F_{i+2}`, and `M = 2F_n + F_{n-1} = F_{n+2}`.
///
/// Counterexamples report the computed value as `lhs` and the expected one as `rhs`.
pub fn verify_sanders_results(n: usize) -> Result<IdentityReport, MisError> {
    if n < 3 {
        return Err(GraphError::EmptyCentralPath(n).into());
    }
    let e = expand(&path_tree(n)?);
    let total = count_mis(e.graph()).to_bigint();
    let ni = n as i64;
    let mut report = IdentityReport::new("sanders").param("n", n);

    record_eq(&mut report, "total=F(n+2)", n, None, &fib_int(ni + 2), &total);
    let two_term = fib_int(ni) * 2 + fib_int(ni - 1);
    record_eq(&mut report, "total=2F(n)+F(n-1)", n, None, &two_term, &total);

    for label in e.central_labels() {
        let li = label as i64;
        let v = side_counts(&e, label, VertexKind::Core)?;
        let z = side_counts(&e, label, VertexKind::Leaf)?;
        let at = Some(label);
        record_eq(&mut report, "lambda(z)+lambda(v)=M", n, at, &total, &(&z.lambda + &v.lambda).to_bigint());
        record_eq(&mut report, "lambda(v)=l(v)r(v)", n, at, &v.lambda.to_bigint(), &(&v.l * &v.r).to_bigint());
        record_eq(&mut report, "lambda(z)=l(z)r(z)", n, at, &z.lambda.to_bigint(), &(&z.l * &z.r).to_bigint());
        record_eq(&mut report, "l(v)=F(n-i)", n, at, &fib_int(ni - li), &v.l.to_bigint());
        record_eq(&mut report, "r(v)=F(i+1)", n, at, &fib_int(li + 1), &v.r.to_bigint());
        record_eq(&mut report, "l(z)=F(n-i+1)", n, at, &fib_int(ni - li + 1), &z.l.to_bigint());
        record_eq(&mut report, "r(z)=F(i+2)", n, at, &fib_int(li + 2), &z.r.to_bigint());
    }
    Ok(report)
}

/// [`verify_sanders_results`] for every core size `3..=n_max`.
pub fn verify_sanders_sweep(n_max: usize) -> Result<IdentityReport, MisError> {
    if n_max < 3 {
        return Err(GraphError::EmptyCentralPath(n_max).into());
    }
    let mut report = IdentityReport::new("sanders").param("n_max", n_max);
    for n in 3..=n_max {
        report.absorb(verify_sanders_results(n)?);
        if !report.pass() {
            break;
        }
    }
    Ok(report)
}

/// On the corona of an arbitrary core: for every core vertex `v` and its
/// leaf `z`, `M = lambda(z) + lambda(v)`.
pub fn verify_result1_general(core: &Tree) -> IdentityReport {
    let e = expand(core);
    let g = e.graph();
    let total = count_mis(g);
    let mut report = IdentityReport::new("result1-general")
        .param("core_size", core.vertex_count())
        .param("total", total.to_string());
    for pos in 0..e.core_size() {
        let lv = count_mis_containing(g, e.core_vertex(pos)).expect("in range");
        let lz = count_mis_containing(g, e.leaf_of(pos)).expect("in range");
        let sum = &lv + &lz;
        report.record(sum == total, || {
            Counterexample::new(&sum, &total).at("position", pos as i64)
        });
    }
    report
}
