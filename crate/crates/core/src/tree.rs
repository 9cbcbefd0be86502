//! Trees: structural predicates, attach-and-relabel propagation, and
//! canonical codes for isomorphism classes.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{GracefulMatrix, LabeledGraph};
use crate::propagation::enumerate_graceful;

/// Smallest-label representative per union-find set.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..=n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.0[root] != root {
            root = self.0[root];
        }
        let mut cur = x;
        while self.0[cur] != root {
            let next = self.0[cur];
            self.0[cur] = root;
            cur = next;
        }
        root
    }

    /// False if `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

pub fn has_cycle(g: &LabeledGraph) -> bool {
    let mut dsu = Dsu::new(g.n());
    g.edges().iter().any(|&(u, v)| !dsu.union(u, v))
}

/// A single vertex counts as connected.
pub fn is_connected(g: &LabeledGraph) -> bool {
    let adj = g.adjacency_lists();
    let mut seen = vec![false; g.n() + 1];
    let mut queue = VecDeque::from([1]);
    seen[1] = true;
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == g.n()
}

pub fn isolated_vertices(g: &LabeledGraph) -> BTreeSet<usize> {
    let mut deg = vec![0usize; g.n() + 1];
    for &(u, v) in g.edges() {
        deg[u] += 1;
        deg[v] += 1;
    }
    (1..=g.n()).filter(|&v| deg[v] == 0).collect()
}

/// Connected and acyclic. Having no isolated vertex is not enough: two
/// disjoint edges have none.
pub fn is_tree(g: &LabeledGraph) -> bool {
    is_connected(g) && !has_cycle(g)
}

/// A [`LabeledGraph`] that is a tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledTree(LabeledGraph);

impl LabeledTree {
    pub fn new(g: LabeledGraph) -> Result<Self> {
        if g.edge_count() + 1 == g.n() && is_connected(&g) && !has_cycle(&g) {
            Ok(LabeledTree(g))
        } else {
            Err(Error::NotATree)
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::new(LabeledGraph::new(n, edges)?)
    }

    pub fn single_vertex() -> Self {
        LabeledTree(LabeledGraph::new(1, []).expect("one vertex"))
    }

    pub fn n(&self) -> usize {
        self.0.n()
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.0
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.0
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        self.0.edges()
    }
}

impl TryFrom<LabeledGraph> for LabeledTree {
    type Error = Error;

    fn try_from(g: LabeledGraph) -> Result<Self> {
        LabeledTree::new(g)
    }
}

/// Label `i` of the vertex the new leaf attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AttachChoice(pub usize);

/// Attaches a new leaf `n + 1` to vertex `i`, then relabels the leaf to
/// `n + 2 - i` and shifts every old label `s >= n + 2 - i` up by one.
pub fn propagate_tree(tree: &LabeledTree, choice: AttachChoice) -> Result<LabeledTree> {
    let n = tree.n();
    let i = choice.0;
    if !(1..=n).contains(&i) {
        return Err(Error::ChoiceOutOfRange { i, n });
    }
    Ok(attach_and_relabel(tree, i))
}

fn attach_and_relabel(tree: &LabeledTree, i: usize) -> LabeledTree {
    let n = tree.n();
    let leaf = n + 2 - i;
    let shift = |s: usize| if s >= leaf { s + 1 } else { s };
    let edges = tree
        .edges()
        .iter()
        .map(|&(u, v)| (shift(u), shift(v)))
        .chain(std::iter::once((shift(i), leaf)));
    let g = LabeledGraph::new(n + 1, edges).expect("relabeling is a bijection onto 1..=n+1");
    debug_assert!(is_tree(&g));
    LabeledTree(g)
}

/// Outputs of [`propagate_tree`] for `i = 1..=n` in order.
pub fn propagate_tree_all(tree: &LabeledTree) -> Vec<LabeledTree> {
    (1..=tree.n())
        .map(|i| attach_and_relabel(tree, i))
        .collect()
}

/// Removes vertex `label` and closes the gap by decrementing every larger
/// label. Inverse of [`propagate_tree`] when `label = n + 2 - i`.
pub fn delete_and_decrement(g: &LabeledGraph, label: usize) -> Result<LabeledGraph> {
    let n = g.n();
    if !(1..=n).contains(&label) {
        return Err(Error::ChoiceOutOfRange { i: label, n });
    }
    if n == 1 {
        return Err(Error::EmptyGraph);
    }
    let down = |s: usize| if s > label { s - 1 } else { s };
    LabeledGraph::new(
        n - 1,
        g.edges()
            .iter()
            .filter(|&&(u, v)| u != label && v != label)
            .map(|&(u, v)| (down(u), down(v))),
    )
}

/// Canonical parenthesis code of an unlabeled tree, rooted at its center.
/// Equal codes mean isomorphic trees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeCode(String);

impl TreeCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of vertices encoded.
    pub fn n(&self) -> usize {
        self.0.len() / 2
    }

    /// Parses and re-canonicalizes a code string.
    pub fn parse(s: &str) -> Result<Self> {
        let tree = decode(s)?;
        Ok(tree_code(&tree))
    }

    /// A labeled representative: preorder labels, root labeled 1.
    pub fn to_tree(&self) -> LabeledTree {
        decode(&self.0).expect("codes are well formed by construction")
    }
}

impl fmt::Display for TreeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn decode(s: &str) -> Result<LabeledTree> {
    let bad = |msg: &str| Error::InvalidTreeCode(format!("{msg}: {s:?}"));
    let mut stack: Vec<usize> = Vec::new();
    let mut edges = Vec::new();
    let mut next = 0;
    let mut closed_root = false;
    for ch in s.chars() {
        if closed_root {
            return Err(bad("text after the root closes"));
        }
        match ch {
            '(' => {
                next += 1;
                if let Some(&p) = stack.last() {
                    edges.push((p, next));
                }
                stack.push(next);
            }
            ')' => {
                stack.pop().ok_or_else(|| bad("unbalanced"))?;
                closed_root = stack.is_empty();
            }
            _ => return Err(bad("unexpected character")),
        }
    }
    if !closed_root {
        return Err(bad("unbalanced"));
    }
    LabeledTree::from_edges(next, edges)
}

/// Centers of a tree: the one or two vertices left after peeling leaves.
fn centers(adj: &[Vec<usize>], n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![1];
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (1..=n).filter(|&v| deg[v] == 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in &adj[leaf] {
                deg[u] -= 1;
                if deg[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    layer.sort_unstable();
    layer
}

fn rooted_code(adj: &[Vec<usize>], root: usize) -> String {
    let n = adj.len() - 1;
    let mut parent = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut stack = vec![root];
    parent[root] = usize::MAX;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &v in &adj[u] {
            if v != parent[u] {
                parent[v] = u;
                stack.push(v);
            }
        }
    }
    let mut child_codes: Vec<Vec<String>> = vec![Vec::new(); n + 1];
    let mut code = String::new();
    for &u in order.iter().rev() {
        let mut kids = std::mem::take(&mut child_codes[u]);
        kids.sort_unstable();
        code = String::with_capacity(2 + kids.iter().map(String::len).sum::<usize>());
        code.push('(');
        kids.iter().for_each(|k| code.push_str(k));
        code.push(')');
        if u != root {
            child_codes[parent[u]].push(code.clone());
        }
    }
    code
}

pub fn tree_code(tree: &LabeledTree) -> TreeCode {
    let adj = tree.graph().adjacency_lists();
    let code = centers(&adj, tree.n())
        .into_iter()
        .map(|c| rooted_code(&adj, c))
        .min()
        .expect("a tree has at least one center");
    TreeCode(code)
}

/// One labeled representative per isomorphism class on `n` vertices, keyed
/// by code. The representative is the smallest labeled tree (by edge list)
/// among the propagation outputs carrying that code.
pub fn enumerate_tree_classes(n: usize) -> Result<BTreeMap<TreeCode, LabeledTree>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let seed = match n {
        1 => LabeledTree::single_vertex(),
        2 => LabeledTree::from_edges(2, [(1, 2)])?,
        _ => LabeledTree::from_edges(3, [(1, 2), (2, 3)])?,
    };
    let mut level = BTreeMap::from([(tree_code(&seed), seed)]);
    for _ in 3..n {
        let mut children: Vec<(TreeCode, LabeledTree)> = level
            .par_iter()
            .flat_map_iter(|(_, t)| propagate_tree_all(t))
            .map(|t| (tree_code(&t), t))
            .collect();
        children.par_sort_unstable();
        let mut next = BTreeMap::new();
        for (code, t) in children {
            next.entry(code).or_insert(t);
        }
        level = next;
    }
    Ok(level)
}

/// Codes of every unlabeled tree on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<BTreeSet<TreeCode>> {
    Ok(enumerate_tree_classes(n)?.into_keys().collect())
}

/// Graceful matrices of dimension `n` whose graphs are trees, in canonical
/// order.
pub fn filter_graceful_trees(n: usize) -> Result<Vec<GracefulMatrix>> {
    let all = enumerate_graceful(n)?;
    Ok(all.into_iter().filter(|m| is_tree(&m.to_graph())).collect())
}
