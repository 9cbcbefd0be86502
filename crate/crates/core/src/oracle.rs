//! Independent brute-force constructions used to cross-check the
//! propagation engines, and the small-n graceful tree check.
//!
//! Nothing here calls into [`crate::propagation`]: the graceful matrices are
//! built by placing one 1 on each diagonal directly, and trees come from
//! Prüfer sequences rather than leaf attachment.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{AdjacencyMatrix, GracefulMatrix, LabeledGraph};
use crate::tree::{enumerate_trees, LabeledTree, TreeCode};

/// Resource guards. `GRACEFUL_MAX_N` replaces all three when set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_matrix_n: usize,
    pub max_tree_n: usize,
    pub max_conjecture_n: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_matrix_n: 10,
            max_tree_n: 12,
            max_conjecture_n: 11,
        }
    }
}

impl Limits {
    pub fn uniform(n: usize) -> Self {
        Limits {
            max_matrix_n: n,
            max_tree_n: n,
            max_conjecture_n: n,
        }
    }

    pub fn check_matrix(&self, n: usize) -> Result<()> {
        guard("matrix enumeration", n, self.max_matrix_n)
    }

    pub fn check_tree(&self, n: usize) -> Result<()> {
        guard("graceful labeling search", n, self.max_tree_n)
    }

    pub fn check_conjecture(&self, n: usize) -> Result<()> {
        guard("conjecture check", n, self.max_conjecture_n)
    }
}

fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::LimitExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

/// All graceful `n x n` matrices built directly: for each offset `c`, pick
/// one of its `n - c` positions. Returned in canonical order.
pub fn brute_force_graceful_matrices(n: usize) -> Result<Vec<GracefulMatrix>> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    // row[c] in 1..=n-c for c in 1..n
    let mut row = vec![1usize; n];
    let mut out = Vec::new();
    loop {
        let m = AdjacencyMatrix::from_edges(n, (1..n).map(|c| (row[c], row[c] + c)))?;
        out.push(GracefulMatrix::new(m)?);
        let mut c = n - 1;
        loop {
            if c == 0 {
                out.sort_unstable();
                return Ok(out);
            }
            if row[c] < n - c {
                row[c] += 1;
                break;
            }
            row[c] = 1;
            c -= 1;
        }
    }
}

/// Decodes one Prüfer sequence over `1..=n` (length `n - 2`).
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<LabeledTree> {
    if n < 2 || seq.len() != n - 2 || seq.iter().any(|&s| s == 0 || s > n) {
        return Err(Error::InvalidSelection(format!(
            "not a Prüfer sequence for n = {n}: {seq:?}"
        )));
    }
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let u = leaves.pop_first().expect("two leaves remain");
    let v = leaves.pop_first().expect("two leaves remain");
    edges.push((u, v));
    LabeledTree::from_edges(n, edges)
}

/// Every labeled tree on `1..=n`, one per Prüfer sequence in lexicographic
/// order. `n^(n-2)` trees for `n >= 2`; the single vertex for `n = 1`.
pub fn prufer_trees(n: usize) -> Result<Vec<LabeledTree>> {
    Ok(PruferTrees::new(n)?.collect())
}

/// Streaming form of [`prufer_trees`].
#[derive(Debug, Clone)]
pub struct PruferTrees {
    n: usize,
    seq: Option<Vec<usize>>,
}

impl PruferTrees {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(PruferTrees {
            n,
            seq: Some(vec![1; n.saturating_sub(2)]),
        })
    }
}

impl Iterator for PruferTrees {
    type Item = LabeledTree;

    fn next(&mut self) -> Option<LabeledTree> {
        let seq = self.seq.as_mut()?;
        let tree = match self.n {
            1 => LabeledTree::single_vertex(),
            n => prufer_decode(n, seq).expect("sequence stays in range"),
        };
        let mut k = seq.len();
        loop {
            if k == 0 {
                self.seq = None;
                break;
            }
            k -= 1;
            if seq[k] < self.n {
                seq[k] += 1;
                break;
            }
            seq[k] = 1;
        }
        Some(tree)
    }

    /// Jumps by treating the sequence as a base-`n` counter.
    fn nth(&mut self, k: usize) -> Option<LabeledTree> {
        let n = self.n;
        let seq = self.seq.as_mut()?;
        let mut carry = k;
        for d in seq.iter_mut().rev() {
            if carry == 0 {
                break;
            }
            let v = *d - 1 + carry;
            *d = v % n + 1;
            carry = v / n;
        }
        if carry > 0 || (seq.is_empty() && k > 0) {
            self.seq = None;
        }
        self.next()
    }
}

/// Bijection from the vertices `1..=n` of a tree onto labels `1..=n`;
/// `assign[v - 1]` is the label of vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    assign: Vec<usize>,
}

impl Labeling {
    pub fn new(assign: Vec<usize>) -> Result<Self> {
        let n = assign.len();
        let mut seen = vec![false; n + 1];
        for &l in &assign {
            if l == 0 || l > n || seen[l] {
                return Err(Error::InvalidSelection(format!(
                    "not a bijection onto 1..={n}: {assign:?}"
                )));
            }
            seen[l] = true;
        }
        Ok(Labeling { assign })
    }

    pub fn label(&self, v: usize) -> usize {
        self.assign[v - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.assign
    }

    /// The graph with every vertex renamed to its label.
    pub fn apply(&self, g: &LabeledGraph) -> Result<LabeledGraph> {
        if g.n() != self.assign.len() {
            return Err(Error::InvalidSelection(format!(
                "labeling has {} entries, graph has {} vertices",
                self.assign.len(),
                g.n()
            )));
        }
        LabeledGraph::new(
            g.n(),
            g.edges()
                .iter()
                .map(|&(u, v)| (self.label(u), self.label(v))),
        )
    }
}

/// Searches for a graceful labeling of the tree encoded by `code`, on the
/// vertex numbering of [`TreeCode::to_tree`].
pub fn find_graceful_labeling(code: &TreeCode, limits: &Limits) -> Result<Option<Labeling>> {
    limits.check_tree(code.n())?;
    Ok(search_graceful_labeling(&code.to_tree()))
}

/// Depth-first search over label assignments.
///
/// Vertices are visited starting at a vertex of maximum degree, always
/// taking the highest-degree vertex adjacent to those already placed, so
/// each new vertex closes exactly one edge. A label is rejected as soon as
/// it, or the weight of that edge, is already in use, or when some missing
/// weight no longer has a label pair a future edge could join. Leaves with a
/// common parent take increasing labels. Labels are otherwise tried in
/// increasing order, so the first labeling found is deterministic.
pub fn search_graceful_labeling(tree: &LabeledTree) -> Option<Labeling> {
    let n = tree.n();
    if n == 1 {
        return Some(Labeling { assign: vec![1] });
    }
    let adj = tree.graph().adjacency_lists();
    let (order, parent) = visit_order(&adj, n);
    // leaves sharing a parent are interchangeable: label them increasingly
    let mut twin_prev = vec![0usize; n + 1];
    let mut last_leaf = vec![0usize; n + 1];
    for &v in &order[1..] {
        if adj[v].len() == 1 {
            twin_prev[v] = last_leaf[parent[v]];
            last_leaf[parent[v]] = v;
        }
    }

    let mut state = Search {
        n,
        order: &order,
        parent: &parent,
        twin_prev: &twin_prev,
        label: vec![0; n + 1],
        owner: vec![0; n + 1],
        open: adj.iter().map(Vec::len).collect(),
        used_weight: vec![false; n],
    };
    state.descend(0).then(|| Labeling {
        assign: state.label[1..].to_vec(),
    })
}

fn visit_order(adj: &[Vec<usize>], n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut v = (1..=n)
        .max_by_key(|&v| (adj[v].len(), Reverse(v)))
        .expect("n >= 1");
    let mut placed = vec![false; n + 1];
    let mut parent = vec![0usize; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut frontier = BinaryHeap::new();
    loop {
        placed[v] = true;
        order.push(v);
        for &u in &adj[v] {
            if !placed[u] {
                parent[u] = v;
                frontier.push((adj[u].len(), Reverse(u)));
            }
        }
        match frontier.pop() {
            Some((_, Reverse(u))) => v = u,
            None => break,
        }
    }
    debug_assert_eq!(order.len(), n);
    (order, parent)
}

struct Search<'a> {
    n: usize,
    order: &'a [usize],
    parent: &'a [usize],
    /// Previously placed leaf with the same parent, 0 if none.
    twin_prev: &'a [usize],
    label: Vec<usize>,
    /// Vertex holding each label, 0 if free.
    owner: Vec<usize>,
    /// Neighbors of each vertex not yet placed.
    open: Vec<usize>,
    used_weight: Vec<bool>,
}

impl Search<'_> {
    fn descend(&mut self, k: usize) -> bool {
        if k == self.n {
            return true;
        }
        let v = self.order[k];
        let p = self.parent[v];
        let anchor = (k > 0).then(|| self.label[p]);
        let floor = self.label[self.twin_prev[v]];
        for l in floor + 1..=self.n {
            if self.owner[l] != 0 {
                continue;
            }
            let w = anchor.map(|a| a.abs_diff(l));
            if let Some(w) = w {
                if self.used_weight[w] {
                    continue;
                }
                self.used_weight[w] = true;
                self.open[p] -= 1;
                self.open[v] -= 1;
            }
            self.owner[l] = v;
            self.label[v] = l;
            if self.weights_reachable() && self.descend(k + 1) {
                return true;
            }
            self.owner[l] = 0;
            if let Some(w) = w {
                self.used_weight[w] = false;
                self.open[p] += 1;
                self.open[v] += 1;
            }
        }
        self.label[v] = 0;
        false
    }

    /// Every missing weight still has a label pair that a future edge could
    /// join: not both placed, and any placed end still has an open
    /// neighbor.
    fn weights_reachable(&self) -> bool {
        let end_ok = |l: usize| {
            let v = self.owner[l];
            v == 0 || self.open[v] > 0
        };
        (1..self.n).filter(|&w| !self.used_weight[w]).all(|w| {
            (1..=self.n - w).any(|a| {
                let b = a + w;
                !(self.owner[a] != 0 && self.owner[b] != 0) && end_ok(a) && end_ok(b)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub trees: usize,
    pub graceful: usize,
    pub elapsed_ms: u64,
}

/// Outcome of checking every tree up to `n_max` vertices for a graceful
/// labeling. `failures` holds the codes of trees with none.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n_max: usize,
    pub rows: Vec<ConjectureRow>,
    pub failures: Vec<String>,
}

impl ConjectureReport {
    pub fn all_graceful(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the labeling search on every unlabeled tree with `1..=n_max`
/// vertices. Trees within a level are searched in parallel.
pub fn check_conjecture(n_max: usize, limits: &Limits) -> Result<ConjectureReport> {
    if n_max == 0 {
        return Err(Error::EmptyGraph);
    }
    limits.check_conjecture(n_max)?;
    limits.check_tree(n_max)?;
    let mut rows = Vec::with_capacity(n_max);
    let mut failures = Vec::new();
    for n in 1..=n_max {
        let start = Instant::now();
        let codes: Vec<TreeCode> = enumerate_trees(n)?.into_iter().collect();
        let found: Vec<bool> = codes
            .par_iter()
            .map(|c| search_graceful_labeling(&c.to_tree()).is_some())
            .collect();
        let graceful = found.iter().filter(|&&f| f).count();
        failures.extend(
            codes
                .iter()
                .zip(&found)
                .filter(|(_, &f)| !f)
                .map(|(c, _)| c.to_string()),
        );
        rows.push(ConjectureRow {
            n,
            trees: codes.len(),
            graceful,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(ConjectureReport {
        n_max,
        rows,
        failures,
    })
}
