//! Adjacency matrices, their diagonals, and the two equivalent views of a
//! graceful labeling.
//!
//! Vertices are labeled `1..=n` everywhere in the public API. A diagonal is
//! addressed by its offset `c = j - i >= 1` in the upper triangle; the lower
//! triangle is its mirror and is never inspected separately.
//!
//! Rows are bit-packed with column `j` stored at the most significant end of
//! its word. With that layout the derived [`Ord`] on [`AdjacencyMatrix`] is
//! the lexicographic order of the upper-triangle bits read row by row: the
//! first row where two matrices differ decides, and the part of that row
//! below the main diagonal is fixed by the (equal) rows above it.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
fn mask(col: usize) -> u64 {
    1u64 << (WORD - 1 - col % WORD)
}

/// Symmetric 0/1 matrix with zero main diagonal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdjacencyMatrix {
    n: usize,
    stride: usize,
    rows: Vec<u64>,
}

impl AdjacencyMatrix {
    /// The `n x n` zero matrix.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self::zeroed(n))
    }

    pub(crate) fn zeroed(n: usize) -> Self {
        let stride = n.div_ceil(WORD);
        AdjacencyMatrix {
            n,
            stride,
            rows: vec![0; n * stride],
        }
    }

    /// Builds the matrix of the given unordered pairs. `{u, v}` and `{v, u}`
    /// name the same edge.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = Self::empty(n)?;
        for (a, b) in edges {
            let (u, v) = normalize(n, a, b)?;
            if m.get(u, v) {
                return Err(Error::DuplicateEdge(u, v));
            }
            m.set(u, v);
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j` (1-indexed). Panics if out of range.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i}, {j}) outside a {0}x{0} matrix",
            self.n
        );
        let (r, c) = (i - 1, j - 1);
        self.rows[r * self.stride + c / WORD] & mask(c) != 0
    }

    /// Sets `(u, v)` and `(v, u)`. Callers guarantee `u != v` and range.
    #[inline]
    pub(crate) fn set(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u >= 1 && v >= 1 && u <= self.n && v <= self.n);
        let (r, c) = (u - 1, v - 1);
        self.rows[r * self.stride + c / WORD] |= mask(c);
        self.rows[c * self.stride + r / WORD] |= mask(r);
    }

    /// Upper-triangle edges `(u, v)`, `u < v`, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |r| {
            let row = &self.rows[r * self.stride..(r + 1) * self.stride];
            row.iter().enumerate().flat_map(move |(w, &word)| {
                // only columns strictly right of the diagonal
                let word = if w == r / WORD {
                    let keep = WORD - 1 - r % WORD;
                    if keep == 0 {
                        0
                    } else {
                        word & ((1u64 << keep) - 1)
                    }
                } else if w < r / WORD {
                    0
                } else {
                    word
                };
                BitIter(word).map(move |b| (r + 1, w * WORD + b + 1))
            })
        })
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.rows.iter().map(|w| w.count_ones()).sum();
        total as usize / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        assert!((1..=self.n).contains(&v));
        let r = v - 1;
        self.rows[r * self.stride..(r + 1) * self.stride]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// True iff the matrix is symmetric with a zero main diagonal. Always
    /// true for values built through this crate.
    pub fn is_well_formed(&self) -> bool {
        (1..=self.n)
            .all(|i| !self.get(i, i) && (i + 1..=self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Upper-triangle positions on diagonal offset `c` that hold a 1, in
    /// increasing row order.
    pub fn diagonal_ones(&self, c: usize) -> Result<Vec<(usize, usize)>> {
        let d = Diagonal::new(self.n, c)?;
        Ok(d.positions().filter(|&(i, j)| self.get(i, j)).collect())
    }

    /// Every offset `1..n` carries exactly one 1. Vacuously true at `n = 1`.
    pub fn is_graceful(&self) -> bool {
        let mut seen = vec![false; self.n];
        for (u, v) in self.edges() {
            let c = v - u;
            if seen[c] {
                return false;
            }
            seen[c] = true;
        }
        seen[1..].iter().all(|&s| s)
    }

    /// Leading principal `k x k` block.
    pub fn leading_block(&self, k: usize) -> Result<AdjacencyMatrix> {
        if k == 0 || k > self.n {
            return Err(Error::ChoiceOutOfRange { i: k, n: self.n });
        }
        AdjacencyMatrix::from_edges(k, self.edges().filter(|&(_, v)| v <= k))
    }

    pub fn to_graph(&self) -> LabeledGraph {
        LabeledGraph {
            n: self.n,
            edges: self.edges().collect(),
        }
    }
}

impl fmt::Debug for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AdjacencyMatrix")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Renders the matrix text format: `n` on the first line, then one row per
/// line as space-separated bits.
impl fmt::Display for AdjacencyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for i in 1..=self.n {
            for j in 1..=self.n {
                if j > 1 {
                    f.write_str(" ")?;
                }
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let lz = self.0.leading_zeros() as usize;
        self.0 &= !(1u64 << (WORD - 1 - lz));
        Some(lz)
    }
}

fn normalize(n: usize, a: usize, b: usize) -> Result<(usize, usize)> {
    let (u, v) = if a <= b { (a, b) } else { (b, a) };
    if u == 0 || v > n {
        return Err(Error::EndpointOutOfRange { u: a, v: b, n });
    }
    if u == v {
        return Err(Error::SelfLoop(u));
    }
    Ok((u, v))
}

/// The positions `(i, i + c)` of an `n x n` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Diagonal {
    n: usize,
    offset: usize,
}

impl Diagonal {
    pub fn new(n: usize, offset: usize) -> Result<Self> {
        if offset == 0 || offset >= n {
            return Err(Error::OffsetOutOfRange {
                c: offset,
                max: n.saturating_sub(1),
            });
        }
        Ok(Diagonal { n, offset })
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.n - self.offset
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> {
        let c = self.offset;
        (1..=self.n - c).map(move |i| (i, i + c))
    }
}

/// An adjacency matrix whose every nonzero diagonal holds exactly one 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GracefulMatrix(AdjacencyMatrix);

impl GracefulMatrix {
    pub fn new(m: AdjacencyMatrix) -> Result<Self> {
        if m.is_graceful() {
            Ok(GracefulMatrix(m))
        } else {
            Err(Error::NotGraceful)
        }
    }

    /// Construction sites that are graceful by design go through here so a
    /// broken index map surfaces in tests.
    pub(crate) fn certified(m: AdjacencyMatrix) -> Self {
        debug_assert!(m.is_well_formed());
        debug_assert!(m.is_graceful(), "not graceful: {m:?}");
        GracefulMatrix(m)
    }

    /// The unique graceful matrix on two vertices.
    pub fn p2() -> Self {
        let mut m = AdjacencyMatrix::zeroed(2);
        m.set(1, 2);
        GracefulMatrix(m)
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn matrix(&self) -> &AdjacencyMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> AdjacencyMatrix {
        self.0
    }

    pub fn to_graph(&self) -> LabeledGraph {
        self.0.to_graph()
    }
}

impl fmt::Debug for GracefulMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graceful{:?}", self.0)
    }
}

impl fmt::Display for GracefulMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<AdjacencyMatrix> for GracefulMatrix {
    type Error = Error;

    fn try_from(m: AdjacencyMatrix) -> Result<Self> {
        GracefulMatrix::new(m)
    }
}

impl AsRef<AdjacencyMatrix> for GracefulMatrix {
    fn as_ref(&self) -> &AdjacencyMatrix {
        &self.0
    }
}

/// Vertices `1..=n` plus a sorted, duplicate-free set of edges `(u, v)`
/// with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl LabeledGraph {
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut out = edges
            .into_iter()
            .map(|(a, b)| normalize(n, a, b))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(LabeledGraph { n, edges: out })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weights(&self) -> WeightMultiset {
        let mut w: Vec<usize> = self.edges.iter().map(|&(u, v)| v - u).collect();
        w.sort_unstable();
        WeightMultiset(w)
    }

    /// Labels `1..=m+1` on `m` edges whose weights are exactly `1..=m`.
    pub fn is_graceful(&self) -> bool {
        self.n == self.edges.len() + 1 && self.weights().is_complete_run()
    }

    pub fn to_matrix(&self) -> AdjacencyMatrix {
        let mut m = AdjacencyMatrix::zeroed(self.n);
        for &(u, v) in &self.edges {
            m.set(u, v);
        }
        m
    }

    /// Neighbor lists indexed by label; index 0 is unused.
    pub fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Edge weights `|u - v|`, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightMultiset(Vec<usize>);

impl WeightMultiset {
    pub fn from_weights(mut w: Vec<usize>) -> Self {
        w.sort_unstable();
        WeightMultiset(w)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Exactly `{1, 2, ..., len}`.
    pub fn is_complete_run(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &w)| w == k + 1)
    }
}

/// `make_matrix` under its operational name.
pub fn make_matrix(n: usize, edges: &[(usize, usize)]) -> Result<AdjacencyMatrix> {
    AdjacencyMatrix::from_edges(n, edges.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, e: &[(usize, usize)]) -> AdjacencyMatrix {
        make_matrix(n, e).unwrap()
    }

    #[test]
    fn make_matrix_examples() {
        let p2 = m(2, &[(1, 2)]);
        assert!(p2.get(1, 2) && p2.get(2, 1));
        assert!(!p2.get(1, 1) && !p2.get(2, 2));

        let z = m(3, &[]);
        assert_eq!(z.edge_count(), 0);
        assert!(z.is_well_formed());

        assert_eq!(
            make_matrix(3, &[(1, 3), (3, 1)]),
            Err(Error::DuplicateEdge(1, 3))
        );
        assert_eq!(make_matrix(3, &[(2, 2)]), Err(Error::SelfLoop(2)));
        assert!(matches!(
            make_matrix(3, &[(1, 4)]),
            Err(Error::EndpointOutOfRange { .. })
        ));
        assert!(matches!(
            make_matrix(3, &[(0, 1)]),
            Err(Error::EndpointOutOfRange { .. })
        ));
        assert_eq!(make_matrix(0, &[]), Err(Error::EmptyGraph));
    }

    #[test]
    fn diagonal_ones_examples() {
        assert_eq!(m(2, &[(1, 2)]).diagonal_ones(1).unwrap(), vec![(1, 2)]);
        let path = m(3, &[(1, 2), (2, 3)]);
        assert_eq!(path.diagonal_ones(1).unwrap(), vec![(1, 2), (2, 3)]);
        assert_eq!(path.diagonal_ones(2).unwrap(), vec![]);
        assert!(matches!(
            path.diagonal_ones(3),
            Err(Error::OffsetOutOfRange { c: 3, max: 2 })
        ));
        assert!(path.diagonal_ones(0).is_err());
    }

    #[test]
    fn graceful_matrix_examples() {
        assert!(m(2, &[(1, 2)]).is_graceful());
        assert!(!m(3, &[(1, 2), (2, 3)]).is_graceful());
        assert!(m(3, &[(1, 2), (1, 3)]).is_graceful());
        assert!(m(1, &[]).is_graceful());
        assert!(!m(3, &[(1, 3)]).is_graceful());
    }

    #[test]
    fn weight_examples() {
        let g = LabeledGraph::new(3, [(1, 2), (1, 3)]).unwrap();
        assert_eq!(g.weights().as_slice(), &[1, 2]);
        assert!(g.is_graceful());
        let g = LabeledGraph::new(3, [(1, 2), (2, 3)]).unwrap();
        assert_eq!(g.weights().as_slice(), &[1, 1]);
        assert!(!g.is_graceful());
        let g = LabeledGraph::new(2, []).unwrap();
        assert!(g.weights().is_empty());
        let g = LabeledGraph::new(4, [(2, 3), (1, 3), (1, 4)]).unwrap();
        assert_eq!(g.weights().as_slice(), &[1, 2, 3]);
        assert!(g.is_graceful());
    }

    #[test]
    fn graph_matrix_conversions() {
        let p2 = m(2, &[(1, 2)]);
        assert_eq!(p2.to_graph(), LabeledGraph::new(2, [(1, 2)]).unwrap());
        let star = LabeledGraph::new(5, [(1, 5), (2, 5), (3, 5), (4, 5)]).unwrap();
        assert_eq!(star.to_matrix().to_graph(), star);
        let g = LabeledGraph::new(3, [(1, 3)]).unwrap().to_matrix();
        let set: Vec<_> = (1..=3)
            .flat_map(|i| (1..=3).map(move |j| (i, j)))
            .filter(|&(i, j)| g.get(i, j))
            .collect();
        assert_eq!(set, vec![(1, 3), (3, 1)]);
    }

    #[test]
    fn order_is_row_major_upper_triangle() {
        // upper-triangle bit strings: (1,2)(1,3)(2,3)
        let a = m(3, &[(2, 3)]); // 001
        let b = m(3, &[(1, 3)]); // 010
        let c = m(3, &[(1, 2)]); // 100
        let d = m(3, &[(1, 3), (2, 3)]); // 011
        let mut v = vec![c.clone(), d.clone(), a.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, d, c]);
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let n = 130;
        let edges: Vec<_> = (1..n)
            .map(|u| (u, u + 1))
            .chain([(1, n), (63, 65), (64, 129)])
            .collect();
        let mat = AdjacencyMatrix::from_edges(n, edges.iter().copied()).unwrap();
        assert!(mat.is_well_formed());
        let mut want = edges.clone();
        want.sort();
        assert_eq!(mat.edges().collect::<Vec<_>>(), want);
        assert_eq!(mat.edge_count(), want.len());
        assert_eq!(mat.degree(64), 3);
    }

    #[test]
    fn leading_block_is_principal_submatrix() {
        let a = m(5, &[(1, 2), (1, 3), (2, 5), (1, 5)]);
        assert_eq!(a.leading_block(3).unwrap(), m(3, &[(1, 2), (1, 3)]));
        assert!(a.leading_block(6).is_err());
    }
}
