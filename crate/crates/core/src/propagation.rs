//! Growing graceful matrices by inserting new diagonals.
//!
//! Single-vertex propagation pushes every existing diagonal one step away
//! from the main diagonal and fills the freshly opened superdiagonal with a
//! single 1. Applied to every graceful matrix of dimension `n` with every
//! admissible slot, it yields each graceful matrix of dimension `n + 1`
//! exactly once, which is what [`enumerate_graceful`] relies on.
//!
//! Multiple-vertex propagation keeps the parent as the leading block and
//! appends `n_e` vertices whose border block carries one 1 on each of the
//! `n_e` brand-new diagonals. It never touches the parent, so the parent
//! survives as an induced subgraph, but it reaches only a fraction of the
//! larger graceful matrices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{AdjacencyMatrix, GracefulMatrix};

/// Row `i` of the superdiagonal entry `(i, i + 1)` set by single-vertex
/// propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingleChoice(pub usize);

/// Inserts the new superdiagonal with its 1 at `(i, i + 1)`.
///
/// Every old upper entry `(r, s)` moves to `(r, s + 1)`; in graph terms the
/// old edge `{u, v}` becomes `{u, v + 1}` and `{i, i + 1}` is added.
pub fn propagate_single(parent: &GracefulMatrix, choice: SingleChoice) -> Result<GracefulMatrix> {
    let n = parent.n();
    let i = choice.0;
    if !(1..=n).contains(&i) {
        return Err(Error::ChoiceOutOfRange { i, n });
    }
    Ok(shift_and_insert(parent.matrix(), i))
}

fn shift_and_insert(parent: &AdjacencyMatrix, i: usize) -> GracefulMatrix {
    let mut out = AdjacencyMatrix::zeroed(parent.n() + 1);
    for (r, s) in parent.edges() {
        out.set(r, s + 1);
    }
    out.set(i, i + 1);
    GracefulMatrix::certified(out)
}

/// All `n` children of `parent`, for `i = 1..=n` in order.
pub fn propagate_single_all(parent: &GracefulMatrix) -> Vec<GracefulMatrix> {
    (1..=parent.n())
        .map(|i| shift_and_insert(parent.matrix(), i))
        .collect()
}

/// Every graceful matrix of dimension `n`, in canonical order, grown from
/// the 2x2 seed one level at a time.
///
/// `n = 1` yields the single 1x1 zero matrix; `n = 0` is rejected. Each level
/// fans out per parent on the current rayon pool and is sorted before the
/// next, so the result does not depend on the number of threads.
pub fn enumerate_graceful(n: usize) -> Result<Vec<GracefulMatrix>> {
    match n {
        0 => return Err(Error::EmptyGraph),
        1 => return Ok(vec![GracefulMatrix::certified(AdjacencyMatrix::zeroed(1))]),
        _ => {}
    }
    let mut level = vec![GracefulMatrix::p2()];
    for _ in 2..n {
        level = level
            .par_iter()
            .flat_map_iter(propagate_single_all)
            .collect();
        level.par_sort_unstable();
        if cfg!(debug_assertions) {
            assert!(
                level.windows(2).all(|w| w[0] != w[1]),
                "single-vertex propagation produced a duplicate"
            );
        }
    }
    Ok(level)
}

/// For each new diagonal `d = 0..n_e`, the row of its single 1 inside the
/// border block. The 1 sits at `(pick[d], n + pick[d] + d)`, on offset
/// `n + d`, so `pick[d]` ranges over `1..=min(n, n_e - d)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiagonalSelection {
    n: usize,
    pick: Vec<usize>,
}

impl DiagonalSelection {
    pub fn new(n: usize, pick: Vec<usize>) -> Result<Self> {
        if pick.is_empty() {
            return Err(Error::InvalidSelection("n_e must be at least 1".into()));
        }
        let n_e = pick.len();
        for (d, &i) in pick.iter().enumerate() {
            let hi = n.min(n_e - d);
            if !(1..=hi).contains(&i) {
                return Err(Error::InvalidSelection(format!(
                    "pick[{d}] = {i} outside 1..={hi}"
                )));
            }
        }
        Ok(DiagonalSelection { n, pick })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_e(&self) -> usize {
        self.pick.len()
    }

    pub fn pick(&self) -> &[usize] {
        &self.pick
    }

    /// Upper-triangle positions of the border 1s, one per new diagonal.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pick
            .iter()
            .enumerate()
            .map(move |(d, &i)| (i, self.n + i + d))
    }
}

/// Lexicographic walk over every [`DiagonalSelection`] for `(n, n_e)`.
#[derive(Debug, Clone)]
pub struct SelectionSpace {
    n: usize,
    bounds: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl SelectionSpace {
    /// Number of selections, `prod_d min(n, n_e - d)`.
    pub fn size(&self) -> usize {
        self.bounds.iter().product()
    }
}

impl Iterator for SelectionSpace {
    type Item = DiagonalSelection;

    fn next(&mut self) -> Option<DiagonalSelection> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut k = succ.len();
        while k > 0 {
            k -= 1;
            if succ[k] < self.bounds[k] {
                succ[k] += 1;
                self.next = Some(succ);
                break;
            }
            succ[k] = 1;
        }
        Some(DiagonalSelection {
            n: self.n,
            pick: cur,
        })
    }
}

pub fn selection_space(n: usize, n_e: usize) -> SelectionSpace {
    let bounds: Vec<usize> = (0..n_e).map(|d| n.min(n_e - d)).collect();
    let start = (n >= 1 && n_e >= 1).then(|| vec![1; n_e]);
    SelectionSpace {
        n,
        bounds,
        next: start,
    }
}

/// Appends `sel.n_e()` vertices: parent in the leading block, zeros in the
/// trailing block, one border 1 per new diagonal (mirrored below).
pub fn propagate_multi(parent: &GracefulMatrix, sel: &DiagonalSelection) -> Result<GracefulMatrix> {
    if sel.n != parent.n() {
        return Err(Error::InvalidSelection(format!(
            "selection built for n = {}, parent has n = {}",
            sel.n,
            parent.n()
        )));
    }
    Ok(attach_border(parent.matrix(), sel))
}

fn attach_border(parent: &AdjacencyMatrix, sel: &DiagonalSelection) -> GracefulMatrix {
    let mut out = AdjacencyMatrix::zeroed(parent.n() + sel.n_e());
    for (r, s) in parent.edges() {
        out.set(r, s);
    }
    for (r, s) in sel.positions() {
        out.set(r, s);
    }
    GracefulMatrix::certified(out)
}

/// One output per element of [`selection_space`], in selection order.
pub fn multi_propagate_all(parent: &GracefulMatrix, n_e: usize) -> Vec<GracefulMatrix> {
    selection_space(parent.n(), n_e)
        .map(|sel| attach_border(parent.matrix(), &sel))
        .collect()
}
