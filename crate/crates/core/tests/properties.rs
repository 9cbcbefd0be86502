use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use graceful::io::{edge_list_text, graph_from_edges, matrix_text, parse_edge_list, parse_matrix};
use graceful::matrix::{AdjacencyMatrix, GracefulMatrix, LabeledGraph};
use graceful::oracle::{
    brute_force_graceful_matrices, prufer_trees, search_graceful_labeling, Labeling,
};
use graceful::propagation::{
    enumerate_graceful, multi_propagate_all, propagate_single, selection_space, SingleChoice,
};
use graceful::tree::{
    delete_and_decrement, has_cycle, is_connected, is_tree, propagate_tree, tree_code,
    AttachChoice, LabeledTree,
};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n).tuple_combinations().collect()
}

fn relabel(g: &LabeledGraph, perm: &[usize]) -> LabeledGraph {
    LabeledGraph::new(
        g.n(),
        g.edges().iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])),
    )
    .unwrap()
}

#[test]
fn graceful_tests_agree_on_every_edge_set() {
    for n in 1..=6 {
        for edges in all_pairs(n).into_iter().combinations(n - 1) {
            let g = LabeledGraph::new(n, edges).unwrap();
            assert_eq!(g.is_graceful(), g.to_matrix().is_graceful(), "{g:?}");
        }
    }
}

#[test]
fn diagonal_lengths() {
    for n in 2..=6 {
        for edges in all_pairs(n).into_iter().combinations(n - 1) {
            let m = AdjacencyMatrix::from_edges(n, edges).unwrap();
            let graceful = m.is_graceful();
            for c in 1..n {
                let ones = m.diagonal_ones(c).unwrap();
                assert!(ones.len() <= n - c);
                if graceful {
                    assert_eq!(ones.len(), 1);
                }
            }
        }
    }
}

#[test]
fn counting_identity() {
    for n in 1..=8 {
        let fact: usize = (1..n).product();
        assert_eq!(
            brute_force_graceful_matrices(n).unwrap().len(),
            fact,
            "n = {n}"
        );
    }
    // independent of the diagonal-placement oracle: filter every 0/1 matrix
    for n in 2..=5 {
        let pairs = all_pairs(n);
        let count = (0u32..1 << pairs.len())
            .filter(|mask| {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e);
                AdjacencyMatrix::from_edges(n, edges).unwrap().is_graceful()
            })
            .count();
        assert_eq!(count, (1..n).product::<usize>());
    }
}

/// Builds the transition matrix cell by cell: upper cells two or more off
/// the diagonal come from `(r, c - 1)`, lower ones from `(r - 1, c)`.
#[allow(clippy::needless_range_loop)]
fn transition_oracle(parent: &AdjacencyMatrix, i: usize) -> AdjacencyMatrix {
    let n = parent.n();
    let mut dense = vec![vec![false; n + 2]; n + 2];
    for r in 1..=n + 1 {
        for c in 1..=n + 1 {
            dense[r][c] = if c >= r + 2 {
                parent.get(r, c - 1)
            } else if r >= c + 2 {
                parent.get(r - 1, c)
            } else if c == r + 1 || r == c + 1 {
                r.min(c) == i
            } else {
                false
            };
        }
    }
    let mut edges = Vec::new();
    for r in 1..=n + 1 {
        for c in 1..=n + 1 {
            assert_eq!(dense[r][c], dense[c][r], "transition matrix is symmetric");
            if c > r && dense[r][c] {
                edges.push((r, c));
            }
        }
    }
    AdjacencyMatrix::from_edges(n + 1, edges).unwrap()
}

#[test]
fn single_propagation_matches_transition_oracle() {
    let star =
        GracefulMatrix::new(AdjacencyMatrix::from_edges(3, [(1, 2), (1, 3)]).unwrap()).unwrap();
    let oracle = transition_oracle(star.matrix(), 3);
    assert_eq!(
        oracle.edges().collect::<Vec<_>>(),
        vec![(1, 3), (1, 4), (3, 4)]
    );
    for n in 2..=6 {
        for parent in brute_force_graceful_matrices(n).unwrap() {
            for i in 1..=n {
                let child = propagate_single(&parent, SingleChoice(i)).unwrap();
                assert_eq!(child.matrix(), &transition_oracle(parent.matrix(), i));
            }
        }
    }
}

#[test]
fn single_propagation_laws() {
    for n in 2..=7 {
        let parents = brute_force_graceful_matrices(n).unwrap();
        let mut seen = BTreeSet::new();
        for parent in &parents {
            let pw = parent.to_graph().weights();
            for i in 1..=n {
                let child = propagate_single(parent, SingleChoice(i)).unwrap();
                assert!(child.matrix().is_graceful());
                assert_eq!(
                    child.matrix().edge_count(),
                    parent.matrix().edge_count() + 1
                );
                let mut want: Vec<usize> = pw.as_slice().iter().map(|w| w + 1).collect();
                want.push(1);
                want.sort();
                assert_eq!(child.to_graph().weights().as_slice(), &want[..]);
                if n <= 6 {
                    assert!(seen.insert(child), "duplicate child at n = {n}");
                }
            }
        }
    }
}

#[test]
fn multi_propagation_laws() {
    for n in 2..=6 {
        for parent in brute_force_graceful_matrices(n).unwrap() {
            for n_e in 1..=4 {
                let outs = multi_propagate_all(&parent, n_e);
                assert_eq!(outs.len(), selection_space(n, n_e).size());
                for child in outs {
                    assert!(child.matrix().is_graceful());
                    assert_eq!(child.matrix().leading_block(n).unwrap(), *parent.matrix());
                    assert_eq!(
                        child.matrix().edge_count(),
                        parent.matrix().edge_count() + n_e
                    );
                    // trailing block stays zero
                    for r in n + 1..=n + n_e {
                        for c in n + 1..=n + n_e {
                            assert!(!child.matrix().get(r, c));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn multi_propagation_misses_graceful_matrices() {
    let mut union = BTreeSet::new();
    for parent in enumerate_graceful(3).unwrap() {
        union.extend(multi_propagate_all(&parent, 2));
    }
    let five: BTreeSet<_> = enumerate_graceful(5).unwrap().into_iter().collect();
    assert!(union.is_subset(&five));
    assert!(union.len() < five.len());
}

#[test]
fn tree_propagation_laws() {
    for n in 1..=8 {
        for tree in prufer_trees(n).unwrap() {
            for i in 1..=n {
                let child = propagate_tree(&tree, AttachChoice(i)).unwrap();
                assert!(is_tree(child.graph()));
                assert_eq!(child.n(), n + 1);
                let labels: BTreeSet<usize> =
                    child.edges().iter().flat_map(|&(u, v)| [u, v]).collect();
                assert_eq!(labels, (1..=n + 1).collect());
                let back = delete_and_decrement(child.graph(), n + 2 - i).unwrap();
                assert_eq!(&back, tree.graph());
            }
        }
    }
}

#[test]
fn tree_propagation_can_break_gracefulness() {
    let mut witness = None;
    'search: for n in 2..=4 {
        for tree in prufer_trees(n).unwrap() {
            if !tree.graph().is_graceful() {
                continue;
            }
            for i in 1..=n {
                let child = propagate_tree(&tree, AttachChoice(i)).unwrap();
                if !child.graph().is_graceful() {
                    witness = Some((tree.clone(), i, child));
                    break 'search;
                }
            }
        }
    }
    let (parent, _, child) = witness.expect("some propagated tree is not gracefully labeled");
    assert!(parent.graph().is_graceful() && !child.graph().is_graceful());
    assert!(child.n() <= 5);
}

#[test]
fn tree_code_is_label_invariant() {
    for n in 1..=6 {
        let trees = prufer_trees(n).unwrap();
        let classes: BTreeSet<_> = trees.iter().map(tree_code).collect();
        for class in &classes {
            let t = class.to_tree();
            let code = tree_code(&t);
            for perm in (1..=n).permutations(n) {
                let r = LabeledTree::new(relabel(t.graph(), &perm)).unwrap();
                assert_eq!(tree_code(&r), code);
            }
        }
    }
}

#[test]
fn tree_code_separates_classes() {
    // two labeled trees share a code iff some relabeling maps one to the other
    for n in 1..=6 {
        let trees = prufer_trees(n).unwrap();
        let perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
        let reps: Vec<&LabeledTree> = trees.iter().unique_by(|t| tree_code(t)).collect();
        for (a, b) in reps.iter().tuple_combinations() {
            let iso = perms.iter().any(|p| relabel(a.graph(), p) == *b.graph());
            assert!(!iso, "distinct codes for isomorphic trees");
        }
    }
}

#[test]
fn predicate_consistency() {
    for n in 1..=5 {
        let pairs = all_pairs(n);
        for mask in 0u32..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            let g = LabeledGraph::new(n, edges).unwrap();
            let a = is_tree(&g);
            let b = g.edge_count() + 1 == n && is_connected(&g);
            let c = is_connected(&g) && !has_cycle(&g);
            assert_eq!(a, b, "{g:?}");
            assert_eq!(a, c, "{g:?}");
        }
    }
}

fn permutation_scan(tree: &LabeledTree) -> bool {
    let n = tree.n();
    (1..=n)
        .permutations(n)
        .any(|p| relabel(tree.graph(), &p).is_graceful())
}

#[test]
fn labeling_search_is_complete_and_valid() {
    for n in 1..=6 {
        let classes: BTreeSet<_> = prufer_trees(n).unwrap().iter().map(tree_code).collect();
        for code in classes {
            let tree = code.to_tree();
            let found = search_graceful_labeling(&tree);
            assert_eq!(found.is_some(), permutation_scan(&tree));
            if let Some(lab) = found {
                assert!(lab.apply(tree.graph()).unwrap().is_graceful());
            }
        }
    }
}

#[test]
fn labeling_is_checked() {
    let lab = Labeling::new(vec![2, 3, 1, 4]).unwrap();
    let path = LabeledGraph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
    assert!(lab.apply(&path).unwrap().is_graceful());
    let short = LabeledGraph::new(3, [(1, 2), (2, 3)]).unwrap();
    assert!(lab.apply(&short).is_err());
}

fn arb_graph_on(n: usize) -> impl Strategy<Value = LabeledGraph> {
    let pairs = all_pairs(n);
    proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |bits| {
        let edges = pairs.iter().zip(&bits).filter(|(_, &b)| b).map(|(&e, _)| e);
        LabeledGraph::new(n, edges).unwrap()
    })
}

fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
    (1usize..=12).prop_flat_map(arb_graph_on)
}

proptest! {
    #[test]
    fn text_formats_round_trip(g in arb_graph()) {
        let m = g.to_matrix();
        prop_assert!(m.is_well_formed());
        prop_assert_eq!(parse_matrix(&matrix_text(&m)).unwrap(), m.clone());
        let edges = parse_edge_list(&edge_list_text(&g)).unwrap();
        prop_assert_eq!(graph_from_edges(edges, Some(g.n())).unwrap(), g.clone());
        prop_assert_eq!(m.to_graph(), g);
    }

    #[test]
    fn order_matches_upper_triangle_bits(
        (a, b) in (1usize..=12).prop_flat_map(|n| (arb_graph_on(n), arb_graph_on(n)))
    ) {
        let bits = |g: &LabeledGraph| {
            let m = g.to_matrix();
            all_pairs(g.n()).into_iter().map(|(u, v)| m.get(u, v)).collect::<Vec<_>>()
        };
        prop_assert_eq!(a.to_matrix().cmp(&b.to_matrix()), bits(&a).cmp(&bits(&b)));
    }
}
