//! Permutations of `{1..n}` in the role of combinatorial data for interval
//! exchanges: irreducibility, the two induction moves, and the finite move
//! graphs they generate.
//!
//! Convention: a permutation is displayed and parsed through its *bottom row*
//! `(pi^{-1}(1), ..., pi^{-1}(n))`, the order in which the exchanged intervals
//! appear in the image. Internally we store the one-line images `pi(i)`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `{1..n}`, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    /// `image[i-1] = pi(i)`, one-based values.
    image: Vec<usize>,
}

impl Perm {
    /// Builds from the bottom row `(pi^{-1}(1), ..., pi^{-1}(n))`.
    pub fn from_bottom_row(row: &[usize]) -> Result<Perm> {
        let n = row.len();
        if n < 2 {
            return Err(Error::OutOfDomain(format!(
                "permutation needs at least 2 symbols, got {n}"
            )));
        }
        let mut image = vec![0usize; n];
        for (k, &i) in row.iter().enumerate() {
            if i < 1 || i > n || image[i - 1] != 0 {
                return Err(Error::NotABijection { n });
            }
            // row[k] = pi^{-1}(k+1), so pi(row[k]) = k+1.
            image[i - 1] = k + 1;
        }
        Ok(Perm { image })
    }

    /// Builds from one-line images `(pi(1), ..., pi(n))`.
    pub fn from_one_line(image: &[usize]) -> Result<Perm> {
        let n = image.len();
        if n < 2 {
            return Err(Error::OutOfDomain(format!(
                "permutation needs at least 2 symbols, got {n}"
            )));
        }
        let mut seen = vec![false; n];
        for &v in image {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::NotABijection { n });
            }
            seen[v - 1] = true;
        }
        Ok(Perm {
            image: image.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    /// `pi(i)`, one-based.
    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// `pi^{-1}(j)`, one-based.
    pub fn invert(&self, j: usize) -> usize {
        self.image.iter().position(|&v| v == j).expect("bijection") + 1
    }

    /// One-line images `(pi(1), ..., pi(n))`.
    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    /// Bottom row `(pi^{-1}(1), ..., pi^{-1}(n))`.
    pub fn bottom_row(&self) -> Vec<usize> {
        let n = self.n();
        let mut row = vec![0usize; n];
        for i in 1..=n {
            row[self.apply(i) - 1] = i;
        }
        row
    }

    /// True when no proper prefix `{1..k}`, `k < n`, is invariant. Interval
    /// exchanges with reducible data split into two independent exchanges,
    /// so the move graphs are built over irreducible permutations only.
    pub fn is_irreducible(&self) -> bool {
        self.reducible_prefix().is_none()
    }

    /// Smallest `k < n` with `pi({1..k}) = {1..k}`, if any.
    pub fn reducible_prefix(&self) -> Option<usize> {
        let n = self.n();
        let mut running_max = 0usize;
        for k in 1..n {
            running_max = running_max.max(self.apply(k));
            if running_max == k {
                return Some(k);
            }
        }
        None
    }

    /// Standard form: `pi(1) = n` and `pi(n) = 1`.
    pub fn is_standard(&self) -> bool {
        let n = self.n();
        self.apply(1) == n && self.apply(n) == 1
    }

    /// Loop form: `pi(n-1) = n`. At such a node the second move fixes the
    /// permutation, so it carries a self-loop in the move graph.
    pub fn is_loop(&self) -> bool {
        let n = self.n();
        self.apply(n - 1) == n
    }

    /// First induction move (the last interval keeps its place; the image
    /// order splits the slot after position `pi(n)`).
    pub fn move_a(&self) -> Perm {
        let n = self.n();
        let pn = self.apply(n);
        let image = (1..=n)
            .map(|j| {
                let pj = self.apply(j);
                if pj <= pn {
                    pj
                } else if pj < n {
                    pj + 1
                } else {
                    pn + 1
                }
            })
            .collect();
        Perm { image }
    }

    /// Second induction move (the last interval is reinserted right after
    /// the interval whose image comes last).
    pub fn move_b(&self) -> Perm {
        let n = self.n();
        let p_star = self.invert(n);
        let image = (1..=n)
            .map(|j| {
                if j <= p_star {
                    self.apply(j)
                } else if j == p_star + 1 {
                    self.apply(n)
                } else {
                    self.apply(j - 1)
                }
            })
            .collect();
        Perm { image }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.bottom_row().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.bottom_row().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let row = Vec::<usize>::deserialize(de)?;
        Perm::from_bottom_row(&row).map_err(serde::de::Error::custom)
    }
}

/// All irreducible permutations of `{1..n}`, ordered lexicographically by
/// bottom row.
pub fn irreducible_perms(n: usize) -> Vec<Perm> {
    all_perms(n)
        .into_iter()
        .filter(|p| p.is_irreducible())
        .collect()
}

/// All permutations of `n` symbols, ordered lexicographically by bottom row.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut rows = Vec::new();
    let mut row = Vec::with_capacity(n);
    let mut used = vec![false; n + 1];
    gen_rows(n, &mut row, &mut used, &mut rows);
    rows.iter()
        .map(|r| Perm::from_bottom_row(r).expect("generated bijection"))
        .collect()
}

fn gen_rows(n: usize, row: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if row.len() == n {
        out.push(row.clone());
        return;
    }
    for v in 1..=n {
        if !used[v] {
            used[v] = true;
            row.push(v);
            gen_rows(n, row, used, out);
            row.pop();
            used[v] = false;
        }
    }
}

/// The orbit of an irreducible permutation under the two induction moves:
/// a finite strongly connected directed graph with out-degree two.
#[derive(Debug, Clone)]
pub struct RauzyGraph {
    nodes: Vec<Perm>,
    a_edges: Vec<usize>,
    b_edges: Vec<usize>,
    basepoint: usize,
}

impl RauzyGraph {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[Perm] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &Perm {
        &self.nodes[i]
    }

    /// Target index of the first-move edge out of node `i`.
    pub fn a_edge(&self, i: usize) -> usize {
        self.a_edges[i]
    }

    /// Target index of the second-move edge out of node `i`.
    pub fn b_edge(&self, i: usize) -> usize {
        self.b_edges[i]
    }

    /// Index of the permutation the graph was grown from.
    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.nodes.iter().position(|q| q == p)
    }

    pub fn standard_nodes(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.nodes[i].is_standard())
            .collect()
    }

    pub fn loop_nodes(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&i| self.nodes[i].is_loop())
            .collect()
    }

    /// Deterministic DOT rendering: nodes in lexicographic bottom-row order,
    /// and for each node the first-move edge before the second-move edge.
    pub fn export_dot(&self) -> String {
        let mut out = String::from("digraph moves {\n");
        for (i, p) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{p}\"];\n"));
        }
        for i in 0..self.size() {
            out.push_str(&format!("  n{i} -> n{} [label=\"a\"];\n", self.a_edges[i]));
            out.push_str(&format!("  n{i} -> n{} [label=\"b\"];\n", self.b_edges[i]));
        }
        out.push_str("}\n");
        out
    }
}

/// Breadth-first closure of `start` under the two moves, first move explored
/// first. Nodes are then re-sorted lexicographically by bottom row so that
/// the graph layout is independent of the starting node.
pub fn rauzy_class(start: &Perm) -> Result<RauzyGraph> {
    if let Some(prefix) = start.reducible_prefix() {
        return Err(Error::Reducible { prefix });
    }
    let mut index: HashMap<Perm, usize> = HashMap::new();
    let mut nodes: Vec<Perm> = vec![start.clone()];
    index.insert(start.clone(), 0);
    let mut queue = std::collections::VecDeque::from([0usize]);
    let mut a_edges: Vec<usize> = Vec::new();
    let mut b_edges: Vec<usize> = Vec::new();
    while let Some(i) = queue.pop_front() {
        let node = nodes[i].clone();
        debug_assert!(node.is_irreducible(), "moves must preserve irreducibility");
        for (is_a, next) in [(true, node.move_a()), (false, node.move_b())] {
            let j = *index.entry(next.clone()).or_insert_with(|| {
                nodes.push(next);
                queue.push_back(nodes.len() - 1);
                nodes.len() - 1
            });
            let edges = if is_a { &mut a_edges } else { &mut b_edges };
            if edges.len() <= i {
                edges.resize(i + 1, usize::MAX);
            }
            edges[i] = j;
        }
    }

    // Re-sort nodes lexicographically and remap the edges.
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by_key(|&i| nodes[i].bottom_row());
    let mut rank = vec![0usize; nodes.len()];
    for (new_i, &old_i) in order.iter().enumerate() {
        rank[old_i] = new_i;
    }
    let sorted_nodes: Vec<Perm> = order.iter().map(|&i| nodes[i].clone()).collect();
    let sorted_a: Vec<usize> = order.iter().map(|&i| rank[a_edges[i]]).collect();
    let sorted_b: Vec<usize> = order.iter().map(|&i| rank[b_edges[i]]).collect();
    Ok(RauzyGraph {
        nodes: sorted_nodes,
        a_edges: sorted_a,
        b_edges: sorted_b,
        basepoint: rank[0],
    })
}

/// From a standard permutation, repeated first moves reach a loop
/// permutation (one with a second-move self-loop). Returns the loop
/// permutation and the number of first moves taken.
pub fn find_loop_from_standard(standard: &Perm) -> Result<(Perm, usize)> {
    if !standard.is_standard() {
        return Err(Error::OutOfDomain(format!(
            "{standard} is not standard (wants pi(1)=n, pi(n)=1)"
        )));
    }
    if let Some(prefix) = standard.reducible_prefix() {
        return Err(Error::Reducible { prefix });
    }
    let mut p = standard.clone();
    for steps in 0..=standard.n() {
        if p.is_loop() {
            return Ok((p, steps));
        }
        p = p.move_a();
    }
    Err(Error::InvalidWalk(format!(
        "no loop permutation within {} first moves of {standard}",
        standard.n()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(row: &[usize]) -> Perm {
        Perm::from_bottom_row(row).unwrap()
    }

    #[test]
    fn bottom_row_and_one_line_are_mutually_inverse_conventions() {
        let p = perm(&[2, 3, 1]);
        assert_eq!(p.one_line(), &[3, 1, 2]);
        assert_eq!(p.bottom_row(), vec![2, 3, 1]);
        assert_eq!(p.to_string(), "(2,3,1)");
        assert_eq!(p.apply(1), 3);
        assert_eq!(p.invert(3), 1);
    }

    #[test]
    fn bad_rows_are_rejected() {
        assert!(matches!(
            Perm::from_bottom_row(&[1, 1]),
            Err(Error::NotABijection { n: 2 })
        ));
        assert!(Perm::from_bottom_row(&[0, 1]).is_err());
        assert!(Perm::from_bottom_row(&[1]).is_err());
    }

    #[test]
    fn irreducibility_detects_invariant_prefixes() {
        assert!(perm(&[2, 1]).is_irreducible());
        assert!(!perm(&[1, 2]).is_irreducible());
        assert_eq!(perm(&[1, 2]).reducible_prefix(), Some(1));
        assert!(!perm(&[2, 1, 3]).is_irreducible());
        assert_eq!(perm(&[2, 1, 3]).reducible_prefix(), Some(2));
        assert!(perm(&[3, 1, 2]).is_irreducible());
    }

    #[test]
    fn irreducible_counts_match_known_sequence() {
        // 1, 3, 13, 71 irreducible permutations on 2..=5 symbols.
        assert_eq!(irreducible_perms(2).len(), 1);
        assert_eq!(irreducible_perms(3).len(), 3);
        assert_eq!(irreducible_perms(4).len(), 13);
        assert_eq!(irreducible_perms(5).len(), 71);
    }

    #[test]
    fn three_symbol_moves_match_hand_computation() {
        let p231 = perm(&[2, 3, 1]);
        let p321 = perm(&[3, 2, 1]);
        let p312 = perm(&[3, 1, 2]);
        assert_eq!(p231.move_a(), p231, "first move fixes (2,3,1)");
        assert_eq!(p231.move_b(), p321);
        assert_eq!(p321.move_a(), p312);
        assert_eq!(p321.move_b(), p231);
        assert_eq!(p312.move_a(), p321);
        assert_eq!(p312.move_b(), p312, "second move fixes (3,1,2)");
    }

    #[test]
    fn two_symbol_node_is_a_double_self_loop() {
        let p = perm(&[2, 1]);
        assert_eq!(p.move_a(), p);
        assert_eq!(p.move_b(), p);
        let g = rauzy_class(&p).unwrap();
        assert_eq!(g.size(), 1);
        assert_eq!(g.a_edge(0), 0);
        assert_eq!(g.b_edge(0), 0);
    }

    #[test]
    fn three_symbol_class_has_three_nodes_and_six_edges() {
        let g = rauzy_class(&perm(&[3, 2, 1])).unwrap();
        assert_eq!(g.size(), 3);
        let rows: Vec<Vec<usize>> = g.nodes().iter().map(|p| p.bottom_row()).collect();
        assert_eq!(rows, vec![vec![2, 3, 1], vec![3, 1, 2], vec![3, 2, 1]]);
        // Edges match the hand-computed moves above.
        let i231 = 0;
        let i312 = 1;
        let i321 = 2;
        assert_eq!(g.a_edge(i231), i231);
        assert_eq!(g.b_edge(i231), i321);
        assert_eq!(g.a_edge(i321), i312);
        assert_eq!(g.b_edge(i321), i231);
        assert_eq!(g.a_edge(i312), i321);
        assert_eq!(g.b_edge(i312), i312);
    }

    #[test]
    fn four_symbol_classes_partition_the_irreducibles() {
        let g1 = rauzy_class(&perm(&[4, 3, 2, 1])).unwrap();
        assert_eq!(g1.size(), 7);
        let all = irreducible_perms(4);
        assert_eq!(all.len(), 13);
        let outside: Vec<&Perm> = all
            .iter()
            .filter(|p| g1.index_of(p).is_none())
            .collect();
        assert_eq!(outside.len(), 6);
        let g2 = rauzy_class(outside[0]).unwrap();
        assert_eq!(g2.size(), 6);
        for p in &outside {
            assert!(g2.index_of(p).is_some());
        }
    }

    #[test]
    fn every_node_has_unique_predecessors_per_move() {
        for start in [perm(&[4, 3, 2, 1]), perm(&[4, 2, 3, 1])] {
            let g = rauzy_class(&start).unwrap();
            let mut a_preds = vec![0usize; g.size()];
            let mut b_preds = vec![0usize; g.size()];
            for i in 0..g.size() {
                a_preds[g.a_edge(i)] += 1;
                b_preds[g.b_edge(i)] += 1;
            }
            assert!(a_preds.iter().all(|&c| c == 1));
            assert!(b_preds.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn reducible_start_is_rejected() {
        assert!(matches!(
            rauzy_class(&perm(&[2, 1, 3])),
            Err(Error::Reducible { prefix: 2 })
        ));
    }

    #[test]
    fn loop_search_from_standard_form() {
        let std4 = perm(&[4, 3, 2, 1]);
        assert!(std4.is_standard());
        let (lp, steps) = find_loop_from_standard(&std4).unwrap();
        assert!(lp.is_loop());
        // One-line images of (4,3,2,1) are (4,3,2,1); pi(n-1) = 2, so two
        // first moves are needed.
        assert_eq!(steps, 2);
        assert!(find_loop_from_standard(&perm(&[3, 1, 2])).is_err());
    }

    #[test]
    fn dot_export_is_deterministic_and_complete() {
        let g = rauzy_class(&perm(&[3, 2, 1])).unwrap();
        let dot = g.export_dot();
        assert!(dot.starts_with("digraph moves {"));
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("n0 [label=\"(2,3,1)\"]"));
        let again = rauzy_class(&perm(&[2, 3, 1])).unwrap().export_dot();
        assert_eq!(dot, again, "same class gives same rendering");
    }

    proptest! {
        #[test]
        fn moves_preserve_irreducibility(n in 2usize..=6, seed in 0u64..5000) {
            let all = irreducible_perms(n);
            let p = &all[(seed as usize) % all.len()];
            prop_assert!(p.move_a().is_irreducible());
            prop_assert!(p.move_b().is_irreducible());
        }

        #[test]
        fn bottom_row_round_trips(n in 2usize..=7, seed in 0u64..5000) {
            let all = irreducible_perms(n);
            let p = &all[(seed as usize) % all.len()];
            let row = p.bottom_row();
            prop_assert_eq!(&Perm::from_bottom_row(&row).unwrap(), p);
        }
    }
}
