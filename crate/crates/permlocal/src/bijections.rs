//! The two size-preserving Catalan bijections and the window statistics they
//! transport: 231-avoiding permutations with binary trees, 321-avoiding
//! permutations with ordered trees carrying one extra vertex.

use crate::error::PermError;
use crate::perm::Permutation;
use crate::trees::{tree_from_contour, BinNode, BinaryTree, DyckWord, OrderedTree, Step};

/// Binary tree of a 231-avoiding permutation: the root is the maximum, left
/// and right subtrees come from the sides of the maximum. Rejects hosts
/// containing 231.
pub fn perm_to_btree(sigma: &Permutation) -> Result<BinaryTree, PermError> {
    if sigma.is_empty() {
        return Err(PermError::EmptyHost);
    }
    // Max-based Cartesian tree over positions, built left to right with a
    // right-spine stack. For a 231-avoiding word this is the image tree;
    // mapping it back and comparing detects any 231 occurrence.
    let w = sigma.word();
    let n = w.len();
    let mut nodes = vec![
        BinNode {
            left: None,
            right: None
        };
        n
    ];
    let mut spine: Vec<usize> = Vec::new(); // positions, decreasing values upward
    for (i, &v) in w.iter().enumerate() {
        let mut last_popped: Option<usize> = None;
        while let Some(&top) = spine.last() {
            if w[top] < v {
                last_popped = spine.pop();
            } else {
                break;
            }
        }
        if let Some(l) = last_popped {
            nodes[i].left = Some(l as u32);
        }
        if let Some(&parent) = spine.last() {
            nodes[parent].right = Some(i as u32);
        }
        spine.push(i);
    }
    let root = spine[0] as u32;
    let tree =
        BinaryTree::from_nodes_rooted(nodes, root).expect("cartesian construction is a tree");
    if &btree_to_perm(&tree) != sigma {
        return Err(PermError::ClassViolation("231"));
    }
    Ok(tree)
}

/// Permutation of a binary tree: position by in-order rank, value by
/// post-order label.
pub fn btree_to_perm(t: &BinaryTree) -> Permutation {
    let n = t.n_vertices();
    let mut post_label = vec![0u32; n];
    for (i, &v) in t.post_order().iter().enumerate() {
        post_label[v as usize] = i as u32 + 1;
    }
    let word: Vec<u32> = t
        .in_order()
        .iter()
        .map(|&v| post_label[v as usize])
        .collect();
    Permutation::from_word_unchecked(word)
}

/// Indices weakly above the diagonal (`sigma_i >= i`), ascending. Fixed
/// points count as above. For a 321-avoiding permutation the induced pattern
/// is increasing.
pub fn e_plus(sigma: &Permutation) -> Vec<usize> {
    (1..=sigma.size())
        .filter(|&i| sigma.value(i) as usize >= i)
        .collect()
}

/// Indices strictly below the diagonal (`sigma_i < i`), ascending.
pub fn e_minus(sigma: &Permutation) -> Vec<usize> {
    (1..=sigma.size())
        .filter(|&i| (sigma.value(i) as usize) < i)
        .collect()
}

/// Ordered tree (with `|sigma| + 1` vertices) of a 321-avoiding permutation,
/// assembled through its contour: up-runs from the values on the diagonal
/// set, down-runs from the gaps of the diagonal set. Rejects hosts
/// containing 321.
pub fn perm_to_otree(sigma: &Permutation) -> Result<OrderedTree, PermError> {
    if sigma.is_empty() {
        return Ok(OrderedTree::single());
    }
    if !crate::perm::avoids(sigma, &Permutation::new(vec![3, 2, 1]).unwrap())? {
        return Err(PermError::ClassViolation("321"));
    }
    let n = sigma.size();
    let q: Vec<usize> = e_plus(sigma);
    let s: Vec<usize> = q.iter().map(|&i| sigma.value(i) as usize).collect();
    let m = q.len();
    let mut steps = Vec::with_capacity(2 * n);
    for j in 0..m {
        let ups = if j == 0 { s[0] } else { s[j] - s[j - 1] };
        let downs = if j + 1 < m {
            q[j + 1] - q[j]
        } else {
            n + 1 - q[m - 1]
        };
        steps.extend(std::iter::repeat(Step::U).take(ups));
        steps.extend(std::iter::repeat(Step::D).take(downs));
    }
    let word = DyckWord::new(steps).expect("diagonal data traces a Dyck word");
    Ok(tree_from_contour(&word))
}

/// Permutation of an ordered tree: leaf pre-order labels become the values
/// at the leaf post-order positions, remaining values fill increasingly.
/// The one-vertex tree maps to the empty permutation.
pub fn otree_to_perm(t: &OrderedTree) -> Permutation {
    let n = t.n_vertices() - 1;
    if n == 0 {
        return Permutation::empty();
    }
    let (s, q) = t.leaf_labels();
    let mut word = vec![0u32; n];
    let mut is_s = vec![false; n + 1];
    for (&qi, &si) in q.iter().zip(&s) {
        word[qi - 1] = si as u32;
        is_s[si] = true;
    }
    let mut fill = (1..=n).filter(|&v| !is_s[v]);
    for slot in word.iter_mut() {
        if *slot == 0 {
            *slot = fill.next().unwrap() as u32;
        }
    }
    Permutation::from_word_unchecked(word)
}

/// The diagonal set of the radius-`k` window around index `i`, shifted to
/// `[-k, k]`: offsets `x` with `x + i` in `E^+(sigma)`.
pub fn window_set(sigma: &Permutation, i: usize, k: usize) -> Vec<i64> {
    let n = sigma.size() as i64;
    let i = i as i64;
    let k = k as i64;
    (-k..=k)
        .filter(|x| {
            let pos = x + i;
            pos >= 1 && pos <= n && sigma.value(pos as usize) as i64 >= pos
        })
        .collect()
}

/// Whether the radius-`k` window around `i` splits into a lower and an upper
/// increasing part: the first diagonal index in the window sits above the
/// last sub-diagonal index, or one of the two sides is empty.
pub fn has_separating_line(sigma: &Permutation, i: usize, k: usize) -> bool {
    let n = sigma.size();
    let lo = i.saturating_sub(k).max(1);
    let hi = (i + k).min(n);
    let m_plus = (lo..=hi).find(|&j| sigma.value(j) as usize >= j);
    let m_minus = (lo..=hi).rev().find(|&j| (sigma.value(j) as usize) < j);
    match (m_plus, m_minus) {
        (Some(p), Some(q)) => sigma.value(p) > sigma.value(q),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::enumerate_class;
    use crate::limits::AvClass;
    use crate::perm::c_occ;
    use crate::trees::enumerate_binary_trees;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn btree_small_cases() {
        assert_eq!(perm_to_btree(&p("1")).unwrap(), BinaryTree::single());
        let t21 = perm_to_btree(&p("21")).unwrap();
        assert_eq!(t21.node(0).left, None);
        assert!(t21.node(0).right.is_some());
        let t12 = perm_to_btree(&p("12")).unwrap();
        assert!(t12.node(0).left.is_some());
        assert_eq!(t12.node(0).right, None);
        assert!(perm_to_btree(&p("231")).is_err());
        assert!(perm_to_btree(&p("45231")).is_err());
    }

    #[test]
    fn btree_roundtrip_exhaustive() {
        for n in 1..=7usize {
            for sigma in enumerate_class(AvClass::Av231, n).unwrap() {
                let t = perm_to_btree(&sigma).unwrap();
                assert_eq!(t.n_vertices(), n);
                assert_eq!(btree_to_perm(&t), sigma);
            }
            for t in enumerate_binary_trees(n) {
                assert_eq!(perm_to_btree(&btree_to_perm(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn maxima_map_to_branches() {
        for n in 1..=7usize {
            for sigma in enumerate_class(AvClass::Av231, n).unwrap() {
                let t = perm_to_btree(&sigma).unwrap();
                // left branch vertices in in-order, right branch in in-order
                let in_order = t.in_order();
                let mut left_branch = Vec::new();
                let mut v = Some(0u32);
                while let Some(x) = v {
                    left_branch.push(x);
                    v = t.node(x).left;
                }
                let mut right_branch = vec![0u32];
                let mut v = t.node(0).right;
                while let Some(x) = v {
                    right_branch.push(x);
                    v = t.node(x).right;
                }
                let pos_of = |x: u32| in_order.iter().position(|&y| y == x).unwrap() + 1;
                let mut lr: Vec<usize> = left_branch.iter().map(|&x| pos_of(x)).collect();
                lr.sort_unstable();
                let mut rl: Vec<usize> = right_branch.iter().map(|&x| pos_of(x)).collect();
                rl.sort_unstable();
                assert_eq!(lr, sigma.lr_maxima(), "sigma={sigma}");
                assert_eq!(rl, sigma.rl_maxima(), "sigma={sigma}");
            }
        }
    }

    #[test]
    fn tree_recursion_transport() {
        // splitting the tree at the root mirrors splitting the permutation
        // at its maximum, for every pattern
        for n in 2..=7usize {
            for t in enumerate_binary_trees(n) {
                let sigma = btree_to_perm(&t);
                let left = t.node(0).left.map(|v| subtree(&t, v));
                let right = t.node(0).right.map(|v| subtree(&t, v));
                for k in 1..=n {
                    for pi in enumerate_class(AvClass::Av231, k).unwrap() {
                        let m = pi.indmax();
                        let l = sigma.indmax();
                        let ind = crate::perm::pat_interval(
                            &sigma,
                            l.saturating_sub(m - 1).max(1),
                            (l + k - m).min(n),
                        )
                        .unwrap()
                            == pi
                            && l >= m
                            && l + k - m <= n;
                        let c_l = left
                            .as_ref()
                            .map(|t| c_occ(&pi, &btree_to_perm(t)).unwrap())
                            .unwrap_or(0);
                        let c_r = right
                            .as_ref()
                            .map(|t| c_occ(&pi, &btree_to_perm(t)).unwrap())
                            .unwrap_or(0);
                        assert_eq!(
                            c_occ(&pi, &sigma).unwrap(),
                            c_l + c_r + u64::from(ind),
                            "t={t:?} pi={pi}"
                        );
                    }
                }
            }
        }
    }

    fn subtree(t: &BinaryTree, v: u32) -> BinaryTree {
        // extract fringe by walking
        fn copy(t: &BinaryTree, v: u32, nodes: &mut Vec<BinNode>) -> u32 {
            let id = nodes.len() as u32;
            nodes.push(BinNode {
                left: None,
                right: None,
            });
            if let Some(l) = t.node(v).left {
                let c = copy(t, l, nodes);
                nodes[id as usize].left = Some(c);
            }
            if let Some(r) = t.node(v).right {
                let c = copy(t, r, nodes);
                nodes[id as usize].right = Some(c);
            }
            id
        }
        let mut nodes = Vec::new();
        copy(t, v, &mut nodes);
        BinaryTree::from_nodes(nodes).unwrap()
    }

    #[test]
    fn otree_small_cases() {
        // single edge -> 1 ; chain of 3 -> 21 ; root with two leaves -> 12
        let edge = OrderedTree::from_children(vec![vec![1], vec![]]).unwrap();
        assert_eq!(otree_to_perm(&edge), p("1"));
        let chain3 = OrderedTree::from_children(vec![vec![1], vec![2], vec![]]).unwrap();
        assert_eq!(otree_to_perm(&chain3), p("21"));
        let two = OrderedTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(otree_to_perm(&two), p("12"));
        assert_eq!(otree_to_perm(&OrderedTree::single()), Permutation::empty());
        assert!(perm_to_otree(&p("321")).is_err());
    }

    #[test]
    fn otree_roundtrip_exhaustive() {
        use crate::trees::enumerate_ordered_trees;
        for n in 1..=7usize {
            for sigma in enumerate_class(AvClass::Av321, n).unwrap() {
                let t = perm_to_otree(&sigma).unwrap();
                assert_eq!(t.n_vertices(), n + 1);
                assert_eq!(otree_to_perm(&t), sigma);
            }
            for t in enumerate_ordered_trees(n + 1) {
                assert_eq!(perm_to_otree(&otree_to_perm(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn q_transport_exhaustive() {
        for n in 1..=7usize {
            for sigma in enumerate_class(AvClass::Av321, n).unwrap() {
                let t = perm_to_otree(&sigma).unwrap();
                let (s, q) = t.leaf_labels();
                assert_eq!(q, e_plus(&sigma));
                let values: Vec<usize> = e_plus(&sigma)
                    .iter()
                    .map(|&i| sigma.value(i) as usize)
                    .collect();
                assert_eq!(s, values);
            }
        }
    }

    #[test]
    fn e_sets_examples() {
        assert_eq!(e_plus(&Permutation::identity(4)), vec![1, 2, 3, 4]);
        assert!(e_minus(&Permutation::identity(4)).is_empty());
        assert_eq!(e_plus(&p("21")), vec![1]);
        assert_eq!(e_minus(&p("21")), vec![2]);
        let sigma = p("14526738");
        let ep = e_plus(&sigma);
        // disjoint union covers [1, n]
        let mut all = ep.clone();
        all.extend(e_minus(&sigma));
        all.sort_unstable();
        assert_eq!(all, (1..=8).collect::<Vec<_>>());
        // induced patterns increasing
        let vals: Vec<u32> = ep.iter().map(|&i| sigma.value(i)).collect();
        assert!(vals.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn window_set_examples() {
        let id = Permutation::identity(6);
        assert_eq!(window_set(&id, 3, 1), vec![-1, 0, 1]);
        assert!(has_separating_line(&id, 3, 2));
        let s21 = p("21");
        assert_eq!(window_set(&s21, 1, 1), vec![0]);
        assert!(has_separating_line(&s21, 1, 1));
        // two inverse descents inside the window
        let sigma = p("214365");
        assert!(!has_separating_line(&sigma, 3, 2));
    }
}
