//! Window sampler for the 231 limit order.
//!
//! The limit order is the stationary radius-`h` window of the iterated
//! extension process: start from a nonempty Boltzmann 231-avoider rooted at
//! its maximum, then repeatedly glue an independent Boltzmann block (and a
//! fresh overall maximum) to a fair-coin side, until the root has `h`
//! entries on both sides.
//!
//! This module evaluates that window without materializing the blocks:
//! a Boltzmann 231-avoider is the permutation of a critical binary branching
//! tree, so its entries are discovered lazily by probing tree vertices
//! (each potential child present with probability 1/2, sampled once). Only
//! the entries that land inside the window are ever generated:
//!
//! * position within a block = in-order rank of the vertex, so a block
//!   prefix or suffix is an in-order walk from the leftmost or rightmost
//!   vertex;
//! * relative values = relative post-order of the walked vertices, which
//!   depends only on their materialized ancestor topology;
//! * a glued block sits entirely above (right glue) or below (left glue)
//!   the existing window values, and entirely below the fresh maximum, so
//!   relative ranks within the walked set are all that is needed.
//!
//! The skipped remainder of each block is independent of everything kept,
//! hence the window law is exactly that of the materializing process. The
//! expected work per window is linear in `h`, and no size cap or retry is
//! involved, so no truncation bias is introduced.

use super::RandomStream;
use crate::perm::Permutation;
use crate::rooted::RootedPermutation;
use rand::Rng;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Probe {
    Unknown,
    Absent,
    At(u32),
}

#[derive(Clone, Copy)]
struct LazyNode {
    parent: u32, // u32::MAX marks the root
    is_right_child: bool,
    left: Probe,
    right: Probe,
}

/// A critical binary branching tree whose vertices materialize on demand.
struct LazyTree<'a> {
    nodes: Vec<LazyNode>,
    stream: &'a mut RandomStream,
}

impl<'a> LazyTree<'a> {
    fn new(stream: &'a mut RandomStream) -> Self {
        Self {
            nodes: vec![LazyNode {
                parent: u32::MAX,
                is_right_child: false,
                left: Probe::Unknown,
                right: Probe::Unknown,
            }],
            stream,
        }
    }

    fn child(&mut self, v: u32, right: bool) -> Option<u32> {
        let probe = if right {
            self.nodes[v as usize].right
        } else {
            self.nodes[v as usize].left
        };
        match probe {
            Probe::At(c) => Some(c),
            Probe::Absent => None,
            Probe::Unknown => {
                let outcome = if self.stream.gen::<bool>() {
                    let id = self.nodes.len() as u32;
                    self.nodes.push(LazyNode {
                        parent: v,
                        is_right_child: right,
                        left: Probe::Unknown,
                        right: Probe::Unknown,
                    });
                    Probe::At(id)
                } else {
                    Probe::Absent
                };
                if right {
                    self.nodes[v as usize].right = outcome;
                } else {
                    self.nodes[v as usize].left = outcome;
                }
                match outcome {
                    Probe::At(id) => Some(id),
                    _ => None,
                }
            }
        }
    }

    fn deepest(&mut self, mut v: u32, right: bool) -> u32 {
        while let Some(c) = self.child(v, right) {
            v = c;
        }
        v
    }

    /// In-order successor within the subtree rooted at `top`.
    fn inorder_next(&mut self, mut v: u32, top: u32) -> Option<u32> {
        if let Some(r) = self.child(v, true) {
            return Some(self.deepest(r, false));
        }
        while v != top {
            let node = self.nodes[v as usize];
            if !node.is_right_child {
                return Some(node.parent);
            }
            v = node.parent;
        }
        None
    }

    /// In-order predecessor within the subtree rooted at `top`.
    fn inorder_prev(&mut self, mut v: u32, top: u32) -> Option<u32> {
        if let Some(l) = self.child(v, false) {
            return Some(self.deepest(l, true));
        }
        while v != top {
            let node = self.nodes[v as usize];
            if node.is_right_child {
                return Some(node.parent);
            }
            v = node.parent;
        }
        None
    }

    /// Path from the root down to `v`.
    fn root_path(&self, mut v: u32) -> Vec<u32> {
        let mut path = vec![v];
        while self.nodes[v as usize].parent != u32::MAX {
            v = self.nodes[v as usize].parent;
            path.push(v);
        }
        path.reverse();
        path
    }

    /// Post-order comparison of two distinct materialized vertices; depends
    /// only on their ancestor topology, so unprobed parts cannot change it.
    fn post_less(&self, u: u32, v: u32) -> bool {
        debug_assert_ne!(u, v);
        let pu = self.root_path(u);
        let pv = self.root_path(v);
        let mut i = 0;
        while i < pu.len() && i < pv.len() && pu[i] == pv[i] {
            i += 1;
        }
        if i == pu.len() {
            // u is an ancestor of v: descendants come first
            return false;
        }
        if i == pv.len() {
            return true;
        }
        // diverging children of the common ancestor: left subtree first
        !self.nodes[pu[i] as usize].is_right_child
    }

    /// Relative post-order ranks (1-based) of a set of materialized
    /// vertices, in the order given.
    fn relative_ranks(&self, vs: &[u32]) -> Vec<u32> {
        vs.iter()
            .map(|&u| {
                1 + vs
                    .iter()
                    .filter(|&&w| w != u && self.post_less(w, u))
                    .count() as u32
            })
            .collect()
    }

    /// Walks up to `want` in-order entries from the given end of the
    /// subtree rooted at `top` (`from_left` selects the end), returning the
    /// visited vertices in visiting order.
    fn walk(&mut self, top: u32, want: usize, from_left: bool) -> Vec<u32> {
        let mut seq = Vec::with_capacity(want);
        if want == 0 {
            return seq;
        }
        let mut cur = self.deepest(top, !from_left);
        loop {
            seq.push(cur);
            if seq.len() == want {
                return seq;
            }
            let next = if from_left {
                self.inorder_next(cur, top)
            } else {
                self.inorder_prev(cur, top)
            };
            match next {
                Some(n) => cur = n,
                None => return seq,
            }
        }
    }
}

/// Pattern of the first (`prefix = true`) or last `want >= 1` entries of a
/// fresh nonempty Boltzmann 231-avoider, as ranks in positional order. A
/// result shorter than `want` reports the exact whole permutation.
fn lazy_block(stream: &mut RandomStream, want: usize, prefix: bool) -> Vec<u32> {
    let mut tree = LazyTree::new(stream);
    let mut seq = tree.walk(0, want, prefix);
    if !prefix {
        seq.reverse(); // positional order
    }
    tree.relative_ranks(&seq)
}

/// Window of radius `h` around the maximum of a nonempty Boltzmann draw:
/// (left entries adjacent-first, right entries adjacent-first, root value),
/// with values being exact ranks `1..=left+right+1`.
fn initial_window(h: usize, stream: &mut RandomStream) -> (Vec<u32>, Vec<u32>, u32) {
    let mut tree = LazyTree::new(stream);
    let lseq = match tree.child(0, false) {
        Some(l) => tree.walk(l, h, false),
        None => Vec::new(),
    };
    let rseq = match tree.child(0, true) {
        Some(r) => tree.walk(r, h, true),
        None => Vec::new(),
    };
    let cl = lseq.len() as u32;
    let left = tree.relative_ranks(&lseq);
    let right: Vec<u32> = tree
        .relative_ranks(&rseq)
        .into_iter()
        .map(|r| r + cl)
        .collect();
    let root_val = cl + right.len() as u32 + 1;
    (left, right, root_val)
}

/// Radius-`h` window of the 231 limit order, rooted at the center.
///
/// Panics if the two-sided fill has not completed after `64 h` extension
/// steps, an event of probability below `2^{-30 h}`.
pub fn limit231_window(h: usize, stream: &mut RandomStream) -> RootedPermutation {
    assert!(h >= 1);
    let (mut left, mut right, mut root_val) = initial_window(h, stream);

    let mut iterations = 0usize;
    while left.len() < h || right.len() < h {
        iterations += 1;
        assert!(
            iterations <= 64 * h,
            "window of radius {h} not filled after {iterations} extensions"
        );
        let glue_right = stream.gen::<bool>();
        let side_len = if glue_right { right.len() } else { left.len() };
        if side_len >= h {
            continue; // extension falls entirely outside the window
        }
        let m = (left.len() + right.len() + 1) as u32;
        let t = h - side_len - 1; // block entries that can still land inside
        let block = if t == 0 || stream.gen::<bool>() {
            Vec::new() // beyond the window, or the empty block
        } else {
            lazy_block(stream, t, glue_right)
        };
        let c = block.len() as u32;
        if glue_right {
            // block values sit above the window, below the fresh maximum
            right.push(m + c + 1);
            right.extend(block.iter().map(|r| m + r));
        } else {
            // block values sit below the window
            for v in left.iter_mut().chain(right.iter_mut()) {
                *v += c;
            }
            root_val += c;
            left.push(m + c + 1);
            left.extend(block.iter().rev());
        }
    }

    let mut word = Vec::with_capacity(2 * h + 1);
    word.extend(left.iter().rev());
    word.push(root_val);
    word.extend(right.iter());
    RootedPermutation::new(
        Permutation::new(word).expect("window ranks form a permutation"),
        h + 1,
    )
    .expect("center root in range")
}
