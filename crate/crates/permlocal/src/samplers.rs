//! Seeded random generation: reproducible streams, Galton-Watson trees,
//! exact uniform samplers for the Catalan families, Boltzmann generation of
//! 231-avoiders, and the two limit-window samplers.
//!
//! Determinism contract: identical `(seed, stream_id, parameters)` produce
//! identical output; distinct pairs give independent streams.

use crate::bijections::{btree_to_perm, otree_to_perm};
use crate::perm::Permutation;
use crate::rooted::RootedPermutation;
use crate::trees::{
    tree_from_contour, BinNode, BinaryTree, DyckWord, OrderedTree, PointedTree, Step,
};
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default vertex budget for unconditioned branching samplers. The laws in
/// use are critical, so hitting the cap is a sub-1e-4 tail event at this
/// size.
pub const DEFAULT_VERTEX_CAP: usize = 1 << 24;

/// A reproducible random stream, identified by `(seed, stream_id)`.
pub struct RandomStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RandomStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RandomStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Offspring distributions used by the branching samplers.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum OffspringLaw {
    /// `P(k) = 2^{-k-1}` for `k >= 0`; critical with mean 1.
    GeometricHalf,
    /// Binary offspring with independent left/right children, each present
    /// with probability `p = (1 - delta)/2`; `delta = 0` is the critical
    /// case.
    BinaryDelta(f64),
    /// `P(k) = k 2^{-k-1}` for `k >= 1`; the size-biased geometric law.
    SizeBiasedGeometricHalf,
}

/// Result of a capped sampler: either a value or an overflow marker. The
/// marker is a legitimate outcome, not a failure.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Sampled<T> {
    Value(T),
    Overflow,
}

impl<T> Sampled<T> {
    pub fn value(self) -> Option<T> {
        match self {
            Sampled::Value(v) => Some(v),
            Sampled::Overflow => None,
        }
    }

    pub fn is_overflow(&self) -> bool {
        matches!(self, Sampled::Overflow)
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Sampled<U> {
        match self {
            Sampled::Value(v) => Sampled::Value(f(v)),
            Sampled::Overflow => Sampled::Overflow,
        }
    }
}

/// A tree drawn from one of the branching laws.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GwTree {
    Ordered(OrderedTree),
    Binary(BinaryTree),
}

/// `P(k) = 2^{-k-1}` sampled from the trailing zero bits of uniform words.
pub(crate) fn geometric_half(rng: &mut RandomStream) -> usize {
    let mut k = 0usize;
    loop {
        let u = rng.next_u64();
        if u != 0 {
            return k + u.trailing_zeros() as usize;
        }
        k += 64;
    }
}

/// `P(k) = k 2^{-k-1}`: one plus the sum of two independent geometrics.
fn size_biased_geometric_half(rng: &mut RandomStream) -> usize {
    geometric_half(rng) + geometric_half(rng) + 1
}

fn binary_children(p: f64, rng: &mut RandomStream) -> (bool, bool) {
    if p == 0.5 {
        (rng.gen::<bool>(), rng.gen::<bool>())
    } else {
        (rng.gen::<f64>() < p, rng.gen::<f64>() < p)
    }
}

/// Unconditioned branching tree, grown breadth-first under a vertex budget.
pub fn gw_tree(law: OffspringLaw, stream: &mut RandomStream, vertex_cap: usize) -> Sampled<GwTree> {
    match law {
        OffspringLaw::GeometricHalf => {
            gw_ordered(stream, vertex_cap, geometric_half).map(GwTree::Ordered)
        }
        OffspringLaw::SizeBiasedGeometricHalf => {
            gw_ordered(stream, vertex_cap, size_biased_geometric_half).map(GwTree::Ordered)
        }
        OffspringLaw::BinaryDelta(delta) => {
            gw_binary(delta, stream, vertex_cap).map(GwTree::Binary)
        }
    }
}

fn gw_ordered(
    stream: &mut RandomStream,
    vertex_cap: usize,
    mut offspring: impl FnMut(&mut RandomStream) -> usize,
) -> Sampled<OrderedTree> {
    let mut children: Vec<Vec<u32>> = vec![Vec::new()];
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        let d = offspring(stream);
        if children.len() + d > vertex_cap {
            return Sampled::Overflow;
        }
        for _ in 0..d {
            let id = children.len() as u32;
            children[v as usize].push(id);
            children.push(Vec::new());
            queue.push_back(id);
        }
    }
    Sampled::Value(OrderedTree::from_children(children).expect("generation yields a tree"))
}

/// Binary branching tree under the two-sided Bernoulli offspring law.
pub fn gw_binary(delta: f64, stream: &mut RandomStream, vertex_cap: usize) -> Sampled<BinaryTree> {
    assert!((0.0..1.0).contains(&delta), "delta must lie in [0, 1)");
    let p = (1.0 - delta) / 2.0;
    let mut nodes: Vec<BinNode> = vec![BinNode {
        left: None,
        right: None,
    }];
    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(v) = queue.pop_front() {
        let (l, r) = binary_children(p, stream);
        if nodes.len() + usize::from(l) + usize::from(r) > vertex_cap {
            return Sampled::Overflow;
        }
        if l {
            let id = nodes.len() as u32;
            nodes.push(BinNode {
                left: None,
                right: None,
            });
            nodes[v as usize].left = Some(id);
            queue.push_back(id);
        }
        if r {
            let id = nodes.len() as u32;
            nodes.push(BinNode {
                left: None,
                right: None,
            });
            nodes[v as usize].right = Some(id);
            queue.push_back(id);
        }
    }
    Sampled::Value(BinaryTree::from_nodes(nodes).expect("generation yields a tree"))
}

/// The radius-`h` pointed fringe of the local limit tree: a spine
/// `u_h, ..., u_0` whose inner vertices receive size-biased offspring, the
/// previous spine vertex occupying a uniformly chosen child slot, with
/// independent critical geometric trees hanging off every other child and
/// below `u_0`. The returned tree is rooted at `u_h` and marked at `u_0`.
pub fn tstar_truncated(
    height_h: usize,
    stream: &mut RandomStream,
    vertex_cap: usize,
) -> Sampled<PointedTree> {
    // grows a full geometric tree below an existing vertex id
    fn attach_gw(
        root: u32,
        children: &mut Vec<Vec<u32>>,
        budget: &mut usize,
        stream: &mut RandomStream,
    ) -> bool {
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let d = geometric_half(stream);
            for _ in 0..d {
                if *budget == 0 {
                    return false;
                }
                *budget -= 1;
                let id = children.len() as u32;
                children[v as usize].push(id);
                children.push(Vec::new());
                queue.push_back(id);
            }
        }
        true
    }

    fn new_vertex(children: &mut Vec<Vec<u32>>, budget: &mut usize) -> Option<u32> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        let id = children.len() as u32;
        children.push(Vec::new());
        Some(id)
    }

    let mut children: Vec<Vec<u32>> = Vec::new();
    let mut budget = vertex_cap;
    let Some(root) = new_vertex(&mut children, &mut budget) else {
        return Sampled::Overflow;
    };
    let mut spine_top = root; // u_i for decreasing i
    for _ in 0..height_h {
        let d = size_biased_geometric_half(stream);
        let slot = stream.gen_range(0..d);
        let mut next_spine = None;
        for j in 0..d {
            let Some(child) = new_vertex(&mut children, &mut budget) else {
                return Sampled::Overflow;
            };
            children[spine_top as usize].push(child);
            if j == slot {
                next_spine = Some(child);
            } else if !attach_gw(child, &mut children, &mut budget, stream) {
                return Sampled::Overflow;
            }
        }
        spine_top = next_spine.expect("slot within 0..d");
    }
    // the distinguished vertex roots one more independent tree
    if !attach_gw(spine_top, &mut children, &mut budget, stream) {
        return Sampled::Overflow;
    }

    let mark_old = spine_top;
    let (tree, map) =
        OrderedTree::from_children_mapped(children).expect("generation yields a tree");
    Sampled::Value(PointedTree {
        tree,
        mark: map[mark_old as usize],
    })
}

/// Boltzmann sampler over possibly-empty 231-avoiders: empty with
/// probability 1/2, otherwise the permutation of a critical binary
/// branching tree.
pub fn boltzmann_av231(stream: &mut RandomStream, vertex_cap: usize) -> Sampled<Permutation> {
    if stream.gen::<bool>() {
        Sampled::Value(Permutation::empty())
    } else {
        gw_binary(0.0, stream, vertex_cap).map(|t| btree_to_perm(&t))
    }
}

/// Exactly uniform binary tree with `n` vertices: leaf-insertion growth of a
/// uniform full binary tree with `n` internal vertices, then removal of its
/// leaves.
pub fn uniform_btree(n: usize, stream: &mut RandomStream) -> BinaryTree {
    assert!(n >= 1);
    #[derive(Clone, Copy)]
    struct FullNode {
        left: Option<u32>,
        right: Option<u32>,
        parent: Option<(u32, bool)>, // (parent id, occupies right slot)
    }
    let mut nodes = vec![FullNode {
        left: None,
        right: None,
        parent: None,
    }];
    let mut root = 0u32;
    for _ in 0..n {
        let v = stream.gen_range(0..nodes.len()) as u32;
        let new_leaf_right = stream.gen::<bool>();
        let internal = nodes.len() as u32;
        let leaf = internal + 1;
        let parent = nodes[v as usize].parent;
        nodes.push(FullNode {
            left: None,
            right: None,
            parent,
        });
        nodes.push(FullNode {
            left: None,
            right: None,
            parent: Some((internal, new_leaf_right)),
        });
        let (l, r) = if new_leaf_right { (v, leaf) } else { (leaf, v) };
        nodes[internal as usize].left = Some(l);
        nodes[internal as usize].right = Some(r);
        nodes[v as usize].parent = Some((internal, !new_leaf_right));
        match parent {
            None => root = internal,
            Some((p, true)) => nodes[p as usize].right = Some(internal),
            Some((p, false)) => nodes[p as usize].left = Some(internal),
        }
    }
    // internal vertices of the full tree form the target binary tree
    let is_internal = |v: u32| nodes[v as usize].left.is_some();
    let mut new_id = vec![u32::MAX; nodes.len()];
    let mut internals = Vec::new();
    for v in 0..nodes.len() as u32 {
        if is_internal(v) {
            new_id[v as usize] = internals.len() as u32;
            internals.push(v);
        }
    }
    let keep = |c: Option<u32>| c.filter(|&x| is_internal(x)).map(|x| new_id[x as usize]);
    let bin_nodes: Vec<BinNode> = internals
        .iter()
        .map(|&v| BinNode {
            left: keep(nodes[v as usize].left),
            right: keep(nodes[v as usize].right),
        })
        .collect();
    BinaryTree::from_nodes_rooted(bin_nodes, new_id[root as usize])
        .expect("pruned full tree is a tree")
}

/// Exactly uniform ordered tree with `n_vertices` vertices: a uniform
/// balanced up/down word rotated into a Dyck word (every Dyck word arises
/// from exactly `n + 1` balanced words), then read as a contour.
pub fn uniform_otree(n_vertices: usize, stream: &mut RandomStream) -> OrderedTree {
    assert!(n_vertices >= 1);
    let n = n_vertices - 1;
    if n == 0 {
        return OrderedTree::single();
    }
    // balanced word plus a sentinel up-step, length 2n + 1
    let mut steps: Vec<Step> = std::iter::repeat(Step::U)
        .take(n)
        .chain(std::iter::repeat(Step::D).take(n))
        .collect();
    for i in (1..steps.len()).rev() {
        steps.swap(i, stream.gen_range(0..=i));
    }
    steps.push(Step::U);
    let len = steps.len();
    // the rotation starting after the last prefix-sum minimum is the unique
    // one whose proper prefixes all stay positive
    let mut sum = 0i64;
    let mut min = 0i64;
    let mut cut = 0usize;
    for (i, &s) in steps.iter().enumerate() {
        sum += if s == Step::U { 1 } else { -1 };
        if sum <= min {
            min = sum;
            cut = i + 1;
        }
    }
    let rotated: Vec<Step> = steps[cut % len..]
        .iter()
        .chain(steps[..cut % len].iter())
        .copied()
        .collect();
    debug_assert_eq!(rotated[0], Step::U);
    let word = DyckWord::new(rotated[1..].to_vec()).expect("rotation yields a Dyck word");
    tree_from_contour(&word)
}

/// Exactly uniform member of `Av^n(231)`.
pub fn uniform_av231(n: usize, stream: &mut RandomStream) -> Permutation {
    btree_to_perm(&uniform_btree(n, stream))
}

/// Exactly uniform member of `Av^n(321)`.
pub fn uniform_av321(n: usize, stream: &mut RandomStream) -> Permutation {
    otree_to_perm(&uniform_otree(n + 1, stream))
}

/// Radius-`h` window of the two-sided sign construction: independent fair
/// signs on `[-h, h]`, minus-labeled positions ordered below plus-labeled
/// ones, each side in natural order; rooted at the center.
pub fn limit321_window(h: usize, stream: &mut RandomStream) -> RootedPermutation {
    assert!(h >= 1);
    let len = 2 * h + 1;
    let signs: Vec<bool> = (0..len).map(|_| stream.gen::<bool>()).collect(); // true = plus
    let mut word = vec![0u32; len];
    let mut rank = 0u32;
    for (i, &plus) in signs.iter().enumerate() {
        if !plus {
            rank += 1;
            word[i] = rank;
        }
    }
    for (i, &plus) in signs.iter().enumerate() {
        if plus {
            rank += 1;
            word[i] = rank;
        }
    }
    RootedPermutation::new(
        Permutation::new(word).expect("ranks form a permutation"),
        h + 1,
    )
    .expect("center root in range")
}

mod limit231;
pub use limit231::limit231_window;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limits::{catalan, enumerate_class, rat_to_f64, AvClass};
    use crate::trees::enumerate_ordered_trees;
    use num_traits::Zero;
    use std::collections::HashMap;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let draw = |seed, stream| -> Vec<u64> {
            let mut s = RandomStream::new(seed, stream);
            (0..8).map(|_| s.next_u64()).collect()
        };
        assert_eq!(draw(7, 1), draw(7, 1));
        assert_ne!(draw(7, 1), draw(7, 2));
        assert_ne!(draw(7, 1), draw(8, 1));
    }

    #[test]
    fn geometric_half_law() {
        let mut s = RandomStream::new(11, 0);
        let n = 200_000;
        let mut counts = [0u64; 4];
        for _ in 0..n {
            let k = geometric_half(&mut s);
            if k < 4 {
                counts[k] += 1;
            }
        }
        for (k, &c) in counts.iter().enumerate() {
            let q = 0.5f64.powi(k as i32 + 1);
            let expected = (n as f64) * q;
            let se = (expected * (1.0 - q)).sqrt();
            assert!(
                ((c as f64) - expected).abs() < 4.0 * se,
                "k={k} count={c} expected={expected}"
            );
        }
    }

    #[test]
    fn size_biased_law() {
        let mut s = RandomStream::new(12, 0);
        let n = 200_000;
        let mut counts = HashMap::new();
        for _ in 0..n {
            *counts
                .entry(size_biased_geometric_half(&mut s))
                .or_insert(0u64) += 1;
        }
        for k in 1..=5usize {
            let p = (k as f64) * 0.5f64.powi(k as i32 + 1);
            let c = *counts.get(&k).unwrap_or(&0) as f64;
            assert!(
                (c / n as f64 - p).abs() < 0.005,
                "k={k} freq={} expected={p}",
                c / n as f64
            );
        }
    }

    #[test]
    fn gw_binary_tree_law_small_trees() {
        // each fixed binary tree T has probability p^{|T|-1} (1-p)^{|T|+1}
        for delta in [0.0, 0.2] {
            let p = (1.0 - delta) / 2.0;
            let mut s = RandomStream::new(6, 4);
            let n = 200_000u64;
            let mut counts: HashMap<BinaryTree, u64> = HashMap::new();
            for _ in 0..n {
                if let Sampled::Value(t) = gw_binary(delta, &mut s, 1 << 12) {
                    if t.n_vertices() <= 3 {
                        *counts.entry(t).or_insert(0) += 1;
                    }
                }
            }
            for size in 1..=3usize {
                for t in crate::trees::enumerate_binary_trees(size) {
                    let q = p.powi(size as i32 - 1) * (1.0 - p).powi(size as i32 + 1);
                    let c = *counts.get(&t).unwrap_or(&0) as f64;
                    let se = ((n as f64) * q * (1.0 - q)).sqrt();
                    assert!(
                        (c - q * n as f64).abs() < 3.5 * se,
                        "delta={delta} size={size} count={c} expected={}",
                        q * n as f64
                    );
                }
            }
        }
    }

    #[test]
    fn gw_ordered_single_vertex_probability() {
        let mut s = RandomStream::new(5, 3);
        let n = 100_000;
        let mut singles = 0u64;
        for _ in 0..n {
            if let Sampled::Value(GwTree::Ordered(t)) =
                gw_tree(OffspringLaw::GeometricHalf, &mut s, 1 << 12)
            {
                if t.n_vertices() == 1 {
                    singles += 1;
                }
            }
        }
        assert!((singles as f64 / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn uniform_btree_small_counts() {
        let mut s = RandomStream::new(21, 0);
        assert_eq!(uniform_btree(1, &mut s).n_vertices(), 1);
        let n = 40_000;
        let mut left = 0u64;
        for _ in 0..n {
            let t = uniform_btree(2, &mut s);
            assert_eq!(t.n_vertices(), 2);
            if t.node(0).left.is_some() {
                left += 1;
            }
        }
        assert!((left as f64 / n as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn uniform_otree_small_counts() {
        let mut s = RandomStream::new(22, 0);
        assert_eq!(uniform_otree(1, &mut s).n_vertices(), 1);
        // 3 vertices: chain and cherry each 1/2
        let n = 40_000;
        let mut chains = 0u64;
        for _ in 0..n {
            let t = uniform_otree(3, &mut s);
            assert_eq!(t.n_vertices(), 3);
            if t.degree(0) == 1 {
                chains += 1;
            }
        }
        assert!((chains as f64 / n as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn uniform_class_samplers_are_uniform_at_n4() {
        let n_samples = 70_000;
        for class in [AvClass::Av231, AvClass::Av321] {
            let mut s = RandomStream::new(23, 9);
            let members = enumerate_class(class, 4).unwrap();
            assert_eq!(members.len() as u64, catalan(4));
            let mut counts: HashMap<Permutation, u64> = HashMap::new();
            for _ in 0..n_samples {
                let sigma = match class {
                    AvClass::Av231 => uniform_av231(4, &mut s),
                    AvClass::Av321 => uniform_av321(4, &mut s),
                };
                *counts.entry(sigma).or_insert(0) += 1;
            }
            for m in &members {
                let freq = *counts.get(m).unwrap_or(&0) as f64 / n_samples as f64;
                assert!((freq - 1.0 / 14.0).abs() < 0.012, "{m} freq={freq}");
            }
        }
    }

    #[test]
    fn uniform_samplers_stay_in_class() {
        let mut s = RandomStream::new(29, 0);
        for _ in 0..50 {
            let a = uniform_av231(64, &mut s);
            assert!(crate::perm::avoids(&a, &AvClass::Av231.forbidden()).unwrap());
            let b = uniform_av321(64, &mut s);
            assert!(crate::perm::avoids(&b, &AvClass::Av321.forbidden()).unwrap());
        }
    }

    #[test]
    fn boltzmann_law() {
        let mut s = RandomStream::new(31, 0);
        let n = 200_000u64;
        let mut empty = 0u64;
        let mut single = 0u64;
        let mut size2: HashMap<Permutation, u64> = HashMap::new();
        for _ in 0..n {
            match boltzmann_av231(&mut s, 1 << 16) {
                Sampled::Value(p) if p.is_empty() => empty += 1,
                Sampled::Value(p) if p.size() == 1 => single += 1,
                Sampled::Value(p) if p.size() == 2 => {
                    *size2.entry(p).or_insert(0) += 1;
                }
                _ => {}
            }
        }
        assert!((empty as f64 / n as f64 - 0.5).abs() < 0.005);
        assert!((single as f64 / n as f64 - 0.125).abs() < 0.005);
        for w in ["12", "21"] {
            let c = *size2.get(&w.parse().unwrap()).unwrap_or(&0) as f64;
            assert!((c / n as f64 - 1.0 / 32.0).abs() < 0.005, "{w}");
        }
    }

    #[test]
    fn tstar_zero_height_is_plain_tree() {
        let mut s = RandomStream::new(41, 0);
        let n = 100_000u64;
        let mut singles = 0u64;
        for _ in 0..n {
            if let Sampled::Value(pt) = tstar_truncated(0, &mut s, 1 << 12) {
                assert_eq!(pt.mark, 0);
                if pt.tree.n_vertices() == 1 {
                    singles += 1;
                }
            }
        }
        // P(single vertex) = 1/2 under the geometric law
        assert!((singles as f64 / n as f64 - 0.5).abs() < 0.005);
    }

    #[test]
    fn tstar_spine_offspring_law() {
        let mut s = RandomStream::new(42, 0);
        let n = 100_000u64;
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for _ in 0..n {
            if let Sampled::Value(pt) = tstar_truncated(1, &mut s, 1 << 14) {
                *counts.entry(pt.tree.degree(0)).or_insert(0) += 1;
            }
        }
        for k in 1..=5usize {
            let p = (k as f64) * 0.5f64.powi(k as i32 + 1);
            let freq = *counts.get(&k).unwrap_or(&0) as f64 / n as f64;
            assert!((freq - p).abs() < 0.006, "k={k} freq={freq} expected={p}");
        }
    }

    #[test]
    fn tstar_product_law_small_pointed_trees() {
        // P(pointed fringe = T) = product over vertices of eta_{deg}, which
        // is 2^{1 - 2|T|} for the geometric law
        let n = 150_000u64;
        for h in 0..=2usize {
            let mut s = RandomStream::new(43, h as u64);
            let mut counts: HashMap<PointedTree, u64> = HashMap::new();
            for _ in 0..n {
                if let Sampled::Value(pt) = tstar_truncated(h, &mut s, 64) {
                    if pt.tree.n_vertices() <= 5 {
                        *counts.entry(pt).or_insert(0) += 1;
                    }
                }
            }
            let mut targets = 0;
            for size in 1..=5usize {
                for t in enumerate_ordered_trees(size) {
                    for mark in 0..size as u32 {
                        let pt = PointedTree {
                            tree: t.clone(),
                            mark,
                        };
                        if pt.mark_height() != h {
                            continue;
                        }
                        targets += 1;
                        let expected = 0.5f64.powi(2 * size as i32 - 1);
                        let freq = *counts.get(&pt).unwrap_or(&0) as f64 / n as f64;
                        assert!(
                            (freq - expected).abs() < 0.01,
                            "h={h} size={size} mark={mark} freq={freq} expected={expected}"
                        );
                    }
                }
            }
            assert!(targets > 0);
        }
    }

    #[test]
    fn limit321_marginal_matches_law() {
        let mut s = RandomStream::new(51, 0);
        let n = 100_000u64;
        let mut counts: HashMap<Permutation, u64> = HashMap::new();
        for _ in 0..n {
            let w = limit321_window(1, &mut s);
            assert_eq!(w.size(), 3);
            assert_eq!(w.root(), 2);
            *counts.entry(w.sigma().clone()).or_insert(0) += 1;
        }
        for pi in enumerate_class(AvClass::Av321, 3).unwrap() {
            let expected = rat_to_f64(&crate::limits::p321(&pi).unwrap());
            let freq = *counts.get(&pi).unwrap_or(&0) as f64 / n as f64;
            assert!(
                (freq - expected).abs() < 0.01,
                "pi={pi} freq={freq} expected={expected}"
            );
        }
        // windows with two inverse descents never appear
        for pi in counts.keys() {
            assert!(!crate::limits::p321(pi).unwrap().is_zero(), "window {pi}");
        }
    }
}
