//! Rooted ordered trees, binary trees, traversals, contours and Dyck words.
//!
//! Vertices are dense integer ids. Every constructor renumbers vertices in
//! pre-order, so two trees are equal as plane trees exactly when their
//! `children` tables are equal; derived equality and hashing are canonical.

use crate::error::PermError;
use std::fmt;
use std::str::FromStr;

/// A rooted plane tree with at least one vertex. Vertex 0 is the root and
/// ids follow the pre-order traversal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrderedTree {
    children: Vec<Vec<u32>>,
}

impl OrderedTree {
    pub fn single() -> Self {
        Self {
            children: vec![Vec::new()],
        }
    }

    /// Builds from a children table with root 0, checking that the table
    /// describes a tree; vertices are renumbered in pre-order.
    pub fn from_children(children: Vec<Vec<u32>>) -> Result<Self, PermError> {
        Ok(Self::from_children_mapped(children)?.0)
    }

    /// Same as [`Self::from_children`], also returning the old-id to new-id
    /// mapping produced by the renumbering.
    pub fn from_children_mapped(children: Vec<Vec<u32>>) -> Result<(Self, Vec<u32>), PermError> {
        let n = children.len();
        if n == 0 {
            return Err(PermError::VertexNotInTree);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &c in children[v as usize].iter().rev() {
                if c as usize >= n || seen[c as usize] {
                    return Err(PermError::VertexNotInTree);
                }
                seen[c as usize] = true;
                stack.push(c);
            }
        }
        if order.len() != n {
            return Err(PermError::VertexNotInTree);
        }
        let mut new_id = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let mut renum = vec![Vec::new(); n];
        for (old, kids) in children.iter().enumerate() {
            renum[new_id[old] as usize] = kids.iter().map(|&c| new_id[c as usize]).collect();
        }
        Ok((Self { children: renum }, new_id))
    }

    pub fn n_vertices(&self) -> usize {
        self.children.len()
    }

    pub fn children(&self, v: u32) -> &[u32] {
        &self.children[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.children[v as usize].len()
    }

    pub fn is_leaf(&self, v: u32) -> bool {
        self.children[v as usize].is_empty()
    }

    /// Parent of each vertex; the root maps to itself.
    pub fn parents(&self) -> Vec<u32> {
        let mut par = vec![0u32; self.n_vertices()];
        for (v, kids) in self.children.iter().enumerate() {
            for &c in kids {
                par[c as usize] = v as u32;
            }
        }
        par
    }

    pub fn pre_order(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n_vertices());
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            out.push(v);
            for &c in self.children[v as usize].iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    pub fn post_order(&self) -> Vec<u32> {
        // (vertex, next child slot) frames
        let mut out = Vec::with_capacity(self.n_vertices());
        let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
        while let Some(&(v, slot)) = stack.last() {
            if slot < self.children[v as usize].len() {
                stack.last_mut().unwrap().1 += 1;
                stack.push((self.children[v as usize][slot], 0));
            } else {
                out.push(v);
                stack.pop();
            }
        }
        out
    }

    /// Pre-order labels starting from 0 and post-order labels starting
    /// from 1 of the leaves, in left-to-right order. Both lists are strictly
    /// increasing.
    pub fn leaf_labels(&self) -> (Vec<usize>, Vec<usize>) {
        let mut pre_label = vec![0usize; self.n_vertices()];
        for (i, &v) in self.pre_order().iter().enumerate() {
            pre_label[v as usize] = i; // from 0
        }
        let mut s = Vec::new();
        let mut q = Vec::new();
        for (i, &v) in self.post_order().iter().enumerate() {
            if self.is_leaf(v) {
                q.push(i + 1); // from 1
            }
        }
        for &v in &self.pre_order() {
            if self.is_leaf(v) {
                s.push(pre_label[v as usize]);
            }
        }
        (s, q)
    }

    /// Subtree hanging below `v`, renumbered.
    pub fn fringe(&self, v: u32) -> Result<OrderedTree, PermError> {
        if v as usize >= self.n_vertices() {
            return Err(PermError::VertexNotInTree);
        }
        let mut old_ids = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            old_ids.push(u);
            for &c in self.children[u as usize].iter().rev() {
                stack.push(c);
            }
        }
        let mut new_id = vec![u32::MAX; self.n_vertices()];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let children = old_ids
            .iter()
            .map(|&old| {
                self.children[old as usize]
                    .iter()
                    .map(|&c| new_id[c as usize])
                    .collect()
            })
            .collect();
        Ok(OrderedTree { children })
    }

    /// Fringe subtree at the `h`-th ancestor of `v`, keeping `v` marked.
    /// `None` when `v` has height less than `h`.
    pub fn pointed_fringe(&self, v: u32, h: usize) -> Result<Option<PointedTree>, PermError> {
        if v as usize >= self.n_vertices() {
            return Err(PermError::VertexNotInTree);
        }
        let parents = self.parents();
        let mut top = v;
        for _ in 0..h {
            if top == 0 {
                return Ok(None);
            }
            top = parents[top as usize];
        }
        // renumber the subtree while tracking where v lands
        let mut old_ids = Vec::new();
        let mut stack = vec![top];
        while let Some(u) = stack.pop() {
            old_ids.push(u);
            for &c in self.children[u as usize].iter().rev() {
                stack.push(c);
            }
        }
        let mut new_id = vec![u32::MAX; self.n_vertices()];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let children = old_ids
            .iter()
            .map(|&old| {
                self.children[old as usize]
                    .iter()
                    .map(|&c| new_id[c as usize])
                    .collect()
            })
            .collect();
        Ok(Some(PointedTree {
            tree: OrderedTree { children },
            mark: new_id[v as usize],
        }))
    }
}

/// An ordered tree with a distinguished vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointedTree {
    pub tree: OrderedTree,
    pub mark: u32,
}

impl PointedTree {
    /// Height of the marked vertex.
    pub fn mark_height(&self) -> usize {
        let parents = self.tree.parents();
        let mut v = self.mark;
        let mut h = 0;
        while v != 0 {
            v = parents[v as usize];
            h += 1;
        }
        h
    }
}

/// A binary tree: every vertex has an optional left and an optional right
/// child. Vertex 0 is the root; ids follow the pre-order traversal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct BinNode {
    pub left: Option<u32>,
    pub right: Option<u32>,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BinaryTree {
    nodes: Vec<BinNode>,
}

impl BinaryTree {
    pub fn single() -> Self {
        Self {
            nodes: vec![BinNode {
                left: None,
                right: None,
            }],
        }
    }

    pub fn from_nodes(nodes: Vec<BinNode>) -> Result<Self, PermError> {
        Self::from_nodes_rooted(nodes, 0)
    }

    /// Same as [`Self::from_nodes`] with an explicit root vertex.
    pub fn from_nodes_rooted(nodes: Vec<BinNode>, root: u32) -> Result<Self, PermError> {
        let n = nodes.len();
        if n == 0 || root as usize >= n {
            return Err(PermError::VertexNotInTree);
        }
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for c in [nodes[v as usize].right, nodes[v as usize].left]
                .into_iter()
                .flatten()
            {
                if c as usize >= n || seen[c as usize] {
                    return Err(PermError::VertexNotInTree);
                }
                seen[c as usize] = true;
                stack.push(c);
            }
        }
        if order.len() != n {
            return Err(PermError::VertexNotInTree);
        }
        let mut new_id = vec![0u32; n];
        for (new, &old) in order.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let mut renum = vec![
            BinNode {
                left: None,
                right: None
            };
            n
        ];
        for (old, node) in nodes.iter().enumerate() {
            renum[new_id[old] as usize] = BinNode {
                left: node.left.map(|c| new_id[c as usize]),
                right: node.right.map(|c| new_id[c as usize]),
            };
        }
        Ok(Self { nodes: renum })
    }

    pub fn n_vertices(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, v: u32) -> BinNode {
        self.nodes[v as usize]
    }

    pub fn pre_order(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n_vertices());
        let mut stack = vec![0u32];
        while let Some(v) = stack.pop() {
            out.push(v);
            let node = self.nodes[v as usize];
            if let Some(r) = node.right {
                stack.push(r);
            }
            if let Some(l) = node.left {
                stack.push(l);
            }
        }
        out
    }

    pub fn post_order(&self) -> Vec<u32> {
        #[derive(Clone, Copy)]
        enum Phase {
            Enter,
            Exit,
        }
        let mut out = Vec::with_capacity(self.n_vertices());
        let mut stack = vec![(0u32, Phase::Enter)];
        while let Some((v, phase)) = stack.pop() {
            match phase {
                Phase::Enter => {
                    stack.push((v, Phase::Exit));
                    let node = self.nodes[v as usize];
                    if let Some(r) = node.right {
                        stack.push((r, Phase::Enter));
                    }
                    if let Some(l) = node.left {
                        stack.push((l, Phase::Enter));
                    }
                }
                Phase::Exit => out.push(v),
            }
        }
        out
    }

    pub fn in_order(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.n_vertices());
        let mut stack: Vec<u32> = Vec::new();
        let mut cur = Some(0u32);
        while cur.is_some() || !stack.is_empty() {
            while let Some(v) = cur {
                stack.push(v);
                cur = self.nodes[v as usize].left;
            }
            let v = stack.pop().unwrap();
            out.push(v);
            cur = self.nodes[v as usize].right;
        }
        out
    }
}

/// One step of a Dyck path.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    U,
    D,
}

/// A balanced word over `{U, D}` in which every prefix has at least as many
/// `U`s as `D`s.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DyckWord {
    steps: Vec<Step>,
}

impl DyckWord {
    pub fn new(steps: Vec<Step>) -> Result<Self, PermError> {
        let mut height = 0i64;
        for &s in &steps {
            height += if s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(PermError::NotADyckWord);
            }
        }
        if height != 0 {
            return Err(PermError::NotADyckWord);
        }
        Ok(Self { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Number of `UD` factors.
    pub fn peaks(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[0] == Step::U && w[1] == Step::D)
            .count()
    }
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            write!(f, "{}", if s == Step::U { 'U' } else { 'D' })?;
        }
        Ok(())
    }
}

impl FromStr for DyckWord {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        let steps: Vec<Step> = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(Step::U),
                'D' | 'd' => Ok(Step::D),
                _ => Err(PermError::ParseError(format!("bad Dyck letter `{c}`"))),
            })
            .collect::<Result<_, _>>()?;
        DyckWord::new(steps)
    }
}

/// Contour of a tree with `n + 1` vertices: the walk around the tree from
/// left to right, one `U` per edge descent and one `D` per edge ascent.
pub fn contour(t: &OrderedTree) -> DyckWord {
    let mut steps = Vec::with_capacity(2 * (t.n_vertices() - 1));
    // frames: (vertex, next child slot)
    let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
    while let Some(&(v, slot)) = stack.last() {
        if slot < t.children(v).len() {
            stack.last_mut().unwrap().1 += 1;
            steps.push(Step::U);
            stack.push((t.children(v)[slot], 0));
        } else {
            stack.pop();
            if !stack.is_empty() {
                steps.push(Step::D);
            }
        }
    }
    DyckWord { steps }
}

/// Inverse of [`contour`]: the tree with `len/2 + 1` vertices traced by the
/// walk.
pub fn tree_from_contour(w: &DyckWord) -> OrderedTree {
    let n = w.len() / 2 + 1;
    let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
    let mut next = 1u32;
    let mut stack = vec![0u32];
    for &s in w.steps() {
        match s {
            Step::U => {
                let parent = *stack.last().unwrap();
                children[parent as usize].push(next);
                stack.push(next);
                next += 1;
            }
            Step::D => {
                stack.pop();
            }
        }
    }
    // construction emits vertices in pre-order already
    OrderedTree { children }
}

/// Checks whether `w` lies in the language
/// `U^+ D^{x_2-x_1} U^+ D^{x_3-x_2} ... U^+ D^{x_m-x_{m-1}} U^+ D^+`
/// determined by the label set `A = {x_1 < ... < x_m}` with `x_1 = 1`.
pub fn contour_shape_check(w: &DyckWord, a: &[usize]) -> bool {
    if a.is_empty() || a[0] != 1 || a.windows(2).any(|p| p[0] >= p[1]) {
        return false;
    }
    // run-length decomposition U^{u_1} D^{d_1} ... U^{u_r} D^{d_r}
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut i = 0;
    let steps = w.steps();
    while i < steps.len() {
        let mut u = 0;
        while i < steps.len() && steps[i] == Step::U {
            u += 1;
            i += 1;
        }
        let mut d = 0;
        while i < steps.len() && steps[i] == Step::D {
            d += 1;
            i += 1;
        }
        if u == 0 {
            return false; // word starting with D
        }
        runs.push((u, d));
    }
    let m = a.len();
    if runs.len() != m {
        return false;
    }
    for j in 0..m - 1 {
        if runs[j].1 != a[j + 1] - a[j] {
            return false;
        }
    }
    runs[m - 1].1 >= 1
}

/// All ordered trees with exactly `n` vertices (`n >= 1`); an exhaustive
/// oracle for tests and verification suites.
pub fn enumerate_ordered_trees(n: usize) -> Vec<OrderedTree> {
    assert!(n >= 1);
    enumerate_dyck(n - 1)
        .iter()
        .map(tree_from_contour)
        .collect()
}

/// All Dyck words with `n` up-steps.
pub fn enumerate_dyck(n: usize) -> Vec<DyckWord> {
    fn rec(steps: &mut Vec<Step>, open: usize, remaining: usize, out: &mut Vec<DyckWord>) {
        if remaining == 0 && open == 0 {
            out.push(DyckWord {
                steps: steps.clone(),
            });
            return;
        }
        if remaining > 0 {
            steps.push(Step::U);
            rec(steps, open + 1, remaining - 1, out);
            steps.pop();
        }
        if open > 0 {
            steps.push(Step::D);
            rec(steps, open - 1, remaining, out);
            steps.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n, &mut out);
    out
}

/// All binary trees with exactly `n` vertices (`n >= 1`); exhaustive oracle.
pub fn enumerate_binary_trees(n: usize) -> Vec<BinaryTree> {
    assert!(n >= 1);
    // Build recursively as nested options, then flatten through from_nodes.
    fn build(n: usize) -> Vec<Option<Box<Shape>>> {
        if n == 0 {
            return vec![None];
        }
        let mut out = Vec::new();
        for left_size in 0..n {
            for l in build(left_size) {
                for r in build(n - 1 - left_size) {
                    out.push(Some(Box::new(Shape {
                        left: l.clone(),
                        right: r,
                    })));
                }
            }
        }
        out
    }
    #[derive(Clone)]
    struct Shape {
        left: Option<Box<Shape>>,
        right: Option<Box<Shape>>,
    }
    fn flatten(s: &Shape, nodes: &mut Vec<BinNode>) -> u32 {
        let id = nodes.len() as u32;
        nodes.push(BinNode {
            left: None,
            right: None,
        });
        if let Some(l) = &s.left {
            let c = flatten(l, nodes);
            nodes[id as usize].left = Some(c);
        }
        if let Some(r) = &s.right {
            let c = flatten(r, nodes);
            nodes[id as usize].right = Some(c);
        }
        id
    }
    build(n)
        .into_iter()
        .flatten()
        .map(|shape| {
            let mut nodes = Vec::new();
            flatten(&shape, &mut nodes);
            BinaryTree::from_nodes(nodes).expect("enumerated shape is a tree")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(n: usize) -> OrderedTree {
        let children = (0..n)
            .map(|v| {
                if v + 1 < n {
                    vec![v as u32 + 1]
                } else {
                    vec![]
                }
            })
            .collect();
        OrderedTree::from_children(children).unwrap()
    }

    fn bin_chain_left(n: usize) -> BinaryTree {
        let nodes = (0..n)
            .map(|v| BinNode {
                left: if v + 1 < n { Some(v as u32 + 1) } else { None },
                right: None,
            })
            .collect();
        BinaryTree::from_nodes(nodes).unwrap()
    }

    #[test]
    fn traversals_on_small_trees() {
        let single = OrderedTree::single();
        assert_eq!(single.pre_order(), vec![0]);
        assert_eq!(single.post_order(), vec![0]);

        let c = bin_chain_left(3);
        assert_eq!(c.pre_order(), vec![0, 1, 2]);
        assert_eq!(c.post_order(), vec![2, 1, 0]);
        assert_eq!(c.in_order(), vec![2, 1, 0]);

        // root with left leaf and right leaf: in-order = (left, root, right)
        let t = BinaryTree::from_nodes(vec![
            BinNode {
                left: Some(1),
                right: Some(2),
            },
            BinNode {
                left: None,
                right: None,
            },
            BinNode {
                left: None,
                right: None,
            },
        ])
        .unwrap();
        let order = t.in_order();
        let root_pos = order.iter().position(|&v| v == 0).unwrap();
        assert_eq!(root_pos, 1);
    }

    #[test]
    fn contour_examples() {
        assert_eq!(contour(&chain(2)).to_string(), "UD");
        assert_eq!(contour(&chain(3)).to_string(), "UUDD");
        let two_leaves = OrderedTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(contour(&two_leaves).to_string(), "UDUD");
    }

    #[test]
    fn contour_roundtrip_exhaustive() {
        for n in 1..=9usize {
            for t in enumerate_ordered_trees(n) {
                assert_eq!(tree_from_contour(&contour(&t)), t);
            }
        }
    }

    #[test]
    fn leaf_count_matches_peaks() {
        for n in 2..=8usize {
            for t in enumerate_ordered_trees(n) {
                let leaves = (0..t.n_vertices() as u32).filter(|&v| t.is_leaf(v)).count();
                assert_eq!(leaves, contour(&t).peaks());
            }
        }
    }

    #[test]
    fn leaf_labels_examples() {
        // single edge: S = (1), Q = (1)
        assert_eq!(chain(2).leaf_labels(), (vec![1], vec![1]));
        // chain of 3: S = (2), Q = (1)
        assert_eq!(chain(3).leaf_labels(), (vec![2], vec![1]));
        // root with two leaves: S = (1,2), Q = (1,2)
        let two = OrderedTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(two.leaf_labels(), (vec![1, 2], vec![1, 2]));
    }

    #[test]
    fn shape_check_examples() {
        let udud: DyckWord = "UDUD".parse().unwrap();
        let uudd: DyckWord = "UUDD".parse().unwrap();
        assert!(contour_shape_check(&udud, &[1, 2]));
        assert!(contour_shape_check(&uudd, &[1]));
        assert!(!contour_shape_check(&udud, &[1]));
    }

    #[test]
    fn shape_check_equals_leaf_labels_exhaustive() {
        for n in 2..=9usize {
            for t in enumerate_ordered_trees(n) {
                let (_, q) = t.leaf_labels();
                let w = contour(&t);
                // every admissible label set: subsets of [1, n-1] containing 1
                let edges = n - 1;
                for mask in 0..(1u32 << (edges - 1)) {
                    let mut a = vec![1usize];
                    for b in 0..edges - 1 {
                        if mask >> b & 1 == 1 {
                            a.push(b + 2);
                        }
                    }
                    assert_eq!(contour_shape_check(&w, &a), a == q, "tree {t:?} A={a:?}");
                }
            }
        }
    }

    #[test]
    fn fringe_examples() {
        let t = chain(3);
        assert_eq!(t.fringe(0).unwrap(), t);
        assert_eq!(t.fringe(1).unwrap(), chain(2));
        assert!(t.fringe(7).is_err());
    }

    #[test]
    fn pointed_fringe_examples() {
        let t = chain(3);
        assert_eq!(t.pointed_fringe(0, 1).unwrap(), None);
        let whole = t.pointed_fringe(2, 2).unwrap().unwrap();
        assert_eq!(whole.tree, chain(3));
        assert_eq!(whole.mark_height(), 2);
        let half = t.pointed_fringe(2, 1).unwrap().unwrap();
        assert_eq!(half.tree, chain(2));
        assert_eq!(half.mark, 1);
    }

    #[test]
    fn catalan_counts() {
        let catalan = [1usize, 1, 2, 5, 14, 42, 132, 429];
        for n in 1..=7usize {
            assert_eq!(enumerate_ordered_trees(n + 1).len(), catalan[n]);
            assert_eq!(enumerate_binary_trees(n).len(), catalan[n]);
        }
    }

    #[test]
    fn renumbering_is_canonical() {
        // same shape given with scrambled ids compares equal
        let a = OrderedTree::from_children(vec![vec![2, 1], vec![], vec![]]).unwrap();
        let b = OrderedTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        assert_eq!(a, b);
        let bad = OrderedTree::from_children(vec![vec![1], vec![0]]);
        assert!(bad.is_err());
    }
}
