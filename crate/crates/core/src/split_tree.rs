//! Fair split-tree over a point set.
//!
//! Every internal node stores the tight bounding box of its points and is cut
//! at the midpoint of a longest side; leaves hold exactly one point. The tree
//! keeps a permutation of the input indices (`point_order`) arranged so that
//! each node's point set is one contiguous range, which makes subset queries
//! and representative lookups O(1).

use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, ColoredPointSet};
use crate::scalar::Scalar;

pub type NodeId = usize;

#[derive(Clone, Debug)]
pub struct SplitNode<F> {
    pub bbox: BoundingBox<F>,
    /// Range into `SplitTree::point_order`.
    pub begin: usize,
    pub end: usize,
    pub parent: Option<NodeId>,
    pub children: Option<(NodeId, NodeId)>,
    pub depth: usize,
}

impl<F> SplitNode<F> {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn len(&self) -> usize {
        self.end - self.begin
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct SplitTree<F> {
    d: usize,
    nodes: Vec<SplitNode<F>>,
    point_order: Vec<usize>,
    /// Leaf node holding each point, indexed by point index.
    leaf_of: Vec<NodeId>,
}

pub const ROOT: NodeId = 0;

impl<F: Scalar> SplitTree<F> {
    pub fn build(set: &ColoredPointSet<F>) -> Result<Self> {
        if set.n() == 0 {
            return Err(Error::EmptyPointSet);
        }
        let mut tree = SplitTree {
            d: set.d(),
            nodes: Vec::with_capacity(2 * set.n() - 1),
            point_order: (0..set.n()).collect(),
            leaf_of: vec![0; set.n()],
        };
        tree.build_range(set, 0, set.n(), None, 0);
        Ok(tree)
    }

    fn build_range(
        &mut self,
        set: &ColoredPointSet<F>,
        begin: usize,
        end: usize,
        parent: Option<NodeId>,
        depth: usize,
    ) -> NodeId {
        let bbox = set
            .bounding_box(&self.point_order[begin..end])
            .expect("range is non-empty");
        let id = self.nodes.len();
        self.nodes.push(SplitNode {
            bbox,
            begin,
            end,
            parent,
            children: None,
            depth,
        });
        if end - begin == 1 {
            self.leaf_of[self.point_order[begin]] = id;
            return id;
        }

        let (dim, mid) = self.split_plane(id);
        let range = &self.point_order[begin..end];
        // Stable partition; a point exactly on the plane goes to the lower child.
        let (mut lower, upper): (Vec<usize>, Vec<usize>) =
            range.iter().partition(|&&p| set.coords(p)[dim] <= mid);
        let mut upper = upper;
        if lower.is_empty() || upper.is_empty() {
            // The midpoint cut degenerated (possible when every side length
            // rounds the midpoint onto an endpoint); fall back to splitting
            // the list at its median along the split dimension.
            let mut sorted = range.to_vec();
            sorted.sort_by(|&a, &b| {
                set.coords(a)[dim]
                    .partial_cmp(&set.coords(b)[dim])
                    .expect("finite coordinates")
                    .then(a.cmp(&b))
            });
            let half = sorted.len() / 2;
            upper = sorted.split_off(half);
            lower = sorted;
        }
        let mid_pos = begin + lower.len();
        self.point_order[begin..mid_pos].copy_from_slice(&lower);
        self.point_order[mid_pos..end].copy_from_slice(&upper);

        let left = self.build_range(set, begin, mid_pos, Some(id), depth + 1);
        let right = self.build_range(set, mid_pos, end, Some(id), depth + 1);
        self.nodes[id].children = Some((left, right));
        id
    }

    /// Longest side of the node box (ties broken toward the smallest
    /// dimension index) and its midpoint.
    fn split_plane(&self, id: NodeId) -> (usize, F) {
        let bbox = &self.nodes[id].bbox;
        let mut dim = 0;
        let mut best = bbox.hi[0] - bbox.lo[0];
        for i in 1..self.d {
            let side = bbox.hi[i] - bbox.lo[i];
            if side > best {
                best = side;
                dim = i;
            }
        }
        (dim, (bbox.lo[dim] + bbox.hi[dim]) / F::two())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn node(&self, id: NodeId) -> &SplitNode<F> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[SplitNode<F>] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn n(&self) -> usize {
        self.leaf_of.len()
    }

    /// Point indices stored in the subtree of `id`, in canonical order.
    pub fn points(&self, id: NodeId) -> &[usize] {
        let node = &self.nodes[id];
        &self.point_order[node.begin..node.end]
    }

    /// The point at the leftmost leaf of `id`'s subtree.
    pub fn leftmost_point(&self, id: NodeId) -> usize {
        self.point_order[self.nodes[id].begin]
    }

    /// Leaf node storing point `p`.
    pub fn leaf_of(&self, p: usize) -> NodeId {
        self.leaf_of[p]
    }

    pub fn point_order(&self) -> &[usize] {
        &self.point_order
    }
}
