//! MWSPD filtering, node classification, and closest-pair assignment.

use crate::geometry::{Color, ColoredPointSet};
use crate::scalar::Scalar;
use crate::split_tree::{NodeId, SplitTree, ROOT};
use crate::wspd::WspdPairList;

/// Chromatic status of a node's point set (independent of pair membership).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorStatus {
    Monochromatic(Color),
    Multichromatic,
}

/// Per-node color flags, representatives, and c-node structure.
///
/// A node is a *c-node* when its point set is monochromatic (color c) and it
/// participates in at least one MWSPD pair; it is *multichromatic* (as a
/// classification) when it participates and carries two colors. A c-root has
/// no proper c-node ancestor, a c-leaf no c-node strictly below it.
#[derive(Clone, Debug)]
pub struct NodeClassification {
    pub status: Vec<ColorStatus>,
    pub in_mwspd: Vec<bool>,
    pub is_cnode: Vec<bool>,
    pub is_croot: Vec<bool>,
    pub is_cleaf: Vec<bool>,
    /// Nearest proper ancestor that is a c-node (necessarily the same color).
    pub cnode_parent: Vec<Option<NodeId>>,
    /// The point at the leftmost leaf of each subtree.
    pub rep: Vec<usize>,
    /// First point in leaf order whose color differs from `rep`'s color.
    pub rep_prime: Vec<Option<usize>>,
}

impl NodeClassification {
    pub fn is_multichromatic(&self, u: NodeId) -> bool {
        self.in_mwspd[u] && self.status[u] == ColorStatus::Multichromatic
    }

    pub fn mono_color(&self, u: NodeId) -> Option<Color> {
        match self.status[u] {
            ColorStatus::Monochromatic(c) => Some(c),
            ColorStatus::Multichromatic => None,
        }
    }

    /// A representative of `S_u` whose color is not `c`, when one exists.
    pub fn rep_noncolor<F: Scalar>(
        &self,
        set: &ColoredPointSet<F>,
        u: NodeId,
        c: Color,
    ) -> Option<usize> {
        if set.color(self.rep[u]) != c {
            Some(self.rep[u])
        } else {
            self.rep_prime[u]
        }
    }
}

/// Monochromatic color per node (`None` = at least two colors), bottom-up.
pub fn node_colors<F: Scalar>(
    tree: &SplitTree<F>,
    set: &ColoredPointSet<F>,
) -> Vec<Option<Color>> {
    let mut colors: Vec<Option<Color>> = vec![None; tree.node_count()];
    // Node ids are pre-order, so children come after their parent.
    for id in (0..tree.node_count()).rev() {
        let node = tree.node(id);
        colors[id] = match node.children {
            None => Some(set.color(tree.leftmost_point(id))),
            Some((l, r)) => match (colors[l], colors[r]) {
                (Some(a), Some(b)) if a == b => Some(a),
                _ => None,
            },
        };
    }
    colors
}

/// Drop the WSPD pairs whose union is monochromatic; those approximate no
/// edge of the k-partite graph.
pub fn compute_mwspd<F: Scalar>(
    wspd: &WspdPairList<F>,
    tree: &SplitTree<F>,
    set: &ColoredPointSet<F>,
) -> WspdPairList<F> {
    let colors = node_colors(tree, set);
    let pairs = wspd
        .pairs
        .iter()
        .filter(|p| match (colors[p.u], colors[p.v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
        .copied()
        .collect();
    WspdPairList {
        pairs,
        s: wspd.s,
        variant: wspd.variant,
    }
}

/// Index MWSPD pairs by incident node: `by_node[u]` lists `(partner, dist)`.
pub(crate) fn pairs_by_node<F: Scalar>(
    node_count: usize,
    mwspd: &WspdPairList<F>,
) -> Vec<Vec<(NodeId, F)>> {
    let mut by_node: Vec<Vec<(NodeId, F)>> = vec![Vec::new(); node_count];
    for pair in &mwspd.pairs {
        by_node[pair.u].push((pair.v, pair.dist));
        by_node[pair.v].push((pair.u, pair.dist));
    }
    by_node
}

pub fn classify_nodes<F: Scalar>(
    tree: &SplitTree<F>,
    mwspd: &WspdPairList<F>,
    set: &ColoredPointSet<F>,
) -> NodeClassification {
    let nc = tree.node_count();
    let colors = node_colors(tree, set);
    let status: Vec<ColorStatus> = colors
        .iter()
        .map(|c| match c {
            Some(c) => ColorStatus::Monochromatic(*c),
            None => ColorStatus::Multichromatic,
        })
        .collect();

    let mut in_mwspd = vec![false; nc];
    for pair in &mwspd.pairs {
        in_mwspd[pair.u] = true;
        in_mwspd[pair.v] = true;
    }

    let is_cnode: Vec<bool> = (0..nc)
        .map(|u| in_mwspd[u] && colors[u].is_some())
        .collect();

    // rep: leftmost leaf point. rep': first leaf-order point of another color,
    // assembled bottom-up from the children's answers.
    let mut rep = vec![0usize; nc];
    let mut rep_prime: Vec<Option<usize>> = vec![None; nc];
    for id in (0..nc).rev() {
        rep[id] = tree.leftmost_point(id);
        if let Some((l, r)) = tree.node(id).children {
            rep_prime[id] = match colors[l] {
                None => rep_prime[l],
                Some(c0) => {
                    if set.color(rep[r]) != c0 {
                        Some(rep[r])
                    } else {
                        rep_prime[r]
                    }
                }
            };
        }
    }

    // c-roots and c-node parents via one root-to-leaf sweep; c-leaves via the
    // children's "subtree contains a c-node" flags.
    let mut is_croot = vec![false; nc];
    let mut cnode_parent: Vec<Option<NodeId>> = vec![None; nc];
    let mut stack: Vec<(NodeId, Option<NodeId>)> = vec![(ROOT, None)];
    while let Some((id, nearest)) = stack.pop() {
        if is_cnode[id] {
            cnode_parent[id] = nearest;
            is_croot[id] = nearest.is_none();
        }
        let next = if is_cnode[id] { Some(id) } else { nearest };
        if let Some((l, r)) = tree.node(id).children {
            stack.push((l, next));
            stack.push((r, next));
        }
    }

    let mut subtree_has_cnode = vec![false; nc];
    for id in (0..nc).rev() {
        if let Some((l, r)) = tree.node(id).children {
            subtree_has_cnode[id] =
                subtree_has_cnode[l] || subtree_has_cnode[r] || is_cnode[l] || is_cnode[r];
        }
    }
    let is_cleaf: Vec<bool> = (0..nc)
        .map(|u| is_cnode[u] && !subtree_has_cnode[u])
        .collect();

    NodeClassification {
        status,
        in_mwspd,
        is_cnode,
        is_croot,
        is_cleaf,
        cnode_parent,
        rep,
        rep_prime,
    }
}

/// Per c-node `u`: the partner set and distance of the minimum-distance MWSPD
/// pair anchored at a c-node on the path from `u` to the root.
#[derive(Clone, Debug)]
pub struct ClosestPairAssignment<F> {
    pub target: Vec<Option<NodeId>>,
    pub dist: Vec<Option<F>>,
}

impl<F: Scalar> ClosestPairAssignment<F> {
    pub fn target_of(&self, u: NodeId) -> NodeId {
        self.target[u].expect("every c-node has a closest pair")
    }
}

/// Root-to-leaf propagation of the best `(dist, partner)` seen so far.
/// Tie on distance prefers the deeper anchor, then the smaller partner id.
pub fn compute_cl<F: Scalar>(
    tree: &SplitTree<F>,
    mwspd: &WspdPairList<F>,
    cls: &NodeClassification,
) -> ClosestPairAssignment<F> {
    let nc = tree.node_count();
    let by_node = pairs_by_node(nc, mwspd);
    let mut target: Vec<Option<NodeId>> = vec![None; nc];
    let mut dist: Vec<Option<F>> = vec![None; nc];

    let mut stack: Vec<(NodeId, Option<(F, NodeId)>)> = vec![(ROOT, None)];
    while let Some((id, inherited)) = stack.pop() {
        let mut best = inherited;
        if cls.is_cnode[id] {
            let own = by_node[id]
                .iter()
                .copied()
                .min_by(|a, b| {
                    a.1.partial_cmp(&b.1)
                        .expect("finite distances")
                        .then(a.0.cmp(&b.0))
                })
                .map(|(partner, d)| (d, partner))
                .expect("a c-node participates in at least one MWSPD pair");
            best = match best {
                Some((bd, _)) if own.0 > bd => best,
                _ => Some(own),
            };
            let (d, w) = best.expect("candidate set is non-empty at a c-node");
            target[id] = Some(w);
            dist[id] = Some(d);
        }
        if let Some((l, r)) = tree.node(id).children {
            stack.push((l, best));
            stack.push((r, best));
        }
    }

    ClosestPairAssignment { target, dist }
}
