//! Well-separated pair decompositions over the split-tree.
//!
//! Two point sets are well separated w.r.t. a separation constant `s` when two
//! equal-radius balls enclosing their bounding boxes can be kept `s` radii
//! apart. We realize the balls concretely: both take radius rho = half the
//! Euclidean diagonal of the larger of the two boxes, centered at the box
//! centers. A pair list computed here covers every ordered point pair exactly
//! once; the singleton variant re-expands each pair so one side is always a
//! single point, trading pair count (O(n log n)) for a shorter detour in the
//! spanner built on top of it.

use crate::geometry::BoundingBox;
use crate::scalar::Scalar;
use crate::split_tree::{NodeId, SplitTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WspdVariant {
    Standard,
    Singleton,
}

/// One unordered pair `{S_u, S_v}` of split-tree node sets.
#[derive(Clone, Copy, Debug)]
pub struct WspdPair<F> {
    pub u: NodeId,
    pub v: NodeId,
    /// Distance between the centers of the two bounding boxes.
    pub dist: F,
    /// For singleton-variant pairs: the standard-WSPD node each side was
    /// expanded from. The originating box is the separation witness.
    pub origin_u: Option<NodeId>,
    pub origin_v: Option<NodeId>,
}

impl<F> WspdPair<F> {
    pub fn other(&self, node: NodeId) -> NodeId {
        if node == self.u {
            self.v
        } else {
            debug_assert_eq!(node, self.v);
            self.u
        }
    }
}

#[derive(Clone, Debug)]
pub struct WspdPairList<F> {
    pub pairs: Vec<WspdPair<F>>,
    pub s: F,
    pub variant: WspdVariant,
}

impl<F: Scalar> WspdPairList<F> {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Separation witness for one pair: the originating boxes for singleton
    /// pairs, the listed boxes otherwise.
    pub fn pair_is_well_separated(&self, tree: &SplitTree<F>, pair: &WspdPair<F>) -> bool {
        let bu = &tree.node(pair.origin_u.unwrap_or(pair.u)).bbox;
        let bv = &tree.node(pair.origin_v.unwrap_or(pair.v)).bbox;
        is_well_separated(bu, bv, self.s)
    }
}

/// Definition check with rho = half-diagonal of the larger box used as the
/// common ball radius: the ball gap `center_distance - 2*rho` must be at
/// least `s * rho`.
pub fn is_well_separated<F: Scalar>(a: &BoundingBox<F>, b: &BoundingBox<F>, s: F) -> bool {
    let rho = a.half_diagonal().max(b.half_diagonal());
    let centers = a.center_distance_unchecked(b);
    centers - F::two() * rho >= s * rho
}

/// Standard pair-finding: split the node with the larger `l_max` until the
/// two sides separate. Ties go to the larger point count, then the smaller
/// node id. Output is canonically sorted by `(min id, max id)`.
pub fn compute_wspd<F: Scalar>(tree: &SplitTree<F>, s: F) -> WspdPairList<F> {
    let mut pairs = Vec::new();
    for id in 0..tree.node_count() {
        if let Some((l, r)) = tree.node(id).children {
            find_pairs(tree, s, l, r, &mut pairs);
        }
    }
    canonicalize(&mut pairs);
    WspdPairList {
        pairs,
        s,
        variant: WspdVariant::Standard,
    }
}

fn find_pairs<F: Scalar>(
    tree: &SplitTree<F>,
    s: F,
    u0: NodeId,
    v0: NodeId,
    out: &mut Vec<WspdPair<F>>,
) {
    let mut stack = vec![(u0, v0)];
    while let Some((u, v)) = stack.pop() {
        let bu = &tree.node(u).bbox;
        let bv = &tree.node(v).bbox;
        if is_well_separated(bu, bv, s) {
            out.push(WspdPair {
                u,
                v,
                dist: bu.center_distance_unchecked(bv),
                origin_u: None,
                origin_v: None,
            });
            continue;
        }
        let split_u = match bu.l_max().partial_cmp(&bv.l_max()).expect("finite") {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => match tree.node(u).len().cmp(&tree.node(v).len()) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => u < v,
            },
        };
        let (l, r) = if split_u {
            tree.node(u)
                .children
                .expect("split target has positive extent, hence is internal")
        } else {
            tree.node(v).children.expect("split target is internal")
        };
        if split_u {
            stack.push((l, v));
            stack.push((r, v));
        } else {
            stack.push((u, l));
            stack.push((u, r));
        }
    }
}

/// Variant used by the O(n log n)-edge construction: each standard pair
/// `{X, Y}` with `|X| <= |Y|` (ties: X is the smaller node id) becomes the
/// `|X|` pairs `{{x}, Y}`, anchored at the leaf of each `x`.
pub fn compute_singleton_wspd<F: Scalar>(tree: &SplitTree<F>, s: F) -> WspdPairList<F> {
    let standard = compute_wspd(tree, s);
    let mut pairs = Vec::new();
    for pair in &standard.pairs {
        let (expand, keep) = {
            let (nu, nv) = (tree.node(pair.u).len(), tree.node(pair.v).len());
            if nu < nv || (nu == nv && pair.u < pair.v) {
                (pair.u, pair.v)
            } else {
                (pair.v, pair.u)
            }
        };
        let keep_box = &tree.node(keep).bbox;
        for &x in tree.points(expand) {
            let leaf = tree.leaf_of(x);
            pairs.push(WspdPair {
                u: leaf,
                v: keep,
                dist: tree.node(leaf).bbox.center_distance_unchecked(keep_box),
                origin_u: Some(expand),
                origin_v: None,
            });
        }
    }
    canonicalize(&mut pairs);
    WspdPairList {
        pairs,
        s,
        variant: WspdVariant::Singleton,
    }
}

fn canonicalize<F: Scalar>(pairs: &mut [WspdPair<F>]) {
    for p in pairs.iter_mut() {
        if p.u > p.v {
            std::mem::swap(&mut p.u, &mut p.v);
            std::mem::swap(&mut p.origin_u, &mut p.origin_v);
        }
    }
    pairs.sort_by_key(|p| (p.u, p.v));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoundingBox, ColoredPointSet};

    fn bbox(lo: &[f64], hi: &[f64]) -> BoundingBox<f64> {
        BoundingBox {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
        }
    }

    fn line_set(xs: &[f64]) -> ColoredPointSet<f64> {
        ColoredPointSet::new(2, xs.iter().map(|&x| (1, vec![x, 0.0])).collect()).unwrap()
    }

    #[test]
    fn point_boxes_are_always_well_separated() {
        let a = bbox(&[0.0, 0.0], &[0.0, 0.0]);
        let b = bbox(&[1.0, 0.0], &[1.0, 0.0]);
        assert!(is_well_separated(&a, &b, 2.0));
        assert!(is_well_separated(&a, &b, 1e6));
    }

    #[test]
    fn unit_boxes_separation_threshold() {
        let a = bbox(&[0.0, 0.0], &[1.0, 1.0]);
        let b = bbox(&[9.0, 9.0], &[10.0, 10.0]);
        // rho = sqrt(2)/2, centers 9*sqrt(2) apart: gap ~ 11.3137 vs s*rho.
        assert!(is_well_separated(&a, &b, 15.0));
        assert!(!is_well_separated(&a, &b, 17.0));
    }

    #[test]
    fn two_points_give_exactly_one_pair() {
        let s = line_set(&[0.0, 1.0]);
        let tree = SplitTree::build(&s).unwrap();
        let w = compute_wspd(&tree, 2.0);
        assert_eq!(w.len(), 1);
        let p = &w.pairs[0];
        assert!(tree.node(p.u).is_leaf() && tree.node(p.v).is_leaf());
    }

    #[test]
    fn three_point_hand_run() {
        // {(0,0),(1,0)} vs {(8,0)} separates at s=2, and the two near points
        // pair up as leaves: exactly 2 pairs.
        let s = line_set(&[0.0, 1.0, 8.0]);
        let tree = SplitTree::build(&s).unwrap();
        let w = compute_wspd(&tree, 2.0);
        assert_eq!(w.len(), 2);
        let sizes: Vec<(usize, usize)> = w
            .pairs
            .iter()
            .map(|p| (tree.node(p.u).len(), tree.node(p.v).len()))
            .collect();
        assert!(sizes.contains(&(2, 1)) || sizes.contains(&(1, 2)));
        assert!(sizes.contains(&(1, 1)));
    }

    fn coverage_counts(tree: &SplitTree<f64>, list: &WspdPairList<f64>, n: usize) -> Vec<u32> {
        let mut counts = vec![0u32; n * n];
        for pair in &list.pairs {
            for &p in tree.points(pair.u) {
                for &q in tree.points(pair.v) {
                    counts[p * n + q] += 1;
                    counts[q * n + p] += 1;
                }
            }
        }
        counts
    }

    fn pseudo_random_set(n: usize, d: usize, salt: u64) -> ColoredPointSet<f64> {
        let mut state = salt.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        let pts = (0..n)
            .map(|_| (1, (0..d).map(|_| next() * 100.0).collect::<Vec<f64>>()))
            .collect();
        ColoredPointSet::new(d, pts).unwrap()
    }

    #[test]
    fn every_ordered_pair_covered_exactly_once() {
        for (n, d, s) in [(40usize, 2usize, 2.0f64), (25, 3, 8.0), (60, 1, 32.0)] {
            let set = pseudo_random_set(n, d, (n * d) as u64);
            let tree = SplitTree::build(&set).unwrap();
            let w = compute_wspd(&tree, s);
            let counts = coverage_counts(&tree, &w, n);
            for p in 0..n {
                for q in 0..n {
                    let expect = if p == q { 0 } else { 1 };
                    assert_eq!(counts[p * n + q], expect, "pair ({p},{q}) n={n} d={d} s={s}");
                }
            }
            for pair in &w.pairs {
                assert!(w.pair_is_well_separated(&tree, pair));
            }
        }
    }

    #[test]
    fn singleton_variant_covers_and_has_singleton_sides() {
        let set = pseudo_random_set(35, 2, 7);
        let tree = SplitTree::build(&set).unwrap();
        let w = compute_singleton_wspd(&tree, 2.0);
        let counts = coverage_counts(&tree, &w, 35);
        for p in 0..35 {
            for q in 0..35 {
                let expect = if p == q { 0 } else { 1 };
                assert_eq!(counts[p * 35 + q], expect);
            }
        }
        for pair in &w.pairs {
            assert!(tree.node(pair.u).is_leaf() || tree.node(pair.v).is_leaf());
            assert!(w.pair_is_well_separated(&tree, pair));
        }
    }

    #[test]
    fn singleton_expansion_multiplies_by_the_smaller_side() {
        let set = pseudo_random_set(50, 2, 3);
        let tree = SplitTree::build(&set).unwrap();
        let std = compute_wspd(&tree, 2.0);
        let single = compute_singleton_wspd(&tree, 2.0);
        let expect: usize = std
            .pairs
            .iter()
            .map(|p| tree.node(p.u).len().min(tree.node(p.v).len()))
            .sum();
        assert_eq!(single.len(), expect);
    }

    #[test]
    fn standard_pair_count_stays_linear_across_doublings() {
        // The per-point pair count approaches a constant (~12 at s=2, d=2);
        // a quadratic regression would blow far past this cap by n=4096.
        for n in [64usize, 256, 1024, 4096] {
            let set = pseudo_random_set(n, 2, 5);
            let tree = SplitTree::build(&set).unwrap();
            let w = compute_wspd(&tree, 2.0);
            let ratio = w.len() as f64 / n as f64;
            assert!(ratio < 16.0, "pairs/n = {ratio} at n={n}");
        }
    }

    #[test]
    fn singleton_pair_count_stays_linearithmic_across_doublings() {
        for n in [64usize, 256, 1024, 4096] {
            let set = pseudo_random_set(n, 2, 5);
            let tree = SplitTree::build(&set).unwrap();
            let w = compute_singleton_wspd(&tree, 2.0);
            let ratio = w.len() as f64 / (n as f64 * (n as f64).log2());
            assert!(ratio < 8.0, "pairs/(n log n) = {ratio} at n={n}");
        }
    }

    #[test]
    fn pair_list_is_deterministic_and_sorted() {
        let set = pseudo_random_set(64, 2, 11);
        let tree = SplitTree::build(&set).unwrap();
        let a = compute_wspd(&tree, 8.0);
        let b = compute_wspd(&tree, 8.0);
        let key = |l: &WspdPairList<f64>| l.pairs.iter().map(|p| (p.u, p.v)).collect::<Vec<_>>();
        assert_eq!(key(&a), key(&b));
        let mut sorted = key(&a);
        sorted.sort();
        assert_eq!(key(&a), sorted);
        assert!(sorted.windows(2).all(|w| w[0] != w[1]), "no duplicate pairs");
    }

    #[test]
    fn lemma_small_diameter_versus_cross_distance_holds_on_samples() {
        // Within one side, diameters stay below (2/s) of any cross distance;
        // across sides, all distances agree within a (1+4/s) factor.
        for s in [2.0f64, 8.0, 32.0] {
            let set = pseudo_random_set(45, 2, 19);
            let tree = SplitTree::build(&set).unwrap();
            let w = compute_wspd(&tree, s);
            for pair in &w.pairs {
                let xs = tree.points(pair.u);
                let ys = tree.points(pair.v);
                let diam = |pts: &[usize]| {
                    let mut m = 0.0f64;
                    for (i, &a) in pts.iter().enumerate() {
                        for &b in &pts[i + 1..] {
                            m = m.max(set.distance(a, b));
                        }
                    }
                    m
                };
                let mut min_cross = f64::INFINITY;
                let mut max_cross = 0.0f64;
                for &p in xs {
                    for &q in ys {
                        let d = set.distance(p, q);
                        min_cross = min_cross.min(d);
                        max_cross = max_cross.max(d);
                    }
                }
                let slack = 1.0 + 1e-9;
                assert!(diam(xs) <= (2.0 / s) * min_cross * slack);
                assert!(diam(ys) <= (2.0 / s) * min_cross * slack);
                assert!(max_cross <= (1.0 + 4.0 / s) * min_cross * slack);
            }
        }
    }
}
