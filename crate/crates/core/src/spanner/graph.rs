//! The spanner graph: an undirected weighted edge set over the point indices.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::ColoredPointSet;
use crate::scalar::Scalar;

/// Which algorithm line family contributed an edge. One edge may carry
/// several tags when different families produce the same endpoint pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum EdgeFamily {
    /// Star from every point of a c-leaf to a representative of its cl-set.
    LeafStar,
    /// c-node representative to a representative of its cl-set.
    CNodeClosest,
    /// Pair edge between representatives of an MWSPD pair.
    PairRep,
    /// Chain shortcut from a c-node up to an ancestor's cl representative.
    ChainUp,
    /// Reverse chain shortcut (improved algorithm only).
    ChainDown,
    /// Edge for a pair whose both sides are multichromatic.
    MultiMulti,
}

impl EdgeFamily {
    pub const ALL: [EdgeFamily; 6] = [
        EdgeFamily::LeafStar,
        EdgeFamily::CNodeClosest,
        EdgeFamily::PairRep,
        EdgeFamily::ChainUp,
        EdgeFamily::ChainDown,
        EdgeFamily::MultiMulti,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            EdgeFamily::LeafStar => "leaf_star",
            EdgeFamily::CNodeClosest => "cnode_closest",
            EdgeFamily::PairRep => "pair_rep",
            EdgeFamily::ChainUp => "chain_up",
            EdgeFamily::ChainDown => "chain_down",
            EdgeFamily::MultiMulti => "multi_multi",
        }
    }

    fn bit(self) -> u8 {
        match self {
            EdgeFamily::LeafStar => 1,
            EdgeFamily::CNodeClosest => 2,
            EdgeFamily::PairRep => 4,
            EdgeFamily::ChainUp => 8,
            EdgeFamily::ChainDown => 16,
            EdgeFamily::MultiMulti => 32,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct EdgeData<F> {
    pub weight: F,
    families: u8,
}

impl<F> EdgeData<F> {
    pub fn families(&self) -> impl Iterator<Item = EdgeFamily> + '_ {
        EdgeFamily::ALL
            .into_iter()
            .filter(move |f| self.families & f.bit() != 0)
    }

    pub fn has_family(&self, f: EdgeFamily) -> bool {
        self.families & f.bit() != 0
    }

    /// Comma-joined provenance tags in a fixed order.
    pub fn tags(&self) -> String {
        let tags: Vec<&str> = self.families().map(EdgeFamily::tag).collect();
        if tags.is_empty() {
            "loaded".to_string()
        } else {
            tags.join(",")
        }
    }
}

/// Undirected weighted graph on `0..n`, kept in canonical `(min, max)` order
/// so identical inputs always serialize identically.
#[derive(Clone, Debug)]
pub struct SpannerGraph<F> {
    n: usize,
    edges: BTreeMap<(usize, usize), EdgeData<F>>,
}

impl<F: Scalar> SpannerGraph<F> {
    pub fn new(n: usize) -> Self {
        SpannerGraph {
            n,
            edges: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &EdgeData<F>)> {
        self.edges.iter().map(|(&(i, j), data)| (i, j, data))
    }

    pub fn contains_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains_key(&(i.min(j), i.max(j)))
    }

    /// Construction-time insertion: endpoints must differ in color. Every
    /// algorithm family is supposed to guarantee this; verify it here rather
    /// than assume it.
    pub(crate) fn add_colored_edge(
        &mut self,
        set: &ColoredPointSet<F>,
        i: usize,
        j: usize,
        family: EdgeFamily,
    ) {
        assert_ne!(i, j, "self-loop requested by {family:?}");
        assert_ne!(
            set.color(i),
            set.color(j),
            "monochromatic edge ({i},{j}) requested by {family:?}"
        );
        let (a, b) = (i.min(j), i.max(j));
        let entry = self.edges.entry((a, b)).or_insert(EdgeData {
            weight: set.distance(a, b),
            families: 0,
        });
        entry.families |= family.bit();
    }

    /// Insertion for graphs loaded from files or built by tests; only bounds
    /// and self-loops are checked.
    pub fn add_edge(&mut self, i: usize, j: usize, weight: F) -> Result<()> {
        if i >= self.n {
            return Err(Error::EdgeOutOfRange { index: i, n: self.n });
        }
        if j >= self.n {
            return Err(Error::EdgeOutOfRange { index: j, n: self.n });
        }
        if i == j {
            return Err(Error::InvalidParameter(format!("self-loop at {i}")));
        }
        self.edges
            .entry((i.min(j), i.max(j)))
            .or_insert(EdgeData {
                weight,
                families: 0,
            });
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        self.edges.remove(&(i.min(j), i.max(j))).is_some()
    }

    /// Build from endpoint pairs, weights recomputed from the point set.
    pub fn from_pairs(set: &ColoredPointSet<F>, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut g = SpannerGraph::new(set.n());
        for &(i, j) in pairs {
            let w = if i < set.n() && j < set.n() {
                set.distance(i, j)
            } else {
                F::zero()
            };
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    /// The complete k-partite graph itself: every bichromatic pair.
    pub fn complete_kpartite(set: &ColoredPointSet<F>) -> Self {
        let mut g = SpannerGraph::new(set.n());
        for i in 0..set.n() {
            for j in (i + 1)..set.n() {
                if set.color(i) != set.color(j) {
                    g.add_colored_edge(set, i, j, EdgeFamily::PairRep);
                }
            }
        }
        g
    }

    pub fn adjacency(&self) -> Vec<Vec<(usize, F)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (&(i, j), data) in &self.edges {
            adj[i].push((j, data.weight));
            adj[j].push((i, data.weight));
        }
        adj
    }

    /// Distinct edges carrying each family tag.
    pub fn family_counts(&self) -> Vec<(EdgeFamily, usize)> {
        EdgeFamily::ALL
            .into_iter()
            .map(|f| (f, self.edges.values().filter(|e| e.has_family(f)).count()))
            .collect()
    }

    /// First edge joining two same-colored points, if any.
    pub fn find_monochromatic_edge(&self, set: &ColoredPointSet<F>) -> Option<(usize, usize)> {
        self.edges
            .keys()
            .find(|&&(i, j)| set.color(i) == set.color(j))
            .copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_color_set() -> ColoredPointSet<f64> {
        ColoredPointSet::new(
            1,
            vec![(1, vec![0.0]), (2, vec![1.0]), (1, vec![2.0])],
        )
        .unwrap()
    }

    #[test]
    fn edges_deduplicate_and_merge_provenance() {
        let set = two_color_set();
        let mut g = SpannerGraph::new(3);
        g.add_colored_edge(&set, 0, 1, EdgeFamily::LeafStar);
        g.add_colored_edge(&set, 1, 0, EdgeFamily::PairRep);
        assert_eq!(g.edge_count(), 1);
        let (_, _, data) = g.edges().next().unwrap();
        assert!(data.has_family(EdgeFamily::LeafStar));
        assert!(data.has_family(EdgeFamily::PairRep));
        assert_eq!(data.tags(), "leaf_star,pair_rep");
        assert_eq!(data.weight, 1.0);
    }

    #[test]
    #[should_panic(expected = "monochromatic edge")]
    fn monochromatic_insertion_panics() {
        let set = two_color_set();
        let mut g = SpannerGraph::new(3);
        g.add_colored_edge(&set, 0, 2, EdgeFamily::PairRep);
    }

    #[test]
    fn loaded_edges_are_bounds_checked() {
        let mut g: SpannerGraph<f64> = SpannerGraph::new(2);
        assert!(g.add_edge(0, 1, 1.0).is_ok());
        assert!(g.add_edge(0, 2, 1.0).is_err());
        assert!(g.add_edge(0, 0, 1.0).is_err());
    }

    #[test]
    fn complete_kpartite_has_only_cross_edges() {
        let set = two_color_set();
        let k = SpannerGraph::complete_kpartite(&set);
        assert_eq!(k.edge_count(), 2);
        assert!(k.find_monochromatic_edge(&set).is_none());
    }
}
