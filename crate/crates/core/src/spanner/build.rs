//! The three spanner constructions.
//!
//! All of them walk the c-nodes of the MWSPD classification and add, per
//! c-node `u'` of color `c`:
//!
//!   * a star from every point of `u'` to a non-`c` representative of
//!     `cl(S_u')` when `u'` is a c-leaf,
//!   * the single edge `rep(S_u')` to a non-`c` representative of `cl(S_u')`,
//!   * one edge per MWSPD pair `{S_u', S_v'}` between `rep(S_u')` and a
//!     non-`c` representative of `S_v'`,
//!   * chain shortcuts between `u'` and its c-node ancestors: one level up
//!     (first algorithm) or every ancestor within `zeta` c-levels, in both
//!     directions (improved algorithm),
//!
//! plus one representative edge per MWSPD pair whose two sides are both
//! multichromatic. The third construction is the improved algorithm run over
//! the singleton WSPD variant.

use crate::error::Result;
use crate::geometry::ColoredPointSet;
use crate::scalar::Scalar;
use crate::spanner::classify::{classify_nodes, compute_cl, compute_mwspd, pairs_by_node};
use crate::spanner::graph::{EdgeFamily, SpannerGraph};
use crate::spanner::params::{Algorithm, SpannerParams};
use crate::split_tree::SplitTree;
use crate::wspd::{compute_singleton_wspd, compute_wspd, WspdVariant};

/// A built spanner together with the decomposition sizes a report wants.
#[derive(Clone, Debug)]
pub struct SpannerBuild<F> {
    pub graph: SpannerGraph<F>,
    pub wspd_pairs: usize,
    pub mwspd_pairs: usize,
}

/// Constant-stretch construction: chain edges reach one c-level up, forward
/// direction only.
pub fn build_spanner_alg1<F: Scalar>(
    set: &ColoredPointSet<F>,
    sep: F,
) -> Result<SpannerGraph<F>> {
    Ok(build_with(set, sep, WspdVariant::Standard, 1, false)?.graph)
}

/// (5+eps) construction: chain edges reach `zeta` c-levels up, both
/// directions.
pub fn build_spanner_alg2<F: Scalar>(
    set: &ColoredPointSet<F>,
    params: &SpannerParams,
) -> Result<SpannerGraph<F>> {
    let s = F::from_f64_lossy(params.s);
    Ok(build_with(set, s, WspdVariant::Standard, params.zeta as usize, true)?.graph)
}

/// (3+eps) construction: the improved algorithm over the singleton WSPD.
pub fn build_spanner_alg3<F: Scalar>(
    set: &ColoredPointSet<F>,
    params: &SpannerParams,
) -> Result<SpannerGraph<F>> {
    let s = F::from_f64_lossy(params.s);
    Ok(build_with(set, s, WspdVariant::Singleton, params.zeta as usize, true)?.graph)
}

/// Entry point that also reports decomposition sizes.
pub fn build_spanner_detailed<F: Scalar>(
    set: &ColoredPointSet<F>,
    alg: Algorithm,
    params: &SpannerParams,
) -> Result<SpannerBuild<F>> {
    let s = F::from_f64_lossy(params.s);
    match alg {
        Algorithm::Alg1 => build_with(set, s, WspdVariant::Standard, 1, false),
        Algorithm::Alg2 => build_with(set, s, WspdVariant::Standard, params.zeta as usize, true),
        Algorithm::Alg3 => build_with(set, s, WspdVariant::Singleton, params.zeta as usize, true),
    }
}

pub(crate) fn build_with<F: Scalar>(
    set: &ColoredPointSet<F>,
    s: F,
    variant: WspdVariant,
    chain_levels: usize,
    chain_reverse: bool,
) -> Result<SpannerBuild<F>> {
    assert!(chain_levels >= 1);
    let tree = SplitTree::build(set)?;
    let wspd = match variant {
        WspdVariant::Standard => compute_wspd(&tree, s),
        WspdVariant::Singleton => compute_singleton_wspd(&tree, s),
    };
    let mwspd = compute_mwspd(&wspd, &tree, set);
    let cls = classify_nodes(&tree, &mwspd, set);
    let cl = compute_cl(&tree, &mwspd, &cls);
    let by_node = pairs_by_node(tree.node_count(), &mwspd);

    let mut graph = SpannerGraph::new(set.n());

    for u in 0..tree.node_count() {
        if !cls.is_cnode[u] {
            continue;
        }
        let c = cls.mono_color(u).expect("c-nodes are monochromatic");
        let cl_u = cl.target_of(u);
        let rep_cl_u = cls
            .rep_noncolor(set, cl_u, c)
            .expect("cl target of a c-node contains a point of another color");

        if cls.is_cleaf[u] {
            for &p in tree.points(u) {
                graph.add_colored_edge(set, p, rep_cl_u, EdgeFamily::LeafStar);
            }
        }

        graph.add_colored_edge(set, cls.rep[u], rep_cl_u, EdgeFamily::CNodeClosest);

        for &(partner, _) in &by_node[u] {
            let rp = cls
                .rep_noncolor(set, partner, c)
                .expect("an MWSPD partner of a c-node contains a point of another color");
            graph.add_colored_edge(set, cls.rep[u], rp, EdgeFamily::PairRep);
        }

        let mut ancestor = cls.cnode_parent[u];
        let mut level = 1;
        while let Some(a) = ancestor {
            if level > chain_levels {
                break;
            }
            let cl_a = cl.target_of(a);
            let rep_cl_a = cls
                .rep_noncolor(set, cl_a, c)
                .expect("cl target of a c-node contains a point of another color");
            graph.add_colored_edge(set, cls.rep[u], rep_cl_a, EdgeFamily::ChainUp);
            if chain_reverse {
                graph.add_colored_edge(set, rep_cl_u, cls.rep[a], EdgeFamily::ChainDown);
            }
            ancestor = cls.cnode_parent[a];
            level += 1;
        }
    }

    for pair in &mwspd.pairs {
        if cls.is_multichromatic(pair.u) && cls.is_multichromatic(pair.v) {
            let (ru, rv) = (cls.rep[pair.u], cls.rep[pair.v]);
            if set.color(ru) != set.color(rv) {
                graph.add_colored_edge(set, ru, rv, EdgeFamily::MultiMulti);
            } else {
                let rpv = cls.rep_prime[pair.v].expect("multichromatic node carries rep'");
                graph.add_colored_edge(set, ru, rpv, EdgeFamily::MultiMulti);
            }
        }
    }

    Ok(SpannerBuild {
        graph,
        wspd_pairs: wspd.len(),
        mwspd_pairs: mwspd.len(),
    })
}
