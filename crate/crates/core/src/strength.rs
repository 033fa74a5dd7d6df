//! Global minimum cuts (Stoer-Wagner maximum-adjacency search) and exact
//! edge strengths.
//!
//! The strength of an edge is the largest `k` such that some vertex-induced
//! subgraph containing the edge is k-edge-connected. Strengths are computed
//! by recursive minimum-cut splitting: the edges crossing a component's
//! minimum cut have strength equal to the cut value (or the largest ancestor
//! cut value, whichever is bigger), and both sides are processed recursively.
//! A component whose vertices all share the same (weighted) degree equal to
//! its minimum cut is uniform: every edge inside gets that value and the
//! recursion can stop, which is what makes regular inputs cheap.
//!
//! Brute-force counterparts enumerate vertex subsets and bipartitions
//! directly so they share no logic with the recursive path.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::AddAssign;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::graph::BipartiteGraph;
use crate::{Error, Rational, Result};

/// Weight scalar usable by the cut machinery: exact ordered addition.
pub trait CutWeight: Clone + Ord + Zero + AddAssign<Self> {}
impl<T: Clone + Ord + Zero + AddAssign<T>> CutWeight for T {}

/// A global minimum cut: its total crossing weight and the vertex ids of one
/// side realizing it (sorted).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCutResult<W> {
    pub value: W,
    pub side: Vec<usize>,
}

fn check_edges<W>(n: usize, edges: &[(usize, usize, W)]) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "minimum cut needs at least 2 vertices, got {n}"
        )));
    }
    for (i, (u, v, _)) in edges.iter().enumerate() {
        if *u >= n || *v >= n {
            return Err(Error::InvalidInput(format!(
                "edge {i} = ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("edge {i} is a self-loop at {u}")));
        }
    }
    Ok(())
}

/// Connected components over edges of strictly positive weight. Returns one
/// sorted vertex list per component, ordered by smallest member.
fn components<W: CutWeight>(n: usize, edges: &[(usize, usize, W)]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for (u, v, w) in edges {
        if *w > W::zero() {
            adj[*u].push(*v);
            adj[*v].push(*u);
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        comp[start] = id;
        while let Some(u) = stack.pop() {
            members.push(u);
            for &v in &adj[u] {
                if comp[v] == usize::MAX {
                    comp[v] = id;
                    stack.push(v);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Stoer-Wagner on a connected weighted graph given as a dense symmetric
/// matrix. Deterministic: the maximum-adjacency search starts from the
/// lowest-index vertex and breaks key ties toward lower indices. Returns the
/// cut value and one side as indices into the matrix.
fn stoer_wagner<W: CutWeight>(mut w: Vec<Vec<W>>) -> (W, Vec<usize>) {
    let n = w.len();
    debug_assert!(n >= 2);
    let mut active: Vec<bool> = vec![true; n];
    let mut groups: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    let mut best: Option<(W, Vec<usize>)> = None;

    for phase in 0..n - 1 {
        let remaining = n - phase;
        let mut in_a = vec![false; n];
        let mut key: Vec<W> = vec![W::zero(); n];
        let mut prev = usize::MAX;
        let mut last = usize::MAX;
        let mut last_key = W::zero();
        for _ in 0..remaining {
            let mut u = usize::MAX;
            for v in 0..n {
                if active[v] && !in_a[v] && (u == usize::MAX || key[v] > key[u]) {
                    u = v;
                }
            }
            in_a[u] = true;
            prev = last;
            last = u;
            last_key = key[u].clone();
            for v in 0..n {
                if active[v] && !in_a[v] {
                    key[v] += w[u][v].clone();
                }
            }
        }
        let better = match &best {
            None => true,
            Some((value, _)) => last_key < *value,
        };
        if better {
            best = Some((last_key, groups[last].clone()));
        }
        // Merge `last` into `prev`.
        let absorbed = core::mem::take(&mut groups[last]);
        groups[prev].extend(absorbed);
        for v in 0..n {
            if active[v] && v != prev && v != last {
                let add = w[last][v].clone();
                w[prev][v] += add.clone();
                w[v][prev] += add;
            }
        }
        active[last] = false;
    }
    let (value, mut side) = best.expect("at least one phase ran");
    side.sort_unstable();
    (value, side)
}

/// Global minimum cut of an undirected weighted multigraph on `n` vertices.
/// Parallel edges add up; the cut value is 0 exactly when the graph is
/// disconnected (counting only positive-weight edges), in which case the
/// side is one connected component.
pub fn min_cut_general<W: CutWeight>(n: usize, edges: &[(usize, usize, W)]) -> Result<MinCutResult<W>> {
    check_edges(n, edges)?;
    let comps = components(n, edges);
    if comps.len() > 1 {
        return Ok(MinCutResult {
            value: W::zero(),
            side: comps[0].clone(),
        });
    }
    let mut w = vec![vec![W::zero(); n]; n];
    for (u, v, weight) in edges {
        w[*u][*v] += weight.clone();
        w[*v][*u] += weight.clone();
    }
    let (value, side) = stoer_wagner(w);
    Ok(MinCutResult { value, side })
}

/// Minimum cut of a bipartite graph over the unified vertex numbering (left
/// ids first, right vertex `q` as `n_left + q`), counting parallel edges and
/// ignoring weights.
pub fn min_cut(g: &BipartiteGraph) -> Result<MinCutResult<u64>> {
    let edges: Vec<(usize, usize, u64)> = (0..g.num_edges())
        .map(|i| {
            let (u, v) = g.unified_endpoints(i);
            (u, v, 1)
        })
        .collect();
    min_cut_general(g.total_vertices(), &edges)
}

/// Minimum cut of a bipartite graph using its rational edge weights, over
/// the unified vertex numbering.
pub fn min_cut_weighted(g: &BipartiteGraph) -> Result<MinCutResult<Rational>> {
    let edges: Vec<(usize, usize, Rational)> = (0..g.num_edges())
        .map(|i| {
            let (u, v) = g.unified_endpoints(i);
            (u, v, g.edge(i).weight.clone())
        })
        .collect();
    min_cut_general(g.total_vertices(), &edges)
}

/// Core strength recursion over an explicit work stack. `edges` never
/// changes; work items carry vertex subsets plus the largest cut value seen
/// on the path from the root (the floor).
fn strengths_rec<W: CutWeight>(n: usize, edges: &[(usize, usize, W)]) -> Vec<W> {
    let mut strength: Vec<W> = vec![W::zero(); edges.len()];
    let all: Vec<usize> = (0..n).collect();
    let mut work: Vec<(Vec<usize>, W)> = vec![(all, W::zero())];

    while let Some((vertices, floor)) = work.pop() {
        if vertices.len() < 2 {
            continue;
        }
        // Local renumbering for this induced subgraph.
        let mut local = BTreeMap::new();
        for (i, &v) in vertices.iter().enumerate() {
            local.insert(v, i);
        }
        let internal: Vec<(usize, usize, usize)> = edges
            .iter()
            .enumerate()
            .filter_map(|(idx, (u, v, _))| match (local.get(u), local.get(v)) {
                (Some(&lu), Some(&lv)) => Some((idx, lu, lv)),
                _ => None,
            })
            .collect();
        if internal.is_empty() {
            continue;
        }
        let local_edges: Vec<(usize, usize, W)> = internal
            .iter()
            .map(|&(idx, lu, lv)| (lu, lv, edges[idx].2.clone()))
            .collect();

        // Split into positively-connected components; edges between
        // components are separated by a zero cut, so their strength is
        // exactly the floor inherited from above.
        let comps = components(vertices.len(), &local_edges);
        let mut comp_of = vec![usize::MAX; vertices.len()];
        for (ci, comp) in comps.iter().enumerate() {
            for &v in comp {
                comp_of[v] = ci;
            }
        }
        for &(idx, lu, lv) in &internal {
            if comp_of[lu] != comp_of[lv] {
                strength[idx] = floor.clone();
            }
        }

        for comp in &comps {
            if comp.len() < 2 {
                continue;
            }
            let mut sub = BTreeMap::new();
            for (i, &v) in comp.iter().enumerate() {
                sub.insert(v, i);
            }
            let mut matrix = vec![vec![W::zero(); comp.len()]; comp.len()];
            let mut degree: Vec<W> = vec![W::zero(); comp.len()];
            let mut comp_edges: Vec<(usize, usize, usize)> = Vec::new();
            for &(idx, lu, lv) in &internal {
                if let (Some(&su), Some(&sv)) = (sub.get(&lu), sub.get(&lv)) {
                    let weight = edges[idx].2.clone();
                    matrix[su][sv] += weight.clone();
                    matrix[sv][su] += weight.clone();
                    degree[su] += weight.clone();
                    degree[sv] += weight;
                    comp_edges.push((idx, su, sv));
                }
            }

            let (lambda, side) = stoer_wagner(matrix);
            let value = if lambda > floor { lambda.clone() } else { floor.clone() };

            // Uniform component: every vertex has the same weighted degree
            // and the minimum cut meets it, so no induced subgraph can be
            // better connected. All internal edges share the value.
            let uniform = degree.iter().all(|d| *d == degree[0]) && lambda == degree[0];
            if uniform {
                for &(idx, _, _) in &comp_edges {
                    strength[idx] = value.clone();
                }
                continue;
            }

            let mut on_side = vec![false; comp.len()];
            for &v in &side {
                on_side[v] = true;
            }
            for &(idx, su, sv) in &comp_edges {
                if on_side[su] != on_side[sv] {
                    strength[idx] = value.clone();
                }
            }
            let side_global: Vec<usize> = side.iter().map(|&v| vertices[comp[v]]).collect();
            let rest_global: Vec<usize> = comp
                .iter()
                .enumerate()
                .filter(|&(v, _)| !on_side[v])
                .map(|(_, &v)| vertices[v])
                .collect();
            work.push((side_global, value.clone()));
            work.push((rest_global, value));
        }
    }
    strength
}

/// Exact strengths of an unweighted undirected multigraph: for each edge the
/// largest `k` such that a k-edge-connected induced subgraph contains it.
pub fn exact_strengths_general(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u64>> {
    let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
    check_edges(n.max(2), &weighted)?;
    Ok(strengths_rec(n, &weighted))
}

/// Exact strengths of a bipartite graph's edges, ignoring weights (each
/// parallel edge counts 1), over the unified vertex numbering.
pub fn exact_strengths(g: &BipartiteGraph) -> Result<Vec<u64>> {
    let edges: Vec<(usize, usize)> = (0..g.num_edges()).map(|i| g.unified_endpoints(i)).collect();
    exact_strengths_general(g.total_vertices(), &edges)
}

/// Exact strengths of a weighted bipartite graph. Connectivity is measured
/// by total crossing weight; results are exact rationals.
///
/// Internally the weights are rescaled by the least common multiple of their
/// denominators so the recursion can run on integers whenever that fits in
/// 64 bits, falling back to full rational arithmetic otherwise.
pub fn weighted_strengths(g: &BipartiteGraph) -> Result<Vec<Rational>> {
    let edges: Vec<(usize, usize, Rational)> = (0..g.num_edges())
        .map(|i| {
            let (u, v) = g.unified_endpoints(i);
            (u, v, g.edge(i).weight.clone())
        })
        .collect();
    for (i, (_, _, w)) in edges.iter().enumerate() {
        if w.is_negative() {
            return Err(Error::InvalidInput(format!("edge {i} has negative weight")));
        }
    }
    check_edges(g.total_vertices().max(2), &edges)?;

    let mut denom_lcm = BigInt::one();
    for (_, _, w) in &edges {
        denom_lcm = denom_lcm.lcm(w.denom());
    }
    let scaled: Option<Vec<u64>> = edges
        .iter()
        .map(|(_, _, w)| {
            let int = (w * Rational::from_integer(denom_lcm.clone())).to_integer();
            u64::try_from(&int).ok()
        })
        .collect();
    if let Some(scaled) = scaled {
        let total: u128 = scaled.iter().map(|&w| w as u128).sum();
        if total <= u64::MAX as u128 {
            let int_edges: Vec<(usize, usize, u64)> = edges
                .iter()
                .zip(&scaled)
                .map(|((u, v, _), &w)| (*u, *v, w))
                .collect();
            let ints = strengths_rec(g.total_vertices(), &int_edges);
            let lcm_rat = Rational::from_integer(denom_lcm);
            return Ok(ints
                .into_iter()
                .map(|s| Rational::from_integer(BigInt::from(s)) / lcm_rat.clone())
                .collect());
        }
    }
    Ok(strengths_rec(g.total_vertices(), &edges))
}

/// Size cap for the subset-enumerating strength oracles.
pub const BRUTE_STRENGTH_VERTEX_CAP: usize = 12;

/// Minimum bipartition weight of the subgraph induced by `subset`, by direct
/// enumeration of all proper bipartitions. Zero when the induced subgraph is
/// disconnected.
fn brute_connectivity<W: CutWeight>(
    subset: &[usize],
    edges: &[(usize, usize, W)],
    position: &[usize],
) -> W {
    let k = subset.len();
    debug_assert!(k >= 2);
    let inner: Vec<(usize, usize, &W)> = edges
        .iter()
        .filter_map(|(u, v, w)| {
            let pu = position[*u];
            let pv = position[*v];
            (pu != usize::MAX && pv != usize::MAX).then_some((pu, pv, w))
        })
        .collect();
    let mut best: Option<W> = None;
    // Fix vertex 0 on one side; enumerate the rest.
    for split in 0..(1usize << (k - 1)) {
        let assign = split << 1; // bit per position, position 0 always side 0
        if assign == 0 && k > 1 && split == 0 {
            // All vertices on side 0 is not a proper bipartition.
            continue;
        }
        let mut value = W::zero();
        for (pu, pv, w) in &inner {
            if (assign >> pu & 1) != (assign >> pv & 1) {
                value += (*w).clone();
            }
        }
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value);
        }
    }
    best.expect("k >= 2 yields at least one bipartition")
}

fn brute_strengths_weighted<W: CutWeight>(n: usize, edges: &[(usize, usize, W)]) -> Result<Vec<W>> {
    check_edges(n.max(2), edges)?;
    if n > BRUTE_STRENGTH_VERTEX_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "brute strengths enumerate 2^{n} subsets; cap is {BRUTE_STRENGTH_VERTEX_CAP} vertices"
        )));
    }
    let mut strength: Vec<W> = vec![W::zero(); edges.len()];
    let mut position = vec![usize::MAX; n];
    for mask in 1usize..(1 << n) {
        if (mask as u32).count_ones() < 2 {
            continue;
        }
        let subset: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        for v in 0..n {
            position[v] = usize::MAX;
        }
        for (i, &v) in subset.iter().enumerate() {
            position[v] = i;
        }
        let lambda = brute_connectivity(&subset, edges, &position);
        if lambda <= W::zero() {
            continue;
        }
        for (idx, (u, v, _)) in edges.iter().enumerate() {
            if position[*u] != usize::MAX && position[*v] != usize::MAX && lambda > strength[idx] {
                strength[idx] = lambda.clone();
            }
        }
    }
    Ok(strength)
}

/// Strength oracle by exhaustive enumeration of induced subgraphs and their
/// bipartitions. Shares no code with the recursive computation.
pub fn brute_strengths_general(n: usize, edges: &[(usize, usize)]) -> Result<Vec<u64>> {
    let weighted: Vec<(usize, usize, u64)> = edges.iter().map(|&(u, v)| (u, v, 1)).collect();
    brute_strengths_weighted(n, &weighted)
}

/// [`brute_strengths_general`] over a bipartite graph's unified numbering.
pub fn brute_strengths(g: &BipartiteGraph) -> Result<Vec<u64>> {
    let edges: Vec<(usize, usize)> = (0..g.num_edges()).map(|i| g.unified_endpoints(i)).collect();
    brute_strengths_general(g.total_vertices(), &edges)
}

/// Weighted strength oracle (exhaustive), for cross-checking
/// [`weighted_strengths`] on small graphs.
pub fn brute_weighted_strengths(g: &BipartiteGraph) -> Result<Vec<Rational>> {
    let edges: Vec<(usize, usize, Rational)> = (0..g.num_edges())
        .map(|i| {
            let (u, v) = g.unified_endpoints(i);
            (u, v, g.edge(i).weight.clone())
        })
        .collect();
    brute_strengths_weighted(g.total_vertices(), &edges)
}

/// Smallest `j >= 1` such that the reciprocal tail sums satisfy
/// `sum_{i in s1, i >= j} 1/i > gamma * sum_{i in s2, i >= j} 1/i`,
/// compared exactly. Elements must be positive.
pub fn multiset_split_index(s1: &[u64], s2: &[u64], gamma: &Rational) -> Result<usize> {
    if s1.iter().chain(s2).any(|&x| x == 0) {
        return Err(Error::InvalidInput(
            "multiset elements must be positive".to_string(),
        ));
    }
    if gamma <= &Rational::zero() {
        return Err(Error::InvalidParameters("gamma must be positive".to_string()));
    }
    let tail = |set: &[u64], j: u64| -> Rational {
        set.iter()
            .filter(|&&x| x >= j)
            .map(|&x| Rational::new(BigInt::one(), BigInt::from(x)))
            .sum()
    };
    // Tail sums only change when j passes an element, so the smallest
    // satisfying j is 1 or follows an element value.
    let mut candidates: Vec<u64> = [1u64]
        .into_iter()
        .chain(s1.iter().chain(s2).map(|&x| x + 1))
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    for &j in &candidates {
        if tail(s1, j) > gamma * tail(s2, j) {
            return Ok(j as usize);
        }
    }
    Err(Error::NoSplitIndex)
}
