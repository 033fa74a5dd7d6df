//! Splitting a d-regular bipartite graph into vertex-disjoint well-connected
//! pieces, validating the piece bounds, and the desk-scale relevant-pair
//! oracle built on such a split.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::graph::{witness_set, BipartiteGraph, VertexPair};
use crate::strength::min_cut_general;
use crate::{Error, Result};

/// Hard cap on per-side piece size for the exponential relevant-pair
/// enumeration; larger pieces are refused rather than approximated.
pub const RELEVANT_PAIR_SIDE_CAP: usize = 12;

/// A partition of the vertex set into pieces. Vertices use unified ids
/// (left vertices `0..n_left`, right vertices `n_left..n_left+n_right`);
/// `removed_edges` lists every edge whose endpoints lie in different pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub pieces: Vec<Vec<usize>>,
    pub removed_edges: Vec<usize>,
    pub k: usize,
}

impl Decomposition {
    /// Map from unified vertex id to the index of its piece.
    pub fn piece_of(&self, total_vertices: usize) -> Result<Vec<usize>> {
        let mut owner = vec![usize::MAX; total_vertices];
        for (pi, piece) in self.pieces.iter().enumerate() {
            for &v in piece {
                if v >= total_vertices || owner[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!(
                        "vertex {v} is out of range or assigned to two pieces"
                    )));
                }
                owner[v] = pi;
            }
        }
        if owner.iter().any(|&o| o == usize::MAX) {
            return Err(Error::InvalidInput(
                "pieces do not cover the vertex set".to_string(),
            ));
        }
        Ok(owner)
    }
}

/// Collects the induced edges of `set` (unified ids, sorted) as local-index
/// triples suitable for the min-cut routine.
fn induced_edges(g: &BipartiteGraph, set: &[usize]) -> Vec<(usize, usize, u64)> {
    let index: BTreeMap<usize, usize> = set.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut edges = Vec::new();
    for e in 0..g.num_edges() {
        let (up, uq) = g.unified_endpoints(e);
        if let (Some(&lp), Some(&lq)) = (index.get(&up), index.get(&uq)) {
            edges.push((lp, lq, 1u64));
        }
    }
    edges
}

/// Splits a d-regular bipartite graph into vertex-disjoint pieces, each of
/// which either is a single vertex or has minimum cut at least d/4.
///
/// Repeatedly takes any current part whose induced subgraph admits a cut of
/// value below d/4 (equivalently, a proper vertex subset with boundary below
/// d/4), splits it along a minimum cut, and refines both halves until no part
/// admits such a subset. Refining both halves keeps the connectivity
/// guarantee structural instead of relying on finding a cardinality-smallest
/// subset, which is itself a hard search problem.
pub fn decompose(g: &BipartiteGraph) -> Result<Decomposition> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidInput("decompose requires a regular graph".to_string()))?;
    if d == 0 {
        return Err(Error::InvalidInput(
            "decompose requires positive degree".to_string(),
        ));
    }
    if !g.is_unweighted() {
        return Err(Error::InvalidInput(
            "decompose requires unit edge weights".to_string(),
        ));
    }
    let total = g.total_vertices();
    let mut work: Vec<Vec<usize>> = vec![(0..total).collect()];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    while let Some(set) = work.pop() {
        if set.len() == 1 {
            pieces.push(set);
            continue;
        }
        let edges = induced_edges(g, &set);
        let cut = min_cut_general(set.len(), &edges)?;
        if 4 * cut.value < d as u64 {
            let in_side: BTreeMap<usize, ()> = cut.side.iter().map(|&l| (set[l], ())).collect();
            let side: Vec<usize> = set.iter().copied().filter(|v| in_side.contains_key(v)).collect();
            let rest: Vec<usize> = set.iter().copied().filter(|v| !in_side.contains_key(v)).collect();
            work.push(side);
            work.push(rest);
        } else {
            pieces.push(set);
        }
    }
    pieces.sort();
    let dec = Decomposition {
        k: pieces.len(),
        removed_edges: Vec::new(),
        pieces,
    };
    let owner = dec.piece_of(total)?;
    let removed = (0..g.num_edges())
        .filter(|&e| {
            let (up, uq) = g.unified_endpoints(e);
            owner[up] != owner[uq]
        })
        .collect();
    Ok(Decomposition {
        removed_edges: removed,
        ..dec
    })
}

/// Checked bounds for a decomposition of a d-regular graph with side size n:
/// piece connectivity above d/8, at most 4n/d + 1 pieces, total piece
/// boundary at most 2n, at most n removed edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub mincut_ok: bool,
    pub count_ok: bool,
    pub boundary_ok: bool,
    pub removed_ok: bool,
    pub degree: usize,
    pub side: usize,
    pub k: usize,
    pub piece_sizes: Vec<usize>,
    /// Minimum cut of each multi-vertex piece; `None` marks a single-vertex
    /// piece, whose connectivity is unbounded by convention.
    pub piece_min_cuts: Vec<Option<u64>>,
    pub boundary_sizes: Vec<usize>,
    pub boundary_total: usize,
    pub removed_count: usize,
}

impl DecompositionReport {
    pub fn all_ok(&self) -> bool {
        self.mincut_ok && self.count_ok && self.boundary_ok && self.removed_ok
    }
}

/// Validates `dec` against `g`: structural consistency is an error, while
/// the quantitative bounds come back as booleans plus the measured values.
pub fn validate_decomposition(g: &BipartiteGraph, dec: &Decomposition) -> Result<DecompositionReport> {
    let d = g.regular_degree().ok_or_else(|| {
        Error::InvalidInput("decomposition bounds are defined for regular graphs".to_string())
    })?;
    if d == 0 {
        return Err(Error::InvalidInput(
            "decomposition bounds require positive degree".to_string(),
        ));
    }
    let owner = dec.piece_of(g.total_vertices())?;
    if dec.k != dec.pieces.len() {
        return Err(Error::InvalidInput(format!(
            "piece count {} disagrees with stored k = {}",
            dec.pieces.len(),
            dec.k
        )));
    }
    let mut crossing: Vec<usize> = Vec::new();
    for e in 0..g.num_edges() {
        let (up, uq) = g.unified_endpoints(e);
        if owner[up] != owner[uq] {
            crossing.push(e);
        }
    }
    let mut declared = dec.removed_edges.clone();
    declared.sort_unstable();
    if declared != crossing {
        return Err(Error::InvalidInput(
            "removed_edges does not equal the set of piece-crossing edges".to_string(),
        ));
    }

    let mut piece_min_cuts = Vec::with_capacity(dec.k);
    let mut boundary_sizes = vec![0usize; dec.k];
    for piece in &dec.pieces {
        if piece.len() == 1 {
            piece_min_cuts.push(None);
        } else {
            let edges = induced_edges(g, piece);
            piece_min_cuts.push(Some(min_cut_general(piece.len(), &edges)?.value));
        }
    }
    for &e in &crossing {
        let (up, uq) = g.unified_endpoints(e);
        boundary_sizes[owner[up]] += 1;
        boundary_sizes[owner[uq]] += 1;
    }
    let boundary_total: usize = boundary_sizes.iter().sum();
    let n = g.n_left();
    Ok(DecompositionReport {
        mincut_ok: piece_min_cuts
            .iter()
            .all(|c| c.map_or(true, |v| 8 * v > d as u64)),
        count_ok: dec.k * d <= 4 * n + d,
        boundary_ok: boundary_total <= 2 * n,
        removed_ok: crossing.len() <= n,
        degree: d,
        side: n,
        k: dec.k,
        piece_sizes: dec.pieces.iter().map(Vec::len).collect(),
        piece_min_cuts,
        boundary_sizes,
        boundary_total,
        removed_count: crossing.len(),
    })
}

/// An unbalanced vertex pair confined to one piece, tagged with that piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelevantPair {
    pub piece: usize,
    pub pair: VertexPair,
}

/// All relevant pairs of a decomposition together with the relevant edges
/// (the edges that stay inside a piece).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelevantPairSet {
    pub pairs: Vec<RelevantPair>,
    pub relevant_edges: Vec<usize>,
}

/// Exhaustively enumerates the relevant pairs of `dec`: pairs (A, B) with
/// A and B inside one piece's sides, |A| > |B|, such that no nonempty proper
/// subset A' of A admits a companion B' with |B'| < |A'| whose restricted
/// witness set is contained in that of (A, B). Containment of witness sets
/// reduces to a counting test: (A, B) is dominated by A' exactly when A'
/// reaches fewer than |A'| vertices of B along relevant edges.
pub fn relevant_pairs(g: &BipartiteGraph, dec: &Decomposition) -> Result<RelevantPairSet> {
    let owner = dec.piece_of(g.total_vertices())?;
    let n_left = g.n_left();
    let relevant_edges: Vec<usize> = (0..g.num_edges())
        .filter(|&e| {
            let (up, uq) = g.unified_endpoints(e);
            owner[up] == owner[uq]
        })
        .collect();

    let mut pairs = Vec::new();
    for (pi, piece) in dec.pieces.iter().enumerate() {
        let left: Vec<usize> = piece.iter().copied().filter(|&v| v < n_left).collect();
        let right: Vec<usize> = piece
            .iter()
            .copied()
            .filter(|&v| v >= n_left)
            .map(|v| v - n_left)
            .collect();
        if left.len() > RELEVANT_PAIR_SIDE_CAP || right.len() > RELEVANT_PAIR_SIDE_CAP {
            return Err(Error::InstanceTooLarge(format!(
                "piece {pi} has sides {}x{}, enumeration cap is {}",
                left.len(),
                right.len(),
                RELEVANT_PAIR_SIDE_CAP
            )));
        }
        let nl = left.len();
        let nr = right.len();
        if nl == 0 {
            continue;
        }
        let right_pos: BTreeMap<usize, usize> =
            right.iter().enumerate().map(|(j, &q)| (q, j)).collect();
        // Per-vertex reachability masks over this piece's right side,
        // following only edges that stay inside the piece.
        let mut vert_mask = vec![0u32; nl];
        for (i, &p) in left.iter().enumerate() {
            for &e in g.adj_left(p) {
                let (up, uq) = g.unified_endpoints(e);
                if owner[up] == owner[uq] {
                    vert_mask[i] |= 1 << right_pos[&g.edge(e).q];
                }
            }
        }
        // Neighborhood mask of every left subset, filled in subset order.
        let mut gamma = vec![0u32; 1 << nl];
        for mask in 1..(1u32 << nl) {
            let low = mask & mask.wrapping_neg();
            gamma[mask as usize] =
                gamma[(mask ^ low) as usize] | vert_mask[low.trailing_zeros() as usize];
        }
        for a_mask in 1..(1u32 << nl) {
            let ka = a_mask.count_ones();
            for b_mask in 0..(1u32 << nr) {
                if b_mask.count_ones() >= ka {
                    continue;
                }
                // Minimality: every nonempty proper subset of A must reach
                // at least its own size within B.
                let mut minimal = true;
                let mut sub = (a_mask.wrapping_sub(1)) & a_mask;
                while sub != 0 {
                    if (b_mask & gamma[sub as usize]).count_ones() < sub.count_ones() {
                        minimal = false;
                        break;
                    }
                    sub = sub.wrapping_sub(1) & a_mask;
                }
                if minimal {
                    let a: Vec<usize> = (0..nl).filter(|i| a_mask >> i & 1 == 1).map(|i| left[i]).collect();
                    let b: Vec<usize> = (0..nr).filter(|j| b_mask >> j & 1 == 1).map(|j| right[j]).collect();
                    pairs.push(RelevantPair {
                        piece: pi,
                        pair: VertexPair::new(a, b),
                    });
                }
            }
        }
    }
    Ok(RelevantPairSet {
        pairs,
        relevant_edges,
    })
}

/// True when every relevant pair's witness set, restricted to relevant
/// edges, contains at least one edge of `e_star`. Whenever this holds, the
/// subgraph on `e_star` has a perfect matching.
pub fn check_hall_hitting(g: &BipartiteGraph, rel: &RelevantPairSet, e_star: &[usize]) -> Result<bool> {
    let star: alloc::collections::BTreeSet<usize> = e_star.iter().copied().collect();
    let relevant: alloc::collections::BTreeSet<usize> =
        rel.relevant_edges.iter().copied().collect();
    for rp in &rel.pairs {
        let witness = witness_set(g, &rp.pair)?;
        let hit = witness
            .iter()
            .any(|e| relevant.contains(e) && star.contains(e));
        if !hit {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each relevant pair, the pair of sizes (|W(A,B) ∩ E_R|, |C(A,B)|) —
/// measured so callers can report how witness mass compares to cut size.
pub fn witness_cut_sizes(g: &BipartiteGraph, rel: &RelevantPairSet) -> Result<Vec<(usize, usize)>> {
    let relevant: alloc::collections::BTreeSet<usize> =
        rel.relevant_edges.iter().copied().collect();
    let mut out = Vec::with_capacity(rel.pairs.len());
    for rp in &rel.pairs {
        let w = witness_set(g, &rp.pair)?
            .into_iter()
            .filter(|e| relevant.contains(e))
            .count();
        let c = crate::graph::cut_set(g, &rp.pair)?.len();
        out.push((w, c));
    }
    Ok(out)
}
