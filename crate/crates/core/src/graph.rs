//! Bipartite (multi)graphs with optional rational edge weights, generators
//! for random regular and adversarial instances, witness/cut edge sets for
//! vertex-set pairs, and small-instance oracles (Hall violators, exhaustive
//! maximum matching).

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write as _;
use core::str::FromStr;

use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Rational, Result};

/// One edge of a bipartite multigraph. `p` indexes the left side, `q` the
/// right side. Unweighted graphs carry weight 1 on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub p: usize,
    pub q: usize,
    pub weight: Rational,
}

/// A bipartite multigraph with `n_left` vertices on the left side (indexed
/// `0..n_left`) and `n_right` on the right. Parallel edges are kept as
/// distinct entries; adjacency lists store edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    edges: Vec<Edge>,
    adj_left: Vec<Vec<usize>>,
    adj_right: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Creates an unweighted graph (every edge weight 1).
    ///
    /// Fails if any endpoint index is out of range.
    pub fn new(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let weighted: Vec<(usize, usize, Rational)> = edges
            .iter()
            .map(|&(p, q)| (p, q, Rational::one()))
            .collect();
        Self::with_weights(n_left, n_right, weighted)
    }

    /// Creates a weighted graph. Weights must be nonnegative.
    pub fn with_weights(
        n_left: usize,
        n_right: usize,
        edges: Vec<(usize, usize, Rational)>,
    ) -> Result<Self> {
        let mut adj_left = vec![Vec::new(); n_left];
        let mut adj_right = vec![Vec::new(); n_right];
        let mut out = Vec::with_capacity(edges.len());
        for (idx, (p, q, weight)) in edges.into_iter().enumerate() {
            if p >= n_left || q >= n_right {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} = ({p}, {q}) out of range for {n_left}x{n_right} graph"
                )));
            }
            if weight.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "edge {idx} = ({p}, {q}) has negative weight"
                )));
            }
            adj_left[p].push(idx);
            adj_right[q].push(idx);
            out.push(Edge { p, q, weight });
        }
        Ok(Self {
            n_left,
            n_right,
            edges: out,
            adj_left,
            adj_right,
        })
    }

    pub fn n_left(&self) -> usize {
        self.n_left
    }

    pub fn n_right(&self) -> usize {
        self.n_right
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    /// Edge indices incident to left vertex `p`.
    pub fn adj_left(&self, p: usize) -> &[usize] {
        &self.adj_left[p]
    }

    /// Edge indices incident to right vertex `q`.
    pub fn adj_right(&self, q: usize) -> &[usize] {
        &self.adj_right[q]
    }

    pub fn degree_left(&self, p: usize) -> usize {
        self.adj_left[p].len()
    }

    pub fn degree_right(&self, q: usize) -> usize {
        self.adj_right[q].len()
    }

    /// Returns `Some(d)` when every vertex on both sides has degree exactly
    /// `d` (counting parallel edges, ignoring weights), `None` otherwise.
    pub fn regular_degree(&self) -> Option<usize> {
        if self.n_left == 0 || self.n_right == 0 {
            return None;
        }
        let d = self.adj_left[0].len();
        let left_ok = self.adj_left.iter().all(|a| a.len() == d);
        let right_ok = self.adj_right.iter().all(|a| a.len() == d);
        (left_ok && right_ok).then_some(d)
    }

    /// True when every edge has weight exactly 1.
    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Total number of vertices across both sides.
    pub fn total_vertices(&self) -> usize {
        self.n_left + self.n_right
    }

    /// Maps an edge to endpoints in the unified vertex numbering in which
    /// left vertices keep their ids and right vertex `q` becomes
    /// `n_left + q`.
    pub fn unified_endpoints(&self, edge_id: usize) -> (usize, usize) {
        let e = &self.edges[edge_id];
        (e.p, self.n_left + e.q)
    }

    /// New graph on the same vertex set keeping exactly the listed edges (in
    /// the given order). Edge indices are renumbered.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Self {
        let kept: Vec<(usize, usize, Rational)> = edge_ids
            .iter()
            .map(|&i| {
                let e = &self.edges[i];
                (e.p, e.q, e.weight.clone())
            })
            .collect();
        Self::with_weights(self.n_left, self.n_right, kept)
            .expect("edges of an existing graph are in range")
    }
}

/// A pair `(A, B)` of vertex subsets, `A` on the left side and `B` on the
/// right. Stored sorted and deduplicated, so equal pairs compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct VertexPair {
    a: Vec<usize>,
    b: Vec<usize>,
}

impl VertexPair {
    pub fn new(a: impl Into<Vec<usize>>, b: impl Into<Vec<usize>>) -> Self {
        let mut a = a.into();
        let mut b = b.into();
        a.sort_unstable();
        a.dedup();
        b.sort_unstable();
        b.dedup();
        Self { a, b }
    }

    /// Left-side subset, sorted.
    pub fn a(&self) -> &[usize] {
        &self.a
    }

    /// Right-side subset, sorted.
    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `|A| > |B|`: more left vertices than right vertices.
    pub fn is_unbalanced(&self) -> bool {
        self.a.len() > self.b.len()
    }

    /// Validates that all ids are within the graph's sides.
    pub fn check_in_range(&self, g: &BipartiteGraph) -> Result<()> {
        if self.a.iter().any(|&p| p >= g.n_left()) || self.b.iter().any(|&q| q >= g.n_right()) {
            return Err(Error::InvalidInput(
                "vertex pair indexes outside the graph".to_string(),
            ));
        }
        Ok(())
    }
}

fn membership(ids: &[usize], n: usize) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in ids {
        m[i] = true;
    }
    m
}

/// Edges leaving `A` for the right-side complement of `B`: all edge indices
/// `(p, q)` with `p` in `A` and `q` not in `B`. Sorted ascending.
pub fn witness_set(g: &BipartiteGraph, pair: &VertexPair) -> Result<Vec<usize>> {
    pair.check_in_range(g)?;
    let in_a = membership(pair.a(), g.n_left());
    let in_b = membership(pair.b(), g.n_right());
    Ok((0..g.num_edges())
        .filter(|&i| {
            let e = g.edge(i);
            in_a[e.p] && !in_b[e.q]
        })
        .collect())
}

/// Edges crossing the vertex bipartition `(A ∪ B, complement)`: the witness
/// edges of `(A, B)` together with the edges from the left complement of `A`
/// into `B`. Sorted ascending.
pub fn cut_set(g: &BipartiteGraph, pair: &VertexPair) -> Result<Vec<usize>> {
    pair.check_in_range(g)?;
    let in_a = membership(pair.a(), g.n_left());
    let in_b = membership(pair.b(), g.n_right());
    Ok((0..g.num_edges())
        .filter(|&i| {
            let e = g.edge(i);
            in_a[e.p] != in_b[e.q]
        })
        .collect())
}

/// Maximum number of left vertices accepted by the exponential-time oracles
/// ([`hall_violator`], [`brute_max_matching`]).
pub const ORACLE_VERTEX_CAP: usize = 20;

/// Exhaustive search for a Hall-condition violator: a left subset `A` whose
/// neighborhood `N(A)` is smaller than `A`. Returns the first violator in
/// ascending bitmask order as `(A, N(A))`, or `None` when every subset
/// satisfies Hall's condition (equivalently, a perfect left-saturating
/// matching exists).
pub fn hall_violator(g: &BipartiteGraph) -> Result<Option<VertexPair>> {
    if g.n_left() > ORACLE_VERTEX_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "hall_violator enumerates 2^{} subsets; cap is {ORACLE_VERTEX_CAP} left vertices",
            g.n_left()
        )));
    }
    let n = g.n_left();
    // Neighborhood bitmasks over the right side.
    let nbr: Vec<u64> = (0..n)
        .map(|p| {
            g.adj_left(p)
                .iter()
                .fold(0u64, |m, &e| m | (1u64 << g.edge(e).q))
        })
        .collect();
    if g.n_right() > 64 {
        return Err(Error::InstanceTooLarge(
            "hall_violator supports at most 64 right vertices".to_string(),
        ));
    }
    for mask in 1u64..(1u64 << n) {
        let mut reach = 0u64;
        for (p, pn) in nbr.iter().enumerate() {
            if mask >> p & 1 == 1 {
                reach |= pn;
            }
        }
        if (reach.count_ones() as usize) < mask.count_ones() as usize {
            let a: Vec<usize> = (0..n).filter(|&p| mask >> p & 1 == 1).collect();
            let b: Vec<usize> = (0..g.n_right()).filter(|&q| reach >> q & 1 == 1).collect();
            return Ok(Some(VertexPair::new(a, b)));
        }
    }
    Ok(None)
}

/// Exhaustive maximum-matching size by dynamic programming over subsets of
/// the right side. Independent of any augmenting-path machinery; intended as
/// a desk-scale oracle.
pub fn brute_max_matching(g: &BipartiteGraph) -> Result<usize> {
    if g.n_right() > ORACLE_VERTEX_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "brute_max_matching tabulates 2^{} subsets; cap is {ORACLE_VERTEX_CAP} right vertices",
            g.n_right()
        )));
    }
    let masks: Vec<u32> = (0..g.n_left())
        .map(|p| {
            g.adj_left(p)
                .iter()
                .fold(0u32, |m, &e| m | (1u32 << g.edge(e).q))
        })
        .collect();
    let full = 1usize << g.n_right();
    let mut dp = vec![0u16; full];
    for &pmask in &masks {
        let mut next = dp.clone();
        for used in 0..full {
            let base = dp[used];
            let mut avail = pmask & !(used as u32);
            while avail != 0 {
                let q = avail.trailing_zeros();
                avail &= avail - 1;
                let nu = used | (1usize << q);
                if base + 1 > next[nu] {
                    next[nu] = base + 1;
                }
            }
        }
        dp = next;
    }
    Ok(dp.iter().copied().max().unwrap_or(0) as usize)
}

/// Union of `d` uniformly random permutations between two sides of size `n`:
/// a d-regular bipartite multigraph. Deterministic in `seed`.
pub fn gen_regular(n: usize, d: usize, seed: u64) -> Result<BipartiteGraph> {
    if n == 0 || d == 0 || d > n {
        return Err(Error::InvalidParameters(format!(
            "gen_regular requires 1 <= d <= n, got n={n}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(n * d);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..d {
        perm.shuffle(&mut rng);
        for (p, &q) in perm.iter().enumerate() {
            edges.push((p, q));
        }
    }
    BipartiteGraph::new(n, n, &edges)
}

/// Parameters for the layered adversarial family: `t` stacked blocks over
/// degree `d`. Requires `4t <= d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdversarialParams {
    pub d: usize,
    pub t: usize,
}

/// A d-regular family engineered to produce long augmenting paths: `t`
/// near-regular blocks `H_1..H_t` (block `H_j` is a `(d-t+j-1)`-regular
/// random bipartite multigraph on `d + d` vertices), spine vertices
/// `u_1..u_t` each joined to every right vertex of `H_1`, spine vertices
/// `v_1..v_t` with `v_j` joined to every left vertex of `H_j`, and `t - j`
/// edge-disjoint perfect matchings from the left side of `H_j` to the right
/// side of `H_{j+1}`.
///
/// The result has `2(d+1)t` vertices and is d-regular.
///
/// Left ids: `0..t` are `u_1..u_t`; then `t + (j-1)*d + r` is left vertex `r`
/// of block `j`. Right ids: `(j-1)*d + r` is right vertex `r` of block `j`;
/// then `t*d + (j-1)` is `v_j`.
pub fn gen_adversarial(params: AdversarialParams, seed: u64) -> Result<BipartiteGraph> {
    let AdversarialParams { d, t } = params;
    if t == 0 || 4 * t > d {
        return Err(Error::InvalidParameters(format!(
            "adversarial family requires 1 <= t and 4t <= d, got d={d}, t={t}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_side = t * (d + 1);
    let u_id = |i: usize| i; // i in 0..t
    let block_left = |j: usize, r: usize| t + j * d + r; // j in 0..t
    let block_right = |j: usize, r: usize| j * d + r;
    let v_id = |j: usize| t * d + j;

    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(n_side * d);
    let mut perm: Vec<usize> = (0..d).collect();

    for j in 0..t {
        // Internal block edges: union of (d - t + j) permutations, since
        // block j here is 0-based (block index j+1 in 1-based terms).
        let internal = d - t + j;
        for _ in 0..internal {
            perm.shuffle(&mut rng);
            for (r, &s) in perm.iter().enumerate() {
                edges.push((block_left(j, r), block_right(j, s)));
            }
        }
        // v_j joined to every left vertex of block j.
        for r in 0..d {
            edges.push((block_left(j, r), v_id(j)));
        }
        // t - (j+1) edge-disjoint matchings into block j+1.
        if j + 1 < t {
            perm.shuffle(&mut rng);
            for m in 0..(t - (j + 1)) {
                for r in 0..d {
                    edges.push((block_left(j, r), block_right(j + 1, perm[(r + m) % d])));
                }
            }
        }
    }
    // Spine vertices u_1..u_t joined to every right vertex of block 1.
    for i in 0..t {
        for r in 0..d {
            edges.push((u_id(i), block_right(0, r)));
        }
    }
    BipartiteGraph::new(n_side, n_side, &edges)
}

pub(crate) fn parse_rational(token: &str, line: usize) -> Result<Rational> {
    let make_err = || Error::Parse {
        line,
        message: format!("cannot parse '{token}' as a rational weight"),
    };
    let r = match token.split_once('/') {
        Some((num, den)) => {
            let num = num_bigint::BigInt::from_str(num).map_err(|_| make_err())?;
            let den = num_bigint::BigInt::from_str(den).map_err(|_| make_err())?;
            if den.is_zero() {
                return Err(Error::Parse {
                    line,
                    message: "weight denominator is zero".to_string(),
                });
            }
            Rational::new(num, den)
        }
        None => {
            let num = num_bigint::BigInt::from_str(token).map_err(|_| make_err())?;
            Rational::from_integer(num)
        }
    };
    Ok(r)
}

/// Parses the edge-list text format.
///
/// The first significant line is `n d` (`d = 0` marks an irregular graph; a
/// positive `d` asserts d-regularity, which is validated). Every following
/// line is `p q` or `p q w` with `w` an integer or `num/den` rational.
/// Anything from `#` to end of line is a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, Rational)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match header {
            None => {
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: format!(
                            "expected header 'n d', got {} token(s)",
                            tokens.len()
                        ),
                    });
                }
                let n: usize = tokens[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse vertex count '{}'", tokens[0]),
                })?;
                let d: usize = tokens[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse degree '{}'", tokens[1]),
                })?;
                header = Some((n, d));
            }
            Some((n, _)) => {
                if tokens.len() != 2 && tokens.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected 'p q' or 'p q w', got {} token(s)", tokens.len()),
                    });
                }
                let p: usize = tokens[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse left vertex '{}'", tokens[0]),
                })?;
                let q: usize = tokens[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse right vertex '{}'", tokens[1]),
                })?;
                if p >= n || q >= n {
                    return Err(Error::Parse {
                        line,
                        message: format!("edge ({p}, {q}) out of range for n={n}"),
                    });
                }
                let w = if tokens.len() == 3 {
                    let w = parse_rational(tokens[2], line)?;
                    if w.is_negative() {
                        return Err(Error::Parse {
                            line,
                            message: "negative edge weight".to_string(),
                        });
                    }
                    w
                } else {
                    Rational::one()
                };
                edges.push((p, q, w));
            }
        }
    }
    let (n, d) = header.ok_or(Error::Parse {
        line: 1,
        message: "missing 'n d' header".to_string(),
    })?;
    let g = BipartiteGraph::with_weights(n, n, edges)?;
    if d > 0 {
        match g.regular_degree() {
            Some(actual) if actual == d => {}
            actual => {
                return Err(Error::InvalidInput(format!(
                    "header declares {d}-regular but graph is {}",
                    match actual {
                        Some(a) => format!("{a}-regular"),
                        None => "irregular".to_string(),
                    }
                )));
            }
        }
    }
    Ok(g)
}

/// Renders a graph in the edge-list text format parsed by
/// [`parse_edge_list`]. Only square graphs (`n_left == n_right`) are
/// representable.
pub fn format_edge_list(g: &BipartiteGraph) -> Result<String> {
    if g.n_left() != g.n_right() {
        return Err(Error::InvalidInput(format!(
            "edge-list format requires equal sides, got {}x{}",
            g.n_left(),
            g.n_right()
        )));
    }
    let d = g.regular_degree().unwrap_or(0);
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n_left(), d);
    for e in g.edges() {
        if e.weight.is_one() {
            let _ = writeln!(out, "{} {}", e.p, e.q);
        } else {
            let _ = writeln!(out, "{} {} {}/{}", e.p, e.q, e.weight.numer(), e.weight.denom());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    #[test]
    fn witness_set_on_complete_2x2() {
        let g = k22();
        let pair = VertexPair::new(vec![0], vec![0]);
        let w = witness_set(&g, &pair).unwrap();
        // Only the edge (0, 1) leaves A = {0} for a right vertex outside B = {0}.
        assert_eq!(w, vec![1]);
    }

    #[test]
    fn cut_set_on_complete_2x2() {
        let g = k22();
        let pair = VertexPair::new(vec![0], vec![0]);
        let c = cut_set(&g, &pair).unwrap();
        // Crossing edges: (0,1) and (1,0).
        assert_eq!(c, vec![1, 2]);
    }

    #[test]
    fn cut_is_disjoint_union_of_both_witnesses() {
        // On a few random graphs: C(A,B) = W(A,B) ⊔ W(B,A), where the second
        // witness is the edges from the complement of A into B.
        for seed in 0..20 {
            let g = gen_regular(6, 3, seed).unwrap();
            let pair = VertexPair::new(vec![0, 2, 4], vec![1, 2]);
            let w_ab: BTreeSet<usize> = witness_set(&g, &pair).unwrap().into_iter().collect();
            let in_a = [true, false, true, false, true, false];
            let in_b = [false, true, true, false, false, false];
            let w_ba: BTreeSet<usize> = (0..g.num_edges())
                .filter(|&i| !in_a[g.edge(i).p] && in_b[g.edge(i).q])
                .collect();
            let c: BTreeSet<usize> = cut_set(&g, &pair).unwrap().into_iter().collect();
            assert!(w_ab.is_disjoint(&w_ba));
            let both: BTreeSet<usize> = w_ab.union(&w_ba).copied().collect();
            assert_eq!(both, c);
        }
    }

    #[test]
    fn witness_counting_identity_on_regular_graphs() {
        // For a d-regular graph, |W(A,B)| - |W(B,A)| = d(|A| - |B|).
        for seed in 0..10 {
            let g = gen_regular(7, 4, seed).unwrap();
            let pair = VertexPair::new(vec![0, 1, 2, 6], vec![3, 5]);
            let w_ab = witness_set(&g, &pair).unwrap().len() as i64;
            let c = cut_set(&g, &pair).unwrap().len() as i64;
            let w_ba = c - w_ab;
            assert_eq!(w_ab - w_ba, 4 * (4 - 2));
        }
    }

    #[test]
    fn hall_violator_finds_star_violation() {
        // Two left vertices whose only neighbor is right vertex 0.
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0)]).unwrap();
        let v = hall_violator(&g).unwrap().unwrap();
        assert_eq!(v.a(), &[0, 1]);
        assert_eq!(v.b(), &[0]);
    }

    #[test]
    fn hall_violator_none_on_regular_graphs() {
        for seed in 0..30 {
            let g = gen_regular(8, 3, seed).unwrap();
            assert_eq!(hall_violator(&g).unwrap(), None);
        }
    }

    #[test]
    fn brute_matching_matches_hall_deficiency() {
        // König-style sanity: max matching size = n_left - max deficiency.
        // Exercised indirectly: regular graphs always have a perfect matching.
        for seed in 0..20 {
            let g = gen_regular(6, 2, seed).unwrap();
            assert_eq!(brute_max_matching(&g).unwrap(), 6);
        }
        let g = BipartiteGraph::new(3, 3, &[(0, 0), (1, 0), (2, 0), (2, 1)]).unwrap();
        assert_eq!(brute_max_matching(&g).unwrap(), 2);
    }

    #[test]
    fn gen_regular_is_regular_union_of_permutations() {
        let g = gen_regular(4, 2, 7).unwrap();
        assert_eq!(g.num_edges(), 8);
        assert_eq!(g.regular_degree(), Some(2));
        // Deterministic in the seed.
        let h = gen_regular(4, 2, 7).unwrap();
        assert_eq!(g, h);
        let other = gen_regular(4, 2, 8).unwrap();
        assert_ne!(g, other);
    }

    #[test]
    fn gen_regular_rejects_bad_parameters() {
        assert!(matches!(
            gen_regular(3, 4, 0),
            Err(Error::InvalidParameters(_))
        ));
        assert!(matches!(
            gen_regular(0, 0, 0),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn adversarial_family_is_regular_with_expected_size() {
        let g = gen_adversarial(AdversarialParams { d: 8, t: 2 }, 3).unwrap();
        assert_eq!(g.total_vertices(), 2 * (8 + 1) * 2);
        assert_eq!(g.regular_degree(), Some(8));

        let g = gen_adversarial(AdversarialParams { d: 16, t: 4 }, 5).unwrap();
        assert_eq!(g.total_vertices(), 2 * 17 * 4);
        assert_eq!(g.regular_degree(), Some(16));
    }

    #[test]
    fn adversarial_family_rejects_large_t() {
        assert!(matches!(
            gen_adversarial(AdversarialParams { d: 8, t: 3 }, 0),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn parse_edge_list_round_trip() {
        let text = "2 2\n0 0\n0 1\n1 0\n1 1\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.regular_degree(), Some(2));
        assert_eq!(g, k22());
        assert_eq!(format_edge_list(&g).unwrap(), text);
    }

    #[test]
    fn parse_edge_list_weights_and_comments() {
        let text = "# weighted example\n3 0\n0 0 1/2\n1 1 2\n2 2 # unit weight\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.edge(0).weight, crate::ratio(1, 2));
        assert_eq!(g.edge(1).weight, crate::ratio(2, 1));
        assert_eq!(g.edge(2).weight, crate::ratio(1, 1));
        let rendered = format_edge_list(&g).unwrap();
        let reparsed = parse_edge_list(&rendered).unwrap();
        assert_eq!(g, reparsed);
    }

    #[test]
    fn parse_edge_list_reports_line_numbers() {
        let text = "2 2\n0 0\nbogus line\n";
        match parse_edge_list(text) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_edge_list_validates_declared_regularity() {
        let text = "2 2\n0 0\n0 1\n1 0\n";
        assert!(matches!(parse_edge_list(text), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn edge_subgraph_keeps_vertices_and_renumbers_edges() {
        let g = k22();
        let h = g.edge_subgraph(&[3, 0]);
        assert_eq!(h.n_left(), 2);
        assert_eq!(h.num_edges(), 2);
        assert_eq!((h.edge(0).p, h.edge(0).q), (1, 1));
        assert_eq!((h.edge(1).p, h.edge(1).q), (0, 0));
    }
}
