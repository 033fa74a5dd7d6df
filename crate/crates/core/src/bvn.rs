//! Perfect matchings in the support of doubly stochastic matrices: a bit
//! elimination method for dyadic entries, a strength-based sampling method
//! for general entries, the Euler halving matcher for power-of-two regular
//! graphs, and a convex-decomposition driver.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::BipartiteGraph;
use crate::matching::{hopcroft_karp, Matching};
use crate::sampling::{weighted_bk_sample, SamplerConfig};
use crate::strength::weighted_strengths;
use crate::{Error, Rational, Result};

/// Exponent `k` when the reduced value has denominator exactly `2^k`;
/// `None` for non-dyadic values.
fn dyadic_exponent(v: &Rational) -> Option<u64> {
    let den = v.denom().magnitude();
    if den.count_ones() == 1 {
        den.trailing_zeros()
    } else {
        None
    }
}

/// A sparse doubly stochastic matrix: nonnegative entries whose every row
/// and column sums to exactly one. Zero entries are dropped on
/// construction; the stored support is sorted by (row, column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoublyStochasticMatrix {
    n: usize,
    entries: Vec<(usize, usize, Rational)>,
    bits: Option<u64>,
}

impl DoublyStochasticMatrix {
    pub fn new(n: usize, entries: Vec<(usize, usize, Rational)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "matrix dimension must be positive".to_string(),
            ));
        }
        let mut kept: Vec<(usize, usize, Rational)> = Vec::with_capacity(entries.len());
        for (i, j, v) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!(
                    "entry ({i}, {j}) out of range for a {n}x{n} matrix"
                )));
            }
            if v < Rational::zero() {
                return Err(Error::InvalidInput(format!(
                    "entry ({i}, {j}) is negative"
                )));
            }
            if !v.is_zero() {
                kept.push((i, j, v));
            }
        }
        kept.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        if kept.windows(2).any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::InvalidInput(
                "duplicate matrix coordinates".to_string(),
            ));
        }
        let mut row = vec![Rational::zero(); n];
        let mut col = vec![Rational::zero(); n];
        for (i, j, v) in &kept {
            row[*i] += v.clone();
            col[*j] += v.clone();
        }
        let one = Rational::one();
        if row.iter().any(|s| s != &one) || col.iter().any(|s| s != &one) {
            return Err(Error::InvalidInput(
                "every row and column must sum to exactly 1".to_string(),
            ));
        }
        let mut bits = Some(0u64);
        for (_, _, v) in &kept {
            match (bits, dyadic_exponent(v)) {
                (Some(b), Some(e)) => bits = Some(b.max(e)),
                _ => bits = None,
            }
        }
        Ok(Self {
            n,
            entries: kept,
            bits,
        })
    }

    /// The permutation-matrix constructor: entry `(i, perm[i])` is 1.
    pub fn from_permutation(perm: &[usize]) -> Result<Self> {
        let entries = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| (i, j, Rational::one()))
            .collect();
        Self::new(perm.len(), entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Maximum number of fractional bits over all entries, when every entry
    /// is a dyadic rational; `None` otherwise.
    pub fn bits(&self) -> Option<u64> {
        self.bits
    }

    /// The weighted bipartite support graph: rows on the left, columns on
    /// the right, one edge per positive entry carrying its value.
    pub fn support_graph(&self) -> BipartiteGraph {
        BipartiteGraph::with_weights(self.n, self.n, self.entries.clone())
            .expect("validated entries always form a graph")
    }
}

/// Orients every edge along an Euler circuit of its connected component.
/// `edges` lists unified endpoint pairs; every vertex must have even degree.
/// Returns, per edge, whether the traversal used it from `.0` to `.1`.
fn euler_orient(total_vertices: usize, edges: &[(usize, usize)]) -> Result<Vec<bool>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total_vertices];
    for (idx, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((idx, v));
        adj[v].push((idx, u));
    }
    if adj.iter().any(|a| a.len() % 2 != 0) {
        return Err(Error::InvalidInput(
            "Euler orientation requires even degrees".to_string(),
        ));
    }
    let mut cursor = vec![0usize; total_vertices];
    let mut used = vec![false; edges.len()];
    let mut from_first = vec![false; edges.len()];
    let mut stack: Vec<usize> = Vec::new();
    for start in 0..total_vertices {
        if adj[start].is_empty() {
            continue;
        }
        stack.push(start);
        while let Some(&v) = stack.last() {
            let mut advanced = false;
            while cursor[v] < adj[v].len() {
                let (e, w) = adj[v][cursor[v]];
                cursor[v] += 1;
                if !used[e] {
                    used[e] = true;
                    from_first[e] = edges[e].0 == v;
                    stack.push(w);
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                stack.pop();
            }
        }
    }
    debug_assert!(used.iter().all(|&u| u));
    Ok(from_first)
}

fn check_row_col_sums(n: usize, g: &BipartiteGraph, vals: &[Rational]) -> bool {
    let mut row = vec![Rational::zero(); n];
    let mut col = vec![Rational::zero(); n];
    for (e, v) in vals.iter().enumerate() {
        let edge = g.edge(e);
        row[edge.p] += v.clone();
        col[edge.q] += v.clone();
    }
    let one = Rational::one();
    row.iter().all(|s| s == &one) && col.iter().all(|s| s == &one)
}

/// Finds a perfect matching in the support of a dyadic doubly stochastic
/// matrix by bit elimination: per round, the entries whose lowest set bit is
/// the current finest bit `j` form an even-degree multigraph; orienting it
/// along Euler circuits and shifting `2^-j` from right-to-left onto
/// left-to-right edges clears bit `j` while keeping the matrix exactly
/// doubly stochastic and never growing the support. After at most `bits()`
/// rounds the entries are 0/1 and form the returned permutation (a matching
/// of [`DoublyStochasticMatrix::support_graph`]). Returns the matching and
/// the number of rounds performed.
pub fn bvn_match_bits(m: &DoublyStochasticMatrix) -> Result<(Matching, usize)> {
    if m.bits().is_none() {
        return Err(Error::UnsupportedInput(
            "bit elimination needs dyadic entries; use the sampling method instead".to_string(),
        ));
    }
    let g = m.support_graph();
    let mut vals: Vec<Rational> = g.edges().iter().map(|e| e.weight.clone()).collect();
    let mut rounds = 0usize;
    loop {
        let j = vals
            .iter()
            .filter(|v| !v.is_zero())
            .filter_map(dyadic_exponent)
            .max()
            .unwrap_or(0);
        if j == 0 {
            break;
        }
        let bit_edges: Vec<usize> = (0..vals.len())
            .filter(|&e| !vals[e].is_zero() && dyadic_exponent(&vals[e]) == Some(j))
            .collect();
        let endpoints: Vec<(usize, usize)> = bit_edges
            .iter()
            .map(|&e| g.unified_endpoints(e))
            .collect();
        let ltr = euler_orient(g.total_vertices(), &endpoints)?;
        let delta = Rational::new(One::one(), num_bigint::BigInt::one() << j);
        for (&e, &forward) in bit_edges.iter().zip(&ltr) {
            if forward {
                vals[e] += delta.clone();
            } else {
                vals[e] -= delta.clone();
            }
        }
        rounds += 1;
        // Invariants after every round, checked exactly: still doubly
        // stochastic, bit j gone, support never grew (values only moved on
        // existing entries).
        if !check_row_col_sums(m.n(), &g, &vals) {
            return Err(Error::InvalidInput(
                "row/column sums broke during bit elimination".to_string(),
            ));
        }
        let worst = vals
            .iter()
            .filter(|v| !v.is_zero())
            .filter_map(dyadic_exponent)
            .max()
            .unwrap_or(0);
        if worst >= j {
            return Err(Error::InvalidInput(
                "bit elimination failed to clear the target bit".to_string(),
            ));
        }
    }
    let pairs: Vec<(usize, usize)> = (0..vals.len())
        .filter(|&e| !vals[e].is_zero())
        .map(|e| {
            let edge = g.edge(e);
            (edge.p, edge.q)
        })
        .collect();
    let matching = Matching::from_pairs(&g, &pairs)?;
    if !matching.is_perfect(&g) {
        return Err(Error::InvalidInput(
            "bit elimination did not terminate in a permutation".to_string(),
        ));
    }
    Ok((matching, rounds))
}

/// Finds a perfect matching in the support of a doubly stochastic matrix by
/// sampling: every edge keeps weight equal to its entry, edges are thinned
/// inversely to their weighted strength at threshold 1/2, and the sampled
/// graph is matched. If the sampled graph misses a perfect matching, the
/// full support is matched instead (the returned flag reports the
/// fallback). The matching always lies in the support.
pub fn bvn_match_sampled(
    m: &DoublyStochasticMatrix,
    cfg: &SamplerConfig,
) -> Result<(Matching, bool)> {
    let g = m.support_graph();
    let strengths = weighted_strengths(&g)?;
    let sampled = weighted_bk_sample(&g, &strengths, 0.5, cfg)?;
    let (candidate, _) = hopcroft_karp(&sampled);
    if candidate.is_perfect(&sampled) {
        return Ok((Matching::from_pairs(&g, &candidate.pairs())?, false));
    }
    let (full, _) = hopcroft_karp(&g);
    if !full.is_perfect(&g) {
        return Err(Error::InvalidInput(
            "support admits no perfect matching; matrix is not doubly stochastic".to_string(),
        ));
    }
    Ok((full, true))
}

/// Outcome of the degree-halving matcher.
#[derive(Debug, Clone)]
pub struct EulerHalveOutcome {
    pub matching: Matching,
    /// Halving rounds performed: exactly log2(d).
    pub depth: usize,
    /// Total edges traversed across all rounds (at most 2m).
    pub edge_touches: usize,
}

/// Finds a perfect matching in a d-regular bipartite graph with d a power
/// of two: orient each round's edges along Euler circuits and keep the
/// left-to-right half, halving the degree until a perfect matching remains.
pub fn euler_halve(g: &BipartiteGraph) -> Result<EulerHalveOutcome> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::InvalidInput("degree halving requires a regular graph".to_string()))?;
    if d == 0 || !d.is_power_of_two() {
        return Err(Error::InvalidParameters(format!(
            "degree must be a positive power of two, got {d}"
        )));
    }
    let mut current: Vec<usize> = (0..g.num_edges()).collect();
    let mut degree = d;
    let mut depth = 0usize;
    let mut edge_touches = 0usize;
    while degree > 1 {
        let endpoints: Vec<(usize, usize)> = current
            .iter()
            .map(|&e| g.unified_endpoints(e))
            .collect();
        let ltr = euler_orient(g.total_vertices(), &endpoints)?;
        edge_touches += current.len();
        let kept: Vec<usize> = current
            .iter()
            .zip(&ltr)
            .filter(|(_, &keep)| keep)
            .map(|(&e, _)| e)
            .collect();
        debug_assert_eq!(kept.len() * 2, current.len());
        current = kept;
        degree /= 2;
        depth += 1;
    }
    let pairs: Vec<(usize, usize)> = current
        .iter()
        .map(|&e| {
            let edge = g.edge(e);
            (edge.p, edge.q)
        })
        .collect();
    let matching = Matching::from_pairs(g, &pairs)?;
    if !matching.is_perfect(g) {
        return Err(Error::InvalidInput(
            "halving did not end in a perfect matching".to_string(),
        ));
    }
    Ok(EulerHalveOutcome {
        matching,
        depth,
        edge_touches,
    })
}

/// Expresses a doubly stochastic matrix as a convex combination of
/// permutations: repeatedly match the current support, peel the matching
/// off with the smallest coefficient it carries, and continue. Exact
/// rational arithmetic; the coefficients sum to one and reconstruct the
/// matrix. All matchings refer to [`DoublyStochasticMatrix::support_graph`].
pub fn bvn_decompose(m: &DoublyStochasticMatrix) -> Result<Vec<(Rational, Matching)>> {
    let g = m.support_graph();
    let by_coord: BTreeMap<(usize, usize), usize> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| ((edge.p, edge.q), e))
        .collect();
    let mut vals: Vec<Rational> = g.edges().iter().map(|e| e.weight.clone()).collect();
    let mut out: Vec<(Rational, Matching)> = Vec::new();
    let mut remaining = Rational::one();
    while !remaining.is_zero() {
        let active: Vec<usize> = (0..vals.len()).filter(|&e| !vals[e].is_zero()).collect();
        let sub = g.edge_subgraph(&active);
        let (matching, _) = hopcroft_karp(&sub);
        if !matching.is_perfect(&sub) {
            return Err(Error::InvalidInput(
                "support lost its perfect matching; matrix is not doubly stochastic".to_string(),
            ));
        }
        let pairs = matching.pairs();
        let coeff = pairs
            .iter()
            .map(|&(p, q)| vals[by_coord[&(p, q)]].clone())
            .min()
            .expect("nonempty matching");
        for &(p, q) in &pairs {
            let e = by_coord[&(p, q)];
            vals[e] -= coeff.clone();
        }
        remaining -= coeff.clone();
        out.push((coeff, Matching::from_pairs(&g, &pairs)?));
    }
    if vals.iter().any(|v| !v.is_zero()) {
        return Err(Error::InvalidInput(
            "decomposition left residual mass".to_string(),
        ));
    }
    Ok(out)
}

/// A random doubly stochastic matrix: the average of `k` uniformly random
/// permutation matrices. Entries are dyadic exactly when `k` is a power of
/// two. Deterministic in `(n, k, seed)`.
pub fn gen_doubly_stochastic(n: usize, k: usize, seed: u64) -> Result<DoublyStochasticMatrix> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameters(
            "matrix dimension and permutation count must be positive".to_string(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..k {
        perm.shuffle(&mut rng);
        for (i, &j) in perm.iter().enumerate() {
            *counts.entry((i, j)).or_insert(0) += 1;
        }
    }
    let entries = counts
        .into_iter()
        .map(|((i, j), c)| {
            (
                i,
                j,
                Rational::new(c.into(), (k as u64).into()),
            )
        })
        .collect();
    DoublyStochasticMatrix::new(n, entries)
}

/// Parses the matrix text format: the first significant line is `n`, then
/// one `i j value` triple per line with `value` an integer or `num/den`
/// rational. `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<DoublyStochasticMatrix> {
    let mut n: Option<usize> = None;
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(Error::Parse {
                        line,
                        message: "expected a single dimension on the first line".to_string(),
                    });
                }
                let dim: usize = fields[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse dimension '{}'", fields[0]),
                })?;
                n = Some(dim);
            }
            Some(_) => {
                if fields.len() != 3 {
                    return Err(Error::Parse {
                        line,
                        message: "expected 'row col value'".to_string(),
                    });
                }
                let i: usize = fields[0].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse row index '{}'", fields[0]),
                })?;
                let j: usize = fields[1].parse().map_err(|_| Error::Parse {
                    line,
                    message: format!("cannot parse column index '{}'", fields[1]),
                })?;
                let v = crate::graph::parse_rational(fields[2], line)?;
                entries.push((i, j, v));
            }
        }
    }
    let n = n.ok_or_else(|| Error::Parse {
        line: 0,
        message: "empty matrix file".to_string(),
    })?;
    DoublyStochasticMatrix::new(n, entries)
}

/// Writes the matrix text format parsed by [`parse_matrix`].
pub fn format_matrix(m: &DoublyStochasticMatrix) -> String {
    let mut out = String::new();
    out.push_str(&format!("{}\n", m.n()));
    for (i, j, v) in m.entries() {
        if v.is_integer() {
            out.push_str(&format!("{i} {j} {}\n", v.numer()));
        } else {
            out.push_str(&format!("{i} {j} {}/{}\n", v.numer(), v.denom()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_regular;
    use crate::ratio;

    fn uniform_matrix(n: usize) -> DoublyStochasticMatrix {
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                entries.push((i, j, ratio(1, n as i64)));
            }
        }
        DoublyStochasticMatrix::new(n, entries).unwrap()
    }

    #[test]
    fn constructor_validates_sums_and_coordinates() {
        assert!(DoublyStochasticMatrix::new(2, vec![(0, 0, ratio(1, 1))]).is_err());
        assert!(DoublyStochasticMatrix::new(
            1,
            vec![(0, 0, ratio(1, 2)), (0, 0, ratio(1, 2))]
        )
        .is_err());
        assert!(DoublyStochasticMatrix::new(1, vec![(0, 1, ratio(1, 1))]).is_err());
        assert!(DoublyStochasticMatrix::new(
            2,
            vec![
                (0, 0, ratio(3, 2)),
                (0, 1, ratio(-1, 2)),
                (1, 0, ratio(-1, 2)),
                (1, 1, ratio(3, 2)),
            ]
        )
        .is_err());
        // Zeros are dropped from the support.
        let m = DoublyStochasticMatrix::new(
            2,
            vec![
                (0, 0, ratio(1, 1)),
                (0, 1, ratio(0, 1)),
                (1, 1, ratio(1, 1)),
            ],
        )
        .unwrap();
        assert_eq!(m.num_entries(), 2);
        assert_eq!(m.bits(), Some(0));
    }

    #[test]
    fn bits_tracks_fractional_precision() {
        assert_eq!(uniform_matrix(8).bits(), Some(3));
        assert_eq!(uniform_matrix(3).bits(), None);
        let m = DoublyStochasticMatrix::new(
            2,
            vec![
                (0, 0, ratio(3, 4)),
                (0, 1, ratio(1, 4)),
                (1, 0, ratio(1, 4)),
                (1, 1, ratio(3, 4)),
            ],
        )
        .unwrap();
        assert_eq!(m.bits(), Some(2));
    }

    #[test]
    fn permutation_passes_straight_through() {
        let m = DoublyStochasticMatrix::from_permutation(&[2, 0, 1]).unwrap();
        let (bits_match, rounds) = bvn_match_bits(&m).unwrap();
        assert_eq!(rounds, 0);
        assert_eq!(bits_match.pairs(), vec![(0, 2), (1, 0), (2, 1)]);
        let (sampled_match, _fallback) =
            bvn_match_sampled(&m, &SamplerConfig::default()).unwrap();
        assert_eq!(sampled_match.pairs(), vec![(0, 2), (1, 0), (2, 1)]);
    }

    #[test]
    fn half_half_matrix_resolves_in_one_round() {
        let m = uniform_matrix(2);
        let (matching, rounds) = bvn_match_bits(&m).unwrap();
        assert_eq!(rounds, 1);
        assert!(matching.is_perfect(&m.support_graph()));
    }

    #[test]
    fn uniform_matrix_matches_by_both_methods() {
        let m = uniform_matrix(8);
        let g = m.support_graph();
        let (bm, rounds) = bvn_match_bits(&m).unwrap();
        assert!(bm.is_perfect(&g));
        assert!(rounds <= 3);
        let (sm, _) = bvn_match_sampled(&m, &SamplerConfig::default()).unwrap();
        assert!(sm.is_perfect(&g));
    }

    #[test]
    fn permutation_averages_match_with_bounded_rounds() {
        for seed in 0..30 {
            let k = 1usize << (1 + (seed as usize % 4)); // 2, 4, 8, 16
            let n = 8 + (seed as usize % 3) * 8; // 8, 16, 24
            let m = gen_doubly_stochastic(n, k, seed).unwrap();
            let b = m.bits().expect("power-of-two averages are dyadic");
            let (matching, rounds) = bvn_match_bits(&m).unwrap();
            assert!(matching.is_perfect(&m.support_graph()), "seed {seed}");
            assert!(
                rounds as u64 <= b,
                "seed {seed}: {rounds} rounds for {b} bits"
            );
        }
    }

    #[test]
    fn non_dyadic_is_routed_to_sampling() {
        let m = gen_doubly_stochastic(9, 3, 5).unwrap();
        assert_eq!(m.bits(), None);
        assert!(matches!(
            bvn_match_bits(&m),
            Err(Error::UnsupportedInput(_))
        ));
        let (matching, _fallback) = bvn_match_sampled(&m, &SamplerConfig::default()).unwrap();
        assert!(matching.is_perfect(&m.support_graph()));
    }

    #[test]
    fn sampled_method_stays_in_support_across_seeds() {
        for seed in 0..40 {
            let m = gen_doubly_stochastic(12, 4, seed).unwrap();
            let cfg = SamplerConfig {
                seed,
                ..SamplerConfig::default()
            };
            let (matching, _) = bvn_match_sampled(&m, &cfg).unwrap();
            let g = m.support_graph();
            matching.check_against(&g).unwrap();
            assert!(matching.is_perfect(&g), "seed {seed}");
        }
    }

    #[test]
    fn decomposition_reconstructs_the_matrix() {
        for seed in 0..20 {
            let k = 3 + (seed as usize % 5);
            let m = gen_doubly_stochastic(10, k, seed).unwrap();
            let parts = bvn_decompose(&m).unwrap();
            let total: Rational = parts
                .iter()
                .map(|(c, _)| c.clone())
                .fold(Rational::zero(), |a, b| a + b);
            assert_eq!(total, Rational::one(), "seed {seed}");
            // Rebuild the matrix from the weighted permutations.
            let mut rebuilt: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
            for (c, matching) in &parts {
                for (p, q) in matching.pairs() {
                    *rebuilt.entry((p, q)).or_insert_with(Rational::zero) += c.clone();
                }
            }
            rebuilt.retain(|_, v| !v.is_zero());
            let original: BTreeMap<(usize, usize), Rational> = m
                .entries()
                .iter()
                .map(|(i, j, v)| ((*i, *j), v.clone()))
                .collect();
            assert_eq!(rebuilt, original, "seed {seed}");
        }
    }

    #[test]
    fn decomposition_of_permutation_is_itself() {
        let m = DoublyStochasticMatrix::from_permutation(&[1, 2, 0]).unwrap();
        let parts = bvn_decompose(&m).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, Rational::one());
        assert_eq!(parts[0].1.pairs(), vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn halving_base_case_returns_the_matching() {
        let g = BipartiteGraph::new(3, 3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let out = euler_halve(&g).unwrap();
        assert_eq!(out.depth, 0);
        assert_eq!(out.edge_touches, 0);
        assert_eq!(out.matching.pairs(), vec![(0, 1), (1, 2), (2, 0)]);
    }

    #[test]
    fn halving_a_single_cycle_keeps_alternate_edges() {
        // Degree-2 graph forming one cycle through all 2n vertices.
        let n = 6;
        let mut edges = Vec::new();
        for i in 0..n {
            edges.push((i, i));
            edges.push((i, (i + 1) % n));
        }
        let g = BipartiteGraph::new(n, n, &edges).unwrap();
        let out = euler_halve(&g).unwrap();
        assert_eq!(out.depth, 1);
        assert_eq!(out.edge_touches, 2 * n);
        assert!(out.matching.is_perfect(&g));
    }

    #[test]
    fn halving_runs_log_depth_with_linear_touches() {
        let g = gen_regular(64, 8, 11).unwrap();
        let out = euler_halve(&g).unwrap();
        assert_eq!(out.depth, 3);
        assert!(out.matching.is_perfect(&g));
        // m + m/2 + m/4 < 2m.
        assert!(out.edge_touches < 2 * g.num_edges());
    }

    #[test]
    fn halving_rejects_other_degrees() {
        let g = gen_regular(4, 3, 0).unwrap();
        assert!(matches!(
            euler_halve(&g),
            Err(Error::InvalidParameters(_))
        ));
        let ir = BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 1)]).unwrap();
        assert!(euler_halve(&ir).is_err());
    }

    #[test]
    fn matrix_text_round_trips() {
        let m = gen_doubly_stochastic(6, 4, 9).unwrap();
        let text = format_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back, m);
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2\n0 0 1\n0 1 1\n").is_err());
        assert!(parse_matrix("1\n0 0 one\n").is_err());
        let commented = "# demo\n1\n0 0 1 # unit\n";
        assert_eq!(parse_matrix(commented).unwrap().n(), 1);
    }
}
