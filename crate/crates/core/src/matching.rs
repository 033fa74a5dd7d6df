//! Hopcroft-Karp maximum bipartite matching, instrumented: explicit
//! alternating level graphs, per-phase statistics, and warm-started
//! completion of partial matchings.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use serde::Serialize;

use crate::graph::BipartiteGraph;
use crate::{Error, Result};

/// A partial matching stored as mutually inverse partner maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    left_partner: Vec<Option<usize>>,
    right_partner: Vec<Option<usize>>,
}

impl Matching {
    /// The empty matching on the vertex set of `g`.
    pub fn empty(g: &BipartiteGraph) -> Self {
        Self {
            left_partner: vec![None; g.n_left()],
            right_partner: vec![None; g.n_right()],
        }
    }

    /// Builds a matching from explicit `(left, right)` pairs.
    pub fn from_pairs(g: &BipartiteGraph, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::empty(g);
        for &(p, q) in pairs {
            if p >= g.n_left() || q >= g.n_right() {
                return Err(Error::InvalidInput(format!("pair ({p}, {q}) out of range")));
            }
            if m.left_partner[p].is_some() || m.right_partner[q].is_some() {
                return Err(Error::InvalidInput(format!(
                    "pair ({p}, {q}) reuses an already matched vertex"
                )));
            }
            m.left_partner[p] = Some(q);
            m.right_partner[q] = Some(p);
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.left_partner.iter().flatten().count()
    }

    pub fn left_partner(&self, p: usize) -> Option<usize> {
        self.left_partner[p]
    }

    pub fn right_partner(&self, q: usize) -> Option<usize> {
        self.right_partner[q]
    }

    /// Matched pairs ordered by left vertex.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.left_partner
            .iter()
            .enumerate()
            .filter_map(|(p, q)| q.map(|q| (p, q)))
            .collect()
    }

    /// Checks the partner maps are mutually inverse and every matched pair
    /// is an actual edge of `g`.
    pub fn check_against(&self, g: &BipartiteGraph) -> Result<()> {
        if self.left_partner.len() != g.n_left() || self.right_partner.len() != g.n_right() {
            return Err(Error::InvalidInput(
                "matching sized for a different graph".into(),
            ));
        }
        for (p, q) in self.pairs() {
            if self.right_partner[q] != Some(p) {
                return Err(Error::InvalidInput(format!(
                    "partner maps disagree at pair ({p}, {q})"
                )));
            }
            if !g.adj_left(p).iter().any(|&e| g.edge(e).q == q) {
                return Err(Error::InvalidInput(format!(
                    "matched pair ({p}, {q}) is not an edge"
                )));
            }
        }
        let right_count = self.right_partner.iter().flatten().count();
        if right_count != self.size() {
            return Err(Error::InvalidInput(
                "partner maps have inconsistent sizes".into(),
            ));
        }
        Ok(())
    }

    /// True when every vertex on both sides is matched.
    pub fn is_perfect(&self, g: &BipartiteGraph) -> bool {
        g.n_left() == g.n_right() && self.size() == g.n_left()
    }
}

/// Why level-graph construction stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Termination {
    /// The newest right layer contains an unmatched vertex: augmenting paths
    /// of length `2L - 1` exist.
    FreeVertexFound,
    /// The frontier emptied out: the matching is maximum.
    FrontierEmpty,
}

/// The alternating BFS layering rooted at the unmatched left vertices.
///
/// `a_layers[0]` is the unmatched left vertices; `b_layers[j]` (for
/// `1 <= j <= l`) collects the right vertices first reached at distance `j`,
/// and `a_layers[j]` holds their matched partners. Construction stops at the
/// first layer containing an unmatched right vertex, or when a layer comes
/// up empty.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    pub a_layers: Vec<Vec<usize>>,
    pub b_layers: Vec<Vec<usize>>,
    pub l: usize,
    pub terminated_by: Termination,
    /// BFS layer of each left vertex, if reached.
    pub left_level: Vec<Option<usize>>,
    /// BFS layer of each right vertex, if reached.
    pub right_level: Vec<Option<usize>>,
}

impl LevelGraph {
    /// Length in edges of the shortest augmenting path, when one exists.
    pub fn shortest_path_len(&self) -> Option<usize> {
        matches!(self.terminated_by, Termination::FreeVertexFound).then(|| 2 * self.l - 1)
    }
}

/// Builds the alternating level graph for `m` on `g`.
pub fn build_level_graph(g: &BipartiteGraph, m: &Matching) -> Result<LevelGraph> {
    m.check_against(g)?;
    let mut left_level: Vec<Option<usize>> = vec![None; g.n_left()];
    let mut right_level: Vec<Option<usize>> = vec![None; g.n_right()];

    let a0: Vec<usize> = (0..g.n_left()).filter(|&p| m.left_partner(p).is_none()).collect();
    for &p in &a0 {
        left_level[p] = Some(0);
    }
    let mut a_layers = vec![a0];
    let mut b_layers: Vec<Vec<usize>> = vec![Vec::new()];

    let mut j = 0;
    loop {
        // Next right layer: neighbors of A_j not already used by B_1..B_j.
        let mut next_b: Vec<usize> = Vec::new();
        for &p in &a_layers[j] {
            for &e in g.adj_left(p) {
                let q = g.edge(e).q;
                if right_level[q].is_none() {
                    right_level[q] = Some(j + 1);
                    next_b.push(q);
                }
            }
        }
        next_b.sort_unstable();
        if next_b.is_empty() {
            return Ok(LevelGraph {
                a_layers,
                b_layers,
                l: j,
                terminated_by: Termination::FrontierEmpty,
                left_level,
                right_level,
            });
        }
        let has_free = next_b.iter().any(|&q| m.right_partner(q).is_none());
        let next_a: Vec<usize> = next_b
            .iter()
            .filter_map(|&q| m.right_partner(q))
            .collect();
        for &p in &next_a {
            left_level[p] = Some(j + 1);
        }
        b_layers.push(next_b);
        a_layers.push(next_a);
        j += 1;
        if has_free {
            return Ok(LevelGraph {
                a_layers,
                b_layers,
                l: j,
                terminated_by: Termination::FreeVertexFound,
                left_level,
                right_level,
            });
        }
    }
}

/// Statistics for one Hopcroft-Karp phase.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PhaseStats {
    /// 1-based phase number.
    pub phase: usize,
    /// Length in edges of the shortest augmenting paths this phase used.
    pub path_length: usize,
    /// Number of vertex-disjoint augmenting paths applied.
    pub augmentations: usize,
    /// Matching size after the phase.
    pub matching_size: usize,
    /// Sizes of the right layers `B_1..B_L`.
    pub b_layer_sizes: Vec<usize>,
}

/// Finds a maximal set of vertex-disjoint shortest augmenting paths in the
/// level graph by depth-first search and applies them all. Returns the new
/// matching and the number of paths applied (always >= 1).
///
/// Fails with [`Error::NoAugmentingPath`] when the matching is already
/// maximum.
pub fn augment_phase(g: &BipartiteGraph, m: &Matching) -> Result<(Matching, usize)> {
    let level = build_level_graph(g, m)?;
    let (out, count) = run_phase(g, m.clone(), &level)?;
    debug_assert!(out.check_against(g).is_ok());
    Ok((out, count))
}

/// DFS pass over an already-built level graph. Factored out so the main loop
/// can reuse the level graph it built for the termination check.
fn run_phase(g: &BipartiteGraph, mut m: Matching, level: &LevelGraph) -> Result<(Matching, usize)> {
    if level.terminated_by == Termination::FrontierEmpty {
        return Err(Error::NoAugmentingPath);
    }
    let mut visited_left = vec![false; g.n_left()];
    let mut visited_right = vec![false; g.n_right()];
    let mut count = 0;

    for &start in &level.a_layers[0] {
        if visited_left[start] {
            continue;
        }
        visited_left[start] = true;
        // Iterative DFS: stack entries are (left vertex, next adjacency slot);
        // `path` holds the (left, right) unmatched edges taken so far.
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        let mut path: Vec<(usize, usize)> = Vec::new();
        let mut complete = false;

        while let Some(&mut (p, ref mut slot)) = stack.last_mut() {
            let lvl = level.left_level[p].expect("stacked vertices are layered");
            let mut advanced = false;
            while *slot < g.adj_left(p).len() {
                let e = g.adj_left(p)[*slot];
                *slot += 1;
                let q = g.edge(e).q;
                if visited_right[q] || level.right_level[q] != Some(lvl + 1) {
                    continue;
                }
                visited_right[q] = true;
                match m.right_partner(q) {
                    None => {
                        // Free vertex: the path is complete.
                        path.push((p, q));
                        complete = true;
                    }
                    Some(next_p) => {
                        debug_assert_eq!(level.left_level[next_p], Some(lvl + 1));
                        visited_left[next_p] = true;
                        path.push((p, q));
                        stack.push((next_p, 0));
                    }
                }
                advanced = true;
                break;
            }
            if complete {
                break;
            }
            if !advanced {
                stack.pop();
                path.pop();
            }
        }

        if complete {
            // Flipping the path: every interior vertex receives exactly one
            // new partner, which overwrites its old entry in both maps.
            for &(p, q) in &path {
                m.left_partner[p] = Some(q);
                m.right_partner[q] = Some(p);
            }
            count += 1;
        }
    }
    if count == 0 {
        // A free vertex exists in the last layer, so the DFS must reach it.
        return Err(Error::NoAugmentingPath);
    }
    Ok((m, count))
}

/// Maximum matching with per-phase instrumentation, starting from scratch.
pub fn hopcroft_karp(g: &BipartiteGraph) -> (Matching, Vec<PhaseStats>) {
    complete_matching(g, Matching::empty(g)).expect("empty matching is always consistent")
}

/// Frozen slack factor for [`early_phase_path_bound`]: generous enough that
/// two-stage-sampled regular graphs never trip it in calibration runs.
pub const PATH_LENGTH_MONITOR_K: f64 = 10.0;

/// Monitor bound `K * n * ln d / (d * ln ln n)` on the shortest augmenting
/// path length of any phase that starts while the matching still misses more
/// than `ceil(2n/d)` left vertices. Returns infinity when the formula
/// degenerates (`d < 2` or `n <= 3`), making the monitor vacuous there.
pub fn early_phase_path_bound(n: usize, d: usize) -> f64 {
    if d < 2 || n <= 3 {
        return f64::INFINITY;
    }
    let lln = libm::log(crate::ln(n));
    if lln <= 0.0 {
        return f64::INFINITY;
    }
    PATH_LENGTH_MONITOR_K * n as f64 * crate::ln(d) / (d as f64 * lln)
}

/// Checks a phase log against [`early_phase_path_bound`]: every phase whose
/// starting matching size is below `n - ceil(2n/d)` must have used shortest
/// paths no longer than the bound. Later phases (the last few augmentations)
/// are exempt.
pub fn phases_within_early_path_bound(n: usize, d: usize, stats: &[PhaseStats]) -> bool {
    let bound = early_phase_path_bound(n, d);
    if bound.is_infinite() {
        return true;
    }
    let cutoff = n.saturating_sub((2 * n + d - 1) / d);
    stats.iter().all(|s| {
        let start_size = s.matching_size - s.augmentations;
        start_size >= cutoff || (s.path_length as f64) <= bound
    })
}

/// Extends `start` to a maximum matching, recording one [`PhaseStats`] per
/// phase. The start matching must be consistent with `g`.
pub fn complete_matching(g: &BipartiteGraph, start: Matching) -> Result<(Matching, Vec<PhaseStats>)> {
    start.check_against(g)?;
    let mut m = start;
    let mut stats = Vec::new();
    loop {
        let level = build_level_graph(g, &m)?;
        if level.terminated_by == Termination::FrontierEmpty {
            return Ok((m, stats));
        }
        let path_length = level.shortest_path_len().expect("free vertex found");
        let (next, count) = run_phase(g, m, &level)?;
        m = next;
        stats.push(PhaseStats {
            phase: stats.len() + 1,
            path_length,
            augmentations: count,
            matching_size: m.size(),
            b_layer_sizes: level.b_layers[1..].iter().map(Vec::len).collect(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{brute_max_matching, gen_regular, BipartiteGraph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::new(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
    }

    fn c8() -> BipartiteGraph {
        BipartiteGraph::new(
            4,
            4,
            &[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (0, 3)],
        )
        .unwrap()
    }

    #[test]
    fn level_graph_from_empty_matching() {
        let g = k22();
        let level = build_level_graph(&g, &Matching::empty(&g)).unwrap();
        assert_eq!(level.terminated_by, Termination::FreeVertexFound);
        assert_eq!(level.l, 1);
        assert_eq!(level.a_layers[0], vec![0, 1]);
        assert_eq!(level.b_layers[1], vec![0, 1]);
        assert_eq!(level.shortest_path_len(), Some(1));
    }

    #[test]
    fn level_graph_on_perfect_matching_is_empty() {
        let g = k22();
        let m = Matching::from_pairs(&g, &[(0, 0), (1, 1)]).unwrap();
        let level = build_level_graph(&g, &m).unwrap();
        assert_eq!(level.terminated_by, Termination::FrontierEmpty);
        assert_eq!(level.l, 0);
        assert_eq!(level.a_layers.len(), 1);
        assert!(level.a_layers[0].is_empty());
    }

    #[test]
    fn level_graph_depth_on_eight_cycle() {
        // Matched pairs (1,0), (2,2), (3,3) leave left 0 and right 1 free;
        // the alternating distance from left 0 to right 1 crosses two layers.
        let g = c8();
        let m = Matching::from_pairs(&g, &[(1, 0), (2, 2), (3, 3)]).unwrap();
        let level = build_level_graph(&g, &m).unwrap();
        assert_eq!(level.terminated_by, Termination::FreeVertexFound);
        assert_eq!(level.l, 2);
        assert_eq!(level.b_layers[1], vec![0, 3]);
        assert_eq!(level.b_layers[2], vec![1, 2]);
        assert_eq!(level.shortest_path_len(), Some(3));
    }

    #[test]
    fn augment_phase_on_three_edge_path() {
        // Path p0 - q0 - p1 - q1 with (p1, q0) matched: one augmenting path
        // of length 3 completes the matching.
        let g = BipartiteGraph::new(2, 2, &[(0, 0), (1, 0), (1, 1)]).unwrap();
        let m = Matching::from_pairs(&g, &[(1, 0)]).unwrap();
        let level = build_level_graph(&g, &m).unwrap();
        assert_eq!(level.shortest_path_len(), Some(3));
        let (m2, count) = augment_phase(&g, &m).unwrap();
        assert_eq!(count, 1);
        assert_eq!(m2.size(), 2);
        assert!(m2.is_perfect(&g));
    }

    #[test]
    fn augment_phase_errors_on_maximum_matching() {
        let g = k22();
        let m = Matching::from_pairs(&g, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(augment_phase(&g, &m), Err(Error::NoAugmentingPath));
    }

    #[test]
    fn hopcroft_karp_completes_regular_graphs() {
        for seed in 0..40 {
            let g = gen_regular(12, 3, seed).unwrap();
            let (m, stats) = hopcroft_karp(&g);
            assert!(m.is_perfect(&g), "regular graphs always have perfect matchings");
            assert!(!stats.is_empty());
            m.check_against(&g).unwrap();
        }
    }

    #[test]
    fn hopcroft_karp_matches_exhaustive_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..150 {
            let nl = rng.gen_range(1..=8);
            let nr = rng.gen_range(1..=8);
            let mut edges = Vec::new();
            for p in 0..nl {
                for q in 0..nr {
                    if rng.gen_bool(0.35) {
                        edges.push((p, q));
                    }
                }
            }
            let g = BipartiteGraph::new(nl, nr, &edges).unwrap();
            let (m, _) = hopcroft_karp(&g);
            m.check_against(&g).unwrap();
            assert_eq!(m.size(), brute_max_matching(&g).unwrap());
        }
    }

    #[test]
    fn phase_path_lengths_strictly_increase() {
        let mut rng = ChaCha8Rng::seed_from_u64(4242);
        for _ in 0..60 {
            let n = rng.gen_range(2..=14);
            let mut edges = Vec::new();
            for p in 0..n {
                for q in 0..n {
                    if rng.gen_bool(0.25) {
                        edges.push((p, q));
                    }
                }
            }
            let g = BipartiteGraph::new(n, n, &edges).unwrap();
            let (_, stats) = hopcroft_karp(&g);
            for pair in stats.windows(2) {
                assert!(
                    pair[0].path_length < pair[1].path_length,
                    "phase lengths must strictly increase: {stats:?}"
                );
            }
            for s in &stats {
                assert_eq!(s.path_length % 2, 1, "augmenting paths have odd length");
            }
        }
    }

    #[test]
    fn complete_matching_uses_warm_start() {
        let g = gen_regular(16, 4, 5).unwrap();
        let (full, _) = hopcroft_karp(&g);
        assert!(full.is_perfect(&g));
        // Drop three pairs and complete again.
        let mut pairs = full.pairs();
        pairs.truncate(13);
        let partial = Matching::from_pairs(&g, &pairs).unwrap();
        let (done, stats) = complete_matching(&g, partial).unwrap();
        assert!(done.is_perfect(&g));
        let total_augs: usize = stats.iter().map(|s| s.augmentations).sum();
        assert!(total_augs <= 3, "completion needs at most the deficiency");
    }

    #[test]
    fn complete_matching_rejects_inconsistent_start() {
        let g = k22();
        let other = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).unwrap();
        let m = Matching::from_pairs(&other, &[(2, 2)]).unwrap();
        assert!(complete_matching(&g, m).is_err());
    }

    #[test]
    fn matching_from_pairs_validates() {
        let g = k22();
        assert!(Matching::from_pairs(&g, &[(0, 0), (1, 0)]).is_err());
        assert!(Matching::from_pairs(&g, &[(0, 5)]).is_err());
        // A non-edge pair passes construction but fails the graph check.
        let h = BipartiteGraph::new(2, 2, &[(0, 0)]).unwrap();
        let m = Matching::from_pairs(&h, &[(1, 1)]).unwrap();
        assert!(m.check_against(&h).is_err());
    }

    #[test]
    fn deterministic_across_runs() {
        let g = gen_regular(20, 5, 77).unwrap();
        let (m1, s1) = hopcroft_karp(&g);
        let (m2, s2) = hopcroft_karp(&g);
        assert_eq!(m1, m2);
        assert_eq!(s1, s2);
    }

    #[test]
    fn early_path_bound_degenerates_gracefully() {
        assert!(early_phase_path_bound(128, 1).is_infinite());
        assert!(early_phase_path_bound(2, 8).is_infinite());
        let b = early_phase_path_bound(128, 16);
        assert!(b > 0.0 && b.is_finite());
        // K * 128 * ln 16 / (16 * ln ln 128) = 10 * 128 * 2.7726 / (16 * 1.5790)
        assert!((b - 140.47).abs() < 0.1);
    }

    #[test]
    fn early_path_monitor_flags_only_early_long_phases() {
        let fake = |path_length, matching_size, augmentations| PhaseStats {
            phase: 1,
            path_length,
            augmentations,
            matching_size,
            b_layer_sizes: vec![],
        };
        // n=128, d=16: bound ~140, cutoff = 128 - 16 = 112.
        assert!(phases_within_early_path_bound(128, 16, &[fake(1, 100, 100)]));
        assert!(!phases_within_early_path_bound(
            128,
            16,
            &[fake(141, 100, 100)]
        ));
        // Same long path starting at size 112 is past the cutoff: exempt.
        assert!(phases_within_early_path_bound(
            128,
            16,
            &[fake(141, 113, 1)]
        ));
        // Degenerate degree: monitor is vacuous.
        assert!(phases_within_early_path_bound(128, 1, &[fake(9999, 1, 1)]));
    }

    #[test]
    fn early_path_monitor_passes_on_regular_runs() {
        for seed in 0..10 {
            let g = gen_regular(128, 16, seed).unwrap();
            let (m, stats) = hopcroft_karp(&g);
            assert!(m.is_perfect(&g));
            assert!(phases_within_early_path_bound(128, 16, &stats));
        }
    }
}
