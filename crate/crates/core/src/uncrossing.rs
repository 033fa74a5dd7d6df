//! Thickness of vertex pairs and the uncrossing of pair collections: shrink
//! a collection whose witness sets map onto shared cuts into one where at
//! most two pairs share any cut, preserving per-pair thickness. Exponential
//! in places by design — this module is a desk-scale checking laboratory,
//! never on a hot path.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::{cut_set, witness_set, BipartiteGraph, VertexPair};
use crate::{ratio, Error, Rational, Result};

/// Side-size cap for the exponential uncrossing search.
pub const UNCROSS_SIDE_CAP: usize = 8;

/// A graph with a nonnegative edge weight function and a distinguished set
/// of relevant edges; thickness is always judged against this triple.
#[derive(Debug, Clone)]
pub struct ThicknessContext<'a> {
    g: &'a BipartiteGraph,
    t: Vec<Rational>,
    relevant: BTreeSet<usize>,
}

impl<'a> ThicknessContext<'a> {
    pub fn new(
        g: &'a BipartiteGraph,
        t: Vec<Rational>,
        relevant: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if t.len() != g.num_edges() {
            return Err(Error::InvalidInput(format!(
                "expected {} edge weights, got {}",
                g.num_edges(),
                t.len()
            )));
        }
        if t.iter().any(|w| w < &Rational::zero()) {
            return Err(Error::InvalidInput(
                "edge weights must be nonnegative".to_string(),
            ));
        }
        let relevant: BTreeSet<usize> = relevant.into_iter().collect();
        if relevant.iter().any(|&e| e >= g.num_edges()) {
            return Err(Error::InvalidInput(
                "relevant edge id out of range".to_string(),
            ));
        }
        Ok(Self { g, t, relevant })
    }

    /// Unit weights, every edge relevant.
    pub fn uniform(g: &'a BipartiteGraph) -> Self {
        Self {
            g,
            t: (0..g.num_edges())
                .map(|_| Rational::from_integer(1.into()))
                .collect(),
            relevant: (0..g.num_edges()).collect(),
        }
    }

    pub fn graph(&self) -> &BipartiteGraph {
        self.g
    }

    pub fn is_relevant(&self, edge: usize) -> bool {
        self.relevant.contains(&edge)
    }

    /// Total weight of an edge set.
    pub fn weight(&self, edges: &[usize]) -> Rational {
        edges
            .iter()
            .fold(Rational::zero(), |acc, &e| acc + self.t[e].clone())
    }

    /// Total weight of the relevant members of an edge set.
    pub fn relevant_weight(&self, edges: &[usize]) -> Rational {
        edges
            .iter()
            .filter(|e| self.relevant.contains(e))
            .fold(Rational::zero(), |acc, &e| acc + self.t[e].clone())
    }

    /// Exact test of `t(W(A,B) ∩ E_R) > gamma * t(C(A,B))`.
    pub fn is_gamma_thick(&self, pair: &VertexPair, gamma: &Rational) -> Result<bool> {
        if gamma <= &Rational::zero() {
            return Err(Error::InvalidParameters(
                "thickness threshold must be positive".to_string(),
            ));
        }
        let w = self.relevant_weight(&witness_set(self.g, pair)?);
        let c = self.weight(&cut_set(self.g, pair)?);
        Ok(w > gamma * c)
    }
}

/// Free-function form of the thickness test.
pub fn is_gamma_thick(
    ctx: &ThicknessContext<'_>,
    pair: &VertexPair,
    gamma: &Rational,
) -> Result<bool> {
    ctx.is_gamma_thick(pair, gamma)
}

/// A collection of pairs together with the thickness threshold they are
/// judged against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCollection {
    pub pairs: Vec<VertexPair>,
    pub gamma: Rational,
}

impl PairCollection {
    pub fn new(pairs: impl Into<Vec<VertexPair>>, gamma: Rational) -> Self {
        Self {
            pairs: pairs.into(),
            gamma,
        }
    }

    /// True when every pair passes the thickness test.
    pub fn is_thick(&self, ctx: &ThicknessContext<'_>) -> Result<bool> {
        for p in &self.pairs {
            if !ctx.is_gamma_thick(p, &self.gamma)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Total order on edge sets that respects cardinality: compare sizes first,
/// then the sorted id lists lexicographically.
pub fn cut_order(a: &[usize], b: &[usize]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The overlap pattern of the collection at one vertex: bit `i` is set when
/// the vertex belongs to the i-th pair's side.
fn side_patterns(sets: &[BTreeSet<usize>], n: usize) -> Vec<u64> {
    (0..n)
        .map(|v| {
            sets.iter()
                .enumerate()
                .fold(0u64, |acc, (i, s)| acc | ((s.contains(&v) as u64) << i))
        })
        .collect()
}

/// Pattern bookkeeping for a collection sharing a single cut: every vertex
/// falls in exactly one overlap region per side, indexed by its bit vector.
struct VennData {
    j: usize,
    mask: u64,
    left_pat: Vec<u64>,
    right_pat: Vec<u64>,
    /// Patterns realized by at least one vertex on either side, sorted.
    realized: Vec<u64>,
}

impl VennData {
    fn build(g: &BipartiteGraph, pairs: &[VertexPair]) -> Result<Self> {
        let j = pairs.len();
        if j >= 64 {
            return Err(Error::InstanceTooLarge(format!(
                "{} pairs exceed the 63-pair overlap-pattern limit",
                j
            )));
        }
        let a_sets: Vec<BTreeSet<usize>> = pairs
            .iter()
            .map(|p| p.a().iter().copied().collect())
            .collect();
        let b_sets: Vec<BTreeSet<usize>> = pairs
            .iter()
            .map(|p| p.b().iter().copied().collect())
            .collect();
        let left_pat = side_patterns(&a_sets, g.n_left());
        let right_pat = side_patterns(&b_sets, g.n_right());
        let realized: BTreeSet<u64> = left_pat.iter().chain(right_pat.iter()).copied().collect();
        Ok(Self {
            j,
            mask: (1u64 << j) - 1,
            left_pat,
            right_pat,
            realized: realized.into_iter().collect(),
        })
    }

    fn complement(&self, b: u64) -> u64 {
        !b & self.mask
    }

    /// The overlap-region pair for pattern `b` (either side may be empty).
    fn pair_for(&self, b: u64) -> VertexPair {
        let a: Vec<usize> = (0..self.left_pat.len())
            .filter(|&u| self.left_pat[u] == b)
            .collect();
        let bb: Vec<usize> = (0..self.right_pat.len())
            .filter(|&v| self.right_pat[v] == b)
            .collect();
        VertexPair::new(a, bb)
    }
}

/// Structural facts that hold for the overlap regions of any collection of
/// pairs sharing a single cut, checked edge-set-exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VennStructureReport {
    /// Region witness sets are pairwise disjoint.
    pub witness_disjoint_ok: bool,
    /// Each original witness set is exactly the union of the region witness
    /// sets whose pattern includes it.
    pub witness_union_ok: bool,
    /// Complementary patterns have identical cuts.
    pub cut_symmetry_ok: bool,
    /// Cuts of non-complementary distinct patterns are disjoint.
    pub cut_disjoint_ok: bool,
    /// Every original cut (the shared cut) is exactly the union of the
    /// region cuts whose pattern includes it.
    pub cut_union_ok: bool,
    /// A region's witness set and its complement's witness set partition the
    /// region's cut.
    pub witness_pair_cut_ok: bool,
    /// Every edge leaving a region lands in that region's mirror or its
    /// complement's mirror on the other side.
    pub edge_rule_ok: bool,
}

impl VennStructureReport {
    pub fn all_ok(&self) -> bool {
        self.witness_disjoint_ok
            && self.witness_union_ok
            && self.cut_symmetry_ok
            && self.cut_disjoint_ok
            && self.cut_union_ok
            && self.witness_pair_cut_ok
            && self.edge_rule_ok
    }
}

fn shared_cut(g: &BipartiteGraph, pairs: &[VertexPair]) -> Result<Vec<usize>> {
    let first = cut_set(g, &pairs[0])?;
    for p in &pairs[1..] {
        if cut_set(g, p)? != first {
            return Err(Error::InvalidCollection(
                "pairs do not share a single cut".to_string(),
            ));
        }
    }
    Ok(first)
}

fn require_distinct_witnesses(g: &BipartiteGraph, pairs: &[VertexPair]) -> Result<Vec<Vec<usize>>> {
    let witnesses: Vec<Vec<usize>> = pairs
        .iter()
        .map(|p| witness_set(g, p))
        .collect::<Result<_>>()?;
    let mut seen: BTreeSet<&[usize]> = BTreeSet::new();
    for w in &witnesses {
        if !seen.insert(w.as_slice()) {
            return Err(Error::InvalidCollection(
                "two pairs share both witness set and cut".to_string(),
            ));
        }
    }
    Ok(witnesses)
}

/// Verifies the overlap-region structure of a single-cut collection:
/// disjointness and exact-union identities of region witness sets and cuts,
/// plus the per-edge routing rule.
pub fn check_venn_structure(g: &BipartiteGraph, pairs: &[VertexPair]) -> Result<VennStructureReport> {
    if pairs.len() < 2 {
        return Err(Error::InvalidCollection(
            "overlap structure needs at least two pairs".to_string(),
        ));
    }
    for p in pairs {
        p.check_in_range(g)?;
    }
    let s: BTreeSet<usize> = shared_cut(g, pairs)?.into_iter().collect();
    let witnesses = require_distinct_witnesses(g, pairs)?;
    let data = VennData::build(g, pairs)?;

    // Region pairs and their witness/cut sets for every realized pattern and
    // every complement of one (all other patterns give empty regions).
    let keys: BTreeSet<u64> = data
        .realized
        .iter()
        .flat_map(|&b| [b, data.complement(b)])
        .collect();
    let mut region: BTreeMap<u64, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for &b in &keys {
        let pair = data.pair_for(b);
        let w: BTreeSet<usize> = witness_set(g, &pair)?.into_iter().collect();
        let c: BTreeSet<usize> = cut_set(g, &pair)?.into_iter().collect();
        region.insert(b, (w, c));
    }

    let mut witness_disjoint_ok = true;
    let mut cut_disjoint_ok = true;
    for (x, &bx) in data.realized.iter().enumerate() {
        for &by in &data.realized[x + 1..] {
            if !region[&bx].0.is_disjoint(&region[&by].0) {
                witness_disjoint_ok = false;
            }
            if by != data.complement(bx) && !region[&bx].1.is_disjoint(&region[&by].1) {
                cut_disjoint_ok = false;
            }
        }
    }

    let mut witness_union_ok = true;
    let mut cut_union_ok = true;
    for i in 0..data.j {
        let mut w_union: BTreeSet<usize> = BTreeSet::new();
        let mut c_union: BTreeSet<usize> = BTreeSet::new();
        for &b in &data.realized {
            if b >> i & 1 == 1 {
                w_union.extend(region[&b].0.iter().copied());
                c_union.extend(region[&b].1.iter().copied());
            }
        }
        let w_i: BTreeSet<usize> = witnesses[i].iter().copied().collect();
        if w_union != w_i {
            witness_union_ok = false;
        }
        if c_union != s {
            cut_union_ok = false;
        }
    }

    let mut cut_symmetry_ok = true;
    let mut witness_pair_cut_ok = true;
    for &b in &data.realized {
        let bc = data.complement(b);
        if region[&b].1 != region[&bc].1 {
            cut_symmetry_ok = false;
        }
        let mut joined: BTreeSet<usize> = region[&b].0.clone();
        joined.extend(region[&bc].0.iter().copied());
        if joined != region[&b].1 {
            witness_pair_cut_ok = false;
        }
    }

    let mut edge_rule_ok = true;
    for e in 0..g.num_edges() {
        let edge = g.edge(e);
        let bu = data.left_pat[edge.p];
        let bv = data.right_pat[edge.q];
        if bv != bu && bv != data.complement(bu) {
            edge_rule_ok = false;
        }
    }

    Ok(VennStructureReport {
        witness_disjoint_ok,
        witness_union_ok,
        cut_symmetry_ok,
        cut_disjoint_ok,
        cut_union_ok,
        witness_pair_cut_ok,
        edge_rule_ok,
    })
}

/// Uncrosses a collection whose pairs all share one cut `S` by keeping the
/// thick overlap-region pairs with a nonzero pattern. Requires at least two
/// pairs, a genuinely shared cut, and pairwise-distinct witness sets; every
/// input pair must be thick. With more than two input pairs, every output
/// cut is a strict subset of `S`.
pub fn venn_uncross_single_cut(
    ctx: &ThicknessContext<'_>,
    r: &PairCollection,
) -> Result<PairCollection> {
    if r.pairs.len() < 2 {
        return Err(Error::InvalidCollection(
            "single-cut uncrossing needs at least two pairs".to_string(),
        ));
    }
    for p in &r.pairs {
        p.check_in_range(ctx.g)?;
        if !ctx.is_gamma_thick(p, &r.gamma)? {
            return Err(Error::InvalidCollection(
                "input pair is not thick at the collection threshold".to_string(),
            ));
        }
    }
    let structure = check_venn_structure(ctx.g, &r.pairs)?;
    if !structure.all_ok() {
        return Err(Error::InvalidCollection(
            "overlap-region identities failed; the pairs do not share a single cut".to_string(),
        ));
    }
    let s: BTreeSet<usize> = shared_cut(ctx.g, &r.pairs)?.into_iter().collect();
    let data = VennData::build(ctx.g, &r.pairs)?;
    let mut out = Vec::new();
    for &b in &data.realized {
        if b == 0 {
            continue;
        }
        let pair = data.pair_for(b);
        if ctx.is_gamma_thick(&pair, &r.gamma)? {
            if r.pairs.len() > 2 {
                let c: BTreeSet<usize> = cut_set(ctx.g, &pair)?.into_iter().collect();
                debug_assert!(
                    c.is_subset(&s) && c != s,
                    "output cut must shrink strictly below the shared cut"
                );
            }
            out.push(pair);
        }
    }
    out.sort();
    out.dedup();
    Ok(PairCollection::new(out, r.gamma.clone()))
}

struct Item {
    pair: VertexPair,
    witness: Vec<usize>,
    cut: Vec<usize>,
}

fn make_items(g: &BipartiteGraph, pairs: Vec<VertexPair>) -> Result<Vec<Item>> {
    let mut items = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let witness = witness_set(g, &pair)?;
        let cut = cut_set(g, &pair)?;
        items.push(Item { pair, witness, cut });
    }
    // Deterministic order: by cut, then witness, then the pair itself; drop
    // redundant entries (same witness set and same cut).
    items.sort_by(|x, y| {
        cut_order(&x.cut, &y.cut)
            .then_with(|| cut_order(&x.witness, &y.witness))
            .then_with(|| x.pair.cmp(&y.pair))
    });
    items.dedup_by(|a, b| a.witness == b.witness && a.cut == b.cut);
    Ok(items)
}

fn uncross_rec(
    ctx: &ThicknessContext<'_>,
    pairs: Vec<VertexPair>,
    gamma: &Rational,
) -> Result<Vec<VertexPair>> {
    let items = make_items(ctx.g, pairs)?;
    if items.len() <= 1 {
        return Ok(items.into_iter().map(|i| i.pair).collect());
    }
    let all_distinct = items.windows(2).all(|w| w[0].cut != w[1].cut);
    if all_distinct {
        return Ok(items.into_iter().map(|i| i.pair).collect());
    }
    // Items are sorted by cut, so the largest cut under the ordering is last.
    let s = items.last().expect("nonempty").cut.clone();
    let mut sharing = Vec::new();
    let mut rest = Vec::new();
    for item in items {
        if item.cut == s {
            sharing.push(item.pair);
        } else {
            rest.push(item.pair);
        }
    }
    if sharing.len() <= 2 {
        let mut t = uncross_rec(ctx, rest, gamma)?;
        t.extend(sharing);
        Ok(t)
    } else {
        let shrunk = venn_uncross_single_cut(ctx, &PairCollection::new(sharing, gamma.clone()))?;
        rest.extend(shrunk.pairs);
        uncross_rec(ctx, rest, gamma)
    }
}

/// Uncrosses an arbitrary thick collection by repeatedly resolving the
/// largest shared cut: collections sharing it with more than two pairs are
/// replaced by their thick overlap-region pairs (whose cuts shrink
/// strictly), one or two sharers are kept as-is, and the remainder recurses.
/// The result is thick and passes [`verify_uncrossing`].
pub fn uncross(ctx: &ThicknessContext<'_>, r: &PairCollection) -> Result<PairCollection> {
    let g = ctx.graph();
    if g.n_left() > UNCROSS_SIDE_CAP || g.n_right() > UNCROSS_SIDE_CAP {
        return Err(Error::InstanceTooLarge(format!(
            "uncrossing is exponential; sides {}x{} exceed the cap of {}",
            g.n_left(),
            g.n_right(),
            UNCROSS_SIDE_CAP
        )));
    }
    for p in &r.pairs {
        p.check_in_range(g)?;
        if !ctx.is_gamma_thick(p, &r.gamma)? {
            return Err(Error::InvalidCollection(
                "input collection is not thick at its threshold".to_string(),
            ));
        }
    }
    let mut pairs = uncross_rec(ctx, r.pairs.clone(), &r.gamma)?;
    pairs.sort();
    pairs.dedup();
    Ok(PairCollection::new(pairs, r.gamma.clone()))
}

/// Checked properties of a candidate uncrossing: output thickness,
/// representation (each input pair has an output pair with contained witness
/// set and cut), cut coverage (each output cut sits inside some input cut),
/// and half-injectivity (no cut shared by three distinct output pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UncrossingReport {
    pub thick_ok: bool,
    pub p1_ok: bool,
    pub p2_ok: bool,
    pub p3_ok: bool,
}

impl UncrossingReport {
    /// Full uncrossing: all four properties.
    pub fn all_ok(&self) -> bool {
        self.thick_ok && self.p1_ok && self.p2_ok && self.p3_ok
    }

    /// Partial uncrossing: everything except half-injectivity.
    pub fn partial_ok(&self) -> bool {
        self.thick_ok && self.p1_ok && self.p2_ok
    }
}

/// Verifies `t_coll` as an uncrossing of `r` at `r.gamma`.
pub fn verify_uncrossing(
    ctx: &ThicknessContext<'_>,
    r: &PairCollection,
    t_coll: &PairCollection,
) -> Result<UncrossingReport> {
    let g = ctx.graph();
    let mut r_sets = Vec::with_capacity(r.pairs.len());
    for p in &r.pairs {
        let w: BTreeSet<usize> = witness_set(g, p)?.into_iter().collect();
        let c: BTreeSet<usize> = cut_set(g, p)?.into_iter().collect();
        r_sets.push((w, c));
    }
    let mut t_sets = Vec::with_capacity(t_coll.pairs.len());
    let mut thick_ok = true;
    for p in &t_coll.pairs {
        let w: BTreeSet<usize> = witness_set(g, p)?.into_iter().collect();
        let c: BTreeSet<usize> = cut_set(g, p)?.into_iter().collect();
        if !ctx.is_gamma_thick(p, &r.gamma)? {
            thick_ok = false;
        }
        t_sets.push((w, c));
    }
    let p1_ok = r_sets.iter().all(|(rw, rc)| {
        t_sets
            .iter()
            .any(|(tw, tc)| tw.is_subset(rw) && tc.is_subset(rc))
    });
    let p2_ok = t_sets
        .iter()
        .all(|(_, tc)| r_sets.iter().any(|(_, rc)| tc.is_subset(rc)));
    // Count distinct pairs per cut value.
    let mut by_cut: BTreeMap<Vec<usize>, BTreeSet<&VertexPair>> = BTreeMap::new();
    for (p, (_, c)) in t_coll.pairs.iter().zip(&t_sets) {
        by_cut
            .entry(c.iter().copied().collect())
            .or_default()
            .insert(p);
    }
    let p3_ok = by_cut.values().all(|group| group.len() <= 2);
    Ok(UncrossingReport {
        thick_ok,
        p1_ok,
        p2_ok,
        p3_ok,
    })
}

/// The weight-free single-cut construction: all overlap-region pairs with a
/// nonzero pattern and a nonempty cut, plus the map sending the i-th input
/// pair to the regions whose pattern has bit i set. The mapped regions
/// partition each input pair's witness set and cut exactly.
pub fn venn_combinatorial_uncross(
    g: &BipartiteGraph,
    pairs: &[VertexPair],
) -> Result<(Vec<VertexPair>, Vec<Vec<usize>>)> {
    if pairs.len() < 2 {
        return Err(Error::InvalidCollection(
            "single-cut uncrossing needs at least two pairs".to_string(),
        ));
    }
    for p in pairs {
        p.check_in_range(g)?;
    }
    shared_cut(g, pairs)?;
    require_distinct_witnesses(g, pairs)?;
    let data = VennData::build(g, pairs)?;
    let mut t = Vec::new();
    let mut t_patterns = Vec::new();
    for &b in &data.realized {
        if b == 0 {
            continue;
        }
        let pair = data.pair_for(b);
        if !cut_set(g, &pair)?.is_empty() {
            t.push(pair);
            t_patterns.push(b);
        }
    }
    let index_map = (0..data.j)
        .map(|i| {
            (0..t.len())
                .filter(|&k| t_patterns[k] >> i & 1 == 1)
                .collect()
        })
        .collect();
    Ok((t, index_map))
}

/// Checked properties of a candidate combinatorial uncrossing `(t, map)`
/// of `r`: per input pair, its mapped output pairs have pairwise-disjoint
/// witness sets, cuts, and vertex sets, are contained in the input pair,
/// and union exactly to its witness set and cut; globally, no cut is shared
/// by three distinct output pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CombinatorialUncrossingReport {
    pub witness_disjoint_ok: bool,
    pub cut_disjoint_ok: bool,
    pub vertex_disjoint_ok: bool,
    pub containment_ok: bool,
    pub union_ok: bool,
    pub half_injective_ok: bool,
}

impl CombinatorialUncrossingReport {
    pub fn all_ok(&self) -> bool {
        self.witness_disjoint_ok
            && self.cut_disjoint_ok
            && self.vertex_disjoint_ok
            && self.containment_ok
            && self.union_ok
            && self.half_injective_ok
    }
}

fn unified_vertex_set(g: &BipartiteGraph, pair: &VertexPair) -> BTreeSet<usize> {
    pair.a()
        .iter()
        .copied()
        .chain(pair.b().iter().map(|&q| g.n_left() + q))
        .collect()
}

/// Verifies `(t_coll, index_map)` as a combinatorial uncrossing of `r`.
pub fn verify_combinatorial_uncrossing(
    g: &BipartiteGraph,
    r: &[VertexPair],
    t_coll: &[VertexPair],
    index_map: &[Vec<usize>],
) -> Result<CombinatorialUncrossingReport> {
    if index_map.len() != r.len() {
        return Err(Error::InvalidInput(format!(
            "index map covers {} pairs, expected {}",
            index_map.len(),
            r.len()
        )));
    }
    if index_map
        .iter()
        .flatten()
        .any(|&k| k >= t_coll.len())
    {
        return Err(Error::InvalidInput(
            "index map entry out of range".to_string(),
        ));
    }
    let mut t_sets = Vec::with_capacity(t_coll.len());
    for p in t_coll {
        let w: BTreeSet<usize> = witness_set(g, p)?.into_iter().collect();
        let c: BTreeSet<usize> = cut_set(g, p)?.into_iter().collect();
        let v = unified_vertex_set(g, p);
        t_sets.push((w, c, v));
    }

    let mut witness_disjoint_ok = true;
    let mut cut_disjoint_ok = true;
    let mut vertex_disjoint_ok = true;
    let mut containment_ok = true;
    let mut union_ok = true;
    for (pair, image) in r.iter().zip(index_map) {
        let rw: BTreeSet<usize> = witness_set(g, pair)?.into_iter().collect();
        let rc: BTreeSet<usize> = cut_set(g, pair)?.into_iter().collect();
        let ra: BTreeSet<usize> = pair.a().iter().copied().collect();
        let rb: BTreeSet<usize> = pair.b().iter().copied().collect();
        for (x, &kx) in image.iter().enumerate() {
            for &ky in &image[x + 1..] {
                if !t_sets[kx].0.is_disjoint(&t_sets[ky].0) {
                    witness_disjoint_ok = false;
                }
                if !t_sets[kx].1.is_disjoint(&t_sets[ky].1) {
                    cut_disjoint_ok = false;
                }
                if !t_sets[kx].2.is_disjoint(&t_sets[ky].2) {
                    vertex_disjoint_ok = false;
                }
            }
        }
        let mut w_union: BTreeSet<usize> = BTreeSet::new();
        let mut c_union: BTreeSet<usize> = BTreeSet::new();
        for &k in image {
            let ta: BTreeSet<usize> = t_coll[k].a().iter().copied().collect();
            let tb: BTreeSet<usize> = t_coll[k].b().iter().copied().collect();
            if !ta.is_subset(&ra) || !tb.is_subset(&rb) {
                containment_ok = false;
            }
            w_union.extend(t_sets[k].0.iter().copied());
            c_union.extend(t_sets[k].1.iter().copied());
        }
        if w_union != rw || c_union != rc {
            union_ok = false;
        }
    }

    let mut by_cut: BTreeMap<Vec<usize>, BTreeSet<&VertexPair>> = BTreeMap::new();
    for (p, (_, c, _)) in t_coll.iter().zip(&t_sets) {
        by_cut
            .entry(c.iter().copied().collect())
            .or_default()
            .insert(p);
    }
    let half_injective_ok = by_cut.values().all(|group| group.len() <= 2);

    Ok(CombinatorialUncrossingReport {
        witness_disjoint_ok,
        cut_disjoint_ok,
        vertex_disjoint_ok,
        containment_ok,
        union_ok,
        half_injective_ok,
    })
}

/// A two-pair instance on a 3x3 perfect matching where the pairs share
/// their cut yet can be uncrossed into the single pair `(A ∩ X, B ∩ Y)`.
/// Returns the graph and the two pairs; thickness threshold 1/2.
pub fn crossed_pairs_demo() -> (BipartiteGraph, Vec<VertexPair>) {
    let g = BipartiteGraph::new(3, 3, &[(0, 0), (1, 1), (2, 2)]).expect("static instance");
    let pairs = alloc::vec![
        VertexPair::new(alloc::vec![0usize, 1], alloc::vec![2usize]),
        VertexPair::new(alloc::vec![0usize, 2], alloc::vec![1usize]),
    ];
    (g, pairs)
}

/// A two-pair instance on a 2x2 perfect matching that shares a cut but
/// admits no smaller representative: both pairs survive any uncrossing.
/// Thick at thresholds below 1/2, not at 1/2 itself.
pub fn uncrossable_pairs_demo() -> (BipartiteGraph, Vec<VertexPair>) {
    let g = BipartiteGraph::new(2, 2, &[(0, 0), (1, 1)]).expect("static instance");
    let pairs = alloc::vec![
        VertexPair::new(alloc::vec![0usize], alloc::vec![1usize]),
        VertexPair::new(alloc::vec![1usize], alloc::vec![0usize]),
    ];
    (g, pairs)
}

/// Builds a random instance where every constructed pair provably shares one
/// cut: vertices are grouped by overlap pattern, and edges either stay
/// inside a pattern's mirror (in no cut) or hop to the complement's mirror
/// (in every cut). Produces `pair_count` pairs (supported range `2..=6`).
///
/// Returns `None` when the draw is unusable — duplicate witness sets, or a
/// pair that is not 1/3-thick — so callers should iterate seeds and keep the
/// successes. Successful instances satisfy [`check_venn_structure`] and are
/// valid inputs for [`venn_uncross_single_cut`] at `gamma = 1/3`.
pub fn gen_shared_cut_collection(
    seed: u64,
    pair_count: usize,
) -> Option<(BipartiteGraph, Vec<VertexPair>)> {
    if !(2..=6).contains(&pair_count) {
        return None;
    }
    let j = pair_count;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask: u64 = (1 << j) - 1;
    let mut pats: Vec<u64> = (1..=mask).collect();
    pats.shuffle(&mut rng);
    let take = 3 + (rng.gen::<usize>() % pats.len().saturating_sub(2).max(1));
    let pats = &pats[..take.min(pats.len())];
    let left_index: BTreeMap<u64, usize> = pats.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let right_pats: Vec<u64> = pats.iter().map(|&b| b ^ mask).collect();
    let right_index: BTreeMap<u64, usize> = right_pats
        .iter()
        .enumerate()
        .map(|(i, &b)| (b, i))
        .collect();
    let mut edges = Vec::new();
    for &b in pats {
        let copies = 1 + rng.gen::<usize>() % 3;
        for _ in 0..copies {
            edges.push((left_index[&b], right_index[&(b ^ mask)]));
        }
        // Optional edge into the same pattern's mirror: in no cut.
        if let Some(&rq) = right_index.get(&b) {
            if rng.gen_bool(0.5) {
                edges.push((left_index[&b], rq));
            }
        }
    }
    let g = BipartiteGraph::new(pats.len(), right_pats.len(), &edges).expect("valid edges");
    let pairs: Vec<VertexPair> = (0..j)
        .map(|i| {
            let a: Vec<usize> = pats
                .iter()
                .filter(|&&b| b >> i & 1 == 1)
                .map(|b| left_index[b])
                .collect();
            let b: Vec<usize> = right_pats
                .iter()
                .filter(|&&p| p >> i & 1 == 1)
                .map(|p| right_index[p])
                .collect();
            VertexPair::new(a, b)
        })
        .collect();
    // All cuts coincide by construction; witnesses must differ and every
    // pair must be thick at 1/3 for the instance to be usable.
    let ctx = ThicknessContext::uniform(&g);
    let cuts: BTreeSet<Vec<usize>> = pairs
        .iter()
        .map(|p| cut_set(&g, p).expect("pairs are in range"))
        .collect();
    debug_assert_eq!(cuts.len(), 1, "construction must share a single cut");
    let witnesses: BTreeSet<Vec<usize>> = pairs
        .iter()
        .map(|p| witness_set(&g, p).expect("pairs are in range"))
        .collect();
    if witnesses.len() != pairs.len() {
        return None;
    }
    for p in &pairs {
        if !ctx
            .is_gamma_thick(p, &ratio(1, 3))
            .expect("positive threshold")
        {
            return None;
        }
    }
    Some((g, pairs))
}

/// Builds a random 1/3-thick pair collection over a random 5x5 graph, for
/// exercising [`uncross`] on unstructured inputs. Returns `None` when the
/// draw yields fewer than two distinct thick pairs.
pub fn gen_thick_collection(seed: u64) -> Option<(BipartiteGraph, PairCollection)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 5;
    let mut edges = Vec::new();
    for p in 0..n {
        for q in 0..n {
            if rng.gen_bool(0.4) {
                edges.push((p, q));
            }
        }
    }
    if edges.is_empty() {
        return None;
    }
    let g = BipartiteGraph::new(n, n, &edges).expect("valid edges");
    let gamma = ratio(1, 3);
    let mut pairs = Vec::new();
    {
        let ctx = ThicknessContext::uniform(&g);
        for _ in 0..40 {
            let a: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
            let b: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
            if a.is_empty() {
                continue;
            }
            let pair = VertexPair::new(a, b);
            if ctx.is_gamma_thick(&pair, &gamma).expect("positive threshold") {
                pairs.push(pair);
            }
            if pairs.len() >= 6 {
                break;
            }
        }
    }
    pairs.sort();
    pairs.dedup();
    if pairs.len() < 2 {
        return None;
    }
    Some((g, PairCollection::new(pairs, gamma)))
}
