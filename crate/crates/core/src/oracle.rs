//! Brute-force ground truth for star structure connectivity, plus the
//! mixed vertex/edge removal checker and the super-connectivity probe.
//!
//! The exact search walks family sizes `t = 1, 2, ...` and, within a size,
//! every `t`-subset of the candidate list in lexicographic order. The first
//! disconnecting subset is the certificate. Work is split by the subset's
//! leading index and evaluated in ordered blocks, so the answer and the
//! reported counts do not depend on the thread count.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cuts::{apply_cut, FaultFamily, Mode, Star};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::label::{Dim, Variant, VertexLabel};
use crate::probe::{Outcome, RemovalProbe};

/// Identifier recorded in sampled reports.
pub const GENERATOR: &str = "ChaCha8Rng(seed, stream = chunk index)";

/// Samples drawn from one RNG stream.
pub const SAMPLE_CHUNK: u64 = 1 << 14;

/// Largest graph on which the oracle computes `κ(G)` for its pruning floor.
const FLOOR_VERTEX_LIMIT: usize = 4096;

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Lexicographic rank of a strictly increasing index tuple among all
/// `t`-subsets of `0..c`.
fn combination_rank(indices: &[usize], c: usize) -> u64 {
    let t = indices.len();
    let mut rank = 0u64;
    let mut lo = 0usize;
    for (pos, &a) in indices.iter().enumerate() {
        for j in lo..a {
            rank += binomial((c - 1 - j) as u64, (t - 1 - pos) as u64);
        }
        lo = a + 1;
    }
    rank
}

/// Every star with exactly `m` leaves (structure) or `0..=m` leaves
/// (substructure), deduplicated by vertex set. Centers ascend; per center,
/// leaf counts ascend and leaf subsets follow the sorted neighbor list.
pub fn enumerate_candidates(g: &Graph, m: u32, mode: Mode) -> Vec<Star> {
    let sizes: Vec<usize> = match mode {
        Mode::Structure => vec![m as usize],
        Mode::Substructure => (0..=m as usize).collect(),
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for center in 0..g.vertex_count() {
        let row = g.neighbors(center);
        for &size in &sizes {
            for_each_combination(row.len(), size, |pick| {
                let mut key: Vec<u32> = pick.iter().map(|&i| row[i]).collect();
                key.push(center as u32);
                key.sort_unstable();
                if seen.insert(key) {
                    out.push(Star::new(
                        VertexLabel(center as u64),
                        pick.iter().map(|&i| VertexLabel(row[i] as u64)).collect(),
                    ));
                }
            });
        }
    }
    out
}

fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Flattened vertex lists of a candidate pool.
struct Pool {
    offsets: Vec<usize>,
    vertices: Vec<u32>,
}

impl Pool {
    fn from_sets<I: IntoIterator<Item = Vec<u32>>>(sets: I) -> Self {
        let mut offsets = vec![0];
        let mut vertices = Vec::new();
        for set in sets {
            vertices.extend(set);
            offsets.push(vertices.len());
        }
        Pool { offsets, vertices }
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    fn item(&self, i: usize) -> &[u32] {
        &self.vertices[self.offsets[i]..self.offsets[i + 1]]
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    examined: u64,
    pruned: u64,
    cuts: u64,
}

impl Tally {
    fn add(&mut self, other: Tally) {
        self.examined += other.examined;
        self.pruned += other.pruned;
        self.cuts += other.cuts;
    }
}

/// Visits every `t`-subset whose leading index is `first`, in lexicographic
/// order. `visit` gets the index tuple and the concatenated vertex buffer and
/// returns `true` to stop.
fn walk_subsets_from(
    pool: &Pool,
    t: usize,
    first: usize,
    mut visit: impl FnMut(&[usize], &[u32]) -> bool,
) -> bool {
    let c = pool.len();
    if t == 0 || first + t > c {
        return false;
    }
    let mut idx = Vec::with_capacity(t);
    let mut ends = Vec::with_capacity(t);
    let mut buf: Vec<u32> = Vec::new();
    idx.push(first);
    buf.extend_from_slice(pool.item(first));
    ends.push(buf.len());
    // Depth-first over positions 1..t; idx[p] ranges up to c - (t - p).
    loop {
        if idx.len() == t {
            if visit(&idx, &buf) {
                return true;
            }
            // Advance the deepest position that still has room.
            loop {
                if idx.len() == 1 {
                    return false;
                }
                let p = idx.len() - 1;
                let next = idx[p] + 1;
                idx.pop();
                ends.pop();
                buf.truncate(*ends.last().unwrap());
                if next <= c - (t - p) {
                    idx.push(next);
                    buf.extend_from_slice(pool.item(next));
                    ends.push(buf.len());
                    break;
                }
            }
        } else {
            let next = idx[idx.len() - 1] + 1;
            idx.push(next);
            buf.extend_from_slice(pool.item(next));
            ends.push(buf.len());
        }
    }
}

#[derive(Clone, Debug)]
pub struct SizeTally {
    pub size: usize,
    /// Subsets visited for this size (pruned ones included).
    pub examined: u64,
    pub pruned: u64,
    /// `C(candidates, size)`; equals `examined` when the size was exhausted.
    pub expected: u64,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub dim: Dim,
    pub pattern_m: u32,
    pub mode: Mode,
    /// Exact structure connectivity, when a cut was found within budget.
    pub value: Option<usize>,
    pub proven_lower_bound: usize,
    pub certificate: Option<FaultFamily>,
    pub candidates: usize,
    /// Subsets visited, counting the certificate's own position.
    pub examined: u64,
    /// One entry per fully exhausted size.
    pub exhausted: Vec<SizeTally>,
    /// Sets with fewer than this many vertices were not searched.
    pub prune_floor: usize,
    pub seed: Option<u64>,
    pub elapsed: Duration,
}

impl OracleResult {
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.dim.n(),
            "d": self.dim.d(),
            "m": self.pattern_m,
            "mode": self.mode.as_str(),
            "value": self.value,
            "lower_bound": self.proven_lower_bound,
            "certificate": self.certificate.as_ref().map(|c| c.to_json(self.dim)),
            "candidates": self.candidates,
            "examined": self.examined,
            "exhausted": self.exhausted.iter().map(|s| json!({
                "size": s.size,
                "examined": s.examined,
                "pruned": s.pruned,
                "expected": s.expected,
            })).collect::<Vec<_>>(),
            "prune_floor": self.prune_floor,
            "seed": self.seed,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    /// Refuse searches that would visit more subsets than this.
    pub max_subsets: Option<u64>,
    /// Recorded in the report; the exhaustive search itself is not random.
    pub seed: Option<u64>,
    /// Skip the `κ(G)` pruning floor.
    pub no_pruning: bool,
}

/// Subsets visited by an exhaustive search up to `budget`.
pub fn search_volume(candidates: usize, budget: usize) -> u64 {
    (1..=budget)
        .map(|t| binomial(candidates as u64, t as u64))
        .fold(0u64, |a, b| a.saturating_add(b))
}

pub fn exact_structure_connectivity(
    g: &Graph,
    m: u32,
    mode: Mode,
    size_budget: usize,
) -> Result<OracleResult> {
    exact_structure_connectivity_with(g, m, mode, size_budget, &SearchOptions::default())
}

pub fn exact_structure_connectivity_with(
    g: &Graph,
    m: u32,
    mode: Mode,
    size_budget: usize,
    opts: &SearchOptions,
) -> Result<OracleResult> {
    if size_budget == 0 {
        return Err(Error::param("size budget must be at least 1"));
    }
    let start = Instant::now();
    let stars = enumerate_candidates(g, m, mode);
    let c = stars.len();
    if let Some(limit) = opts.max_subsets {
        let volume = search_volume(c, size_budget);
        if volume > limit {
            return Err(Error::ResourceCap(format!(
                "{c} candidates up to size {size_budget} means {volume} subsets, over the limit of {limit}"
            )));
        }
    }
    let pool = Pool::from_sets(
        stars
            .iter()
            .map(|s| s.vertices().map(|v| v.0 as u32).collect::<Vec<_>>()),
    );
    let prune_floor = if opts.no_pruning || g.vertex_count() > FLOOR_VERTEX_LIMIT {
        0
    } else {
        g.vertex_connectivity()
    };

    let mut exhausted = Vec::new();
    let mut examined_before = 0u64;
    for t in 1..=size_budget {
        let expected = binomial(c as u64, t as u64);
        if let Some((pick, _)) = search_size(g, &pool, t, prune_floor, &mut exhausted, expected) {
            let family = FaultFamily {
                elements: pick.iter().map(|&i| stars[i].clone()).collect(),
                pattern_m: m,
                mode,
            };
            let report = apply_cut(g, &family);
            assert!(
                report.is_cut,
                "probe and census disagree on certificate {:?}",
                family
            );
            return Ok(OracleResult {
                dim: g.dim(),
                pattern_m: m,
                mode,
                value: Some(t),
                proven_lower_bound: t,
                certificate: Some(family),
                candidates: c,
                examined: examined_before + combination_rank(&pick, c) + 1,
                exhausted,
                prune_floor,
                seed: opts.seed,
                elapsed: start.elapsed(),
            });
        }
        examined_before += exhausted.last().map_or(0, |s: &SizeTally| s.examined);
    }
    Ok(OracleResult {
        dim: g.dim(),
        pattern_m: m,
        mode,
        value: None,
        proven_lower_bound: size_budget + 1,
        certificate: None,
        candidates: c,
        examined: examined_before,
        exhausted,
        prune_floor,
        seed: opts.seed,
        elapsed: start.elapsed(),
    })
}

/// Returns the lexicographically first disconnecting `t`-subset, or records
/// the exhausted tally.
fn search_size(
    g: &Graph,
    pool: &Pool,
    t: usize,
    floor: usize,
    exhausted: &mut Vec<SizeTally>,
    expected: u64,
) -> Option<(Vec<usize>, Tally)> {
    let c = pool.len();
    let block = (rayon::current_num_threads() * 4).max(1);
    let mut total = Tally::default();
    let mut first = 0;
    while first < c {
        let hi = (first + block).min(c);
        let results: Vec<(Option<Vec<usize>>, Tally)> = (first..hi)
            .into_par_iter()
            .map_init(
                || RemovalProbe::new(g),
                |probe, lead| {
                    let mut tally = Tally::default();
                    let mut hit = None;
                    walk_subsets_from(pool, t, lead, |idx, buf| {
                        tally.examined += 1;
                        match probe.classify(buf, floor) {
                            Outcome::Cut => {
                                tally.cuts += 1;
                                hit = Some(idx.to_vec());
                                true
                            }
                            Outcome::Pruned => {
                                tally.pruned += 1;
                                false
                            }
                            Outcome::Intact => false,
                        }
                    });
                    (hit, tally)
                },
            )
            .collect();
        for (hit, tally) in results {
            if let Some(pick) = hit {
                return Some((pick, total));
            }
            total.add(tally);
        }
        first = hi;
    }
    exhausted.push(SizeTally {
        size: t,
        examined: total.examined,
        pruned: total.pruned,
        expected,
    });
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Exhaustive,
    Sample { count: u64, seed: u64 },
}

/// Vertices `a1` plus the endpoints of edges `a2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemovalSpec {
    pub a1: Vec<VertexLabel>,
    pub a2: Vec<(VertexLabel, VertexLabel)>,
}

impl RemovalSpec {
    pub fn vertices(&self) -> Vec<u32> {
        self.a1
            .iter()
            .map(|v| v.0 as u32)
            .chain(self.a2.iter().flat_map(|&(a, b)| [a.0 as u32, b.0 as u32]))
            .collect()
    }

    pub fn to_json(&self, dim: Dim) -> Value {
        json!({
            "a1": self.a1.iter().map(|&v| dim.format_label(v)).collect::<Vec<_>>(),
            "a2": self.a2.iter().map(|&(a, b)| [dim.format_label(a), dim.format_label(b)]).collect::<Vec<_>>(),
        })
    }
}

/// Outcome of a removal sweep (`a1a2_check` or `super_cut_probe`).
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub check: &'static str,
    pub dim: Dim,
    pub budget: Budget,
    pub examined: u64,
    /// Removals that broke the property under test.
    pub failures: u64,
    /// Disconnections that were permitted (super probe: an isolated vertex).
    pub tolerated: u64,
    pub counterexamples: Vec<Value>,
    pub sampler: Option<&'static str>,
    /// Removals with fewer distinct vertices than this were not searched.
    pub prune_floor: usize,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn holds(&self) -> bool {
        self.failures == 0
    }

    pub fn to_json(&self) -> Value {
        let (mode, samples, seed) = match self.budget {
            Budget::Exhaustive => ("exhaustive", None, None),
            Budget::Sample { count, seed } => ("sample", Some(count), Some(seed)),
        };
        json!({
            "check": self.check,
            "n": self.dim.n(),
            "d": self.dim.d(),
            "mode": mode,
            "samples": samples,
            "seed": seed,
            "generator": self.budget_generator(),
            "sampler": self.sampler,
            "prune_floor": self.prune_floor,
            "examined": self.examined,
            "failures": self.failures,
            "tolerated": self.tolerated,
            "holds": self.holds(),
            "counterexamples": self.counterexamples,
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    fn budget_generator(&self) -> Option<&'static str> {
        matches!(self.budget, Budget::Sample { .. }).then_some(GENERATOR)
    }
}

const MAX_COUNTEREXAMPLES: usize = 16;

fn require_fdsc(g: &Graph) -> Result<()> {
    if g.variant() != Variant::Fdsc {
        return Err(Error::param("this check runs on FDSC graphs only"));
    }
    Ok(())
}

/// Checks that removing any `A1 ∪ V(A2)` with `|A1| + |A2| <= d` leaves the
/// graph connected.
pub fn a1a2_check(g: &Graph, budget: Budget) -> Result<SweepReport> {
    require_fdsc(g)?;
    let dim = g.dim();
    if dim.d() < 3 {
        return Err(Error::param("the mixed removal statement needs d >= 3"));
    }
    let start = Instant::now();
    let d = dim.d() as usize;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let vcount = g.vertex_count();

    let decode = |items: &[usize]| {
        let mut spec = RemovalSpec {
            a1: Vec::new(),
            a2: Vec::new(),
        };
        for &i in items {
            if i < vcount {
                spec.a1.push(VertexLabel(i as u64));
            } else {
                let (a, b) = edges[i - vcount];
                spec.a2.push((VertexLabel(a as u64), VertexLabel(b as u64)));
            }
        }
        spec
    };

    let prune_floor = match budget {
        Budget::Exhaustive if vcount <= FLOOR_VERTEX_LIMIT => g.vertex_connectivity(),
        _ => 0,
    };
    let (examined, failures, examples, sampler) = match budget {
        Budget::Exhaustive => {
            let pool = Pool::from_sets(
                (0..vcount)
                    .map(|v| vec![v as u32])
                    .chain(edges.iter().map(|&(a, b)| vec![a as u32, b as u32])),
            );
            let mut examined = 1u64; // the empty removal
            let mut failures = 0u64;
            let mut examples = Vec::new();
            for t in 1..=d {
                let parts: Vec<(Tally, Vec<Vec<usize>>)> = (0..pool.len())
                    .into_par_iter()
                    .map_init(
                        || RemovalProbe::new(g),
                        |probe, lead| {
                            let mut tally = Tally::default();
                            let mut found = Vec::new();
                            walk_subsets_from(&pool, t, lead, |idx, buf| {
                                tally.examined += 1;
                                if probe.classify(buf, prune_floor) == Outcome::Cut {
                                    tally.cuts += 1;
                                    if found.len() < MAX_COUNTEREXAMPLES {
                                        found.push(idx.to_vec());
                                    }
                                }
                                false
                            });
                            (tally, found)
                        },
                    )
                    .collect();
                for (tally, found) in parts {
                    examined += tally.examined;
                    failures += tally.cuts;
                    for idx in found {
                        if examples.len() < MAX_COUNTEREXAMPLES {
                            examples.push(decode(&idx).to_json(dim));
                        }
                    }
                }
            }
            (examined, failures, examples, None)
        }
        Budget::Sample { count, seed } => {
            let chunks = count.div_ceil(SAMPLE_CHUNK);
            let parts: Vec<(u64, Vec<RemovalSpec>)> = (0..chunks)
                .into_par_iter()
                .map_init(
                    || RemovalProbe::new(g),
                    |probe, chunk| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(chunk);
                        let todo = SAMPLE_CHUNK.min(count - chunk * SAMPLE_CHUNK);
                        let mut fails = 0u64;
                        let mut found = Vec::new();
                        for i in 0..todo {
                            let spec = sample_spec(g, d, i % 2 == 1, &mut rng);
                            if probe.disconnects(&spec.vertices()) {
                                fails += 1;
                                if found.len() < MAX_COUNTEREXAMPLES {
                                    found.push(spec);
                                }
                            }
                        }
                        (fails, found)
                    },
                )
                .collect();
            let mut failures = 0;
            let mut examples = Vec::new();
            for (fails, found) in parts {
                failures += fails;
                for spec in found {
                    if examples.len() < MAX_COUNTEREXAMPLES {
                        examples.push(spec.to_json(dim));
                    }
                }
            }
            (
                count,
                failures,
                examples,
                Some("alternating: uniform items over the whole graph / items within distance 2 of a random anchor; |A1|+|A2| uniform in 1..=d, |A1| uniform in 0..=total"),
            )
        }
    };
    Ok(SweepReport {
        check: "a1a2",
        dim,
        budget,
        examined,
        failures,
        tolerated: 0,
        counterexamples: examples,
        sampler,
        prune_floor,
        elapsed: start.elapsed(),
    })
}

fn random_walk(g: &Graph, from: usize, steps: usize, rng: &mut ChaCha8Rng) -> usize {
    let mut v = from;
    for _ in 0..steps {
        let row = g.neighbors(v);
        v = row[rng.gen_range(0..row.len())] as usize;
    }
    v
}

fn sample_spec(g: &Graph, d: usize, local: bool, rng: &mut ChaCha8Rng) -> RemovalSpec {
    let count = g.vertex_count();
    let total = rng.gen_range(1..=d);
    let vertices = rng.gen_range(0..=total);
    let anchor = rng.gen_range(0..count);
    let pick = |rng: &mut ChaCha8Rng| {
        if local {
            let steps = rng.gen_range(0..=2);
            random_walk(g, anchor, steps, rng)
        } else {
            rng.gen_range(0..count)
        }
    };
    let mut spec = RemovalSpec {
        a1: Vec::with_capacity(vertices),
        a2: Vec::with_capacity(total - vertices),
    };
    for _ in 0..vertices {
        spec.a1.push(VertexLabel(pick(rng) as u64));
    }
    for _ in vertices..total {
        let a = pick(rng);
        let b = random_walk(g, a, 1, rng);
        spec.a2
            .push((VertexLabel(a.min(b) as u64), VertexLabel(a.max(b) as u64)));
    }
    spec
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RemovalClass {
    /// Connected survivors (or a single survivor).
    Connected,
    /// Disconnected, and some survivor has every neighbor removed.
    DisconnectedWithIsolation,
    DisconnectedWithoutIsolation,
}

/// Classifies a vertex removal for the super-connectivity property.
pub fn classify_removal(probe: &mut RemovalProbe<'_>, removed: &[u32]) -> RemovalClass {
    let g = probe.graph();
    let count = g.vertex_count();
    let mut uniq = removed.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if count - uniq.len() <= 1 || !probe.disconnects(&uniq) {
        return RemovalClass::Connected;
    }
    let gone = |v: u32| uniq.binary_search(&v).is_ok();
    let isolated = uniq.iter().any(|&s| {
        g.neighbors(s as usize)
            .iter()
            .any(|&x| !gone(x) && g.neighbors(x as usize).iter().all(|&y| gone(y)))
    });
    if isolated {
        RemovalClass::DisconnectedWithIsolation
    } else {
        RemovalClass::DisconnectedWithoutIsolation
    }
}

/// Checks that no removal of at most `2d - 1` vertices disconnects the graph
/// unless it isolates a vertex. Exhaustive runs cover sizes `1..=2d-1`;
/// sampled runs draw uniform subsets of size exactly `2d - 1`.
pub fn super_cut_probe(g: &Graph, budget: Budget) -> Result<SweepReport> {
    require_fdsc(g)?;
    let dim = g.dim();
    let start = Instant::now();
    let max_size = 2 * dim.d() as usize - 1;
    let count = g.vertex_count();
    let fmt = |set: &[u32]| {
        json!(set
            .iter()
            .map(|&v| dim.format_label(VertexLabel(v as u64)))
            .collect::<Vec<_>>())
    };

    let (examined, failures, tolerated, examples) = match budget {
        Budget::Exhaustive => {
            let pool = Pool::from_sets((0..count).map(|v| vec![v as u32]));
            let mut examined = 0;
            let mut failures = 0;
            let mut tolerated = 0;
            let mut examples = Vec::new();
            for t in 1..=max_size.min(count) {
                let parts: Vec<(u64, u64, u64, Vec<Vec<u32>>)> = (0..count)
                    .into_par_iter()
                    .map_init(
                        || RemovalProbe::new(g),
                        |probe, lead| {
                            let (mut seen, mut bad, mut ok) = (0, 0, 0);
                            let mut found = Vec::new();
                            walk_subsets_from(&pool, t, lead, |_, buf| {
                                seen += 1;
                                match classify_removal(probe, buf) {
                                    RemovalClass::Connected => {}
                                    RemovalClass::DisconnectedWithIsolation => ok += 1,
                                    RemovalClass::DisconnectedWithoutIsolation => {
                                        bad += 1;
                                        if found.len() < MAX_COUNTEREXAMPLES {
                                            found.push(buf.to_vec());
                                        }
                                    }
                                }
                                false
                            });
                            (seen, bad, ok, found)
                        },
                    )
                    .collect();
                for (seen, bad, ok, found) in parts {
                    examined += seen;
                    failures += bad;
                    tolerated += ok;
                    for set in found {
                        if examples.len() < MAX_COUNTEREXAMPLES {
                            examples.push(fmt(&set));
                        }
                    }
                }
            }
            (examined, failures, tolerated, examples)
        }
        Budget::Sample {
            count: samples,
            seed,
        } => {
            let size = max_size.min(count);
            let chunks = samples.div_ceil(SAMPLE_CHUNK);
            let parts: Vec<(u64, u64, Vec<Vec<u32>>)> = (0..chunks)
                .into_par_iter()
                .map_init(
                    || RemovalProbe::new(g),
                    |probe, chunk| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(chunk);
                        let todo = SAMPLE_CHUNK.min(samples - chunk * SAMPLE_CHUNK);
                        let (mut bad, mut ok) = (0, 0);
                        let mut found = Vec::new();
                        for _ in 0..todo {
                            let set: Vec<u32> = sample_indices(&mut rng, count, size)
                                .into_iter()
                                .map(|v| v as u32)
                                .collect();
                            match classify_removal(probe, &set) {
                                RemovalClass::Connected => {}
                                RemovalClass::DisconnectedWithIsolation => ok += 1,
                                RemovalClass::DisconnectedWithoutIsolation => {
                                    bad += 1;
                                    if found.len() < MAX_COUNTEREXAMPLES {
                                        found.push(set);
                                    }
                                }
                            }
                        }
                        (bad, ok, found)
                    },
                )
                .collect();
            let mut failures = 0;
            let mut tolerated = 0;
            let mut examples = Vec::new();
            for (bad, ok, found) in parts {
                failures += bad;
                tolerated += ok;
                for set in found {
                    if examples.len() < MAX_COUNTEREXAMPLES {
                        examples.push(fmt(&set));
                    }
                }
            }
            (samples, failures, tolerated, examples)
        }
    };
    Ok(SweepReport {
        check: "super",
        dim,
        budget,
        examined,
        failures,
        tolerated,
        counterexamples: examples,
        prune_floor: 0,
        sampler: matches!(budget, Budget::Sample { .. })
            .then_some("uniform vertex subsets of size exactly 2d - 1"),
        elapsed: start.elapsed(),
    })
}
