//! Verification harness for the structural facts about `FDSC_n`.
//!
//! Label-level checks are exhaustive up to `n = 16` and run on a fixed,
//! seeded sample of labels / modules beyond that. Graph-backed checks need a
//! materialized graph and are skipped past the materialization cap.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::graph::{cross_edges, Graph, MAX_GRAPH_BITS};
use crate::label::{Dim, ModuleAddress, NeighborKind, Variant, VertexLabel};

/// Labels / modules examined per check when enumeration is infeasible.
const SAMPLE_SIZE: usize = 1 << 12;
/// Modules scanned in full for module-wide checks at `n = 32`.
const FULL_MODULE_SAMPLE: usize = 8;
const SAMPLE_SEED: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub dim: Dim,
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl LemmaReport {
    fn new(dim: Dim, checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.status != Status::Fail);
        LemmaReport {
            dim,
            checks,
            overall,
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Timing-free form; identical across runs for the same `d`.
    pub fn canonical_json(&self) -> Value {
        json!({
            "n": self.dim.n(),
            "d": self.dim.d(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "overall": self.overall,
        })
    }

    /// SHA-256 of the canonical form, hex encoded.
    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(&self.canonical_json()).expect("json encoding");
        Sha256::digest(bytes)
            .iter()
            .fold(String::new(), |mut s, b| {
                let _ = write!(s, "{b:02x}");
                s
            })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "n": self.dim.n(),
            "d": self.dim.d(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status,
                "detail": c.detail,
                "elapsed_ms": c.elapsed.as_millis() as u64,
            })).collect::<Vec<_>>(),
            "overall": self.overall,
            "digest": self.digest(),
        })
    }
}

fn timed(name: &'static str, f: impl FnOnce() -> (Status, String)) -> Check {
    let start = Instant::now();
    let (status, detail) = f();
    Check {
        name,
        status,
        detail,
        elapsed: start.elapsed(),
    }
}

fn verdict(failure: Option<String>, ok: impl Into<String>) -> (Status, String) {
    match failure {
        Some(msg) => (Status::Fail, msg),
        None => (Status::Pass, ok.into()),
    }
}

fn skipped(name: &'static str, why: impl Into<String>) -> Check {
    Check {
        name,
        status: Status::Skipped,
        detail: why.into(),
        elapsed: Duration::ZERO,
    }
}

fn exhaustive(dim: Dim) -> bool {
    dim.n() <= MAX_GRAPH_BITS
}

/// All labels for small `n`, otherwise a fixed seeded sample.
fn label_scope(dim: Dim) -> (Vec<VertexLabel>, String) {
    if exhaustive(dim) {
        (
            dim.labels().collect(),
            format!("all {} labels", 1u64 << dim.n()),
        )
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mask = dim.label_mask();
        let mut labels = vec![VertexLabel(0), VertexLabel(mask)];
        labels.extend((2..SAMPLE_SIZE).map(|_| VertexLabel(rng.gen::<u64>() & mask)));
        (
            labels,
            format!("{SAMPLE_SIZE} sampled labels (seed {SAMPLE_SEED})"),
        )
    }
}

fn module_scope(dim: Dim, cap: usize) -> (Vec<ModuleAddress>, String) {
    let total = dim.module_count();
    if (total as usize) <= cap || exhaustive(dim) {
        (dim.addresses().collect(), format!("all {total} modules"))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mask = total - 1;
        let mut mods = vec![ModuleAddress(0), ModuleAddress(mask)];
        mods.extend((2..cap).map(|_| ModuleAddress(rng.gen::<u64>() & mask)));
        (mods, format!("{cap} sampled modules (seed {SAMPLE_SEED})"))
    }
}

/// Involution, symmetry, degree and the `e1(swap_d(u)) = f(u)` identity.
pub fn check_label_invariants(dim: Dim) -> Vec<Check> {
    let (labels, scope) = label_scope(dim);
    let kinds = dim.kinds(Variant::Fdsc);
    let name = |v: VertexLabel| dim.format_label(v);
    vec![
        timed("neighbor_maps_involutive", || {
            let bad = labels.iter().find_map(|&u| {
                kinds.iter().find_map(|&k| {
                    let v = dim.neighbor(u, k);
                    (v == u || dim.neighbor(v, k) != u)
                        .then(|| format!("{k} at {} is not a fixed-point-free involution", name(u)))
                })
            });
            verdict(bad, scope.clone())
        }),
        timed("adjacency_symmetric", || {
            let bad = labels.iter().find_map(|&u| {
                dim.neighbor_set(u, Variant::Fdsc)
                    .into_iter()
                    .find_map(|(k, v)| {
                        (!dim.neighbor_set(v, Variant::Fdsc).contains(&(k, u)))
                            .then(|| format!("{} -{k}-> {} has no reverse", name(u), name(v)))
                    })
            });
            verdict(bad, scope.clone())
        }),
        timed("degree", || {
            let want = dim.degree(Variant::Fdsc);
            let bad = labels.iter().find_map(|&u| {
                let mut vs: Vec<_> = dim
                    .neighbor_set(u, Variant::Fdsc)
                    .iter()
                    .map(|p| p.1)
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                (vs.len() != want || vs.contains(&u)).then(|| {
                    format!(
                        "{} has {} distinct neighbors, expected {want}",
                        name(u),
                        vs.len()
                    )
                })
            });
            verdict(bad, format!("degree {want}; {scope}"))
        }),
        timed("last_swap_then_e1_is_f", || {
            let bad = labels.iter().find_map(|&u| {
                let v = dim.swap_unchecked(u, dim.d());
                (dim.e1_neighbor(v) != dim.f_neighbor(u)).then(|| format!("fails at {}", name(u)))
            });
            verdict(bad, scope.clone())
        }),
    ]
}

/// Regularity, counts, module decomposition, girth and complete quotient.
pub fn check_basic_structure(g: &Graph) -> Vec<Check> {
    let dim = g.dim();
    let mut checks = Vec::new();
    checks.push(timed("regularity", || {
        let want = dim.d() as usize + 2;
        let ok = g.degree() == want && g.is_simple_symmetric();
        verdict(
            (!ok).then(|| format!("graph is not a simple {want}-regular graph")),
            format!("{want}-regular"),
        )
    }));
    checks.push(timed("vertex_edge_counts", || {
        let v = g.vertex_count() as u64;
        let e = g.edge_count() as u64;
        let want_v = 1u64 << dim.n();
        let want_e = (1u64 << (dim.n() - 1)) * (dim.d() as u64 + 2);
        verdict(
            (v != want_v || e != want_e)
                .then(|| format!("|V| = {v}, |E| = {e}; expected {want_v}, {want_e}")),
            format!("|V| = {v}, |E| = {e}"),
        )
    }));
    match dim.half() {
        Some(half) => checks.push(timed("module_decomposition", || {
            module_decomposition(g, half)
        })),
        None => checks.push(skipped(
            "module_decomposition",
            "n = 2 has no module structure",
        )),
    }
    checks.push(timed("girth", || match g.girth() {
        Some(girth) if girth.length == 3 => (
            Status::Pass,
            format!(
                "girth 3, witness {}",
                girth
                    .witness
                    .iter()
                    .map(|&v| dim.format_label(v))
                    .collect::<Vec<_>>()
                    .join(" ")
            ),
        ),
        Some(girth) => (Status::Fail, format!("girth {}", girth.length)),
        None => (Status::Fail, "acyclic".into()),
    }));
    if dim.n() >= 4 {
        checks.push(timed("complete_quotient", || match g.quotient_census() {
            Ok(q) => verdict(
                (!q.is_complete() || q.min_multiplicity < 1 || q.max_multiplicity > 2).then(|| {
                    format!(
                        "{} of {} module pairs joined, multiplicity {}..={}",
                        q.pairs_present, q.pair_total, q.min_multiplicity, q.max_multiplicity
                    )
                }),
                format!(
                    "K_{} on {} modules, multiplicity {}..={}",
                    q.module_count, q.module_count, q.min_multiplicity, q.max_multiplicity
                ),
            ),
            Err(e) => (Status::Fail, e.to_string()),
        }));
    } else {
        checks.push(skipped(
            "complete_quotient",
            "n = 2 has no module structure",
        ));
    }
    checks
}

/// `x ↦ x·B` maps `FDSC_{n/2}` onto the interior of module `B`, with swap
/// parameters shifted by one.
fn module_decomposition(g: &Graph, half: Dim) -> (Status, String) {
    let dim = g.dim();
    let lift = |k: NeighborKind| match k {
        NeighborKind::E1 => NeighborKind::E1,
        NeighborKind::Ef => NeighborKind::Ef,
        NeighborKind::Ek(k) => NeighborKind::Ek(k + 1),
        NeighborKind::External => NeighborKind::Ek(2),
    };
    for b in dim.addresses() {
        for x in half.labels() {
            let image = dim.join(ModuleAddress(x.0), b);
            let mut mapped: Vec<u32> = Vec::with_capacity(half.degree(Variant::Fdsc));
            for (kind, y) in half.neighbor_set(x, Variant::Fdsc) {
                let want = dim.join(ModuleAddress(y.0), b);
                if dim.neighbor(image, lift(kind)) != want {
                    return (
                        Status::Fail,
                        format!(
                            "{kind} edge at {} in the module graph does not lift in module {}",
                            half.format_label(x),
                            dim.format_address(b)
                        ),
                    );
                }
                mapped.push(want.0 as u32);
            }
            mapped.sort_unstable();
            let interior: Vec<u32> = g
                .neighbors(image.index())
                .iter()
                .copied()
                .filter(|&v| dim.module_address(VertexLabel(v as u64)) == b)
                .collect();
            if mapped != interior {
                return (
                    Status::Fail,
                    format!(
                        "interior neighbors of {} differ from the lifted module graph",
                        dim.format_label(image)
                    ),
                );
            }
        }
    }
    (
        Status::Pass,
        format!(
            "{} modules each isomorphic to the n = {} graph",
            dim.module_count(),
            half.n()
        ),
    )
}

/// Cross-edge structure between modules.
pub fn check_cross_edges(dim: Dim) -> Vec<Check> {
    if dim.n() < 4 {
        return [
            "cross_edge_pairs",
            "external_module_spread",
            "unique_external_neighbor",
            "apex_external_neighbors",
            "non_apex_externals_distinct",
            "cross_edge_multiplicity",
        ]
        .into_iter()
        .map(|n| skipped(n, "needs n >= 4"))
        .collect();
    }
    let fmt_b = |b: ModuleAddress| dim.format_address(b);
    let fmt_v = |v: VertexLabel| dim.format_label(v);
    let mut checks = Vec::new();

    checks.push(timed("cross_edge_pairs", || {
        let (mods, scope) = module_scope(dim, 256);
        let others: Vec<ModuleAddress> = if exhaustive(dim) {
            dim.addresses().collect()
        } else {
            mods.iter()
                .map(|&b| dim.complement_address(b))
                .chain(mods.iter().copied())
                .collect()
        };
        let mut pairs = 0u64;
        for &bi in &mods {
            for &bj in &others {
                if bi == bj {
                    continue;
                }
                pairs += 1;
                let edges = match cross_edges(bi, bj, dim) {
                    Ok(e) => e,
                    Err(e) => return (Status::Fail, e.to_string()),
                };
                let want = if bj == dim.complement_address(bi) {
                    2
                } else {
                    1
                };
                let endpoints_ok = edges
                    .iter()
                    .all(|&(a, b)| dim.module_address(a) == bi && dim.module_address(b) == bj);
                if edges.len() != want || !endpoints_ok {
                    return (
                        Status::Fail,
                        format!(
                            "modules {} and {} joined by {} derived edges",
                            fmt_b(bi),
                            fmt_b(bj),
                            edges.len()
                        ),
                    );
                }
            }
        }
        (
            Status::Pass,
            format!("{pairs} ordered module pairs; {scope}"),
        )
    }));

    checks.push(timed("external_module_spread", || {
        // Every vertex except B·B exits to its own module; the apex pair
        // both exit to complement(B).
        let (mods, scope) = module_scope(dim, if dim.n() <= 32 { FULL_MODULE_SAMPLE } else { 4 });
        for &b in &mods {
            let nb = dim.complement_address(b);
            let (top, other) = dim.apex_pair(b);
            if dim.module_address(dim.external_neighbor(top)) != nb
                || dim.module_address(dim.external_neighbor(other)) != nb
            {
                return (
                    Status::Fail,
                    format!("apex pair of {} does not reach {}", fmt_b(b), fmt_b(nb)),
                );
            }
            let mut seen = HashSet::new();
            let mut scanned = 0u64;
            for a in inner_addresses(dim) {
                let v = dim.join(a, b);
                if v == top {
                    continue;
                }
                scanned += 1;
                let target = dim.module_address(dim.external_neighbor(v));
                if target == b || !seen.insert(target) {
                    return (
                        Status::Fail,
                        format!(
                            "{} repeats or stays in its module ({})",
                            fmt_v(v),
                            fmt_b(target)
                        ),
                    );
                }
            }
            if exhaustive(dim) && scanned != dim.module_count() - 1 {
                return (
                    Status::Fail,
                    format!("module {} scanned {scanned} vertices", fmt_b(b)),
                );
            }
        }
        (Status::Pass, scope)
    }));

    let (labels, lscope) = label_scope(dim);
    checks.push(timed("unique_external_neighbor", || {
        let bad = labels.iter().find_map(|&u| {
            let externals: Vec<_> = dim
                .neighbor_set(u, Variant::Fdsc)
                .into_iter()
                .filter(|&(_, v)| dim.module_address(v) != dim.module_address(u))
                .collect();
            match externals.as_slice() {
                [(NeighborKind::External, _)] => None,
                other => Some(format!(
                    "{} has {} neighbors outside its module",
                    fmt_v(u),
                    other.len()
                )),
            }
        });
        verdict(bad, lscope.clone())
    }));

    checks.push(timed("apex_external_neighbors", || {
        let (mods, scope) = module_scope(dim, SAMPLE_SIZE);
        let bad = mods.iter().find_map(|&b| {
            let nb = dim.complement_address(b);
            let (top, other) = dim.apex_pair(b);
            let (et, eo) = (dim.external_neighbor(top), dim.external_neighbor(other));
            (et != dim.join(nb, nb) || eo != dim.join(b, nb) || et == eo).then(|| {
                format!(
                    "apex externals of {} are {} and {}",
                    fmt_b(b),
                    fmt_v(et),
                    fmt_v(eo)
                )
            })
        });
        verdict(bad, scope)
    }));

    checks.push(timed("non_apex_externals_distinct", || {
        let (mods, scope) = module_scope(dim, if dim.n() <= 32 { FULL_MODULE_SAMPLE } else { 4 });
        for &b in &mods {
            let (top, other) = dim.apex_pair(b);
            let mut seen = HashSet::new();
            for a in inner_addresses(dim) {
                let v = dim.join(a, b);
                if v == top || v == other {
                    continue;
                }
                if !seen.insert(dim.module_address(dim.external_neighbor(v))) {
                    return (
                        Status::Fail,
                        format!("{} shares an external module", fmt_v(v)),
                    );
                }
            }
        }
        (Status::Pass, scope)
    }));

    checks.push(timed("cross_edge_multiplicity", || {
        if exhaustive(dim) {
            let modules = dim.module_count() as usize;
            let mut count = vec![0u8; modules * modules];
            for u in dim.labels() {
                let v = dim.external_neighbor(u);
                let (a, b) = (
                    dim.module_address(u).0 as usize,
                    dim.module_address(v).0 as usize,
                );
                if u < v {
                    count[a * modules + b] += 1;
                    if a != b {
                        count[b * modules + a] += 1;
                    }
                }
            }
            for a in 0..modules {
                for b in a + 1..modules {
                    let m = count[a * modules + b];
                    let comp = dim.complement_address(ModuleAddress(a as u64)).0 as usize == b;
                    if m != if comp { 2 } else { 1 } {
                        return (
                            Status::Fail,
                            format!(
                                "modules {} and {} share {m} cross edges",
                                fmt_b(ModuleAddress(a as u64)),
                                fmt_b(ModuleAddress(b as u64))
                            ),
                        );
                    }
                }
            }
            (
                Status::Pass,
                format!("all {} module pairs", modules * (modules - 1) / 2),
            )
        } else {
            // Per sampled module, count exits to each target module. A full
            // scan is only possible at n = 32; beyond that each sampled
            // vertex's cross edge must be among the edges derived for its
            // module pair, and that pair must carry the right count.
            let (mods, scope) =
                module_scope(dim, if dim.n() <= 32 { FULL_MODULE_SAMPLE } else { 4 });
            for &b in &mods {
                let nb = dim.complement_address(b);
                if dim.n() <= 32 {
                    let mut hits = std::collections::HashMap::new();
                    for a in inner_addresses(dim) {
                        *hits
                            .entry(dim.module_address(dim.external_neighbor(dim.join(a, b))))
                            .or_insert(0u32) += 1;
                    }
                    let bad = hits
                        .iter()
                        .find(|&(&t, &m)| m != if t == nb { 2 } else { 1 });
                    if let Some((&t, &m)) = bad {
                        return (
                            Status::Fail,
                            format!("{} -> {}: {m} edges", fmt_b(b), fmt_b(t)),
                        );
                    }
                    continue;
                }
                for a in inner_addresses(dim) {
                    let v = dim.join(a, b);
                    let w = dim.external_neighbor(v);
                    let t = dim.module_address(w);
                    let edges = match cross_edges(b, t, dim) {
                        Ok(e) => e,
                        Err(e) => return (Status::Fail, e.to_string()),
                    };
                    let want = if t == nb { 2 } else { 1 };
                    if edges.len() != want || !edges.contains(&(v, w)) {
                        return (
                            Status::Fail,
                            format!("{} -> {} is not a derived cross edge", fmt_v(v), fmt_v(w)),
                        );
                    }
                }
            }
            (Status::Pass, scope)
        }
    }));
    checks
}

/// Upper halves of a module: all of them when `n <= 32`, a sample otherwise.
fn inner_addresses(dim: Dim) -> Box<dyn Iterator<Item = ModuleAddress>> {
    if dim.n() <= 32 {
        Box::new(dim.addresses())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        let mask = dim.module_count() - 1;
        Box::new((0..SAMPLE_SIZE).map(move |_| ModuleAddress(rng.gen::<u64>() & mask)))
    }
}

/// `N(B·B) ∩ N(complement(B)·B) = ∅` for every module `B`.
pub fn check_no_common_neighbor(dim: Dim) -> Check {
    if dim.n() < 4 {
        return skipped("apex_no_common_neighbor", "needs n >= 4");
    }
    timed("apex_no_common_neighbor", || {
        let (mods, scope) = module_scope(dim, SAMPLE_SIZE);
        let mut failures = Vec::new();
        for &b in &mods {
            let (u, v) = dim.apex_pair(b);
            let nv: Vec<_> = dim
                .neighbor_set(v, Variant::Fdsc)
                .into_iter()
                .map(|p| p.1)
                .collect();
            let mut common: Vec<_> = dim
                .neighbor_set(u, Variant::Fdsc)
                .into_iter()
                .map(|p| p.1)
                .filter(|w| nv.contains(w))
                .collect();
            if !common.is_empty() {
                common.sort_unstable();
                failures.push(format!(
                    "B={}: {} and {} share {}",
                    dim.format_address(b),
                    dim.format_label(u),
                    dim.format_label(v),
                    common
                        .iter()
                        .map(|&w| dim.format_label(w))
                        .collect::<Vec<_>>()
                        .join(",")
                ));
            }
        }
        match failures.len() {
            0 => (Status::Pass, scope),
            k => (
                Status::Fail,
                format!(
                    "{k} of {} modules have common apex neighbors; first: {}",
                    mods.len(),
                    failures[0]
                ),
            ),
        }
    })
}

/// Pairwise common-neighbor bound inside `N(u)`, and a triangle in `N(u)`
/// whose complement in `N(u)` is independent.
pub fn check_neighborhood_structure(g: &Graph) -> Vec<Check> {
    let dim = g.dim();
    if dim.d() < 2 {
        return vec![
            skipped("neighbor_pair_common_bound", "needs d >= 2"),
            skipped("neighborhood_triangle", "needs d >= 2"),
        ];
    }
    let count = g.vertex_count();
    let fmt = |v: usize| dim.format_label(VertexLabel(v as u64));
    let pair_bound = timed("neighbor_pair_common_bound", || {
        let mut worst = 0usize;
        for u in 0..count {
            let row = g.neighbors(u);
            for (i, &v) in row.iter().enumerate() {
                for &w in &row[i + 1..] {
                    let nw = g.neighbors(w as usize);
                    let common = g
                        .neighbors(v as usize)
                        .iter()
                        .filter(|&&x| x as usize != u && nw.binary_search(&x).is_ok())
                        .count();
                    worst = worst.max(common);
                    if common > 1 {
                        return (
                            Status::Fail,
                            format!(
                                "{} and {} in N({}) share {common} other neighbors",
                                fmt(v as usize),
                                fmt(w as usize),
                                fmt(u)
                            ),
                        );
                    }
                }
            }
        }
        (
            Status::Pass,
            format!("max shared neighbors besides u: {worst}; all {count} vertices"),
        )
    });

    let triangle = timed("neighborhood_triangle", || {
        let mut fallbacks = 0usize;
        let mut first_fallback = None;
        for u in 0..count {
            let uu = VertexLabel(u as u64);
            let witness = [
                dim.e1_neighbor(uu).index(),
                dim.indexed_neighbor(uu, dim.d()).index(),
                dim.f_neighbor(uu).index(),
            ];
            if triangle_with_independent_rest(g, u, witness) {
                continue;
            }
            let row = g.neighbors(u);
            let mut found = false;
            'search: for i in 0..row.len() {
                for j in i + 1..row.len() {
                    for k in j + 1..row.len() {
                        let t = [row[i] as usize, row[j] as usize, row[k] as usize];
                        if triangle_with_independent_rest(g, u, t) {
                            found = true;
                            break 'search;
                        }
                    }
                }
            }
            if !found {
                return (
                    Status::Fail,
                    format!(
                        "N({}) has no triangle with an independent remainder",
                        fmt(u)
                    ),
                );
            }
            fallbacks += 1;
            first_fallback.get_or_insert(u);
        }
        match first_fallback {
            None => (
                Status::Pass,
                format!("fixed witness {{u_1, u_d, u_f}} for all {count} vertices; e.g. {}: {{{}, {}, {}}}",
                    fmt(0),
                    fmt(dim.e1_neighbor(VertexLabel(0)).index()),
                    fmt(dim.indexed_neighbor(VertexLabel(0), dim.d()).index()),
                    fmt(dim.f_neighbor(VertexLabel(0)).index())),
            ),
            Some(u) => (
                Status::Pass,
                format!("fallback search used for {fallbacks} vertices (first {}); fixed witness not universal", fmt(u)),
            ),
        }
    });
    vec![pair_bound, triangle]
}

fn triangle_with_independent_rest(g: &Graph, u: usize, t: [usize; 3]) -> bool {
    if !(g.has_edge(t[0], t[1]) && g.has_edge(t[1], t[2]) && g.has_edge(t[0], t[2])) {
        return false;
    }
    let rest: Vec<usize> = g
        .neighbors(u)
        .iter()
        .map(|&v| v as usize)
        .filter(|v| !t.contains(v))
        .collect();
    rest.iter()
        .enumerate()
        .all(|(i, &a)| rest[i + 1..].iter().all(|&b| !g.has_edge(a, b)))
}

/// Every check for `dim`. Graph-backed checks are skipped past the
/// materialization cap.
pub fn run_all(dim: Dim) -> LemmaReport {
    let mut checks = check_label_invariants(dim);
    checks.extend(check_cross_edges(dim));
    checks.push(check_no_common_neighbor(dim));
    match Graph::build(dim, Variant::Fdsc) {
        Ok(g) => {
            checks.extend(check_basic_structure(&g));
            checks.extend(check_neighborhood_structure(&g));
        }
        Err(e) => {
            for name in [
                "regularity",
                "vertex_edge_counts",
                "module_decomposition",
                "girth",
                "complete_quotient",
                "neighbor_pair_common_bound",
                "neighborhood_triangle",
            ] {
                checks.push(skipped(name, e.to_string()));
            }
        }
    }
    LemmaReport::new(dim, checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fdsc(d: u32) -> Graph {
        Graph::build(Dim::new(d).unwrap(), Variant::Fdsc).unwrap()
    }

    fn all_pass(checks: &[Check]) {
        for c in checks {
            assert_eq!(c.status, Status::Pass, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn basic_structure_small() {
        all_pass(&check_basic_structure(&fdsc(2)));
        all_pass(&check_basic_structure(&fdsc(3)));
    }

    #[test]
    fn cross_edges_small() {
        all_pass(&check_cross_edges(Dim::new(2).unwrap()));
        all_pass(&check_cross_edges(Dim::new(3).unwrap()));
    }

    #[test]
    fn common_neighbor_fails_on_fdsc4_modules() {
        // Modules of FDSC_4 are K_4, so the apex pair shares two neighbors.
        let c = check_no_common_neighbor(Dim::new(2).unwrap());
        assert_eq!(c.status, Status::Fail);
        assert!(
            c.detail.contains("B=00: 0000 and 1100 share 0100,1000"),
            "{}",
            c.detail
        );
        assert_eq!(
            check_no_common_neighbor(Dim::new(3).unwrap()).status,
            Status::Pass
        );
    }

    #[test]
    fn neighborhood_fdsc4_witness() {
        let checks = check_neighborhood_structure(&fdsc(2));
        all_pass(&checks);
        assert!(
            checks[1].detail.contains("{1000, 1100, 0100}"),
            "{}",
            checks[1].detail
        );
    }

    #[test]
    fn run_all_n8() {
        let r = run_all(Dim::new(3).unwrap());
        assert!(r.overall, "{:#?}", r.checks);
        assert!(r.checks.iter().all(|c| c.status == Status::Pass));
    }

    #[test]
    fn run_all_n64_skips_graph_checks() {
        let r = run_all(Dim::new(6).unwrap());
        assert!(r.overall, "{:#?}", r.checks);
        assert_eq!(r.check("regularity").unwrap().status, Status::Skipped);
        assert_eq!(r.check("adjacency_symmetric").unwrap().status, Status::Pass);
        assert_eq!(
            r.check("apex_no_common_neighbor").unwrap().status,
            Status::Pass
        );
    }

    #[test]
    fn run_all_n2() {
        let r = run_all(Dim::new(1).unwrap());
        assert!(r.overall);
        assert_eq!(
            r.check("module_decomposition").unwrap().status,
            Status::Skipped
        );
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_all(Dim::new(3).unwrap());
        let b = run_all(Dim::new(3).unwrap());
        assert_eq!(a.digest(), b.digest());
        assert_eq!(
            serde_json::to_string(&a.canonical_json()).unwrap(),
            serde_json::to_string(&b.canonical_json()).unwrap()
        );
    }

    #[test]
    fn overall_is_conjunction() {
        let r = run_all(Dim::new(2).unwrap());
        let any_fail = r.checks.iter().any(|c| c.status == Status::Fail);
        assert_eq!(r.overall, !any_fail);
    }
}
