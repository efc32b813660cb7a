//! Materialized `FDSC_n` / `DSC_n` graphs and the structural queries run on
//! them.

use std::collections::VecDeque;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::label::{Dim, ModuleAddress, NeighborKind, Variant, VertexLabel};

/// Largest label width that is materialized (`2^16` vertices).
pub const MAX_GRAPH_BITS: u32 = 16;

/// Default cap on the members listed for the smallest component.
pub const DEFAULT_MEMBER_LIMIT: usize = 32;

#[derive(Clone, Debug)]
pub struct Graph {
    dim: Dim,
    variant: Variant,
    degree: usize,
    /// `degree` sorted neighbor indices per vertex, vertex-major.
    adj: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCensus {
    pub survivor_count: usize,
    pub component_count: usize,
    /// Component sizes, largest first.
    pub component_sizes: Vec<usize>,
    /// Members of a smallest component (lowest-labelled one on ties),
    /// truncated to the configured limit.
    pub smallest_component_members: Vec<VertexLabel>,
}

impl ComponentCensus {
    /// Disconnected, or at most one survivor.
    pub fn is_disconnected_or_trivial(&self) -> bool {
        self.component_count >= 2 || self.survivor_count <= 1
    }
}

/// A shortest cycle and its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Girth {
    pub length: usize,
    pub witness: Vec<VertexLabel>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCensus {
    pub module_count: usize,
    pub pairs_present: usize,
    pub pair_total: usize,
    pub min_multiplicity: u32,
    pub max_multiplicity: u32,
    /// Pairs whose multiplicity is 2 exactly when their addresses are
    /// complementary, and 1 otherwise.
    pub doubles_exactly_complementary: bool,
    multiplicity: Vec<u8>,
}

impl QuotientCensus {
    pub fn multiplicity(&self, a: ModuleAddress, b: ModuleAddress) -> u32 {
        self.multiplicity[a.0 as usize * self.module_count + b.0 as usize] as u32
    }

    pub fn is_complete(&self) -> bool {
        self.pairs_present == self.pair_total
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Edges,
    Dot,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(ExportFormat::Edges),
            "dot" => Ok(ExportFormat::Dot),
            other => Err(Error::param(format!(
                "unknown format `{other}`, expected edges or dot"
            ))),
        }
    }
}

impl Graph {
    /// Materializes the graph from the label-level neighbor rules.
    pub fn build(dim: Dim, variant: Variant) -> Result<Graph> {
        if dim.n() > MAX_GRAPH_BITS {
            return Err(Error::ResourceCap(format!(
                "n = {} exceeds the materialization cap n <= {MAX_GRAPH_BITS}",
                dim.n()
            )));
        }
        let degree = dim.degree(variant);
        let kinds = dim.kinds(variant);
        let count = 1usize << dim.n();
        let mut adj = Vec::with_capacity(count * degree);
        let mut row = Vec::with_capacity(degree);
        for u in 0..count as u64 {
            row.clear();
            row.extend(
                kinds
                    .iter()
                    .map(|&kind| dim.neighbor(VertexLabel(u), kind).0 as u32),
            );
            row.sort_unstable();
            adj.extend_from_slice(&row);
        }
        Ok(Graph {
            dim,
            variant,
            degree,
            adj,
        })
    }

    #[inline]
    pub fn dim(&self) -> Dim {
        self.dim
    }

    #[inline]
    pub fn variant(&self) -> Variant {
        self.variant
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adj.len() / self.degree
    }

    /// Common degree of every vertex (the construction is regular).
    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v * self.degree..(v + 1) * self.degree]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    /// Each undirected edge once, smaller endpoint first, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| (v as usize) > u)
                .map(move |&v| (u, v as usize))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .chunks_exact(self.degree)
            .enumerate()
            .map(|(u, row)| row.iter().filter(|&&v| (v as usize) > u).count())
            .sum()
    }

    /// True when every row has `degree` distinct entries, no self-loops, and
    /// `v ∈ N(u) ⇔ u ∈ N(v)`.
    pub fn is_simple_symmetric(&self) -> bool {
        (0..self.vertex_count()).all(|u| {
            let row = self.neighbors(u);
            row.windows(2).all(|w| w[0] < w[1])
                && row
                    .iter()
                    .all(|&v| v as usize != u && self.has_edge(v as usize, u))
        })
    }

    pub fn components_after_removal<I>(&self, removed: I) -> ComponentCensus
    where
        I: IntoIterator<Item = VertexLabel>,
    {
        self.components_after_removal_with_limit(removed, DEFAULT_MEMBER_LIMIT)
    }

    /// Census of the subgraph induced by the vertices not in `removed`.
    /// Labels outside the vertex set are ignored.
    pub fn components_after_removal_with_limit<I>(
        &self,
        removed: I,
        member_limit: usize,
    ) -> ComponentCensus
    where
        I: IntoIterator<Item = VertexLabel>,
    {
        let count = self.vertex_count();
        let mut gone = vec![false; count];
        for v in removed {
            if let Some(slot) = gone.get_mut(v.index()) {
                *slot = true;
            }
        }
        let survivor_count = gone.iter().filter(|&&g| !g).count();

        let mut comp = vec![u32::MAX; count];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..count {
            if gone[start] || comp[start] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            comp[start] = id;
            queue.push_back(start);
            let mut size = 0usize;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for &y in self.neighbors(x) {
                    let y = y as usize;
                    if !gone[y] && comp[y] == u32::MAX {
                        comp[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            sizes.push(size);
        }

        // Components are discovered in order of their lowest label, so the
        // first minimum is the lowest-labelled smallest component.
        let smallest_component_members = match sizes.iter().enumerate().min_by_key(|&(_, s)| *s) {
            Some((id, _)) => comp
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == id as u32)
                .map(|(v, _)| VertexLabel(v as u64))
                .take(member_limit)
                .collect(),
            None => Vec::new(),
        };
        let component_count = sizes.len();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        ComponentCensus {
            survivor_count,
            component_count,
            component_sizes: sizes,
            smallest_component_members,
        }
    }

    pub fn is_connected(&self) -> bool {
        self.components_after_removal(std::iter::empty())
            .component_count
            == 1
    }

    /// Exact vertex connectivity.
    ///
    /// Takes a minimum-degree vertex `v` and returns the smallest local
    /// connectivity over `v` against each non-neighbor and over every
    /// non-adjacent pair inside `N(v)`, which is exact for any graph.
    /// Complete graphs give `|V| - 1`; disconnected graphs give 0.
    pub fn vertex_connectivity(&self) -> usize {
        let count = self.vertex_count();
        if !self.is_connected() {
            return 0;
        }
        if self.degree == count - 1 {
            return count - 1;
        }
        let mut net = SplitNetwork::new(self);
        let v = 0usize;
        let mut best = self.degree;
        for w in 0..count {
            if w != v && !self.has_edge(v, w) {
                best = best.min(net.local_connectivity(v, w, best));
            }
        }
        let nbrs = self.neighbors(v).to_vec();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !self.has_edge(x as usize, y as usize) {
                    best = best.min(net.local_connectivity(x as usize, y as usize, best));
                }
            }
        }
        best
    }

    /// Shortest cycle with a witness, or `None` for a forest.
    pub fn girth(&self) -> Option<Girth> {
        let count = self.vertex_count();
        for u in 0..count {
            let row = self.neighbors(u);
            for (i, &a) in row.iter().enumerate() {
                for &b in &row[i + 1..] {
                    if self.has_edge(a as usize, b as usize) {
                        return Some(Girth {
                            length: 3,
                            witness: [u, a as usize, b as usize]
                                .iter()
                                .map(|&x| VertexLabel(x as u64))
                                .collect(),
                        });
                    }
                }
            }
        }

        let mut best: Option<Girth> = None;
        let mut dist = vec![u32::MAX; count];
        let mut parent = vec![u32::MAX; count];
        let mut queue = VecDeque::new();
        for root in 0..count {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[root] = 0;
            parent[root] = u32::MAX;
            queue.clear();
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                if let Some(g) = &best {
                    if 2 * dist[x] as usize + 1 >= g.length {
                        break;
                    }
                }
                for &y in self.neighbors(x) {
                    let y = y as usize;
                    if dist[y] == u32::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x as u32;
                        queue.push_back(y);
                    } else if parent[x] as usize != y {
                        let len = (dist[x] + dist[y] + 1) as usize;
                        if best.as_ref().is_none_or(|g| len < g.length) {
                            let mut left = path_to_root(&parent, x);
                            let right = path_to_root(&parent, y);
                            left.reverse();
                            // left runs root..x; append y..(child of root).
                            left.extend(right.iter().take(right.len() - 1));
                            best = Some(Girth {
                                length: len,
                                witness: left.into_iter().map(|v| VertexLabel(v as u64)).collect(),
                            });
                        }
                    }
                }
            }
        }
        best
    }

    /// Module-level quotient: cross-edge multiplicity for every module pair.
    pub fn quotient_census(&self) -> Result<QuotientCensus> {
        if self.variant != Variant::Fdsc || self.dim.n() < 4 {
            return Err(Error::param(
                "quotient census needs an FDSC graph with n >= 4",
            ));
        }
        let dim = self.dim;
        let modules = dim.module_count() as usize;
        let mut multiplicity = vec![0u8; modules * modules];
        for (u, v) in self.edges() {
            let a = dim.module_address(VertexLabel(u as u64)).0 as usize;
            let b = dim.module_address(VertexLabel(v as u64)).0 as usize;
            if a != b {
                multiplicity[a * modules + b] += 1;
                multiplicity[b * modules + a] += 1;
            }
        }
        let mut pairs_present = 0;
        let mut min_m = u32::MAX;
        let mut max_m = 0;
        let mut exact = true;
        for a in 0..modules {
            for b in a + 1..modules {
                let m = multiplicity[a * modules + b] as u32;
                if m > 0 {
                    pairs_present += 1;
                }
                min_m = min_m.min(m);
                max_m = max_m.max(m);
                let complementary = dim.complement_address(ModuleAddress(a as u64)).0 as usize == b;
                exact &= m == if complementary { 2 } else { 1 };
            }
        }
        Ok(QuotientCensus {
            module_count: modules,
            pairs_present,
            pair_total: modules * (modules - 1) / 2,
            min_multiplicity: min_m,
            max_multiplicity: max_m,
            doubles_exactly_complementary: exact,
            multiplicity,
        })
    }

    pub fn export<W: Write>(&self, format: ExportFormat, out: &mut W) -> Result<()> {
        let dim = self.dim;
        let mut w = std::io::BufWriter::new(out);
        match format {
            ExportFormat::Edges => {
                writeln!(
                    w,
                    "# fdsc d={} n={} variant={}",
                    dim.d(),
                    dim.n(),
                    self.variant
                )?;
                for (u, v) in self.edges() {
                    writeln!(
                        w,
                        "{} {}",
                        VertexLabel(u as u64).display(dim),
                        VertexLabel(v as u64).display(dim)
                    )?;
                }
            }
            ExportFormat::Dot => {
                writeln!(w, "graph {}_{} {{", self.variant, dim.n())?;
                for u in 0..self.vertex_count() {
                    writeln!(w, "  \"{}\";", VertexLabel(u as u64).display(dim))?;
                }
                for (u, v) in self.edges() {
                    writeln!(
                        w,
                        "  \"{}\" -- \"{}\";",
                        VertexLabel(u as u64).display(dim),
                        VertexLabel(v as u64).display(dim)
                    )?;
                }
                writeln!(w, "}}")?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn path_to_root(parent: &[u32], mut v: usize) -> Vec<usize> {
    let mut path = vec![v];
    while parent[v] != u32::MAX {
        v = parent[v] as usize;
        path.push(v);
    }
    path
}

/// Cross edges between modules `bi` and `bj`, derived from the swap rule
/// alone: two edges for complementary addresses, one otherwise. Each edge is
/// checked against the external-neighbor map before it is returned.
pub fn cross_edges(
    bi: ModuleAddress,
    bj: ModuleAddress,
    dim: Dim,
) -> Result<Vec<(VertexLabel, VertexLabel)>> {
    if dim.n() < 4 {
        return Err(Error::param("modules need n >= 4"));
    }
    dim.address(bi.0)?;
    dim.address(bj.0)?;
    if bi == bj {
        return Err(Error::param("cross edges need two distinct modules"));
    }
    let mut edges = Vec::with_capacity(2);
    if bj == dim.complement_address(bi) {
        edges.push((dim.join(bi, bi), dim.join(bj, bj)));
    }
    edges.push((dim.join(bj, bi), dim.join(bi, bj)));
    for &(a, b) in &edges {
        let ok = dim
            .neighbor_set(a, Variant::Fdsc)
            .contains(&(NeighborKind::External, b));
        if !ok {
            return Err(Error::param(format!(
                "derived pair ({}, {}) is not an external edge",
                dim.format_label(a),
                dim.format_label(b)
            )));
        }
    }
    Ok(edges)
}

/// Residual network on the vertex-split digraph used for local vertex
/// connectivity. Node `2v` is `v_in`, `2v + 1` is `v_out`.
struct SplitNetwork {
    first: Vec<u32>,
    next: Vec<u32>,
    to: Vec<u32>,
    cap: Vec<u8>,
    base_cap: Vec<u8>,
    prev_arc: Vec<u32>,
    queue: VecDeque<u32>,
}

impl SplitNetwork {
    fn new(g: &Graph) -> Self {
        let nodes = 2 * g.vertex_count();
        let mut net = SplitNetwork {
            first: vec![u32::MAX; nodes],
            next: Vec::new(),
            to: Vec::new(),
            cap: Vec::new(),
            base_cap: Vec::new(),
            prev_arc: vec![u32::MAX; nodes],
            queue: VecDeque::new(),
        };
        for v in 0..g.vertex_count() {
            net.add_arc(2 * v, 2 * v + 1);
            for &w in g.neighbors(v) {
                net.add_arc(2 * v + 1, 2 * w as usize);
            }
        }
        net.cap = net.base_cap.clone();
        net
    }

    fn push(&mut self, from: usize, to: usize, cap: u8) {
        self.to.push(to as u32);
        self.base_cap.push(cap);
        self.next.push(self.first[from]);
        self.first[from] = (self.to.len() - 1) as u32;
    }

    // Arc `i` and its reverse `i ^ 1` are stored adjacently.
    fn add_arc(&mut self, from: usize, to: usize) {
        self.push(from, to, 1);
        self.push(to, from, 0);
    }

    /// Number of internally vertex-disjoint `s`–`t` paths, stopping at `limit`.
    fn local_connectivity(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.cap.copy_from_slice(&self.base_cap);
        let source = 2 * s + 1;
        let sink = 2 * t;
        let mut flow = 0;
        while flow < limit {
            self.prev_arc.iter_mut().for_each(|p| *p = u32::MAX);
            self.queue.clear();
            self.queue.push_back(source as u32);
            let mut found = false;
            'bfs: while let Some(x) = self.queue.pop_front() {
                let mut arc = self.first[x as usize];
                while arc != u32::MAX {
                    let y = self.to[arc as usize] as usize;
                    if self.cap[arc as usize] > 0 && y != source && self.prev_arc[y] == u32::MAX {
                        self.prev_arc[y] = arc;
                        if y == sink {
                            found = true;
                            break 'bfs;
                        }
                        self.queue.push_back(y as u32);
                    }
                    arc = self.next[arc as usize];
                }
            }
            if !found {
                break;
            }
            let mut y = sink;
            while y != source {
                let arc = self.prev_arc[y] as usize;
                self.cap[arc] -= 1;
                self.cap[arc ^ 1] += 1;
                y = self.to[arc ^ 1] as usize;
            }
            flow += 1;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fdsc(d: u32) -> Graph {
        Graph::build(Dim::new(d).unwrap(), Variant::Fdsc).unwrap()
    }

    fn lab(g: &Graph, s: &str) -> VertexLabel {
        g.dim().parse_label(s).unwrap()
    }

    #[test]
    fn build_counts() {
        let g = fdsc(1);
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 6));
        let g = fdsc(2);
        assert_eq!((g.vertex_count(), g.edge_count()), (16, 32));
        let g = Graph::build(Dim::new(3).unwrap(), Variant::Dsc).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (256, 512));
        assert_eq!(g.edges().count(), 512);
        assert!(g.is_simple_symmetric());
    }

    #[test]
    fn build_cap() {
        let err = Graph::build(Dim::new(5).unwrap(), Variant::Fdsc).unwrap_err();
        assert!(matches!(err, Error::ResourceCap(_)));
    }

    #[test]
    fn census_examples() {
        let g = fdsc(2);
        let c = g.components_after_removal(std::iter::empty());
        assert_eq!(
            (c.component_count, c.component_sizes.clone()),
            (1, vec![16])
        );

        let c = g.components_after_removal(g.dim().labels());
        assert_eq!(c.component_count, 0);
        assert_eq!(c.survivor_count, 0);
        assert!(c.is_disconnected_or_trivial());

        let removed = ["1000", "1100", "1111", "0100"].map(|s| lab(&g, s));
        let c = g.components_after_removal(removed);
        assert_eq!(c.component_count, 2);
        assert_eq!(c.component_sizes, vec![11, 1]);
        assert_eq!(c.smallest_component_members, vec![VertexLabel(0)]);
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(fdsc(1).vertex_connectivity(), 3);
        assert_eq!(fdsc(2).vertex_connectivity(), 4);
        assert_eq!(fdsc(3).vertex_connectivity(), 5);
    }

    #[test]
    fn connectivity_of_dsc_matches_degree() {
        // DSC_n connectivity is d + 1.
        for d in 1..=3 {
            let g = Graph::build(Dim::new(d).unwrap(), Variant::Dsc).unwrap();
            assert_eq!(g.vertex_connectivity(), d as usize + 1);
        }
    }

    #[test]
    fn girth_examples() {
        assert_eq!(fdsc(1).girth().unwrap().length, 3);
        assert_eq!(fdsc(2).girth().unwrap().length, 3);
        let g = fdsc(3);
        let girth = g.girth().unwrap();
        assert_eq!(girth.length, 3);
        let dim = g.dim();
        let u = VertexLabel(0);
        let mut want = vec![u, dim.e1_neighbor(u), dim.f_neighbor(u)];
        let mut got = girth.witness.clone();
        want.sort();
        got.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn girth_bfs_path_on_triangle_free_graph() {
        // DSC_4 has no triangles; exercise the BFS branch and its witness.
        let g = Graph::build(Dim::new(2).unwrap(), Variant::Dsc).unwrap();
        let girth = g.girth().unwrap();
        assert_eq!(girth.witness.len(), girth.length);
        let w = &girth.witness;
        for i in 0..w.len() {
            assert!(g.has_edge(w[i].index(), w[(i + 1) % w.len()].index()));
        }
        let mut uniq = w.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), w.len());
    }

    #[test]
    fn quotient_examples() {
        let g = fdsc(2);
        let q = g.quotient_census().unwrap();
        assert_eq!(q.module_count, 4);
        assert!(q.is_complete());
        assert_eq!(q.multiplicity(ModuleAddress(0b00), ModuleAddress(0b11)), 2);
        assert_eq!(q.multiplicity(ModuleAddress(0b01), ModuleAddress(0b10)), 2);
        assert_eq!(q.multiplicity(ModuleAddress(0b00), ModuleAddress(0b01)), 1);
        assert!(q.doubles_exactly_complementary);

        let q = fdsc(3).quotient_census().unwrap();
        assert_eq!((q.module_count, q.pairs_present), (16, 120));
        assert!(fdsc(1).quotient_census().is_err());
    }

    #[test]
    fn cross_edge_examples() {
        let dim = Dim::new(2).unwrap();
        let p = |s| dim.parse_label(s).unwrap();
        assert_eq!(
            cross_edges(ModuleAddress(0b00), ModuleAddress(0b11), dim).unwrap(),
            vec![(p("0000"), p("1111")), (p("1100"), p("0011"))]
        );
        assert_eq!(
            cross_edges(ModuleAddress(0b00), ModuleAddress(0b01), dim).unwrap(),
            vec![(p("0100"), p("0001"))]
        );
        let d3 = Dim::new(3).unwrap();
        assert_eq!(
            cross_edges(ModuleAddress(0), ModuleAddress(0b1111), d3)
                .unwrap()
                .len(),
            2
        );
        assert!(cross_edges(ModuleAddress(1), ModuleAddress(1), d3).is_err());
    }

    #[test]
    fn export_edges() {
        let mut buf = Vec::new();
        fdsc(1).export(ExportFormat::Edges, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "# fdsc d=1 n=2 variant=fdsc");
        assert_eq!(
            &lines[1..],
            ["00 01", "00 10", "00 11", "01 10", "01 11", "10 11"]
        );

        let mut a = Vec::new();
        let mut b = Vec::new();
        fdsc(2).export(ExportFormat::Edges, &mut a).unwrap();
        fdsc(2).export(ExportFormat::Edges, &mut b).unwrap();
        assert_eq!(a, b);
        assert!(String::from_utf8(a)
            .unwrap()
            .starts_with("# fdsc d=2 n=4 variant=fdsc\n"));
    }

    #[test]
    fn export_dot() {
        let mut buf = Vec::new();
        fdsc(1).export(ExportFormat::Dot, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("graph fdsc_2 {"));
        assert_eq!(text.matches(" -- ").count(), 6);
        assert_eq!(
            text.lines()
                .filter(|l| l.ends_with("\";") && !l.contains("--"))
                .count(),
            4
        );
    }
}
