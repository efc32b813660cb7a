//! Exact "is `G - S` disconnected or trivial?" for small removal sets `S`.
//!
//! Every survivor reaches some vertex of the boundary `N(S) - S` without
//! touching `S`. If, for each connected piece `C` of `G[S]`, the survivors in
//! `N(C)` lie in one component of `G - S`, any path of `G` can be rerouted
//! around each piece, so `G - S` is connected. Conversely, a search from one
//! boundary vertex that exhausts its component without meeting the rest of
//! that piece's boundary has found two components. Each search therefore
//! stops as soon as the piece's boundary is covered, which for sparse
//! removals happens within a few hops.

use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Disconnected or at most one survivor.
    Cut,
    Intact,
    /// Too few vertices removed to matter.
    Pruned,
}

/// Reusable scratch space for repeated removal checks on one graph.
pub struct RemovalProbe<'g> {
    graph: &'g Graph,
    epoch: u32,
    removed: Vec<u32>,
    visited: Vec<u32>,
    target: Vec<u32>,
    queue: Vec<u32>,
    set: Vec<u32>,
    piece: Vec<u32>,
    boundary: Vec<u32>,
    placed: Vec<bool>,
}

impl<'g> RemovalProbe<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let count = graph.vertex_count();
        RemovalProbe {
            graph,
            epoch: 0,
            removed: vec![0; count],
            visited: vec![0; count],
            target: vec![0; count],
            queue: Vec::with_capacity(count),
            set: Vec::new(),
            piece: Vec::new(),
            boundary: Vec::new(),
            placed: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    fn bump(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.removed.iter_mut().for_each(|x| *x = 0);
            self.visited.iter_mut().for_each(|x| *x = 0);
            self.target.iter_mut().for_each(|x| *x = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// True when removing `vertices` (duplicates allowed) leaves a
    /// disconnected graph or at most one vertex. Assumes the graph itself
    /// is connected.
    pub fn disconnects(&mut self, vertices: &[u32]) -> bool {
        self.classify(vertices, 0) == Outcome::Cut
    }

    /// Like [`disconnects`](Self::disconnects), but a set with fewer than
    /// `floor` distinct vertices and at least two survivors is reported as
    /// [`Outcome::Pruned`] without a search. Sound whenever `floor` does not
    /// exceed the vertex connectivity.
    pub fn classify(&mut self, vertices: &[u32], floor: usize) -> Outcome {
        let graph = self.graph;
        let mark = self.bump();
        self.set.clear();
        for &v in vertices {
            if self.removed[v as usize] != mark {
                self.removed[v as usize] = mark;
                self.set.push(v);
            }
        }
        let count = graph.vertex_count();
        if count - self.set.len() <= 1 {
            return Outcome::Cut;
        }
        if self.set.len() < floor {
            return Outcome::Pruned;
        }
        if self.set.is_empty() {
            return Outcome::Intact;
        }

        self.placed.clear();
        self.placed.resize(self.set.len(), false);
        for seed in 0..self.set.len() {
            if self.placed[seed] {
                continue;
            }
            // Collect the piece of G[S] containing set[seed].
            self.placed[seed] = true;
            self.piece.clear();
            self.piece.push(self.set[seed]);
            let mut head = 0;
            while head < self.piece.len() {
                let x = self.piece[head];
                head += 1;
                for (idx, &y) in self.set.iter().enumerate() {
                    if !self.placed[idx] && graph.has_edge(x as usize, y as usize) {
                        self.placed[idx] = true;
                        self.piece.push(y);
                    }
                }
            }

            let tmark = self.bump();
            // `bump` may wrap; re-stamp the removal set under the new epoch.
            for &v in &self.set {
                self.removed[v as usize] = tmark;
            }
            self.boundary.clear();
            for &x in &self.piece {
                for &y in graph.neighbors(x as usize) {
                    if self.removed[y as usize] != tmark && self.target[y as usize] != tmark {
                        self.target[y as usize] = tmark;
                        self.boundary.push(y);
                    }
                }
            }
            if !self.boundary_connected(tmark) {
                return Outcome::Cut;
            }
        }
        Outcome::Intact
    }

    fn boundary_connected(&mut self, mark: u32) -> bool {
        let graph = self.graph;
        let Some(&start) = self.boundary.first() else {
            return true;
        };
        let mut remaining = self.boundary.len() - 1;
        if remaining == 0 {
            return true;
        }
        self.queue.clear();
        self.queue.push(start);
        self.visited[start as usize] = mark;
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            for &y in graph.neighbors(x as usize) {
                let yi = y as usize;
                if self.removed[yi] == mark || self.visited[yi] == mark {
                    continue;
                }
                self.visited[yi] = mark;
                if self.target[yi] == mark {
                    remaining -= 1;
                    if remaining == 0 {
                        return true;
                    }
                }
                self.queue.push(y);
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::{Dim, Variant, VertexLabel};
    use proptest::prelude::*;

    fn fdsc(d: u32) -> Graph {
        Graph::build(Dim::new(d).unwrap(), Variant::Fdsc).unwrap()
    }

    #[test]
    fn isolating_a_vertex_is_detected() {
        let g = fdsc(3);
        let mut probe = RemovalProbe::new(&g);
        let removed: Vec<u32> = g.neighbors(0).to_vec();
        assert!(probe.disconnects(&removed));
        let mut closed = removed.clone();
        closed.push(0);
        assert!(!probe.disconnects(&closed));
        assert!(!probe.disconnects(&[]));
    }

    #[test]
    fn trivial_survivors() {
        let g = fdsc(1);
        let mut probe = RemovalProbe::new(&g);
        assert!(probe.disconnects(&[0, 1, 2]));
        assert!(probe.disconnects(&[0, 1, 2, 3]));
        assert!(!probe.disconnects(&[0, 1]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn agrees_with_full_census(d in 1u32..=3, picks in prop::collection::vec(any::<u16>(), 0..12)) {
            let g = fdsc(d);
            let count = g.vertex_count();
            let removed: Vec<u32> = picks.iter().map(|&p| (p as usize % count) as u32).collect();
            let census = g.components_after_removal(removed.iter().map(|&v| VertexLabel(v as u64)));
            let mut probe = RemovalProbe::new(&g);
            prop_assert_eq!(probe.disconnects(&removed), census.is_disconnected_or_trivial());
        }

        #[test]
        fn agrees_on_neighborhood_heavy_sets(d in 2u32..=3, center in any::<u16>(), drop in 0usize..6, extra in any::<u16>()) {
            let g = fdsc(d);
            let count = g.vertex_count();
            let c = center as usize % count;
            let mut removed: Vec<u32> = g.neighbors(c).to_vec();
            removed.remove(drop % removed.len());
            removed.push((extra as usize % count) as u32);
            let census = g.components_after_removal(removed.iter().map(|&v| VertexLabel(v as u64)));
            let mut probe = RemovalProbe::new(&g);
            prop_assert_eq!(probe.disconnects(&removed), census.is_disconnected_or_trivial());
        }
    }
}
