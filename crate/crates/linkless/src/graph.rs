//! Immutable simple undirected graphs on at most 32 labeled vertices.
//!
//! Adjacency is stored as one `u32` bitset per vertex, so every set
//! operation (neighborhood union, intersection, connectivity sweeps) is a
//! handful of word ops. All operations return a fresh graph; values are
//! freely shareable across threads.

use std::fmt;

use rand::Rng;

/// Hard vertex capacity. One machine word per adjacency row.
pub const MAX_VERTICES: usize = 32;

/// Returns a mask with the lowest `n` bits set.
#[inline(always)]
pub const fn low_bits(n: usize) -> u32 {
    (((1u64) << n) - 1) as u32
}

#[inline(always)]
const fn bit(v: usize) -> u32 {
    1u32 << v
}

/// Errors from structural graph operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {v} out of range for graph on {n} vertices")]
    OutOfRange { v: usize, n: usize },
    #[error("{{{u}, {v}}} is not an edge")]
    NotAnEdge { u: usize, v: usize },
    #[error("induced subgraph on the empty vertex set")]
    EmptySet,
    #[error("graph would have {n} vertices; capacity is {MAX_VERTICES}")]
    CapacityExceeded { n: usize },
    #[error("graphs must have at least one vertex")]
    ZeroVertices,
    #[error("loop at vertex {v}")]
    LoopEdge { v: usize },
}

/// An undirected edge with endpoints normalized to `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds an edge, normalizing endpoint order. Loops are rejected.
    pub fn new(a: usize, b: usize) -> Result<Edge, GraphError> {
        if a == b {
            return Err(GraphError::LoopEdge { v: a });
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    #[inline]
    pub fn u(&self) -> usize {
        self.u
    }

    #[inline]
    pub fn v(&self) -> usize {
        self.v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Parameters of a strongly regular graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Immutable simple graph on `1..=32` labeled vertices.
///
/// Invariants (checked by `debug_validate` after every construction):
/// symmetric adjacency, no loops, no bits at or above `n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: [u32; MAX_VERTICES],
    /// Original vertex id per slot, carried through deletions and
    /// contractions when enabled. `None` unless requested; ignored by
    /// equality and hashing.
    labels: Option<Box<[u8]>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj[..self.n].hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (i, e) in self.edges().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    fn check_order(n: usize) -> Result<(), GraphError> {
        if n == 0 {
            Err(GraphError::ZeroVertices)
        } else if n > MAX_VERTICES {
            Err(GraphError::CapacityExceeded { n })
        } else {
            Ok(())
        }
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Self::check_order(n)?;
        Ok(Graph {
            n,
            adj: [0; MAX_VERTICES],
            labels: None,
        })
    }

    /// Complete graph K_n.
    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        Self::check_order(n)?;
        let mask = low_bits(n);
        let mut adj = [0; MAX_VERTICES];
        for (v, row) in adj.iter_mut().enumerate().take(n) {
            *row = mask & !bit(v);
        }
        Ok(Graph {
            n,
            adj,
            labels: None,
        })
    }

    /// Graph from an explicit edge list. Duplicate edges are idempotent;
    /// loops and out-of-range endpoints error.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::OutOfRange { v: a, n });
            }
            if b >= n {
                return Err(GraphError::OutOfRange { v: b, n });
            }
            if a == b {
                return Err(GraphError::LoopEdge { v: a });
            }
            g.adj[a] |= bit(b);
            g.adj[b] |= bit(a);
        }
        g.debug_validate();
        Ok(g)
    }

    /// Uniform random graph: each pair becomes an edge with probability `p`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random_bool(p) {
                    g.adj[u] |= bit(v);
                    g.adj[v] |= bit(u);
                }
            }
        }
        Ok(g)
    }

    /// Enables label tracking: slot `v` is labeled `v` in this graph, and
    /// labels follow vertices through deletions and contractions.
    pub fn with_tracked_labels(mut self) -> Graph {
        self.labels = Some((0..self.n as u8).collect());
        self
    }

    /// Original label of slot `v`, if tracking is enabled.
    pub fn label_of(&self, v: usize) -> Option<usize> {
        self.labels.as_ref().map(|l| l[v] as usize)
    }

    /// Current slot of original label `lab`, if tracking is enabled and the
    /// labeled vertex still exists.
    pub fn slot_of_label(&self, lab: usize) -> Option<usize> {
        let labels = self.labels.as_ref()?;
        labels.iter().position(|&l| l as usize == lab)
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Bitmask of all vertices.
    #[inline]
    pub fn full_mask(&self) -> u32 {
        low_bits(self.n)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & bit(v) != 0
    }

    /// Neighbor bitset of `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u32 {
        debug_assert!(v < self.n);
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        debug_assert!(v < self.n);
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.adj[..self.n].iter().map(|r| r.count_ones()).sum();
        (total / 2) as usize
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        0..self.n
    }

    /// Edges in ascending `(u, v)` order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            bits_of(self.adj[u] & !low_bits(u + 1)).map(move |v| Edge { u, v })
        })
    }

    /// Complement within K_n.
    pub fn complement(&self) -> Graph {
        let mask = self.full_mask();
        let mut adj = [0; MAX_VERTICES];
        for v in 0..self.n {
            adj[v] = mask & !self.adj[v] & !bit(v);
        }
        let g = Graph {
            n: self.n,
            adj,
            labels: self.labels.clone(),
        };
        g.debug_validate();
        g
    }

    /// Contracts edge `e`: identifies the endpoints, drops the edge, and
    /// collapses any double edges. The merged vertex takes the smaller
    /// endpoint's slot; the larger endpoint's slot is back-filled by the
    /// last vertex, so relabeling is deterministic and replayable.
    pub fn contract_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let (u, v) = (e.u, e.v);
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge { u, v });
        }
        let map = |w: usize| -> Option<usize> {
            if w == u || w == v {
                Some(u)
            } else if w == self.n - 1 {
                Some(v)
            } else {
                Some(w)
            }
        };
        self.rebuild(self.n - 1, map)
    }

    /// Deletes vertex `v`; the freed slot is back-filled by the last vertex.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        if self.n == 1 {
            return Err(GraphError::ZeroVertices);
        }
        let last = self.n - 1;
        let map = |w: usize| -> Option<usize> {
            if w == v {
                None
            } else if w == last {
                Some(v)
            } else {
                Some(w)
            }
        };
        self.rebuild(self.n - 1, map)
    }

    pub fn delete_edge(&self, e: Edge) -> Result<Graph, GraphError> {
        let (u, v) = (e.u, e.v);
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge { u, v });
        }
        let mut g = self.clone();
        g.adj[u] &= !bit(v);
        g.adj[v] &= !bit(u);
        g.debug_validate();
        Ok(g)
    }

    /// Adds or removes the edge `{u, v}`.
    pub fn toggle_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let e = Edge::new(u, v)?;
        if e.v >= self.n {
            return Err(GraphError::OutOfRange { v: e.v, n: self.n });
        }
        let mut g = self.clone();
        g.adj[e.u] ^= bit(e.v);
        g.adj[e.v] ^= bit(e.u);
        g.debug_validate();
        Ok(g)
    }

    /// Induced subgraph on the vertices of `mask`, relabeled in ascending
    /// order of their original indices.
    pub fn induced(&self, mask: u32) -> Result<Graph, GraphError> {
        if mask == 0 {
            return Err(GraphError::EmptySet);
        }
        if mask & !self.full_mask() != 0 {
            let v = (mask & !self.full_mask()).trailing_zeros() as usize;
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        let mut rank = [usize::MAX; MAX_VERTICES];
        let mut next = 0;
        for w in 0..self.n {
            if mask & bit(w) != 0 {
                rank[w] = next;
                next += 1;
            }
        }
        self.rebuild(next, |w| (rank[w] != usize::MAX).then_some(rank[w]))
    }

    /// Adds one vertex adjacent to every existing vertex.
    pub fn cone(&self) -> Result<Graph, GraphError> {
        if self.n == MAX_VERTICES {
            return Err(GraphError::CapacityExceeded { n: self.n + 1 });
        }
        let apex = self.n;
        let mut adj = self.adj;
        adj[apex] = self.full_mask();
        for row in adj.iter_mut().take(apex) {
            *row |= bit(apex);
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut l = l.to_vec();
            l.push(apex as u8);
            l.into_boxed_slice()
        });
        let g = Graph {
            n: apex + 1,
            adj,
            labels,
        };
        g.debug_validate();
        Ok(g)
    }

    /// Induced subgraph on `{v} ∪ N(v)`.
    pub fn neighborhood(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange { v, n: self.n });
        }
        self.induced(self.adj[v] | bit(v))
    }

    /// Relabels by `perm` (`perm[v]` is the new index of `v`).
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = [0; MAX_VERTICES];
        for v in 0..self.n {
            for w in bits_of(self.adj[v]) {
                adj[perm[v]] |= bit(perm[w]);
            }
        }
        let g = Graph {
            n: self.n,
            adj,
            labels: None,
        };
        g.debug_validate();
        g
    }

    /// `(n, k, λ, μ)` if the graph is strongly regular. Complete and empty
    /// graphs are rejected (μ respectively λ would be undefined).
    pub fn srg_params(&self) -> Option<SrgParams> {
        let n = self.n;
        if n < 3 {
            return None;
        }
        let m = self.edge_count();
        if m == 0 || m == n * (n - 1) / 2 {
            return None;
        }
        let k = self.degree(0);
        let mut lambda = None;
        let mut mu = None;
        for u in 0..n {
            if self.degree(u) != k {
                return None;
            }
            for v in (u + 1)..n {
                let common = (self.adj[u] & self.adj[v]).count_ones() as usize;
                let slot = if self.has_edge(u, v) {
                    &mut lambda
                } else {
                    &mut mu
                };
                match slot {
                    None => *slot = Some(common),
                    Some(c) if *c != common => return None,
                    _ => {}
                }
            }
        }
        Some(SrgParams {
            n,
            k,
            lambda: lambda?,
            mu: mu?,
        })
    }

    /// Whether the vertices of `mask` induce a connected subgraph.
    /// The empty set counts as not connected.
    pub fn is_connected_subset(&self, mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        let start = mask.trailing_zeros() as usize;
        let mut seen = bit(start);
        loop {
            let mut frontier = 0;
            for v in bits_of(seen) {
                frontier |= self.adj[v] & mask;
            }
            let grown = seen | frontier;
            if grown == seen {
                break;
            }
            seen = grown;
        }
        seen == mask
    }

    /// Whether the whole graph is connected.
    pub fn is_connected(&self) -> bool {
        self.is_connected_subset(self.full_mask())
    }

    /// Length of the shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        // BFS from every vertex; a cross or back edge at depth d closes a
        // cycle of length <= 2d + 1. Exact for these sizes.
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            let mut dist = [usize::MAX; MAX_VERTICES];
            let mut parent = [usize::MAX; MAX_VERTICES];
            dist[root] = 0;
            let mut queue = vec![root];
            let mut head = 0;
            while head < queue.len() {
                let x = queue[head];
                head += 1;
                for y in bits_of(self.adj[x]) {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        parent[y] = x;
                        queue.push(y);
                    } else if parent[x] != y {
                        let cycle = dist[x] + dist[y] + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// Core rebuild helper. `map(w)` gives the new slot of old vertex `w`:
    /// `None` drops the vertex with its incidences, and several old
    /// vertices mapping to one slot are merged (double edges collapse).
    /// When slots merge, the lowest-index old vertex supplies the label.
    fn rebuild(
        &self,
        new_n: usize,
        map: impl Fn(usize) -> Option<usize>,
    ) -> Result<Graph, GraphError> {
        let mut adj = [0u32; MAX_VERTICES];
        for w in 0..self.n {
            let Some(target) = map(w) else { continue };
            for x in bits_of(self.adj[w]) {
                let Some(tx) = map(x) else { continue };
                if tx != target {
                    adj[target] |= bit(tx);
                    adj[tx] |= bit(target);
                }
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![u8::MAX; new_n];
            for w in 0..self.n {
                if let Some(t) = map(w) {
                    if out[t] == u8::MAX {
                        out[t] = l[w];
                    }
                }
            }
            out.into_boxed_slice()
        });
        let g = Graph {
            n: new_n,
            adj,
            labels,
        };
        g.debug_validate();
        Ok(g)
    }

    /// Panics (in debug builds) if any representation invariant is broken.
    pub fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        {
            assert!(self.n >= 1 && self.n <= MAX_VERTICES);
            let mask = self.full_mask();
            for v in 0..self.n {
                assert_eq!(self.adj[v] & !mask, 0, "bits above n at vertex {v}");
                assert_eq!(self.adj[v] & bit(v), 0, "loop at vertex {v}");
            }
            for v in self.n..MAX_VERTICES {
                assert_eq!(self.adj[v], 0, "stale row {v}");
            }
            for u in 0..self.n {
                for v in bits_of(self.adj[u]) {
                    assert_ne!(self.adj[v] & bit(u), 0, "asymmetric at ({u},{v})");
                }
            }
            if let Some(l) = &self.labels {
                assert_eq!(l.len(), self.n);
            }
        }
    }
}

/// Iterates the set bit positions of `mask` in ascending order.
pub fn bits_of(mask: u32) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let rest = m & (m - 1);
            if rest == 0 {
                None
            } else {
                Some(rest)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}
