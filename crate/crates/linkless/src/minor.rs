//! Exact minor containment with replayable branch-set certificates.
//!
//! `find_minor` runs a complete backtracking search over branch-set
//! assignments; absence of a result is a proof of absence, not a heuristic
//! answer. `brute_force_has_minor` is an independent oracle that
//! exhaustively enumerates assignments of host vertices to pattern vertices
//! (or "unused") for hosts on at most 8 vertices.

use crate::codec::{decode_graph6, encode_graph6, ParseError};
use crate::graph::{bits_of, low_bits, Edge, Graph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MinorError {
    #[error("model fails validation")]
    InvalidModel,
    #[error("brute-force oracle supports hosts up to 8 vertices, got {n}")]
    CapacityExceeded { n: usize },
}

/// Witness that `pattern` is a minor of `host`: one branch set per pattern
/// vertex. Valid models have pairwise disjoint branch sets, each inducing a
/// connected subgraph of the host, with a host edge joining the branch sets
/// of every pattern edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub pattern: Graph,
    pub host: Graph,
    /// `branch_sets[a]` is the host-vertex bitset assigned to pattern
    /// vertex `a`.
    pub branch_sets: Vec<u32>,
}

/// Re-checks the three model invariants. Pure check, shared by nothing in
/// the search path of `find_minor`.
pub fn validate_model(m: &MinorModel) -> bool {
    let k = m.pattern.vertex_count();
    if m.branch_sets.len() != k {
        return false;
    }
    let host_mask = m.host.full_mask();
    let mut seen = 0u32;
    for &set in &m.branch_sets {
        if set == 0 || set & !host_mask != 0 || set & seen != 0 {
            return false;
        }
        seen |= set;
        if !m.host.is_connected_subset(set) {
            return false;
        }
    }
    for e in m.pattern.edges() {
        if !sets_touch(&m.host, m.branch_sets[e.u()], m.branch_sets[e.v()]) {
            return false;
        }
    }
    true
}

fn sets_touch(host: &Graph, a: u32, b: u32) -> bool {
    bits_of(a).any(|v| host.neighbors(v) & b != 0)
}

/// Complete search for a branch-set model of `pattern` in `host`.
///
/// Deterministic: pattern vertices are placed in descending-degree order
/// and every tie in the search breaks toward the lowest host vertex index,
/// so a given (host, pattern) pair always yields the same model.
pub fn find_minor(host: &Graph, pattern: &Graph) -> Option<MinorModel> {
    let k = pattern.vertex_count();
    let n = host.vertex_count();
    if k > n || pattern.edge_count() > host.edge_count() {
        return None;
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(pattern.degree(p)), p));

    // Interchangeable pattern vertices (equal neighborhoods after ignoring
    // each other) admit branch-set swaps, so their roots can be forced into
    // ascending order. Twin classes by open and by closed neighborhood are
    // each sound; applying both at once is only sound when no vertex sits
    // in a nontrivial class of both kinds.
    let twin_prev = twin_predecessors(pattern, &order);

    // req[t]: earlier placement positions adjacent (in the pattern) to the
    // vertex placed at position t.
    let mut pos_of = vec![0usize; k];
    for (t, &p) in order.iter().enumerate() {
        pos_of[p] = t;
    }
    let mut req: Vec<Vec<usize>> = vec![Vec::new(); k];
    // uncovered[t]: pattern edges whose later placement position is >= t.
    let mut uncovered = vec![0usize; k + 1];
    for e in pattern.edges() {
        let (a, b) = (pos_of[e.u()], pos_of[e.v()]);
        let (lo, hi) = (a.min(b), a.max(b));
        req[hi].push(lo);
        for slot in uncovered.iter_mut().take(hi + 1) {
            *slot += 1;
        }
    }

    let mut search = Search {
        host,
        k,
        twin_prev,
        req,
        uncovered,
        sets: vec![0; k],
        nbr: vec![0; k],
        roots: vec![0; k],
        unused: host.full_mask(),
    };
    if !search.place(0) {
        return None;
    }
    let mut branch_sets = vec![0u32; k];
    for (t, &p) in order.iter().enumerate() {
        branch_sets[p] = search.sets[t];
    }
    let model = MinorModel {
        pattern: pattern.clone(),
        host: host.clone(),
        branch_sets,
    };
    debug_assert!(validate_model(&model));
    Some(model)
}

/// Whether `pattern` is a minor of `host` (no certificate retained).
pub fn has_minor(host: &Graph, pattern: &Graph) -> bool {
    find_minor(host, pattern).is_some()
}

struct Search<'a> {
    host: &'a Graph,
    k: usize,
    twin_prev: Vec<Option<usize>>,
    req: Vec<Vec<usize>>,
    uncovered: Vec<usize>,
    sets: Vec<u32>,
    nbr: Vec<u32>,
    roots: Vec<usize>,
    unused: u32,
}

impl Search<'_> {
    /// Host edges with at least one unused endpoint; every pattern edge not
    /// yet covered must be realized by one of these.
    fn edge_budget(&self) -> usize {
        let mut total = 0u32;
        let mut within = 0u32;
        for v in bits_of(self.unused) {
            total += self.host.neighbors(v).count_ones();
            within += (self.host.neighbors(v) & self.unused).count_ones();
        }
        (total - within / 2) as usize
    }

    fn place(&mut self, t: usize) -> bool {
        if t == self.k {
            return true;
        }
        if (self.unused.count_ones() as usize) < self.k - t {
            return false;
        }
        if self.edge_budget() < self.uncovered[t] {
            return false;
        }
        let min_root = self.twin_prev[t].map_or(0, |s| self.roots[s] + 1);
        let roots = self.unused & !low_bits(min_root);
        for r in bits_of(roots) {
            self.roots[t] = r;
            self.sets[t] = 1 << r;
            self.nbr[t] = self.host.neighbors(r);
            self.unused &= !(1u32 << r);
            if self.grow(t, 0) {
                return true;
            }
            self.unused |= 1 << r;
        }
        false
    }

    fn grow(&mut self, t: usize, excluded: u32) -> bool {
        if self.requirements_met(t) && self.future_reachable(t) && self.place(t + 1) {
            return true;
        }
        // Growing consumes a vertex; the remaining positions each still
        // need one.
        if (self.unused.count_ones() as usize) <= self.k - t - 1 {
            return false;
        }
        // Keep the root minimal in its set so every candidate set is
        // enumerated exactly once.
        let cand = self.nbr[t] & self.unused & !excluded & !low_bits(self.roots[t] + 1);
        if cand == 0 {
            return false;
        }
        let c = cand.trailing_zeros() as usize;
        let saved_nbr = self.nbr[t];
        self.sets[t] |= 1 << c;
        self.nbr[t] |= self.host.neighbors(c);
        self.unused &= !(1u32 << c);
        if self.grow(t, excluded) {
            return true;
        }
        self.unused |= 1 << c;
        self.nbr[t] = saved_nbr;
        self.sets[t] &= !(1u32 << c);
        self.grow(t, excluded | (1 << c))
    }

    fn requirements_met(&self, t: usize) -> bool {
        self.req[t].iter().all(|&s| self.sets[s] & self.nbr[t] != 0)
    }

    /// A position adjacent to `t` but placed later must draw its branch set
    /// from `unused`, so `t`'s set must reach into `unused`.
    fn future_reachable(&self, t: usize) -> bool {
        let has_later_neighbor = (t + 1..self.k).any(|u| self.req[u].contains(&t));
        !has_later_neighbor || self.nbr[t] & self.unused != 0
    }
}

fn twin_predecessors(pattern: &Graph, order: &[usize]) -> Vec<Option<usize>> {
    let k = pattern.vertex_count();
    let open = |p: usize| pattern.neighbors(p);
    let closed = |p: usize| pattern.neighbors(p) | (1 << p);
    let false_twin = |p: usize, q: usize| open(p) == open(q);
    let true_twin = |p: usize, q: usize| closed(p) == closed(q);

    let overlap = (0..k).any(|p| {
        (0..k).any(|q| q != p && false_twin(p, q)) && (0..k).any(|q| q != p && true_twin(p, q))
    });

    let mut prev = vec![None; k];
    for t in 1..k {
        let p = order[t];
        prev[t] = (0..t).rev().find(|&s| {
            let q = order[s];
            true_twin(p, q) || (!overlap && false_twin(p, q))
        });
    }
    prev
}

/// Exhaustive oracle: every assignment of host vertices to pattern vertices
/// or "unused" is enumerated (the only shortcut is counting whether enough
/// vertices remain to populate the still-empty branch sets), and each
/// complete assignment is checked against the model invariants directly.
pub fn brute_force_has_minor(host: &Graph, pattern: &Graph) -> Result<bool, MinorError> {
    let n = host.vertex_count();
    if n > 8 {
        return Err(MinorError::CapacityExceeded { n });
    }
    let mut sets = vec![0u32; pattern.vertex_count()];
    Ok(assign(host, pattern, 0, &mut sets))
}

fn assign(host: &Graph, pattern: &Graph, v: usize, sets: &mut [u32]) -> bool {
    let n = host.vertex_count();
    let empties = sets.iter().filter(|s| **s == 0).count();
    if n - v < empties {
        return false;
    }
    if v == n {
        return sets.iter().all(|&s| host.is_connected_subset(s))
            && pattern
                .edges()
                .all(|e| sets_touch(host, sets[e.u()], sets[e.v()]));
    }
    for i in 0..sets.len() {
        sets[i] |= 1 << v;
        if assign(host, pattern, v + 1, sets) {
            return true;
        }
        sets[i] &= !(1u32 << v);
    }
    // v unused
    assign(host, pattern, v + 1, sets)
}

/// Replays a model through the deletion/contraction definition of a minor:
/// deletes host vertices outside every branch set, contracts each branch
/// set to a point, and relabels so that pattern vertex `a` ends at slot
/// `a`. The result contains the pattern as a spanning subgraph (extra edges
/// may remain).
pub fn replay_model(m: &MinorModel) -> Result<Graph, MinorError> {
    if !validate_model(m) {
        return Err(MinorError::InvalidModel);
    }
    let k = m.pattern.vertex_count();
    let union: u32 = m.branch_sets.iter().fold(0, |a, &s| a | s);
    let mut g = m.host.clone().with_tracked_labels();
    for orig in m.host.vertices() {
        if union & (1 << orig) == 0 {
            let slot = g.slot_of_label(orig).expect("label still present");
            g = g.delete_vertex(slot).expect("valid slot");
        }
    }
    for &set in &m.branch_sets {
        loop {
            let slots: Vec<usize> = g
                .vertices()
                .filter(|&s| set & (1u32 << g.label_of(s).unwrap()) != 0)
                .collect();
            if slots.len() == 1 {
                break;
            }
            let (a, b) = adjacent_pair(&g, &slots)
                .expect("connected branch set always has an adjacent alive pair");
            let e = Edge::new(a, b).expect("distinct slots");
            g = g.contract_edge(e).expect("edge exists");
        }
    }
    debug_assert_eq!(g.vertex_count(), k);
    let mut perm = vec![0usize; k];
    for slot in g.vertices() {
        let lab = g.label_of(slot).unwrap();
        let owner = m
            .branch_sets
            .iter()
            .position(|&s| s & (1u32 << lab) != 0)
            .expect("every surviving label belongs to a branch set");
        perm[slot] = owner;
    }
    let result = g.permute(&perm);
    debug_assert!(m
        .pattern
        .edges()
        .all(|e| result.has_edge(e.u(), e.v())));
    Ok(result)
}

fn adjacent_pair(g: &Graph, slots: &[usize]) -> Option<(usize, usize)> {
    for (i, &a) in slots.iter().enumerate() {
        for &b in &slots[i + 1..] {
            if g.has_edge(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Serializes a model as text: pattern graph6, host graph6, then one line
/// per branch set listing host vertex indices in ascending order.
pub fn model_to_text(m: &MinorModel) -> String {
    let mut out = String::new();
    out.push_str(&encode_graph6(&m.pattern));
    out.push('\n');
    out.push_str(&encode_graph6(&m.host));
    out.push('\n');
    for &set in &m.branch_sets {
        let verts: Vec<String> = bits_of(set).map(|v| v.to_string()).collect();
        out.push_str(&verts.join(" "));
        out.push('\n');
    }
    out
}

/// Parses the textual certificate format. The parsed model is not
/// validated; run `validate_model` on the result.
pub fn model_from_text(s: &str) -> Result<MinorModel, ParseError> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, pattern_line) = lines.next().ok_or(ParseError::Empty)?;
    let pattern = decode_graph6(pattern_line)?;
    let (line, host_line) = lines.next().ok_or(ParseError::Malformed {
        line: 2,
        expected: "host graph6 line".into(),
    })?;
    let host = decode_graph6(host_line).map_err(|e| relocate(e, line))?;
    let k = pattern.vertex_count();
    let mut branch_sets = Vec::with_capacity(k);
    for (line, text) in lines.by_ref().take(k) {
        let mut set = 0u32;
        for tok in text.split_whitespace() {
            let v: usize = tok.parse().map_err(|_| ParseError::Malformed {
                line,
                expected: "host vertex indices".into(),
            })?;
            if v >= host.vertex_count() {
                return Err(ParseError::VertexOutOfRange {
                    line,
                    v,
                    n: host.vertex_count(),
                });
            }
            set |= 1 << v;
        }
        branch_sets.push(set);
    }
    if branch_sets.len() != k {
        return Err(ParseError::Malformed {
            line: 2,
            expected: format!("{k} branch set lines"),
        });
    }
    if let Some((line, _)) = lines.next() {
        return Err(ParseError::Malformed {
            line,
            expected: "end of certificate".into(),
        });
    }
    Ok(MinorModel {
        pattern,
        host,
        branch_sets,
    })
}

/// Re-tags a graph6 error from a nested line with the enclosing line number.
fn relocate(e: ParseError, line: usize) -> ParseError {
    ParseError::Malformed {
        line,
        expected: format!("valid graph6 ({e})"),
    }
}
