//! The Petersen family: the seven forbidden minors for linkless
//! embeddability, generated as the ΔY/YΔ closure of K6 rather than
//! hardcoded, so the list is self-verifying.
//!
//! ΔY preserves edge count; YΔ moves are admitted into the closure only
//! when the three neighbors are pairwise non-adjacent (otherwise parallel
//! edges would collapse and drop the count below 15), which matches the
//! definition of the family as the ΔY-equivalence class of K6.

use std::sync::OnceLock;

use crate::graph::{bits_of, Graph, MAX_VERTICES};
use crate::iso::canonical_form;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TransformError {
    #[error("vertices {0}, {1}, {2} do not form a triangle")]
    NotATriangle(usize, usize, usize),
    #[error("vertex {v} has degree {degree}, not 3")]
    NotDegreeThree { v: usize, degree: usize },
    #[error("vertex {v} out of range")]
    OutOfRange { v: usize },
    #[error("ΔY would exceed the {MAX_VERTICES}-vertex capacity")]
    CapacityExceeded,
}

/// Replaces the triangle on `corners` by a new degree-3 vertex joined to
/// the corners. Edge count is preserved.
pub fn delta_y(g: &Graph, corners: [usize; 3]) -> Result<Graph, TransformError> {
    let [a, b, c] = corners;
    let n = g.vertex_count();
    for v in corners {
        if v >= n {
            return Err(TransformError::OutOfRange { v });
        }
    }
    if a == b
        || a == c
        || b == c
        || !g.has_edge(a, b)
        || !g.has_edge(a, c)
        || !g.has_edge(b, c)
    {
        return Err(TransformError::NotATriangle(a, b, c));
    }
    if n == MAX_VERTICES {
        return Err(TransformError::CapacityExceeded);
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|e| (e.u(), e.v()))
        .filter(|&(u, v)| {
            !(corners.contains(&u) && corners.contains(&v))
        })
        .collect();
    edges.extend([(a, n), (b, n), (c, n)]);
    Ok(Graph::from_edges(n + 1, &edges).expect("within capacity"))
}

/// Removes a degree-3 vertex and pairwise joins its three neighbors.
/// Already-present edges collapse, so the edge count may drop. The freed
/// slot is back-filled by the last vertex, as in `delete_vertex`.
pub fn y_delta(g: &Graph, center: usize) -> Result<Graph, TransformError> {
    let n = g.vertex_count();
    if center >= n {
        return Err(TransformError::OutOfRange { v: center });
    }
    let degree = g.degree(center);
    if degree != 3 {
        return Err(TransformError::NotDegreeThree { v: center, degree });
    }
    let nbrs: Vec<usize> = bits_of(g.neighbors(center)).collect();
    let last = n - 1;
    let map = |w: usize| if w == last { center } else { w };
    let mut h = g.delete_vertex(center).expect("center in range");
    for i in 0..3 {
        for j in (i + 1)..3 {
            let (x, y) = (map(nbrs[i]), map(nbrs[j]));
            if !h.has_edge(x, y) {
                h = h.toggle_edge(x, y).expect("valid vertices");
            }
        }
    }
    Ok(h)
}

/// One member of the Petersen family.
#[derive(Clone, Debug)]
pub struct FamilyMember {
    /// `K6`, `K331`, `K44_minus_e`, `PETERSEN`, or a generated name for the
    /// three unnamed members.
    pub name: &'static str,
    pub graph: Graph,
    /// Canonical graph6 string (members are pairwise non-isomorphic).
    pub canonical: String,
}

/// K_{3,3}: parts {0,1,2} and {3,4,5}.
pub fn complete_bipartite_33() -> Graph {
    let mut edges = Vec::new();
    for a in 0..3 {
        for b in 3..6 {
            edges.push((a, b));
        }
    }
    Graph::from_edges(6, &edges).unwrap()
}

/// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
pub fn petersen_graph() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

/// The seven Petersen-family members, sorted by (vertex count, canonical
/// string). Computed once and cached.
pub fn petersen_family() -> &'static [FamilyMember] {
    static FAMILY: OnceLock<Vec<FamilyMember>> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let mut members = closure_from_k6(|g| canonical_key(g));
        members.sort_by(|a, b| {
            (a.0.vertex_count(), &a.1).cmp(&(b.0.vertex_count(), &b.1))
        });
        let k331 = complete_bipartite_33().cone().expect("7 vertices");
        let k44_minus_e = {
            let mut edges = Vec::new();
            for a in 0..4 {
                for b in 4..8 {
                    edges.push((a, b));
                }
            }
            let k44 = Graph::from_edges(8, &edges).unwrap();
            k44.delete_edge(crate::graph::Edge::new(0, 4).unwrap())
                .unwrap()
        };
        members
            .into_iter()
            .map(|(graph, canonical)| {
                let name = if graph.vertex_count() == 6 {
                    "K6"
                } else if graph.vertex_count() == 10 {
                    "PETERSEN"
                } else if crate::iso::are_isomorphic(&graph, &k331) {
                    "K331"
                } else if crate::iso::are_isomorphic(&graph, &k44_minus_e) {
                    "K44_minus_e"
                } else if graph.vertex_count() == 7 {
                    "G7"
                } else if graph.vertex_count() == 8 {
                    "G8"
                } else {
                    "G9"
                };
                FamilyMember {
                    name,
                    graph,
                    canonical,
                }
            })
            .collect()
    })
}

/// Family member whose name matches, if any.
pub fn family_member(name: &str) -> Option<&'static FamilyMember> {
    petersen_family().iter().find(|m| m.name == name)
}

fn canonical_key(g: &Graph) -> String {
    canonical_form(g)
        .expect("family members stay far below the 13-vertex limit")
        .graph6
}

/// Fixed-point closure of {K6} under ΔY over all triangles and YΔ over all
/// degree-3 vertices with pairwise non-adjacent neighbors.
fn closure_from_k6(canon: impl Fn(&Graph) -> String) -> Vec<(Graph, String)> {
    let k6 = Graph::complete(6).unwrap();
    let mut out: Vec<(Graph, String)> = vec![(k6.clone(), canon(&k6))];
    let mut queue = vec![k6];
    while let Some(g) = queue.pop() {
        for h in one_step_moves(&g) {
            debug_assert_eq!(h.edge_count(), 15);
            let key = canon(&h);
            if !out.iter().any(|(_, k)| *k == key) {
                out.push((h.clone(), key));
                queue.push(h);
            }
        }
    }
    out
}

/// All ΔY and edge-count-preserving YΔ images of `g`.
fn one_step_moves(g: &Graph) -> Vec<Graph> {
    let n = g.vertex_count();
    let mut moves = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if !g.has_edge(a, b) {
                continue;
            }
            for c in (b + 1)..n {
                if g.has_edge(a, c) && g.has_edge(b, c) {
                    moves.push(delta_y(g, [a, b, c]).expect("triangle checked"));
                }
            }
        }
    }
    for v in 0..n {
        if g.degree(v) != 3 {
            continue;
        }
        let nbrs: Vec<usize> = bits_of(g.neighbors(v)).collect();
        let independent = nbrs
            .iter()
            .all(|&x| nbrs.iter().all(|&y| x == y || !g.has_edge(x, y)));
        if independent {
            moves.push(y_delta(g, v).expect("degree checked"));
        }
    }
    moves
}
