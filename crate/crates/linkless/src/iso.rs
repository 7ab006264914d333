//! Isomorphism testing and canonical forms for graphs on at most 13
//! vertices.
//!
//! The canonical string is the lexicographically smallest graph6 encoding
//! over the labelings explored by a refinement-pruned search (all n!
//! labelings for n <= 8). Minimality beyond the explored space is not
//! claimed; the tested contract is label-invariance plus "equal strings
//! iff isomorphic".

use crate::codec::encode_graph6;
use crate::graph::Graph;

/// Orders above this are rejected; the search space guard for this crate.
pub const MAX_ISO_VERTICES: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum IsoError {
    #[error("canonical forms support at most {MAX_ISO_VERTICES} vertices, got {n}")]
    CapacityExceeded { n: usize },
}

/// A canonical labeling of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// graph6 encoding of the relabeled graph.
    pub graph6: String,
    /// `permutation[v]` is the canonical label of input vertex `v`.
    pub permutation: Vec<usize>,
}

/// Upper-triangle adjacency bits of the relabeling given by `slot_to_old`,
/// packed left-aligned into a u128 in graph6 bit order. Lexicographic
/// comparison of these values matches comparison of graph6 strings.
fn bitstring(g: &Graph, slot_to_old: &[usize]) -> u128 {
    let n = g.vertex_count();
    let mut acc = 0u128;
    let mut t = 0u32;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(slot_to_old[u], slot_to_old[v]) {
                acc |= 1u128 << (127 - t);
            }
            t += 1;
        }
    }
    acc
}

/// Computes a canonical form. Label-invariant: every relabeling of `g`
/// yields the same canonical graph6 string.
pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, IsoError> {
    let n = g.vertex_count();
    if n > MAX_ISO_VERTICES {
        return Err(IsoError::CapacityExceeded { n });
    }
    let m = g.edge_count();
    if m == 0 || m == n * (n - 1) / 2 {
        // Complete and empty graphs are fixed by every relabeling.
        let identity: Vec<usize> = (0..n).collect();
        return Ok(CanonicalForm {
            graph6: encode_graph6(g),
            permutation: identity,
        });
    }
    let best = if n <= 8 {
        brute_force_min(g)
    } else {
        refinement_min(g)
    };
    let (_, slot_to_old) = best;
    let mut permutation = vec![0usize; n];
    for (slot, &old) in slot_to_old.iter().enumerate() {
        permutation[old] = slot;
    }
    let canon = g.permute(&permutation);
    Ok(CanonicalForm {
        graph6: encode_graph6(&canon),
        permutation,
    })
}

/// Minimum over all n! labelings (Heap's algorithm).
fn brute_force_min(g: &Graph) -> (u128, Vec<usize>) {
    let n = g.vertex_count();
    let mut arr: Vec<usize> = (0..n).collect();
    let mut best = (bitstring(g, &arr), arr.clone());
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                arr.swap(0, i);
            } else {
                arr.swap(c[i], i);
            }
            let cand = bitstring(g, &arr);
            if cand < best.0 {
                best = (cand, arr.clone());
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Minimum over the leaves of an individualization-refinement tree.
fn refinement_min(g: &Graph) -> (u128, Vec<usize>) {
    let n = g.vertex_count();
    let mut colors = vec![0u32; n];
    refine(g, &mut colors);
    let mut best: Option<(u128, Vec<usize>)> = None;
    descend(g, &colors, &mut best);
    best.expect("refinement tree always has at least one leaf")
}

fn descend(g: &Graph, colors: &[u32], best: &mut Option<(u128, Vec<usize>)>) {
    let n = g.vertex_count();
    // Find the first color class with two or more members.
    let mut class_size = vec![0usize; n];
    for &c in colors {
        class_size[c as usize] += 1;
    }
    let target = (0..n).find(|&c| class_size[c] >= 2);
    match target {
        None => {
            // Discrete partition: color ids are the labels.
            let mut slot_to_old = vec![0usize; n];
            for (v, &c) in colors.iter().enumerate() {
                slot_to_old[c as usize] = v;
            }
            let cand = bitstring(g, &slot_to_old);
            if best.as_ref().is_none_or(|(b, _)| cand < *b) {
                *best = Some((cand, slot_to_old));
            }
        }
        Some(cell) => {
            for v in 0..n {
                if colors[v] as usize != cell {
                    continue;
                }
                // Individualize v ahead of its classmates, preserving the
                // relative order of all other classes.
                let mut child: Vec<u32> = colors
                    .iter()
                    .enumerate()
                    .map(|(w, &c)| 2 * c + u32::from(w != v && c as usize == cell))
                    .collect();
                refine(g, &mut child);
                descend(g, &child, best);
            }
        }
    }
}

/// Equitable refinement. Repeatedly re-colors vertices by (current color,
/// multiset of neighbor colors) until stable; color ids are assigned by the
/// sorted order of those signatures, which is label-invariant.
fn refine(g: &Graph, colors: &mut [u32]) {
    let n = g.vertex_count();
    loop {
        let ncolors = 1 + *colors.iter().max().unwrap() as usize;
        let mut sigs: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for v in 0..n {
            let mut counts = vec![0u32; ncolors];
            for w in crate::graph::bits_of(g.neighbors(v)) {
                counts[colors[w] as usize] += 1;
            }
            sigs.push((colors[v], counts));
        }
        let mut sorted: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() == ncolors {
            // No class split this round; stable.
            return;
        }
        for v in 0..n {
            colors[v] = sorted.binary_search(&&sigs[v]).unwrap() as u32;
        }
    }
}

/// Whether an adjacency-preserving bijection exists.
///
/// Panics if either graph has more than 13 vertices.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let ca = canonical_form(a).expect("are_isomorphic supports at most 13 vertices");
    let cb = canonical_form(b).expect("are_isomorphic supports at most 13 vertices");
    ca.graph6 == cb.graph6
}

/// An explicit isomorphism `a -> b` when one exists: `map[v]` is the vertex
/// of `b` corresponding to `v` in `a`.
pub fn isomorphism_map(a: &Graph, b: &Graph) -> Option<Vec<usize>> {
    if a.vertex_count() != b.vertex_count() {
        return None;
    }
    let ca = canonical_form(a).ok()?;
    let cb = canonical_form(b).ok()?;
    if ca.graph6 != cb.graph6 {
        return None;
    }
    let n = a.vertex_count();
    let mut slot_to_b = vec![0usize; n];
    for (v, &slot) in cb.permutation.iter().enumerate() {
        slot_to_b[slot] = v;
    }
    Some((0..n).map(|v| slot_to_b[ca.permutation[v]]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Definition-level oracle: tries all n! bijections.
    fn iso_by_exhaustion(a: &Graph, b: &Graph) -> bool {
        let n = a.vertex_count();
        if n != b.vertex_count() {
            return false;
        }
        let mut arr: Vec<usize> = (0..n).collect();
        permutations(&mut arr, 0, &mut |p| {
            (0..n).all(|u| {
                (u + 1..n).all(|v| a.has_edge(u, v) == b.has_edge(p[u], p[v]))
            })
        })
    }

    fn permutations(arr: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if k == arr.len() {
            return f(arr);
        }
        for i in k..arr.len() {
            arr.swap(k, i);
            if permutations(arr, k + 1, f) {
                arr.swap(k, i);
                return true;
            }
            arr.swap(k, i);
        }
        false
    }

    fn k33() -> Graph {
        Graph::from_edges(
            6,
            &[
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 3),
                (1, 4),
                (1, 5),
                (2, 3),
                (2, 4),
                (2, 5),
            ],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn relabelings_of_c5_agree() {
        let c5 = cycle(5);
        let other = Graph::from_edges(5, &[(0, 2), (2, 1), (1, 4), (4, 3), (3, 0)]).unwrap();
        assert_eq!(
            canonical_form(&c5).unwrap().graph6,
            canonical_form(&other).unwrap().graph6
        );
    }

    #[test]
    fn k33_and_c6_differ() {
        assert_ne!(
            canonical_form(&k33()).unwrap().graph6,
            canonical_form(&cycle(6)).unwrap().graph6
        );
        assert!(!are_isomorphic(&k33(), &cycle(6)));
    }

    #[test]
    fn two_triangles_complement_is_k33() {
        let two_k3 =
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert_eq!(
            canonical_form(&two_k3.complement()).unwrap().graph6,
            canonical_form(&k33()).unwrap().graph6
        );
    }

    #[test]
    fn k6_vs_k33() {
        assert!(!are_isomorphic(&Graph::complete(6).unwrap(), &k33()));
    }

    #[test]
    fn permutation_yields_canonical_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [4usize, 7, 9, 11] {
            for _ in 0..20 {
                let g = Graph::random(&mut rng, n, 0.4).unwrap();
                let cf = canonical_form(&g).unwrap();
                let canon = g.permute(&cf.permutation);
                assert_eq!(encode_graph6(&canon), cf.graph6);
            }
        }
    }

    #[test]
    fn random_relabelings_are_isomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3usize, 6, 9, 12, 13] {
            for _ in 0..10 {
                let g = Graph::random(&mut rng, n, 0.5).unwrap();
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let h = g.permute(&perm);
                assert!(are_isomorphic(&g, &h));
                assert_eq!(
                    canonical_form(&g).unwrap().graph6,
                    canonical_form(&h).unwrap().graph6
                );
            }
        }
    }

    #[test]
    fn matches_exhaustive_oracle_up_to_6() {
        // Cross-validate on random pairs, biased so some are isomorphic.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..400 {
            let n = rng.random_range(2..=6);
            let a = Graph::random(&mut rng, n, 0.5).unwrap();
            let b = if rng.random_bool(0.5) {
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                a.permute(&perm)
            } else {
                Graph::random(&mut rng, n, 0.5).unwrap()
            };
            assert_eq!(are_isomorphic(&a, &b), iso_by_exhaustion(&a, &b));
        }
    }

    #[test]
    fn isomorphism_map_is_adjacency_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let n = rng.random_range(2..=10);
            let a = Graph::random(&mut rng, n, 0.5).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let b = a.permute(&perm);
            let map = isomorphism_map(&a, &b).expect("isomorphic by construction");
            for u in 0..n {
                for v in (u + 1)..n {
                    assert_eq!(a.has_edge(u, v), b.has_edge(map[u], map[v]));
                }
            }
        }
    }

    #[test]
    fn capacity_guard() {
        let g = Graph::empty(14).unwrap();
        assert_eq!(
            canonical_form(&g).unwrap_err(),
            IsoError::CapacityExceeded { n: 14 }
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn equivalence_relation_on_triples(
            n in 2usize..=7,
            b1 in any::<u128>(),
            b2 in any::<u128>(),
            b3 in any::<u128>(),
        ) {
            let g1 = crate::graph::tests::arbitrary_graph(n, b1);
            let g2 = crate::graph::tests::arbitrary_graph(n, b2);
            let g3 = crate::graph::tests::arbitrary_graph(n, b3);
            prop_assert!(are_isomorphic(&g1, &g1));
            prop_assert_eq!(are_isomorphic(&g1, &g2), are_isomorphic(&g2, &g1));
            if are_isomorphic(&g1, &g2) && are_isomorphic(&g2, &g3) {
                prop_assert!(are_isomorphic(&g1, &g3));
            }
        }
    }
}
