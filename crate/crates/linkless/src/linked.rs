//! Intrinsic-linkedness and planarity decisions for graphs on at most 13
//! vertices, plus the fast paths that decide complement pairs without a
//! full bilateral search.
//!
//! Everything here reduces to exact minor containment: a graph is
//! intrinsically linked iff it has a Petersen-family minor, and planar iff
//! it has neither a K5 nor a K_{3,3} minor (Wagner's form of Kuratowski's
//! theorem, valid verbatim at these sizes).

use rand::Rng;

use crate::graph::{bits_of, Graph};
use crate::iso::isomorphism_map;
use crate::minor::{find_minor, validate_model, MinorModel};
use crate::petersen::{complete_bipartite_33, family_member, petersen_family};

/// Decision procedures are guarded at 13 vertices; the searches are exact
/// and complete, and beyond this the library makes no performance promise.
pub const MAX_DECIDABLE_VERTICES: usize = 13;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LinkError {
    #[error("decision procedures support at most {max} vertices, got {n}")]
    CapacityExceeded { n: usize, max: usize },
}

fn guard(g: &Graph, max: usize) -> Result<(), LinkError> {
    let n = g.vertex_count();
    if n > max {
        Err(LinkError::CapacityExceeded { n, max })
    } else {
        Ok(())
    }
}

/// Outcome of an intrinsic-linkedness decision.
#[derive(Clone, Debug)]
pub enum LinkCertificate {
    /// Intrinsically linked, witnessed by a validated minor model of the
    /// named Petersen-family member.
    Il {
        family_member: &'static str,
        model: MinorModel,
    },
    /// Linklessly embeddable: every family pattern was exhausted by a
    /// complete search.
    Nil { exhausted: Vec<&'static str> },
}

impl LinkCertificate {
    pub fn is_il(&self) -> bool {
        matches!(self, LinkCertificate::Il { .. })
    }
}

/// A K5 or K_{3,3} minor model, or `None` when the graph is planar.
pub fn kuratowski_witness(g: &Graph) -> Result<Option<MinorModel>, LinkError> {
    guard(g, MAX_DECIDABLE_VERTICES)?;
    let k5 = Graph::complete(5).unwrap();
    if let Some(m) = find_minor(g, &k5) {
        return Ok(Some(m));
    }
    Ok(find_minor(g, &complete_bipartite_33()))
}

pub fn is_planar(g: &Graph) -> Result<bool, LinkError> {
    Ok(kuratowski_witness(g)?.is_none())
}

/// Complete decision: IL with a validated witness, or NIL with all seven
/// family patterns exhausted. Patterns are tried in ascending vertex count
/// (K6 first), so the reported witness is deterministic.
pub fn is_il(g: &Graph) -> Result<LinkCertificate, LinkError> {
    guard(g, MAX_DECIDABLE_VERTICES)?;
    for member in petersen_family() {
        if let Some(model) = find_minor(g, &member.graph) {
            debug_assert!(validate_model(&model));
            return Ok(LinkCertificate::Il {
                family_member: member.name,
                model,
            });
        }
    }
    Ok(LinkCertificate::Nil {
        exhausted: petersen_family().iter().map(|m| m.name).collect(),
    })
}

/// Edge-count sufficient condition: a graph on n >= 6 vertices with at
/// least 4n - 9 edges has a K6 minor and is intrinsically linked.
pub fn edge_bound_il(g: &Graph) -> bool {
    let n = g.vertex_count();
    n >= 6 && g.edge_count() >= 4 * n - 9
}

/// Consistency self-check of the cone criterion: a graph is planar iff the
/// cone over it is linklessly embeddable. Expected to return true always.
pub fn cone_nil_iff_base_planar_check(g: &Graph) -> Result<bool, LinkError> {
    guard(g, MAX_DECIDABLE_VERTICES - 1)?;
    let cone = g.cone().expect("capacity checked");
    let planar = is_planar(g)?;
    let cone_nil = !is_il(&cone)?.is_il();
    Ok(planar == cone_nil)
}

/// Which side of a complement pair is intrinsically linked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IlSide {
    G,
    Cg,
    Both,
    Neither,
}

/// Which decision rule settled a pair verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiredRule {
    EdgeBound,
    Deg10Apex,
    FullSearch,
}

impl std::fmt::Display for FiredRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FiredRule::EdgeBound => "edge-bound",
            FiredRule::Deg10Apex => "deg10-apex",
            FiredRule::FullSearch => "full-search",
        })
    }
}

/// Verdict for a pair (G, cG): which side is proven IL, by which rule,
/// with certificates for every side that was decided.
#[derive(Clone, Debug)]
pub struct PairVerdict {
    pub il_side: IlSide,
    pub fired_rule: FiredRule,
    pub g_certificate: Option<LinkCertificate>,
    pub cg_certificate: Option<LinkCertificate>,
}

/// Decides a complement pair. Fast paths in order: (1) the 4n-9 edge bound
/// on either side; (2) the degree-10 apex argument — a vertex of degree
/// >= 10 reduces the pair to planarity of its punctured neighborhood;
/// (3) full bilateral search.
///
/// A fast-path verdict claims only the side it proves IL; `Both` can only
/// be reported by the full search.
pub fn pair_verdict(g: &Graph) -> Result<PairVerdict, LinkError> {
    guard(g, MAX_DECIDABLE_VERTICES)?;
    let cg = g.complement();

    for (host, flip) in [(g, false), (&cg, true)] {
        if edge_bound_il(host) {
            let cert = is_il(host)?;
            assert!(
                cert.is_il(),
                "edge bound guarantees a K6 minor; engine disagreed"
            );
            return Ok(side_verdict(flip, FiredRule::EdgeBound, cert));
        }
    }

    for (host, flip) in [(g, false), (&cg, true)] {
        if let Some(apex) = host.vertices().find(|&v| host.degree(v) >= 10) {
            return apex_verdict(host, flip, apex);
        }
    }

    let g_certificate = is_il(g)?;
    let cg_certificate = is_il(&cg)?;
    let il_side = match (g_certificate.is_il(), cg_certificate.is_il()) {
        (true, true) => IlSide::Both,
        (true, false) => IlSide::G,
        (false, true) => IlSide::Cg,
        (false, false) => IlSide::Neither,
    };
    Ok(PairVerdict {
        il_side,
        fired_rule: FiredRule::FullSearch,
        g_certificate: Some(g_certificate),
        cg_certificate: Some(cg_certificate),
    })
}

fn side_verdict(flip: bool, fired_rule: FiredRule, cert: LinkCertificate) -> PairVerdict {
    if flip {
        PairVerdict {
            il_side: IlSide::Cg,
            fired_rule,
            g_certificate: None,
            cg_certificate: Some(cert),
        }
    } else {
        PairVerdict {
            il_side: IlSide::G,
            fired_rule,
            g_certificate: None,
            cg_certificate: Some(cert),
        }
    }
}

/// The degree-10 apex argument on `host` (which is `g` when `flip` is
/// false, else the complement). Let B be the punctured neighborhood of the
/// apex. If B is nonplanar, coning its Kuratowski witness with the apex
/// gives a K6 or K_{3,3,1} minor of `host`. If B is planar, its complement
/// inside the surrounding complete graph is IL and sits inside the
/// complement of `host`.
fn apex_verdict(host: &Graph, flip: bool, apex: usize) -> Result<PairVerdict, LinkError> {
    let base_mask = host.neighbors(apex);
    let base = host.induced(base_mask).expect("degree >= 10");
    let slots: Vec<usize> = bits_of(base_mask).collect();

    if let Some(kw) = kuratowski_witness(&base)? {
        let cert = lift_apex_witness(host, apex, &slots, &kw);
        let verdict = side_verdict(flip, FiredRule::Deg10Apex, cert);
        return Ok(verdict);
    }

    // Planar base: complement of the base is IL (its order is >= 10), and
    // it is an induced subgraph of the complement of `host`.
    let cbase = base.complement();
    let cert = is_il(&cbase)?;
    let LinkCertificate::Il {
        family_member,
        model,
    } = cert
    else {
        panic!("complement of a planar graph on >= 10 vertices must be IL; engine disagreed");
    };
    let other = host.complement();
    let branch_sets: Vec<u32> = model
        .branch_sets
        .iter()
        .map(|&s| lift_mask(s, &slots))
        .collect();
    let lifted = MinorModel {
        pattern: model.pattern,
        host: other,
        branch_sets,
    };
    debug_assert!(validate_model(&lifted));
    let cert = LinkCertificate::Il {
        family_member,
        model: lifted,
    };
    Ok(side_verdict(!flip, FiredRule::Deg10Apex, cert))
}

/// Maps a branch-set bitset through `slots` (subgraph slot -> host vertex).
fn lift_mask(set: u32, slots: &[usize]) -> u32 {
    bits_of(set).fold(0, |acc, i| acc | 1 << slots[i])
}

/// Turns a Kuratowski witness in the punctured neighborhood into a
/// K6 / K_{3,3,1} family witness in the full host by adding the apex as
/// one more branch set.
fn lift_apex_witness(host: &Graph, apex: usize, slots: &[usize], kw: &MinorModel) -> LinkCertificate {
    let mut sets: Vec<u32> = kw
        .branch_sets
        .iter()
        .map(|&s| lift_mask(s, slots))
        .collect();
    sets.push(1 << apex);
    let coned = kw.pattern.cone().expect("small pattern");
    let name = if kw.pattern.vertex_count() == 5 {
        "K6"
    } else {
        "K331"
    };
    let member = family_member(name).expect("landmark present");
    let map = isomorphism_map(&coned, &member.graph)
        .expect("cone over a Kuratowski graph is the corresponding family landmark");
    let mut branch_sets = vec![0u32; sets.len()];
    for (a, &s) in sets.iter().enumerate() {
        branch_sets[map[a]] = s;
    }
    let model = MinorModel {
        pattern: member.graph.clone(),
        host: host.clone(),
        branch_sets,
    };
    debug_assert!(validate_model(&model));
    LinkCertificate::Il {
        family_member: member.name,
        model,
    }
}

/// Random planar graph: a random maximal planar triangulation grown by
/// inserting vertices into random faces, followed by independent edge
/// deletions with probability `delete_prob`. The only contract is that the
/// output is planar.
pub fn random_planar_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, delete_prob: f64) -> Graph {
    assert!((3..=crate::graph::MAX_VERTICES).contains(&n));
    let mut edges = vec![(0usize, 1usize), (1, 2), (0, 2)];
    // Both sides of the starting triangle are faces of the sphere embedding.
    let mut faces = vec![[0usize, 1, 2], [0, 1, 2]];
    for k in 3..n {
        let f = faces.swap_remove(rng.random_range(0..faces.len()));
        let [a, b, c] = f;
        edges.extend([(a, k), (b, k), (c, k)]);
        faces.extend([[a, b, k], [b, c, k], [a, c, k]]);
    }
    let kept: Vec<(usize, usize)> = edges
        .into_iter()
        .filter(|_| !rng.random_bool(delete_prob))
        .collect();
    Graph::from_edges(n, &kept).expect("triangulation is simple")
}

/// Random graph with an exact edge count (uniform over such graphs).
pub fn random_graph_with_edges<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize) -> Graph {
    use rand::seq::SliceRandom;
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    assert!(m <= pairs.len());
    pairs.shuffle(rng);
    Graph::from_edges(n, &pairs[..m]).expect("simple by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petersen::petersen_graph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_planarity_calls() {
        assert!(is_planar(&Graph::complete(4).unwrap()).unwrap());
        let k5_witness = kuratowski_witness(&Graph::complete(5).unwrap())
            .unwrap()
            .expect("K5 is nonplanar");
        assert_eq!(k5_witness.pattern, Graph::complete(5).unwrap());
        let k33 = complete_bipartite_33();
        let k33_witness = kuratowski_witness(&k33).unwrap().expect("K33 is nonplanar");
        assert_eq!(k33_witness.pattern, k33);
    }

    #[test]
    fn k6_is_il_with_itself_as_witness() {
        let cert = is_il(&Graph::complete(6).unwrap()).unwrap();
        match cert {
            LinkCertificate::Il {
                family_member,
                model,
            } => {
                assert_eq!(family_member, "K6");
                assert!(validate_model(&model));
            }
            LinkCertificate::Nil { .. } => panic!("K6 must be IL"),
        }
    }

    #[test]
    fn petersen_is_il_as_itself() {
        let cert = is_il(&petersen_graph()).unwrap();
        match cert {
            LinkCertificate::Il { family_member, .. } => assert_eq!(family_member, "PETERSEN"),
            LinkCertificate::Nil { .. } => panic!("the Petersen graph is IL"),
        }
    }

    #[test]
    fn k5_is_nil_by_edge_shortcut() {
        let cert = is_il(&Graph::complete(5).unwrap()).unwrap();
        match cert {
            LinkCertificate::Nil { exhausted } => assert_eq!(exhausted.len(), 7),
            LinkCertificate::Il { .. } => panic!("K5 has only 10 edges"),
        }
    }

    #[test]
    fn edge_bound_values() {
        assert!(edge_bound_il(&Graph::complete(6).unwrap())); // 15 = 4*6-9
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g46 = random_graph_with_edges(&mut rng, 13, 46);
        assert!(edge_bound_il(&g46));
        let g42 = random_graph_with_edges(&mut rng, 13, 42);
        assert!(!edge_bound_il(&g42));
        assert!(!edge_bound_il(&Graph::complete(5).unwrap())); // n < 6
    }

    #[test]
    fn sachs_cone_consistency_examples() {
        assert!(cone_nil_iff_base_planar_check(&Graph::complete(4).unwrap()).unwrap());
        assert!(cone_nil_iff_base_planar_check(&Graph::complete(5).unwrap()).unwrap());
    }

    #[test]
    fn planar_sampler_is_planar() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..120 {
            let n = rng.random_range(3..=13);
            let g = random_planar_graph(&mut rng, n, 0.3);
            assert!(is_planar(&g).unwrap(), "sampler produced nonplanar {g:?}");
        }
    }

    #[test]
    fn triangulation_without_deletions_is_maximal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 3..=13 {
            let g = random_planar_graph(&mut rng, n, 0.0);
            assert_eq!(g.edge_count(), 3 * n - 6);
            assert!(is_planar(&g).unwrap());
        }
    }

    #[test]
    fn pair_verdict_k13_and_empty() {
        let k13 = Graph::complete(13).unwrap();
        let v = pair_verdict(&k13).unwrap();
        assert_eq!(v.il_side, IlSide::G);
        assert_eq!(v.fired_rule, FiredRule::EdgeBound);
        assert!(v.g_certificate.unwrap().is_il());

        let empty = Graph::empty(13).unwrap();
        let v = pair_verdict(&empty).unwrap();
        assert_eq!(v.il_side, IlSide::Cg);
        assert_eq!(v.fired_rule, FiredRule::EdgeBound);
        assert!(v.cg_certificate.unwrap().is_il());
    }

    #[test]
    fn apex_path_nonplanar_base() {
        // Cone over a nonplanar 10-vertex base: the apex has degree 10 and
        // the lemma proves the graph itself IL.
        let base = petersen_graph(); // nonplanar, 10 vertices
        let g = base.cone().unwrap();
        let v = pair_verdict(&g).unwrap();
        assert_eq!(v.fired_rule, FiredRule::Deg10Apex);
        assert_eq!(v.il_side, IlSide::G);
        let cert = v.g_certificate.expect("proven side carries certificate");
        match cert {
            LinkCertificate::Il {
                family_member,
                model,
            } => {
                // The Kuratowski search tries K5 first and the Petersen
                // graph has a K5 minor, so the coned witness is a K6.
                assert_eq!(family_member, "K6");
                assert!(validate_model(&model));
                assert_eq!(&model.host, &g);
            }
            LinkCertificate::Nil { .. } => panic!("expected IL"),
        }
    }

    #[test]
    fn apex_path_planar_base() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let base = random_planar_graph(&mut rng, 10, 0.35);
            let g = base.cone().unwrap();
            if edge_bound_il(&g) || edge_bound_il(&g.complement()) {
                continue;
            }
            let v = pair_verdict(&g).unwrap();
            assert_eq!(v.fired_rule, FiredRule::Deg10Apex);
            assert_eq!(v.il_side, IlSide::Cg);
            let cert = v.cg_certificate.expect("complement side proven");
            match cert {
                LinkCertificate::Il { model, .. } => {
                    assert!(validate_model(&model));
                    assert_eq!(&model.host, &g.complement());
                }
                LinkCertificate::Nil { .. } => panic!("expected IL on the complement"),
            }
        }
    }

    #[test]
    fn fast_paths_agree_with_full_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let mut fired = [0usize; 2];
        for _ in 0..1000 {
            let n = rng.random_range(10..=13);
            let g = Graph::random(&mut rng, n, 0.5).unwrap();
            let verdict = pair_verdict(&g).unwrap();
            if verdict.fired_rule == FiredRule::FullSearch {
                continue;
            }
            fired[if verdict.fired_rule == FiredRule::EdgeBound { 0 } else { 1 }] += 1;
            let g_il = is_il(&g).unwrap().is_il();
            let cg_il = is_il(&g.complement()).unwrap().is_il();
            match verdict.il_side {
                IlSide::G => assert!(g_il),
                IlSide::Cg => assert!(cg_il),
                IlSide::Both => assert!(g_il && cg_il),
                IlSide::Neither => panic!("fast paths never claim Neither"),
            }
        }
        assert!(fired[0] > 0, "edge bound never fired in 1000 samples");
    }
}
