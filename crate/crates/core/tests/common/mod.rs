//! Test-only oracles, kept independent of the library's search code.
#![allow(dead_code)]

use boxcolour::colouring::{check_acyclic, EdgeColouring};
use boxcolour::graph::Graph;
use rand::seq::SliceRandom;
use rand::Rng;

/// `a'(G)` by enumerating every proper colouring with `k` colours (colours
/// introduced in order, edges in index order) and running the verifier on
/// each complete one, for `k = Δ, Δ+1, …`.
pub fn brute_force_aci(graph: &Graph) -> usize {
    let m = graph.edge_count();
    (graph.max_degree()..=m)
        .find(|&k| brute_force_colouring(graph, k).is_some())
        .expect("m colours always suffice")
}

pub fn brute_force_colouring(graph: &Graph, k: usize) -> Option<EdgeColouring> {
    fn extend(graph: &Graph, k: usize, edge: usize, next_new: usize, colours: &mut Vec<u32>) -> Option<EdgeColouring> {
        if edge == graph.edge_count() {
            let x = EdgeColouring::from_indices(graph, colours, k as u32).unwrap();
            return check_acyclic(graph, &x).is_ok().then_some(x);
        }
        let (u, v) = graph.edge(edge);
        for c in 0..next_new.min(k - 1) + 1 {
            let clash = graph
                .incident_edges(u)
                .iter()
                .chain(graph.incident_edges(v))
                .any(|&f| f < edge && colours[f] == c as u32);
            if clash {
                continue;
            }
            colours[edge] = c as u32;
            if let Some(x) = extend(graph, k, edge + 1, next_new.max(c + 1), colours) {
                return Some(x);
            }
        }
        None
    }
    if graph.edge_count() == 0 {
        return Some(EdgeColouring::from_indices(graph, &[], k as u32).unwrap());
    }
    if k == 0 {
        return None;
    }
    extend(graph, k, 0, 0, &mut vec![0; graph.edge_count()])
}

/// Chromatic number by trying `k = 1, 2, …` exhaustively.
pub fn chromatic_number(graph: &Graph) -> usize {
    fn fits(graph: &Graph, k: usize, v: usize, colour: &mut Vec<usize>) -> bool {
        if v == graph.vertex_count() {
            return true;
        }
        for c in 0..k {
            if graph.neighbours(v).iter().all(|&w| w >= v || colour[w] != c) {
                colour[v] = c;
                if fits(graph, k, v + 1, colour) {
                    return true;
                }
            }
        }
        false
    }
    (1..=graph.vertex_count().max(1))
        .find(|&k| fits(graph, k, 0, &mut vec![0; graph.vertex_count()]))
        .unwrap()
}

/// A random connected graph on `n` vertices: a random spanning tree plus
/// each remaining pair with probability `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        edges.push((vertices[i], vertices[rng.gen_range(0..i)]));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

use boxcolour::colouring::colours_used;
use boxcolour::compose::Composition;
use boxcolour::graph::ProductEdgeKind;

/// Checks a composed colouring of `g □ h` against the guarantees of the
/// shift construction: acyclic, at most `η + β` colours, one colour family
/// per factor, each factor edge's matching monochromatic, and copies of a
/// shifted edge over adjacent vertices differently coloured.
pub fn check_composition(
    g: &Graph,
    x_g: &EdgeColouring,
    h: &Graph,
    x_h: &EdgeColouring,
    out: &Composition,
) -> Result<(), String> {
    let product = &out.product;
    let x = &out.colouring;
    check_acyclic(&product.graph, x).map_err(|e| format!("not acyclic: {e}"))?;

    let bound = (x_g.palette().size() + x_h.palette().size()) as usize;
    if colours_used(x) > bound {
        return Err(format!("{} colours exceed η + β = {bound}", colours_used(x)));
    }

    let swapped = out.construction.as_ref().is_some_and(|c| c.swapped);
    // copies of the factor playing H carry primed colours
    for (i, kind) in product.kinds().iter().enumerate() {
        let from_h_role = matches!(kind, ProductEdgeKind::HEdge { .. }) != swapped;
        if x.colour(i).is_primed() != from_h_role {
            return Err(format!(
                "edge {i} ({kind:?}) has colour {} from the wrong family",
                x.colour(i)
            ));
        }
    }

    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let copy = |kind: ProductEdgeKind| {
        let (a, b) = product.endpoints(g, h, kind);
        x.colour(product.graph.edge_index(a, b).expect("product edge"))
    };
    // matching edges of one H-role edge share its colour
    let (matched_edges, fixed_range) = if swapped {
        (g.edge_count(), nh)
    } else {
        (h.edge_count(), ng)
    };
    for f in 0..matched_edges {
        let kind_at = |w: usize| {
            if swapped {
                ProductEdgeKind::GEdge { e: f, v: w }
            } else {
                ProductEdgeKind::HEdge { f, u: w }
            }
        };
        let first = copy(kind_at(0));
        if let Some(w) = (1..fixed_range).find(|&w| copy(kind_at(w)) != first) {
            return Err(format!("matching of factor edge {f} changes colour at copy {w}"));
        }
    }
    // shifted copies over the two ends of an H-role edge differ
    let (role_h, shifted_edges) = if swapped {
        (g, h.edge_count())
    } else {
        (h, g.edge_count())
    };
    for &(v1, v2) in role_h.edges() {
        for e in 0..shifted_edges {
            let kind_at = |v: usize| {
                if swapped {
                    ProductEdgeKind::HEdge { f: e, u: v }
                } else {
                    ProductEdgeKind::GEdge { e, v }
                }
            };
            if copy(kind_at(v1)) == copy(kind_at(v2)) {
                return Err(format!("copies of edge {e} over {v1} and {v2} share a colour"));
            }
        }
    }
    Ok(())
}
