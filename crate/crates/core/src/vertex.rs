//! Proper vertex colourings within the Brooks bound.
//!
//! A connected graph that is neither complete nor an odd cycle can be
//! coloured with `Δ` colours; the exceptions need `Δ + 1`. The product
//! construction uses these colours to pick a colour shift per copy of the
//! other factor.

use std::collections::VecDeque;

use thiserror::Error;

use crate::colouring::{check_proper_vertex, VertexColouring};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexColouringError {
    #[error("graph must be connected and have at least two vertices")]
    TrivialOrDisconnected,
    #[error("internal error: colouring with {used} colours exceeds the bound {bound}")]
    BoundExceeded { used: usize, bound: usize },
}

/// Largest graph the exhaustive fallback will attempt.
const EXHAUSTIVE_LIMIT: usize = 12;

fn require_nontrivial_connected(graph: &Graph) -> Result<(), VertexColouringError> {
    if graph.is_trivial() || !graph.is_connected() {
        Err(VertexColouringError::TrivialOrDisconnected)
    } else {
        Ok(())
    }
}

/// Number of vertex colours the product construction reserves for `graph`:
/// `Δ + 1` for complete graphs and odd cycles, `Δ` otherwise.
pub fn d_of(graph: &Graph) -> Result<usize, VertexColouringError> {
    require_nontrivial_connected(graph)?;
    let class = graph
        .classify()
        .map_err(|_| VertexColouringError::TrivialOrDisconnected)?;
    Ok(if class.is_complete || class.is_odd_cycle {
        class.max_degree + 1
    } else {
        class.max_degree
    })
}

/// A proper colouring with at most [`d_of`] colours, normalised so colours
/// appear in order of their lowest vertex.
pub fn brooks_colouring(graph: &Graph) -> Result<VertexColouring, VertexColouringError> {
    let bound = d_of(graph)?;
    let raw = colour_within_bound(graph, bound);
    let colours = normalise(&raw);
    let used = colours.iter().max().map_or(0, |&c| c + 1);
    let colouring = VertexColouring::new(graph, colours, bound.max(used)).expect("normalised colours stay in range");
    if used > bound || check_proper_vertex(graph, &colouring).is_err() {
        return Err(VertexColouringError::BoundExceeded { used, bound });
    }
    Ok(colouring)
}

fn colour_within_bound(graph: &Graph, bound: usize) -> Vec<usize> {
    let n = graph.vertex_count();
    let class = graph.classify().expect("non-trivial");
    if class.is_complete {
        return (0..n).collect();
    }
    if let Some(sides) = graph.bipartition() {
        return sides;
    }
    if !class.is_regular {
        return greedy(graph, &smallest_last_order(graph), &[]);
    }
    if class.is_odd_cycle {
        return greedy(graph, &(0..n).collect::<Vec<_>>(), &[]);
    }
    if let Some(colours) = pinned_pair_colouring(graph) {
        return colours;
    }
    if let Some(colours) = cut_vertex_colouring(graph) {
        return colours;
    }
    if n <= EXHAUSTIVE_LIMIT {
        if let Some(colours) = exhaustive(graph, bound) {
            return colours;
        }
    }
    greedy(graph, &smallest_last_order(graph), &[])
}

/// Colours vertices in `order`, each with the smallest colour unused by its
/// already-coloured neighbours. `preset` vertices are coloured up front.
fn greedy(graph: &Graph, order: &[usize], preset: &[(usize, usize)]) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut colour = vec![usize::MAX; n];
    for &(v, c) in preset {
        colour[v] = c;
    }
    let mut taken = vec![false; graph.max_degree() + 2];
    for &v in order {
        if colour[v] != usize::MAX {
            continue;
        }
        taken.iter_mut().for_each(|t| *t = false);
        for &w in graph.neighbours(v) {
            if colour[w] < taken.len() {
                taken[colour[w]] = true;
            }
        }
        colour[v] = taken.iter().position(|&t| !t).expect("a free colour among Δ+1");
    }
    colour
}

/// Repeatedly removes a vertex of minimum remaining degree (lowest index on
/// ties) and returns the reverse removal order.
fn smallest_last_order(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("vertices remain");
        removed[v] = true;
        order.push(v);
        for &w in graph.neighbours(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// The classical argument for regular graphs: find `v` with non-adjacent
/// neighbours `x`, `y` such that removing `x` and `y` leaves the graph
/// connected. Colour `x` and `y` alike, then colour the rest by decreasing
/// BFS distance from `v`, so every vertex but `v` still has an uncoloured
/// neighbour and `v` sees a repeated colour.
fn pinned_pair_colouring(graph: &Graph) -> Option<Vec<usize>> {
    for v in 0..graph.vertex_count() {
        let nbrs = graph.neighbours(v);
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if graph.has_edge(x, y) || !graph.is_connected_without(&[x, y]) {
                    continue;
                }
                let mut order = bfs_order(graph, v, &[x, y]);
                order.reverse();
                return Some(greedy(graph, &order, &[(x, 0), (y, 0)]));
            }
        }
    }
    None
}

fn bfs_order(graph: &Graph, root: usize, skip: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; graph.vertex_count()];
    for &s in skip {
        seen[s] = true;
    }
    seen[root] = true;
    let mut order = vec![root];
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in graph.neighbours(u) {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    order
}

/// For a graph with a cut vertex `c`: each component of `G - c` together
/// with `c` is non-regular, so it colours greedily within `Δ`. The pieces
/// are then relabelled to agree on `c`.
fn cut_vertex_colouring(graph: &Graph) -> Option<Vec<usize>> {
    let n = graph.vertex_count();
    let cut = (0..n).find(|&c| !graph.is_connected_without(&[c]))?;
    let mut colour = vec![usize::MAX; n];
    let mut assigned = vec![false; n];
    assigned[cut] = true;
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut piece = bfs_order(graph, start, &[cut]);
        for &v in &piece {
            assigned[v] = true;
        }
        piece.push(cut);
        let sub = graph.induced_subgraph(&piece);
        let sub_colours = greedy(&sub, &smallest_last_order(&sub), &[]);
        let at_cut = sub_colours[piece.len() - 1];
        for (i, &v) in piece.iter().enumerate() {
            // swap the cut vertex's colour with 0
            colour[v] = match sub_colours[i] {
                c if c == at_cut => 0,
                0 => at_cut,
                c => c,
            };
        }
    }
    Some(colour)
}

/// Backtracking search for a proper colouring with `k` colours.
fn exhaustive(graph: &Graph, k: usize) -> Option<Vec<usize>> {
    fn extend(graph: &Graph, k: usize, v: usize, colour: &mut Vec<usize>) -> bool {
        if v == graph.vertex_count() {
            return true;
        }
        let limit = colour[..v].iter().max().map_or(0, |&m| m + 1).min(k - 1);
        for c in 0..=limit {
            if graph.neighbours(v).iter().all(|&w| w >= v || colour[w] != c) {
                colour[v] = c;
                if extend(graph, k, v + 1, colour) {
                    return true;
                }
            }
        }
        false
    }
    let mut colour = vec![0; graph.vertex_count()];
    (k > 0 && extend(graph, k, 0, &mut colour)).then_some(colour)
}

/// Relabels colours in order of first appearance by vertex index.
fn normalise(colours: &[usize]) -> Vec<usize> {
    let mut relabel: Vec<usize> = Vec::new();
    let mut next = 0;
    colours
        .iter()
        .map(|&c| {
            if c >= relabel.len() {
                relabel.resize(c + 1, usize::MAX);
            }
            if relabel[c] == usize::MAX {
                relabel[c] = next;
                next += 1;
            }
            relabel[c]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube, path, petersen};

    fn check(graph: &Graph) -> VertexColouring {
        let y = brooks_colouring(graph).unwrap();
        assert_eq!(check_proper_vertex(graph, &y), Ok(()));
        assert!(y.colours_used() <= d_of(graph).unwrap());
        y
    }

    #[test]
    fn d_of_examples() {
        assert_eq!(d_of(&complete(2).unwrap()), Ok(2));
        assert_eq!(d_of(&cycle(5).unwrap()), Ok(3));
        assert_eq!(d_of(&path(4).unwrap()), Ok(2));
        assert_eq!(d_of(&complete(5).unwrap()), Ok(5));
        assert_eq!(d_of(&petersen()), Ok(3));
    }

    #[test]
    fn d_of_rejects_trivial_and_disconnected() {
        assert_eq!(
            d_of(&Graph::new(1, []).unwrap()),
            Err(VertexColouringError::TrivialOrDisconnected)
        );
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            brooks_colouring(&two_k2),
            Err(VertexColouringError::TrivialOrDisconnected)
        );
    }

    #[test]
    fn brooks_examples() {
        assert_eq!(check(&complete(2).unwrap()).colours(), &[0, 1]);
        assert_eq!(check(&cycle(6).unwrap()).colours(), &[0, 1, 0, 1, 0, 1]);
        assert!(check(&petersen()).colours_used() <= 3);
        check(&cycle(7).unwrap());
        check(&complete(6).unwrap());
        check(&hypercube(4).unwrap());
    }

    #[test]
    fn cubic_graph_with_bridge() {
        // two copies of K4 with one edge subdivided, joined through the
        // subdivision vertices
        let mut edges = Vec::new();
        for base in [0usize, 5] {
            let (a, b, c, d, s) = (base, base + 1, base + 2, base + 3, base + 4);
            edges.extend([(a, c), (a, d), (b, c), (b, d), (c, d), (s, a), (s, b)]);
        }
        edges.push((4, 9));
        let g = Graph::new(10, edges).unwrap();
        assert!(g.is_regular() && g.max_degree() == 3);

        let direct = cut_vertex_colouring(&g).unwrap();
        let y = VertexColouring::new(&g, direct, 3).unwrap();
        assert_eq!(check_proper_vertex(&g, &y), Ok(()));
        check(&g);
    }

    #[test]
    fn colours_are_normalised_and_deterministic() {
        let g = petersen();
        let a = brooks_colouring(&g).unwrap();
        assert_eq!(a.colour(0), 0);
        assert_eq!(a, brooks_colouring(&g).unwrap());
    }

    #[test]
    fn exhaustive_fallback() {
        let g = petersen();
        let colours = exhaustive(&g, 3).unwrap();
        let y = VertexColouring::new(&g, colours, 3).unwrap();
        assert_eq!(check_proper_vertex(&g, &y), Ok(()));
        assert!(exhaustive(&g, 2).is_none());
    }
}
