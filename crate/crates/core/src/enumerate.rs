//! All graphs on a few vertices, one per isomorphism class.
//!
//! Classes on `n` vertices are grown from the classes on `n - 1` vertices by
//! adding a vertex with every possible neighbourhood, then deduplicated by a
//! canonical code: the smallest adjacency bit string over all vertex orders
//! that sort vertices by a degree-based invariant.

use std::collections::BTreeMap;

use crate::graph::Graph;

/// Largest vertex count for which enumeration is offered; the upper triangle
/// must fit in a `u64`.
pub const MAX_ORDER: usize = 9;

fn pair_bit(i: usize, j: usize) -> u64 {
    let (i, j) = (i.min(j), i.max(j));
    1 << (j * (j - 1) / 2 + i)
}

fn encode(n: usize, adjacent: &dyn Fn(usize, usize) -> bool) -> u64 {
    let mut code = 0;
    for j in 1..n {
        for i in 0..j {
            if adjacent(i, j) {
                code |= pair_bit(i, j);
            }
        }
    }
    code
}

fn decode(n: usize, code: u64) -> Graph {
    let edges = (1..n)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .filter(|&(i, j)| code & pair_bit(i, j) != 0);
    Graph::new(n, edges).expect("decoded edges are in range")
}

/// Canonical code of a graph given as an adjacency bit string.
fn canonical_code(n: usize, code: u64) -> u64 {
    let adjacent = |i: usize, j: usize| code & pair_bit(i, j) != 0;
    let degree: Vec<usize> = (0..n)
        .map(|v| (0..n).filter(|&w| w != v && adjacent(v, w)).count())
        .collect();
    let invariant: Vec<(usize, Vec<usize>)> = (0..n)
        .map(|v| {
            let mut nbr: Vec<usize> = (0..n)
                .filter(|&w| w != v && adjacent(v, w))
                .map(|w| degree[w])
                .collect();
            nbr.sort_unstable();
            (degree[v], nbr)
        })
        .collect();
    let mut vertices: Vec<usize> = (0..n).collect();
    vertices.sort_by(|&a, &b| invariant[a].cmp(&invariant[b]));

    // positions [start, end) hold vertices sharing one invariant value
    let mut cells = Vec::new();
    let mut start = 0;
    for end in 1..=n {
        if end == n || invariant[vertices[end]] != invariant[vertices[start]] {
            cells.push((start, end));
            start = end;
        }
    }

    let mut best = u64::MAX;
    permute_cells(&mut vertices, &cells, 0, &mut |order| {
        let relabelled = encode(n, &|i, j| adjacent(order[i], order[j]));
        best = best.min(relabelled);
    });
    best
}

fn permute_cells(order: &mut Vec<usize>, cells: &[(usize, usize)], cell: usize, visit: &mut dyn FnMut(&[usize])) {
    match cells.get(cell) {
        None => visit(order),
        Some(&(start, end)) => permute_range(order, start, end, &mut |o| permute_cells(o, cells, cell + 1, visit)),
    }
}

/// Heap-style enumeration of all orders of `order[start..end]`.
fn permute_range(order: &mut Vec<usize>, start: usize, end: usize, visit: &mut dyn FnMut(&mut Vec<usize>)) {
    if end - start <= 1 {
        visit(order);
        return;
    }
    for i in start..end {
        order.swap(start, i);
        permute_range(order, start + 1, end, visit);
        order.swap(start, i);
    }
}

/// Canonical codes of every graph on `n` vertices, one per class.
fn codes(n: usize) -> Vec<u64> {
    assert!(n <= MAX_ORDER, "enumeration is limited to {MAX_ORDER} vertices");
    if n <= 1 {
        return vec![0];
    }
    let mut found = BTreeMap::new();
    for smaller in codes(n - 1) {
        for neighbourhood in 0u64..1 << (n - 1) {
            let mut code = smaller;
            for i in 0..n - 1 {
                if neighbourhood >> i & 1 == 1 {
                    code |= pair_bit(i, n - 1);
                }
            }
            found.insert(canonical_code(n, code), ());
        }
    }
    found.into_keys().collect()
}

fn sorted_graphs(n: usize, keep: impl Fn(&Graph) -> bool) -> Vec<Graph> {
    let mut graphs: Vec<(usize, u64, Graph)> = codes(n)
        .into_iter()
        .map(|c| decode(n, c))
        .filter(|g| keep(g))
        .map(|g| (g.edge_count(), encode(n, &|i, j| g.has_edge(i, j)), g))
        .collect();
    graphs.sort_by_key(|(m, code, _)| (*m, *code));
    graphs.into_iter().map(|(_, _, g)| g).collect()
}

/// One representative of every graph on `n` vertices, by edge count.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    sorted_graphs(n, |_| true)
}

/// One representative of every connected graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    sorted_graphs(n, Graph::is_connected)
}

/// Connected graphs on `min_n..=max_n` vertices, smaller orders first.
pub fn connected_graphs_between(min_n: usize, max_n: usize) -> Vec<Graph> {
    (min_n..=max_n).flat_map(connected_graphs).collect()
}
