//! Edge and vertex colourings, and the verifier for properness and
//! acyclicity.
//!
//! The verifier is the trusted check for everything else in the crate: the
//! exact solver, the greedy heuristic and the product construction all
//! re-verify their outputs here. It shares no code with the solver's
//! incremental cycle test.

use std::collections::{hash_map, BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::union_find::UnionFind;

const PRIMED: u32 = 1 << 31;

/// An edge colour: an index plus a flag for the primed family.
///
/// The derived order puts every unprimed colour before every primed one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Colour(u32);

impl Colour {
    pub const fn plain(index: u32) -> Self {
        assert!(index < PRIMED);
        Colour(index)
    }

    pub const fn primed(index: u32) -> Self {
        assert!(index < PRIMED);
        Colour(index | PRIMED)
    }

    pub const fn is_primed(self) -> bool {
        self.0 & PRIMED != 0
    }

    pub const fn index(self) -> u32 {
        self.0 & !PRIMED
    }
}

impl fmt::Display for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_primed() {
            write!(f, "{}'", self.index())
        } else {
            write!(f, "{}", self.index())
        }
    }
}

impl fmt::Debug for Colour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Colour {
    type Err = ColouringError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (digits, primed) = match s.strip_suffix('\'') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let index: u32 = digits
            .parse()
            .ok()
            .filter(|&i| i < PRIMED)
            .ok_or_else(|| ColouringError::BadColour(s.to_string()))?;
        Ok(if primed {
            Colour::primed(index)
        } else {
            Colour::plain(index)
        })
    }
}

/// Unprimed colours `0..g` followed by primed colours `0'..(h-1)'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Palette {
    pub g: u32,
    pub h: u32,
}

impl Palette {
    /// A single unprimed family of `k` colours.
    pub const fn single(k: u32) -> Self {
        Palette { g: k, h: 0 }
    }

    pub const fn size(self) -> u32 {
        self.g + self.h
    }

    pub fn contains(self, colour: Colour) -> bool {
        if colour.is_primed() {
            colour.index() < self.h
        } else {
            colour.index() < self.g
        }
    }

    /// Position of `colour` in the palette order.
    pub fn rank(self, colour: Colour) -> u32 {
        if colour.is_primed() {
            self.g + colour.index()
        } else {
            colour.index()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colouring covers {got} edges but the graph has {expected}")]
    Length { expected: usize, got: usize },
    #[error("edge {edge} has colour {colour}, outside palette {palette:?}")]
    OutsidePalette {
        edge: usize,
        colour: Colour,
        palette: Palette,
    },
    #[error("vertex {vertex} has colour {colour}, outside 0..{count}")]
    VertexColourOutOfRange { vertex: usize, colour: usize, count: usize },
    #[error("not a colour: {0:?}")]
    BadColour(String),
    #[error("edge {{{0}, {1}}} is coloured twice")]
    DuplicateEdge(usize, usize),
    #[error("malformed colouring JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A total colouring of the edges of some graph, aligned with its edge
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColouring {
    colours: Vec<Colour>,
    palette: Palette,
}

impl EdgeColouring {
    pub fn new(graph: &Graph, colours: Vec<Colour>, palette: Palette) -> Result<Self, ColouringError> {
        let colouring = EdgeColouring { colours, palette };
        colouring.validate(graph)?;
        Ok(colouring)
    }

    /// Single-family colouring from plain indices; the palette is `0..k`.
    pub fn from_indices(graph: &Graph, indices: &[u32], k: u32) -> Result<Self, ColouringError> {
        Self::new(
            graph,
            indices.iter().map(|&i| Colour::plain(i)).collect(),
            Palette::single(k),
        )
    }

    /// Checks the colouring is total over `graph` and stays in its palette.
    pub fn validate(&self, graph: &Graph) -> Result<(), ColouringError> {
        if self.colours.len() != graph.edge_count() {
            return Err(ColouringError::Length {
                expected: graph.edge_count(),
                got: self.colours.len(),
            });
        }
        if let Some((edge, &colour)) = self
            .colours
            .iter()
            .enumerate()
            .find(|(_, &c)| !self.palette.contains(c))
        {
            return Err(ColouringError::OutsidePalette {
                edge,
                colour,
                palette: self.palette,
            });
        }
        Ok(())
    }

    pub fn colour(&self, edge: usize) -> Colour {
        self.colours[edge]
    }

    pub fn colours(&self) -> &[Colour] {
        &self.colours
    }

    pub fn palette(&self) -> Palette {
        self.palette
    }

    pub fn colours_used(&self) -> usize {
        let mut seen = self.colours.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Re-expresses the colouring as one unprimed family, numbering colours
    /// by their position in the palette order.
    pub fn flattened(&self) -> EdgeColouring {
        EdgeColouring {
            colours: self
                .colours
                .iter()
                .map(|&c| Colour::plain(self.palette.rank(c)))
                .collect(),
            palette: Palette::single(self.palette.size()),
        }
    }
}

/// Proof that a colouring is not proper, or not acyclic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Two distinct edges at `vertex` share `colour`.
    NotProper {
        vertex: usize,
        edges: (usize, usize),
        colour: Colour,
    },
    /// A closed walk through `cycle` (last vertex joins the first) whose
    /// edges alternate between the two colours. The first edge has
    /// `colours.0`.
    BichromaticCycle {
        colours: (Colour, Colour),
        cycle: Vec<usize>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotProper { vertex, edges, colour } => write!(
                f,
                "not proper: edges {} and {} at vertex {vertex} both have colour {colour}",
                edges.0, edges.1
            ),
            Violation::BichromaticCycle { colours, cycle } => {
                write!(f, "bichromatic cycle in colours {{{}, {}}}:", colours.0, colours.1)?;
                for v in cycle {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
        }
    }
}

impl Violation {
    /// Re-checks the witness against the raw graph and colouring, without
    /// reusing any of the detection code.
    pub fn revalidate(&self, graph: &Graph, colouring: &EdgeColouring) -> bool {
        if colouring.colours().len() != graph.edge_count() {
            return false;
        }
        match self {
            Violation::NotProper { vertex, edges, colour } => {
                let (e1, e2) = *edges;
                let touches = |e: usize| {
                    e < graph.edge_count() && {
                        let (a, b) = graph.edge(e);
                        a == *vertex || b == *vertex
                    }
                };
                e1 != e2
                    && touches(e1)
                    && touches(e2)
                    && colouring.colour(e1) == *colour
                    && colouring.colour(e2) == *colour
            }
            Violation::BichromaticCycle { colours, cycle } => {
                let len = cycle.len();
                if colours.0 == colours.1 || len < 3 || len % 2 != 0 {
                    return false;
                }
                let mut distinct = cycle.clone();
                distinct.sort_unstable();
                distinct.dedup();
                if distinct.len() != len {
                    return false;
                }
                (0..len).all(|i| {
                    let (a, b) = (cycle[i], cycle[(i + 1) % len]);
                    let want = if i % 2 == 0 { colours.0 } else { colours.1 };
                    a < graph.vertex_count()
                        && b < graph.vertex_count()
                        && graph.edge_index(a, b).is_some_and(|e| colouring.colour(e) == want)
                })
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Malformed(#[from] ColouringError),
    #[error("{0}")]
    Violation(Violation),
}

impl VerifyError {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            VerifyError::Violation(v) => Some(v),
            VerifyError::Malformed(_) => None,
        }
    }
}

pub fn check_proper_edge(graph: &Graph, colouring: &EdgeColouring) -> Result<(), VerifyError> {
    colouring.validate(graph)?;
    for vertex in 0..graph.vertex_count() {
        let mut seen: HashMap<Colour, usize> = HashMap::new();
        for &edge in graph.incident_edges(vertex) {
            let colour = colouring.colour(edge);
            if let Some(&first) = seen.get(&colour) {
                return Err(VerifyError::Violation(Violation::NotProper {
                    vertex,
                    edges: (first, edge),
                    colour,
                }));
            }
            seen.insert(colour, edge);
        }
    }
    Ok(())
}

/// Searches every pair of colour classes for a cycle. Pairs are scanned in
/// lexicographic order and within a pair edges in index order, so the
/// witness is deterministic.
///
/// Fails with a `NotProper` violation if the colouring is not proper.
pub fn find_bichromatic_cycle(graph: &Graph, colouring: &EdgeColouring) -> Result<Option<Violation>, VerifyError> {
    check_proper_edge(graph, colouring)?;

    let mut classes: BTreeMap<Colour, Vec<usize>> = BTreeMap::new();
    for (edge, &colour) in colouring.colours().iter().enumerate() {
        classes.entry(colour).or_default().push(edge);
    }
    let classes: Vec<(Colour, Vec<usize>)> = classes.into_iter().collect();
    let mut sets = UnionFind::new(graph.vertex_count());

    for (i, (_, edges_a)) in classes.iter().enumerate() {
        for (_, edges_b) in &classes[i + 1..] {
            let mut merged: Vec<usize> = edges_a.iter().chain(edges_b).copied().collect();
            merged.sort_unstable();
            let mut closing = None;
            for (pos, &edge) in merged.iter().enumerate() {
                let (u, v) = graph.edge(edge);
                if !sets.union(u, v) {
                    closing = Some(pos);
                    break;
                }
            }
            sets.reset(merged.iter().flat_map(|&e| {
                let (u, v) = graph.edge(e);
                [u, v]
            }));
            if let Some(pos) = closing {
                let cycle = close_cycle(graph, &merged[..pos], merged[pos]);
                return Ok(Some(canonical_cycle(graph, colouring, cycle)));
            }
        }
    }
    Ok(None)
}

/// The cycle formed by `closing` and the forest path between its endpoints.
fn close_cycle(graph: &Graph, forest: &[usize], closing: usize) -> Vec<usize> {
    let mut adjacent: HashMap<usize, Vec<usize>> = HashMap::new();
    for &e in forest {
        let (u, v) = graph.edge(e);
        adjacent.entry(u).or_default().push(v);
        adjacent.entry(v).or_default().push(u);
    }
    let (start, goal) = graph.edge(closing);
    let mut parent: HashMap<usize, usize> = HashMap::from([(start, start)]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            break;
        }
        for &y in adjacent.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
            if let hash_map::Entry::Vacant(slot) = parent.entry(y) {
                slot.insert(x);
                queue.push_back(y);
            }
        }
    }
    let mut cycle = vec![goal];
    let mut x = goal;
    while x != start {
        x = parent[&x];
        cycle.push(x);
    }
    cycle
}

/// Rotates the cycle to start at its smallest vertex and orients it toward
/// the smaller of that vertex's two cycle neighbours.
fn canonical_cycle(graph: &Graph, colouring: &EdgeColouring, mut cycle: Vec<usize>) -> Violation {
    let len = cycle.len();
    let start = (0..len).min_by_key(|&i| cycle[i]).expect("non-empty cycle");
    cycle.rotate_left(start);
    if cycle[len - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    let colour_of = |a: usize, b: usize| colouring.colour(graph.edge_index(a, b).expect("cycle edge"));
    Violation::BichromaticCycle {
        colours: (colour_of(cycle[0], cycle[1]), colour_of(cycle[1], cycle[2])),
        cycle,
    }
}

/// Proper and free of bichromatic cycles. Properness is checked first.
pub fn check_acyclic(graph: &Graph, colouring: &EdgeColouring) -> Result<(), VerifyError> {
    match find_bichromatic_cycle(graph, colouring)? {
        None => Ok(()),
        Some(v) => Err(VerifyError::Violation(v)),
    }
}

pub fn colours_used(colouring: &EdgeColouring) -> usize {
    colouring.colours_used()
}

/// A colouring of the vertices by indices `0..count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColouring {
    colours: Vec<usize>,
    count: usize,
}

impl VertexColouring {
    pub fn new(graph: &Graph, colours: Vec<usize>, count: usize) -> Result<Self, ColouringError> {
        if colours.len() != graph.vertex_count() {
            return Err(ColouringError::Length {
                expected: graph.vertex_count(),
                got: colours.len(),
            });
        }
        if let Some((vertex, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= count) {
            return Err(ColouringError::VertexColourOutOfRange { vertex, colour, count });
        }
        Ok(VertexColouring { colours, count })
    }

    pub fn colour(&self, vertex: usize) -> usize {
        self.colours[vertex]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    /// Size of the colour range `0..count`.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn colours_used(&self) -> usize {
        let mut seen = self.colours.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Ok, or the first monochromatic edge.
pub fn check_proper_vertex(graph: &Graph, colouring: &VertexColouring) -> Result<(), (usize, usize)> {
    assert_eq!(
        colouring.colours().len(),
        graph.vertex_count(),
        "vertex colouring of another graph"
    );
    match graph
        .edges()
        .iter()
        .find(|&&(u, v)| colouring.colour(u) == colouring.colour(v))
    {
        Some(&edge) => Err(edge),
        None => Ok(()),
    }
}

#[derive(Serialize, Deserialize)]
struct ColouringJson {
    n: usize,
    palette: Palette,
    edges: Vec<(usize, usize, String)>,
}

/// `{"n":…, "palette":{"g":…,"h":…}, "edges":[[u,v,"c"],…]}`, edges in
/// graph order, primed colours suffixed by `'`.
pub fn to_json(graph: &Graph, colouring: &EdgeColouring) -> String {
    let doc = ColouringJson {
        n: graph.vertex_count(),
        palette: colouring.palette(),
        edges: graph
            .edges()
            .iter()
            .zip(colouring.colours())
            .map(|(&(u, v), c)| (u, v, c.to_string()))
            .collect(),
    };
    serde_json::to_string(&doc).expect("colouring serialises")
}

/// Reads a colouring document back into the graph it colours and the
/// colouring itself.
pub fn from_json(text: &str) -> Result<(Graph, EdgeColouring), ColouringError> {
    let doc: ColouringJson = serde_json::from_str(text).map_err(|e| ColouringError::Json(e.to_string()))?;
    let graph = Graph::new(doc.n, doc.edges.iter().map(|&(u, v, _)| (u, v)))?;
    let mut colours = vec![None; graph.edge_count()];
    for (u, v, colour) in &doc.edges {
        let edge = graph.edge_index(*u, *v).expect("edge was just inserted");
        if colours[edge].is_some() {
            return Err(ColouringError::DuplicateEdge(*u.min(v), *u.max(v)));
        }
        colours[edge] = Some(colour.parse::<Colour>()?);
    }
    let colours = colours.into_iter().map(|c| c.expect("every edge coloured")).collect();
    let colouring = EdgeColouring::new(&graph, colours, doc.palette)?;
    Ok((graph, colouring))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, path};

    /// C4 built so that edge order follows the cycle 0-1-2-3-0.
    fn c4_around(colours: [u32; 4]) -> (Graph, EdgeColouring) {
        let g = cycle(4).unwrap();
        let around = [(0, 1), (1, 2), (2, 3), (3, 0)];
        let mut indices = vec![0; 4];
        for ((u, v), c) in around.into_iter().zip(colours) {
            indices[g.edge_index(u, v).unwrap()] = c;
        }
        let k = colours.iter().max().unwrap() + 1;
        let x = EdgeColouring::from_indices(&g, &indices, k).unwrap();
        (g, x)
    }

    #[test]
    fn colour_text() {
        assert_eq!(Colour::plain(3).to_string(), "3");
        assert_eq!(Colour::primed(2).to_string(), "2'");
        assert_eq!("2'".parse::<Colour>().unwrap(), Colour::primed(2));
        assert!("x".parse::<Colour>().is_err());
        assert!("-1".parse::<Colour>().is_err());
        assert!(Colour::plain(100) < Colour::primed(0));
    }

    #[test]
    fn proper_edge_examples() {
        let (g, x) = c4_around([0, 1, 0, 1]);
        assert!(check_proper_edge(&g, &x).is_ok());

        let k2 = path(2).unwrap();
        assert!(check_proper_edge(&k2, &EdgeColouring::from_indices(&k2, &[0], 1).unwrap()).is_ok());

        let p3 = path(3).unwrap();
        let x = EdgeColouring::from_indices(&p3, &[0, 0], 1).unwrap();
        let err = check_proper_edge(&p3, &x).unwrap_err();
        let v = err.violation().unwrap();
        assert_eq!(
            *v,
            Violation::NotProper {
                vertex: 1,
                edges: (0, 1),
                colour: Colour::plain(0)
            }
        );
        assert!(v.revalidate(&p3, &x));
    }

    #[test]
    fn partial_colouring_rejected() {
        let g = cycle(4).unwrap();
        assert_eq!(
            EdgeColouring::from_indices(&g, &[0, 1], 2),
            Err(ColouringError::Length { expected: 4, got: 2 })
        );
        assert!(matches!(
            EdgeColouring::from_indices(&g, &[0, 1, 0, 5], 2),
            Err(ColouringError::OutsidePalette { edge: 3, .. })
        ));
        let other = path(3).unwrap();
        let x = EdgeColouring::from_indices(&other, &[0, 1], 2).unwrap();
        assert!(matches!(check_acyclic(&g, &x), Err(VerifyError::Malformed(_))));
    }

    #[test]
    fn bichromatic_cycle_examples() {
        let (g, x) = c4_around([0, 1, 0, 1]);
        let found = find_bichromatic_cycle(&g, &x).unwrap().unwrap();
        assert_eq!(
            found,
            Violation::BichromaticCycle {
                colours: (Colour::plain(0), Colour::plain(1)),
                cycle: vec![0, 1, 2, 3]
            }
        );
        assert!(found.revalidate(&g, &x));

        let (g, x) = c4_around([0, 1, 0, 2]);
        assert_eq!(find_bichromatic_cycle(&g, &x).unwrap(), None);
        assert!(check_acyclic(&g, &x).is_ok());
        assert_eq!(colours_used(&x), 3);
    }

    #[test]
    fn cycle_witness_is_canonical() {
        // orientation goes toward the smaller neighbour of the smallest vertex
        let (g, x) = c4_around([1, 0, 1, 0]);
        let Some(Violation::BichromaticCycle { cycle, colours }) = find_bichromatic_cycle(&g, &x).unwrap() else {
            panic!("expected a cycle");
        };
        assert_eq!(cycle, vec![0, 1, 2, 3]);
        assert_eq!(colours, (Colour::plain(1), Colour::plain(0)));
    }

    #[test]
    fn improper_colouring_rejected_before_cycle_search() {
        let g = cycle(4).unwrap();
        let x = EdgeColouring::from_indices(&g, &[0, 0, 1, 1], 2).unwrap();
        assert!(matches!(
            find_bichromatic_cycle(&g, &x),
            Err(VerifyError::Violation(Violation::NotProper { .. }))
        ));
    }

    #[test]
    fn forged_witnesses_fail_revalidation() {
        let (g, x) = c4_around([0, 1, 0, 2]);
        let fake = Violation::BichromaticCycle {
            colours: (Colour::plain(0), Colour::plain(1)),
            cycle: vec![0, 1, 2, 3],
        };
        assert!(!fake.revalidate(&g, &x));
        let fake = Violation::NotProper {
            vertex: 0,
            edges: (0, 0),
            colour: Colour::plain(0),
        };
        assert!(!fake.revalidate(&g, &x));
    }

    #[test]
    fn proper_vertex_examples() {
        let c4 = cycle(4).unwrap();
        let y = VertexColouring::new(&c4, vec![0, 1, 0, 1], 2).unwrap();
        assert_eq!(check_proper_vertex(&c4, &y), Ok(()));
        let k2 = path(2).unwrap();
        let y = VertexColouring::new(&k2, vec![0, 0], 1).unwrap();
        assert_eq!(check_proper_vertex(&k2, &y), Err((0, 1)));
        let c5 = cycle(5).unwrap();
        let y = VertexColouring::new(&c5, vec![0, 1, 0, 1, 2], 3).unwrap();
        assert_eq!(check_proper_vertex(&c5, &y), Ok(()));
        assert!(VertexColouring::new(&c5, vec![0, 1, 0, 1, 3], 3).is_err());
    }

    #[test]
    fn json_round_trip_with_primes() {
        let g = cycle(4).unwrap();
        let colours = vec![Colour::plain(0), Colour::primed(0), Colour::primed(1), Colour::plain(1)];
        let x = EdgeColouring::new(&g, colours, Palette { g: 2, h: 2 }).unwrap();
        let text = to_json(&g, &x);
        assert_eq!(
            text,
            r#"{"n":4,"palette":{"g":2,"h":2},"edges":[[0,1,"0"],[0,3,"0'"],[1,2,"1'"],[2,3,"1"]]}"#
        );
        let (g2, x2) = from_json(&text).unwrap();
        assert_eq!((g2, x2), (g, x));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(from_json("{"), Err(ColouringError::Json(_))));
        let dup = r#"{"n":2,"palette":{"g":2,"h":0},"edges":[[0,1,"0"],[1,0,"1"]]}"#;
        assert_eq!(from_json(dup), Err(ColouringError::DuplicateEdge(0, 1)));
        let outside = r#"{"n":2,"palette":{"g":1,"h":0},"edges":[[0,1,"0'"]]}"#;
        assert!(matches!(from_json(outside), Err(ColouringError::OutsidePalette { .. })));
    }

    #[test]
    fn flattening_orders_unprimed_first() {
        let g = path(3).unwrap();
        let x = EdgeColouring::new(&g, vec![Colour::primed(0), Colour::plain(1)], Palette { g: 2, h: 1 }).unwrap();
        let flat = x.flattened();
        assert_eq!(flat.colours(), &[Colour::plain(2), Colour::plain(1)]);
        assert_eq!(flat.palette(), Palette::single(3));
    }
}
