//! Exact acyclic chromatic index of small graphs, plus the cheap bounds
//! around it.
//!
//! The exact search deepens on the number of colours `k`, starting from
//! [`lower_bound`]. For each `k` it backtracks over edge assignments in a
//! fixed order, only allowing colour `c` when `c` is at most one more than
//! the largest colour used so far. Each assignment is checked incrementally:
//! properness by a per-vertex colour table, acyclicity by walking the
//! alternating paths that a new edge could close into a cycle.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::colouring::EdgeColouring;
use crate::graph::Graph;

const NONE: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 100_000_000,
            max_time: Duration::from_secs(60),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Accepted edge assignments over all values of `k`.
    pub nodes: u64,
    pub elapsed: Duration,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone)]
pub struct AciResult {
    pub aci: usize,
    /// Uses exactly `aci` colours, palette `0..aci`.
    pub witness: EdgeColouring,
    pub stats: SearchStats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("search budget exhausted; acyclic chromatic index lies in [{lower}, {upper}]")]
    BudgetExhausted {
        lower: usize,
        upper: usize,
        stats: SearchStats,
    },
}

/// `Δ + 1` for `Δ`-regular graphs with `Δ > 1`, `Δ` otherwise.
pub fn lower_bound(graph: &Graph) -> usize {
    let delta = graph.max_degree();
    if delta > 1 && graph.is_regular() {
        delta + 1
    } else {
        delta
    }
}

/// A partial edge colouring with `k` colours that is kept proper and
/// acyclic as edges are assigned.
#[derive(Debug, Clone)]
pub struct IncrementalColouring<'g> {
    graph: &'g Graph,
    k: usize,
    /// `at[v * k + c]`: the edge of colour `c` at `v`, or `NONE`.
    at: Vec<u32>,
    colour: Vec<u32>,
}

impl<'g> IncrementalColouring<'g> {
    pub fn new(graph: &'g Graph, k: usize) -> Self {
        IncrementalColouring {
            graph,
            k,
            at: vec![NONE; graph.vertex_count() * k],
            colour: vec![NONE; graph.edge_count()],
        }
    }

    pub fn colours(&self) -> usize {
        self.k
    }

    /// Current assignment of every edge, `None` where unassigned.
    pub fn assignment(&self) -> Vec<Option<u32>> {
        self.colour.iter().map(|&c| (c != NONE).then_some(c)).collect()
    }

    fn at(&self, v: usize, c: usize) -> u32 {
        self.at[v * self.k + c]
    }

    /// Adds one more colour to the table.
    pub fn grow(&mut self) {
        let (n, k) = (self.graph.vertex_count(), self.k);
        let mut at = vec![NONE; n * (k + 1)];
        for v in 0..n {
            at[v * (k + 1)..v * (k + 1) + k].copy_from_slice(&self.at[v * k..(v + 1) * k]);
        }
        self.at = at;
        self.k += 1;
    }

    /// Whether edge `e` could take colour `c` while staying proper.
    pub fn is_free(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.graph.edge(e);
        self.at(u, c) == NONE && self.at(v, c) == NONE
    }

    /// Whether giving edge `e = {u, v}` colour `c` closes a two-coloured
    /// cycle. Assumes `c` is free at both ends.
    ///
    /// Such a cycle alternates `c` with some `c2` present at both ends; it is
    /// the `{c2, c}` path leaving `v` along `c2`, if that path ends at `u`.
    pub fn closes_cycle(&self, e: usize, c: usize) -> bool {
        let (u, v) = self.graph.edge(e);
        for c2 in 0..self.k {
            if c2 == c || self.at(u, c2) == NONE || self.at(v, c2) == NONE {
                continue;
            }
            let (mut x, mut along) = (v, c2);
            loop {
                let next = self.at(x, along);
                if next == NONE {
                    break;
                }
                let (a, b) = self.graph.edge(next as usize);
                x = if a == x { b } else { a };
                if x == u {
                    return true;
                }
                along = if along == c2 { c } else { c2 };
            }
        }
        false
    }

    pub fn can_assign(&self, e: usize, c: usize) -> bool {
        self.is_free(e, c) && !self.closes_cycle(e, c)
    }

    pub fn assign(&mut self, e: usize, c: usize) {
        debug_assert_eq!(self.colour[e], NONE);
        let (u, v) = self.graph.edge(e);
        let k = self.k;
        self.at[u * k + c] = e as u32;
        self.at[v * k + c] = e as u32;
        self.colour[e] = c as u32;
    }

    pub fn unassign(&mut self, e: usize) {
        let c = self.colour[e] as usize;
        let (u, v) = self.graph.edge(e);
        let k = self.k;
        self.at[u * k + c] = NONE;
        self.at[v * k + c] = NONE;
        self.colour[e] = NONE;
    }

    /// The finished colouring; panics if an edge is unassigned.
    pub fn to_colouring(&self) -> EdgeColouring {
        let indices: Vec<u32> = self
            .colour
            .iter()
            .map(|&c| {
                assert_ne!(c, NONE, "incomplete colouring");
                c
            })
            .collect();
        EdgeColouring::from_indices(self.graph, &indices, self.k as u32).expect("colours below k")
    }
}

/// Edges by endpoint degree sum, descending; ties by edge index.
fn search_order(graph: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = (0..graph.edge_count()).collect();
    order.sort_by_key(|&e| {
        let (u, v) = graph.edge(e);
        (std::cmp::Reverse(graph.degree(u) + graph.degree(v)), e)
    });
    order
}

enum Outcome {
    Found,
    Infeasible,
    OutOfBudget,
}

type Observer<'o> = &'o mut (dyn FnMut(&IncrementalColouring<'_>) + 'o);

struct Search<'a, 'g, 'o> {
    state: IncrementalColouring<'g>,
    order: &'a [usize],
    nodes: u64,
    budget: SearchBudget,
    started: Instant,
    observer: Option<Observer<'o>>,
}

impl Search<'_, '_, '_> {
    fn run(&mut self, depth: usize, used: usize) -> Outcome {
        if depth == self.order.len() {
            return Outcome::Found;
        }
        let e = self.order[depth];
        let limit = (used + 1).min(self.state.k);
        for c in 0..limit {
            if !self.state.can_assign(e, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget.max_nodes
                || (self.nodes.is_multiple_of(1024) && self.started.elapsed() > self.budget.max_time)
            {
                return Outcome::OutOfBudget;
            }
            self.state.assign(e, c);
            if let Some(observer) = self.observer.as_mut() {
                observer(&self.state);
            }
            match self.run(depth + 1, used.max(c + 1)) {
                Outcome::Infeasible => self.state.unassign(e),
                other => return other,
            }
        }
        Outcome::Infeasible
    }
}

/// Searches for an acyclic colouring with at most `k` colours. `Ok(None)`
/// means the search space was exhausted.
pub fn colour_with(
    graph: &Graph,
    k: usize,
    budget: SearchBudget,
) -> Result<(Option<EdgeColouring>, SearchStats), SearchStats> {
    let order = search_order(graph);
    let mut nodes = 0;
    let started = Instant::now();
    let outcome = search_k(graph, k, &order, budget, started, &mut nodes, None);
    let stats = |exhausted| SearchStats {
        nodes,
        elapsed: started.elapsed(),
        budget_exhausted: exhausted,
    };
    match outcome {
        (Outcome::Found, colouring) => Ok((colouring, stats(false))),
        (Outcome::Infeasible, _) => Ok((None, stats(false))),
        (Outcome::OutOfBudget, _) => Err(stats(true)),
    }
}

fn search_k(
    graph: &Graph,
    k: usize,
    order: &[usize],
    budget: SearchBudget,
    started: Instant,
    nodes: &mut u64,
    observer: Option<Observer<'_>>,
) -> (Outcome, Option<EdgeColouring>) {
    let mut search = Search {
        state: IncrementalColouring::new(graph, k),
        order,
        nodes: *nodes,
        budget,
        started,
        observer,
    };
    let outcome = search.run(0, 0);
    *nodes = search.nodes;
    let colouring = matches!(outcome, Outcome::Found).then(|| search.state.to_colouring());
    (outcome, colouring)
}

/// Exact `a'(G)` with a witness, by iterative deepening from
/// [`lower_bound`] up to the greedy upper bound.
pub fn exact_aci(graph: &Graph, budget: SearchBudget) -> Result<AciResult, SolveError> {
    solve(graph, budget, None)
}

/// As [`exact_aci`], calling `observer` after every accepted assignment.
pub fn exact_aci_traced(
    graph: &Graph,
    budget: SearchBudget,
    observer: &mut dyn FnMut(&IncrementalColouring<'_>),
) -> Result<AciResult, SolveError> {
    solve(graph, budget, Some(observer))
}

fn solve(
    graph: &Graph,
    budget: SearchBudget,
    mut observer: Option<&mut dyn FnMut(&IncrementalColouring<'_>)>,
) -> Result<AciResult, SolveError> {
    let started = Instant::now();
    let lower = lower_bound(graph);
    let greedy = greedy_acyclic(graph, 0);
    let upper = greedy.colours_used();
    let order = search_order(graph);
    let mut nodes = 0;

    for k in lower..upper {
        let (outcome, colouring) = search_k(
            graph,
            k,
            &order,
            budget,
            started,
            &mut nodes,
            observer.as_mut().map(|o| &mut **o as Observer<'_>),
        );
        let stats = SearchStats {
            nodes,
            elapsed: started.elapsed(),
            budget_exhausted: matches!(outcome, Outcome::OutOfBudget),
        };
        match outcome {
            Outcome::Found => {
                return Ok(AciResult {
                    aci: k,
                    witness: colouring.expect("found"),
                    stats,
                })
            }
            Outcome::Infeasible => {}
            Outcome::OutOfBudget => return Err(SolveError::BudgetExhausted { lower: k, upper, stats }),
        }
    }
    Ok(AciResult {
        aci: upper,
        witness: greedy,
        stats: SearchStats {
            nodes,
            elapsed: started.elapsed(),
            budget_exhausted: false,
        },
    })
}

/// A proper acyclic colouring built edge by edge, each edge taking the
/// smallest admissible colour and opening a new colour when none fits. The
/// palette is exactly the colours used.
///
/// Edges are visited in breadth-first order from a random root, with the
/// edges at each vertex shuffled; `seed` fixes both choices.
pub fn greedy_acyclic(graph: &Graph, seed: u64) -> EdgeColouring {
    let mut state = IncrementalColouring::new(graph, 0);
    for e in traversal_order(graph, seed) {
        let c = match (0..state.colours()).find(|&c| state.can_assign(e, c)) {
            Some(c) => c,
            None => {
                state.grow();
                state.colours() - 1
            }
        };
        state.assign(e, c);
    }
    state.to_colouring()
}

fn traversal_order(graph: &Graph, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = graph.vertex_count();
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(&mut rng);
    let mut visited = vec![false; n];
    let mut emitted = vec![false; graph.edge_count()];
    let mut order = Vec::with_capacity(graph.edge_count());
    for root in roots {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            let mut incident = graph.incident_edges(x).to_vec();
            incident.shuffle(&mut rng);
            for e in incident {
                if emitted[e] {
                    continue;
                }
                emitted[e] = true;
                order.push(e);
                let (a, b) = graph.edge(e);
                let y = if a == x { b } else { a };
                if !visited[y] {
                    visited[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
