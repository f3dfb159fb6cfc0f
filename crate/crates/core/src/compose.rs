//! Acyclic edge colourings of cartesian products from colourings of the
//! factors.
//!
//! Given acyclic colourings `X_G` with `η` colours and `X_H` with `β`
//! colours (`η ≥ β`, after swapping the factors if needed) and a proper
//! vertex colouring `Y` of `H` with `d ≤ η` colours:
//!
//! * every copy of an `H`-edge `f` keeps colour `X_H(f)`, drawn from a
//!   separate primed family;
//! * the copy of a `G`-edge `e` sitting over `v ∈ V(H)` gets
//!   `(X_G(e) + Y(v)) mod η`.
//!
//! Adjacent copies of `G` are shifted by different amounts, so no colour
//! class pair can close a cycle that crosses between copies. The result uses
//! at most `η + β` colours. Every output is re-verified before it is
//! returned.
//!
//! `K2 □ K2 = C4` is the one case the construction cannot handle: both
//! factors have a single colour, and `C4` needs three.

use std::fmt;

use log::warn;
use thiserror::Error;

use crate::colouring::{
    check_acyclic, check_proper_vertex, Colour, EdgeColouring, Palette, VerifyError, VertexColouring,
};
use crate::graph::{cartesian_product, complete, Graph, GraphError, Product, ProductEdgeKind};
use crate::solver::{exact_aci, SearchBudget, SolveError};
use crate::vertex::{brooks_colouring, d_of};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    G,
    H,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::G => "first",
            Factor::H => "second",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("both factors carry a single colour (K2 □ K2 = C4, which needs 3 colours); use compose_or_solve")]
    SingleEdgeFactors,
    #[error("{0} factor must be connected and have at least two vertices")]
    TrivialOrDisconnected(Factor),
    #[error("colouring of the {factor} factor is not acyclic: {source}")]
    FactorColouring { factor: Factor, source: VerifyError },
    #[error("shift colouring does not fit the second factor: {0}")]
    ShiftColouring(String),
    #[error("shift {shift} or colour {colour} outside 0..{modulus}")]
    ShiftOutOfRange {
        shift: usize,
        colour: usize,
        modulus: usize,
    },
    #[error("need at least two factors, got {0}")]
    TooFewFactors(usize),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("internal error: composed colouring failed verification: {0}")]
    Internal(VerifyError),
}

/// The cyclic shift `j ↦ (j + i) mod η` on `0..η`.
///
/// Shifts by different amounts below `η` disagree on every colour, which is
/// what keeps adjacent copies of `G` apart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftPermutation {
    shift: usize,
    modulus: usize,
}

impl ShiftPermutation {
    pub fn new(shift: usize, modulus: usize) -> Result<Self, ComposeError> {
        if shift >= modulus {
            return Err(ComposeError::ShiftOutOfRange {
                shift,
                colour: 0,
                modulus,
            });
        }
        Ok(ShiftPermutation { shift, modulus })
    }

    pub fn apply(self, colour: usize) -> usize {
        (colour + self.shift) % self.modulus
    }

    pub fn invert(self, colour: usize) -> usize {
        (colour + self.modulus - self.shift) % self.modulus
    }
}

/// `(j + i) mod η`, with both arguments checked against `0..η`.
pub fn sigma(shift: usize, colour: usize, modulus: usize) -> Result<usize, ComposeError> {
    if shift >= modulus || colour >= modulus {
        return Err(ComposeError::ShiftOutOfRange { shift, colour, modulus });
    }
    Ok(ShiftPermutation { shift, modulus }.apply(colour))
}

#[derive(Debug, Clone, Copy)]
pub struct ComposeInput<'a> {
    pub g: &'a Graph,
    pub x_g: &'a EdgeColouring,
    pub h: &'a Graph,
    pub x_h: &'a EdgeColouring,
    /// Shift colouring of whichever factor ends up in the `H` role (the
    /// factor with the smaller palette). Computed when absent.
    pub y_h: Option<&'a VertexColouring>,
}

/// How a composed colouring was put together.
#[derive(Debug, Clone)]
pub struct ShiftConstruction {
    /// The caller's factors were exchanged so the larger palette is `G`.
    pub swapped: bool,
    /// Unprimed palette size, after any padding.
    pub eta: usize,
    pub beta: usize,
    pub padded: bool,
    pub d: usize,
    pub shifts: VertexColouring,
}

#[derive(Debug, Clone)]
pub struct Composition {
    /// Indexed over the caller's `(G, H)` order regardless of any swap.
    pub product: Product,
    pub colouring: EdgeColouring,
    /// `None` when the product was coloured by exact search instead.
    pub construction: Option<ShiftConstruction>,
}

impl Composition {
    pub fn graph(&self) -> &Graph {
        &self.product.graph
    }
}

fn factor_checks(graph: &Graph, colouring: &EdgeColouring, factor: Factor) -> Result<(), ComposeError> {
    if graph.is_trivial() || !graph.is_connected() {
        return Err(ComposeError::TrivialOrDisconnected(factor));
    }
    check_acyclic(graph, colouring).map_err(|source| ComposeError::FactorColouring { factor, source })
}

pub fn compose(input: ComposeInput<'_>) -> Result<Composition, ComposeError> {
    factor_checks(input.g, input.x_g, Factor::G)?;
    factor_checks(input.h, input.x_h, Factor::H)?;
    let x_g = input.x_g.flattened();
    let x_h = input.x_h.flattened();
    let (eta, beta) = (x_g.palette().size() as usize, x_h.palette().size() as usize);
    if eta.max(beta) <= 1 {
        return Err(ComposeError::SingleEdgeFactors);
    }

    let swapped = eta < beta;
    let (role_xg, role_h, role_xh) = if swapped {
        (&x_h, input.g, &x_g)
    } else {
        (&x_g, input.h, &x_h)
    };
    let (eta, beta) = (eta.max(beta), eta.min(beta));

    let d = d_of(role_h).expect("factor checked connected and non-trivial");
    let shifts = match input.y_h {
        Some(y) => {
            if y.colours().len() != role_h.vertex_count() {
                return Err(ComposeError::ShiftColouring(format!(
                    "{} colours for {} vertices",
                    y.colours().len(),
                    role_h.vertex_count()
                )));
            }
            if let Err((u, v)) = check_proper_vertex(role_h, y) {
                return Err(ComposeError::ShiftColouring(format!(
                    "edge {{{u}, {v}}} is monochromatic"
                )));
            }
            y.clone()
        }
        None => brooks_colouring(role_h).map_err(|e| ComposeError::ShiftColouring(e.to_string()))?,
    };
    let needed = d.max(shifts.colours().iter().max().map_or(0, |&c| c + 1));
    let padded = eta < needed;
    let eta = if padded {
        warn!("padding the first palette from {eta} to {needed} colours to fit {needed} shifts");
        needed
    } else {
        eta
    };

    let product = cartesian_product(input.g, input.h);
    let shifted = |e: usize, v: usize| {
        let shift = ShiftPermutation {
            shift: shifts.colour(v),
            modulus: eta,
        };
        Colour::plain(shift.apply(role_xg.colour(e).index() as usize) as u32)
    };
    let primed = |f: usize| Colour::primed(role_xh.colour(f).index());
    let colours = product
        .kinds()
        .iter()
        .map(|&kind| match (kind, swapped) {
            (ProductEdgeKind::GEdge { e, v }, false) => shifted(e, v),
            (ProductEdgeKind::HEdge { f, .. }, false) => primed(f),
            (ProductEdgeKind::GEdge { e, .. }, true) => primed(e),
            (ProductEdgeKind::HEdge { f, u }, true) => shifted(f, u),
        })
        .collect();
    let palette = Palette {
        g: eta as u32,
        h: beta as u32,
    };
    let colouring = EdgeColouring::new(&product.graph, colours, palette).expect("colours lie in the palette");
    check_acyclic(&product.graph, &colouring).map_err(ComposeError::Internal)?;

    Ok(Composition {
        product,
        colouring,
        construction: Some(ShiftConstruction {
            swapped,
            eta,
            beta,
            padded,
            d,
            shifts,
        }),
    })
}

/// [`compose`], except that two single-colour factors (necessarily `K2`)
/// are handled by solving the product exactly.
pub fn compose_or_solve(input: ComposeInput<'_>, budget: SearchBudget) -> Result<Composition, ComposeError> {
    match compose(input) {
        Err(ComposeError::SingleEdgeFactors) => {
            let product = cartesian_product(input.g, input.h);
            let solved = exact_aci(&product.graph, budget)?;
            Ok(Composition {
                product,
                colouring: solved.witness,
                construction: None,
            })
        }
        other => other,
    }
}

/// Left fold of [`compose_or_solve`] over the factors in the given order.
/// Intermediate colourings are flattened to a single family before the next
/// step. The result uses at most the sum of the factor palettes, plus one
/// if the first two factors are both single edges.
pub fn compose_many(
    factors: &[(Graph, EdgeColouring)],
    budget: SearchBudget,
) -> Result<(Graph, EdgeColouring), ComposeError> {
    let [(first_g, first_x), rest @ ..] = factors else {
        return Err(ComposeError::TooFewFactors(0));
    };
    if rest.is_empty() {
        return Err(ComposeError::TooFewFactors(1));
    }
    let mut graph = first_g.clone();
    let mut colouring = first_x.clone();
    for (h, x_h) in rest {
        let x_g = colouring.flattened();
        let step = compose_or_solve(
            ComposeInput {
                g: &graph,
                x_g: &x_g,
                h,
                x_h,
                y_h: None,
            },
            budget,
        )?;
        graph = step.product.graph;
        colouring = step.colouring;
    }
    Ok((graph, colouring))
}

/// The `d`-cube with an acyclic colouring: one colour for `d = 1`, `d + 1`
/// colours otherwise. Vertex indexing matches [`crate::graph::hypercube`].
pub fn hypercube_colouring(d: usize) -> Result<(Graph, EdgeColouring), ComposeError> {
    let k2 = complete(2)?;
    let single = EdgeColouring::from_indices(&k2, &[0], 1).expect("one edge");
    match d {
        0 => Err(GraphError::ParameterTooSmall {
            what: "hypercube",
            min: 1,
            got: 0,
        }
        .into()),
        1 => Ok((k2, single)),
        _ => compose_many(&vec![(k2, single); d], SearchBudget::default()),
    }
}
