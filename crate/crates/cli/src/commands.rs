use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context};
use boxcolour::colouring::{find_bichromatic_cycle, from_json, to_json, EdgeColouring, VerifyError};
use boxcolour::compose::{compose_or_solve, hypercube_colouring, ComposeError, ComposeInput};
use boxcolour::enumerate::{connected_graphs_between, MAX_ORDER};
use boxcolour::graph::{self, cartesian_product, Graph};
use boxcolour::io::{parse_edge_list, parse_graph6, parse_graph6_stream, write_edge_list, write_graph6};
use boxcolour::solver::{exact_aci, greedy_acyclic, lower_bound, SearchBudget, SolveError};
use boxcolour::vertex::brooks_colouring;
use rayon::prelude::*;
use serde_json::json;

use crate::args::{Budget, Cli, Command, Family, Format};

/// Why a command did not succeed; each maps to its own exit code.
#[derive(Debug)]
pub enum Failure {
    /// A colouring was checked and found wanting. The witness has already
    /// been printed.
    Verification,
    /// The search gave up before settling the answer.
    BudgetExhausted(String),
    Input(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Input(err.into())
    }
}

type Outcome = Result<(), Failure>;

impl Budget {
    fn to_search(&self) -> anyhow::Result<SearchBudget> {
        let max_time = Duration::try_from_secs_f64(self.budget_secs)
            .map_err(|_| anyhow!("--budget-secs must be a non-negative number, got {}", self.budget_secs))?;
        Ok(SearchBudget {
            max_nodes: self.budget_nodes,
            max_time,
        })
    }
}

fn read_text(path: &Path) -> anyhow::Result<String> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).context("reading stdin")?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path, format: Format) -> anyhow::Result<Graph> {
    let text = read_text(path)?;
    let graph = match format {
        Format::Edgelist => parse_edge_list(&text),
        Format::Graph6 => match text.lines().find(|l| !l.trim().is_empty()) {
            Some(line) => parse_graph6(line),
            None => bail!("{}: no graph6 line", path.display()),
        },
    };
    graph.with_context(|| format!("parsing {}", path.display()))
}

fn format_graph(graph: &Graph, format: Format) -> String {
    match format {
        Format::Edgelist => write_edge_list(graph),
        Format::Graph6 => write_graph6(graph) + "\n",
    }
}

fn read_colouring(path: &Path, graph: &Graph) -> anyhow::Result<EdgeColouring> {
    let (coloured, colouring) = from_json(&read_text(path)?).with_context(|| format!("parsing {}", path.display()))?;
    if &coloured != graph {
        bail!("{} colours a different graph", path.display());
    }
    Ok(colouring)
}

fn colouring_value(graph: &Graph, colouring: &EdgeColouring) -> serde_json::Value {
    serde_json::from_str(&to_json(graph, colouring)).expect("colouring JSON is valid")
}

pub fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Gen { family, params } => {
            let graph = generate(family, &params)?;
            out.write_all(format_graph(&graph, format).as_bytes())?;
        }
        Command::Product { g, h } => {
            let product = cartesian_product(&read_graph(&g, format)?, &read_graph(&h, format)?);
            out.write_all(format_graph(&product.graph, format).as_bytes())?;
        }
        Command::Aci {
            graph,
            budget,
            lower_only,
            greedy,
        } => {
            let graph = read_graph(&graph, format)?;
            aci(&graph, &budget, lower_only, greedy.then_some(cli.seed), out)?;
        }
        Command::Greedy { graph } => {
            let graph = read_graph(&graph, format)?;
            writeln!(out, "{}", to_json(&graph, &greedy_acyclic(&graph, cli.seed)))?;
        }
        Command::VertexColor { graph } => {
            let graph = read_graph(&graph, format)?;
            let y = brooks_colouring(&graph)?;
            let mut doc = String::from("{");
            for (v, c) in y.colours().iter().enumerate() {
                let sep = if v == 0 { "" } else { "," };
                write!(doc, "{sep}\"{v}\":{c}").unwrap();
            }
            writeln!(out, "{doc}}}")?;
        }
        Command::Compose {
            g,
            h,
            xg,
            xh,
            solve_factors,
            graph_out,
            budget,
        } => {
            let (g, h) = (read_graph(&g, format)?, read_graph(&h, format)?);
            let budget = budget.to_search()?;
            let colour_factor = |graph: &Graph, given: Option<&Path>, seed: u64| -> Result<EdgeColouring, Failure> {
                match given {
                    Some(path) => Ok(read_colouring(path, graph)?),
                    None if solve_factors => solved(graph, budget),
                    None => Ok(greedy_acyclic(graph, seed)),
                }
            };
            let x_g = colour_factor(&g, xg.as_deref(), cli.seed)?;
            let x_h = colour_factor(&h, xh.as_deref(), cli.seed.wrapping_add(1))?;
            let input = ComposeInput {
                g: &g,
                x_g: &x_g,
                h: &h,
                x_h: &x_h,
                y_h: None,
            };
            let composed = match compose_or_solve(input, budget) {
                Ok(composed) => composed,
                Err(ComposeError::FactorColouring { factor, source }) => {
                    writeln!(out, "{factor} factor colouring rejected: {source}")?;
                    return Err(Failure::Verification);
                }
                Err(ComposeError::Solve(err)) => return Err(exhausted(err)),
                Err(err) => return Err(err.into()),
            };
            if let Some(path) = graph_out {
                fs::write(&path, format_graph(composed.graph(), format))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            writeln!(out, "{}", to_json(composed.graph(), &composed.colouring))?;
        }
        Command::Hypercube { d } => {
            let (graph, colouring) = hypercube_colouring(d)?;
            writeln!(out, "{}", to_json(&graph, &colouring))?;
        }
        Command::Verify { colouring, graph } => {
            let (coloured, x) =
                from_json(&read_text(&colouring)?).with_context(|| format!("parsing {}", colouring.display()))?;
            if let Some(path) = graph {
                if read_graph(&path, format)? != coloured {
                    writeln!(out, "colouring is not of the graph in {}", path.display())?;
                    return Err(Failure::Verification);
                }
            }
            match find_bichromatic_cycle(&coloured, &x) {
                Ok(None) => writeln!(out, "ok: proper and acyclic with {} colours", x.colours_used())?,
                Ok(Some(witness)) | Err(VerifyError::Violation(witness)) => {
                    writeln!(out, "{witness}")?;
                    return Err(Failure::Verification);
                }
                Err(err @ VerifyError::Malformed(_)) => return Err(err.into()),
            }
        }
        Command::Scan {
            max_n,
            min_n,
            input,
            budget,
        } => {
            let graphs = match (max_n, input) {
                (Some(max_n), _) => {
                    if max_n > MAX_ORDER {
                        return Err(anyhow!("--max-n is limited to {MAX_ORDER}").into());
                    }
                    connected_graphs_between(min_n, max_n)
                }
                (None, Some(path)) => match format {
                    Format::Graph6 => parse_graph6_stream(&read_text(&path)?)
                        .with_context(|| format!("parsing {}", path.display()))?,
                    Format::Edgelist => vec![read_graph(&path, format)?],
                },
                (None, None) => unreachable!("clap requires one of --max-n and --input"),
            };
            scan(&graphs, budget.to_search()?, out)?;
        }
    }
    Ok(())
}

fn generate(family: Family, params: &[usize]) -> anyhow::Result<Graph> {
    let expected = match family {
        Family::Petersen => 0,
        Family::Grid => 2,
        _ => 1,
    };
    if params.len() != expected {
        bail!("{family:?} takes {expected} size parameter(s), got {}", params.len());
    }
    let graph = match family {
        Family::Path => graph::path(params[0]),
        Family::Cycle => graph::cycle(params[0]),
        Family::Complete => graph::complete(params[0]),
        Family::Grid => graph::grid(params[0], params[1]),
        Family::Hypercube => graph::hypercube(params[0]),
        Family::Petersen => Ok(graph::petersen()),
    };
    Ok(graph?)
}

fn exhausted(err: SolveError) -> Failure {
    Failure::BudgetExhausted(err.to_string())
}

fn solved(graph: &Graph, budget: SearchBudget) -> Result<EdgeColouring, Failure> {
    exact_aci(graph, budget).map(|r| r.witness).map_err(exhausted)
}

fn aci(graph: &Graph, budget: &Budget, lower_only: bool, greedy_seed: Option<u64>, out: &mut impl Write) -> Outcome {
    let lower = lower_bound(graph);
    let doc = if lower_only {
        json!({ "lower_bound": lower })
    } else if let Some(seed) = greedy_seed {
        let x = greedy_acyclic(graph, seed);
        json!({ "colours": x.colours_used(), "lower_bound": lower, "colouring": colouring_value(graph, &x) })
    } else {
        match exact_aci(graph, budget.to_search()?) {
            Ok(result) => json!({
                "aci": result.aci,
                "nodes": result.stats.nodes,
                "time_ms": result.stats.elapsed.as_secs_f64() * 1e3,
                "colouring": colouring_value(graph, &result.witness),
            }),
            Err(err) => {
                let SolveError::BudgetExhausted { lower, upper, stats } = &err;
                let doc = json!({ "lower": lower, "upper": upper, "nodes": stats.nodes });
                writeln!(out, "{doc}")?;
                return Err(exhausted(err));
            }
        }
    };
    writeln!(out, "{doc}")?;
    Ok(())
}

struct Row {
    n: usize,
    m: usize,
    delta: usize,
    aci: Option<usize>,
    nodes: u64,
    elapsed: Duration,
}

fn scan(graphs: &[Graph], budget: SearchBudget, out: &mut impl Write) -> Outcome {
    // collect keeps input order, so the CSV is stable across thread counts
    let rows: Vec<Row> = graphs
        .par_iter()
        .map(|g| {
            let start = Instant::now();
            let (aci, nodes) = match exact_aci(g, budget) {
                Ok(r) => (Some(r.aci), r.stats.nodes),
                Err(SolveError::BudgetExhausted { stats, .. }) => (None, stats.nodes),
            };
            Row {
                n: g.vertex_count(),
                m: g.edge_count(),
                delta: g.max_degree(),
                aci,
                nodes,
                elapsed: start.elapsed(),
            }
        })
        .collect();

    writeln!(out, "n,m,delta,aci,aci_minus_delta,nodes,time_ms")?;
    let mut max_excess: Option<i64> = None;
    let mut unsolved = 0;
    for row in &rows {
        let (aci, excess) = match row.aci {
            Some(aci) => {
                let excess = aci as i64 - row.delta as i64;
                max_excess = max_excess.max(Some(excess));
                (aci.to_string(), excess.to_string())
            }
            None => {
                unsolved += 1;
                (String::new(), String::new())
            }
        };
        let time_ms = row.elapsed.as_secs_f64() * 1e3;
        writeln!(
            out,
            "{},{},{},{aci},{excess},{},{time_ms:.3}",
            row.n, row.m, row.delta, row.nodes
        )?;
    }
    out.flush()?;

    let max = max_excess.map_or_else(|| "n/a".to_string(), |x| x.to_string());
    eprintln!(
        "scanned {} graphs, max a'-Δ = {max}, {unsolved} over budget",
        rows.len()
    );
    if unsolved > 0 {
        return Err(Failure::BudgetExhausted(format!(
            "{unsolved} graphs exceeded the search budget"
        )));
    }
    Ok(())
}
