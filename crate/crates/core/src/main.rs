//! Command-line front door: load JSON inputs, run constructions, emit and
//! verify certificates. One command per process; everything sorted, so
//! identical invocations print identical bytes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use prodstruct::bounds::{bound_catalog, ClassSpec};
use prodstruct::cert::{
    embedding_certificate, engine_certificate, gap_certificate, hierarchy_certificate,
    layout_certificate, model_certificate, order_certificate, td_certificate,
    verify_certificate, Certificate, Claim,
};
use prodstruct::colouring::{
    exact_col, verify_nonrepetitive, verify_p_centred, Colouring, Mode, VertexOrder,
};
use prodstruct::decomp::{exact_treewidth, normalise, NormalisedTreeDecomposition, TreeDecomposition};
use prodstruct::engine::{gpst_shallow, quotient_engine, EngineInput};
use prodstruct::graph::graph_power;
use prodstruct::layouts::{exact_queue_number, layout_from_json};
use prodstruct::lowerbound::{build_grid_hierarchy, check_hierarchy};
use prodstruct::minors::{clique_lift_model, shortcut_to_model, CliqueLiftSpec, MinorModel, ShortcutSystem};
use prodstruct::planar::{
    friend_assignment, gap_charging, planarize, verify_friend_assignment, EmbeddedGraph,
};
use prodstruct::products::{lex_product, strong_product};
use prodstruct::{Error, Graph, Result};

#[derive(Parser)]
#[command(
    name = "prodstruct",
    version,
    about = "Product-structure constructions with re-checkable JSON certificates"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// JSON input file for subcommands that take a structure.
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Also write the JSON output here (stdout always gets a copy).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Stream seed for anything randomised; constructions ignore it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Size cap handed to the exhaustive oracles.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Worker threads for the exhaustive oracles.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProductOp {
    Strong,
    Lex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Strong,
    Weak,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strong => Mode::Strong,
            ModeArg::Weak => Mode::Weak,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Graph product of {"left": graph, "right": graph}.
    Product {
        #[arg(long, value_enum, default_value_t = ProductOp::Strong)]
        op: ProductOp,
    },
    /// k-th power of the input graph.
    Power {
        #[arg(long)]
        k: u64,
    },
    /// Certify {"graph", "td"}, optionally normalising first.
    Decompose {
        #[arg(long)]
        normalise: bool,
    },
    /// Exact treewidth of the input graph with a witness decomposition.
    Treewidth,
    /// Certify a minor model at its declared depth.
    Model,
    /// Turn a shortcut system into a certified model of its supergraph.
    Shortcut,
    /// Turn a clique-lift specification into a certified model.
    Cliquelift,
    /// The quotient machine.
    Engine {
        #[command(subcommand)]
        action: EngineAction,
    },
    /// Run the machine on {"model","h","p","ell","hTD"} and compress the
    /// path coordinate into a row-treewidth witness.
    Gpst,
    /// Replace crossings by dummy vertices.
    Planarise,
    /// Charge crossings to incident edges within capacity k.
    Gap {
        #[arg(long)]
        k: u64,
    },
    /// Well-behaved friend assignment for a simple fan-planar drawing.
    Friend,
    /// Certify {"graph", "layout"} as a queue layout.
    Layout,
    /// Exact queue number of the input graph with a witness layout.
    Qn,
    /// Exact s-reach colouring number with a witness order.
    Colnum {
        #[arg(long)]
        s: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
        mode: ModeArg,
    },
    /// Certify {"graph", "order"} against its measured colouring number.
    Colorder {
        #[arg(long)]
        s: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Strong)]
        mode: ModeArg,
    },
    /// Check {"graph", "colouring"} for repetitively coloured paths.
    Nonrep {
        /// Largest half-length of the paths searched.
        #[arg(long, default_value_t = 8)]
        h: u64,
    },
    /// Check {"graph", "colouring"} for p-centredness.
    Centred {
        #[arg(long)]
        p: u64,
    },
    /// The explicit 1-gap family with exponential local treewidth.
    Lowerbound {
        #[command(subcommand)]
        action: LowerAction,
    },
    /// Re-check a certificate file without re-running its construction.
    Verify { file: PathBuf },
    /// Catalogue of quantitative bounds for a graph class.
    Bounds {
        #[arg(long)]
        class: String,
        /// Class parameter, repeatable: --set k=2
        #[arg(long = "set", value_parser = parse_kv)]
        set: Vec<(String, u64)>,
    },
}

#[derive(Subcommand)]
enum EngineAction {
    /// Run on an input bundle and emit an engine-bundle certificate.
    Run {
        /// Require the bundle's model to sit at exactly this depth.
        #[arg(long)]
        r: Option<u64>,
    },
}

#[derive(Subcommand)]
enum LowerAction {
    /// Build the n, k hierarchy; --check measures it and certifies.
    Build {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        check: bool,
    },
}

fn parse_kv(s: &str) -> std::result::Result<(String, u64), String> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| format!("expected key=value, got {s:?}"))?;
    let v: u64 = v.parse().map_err(|e| format!("{s:?}: {e}"))?;
    Ok((k.to_string(), v))
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load(cli: &Cli) -> Result<Value> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Error::Input("this subcommand needs --input <file>".into()))?;
    read_json(path)
}

fn decode<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("input: {e}")))
}

fn part<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Input(format!("input is missing the field {name:?}")))
}

fn out<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Construction(format!("output encoding: {e}")))
}

fn wrapped(mut v: Value) -> Value {
    v["schema"] = json!("v1");
    v
}

#[derive(Deserialize)]
struct PairInput {
    left: Graph,
    right: Graph,
}

#[derive(Deserialize)]
struct TdInput {
    graph: Graph,
    td: TreeDecomposition,
}

#[derive(Deserialize)]
struct GpstInput {
    model: MinorModel,
    h: Graph,
    p: Graph,
    ell: usize,
    #[serde(rename = "hTD")]
    h_td: NormalisedTreeDecomposition,
}

#[derive(Deserialize)]
struct OrderInput {
    graph: Graph,
    order: Vec<String>,
}

#[derive(Deserialize)]
struct ColouredInput {
    graph: Graph,
    colouring: std::collections::BTreeMap<String, String>,
}

fn run(cli: &Cli) -> Result<Value> {
    let _ = cli.seed;
    match &cli.cmd {
        Cmd::Product { op } => {
            let pair: PairInput = decode(&load(cli)?)?;
            let g = match op {
                ProductOp::Strong => strong_product(&pair.left, &pair.right)?,
                ProductOp::Lex => lex_product(&pair.left, &pair.right)?,
            };
            Ok(wrapped(json!({ "graph": out(&g)? })))
        }
        Cmd::Power { k } => {
            let g: Graph = decode(&load(cli)?)?;
            Ok(wrapped(json!({ "graph": out(&graph_power(&g, *k)?)? })))
        }
        Cmd::Decompose { normalise: norm } => {
            let input: TdInput = decode(&load(cli)?)?;
            let td = if *norm {
                normalise(&input.graph, &input.td)?.td
            } else {
                input.td
            };
            out(&td_certificate(&input.graph, &td, None)?)
        }
        Cmd::Treewidth => {
            let g: Graph = decode(&load(cli)?)?;
            let (width, td) = exact_treewidth(&g, cli.budget)?;
            out(&td_certificate(&g, &td, Some(width))?)
        }
        Cmd::Model => {
            let m: MinorModel = decode(&load(cli)?)?;
            out(&model_certificate(&m)?)
        }
        Cmd::Shortcut => {
            let s: ShortcutSystem = decode(&load(cli)?)?;
            out(&model_certificate(&shortcut_to_model(&s)?)?)
        }
        Cmd::Cliquelift => {
            let c: CliqueLiftSpec = decode(&load(cli)?)?;
            out(&model_certificate(&clique_lift_model(&c)?)?)
        }
        Cmd::Engine { action } => {
            let EngineAction::Run { r } = action;
            let input: EngineInput = decode(&load(cli)?)?;
            if let Some(want) = r {
                let declared = input.model.declared_radius();
                if declared != *want {
                    return Err(Error::Input(format!(
                        "bundle's model sits at depth {declared}, but --r {want} was requested"
                    )));
                }
            }
            let output = quotient_engine(&input)?;
            out(&engine_certificate(&input, &output)?)
        }
        Cmd::Gpst => {
            let g: GpstInput = decode(&load(cli)?)?;
            let outcome = gpst_shallow(&g.model, &g.h, &g.p, g.ell, &g.h_td)?;
            let mut cert = embedding_certificate(&g.model.guest, &outcome.witness)?;
            cert.claims.push(Claim {
                name: "rowTreewidth".to_string(),
                params: Default::default(),
                measured: outcome.product_td.width(),
                bound: i64::try_from(outcome.row_treewidth_bound)
                    .map_err(|_| Error::Resource("row bound overflows a claim".into()))?,
            });
            verify_certificate(&cert)?;
            out(&cert)
        }
        Cmd::Planarise => {
            let e: EmbeddedGraph = decode(&load(cli)?)?;
            let (plane, dummies, paths) = planarize(&e)?;
            let path_list: Vec<Value> = paths
                .iter()
                .map(|(edge, walk)| json!({ "edge": edge, "path": walk }))
                .collect();
            Ok(wrapped(json!({
                "plane": out(&plane)?,
                "dummies": out(&dummies)?,
                "paths": path_list,
            })))
        }
        Cmd::Gap { k } => {
            let e: EmbeddedGraph = decode(&load(cli)?)?;
            match gap_charging(&e, *k)? {
                Some(gc) => out(&gap_certificate(&e, &gc)?),
                None => Err(Error::Reject(format!("no charging stays within capacity {k}"))),
            }
        }
        Cmd::Friend => {
            let e: EmbeddedGraph = decode(&load(cli)?)?;
            let fa = friend_assignment(&e)?;
            verify_friend_assignment(&e, &fa)?;
            Ok(wrapped(json!({ "assignment": out(&fa)? })))
        }
        Cmd::Layout => {
            let v = load(cli)?;
            let graph: Graph = decode(part(&v, "graph")?)?;
            let layout = layout_from_json(&graph, part(&v, "layout")?)?;
            out(&layout_certificate(&graph, &layout, None)?)
        }
        Cmd::Qn => {
            let g: Graph = decode(&load(cli)?)?;
            let (qn, layout) = exact_queue_number(&g, cli.budget, cli.jobs)?;
            out(&layout_certificate(&g, &layout, Some(qn as i64))?)
        }
        Cmd::Colnum { s, mode } => {
            let g: Graph = decode(&load(cli)?)?;
            let (col, order) = exact_col(&g, *s, (*mode).into(), cli.budget, cli.jobs)?;
            out(&order_certificate(&g, &order, *s, (*mode).into(), Some(col as i64))?)
        }
        Cmd::Colorder { s, mode } => {
            let input: OrderInput = decode(&load(cli)?)?;
            let order = VertexOrder { order: input.order };
            out(&order_certificate(&input.graph, &order, *s, (*mode).into(), None)?)
        }
        Cmd::Nonrep { h } => {
            let input: ColouredInput = decode(&load(cli)?)?;
            let c = Colouring { colour: input.colouring };
            let steps = cli.budget.map(|b| b as u64);
            verify_nonrepetitive(&input.graph, &c, *h, steps)?;
            let colours: std::collections::BTreeSet<&String> = c.colour.values().collect();
            Ok(wrapped(json!({ "ok": true, "colours": colours.len(), "h": h })))
        }
        Cmd::Centred { p } => {
            let input: ColouredInput = decode(&load(cli)?)?;
            let c = Colouring { colour: input.colouring };
            verify_p_centred(&input.graph, &c, *p, cli.budget)?;
            let colours: std::collections::BTreeSet<&String> = c.colour.values().collect();
            Ok(wrapped(json!({ "ok": true, "colours": colours.len(), "p": p })))
        }
        Cmd::Lowerbound { action } => {
            let LowerAction::Build { n, k, check } = action;
            let h = build_grid_hierarchy(*n, *k, cli.budget)?;
            if *check {
                let report = check_hierarchy(&h)?;
                out(&hierarchy_certificate(&h, &report)?)
            } else {
                Ok(wrapped(json!({ "hierarchy": out(&h)? })))
            }
        }
        Cmd::Verify { file } => {
            let cert: Certificate = decode(&read_json(file)?)?;
            verify_certificate(&cert)?;
            Ok(wrapped(json!({ "ok": true, "kind": out(&cert.kind)? })))
        }
        Cmd::Bounds { class, set } => {
            let spec = ClassSpec {
                class: class.clone(),
                params: set.iter().cloned().collect(),
            };
            Ok(wrapped(out(&bound_catalog(&spec)?)?))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            let text = value.to_string();
            println!("{text}");
            if let Some(path) = &cli.output {
                if let Err(e) = fs::write(path, format!("{text}\n")) {
                    eprintln!("error: {}: {e}", path.display());
                    process::exit(3);
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            process::exit(e.exit_code());
        }
    }
}
