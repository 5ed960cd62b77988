//! Self-contained JSON certificates: a verified payload plus the named
//! inequalities it claims.
//!
//! A certificate carries everything needed to re-check it from scratch:
//! the structure, the graph it talks about, and a claim list pairing each
//! measured quantity with the bound it stays under. Verification
//! deserialises the payload, runs the matching module verifier,
//! re-measures every quantity it knows by name, and compares: a stated
//! measurement that disagrees with the fresh one is rejected even when it
//! would satisfy the bound.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

use crate::colouring::{col_of_order, Mode, VertexOrder};
use crate::decomp::{
    verify_hl_partition, verify_tree_decomposition, HLPartition, TreeDecomposition,
};
use crate::engine::{quotient_engine, verify_engine_input, EngineInput, EngineOutput};
use crate::layouts::{layout_from_json, verify_layout, QueueLayout};
use crate::lowerbound::{check_hierarchy, GridHierarchy, HierarchyReport};
use crate::minors::{verify_model, MinorModel};
use crate::planar::{verify_gap_charging, EmbeddedGraph, GapCharging};
use crate::products::{verify_embedding, EmbeddingWitness};
use crate::{input_err, reject, Error, Graph, Result};

pub const SCHEMA: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    Model,
    Embedding,
    TreeDecomposition,
    HlPartition,
    QueueLayout,
    VertexOrder,
    GapCharging,
    EngineBundle,
    HierarchyReport,
}

/// A named inequality: the measurement stays at or below the bound. The
/// optional parameter map records the instance the claim is about.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, i64>,
    pub measured: i64,
    pub bound: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub kind: CertKind,
    pub payload: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub claims: Vec<Claim>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelPayload {
    model: MinorModel,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingPayload {
    guest: Graph,
    witness: EmbeddingWitness,
}

#[derive(Serialize, Deserialize)]
struct TdPayload {
    graph: Graph,
    td: TreeDecomposition,
}

#[derive(Serialize, Deserialize)]
struct HlPayload {
    graph: Graph,
    partition: HLPartition,
}

#[derive(Serialize)]
struct LayoutPayload {
    graph: Graph,
    layout: QueueLayout,
}

#[derive(Serialize, Deserialize)]
struct OrderPayload {
    graph: Graph,
    order: VertexOrder,
    s: u64,
    mode: Mode,
}

#[derive(Serialize, Deserialize)]
struct GapPayload {
    embedded: EmbeddedGraph,
    charging: GapCharging,
}

#[derive(Serialize, Deserialize)]
struct EnginePayload {
    input: EngineInput,
    output: EngineOutput,
}

#[derive(Serialize, Deserialize)]
struct HierarchyPayload {
    hierarchy: GridHierarchy,
    report: HierarchyReport,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Construction(format!("payload encoding: {e}")))
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("payload decoding: {e}")))
}

fn as_i64(x: u64, what: &str) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Resource(format!("{what} overflows a signed claim")))
}

fn field<'a>(payload: &'a Value, name: &str) -> Result<&'a Value> {
    payload
        .get(name)
        .ok_or_else(|| Error::Input(format!("payload is missing the field {name:?}")))
}

/// Runs the module verifier for `kind` over `payload` and returns the
/// measurements the kind pins by name.
fn checked_measurements(kind: CertKind, payload: &Value) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    match kind {
        CertKind::Model => {
            let p: ModelPayload = from_value(payload)?;
            let r = p.model.declared_radius();
            let measured = verify_model(&p.model, Some(r))?;
            out.insert("branchRadius".into(), as_i64(measured, "branch radius")?);
        }
        CertKind::Embedding => {
            let p: EmbeddingPayload = from_value(payload)?;
            verify_embedding(&p.guest, &p.witness)?;
        }
        CertKind::TreeDecomposition => {
            let p: TdPayload = from_value(payload)?;
            let width = verify_tree_decomposition(&p.graph, &p.td)?;
            out.insert("width".into(), width);
        }
        CertKind::HlPartition => {
            let p: HlPayload = from_value(payload)?;
            let width = verify_hl_partition(&p.graph, &p.partition)?;
            out.insert("width".into(), as_i64(width, "partition width")?);
        }
        CertKind::QueueLayout => {
            let graph: Graph = from_value(field(payload, "graph")?)?;
            let layout = layout_from_json(&graph, field(payload, "layout")?)?;
            let queues = verify_layout(&graph, &layout)?;
            out.insert("queues".into(), as_i64(queues, "queue count")?);
        }
        CertKind::VertexOrder => {
            let p: OrderPayload = from_value(payload)?;
            let col = col_of_order(&p.graph, &p.order, p.s, p.mode)?;
            out.insert("colNumber".into(), as_i64(col, "colouring number")?);
        }
        CertKind::GapCharging => {
            let p: GapPayload = from_value(payload)?;
            verify_gap_charging(&p.embedded, &p.charging)?;
            let mut load: BTreeMap<&(String, String), i64> = BTreeMap::new();
            for target in p.charging.assignment.values() {
                *load.entry(target).or_default() += 1;
            }
            let max_load = load.values().copied().max().unwrap_or(0);
            out.insert("maxLoad".into(), max_load);
        }
        CertKind::EngineBundle => {
            let p: EnginePayload = from_value(payload)?;
            verify_engine_input(&p.input)?;
            let fresh = quotient_engine(&p.input)?;
            if fresh != p.output {
                return reject("stored machine output differs from recomputation".to_string());
            }
            let b = &p.output.bounds;
            out.insert("partitionWidth".into(), as_i64(b.width_measured, "width")?);
            out.insert("bagSize".into(), as_i64(b.bag_measured, "bag size")?);
        }
        CertKind::HierarchyReport => {
            let p: HierarchyPayload = from_value(payload)?;
            let fresh = check_hierarchy(&p.hierarchy)?;
            if fresh != p.report {
                return reject("stored hierarchy report differs from recomputation".to_string());
            }
            let failed = [
                fresh.grid_contained,
                fresh.radius_bound,
                fresh.gap_feasible,
                fresh.charging_valid,
                fresh.subdivision_valid,
            ]
            .iter()
            .filter(|ok| !**ok)
            .count() as i64;
            out.insert("failedClauses".into(), failed);
            if let Some(r) = fresh.radius_measured {
                out.insert("radius".into(), as_i64(r, "radius")?);
            }
        }
    }
    Ok(out)
}

fn build(
    kind: CertKind,
    payload: Value,
    claims: Vec<(&str, BTreeMap<String, i64>, i64)>,
) -> Result<Certificate> {
    let canonical = checked_measurements(kind, &payload)?;
    let mut list = Vec::new();
    for (name, params, bound) in claims {
        let measured = *canonical.get(name).ok_or_else(|| {
            Error::Construction(format!("claim {name:?} has no measurement for {kind:?}"))
        })?;
        if measured > bound {
            return reject(format!("claim {name:?}: measured {measured} exceeds bound {bound}"));
        }
        list.push(Claim { name: name.to_string(), params, measured, bound });
    }
    Ok(Certificate {
        schema: SCHEMA.to_string(),
        kind,
        payload,
        claims: list,
        notes: None,
    })
}

fn no_params() -> BTreeMap<String, i64> {
    BTreeMap::new()
}

/// Certifies a minor model at its declared depth.
pub fn model_certificate(m: &MinorModel) -> Result<Certificate> {
    let payload = to_value(&ModelPayload { model: m.clone() })?;
    let r = as_i64(m.declared_radius(), "declared radius")?;
    build(CertKind::Model, payload, vec![("branchRadius", no_params(), r)])
}

/// Certifies a subgraph embedding; the witness names its own host.
pub fn embedding_certificate(guest: &Graph, w: &EmbeddingWitness) -> Result<Certificate> {
    let payload = to_value(&EmbeddingPayload { guest: guest.clone(), witness: w.clone() })?;
    build(CertKind::Embedding, payload, vec![])
}

/// Certifies a tree-decomposition; `bound` defaults to the measured width.
pub fn td_certificate(
    g: &Graph,
    td: &TreeDecomposition,
    bound: Option<i64>,
) -> Result<Certificate> {
    let payload = to_value(&TdPayload { graph: g.clone(), td: td.clone() })?;
    let width = verify_tree_decomposition(g, td)?;
    build(
        CertKind::TreeDecomposition,
        payload,
        vec![("width", no_params(), bound.unwrap_or(width))],
    )
}

/// Certifies a two-sided partition at its declared width.
pub fn hl_certificate(g: &Graph, p: &HLPartition) -> Result<Certificate> {
    let payload = to_value(&HlPayload { graph: g.clone(), partition: p.clone() })?;
    let width = as_i64(p.width, "partition width")?;
    build(CertKind::HlPartition, payload, vec![("width", no_params(), width)])
}

/// Certifies a queue layout; `bound` defaults to the measured queue count.
pub fn layout_certificate(
    g: &Graph,
    q: &QueueLayout,
    bound: Option<i64>,
) -> Result<Certificate> {
    let payload = to_value(&LayoutPayload { graph: g.clone(), layout: q.clone() })?;
    let queues = as_i64(verify_layout(g, q)?, "queue count")?;
    build(
        CertKind::QueueLayout,
        payload,
        vec![("queues", no_params(), bound.unwrap_or(queues))],
    )
}

/// Certifies a vertex order against the `s`-reach colouring number it
/// achieves; `bound` defaults to the measurement.
pub fn order_certificate(
    g: &Graph,
    order: &VertexOrder,
    s: u64,
    mode: Mode,
    bound: Option<i64>,
) -> Result<Certificate> {
    let payload = to_value(&OrderPayload {
        graph: g.clone(),
        order: order.clone(),
        s,
        mode,
    })?;
    let col = as_i64(col_of_order(g, order, s, mode)?, "colouring number")?;
    let mut params = no_params();
    params.insert("s".into(), as_i64(s, "radius")?);
    build(
        CertKind::VertexOrder,
        payload,
        vec![("colNumber", params, bound.unwrap_or(col))],
    )
}

/// Certifies a crossing charging at its capacity.
pub fn gap_certificate(e: &EmbeddedGraph, gc: &GapCharging) -> Result<Certificate> {
    let payload = to_value(&GapPayload { embedded: e.clone(), charging: gc.clone() })?;
    let k = as_i64(gc.k, "charging capacity")?;
    build(CertKind::GapCharging, payload, vec![("maxLoad", no_params(), k)])
}

/// Certifies a quotient-machine run: the input, its output, and the two
/// width bounds the machine asserts.
pub fn engine_certificate(input: &EngineInput, output: &EngineOutput) -> Result<Certificate> {
    let payload = to_value(&EnginePayload { input: input.clone(), output: output.clone() })?;
    let b = &output.bounds;
    let params = verify_engine_input(input)?;
    let mut tags = no_params();
    tags.insert("ell".into(), as_i64(params.ell, "ell")?);
    tags.insert("t".into(), as_i64(params.t, "t")?);
    tags.insert("r".into(), as_i64(params.r, "r")?);
    tags.insert("k".into(), as_i64(params.k, "k")?);
    build(
        CertKind::EngineBundle,
        payload,
        vec![
            ("partitionWidth", tags.clone(), as_i64(b.width_limit, "width limit")?),
            ("bagSize", tags, as_i64(b.bag_limit, "bag limit")?),
        ],
    )
}

/// Certifies a passing hierarchy together with its report. A failed
/// report is refused here; it is a measurement, not a certificate.
pub fn hierarchy_certificate(
    h: &GridHierarchy,
    report: &HierarchyReport,
) -> Result<Certificate> {
    if !report.passed {
        return reject("hierarchy report does not pass; nothing to certify".to_string());
    }
    let payload = to_value(&HierarchyPayload {
        hierarchy: h.clone(),
        report: report.clone(),
    })?;
    let mut params = no_params();
    params.insert("n".into(), as_i64(h.n, "n")?);
    params.insert("k".into(), as_i64(h.k, "k")?);
    let limit = as_i64(report.radius_limit, "radius limit")?;
    build(
        CertKind::HierarchyReport,
        payload,
        vec![
            ("failedClauses", params.clone(), 0),
            ("radius", params, limit),
        ],
    )
}

/// Re-checks a certificate from its serialised form alone: schema, payload
/// verification, fresh measurements against the stated ones, and every
/// claim's inequality.
pub fn verify_certificate(c: &Certificate) -> Result<()> {
    if c.schema != SCHEMA {
        return input_err(format!("unknown schema {:?}; this build reads {SCHEMA:?}", c.schema));
    }
    let canonical = checked_measurements(c.kind, &c.payload)?;
    for claim in &c.claims {
        if let Some(&fresh) = canonical.get(&claim.name) {
            if fresh != claim.measured {
                return reject(format!(
                    "claim {:?} states measurement {} but re-measuring gives {fresh}",
                    claim.name, claim.measured
                ));
            }
        }
        if claim.measured > claim.bound {
            return reject(format!(
                "claim {:?}: measured {} exceeds bound {}",
                claim.name, claim.measured, claim.bound
            ));
        }
    }
    Ok(())
}
