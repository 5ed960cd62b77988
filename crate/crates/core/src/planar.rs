//! Combinatorial drawings and the gadgets that turn beyond-planar
//! structure into products and models: dummy-vertex planarisation, the
//! k-planar, string and fan-bundle constructions, cluster embeddings,
//! friend assignments for fan-planar drawings, and flow-based gap
//! charging.
//!
//! Drawings carry no coordinates. A crossing names its two edges and a
//! position along each; the positions order the crossings along an edge
//! relative to the edge's listed orientation. Side flags, when present,
//! give the side of the first edge from which the second one crosses.

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet};

use crate::minors::{
    apply_shortcuts, validate_shortcut_system, verify_model, MinorModel, ShortcutSystem,
};
use crate::products::{
    complete_graph, edgeless_graph, lex_product, product_id, strong_product, verify_embedding,
    EmbeddingWitness,
};
use crate::{input_err, reject, Error, Graph, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub a: (String, String),
    pub b: (String, String),
    #[serde(rename = "posA")]
    pub pos_a: i64,
    #[serde(rename = "posB")]
    pub pos_b: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<i8>,
}

/// A graph with a combinatorial drawing: a list of crossings ordered
/// along each edge by position. `simple` claims that any two edges cross
/// at most once and adjacent edges never do; the claim is checked
/// wherever the drawing is consumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddedGraph {
    #[serde(rename = "graph")]
    pub base: Graph,
    pub crossings: Vec<Crossing>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub simple: bool,
}

/// A crossing with both edges as sorted pairs, positions re-signed to
/// match, and the side flag moved to the sorted orientation of `a`.
#[derive(Clone, Debug)]
struct NormCrossing {
    a: (String, String),
    pos_a: i64,
    b: (String, String),
    pos_b: i64,
    side: Option<i8>,
}

fn sort_pair(u: &str, v: &str) -> (String, String) {
    if u <= v {
        (u.to_string(), v.to_string())
    } else {
        (v.to_string(), u.to_string())
    }
}

fn normalise(g: &Graph, c: &Crossing, i: usize) -> Result<NormCrossing> {
    let check = |pair: &(String, String)| -> Result<bool> {
        let (u, v) = pair;
        if u == v {
            return input_err(format!("crossing {i} lists the loop ({u:?}, {u:?})"));
        }
        if !g.has_edge(u, v) {
            return input_err(format!("crossing {i} references the missing edge ({u:?}, {v:?})"));
        }
        Ok(u > v)
    };
    let swap_a = check(&c.a)?;
    let swap_b = check(&c.b)?;
    let a = sort_pair(&c.a.0, &c.a.1);
    let b = sort_pair(&c.b.0, &c.b.1);
    if a == b {
        return input_err(format!(
            "crossing {i} crosses the edge ({:?}, {:?}) with itself",
            a.0, a.1
        ));
    }
    Ok(NormCrossing {
        a,
        pos_a: if swap_a { -c.pos_a } else { c.pos_a },
        b,
        pos_b: if swap_b { -c.pos_b } else { c.pos_b },
        side: if swap_a { c.side.map(|s| -s) } else { c.side },
    })
}

fn normalised_crossings(e: &EmbeddedGraph) -> Result<Vec<NormCrossing>> {
    e.crossings.iter().enumerate().map(|(i, c)| normalise(&e.base, c, i)).collect()
}

fn crossing_partner<'a>(
    norms: &'a [NormCrossing],
    i: usize,
    edge: &(String, String),
) -> &'a (String, String) {
    if norms[i].a == *edge {
        &norms[i].b
    } else {
        &norms[i].a
    }
}

/// Validates a drawing and returns, for each crossed edge, its crossing
/// indices ordered along the edge from the smaller endpoint.
pub fn crossing_orders(e: &EmbeddedGraph) -> Result<BTreeMap<(String, String), Vec<usize>>> {
    let norms = normalised_crossings(e)?;
    let mut along: BTreeMap<(String, String), Vec<(i64, usize)>> = BTreeMap::new();
    for (i, c) in norms.iter().enumerate() {
        along.entry(c.a.clone()).or_default().push((c.pos_a, i));
        along.entry(c.b.clone()).or_default().push((c.pos_b, i));
    }
    let mut out = BTreeMap::new();
    for (edge, mut list) in along {
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0].0 == w[1].0) {
            return input_err(format!(
                "edge ({:?}, {:?}) lists two crossings at position {}",
                edge.0, edge.1, w[0].0
            ));
        }
        out.insert(edge, list.into_iter().map(|(_, i)| i).collect());
    }
    if e.simple {
        let mut pairs: BTreeSet<((String, String), (String, String))> = BTreeSet::new();
        for (i, c) in norms.iter().enumerate() {
            let ends_a = [&c.a.0, &c.a.1];
            if ends_a.contains(&&c.b.0) || ends_a.contains(&&c.b.1) {
                return input_err(format!(
                    "drawing is flagged simple but crossing {i} joins adjacent edges"
                ));
            }
            if !pairs.insert((c.a.clone(), c.b.clone())) {
                return input_err(format!(
                    "drawing is flagged simple but ({:?}, {:?}) and ({:?}, {:?}) cross twice",
                    c.a.0, c.a.1, c.b.0, c.b.1
                ));
            }
        }
    }
    Ok(out)
}

/// Replaces every crossing by a dummy vertex. Returns the plane graph,
/// the crossing-to-dummy map, and for each original edge the path it
/// becomes, endpoints included and dummies in crossing order.
pub fn planarize(
    e: &EmbeddedGraph,
) -> Result<(Graph, BTreeMap<usize, String>, BTreeMap<(String, String), Vec<String>>)> {
    let orders = crossing_orders(e)?;
    let mut dummies = BTreeMap::new();
    let mut verts: Vec<String> = e.base.vertices().to_vec();
    for i in 0..e.crossings.len() {
        let name = format!("x{i}");
        if e.base.has_vertex(&name) {
            return input_err(format!("dummy name {name:?} collides with a vertex"));
        }
        verts.push(name.clone());
        dummies.insert(i, name);
    }
    let mut paths = BTreeMap::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for (u, v) in e.base.edges() {
        let mut path = vec![u.clone()];
        if let Some(list) = orders.get(&(u.clone(), v.clone())) {
            path.extend(list.iter().map(|i| dummies[i].clone()));
        }
        path.push(v.clone());
        for w in path.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        paths.insert((u, v), path);
    }
    let plane = Graph::new(verts, edges)?;
    Ok((plane, dummies, paths))
}

/// Models a drawing with at most `k` crossings per edge back in the
/// lexicographic product of its planarisation with two rows. Each
/// crossed edge becomes a subdivision path; a dummy's two passing edges
/// take distinct rows, so the paths stay internally disjoint.
pub fn kplanar_model(e: &EmbeddedGraph, k: u64) -> Result<MinorModel> {
    let orders = crossing_orders(e)?;
    for (edge, list) in &orders {
        if list.len() as u64 > k {
            return Err(Error::Precondition(format!(
                "edge ({:?}, {:?}) has {} crossings, above the bound {k}",
                edge.0,
                edge.1,
                list.len()
            )));
        }
    }
    let (plane, dummies, paths) = planarize(e)?;
    let host = lex_product(&plane, &edgeless_graph(2))?;
    let norms = normalised_crossings(e)?;
    let dummy_idx: BTreeMap<&String, usize> = dummies.iter().map(|(i, n)| (n, *i)).collect();
    // The lexicographically smaller of a dummy's two edges rides row
    // zero through it.
    let row = |edge: &(String, String), dummy: &String| -> &'static str {
        if norms[dummy_idx[dummy]].a == *edge {
            "0"
        } else {
            "1"
        }
    };
    let injection: BTreeMap<String, String> =
        e.base.vertices().iter().map(|v| (v.clone(), product_id(v, "0"))).collect();
    let lifted: BTreeMap<(String, String), Vec<String>> = paths
        .iter()
        .map(|(key, path)| {
            let lifted = path
                .iter()
                .enumerate()
                .map(|(i, w)| {
                    if i == 0 || i == path.len() - 1 {
                        product_id(w, "0")
                    } else {
                        product_id(w, row(key, w))
                    }
                })
                .collect();
            (key.clone(), lifted)
        })
        .collect();
    crate::minors::model_from_paths(&e.base, &host, &injection, &lifted, k)
}

/// A family of curves given combinatorially: each curve is the ordered
/// list of its intersection events, and each event is shared by exactly
/// two curves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveArrangement {
    pub curves: BTreeMap<String, Vec<String>>,
}

/// Models the intersection graph of an arrangement in the lexicographic
/// product of the curve graph with two rows. Event vertices are chained
/// along each curve; a curve with at most one event gets an auxiliary
/// vertex so its branch set stays nonempty and realisable.
///
/// `delta` caps the events per curve; when absent the maximum over the
/// input is used. The model depth is half of `delta`, rounded down. With
/// `delta` below two the chains degenerate, so branch sets shrink to
/// single vertices chosen to keep every intersection edge covered.
pub fn string_model(c: &CurveArrangement, delta: Option<u64>) -> Result<MinorModel> {
    let mut owners: BTreeMap<&String, Vec<&String>> = BTreeMap::new();
    for (curve, events) in &c.curves {
        let mut seen = BTreeSet::new();
        for ev in events {
            if !seen.insert(ev) {
                return Err(Error::Precondition(format!(
                    "event {ev:?} repeats on curve {curve:?}"
                )));
            }
            owners.entry(ev).or_default().push(curve);
        }
    }
    // Curves are scanned in sorted order, so each owner list is sorted.
    for (ev, curves) in &owners {
        match curves.len() {
            2 => {}
            1 => {
                return Err(Error::Precondition(format!(
                    "event {ev:?} occurs on only one curve"
                )))
            }
            _ => {
                return Err(Error::Precondition(format!(
                    "event {ev:?} lies on three or more curves"
                )))
            }
        }
    }
    let longest = c.curves.values().map(|e| e.len() as u64).max().unwrap_or(0);
    let delta = match delta {
        Some(d) => {
            if longest > d {
                let (curve, events) = c.curves.iter().find(|(_, e)| e.len() as u64 > d).unwrap();
                return Err(Error::Precondition(format!(
                    "curve {curve:?} has {} events, above the bound {d}",
                    events.len()
                )));
            }
            d
        }
        None => longest,
    };

    // Row of a curve at one of its events: the smaller-named owner rides
    // row zero.
    let row = |ev: &String, curve: &String| -> &'static str {
        if owners[ev][0] == curve {
            "0"
        } else {
            "1"
        }
    };

    let mut verts: Vec<String> = owners.keys().map(|e| (*e).clone()).collect();
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut aux: BTreeMap<&String, String> = BTreeMap::new();
    for (curve, events) in &c.curves {
        for w in events.windows(2) {
            edges.push((w[0].clone(), w[1].clone()));
        }
        if events.len() <= 1 {
            let name = format!("c{curve}");
            if owners.contains_key(&name) {
                return input_err(format!("auxiliary name {name:?} collides with an event"));
            }
            verts.push(name.clone());
            if let Some(ev) = events.first() {
                edges.push((name.clone(), ev.clone()));
            }
            aux.insert(curve, name);
        }
    }
    let h = Graph::new(verts, edges)?;
    let host = lex_product(&h, &edgeless_graph(2))?;

    let mut guest_edges: BTreeSet<(String, String)> = BTreeSet::new();
    for curves in owners.values() {
        guest_edges.insert((curves[0].clone(), curves[1].clone()));
    }
    let guest = Graph::new(c.curves.keys().cloned(), guest_edges)?;

    let mut branch: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut centre: BTreeMap<String, String> = BTreeMap::new();
    for (curve, events) in &c.curves {
        let mut set = BTreeSet::new();
        let mid;
        if events.len() >= 2 {
            for ev in events {
                set.insert(product_id(ev, row(ev, curve)));
            }
            let m = &events[(events.len() - 1) / 2];
            mid = product_id(m, row(m, curve));
        } else if let Some(ev) = events.first() {
            if delta >= 2 {
                set.insert(product_id(ev, row(ev, curve)));
                set.insert(product_id(&aux[curve], "0"));
                mid = product_id(ev, row(ev, curve));
            } else {
                // Both owners have a lone event here and the depth is
                // zero. The smaller-named curve keeps the event; the
                // other falls back to its auxiliary vertex, which
                // neighbours the event in the curve graph, so the
                // intersection edge stays covered.
                if owners[ev][0] == curve {
                    mid = product_id(ev, "0");
                } else {
                    mid = product_id(&aux[curve], "0");
                }
                set.insert(mid.clone());
            }
        } else {
            mid = product_id(&aux[curve], "0");
            set.insert(mid.clone());
        }
        branch.insert(curve.clone(), set);
        centre.insert(curve.clone(), mid);
    }

    let model = MinorModel {
        host,
        guest,
        branch,
        centre,
        depth2x: 2 * (delta / 2),
        topological: false,
    };
    verify_model(&model, Some(model.declared_radius()))
        .map_err(|e| Error::Construction(format!("curve model: {e}")))?;
    Ok(model)
}

/// A graph partitioned into bounded clusters together with the cluster
/// adjacency graph; inter-cluster edges may only join adjacent clusters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterStructure {
    pub g: Graph,
    pub clusters: BTreeMap<String, BTreeSet<String>>,
    #[serde(rename = "clusterAdjacency")]
    pub cluster_adjacency: Graph,
}

/// Embeds a clustered graph into the strong product of its cluster
/// adjacency graph with a clique of size `k`: each vertex maps to its
/// cluster paired with its index inside it.
pub fn cluster_embed(c: &ClusterStructure, k: usize) -> Result<EmbeddingWitness> {
    if k == 0 {
        return Err(Error::Precondition("cluster capacity k must be at least 1".into()));
    }
    for id in c.clusters.keys() {
        if !c.cluster_adjacency.has_vertex(id) {
            return Err(Error::Precondition(format!(
                "cluster {id:?} is missing from the adjacency graph"
            )));
        }
    }
    for id in c.cluster_adjacency.vertices() {
        if !c.clusters.contains_key(id) {
            return Err(Error::Precondition(format!(
                "adjacency graph lists the unknown cluster {id:?}"
            )));
        }
    }
    let mut owner: BTreeMap<&String, &String> = BTreeMap::new();
    let mut slot: BTreeMap<&String, usize> = BTreeMap::new();
    for (id, cell) in &c.clusters {
        if cell.len() > k {
            return Err(Error::Precondition(format!(
                "cluster {id:?} has {} vertices, above the bound {k}",
                cell.len()
            )));
        }
        for (i, v) in cell.iter().enumerate() {
            if !c.g.has_vertex(v) {
                return Err(Error::Precondition(format!(
                    "cluster {id:?} lists the unknown vertex {v:?}"
                )));
            }
            if owner.insert(v, id).is_some() {
                return Err(Error::Precondition(format!(
                    "vertex {v:?} appears in two clusters"
                )));
            }
            slot.insert(v, i);
        }
    }
    if let Some(v) = c.g.vertices().iter().find(|v| !owner.contains_key(v)) {
        return Err(Error::Precondition(format!("vertex {v:?} is in no cluster")));
    }
    for (u, v) in c.g.edges() {
        let (cu, cv) = (owner[&u], owner[&v]);
        if cu != cv && !c.cluster_adjacency.has_edge(cu, cv) {
            return Err(Error::Precondition(format!(
                "edge ({u:?}, {v:?}) joins the non-adjacent clusters {cu:?} and {cv:?}"
            )));
        }
    }
    let host = strong_product(&c.cluster_adjacency, &complete_graph(k))?;
    let injection = c
        .g
        .vertices()
        .iter()
        .map(|v| (v.clone(), product_id(owner[v], &slot[v].to_string())))
        .collect();
    let witness = EmbeddingWitness { host, injection };
    verify_embedding(&c.g, &witness)
        .map_err(|e| Error::Construction(format!("cluster embedding: {e}")))?;
    Ok(witness)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bundle {
    pub origin: String,
    pub edges: Vec<(String, String)>,
}

/// A graph whose edges are grouped into fan-bundles, together with a
/// drawing of the bundle skeleton. Bundle ids are vertices of the
/// skeleton: each bundle contributes a segment edge from its origin to
/// its id, and each graph edge a middle edge between the ids of its two
/// bundles. Only segment edges may cross.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleStructure {
    pub graph: Graph,
    pub bundles: BTreeMap<String, Bundle>,
    pub embedded: EmbeddedGraph,
}

fn owner_bundle<'a>(
    bundles: &'a BTreeMap<String, Bundle>,
    edge: &(String, String),
) -> Option<&'a Bundle> {
    bundles.get(&edge.0).or_else(|| bundles.get(&edge.1))
}

/// Models a bundled graph in the lexicographic product of its
/// planarised skeleton with two rows. A vertex's branch set is the union
/// of its bundle paths, rooted at the vertex itself; crossing dummies
/// take rows keyed by the two origins. Depth `k + 1` covers a segment
/// with `k` crossings.
pub fn fanbundle_model(b: &BundleStructure, k: u64) -> Result<MinorModel> {
    for (id, bundle) in &b.bundles {
        if b.graph.has_vertex(id) {
            return Err(Error::Precondition(format!(
                "bundle id {id:?} collides with a graph vertex"
            )));
        }
        if !b.graph.has_vertex(&bundle.origin) {
            return Err(Error::Precondition(format!(
                "bundle {id:?} is anchored at the unknown vertex {:?}",
                bundle.origin
            )));
        }
        for (u, v) in &bundle.edges {
            if !b.graph.has_edge(u, v) {
                return Err(Error::Precondition(format!(
                    "bundle {id:?} lists the missing edge ({u:?}, {v:?})"
                )));
            }
            if *u != bundle.origin && *v != bundle.origin {
                return Err(Error::Precondition(format!(
                    "bundle {id:?} lists the edge ({u:?}, {v:?}) away from its origin"
                )));
            }
        }
    }
    // Each edge must sit in exactly one bundle at each endpoint.
    let mut at: BTreeMap<(String, String), &String> = BTreeMap::new();
    for (id, bundle) in &b.bundles {
        for (u, v) in &bundle.edges {
            let other = if *u == bundle.origin { v } else { u };
            let key = (bundle.origin.clone(), other.clone());
            if at.insert(key, id).is_some() {
                return Err(Error::Precondition(format!(
                    "edge ({u:?}, {v:?}) is in two bundles at {:?}",
                    bundle.origin
                )));
            }
        }
    }
    let mut verts: Vec<String> = b.graph.vertices().to_vec();
    verts.extend(b.bundles.keys().cloned());
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut segments: BTreeSet<(String, String)> = BTreeSet::new();
    for (id, bundle) in &b.bundles {
        edges.push((bundle.origin.clone(), id.clone()));
        segments.insert(sort_pair(&bundle.origin, id));
    }
    for (u, v) in b.graph.edges() {
        let start = at.get(&(u.clone(), v.clone())).ok_or_else(|| {
            Error::Precondition(format!("edge ({u:?}, {v:?}) is in no bundle at {u:?}"))
        })?;
        let end = at.get(&(v.clone(), u.clone())).ok_or_else(|| {
            Error::Precondition(format!("edge ({u:?}, {v:?}) is in no bundle at {v:?}"))
        })?;
        edges.push(((*start).clone(), (*end).clone()));
    }
    let skeleton = Graph::new(verts, edges)?;
    if skeleton != b.embedded.base {
        return Err(Error::Precondition(
            "embedded base graph is not the bundle skeleton".into(),
        ));
    }

    let orders = crossing_orders(&b.embedded)?;
    let norms = normalised_crossings(&b.embedded)?;
    for (edge, list) in &orders {
        if !segments.contains(edge) {
            return Err(Error::Precondition(format!(
                "unbundled middle ({:?}, {:?}) is crossed",
                edge.0, edge.1
            )));
        }
        if list.len() as u64 > k {
            return Err(Error::Precondition(format!(
                "bundle segment ({:?}, {:?}) is crossed {} times, above the bound {k}",
                edge.0,
                edge.1,
                list.len()
            )));
        }
    }
    for (i, c) in norms.iter().enumerate() {
        let oa = &owner_bundle(&b.bundles, &c.a).unwrap().origin;
        let ob = &owner_bundle(&b.bundles, &c.b).unwrap().origin;
        if oa == ob {
            return Err(Error::Precondition(format!(
                "crossing {i} joins two bundles anchored at {oa:?}"
            )));
        }
    }

    let (plane, dummies, paths) = planarize(&b.embedded)?;
    let dummy_idx: BTreeMap<&String, usize> = dummies.iter().map(|(i, n)| (n, *i)).collect();
    let host = lex_product(&plane, &edgeless_graph(2))?;

    let mut branch: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut centre: BTreeMap<String, String> = BTreeMap::new();
    for v in b.graph.vertices() {
        branch.insert(v.clone(), BTreeSet::from([product_id(v, "0")]));
        centre.insert(v.clone(), product_id(v, "0"));
    }
    for (id, bundle) in &b.bundles {
        let set = branch.get_mut(&bundle.origin).unwrap();
        set.insert(product_id(id, "0"));
        for w in &paths[&sort_pair(&bundle.origin, id)] {
            if let Some(ci) = dummy_idx.get(w) {
                let c = &norms[*ci];
                let other = if owner_bundle(&b.bundles, &c.a).unwrap().origin == bundle.origin {
                    &owner_bundle(&b.bundles, &c.b).unwrap().origin
                } else {
                    &owner_bundle(&b.bundles, &c.a).unwrap().origin
                };
                // The smaller of the two origins rides row zero.
                let row = if bundle.origin < *other { "0" } else { "1" };
                set.insert(product_id(w, row));
            }
        }
    }

    let model = MinorModel {
        host,
        guest: b.graph.clone(),
        branch,
        centre,
        depth2x: 2 * (k + 1),
        topological: false,
    };
    verify_model(&model, Some(model.declared_radius()))
        .map_err(|e| Error::Construction(format!("bundle model: {e}")))?;
    Ok(model)
}

/// Charges every crossing of a drawing to one of its two edges so that
/// no edge carries more than `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapCharging {
    pub assignment: BTreeMap<usize, (String, String)>,
    pub k: u64,
}

/// Checks a charging against a drawing: every crossing charged once, to
/// an incident edge, with per-edge load at most `k`.
pub fn verify_gap_charging(e: &EmbeddedGraph, gc: &GapCharging) -> Result<()> {
    let norms = normalised_crossings(e)?;
    for i in gc.assignment.keys() {
        if *i >= norms.len() {
            return reject(format!("assignment references crossing {i} beyond the drawing"));
        }
    }
    let mut load: BTreeMap<&(String, String), u64> = BTreeMap::new();
    for (i, c) in norms.iter().enumerate() {
        let Some(target) = gc.assignment.get(&i) else {
            return reject(format!("crossing {i} is uncharged"));
        };
        let target = sort_pair(&target.0, &target.1);
        let edge = if target == c.a {
            &c.a
        } else if target == c.b {
            &c.b
        } else {
            return reject(format!(
                "crossing {i} is charged to ({:?}, {:?}), which it does not involve",
                target.0, target.1
            ));
        };
        *load.entry(edge).or_default() += 1;
    }
    for (edge, count) in load {
        if count > gc.k {
            return reject(format!(
                "edge ({:?}, {:?}) carries {count} charges, above the bound {}",
                edge.0, edge.1, gc.k
            ));
        }
    }
    Ok(())
}

/// Decides exactly whether the crossings of a drawing can be charged
/// with per-edge capacity `k`, by augmenting paths over the bipartite
/// crossing-edge incidence. Infeasibility is an answer, not an error.
/// Crossings are processed in index order and edges in sorted order, so
/// the returned charging is determined by the input.
pub fn gap_charging(e: &EmbeddedGraph, k: u64) -> Result<Option<GapCharging>> {
    let norms = normalised_crossings(e)?;
    let mut charged_to: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    let mut choice: Vec<Option<(String, String)>> = vec![None; norms.len()];

    fn augment(
        i: usize,
        norms: &[NormCrossing],
        k: u64,
        charged_to: &mut BTreeMap<(String, String), Vec<usize>>,
        choice: &mut [Option<(String, String)>],
        blocked: &mut BTreeSet<(String, String)>,
    ) -> bool {
        let (first, second) = if norms[i].a <= norms[i].b {
            (&norms[i].a, &norms[i].b)
        } else {
            (&norms[i].b, &norms[i].a)
        };
        for edge in [first, second] {
            if blocked.contains(edge) {
                continue;
            }
            blocked.insert(edge.clone());
            let used = charged_to.get(edge).map_or(0, |v| v.len() as u64);
            if used < k {
                charged_to.entry(edge.clone()).or_default().push(i);
                choice[i] = Some(edge.clone());
                return true;
            }
            let occupants = charged_to.get(edge).cloned().unwrap_or_default();
            for j in occupants {
                let prev = choice[j].clone().unwrap();
                if augment(j, norms, k, charged_to, choice, blocked) {
                    // j moved to its other edge; take the freed slot.
                    let list = charged_to.get_mut(&prev).unwrap();
                    list.retain(|x| *x != j);
                    charged_to.entry(edge.clone()).or_default().push(i);
                    choice[i] = Some(edge.clone());
                    return true;
                }
            }
        }
        false
    }

    for i in 0..norms.len() {
        let mut blocked = BTreeSet::new();
        if !augment(i, &norms, k, &mut charged_to, &mut choice, &mut blocked) {
            return Ok(None);
        }
    }
    let assignment: BTreeMap<usize, (String, String)> =
        choice.into_iter().enumerate().map(|(i, c)| (i, c.unwrap())).collect();
    let gc = GapCharging { assignment, k };
    verify_gap_charging(e, &gc).map_err(|err| Error::Construction(format!("charging: {err}")))?;
    Ok(Some(gc))
}

fn push_crossing(
    a: &(String, String),
    b: &(String, String),
    to: &(String, String),
    crossings: &mut Vec<Crossing>,
    charges: &mut Vec<(String, String)>,
    next_pos: &mut BTreeMap<(String, String), i64>,
) {
    let pa = next_pos.entry(a.clone()).or_default();
    let pos_a = *pa;
    *pa += 1;
    let pb = next_pos.entry(b.clone()).or_default();
    let pos_b = *pb;
    *pb += 1;
    crossings.push(Crossing { a: a.clone(), b: b.clone(), pos_a, pos_b, side: None });
    charges.push(to.clone());
}

/// The crossing structure a shortcut system forces on a plane base, with
/// the charging from the counting argument: a base edge absorbs the
/// crossings through its own endpoints, a shortcut edge those at shared
/// path vertices. Capacity `(d - 1)(k - 1) + 2d` always suffices.
///
/// The crossing set is conservative: every potential meeting point
/// produces a crossing, which can only overstate the load.
pub fn shortcut_gap_charging(s: &ShortcutSystem) -> Result<(EmbeddedGraph, GapCharging)> {
    validate_shortcut_system(s)?;
    let full = apply_shortcuts(s)?;
    let base_edges: BTreeSet<(String, String)> = s.base.edges().into_iter().collect();

    // One representative path per shortcut edge: shortest, ties by the
    // vertex sequence oriented from the smaller endpoint.
    let mut rep: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for path in &s.paths {
        let mut oriented = path.clone();
        if oriented.first() > oriented.last() {
            oriented.reverse();
        }
        let key = (oriented[0].clone(), oriented[oriented.len() - 1].clone());
        if base_edges.contains(&key) {
            continue;
        }
        match rep.get(&key) {
            Some(old) if (old.len(), old) <= (oriented.len(), &oriented) => {}
            _ => {
                rep.insert(key, oriented);
            }
        }
    }

    let interior = |path: &[String]| path[1..path.len() - 1].to_vec();
    let mut crossings = Vec::new();
    let mut charges: Vec<(String, String)> = Vec::new();
    let mut next_pos: BTreeMap<(String, String), i64> = BTreeMap::new();

    // Base edges are crossed by the shortcut edges threading their
    // endpoints; the base edge takes the charge.
    for be in &base_edges {
        for (se, path) in &rep {
            for w in [&be.0, &be.1] {
                if interior(path).contains(w) {
                    push_crossing(be, se, be, &mut crossings, &mut charges, &mut next_pos);
                }
            }
        }
    }
    // Shortcut edges cross where one path passes through a vertex of the
    // other; the edge whose path merely contains the vertex takes it.
    let keys: Vec<&(String, String)> = rep.keys().collect();
    for (x, e1) in keys.iter().enumerate() {
        for e2 in &keys[x + 1..] {
            let p1 = &rep[*e1];
            let p2 = &rep[*e2];
            let shared: BTreeSet<&String> = p1.iter().filter(|w| p2.contains(*w)).collect();
            for w in shared {
                let in1 = interior(p1).contains(w);
                let in2 = interior(p2).contains(w);
                if in1 {
                    push_crossing(e1, e2, e2, &mut crossings, &mut charges, &mut next_pos);
                } else if in2 {
                    push_crossing(e1, e2, e1, &mut crossings, &mut charges, &mut next_pos);
                }
            }
        }
    }

    let capacity = s.d.saturating_sub(1) * s.k.saturating_sub(1) + 2 * s.d;
    let embedded = EmbeddedGraph { base: full, crossings, simple: false };
    let assignment = charges.into_iter().enumerate().collect();
    let gc = GapCharging { assignment, k: capacity };
    verify_gap_charging(&embedded, &gc)
        .map_err(|e| Error::Construction(format!("shortcut charging: {e}")))?;
    Ok((embedded, gc))
}

/// Assigns to each crossed edge a friend and a split position along it.
/// The friend of an edge is a vertex shared by everything crossing it;
/// the split certifies that crossings before it are assigned the edge's
/// smaller endpoint and crossings after it the larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FriendAssignment {
    pub friend: BTreeMap<(String, String), String>,
    pub split_point: BTreeMap<(String, String), u64>,
}

impl Serialize for FriendAssignment {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let friend: BTreeMap<String, &String> =
            self.friend.iter().map(|((u, v), w)| (product_id(u, v), w)).collect();
        let split: BTreeMap<String, u64> =
            self.split_point.iter().map(|((u, v), t)| (product_id(u, v), *t)).collect();
        let mut s = ser.serialize_struct("FriendAssignment", 2)?;
        s.serialize_field("friend", &friend)?;
        s.serialize_field("splitPoint", &split)?;
        s.end()
    }
}

/// Builds a well-behaved friend assignment for a simple fan-planar
/// drawing. Edges crossed at least twice have their friend forced (the
/// unique vertex common to all crossers); once-crossed edges are pinned
/// while scanning the edges they cross: crossings are taken in order
/// from the smaller endpoint `u`, and the first crosser that also meets
/// another edge at the far endpoint `v` starts the `v` side.
pub fn friend_assignment(e: &EmbeddedGraph) -> Result<FriendAssignment> {
    if !e.simple {
        return Err(Error::Precondition("drawing is not flagged simple".into()));
    }
    let orders = crossing_orders(e)?;
    let norms = normalised_crossings(e)?;

    for (edge, list) in &orders {
        let mut sides = list.iter().filter_map(|&i| {
            if norms[i].a == *edge {
                norms[i].side
            } else {
                None
            }
        });
        if let Some(first) = sides.next() {
            if sides.any(|s| s != first) {
                return Err(Error::Precondition(format!(
                    "edges cross ({:?}, {:?}) from both sides",
                    edge.0, edge.1
                )));
            }
        }
    }

    let mut friend: BTreeMap<(String, String), String> = BTreeMap::new();
    for (edge, list) in &orders {
        if list.len() < 2 {
            continue;
        }
        let mut common: BTreeSet<&String> = {
            let f = crossing_partner(&norms, list[0], edge);
            BTreeSet::from([&f.0, &f.1])
        };
        for &i in &list[1..] {
            let f = crossing_partner(&norms, i, edge);
            common.retain(|w| **w == f.0 || **w == f.1);
        }
        match common.first() {
            Some(w) => {
                friend.insert(edge.clone(), (*w).clone());
            }
            None => {
                return Err(Error::Precondition(format!(
                    "edges crossing ({:?}, {:?}) share no end-vertex",
                    edge.0, edge.1
                )))
            }
        }
    }

    let mut split_point = BTreeMap::new();
    for (edge, list) in &orders {
        let (u, v) = edge;
        // First crosser that also crosses a different edge at v.
        let boundary = list.iter().position(|&i| {
            let f = crossing_partner(&norms, i, edge);
            orders[f].iter().any(|&j| {
                let g = crossing_partner(&norms, j, f);
                g != edge && (g.0 == *v || g.1 == *v)
            })
        });
        let t = boundary.unwrap_or(list.len());
        for (j, &i) in list.iter().enumerate() {
            let f = crossing_partner(&norms, i, edge);
            let want = if j < t { u } else { v };
            match friend.get(f) {
                None => {
                    friend.insert(f.clone(), want.clone());
                }
                Some(have) if have == want => {}
                Some(have) => {
                    return Err(Error::Precondition(format!(
                        "edge ({:?}, {:?}) would need friend {want:?} along ({u:?}, {v:?}) \
                         but is assigned {have:?}",
                        f.0, f.1
                    )))
                }
            }
        }
        split_point.insert(edge.clone(), t as u64);
    }

    let out = FriendAssignment { friend, split_point };
    verify_friend_assignment(e, &out)
        .map_err(|err| Error::Construction(format!("friend assignment: {err}")))?;
    Ok(out)
}

/// Checks that an assignment covers exactly the crossed edges, that each
/// assigned friend is an end-vertex of every crosser, and that each
/// edge's crossings are the smaller endpoint's up to the split and the
/// larger endpoint's after it.
pub fn verify_friend_assignment(e: &EmbeddedGraph, f: &FriendAssignment) -> Result<()> {
    let orders = crossing_orders(e)?;
    let norms = normalised_crossings(e)?;
    for edge in f.friend.keys().chain(f.split_point.keys()) {
        if !orders.contains_key(edge) {
            return reject(format!(
                "assignment lists the uncrossed edge ({:?}, {:?})",
                edge.0, edge.1
            ));
        }
    }
    for (edge, list) in &orders {
        let Some(w) = f.friend.get(edge) else {
            return reject(format!("crossed edge ({:?}, {:?}) has no friend", edge.0, edge.1));
        };
        for &i in list {
            let g = crossing_partner(&norms, i, edge);
            if g.0 != *w && g.1 != *w {
                return reject(format!(
                    "friend {w:?} of ({:?}, {:?}) is not an end-vertex of the crossing edge \
                     ({:?}, {:?})",
                    edge.0, edge.1, g.0, g.1
                ));
            }
        }
        let Some(&t) = f.split_point.get(edge) else {
            return reject(format!("crossed edge ({:?}, {:?}) has no split", edge.0, edge.1));
        };
        if t as usize > list.len() {
            return reject(format!(
                "split {t} of ({:?}, {:?}) lies beyond its {} crossings",
                edge.0,
                edge.1,
                list.len()
            ));
        }
        for (j, &i) in list.iter().enumerate() {
            let g = crossing_partner(&norms, i, edge);
            let want = if j < t as usize { &edge.0 } else { &edge.1 };
            let Some(have) = f.friend.get(g) else {
                return reject(format!("crossed edge ({:?}, {:?}) has no friend", g.0, g.1));
            };
            if have != want {
                return reject(format!(
                    "crossing {j} of ({:?}, {:?}) is assigned {have:?} rather than {want:?}",
                    edge.0, edge.1
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::path_graph;

    fn cross(a: (&str, &str), b: (&str, &str), pos_a: i64, pos_b: i64) -> Crossing {
        Crossing {
            a: (a.0.to_string(), a.1.to_string()),
            b: (b.0.to_string(), b.1.to_string()),
            pos_a,
            pos_b,
            side: Some(1),
        }
    }

    fn matching(n: usize) -> Graph {
        let verts: Vec<String> = (0..2 * n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            (0..n).map(|i| ((2 * i).to_string(), (2 * i + 1).to_string())).collect();
        Graph::new(verts, edges).unwrap()
    }

    #[test]
    fn planarize_without_crossings_is_the_identity() {
        let g = path_graph(4);
        let e = EmbeddedGraph { base: g.clone(), crossings: vec![], simple: true };
        let (plane, dummies, paths) = planarize(&e).unwrap();
        assert_eq!(plane, g);
        assert!(dummies.is_empty());
        assert!(paths.values().all(|p| p.len() == 2));
    }

    #[test]
    fn one_crossing_gives_a_degree_four_dummy() {
        let g = matching(2);
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![cross(("0", "1"), ("2", "3"), 0, 0)],
            simple: true,
        };
        let (plane, dummies, paths) = planarize(&e).unwrap();
        assert_eq!(plane.vertex_count(), 5);
        assert_eq!(plane.degree_idx(plane.idx("x0").unwrap()), 4);
        assert_eq!(dummies[&0], "x0");
        assert_eq!(paths[&("0".into(), "1".into())], ["0", "x0", "1"]);
        let total: usize = paths.values().map(|p| p.len() - 1).sum();
        assert_eq!(total, plane.edge_count());
    }

    fn k5_drawing() -> EmbeddedGraph {
        EmbeddedGraph {
            base: complete_graph(5),
            crossings: vec![cross(("0", "2"), ("1", "3"), 0, 0)],
            simple: true,
        }
    }

    #[test]
    fn planarized_k5_has_one_extra_vertex_and_short_paths() {
        let (plane, _, paths) = planarize(&k5_drawing()).unwrap();
        assert_eq!(plane.vertex_count(), 6);
        assert!(paths.values().all(|p| p.len() <= 3));
    }

    #[test]
    fn crossing_positions_must_be_distinct_per_edge() {
        let g = matching(3);
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![
                cross(("0", "1"), ("2", "3"), 0, 0),
                cross(("0", "1"), ("4", "5"), 0, 0),
            ],
            simple: true,
        };
        let err = planarize(&e).unwrap_err();
        assert!(matches!(err, Error::Input(_)), "{err}");
        assert!(err.to_string().contains("position"), "{err}");
    }

    #[test]
    fn reversed_edge_orientation_reverses_positions() {
        let g = matching(3);
        // Walking from 1 towards 0 meets the second crossing first, so
        // seen from the endpoint 0 the first crossing leads.
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![
                cross(("1", "0"), ("2", "3"), 0, 0),
                cross(("1", "0"), ("4", "5"), -1, 0),
            ],
            simple: true,
        };
        let orders = crossing_orders(&e).unwrap();
        assert_eq!(orders[&("0".to_string(), "1".to_string())], [0, 1]);
    }

    #[test]
    fn simple_flag_rejects_adjacent_crossings() {
        let g = path_graph(3);
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![cross(("0", "1"), ("1", "2"), 0, 0)],
            simple: true,
        };
        assert!(crossing_orders(&e).is_err());
    }

    #[test]
    fn plane_kplanar_model_is_the_identity_in_row_zero() {
        let g = path_graph(3);
        let e = EmbeddedGraph { base: g.clone(), crossings: vec![], simple: true };
        let m = kplanar_model(&e, 0).unwrap();
        assert_eq!(m.depth2x, 0);
        for v in g.vertices() {
            assert_eq!(m.centre[v], format!("{v}|0"));
            assert_eq!(m.branch[v].len(), 1);
        }
    }

    #[test]
    fn one_planar_k5_model_verifies() {
        let m = kplanar_model(&k5_drawing(), 1).unwrap();
        assert_eq!(m.depth2x, 1);
        assert!(m.topological);
        assert_eq!(m.host.vertex_count(), 12);
        assert_eq!(verify_model(&m, Some(1)).unwrap(), 1);
    }

    #[test]
    fn kplanar_bound_names_the_heavy_edge() {
        let g = matching(3);
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![
                cross(("0", "1"), ("2", "3"), 0, 0),
                cross(("0", "1"), ("4", "5"), 1, 0),
            ],
            simple: true,
        };
        let err = kplanar_model(&e, 1).unwrap_err();
        assert!(err.to_string().contains("\"0\", \"1\""), "{err}");
        let m = kplanar_model(&e, 2).unwrap();
        // The edge carrying both dummies rides row zero through them;
        // the edges it crosses take row one.
        assert!(m.branch["0"].contains("x0|0"));
        assert!(m.branch["1"].contains("x1|0"));
        assert!(m.branch["2"].contains("x0|1"));
        assert!(m.branch["4"].contains("x1|1"));
    }

    fn curves(of: &[(&str, &[&str])]) -> CurveArrangement {
        CurveArrangement {
            curves: of
                .iter()
                .map(|(c, evs)| (c.to_string(), evs.iter().map(|e| e.to_string()).collect()))
                .collect(),
        }
    }

    #[test]
    fn two_curves_crossing_once_model_k2_at_depth_zero() {
        let m = string_model(&curves(&[("u", &["p"]), ("v", &["p"])]), None).unwrap();
        assert_eq!(m.depth2x, 0);
        assert_eq!(m.guest, Graph::new(["u", "v"], [("u", "v")]).unwrap());
        assert_eq!(m.branch["u"], BTreeSet::from(["p|0".to_string()]));
        assert_eq!(m.branch["v"], BTreeSet::from(["cv|0".to_string()]));
    }

    #[test]
    fn three_pairwise_curves_model_a_triangle() {
        let m = string_model(
            &curves(&[("u", &["p", "q"]), ("v", &["p", "r"]), ("w", &["q", "r"])]),
            None,
        )
        .unwrap();
        assert_eq!(m.depth2x, 2);
        assert_eq!(m.guest.edge_count(), 3);
        assert_eq!(m.branch["u"], BTreeSet::from(["p|0".to_string(), "q|0".to_string()]));
        assert_eq!(m.branch["v"], BTreeSet::from(["p|1".to_string(), "r|0".to_string()]));
        assert_eq!(m.branch["w"], BTreeSet::from(["q|1".to_string(), "r|1".to_string()]));
        assert_eq!(m.centre["u"], "p|0");
    }

    #[test]
    fn disjoint_curves_give_an_edgeless_guest() {
        let m = string_model(&curves(&[("u", &[]), ("v", &[])]), None).unwrap();
        assert_eq!(m.guest.edge_count(), 0);
        assert_eq!(m.branch["u"].iter().next().unwrap(), "cu|0");
    }

    #[test]
    fn events_on_three_curves_are_rejected() {
        let err =
            string_model(&curves(&[("u", &["p"]), ("v", &["p"]), ("w", &["p"])]), None).unwrap_err();
        assert!(err.to_string().contains("three"), "{err}");
    }

    #[test]
    fn declared_delta_bounds_the_curves() {
        let arr = curves(&[("u", &["p", "q"]), ("v", &["p", "r"]), ("w", &["q", "r"])]);
        assert!(string_model(&arr, Some(1)).is_err());
        let m = string_model(&arr, Some(4)).unwrap();
        assert_eq!(m.depth2x, 4);
    }

    fn two_cell_cluster() -> ClusterStructure {
        let g = Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d"), ("b", "c")]).unwrap();
        ClusterStructure {
            g,
            clusters: [("L", ["a", "b"]), ("R", ["c", "d"])]
                .into_iter()
                .map(|(id, vs)| (id.to_string(), vs.into_iter().map(String::from).collect()))
                .collect(),
            cluster_adjacency: Graph::new(["L", "R"], [("L", "R")]).unwrap(),
        }
    }

    #[test]
    fn two_clusters_embed_into_k2_by_k2() {
        let c = two_cell_cluster();
        let w = cluster_embed(&c, 2).unwrap();
        assert_eq!(w.host.vertex_count(), 4);
        assert_eq!(w.injection["a"], "L|0");
        assert_eq!(w.injection["d"], "R|1");
        verify_embedding(&c.g, &w).unwrap();
    }

    #[test]
    fn singleton_clusters_embed_with_k_one() {
        let g = path_graph(3);
        let clusters = g
            .vertices()
            .iter()
            .map(|v| (format!("C{v}"), BTreeSet::from([v.clone()])))
            .collect();
        let adjacency = Graph::new(["C0", "C1", "C2"], [("C0", "C1"), ("C1", "C2")]).unwrap();
        let c = ClusterStructure { g, clusters, cluster_adjacency: adjacency };
        let w = cluster_embed(&c, 1).unwrap();
        assert_eq!(w.injection["1"], "C1|0");
    }

    #[test]
    fn cluster_violations_are_named() {
        let mut c = two_cell_cluster();
        let err = cluster_embed(&c, 1).unwrap_err();
        assert!(err.to_string().contains("above the bound 1"), "{err}");
        c.cluster_adjacency = Graph::new(["L", "R"], Vec::<(String, String)>::new()).unwrap();
        let err = cluster_embed(&c, 2).unwrap_err();
        assert!(err.to_string().contains("non-adjacent"), "{err}");
    }

    fn star_bundle() -> BundleStructure {
        let graph = Graph::new(["c", "l0", "l1"], [("c", "l0"), ("c", "l1")]).unwrap();
        let bundles: BTreeMap<String, Bundle> = [
            ("B", "c", vec![("c", "l0"), ("c", "l1")]),
            ("B0", "l0", vec![("c", "l0")]),
            ("B1", "l1", vec![("c", "l1")]),
        ]
        .into_iter()
        .map(|(id, origin, edges)| {
            (
                id.to_string(),
                Bundle {
                    origin: origin.to_string(),
                    edges: edges
                        .into_iter()
                        .map(|(u, v)| (u.to_string(), v.to_string()))
                        .collect(),
                },
            )
        })
        .collect();
        let skeleton = Graph::new(
            ["c", "l0", "l1", "B", "B0", "B1"],
            [("c", "B"), ("l0", "B0"), ("l1", "B1"), ("B", "B0"), ("B", "B1")],
        )
        .unwrap();
        BundleStructure {
            graph,
            bundles,
            embedded: EmbeddedGraph { base: skeleton, crossings: vec![], simple: true },
        }
    }

    #[test]
    fn uncrossed_star_bundle_models_at_depth_one() {
        let m = fanbundle_model(&star_bundle(), 0).unwrap();
        assert_eq!(m.depth2x, 2);
        assert_eq!(m.branch["c"], BTreeSet::from(["c|0".to_string(), "B|0".to_string()]));
        assert_eq!(verify_model(&m, Some(1)).unwrap(), 1);
    }

    fn crossing_bundles() -> BundleStructure {
        let graph = matching(2);
        let bundles: BTreeMap<String, Bundle> = [
            ("p", "0", ("0", "1")),
            ("q", "1", ("0", "1")),
            ("r", "2", ("2", "3")),
            ("s", "3", ("2", "3")),
        ]
        .into_iter()
        .map(|(id, origin, (u, v))| {
            (
                id.to_string(),
                Bundle { origin: origin.to_string(), edges: vec![(u.to_string(), v.to_string())] },
            )
        })
        .collect();
        let skeleton = Graph::new(
            ["0", "1", "2", "3", "p", "q", "r", "s"],
            [("0", "p"), ("1", "q"), ("2", "r"), ("3", "s"), ("p", "q"), ("r", "s")],
        )
        .unwrap();
        BundleStructure {
            graph,
            bundles,
            embedded: EmbeddedGraph {
                base: skeleton,
                crossings: vec![cross(("0", "p"), ("2", "r"), 0, 0)],
                simple: true,
            },
        }
    }

    #[test]
    fn crossing_bundles_take_distinct_rows() {
        let m = fanbundle_model(&crossing_bundles(), 1).unwrap();
        assert_eq!(m.depth2x, 4);
        assert!(m.branch["0"].contains("x0|0"));
        assert!(m.branch["2"].contains("x0|1"));
        assert!(m.guest.has_edge("0", "1"));
    }

    #[test]
    fn bundle_violations_are_rejected() {
        let b = crossing_bundles();
        let err = fanbundle_model(&b, 0).unwrap_err();
        assert!(err.to_string().contains("crossed 1 times"), "{err}");

        let mut crossed_middle = star_bundle();
        crossed_middle.embedded.crossings.push(cross(("B", "B0"), ("l1", "B1"), 0, 0));
        let err = fanbundle_model(&crossed_middle, 3).unwrap_err();
        assert!(err.to_string().contains("middle"), "{err}");
    }

    #[test]
    fn same_origin_crossings_are_rejected() {
        let graph = Graph::new(["0", "1", "2"], [("0", "1"), ("0", "2")]).unwrap();
        let bundles: BTreeMap<String, Bundle> = [
            ("p", "0", ("0", "1")),
            ("q", "0", ("0", "2")),
            ("r", "1", ("0", "1")),
            ("s", "2", ("0", "2")),
        ]
        .into_iter()
        .map(|(id, origin, (u, v))| {
            (
                id.to_string(),
                Bundle { origin: origin.to_string(), edges: vec![(u.to_string(), v.to_string())] },
            )
        })
        .collect();
        let skeleton = Graph::new(
            ["0", "1", "2", "p", "q", "r", "s"],
            [("0", "p"), ("0", "q"), ("1", "r"), ("2", "s"), ("p", "r"), ("q", "s")],
        )
        .unwrap();
        let b = BundleStructure {
            graph,
            bundles,
            embedded: EmbeddedGraph {
                base: skeleton,
                crossings: vec![cross(("0", "p"), ("0", "q"), 0, 0)],
                simple: false,
            },
        };
        let err = fanbundle_model(&b, 1).unwrap_err();
        assert!(err.to_string().contains("anchored at"), "{err}");
    }

    fn pairwise_crossing(n: usize) -> EmbeddedGraph {
        let g = matching(n);
        let edges: Vec<(String, String)> = g.edges();
        let mut crossings = Vec::new();
        let mut pos: BTreeMap<usize, i64> = BTreeMap::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                let pa = pos.entry(i).or_default();
                let pos_a = *pa;
                *pa += 1;
                let pb = pos.entry(j).or_default();
                let pos_b = *pb;
                *pb += 1;
                crossings.push(Crossing {
                    a: edges[i].clone(),
                    b: edges[j].clone(),
                    pos_a,
                    pos_b,
                    side: None,
                });
            }
        }
        EmbeddedGraph { base: g, crossings, simple: false }
    }

    #[test]
    fn single_crossing_is_chargeable() {
        let e = pairwise_crossing(2);
        let gc = gap_charging(&e, 1).unwrap().unwrap();
        verify_gap_charging(&e, &gc).unwrap();
        assert!(gap_charging(&e, 0).unwrap().is_none());
    }

    #[test]
    fn three_pairwise_crossings_charge_cyclically() {
        let e = pairwise_crossing(3);
        assert_eq!(e.crossings.len(), 3);
        let gc = gap_charging(&e, 1).unwrap().unwrap();
        verify_gap_charging(&e, &gc).unwrap();
        let loads: BTreeSet<&(String, String)> = gc.assignment.values().collect();
        assert_eq!(loads.len(), 3);
    }

    #[test]
    fn six_crossings_on_four_edges_are_infeasible() {
        let e = pairwise_crossing(4);
        assert_eq!(e.crossings.len(), 6);
        assert!(gap_charging(&e, 1).unwrap().is_none());
        assert!(gap_charging(&e, 2).unwrap().is_some());
    }

    #[test]
    fn flow_agrees_with_exhaustive_search() {
        for n in 2..=4 {
            let e = pairwise_crossing(n);
            for k in 1..=2u64 {
                let flow = gap_charging(&e, k).unwrap().is_some();
                let c = e.crossings.len();
                let brute = (0..1u32 << c).any(|mask| {
                    let mut load: BTreeMap<&(String, String), u64> = BTreeMap::new();
                    for (i, cr) in e.crossings.iter().enumerate() {
                        let edge = if mask >> i & 1 == 0 { &cr.a } else { &cr.b };
                        *load.entry(edge).or_default() += 1;
                    }
                    load.values().all(|&l| l <= k)
                });
                assert_eq!(flow, brute, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn bad_chargings_are_rejected() {
        let e = pairwise_crossing(2);
        let gc = GapCharging { assignment: BTreeMap::new(), k: 1 };
        assert!(verify_gap_charging(&e, &gc).unwrap_err().to_string().contains("uncharged"));
        let gc = GapCharging {
            assignment: [
                (0usize, ("0".to_string(), "1".to_string())),
                (1, ("4".to_string(), "5".to_string())),
            ]
            .into_iter()
            .collect(),
            k: 1,
        };
        assert!(verify_gap_charging(&e, &gc).is_err());
    }

    #[test]
    fn shortcut_charging_on_a_path() {
        let s = ShortcutSystem {
            base: path_graph(5),
            paths: vec![
                ["0", "1", "2"].map(String::from).to_vec(),
                ["2", "3", "4"].map(String::from).to_vec(),
            ],
            k: 2,
            d: 2,
        };
        let (e, gc) = shortcut_gap_charging(&s).unwrap();
        assert_eq!(gc.k, 5);
        assert_eq!(e.crossings.len(), 4);
        let base: BTreeSet<(String, String)> = s.base.edges().into_iter().collect();
        assert!(gc.assignment.values().all(|edge| base.contains(edge)));
        verify_gap_charging(&e, &gc).unwrap();
    }

    #[test]
    fn unit_shortcuts_charge_nothing() {
        let s = ShortcutSystem {
            base: path_graph(3),
            paths: vec![["0", "1"].map(String::from).to_vec()],
            k: 1,
            d: 3,
        };
        let (e, gc) = shortcut_gap_charging(&s).unwrap();
        assert!(e.crossings.is_empty());
        assert!(gc.assignment.is_empty());
        assert_eq!(gc.k, 6);
    }

    fn fan_k132() -> EmbeddedGraph {
        let base = Graph::new(
            ["a", "b1", "b2", "b3", "c1", "c2"],
            [
                ("a", "b1"),
                ("a", "b2"),
                ("a", "b3"),
                ("a", "c1"),
                ("a", "c2"),
                ("b1", "c1"),
                ("b1", "c2"),
                ("b2", "c1"),
                ("b2", "c2"),
                ("b3", "c1"),
                ("b3", "c2"),
            ],
        )
        .unwrap();
        let crossings = vec![
            cross(("a", "b1"), ("b3", "c2"), 0, 0),
            cross(("a", "b1"), ("b3", "c1"), 1, 0),
            cross(("b3", "c1"), ("b1", "c2"), 1, 0),
            cross(("a", "c1"), ("b2", "c2"), 0, 0),
        ];
        EmbeddedGraph { base, crossings, simple: true }
    }

    #[test]
    fn tripartite_fan_drawing_gets_a_well_behaved_assignment() {
        let e = fan_k132();
        let f = friend_assignment(&e).unwrap();
        let key = |u: &str, v: &str| (u.to_string(), v.to_string());
        assert_eq!(f.friend[&key("a", "b1")], "b3");
        assert_eq!(f.friend[&key("b3", "c1")], "b1");
        assert_eq!(f.friend[&key("b3", "c2")], "a");
        assert_eq!(f.friend[&key("b1", "c2")], "b3");
        assert_eq!(f.friend[&key("b2", "c2")], "a");
        assert_eq!(f.friend[&key("a", "c1")], "b2");
        assert_eq!(f.split_point[&key("a", "b1")], 1);
        assert_eq!(f.split_point[&key("b3", "c1")], 2);
        verify_friend_assignment(&e, &f).unwrap();
    }

    #[test]
    fn single_crossing_assigns_opposite_endpoints() {
        let mut e = pairwise_crossing(2);
        e.simple = true;
        let f = friend_assignment(&e).unwrap();
        assert_eq!(f.friend[&("0".to_string(), "1".to_string())], "2");
        assert_eq!(f.friend[&("2".to_string(), "3".to_string())], "0");
    }

    #[test]
    fn fanless_crossings_are_rejected() {
        let g = matching(3);
        let e = EmbeddedGraph {
            base: g,
            crossings: vec![
                cross(("0", "1"), ("2", "3"), 0, 0),
                cross(("0", "1"), ("4", "5"), 1, 0),
            ],
            simple: true,
        };
        let err = friend_assignment(&e).unwrap_err();
        assert!(err.to_string().contains("share no end-vertex"), "{err}");
    }

    #[test]
    fn side_conflicts_and_nonsimple_drawings_are_rejected() {
        let g = matching(3);
        let mut c1 = cross(("0", "1"), ("2", "3"), 0, 0);
        let mut c2 = cross(("0", "1"), ("4", "5"), 1, 0);
        c1.side = Some(1);
        c2.side = Some(-1);
        let e = EmbeddedGraph { base: g, crossings: vec![c1, c2], simple: true };
        let err = friend_assignment(&e).unwrap_err();
        assert!(err.to_string().contains("both sides"), "{err}");

        let err = friend_assignment(&pairwise_crossing(2)).unwrap_err();
        assert!(err.to_string().contains("simple"), "{err}");
    }

    #[test]
    fn tampered_assignment_is_rejected_with_the_crossing() {
        let e = fan_k132();
        let mut f = friend_assignment(&e).unwrap();
        f.friend.insert(("b3".to_string(), "c2".to_string()), "b1".to_string());
        let err = verify_friend_assignment(&e, &f).unwrap_err();
        assert!(matches!(err, Error::Reject(_)), "{err}");
    }

    #[test]
    fn drawing_json_round_trips() {
        let e = k5_drawing();
        let json = serde_json::to_value(&e).unwrap();
        assert!(json.get("graph").is_some());
        assert_eq!(json["crossings"][0]["posA"], 0);
        let back: EmbeddedGraph = serde_json::from_value(json).unwrap();
        assert_eq!(back, e);
    }
}
