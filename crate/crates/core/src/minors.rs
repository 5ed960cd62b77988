//! Minor models with bounded-radius branch sets, plus the constructions
//! that produce them: shortcut systems, clique lifts, graph powers and
//! explicit subdivisions.
//!
//! Depths are stored doubled (`depth2x`) so the half-integral depths of
//! topological models stay in integer arithmetic.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{ball_idx, graph_power, graph_power_or_edgeless};
use crate::products::{edgeless_graph, lex_product, product_id};
use crate::{input_err, reject, Error, Graph, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MinorModel {
    pub host: Graph,
    pub guest: Graph,
    pub branch: BTreeMap<String, BTreeSet<String>>,
    pub centre: BTreeMap<String, String>,
    /// Twice the declared depth. Topological models built from odd-length
    /// paths have half-integral depth, so the doubled value is what is
    /// stored.
    pub depth2x: u64,
    pub topological: bool,
}

impl MinorModel {
    /// The radius bound implied by `depth2x`, rounded up to an integer.
    pub fn declared_radius(&self) -> u64 {
        self.depth2x.div_ceil(2)
    }
}

/// The identity model of `g` in itself: singleton branch sets, depth 0.
pub fn identity_model(g: &Graph) -> MinorModel {
    MinorModel {
        host: g.clone(),
        guest: g.clone(),
        branch: g
            .vertices()
            .iter()
            .map(|v| (v.clone(), BTreeSet::from([v.clone()])))
            .collect(),
        centre: g.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
        depth2x: 0,
        topological: false,
    }
}

/// Eccentricity of `centre` within the subgraph induced by `set`, or `None`
/// when that subgraph is disconnected.
fn induced_eccentricity(host: &Graph, set: &BTreeSet<usize>, centre: usize) -> Option<u64> {
    let mut dist: BTreeMap<usize, u64> = BTreeMap::from([(centre, 0)]);
    let mut queue = std::collections::VecDeque::from([centre]);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        ecc = ecc.max(du);
        for w in host.neighbors_idx(u) {
            if set.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w, du + 1);
                queue.push_back(w);
            }
        }
    }
    (dist.len() == set.len()).then_some(ecc)
}

/// Checks every model invariant and returns the largest branch radius
/// (eccentricity of the centre inside its branch set). When `r` is given,
/// every branch radius must stay within it. Rejections name the first
/// violated clause together with a witness.
pub fn verify_model(m: &MinorModel, r: Option<u64>) -> Result<u64> {
    for v in m.branch.keys() {
        if !m.guest.has_vertex(v) {
            return reject(format!("branch set listed for unknown guest vertex {v:?}"));
        }
    }
    for v in m.centre.keys() {
        if !m.guest.has_vertex(v) {
            return reject(format!("centre listed for unknown guest vertex {v:?}"));
        }
    }
    let mut owner: BTreeMap<usize, &String> = BTreeMap::new();
    let mut branch_idx: BTreeMap<&String, BTreeSet<usize>> = BTreeMap::new();
    for v in m.guest.vertices() {
        let Some(set) = m.branch.get(v) else {
            return reject(format!("no branch set for guest vertex {v:?}"));
        };
        if set.is_empty() {
            return reject(format!("branch set of {v:?} is empty"));
        }
        let mut idxs = BTreeSet::new();
        for x in set {
            let Some(i) = m.host.idx(x) else {
                return reject(format!("branch set of {v:?} contains unknown host vertex {x:?}"));
            };
            if let Some(other) = owner.insert(i, v) {
                return reject(format!(
                    "disjointness fails: host vertex {x:?} lies in the branch sets of {other:?} and {v:?}"
                ));
            }
            idxs.insert(i);
        }
        branch_idx.insert(v, idxs);
    }
    let mut max_radius = 0u64;
    for v in m.guest.vertices() {
        let Some(c) = m.centre.get(v) else {
            return reject(format!("no centre for guest vertex {v:?}"));
        };
        let Some(ci) = m.host.idx(c) else {
            return reject(format!("centre of {v:?} is the unknown host vertex {c:?}"));
        };
        let set = &branch_idx[v];
        if !set.contains(&ci) {
            return reject(format!("centre {c:?} of {v:?} lies outside its branch set"));
        }
        let Some(ecc) = induced_eccentricity(&m.host, set, ci) else {
            return reject(format!("branch set of {v:?} does not induce a connected subgraph"));
        };
        if let Some(bound) = r {
            if ecc > bound {
                return reject(format!(
                    "branch set of {v:?} has radius {ecc}, above the bound {bound}"
                ));
            }
        }
        max_radius = max_radius.max(ecc);
    }
    for (u, v) in m.guest.edges() {
        let bu = &branch_idx[&u];
        let adjacent = bu.iter().any(|&i| {
            m.host
                .neighbors_idx(i)
                .any(|w| branch_idx[&v].contains(&w))
        });
        if !adjacent {
            return reject(format!(
                "no host edge joins the branch sets of guest edge ({u:?}, {v:?})"
            ));
        }
    }
    Ok(max_radius)
}

/// Builds a topological model from vertex images plus one internally
/// disjoint host path per guest edge, splitting each path's interior at its
/// midpoint (the smaller guest endpoint takes the extra vertex on odd
/// interiors). Shared by the subdivision, shortcut and planarisation
/// constructions.
pub(crate) fn model_from_paths(
    guest: &Graph,
    host: &Graph,
    injection: &BTreeMap<String, String>,
    paths: &BTreeMap<(String, String), Vec<String>>,
    depth2x: u64,
) -> Result<MinorModel> {
    let mut images: BTreeMap<&String, &String> = BTreeMap::new();
    for v in guest.vertices() {
        let Some(img) = injection.get(v) else {
            return Err(Error::Precondition(format!("no host image for guest vertex {v:?}")));
        };
        host.idx_of(img)?;
        if let Some(other) = images.insert(img, v) {
            return Err(Error::Precondition(format!(
                "guest vertices {other:?} and {v:?} share the host image {img:?}"
            )));
        }
    }
    for v in injection.keys() {
        if !guest.has_vertex(v) {
            return Err(Error::Precondition(format!("image listed for unknown guest vertex {v:?}")));
        }
    }
    let guest_edges: BTreeSet<(String, String)> = guest.edges().into_iter().collect();
    let path_keys: BTreeSet<(String, String)> = paths.keys().cloned().collect();
    if let Some((u, v)) = guest_edges.difference(&path_keys).next() {
        return Err(Error::Precondition(format!("no path for guest edge ({u:?}, {v:?})")));
    }
    if let Some((u, v)) = path_keys.difference(&guest_edges).next() {
        return Err(Error::Precondition(format!(
            "path supplied for non-edge ({u:?}, {v:?})"
        )));
    }

    let mut branch: BTreeMap<String, BTreeSet<String>> = injection
        .iter()
        .map(|(v, img)| (v.clone(), BTreeSet::from([img.clone()])))
        .collect();
    let mut interior_owner: BTreeMap<&String, &(String, String)> = BTreeMap::new();
    for (key, path) in paths {
        let (u, v) = key;
        if path.len() < 2 {
            return Err(Error::Precondition(format!(
                "path for ({u:?}, {v:?}) has fewer than two vertices"
            )));
        }
        if path[0] != injection[u] || path[path.len() - 1] != injection[v] {
            return Err(Error::Precondition(format!(
                "path for ({u:?}, {v:?}) does not run between the endpoint images"
            )));
        }
        let distinct: BTreeSet<&String> = path.iter().collect();
        if distinct.len() != path.len() {
            return Err(Error::Precondition(format!(
                "path for ({u:?}, {v:?}) repeats a vertex"
            )));
        }
        for pair in path.windows(2) {
            if !host.has_edge(&pair[0], &pair[1]) {
                return Err(Error::Precondition(format!(
                    "path for ({u:?}, {v:?}) uses the non-edge ({:?}, {:?})",
                    pair[0], pair[1]
                )));
            }
        }
        let interior = &path[1..path.len() - 1];
        for x in interior {
            if images.contains_key(x) {
                return Err(Error::Precondition(format!(
                    "path for ({u:?}, {v:?}) passes through the vertex image {x:?}"
                )));
            }
            if let Some(other) = interior_owner.insert(x, key) {
                return Err(Error::Precondition(format!(
                    "paths for {other:?} and {key:?} share the internal vertex {x:?}"
                )));
            }
        }
        // Interior split: first half to the smaller endpoint.
        let to_u = interior.len().div_ceil(2);
        let bu = branch.get_mut(u).unwrap();
        for x in &interior[..to_u] {
            bu.insert(x.clone());
        }
        let bv = branch.get_mut(v).unwrap();
        for x in &interior[to_u..] {
            bv.insert(x.clone());
        }
    }

    let model = MinorModel {
        host: host.clone(),
        guest: guest.clone(),
        branch,
        centre: injection.clone(),
        depth2x,
        topological: true,
    };
    verify_model(&model, Some(model.declared_radius()))
        .map_err(|e| Error::Construction(format!("path model: {e}")))?;
    Ok(model)
}

/// Topological model of `guest` in `host` from one host path per guest
/// edge. The vertex injection is read off the path endpoints, so every
/// guest vertex must be incident to at least one edge.
pub fn subdivision_model(
    guest: &Graph,
    host: &Graph,
    paths: &BTreeMap<(String, String), Vec<String>>,
) -> Result<MinorModel> {
    let mut injection: BTreeMap<String, String> = BTreeMap::new();
    let mut place = |v: &String, img: &String| -> Result<()> {
        match injection.get(v) {
            None => {
                injection.insert(v.clone(), img.clone());
                Ok(())
            }
            Some(prev) if prev == img => Ok(()),
            Some(prev) => Err(Error::Precondition(format!(
                "guest vertex {v:?} would map to both {prev:?} and {img:?}"
            ))),
        }
    };
    let mut maxlen = 1u64;
    for ((u, v), path) in paths {
        if path.len() < 2 {
            return Err(Error::Precondition(format!(
                "path for ({u:?}, {v:?}) has fewer than two vertices"
            )));
        }
        place(u, &path[0])?;
        place(v, &path[path.len() - 1])?;
        maxlen = maxlen.max(path.len() as u64 - 1);
    }
    for v in guest.vertices() {
        if !injection.contains_key(v) {
            return Err(Error::Precondition(format!(
                "guest vertex {v:?} has no incident path, so its host image cannot be derived"
            )));
        }
    }
    model_from_paths(guest, host, &injection, paths, maxlen - 1)
}

/// A collection of paths in `base`, each of length at most `k`, with every
/// vertex internal to at most `d` of them.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ShortcutSystem {
    pub base: Graph,
    pub paths: Vec<Vec<String>>,
    pub k: u64,
    pub d: u64,
}

fn check_base_path(base: &Graph, path: &[String], i: usize, k: u64) -> Result<()> {
    if path.len() < 2 {
        return Err(Error::Precondition(format!("path {i} has fewer than two vertices")));
    }
    if path.len() as u64 - 1 > k {
        return Err(Error::Precondition(format!(
            "path {i} has length {}, above the bound {k}",
            path.len() - 1
        )));
    }
    let distinct: BTreeSet<&String> = path.iter().collect();
    if distinct.len() != path.len() {
        return Err(Error::Precondition(format!("path {i} repeats a vertex")));
    }
    for pair in path.windows(2) {
        if !base.has_edge(&pair[0], &pair[1]) {
            return Err(Error::Precondition(format!(
                "path {i} uses the non-edge ({:?}, {:?})",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

/// Checks the `(k, d)` invariants: path lengths at most `k`, every vertex
/// internal to at most `d` paths.
pub fn validate_shortcut_system(s: &ShortcutSystem) -> Result<()> {
    let mut load: BTreeMap<&String, u64> = BTreeMap::new();
    for (i, path) in s.paths.iter().enumerate() {
        check_base_path(&s.base, path, i, s.k)?;
        for x in &path[1..path.len() - 1] {
            let entry = load.entry(x).or_default();
            *entry += 1;
            if *entry > s.d {
                return Err(Error::Precondition(format!(
                    "vertex {x:?} is internal to more than {} paths",
                    s.d
                )));
            }
        }
    }
    Ok(())
}

/// The starred variant: instead of counting paths through a vertex, count
/// its distinct shortcut partners (endpoints of paths it is internal to).
pub fn validate_shortcut_system_star(s: &ShortcutSystem) -> Result<()> {
    let mut partners: BTreeMap<&String, BTreeSet<&String>> = BTreeMap::new();
    for (i, path) in s.paths.iter().enumerate() {
        check_base_path(&s.base, path, i, s.k)?;
        for x in &path[1..path.len() - 1] {
            let entry = partners.entry(x).or_default();
            entry.insert(&path[0]);
            entry.insert(&path[path.len() - 1]);
            if entry.len() as u64 > s.d {
                return Err(Error::Precondition(format!(
                    "vertex {x:?} has more than {} shortcut partners",
                    s.d
                )));
            }
        }
    }
    Ok(())
}

/// The supergraph obtained by adding an edge between the endpoints of every
/// path in the system.
pub fn apply_shortcuts(s: &ShortcutSystem) -> Result<Graph> {
    validate_shortcut_system(s)?;
    let mut edges = s.base.edges();
    for path in &s.paths {
        edges.push((path[0].clone(), path[path.len() - 1].clone()));
    }
    Graph::new(s.base.vertices().to_vec(), edges)
}

/// Realises the shortcut supergraph as a topological model inside
/// `base ∘ edgeless(d+1)`: endpoints stay on row 0, internal vertices are
/// lifted to the rows 1..=d, one row per path through them.
///
/// Base edges ride along implicitly as unit paths; when several paths share
/// an endpoint pair the shortest (then lexicographically least) one defines
/// the subdivision path.
pub fn shortcut_to_model(s: &ShortcutSystem) -> Result<MinorModel> {
    validate_shortcut_system(s)?;
    let guest = apply_shortcuts(s)?;
    let host = lex_product(&s.base, &edgeless_graph(s.d as usize + 1))?;

    let mut candidates: BTreeMap<(String, String), Vec<Vec<String>>> = BTreeMap::new();
    for path in &s.paths {
        let (a, b) = (&path[0], &path[path.len() - 1]);
        let mut oriented = path.clone();
        if b < a {
            oriented.reverse();
        }
        let key = (oriented[0].clone(), oriented[oriented.len() - 1].clone());
        candidates.entry(key).or_default().push(oriented);
    }
    for (u, v) in s.base.edges() {
        candidates.entry((u.clone(), v.clone())).or_default().push(vec![u, v]);
    }

    let mut rows_used: BTreeMap<String, u64> = BTreeMap::new();
    let mut lifted: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for (key, mut options) in candidates {
        options.sort_by(|a, b| (a.len(), a.as_slice()).cmp(&(b.len(), b.as_slice())));
        let path = &options[0];
        let mut out = Vec::with_capacity(path.len());
        out.push(product_id(&path[0], "0"));
        for x in &path[1..path.len() - 1] {
            let row = rows_used.entry(x.clone()).or_default();
            *row += 1;
            if *row > s.d {
                return Err(Error::Precondition(format!(
                    "vertex {x:?} is internal to more than {} chosen paths",
                    s.d
                )));
            }
            out.push(product_id(x, &row.to_string()));
        }
        out.push(product_id(&path[path.len() - 1], "0"));
        lifted.insert(key, out);
    }

    let injection = s
        .base
        .vertices()
        .iter()
        .map(|v| (v.clone(), product_id(v, "0")))
        .collect();
    model_from_paths(&guest, &host, &injection, &lifted, s.k.saturating_sub(1))
}

/// Per-vertex neighbour subsets of size at most `d`; applying the lift adds
/// an edge from each chosen vertex to the whole neighbourhood it was chosen
/// from.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CliqueLiftSpec {
    pub base: Graph,
    #[serde(rename = "M")]
    pub lift: BTreeMap<String, BTreeSet<String>>,
    pub d: u64,
}

/// Checks `M_v ⊆ N(v)` and `|M_v| ≤ d` for every vertex.
pub fn validate_clique_lift(c: &CliqueLiftSpec) -> Result<()> {
    for (v, members) in &c.lift {
        let vi = c
            .base
            .idx(v)
            .ok_or_else(|| Error::Precondition(format!("lift listed for unknown vertex {v:?}")))?;
        if members.len() as u64 > c.d {
            return Err(Error::Precondition(format!(
                "lift at {v:?} has {} members, above the bound {}",
                members.len(),
                c.d
            )));
        }
        for u in members {
            let ui = c.base.idx(u).ok_or_else(|| {
                Error::Precondition(format!("lift at {v:?} names unknown vertex {u:?}"))
            })?;
            if !c.base.has_edge_idx(vi, ui) {
                return Err(Error::Precondition(format!(
                    "lift at {v:?} names {u:?}, which is not a neighbour"
                )));
            }
        }
    }
    Ok(())
}

/// Adds the edges `uw` for every `v` with `u ∈ M_v` and `w ∈ N(v)`.
pub fn apply_clique_lift(c: &CliqueLiftSpec) -> Result<Graph> {
    validate_clique_lift(c)?;
    let mut edges = c.base.edges();
    for (v, members) in &c.lift {
        let vi = c.base.idx(v).unwrap();
        for u in members {
            for w in c.base.neighbors_idx(vi) {
                let w = c.base.name(w);
                if u != w {
                    edges.push((u.clone(), w.to_string()));
                }
            }
        }
    }
    Graph::new(c.base.vertices().to_vec(), edges)
}

/// Depth-1 model of the lifted graph in `base ∘ edgeless(d+1)`: each vertex
/// keeps its row-0 copy and additionally occupies one private row above
/// every vertex whose lift chose it.
pub fn clique_lift_model(c: &CliqueLiftSpec) -> Result<MinorModel> {
    validate_clique_lift(c)?;
    let guest = apply_clique_lift(c)?;
    let host = lex_product(&c.base, &edgeless_graph(c.d as usize + 1))?;

    let mut branch: BTreeMap<String, BTreeSet<String>> = c
        .base
        .vertices()
        .iter()
        .map(|u| (u.clone(), BTreeSet::from([product_id(u, "0")])))
        .collect();
    for (v, members) in &c.lift {
        for (i, u) in members.iter().enumerate() {
            branch.get_mut(u).unwrap().insert(product_id(v, &(i + 1).to_string()));
        }
    }
    let model = MinorModel {
        host,
        guest,
        branch,
        centre: c
            .base
            .vertices()
            .iter()
            .map(|u| (u.clone(), product_id(u, "0")))
            .collect(),
        depth2x: 2,
        topological: false,
    };
    verify_model(&model, Some(1))
        .map_err(|e| Error::Construction(format!("clique lift model: {e}")))?;
    Ok(model)
}

/// Model of `g^k` in `g ∘ edgeless(d+1)` at depth `⌊k/2⌋`, where `d` is the
/// maximum degree of `g^⌊k/2⌋`: each vertex's branch set is its radius-
/// `⌊k/2⌋` ball, every ball member lifted to the row recording the vertex's
/// position in that member's own sorted ball.
pub fn power_model(g: &Graph, k: u64) -> Result<MinorModel> {
    if k == 0 {
        return input_err("graph power requires k >= 1");
    }
    let s = k / 2;
    let d = graph_power_or_edgeless(g, s).max_degree();
    let host = lex_product(g, &edgeless_graph(d as usize + 1))?;
    let guest = graph_power(g, k)?;

    let n = g.vertex_count();
    let balls: Vec<Vec<usize>> = (0..n)
        .map(|w| ball_idx(g, w, s).into_iter().collect())
        .collect();
    let mut branch: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut centre: BTreeMap<String, String> = BTreeMap::new();
    for v in 0..n {
        let mut set = BTreeSet::new();
        for (w, ball) in balls.iter().enumerate() {
            if let Ok(pos) = ball.binary_search(&v) {
                set.insert(product_id(g.name(w), &pos.to_string()));
                if w == v {
                    centre.insert(g.name(v).to_string(), product_id(g.name(w), &pos.to_string()));
                }
            }
        }
        branch.insert(g.name(v).to_string(), set);
    }
    let model = MinorModel { host, guest, branch, centre, depth2x: 2 * s, topological: false };
    verify_model(&model, Some(s))
        .map_err(|e| Error::Construction(format!("power model: {e}")))?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{complete_graph, cycle_graph, path_graph, star_graph};

    #[test]
    fn identity_model_is_accepted_at_radius_zero() {
        let g = cycle_graph(5);
        let m = identity_model(&g);
        assert_eq!(verify_model(&m, Some(0)).unwrap(), 0);
    }

    #[test]
    fn contracted_cycle_needs_radius_one() {
        // C_4 with the edge (0, 1) contracted into branch {0, 1}.
        let host = cycle_graph(4);
        let guest = complete_graph(3);
        let m = MinorModel {
            host,
            guest,
            branch: [
                ("0".into(), ["0".to_string(), "1".to_string()].into()),
                ("1".into(), ["2".to_string()].into()),
                ("2".into(), ["3".to_string()].into()),
            ]
            .into(),
            centre: [
                ("0".into(), "0".into()),
                ("1".into(), "2".into()),
                ("2".into(), "3".into()),
            ]
            .into(),
            depth2x: 2,
            topological: false,
        };
        assert_eq!(verify_model(&m, Some(1)).unwrap(), 1);
        let err = verify_model(&m, Some(0)).unwrap_err();
        assert!(err.to_string().contains("radius 1"), "{err}");
    }

    #[test]
    fn verifier_names_the_violated_clause() {
        let g = path_graph(2);
        let mut m = identity_model(&g);
        m.branch.get_mut("0").unwrap().insert("1".into());
        let err = verify_model(&m, None).unwrap_err();
        assert!(err.to_string().contains("disjointness"), "{err}");

        // Disconnected branch set.
        let host = path_graph(3);
        let m = MinorModel {
            host: host.clone(),
            guest: path_graph(1),
            branch: [("0".to_string(), ["0".to_string(), "2".to_string()].into())].into(),
            centre: [("0".to_string(), "0".to_string())].into(),
            depth2x: 2,
            topological: false,
        };
        let err = verify_model(&m, None).unwrap_err();
        assert!(err.to_string().contains("connected"), "{err}");

        // Missing adjacency between branch sets.
        let m = MinorModel {
            host: Graph::new(["a", "b"], Vec::<(String, String)>::new()).unwrap(),
            guest: path_graph(2),
            branch: [
                ("0".to_string(), ["a".to_string()].into()),
                ("1".to_string(), ["b".to_string()].into()),
            ]
            .into(),
            centre: [("0".to_string(), "a".to_string()), ("1".to_string(), "b".to_string())]
                .into(),
            depth2x: 0,
            topological: false,
        };
        let err = verify_model(&m, None).unwrap_err();
        assert!(err.to_string().contains("no host edge"), "{err}");
    }

    #[test]
    fn shortcuts_on_a_path() {
        let s = ShortcutSystem {
            base: path_graph(3),
            paths: vec![vec!["0".into(), "1".into(), "2".into()]],
            k: 2,
            d: 1,
        };
        let g = apply_shortcuts(&s).unwrap();
        assert_eq!(g.edge_count(), 3);

        let empty = ShortcutSystem { base: path_graph(3), paths: vec![], k: 2, d: 1 };
        assert_eq!(apply_shortcuts(&empty).unwrap(), path_graph(3));

        let s5 = ShortcutSystem {
            base: path_graph(5),
            paths: vec![
                vec!["0".into(), "1".into(), "2".into()],
                vec!["2".into(), "3".into(), "4".into()],
            ],
            k: 2,
            d: 1,
        };
        let g5 = apply_shortcuts(&s5).unwrap();
        assert!(g5.has_edge("0", "2") && g5.has_edge("2", "4"));
        assert_eq!(g5.edge_count(), 6);
    }

    #[test]
    fn shortcut_validators_enforce_their_loads() {
        let overloaded = ShortcutSystem {
            base: star_graph(4),
            paths: vec![
                vec!["l0".into(), "c".into(), "l1".into()],
                vec!["l2".into(), "c".into(), "l3".into()],
            ],
            k: 2,
            d: 1,
        };
        assert!(validate_shortcut_system(&overloaded).is_err());
        // Star variant counts partners, of which the centre here has four.
        let mut star_ok = overloaded.clone();
        star_ok.d = 4;
        validate_shortcut_system_star(&star_ok).unwrap();
        star_ok.d = 3;
        assert!(validate_shortcut_system_star(&star_ok).is_err());

        let too_long = ShortcutSystem {
            base: path_graph(4),
            paths: vec![vec!["0".into(), "1".into(), "2".into(), "3".into()]],
            k: 2,
            d: 1,
        };
        assert!(validate_shortcut_system(&too_long).is_err());
    }

    #[test]
    fn shortcut_model_on_a_path() {
        let s = ShortcutSystem {
            base: path_graph(3),
            paths: vec![vec!["0".into(), "1".into(), "2".into()]],
            k: 2,
            d: 1,
        };
        let m = shortcut_to_model(&s).unwrap();
        assert_eq!(m.guest, apply_shortcuts(&s).unwrap());
        assert_eq!(m.host.vertex_count(), 6);
        assert_eq!(m.depth2x, 1);
        assert!(m.topological);
        // The shortcut's internal vertex is lifted off row 0.
        assert!(m.branch["0"].contains("1|1"));
        verify_model(&m, Some(1)).unwrap();
    }

    #[test]
    fn shortcut_model_without_shortcuts_is_the_identity_on_row_zero() {
        let s = ShortcutSystem { base: cycle_graph(4), paths: vec![], k: 1, d: 0 };
        let m = shortcut_to_model(&s).unwrap();
        assert_eq!(verify_model(&m, Some(0)).unwrap(), 0);
        assert!(m.branch.values().all(|b| b.len() == 1));
    }

    #[test]
    fn shared_internal_vertex_lands_on_distinct_rows() {
        let s = ShortcutSystem {
            base: star_graph(4),
            paths: vec![
                vec!["l0".into(), "c".into(), "l1".into()],
                vec!["l2".into(), "c".into(), "l3".into()],
            ],
            k: 2,
            d: 2,
        };
        let m = shortcut_to_model(&s).unwrap();
        let lifted: Vec<&str> = m
            .branch
            .values()
            .flatten()
            .filter(|x| x.starts_with("c|") && *x != "c|0")
            .map(String::as_str)
            .collect();
        assert_eq!(lifted.len(), 2);
        assert_ne!(lifted[0], lifted[1]);
    }

    #[test]
    fn clique_lift_of_a_star_is_complete() {
        let base = star_graph(3);
        let c = CliqueLiftSpec {
            base: base.clone(),
            lift: [("c".to_string(), ["l0", "l1", "l2"].map(String::from).into())].into(),
            d: 3,
        };
        let g = apply_clique_lift(&c).unwrap();
        assert_eq!(g.edge_count(), 6);

        let trivial = CliqueLiftSpec { base: base.clone(), lift: BTreeMap::new(), d: 0 };
        assert_eq!(apply_clique_lift(&trivial).unwrap(), base);

        let p3 = CliqueLiftSpec {
            base: path_graph(3),
            lift: [("1".to_string(), ["0".to_string()].into())].into(),
            d: 1,
        };
        let g = apply_clique_lift(&p3).unwrap();
        assert!(g.has_edge("0", "2"));
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn clique_lift_rejects_non_neighbours() {
        let c = CliqueLiftSpec {
            base: path_graph(3),
            lift: [("0".to_string(), ["2".to_string()].into())].into(),
            d: 1,
        };
        assert!(matches!(apply_clique_lift(&c), Err(Error::Precondition(_))));
    }

    #[test]
    fn clique_lift_model_of_a_star() {
        let c = CliqueLiftSpec {
            base: star_graph(3),
            lift: [("c".to_string(), ["l0", "l1", "l2"].map(String::from).into())].into(),
            d: 3,
        };
        let m = clique_lift_model(&c).unwrap();
        assert_eq!(m.guest, apply_clique_lift(&c).unwrap());
        // Each leaf keeps its row-0 copy and one lifted row above the centre.
        assert_eq!(m.branch["l0"].len(), 2);
        assert_eq!(verify_model(&m, Some(1)).unwrap(), 1);
        // Leaves chosen by the same lift sit on distinct rows.
        assert!(m.branch["l0"].contains("c|1"));
        assert!(m.branch["l1"].contains("c|2"));
    }

    #[test]
    fn power_model_fixtures() {
        // k = 1: the power is the graph itself and branch sets are single.
        let m = power_model(&path_graph(4), 1).unwrap();
        assert_eq!(m.guest, path_graph(4));
        assert!(m.branch.values().all(|b| b.len() == 1));
        assert_eq!(verify_model(&m, Some(0)).unwrap(), 0);

        let m = power_model(&cycle_graph(6), 2).unwrap();
        assert_eq!(m.host.vertex_count(), 18);
        assert_eq!(m.guest, graph_power(&cycle_graph(6), 2).unwrap());
        assert_eq!(verify_model(&m, Some(1)).unwrap(), 1);

        let m = power_model(&path_graph(5), 4).unwrap();
        assert_eq!(m.guest, graph_power(&path_graph(5), 4).unwrap());
        assert!(verify_model(&m, Some(2)).unwrap() <= 2);
        assert!(m.guest.has_edge("0", "4"));
    }

    #[test]
    fn subdivided_k4_models_back_at_radius_one() {
        // K_4 on a..d, every edge subdivided once through its own dummy.
        let guest = Graph::new(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let mut verts: Vec<String> = guest.vertices().to_vec();
        let mut edges = Vec::new();
        let mut paths = BTreeMap::new();
        for (u, v) in guest.edges() {
            let mid = format!("{u}{v}");
            verts.push(mid.clone());
            edges.push((u.clone(), mid.clone()));
            edges.push((mid.clone(), v.clone()));
            paths.insert((u.clone(), v.clone()), vec![u, mid, v]);
        }
        let host = Graph::new(verts, edges).unwrap();
        let m = subdivision_model(&guest, &host, &paths).unwrap();
        assert_eq!(m.depth2x, 1);
        assert!(verify_model(&m, Some(1)).unwrap() <= 1);
        // The single interior vertex goes to the smaller endpoint.
        assert!(m.branch["a"].contains("ab"));
    }

    #[test]
    fn overlapping_subdivision_paths_are_rejected() {
        let guest = path_graph(3);
        let host = star_graph(3);
        let paths: BTreeMap<(String, String), Vec<String>> = [
            (("0".to_string(), "1".to_string()), vec!["l0".into(), "c".into(), "l1".into()]),
            (("1".to_string(), "2".to_string()), vec!["l1".into(), "c".into(), "l2".into()]),
        ]
        .into();
        let err = subdivision_model(&guest, &host, &paths).unwrap_err();
        assert!(err.to_string().contains("share the internal vertex"), "{err}");
    }

    #[test]
    fn model_json_uses_the_documented_shape() {
        let m = identity_model(&path_graph(2));
        let js = serde_json::to_string(&m).unwrap();
        for key in ["\"host\"", "\"guest\"", "\"branch\"", "\"centre\"", "\"depth2x\"", "\"topological\""] {
            assert!(js.contains(key), "missing {key} in {js}");
        }
        let back: MinorModel = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
    }
}
