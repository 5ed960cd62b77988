//! Generalised colouring numbers: reach sets under a vertex order, an
//! exhaustive order oracle, porting a host order to a shallow minor, and
//! verifiers for nonrepetitive and p-centred colourings.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::order_positions;
use crate::minors::{verify_model, MinorModel};
use crate::{reject, Error, Graph, Result};

/// A total order of the vertices, leftmost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrder {
    pub order: Vec<String>,
}

/// A vertex colouring with opaque colour labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Colouring {
    pub colour: BTreeMap<String, String>,
}

/// Which endpoint constrains a reach path's interior: strong reachability
/// keeps interior vertices right of the start, weak reachability right of
/// the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strong,
    Weak,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Strong => "strong",
            Mode::Weak => "weak",
        }
    }
}

fn check_radius(s: u64) -> Result<()> {
    if s == 0 {
        return Err(Error::Precondition("reach radius s must be at least 1".into()));
    }
    Ok(())
}

/// Vertices weakly left of `v` that `v` reaches by a path of length at
/// most `s` under the mode's interior constraint. Always contains `v`.
pub fn reach_set(
    g: &Graph,
    order: &VertexOrder,
    v: &str,
    s: u64,
    mode: Mode,
) -> Result<BTreeSet<String>> {
    check_radius(s)?;
    let pos = order_positions(g, &order.order)?;
    let vi = g.idx_of(v)?;
    Ok(reach_idx(g, &pos, vi, s, mode).into_iter().map(|i| g.name(i).to_string()).collect())
}

/// BFS distances from `source` where every vertex after the source must
/// satisfy `allowed`.
fn constrained_dist(g: &Graph, source: usize, allowed: impl Fn(usize) -> bool) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for x in g.neighbors_idx(u) {
            if dist[x].is_none() && allowed(x) {
                dist[x] = Some(d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

fn reach_idx(g: &Graph, pos: &[usize], vi: usize, s: u64, mode: Mode) -> BTreeSet<usize> {
    let mut out = BTreeSet::from([vi]);
    match mode {
        Mode::Strong => {
            // A qualifying path leaves v, stays right of v, and drops to
            // the target with its final edge.
            let dist = constrained_dist(g, vi, |x| pos[x] > pos[vi]);
            for w in 0..g.vertex_count() {
                if w == vi || pos[w] > pos[vi] {
                    continue;
                }
                let reachable = g.neighbors_idx(w).any(|x| {
                    x == vi || (pos[x] > pos[vi] && dist[x].is_some_and(|d| d + 1 <= s))
                });
                if reachable {
                    out.insert(w);
                }
            }
        }
        Mode::Weak => {
            for w in 0..g.vertex_count() {
                if w == vi || pos[w] > pos[vi] {
                    continue;
                }
                let dist = constrained_dist(g, vi, |x| x == w || pos[x] > pos[w]);
                if dist[w].is_some_and(|d| d <= s) {
                    out.insert(w);
                }
            }
        }
    }
    out
}

/// The largest reach-set size over all vertices under the given order.
pub fn col_of_order(g: &Graph, order: &VertexOrder, s: u64, mode: Mode) -> Result<u64> {
    check_radius(s)?;
    let pos = order_positions(g, &order.order)?;
    Ok(col_for_positions(g, &pos, s, mode, u64::MAX))
}

fn col_for_positions(g: &Graph, pos: &[usize], s: u64, mode: Mode, abort_at: u64) -> u64 {
    let mut worst = 0;
    for v in 0..g.vertex_count() {
        worst = worst.max(reach_idx(g, pos, v, s, mode).len() as u64);
        if worst >= abort_at {
            break;
        }
    }
    worst
}

pub const COL_ORACLE_DEFAULT_LIMIT: usize = 8;

/// Minimises `col_of_order` over every vertex order by exhaustive search
/// and returns the value with the lexicographically first witness order.
///
/// The search visits all n! orders, so graphs above the limit (default 8,
/// raised via `budget`) are refused. `jobs` splits the work by leading
/// vertex; the result does not depend on the split.
pub fn exact_col(
    g: &Graph,
    s: u64,
    mode: Mode,
    budget: Option<usize>,
    jobs: usize,
) -> Result<(u64, VertexOrder)> {
    check_radius(s)?;
    let limit = budget.unwrap_or(COL_ORACLE_DEFAULT_LIMIT);
    let n = g.vertex_count();
    if n > limit {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, order search limit is {limit}; raise the budget to override"
        )));
    }
    if n == 0 {
        return Ok((0, VertexOrder { order: vec![] }));
    }

    let run_block = |first: usize| -> (u64, Vec<usize>) {
        let mut rest: Vec<usize> = (0..n).filter(|&i| i != first).collect();
        let mut perm = vec![first];
        let mut best = u64::MAX;
        let mut witness = Vec::new();
        permute(g, s, mode, &mut rest, &mut perm, &mut best, &mut witness);
        (best, witness)
    };

    let jobs = jobs.max(1).min(n);
    let blocks: Vec<(u64, Vec<usize>)> = if jobs == 1 {
        (0..n).map(run_block).collect()
    } else {
        let mut out: Vec<Vec<(usize, (u64, Vec<usize>))>> = Vec::new();
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|t| {
                    let run_block = &run_block;
                    scope.spawn(move || {
                        (t..n).step_by(jobs).map(|f| (f, run_block(f))).collect::<Vec<_>>()
                    })
                })
                .collect();
            out = handles.into_iter().map(|h| h.join().unwrap()).collect();
        });
        let mut merged: Vec<(usize, (u64, Vec<usize>))> = out.into_iter().flatten().collect();
        merged.sort_by_key(|(f, _)| *f);
        merged.into_iter().map(|(_, b)| b).collect()
    };

    let mut best = u64::MAX;
    let mut witness = Vec::new();
    for (value, perm) in blocks {
        if value < best {
            best = value;
            witness = perm;
        }
    }
    let order = VertexOrder { order: witness.into_iter().map(|i| g.name(i).to_string()).collect() };
    Ok((best, order))
}

/// Extends `perm` by every arrangement of `rest` in lexicographic order,
/// evaluating complete orders against the current best.
fn permute(
    g: &Graph,
    s: u64,
    mode: Mode,
    rest: &mut Vec<usize>,
    perm: &mut Vec<usize>,
    best: &mut u64,
    witness: &mut Vec<usize>,
) {
    if rest.is_empty() {
        let mut pos = vec![0usize; perm.len()];
        for (p, &v) in perm.iter().enumerate() {
            pos[v] = p;
        }
        let value = col_for_positions(g, &pos, s, mode, *best);
        if value < *best {
            *best = value;
            *witness = perm.clone();
        }
        return;
    }
    for i in 0..rest.len() {
        let v = rest.remove(i);
        perm.push(v);
        permute(g, s, mode, rest, perm, best, witness);
        perm.pop();
        rest.insert(i, v);
    }
}

/// Outcome of porting a host vertex order to a shallow-minor guest.
#[derive(Clone, Debug, Serialize)]
pub struct ShallowColOutcome {
    pub order: VertexOrder,
    #[serde(rename = "shiftedS")]
    pub shifted_s: u64,
    #[serde(rename = "guestValue")]
    pub guest_value: u64,
    #[serde(rename = "hostValue")]
    pub host_value: u64,
    pub holds: bool,
}

/// Orders the guest by each branch set's leftmost host vertex and checks
/// that the guest's reach value at `s` stays within the host's at
/// `2rs + 2r + s`, where `r` is the model's declared depth.
///
/// The inequality is recomputed on both sides rather than assumed, so a
/// violating instance reports `holds: false` instead of passing silently.
pub fn col_shallow_order(
    m: &MinorModel,
    host_order: &VertexOrder,
    s: u64,
    mode: Mode,
) -> Result<ShallowColOutcome> {
    check_radius(s)?;
    let r = m.declared_radius();
    verify_model(m, Some(r)).map_err(|e| Error::Precondition(format!("model: {e}")))?;
    let host_pos = order_positions(&m.host, &host_order.order)?;

    let mut leftmost: Vec<(usize, &String)> = m
        .guest
        .vertices()
        .iter()
        .map(|u| {
            let l = m.branch[u].iter().map(|x| host_pos[m.host.idx(x).unwrap()]).min().unwrap();
            (l, u)
        })
        .collect();
    leftmost.sort();
    // Branch sets are disjoint, so leftmost positions never collide.
    assert!(leftmost.windows(2).all(|w| w[0].0 != w[1].0));

    let order = VertexOrder { order: leftmost.into_iter().map(|(_, u)| u.clone()).collect() };
    let shifted_s = 2 * r * s + 2 * r + s;
    let guest_value = col_of_order(&m.guest, &order, s, mode)?;
    let host_value = col_of_order(&m.host, host_order, shifted_s, mode)?;
    Ok(ShallowColOutcome {
        order,
        shifted_s,
        guest_value,
        host_value,
        holds: guest_value <= host_value,
    })
}

/// Dense colour ids per vertex index. The colouring must cover V.
fn colour_table(g: &Graph, c: &Colouring) -> Result<Vec<usize>> {
    let mut ids: BTreeMap<&String, usize> = BTreeMap::new();
    let mut out = Vec::with_capacity(g.vertex_count());
    for v in g.vertices() {
        let label = c
            .colour
            .get(v)
            .ok_or_else(|| Error::Precondition(format!("colouring misses vertex {v:?}")))?;
        let next = ids.len();
        out.push(*ids.entry(label).or_insert(next));
    }
    Ok(out)
}

pub const NONREP_DEFAULT_STEPS: u64 = 5_000_000;

/// Accepts iff no simple path on 2h vertices, h at most `h_star`, has its
/// second half coloured like its first. A rejection names the offending
/// path. `steps` caps the number of search-tree nodes (default five
/// million); hitting the cap is an error, never a silent pass.
pub fn verify_nonrepetitive(
    g: &Graph,
    c: &Colouring,
    h_star: u64,
    steps: Option<u64>,
) -> Result<()> {
    let colour = colour_table(g, c)?;
    if h_star == 0 {
        return Ok(());
    }
    let budget = steps.unwrap_or(NONREP_DEFAULT_STEPS);
    let mut used = 0u64;
    let mut path = Vec::new();
    let mut on_path = vec![false; g.vertex_count()];
    for start in 0..g.vertex_count() {
        path.push(start);
        on_path[start] = true;
        extend_path(g, &colour, 2 * h_star as usize, budget, &mut used, &mut path, &mut on_path)?;
        path.pop();
        on_path[start] = false;
    }
    Ok(())
}

fn extend_path(
    g: &Graph,
    colour: &[usize],
    max_len: usize,
    budget: u64,
    used: &mut u64,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
) -> Result<()> {
    *used += 1;
    if *used > budget {
        return Err(Error::Resource(format!(
            "path enumeration exceeded {budget} steps; raise the step budget"
        )));
    }
    let len = path.len();
    // Each path is walked from both ends; checking only the orientation
    // with the smaller first endpoint halves the work.
    if len % 2 == 0 && g.name(path[0]) < g.name(path[len - 1]) {
        let h = len / 2;
        if (0..h).all(|i| colour[path[i]] == colour[path[i + h]]) {
            let names: Vec<&str> = path.iter().map(|&i| g.name(i)).collect();
            return reject(format!("path {names:?} repeats its colour sequence"));
        }
    }
    if len == max_len {
        return Ok(());
    }
    let last = *path.last().unwrap();
    for x in g.neighbors_idx(last) {
        if !on_path[x] {
            path.push(x);
            on_path[x] = true;
            extend_path(g, colour, max_len, budget, used, path, on_path)?;
            path.pop();
            on_path[x] = false;
        }
    }
    Ok(())
}

pub const CENTRED_DEFAULT_LIMIT: usize = 12;

/// Accepts iff every connected subgraph either sees more than `p` colours
/// or contains a vertex whose colour is unique in it. The condition only
/// depends on the subgraph's vertex set, so the check enumerates the
/// connected induced subgraphs. A rejection names a violating vertex set.
pub fn verify_p_centred(g: &Graph, c: &Colouring, p: u64, budget: Option<usize>) -> Result<()> {
    let n = g.vertex_count();
    let limit = budget.unwrap_or(CENTRED_DEFAULT_LIMIT).min(32);
    if n > limit {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, connected-subgraph enumeration limit is {limit}; \
             raise the budget to override (capped at 32)"
        )));
    }
    let colour = colour_table(g, c)?;
    for mask in 1u64..(1u64 << n) {
        if !mask_connected(g, mask) {
            continue;
        }
        let mut counts: BTreeMap<usize, u32> = BTreeMap::new();
        for v in 0..n {
            if mask >> v & 1 == 1 {
                *counts.entry(colour[v]).or_default() += 1;
            }
        }
        if counts.len() as u64 > p || counts.values().any(|&k| k == 1) {
            continue;
        }
        let names: Vec<&str> = (0..n).filter(|&v| mask >> v & 1 == 1).map(|v| g.name(v)).collect();
        return reject(format!(
            "connected subgraph {names:?} sees only {} colours and none is unique",
            counts.len()
        ));
    }
    Ok(())
}

fn mask_connected(g: &Graph, mask: u64) -> bool {
    let start = mask.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for x in g.neighbors_idx(u) {
            let bit = 1u64 << x;
            if mask & bit != 0 && seen & bit == 0 {
                seen |= bit;
                stack.push(x);
            }
        }
    }
    seen == mask
}
