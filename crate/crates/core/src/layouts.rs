//! Queue layouts: verification, the strict layout of a complete graph, an
//! exhaustive queue-number oracle, and the transfer of a host layout to a
//! shallow minor.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::graph::order_positions as positions;
use crate::minors::{verify_model, MinorModel};
use crate::products::product_id;
use crate::{Error, Graph, Result};

/// A vertex order plus an edge-to-queue assignment. Edge keys are stored as
/// sorted vertex pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueueLayout {
    pub order: Vec<String>,
    pub queue: BTreeMap<(String, String), u64>,
    pub strict: bool,
}

impl QueueLayout {
    pub fn queue_count(&self) -> u64 {
        self.queue.values().collect::<BTreeSet<_>>().len() as u64
    }
}

impl Serialize for QueueLayout {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let queue: BTreeMap<String, u64> = self
            .queue
            .iter()
            .map(|((u, v), q)| (product_id(u, v), *q))
            .collect();
        let mut s = ser.serialize_struct("QueueLayout", 3)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("queue", &queue)?;
        s.serialize_field("strict", &self.strict)?;
        s.end()
    }
}

/// Parses the JSON form `{"order": [...], "queue": {"u|v": q}, "strict": b}`.
///
/// Because vertex ids may themselves contain `|`, the edge keys are resolved
/// against the edge set of `g`; a key that matches no edge, or more than one,
/// is an input error.
pub fn layout_from_json(g: &Graph, value: &serde_json::Value) -> Result<QueueLayout> {
    #[derive(serde::Deserialize)]
    struct Repr {
        order: Vec<String>,
        queue: BTreeMap<String, u64>,
        strict: bool,
    }
    let repr: Repr = serde_json::from_value(value.clone())
        .map_err(|e| Error::Input(format!("layout JSON: {e}")))?;
    let mut queue = BTreeMap::new();
    for (key, q) in repr.queue {
        let mut matches = BTreeSet::new();
        for (i, ch) in key.char_indices() {
            if ch == crate::products::SEP {
                let (u, v) = (&key[..i], &key[i + 1..]);
                if g.has_edge(u, v) {
                    let (a, b) = if u <= v { (u, v) } else { (v, u) };
                    matches.insert((a.to_string(), b.to_string()));
                }
            }
        }
        match matches.len() {
            0 => return Err(Error::Input(format!("queue key {key:?} matches no edge"))),
            1 => {
                let pair = matches.into_iter().next().unwrap();
                if queue.insert(pair.clone(), q).is_some() {
                    return Err(Error::Input(format!(
                        "queue key {key:?} resolves to the already-assigned edge {pair:?}"
                    )));
                }
            }
            _ => {
                return Err(Error::Input(format!(
                    "queue key {key:?} is ambiguous: matches {matches:?}"
                )))
            }
        }
    }
    Ok(QueueLayout { order: repr.order, queue, strict: repr.strict })
}

/// Checks a layout against `g` and returns the number of distinct queues
/// used. Rejection messages name the offending edge pair.
pub fn verify_layout(g: &Graph, q: &QueueLayout) -> Result<u64> {
    let pos = positions(g, &q.order)?;
    for (u, v) in q.queue.keys() {
        if !g.has_edge(u, v) {
            return Err(Error::Precondition(format!(
                "queue assigns the non-edge ({u:?}, {v:?})"
            )));
        }
    }
    let mut spans: Vec<(usize, usize, u64, (String, String))> = Vec::new();
    for (u, v) in g.edges() {
        let Some(assigned) = q.queue.get(&(u.clone(), v.clone())) else {
            return Err(Error::Precondition(format!(
                "edge ({u:?}, {v:?}) has no queue assignment"
            )));
        };
        let (pu, pv) = (pos[g.idx(&u).unwrap()], pos[g.idx(&v).unwrap()]);
        let (a, b) = if pu < pv { (pu, pv) } else { (pv, pu) };
        spans.push((a, b, *assigned, (u, v)));
    }
    for (i, e) in spans.iter().enumerate() {
        for f in &spans[i + 1..] {
            if e.2 != f.2 {
                continue;
            }
            let nested = (e.0 < f.0 && f.1 < e.1) || (f.0 < e.0 && e.1 < f.1);
            if nested {
                return crate::reject(format!(
                    "edges {:?} and {:?} nest in queue {}",
                    e.3, f.3, e.2
                ));
            }
            if q.strict && (e.0 == f.0 || e.1 == f.1) {
                return crate::reject(format!(
                    "edges {:?} and {:?} overlap in queue {} of a strict layout",
                    e.3, f.3, e.2
                ));
            }
        }
    }
    Ok(q.queue.values().collect::<BTreeSet<_>>().len() as u64)
}

/// The strict layout of `K_ℓ` in numeric order with `queue(ij) = |i - j|`,
/// which uses `ℓ - 1` queues.
pub fn complete_strict_layout(ell: usize) -> QueueLayout {
    let order: Vec<String> = (0..ell).map(|i| i.to_string()).collect();
    let mut queue = BTreeMap::new();
    for i in 0..ell {
        for j in i + 1..ell {
            let (a, b) = if order[i] <= order[j] {
                (order[i].clone(), order[j].clone())
            } else {
                (order[j].clone(), order[i].clone())
            };
            queue.insert((a, b), (j - i) as u64 - 1);
        }
    }
    QueueLayout { order, queue, strict: true }
}

/// Longest nesting chain over the edge spans under a fixed order; `abort_at`
/// short-circuits once a chain reaches that length. Each edge's chain depth
/// doubles as its queue index, so the maximum depth is the minimum number of
/// queues for this order.
fn max_nesting_chain(spans: &mut [(usize, usize, usize)], abort_at: u64) -> (u64, Vec<u64>) {
    // Inner edges first: sort by span width ascending.
    spans.sort_by_key(|&(a, b, _)| (b - a, a));
    let mut depth = vec![1u64; spans.len()];
    let mut best = if spans.is_empty() { 0 } else { 1 };
    for i in 0..spans.len() {
        for j in 0..i {
            let inside = spans[i].0 < spans[j].0 && spans[j].1 < spans[i].1;
            if inside && depth[j] + 1 > depth[i] {
                depth[i] = depth[j] + 1;
            }
        }
        if depth[i] > best {
            best = depth[i];
            if best >= abort_at {
                return (best, depth);
            }
        }
    }
    (best, depth)
}

const QUEUE_ORACLE_DEFAULT_LIMIT: usize = 9;

/// Exhaustive queue number: the minimum over all vertex orders of the
/// longest nesting chain, with a witnessing layout.
///
/// Orders and their reversals nest identically, so only orders whose first
/// vertex precedes their last are enumerated. The search splits over
/// (first, last) pairs and may run them on `jobs` threads; the result is the
/// first minimiser in enumeration order either way.
pub fn exact_queue_number(
    g: &Graph,
    budget: Option<usize>,
    jobs: usize,
) -> Result<(u64, QueueLayout)> {
    let n = g.vertex_count();
    let limit = budget.unwrap_or(QUEUE_ORACLE_DEFAULT_LIMIT);
    if n > limit {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, oracle budget is {limit}"
        )));
    }
    let finish = |order: Vec<usize>| -> (u64, QueueLayout) {
        let mut spans: Vec<(usize, usize, usize)> = Vec::new();
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        for (idx, (u, v)) in g.edges_idx().into_iter().enumerate() {
            let (a, b) = if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
            spans.push((a, b, idx));
        }
        let (count, depth) = max_nesting_chain(&mut spans, u64::MAX);
        let edges = g.edges();
        let mut queue = BTreeMap::new();
        for (span, d) in spans.iter().zip(&depth) {
            queue.insert(edges[span.2].clone(), d - 1);
        }
        let layout = QueueLayout {
            order: order.into_iter().map(|v| g.name(v).to_string()).collect(),
            queue,
            strict: false,
        };
        (count, layout)
    };
    if g.edge_count() == 0 {
        return Ok((0, finish((0..n).collect()).1));
    }
    if n == 2 {
        return Ok(finish(vec![0, 1]));
    }

    // Spans of the edges incident to each vertex are rebuilt per order; the
    // recursion fills positions left to right and prunes nothing else, since
    // chain depth needs the full order.
    fn search(
        g: &Graph,
        order: &mut Vec<usize>,
        remaining: &mut Vec<usize>,
        last: usize,
        best: &mut Option<(u64, Vec<usize>)>,
    ) {
        if remaining.is_empty() {
            order.push(last);
            let mut pos = vec![0usize; g.vertex_count()];
            for (p, &v) in order.iter().enumerate() {
                pos[v] = p;
            }
            let mut spans: Vec<(usize, usize, usize)> = g
                .edges_idx()
                .into_iter()
                .enumerate()
                .map(|(idx, (u, v))| {
                    let (a, b) =
                        if pos[u] < pos[v] { (pos[u], pos[v]) } else { (pos[v], pos[u]) };
                    (a, b, idx)
                })
                .collect();
            let abort = best.as_ref().map_or(u64::MAX, |(b, _)| *b);
            let (count, _) = max_nesting_chain(&mut spans, abort);
            if best.as_ref().is_none_or(|(b, _)| count < *b) {
                *best = Some((count, order.clone()));
            }
            order.pop();
            return;
        }
        for i in 0..remaining.len() {
            let v = remaining.remove(i);
            order.push(v);
            search(g, order, remaining, last, best);
            order.pop();
            remaining.insert(i, v);
        }
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|f| (0..n).map(move |l| (f, l)))
        .filter(|&(f, l)| g.name(f) < g.name(l))
        .collect();
    let run_pair = |&(f, l): &(usize, usize)| -> (u64, Vec<usize>) {
        let mut order = vec![f];
        let mut remaining: Vec<usize> = (0..n).filter(|&v| v != f && v != l).collect();
        let mut best = None;
        search(g, &mut order, &mut remaining, l, &mut best);
        best.expect("at least one order per pair")
    };
    let jobs = jobs.max(1).min(pairs.len().max(1));
    let results: Vec<(u64, Vec<usize>)> = if jobs == 1 {
        pairs.iter().map(run_pair).collect()
    } else {
        let mut out: Vec<Option<(u64, Vec<usize>)>> = vec![None; pairs.len()];
        let chunks: Vec<Vec<usize>> = (0..jobs)
            .map(|t| (t..pairs.len()).step_by(jobs).collect())
            .collect();
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|chunk| {
                    scope.spawn(|| {
                        chunk
                            .iter()
                            .map(|&i| (i, run_pair(&pairs[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for handle in handles {
                for (i, res) in handle.join().expect("oracle worker panicked") {
                    out[i] = Some(res);
                }
            }
        });
        out.into_iter().map(|r| r.expect("all pairs covered")).collect()
    };
    let (_, order) = results
        .into_iter()
        .min_by_key(|(count, _)| *count)
        .expect("some (first, last) pair exists");
    Ok(finish(order))
}

/// Shortest path from `from` to `to` inside `allowed`, exploring neighbours
/// in index order so ties resolve deterministically.
fn route_inside(
    host: &Graph,
    allowed: &BTreeSet<usize>,
    from: usize,
    to: usize,
) -> Option<Vec<usize>> {
    let mut parent: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while let Some(&p) = parent.get(&cur) {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for w in host.neighbors_idx(u) {
            if allowed.contains(&w) && seen.insert(w) {
                parent.insert(w, u);
                queue.push_back(w);
            }
        }
    }
    None
}

/// Transfers a host queue layout to the guest of a shallow model.
///
/// Guest vertices must appear in their own branch sets (they are re-centred
/// there for routing). Each guest edge is routed along a shortest host path
/// inside the union of its two branch sets and keyed by the path's length,
/// per-step host queues and per-step directions; keys are renumbered
/// densely in first-use order. With routes of length at most `2r` the
/// number of queues is at most `2r(2q)^{2r}`.
pub fn queue_shallow(m: &MinorModel, q: &QueueLayout) -> Result<QueueLayout> {
    let r = m.declared_radius();
    verify_model(m, Some(r)).map_err(|e| Error::Precondition(format!("model: {e}")))?;
    verify_layout(&m.host, q).map_err(|e| Error::Precondition(format!("host layout: {e}")))?;

    let mut host_pos: BTreeMap<&String, usize> = BTreeMap::new();
    for (p, v) in q.order.iter().enumerate() {
        host_pos.insert(v, p);
    }
    for v in m.guest.vertices() {
        if !m.branch[v].contains(v) {
            return Err(Error::Precondition(format!(
                "guest vertex {v:?} is not a member of its own branch set"
            )));
        }
    }
    let mut guest_order: Vec<String> = m.guest.vertices().to_vec();
    guest_order.sort_by_key(|v| host_pos[v]);

    let branch_idx: BTreeMap<&String, BTreeSet<usize>> = m
        .branch
        .iter()
        .map(|(v, set)| (v, set.iter().map(|x| m.host.idx(x).unwrap()).collect()))
        .collect();
    let mut key_ids: BTreeMap<(usize, Vec<u64>, Vec<bool>), u64> = BTreeMap::new();
    let mut queue = BTreeMap::new();
    for (u, v) in m.guest.edges() {
        // Orient the edge by the guest order before routing.
        let (a, b) = if host_pos[&u] < host_pos[&v] { (&u, &v) } else { (&v, &u) };
        let allowed: BTreeSet<usize> =
            branch_idx[a].union(&branch_idx[b]).copied().collect();
        let path = route_inside(
            &m.host,
            &allowed,
            m.host.idx(a).unwrap(),
            m.host.idx(b).unwrap(),
        )
        .expect("branch sets are connected and adjacent");
        let mut queues = Vec::with_capacity(path.len() - 1);
        let mut forwards = Vec::with_capacity(path.len() - 1);
        for step in path.windows(2) {
            let (x, y) = (m.host.name(step[0]).to_string(), m.host.name(step[1]).to_string());
            let key = if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
            queues.push(q.queue[&key]);
            forwards.push(host_pos[&x] < host_pos[&y]);
        }
        let next = key_ids.len() as u64;
        let id = *key_ids.entry((path.len() - 1, queues, forwards)).or_insert(next);
        queue.insert((u, v), id);
    }
    let out = QueueLayout { order: guest_order, queue, strict: false };
    verify_layout(&m.guest, &out)
        .map_err(|e| Error::Construction(format!("transferred layout: {e}")))?;
    Ok(out)
}
