//! Seeded instance generators and a small-graph enumerator for the test
//! suites.
//!
//! Everything runs off [`Rng`], a SplitMix64 stream, so any failing
//! instance replays from its seed alone. Each generator ends by passing
//! its output through the matching verifier: callers receive valid
//! instances or an error, never a silently broken one.

use std::collections::{BTreeMap, BTreeSet};

use crate::colouring::{Colouring, VertexOrder};
use crate::decomp::{
    normalise, HLPartition, NormalisedTreeDecomposition, TreeDecomposition,
};
use crate::engine::EngineInput;
use crate::minors::{
    validate_clique_lift, validate_shortcut_system, verify_model, CliqueLiftSpec, MinorModel,
    ShortcutSystem,
};
use crate::planar::{
    crossing_orders, Bundle, BundleStructure, ClusterStructure, Crossing, CurveArrangement,
    EmbeddedGraph,
};
use crate::products::{complete_graph, path_graph, product_id, strong_product};
use crate::{input_err, Error, Graph, Result};

/// SplitMix64: one 64-bit word of state, one multiply-xorshift chain per
/// draw. Fast, equidistributed, and identical on every platform.
#[derive(Clone, Debug)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` via the multiply-shift reduction.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "cannot draw below zero");
        ((u128::from(self.next_u64()) * u128::from(n)) >> 64) as u64
    }

    /// True with probability `num / den`.
    pub fn chance(&mut self, num: u64, den: u64) -> bool {
        self.below(den) < num
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        assert!(!items.is_empty(), "cannot pick from an empty slice");
        &items[self.below(items.len() as u64) as usize]
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

/// Erdős–Rényi style graph on vertices `"0".."n-1"`, each pair kept with
/// probability `num / den`.
pub fn random_graph(rng: &mut Rng, n: usize, num: u64, den: u64) -> Graph {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if rng.chance(num, den) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names, edges).expect("distinct digits never collide")
}

/// A random recursive tree plus `extra` random chords, so the result is
/// connected whenever `n > 0`.
pub fn random_connected_graph(rng: &mut Rng, n: usize, extra: usize) -> Graph {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 1..n {
        let j = rng.below(i as u64) as usize;
        edges.push((names[j].clone(), names[i].clone()));
    }
    let mut added = 0;
    while added < extra && n >= 2 {
        let i = rng.below(n as u64) as usize;
        let j = rng.below(n as u64) as usize;
        added += 1;
        if i != j {
            edges.push((names[i.min(j)].clone(), names[i.max(j)].clone()));
        }
    }
    Graph::new(names, edges).expect("distinct digits never collide")
}

pub fn random_order(rng: &mut Rng, g: &Graph) -> VertexOrder {
    let mut order = g.vertices().to_vec();
    rng.shuffle(&mut order);
    VertexOrder { order }
}

pub fn random_colouring(rng: &mut Rng, g: &Graph, colours: u64) -> Colouring {
    assert!(colours > 0, "need at least one colour");
    let colour = g
        .vertices()
        .iter()
        .map(|v| (v.clone(), format!("c{}", rng.below(colours))))
        .collect();
    Colouring { colour }
}

/// Grows disjoint branch sets inside `host` by seeded breadth-first
/// absorption, each within `r` hops of its seed, and reads off the full
/// minor they realise. Vertices left unclaimed are simply deleted.
pub fn random_model(rng: &mut Rng, host: &Graph, r: u64) -> Result<MinorModel> {
    let n = host.vertex_count();
    if n == 0 {
        return input_err("cannot model inside an empty host");
    }
    let mut order: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut order);
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut branches: Vec<(usize, Vec<usize>)> = Vec::new();
    for &v in &order {
        if owner[v].is_some() || !rng.chance(1, 2) {
            continue;
        }
        let id = branches.len();
        owner[v] = Some(id);
        let mut members = vec![v];
        let mut frontier = vec![v];
        for _ in 0..rng.below(r + 1) {
            let mut next = Vec::new();
            for &w in &frontier {
                for x in host.neighbors_idx(w) {
                    if owner[x].is_none() && rng.chance(2, 3) {
                        owner[x] = Some(id);
                        members.push(x);
                        next.push(x);
                    }
                }
            }
            frontier = next;
        }
        branches.push((v, members));
    }
    if branches.is_empty() {
        owner[order[0]] = Some(0);
        branches.push((order[0], vec![order[0]]));
    }

    let guest_names: Vec<String> = (0..branches.len()).map(|i| format!("b{i}")).collect();
    let mut branch: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut centre: BTreeMap<String, String> = BTreeMap::new();
    for (i, (seed, members)) in branches.iter().enumerate() {
        let set = members.iter().map(|&m| host.name(m).to_string()).collect();
        branch.insert(guest_names[i].clone(), set);
        centre.insert(guest_names[i].clone(), host.name(*seed).to_string());
    }
    let mut realised: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (u, v) in host.edges_idx() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                realised.insert((a.min(b), a.max(b)));
            }
        }
    }
    let guest_edges: Vec<_> = realised
        .iter()
        .map(|&(a, b)| (guest_names[a].clone(), guest_names[b].clone()))
        .collect();
    let m = MinorModel {
        host: host.clone(),
        guest: Graph::new(guest_names, guest_edges)?,
        branch,
        centre,
        depth2x: 2 * r,
        topological: false,
    };
    verify_model(&m, Some(r))?;
    Ok(m)
}

/// A partial `t`-tree on `"0".."n-1"` together with a normalised
/// tree-decomposition of width at most `t`: grown bag by bag in the usual
/// `t`-tree fashion, then thinned by random edge deletion, which leaves
/// the decomposition valid.
pub fn random_partial_ttree(
    rng: &mut Rng,
    n: usize,
    t: usize,
) -> Result<(Graph, NormalisedTreeDecomposition)> {
    if n == 0 {
        return input_err("need at least one vertex");
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let base = n.min(t + 1);
    let mut bags: Vec<BTreeSet<usize>> = vec![(0..base).collect()];
    let mut tree_edges: Vec<(String, String)> = Vec::new();
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 1..base {
        for i in 0..j {
            edge_set.insert((i, j));
        }
    }
    for v in base..n {
        let parent = rng.below(bags.len() as u64) as usize;
        let mut cand = bags[parent].clone();
        if cand.len() == t + 1 {
            let drop_pos = rng.below(cand.len() as u64) as usize;
            let drop = *cand.iter().nth(drop_pos).unwrap();
            cand.remove(&drop);
        }
        for &x in &cand {
            edge_set.insert((x, v));
        }
        cand.insert(v);
        tree_edges.push((format!("n{parent}"), format!("n{}", bags.len())));
        bags.push(cand);
    }
    let kept: Vec<(String, String)> = edge_set
        .iter()
        .filter(|_| rng.chance(3, 4))
        .map(|&(i, j)| (names[i].clone(), names[j].clone()))
        .collect();
    let h = Graph::new(names.clone(), kept)?;
    let node_names: Vec<String> = (0..bags.len()).map(|i| format!("n{i}")).collect();
    let td = TreeDecomposition {
        tree: Graph::new(node_names.clone(), tree_edges)?,
        root: "n0".to_string(),
        bags: bags
            .iter()
            .enumerate()
            .map(|(i, b)| {
                (
                    node_names[i].clone(),
                    b.iter().map(|&x| names[x].clone()).collect(),
                )
            })
            .collect(),
    };
    let ntd = normalise(&h, &td)?;
    Ok((h, ntd))
}

/// The canonical width-`ell` partition of any spanning subgraph of
/// `h ⊠ l ⊠ K_ell`: each vertex lands in the parts named by its first two
/// coordinates.
pub fn product_partition(h: &Graph, l: &Graph, ell: usize) -> HLPartition {
    let mut part_y: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut part_z: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for hv in h.vertices() {
        for lv in l.vertices() {
            for i in 0..ell {
                let id = product_id(&product_id(hv, lv), &i.to_string());
                part_y.entry(hv.clone()).or_default().insert(id.clone());
                part_z.entry(lv.clone()).or_default().insert(id);
            }
        }
    }
    HLPartition {
        quotient_h: h.clone(),
        quotient_l: l.clone(),
        part_y,
        part_z,
        width: ell as u64,
    }
}

/// A fully verified random quotient-machine input: a spanning subgraph of
/// `H ⊠ P ⊠ K_ell` for a random partial `t`-tree `H` and path `P`, with
/// the product partition and a random depth-`r` model on it. Sizes stay
/// within `|V| <= 20`, `ell <= 2`, `t <= 2`, `r <= 2`.
pub fn random_engine_input(rng: &mut Rng) -> Result<EngineInput> {
    let ell = 1 + rng.below(2) as usize;
    let t = 1 + rng.below(2) as usize;
    let r = rng.below(3);
    let (nh, np) = loop {
        let nh = 2 + rng.below(3) as usize;
        let np = 2 + rng.below(3) as usize;
        if nh * np * ell <= 20 {
            break (nh, np);
        }
    };
    let (h, ntd) = random_partial_ttree(rng, nh, t)?;
    let p = path_graph(np);
    let full = strong_product(&strong_product(&h, &p)?, &complete_graph(ell))?;
    let kept: Vec<(String, String)> = full
        .edges()
        .into_iter()
        .filter(|_| rng.chance(9, 10))
        .collect();
    let g = Graph::new(full.vertices().to_vec(), kept)?;
    let partition = product_partition(&h, &p, ell);
    let model = random_model(rng, &g, r)?;
    EngineInput::new(g, partition, ntd, model)
}

fn fresh_pos(rng: &mut Rng, used: &mut BTreeSet<i64>) -> i64 {
    loop {
        if used.len() >= 64 {
            let p = used.iter().next_back().unwrap() + 1;
            used.insert(p);
            return p;
        }
        let p = rng.below(64) as i64;
        if used.insert(p) {
            return p;
        }
    }
}

/// A connected graph drawn with up to `max_crossings` random crossings.
/// With `simple` set, crossing pairs are vertex-disjoint and never repeat;
/// positions along every edge are distinct either way.
pub fn random_embedded(rng: &mut Rng, simple: bool, max_crossings: usize) -> Result<EmbeddedGraph> {
    let n = 4 + rng.below(5) as usize;
    let extra = rng.below(4) as usize;
    let g = random_connected_graph(rng, n, extra);
    let edges = g.edges();
    let mut crossings = Vec::new();
    if edges.len() >= 2 {
        let target = rng.below(max_crossings as u64 + 1) as usize;
        let mut used_pos: BTreeMap<(String, String), BTreeSet<i64>> = BTreeMap::new();
        let mut seen_pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut tries = 0;
        while crossings.len() < target && tries < 20 * max_crossings + 40 {
            tries += 1;
            let i = rng.below(edges.len() as u64) as usize;
            let j = rng.below(edges.len() as u64) as usize;
            if i == j {
                continue;
            }
            let (a, b) = (edges[i].clone(), edges[j].clone());
            if simple {
                if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
                    continue;
                }
                if !seen_pairs.insert((i.min(j), i.max(j))) {
                    continue;
                }
            }
            let pos_a = fresh_pos(rng, used_pos.entry(a.clone()).or_default());
            let pos_b = fresh_pos(rng, used_pos.entry(b.clone()).or_default());
            crossings.push(Crossing { a, b, pos_a, pos_b, side: None });
        }
    }
    let e = EmbeddedGraph { base: g, crossings, simple };
    crossing_orders(&e)?;
    Ok(e)
}

/// A simple random drawing paired with its measured crossing bound, ready
/// for the k-planar gadget.
pub fn random_kplanar(rng: &mut Rng) -> Result<(EmbeddedGraph, u64)> {
    let e = random_embedded(rng, true, 6)?;
    let orders = crossing_orders(&e)?;
    let k = orders.values().map(|l| l.len() as u64).max().unwrap_or(0);
    Ok((e, k.max(1)))
}

/// Random simple paths of length at most `k` in a connected base graph,
/// committed only while every interior vertex stays within load `d`.
pub fn random_shortcut_system(rng: &mut Rng) -> Result<ShortcutSystem> {
    let n = 4 + rng.below(5) as usize;
    let extra = rng.below(4) as usize;
    let base = random_connected_graph(rng, n, extra);
    let k = 2 + rng.below(3);
    let d = 1 + rng.below(3);
    let mut load: BTreeMap<usize, u64> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut paths: Vec<Vec<String>> = Vec::new();
    let want = 1 + rng.below(5) as usize;
    let mut tries = 0;
    while paths.len() < want && tries < 40 {
        tries += 1;
        let start = rng.below(base.vertex_count() as u64) as usize;
        let mut walk = vec![start];
        for _ in 0..1 + rng.below(k) {
            let nbrs: Vec<usize> = base
                .neighbors_idx(*walk.last().unwrap())
                .filter(|x| !walk.contains(x))
                .collect();
            if nbrs.is_empty() {
                break;
            }
            walk.push(nbrs[rng.below(nbrs.len() as u64) as usize]);
        }
        if walk.len() < 2 {
            continue;
        }
        let mut key = walk.clone();
        if key[0] > key[key.len() - 1] {
            key.reverse();
        }
        if seen.contains(&key) {
            continue;
        }
        let interior = &walk[1..walk.len() - 1];
        if interior.iter().any(|x| load.get(x).copied().unwrap_or(0) >= d) {
            continue;
        }
        for x in interior {
            *load.entry(*x).or_default() += 1;
        }
        seen.insert(key);
        paths.push(walk.iter().map(|&x| base.name(x).to_string()).collect());
    }
    let s = ShortcutSystem { base, paths, k, d };
    validate_shortcut_system(&s)?;
    Ok(s)
}

/// Random neighbour subsets of size at most `d` at roughly half the
/// vertices.
pub fn random_clique_lift(rng: &mut Rng) -> Result<CliqueLiftSpec> {
    let n = 4 + rng.below(5) as usize;
    let extra = rng.below(5) as usize;
    let base = random_connected_graph(rng, n, extra);
    let d = 1 + rng.below(2);
    let mut lift: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for i in 0..base.vertex_count() {
        if !rng.chance(1, 2) {
            continue;
        }
        let mut nbrs: Vec<usize> = base.neighbors_idx(i).collect();
        rng.shuffle(&mut nbrs);
        nbrs.truncate(rng.below(d + 1) as usize);
        lift.insert(
            base.name(i).to_string(),
            nbrs.iter().map(|&x| base.name(x).to_string()).collect(),
        );
    }
    let c = CliqueLiftSpec { base, lift, d };
    validate_clique_lift(&c)?;
    Ok(c)
}

/// Chops a random connected graph into clusters of bounded size and reads
/// the cluster adjacency off the realised inter-cluster edges. Returns the
/// structure with the cluster capacity it satisfies.
pub fn random_cluster(rng: &mut Rng) -> Result<(ClusterStructure, usize)> {
    let n = 4 + rng.below(6) as usize;
    let extra = rng.below(5) as usize;
    let g = random_connected_graph(rng, n, extra);
    let cap = 1 + rng.below(3) as usize;
    let mut shuffled = g.vertices().to_vec();
    rng.shuffle(&mut shuffled);
    let mut clusters: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut home: BTreeMap<&String, String> = BTreeMap::new();
    let mut at = 0;
    let mut id = 0;
    while at < shuffled.len() {
        let take = (1 + rng.below(cap as u64) as usize).min(shuffled.len() - at);
        let name = format!("K{id}");
        for v in &shuffled[at..at + take] {
            clusters.entry(name.clone()).or_default().insert(v.clone());
            home.insert(v, name.clone());
        }
        at += take;
        id += 1;
    }
    let mut adj: BTreeSet<(String, String)> = BTreeSet::new();
    for (u, v) in g.edges() {
        let (cu, cv) = (&home[&u], &home[&v]);
        if cu != cv {
            adj.insert((cu.min(cv).clone(), cu.max(cv).clone()));
        }
    }
    let adjacency = Graph::new(
        clusters.keys().cloned().collect::<Vec<_>>(),
        adj.into_iter().collect::<Vec<_>>(),
    )?;
    let k = clusters.values().map(|c| c.len()).max().unwrap_or(1);
    let c = ClusterStructure { g, clusters, cluster_adjacency: adjacency };
    Ok((c, k))
}

/// A random arrangement: named curves sharing pairwise crossing events,
/// each event on exactly two distinct curves.
pub fn random_curves(rng: &mut Rng) -> CurveArrangement {
    let nc = 2 + rng.below(4) as usize;
    let names: Vec<String> = (0..nc).map(|i| format!("s{i}")).collect();
    let mut curves: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for name in &names {
        curves.insert(name.clone(), Vec::new());
    }
    for ev in 0..rng.below(9) {
        let i = rng.below(nc as u64) as usize;
        let mut j = rng.below(nc as u64) as usize;
        if i == j {
            j = (j + 1) % nc;
        }
        let event = format!("e{ev}");
        curves.get_mut(&names[i]).unwrap().push(event.clone());
        curves.get_mut(&names[j]).unwrap().push(event);
    }
    CurveArrangement { curves }
}

/// Splits each vertex's incident edges into one or two fan-bundles, builds
/// the skeleton drawing, and crosses random segment pairs from distinct
/// origins. Returns the structure with its measured per-segment crossing
/// bound.
pub fn random_bundles(rng: &mut Rng) -> Result<(BundleStructure, u64)> {
    let n = 4 + rng.below(4) as usize;
    let extra = rng.below(3) as usize;
    let g = random_connected_graph(rng, n, extra);
    let mut bundles: BTreeMap<String, Bundle> = BTreeMap::new();
    let mut at: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut counter = 0;
    for i in 0..g.vertex_count() {
        let origin = g.name(i).to_string();
        let mut incident: Vec<String> = g
            .neighbors_idx(i)
            .map(|x| g.name(x).to_string())
            .collect();
        if incident.is_empty() {
            continue;
        }
        rng.shuffle(&mut incident);
        let split = if incident.len() >= 2 && rng.chance(1, 2) {
            1 + rng.below(incident.len() as u64 - 1) as usize
        } else {
            incident.len()
        };
        for part in [&incident[..split], &incident[split..]] {
            if part.is_empty() {
                continue;
            }
            let id = format!("B{counter}");
            counter += 1;
            let edges = part
                .iter()
                .map(|other| (origin.clone(), other.clone()))
                .collect();
            for other in part {
                at.insert((origin.clone(), other.clone()), id.clone());
            }
            bundles.insert(id, Bundle { origin: origin.clone(), edges });
        }
    }
    let mut verts: Vec<String> = g.vertices().to_vec();
    verts.extend(bundles.keys().cloned());
    let mut skel_edges: Vec<(String, String)> = Vec::new();
    let mut segments: Vec<(String, String)> = Vec::new();
    for (id, bundle) in &bundles {
        skel_edges.push((bundle.origin.clone(), id.clone()));
        segments.push((bundle.origin.clone(), id.clone()));
    }
    for (u, v) in g.edges() {
        skel_edges.push((at[&(u.clone(), v.clone())].clone(), at[&(v, u)].clone()));
    }
    let skeleton = Graph::new(verts, skel_edges)?;

    let mut crossings = Vec::new();
    let cap = 1 + rng.below(3);
    let mut per_seg: BTreeMap<(String, String), u64> = BTreeMap::new();
    let mut used_pos: BTreeMap<(String, String), BTreeSet<i64>> = BTreeMap::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    let target = rng.below(5) as usize;
    let mut tries = 0;
    while crossings.len() < target && tries < 40 && segments.len() >= 2 {
        tries += 1;
        let i = rng.below(segments.len() as u64) as usize;
        let j = rng.below(segments.len() as u64) as usize;
        if i == j || segments[i].0 == segments[j].0 {
            continue;
        }
        if !seen.insert((i.min(j), i.max(j))) {
            continue;
        }
        let a = segments[i].clone();
        let b = segments[j].clone();
        if per_seg.get(&a).copied().unwrap_or(0) >= cap
            || per_seg.get(&b).copied().unwrap_or(0) >= cap
        {
            continue;
        }
        *per_seg.entry(a.clone()).or_default() += 1;
        *per_seg.entry(b.clone()).or_default() += 1;
        let pos_a = fresh_pos(rng, used_pos.entry(a.clone()).or_default());
        let pos_b = fresh_pos(rng, used_pos.entry(b.clone()).or_default());
        crossings.push(Crossing { a, b, pos_a, pos_b, side: None });
    }
    let k = per_seg.values().copied().max().unwrap_or(0);
    let embedded = EmbeddedGraph { base: skeleton, crossings, simple: true };
    crossing_orders(&embedded)?;
    Ok((BundleStructure { graph: g, bundles, embedded }, k))
}

fn pair_bit(i: usize, j: usize) -> usize {
    j * (j - 1) / 2 + i
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn rec(cur: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in at..cur.len() {
            cur.swap(at, i);
            rec(cur, at + 1, out);
            cur.swap(at, i);
        }
    }
    rec(&mut cur, 0, &mut out);
    out
}

fn canonical_mask(mask: u64, n: usize, perms: &[Vec<usize>]) -> u64 {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if mask >> pair_bit(i, j) & 1 == 1 {
                pairs.push((i, j));
            }
        }
    }
    let mut best = u64::MAX;
    for p in perms {
        let mut img = 0u64;
        for &(i, j) in &pairs {
            let (a, b) = (p[i], p[j]);
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            img |= 1 << pair_bit(a, b);
        }
        if img < best {
            best = img;
        }
    }
    best
}

/// Every graph on `n` vertices up to isomorphism, as graphs on
/// `"0".."n-1"`, built by vertex augmentation with a minimum-bitmask
/// canonical form. Capped at eight vertices.
pub fn enumerate_graph_classes(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::Resource(format!(
            "enumeration of {n}-vertex graphs is out of reach; the cap is 8"
        )));
    }
    if n == 0 {
        return Ok(vec![Graph::empty()]);
    }
    let mut masks: Vec<u64> = vec![0];
    for k in 1..n {
        let perms = permutations(k + 1);
        let mut next: BTreeSet<u64> = BTreeSet::new();
        for &m in &masks {
            for sub in 0u64..(1u64 << k) {
                let mut cand = m;
                for i in 0..k {
                    if sub >> i & 1 == 1 {
                        cand |= 1 << pair_bit(i, k);
                    }
                }
                next.insert(canonical_mask(cand, k + 1, &perms));
            }
        }
        masks = next.into_iter().collect();
    }
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Ok(masks
        .iter()
        .map(|&m| {
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    if m >> pair_bit(i, j) & 1 == 1 {
                        edges.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
            Graph::new(names.clone(), edges).expect("masks encode simple graphs")
        })
        .collect())
}
