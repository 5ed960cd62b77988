//! Tree decompositions, an exact treewidth oracle, normalised
//! decompositions, and dual vertex partitions.
//!
//! The normalised form is the one the quotient engine consumes: the tree's
//! node set *is* the vertex set of the decomposed graph, every vertex roots
//! its own bag-subtree (T1), and the endpoints of every edge are
//! ancestor-related (T2).

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::products::{complete_graph, product_id, strong_product};
use crate::{input_err, reject, Error, Graph, Result};

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub tree: Graph,
    pub root: String,
    pub bags: BTreeMap<String, BTreeSet<String>>,
}

impl TreeDecomposition {
    pub fn bag(&self, node: &str) -> BTreeSet<String> {
        self.bags.get(node).cloned().unwrap_or_default()
    }

    /// Width as declared by the bags: largest bag size minus one.
    pub fn width(&self) -> i64 {
        self.tree
            .vertices()
            .iter()
            .map(|x| self.bag(x).len() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }
}

/// Parent/depth view of a rooted tree. Shared by the verifiers and the
/// quotient engine's ancestor tests.
#[derive(Clone, Debug)]
pub struct RootedTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<u64>,
    /// Vertices in BFS order from the root.
    pub order: Vec<usize>,
}

impl RootedTree {
    /// Roots `tree` at `root`; errors unless `tree` is in fact a tree.
    pub fn build(tree: &Graph, root: &str) -> Result<RootedTree> {
        let n = tree.vertex_count();
        if n == 0 {
            return Err(Error::Precondition("tree has no nodes".into()));
        }
        if tree.edge_count() != n - 1 {
            return Err(Error::Precondition(format!(
                "tree has {} edges on {} nodes",
                tree.edge_count(),
                n
            )));
        }
        let r = tree
            .idx(root)
            .ok_or_else(|| Error::Precondition(format!("root {root:?} is not a tree node")))?;
        let mut parent = vec![None; n];
        let mut depth = vec![0u64; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[r] = true;
        let mut queue = VecDeque::from([r]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for v in tree.neighbors_idx(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    depth[v] = depth[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if order.len() != n {
            return Err(Error::Precondition("tree is disconnected".into()));
        }
        Ok(RootedTree { root: r, parent, depth, order })
    }

    /// True when `a` is an ancestor of `b` (inclusive).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        let mut cur = b;
        loop {
            if cur == a {
                return true;
            }
            match self.parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Strict ancestors of `b`, nearest first.
    pub fn ancestors(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = b;
        while let Some(p) = self.parent[cur] {
            out.push(p);
            cur = p;
        }
        out
    }
}

/// Checks the tree-decomposition axioms for `td` against `g` and returns the
/// width. Structural faults (not a tree, bad root) are precondition errors;
/// axiom violations are rejections naming the axiom.
pub fn verify_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<i64> {
    let rt = RootedTree::build(&td.tree, &td.root)?;
    for node in td.bags.keys() {
        if !td.tree.has_vertex(node) {
            return input_err(format!("bag listed for unknown tree node {node:?}"));
        }
    }
    for (node, bag) in &td.bags {
        for v in bag {
            if !g.has_vertex(v) {
                return reject(format!("bag at {node:?} contains unknown vertex {v:?}"));
            }
        }
    }
    // Occurrence subtrees: nonempty and connected.
    let n = td.tree.vertex_count();
    for v in g.vertices() {
        let occ: Vec<usize> = (0..n)
            .filter(|&x| td.bags.get(td.tree.name(x)).is_some_and(|b| b.contains(v)))
            .collect();
        if occ.is_empty() {
            return reject(format!("vertex {v:?} appears in no bag"));
        }
        // Connectivity: walking each occurrence up to the minimum-depth
        // occurrence must stay inside the occurrence set.
        let occ_set: BTreeSet<usize> = occ.iter().copied().collect();
        let top = *occ.iter().min_by_key(|&&x| rt.depth[x]).unwrap();
        for &x in &occ {
            let mut cur = x;
            while cur != top {
                match rt.parent[cur] {
                    Some(p) if occ_set.contains(&p) => cur = p,
                    _ => {
                        return reject(format!(
                            "bags containing {v:?} do not form a connected subtree"
                        ))
                    }
                }
            }
        }
    }
    for (u, v) in g.edges() {
        let covered = td
            .bags
            .values()
            .any(|bag| bag.contains(&u) && bag.contains(&v));
        if !covered {
            return reject(format!("edge ({u:?}, {v:?}) is covered by no bag"));
        }
    }
    Ok(td.width())
}

const TREEWIDTH_DEFAULT_LIMIT: usize = 14;
const TREEWIDTH_HARD_LIMIT: usize = 22;

/// Vertices outside `inside ∪ {v}` reachable from `v` along paths whose
/// internal vertices all lie in `inside`. This is exactly the neighbourhood
/// of `v` after eliminating `inside`.
fn elimination_neighbors(g: &Graph, inside: u32, v: usize) -> Vec<usize> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut stack = vec![v];
    let mut out = Vec::new();
    while let Some(u) = stack.pop() {
        for w in g.neighbors_idx(u) {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            if inside >> w & 1 == 1 {
                stack.push(w);
            } else {
                out.push(w);
            }
        }
    }
    out
}

/// Exact treewidth by dynamic programming over elimination prefixes, with a
/// witnessing tree decomposition rebuilt from the recovered elimination
/// order. The default budget is 14 vertices; raising it past 22 is refused
/// outright (the table is `2^n`).
pub fn exact_treewidth(g: &Graph, budget: Option<usize>) -> Result<(i64, TreeDecomposition)> {
    let n = g.vertex_count();
    if n == 0 {
        return input_err("treewidth of the empty graph is not defined here");
    }
    let limit = budget.unwrap_or(TREEWIDTH_DEFAULT_LIMIT);
    if n > limit {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, oracle budget is {limit}"
        )));
    }
    if n > TREEWIDTH_HARD_LIMIT {
        return Err(Error::Resource(format!(
            "graph has {n} vertices, hard oracle ceiling is {TREEWIDTH_HARD_LIMIT}"
        )));
    }

    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    // dp[s] = best possible maximum elimination degree over orders of the
    // vertex set `s`, eliminating `s` first.
    let mut dp = vec![i32::MAX; full as usize + 1];
    let mut choice = vec![u8::MAX; full as usize + 1];
    dp[0] = -1;
    for s in 1..=full {
        let mut best = i32::MAX;
        let mut pick = u8::MAX;
        for v in 0..n {
            if s >> v & 1 == 0 {
                continue;
            }
            let rest = s & !(1 << v);
            let deg = elimination_neighbors(g, rest, v).len() as i32;
            let cand = dp[rest as usize].max(deg);
            if cand < best {
                best = cand;
                pick = v as u8;
            }
        }
        dp[s as usize] = best;
        choice[s as usize] = pick;
    }
    let width = dp[full as usize] as i64;

    // Recover the elimination order: choice[s] is eliminated last within s.
    let mut order = vec![0usize; n];
    let mut s = full;
    for i in (0..n).rev() {
        let v = choice[s as usize] as usize;
        order[i] = v;
        s &= !(1 << v);
    }

    // Bags: vertex plus its elimination neighbourhood; parent: the
    // first-eliminated vertex of the rest of the bag, falling back to the
    // next vertex in the order so disconnected pieces still chain up.
    let mut pos = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut bags = BTreeMap::new();
    let mut edges = Vec::new();
    let mut prefix: u32 = 0;
    for (i, &v) in order.iter().enumerate() {
        let nb = elimination_neighbors(g, prefix, v);
        let parent = nb
            .iter()
            .copied()
            .min_by_key(|&w| pos[w])
            .or((i + 1 < n).then(|| order[i + 1]));
        if let Some(p) = parent {
            edges.push((g.name(v).to_string(), g.name(p).to_string()));
        }
        let mut bag: BTreeSet<String> = nb.iter().map(|&w| g.name(w).to_string()).collect();
        bag.insert(g.name(v).to_string());
        bags.insert(g.name(v).to_string(), bag);
        prefix |= 1 << v;
    }
    let td = TreeDecomposition {
        tree: Graph::new(g.vertices().to_vec(), edges)?,
        root: g.name(order[n - 1]).to_string(),
        bags,
    };
    let checked = verify_tree_decomposition(g, &td)
        .map_err(|e| Error::Construction(format!("treewidth witness: {e}")))?;
    if checked != width {
        return Err(Error::Construction(format!(
            "witness width {checked} disagrees with oracle value {width}"
        )));
    }
    Ok((width, td))
}

/// A tree decomposition whose node set equals the decomposed graph's vertex
/// set and which satisfies T1 and T2 (see [`check_t1`], [`check_t2`]).
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct NormalisedTreeDecomposition {
    pub td: TreeDecomposition,
}

/// T1: for every vertex `v`, the subtree of nodes whose bag contains `v` is
/// rooted at the node `v` itself.
pub fn check_t1(h: &Graph, ntd: &NormalisedTreeDecomposition) -> Result<()> {
    let rt = RootedTree::build(&ntd.td.tree, &ntd.td.root)?;
    for v in h.vertices() {
        let occ: Vec<usize> = (0..ntd.td.tree.vertex_count())
            .filter(|&x| ntd.td.bag(ntd.td.tree.name(x)).contains(v))
            .collect();
        if occ.is_empty() {
            return reject(format!("vertex {v:?} appears in no bag"));
        }
        let top = *occ.iter().min_by_key(|&&x| rt.depth[x]).unwrap();
        if ntd.td.tree.name(top) != v {
            return reject(format!(
                "bag subtree of {v:?} is rooted at {:?}, not at {v:?}",
                ntd.td.tree.name(top)
            ));
        }
    }
    Ok(())
}

/// T2: the endpoints of every edge of `h` are ancestor-related in the tree.
pub fn check_t2(h: &Graph, ntd: &NormalisedTreeDecomposition) -> Result<()> {
    let rt = RootedTree::build(&ntd.td.tree, &ntd.td.root)?;
    for (u, v) in h.edges() {
        let iu = ntd.td.tree.idx_of(&u)?;
        let iv = ntd.td.tree.idx_of(&v)?;
        if !rt.is_ancestor(iu, iv) && !rt.is_ancestor(iv, iu) {
            return reject(format!("edge ({u:?}, {v:?}) is not ancestor-related"));
        }
    }
    Ok(())
}

/// Full check for a normalised decomposition of `h`: ordinary validity, node
/// set equal to `V(h)`, T1 and T2. Returns the width.
pub fn verify_normalised(h: &Graph, ntd: &NormalisedTreeDecomposition) -> Result<i64> {
    let width = verify_tree_decomposition(h, &ntd.td)?;
    let nodes: BTreeSet<&String> = ntd.td.tree.vertices().iter().collect();
    let verts: BTreeSet<&String> = h.vertices().iter().collect();
    if nodes != verts {
        return reject("tree node set differs from the vertex set".to_string());
    }
    check_t1(h, ntd)?;
    check_t2(h, ntd)?;
    Ok(width)
}

/// Rebuilds `td` into normalised form without increasing the width.
///
/// Each vertex is assigned to the highest tree node whose bag contains it;
/// nodes are then replaced by chains of their assigned vertices (sorted), and
/// a vertex's bag drops the assigned vertices that sit later in its own
/// chain. Nodes with no assigned vertex are contracted away.
pub fn normalise(h: &Graph, td: &TreeDecomposition) -> Result<NormalisedTreeDecomposition> {
    if h.vertex_count() == 0 {
        return input_err("cannot normalise a decomposition of the empty graph");
    }
    let width_in = verify_tree_decomposition(h, td)
        .map_err(|e| Error::Precondition(format!("input decomposition: {e}")))?;
    let rt = RootedTree::build(&td.tree, &td.root)?;
    let tn = td.tree.vertex_count();

    // top[v] = highest node whose bag contains v.
    let mut assigned: Vec<Vec<String>> = vec![Vec::new(); tn];
    for v in h.vertices() {
        let top = (0..tn)
            .filter(|&x| td.bag(td.tree.name(x)).contains(v))
            .min_by_key(|&x| rt.depth[x])
            .expect("verified decomposition covers every vertex");
        assigned[top].push(v.clone());
    }
    for list in &mut assigned {
        list.sort();
    }

    // Walk the tree top-down; anchor[x] = deepest already-built node above x.
    let mut anchor: Vec<Option<String>> = vec![None; tn];
    let mut global_root: Option<String> = None;
    let mut edges: Vec<(String, String)> = Vec::new();
    let mut bags: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for &x in &rt.order {
        let above = match rt.parent[x] {
            Some(p) => anchor[p].clone(),
            None => None,
        };
        let chain = &assigned[x];
        if chain.is_empty() {
            anchor[x] = above;
            continue;
        }
        let full_bag = td.bag(td.tree.name(x));
        for (i, v) in chain.iter().enumerate() {
            let mut bag = full_bag.clone();
            for later in &chain[i + 1..] {
                bag.remove(later);
            }
            bags.insert(v.clone(), bag);
            let up = if i > 0 { Some(chain[i - 1].clone()) } else { above.clone() };
            match up {
                Some(u) => edges.push((u, v.clone())),
                None => match &global_root {
                    None => global_root = Some(v.clone()),
                    // A second top-level chain (the original root's bag was
                    // empty): hang it under the chosen root.
                    Some(r) => edges.push((r.clone(), v.clone())),
                },
            }
        }
        anchor[x] = Some(chain[chain.len() - 1].clone());
    }

    let out = NormalisedTreeDecomposition {
        td: TreeDecomposition {
            tree: Graph::new(h.vertices().to_vec(), edges)?,
            root: global_root.expect("some vertex exists"),
            bags,
        },
    };
    let width_out = verify_normalised(h, &out)
        .map_err(|e| Error::Construction(format!("normalised decomposition: {e}")))?;
    if width_out > width_in {
        return Err(Error::Construction(format!(
            "normalisation increased width from {width_in} to {width_out}"
        )));
    }
    Ok(out)
}

/// Blows up a decomposition of `g` into one of `g ⊠ K_n` by replacing every
/// bag element `v` with the whole column `{v|0, ..., v|n-1}`.
pub fn product_tree_decomposition(
    g: &Graph,
    td: &TreeDecomposition,
    n: usize,
) -> Result<TreeDecomposition> {
    if n == 0 {
        return input_err("clique factor must have at least one vertex");
    }
    verify_tree_decomposition(g, td)
        .map_err(|e| Error::Precondition(format!("input decomposition: {e}")))?;
    let product = strong_product(g, &complete_graph(n))?;
    let bags = td
        .tree
        .vertices()
        .iter()
        .map(|x| {
            let blown: BTreeSet<String> = td
                .bag(x)
                .iter()
                .flat_map(|v| (0..n).map(move |i| product_id(v, &i.to_string())))
                .collect();
            (x.clone(), blown)
        })
        .collect();
    let out = TreeDecomposition { tree: td.tree.clone(), root: td.root.clone(), bags };
    verify_tree_decomposition(&product, &out)
        .map_err(|e| Error::Construction(format!("product decomposition: {e}")))?;
    Ok(out)
}

/// Dual partition of a graph's vertices indexed by two quotient graphs. The
/// width is the largest intersection of a part from each side.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct HLPartition {
    #[serde(rename = "quotientH")]
    pub quotient_h: Graph,
    #[serde(rename = "quotientL")]
    pub quotient_l: Graph,
    #[serde(rename = "partY")]
    pub part_y: BTreeMap<String, BTreeSet<String>>,
    #[serde(rename = "partZ")]
    pub part_z: BTreeMap<String, BTreeSet<String>>,
    pub width: u64,
}

fn check_partition(
    g: &Graph,
    quotient: &Graph,
    parts: &BTreeMap<String, BTreeSet<String>>,
    side: &str,
) -> Result<BTreeMap<String, String>> {
    for key in parts.keys() {
        if !quotient.has_vertex(key) {
            return input_err(format!("{side} part key {key:?} is not a quotient vertex"));
        }
    }
    let mut owner: BTreeMap<String, String> = BTreeMap::new();
    for (key, members) in parts {
        for v in members {
            if !g.has_vertex(v) {
                return reject(format!("{side} part {key:?} contains unknown vertex {v:?}"));
            }
            if let Some(prev) = owner.insert(v.clone(), key.clone()) {
                return reject(format!(
                    "vertex {v:?} lies in {side} parts {prev:?} and {key:?}"
                ));
            }
        }
    }
    for v in g.vertices() {
        if !owner.contains_key(v) {
            return reject(format!("vertex {v:?} is in no {side} part"));
        }
    }
    Ok(owner)
}

/// Verifies an `(H, L)`-partition against `g` and returns the (recomputed)
/// width, which must match the declared one.
pub fn verify_hl_partition(g: &Graph, p: &HLPartition) -> Result<u64> {
    let y_of = check_partition(g, &p.quotient_h, &p.part_y, "H")?;
    let z_of = check_partition(g, &p.quotient_l, &p.part_z, "L")?;
    for (u, v) in g.edges() {
        let (yu, yv) = (&y_of[&u], &y_of[&v]);
        if yu != yv && !p.quotient_h.has_edge(yu, yv) {
            return reject(format!(
                "edge ({u:?}, {v:?}) joins non-adjacent H parts {yu:?}, {yv:?}"
            ));
        }
        let (zu, zv) = (&z_of[&u], &z_of[&v]);
        if zu != zv && !p.quotient_l.has_edge(zu, zv) {
            return reject(format!(
                "edge ({u:?}, {v:?}) joins non-adjacent L parts {zu:?}, {zv:?}"
            ));
        }
    }
    let mut cells: BTreeMap<(&String, &String), u64> = BTreeMap::new();
    for v in g.vertices() {
        *cells.entry((&y_of[v], &z_of[v])).or_default() += 1;
    }
    let width = cells.values().copied().max().unwrap_or(0);
    if width != p.width {
        return reject(format!("declared width {} but measured {width}", p.width));
    }
    Ok(width)
}

/// Reads an `(H, L)`-partition off an embedding into `h ⊠ l ⊠ K_ell`.
pub fn partition_from_embedding(
    guest: &Graph,
    w: &crate::products::EmbeddingWitness,
    h: &Graph,
    l: &Graph,
    ell: usize,
) -> Result<HLPartition> {
    crate::products::verify_embedding(guest, w)
        .map_err(|e| Error::Precondition(format!("embedding witness: {e}")))?;
    crate::products::check_factor(h, "first")?;
    crate::products::check_factor(l, "second")?;
    let expected = strong_product(&strong_product(h, l)?, &complete_graph(ell))?;
    if w.host != expected {
        return input_err("embedding host is not the product of the supplied factors");
    }
    let mut part_y: BTreeMap<String, BTreeSet<String>> =
        h.vertices().iter().map(|y| (y.clone(), BTreeSet::new())).collect();
    let mut part_z: BTreeMap<String, BTreeSet<String>> =
        l.vertices().iter().map(|z| (z.clone(), BTreeSet::new())).collect();
    let mut cells: BTreeMap<(String, String), u64> = BTreeMap::new();
    for (v, img) in &w.injection {
        let parts: Vec<&str> = img.split(crate::products::SEP).collect();
        let [y, z, _] = parts[..] else {
            return input_err(format!("image {img:?} does not have three coordinates"));
        };
        part_y.get_mut(y).unwrap().insert(v.clone());
        part_z.get_mut(z).unwrap().insert(v.clone());
        *cells.entry((y.to_string(), z.to_string())).or_default() += 1;
    }
    let width = cells.values().copied().max().unwrap_or(0);
    let p = HLPartition {
        quotient_h: h.clone(),
        quotient_l: l.clone(),
        part_y,
        part_z,
        width,
    };
    verify_hl_partition(guest, &p)
        .map_err(|e| Error::Construction(format!("derived partition: {e}")))?;
    if width as usize > ell {
        return Err(Error::Construction(format!(
            "cell of size {width} exceeds the clique factor {ell}"
        )));
    }
    Ok(p)
}

/// The converse direction: an `(H, L)`-partition of width `w` gives an
/// embedding into `quotientH ⊠ quotientL ⊠ K_w`.
pub fn embedding_from_partition(
    g: &Graph,
    p: &HLPartition,
) -> Result<crate::products::EmbeddingWitness> {
    verify_hl_partition(g, p).map_err(|e| Error::Precondition(format!("partition: {e}")))?;
    let mut y_of: BTreeMap<&String, &String> = BTreeMap::new();
    for (key, members) in &p.part_y {
        for v in members {
            y_of.insert(v, key);
        }
    }
    let mut z_of: BTreeMap<&String, &String> = BTreeMap::new();
    for (key, members) in &p.part_z {
        for v in members {
            z_of.insert(v, key);
        }
    }
    let mut cells: BTreeMap<(&String, &String), Vec<&String>> = BTreeMap::new();
    for v in g.vertices() {
        cells.entry((y_of[v], z_of[v])).or_default().push(v);
    }
    let mut injection = BTreeMap::new();
    for ((y, z), members) in &cells {
        for (i, v) in members.iter().enumerate() {
            let img = product_id(&product_id(y, z), &i.to_string());
            injection.insert((*v).clone(), img);
        }
    }
    let host = strong_product(
        &strong_product(&p.quotient_h, &p.quotient_l)?,
        &complete_graph(p.width as usize),
    )?;
    let w = crate::products::EmbeddingWitness { host, injection };
    crate::products::verify_embedding(g, &w)
        .map_err(|e| Error::Construction(format!("derived embedding: {e}")))?;
    Ok(w)
}

/// A layering together with a tree decomposition; the layered width counts
/// bag elements per layer.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LayeredTreeDecomposition {
    pub layering: Vec<BTreeSet<String>>,
    pub td: TreeDecomposition,
}

/// Verifies layering (a partition with edges inside or across consecutive
/// layers) plus the decomposition, returning the layered width.
pub fn verify_layered_td(g: &Graph, ltd: &LayeredTreeDecomposition) -> Result<u64> {
    let mut layer_of: BTreeMap<&String, usize> = BTreeMap::new();
    for (i, layer) in ltd.layering.iter().enumerate() {
        for v in layer {
            if !g.has_vertex(v) {
                return reject(format!("layer {i} contains unknown vertex {v:?}"));
            }
            if layer_of.insert(v, i).is_some() {
                return reject(format!("vertex {v:?} appears in two layers"));
            }
        }
    }
    for v in g.vertices() {
        if !layer_of.contains_key(v) {
            return reject(format!("vertex {v:?} is in no layer"));
        }
    }
    for (u, v) in g.edges() {
        let (lu, lv) = (layer_of[&u], layer_of[&v]);
        if lu.abs_diff(lv) > 1 {
            return reject(format!(
                "edge ({u:?}, {v:?}) spans layers {lu} and {lv}"
            ));
        }
    }
    verify_tree_decomposition(g, &ltd.td)?;
    let mut width = 0u64;
    for bag in ltd.td.bags.values() {
        for layer in &ltd.layering {
            width = width.max(bag.intersection(layer).count() as u64);
        }
    }
    Ok(width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{complete_graph, cycle_graph, grid_graph, path_graph};

    fn td_of(tree: Graph, root: &str, bags: &[(&str, &[&str])]) -> TreeDecomposition {
        TreeDecomposition {
            tree,
            root: root.to_string(),
            bags: bags
                .iter()
                .map(|(n, b)| {
                    (n.to_string(), b.iter().map(|v| v.to_string()).collect())
                })
                .collect(),
        }
    }

    #[test]
    fn verifier_accepts_a_path_decomposition() {
        let g = path_graph(3);
        let td = td_of(
            path_graph(2),
            "0",
            &[("0", &["0", "1"]), ("1", &["1", "2"])],
        );
        assert_eq!(verify_tree_decomposition(&g, &td).unwrap(), 1);
    }

    #[test]
    fn verifier_names_the_violated_axiom() {
        let g = path_graph(3);
        // Vertex 2 missing.
        let td = td_of(path_graph(2), "0", &[("0", &["0", "1"]), ("1", &["1"])]);
        let err = verify_tree_decomposition(&g, &td).unwrap_err();
        assert!(err.to_string().contains("no bag"), "{err}");
        // Edge (1, 2) uncovered.
        let td = td_of(path_graph(2), "0", &[("0", &["0", "1"]), ("1", &["2"])]);
        let err = verify_tree_decomposition(&g, &td).unwrap_err();
        assert!(err.to_string().contains("covered by no bag"), "{err}");
        // Disconnected occurrence subtree.
        let td = td_of(
            path_graph(3),
            "0",
            &[("0", &["0", "1"]), ("1", &["1", "2"]), ("2", &["0", "2"])],
        );
        let err = verify_tree_decomposition(&g, &td).unwrap_err();
        assert!(err.to_string().contains("connected subtree"), "{err}");
        // Not a tree at all.
        let td = td_of(cycle_graph(3), "0", &[("0", &["0", "1", "2"])]);
        assert!(matches!(
            verify_tree_decomposition(&g, &td),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn exact_treewidth_fixtures() {
        assert_eq!(exact_treewidth(&path_graph(1), None).unwrap().0, 0);
        assert_eq!(exact_treewidth(&path_graph(6), None).unwrap().0, 1);
        assert_eq!(exact_treewidth(&cycle_graph(6), None).unwrap().0, 2);
        assert_eq!(exact_treewidth(&complete_graph(5), None).unwrap().0, 4);
        assert_eq!(exact_treewidth(&grid_graph(3, 3), None).unwrap().0, 3);
        // Disconnected: the larger component wins.
        let g = Graph::new(
            ["a", "b", "c", "x"],
            [("a", "b"), ("b", "c"), ("a", "c")],
        )
        .unwrap();
        assert_eq!(exact_treewidth(&g, None).unwrap().0, 2);
    }

    #[test]
    fn exact_treewidth_respects_budget() {
        let g = grid_graph(4, 4);
        assert!(matches!(exact_treewidth(&g, None), Err(Error::Resource(_))));
        assert_eq!(exact_treewidth(&g, Some(16)).unwrap().0, 4);
    }

    #[test]
    fn oracle_never_beats_a_valid_decomposition() {
        // The witness from one graph's oracle run is itself a valid
        // decomposition whose width equals the oracle value.
        for g in [path_graph(5), cycle_graph(5), grid_graph(2, 4)] {
            let (w, td) = exact_treewidth(&g, None).unwrap();
            assert_eq!(verify_tree_decomposition(&g, &td).unwrap(), w);
        }
    }

    #[test]
    fn normalise_single_vertex() {
        let g = path_graph(1);
        let td = td_of(path_graph(1), "0", &[("0", &["0"])]);
        let ntd = normalise(&g, &td).unwrap();
        assert_eq!(verify_normalised(&g, &ntd).unwrap(), 0);
        assert_eq!(ntd.td.root, "0");
    }

    #[test]
    fn normalise_preserves_width_on_fixtures() {
        for g in [path_graph(6), cycle_graph(6), grid_graph(3, 3), complete_graph(4)] {
            let (w, td) = exact_treewidth(&g, None).unwrap();
            let ntd = normalise(&g, &td).unwrap();
            let wn = verify_normalised(&g, &ntd).unwrap();
            assert!(wn <= w, "width grew: {wn} > {w}");
        }
    }

    #[test]
    fn normalise_handles_bags_shared_by_many_vertices() {
        // One fat bag: the whole K_4 in a single node, plus a pendant node.
        let g = complete_graph(4);
        let td = td_of(
            path_graph(2),
            "0",
            &[("0", &["0", "1", "2", "3"]), ("1", &["3"])],
        );
        let ntd = normalise(&g, &td).unwrap();
        assert_eq!(verify_normalised(&g, &ntd).unwrap(), 3);
    }

    #[test]
    fn t1_and_t2_reject_plain_decompositions() {
        // A valid decomposition of P_3 whose tree nodes are not vertices.
        let g = path_graph(3);
        let td = td_of(
            Graph::new(["n0", "n1"], [("n0", "n1")]).unwrap(),
            "n0",
            &[("n0", &["0", "1"]), ("n1", &["1", "2"])],
        );
        let ntd = NormalisedTreeDecomposition { td };
        assert!(verify_normalised(&g, &ntd).is_err());
    }

    #[test]
    fn product_decomposition_of_a_path() {
        let g = path_graph(4);
        let (_, td) = exact_treewidth(&g, None).unwrap();
        let blown = product_tree_decomposition(&g, &td, 3).unwrap();
        let product = strong_product(&g, &complete_graph(3)).unwrap();
        // Width (t+1)n - 1 = 2*3 - 1.
        assert_eq!(verify_tree_decomposition(&product, &blown).unwrap(), 5);
    }

    #[test]
    fn partition_round_trip_through_embedding() {
        let h = path_graph(3);
        let l = path_graph(2);
        let host = strong_product(&strong_product(&h, &l).unwrap(), &complete_graph(2)).unwrap();
        let g = host.clone();
        let w = crate::products::EmbeddingWitness {
            host,
            injection: g.vertices().iter().map(|v| (v.clone(), v.clone())).collect(),
        };
        let p = partition_from_embedding(&g, &w, &h, &l, 2).unwrap();
        assert_eq!(p.width, 2);
        let back = embedding_from_partition(&g, &p).unwrap();
        crate::products::verify_embedding(&g, &back).unwrap();
    }

    #[test]
    fn hl_partition_rejections() {
        let g = path_graph(2);
        let q = path_graph(1);
        // Both vertices to the one part: fine for H, but use a non-edge L.
        let p = HLPartition {
            quotient_h: q.clone(),
            quotient_l: Graph::new(["a", "b"], Vec::<(String, String)>::new()).unwrap(),
            part_y: [("0".to_string(), ["0", "1"].map(String::from).into())].into(),
            part_z: [
                ("a".to_string(), ["0"].map(String::from).into()),
                ("b".to_string(), ["1"].map(String::from).into()),
            ]
            .into(),
            width: 1,
        };
        let err = verify_hl_partition(&g, &p).unwrap_err();
        assert!(err.to_string().contains("non-adjacent L parts"), "{err}");
    }

    #[test]
    fn layered_width_of_a_grid() {
        let g = grid_graph(3, 3);
        let (_, td) = exact_treewidth(&g, None).unwrap();
        let layering = (0..3)
            .map(|x| (0..3).map(|y| format!("{x},{y}")).collect())
            .collect();
        let ltd = LayeredTreeDecomposition { layering, td };
        let w = verify_layered_td(&g, &ltd).unwrap();
        assert!(w >= 1 && w <= 4);
        // A layering that splits an edge across distant layers is rejected.
        let bad = LayeredTreeDecomposition {
            layering: vec![
                ["0,0"].map(String::from).into(),
                BTreeSet::new(),
                g.vertices().iter().filter(|v| *v != "0,0").cloned().collect(),
            ],
            td: ltd.td.clone(),
        };
        assert!(verify_layered_td(&g, &bad).is_err());
    }
}
