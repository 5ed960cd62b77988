//! The quotient machine: product structure for shallow minors.
//!
//! Input: a host `G` with an `(H, L)`-partition of width `ell`, a normalised
//! tree-decomposition of `H` of width `t`, and a depth-`r` minor model of some
//! guest `G'` in `G`. Output: a quotient graph `J` of the guest, a
//! tree-decomposition of `J` over the same tree with bags of at most
//! `C(2r+1+t, t)` parts, and a `(J, L^{2r+1})`-partition of the guest of width
//! at most `ell * (k + 1)`, where `k` is the maximum degree of the `r`-th
//! power of `L`. Together these witness that the guest lives in
//! `J ⊠ L^{2r+1} ⊠ K_{ell(k+1)}`.
//!
//! The construction hangs on four internal claims (each branch set has an
//! ancestral part, the quotient cells stay small, quotient edges respect the
//! tree order, the walked bags stay within the binomial budget). Violations
//! cannot occur once the input verifies, so they surface as construction
//! errors carrying the claim number. [`gpst_shallow`] runs the machine for
//! hosts of the form `H ⊠ P ⊠ K_ell` with `P` a path and flattens the result
//! into a row-treewidth witness.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::bounds::binomial;
use crate::decomp::{
    product_tree_decomposition, verify_hl_partition, verify_normalised,
    verify_tree_decomposition, HLPartition, NormalisedTreeDecomposition, RootedTree,
    TreeDecomposition,
};
use crate::graph::{graph_power, graph_power_or_edgeless};
use crate::minors::{verify_model, MinorModel};
use crate::products::{
    complete_graph, path_graph, product_id, strong_product, verify_embedding, EmbeddingWitness,
};
use crate::{input_err, Error, Graph, Result};

/// Everything the quotient machine consumes, bundled for serialization.
/// The cached `k` is optional; when present it must match the recomputed
/// value.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EngineInput {
    pub g: Graph,
    pub partition: HLPartition,
    #[serde(rename = "hTD")]
    pub h_td: NormalisedTreeDecomposition,
    pub model: MinorModel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u64>,
}

impl EngineInput {
    /// Bundles and fully verifies an input, caching the measured `k`.
    pub fn new(
        g: Graph,
        partition: HLPartition,
        h_td: NormalisedTreeDecomposition,
        model: MinorModel,
    ) -> Result<EngineInput> {
        let mut input = EngineInput { g, partition, h_td, model, k: None };
        let params = verify_engine_input(&input)?;
        input.k = Some(params.k);
        Ok(input)
    }
}

/// The four numbers the machine's bounds are phrased in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineParams {
    /// Width of the `(H, L)`-partition of the host.
    pub ell: u64,
    /// Width of the normalised tree-decomposition of `H`.
    pub t: u64,
    /// Declared depth of the minor model.
    pub r: u64,
    /// Maximum degree of the `r`-th power of `L` (zero when `r = 0`).
    pub k: u64,
}

/// Checks every piece of an [`EngineInput`] against every other piece and
/// returns the derived parameters.
pub fn verify_engine_input(input: &EngineInput) -> Result<EngineParams> {
    let ell = verify_hl_partition(&input.g, &input.partition)?;
    let t_raw = verify_normalised(&input.partition.quotient_h, &input.h_td)?;
    let t = u64::try_from(t_raw.max(0)).expect("clamped width is non-negative");
    if input.model.host != input.g {
        return input_err("model host differs from the partitioned graph");
    }
    let r = input.model.declared_radius();
    verify_model(&input.model, Some(r))?;
    let k = graph_power_or_edgeless(&input.partition.quotient_l, r).max_degree();
    if let Some(cached) = input.k {
        if cached != k {
            return input_err(format!(
                "cached k = {cached} but the depth-{r} power of the layer graph has \
                 maximum degree {k}"
            ));
        }
    }
    Ok(EngineParams { ell, t, r, k })
}

/// For each guest vertex, the shallowest tree node among the `H`-parts its
/// branch set meets. Fails with claim 1 if the met parts are not all
/// descendants of that node.
fn compute_anchors(input: &EngineInput) -> Result<(RootedTree, BTreeMap<String, String>)> {
    let tree = &input.h_td.td.tree;
    let rt = RootedTree::build(tree, &input.h_td.td.root)?;
    let mut y_of: BTreeMap<&str, &str> = BTreeMap::new();
    for (part, members) in &input.partition.part_y {
        for m in members {
            y_of.insert(m, part);
        }
    }
    let mut out = BTreeMap::new();
    for (u, branch) in &input.model.branch {
        let mut met = BTreeSet::new();
        for v in branch {
            let part = y_of.get(v.as_str()).expect("partition covers every host vertex");
            met.insert(tree.idx_of(part)?);
        }
        let a = met
            .iter()
            .copied()
            .min_by_key(|&x| (rt.depth[x], x))
            .expect("branch sets are nonempty");
        for &x in &met {
            if !rt.is_ancestor(a, x) {
                return Err(Error::Construction(format!(
                    "claim 1: the parts met by the branch set of {u:?} have no common \
                     ancestral part"
                )));
            }
        }
        out.insert(u.clone(), tree.name(a).to_string());
    }
    Ok((rt, out))
}

/// The anchor part of one guest vertex: the part of the tree-decomposition
/// tree under which its whole branch set lives.
pub fn anchor(input: &EngineInput, u: &str) -> Result<String> {
    verify_engine_input(input)?;
    let (_, anchors) = compute_anchors(input)?;
    anchors
        .get(u)
        .cloned()
        .ok_or_else(|| Error::Input(format!("unknown guest vertex {u:?}")))
}

/// Measured values next to the limits the machine guarantees.
#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct EngineBounds {
    pub width_measured: u64,
    pub width_limit: u64,
    pub bag_measured: u64,
    pub bag_limit: u64,
}

/// The machine's full output: quotient graph, the grouping that produced it,
/// its tree-decomposition, and the re-indexed partition of the guest.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EngineOutput {
    #[serde(rename = "J")]
    pub j: Graph,
    #[serde(rename = "sPartition")]
    pub s_partition: BTreeMap<String, BTreeSet<String>>,
    #[serde(rename = "jTD")]
    pub j_td: TreeDecomposition,
    #[serde(rename = "lPrimePartition")]
    pub l_prime_partition: HLPartition,
    #[serde(rename = "asserted_bounds")]
    pub bounds: EngineBounds,
}

/// Runs the machine. Every product is re-verified before it is returned:
/// the quotient decomposition via [`verify_tree_decomposition`], the guest
/// partition via [`verify_hl_partition`], and the two bound inequalities
/// explicitly.
pub fn quotient_engine(input: &EngineInput) -> Result<EngineOutput> {
    let params = verify_engine_input(input)?;
    let (rt, anchor_of) = compute_anchors(input)?;
    let tree = &input.h_td.td.tree;

    let mut s_partition: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for (u, a) in &anchor_of {
        s_partition.entry(a.clone()).or_default().insert(u.clone());
    }
    let mut j_edges = Vec::new();
    for (u, v) in input.model.guest.edges() {
        let (au, av) = (&anchor_of[&u], &anchor_of[&v]);
        if au != av {
            j_edges.push((au.clone(), av.clone()));
        }
    }
    let j = Graph::new(s_partition.keys().cloned(), j_edges)?;
    for (a, b) in j.edges() {
        let (ai, bi) = (tree.idx_of(&a)?, tree.idx_of(&b)?);
        if !rt.is_ancestor(ai, bi) && !rt.is_ancestor(bi, ai) {
            return Err(Error::Construction(format!(
                "claim 3: quotient edge ({a:?}, {b:?}) joins parts that are not \
                 ancestor-related"
            )));
        }
    }

    let mut bags: BTreeMap<String, BTreeSet<String>> = tree
        .vertices()
        .iter()
        .map(|x| {
            let mut bag = BTreeSet::new();
            if j.has_vertex(x) {
                bag.insert(x.clone());
            }
            (x.clone(), bag)
        })
        .collect();
    for (a, b) in j.edges() {
        let (ai, bi) = (tree.idx_of(&a)?, tree.idx_of(&b)?);
        let (anc, anc_idx, mut cur) =
            if rt.is_ancestor(ai, bi) { (a, ai, bi) } else { (b, bi, ai) };
        while cur != anc_idx {
            bags.get_mut(tree.name(cur)).unwrap().insert(anc.clone());
            cur = rt.parent[cur].expect("the walk stays below an ancestor");
        }
    }
    let j_td =
        TreeDecomposition { tree: tree.clone(), root: input.h_td.td.root.clone(), bags };
    let bag_limit_exact = binomial(2 * params.r + 1 + params.t, params.t);
    let bag_limit = u64::try_from(&bag_limit_exact)
        .map_err(|_| Error::Resource("bag budget exceeds machine integers".into()))?;
    let mut bag_measured = 0;
    for (x, bag) in &j_td.bags {
        let size = bag.len() as u64;
        if size > bag_limit {
            return Err(Error::Construction(format!(
                "claim 4: bag at {x:?} holds {size} parts, above the C(2r+1+t, t) = \
                 {bag_limit} budget"
            )));
        }
        bag_measured = bag_measured.max(size);
    }
    verify_tree_decomposition(&j, &j_td)
        .map_err(|e| Error::Construction(format!("quotient decomposition: {e}")))?;

    let l_power = graph_power(&input.partition.quotient_l, 2 * params.r + 1)?;
    let mut z_of: BTreeMap<&str, &str> = BTreeMap::new();
    for (part, members) in &input.partition.part_z {
        for m in members {
            z_of.insert(m, part);
        }
    }
    let mut part_z: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut cells: BTreeMap<(&String, &str), u64> = BTreeMap::new();
    for (u, a) in &anchor_of {
        let centre = &input.model.centre[u];
        let z = *z_of.get(centre.as_str()).expect("partition covers every host vertex");
        part_z.entry(z.to_string()).or_default().insert(u.clone());
        *cells.entry((a, z)).or_default() += 1;
    }
    let width_measured = cells.values().copied().max().unwrap_or(0);
    let width_limit = params.ell * (params.k + 1);
    let l_prime_partition = HLPartition {
        quotient_h: j.clone(),
        quotient_l: l_power,
        part_y: s_partition.clone(),
        part_z,
        width: width_measured,
    };
    verify_hl_partition(&input.model.guest, &l_prime_partition)
        .map_err(|e| Error::Construction(format!("re-indexing: {e}")))?;
    if width_measured > width_limit {
        return Err(Error::Construction(format!(
            "claim 2: some quotient cell holds {width_measured} guest vertices, above \
             the ell(k + 1) = {width_limit} budget"
        )));
    }

    let bounds = EngineBounds { width_measured, width_limit, bag_measured, bag_limit };
    Ok(EngineOutput { j, s_partition, j_td, l_prime_partition, bounds })
}

/// The vertices of `p` in path order, starting from the lexicographically
/// smaller endpoint.
pub fn path_order(p: &Graph) -> Result<Vec<String>> {
    let n = p.vertex_count();
    if n == 0 {
        return input_err("path factor has no vertices");
    }
    if n == 1 {
        return Ok(vec![p.vertices()[0].clone()]);
    }
    let not_path = || Error::Precondition("second factor is not a path".into());
    let mut ends = Vec::new();
    for i in 0..n {
        match p.degree_idx(i) {
            1 => ends.push(i),
            2 => {}
            _ => return Err(not_path()),
        }
    }
    if ends.len() != 2 {
        return Err(not_path());
    }
    let mut order = vec![ends[0]];
    let mut seen = vec![false; n];
    seen[ends[0]] = true;
    while order.len() < n {
        let cur = *order.last().unwrap();
        let Some(next) = p.neighbors_idx(cur).find(|&x| !seen[x]) else {
            return Err(not_path());
        };
        seen[next] = true;
        order.push(next);
    }
    Ok(order.into_iter().map(|i| p.name(i).to_string()).collect())
}

/// A row-treewidth witness produced by [`gpst_shallow`]: the guest embeds
/// into `J ⊠ P' ⊠ K_m` and `J ⊠ K_m` carries the supplied decomposition, so
/// the rows have treewidth at most `row_treewidth_bound`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GpstOutcome {
    pub witness: EmbeddingWitness,
    #[serde(rename = "productTD")]
    pub product_td: TreeDecomposition,
    #[serde(rename = "rowTreewidthBound")]
    pub row_treewidth_bound: u64,
    pub engine: EngineOutput,
}

/// Runs the machine on a host of the form `h ⊠ p ⊠ K_ell` with `p` a path,
/// then compresses the layer coordinate: `p^{2r+1}` lives in
/// `P' ⊠ K_{2r+1}` for the path `P'` on `ceil(|p| / (2r+1))` vertices, so the
/// guest embeds into `J ⊠ P' ⊠ K_{ell(2r+1)^2}` and its row treewidth is
/// below `C(2r+1+t, t) * ell * (2r+1)^2`.
pub fn gpst_shallow(
    model: &MinorModel,
    h: &Graph,
    p: &Graph,
    ell: usize,
    h_td: &NormalisedTreeDecomposition,
) -> Result<GpstOutcome> {
    if ell == 0 {
        return input_err("clique factor must have at least one vertex");
    }
    if h.vertex_count() == 0 {
        return input_err("first factor has no vertices");
    }
    let order = path_order(p)?;
    let expected = strong_product(&strong_product(h, p)?, &complete_graph(ell))?;
    if model.host != expected {
        return input_err("model host is not the product of the supplied factors");
    }
    let mut part_y: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let mut part_z: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for hv in h.vertices() {
        for pv in p.vertices() {
            for i in 0..ell {
                let id = product_id(&product_id(hv, pv), &i.to_string());
                part_y.entry(hv.clone()).or_default().insert(id.clone());
                part_z.entry(pv.clone()).or_default().insert(id);
            }
        }
    }
    let partition = HLPartition {
        quotient_h: h.clone(),
        quotient_l: p.clone(),
        part_y,
        part_z,
        width: ell as u64,
    };
    let input = EngineInput::new(expected, partition, h_td.clone(), model.clone())?;
    let params = verify_engine_input(&input)?;
    let out = quotient_engine(&input)?;

    let span = 2 * params.r + 1;
    let blocks = (p.vertex_count() as u64).div_ceil(span);
    let colours = ell as u64 * span * span;
    let pos: BTreeMap<&String, u64> =
        order.iter().enumerate().map(|(i, v)| (v, i as u64)).collect();
    let mut anchor_of: BTreeMap<&String, &String> = BTreeMap::new();
    for (a, members) in &out.s_partition {
        for u in members {
            anchor_of.insert(u, a);
        }
    }
    let mut layer_of: BTreeMap<&String, &String> = BTreeMap::new();
    for (z, members) in &out.l_prime_partition.part_z {
        for u in members {
            layer_of.insert(u, z);
        }
    }
    let mut cell_members: BTreeMap<(&String, &String), Vec<&String>> = BTreeMap::new();
    for u in model.guest.vertices() {
        cell_members.entry((anchor_of[u], layer_of[u])).or_default().push(u);
    }
    let mut injection = BTreeMap::new();
    for ((a, layer), members) in &cell_members {
        let i = pos[layer];
        let block = (i / span).to_string();
        let offset = i % span;
        for (slot, u) in members.iter().enumerate() {
            let colour = offset * (ell as u64) * span + slot as u64;
            injection.insert(
                (*u).clone(),
                product_id(&product_id(a.as_str(), &block), &colour.to_string()),
            );
        }
    }
    let host = strong_product(
        &strong_product(&out.j, &path_graph(blocks as usize))?,
        &complete_graph(colours as usize),
    )?;
    let witness = EmbeddingWitness { host, injection };
    verify_embedding(&model.guest, &witness)
        .map_err(|e| Error::Construction(format!("product embedding: {e}")))?;

    let product_td = product_tree_decomposition(&out.j, &out.j_td, colours as usize)?;
    let row_treewidth_bound = out.bounds.bag_limit * ell as u64 * span * span - 1;
    let measured = product_td.width();
    if measured >= 0 && measured as u64 > row_treewidth_bound {
        return Err(Error::Construction(format!(
            "row treewidth {measured} exceeds the bound {row_treewidth_bound}"
        )));
    }
    Ok(GpstOutcome { witness, product_td, row_treewidth_bound, engine: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_ntd(n: usize) -> NormalisedTreeDecomposition {
        let tree = path_graph(n);
        let mut bags = BTreeMap::new();
        bags.insert("0".to_string(), BTreeSet::from(["0".to_string()]));
        for i in 1..n {
            bags.insert(
                i.to_string(),
                BTreeSet::from([(i - 1).to_string(), i.to_string()]),
            );
        }
        NormalisedTreeDecomposition {
            td: TreeDecomposition { tree, root: "0".to_string(), bags },
        }
    }

    fn full_product_partition(h: &Graph, p: &Graph, ell: usize) -> HLPartition {
        let mut part_y: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut part_z: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for hv in h.vertices() {
            for pv in p.vertices() {
                for i in 0..ell {
                    let id = product_id(&product_id(hv, pv), &i.to_string());
                    part_y.entry(hv.clone()).or_default().insert(id.clone());
                    part_z.entry(pv.clone()).or_default().insert(id);
                }
            }
        }
        HLPartition {
            quotient_h: h.clone(),
            quotient_l: p.clone(),
            part_y,
            part_z,
            width: ell as u64,
        }
    }

    /// P4 ⊠ P3 with the edge between "0|0|0" and "1|0|0" contracted into a
    /// vertex "m"; a depth-1 model whose other branch sets are singletons.
    fn contraction_fixture() -> (EngineInput, MinorModel, Graph, Graph) {
        let h = path_graph(4);
        let p = path_graph(3);
        let host = strong_product(&strong_product(&h, &p).unwrap(), &complete_graph(1))
            .unwrap();
        let (a, b) = ("0|0|0".to_string(), "1|0|0".to_string());
        let rename = |v: &str| {
            if v == a || v == b { "m".to_string() } else { v.to_string() }
        };
        let vertices: BTreeSet<String> =
            host.vertices().iter().map(|v| rename(v)).collect();
        let edges: Vec<(String, String)> = host
            .edges()
            .into_iter()
            .map(|(u, v)| (rename(&u), rename(&v)))
            .filter(|(u, v)| u != v)
            .collect();
        let guest = Graph::new(vertices, edges).unwrap();
        let mut branch: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        let mut centre: BTreeMap<String, String> = BTreeMap::new();
        for v in guest.vertices() {
            if v == "m" {
                branch.insert(v.clone(), BTreeSet::from([a.clone(), b.clone()]));
                centre.insert(v.clone(), a.clone());
            } else {
                branch.insert(v.clone(), BTreeSet::from([v.clone()]));
                centre.insert(v.clone(), v.clone());
            }
        }
        let model = MinorModel {
            host: host.clone(),
            guest,
            branch,
            centre,
            depth2x: 2,
            topological: false,
        };
        let partition = full_product_partition(&h, &p, 1);
        let input =
            EngineInput::new(host, partition, path_ntd(4), model.clone()).unwrap();
        (input, model, h, p)
    }

    #[test]
    fn input_verification_measures_the_parameters() {
        let (input, _, _, _) = contraction_fixture();
        let params = verify_engine_input(&input).unwrap();
        assert_eq!(params, EngineParams { ell: 1, t: 1, r: 1, k: 2 });
        assert_eq!(input.k, Some(2));
    }

    #[test]
    fn cached_k_must_match() {
        let (mut input, _, _, _) = contraction_fixture();
        input.k = Some(5);
        let err = verify_engine_input(&input).unwrap_err();
        assert!(matches!(err, Error::Input(_)), "{err}");
        assert!(err.to_string().contains("cached k = 5"), "{err}");
    }

    #[test]
    fn model_host_must_be_the_partitioned_graph() {
        let (mut input, _, _, _) = contraction_fixture();
        input.model.host = complete_graph(3);
        let err = verify_engine_input(&input).unwrap_err();
        assert!(err.to_string().contains("model host"), "{err}");
    }

    #[test]
    fn anchors_at_the_shallowest_met_part() {
        let (input, model, _, _) = contraction_fixture();
        assert_eq!(anchor(&input, "m").unwrap(), "0");
        assert_eq!(anchor(&input, "2|1|0").unwrap(), "2");
        assert!(matches!(anchor(&input, "nope"), Err(Error::Input(_))));
        // The tree is the path 0-1-2-3 rooted at 0, so the common ancestor
        // of the met parts is just the numerically smallest one. Check every
        // guest vertex against that independent description.
        let y_part = |v: &str| v.split('|').next().unwrap().parse::<u64>().unwrap();
        for (u, branch) in &model.branch {
            let expected = branch.iter().map(|v| y_part(v)).min().unwrap();
            assert_eq!(anchor(&input, u).unwrap(), expected.to_string(), "vertex {u}");
        }
    }

    #[test]
    fn contraction_quotient_and_its_decomposition() {
        let (input, _, _, _) = contraction_fixture();
        let out = quotient_engine(&input).unwrap();
        let expected_j = Graph::new(
            ["0", "1", "2", "3"],
            [("0", "1"), ("0", "2"), ("1", "2"), ("2", "3")],
        )
        .unwrap();
        assert_eq!(out.j, expected_j);
        assert_eq!(
            out.s_partition["0"],
            BTreeSet::from(["0|1|0".to_string(), "0|2|0".to_string(), "m".to_string()])
        );
        let bag: Vec<BTreeSet<String>> =
            (0..4).map(|i| out.j_td.bag(&i.to_string())).collect();
        let set = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        assert_eq!(bag[0], set(&["0"]));
        assert_eq!(bag[1], set(&["0", "1"]));
        assert_eq!(bag[2], set(&["0", "1", "2"]));
        assert_eq!(bag[3], set(&["2", "3"]));
        assert_eq!(
            out.bounds,
            EngineBounds {
                width_measured: 1,
                width_limit: 3,
                bag_measured: 3,
                bag_limit: 4
            }
        );
        // The layer graph gets cubed: P3 at distance <= 3 is complete.
        assert!(out.l_prime_partition.quotient_l.has_edge("0", "2"));
        assert_eq!(out.l_prime_partition.width, 1);
    }

    #[test]
    fn identity_model_reproduces_the_h_quotient() {
        let h = path_graph(3);
        let p = path_graph(2);
        let host = strong_product(&strong_product(&h, &p).unwrap(), &complete_graph(1))
            .unwrap();
        let model = crate::minors::identity_model(&host);
        let input = EngineInput::new(
            host,
            full_product_partition(&h, &p, 1),
            path_ntd(3),
            model,
        )
        .unwrap();
        assert_eq!(input.k, Some(0));
        let out = quotient_engine(&input).unwrap();
        assert_eq!(out.j, path_graph(3));
        assert_eq!(
            out.bounds,
            EngineBounds {
                width_measured: 1,
                width_limit: 1,
                bag_measured: 2,
                bag_limit: 2
            }
        );
        // Depth 0 leaves the layer graph untouched.
        assert_eq!(out.l_prime_partition.quotient_l, path_graph(2));
    }

    #[test]
    fn output_serialises_under_the_bundle_names() {
        let (input, _, _, _) = contraction_fixture();
        let out = quotient_engine(&input).unwrap();
        let text = serde_json::to_string(&out).unwrap();
        for field in
            ["\"J\":", "\"sPartition\":", "\"jTD\":", "\"lPrimePartition\":",
             "\"asserted_bounds\":", "\"widthMeasured\":", "\"bagLimit\":"]
        {
            assert!(text.contains(field), "missing {field} in {text}");
        }
        let back: EngineOutput = serde_json::from_str(&text).unwrap();
        assert_eq!(back, out);
        let input_text = serde_json::to_string(&input).unwrap();
        assert!(input_text.contains("\"hTD\":"), "{input_text}");
        assert!(input_text.contains("\"k\":2"), "{input_text}");
    }

    #[test]
    fn gpst_compresses_the_contraction_fixture() {
        let (_, model, h, p) = contraction_fixture();
        let out = gpst_shallow(&model, &h, &p, 1, &path_ntd(4)).unwrap();
        assert_eq!(out.row_treewidth_bound, 35);
        // One block of the path remains, with 1 * 3^2 colours.
        assert_eq!(out.witness.host.vertex_count(), 4 * 1 * 9);
        assert_eq!(out.witness.injection.len(), model.guest.vertex_count());
        assert_eq!(out.witness.injection["m"], "0|0|0");
        // tw(J ⊠ K_9) from the blown-up decomposition: bags of 3 * 9.
        assert_eq!(out.product_td.width(), 26);
        assert_eq!(out.engine.bounds.bag_limit, 4);
    }

    #[test]
    fn gpst_identity_rebuilds_the_host() {
        let h = path_graph(3);
        let p = path_graph(2);
        let host = strong_product(&strong_product(&h, &p).unwrap(), &complete_graph(2))
            .unwrap();
        let model = crate::minors::identity_model(&host);
        let out = gpst_shallow(&model, &h, &p, 2, &path_ntd(3)).unwrap();
        // Depth 0: span 1, so the path survives and the witness host is the
        // original product again.
        assert_eq!(out.witness.host, host);
        assert_eq!(out.row_treewidth_bound, 3);
        assert_eq!(out.product_td.width(), 3);
    }

    #[test]
    fn gpst_rejects_wrong_factors() {
        let (_, model, h, _) = contraction_fixture();
        let err = gpst_shallow(&model, &h, &crate::products::cycle_graph(4), 1, &path_ntd(4))
            .unwrap_err();
        assert!(matches!(err, Error::Precondition(_)), "{err}");
        let err = gpst_shallow(&model, &h, &path_graph(4), 1, &path_ntd(4)).unwrap_err();
        assert!(matches!(err, Error::Input(_)), "{err}");
    }

    #[test]
    fn path_order_walks_from_the_smaller_endpoint() {
        assert_eq!(path_order(&path_graph(1)).unwrap(), ["0"]);
        assert_eq!(path_order(&path_graph(4)).unwrap(), ["0", "1", "2", "3"]);
        let zig = Graph::new(["a", "b", "c"], [("b", "a"), ("a", "c")]).unwrap();
        assert_eq!(path_order(&zig).unwrap(), ["b", "a", "c"]);
        assert!(path_order(&crate::products::cycle_graph(3)).is_err());
        assert!(path_order(&crate::products::star_graph(3)).is_err());
        assert!(path_order(&Graph::empty()).is_err());
    }
}
