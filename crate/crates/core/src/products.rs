//! Graph products, standard little graphs, and product embeddings.
//!
//! Product vertices are named `left|right`. Products nest on the left, so
//! `|` is reserved in right factors only: `a|b|c` in `(H ⊠ L) ⊠ K_m` splits
//! into exactly three parts as long as the base factors keep `|` out of
//! their own ids, which the coordinate parsers check at the point of use.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::graph::graph_power;
use crate::{input_err, reject, Graph, Result};

/// Separator used in product vertex ids.
pub const SEP: char = '|';

/// Rejects ids containing [`SEP`]; applied to right product factors and to
/// graphs whose product coordinates must parse back out.
pub fn check_factor(g: &Graph, role: &str) -> Result<()> {
    if let Some(v) = g.vertices().iter().find(|v| v.contains(SEP)) {
        return input_err(format!(
            "{role} factor vertex {v:?} contains the reserved separator {SEP:?}"
        ));
    }
    Ok(())
}

pub fn product_id(l: &str, r: &str) -> String {
    format!("{l}{SEP}{r}")
}

/// Strong product `a ⊠ b`: coordinates both equal or adjacent, not all equal.
pub fn strong_product(a: &Graph, b: &Graph) -> Result<Graph> {
    check_factor(b, "right")?;
    let mut verts = Vec::with_capacity(a.vertex_count() * b.vertex_count());
    for x in a.vertices() {
        for y in b.vertices() {
            verts.push(product_id(x, y));
        }
    }
    let mut edges = Vec::new();
    for x in 0..a.vertex_count() {
        for y in 0..b.vertex_count() {
            // Same left coordinate, right edge.
            for y2 in b.neighbors_idx(y) {
                if y < y2 {
                    edges.push((
                        product_id(a.name(x), b.name(y)),
                        product_id(a.name(x), b.name(y2)),
                    ));
                }
            }
            // Left edge, right equal or adjacent.
            for x2 in a.neighbors_idx(x) {
                if x < x2 {
                    edges.push((
                        product_id(a.name(x), b.name(y)),
                        product_id(a.name(x2), b.name(y)),
                    ));
                    for y2 in b.neighbors_idx(y) {
                        edges.push((
                            product_id(a.name(x), b.name(y)),
                            product_id(a.name(x2), b.name(y2)),
                        ));
                    }
                }
            }
        }
    }
    Graph::new(verts, edges)
}

/// Lexicographic product `a ∘ b`: left edge (any right pair), or left equal
/// and right edge.
pub fn lex_product(a: &Graph, b: &Graph) -> Result<Graph> {
    check_factor(b, "right")?;
    let mut verts = Vec::with_capacity(a.vertex_count() * b.vertex_count());
    for x in a.vertices() {
        for y in b.vertices() {
            verts.push(product_id(x, y));
        }
    }
    let mut edges = Vec::new();
    for x in 0..a.vertex_count() {
        for y in 0..b.vertex_count() {
            for y2 in b.neighbors_idx(y) {
                if y < y2 {
                    edges.push((
                        product_id(a.name(x), b.name(y)),
                        product_id(a.name(x), b.name(y2)),
                    ));
                }
            }
            for x2 in a.neighbors_idx(x) {
                if x < x2 {
                    for y2 in 0..b.vertex_count() {
                        edges.push((
                            product_id(a.name(x), b.name(y)),
                            product_id(a.name(x2), b.name(y2)),
                        ));
                    }
                }
            }
        }
    }
    Graph::new(verts, edges)
}

/// `K_n` on vertices `"0".."n-1"`.
pub fn complete_graph(n: usize) -> Graph {
    let verts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i.to_string(), j.to_string()));
        }
    }
    Graph::new(verts, edges).unwrap()
}

/// Edgeless graph on vertices `"0".."n-1"`.
pub fn edgeless_graph(n: usize) -> Graph {
    let verts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Graph::new(verts, Vec::<(String, String)>::new()).unwrap()
}

/// Path on `n` vertices `"0" - "1" - ... - "n-1"`.
pub fn path_graph(n: usize) -> Graph {
    let verts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    Graph::new(verts, edges).unwrap()
}

/// Cycle on `n >= 3` vertices.
pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let verts: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut edges: Vec<_> = (1..n).map(|i| ((i - 1).to_string(), i.to_string())).collect();
    edges.push(("0".to_string(), (n - 1).to_string()));
    Graph::new(verts, edges).unwrap()
}

/// Star with centre `"c"` and leaves `"l0".."l{n-1}"`.
pub fn star_graph(n: usize) -> Graph {
    let mut verts = vec!["c".to_string()];
    let mut edges = Vec::new();
    for i in 0..n {
        verts.push(format!("l{i}"));
        edges.push(("c".to_string(), format!("l{i}")));
    }
    Graph::new(verts, edges).unwrap()
}

/// `w × h` grid with vertices `"x,y"`.
pub fn grid_graph(w: usize, h: usize) -> Graph {
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    let id = |x: usize, y: usize| format!("{x},{y}");
    for x in 0..w {
        for y in 0..h {
            verts.push(id(x, y));
            if x + 1 < w {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < h {
                edges.push((id(x, y), id(x, y + 1)));
            }
        }
    }
    Graph::new(verts, edges).unwrap()
}

/// Injective map of a guest into a host; every guest edge must land on a
/// host edge.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct EmbeddingWitness {
    pub host: Graph,
    pub injection: BTreeMap<String, String>,
}

/// Checks an embedding witness against `guest`. The first violated clause is
/// reported in sorted-vertex / sorted-edge order so rejections are stable.
pub fn verify_embedding(guest: &Graph, w: &EmbeddingWitness) -> Result<()> {
    for v in guest.vertices() {
        match w.injection.get(v) {
            None => return reject(format!("vertex {v:?} has no image")),
            Some(img) if !w.host.has_vertex(img) => {
                return reject(format!("image {img:?} of {v:?} is not a host vertex"))
            }
            _ => {}
        }
    }
    for v in w.injection.keys() {
        if !guest.has_vertex(v) {
            return reject(format!("injection maps unknown vertex {v:?}"));
        }
    }
    let mut seen: BTreeMap<&String, &String> = BTreeMap::new();
    for (v, img) in &w.injection {
        if let Some(prev) = seen.insert(img, v) {
            return reject(format!("vertices {prev:?} and {v:?} share image {img:?}"));
        }
    }
    for (u, v) in guest.edges() {
        let (iu, iv) = (&w.injection[&u], &w.injection[&v]);
        if !w.host.has_edge(iu, iv) {
            return reject(format!(
                "guest edge ({u:?}, {v:?}) maps to non-edge ({iu:?}, {iv:?})"
            ));
        }
    }
    Ok(())
}

/// Embeds `path(m)^(2r+1)` into `path(ceil(m / (2r+1))) ⊠ K_(2r+1)` by
/// cutting the path into blocks of `2r+1` consecutive vertices.
///
/// Returns the guest power graph together with the witness.
pub fn path_power_embedding(m: usize, r: u64) -> Result<(Graph, EmbeddingWitness)> {
    if m == 0 {
        return input_err("path must have at least one vertex");
    }
    let span = (2 * r + 1) as usize;
    let guest = if m == 1 {
        path_graph(1)
    } else {
        graph_power(&path_graph(m), span as u64)?
    };
    let blocks = m.div_ceil(span);
    let host = strong_product(&path_graph(blocks), &complete_graph(span))?;
    let injection: BTreeMap<String, String> = (0..m)
        .map(|i| (i.to_string(), product_id(&(i / span).to_string(), &(i % span).to_string())))
        .collect();
    let witness = EmbeddingWitness { host, injection };
    verify_embedding(&guest, &witness)
        .map_err(|e| crate::Error::Construction(format!("path power embedding: {e}")))?;
    Ok((guest, witness))
}
