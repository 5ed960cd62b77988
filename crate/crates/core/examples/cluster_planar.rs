//! Embeds a clustered 6-cycle into the strong product of its cluster
//! adjacency graph with a 2-clique: each cluster holds two consecutive
//! cycle vertices, so the quotient is a triangle and every vertex maps
//! to its cluster paired with its index inside it.

use std::collections::{BTreeMap, BTreeSet};

use prodstruct::planar::{cluster_embed, ClusterStructure};
use prodstruct::products::{complete_graph, cycle_graph, strong_product, verify_embedding};
use prodstruct::Graph;

fn main() -> prodstruct::Result<()> {
    let g = cycle_graph(6);
    let cluster = |id: usize, a: usize, b: usize| {
        (format!("K{id}"), BTreeSet::from([a.to_string(), b.to_string()]))
    };
    let structure = ClusterStructure {
        g: g.clone(),
        clusters: BTreeMap::from([cluster(0, 0, 1), cluster(1, 2, 3), cluster(2, 4, 5)]),
        cluster_adjacency: Graph::new(
            ["K0", "K1", "K2"],
            [("K0", "K1"), ("K1", "K2"), ("K2", "K0")],
        )?,
    };

    let witness = cluster_embed(&structure, 2)?;
    verify_embedding(&g, &witness)?;
    let product = strong_product(&structure.cluster_adjacency, &complete_graph(2))?;
    println!(
        "C6 in three clusters embeds into K3 x K2: host {} vertices ({} expected)",
        witness.host.vertex_count(),
        product.vertex_count()
    );
    for (v, image) in &witness.injection {
        println!("{v} -> {image}");
    }
    Ok(())
}
