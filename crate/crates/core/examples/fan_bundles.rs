//! Models a graph whose edges are grouped into fan-bundles. The bundle
//! skeleton replaces each vertex's fans by segment edges, the drawing
//! crosses two segments once, and the model rebuilds the original graph
//! in the planarised skeleton stacked two rows deep.

use std::collections::BTreeMap;

use prodstruct::planar::{fanbundle_model, Bundle, BundleStructure, Crossing, EmbeddedGraph};
use prodstruct::products::path_graph;
use prodstruct::Graph;

fn main() -> prodstruct::Result<()> {
    let graph = path_graph(3);
    let bundles = BTreeMap::from([
        (
            "B0".to_string(),
            Bundle { origin: "0".to_string(), edges: vec![("0".to_string(), "1".to_string())] },
        ),
        (
            "B1".to_string(),
            Bundle {
                origin: "1".to_string(),
                edges: vec![
                    ("0".to_string(), "1".to_string()),
                    ("1".to_string(), "2".to_string()),
                ],
            },
        ),
        (
            "B2".to_string(),
            Bundle { origin: "2".to_string(), edges: vec![("1".to_string(), "2".to_string())] },
        ),
    ]);
    let skeleton = Graph::new(
        ["0", "1", "2", "B0", "B1", "B2"],
        [("0", "B0"), ("1", "B1"), ("2", "B2"), ("B0", "B1"), ("B1", "B2")],
    )?;
    let structure = BundleStructure {
        graph: graph.clone(),
        bundles,
        embedded: EmbeddedGraph {
            base: skeleton,
            crossings: vec![Crossing {
                a: ("0".into(), "B0".into()),
                b: ("2".into(), "B2".into()),
                pos_a: 1,
                pos_b: 1,
                side: None,
            }],
            simple: true,
        },
    };

    let model = fanbundle_model(&structure, 1)?;
    println!(
        "bundled path on {} vertices: skeleton has {} vertices, host {}",
        graph.vertex_count(),
        structure.embedded.base.vertex_count(),
        model.host.vertex_count()
    );
    println!("guest matches the bundled graph: {}", model.guest == graph);
    println!("declared radius {} covers a segment and its crossings", model.declared_radius());
    for (v, set) in &model.branch {
        println!("branch of {v}: {set:?}");
    }
    Ok(())
}
