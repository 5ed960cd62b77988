//! Planarises the one-crossing drawing of K5 and rebuilds the original
//! graph as a shallow topological minor of the planarisation stacked
//! two rows deep: crossing dummies are split between the rows so the
//! subdivision paths never collide.

use prodstruct::planar::{kplanar_model, planarize, Crossing, EmbeddedGraph};
use prodstruct::products::complete_graph;

fn main() -> prodstruct::Result<()> {
    let e = EmbeddedGraph {
        base: complete_graph(5),
        crossings: vec![Crossing {
            a: ("0".into(), "2".into()),
            b: ("1".into(), "3".into()),
            pos_a: 1,
            pos_b: 1,
            side: None,
        }],
        simple: true,
    };

    let (plane, dummies, paths) = planarize(&e)?;
    println!(
        "K5 with one crossing planarises to {} vertices, {} edges",
        plane.vertex_count(),
        plane.edge_count()
    );
    for (i, name) in &dummies {
        println!("crossing {i} became dummy {name:?}");
    }
    for (edge, path) in &paths {
        if path.len() > 2 {
            println!("edge ({}, {}) now runs {:?}", edge.0, edge.1, path);
        }
    }

    let model = kplanar_model(&e, 1)?;
    println!(
        "model host: planarisation with two rows, {} vertices; declared radius {}",
        model.host.vertex_count(),
        model.declared_radius()
    );
    println!("guest matches K5: {}", model.guest == e.base);
    Ok(())
}
