//! Models the intersection graph of three pairwise-crossing curves. The
//! guest is a triangle on the curve names; each branch set chains the
//! curve's crossing events through a two-row product of the curve graph.

use std::collections::BTreeMap;

use prodstruct::minors::verify_model;
use prodstruct::planar::{string_model, CurveArrangement};

fn main() -> prodstruct::Result<()> {
    let arrangement = CurveArrangement {
        curves: BTreeMap::from([
            ("s0".to_string(), vec!["e01".to_string(), "e02".to_string()]),
            ("s1".to_string(), vec!["e01".to_string(), "e12".to_string()]),
            ("s2".to_string(), vec!["e02".to_string(), "e12".to_string()]),
        ]),
    };

    let model = string_model(&arrangement, None)?;
    println!(
        "three curves, two events each: guest has {} vertices and {} edges",
        model.guest.vertex_count(),
        model.guest.edge_count()
    );
    println!("host: {} vertices", model.host.vertex_count());
    for (curve, set) in &model.branch {
        println!("branch of {curve}: {set:?}");
    }
    let radius = verify_model(&model, Some(model.declared_radius()))?;
    println!(
        "verified at declared radius {} (largest measured {radius})",
        model.declared_radius()
    );
    Ok(())
}
