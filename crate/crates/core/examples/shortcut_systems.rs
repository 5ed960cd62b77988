//! Applies a shortcut system to a path: each listed path contributes a
//! chord between its endpoints, the supergraph becomes a shallow minor
//! of the base with extra rows, and the system's induced drawing gets a
//! crossing charging within the guaranteed capacity.

use prodstruct::minors::{apply_shortcuts, shortcut_to_model, ShortcutSystem};
use prodstruct::planar::{shortcut_gap_charging, verify_gap_charging};
use prodstruct::products::path_graph;

fn main() -> prodstruct::Result<()> {
    let path = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let system = ShortcutSystem {
        base: path_graph(6),
        paths: vec![path(&[0, 1, 2]), path(&[2, 3, 4]), path(&[3, 4, 5])],
        k: 2,
        d: 2,
    };

    let supergraph = apply_shortcuts(&system)?;
    println!(
        "P6 with three shortcuts: {} edges (from {})",
        supergraph.edge_count(),
        system.base.edge_count()
    );

    let model = shortcut_to_model(&system)?;
    println!(
        "model host: base with {} rows, {} vertices; declared radius {}",
        system.d + 1,
        model.host.vertex_count(),
        model.declared_radius()
    );

    let (drawing, charging) = shortcut_gap_charging(&system)?;
    verify_gap_charging(&drawing, &charging)?;
    println!(
        "induced drawing has {} crossings, charged within capacity {}",
        drawing.crossings.len(),
        charging.k
    );
    Ok(())
}
