//! Measures exact treewidth with witness decompositions on a few known
//! shapes, then normalises one witness so that neighbouring bags differ
//! by single vertices without the width growing.

use prodstruct::decomp::{exact_treewidth, normalise, verify_normalised, verify_tree_decomposition};
use prodstruct::products::{complete_graph, cycle_graph, grid_graph};

fn main() -> prodstruct::Result<()> {
    let cases = [
        ("C7", cycle_graph(7)),
        ("K5", complete_graph(5)),
        ("3x3 grid", grid_graph(3, 3)),
    ];
    for (name, g) in &cases {
        let (width, td) = exact_treewidth(g, None)?;
        let checked = verify_tree_decomposition(g, &td)?;
        println!("{name}: treewidth {width} (witness width {checked})");
    }

    let grid = grid_graph(3, 3);
    let (width, td) = exact_treewidth(&grid, None)?;
    let ntd = normalise(&grid, &td)?;
    let normal_width = verify_normalised(&grid, &ntd)?;
    println!(
        "normalised grid witness: width {normal_width} (was {width}), {} tree nodes (was {})",
        ntd.td.tree.vertex_count(),
        td.tree.vertex_count()
    );
    Ok(())
}
