//! Ports an optimal queue layout of a 3x3 grid down to a path obtained
//! by contracting the grid's columns. Each column is a branch set of
//! radius 1 centred at its middle vertex, and the transferred layout
//! stays within the 2r(2q)^2r budget.

use std::collections::{BTreeMap, BTreeSet};

use prodstruct::layouts::{exact_queue_number, queue_shallow, verify_layout};
use prodstruct::minors::{verify_model, MinorModel};
use prodstruct::products::grid_graph;
use prodstruct::Graph;

fn main() -> prodstruct::Result<()> {
    let host = grid_graph(3, 3);
    let (q, layout) = exact_queue_number(&host, None, 1)?;
    println!("host queue number: {q}");

    let column = |x: usize| -> BTreeSet<String> {
        (0..3).map(|y| format!("{x},{y}")).collect()
    };
    let centre = |x: usize| format!("{x},1");
    let guest = Graph::new(
        (0..3).map(centre),
        (0..2).map(|x| (centre(x), centre(x + 1))),
    )?;
    let model = MinorModel {
        host: host.clone(),
        guest: guest.clone(),
        branch: (0..3).map(|x| (centre(x), column(x))).collect(),
        centre: (0..3).map(|x| (centre(x), centre(x))).collect::<BTreeMap<_, _>>(),
        depth2x: 2,
        topological: false,
    };
    let radius = verify_model(&model, Some(1))?;
    println!("columns contract to a path; largest branch radius {radius}");

    let transferred = queue_shallow(&model, &layout)?;
    let measured = verify_layout(&guest, &transferred)?;
    let budget = 2 * (2 * q).pow(2);
    println!("transferred layout uses {measured} queues, budget 2r(2q)^2r = {budget}");
    println!("guest order: {:?}", transferred.order);
    Ok(())
}
