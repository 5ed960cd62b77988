//! Transfers generalized colouring numbers through a shallow model: a
//! random depth-1 minor of a 4x4 grid inherits an order from any host
//! order, and its reach value at radius s stays within the host's at
//! 2rs + 2r + s. The exact oracle then pins scol_1 on a small graph.

use prodstruct::colouring::{col_shallow_order, exact_col, Mode};
use prodstruct::gen::{random_model, random_order, Rng};
use prodstruct::products::{cycle_graph, grid_graph};

fn main() -> prodstruct::Result<()> {
    let host = grid_graph(4, 4);
    let mut rng = Rng::new(5);
    let model = random_model(&mut rng, &host, 1)?;
    let order = random_order(&mut rng, &host);
    println!(
        "host: 4x4 grid, guest: random depth-1 minor on {} vertices",
        model.guest.vertex_count()
    );

    for mode in [Mode::Strong, Mode::Weak] {
        let outcome = col_shallow_order(&model, &order, 1, mode)?;
        println!(
            "{}: guest {} <= host {} at shifted radius {} ({})",
            mode.as_str(),
            outcome.guest_value,
            outcome.host_value,
            outcome.shifted_s,
            if outcome.holds { "holds" } else { "violated" }
        );
    }

    let c6 = cycle_graph(6);
    let (value, witness) = exact_col(&c6, 1, Mode::Strong, None, 1)?;
    println!(
        "exact scol_1 of C6: {value} (degeneracy + 1 = {}), witness order {:?}",
        c6.degeneracy() + 1,
        witness.order
    );
    Ok(())
}
