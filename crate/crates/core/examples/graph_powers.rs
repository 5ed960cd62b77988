//! Realises the square of a cycle as a depth-1 minor of the cycle with
//! extra rows, then embeds a squared path into a host path power the
//! same way: both witnesses are checked rather than assumed.

use prodstruct::minors::{power_model, verify_model};
use prodstruct::products::{cycle_graph, path_power_embedding};

fn main() -> prodstruct::Result<()> {
    let c8 = cycle_graph(8);
    let model = power_model(&c8, 2)?;
    println!(
        "C8 squared: {} edges (from {}), host {} vertices, declared radius {}",
        model.guest.edge_count(),
        c8.edge_count(),
        model.host.vertex_count(),
        model.declared_radius()
    );
    let radius = verify_model(&model, Some(model.declared_radius()))?;
    println!("largest measured branch radius: {radius}");

    let (guest, witness) = path_power_embedding(10, 2)?;
    println!(
        "P10^2 on {} vertices embeds into a host with {} vertices",
        guest.vertex_count(),
        witness.host.vertex_count()
    );
    println!("0 -> {}, 9 -> {}", witness.injection["0"], witness.injection["9"]);
    Ok(())
}
