//! Compresses the path coordinate of a triple product: the machine's
//! quotient supplies the first factor, the path is re-bucketed into
//! blocks, and the guest lands in a product whose rows have certified
//! small treewidth.

use prodstruct::decomp::{exact_treewidth, normalise, verify_tree_decomposition};
use prodstruct::engine::gpst_shallow;
use prodstruct::minors::identity_model;
use prodstruct::products::{complete_graph, path_graph, strong_product, verify_embedding};

fn main() -> prodstruct::Result<()> {
    let h = path_graph(3);
    let p = path_graph(6);
    let ell = 2;
    let host = strong_product(&strong_product(&h, &p)?, &complete_graph(ell))?;
    let model = identity_model(&host);

    let (_, td) = exact_treewidth(&h, None)?;
    let h_td = normalise(&h, &td)?;

    let outcome = gpst_shallow(&model, &h, &p, ell, &h_td)?;
    verify_embedding(&model.guest, &outcome.witness)?;
    println!(
        "guest on {} vertices embeds into a compressed product on {}",
        model.guest.vertex_count(),
        outcome.witness.host.vertex_count()
    );
    let r = model.declared_radius();
    let m = ell * (2 * r as usize + 1).pow(2);
    let row_graph = strong_product(&outcome.engine.j, &complete_graph(m))?;
    let width = verify_tree_decomposition(&row_graph, &outcome.product_td)?;
    println!(
        "rows are copies of J x K{m}: decomposition width {width} within bound {}",
        outcome.row_treewidth_bound
    );
    println!(
        "machine bounds underneath: bag {} of {}, width {} of {}",
        outcome.engine.bounds.bag_measured,
        outcome.engine.bounds.bag_limit,
        outcome.engine.bounds.width_measured,
        outcome.engine.bounds.width_limit
    );
    Ok(())
}
