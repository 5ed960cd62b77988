//! Runs the quotient machine end to end on a triple product: a small
//! tree-like factor, a path, and a clique. The identity model plays the
//! role of the guest, so the machine's output bounds can be read next
//! to the exact quantities they cap.

use prodstruct::cert::{engine_certificate, verify_certificate};
use prodstruct::decomp::{exact_treewidth, normalise};
use prodstruct::engine::{quotient_engine, EngineInput};
use prodstruct::gen::product_partition;
use prodstruct::minors::identity_model;
use prodstruct::products::{complete_graph, path_graph, strong_product};

fn main() -> prodstruct::Result<()> {
    let h = path_graph(3);
    let p = path_graph(4);
    let ell = 2;
    let g = strong_product(&strong_product(&h, &p)?, &complete_graph(ell))?;
    println!("product host: {} vertices, {} edges", g.vertex_count(), g.edge_count());

    let (_, td) = exact_treewidth(&h, None)?;
    let ntd = normalise(&h, &td)?;
    let partition = product_partition(&h, &p, ell);
    let model = identity_model(&g);
    let input = EngineInput::new(g, partition, ntd, model)?;

    let out = quotient_engine(&input)?;
    println!(
        "quotient J: {} vertices, decomposition width {}",
        out.j.vertex_count(),
        out.j_td.width()
    );
    println!(
        "partition width {} within ell(k+1) = {}",
        out.bounds.width_measured, out.bounds.width_limit
    );
    println!(
        "largest bag {} within C(2r+1+t, t) = {}",
        out.bounds.bag_measured, out.bounds.bag_limit
    );

    let cert = engine_certificate(&input, &out)?;
    verify_certificate(&cert)?;
    println!("engine certificate with {} claims re-verified", cert.claims.len());
    Ok(())
}
