//! Charges the crossings of a drawing to incident edges by max-flow.
//! Two edges crossing three times cannot be 1-charged, so the capacity
//! separates: the solver proves infeasibility at 1 and exhibits a
//! charging at 2 that the independent verifier accepts.

use prodstruct::planar::{gap_charging, verify_gap_charging, Crossing, EmbeddedGraph};
use prodstruct::Graph;

fn main() -> prodstruct::Result<()> {
    let e = EmbeddedGraph {
        base: Graph::new(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])?,
        crossings: (1..=3)
            .map(|p| Crossing {
                a: ("a".into(), "b".into()),
                b: ("c".into(), "d".into()),
                pos_a: p,
                pos_b: p,
                side: None,
            })
            .collect(),
        simple: false,
    };

    println!("two edges crossing three times:");
    match gap_charging(&e, 1)? {
        Some(_) => println!("  capacity 1: unexpectedly feasible"),
        None => println!("  capacity 1: no charging exists"),
    }
    match gap_charging(&e, 2)? {
        Some(charging) => {
            verify_gap_charging(&e, &charging)?;
            println!("  capacity 2: feasible and verified");
            for (crossing, edge) in &charging.assignment {
                println!("  crossing {crossing} charges ({}, {})", edge.0, edge.1);
            }
        }
        None => println!("  capacity 2: unexpectedly infeasible"),
    }
    Ok(())
}
