//! Builds the well-behaved friend assignment for a small fan-planar
//! drawing: one edge is crossed by two edges of a fan, so its friend is
//! the fan's apex and the split point says which endpoint each crossing
//! charges.

use prodstruct::planar::{friend_assignment, verify_friend_assignment, Crossing, EmbeddedGraph};
use prodstruct::Graph;

fn main() -> prodstruct::Result<()> {
    let e = EmbeddedGraph {
        base: Graph::new(
            ["a", "b", "c", "d", "f"],
            [("a", "b"), ("c", "d"), ("c", "f"), ("b", "c")],
        )?,
        crossings: vec![
            Crossing {
                a: ("a".into(), "b".into()),
                b: ("c".into(), "d".into()),
                pos_a: 1,
                pos_b: 1,
                side: Some(1),
            },
            Crossing {
                a: ("a".into(), "b".into()),
                b: ("c".into(), "f".into()),
                pos_a: 2,
                pos_b: 1,
                side: Some(1),
            },
        ],
        simple: true,
    };

    let assignment = friend_assignment(&e)?;
    for (edge, friend) in &assignment.friend {
        println!(
            "edge ({}, {}): friend {friend}, split at {}",
            edge.0, edge.1, assignment.split_point[edge]
        );
    }
    verify_friend_assignment(&e, &assignment)?;
    println!("assignment verified on {} crossings", e.crossings.len());
    println!("as json: {}", serde_json::to_string(&assignment).expect("serializable"));
    Ok(())
}
