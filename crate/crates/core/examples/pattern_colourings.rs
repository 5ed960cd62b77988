//! Checks two pattern conditions on explicit colourings: a square-free
//! colouring of a path (no path reads the same colour word twice in a
//! row) and a p-centred colouring of a cycle (every connected subgraph
//! sees many colours or a unique one). Violations name their witness.

use std::collections::BTreeMap;

use prodstruct::colouring::{verify_nonrepetitive, verify_p_centred, Colouring};
use prodstruct::products::{cycle_graph, path_graph};

fn colouring(pairs: &[(&str, &str)]) -> Colouring {
    Colouring {
        colour: pairs.iter().map(|(v, c)| (v.to_string(), c.to_string())).collect::<BTreeMap<_, _>>(),
    }
}

fn main() -> prodstruct::Result<()> {
    let p6 = path_graph(6);
    let thue = colouring(&[("0", "a"), ("1", "b"), ("2", "c"), ("3", "a"), ("4", "c"), ("5", "b")]);
    verify_nonrepetitive(&p6, &thue, 3, None)?;
    println!("abcacb on P6: nonrepetitive up to half-length 3");

    let repeating = colouring(&[("0", "a"), ("1", "b"), ("2", "a"), ("3", "b"), ("4", "a"), ("5", "b")]);
    match verify_nonrepetitive(&p6, &repeating, 3, None) {
        Ok(()) => println!("ababab on P6: unexpectedly accepted"),
        Err(e) => println!("ababab on P6: {e}"),
    }

    let c5 = cycle_graph(5);
    let rainbow = colouring(&[("0", "0"), ("1", "1"), ("2", "2"), ("3", "3"), ("4", "4")]);
    verify_p_centred(&c5, &rainbow, 3, None)?;
    println!("all-distinct on C5: 3-centred");

    let two = colouring(&[("0", "x"), ("1", "y"), ("2", "x"), ("3", "y"), ("4", "x")]);
    match verify_p_centred(&c5, &two, 3, None) {
        Ok(()) => println!("two colours on C5: unexpectedly accepted"),
        Err(e) => println!("two colours on C5: {e}"),
    }
    Ok(())
}
