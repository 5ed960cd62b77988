//! Prints the quantitative bound catalogue for a few graph classes.
//! Every row is an exact decimal string, so the numbers can be compared
//! or pinned without floating-point noise.

use prodstruct::bounds::{bound_catalog, ClassSpec};

fn main() -> prodstruct::Result<()> {
    let specs = [
        ClassSpec::new("fan-planar", Vec::<(&str, u64)>::new()),
        ClassSpec::new("k-planar", [("k", 2u64)]),
        ClassSpec::new("string", [("delta", 4u64)]),
        ClassSpec::new("engine", [("r", 1u64), ("t", 3), ("ell", 3), ("k", 2)]),
        ClassSpec::new("strict-queue-complete", [("ell", 5u64)]),
    ];
    for spec in specs {
        let table = bound_catalog(&spec)?;
        println!("{} {:?}", table.class, table.params);
        for (name, value) in &table.rows {
            println!("  {name}: {value}");
        }
        println!();
    }
    Ok(())
}
