// Enumerate the constructible right ideals of ℕ² up to trace depth 2 and
// print the containment order and a few intersections.

use std::error::Error;

use semigroup_lab::ideals::{enumerate_ideals, EnumerationCaps, IdealCalculus, Tier};
use semigroup_lab::model::ModelSpec;

fn run_example() -> Result<(), Box<dyn Error>> {
    let model = ModelSpec::FreeAbelian { rank: 2 }.build()?;
    let calc = IdealCalculus::new(model, Tier::Exact)?;
    let lat = enumerate_ideals(&calc, &EnumerationCaps::depth(2))?;
    println!("{} ideals on {}", lat.len(), calc.model().name());
    for (i, x) in lat.ideals().iter().enumerate() {
        println!("  [{i}] level {} {}", lat.level(i), calc.describe(x));
    }
    println!("covering relations (smaller, larger): {:?}", lat.hasse());
    let (a, b) = (2, 3);
    let m = lat.meet(a, b);
    println!("[{a}] ∩ [{b}] = [{m}] = {}", calc.describe(lat.ideal(m)));

    // the same pair through the truncated tier
    let t = IdealCalculus::new(calc.model_arc().clone(), Tier::Truncated { radius: 6 })?;
    let (Some(ta), Some(tb)) = (lat.ideal(a).trace(), lat.ideal(b).trace()) else {
        return Ok(());
    };
    let z = t.intersect(&t.from_trace(ta)?, &t.from_trace(tb)?)?;
    println!("truncated: {}", t.describe(&z));
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
