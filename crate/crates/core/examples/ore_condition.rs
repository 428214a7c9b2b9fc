// Check whether principal right ideals pairwise meet.

use std::error::Error;

use semigroup_lab::ideals::{ore_test, IdealCalculus, Tier};
use semigroup_lab::model::ModelSpec;

fn run_example() -> Result<(), Box<dyn Error>> {
    let specs = [
        ModelSpec::FreeAbelian { rank: 1 },
        ModelSpec::FreeAbelian { rank: 2 },
        ModelSpec::Numerical { generators: vec![3, 5] },
        ModelSpec::FreeMonoid { rank: 2 },
    ];
    for spec in specs {
        let calc = IdealCalculus::new(spec.build()?, Tier::Exact)?;
        println!("{:>8}: {:?}", calc.model().name(), ore_test(&calc, 3)?);
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
