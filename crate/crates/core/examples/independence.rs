// Independence of constructible ideals: ℕ² is independent, while the
// numerical semigroup ⟨2,3⟩ has an ideal that is a union of smaller ones.

use std::error::Error;

use semigroup_lab::ideals::{
    enumerate_ideals, independence_rank_oracle, independence_test, EnumerationCaps, IdealCalculus, Independence, Tier,
};
use semigroup_lab::model::ModelSpec;

fn run_example() -> Result<(), Box<dyn Error>> {
    for spec in [ModelSpec::FreeAbelian { rank: 2 }, ModelSpec::Numerical { generators: vec![2, 3] }] {
        let calc = IdealCalculus::new(spec.build()?, Tier::Exact)?;
        let lat = enumerate_ideals(&calc, &EnumerationCaps::depth(2))?;
        let verdict = independence_test(&lat);
        let (needed, _) = lat.decisive_radius(&lat.nonempty());
        let rank = independence_rank_oracle(&lat, needed);
        println!("{}: {} ideals, rank oracle {rank:?}", calc.model().name(), lat.len());
        match verdict {
            Independence::Witness { ideal, cover, .. } => {
                let parts: Vec<String> = cover.iter().map(|&k| calc.describe(lat.ideal(k))).collect();
                println!("  {} = {}", calc.describe(lat.ideal(ideal)), parts.join(" ∪ "));
            }
            other => println!("  {other:?}"),
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
