// Characters of the ideal fragment, the partial action θ on them, the
// boundary and the freeness probe, for ℕ and for the free monoid on a, b.

use std::error::Error;

use semigroup_lab::ideals::{enumerate_ideals, EnumerationCaps, IdealCalculus, Tier};
use semigroup_lab::model::ModelSpec;
use semigroup_lab::spectrum::{
    boundary, check_partial_action, resolved_gradings, topological_freeness_probe, ThetaAction,
};

fn run_example() -> Result<(), Box<dyn Error>> {
    for spec in [ModelSpec::FreeAbelian { rank: 1 }, ModelSpec::FreeMonoid { rank: 2 }] {
        let calc = IdealCalculus::new(spec.build()?, Tier::Exact)?;
        let caps = EnumerationCaps::depth(2);
        let lat = enumerate_ideals(&calc, &caps)?;
        let act = ThetaAction::new(&lat, &caps)?;
        let m = calc.model();
        println!("{}: {} characters", m.name(), act.characters().len());
        for (k, c) in act.characters().iter().enumerate() {
            println!("  χ{k} bits {} least {}", c.bits(), calc.describe(lat.ideal(c.least())));
        }
        let laws = check_partial_action(&act, 8)?;
        println!("  partial action: {laws:?}");
        let b = boundary(&act);
        println!("  boundary {:?} (cross-check agrees: {})", b.characters, b.agree);
        let gs = resolved_gradings(&act);
        for r in topological_freeness_probe(&act, &b, &gs).iter().take(6) {
            println!("  g = {:>4}: {:?}", r.g, r.verdict);
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
