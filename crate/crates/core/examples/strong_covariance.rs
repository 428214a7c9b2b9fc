// Norms ‖f‖_F along growing frames F: 1 - E[aP] - E[bP] vanishes on the free
// monoid, and 1 - E[1+ℕ] dies out along F_k = {0..k} on ℕ.

use std::error::Error;

use semigroup_lab::fock::{sc_limit_probe, sc_norm, Basis, Combination, FrameBuilder};
use semigroup_lab::ideals::{IdealCalculus, Tier};
use semigroup_lab::linalg::decimal_tolerance;
use semigroup_lab::model::{Elem, ModelSpec};

fn run_example() -> Result<(), Box<dyn Error>> {
    let tol = decimal_tolerance(9);
    let calc = IdealCalculus::new(ModelSpec::FreeMonoid { rank: 2 }.build()?, Tier::Exact)?;
    let m = calc.model();
    let builder = FrameBuilder::new(&calc, Basis::new(m, 7));
    let a = calc.principal(&m.parse("a")?)?;
    let b = calc.principal(&m.parse("b")?)?;
    let frame = vec![m.parse("a")?, m.parse("b")?];
    for f in [Combination::one_minus(&calc, &[&a, &b])?, Combination::projection(&calc, &a)?] {
        let n = sc_norm(&calc, &builder, &f, &frame, &tol)?;
        println!("‖{}‖ on {:?} ∈ [{}, {}]", f.render(&calc), n.f_set, n.enclosure.lo, n.enclosure.hi);
    }

    let nat = IdealCalculus::new(ModelSpec::FreeAbelian { rank: 1 }.build()?, Tier::Exact)?;
    let builder = FrameBuilder::new(&nat, Basis::new(nat.model(), 12));
    let f = Combination::one_minus(&nat, &[&nat.principal(&Elem::scalar(1))?])?;
    let chain: Vec<Vec<Elem>> = (0..=6).map(|k| (0..=k).map(Elem::scalar).collect()).collect();
    let probe = sc_limit_probe(&nat, &builder, &f, &chain, &tol)?;
    let values: Vec<&str> = probe.values.iter().map(|v| v.enclosure.hi.as_str()).collect();
    println!("‖{}‖ along F_0..F_6: {values:?} -> {:?}", probe.f, probe.verdict);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
