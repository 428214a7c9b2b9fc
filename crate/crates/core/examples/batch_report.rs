// A batch run through the report layer: resolve a config, run it, check
// that the canonical form is reproducible and explain one analysis.

use std::error::Error;

use semigroup_lab::report::{explain, parse_model_arg, run, Analysis, RunConfig};

fn run_example() -> Result<(), Box<dyn Error>> {
    let mut cfg = RunConfig::new(parse_model_arg("numerical:2,3")?);
    cfg.analyses = vec![Analysis::Independence, Analysis::Boundary, Analysis::Fock];
    cfg.caps.samples = 50;
    cfg.seed = 7;
    let resolved = cfg.resolved()?;
    println!("analyses after dependencies: {:?}", resolved.analyses);
    let report = run(&cfg)?;
    for a in &report.analyses {
        println!("{:<13} {} [{:?}]", a.analysis.name(), a.verdict, a.evidence);
    }
    println!("status {:?}, exit code {}", report.status, report.status.exit_code());
    let again = run(&cfg)?;
    println!("reproducible: {}", report.canonical_json() == again.canonical_json());
    println!("{}", explain(&report, "independence")?);
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
