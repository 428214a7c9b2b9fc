// Words in the left inverse hull of the free monoid on a, b: products,
// adjoints, gradings and the law checks.

use std::error::Error;

use semigroup_lab::ideals::{EnumerationCaps, IdealCalculus, Tier, WordTrace};
use semigroup_lab::invsgp::{check_laws, compose, enumerate_ivwords, isometry, make_vword, star, vword_eq};
use semigroup_lab::model::ModelSpec;

fn run_example() -> Result<(), Box<dyn Error>> {
    let calc = IdealCalculus::new(ModelSpec::FreeMonoid { rank: 2 }.build()?, Tier::Exact)?;
    let m = calc.model();
    let (a, b) = (m.parse("a")?, m.parse("b")?);
    let va = isometry(&calc, &a)?;
    let vb = isometry(&calc, &b)?;
    let w = compose(&calc, &star(&calc, &va), &vb)?;
    println!("V_a* V_b is zero: {}", w.is_zero());
    let t = WordTrace::new(m, vec![(a.clone(), m.parse("ab")?)])?;
    let v = make_vword(&calc, &t)?;
    println!(
        "word {} has σ = {}, dom = {}, ran = {}",
        t.render(m),
        m.format(v.sigma().unwrap()),
        calc.describe(v.dom()),
        calc.describe(v.ran())
    );
    let vv = compose(&calc, &star(&calc, &v), &v)?;
    println!("v* v is e-graded: {}", vv.sigma().is_some_and(|g| m.is_unit(g)));
    println!("v v* v = v: {:?}", vword_eq(&calc, &compose(&calc, &v, &vv)?, &v));

    let words = enumerate_ivwords(&calc, &EnumerationCaps::depth(2))?;
    let laws = check_laws(&calc, &words, 6)?;
    println!("{} distinct words at depth 2, laws: {laws:?}", words.len());
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
