// Truncated regular representation on ℓ²(ℕ): shift matrices, projection
// products and the conditional expectation onto the diagonal.

use std::error::Error;

use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semigroup_lab::fock::{
    check_projection_identity, cond_expectation, random_combination, rep_vword, Basis, Combination,
};
use semigroup_lab::ideals::{EnumerationCaps, IdealCalculus, Tier};
use semigroup_lab::invsgp::{enumerate_ivwords, isometry};
use semigroup_lab::model::{Elem, ModelSpec};

fn run_example() -> Result<(), Box<dyn Error>> {
    let calc = IdealCalculus::new(ModelSpec::FreeAbelian { rank: 1 }.build()?, Tier::Exact)?;
    let basis = Basis::new(calc.model(), 6);
    let v2 = rep_vword(&calc, &basis, &isometry(&calc, &Elem::scalar(2))?)?;
    println!("V_2 on the truncation (band {}, shift {}):\n{}", v2.band(), v2.shift(), v2.to_triplets());

    let x = calc.principal(&Elem::scalar(2))?;
    let y = calc.principal(&Elem::scalar(3))?;
    println!("E[2+ℕ] E[3+ℕ] = E[3+ℕ]: {}", check_projection_identity(&calc, &basis, &x, &y)?);

    let f = Combination::new()
        .term(BigRational::from_integer(2.into()), isometry(&calc, &Elem::scalar(1))?)
        .term(BigRational::from_integer(1.into()), semigroup_lab::invsgp::identity(&calc));
    let e = cond_expectation(&calc, &basis, &f)?;
    println!("E({}) has {} nonzero entries", f.render(&calc), e.nnz());

    let pool = enumerate_ivwords(&calc, &EnumerationCaps::depth(2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..3 {
        let g = random_combination(&calc, &basis, &pool, 3, &mut rng)?;
        let e = cond_expectation(&calc, &basis, &g)?;
        println!("E({}) diagonal: {}", g.render(&calc), e.is_diagonal());
    }
    Ok(())
}

fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
