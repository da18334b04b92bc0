//! Doubly commuting representations: the Brehmer defects factor, and the
//! dilation stays doubly commuting and Nica covariant.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::dilation::{
    construct_dilation, dilation_doubly_commuting, dilation_nica, product_formula_check, Coordinates, Tolerances,
};
use regdil::fock::NicaOutcome;
use regdil::gradedspace::{MultiIndex, Subset, DEFAULT_CAP};
use regdil::representation::{consdc_suite, tensor_doubly_commuting};

fn main() -> regdil::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let rep = tensor_doubly_commuting(&mut rng, &[1, 2], &[2, 1])?;
    println!("doubly commuting input: {}", rep.is_doubly_commuting().doubly_commuting);
    let pf = product_formula_check(&rep, Subset::full(2))?;
    println!("defect product formula residual {:.2e}", pf.residual);
    let bound = MultiIndex::from(vec![2, 2]);
    let parts = consdc_suite(&rep, &bound)?;
    println!(
        "consequences (i)-(iv) over {} cases: worst {:.2e}",
        parts.cases,
        parts.max()
    );

    let dil = construct_dilation(&rep, &bound, Coordinates::Spectral, &Tolerances::default(), DEFAULT_CAP)?;
    println!(
        "dilation doubly commuting residual {:.2e}",
        dilation_doubly_commuting(&rep, &dil).max_residual
    );
    let e1 = MultiIndex::unit(2, 0);
    let e2 = MultiIndex::unit(2, 1);
    for (n, m) in [
        (e1.clone(), e2.clone()),
        (e1.clone(), e1.add(&e2)?),
        (e1.add(&e1)?, e2.add(&e2)?),
    ] {
        match dilation_nica(&dil, &n, &m)? {
            NicaOutcome::Residual(r) => println!("Nica {n} {m}: residual {r:.2e}"),
            NicaOutcome::Inconclusive => println!("Nica {n} {m}: no admissible grades in the box"),
        }
    }
    Ok(())
}
