//! Creation operators on a truncated twisted Fock space: the Toeplitz
//! relations, the closed form for scalar twists, and Nica covariance.

use regdil::fock::{nica_check_fock, oracle_residual, scalar_shift_oracle, NicaOutcome, TruncatedFock};
use regdil::gradedspace::{lambda_table, MultiIndex, ProductSystem};
use regdil::linalg::{c, C64};

fn main() -> regdil::Result<()> {
    let lambda = lambda_table(2, |_, _| c(0.0, 1.0));
    let sys = ProductSystem::scalar(&lambda)?;
    let bound = MultiIndex::from(vec![3, 3]);
    let fock = TruncatedFock::new(&sys, &bound)?;
    println!("box {bound}: Fock dimension {}", fock.dim());
    println!("Toeplitz residual {:.2e}", fock.toeplitz_residual());
    println!("closed form residual {:.2e}", oracle_residual(&fock, &lambda)?);

    // The second shift picks up a phase from the first coordinate.
    let n = MultiIndex::from(vec![3, 5]);
    let w: C64 = scalar_shift_oracle(&lambda, &n, 1)?;
    println!("weight of the second shift at {n}: {w}");

    let e1 = MultiIndex::unit(2, 0);
    let e2 = MultiIndex::unit(2, 1);
    for (a, b) in [
        (e1.clone(), e2.clone()),
        (e1.clone(), e1.clone()),
        (e1.add(&e1)?, e2.add(&e2)?),
    ] {
        match nica_check_fock(&fock, &a, &b)? {
            NicaOutcome::Residual(r) => println!("Nica {a} {b}: {r:.2e}"),
            NicaOutcome::Inconclusive => println!("Nica {a} {b}: inconclusive"),
        }
    }

    // Two-dimensional fibers.
    let dense = ProductSystem::untwisted(vec![2, 2])?;
    let fock = TruncatedFock::new(&dense, &MultiIndex::from(vec![2, 1]))?;
    println!(
        "untwisted C^2 fibers: dimension {}, Toeplitz residual {:.2e}",
        fock.dim(),
        fock.toeplitz_residual()
    );
    Ok(())
}
