//! Builds the same dilation in three coordinate systems and recovers the
//! unitary that identifies them.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::dilation::{check_regular_dilation, construct_dilation, uniqueness_check, Coordinates, Tolerances};
use regdil::gradedspace::{MultiIndex, ProductSystem, TwistFamily, DEFAULT_CAP};
use regdil::representation::random_cc;

fn main() -> regdil::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let sys = ProductSystem::random(&mut rng, vec![1, 2, 1], TwistFamily::Permutation)?;
    let rep = loop {
        let rep = random_cc(&mut rng, &sys, 2)?;
        if check_regular_dilation(&rep, 1e-10)?.holds {
            break rep;
        }
    };
    let tol = Tolerances::default();
    let bound = MultiIndex::from(vec![1, 1, 2]);
    let base = construct_dilation(&rep, &bound, Coordinates::Spectral, &tol, DEFAULT_CAP)?;
    for other in [Coordinates::Rotated(42), Coordinates::Factored] {
        let dil = construct_dilation(&rep, &bound, other, &tol, DEFAULT_CAP)?;
        let u = uniqueness_check(&base, &dil)?;
        println!(
            "{other:?}: dim {}, unitary {:.1e}/{:.1e}, frames {:.1e}, W {:.1e}, intertwining {:.1e}",
            u.kdim, u.unitary_left, u.unitary_right, u.frame_match, u.embedding_match, u.intertwining
        );
    }
    Ok(())
}
