//! Builds twisted product systems and checks that reordering words does not
//! depend on the chosen sequence of adjacent swaps.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::gradedspace::{
    apply_swap_path, bubble_schedule, lambda_table, reorder_unitary, theta_embed, MultiIndex, ProductSystem,
    TwistFamily,
};
use regdil::linalg::{residual, C64};

fn main() -> regdil::Result<()> {
    // A permutation twist on C^2⊗C^2 that swaps the factors and the basis labels.
    let mut perms = BTreeMap::new();
    perms.insert((1, 0), vec![(1, 1), (1, 0), (0, 1), (0, 0)]);
    let perm = ProductSystem::from_permutations(vec![2, 2], &perms)?;
    println!(
        "permutation system: coherence residual {:.2e}",
        perm.coherence_residual()
    );

    let lambda = lambda_table(3, |i, j| C64::from_polar(1.0, 0.7 * (i + 2 * j) as f64));
    let scalar = ProductSystem::scalar(&lambda)?;
    println!("scalar system: coherence residual {:.2e}", scalar.coherence_residual());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dense = ProductSystem::random(&mut rng, vec![2, 1, 2], TwistFamily::DenseUnitary)?;
    let word = [2, 0, 1, 2, 0];
    let sorted = [0, 0, 1, 2, 2];
    let direct = reorder_unitary(&dense, &word, &sorted)?;
    let (via_swaps, end) = apply_swap_path(&dense, &word, &bubble_schedule(&word, &sorted)?)?;
    assert_eq!(end, sorted);
    println!(
        "dense system: reorder paths agree to {:.2e}",
        residual(&direct, &via_swaps)
    );

    let n = MultiIndex::from(vec![1, 0, 1]);
    let m = MultiIndex::from(vec![0, 1, 1]);
    let theta = theta_embed(&dense, &n, &m)?;
    println!("theta for {n} and {m} is {}×{}", theta.nrows(), theta.ncols());
    Ok(())
}
