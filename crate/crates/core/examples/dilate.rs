//! Constructs the minimal regular isometric dilation of a random contractive
//! representation on a truncation box and verifies it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::dilation::{
    check_regular_dilation, construct_dilation, rank_profile, verify_dilation, Coordinates, Tolerances,
};
use regdil::gradedspace::{MultiIndex, ProductSystem, TwistFamily, DEFAULT_CAP};
use regdil::representation::random_cc;

fn main() -> regdil::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let sys = ProductSystem::random(&mut rng, vec![2, 1], TwistFamily::Diagonal)?;
    // Draw until condition (D) holds; random contractions of small norm usually qualify.
    let rep = loop {
        let rep = random_cc(&mut rng, &sys, 2)?;
        if check_regular_dilation(&rep, 1e-10)?.holds {
            break rep;
        }
    };
    let tol = Tolerances::default();
    let bound = MultiIndex::from(vec![2, 2]);
    let dil = construct_dilation(&rep, &bound, Coordinates::Spectral, &tol, DEFAULT_CAP)?;
    let report = verify_dilation(&rep, &dil, tol.residual)?;
    println!("box {bound}: dilation space has dimension {}", report.kdim);
    println!("  ‖W*W − I‖           {:.2e}", report.w_isometry);
    println!("  interior isometry   {:?}", report.interior_isometry);
    println!("  V(ξ)*W − WT(ξ)*     {:?}", report.coinvariance);
    println!(
        "  worst symbol T(n)   {:.2e} over {} grades",
        report.max_symbol_residual,
        report.symbols.len()
    );
    println!("  passed              {}", report.passed);
    println!("rank profile:");
    for g in rank_profile(&rep, &dil)? {
        println!(
            "  {:?}: frame rank {}, cumulative {} (Gram rank {})",
            g.grade, g.frame_rank, g.cumulative_frame_rank, g.cumulative_gram_rank
        );
    }
    Ok(())
}
