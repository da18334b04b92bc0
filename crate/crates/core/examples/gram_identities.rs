//! Builds the Gram operators `R`, `S`, `D`, `L` on a truncation box and checks
//! `R = S*DS`, `SL = I` and `D = L*RL`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::dilation::{build_gram, verify_comp_identities};
use regdil::gradedspace::{MultiIndex, ProductSystem, TwistFamily, DEFAULT_CAP};
use regdil::representation::random_cc;

fn main() -> regdil::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for family in [TwistFamily::Untwisted, TwistFamily::Diagonal, TwistFamily::DenseUnitary] {
        let sys = ProductSystem::random(&mut rng, vec![2, 1], family)?;
        let rep = random_cc(&mut rng, &sys, 2)?;
        let bound = MultiIndex::from(vec![2, 2]);
        let gram = build_gram(&rep, &bound, DEFAULT_CAP)?;
        let res = verify_comp_identities(&gram);
        println!(
            "{family:?}: box {bound}, dim {}, residuals R {:.1e}  SL {:.1e}  D {:.1e}",
            gram.r.space().total(),
            res.r_vs_sds,
            res.sl_vs_i,
            res.d_vs_lrl
        );
    }
    Ok(())
}
