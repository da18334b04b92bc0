//! Von Neumann inequality for scaled clock/shift pairs: `‖p(T)‖` against the
//! norms of `p` at creation operators compressed to growing boxes.
//!
//! The compressions increase towards `‖p(S)‖`, so for tuples close to the
//! torus a small box can still sit below `‖p(T)‖`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regdil::fock::vn_margin;
use regdil::gradedspace::lambda_table;
use regdil::linalg::{c, C64};
use regdil::representation::{scaled_twisted_unitaries, NcPolynomial};

fn main() -> regdil::Result<()> {
    let lambda = lambda_table(2, |_, _| c(-1.0, 0.0));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let polys = [
        ("x1 x2", NcPolynomial::monomial(c(1.0, 0.0), vec![(0, 0), (1, 0)])),
        ("random", NcPolynomial::random(&mut rng, &[1, 1], 3, 4)),
    ];
    for r in [0.5, 0.99] {
        let rep = scaled_twisted_unitaries(&lambda, &[C64::from(r), C64::from_polar(r, 1.0)])?;
        for (name, p) in &polys {
            let report = vn_margin(&rep, p, 8)?;
            let seq: Vec<String> = report.norm_s_by_n.iter().map(|x| format!("{x:.4}")).collect();
            println!(
                "|c| = {r}, p = {name}: ‖p(T)‖ = {:.4}, boxes N=1..8: [{}], monotone {}",
                report.norm_t,
                seq.join(", "),
                report.monotone
            );
        }
    }
    Ok(())
}
