//! Characters of the algebra generated by twisted shifts: a point `t` is a
//! character when `|t_i| ≤ 1` and `t_i t_j = 0` whenever `λ_{i,j} ≠ 1`.

use regdil::dilation::check_regular_dilation;
use regdil::fock::{character_representation, character_set};
use regdil::gradedspace::lambda_table;
use regdil::linalg::{c, C64};

fn main() -> regdil::Result<()> {
    // λ₁₂ = i, λ₁₃ = λ₂₃ = 1: the third coordinate is free.
    let lambda = lambda_table(3, |i, j| if (i, j) == (1, 0) { c(0.0, 1.0) } else { c(1.0, 0.0) });
    let points: [[C64; 3]; 4] = [
        [c(0.5, 0.0), c(0.0, 0.0), c(0.9, 0.0)],
        [c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)],
        [c(1.2, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
    ];
    for t in points {
        let verdict = character_set(&lambda, &t)?;
        let rep = character_representation(&lambda, &t)?;
        let valid = rep.validate().valid;
        let regular = valid && check_regular_dilation(&rep, 1e-10)?.holds;
        println!(
            "t = {:?}: accepted {}, valid representation {valid}, condition (D) {regular}, violations {:?}",
            t.map(|z| z.re),
            verdict.accepted,
            verdict.violations
        );
    }
    Ok(())
}
