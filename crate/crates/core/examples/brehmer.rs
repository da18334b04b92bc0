//! Validates a representation and checks the Brehmer positivity condition.
//!
//! Three nilpotent 2×2 blocks scaled by 0.9 commute and are contractive, but
//! the defect over all three generators has eigenvalue 1 − 3·0.81.

use regdil::dilation::{brehmer_defect, check_regular_dilation, PSD_TOL};
use regdil::gradedspace::{ProductSystem, Subset};
use regdil::linalg::{c, hermitian_eigenvalues, CMatrix, ZERO};
use regdil::representation::Representation;

fn main() -> regdil::Result<()> {
    let sys = ProductSystem::untwisted(vec![1, 1, 1])?;
    for scale in [0.5, 0.9] {
        let n = CMatrix::from_row_slice(2, 2, &[ZERO, c(scale, 0.0), ZERO, ZERO]);
        let rep = Representation::new(sys.clone(), 2, vec![vec![n.clone()], vec![n.clone()], vec![n]])?;
        let report = rep.validate();
        println!("scale {scale}: valid {}, norms {:?}", report.valid, report.norms);
        print!("{}", check_regular_dilation(&rep, PSD_TOL)?);
        let full = brehmer_defect(&rep, Subset::full(3))?;
        println!("  spectrum of the full defect: {:?}\n", hermitian_eigenvalues(&full));
    }
    Ok(())
}
