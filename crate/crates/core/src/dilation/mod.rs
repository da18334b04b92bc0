//! Brehmer defects and the regular-dilation criterion, the Gram calculus on a
//! truncation box, and the explicit truncated minimal regular isometric dilation.

mod construct;
mod gram;

pub use construct::{
    apply_word, apply_word_adjoint, construct_dilation, dilation_doubly_commuting, dilation_nica, dilation_nica_pairs,
    rank_profile, uniqueness_check, verify_dilation, Coordinates, DilationReport, FullDilationReport, GradeRank,
    SymbolResidual, Tolerances, TruncatedDilation, UniquenessReport,
};
pub use gram::{
    build_gram, defect_block, verify_comp_identities, CompResiduals, GradedOperator, GramSystem, EXACT_NORM_LIMIT,
};

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedspace::{MultiIndex, Subset};
use crate::linalg::{hermitian_eigenvalues, identity, residual, spectral_norm, CMatrix};
use crate::representation::{Representation, RELATION_TOL};

/// Default PSD tolerance, scaled by `max(1, ‖A‖)`.
pub const PSD_TOL: f64 = 1e-10;

/// `Σ_{u⊆v} (−1)^{|u|} I_{e(v)−e(u)}⊗T̃*_{e(u)}T̃_{e(u)}`, Hermitized.
pub fn brehmer_defect(rep: &Representation, v: Subset) -> Result<CMatrix> {
    if v.indices().any(|i| i >= rep.k()) {
        return Err(Error::Domain(format!("subset {v} is not contained in 1..={}", rep.k())));
    }
    defect_block(rep, &MultiIndex::indicator(rep.k(), v))
}

/// True when `min_eig ≥ −tol·max(1, norm)`.
pub fn is_psd(min_eig: f64, norm: f64, tol: f64) -> bool {
    min_eig >= -tol * norm.max(1.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct SubsetEigenvalue {
    /// 1-based generator indices.
    pub v: Vec<usize>,
    pub min_eigenvalue: f64,
    pub norm: f64,
    pub psd: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BrehmerCertificate {
    pub subsets: Vec<SubsetEigenvalue>,
    pub tol_psd: f64,
    pub holds: bool,
}

impl BrehmerCertificate {
    pub fn min_eigenvalue(&self) -> f64 {
        self.subsets
            .iter()
            .map(|s| s.min_eigenvalue)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn entry(&self, v: &[usize]) -> Option<&SubsetEigenvalue> {
        self.subsets.iter().find(|s| s.v == v)
    }
}

impl fmt::Display for BrehmerCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "condition (D) {} (tol_psd {:.1e})",
            if self.holds { "holds" } else { "fails" },
            self.tol_psd
        )?;
        for s in &self.subsets {
            let v: Vec<String> = s.v.iter().map(|i| i.to_string()).collect();
            writeln!(
                f,
                "  v={{{}}}  min eig {:+.6e}  {}",
                v.join(","),
                s.min_eigenvalue,
                if s.psd { "ok" } else { "NEGATIVE" }
            )?;
        }
        Ok(())
    }
}

/// Minimum eigenvalue of every Brehmer defect over the nonempty subsets of `[k]`.
pub fn check_regular_dilation(rep: &Representation, tol_psd: f64) -> Result<BrehmerCertificate> {
    let mut subsets = Vec::new();
    for v in Subset::all(rep.k()).filter(|v| !v.is_empty()) {
        let d = brehmer_defect(rep, v)?;
        let min_eigenvalue = hermitian_eigenvalues(&d)[0];
        let norm = spectral_norm(&d);
        subsets.push(SubsetEigenvalue {
            v: v.indices().map(|i| i + 1).collect(),
            min_eigenvalue,
            norm,
            psd: is_psd(min_eigenvalue, norm, tol_psd),
        });
    }
    let holds = subsets.iter().all(|s| s.psd);
    Ok(BrehmerCertificate {
        subsets,
        tol_psd,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductFormulaReport {
    pub v: Vec<usize>,
    /// `‖defect − ∏_{i∈v} (I − I⊗T̃⁽ⁱ⁾*T̃⁽ⁱ⁾)‖`
    pub residual: f64,
    /// Largest commutator norm between two factors.
    pub commutator: f64,
}

/// Compares the defect for `v` with the product of the single-generator
/// defects lifted to `X(e(v))⊗H`. Requires a doubly commuting representation.
pub fn product_formula_check(rep: &Representation, v: Subset) -> Result<ProductFormulaReport> {
    let dc = rep.is_doubly_commuting();
    if !dc.doubly_commuting {
        return Err(Error::Precondition(format!(
            "representation is not doubly commuting (residual {:.3e} > {RELATION_TOL:.0e})",
            dc.max_residual
        )));
    }
    let k = rep.k();
    let ev = MultiIndex::indicator(k, v);
    let defect = brehmer_defect(rep, v)?;
    let dim = defect.nrows();
    let mut factors = Vec::new();
    for i in v.indices() {
        let ei = MultiIndex::unit(k, i);
        let lifted = rep.lift(&ev.sub(&ei)?, &rep.gram(&ei)?, &ei, &ei)?;
        factors.push(identity(dim) - lifted);
    }
    let product = factors.iter().fold(identity(dim), |acc, f| acc * f);
    let mut commutator: f64 = 0.0;
    for a in 0..factors.len() {
        for b in a + 1..factors.len() {
            commutator = commutator.max(residual(&(&factors[a] * &factors[b]), &(&factors[b] * &factors[a])));
        }
    }
    Ok(ProductFormulaReport {
        v: v.indices().map(|i| i + 1).collect(),
        residual: residual(&defect, &product),
        commutator,
    })
}
