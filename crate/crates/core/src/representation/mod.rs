//! Completely contractive representations of a product system with
//! finite-dimensional fibers: `k` row contractions compatible with the twists.

mod consdc;
mod generate;
mod poly;

pub use consdc::{consdc_suite, ConsdcReport};
pub use generate::{
    clock_shift, random_cc, scalar_tuple, scaled_twisted_unitaries, tensor_doubly_commuting, Generator,
};
pub use poly::{NcPolynomial, Term};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedspace::{lift_left, MultiIndex, ProductSystem};
use crate::linalg::{
    self, hstack, identity, kron_eye_left, kron_eye_right, mul_kron_eye_left, mul_kron_eye_right, residual,
    spectral_norm, CMatrix,
};

/// Contractivity slack for `σ_max(T̃⁽ⁱ⁾)`.
pub const CONTRACTION_TOL: f64 = 1e-10;
/// Tolerance for the twisted commutation relation and double commutation.
pub const RELATION_TOL: f64 = 1e-10;

/// A representation on `H = ℂ^h`: for each generator `i`, the images
/// `T⁽ⁱ⁾_1,…,T⁽ⁱ⁾_{d_i}` of the fixed orthonormal basis of `E_i`.
#[derive(Clone, Debug)]
pub struct Representation {
    system: ProductSystem,
    hdim: usize,
    blocks: Vec<Vec<CMatrix>>,
    rows: Vec<CMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairResidual {
    pub i: usize,
    pub j: usize,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    /// `σ_max(T̃⁽ⁱ⁾)` per generator.
    pub norms: Vec<f64>,
    /// `1 − σ_max(T̃⁽ⁱ⁾)`.
    pub margins: Vec<f64>,
    /// Residuals of the twisted commutation relation for `i < j` (1-based).
    pub commutation: Vec<PairResidual>,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublyCommutingReport {
    /// One entry per ordered pair `i ≠ j` (1-based).
    pub residuals: Vec<PairResidual>,
    pub max_residual: f64,
    pub doubly_commuting: bool,
}

impl Representation {
    pub fn new(system: ProductSystem, hdim: usize, blocks: Vec<Vec<CMatrix>>) -> Result<Self> {
        if hdim == 0 {
            return Err(Error::Domain("H must have positive dimension".into()));
        }
        if blocks.len() != system.k() {
            return Err(Error::Dimension(format!(
                "{} generator lists for k = {}",
                blocks.len(),
                system.k()
            )));
        }
        for (i, list) in blocks.iter().enumerate() {
            if list.len() != system.dim(i) {
                return Err(Error::Dimension(format!(
                    "generator {} has {} blocks but d_{} = {}",
                    i + 1,
                    list.len(),
                    i + 1,
                    system.dim(i)
                )));
            }
            if let Some(b) = list.iter().find(|b| b.shape() != (hdim, hdim)) {
                return Err(Error::Dimension(format!(
                    "block of generator {} is {}×{}, expected {hdim}×{hdim}",
                    i + 1,
                    b.nrows(),
                    b.ncols()
                )));
            }
        }
        let rows = blocks.iter().map(|list| hstack(list)).collect();
        Ok(Representation {
            system,
            hdim,
            blocks,
            rows,
        })
    }

    pub fn zero(system: ProductSystem, hdim: usize) -> Self {
        let blocks = system
            .dims()
            .iter()
            .map(|&d| vec![linalg::zeros(hdim, hdim); d])
            .collect();
        Self::new(system, hdim, blocks).expect("zero blocks have consistent shapes")
    }

    /// Rebuilds the representation from rows `T̃⁽ⁱ⁾` of shape `h × d_i·h`.
    pub fn from_rows(system: ProductSystem, hdim: usize, rows: Vec<CMatrix>) -> Result<Self> {
        let blocks = rows
            .iter()
            .zip(system.dims())
            .map(|(r, &d)| {
                if r.shape() != (hdim, d * hdim) {
                    return Err(Error::Dimension("row shape".into()));
                }
                Ok((0..d).map(|l| r.columns(l * hdim, hdim).into_owned()).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(system, hdim, blocks)
    }

    pub fn system(&self) -> &ProductSystem {
        &self.system
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    pub fn k(&self) -> usize {
        self.system.k()
    }

    pub fn blocks(&self) -> &[Vec<CMatrix>] {
        &self.blocks
    }

    pub fn block(&self, i: usize, l: usize) -> &CMatrix {
        &self.blocks[i][l]
    }

    /// `T̃⁽ⁱ⁾: E_i⊗H → H`.
    pub fn row(&self, i: usize) -> &CMatrix {
        &self.rows[i]
    }

    /// Applies `f` to every block.
    pub fn map_blocks(&self, f: impl Fn(&CMatrix) -> CMatrix) -> Result<Self> {
        let blocks: Vec<Vec<CMatrix>> = self.blocks.iter().map(|l| l.iter().map(&f).collect()).collect();
        let hdim = blocks.iter().flatten().next().map(|b| b.nrows()).unwrap_or(self.hdim);
        Self::new(self.system.clone(), hdim, blocks)
    }

    /// Simultaneous conjugation `T ↦ U T U*`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<Self> {
        self.map_blocks(|b| u * b * u.adjoint())
    }

    /// Multiplies all blocks of generator `i` by `scales[i]`.
    pub fn scaled(&self, scales: &[f64]) -> Result<Self> {
        let blocks = self
            .blocks
            .iter()
            .zip(scales)
            .map(|(l, &s)| l.iter().map(|b| b.scale(s)).collect())
            .collect();
        Self::new(self.system.clone(), self.hdim, blocks)
    }

    /// `T̃_w: E_{w₁}⊗⋯⊗E_{w_m}⊗H → H` for an arbitrary word, composed as
    /// `T̃⁽ʷ¹⁾(I⊗T̃⁽ʷ²⁾)⋯`.
    pub fn ttilde_word(&self, word: &[usize]) -> CMatrix {
        compose_word(&self.system, &self.rows, self.hdim, word)
    }

    /// `T̃⁽ⁱ⁾_n = T̃⁽ⁱ⁾(I⊗T̃⁽ⁱ⁾)⋯(I⊗⋯⊗T̃⁽ⁱ⁾)`.
    pub fn ttilde_power(&self, i: usize, n: usize) -> CMatrix {
        self.ttilde_word(&vec![i; n])
    }

    /// `T̃_n: X(n)⊗H → H` for `n ≥ 0`.
    pub fn ttilde(&self, n: &MultiIndex) -> Result<CMatrix> {
        self.check_len(n)?;
        Ok(self.ttilde_word(&n.word()?))
    }

    /// `T(n) = T̃_{n₋}^* T̃_{n₊}`, mapping `X(n₊)⊗H → X(n₋)⊗H`.
    pub fn symbol(&self, n: &MultiIndex) -> Result<CMatrix> {
        self.check_len(n)?;
        Ok(self.ttilde(&n.neg())?.adjoint() * self.ttilde(&n.pos())?)
    }

    /// `T̃_n^* T̃_n`.
    pub fn gram(&self, n: &MultiIndex) -> Result<CMatrix> {
        let t = self.ttilde(n)?;
        Ok(t.adjoint() * t)
    }

    /// `I_{X(a)} ⊗ op` for `op: X(input)⊗H → X(output)⊗H`.
    pub fn lift(&self, a: &MultiIndex, op: &CMatrix, input: &MultiIndex, output: &MultiIndex) -> Result<CMatrix> {
        lift_left(&self.system, a, op, input, output, self.hdim)
    }

    fn check_len(&self, n: &MultiIndex) -> Result<()> {
        if n.len() != self.k() {
            Err(Error::Dimension(format!(
                "multi-index {n} has length {} but k = {}",
                n.len(),
                self.k()
            )))
        } else {
            Ok(())
        }
    }

    /// Residual of `T̃⁽ⁱ⁾(I⊗T̃⁽ʲ⁾) = T̃⁽ʲ⁾(I⊗T̃⁽ⁱ⁾)(t_{i,j}⊗I_H)`.
    pub fn commutation_residual(&self, i: usize, j: usize) -> f64 {
        let lhs = self.ttilde_word(&[i, j]);
        let rhs = self.ttilde_word(&[j, i]) * kron_eye_right(&self.system.twist(i, j), self.hdim);
        residual(&lhs, &rhs)
    }

    pub fn validate(&self) -> ValidationReport {
        let norms: Vec<f64> = self.rows.iter().map(spectral_norm).collect();
        let margins = norms.iter().map(|s| 1.0 - s).collect();
        let mut commutation = Vec::new();
        for i in 0..self.k() {
            for j in i + 1..self.k() {
                commutation.push(PairResidual {
                    i: i + 1,
                    j: j + 1,
                    residual: self.commutation_residual(i, j),
                });
            }
        }
        let valid =
            norms.iter().all(|&s| s <= 1.0 + CONTRACTION_TOL) && commutation.iter().all(|p| p.residual <= RELATION_TOL);
        ValidationReport {
            norms,
            margins,
            commutation,
            valid,
        }
    }

    pub fn is_valid(&self) -> bool {
        self.validate().valid
    }

    pub fn is_doubly_commuting(&self) -> DoublyCommutingReport {
        doubly_commuting_residuals(&self.system, &self.rows, self.hdim, None)
    }
}

/// `R_{w₁}(I⊗R_{w₂})(I⊗I⊗R_{w₃})⋯` for rows `R_i: E_i⊗ℂ^dim → ℂ^dim`.
pub fn compose_word(system: &ProductSystem, rows: &[CMatrix], dim: usize, word: &[usize]) -> CMatrix {
    let mut acc = identity(dim);
    for &g in word.iter().rev() {
        acc = &rows[g] * kron_eye_left(system.dim(g), &acc);
    }
    acc
}

/// Residuals of `T̃⁽ʲ⁾*T̃⁽ⁱ⁾ = (I_{e_j}⊗T̃⁽ⁱ⁾)(t_{i,j}⊗I)(I_{e_i}⊗T̃⁽ʲ⁾*)` for
/// rows `T̃⁽ⁱ⁾` on a space of dimension `hdim`. When `domains` is given, both
/// sides are restricted to `E_i⊗ran(Q_i)` for the isometries `Q_i`.
pub fn doubly_commuting_residuals(
    system: &ProductSystem,
    rows: &[CMatrix],
    hdim: usize,
    domains: Option<&[CMatrix]>,
) -> DoublyCommutingReport {
    let k = system.k();
    let mut residuals = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let (di, dj) = (system.dim(i), system.dim(j));
            let side = |x: CMatrix| -> (CMatrix, CMatrix) {
                let lhs = linalg::mul(&rows[j].adjoint(), &linalg::mul(&rows[i], &x));
                let inner = mul_kron_eye_left(di, &rows[j].adjoint(), &x);
                let rhs = mul_kron_eye_left(dj, &rows[i], &mul_kron_eye_right(&system.twist(i, j), hdim, &inner));
                (lhs, rhs)
            };
            let (lhs, rhs) = match domains {
                Some(q) => side(kron_eye_left(di, &q[i])),
                None => side(identity(rows[i].ncols())),
            };
            let r = residual(&lhs, &rhs);
            residuals.push(PairResidual {
                i: i + 1,
                j: j + 1,
                residual: r,
            });
        }
    }
    let max_residual = residuals.iter().map(|p| p.residual).fold(0.0, f64::max);
    DoublyCommutingReport {
        doubly_commuting: max_residual <= RELATION_TOL,
        residuals,
        max_residual,
    }
}
