//! Truncated Fock representation, Nica covariance, von Neumann margins and
//! characters of the scalar-twist algebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gradedspace::{theta_embed, BoxSpace, MultiIndex, ProductSystem, DEFAULT_CAP};
use crate::linalg::{hstack, kron_eye_right, residual, spectral_norm, CMatrix, C64, ONE, ZERO};
use crate::representation::{compose_word, NcPolynomial, Representation};

/// Tolerance used to decide `λ_{i,j} = 1` and `t_i t_j = 0`.
pub const CHARACTER_TOL: f64 = 1e-12;

/// Creation operators `L(e⁽ⁱ⁾_l)` on `⊕_{0≤n≤N} X(n)⊗ℂ^h`, with blocks
/// leaving the box set to zero.
#[derive(Clone, Debug)]
pub struct TruncatedFock {
    system: ProductSystem,
    space: BoxSpace,
    creation: Vec<Vec<CMatrix>>,
}

impl TruncatedFock {
    pub fn new(system: &ProductSystem, bound: &MultiIndex) -> Result<Self> {
        Self::with_multiplicity(system, bound, 1, DEFAULT_CAP)
    }

    /// Fock space tensored with `ℂ^h`; the creation operators act as `L ⊗ I_h`.
    pub fn with_multiplicity(system: &ProductSystem, bound: &MultiIndex, hdim: usize, cap: usize) -> Result<Self> {
        let space = BoxSpace::new(system, bound, hdim, cap)?;
        let k = system.k();
        let mut creation: Vec<Vec<CMatrix>> = system
            .dims()
            .iter()
            .map(|&d| vec![CMatrix::zeros(space.total(), space.total()); d])
            .collect();
        for (src, n) in space.grades().iter().enumerate() {
            for (i, ops) in creation.iter_mut().enumerate() {
                let ei = MultiIndex::unit(k, i);
                let Some(dst) = space.index_of(&n.add(&ei)?) else {
                    continue;
                };
                let theta = theta_embed(system, &ei, n)?;
                let dn = system.word_dim(&n.word()?);
                for (l, op) in ops.iter_mut().enumerate() {
                    let block = kron_eye_right(&theta.columns(l * dn, dn).into_owned(), hdim);
                    op.view_mut((space.offset(dst), space.offset(src)), block.shape())
                        .copy_from(&block);
                }
            }
        }
        Ok(TruncatedFock {
            system: system.clone(),
            space,
            creation,
        })
    }

    pub fn system(&self) -> &ProductSystem {
        &self.system
    }

    pub fn space(&self) -> &BoxSpace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.total()
    }

    /// `L(e⁽ⁱ⁾_l)`.
    pub fn creation(&self, i: usize, l: usize) -> &CMatrix {
        &self.creation[i][l]
    }

    /// `L̃⁽ⁱ⁾ = [L(e⁽ⁱ⁾_1) ⋯ L(e⁽ⁱ⁾_{d_i})]`.
    pub fn row(&self, i: usize) -> CMatrix {
        hstack(&self.creation[i])
    }

    pub fn rows(&self) -> Vec<CMatrix> {
        (0..self.system.k()).map(|i| self.row(i)).collect()
    }

    /// The creation operators scaled by `c_i`, as a representation on the
    /// truncated Fock space.
    pub fn as_representation(&self, scales: &[f64]) -> Result<Representation> {
        let blocks = self
            .creation
            .iter()
            .zip(scales)
            .map(|(ops, &c)| ops.iter().map(|m| m.scale(c)).collect())
            .collect();
        Representation::new(self.system.clone(), self.dim(), blocks)
    }

    /// Orthonormal basis of the grades `≤ bound` (a co-invariant subspace).
    pub fn lower_set_basis(&self, bound: &MultiIndex) -> CMatrix {
        let coords = self.space.coordinates_where(|g| g.le(bound));
        let mut q = CMatrix::zeros(self.dim(), coords.len());
        for (col, &row) in coords.iter().enumerate() {
            q[(row, col)] = ONE;
        }
        q
    }

    /// `sup ‖L(ξ)*L(η) − ⟨ξ,η⟩I‖` over basis pairs, restricted to grades `n`
    /// with `n + e_i ≤ N`.
    pub fn toeplitz_residual(&self) -> f64 {
        let k = self.system.k();
        let mut worst = 0.0f64;
        for i in 0..k {
            let ei = MultiIndex::unit(k, i);
            let bound = self.space.bound().clone();
            let coords = self
                .space
                .coordinates_where(|g| g.add(&ei).map(|s| s.le(&bound)).unwrap_or(false));
            let mut q = CMatrix::zeros(self.dim(), coords.len());
            for (col, &row) in coords.iter().enumerate() {
                q[(row, col)] = ONE;
            }
            for a in 0..self.system.dim(i) {
                for b in 0..self.system.dim(i) {
                    let g = self.creation[i][a].adjoint() * &self.creation[i][b] * &q;
                    let expected = if a == b {
                        q.clone()
                    } else {
                        CMatrix::zeros(q.nrows(), q.ncols())
                    };
                    worst = worst.max(residual(&g, &expected));
                }
            }
        }
        worst
    }
}

/// Weight of `S_i δ_n = λ(n,i) δ_{n+e_i}` for a scalar system, as produced by
/// moving the new letter `i` into position past every earlier letter `j < i`:
/// `λ(n,i) = ∏_{j<i} λ_{i,j}^{n_j}` (0-based `i`).
pub fn scalar_shift_oracle(lambda: &CMatrix, n: &MultiIndex, i: usize) -> Result<C64> {
    shift_weight(lambda, n, i, |j| lambda[(i, j)])
}

/// Largest entrywise difference between the braided creation operators and
/// the closed-form weights on a scalar system.
pub fn oracle_residual(fock: &TruncatedFock, lambda: &CMatrix) -> Result<f64> {
    let space = fock.space();
    let k = fock.system().k();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        let op = fock.creation(i, 0);
        for (src, n) in space.grades().iter().enumerate() {
            let target = n.add(&MultiIndex::unit(k, i))?;
            let expected = match space.index_of(&target) {
                Some(dst) => Some((space.offset(dst), scalar_shift_oracle(lambda, n, i)?)),
                None => None,
            };
            let col = space.offset(src);
            for row in 0..op.nrows() {
                let want = match expected {
                    Some((r, w)) if r == row => w,
                    _ => ZERO,
                };
                worst = worst.max((op[(row, col)] - want).norm());
            }
        }
    }
    Ok(worst)
}

/// The same product with the factors `λ_{j,i}` instead of `λ_{i,j}`. This is
/// the complex conjugate of [`scalar_shift_oracle`] and does not satisfy
/// `S_iS_j = λ_{i,j}S_jS_i`; kept for comparison.
pub fn scalar_shift_weight_transposed(lambda: &CMatrix, n: &MultiIndex, i: usize) -> Result<C64> {
    shift_weight(lambda, n, i, |j| lambda[(j, i)])
}

fn shift_weight(lambda: &CMatrix, n: &MultiIndex, i: usize, factor: impl Fn(usize) -> C64) -> Result<C64> {
    ProductSystem::scalar(lambda)?;
    if n.len() != lambda.nrows() || i >= n.len() {
        return Err(Error::Dimension("multi-index does not match λ".into()));
    }
    if !n.is_nonnegative() {
        return Err(Error::Domain(format!("grade {n} has a negative entry")));
    }
    let mut w = ONE;
    for j in 0..i {
        w *= factor(j).powi(n.get(j) as i32);
    }
    Ok(w)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", content = "residual", rename_all = "snake_case")]
pub enum NicaOutcome {
    Residual(f64),
    /// The admissible domain is empty.
    Inconclusive,
}

impl NicaOutcome {
    pub fn passes(&self, tol: f64) -> Option<bool> {
        match self {
            NicaOutcome::Residual(r) => Some(*r <= tol),
            NicaOutcome::Inconclusive => None,
        }
    }
}

/// Residual of `Ṽ_nṼ_n*Ṽ_mṼ_m* = Ṽ_{n∨m}Ṽ_{n∨m}*` for isometric rows
/// `Ṽ⁽ⁱ⁾` on a space of dimension `dim`, restricted to the columns of `domain`.
pub fn nica_residual(
    system: &ProductSystem,
    rows: &[CMatrix],
    dim: usize,
    n: &MultiIndex,
    m: &MultiIndex,
    domain: &CMatrix,
) -> Result<NicaOutcome> {
    if domain.ncols() == 0 {
        return Ok(NicaOutcome::Inconclusive);
    }
    let j = n.join(m)?;
    let proj = |g: &MultiIndex| -> Result<CMatrix> {
        let v = compose_word(system, rows, dim, &g.word()?);
        Ok(&v * v.adjoint())
    };
    let lhs = proj(n)? * (proj(m)? * domain);
    let rhs = proj(&j)? * domain;
    Ok(NicaOutcome::Residual(residual(&lhs, &rhs)))
}

/// Nica check for a representation by genuine isometries on all of `H`.
pub fn nica_check_isometric(rep: &Representation, n: &MultiIndex, m: &MultiIndex) -> Result<NicaOutcome> {
    let rows: Vec<CMatrix> = (0..rep.k()).map(|i| rep.row(i).clone()).collect();
    let h = rep.hdim();
    nica_residual(rep.system(), &rows, h, n, m, &crate::linalg::identity(h))
}

/// Nica check for truncated creation operators: the identity is exact on the
/// grades `p` with `p + (n∨m) ≤ N`.
pub fn nica_check_fock(fock: &TruncatedFock, n: &MultiIndex, m: &MultiIndex) -> Result<NicaOutcome> {
    let Some(bound) = admissible_bound(fock.space().bound(), n, m)? else {
        return Ok(NicaOutcome::Inconclusive);
    };
    let domain = fock.lower_set_basis(&bound);
    nica_residual(fock.system(), &fock.rows(), fock.dim(), n, m, &domain)
}

/// `N − (n∨m)` when nonnegative.
pub fn admissible_bound(bound: &MultiIndex, n: &MultiIndex, m: &MultiIndex) -> Result<Option<MultiIndex>> {
    let p = bound.sub(&n.join(m)?)?;
    Ok(p.is_nonnegative().then_some(p))
}

#[derive(Clone, Debug, Serialize)]
pub struct VnReport {
    pub norm_t: f64,
    /// `‖p(S)‖` compressed to the boxes `(N,…,N)`, `N = 1, 2, …`.
    pub norm_s_by_n: Vec<f64>,
    pub margin: f64,
    pub monotone: bool,
}

/// Relative slack allowed when checking that box norms never decrease.
pub const MONOTONE_TOL: f64 = 1e-12;

/// Evaluates `p` at the representation and at truncated creation operators
/// over the cubes `(N,…,N)` for `N = 1..=max_n`.
pub fn vn_margin(rep: &Representation, p: &NcPolynomial, max_n: usize) -> Result<VnReport> {
    p.check_letters(rep.system().dims())?;
    if max_n == 0 {
        return Err(Error::Domain("need at least one box size".into()));
    }
    let norm_t = spectral_norm(&p.eval(rep.hdim(), |i, l| rep.block(i, l).clone()));
    let mut norm_s_by_n = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let fock = TruncatedFock::new(rep.system(), &MultiIndex::splat(rep.k(), n as i64))?;
        norm_s_by_n.push(spectral_norm(&p.eval(fock.dim(), |i, l| fock.creation(i, l).clone())));
    }
    let monotone = norm_s_by_n
        .windows(2)
        .all(|w| w[1] >= w[0] - MONOTONE_TOL * w[0].max(1.0));
    let last = *norm_s_by_n.last().expect("max_n ≥ 1");
    Ok(VnReport {
        norm_t,
        norm_s_by_n,
        margin: last - norm_t,
        monotone,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CharacterViolation {
    /// `|t_i| > 1` (1-based).
    Modulus { i: usize, value: f64 },
    /// `t_i t_j ≠ 0` although `λ_{i,j} ≠ 1` (1-based).
    Product { i: usize, j: usize, value: f64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterVerdict {
    pub accepted: bool,
    pub violations: Vec<CharacterViolation>,
    /// Pairs whose `λ_{i,j}` is within `1e−8` of 1 without being equal to it
    /// at [`CHARACTER_TOL`].
    pub near_boundary: Vec<(usize, usize)>,
}

/// Decides whether `t` is a character of the algebra generated by the
/// `λ`-twisted shifts.
pub fn character_set(lambda: &CMatrix, t: &[C64]) -> Result<CharacterVerdict> {
    ProductSystem::scalar(lambda)?;
    let k = lambda.nrows();
    if t.len() != k {
        return Err(Error::Dimension(format!("point has {} coordinates, k = {k}", t.len())));
    }
    let mut violations = Vec::new();
    let mut near_boundary = Vec::new();
    for (i, z) in t.iter().enumerate() {
        if z.norm() > 1.0 + CHARACTER_TOL {
            violations.push(CharacterViolation::Modulus {
                i: i + 1,
                value: z.norm(),
            });
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let gap = (lambda[(i, j)] - ONE).norm();
            if gap <= CHARACTER_TOL {
                continue;
            }
            if gap <= 1e-8 {
                near_boundary.push((i + 1, j + 1));
            }
            let prod = (t[i] * t[j]).norm();
            if prod > CHARACTER_TOL {
                violations.push(CharacterViolation::Product {
                    i: i + 1,
                    j: j + 1,
                    value: prod,
                });
            }
        }
    }
    Ok(CharacterVerdict {
        accepted: violations.is_empty(),
        violations,
        near_boundary,
    })
}

/// The one-dimensional representation `T⁽ⁱ⁾ = t_i`.
pub fn character_representation(lambda: &CMatrix, t: &[C64]) -> Result<Representation> {
    let sys = ProductSystem::scalar(lambda)?;
    let blocks = t.iter().map(|&z| vec![CMatrix::from_element(1, 1, z)]).collect();
    Representation::new(sys, 1, blocks)
}
