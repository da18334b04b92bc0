use rand::Rng;

use crate::error::{Error, Result};
use crate::fock::TruncatedFock;
use crate::gradedspace::{MultiIndex, ProductSystem};
use crate::linalg::{self, identity, kron, random_gaussian, spectral_norm, CMatrix, C64, ONE};

use super::Representation;

/// Largest root-of-unity order searched when realising a phase by clock and
/// shift matrices.
const MAX_ROOT_ORDER: u32 = 64;
/// Largest Hilbert-space dimension produced by the unitary model.
const MAX_UNITARY_DIM: usize = 4096;

/// Families of representations used for testing and search.
#[derive(Clone, Debug)]
pub enum Generator {
    /// One-dimensional `T⁽ⁱ⁾ = t_i` for a scalar system.
    ScalarTuple { lambda: CMatrix, t: Vec<C64> },
    /// `T⁽ⁱ⁾ = c_i W_i` with clock/shift unitaries `W_iW_j = λ_{i,j}W_jW_i`.
    ScaledTwistedUnitaries { lambda: CMatrix, c: Vec<C64> },
    /// Untwisted system, `T⁽ⁱ⁾_l = I⊗C_{i,l}⊗I` on `⊗ℂ^{h_i}`, random row contractions `C_i`.
    TensorDoublyCommuting { dims: Vec<usize>, factor_dims: Vec<usize> },
    /// Scaled truncated creation operators of a system, typically with
    /// permutation twists.
    KgraphPermutation {
        system: ProductSystem,
        bound: MultiIndex,
        scales: Vec<f64>,
    },
    /// A generic representation of dimension `hdim`, valid but usually not
    /// doubly commuting.
    RandomCc { system: ProductSystem, hdim: usize },
}

impl Generator {
    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Representation> {
        match self {
            Generator::ScalarTuple { lambda, t } => scalar_tuple(lambda, t),
            Generator::ScaledTwistedUnitaries { lambda, c } => scaled_twisted_unitaries(lambda, c),
            Generator::TensorDoublyCommuting { dims, factor_dims } => tensor_doubly_commuting(rng, dims, factor_dims),
            Generator::KgraphPermutation { system, bound, scales } => {
                TruncatedFock::new(system, bound)?.as_representation(scales)
            }
            Generator::RandomCc { system, hdim } => random_cc(rng, system, *hdim),
        }
    }
}

pub fn scalar_tuple(lambda: &CMatrix, t: &[C64]) -> Result<Representation> {
    let sys = ProductSystem::scalar(lambda)?;
    if t.len() != sys.k() {
        return Err(Error::Dimension(format!("{} scalars for k = {}", t.len(), sys.k())));
    }
    let blocks = t.iter().map(|&z| vec![CMatrix::from_element(1, 1, z)]).collect();
    let rep = Representation::new(sys, 1, blocks)?;
    let report = rep.validate();
    if !report.valid {
        return Err(Error::Precondition(format!(
            "scalars do not define a representation: norms {:?}, commutation {:?}",
            report.norms, report.commutation
        )));
    }
    Ok(rep)
}

/// Clock `U = diag(ω^a)` and shift `V e_a = e_{a+1}` with `UV = ωVU`, `ω = e^{2πi/q}`.
pub fn clock_shift(q: usize) -> (CMatrix, CMatrix) {
    let omega = C64::from_polar(1.0, std::f64::consts::TAU / q as f64);
    let u = CMatrix::from_fn(q, q, |r, c| if r == c { omega.powi(r as i32) } else { linalg::ZERO });
    let v = CMatrix::from_fn(q, q, |r, c| if r == (c + 1) % q { ONE } else { linalg::ZERO });
    (u, v)
}

/// `(q, s)` with `λ = e^{2πis/q}` and `q` minimal, or `None` if `λ` is not a
/// root of unity of order at most [`MAX_ROOT_ORDER`].
fn root_of_unity(lambda: C64) -> Option<(usize, usize)> {
    let turns = lambda.arg() / std::f64::consts::TAU;
    (1..=MAX_ROOT_ORDER).find_map(|q| {
        let s = (turns * f64::from(q)).round();
        let err = (turns * f64::from(q) - s).abs();
        (err < 1e-9).then(|| (q as usize, s.rem_euclid(f64::from(q)) as usize))
    })
}

pub fn scaled_twisted_unitaries(lambda: &CMatrix, c: &[C64]) -> Result<Representation> {
    let sys = ProductSystem::scalar(lambda)?;
    let k = sys.k();
    if c.len() != k {
        return Err(Error::Dimension(format!("{} scales for k = {k}", c.len())));
    }
    if let Some(z) = c.iter().find(|z| z.norm() > 1.0 + 1e-12) {
        return Err(Error::Domain(format!("scale {z} has modulus above 1")));
    }
    // One tensor leg per pair i < j with λ_{i,j} ≠ 1: W_i acts by U^s, W_j by V.
    let mut legs: Vec<(usize, Vec<CMatrix>)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            let lam = lambda[(i, j)];
            if (lam - ONE).norm() <= 1e-12 {
                continue;
            }
            let (q, s) = root_of_unity(lam).ok_or_else(|| {
                Error::Unsupported(format!(
                    "λ_{{{},{}}} = {lam} is not a root of unity of order ≤ {MAX_ROOT_ORDER}",
                    i + 1,
                    j + 1
                ))
            })?;
            let (u, v) = clock_shift(q);
            let mut us = identity(q);
            for _ in 0..s {
                us = &us * &u;
            }
            let mut ops = vec![identity(q); k];
            ops[i] = us;
            ops[j] = v;
            legs.push((q, ops));
        }
    }
    let h: usize = legs.iter().map(|(q, _)| *q).product();
    if h > MAX_UNITARY_DIM {
        return Err(Error::ResourceCap {
            requested: h,
            cap: MAX_UNITARY_DIM,
        });
    }
    let blocks = (0..k)
        .map(|g| {
            let w = legs.iter().fold(identity(1), |acc, (_, ops)| kron(&acc, &ops[g]));
            vec![w * c[g]]
        })
        .collect();
    Representation::new(sys, h, blocks)
}

/// Random row contraction `(C_1,…,C_d)` on `ℂ^h` with `σ_max` drawn from `[0.3, 1]`.
fn random_row_contraction<R: Rng + ?Sized>(rng: &mut R, h: usize, d: usize) -> Vec<CMatrix> {
    let row = random_gaussian(rng, h, d * h);
    let target: f64 = rng.random_range(0.3..=1.0);
    let row = row.scale(target / spectral_norm(&row));
    (0..d).map(|l| row.columns(l * h, h).into_owned()).collect()
}

pub fn tensor_doubly_commuting<R: Rng + ?Sized>(
    rng: &mut R,
    dims: &[usize],
    factor_dims: &[usize],
) -> Result<Representation> {
    if dims.len() != factor_dims.len() {
        return Err(Error::Dimension("one tensor factor per generator".into()));
    }
    let sys = ProductSystem::untwisted(dims.to_vec())?;
    let h: usize = factor_dims.iter().product();
    let blocks = dims
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let left: usize = factor_dims[..i].iter().product();
            let right: usize = factor_dims[i + 1..].iter().product();
            random_row_contraction(rng, factor_dims[i], d)
                .into_iter()
                .map(|c| kron(&kron(&identity(left), &c), &identity(right)))
                .collect()
        })
        .collect();
    Representation::new(sys, h, blocks)
}

/// Random valid representation. For untwisted systems the blocks are
/// polynomials in one random matrix; otherwise creation operators are
/// compressed to a random co-invariant subspace of the Fock space
/// (the vacuum, part of grade one, possibly part of grade two). Either base is
/// then conjugated by a random similarity and each generator rescaled.
pub fn random_cc<R: Rng + ?Sized>(rng: &mut R, system: &ProductSystem, hdim: usize) -> Result<Representation> {
    if hdim == 0 {
        return Err(Error::Domain("H must have positive dimension".into()));
    }
    let untwisted = system
        .stored_twists()
        .iter()
        .all(|(&(i, j), t)| *t == crate::gradedspace::flip_matrix(system.dim(i), system.dim(j)));
    let base = if untwisted && (hdim == 1 || rng.random_bool(0.5)) {
        commuting_polynomials(rng, system, hdim)?
    } else {
        fock_compression(rng, system, hdim)?
    };
    let g = random_gaussian(rng, hdim, hdim);
    let s = identity(hdim) + g.scale(0.5 / spectral_norm(&g).max(1e-300));
    let s_inv = s
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::Precondition("singular similarity".into()))?;
    let similar = base.map_blocks(|b| &s * b * &s_inv)?;
    let scales: Vec<f64> = (0..system.k())
        .map(|i| {
            let n = spectral_norm(similar.row(i));
            let target: f64 = rng.random_range(0.3..=1.0);
            if n > 0.0 {
                target / n
            } else {
                1.0
            }
        })
        .collect();
    similar.scaled(&scales)
}

fn commuting_polynomials<R: Rng + ?Sized>(rng: &mut R, system: &ProductSystem, hdim: usize) -> Result<Representation> {
    let a = random_gaussian(rng, hdim, hdim);
    let a = a.scale(1.0 / spectral_norm(&a).max(1e-300));
    let a2 = &a * &a;
    let blocks = system
        .dims()
        .iter()
        .map(|&d| {
            (0..d)
                .map(|_| {
                    let c = random_gaussian(rng, 1, 3);
                    identity(hdim) * c[(0, 0)] + &a * c[(0, 1)] + &a2 * c[(0, 2)]
                })
                .collect()
        })
        .collect();
    Representation::new(system.clone(), hdim, blocks)
}

fn fock_compression<R: Rng + ?Sized>(rng: &mut R, system: &ProductSystem, hdim: usize) -> Result<Representation> {
    let k = system.k();
    let fock = TruncatedFock::new(system, &MultiIndex::splat(k, 2))?;
    let space = fock.space();
    let grade1 = space.coordinates_where(|g| g.total() == 1);
    let grade2 = space.coordinates_where(|g| g.total() == 2);
    let extra = hdim - 1;
    if extra > grade1.len() + grade2.len() {
        return Err(Error::Unsupported(format!(
            "Fock compression supports h ≤ {}",
            1 + grade1.len() + grade2.len()
        )));
    }
    let (from1, from2) = if extra <= grade1.len() {
        (extra, 0)
    } else {
        (grade1.len(), extra - grade1.len())
    };
    let mut q = CMatrix::zeros(fock.dim(), hdim);
    q[(0, 0)] = ONE;
    let mut col = 1;
    for (coords, count) in [(&grade1, from1), (&grade2, from2)] {
        if count == 0 {
            continue;
        }
        let frame = linalg::random_unitary(rng, coords.len());
        for c in 0..count {
            for (r, &row) in coords.iter().enumerate() {
                q[(row, col)] = frame[(r, c)];
            }
            col += 1;
        }
    }
    let blocks = (0..k)
        .map(|i| {
            (0..system.dim(i))
                .map(|l| q.adjoint() * fock.creation(i, l) * &q)
                .collect()
        })
        .collect();
    Representation::new(system.clone(), hdim, blocks)
}
