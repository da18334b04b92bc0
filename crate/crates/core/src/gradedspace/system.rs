use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, c, identity, kron_eye_left, kron_eye_right, residual, CMatrix, C64, ONE};

/// Tolerance for unitarity of twists and for the braid coherence identity.
pub const COHERENCE_TOL: f64 = 1e-12;

/// A product system over `Z₊ᵏ` with finite-dimensional fibers `E₁,…,E_k`
/// (coefficients `ℂ`), determined by the twists `t_{i,j}: E_i⊗E_j → E_j⊗E_i`.
///
/// Only `i > j` twists are stored. The matrix of `t_{i,j}` has column index
/// `l·d_j + m` for the input `e⁽ⁱ⁾_l ⊗ e⁽ʲ⁾_m` and row index `r·d_i + s` for the
/// output `e⁽ʲ⁾_r ⊗ e⁽ⁱ⁾_s` (all indices 0-based).
#[derive(Clone, Debug)]
pub struct ProductSystem {
    dims: Vec<usize>,
    // twists[i][j] for i > j
    twists: Vec<Vec<CMatrix>>,
    // adjoints, twists_inv[i][j] = t_{i,j}^* = t_{j,i} as a map E_j⊗E_i → E_i⊗E_j
    twists_inv: Vec<Vec<CMatrix>>,
}

impl ProductSystem {
    /// Builds a system from the `i > j` twists (0-based keys); absent twists
    /// default to the untwisted flip. Unitarity and braid coherence are
    /// enforced at [`COHERENCE_TOL`].
    pub fn new(dims: Vec<usize>, twists: BTreeMap<(usize, usize), CMatrix>) -> Result<Self> {
        let sys = Self::new_unchecked(dims, twists)?;
        sys.check_unitary()?;
        sys.check_coherence()?;
        Ok(sys)
    }

    /// Like [`ProductSystem::new`] but only checks shapes. Used to examine
    /// candidate twist families before accepting them.
    pub fn new_unchecked(dims: Vec<usize>, mut twists: BTreeMap<(usize, usize), CMatrix>) -> Result<Self> {
        let k = dims.len();
        if k == 0 {
            return Err(Error::Domain("a product system needs k ≥ 1".into()));
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Domain(format!("fiber E_{} has dimension 0", i + 1)));
        }
        for &(i, j) in twists.keys() {
            if i >= k || j >= i {
                return Err(Error::Domain(format!(
                    "twist key ({},{}) must satisfy k ≥ i > j ≥ 1",
                    i + 1,
                    j + 1
                )));
            }
        }
        let mut table = Vec::with_capacity(k);
        let mut table_inv = Vec::with_capacity(k);
        for i in 0..k {
            let mut row = Vec::with_capacity(i);
            let mut row_inv = Vec::with_capacity(i);
            for j in 0..i {
                let t = twists.remove(&(i, j)).unwrap_or_else(|| flip_matrix(dims[i], dims[j]));
                let n = dims[i] * dims[j];
                if t.shape() != (n, n) {
                    return Err(Error::Dimension(format!(
                        "twist ({},{}) must be {n}×{n}, got {}×{}",
                        i + 1,
                        j + 1,
                        t.nrows(),
                        t.ncols()
                    )));
                }
                row_inv.push(t.adjoint());
                row.push(t);
            }
            table.push(row);
            table_inv.push(row_inv);
        }
        Ok(ProductSystem {
            dims,
            twists: table,
            twists_inv: table_inv,
        })
    }

    /// All twists the flip: `X(n)` is the plain symmetric-position tensor product.
    pub fn untwisted(dims: Vec<usize>) -> Result<Self> {
        Self::new(dims, BTreeMap::new())
    }

    /// One-dimensional fibers with phases: `t_{i,j}(a⊗b) = λ_{i,j} b⊗a`.
    /// `lambda` is the full `k×k` table; it must be unimodular with
    /// `λ_{i,i}=1` and `λ_{j,i}=λ_{i,j}⁻¹`.
    pub fn scalar(lambda: &CMatrix) -> Result<Self> {
        check_lambda(lambda)?;
        let k = lambda.nrows();
        let mut twists = BTreeMap::new();
        for i in 0..k {
            for j in 0..i {
                twists.insert((i, j), CMatrix::from_element(1, 1, lambda[(i, j)]));
            }
        }
        Self::new(vec![1; k], twists)
    }

    /// Twists given by permutations `θ_{i,j}` of `[d_i]×[d_j]`:
    /// `t_{i,j}(e⁽ⁱ⁾_l⊗e⁽ʲ⁾_m) = e⁽ʲ⁾_r⊗e⁽ⁱ⁾_s` whenever `θ_{i,j}(l,m) = (s,r)`.
    pub fn from_permutations(dims: Vec<usize>, perms: &BTreeMap<(usize, usize), Vec<(usize, usize)>>) -> Result<Self> {
        let mut twists = BTreeMap::new();
        for (&(i, j), perm) in perms {
            let (di, dj) = (dims[i], dims[j]);
            if perm.len() != di * dj {
                return Err(Error::Dimension(format!(
                    "permutation ({},{}) needs {} entries",
                    i + 1,
                    j + 1,
                    di * dj
                )));
            }
            let mut t = linalg::zeros(di * dj, di * dj);
            for (col, &(s, r)) in perm.iter().enumerate() {
                if s >= di || r >= dj {
                    return Err(Error::Domain("permutation image out of range".into()));
                }
                t[(r * di + s, col)] = ONE;
            }
            twists.insert((i, j), t);
        }
        Self::new(dims, twists)
    }

    /// Twist defined from a unitary `u` in the `(q,m),(p,l)` indexing:
    /// `t(e⁽ⁱ⁾_q⊗e⁽ʲ⁾_m) = Σ u_{(q,m)(p,l)} e⁽ʲ⁾_l⊗e⁽ⁱ⁾_p`.
    pub fn twist_from_u(u: &CMatrix, di: usize, dj: usize) -> CMatrix {
        let mut t = linalg::zeros(di * dj, di * dj);
        for q in 0..di {
            for m in 0..dj {
                for p in 0..di {
                    for l in 0..dj {
                        t[(l * di + p, q * dj + m)] = u[(q * dj + m, p * dj + l)];
                    }
                }
            }
        }
        t
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn is_scalar(&self) -> bool {
        self.dims.iter().all(|&d| d == 1)
    }

    /// `t_{i,j}: E_i⊗E_j → E_j⊗E_i` for any ordered pair; `t_{i,i}` is the identity.
    pub fn twist(&self, i: usize, j: usize) -> CMatrix {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Greater => self.twists[i][j].clone(),
            Less => self.twists_inv[j][i].clone(),
            Equal => identity(self.dims[i] * self.dims[i]),
        }
    }

    pub(crate) fn twist_ref(&self, i: usize, j: usize) -> Option<&CMatrix> {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Greater => Some(&self.twists[i][j]),
            Less => Some(&self.twists_inv[j][i]),
            Equal => None,
        }
    }

    /// The stored `i > j` twists, keyed 0-based.
    pub fn stored_twists(&self) -> BTreeMap<(usize, usize), CMatrix> {
        let mut out = BTreeMap::new();
        for i in 0..self.k() {
            for j in 0..i {
                out.insert((i, j), self.twists[i][j].clone());
            }
        }
        out
    }

    /// For scalar systems, the phase table `λ_{i,j}`.
    pub fn lambda(&self) -> Option<CMatrix> {
        if !self.is_scalar() {
            return None;
        }
        let k = self.k();
        Some(CMatrix::from_fn(k, k, |i, j| {
            if i == j {
                ONE
            } else {
                self.twist(i, j)[(0, 0)]
            }
        }))
    }

    pub fn word_dim(&self, word: &[usize]) -> usize {
        word.iter().map(|&g| self.dims[g]).product()
    }

    pub fn check_unitary(&self) -> Result<()> {
        for i in 0..self.k() {
            for j in 0..i {
                let t = &self.twists[i][j];
                let r = residual(&(t.adjoint() * t), &identity(t.nrows()));
                if r > COHERENCE_TOL {
                    return Err(Error::NonUnitaryTwist {
                        i: i + 1,
                        j: j + 1,
                        residual: r,
                    });
                }
            }
        }
        Ok(())
    }

    /// Residual of the braid identity
    /// `(t_{j,i}⊗I)(I⊗t_{l,i})(t_{l,j}⊗I) = (I⊗t_{l,j})(t_{l,i}⊗I)(I⊗t_{j,i})`
    /// on `E_l⊗E_j⊗E_i`.
    pub fn hexagon_residual(&self, i: usize, j: usize, l: usize) -> f64 {
        let (di, dj, dl) = (self.dims[i], self.dims[j], self.dims[l]);
        let lhs = kron_eye_right(&self.twist(j, i), dl)
            * kron_eye_left(dj, &self.twist(l, i))
            * kron_eye_right(&self.twist(l, j), di);
        let rhs = kron_eye_left(di, &self.twist(l, j))
            * kron_eye_right(&self.twist(l, i), dj)
            * kron_eye_left(dl, &self.twist(j, i));
        residual(&lhs, &rhs)
    }

    /// Largest hexagon residual over all triples.
    pub fn coherence_residual(&self) -> f64 {
        let k = self.k();
        let mut worst = 0.0f64;
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if i == j || j == l || i == l {
                        continue;
                    }
                    worst = worst.max(self.hexagon_residual(i, j, l));
                }
            }
        }
        worst
    }

    pub fn check_coherence(&self) -> Result<()> {
        let k = self.k();
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    if i == j || j == l || i == l {
                        continue;
                    }
                    let r = self.hexagon_residual(i, j, l);
                    if r > COHERENCE_TOL {
                        return Err(Error::Incoherent {
                            i: i + 1,
                            j: j + 1,
                            l: l + 1,
                            residual: r,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Change of orthonormal basis in every fiber: `t'_{i,j} = (U_j⊗U_i) t_{i,j} (U_i⊗U_j)*`.
    /// Preserves coherence.
    pub fn conjugated(&self, unitaries: &[CMatrix]) -> Result<Self> {
        let mut twists = BTreeMap::new();
        for i in 0..self.k() {
            for j in 0..i {
                let left = linalg::kron(&unitaries[j], &unitaries[i]);
                let right = linalg::kron(&unitaries[i], &unitaries[j]).adjoint();
                twists.insert((i, j), left * &self.twists[i][j] * right);
            }
        }
        Self::new(self.dims.clone(), twists)
    }
}

/// The untwisted flip `e_l⊗e_m ↦ e_m⊗e_l` from `E_i⊗E_j` to `E_j⊗E_i`.
pub fn flip_matrix(di: usize, dj: usize) -> CMatrix {
    let mut t = linalg::zeros(di * dj, di * dj);
    for l in 0..di {
        for m in 0..dj {
            t[(m * di + l, l * dj + m)] = ONE;
        }
    }
    t
}

fn check_lambda(lambda: &CMatrix) -> Result<()> {
    let k = lambda.nrows();
    if lambda.ncols() != k {
        return Err(Error::Dimension("λ table must be square".into()));
    }
    for i in 0..k {
        if (lambda[(i, i)] - ONE).norm() > COHERENCE_TOL {
            return Err(Error::Domain(format!("λ_{{{0},{0}}} must be 1", i + 1)));
        }
        for j in 0..k {
            let x = lambda[(i, j)];
            if (x.norm() - 1.0).abs() > COHERENCE_TOL {
                return Err(Error::Domain(format!("λ_{{{},{}}} is not unimodular", i + 1, j + 1)));
            }
            if (x * lambda[(j, i)] - ONE).norm() > COHERENCE_TOL {
                return Err(Error::Domain(format!(
                    "λ_{{{},{}}} is not the inverse of λ_{{{},{}}}",
                    j + 1,
                    i + 1,
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Builds a full λ table from the lower-triangle phases `λ_{i,j}`, `i > j`.
pub fn lambda_table(k: usize, lower: impl Fn(usize, usize) -> C64) -> CMatrix {
    CMatrix::from_fn(k, k, |i, j| {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => ONE,
            Greater => lower(i, j),
            Less => lower(j, i).conj(),
        }
    })
}

/// Families of coherent twists used by generators and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwistFamily {
    Untwisted,
    /// Phases on the flip: `t(e_l⊗e_m) = μ_{lm} e_m⊗e_l`; always coherent.
    Diagonal,
    /// Permutation twists; drawn at random and kept only if coherent.
    Permutation,
    /// A diagonal family conjugated by Haar unitaries in each fiber.
    DenseUnitary,
}

impl ProductSystem {
    /// Draws a random coherent system of the given family.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: Vec<usize>, family: TwistFamily) -> Result<Self> {
        let k = dims.len();
        match family {
            TwistFamily::Untwisted => Self::untwisted(dims),
            TwistFamily::Diagonal => {
                let mut twists = BTreeMap::new();
                for i in 0..k {
                    for j in 0..i {
                        let mut t = flip_matrix(dims[i], dims[j]);
                        for col in 0..t.ncols() {
                            let phase = linalg::random_unit_phase(rng);
                            let mut column = t.column_mut(col);
                            column *= phase;
                        }
                        twists.insert((i, j), t);
                    }
                }
                Self::new(dims, twists)
            }
            TwistFamily::DenseUnitary => {
                let base = Self::random(rng, dims.clone(), TwistFamily::Diagonal)?;
                let us: Vec<CMatrix> = dims.iter().map(|&d| linalg::random_unitary(rng, d)).collect();
                base.conjugated(&us)
            }
            TwistFamily::Permutation => {
                // Random permutations are coherent for k ≤ 2. For k ≥ 3 sample
                // until the braid identity holds; conjugating the flip by
                // random fiber permutations always succeeds, so fall back to it.
                for _ in 0..2000 {
                    let mut perms = BTreeMap::new();
                    for i in 0..k {
                        for j in 0..i {
                            let mut cells: Vec<(usize, usize)> =
                                (0..dims[i]).flat_map(|s| (0..dims[j]).map(move |r| (s, r))).collect();
                            cells.shuffle(rng);
                            perms.insert((i, j), cells);
                        }
                    }
                    match Self::from_permutations(dims.clone(), &perms) {
                        Ok(sys) => return Ok(sys),
                        Err(Error::Incoherent { .. }) => continue,
                        Err(e) => return Err(e),
                    }
                }
                let flip = Self::untwisted(dims.clone())?;
                let perms: Vec<CMatrix> = dims
                    .iter()
                    .map(|&d| {
                        let mut idx: Vec<usize> = (0..d).collect();
                        idx.shuffle(rng);
                        let mut p = linalg::zeros(d, d);
                        for (col, &row) in idx.iter().enumerate() {
                            p[(row, col)] = ONE;
                        }
                        p
                    })
                    .collect();
                flip.conjugated(&perms)
            }
        }
    }

    /// Scalar system with random unit phases, or with phases that are powers
    /// of `exp(2πi/q)` when `root_order` is given.
    pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R, k: usize, root_order: Option<u32>) -> Result<Self> {
        let phases: Vec<Vec<C64>> = (0..k)
            .map(|i| {
                (0..i)
                    .map(|_| match root_order {
                        Some(q) => {
                            let s = rng.random_range(0..q);
                            C64::from_polar(1.0, std::f64::consts::TAU * f64::from(s) / f64::from(q))
                        }
                        None => linalg::random_unit_phase(rng),
                    })
                    .collect()
            })
            .collect();
        Self::scalar(&lambda_table(k, |i, j| phases[i][j]))
    }
}

#[allow(dead_code)]
pub(crate) fn unit_phase(theta: f64) -> C64 {
    c(theta.cos(), theta.sin())
}
