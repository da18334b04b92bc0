//! Dense complex matrix helpers shared by the graded-space, dilation and Fock
//! modules. Matrices are `nalgebra::DMatrix<C64>`; factorizations use faer.

use faer::{Mat, MatRef, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

/// Kronecker product `a ⊗ b` in the row-major flattening convention: the row
/// index of the result is `ra * b.nrows() + rb`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = zeros(ar * br, ac * bc);
    for ja in 0..ac {
        for ia in 0..ar {
            let s = a[(ia, ja)];
            if s == ZERO {
                continue;
            }
            for jb in 0..bc {
                for ib in 0..br {
                    out[(ia * br + ib, ja * bc + jb)] = s * b[(ib, jb)];
                }
            }
        }
    }
    out
}

/// `I_n ⊗ m` without materialising the identity.
pub fn kron_eye_left(n: usize, m: &CMatrix) -> CMatrix {
    if n == 1 {
        return m.clone();
    }
    let (r, cl) = m.shape();
    let mut out = zeros(n * r, n * cl);
    for blk in 0..n {
        out.view_mut((blk * r, blk * cl), (r, cl)).copy_from(m);
    }
    out
}

/// `(I_n ⊗ m) x` as one product: the row blocks of `x` are laid side by
/// side, multiplied, and stacked again.
pub fn mul_kron_eye_left(n: usize, m: &CMatrix, x: &CMatrix) -> CMatrix {
    let (r, cl) = m.shape();
    assert_eq!(x.nrows(), n * cl, "mul_kron_eye_left shape");
    let cols = x.ncols();
    let mut wide = zeros(cl, n * cols);
    for blk in 0..n {
        wide.columns_mut(blk * cols, cols).copy_from(&x.rows(blk * cl, cl));
    }
    let prod = mul(m, &wide);
    let mut out = zeros(n * r, cols);
    for blk in 0..n {
        out.rows_mut(blk * r, r).copy_from(&prod.columns(blk * cols, cols));
    }
    out
}

/// `(t ⊗ I_h) x` as a combination of the `h`-row blocks of `x`.
pub fn mul_kron_eye_right(t: &CMatrix, h: usize, x: &CMatrix) -> CMatrix {
    let (tr, tc) = t.shape();
    assert_eq!(x.nrows(), tc * h, "mul_kron_eye_right shape");
    let mut out = zeros(tr * h, x.ncols());
    for a in 0..tr {
        let mut acc = out.rows_mut(a * h, h);
        for b in 0..tc {
            let s = t[(a, b)];
            if s != ZERO {
                acc += x.rows(b * h, h) * s;
            }
        }
    }
    out
}

/// `m ⊗ I_n`.
pub fn kron_eye_right(m: &CMatrix, n: usize) -> CMatrix {
    if n == 1 {
        return m.clone();
    }
    kron(m, &identity(n))
}

fn to_faer(m: &CMatrix) -> Mat<C64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: MatRef<'_, C64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// `a * b` through faer's blocked kernels; nalgebra's generic complex
/// product is several times slower at the sizes the dilation checks reach.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "mul shape");
    if a.nrows() * a.ncols() * b.ncols() < 32 * 32 * 32 {
        return a * b;
    }
    from_faer((to_faer(a) * to_faer(b)).as_ref())
}

/// Thin SVD `m = U Σ V*`, singular values descending. nalgebra's complex SVD
/// loses accuracy on some well-conditioned inputs, so decompositions go
/// through faer.
fn thin_svd(m: &CMatrix) -> (CMatrix, Vec<f64>, CMatrix) {
    let svd = to_faer(m).thin_svd().expect("svd converges");
    let s = svd.S().column_vector().iter().map(|z| z.re).collect();
    (from_faer(svd.U()), s, from_faer(svd.V()))
}

fn singular_values(m: &CMatrix) -> Vec<f64> {
    to_faer(m).singular_values().expect("svd converges")
}

/// Largest singular value, from the Gram matrix on the shorter side. Empty
/// matrices have norm zero.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    let g = if m.nrows() <= m.ncols() {
        mul(m, &m.adjoint())
    } else {
        mul(&m.adjoint(), m)
    };
    hermitian_eigenvalues(&g).last().cloned().unwrap_or(0.0).max(0.0).sqrt()
}

pub fn hermitize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of the Hermitian part, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev = to_faer(&hermitize(m))
        .self_adjoint_eigenvalues(Side::Lower)
        .expect("eigensolver converges");
    ev.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalue"));
    ev
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).first().cloned().unwrap_or(0.0)
}

/// Hermitian eigendecomposition, eigenvalues in descending order with the
/// matching eigenvector columns.
pub fn eigh_descending(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), zeros(0, 0));
    }
    let eig = to_faer(&hermitize(m))
        .self_adjoint_eigen(Side::Lower)
        .expect("eigensolver converges");
    let ascending: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let u = eig.U();
    let values = ascending.iter().rev().cloned().collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| u[(i, n - 1 - j)]);
    (values, vectors)
}

/// Numerical rank with singular values compared against `rel_tol * σ_max`.
pub fn rank(m: &CMatrix, rel_tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = singular_values(m);
    let top = sv[0];
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Moore–Penrose pseudo-inverse with singular values below `rel_tol * σ_max`
/// treated as zero.
pub fn pinv(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let (r, cl) = m.shape();
    if r == 0 || cl == 0 {
        return zeros(cl, r);
    }
    let (u, s, v) = thin_svd(m);
    let keep = s.iter().take_while(|&&x| x > 0.0 && x > rel_tol * s[0]).count();
    let inv = CMatrix::from_diagonal(&DVector::from_iterator(
        keep,
        s[..keep].iter().map(|&x| C64::from(1.0 / x)),
    ));
    v.columns(0, keep) * inv * u.columns(0, keep).adjoint()
}

/// Orthogonal projection onto the column range of `m`.
pub fn range_projection(m: &CMatrix, rel_tol: f64) -> CMatrix {
    m * pinv(m, rel_tol)
}

/// Orthonormal basis for the column range of `m`.
pub fn range_basis(m: &CMatrix, rel_tol: f64) -> CMatrix {
    let (r, cl) = m.shape();
    if r == 0 || cl == 0 {
        return zeros(r, 0);
    }
    let (u, s, _) = thin_svd(m);
    let keep = s.iter().take_while(|&&x| x > 0.0 && x > rel_tol * s[0]).count();
    u.columns(0, keep).into_owned()
}

/// Horizontal concatenation of equally tall blocks.
pub fn hstack(blocks: &[CMatrix]) -> CMatrix {
    let rows = blocks.first().map(|b| b.nrows()).unwrap_or(0);
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        out.view_mut((0, off), (rows, b.ncols())).copy_from(b);
        off += b.ncols();
    }
    out
}

/// Vertical concatenation of equally wide blocks.
pub fn vstack(blocks: &[CMatrix]) -> CMatrix {
    let cols = blocks.first().map(|b| b.ncols()).unwrap_or(0);
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(rows, cols);
    let mut off = 0;
    for b in blocks {
        out.view_mut((off, 0), (b.nrows(), cols)).copy_from(b);
        off += b.nrows();
    }
    out
}

pub fn random_gaussian<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Haar-distributed unitary via QR of a complex Ginibre matrix with the
/// phases of `diag(R)` folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    if n == 0 {
        return zeros(0, 0);
    }
    let g = random_gaussian(rng, n, n);
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        let mut col = q.column_mut(j);
        col *= phase;
    }
    q
}

pub fn random_unit_phase<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    C64::from_polar(1.0, theta)
}

pub fn basis_vector(n: usize, k: usize) -> DVector<C64> {
    let mut v = DVector::zeros(n);
    v[k] = ONE;
    v
}

/// Spectral-norm distance; the workhorse residual of the whole crate.
pub fn residual(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "residual of mismatched shapes");
    spectral_norm(&(a - b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kron_matches_index_convention() {
        let a = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(2., 0.), c(3., 0.), c(4., 0.)]);
        let b = CMatrix::from_row_slice(1, 2, &[c(0., 1.), c(5., 0.)]);
        let k = kron(&a, &b);
        assert_eq!(k.shape(), (2, 4));
        assert_eq!(k[(1, 3)], c(20., 0.));
        assert_eq!(k[(0, 2)], c(0., 2.));
        assert_eq!(kron_eye_left(3, &a), kron(&identity(3), &a));
        assert_eq!(kron_eye_right(&a, 2), kron(&a, &identity(2)));
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = random_unitary(&mut rng, 6);
        assert!(residual(&(u.adjoint() * &u), &identity(6)) < 1e-12);
    }

    #[test]
    fn norm_and_pinv() {
        let m = CMatrix::from_row_slice(2, 3, &[c(3., 0.), ZERO, ZERO, ZERO, c(0., 4.), ZERO]);
        assert!((spectral_norm(&m) - 4.0).abs() < 1e-12);
        let p = pinv(&m, 1e-12);
        assert!(residual(&(&m * &p * &m), &m) < 1e-12);
        assert_eq!(rank(&m, 1e-12), 2);
        let proj = range_projection(&m.adjoint(), 1e-12);
        assert!(residual(&(&proj * &proj), &proj) < 1e-12);
    }

    #[test]
    fn eigh_orders_descending() {
        let m = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 1.), c(0., -1.), c(1., 0.)]);
        let (vals, vecs) = eigh_descending(&m);
        assert!((vals[0] - 2.0).abs() < 1e-12 && vals[1].abs() < 1e-12);
        let recon =
            &vecs * CMatrix::from_diagonal(&DVector::from_iterator(2, vals.iter().map(|&v| c(v, 0.)))) * vecs.adjoint();
        assert!(residual(&recon, &m) < 1e-12);
    }
}
