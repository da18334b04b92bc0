use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fock::{admissible_bound, NicaOutcome, TruncatedFock};
use crate::gradedspace::{BoxSpace, MultiIndex};
use crate::linalg::{
    eigh_descending, hermitian_eigenvalues, hstack, identity, kron_eye_left, mul, mul_kron_eye_left, pinv, range_basis,
    spectral_norm, vstack, CMatrix, C64,
};
use crate::representation::{doubly_commuting_residuals, DoublyCommutingReport, Representation};

use super::gram::{build_gram, CompResiduals, GramSystem, EXACT_NORM_LIMIT};
use super::{check_regular_dilation, BrehmerCertificate};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Tolerances {
    pub psd: f64,
    pub residual: f64,
    /// Eigenvalues of `R` below `null_cut·λ_max` span the null space.
    pub null_cut: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            psd: 1e-10,
            residual: 1e-8,
            null_cut: 1e-10,
        }
    }
}

/// How orthonormal coordinates on the truncated dilation space are chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "seed", rename_all = "snake_case")]
pub enum Coordinates {
    /// `J = Λ^{1/2}U*` from the eigendecomposition of `R`.
    Spectral,
    /// The spectral frame rotated by a Haar unitary drawn from the seed.
    Rotated(u64),
    /// `J = D^{1/2}S` assembled from the per-grade defect blocks.
    Factored,
}

/// The dilation space `K_N` in orthonormal coordinates. Column block `n` of
/// the frame `J` is `Ṽ_n` restricted to `X(n)⊗H`, so `J*J = R`.
#[derive(Clone, Debug)]
pub struct TruncatedDilation {
    system_dims: Vec<usize>,
    space: BoxSpace,
    coordinates: Coordinates,
    frame: CMatrix,
    embed_w: CMatrix,
    shifts: Vec<Vec<CMatrix>>,
    domains: Vec<CMatrix>,
    kept_eigenvalues: Vec<f64>,
    ambiguous: usize,
    null_cut: f64,
}

impl TruncatedDilation {
    pub fn bound(&self) -> &MultiIndex {
        self.space.bound()
    }

    pub fn space(&self) -> &BoxSpace {
        &self.space
    }

    pub fn kdim(&self) -> usize {
        self.frame.nrows()
    }

    pub fn coordinates(&self) -> Coordinates {
        self.coordinates
    }

    /// `W: H → K_N`.
    pub fn embed_w(&self) -> &CMatrix {
        &self.embed_w
    }

    /// `V⁽ⁱ⁾(e⁽ⁱ⁾_l)` on `K_N`, zero off the interior domain of `i`.
    pub fn shift(&self, i: usize, l: usize) -> &CMatrix {
        &self.shifts[i][l]
    }

    /// `Ṽ⁽ⁱ⁾: E_i⊗K_N → K_N`.
    pub fn shift_row(&self, i: usize) -> CMatrix {
        hstack(&self.shifts[i])
    }

    pub fn shift_rows(&self) -> Vec<CMatrix> {
        (0..self.shifts.len()).map(|i| self.shift_row(i)).collect()
    }

    /// Orthonormal basis of the interior domain of `V⁽ⁱ⁾`: the span of the
    /// grade frames `n` with `n + e_i ≤ N`.
    pub fn domain(&self, i: usize) -> &CMatrix {
        &self.domains[i]
    }

    pub fn domains(&self) -> &[CMatrix] {
        &self.domains
    }

    /// The frame `J: ⊕_{n≤N} X(n)⊗H → K_N`.
    pub fn frame(&self) -> &CMatrix {
        &self.frame
    }

    /// `Ṽ_n(X(n)⊗H)` as the column block of `J` for grade `n`.
    pub fn grade_frame(&self, n: &MultiIndex) -> Option<CMatrix> {
        let idx = self.space.index_of(n)?;
        Some(
            self.frame
                .columns(self.space.offset(idx), self.space.dim(idx))
                .into_owned(),
        )
    }

    /// Kept eigenvalues of `R` (or of the defect blocks for factored coordinates).
    pub fn kept_eigenvalues(&self) -> &[f64] {
        &self.kept_eigenvalues
    }

    /// Number of discarded eigenvalues within one decade below the null cut.
    pub fn ambiguous(&self) -> usize {
        self.ambiguous
    }

    /// `Ṽ_n` on `X(n)⊗K_N` for a word, applied to the columns of `x`.
    pub fn apply_word(&self, word: &[usize], x: &CMatrix) -> CMatrix {
        apply_word(&self.system_dims, &self.shift_rows(), self.kdim(), word, x)
    }
}

/// `Ṽ_w x` for rows `Ṽ⁽ⁱ⁾: E_i⊗ℂ^r → ℂ^r` and `x` with `dim(w)·r` rows,
/// evaluated right to left without forming Kronecker products.
pub fn apply_word(dims: &[usize], rows: &[CMatrix], r: usize, word: &[usize], x: &CMatrix) -> CMatrix {
    let mut cur = x.clone();
    for (depth, &g) in word.iter().enumerate().rev() {
        let outer: usize = word[..depth].iter().map(|&w| dims[w]).product();
        cur = mul_kron_eye_left(outer, &rows[g], &cur);
    }
    debug_assert_eq!(cur.nrows(), r);
    cur
}

/// `Ṽ_w* x`, returning a matrix with `dim(w)·r` rows.
pub fn apply_word_adjoint(dims: &[usize], rows: &[CMatrix], r: usize, word: &[usize], x: &CMatrix) -> CMatrix {
    let mut cur = x.clone();
    for (depth, &g) in word.iter().enumerate() {
        let outer: usize = word[..depth].iter().map(|&w| dims[w]).product();
        cur = mul_kron_eye_left(outer, &rows[g].adjoint(), &cur);
    }
    debug_assert_eq!(cur.nrows() % r.max(1), 0);
    cur
}

fn select_columns(m: &CMatrix, cols: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(m.nrows(), cols.len());
    for (dst, &src) in cols.iter().enumerate() {
        out.set_column(dst, &m.column(src));
    }
    out
}

/// `Λ^{1/2}U*` for the eigenpairs of `m` above `cut`, plus the count of
/// eigenvalues in `[cut/10, cut]`.
fn square_root_rows(m: &CMatrix, cut: f64) -> (CMatrix, Vec<f64>, usize) {
    let (values, vectors) = eigh_descending(m);
    let keep = values.iter().take_while(|&&v| v > cut).count();
    let ambiguous = values[keep..].iter().filter(|&&v| v >= cut / 10.0).count();
    let mut rows = CMatrix::zeros(keep, m.ncols());
    for a in 0..keep {
        let s = C64::from(values[a].sqrt());
        rows.set_row(a, &(vectors.column(a).adjoint() * s));
    }
    (rows, values[..keep].to_vec(), ambiguous)
}

/// Relative singular-value cut on frame blocks matching the eigenvalue cut on `R`.
fn frame_cut(null_cut: f64) -> f64 {
    null_cut.sqrt()
}

/// Builds the minimal regular isometric dilation truncated to the box: the
/// quotient of `⊕_{n≤N} X(n)⊗H` by the null space of the Gram form `R`, with
/// `V⁽ⁱ⁾(ξ)` induced by `g ↦ ξ⊗g(·−e_i)`.
pub fn construct_dilation(
    rep: &Representation,
    bound: &MultiIndex,
    coordinates: Coordinates,
    tol: &Tolerances,
    cap: usize,
) -> Result<TruncatedDilation> {
    let cert = check_regular_dilation(rep, tol.psd)?;
    if !cert.holds {
        return Err(Error::Precondition(format!("no regular isometric dilation\n{cert}")));
    }
    if bound.len() != rep.k() {
        return Err(Error::Dimension(format!(
            "box {bound} does not have length k = {}",
            rep.k()
        )));
    }
    if bound.entries().iter().any(|&b| b < 1) {
        return Err(Error::Domain(format!(
            "box {bound} needs every entry ≥ 1 to define the shifts"
        )));
    }
    let gram = build_gram(rep, bound, cap)?;
    construct_from_gram(rep, &gram, coordinates, tol, cap)
}

fn construct_from_gram(
    rep: &Representation,
    gram: &GramSystem,
    coordinates: Coordinates,
    tol: &Tolerances,
    cap: usize,
) -> Result<TruncatedDilation> {
    let space = gram.r.space().clone();
    let r_dense = gram.r.dense();
    let (frame, kept, ambiguous) = match coordinates {
        Coordinates::Spectral | Coordinates::Rotated(_) => {
            let lmax = hermitian_eigenvalues(&r_dense).last().cloned().unwrap_or(0.0);
            let (j, kept, amb) = square_root_rows(&r_dense, tol.null_cut * lmax);
            let j = match coordinates {
                Coordinates::Rotated(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    crate::linalg::random_unitary(&mut rng, j.nrows()) * j
                }
                _ => j,
            };
            (j, kept, amb)
        }
        Coordinates::Factored => {
            let dmax = (0..space.len())
                .map(|p| spectral_norm(gram.d.block(p, p).expect("diagonal block")))
                .fold(0.0, f64::max);
            let s_dense = gram.s.dense();
            let mut pieces = Vec::new();
            let mut kept = Vec::new();
            let mut amb = 0;
            for p in 0..space.len() {
                let (rows, vals, a) =
                    square_root_rows(gram.d.block(p, p).expect("diagonal block"), tol.null_cut * dmax);
                let range = space.range(p);
                pieces.push(rows * s_dense.rows(range.start, range.len()));
                kept.extend(vals);
                amb += a;
            }
            (vstack(&pieces), kept, amb)
        }
    };
    let r = frame.nrows();
    let k = rep.k();
    let zero = MultiIndex::zeros(k);
    let embed_w = frame
        .columns(space.offset(space.index_of(&zero).expect("vacuum grade")), rep.hdim())
        .into_owned();
    let fock = TruncatedFock::with_multiplicity(rep.system(), space.bound(), rep.hdim(), cap)?;
    let cut = frame_cut(tol.null_cut);
    let mut shifts = Vec::with_capacity(k);
    let mut domains = Vec::with_capacity(k);
    for i in 0..k {
        let ei = MultiIndex::unit(k, i);
        let bound = space.bound().clone();
        let cols = space.coordinates_where(|g| g.add(&ei).map(|s| s.le(&bound)).unwrap_or(false));
        let b = select_columns(&frame, &cols);
        let b_pinv = pinv(&b, cut);
        let ops = (0..rep.system().dim(i))
            .map(|l| &frame * select_columns(fock.creation(i, l), &cols) * &b_pinv)
            .collect();
        shifts.push(ops);
        domains.push(range_basis(&b, cut));
    }
    Ok(TruncatedDilation {
        system_dims: rep.system().dims().to_vec(),
        space,
        coordinates,
        frame: if r == 0 {
            CMatrix::zeros(0, r_dense.ncols())
        } else {
            frame
        },
        embed_w,
        shifts,
        domains,
        kept_eigenvalues: kept,
        ambiguous,
        null_cut: tol.null_cut,
    })
}

/// Spectral norm for matrices with both sides at most `EXACT_NORM_LIMIT`,
/// the Frobenius norm otherwise.
fn bounded_norm(m: &CMatrix) -> f64 {
    if m.nrows().min(m.ncols()) <= EXACT_NORM_LIMIT {
        spectral_norm(m)
    } else {
        m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn bounded_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    bounded_norm(&(a - b))
}

#[derive(Clone, Debug, Serialize)]
pub struct SymbolResidual {
    pub n: Vec<i64>,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradeRank {
    pub grade: Vec<i64>,
    /// Rank of `Ṽ_n(X(n)⊗H)`.
    pub frame_rank: usize,
    /// Rank of the frames of all grades `≤ n`.
    pub cumulative_frame_rank: usize,
    /// Rank of the principal block of `R` on grades `≤ n`.
    pub cumulative_gram_rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct DilationReport {
    pub bound: Vec<i64>,
    pub kdim: usize,
    pub coordinates: Coordinates,
    pub ambiguous_eigenvalues: usize,
    /// `‖W*W − I‖`
    pub w_isometry: f64,
    /// `‖Ṽ⁽ⁱ⁾* Ṽ⁽ⁱ⁾ − I‖` on `E_i⊗dom_i`, per generator.
    pub interior_isometry: Vec<f64>,
    /// `max_l ‖V⁽ⁱ⁾(e_l)*W − W T⁽ⁱ⁾_l*‖`, per generator.
    pub coinvariance: Vec<f64>,
    /// `‖Ṽ_n(I⊗W) − J_n‖` over grades: the shifts reproduce the frame.
    pub frame_consistency: f64,
    /// `(I⊗W*)Ṽ_{n₋}*Ṽ_{n₊}(I⊗W) − T(n)` for `n₊, n₋ ≤ N`.
    pub symbols: Vec<SymbolResidual>,
    pub max_symbol_residual: f64,
    /// `‖Ṽ_m*Ṽ_n − R(m,n)‖` over the box.
    pub isom: f64,
    /// Residuals over this size use the Frobenius bound.
    pub frobenius_bound: bool,
    pub tol: f64,
    pub passed: bool,
}

impl DilationReport {
    pub fn max_residual(&self) -> f64 {
        [
            self.w_isometry,
            self.frame_consistency,
            self.max_symbol_residual,
            self.isom,
        ]
        .into_iter()
        .chain(self.interior_isometry.iter().cloned())
        .chain(self.coinvariance.iter().cloned())
        .fold(0.0, f64::max)
    }
}

/// `Ṽ_n(I_{X(n)}⊗W)` for every grade of the box, built from the shifts.
fn shifted_frames(dil: &TruncatedDilation) -> Vec<CMatrix> {
    let space = &dil.space;
    let rows = dil.shift_rows();
    let r = dil.kdim();
    let mut frames: Vec<CMatrix> = Vec::with_capacity(space.len());
    for (idx, p) in space.grades().iter().enumerate() {
        if p.is_zero() {
            frames.push(dil.embed_w.clone());
            continue;
        }
        let g = (0..p.len()).find(|&i| p.get(i) > 0).expect("nonzero grade");
        let prev = space
            .index_of(&p.sub(&MultiIndex::unit(p.len(), g)).expect("same length"))
            .expect("lower grade in box");
        debug_assert!(prev < idx);
        let z = &rows[g] * kron_eye_left(dil.system_dims[g], &frames[prev]);
        debug_assert_eq!(z.nrows(), r);
        frames.push(z);
    }
    frames
}

/// Checks the regular-dilation properties on the box: `W` isometric, each
/// `Ṽ⁽ⁱ⁾` isometric on its interior domain, `V⁽ⁱ⁾(ξ)*W = WT⁽ⁱ⁾(ξ)*`, and
/// the compressions of `Ṽ_{n₋}*Ṽ_{n₊}` to `H` equal `T(n)`.
pub fn verify_dilation(rep: &Representation, dil: &TruncatedDilation, tol: f64) -> Result<DilationReport> {
    let k = rep.k();
    let h = rep.hdim();
    let w = &dil.embed_w;
    let w_isometry = bounded_residual(&(w.adjoint() * w), &identity(h));
    let mut interior_isometry = Vec::with_capacity(k);
    let mut coinvariance = Vec::with_capacity(k);
    for i in 0..k {
        let q = &dil.domains[i];
        let di = rep.system().dim(i);
        let restricted = dil.shift_row(i) * kron_eye_left(di, q);
        interior_isometry.push(bounded_residual(
            &(restricted.adjoint() * &restricted),
            &identity(di * q.ncols()),
        ));
        let mut worst: f64 = 0.0;
        for l in 0..di {
            let lhs = dil.shifts[i][l].adjoint() * w;
            let rhs = w * rep.block(i, l).adjoint();
            worst = worst.max(bounded_residual(&lhs, &rhs));
        }
        coinvariance.push(worst);
    }
    let frames = shifted_frames(dil);
    let space = &dil.space;
    let z = hstack(&frames);
    let frame_consistency = if z.ncols() == dil.frame.ncols() && dil.kdim() > 0 {
        bounded_residual(&z, &dil.frame)
    } else {
        0.0
    };
    let gram = build_r_dense(rep, space)?;
    let isom = if dil.kdim() > 0 {
        bounded_residual(&(z.adjoint() * &z), &gram)
    } else {
        bounded_norm(&gram)
    };
    let bound = space.bound();
    let mut symbols = Vec::new();
    for shifted in bound.add(bound)?.box_grades() {
        let n = shifted.sub(bound)?;
        let (pos, neg) = (n.pos(), n.neg());
        let zp = &frames[space.index_of(&pos).expect("positive part in box")];
        let zn = &frames[space.index_of(&neg).expect("negative part in box")];
        let lhs = zn.adjoint() * zp;
        let residual = bounded_residual(&lhs, &rep.symbol(&n)?);
        symbols.push(SymbolResidual {
            n: n.entries().to_vec(),
            residual,
        });
    }
    let max_symbol_residual = symbols.iter().map(|s| s.residual).fold(0.0, f64::max);
    let mut report = DilationReport {
        bound: bound.entries().to_vec(),
        kdim: dil.kdim(),
        coordinates: dil.coordinates,
        ambiguous_eigenvalues: dil.ambiguous,
        w_isometry,
        interior_isometry,
        coinvariance,
        frame_consistency,
        symbols,
        max_symbol_residual,
        isom,
        frobenius_bound: dil.kdim().max(space.total()) > EXACT_NORM_LIMIT,
        tol,
        passed: false,
    };
    report.passed = report.max_residual() <= tol;
    Ok(report)
}

fn build_r_dense(rep: &Representation, space: &BoxSpace) -> Result<CMatrix> {
    Ok(build_gram(rep, space.bound(), usize::MAX)?.r.dense())
}

/// Double commutation of the dilation shifts, each side restricted to
/// `E_i⊗dom_i`.
pub fn dilation_doubly_commuting(rep: &Representation, dil: &TruncatedDilation) -> DoublyCommutingReport {
    doubly_commuting_residuals(rep.system(), &dil.shift_rows(), dil.kdim(), Some(&dil.domains))
}

/// `Ṽ_nṼ_n*Ṽ_mṼ_m* = Ṽ_{n∨m}Ṽ_{n∨m}*` on the span of the grade frames
/// `p ≤ N − (n∨m)`. Inconclusive when that bound has a negative entry.
pub fn dilation_nica(dil: &TruncatedDilation, n: &MultiIndex, m: &MultiIndex) -> Result<NicaOutcome> {
    Ok(dilation_nica_pairs(dil, &[(n.clone(), m.clone())])?.remove(0))
}

/// [`dilation_nica`] for many pairs, sharing domains and range projections.
pub fn dilation_nica_pairs(dil: &TruncatedDilation, pairs: &[(MultiIndex, MultiIndex)]) -> Result<Vec<NicaOutcome>> {
    let rows = dil.shift_rows();
    let r = dil.kdim();
    let dims = &dil.system_dims;
    let mut domains: BTreeMap<Vec<i64>, CMatrix> = BTreeMap::new();
    let mut projections: BTreeMap<Vec<i64>, CMatrix> = BTreeMap::new();
    let mut projection = |g: &MultiIndex| -> Result<CMatrix> {
        if let Some(p) = projections.get(g.entries()) {
            return Ok(p.clone());
        }
        let w = g.word()?;
        let p = apply_word(
            dims,
            &rows,
            r,
            &w,
            &apply_word_adjoint(dims, &rows, r, &w, &identity(r)),
        );
        projections.insert(g.entries().to_vec(), p.clone());
        Ok(p)
    };
    let mut out = Vec::with_capacity(pairs.len());
    for (n, m) in pairs {
        let Some(p) = admissible_bound(dil.bound(), n, m)? else {
            out.push(NicaOutcome::Inconclusive);
            continue;
        };
        let domain = domains.entry(p.entries().to_vec()).or_insert_with(|| {
            let cols = dil.space.coordinates_where(|g| g.le(&p));
            range_basis(&select_columns(&dil.frame, &cols), frame_cut(dil.null_cut))
        });
        if domain.ncols() == 0 {
            out.push(NicaOutcome::Inconclusive);
            continue;
        }
        let lhs = mul(&projection(n)?, &mul(&projection(m)?, domain));
        let rhs = mul(&projection(&n.join(m)?)?, domain);
        out.push(NicaOutcome::Residual(bounded_residual(&lhs, &rhs)));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub kdim: usize,
    /// `‖U*U − I‖`
    pub unitary_left: f64,
    /// `‖UU* − I‖`
    pub unitary_right: f64,
    /// `‖U J_A − J_B‖`: `U` carries grade frames to grade frames.
    pub frame_match: f64,
    /// `‖U W_A − W_B‖`
    pub embedding_match: f64,
    /// `max_{i,l} ‖(U V_A − V_B U) Q_A‖` on interior domains.
    pub intertwining: f64,
}

impl UniquenessReport {
    pub fn max(&self) -> f64 {
        self.unitary_left
            .max(self.unitary_right)
            .max(self.frame_match)
            .max(self.embedding_match)
            .max(self.intertwining)
    }
}

/// The map `U: Ṽ^A_n(ξ⊗h) ↦ Ṽ^B_n(ξ⊗h)` between two truncated dilations of
/// the same representation on the same box.
pub fn uniqueness_check(a: &TruncatedDilation, b: &TruncatedDilation) -> Result<UniquenessReport> {
    if a.bound() != b.bound() || a.frame.ncols() != b.frame.ncols() {
        return Err(Error::Inconsistent("dilations were built over different boxes".into()));
    }
    if a.kdim() != b.kdim() {
        return Err(Error::Inconsistent(format!(
            "frame ranks differ: {} vs {}",
            a.kdim(),
            b.kdim()
        )));
    }
    let r = a.kdim();
    let u = &b.frame * pinv(&a.frame, frame_cut(a.null_cut));
    let mut intertwining: f64 = 0.0;
    for (i, ops) in a.shifts.iter().enumerate() {
        for (l, va) in ops.iter().enumerate() {
            let q = &a.domains[i];
            let lhs = &u * va * q;
            let rhs = &b.shifts[i][l] * &u * q;
            intertwining = intertwining.max(bounded_residual(&lhs, &rhs));
        }
    }
    Ok(UniquenessReport {
        kdim: r,
        unitary_left: bounded_residual(&(u.adjoint() * &u), &identity(r)),
        unitary_right: bounded_residual(&(&u * u.adjoint()), &identity(r)),
        frame_match: bounded_residual(&(&u * &a.frame), &b.frame),
        embedding_match: bounded_residual(&(&u * &a.embed_w), &b.embed_w),
        intertwining,
    })
}

/// Per-grade ranks of the frames and of the principal Gram blocks, with the
/// same eigenvalue cut relative to `λ_max(R)` used for the quotient.
pub fn rank_profile(rep: &Representation, dil: &TruncatedDilation) -> Result<Vec<GradeRank>> {
    let space = &dil.space;
    let r_full = build_gram(rep, space.bound(), usize::MAX)?.r;
    let lmax = hermitian_eigenvalues(&r_full.dense()).last().cloned().unwrap_or(0.0);
    let cut = dil.null_cut * lmax;
    let count_above = |m: &CMatrix| hermitian_eigenvalues(m).iter().filter(|&&v| v > cut).count();
    let mut out = Vec::with_capacity(space.len());
    for (idx, n) in space.grades().iter().enumerate() {
        let f = dil.frame.columns(space.offset(idx), space.dim(idx)).into_owned();
        let lower: Vec<usize> = (0..space.len()).filter(|&q| space.grades()[q].le(n)).collect();
        let cols = space.coordinates_where(|g| g.le(n));
        let jl = select_columns(&dil.frame, &cols);
        out.push(GradeRank {
            grade: n.entries().to_vec(),
            frame_rank: count_above(&(f.adjoint() * &f)),
            cumulative_frame_rank: count_above(&(jl.adjoint() * &jl)),
            cumulative_gram_rank: count_above(&r_full.principal(&lower)),
        });
    }
    Ok(out)
}

/// Brehmer certificate, Gram identities and dilation residuals in one report.
#[derive(Clone, Debug, Serialize)]
pub struct FullDilationReport {
    pub certificate: BrehmerCertificate,
    pub comp_identities: CompResiduals,
    pub dilation: DilationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_profile: Option<Vec<GradeRank>>,
}
