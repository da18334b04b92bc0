use crate::error::{Error, Result};
use crate::linalg::{identity, kron_eye_left, kron_eye_right, CMatrix};

use super::index::MultiIndex;
use super::system::ProductSystem;

/// Default cap on any flattened dimension.
pub const DEFAULT_CAP: usize = 20_000;

/// Shape of the flattened space `X(n) ⊗ H`: letters of `E₁` first, then `E₂`,
/// …, then `E_k`, with the `H` factor last, row-major.
#[derive(Clone, Debug)]
pub struct GradedBasisLayout {
    grade: MultiIndex,
    word: Vec<usize>,
    factor_dims: Vec<usize>,
    hdim: usize,
}

impl GradedBasisLayout {
    pub fn new(system: &ProductSystem, grade: &MultiIndex, hdim: usize) -> Result<Self> {
        if grade.len() != system.k() {
            return Err(Error::Dimension(format!(
                "grade {grade} has length {} but k = {}",
                grade.len(),
                system.k()
            )));
        }
        let word = grade.word()?;
        let factor_dims = word.iter().map(|&g| system.dim(g)).collect();
        Ok(GradedBasisLayout {
            grade: grade.clone(),
            word,
            factor_dims,
            hdim,
        })
    }

    pub fn grade(&self) -> &MultiIndex {
        &self.grade
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn fiber_dim(&self) -> usize {
        self.factor_dims.iter().product()
    }

    pub fn dim(&self) -> usize {
        self.fiber_dim() * self.hdim
    }

    /// Flat index of `e_{l₁}⊗⋯⊗e_{l_m}⊗h_j` (0-based letters, in word order).
    pub fn flat_index(&self, letters: &[usize], h: usize) -> usize {
        assert_eq!(letters.len(), self.factor_dims.len(), "letter count");
        let mut idx = 0;
        for (&l, &d) in letters.iter().zip(&self.factor_dims) {
            assert!(l < d, "letter out of range");
            idx = idx * d + l;
        }
        idx * self.hdim + h
    }
}

/// Errors with [`Error::ResourceCap`] if `dim` exceeds `cap`.
pub fn check_cap(dim: usize, cap: usize) -> Result<()> {
    if dim > cap {
        Err(Error::ResourceCap { requested: dim, cap })
    } else {
        Ok(())
    }
}

/// Left-multiplies `m` in place by `I_left ⊗ t ⊗ I_right`, where `t` acts on two
/// adjacent factors of combined dimension `t.nrows()`.
fn apply_local(m: &mut CMatrix, t: &CMatrix, left: usize, right: usize) {
    let dt = t.nrows();
    let cols = m.ncols();
    let mut gathered = CMatrix::zeros(dt, cols);
    for a in 0..left {
        for c in 0..right {
            let row = |x: usize| (a * dt + x) * right + c;
            for x in 0..dt {
                gathered.row_mut(x).copy_from(&m.row(row(x)));
            }
            let out = t * &gathered;
            for x in 0..dt {
                m.row_mut(row(x)).copy_from(&out.row(x));
            }
        }
    }
}

/// Applies the adjacent transposition at position `p` of `word` to `m`
/// (whose rows live on the flattened space of `word`) and updates `word`.
fn swap_at(system: &ProductSystem, word: &mut [usize], p: usize, m: &mut CMatrix) {
    let (a, b) = (word[p], word[p + 1]);
    if a != b {
        let left: usize = word[..p].iter().map(|&g| system.dim(g)).product();
        let right: usize = word[p + 2..].iter().map(|&g| system.dim(g)).product();
        let t = system.twist_ref(a, b).expect("distinct letters");
        apply_local(m, t, left, right);
    }
    word.swap(p, p + 1);
}

/// Applies the given adjacent transpositions, in order, starting from `word`.
/// Returns the unitary from the flattened `word` space to the flattened space
/// of the resulting word, together with that word. Equal-letter swaps act as
/// the identity.
pub fn apply_swap_path(system: &ProductSystem, word: &[usize], swaps: &[usize]) -> Result<(CMatrix, Vec<usize>)> {
    let mut w = word.to_vec();
    let mut m = identity(system.word_dim(word));
    for &p in swaps {
        if p + 1 >= w.len() {
            return Err(Error::Domain(format!(
                "swap position {p} out of range for word of length {}",
                w.len()
            )));
        }
        swap_at(system, &mut w, p, &mut m);
    }
    Ok((m, w))
}

/// Target position of every letter of `from` inside `to`, matching equal
/// letters in order.
fn stable_targets(from: &[usize], to: &[usize]) -> Result<Vec<usize>> {
    if from.len() != to.len() {
        return Err(Error::Domain("words have different lengths".into()));
    }
    let mut used = vec![false; to.len()];
    from.iter()
        .map(|&g| {
            let pos = (0..to.len())
                .find(|&q| !used[q] && to[q] == g)
                .ok_or_else(|| Error::Domain("words are not rearrangements of each other".into()))?;
            used[pos] = true;
            Ok(pos)
        })
        .collect()
}

/// Bubble-sort schedule of adjacent transpositions taking `from` to `to`.
pub fn bubble_schedule(from: &[usize], to: &[usize]) -> Result<Vec<usize>> {
    let mut targets = stable_targets(from, to)?;
    let mut swaps = Vec::new();
    let n = targets.len();
    for pass in 0..n {
        for p in 0..n.saturating_sub(pass + 1) {
            if targets[p] > targets[p + 1] {
                targets.swap(p, p + 1);
                swaps.push(p);
            }
        }
    }
    Ok(swaps)
}

/// Unitary from the flattened space of `from` onto that of `to`, built from
/// adjacent twists `I ⊗ t_{i,j} ⊗ I`.
pub fn reorder_unitary(system: &ProductSystem, from: &[usize], to: &[usize]) -> Result<CMatrix> {
    if let Some(&g) = from.iter().chain(to).find(|&&g| g >= system.k()) {
        return Err(Error::Domain(format!("letter {} exceeds k = {}", g + 1, system.k())));
    }
    let swaps = bubble_schedule(from, to)?;
    let (m, _) = apply_swap_path(system, from, &swaps)?;
    Ok(m)
}

/// `θ_{n,m}: X(n)⊗X(m) → X(n+m)`.
pub fn theta_embed(system: &ProductSystem, n: &MultiIndex, m: &MultiIndex) -> Result<CMatrix> {
    let (wn, wm) = (n.word()?, m.word()?);
    let sum = n.add(m)?;
    let from: Vec<usize> = wn.into_iter().chain(wm).collect();
    reorder_unitary(system, &from, &sum.word()?)
}

/// The operator `I_{X(a)} ⊗ op` with the suppressed isomorphisms made explicit:
/// for `op: X(in)⊗H → X(out)⊗H` this returns the map `X(a+in)⊗H → X(a+out)⊗H`
/// equal to `(θ_{a,out}⊗I_H)(I_{X(a)}⊗op)(θ_{a,in}^*⊗I_H)`.
pub fn lift_left(
    system: &ProductSystem,
    a: &MultiIndex,
    op: &CMatrix,
    input: &MultiIndex,
    output: &MultiIndex,
    hdim: usize,
) -> Result<CMatrix> {
    let da = system.word_dim(&a.word()?);
    let (din, dout) = (
        system.word_dim(&input.word()?) * hdim,
        system.word_dim(&output.word()?) * hdim,
    );
    if op.shape() != (dout, din) {
        return Err(Error::Dimension(format!(
            "operator is {}×{}, expected {dout}×{din}",
            op.nrows(),
            op.ncols()
        )));
    }
    if da == 1 && a.is_zero() {
        return Ok(op.clone());
    }
    let mut out = kron_eye_left(da, op);
    if let Some(th_in) = theta_if_nontrivial(system, a, input)? {
        out *= kron_eye_right(&th_in, hdim).adjoint();
    }
    if let Some(th_out) = theta_if_nontrivial(system, a, output)? {
        out = kron_eye_right(&th_out, hdim) * out;
    }
    Ok(out)
}

/// `θ_{n,m}`, or `None` when the concatenated word is already sorted.
fn theta_if_nontrivial(system: &ProductSystem, n: &MultiIndex, m: &MultiIndex) -> Result<Option<CMatrix>> {
    let (wn, wm) = (n.word()?, m.word()?);
    match (wn.last(), wm.first()) {
        (Some(&x), Some(&y)) if x > y => theta_embed(system, n, m).map(Some),
        _ => Ok(None),
    }
}
