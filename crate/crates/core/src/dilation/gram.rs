use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::Result;
use crate::gradedspace::{BoxSpace, MultiIndex, Subset};
use crate::linalg::{hermitize, identity, spectral_norm, CMatrix, ZERO};
use crate::representation::Representation;

/// Dense matrices up to this size get an exact spectral norm; larger
/// residuals are bounded by the Frobenius norm.
pub const EXACT_NORM_LIMIT: usize = 256;

/// A block matrix over the grades of a box; absent blocks are zero.
#[derive(Clone, Debug)]
pub struct GradedOperator {
    space: BoxSpace,
    blocks: BTreeMap<(usize, usize), CMatrix>,
}

impl GradedOperator {
    pub fn zero(space: &BoxSpace) -> Self {
        GradedOperator {
            space: space.clone(),
            blocks: BTreeMap::new(),
        }
    }

    pub fn identity(space: &BoxSpace) -> Self {
        let mut op = Self::zero(space);
        for idx in 0..space.len() {
            op.blocks.insert((idx, idx), identity(space.dim(idx)));
        }
        op
    }

    pub fn space(&self) -> &BoxSpace {
        &self.space
    }

    /// Block `(p, q)`: `X(q)⊗H → X(p)⊗H`, by grade position.
    pub fn block(&self, p: usize, q: usize) -> Option<&CMatrix> {
        self.blocks.get(&(p, q))
    }

    /// Block for the grades `p`, `q`, zero-filled if absent.
    pub fn block_at(&self, p: &MultiIndex, q: &MultiIndex) -> Option<CMatrix> {
        let (a, b) = (self.space.index_of(p)?, self.space.index_of(q)?);
        Some(
            self.blocks
                .get(&(a, b))
                .cloned()
                .unwrap_or_else(|| CMatrix::zeros(self.space.dim(a), self.space.dim(b))),
        )
    }

    pub fn insert(&mut self, p: usize, q: usize, block: CMatrix) {
        assert_eq!(block.shape(), (self.space.dim(p), self.space.dim(q)), "block shape");
        self.blocks.insert((p, q), block);
    }

    pub fn nonzero_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn adjoint(&self) -> Self {
        GradedOperator {
            space: self.space.clone(),
            blocks: self.blocks.iter().map(|(&(p, q), b)| ((q, p), b.adjoint())).collect(),
        }
    }

    /// Blockwise product, skipping zero blocks.
    pub fn mul(&self, rhs: &GradedOperator) -> Self {
        let mut by_row: HashMap<usize, Vec<(usize, &CMatrix)>> = HashMap::new();
        for (&(q, r), b) in &rhs.blocks {
            by_row.entry(q).or_default().push((r, b));
        }
        let mut out: BTreeMap<(usize, usize), CMatrix> = BTreeMap::new();
        for (&(p, q), a) in &self.blocks {
            let Some(row) = by_row.get(&q) else { continue };
            for &(r, b) in row {
                let prod = a * b;
                out.entry((p, r)).and_modify(|acc| *acc += &prod).or_insert(prod);
            }
        }
        GradedOperator {
            space: self.space.clone(),
            blocks: out,
        }
    }

    pub fn sub(&self, rhs: &GradedOperator) -> Self {
        let mut blocks = self.blocks.clone();
        for (&key, b) in &rhs.blocks {
            blocks.entry(key).and_modify(|acc| *acc -= b).or_insert_with(|| -b);
        }
        GradedOperator {
            space: self.space.clone(),
            blocks,
        }
    }

    pub fn dense(&self) -> CMatrix {
        let n = self.space.total();
        let mut m = CMatrix::zeros(n, n);
        for (&(p, q), b) in &self.blocks {
            m.view_mut((self.space.offset(p), self.space.offset(q)), b.shape())
                .copy_from(b);
        }
        m
    }

    /// Spectral norm when the assembled matrix is small, otherwise the
    /// Frobenius norm (an upper bound).
    pub fn norm_bound(&self) -> f64 {
        if self.space.total() <= EXACT_NORM_LIMIT {
            spectral_norm(&self.dense())
        } else {
            self.blocks
                .values()
                .map(|b| b.iter().map(|z| z.norm_sqr()).sum::<f64>())
                .sum::<f64>()
                .sqrt()
        }
    }

    /// The principal sub-block on the given grade positions, assembled densely.
    pub fn principal(&self, grades: &[usize]) -> CMatrix {
        let offsets: Vec<usize> = grades
            .iter()
            .scan(0, |acc, &g| {
                let o = *acc;
                *acc += self.space.dim(g);
                Some(o)
            })
            .collect();
        let n: usize = grades.iter().map(|&g| self.space.dim(g)).sum();
        let mut m = CMatrix::from_element(n, n, ZERO);
        for (a, &p) in grades.iter().enumerate() {
            for (b, &q) in grades.iter().enumerate() {
                if let Some(block) = self.blocks.get(&(p, q)) {
                    m.view_mut((offsets[a], offsets[b]), block.shape()).copy_from(block);
                }
            }
        }
        m
    }
}

/// The matrices `R`, `S`, `D`, `L` of the Gram calculus over a box.
#[derive(Clone, Debug)]
pub struct GramSystem {
    pub r: GradedOperator,
    pub s: GradedOperator,
    pub d: GradedOperator,
    pub l: GradedOperator,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompResiduals {
    /// `‖R − S*DS‖`
    pub r_vs_sds: f64,
    /// `‖SL − I‖`
    pub sl_vs_i: f64,
    /// `‖D − L*RL‖`
    pub d_vs_lrl: f64,
    /// True when the residuals are Frobenius bounds rather than spectral norms.
    pub frobenius_bound: bool,
}

impl CompResiduals {
    pub fn max(&self) -> f64 {
        self.r_vs_sds.max(self.sl_vs_i).max(self.d_vs_lrl)
    }
}

/// `D(p,p) = Σ_{e(u)≤p} (−1)^{|u|} I_{p−e(u)}⊗T̃*_{e(u)}T̃_{e(u)}`.
pub fn defect_block(rep: &Representation, p: &MultiIndex) -> Result<CMatrix> {
    let k = rep.k();
    let dim = rep.system().word_dim(&p.word()?) * rep.hdim();
    let mut acc = CMatrix::zeros(dim, dim);
    for u in Subset::all(k) {
        let eu = MultiIndex::indicator(k, u);
        if !eu.le(p) {
            continue;
        }
        let term = rep.lift(&p.sub(&eu)?, &rep.gram(&eu)?, &eu, &eu)?;
        if u.len() % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(hermitize(&acc))
}

/// Builds `R(p,q) = I_{p∧q}⊗T(q−p)`, its upper part `S`, the diagonal `D` and
/// `L(n, n+e(v)) = (−1)^{|v|} I_n⊗T̃_{e(v)}` over the box `0 ≤ · ≤ bound`.
pub fn build_gram(rep: &Representation, bound: &MultiIndex, cap: usize) -> Result<GramSystem> {
    let k = rep.k();
    let space = BoxSpace::new(rep.system(), bound, rep.hdim(), cap)?;
    let grades = space.grades().to_vec();
    let mut symbols: HashMap<Vec<i64>, CMatrix> = HashMap::new();
    let mut r = GradedOperator::zero(&space);
    let mut s = GradedOperator::zero(&space);
    for (a, p) in grades.iter().enumerate() {
        for (b, q) in grades.iter().enumerate() {
            let diff = q.sub(p)?;
            if !symbols.contains_key(diff.entries()) {
                symbols.insert(diff.entries().to_vec(), rep.symbol(&diff)?);
            }
            let sym = &symbols[diff.entries()];
            let block = rep.lift(&p.meet(q)?, sym, &diff.pos(), &diff.neg())?;
            if p.le(q) {
                s.insert(a, b, block.clone());
            }
            r.insert(a, b, block);
        }
    }
    let mut d = GradedOperator::zero(&space);
    for (a, p) in grades.iter().enumerate() {
        d.insert(a, a, defect_block(rep, p)?);
    }
    let mut l = GradedOperator::zero(&space);
    let zero = MultiIndex::zeros(k);
    for (a, n) in grades.iter().enumerate() {
        for v in Subset::all(k) {
            let ev = MultiIndex::indicator(k, v);
            let Some(b) = space.index_of(&n.add(&ev)?) else {
                continue;
            };
            let t = rep.ttilde(&ev)?;
            let block = rep.lift(n, &t, &ev, &zero)?;
            l.insert(a, b, if v.len() % 2 == 0 { block } else { -block });
        }
    }
    Ok(GramSystem { r, s, d, l })
}

/// Residuals of `R = S*DS`, `SL = I` and `D = L*RL` on the box.
pub fn verify_comp_identities(gram: &GramSystem) -> CompResiduals {
    let space = gram.r.space();
    let sds = gram.s.adjoint().mul(&gram.d).mul(&gram.s);
    let sl = gram.s.mul(&gram.l);
    let lrl = gram.l.adjoint().mul(&gram.r).mul(&gram.l);
    CompResiduals {
        r_vs_sds: gram.r.sub(&sds).norm_bound(),
        sl_vs_i: sl.sub(&GradedOperator::identity(space)).norm_bound(),
        d_vs_lrl: gram.d.sub(&lrl).norm_bound(),
        frobenius_bound: space.total() > EXACT_NORM_LIMIT,
    }
}
