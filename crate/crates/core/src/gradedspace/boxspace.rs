use std::collections::HashMap;

use crate::error::{Error, Result};

use super::index::MultiIndex;
use super::reorder::check_cap;
use super::system::ProductSystem;

/// The direct sum `⊕_{0≤n≤N} X(n)⊗H` with grades in lexicographic order.
#[derive(Clone, Debug)]
pub struct BoxSpace {
    bound: MultiIndex,
    hdim: usize,
    grades: Vec<MultiIndex>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    lookup: HashMap<Vec<i64>, usize>,
    total: usize,
}

impl BoxSpace {
    pub fn new(system: &ProductSystem, bound: &MultiIndex, hdim: usize, cap: usize) -> Result<Self> {
        if bound.len() != system.k() {
            return Err(Error::Dimension(format!(
                "box {bound} does not have length k = {}",
                system.k()
            )));
        }
        if !bound.is_nonnegative() {
            return Err(Error::Domain(format!("box {bound} has a negative entry")));
        }
        let grades = bound.box_grades();
        let mut dims = Vec::with_capacity(grades.len());
        let mut offsets = Vec::with_capacity(grades.len());
        let mut lookup = HashMap::new();
        let mut total = 0usize;
        for (idx, g) in grades.iter().enumerate() {
            let d = system.word_dim(&g.word()?) * hdim;
            offsets.push(total);
            dims.push(d);
            lookup.insert(g.entries().to_vec(), idx);
            total = total.saturating_add(d);
            check_cap(total, cap)?;
        }
        Ok(BoxSpace {
            bound: bound.clone(),
            hdim,
            grades,
            dims,
            offsets,
            lookup,
            total,
        })
    }

    pub fn bound(&self) -> &MultiIndex {
        &self.bound
    }

    pub fn hdim(&self) -> usize {
        self.hdim
    }

    pub fn grades(&self) -> &[MultiIndex] {
        &self.grades
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }

    pub fn total(&self) -> usize {
        self.total
    }

    /// Position of `grade` in the lexicographic order, if inside the box.
    pub fn index_of(&self, grade: &MultiIndex) -> Option<usize> {
        self.lookup.get(grade.entries()).copied()
    }

    pub fn offset(&self, idx: usize) -> usize {
        self.offsets[idx]
    }

    pub fn dim(&self, idx: usize) -> usize {
        self.dims[idx]
    }

    /// Flat coordinate range of grade `idx`.
    pub fn range(&self, idx: usize) -> std::ops::Range<usize> {
        self.offsets[idx]..self.offsets[idx] + self.dims[idx]
    }

    /// Flat coordinates of all grades satisfying `keep`, in order.
    pub fn coordinates_where(&self, keep: impl Fn(&MultiIndex) -> bool) -> Vec<usize> {
        self.grades
            .iter()
            .enumerate()
            .filter(|(_, g)| keep(g))
            .flat_map(|(idx, _)| self.range(idx))
            .collect()
    }
}
