//! JSON files for product systems, representations and polynomials.
//!
//! Complex scalars are `[re, im]` pairs, matrices are lists of rows, and all
//! generator and letter indices are 1-based.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gradedspace::ProductSystem;
use crate::linalg::{CMatrix, C64};
use crate::representation::{NcPolynomial, Representation, Term};

pub type ComplexPair = [f64; 2];
pub type MatrixRows = Vec<Vec<ComplexPair>>;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SystemFile {
    pub k: usize,
    pub dims: Vec<usize>,
    /// Keys `"i,j"` with `i > j`; absent pairs are untwisted.
    #[serde(default)]
    pub twists: BTreeMap<String, MatrixRows>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RepresentationFile {
    pub h: usize,
    /// `blocks[i][l]` is the `h×h` matrix `T⁽ⁱ⁾_l`.
    pub blocks: Vec<Vec<MatrixRows>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermFile {
    pub coef: ComplexPair,
    pub word: Vec<[usize; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolynomialFile {
    pub terms: Vec<TermFile>,
}

pub fn matrix_to_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

pub fn matrix_from_rows(rows: &MatrixRows, what: &str) -> Result<CMatrix> {
    let n = rows.len();
    let m = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Schema(format!("{what}: ragged matrix rows")));
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Schema(format!("{what}: non-finite entry")));
    }
    Ok(CMatrix::from_fn(n, m, |r, c| C64::new(rows[r][c][0], rows[r][c][1])))
}

fn parse_twist_key(key: &str, k: usize) -> Result<(usize, usize)> {
    let parts: Vec<&str> = key.split(',').map(str::trim).collect();
    let parsed: Vec<usize> = parts.iter().filter_map(|p| p.parse().ok()).collect();
    match parsed[..] {
        [i, j] if parts.len() == 2 && i <= k && j >= 1 && i > j => Ok((i - 1, j - 1)),
        _ => Err(Error::Schema(format!(
            "twist key \"{key}\" must be \"i,j\" with k ≥ i > j ≥ 1"
        ))),
    }
}

impl SystemFile {
    pub fn from_system(system: &ProductSystem) -> Self {
        let twists = system
            .stored_twists()
            .into_iter()
            .map(|((i, j), t)| (format!("{},{}", i + 1, j + 1), matrix_to_rows(&t)))
            .collect();
        SystemFile {
            k: system.k(),
            dims: system.dims().to_vec(),
            twists,
        }
    }

    pub fn to_system(&self) -> Result<ProductSystem> {
        if self.dims.len() != self.k {
            return Err(Error::Schema(format!(
                "k = {} but {} dims given",
                self.k,
                self.dims.len()
            )));
        }
        let mut twists = BTreeMap::new();
        for (key, rows) in &self.twists {
            let (i, j) = parse_twist_key(key, self.k)?;
            twists.insert((i, j), matrix_from_rows(rows, &format!("twist {key}"))?);
        }
        ProductSystem::new(self.dims.clone(), twists)
    }
}

impl RepresentationFile {
    pub fn from_representation(rep: &Representation) -> Self {
        RepresentationFile {
            h: rep.hdim(),
            blocks: rep
                .blocks()
                .iter()
                .map(|ops| ops.iter().map(matrix_to_rows).collect())
                .collect(),
        }
    }

    /// Fiber dimensions implied by the block lists.
    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// Builds the representation over `system`, or over the untwisted system
    /// with the implied fiber dimensions when none is given.
    pub fn to_representation(&self, system: Option<ProductSystem>) -> Result<Representation> {
        let system = match system {
            Some(s) => s,
            None => ProductSystem::untwisted(self.dims())
                .map_err(|e| Error::Schema(format!("representation blocks: {e}")))?,
        };
        if self.dims() != system.dims() {
            return Err(Error::Schema(format!(
                "representation has {:?} blocks per generator but the system has dims {:?}",
                self.dims(),
                system.dims()
            )));
        }
        let mut blocks = Vec::with_capacity(self.blocks.len());
        for (i, ops) in self.blocks.iter().enumerate() {
            let mut row = Vec::with_capacity(ops.len());
            for (l, m) in ops.iter().enumerate() {
                let what = format!("block ({},{})", i + 1, l + 1);
                let m = matrix_from_rows(m, &what)?;
                if m.shape() != (self.h, self.h) {
                    return Err(Error::Schema(format!("{what} is not {}×{}", self.h, self.h)));
                }
                row.push(m);
            }
            blocks.push(row);
        }
        Representation::new(system, self.h, blocks)
    }
}

impl PolynomialFile {
    pub fn from_polynomial(p: &NcPolynomial) -> Self {
        PolynomialFile {
            terms: p
                .terms
                .iter()
                .map(|t| TermFile {
                    coef: [t.coef.re, t.coef.im],
                    word: t.word.iter().map(|&(i, l)| [i + 1, l + 1]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<NcPolynomial> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut word = Vec::with_capacity(t.word.len());
            for &[i, l] in &t.word {
                if i == 0 || l == 0 {
                    return Err(Error::Schema(format!("letter [{i},{l}] is not 1-based")));
                }
                word.push((i - 1, l - 1));
            }
            terms.push(Term {
                coef: C64::new(t.coef[0], t.coef[1]),
                word,
            });
        }
        Ok(NcPolynomial::new(terms))
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n")?;
    Ok(())
}

pub fn read_system(path: &Path) -> Result<ProductSystem> {
    read_json::<SystemFile>(path)?.to_system()
}

pub fn read_representation(path: &Path, system: Option<ProductSystem>) -> Result<Representation> {
    read_json::<RepresentationFile>(path)?.to_representation(system)
}

pub fn read_polynomial(path: &Path) -> Result<NcPolynomial> {
    read_json::<PolynomialFile>(path)?.to_polynomial()
}
