use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{identity, random_gaussian, CMatrix, C64};

/// `coef · x_{w₁} x_{w₂} ⋯` where each letter `(i, l)` names the `l`-th basis
/// vector of `E_i` (0-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coef: C64,
    pub word: Vec<(usize, usize)>,
}

/// A non-commutative polynomial in the letters `(i, l)`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NcPolynomial {
    pub terms: Vec<Term>,
}

impl NcPolynomial {
    pub fn new(terms: Vec<Term>) -> Self {
        NcPolynomial { terms }
    }

    pub fn unit() -> Self {
        Self::new(vec![Term {
            coef: C64::new(1.0, 0.0),
            word: Vec::new(),
        }])
    }

    pub fn monomial(coef: C64, word: Vec<(usize, usize)>) -> Self {
        Self::new(vec![Term { coef, word }])
    }

    pub fn degree(&self) -> usize {
        self.terms.iter().map(|t| t.word.len()).max().unwrap_or(0)
    }

    /// Checks that every letter fits the fiber dimensions.
    pub fn check_letters(&self, dims: &[usize]) -> Result<()> {
        for t in &self.terms {
            for &(i, l) in &t.word {
                if i >= dims.len() || l >= dims[i] {
                    return Err(Error::Domain(format!(
                        "letter ({},{}) out of range for dims {dims:?}",
                        i + 1,
                        l + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluates with `letter(i, l)` substituted for `x_{(i,l)}`; all letters
    /// must be `n × n`.
    pub fn eval(&self, n: usize, letter: impl Fn(usize, usize) -> CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(n, n);
        for t in &self.terms {
            let mut m = identity(n);
            for &(i, l) in &t.word {
                m *= letter(i, l);
            }
            out += m * t.coef;
        }
        out
    }

    /// Random polynomial with `terms` terms of degree at most `max_degree`
    /// and Gaussian coefficients.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, dims: &[usize], max_degree: usize, terms: usize) -> Self {
        let terms = (0..terms)
            .map(|_| {
                let deg = rng.random_range(0..=max_degree);
                let word = (0..deg)
                    .map(|_| {
                        let i = rng.random_range(0..dims.len());
                        (i, rng.random_range(0..dims[i]))
                    })
                    .collect();
                Term {
                    coef: random_gaussian(rng, 1, 1)[(0, 0)],
                    word,
                }
            })
            .collect();
        Self::new(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, residual};

    #[test]
    fn eval_respects_word_order() {
        let a = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
        let b = a.transpose();
        let p = NcPolynomial::monomial(c(2., 0.), vec![(0, 0), (1, 0)]);
        let v = p.eval(2, |i, _| if i == 0 { a.clone() } else { b.clone() });
        assert!(residual(&v, &(&a * &b * c(2., 0.))) < 1e-15);
        assert_eq!(NcPolynomial::unit().eval(3, |_, _| unreachable!()), identity(3));
    }

    #[test]
    fn letter_range_checked() {
        let p = NcPolynomial::monomial(c(1., 0.), vec![(1, 2)]);
        assert!(p.check_letters(&[1, 3]).is_ok());
        assert!(p.check_letters(&[1, 2]).is_err());
    }
}
