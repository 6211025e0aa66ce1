use itertools::Itertools;

use super::{TropicalMatrix, TropicalValue};
use crate::{Error, Limits, Result};

/// Outcome of a tropical determinant computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalDetResult {
    pub value: TropicalValue,
    /// Every permutation `σ` (as `σ[i]` for row `i`) attaining the minimum,
    /// in lexicographic order. Empty when the value is `∞`.
    pub optimal_permutations: Vec<Vec<usize>>,
    pub vanishes: bool,
}

/// `tdet(A) = min_σ Σ_i a_{i,σ(i)}` by enumerating all permutations.
pub fn trop_det(a: &TropicalMatrix, limits: &Limits) -> Result<TropicalDetResult> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "tropical determinant needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let k = a.rows();
    if k > limits.max_permutation_size {
        return Err(Error::capability(
            "tropical determinant",
            k as u64,
            limits.max_permutation_size as u64,
        ));
    }
    let mut search = DetSearch {
        a,
        best: TropicalValue::Infinity,
        optimal: Vec::new(),
        perm: Vec::with_capacity(k),
        used: vec![false; k],
    };
    search.descend(num_traits::Zero::zero());
    let vanishes = search.best.is_infinite() || search.optimal.len() >= 2;
    Ok(TropicalDetResult {
        value: search.best,
        optimal_permutations: search.optimal,
        vanishes,
    })
}

struct DetSearch<'a> {
    a: &'a TropicalMatrix,
    best: TropicalValue,
    optimal: Vec<Vec<usize>>,
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl DetSearch<'_> {
    fn descend(&mut self, partial: num_rational::BigRational) {
        let i = self.perm.len();
        if i == self.a.rows() {
            let total = TropicalValue::Finite(partial);
            if total < self.best {
                self.best = total.clone();
                self.optimal.clear();
            }
            if total == self.best {
                self.optimal.push(self.perm.clone());
            }
            return;
        }
        for j in 0..self.a.cols() {
            if self.used[j] {
                continue;
            }
            let Some(w) = self.a.get(i, j).finite() else {
                continue;
            };
            self.used[j] = true;
            self.perm.push(j);
            self.descend(&partial + w);
            self.perm.pop();
            self.used[j] = false;
        }
    }
}

/// Result of a genericity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericityReport {
    pub generic: bool,
    /// Row and column indices of one square submatrix with vanishing
    /// determinant.
    pub witness: Option<(Vec<usize>, Vec<usize>)>,
}

/// Tests whether no square submatrix of `v` has a vanishing tropical
/// determinant. Submatrices are visited by increasing size, so a witness is a
/// smallest one.
pub fn is_generic(v: &TropicalMatrix, limits: &Limits) -> Result<GenericityReport> {
    let kmax = v.rows().min(v.cols());
    if kmax > limits.max_permutation_size {
        return Err(Error::capability(
            "genericity test submatrix",
            kmax as u64,
            limits.max_permutation_size as u64,
        ));
    }
    let total: u64 = (1..=kmax)
        .map(|k| binomial(v.rows(), k).saturating_mul(binomial(v.cols(), k)))
        .fold(0u64, u64::saturating_add);
    if total > limits.max_square_submatrices {
        return Err(Error::capability(
            "genericity test",
            total,
            limits.max_square_submatrices,
        ));
    }
    for k in 1..=kmax {
        for rows in (0..v.rows()).combinations(k) {
            for cols in (0..v.cols()).combinations(k) {
                let sub = v.submatrix(&rows, &cols)?;
                if trop_det(&sub, limits)?.vanishes {
                    return Ok(GenericityReport {
                        generic: false,
                        witness: Some((rows, cols)),
                    });
                }
            }
        }
    }
    Ok(GenericityReport {
        generic: true,
        witness: None,
    })
}

fn binomial(n: usize, k: usize) -> u64 {
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc.saturating_mul(n as u64 - i) / (i + 1);
    }
    acc
}
