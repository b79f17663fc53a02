use num_traits::Zero;

use super::matrix::reduce_echelon;
use super::matrix::{forward_eliminate, integer_rows, rref, RationalMatrix};
use crate::error::{dim_mismatch, Result};
use crate::rational::Rational;

/// A linear subspace of `ℚ^ambient`, stored by its reduced echelon basis.
///
/// The representation is canonical for the fixed coordinate order, so two
/// subspaces are equal exactly when their stored bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::from_integer(1.into());
                v
            })
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// The span of arbitrary (possibly dependent) vectors.
    pub fn span<V: AsRef<[Rational]>>(ambient: usize, vectors: &[V]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.as_ref().len() != ambient) {
            return Err(dim_mismatch(format!(
                "vector of length {} in a subspace of dimension {ambient}",
                v.as_ref().len()
            )));
        }
        let mut rows = integer_rows(vectors.iter().map(|v| v.as_ref()));
        let pivots = forward_eliminate(&mut rows, ambient);
        let basis = reduce_echelon(rows, &pivots);
        Ok(Subspace { ambient, basis, pivots })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    /// Pivot coordinates of the echelon basis, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(dim_mismatch("vector length differs from the ambient dimension"));
        }
        let mut w = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (x, y) in w.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        Ok(w.iter().all(Zero::is_zero))
    }

    /// Whether `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(dim_mismatch("subspaces of different ambient spaces"));
        }
        if self.dim() > other.dim() {
            return Ok(false);
        }
        for b in &self.basis {
            if !other.contains(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image under the coordinate projection onto `coords` (in that order).
    pub fn project(&self, coords: &[usize]) -> Result<Subspace> {
        if let Some(&c) = coords.iter().find(|&&c| c >= self.ambient) {
            return Err(dim_mismatch(format!("coordinate {c} out of range {}", self.ambient)));
        }
        let images: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|b| coords.iter().map(|&c| b[c].clone()).collect())
            .collect();
        Subspace::span(coords.len(), &images)
    }

    pub fn equals(&self, other: &Subspace) -> Result<bool> {
        if self.ambient != other.ambient {
            return Err(dim_mismatch("subspaces of different ambient spaces"));
        }
        Ok(self == other)
    }
}

/// The nullspace `{v : M·v = 0}`.
pub fn nullspace(m: &RationalMatrix) -> Subspace {
    let (r, pivots) = rref(m);
    let cols = m.ncols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            let e = r.get(i, free);
            if !e.is_zero() {
                v[p] = -e.clone();
            }
        }
        vectors.push(v);
    }
    Subspace::span(cols, &vectors).expect("vectors have the column count")
}
