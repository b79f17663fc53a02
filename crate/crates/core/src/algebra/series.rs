use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::exponent::{degree, Exponent};
use super::order::MonomialOrder;
use crate::error::{dim_mismatch, Error, Result};
use crate::rational::Rational;

/// The degree-`D` jet of an element of `ℚ⟦x₁,…,xₙ⟧ᵖ`.
///
/// Only exponents with `|α| ≤ D` are stored, and never with a zero
/// coefficient. Terms are kept sorted by the default order of [`Exponent`],
/// so for graded orders the first term is the leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SeriesVector {
    nvars: usize,
    ncomponents: usize,
    degree: u32,
    terms: BTreeMap<Exponent, Rational>,
}

impl SeriesVector {
    pub fn zero(nvars: usize, ncomponents: usize, degree: u32) -> Self {
        SeriesVector {
            nvars,
            ncomponents,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Scalar (`p = 1`) zero jet.
    pub fn scalar_zero(nvars: usize, degree: u32) -> Self {
        Self::zero(nvars, 1, degree)
    }

    /// Builds a jet from terms, summing duplicates and discarding terms of
    /// degree above `degree`.
    pub fn from_terms<I>(nvars: usize, ncomponents: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut s = Self::zero(nvars, ncomponents, degree);
        for (e, c) in terms {
            if e.alpha.len() != nvars || e.component >= ncomponents {
                return Err(dim_mismatch(format!(
                    "term {e} does not fit {nvars} variables and {ncomponents} components"
                )));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    /// Scalar jet from `(α, c)` pairs.
    pub fn scalar_from_terms<I>(nvars: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        Self::from_terms(
            nvars,
            1,
            degree,
            terms.into_iter().map(|(a, c)| (Exponent::scalar(a), c)),
        )
    }

    pub fn monomial(nvars: usize, ncomponents: usize, degree: u32, e: Exponent, c: Rational) -> Result<Self> {
        Self::from_terms(nvars, ncomponents, degree, [(e, c)])
    }

    /// The scalar constant `c`.
    pub fn constant(nvars: usize, degree: u32, c: Rational) -> Self {
        let mut s = Self::scalar_zero(nvars, degree);
        s.add_term(Exponent::zero(nvars, 0), c);
        s
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: Rational) {
        if e.degree() > self.degree || c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ncomponents(&self) -> usize {
        self.ncomponents
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponent, Rational)> {
        self.terms.into_iter()
    }

    /// Coefficient at `e`; zero outside the support.
    ///
    /// Panics if `|α| > D`, where the coefficient is unknown.
    pub fn coeff(&self, e: &Exponent) -> Rational {
        assert!(
            e.degree() <= self.degree,
            "coefficient at {e} is beyond truncation degree {}",
            self.degree
        );
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Smallest total degree in the support, `None` for the zero jet.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().map(Exponent::degree)
    }

    /// The initial exponent and coefficient under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Exponent, Rational)> {
        self.check_order(ord)?;
        let found = if ord.is_graded() {
            self.terms.iter().next()
        } else {
            self.terms.iter().min_by(|a, b| ord.cmp(a.0, b.0))
        };
        found.map(|(e, c)| (e.clone(), c.clone())).ok_or(Error::ZeroSeries)
    }

    pub(crate) fn check_order(&self, ord: &MonomialOrder) -> Result<()> {
        if ord.nvars() != self.nvars || ord.ncomponents() != self.ncomponents {
            return Err(dim_mismatch(format!(
                "order on {}x{} used with a series in {} variables and {} components",
                ord.nvars(),
                ord.ncomponents(),
                self.nvars,
                self.ncomponents
            )));
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &SeriesVector) -> Result<()> {
        if self.nvars != other.nvars || self.ncomponents != other.ncomponents {
            return Err(dim_mismatch(format!(
                "series in {}x{} vs {}x{}",
                self.nvars, self.ncomponents, other.nvars, other.ncomponents
            )));
        }
        if self.degree != other.degree {
            return Err(Error::TruncationMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SeriesVector) -> Result<SeriesVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SeriesVector) -> Result<SeriesVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> SeriesVector {
        if c.is_zero() {
            return Self::zero(self.nvars, self.ncomponents, self.degree);
        }
        SeriesVector {
            nvars: self.nvars,
            ncomponents: self.ncomponents,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// `c·x^β·F`, dropping terms of degree above `D`.
    pub fn monomial_multiply(&self, beta: &[u32], c: &Rational) -> Result<SeriesVector> {
        if beta.len() != self.nvars {
            return Err(dim_mismatch(format!(
                "multiindex of length {} applied to a series in {} variables",
                beta.len(),
                self.nvars
            )));
        }
        let mut out = Self::zero(self.nvars, self.ncomponents, self.degree);
        if c.is_zero() {
            return Ok(out);
        }
        let room = match self.degree.checked_sub(degree(beta)) {
            Some(r) => r,
            None => return Ok(out),
        };
        for (e, v) in &self.terms {
            if e.degree() <= room {
                out.terms.insert(e.shift(beta), v * c);
            }
        }
        Ok(out)
    }

    /// Product of a scalar jet `self` with a vector jet, truncated at `D`.
    pub fn mul_scalar(&self, other: &SeriesVector) -> Result<SeriesVector> {
        if self.ncomponents != 1 {
            return Err(dim_mismatch("left factor of a module product must be scalar"));
        }
        if self.nvars != other.nvars {
            return Err(dim_mismatch(format!(
                "product of series in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.degree != other.degree {
            return Err(Error::TruncationMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        let mut out = Self::zero(other.nvars, other.ncomponents, other.degree);
        for (a, ca) in &self.terms {
            let room = self.degree - a.degree();
            for (b, cb) in &other.terms {
                if b.degree() > room {
                    // terms are sorted by degree first
                    break;
                }
                out.add_term(b.shift(&a.alpha), ca * cb);
            }
        }
        Ok(out)
    }

    /// Reduces the truncation degree to `degree ≤ D`.
    pub fn truncate(&self, degree: u32) -> Result<SeriesVector> {
        if degree > self.degree {
            return Err(Error::TruncationMismatch {
                left: self.degree,
                right: degree,
            });
        }
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.degree() <= degree)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        Ok(SeriesVector {
            nvars: self.nvars,
            ncomponents: self.ncomponents,
            degree,
            terms,
        })
    }

    /// `F` minus its degree-0 terms.
    pub fn drop_constant(&self) -> SeriesVector {
        let mut out = self.clone();
        out.terms.retain(|e, _| e.degree() > 0);
        out
    }

    /// Component `j` (zero-based) as a scalar jet.
    pub fn component(&self, j: usize) -> SeriesVector {
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e.component == j)
            .map(|(e, c)| (Exponent::scalar(e.alpha.clone()), c.clone()))
            .collect();
        SeriesVector {
            nvars: self.nvars,
            ncomponents: 1,
            degree: self.degree,
            terms,
        }
    }

    /// Embeds a scalar jet as component `j` of a `p`-vector.
    pub fn embed(&self, j: usize, ncomponents: usize) -> Result<SeriesVector> {
        if self.ncomponents != 1 || j >= ncomponents {
            return Err(dim_mismatch("embedding needs a scalar jet and j < p"));
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (Exponent::new(e.alpha.clone(), j), c.clone()))
            .collect();
        Ok(SeriesVector {
            nvars: self.nvars,
            ncomponents,
            degree: self.degree,
            terms,
        })
    }

    /// Whether every term has degree at least `k`.
    pub fn vanishes_below(&self, k: u32) -> bool {
        self.valuation().is_none_or(|v| v >= k)
    }
}

impl std::ops::Neg for &SeriesVector {
    type Output = SeriesVector;
    fn neg(self) -> SeriesVector {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for SeriesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} + O({})", self.degree + 1)
    }
}

impl fmt::Display for SeriesVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, a) in e.alpha.iter().enumerate() {
                match a {
                    0 => {}
                    1 => write!(f, "*x{}", k + 1)?,
                    _ => write!(f, "*x{}^{a}", k + 1)?,
                }
            }
            if self.ncomponents > 1 {
                write!(f, "*e{}", e.component + 1)?;
            }
        }
        Ok(())
    }
}
