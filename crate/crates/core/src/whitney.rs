//! Jet fields on affine strata and the Borel compatibility check.
//!
//! A field of order `m` assigns to every `|α| ≤ m` a polynomial `f_α(t)` on
//! the stratum `a(t) = a₀ + Σ t_k u_k`. It is compatible when differentiating
//! along the stratum agrees with formal differentiation in `x`:
//! `∂f_α/∂t_k = Σ_i (u_k)_i f_{α+e_i}` for all `|α| ≤ m − 1`.

use std::collections::BTreeMap;

use crate::algebra::{degree, MonomialOrder, Polynomial};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{rank, RationalMatrix};
use crate::rational::Rational;

/// `a(t) = a₀ + Σ_k t_k u_k` with linearly independent directions `u_k ∈ ℚⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineStratum {
    origin: Vec<Rational>,
    directions: Vec<Vec<Rational>>,
}

impl AffineStratum {
    pub fn new(origin: Vec<Rational>, directions: Vec<Vec<Rational>>) -> Result<Self> {
        let n = origin.len();
        if n == 0 {
            return Err(dim_mismatch("the ambient space needs at least one coordinate"));
        }
        if directions.iter().any(|u| u.len() != n) {
            return Err(dim_mismatch(format!("stratum directions must lie in ℚ^{n}")));
        }
        if !directions.is_empty() {
            let m = RationalMatrix::from_rows(n, directions.clone())?;
            if rank(&m) != directions.len() {
                return Err(Error::InvalidInput("stratum directions are linearly dependent".into()));
            }
        }
        Ok(AffineStratum { origin, directions })
    }

    pub fn ambient(&self) -> usize {
        self.origin.len()
    }

    /// Number `d` of parameters.
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn origin(&self) -> &[Rational] {
        &self.origin
    }

    pub fn directions(&self) -> &[Vec<Rational>] {
        &self.directions
    }

    /// The coordinates `x_i(t)` as polynomials in the parameters.
    pub fn parameterization(&self) -> Vec<Polynomial> {
        let d = self.dim();
        (0..self.ambient())
            .map(|i| {
                let mut terms = vec![(vec![0; d], self.origin[i].clone())];
                for (k, u) in self.directions.iter().enumerate() {
                    let mut e = vec![0; d];
                    e[k] = 1;
                    terms.push((e, u[i].clone()));
                }
                Polynomial::from_terms(d, terms).expect("terms fit")
            })
            .collect()
    }
}

/// A jet field of order `m` on an affine stratum. Missing coefficients are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetField {
    order: u32,
    stratum: AffineStratum,
    coefficients: BTreeMap<Vec<u32>, Polynomial>,
}

impl JetField {
    pub fn new<I>(order: u32, stratum: AffineStratum, coefficients: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Polynomial)>,
    {
        let mut map = BTreeMap::new();
        for (alpha, f) in coefficients {
            if alpha.len() != stratum.ambient() {
                return Err(dim_mismatch(format!(
                    "multiindex of length {} in ℝ^{}",
                    alpha.len(),
                    stratum.ambient()
                )));
            }
            if degree(&alpha) > order {
                return Err(Error::InvalidInput(format!(
                    "coefficient {alpha:?} exceeds order {order}"
                )));
            }
            if f.nvars() != stratum.dim() {
                return Err(dim_mismatch(format!(
                    "coefficient in {} parameters on a stratum of dimension {}",
                    f.nvars(),
                    stratum.dim()
                )));
            }
            if map.insert(alpha.clone(), f).is_some() {
                return Err(Error::InvalidInput(format!("coefficient {alpha:?} given twice")));
            }
        }
        map.retain(|_, f| !f.is_zero());
        Ok(JetField {
            order,
            stratum,
            coefficients: map,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn stratum(&self) -> &AffineStratum {
        &self.stratum
    }

    /// `f_α`, zero when absent.
    pub fn coefficient(&self, alpha: &[u32]) -> Polynomial {
        self.coefficients
            .get(alpha)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.stratum.dim()))
    }

    /// Nonzero coefficients in lexicographic multiindex order.
    pub fn coefficients(&self) -> impl Iterator<Item = (&Vec<u32>, &Polynomial)> {
        self.coefficients.iter()
    }

    /// `c·self + other`; both fields must live on the same stratum with the same order.
    pub fn combine(&self, c: &Rational, other: &JetField) -> Result<JetField> {
        if self.order != other.order || self.stratum != other.stratum {
            return Err(dim_mismatch("fields differ in order or stratum"));
        }
        let mut out = other.coefficients.clone();
        for (alpha, f) in &self.coefficients {
            let g = out
                .remove(alpha)
                .unwrap_or_else(|| Polynomial::zero(self.stratum.dim()));
            out.insert(alpha.clone(), f.scale(c).add(&g)?);
        }
        JetField::new(self.order, self.stratum.clone(), out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BorelVerdict {
    Pass,
    /// First identity that fails: multiindex `α` and zero-based direction `k`.
    Fail {
        alpha: Vec<u32>,
        direction: usize,
    },
}

impl BorelVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BorelVerdict::Pass)
    }
}

/// Checks `∂f_α/∂t_k = Σ_i (u_k)_i f_{α+e_i}` for `|α| ≤ m − 1` and every
/// direction. Multiindices are visited by degree, then lexicographically;
/// directions vary fastest.
pub fn borel_check(field: &JetField) -> BorelVerdict {
    if field.order == 0 {
        return BorelVerdict::Pass;
    }
    let n = field.stratum.ambient();
    let d = field.stratum.dim();
    for e in MonomialOrder::graded(n, 1).exponents_up_to(field.order - 1) {
        let alpha = e.alpha;
        let f = field.coefficient(&alpha);
        for (k, u) in field.stratum.directions.iter().enumerate() {
            let mut rhs = Polynomial::zero(d);
            for (i, ui) in u.iter().enumerate() {
                if num_traits::Zero::is_zero(ui) {
                    continue;
                }
                let mut next = alpha.clone();
                next[i] += 1;
                rhs = rhs.add(&field.coefficient(&next).scale(ui)).expect("same parameters");
            }
            if f.derivative(k) != rhs {
                return BorelVerdict::Fail { alpha, direction: k };
            }
        }
    }
    BorelVerdict::Pass
}

/// The field `f_α = ∂^α g ∘ a(t)` of a polynomial `g` on `ℝⁿ`, for `|α| ≤ m`.
pub fn field_of_function(g: &Polynomial, stratum: &AffineStratum, m: u32) -> Result<JetField> {
    let n = stratum.ambient();
    if g.nvars() != n {
        return Err(dim_mismatch(format!("function in {} variables on ℝ^{n}", g.nvars())));
    }
    let param = stratum.parameterization();
    let coefficients = MonomialOrder::graded(n, 1)
        .exponents_up_to(m)
        .into_iter()
        .map(|e| {
            let f = g.partial(&e.alpha)?.compose(&param)?;
            Ok((e.alpha, f))
        })
        .collect::<Result<Vec<_>>>()?;
    JetField::new(m, stratum.clone(), coefficients)
}
