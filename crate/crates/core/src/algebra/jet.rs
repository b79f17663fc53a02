use std::collections::HashMap;

use num_traits::{One, Zero};

use super::exponent::{multiindices_up_to, Exponent};
use super::series::SeriesVector;
use crate::error::{dim_mismatch, Error, Result};
use crate::rational::Rational;

/// Precomputed products `u^β = u₁^{β₁}⋯uₙ^{βₙ}` of substituted jets, for all
/// `|β| ≤ D`.
///
/// Every `u_k` has zero constant term, so `u^β` vanishes mod `(x)^{D+1}` as
/// soon as `|β| > D`; only the finite table is needed.
#[derive(Debug, Clone)]
pub struct JetPowers {
    degree: u32,
    target_nvars: usize,
    table: HashMap<Vec<u32>, SeriesVector>,
}

impl JetPowers {
    pub fn new(u: &[SeriesVector], degree: u32) -> Result<Self> {
        let target_nvars = match u.first() {
            Some(s) => s.nvars(),
            None => 0,
        };
        let mut base = Vec::with_capacity(u.len());
        for (index, s) in u.iter().enumerate() {
            if s.ncomponents() != 1 || s.nvars() != target_nvars {
                return Err(dim_mismatch("substituted jets must be scalar and share variables"));
            }
            if s.degree() < degree {
                return Err(Error::TruncationMismatch {
                    left: s.degree(),
                    right: degree,
                });
            }
            if !s.vanishes_below(1) {
                return Err(Error::NonzeroConstantTerm { index });
            }
            base.push(s.truncate(degree)?);
        }
        let n = u.len();
        let mut table = HashMap::new();
        for beta in multiindices_up_to(n, degree) {
            let value = match beta.iter().position(|&b| b > 0) {
                None => SeriesVector::constant(target_nvars, degree, Rational::one()),
                Some(k) => {
                    let mut prev = beta.clone();
                    prev[k] -= 1;
                    base[k].mul_scalar(&table[&prev])?
                }
            };
            table.insert(beta, value);
        }
        Ok(JetPowers {
            degree,
            target_nvars,
            table,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }

    /// `u^β` truncated at `D`; zero when `|β| > D`.
    pub fn get(&self, beta: &[u32]) -> SeriesVector {
        self.table
            .get(beta)
            .cloned()
            .unwrap_or_else(|| SeriesVector::scalar_zero(self.target_nvars, self.degree))
    }

    /// The degree-`D` jet of `W(u₁(x),…,uₙ(x))`.
    pub fn compose(&self, w: &SeriesVector) -> Result<SeriesVector> {
        let n = self.table.keys().next().map_or(0, Vec::len);
        if w.nvars() != n {
            return Err(dim_mismatch(format!(
                "outer series in {} variables composed with {n} substitutions",
                w.nvars()
            )));
        }
        if w.degree() < self.degree {
            return Err(Error::TruncationMismatch {
                left: w.degree(),
                right: self.degree,
            });
        }
        let mut out = SeriesVector::zero(self.target_nvars, w.ncomponents(), self.degree);
        for (e, c) in w.terms() {
            if e.degree() > self.degree || c.is_zero() {
                continue;
            }
            for (x, v) in self.table[&e.alpha].terms() {
                out.add_term(Exponent::new(x.alpha.clone(), e.component), c * v);
            }
        }
        Ok(out)
    }
}

/// The degree-`D` jet of `W(u₁(x),…,uₙ(x))` for jets `u_k` without constant
/// term. `W` may be vector-valued; `x` are the variables of the `u_k`.
pub fn jet_compose(w: &SeriesVector, u: &[SeriesVector], degree: u32) -> Result<SeriesVector> {
    if w.nvars() != u.len() {
        return Err(dim_mismatch(format!(
            "outer series in {} variables composed with {} substitutions",
            w.nvars(),
            u.len()
        )));
    }
    if u.is_empty() {
        return Err(dim_mismatch("composition needs at least one substitution"));
    }
    JetPowers::new(u, degree)?.compose(w)
}
