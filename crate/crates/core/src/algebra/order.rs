use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::exponent::Exponent;
use crate::error::{dim_mismatch, Error, Result};
use crate::rational::Rational;

/// A monomial order on `ℕⁿ × {1..p}` given by a positive linear form `L`.
///
/// `(α, j)` is compared through the key `(L(α), j, α₁, …, αₙ)`, lexicographically.
/// With all weights equal this is the default order of [`Exponent`]'s `Ord`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    nvars: usize,
    ncomponents: usize,
    /// The weights scaled by the lcm of their denominators and divided by the
    /// gcd of the result; comparing `L` values is then integer comparison.
    /// Proportional weight vectors give the same order and the same value.
    scaled: Vec<u64>,
}

/// Sort key of an exponent under a [`MonomialOrder`]. Derived `Ord` is the
/// lexicographic comparison of `(L(α), j, α)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderKey {
    weight: u128,
    component: usize,
    alpha: Vec<u32>,
}

impl OrderKey {
    pub fn exponent(&self) -> Exponent {
        Exponent::new(self.alpha.clone(), self.component)
    }
}

impl MonomialOrder {
    /// The default order `lex(|α|, j, α)`.
    pub fn graded(nvars: usize, ncomponents: usize) -> Self {
        MonomialOrder {
            nvars,
            ncomponents,
            scaled: vec![1; nvars],
        }
    }

    pub fn weighted(weights: Vec<Rational>, ncomponents: usize) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidInput("an order needs at least one variable".into()));
        }
        if ncomponents == 0 {
            return Err(Error::InvalidInput("an order needs at least one component".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidInput(format!("order weight {w} is not positive")));
        }
        let lcm = weights
            .iter()
            .fold(num_bigint::BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let ints: Vec<_> = weights.iter().map(|w| (w * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(num_bigint::BigInt::zero(), |acc, w| acc.gcd(w));
        let scaled = ints
            .iter()
            .map(|w| {
                (w / &gcd)
                    .to_u64()
                    .ok_or_else(|| Error::InvalidInput("order weights are too far apart to scale to integers".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialOrder {
            nvars: weights.len(),
            ncomponents,
            scaled,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn ncomponents(&self) -> usize {
        self.ncomponents
    }

    /// Normalized integer weights.
    pub fn weights(&self) -> &[u64] {
        &self.scaled
    }

    /// True when all weights are equal, i.e. the order refines total degree.
    pub fn is_graded(&self) -> bool {
        self.scaled.iter().all(|&w| w == 1)
    }

    /// Same order on a module with a different number of components.
    pub fn with_components(&self, ncomponents: usize) -> Self {
        MonomialOrder {
            ncomponents,
            ..self.clone()
        }
    }

    pub fn check(&self, e: &Exponent) -> Result<()> {
        if e.alpha.len() != self.nvars || e.component >= self.ncomponents {
            return Err(dim_mismatch(format!(
                "exponent {e} does not fit an order on {} variables and {} components",
                self.nvars, self.ncomponents
            )));
        }
        Ok(())
    }

    pub fn key(&self, e: &Exponent) -> OrderKey {
        let weight = e
            .alpha
            .iter()
            .zip(&self.scaled)
            .map(|(&a, &w)| a as u128 * w as u128)
            .sum();
        OrderKey {
            weight,
            component: e.component,
            alpha: e.alpha.clone(),
        }
    }

    /// Unchecked comparison; both exponents must fit this order.
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        if self.is_graded() {
            return a.cmp(b);
        }
        self.key(a).cmp(&self.key(b))
    }

    /// Compares two exponents, rejecting ones that do not fit the order.
    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.cmp(a, b))
    }

    /// Sorts exponents increasingly under this order.
    pub fn sort(&self, exps: &mut [Exponent]) {
        exps.sort_by(|a, b| self.cmp(a, b));
    }

    /// All exponents with `|α| ≤ max_degree`, sorted by this order.
    pub fn exponents_up_to(&self, max_degree: u32) -> Vec<Exponent> {
        let alphas = super::exponent::multiindices_up_to(self.nvars, max_degree);
        let mut out = Vec::with_capacity(alphas.len() * self.ncomponents);
        for j in 0..self.ncomponents {
            out.extend(alphas.iter().map(|a| Exponent::new(a.clone(), j)));
        }
        self.sort(&mut out);
        out
    }
}
