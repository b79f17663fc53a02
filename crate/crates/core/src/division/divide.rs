use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{Exponent, MonomialOrder, OrderKey, SeriesVector};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Quotients and remainder of a formal division, together with the data
/// defining the partition `Δ₁, …, Δ_q, Δ` they are confined to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionResult {
    /// Scalar jets `Q₁, …, Q_q`, truncated at the same degree as the dividend.
    pub quotients: Vec<SeriesVector>,
    pub remainder: SeriesVector,
    /// `(α_i, j_i) = exp Φ_i`; `Δ_i` is `(α_i, j_i) + ℕⁿ` minus earlier blocks.
    pub initial_exponents: Vec<Exponent>,
    pub order: MonomialOrder,
}

impl DivisionResult {
    /// Index `i` of the block `Δ_i` containing `e`, or `None` when `e ∈ Δ`.
    pub fn block_of(&self, e: &Exponent) -> Option<usize> {
        block_of(&self.initial_exponents, e)
    }
}

pub(crate) fn block_of(initial: &[Exponent], e: &Exponent) -> Option<usize> {
    initial.iter().position(|a| a.divides(e))
}

/// Hironaka's formal division of `F` by `Φ₁, …, Φ_q` on degree-`D` jets.
///
/// The working series is reduced one minimal term at a time: a term in
/// `Δ_i` is cancelled against `x^γ·Φ_i`, anything else moves to the
/// remainder. Every product is truncated at `D` and the discarded part lies
/// in degree `> D`, so `F = ΣQ_iΦ_i + R` holds exactly mod `(x)^{D+1}`.
pub fn hironaka_divide(f: &SeriesVector, divisors: &[SeriesVector], ord: &MonomialOrder) -> Result<DivisionResult> {
    f.check_order(ord)?;
    let degree = f.degree();
    let mut reducers = Vec::with_capacity(divisors.len());
    for (index, phi) in divisors.iter().enumerate() {
        f.check_compatible(phi)?;
        let (lead, lead_coeff) = phi.leading_term(ord).map_err(|e| match e {
            Error::ZeroSeries => Error::ZeroDivisor { index },
            other => other,
        })?;
        let tail: Vec<(Exponent, Rational)> = phi
            .terms()
            .filter(|(e, _)| **e != lead)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        reducers.push((lead, lead_coeff, tail));
    }
    let initial: Vec<Exponent> = reducers.iter().map(|r| r.0.clone()).collect();

    let mut work: BTreeMap<OrderKey, Rational> = f.terms().map(|(e, c)| (ord.key(e), c.clone())).collect();
    let mut quotients = vec![SeriesVector::scalar_zero(f.nvars(), degree); divisors.len()];
    let mut remainder = SeriesVector::zero(f.nvars(), f.ncomponents(), degree);

    while let Some((key, c)) = work.pop_first() {
        let e = key.exponent();
        let Some(i) = block_of(&initial, &e) else {
            remainder.add_term(e, c);
            continue;
        };
        let (lead, lead_coeff, tail) = &reducers[i];
        let gamma = lead.quotient(&e).expect("block membership implies divisibility");
        let factor = c / lead_coeff;
        let room = degree - crate::algebra::degree(&gamma);
        for (t, v) in tail {
            if t.degree() > room {
                continue;
            }
            let k = ord.key(&t.shift(&gamma));
            let delta = -(&factor * v);
            match work.entry(k) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(delta);
                }
                std::collections::btree_map::Entry::Occupied(mut slot) => {
                    *slot.get_mut() += delta;
                    if slot.get().is_zero() {
                        slot.remove();
                    }
                }
            }
        }
        quotients[i].add_term(Exponent::scalar(gamma), factor);
    }

    Ok(DivisionResult {
        quotients,
        remainder,
        initial_exponents: initial,
        order: ord.clone(),
    })
}
