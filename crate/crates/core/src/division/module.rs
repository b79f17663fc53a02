use std::collections::HashMap;

use num_traits::Zero;

use super::diagram::Diagram;
use super::divide::hironaka_divide;
use crate::algebra::{multiindices_up_to, Exponent, MonomialOrder, SeriesVector};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::rational::Rational;

/// Dense coordinates for degree-`D` jets: one column per exponent with
/// `|α| ≤ D`, in the order of `ord`.
#[derive(Debug, Clone)]
pub(crate) struct JetCoordinates {
    pub columns: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl JetCoordinates {
    pub fn new(ord: &MonomialOrder, degree: u32) -> Self {
        let columns = ord.exponents_up_to(degree);
        let index = columns.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        JetCoordinates { columns, index }
    }

    pub fn dense(&self, s: &SeriesVector) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.columns.len()];
        for (e, c) in s.terms() {
            v[self.index[e]] = c.clone();
        }
        v
    }

    pub fn sparse(&self, v: &[Rational], nvars: usize, ncomponents: usize, degree: u32) -> SeriesVector {
        SeriesVector::from_terms(
            nvars,
            ncomponents,
            degree,
            v.iter()
                .zip(&self.columns)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, e)| (e.clone(), c.clone())),
        )
        .expect("columns fit the module")
    }
}

fn validate(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32) -> Result<()> {
    for g in generators {
        g.check_order(ord)?;
        if g.degree() != degree {
            return Err(Error::TruncationMismatch {
                left: g.degree(),
                right: degree,
            });
        }
    }
    Ok(())
}

/// `{ trunc_D(x^γ·Φ_i) : min_shift ≤ |γ| ≤ D }` as dense rows.
fn multiples(
    generators: &[SeriesVector],
    coords: &JetCoordinates,
    degree: u32,
    min_shift: u32,
) -> Result<Vec<Vec<Rational>>> {
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for g in generators {
        let Some(val) = g.valuation() else { continue };
        if val > degree {
            continue;
        }
        for gamma in multiindices_up_to(g.nvars(), degree - val) {
            if crate::algebra::degree(&gamma) < min_shift {
                continue;
            }
            rows.push(coords.dense(&g.monomial_multiply(&gamma, &one)?));
        }
    }
    Ok(rows)
}

/// The jet module `M + (x)^{D+1}` spanned by the generators, echelonized with
/// columns in the monomial order. Pivot columns are exactly the initial
/// exponents of its nonzero elements.
#[derive(Debug, Clone)]
pub struct JetModule {
    order: MonomialOrder,
    degree: u32,
    generators: Vec<SeriesVector>,
    coords: JetCoordinates,
    span: Subspace,
    diagram: Diagram,
}

impl JetModule {
    pub fn new(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32) -> Result<Self> {
        validate(generators, ord, degree)?;
        let coords = JetCoordinates::new(ord, degree);
        let rows = multiples(generators, &coords, degree, 0)?;
        let span = Subspace::span(coords.columns.len(), &rows)?;
        let diagram = Diagram::generated_by(
            ord.clone(),
            degree,
            span.pivots().iter().map(|&p| coords.columns[p].clone()),
        )?;
        Ok(JetModule {
            order: ord.clone(),
            degree,
            generators: generators.to_vec(),
            coords,
            span,
            diagram,
        })
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    /// Dimension of the jet module as a ℚ-vector space.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    /// One monic element `x^{(α_i,j_i)} + R_i` per vertex, `supp R_i ⊂ Δ`,
    /// read off the reduced echelon rows.
    pub fn standard_basis(&self) -> Vec<SeriesVector> {
        let by_pivot: HashMap<&Exponent, usize> = self
            .span
            .pivots()
            .iter()
            .enumerate()
            .map(|(row, &p)| (&self.coords.columns[p], row))
            .collect();
        self.diagram
            .vertices()
            .iter()
            .map(|v| {
                let row = &self.span.basis()[by_pivot[v]];
                self.coords
                    .sparse(row, self.order.nvars(), self.order.ncomponents(), self.degree)
            })
            .collect()
    }

    /// Divides `g` by the standard basis; `g ∈ M + (x)^{D+1}` iff the
    /// remainder vanishes.
    pub fn membership(&self, g: &SeriesVector) -> Result<Membership> {
        g.check_order(&self.order)?;
        if g.degree() != self.degree {
            return Err(Error::TruncationMismatch {
                left: g.degree(),
                right: self.degree,
            });
        }
        let basis = self.standard_basis();
        let remainder = if basis.is_empty() {
            g.clone()
        } else {
            hironaka_divide(g, &basis, &self.order)?.remainder
        };
        Ok(Membership {
            member: remainder.is_zero(),
            remainder,
        })
    }

    pub fn complement(&self, r: u32) -> Result<Vec<Exponent>> {
        if r > self.degree {
            return Err(Error::InsufficientTruncation(format!(
                "complement up to degree {r} needs truncation degree at least {r}, have {}",
                self.degree
            )));
        }
        Ok(self.diagram.complement_up_to(r))
    }

    /// `λ = max |α_i|` over the vertices; a vertex of degree `≥ D − 1` is
    /// reported as insufficient truncation.
    pub fn lambda(&self) -> Result<u32> {
        if let Some(v) = self.diagram.vertices().iter().find(|v| v.degree() + 1 >= self.degree) {
            return Err(Error::InsufficientTruncation(format!(
                "vertex {v} lies in the top two degree layers of truncation degree {}",
                self.degree
            )));
        }
        Ok(self.diagram.max_vertex_degree())
    }

    /// Checks `M ∩ 𝔪^{l+λ} ⊂ 𝔪^l·M` on degree-`D` jets.
    pub fn chevalley_estimate(&self, l: u32) -> Result<bool> {
        let lambda = self.lambda()?;
        if l + lambda > self.degree {
            return Err(Error::InsufficientTruncation(format!(
                "l + λ = {} exceeds truncation degree {}",
                l + lambda,
                self.degree
            )));
        }
        // Graded columns: reduced rows with pivot degree ≥ k span M ∩ 𝔪^k.
        let graded = MonomialOrder::graded(self.order.nvars(), self.order.ncomponents());
        let coords = JetCoordinates::new(&graded, self.degree);
        let all = Subspace::span(
            coords.columns.len(),
            &multiples(&self.generators, &coords, self.degree, 0)?,
        )?;
        let shifted = Subspace::span(
            coords.columns.len(),
            &multiples(&self.generators, &coords, self.degree, l)?,
        )?;
        for (row, &p) in all.basis().iter().zip(all.pivots()) {
            if coords.columns[p].degree() >= l + lambda && !shifted.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Verdict of a membership test together with the remainder that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub remainder: SeriesVector,
}

/// The diagram of initial exponents of the module generated by `generators`,
/// exact on `{|α| ≤ D}`.
pub fn compute_diagram(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32) -> Result<Diagram> {
    Ok(JetModule::new(generators, ord, degree)?.diagram)
}

pub fn standard_basis(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32) -> Result<Vec<SeriesVector>> {
    Ok(JetModule::new(generators, ord, degree)?.standard_basis())
}

pub fn membership_test(
    g: &SeriesVector,
    generators: &[SeriesVector],
    ord: &MonomialOrder,
    degree: u32,
) -> Result<Membership> {
    JetModule::new(generators, ord, degree)?.membership(g)
}

pub fn complement_basis(
    generators: &[SeriesVector],
    ord: &MonomialOrder,
    degree: u32,
    r: u32,
) -> Result<Vec<Exponent>> {
    JetModule::new(generators, ord, degree)?.complement(r)
}

pub fn artin_rees_lambda(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32) -> Result<u32> {
    JetModule::new(generators, ord, degree)?.lambda()
}

pub fn check_chevalley_estimate(generators: &[SeriesVector], ord: &MonomialOrder, degree: u32, l: u32) -> Result<bool> {
    JetModule::new(generators, ord, degree)?.chevalley_estimate(l)
}
