use std::cmp::Ordering;

use crate::algebra::{Exponent, MonomialOrder};
use crate::error::{dim_mismatch, Result};

/// A region `N ⊂ ℕⁿ × {1..p}` with `N + ℕⁿ = N`, stored by its vertices.
///
/// Computed diagrams are exact only on `{|α| ≤ certified_degree}`; vertices
/// of higher degree are invisible.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    order: MonomialOrder,
    /// Increasing under `order`; pairwise non-dividing.
    vertices: Vec<Exponent>,
    certified_degree: u32,
}

impl Diagram {
    pub fn empty(order: MonomialOrder, certified_degree: u32) -> Self {
        Diagram {
            order,
            vertices: Vec::new(),
            certified_degree,
        }
    }

    /// The region generated by `exps`; keeps only its minimal elements.
    pub fn generated_by<I>(order: MonomialOrder, certified_degree: u32, exps: I) -> Result<Self>
    where
        I: IntoIterator<Item = Exponent>,
    {
        let mut all: Vec<Exponent> = exps.into_iter().collect();
        for e in &all {
            order.check(e)?;
        }
        // increasing total degree first so any divisor is seen before its multiples
        all.sort();
        all.dedup();
        let mut vertices: Vec<Exponent> = Vec::new();
        for e in all {
            if !vertices.iter().any(|v| v.divides(&e)) {
                vertices.push(e);
            }
        }
        order.sort(&mut vertices);
        Ok(Diagram {
            order,
            vertices,
            certified_degree,
        })
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub fn certified_degree(&self) -> u32 {
        self.certified_degree
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.vertices.iter().any(|v| v.divides(e))
    }

    /// `{(β, i) ∉ N : |β| ≤ r}`, sorted by the diagram's order.
    pub fn complement_up_to(&self, r: u32) -> Vec<Exponent> {
        self.order
            .exponents_up_to(r)
            .into_iter()
            .filter(|e| !self.contains(e))
            .collect()
    }

    /// Largest vertex degree, `0` for the empty diagram.
    pub fn max_vertex_degree(&self) -> u32 {
        self.vertices.iter().map(Exponent::degree).max().unwrap_or(0)
    }
}

/// Total order on diagrams: vertex lists in increasing order, padded with
/// `∞`, compared lexicographically. A larger region compares smaller.
pub fn compare_diagrams(a: &Diagram, b: &Diagram) -> Result<Ordering> {
    if a.order != b.order {
        return Err(dim_mismatch("diagrams over different orders or dimensions"));
    }
    let mut i = 0;
    loop {
        match (a.vertices.get(i), b.vertices.get(i)) {
            (None, None) => return Ok(Ordering::Equal),
            (None, Some(_)) => return Ok(Ordering::Greater),
            (Some(_), None) => return Ok(Ordering::Less),
            (Some(x), Some(y)) => match a.order.cmp(x, y) {
                Ordering::Equal => i += 1,
                other => return Ok(other),
            },
        }
    }
}
