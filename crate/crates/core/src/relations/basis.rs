use super::system::RelationSystem;
use crate::algebra::{Exponent, MonomialOrder, SeriesVector};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Subspace};

/// `π_r(R_r(b))` as a subspace of coefficient vectors indexed by the
/// system's columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationBasis {
    r: u32,
    order: MonomialOrder,
    columns: Vec<Exponent>,
    subspace: Subspace,
}

impl RelationBasis {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn columns(&self) -> &[Exponent] {
        &self.columns
    }

    pub fn subspace(&self) -> &Subspace {
        &self.subspace
    }

    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }

    /// Column positions with `|β| ≤ l`.
    pub fn columns_up_to(&self, l: u32) -> Vec<usize> {
        (0..self.columns.len())
            .filter(|&k| self.columns[k].degree() <= l)
            .collect()
    }

    /// Initial exponents of the echelon basis. Columns are sorted by the
    /// monomial order, so each pivot column is the initial exponent of its row.
    pub fn initial_exponents(&self) -> Vec<Exponent> {
        self.subspace
            .pivots()
            .iter()
            .map(|&k| self.columns[k].clone())
            .collect()
    }

    /// The basis vectors as polynomial `q`-vectors in the centred variables `y − b`.
    pub fn elements(&self) -> Vec<SeriesVector> {
        self.subspace
            .basis()
            .iter()
            .map(|v| vector_to_series(&self.order, &self.columns, v, self.r))
            .collect()
    }

    /// Basis of `π_l(R_r(b))` as polynomial `q`-vectors of degree `≤ l`.
    pub fn projected_elements(&self, l: u32) -> Result<Vec<SeriesVector>> {
        let keep = self.columns_up_to(l);
        let labels: Vec<Exponent> = keep.iter().map(|&k| self.columns[k].clone()).collect();
        Ok(project_relations(self, l)?
            .basis()
            .iter()
            .map(|v| vector_to_series(&self.order, &labels, v, l))
            .collect())
    }
}

pub(crate) fn vector_to_series(
    order: &MonomialOrder,
    columns: &[Exponent],
    v: &[crate::Rational],
    r: u32,
) -> SeriesVector {
    SeriesVector::from_terms(
        order.nvars(),
        order.ncomponents(),
        r,
        columns
            .iter()
            .zip(v)
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(e, c)| (e.clone(), c.clone())),
    )
    .expect("columns fit the order")
}

/// The nullspace of the system, i.e. `π_r(R_r(b))`.
pub fn relation_basis(system: &RelationSystem) -> RelationBasis {
    RelationBasis {
        r: system.r,
        order: system.order.clone(),
        columns: system.columns.clone(),
        subspace: nullspace(&system.matrix),
    }
}

/// `π_l(R_r(b))`: coordinates restricted to `|β| ≤ l`, in column order.
pub fn project_relations(basis: &RelationBasis, l: u32) -> Result<Subspace> {
    if l > basis.r {
        return Err(Error::InvalidInput(format!("l = {l} exceeds r = {}", basis.r)));
    }
    basis.subspace.project(&basis.columns_up_to(l))
}
