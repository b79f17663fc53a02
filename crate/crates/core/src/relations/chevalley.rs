use super::basis::{project_relations, relation_basis};
use super::data::{EquationData, FibrePoint};
use super::system::{assemble_relation_system, relation_order};
use crate::algebra::{Exponent, MonomialOrder};
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::rational::Rational;

/// `π_l(R_r(b))` for `r = l..=r_max` and the point from which it stays
/// constant over that window.
///
/// `stabilization_r` is stability over the tested window only; it is a
/// candidate for `r(b,l)`, not a proof.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChevalleyReport {
    pub point: Vec<Rational>,
    pub fibre: Vec<FibrePoint>,
    pub l: u32,
    pub r_max: u32,
    pub dims: Vec<usize>,
    pub stabilization_r: u32,
    /// Coordinates of the projected subspaces: exponents with `|β| ≤ l`.
    pub columns: Vec<Exponent>,
    /// `π_l(R_{r_max}(b))`.
    pub limit: Subspace,
}

impl ChevalleyReport {
    pub fn window(&self) -> (u32, u32) {
        (self.l, self.r_max)
    }
}

/// The projections `π_l(R_r(b))` for `r = l..=r_max`.
pub fn relation_projections(
    data: &EquationData,
    b: &[Rational],
    fibre: &[FibrePoint],
    l: u32,
    r_max: u32,
    ord: &MonomialOrder,
) -> Result<Vec<Subspace>> {
    if l > r_max {
        return Err(Error::InvalidInput(format!("l = {l} exceeds r_max = {r_max}")));
    }
    (l..=r_max)
        .map(|r| {
            let system = assemble_relation_system(data, b, fibre, r, ord)?;
            project_relations(&relation_basis(&system), l)
        })
        .collect()
}

/// Searches `r = l..=r_max` for the point where `π_l(R_r(b))` stops shrinking.
///
/// Returns [`Error::NoStabilization`] when the last step of the window still
/// changes the projection.
pub fn chevalley_function(
    data: &EquationData,
    b: &[Rational],
    fibre: &[FibrePoint],
    l: u32,
    r_max: u32,
    ord: &MonomialOrder,
) -> Result<ChevalleyReport> {
    let spaces = relation_projections(data, b, fibre, l, r_max, ord)?;
    let dims: Vec<usize> = spaces.iter().map(Subspace::dim).collect();
    let last = spaces.last().expect("window is nonempty");
    let mut first = spaces.len() - 1;
    while first > 0 && spaces[first - 1] == *last {
        first -= 1;
    }
    let stabilization_r = l + first as u32;
    if stabilization_r == r_max && r_max > l {
        return Err(Error::NoStabilization { l, r_max, dims });
    }
    let columns = relation_order(data, ord)?.exponents_up_to(l);
    Ok(ChevalleyReport {
        point: b.to_vec(),
        fibre: fibre.to_vec(),
        l,
        r_max,
        dims,
        stabilization_r,
        columns,
        limit: last.clone(),
    })
}
