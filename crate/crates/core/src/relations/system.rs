use std::collections::HashMap;

use num_traits::Zero;

use super::data::{EquationData, FibrePoint};
use crate::algebra::{multiindices_up_to, Exponent, JetPowers, MonomialOrder, SeriesVector};
use crate::error::{dim_mismatch, Error, Result};
use crate::linalg::{rank, RationalMatrix};
use crate::rational::Rational;

/// Row index `(α, i, ν)`: coefficient of `x^α` in component `i` at fibre point `ν`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RowLabel {
    pub alpha: Vec<u32>,
    pub component: usize,
    pub point: usize,
}

/// The linear system whose nullspace is `π_r(R_r(b))`.
///
/// Columns are the unknown coefficients `W_{(β,j)}`, `|β| ≤ r`, listed in
/// increasing monomial order; rows are the coefficients of
/// `T^r_aA·W(ṪT^r_aφ)` at every fibre point.
#[derive(Debug, Clone)]
pub struct RelationSystem {
    pub(crate) r: u32,
    pub(crate) point: Vec<Rational>,
    pub(crate) fibre: Vec<FibrePoint>,
    pub(crate) order: MonomialOrder,
    pub(crate) columns: Vec<Exponent>,
    pub(crate) rows: Vec<RowLabel>,
    pub(crate) matrix: RationalMatrix,
}

impl RelationSystem {
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn fibre(&self) -> &[FibrePoint] {
        &self.fibre
    }

    /// Number `s` of fibre points used.
    pub fn s(&self) -> usize {
        self.fibre.len()
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn columns(&self) -> &[Exponent] {
        &self.columns
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }
}

pub(crate) fn relation_order(data: &EquationData, ord: &MonomialOrder) -> Result<MonomialOrder> {
    if ord.nvars() != data.n() {
        return Err(dim_mismatch(format!(
            "order on {} variables for a map into ℝ^{}",
            ord.nvars(),
            data.n()
        )));
    }
    Ok(ord.with_components(data.q()))
}

/// Degree-`r` jets at a fibre point: `T^r_aA` entry by entry and `ṪT^r_aφ`
/// as substitution powers.
pub(crate) struct PointJets {
    pub a: Vec<Vec<SeriesVector>>,
    pub powers: JetPowers,
}

pub(crate) fn point_jets(data: &EquationData, pt: &FibrePoint, r: u32) -> Result<PointJets> {
    let chart = &data.charts()[pt.chart];
    let a = chart
        .a()
        .iter()
        .map(|row| row.iter().map(|g| g.taylor_expand_at(&pt.coords, r)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    let u = chart
        .phi()
        .iter()
        .map(|g| Ok(g.taylor_expand_at(&pt.coords, r)?.drop_constant()))
        .collect::<Result<Vec<_>>>()?;
    let powers = JetPowers::new(&u, r)?;
    Ok(PointJets { a, powers })
}

/// Row labels for one fibre point, in the order used by the system.
pub(crate) fn point_rows(chart_nvars: usize, p: usize, r: u32, point: usize) -> Vec<RowLabel> {
    let mut rows = Vec::new();
    for alpha in multiindices_up_to(chart_nvars, r) {
        for component in 0..p {
            rows.push(RowLabel {
                alpha: alpha.clone(),
                component,
                point,
            });
        }
    }
    rows
}

/// Builds the system at `b` from the supplied fibre points.
pub fn assemble_relation_system(
    data: &EquationData,
    b: &[Rational],
    fibre: &[FibrePoint],
    r: u32,
    ord: &MonomialOrder,
) -> Result<RelationSystem> {
    let order = relation_order(data, ord)?;
    data.validate_fibre(b, fibre)?;
    let columns = order.exponents_up_to(r);
    let p = data.p();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for (nu, pt) in fibre.iter().enumerate() {
        let jets = point_jets(data, pt, r)?;
        let labels = point_rows(data.charts()[pt.chart].nvars(), p, r, nu);
        let index: HashMap<(&[u32], usize), usize> = labels
            .iter()
            .enumerate()
            .map(|(k, l)| ((l.alpha.as_slice(), l.component), k))
            .collect();
        let mut block = vec![vec![Rational::zero(); columns.len()]; labels.len()];
        for (col, e) in columns.iter().enumerate() {
            let u_beta = jets.powers.get(&e.alpha);
            if u_beta.is_zero() {
                continue;
            }
            for (i, a_row) in jets.a.iter().enumerate() {
                let prod = a_row[e.component].mul_scalar(&u_beta)?;
                for (x, c) in prod.terms() {
                    block[index[&(x.alpha.as_slice(), i)]][col] = c.clone();
                }
            }
        }
        rows.extend(labels);
        entries.extend(block);
    }
    let matrix = RationalMatrix::from_rows(columns.len(), entries)?;
    Ok(RelationSystem {
        r,
        point: b.to_vec(),
        fibre: fibre.to_vec(),
        order,
        columns,
        rows,
        matrix,
    })
}

/// `ρ⁰`: rank of the full system.
pub fn rank_rho0(system: &RelationSystem) -> usize {
    rank(&system.matrix)
}

/// `ρ¹`: rank of the columns with `l < |β| ≤ r`.
pub fn rank_rho1(system: &RelationSystem, l: u32) -> Result<usize> {
    if l > system.r {
        return Err(Error::InvalidInput(format!("l = {l} exceeds r = {}", system.r)));
    }
    let cols: Vec<usize> = (0..system.columns.len())
        .filter(|&k| system.columns[k].degree() > l)
        .collect();
    Ok(rank(&system.matrix.select_columns(&cols)))
}
