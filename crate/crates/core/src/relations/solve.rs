use super::basis::vector_to_series;
use super::data::{EquationData, FibrePoint};
use super::system::{assemble_relation_system, RelationSystem};
use crate::algebra::{Exponent, MonomialOrder, Polynomial, SeriesVector};
use crate::error::{Error, Result};
use crate::linalg::solve;
use crate::rational::Rational;

/// A polynomial `P` of degree `≤ r` with `f − A·(P∘φ)` flat to order `r` at
/// every fibre point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetSolution {
    pub r: u32,
    pub point: Vec<Rational>,
    /// `P` in the centred variables `y − b`.
    pub centered: SeriesVector,
    /// `P` expanded in the variables `y`, one polynomial per component.
    pub expanded: Vec<Polynomial>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormalSolution {
    Solved(JetSolution),
    Unsat,
}

impl FormalSolution {
    pub fn is_unsat(&self) -> bool {
        matches!(self, FormalSolution::Unsat)
    }

    pub fn solution(&self) -> Option<&JetSolution> {
        match self {
            FormalSolution::Solved(s) => Some(s),
            FormalSolution::Unsat => None,
        }
    }
}

/// Right-hand side of the affine system: the coefficients of `T^r_a f` in
/// the row order of `system`.
pub fn jet_rhs(data: &EquationData, system: &RelationSystem) -> Result<Vec<Rational>> {
    let r = system.r();
    let mut jets: Vec<Vec<SeriesVector>> = Vec::new();
    for pt in system.fibre() {
        let chart = &data.charts()[pt.chart];
        let f = chart
            .f()
            .ok_or_else(|| Error::InvalidInput("the equation has no right-hand side f".into()))?;
        jets.push(
            f.iter()
                .map(|g| g.taylor_expand_at(&pt.coords, r))
                .collect::<Result<_>>()?,
        );
    }
    Ok(system
        .rows()
        .iter()
        .map(|row| jets[row.point][row.component].coeff(&Exponent::scalar(row.alpha.clone())))
        .collect())
}

/// Whether `f − A·(P∘φ)` vanishes to order `r` at `pt`, computed by exact
/// polynomial composition and re-expansion.
pub fn defect_is_flat(data: &EquationData, pt: &FibrePoint, p: &[Polynomial], r: u32) -> Result<bool> {
    let chart = &data.charts()[pt.chart];
    let f = chart
        .f()
        .ok_or_else(|| Error::InvalidInput("the equation has no right-hand side f".into()))?;
    let composed = p.iter().map(|pj| pj.compose(chart.phi())).collect::<Result<Vec<_>>>()?;
    for (i, row) in chart.a().iter().enumerate() {
        let mut defect = f[i].clone();
        for (aij, gj) in row.iter().zip(&composed) {
            defect = defect.sub(&aij.mul(gj)?)?;
        }
        if !defect.taylor_expand_at(&pt.coords, r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Solves `A(x)·P(φ(x)) ≡ f(x) mod (x − a)^{r+1}` for all fibre points at
/// once. The returned `P` is the reduced-echelon solution with free
/// coefficients set to zero, and is re-verified before it is returned.
pub fn formal_solve_at_point(
    data: &EquationData,
    b: &[Rational],
    fibre: &[FibrePoint],
    r: u32,
    ord: &MonomialOrder,
) -> Result<FormalSolution> {
    if !data.has_rhs() {
        return Err(Error::InvalidInput("the equation has no right-hand side f".into()));
    }
    let system = assemble_relation_system(data, b, fibre, r, ord)?;
    let rhs = jet_rhs(data, &system)?;
    let Some(x) = solve(system.matrix(), &rhs)? else {
        return Ok(FormalSolution::Unsat);
    };
    let centered = vector_to_series(system.order(), system.columns(), &x, r);
    let n = data.n();
    let shift: Vec<Polynomial> = (0..n)
        .map(|k| Polynomial::var(n, k).sub(&Polynomial::constant(n, b[k].clone())))
        .collect::<Result<_>>()?;
    let expanded = (0..data.q())
        .map(|j| Polynomial::from_series(&centered.component(j))?.compose(&shift))
        .collect::<Result<Vec<_>>>()?;
    for (index, pt) in fibre.iter().enumerate() {
        if !defect_is_flat(data, pt, &expanded, r)? {
            return Err(Error::VerificationFailed(format!(
                "defect is not {r}-flat at fibre point {index}"
            )));
        }
    }
    Ok(FormalSolution::Solved(JetSolution {
        r,
        point: b.to_vec(),
        centered,
        expanded,
    }))
}
