use std::collections::BTreeMap;

use rayon::prelude::*;

use super::basis::{project_relations, relation_basis};
use super::chevalley::chevalley_function;
use super::data::{EquationData, FibrePoint};
use super::system::assemble_relation_system;
use crate::algebra::{Exponent, MonomialOrder};
use crate::error::{dim_mismatch, Error, Result};
use crate::rational::Rational;

/// A finite set of rational query points, kept sorted lexicographically and
/// without duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Grid {
    points: Vec<Vec<Rational>>,
}

impl Grid {
    pub fn from_points(dim: usize, mut points: Vec<Vec<Rational>>) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(dim_mismatch(format!("grid point of dimension {} in ℝ^{dim}", p.len())));
        }
        points.sort();
        points.dedup();
        Ok(Grid { points })
    }

    /// The cartesian product of one list of values per coordinate.
    pub fn from_axes(axes: &[Vec<Rational>]) -> Self {
        let mut points: Vec<Vec<Rational>> = vec![Vec::new()];
        for axis in axes {
            points = points
                .iter()
                .flat_map(|p| {
                    axis.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        if axes.is_empty() {
            points.clear();
        }
        points.sort();
        points.dedup();
        Grid { points }
    }

    pub fn points(&self) -> &[Vec<Rational>] {
        &self.points
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Per-point outcome of a scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointResult {
    pub point: Vec<Rational>,
    /// Number of fibre points used.
    pub s: usize,
    /// `dim π_l(R_r(b))`.
    pub dim_l: usize,
    /// `dim π_r(R_r(b))`.
    pub dim_r: usize,
    pub rho0: usize,
    /// Initial exponents of the echelon basis of `π_r(R_r(b))`.
    pub initial_exponents: Vec<Exponent>,
    /// First `r′ ∈ l..=r` from which `π_l(R_{r′}(b))` is constant up to `r`,
    /// or `None` when it still changes at `r`.
    pub candidate_r: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedPoint {
    pub point: Vec<Rational>,
    pub reason: String,
}

/// Points sharing the same diagram and dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanGroup {
    pub initial_exponents: Vec<Exponent>,
    pub dim_l: usize,
    pub dim_r: usize,
    pub points: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanReport {
    pub l: u32,
    pub r: u32,
    pub points: Vec<PointResult>,
    pub groups: Vec<ScanGroup>,
    pub skipped: Vec<SkippedPoint>,
    pub candidate_min: Option<u32>,
    pub candidate_max: Option<u32>,
}

/// Scan settings. `threads = None` uses the global pool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub l: u32,
    pub r: u32,
    pub threads: Option<usize>,
}

fn scan_point(
    data: &EquationData,
    b: &[Rational],
    fibre: &[FibrePoint],
    l: u32,
    r: u32,
    ord: &MonomialOrder,
) -> Result<PointResult> {
    let system = assemble_relation_system(data, b, fibre, r, ord)?;
    let basis = relation_basis(&system);
    let dim_r = basis.dim();
    let dim_l = project_relations(&basis, l)?.dim();
    let candidate_r = match chevalley_function(data, b, fibre, l, r, ord) {
        Ok(report) => Some(report.stabilization_r),
        Err(Error::NoStabilization { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(PointResult {
        point: b.to_vec(),
        s: fibre.len(),
        dim_l,
        dim_r,
        rho0: system.columns().len() - dim_r,
        initial_exponents: basis.initial_exponents(),
        candidate_r,
    })
}

/// Evaluates every grid point, possibly in parallel, and groups the results.
///
/// Fibres come from `fibres`; for identity data a missing entry defaults to
/// `{b}`. Points without a usable fibre are reported in `skipped`.
pub fn diagram_scan(
    data: &EquationData,
    grid: &Grid,
    fibres: &BTreeMap<Vec<Rational>, Vec<FibrePoint>>,
    options: ScanOptions,
    ord: &MonomialOrder,
) -> Result<ScanReport> {
    let ScanOptions { l, r, threads } = options;
    if l > r {
        return Err(Error::InvalidInput(format!("l = {l} exceeds r = {r}")));
    }
    if let Some(p) = grid.points().iter().find(|p| p.len() != data.n()) {
        return Err(dim_mismatch(format!(
            "grid point of dimension {} for a map into ℝ^{}",
            p.len(),
            data.n()
        )));
    }
    let eval = |b: &Vec<Rational>| -> std::result::Result<PointResult, String> {
        let fibre = match fibres.get(b) {
            Some(f) => f.clone(),
            None => data.identity_fibre(b).ok_or_else(|| "no fibre supplied".to_string())?,
        };
        scan_point(data, b, &fibre, l, r, ord).map_err(|e| e.to_string())
    };
    let outcomes: Vec<_> = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidInput(format!("cannot start thread pool: {e}")))?
            .install(|| grid.points().par_iter().map(eval).collect()),
        None => grid.points().par_iter().map(eval).collect(),
    };

    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (b, outcome) in grid.points().iter().zip(outcomes) {
        match outcome {
            Ok(res) => points.push(res),
            Err(reason) => skipped.push(SkippedPoint {
                point: b.clone(),
                reason,
            }),
        }
    }
    let mut groups: Vec<ScanGroup> = Vec::new();
    for res in &points {
        let existing = groups
            .iter_mut()
            .find(|g| g.initial_exponents == res.initial_exponents && g.dim_l == res.dim_l && g.dim_r == res.dim_r);
        match existing {
            Some(g) => g.points.push(res.point.clone()),
            None => groups.push(ScanGroup {
                initial_exponents: res.initial_exponents.clone(),
                dim_l: res.dim_l,
                dim_r: res.dim_r,
                points: vec![res.point.clone()],
            }),
        }
    }
    let candidates = points.iter().filter_map(|p| p.candidate_r);
    Ok(ScanReport {
        l,
        r,
        candidate_min: candidates.clone().min(),
        candidate_max: candidates.max(),
        points,
        groups,
        skipped,
    })
}
