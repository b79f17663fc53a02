use crate::algebra::Polynomial;
use crate::error::{dim_mismatch, Error, Result};
use crate::rational::Rational;

/// One affine chart `ℝ^{n′}` carrying the polynomial data of `A(x)·g(φ(x)) = f(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    nvars: usize,
    a: Vec<Vec<Polynomial>>,
    phi: Vec<Polynomial>,
    f: Option<Vec<Polynomial>>,
}

impl Chart {
    /// `a` is the `p × q` matrix row by row, `phi` the `n` components of the map.
    pub fn new(
        nvars: usize,
        a: Vec<Vec<Polynomial>>,
        phi: Vec<Polynomial>,
        f: Option<Vec<Polynomial>>,
    ) -> Result<Self> {
        if nvars == 0 {
            return Err(dim_mismatch("chart dimension must be at least 1"));
        }
        let q = a.first().map_or(0, Vec::len);
        if a.is_empty() || q == 0 || a.iter().any(|row| row.len() != q) {
            return Err(dim_mismatch("A must be a nonempty rectangular matrix"));
        }
        if phi.is_empty() {
            return Err(dim_mismatch("φ needs at least one component"));
        }
        let polys = a.iter().flatten().chain(&phi).chain(f.iter().flatten());
        for g in polys {
            if g.nvars() != nvars {
                return Err(dim_mismatch(format!(
                    "polynomial in {} variables on a chart of dimension {nvars}",
                    g.nvars()
                )));
            }
        }
        if let Some(f) = &f {
            if f.len() != a.len() {
                return Err(dim_mismatch(format!(
                    "f has {} components, A has {} rows",
                    f.len(),
                    a.len()
                )));
            }
        }
        Ok(Chart { nvars, a, phi, f })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn a(&self) -> &[Vec<Polynomial>] {
        &self.a
    }

    pub fn phi(&self) -> &[Polynomial] {
        &self.phi
    }

    pub fn f(&self) -> Option<&[Polynomial]> {
        self.f.as_deref()
    }

    pub fn p(&self) -> usize {
        self.a.len()
    }

    pub fn q(&self) -> usize {
        self.a[0].len()
    }

    /// `φ(a)`.
    pub fn map_point(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        self.phi.iter().map(|g| g.eval(a)).collect()
    }

    fn is_identity(&self) -> bool {
        self.phi.len() == self.nvars
            && self
                .phi
                .iter()
                .enumerate()
                .all(|(k, g)| *g == Polynomial::var(self.nvars, k))
    }
}

/// The equation data over one or more disjoint affine charts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationData {
    charts: Vec<Chart>,
}

impl EquationData {
    pub fn new(charts: Vec<Chart>) -> Result<Self> {
        let first = charts
            .first()
            .ok_or_else(|| dim_mismatch("at least one chart is required"))?;
        let shape = (first.p(), first.q(), first.phi.len(), first.f.is_some());
        for c in &charts[1..] {
            if (c.p(), c.q(), c.phi.len(), c.f.is_some()) != shape {
                return Err(dim_mismatch("charts disagree on p, q, n or on the presence of f"));
            }
        }
        Ok(EquationData { charts })
    }

    pub fn single(chart: Chart) -> Self {
        EquationData { charts: vec![chart] }
    }

    pub fn charts(&self) -> &[Chart] {
        &self.charts
    }

    /// Dimension `n` of the target space of `φ`.
    pub fn n(&self) -> usize {
        self.charts[0].phi.len()
    }

    pub fn p(&self) -> usize {
        self.charts[0].p()
    }

    pub fn q(&self) -> usize {
        self.charts[0].q()
    }

    pub fn has_rhs(&self) -> bool {
        self.charts[0].f.is_some()
    }

    /// True when there is a single chart and `φ` is the identity map.
    pub fn is_identity(&self) -> bool {
        self.charts.len() == 1 && self.charts[0].is_identity()
    }

    /// The fibre `{b}` for identity data, `None` otherwise.
    pub fn identity_fibre(&self, b: &[Rational]) -> Option<Vec<FibrePoint>> {
        self.is_identity().then(|| vec![FibrePoint::new(0, b.to_vec())])
    }

    /// Checks that every fibre point lies on a chart and maps to `b` exactly.
    pub fn validate_fibre(&self, b: &[Rational], fibre: &[FibrePoint]) -> Result<()> {
        if b.len() != self.n() {
            return Err(dim_mismatch(format!(
                "point of dimension {} for a map into ℝ^{}",
                b.len(),
                self.n()
            )));
        }
        if fibre.is_empty() {
            return Err(Error::InvalidInput("the fibre must contain at least one point".into()));
        }
        for (index, pt) in fibre.iter().enumerate() {
            let chart = self
                .charts
                .get(pt.chart)
                .ok_or_else(|| Error::InvalidInput(format!("fibre point {index} refers to chart {}", pt.chart)))?;
            if pt.coords.len() != chart.nvars {
                return Err(dim_mismatch(format!(
                    "fibre point {index} has {} coordinates on a chart of dimension {}",
                    pt.coords.len(),
                    chart.nvars
                )));
            }
            if chart.map_point(&pt.coords)? != b {
                return Err(Error::FibreMismatch { index });
            }
        }
        Ok(())
    }
}

/// A user-supplied preimage of the query point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FibrePoint {
    pub chart: usize,
    pub coords: Vec<Rational>,
}

impl FibrePoint {
    pub fn new(chart: usize, coords: Vec<Rational>) -> Self {
        FibrePoint { chart, coords }
    }
}
