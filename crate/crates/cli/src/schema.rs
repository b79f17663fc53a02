//! The JSON input document and its conversion into core values.

use std::collections::BTreeMap;
use std::fmt;

use hkit_core::algebra::Exponent;
use hkit_core::relations::{Chart, EquationData, FibrePoint, Grid};
use hkit_core::whitney::{AffineStratum, JetField};
use hkit_core::{format_rational, parse_rational, MonomialOrder, Polynomial, Rational, SeriesVector};
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

/// An exact rational written as a `"num/den"` (or `"num"`) string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct QVisitor;
        impl Visitor<'_> for QVisitor {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string such as \"3/2\" or \"-4\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Q, E> {
                parse_rational(v).map(Q).map_err(E::custom)
            }
        }
        d.deserialize_str(QVisitor)
    }
}

fn one() -> usize {
    1
}

/// One term `coeff · x^alpha` in component `j` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: Q,
    pub alpha: Vec<u32>,
    #[serde(default = "one")]
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartDoc {
    pub variables: Vec<String>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Vec<Term>>>,
    pub phi: Vec<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<Term>>>,
}

/// A fibre point on chart `chart` (1-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FibreDoc {
    pub chart: usize,
    pub coords: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<Q>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFibreDoc {
    pub point: Vec<Q>,
    pub fibre: Vec<FibreDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumDoc {
    pub origin: Vec<Q>,
    #[serde(default)]
    pub directions: Vec<Vec<Q>>,
}

/// `f_alpha` of a jet field, a polynomial in the stratum parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldEntry {
    pub alpha: Vec<u32>,
    pub poly: Vec<Term>,
}

/// Every subcommand reads this one document and uses the fields it needs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub version: u32,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dividend: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisors: Option<Vec<Vec<Term>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<Term>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmax: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charts: Option<Vec<ChartDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fibre: Option<Vec<FibreDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_fibres: Option<Vec<GridFibreDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stratum: Option<StratumDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Vec<FieldEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<Vec<Term>>,
}

/// A malformed document: where, and what is wrong.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("schema error at {path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

pub(crate) fn schema_err(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates a document. Errors name the offending field and,
/// for syntax errors, the line and column.
pub fn parse_input(text: &str) -> Result<InputDocument, SchemaError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: InputDocument = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let path = if path == "." { "document".to_string() } else { path };
        schema_err(path, format!("{inner}"))
    })?;
    doc.validate()?;
    Ok(doc)
}

/// Serializes a document; `parse_input(&format_input(d)) == d`.
pub fn format_input(doc: &InputDocument) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}

fn check_terms(terms: &[Term], nvars: usize, ncomp: usize, path: &str) -> Result<(), SchemaError> {
    for (k, t) in terms.iter().enumerate() {
        if t.alpha.len() != nvars {
            return Err(schema_err(
                format!("{path}[{k}].alpha"),
                format!("expected {nvars} exponents, found {}", t.alpha.len()),
            ));
        }
        if t.j == 0 || t.j > ncomp {
            return Err(schema_err(
                format!("{path}[{k}].j"),
                format!("component must lie in 1..={ncomp}, found {}", t.j),
            ));
        }
    }
    Ok(())
}

fn check_len<T>(v: &[T], n: usize, path: &str, what: &str) -> Result<(), SchemaError> {
    if v.len() != n {
        return Err(schema_err(path, format!("expected {n} {what}, found {}", v.len())));
    }
    Ok(())
}

impl InputDocument {
    pub fn minimal(variables: Vec<String>) -> Self {
        InputDocument {
            version: SCHEMA_VERSION,
            variables,
            p: None,
            q: None,
            order: None,
            trunc: None,
            dividend: None,
            divisors: None,
            generators: None,
            element: None,
            l: None,
            r: None,
            rmax: None,
            charts: None,
            point: None,
            fibre: None,
            grid: None,
            grid_fibres: None,
            stratum: None,
            m: None,
            field: None,
            function: None,
        }
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn p_or_default(&self) -> usize {
        self.p.unwrap_or(1)
    }

    pub fn q_or_default(&self) -> usize {
        self.q.unwrap_or(1)
    }

    fn validate(&self) -> Result<(), SchemaError> {
        if self.version != SCHEMA_VERSION {
            return Err(schema_err("version", format!("unsupported version {}", self.version)));
        }
        let n = self.n();
        if n == 0 {
            return Err(schema_err("variables", "at least one variable is required"));
        }
        let p = self.p_or_default();
        let q = self.q_or_default();
        if p == 0 {
            return Err(schema_err("p", "must be at least 1"));
        }
        if q == 0 {
            return Err(schema_err("q", "must be at least 1"));
        }
        if let Some(w) = &self.order {
            check_len(w, n, "order", "weights")?;
        }
        if let Some(t) = &self.dividend {
            check_terms(t, n, p, "dividend")?;
        }
        for (name, list) in [("divisors", &self.divisors), ("generators", &self.generators)] {
            for (i, t) in list.iter().flatten().enumerate() {
                check_terms(t, n, p, &format!("{name}[{i}]"))?;
            }
        }
        if let Some(t) = &self.element {
            check_terms(t, n, p, "element")?;
        }
        for (c, chart) in self.charts.iter().flatten().enumerate() {
            let path = format!("charts[{c}]");
            let nx = chart.variables.len();
            if nx == 0 {
                return Err(schema_err(
                    format!("{path}.variables"),
                    "at least one variable is required",
                ));
            }
            check_len(&chart.a, p, &format!("{path}.A"), "rows")?;
            for (i, row) in chart.a.iter().enumerate() {
                check_len(row, q, &format!("{path}.A[{i}]"), "entries")?;
                for (j, entry) in row.iter().enumerate() {
                    check_terms(entry, nx, 1, &format!("{path}.A[{i}][{j}]"))?;
                }
            }
            check_len(&chart.phi, n, &format!("{path}.phi"), "components")?;
            for (k, g) in chart.phi.iter().enumerate() {
                check_terms(g, nx, 1, &format!("{path}.phi[{k}]"))?;
            }
            if let Some(f) = &chart.f {
                check_len(f, p, &format!("{path}.f"), "components")?;
                for (k, g) in f.iter().enumerate() {
                    check_terms(g, nx, 1, &format!("{path}.f[{k}]"))?;
                }
            }
        }
        if let Some(charts) = &self.charts {
            if charts.is_empty() {
                return Err(schema_err("charts", "at least one chart is required"));
            }
            if charts.iter().any(|c| c.f.is_some()) != charts.iter().all(|c| c.f.is_some()) {
                return Err(schema_err("charts", "either every chart or no chart carries f"));
            }
        }
        if let Some(b) = &self.point {
            check_len(b, n, "point", "coordinates")?;
        }
        self.validate_fibre(self.fibre.as_deref().unwrap_or(&[]), "fibre")?;
        if let Some(g) = &self.grid {
            match (&g.axes, &g.points) {
                (Some(axes), None) => check_len(axes, n, "grid.axes", "axes")?,
                (None, Some(points)) => {
                    for (k, pt) in points.iter().enumerate() {
                        check_len(pt, n, &format!("grid.points[{k}]"), "coordinates")?;
                    }
                }
                _ => return Err(schema_err("grid", "give exactly one of \"axes\" or \"points\"")),
            }
        }
        for (k, gf) in self.grid_fibres.iter().flatten().enumerate() {
            check_len(&gf.point, n, &format!("grid_fibres[{k}].point"), "coordinates")?;
            self.validate_fibre(&gf.fibre, &format!("grid_fibres[{k}].fibre"))?;
        }
        if let Some(s) = &self.stratum {
            check_len(&s.origin, n, "stratum.origin", "coordinates")?;
            for (k, u) in s.directions.iter().enumerate() {
                check_len(u, n, &format!("stratum.directions[{k}]"), "coordinates")?;
            }
            for (k, e) in self.field.iter().flatten().enumerate() {
                check_len(&e.alpha, n, &format!("field[{k}].alpha"), "exponents")?;
                check_terms(&e.poly, s.directions.len(), 1, &format!("field[{k}].poly"))?;
            }
        } else if self.field.is_some() {
            return Err(schema_err("field", "a field needs a stratum"));
        }
        if let Some(g) = &self.function {
            check_terms(g, n, 1, "function")?;
        }
        Ok(())
    }

    fn validate_fibre(&self, fibre: &[FibreDoc], path: &str) -> Result<(), SchemaError> {
        for (k, pt) in fibre.iter().enumerate() {
            let Some(chart) = self.charts.as_ref().and_then(|c| c.get(pt.chart.wrapping_sub(1))) else {
                return Err(schema_err(
                    format!("{path}[{k}].chart"),
                    format!("no chart numbered {}", pt.chart),
                ));
            };
            check_len(
                &pt.coords,
                chart.variables.len(),
                &format!("{path}[{k}].coords"),
                "coordinates",
            )?;
        }
        Ok(())
    }
}

pub fn rationals(v: &[Q]) -> Vec<Rational> {
    v.iter().map(|q| q.0.clone()).collect()
}

pub fn series(terms: &[Term], nvars: usize, ncomp: usize, degree: u32) -> SeriesVector {
    SeriesVector::from_terms(
        nvars,
        ncomp,
        degree,
        terms
            .iter()
            .filter(|t| t.alpha.iter().sum::<u32>() <= degree)
            .map(|t| (Exponent::new(t.alpha.clone(), t.j - 1), t.coeff.0.clone())),
    )
    .expect("validated terms")
}

pub fn polynomial(terms: &[Term], nvars: usize) -> Polynomial {
    Polynomial::from_terms(nvars, terms.iter().map(|t| (t.alpha.clone(), t.coeff.0.clone()))).expect("validated terms")
}

pub fn order(doc: &InputDocument, weights: Option<&[Q]>, ncomp: usize) -> Result<MonomialOrder, SchemaError> {
    match weights.or(doc.order.as_deref()) {
        None => Ok(MonomialOrder::graded(doc.n(), ncomp)),
        Some(w) => {
            check_len(w, doc.n(), "order", "weights")?;
            MonomialOrder::weighted(rationals(w), ncomp).map_err(|e| schema_err("order", e.to_string()))
        }
    }
}

pub fn equation_data(doc: &InputDocument) -> Result<EquationData, SchemaError> {
    let charts = doc
        .charts
        .as_ref()
        .ok_or_else(|| schema_err("charts", "this command needs \"charts\""))?;
    let built = charts
        .iter()
        .enumerate()
        .map(|(c, chart)| {
            let nx = chart.variables.len();
            let a = chart
                .a
                .iter()
                .map(|row| row.iter().map(|t| polynomial(t, nx)).collect())
                .collect();
            let phi = chart.phi.iter().map(|t| polynomial(t, nx)).collect();
            let f = chart.f.as_ref().map(|f| f.iter().map(|t| polynomial(t, nx)).collect());
            Chart::new(nx, a, phi, f).map_err(|e| schema_err(format!("charts[{c}]"), e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    EquationData::new(built).map_err(|e| schema_err("charts", e.to_string()))
}

pub fn fibre_points(fibre: &[FibreDoc]) -> Vec<FibrePoint> {
    fibre
        .iter()
        .map(|f| FibrePoint::new(f.chart - 1, rationals(&f.coords)))
        .collect()
}

pub fn grid(doc: &GridDoc, n: usize) -> Result<Grid, SchemaError> {
    match (&doc.axes, &doc.points) {
        (Some(axes), None) => {
            check_len(axes, n, "grid.axes", "axes")?;
            Ok(Grid::from_axes(&axes.iter().map(|a| rationals(a)).collect::<Vec<_>>()))
        }
        (None, Some(points)) => Grid::from_points(n, points.iter().map(|p| rationals(p)).collect())
            .map_err(|e| schema_err("grid.points", e.to_string())),
        _ => Err(schema_err("grid", "give exactly one of \"axes\" or \"points\"")),
    }
}

pub fn grid_fibres(docs: &[GridFibreDoc]) -> BTreeMap<Vec<Rational>, Vec<FibrePoint>> {
    docs.iter()
        .map(|d| (rationals(&d.point), fibre_points(&d.fibre)))
        .collect()
}

pub fn stratum(doc: &StratumDoc) -> Result<AffineStratum, SchemaError> {
    AffineStratum::new(
        rationals(&doc.origin),
        doc.directions.iter().map(|u| rationals(u)).collect(),
    )
    .map_err(|e| schema_err("stratum", e.to_string()))
}

pub fn jet_field(entries: &[FieldEntry], stratum: &AffineStratum, m: u32) -> Result<JetField, SchemaError> {
    let d = stratum.dim();
    let mut merged: BTreeMap<Vec<u32>, Vec<Term>> = BTreeMap::new();
    for e in entries {
        merged
            .entry(e.alpha.clone())
            .or_default()
            .extend(e.poly.iter().cloned());
    }
    JetField::new(
        m,
        stratum.clone(),
        merged.into_iter().map(|(a, t)| (a, polynomial(&t, d))),
    )
    .map_err(|e| schema_err("field", e.to_string()))
}

/// Terms of a jet in the document's own format, in increasing default order.
pub fn terms_of(s: &SeriesVector) -> Vec<Term> {
    s.terms()
        .map(|(e, c)| Term {
            coeff: Q(c.clone()),
            alpha: e.alpha.clone(),
            j: e.component + 1,
        })
        .collect()
}

pub fn terms_of_polynomial(p: &Polynomial, j: usize) -> Vec<Term> {
    let mut terms: Vec<(Vec<u32>, Rational)> = p.terms().map(|(a, c)| (a.clone(), c.clone())).collect();
    terms.sort_by(|(a, _), (b, _)| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
    terms
        .into_iter()
        .map(|(alpha, c)| Term { coeff: Q(c), alpha, j })
        .collect()
}
