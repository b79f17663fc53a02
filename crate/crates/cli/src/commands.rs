use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hkit_core::algebra::{count_up_to, Exponent};
use hkit_core::relations::{
    assemble_relation_system, chevalley_function, diagram_scan, formal_solve_at_point, rank_rho0, rank_rho1,
    relation_basis, EquationData, FibrePoint, FormalSolution, ScanOptions,
};
use hkit_core::whitney::{borel_check, field_of_function, BorelVerdict};
use hkit_core::{
    artin_rees_lambda, check_chevalley_estimate, complement_basis, compute_diagram, hironaka_divide, membership_test,
    parse_rational, standard_basis, Error as CoreError, MonomialOrder, Rational, SeriesVector,
};
use serde_json::{json, Value};

use crate::schema::{self, FibreDoc, InputDocument, SchemaError, Q};
use crate::SCHEMA_HELP;

#[derive(Debug, Parser)]
#[command(
    name = "hkit",
    version,
    about = "Exact formal division and relation modules of power series"
)]
#[command(after_long_help = SCHEMA_HELP)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hironaka division of `dividend` by `divisors`
    Divide(Flags),
    /// Vertices of the diagram of initial exponents of `generators`
    Diagram(Flags),
    /// Standard basis of the module spanned by `generators`
    Stdbasis(Flags),
    /// Whether `element` lies in the module spanned by `generators`
    Member(Flags),
    /// Complement of the diagram up to degree --r
    Complement(Flags),
    /// Largest vertex degree of the diagram
    Lambda(Flags),
    /// Check M ∩ m^(l+λ) ⊂ m^l·M at level --l
    ChevalleyEstimate(Flags),
    /// Relation module at --point up to order --r
    Relations(Flags),
    /// Stabilization of the degree-l projections for r = l..=rmax
    Chevalley(Flags),
    /// The ranks ρ⁰ and ρ¹ of the relation system
    Ranks(Flags),
    /// Solve A·P(φ) = f to order --r at --point
    SolveJet(Flags),
    /// Relation diagrams over a grid of points
    Scan(Flags),
    /// Borel compatibility of a jet field on an affine stratum
    Borel(Flags),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Input document, `-` for stdin
    #[arg(default_value = "-")]
    pub input: PathBuf,
    #[arg(long)]
    pub trunc: Option<u32>,
    /// Weights w1,...,wn of the monomial order
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub l: Option<u32>,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub rmax: Option<u32>,
    /// Query point b1,...,bn
    #[arg(long)]
    pub point: Option<String>,
    /// Fibre points as chart:a1,a2;chart:a1,a2
    #[arg(long)]
    pub fibre: Option<String>,
    /// Grid axes as v1,v2;w1,w2 (one list per coordinate)
    #[arg(long)]
    pub grid: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Divide(_) => "divide",
            Command::Diagram(_) => "diagram",
            Command::Stdbasis(_) => "stdbasis",
            Command::Member(_) => "member",
            Command::Complement(_) => "complement",
            Command::Lambda(_) => "lambda",
            Command::ChevalleyEstimate(_) => "chevalley-estimate",
            Command::Relations(_) => "relations",
            Command::Chevalley(_) => "chevalley",
            Command::Ranks(_) => "ranks",
            Command::SolveJet(_) => "solve-jet",
            Command::Scan(_) => "scan",
            Command::Borel(_) => "borel",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Divide(f)
            | Command::Diagram(f)
            | Command::Stdbasis(f)
            | Command::Member(f)
            | Command::Complement(f)
            | Command::Lambda(f)
            | Command::ChevalleyEstimate(f)
            | Command::Relations(f)
            | Command::Chevalley(f)
            | Command::Ranks(f)
            | Command::SolveJet(f)
            | Command::Scan(f)
            | Command::Borel(f) => f,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

/// A finished report. `negative` marks a mathematical "no" (UNSAT, FAIL,
/// non-membership, an estimate that does not hold, no stabilization).
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub value: Value,
    pub negative: bool,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report { value, negative: false }
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&sort_keys(&self.value)).expect("reports serialize");
        s.push('\n');
        s
    }
}

fn sort_keys(v: &Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<_> = map.iter().collect();
            entries.sort_by(|a, b| a.0.cmp(b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k.clone(), sort_keys(v))).collect())
        }
        Value::Array(items) => Value::Array(items.iter().map(sort_keys).collect()),
        other => other.clone(),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn required<T: Clone>(flag: Option<T>, doc: Option<T>, name: &str) -> Result<T, CliError> {
    flag.or(doc)
        .ok_or_else(|| usage(format!("this command needs --{name} or the document field \"{name}\"")))
}

fn field<'a, T>(v: &'a Option<T>, name: &str) -> Result<&'a T, CliError> {
    v.as_ref()
        .ok_or_else(|| usage(format!("this command needs the document field \"{name}\"")))
}

fn parse_list(s: &str, what: &str) -> Result<Vec<Q>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            parse_rational(x.trim())
                .map(Q)
                .map_err(|e| usage(format!("bad {what}: {e}")))
        })
        .collect()
}

fn parse_fibre(s: &str) -> Result<Vec<FibreDoc>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (chart, coords) = p
                .split_once(':')
                .ok_or_else(|| usage(format!("fibre point \"{p}\" must look like chart:a1,a2")))?;
            let chart = chart
                .trim()
                .parse()
                .map_err(|_| usage(format!("bad chart number in \"{p}\"")))?;
            Ok(FibreDoc {
                chart,
                coords: parse_list(coords, "fibre coordinate")?,
            })
        })
        .collect()
}

fn series_order(doc: &InputDocument, flags: &Flags, ncomp: usize) -> Result<MonomialOrder, CliError> {
    let weights = flags
        .order
        .as_deref()
        .map(|s| parse_list(s, "order weight"))
        .transpose()?;
    Ok(schema::order(doc, weights.as_deref(), ncomp)?)
}

fn exp_json(e: &Exponent) -> Value {
    json!({ "alpha": e.alpha, "j": e.component + 1 })
}

fn exps_json(es: &[Exponent]) -> Value {
    Value::Array(es.iter().map(exp_json).collect())
}

fn terms_json(s: &SeriesVector) -> Value {
    serde_json::to_value(schema::terms_of(s)).expect("terms serialize")
}

fn rats_json(v: &[Rational]) -> Value {
    serde_json::to_value(v.iter().cloned().map(Q).collect::<Vec<_>>()).expect("rationals serialize")
}

fn fibre_json(fibre: &[FibrePoint]) -> Value {
    Value::Array(
        fibre
            .iter()
            .map(|f| json!({ "chart": f.chart + 1, "coords": rats_json(&f.coords) }))
            .collect(),
    )
}

struct SeriesInputs {
    order: MonomialOrder,
    trunc: u32,
    n: usize,
    p: usize,
}

impl SeriesInputs {
    fn new(doc: &InputDocument, flags: &Flags) -> Result<Self, CliError> {
        let p = doc.p_or_default();
        Ok(SeriesInputs {
            order: series_order(doc, flags, p)?,
            trunc: required(flags.trunc, doc.trunc, "trunc")?,
            n: doc.n(),
            p,
        })
    }

    fn series(&self, terms: &[schema::Term]) -> SeriesVector {
        schema::series(terms, self.n, self.p, self.trunc)
    }

    fn list(&self, v: &Option<Vec<Vec<schema::Term>>>, name: &str) -> Result<Vec<SeriesVector>, CliError> {
        Ok(field(v, name)?.iter().map(|t| self.series(t)).collect())
    }

    fn header(&self, command: &str) -> Value {
        json!({
            "command": command,
            "trunc": self.trunc,
            "weights": self.order.weights(),
        })
    }
}

fn extend(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

struct RelationInputs {
    data: EquationData,
    order: MonomialOrder,
    point: Vec<Rational>,
    fibre: Vec<FibrePoint>,
}

impl RelationInputs {
    fn new(doc: &InputDocument, flags: &Flags) -> Result<Self, CliError> {
        let data = schema::equation_data(doc)?;
        let order = series_order(doc, flags, 1)?;
        let point = match &flags.point {
            Some(s) => parse_list(s, "point coordinate")?,
            None => field(&doc.point, "point")?.clone(),
        };
        if point.len() != doc.n() {
            return Err(usage(format!(
                "the point needs {} coordinates, found {}",
                doc.n(),
                point.len()
            )));
        }
        let point = schema::rationals(&point);
        let fibre_docs = match &flags.fibre {
            Some(s) => Some(parse_fibre(s)?),
            None => doc.fibre.clone(),
        };
        let fibre = match fibre_docs {
            Some(f) => {
                if f.iter().any(|p| p.chart == 0 || p.chart > data.charts().len()) {
                    return Err(usage("fibre chart numbers start at 1 and must name a chart"));
                }
                schema::fibre_points(&f)
            }
            None => data
                .identity_fibre(&point)
                .ok_or_else(|| usage("φ is not the identity, so a fibre must be supplied"))?,
        };
        Ok(RelationInputs {
            data,
            order,
            point,
            fibre,
        })
    }

    fn header(&self, command: &str) -> Value {
        json!({
            "command": command,
            "point": rats_json(&self.point),
            "fibre": fibre_json(&self.fibre),
            "s": self.fibre.len(),
            "weights": self.order.weights(),
        })
    }
}

fn scan_threads() -> Result<Option<usize>, CliError> {
    match std::env::var("HKIT_THREADS") {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(0) | Err(_) => Err(usage(format!("HKIT_THREADS must be a positive integer, found \"{s}\""))),
            Ok(t) => Ok(Some(t)),
        },
        Err(_) => Ok(None),
    }
}

/// Runs one subcommand on a parsed document.
pub fn execute(command: &Command, doc: &InputDocument) -> Result<Report, CliError> {
    let flags = command.flags();
    let name = command.name();
    match command {
        Command::Divide(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let f = s.series(field(&doc.dividend, "dividend")?);
            let divisors = s.list(&doc.divisors, "divisors")?;
            let res = hironaka_divide(&f, &divisors, &s.order)?;
            Ok(Report::ok(extend(
                s.header(name),
                json!({
                    "quotients": res.quotients.iter().map(terms_json).collect::<Vec<_>>(),
                    "remainder": terms_json(&res.remainder),
                    "initial_exponents": exps_json(&res.initial_exponents),
                }),
            )))
        }
        Command::Diagram(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let d = compute_diagram(&s.list(&doc.generators, "generators")?, &s.order, s.trunc)?;
            Ok(Report::ok(extend(
                s.header(name),
                json!({ "vertices": exps_json(d.vertices()), "certified_degree": d.certified_degree() }),
            )))
        }
        Command::Stdbasis(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let basis = standard_basis(&s.list(&doc.generators, "generators")?, &s.order, s.trunc)?;
            Ok(Report::ok(extend(
                s.header(name),
                json!({ "basis": basis.iter().map(terms_json).collect::<Vec<_>>() }),
            )))
        }
        Command::Member(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let g = s.series(field(&doc.element, "element")?);
            let m = membership_test(&g, &s.list(&doc.generators, "generators")?, &s.order, s.trunc)?;
            Ok(Report {
                value: extend(
                    s.header(name),
                    json!({ "member": m.member, "remainder": terms_json(&m.remainder) }),
                ),
                negative: !m.member,
            })
        }
        Command::Complement(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let r = required(flags.r, doc.r, "r")?;
            let c = complement_basis(&s.list(&doc.generators, "generators")?, &s.order, s.trunc, r)?;
            Ok(Report::ok(extend(
                s.header(name),
                json!({ "r": r, "complement": exps_json(&c) }),
            )))
        }
        Command::Lambda(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let lambda = artin_rees_lambda(&s.list(&doc.generators, "generators")?, &s.order, s.trunc)?;
            Ok(Report::ok(extend(s.header(name), json!({ "lambda": lambda }))))
        }
        Command::ChevalleyEstimate(_) => {
            let s = SeriesInputs::new(doc, flags)?;
            let l = required(flags.l, doc.l, "l")?;
            let gens = s.list(&doc.generators, "generators")?;
            let lambda = artin_rees_lambda(&gens, &s.order, s.trunc)?;
            let holds = check_chevalley_estimate(&gens, &s.order, s.trunc, l)?;
            Ok(Report {
                value: extend(s.header(name), json!({ "l": l, "lambda": lambda, "holds": holds })),
                negative: !holds,
            })
        }
        Command::Relations(_) => {
            let ri = RelationInputs::new(doc, flags)?;
            let r = required(flags.r, doc.r, "r")?;
            let sys = assemble_relation_system(&ri.data, &ri.point, &ri.fibre, r, &ri.order)?;
            let basis = relation_basis(&sys);
            let mut extra = json!({
                "r": r,
                "rows": sys.rows().len(),
                "columns": sys.columns().len(),
                "rho0": rank_rho0(&sys),
                "dim": basis.dim(),
                "initial_exponents": exps_json(&basis.initial_exponents()),
                "basis": basis.elements().iter().map(terms_json).collect::<Vec<_>>(),
            });
            if let Some(l) = flags.l.or(doc.l) {
                let projected = basis.projected_elements(l)?;
                extra["projection"] = json!({
                    "l": l,
                    "dim": projected.len(),
                    "basis": projected.iter().map(terms_json).collect::<Vec<_>>(),
                });
            }
            Ok(Report::ok(extend(ri.header(name), extra)))
        }
        Command::Chevalley(_) => {
            let ri = RelationInputs::new(doc, flags)?;
            let l = required(flags.l, doc.l, "l")?;
            let rmax = required(flags.rmax, doc.rmax, "rmax")?;
            let header = extend(ri.header(name), json!({ "l": l, "rmax": rmax, "window": [l, rmax] }));
            match chevalley_function(&ri.data, &ri.point, &ri.fibre, l, rmax, &ri.order) {
                Ok(rep) => {
                    let q = ri.data.q();
                    let n = ri.data.n();
                    let limit: Vec<Value> = rep
                        .limit
                        .basis()
                        .iter()
                        .map(|v| {
                            let s =
                                SeriesVector::from_terms(n, q, l, rep.columns.iter().cloned().zip(v.iter().cloned()))
                                    .expect("projected columns fit");
                            terms_json(&s)
                        })
                        .collect();
                    Ok(Report::ok(extend(
                        header,
                        json!({
                            "status": "stable over tested window",
                            "stabilization_r": rep.stabilization_r,
                            "dims": rep.dims,
                            "limit_basis": limit,
                        }),
                    )))
                }
                Err(CoreError::NoStabilization { dims, .. }) => Ok(Report {
                    value: extend(header, json!({ "status": "no stabilization", "dims": dims })),
                    negative: true,
                }),
                Err(e) => Err(e.into()),
            }
        }
        Command::Ranks(_) => {
            let ri = RelationInputs::new(doc, flags)?;
            let r = required(flags.r, doc.r, "r")?;
            let l = required(flags.l, doc.l, "l")?;
            let sys = assemble_relation_system(&ri.data, &ri.point, &ri.fibre, r, &ri.order)?;
            let rho0 = rank_rho0(&sys);
            let rho1 = rank_rho1(&sys, l)?;
            let low = count_up_to(ri.data.n(), l) * ri.data.q();
            Ok(Report::ok(extend(
                ri.header(name),
                json!({
                    "r": r,
                    "l": l,
                    "columns": sys.columns().len(),
                    "rho0": rho0,
                    "rho1": rho1,
                    "dim_projection": low + rho1 - rho0,
                }),
            )))
        }
        Command::SolveJet(_) => {
            let ri = RelationInputs::new(doc, flags)?;
            let r = required(flags.r, doc.r, "r")?;
            if !ri.data.has_rhs() {
                return Err(usage("solve-jet needs f on every chart"));
            }
            match formal_solve_at_point(&ri.data, &ri.point, &ri.fibre, r, &ri.order)? {
                FormalSolution::Solved(sol) => {
                    let expanded: Vec<_> = sol
                        .expanded
                        .iter()
                        .enumerate()
                        .flat_map(|(j, p)| schema::terms_of_polynomial(p, j + 1))
                        .collect();
                    Ok(Report::ok(extend(
                        ri.header(name),
                        json!({
                            "r": r,
                            "verdict": "SOLVED",
                            "P": expanded,
                            "P_centered": terms_json(&sol.centered),
                        }),
                    )))
                }
                FormalSolution::Unsat => Ok(Report {
                    value: extend(ri.header(name), json!({ "r": r, "verdict": "UNSAT" })),
                    negative: true,
                }),
            }
        }
        Command::Scan(_) => {
            let data = schema::equation_data(doc)?;
            let order = series_order(doc, flags, 1)?;
            let l = required(flags.l, doc.l, "l")?;
            let r = required(flags.r, doc.r, "r")?;
            let grid = match &flags.grid {
                Some(s) => {
                    let axes = s
                        .split(';')
                        .map(|a| parse_list(a, "grid value").map(|v| schema::rationals(&v)))
                        .collect::<Result<Vec<_>, _>>()?;
                    if axes.len() != doc.n() {
                        return Err(usage(format!("--grid needs {} axes separated by ';'", doc.n())));
                    }
                    hkit_core::Grid::from_axes(&axes)
                }
                None => schema::grid(field(&doc.grid, "grid")?, doc.n())?,
            };
            let fibres = schema::grid_fibres(doc.grid_fibres.as_deref().unwrap_or(&[]));
            let options = ScanOptions {
                l,
                r,
                threads: scan_threads()?,
            };
            let rep = diagram_scan(&data, &grid, &fibres, options, &order)?;
            let groups: Vec<Value> = rep
                .groups
                .iter()
                .map(|g| {
                    json!({
                        "points": g.points.iter().map(|p| rats_json(p)).collect::<Vec<_>>(),
                        "dim_l": g.dim_l,
                        "dim_r": g.dim_r,
                        "initial_exponents": exps_json(&g.initial_exponents),
                    })
                })
                .collect();
            let points: Vec<Value> = rep
                .points
                .iter()
                .map(|p| {
                    json!({
                        "point": rats_json(&p.point),
                        "s": p.s,
                        "dim_l": p.dim_l,
                        "dim_r": p.dim_r,
                        "rho0": p.rho0,
                        "initial_exponents": exps_json(&p.initial_exponents),
                        "candidate_r": p.candidate_r,
                    })
                })
                .collect();
            let skipped: Vec<Value> = rep
                .skipped
                .iter()
                .map(|s| json!({ "point": rats_json(&s.point), "reason": s.reason }))
                .collect();
            Ok(Report::ok(json!({
                "command": name,
                "l": l,
                "r": r,
                "weights": order.weights(),
                "groups": groups,
                "points": points,
                "skipped": skipped,
                "candidate_r": { "min": rep.candidate_min, "max": rep.candidate_max },
            })))
        }
        Command::Borel(_) => {
            let stratum = schema::stratum(field(&doc.stratum, "stratum")?)?;
            let m = *field(&doc.m, "m")?;
            let (field, generated) = match (&doc.field, &doc.function) {
                (Some(entries), None) => (schema::jet_field(entries, &stratum, m)?, false),
                (None, Some(g)) => (field_of_function(&schema::polynomial(g, doc.n()), &stratum, m)?, true),
                _ => return Err(usage("borel needs exactly one of \"field\" or \"function\"")),
            };
            let mut value = json!({ "command": name, "m": m });
            if generated {
                value["field"] = Value::Array(
                    field
                        .coefficients()
                        .map(|(a, p)| json!({ "alpha": a, "poly": schema::terms_of_polynomial(p, 1) }))
                        .collect(),
                );
            }
            let verdict = borel_check(&field);
            match &verdict {
                BorelVerdict::Pass => value["verdict"] = json!("PASS"),
                BorelVerdict::Fail { alpha, direction } => {
                    value["verdict"] = json!("FAIL");
                    value["failure"] = json!({ "alpha": alpha, "direction": direction + 1 });
                }
            }
            Ok(Report {
                value,
                negative: !verdict.passed(),
            })
        }
    }
}
