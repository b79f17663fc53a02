//! Exact formal division in modules of truncated multivariate power series,
//! diagrams of initial exponents and standard bases, together with the
//! relation-module calculus for equations `A(x)·g(φ(x)) = f(x)` and a
//! symbolic compatibility check for jet fields on affine strata.
//!
//! All arithmetic is over ℚ with arbitrary precision.

pub mod algebra;
pub mod division;
mod error;
pub mod linalg;
pub mod rational;
pub mod relations;
pub mod whitney;

pub use algebra::{jet_compose, Exponent, MonomialOrder, Polynomial, SeriesVector};
pub use division::{
    artin_rees_lambda, check_chevalley_estimate, compare_diagrams, complement_basis, compute_diagram, hironaka_divide,
    membership_test, standard_basis, Diagram, DivisionResult, Membership,
};
pub use error::{Error, Result};
pub use linalg::{RationalMatrix, Subspace};
pub use rational::{format_rational, parse_rational, Rational};
pub use relations::{
    assemble_relation_system, chevalley_function, diagram_scan, formal_solve_at_point, project_relations, rank_rho0,
    rank_rho1, relation_basis, Chart, ChevalleyReport, EquationData, FibrePoint, FormalSolution, Grid, RelationBasis,
    RelationSystem, ScanOptions, ScanReport,
};
pub use whitney::{borel_check, field_of_function, AffineStratum, BorelVerdict, JetField};
