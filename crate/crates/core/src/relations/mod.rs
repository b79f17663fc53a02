//! Modules of relations of `A(x)·g(φ(x)) = f(x)` at a point `b`.
//!
//! `R_r(b)` is the set of `W ∈ ℚ⟦y⟧^q` with
//! `T^r_aA(x)·W(ṪT^r_aφ(x)) ≡ 0 mod (x)^{r+1}` at every supplied fibre point
//! `a` over `b`. Only the coefficients of `W` with `|β| ≤ r` enter, so
//! `π_r(R_r(b))` is the nullspace of a finite rational system.

mod basis;
mod chevalley;
mod data;
mod scan;
mod solve;
mod system;

pub use basis::{project_relations, relation_basis, RelationBasis};
pub use chevalley::{chevalley_function, relation_projections, ChevalleyReport};
pub use data::{Chart, EquationData, FibrePoint};
pub use scan::{diagram_scan, Grid, PointResult, ScanGroup, ScanOptions, ScanReport, SkippedPoint};
pub use solve::{defect_is_flat, formal_solve_at_point, jet_rhs, FormalSolution, JetSolution};
pub use system::{assemble_relation_system, rank_rho0, rank_rho1, RelationSystem, RowLabel};
