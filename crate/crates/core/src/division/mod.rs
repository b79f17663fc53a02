//! Hironaka's formal division on jets, diagrams of initial exponents,
//! standard bases, membership, complements and the Artin–Rees / Chevalley
//! estimates.

mod diagram;
mod divide;
mod module;

pub use diagram::{compare_diagrams, Diagram};
pub use divide::{hironaka_divide, DivisionResult};
pub use module::{
    artin_rees_lambda, check_chevalley_estimate, complement_basis, compute_diagram, membership_test, standard_basis,
    JetModule, Membership,
};

#[cfg(test)]
mod tests;
