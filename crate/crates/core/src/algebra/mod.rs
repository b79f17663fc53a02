//! Exponents, monomial orders, truncated series vectors, exact polynomials
//! and jet arithmetic (Taylor shift, composition).

mod exponent;
mod jet;
mod order;
mod polynomial;
mod series;

pub use exponent::{count_up_to, degree, divides, multiindices_of_degree, multiindices_up_to, Exponent};
pub use jet::{jet_compose, JetPowers};
pub use order::{MonomialOrder, OrderKey};
pub use polynomial::Polynomial;
pub use series::SeriesVector;
