//! Deterministic workloads shared by the benchmarks.

use hkit_core::relations::{Chart, EquationData};
use hkit_core::{Exponent, MonomialOrder, Polynomial, Rational, SeriesVector};

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Small linear congruential generator so workloads never depend on a crate version.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self, bound: u64) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.0 >> 33) % bound
    }

    fn coeff(&mut self) -> Rational {
        q(self.next(19) as i64 - 9)
    }
}

/// Dense dividend and `k` sparse divisors in `n` variables truncated at `degree`.
pub fn division_workload(
    n: usize,
    k: usize,
    degree: u32,
    seed: u64,
) -> (SeriesVector, Vec<SeriesVector>, MonomialOrder) {
    let mut rng = Lcg(seed);
    let exps = hkit_core::algebra::multiindices_up_to(n, degree);
    let f = SeriesVector::from_terms(
        n,
        1,
        degree,
        exps.iter().map(|a| (Exponent::scalar(a.clone()), rng.coeff())),
    )
    .unwrap();
    let divisors = (0..k)
        .map(|_| {
            let terms: Vec<_> = (0..4)
                .map(|_| {
                    let a = exps[rng.next(exps.len() as u64) as usize].clone();
                    (Exponent::scalar(a), rng.coeff())
                })
                .collect();
            SeriesVector::from_terms(n, 1, degree, terms).unwrap()
        })
        .collect();
    (f, divisors, MonomialOrder::graded(n, 1))
}

/// `A(y) = [y1, -y2]` with identity `φ`.
pub fn two_term_equation() -> EquationData {
    let a = vec![vec![Polynomial::var(2, 0), Polynomial::var(2, 1).scale(&q(-1))]];
    let phi = vec![Polynomial::var(2, 0), Polynomial::var(2, 1)];
    EquationData::single(Chart::new(2, a, phi, None).unwrap())
}

/// `A(x) = [x]` with identity `φ`.
pub fn monomial_equation() -> EquationData {
    let a = vec![vec![Polynomial::var(1, 0)]];
    EquationData::single(Chart::new(1, a, vec![Polynomial::var(1, 0)], None).unwrap())
}
