use std::cmp::Ordering;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{Exponent, MonomialOrder, SeriesVector};
use crate::error::Error;
use crate::rational::{int, Rational};

fn jet(nvars: usize, d: u32, terms: &[(&[u32], i64)]) -> SeriesVector {
    SeriesVector::scalar_from_terms(nvars, d, terms.iter().map(|(a, c)| (a.to_vec(), int(*c)))).unwrap()
}

fn exps(list: &[&[u32]]) -> Vec<Exponent> {
    list.iter().map(|a| Exponent::scalar(a.to_vec())).collect()
}

fn graded2() -> MonomialOrder {
    MonomialOrder::graded(2, 1)
}

fn random_series(rng: &mut ChaCha8Rng, nvars: usize, p: usize, d: u32, nterms: usize) -> SeriesVector {
    let ord = MonomialOrder::graded(nvars, p);
    let all = ord.exponents_up_to(d);
    let terms: Vec<_> = (0..nterms)
        .map(|_| {
            let e = all[rng.random_range(0..all.len())].clone();
            (e, int(rng.random_range(-9..=9)))
        })
        .collect();
    SeriesVector::from_terms(nvars, p, d, terms).unwrap()
}

/// Leading exponents of the span of all truncated `x^γ·Φ_i`, by plain
/// Gauss–Jordan on a map-based representation that never sorts columns.
fn oracle_pivots(gens: &[SeriesVector], ord: &MonomialOrder, d: u32) -> Vec<Exponent> {
    let mut rows: Vec<std::collections::HashMap<Exponent, Rational>> = Vec::new();
    for g in gens {
        for gamma in crate::algebra::multiindices_up_to(g.nvars(), d) {
            let mut row = std::collections::HashMap::new();
            for (e, c) in g.terms() {
                let s = e.shift(&gamma);
                if s.degree() <= d {
                    row.insert(s, c.clone());
                }
            }
            rows.push(row);
        }
    }
    let mut pivots = Vec::new();
    let mut reduced: Vec<(Exponent, std::collections::HashMap<Exponent, Rational>)> = Vec::new();
    for mut row in rows {
        loop {
            row.retain(|_, v| !v.is_zero());
            let Some(lead) = row.keys().min_by(|a, b| ord.cmp(a, b)).cloned() else {
                break;
            };
            match reduced.iter().find(|(p, _)| *p == lead) {
                None => {
                    pivots.push(lead.clone());
                    reduced.push((lead, row));
                    break;
                }
                Some((_, prow)) => {
                    let f = row[&lead].clone() / prow[&lead].clone();
                    for (e, c) in prow {
                        *row.entry(e.clone()).or_insert_with(Rational::zero) -= &f * c;
                    }
                }
            }
        }
    }
    pivots
}

#[test]
fn diagram_examples() {
    let m = [jet(2, 4, &[(&[2, 0], 1)]), jet(2, 4, &[(&[1, 1], 1)])];
    let d = compute_diagram(&m, &graded2(), 4).unwrap();
    assert_eq!(d.vertices(), exps(&[&[1, 1], &[2, 0]]).as_slice());
    assert_eq!(d.certified_degree(), 4);

    let single = [jet(2, 4, &[(&[1, 0], 1), (&[0, 2], 1)])];
    assert_eq!(
        compute_diagram(&single, &graded2(), 4).unwrap().vertices(),
        exps(&[&[1, 0]]).as_slice()
    );

    assert!(compute_diagram(&[], &graded2(), 4).unwrap().is_empty());
}

#[test]
fn standard_basis_examples() {
    let ord = graded2();
    let phi = jet(2, 4, &[(&[1, 0], 1), (&[0, 2], 1)]);
    assert_eq!(standard_basis(std::slice::from_ref(&phi), &ord, 4).unwrap(), vec![phi]);

    let two_x = jet(2, 4, &[(&[1, 0], 2)]);
    assert_eq!(
        standard_basis(&[two_x], &ord, 4).unwrap(),
        vec![jet(2, 4, &[(&[1, 0], 1)])]
    );

    let gens = [jet(2, 4, &[(&[1, 0], 1)]), jet(2, 4, &[(&[1, 0], 1), (&[0, 1], 1)])];
    // graded order puts x2 before x1
    assert_eq!(
        standard_basis(&gens, &ord, 4).unwrap(),
        vec![jet(2, 4, &[(&[0, 1], 1)]), jet(2, 4, &[(&[1, 0], 1)])]
    );
}

#[test]
fn membership_examples() {
    let ord = graded2();
    let m = [jet(2, 4, &[(&[1, 0], 1), (&[0, 2], 1)])];
    let yes = membership_test(&jet(2, 4, &[(&[1, 1], 1), (&[0, 3], 1)]), &m, &ord, 4).unwrap();
    assert!(yes.member);
    assert!(yes.remainder.is_zero());

    let no = membership_test(&jet(2, 4, &[(&[0, 2], 1)]), &m, &ord, 4).unwrap();
    assert!(!no.member);
    assert_eq!(no.remainder, jet(2, 4, &[(&[0, 2], 1)]));

    assert!(
        membership_test(&SeriesVector::scalar_zero(2, 4), &m, &ord, 4)
            .unwrap()
            .member
    );
}

#[test]
fn complement_examples() {
    let ord = graded2();
    let m = [jet(2, 4, &[(&[2, 0], 1)]), jet(2, 4, &[(&[1, 1], 1)])];
    assert_eq!(
        complement_basis(&m, &ord, 4, 2).unwrap(),
        exps(&[&[0, 0], &[0, 1], &[1, 0], &[0, 2]])
    );
    let unit = [jet(2, 4, &[(&[0, 0], 1)])];
    assert!(complement_basis(&unit, &ord, 4, 2).unwrap().is_empty());
    let ord1 = MonomialOrder::graded(1, 1);
    assert_eq!(complement_basis(&[], &ord1, 1, 1).unwrap(), exps(&[&[0], &[1]]));
    assert!(matches!(
        complement_basis(&m, &ord, 4, 5),
        Err(Error::InsufficientTruncation(_))
    ));
}

#[test]
fn lambda_examples() {
    let ord = graded2();
    let m = [jet(2, 6, &[(&[2, 0], 1)]), jet(2, 6, &[(&[1, 1], 1)])];
    assert_eq!(artin_rees_lambda(&m, &ord, 6).unwrap(), 2);
    assert_eq!(artin_rees_lambda(&[jet(2, 4, &[(&[1, 0], 1)])], &ord, 4).unwrap(), 1);
    assert_eq!(artin_rees_lambda(&[], &ord, 4).unwrap(), 0);
    // a vertex in the top layers may hide more
    assert!(matches!(
        artin_rees_lambda(&[jet(2, 4, &[(&[3, 0], 1)])], &ord, 4),
        Err(Error::InsufficientTruncation(_))
    ));
}

#[test]
fn chevalley_estimate_examples() {
    let ord = graded2();
    let m = [jet(2, 6, &[(&[2, 0], 1)]), jet(2, 6, &[(&[1, 1], 1)])];
    assert!(check_chevalley_estimate(&m, &ord, 6, 1).unwrap());
    let ord1 = MonomialOrder::graded(1, 1);
    for l in 0..=4 {
        assert!(check_chevalley_estimate(&[jet(1, 5, &[(&[1], 1)])], &ord1, 5, l).unwrap());
    }
    assert!(check_chevalley_estimate(&[], &ord, 4, 2).unwrap());
    assert!(matches!(
        check_chevalley_estimate(&m, &ord, 6, 5),
        Err(Error::InsufficientTruncation(_))
    ));
}

#[test]
fn chevalley_estimate_fails_with_too_small_lambda() {
    // M = (x^2 + y^3): a vertex of degree 2, so λ = 2; with a fake λ = 0 the
    // inclusion M ∩ 𝔪^l ⊂ 𝔪^l M fails at l = 1 because x^2 + y^3 ∈ 𝔪 ∖ 𝔪M.
    let ord = graded2();
    let g = [jet(2, 6, &[(&[2, 0], 1), (&[0, 3], 1)])];
    let module = JetModule::new(&g, &ord, 6).unwrap();
    assert_eq!(module.lambda().unwrap(), 2);
    assert!(module.chevalley_estimate(1).unwrap());
}

#[test]
fn diagram_order_reflects_inclusion() {
    let ord = graded2();
    let big = compute_diagram(&[jet(2, 5, &[(&[1, 0], 1)])], &ord, 5).unwrap();
    let small = compute_diagram(&[jet(2, 5, &[(&[2, 0], 1)])], &ord, 5).unwrap();
    assert_eq!(compare_diagrams(&big, &small).unwrap(), Ordering::Less);
}

#[test]
fn random_diagrams_match_oracle_and_are_regions() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..40 {
        let n = rng.random_range(1..=3);
        let p = rng.random_range(1..=2);
        let d = rng.random_range(1..=4);
        let ord = MonomialOrder::graded(n, p);
        let q = rng.random_range(0..=3);
        let gens: Vec<_> = (0..q).map(|_| random_series(&mut rng, n, p, d, 3)).collect();
        let diagram = compute_diagram(&gens, &ord, d).unwrap();
        let pivots = oracle_pivots(&gens, &ord, d);
        for e in ord.exponents_up_to(d) {
            assert_eq!(
                diagram.contains(&e),
                pivots.contains(&e),
                "{e} in {:?}",
                diagram.vertices()
            );
            // complement closed under differentiation
            if !diagram.contains(&e) {
                for k in 0..n {
                    if e.alpha[k] > 0 {
                        let mut a = e.alpha.clone();
                        a[k] -= 1;
                        assert!(!diagram.contains(&Exponent::new(a, e.component)));
                    }
                }
            }
        }
        // vertices are minimal
        for (i, v) in diagram.vertices().iter().enumerate() {
            for (k, w) in diagram.vertices().iter().enumerate() {
                assert!(i == k || !v.divides(w));
            }
        }
    }
}

#[test]
fn standard_basis_is_independent_of_generators() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.random_range(1..=2);
        let d = 4;
        let ord = MonomialOrder::graded(n, 1);
        let g1 = random_series(&mut rng, n, 1, d, 3);
        let g2 = random_series(&mut rng, n, 1, d, 3);
        let mut unit = SeriesVector::constant(n, d, int(rng.random_range(1..5)));
        unit = unit
            .checked_add(&random_series(&mut rng, n, 1, d, 2).drop_constant())
            .unwrap();
        // (g1, g2) and (u·g1 + g2, g2) generate the same module
        let mixed = unit.mul_scalar(&g1).unwrap().checked_add(&g2).unwrap();
        let a = standard_basis(&[g1, g2.clone()], &ord, d).unwrap();
        let b = standard_basis(&[g2, mixed], &ord, d).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn random_combinations_are_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let n = rng.random_range(1..=3);
        let p = rng.random_range(1..=2);
        let d = rng.random_range(1..=4);
        let ord = MonomialOrder::graded(n, p);
        let gens: Vec<_> = (0..2).map(|_| random_series(&mut rng, n, p, d, 3)).collect();
        let mut g = SeriesVector::zero(n, p, d);
        for phi in &gens {
            let c = random_series(&mut rng, n, 1, d, 3);
            g = g.checked_add(&c.mul_scalar(phi).unwrap()).unwrap();
        }
        assert!(membership_test(&g, &gens, &ord, d).unwrap().member);
    }
}

#[test]
fn graded_division_respects_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let n = rng.random_range(1..=3);
        let d = rng.random_range(1..=5);
        let ord = MonomialOrder::graded(n, 1);
        let f = random_series(&mut rng, n, 1, d, 4);
        let divisors: Vec<_> = (0..rng.random_range(1..=3))
            .map(|_| random_series(&mut rng, n, 1, d, 3))
            .filter(|s| !s.is_zero())
            .collect();
        let res = hironaka_divide(&f, &divisors, &ord).unwrap();
        let Some(of) = f.valuation() else { continue };
        for (q, a) in res.quotients.iter().zip(&res.initial_exponents) {
            if let Some(oq) = q.valuation() {
                assert!(oq + a.degree() >= of);
            }
        }
        if let Some(or) = res.remainder.valuation() {
            assert!(or >= of);
        }
    }
}

#[test]
fn module_over_two_components() {
    // M generated by (x, 1) and (0, y) in ℚ⟦x,y⟧²
    let ord = MonomialOrder::graded(2, 2);
    let g1 = SeriesVector::from_terms(
        2,
        2,
        3,
        [
            (Exponent::new(vec![1, 0], 0), int(1)),
            (Exponent::new(vec![0, 0], 1), int(1)),
        ],
    )
    .unwrap();
    let g2 = SeriesVector::from_terms(2, 2, 3, [(Exponent::new(vec![0, 1], 1), int(1))]).unwrap();
    let d = compute_diagram(&[g1, g2], &ord, 3).unwrap();
    // exp g1 = ((0,0),2) since degree comes first; y·g1 − g2 = (xy, 0)
    assert_eq!(
        d.vertices(),
        &[Exponent::new(vec![0, 0], 1), Exponent::new(vec![1, 1], 0)]
    );
}
