use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::rational::{int, Rational};

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, rank_cap: Option<usize>) -> RationalMatrix {
    let dense = |rng: &mut ChaCha8Rng, r: usize, c: usize| -> Vec<Vec<Rational>> {
        (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        if rng.random_bool(0.3) {
                            Rational::zero()
                        } else {
                            Rational::new(rng.random_range(-9..=9).into(), rng.random_range(1..=4).into())
                        }
                    })
                    .collect()
            })
            .collect()
    };
    match rank_cap {
        None => RationalMatrix::from_rows(cols, dense(rng, rows, cols)).unwrap(),
        Some(k) => {
            // product of a rows x k and a k x cols matrix
            let a = dense(rng, rows, k);
            let b = dense(rng, k, cols);
            let prod = a
                .iter()
                .map(|ar| {
                    (0..cols)
                        .map(|j| ar.iter().zip(&b).map(|(x, br)| x * &br[j]).sum())
                        .collect()
                })
                .collect();
            RationalMatrix::from_rows(cols, prod).unwrap()
        }
    }
}

/// Textbook Gauss–Jordan over ℚ, used as an oracle.
fn naive_rref(m: &RationalMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.ncols() {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rational::one() / a[r][c].clone();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pr) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

#[test]
fn rref_examples() {
    let (r, p) = rref(&RationalMatrix::from_i64(&[&[2, 4], &[1, 2]]));
    assert_eq!(r, RationalMatrix::from_i64(&[&[1, 2], &[0, 0]]));
    assert_eq!(p, vec![0]);

    let id = RationalMatrix::identity(4);
    let (r, p) = rref(&id);
    assert_eq!(r, id);
    assert_eq!(p, vec![0, 1, 2, 3]);

    let z = RationalMatrix::zeros(3, 2);
    let (r, p) = rref(&z);
    assert_eq!(r, z);
    assert!(p.is_empty());
}

#[test]
fn nullspace_and_projection_examples() {
    let n = nullspace(&RationalMatrix::from_i64(&[&[1, 1]]));
    let expected = Subspace::span(2, &[vec![int(-1), int(1)]]).unwrap();
    assert!(n.equals(&expected).unwrap());

    let s = Subspace::span(3, &[vec![int(1), int(0), int(2)]]).unwrap();
    let p = s.project(&[0, 1]).unwrap();
    assert_eq!(p, Subspace::span(2, &[vec![int(1), int(0)]]).unwrap());
}

#[test]
fn rref_matches_naive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let rows = rng.random_range(1..8);
        let cols = rng.random_range(1..8);
        let cap = if rng.random_bool(0.5) {
            Some(rng.random_range(1..4))
        } else {
            None
        };
        let m = random_matrix(&mut rng, rows, cols, cap);
        let (r, p) = rref(&m);
        let (oracle, op) = naive_rref(&m);
        assert_eq!(p, op);
        for (i, row) in oracle.iter().enumerate() {
            assert_eq!(r.row(i), row.as_slice());
        }
    }
}

#[test]
fn rank_nullity_on_random_6x8() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..200 {
        let cap = if k % 3 == 0 { Some(rng.random_range(1..6)) } else { None };
        let m = random_matrix(&mut rng, 6, 8, cap);
        let n = nullspace(&m);
        assert_eq!(rank(&m) + n.dim(), 8);
        assert_eq!(rank(&m), rank(&m.transpose()));
        for v in n.basis() {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }
}

#[test]
fn subspace_equality_ignores_generating_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let m = random_matrix(&mut rng, 4, 6, Some(3));
        let s1 = Subspace::span(6, &m.rows().map(<[Rational]>::to_vec).collect::<Vec<_>>()).unwrap();
        // random invertible recombination plus a redundant sum
        let rows: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
        let mut mixed = Vec::new();
        for i in 0..rows.len() {
            let j = (i + 1) % rows.len();
            let c = int(rng.random_range(1..5));
            mixed.push(
                rows[i]
                    .iter()
                    .zip(&rows[j])
                    .map(|(a, b)| a + &c * b)
                    .collect::<Vec<_>>(),
            );
        }
        mixed.push(rows.iter().fold(vec![Rational::zero(); 6], |acc, r| {
            acc.iter().zip(r).map(|(a, b)| a + b).collect()
        }));
        let s2 = Subspace::span(6, &mixed).unwrap();
        // the recombination is invertible unless rows.len() is even and every c = 1
        // produced a dependency; containment one way always holds
        assert!(s2.is_subspace_of(&s1).unwrap());
        if s2.dim() == s1.dim() {
            assert!(s1.equals(&s2).unwrap());
            assert!(s2.equals(&s1).unwrap());
        }
        assert!(s1.equals(&s1).unwrap());
    }
}

#[test]
fn solve_returns_canonical_solution_or_none() {
    let m = RationalMatrix::from_i64(&[&[1, 1, 0], &[0, 0, 1]]);
    let w = solve(&m, &[int(3), int(2)]).unwrap().unwrap();
    assert_eq!(w, vec![int(3), int(0), int(2)]);

    let inconsistent = RationalMatrix::from_i64(&[&[1, 1], &[2, 2]]);
    assert_eq!(solve(&inconsistent, &[int(1), int(3)]).unwrap(), None);
}

#[test]
fn dimension_errors() {
    let s = Subspace::full(3);
    assert!(s.contains(&[int(1)]).is_err());
    assert!(s.project(&[5]).is_err());
    assert!(s.equals(&Subspace::full(2)).is_err());
    assert!(RationalMatrix::identity(2).mul_vec(&[int(1)]).is_err());
}
