use chordal::linear::*;
use chordal::{Rational, Scalar};
use num_bigint::BigInt;
use num_traits::{One, Signed};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn lincomb_basics() {
    let mut x: LinComb<u32, Rational> = LinComb::single(1, q(1, 4));
    x.add_term(2, q(1, 6));
    assert_eq!(x.denominator(), BigInt::from(12));
    x.add_term(1, q(-1, 4));
    assert_eq!(x.len(), 1);
    assert!(LinComb::<u32, Rational>::zero().denominator().is_one());
}

#[test]
fn reducer_keeps_smallest_columns() {
    let mut r = Reducer::<Rational>::new();
    r.insert(&[(0, q(1, 1)), (2, q(-1, 1))]);
    r.insert(&[(1, q(1, 1)), (2, q(1, 1))]);
    assert!(r.is_pivot(2));
    assert!(r.is_pivot(1));
    let red = r.reduce(&[(2, q(1, 1))]);
    assert_eq!(red, vec![(0, q(1, 1))]);
}

#[test]
fn solve_sets_free_variables_to_zero() {
    let cols = vec![vec![(0, q(1, 1))], vec![(0, q(2, 1))], vec![(1, q(1, 1))]];
    let x = solve_columns(&cols, &[(0, q(4, 1)), (1, q(-1, 1))]).unwrap();
    assert_eq!(x, vec![q(4, 1), q(0, 1), q(-1, 1)]);
    assert!(solve_columns(&cols, &[(2, q(1, 1))]).is_err());
}

#[test]
fn kernel_of_columns() {
    let cols = vec![vec![(0, q(1, 1))], vec![(0, q(2, 1))]];
    let k = kernel_columns(&cols);
    assert_eq!(k, vec![vec![(0, q(-2, 1)), (1, q(1, 1))]]);
}

#[test]
fn dn_values() {
    assert_eq!(dn(1).unwrap(), BigInt::from(2));
    assert_eq!(dn(2).unwrap(), BigInt::from(96));
    assert_eq!(dn(3).unwrap(), BigInt::from(497664));
    assert!(dn(0).is_err());
}

#[test]
fn dn_divisibility_examples() {
    assert!(check_dn_divisibility(1, 1).unwrap().a);
    let r = check_dn_divisibility(2, 2).unwrap();
    assert!(r.b);
    assert_eq!(r.c, Some(true));
    assert!(check_dn_part_c(1, 3).is_err());
}

#[test]
fn snf_small() {
    let id = int_matrix(&[&[1, 0], &[0, 1]]);
    assert_eq!(smith_normal_form(&id, 2).diagonal, vec![BigInt::from(1), BigInt::from(1)]);
    let a = int_matrix(&[&[2, 0], &[0, 3]]);
    let s = smith_normal_form(&a, 2);
    assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    let uav = mat_mul(&mat_mul(&s.u, &a), &s.v);
    assert_eq!(uav, int_matrix(&[&[1, 0], &[0, 6]]));
}

#[test]
fn lattice_denominators() {
    let l = Lattice::from_generators(&int_matrix(&[&[2, 0], &[1, 1]]), 2);
    assert_eq!(l.rank(), 2);
    assert_eq!(l.denominator(&[q(1, 1), q(0, 1)]), Some(BigInt::from(2)));
    assert_eq!(l.denominator(&[q(1, 1), q(1, 1)]), Some(BigInt::from(1)));
    let line = Lattice::from_generators(&int_matrix(&[&[2, 4]]), 2);
    assert_eq!(line.denominator(&[q(1, 1), q(2, 1)]), Some(BigInt::from(2)));
    assert_eq!(line.denominator(&[q(1, 1), q(1, 1)]), None);
}

#[test]
fn left_kernel() {
    // x M = 0 for M = [[1],[1]] -> kernel spanned by (1,-1)
    let k = integer_left_kernel(&int_matrix(&[&[1], &[1]]), 1);
    assert_eq!(k, int_matrix(&[&[1, -1]]));
    let k = integer_left_kernel(&int_matrix(&[&[2], &[3]]), 1);
    assert_eq!(k.len(), 1);
    assert_eq!(k[0][0].abs(), BigInt::from(3));
}
