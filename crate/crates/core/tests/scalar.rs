use chordal::scalar::*;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

type Q = BigRational;

#[test]
fn parse_and_format_round_trip() {
    let x: Q = parse_scalar("-6/8").unwrap();
    assert_eq!(format_scalar(&x), "-3/4");
    let y: Q = parse_scalar("5").unwrap();
    assert_eq!(format_scalar(&y), "5");
    assert!(parse_scalar::<Q>("1/0").is_none());
}

#[test]
fn lcm_and_primes() {
    let xs: Vec<Q> = vec![Q::from_ratio(1, 4), Q::from_ratio(1, 6)];
    assert_eq!(lcm_of_denominators(&xs), BigInt::from(12));
    assert_eq!(largest_prime_factor(&BigInt::from(2 * 2 * 3 * 7)), 7);
    assert_eq!(largest_prime_factor(&BigInt::from(1)), 1);
}

#[test]
fn small_ratio_backend() {
    let a = Ratio::<i64>::from_ratio(2, 6);
    assert_eq!(a.denom_big(), BigInt::from(3));
    assert!(!a.is_integer());
}
