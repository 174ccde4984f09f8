use chordal::scalar::Scalar;
use chordal::series::{bch_dynkin, bch_free_direct, FreeAssoc, GradedAlgebra};
use chordal::{Rational, SmallRational};
use num_bigint::BigInt;

#[test]
fn dynkin_matches_direct_and_denominators() {
    let dyn_ = bch_dynkin::<Rational>(2, 5);
    let direct = bch_free_direct::<Rational>(2, 5).unwrap();
    assert_eq!(dyn_, direct);
    for (k, f) in &dyn_ {
        let fk: BigInt = (1..=*k as u64).product::<u64>().into();
        let bound = &fk * &fk;
        assert_eq!(&bound % f.denominator(), BigInt::from(0), "k={k}");
    }
    let half_bracket = FreeAssoc::<Rational>::letter(0)
        .bracket(&FreeAssoc::letter(1))
        .times(&Rational::from_ratio(1, 2));
    assert_eq!(dyn_[&2], half_bracket);
}

#[test]
fn small_rationals_work_too() {
    let a = bch_dynkin::<SmallRational>(2, 3);
    let b = bch_free_direct::<SmallRational>(2, 3).unwrap();
    assert_eq!(a, b);
}
