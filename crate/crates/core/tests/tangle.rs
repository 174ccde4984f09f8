use chordal::associator::{solve_associator, AssociatorState, SolveOptions};
use chordal::chi::p_normal_form;
use chordal::diagram::Graph;
use chordal::linear::dn;
use chordal::relations::IntegralQuotient;
use chordal::series::{series_log, GradedSeries};
use chordal::tangle::*;
use chordal::{Element, Error, Rational, Support};
use num_integer::Integer;
use num_traits::Zero;
use once_cell::sync::Lazy;
use proptest::prelude::*;

static PHI: Lazy<AssociatorState> = Lazy::new(|| {
    solve_associator(&SolveOptions {
        max_degree: 4,
        audit: false,
    })
    .unwrap()
});

fn ctx(n: usize) -> ZhatContext {
    ZhatContext::new(&PHI, n).unwrap()
}

fn word(s: &str) -> QTangleWord {
    s.parse().unwrap()
}

fn knot_form(t: &Tangle) -> chordal::bspace::SymComb {
    p_normal_form(&t.cut().unwrap()).unwrap()
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

#[test]
fn words_parse_and_print() {
    let w: Word = "(+(-+))".parse().unwrap();
    assert_eq!(w.len(), 3);
    assert_eq!(w.to_string(), "(+(-+))");
    assert_eq!("".parse::<Word>().unwrap(), Word::Empty);
    assert!("(+-+)".parse::<Word>().is_err());
    assert!("(+".parse::<Word>().is_err());
    let s: SliceExpr = "(I- A[-|(++)|+]R<1>)".parse().unwrap();
    assert_eq!(s.to_string(), "(IR<0> A[-|(++)|+]R<1>)");
    assert!("Z+".parse::<SliceExpr>().is_err());
    assert!("A[+|+]".parse::<SliceExpr>().is_err());
    assert!("A[+||+]".parse::<SliceExpr>().is_err());
}

fn arb_word() -> impl Strategy<Value = Word> {
    let leaf = prop_oneof![Just(Word::Leaf(Sign::Plus)), Just(Word::Leaf(Sign::Minus))];
    leaf.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Word::tensor(&a, &b))
    })
}

proptest! {
    #[test]
    fn word_round_trip(w in arb_word()) {
        let back: Word = w.to_string().parse().unwrap();
        prop_assert_eq!(&back, &w);
        prop_assert_eq!(back.flat().len(), w.len());
    }

    #[test]
    fn identity_is_a_unit_for_composition(w in arb_word()) {
        let c = ctx(2);
        let id = Tangle::identity(&w, 2);
        let x = c.zhat(&word("X+")).unwrap();
        let wide = x.tensor(&id).unwrap();
        let idw = Tangle::identity(&wide.shape.top, 2);
        prop_assert_eq!(&idw.compose(&wide).unwrap(), &wide);
        prop_assert_eq!(&wide.compose(&Tangle::identity(&wide.shape.bottom, 2)).unwrap(), &wide);
    }
}

#[test]
fn trivial_word_is_one() {
    let t = ctx(3).zhat(&word("(I I)")).unwrap();
    assert_eq!(t.value, Element::one(Support::strings(2)));
}

#[test]
fn mismatched_slices_do_not_compose() {
    let err = ctx(2).zhat(&word("X+\nY+")).unwrap_err();
    assert!(matches!(err, Error::Composition(_)));
}

#[test]
fn crossings_cancel() {
    let c = ctx(4);
    let t = c.zhat(&word("X+\nX-")).unwrap();
    assert_eq!(t.value, Element::one(Support::strings(2)));
    assert!(t.shape.is_string_link());
    let t = c.zhat(&word("X-\nX+")).unwrap();
    assert_eq!(t.value, Element::one(Support::strings(2)));
}

#[test]
fn crossing_value() {
    // exp(r/2) through degree 2: 1 + r/2 + r^2/8
    let t = ctx(2).zhat(&word("X+")).unwrap();
    let r = Graph::chords(&[(0, 1)]);
    let r2 = Graph::chords(&[(0, 1), (0, 1)]).sort_legs_by_anchor();
    let mut want = Element::one(Support::strings(2));
    want.push(&r, q(1, 2)).unwrap();
    want.push(&r2, q(1, 8)).unwrap();
    assert_eq!(t.value, want);
}

#[test]
fn reversing_a_crossing_strand() {
    let c = ctx(3);
    let plus = c.zhat(&word("X+R<0>")).unwrap();
    let base = c.zhat(&word("X+")).unwrap();
    assert_eq!(plus.value, reverse_element(&base.value, 0).unwrap());
    assert_eq!(plus.shape.crossings[0].sign, -1);
    assert_eq!(plus.shape.top.to_string(), "(-+)");
    // a diagram with n legs on the reversed strand picks up (-1)^n
    let r = Graph::chords(&[(0, 1)]);
    let chord = Element::from_canonical(Support::strings(2), chordal::linear::LinComb::basis(r.clone()));
    let flipped = reverse_element(&chord, 0).unwrap();
    assert_eq!(flipped.terms.coeff(&r), q(-1, 1));
    assert_eq!(reverse_element(&flipped, 0).unwrap(), chord);
}

#[test]
fn nu_basics() {
    let c = ctx(4);
    assert_eq!(c.nu.part(0), Element::one(Support::strings(1)));
    assert!(c.nu.part(1).is_zero());
    // group-like: log nu is primitive
    let l = series_log(&GradedSeries::new(c.nu.clone(), 4)).unwrap();
    for d in 1..=4 {
        let nf = p_normal_form(&l.part(d)).unwrap();
        assert!(nf.iter().all(|(m, _)| m.len() == 1), "degree {d}");
    }
    let sq = GradedSeries::new(c.sqrt_nu.clone(), 4);
    assert_eq!(sq.mul(&sq).unwrap().value, c.nu);
    // reversal invariance of nu modulo STU
    let rev = reverse_element(&c.nu, 0).unwrap();
    assert_eq!(p_normal_form(&rev).unwrap(), p_normal_form(&c.nu).unwrap());
}

#[test]
fn zigzag_is_trivial() {
    let c = ctx(4);
    let z = c.zhat(&word(ZIGZAG)).unwrap();
    assert!(z.shape.is_string_link());
    assert_eq!(p_normal_form(&z.value).unwrap(), p_normal_form(&Element::one(Support::strings(1))).unwrap());
}

#[test]
fn unknot_presentations_agree() {
    let c = ctx(3);
    let a = c.zhat(&word(fixtures::UNKNOT)).unwrap();
    let b = c.zhat(&word(fixtures::UNKNOT_ZIGZAG)).unwrap();
    assert_eq!(a.shape.strands.len(), 1);
    assert_eq!(knot_form(&a), knot_form(&b));
    // the cup-cap unknot is nu itself
    assert_eq!(knot_form(&a), p_normal_form(&c.nu).unwrap());
}

#[test]
fn trefoil_presentations_agree() {
    let c = ctx(3);
    let a = c.zhat(&word(fixtures::TREFOIL)).unwrap();
    let b = c.zhat(&word(fixtures::TREFOIL_RIGHT)).unwrap();
    assert_eq!(a.shape.linking_matrix().unwrap(), vec![vec![3]]);
    assert_eq!(b.shape.linking_matrix().unwrap(), vec![vec![3]]);
    assert_eq!(knot_form(&a), knot_form(&b));
    assert_ne!(knot_form(&a), knot_form(&c.zhat(&word(fixtures::UNKNOT)).unwrap()));
}

#[test]
fn composition_is_associative() {
    let c = ctx(3);
    let slices = c.slices(&word(fixtures::TREFOIL)).unwrap();
    let left = slices[1..].iter().fold(slices[0].clone(), |acc, t| acc.compose(t).unwrap());
    let k = slices.len();
    let right = slices[..k - 1]
        .iter()
        .rev()
        .fold(slices[k - 1].clone(), |acc, t| t.compose(&acc).unwrap());
    assert_eq!(left, right);
    let mid = slices[0]
        .compose(&slices[1..4].iter().skip(1).fold(slices[1].clone(), |a, t| a.compose(t).unwrap()))
        .unwrap();
    let rest = slices[4..].iter().fold(mid, |a, t| a.compose(t).unwrap());
    assert_eq!(rest, left);
}

#[test]
fn knot_denominators_divide_dn() {
    let c = ctx(3);
    for fixture in [fixtures::TREFOIL, fixtures::UNKNOT, fixtures::UNKNOT_ZIGZAG] {
        let t = c.zhat(&word(fixture)).unwrap();
        for m in 1..=3 {
            let iq = IntegralQuotient::build(&Support::circles(1), m).unwrap();
            let den = iq.denominator(&t.value.part(m).terms).unwrap();
            assert!(dn(m as u64).unwrap().mod_floor(&den).is_zero(), "degree {m}: {den}");
        }
    }
}

#[test]
fn closure_formula_matches_caps_and_cups() {
    let c = ctx(3);
    let hopf_word = fixtures::TREFOIL.replacen("(I- (I- X+))\n", "", 1);
    let t = c.zhat(&word(&hopf_word)).unwrap();
    assert_eq!(t.shape.linking_matrix().unwrap(), vec![vec![0, 1], vec![1, 0]]);
    let mut direct = t.value.clone();
    for k in 0..2 {
        direct = connect_sum_string(&direct, k, &c.nu, 3).unwrap();
    }
    let cz = c.check_z(&"framing 0 0\nX+\nX+\n".parse().unwrap()).unwrap();
    assert_eq!(
        quotient_coordinates(&direct, 3).unwrap(),
        quotient_coordinates(&cz.closed().unwrap(), 3).unwrap()
    );
}

#[test]
fn framing_changes() {
    let c = ctx(3);
    let u = c.zhat(&word(fixtures::UNKNOT)).unwrap().value;
    assert_eq!(change_framing(&u, 0, 0, 3).unwrap(), u);
    let back = change_framing(&change_framing(&u, 0, 1, 3).unwrap(), 0, -1, 3).unwrap();
    assert_eq!(back, u);
    let shifted = change_framing(&u, 0, 3, 3).unwrap();
    let mut want = Element::zero(Support::circles(1));
    want.push(&Graph::chords(&[(0, 0)]), q(3, 2)).unwrap();
    assert_eq!(shifted.part(1), want);
    let open = Element::one(Support::strings(1));
    assert!(matches!(change_framing(&open, 0, 1, 3), Err(Error::Argument(_))));
}

#[test]
fn check_z_fixtures() {
    let c = ctx(3);
    let zero: SurgeryPresentation = "framing 0\nI\n".parse().unwrap();
    let z0 = c.check_z(&zero).unwrap();
    assert_eq!(z0.strings.part(0), Element::one(Support::strings(1)));
    // U+ is the unknot with its framing shifted by one
    let zp = c.check_z(&fixtures::U_PLUS.parse().unwrap()).unwrap();
    let shifted = change_framing(&z0.closed().unwrap(), 0, 1, 3).unwrap();
    let cut = |x: &Element| p_normal_form(&Tangle::identity(&Word::Empty, 3).compose(&closed_tangle(x)).unwrap().cut().unwrap()).unwrap();
    assert_eq!(cut(&zp.closed().unwrap()), cut(&shifted));
    // two-component unlink: disjoint union of two unknot values
    let zz = c.check_z(&fixtures::UNLINK2.parse().unwrap()).unwrap();
    let one = closed_tangle(&z0.closed().unwrap());
    let two = one.tensor(&one).unwrap();
    assert_eq!(
        quotient_coordinates(&zz.closed().unwrap(), 3).unwrap(),
        quotient_coordinates(&two.value, 3).unwrap()
    );
    assert_eq!(zz.linking, vec![vec![0, 0], vec![0, 0]]);
}

fn closed_tangle(x: &Element) -> Tangle {
    let k = x.support.skeleton().unwrap().len();
    Tangle {
        shape: TangleShape {
            top: Word::Empty,
            bottom: Word::Empty,
            strands: vec![Strand { start: None, end: None }; k],
            crossings: Vec::new(),
        },
        value: x.clone(),
        max_degree: 3,
    }
}

#[test]
fn surgery_presentations_parse() {
    let l: SurgeryPresentation = fixtures::HANDLE_SLIDE.1.parse().unwrap();
    assert_eq!(l.framings, vec![1, 2]);
    let back: SurgeryPresentation = l.to_string().parse().unwrap();
    assert_eq!(back, l);
    assert!("X+\n".parse::<SurgeryPresentation>().is_err());
    let c = ctx(2);
    let (_, lk) = c.string_link(&l).unwrap();
    assert_eq!(lk, vec![vec![1, 1], vec![1, 2]]);
    // a braid that permutes strands is not a string link
    let bad: SurgeryPresentation = "framing 0 0\nX+\n".parse().unwrap();
    assert!(matches!(c.check_z(&bad), Err(Error::Precondition(_))));
}

#[test]
fn ifilter_on_trivial_link() {
    let one = Element::one(Support::strings(2));
    let s = ifilter_split(&one, &[vec![0, 0], vec![0, 0]], 3).unwrap();
    assert_eq!(s.z.len(), 1);
    assert_eq!(s.z[&0], one);
}

#[test]
fn ifilter_needs_zero_linking() {
    let c = ctx(2);
    let (z, lk) = c.string_link(&fixtures::HANDLE_SLIDE.1.parse().unwrap()).unwrap();
    assert!(matches!(ifilter_split(&z, &lk, 2), Err(Error::Precondition(_))));
}

fn prime_factors(n: &num_bigint::BigInt) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while n > num_bigint::BigInt::from(1) {
        let bp = num_bigint::BigInt::from(p);
        if n.mod_floor(&bp).is_zero() {
            out.push(p);
            while n.mod_floor(&bp).is_zero() {
                n /= &bp;
            }
        }
        p += 1;
    }
    out
}

#[test]
fn ifilter_on_commutator() {
    let c = ctx(4);
    let (z, lk) = c.string_link(&fixtures::COMMUTATOR.parse().unwrap()).unwrap();
    let s = ifilter_split(&z, &lk, 4).unwrap();
    assert!(s.primitive);
    assert!(s.xi[&1].is_zero());
    assert!(!s.xi[&2].is_zero(), "triple linking shows up in degree 2");
    let mut total = Element::zero(z.support.clone());
    for (m, x) in &s.z {
        assert!(i_filter(x).unwrap() >= *m);
        assert!(prime_factors(&x.denominator()).iter().all(|&p| p <= *m as u64 + 2), "z_{m}");
        total = total.add(x).unwrap();
    }
    assert_eq!(p_normal_form(&total).unwrap(), p_normal_form(&z).unwrap());
}
