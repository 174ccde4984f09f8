use chordal::associator::{
    chord, hexagon_mistake, mistake_bounds, pentagon_mistake, r_matrix, residuals, solve_associator, twist, Series,
    SolveOptions,
};
use chordal::chi::p_normal_form;
use chordal::diagram::{Graph, Support};
use chordal::element::Element;
use chordal::hopf::{all_permutations, comultiply, perm_sign, permute, stack};
use chordal::linear::LinComb;
use chordal::scalar::{divides, factorial, Scalar};
use chordal::series::{series_exp, series_log};
use chordal::{Error, Rational};
use num_bigint::BigInt;
use once_cell::sync::Lazy;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn one3(max_degree: usize) -> Series {
    Series::new(Element::one(Support::strings(3)), max_degree)
}

fn same_mod_relations(a: &Element, b: &Element) -> bool {
    p_normal_form(&a.sub(b).unwrap()).unwrap().is_zero()
}

static SOLVED4: Lazy<chordal::associator::AssociatorState> = Lazy::new(|| {
    solve_associator(&SolveOptions {
        max_degree: 4,
        audit: false,
    })
    .unwrap()
});

#[test]
fn exp_of_half_chord_has_parallel_chord_coefficients() {
    let r = r_matrix(4).unwrap();
    for n in 0..=4usize {
        let chords = vec![(0u8, 1u8); n];
        let den = factorial(n as u64) * BigInt::from(1u64 << n);
        let coeff = Rational::from_bigint(1.into()) / Rational::from_bigint(den);
        let want = Element::from_graph(Support::strings(2), &Graph::chords(&chords).sort_legs_by_anchor(), coeff).unwrap();
        assert_eq!(r.part(n), want, "degree {n}");
    }
}

#[test]
fn exp_and_log_are_inverse() {
    let x = Series::new(chord(3, 1, 2).scaled(&q(1, 2)).add(&chord(3, 2, 3)).unwrap(), 4);
    let y = series_log(&series_exp(&x).unwrap()).unwrap();
    assert_eq!(y, x);
    let z = Series::new(Element::one(Support::strings(2)).add(&chord(2, 1, 2)).unwrap(), 4);
    assert_eq!(series_exp(&series_log(&z).unwrap()).unwrap(), z);
    assert!(series_log(&one3(4)).unwrap().is_zero());
    assert_eq!(series_exp(&Series::new(Element::zero(Support::strings(3)), 4)).unwrap(), one3(4));
}

#[test]
fn exp_and_log_reject_wrong_constants() {
    assert!(matches!(series_exp(&one3(2)), Err(Error::Argument(_))));
    let two = Series::new(Element::scalar(Support::strings(3), q(2, 1)), 2);
    assert!(matches!(series_log(&two), Err(Error::Argument(_))));
}

#[test]
fn trivial_associator_mistakes() {
    let psi = hexagon_mistake(&one3(3)).unwrap();
    assert!(psi.part(1).is_zero());
    assert!(!p_normal_form(&psi.part(2)).unwrap().is_zero());
    let mu = pentagon_mistake(&one3(4)).unwrap();
    assert!(mu.is_zero());
}

#[test]
fn first_hexagon_mistake_is_antisymmetric() {
    let psi = hexagon_mistake(&one3(2)).unwrap().part(2);
    for sigma in all_permutations(3) {
        let moved = permute(&sigma, &psi).unwrap();
        let signed = psi.scaled(&q(perm_sign(&sigma), 1));
        assert!(same_mod_relations(&moved, &signed), "{sigma:?}");
    }
}

#[test]
fn degree_two_solution_matches_a_one_parameter_oracle() {
    // phi_2 = lambda [r12, r23]; psi is affine in lambda at degree 2
    let a = chord(3, 1, 2);
    let b = chord(3, 2, 3);
    let bracket = stack(&a, &b).unwrap().sub(&stack(&b, &a).unwrap()).unwrap();
    let psi_at = |lambda: Rational| {
        let big = series_exp(&Series::new(bracket.scaled(&lambda), 2)).unwrap();
        p_normal_form(&hexagon_mistake(&big).unwrap().part(2)).unwrap()
    };
    let p0 = psi_at(q(0, 1));
    let mut slope = psi_at(q(1, 1));
    slope.sub_assign(&p0);
    let (key, c0) = p0.iter().next().expect("psi_2 of the trivial associator is nonzero");
    let lambda = -c0.clone() / slope.coeff(key);
    let mut check = p0.clone();
    check.add_scaled(&slope, &lambda);
    assert!(check.is_zero());

    let state = solve_associator(&SolveOptions {
        max_degree: 2,
        audit: false,
    })
    .unwrap();
    let phi2 = state.phi_diagrams().unwrap().part(2);
    assert!(same_mod_relations(&phi2, &bracket.scaled(&lambda)));
    assert!(divides(&lambda.denom_big(), &BigInt::from(96)));
}

#[test]
fn degree_four_solution_satisfies_every_axiom() {
    let big = SOLVED4.big_phi(4).unwrap();
    let res = residuals(&big).unwrap();
    assert!(res.all_zero(), "{res:?}");
    let phi = SOLVED4.phi_diagrams().unwrap();
    assert!(phi.part(1).is_zero() && phi.part(3).is_zero());
}

#[test]
fn exp_phi_is_group_like() {
    let big = SOLVED4.big_phi(4).unwrap().value;
    let lhs = comultiply(&big).unwrap();
    let mut rhs: LinComb<(Graph, Graph), Rational> = LinComb::zero();
    for (g, c) in big.iter() {
        for (h, d) in big.iter() {
            if g.degree() + h.degree() <= 4 {
                rhs.add_term((g.clone(), h.clone()), c.clone() * d.clone());
            }
        }
    }
    let lhs = lhs.map_terms(|(g, h), c| (g.degree() + h.degree() <= 4).then(|| ((g.clone(), h.clone()), c.clone())));
    assert_eq!(lhs, rhs);
}

#[test]
fn twisting_by_one_changes_nothing() {
    let big = SOLVED4.big_phi(4).unwrap();
    let f = Series::new(Element::one(Support::strings(2)), 4);
    assert_eq!(twist(&big, &f).unwrap(), big);
}

#[test]
fn twisting_keeps_an_associator() {
    let big = SOLVED4.big_phi(4).unwrap();
    let r = chord(2, 1, 2);
    let h = r.scaled(&q(1, 3)).add(&stack(&r, &r).unwrap().scaled(&q(-2, 5))).unwrap();
    let f = series_exp(&Series::new(h, 4)).unwrap();
    let twisted = twist(&big, &f).unwrap();
    let res = residuals(&twisted).unwrap();
    assert!(res.all_zero(), "{res:?}");
}

#[test]
fn twist_rejects_bad_f() {
    let big = SOLVED4.big_phi(2).unwrap();
    let lopsided = Element::from_graph(Support::strings(2), &Graph::chords(&[(0, 0)]), q(1, 1)).unwrap();
    let f = series_exp(&Series::new(lopsided, 2)).unwrap();
    assert!(matches!(twist(&big, &f), Err(Error::Argument(_))));
}

#[test]
fn mistake_bounds_values() {
    // [(2m+2)!]^2 d_{2m}, with d_0 = 1 and d_2 = 96
    assert_eq!(mistake_bounds(2), (BigInt::from(4), BigInt::from(12)));
    assert_eq!(mistake_bounds(4), (BigInt::from(576 * 96), BigInt::from(3 * 576 * 96)));
}

#[test]
fn solver_enforces_its_cap() {
    let err = solve_associator(&SolveOptions {
        max_degree: 8,
        audit: false,
    })
    .unwrap_err();
    assert!(matches!(err, Error::Capacity(_)));
}
