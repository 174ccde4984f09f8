use chordal::associator::{solve_associator, AssociatorState, SolveOptions};
use chordal::bspace::{reduce_comb, SymComb};
use chordal::chi::HElement;
use chordal::diagram::{enumerate, EnumFilter, Graph, Skeleton, DEFAULT_ENUMERATION_CAP};
use chordal::linear::LinComb;
use chordal::lmo::*;
use chordal::relations::{generate_relations, RelationKind};
use chordal::tangle::{fixtures, ZhatContext};
use chordal::{Element, Error, Rational, Support};
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use proptest::prelude::*;

static PHI: Lazy<AssociatorState> = Lazy::new(|| {
    solve_associator(&SolveOptions {
        max_degree: 2,
        audit: false,
    })
    .unwrap()
});

static CTX: Lazy<ZhatContext> = Lazy::new(|| ZhatContext::new(&PHI, 3).unwrap());

fn q(a: i64, b: i64) -> Rational {
    Rational::new(a.into(), b.into())
}

fn red(x: &HElement) -> SymComb {
    reduce_comb(x.terms.iter()).unwrap()
}

fn matchings(items: &[u8]) -> Vec<Vec<(u8, u8)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<u8> = items[1..].iter().copied().filter(|&x| x != items[i]).collect();
        for mut m in matchings(&rest) {
            m.push((items[0], items[i]));
            out.push(m);
        }
    }
    out
}

#[test]
fn tnm_small_cases() {
    assert!(build_tnm(2, 3).unwrap().is_empty());
    assert!(build_tnm(3, 5).unwrap().is_empty());
    assert!(matches!(build_tnm(0, 2), Err(Error::Argument(_))));
    assert!(matches!(build_tnm(1, TNM_CAP + 1), Err(Error::Capacity(_))));
    // T^n_{2n} is the sum over perfect matchings of the colors
    for n in 1..=3usize {
        let colors: Vec<u8> = (1..=2 * n as u8).collect();
        let mut want = HElement::zero(2 * n);
        for m in matchings(&colors) {
            want.push(&Graph::chords(&m), Rational::one()).unwrap();
        }
        let got = build_tnm(n, 2 * n).unwrap();
        assert_eq!(got, want, "n={n}");
        assert_eq!(got.len(), [1, 3, 15][n - 1]);
    }
}

#[test]
fn t1_is_tm() {
    for m in 2..=5 {
        assert_eq!(build_tnm(1, m).unwrap(), chordal::chi::build_tm(m).unwrap());
    }
}

#[test]
fn tnm_is_cyclically_invariant() {
    for (n, m) in [(1, 4), (1, 5), (2, 5), (2, 6)] {
        let t = build_tnm(n, m).unwrap();
        let mut rot: Vec<u8> = (2..=m as u8).collect();
        rot.push(1);
        assert_eq!(red(&permute_colors(&t, &rot).unwrap()), red(&t), "n={n} m={m}");
    }
}

#[test]
fn tnm_dual_stu() {
    for (n, m) in [(1, 3), (1, 4), (2, 5)] {
        let t = build_tnm(n, m).unwrap();
        let t1 = build_tnm(n, m - 1).unwrap();
        for k in 1..m as u8 {
            let mut sigma: Vec<u8> = (1..=m as u8).collect();
            sigma.swap(k as usize - 1, k as usize);
            let mut lhs = red(&t);
            lhs.add_scaled(&red(&permute_colors(&t, &sigma).unwrap()), &q(-1, 1));
            let rhs = red(&star_y(&t1, k, DUAL_STU_FLIP).unwrap());
            assert_eq!(lhs, rhs, "n={n} m={m} k={k}");
        }
    }
}

#[test]
fn jn_kills_stu() {
    for (n, top) in [(1, 3), (2, 3)] {
        for d in 1..=top {
            let rels = generate_relations(&Support::circles(1), d, &[RelationKind::Stu]).unwrap();
            for r in rels.combs() {
                let x = Element::from_canonical(Support::circles(1), r.clone());
                assert!(reduce_looped(&jn(&x, n).unwrap()).unwrap().is_zero(), "n={n} degree {d}");
            }
        }
    }
}

fn vertices(g: &Graph) -> usize {
    g.n_int()
}

#[test]
fn jn_degree_bookkeeping() {
    for (l, n) in [(1, 1), (1, 2), (2, 1)] {
        for d in 0..=3 {
            let gens = enumerate(&Skeleton::circles(l), d, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap();
            for g in gens {
                let x = Element::from_canonical(Support::circles(l), LinComb::basis(g));
                for ((_, h), _) in jn(&x, n).unwrap().iter() {
                    assert_eq!(vertices(h), 2 * (d - l * n));
                }
            }
        }
    }
}

#[test]
fn too_few_legs_give_zero() {
    // an isolated chord has two legs, j_2 needs at least four
    let x = Element::from_graph(Support::circles(1), &Graph::chords(&[(0, 0)]), Rational::one()).unwrap();
    assert!(jn(&x, 2).unwrap().is_zero());
    let y = Element::from_graph(Support::strings(1), &Graph::chords(&[(0, 0)]), Rational::one()).unwrap();
    assert!(jprime_n(&y, 2).unwrap().is_zero());
    assert!(jn(&y, 1).is_err());
    assert!(jprime_n(&x, 1).is_err());
}

#[test]
fn j_agrees_with_j_prime() {
    // j'_n only sees degrees up to (l + 1) n
    for l in 1..=2 {
        for d in 0..=required_degree(l, 1) {
            let gens = enumerate(&Skeleton::circles(l), d, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap();
            for g in gens {
                let x = Element::from_canonical(Support::circles(l), LinComb::basis(g.clone()));
                let y = Element::from_canonical(Support::strings(l), LinComb::basis(g));
                assert_eq!(
                    reduce_looped(&jn(&x, 1).unwrap()).unwrap(),
                    reduce_looped(&jprime_n(&y, 1).unwrap()).unwrap(),
                    "l={l} degree {d}"
                );
            }
        }
    }
}

#[test]
fn loops_become_scalars() {
    for n in 1..=3usize {
        let mut x = LoopedGraphs::zero();
        x.add_term((2, Graph::empty()), q(1, 3));
        let got = iota_n(&x, n).unwrap();
        assert_eq!(got.coeff(&Vec::new()), q(4 * (n * n) as i64, 3));
    }
}

#[test]
fn signatures() {
    assert_eq!(signature(&[]), (0, 0));
    assert_eq!(signature(&[vec![1]]), (1, 0));
    assert_eq!(signature(&[vec![0]]), (0, 0));
    assert_eq!(signature(&[vec![0, 1], vec![1, 0]]), (1, 1));
    assert_eq!(signature(&[vec![2, 1], vec![1, 2]]), (2, 0));
    assert_eq!(signature(&[vec![-1, 0], vec![0, -3]]), (0, 2));
    assert_eq!(signature(&[vec![1, 1], vec![1, 1]]), (1, 0));
}

proptest! {
    #[test]
    fn signature_counts_nonzero_eigenvalues(d in proptest::collection::vec(-3i64..=3, 1..5), seed in 0u64..1000) {
        // congruence by a unimodular upper triangular matrix keeps the signature
        let k = d.len();
        let mut p = vec![vec![0i64; k]; k];
        let mut s = seed;
        for i in 0..k {
            p[i][i] = 1;
            for j in i + 1..k {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                p[i][j] = (s >> 60) as i64 - 8;
            }
        }
        let mut m = vec![vec![0i64; k]; k];
        for i in 0..k {
            for j in 0..k {
                m[i][j] = (0..k).map(|r| p[r][i] * d[r] * p[r][j]).sum();
            }
        }
        let pos = d.iter().filter(|&&x| x > 0).count();
        let neg = d.iter().filter(|&&x| x < 0).count();
        prop_assert_eq!(signature(&m), (pos, neg));
    }
}

#[test]
fn graph_inverse_inverts() {
    let theta = SymComb::basis(TrivalentGraphSpace::new(1).unwrap().basis[0].clone());
    let mut x = SymComb::basis(Vec::new()).scaled(&q(2, 1));
    x.add_scaled(&theta, &q(1, 3));
    let inv = graph_inverse(&x, 3).unwrap();
    assert_eq!(graph_product(&x, &inv, 3), SymComb::basis(Vec::new()));
    assert!(matches!(graph_inverse(&theta, 3), Err(Error::Numeric(_))));
}

#[test]
fn trivalent_dims() {
    // connected dims 1, 1, 1, 2 in degrees 1..4, products of those
    let dims: Vec<usize> = (1..=4).map(|d| TrivalentGraphSpace::new(d).unwrap().dim()).collect();
    assert_eq!(dims, vec![1, 2, 3, 6]);
}

fn theta_coeff(x: &SymComb) -> Rational {
    x.coeff(&TrivalentGraphSpace::new(1).unwrap().basis[0])
}

#[test]
fn omega_of_unit_framed_unknots() {
    assert_eq!(required_degree(1, 1), 2);
    for w in [fixtures::U_PLUS, fixtures::U_MINUS] {
        let r = omega_n(&CTX, &w.parse().unwrap(), 1).unwrap();
        assert_eq!(r.omega, SymComb::basis(Vec::new()), "{w}");
    }
    let up = omega_n(&CTX, &fixtures::U_PLUS.parse().unwrap(), 1).unwrap();
    assert_eq!((up.sigma_plus, up.sigma_minus), (1, 0));
    assert_eq!(up.iota.coeff(&Vec::new()), q(-1, 1));
    assert_eq!(theta_coeff(&up.iota), q(-1, 16));
}

#[test]
fn omega_of_lens_space() {
    // +2 surgery on the unknot: |H_1| = 2 in degree 0
    let r = omega_n(&CTX, &fixtures::UNKNOT_FRAMING_2.parse().unwrap(), 1).unwrap();
    assert_eq!(r.omega.coeff(&Vec::new()), q(2, 1));
    assert!(theta_coeff(&r.omega).is_zero());
    for (_, c) in r.omega.iter() {
        let den = c.denom().clone();
        assert!(num_bigint::BigInt::from(6).mod_floor(&den).is_zero());
    }
}

#[test]
fn omega_is_multiplicative() {
    let a = omega_n(&CTX, &fixtures::UNKNOT_FRAMING_2.parse().unwrap(), 1).unwrap();
    let both = omega_n(&CTX, &"framing 2 2\n(I I)\n".parse().unwrap(), 1).unwrap();
    assert_eq!(both.omega, graph_product(&a.omega, &a.omega, 1));
    let mixed = omega_n(&CTX, &"framing 2 -1\n(I I)\n".parse().unwrap(), 1).unwrap();
    assert_eq!((mixed.sigma_plus, mixed.sigma_minus), (1, 1));
    assert_eq!(mixed.omega, a.omega);
}

#[test]
fn handle_slide_keeps_iota() {
    let (a, b) = fixtures::HANDLE_SLIDE;
    let ia = iota_of_link(&CTX, &a.parse().unwrap(), 1).unwrap();
    let ib = iota_of_link(&CTX, &b.parse().unwrap(), 1).unwrap();
    assert_eq!(ia.0, ib.0);
    assert_eq!(ia.0.coeff(&Vec::new()), Rational::one());
    assert_eq!(theta_coeff(&ia.0), q(1, 8));
    assert_ne!(ia.1, ib.1);
}

#[test]
fn omega_needs_enough_degree() {
    let err = omega_n(&CTX, &"framing 1 1 1\n(I (I I))\n".parse().unwrap(), 1).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
}

#[test]
fn characters_need_colored_support() {
    let x = Element::one(Support::strings(1));
    assert!(jprime_characters(&x, 1).is_err());
}
