use chordal::chi::{build_tm, chi, chi_inverse, p_normal_form, t_parts};
use chordal::relations::{generate_relations, RelationKind};
use chordal::{Element, Support};

#[test]
fn chi_inverse_kills_stu() {
    for (n, d) in [(1usize, 2usize), (1, 3), (2, 2), (2, 3)] {
        let support = Support::strings(n);
        let rels = generate_relations(&support, d, &[RelationKind::Stu]).unwrap();
        let mut bad = 0;
        for r in &rels.generators {
            let x = Element::from_canonical(support.clone(), r.terms.clone());
            if !p_normal_form(&x).unwrap().is_zero() {
                bad += 1;
            }
        }
        assert_eq!(bad, 0, "n={n} d={d}: {bad} of {} STU generators survive", rels.len());
    }
}

#[test]
fn tm_small_values() {
    assert_eq!(build_tm(2).unwrap().len(), 1);
    assert_eq!(build_tm(4).unwrap().len(), 2);
    for m in 1..=4 {
        let t = t_parts(m).unwrap();
        let f: u64 = (1..=m as u64).product();
        assert_eq!(num_integer::Integer::mod_floor(&num_bigint::BigInt::from(f), &t.denominator()), 0u8.into());
    }
    let _ = chi;
    let _ = chi_inverse;
}

fn fact(m: usize) -> num_bigint::BigInt {
    (1..=m as u64).product::<u64>().into()
}

fn divides(a: &num_bigint::BigInt, b: &num_bigint::BigInt) -> bool {
    use num_integer::Integer;
    b.mod_floor(a) == 0u8.into()
}

#[test]
fn round_trips_and_denominators() {
    use chordal::relations::default_quotient;
    for n in 1..=2usize {
        for d in 0..=3usize {
            let ps = Support::strings(n);
            let pb = default_quotient(&ps, d).unwrap();
            for rep in pb.representatives() {
                let x = Element::from_canonical(ps.clone(), chordal::linear::LinComb::basis(rep.clone()));
                let inv = chi_inverse(&x).unwrap();
                let back = chi(&inv).unwrap().sub(&x).unwrap();
                assert!(pb.reduce_sparse(&back.terms).unwrap().is_empty(), "chi chi^-1 n={n} d={d}");
                let m = rep.n_ext();
                if n >= 2 && rep.is_connected() && rep.every_component_has_leg() && rep.leg_counts(n).iter().all(|&c| c > 0) {
                    let b = fact(m - 1) * fact(m - 1);
                    assert!(divides(&inv.denominator(), &b), "denominator {} vs {b}", inv.denominator());
                }
                assert!(divides(&inv.denominator(), &fact(m)));
            }
            let bs = Support::Colored(n as u8);
            let bb = default_quotient(&bs, d).unwrap();
            for rep in bb.representatives() {
                let x = Element::from_canonical(bs.clone(), chordal::linear::LinComb::basis(rep.clone()));
                let fwd = chi(&x).unwrap();
                assert!(divides(&fwd.denominator(), &fact(rep.n_ext())));
                let back = chi_inverse(&fwd).unwrap().sub(&x).unwrap();
                assert!(bb.reduce_sparse(&back.terms).unwrap().is_empty(), "chi^-1 chi n={n} d={d}");
            }
        }
    }
}
