use chordal::associator::{act_normal, chord};
use chordal::bspace::SymComb;
use chordal::chi::p_normal_form;
use chordal::cobar::*;
use chordal::diagram::{enumerate, EnumFilter, Skeleton, DEFAULT_ENUMERATION_CAP};
use chordal::hopf::eulerian_idempotent;
use chordal::linear::{rank_of, LinComb};
use chordal::{Element, Rational, Scalar, Support};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

fn divides(a: &BigInt, b: &BigInt) -> bool {
    b.mod_floor(a).is_zero()
}

fn span_rank(xs: &[SymComb]) -> usize {
    let mut idx = chordal::associator::MonomialIndex::default();
    let rows: Vec<_> = xs.iter().map(|x| idx.sparse(x)).collect();
    rank_of(&rows)
}

fn in_span(space: &CochainSpace, x: &SymComb) -> bool {
    let mut all = space.basis.clone();
    let before = span_rank(&all);
    all.push(x.clone());
    span_rank(&all) == before
}

#[test]
fn constants_are_closed() {
    let c = Element::scalar(Support::strings(0), Rational::from_int(5));
    let d = differential(&c).unwrap();
    assert!(d.is_zero());
}

#[test]
fn differential_of_a_chord_vanishes() {
    // 1 (x) r - Delta_1 r + Delta_2 r - r (x) 1
    //   = r23 - (r13 + r23) + (r12 + r13) - r12
    let r = chord(2, 1, 2);
    assert!(differential(&r).unwrap().is_zero());
}

#[test]
fn d_squared_on_strings() {
    for d in 1..=2 {
        let gens = enumerate(&Skeleton::strings(2), d, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap();
        for g in gens {
            let x = Element::from_canonical(Support::strings(2), LinComb::basis(g));
            let dd = differential(&differential(&x).unwrap()).unwrap();
            assert!(p_normal_form(&dd).unwrap().is_zero());
        }
    }
}

#[test]
fn d_squared_on_normal_forms() {
    for n in 1..=3 {
        for m in 0..=3 {
            for mono in monomial_basis(n, m).unwrap() {
                let x = SymComb::basis(mono);
                let dd = differential_normal(&differential_normal(&x, n).unwrap(), n + 1).unwrap();
                assert!(dd.is_zero(), "n={n} m={m}");
            }
        }
    }
}

#[test]
fn small_spaces_are_empty() {
    assert!(subcomplex_basis(3, 0, Flavor::SymLattice).unwrap().is_zero());
    assert!(subcomplex_basis(4, 2, Flavor::SymLattice).unwrap().is_zero());
    assert!(cohomology_torsion(4, 2, Flavor::SymLattice).unwrap().is_empty());
    assert_eq!(cohomology_q(4, 2, Flavor::SymLattice).unwrap(), 0);
}

#[test]
fn eulerian_components_partition_the_space() {
    let full = subcomplex_basis(3, 2, Flavor::Full).unwrap();
    let harr = subcomplex_basis(3, 2, Flavor::Harr).unwrap();
    let mut total = 0;
    for l in 1..=3 {
        let e = eulerian_idempotent(3, l).unwrap();
        let imgs: Vec<_> = full.basis.iter().map(|x| act_normal(&e, x, 3).unwrap()).collect();
        let r = span_rank(&imgs);
        if l == 1 {
            assert_eq!(r, harr.dim());
        }
        total += r;
    }
    assert_eq!(total, full.dim());
}

#[test]
fn flavors_are_subcomplexes() {
    for flavor in [Flavor::Sym, Flavor::Harr, Flavor::Lattice, Flavor::SymLattice] {
        for n in 1..=3 {
            for m in 1..=3 {
                let here = subcomplex_basis(n, m, flavor).unwrap();
                let next = subcomplex_basis(n + 1, m, flavor).unwrap();
                for b in &here.basis {
                    let img = differential_normal(b, n).unwrap();
                    if flavor.is_integral() {
                        let c = next.lattice_coordinates(&img).unwrap();
                        let c = c.unwrap_or_else(|| panic!("{flavor:?} n={n} m={m} leaves the span"));
                        assert!(c.iter().all(|x| x.is_integer()));
                    } else {
                        assert!(in_span(&next, &img), "{flavor:?} n={n} m={m}");
                    }
                }
            }
        }
    }
}

#[test]
fn first_idempotent_commutes_with_d() {
    let e3 = eulerian_idempotent(3, 1).unwrap();
    let e4 = eulerian_idempotent(4, 1).unwrap();
    for m in 0..=3 {
        for mono in monomial_basis(3, m).unwrap() {
            let x = SymComb::basis(mono);
            let lhs = act_normal(&e4, &differential_normal(&x, 3).unwrap(), 4).unwrap();
            let rhs = differential_normal(&act_normal(&e3, &x, 3).unwrap(), 3).unwrap();
            assert_eq!(lhs, rhs, "degree {m}");
        }
    }
}

#[test]
fn symmetric_cochains_satisfy_the_equation() {
    for n in 1..=4 {
        for m in 1..=3 {
            for b in &subcomplex_basis(n, m, Flavor::Sym).unwrap().basis {
                assert!(symmetry_defect_normal(b, n).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn torsion_bound_values() {
    assert_eq!(torsion_bound(3), BigInt::from(6912));
    assert_eq!(torsion_bound(4), BigInt::from(4976640));
}

#[test]
fn h4_of_symmetric_lattice() {
    for m in [3, 4] {
        let h = cohomology_integral(4, m, Flavor::SymLattice).unwrap();
        assert_eq!(h.rank, 0, "rational H^4 vanishes");
        assert_eq!(cohomology_q(4, m, Flavor::SymLattice).unwrap(), 0);
        let bound = torsion_bound(m);
        for t in &h.torsion {
            assert!(divides(t, &bound), "degree {m}: {t} does not divide {bound}");
        }
    }
}

#[test]
fn partition_complex() {
    assert_eq!(PartitionChain::new(3, 2).unwrap().dim(), 6);
    assert_eq!(PartitionChain::new(3, 3).unwrap().dim(), 6);
    assert_eq!(PartitionChain::new(2, 3).unwrap().dim(), 0);
    for k in 1..=4 {
        let h = ek_cohomology(k).unwrap();
        for (n, g) in &h {
            assert!(g.torsion.is_empty());
            assert_eq!(g.rank, usize::from(*n == k), "k={k} n={n}");
        }
    }
}

#[test]
fn partition_differential_squares_to_zero() {
    for k in 1..=5 {
        for n in 1..=k {
            for b in PartitionChain::new(k, n).unwrap().basis {
                let d = partition_differential(&b);
                let mut dd = LinComb::<Vec<u16>, Rational>::zero();
                for (t, c) in d.iter() {
                    dd.add_scaled(&partition_differential(t), c);
                }
                assert!(dd.is_zero());
            }
        }
    }
}
