use chordal::diagram::*;

fn tripod(anchors: [u8; 3]) -> Graph {
    // legs 0,1,2 -> ports 3,4,5 of vertex 0
    Graph::new(anchors.to_vec(), vec![3, 4, 5, 0, 1, 2]).unwrap()
}

#[test]
fn empty_key_is_fixed() {
    let k = canonicalize(&Graph::empty(), &Support::strings(2)).unwrap();
    assert_eq!(k, Graph::empty());
    assert_eq!(k.to_bytes(), vec![0, 0, 0, 0]);
}

#[test]
fn malformed_graphs_are_rejected() {
    assert!(Graph::new(vec![0], vec![0]).is_err());
    assert!(Graph::new(vec![0, 0], vec![1, 5]).is_err());
    assert!(Graph::new(vec![0, 1], vec![1, 1]).is_err());
}

#[test]
fn chord_on_circle_base_point_invariance() {
    let skel = Skeleton::circles(1);
    let theta2a = Graph::chords(&[(0, 0), (0, 0)]);
    // legs a b a b vs b a b a on a circle are rotations of each other
    let crossed = Graph::new(vec![0, 0, 0, 0], vec![2, 3, 0, 1]).unwrap();
    let rotated = crossed.permute_legs(&[1, 2, 3, 0]);
    let s = Support::Skeleton(skel);
    assert_eq!(canonicalize(&crossed, &s).unwrap(), canonicalize(&rotated, &s).unwrap());
    assert_ne!(canonicalize(&crossed, &s).unwrap(), canonicalize(&theta2a, &s).unwrap());
}

#[test]
fn orientation_reversal_is_a_different_key() {
    let s = Support::strings(3);
    let y = tripod([0, 1, 2]);
    let y_rev = y.reverse_vertex(0);
    assert_ne!(canonicalize(&y, &s).unwrap(), canonicalize(&y_rev, &s).unwrap());
}

#[test]
fn enumeration_small_counts() {
    let f = EnumFilter {
        g_connected: true,
        non_degenerate: true,
        ..Default::default()
    };
    let two = enumerate(&Skeleton::strings(2), 1, &f, 5).unwrap();
    assert_eq!(two.len(), 1);
    let one = enumerate(&Skeleton::strings(1), 1, &EnumFilter::default(), 5).unwrap();
    assert_eq!(one.len(), 1);
    let zero = enumerate(&Skeleton::strings(2), 0, &f, 5).unwrap();
    assert!(zero.is_empty());
    assert!(enumerate(&Skeleton::strings(1), 6, &EnumFilter::default(), 5).is_err());
}

#[test]
fn reversal_signs() {
    let skel = Skeleton::strings(2);
    let r = Graph::chords(&[(0, 1)]);
    let r = canonicalize(&r, &Support::Skeleton(skel.clone())).unwrap();
    let (g, s) = reverse_component(&r, &skel, 0).unwrap();
    assert_eq!(g, r);
    assert_eq!(s, -1);
    let x3 = Graph::chords(&[(0, 1), (0, 1), (0, 1)]).sort_legs_by_anchor();
    let (_, s) = reverse_component(&x3, &skel, 1).unwrap();
    assert_eq!(s, -1);
    let (_, s) = reverse_component(&Graph::empty(), &skel, 1).unwrap();
    assert_eq!(s, 1);
}

#[test]
fn splice_counts_loops() {
    // a chord with both legs colored 1, glued to itself: one loop
    let c = Graph::chords(&[(1, 1)]);
    let (g, loops) = c.splice_legs(&[(0, 1)]);
    assert!(g.is_empty());
    assert_eq!(loops, 1);
}

mod relabeling {
    use chordal::diagram::*;
    use chordal::relations::default_quotient;
    use chordal::linear::LinComb;
    use chordal::{Element, Rational};
    use once_cell::sync::Lazy;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn supports() -> Vec<(Support, usize)> {
        vec![
            (Support::strings(1), 3),
            (Support::strings(2), 3),
            (Support::strings(3), 3),
            (Support::circles(1), 3),
            (Support::circles(2), 2),
            (Support::Colored(2), 3),
            (Support::Colored(3), 3),
        ]
    }

    static SAMPLES: Lazy<Vec<(Support, Graph)>> = Lazy::new(|| {
        let mut out = Vec::new();
        for (s, top) in supports() {
            for d in 0..=top {
                let gs = match &s {
                    Support::Skeleton(k) => enumerate(k, d, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap(),
                    Support::Colored(n) => {
                        let colors: Vec<u8> = (1..=*n).collect();
                        enumerate_characters(&colors, d)
                    }
                    Support::Closed => unreachable!(),
                };
                out.extend(gs.into_iter().map(|g| (s.clone(), g)));
            }
        }
        out
    });

    /// The same graph with vertices renumbered and vertex triples rotated.
    fn relabel(g: &Graph, support: &Support, rng: &mut StdRng) -> Graph {
        let e = g.n_ext();
        let n = g.n_int();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        let rot: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        // new position of each old leg
        // legs stay listed by component; circles get a new base point
        let mut legpos: Vec<usize> = (0..e).collect();
        match support {
            Support::Skeleton(k) => {
                for c in 0..k.len() {
                    let legs: Vec<usize> = (0..e).filter(|&i| g.anchors()[i] as usize == c).collect();
                    if k.is_circle(c) && !legs.is_empty() {
                        let r = rng.gen_range(0..legs.len());
                        for (t, &i) in legs.iter().enumerate() {
                            legpos[i] = legs[(t + r) % legs.len()];
                        }
                    }
                }
            }
            _ => legpos.shuffle(rng),
        }
        let map = |h: usize| {
            if h < e {
                legpos[h]
            } else {
                let (j, q) = ((h - e) / 3, (h - e) % 3);
                e + 3 * perm[j] + (q + rot[j]) % 3
            }
        };
        let mut anchors = vec![0u8; e];
        for i in 0..e {
            anchors[legpos[i]] = g.anchors()[i];
        }
        let mut partner = vec![0u16; g.n_half()];
        for h in 0..g.n_half() {
            partner[map(h)] = map(g.partner(h)) as u16;
        }
        Graph::new(anchors, partner).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]

        #[test]
        fn keys_survive_relabeling(i in 0usize..10_000, seed in any::<u64>()) {
            let (s, g) = &SAMPLES[i % SAMPLES.len()];
            let mut rng = StdRng::seed_from_u64(seed);
            let h = relabel(g, s, &mut rng);
            prop_assert_eq!(&canonicalize(&h, s).unwrap(), g);
        }

        #[test]
        fn canonicalization_is_idempotent(i in 0usize..10_000) {
            let (s, g) = &SAMPLES[i % SAMPLES.len()];
            let k = canonicalize(g, s).unwrap();
            prop_assert_eq!(&canonicalize(&k, s).unwrap(), &k);
            prop_assert_eq!(&Graph::from_bytes(&k.to_bytes()).unwrap(), &k);
        }

        #[test]
        fn reversal_flips_a_single_vertex_key(i in 0usize..10_000, seed in any::<u64>()) {
            let (s, g) = &SAMPLES[i % SAMPLES.len()];
            prop_assume!(g.n_int() > 0);
            let mut rng = StdRng::seed_from_u64(seed);
            let j = rng.gen_range(0..g.n_int());
            let r = g.reverse_vertex(j);
            // reversing twice is the identity; reversing once may or may not
            // give an isomorphic graph, but never changes the degree
            prop_assert_eq!(&canonicalize(&r.reverse_vertex(j), s).unwrap(), g);
            prop_assert_eq!(canonicalize(&r, s).unwrap().degree(), g.degree());
        }
    }

    #[test]
    fn degree_bookkeeping() {
        for (_, g) in SAMPLES.iter() {
            assert_eq!(2 * g.degree(), g.n_int() + g.n_ext());
            assert_eq!(g.n_half(), g.n_ext() + 3 * g.n_int());
        }
    }

    #[test]
    fn enumeration_is_sorted_and_filtered() {
        let f = EnumFilter {
            g_connected: true,
            non_degenerate: true,
            max_legs_per_component: None,
        };
        for d in 1..=3 {
            let gs = enumerate(&Skeleton::strings(3), d, &f, DEFAULT_ENUMERATION_CAP).unwrap();
            assert!(gs.windows(2).all(|w| w[0] < w[1]));
            for g in &gs {
                assert!(g.is_connected());
                assert!(g.leg_counts(3).iter().all(|&c| c > 0));
            }
        }
        let capped = EnumFilter {
            max_legs_per_component: Some(1),
            ..Default::default()
        };
        for g in enumerate(&Skeleton::strings(2), 2, &capped, DEFAULT_ENUMERATION_CAP).unwrap() {
            assert!(g.leg_counts(2).iter().all(|&c| c <= 1));
        }
    }

    #[test]
    fn chord_counts_match_brute_force() {
        // chord diagrams with d chords on one string: (2d-1)!! pairings of
        // 2d points, up to nothing (the string has no symmetry)
        for d in 1..=4usize {
            let f = EnumFilter::default();
            let all = enumerate(&Skeleton::strings(1), d, &f, DEFAULT_ENUMERATION_CAP).unwrap();
            let chords = all.iter().filter(|g| g.n_int() == 0).count();
            let want: usize = (1..=2 * d - 1).step_by(2).product();
            assert_eq!(chords, want, "d={d}");
        }
    }

    #[test]
    fn connected_sum_examples() {
        let o = Skeleton::circles(1);
        let theta = canonicalize(&Graph::chords(&[(0, 0)]), &Support::circles(1)).unwrap();
        let (g, s) = connected_sum(&theta, &o, 0, &Graph::empty(), &o, 0).unwrap();
        assert_eq!((g, s.clone()), (theta.clone(), o.clone()));
        let (g, _) = connected_sum(&theta, &o, 0, &theta, &o, 0).unwrap();
        let adjacent = canonicalize(&Graph::chords(&[(0, 0), (0, 0)]), &Support::circles(1)).unwrap();
        assert_eq!(g, adjacent);
        assert!(connected_sum(&theta, &Skeleton::strings(1), 0, &theta, &o, 0).is_err());
    }

    #[test]
    fn connected_sum_does_not_depend_on_the_arc() {
        let o = Skeleton::circles(1);
        let s = Support::circles(1);
        let theta = canonicalize(&Graph::chords(&[(0, 0)]), &s).unwrap();
        let quotient = default_quotient(&s, 3).unwrap();
        for d2 in enumerate(&o, 2, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap() {
            let (a, _) = connected_sum(&theta, &o, 0, &d2, &o, 0).unwrap();
            for r in 1..d2.n_ext() {
                // move the base point of d2 by r legs
                let e = d2.n_ext();
                let order: Vec<usize> = (0..e).map(|i| (i + r) % e).collect();
                let moved = d2.permute_legs(&order);
                let (b, _) = connected_sum(&theta, &o, 0, &moved, &o, 0).unwrap();
                let mut diff = LinComb::basis(a.clone());
                diff.add_term(b, -Rational::from_integer(1.into()));
                let x = Element::from_canonical(s.clone(), diff);
                assert!(quotient.reduce_sparse(&x.terms).unwrap().is_empty());
            }
        }
    }
}
