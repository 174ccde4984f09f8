use chordal::relations::*;
use chordal::diagram::{canonicalize, Graph, Support};
use chordal::{Rational, Scalar};

#[test]
fn stu_signs_and_arity() {
    let support = Support::strings(1);
    let rels = generate_relations(&support, 2, &[RelationKind::Stu]).unwrap();
    assert!(!rels.is_empty());
    let mut three_term = 0;
    for r in &rels.generators {
        let mut signs: Vec<i64> = r.terms.iter().map(|(_, c)| if *c > Rational::from_int(0) { 1 } else { -1 }).collect();
        signs.sort();
        if r.terms.len() == 3 {
            three_term += 1;
            assert_eq!(signs, vec![-1, 1, 1]);
        }
    }
    assert!(three_term > 0);
}

#[test]
fn as_absent_without_internal_vertices() {
    let rels = generate_relations(&Support::Colored(1), 1, &[RelationKind::As]).unwrap();
    assert!(rels.is_empty());
    assert!(generate_relations(&Support::Colored(1), 1, &[RelationKind::Stu]).is_err());
}

#[test]
fn small_dimensions() {
    assert_eq!(default_quotient(&Support::strings(2), 1).unwrap().dim(), 3);
    assert_eq!(default_quotient(&Support::strings(3), 0).unwrap().dim(), 1);
    assert_eq!(default_quotient(&Support::circles(1), 1).unwrap().dim(), 1);
}

#[test]
fn merge_of_a_chord_with_itself_is_a_tadpole() {
    let c = canonicalize(&Graph::chords(&[(0, 0)]), &Support::strings(1)).unwrap();
    assert!(merge_legs(&c, 0, 1).has_self_loop());
}
