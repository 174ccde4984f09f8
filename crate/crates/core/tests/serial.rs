use chordal::diagram::{enumerate, enumerate_characters, enumerate_connected_closed, EnumFilter, Graph, Skeleton};
use chordal::diagram::DEFAULT_ENUMERATION_CAP;
use chordal::serial::{parse_element, write_element};
use chordal::{Element, Error, Rational, Support};
use proptest::prelude::*;

fn sample(support: &Support, degree: usize) -> Vec<Graph> {
    match support {
        Support::Skeleton(k) => enumerate(k, degree, &EnumFilter::default(), DEFAULT_ENUMERATION_CAP).unwrap(),
        Support::Colored(n) => enumerate_characters(&(1..=*n).collect::<Vec<_>>(), degree),
        Support::Closed => enumerate_connected_closed(degree),
    }
}

fn supports() -> Vec<Support> {
    vec![
        Support::strings(2),
        Support::Skeleton(Skeleton(vec![chordal::Component::Interval, chordal::Component::Circle])),
        Support::Colored(3),
        Support::Closed,
    ]
}

proptest! {
    #[test]
    fn round_trip(which in 0usize..4, degree in 0usize..=3, picks in proptest::collection::vec((0usize..1000, -20i64..20, 1i64..9), 0..6)) {
        let s = supports()[which].clone();
        let gs = sample(&s, degree);
        prop_assume!(!gs.is_empty());
        let mut x = Element::zero(s);
        for (i, a, b) in picks {
            x.push(&gs[i % gs.len()], Rational::new(a.into(), b.into())).unwrap();
        }
        let text = write_element(&x);
        let back = parse_element(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(write_element(&back), text);
    }
}

#[test]
fn example_record() {
    let text = "# a tripod on three strings\nsupport skeleton I I I\nterm -3/6\ninternal 1\nedges 0-3 1-4 2-5\nvertices 3,4,5\nattach 0:0.0 1:1.0 2:2.0\n";
    let x = parse_element(text).unwrap();
    assert_eq!(x.len(), 1);
    let (g, c) = x.iter().next().unwrap();
    assert_eq!(*c, Rational::new((-1).into(), 2.into()));
    assert_eq!(g.n_int(), 1);
    assert_eq!(g.anchors(), &[0, 1, 2]);
}

#[test]
fn empty_and_zero() {
    let one = Element::one(Support::strings(0));
    assert_eq!(write_element(&one), "support skeleton\nterm 1\ninternal 0\nedges\nvertices\nattach\n");
    assert_eq!(parse_element(&write_element(&one)).unwrap(), one);
    let zero = Element::zero(Support::Closed);
    assert_eq!(parse_element(&write_element(&zero)).unwrap(), zero);
}

#[test]
fn bad_records() {
    let cases = [
        "term 1\n",
        "support skeleton X\n",
        "support skeleton I\nterm 1/0\n",
        "support skeleton I\nterm 1\ninternal 0\nedges 0-1\nvertices \nattach 0:0.0 1:0.2\n",
        "support skeleton I\nterm 1\ninternal 0\nedges 0-1\nvertices \nattach 0:0.0 1:3.0\n",
        "support skeleton I\nterm 1\ninternal 0\nedges 0-1\nvertices \ncolors 0:0 1:0\n",
        "support colors 1\nterm 1\ninternal 0\nedges 0-1\nvertices \ncolors 0:1 1:2\n",
        "support skeleton I\nterm 1\ninternal 0\nedges 0-1\nvertices \nattach 0:0.0\n",
        "support skeleton I I I\nterm 1\ninternal 1\nedges 0-3 1-4 2-5\nvertices 3,5,4\nattach 0:0.0 1:1.0 2:2.0\n",
        "support closed\nterm 1\ninternal 2\nedges 0-3 1-4\nvertices 0,1,2 3,4,5\n",
        "support closed\nfoo 1\n",
    ];
    for c in cases {
        assert!(matches!(parse_element(c), Err(Error::Parse(_))), "{c:?}");
    }
}
