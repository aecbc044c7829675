mod common;

use std::sync::LazyLock;

use proptest::prelude::*;
use subconstituent::projline::{cross_ratio, format_point, parse_point, Mobius, Point};
use subconstituent::{Elem, Field};

static FIELDS: LazyLock<Vec<Field>> = LazyLock::new(|| {
    [3u64, 5, 7, 9, 11, 13]
        .iter()
        .map(|&q| common::field(q))
        .collect()
});

fn fields() -> &'static [Field] {
    &FIELDS
}

fn elem(f: &Field, i: u32) -> Elem {
    f.element((i % f.order()) as u64).unwrap()
}

fn point(f: &Field, i: u32) -> Point {
    let m = f.order() + 1;
    Point::from_index(f, (i % m) as usize)
}

proptest! {
    #[test]
    fn ring_axioms(fi in 0usize..6, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[fi];
        let (a, b, c) = (elem(f, a), elem(f, b), elem(f, c));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
    }

    #[test]
    fn format_parse_round_trip(fi in 0usize..6, a in any::<u32>()) {
        let f = &fields()[fi];
        let x = point(f, a);
        let text = format_point(f, x);
        prop_assert_eq!(parse_point(f, &text).unwrap(), x);
    }

    /// Cross-ratio is invariant under any invertible fractional linear map.
    #[test]
    fn cross_ratio_is_projective_invariant(
        fi in 0usize..4,
        pts in prop::array::uniform4(any::<u32>()),
        coeffs in prop::array::uniform4(any::<u32>()),
    ) {
        let f = &fields()[fi];
        let [a, b, c, d] = pts.map(|i| point(f, i));
        prop_assume!(a != b && c != d);
        let [al, be, ga, de] = coeffs.map(|i| elem(f, i));
        let Some(g) = Mobius::new(f, al, be, ga, de) else { return Ok(()); };
        let before = cross_ratio(f, a, b, c, d).unwrap();
        let after = cross_ratio(f, g.apply(f, a), g.apply(f, b), g.apply(f, c), g.apply(f, d)).unwrap();
        prop_assert_eq!(before, after);
    }
}
