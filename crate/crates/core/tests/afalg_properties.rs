mod common;

use common::{admissible_digits, poly};
use heckeaf::afalg::{StationaryAf, Tail};
use heckeaf::exactnum::matrix::{char_poly, mul};
use heckeaf::mcf::{convergent_matrix, jpa_expand};
use heckeaf::{
    af_from_expansion, companion_check, cone_contains, dimension_group, export_bratteli, import_bratteli,
    make_field, AfAlgebra, BratteliDiagram, CompanionVerdict, DimensionGroup, ExportFormat,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn groups() -> Vec<DimensionGroup> {
    let golden = make_field(poly(&[-1, -1, 1])).unwrap();
    let cubic = make_field(poly(&[-1, -1, 0, 1])).unwrap();
    let quartic = make_field(poly(&[2, 0, -4, 0, 1])).unwrap();
    let t = cubic.generator();
    let s = quartic.generator();
    vec![
        dimension_group(&[golden.generator()], &golden.default_embedding().unwrap()).unwrap(),
        dimension_group(&[t.clone(), &t * &t], &cubic.default_embedding().unwrap()).unwrap(),
        dimension_group(&[s.clone(), &s * &s, &s * &(&s * &s)], &quartic.default_embedding().unwrap()).unwrap(),
    ]
}

fn vector(g: &DimensionGroup, raw: &[i64]) -> Vec<BigInt> {
    raw[..g.rank()].iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn positive_cone_is_a_strict_cone(
        gi in 0usize..3,
        x in prop::collection::vec(-1000i64..=1000, 4),
        y in prop::collection::vec(-1000i64..=1000, 4),
        m in 1i64..50,
    ) {
        let g = &groups()[gi];
        let (x, y) = (vector(g, &x), vector(g, &y));
        let px = cone_contains(g, &x).unwrap();
        let py = cone_contains(g, &y).unwrap();
        let sum: Vec<BigInt> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        if px && py {
            prop_assert!(cone_contains(g, &sum).unwrap());
        }
        let neg: Vec<BigInt> = x.iter().map(|a| -a).collect();
        if px && cone_contains(g, &neg).unwrap() {
            prop_assert!(x.iter().all(|a| a == &BigInt::from(0)));
        }
        // Unperforated: m x >= 0 forces x >= 0.
        let mx: Vec<BigInt> = x.iter().map(|a| a * m).collect();
        prop_assert_eq!(cone_contains(g, &mx).unwrap(), px);
        // Totally ordered since the functional is injective.
        prop_assert!(px || cone_contains(g, &neg).unwrap());
    }
}

fn digit_strategy() -> impl Strategy<Value = (usize, Vec<heckeaf::JpaDigit>)> {
    (2usize..=4, 1usize..=5, any::<u64>()).prop_map(|(n, len, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (n, admissible_digits(&mut rng, n, len))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn char_poly_is_rotation_invariant((n, d) in digit_strategy(), shift in 0usize..5) {
        let p = StationaryAf::new(n, vec![], d.clone());
        let mut rotated = d.clone();
        rotated.rotate_left(shift % d.len());
        let q = StationaryAf::new(n, vec![], rotated);
        prop_assert_eq!(&p.char_poly, &q.char_poly);
        prop_assert_eq!(&p.char_poly, &char_poly(&convergent_matrix(n, &d)));
        // Rotations are conjugate in GL_n(Z), so never reported as companions.
        let v = companion_check(&p.period_matrix, &q.period_matrix).unwrap();
        prop_assert!(v != CompanionVerdict::Companion && v != CompanionVerdict::DistinctCharPoly);
    }

    #[test]
    fn companion_verdict_is_symmetric((n, d1) in digit_strategy(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d2 = admissible_digits(&mut rng, n, d1.len());
        let a = convergent_matrix(n, &d1);
        let b = convergent_matrix(n, &d2);
        let ab = companion_check(&a, &b).unwrap();
        let ba = companion_check(&b, &a).unwrap();
        prop_assert_eq!(ab.name(), ba.name());
        if let CompanionVerdict::SimilarOverQ { conjugator } = &ab {
            let x: Vec<Vec<BigInt>> = conjugator.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect();
            prop_assert_eq!(mul(&a, &x), mul(&x, &b));
        }
        prop_assert_eq!(companion_check(&a, &a).unwrap().name(), "similar_over_q");
    }

    #[test]
    fn export_roundtrip((n, d) in digit_strategy(), pre in 0usize..3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pre = admissible_digits(&mut rng, n, pre);
        let stationary = AfAlgebra::Stationary(StationaryAf::new(n, pre.clone(), d.clone()));
        let diagram = AfAlgebra::Diagram(BratteliDiagram::from_digits(n, &d, Tail::Truncated));
        for af in [stationary, diagram, AfAlgebra::Trivial] {
            let text = export_bratteli(&af, ExportFormat::Json, 5);
            let back = import_bratteli(&text).unwrap();
            prop_assert_eq!(&back, &af);
            let dot = export_bratteli(&af, ExportFormat::Dot, 3);
            prop_assert!(dot.starts_with("digraph bratteli {"), "{}", dot);
        }
    }
}

#[test]
fn rational_expansions_are_trivial() {
    let q = heckeaf::NumberField::rationals();
    let x = q.from_rational(heckeaf::exactnum::parse_rational("355/113").unwrap());
    let x = jpa_expand(&[x], &q.embedding(0).unwrap(), 100).unwrap();
    assert_eq!(af_from_expansion(&x).kind(), "trivial");
}

#[test]
fn dot_edges_follow_matrix_entries() {
    let digits: Vec<_> = [3, 7, 16].iter().map(|&d| heckeaf::JpaDigit::from_i64(&[d])).collect();
    let d = BratteliDiagram::from_digits(2, &digits, Tail::Finite);
    let af = AfAlgebra::Diagram(d.clone());
    let dot = export_bratteli(&af, ExportFormat::Dot, 5);
    let edges = dot.lines().filter(|l| l.contains("->") && !l.trim_start().starts_with("//")).count();
    let expected: BigInt = d.levels.iter().flat_map(|l| l.matrix.iter().flatten()).sum();
    assert_eq!(BigInt::from(edges), expected);
    assert_eq!(expected, BigInt::from(3 + 7 + 16 + 2 * 3));
}

#[test]
fn periodic_expansions_are_stationary() {
    let k = make_field(poly(&[-2, 0, 1])).unwrap();
    let x = jpa_expand(&[k.generator()], &k.default_embedding().unwrap(), 100).unwrap();
    let af = af_from_expansion(&x);
    let AfAlgebra::Stationary(s) = &af else {
        panic!("sqrt 2 is periodic");
    };
    assert_eq!(s.period.len(), 1);
    assert_eq!(s.char_poly, poly(&[-1, -2, 1]));
    assert!(det_is_unit(&s.period_matrix));
}

fn det_is_unit(a: &heckeaf::IntMatrix) -> bool {
    heckeaf::exactnum::matrix::det(a).abs().is_one()
}
