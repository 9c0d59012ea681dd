mod common;

use common::poly;
use common::shadow::{self, Fixed};
use heckeaf::exactnum::lattice::hnf_rows;
use heckeaf::exactnum::matrix::{self, char_poly, det, from_i64};
use heckeaf::exactnum::{
    endomorphism_ring, find_unit, isolate_real_roots, make_field, make_nonnegative, multiplication_matrix,
    parse_rational, periodic_unit, FieldElement, IntMatrix, NumberField, Rat, ZModule,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

const FIELDS: [&[i64]; 5] = [
    &[-2, 0, 1],
    &[-1, -1, 1],
    &[-1, -1, 0, 1],
    &[-1, 3, 4, 1],
    &[2, 0, -4, 0, 1],
];

fn field(i: usize) -> NumberField {
    make_field(poly(FIELDS[i])).unwrap()
}

fn element(k: &NumberField, c: &[(i64, i64)]) -> FieldElement {
    let coords = (0..k.degree())
        .map(|i| {
            let (p, q) = c[i];
            Rat::new(BigInt::from(p), BigInt::from(q))
        })
        .collect();
    k.element(coords).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-30i64..=30, 1i64..=7), 4)
}

fn unimodular(seed: &[(usize, usize, i64)], n: usize) -> IntMatrix {
    let mut u = matrix::identity(n);
    for &(i, j, c) in seed {
        let (i, j) = (i % n, j % n);
        if i == j {
            u.swap(i, (i + 1) % n);
            continue;
        }
        let add: Vec<BigInt> = u[j].iter().map(|x| x * c).collect();
        for (x, y) in u[i].iter_mut().zip(add) {
            *x += y;
        }
    }
    u
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(f in 0usize..5, a in coords(), b in coords(), c in coords()) {
        let k = field(f);
        let (a, b, c) = (element(&k, &a), element(&k, &b), element(&k, &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
        }
    }

    #[test]
    fn interval_evaluation_is_consistent(f in 0usize..5, a in coords(), j in 0usize..4) {
        let k = field(f);
        let a = element(&k, &a);
        let e = k.embedding(j % k.real_embedding_count()).unwrap();
        let mut prev: Option<heckeaf::RatInterval> = None;
        for p in [4u32, 12, 30, 60] {
            let eps = Rat::new(BigInt::one(), BigInt::from(10).pow(p));
            let iv = e.eval(&a, &eps);
            prop_assert!(iv.width() < eps);
            if let Some(prev) = &prev {
                // Both intervals contain the true value.
                prop_assert!(iv.lo <= prev.hi && prev.lo <= iv.hi);
            }
            prev = Some(iv);
        }
        let s = e.sign(&a);
        prop_assert_eq!(s, e.eval(&a, &Rat::new(BigInt::one(), BigInt::from(10).pow(60))).sign().unwrap_or(s));
    }

    #[test]
    fn floor_matches_fixed_point(f in 0usize..5, c in prop::collection::vec(-20i64..=20, 4), j in 0usize..4) {
        let k = field(f);
        let n = k.degree();
        let a = k.from_i64(&c[..n]);
        let idx = j % k.real_embedding_count();
        let e = k.embedding(idx).unwrap();
        let approx = k.real_roots()[idx].approx();
        let scale = 1_000_000i64;
        let mid = (approx * scale as f64).round() as i64;
        let r = shadow::root(FIELDS[f], Fixed::ratio(mid - 1, scale), Fixed::ratio(mid + 1, scale));
        let mut v = Fixed::int(0);
        for &ci in c[..n].iter().rev() {
            v = v.mul(&r).add(&Fixed::int(ci));
        }
        // Skip values within 1e-50 of an integer: the oracle cannot decide those.
        let frac = v.sub(&Fixed(v.floor() * BigInt::from(10).pow(shadow::DIGITS)));
        prop_assume!(!frac.is_tiny(50) && !Fixed::int(1).sub(&frac).is_tiny(50));
        prop_assert_eq!(e.floor(&a), v.floor());
    }

    #[test]
    fn module_is_canonical(
        f in 0usize..5,
        gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 4..7),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..12),
        den in 1i64..5,
    ) {
        let k = field(f);
        let n = k.degree();
        let g: Vec<FieldElement> = gens
            .iter()
            .map(|c| k.from_i64(&c[..n]).scale(&Rat::new(BigInt::one(), BigInt::from(den))))
            .collect();
        let Ok(m) = ZModule::from_generators(&k, &g) else {
            return Ok(());
        };
        let basis = m.basis();
        let u = unimodular(&ops, n);
        prop_assert_eq!(det(&u).abs(), BigInt::one());
        let changed: Vec<FieldElement> = u
            .iter()
            .map(|row| row.iter().zip(&basis).fold(k.zero(), |acc, (c, b)| acc + b.scale(&Rat::from_integer(c.clone()))))
            .collect();
        let m2 = ZModule::from_generators(&k, &changed).unwrap();
        prop_assert_eq!(&m2, &m);
        prop_assert_eq!(&hnf_rows(m.hnf()), m.hnf());
        for b in &g {
            prop_assert!(m.contains(b));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn endomorphisms_preserve_the_module(
        f in 0usize..4,
        gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 3..5),
    ) {
        let k = field(f);
        let n = k.degree();
        let g: Vec<FieldElement> = gens.iter().map(|c| k.from_i64(&c[..n])).collect();
        let Ok(m) = ZModule::from_generators(&k, &g) else {
            return Ok(());
        };
        let o = endomorphism_ring(&m).unwrap();
        prop_assert!(o.contains(&k.one()));
        let ob = o.basis();
        for a in &ob {
            for b in &m.basis() {
                prop_assert!(m.contains(&(a * b)));
            }
            for c in &ob {
                prop_assert!(o.contains(&(a * c)));
            }
            let mm = multiplication_matrix(a, &m).unwrap();
            let cp = char_poly(&mm).to_rational();
            prop_assert_eq!(cp, a.char_poly());
        }
    }
}

#[test]
fn units_have_determinant_one_in_absolute_value() {
    for f in 0..5 {
        let k = field(f);
        let m = ZModule::power_basis(&k);
        let o = endomorphism_ring(&m).unwrap();
        for e in k.embeddings() {
            let u = find_unit(&o, &e).unwrap();
            assert!(e.approx(u.element()) > 1.0, "{}", k.minpoly());
            let a = multiplication_matrix(u.element(), &m).unwrap();
            assert_eq!(det(&a).abs(), BigInt::one());
            assert_eq!(det(&a), BigInt::from(u.norm()));
            assert!(o.contains(&u.element().inverse().unwrap()));
        }
    }
}

fn check_form(k: &NumberField, u: &heckeaf::UnitElement, m: &ZModule) {
    let e = k.default_embedding().unwrap();
    let a = multiplication_matrix(u.element(), m).unwrap();
    let form = make_nonnegative(&a, u, m, &e).unwrap_or_else(|err| panic!("{}: {err}", k.minpoly()));
    let t = &form.transform;
    let tinv = matrix::unimodular_inverse(t).unwrap();
    let ak = matrix::pow(&a, form.k);
    assert_eq!(matrix::mul(&matrix::mul(&tinv, &ak), t), form.matrix);
    assert!(matrix::is_nonnegative(&form.matrix));
    assert!(form.basis.iter().all(|b| e.is_positive(b)));
}

#[test]
fn nonnegative_forms_are_conjugate() {
    for f in [0usize, 1, 2] {
        let k = field(f);
        let m = ZModule::power_basis(&k);
        let o = endomorphism_ring(&m).unwrap();
        let u = find_unit(&o, &k.default_embedding().unwrap()).unwrap();
        check_form(&k, &u, &m);
    }
}

/// In unit rank two the smallest dominant unit need not act
/// non-negatively in any basis; the unit read off the periodic expansion
/// of the module does.
#[test]
fn periodic_unit_has_a_nonnegative_form() {
    let k = field(3);
    let e = k.default_embedding().unwrap();
    let m = ZModule::power_basis(&k);
    let o = endomorphism_ring(&m).unwrap();
    let searched = find_unit(&o, &e).unwrap();
    let a = multiplication_matrix(searched.element(), &m).unwrap();
    assert!(make_nonnegative(&a, &searched, &m, &e).is_err());
    let u = periodic_unit(&o, &m, &e, 200).unwrap();
    assert!(e.approx(u.element()) > 1.0);
    check_form(&k, &u, &m);
}

#[test]
fn root_isolation_examples() {
    let roots = isolate_real_roots(&poly(&[-2, 0, 1])).unwrap();
    assert_eq!(roots.len(), 2);
    let s2 = Rat::new(BigInt::from(141_421_356), BigInt::from(100_000_000));
    assert!(roots[1].lo < s2 + Rat::new(BigInt::one(), BigInt::from(100_000_000)));
    assert!((roots[1].approx() - 2f64.sqrt()).abs() < 1e-12);
    assert!((roots[0].approx() + 2f64.sqrt()).abs() < 1e-12);
    assert!(isolate_real_roots(&poly(&[1, 0, 1])).unwrap().is_empty());
    assert_eq!(isolate_real_roots(&poly(&[-1, 3, 4, 1])).unwrap().len(), 3);
    assert!(isolate_real_roots(&poly(&[1, 2, 1])).is_err());
}

#[test]
fn field_examples() {
    let k = field(1);
    assert_eq!(k.discriminant(), BigInt::from(5));
    let a = k.generator();
    assert_eq!(&a * &a, k.from_i64(&[1, 1]));
    assert_eq!(a.inverse().unwrap(), k.from_i64(&[-1, 1]));
    assert_eq!(a.norm(), -Rat::one());
    assert!(make_field(poly(&[2, -3, 1])).is_err());
    let e = k.default_embedding().unwrap();
    assert_eq!(e.floor(&k.from_i64(&[0, 10])), BigInt::from(16));
    let half = k.from_rational(parse_rational("-1/2").unwrap());
    assert_eq!(e.floor(&half), BigInt::from(-1));
    assert!(e.is_positive(&a));
    assert!(!k.embedding(0).unwrap().is_positive(&a));
}

#[test]
fn module_examples() {
    let k = field(0);
    let m = ZModule::from_generators(&k, &[k.from_i64(&[2]), k.from_i64(&[0, 2]), k.from_i64(&[1, 1])]).unwrap();
    assert_eq!(m.hnf(), &from_i64(&[vec![1, 1], vec![0, 2]]));
    assert!(m.denominator().is_one());
    // Not an ideal of Z[s]: multiplication by s leaves it, 2s does not.
    let o = endomorphism_ring(&m).unwrap();
    assert_eq!(o.module().hnf(), &from_i64(&[vec![1, 0], vec![0, 2]]));
    assert!(!o.contains(&k.generator()));
    let half = ZModule::from_generators(&k, &[k.from_rational(parse_rational("1/2").unwrap()), k.generator()]).unwrap();
    assert_eq!(half.denominator(), &BigInt::from(2));
    assert!(half.contains_module(&ZModule::power_basis(&k)));
    assert!(!ZModule::power_basis(&k).contains_module(&half));
    assert!(m.coordinates(&k.generator()).is_none());
    let c = m.coordinates(&k.from_i64(&[3, 1])).unwrap();
    assert_eq!(c.iter().map(|x| x.is_zero()).filter(|z| !z).count() > 0, true);
}
