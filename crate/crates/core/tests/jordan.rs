use f4decomp::jordan::JordanElement;
use f4decomp::liegroup::GroupElement;
use f4decomp::octonion::{Octonion, ONE};
use f4decomp::sample::Sampler;
use proptest::prelude::*;

fn oct() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(Octonion)
}

fn elem() -> impl Strategy<Value = JordanElement> {
    (prop::array::uniform3(-1.0f64..1.0), oct(), oct(), oct())
        .prop_map(|(xi, a, b, c)| JordanElement::new(xi, [a, b, c]))
}

fn group(s: &mut Sampler) -> GroupElement {
    loop {
        if let Ok((_, g)) = s.element(6) {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn det_matches_explicit_cubic(x in elem()) {
        prop_assert!((x.det() - x.det_explicit()).abs() <= 1e-10);
    }

    #[test]
    fn jordan_product_is_commutative(x in elem(), y in elem()) {
        prop_assert!(x.jordan_mul(&y).max_abs_diff(&y.jordan_mul(&x)) <= 1e-12);
    }

    #[test]
    fn jordan_identity(x in elem(), y in elem()) {
        let x2 = x.jordan_mul(&x);
        let lhs = x2.jordan_mul(&x.jordan_mul(&y));
        let rhs = x.jordan_mul(&x2.jordan_mul(&y));
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
    }

    #[test]
    fn unit_is_neutral(x in elem()) {
        prop_assert!(JordanElement::unit().jordan_mul(&x).max_abs_diff(&x) <= 1e-14);
    }

    #[test]
    fn cross_is_polarized_square(x in elem(), y in elem()) {
        let pol = (x + y).cross_square() - x.cross_square() - y.cross_square();
        prop_assert!(x.cross(&y).max_abs_diff(&pol.scale(0.5)) <= 1e-12);
    }

    #[test]
    fn coords_reconstruct(x in elem()) {
        prop_assert!(x.coords().reconstruct().max_abs_diff(&x) <= 1e-14);
    }

    #[test]
    fn vector_round_trip(x in elem()) {
        prop_assert_eq!(JordanElement::from_vec(&x.to_vec()), x);
    }

    #[test]
    fn s15_round_trip(x in oct(), y in oct()) {
        let r = (x.norm_sq() + y.norm_sq()).sqrt();
        prop_assume!(r > 1e-3);
        let (x, y) = (x / r, y / r);
        let p = JordanElement::s15_from(x, y).unwrap();
        prop_assert!(p.classify().in_n1m);
        prop_assert_eq!(p.xi[0], -1.0);
        let (u, v) = p.s15_to().unwrap();
        prop_assert!((u - x).max_abs() <= 1e-10 && (v - y).max_abs() <= 1e-10);
    }

    #[test]
    fn s8_lands_in_hp(x in oct(), xi in -1.0f64..1.0) {
        let r = (xi * xi + x.norm_sq()).sqrt();
        prop_assume!(r > 1e-3);
        let s = (JordanElement::e(2) - JordanElement::e(3)).scale(xi / r) + JordanElement::f(1, x / r);
        let pt = (s + JordanElement::e(2) + JordanElement::e(3)).scale(0.5);
        prop_assert!(pt.classify().in_hp);
        prop_assert!(pt.inner(&JordanElement::e(1)).abs() <= 1e-15);
    }
}

#[test]
fn named_elements() {
    let pm = JordanElement::p_minus();
    assert_eq!(pm.inner(&JordanElement::e(1)), -1.0);
    assert_eq!(pm.inner(&pm), 0.0);
    assert_eq!(JordanElement::unit().trace(), 3.0);
    assert_eq!(JordanElement::unit().det(), 1.0);
    assert_eq!(JordanElement::e(1).cross_square(), JordanElement::ZERO);
    assert_eq!(JordanElement::unit().cross_square(), JordanElement::unit());
    assert_eq!(pm.cross_square(), JordanElement::ZERO);
    let c = JordanElement::e(1).cross(&JordanElement::e(2));
    assert_eq!(c, JordanElement::e(3).scale(0.5));
    assert_eq!(JordanElement::s15_from(Octonion::default(), ONE).unwrap(), pm);
    assert_eq!(JordanElement::s15_from(ONE, Octonion::default()).unwrap(), JordanElement::p13_minus());
}

#[test]
fn coordinate_examples() {
    let c = JordanElement::p_minus().coords();
    assert_eq!((c.r, c.s, c.u, c.v), (0.0, 1.0, 0.0, 0.0));
    let c = (JordanElement::e(2) - JordanElement::e(1)).coords();
    assert_eq!((c.r, c.s, c.u, c.v), (1.0, 0.0, 0.0, 0.0));
    let e2 = Octonion::basis(2);
    let c = JordanElement::q_minus(e2).coords();
    assert_eq!(c.y, e2);
    assert_eq!(c.x, Octonion::default());
    assert_eq!(c.r, 0.0);
}

#[test]
fn classify_examples() {
    let m = JordanElement::e(1).classify();
    assert!(m.in_r1 && m.in_h && !m.in_hp);
    assert!(JordanElement::p_minus().classify().in_n1m);
    assert!(JordanElement::e(2).classify().in_hp);
    let m = JordanElement::unit().classify();
    assert!(!(m.in_r1 || m.in_h || m.in_hp || m.in_n1p || m.in_n1m));
    assert!(JordanElement::s15_from(Octonion::basis(3) * 2.0, Octonion::default()).is_err());
    assert!(JordanElement::e(1).s15_to().is_err());
}

fn tol(x: &JordanElement, y: &JordanElement) -> f64 {
    1e-9 * (x.norm() * y.norm()).max(1.0)
}

#[test]
fn sign_lemmas() {
    let mut s = Sampler::new(11);
    let pm = JordanElement::p_minus();
    for _ in 0..300 {
        let h = group(&mut s).apply(&JordanElement::e(1));
        let hp = group(&mut s).apply(&JordanElement::e(2));
        let y = group(&mut s).apply(&pm);
        let y2 = group(&mut s).apply(&pm);
        assert!(h.classify().in_h && hp.classify().in_hp && y.classify().in_n1m);
        assert!(h.inner(&y) < 0.0);
        assert!(hp.inner(&y) >= -tol(&hp, &y));
        assert!(y.inner(&y2) >= -tol(&y, &y2));
        assert!(y.inner(&y.scale(2.5)).abs() <= tol(&y, &y));
        let (a, b) = (y.ray_normalized().unwrap(), y2.ray_normalized().unwrap());
        if a.max_abs_diff(&b) > 1e-6 {
            assert!(a.inner(&b) > 0.0);
        }
    }
}

#[test]
fn e1_is_the_only_point_of_h_on_the_boundary_slice() {
    let mut s = Sampler::new(5);
    for k in 0..2000 {
        // Trace one and (E₁|X) = 1 on a grid of shrinking scales.
        let r = 10f64.powi(-(k % 8));
        let xi = r * s.uniform(-1.0, 1.0);
        let x = [s.octonion(r), s.octonion(r), s.octonion(r)];
        let cand = JordanElement::new([1.0, xi, -xi], x);
        if cand.classify().in_h {
            assert!(cand.max_abs_diff(&JordanElement::e(1)) <= 1e-4, "{cand:?}");
        }
    }
    assert!(JordanElement::e(1).classify().in_h);
    for _ in 0..50 {
        let h = group(&mut s).apply(&JordanElement::e(1));
        assert!(h.inner(&JordanElement::e(1)) >= 1.0 - 1e-9 * h.norm().max(1.0));
    }
    let k = s.k().unwrap();
    assert!(k.apply(&JordanElement::e(1)).max_abs_diff(&JordanElement::e(1)) <= 1e-10);
}
