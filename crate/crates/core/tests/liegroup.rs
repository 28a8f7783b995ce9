use f4decomp::jordan::JordanElement;
use f4decomp::liegroup::{
    basis52, d4_rotate, exp_a, exp_n, expm, gen_a, gen_g, grading_multiplicities, killing, sigma,
    stabilizer_check, verify, GLevel, GroupElement, NLevel,
};
use f4decomp::octonion::{Octonion, ONE};
use f4decomp::sample::Sampler;

fn random_element(s: &mut Sampler) -> JordanElement {
    JordanElement::new(
        [s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0), s.uniform(-1.0, 1.0)],
        [s.octonion(0.5), s.octonion(0.5), s.octonion(0.5)],
    )
}

fn consequences(g: &GroupElement, s: &mut Sampler) {
    let e = JordanElement::unit();
    assert!(g.apply(&e).max_abs_diff(&e) <= 1e-8);
    let scale = g.mat().amax().powi(3).max(1.0);
    for _ in 0..5 {
        let (x, y) = (random_element(s), random_element(s));
        let (gx, gy) = (g.apply(&x), g.apply(&y));
        assert!((gx.trace() - x.trace()).abs() <= 1e-8 * scale);
        assert!((gx.inner(&gy) - x.inner(&y)).abs() <= 1e-8 * scale);
        assert!((gx.det() - x.det()).abs() <= 1e-8 * scale);
        assert!(g.apply(&x.cross(&y)).max_abs_diff(&gx.cross(&gy)) <= 1e-8 * scale);
        assert!(g.apply(&x.jordan_mul(&y)).max_abs_diff(&gx.jordan_mul(&gy)) <= 1e-8 * scale);
    }
}

#[test]
fn generator_families_verify() {
    let mut s = Sampler::new(1);
    for k in 0..100 {
        let g = exp_a(1 + k % 3, s.uniform(-2.0, 2.0), s.unit_octonion()).unwrap();
        assert!(g.residual() < 1e-9);
        let level = if k % 2 == 0 { NLevel::Plus } else { NLevel::Minus };
        let g = exp_n(level, s.octonion(0.7), s.imag_octonion(0.7)).unwrap();
        assert!(g.residual() < 1e-9);
    }
    for i in 1..=3 {
        assert!(verify(sigma(i).mat()) < 1e-12);
    }
    for k in 0..50 {
        let u = s.octonion(1.0);
        let v = s.unit_octonion() * u.norm();
        let g = d4_rotate(1 + k % 3, u, v).unwrap();
        assert!(g.residual() < 1e-9);
        let j = 1 + k % 3;
        assert!(g.apply(&JordanElement::f(j, u)).max_abs_diff(&JordanElement::f(j, v)) <= 1e-8);
        assert!(stabilizer_check(&g, &[JordanElement::e(1), JordanElement::e(2), JordanElement::e(3)]));
    }
}

#[test]
fn random_words_preserve_structure() {
    let mut s = Sampler::new(2);
    let mut done = 0;
    while done < 40 {
        let Ok((_, g)) = s.element(8) else { continue };
        consequences(&g, &mut s);
        done += 1;
    }
}

#[test]
fn nilpotent_levels_commute() {
    let mut s = Sampler::new(3);
    for _ in 0..20 {
        let (x, p) = (s.octonion(1.0), s.imag_octonion(1.0));
        let z = Octonion::default();
        for level in [NLevel::Plus, NLevel::Minus] {
            let a = exp_n(level, x, z).unwrap();
            let b = exp_n(level, z, p).unwrap();
            let ab = a.compose(&b).unwrap();
            let ba = b.compose(&a).unwrap();
            assert!(ab.distance(&ba) <= 1e-10);
            assert!(ab.distance(&exp_n(level, x, p).unwrap()) <= 1e-10);
        }
    }
}

#[test]
fn sigma_swaps_nilpotent_halves() {
    let mut s = Sampler::new(4);
    let sg = sigma(1);
    for _ in 0..20 {
        let (x, p) = (s.octonion(0.6), s.imag_octonion(0.6));
        let conj = sg.compose(&exp_n(NLevel::Plus, x, p).unwrap()).unwrap().compose(&sg).unwrap();
        let minus = exp_n(NLevel::Minus, x, p).unwrap();
        assert!(conj.distance(&minus) <= 1e-14);
        let phi = gen_g(GLevel::M1, x).unwrap().add(&gen_g(GLevel::M2, p).unwrap());
        assert!(expm(&phi).unwrap().distance(&minus) <= 1e-10);
    }
}

#[test]
fn expm_agrees_with_closed_forms() {
    let mut s = Sampler::new(5);
    for _ in 0..20 {
        let (i, t, a) = (1 + s.index(3), s.uniform(-1.5, 1.5), s.unit_octonion());
        let g = expm(&gen_a(i, a).unwrap().scale(t)).unwrap();
        assert!(g.distance(&exp_a(i, t, a).unwrap()) <= 1e-10);
        let x = s.octonion(0.8);
        let g = expm(&gen_g(GLevel::P1, x).unwrap()).unwrap();
        assert!(g.distance(&exp_n(NLevel::Plus, x, Octonion::default()).unwrap()) <= 1e-10);
    }
}

#[test]
fn root_space_grading() {
    let h = gen_a(3, ONE).unwrap();
    let mut s = Sampler::new(6);
    for level in [GLevel::P1, GLevel::P2, GLevel::M1, GLevel::M2] {
        for _ in 0..5 {
            let p = match level {
                GLevel::P1 | GLevel::M1 => s.octonion(1.0),
                _ => s.imag_octonion(1.0),
            };
            let g = gen_g(level, p).unwrap();
            let dev = h.bracket(&g).add(&g.scale(-f64::from(level.weight()))).max_abs();
            assert!(dev <= 1e-9 * g.max_abs().max(1.0));
        }
    }
    // 𝔡₄ commutes with Ã₃¹(1) up to the 𝔪 part: slot-3 rotations fix it.
    let c = gen_a(3, Octonion::basis(1)).unwrap().bracket(&gen_a(3, Octonion::basis(2)).unwrap());
    assert!(h.bracket(&c).max_abs() <= 1e-12);
    let mult = grading_multiplicities().unwrap();
    assert_eq!(mult, vec![(-2, 7), (-1, 8), (0, 22), (1, 8), (2, 7)]);
    assert_eq!(basis52().unwrap().rank(), 52);
}

#[test]
fn killing_form_on_boosts() {
    let mut s = Sampler::new(7);
    let sg = sigma(1);
    for _ in 0..5 {
        let (a, b) = (s.octonion(1.0), s.octonion(1.0));
        let phi = gen_a(2, a).unwrap().add(&gen_a(3, b).unwrap());
        let sphi = f4decomp::liegroup::AlgebraElement::new(sg.mat() * phi.mat * sg.mat());
        let want = -72.0 * (a.norm_sq() + b.norm_sq());
        let got = killing(&phi, &sphi).unwrap();
        assert!((got - want).abs() <= 1e-8 * want.abs(), "{got} {want}");
    }
    let h = gen_a(3, ONE).unwrap();
    assert!((killing(&h, &h).unwrap() - 72.0).abs() <= 1e-9);
    let g = gen_g(GLevel::P1, ONE).unwrap();
    assert!(killing(&g, &g).unwrap().abs() <= 1e-9);
}

#[test]
fn group_operations() {
    let mut s = Sampler::new(8);
    let (_, g) = loop {
        if let Ok(v) = s.element(5) {
            break v;
        }
    };
    let id = GroupElement::identity();
    assert!(g.compose(&g.inverse()).unwrap().distance(&id) <= 1e-9 * g.mat().amax().powi(2));
    assert!(g.pow(2).unwrap().distance(&g.compose(&g).unwrap()) <= 1e-12 * g.mat().amax().powi(2));
    assert!(g.pow(0).unwrap().distance(&id) == 0.0);
    let two = id.mat() * 2.0;
    assert!(verify(&two) >= 1.0);
    assert!(GroupElement::new(two).is_err());
    let json = serde_json::to_value(&g).unwrap();
    let back = GroupElement::from_json(&json, 1e-8).unwrap();
    assert_eq!(back.mat(), g.mat());
}

#[test]
fn stabilizers_of_boosts() {
    let a = Octonion::basis(5);
    assert!(stabilizer_check(&exp_a(1, 0.7, a).unwrap(), &[JordanElement::e(1)]));
    assert!(stabilizer_check(&exp_a(2, 0.7, a).unwrap(), &[JordanElement::e(2)]));
    assert!(!stabilizer_check(&exp_a(3, 0.7, ONE).unwrap(), &[JordanElement::e(1)]));
}
