//! Seeded random inputs: octonions, words and elements of the standard
//! subgroups. Shared by the property tests, the acceptance suite and the
//! CLI self-test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::decomp::{a_t, g0, NParams};
use crate::error::Result;
use crate::liegroup::{d4_rotate, exp_a, expm, sigma, slot_rotation_generator, GroupElement, NLevel};
use crate::octonion::{Octonion, ONE};
use crate::word::{Atom, Factor, Word};

/// Range of the `t` parameter of random `A`-atoms.
pub const T_RANGE: f64 = 0.75;
/// Radius of the ball from which `x, p` parameters of `G`-atoms are drawn.
pub const N_RADIUS: f64 = 0.5;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Independent Gaussian coordinates scaled by `scale`.
    pub fn octonion(&mut self, scale: f64) -> Octonion {
        let mut o = Octonion::default();
        for i in 0..8 {
            o[i] = scale * self.rng.sample::<f64, _>(StandardNormal);
        }
        o
    }

    pub fn imag_octonion(&mut self, scale: f64) -> Octonion {
        self.octonion(scale).im()
    }

    /// Uniform on `S⁷`.
    pub fn unit_octonion(&mut self) -> Octonion {
        loop {
            if let Some(u) = self.octonion(1.0).normalized() {
                return u;
            }
        }
    }

    /// Uniform direction, radius uniform in `[0, N_RADIUS]`.
    pub fn n_octonion(&mut self) -> Octonion {
        self.unit_octonion() * self.uniform(0.0, N_RADIUS)
    }

    /// As [`Sampler::n_octonion`], imaginary.
    pub fn n_imag(&mut self) -> Octonion {
        loop {
            if let Some(u) = self.imag_octonion(1.0).normalized() {
                return u * self.uniform(0.0, N_RADIUS);
            }
        }
    }

    pub fn t(&mut self) -> f64 {
        self.uniform(-T_RANGE, T_RANGE)
    }

    pub fn n_params(&mut self) -> NParams {
        NParams::new(self.n_octonion(), self.n_imag())
    }

    pub fn atom(&mut self) -> Atom {
        let level = if self.rng.random::<bool>() { NLevel::Plus } else { NLevel::Minus };
        match self.index(6) {
            0 | 1 => Atom::A { i: 1 + self.index(3), t: self.t(), a: self.unit_octonion() },
            2 => {
                let x = self.n_octonion();
                let p = if self.rng.random::<bool>() { Some(self.n_imag()) } else { None };
                Atom::G { level, x, p, two: false }
            }
            3 => Atom::G { level, x: Octonion::default(), p: Some(self.n_imag()), two: true },
            4 => Atom::S(1 + self.index(3)),
            _ => {
                let u = self.unit_octonion();
                let v = self.unit_octonion();
                Atom::D4 { j: 1 + self.index(3), u, v }
            }
        }
    }

    /// A word of `1..=max_len` atoms of every kind.
    pub fn word(&mut self, max_len: usize) -> Word {
        let len = 1 + self.index(max_len.max(1));
        let factors = (0..len)
            .map(|_| {
                let pow = if self.index(8) == 0 { Some(if self.rng.random::<bool>() { -1 } else { 2 }) } else { None };
                Factor { atom: self.atom(), pow }
            })
            .collect();
        Word { factors }
    }

    /// A random word together with its value.
    pub fn element(&mut self, max_len: usize) -> Result<(Word, GroupElement)> {
        let w = self.word(max_len);
        let g = w.eval()?;
        Ok((w, g))
    }

    /// A product of slot rotations: an element of `D₄ = Spin(8)`.
    pub fn d4(&mut self) -> Result<GroupElement> {
        let mut g = GroupElement::identity();
        for _ in 0..4 {
            let j = 1 + self.index(3);
            let a = self.index(8);
            let b = (a + 1 + self.index(7)) % 8;
            let step = expm(&slot_rotation_generator(j, a, b).scale(self.uniform(-1.5, 1.5)))?;
            g = g.compose(&step)?;
        }
        Ok(g)
    }

    /// An element of `M = Spin(7)`: a `D₄` element corrected to fix `F₃¹(1)`.
    pub fn m(&mut self) -> Result<GroupElement> {
        let d = self.d4()?;
        let w = d.apply(&crate::jordan::JordanElement::f(3, ONE)).x[2];
        let fix = d4_rotate(3, w.normalized().unwrap_or(ONE), ONE)?;
        fix.compose(&d)
    }

    /// An element of `K = Spin(9)`.
    pub fn k(&mut self) -> Result<GroupElement> {
        let mut g = self.d4()?;
        for _ in 0..2 {
            let r = exp_a(1, self.uniform(-3.0, 3.0), self.unit_octonion())?;
            g = g.compose(&r)?;
        }
        Ok(g)
    }

    /// An element of `K_ε = Spin⁰(8,1)`.
    pub fn keps(&mut self) -> Result<GroupElement> {
        let mut g = self.d4()?;
        for _ in 0..2 {
            let r = exp_a(2, self.t(), self.unit_octonion())?;
            g = g.compose(&r)?;
        }
        Ok(g)
    }

    /// `m·a_t·n` with its factors.
    pub fn man(&mut self) -> Result<(GroupElement, f64, NParams, GroupElement)> {
        let m = self.m()?;
        let t = self.t();
        let n = self.n_params();
        let g = m.compose(&a_t(t)?)?.compose(&n.element(NLevel::Plus)?)?;
        Ok((m, t, n, g))
    }

    /// `σ₁·m·a_t·n`: an element of the closed Bruhat cell.
    pub fn closed_bruhat(&mut self) -> Result<GroupElement> {
        let (_, _, _, g) = self.man()?;
        sigma(1).compose(&g)
    }

    /// `k_ε·g₀·m·a_t·n`: an element of the closed Matsuki cell.
    pub fn closed_matsuki(&mut self) -> Result<GroupElement> {
        let k = self.keps()?;
        let (_, _, _, man) = self.man()?;
        k.compose(&g0()?)?.compose(&man)
    }
}
