//! Fast versions of the invariant suites, run by `f4decomp selftest`.

use std::path::Path;

use serde_json::{json, Value};

use f4decomp::decomp::{reconstruction_residual, Decomposer};
use f4decomp::harmonic::{c_gamma, c_quadrature, QuadratureSpec};
use f4decomp::liegroup::{exp_a, exp_n, sigma, verify, NLevel};
use f4decomp::sample::Sampler;
use f4decomp::{Result, Tolerance};

use crate::{golden, CliError, CliResult};

struct Suite {
    name: &'static str,
    worst: f64,
    bound: f64,
}

fn octonions(s: &mut Sampler) -> Suite {
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (a, b) = (s.octonion(1.0), s.octonion(1.0));
        let scale = 1.0 + a.norm_sq() * b.norm_sq();
        worst = worst.max(((a * b).norm_sq() - a.norm_sq() * b.norm_sq()).abs() / scale);
        worst = worst.max(((a * a) * b - a * (a * b)).max_abs() / scale);
        worst = worst.max(((a * b).conj() - b.conj() * a.conj()).max_abs() / scale);
    }
    Suite { name: "octonion identities", worst, bound: 1e-12 }
}

fn generators(s: &mut Sampler) -> Result<Suite> {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        worst = worst.max(exp_a(1 + s.index(3), s.t(), s.unit_octonion())?.residual());
        let level = if s.index(2) == 0 { NLevel::Plus } else { NLevel::Minus };
        worst = worst.max(exp_n(level, s.n_octonion(), s.n_imag())?.residual());
        worst = worst.max(s.d4()?.residual());
    }
    for i in 1..=3 {
        worst = worst.max(verify(sigma(i).mat()));
    }
    Ok(Suite { name: "generator verification", worst, bound: 1e-9 })
}

fn decompositions(s: &mut Sampler, dec: &Decomposer) -> Result<Suite> {
    let mut worst = 0.0f64;
    for _ in 0..30 {
        let (_, g) = s.element(6)?;
        worst = worst.max(reconstruction_residual(&dec.iwasawa(&g)?.reconstruct()?, &g));
        worst = worst.max(reconstruction_residual(&dec.matsuki(&g)?.reconstruct()?, &g));
    }
    for _ in 0..10 {
        let (_, _, _, man) = s.man()?;
        let g = s.n_params().element(NLevel::Minus)?.compose(&man)?;
        worst = worst.max(dec.gauss(&g)?.residual);
    }
    Ok(Suite { name: "factorization round trips", worst, bound: 1e-8 })
}

fn c_function() -> Result<Suite> {
    let mut worst = 0.0f64;
    for l in [2.0, 6.0, 22.0] {
        let exact = c_gamma(l)?;
        let quad = c_quadrature(l, &QuadratureSpec::default())?.value;
        worst = worst.max((quad - exact).norm() / exact.norm());
    }
    Ok(Suite { name: "c-function routes", worst, bound: 1e-5 })
}

/// Runs every suite and the fixture replay; fails if anything is out of bounds.
pub fn run(fixtures: &Path) -> CliResult<Value> {
    let mut s = Sampler::new(7);
    let dec = Decomposer::new(Tolerance::default());
    let suites = [octonions(&mut s), generators(&mut s)?, decompositions(&mut s, &dec)?, c_function()?];
    let (count, mismatches) = golden::replay(fixtures)?;

    let mut failures: Vec<String> = suites
        .iter()
        .filter(|r| !(r.worst < r.bound))
        .map(|r| format!("{}: {:e} >= {:e}", r.name, r.worst, r.bound))
        .collect();
    failures.extend(mismatches.iter().map(|m| format!("fixture line {} ({}) differs", m.line, m.word)));
    if !failures.is_empty() {
        return Err(CliError::Selftest(failures.join("; ")));
    }
    Ok(json!({
        "suites": suites
            .iter()
            .map(|r| json!({"name": r.name, "worst": r.worst, "bound": r.bound}))
            .collect::<Vec<_>>(),
        "fixtures": {"path": fixtures.display().to_string(), "replayed": count},
    }))
}
