//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;

use daerealize::arith::{MPoly, RatFunc, Rational, Var};
use daerealize::cli::parse::{default_resolver, parse_expr};
use daerealize::dynsys::{io_equation, DynSystem, IoOutcome};
use daerealize::realize::Mode;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rat(s: &str) -> RatFunc {
    parse_expr(s, &default_resolver).unwrap_or_else(|e| panic!("{s}: {e}"))
}

pub fn poly(s: &str) -> MPoly {
    rat(s).as_poly().cloned().unwrap_or_else(|| panic!("{s} is not a polynomial"))
}

pub fn system(f: &str, g: &str) -> DynSystem {
    DynSystem::standard(vec![rat(f)], rat(g)).unwrap()
}

pub fn io(s: &DynSystem) -> MPoly {
    match io_equation(s) {
        IoOutcome::Equation { p, .. } => p,
        IoOutcome::Unsupported(r) => panic!("io equation of {s}: {r}"),
    }
}

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn fixture(name: &str, file: &str) -> String {
    let path = fixtures_dir().join(name).join(file);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// One-dimensional systems `(f, g, mode)` with a known realization.
pub const CURATED: [(&str, &str, Mode); 20] = [
    ("x1*u^2", "x1 + u", Mode::Auto),
    ("0", "x1*u", Mode::Auto),
    ("x1", "x1", Mode::Auto),
    ("x1^2 + u", "x1", Mode::Auto),
    ("x1*u", "x1", Mode::Auto),
    ("1/x1", "x1*u", Mode::Auto),
    ("x1*u^2 + 1", "x1 + u", Mode::Auto),
    ("k1*x1 + u/x1", "x1", Mode::Auto),
    ("k1*x1 + u", "x1", Mode::Auto),
    ("x1", "x1 + u^2", Mode::Auto),
    ("u", "x1*u", Mode::InputAffine),
    ("0", "x1 + u", Mode::InputAffine),
    ("0", "x1*u", Mode::InputAffine),
    ("x1*u", "x1", Mode::InputAffine),
    ("x1 + u", "x1", Mode::InputAffine),
    ("k1*x1 + k2*u", "x1", Mode::InputAffine),
    ("x1^2 + x1*u", "x1", Mode::InputAffine),
    ("u", "x1 + u", Mode::InputAffine),
    ("x1*u + 1", "x1", Mode::InputAffine),
    ("1 + u", "2*x1 + u", Mode::InputAffine),
];

pub fn small_rational(rng: &mut ChaCha8Rng, height: i64) -> Rational {
    loop {
        let n = rng.gen_range(-height..=height);
        let d = rng.gen_range(1..=height);
        if n != 0 {
            return Rational::new(n.into(), d.into());
        }
    }
}

/// Random polynomial in `vars` with `terms` terms, exponents up to `deg`.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], terms: usize, deg: u32) -> MPoly {
    let mut p = MPoly::zero();
    for _ in 0..terms {
        let mut t = MPoly::constant(small_rational(rng, 5));
        for v in vars {
            t = &t * &MPoly::var(*v).pow(rng.gen_range(0..=deg));
        }
        p = &p + &t;
    }
    p
}

/// Random one-dimensional system with rational coefficients of height at most
/// 5 and degree at most 2 in the input.
pub fn random_system(rng: &mut ChaCha8Rng) -> DynSystem {
    let x = Var::x(1);
    let f_monomials = ["1", "x1", "x1^2", "u", "x1*u", "u^2", "x1*u^2"];
    let g_templates = ["x1", "x1 + C*u", "x1*u", "C*x1 + u^2", "x1 + C", "C*x1*u + u", "x1^2", "C*x1^2 + u"];
    loop {
        let mut f = MPoly::zero();
        for _ in 0..rng.gen_range(1..=3) {
            let m = poly(f_monomials[rng.gen_range(0..f_monomials.len())]);
            f = &f + &m.scale(&small_rational(rng, 5));
        }
        let template = g_templates[rng.gen_range(0..g_templates.len())];
        let c = small_rational(rng, 5).to_string();
        let g = poly(&template.replace('C', &format!("({c})")));
        if f.is_zero() || !g.contains(x) {
            continue;
        }
        return DynSystem::standard(vec![RatFunc::from(f)], RatFunc::from(g)).unwrap();
    }
}
