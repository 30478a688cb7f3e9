//! Rational general solutions of `h0(dy/du, y, u) = 0` that are Möbius in the
//! constant of integration.
//!
//! Conventions: `dy/du` is the ansatz symbol `a`, the dependent variable is
//! `y`, the independent one is `u`, and the constant is the ansatz symbol `c`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::unipoly::{hermite_reduce, integrate_rational, UPoly};
use crate::arith::factor::{factor, FactorOutcome};
use crate::arith::gcd::{lcm, resultant};
use crate::arith::ratfunc::substitute_poly;
use crate::arith::{MPoly, RatFunc, Rational, Var};
use crate::param::{triangular_zero_dim_solve, TriOutcome};

/// Default degree bound for polynomial particular solutions of Riccati equations.
pub const DEFAULT_RICCATI_DEGREE: u32 = 6;

pub fn slope_var() -> Var {
    Var::ansatz("a")
}

pub fn constant_var() -> Var {
    Var::ansatz("c")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SrgsClass {
    /// `dy/du = R(u)`.
    Quadrature,
    /// `dy/du = p(u) y + q(u)`.
    Linear,
    /// `dy/du = p2 y^2 + p1 y + p0`.
    Riccati,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Srgs {
    /// Rational in `u` and `c`, of degree one in `c`.
    pub y0: RatFunc,
    pub class: SrgsClass,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SrgsOutcome {
    Solved(Srgs),
    No(String),
    Unsupported(String),
}

enum Fail {
    No(String),
    Unsupported(String),
}

type Step<T> = Result<T, Fail>;

pub fn srgs_solve(h0: &MPoly, riccati_degree: u32) -> SrgsOutcome {
    let (a, y, u, c) = (slope_var(), Var::output(0), Var::input(0), constant_var());
    if h0.deg(a) != 1 {
        return SrgsOutcome::Unsupported(format!("degree {} in dy/du", h0.deg(a)));
    }
    let r = -(RatFunc::from(h0.coeff_of(a, 0)) / RatFunc::from(h0.coeff_of(a, 1)));
    if r.den().contains(y) {
        return SrgsOutcome::Unsupported("right-hand side is not polynomial in y".into());
    }
    let den = RatFunc::from(r.den().clone());
    let part = |k: u32| &RatFunc::from(r.num().coeff_of(y, k)) / &den;
    let result = match r.num().deg(y) {
        0 => quadrature(&r, u).map(|f| (&f + &RatFunc::var(c), SrgsClass::Quadrature)),
        1 => linear(&part(1), &part(0), u, c).map(|s| (s, SrgsClass::Linear)),
        2 => riccati(&part(2), &part(1), &part(0), u, c, riccati_degree).map(|s| (s, SrgsClass::Riccati)),
        d => Err(Fail::Unsupported(format!("right-hand side of degree {d} in y"))),
    };
    let (y0, class) = match result {
        Ok(v) => v,
        Err(Fail::No(m)) => return SrgsOutcome::No(m),
        Err(Fail::Unsupported(m)) => return SrgsOutcome::Unsupported(m),
    };
    let check = substitute_poly(h0, &[(a, y0.derivative(u)), (y, y0.clone())]);
    if !check.is_zero() || !is_mobius(&y0, c) {
        return SrgsOutcome::Unsupported("candidate solution failed the exact check".into());
    }
    SrgsOutcome::Solved(Srgs { y0, class })
}

/// Degree at most one in `c` in numerator and denominator, and not free of `c`.
pub fn is_mobius(y0: &RatFunc, c: Var) -> bool {
    let (dn, dd) = y0.degrees_in(c);
    dn <= 1 && dd <= 1 && (dn + dd) > 0
}

fn quadrature(r: &RatFunc, u: Var) -> Step<RatFunc> {
    integrate_rational(r, u).ok_or_else(|| Fail::No("the integral has a logarithmic part".into()))
}

/// General solution `y_h (v + c)` of `y' = p y + q`.
fn linear(p: &RatFunc, q: &RatFunc, u: Var, c: Var) -> Step<RatFunc> {
    if p.is_zero() {
        return quadrature(q, u).map(|f| &f + &RatFunc::var(c));
    }
    let yh = rational_exponential(p, u)?;
    let v = integrate_rational(&(q / &yh), u)
        .ok_or_else(|| Fail::No("no rational particular solution (logarithmic part)".into()))?;
    Ok(&yh * &(&v + &RatFunc::var(c)))
}

/// Rational `e` with `e'/e = p`, or a certificate that none exists.
fn rational_exponential(p: &RatFunc, u: Var) -> Step<RatFunc> {
    let a = UPoly::from_mpoly(p.num(), u);
    let d = UPoly::from_mpoly(p.den(), u);
    let split = hermite_reduce(&a, &d);
    if !split.rational.is_zero() {
        return Err(Fail::No("exp of the integral is not rational (non-logarithmic part)".into()));
    }
    let (num, den) = (split.rest_num, split.rest_den);
    if num.is_zero() {
        return Ok(RatFunc::one());
    }
    let z = Var::ansatz("z#");
    let dprime = den.derivative();
    let shifted = num.sub(&dprime.scale(&RatFunc::var(z)));
    let (dc, sc) = (cleared(&den), cleared(&shifted));
    let res = if sc.contains(u) {
        resultant(&dc, &sc, u).map_err(|e| Fail::Unsupported(format!("residue resultant: {e}")))?
    } else {
        sc.pow(dc.deg(u))
    };
    let residues = integer_roots(&res, z)?;
    let mut e = RatFunc::one();
    for n in residues {
        let n_poly = UPoly::constant(u, RatFunc::constant(Rational::from_integer(n.clone())));
        let g = den.gcd(&num.sub(&dprime.mul(&n_poly))).to_ratfunc();
        let k = n.magnitude().try_into().map_err(|_| Fail::Unsupported("residue too large".into()))?;
        e = if n.is_negative() { &e / &g.pow(k) } else { &e * &g.pow(k) };
    }
    if &e.derivative(u) / &e != *p {
        return Err(Fail::Unsupported("logarithmic-derivative reconstruction failed".into()));
    }
    Ok(e)
}

/// Polynomial multiple of a polynomial with rational-function coefficients.
fn cleared(p: &UPoly) -> MPoly {
    let l = p.coeffs().iter().fold(MPoly::one(), |acc, c| lcm(&acc, c.den()));
    (&p.to_ratfunc() * &RatFunc::from(l)).as_poly().cloned().expect("denominators cleared")
}

/// Distinct roots of `r(z)` when they are all integers.
fn integer_roots(r: &MPoly, z: Var) -> Step<Vec<BigInt>> {
    let lc = r.lc_in(z);
    let mut monic_coeffs = Vec::new();
    for c in r.coeffs_in(z) {
        let q = &RatFunc::from(c) / &RatFunc::from(lc.clone());
        match q.as_poly().and_then(|p| p.constant_value()) {
            Some(v) => monic_coeffs.push(MPoly::constant(v)),
            None => return Err(Fail::No("residues depend on the parameters, so they are not integers".into())),
        }
    }
    let monic = MPoly::from_coeffs(z, &monic_coeffs);
    if monic.deg(z) == 0 {
        return Ok(Vec::new());
    }
    let pieces = match factor(&monic) {
        FactorOutcome::Complete(f) => f,
        FactorOutcome::Unsupported { reason, .. } => return Err(Fail::Unsupported(reason)),
    };
    let mut out = Vec::new();
    for (f, _) in pieces {
        if f.deg(z) != 1 {
            return Err(Fail::No("a residue is irrational".into()));
        }
        let root = -(f.coeff_of(z, 0).constant_value().unwrap_or_else(Rational::zero) / f.coeff_of(z, 1).lc());
        if !root.is_integer() {
            return Err(Fail::No(format!("residue {root} is not an integer")));
        }
        out.push(root.to_integer());
    }
    Ok(out)
}

/// Polynomial particular solution, then `y = y_p + 1/v` with `v` linear.
fn riccati(p2: &RatFunc, p1: &RatFunc, p0: &RatFunc, u: Var, c: Var, max_degree: u32) -> Step<RatFunc> {
    let yp = (0..=max_degree)
        .find_map(|m| polynomial_solution(p2, p1, p0, u, m))
        .ok_or_else(|| Fail::Unsupported(format!("no polynomial particular solution of degree <= {max_degree}")))?;
    let two = RatFunc::int(2);
    let lin = -(&(&(&two * p2) * &yp) + p1);
    let v = linear(&lin, &-p2.clone(), u, c)?;
    Ok(&yp + &v.recip().map_err(|_| Fail::Unsupported("degenerate reduction".into()))?)
}

fn polynomial_solution(p2: &RatFunc, p1: &RatFunc, p0: &RatFunc, u: Var, m: u32) -> Option<RatFunc> {
    let unknowns: Vec<Var> = (0..=m).map(|i| Var::ansatz(&format!("e{i}"))).collect();
    let yp = unknowns
        .iter()
        .enumerate()
        .fold(RatFunc::zero(), |acc, (i, e)| &acc + &(&RatFunc::var(*e) * &RatFunc::var(u).pow(i as u32)));
    let residual = &(&yp.derivative(u) - &(&(&(p2 * &yp) + p1) * &yp)) - p0;
    let eqs: Vec<MPoly> = residual.num().coeffs_in(u).into_iter().filter(|e| !e.is_zero()).collect();
    if eqs.is_empty() {
        return Some(yp);
    }
    let TriOutcome::Solved(sol) = triangular_zero_dim_solve(&eqs, &unknowns) else {
        return None;
    };
    for b in sol.branches {
        let Some((w, r)) = b.w else {
            return yp.substitute(&b.values).ok();
        };
        if r.deg(w) != 1 {
            continue;
        }
        let wv = -(RatFunc::from(r.coeff_of(w, 0)) / RatFunc::from(r.coeff_of(w, 1)));
        let values: Option<Vec<(Var, RatFunc)>> =
            b.values.iter().map(|(v, e)| e.substitute(&[(w, wv.clone())]).ok().map(|x| (*v, x))).collect();
        if let Some(sol) = values.and_then(|vals| yp.substitute(&vals).ok()) {
            if !sol.vars().iter().any(|v| unknowns.contains(v)) {
                return Some(sol);
            }
        }
    }
    None
}
