//! Rational parametrization of plane curves (lines-in-a-variable and conics).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::gcd::{gcd, sqrt};
use crate::arith::ratfunc::substitute_poly;
use crate::arith::{MPoly, RatFunc, Rational, Var};

/// Default height bound for the rational-point search on conics.
pub const DEFAULT_POINT_HEIGHT: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Properness {
    ByConstruction,
    Verified,
}

/// `vars[i] = components[i](param)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveParam {
    pub vars: Vec<Var>,
    pub components: Vec<RatFunc>,
    pub param: Var,
    pub proper: Option<Properness>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CurveOutcome {
    Param(CurveParam),
    No(String),
    Unsupported(String),
}

fn curve_degree(f: &MPoly, vars: [Var; 2]) -> u32 {
    f.coeffs_in_vars(&vars).iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
}

/// Parametrizes `f(vars) = 0`; other symbols are coefficients.
pub fn parametrize_plane_curve(f: &MPoly, vars: [Var; 2], t: Var, point_height: u32) -> CurveOutcome {
    if f.is_zero() || !f.contains_any(&vars) {
        return CurveOutcome::Unsupported("curve equation does not involve the curve variables".into());
    }
    for (i, &v) in vars.iter().enumerate() {
        if f.deg(v) != 1 {
            continue;
        }
        let other = vars[1 - i];
        let a = f.coeff_of(v, 1).subs(other, &MPoly::var(t));
        let b = f.coeff_of(v, 0).subs(other, &MPoly::var(t));
        let solved = -(RatFunc::from(b) / RatFunc::from(a));
        let mut components = vec![RatFunc::zero(), RatFunc::zero()];
        components[i] = solved;
        components[1 - i] = RatFunc::var(t);
        return finish(f, vars, t, components);
    }
    if curve_degree(f, vars) == 2 {
        return match conic(f, vars, t, point_height) {
            Some(components) => finish(f, vars, t, components),
            None => CurveOutcome::Unsupported(format!(
                "no rational point of height <= {point_height} on the conic"
            )),
        };
    }
    CurveOutcome::Unsupported(format!(
        "curve of degree {} is neither linear in a variable nor a conic",
        curve_degree(f, vars)
    ))
}

fn finish(f: &MPoly, vars: [Var; 2], t: Var, components: Vec<RatFunc>) -> CurveOutcome {
    let map: Vec<(Var, RatFunc)> = vars.iter().copied().zip(components.iter().cloned()).collect();
    if !substitute_poly(f, &map).is_zero() {
        return CurveOutcome::Unsupported("parametrization failed the on-curve check".into());
    }
    CurveOutcome::Param(CurveParam {
        vars: vars.to_vec(),
        components,
        param: t,
        proper: Some(Properness::ByConstruction),
    })
}

/// Rationals of height at most `h`, smallest height first.
fn small_rationals(h: u32) -> Vec<Rational> {
    let mut out = vec![Rational::zero()];
    for height in 1..=h as i64 {
        let big_num = (1..=height).map(|d| (height, d));
        let big_den = (1..height).map(|n| (n, height));
        for (n, d) in big_num.chain(big_den) {
            if n.gcd(&d) != 1 {
                continue;
            }
            let q = Rational::new(BigInt::from(n), BigInt::from(d));
            out.push(q.clone());
            out.push(-q);
        }
    }
    out
}

/// Pencil of lines through a point found by search on the first coordinate.
fn conic(f: &MPoly, vars: [Var; 2], t: Var, h: u32) -> Option<Vec<RatFunc>> {
    let [x, y] = vars;
    for x0 in small_rationals(h) {
        let g = f.eval(x, &x0);
        let (c2, c1, c0) = (g.coeff_of(y, 2), g.coeff_of(y, 1), g.coeff_of(y, 0));
        let y0 = if c2.is_zero() {
            if c1.is_zero() {
                continue;
            }
            -(RatFunc::from(c0) / RatFunc::from(c1))
        } else {
            let disc = &(&c1 * &c1) - &(&MPoly::int(4) * &(&c2 * &c0));
            let Some(r) = sqrt(&disc) else { continue };
            RatFunc::from(&r - &c1) / RatFunc::from(&MPoly::int(2) * &c2)
        };
        // x = x0 + T, y = y0 - t T; F = T (A1(t) + T A2(t)).
        let tt = Var::ansatz("T#");
        let xs = RatFunc::from(&MPoly::constant(x0.clone()) + &MPoly::var(tt));
        let ys = &y0 - &(&RatFunc::var(t) * &RatFunc::var(tt));
        let on_line = RatFunc::from(f.clone()).substitute(&[(x, xs), (y, ys)]).ok()?;
        let num = on_line.num();
        let a1 = num.coeff_of(tt, 1);
        let a2 = num.coeff_of(tt, 2);
        if !num.coeff_of(tt, 0).is_zero() || a2.is_zero() || a1.is_zero() {
            continue;
        }
        let big_t = -(RatFunc::from(a1) / RatFunc::from(a2));
        let cx = &RatFunc::constant(x0) + &big_t;
        let cy = &y0 - &(&RatFunc::var(t) * &big_t);
        return Some(vec![cx, cy]);
    }
    None
}

/// Generic injectivity: the gcd of `num(chi_i(t) - chi_i(s))` has degree 1 in `t`.
pub fn check_properness(cp: &CurveParam, f: &MPoly, trust_construction: bool) -> bool {
    if trust_construction && cp.proper == Some(Properness::ByConstruction) {
        return true;
    }
    let map: Vec<(Var, RatFunc)> = cp.vars.iter().copied().zip(cp.components.iter().cloned()).collect();
    if !substitute_poly(f, &map).is_zero() {
        return false;
    }
    is_injective(&cp.components, cp.param)
}

/// Degree-one gcd criterion for a tuple of rational functions of `t`.
pub fn is_injective(components: &[RatFunc], t: Var) -> bool {
    let s = Var::ansatz("s#");
    let mut g = MPoly::zero();
    for c in components {
        let shifted = c.substitute(&[(t, RatFunc::var(s))]).expect("renaming cannot create a pole");
        let d = c - &shifted;
        if !d.is_zero() {
            g = gcd(&g, d.num());
        }
    }
    !g.is_zero() && g.deg(t) == 1
}
