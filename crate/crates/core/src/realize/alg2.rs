//! Rational realizations of first-order equations `P(y, y', u, u')`.

use super::srgs::{constant_var, slope_var, srgs_solve, SrgsOutcome};
use super::{first_order_shape, RealizeError, RealizeOptions, RealizeOutcome};
use crate::arith::factor::{factor, factors_involving};
use crate::arith::ratfunc::substitute_poly;
use crate::arith::{MPoly, Var};
use crate::dynsys::{verify_realization, DynSystem, RealizationMode};
use crate::param::{algorithm1, Alg1Options, Alg1Outcome};

pub fn algorithm2(p: &MPoly, opts: &RealizeOptions) -> Result<RealizeOutcome, RealizeError> {
    first_order_shape(p)?;
    let (y, y1, u, u1) = (Var::output(0), Var::output(1), Var::input(0), Var::input(1));
    let (a, b, c) = (slope_var(), Var::ansatz("b"), constant_var());
    let x = Var::x(1);
    let q = p.subs(y1, &(&(&MPoly::var(a) * &MPoly::var(u1)) + &MPoly::var(b)));
    let c0 = q.lc_in(u1);
    let c1 = q.coeff_of(u1, 0);
    let mut diag = vec![format!("c0 = {c0}"), format!("c1 = {c1}")];
    let mut certified = true;
    let f0 = factor(&c0);
    let f1 = factor(&c1);
    certified &= f0.is_complete() && f1.is_complete();
    for h0 in factors_involving(&f0, &[a]) {
        let y0 = match srgs_solve(&h0, opts.riccati_degree) {
            SrgsOutcome::Solved(s) => s.y0,
            SrgsOutcome::No(r) => {
                diag.push(format!("h0 = {h0}: no SRGS ({r})"));
                continue;
            }
            SrgsOutcome::Unsupported(r) => {
                diag.push(format!("h0 = {h0}: SRGS unsupported ({r})"));
                certified = false;
                continue;
            }
        };
        diag.push(format!("h0 = {h0}: y0 = {y0}"));
        for h1 in factors_involving(&f1, &[b]) {
            let n = substitute_poly(&h1, &[(y, y0.clone())]).num().clone();
            let fac = factor(&n);
            certified &= fac.is_complete();
            for nf in factors_involving(&fac, &[b]) {
                let alg1 = algorithm1(&nf, &[c, b], u, RealizationMode::Rational, &Alg1Options { point_height: opts.point_height });
                let r = match alg1 {
                    Alg1Outcome::Found(r) => r,
                    Alg1Outcome::No(_) => {
                        diag.push(format!("N = {nf}: no parametrization"));
                        continue;
                    }
                    Alg1Outcome::Unsupported(reason, _) => {
                        diag.push(format!("N = {nf}: {reason}"));
                        certified = false;
                        continue;
                    }
                };
                if r.proper == Some(false) {
                    diag.push(format!("N = {nf}: parametrization is not proper"));
                    certified = false;
                }
                let (cx, bx) = (&r.gamma.gamma[0], &r.gamma.gamma[1]);
                let Ok(g) = y0.substitute(&[(c, cx.clone())]) else { continue };
                let dg = g.derivative(x);
                if dg.is_zero() {
                    diag.push(format!("N = {nf}: output independent of the state"));
                    continue;
                }
                let f = bx / &dg;
                let Ok(sys) = DynSystem::new(vec![x], vec![f], g) else { continue };
                if verify_realization(&sys, p) == Ok(true) {
                    diag.push(format!("N = {nf}: realized"));
                    return Ok(RealizeOutcome::realized(sys, diag));
                }
                diag.push(format!("N = {nf}: candidate does not verify"));
            }
        }
    }
    Ok(if certified { RealizeOutcome::no(diag) } else { RealizeOutcome::unsupported("some branch was not decided", diag) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr, RatFunc};
    use crate::realize::Tag;

    fn parts(out: &RealizeOutcome) -> (RatFunc, RatFunc) {
        let s = out.system.as_ref().unwrap();
        (s.f()[0].clone(), s.g().clone())
    }

    fn run(p: &str) -> RealizeOutcome {
        algorithm2(&pp(p), &RealizeOptions::default()).unwrap()
    }

    #[test]
    fn affine_output_with_quadratic_rate() {
        let out = run("y' - (y - u)*u^2 - u'");
        assert_eq!(out.tag, Tag::Realized);
        assert_eq!(parts(&out), (pr("x1*u^2"), pr("x1 + u")));
    }

    #[test]
    fn product_output() {
        let out = run("u*y' - y*u'");
        assert_eq!(out.tag, Tag::Realized);
        assert_eq!(parts(&out), (pr("0"), pr("x1*u")));
    }

    #[test]
    fn wrong_order_is_a_precondition_error() {
        let p = pp("u*y'' - y^2*u^2 - y'*u'");
        assert!(matches!(algorithm2(&p, &RealizeOptions::default()), Err(RealizeError::Precondition(_))));
        assert!(algorithm2(&pp("y' - y"), &RealizeOptions::default()).is_err());
    }

    #[test]
    fn no_rational_output_family() {
        // c0 = a - y: the output would have to satisfy dy/du = y.
        let out = run("y' - y*u' - 1");
        assert_eq!(out.tag, Tag::No, "{:?}", out.diagnostics);
    }

    #[test]
    fn rational_rate() {
        // x' = 1/x, y = x*u.
        let out = run("u*y*y' - y^2*u' - u^3");
        assert_eq!(out.tag, Tag::Realized, "{:?}", out.diagnostics);
    }
}
