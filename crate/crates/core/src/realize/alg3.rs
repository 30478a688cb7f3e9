//! Input-affine realizations of first-order equations `P(y, y', u, u')`.

use super::{first_order_shape, RealizeError, RealizeOptions, RealizeOutcome};
use crate::arith::factor::{factor, factors_involving};
use crate::arith::ratfunc::substitute_poly;
use crate::arith::{ff_solve, FFMatrix, MPoly, RatFunc, SolveResult, Var};
use crate::dynsys::{verify_realization, DynSystem};
use crate::param::alg1::chart;
use crate::param::{check_properness, parametrize_plane_curve, triangular_zero_dim_solve, Alg1Options, CurveOutcome, TriOutcome};

pub fn algorithm3(p: &MPoly, opts: &RealizeOptions) -> Result<RealizeOutcome, RealizeError> {
    first_order_shape(p)?;
    let (y, y1, u, u1) = (Var::output(0), Var::output(1), Var::input(0), Var::input(1));
    let [a0, a1, b0, b1, b2, s] = ["a0", "a1", "b0", "b1", "b2", "s"].map(Var::ansatz);
    let x = Var::x(1);
    let m = MPoly::var;
    let ysub = &(&m(a1) * &m(u)) + &m(a0);
    let dysub = &(&(&(&m(b2) * &m(u).pow(2)) + &(&m(b1) * &m(u))) + &m(b0)) + &(&m(a1) * &m(u1));
    let pt = p.subs_many(&[(y, ysub), (y1, dysub)]);
    let q = pt.lc_in(u1).lc_in(u);
    let mut diag = vec![format!("q = {q}")];
    if q.contains_any(&[b0, b1, b2]) {
        return Ok(RealizeOutcome::unsupported("leading coefficient depends on the rate unknowns", diag));
    }
    let fq = factor(&q);
    let mut certified = fq.is_complete();
    for q0 in factors_involving(&fq, &[a0, a1]) {
        let cp = match parametrize_plane_curve(&q0, [a0, a1], s, opts.point_height) {
            CurveOutcome::Param(cp) => cp,
            CurveOutcome::No(r) => {
                diag.push(format!("q0 = {q0}: {r}"));
                continue;
            }
            CurveOutcome::Unsupported(r) => {
                diag.push(format!("q0 = {q0}: {r}"));
                certified = false;
                continue;
            }
        };
        if !check_properness(&cp, &q0, true) {
            diag.push(format!("q0 = {q0}: parametrization is not proper"));
            certified = false;
        }
        let (a0s, a1s) = (cp.components[0].clone(), cp.components[1].clone());
        let p0 = substitute_poly(&pt, &[(a0, a0s.clone()), (a1, a1s.clone())]).num().clone();
        let eqs: Vec<MPoly> = p0.coeffs_in_vars(&[u, u1]).into_iter().map(|(_, c)| c).collect();
        let sol = match triangular_zero_dim_solve(&eqs, &[b0, b1, b2]) {
            TriOutcome::Solved(sol) => sol,
            TriOutcome::Unsupported(r) => {
                diag.push(format!("q0 = {q0}: {r}"));
                certified = false;
                continue;
            }
        };
        certified &= sol.complete;
        diag.extend(sol.notes.iter().map(|n| format!("q0 = {q0}: {n}")));
        for branch in &sol.branches {
            let alpha = match chart(branch, &[s], &[x], &Alg1Options { point_height: opts.point_height }) {
                Ok(a) => a,
                Err(r) => {
                    diag.push(format!("q0 = {q0}: {r}"));
                    certified = false;
                    continue;
                }
            };
            let Some((sx, bs)) = component(&alpha, branch, s, &[b0, b1, b2]) else {
                certified = false;
                continue;
            };
            debug_assert!(eqs.iter().all(|e| {
                let mut map = vec![(s, sx.clone())];
                map.extend([b0, b1, b2].into_iter().zip(bs.iter().cloned()));
                substitute_poly(e, &map).is_zero()
            }));
            let (Ok(a0x), Ok(a1x)) = (a0s.substitute(&[(s, sx.clone())]), a1s.substitute(&[(s, sx.clone())])) else {
                continue;
            };
            let Some((c0, c1)) = rates(&a0x, &a1x, &bs, x) else {
                diag.push(format!("q0 = {q0}: rate system is inconsistent"));
                continue;
            };
            let g = &(&a1x * &RatFunc::var(u)) + &a0x;
            let f = &(&c1 * &RatFunc::var(u)) + &c0;
            let Ok(sys) = DynSystem::new(vec![x], vec![f], g) else { continue };
            if verify_realization(&sys, p) == Ok(true) {
                diag.push(format!("q0 = {q0}: realized"));
                return Ok(RealizeOutcome::realized(sys, diag));
            }
            diag.push(format!("q0 = {q0}: candidate does not verify"));
        }
    }
    Ok(if certified { RealizeOutcome::no(diag) } else { RealizeOutcome::unsupported("some branch was not decided", diag) })
}

/// `s(x)` and `(b0, b1, b2)(x)` on one component.
fn component(alpha: &[(Var, RatFunc)], branch: &crate::param::Branch, s: Var, bs: &[Var]) -> Option<(RatFunc, Vec<RatFunc>)> {
    let sx = alpha.iter().find(|(v, _)| *v == s)?.1.clone();
    let values = bs
        .iter()
        .map(|b| {
            let expr = branch.values.iter().find(|(v, _)| v == b).map(|(_, e)| e.clone())?;
            expr.substitute(alpha).ok()
        })
        .collect::<Option<Vec<_>>>()?;
    Some((sx, values))
}

/// Solves `b2 = a1' c1`, `b1 = a1' c0 + a0' c1`, `b0 = a0' c0` for `(c0, c1)`.
pub fn rates(a0: &RatFunc, a1: &RatFunc, b: &[RatFunc], x: Var) -> Option<(RatFunc, RatFunc)> {
    let (d0, d1) = (a0.derivative(x), a1.derivative(x));
    let zero = RatFunc::zero();
    let m = FFMatrix::from_rows(vec![vec![zero.clone(), d1.clone()], vec![d1, d0.clone()], vec![d0, zero]]);
    let rhs = vec![b[2].clone(), b[1].clone(), b[0].clone()];
    match ff_solve(&m, &rhs) {
        SolveResult::Unique(z) => Some((z[0].clone(), z[1].clone())),
        SolveResult::Space { particular, .. } => Some((particular[0].clone(), particular[1].clone())),
        SolveResult::Inconsistent => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};
    use crate::realize::Tag;

    fn run(p: &str) -> RealizeOutcome {
        algorithm3(&pp(p), &RealizeOptions::default()).unwrap()
    }

    fn parts(out: &RealizeOutcome) -> (RatFunc, RatFunc) {
        let s = out.system.as_ref().unwrap();
        (s.f()[0].clone(), s.g().clone())
    }

    #[test]
    fn rate_equals_input() {
        let out = run("u*y' - y*u' - u^3");
        assert_eq!(out.tag, Tag::Realized, "{:?}", out.diagnostics);
        assert_eq!(parts(&out), (pr("u"), pr("x1*u")));
    }

    #[test]
    fn degenerate_assembly() {
        let out = run("y' - u'");
        assert_eq!(out.tag, Tag::Realized, "{:?}", out.diagnostics);
        assert_eq!(parts(&out), (pr("0"), pr("x1 + u")));
    }

    #[test]
    fn product_output() {
        let out = run("u*y' - y*u'");
        assert_eq!(out.tag, Tag::Realized, "{:?}", out.diagnostics);
        assert_eq!(parts(&out), (pr("0"), pr("x1*u")));
    }

    #[test]
    fn quadratic_output_is_not_affine() {
        // y = x + u^2 with x' = 0.
        let out = run("y' - 2*u*u'");
        assert_eq!(out.tag, Tag::No, "{:?}", out.diagnostics);
    }

    #[test]
    fn rate_assembly_identities() {
        let x = Var::x(1);
        let (c0, c1) = rates(&pr("x1^2"), &pr("x1"), &[pr("2*x1^3"), pr("x1^2 + 2*x1*k1"), pr("k1")], x).unwrap();
        assert_eq!((c0, c1), (pr("x1^2"), pr("k1")));
        assert!(rates(&pr("x1^2"), &pr("x1"), &[pr("1"), pr("0"), pr("1")], x).is_none());
    }
}
