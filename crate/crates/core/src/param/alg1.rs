//! Parametrizations with `gamma_0..gamma_{h-1}` over the constants and
//! `gamma_h` rational (or affine) in the input.

use num_bigint::BigInt;

use super::curve::{check_properness, is_injective, parametrize_plane_curve, CurveOutcome, CurveParam};
use super::triangular::{triangular_zero_dim_solve, Branch, TriOutcome};
use crate::arith::ratfunc::substitute_poly;
use crate::arith::{MPoly, RatFunc, Rational, Var};
use crate::dynsys::{check_dominance, Parametrization, RealizationMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alg1Options {
    pub point_height: u32,
}

impl Default for Alg1Options {
    fn default() -> Self {
        Alg1Options { point_height: super::curve::DEFAULT_POINT_HEIGHT }
    }
}

/// Shape of the ansatz for `z_h`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzSpec {
    pub d0: u32,
    pub d1: u32,
    /// `u -> u + shift` was applied before building the ansatz.
    pub shift: u32,
    /// `a_0..a_{d0}` followed by `b_1..b_{d1}`.
    pub unknowns: Vec<Var>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Alg1Result {
    pub gamma: Parametrization,
    pub spec: AnsatzSpec,
    /// Ansatz unknowns evaluated on the chosen branch, in the original input.
    pub ansatz_values: Vec<(Var, RatFunc)>,
    /// For `h = 1`: generic injectivity of `gamma` in `x1`.
    pub proper: Option<bool>,
    pub diagnostics: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Alg1Outcome {
    Found(Alg1Result),
    No(Vec<String>),
    Unsupported(String, Vec<String>),
}

/// Runs the special-parametrization algorithm on `p(z_0, ..., z_h, u)`.
///
/// `coords` are `z_0..z_h`; all other symbols except `input` are constants.
pub fn algorithm1(
    p: &MPoly,
    coords: &[Var],
    input: Var,
    mode: RealizationMode,
    opts: &Alg1Options,
) -> Alg1Outcome {
    let mut diag = Vec::new();
    let h = coords.len() - 1;
    let zh = coords[h];
    if p.is_zero() || !p.contains(zh) {
        return Alg1Outcome::Unsupported(format!("polynomial does not involve {zh}"), diag);
    }
    let d = p.deg(zh);
    let ad = p.coeff_of(zh, d);
    let shift = (0u32..)
        .find(|&c| !ad.eval(input, &Rational::from_integer(BigInt::from(c))).is_zero())
        .unwrap();
    let u_poly = MPoly::var(input);
    let shifted = if shift == 0 {
        p.clone()
    } else {
        p.subs(input, &(&u_poly + &MPoly::int(shift as i64)))
    };
    let coeffs = shifted.coeffs_in(zh);
    let d0 = coeffs[0].degree_in(input).max(0) as u32;
    let d1 = coeffs[d as usize].deg(input);
    let (num, den, unknowns) = ansatz(mode, d0, d1, input);
    diag.push(format!("shift {shift}, d0 = {d0}, d1 = {d1}"));
    let spec = AnsatzSpec { d0, d1, shift, unknowns: unknowns.clone() };
    // Q = sum A_k N^k D^(d-k).
    let mut q = MPoly::zero();
    let mut npow = vec![MPoly::one()];
    let mut dpow = vec![MPoly::one()];
    for k in 1..=d as usize {
        npow.push(&npow[k - 1] * &num);
        dpow.push(&dpow[k - 1] * &den);
    }
    for (k, a) in coeffs.iter().enumerate() {
        if !a.is_zero() {
            q = &q + &(&(a * &npow[k]) * &dpow[d as usize - k]);
        }
    }
    let eqs: Vec<MPoly> = q.coeffs_in(input).into_iter().filter(|c| !c.is_zero()).collect();
    let sol = match triangular_zero_dim_solve(&eqs, &unknowns) {
        TriOutcome::Solved(s) => s,
        TriOutcome::Unsupported(r) => return Alg1Outcome::Unsupported(r, diag),
    };
    diag.extend(sol.notes.iter().cloned());
    let mut all_certified = sol.complete;
    let xs: Vec<Var> = (1..=h as u32).map(Var::x).collect();
    for (bi, branch) in sol.branches.iter().enumerate() {
        let alpha = match chart(branch, &coords[..h], &xs, opts) {
            Ok(a) => a,
            Err(r) => {
                diag.push(format!("branch {bi}: {r}"));
                all_certified = false;
                continue;
            }
        };
        match assemble(p, coords, input, &alpha, branch, &num, &den, &unknowns, shift, &xs) {
            Ok((gamma, values)) => {
                diag.push(format!("branch {bi}: parametrization found"));
                let proper = (h == 1).then(|| {
                    let cp = CurveParam {
                        vars: coords.to_vec(),
                        components: gamma.gamma.clone(),
                        param: xs[0],
                        proper: None,
                    };
                    check_properness(&cp, p, false)
                });
                return Alg1Outcome::Found(Alg1Result { gamma, spec, ansatz_values: values, proper, diagnostics: diag });
            }
            Err(r) => {
                diag.push(format!("branch {bi}: {r}"));
                all_certified = false;
            }
        }
    }
    if all_certified {
        diag.push("every branch certified empty".into());
        Alg1Outcome::No(diag)
    } else {
        Alg1Outcome::Unsupported("no branch produced a parametrization".into(), diag)
    }
}

/// Numerator and denominator of the ansatz, with its unknowns.
fn ansatz(mode: RealizationMode, d0: u32, d1: u32, input: Var) -> (MPoly, MPoly, Vec<Var>) {
    let u = MPoly::var(input);
    let (d0, d1) = match mode {
        RealizationMode::Rational => (d0, d1),
        RealizationMode::InputAffine => (1, 0),
    };
    let a: Vec<Var> = (0..=d0).map(|i| Var::ansatz(&format!("a{i}"))).collect();
    let b: Vec<Var> = (1..=d1).map(|j| Var::ansatz(&format!("b{j}"))).collect();
    let mut num = MPoly::zero();
    for (i, v) in a.iter().enumerate() {
        num = &num + &(&MPoly::var(*v) * &u.pow(i as u32));
    }
    let mut den = MPoly::one();
    for (j, v) in b.iter().enumerate() {
        den = &den + &(&MPoly::var(*v) * &u.pow(j as u32 + 1));
    }
    (num, den, a.into_iter().chain(b).collect())
}

/// Values of `z_0..z_{h-1}` and `w` on a branch, in terms of `x1..xh`.
pub(crate) fn chart(branch: &Branch, base: &[Var], xs: &[Var], opts: &Alg1Options) -> Result<Vec<(Var, RatFunc)>, String> {
    let identity: Vec<(Var, RatFunc)> = base.iter().zip(xs).map(|(z, x)| (*z, RatFunc::var(*x))).collect();
    let Some((w, r)) = &branch.w else {
        return Ok(identity);
    };
    let (w, r) = (*w, r);
    if r.deg(w) == 1 {
        let ident_poly: Vec<(Var, RatFunc)> = identity.clone();
        let a = substitute_poly(&r.coeff_of(w, 1), &ident_poly);
        let b = substitute_poly(&r.coeff_of(w, 0), &ident_poly);
        let mut out = identity;
        out.push((w, -(b / a)));
        return Ok(out);
    }
    if let Some(i) = base.iter().position(|z| r.deg(*z) == 1) {
        let zi = base[i];
        let mut free: Vec<Var> = base.iter().copied().filter(|&z| z != zi).collect();
        free.push(w);
        let map: Vec<(Var, RatFunc)> = free.iter().zip(xs).map(|(z, x)| (*z, RatFunc::var(*x))).collect();
        let a = substitute_poly(&r.coeff_of(zi, 1), &map);
        let b = substitute_poly(&r.coeff_of(zi, 0), &map);
        if a.is_zero() {
            return Err(format!("degenerate chart solving for {zi}"));
        }
        let mut out = map;
        out.push((zi, -(b / a)));
        return Ok(out);
    }
    if base.len() == 1 {
        return match parametrize_plane_curve(r, [base[0], w], xs[0], opts.point_height) {
            CurveOutcome::Param(cp) => Ok(vec![(base[0], cp.components[0].clone()), (w, cp.components[1].clone())]),
            CurveOutcome::No(r) => Err(format!("curve not rational: {r}")),
            CurveOutcome::Unsupported(r) => Err(r),
        };
    }
    Err(format!("no parametrization strategy for a hypersurface of dimension {}", base.len()))
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    p: &MPoly,
    coords: &[Var],
    input: Var,
    alpha: &[(Var, RatFunc)],
    branch: &Branch,
    num: &MPoly,
    den: &MPoly,
    unknowns: &[Var],
    shift: u32,
    xs: &[Var],
) -> Result<(Parametrization, Vec<(Var, RatFunc)>), String> {
    let h = coords.len() - 1;
    let mut values = Vec::new();
    for (v, expr) in &branch.values {
        let val = expr.substitute(alpha).map_err(|_| format!("ansatz value {v} has a pole on the branch"))?;
        values.push((*v, val));
    }
    for v in unknowns {
        if !values.iter().any(|(u, _)| u == v) {
            let val = alpha.iter().find(|(u, _)| u == v).map(|(_, r)| r.clone());
            values.push((*v, val.ok_or_else(|| format!("no value for {v}"))?));
        }
    }
    let zh = substitute_poly(num, &values) / substitute_poly(den, &values);
    let unshift = &RatFunc::var(input) - &RatFunc::int(shift as i64);
    let zh = if shift == 0 { zh } else { zh.substitute(&[(input, unshift.clone())]).map_err(|_| "pole undoing the shift")? };
    let values: Vec<(Var, RatFunc)> = if shift == 0 {
        values
    } else {
        values
            .into_iter()
            .map(|(v, r)| (v, r.substitute(&[(input, unshift.clone())]).unwrap_or(r)))
            .collect()
    };
    let mut gamma: Vec<RatFunc> = coords[..h]
        .iter()
        .map(|z| alpha.iter().find(|(u, _)| u == z).map(|(_, r)| r.clone()).unwrap())
        .collect();
    gamma.push(zh);
    let map: Vec<(Var, RatFunc)> = coords.iter().copied().zip(gamma.iter().cloned()).collect();
    if !substitute_poly(p, &map).is_zero() {
        return Err("result is not on the hypersurface".into());
    }
    let param = Parametrization { coords: xs.to_vec(), gamma };
    if !check_dominance(&param) {
        return Err("result is not dominant".into());
    }
    Ok((param, values))
}

/// Whether an `h = 1` parametrization is generically injective in `x1`.
pub fn gamma_is_proper(gamma: &Parametrization) -> bool {
    gamma.coords.len() == 1 && is_injective(&gamma.gamma, gamma.coords[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    fn ys(h: u32) -> Vec<Var> {
        (0..=h).map(Var::output).collect()
    }

    fn found(p: &str, h: u32, mode: RealizationMode) -> Alg1Result {
        match algorithm1(&pp(p), &ys(h), Var::input(0), mode, &Alg1Options::default()) {
            Alg1Outcome::Found(r) => r,
            other => panic!("unexpected {other:?}"),
        }
    }

    const P_PP: &str = "y*y'' - k1*k3*y^2 + k1*k4*y^3 + k3*y*y' + k5*k2*y^2*u - k4*y^2*y' - y'^2";

    #[test]
    fn predator_prey() {
        for mode in [RealizationMode::Rational, RealizationMode::InputAffine] {
            let r = found(P_PP, 2, mode);
            assert_eq!((r.spec.d0, r.spec.d1, r.spec.shift), (1, 0, 0));
            let a0 = "-k1*k4*x1^2 + k1*k3*x1 + k4*x1*x2 - k3*x2 + x2^2/x1";
            assert_eq!(r.gamma.gamma, vec![pr("x1"), pr("x2"), &pr("-k2*k5*x1*u") + &pr(a0)]);
            assert!(r.ansatz_values.contains(&(Var::ansatz("a1"), pr("-k2*k5*x1"))));
            assert!(r.ansatz_values.contains(&(Var::ansatz("a0"), pr(a0))));
        }
    }

    #[test]
    fn linear_in_top_coordinate() {
        let r = found("y' - y*u", 1, RealizationMode::Rational);
        assert_eq!(r.gamma.gamma, vec![pr("x1"), pr("x1*u")]);
        assert_eq!(r.proper, Some(true));
    }

    #[test]
    fn shift_is_applied_and_undone() {
        // A_d = u, so u -> u + 1 is needed before the ansatz.
        let r = found("u*y' - y", 1, RealizationMode::Rational);
        assert_eq!(r.spec.shift, 1);
        assert_eq!(r.spec.d1, 1);
        assert_eq!(r.gamma.gamma, vec![pr("x1"), pr("x1/u")]);
        assert_eq!(found("u*y' - y", 1, RealizationMode::Rational).proper, Some(true));
    }

    #[test]
    fn affine_mode_refuses_rational_input_dependence() {
        let out = algorithm1(&pp("u*y' - y"), &ys(1), Var::input(0), RealizationMode::InputAffine, &Alg1Options::default());
        assert!(matches!(out, Alg1Outcome::No(_)), "{out:?}");
    }

    #[test]
    fn conic_branch_for_order_one() {
        // y'^2 + y^2 = 1: the circle, with the input absent.
        let r = found("y'^2 + y^2 - 1", 1, RealizationMode::Rational);
        let map: Vec<(Var, RatFunc)> = ys(1).into_iter().zip(r.gamma.gamma.iter().cloned()).collect();
        assert!(substitute_poly(&pp("y'^2 + y^2 - 1"), &map).is_zero());
        assert_eq!(r.proper, Some(true));
    }

    #[test]
    fn quadratic_in_top_coordinate_with_input() {
        let out = algorithm1(&pp("y' - u^2*y - u"), &ys(1), Var::input(0), RealizationMode::InputAffine, &Alg1Options::default());
        assert!(matches!(out, Alg1Outcome::No(_)), "{out:?}");
        let r = found("y' - u^2*y - u", 1, RealizationMode::Rational);
        assert_eq!(r.gamma.gamma[1], pr("x1*u^2 + u"));
    }
}
