//! Zero-dimensional solving by triangular linear elimination.
//!
//! Every unknown but one (`w`) is removed with an equation linear in it; what
//! remains is a univariate `q(w)` over the base field, split into irreducible
//! factors. When this is impossible for every choice of `w`, the system is
//! reported as unsupported.

use crate::arith::factor::{factor, FactorOutcome};
use crate::arith::gcd::gcd;
use crate::arith::ratfunc::substitute_poly;
use num_bigint::BigInt;

use crate::arith::{MPoly, RatFunc, Rational, Var};

/// One irreducible component over the base field.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    /// Separating unknown and its minimal polynomial factor; `None` when every unknown is solved.
    pub w: Option<(Var, MPoly)>,
    /// Every unknown as a rational function of `w` and the base field.
    pub values: Vec<(Var, RatFunc)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangularSolution {
    pub branches: Vec<Branch>,
    /// False when a pivot could vanish or a factorization was incomplete.
    pub complete: bool,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum TriOutcome {
    Solved(TriangularSolution),
    Unsupported(String),
}

const MAX_COMBINATION: i64 = 5;

/// Solves `eqs = 0` for `unknowns`; all other symbols belong to the base field.
pub fn triangular_zero_dim_solve(eqs: &[MPoly], unknowns: &[Var]) -> TriOutcome {
    let eqs: Vec<MPoly> = eqs.iter().filter(|e| !e.is_zero()).cloned().collect();
    if unknowns.is_empty() {
        let consistent = eqs.iter().all(|e| !e.contains_any(unknowns) && e.is_zero());
        let branches = if consistent { vec![Branch { w: None, values: vec![] }] } else { vec![] };
        return TriOutcome::Solved(TriangularSolution { branches, complete: true, notes: vec![] });
    }
    let mut last_err = String::new();
    for &w in unknowns {
        match eliminate(&eqs, unknowns, w) {
            Ok(sol) => return TriOutcome::Solved(sol),
            Err(e) => last_err = e,
        }
    }
    let fresh = Var::ansatz("w");
    for i in 0..unknowns.len() {
        for j in 0..unknowns.len() {
            if i == j {
                continue;
            }
            for c in 1..=MAX_COMBINATION {
                // w = v_i + c v_j, so v_i = w - c v_j.
                let vi = unknowns[i];
                let vj = unknowns[j];
                let sub = &MPoly::var(fresh) - &MPoly::var(vj).scale(&Rational::from_integer(BigInt::from(c)));
                let changed: Vec<MPoly> = eqs.iter().map(|e| e.subs(vi, &sub)).collect();
                let mut vars: Vec<Var> = unknowns.iter().copied().filter(|&v| v != vi).collect();
                vars.push(fresh);
                if let Ok(mut sol) = eliminate(&changed, &vars, fresh) {
                    for b in &mut sol.branches {
                        let vj_val = lookup(&b.values, vj);
                        let vi_val = &RatFunc::var(fresh) - &vj_val.scale(&Rational::from_integer(BigInt::from(c)));
                        b.values.retain(|(v, _)| *v != fresh);
                        b.values.push((vi, vi_val));
                        b.values.sort_by_key(|(v, _)| unknowns.iter().position(|u| u == v));
                    }
                    sol.notes.push(format!("separating element w = {vi} + {c}*{vj}"));
                    return TriOutcome::Solved(sol);
                }
            }
        }
    }
    TriOutcome::Unsupported(format!("no triangular-linear elimination path ({last_err})"))
}

fn lookup(values: &[(Var, RatFunc)], v: Var) -> RatFunc {
    values.iter().find(|(u, _)| *u == v).map(|(_, r)| r.clone()).unwrap_or_else(|| RatFunc::var(v))
}

/// Eliminates every unknown except `keep`.
fn eliminate(eqs: &[MPoly], unknowns: &[Var], keep: Var) -> Result<TriangularSolution, String> {
    let mut eqs: Vec<MPoly> = eqs.to_vec();
    let mut remaining: Vec<Var> = unknowns.to_vec();
    let mut solved: Vec<(Var, RatFunc)> = Vec::new();
    let mut complete = true;
    let mut notes = Vec::new();
    loop {
        eqs.retain(|e| !e.is_zero());
        if eqs.iter().any(|e| !e.contains_any(&remaining)) {
            notes.push("inconsistent over the base field".into());
            return Ok(TriangularSolution { branches: vec![], complete, notes });
        }
        let candidates: Vec<Var> = remaining.iter().copied().filter(|&v| v != keep).collect();
        if candidates.is_empty() {
            break;
        }
        let mut best: Option<(usize, Var, bool, usize)> = None;
        for (k, e) in eqs.iter().enumerate() {
            for &v in &candidates {
                if e.deg(v) != 1 {
                    continue;
                }
                let clean = !e.coeff_of(v, 1).contains_any(&remaining);
                let key = (clean, std::cmp::Reverse(e.len()));
                let better = match best {
                    None => true,
                    Some((_, _, bc, bl)) => key > (bc, std::cmp::Reverse(bl)),
                };
                if better {
                    best = Some((k, v, clean, e.len()));
                }
            }
        }
        let Some((k, v, clean, _)) = best else {
            return Err(format!("no equation is linear in any of {candidates:?}"));
        };
        let e = eqs.swap_remove(k);
        let a = e.coeff_of(v, 1);
        let b = e.coeff_of(v, 0);
        if !clean {
            complete = false;
            notes.push(format!("pivot for {v} depends on other unknowns; its vanishing branch is skipped"));
        }
        let value = -(RatFunc::from(b) / RatFunc::from(a));
        eqs = eqs
            .iter()
            .map(|q| if q.contains(v) { substitute_poly(q, &[(v, value.clone())]).num().clone() } else { q.clone() })
            .collect();
        solved.push((v, value));
        remaining.retain(|&u| u != v);
    }
    let mut q = MPoly::zero();
    for e in &eqs {
        q = gcd(&q, e);
    }
    if q.is_zero() || !q.contains(keep) {
        if eqs.is_empty() {
            return Err(format!("{keep} is unconstrained; the system is not zero-dimensional"));
        }
        notes.push("inconsistent over the base field".into());
        return Ok(TriangularSolution { branches: vec![], complete, notes });
    }
    let fac = factor(&q);
    if let FactorOutcome::Unsupported { reason, .. } = &fac {
        complete = false;
        notes.push(format!("q(w) only square-free factored: {reason}"));
    }
    let mut branches = Vec::new();
    for (r, _) in fac.pieces() {
        if !r.contains(keep) {
            continue;
        }
        let values = back_substitute(&solved, keep, unknowns)?;
        branches.push(Branch { w: Some((keep, r.clone())), values });
    }
    Ok(TriangularSolution { branches, complete, notes })
}

fn back_substitute(solved: &[(Var, RatFunc)], keep: Var, unknowns: &[Var]) -> Result<Vec<(Var, RatFunc)>, String> {
    let mut known: Vec<(Var, RatFunc)> = vec![(keep, RatFunc::var(keep))];
    for (v, expr) in solved.iter().rev() {
        let val = expr.substitute(&known).map_err(|_| format!("pole while back-substituting {v}"))?;
        known.push((*v, val));
    }
    let mut out: Vec<(Var, RatFunc)> = unknowns.iter().filter_map(|u| known.iter().find(|(v, _)| v == u).cloned()).collect();
    out.sort_by_key(|(v, _)| unknowns.iter().position(|u| u == v));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    fn a(n: &str) -> Var {
        Var::ansatz(n)
    }

    fn solved(eqs: &[&str], unknowns: &[&str]) -> TriangularSolution {
        let eqs: Vec<MPoly> = eqs.iter().map(|e| pp(e)).collect();
        let unknowns: Vec<Var> = unknowns.iter().map(|u| a(u)).collect();
        match triangular_zero_dim_solve(&eqs, &unknowns) {
            TriOutcome::Solved(s) => s,
            TriOutcome::Unsupported(r) => panic!("unsupported: {r}"),
        }
    }

    #[test]
    fn predator_prey_coefficients() {
        let f1 = "k2*k5*y^2 + a1*y";
        let f0 = "k1*k4*y^3 - k1*k3*y^2 - k4*y^2*y' + k3*y*y' + a0*y - y'^2";
        let s = solved(&[f1, f0], &["a0", "a1"]);
        assert!(s.complete);
        assert_eq!(s.branches.len(), 1);
        let b = &s.branches[0];
        assert_eq!(b.w, Some((a("a0"), pp(f0).monic())));
        assert_eq!(b.values[1], (a("a1"), pr("-k2*k5*y")));
    }

    #[test]
    fn quadratic_last_unknown() {
        let s = solved(&["a^2 - z", "b - a"], &["a", "b"]);
        assert_eq!(s.branches.len(), 1);
        assert_eq!(s.branches[0].w, Some((a("a"), pp("a^2 - z"))));
        assert_eq!(s.branches[0].values, vec![(a("a"), pr("a")), (a("b"), pr("a"))]);
    }

    #[test]
    fn splits_into_branches() {
        let s = solved(&["a^2 - z^2", "b - a*z"], &["a", "b"]);
        assert_eq!(s.branches.len(), 2);
        assert!(s.complete);
    }

    #[test]
    fn no_linear_path_is_unsupported() {
        let eqs = vec![pp("a^2 + b^3 - z"), pp("a^3 + b^2 - z^2")];
        let out = triangular_zero_dim_solve(&eqs, &[a("a"), a("b")]);
        assert!(matches!(out, TriOutcome::Unsupported(_)));
    }

    #[test]
    fn inconsistency_is_certified() {
        let s = solved(&["a - z", "a - z - 1"], &["a"]);
        assert!(s.branches.is_empty());
        assert!(s.complete);
    }

    #[test]
    fn positive_dimension_is_unsupported() {
        let eqs = vec![pp("a + b - z")];
        assert!(matches!(triangular_zero_dim_solve(&eqs, &[a("a"), a("b")]), TriOutcome::Unsupported(_)));
    }

    #[test]
    fn dependent_pivot_marks_incomplete() {
        let s = solved(&["a*b - 1", "b^2 - z"], &["a", "b"]);
        assert!(!s.complete);
        assert_eq!(s.branches.len(), 1);
        assert_eq!(s.branches[0].values[1], (a("b"), pr("1/a")));
    }
}
