//! Differential polynomials in output and input jets.

use thiserror::Error;

use crate::arith::{ArithError, MPoly, RatFunc, Var, VarKind};

/// A differential polynomial is an ordinary polynomial whose jet variables
/// carry their derivative order; the jet range is whatever the operands use.
pub type DiffPoly = MPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffError {
    #[error("underivable symbol {0}")]
    Underivable(String),
}

/// Total derivative with every jet bumped one order.
pub fn total_derivative(p: &DiffPoly) -> Result<DiffPoly, DiffError> {
    let mut out = MPoly::zero();
    for v in p.vars() {
        if v.kind() == VarKind::Parameter {
            continue;
        }
        let next = v.bumped().ok_or_else(|| DiffError::Underivable(v.to_string()))?;
        let dp = p.derivative(v);
        out = &out + &(&dp * &MPoly::var(next));
    }
    Ok(out)
}

fn input_jets<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Vec<Var> {
    vars.into_iter().copied().filter(|v| v.kind() == VarKind::Input).collect()
}

/// `D_u(r) = sum_j u^(j+1) dr/du^(j)`; everything else is a constant.
pub fn d_u(r: &RatFunc) -> RatFunc {
    let vars = r.vars();
    let mut out = RatFunc::zero();
    for v in input_jets(&vars) {
        let next = RatFunc::var(v.bumped().unwrap());
        out = &out + &(&r.derivative(v) * &next);
    }
    out
}

/// Largest jet order of `base` (output or input) in `p`, or -1 when absent.
pub fn ord(p: &DiffPoly, base: VarKind) -> i64 {
    p.vars()
        .iter()
        .filter(|v| v.kind() == base)
        .map(|v| v.index() as i64)
        .max()
        .unwrap_or(-1)
}

/// Same as [`ord`] for a rational function.
pub fn ord_rat(r: &RatFunc, base: VarKind) -> i64 {
    ord(r.num(), base).max(ord(r.den(), base))
}

/// Exact substitution; unassigned variables pass through.
pub fn substitute(p: &DiffPoly, assignment: &[(Var, RatFunc)]) -> Result<RatFunc, ArithError> {
    RatFunc::from(p.clone()).substitute(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    #[test]
    fn total_derivative_examples() {
        assert_eq!(total_derivative(&pp("y")).unwrap(), pp("y'"));
        assert_eq!(total_derivative(&pp("y*u")).unwrap(), pp("y'*u + y*u'"));
        assert_eq!(total_derivative(&pp("y^2 + u'")).unwrap(), pp("2*y*y' + u''"));
        assert_eq!(total_derivative(&pp("k1*y")).unwrap(), pp("k1*y'"));
        assert!(matches!(total_derivative(&pp("x1*y")), Err(DiffError::Underivable(_))));
        assert!(total_derivative(&pp("a*y")).is_err());
    }

    #[test]
    fn d_u_examples() {
        assert_eq!(d_u(&pr("u^2")), pr("2*u*u'"));
        assert_eq!(d_u(&pr("x1")), RatFunc::zero());
        assert_eq!(d_u(&pr("u*u'")), pr("u'^2 + u*u''"));
        assert_eq!(d_u(&pr("x1/u")), pr("-x1*u'/u^2"));
    }

    #[test]
    fn orders() {
        let p = pp("u*y'' - y^2*u^2 - y'*u'");
        assert_eq!(ord(&p, VarKind::Output), 2);
        assert_eq!(ord(&p, VarKind::Input), 1);
        assert_eq!(ord(&pp("5"), VarKind::Output), -1);
    }

    #[test]
    fn substitution() {
        let p = pp("y' - y");
        let s = substitute(&p, &[(Var::output(0), pr("x1")), (Var::output(1), pr("x1^2"))]).unwrap();
        assert_eq!(s, pr("x1^2 - x1"));
        assert_eq!(substitute(&pp("y"), &[]).unwrap(), pr("y"));
        let q = pp("1 + y");
        let r = RatFunc::from(MPoly::one()) / RatFunc::from(q);
        assert_eq!(r.substitute(&[(Var::output(0), pr("-1"))]), Err(ArithError::Pole));
    }
}
