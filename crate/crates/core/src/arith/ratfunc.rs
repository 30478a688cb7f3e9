//! Reduced fractions of polynomials.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::mpoly::MPoly;
use super::var::Var;
use super::{ArithError, Rational};

/// `num / den` with `gcd(num, den) = 1` and `lc(den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> RatFunc {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: MPoly::one(), den: MPoly::one() }
    }

    pub fn constant(c: Rational) -> RatFunc {
        RatFunc { num: MPoly::constant(c), den: MPoly::one() }
    }

    pub fn int(n: i64) -> RatFunc {
        RatFunc::from(MPoly::int(n))
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from(MPoly::var(v))
    }

    /// Builds and reduces `num / den`.
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFunc, ArithError> {
        if den.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(RatFunc::reduce(num, den))
    }

    fn reduce(num: MPoly, den: MPoly) -> RatFunc {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.constant_value() {
            return RatFunc { num: num.scale(&c.recip()), den: MPoly::one() };
        }
        let g = gcd(&num, &den);
        let (n, d) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        RatFunc::normalized(n, d)
    }

    fn normalized(num: MPoly, den: MPoly) -> RatFunc {
        let lc = den.lc();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MPoly, MPoly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_poly(&self) -> Option<&MPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.num.contains(v) || self.den.contains(v)
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Var> {
        let mut s = self.num.vars();
        s.extend(self.den.vars());
        s
    }

    pub fn recip(&self) -> Result<RatFunc, ArithError> {
        if self.num.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(RatFunc::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    pub fn derivative(&self, v: Var) -> RatFunc {
        if !self.contains(v) {
            return RatFunc::zero();
        }
        if self.den.is_one() {
            return RatFunc::from(self.num.derivative(v));
        }
        if !self.den.contains(v) {
            return RatFunc::reduce(self.num.derivative(v), self.den.clone());
        }
        // (n/d)' = (n' d - n d') / d^2; cancel with d first to keep the gcd small.
        let dn = self.num.derivative(v);
        let dd = self.den.derivative(v);
        let g = gcd(&self.den, &dd);
        let d_over_g = self.den.div_exact(&g).unwrap();
        let dd_over_g = dd.div_exact(&g).unwrap();
        let n = &(&dn * &d_over_g) - &(&self.num * &dd_over_g);
        RatFunc::reduce(n, &self.den * &d_over_g)
    }

    /// Replaces variables by rational functions; fails on a vanishing denominator.
    pub fn substitute(&self, map: &[(Var, RatFunc)]) -> Result<RatFunc, ArithError> {
        let n = substitute_poly(&self.num, map);
        let d = substitute_poly(&self.den, map);
        if d.is_zero() {
            return Err(ArithError::Pole);
        }
        Ok(&n / &d)
    }

    /// Degree of the numerator and denominator in `v`.
    pub fn degrees_in(&self, v: Var) -> (u32, u32) {
        (self.num.deg(v), self.den.deg(v))
    }
}

/// Substitutes rational functions into a polynomial with a single final reduction.
pub fn substitute_poly(p: &MPoly, map: &[(Var, RatFunc)]) -> RatFunc {
    let active: Vec<(Var, &RatFunc, u32)> = map
        .iter()
        .filter_map(|(v, r)| {
            let d = p.deg(*v);
            (d > 0).then_some((*v, r, d))
        })
        .collect();
    if active.is_empty() {
        return RatFunc::from(p.clone());
    }
    if active.iter().all(|(_, r, _)| r.is_polynomial()) {
        let pm: Vec<(Var, MPoly)> = active.iter().map(|(v, r, _)| (*v, r.num.clone())).collect();
        return RatFunc::from(p.subs_many(&pm));
    }
    // p(n/d) = sum c m(n) d^(E - e) / d^E, one factor per substituted variable.
    let mut num_pows: Vec<Vec<MPoly>> = Vec::new();
    let mut den_pows: Vec<Vec<MPoly>> = Vec::new();
    for (_, r, d) in &active {
        let mut np = vec![MPoly::one()];
        let mut dp = vec![MPoly::one()];
        for i in 1..=*d as usize {
            np.push(&np[i - 1] * &r.num);
            dp.push(&dp[i - 1] * &r.den);
        }
        num_pows.push(np);
        den_pows.push(dp);
    }
    let vars: Vec<Var> = active.iter().map(|a| a.0).collect();
    let mut num = MPoly::zero();
    for (outer, coeff) in p.coeffs_in_vars(&vars) {
        let mut t = coeff;
        for (k, (v, _, d)) in active.iter().enumerate() {
            let e = outer.exp(*v) as usize;
            if e > 0 {
                t = &t * &num_pows[k][e];
            }
            let rest = *d as usize - e;
            if rest > 0 {
                t = &t * &den_pows[k][rest];
            }
        }
        num = &num + &t;
    }
    let mut den = MPoly::one();
    for (k, (_, _, d)) in active.iter().enumerate() {
        den = &den * &den_pows[k][*d as usize];
    }
    RatFunc::reduce(num, den)
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> RatFunc {
        RatFunc { num: p, den: MPoly::one() }
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> RatFunc {
        RatFunc::var(v)
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from(&self.num + &rhs.num);
            }
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one() {
            let n = &(&self.num * &rhs.den) + &rhs.num;
            return RatFunc::normalized(n, rhs.den.clone());
        }
        if rhs.den.is_one() {
            let n = &self.num + &(&rhs.num * &self.den);
            return RatFunc::normalized(n, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let a = self.den.div_exact(&g).unwrap();
        let b = rhs.den.div_exact(&g).unwrap();
        let n = &(&self.num * &b) + &(&rhs.num * &a);
        if g.is_one() {
            return RatFunc::normalized(n, &self.den * &rhs.den);
        }
        RatFunc::reduce(n, &(&a * &b) * &g)
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = rhs.den.div_exact(&g1).unwrap();
        let n2 = rhs.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        RatFunc::normalized(&n1 * &n2, &d1 * &d2)
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    /// Panics on division by zero; use [`RatFunc::recip`] for a checked inverse.
    fn div(self, rhs: &'a RatFunc) -> RatFunc {
        self * &rhs.recip().expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        &self / &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &MPoly| {
            if p.len() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            // A single power such as `y^2` binds tighter than `/`; anything else is wrapped.
            let atom = self.den.len() == 1 && self.den.terms()[0].0.pairs().len() == 1 && self.den.lc().is_one();
            let den = if atom { self.den.to_string() } else { format!("({})", self.den) };
            write!(f, "{}/{den}", wrap(&self.num))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    #[test]
    fn reduction_and_normalization() {
        let r = RatFunc::new(pp("2*x1^2 - 2"), pp("3*x1 - 3")).unwrap();
        assert_eq!(r.num(), &pp("2/3*x1 + 2/3"));
        assert_eq!(r.den(), &MPoly::one());
        let s = RatFunc::new(pp("x1"), pp("2*x2 + 4")).unwrap();
        assert_eq!(s.den(), &pp("x2 + 2"));
        assert_eq!(s.num(), &pp("1/2*x1"));
    }

    #[test]
    fn zero_denominator_is_a_pole() {
        assert!(matches!(RatFunc::new(MPoly::one(), MPoly::zero()), Err(ArithError::Pole)));
    }

    #[test]
    fn field_operations() {
        let a = pr("x1/(x1 + x2)");
        let b = pr("x2/(x1 + x2)");
        assert!((&a + &b).is_one());
        let c = &a * &pr("(x1 + x2)/x1");
        assert!(c.is_one());
        assert_eq!(&a / &a, RatFunc::one());
    }

    #[test]
    fn quotient_rule() {
        let r = pr("1/x1");
        assert_eq!(r.derivative(Var::x(1)), pr("-1/x1^2"));
    }

    #[test]
    fn substitution_of_fractions() {
        let p = pp("y^2 - y*x1");
        let s = substitute_poly(&p, &[(Var::output(0), pr("x1/x2"))]);
        assert_eq!(s, pr("(x1^2 - x1^2*x2)/x2^2"));
    }
}
