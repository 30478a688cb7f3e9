//! Univariate polynomials over the rational functions in the remaining symbols,
//! with Euclid, Hermite reduction and rational integration.

use num_bigint::BigInt;

use crate::arith::{MPoly, RatFunc, Rational, Var};

/// `sum c_i v^i`, coefficients free of `v`, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly {
    v: Var,
    c: Vec<RatFunc>,
}

impl UPoly {
    pub fn zero(v: Var) -> UPoly {
        UPoly { v, c: Vec::new() }
    }

    pub fn constant(v: Var, c: RatFunc) -> UPoly {
        UPoly::from_coeffs(v, vec![c])
    }

    pub fn from_coeffs(v: Var, mut c: Vec<RatFunc>) -> UPoly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { v, c }
    }

    pub fn from_mpoly(p: &MPoly, v: Var) -> UPoly {
        UPoly::from_coeffs(v, p.coeffs_in(v).into_iter().map(RatFunc::from).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, `-1` for zero.
    pub fn deg(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.c
    }

    pub fn lc(&self) -> RatFunc {
        self.c.last().cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        let x = RatFunc::var(self.v);
        let mut out = RatFunc::zero();
        for c in self.c.iter().rev() {
            out = &(&out * &x) + c;
        }
        out
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UPoly::from_coeffs(self.v, c)
    }

    pub fn neg(&self) -> UPoly {
        UPoly { v: self.v, c: self.c.iter().map(|x| -x.clone()).collect() }
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.v);
        }
        let mut c = vec![RatFunc::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        UPoly::from_coeffs(self.v, c)
    }

    pub fn scale(&self, k: &RatFunc) -> UPoly {
        UPoly::from_coeffs(self.v, self.c.iter().map(|x| x * k).collect())
    }

    pub fn derivative(&self) -> UPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, x)| x.scale(&Rational::from_integer(BigInt::from(i)))).collect();
        UPoly::from_coeffs(self.v, c)
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut r = self.clone();
        let mut q = vec![RatFunc::zero(); (self.deg() - d.deg() + 1).max(0) as usize];
        let lc = d.lc();
        while r.deg() >= d.deg() {
            let k = (r.deg() - d.deg()) as usize;
            let t = &r.lc() / &lc;
            let mut shifted = vec![RatFunc::zero(); k];
            shifted.extend(d.c.iter().map(|x| x * &t));
            r = r.sub(&UPoly::from_coeffs(self.v, shifted));
            q[k] = t;
        }
        (UPoly::from_coeffs(self.v, q), r)
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        UPoly::from_coeffs(self.v, self.c.iter().map(|x| x / &l).collect())
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(s, t)` with `s a + t b = c` and `deg s < deg b`, when `gcd(a, b) | c`.
    pub fn solve_bezout(a: &UPoly, b: &UPoly, c: &UPoly) -> Option<(UPoly, UPoly)> {
        let v = a.v;
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (UPoly::constant(v, RatFunc::one()), UPoly::zero(v));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // s0 a == r0 (mod b)
        let (q, rem) = c.divrem(&r0);
        if !rem.is_zero() {
            return None;
        }
        let s = q.mul(&s0).divrem(b).1;
        let t = c.sub(&s.mul(a)).divrem(b).0;
        Some((s, t))
    }
}

/// Integral of a polynomial in `v`.
fn integrate_poly(p: &UPoly) -> UPoly {
    let mut c = vec![RatFunc::zero()];
    for (i, x) in p.c.iter().enumerate() {
        c.push(x.scale(&Rational::new(BigInt::from(1), BigInt::from(i + 1))));
    }
    UPoly::from_coeffs(p.v, c)
}

/// Rational part of `int a/d` and the remaining integrand `h/d*` with `d*`
/// square-free and `deg h < deg d*` (the polynomial part is integrated too).
pub struct HermiteSplit {
    pub rational: RatFunc,
    pub rest_num: UPoly,
    pub rest_den: UPoly,
}

/// Hermite reduction, linear variant.
pub fn hermite_reduce(a: &UPoly, d: &UPoly) -> HermiteSplit {
    let (poly, mut a) = a.divrem(d);
    let mut g = integrate_poly(&poly).to_ratfunc();
    let mut dm = d.gcd(&d.derivative());
    let ds = d.divrem(&dm).0;
    while dm.deg() > 0 {
        let dm2 = dm.gcd(&dm.derivative());
        let dms = dm.divrem(&dm2).0;
        let lhs = ds.mul(&dm.derivative()).divrem(&dm).0.neg();
        let (b, c) = UPoly::solve_bezout(&lhs, &dms, &a).expect("coprime in the Hermite step");
        a = c.sub(&b.derivative().mul(&ds).divrem(&dms).0);
        g = &g + &(&b.to_ratfunc() / &dm.to_ratfunc());
        dm = dm2;
    }
    let (poly, rest) = a.divrem(&ds);
    g = &g + &integrate_poly(&poly).to_ratfunc();
    HermiteSplit { rational: g, rest_num: rest, rest_den: ds }
}

/// `int r dv` when it is rational; `None` when a logarithmic part remains.
pub fn integrate_rational(r: &RatFunc, v: Var) -> Option<RatFunc> {
    let a = UPoly::from_mpoly(r.num(), v);
    let d = UPoly::from_mpoly(r.den(), v);
    let split = hermite_reduce(&a, &d);
    split.rest_num.is_zero().then_some(split.rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    fn u() -> Var {
        Var::input(0)
    }

    #[test]
    fn euclid() {
        let a = UPoly::from_mpoly(&pp("u^3 - u"), u());
        let b = UPoly::from_mpoly(&pp("u^2 + 2*u + 1"), u());
        assert_eq!(a.gcd(&b).to_ratfunc(), pr("u + 1"));
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q.to_ratfunc() * &b.to_ratfunc()) + &r.to_ratfunc(), a.to_ratfunc());
    }

    #[test]
    fn bezout() {
        let a = UPoly::from_mpoly(&pp("u^2 + 1"), u());
        let b = UPoly::from_mpoly(&pp("u - k1"), u());
        let c = UPoly::from_mpoly(&pp("u^2"), u());
        let (s, t) = UPoly::solve_bezout(&a, &b, &c).unwrap();
        assert!(s.deg() < b.deg());
        assert_eq!(s.mul(&a).add(&t.mul(&b)), c);
    }

    #[test]
    fn rational_integrals() {
        let u = u();
        assert_eq!(integrate_rational(&pr("1"), u), Some(pr("u")));
        assert_eq!(integrate_rational(&pr("-1/u^2"), u), Some(pr("1/u")));
        assert_eq!(integrate_rational(&pr("k1*u^2 + 1/(u + 1)^2"), u), Some(pr("k1*u^3/3 - 1/(u + 1)")));
        assert_eq!(integrate_rational(&pr("1/u"), u), None);
        assert_eq!(integrate_rational(&pr("1/u^2 + 1/(u - 1)"), u), None);
    }

    #[test]
    fn hermite_on_repeated_factor() {
        // d/du (u/(u^2 + 1)^2) has a square-free-free remainder of zero.
        let f = pr("u/(u^2 + 1)^2");
        let df = f.derivative(u());
        let g = integrate_rational(&df, u()).unwrap();
        assert!((&g - &f).is_constant());
    }
}
