//! Multivariate gcd, resultants and square-free decomposition.
//!
//! Gcds are computed recursively: contents with respect to a main variable
//! first, then a subresultant remainder sequence on the primitive parts.

use num_traits::One;

use super::mpoly::{MPoly, Monomial};
use super::var::Var;
use super::{ArithError, Rational};

/// Dense coefficient vector in one variable; index `i` holds the coefficient of `v^i`.
type Dense = Vec<MPoly>;

fn trim(p: &mut Dense) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &Dense) -> i64 {
    p.len() as i64 - 1
}

fn lead(p: &Dense) -> &MPoly {
    p.last().expect("nonzero dense polynomial")
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Dense, b: &Dense) -> Dense {
    let db = deg(b);
    let mut r = a.clone();
    trim(&mut r);
    if deg(&r) < db {
        return r;
    }
    let lb = lead(b).clone();
    let mut steps = deg(&r) - db + 1;
    while !r.is_empty() && deg(&r) >= db {
        let lr = lead(&r).clone();
        let shift = (deg(&r) - db) as usize;
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = &lr * bc;
            r[i + shift] = &r[i + shift] - &t;
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        for c in r.iter_mut() {
            *c = &*c * &f;
        }
    }
    r
}

fn div_dense(p: &Dense, d: &MPoly) -> Dense {
    p.iter()
        .map(|c| c.div_exact(d).expect("subresultant division must be exact"))
        .collect()
}

/// Resultant of `p` and `q` with respect to `v`.
pub fn resultant(p: &MPoly, q: &MPoly, v: Var) -> Result<MPoly, ArithError> {
    if p.deg(v) == 0 || q.deg(v) == 0 {
        return Err(ArithError::NotEliminable(v.to_string()));
    }
    let mut a = p.coeffs_in(v);
    let mut b = q.coeffs_in(v);
    let mut sign = false;
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = true;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    while deg(&b) > 0 {
        let delta = (deg(&a) - deg(&b)) as u32;
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            sign = !sign;
        }
        let r = prem(&a, &b);
        a = b;
        let div = &g * &h.pow(delta);
        b = div_dense(&r, &div);
        if b.is_empty() {
            return Ok(MPoly::zero());
        }
        g = lead(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .div_exact(&h.pow(delta - 1))
                .expect("exact subresultant coefficient")
        };
    }
    let da = deg(&a) as u32;
    let res = lead(&b)
        .pow(da)
        .div_exact(&h.pow(da - 1))
        .expect("exact subresultant coefficient");
    Ok(if sign { -res } else { res })
}

/// Content with respect to `v`: the gcd of all coefficients in `v`.
pub fn content_in(p: &MPoly, v: Var) -> MPoly {
    let mut g = MPoly::zero();
    for c in p.coeffs_in(v).into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive part with respect to `v`, made monic.
pub fn primitive_part_in(p: &MPoly, v: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content_in(p, v);
    p.div_exact(&c).expect("content divides").monic()
}

/// Normalized greatest common divisor (leading coefficient 1; `gcd(0, 0) = 0`).
pub fn gcd(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() {
        return q.monic();
    }
    if q.is_zero() {
        return p.monic();
    }
    if p.is_constant() || q.is_constant() {
        return MPoly::one();
    }
    if p.is_monomial() || q.is_monomial() {
        let (m, other) = if p.is_monomial() { (p, q) } else { (q, p) };
        let mut g = m.leading_term().unwrap().0.clone();
        for (t, _) in other.terms() {
            if g.is_one() {
                break;
            }
            g = g.gcd(t);
        }
        return MPoly::term(g, Rational::one());
    }
    // Pull out common monomial content.
    let mp = p.monomial_content();
    let mq = q.monomial_content();
    let mg = mp.gcd(&mq);
    if !mp.is_one() || !mq.is_one() {
        let pp = p.div_exact(&MPoly::term(mp, Rational::one())).unwrap();
        let qq = q.div_exact(&MPoly::term(mq, Rational::one())).unwrap();
        return (&gcd(&pp, &qq) * &MPoly::term(mg, Rational::one())).monic();
    }
    let vp = p.vars();
    let vq = q.vars();
    // A variable present in only one argument reduces to a gcd with its coefficients.
    if let Some(&v) = vp.iter().find(|v| !vq.contains(v)) {
        let mut g = q.clone();
        for c in p.coeffs_in(v).into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                return g;
            }
        }
        return g.monic();
    }
    if let Some(&v) = vq.iter().find(|v| !vp.contains(v)) {
        let mut g = p.clone();
        for c in q.coeffs_in(v).into_iter().rev() {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                return g;
            }
        }
        return g.monic();
    }
    if p.len() <= q.len() {
        if q.div_exact(p).is_some() {
            return p.monic();
        }
    } else if p.div_exact(q).is_some() {
        return q.monic();
    }
    // Main variable: smallest maximal degree.
    let v = *vp
        .iter()
        .min_by_key(|&&v| (p.deg(v).max(q.deg(v)), p.deg(v) + q.deg(v)))
        .unwrap();
    let cp = content_in(p, v);
    let cq = content_in(q, v);
    let c = gcd(&cp, &cq);
    let pp = p.div_exact(&cp).unwrap();
    let qp = q.div_exact(&cq).unwrap();
    let g = prs_gcd(&pp, &qp, v);
    (&c * &g).monic()
}

/// Gcd of polynomials primitive in `v`, via the subresultant sequence.
fn prs_gcd(p: &MPoly, q: &MPoly, v: Var) -> MPoly {
    let mut a = p.coeffs_in(v);
    let mut b = q.coeffs_in(v);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        if deg(&b) == 0 {
            return MPoly::one();
        }
        let delta = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            let bp = MPoly::from_coeffs(v, &b);
            return primitive_part_in(&bp, v);
        }
        if deg(&r) == 0 {
            return MPoly::one();
        }
        a = b;
        let div = &g * &h.pow(delta);
        b = div_dense(&r, &div);
        g = lead(&a).clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta).div_exact(&h.pow(delta - 1)).expect("exact")
        };
    }
}

pub fn lcm(p: &MPoly, q: &MPoly) -> MPoly {
    if p.is_zero() || q.is_zero() {
        return MPoly::zero();
    }
    let g = gcd(p, q);
    (&p.div_exact(&g).unwrap() * q).monic()
}

/// Square-free decomposition with respect to `v` of a polynomial primitive in `v`:
/// returns `(s_i, i)` with `p = const * prod s_i^i`.
pub fn squarefree_in(p: &MPoly, v: Var) -> Vec<(MPoly, u32)> {
    // Yun's algorithm.
    let mut out = Vec::new();
    let dp = p.derivative(v);
    let a0 = gcd(p, &dp);
    let mut b = p.div_exact(&a0).unwrap();
    let mut c = dp.div_exact(&a0).unwrap();
    let mut d = &c - &b.derivative(v);
    let mut i = 1;
    loop {
        if b.deg(v) == 0 {
            break;
        }
        let a = gcd(&b, &d);
        if a.deg(v) > 0 {
            out.push((a.monic(), i));
        }
        b = b.div_exact(&a).unwrap();
        c = d.div_exact(&a).unwrap();
        d = &c - &b.derivative(v);
        i += 1;
    }
    out
}

/// Exact square root of a polynomial, if it is a perfect square.
pub fn sqrt(p: &MPoly) -> Option<MPoly> {
    if p.is_zero() {
        return Some(MPoly::zero());
    }
    let (lm, lc) = p.leading_term()?.clone();
    let root_m = monomial_sqrt(&lm)?;
    let root_c = rational_sqrt(&lc)?;
    let lead = MPoly::term(root_m.clone(), root_c.clone());
    let two_lead_c = &root_c + &root_c;
    let mut s = lead;
    let mut last = root_m.clone();
    loop {
        let r = p - &(&s * &s);
        let Some((rm, rc)) = r.leading_term().cloned() else {
            return Some(s);
        };
        // Each new term of the root is strictly smaller than the previous one.
        let m = rm.div(&root_m)?;
        if m >= last {
            return None;
        }
        let c = &rc / &two_lead_c;
        s = &s + &MPoly::term(m.clone(), c);
        last = m;
    }
}

fn monomial_sqrt(m: &Monomial) -> Option<Monomial> {
    let mut pairs = Vec::new();
    for &(v, e) in m.pairs() {
        if e % 2 != 0 {
            return None;
        }
        pairs.push((v, e / 2));
    }
    Some(Monomial::from_pairs(pairs))
}

pub(crate) fn rational_sqrt(c: &Rational) -> Option<Rational> {
    use num_traits::Signed;
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    if &(&n * &n) == c.numer() && &(&d * &d) == c.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly as pp;

    #[test]
    fn gcd_common_root() {
        assert_eq!(gcd(&pp("x1^2 - 1"), &pp("x1 - 1")), pp("x1 - 1"));
    }

    #[test]
    fn gcd_with_zero_normalizes() {
        assert_eq!(gcd(&pp("2*x1 + 4"), &MPoly::zero()), pp("x1 + 2"));
    }

    #[test]
    fn gcd_content_and_primitive() {
        assert_eq!(gcd(&pp("2*x1^2*x2 + 2*x1*x2"), &pp("4*x1*x2^2")), pp("x1*x2"));
    }

    #[test]
    fn gcd_multivariate() {
        let a = pp("x1*x2 + k1*u - 3");
        let b = pp("x2^2 - u*x1 + 1");
        let c = pp("x1 - x2*k1 + u^2");
        let g = gcd(&(&a * &b), &(&a * &c));
        assert_eq!(g, a.monic());
    }

    #[test]
    fn resultant_quadratic() {
        let r = resultant(&pp("x1^2 - y"), &pp("x1 - x2"), Var::x(1)).unwrap();
        assert_eq!(r, pp("x2^2 - y"));
    }

    #[test]
    fn resultant_linear() {
        let r = resultant(&pp("x1 - k1"), &pp("x1 - k2"), Var::x(1)).unwrap();
        assert_eq!(r, pp("k1 - k2"));
    }

    #[test]
    fn resultant_equal_inputs_vanishes() {
        let r = resultant(&pp("x1^2 + 1"), &pp("x1^2 + 1"), Var::x(1)).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn resultant_needs_positive_degree() {
        assert!(matches!(
            resultant(&pp("x2 + 1"), &pp("x1 - 1"), Var::x(1)),
            Err(ArithError::NotEliminable(_))
        ));
    }

    #[test]
    fn square_root() {
        let p = pp("x1 + 2*k1*u - 1/3");
        assert_eq!(sqrt(&(&p * &p)).unwrap().monic(), p.monic());
        assert!(sqrt(&pp("x1^2 + 1")).is_none());
    }

    #[test]
    fn yun_decomposition() {
        let a = pp("x1 + x2");
        let b = pp("x1 - 2");
        let p = &(&a * &b.pow(2)) * &MPoly::one();
        let sf = squarefree_in(&p, Var::x(1));
        assert_eq!(sf, vec![(a.monic(), 1), (b.monic(), 2)]);
    }
}
