//! Sparse multivariate polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::var::Var;
use super::Rational;

/// A power product, stored as `(var, exponent)` pairs sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(mut pairs: Vec<(Var, u32)>) -> Monomial {
        pairs.retain(|&(_, e)| e > 0);
        pairs.sort_by_key(|&(v, _)| v);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some(last) if last.0 == v => last.1 += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|p| p.1).sum()
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0
            .binary_search_by(|p| p.0.cmp(&v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        let b = &other.0;
        for &(v, e) in &self.0 {
            if j < b.len() && b[j].0 < v {
                return None;
            }
            if j < b.len() && b[j].0 == v {
                if b[j].1 > e {
                    return None;
                }
                if e > b[j].1 {
                    out.push((v, e - b[j].1));
                }
                j += 1;
            } else {
                out.push((v, e));
            }
        }
        if j < b.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for &(v, e) in &self.0 {
            let f = other.exp(v);
            if f > 0 {
                out.push((v, e.min(f)));
            }
        }
        Monomial(out)
    }

    /// Removes `v` from the monomial, returning its exponent.
    pub fn split_var(&self, v: Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|p| p.0.cmp(&v)) {
            Ok(i) => {
                let mut rest = self.0.clone();
                let (_, e) = rest.remove(i);
                (e, Monomial(rest))
            }
            Err(_) => (0, self.clone()),
        }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order; ties broken at the greatest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (a.len(), b.len());
        while i > 0 && j > 0 {
            let (va, ea) = a[i - 1];
            let (vb, eb) = b[j - 1];
            match va.cmp(&vb) {
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i -= 1;
                    j -= 1;
                }
                o => return o,
            }
        }
        i.cmp(&j)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sparse polynomial: terms sorted by decreasing monomial, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Monomial::one(), c)] }
        }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::term(Monomial::var(v, 1), Rational::one())
    }

    pub fn var_pow(v: Var, e: u32) -> MPoly {
        MPoly::term(Monomial::var(v, e), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> MPoly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    /// Leading coefficient under the global order (zero for the zero polynomial).
    pub fn lc(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut s = BTreeSet::new();
        for (m, _) in &self.terms {
            for &(v, _) in m.pairs() {
                s.insert(v);
            }
        }
        s
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(v) > 0)
    }

    pub fn contains_any(&self, vs: &[Var]) -> bool {
        vs.iter().any(|&v| self.contains(v))
    }

    /// Degree in `v`; `-1` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms.iter().map(|(m, _)| m.exp(v) as i64).max().unwrap_or(0)
    }

    pub fn deg(&self, v: Var) -> u32 {
        self.degree_in(v).max(0) as u32
    }

    pub fn total_degree(&self) -> i64 {
        if self.is_zero() {
            return -1;
        }
        self.terms.iter().map(|(m, _)| m.degree() as i64).max().unwrap_or(0)
    }

    /// Coefficients as a polynomial in `v`: index `i` holds the coefficient of `v^i`.
    pub fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        if self.is_zero() {
            return Vec::new();
        }
        let d = self.deg(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            buckets[e as usize].push((rest, c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut t| {
                t.sort_by(|a, b| b.0.cmp(&a.0));
                MPoly { terms: t }
            })
            .collect()
    }

    /// Coefficient of `v^e`.
    pub fn coeff_of(&self, v: Var, e: u32) -> MPoly {
        let mut t: Vec<_> = self
            .terms
            .iter()
            .filter_map(|(m, c)| {
                let (k, rest) = m.split_var(v);
                (k == e).then(|| (rest, c.clone()))
            })
            .collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms: t }
    }

    /// Leading coefficient with respect to `v`.
    pub fn lc_in(&self, v: Var) -> MPoly {
        self.coeff_of(v, self.deg(v))
    }

    pub fn from_coeffs(v: Var, coeffs: &[MPoly]) -> MPoly {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let m = Monomial::var(v, i as u32);
            for (cm, cc) in &c.terms {
                terms.push((cm.mul(&m), cc.clone()));
            }
        }
        MPoly::from_terms(terms)
    }

    /// Coefficients with respect to a set of variables, keyed by the monomial in them.
    pub fn coeffs_in_vars(&self, vs: &[Var]) -> Vec<(Monomial, MPoly)> {
        let mut acc: HashMap<Monomial, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut inner = Vec::new();
            let mut outer = Vec::new();
            for &(v, e) in m.pairs() {
                if vs.contains(&v) {
                    inner.push((v, e));
                } else {
                    outer.push((v, e));
                }
            }
            acc.entry(Monomial(inner)).or_default().push((Monomial(outer), c.clone()));
        }
        let mut out: Vec<_> = acc
            .into_iter()
            .map(|(k, t)| (k, MPoly::from_terms(t)))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(t, k)| (t.mul(m), k.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MPoly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_var(v);
            if e == 0 {
                continue;
            }
            let nm = rest.mul(&Monomial::var(v, e - 1));
            terms.push((nm, c * Rational::from_integer(BigInt::from(e))));
        }
        MPoly::from_terms(terms)
    }

    /// Replaces `v` by the polynomial `value`.
    pub fn subs(&self, v: Var, value: &MPoly) -> MPoly {
        if !self.contains(v) {
            return self.clone();
        }
        let coeffs = self.coeffs_in(v);
        let mut acc = MPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Simultaneous polynomial substitution.
    pub fn subs_many(&self, map: &[(Var, MPoly)]) -> MPoly {
        let mut pw: HashMap<(usize, u32), MPoly> = HashMap::new();
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut rest = Vec::new();
            let mut factor = MPoly::one();
            let mut has = false;
            for &(v, e) in m.pairs() {
                if let Some(idx) = map.iter().position(|(w, _)| *w == v) {
                    has = true;
                    let p = pw
                        .entry((idx, e))
                        .or_insert_with(|| map[idx].1.pow(e))
                        .clone();
                    factor = &factor * &p;
                } else {
                    rest.push((v, e));
                }
            }
            if has {
                out = &out + &factor.mul_monomial(&Monomial(rest)).scale(c);
            } else {
                acc.push((m.clone(), c.clone()));
            }
        }
        &out + &MPoly::from_terms(acc)
    }

    /// Evaluates `v` at a rational value.
    pub fn eval(&self, v: Var, value: &Rational) -> MPoly {
        self.subs(v, &MPoly::constant(value.clone()))
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().cloned().unwrap();
        if d.is_monomial() {
            let inv = dc.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                terms.push((m.div(&dm)?, c * &inv));
            }
            return Some(MPoly { terms });
        }
        // Quick rejections on degrees.
        for v in d.vars() {
            if self.degree_in(v) < d.degree_in(v) {
                return None;
            }
        }
        let inv = dc.recip();
        let mut rem = self.clone();
        let mut q: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((rm, rc)) = rem.leading_term().cloned() {
            let qm = rm.div(&dm)?;
            let qc = &rc * &inv;
            let sub = d.mul_monomial(&qm).scale(&qc);
            rem = &rem - &sub;
            q.push((qm, qc));
        }
        q.sort_by(|a, b| b.0.cmp(&a.0));
        Some(MPoly { terms: q })
    }

    /// Divides by the leading coefficient so that `lc = 1`.
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => MPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Scales to integer coefficients with unit content and positive leading coefficient.
    pub fn primitive_integer(&self) -> MPoly {
        if self.is_zero() {
            return MPoly::zero();
        }
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            let n = c.numer() * (&den / c.denom());
            g = g.gcd(&n);
        }
        if self.lc().is_negative() {
            g = -g;
        }
        let f = Rational::new(den, g);
        self.scale(&f)
    }

    /// Gcd of the monomials of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut g = first.clone();
        for (m, _) in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Keeps only terms whose monomial satisfies `pred`.
    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, pred: F) -> MPoly {
        MPoly {
            terms: self.terms.iter().filter(|(m, _)| pred(m)).cloned().collect(),
        }
    }

    /// Renames variables (the map must not merge distinct variables).
    pub fn rename(&self, map: &[(Var, Var)]) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let pairs = m
                .pairs()
                .iter()
                .map(|&(v, e)| {
                    let w = map.iter().find(|(a, _)| *a == v).map(|p| p.1).unwrap_or(v);
                    (w, e)
                })
                .collect();
            (Monomial::from_pairs(pairs), c.clone())
        }))
    }

    fn merge(&self, other: &MPoly, negate: bool) -> MPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -t.1.clone() } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        MPoly { terms: out }
    }

    fn product(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        MPoly { terms }
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &'a MPoly) -> MPoly {
        self.merge(rhs, false)
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &'a MPoly) -> MPoly {
        self.merge(rhs, true)
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &'a MPoly) -> MPoly {
        self.product(rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> MPoly {
        MPoly::var(v)
    }
}

impl From<i64> for MPoly {
    fn from(n: i64) -> MPoly {
        MPoly::int(n)
    }
}

pub(crate) fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&fmt_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", fmt_rational(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> MPoly {
        MPoly::var(Var::x(1))
    }
    fn y() -> MPoly {
        MPoly::var(Var::output(0))
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = &x() + &y();
        let q = &x() - &y();
        let pq = &p * &q;
        assert_eq!(pq, &x().pow(2) - &y().pow(2));
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = &x().pow(2) - &MPoly::one();
        let d = &x() - &MPoly::one();
        assert_eq!(p.div_exact(&d).unwrap(), &x() + &MPoly::one());
        assert!(p.div_exact(&y()).is_none());
        assert!(x().div_exact(&(&x() + &y())).is_none());
    }

    #[test]
    fn coefficients_roundtrip() {
        let p = &(&x().pow(3) * &y()) + &(&x() * &y().pow(2));
        let c = p.coeffs_in(Var::x(1));
        assert_eq!(c.len(), 4);
        assert_eq!(MPoly::from_coeffs(Var::x(1), &c), p);
    }

    #[test]
    fn leading_term_is_graded() {
        let p = &x().pow(3) + &(&y().pow(2) * &x().pow(2));
        assert_eq!(p.leading_term().unwrap().0.degree(), 4);
    }

    #[test]
    fn substitution() {
        let p = &x().pow(2) + &y();
        let s = p.subs(Var::x(1), &(&y() + &MPoly::one()));
        assert_eq!(s, &(&y().pow(2) + &y().scale(&Rational::from_integer(3.into()))) + &MPoly::one());
    }
}
