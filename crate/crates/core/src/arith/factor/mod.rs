//! Irreducible factorization over the rationals for a restricted class.
//!
//! Supported: univariate polynomials of degree at most 12, and multivariate
//! polynomials whose square-free, content-free pieces have degree at most 2 in
//! some variable. Anything else is reported as unsupported together with the
//! partial square-free decomposition.

mod zassenhaus;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use zassenhaus::{factor_squarefree as factor_univariate_integer, ZPoly};

use super::gcd::{content_in, primitive_part_in, sqrt, squarefree_in};
use super::mpoly::MPoly;
use super::var::Var;
use super::Rational;

/// Largest univariate degree handed to the Zassenhaus factorizer.
pub const MAX_UNIVARIATE_DEGREE: u32 = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum FactorOutcome {
    /// Irreducible monic factors with multiplicities, sorted by the global order.
    Complete(Vec<(MPoly, u32)>),
    /// Some piece is outside the supported class. `pieces` is still a
    /// square-free decomposition whose product reconstructs the input.
    Unsupported { reason: String, pieces: Vec<(MPoly, u32)> },
}

impl FactorOutcome {
    /// Factors, irreducible or merely square-free, with multiplicities.
    pub fn pieces(&self) -> &[(MPoly, u32)] {
        match self {
            FactorOutcome::Complete(f) => f,
            FactorOutcome::Unsupported { pieces, .. } => pieces,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self, FactorOutcome::Complete(_))
    }
}

/// Total order on polynomials used to list factors deterministically.
pub fn poly_order(a: &MPoly, b: &MPoly) -> Ordering {
    let (ta, tb) = (a.terms(), b.terms());
    for (x, y) in ta.iter().zip(tb) {
        let o = x.0.cmp(&y.0).then_with(|| x.1.cmp(&y.1));
        if o != Ordering::Equal {
            return o;
        }
    }
    ta.len().cmp(&tb.len())
}

struct Collector {
    irreducible: Vec<(MPoly, u32)>,
    unsupported: Vec<(MPoly, u32)>,
    reasons: Vec<String>,
}

/// Factors a nonzero polynomial.
pub fn factor(p: &MPoly) -> FactorOutcome {
    assert!(!p.is_zero(), "factor of the zero polynomial");
    let mut col = Collector { irreducible: Vec::new(), unsupported: Vec::new(), reasons: Vec::new() };
    decompose(p, 1, &mut col);
    let merge = |v: Vec<(MPoly, u32)>| {
        let mut out: Vec<(MPoly, u32)> = Vec::new();
        for (f, m) in v {
            match out.iter_mut().find(|(g, _)| *g == f) {
                Some(e) => e.1 += m,
                None => out.push((f, m)),
            }
        }
        out.sort_by(|a, b| poly_order(&a.0, &b.0));
        out
    };
    let outcome = if col.unsupported.is_empty() {
        FactorOutcome::Complete(merge(col.irreducible))
    } else {
        let mut all = col.irreducible;
        all.extend(col.unsupported);
        FactorOutcome::Unsupported { reason: col.reasons.join("; "), pieces: merge(all) }
    };
    check_product(p, outcome.pieces());
    outcome
}

fn check_product(p: &MPoly, pieces: &[(MPoly, u32)]) {
    let prod = pieces.iter().fold(MPoly::one(), |acc, (f, m)| &acc * &f.pow(*m));
    assert!(
        p.monic() == prod.monic(),
        "factorization does not reconstruct its input"
    );
}

fn decompose(p: &MPoly, mult: u32, col: &mut Collector) {
    let mut p = p.monic();
    if p.is_constant() {
        return;
    }
    let mc = p.monomial_content();
    if !mc.is_one() {
        for &(v, e) in mc.pairs() {
            col.irreducible.push((MPoly::var(v), mult * e));
        }
        p = p.div_exact(&MPoly::term(mc, Rational::one())).unwrap();
        if p.is_constant() {
            return;
        }
    }
    let v = main_var(&p);
    let c = content_in(&p, v);
    if !c.is_constant() {
        decompose(&c, mult, col);
        p = p.div_exact(&c).unwrap();
    }
    for (s, i) in squarefree_in(&p, v) {
        split(&s, mult * i, col);
    }
}

fn main_var(p: &MPoly) -> Var {
    *p.vars()
        .iter()
        .min_by_key(|&&v| (p.deg(v), p.coeffs_in(v).iter().filter(|c| !c.is_zero()).count()))
        .expect("nonconstant polynomial")
}

/// Splits a square-free polynomial into irreducibles, when the class allows.
fn split(s: &MPoly, mult: u32, col: &mut Collector) {
    let s = s.monic();
    if s.is_constant() {
        return;
    }
    let vars = s.vars();
    if vars.len() == 1 {
        let v = *vars.iter().next().unwrap();
        let d = s.deg(v);
        if d == 1 {
            col.irreducible.push((s, mult));
        } else if d <= MAX_UNIVARIATE_DEGREE {
            for f in factor_univariate(&s, v) {
                col.irreducible.push((f, mult));
            }
        } else {
            col.unsupported.push((s, mult));
            col.reasons.push(format!("univariate degree {d} exceeds {MAX_UNIVARIATE_DEGREE}"));
        }
        return;
    }
    let sr = &s;
    let by_degree = |d: u32| vars.iter().copied().filter(move |&v| sr.deg(v) == d);
    if let Some(v) = by_degree(1).next() {
        let c = content_in(&s, v);
        if !c.is_constant() {
            decompose(&c, mult, col);
            decompose(&s.div_exact(&c).unwrap(), mult, col);
        } else {
            col.irreducible.push((s, mult));
        }
        return;
    }
    if let Some(v) = by_degree(2).min_by_key(|&v| s.coeffs_in(v).iter().map(|c| c.len()).sum::<usize>()) {
        let c = content_in(&s, v);
        if !c.is_constant() {
            decompose(&c, mult, col);
            decompose(&s.div_exact(&c).unwrap(), mult, col);
            return;
        }
        let co = s.coeffs_in(v);
        let (c0, c1, c2) = (&co[0], &co[1], &co[2]);
        let four = MPoly::int(4);
        let disc = &(c1 * c1) - &(&(&four * c2) * c0);
        match sqrt(&disc) {
            Some(r) => {
                let two_a_v = &(&MPoly::int(2) * c2) * &MPoly::var(v);
                let base = &two_a_v + c1;
                col.irreducible.push((primitive_part_in(&(&base - &r), v), mult));
                col.irreducible.push((primitive_part_in(&(&base + &r), v), mult));
            }
            None => col.irreducible.push((s, mult)),
        }
        return;
    }
    col.unsupported.push((s.clone(), mult));
    col.reasons.push(format!(
        "multivariate polynomial of degree at least 3 in every variable ({} terms)",
        s.len()
    ));
}

fn factor_univariate(s: &MPoly, v: Var) -> Vec<MPoly> {
    let prim = s.primitive_integer();
    let d = prim.deg(v) as usize;
    let mut z: ZPoly = vec![BigInt::zero(); d + 1];
    for (i, c) in prim.coeffs_in(v).iter().enumerate() {
        let k = c.constant_value().expect("univariate coefficient");
        z[i] = k.to_integer();
    }
    factor_univariate_integer(&z)
        .into_iter()
        .map(|f| {
            let coeffs: Vec<MPoly> = f.into_iter().map(|c| MPoly::constant(Rational::from_integer(c))).collect();
            MPoly::from_coeffs(v, &coeffs).monic()
        })
        .collect()
}

/// Factors involving at least one of `vars`.
pub fn factors_involving(outcome: &FactorOutcome, vars: &[Var]) -> Vec<MPoly> {
    outcome
        .pieces()
        .iter()
        .filter(|(f, _)| f.contains_any(vars))
        .map(|(f, _)| f.clone())
        .collect()
}

/// Square-free part, i.e. the product of the distinct pieces.
pub fn squarefree_part(p: &MPoly) -> MPoly {
    factor(p)
        .pieces()
        .iter()
        .fold(MPoly::one(), |acc, (f, _)| &acc * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly as pp;

    fn complete(p: &str) -> Vec<(MPoly, u32)> {
        match factor(&pp(p)) {
            FactorOutcome::Complete(f) => f,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn linear_in_a_variable_is_irreducible() {
        let f = complete("a*u - y");
        assert_eq!(f, vec![(pp("a*u - y").monic(), 1)]);
    }

    #[test]
    fn difference_of_squares() {
        let f = complete("u^2*y^2 - y'^2");
        let mut want = vec![(pp("y' - u*y").monic(), 1), (pp("y' + u*y").monic(), 1)];
        want.sort_by(|a, b| poly_order(&a.0, &b.0));
        assert_eq!(f, want);
    }

    #[test]
    fn irreducible_over_rationals() {
        assert_eq!(complete("x1^2 - 2"), vec![(pp("x1^2 - 2"), 1)]);
    }

    #[test]
    fn multiplicities_and_monomial_content() {
        let f = complete("x1^3*x2 - 2*x1^2*x2 + x1*x2");
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(pp("x1 - 1"), 2)));
        assert!(f.contains(&(pp("x1"), 1)));
        assert!(f.contains(&(pp("x2"), 1)));
    }

    #[test]
    fn content_with_parameters() {
        let f = complete("k1*x1*y + k1*u");
        assert!(f.contains(&(pp("k1"), 1)));
        assert!(f.contains(&(pp("x1*y + u"), 1)));
    }

    #[test]
    fn outside_class_is_unsupported() {
        let p = pp("x1^3 + x2^3 + x1*x2 + 1");
        match factor(&p) {
            FactorOutcome::Unsupported { pieces, .. } => assert_eq!(pieces, vec![(p.monic(), 1)]),
            other => panic!("unexpected {other:?}"),
        }
    }
}
