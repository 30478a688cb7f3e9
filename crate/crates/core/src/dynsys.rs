//! State-space systems, Lie derivatives, realization checks and IO equations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::arith::factor::{factor, poly_order, FactorOutcome};
use crate::arith::{ff_solve, resultant, FFMatrix, MPoly, RatFunc, Rational, SolveResult, Var, VarKind};
use crate::diffring::{d_u, ord, ord_rat, DiffPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// `x' = f(x, u)`, `y = g(x, u)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DynSystem {
    states: Vec<Var>,
    f: Vec<RatFunc>,
    g: RatFunc,
}

/// `(gamma_0, ..., gamma_h)` in the coordinates `coords`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub coords: Vec<Var>,
    pub gamma: Vec<RatFunc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationMode {
    Rational,
    InputAffine,
}

impl DynSystem {
    pub fn new(states: Vec<Var>, f: Vec<RatFunc>, g: RatFunc) -> Result<DynSystem, DynError> {
        if states.is_empty() {
            return Err(DynError::InvalidSystem("dimension must be at least 1".into()));
        }
        if states.len() != f.len() {
            return Err(DynError::InvalidSystem(format!(
                "{} states but {} rates",
                states.len(),
                f.len()
            )));
        }
        if let Some(s) = states.iter().find(|s| s.kind() != VarKind::State) {
            return Err(DynError::InvalidSystem(format!("{s} is not a state variable")));
        }
        for e in f.iter().chain(std::iter::once(&g)) {
            for v in e.vars() {
                let bad = match v.kind() {
                    VarKind::Output | VarKind::Ansatz => true,
                    VarKind::Input => v.index() > 0,
                    VarKind::State => !states.contains(&v),
                    VarKind::Parameter => false,
                };
                if bad {
                    return Err(DynError::InvalidSystem(format!("symbol {v} not allowed in a system")));
                }
            }
        }
        Ok(DynSystem { states, f, g })
    }

    /// System in the conventional states `x1..xn`.
    pub fn standard(f: Vec<RatFunc>, g: RatFunc) -> Result<DynSystem, DynError> {
        let states = (1..=f.len() as u32).map(Var::x).collect();
        DynSystem::new(states, f, g)
    }

    pub fn n(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Var] {
        &self.states
    }

    pub fn f(&self) -> &[RatFunc] {
        &self.f
    }

    pub fn g(&self) -> &RatFunc {
        &self.g
    }

    pub fn params(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for e in self.f.iter().chain(std::iter::once(&self.g)) {
            out.extend(e.vars().into_iter().filter(|v| v.kind() == VarKind::Parameter));
        }
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for DynSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (x, r) in self.states.iter().zip(&self.f) {
            writeln!(f, "{x}' = {}", show(r))?;
        }
        write!(f, "y = {}", show(&self.g))
    }
}

/// Prints a rational function without redundant parentheses.
pub fn show(r: &RatFunc) -> String {
    if r.is_polynomial() {
        r.num().to_string()
    } else {
        r.to_string()
    }
}

impl Parametrization {
    pub fn h(&self) -> usize {
        self.gamma.len() - 1
    }
}

/// True iff every rate and the output are affine in `u`.
pub fn input_affine(s: &DynSystem) -> bool {
    let u = Var::input(0);
    s.f.iter()
        .chain(std::iter::once(&s.g))
        .all(|r| !r.den().contains(u) && r.num().degree_in(u) <= 1)
}

/// `sum f_i dr/dx_i + D_u(r)`.
pub fn lie_derivative(s: &DynSystem, r: &RatFunc) -> RatFunc {
    let mut out = d_u(r);
    for (x, fi) in s.states.iter().zip(&s.f) {
        if r.contains(*x) {
            out = &out + &(fi * &r.derivative(*x));
        }
    }
    out
}

/// `(g, L g, ..., L^h g)`.
pub fn lie_sequence(s: &DynSystem, h: usize) -> Parametrization {
    let mut gamma = vec![s.g.clone()];
    for i in 0..h {
        let next = lie_derivative(s, &gamma[i]);
        gamma.push(next);
    }
    Parametrization { coords: s.states.clone(), gamma }
}

fn jacobian(p: &Parametrization) -> FFMatrix {
    let h = p.h();
    let rows = (0..h)
        .map(|i| p.coords.iter().map(|x| p.gamma[i].derivative(*x)).collect())
        .collect();
    if h == 0 {
        return FFMatrix::zeros(0, p.coords.len());
    }
    FFMatrix::from_rows(rows)
}

/// Full rank `h` of the Jacobian of `gamma_0..gamma_{h-1}` in the coordinates.
pub fn check_dominance(p: &Parametrization) -> bool {
    jacobian(p).rank() == p.h()
}

/// Outcome of [`verify_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub vanishes: bool,
    pub dominant: bool,
}

impl Verification {
    pub fn holds(&self) -> bool {
        self.vanishes && self.dominant
    }
}

/// The generic point `y^(i) -> L^i g`.
fn generic_point(p: &Parametrization) -> Vec<(Var, RatFunc)> {
    p.gamma
        .iter()
        .enumerate()
        .map(|(i, g)| (Var::output(i as u32), g.clone()))
        .collect()
}

fn vanishes_on(poly: &MPoly, point: &[(Var, RatFunc)]) -> bool {
    if probe_nonzero(poly, point) == Some(true) {
        return false;
    }
    crate::arith::ratfunc::substitute_poly(poly, point).is_zero()
}

/// Evaluates at a fixed rational point; `Some(true)` proves non-vanishing.
fn probe_nonzero(poly: &MPoly, point: &[(Var, RatFunc)]) -> Option<bool> {
    let mut vars: Vec<Var> = poly.vars().into_iter().filter(|v| v.kind() != VarKind::Output).collect();
    for (_, g) in point {
        vars.extend(g.vars());
    }
    vars.sort();
    vars.dedup();
    let values: Vec<(Var, MPoly)> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let k = (i as i64) * 7 + 3;
            (*v, MPoly::constant(Rational::new(k.into(), (2 * i as i64 + 5).into())))
        })
        .collect();
    let mut at = Vec::new();
    for (y, g) in point {
        let d = g.den().subs_many(&values);
        if d.is_zero() {
            return None;
        }
        let n = g.num().subs_many(&values);
        at.push((*y, RatFunc::from(n) / RatFunc::from(d)));
    }
    let base = poly.subs_many(&values);
    Some(!crate::arith::ratfunc::substitute_poly(&base, &at).is_zero())
}

/// Checks `P(g, L g, ..., L^h g) = 0` and dominance, with `h = ord_y P`.
pub fn verify_report(s: &DynSystem, p: &DiffPoly) -> Result<Verification, DynError> {
    let h = ord(p, VarKind::Output);
    if h < 1 {
        return Err(DynError::Precondition("the equation must involve a derivative of y".into()));
    }
    let seq = lie_sequence(s, h as usize);
    let vanishes = vanishes_on(p, &generic_point(&seq));
    let dominant = check_dominance(&seq);
    Ok(Verification { vanishes, dominant })
}

/// True iff `p` is the input-output equation of `s` (given `p` irreducible).
pub fn verify_realization(s: &DynSystem, p: &DiffPoly) -> Result<bool, DynError> {
    Ok(verify_report(s, p)?.holds())
}

/// Jacobian matrix and right-hand side `gamma_i - D_u(gamma_{i-1})`.
pub fn build_realizability_system(p: &Parametrization) -> (FFMatrix, Vec<RatFunc>) {
    let rhs = (1..=p.h()).map(|i| &p.gamma[i] - &d_u(&p.gamma[i - 1])).collect();
    (jacobian(p), rhs)
}

fn free_of_higher_inputs(r: &RatFunc) -> bool {
    ord_rat(r, VarKind::Input) <= 0
}

/// Solves the realizability system in the requested class; `None` means no solution there.
pub fn solve_realization(p: &Parametrization, mode: RealizationMode) -> Option<Vec<RatFunc>> {
    let (m, rhs) = build_realizability_system(p);
    match mode {
        RealizationMode::Rational => {
            let z = match ff_solve(&m, &rhs) {
                SolveResult::Unique(z) => z,
                SolveResult::Space { particular, .. } => particular,
                SolveResult::Inconsistent => return None,
            };
            z.iter().all(free_of_higher_inputs).then_some(z)
        }
        RealizationMode::InputAffine => solve_input_affine(&m, &rhs),
    }
}

/// Writes `Z_i = Z_i0 + Z_i1 u` and matches coefficients of the input jets.
fn solve_input_affine(m: &FFMatrix, rhs: &[RatFunc]) -> Option<Vec<RatFunc>> {
    let n = m.cols();
    let u = MPoly::var(Var::input(0));
    let mut rows: Vec<Vec<RatFunc>> = Vec::new();
    let mut b: Vec<RatFunc> = Vec::new();
    for (j, r) in rhs.iter().enumerate() {
        let entries: Vec<&RatFunc> = m.row(j).iter().chain(std::iter::once(r)).collect();
        let l = entries
            .iter()
            .fold(MPoly::one(), |acc, e| crate::arith::gcd::lcm(&acc, e.den()));
        let cleared: Vec<MPoly> = entries
            .iter()
            .map(|e| e.num() * &l.div_exact(e.den()).unwrap())
            .collect();
        let mut polys: Vec<MPoly> = Vec::with_capacity(2 * n + 1);
        polys.extend(cleared[..n].iter().cloned());
        polys.extend(cleared[..n].iter().map(|c| c * &u));
        polys.push(cleared[n].clone());
        let mut inputs: Vec<Var> = Vec::new();
        for q in &polys {
            inputs.extend(q.vars().into_iter().filter(|v| v.kind() == VarKind::Input));
        }
        inputs.sort();
        inputs.dedup();
        let mut by_mono: BTreeMap<crate::arith::Monomial, Vec<MPoly>> = BTreeMap::new();
        for (k, q) in polys.iter().enumerate() {
            for (mono, c) in q.coeffs_in_vars(&inputs) {
                by_mono.entry(mono).or_insert_with(|| vec![MPoly::zero(); 2 * n + 1])[k] = c;
            }
        }
        for (_, coeffs) in by_mono {
            rows.push(coeffs[..2 * n].iter().cloned().map(RatFunc::from).collect());
            b.push(RatFunc::from(coeffs[2 * n].clone()));
        }
    }
    if rows.is_empty() {
        return Some(vec![RatFunc::zero(); n]);
    }
    let z = match ff_solve(&FFMatrix::from_rows(rows), &b) {
        SolveResult::Unique(z) => z,
        SolveResult::Space { particular, .. } => particular,
        SolveResult::Inconsistent => return None,
    };
    let u = RatFunc::var(Var::input(0));
    Some((0..n).map(|i| &z[i] + &(&z[n + i] * &u)).collect())
}

/// The system `x' = f`, `y = gamma_0`.
pub fn assemble_system(p: &Parametrization, f: Vec<RatFunc>) -> Result<DynSystem, DynError> {
    if p.h() == 0 {
        return Err(DynError::Precondition("a realization needs h >= 1".into()));
    }
    DynSystem::new(p.coords.clone(), f, p.gamma[0].clone())
}

/// Result of [`io_equation`].
#[derive(Clone, Debug, PartialEq)]
pub enum IoOutcome {
    Equation { p: DiffPoly, diagnostics: Vec<String> },
    Unsupported(String),
}

/// Largest dimension handled by [`io_equation`].
pub const MAX_IO_DIMENSION: usize = 3;

/// Input-output equation by iterated resultants, for `n <= 3`.
pub fn io_equation(s: &DynSystem) -> IoOutcome {
    let n = s.n();
    if n > MAX_IO_DIMENSION {
        return IoOutcome::Unsupported(format!("dimension {n} exceeds {MAX_IO_DIMENSION}"));
    }
    let seq = lie_sequence(s, n);
    let point = generic_point(&seq);
    let mut diagnostics = Vec::new();
    // (polynomial, proven irreducible)
    let mut polys: Vec<(MPoly, bool)> = seq
        .gamma
        .iter()
        .enumerate()
        .map(|(i, g)| ((&RatFunc::var(Var::output(i as u32)) - g).num().clone(), false))
        .collect();
    for &x in s.states.iter().rev() {
        let (with, mut rest): (Vec<_>, Vec<_>) = polys.into_iter().partition(|(p, _)| p.contains(x));
        if with.is_empty() {
            polys = rest;
            continue;
        }
        let pivot = with
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let (pa, pb) = (&(a.1).0, &(b.1).0);
                pa.deg(x).cmp(&pb.deg(x)).then(pa.len().cmp(&pb.len()))
            })
            .map(|(i, _)| i)
            .unwrap();
        for (i, (q, _)) in with.iter().enumerate() {
            if i == pivot {
                continue;
            }
            let r = resultant(&with[pivot].0, q, x).expect("both involve the variable");
            if r.is_zero() {
                diagnostics.push(format!("resultant in {x} vanished; skipped"));
                continue;
            }
            rest.extend(relevant_factors(&r, &point, &mut diagnostics));
        }
        polys = dedup(rest);
    }
    let mut candidates: Vec<(MPoly, bool)> = Vec::new();
    for (p, irr) in polys {
        if ord(&p, VarKind::Output) < 0 || p.contains_any(s.states()) {
            continue;
        }
        // Relations that never went through a resultant still need factoring.
        if irr {
            candidates.push((p, irr));
        } else {
            candidates.extend(relevant_factors(&p, &point, &mut diagnostics));
        }
    }
    let mut candidates = dedup(candidates);
    candidates.sort_by(|a, b| {
        ord(&a.0, VarKind::Output)
            .cmp(&ord(&b.0, VarKind::Output))
            .then_with(|| poly_order(&a.0, &b.0))
    });
    let Some((p, irreducible)) = candidates.first().cloned() else {
        return IoOutcome::Unsupported("elimination produced no input-output relation".into());
    };
    let h = ord(&p, VarKind::Output);
    let same: Vec<_> = candidates.iter().filter(|c| ord(&c.0, VarKind::Output) == h).collect();
    if same.len() > 1 {
        diagnostics.push(format!("{} candidates of order {h}; picked the least", same.len()));
    }
    if !irreducible {
        return IoOutcome::Unsupported("could not certify irreducibility of the eliminant".into());
    }
    if h < 1 {
        return IoOutcome::Unsupported("relation does not involve a derivative of y".into());
    }
    if !check_dominance(&lie_sequence(s, h as usize)) {
        return IoOutcome::Unsupported(format!("order-{h} relation is not minimal (Jacobian rank deficient)"));
    }
    IoOutcome::Equation { p: p.monic(), diagnostics }
}

/// Irreducible factors that vanish at the generic point.
fn relevant_factors(r: &MPoly, point: &[(Var, RatFunc)], diag: &mut Vec<String>) -> Vec<(MPoly, bool)> {
    let out = factor(r);
    let complete = out.is_complete();
    if let FactorOutcome::Unsupported { reason, .. } = &out {
        diag.push(format!("factorization incomplete: {reason}"));
    }
    out.pieces()
        .iter()
        .filter(|(f, _)| !f.is_constant() && vanishes_on(f, point))
        .map(|(f, _)| (f.clone(), complete))
        .collect()
}

fn dedup(v: Vec<(MPoly, bool)>) -> Vec<(MPoly, bool)> {
    let mut out: Vec<(MPoly, bool)> = Vec::new();
    for (p, irr) in v {
        let p = p.monic();
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(e) => e.1 |= irr,
            None => out.push((p, irr)),
        }
    }
    out
}
