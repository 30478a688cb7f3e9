//! First-order realization algorithms and the top-level dispatcher.

pub mod alg2;
pub mod alg3;
pub mod srgs;
pub mod unipoly;

use std::fmt;

use thiserror::Error;

use crate::arith::factor::factor;
use crate::arith::{MPoly, RatFunc, Var, VarKind};
use crate::diffring::ord;
use crate::dynsys::{assemble_system, lie_sequence, solve_realization, verify_realization, DynSystem, Parametrization, RealizationMode};
use crate::param::{algorithm1, Alg1Options, Alg1Outcome, DEFAULT_POINT_HEIGHT};

pub use alg2::algorithm2;
pub use alg3::algorithm3;
pub use srgs::{srgs_solve, Srgs, SrgsClass, SrgsOutcome, DEFAULT_RICCATI_DEGREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Auto,
    OrderZero,
    FirstOrder,
    InputAffine,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizeOptions {
    pub mode: Mode,
    pub point_height: u32,
    pub riccati_degree: u32,
}

impl Default for RealizeOptions {
    fn default() -> Self {
        RealizeOptions { mode: Mode::Auto, point_height: DEFAULT_POINT_HEIGHT, riccati_degree: DEFAULT_RICCATI_DEGREE }
    }
}

impl RealizeOptions {
    pub fn with_mode(mode: Mode) -> Self {
        RealizeOptions { mode, ..Default::default() }
    }

    fn alg1(&self) -> Alg1Options {
        Alg1Options { point_height: self.point_height }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tag {
    Realized,
    No,
    Unsupported,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::Realized => "REALIZED",
            Tag::No => "NO",
            Tag::Unsupported => "UNSUPPORTED",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RealizeOutcome {
    pub tag: Tag,
    pub system: Option<DynSystem>,
    pub diagnostics: Vec<String>,
    pub reason: Option<String>,
    /// Parametrization produced on the order-zero path.
    pub gamma: Option<Parametrization>,
    /// Ansatz coefficients of the winning branch, order-zero path only.
    pub ansatz_values: Vec<(Var, RatFunc)>,
}

impl RealizeOutcome {
    pub fn realized(system: DynSystem, diagnostics: Vec<String>) -> Self {
        RealizeOutcome { tag: Tag::Realized, system: Some(system), diagnostics, reason: None, gamma: None, ansatz_values: vec![] }
    }

    pub fn no(diagnostics: Vec<String>) -> Self {
        RealizeOutcome { tag: Tag::No, system: None, diagnostics, reason: None, gamma: None, ansatz_values: vec![] }
    }

    pub fn unsupported(reason: impl Into<String>, diagnostics: Vec<String>) -> Self {
        RealizeOutcome {
            tag: Tag::Unsupported,
            system: None,
            diagnostics,
            reason: Some(reason.into()),
            gamma: None,
            ansatz_values: vec![],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("invalid equation: {0}")]
    Validation(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Checks the first-order shape shared by the two first-order algorithms.
pub(crate) fn first_order_shape(p: &MPoly) -> Result<(), RealizeError> {
    let (hy, hu) = (ord(p, VarKind::Output), ord(p, VarKind::Input));
    if hy != 1 {
        return Err(RealizeError::Precondition(format!("ord_y must be 1, found {hy}")));
    }
    if hu != 1 {
        return Err(RealizeError::Precondition(format!("ord_u must be 1, found {hu}")));
    }
    Ok(())
}

/// Routes `p` to the algorithm matching its shape and the requested mode.
pub fn realize(p: &MPoly, opts: &RealizeOptions) -> Result<RealizeOutcome, RealizeError> {
    let mut warnings = validate(p)?;
    let h = ord(p, VarKind::Output);
    let hu = ord(p, VarKind::Input);
    let mut out = match opts.mode {
        Mode::FirstOrder => algorithm2(p, opts)?,
        Mode::OrderZero if hu >= 1 => {
            return Err(RealizeError::Precondition(format!("order-zero mode needs ord_u <= 0, found {hu}")));
        }
        Mode::Auto | Mode::OrderZero | Mode::InputAffine if hu <= 0 => order_zero(p, h as usize, opts),
        Mode::InputAffine if h == 1 && hu == 1 => algorithm3(p, opts)?,
        Mode::Auto if h == 1 && hu == 1 => algorithm2(p, opts)?,
        _ => RealizeOutcome::unsupported("out of implemented scope; verify-only supported", vec![]),
    };
    let certified = warnings.is_empty();
    warnings.append(&mut out.diagnostics);
    out.diagnostics = warnings;
    if out.tag == Tag::No && !certified {
        return Ok(RealizeOutcome::unsupported("negative answer for an equation not certified irreducible", out.diagnostics));
    }
    if out.tag == Tag::Realized {
        let sys = out.system.as_ref().expect("realized outcome carries a system");
        if !final_check(sys, p, h as usize) {
            out.diagnostics.push("result failed the final verification".into());
            return Ok(RealizeOutcome::unsupported("result failed the final verification", out.diagnostics));
        }
    }
    Ok(out)
}

fn validate(p: &MPoly) -> Result<Vec<String>, RealizeError> {
    if p.is_zero() {
        return Err(RealizeError::Validation("the zero polynomial".into()));
    }
    if let Some(v) = p.vars().into_iter().find(|v| !matches!(v.kind(), VarKind::Output | VarKind::Input | VarKind::Parameter)) {
        return Err(RealizeError::Validation(format!("unexpected symbol {v}")));
    }
    if ord(p, VarKind::Output) < 1 {
        return Err(RealizeError::Validation("the equation must involve a derivative of y".into()));
    }
    let f = factor(p);
    let jets: Vec<&(MPoly, u32)> = f.pieces().iter().filter(|(q, _)| q.vars().iter().any(|v| v.is_jet())).collect();
    if jets.len() > 1 || jets.iter().any(|(_, m)| *m > 1) {
        let what = if f.is_complete() { "reducible" } else { "not square-free or reducible" };
        return Err(RealizeError::Validation(format!("the equation is {what}")));
    }
    let mut warnings = Vec::new();
    if !f.is_complete() {
        warnings.push("irreducibility could not be certified; negative answers degrade to UNSUPPORTED".into());
    }
    Ok(warnings)
}

fn order_zero(p: &MPoly, h: usize, opts: &RealizeOptions) -> RealizeOutcome {
    let mode = if opts.mode == Mode::InputAffine { RealizationMode::InputAffine } else { RealizationMode::Rational };
    let coords: Vec<Var> = (0..=h as u32).map(Var::output).collect();
    let r = match algorithm1(p, &coords, Var::input(0), mode, &opts.alg1()) {
        Alg1Outcome::Found(r) => r,
        Alg1Outcome::No(d) => return RealizeOutcome::no(d),
        Alg1Outcome::Unsupported(reason, d) => return RealizeOutcome::unsupported(reason, d),
    };
    let mut diag = r.diagnostics.clone();
    let Some(f) = solve_realization(&r.gamma, mode) else {
        diag.push("the realizability system has no solution in the requested class".into());
        return RealizeOutcome::unsupported("no right-hand side for the parametrization", diag);
    };
    let sys = match assemble_system(&r.gamma, f) {
        Ok(s) => s,
        Err(e) => return RealizeOutcome::unsupported(e.to_string(), diag),
    };
    if verify_realization(&sys, p) != Ok(true) {
        diag.push("assembled system does not verify".into());
        return RealizeOutcome::unsupported("assembled system does not verify", diag);
    }
    let mut out = RealizeOutcome::realized(sys, diag);
    out.gamma = Some(r.gamma);
    out.ansatz_values = r.ansatz_values;
    out
}

/// Verification plus the `d gamma_h / du' = d gamma_{h-1} / du` identity.
fn final_check(sys: &DynSystem, p: &MPoly, h: usize) -> bool {
    if verify_realization(sys, p) != Ok(true) {
        return false;
    }
    let seq = lie_sequence(sys, h);
    seq.gamma[h].derivative(Var::input(1)) == seq.gamma[h - 1].derivative(Var::input(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{parse_poly as pp, parse_rat as pr};

    const P_PP: &str = "y*y'' - k1*k3*y^2 + k1*k4*y^3 + k3*y*y' + k5*k2*y^2*u - k4*y^2*y' - y'^2";
    const P_SW: &str = "u*y'' - y^2*u^2 - y'*u'";

    fn run(p: &str, mode: Mode) -> RealizeOutcome {
        realize(&pp(p), &RealizeOptions::with_mode(mode)).unwrap()
    }

    #[test]
    fn predator_prey_order_zero() {
        let out = run(P_PP, Mode::OrderZero);
        assert_eq!(out.tag, Tag::Realized);
        let sys = out.system.unwrap();
        assert_eq!(sys.n(), 2);
        assert_eq!(sys.g(), &pr("x1"));
        assert!(out.ansatz_values.contains(&(Var::ansatz("a1"), pr("-k2*k5*x1"))));
    }

    #[test]
    fn sontag_wang_is_out_of_scope() {
        assert_eq!(run(P_SW, Mode::Auto).tag, Tag::Unsupported);
        assert!(matches!(
            realize(&pp(P_SW), &RealizeOptions::with_mode(Mode::FirstOrder)),
            Err(RealizeError::Precondition(_))
        ));
        assert!(matches!(
            realize(&pp(P_SW), &RealizeOptions::with_mode(Mode::OrderZero)),
            Err(RealizeError::Precondition(_))
        ));
    }

    #[test]
    fn routing_of_first_order_equations() {
        let out = run("y' - u'", Mode::InputAffine);
        assert_eq!(out.tag, Tag::Realized);
        assert_eq!(out.system.unwrap().g(), &pr("x1 + u"));
        assert_eq!(run("y' - (y - u)*u^2 - u'", Mode::Auto).tag, Tag::Realized);
        assert_eq!(run("y' - y", Mode::Auto).tag, Tag::Realized);
    }

    #[test]
    fn validation() {
        let bad = |s: &str| matches!(realize(&pp(s), &RealizeOptions::default()), Err(RealizeError::Validation(_)));
        assert!(bad("(y' - y)*(y' + y)"));
        assert!(bad("(y' - y)^2"));
        assert!(bad("y - u"));
        assert!(bad("y' - x1"));
        assert!(!bad("k1*(y' - y)"));
    }

    #[test]
    fn no_realization_order_zero() {
        // A conic without rational points: the point search cannot conclude.
        assert_eq!(run("y'^2 + y^2 + 1", Mode::Auto).tag, Tag::Unsupported);
        // Input-affine mode cannot express y' = 1/u.
        assert_eq!(run("u*y' - 1", Mode::InputAffine).tag, Tag::No);
        assert_eq!(run("u*y' - 1", Mode::Auto).tag, Tag::Realized);
    }
}
