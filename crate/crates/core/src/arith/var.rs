//! Tagged variables and the global variable order.
//!
//! Every polynomial in the crate lives over one conceptual, lazily grown set
//! of variables. The order between them is fixed:
//! parameters < states (by index) < ansatz unknowns < input jets (by order)
//! < output jets (by order). Names are interned so a [`Var`] is `Copy`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

#[derive(Default)]
struct Interner {
    names: Vec<&'static str>,
    ids: HashMap<&'static str, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::default()))
}

/// Interned symbol name.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sym(u32);

impl Sym {
    pub fn new(name: &str) -> Sym {
        if let Some(&id) = interner().read().unwrap().ids.get(name) {
            return Sym(id);
        }
        let mut w = interner().write().unwrap();
        if let Some(&id) = w.ids.get(name) {
            return Sym(id);
        }
        // Names live for the whole process; the set is small.
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = w.names.len() as u32;
        w.names.push(leaked);
        w.ids.insert(leaked, id);
        Sym(id)
    }

    pub fn as_str(self) -> &'static str {
        interner().read().unwrap().names[self.0 as usize]
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Compares names so that `x2 < x10` and `a1 < b0`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut ai, mut bi) = (a.as_bytes(), b.as_bytes());
    loop {
        match (ai.first(), bi.first()) {
            (None, None) => return Ordering::Equal,
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(x), Some(y)) if x.is_ascii_digit() && y.is_ascii_digit() => {
                let na = ai.iter().take_while(|c| c.is_ascii_digit()).count();
                let nb = bi.iter().take_while(|c| c.is_ascii_digit()).count();
                let (da, db) = (&ai[..na], &bi[..nb]);
                let ta = trim_zeros(da);
                let tb = trim_zeros(db);
                let ord = ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then(na.cmp(&nb));
                if ord != Ordering::Equal {
                    return ord;
                }
                ai = &ai[na..];
                bi = &bi[nb..];
            }
            (Some(x), Some(y)) => {
                if x != y {
                    return x.cmp(y);
                }
                ai = &ai[1..];
                bi = &bi[1..];
            }
        }
    }
}

fn trim_zeros(d: &[u8]) -> &[u8] {
    let z = d.iter().take_while(|&&c| c == b'0').count();
    &d[z..]
}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let r = interner().read().unwrap();
        let (a, b) = (r.names[self.0 as usize], r.names[other.0 as usize]);
        natural_cmp(a, b).then_with(|| a.cmp(b))
    }
}

/// Variable kinds, listed in increasing global order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    Parameter,
    State,
    Ansatz,
    Input,
    Output,
}

/// A variable: `(kind, name, index)`.
///
/// `index` is the jet order for inputs and outputs, the position for
/// states, and zero otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Var {
    kind: VarKind,
    index: u32,
    name: Sym,
}

impl Var {
    pub fn param(name: &str) -> Var {
        Var { kind: VarKind::Parameter, index: 0, name: Sym::new(name) }
    }

    /// State variable with the given (1-based) position.
    pub fn state(name: &str, index: u32) -> Var {
        Var { kind: VarKind::State, index, name: Sym::new(name) }
    }

    /// The conventional state `x{index}`.
    pub fn x(index: u32) -> Var {
        Var::state(&format!("x{index}"), index)
    }

    pub fn ansatz(name: &str) -> Var {
        Var { kind: VarKind::Ansatz, index: 0, name: Sym::new(name) }
    }

    pub fn input(order: u32) -> Var {
        Var { kind: VarKind::Input, index: order, name: Sym::new("u") }
    }

    pub fn output(order: u32) -> Var {
        Var { kind: VarKind::Output, index: order, name: Sym::new("y") }
    }

    pub fn kind(self) -> VarKind {
        self.kind
    }

    pub fn name(self) -> &'static str {
        self.name.as_str()
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_jet(self) -> bool {
        matches!(self.kind, VarKind::Input | VarKind::Output)
    }

    /// Jet order for inputs and outputs.
    pub fn jet_order(self) -> Option<u32> {
        self.is_jet().then_some(self.index)
    }

    /// The next jet (`y^(i)` to `y^(i+1)`).
    pub fn bumped(self) -> Option<Var> {
        self.is_jet().then(|| Var { index: self.index + 1, ..self })
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        self.kind
            .cmp(&other.kind)
            .then(self.index.cmp(&other.index))
            .then_with(|| self.name.cmp(&other.name))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            VarKind::Input | VarKind::Output => match self.index {
                0 => write!(f, "{}", self.name()),
                1 => write!(f, "{}'", self.name()),
                2 => write!(f, "{}''", self.name()),
                k => write!(f, "{}^({})", self.name(), k),
            },
            _ => f.write_str(self.name()),
        }
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn global_order() {
        let k = Var::param("k1");
        let x1 = Var::x(1);
        let x2 = Var::x(2);
        let a = Var::ansatz("a0");
        let u0 = Var::input(0);
        let u1 = Var::input(1);
        let y0 = Var::output(0);
        let mut v = vec![y0, u1, a, x2, u0, k, x1];
        v.sort();
        assert_eq!(v, vec![k, x1, x2, a, u0, u1, y0]);
    }

    #[test]
    fn natural_names() {
        assert!(Var::ansatz("a2") < Var::ansatz("a10"));
        assert!(Var::param("k9") < Var::param("k10"));
        assert!(Var::ansatz("a9") < Var::ansatz("b1"));
    }

    #[test]
    fn display_jets() {
        assert_eq!(Var::output(0).to_string(), "y");
        assert_eq!(Var::output(2).to_string(), "y''");
        assert_eq!(Var::input(3).to_string(), "u^(3)");
    }
}
