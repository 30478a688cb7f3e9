//! System documents (JSON) and equation files.

use serde::{Deserialize, Serialize};

use super::parse::{parse_equation, parse_expr, ParseError};
use crate::arith::{MPoly, RatFunc, Var, VarKind};
use crate::dynsys::{show, DynSystem};

/// `{states, input, params, rates, output}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSource {
    pub states: Vec<String>,
    #[serde(default = "default_input")]
    pub input: String,
    #[serde(default)]
    pub params: Vec<String>,
    pub rates: Vec<String>,
    pub output: String,
}

fn default_input() -> String {
    "u".into()
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{what}: {err}")]
    Parse { what: String, err: ParseError },
    #[error("{0}")]
    Invalid(String),
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SystemSource {
    pub fn from_json(text: &str) -> Result<SystemSource, FileError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    fn symbol(&self, name: &str) -> Option<Var> {
        if let Some(i) = self.states.iter().position(|s| s == name) {
            return Some(Var::state(name, i as u32 + 1));
        }
        if name == self.input {
            return Some(Var::input(0));
        }
        self.params.iter().any(|p| p == name).then(|| Var::param(name))
    }

    /// Parameter symbols declared by the document.
    pub fn param_vars(&self) -> Vec<Var> {
        self.params.iter().map(|p| Var::param(p)).collect()
    }

    pub fn to_system(&self) -> Result<DynSystem, FileError> {
        let names = self.states.iter().chain(&self.params).chain(std::iter::once(&self.input));
        let mut seen = std::collections::BTreeSet::new();
        for n in names {
            if !valid_name(n) || n == "y" {
                return Err(FileError::Invalid(format!("invalid symbol name '{n}'")));
            }
            if !seen.insert(n.as_str()) {
                return Err(FileError::Invalid(format!("symbol '{n}' declared twice")));
            }
        }
        if self.states.len() != self.rates.len() {
            return Err(FileError::Invalid(format!("{} states but {} rates", self.states.len(), self.rates.len())));
        }
        let resolve = |n: &str| self.symbol(n);
        let parse = |what: String, text: &str| parse_expr(text, &resolve).map_err(|err| FileError::Parse { what, err });
        let states: Vec<Var> = self.states.iter().enumerate().map(|(i, s)| Var::state(s, i as u32 + 1)).collect();
        let f = self
            .rates
            .iter()
            .zip(&self.states)
            .map(|(r, s)| parse(format!("rate of {s}"), r))
            .collect::<Result<Vec<RatFunc>, _>>()?;
        let g = parse("output".into(), &self.output)?;
        DynSystem::new(states, f, g).map_err(|e| FileError::Invalid(e.to_string()))
    }

    pub fn from_system(s: &DynSystem) -> SystemSource {
        SystemSource {
            states: s.states().iter().map(|v| v.name().to_string()).collect(),
            input: "u".into(),
            params: s.params().iter().map(|v| v.name().to_string()).collect(),
            rates: s.f().iter().map(show).collect(),
            output: show(s.g()),
        }
    }
}

/// Parses an equation file.
///
/// Lines starting with `#` are comments; a line `params: k1, k2` declares
/// parameters; the remaining lines form one equation in `y`, `u` and the
/// parameters. Without a `params:` line, names `k<digits>` are parameters.
/// `extra` adds parameters declared elsewhere (a system document).
pub fn parse_dae(text: &str, extra: &[Var]) -> Result<MPoly, FileError> {
    let mut params: Option<Vec<String>> = None;
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("params:") {
            let names = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty());
            params.get_or_insert_with(Vec::new).extend(names);
            continue;
        }
        if !body.is_empty() {
            body.push(' ');
        }
        body.push_str(t);
    }
    if body.is_empty() {
        return Err(FileError::Invalid("no equation found".into()));
    }
    let resolve = |n: &str| -> Option<Var> {
        match n {
            "y" => return Some(Var::output(0)),
            "u" => return Some(Var::input(0)),
            _ => {}
        }
        if extra.iter().any(|v| v.name() == n) {
            return Some(Var::param(n));
        }
        let declared = match &params {
            Some(ps) => ps.iter().any(|p| p == n),
            None => n.len() > 1 && n.starts_with('k') && n[1..].bytes().all(|b| b.is_ascii_digit()),
        };
        declared.then(|| Var::param(n))
    };
    let r = parse_equation(&body, &resolve).map_err(|err| FileError::Parse { what: "equation".into(), err })?;
    if r.den().vars().iter().any(|v| v.kind() != VarKind::Parameter) {
        return Err(FileError::Invalid("the equation must be polynomial in y and u".into()));
    }
    Ok((&r * &RatFunc::from(r.den().clone())).num().clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_poly as pp;

    const SW: &str = r#"{"states": ["x1", "x2"], "input": "u", "params": [], "rates": ["x2^2", "x1*u"], "output": "x2"}"#;

    #[test]
    fn system_round_trip() {
        let src = SystemSource::from_json(SW).unwrap();
        let sys = src.to_system().unwrap();
        assert_eq!(sys.to_string(), "x1' = x2^2\nx2' = x1*u\ny = x2");
        assert_eq!(SystemSource::from_system(&sys), src);
    }

    #[test]
    fn named_states() {
        let text = r#"{"states": ["S", "I"], "params": ["b"], "rates": ["-b*S*I", "b*S*I - I"], "output": "I"}"#;
        let sys = SystemSource::from_json(text).unwrap().to_system().unwrap();
        assert_eq!(sys.states()[0].name(), "S");
        assert_eq!(sys.params(), vec![Var::param("b")]);
    }

    #[test]
    fn bad_documents() {
        let undeclared = r#"{"states": ["x1"], "rates": ["k1*x1"], "output": "x1"}"#;
        assert!(matches!(SystemSource::from_json(undeclared).unwrap().to_system(), Err(FileError::Parse { .. })));
        let mismatch = r#"{"states": ["x1", "x2"], "rates": ["x1"], "output": "x1"}"#;
        assert!(SystemSource::from_json(mismatch).unwrap().to_system().is_err());
        assert!(SystemSource::from_json(r#"{"states": []}"#).is_err());
        let derivative = r#"{"states": ["x1"], "rates": ["u'"], "output": "x1"}"#;
        assert!(SystemSource::from_json(derivative).unwrap().to_system().is_err());
    }

    #[test]
    fn equation_files() {
        let p = parse_dae("# Sontag-Wang\nu*y'' = y^2*u^2 + y'*u'\n", &[]).unwrap();
        assert_eq!(p, pp("u*y'' - y^2*u^2 - y'*u'"));
        let p = parse_dae("params: a, b\ny' = a*y +\n  b*u\n", &[]).unwrap();
        assert_eq!(p, &(&pp("y'") - &(&MPoly::var(Var::param("a")) * &pp("y"))) - &(&MPoly::var(Var::param("b")) * &pp("u")));
        assert!(matches!(parse_dae("y^(3) - a1*u", &[]), Err(FileError::Parse { .. })));
        assert!(parse_dae("params: k1\ny' - k2", &[]).is_err());
        assert!(parse_dae("y' - 1/y", &[]).is_err());
        assert_eq!(parse_dae("y'/k1 - y", &[]).unwrap(), pp("y' - k1*y"));
    }
}
