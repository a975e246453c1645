//! Formula language for the four dialects: ATL (with first-class
//! Release), ATLorig (the X/G/U fragment), EATL (adds `Finf`/`Ginf`)
//! and ATL+ (boolean combinations of depth-1 path formulas).
//!
//! Surface syntax, with `!` > `&` > `|` > `->` and modal operators
//! binding tighter than boolean path connectives:
//!
//! ```text
//! <<A1>> X p
//! <<A1,A2>> (p U q)
//! <<>> G (p | q)
//! <<A1>> (G !s & (F p -> F q))      # ATL+
//! <<A1>> Finf p                     # EATL
//! ```
//!
//! Coalition names are resolved against a structure at check time, not
//! at parse time, so formulas are portable across structures sharing
//! agent names.
//!
//! Release is a core operator here: the X/G/U fragment cannot express
//! it, so it is not treated as an abbreviation. Negation at path level
//! is accepted for ATL/EATL/ATL+ and pushed to dual operators during
//! normalization (`!(p U q)` becomes `!p R !q`, `!X p` becomes `X !p`).

mod core;
mod parse;

pub use self::core::{Arena, NodeId, PathExpr, PathLit, Prepared, ResolveError, StateNode};
pub use parse::{parse, FormulaParseError};

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Formula dialect; governs the admissible path-formula shapes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dialect {
    Atl,
    AtlOrig,
    Eatl,
    AtlPlus,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dialect::Atl => write!(f, "atl"),
            Dialect::AtlOrig => write!(f, "atlorig"),
            Dialect::Eatl => write!(f, "eatl"),
            Dialect::AtlPlus => write!(f, "atlplus"),
        }
    }
}

impl std::str::FromStr for Dialect {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "atl" => Ok(Dialect::Atl),
            "atlorig" => Ok(Dialect::AtlOrig),
            "eatl" => Ok(Dialect::Eatl),
            "atlplus" => Ok(Dialect::AtlPlus),
            other => Err(format!("unknown dialect `{other}`")),
        }
    }
}

/// State formula AST. `Enforce` is the coalition modality `<<A>> pi`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum StateFormula {
    True,
    False,
    Prop(String),
    Not(Box<StateFormula>),
    And(Box<StateFormula>, Box<StateFormula>),
    Or(Box<StateFormula>, Box<StateFormula>),
    Implies(Box<StateFormula>, Box<StateFormula>),
    Enforce(Vec<String>, Box<PathFormula>),
}

/// Path formula AST. Temporal operands are state formulas, so ATL*
/// nesting is unrepresentable by construction; boolean combinations are
/// ATL+ only.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PathFormula {
    Not(Box<PathFormula>),
    And(Box<PathFormula>, Box<PathFormula>),
    Or(Box<PathFormula>, Box<PathFormula>),
    Implies(Box<PathFormula>, Box<PathFormula>),
    Next(Box<StateFormula>),
    Until(Box<StateFormula>, Box<StateFormula>),
    Release(Box<StateFormula>, Box<StateFormula>),
    WeakUntil(Box<StateFormula>, Box<StateFormula>),
    Globally(Box<StateFormula>),
    Finally(Box<StateFormula>),
    InfOften(Box<StateFormula>),
    AlmostAlways(Box<StateFormula>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DialectError {
    #[error("operator `{op}` is not allowed in dialect {dialect}")]
    Operator { op: &'static str, dialect: Dialect },
    #[error("boolean path combinations are only allowed in dialect atlplus")]
    PathBoolean,
    #[error("path negation is not allowed in dialect atlorig")]
    PathNegation,
}

impl StateFormula {
    pub fn prop(name: &str) -> StateFormula {
        StateFormula::Prop(name.to_string())
    }

    pub fn not(a: StateFormula) -> StateFormula {
        StateFormula::Not(Box::new(a))
    }

    pub fn and(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: StateFormula, b: StateFormula) -> StateFormula {
        StateFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn enforce<S: Into<String>>(
        agents: impl IntoIterator<Item = S>,
        path: PathFormula,
    ) -> StateFormula {
        StateFormula::Enforce(
            agents.into_iter().map(Into::into).collect(),
            Box::new(path),
        )
    }

    /// Big conjunction, `true` when empty.
    pub fn conj(parts: Vec<StateFormula>) -> StateFormula {
        let mut it = parts.into_iter();
        match it.next() {
            None => StateFormula::True,
            Some(first) => it.fold(first, StateFormula::and),
        }
    }

    /// Big disjunction, `false` when empty.
    pub fn disj(parts: Vec<StateFormula>) -> StateFormula {
        let mut it = parts.into_iter();
        match it.next() {
            None => StateFormula::False,
            Some(first) => it.fold(first, StateFormula::or),
        }
    }

    /// Check conformance to a dialect. Errors name the offending
    /// operator.
    pub fn check_dialect(&self, d: Dialect) -> Result<(), DialectError> {
        match self {
            StateFormula::True | StateFormula::False | StateFormula::Prop(_) => Ok(()),
            StateFormula::Not(a) => a.check_dialect(d),
            StateFormula::And(a, b)
            | StateFormula::Or(a, b)
            | StateFormula::Implies(a, b) => {
                a.check_dialect(d)?;
                b.check_dialect(d)
            }
            StateFormula::Enforce(_, path) => path.check_dialect_path(d),
        }
    }

    /// Expand abbreviations. The result uses only `true`, propositions,
    /// `!`, `|`, the coalition modality and the path operators X, U, R,
    /// G, Finf, Ginf (with `!`/`|` path combinations for ATL+).
    pub fn expand_sugar(&self) -> StateFormula {
        match self {
            StateFormula::True | StateFormula::Prop(_) => self.clone(),
            StateFormula::False => StateFormula::not(StateFormula::True),
            StateFormula::Not(a) => StateFormula::not(a.expand_sugar()),
            StateFormula::Or(a, b) => StateFormula::or(a.expand_sugar(), b.expand_sugar()),
            StateFormula::And(a, b) => StateFormula::not(StateFormula::or(
                StateFormula::not(a.expand_sugar()),
                StateFormula::not(b.expand_sugar()),
            )),
            StateFormula::Implies(a, b) => StateFormula::or(
                StateFormula::not(a.expand_sugar()),
                b.expand_sugar(),
            ),
            StateFormula::Enforce(agents, path) => {
                StateFormula::Enforce(agents.clone(), Box::new(path.expand_sugar()))
            }
        }
    }

    /// Tree size: node count of the sugar-expanded tree.
    pub fn size(&self) -> usize {
        self.expand_sugar().count_nodes()
    }

    /// DAG size: node count of the sugar-expanded tree after structural
    /// sharing of identical subtrees.
    pub fn dag_size(&self) -> usize {
        let expanded = self.expand_sugar();
        let mut seen: HashMap<Shared, usize> = HashMap::new();
        expanded.share(&mut seen);
        seen.len()
    }

    fn count_nodes(&self) -> usize {
        match self {
            StateFormula::True | StateFormula::False | StateFormula::Prop(_) => 1,
            StateFormula::Not(a) => 1 + a.count_nodes(),
            StateFormula::And(a, b)
            | StateFormula::Or(a, b)
            | StateFormula::Implies(a, b) => 1 + a.count_nodes() + b.count_nodes(),
            StateFormula::Enforce(_, p) => 1 + p.count_nodes(),
        }
    }

    fn share(&self, seen: &mut HashMap<Shared, usize>) -> usize {
        let children: Vec<usize> = match self {
            StateFormula::True | StateFormula::False | StateFormula::Prop(_) => vec![],
            StateFormula::Not(a) => vec![a.share(seen)],
            StateFormula::And(a, b)
            | StateFormula::Or(a, b)
            | StateFormula::Implies(a, b) => vec![a.share(seen), b.share(seen)],
            StateFormula::Enforce(_, p) => vec![p.share(seen)],
        };
        intern_shared(Shared::state_key(self, children), seen)
    }
}

impl PathFormula {
    fn check_dialect_path(&self, d: Dialect) -> Result<(), DialectError> {
        // Strip an outer block of negations; they are fine except in
        // ATLorig, whose grammar has no path negation.
        let mut inner = self;
        while let PathFormula::Not(x) = inner {
            if d == Dialect::AtlOrig {
                return Err(DialectError::PathNegation);
            }
            inner = x;
        }
        match inner {
            PathFormula::Not(_) => unreachable!(),
            PathFormula::And(a, b)
            | PathFormula::Or(a, b)
            | PathFormula::Implies(a, b) => {
                if d != Dialect::AtlPlus {
                    return Err(DialectError::PathBoolean);
                }
                a.check_dialect_path(d)?;
                b.check_dialect_path(d)
            }
            PathFormula::Next(a) | PathFormula::Globally(a) | PathFormula::Finally(a) => {
                // F is an abbreviation of `true U .`, expressible in
                // every dialect.
                a.check_dialect(d)
            }
            PathFormula::Until(a, b) => {
                a.check_dialect(d)?;
                b.check_dialect(d)
            }
            PathFormula::Release(a, b) | PathFormula::WeakUntil(a, b) => {
                if d == Dialect::AtlOrig {
                    return Err(DialectError::Operator {
                        op: if matches!(inner, PathFormula::Release(..)) {
                            "R"
                        } else {
                            "W"
                        },
                        dialect: d,
                    });
                }
                a.check_dialect(d)?;
                b.check_dialect(d)
            }
            PathFormula::InfOften(a) | PathFormula::AlmostAlways(a) => {
                if d != Dialect::Eatl {
                    return Err(DialectError::Operator {
                        op: if matches!(inner, PathFormula::InfOften(_)) {
                            "Finf"
                        } else {
                            "Ginf"
                        },
                        dialect: d,
                    });
                }
                a.check_dialect(d)
            }
        }
    }

    fn expand_sugar(&self) -> PathFormula {
        match self {
            PathFormula::Not(a) => PathFormula::Not(Box::new(a.expand_sugar())),
            PathFormula::Or(a, b) => {
                PathFormula::Or(Box::new(a.expand_sugar()), Box::new(b.expand_sugar()))
            }
            PathFormula::And(a, b) => PathFormula::Not(Box::new(PathFormula::Or(
                Box::new(PathFormula::Not(Box::new(a.expand_sugar()))),
                Box::new(PathFormula::Not(Box::new(b.expand_sugar()))),
            ))),
            PathFormula::Implies(a, b) => PathFormula::Or(
                Box::new(PathFormula::Not(Box::new(a.expand_sugar()))),
                Box::new(b.expand_sugar()),
            ),
            PathFormula::Next(a) => PathFormula::Next(Box::new(a.expand_sugar())),
            PathFormula::Until(a, b) => {
                PathFormula::Until(Box::new(a.expand_sugar()), Box::new(b.expand_sugar()))
            }
            PathFormula::Release(a, b) => {
                PathFormula::Release(Box::new(a.expand_sugar()), Box::new(b.expand_sugar()))
            }
            // phi W psi  =  psi R (phi | psi)
            PathFormula::WeakUntil(a, b) => {
                let a = a.expand_sugar();
                let b = b.expand_sugar();
                PathFormula::Release(
                    Box::new(b.clone()),
                    Box::new(StateFormula::or(a, b)),
                )
            }
            PathFormula::Globally(a) => PathFormula::Globally(Box::new(a.expand_sugar())),
            // F phi  =  true U phi
            PathFormula::Finally(a) => PathFormula::Until(
                Box::new(StateFormula::True),
                Box::new(a.expand_sugar()),
            ),
            PathFormula::InfOften(a) => PathFormula::InfOften(Box::new(a.expand_sugar())),
            PathFormula::AlmostAlways(a) => {
                PathFormula::AlmostAlways(Box::new(a.expand_sugar()))
            }
        }
    }

    fn count_nodes(&self) -> usize {
        match self {
            PathFormula::Not(a) => 1 + a.count_nodes(),
            PathFormula::And(a, b)
            | PathFormula::Or(a, b)
            | PathFormula::Implies(a, b) => 1 + a.count_nodes() + b.count_nodes(),
            PathFormula::Next(a)
            | PathFormula::Globally(a)
            | PathFormula::Finally(a)
            | PathFormula::InfOften(a)
            | PathFormula::AlmostAlways(a) => 1 + a.count_nodes(),
            PathFormula::Until(a, b)
            | PathFormula::Release(a, b)
            | PathFormula::WeakUntil(a, b) => 1 + a.count_nodes() + b.count_nodes(),
        }
    }

    fn share(&self, seen: &mut HashMap<Shared, usize>) -> usize {
        let children: Vec<usize> = match self {
            PathFormula::Not(a) => vec![a.share(seen)],
            PathFormula::And(a, b)
            | PathFormula::Or(a, b)
            | PathFormula::Implies(a, b) => vec![a.share(seen), b.share(seen)],
            PathFormula::Next(a)
            | PathFormula::Globally(a)
            | PathFormula::Finally(a)
            | PathFormula::InfOften(a)
            | PathFormula::AlmostAlways(a) => vec![a.share(seen)],
            PathFormula::Until(a, b)
            | PathFormula::Release(a, b)
            | PathFormula::WeakUntil(a, b) => vec![a.share(seen), b.share(seen)],
        };
        intern_shared(Shared::path_key(self, children), seen)
    }
}

/// Structural key for subtree sharing: operator tag, payload, child ids.
#[derive(PartialEq, Eq, Hash)]
struct Shared {
    tag: &'static str,
    payload: String,
    children: Vec<usize>,
}

impl Shared {
    fn state_key(f: &StateFormula, children: Vec<usize>) -> Shared {
        let (tag, payload) = match f {
            StateFormula::True => ("true", String::new()),
            StateFormula::False => ("false", String::new()),
            StateFormula::Prop(p) => ("prop", p.clone()),
            StateFormula::Not(_) => ("not", String::new()),
            StateFormula::And(..) => ("and", String::new()),
            StateFormula::Or(..) => ("or", String::new()),
            StateFormula::Implies(..) => ("imp", String::new()),
            StateFormula::Enforce(agents, _) => ("enforce", agents.join(",")),
        };
        Shared {
            tag,
            payload,
            children,
        }
    }

    fn path_key(f: &PathFormula, children: Vec<usize>) -> Shared {
        let tag = match f {
            PathFormula::Not(_) => "pnot",
            PathFormula::And(..) => "pand",
            PathFormula::Or(..) => "por",
            PathFormula::Implies(..) => "pimp",
            PathFormula::Next(_) => "X",
            PathFormula::Until(..) => "U",
            PathFormula::Release(..) => "R",
            PathFormula::WeakUntil(..) => "W",
            PathFormula::Globally(_) => "G",
            PathFormula::Finally(_) => "F",
            PathFormula::InfOften(_) => "Finf",
            PathFormula::AlmostAlways(_) => "Ginf",
        };
        Shared {
            tag,
            payload: String::new(),
            children,
        }
    }
}

fn intern_shared(key: Shared, seen: &mut HashMap<Shared, usize>) -> usize {
    let next = seen.len();
    *seen.entry(key).or_insert(next)
}

// Pretty printer. `parse(print(f))` reproduces `f` up to AST equality.

fn state_prec(f: &StateFormula) -> u8 {
    match f {
        StateFormula::Implies(..) => 1,
        StateFormula::Or(..) => 2,
        StateFormula::And(..) => 3,
        _ => 4,
    }
}

fn path_prec(f: &PathFormula) -> u8 {
    match f {
        PathFormula::Implies(..) => 1,
        PathFormula::Or(..) => 2,
        PathFormula::And(..) => 3,
        _ => 4,
    }
}

fn fmt_state(f: &StateFormula, parent: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = state_prec(f);
    let parens = prec < parent;
    if parens {
        write!(out, "(")?;
    }
    match f {
        StateFormula::True => write!(out, "true")?,
        StateFormula::False => write!(out, "false")?,
        StateFormula::Prop(p) => write!(out, "{p}")?,
        StateFormula::Not(a) => {
            write!(out, "!")?;
            fmt_state(a, 4, out)?;
        }
        StateFormula::And(a, b) => {
            fmt_state(a, 3, out)?;
            write!(out, " & ")?;
            fmt_state(b, 3, out)?;
        }
        StateFormula::Or(a, b) => {
            fmt_state(a, 2, out)?;
            write!(out, " | ")?;
            fmt_state(b, 2, out)?;
        }
        StateFormula::Implies(a, b) => {
            // Right associative.
            fmt_state(a, 2, out)?;
            write!(out, " -> ")?;
            fmt_state(b, 1, out)?;
        }
        StateFormula::Enforce(agents, path) => {
            write!(out, "<<{}>> ", agents.join(","))?;
            fmt_modal_body(path, out)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

/// Operand of a unary temporal operator: parenthesized unless it is a
/// simple unary state formula.
fn fmt_temporal_operand(f: &StateFormula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if state_prec(f) == 4 {
        fmt_state(f, 4, out)
    } else {
        write!(out, "(")?;
        fmt_state(f, 0, out)?;
        write!(out, ")")
    }
}

/// Body of a modality: prefix temporal chains print bare, everything
/// else parenthesized.
fn fmt_modal_body(f: &PathFormula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        PathFormula::Next(_)
        | PathFormula::Globally(_)
        | PathFormula::Finally(_)
        | PathFormula::InfOften(_)
        | PathFormula::AlmostAlways(_)
        | PathFormula::Not(_)
        | PathFormula::Until(..)
        | PathFormula::Release(..)
        | PathFormula::WeakUntil(..) => fmt_path(f, 4, out),
        _ => {
            write!(out, "(")?;
            fmt_path(f, 0, out)?;
            write!(out, ")")
        }
    }
}

fn fmt_path(f: &PathFormula, parent: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let prec = path_prec(f);
    let parens = prec < parent;
    if parens {
        write!(out, "(")?;
    }
    match f {
        PathFormula::Not(a) => {
            write!(out, "!")?;
            // The operand of a path negation must reparse as a prefix
            // item, so binary temporal operators get parentheses.
            match **a {
                PathFormula::Until(..)
                | PathFormula::Release(..)
                | PathFormula::WeakUntil(..)
                | PathFormula::And(..)
                | PathFormula::Or(..)
                | PathFormula::Implies(..) => {
                    write!(out, "(")?;
                    fmt_path(a, 0, out)?;
                    write!(out, ")")?;
                }
                _ => fmt_path(a, 4, out)?,
            }
        }
        PathFormula::And(a, b) => {
            fmt_path(a, 3, out)?;
            write!(out, " & ")?;
            fmt_path(b, 3, out)?;
        }
        PathFormula::Or(a, b) => {
            fmt_path(a, 2, out)?;
            write!(out, " | ")?;
            fmt_path(b, 2, out)?;
        }
        PathFormula::Implies(a, b) => {
            fmt_path(a, 2, out)?;
            write!(out, " -> ")?;
            fmt_path(b, 1, out)?;
        }
        PathFormula::Next(a) => {
            write!(out, "X ")?;
            fmt_temporal_operand(a, out)?;
        }
        PathFormula::Globally(a) => {
            write!(out, "G ")?;
            fmt_temporal_operand(a, out)?;
        }
        PathFormula::Finally(a) => {
            write!(out, "F ")?;
            fmt_temporal_operand(a, out)?;
        }
        PathFormula::InfOften(a) => {
            write!(out, "Finf ")?;
            fmt_temporal_operand(a, out)?;
        }
        PathFormula::AlmostAlways(a) => {
            write!(out, "Ginf ")?;
            fmt_temporal_operand(a, out)?;
        }
        PathFormula::Until(a, b) => {
            fmt_temporal_operand(a, out)?;
            write!(out, " U ")?;
            fmt_temporal_operand(b, out)?;
        }
        PathFormula::Release(a, b) => {
            fmt_temporal_operand(a, out)?;
            write!(out, " R ")?;
            fmt_temporal_operand(b, out)?;
        }
        PathFormula::WeakUntil(a, b) => {
            fmt_temporal_operand(a, out)?;
            write!(out, " W ")?;
            fmt_temporal_operand(b, out)?;
        }
    }
    if parens {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for StateFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_state(self, 0, f)
    }
}

impl fmt::Display for PathFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_path(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atl(s: &str) -> StateFormula {
        parse(s, Dialect::Atl).unwrap()
    }

    #[test]
    fn parse_minimal_modal() {
        let f = atl("<<A1>> X p");
        assert_eq!(
            f,
            StateFormula::enforce(["A1"], PathFormula::Next(Box::new(StateFormula::prop("p"))))
        );
    }

    #[test]
    fn parse_release_formula() {
        // The formula separating ATL from its X/G/U fragment.
        let f = atl("<<A1>> (b R (a | b))");
        let expect = StateFormula::enforce(
            ["A1"],
            PathFormula::Release(
                Box::new(StateFormula::prop("b")),
                Box::new(StateFormula::or(
                    StateFormula::prop("a"),
                    StateFormula::prop("b"),
                )),
            ),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn dialect_gates() {
        assert!(parse("<<A1>> (a U b)", Dialect::AtlOrig).is_ok());
        let e = parse("<<A1>> (a R b)", Dialect::AtlOrig).unwrap_err();
        assert!(e.to_string().contains('R'), "{e}");
        assert!(parse("<<A1>> Finf p", Dialect::Eatl).is_ok());
        assert!(parse("<<A1>> Finf p", Dialect::Atl).is_err());
        assert!(parse("<<A1>> (F p & G q)", Dialect::AtlPlus).is_ok());
        assert!(parse("<<A1>> (F p & G q)", Dialect::Atl).is_err());
        assert!(parse("<<A1>> !(X p)", Dialect::Atl).is_ok());
        assert!(parse("<<A1>> !(X p)", Dialect::AtlOrig).is_err());
    }

    #[test]
    fn sizes() {
        assert_eq!(atl("p").size(), 1);
        assert_eq!(atl("p").dag_size(), 1);

        let f = atl("<<A1>> (p U p)");
        assert_eq!(f.size(), 4);
        assert!(f.dag_size() < f.size());
        assert_eq!(f.dag_size(), 3);

        // G is core: no expansion blow-up.
        assert_eq!(atl("<<A1>> G p").size(), 3);
        // F expands to `true U .`.
        assert_eq!(atl("<<A1>> F p").size(), 4);
    }

    #[test]
    fn weak_until_expansion() {
        let f = atl("<<A1>> (a W b)");
        let expanded = f.expand_sugar();
        let expect = StateFormula::enforce(
            ["A1"],
            PathFormula::Release(
                Box::new(StateFormula::prop("b")),
                Box::new(StateFormula::or(
                    StateFormula::prop("a"),
                    StateFormula::prop("b"),
                )),
            ),
        );
        assert_eq!(expanded, expect);
    }

    #[test]
    fn print_parse_roundtrip_examples() {
        for (text, dialect) in [
            ("<<A1>> X p", Dialect::Atl),
            ("<<A1,A2>> (p U q)", Dialect::Atl),
            ("<<>> G (p | q)", Dialect::Atl),
            ("!<<A1>> X !p | q -> r", Dialect::Atl),
            ("<<A1>> (G !s & (F p -> F q))", Dialect::AtlPlus),
            ("<<A1>> Ginf (p -> q)", Dialect::Eatl),
            ("<<A1>> !(p U q)", Dialect::Atl),
            ("<<A1>> (b R (a | b))", Dialect::Atl),
        ] {
            let f = parse(text, dialect).unwrap();
            let printed = f.to_string();
            let again = parse(&printed, dialect)
                .unwrap_or_else(|e| panic!("reparse `{printed}`: {e}"));
            assert_eq!(f, again, "roundtrip of `{text}` via `{printed}`");
        }
    }
}
