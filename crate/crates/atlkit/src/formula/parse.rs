//! Recursive-descent parser for the formula surface syntax.
//!
//! Inside a coalition modality the body is either a prefix temporal
//! chain (`X p`, `G !s`, `!(...)`) or a parenthesized path expression;
//! binary `U`/`R`/`W` and boolean path combinations always sit inside
//! parentheses, as in `<<A1>> (p U q)`.

use std::fmt;

use thiserror::Error;

use super::{Dialect, DialectError, PathFormula, StateFormula};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaParseError {
    #[error("at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("{0}")]
    Dialect(#[from] DialectError),
}

fn syntax<T>(pos: usize, message: impl Into<String>) -> Result<T, FormulaParseError> {
    Err(FormulaParseError::Syntax {
        pos,
        message: message.into(),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    CoalOpen,
    CoalClose,
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
    Comma,
    True,
    False,
    Next,
    Until,
    Release,
    WeakUntil,
    Globally,
    Finally,
    InfOften,
    AlmostAlways,
    Ident(String),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::CoalOpen => "<<",
            Tok::CoalClose => ">>",
            Tok::Not => "!",
            Tok::And => "&",
            Tok::Or => "|",
            Tok::Implies => "->",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Comma => ",",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Next => "X",
            Tok::Until => "U",
            Tok::Release => "R",
            Tok::WeakUntil => "W",
            Tok::Globally => "G",
            Tok::Finally => "F",
            Tok::InfOften => "Finf",
            Tok::AlmostAlways => "Ginf",
            Tok::Ident(s) => return write!(f, "{s}"),
        };
        write!(f, "{s}")
    }
}

fn lex(input: &str) -> Result<Vec<(usize, Tok)>, FormulaParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '<' => {
                if bytes.get(i + 1) == Some(&b'<') {
                    out.push((i, Tok::CoalOpen));
                    i += 2;
                } else {
                    return syntax(i, "expected `<<`");
                }
            }
            '>' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((i, Tok::CoalClose));
                    i += 2;
                } else {
                    return syntax(i, "expected `>>`");
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    out.push((i, Tok::Implies));
                    i += 2;
                } else {
                    return syntax(i, "expected `->`");
                }
            }
            '!' => {
                out.push((i, Tok::Not));
                i += 1;
            }
            '&' => {
                out.push((i, Tok::And));
                i += 1;
            }
            '|' => {
                out.push((i, Tok::Or));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "true" => Tok::True,
                    "false" => Tok::False,
                    "X" => Tok::Next,
                    "U" => Tok::Until,
                    "R" => Tok::Release,
                    "W" => Tok::WeakUntil,
                    "G" => Tok::Globally,
                    "F" => Tok::Finally,
                    "Finf" => Tok::InfOften,
                    "Ginf" => Tok::AlmostAlways,
                    _ => Tok::Ident(word.to_string()),
                };
                out.push((start, tok));
            }
            other => return syntax(i, format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

/// Either a state formula or a path formula; path expressions are
/// parsed into this shape and classified afterwards.
enum Mixed {
    State(StateFormula),
    Path(PathFormula),
}

struct Parser {
    tokens: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<(), FormulaParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            syntax(
                self.here(),
                format!(
                    "expected `{tok}`, found {}",
                    self.peek()
                        .map_or("end of input".to_string(), |t| format!("`{t}`")),
                ),
            )
        }
    }

    // State-level grammar.

    fn state_implies(&mut self) -> Result<StateFormula, FormulaParseError> {
        let left = self.state_or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let right = self.state_implies()?;
            Ok(StateFormula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn state_or(&mut self) -> Result<StateFormula, FormulaParseError> {
        let mut left = self.state_and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let right = self.state_and()?;
            left = StateFormula::or(left, right);
        }
        Ok(left)
    }

    fn state_and(&mut self) -> Result<StateFormula, FormulaParseError> {
        let mut left = self.state_unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let right = self.state_unary()?;
            left = StateFormula::and(left, right);
        }
        Ok(left)
    }

    fn state_unary(&mut self) -> Result<StateFormula, FormulaParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(StateFormula::not(self.state_unary()?))
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(StateFormula::True)
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(StateFormula::False)
            }
            Some(Tok::Ident(_)) => {
                let name = match self.bump() {
                    Some(Tok::Ident(n)) => n,
                    _ => unreachable!(),
                };
                Ok(StateFormula::Prop(name))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.state_implies()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::CoalOpen) => self.modality(),
            other => syntax(
                self.here(),
                format!(
                    "expected a state formula, found {}",
                    other.map_or("end of input".to_string(), |t| format!("`{t}`")),
                ),
            ),
        }
    }

    fn modality(&mut self) -> Result<StateFormula, FormulaParseError> {
        self.expect(Tok::CoalOpen)?;
        let mut agents = Vec::new();
        if self.peek() != Some(&Tok::CoalClose) {
            loop {
                match self.bump() {
                    Some(Tok::Ident(name)) => agents.push(name),
                    other => {
                        return syntax(
                            self.here(),
                            format!(
                                "expected agent name in coalition, found {}",
                                other.map_or("end of input".to_string(), |t| format!("`{t}`")),
                            ),
                        )
                    }
                }
                if self.peek() == Some(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::CoalClose)?;
        let at = self.here();
        let body = self.mixed_prefix()?;
        match body {
            Mixed::Path(p) => Ok(StateFormula::Enforce(agents, Box::new(p))),
            Mixed::State(_) => syntax(
                at,
                "expected a path formula after the coalition \
                 (binary and boolean path formulas need parentheses)",
            ),
        }
    }

    // Path-level grammar, producing `Mixed` values that are classified
    // once an operator forces one reading.

    fn mixed_implies(&mut self) -> Result<Mixed, FormulaParseError> {
        let at = self.here();
        let left = self.mixed_or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let right = self.mixed_implies()?;
            self.combine(at, left, right, "->")
        } else {
            Ok(left)
        }
    }

    fn mixed_or(&mut self) -> Result<Mixed, FormulaParseError> {
        let at = self.here();
        let mut left = self.mixed_and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let right = self.mixed_and()?;
            left = self.combine(at, left, right, "|")?;
        }
        Ok(left)
    }

    fn mixed_and(&mut self) -> Result<Mixed, FormulaParseError> {
        let at = self.here();
        let mut left = self.mixed_unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let right = self.mixed_unary()?;
            left = self.combine(at, left, right, "&")?;
        }
        Ok(left)
    }

    fn combine(
        &self,
        at: usize,
        left: Mixed,
        right: Mixed,
        op: &str,
    ) -> Result<Mixed, FormulaParseError> {
        match (left, right) {
            (Mixed::State(a), Mixed::State(b)) => Ok(Mixed::State(match op {
                "&" => StateFormula::and(a, b),
                "|" => StateFormula::or(a, b),
                _ => StateFormula::implies(a, b),
            })),
            (Mixed::Path(a), Mixed::Path(b)) => Ok(Mixed::Path(match op {
                "&" => PathFormula::And(Box::new(a), Box::new(b)),
                "|" => PathFormula::Or(Box::new(a), Box::new(b)),
                _ => PathFormula::Implies(Box::new(a), Box::new(b)),
            })),
            _ => syntax(
                at,
                format!(
                    "operands of `{op}` mix a state formula with a path formula; \
                     parenthesize the state part into a temporal operator"
                ),
            ),
        }
    }

    /// Unary item optionally followed by a binary temporal operator.
    fn mixed_unary(&mut self) -> Result<Mixed, FormulaParseError> {
        let at = self.here();
        let left = self.mixed_prefix()?;
        let op = match self.peek() {
            Some(Tok::Until) => Some(PathBinOp::Until),
            Some(Tok::Release) => Some(PathBinOp::Release),
            Some(Tok::WeakUntil) => Some(PathBinOp::WeakUntil),
            _ => None,
        };
        let Some(op) = op else { return Ok(left) };
        self.pos += 1;
        let lhs = match left {
            Mixed::State(s) => s,
            Mixed::Path(_) => {
                return syntax(
                    at,
                    format!(
                        "left operand of `{}` must be a state formula \
                         (temporal operators cannot be nested)",
                        op.symbol()
                    ),
                )
            }
        };
        let rhs = self.state_unary()?;
        Ok(Mixed::Path(op.build(lhs, rhs)))
    }

    fn mixed_prefix(&mut self) -> Result<Mixed, FormulaParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                match self.mixed_prefix()? {
                    Mixed::State(s) => Ok(Mixed::State(StateFormula::not(s))),
                    Mixed::Path(p) => Ok(Mixed::Path(PathFormula::Not(Box::new(p)))),
                }
            }
            Some(Tok::Next) => self.prefix_temporal(PathUnOp::Next),
            Some(Tok::Globally) => self.prefix_temporal(PathUnOp::Globally),
            Some(Tok::Finally) => self.prefix_temporal(PathUnOp::Finally),
            Some(Tok::InfOften) => self.prefix_temporal(PathUnOp::InfOften),
            Some(Tok::AlmostAlways) => self.prefix_temporal(PathUnOp::AlmostAlways),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.mixed_implies()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Mixed::State(StateFormula::True))
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Mixed::State(StateFormula::False))
            }
            Some(Tok::Ident(_)) => {
                let name = match self.bump() {
                    Some(Tok::Ident(n)) => n,
                    _ => unreachable!(),
                };
                Ok(Mixed::State(StateFormula::Prop(name)))
            }
            Some(Tok::CoalOpen) => Ok(Mixed::State(self.modality()?)),
            other => syntax(
                self.here(),
                format!(
                    "expected a formula, found {}",
                    other.map_or("end of input".to_string(), |t| format!("`{t}`")),
                ),
            ),
        }
    }

    fn prefix_temporal(&mut self, op: PathUnOp) -> Result<Mixed, FormulaParseError> {
        self.pos += 1;
        let operand = self.state_unary()?;
        Ok(Mixed::Path(op.build(operand)))
    }
}

enum PathUnOp {
    Next,
    Globally,
    Finally,
    InfOften,
    AlmostAlways,
}

impl PathUnOp {
    fn build(self, s: StateFormula) -> PathFormula {
        let s = Box::new(s);
        match self {
            PathUnOp::Next => PathFormula::Next(s),
            PathUnOp::Globally => PathFormula::Globally(s),
            PathUnOp::Finally => PathFormula::Finally(s),
            PathUnOp::InfOften => PathFormula::InfOften(s),
            PathUnOp::AlmostAlways => PathFormula::AlmostAlways(s),
        }
    }
}

enum PathBinOp {
    Until,
    Release,
    WeakUntil,
}

impl PathBinOp {
    fn symbol(&self) -> &'static str {
        match self {
            PathBinOp::Until => "U",
            PathBinOp::Release => "R",
            PathBinOp::WeakUntil => "W",
        }
    }

    fn build(self, a: StateFormula, b: StateFormula) -> PathFormula {
        let (a, b) = (Box::new(a), Box::new(b));
        match self {
            PathBinOp::Until => PathFormula::Until(a, b),
            PathBinOp::Release => PathFormula::Release(a, b),
            PathBinOp::WeakUntil => PathFormula::WeakUntil(a, b),
        }
    }
}

/// Parse a state formula and check it against the dialect.
pub fn parse(input: &str, dialect: Dialect) -> Result<StateFormula, FormulaParseError> {
    let tokens = lex(input)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: input.len(),
    };
    let formula = p.state_implies()?;
    if p.pos != p.tokens.len() {
        return syntax(p.here(), format!("unexpected `{}`", p.peek().unwrap()));
    }
    formula.check_dialect(dialect)?;
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_coalition() {
        let f = parse("<<>> X p", Dialect::Atl).unwrap();
        assert_eq!(
            f,
            StateFormula::Enforce(
                vec![],
                Box::new(PathFormula::Next(Box::new(StateFormula::prop("p"))))
            )
        );
    }

    #[test]
    fn precedence() {
        let f = parse("!p & q | r -> s", Dialect::Atl).unwrap();
        // ((!p & q) | r) -> s
        assert_eq!(
            f,
            StateFormula::implies(
                StateFormula::or(
                    StateFormula::and(StateFormula::not(StateFormula::prop("p")), StateFormula::prop("q")),
                    StateFormula::prop("r")
                ),
                StateFormula::prop("s")
            )
        );
    }

    #[test]
    fn nested_modalities() {
        let f = parse("<<A1>> X <<A2>> G p", Dialect::Atl).unwrap();
        let inner = StateFormula::enforce(
            ["A2"],
            PathFormula::Globally(Box::new(StateFormula::prop("p"))),
        );
        assert_eq!(
            f,
            StateFormula::enforce(["A1"], PathFormula::Next(Box::new(inner)))
        );
    }

    #[test]
    fn until_of_modal_operand() {
        // The modality closes after `X a`; the U applies to the
        // resulting state formula.
        let f = parse("<<A1>> (<<A2>> X a U b)", Dialect::Atl).unwrap();
        let inner = StateFormula::enforce(["A2"], PathFormula::Next(Box::new(StateFormula::prop("a"))));
        assert_eq!(
            f,
            StateFormula::enforce(
                ["A1"],
                PathFormula::Until(Box::new(inner), Box::new(StateFormula::prop("b")))
            )
        );
    }

    #[test]
    fn negation_binds_tighter_than_until() {
        let f = parse("<<A1>> (!p U q)", Dialect::Atl).unwrap();
        assert_eq!(
            f,
            StateFormula::enforce(
                ["A1"],
                PathFormula::Until(
                    Box::new(StateFormula::not(StateFormula::prop("p"))),
                    Box::new(StateFormula::prop("q"))
                )
            )
        );
    }

    #[test]
    fn rejects_nested_temporal() {
        let e = parse("<<A1>> (X p U q)", Dialect::Atl).unwrap_err();
        assert!(e.to_string().contains("state formula"), "{e}");
        assert!(parse("<<A1>> (p U X q)", Dialect::Atl).is_err());
    }

    #[test]
    fn unparenthesized_binary_is_rejected() {
        assert!(parse("<<A1>> p U q", Dialect::Atl).is_err());
    }

    #[test]
    fn syntax_error_positions() {
        let e = parse("<<A1> X p", Dialect::Atl).unwrap_err();
        match e {
            FormulaParseError::Syntax { pos, .. } => assert_eq!(pos, 4),
            other => panic!("expected syntax error, got {other}"),
        }
    }
}
