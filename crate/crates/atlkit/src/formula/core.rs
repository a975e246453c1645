//! Normalized core form used by the checking engines.
//!
//! Surface formulas are lowered into a hash-consed DAG of state nodes
//! over `true`, resolved propositions, negation, disjunction and the
//! coalition modality. Path formulas are normalized to negation normal
//! form over depth-1 temporal literals: path negation is pushed to dual
//! operators, `F`/`G`/`W` are rewritten to `U`/`R`, and `Finf`/`Ginf`
//! stay primitive.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{PathFormula, StateFormula};
use crate::gamestruct::{Coalition, Frame};

pub type NodeId = usize;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum StateNode {
    True,
    Prop(usize),
    Not(NodeId),
    Or(NodeId, NodeId),
    Enforce(Coalition, PathExpr),
}

/// Depth-1 temporal literal with state-node operands.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PathLit {
    Next(NodeId),
    Until(NodeId, NodeId),
    Release(NodeId, NodeId),
    InfOften(NodeId),
    AlmostAlways(NodeId),
}

/// Positive boolean combination of temporal literals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum PathExpr {
    Lit(PathLit),
    And(Box<PathExpr>, Box<PathExpr>),
    Or(Box<PathExpr>, Box<PathExpr>),
}

impl PathExpr {
    pub fn as_literal(&self) -> Option<&PathLit> {
        match self {
            PathExpr::Lit(l) => Some(l),
            _ => None,
        }
    }

    pub fn for_each_operand(&self, f: &mut impl FnMut(NodeId)) {
        match self {
            PathExpr::Lit(l) => l.for_each_operand(f),
            PathExpr::And(a, b) | PathExpr::Or(a, b) => {
                a.for_each_operand(f);
                b.for_each_operand(f);
            }
        }
    }
}

impl PathLit {
    pub fn for_each_operand(&self, f: &mut impl FnMut(NodeId)) {
        match self {
            PathLit::Next(a) | PathLit::InfOften(a) | PathLit::AlmostAlways(a) => f(*a),
            PathLit::Until(a, b) | PathLit::Release(a, b) => {
                f(*a);
                f(*b);
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResolveError {
    #[error("unknown proposition `{0}`")]
    UnknownProp(String),
    #[error("unknown agent `{0}` in coalition")]
    UnknownAgent(String),
}

/// Hash-consed node store. Children always have smaller ids than their
/// parents, so ascending id order is a bottom-up evaluation order.
#[derive(Clone, Debug, Default)]
pub struct Arena {
    nodes: Vec<StateNode>,
    memo: HashMap<StateNode, NodeId>,
}

impl Arena {
    pub fn new() -> Self {
        Arena::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn get(&self, id: NodeId) -> &StateNode {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[StateNode] {
        &self.nodes
    }

    pub fn mk(&mut self, node: StateNode) -> NodeId {
        if let Some(id) = self.memo.get(&node) {
            return *id;
        }
        let id = self.nodes.len();
        self.nodes.push(node.clone());
        self.memo.insert(node, id);
        id
    }

    pub fn mk_true(&mut self) -> NodeId {
        self.mk(StateNode::True)
    }

    pub fn mk_false(&mut self) -> NodeId {
        let t = self.mk_true();
        self.mk(StateNode::Not(t))
    }

    /// Negation with double-negation collapse.
    pub fn mk_not(&mut self, a: NodeId) -> NodeId {
        if let StateNode::Not(inner) = self.nodes[a] {
            return inner;
        }
        self.mk(StateNode::Not(a))
    }

    pub fn mk_or(&mut self, a: NodeId, b: NodeId) -> NodeId {
        self.mk(StateNode::Or(a, b))
    }

    pub fn mk_and(&mut self, a: NodeId, b: NodeId) -> NodeId {
        let na = self.mk_not(a);
        let nb = self.mk_not(b);
        let or = self.mk_or(na, nb);
        self.mk_not(or)
    }

    /// Render a node for reports, using names from `frame`.
    pub fn render(&self, id: NodeId, frame: &Frame) -> String {
        let mut out = String::new();
        self.render_into(id, frame, &mut out);
        out
    }

    fn render_into(&self, id: NodeId, frame: &Frame, out: &mut String) {
        match self.get(id) {
            StateNode::True => out.push_str("true"),
            StateNode::Prop(p) => out.push_str(&frame.props[*p]),
            StateNode::Not(a) => {
                out.push('!');
                let atomic = matches!(
                    self.get(*a),
                    StateNode::True | StateNode::Prop(_) | StateNode::Not(_)
                );
                if atomic {
                    self.render_into(*a, frame, out);
                } else {
                    out.push('(');
                    self.render_into(*a, frame, out);
                    out.push(')');
                }
            }
            StateNode::Or(a, b) => {
                out.push('(');
                self.render_into(*a, frame, out);
                out.push_str(" | ");
                self.render_into(*b, frame, out);
                out.push(')');
            }
            StateNode::Enforce(c, path) => {
                let names: Vec<&str> = c.iter().map(|a| frame.agents[a.0].as_str()).collect();
                let _ = write!(out, "<<{}>> ", names.join(","));
                self.render_path(path, frame, out);
            }
        }
    }

    fn render_path(&self, path: &PathExpr, frame: &Frame, out: &mut String) {
        match path {
            PathExpr::Lit(l) => match l {
                PathLit::Next(a) => {
                    out.push_str("X ");
                    self.render_operand(*a, frame, out);
                }
                PathLit::Until(a, b) => {
                    out.push('(');
                    self.render_operand(*a, frame, out);
                    out.push_str(" U ");
                    self.render_operand(*b, frame, out);
                    out.push(')');
                }
                PathLit::Release(a, b) => {
                    out.push('(');
                    self.render_operand(*a, frame, out);
                    out.push_str(" R ");
                    self.render_operand(*b, frame, out);
                    out.push(')');
                }
                PathLit::InfOften(a) => {
                    out.push_str("Finf ");
                    self.render_operand(*a, frame, out);
                }
                PathLit::AlmostAlways(a) => {
                    out.push_str("Ginf ");
                    self.render_operand(*a, frame, out);
                }
            },
            PathExpr::And(a, b) => {
                out.push('(');
                self.render_path(a, frame, out);
                out.push_str(" & ");
                self.render_path(b, frame, out);
                out.push(')');
            }
            PathExpr::Or(a, b) => {
                out.push('(');
                self.render_path(a, frame, out);
                out.push_str(" | ");
                self.render_path(b, frame, out);
                out.push(')');
            }
        }
    }

    fn render_operand(&self, id: NodeId, frame: &Frame, out: &mut String) {
        let atomic = matches!(
            self.get(id),
            StateNode::True | StateNode::Prop(_) | StateNode::Not(_)
        );
        if atomic {
            self.render_into(id, frame, out);
        } else {
            out.push('(');
            self.render_into(id, frame, out);
            out.push(')');
        }
    }
}

/// A formula lowered against a frame: arena plus root node.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub arena: Arena,
    pub root: NodeId,
}

/// Lower a surface formula into the core form, resolving proposition
/// and agent names against `frame`.
pub fn prepare(frame: &Frame, formula: &StateFormula) -> Result<Prepared, ResolveError> {
    let mut arena = Arena::new();
    let root = lower_state(&mut arena, frame, formula)?;
    Ok(Prepared { arena, root })
}

/// Lower into an existing arena, sharing nodes with earlier formulas.
pub fn prepare_into(
    arena: &mut Arena,
    frame: &Frame,
    formula: &StateFormula,
) -> Result<NodeId, ResolveError> {
    lower_state(arena, frame, formula)
}

fn lower_state(
    arena: &mut Arena,
    frame: &Frame,
    f: &StateFormula,
) -> Result<NodeId, ResolveError> {
    Ok(match f {
        StateFormula::True => arena.mk_true(),
        StateFormula::False => arena.mk_false(),
        StateFormula::Prop(name) => {
            let p = frame
                .prop_id(name)
                .ok_or_else(|| ResolveError::UnknownProp(name.clone()))?;
            arena.mk(StateNode::Prop(p))
        }
        StateFormula::Not(a) => {
            let na = lower_state(arena, frame, a)?;
            arena.mk_not(na)
        }
        StateFormula::Or(a, b) => {
            let na = lower_state(arena, frame, a)?;
            let nb = lower_state(arena, frame, b)?;
            arena.mk_or(na, nb)
        }
        StateFormula::And(a, b) => {
            let na = lower_state(arena, frame, a)?;
            let nb = lower_state(arena, frame, b)?;
            arena.mk_and(na, nb)
        }
        StateFormula::Implies(a, b) => {
            let na = lower_state(arena, frame, a)?;
            let nb = lower_state(arena, frame, b)?;
            let not_a = arena.mk_not(na);
            arena.mk_or(not_a, nb)
        }
        StateFormula::Enforce(agents, path) => {
            let mut coalition = Coalition::empty();
            for name in agents {
                let a = frame
                    .agent_id(name)
                    .ok_or_else(|| ResolveError::UnknownAgent(name.clone()))?;
                coalition.insert(a);
            }
            let expr = lower_path(arena, frame, path, true)?;
            arena.mk(StateNode::Enforce(coalition, expr))
        }
    })
}

fn lower_path(
    arena: &mut Arena,
    frame: &Frame,
    f: &PathFormula,
    positive: bool,
) -> Result<PathExpr, ResolveError> {
    Ok(match f {
        PathFormula::Not(a) => lower_path(arena, frame, a, !positive)?,
        PathFormula::And(a, b) => {
            let la = lower_path(arena, frame, a, positive)?;
            let lb = lower_path(arena, frame, b, positive)?;
            if positive {
                PathExpr::And(Box::new(la), Box::new(lb))
            } else {
                PathExpr::Or(Box::new(la), Box::new(lb))
            }
        }
        PathFormula::Or(a, b) => {
            let la = lower_path(arena, frame, a, positive)?;
            let lb = lower_path(arena, frame, b, positive)?;
            if positive {
                PathExpr::Or(Box::new(la), Box::new(lb))
            } else {
                PathExpr::And(Box::new(la), Box::new(lb))
            }
        }
        PathFormula::Implies(a, b) => {
            let la = lower_path(arena, frame, a, !positive)?;
            let lb = lower_path(arena, frame, b, positive)?;
            if positive {
                PathExpr::Or(Box::new(la), Box::new(lb))
            } else {
                PathExpr::And(Box::new(la), Box::new(lb))
            }
        }
        PathFormula::Next(a) => {
            let mut na = lower_state(arena, frame, a)?;
            if !positive {
                na = arena.mk_not(na);
            }
            PathExpr::Lit(PathLit::Next(na))
        }
        PathFormula::Until(a, b) => lower_until(arena, frame, a, b, positive)?,
        PathFormula::Release(a, b) => lower_release(arena, frame, a, b, positive)?,
        PathFormula::WeakUntil(a, b) => {
            // a W b  =  b R (a | b)
            let na = lower_state(arena, frame, a)?;
            let nb = lower_state(arena, frame, b)?;
            let or = arena.mk_or(na, nb);
            lit_release(arena, nb, or, positive)
        }
        PathFormula::Globally(a) => {
            // G a  =  false R a
            let na = lower_state(arena, frame, a)?;
            let f = arena.mk_false();
            lit_release(arena, f, na, positive)
        }
        PathFormula::Finally(a) => {
            // F a  =  true U a
            let na = lower_state(arena, frame, a)?;
            let t = arena.mk_true();
            lit_until(arena, t, na, positive)
        }
        PathFormula::InfOften(a) => {
            let mut na = lower_state(arena, frame, a)?;
            if positive {
                PathExpr::Lit(PathLit::InfOften(na))
            } else {
                na = arena.mk_not(na);
                PathExpr::Lit(PathLit::AlmostAlways(na))
            }
        }
        PathFormula::AlmostAlways(a) => {
            let mut na = lower_state(arena, frame, a)?;
            if positive {
                PathExpr::Lit(PathLit::AlmostAlways(na))
            } else {
                na = arena.mk_not(na);
                PathExpr::Lit(PathLit::InfOften(na))
            }
        }
    })
}

fn lower_until(
    arena: &mut Arena,
    frame: &Frame,
    a: &StateFormula,
    b: &StateFormula,
    positive: bool,
) -> Result<PathExpr, ResolveError> {
    let na = lower_state(arena, frame, a)?;
    let nb = lower_state(arena, frame, b)?;
    Ok(lit_until(arena, na, nb, positive))
}

fn lower_release(
    arena: &mut Arena,
    frame: &Frame,
    a: &StateFormula,
    b: &StateFormula,
    positive: bool,
) -> Result<PathExpr, ResolveError> {
    let na = lower_state(arena, frame, a)?;
    let nb = lower_state(arena, frame, b)?;
    Ok(lit_release(arena, na, nb, positive))
}

fn lit_until(arena: &mut Arena, a: NodeId, b: NodeId, positive: bool) -> PathExpr {
    if positive {
        PathExpr::Lit(PathLit::Until(a, b))
    } else {
        let na = arena.mk_not(a);
        let nb = arena.mk_not(b);
        PathExpr::Lit(PathLit::Release(na, nb))
    }
}

fn lit_release(arena: &mut Arena, a: NodeId, b: NodeId, positive: bool) -> PathExpr {
    if positive {
        PathExpr::Lit(PathLit::Release(a, b))
    } else {
        let na = arena.mk_not(a);
        let nb = arena.mk_not(b);
        PathExpr::Lit(PathLit::Until(na, nb))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Dialect};

    fn frame() -> Frame {
        Frame::new(
            vec!["A1".into(), "A2".into()],
            vec!["s".into()],
            vec!["p".into(), "q".into()],
        )
    }

    #[test]
    fn negation_pushes_to_duals() {
        let frame = frame();
        let f = parse("<<A1>> !(p U q)", Dialect::Atl).unwrap();
        let p = prepare(&frame, &f).unwrap();
        match p.arena.get(p.root) {
            StateNode::Enforce(_, PathExpr::Lit(PathLit::Release(a, b))) => {
                assert!(matches!(p.arena.get(*a), StateNode::Not(_)));
                assert!(matches!(p.arena.get(*b), StateNode::Not(_)));
            }
            other => panic!("expected release literal, got {other:?}"),
        }

        let f = parse("<<A1>> !(X p)", Dialect::Atl).unwrap();
        let p = prepare(&frame, &f).unwrap();
        match p.arena.get(p.root) {
            StateNode::Enforce(_, PathExpr::Lit(PathLit::Next(a))) => {
                assert!(matches!(p.arena.get(*a), StateNode::Not(_)));
            }
            other => panic!("expected next literal, got {other:?}"),
        }
    }

    #[test]
    fn hash_consing_shares_nodes() {
        let frame = frame();
        let f = parse("<<A1>> (p U p)", Dialect::Atl).unwrap();
        let prep = prepare(&frame, &f).unwrap();
        // true is not created here: p, enforce.
        assert_eq!(prep.arena.len(), 2);
    }

    #[test]
    fn unknown_names_error() {
        let frame = frame();
        let f = parse("<<A1>> X nosuch", Dialect::Atl).unwrap();
        assert!(matches!(
            prepare(&frame, &f),
            Err(ResolveError::UnknownProp(_))
        ));
        let f = parse("<<A9>> X p", Dialect::Atl).unwrap();
        assert!(matches!(
            prepare(&frame, &f),
            Err(ResolveError::UnknownAgent(_))
        ));
    }
}
