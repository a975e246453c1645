//! Controllable predecessors: the states from which a coalition has a
//! one-step move all of whose completions land inside a target set.
//!
//! The kernel dispatches on the structure kind:
//!
//! * explicit CGS — enumerate the coalition's moves, then check every
//!   opponent completion against the transition table;
//! * implicit CGS — substitute the coalition move into the guards,
//!   prune the rule list at the first guard that became `true`, then
//!   search the opponent co-moves for one whose first true guard leads
//!   outside the target (short-circuiting on the first escape);
//! * ATS — the set of successors under a coalition choice is the
//!   intersection of the chosen sets cut down to the reachable
//!   successors, so the check is a subset test per joint choice.
//!
//! Enumeration is exhaustive in lexicographic order, so results and
//! witnesses are deterministic and the reported witness is always the
//! least one.

use std::collections::BTreeMap;

use crate::bitset::StateSet;
use crate::gamestruct::{
    CgsImplicit, Coalition, CoalitionMove, GameStructure, MoveCondition, StateId,
};

/// Result of a controllable-predecessor computation: the member states
/// and, per member, the lexicographically least witnessing move.
#[derive(Clone, Debug)]
pub struct CpreResult {
    pub states: StateSet,
    pub witnesses: Vec<Option<CoalitionMove>>,
}

impl CpreResult {
    /// The witness map restricted to member states.
    pub fn witness_map(&self) -> BTreeMap<StateId, CoalitionMove> {
        self.witnesses
            .iter()
            .enumerate()
            .filter_map(|(s, w)| w.clone().map(|w| (StateId(s), w)))
            .collect()
    }
}

/// Decides whether the opponents can force the next state outside the
/// target, given the rule list left after substituting the coalition
/// move. Extension point for the implicit-CGS inner check; the default
/// enumerates all co-moves.
pub trait EscapeSolver {
    fn opponents_escape(
        &self,
        g: &CgsImplicit,
        state: StateId,
        residual: &[(MoveCondition, StateId)],
        opponents: &Coalition,
        target: &StateSet,
    ) -> bool;
}

/// Exhaustive co-move enumeration, short-circuiting on the first escape.
pub struct EnumerationSolver;

impl EscapeSolver for EnumerationSolver {
    fn opponents_escape(
        &self,
        g: &CgsImplicit,
        state: StateId,
        residual: &[(MoveCondition, StateId)],
        opponents: &Coalition,
        target: &StateSet,
    ) -> bool {
        let ranges: Vec<(usize, usize)> = opponents
            .iter()
            .map(|a| (a.0, g.moves[state.0][a.0]))
            .collect();
        let mut co = CoalitionMove {
            coalition: *opponents,
            moves: vec![0; ranges.len()],
        };
        loop {
            let hit = residual
                .iter()
                .find(|(cond, _)| cond.substitute(&co) == MoveCondition::True);
            match hit {
                Some((_, t)) => {
                    if !target.contains(t.0) {
                        return true;
                    }
                }
                // Unreachable for valid structures (last guard is true),
                // treated as an escape so invalid rule lists are loud.
                None => return true,
            }
            // Next co-move in lexicographic order.
            let mut i = ranges.len();
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                co.moves[i] += 1;
                if co.moves[i] < ranges[i].1 {
                    break;
                }
                co.moves[i] = 0;
            }
        }
    }
}

/// `cpre(g, A, S)`: states from which coalition `A` can force the next
/// state into `S`.
pub fn cpre(g: &GameStructure, coalition: &Coalition, target: &StateSet) -> StateSet {
    cpre_with_witness(g, coalition, target).states
}

/// As [`cpre`], also returning the least witnessing move per member.
pub fn cpre_with_witness(
    g: &GameStructure,
    coalition: &Coalition,
    target: &StateSet,
) -> CpreResult {
    cpre_with_solver(g, coalition, target, &EnumerationSolver)
}

/// The witness map of the controllable-predecessor set.
pub fn cpre_witness(
    g: &GameStructure,
    coalition: &Coalition,
    target: &StateSet,
) -> BTreeMap<StateId, CoalitionMove> {
    cpre_with_witness(g, coalition, target).witness_map()
}

pub fn cpre_with_solver(
    g: &GameStructure,
    coalition: &Coalition,
    target: &StateSet,
    solver: &dyn EscapeSolver,
) -> CpreResult {
    let n = g.num_states();
    let mut states = StateSet::empty(n);
    let mut witnesses = vec![None; n];
    for s in 0..n {
        if let Some(w) = state_witness(g, StateId(s), coalition, target, solver) {
            states.insert(s);
            witnesses[s] = Some(w);
        }
    }
    CpreResult { states, witnesses }
}

fn state_witness(
    g: &GameStructure,
    state: StateId,
    coalition: &Coalition,
    target: &StateSet,
    solver: &dyn EscapeSolver,
) -> Option<CoalitionMove> {
    match g {
        GameStructure::Implicit(gi) => {
            let opponents = coalition.complement(g.num_agents());
            for m in g.joint_move_iter(state, coalition) {
                let residual = residual_rules(&gi.rules[state.0], &m);
                // A single unconditional rule decides immediately.
                let ok = if residual.len() == 1 && residual[0].0 == MoveCondition::True {
                    target.contains(residual[0].1 .0)
                } else {
                    !solver.opponents_escape(gi, state, &residual, &opponents, target)
                };
                if ok {
                    return Some(m);
                }
            }
            None
        }
        _ => {
            for m in g.joint_move_iter(state, coalition) {
                if g.next_restricted(state, &m).is_subset(target) {
                    return Some(m);
                }
            }
            None
        }
    }
}

/// Substitute a coalition move into an ordered rule list, dropping
/// rules whose guard folded to `false` and truncating after the first
/// guard that folded to `true`.
fn residual_rules(
    rules: &[(MoveCondition, StateId)],
    m: &CoalitionMove,
) -> Vec<(MoveCondition, StateId)> {
    let mut out = Vec::new();
    for (cond, t) in rules {
        match cond.substitute(m) {
            MoveCondition::False => continue,
            MoveCondition::True => {
                out.push((MoveCondition::True, *t));
                break;
            }
            c => out.push((c, *t)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::gamestruct::AgentId;

    fn set(g: &GameStructure, names: &[&str]) -> StateSet {
        StateSet::from_indices(
            g.num_states(),
            names.iter().map(|n| g.frame().state_id(n).unwrap().0),
        )
    }

    #[test]
    fn fig1_a1_cannot_force_p() {
        // In l0, A1 cannot force the next state into {l1, l2}.
        let g = fixtures::fig1_cgs();
        let a1 = Coalition::from_agents([AgentId(0)]);
        let target = set(&g, &["l1", "l2"]);
        let r = cpre(&g, &a1, &target);
        let l0 = g.frame().state_id("l0").unwrap();
        assert!(!r.contains(l0.0));
    }

    #[test]
    fn full_target_is_everything() {
        for g in [
            fixtures::fig1_cgs(),
            fixtures::fig1_cgs_implicit(),
            fixtures::fig2_ats(),
        ] {
            let all = StateSet::full(g.num_states());
            for coalition in [Coalition::empty(), Coalition::all(2)] {
                let r = cpre_with_witness(&g, &coalition, &all);
                assert_eq!(r.states, all);
                // With a full target every state's witness is the
                // lexicographically least move.
                for w in r.witnesses.iter().flatten() {
                    assert!(w.moves.iter().all(|m| *m == 0));
                }
            }
        }
    }

    #[test]
    fn fig1_grand_coalition_witness() {
        let g = fixtures::fig1_cgs();
        let target = set(&g, &["l1p"]);
        let r = cpre_with_witness(&g, &Coalition::all(2), &target);
        let l0 = g.frame().state_id("l0").unwrap();
        assert!(r.states.contains(l0.0));
        // Witness is the move <1,2>.
        assert_eq!(r.witnesses[l0.0].as_ref().unwrap().moves, vec![0, 1]);
    }

    #[test]
    fn fig2_ats_witness_first_sets() {
        let g = fixtures::fig2_ats();
        let target = set(&g, &["l1"]);
        let r = cpre_with_witness(&g, &Coalition::all(2), &target);
        let l0 = g.frame().state_id("l0").unwrap();
        assert!(r.states.contains(l0.0));
        // Both agents pick their first choice set.
        assert_eq!(r.witnesses[l0.0].as_ref().unwrap().moves, vec![0, 0]);
    }

    #[test]
    fn empty_and_grand_coalition_boundaries() {
        for g in [
            fixtures::fig1_cgs(),
            fixtures::fig1_cgs_implicit(),
            fixtures::fig2_ats(),
        ] {
            let target = set(&g, &["l1", "l2"]);
            let none = cpre(&g, &Coalition::empty(), &target);
            let grand = cpre(&g, &Coalition::all(2), &target);
            for s in 0..g.num_states() {
                let next = g.next(StateId(s));
                assert_eq!(none.contains(s), next.is_subset(&target));
                assert_eq!(grand.contains(s), next.intersects(&target));
            }
        }
    }

    #[test]
    fn monotone_in_target_and_coalition() {
        for g in [
            fixtures::fig1_cgs(),
            fixtures::fig1_cgs_implicit(),
            fixtures::fig2_ats(),
        ] {
            let small = set(&g, &["l1"]);
            let big = set(&g, &["l1", "l1p"]);
            let a1 = Coalition::from_agents([AgentId(0)]);
            assert!(cpre(&g, &a1, &small).is_subset(&cpre(&g, &a1, &big)));
            assert!(cpre(&g, &a1, &small).is_subset(&cpre(&g, &Coalition::all(2), &small)));
            assert!(cpre(&g, &Coalition::empty(), &small).is_subset(&cpre(&g, &a1, &small)));
        }
    }

    #[test]
    fn witness_moves_verified_by_next_restricted() {
        for g in [
            fixtures::fig1_cgs(),
            fixtures::fig1_cgs_implicit(),
            fixtures::fig2_ats(),
        ] {
            let target = set(&g, &["l1", "l1p"]);
            for coalition in [
                Coalition::empty(),
                Coalition::from_agents([AgentId(0)]),
                Coalition::from_agents([AgentId(1)]),
                Coalition::all(2),
            ] {
                let r = cpre_with_witness(&g, &coalition, &target);
                for (s, w) in r.witnesses.iter().enumerate() {
                    if let Some(w) = w {
                        assert!(r.states.contains(s));
                        assert!(g.next_restricted(StateId(s), w).is_subset(&target));
                    } else {
                        assert!(!r.states.contains(s));
                    }
                }
            }
        }
    }
}
