//! Small concrete structures used as regression fixtures throughout the
//! test suite: the two-player non-determined CGS/ATS pair, the worked
//! CGS-to-ATS conversion input, and the choice-to-guard example.

use crate::bitset::StateSet;
use crate::gamestruct::{
    AgentId, Ats, CgsExplicit, CgsImplicit, Frame, GameStructure, MoveCondition, StateId,
};

fn frame_fig(states: &[&str], p_on: &[&str]) -> Frame {
    let mut frame = Frame::new(
        vec!["A1".into(), "A2".into()],
        states.iter().map(|s| s.to_string()).collect(),
        vec!["p".into()],
    );
    for name in p_on {
        let s = frame.state_id(name).unwrap();
        frame.add_label(s, 0);
    }
    frame
}

/// Two-player CGS where neither `<<A1>> X p` nor `<<A2>> X !p` holds in
/// `l0`. States: l0, l1, l1p, l2p, l2; `p` holds at l1 and l2. From l0
/// the four joint moves reach l1, l1p, l2p, l2 in lexicographic order;
/// the other states carry a self-loop.
pub fn fig1_cgs() -> GameStructure {
    let frame = frame_fig(&["l0", "l1", "l1p", "l2p", "l2"], &["l1", "l2"]);
    let id = |n: &str| frame.state_id(n).unwrap();
    let (l1, l1p, l2p, l2) = (id("l1"), id("l1p"), id("l2p"), id("l2"));
    let mut moves = vec![vec![1, 1]; 5];
    moves[0] = vec![2, 2];
    let mut edg = vec![
        vec![l1, l1p, l2p, l2], // from l0: <1,1> <1,2> <2,1> <2,2>
        Vec::new(),
        Vec::new(),
        Vec::new(),
        Vec::new(),
    ];
    for s in 1..5 {
        edg[s] = vec![StateId(s)];
    }
    GameStructure::Explicit(CgsExplicit { frame, moves, edg })
}

/// The same structure as [`fig1_cgs`], written with guarded rules.
pub fn fig1_cgs_implicit() -> GameStructure {
    let frame = frame_fig(&["l0", "l1", "l1p", "l2p", "l2"], &["l1", "l2"]);
    let id = |n: &str| frame.state_id(n).unwrap();
    let (a1, a2) = (AgentId(0), AgentId(1));
    let mut moves = vec![vec![1, 1]; 5];
    moves[0] = vec![2, 2];
    let atom = |a: AgentId, m: usize| MoveCondition::Is(a, m);
    let mut rules = vec![vec![
        (
            MoveCondition::and(atom(a1, 0), atom(a2, 0)),
            id("l1"),
        ),
        (
            MoveCondition::and(atom(a1, 0), atom(a2, 1)),
            id("l1p"),
        ),
        (
            MoveCondition::and(atom(a1, 1), atom(a2, 0)),
            id("l2p"),
        ),
        (MoveCondition::True, id("l2")),
    ]];
    for s in 1..5 {
        rules.push(vec![(MoveCondition::True, StateId(s))]);
    }
    GameStructure::Implicit(CgsImplicit { frame, moves, rules })
}

/// Two-player ATS equivalent to [`fig1_cgs`]: at l0,
/// `Chc(l0,A1) = {{l1,l1p},{l2,l2p}}` and `Chc(l0,A2) = {{l1,l2p},{l2,l1p}}`,
/// everything else a self-loop.
pub fn fig2_ats() -> GameStructure {
    let frame = frame_fig(&["l0", "l1", "l1p", "l2p", "l2"], &["l1", "l2"]);
    let id = |n: &str| frame.state_id(n).unwrap().0;
    let n = 5;
    let set = |names: &[&str]| StateSet::from_indices(n, names.iter().map(|x| id(x)));
    let mut choices = Vec::new();
    choices.push(vec![
        vec![set(&["l1", "l1p"]), set(&["l2", "l2p"])],
        vec![set(&["l1", "l2p"]), set(&["l2", "l1p"])],
    ]);
    for s in 1..n {
        let own = StateSet::singleton(n, s);
        choices.push(vec![vec![own.clone()], vec![own]]);
    }
    GameStructure::Ats(Ats { frame, choices })
}

/// The four-location, two-player, three-moves-each CGS used to
/// illustrate the CGS-to-ATS conversion. From location `a`:
/// `<1,1> -> b`, `<2,2>,<2,3> -> c`, `<3,1> -> a` (self-loop), and the
/// remaining joint moves go to `d`. Locations b, c, d carry self-loops.
pub fn fig5_cgse() -> GameStructure {
    let frame = Frame::new(
        vec!["P1".into(), "P2".into()],
        vec!["a".into(), "b".into(), "c".into(), "d".into()],
        vec![],
    );
    let id = |n: &str| frame.state_id(n).unwrap();
    let (a, b, c, d) = (id("a"), id("b"), id("c"), id("d"));
    let mut moves = vec![vec![1, 1]; 4];
    moves[0] = vec![3, 3];
    // Order: <1,1> <1,2> <1,3> <2,1> <2,2> <2,3> <3,1> <3,2> <3,3>.
    let from_a = vec![b, d, d, d, c, c, a, d, d];
    let mut edg = vec![from_a, Vec::new(), Vec::new(), Vec::new()];
    for s in 1..4 {
        edg[s] = vec![StateId(s)];
    }
    GameStructure::Explicit(CgsExplicit { frame, moves, edg })
}

/// The choice-to-guard example ATS: at l0,
/// `Chc(l0,A1) = {{l1,l2},{l1,l3}}` and `Chc(l0,A2) = {{l2,l3},{l1}}`;
/// l1..l3 carry self-loops.
pub fn guard_example_ats() -> GameStructure {
    let frame = Frame::new(
        vec!["A1".into(), "A2".into()],
        vec!["l0".into(), "l1".into(), "l2".into(), "l3".into()],
        vec![],
    );
    let n = 4;
    let id = |x: &str| frame.state_id(x).unwrap().0;
    let set = |names: &[&str]| StateSet::from_indices(n, names.iter().map(|x| id(x)));
    let mut choices = vec![vec![
        vec![set(&["l1", "l2"]), set(&["l1", "l3"])],
        vec![set(&["l2", "l3"]), set(&["l1"])],
    ]];
    for s in 1..n {
        let own = StateSet::singleton(n, s);
        choices.push(vec![vec![own.clone()], vec![own]]);
    }
    GameStructure::Ats(Ats { frame, choices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for g in [
            fig1_cgs(),
            fig1_cgs_implicit(),
            fig2_ats(),
            fig5_cgse(),
            guard_example_ats(),
        ] {
            assert!(g.validate().is_empty(), "{:?}", g.validate());
        }
    }

    #[test]
    fn fig1_and_fig2_agree_on_steps() {
        let cgs = fig1_cgs();
        let ats = fig2_ats();
        for s in 0..5 {
            assert_eq!(cgs.next(StateId(s)), ats.next(StateId(s)));
        }
    }
}
