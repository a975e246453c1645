//! Data model, validation and successor semantics for the three
//! game-structure families: explicit CGS, implicit CGS and ATS.
//!
//! All three share agents, states, atomic propositions and a labeling.
//! They differ in how the one-step transition relation is encoded:
//!
//! * explicit CGS — a full transition table indexed by joint moves;
//! * implicit CGS — per state, an ordered list of guarded rules over
//!   move atoms `agent = move`, with first-true-guard semantics and a
//!   mandatory trailing `true` guard;
//! * ATS — per state and agent, a list of choice sets of states; the
//!   intersection of one chosen set per agent must be a singleton.
//!
//! Moves are 0-based internally and 1-based in the surface syntax; the
//! text format module is the only place that mapping occurs.

mod text;

pub use text::{parse_model, print_model, ModelParseError};

use std::fmt;

use crate::bitset::{BitSet, StateSet};

/// Agent index, dense in `0..k`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AgentId(pub usize);

/// State index, dense in `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StateId(pub usize);

/// Maximum number of agents; coalitions are stored as one machine word.
pub const MAX_AGENTS: usize = 64;

/// Agents, states, atomic propositions and the labeling shared by all
/// structure kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub agents: Vec<String>,
    pub states: Vec<String>,
    pub props: Vec<String>,
    /// Per state, the set of proposition indices that hold there.
    pub labels: Vec<BitSet>,
}

impl Frame {
    pub fn new(agents: Vec<String>, states: Vec<String>, props: Vec<String>) -> Self {
        let n = states.len();
        let p = props.len();
        Frame {
            agents,
            states,
            props,
            labels: vec![BitSet::empty(p); n],
        }
    }

    pub fn num_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn agent_id(&self, name: &str) -> Option<AgentId> {
        self.agents.iter().position(|a| a == name).map(AgentId)
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(StateId)
    }

    pub fn prop_id(&self, name: &str) -> Option<usize> {
        self.props.iter().position(|p| p == name)
    }

    pub fn add_label(&mut self, state: StateId, prop: usize) {
        self.labels[state.0].insert(prop);
    }

    /// States labeled with the given proposition.
    pub fn states_with(&self, prop: usize) -> StateSet {
        let mut s = StateSet::empty(self.num_states());
        for (i, l) in self.labels.iter().enumerate() {
            if l.contains(prop) {
                s.insert(i);
            }
        }
        s
    }

    /// Label of a state as a sorted list of proposition names.
    pub fn label_names(&self, state: StateId) -> Vec<&str> {
        self.labels[state.0]
            .iter()
            .map(|p| self.props[p].as_str())
            .collect()
    }
}

/// A set of agents, stored as a bit mask (hence at most [`MAX_AGENTS`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coalition(pub u64);

impl Coalition {
    pub fn empty() -> Self {
        Coalition(0)
    }

    pub fn all(num_agents: usize) -> Self {
        assert!(num_agents <= MAX_AGENTS);
        if num_agents == 64 {
            Coalition(!0)
        } else {
            Coalition((1u64 << num_agents) - 1)
        }
    }

    pub fn from_agents(agents: impl IntoIterator<Item = AgentId>) -> Self {
        let mut c = Coalition(0);
        for a in agents {
            c.insert(a);
        }
        c
    }

    pub fn insert(&mut self, a: AgentId) {
        assert!(a.0 < MAX_AGENTS);
        self.0 |= 1 << a.0;
    }

    pub fn contains(&self, a: AgentId) -> bool {
        a.0 < MAX_AGENTS && self.0 & (1 << a.0) != 0
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    /// The opponent coalition with respect to `num_agents` agents.
    pub fn complement(&self, num_agents: usize) -> Coalition {
        Coalition(Coalition::all(num_agents).0 & !self.0)
    }

    /// Member agents in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = AgentId> + '_ {
        (0..MAX_AGENTS)
            .filter(move |i| self.0 & (1 << i) != 0)
            .map(AgentId)
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|a| a.0)).finish()
    }
}

/// A full joint move: one 0-based move per agent.
pub type JointMove = Vec<usize>;

/// A move for each agent of a coalition; `moves[i]` belongs to the
/// i-th member in ascending agent order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CoalitionMove {
    pub coalition: Coalition,
    pub moves: Vec<usize>,
}

impl CoalitionMove {
    pub fn empty() -> Self {
        CoalitionMove {
            coalition: Coalition::empty(),
            moves: Vec::new(),
        }
    }

    pub fn move_of(&self, a: AgentId) -> Option<usize> {
        self.coalition
            .iter()
            .position(|b| b == a)
            .map(|i| self.moves[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (AgentId, usize)> + '_ {
        self.coalition.iter().zip(self.moves.iter().copied())
    }

    /// Merge two partial moves with disjoint domains into a full joint
    /// move over `num_agents` agents. Returns `None` when the domains
    /// overlap or do not cover all agents.
    pub fn compose(&self, other: &CoalitionMove, num_agents: usize) -> Option<JointMove> {
        if self.coalition.0 & other.coalition.0 != 0 {
            return None;
        }
        if (self.coalition.0 | other.coalition.0) != Coalition::all(num_agents).0 {
            return None;
        }
        let mut full = vec![0; num_agents];
        for (a, m) in self.pairs().chain(other.pairs()) {
            full[a.0] = m;
        }
        Some(full)
    }
}

/// Boolean guard over move atoms `agent = move`, the implicit-CGS rule
/// language. Move numbers are 0-based here.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum MoveCondition {
    True,
    False,
    Is(AgentId, usize),
    Not(Box<MoveCondition>),
    And(Box<MoveCondition>, Box<MoveCondition>),
    Or(Box<MoveCondition>, Box<MoveCondition>),
}

impl MoveCondition {
    pub fn and(a: MoveCondition, b: MoveCondition) -> MoveCondition {
        MoveCondition::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: MoveCondition, b: MoveCondition) -> MoveCondition {
        MoveCondition::Or(Box::new(a), Box::new(b))
    }

    pub fn not(a: MoveCondition) -> MoveCondition {
        MoveCondition::Not(Box::new(a))
    }

    /// Conjunction of a list, `true` when empty.
    pub fn conj(mut parts: Vec<MoveCondition>) -> MoveCondition {
        match parts.len() {
            0 => MoveCondition::True,
            1 => parts.pop().unwrap(),
            _ => {
                let mut it = parts.into_iter();
                let first = it.next().unwrap();
                it.fold(first, MoveCondition::and)
            }
        }
    }

    /// Disjunction of a list, `false` when empty.
    pub fn disj(mut parts: Vec<MoveCondition>) -> MoveCondition {
        match parts.len() {
            0 => MoveCondition::False,
            1 => parts.pop().unwrap(),
            _ => {
                let mut it = parts.into_iter();
                let first = it.next().unwrap();
                it.fold(first, MoveCondition::or)
            }
        }
    }

    /// Evaluate under a full joint move.
    pub fn eval_full(&self, m: &JointMove) -> bool {
        match self {
            MoveCondition::True => true,
            MoveCondition::False => false,
            MoveCondition::Is(a, c) => m[a.0] == *c,
            MoveCondition::Not(x) => !x.eval_full(m),
            MoveCondition::And(x, y) => x.eval_full(m) && y.eval_full(m),
            MoveCondition::Or(x, y) => x.eval_full(m) || y.eval_full(m),
        }
    }

    /// Substitute the moves of a partial assignment and constant-fold.
    /// Atoms owned by agents of the assignment become constants; atoms
    /// of other agents are left in place.
    pub fn substitute(&self, m: &CoalitionMove) -> MoveCondition {
        match self {
            MoveCondition::True => MoveCondition::True,
            MoveCondition::False => MoveCondition::False,
            MoveCondition::Is(a, c) => match m.move_of(*a) {
                Some(chosen) if chosen == *c => MoveCondition::True,
                Some(_) => MoveCondition::False,
                None => self.clone(),
            },
            MoveCondition::Not(x) => match x.substitute(m) {
                MoveCondition::True => MoveCondition::False,
                MoveCondition::False => MoveCondition::True,
                r => MoveCondition::not(r),
            },
            MoveCondition::And(x, y) => match (x.substitute(m), y.substitute(m)) {
                (MoveCondition::False, _) | (_, MoveCondition::False) => MoveCondition::False,
                (MoveCondition::True, r) | (r, MoveCondition::True) => r,
                (a, b) => MoveCondition::and(a, b),
            },
            MoveCondition::Or(x, y) => match (x.substitute(m), y.substitute(m)) {
                (MoveCondition::True, _) | (_, MoveCondition::True) => MoveCondition::True,
                (MoveCondition::False, r) | (r, MoveCondition::False) => r,
                (a, b) => MoveCondition::or(a, b),
            },
        }
    }

    /// Agents whose atoms occur in the condition.
    pub fn collect_agents(&self, into: &mut Coalition) {
        match self {
            MoveCondition::True | MoveCondition::False => {}
            MoveCondition::Is(a, _) => into.insert(*a),
            MoveCondition::Not(x) => x.collect_agents(into),
            MoveCondition::And(x, y) | MoveCondition::Or(x, y) => {
                x.collect_agents(into);
                y.collect_agents(into);
            }
        }
    }
}

/// CGS with a tabulated transition function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgsExplicit {
    pub frame: Frame,
    /// `moves[s][a]` = number of moves of agent `a` in state `s` (>= 1).
    pub moves: Vec<Vec<usize>>,
    /// `edg[s][flat]` = successor for the joint move with flat index
    /// `flat` (agent 0 most significant, later agents vary fastest).
    pub edg: Vec<Vec<StateId>>,
}

/// CGS with guarded transition rules, first true guard wins.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgsImplicit {
    pub frame: Frame,
    pub moves: Vec<Vec<usize>>,
    /// Ordered per-state rule list; the last condition must be `true`.
    pub rules: Vec<Vec<(MoveCondition, StateId)>>,
}

/// Alternating transition system: per state and agent a list of choice
/// sets; every selection of one set per agent intersects to a singleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ats {
    pub frame: Frame,
    /// `choices[s][a]` = non-empty list of non-empty state sets.
    pub choices: Vec<Vec<Vec<StateSet>>>,
}

/// One of the three structure kinds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameStructure {
    Explicit(CgsExplicit),
    Implicit(CgsImplicit),
    Ats(Ats),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StructureKind {
    CgsExplicit,
    CgsImplicit,
    Ats,
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureKind::CgsExplicit => write!(f, "cgs-explicit"),
            StructureKind::CgsImplicit => write!(f, "cgs-implicit"),
            StructureKind::Ats => write!(f, "ats"),
        }
    }
}

/// A violated model invariant. Violations are data, not failures:
/// [`GameStructure::validate`] returns all of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub state: Option<StateId>,
    pub agent: Option<AgentId>,
    pub message: String,
}

impl Violation {
    fn at(state: StateId, message: String) -> Self {
        Violation {
            state: Some(state),
            agent: None,
            message,
        }
    }

    fn at_agent(state: StateId, agent: AgentId, message: String) -> Self {
        Violation {
            state: Some(state),
            agent: Some(agent),
            message,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

/// Flat index of a joint move in the agent-major enumeration order.
pub(crate) fn flat_index(moves: &[usize], m: &JointMove) -> usize {
    let mut idx = 0;
    for (a, count) in moves.iter().enumerate() {
        idx = idx * count + m[a];
    }
    idx
}

/// Odometer over the product of per-position ranges, in lexicographic
/// order (last position varies fastest). Yields nothing if any range is
/// zero; yields the empty vector once for an empty product.
pub struct ProductIter {
    ranges: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl ProductIter {
    pub fn new(ranges: Vec<usize>) -> Self {
        let done = ranges.iter().any(|r| *r == 0);
        ProductIter {
            current: vec![0; ranges.len()],
            ranges,
            done,
        }
    }

    /// Total number of tuples, None on overflow.
    pub fn size(ranges: &[usize]) -> Option<usize> {
        ranges.iter().try_fold(1usize, |acc, r| acc.checked_mul(*r))
    }
}

impl Iterator for ProductIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        let mut i = self.ranges.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.current[i] += 1;
            if self.current[i] < self.ranges[i] {
                break;
            }
            self.current[i] = 0;
        }
        Some(item)
    }
}

impl GameStructure {
    pub fn frame(&self) -> &Frame {
        match self {
            GameStructure::Explicit(g) => &g.frame,
            GameStructure::Implicit(g) => &g.frame,
            GameStructure::Ats(g) => &g.frame,
        }
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            GameStructure::Explicit(_) => StructureKind::CgsExplicit,
            GameStructure::Implicit(_) => StructureKind::CgsImplicit,
            GameStructure::Ats(_) => StructureKind::Ats,
        }
    }

    pub fn num_states(&self) -> usize {
        self.frame().num_states()
    }

    pub fn num_agents(&self) -> usize {
        self.frame().num_agents()
    }

    /// Number of moves of `agent` in `state`. For an ATS this is the
    /// number of declared choice sets.
    pub fn move_count(&self, state: StateId, agent: AgentId) -> usize {
        match self {
            GameStructure::Explicit(g) => g.moves[state.0][agent.0],
            GameStructure::Implicit(g) => g.moves[state.0][agent.0],
            GameStructure::Ats(g) => g.choices[state.0][agent.0].len(),
        }
    }

    /// Successor of a full joint move. For an ATS this is the unique
    /// element of the intersection of the chosen sets (`None` when the
    /// singleton requirement is violated).
    pub fn step(&self, state: StateId, m: &JointMove) -> Option<StateId> {
        match self {
            GameStructure::Explicit(g) => {
                Some(g.edg[state.0][flat_index(&g.moves[state.0], m)])
            }
            GameStructure::Implicit(g) => g.rules[state.0]
                .iter()
                .find(|(cond, _)| cond.eval_full(m))
                .map(|(_, t)| *t),
            GameStructure::Ats(g) => {
                let mut inter = StateSet::full(self.num_states());
                for (a, mv) in m.iter().enumerate() {
                    inter.intersect_with(&g.choices[state.0][a][*mv]);
                }
                inter.only_element().map(StateId)
            }
        }
    }

    /// All possible successor states of `state`.
    pub fn next(&self, state: StateId) -> StateSet {
        match self {
            GameStructure::Explicit(g) => {
                let mut out = StateSet::empty(self.num_states());
                for t in &g.edg[state.0] {
                    out.insert(t.0);
                }
                out
            }
            GameStructure::Implicit(_) => {
                let mut out = StateSet::empty(self.num_states());
                for m in self.joint_move_vectors(state) {
                    if let Some(t) = self.step(state, &m) {
                        out.insert(t.0);
                    }
                }
                out
            }
            // For an ATS, a state is reachable iff every agent has some
            // choice set containing it, so Next is the intersection of
            // the per-agent unions.
            GameStructure::Ats(g) => {
                let mut out = StateSet::full(self.num_states());
                for per_agent in &g.choices[state.0] {
                    let mut union = StateSet::empty(self.num_states());
                    for set in per_agent {
                        union.union_with(set);
                    }
                    out.intersect_with(&union);
                }
                out
            }
        }
    }

    /// Iterator over all full joint moves at `state`.
    pub fn joint_move_vectors(&self, state: StateId) -> ProductIter {
        let ranges = (0..self.num_agents())
            .map(|a| self.move_count(state, AgentId(a)))
            .collect();
        ProductIter::new(ranges)
    }

    /// Enumerate the moves of a coalition at `state`, in lexicographic
    /// order by agent index then move number.
    pub fn joint_moves(&self, state: StateId, coalition: &Coalition) -> Vec<CoalitionMove> {
        self.joint_move_iter(state, coalition).collect()
    }

    pub fn joint_move_iter(
        &self,
        state: StateId,
        coalition: &Coalition,
    ) -> impl Iterator<Item = CoalitionMove> + '_ {
        let coalition = *coalition;
        let ranges: Vec<usize> = coalition
            .iter()
            .map(|a| self.move_count(state, a))
            .collect();
        ProductIter::new(ranges).map(move |moves| CoalitionMove { coalition, moves })
    }

    /// Number of coalition moves at `state`, None on overflow.
    pub fn joint_move_count(&self, state: StateId, coalition: &Coalition) -> Option<usize> {
        let ranges: Vec<usize> = coalition
            .iter()
            .map(|a| self.move_count(state, a))
            .collect();
        ProductIter::size(&ranges)
    }

    /// States reachable from `state` when the coalition plays `m` and
    /// the opponents range over all completions.
    pub fn next_restricted(&self, state: StateId, m: &CoalitionMove) -> StateSet {
        match self {
            GameStructure::Ats(g) => {
                // Exactly the coalition's intersection cut down to the
                // actually reachable successors.
                let mut out = self.next(state);
                for (a, mv) in m.pairs() {
                    out.intersect_with(&g.choices[state.0][a.0][mv]);
                }
                out
            }
            _ => {
                let mut out = StateSet::empty(self.num_states());
                let opponents = m.coalition.complement(self.num_agents());
                for co in self.joint_move_iter(state, &opponents) {
                    let full = m
                        .compose(&co, self.num_agents())
                        .expect("disjoint by construction");
                    if let Some(t) = self.step(state, &full) {
                        out.insert(t.0);
                    }
                }
                out
            }
        }
    }

    /// Check all structural invariants; an empty list means valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let frame = self.frame();
        let n = frame.num_states();

        for (i, name) in frame.states.iter().enumerate() {
            if frame.states[..i].contains(name) {
                out.push(Violation {
                    state: Some(StateId(i)),
                    agent: None,
                    message: format!("duplicate state name `{name}`"),
                });
            }
        }
        for (i, name) in frame.agents.iter().enumerate() {
            if frame.agents[..i].contains(name) {
                out.push(Violation {
                    state: None,
                    agent: Some(AgentId(i)),
                    message: format!("duplicate agent name `{name}`"),
                });
            }
        }

        match self {
            GameStructure::Explicit(g) => {
                for s in 0..n {
                    let state = StateId(s);
                    for (a, c) in g.moves[s].iter().enumerate() {
                        if *c == 0 {
                            out.push(Violation::at_agent(
                                state,
                                AgentId(a),
                                format!(
                                    "agent `{}` has no moves at `{}`",
                                    frame.agents[a], frame.states[s]
                                ),
                            ));
                        }
                    }
                    let expected = ProductIter::size(&g.moves[s]);
                    match expected {
                        Some(e) if g.edg[s].len() == e => {}
                        _ => out.push(Violation::at(
                            state,
                            format!(
                                "transition table at `{}` has {} entries, expected {}",
                                frame.states[s],
                                g.edg[s].len(),
                                expected.map_or("overflow".into(), |e| e.to_string())
                            ),
                        )),
                    }
                    for t in &g.edg[s] {
                        if t.0 >= n {
                            out.push(Violation::at(
                                state,
                                format!("transition target out of range at `{}`", frame.states[s]),
                            ));
                        }
                    }
                }
            }
            GameStructure::Implicit(g) => {
                for s in 0..n {
                    let state = StateId(s);
                    for (a, c) in g.moves[s].iter().enumerate() {
                        if *c == 0 {
                            out.push(Violation::at_agent(
                                state,
                                AgentId(a),
                                format!(
                                    "agent `{}` has no moves at `{}`",
                                    frame.agents[a], frame.states[s]
                                ),
                            ));
                        }
                    }
                    let rules = &g.rules[s];
                    match rules.last() {
                        None => out.push(Violation::at(
                            state,
                            format!("empty rule list at `{}`", frame.states[s]),
                        )),
                        Some((cond, _)) if *cond != MoveCondition::True => {
                            out.push(Violation::at(
                                state,
                                format!("last guard at `{}` is not `true`", frame.states[s]),
                            ))
                        }
                        _ => {}
                    }
                    for (cond, t) in rules {
                        if t.0 >= n {
                            out.push(Violation::at(
                                state,
                                format!("rule target out of range at `{}`", frame.states[s]),
                            ));
                        }
                        check_condition_atoms(cond, &g.moves[s], frame, state, &mut out);
                    }
                }
            }
            GameStructure::Ats(g) => {
                for s in 0..n {
                    let state = StateId(s);
                    for (a, agent_choices) in g.choices[s].iter().enumerate() {
                        if agent_choices.is_empty() {
                            out.push(Violation::at_agent(
                                state,
                                AgentId(a),
                                format!(
                                    "agent `{}` has no choices at `{}`",
                                    frame.agents[a], frame.states[s]
                                ),
                            ));
                        }
                        for set in agent_choices {
                            if set.is_empty() {
                                out.push(Violation::at_agent(
                                    state,
                                    AgentId(a),
                                    format!(
                                        "empty choice set for `{}` at `{}`",
                                        frame.agents[a], frame.states[s]
                                    ),
                                ));
                            }
                        }
                    }
                    // The singleton requirement, checked exhaustively
                    // over all joint selections.
                    let ranges: Vec<usize> = g.choices[s].iter().map(|c| c.len()).collect();
                    if ranges.iter().any(|r| *r == 0) {
                        continue;
                    }
                    for sel in ProductIter::new(ranges) {
                        let mut inter = StateSet::full(n);
                        for (a, j) in sel.iter().enumerate() {
                            inter.intersect_with(&g.choices[s][a][*j]);
                        }
                        let size = inter.count();
                        if size != 1 {
                            let shown: Vec<String> =
                                sel.iter().map(|j| (j + 1).to_string()).collect();
                            out.push(Violation::at(
                                state,
                                format!(
                                    "{} intersection at `{}` for choices ({})",
                                    if size == 0 { "empty" } else { "non-singleton" },
                                    frame.states[s],
                                    shown.join(",")
                                ),
                            ));
                        }
                    }
                }
            }
        }
        out
    }
}

fn check_condition_atoms(
    cond: &MoveCondition,
    moves: &[usize],
    frame: &Frame,
    state: StateId,
    out: &mut Vec<Violation>,
) {
    match cond {
        MoveCondition::True | MoveCondition::False => {}
        MoveCondition::Is(a, c) => {
            if a.0 >= moves.len() || *c >= moves[a.0] {
                out.push(Violation::at_agent(
                    state,
                    *a,
                    format!(
                        "guard atom `{}={}` out of range at `{}`",
                        frame.agents.get(a.0).map_or("?", |s| s.as_str()),
                        c + 1,
                        frame.states[state.0]
                    ),
                ));
            }
        }
        MoveCondition::Not(x) => check_condition_atoms(x, moves, frame, state, out),
        MoveCondition::And(x, y) | MoveCondition::Or(x, y) => {
            check_condition_atoms(x, moves, frame, state, out);
            check_condition_atoms(y, moves, frame, state, out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig1_next() {
        let g = fixtures::fig1_cgs();
        let l0 = g.frame().state_id("l0").unwrap();
        let next = g.next(l0);
        let names: Vec<&str> = next.iter().map(|i| g.frame().states[i].as_str()).collect();
        assert_eq!(names, vec!["l1", "l1p", "l2p", "l2"]);
    }

    #[test]
    fn fig1_next_restricted() {
        let g = fixtures::fig1_cgs();
        let f = g.frame();
        let l0 = f.state_id("l0").unwrap();
        let a1 = f.agent_id("A1").unwrap();

        // A1 plays its first move: l1 or l1p depending on A2.
        let m = CoalitionMove {
            coalition: Coalition::from_agents([a1]),
            moves: vec![0],
        };
        let r = g.next_restricted(l0, &m);
        assert_eq!(
            r,
            StateSet::from_indices(5, [f.state_id("l1").unwrap().0, f.state_id("l1p").unwrap().0])
        );

        // Full joint move <2,2> reaches l2 only.
        let full = CoalitionMove {
            coalition: Coalition::all(2),
            moves: vec![1, 1],
        };
        assert_eq!(
            g.next_restricted(l0, &full).only_element(),
            Some(f.state_id("l2").unwrap().0)
        );

        // Empty coalition: every successor.
        let r = g.next_restricted(l0, &CoalitionMove::empty());
        assert_eq!(r, g.next(l0));
    }

    #[test]
    fn fig1_joint_moves_order() {
        let g = fixtures::fig1_cgs();
        let l0 = g.frame().state_id("l0").unwrap();
        let ms = g.joint_moves(l0, &Coalition::all(2));
        let vecs: Vec<Vec<usize>> = ms.into_iter().map(|m| m.moves).collect();
        assert_eq!(vecs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        assert_eq!(g.joint_moves(l0, &Coalition::empty()).len(), 1);
    }

    #[test]
    fn fig2_valid_and_fig2_broken() {
        let g = fixtures::fig2_ats();
        assert!(g.validate().is_empty());

        // Removing l1p from A1's first choice leaves the selection
        // (1,2) with an empty intersection.
        let mut broken = match fixtures::fig2_ats() {
            GameStructure::Ats(a) => a,
            _ => unreachable!(),
        };
        let l1p = broken.frame.state_id("l1p").unwrap();
        broken.choices[0][0][0].remove(l1p.0);
        let broken = GameStructure::Ats(broken);
        let violations = broken.validate();
        assert!(violations
            .iter()
            .any(|v| v.message.contains("empty intersection at `l0` for choices (1,2)")));
    }

    #[test]
    fn single_state_self_loop_valid() {
        let mut frame = Frame::new(vec!["A1".into()], vec!["s".into()], vec![]);
        frame.labels = vec![BitSet::empty(0)];
        let g = GameStructure::Explicit(CgsExplicit {
            frame,
            moves: vec![vec![1]],
            edg: vec![vec![StateId(0)]],
        });
        assert!(g.validate().is_empty());
        assert_eq!(g.next(StateId(0)).only_element(), Some(0));
    }

    #[test]
    fn implicit_first_true_guard() {
        // Guards ((A1=1, l1), (true, l2)) with two moves for A1:
        // successors are exactly l1 and l2.
        let mut frame = Frame::new(
            vec!["A1".into()],
            vec!["s".into(), "l1".into(), "l2".into()],
            vec![],
        );
        frame.labels = vec![BitSet::empty(0); 3];
        let g = GameStructure::Implicit(CgsImplicit {
            frame,
            moves: vec![vec![2], vec![1], vec![1]],
            rules: vec![
                vec![
                    (MoveCondition::Is(AgentId(0), 0), StateId(1)),
                    (MoveCondition::True, StateId(2)),
                ],
                vec![(MoveCondition::True, StateId(1))],
                vec![(MoveCondition::True, StateId(2))],
            ],
        });
        assert!(g.validate().is_empty());
        assert_eq!(g.next(StateId(0)), StateSet::from_indices(3, [1, 2]));
        // Exactly one guard fires for every joint move.
        for m in g.joint_move_vectors(StateId(0)) {
            assert!(g.step(StateId(0), &m).is_some());
        }
    }

    #[test]
    fn condition_substitution() {
        let a1 = AgentId(0);
        let a2 = AgentId(1);
        let c = MoveCondition::and(MoveCondition::Is(a1, 0), MoveCondition::Is(a2, 1));

        // Full assignment folds to a constant.
        assert!(c.eval_full(&vec![0, 1]));
        assert!(!c.eval_full(&vec![1, 1]));

        // Partial assignment folds as far as constants allow.
        let partial = CoalitionMove {
            coalition: Coalition::from_agents([a1]),
            moves: vec![1],
        };
        assert_eq!(c.substitute(&partial), MoveCondition::False);

        let partial = CoalitionMove {
            coalition: Coalition::from_agents([a1]),
            moves: vec![0],
        };
        assert_eq!(c.substitute(&partial), MoveCondition::Is(a2, 1));

        assert_eq!(MoveCondition::True.substitute(&partial), MoveCondition::True);
    }

    #[test]
    fn next_is_union_of_joint_moves_all_kinds() {
        for g in [
            fixtures::fig1_cgs(),
            fixtures::fig1_cgs_implicit(),
            fixtures::fig2_ats(),
        ] {
            for s in 0..g.num_states() {
                let state = StateId(s);
                let mut union = StateSet::empty(g.num_states());
                for m in g.joint_move_vectors(state) {
                    let t = g.step(state, &m).expect("total");
                    union.insert(t.0);
                }
                assert_eq!(union, g.next(state));
                // Full moves always produce singletons.
                for m in g.joint_moves(state, &Coalition::all(g.num_agents())) {
                    assert_eq!(g.next_restricted(state, &m).count(), 1);
                }
            }
        }
    }
}
