//! Line-oriented textual model format.
//!
//! ```text
//! # comments start with '#'
//! kind: cgs-explicit | cgs-implicit | ats
//! agents: A1 A2
//! states: l0 l1 l2
//! ap: p q
//! label l1: p q
//! moves l0: A1=2 A2=2                          # CGS kinds only
//! trans l0 [1,1] -> l1                         # explicit, one line per joint move
//! trans l0: (A1=1 & A2=2) -> l1 ; true -> l2   # implicit, ordered guards
//! choice l0 A1: {l1,l1p} {l2,l2p}              # ats
//! ```
//!
//! Parsing is strict: unknown names, duplicate declarations and missing
//! table entries are reported with line numbers. Moves are 1-based in
//! this format and 0-based everywhere else.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{
    Ats, CgsExplicit, CgsImplicit, Frame, GameStructure, MoveCondition, ProductIter, StateId,
    StructureKind, MAX_AGENTS,
};
use crate::bitset::StateSet;

#[derive(Debug, Error)]
#[error("line {line}: {message}")]
pub struct ModelParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ModelParseError> {
    Err(ModelParseError {
        line,
        message: message.into(),
    })
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Decl<'a> {
    line: usize,
    text: &'a str,
}

pub fn parse_model(input: &str) -> Result<GameStructure, ModelParseError> {
    let mut kind: Option<(usize, StructureKind)> = None;
    let mut agents: Option<(usize, Vec<String>)> = None;
    let mut states: Option<(usize, Vec<String>)> = None;
    let mut ap: Option<(usize, Vec<String>)> = None;
    let mut labels: Vec<Decl> = Vec::new();
    let mut moves: Vec<Decl> = Vec::new();
    let mut trans: Vec<Decl> = Vec::new();
    let mut choices: Vec<Decl> = Vec::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }

        if let Some(rest) = line.strip_prefix("kind:") {
            if kind.is_some() {
                return err(line_no, "duplicate `kind` declaration");
            }
            let k = match rest.trim() {
                "cgs-explicit" => StructureKind::CgsExplicit,
                "cgs-implicit" => StructureKind::CgsImplicit,
                "ats" => StructureKind::Ats,
                other => return err(line_no, format!("unknown kind `{other}`")),
            };
            kind = Some((line_no, k));
        } else if let Some(rest) = line.strip_prefix("agents:") {
            if agents.is_some() {
                return err(line_no, "duplicate `agents` declaration");
            }
            agents = Some((line_no, split_names(rest, line_no)?));
        } else if let Some(rest) = line.strip_prefix("states:") {
            if states.is_some() {
                return err(line_no, "duplicate `states` declaration");
            }
            states = Some((line_no, split_names(rest, line_no)?));
        } else if let Some(rest) = line.strip_prefix("ap:") {
            if ap.is_some() {
                return err(line_no, "duplicate `ap` declaration");
            }
            ap = Some((line_no, split_names(rest, line_no)?));
        } else if let Some(rest) = line.strip_prefix("label ") {
            labels.push(Decl {
                line: line_no,
                text: rest,
            });
        } else if let Some(rest) = line.strip_prefix("moves ") {
            moves.push(Decl {
                line: line_no,
                text: rest,
            });
        } else if let Some(rest) = line.strip_prefix("trans ") {
            trans.push(Decl {
                line: line_no,
                text: rest,
            });
        } else if let Some(rest) = line.strip_prefix("choice ") {
            choices.push(Decl {
                line: line_no,
                text: rest,
            });
        } else {
            return err(line_no, format!("unrecognized line `{line}`"));
        }
    }

    let (_, kind) = match kind {
        Some(k) => k,
        None => return err(0, "missing `kind` declaration"),
    };
    let (agents_line, agent_names) = match agents {
        Some(a) => a,
        None => return err(0, "missing `agents` declaration"),
    };
    let (_, state_names) = match states {
        Some(s) => s,
        None => return err(0, "missing `states` declaration"),
    };
    let prop_names: Vec<String> = ap.map(|(_, p)| p).unwrap_or_default();

    if agent_names.len() > MAX_AGENTS {
        return err(agents_line, format!("more than {MAX_AGENTS} agents"));
    }
    check_unique(&agent_names, agents_line, "agent")?;
    check_unique(&state_names, 0, "state")?;
    check_unique(&prop_names, 0, "proposition")?;

    let mut frame = Frame::new(agent_names, state_names, prop_names);
    let n = frame.num_states();
    let k = frame.num_agents();

    // Labels.
    let mut labeled: Vec<bool> = vec![false; n];
    for decl in &labels {
        let (state_part, props_part) = match decl.text.split_once(':') {
            Some(p) => p,
            None => return err(decl.line, "expected `label <state>: <props>`"),
        };
        let s = lookup_state(&frame, state_part.trim(), decl.line)?;
        if labeled[s.0] {
            return err(decl.line, format!("duplicate label for `{}`", state_part.trim()));
        }
        labeled[s.0] = true;
        for name in props_part.split_whitespace() {
            match frame.prop_id(name) {
                Some(p) => frame.add_label(s, p),
                None => return err(decl.line, format!("unknown proposition `{name}`")),
            }
        }
    }

    match kind {
        StructureKind::Ats => {
            if !moves.is_empty() {
                return err(moves[0].line, "`moves` lines are not allowed for ats");
            }
            if !trans.is_empty() {
                return err(trans[0].line, "`trans` lines are not allowed for ats");
            }
            let mut table: Vec<Vec<Option<Vec<StateSet>>>> = vec![vec![None; k]; n];
            for decl in &choices {
                let (head, sets_part) = match decl.text.split_once(':') {
                    Some(p) => p,
                    None => return err(decl.line, "expected `choice <state> <agent>: {..} ..`"),
                };
                let mut head_it = head.split_whitespace();
                let state_name = head_it.next().unwrap_or("");
                let agent_name = head_it.next().unwrap_or("");
                if head_it.next().is_some() {
                    return err(decl.line, "expected `choice <state> <agent>: ...`");
                }
                let s = lookup_state(&frame, state_name, decl.line)?;
                let a = match frame.agent_id(agent_name) {
                    Some(a) => a,
                    None => return err(decl.line, format!("unknown agent `{agent_name}`")),
                };
                if table[s.0][a.0].is_some() {
                    return err(
                        decl.line,
                        format!("duplicate choice declaration for `{state_name}` / `{agent_name}`"),
                    );
                }
                table[s.0][a.0] = Some(parse_choice_sets(&frame, sets_part, decl.line)?);
            }
            let mut out = Vec::with_capacity(n);
            for (s, row) in table.into_iter().enumerate() {
                let mut per_state = Vec::with_capacity(k);
                for (a, cell) in row.into_iter().enumerate() {
                    match cell {
                        Some(c) => per_state.push(c),
                        None => {
                            return err(
                                0,
                                format!(
                                    "missing choice declaration for `{}` / `{}`",
                                    frame.states[s], frame.agents[a]
                                ),
                            )
                        }
                    }
                }
                out.push(per_state);
            }
            Ok(GameStructure::Ats(Ats {
                frame,
                choices: out,
            }))
        }
        StructureKind::CgsExplicit | StructureKind::CgsImplicit => {
            if !choices.is_empty() {
                return err(choices[0].line, "`choice` lines are only allowed for ats");
            }
            let move_counts = parse_moves(&frame, &moves, n, k)?;
            match kind {
                StructureKind::CgsExplicit => {
                    let edg = parse_explicit_trans(&frame, &move_counts, &trans)?;
                    Ok(GameStructure::Explicit(CgsExplicit {
                        frame,
                        moves: move_counts,
                        edg,
                    }))
                }
                StructureKind::CgsImplicit => {
                    let rules = parse_implicit_trans(&frame, &move_counts, &trans)?;
                    Ok(GameStructure::Implicit(CgsImplicit {
                        frame,
                        moves: move_counts,
                        rules,
                    }))
                }
                StructureKind::Ats => unreachable!(),
            }
        }
    }
}

fn split_names(s: &str, line: usize) -> Result<Vec<String>, ModelParseError> {
    let names: Vec<String> = s.split_whitespace().map(|x| x.to_string()).collect();
    for n in &names {
        if !is_ident(n) {
            return err(line, format!("invalid identifier `{n}`"));
        }
    }
    Ok(names)
}

fn check_unique(names: &[String], line: usize, what: &str) -> Result<(), ModelParseError> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return err(line, format!("duplicate {what} name `{n}`"));
        }
    }
    Ok(())
}

fn lookup_state(frame: &Frame, name: &str, line: usize) -> Result<StateId, ModelParseError> {
    frame
        .state_id(name)
        .ok_or(ModelParseError {
            line,
            message: format!("unknown state `{name}`"),
        })
}

fn parse_choice_sets(
    frame: &Frame,
    s: &str,
    line: usize,
) -> Result<Vec<StateSet>, ModelParseError> {
    let mut sets = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        if !rest.starts_with('{') {
            return err(line, "expected `{` starting a choice set");
        }
        let close = match rest.find('}') {
            Some(c) => c,
            None => return err(line, "unterminated choice set"),
        };
        let inner = &rest[1..close];
        let mut set = StateSet::empty(frame.num_states());
        for name in inner.split(',') {
            let name = name.trim();
            if name.is_empty() {
                return err(line, "empty state name in choice set");
            }
            set.insert(lookup_state(frame, name, line)?.0);
        }
        sets.push(set);
        rest = rest[close + 1..].trim_start();
    }
    if sets.is_empty() {
        return err(line, "empty choice list");
    }
    Ok(sets)
}

fn parse_moves(
    frame: &Frame,
    decls: &[Decl],
    n: usize,
    k: usize,
) -> Result<Vec<Vec<usize>>, ModelParseError> {
    let mut table: Vec<Option<Vec<usize>>> = vec![None; n];
    for decl in decls {
        let (state_part, counts_part) = match decl.text.split_once(':') {
            Some(p) => p,
            None => return err(decl.line, "expected `moves <state>: A=n ...`"),
        };
        let s = lookup_state(frame, state_part.trim(), decl.line)?;
        if table[s.0].is_some() {
            return err(
                decl.line,
                format!("duplicate moves declaration for `{}`", state_part.trim()),
            );
        }
        let mut counts: Vec<Option<usize>> = vec![None; k];
        for item in counts_part.split_whitespace() {
            let (agent, num) = match item.split_once('=') {
                Some(p) => p,
                None => return err(decl.line, format!("expected `agent=count`, got `{item}`")),
            };
            let a = match frame.agent_id(agent) {
                Some(a) => a,
                None => return err(decl.line, format!("unknown agent `{agent}`")),
            };
            let c: usize = match num.parse() {
                Ok(c) if c >= 1 => c,
                _ => return err(decl.line, format!("invalid move count `{num}`")),
            };
            if counts[a.0].is_some() {
                return err(decl.line, format!("duplicate move count for `{agent}`"));
            }
            counts[a.0] = Some(c);
        }
        let mut fixed = Vec::with_capacity(k);
        for (a, c) in counts.into_iter().enumerate() {
            match c {
                Some(c) => fixed.push(c),
                None => {
                    return err(
                        decl.line,
                        format!("missing move count for agent `{}`", frame.agents[a]),
                    )
                }
            }
        }
        table[s.0] = Some(fixed);
    }
    let mut out = Vec::with_capacity(n);
    for (s, row) in table.into_iter().enumerate() {
        match row {
            Some(r) => out.push(r),
            None => {
                return err(
                    0,
                    format!("missing moves declaration for state `{}`", frame.states[s]),
                )
            }
        }
    }
    Ok(out)
}

fn parse_explicit_trans(
    frame: &Frame,
    moves: &[Vec<usize>],
    decls: &[Decl],
) -> Result<Vec<Vec<StateId>>, ModelParseError> {
    let n = frame.num_states();
    let mut table: Vec<Vec<Option<StateId>>> = moves
        .iter()
        .map(|m| vec![None; ProductIter::size(m).unwrap_or(0)])
        .collect();
    for decl in decls {
        // `<state> [m1,m2,...] -> <target>`
        let text = decl.text.trim();
        let open = match text.find('[') {
            Some(p) => p,
            None => return err(decl.line, "expected `[moves]` in explicit transition"),
        };
        let close = match text.find(']') {
            Some(p) => p,
            None => return err(decl.line, "unterminated `[moves]`"),
        };
        let s = lookup_state(frame, text[..open].trim(), decl.line)?;
        let rest = text[close + 1..].trim();
        let target_name = match rest.strip_prefix("->") {
            Some(t) => t.trim(),
            None => return err(decl.line, "expected `->` after `[moves]`"),
        };
        let t = lookup_state(frame, target_name, decl.line)?;
        let mut vector = Vec::new();
        for part in text[open + 1..close].split(',') {
            let m: usize = match part.trim().parse() {
                Ok(m) if m >= 1 => m,
                _ => return err(decl.line, format!("invalid move `{}`", part.trim())),
            };
            vector.push(m - 1);
        }
        if vector.len() != frame.num_agents() {
            return err(decl.line, "joint move arity does not match agent count");
        }
        for (a, m) in vector.iter().enumerate() {
            if *m >= moves[s.0][a] {
                return err(
                    decl.line,
                    format!("move {} out of range for `{}`", m + 1, frame.agents[a]),
                );
            }
        }
        let flat = super::flat_index(&moves[s.0], &vector);
        if table[s.0][flat].is_some() {
            return err(decl.line, "duplicate transition for this joint move");
        }
        table[s.0][flat] = Some(t);
    }
    let mut out = Vec::with_capacity(n);
    for (s, row) in table.into_iter().enumerate() {
        let mut fixed = Vec::with_capacity(row.len());
        for (flat, cell) in row.into_iter().enumerate() {
            match cell {
                Some(t) => fixed.push(t),
                None => {
                    return err(
                        0,
                        format!(
                            "missing transition {} of state `{}`",
                            flat, frame.states[s]
                        ),
                    )
                }
            }
        }
        out.push(fixed);
    }
    Ok(out)
}

fn parse_implicit_trans(
    frame: &Frame,
    moves: &[Vec<usize>],
    decls: &[Decl],
) -> Result<Vec<Vec<(MoveCondition, StateId)>>, ModelParseError> {
    let n = frame.num_states();
    let mut table: Vec<Option<Vec<(MoveCondition, StateId)>>> = vec![None; n];
    for decl in decls {
        let (state_part, rules_part) = match decl.text.split_once(':') {
            Some(p) => p,
            None => return err(decl.line, "expected `trans <state>: guard -> target ; ...`"),
        };
        let s = lookup_state(frame, state_part.trim(), decl.line)?;
        if table[s.0].is_some() {
            return err(
                decl.line,
                format!("duplicate trans declaration for `{}`", state_part.trim()),
            );
        }
        let mut rules = Vec::new();
        for rule in rules_part.split(';') {
            let (guard_part, target_part) = match rule.rsplit_once("->") {
                Some(p) => p,
                None => return err(decl.line, "expected `guard -> target`"),
            };
            let cond = parse_guard(frame, moves, s, guard_part.trim(), decl.line)?;
            let t = lookup_state(frame, target_part.trim(), decl.line)?;
            rules.push((cond, t));
        }
        if rules.is_empty() {
            return err(decl.line, "empty rule list");
        }
        table[s.0] = Some(rules);
    }
    let mut out = Vec::with_capacity(n);
    for (s, row) in table.into_iter().enumerate() {
        match row {
            Some(r) => out.push(r),
            None => {
                return err(
                    0,
                    format!("missing trans declaration for state `{}`", frame.states[s]),
                )
            }
        }
    }
    Ok(out)
}

/// Guard grammar: `|` < `&` < `!`, atoms `agent=move`, `true`, `false`,
/// parentheses.
fn parse_guard(
    frame: &Frame,
    moves: &[Vec<usize>],
    state: StateId,
    text: &str,
    line: usize,
) -> Result<MoveCondition, ModelParseError> {
    let tokens = lex_guard(text, line)?;
    let mut pos = 0;
    let cond = guard_or(frame, moves, state, &tokens, &mut pos, line)?;
    if pos != tokens.len() {
        return err(line, format!("unexpected `{}` in guard", tokens[pos]));
    }
    Ok(cond)
}

fn lex_guard(text: &str, line: usize) -> Result<Vec<String>, ModelParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' => {
                chars.next();
            }
            '(' | ')' | '!' | '&' | '|' | '=' => {
                out.push(c.to_string());
                chars.next();
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(word);
            }
            other => return err(line, format!("unexpected character `{other}` in guard")),
        }
    }
    Ok(out)
}

fn guard_or(
    frame: &Frame,
    moves: &[Vec<usize>],
    state: StateId,
    tokens: &[String],
    pos: &mut usize,
    line: usize,
) -> Result<MoveCondition, ModelParseError> {
    let mut left = guard_and(frame, moves, state, tokens, pos, line)?;
    while tokens.get(*pos).map(|t| t.as_str()) == Some("|") {
        *pos += 1;
        let right = guard_and(frame, moves, state, tokens, pos, line)?;
        left = MoveCondition::or(left, right);
    }
    Ok(left)
}

fn guard_and(
    frame: &Frame,
    moves: &[Vec<usize>],
    state: StateId,
    tokens: &[String],
    pos: &mut usize,
    line: usize,
) -> Result<MoveCondition, ModelParseError> {
    let mut left = guard_atom(frame, moves, state, tokens, pos, line)?;
    while tokens.get(*pos).map(|t| t.as_str()) == Some("&") {
        *pos += 1;
        let right = guard_atom(frame, moves, state, tokens, pos, line)?;
        left = MoveCondition::and(left, right);
    }
    Ok(left)
}

fn guard_atom(
    frame: &Frame,
    moves: &[Vec<usize>],
    state: StateId,
    tokens: &[String],
    pos: &mut usize,
    line: usize,
) -> Result<MoveCondition, ModelParseError> {
    match tokens.get(*pos).map(|t| t.as_str()) {
        Some("!") => {
            *pos += 1;
            Ok(MoveCondition::not(guard_atom(
                frame, moves, state, tokens, pos, line,
            )?))
        }
        Some("(") => {
            *pos += 1;
            let inner = guard_or(frame, moves, state, tokens, pos, line)?;
            if tokens.get(*pos).map(|t| t.as_str()) != Some(")") {
                return err(line, "expected `)` in guard");
            }
            *pos += 1;
            Ok(inner)
        }
        Some("true") => {
            *pos += 1;
            Ok(MoveCondition::True)
        }
        Some("false") => {
            *pos += 1;
            Ok(MoveCondition::False)
        }
        Some(word) if is_ident(word) => {
            let agent = match frame.agent_id(word) {
                Some(a) => a,
                None => return err(line, format!("unknown agent `{word}` in guard")),
            };
            *pos += 1;
            if tokens.get(*pos).map(|t| t.as_str()) != Some("=") {
                return err(line, format!("expected `=` after agent `{word}`"));
            }
            *pos += 1;
            let num = tokens.get(*pos).cloned().unwrap_or_default();
            let m: usize = match num.parse() {
                Ok(m) if m >= 1 => m,
                _ => return err(line, format!("invalid move `{num}` in guard")),
            };
            *pos += 1;
            if m > moves[state.0][agent.0] {
                return err(
                    line,
                    format!("move {m} out of range for `{word}` at this state"),
                );
            }
            Ok(MoveCondition::Is(agent, m - 1))
        }
        Some(other) => err(line, format!("unexpected `{other}` in guard")),
        None => err(line, "unexpected end of guard"),
    }
}

fn format_guard(frame: &Frame, cond: &MoveCondition) -> String {
    fn go(frame: &Frame, cond: &MoveCondition, parent: u8, out: &mut String) {
        let prec = match cond {
            MoveCondition::Or(..) => 1,
            MoveCondition::And(..) => 2,
            _ => 3,
        };
        let needs_parens = prec < parent;
        if needs_parens {
            out.push('(');
        }
        match cond {
            MoveCondition::True => out.push_str("true"),
            MoveCondition::False => out.push_str("false"),
            MoveCondition::Is(a, m) => {
                let _ = write!(out, "{}={}", frame.agents[a.0], m + 1);
            }
            MoveCondition::Not(x) => {
                out.push('!');
                go(frame, x, 3, out);
            }
            MoveCondition::And(x, y) => {
                go(frame, x, 2, out);
                out.push_str(" & ");
                go(frame, y, 2, out);
            }
            MoveCondition::Or(x, y) => {
                go(frame, x, 1, out);
                out.push_str(" | ");
                go(frame, y, 1, out);
            }
        }
        if needs_parens {
            out.push(')');
        }
    }
    let mut s = String::new();
    go(frame, cond, 0, &mut s);
    s
}

/// Render a structure in the textual model format. The output is
/// canonical: `parse_model(print_model(g))` reproduces `g`.
pub fn print_model(g: &GameStructure) -> String {
    let frame = g.frame();
    let mut out = String::new();
    let _ = writeln!(out, "kind: {}", g.kind());
    let _ = writeln!(out, "agents: {}", frame.agents.join(" "));
    let _ = writeln!(out, "states: {}", frame.states.join(" "));
    if !frame.props.is_empty() {
        let _ = writeln!(out, "ap: {}", frame.props.join(" "));
    }
    for (s, label) in frame.labels.iter().enumerate() {
        if !label.is_empty() {
            let names: Vec<&str> = label.iter().map(|p| frame.props[p].as_str()).collect();
            let _ = writeln!(out, "label {}: {}", frame.states[s], names.join(" "));
        }
    }
    match g {
        GameStructure::Explicit(e) => {
            print_move_lines(&mut out, frame, &e.moves);
            for s in 0..frame.num_states() {
                for (flat, m) in ProductIter::new(e.moves[s].clone()).enumerate() {
                    let shown: Vec<String> = m.iter().map(|x| (x + 1).to_string()).collect();
                    let _ = writeln!(
                        out,
                        "trans {} [{}] -> {}",
                        frame.states[s],
                        shown.join(","),
                        frame.states[e.edg[s][flat].0]
                    );
                }
            }
        }
        GameStructure::Implicit(i) => {
            print_move_lines(&mut out, frame, &i.moves);
            for s in 0..frame.num_states() {
                let rules: Vec<String> = i.rules[s]
                    .iter()
                    .map(|(c, t)| format!("{} -> {}", format_guard(frame, c), frame.states[t.0]))
                    .collect();
                let _ = writeln!(out, "trans {}: {}", frame.states[s], rules.join(" ; "));
            }
        }
        GameStructure::Ats(a) => {
            for s in 0..frame.num_states() {
                for (ag, sets) in a.choices[s].iter().enumerate() {
                    let shown: Vec<String> = sets
                        .iter()
                        .map(|set| {
                            let names: Vec<&str> =
                                set.iter().map(|i| frame.states[i].as_str()).collect();
                            format!("{{{}}}", names.join(","))
                        })
                        .collect();
                    let _ = writeln!(
                        out,
                        "choice {} {}: {}",
                        frame.states[s],
                        frame.agents[ag],
                        shown.join(" ")
                    );
                }
            }
        }
    }
    out
}

fn print_move_lines(out: &mut String, frame: &Frame, moves: &[Vec<usize>]) {
    // Group identical declarations? Keep one line per state, simplest.
    let mut by_state: BTreeMap<usize, String> = BTreeMap::new();
    for (s, counts) in moves.iter().enumerate() {
        let parts: Vec<String> = counts
            .iter()
            .enumerate()
            .map(|(a, c)| format!("{}={}", frame.agents[a], c))
            .collect();
        by_state.insert(s, parts.join(" "));
    }
    for (s, line) in by_state {
        let _ = writeln!(out, "moves {}: {}", frame.states[s], line);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fig1_roundtrip() {
        let g = fixtures::fig1_cgs();
        let text = print_model(&g);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(g, parsed);
    }

    #[test]
    fn fig2_roundtrip() {
        let g = fixtures::fig2_ats();
        let text = print_model(&g);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(g, parsed);
    }

    #[test]
    fn implicit_roundtrip() {
        let g = fixtures::fig1_cgs_implicit();
        let text = print_model(&g);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(g, parsed);
    }

    #[test]
    fn strict_errors_carry_line_numbers() {
        let bad = "kind: cgs-explicit\nagents: A1\nstates: s\nmoves s: A1=1\ntrans s [1] -> t\n";
        let e = parse_model(bad).unwrap_err();
        assert_eq!(e.line, 5);
        assert!(e.message.contains("unknown state"));

        let incomplete = "kind: cgs-explicit\nagents: A1\nstates: s\nmoves s: A1=2\ntrans s [1] -> s\n";
        let e = parse_model(incomplete).unwrap_err();
        assert!(e.message.contains("missing transition"));

        let dup = "kind: cgs-explicit\nagents: A1\nstates: s s\nmoves s: A1=1\ntrans s [1] -> s\n";
        let e = parse_model(dup).unwrap_err();
        assert!(e.message.contains("duplicate state name"));
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "\n# header\nkind: ats\nagents: A1 # trailing\nstates: s\nchoice s A1: {s}\n";
        let g = parse_model(text).unwrap();
        assert_eq!(g.kind(), StructureKind::Ats);
    }
}
