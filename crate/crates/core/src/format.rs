//! The `.aut` text format and DOT export.
//!
//! The format is line oriented, UTF-8, `#` starts a comment to end of line,
//! blank lines are ignored:
//!
//! ```text
//! states: 4
//! letters: a b
//! a: 2 3 4 1
//! b: 1 1 4 4
//! ```
//!
//! Targets are 1-based (`q_i · name = q_{t_i}`). Letter rows must appear in
//! the order of the `letters:` declaration.

use std::fmt::Write as _;

use thiserror::Error;

use crate::automaton::Automaton;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: target {target} out of range (states: {n})")]
    TargetOutOfRange { line: usize, target: i64, n: usize },
    #[error("line {line}: duplicate letter `{name}`")]
    DuplicateLetter { line: usize, name: String },
    #[error("line {line}: row for `{name}` has {got} targets, expected {expected}")]
    WrongRowLength {
        line: usize,
        name: String,
        got: usize,
        expected: usize,
    },
    #[error("missing {0} declaration")]
    Missing(&'static str),
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parse the `.aut` format into a validated automaton.
pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let mut n: Option<usize> = None;
    let mut letters: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut letters_line = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (head, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected `<key>: <values>`"))?;
        let head = head.trim();
        let rest = rest.trim();
        match head {
            "states" => {
                if n.is_some() {
                    return Err(syntax(line_no, "repeated `states:` declaration"));
                }
                let count: usize = rest
                    .parse()
                    .map_err(|_| syntax(line_no, format!("invalid state count `{rest}`")))?;
                if count == 0 {
                    return Err(syntax(line_no, "automaton needs at least one state"));
                }
                n = Some(count);
            }
            "letters" => {
                if !letters.is_empty() {
                    return Err(syntax(line_no, "repeated `letters:` declaration"));
                }
                letters_line = line_no;
                for name in rest.split_whitespace() {
                    if letters.iter().any(|l| l == name) {
                        return Err(ParseError::DuplicateLetter {
                            line: line_no,
                            name: name.to_string(),
                        });
                    }
                    letters.push(name.to_string());
                }
                if letters.is_empty() {
                    return Err(syntax(line_no, "automaton needs at least one letter"));
                }
            }
            name => {
                let n = n.ok_or_else(|| syntax(line_no, "`states:` must come first"))?;
                if letters.is_empty() {
                    return Err(syntax(line_no, "`letters:` must come before letter rows"));
                }
                if rows.len() >= letters.len() {
                    return Err(syntax(line_no, format!("unexpected extra row `{name}`")));
                }
                let expected = &letters[rows.len()];
                if name != expected {
                    return Err(syntax(
                        line_no,
                        format!("row for `{name}` out of order, expected `{expected}`"),
                    ));
                }
                let mut row = Vec::new();
                for tok in rest.split_whitespace() {
                    let target: i64 = tok
                        .parse()
                        .map_err(|_| syntax(line_no, format!("invalid target `{tok}`")))?;
                    if target < 1 || target as usize > n {
                        return Err(ParseError::TargetOutOfRange {
                            line: line_no,
                            target,
                            n,
                        });
                    }
                    row.push(target as usize - 1);
                }
                if row.len() != n {
                    return Err(ParseError::WrongRowLength {
                        line: line_no,
                        name: name.to_string(),
                        got: row.len(),
                        expected: n,
                    });
                }
                rows.push(row);
            }
        }
    }

    let n = n.ok_or(ParseError::Missing("`states:`"))?;
    if letters.is_empty() {
        return Err(ParseError::Missing("`letters:`"));
    }
    if rows.len() < letters.len() {
        return Err(ParseError::WrongRowLength {
            line: letters_line,
            name: letters[rows.len()].clone(),
            got: 0,
            expected: n,
        });
    }
    Automaton::new(letters, rows, n).map_err(|e| syntax(0, e.to_string()))
}

/// Serialize an automaton back to the `.aut` format (deterministic bytes).
pub fn to_aut(aut: &Automaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "states: {}", aut.state_count());
    let _ = writeln!(out, "letters: {}", aut.letters().join(" "));
    for (name, row) in aut.letters().iter().zip(aut.delta()) {
        let targets: Vec<String> = row.iter().map(|t| (t + 1).to_string()).collect();
        let _ = writeln!(out, "{}: {}", name, targets.join(" "));
    }
    out
}

/// DOT export: nodes `q1..qn`, one edge per (state, letter) with labels for
/// the same edge merged as `a,b`.
pub fn to_dot(aut: &Automaton) -> String {
    let n = aut.state_count();
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n");
    for q in 0..n {
        let _ = writeln!(out, "  q{};", q + 1);
    }
    for q in 0..n {
        // group letters by target, in letter order
        let mut by_target: Vec<(usize, Vec<&str>)> = Vec::new();
        for (x, name) in aut.letters().iter().enumerate() {
            let t = aut.step(q, x);
            match by_target.iter_mut().find(|(tt, _)| *tt == t) {
                Some((_, labels)) => labels.push(name),
                None => by_target.push((t, vec![name])),
            }
        }
        for (t, labels) in by_target {
            let _ = writeln!(
                out,
                "  q{} -> q{} [label=\"{}\"];",
                q + 1,
                t + 1,
                labels.join(",")
            );
        }
    }
    out.push_str("}\n");
    out
}
