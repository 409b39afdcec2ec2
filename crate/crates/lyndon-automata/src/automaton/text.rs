//! Plain-text serialization and DOT export.
//!
//! The text format is line oriented and bit-exact:
//!
//! ```text
//! base 2 tracks 2
//! initial 0
//! state 0 accepting 1
//! 0,0 -> 0
//! 0,1 -> 1
//! 1,0 -> 1
//! 1,1 -> 0
//! state 1 accepting 0
//! ...
//! ```
//!
//! Every state lists one transition line per symbol, in symbol order. Lines
//! starting with `#` are ignored on input and never produced by the writer.

use std::fmt::Write as _;

use super::{Automaton, DigitTupleAlphabet};
use crate::error::{Error, Result};

impl Automaton {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let alpha = self.alphabet;
        writeln!(out, "base {} tracks {}", alpha.base(), alpha.tracks()).unwrap();
        writeln!(out, "initial {}", self.initial()).unwrap();
        let syms = alpha.symbol_count();
        for q in 0..self.n_states() {
            writeln!(out, "state {} accepting {}", q, u8::from(self.is_accepting(q)))
                .unwrap();
            for s in 0..syms {
                let digits = alpha.digits_of(s);
                let label: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                writeln!(out, "{} -> {}", label.join(","), self.step(q, s)).unwrap();
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Automaton> {
        let (automaton, rest) = parse_automaton(text)?;
        if let Some(line) = rest.first() {
            return Err(Error::TextFormat(format!("unexpected line `{line}`")));
        }
        Ok(automaton)
    }

    /// DOT rendering for visualization. States that cannot reach acceptance
    /// are omitted along with their edges.
    pub fn to_dot(&self, name: &str) -> String {
        let co = self.co_reachable();
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  __init [shape=point];").unwrap();
        for (q, &live) in co.iter().enumerate() {
            if !live {
                continue;
            }
            let shape = if self.is_accepting(q) {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(out, "  q{q} [shape={shape}];").unwrap();
        }
        if co[self.initial()] {
            writeln!(out, "  __init -> q{};", self.initial()).unwrap();
        }
        let syms = self.alphabet.symbol_count();
        for (q, &live) in co.iter().enumerate() {
            if !live {
                continue;
            }
            // group parallel edges into one label
            let mut labels: std::collections::BTreeMap<usize, Vec<String>> =
                std::collections::BTreeMap::new();
            for s in 0..syms {
                let t = self.step(q, s);
                if !co[t] {
                    continue;
                }
                let digits = self.alphabet.digits_of(s);
                let label: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                labels.entry(t).or_default().push(format!("[{}]", label.join(",")));
            }
            for (t, parts) in labels {
                writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", parts.join(" ")).unwrap();
            }
        }
        writeln!(out, "}}").unwrap();
        out
    }
}

/// Parses one automaton; returns remaining non-empty lines (used by the
/// sequence format, which appends output lines).
pub(crate) fn parse_automaton(text: &str) -> Result<(Automaton, Vec<&str>)> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));

    let header = lines
        .next()
        .ok_or_else(|| Error::TextFormat("empty input".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 || parts[0] != "base" || parts[2] != "tracks" {
        return Err(Error::TextFormat(format!("bad header `{header}`")));
    }
    let base: u32 = parts[1]
        .parse()
        .map_err(|_| Error::TextFormat(format!("bad base `{}`", parts[1])))?;
    let tracks: usize = parts[3]
        .parse()
        .map_err(|_| Error::TextFormat(format!("bad track count `{}`", parts[3])))?;
    let alphabet = DigitTupleAlphabet::new(base, tracks)?;
    let syms = alphabet.symbol_count();

    let initial_line = lines
        .next()
        .ok_or_else(|| Error::TextFormat("missing initial line".into()))?;
    let initial: usize = initial_line
        .strip_prefix("initial ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::TextFormat(format!("bad initial line `{initial_line}`")))?;

    let mut accepting = Vec::new();
    let mut transitions: Vec<Vec<usize>> = Vec::new();
    let mut rest = Vec::new();
    let mut pending: Option<Vec<Option<usize>>> = None;

    let flush = |pending: &mut Option<Vec<Option<usize>>>,
                 transitions: &mut Vec<Vec<usize>>|
     -> Result<()> {
        if let Some(row) = pending.take() {
            let mut full = Vec::with_capacity(row.len());
            for (s, t) in row.into_iter().enumerate() {
                match t {
                    Some(t) => full.push(t),
                    None => {
                        return Err(Error::TextFormat(format!(
                            "state {} is missing a transition for symbol {s}",
                            transitions.len()
                        )))
                    }
                }
            }
            transitions.push(full);
        }
        Ok(())
    };

    for line in lines.by_ref() {
        if let Some(spec) = line.strip_prefix("state ") {
            flush(&mut pending, &mut transitions)?;
            let parts: Vec<&str> = spec.split_whitespace().collect();
            if parts.len() != 3 || parts[1] != "accepting" {
                return Err(Error::TextFormat(format!("bad state line `{line}`")));
            }
            let id: usize = parts[0]
                .parse()
                .map_err(|_| Error::TextFormat(format!("bad state id `{}`", parts[0])))?;
            if id != accepting.len() {
                return Err(Error::TextFormat(format!(
                    "state ids must be sequential, expected {}, got {id}",
                    accepting.len()
                )));
            }
            let acc = match parts[2] {
                "0" => false,
                "1" => true,
                other => {
                    return Err(Error::TextFormat(format!("bad accepting flag `{other}`")))
                }
            };
            accepting.push(acc);
            pending = Some(vec![None; syms]);
        } else if let Some((lhs, rhs)) = line.split_once("->") {
            let row = pending
                .as_mut()
                .ok_or_else(|| Error::TextFormat(format!("transition before any state: `{line}`")))?;
            let digits: Vec<u32> = lhs
                .trim()
                .split(',')
                .map(|d| {
                    d.trim()
                        .parse()
                        .map_err(|_| Error::TextFormat(format!("bad digit `{d}`")))
                })
                .collect::<Result<_>>()?;
            let sym = alphabet.symbol_of(&digits)?;
            let target: usize = rhs
                .trim()
                .parse()
                .map_err(|_| Error::TextFormat(format!("bad target `{rhs}`")))?;
            if row[sym].is_some() {
                return Err(Error::TextFormat(format!("duplicate transition `{line}`")));
            }
            row[sym] = Some(target);
        } else {
            rest.push(line);
            break;
        }
    }
    flush(&mut pending, &mut transitions)?;
    rest.extend(lines);

    let automaton = Automaton::from_parts(alphabet, initial, accepting, transitions)
        .map_err(|e| Error::TextFormat(e.to_string()))?;
    Ok((automaton, rest))
}
