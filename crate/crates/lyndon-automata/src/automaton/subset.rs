//! Subset construction from an implicit nondeterministic automaton.

use std::collections::{HashMap, VecDeque};

use super::{Automaton, DigitTupleAlphabet, Limits};
use crate::error::{Error, Result};

/// A nondeterministic automaton described implicitly: `moves` pushes the
/// targets of `(state, symbol)` onto its output buffer. Used only as an
/// intermediate during projection.
pub struct Nfa<'a> {
    pub alphabet: DigitTupleAlphabet,
    pub n_states: usize,
    pub initial: Vec<u32>,
    pub accepting: Vec<bool>,
    #[allow(clippy::type_complexity)]
    pub moves: Box<dyn Fn(usize, usize, &mut Vec<u32>) + 'a>,
}

pub fn determinize(nfa: &Nfa<'_>, limits: &Limits, context: &str) -> Result<Automaton> {
    let syms = nfa.alphabet.symbol_count();
    let mut initial = nfa.initial.clone();
    initial.sort_unstable();
    initial.dedup();

    let mut index: HashMap<Box<[u32]>, u32> = HashMap::new();
    let mut subsets: Vec<Box<[u32]>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut accepting = Vec::new();
    let mut transitions: Vec<u32> = Vec::new();

    let start: Box<[u32]> = initial.into_boxed_slice();
    index.insert(start.clone(), 0);
    accepting.push(start.iter().any(|&q| nfa.accepting[q as usize]));
    subsets.push(start);
    queue.push_back(0u32);

    let mut buf: Vec<u32> = Vec::new();
    while let Some(id) = queue.pop_front() {
        let subset = subsets[id as usize].clone();
        for s in 0..syms {
            buf.clear();
            for &q in subset.iter() {
                (nfa.moves)(q as usize, s, &mut buf);
            }
            buf.sort_unstable();
            buf.dedup();
            let key: Box<[u32]> = buf.as_slice().into();
            let target = match index.get(&key) {
                Some(&t) => t,
                None => {
                    let t = index.len() as u32;
                    if index.len() >= limits.max_states {
                        return Err(Error::StateCap {
                            limit: limits.max_states,
                            context: context.to_string(),
                        });
                    }
                    index.insert(key.clone(), t);
                    accepting.push(key.iter().any(|&q| nfa.accepting[q as usize]));
                    subsets.push(key);
                    queue.push_back(t);
                    t
                }
            };
            transitions.push(target);
        }
    }

    Ok(Automaton::from_flat(nfa.alphabet, 0, accepting, transitions))
}
