//! Value-level views of a language: canonical representations, finiteness of
//! the accepted value set, and enumeration helpers.
//!
//! The canonical representation of a value tuple pads every component to the
//! length of the longest one, so canonical words are exactly those whose first
//! column is nonzero, plus the single all-zero column for the zero tuple.

use super::{Automaton, DigitTupleAlphabet};
use crate::error::{Error, Result};

impl Automaton {
    /// Does the automaton accept only finitely many distinct value tuples?
    ///
    /// Decided by restricting to canonical words, trimming to states both
    /// reachable and co-reachable, and testing that subgraph for acyclicity.
    pub fn is_value_language_finite(&self) -> bool {
        let canon = self
            .boolean_combine(&canonical_marker(self.alphabet), super::BoolOp::And)
            .expect("same alphabet by construction");
        let n = canon.n_states();
        let syms = canon.alphabet.symbol_count();
        let co = canon.co_reachable();

        // Cycle detection among reachable && co-reachable states.
        // 0 = unvisited, 1 = on stack, 2 = done.
        let mut color = vec![0u8; n];
        let start = canon.initial();
        if !co[start] {
            return true; // empty language
        }
        let mut stack: Vec<(usize, usize)> = vec![(start, 0)];
        color[start] = 1;
        while let Some(&mut (q, ref mut s)) = stack.last_mut() {
            if *s == syms {
                color[q] = 2;
                stack.pop();
                continue;
            }
            let sym = *s;
            *s += 1;
            let t = canon.step(q, sym);
            if !co[t] {
                continue;
            }
            match color[t] {
                0 => {
                    color[t] = 1;
                    stack.push((t, 0));
                }
                1 => return false,
                _ => {}
            }
        }
        true
    }

    /// All accepted value tuples, when the value language is finite.
    /// Tuples come back sorted lexicographically.
    pub fn accepted_value_tuples(&self) -> Option<Vec<Vec<u64>>> {
        if !self.is_value_language_finite() {
            return None;
        }
        let canon = self
            .boolean_combine(&canonical_marker(self.alphabet), super::BoolOp::And)
            .expect("same alphabet by construction");
        let co = canon.co_reachable();
        let m = self.alphabet.tracks();
        let base = self.alphabet.base() as u64;
        let mut out: Vec<Vec<u64>> = Vec::new();
        // DFS over the trimmed (acyclic) graph, building the value tuple.
        let mut values = vec![0u64; m];
        fn go(
            canon: &Automaton,
            co: &[bool],
            q: usize,
            values: &mut Vec<u64>,
            base: u64,
            out: &mut Vec<Vec<u64>>,
        ) {
            if canon.is_accepting(q) {
                out.push(values.clone());
            }
            let syms = canon.alphabet().symbol_count();
            for s in 0..syms {
                let t = canon.step(q, s);
                if !co[t] {
                    continue;
                }
                let digits = canon.alphabet().digits_of(s);
                let prev = values.clone();
                let mut ok = true;
                for (v, d) in values.iter_mut().zip(digits.iter()) {
                    match v.checked_mul(base).and_then(|x| x.checked_add(*d as u64)) {
                        Some(x) => *v = x,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    go(canon, co, t, values, base, out);
                }
                *values = prev;
            }
        }
        if co[canon.initial()] {
            go(&canon, &co, canon.initial(), &mut values, base, &mut out);
        }
        out.sort();
        out.dedup();
        Some(out)
    }

    /// Accepted values below `bound`, in increasing order. Single track only.
    pub fn accepted_values_below(&self, bound: u64) -> Result<Vec<u64>> {
        if self.alphabet.tracks() != 1 {
            return Err(Error::Input(
                "value enumeration needs a single-track automaton".into(),
            ));
        }
        let k = self.alphabet.base() as u64;
        let mut out = Vec::new();
        if bound == 0 {
            return Ok(out);
        }
        if self.is_accepting(self.step(self.initial(), 0)) {
            out.push(0);
        }
        // Canonical words: nonzero first digit, then depth-first extension.
        let mut stack: Vec<(usize, u64)> = Vec::new();
        for d in (1..k).rev() {
            if d < bound {
                stack.push((self.step(self.initial(), d as usize), d));
            }
        }
        while let Some((q, value)) = stack.pop() {
            if self.is_accepting(q) {
                out.push(value);
            }
            for d in (0..k).rev() {
                if let Some(v) = value.checked_mul(k).and_then(|x| x.checked_add(d)) {
                    if v < bound {
                        stack.push((self.step(q, d as usize), v));
                    }
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Accepts canonical words: nonzero first column, or the single zero column.
fn canonical_marker(alphabet: DigitTupleAlphabet) -> Automaton {
    // 0 start, 1 inside a canonical word, 2 just the zero column, 3 dead
    let syms = alphabet.symbol_count();
    let mut transitions = Vec::with_capacity(4 * syms);
    transitions.extend((0..syms).map(|s| if s == 0 { 2u32 } else { 1 }));
    transitions.extend(std::iter::repeat_n(1, syms));
    transitions.extend(std::iter::repeat_n(3, 2 * syms));
    Automaton::from_flat(alphabet, 0, vec![false, true, true, false], transitions)
}
