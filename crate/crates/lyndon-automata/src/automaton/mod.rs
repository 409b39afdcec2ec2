//! Deterministic multi-track automata over tuples of base-k digits.
//!
//! A word over a [`DigitTupleAlphabet`] is a sequence of columns, each column
//! holding one digit per track, most significant digit first. A column word
//! therefore spells out a tuple of natural numbers, with shorter values padded
//! by leading zeros to a common length. All automata built by this crate keep
//! their language closed under prepending all-zero columns, so acceptance is a
//! property of the value tuple rather than of one particular representation.
//!
//! Automata here are always deterministic and complete; nondeterminism only
//! appears internally during projection and is removed by subset construction.

mod minimize;
mod subset;
pub(crate) mod text;
mod values;

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::numeration::tuple_columns;

pub use subset::Nfa;

/// Alphabet of `tracks`-tuples over the digits `0..base`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DigitTupleAlphabet {
    base: u32,
    tracks: usize,
}

/// Hard cap on alphabet size; k^m beyond this is unusable anyway.
const MAX_SYMBOLS: u128 = 1 << 24;

impl DigitTupleAlphabet {
    pub fn new(base: u32, tracks: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::Input(format!("base must be at least 2, got {base}")));
        }
        if tracks == 0 {
            return Err(Error::Input("alphabet needs at least one track".into()));
        }
        let count = (base as u128)
            .checked_pow(tracks as u32)
            .unwrap_or(u128::MAX);
        if count > MAX_SYMBOLS {
            return Err(Error::Input(format!(
                "alphabet too large: {base}^{tracks} symbols"
            )));
        }
        Ok(DigitTupleAlphabet { base, tracks })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn tracks(&self) -> usize {
        self.tracks
    }

    pub fn symbol_count(&self) -> usize {
        (self.base as u128).pow(self.tracks as u32) as usize
    }

    /// Decodes a symbol index into its digit tuple, track 0 first.
    pub fn digits_of(&self, symbol: usize) -> Vec<u32> {
        debug_assert!(symbol < self.symbol_count());
        let mut digits = vec![0u32; self.tracks];
        let mut rest = symbol;
        for t in (0..self.tracks).rev() {
            digits[t] = (rest % self.base as usize) as u32;
            rest /= self.base as usize;
        }
        digits
    }

    /// Encodes a digit tuple into its symbol index.
    pub fn symbol_of(&self, digits: &[u32]) -> Result<usize> {
        if digits.len() != self.tracks {
            return Err(Error::Input(format!(
                "expected {} digits, got {}",
                self.tracks,
                digits.len()
            )));
        }
        let mut symbol = 0usize;
        for &d in digits {
            if d >= self.base {
                return Err(Error::Input(format!(
                    "digit {d} out of range for base {}",
                    self.base
                )));
            }
            symbol = symbol * self.base as usize + d as usize;
        }
        Ok(symbol)
    }

    pub(crate) fn symbol_of_unchecked(&self, digits: &[u32]) -> usize {
        let mut symbol = 0usize;
        for &d in digits {
            symbol = symbol * self.base as usize + d as usize;
        }
        symbol
    }

    /// The all-zero column. Always symbol 0.
    pub fn zero_symbol(&self) -> usize {
        0
    }
}

/// Resource limits for constructions with potential blowup.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of states any single construction may create.
    pub max_states: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1_000_000,
        }
    }
}

/// Pointwise boolean combinations of two languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    And,
    Or,
    Xor,
    Implies,
}

impl BoolOp {
    fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::And => a && b,
            BoolOp::Or => a || b,
            BoolOp::Xor => a ^ b,
            BoolOp::Implies => !a || b,
        }
    }
}

/// A deterministic, complete automaton over digit-tuple columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    alphabet: DigitTupleAlphabet,
    initial: u32,
    accepting: Vec<bool>,
    /// Flattened transition table, `state * symbol_count + symbol`.
    transitions: Vec<u32>,
}

impl Automaton {
    /// Builds an automaton from explicit parts, validating totality.
    pub fn from_parts(
        alphabet: DigitTupleAlphabet,
        initial: usize,
        accepting: Vec<bool>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = accepting.len();
        if n == 0 {
            return Err(Error::Input("automaton needs at least one state".into()));
        }
        if initial >= n {
            return Err(Error::Input(format!("initial state {initial} out of range")));
        }
        let syms = alphabet.symbol_count();
        let mut flat = Vec::with_capacity(n * syms);
        if transitions.len() != n {
            return Err(Error::Input(format!(
                "expected {n} transition rows, got {}",
                transitions.len()
            )));
        }
        for row in &transitions {
            if row.len() != syms {
                return Err(Error::Input(format!(
                    "expected {syms} transitions per state, got {}",
                    row.len()
                )));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::Input(format!("transition target {t} out of range")));
                }
                flat.push(t as u32);
            }
        }
        Ok(Automaton {
            alphabet,
            initial: initial as u32,
            accepting,
            transitions: flat,
        })
    }

    pub(crate) fn from_flat(
        alphabet: DigitTupleAlphabet,
        initial: u32,
        accepting: Vec<bool>,
        transitions: Vec<u32>,
    ) -> Self {
        debug_assert_eq!(transitions.len(), accepting.len() * alphabet.symbol_count());
        Automaton {
            alphabet,
            initial,
            accepting,
            transitions,
        }
    }

    pub fn alphabet(&self) -> &DigitTupleAlphabet {
        &self.alphabet
    }

    pub fn n_states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial as usize
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    #[inline]
    pub fn step(&self, state: usize, symbol: usize) -> usize {
        self.transitions[state * self.alphabet.symbol_count() + symbol] as usize
    }

    /// Runs the automaton on a sequence of symbol indices.
    pub fn run_symbols(&self, word: &[usize]) -> bool {
        let mut q = self.initial as usize;
        for &s in word {
            q = self.step(q, s);
        }
        self.accepting[q]
    }

    /// Runs the automaton on a sequence of digit columns.
    pub fn run(&self, word: &[Vec<u32>]) -> Result<bool> {
        let mut q = self.initial as usize;
        for col in word {
            let s = self.alphabet.symbol_of(col)?;
            q = self.step(q, s);
        }
        Ok(self.accepting[q])
    }

    /// Tests whether the padded representation of a value tuple is accepted.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        if values.len() != self.alphabet.tracks() {
            return Err(Error::Input(format!(
                "expected {} values, got {}",
                self.alphabet.tracks(),
                values.len()
            )));
        }
        let cols = tuple_columns(values, self.alphabet.base());
        let word: Vec<usize> = cols
            .iter()
            .map(|c| self.alphabet.symbol_of_unchecked(c))
            .collect();
        Ok(self.run_symbols(&word))
    }

    /// Product construction realizing a pointwise boolean combination.
    /// Both inputs must share an alphabet. The result is minimized.
    pub fn boolean_combine(&self, other: &Automaton, op: BoolOp) -> Result<Automaton> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch(format!(
                "base {} x {} tracks vs base {} x {} tracks",
                self.alphabet.base(),
                self.alphabet.tracks(),
                other.alphabet.base(),
                other.alphabet.tracks()
            )));
        }
        let syms = self.alphabet.symbol_count();
        let mut index = std::collections::HashMap::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, other.initial);
        index.insert(start, 0u32);
        queue.push_back(start);
        let mut accepting = Vec::new();
        let mut transitions: Vec<u32> = Vec::new();
        accepting.push(
            op.apply(
                self.accepting[self.initial as usize],
                other.accepting[other.initial as usize],
            ),
        );
        while let Some((a, b)) = queue.pop_front() {
            for s in 0..syms {
                let na = self.transitions[a as usize * syms + s];
                let nb = other.transitions[b as usize * syms + s];
                let key = (na, nb);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = index.len() as u32;
                        index.insert(key, id);
                        queue.push_back(key);
                        accepting.push(op.apply(
                            self.accepting[na as usize],
                            other.accepting[nb as usize],
                        ));
                        id
                    }
                };
                transitions.push(id);
            }
        }
        let product = Automaton::from_flat(self.alphabet, 0, accepting, transitions);
        Ok(product.minimize())
    }

    /// Complements the language within the full column-word universe.
    pub fn negate(&self) -> Automaton {
        let mut out = self.clone();
        for a in &mut out.accepting {
            *a = !*a;
        }
        out.minimize()
    }

    /// Existential projection: removes one track, accepting a word when some
    /// digit string on the removed track (possibly longer than the remaining
    /// word, extending it by leading zero columns) completes it into the
    /// original language. The result is determinized and minimized.
    pub fn project(&self, track: usize) -> Result<Automaton> {
        self.project_with(track, &Limits::default())
    }

    pub fn project_with(&self, track: usize, limits: &Limits) -> Result<Automaton> {
        let m = self.alphabet.tracks();
        if m < 2 {
            return Err(Error::Input(
                "cannot project the only track of a single-track automaton".into(),
            ));
        }
        if track >= m {
            return Err(Error::Input(format!("track {track} out of range")));
        }
        let k = self.alphabet.base() as usize;
        let reduced = DigitTupleAlphabet::new(self.alphabet.base(), m - 1)?;
        let rsyms = reduced.symbol_count();

        // full_symbol[rs * k + e] = symbol with digit e inserted at `track`
        let mut full_symbol = vec![0usize; rsyms * k];
        for rs in 0..rsyms {
            let rdigits = reduced.digits_of(rs);
            let mut digits = Vec::with_capacity(m);
            digits.extend_from_slice(&rdigits[..track]);
            digits.push(0);
            digits.extend_from_slice(&rdigits[track..]);
            for e in 0..k {
                digits[track] = e as u32;
                full_symbol[rs * k + e] = self.alphabet.symbol_of_unchecked(&digits);
            }
        }

        // Initial set: closure of the initial state under columns that are
        // zero on every kept track. This both allows the removed track to be
        // longer than the kept ones and re-closes the language under leading
        // zero columns.
        let mut initial_set = vec![false; self.n_states()];
        let mut stack = vec![self.initial as usize];
        initial_set[self.initial as usize] = true;
        while let Some(q) = stack.pop() {
            for &sym in &full_symbol[..k] {
                let t = self.step(q, sym);
                if !initial_set[t] {
                    initial_set[t] = true;
                    stack.push(t);
                }
            }
        }
        let initial: Vec<u32> = (0..self.n_states() as u32)
            .filter(|&q| initial_set[q as usize])
            .collect();

        let nfa = Nfa {
            alphabet: reduced,
            n_states: self.n_states(),
            initial,
            accepting: self.accepting.clone(),
            moves: Box::new(move |state: usize, rsym: usize, out: &mut Vec<u32>| {
                let base = state * self.alphabet.symbol_count();
                for e in 0..k {
                    out.push(self.transitions[base + full_symbol[rsym * k + e]]);
                }
            }),
        };
        let dfa = subset::determinize(&nfa, limits, "projection")?;
        Ok(dfa.minimize())
    }

    /// The unique minimal complete automaton for the same language, with
    /// states renumbered in breadth-first order over ascending symbols.
    pub fn minimize(&self) -> Automaton {
        minimize::minimize(self)
    }

    /// Language equality, via minimization to canonical form.
    pub fn equivalent_to(&self, other: &Automaton) -> bool {
        if self.alphabet != other.alphabet {
            return false;
        }
        self.minimize() == other.minimize()
    }

    /// True when no accepting state is reachable.
    pub fn is_language_empty(&self) -> bool {
        let mut seen = vec![false; self.n_states()];
        let mut stack = vec![self.initial as usize];
        seen[self.initial as usize] = true;
        let syms = self.alphabet.symbol_count();
        while let Some(q) = stack.pop() {
            if self.accepting[q] {
                return false;
            }
            for s in 0..syms {
                let t = self.step(q, s);
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        true
    }

    /// Inserts a fresh track at `position`; the language becomes the cylinder
    /// over the new track (any digits allowed there).
    pub(crate) fn extend_with_track(&self, position: usize) -> Result<Automaton> {
        let m = self.alphabet.tracks();
        if position > m {
            return Err(Error::Input(format!("track position {position} out of range")));
        }
        let wide = DigitTupleAlphabet::new(self.alphabet.base(), m + 1)?;
        let wsyms = wide.symbol_count();
        let n = self.n_states();
        let mut transitions = Vec::with_capacity(n * wsyms);
        // Map each wide symbol to the narrow one with `position` removed.
        let narrow_of: Vec<usize> = (0..wsyms)
            .map(|ws| {
                let mut digits = wide.digits_of(ws);
                digits.remove(position);
                self.alphabet.symbol_of_unchecked(&digits)
            })
            .collect();
        let syms = self.alphabet.symbol_count();
        for q in 0..n {
            for &narrow in &narrow_of {
                transitions.push(self.transitions[q * syms + narrow]);
            }
        }
        Ok(Automaton::from_flat(
            wide,
            self.initial,
            self.accepting.clone(),
            transitions,
        ))
    }

    /// Reorders tracks: new track `t` reads what old track `perm[t]` read.
    pub(crate) fn permute_tracks(&self, perm: &[usize]) -> Result<Automaton> {
        let m = self.alphabet.tracks();
        if perm.len() != m {
            return Err(Error::Input("permutation length mismatch".into()));
        }
        let mut seen = vec![false; m];
        for &p in perm {
            if p >= m || seen[p] {
                return Err(Error::Input("invalid track permutation".into()));
            }
            seen[p] = true;
        }
        let syms = self.alphabet.symbol_count();
        let n = self.n_states();
        let mut symbol_map = vec![0usize; syms];
        for s in 0..syms {
            let digits = self.alphabet.digits_of(s);
            let new_digits: Vec<u32> = perm.iter().map(|&p| digits[p]).collect();
            // new symbol index `ns` reads new_digits; invert: transitions for
            // ns come from the old symbol whose digits are new_digits
            let ns = self.alphabet.symbol_of_unchecked(&new_digits);
            symbol_map[ns] = s;
        }
        let mut transitions = Vec::with_capacity(n * syms);
        for q in 0..n {
            for &old in &symbol_map {
                transitions.push(self.transitions[q * syms + old]);
            }
        }
        Ok(Automaton::from_flat(
            self.alphabet,
            self.initial,
            self.accepting.clone(),
            transitions,
        ))
    }

    /// Merges track `merge` into track `keep`: the reduced automaton reads the
    /// kept track's digit in both positions. Realizes variable identification.
    pub(crate) fn identify_tracks(&self, keep: usize, merge: usize) -> Result<Automaton> {
        let m = self.alphabet.tracks();
        if keep == merge || keep >= m || merge >= m {
            return Err(Error::Input("invalid track identification".into()));
        }
        let reduced = DigitTupleAlphabet::new(self.alphabet.base(), m - 1)?;
        let rsyms = reduced.symbol_count();
        let n = self.n_states();
        // Position of `keep` once `merge` is removed.
        let keep_reduced = if keep > merge { keep - 1 } else { keep };
        let wide_of: Vec<usize> = (0..rsyms)
            .map(|rs| {
                let rdigits = reduced.digits_of(rs);
                let mut full = Vec::with_capacity(m);
                full.extend_from_slice(&rdigits[..merge]);
                full.push(rdigits[keep_reduced]);
                full.extend_from_slice(&rdigits[merge..]);
                self.alphabet.symbol_of_unchecked(&full)
            })
            .collect();
        let syms = self.alphabet.symbol_count();
        let mut transitions = Vec::with_capacity(n * rsyms);
        for q in 0..n {
            for &wide in &wide_of {
                transitions.push(self.transitions[q * syms + wide]);
            }
        }
        Ok(Automaton::from_flat(
            reduced,
            self.initial,
            self.accepting.clone(),
            transitions,
        ))
    }

    /// States that can reach an accepting state.
    pub(crate) fn co_reachable(&self) -> Vec<bool> {
        let n = self.n_states();
        let syms = self.alphabet.symbol_count();
        // reverse adjacency
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for s in 0..syms {
                let t = self.transitions[q * syms + s] as usize;
                rev[t].push(q as u32);
            }
        }
        let mut co = vec![false; n];
        let mut stack: Vec<usize> = (0..n).filter(|&q| self.accepting[q]).collect();
        for &q in &stack {
            co[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !co[p as usize] {
                    co[p as usize] = true;
                    stack.push(p as usize);
                }
            }
        }
        co
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evens() -> Automaton {
        // one track, base 2, accepts words with an even number of 1 digits
        let alpha = DigitTupleAlphabet::new(2, 1).unwrap();
        Automaton::from_parts(alpha, 0, vec![true, false], vec![vec![0, 1], vec![1, 0]])
            .unwrap()
    }

    fn all_words(len: usize, syms: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for s in 0..syms {
                    let mut w2 = w.clone();
                    w2.push(s);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    #[test]
    fn alphabet_roundtrip() {
        let a = DigitTupleAlphabet::new(3, 2).unwrap();
        assert_eq!(a.symbol_count(), 9);
        for s in 0..9 {
            assert_eq!(a.symbol_of(&a.digits_of(s)).unwrap(), s);
        }
        assert!(DigitTupleAlphabet::new(1, 2).is_err());
    }

    #[test]
    fn xor_with_self_is_empty() {
        let a = evens();
        let x = a.boolean_combine(&a, BoolOp::Xor).unwrap();
        assert!(x.is_language_empty());
    }

    #[test]
    fn and_with_universe_is_identity() {
        let a = evens();
        let alpha = *a.alphabet();
        let universe =
            Automaton::from_parts(alpha, 0, vec![true], vec![vec![0, 0]]).unwrap();
        let combined = universe.boolean_combine(&a, BoolOp::And).unwrap();
        assert!(combined.equivalent_to(&a));
    }

    #[test]
    fn negate_is_involutive() {
        let a = evens();
        assert!(a.negate().negate().equivalent_to(&a));
        let alpha = *a.alphabet();
        let universe =
            Automaton::from_parts(alpha, 0, vec![true], vec![vec![0, 0]]).unwrap();
        assert!(universe.negate().is_language_empty());
    }

    #[test]
    fn boolean_ops_match_set_ops_exhaustively() {
        let a = evens();
        // ends in digit 1
        let alpha = DigitTupleAlphabet::new(2, 1).unwrap();
        let b = Automaton::from_parts(alpha, 0, vec![false, true], vec![vec![0, 1], vec![0, 1]])
            .unwrap();
        for len in 0..=8 {
            for w in all_words(len, 2) {
                let ra = a.run_symbols(&w);
                let rb = b.run_symbols(&w);
                for op in [BoolOp::And, BoolOp::Or, BoolOp::Xor, BoolOp::Implies] {
                    let c = a.boolean_combine(&b, op).unwrap();
                    assert_eq!(c.run_symbols(&w), op.apply(ra, rb));
                }
                assert_eq!(a.negate().run_symbols(&w), !ra);
            }
        }
    }

    #[test]
    fn minimize_preserves_language_and_is_idempotent() {
        let a = evens();
        // blow it up: product with itself via Or (same language)
        let inflated = a.boolean_combine(&a, BoolOp::Or).unwrap();
        let m = inflated.minimize();
        for len in 0..=10 {
            for w in all_words(len, 2) {
                assert_eq!(m.run_symbols(&w), a.run_symbols(&w));
            }
        }
        assert_eq!(m.minimize().n_states(), m.n_states());
        assert_eq!(m.minimize(), m);
    }

    #[test]
    fn project_empty_stays_empty() {
        let alpha = DigitTupleAlphabet::new(2, 2).unwrap();
        let empty = Automaton::from_parts(
            alpha,
            0,
            vec![false],
            vec![vec![0, 0, 0, 0]],
        )
        .unwrap();
        let p = empty.project(1).unwrap();
        assert!(p.is_language_empty());
    }

    #[test]
    fn project_single_track_errors() {
        let a = evens();
        assert!(a.project(0).is_err());
    }

    #[test]
    fn run_empty_word() {
        let a = evens();
        assert!(a.run_symbols(&[]));
        assert!(a.run(&[]).unwrap());
        assert!(a.run(&[vec![7]]).is_err());
    }
}
