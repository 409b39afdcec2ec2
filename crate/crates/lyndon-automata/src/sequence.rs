//! k-automatic sequences as deterministic automata with per-state outputs.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use crate::automaton::{Automaton, DigitTupleAlphabet};
use crate::error::{Error, Result};
use crate::numeration::encode;

/// Output letter of a sequence. Built-in sequences use `{0, 1}`; synthesized
/// counting automata use small counts. Letters compare in numeric order.
pub type Letter = u64;

/// A deterministic finite automaton with an output letter at every state,
/// defining the k-automatic sequence `x[n] = output after reading n in base k`.
///
/// Outputs are stable under leading zeros: every representation of `n` yields
/// the same letter. Constructors validate this.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDfao {
    base: u32,
    initial: u32,
    outputs: Vec<Letter>,
    /// Flattened, `state * base + digit`.
    transitions: Vec<u32>,
}

/// Names accepted by [`SequenceDfao::builtin`].
pub const BUILTIN_NAMES: [&str; 8] = ["t", "tbar", "r", "rbar", "p", "pbar", "d", "dbar"];

impl SequenceDfao {
    pub fn from_parts(
        base: u32,
        initial: usize,
        outputs: Vec<Letter>,
        transitions: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if base < 2 {
            return Err(Error::Input(format!("base must be at least 2, got {base}")));
        }
        let n = outputs.len();
        if n == 0 {
            return Err(Error::Input("sequence automaton needs a state".into()));
        }
        if initial >= n {
            return Err(Error::Input("initial state out of range".into()));
        }
        if transitions.len() != n {
            return Err(Error::Input("one transition row per state required".into()));
        }
        let mut flat = Vec::with_capacity(n * base as usize);
        for row in &transitions {
            if row.len() != base as usize {
                return Err(Error::Input(format!(
                    "expected {base} transitions per state"
                )));
            }
            for &t in row {
                if t >= n {
                    return Err(Error::Input("transition target out of range".into()));
                }
                flat.push(t as u32);
            }
        }
        let dfao = SequenceDfao {
            base,
            initial: initial as u32,
            outputs,
            transitions: flat,
        };
        dfao.check_zero_stability()?;
        Ok(dfao)
    }

    /// Leading zeros must not change any output: in the minimized automaton
    /// the zero transition from the initial state must be a self loop.
    fn check_zero_stability(&self) -> Result<()> {
        let m = self.minimized();
        if m.step(m.initial as usize, 0) != m.initial as usize {
            return Err(Error::Input(
                "sequence automaton output is not stable under leading zeros".into(),
            ));
        }
        Ok(())
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn n_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial as usize
    }

    pub fn output(&self, state: usize) -> Letter {
        self.outputs[state]
    }

    #[inline]
    pub fn step(&self, state: usize, digit: usize) -> usize {
        self.transitions[state * self.base as usize + digit] as usize
    }

    /// The letter at position `n`.
    pub fn letter_at(&self, n: u64) -> Letter {
        let mut q = self.initial as usize;
        for d in encode(n, self.base) {
            q = self.step(q, d as usize);
        }
        self.outputs[q]
    }

    /// The first `len` letters.
    pub fn prefix(&self, len: usize) -> Vec<Letter> {
        (0..len as u64).map(|n| self.letter_at(n)).collect()
    }

    /// Distinct output letters, ascending.
    pub fn output_alphabet(&self) -> Vec<Letter> {
        let mut letters = self.outputs.clone();
        letters.sort_unstable();
        letters.dedup();
        letters
    }

    /// Swaps the letters 0 and 1. Only defined for sequences over `{0, 1}`.
    pub fn negated(&self) -> Result<SequenceDfao> {
        if self.outputs.iter().any(|&o| o > 1) {
            return Err(Error::Input(
                "negation is only defined for sequences over {0, 1}".into(),
            ));
        }
        let mut out = self.clone();
        for o in &mut out.outputs {
            *o = 1 - *o;
        }
        Ok(out)
    }

    /// Single-track automaton accepting exactly the `n` with `x[n] = letter`.
    pub fn letter_acceptor(&self, letter: Letter) -> Automaton {
        let alpha = DigitTupleAlphabet::new(self.base, 1).expect("valid base");
        let accepting = self.outputs.iter().map(|&o| o == letter).collect();
        Automaton::from_flat(alpha, self.initial, accepting, self.transitions.clone())
            .minimize()
    }

    /// Reinterprets a zero-closed acceptor as a 0/1-valued sequence.
    pub fn from_acceptor(a: &Automaton) -> Result<SequenceDfao> {
        if a.alphabet().tracks() != 1 {
            return Err(Error::Input(
                "sequence automata are single track".into(),
            ));
        }
        let a = a.minimize();
        let base = a.alphabet().base();
        let outputs = (0..a.n_states())
            .map(|q| Letter::from(a.is_accepting(q)))
            .collect();
        let transitions = (0..a.n_states())
            .map(|q| (0..base as usize).map(|d| a.step(q, d)).collect())
            .collect();
        SequenceDfao::from_parts(base, a.initial(), outputs, transitions)
    }

    /// Minimization with outputs as the initial partition.
    pub fn minimized(&self) -> SequenceDfao {
        let k = self.base as usize;
        let n = self.n_states();

        // reachable part
        let mut reach_id = vec![u32::MAX; n];
        let mut order = vec![self.initial];
        reach_id[self.initial as usize] = 0;
        let mut head = 0;
        while head < order.len() {
            let q = order[head] as usize;
            head += 1;
            for d in 0..k {
                let t = self.transitions[q * k + d];
                if reach_id[t as usize] == u32::MAX {
                    reach_id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
        }
        let rn = order.len();

        // refine by (output, successor classes)
        let mut letter_class: HashMap<Letter, u32> = HashMap::new();
        let mut class: Vec<u32> = order
            .iter()
            .map(|&q| {
                let fresh = letter_class.len() as u32;
                *letter_class.entry(self.outputs[q as usize]).or_insert(fresh)
            })
            .collect();
        let mut n_classes = letter_class.len();
        loop {
            let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = vec![0u32; rn];
            for i in 0..rn {
                let q = order[i] as usize;
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[i]);
                for d in 0..k {
                    let t = self.transitions[q * k + d] as usize;
                    sig.push(class[reach_id[t] as usize]);
                }
                let fresh = table.len() as u32;
                next[i] = *table.entry(sig).or_insert(fresh);
            }
            let count = table.len();
            class = next;
            if count == n_classes {
                break;
            }
            n_classes = count;
        }

        // canonical BFS order
        let mut repr = vec![u32::MAX; n_classes];
        for i in 0..rn {
            if repr[class[i] as usize] == u32::MAX {
                repr[class[i] as usize] = order[i];
            }
        }
        let mut canon = vec![u32::MAX; n_classes];
        let mut canon_order = vec![class[0]];
        canon[class[0] as usize] = 0;
        let mut head = 0;
        let mut outputs = Vec::with_capacity(n_classes);
        let mut transitions = Vec::with_capacity(n_classes * k);
        while head < canon_order.len() {
            let c = canon_order[head] as usize;
            head += 1;
            let q = repr[c] as usize;
            outputs.push(self.outputs[q]);
            for d in 0..k {
                let t = self.transitions[q * k + d] as usize;
                let tc = class[reach_id[t] as usize];
                if canon[tc as usize] == u32::MAX {
                    canon[tc as usize] = canon_order.len() as u32;
                    canon_order.push(tc);
                }
                transitions.push(canon[tc as usize]);
            }
        }
        SequenceDfao {
            base: self.base,
            initial: 0,
            outputs,
            transitions,
        }
    }

    /// A built-in binary sequence by name; see [`BUILTIN_NAMES`].
    ///
    /// `t` counts ones in the binary expansion mod 2, `r` counts occurrences
    /// of `11` mod 2, `p` folds paper, `d` marks positions where consecutive
    /// letters of `t` differ. A trailing `bar` swaps the letters 0 and 1.
    pub fn builtin(name: &str) -> Result<Arc<SequenceDfao>> {
        static CACHE: OnceLock<HashMap<&'static str, Arc<SequenceDfao>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| {
            let t = Arc::new(thue_morse());
            let r = Arc::new(rudin_shapiro());
            let p = Arc::new(paperfolding());
            let d = Arc::new(period_doubling(&t));
            let mut map: HashMap<&'static str, Arc<SequenceDfao>> = HashMap::new();
            map.insert("tbar", Arc::new(t.negated().unwrap()));
            map.insert("rbar", Arc::new(r.negated().unwrap()));
            map.insert("pbar", Arc::new(p.negated().unwrap()));
            map.insert("dbar", Arc::new(d.negated().unwrap()));
            map.insert("t", t);
            map.insert("r", r);
            map.insert("p", p);
            map.insert("d", d);
            map
        });
        cache
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnknownSequence(name.to_string()))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "base {} tracks 1", self.base).unwrap();
        writeln!(out, "initial {}", self.initial).unwrap();
        for q in 0..self.n_states() {
            writeln!(out, "state {q} accepting 0").unwrap();
            for d in 0..self.base as usize {
                writeln!(out, "{} -> {}", d, self.step(q, d)).unwrap();
            }
        }
        for q in 0..self.n_states() {
            writeln!(out, "output {q} {}", self.outputs[q]).unwrap();
        }
        out
    }

    /// Parses the automaton text format followed by one `output <id> <letter>`
    /// line per state.
    pub fn from_text(text: &str) -> Result<SequenceDfao> {
        let (automaton, rest) = crate::automaton::text::parse_automaton(text)?;
        if automaton.alphabet().tracks() != 1 {
            return Err(Error::TextFormat("sequence automata are single track".into()));
        }
        let n = automaton.n_states();
        let mut outputs: Vec<Option<Letter>> = vec![None; n];
        for line in rest {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 || parts[0] != "output" {
                return Err(Error::TextFormat(format!("unexpected line `{line}`")));
            }
            let id: usize = parts[1]
                .parse()
                .map_err(|_| Error::TextFormat(format!("bad state id `{}`", parts[1])))?;
            let letter: Letter = parts[2]
                .parse()
                .map_err(|_| Error::TextFormat(format!("bad letter `{}`", parts[2])))?;
            if id >= n {
                return Err(Error::TextFormat(format!("output for unknown state {id}")));
            }
            if outputs[id].replace(letter).is_some() {
                return Err(Error::TextFormat(format!("duplicate output for state {id}")));
            }
        }
        let outputs: Vec<Letter> = outputs
            .into_iter()
            .enumerate()
            .map(|(q, o)| o.ok_or_else(|| Error::TextFormat(format!("state {q} has no output"))))
            .collect::<Result<_>>()?;
        let base = automaton.alphabet().base();
        let transitions = (0..n)
            .map(|q| (0..base as usize).map(|d| automaton.step(q, d)).collect())
            .collect();
        SequenceDfao::from_parts(base, automaton.initial(), outputs, transitions)
    }
}

/// Parity of the number of 1 digits.
fn thue_morse() -> SequenceDfao {
    SequenceDfao::from_parts(2, 0, vec![0, 1], vec![vec![0, 1], vec![1, 0]])
        .expect("valid automaton")
}

/// Parity of the number of (possibly overlapping) `11` blocks in the binary
/// expansion. State = (parity, last digit).
fn rudin_shapiro() -> SequenceDfao {
    // ids: 2*parity + last
    let mut transitions = Vec::new();
    let mut outputs = Vec::new();
    for parity in 0..2usize {
        for last in 0..2usize {
            let on0 = 2 * parity;
            let on1 = 2 * (parity ^ (last & 1)) + 1;
            transitions.push(vec![on0, on1]);
            outputs.push(parity as Letter);
        }
    }
    SequenceDfao::from_parts(2, 0, outputs, transitions).expect("valid automaton")
}

/// Regular paperfolding sequence: the letter is the digit just above the
/// lowest 0 bit. State = (previous digit, answer so far).
fn paperfolding() -> SequenceDfao {
    // ids: 2*prev + ans; on 0: (0, prev); on 1: (1, ans)
    let mut transitions = Vec::new();
    let mut outputs = Vec::new();
    for prev in 0..2usize {
        for ans in 0..2usize {
            transitions.push(vec![prev, 2 + ans]);
            outputs.push(ans as Letter);
        }
    }
    SequenceDfao::from_parts(2, 0, outputs, transitions).expect("valid automaton")
}

/// Marks the positions where t changes: d[n] = 1 iff t[n] != t[n+1]. Built by
/// compiling that predicate rather than by hand.
fn period_doubling(t: &SequenceDfao) -> SequenceDfao {
    let mut session = crate::predicate::Session::new(2);
    session
        .register_sequence("t", Arc::new(t.clone()))
        .expect("fresh registry");
    let compiled = session
        .compile_str("E m (m = n + 1 & t[n] != t[m])")
        .expect("fixed predicate compiles");
    SequenceDfao::from_acceptor(compiled.automaton()).expect("zero-closed acceptor")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn popcount_parity(n: u64) -> Letter {
        (n.count_ones() % 2) as Letter
    }

    #[test]
    fn thue_morse_letters() {
        let t = SequenceDfao::builtin("t").unwrap();
        assert_eq!(t.prefix(8), vec![0, 1, 1, 0, 1, 0, 0, 1]);
        assert_eq!(t.letter_at(0), 0);
        assert_eq!(t.letter_at(3), 0);
        for n in 0..10_000 {
            assert_eq!(t.letter_at(n), popcount_parity(n));
        }
    }

    #[test]
    fn thue_morse_is_morphism_fixed_point() {
        let t = SequenceDfao::builtin("t").unwrap();
        let prefix = t.prefix(1 << 12);
        let mut image = Vec::with_capacity(prefix.len());
        for &a in &prefix[..prefix.len() / 2] {
            if a == 0 {
                image.extend_from_slice(&[0, 1]);
            } else {
                image.extend_from_slice(&[1, 0]);
            }
        }
        assert_eq!(image, prefix);
    }

    #[test]
    fn rudin_shapiro_letters() {
        let r = SequenceDfao::builtin("r").unwrap();
        assert_eq!(r.letter_at(3), 1);
        let count11 = |n: u64| {
            let digits = encode(n, 2);
            digits.windows(2).filter(|w| w == &[1, 1]).count() as Letter % 2
        };
        for n in 0..10_000 {
            assert_eq!(r.letter_at(n), count11(n), "n = {n}");
        }
    }

    #[test]
    fn paperfolding_prefix_and_dilations() {
        let p = SequenceDfao::builtin("p").unwrap();
        assert_eq!(p.prefix(7), vec![0, 0, 1, 0, 0, 1, 1]);
        for n in 0..1000u64 {
            assert_eq!(p.letter_at(4 * n), 0);
            assert_eq!(p.letter_at(4 * n + 2), 1);
            assert_eq!(p.letter_at(2 * n + 1), p.letter_at(n));
        }
    }

    #[test]
    fn paperfolding_unfolds() {
        // f_{i+1} = f_i 0 reverse(complement(f_i))
        let p = SequenceDfao::builtin("p").unwrap();
        let mut f = vec![0 as Letter];
        for _ in 0..9 {
            let mut next = f.clone();
            next.push(0);
            next.extend(f.iter().rev().map(|&a| 1 - a));
            f = next;
        }
        assert_eq!(f, p.prefix(f.len()));
    }

    #[test]
    fn period_doubling_matches_difference_of_t() {
        let t = SequenceDfao::builtin("t").unwrap();
        let d = SequenceDfao::builtin("d").unwrap();
        assert_eq!(d.prefix(5), vec![1, 0, 1, 1, 1]);
        for n in 0..10_000u64 {
            let expected = u64::from(t.letter_at(n) != t.letter_at(n + 1));
            assert_eq!(d.letter_at(n), expected, "n = {n}");
        }
    }

    #[test]
    fn negation_swaps_letters() {
        let t = SequenceDfao::builtin("t").unwrap();
        let tbar = SequenceDfao::builtin("tbar").unwrap();
        for n in 0..512 {
            assert_eq!(tbar.letter_at(n), 1 - t.letter_at(n));
        }
    }

    #[test]
    fn leading_zeros_do_not_change_outputs() {
        for name in BUILTIN_NAMES {
            let seq = SequenceDfao::builtin(name).unwrap();
            for n in 0..10_000u64 {
                let mut digits = encode(n, 2);
                let expected = seq.letter_at(n);
                for _ in 0..3 {
                    digits.insert(0, 0);
                    let mut q = seq.initial();
                    for &d in &digits {
                        q = seq.step(q, d as usize);
                    }
                    assert_eq!(seq.output(q), expected);
                }
            }
        }
    }

    #[test]
    fn prefix_agrees_with_letter_at() {
        let r = SequenceDfao::builtin("r").unwrap();
        let prefix = r.prefix(100);
        for (n, &a) in prefix.iter().enumerate() {
            assert_eq!(a, r.letter_at(n as u64));
        }
        assert_eq!(r.prefix(0), Vec::<Letter>::new());
    }

    #[test]
    fn text_roundtrip() {
        let d = SequenceDfao::builtin("d").unwrap();
        let text = d.to_text();
        let back = SequenceDfao::from_text(&text).unwrap();
        assert_eq!(*d, back);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn unknown_name_errors() {
        assert!(matches!(
            SequenceDfao::builtin("nope"),
            Err(Error::UnknownSequence(_))
        ));
    }

    #[test]
    fn letter_acceptor_matches_letters() {
        let t = SequenceDfao::builtin("t").unwrap();
        let ones = t.letter_acceptor(1);
        for n in 0..512u64 {
            assert_eq!(ones.accepts_values(&[n]).unwrap(), t.letter_at(n) == 1);
        }
    }
}
