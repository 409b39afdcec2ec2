//! The Lyndon factorization of an automatic sequence, encoded as automata.
//!
//! The infinite factorization is carried by a single-track marker automaton
//! accepting exactly the positions where a new term starts. Prefix and factor
//! factorizations are carried by last-term automata over `(n, i)` and
//! `(i, j, l)` respectively.

use crate::automaton::{Automaton, Limits};
use crate::error::{Error, Result};
use crate::numeration::encode;
use crate::occurrence::Occurrence;
use crate::oracle;
use crate::predicate::builtins;
use crate::sequence::SequenceDfao;

/// The Lyndon factorization of an infinite word, as an automaton over
/// term-start positions plus the finiteness verdict.
#[derive(Debug, Clone)]
pub struct FactorizationEncoding {
    marker: Automaton,
    finite: bool,
    terms_if_finite: Option<Vec<Occurrence>>,
}

impl FactorizationEncoding {
    /// Builds the encoding: a position starts a term when some `j` makes
    /// `[i..j]` a factorization term, or when the suffix at `i` is an
    /// infinite Lyndon word (the final ray of a finite factorization).
    pub fn compute(seq: &SequenceDfao, limits: &Limits) -> Result<FactorizationEncoding> {
        let lf = builtins::factorization_term(seq, limits)?;
        let finite_terms = lf.exists("j", limits)?;
        let linf = builtins::lyndon_inf(seq, limits)?;
        let marker = finite_terms.or(&linf)?.into_automaton();

        let finite = marker.is_value_language_finite();
        let terms_if_finite = if finite {
            let starts: Vec<u64> = marker
                .accepted_value_tuples()
                .expect("finite by the check above")
                .into_iter()
                .map(|t| t[0])
                .collect();
            debug_assert!(starts.first() == Some(&0), "position 0 must start a term");
            let mut terms = Vec::with_capacity(starts.len());
            for pair in starts.windows(2) {
                terms.push(Occurrence::new(pair[0], pair[1] - 1));
            }
            let ray_start = *starts.last().expect("at least the start at 0");
            debug_assert!(
                linf.satisfies(&[ray_start]).unwrap_or(false),
                "the last start must open an infinite Lyndon suffix"
            );
            terms.push(Occurrence::ray(ray_start));
            Some(terms)
        } else {
            None
        };

        Ok(FactorizationEncoding {
            marker,
            finite,
            terms_if_finite,
        })
    }

    /// The single-track automaton accepting term-start positions.
    pub fn marker_automaton(&self) -> &Automaton {
        &self.marker
    }

    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// The full term list when the factorization is finite; the last entry is
    /// the infinite ray.
    pub fn terms_if_finite(&self) -> Option<&[Occurrence]> {
        self.terms_if_finite.as_deref()
    }

    /// The 0/1 encoding word: bit `n` is 1 exactly when a term starts at `n`.
    pub fn marker_bits(&self, len: usize) -> Vec<bool> {
        (0..len as u64)
            .map(|n| self.marker.accepts_values(&[n]).expect("single track"))
            .collect()
    }

    /// Term starts below `bound`, ascending.
    pub fn term_starts_below(&self, bound: u64) -> Vec<u64> {
        self.marker
            .accepted_values_below(bound)
            .expect("single track")
    }

    /// Checks the markers in `[0, n)` against Duval's factorization: at every
    /// marker position `m` the pieces cut so far must be exactly the Lyndon
    /// factorization of `x[0..m-1]` (hence nonincreasing Lyndon words).
    pub fn prefix_check(&self, seq: &SequenceDfao, n: u64) -> bool {
        let markers = self.term_starts_below(n);
        if markers.first() != Some(&0) {
            return false;
        }
        let prefix = seq.prefix(n as usize);
        for (t, &m) in markers.iter().enumerate().skip(1) {
            let terms = match oracle::duval_factorization(&prefix[..m as usize]) {
                Ok(terms) => terms,
                Err(_) => return false,
            };
            let mut starts = Vec::with_capacity(terms.len());
            let mut at = 0u64;
            for term in &terms {
                starts.push(at);
                at += term.len() as u64;
            }
            if starts != markers[..t] {
                return false;
            }
        }
        true
    }
}

/// Answers last-term queries for prefixes `x[0..n-1]` and unwinds them into
/// complete prefix factorizations.
#[derive(Debug, Clone)]
pub struct PrefixFactorizer {
    /// Over `(n, i)`: the last factorization term of `x[0..n-1]` is `x[i..n-1]`.
    automaton: Automaton,
}

impl PrefixFactorizer {
    pub fn new(seq: &SequenceDfao, limits: &Limits) -> Result<PrefixFactorizer> {
        let pred = builtins::prefix_last_term(seq, limits)?;
        Ok(PrefixFactorizer {
            automaton: pred.into_automaton(),
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    /// The unique `i` with `x[i..n-1]` the last term of the factorization of
    /// `x[0..n-1]`.
    pub fn last_term_start(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Err(Error::Input("the empty prefix has no last term".into()));
        }
        let candidates = partners_with_first(&self.automaton, n);
        match candidates.as_slice() {
            [i] => Ok(*i),
            other => Err(Error::Input(format!(
                "expected exactly one last-term start for n = {n}, found {}",
                other.len()
            ))),
        }
    }

    /// The full Lyndon factorization of `x[0..n-1]`, obtained by repeatedly
    /// replacing `n` with the last term's start.
    pub fn factorization(&self, n: u64) -> Result<Vec<Occurrence>> {
        if n == 0 {
            return Err(Error::Input("the empty prefix has no factorization".into()));
        }
        let mut terms = Vec::new();
        let mut end = n;
        while end > 0 {
            let i = self.last_term_start(end)?;
            terms.push(Occurrence::new(i, end - 1));
            end = i;
        }
        terms.reverse();
        Ok(terms)
    }
}

/// Over `(i, j, l)`: the Lyndon factorization of `x[i..j-1]` ends with the
/// term `x[l..j-1]`.
pub fn factor_last_term_automaton(seq: &SequenceDfao, limits: &Limits) -> Result<Automaton> {
    Ok(builtins::factor_last_term(seq, limits)?.into_automaton())
}

/// Second-track values accepted together with `first`, using representations
/// of the first value's canonical length (partners can only be smaller here).
fn partners_with_first(a: &Automaton, first: u64) -> Vec<u64> {
    debug_assert_eq!(a.alphabet().tracks(), 2);
    let k = a.alphabet().base() as u64;
    let digits = encode(first, a.alphabet().base());
    let mut out = Vec::new();
    let mut stack: Vec<(usize, usize, u64)> = vec![(0, a.initial(), 0)];
    while let Some((pos, state, value)) = stack.pop() {
        if pos == digits.len() {
            if a.is_accepting(state) {
                out.push(value);
            }
            continue;
        }
        for e in (0..k).rev() {
            let sym = a
                .alphabet()
                .symbol_of_unchecked(&[digits[pos], e as u32]);
            stack.push((pos + 1, a.step(state, sym), value * k + e));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::sequence::SequenceDfao;

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn thue_morse_marker_prefix() {
        let t = SequenceDfao::builtin("t").unwrap();
        let enc = FactorizationEncoding::compute(&t, &limits()).unwrap();
        let bits: String = enc
            .marker_bits(18)
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        assert_eq!(bits, "100101000100000001");
        assert!(!enc.is_finite());
        assert_eq!(enc.term_starts_below(40), vec![0, 3, 5, 9, 17, 33]);
    }

    #[test]
    fn negated_thue_morse_is_finite() {
        let tbar = SequenceDfao::builtin("tbar").unwrap();
        let enc = FactorizationEncoding::compute(&tbar, &limits()).unwrap();
        assert!(enc.is_finite());
        let terms = enc.terms_if_finite().unwrap();
        assert_eq!(terms, &[Occurrence::new(0, 0), Occurrence::ray(1)]);
    }

    #[test]
    fn period_doubling_starts() {
        let d = SequenceDfao::builtin("d").unwrap();
        let enc = FactorizationEncoding::compute(&d, &limits()).unwrap();
        assert!(!enc.is_finite());
        assert_eq!(enc.term_starts_below(100), vec![0, 1, 5, 21, 85]);
    }

    #[test]
    fn prefix_checks_pass() {
        for (name, n) in [("t", 18u64), ("rbar", 47), ("p", 31)] {
            let seq = SequenceDfao::builtin(name).unwrap();
            let enc = FactorizationEncoding::compute(&seq, &limits()).unwrap();
            assert!(enc.prefix_check(&seq, n), "{name} up to {n}");
        }
    }

    #[test]
    fn prefix_last_term_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pf = PrefixFactorizer::new(&t, &limits()).unwrap();
        assert_eq!(pf.last_term_start(4).unwrap(), 3);
        assert_eq!(pf.last_term_start(3).unwrap(), 0);
        assert_eq!(pf.last_term_start(1).unwrap(), 0);
    }

    #[test]
    fn prefix_factorization_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pf = PrefixFactorizer::new(&t, &limits()).unwrap();
        assert_eq!(
            pf.factorization(4).unwrap(),
            vec![Occurrence::new(0, 2), Occurrence::new(3, 3)]
        );
        assert_eq!(
            pf.factorization(8).unwrap(),
            vec![
                Occurrence::new(0, 2),
                Occurrence::new(3, 4),
                Occurrence::new(5, 7)
            ]
        );
        assert_eq!(pf.factorization(1).unwrap(), vec![Occurrence::new(0, 0)]);
    }

    #[test]
    fn prefix_factorization_matches_duval() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pf = PrefixFactorizer::new(&t, &limits()).unwrap();
        let prefix = t.prefix(128);
        for n in 1..=128u64 {
            let expected = oracle::duval_factorization(&prefix[..n as usize]).unwrap();
            let got = pf.factorization(n).unwrap();
            assert_eq!(got.len(), expected.len(), "n = {n}");
            let mut at = 0u64;
            for (occ, term) in got.iter().zip(expected.iter()) {
                assert_eq!(occ.start, at);
                assert_eq!(occ.len(), Some(term.len() as u64));
                at += term.len() as u64;
            }
        }
    }

    #[test]
    fn factor_last_term_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let flt = factor_last_term_automaton(&t, &limits()).unwrap();
        // least suffix of t[0..3] = 0110 starts at 3
        assert!(flt.accepts_values(&[0, 4, 3]).unwrap());
        assert!(!flt.accepts_values(&[0, 4, 2]).unwrap());
        // suffixes of t[1..3] = 110: the least is 0 at position 3
        assert!(flt.accepts_values(&[1, 4, 3]).unwrap());
        // a single letter is its own last term
        assert!(flt.accepts_values(&[5, 6, 5]).unwrap());
    }

    #[test]
    fn factor_last_term_matches_oracle() {
        let t = SequenceDfao::builtin("t").unwrap();
        let flt = factor_last_term_automaton(&t, &limits()).unwrap();
        let prefix = t.prefix(40);
        for i in 0..24u64 {
            for j in i + 1..=32u64 {
                let word = &prefix[i as usize..j as usize];
                let least = i + oracle::least_suffix(word).unwrap() as u64;
                for l in i..j {
                    assert_eq!(
                        flt.accepts_values(&[i, j, l]).unwrap(),
                        l == least,
                        "(i={i}, j={j}, l={l})"
                    );
                }
            }
        }
    }
}
