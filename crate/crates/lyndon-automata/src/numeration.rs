//! Base-k encodings of natural numbers and the primitive relation automata
//! (equality, order, addition) everything else is compiled from.
//!
//! Representations are most-significant-digit-first. The canonical encoding
//! has no leading zeros, except that 0 is the single digit 0. Multi-track
//! words pad shorter values with leading zeros to a common length.

use crate::automaton::{Automaton, DigitTupleAlphabet};
use crate::error::{Error, Result};

/// Canonical msd-first digits of `n`.
pub fn encode(n: u64, base: u32) -> Vec<u32> {
    assert!(base >= 2, "base must be at least 2");
    if n == 0 {
        return vec![0];
    }
    let k = base as u64;
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push((rest % k) as u32);
        rest /= k;
    }
    digits.reverse();
    digits
}

/// Digits of `n` left-padded with zeros to `width`.
pub fn encode_width(n: u64, base: u32, width: usize) -> Result<Vec<u32>> {
    let mut digits = encode(n, base);
    if digits.len() > width {
        return Err(Error::Input(format!(
            "width {width} too small for {n} in base {base}"
        )));
    }
    let mut out = vec![0; width - digits.len()];
    out.append(&mut digits);
    Ok(out)
}

/// Value of msd-first digits, if it fits in a u64.
pub fn decode(digits: &[u32], base: u32) -> Option<u64> {
    let k = base as u64;
    let mut n: u64 = 0;
    for &d in digits {
        n = n.checked_mul(k)?.checked_add(d as u64)?;
    }
    Some(n)
}

/// Columns of the padded representation of a value tuple: one entry per
/// position, each holding the digit of every track.
pub fn tuple_columns(values: &[u64], base: u32) -> Vec<Vec<u32>> {
    let encs: Vec<Vec<u32>> = values.iter().map(|&v| encode(v, base)).collect();
    let width = encs.iter().map(|e| e.len()).max().unwrap_or(1);
    let mut cols = Vec::with_capacity(width);
    for pos in 0..width {
        let col = encs
            .iter()
            .map(|e| {
                let pad = width - e.len();
                if pos < pad {
                    0
                } else {
                    e[pos - pad]
                }
            })
            .collect();
        cols.push(col);
    }
    cols
}

/// Order relations realized by [`comparator_automaton`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpRel {
    Eq,
    Lt,
    Le,
}

/// Two-track automaton accepting padded pairs `(a, b)` with `a rel b`.
pub fn comparator_automaton(base: u32, rel: CmpRel) -> Result<Automaton> {
    let alpha = DigitTupleAlphabet::new(base, 2)?;
    let syms = alpha.symbol_count();
    // 0: equal so far, 1: first < second, 2: first > second
    let mut transitions = Vec::with_capacity(3 * syms);
    for s in 0..syms {
        let d = alpha.digits_of(s);
        transitions.push(match d[0].cmp(&d[1]) {
            std::cmp::Ordering::Equal => 0u32,
            std::cmp::Ordering::Less => 1,
            std::cmp::Ordering::Greater => 2,
        });
    }
    transitions.extend(std::iter::repeat_n(1, syms));
    transitions.extend(std::iter::repeat_n(2, syms));
    let accepting = match rel {
        CmpRel::Eq => vec![true, false, false],
        CmpRel::Lt => vec![false, true, false],
        CmpRel::Le => vec![true, true, false],
    };
    Ok(Automaton::from_flat(alpha, 0, accepting, transitions).minimize())
}

/// Three-track automaton accepting padded triples `(a, b, c)` with a+b=c.
///
/// Reading msd-first, the state tracks the carry still owed by the unread
/// suffix: after a prefix with values A, B, C it is C - A - B, which must
/// stay in {0, 1}.
pub fn adder_automaton(base: u32) -> Result<Automaton> {
    let alpha = DigitTupleAlphabet::new(base, 3)?;
    let syms = alpha.symbol_count();
    let k = base as i64;
    // 0: carry 0 (accepting), 1: carry 1, 2: dead
    let mut transitions = Vec::with_capacity(3 * syms);
    for q in 0..2i64 {
        for s in 0..syms {
            let d = alpha.digits_of(s);
            let next = k * q + d[2] as i64 - d[0] as i64 - d[1] as i64;
            transitions.push(if next == 0 || next == 1 { next as u32 } else { 2 });
        }
    }
    transitions.extend(std::iter::repeat_n(2, syms));
    Ok(Automaton::from_flat(alpha, 0, vec![true, false, false], transitions).minimize())
}

/// Single-track automaton accepting every representation of the constant `c`.
pub fn const_automaton(base: u32, c: u64) -> Result<Automaton> {
    let alpha = DigitTupleAlphabet::new(base, 1)?;
    let k = base as usize;
    if c == 0 {
        // 0* : loop on digit zero, anything else is dead
        let mut transitions = Vec::with_capacity(2 * k);
        transitions.extend((0..k).map(|d| if d == 0 { 0u32 } else { 1 }));
        transitions.extend(std::iter::repeat_n(1, k));
        return Ok(Automaton::from_flat(alpha, 0, vec![true, false], transitions));
    }
    let digits = encode(c, base);
    let len = digits.len();
    // states: 0 = leading zeros, 1..=len = progress, len+1 = dead
    let n = len + 2;
    let dead = (len + 1) as u32;
    let mut transitions = Vec::with_capacity(n * k);
    for d in 0..k as u32 {
        if d == 0 {
            transitions.push(0);
        } else if d == digits[0] {
            transitions.push(1);
        } else {
            transitions.push(dead);
        }
    }
    for (pos, &expected) in digits.iter().enumerate().skip(1) {
        for d in 0..k as u32 {
            transitions.push(if d == expected { (pos + 1) as u32 } else { dead });
        }
    }
    // the full-match state and the dead state reject every extension
    transitions.extend(std::iter::repeat_n(dead, 2 * k));
    let mut accepting = vec![false; n];
    accepting[len] = true;
    Ok(Automaton::from_flat(alpha, 0, accepting, transitions).minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::BoolOp;

    #[test]
    fn encode_examples() {
        assert_eq!(encode(0, 2), vec![0]);
        assert_eq!(encode(18, 2), vec![1, 0, 0, 1, 0]);
        assert_eq!(encode_width(5, 2, 8).unwrap(), vec![0, 0, 0, 0, 0, 1, 0, 1]);
        assert!(encode_width(18, 2, 3).is_err());
        for n in 0..2000 {
            assert_eq!(decode(&encode(n, 2), 2), Some(n));
            assert_eq!(decode(&encode(n, 3), 3), Some(n));
        }
    }

    #[test]
    fn encode_is_monotone_in_length_then_lex() {
        let mut prev = encode(0, 2);
        for n in 1..512u64 {
            let cur = encode(n, 2);
            assert!(
                (prev.len(), prev.clone()) < (cur.len(), cur.clone()),
                "encodings must be ordered"
            );
            prev = cur;
        }
    }

    #[test]
    fn comparator_examples() {
        let eq = comparator_automaton(2, CmpRel::Eq).unwrap();
        assert!(eq.accepts_values(&[7, 7]).unwrap());
        assert!(!eq.accepts_values(&[7, 8]).unwrap());
        let lt = comparator_automaton(2, CmpRel::Lt).unwrap();
        assert!(lt.accepts_values(&[3, 10]).unwrap());
        assert!(!lt.accepts_values(&[10, 3]).unwrap());
        assert!(!lt.accepts_values(&[4, 4]).unwrap());
    }

    #[test]
    fn le_equals_lt_or_eq() {
        let le = comparator_automaton(2, CmpRel::Le).unwrap();
        let lt = comparator_automaton(2, CmpRel::Lt).unwrap();
        let eq = comparator_automaton(2, CmpRel::Eq).unwrap();
        let combined = lt.boolean_combine(&eq, BoolOp::Or).unwrap();
        assert!(le.equivalent_to(&combined));
    }

    #[test]
    fn lt_is_a_strict_total_order_prefix() {
        let lt = comparator_automaton(2, CmpRel::Lt).unwrap();
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(lt.accepts_values(&[a, b]).unwrap(), a < b);
            }
        }
    }

    #[test]
    fn adder_examples() {
        let add = adder_automaton(2).unwrap();
        assert!(add.accepts_values(&[2, 3, 5]).unwrap());
        assert!(!add.accepts_values(&[2, 3, 6]).unwrap());
    }

    #[test]
    fn adder_exhaustive_small() {
        let add = adder_automaton(2).unwrap();
        for a in 0..=200u64 {
            for b in 0..=200u64 {
                assert!(add.accepts_values(&[a, b, a + b]).unwrap());
                assert!(!add.accepts_values(&[a, b, a + b + 1]).unwrap());
                if a + b > 0 {
                    assert!(!add.accepts_values(&[a, b, a + b - 1]).unwrap());
                }
            }
        }
    }

    #[test]
    fn base_three_relations() {
        let lt = comparator_automaton(3, CmpRel::Lt).unwrap();
        let add = adder_automaton(3).unwrap();
        for a in 0..80u64 {
            for b in 0..80u64 {
                assert_eq!(lt.accepts_values(&[a, b]).unwrap(), a < b);
                assert!(add.accepts_values(&[a, b, a + b]).unwrap());
                assert!(!add.accepts_values(&[a, b, a + b + 2]).unwrap());
            }
        }
    }

    #[test]
    fn adder_symmetric_in_summands() {
        let add = adder_automaton(2).unwrap();
        let swapped = add.permute_tracks(&[1, 0, 2]).unwrap();
        assert!(add.equivalent_to(&swapped));
    }

    #[test]
    fn const_automaton_values() {
        for c in [0u64, 1, 5, 18] {
            let a = const_automaton(2, c).unwrap();
            for v in 0..40 {
                assert_eq!(a.accepts_values(&[v]).unwrap(), v == c);
            }
            // leading zeros are accepted
            let mut cols: Vec<Vec<u32>> = vec![vec![0], vec![0]];
            cols.extend(encode(c, 2).iter().map(|&d| vec![d]));
            assert!(a.run(&cols).unwrap());
        }
    }
}
