//! Stock predicates over one sequence: primitivity, lexicographic comparison
//! of factors and suffixes, Lyndon occurrences, factorization terms and first
//! occurrences.
//!
//! Each predicate is a formula of the surface language, instantiated from a
//! template with the caller's variable names and compiled against a one-entry
//! registry binding `x` to the sequence. Factor comparisons avoid subtraction
//! by ranging over offsets (`x[i + o] = x[m + o]`) or by linking positions
//! additively (`u + j + 1 = v + d + i`).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::automaton::Limits;
use crate::error::Result;
use crate::predicate::compile::{CompiledPredicate, Compiler};
use crate::predicate::parser;
use crate::sequence::SequenceDfao;

/// The named predicates.
///
/// Over tracks `(i, j)`: [`Primitive`], [`Lyndon`], [`LexLessInf`] and
/// [`FactorizationTerm`]; over `(i)`: [`LyndonInf`]; over `(i, j, m, n)`:
/// [`LexLess`], [`Inside`], [`StrictlyInside`]; over `(n, i)`:
/// [`FirstOccurrence`].
///
/// [`Primitive`]: BuiltinPredicate::Primitive
/// [`Lyndon`]: BuiltinPredicate::Lyndon
/// [`LexLess`]: BuiltinPredicate::LexLess
/// [`LexLessInf`]: BuiltinPredicate::LexLessInf
/// [`LyndonInf`]: BuiltinPredicate::LyndonInf
/// [`Inside`]: BuiltinPredicate::Inside
/// [`StrictlyInside`]: BuiltinPredicate::StrictlyInside
/// [`FactorizationTerm`]: BuiltinPredicate::FactorizationTerm
/// [`FirstOccurrence`]: BuiltinPredicate::FirstOccurrence
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinPredicate {
    /// `x[i..j]` is primitive.
    Primitive,
    /// `x[i..j] < x[m..n]` lexicographically.
    LexLess,
    /// `x[i..j]` is a Lyndon word.
    Lyndon,
    /// `x[i..inf) < x[j..inf)` lexicographically.
    LexLessInf,
    /// `x[i..inf)` is an infinite Lyndon word.
    LyndonInf,
    /// `[i..j]` lies inside `[m..n]`.
    Inside,
    /// `[i..j]` lies strictly inside `[m..n]`.
    StrictlyInside,
    /// `[i..j]` is a term of the Lyndon factorization of `x`.
    FactorizationTerm,
    /// `x[i..i+n-1]` is the first occurrence of that factor.
    FirstOccurrence,
}

pub fn build(
    which: BuiltinPredicate,
    seq: &SequenceDfao,
    limits: &Limits,
) -> Result<CompiledPredicate> {
    match which {
        BuiltinPredicate::Primitive => primitive(seq, limits),
        BuiltinPredicate::LexLess => lex_less(seq, limits),
        BuiltinPredicate::Lyndon => lyndon(seq, limits),
        BuiltinPredicate::LexLessInf => lex_less_inf(seq, limits),
        BuiltinPredicate::LyndonInf => lyndon_inf(seq, limits),
        BuiltinPredicate::Inside => inside(seq, limits),
        BuiltinPredicate::StrictlyInside => strictly_inside(seq, limits),
        BuiltinPredicate::FactorizationTerm => factorization_term(seq, limits),
        BuiltinPredicate::FirstOccurrence => first_occurrence(seq, limits),
    }
}

/// Compiles a formula with `x` bound to the sequence.
fn compile_for(seq: &SequenceDfao, limits: &Limits, text: &str) -> Result<CompiledPredicate> {
    let mut env = BTreeMap::new();
    env.insert("x".to_string(), Arc::new(seq.clone()));
    let ast = parser::parse(text)?;
    Compiler::new(seq.base(), &env, *limits).compile(&ast)
}

/// `x[a..] < x[b..]` restricted to the window ends `ae`, `be`: there is a
/// common prefix of some length `s` within both windows followed by a strict
/// letter difference, or the first window runs out first while matching.
///
/// The callers guarantee the windows are nonempty (`a <= ae`, `b <= be`).
fn lex_less_template(a: &str, ae: &str, b: &str, be: &str) -> String {
    format!(
        "(({ae} + {b} < {be} + {a} & A o (o + {a} <= {ae} => x[{a} + o] = x[{b} + o])) | \
         E s (s + {a} <= {ae} & s + {b} <= {be} & \
              A o (o + 1 <= s => x[{a} + o] = x[{b} + o]) & \
              x[{a} + s] < x[{b} + s]))"
    )
}

/// `LL(i, j, m, n)`: the factor `x[i..j]` precedes `x[m..n]` lexicographically.
pub fn lex_less(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = format!(
        "i <= j & m <= n & {}",
        lex_less_template("i", "j", "m", "n")
    );
    compile_for(seq, limits, &text)
}

/// `P(i, j)`: the factor `x[i..j]` is primitive, i.e. equal to none of its
/// nontrivial cyclic shifts. A shift by `d` matches when the word has period
/// `d` and the wrapped tail equals the head; the head/tail positions are
/// linked additively by `u + j + 1 = v + d + i`.
pub fn primitive(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = "i <= j & ~ E d (1 <= d & d + i <= j \
         & A u ((i <= u & u + d <= j) => x[u] = x[u + d]) \
         & A u v ((i <= u & u + 1 <= i + d & u + j + 1 = v + d + i) => x[v] = x[u]))";
    compile_for(seq, limits, text)
}

/// `L(i, j)`: the factor `x[i..j]` is Lyndon, i.e. lexicographically less
/// than each of its proper suffixes.
pub fn lyndon(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = format!(
        "i <= j & A m ((i + 1 <= m & m <= j) => {})",
        lex_less_template("i", "j", "m", "j")
    );
    compile_for(seq, limits, &text)
}

/// `LL_inf(i, j)`: the suffix `x[i..inf)` precedes `x[j..inf)`.
pub fn lex_less_inf(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = "E s (A o (o + 1 <= s => x[i + o] = x[j + o]) & x[i + s] < x[j + s])";
    compile_for(seq, limits, text)
}

/// `L_inf(i)`: the suffix `x[i..inf)` is an infinite Lyndon word, i.e. less
/// than all its proper suffixes.
pub fn lyndon_inf(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let llinf = lex_less_inf(seq, limits)?;
    let guard = compile_for(seq, limits, "i + 1 <= j")?;
    guard.implies(&llinf)?.forall("j", limits)
}

/// `I(i, j, m, n)`: the occurrence `[i..j]` lies inside `[m..n]`.
pub fn inside(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    compile_for(seq, limits, "m <= i & j <= n")
}

/// `SI(i, j, m, n)`: inside, and not equal.
pub fn strictly_inside(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    compile_for(seq, limits, "m <= i & j <= n & (m + 1 <= i | j + 1 <= n)")
}

/// `LF(i, j)`: the occurrence `[i..j]` is a term of the Lyndon factorization:
/// Lyndon, and not strictly inside any other Lyndon occurrence.
pub fn factorization_term(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let l = lyndon(seq, limits)?;
    let l_mn = l.renamed("i", "m")?.renamed("j", "n")?;
    let si = strictly_inside(seq, limits)?;
    let no_cover = si
        .implies(&l_mn.negated())?
        .forall("n", limits)?
        .forall("m", limits)?;
    l.and(&no_cover)
}

/// `FIRSTOCC(n, i)`: no earlier occurrence of `x[i..i+n-1]` exists.
pub fn first_occurrence(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = "A m (m + 1 <= i => ~ A o (o + 1 <= n => x[m + o] = x[i + o]))";
    compile_for(seq, limits, text)?.reordered(&["n", "i"])
}

/// Over `(n, i)`: the Lyndon factorization of the prefix `x[0..n-1]` ends
/// with the term `x[i..n-1]`, i.e. `x[i..n-1]` is the lexicographically
/// least suffix of the prefix.
pub fn prefix_last_term(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = format!(
        "E e (e + 1 = n & i <= e & \
         A m ((m <= e & (m + 1 <= i | i + 1 <= m)) => {}))",
        lex_less_template("i", "e", "m", "e")
    );
    compile_for(seq, limits, &text)?.reordered(&["n", "i"])
}

/// Over `(i, j, l)`: the Lyndon factorization of the factor `x[i..j-1]` ends
/// with the term `x[l..j-1]`.
pub fn factor_last_term(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let text = format!(
        "E e (e + 1 = j & i <= l & l <= e & \
         A m ((i <= m & m <= e & (m + 1 <= l | l + 1 <= m)) => {}))",
        lex_less_template("l", "e", "m", "e")
    );
    compile_for(seq, limits, &text)
}

/// Over `(n, i)`: position `i` starts a length-`n` factor that is primitive
/// (resp. Lyndon) and is the first occurrence of that factor. Counting the
/// accepted `i` per `n` yields the primitive (resp. Lyndon) complexity.
pub fn counting_pair(
    seq: &SequenceDfao,
    lyndon_kind: bool,
    limits: &Limits,
) -> Result<CompiledPredicate> {
    let prop = if lyndon_kind {
        lyndon(seq, limits)?
    } else {
        primitive(seq, limits)?
    };
    // the factor runs [i..j] with j + 1 = i + n
    let link = compile_for(seq, limits, "j + 1 = i + n")?;
    let occurrence = prop.and(&link)?.exists("j", limits)?;
    let fresh = first_occurrence(seq, limits)?;
    occurrence.and(&fresh)?.reordered(&["n", "i"])
}

/// Over `(n, i)`: position `i` starts a term of the Lyndon factorization of
/// the prefix `x[0..n]`. The number of accepted `i` per `n` is the number of
/// terms of that factorization.
pub fn prefix_term_start(seq: &SequenceDfao, limits: &Limits) -> Result<CompiledPredicate> {
    let l = lyndon(seq, limits)?;
    let l_mp = l.renamed("i", "m")?.renamed("j", "p")?;
    let si = strictly_inside(seq, limits)?.renamed("n", "p")?;
    let bound = compile_for(seq, limits, "p <= n")?;
    let no_cover = si
        .and(&bound)?
        .implies(&l_mp.negated())?
        .forall("p", limits)?
        .forall("m", limits)?;
    let within = compile_for(seq, limits, "j <= n")?;
    l.and(&no_cover)?
        .and(&within)?
        .exists("j", limits)?
        .reordered(&["n", "i"])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::sequence::SequenceDfao;

    fn window(seq: &[u64], i: u64, j: u64) -> Vec<u64> {
        seq[i as usize..=j as usize].to_vec()
    }

    #[test]
    fn primitive_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let p = primitive(&t, &Limits::default()).unwrap();
        assert_eq!(p.free_vars(), ["i", "j"]);
        // t[0..3] = 0110 is primitive, t[0..5] = 011010 is primitive
        assert!(p.satisfies(&[0, 3]).unwrap());
        assert!(p.satisfies(&[0, 5]).unwrap());
        // t[1..2] = 11 and t[11..16] = 101101 are powers
        assert!(!p.satisfies(&[1, 2]).unwrap());
        assert!(!p.satisfies(&[11, 16]).unwrap());
    }

    #[test]
    fn primitive_agrees_with_oracle() {
        let t = SequenceDfao::builtin("t").unwrap();
        let p = primitive(&t, &Limits::default()).unwrap();
        let prefix = t.prefix(80);
        for i in 0..40u64 {
            for j in i..72u64 {
                let expected = oracle::is_primitive(&window(&prefix, i, j)).unwrap();
                assert_eq!(p.satisfies(&[i, j]).unwrap(), expected, "({i}, {j})");
            }
        }
    }

    #[test]
    fn lyndon_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let l = lyndon(&t, &Limits::default()).unwrap();
        // 011 at [0..2] and 0011 at [5..8] are Lyndon
        assert!(l.satisfies(&[0, 2]).unwrap());
        assert!(l.satisfies(&[5, 8]).unwrap());
        // 11 at [1..2] is not
        assert!(!l.satisfies(&[1, 2]).unwrap());
    }

    #[test]
    fn lex_less_agrees_with_direct_comparison() {
        let t = SequenceDfao::builtin("t").unwrap();
        let ll = lex_less(&t, &Limits::default()).unwrap();
        assert_eq!(ll.free_vars(), ["i", "j", "m", "n"]);
        let prefix = t.prefix(64);
        for i in 0..12u64 {
            for j in i..24u64 {
                for m in 0..12u64 {
                    for n in m..24u64 {
                        let expected = window(&prefix, i, j) < window(&prefix, m, n);
                        assert_eq!(
                            ll.satisfies(&[i, j, m, n]).unwrap(),
                            expected,
                            "({i},{j}) vs ({m},{n})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn lyndon_entails_primitive() {
        let t = SequenceDfao::builtin("t").unwrap();
        let limits = Limits::default();
        let l = lyndon(&t, &limits).unwrap();
        let p = primitive(&t, &limits).unwrap();
        let counterexample = l.and(&p.negated()).unwrap();
        assert!(counterexample.automaton().is_language_empty());
        let all = l.implies(&p).unwrap();
        assert!(all.negated().automaton().is_language_empty());
    }

    #[test]
    fn negated_lyndon_accepts_squares() {
        let t = SequenceDfao::builtin("t").unwrap();
        let l = lyndon(&t, &Limits::default()).unwrap();
        let not_l = l.negated();
        // t[1..2] = 11 is not Lyndon
        assert!(not_l.satisfies(&[1, 2]).unwrap());
    }

    #[test]
    fn infinite_suffix_order_on_tbar() {
        let tbar = SequenceDfao::builtin("tbar").unwrap();
        let linf = lyndon_inf(&tbar, &Limits::default()).unwrap();
        assert_eq!(linf.free_vars(), ["i"]);
        // the factorization of tbar ends with the ray starting at 1
        assert!(linf.satisfies(&[1]).unwrap());
        assert!(!linf.satisfies(&[0]).unwrap());
    }

    #[test]
    fn first_occurrence_marks_earliest_position() {
        let t = SequenceDfao::builtin("t").unwrap();
        let fo = first_occurrence(&t, &Limits::default()).unwrap();
        assert_eq!(fo.free_vars(), ["n", "i"]);
        let prefix = t.prefix(256);
        for n in 1..8u64 {
            for i in 0..32u64 {
                let factor = &prefix[i as usize..(i + n) as usize];
                let first = (0..=i).find(|&m| {
                    prefix[m as usize..(m + n) as usize] == *factor
                });
                assert_eq!(
                    fo.satisfies(&[n, i]).unwrap(),
                    first == Some(i),
                    "(n={n}, i={i})"
                );
            }
        }
    }

    #[test]
    fn strictly_inside_examples() {
        let t = SequenceDfao::builtin("t").unwrap();
        let si = strictly_inside(&t, &Limits::default()).unwrap();
        assert!(si.satisfies(&[2, 3, 1, 4]).unwrap());
        assert!(si.satisfies(&[2, 3, 2, 4]).unwrap());
        assert!(!si.satisfies(&[2, 3, 2, 3]).unwrap());
        assert!(!si.satisfies(&[2, 5, 3, 4]).unwrap());
    }
}
