//! Brute-force ground truth on finite words.
//!
//! Everything here is deliberately naive or textbook-linear and shares no
//! code with the automata pipeline; tests use it as an independent referee.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Which factors to count in [`count_factors`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorKind {
    Primitive,
    Lyndon,
    All,
}

fn nonempty<T>(w: &[T]) -> Result<()> {
    if w.is_empty() {
        Err(Error::Input("the empty word is not allowed here".into()))
    } else {
        Ok(())
    }
}

/// A word is primitive when it differs from all of its nontrivial rotations.
pub fn is_primitive<T: Eq>(w: &[T]) -> Result<bool> {
    nonempty(w)?;
    let n = w.len();
    'shift: for d in 1..n {
        for p in 0..n {
            if w[p] != w[(p + d) % n] {
                continue 'shift;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// A word is Lyndon when it is strictly smaller than each proper suffix.
pub fn is_lyndon<T: Ord>(w: &[T]) -> Result<bool> {
    nonempty(w)?;
    Ok((1..w.len()).all(|s| w < &w[s..]))
}

/// Duval's algorithm: the unique nonincreasing factorization into Lyndon
/// words, in linear time.
pub fn duval_factorization<T: Ord>(w: &[T]) -> Result<Vec<&[T]>> {
    nonempty(w)?;
    let n = w.len();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && w[k] <= w[j] {
            if w[k] < w[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        let len = j - k;
        while i <= k {
            terms.push(&w[i..i + len]);
            i += len;
        }
    }
    Ok(terms)
}

/// Start of the lexicographically least suffix, by direct comparison.
pub fn least_suffix<T: Ord>(w: &[T]) -> Result<usize> {
    nonempty(w)?;
    let mut best = 0;
    for s in 1..w.len() {
        if w[s..] < w[best..] {
            best = s;
        }
    }
    Ok(best)
}

/// Number of distinct length-`n` factors of `prefix` with the given property.
pub fn count_factors<T: Ord>(prefix: &[T], n: usize, kind: FactorKind) -> Result<usize> {
    if n == 0 {
        return Err(Error::Input("factor length must be at least 1".into()));
    }
    if n > prefix.len() {
        return Err(Error::Input(format!(
            "factor length {n} exceeds prefix length {}",
            prefix.len()
        )));
    }
    let mut distinct: BTreeSet<&[T]> = BTreeSet::new();
    for i in 0..=prefix.len() - n {
        distinct.insert(&prefix[i..i + n]);
    }
    let mut count = 0;
    for f in distinct {
        let keep = match kind {
            FactorKind::All => true,
            FactorKind::Primitive => is_primitive(f)?,
            FactorKind::Lyndon => is_lyndon(f)?,
        };
        if keep {
            count += 1;
        }
    }
    Ok(count)
}

/// All occurrence starts of `u` in `prefix`.
fn occurrence_starts<T: Eq>(prefix: &[T], u: &[T]) -> Vec<usize> {
    if u.is_empty() || u.len() > prefix.len() {
        return Vec::new();
    }
    (0..=prefix.len() - u.len())
        .filter(|&i| &prefix[i..i + u.len()] == u)
        .collect()
}

/// The set of return words of `u`: for consecutive occurrence starts `i < j`,
/// the word `prefix[i..j-1]`. Requires at least two occurrences.
pub fn return_words<T: Ord + Clone>(prefix: &[T], u: &[T]) -> Result<Vec<Vec<T>>> {
    nonempty(u)?;
    let starts = occurrence_starts(prefix, u);
    if starts.len() < 2 {
        return Err(Error::Input(format!(
            "need at least two occurrences, found {}",
            starts.len()
        )));
    }
    let mut words: BTreeSet<Vec<T>> = BTreeSet::new();
    for pair in starts.windows(2) {
        words.insert(prefix[pair[0]..pair[1]].to_vec());
    }
    Ok(words.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> Vec<u8> {
        s.bytes().collect()
    }

    #[test]
    fn primitivity_examples() {
        assert!(!is_primitive(&b("murmur")).unwrap());
        assert!(is_primitive(&b("murder")).unwrap());
        assert!(is_primitive(&b("a")).unwrap());
        assert!(is_primitive::<u8>(&[]).is_err());
    }

    #[test]
    fn lyndon_examples() {
        assert!(is_lyndon(&b("academy")).unwrap());
        assert!(!is_lyndon(&b("googol")).unwrap());
        assert!(!is_lyndon(&b("googoo")).unwrap());
        assert!(is_lyndon(&b("011")).unwrap());
        assert!(!is_lyndon(&b("0110")).unwrap());
    }

    #[test]
    fn duval_examples() {
        let w = b("murmur");
        let f = duval_factorization(&w).unwrap();
        assert_eq!(f, vec![b("mur").as_slice(), b("mur").as_slice()]);
        let w = b("0110");
        let f = duval_factorization(&w).unwrap();
        assert_eq!(f, vec![b("011").as_slice(), b("0").as_slice()]);
        let w = b("0");
        assert_eq!(duval_factorization(&w).unwrap().len(), 1);
    }

    #[test]
    fn least_suffix_examples() {
        assert_eq!(least_suffix(&b("0110")).unwrap(), 3);
        assert_eq!(least_suffix(&b("011")).unwrap(), 0);
        assert_eq!(least_suffix(&b("z")).unwrap(), 0);
    }

    #[test]
    fn count_factors_whole_prefix() {
        let w = b("abracadabra");
        assert_eq!(count_factors(&w, w.len(), FactorKind::All).unwrap(), 1);
        assert!(count_factors(&w, 0, FactorKind::All).is_err());
        assert!(count_factors(&w, 12, FactorKind::All).is_err());
    }

    #[test]
    fn return_word_examples() {
        // periodic word (01)^10
        let w: Vec<u8> = b("01").repeat(10);
        let r = return_words(&w, &b("01")).unwrap();
        assert_eq!(r, vec![b("01")]);
        // a single occurrence errors
        assert!(return_words(&w, &w).is_err());
    }

    #[test]
    fn return_words_of_zero_in_thue_morse() {
        let t = crate::sequence::SequenceDfao::builtin("t").unwrap();
        let prefix = t.prefix(64);
        let r = return_words(&prefix, &[0u64]).unwrap();
        let allowed = [vec![0u64], vec![0, 1], vec![0, 1, 1]];
        for w in &r {
            assert!(allowed.contains(w), "unexpected return word {w:?}");
        }
    }

    proptest! {
        #[test]
        fn duval_is_nonincreasing_lyndon_and_concatenates(
            w in proptest::collection::vec(0u8..2, 1..64)
        ) {
            let terms = duval_factorization(&w).unwrap();
            let mut rebuilt = Vec::new();
            for t in &terms {
                prop_assert!(is_lyndon(t).unwrap());
                rebuilt.extend_from_slice(t);
            }
            prop_assert_eq!(&rebuilt, &w);
            for pair in terms.windows(2) {
                prop_assert!(pair[0] >= pair[1]);
            }
        }

        #[test]
        fn lyndon_implies_primitive(w in proptest::collection::vec(0u8..2, 1..64)) {
            if is_lyndon(&w).unwrap() {
                prop_assert!(is_primitive(&w).unwrap());
            }
        }

        #[test]
        fn least_suffix_starts_last_duval_term(
            w in proptest::collection::vec(0u8..3, 1..64)
        ) {
            let terms = duval_factorization(&w).unwrap();
            let last_start = w.len() - terms.last().unwrap().len();
            prop_assert_eq!(least_suffix(&w).unwrap(), last_start);
        }
    }
}
