use std::fmt;

/// Right endpoint of an occurrence: either a concrete position or a ray
/// extending to infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OccurrenceEnd {
    Finite(u64),
    Infinite,
}

/// A position interval `[i..j]` of an infinite word, or the ray `[i..inf)`.
///
/// A finite occurrence may be empty (`j = i - 1`); rays only appear as the
/// final term of a finite factorization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Occurrence {
    pub start: u64,
    pub end: OccurrenceEnd,
}

impl Occurrence {
    pub fn new(start: u64, end: u64) -> Self {
        assert!(
            end + 1 >= start,
            "occurrence [{start}..{end}] would have negative length"
        );
        Occurrence {
            start,
            end: OccurrenceEnd::Finite(end),
        }
    }

    pub fn ray(start: u64) -> Self {
        Occurrence {
            start,
            end: OccurrenceEnd::Infinite,
        }
    }

    /// Number of positions covered, or `None` for a ray.
    pub fn len(&self) -> Option<u64> {
        match self.end {
            OccurrenceEnd::Finite(j) => Some(j + 1 - self.start),
            OccurrenceEnd::Infinite => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.end {
            OccurrenceEnd::Finite(j) => write!(f, "[{}..{}]", self.start, j),
            OccurrenceEnd::Infinite => write!(f, "[{}..inf)", self.start),
        }
    }
}
