//! Abstract syntax of the predicate language.

use std::collections::BTreeSet;
use std::fmt;

use crate::sequence::Letter;

/// Arithmetic terms: sums of variables and constants. Multiplication is not
/// part of the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(u64),
    Var(String),
    Add(Box<Term>, Box<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Term) -> Term {
        Term::Add(Box::new(self), Box::new(other))
    }

    pub(crate) fn vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Const(_) => {}
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Add(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Const(c) => write!(f, "{c}"),
            Term::Var(v) => write!(f, "{v}"),
            Term::Add(a, b) => write!(f, "{a} + {b}"),
        }
    }
}

/// Comparison relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    pub(crate) fn symbol(self) -> &'static str {
        match self {
            Rel::Eq => "=",
            Rel::Ne => "!=",
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

/// Formulas of the predicate language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PredicateAst {
    /// `t1 rel t2` between arithmetic terms.
    Cmp(Rel, Term, Term),
    /// `X[t] = letter` (or its negation via [`PredicateAst::Not`]).
    SeqIndexEq(String, Term, Letter),
    /// `X[t1] rel Y[t2]`, letters compared in their numeric order.
    SeqIndexCmp(Rel, String, Term, String, Term),
    Not(Box<PredicateAst>),
    And(Box<PredicateAst>, Box<PredicateAst>),
    Or(Box<PredicateAst>, Box<PredicateAst>),
    Implies(Box<PredicateAst>, Box<PredicateAst>),
    Exists(String, Box<PredicateAst>),
    ForAll(String, Box<PredicateAst>),
}

impl PredicateAst {
    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> PredicateAst {
        PredicateAst::Not(Box::new(self))
    }

    pub fn and(self, other: PredicateAst) -> PredicateAst {
        PredicateAst::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: PredicateAst) -> PredicateAst {
        PredicateAst::Or(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: PredicateAst) -> PredicateAst {
        PredicateAst::Implies(Box::new(self), Box::new(other))
    }

    pub fn exists(var: &str, body: PredicateAst) -> PredicateAst {
        PredicateAst::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: PredicateAst) -> PredicateAst {
        PredicateAst::ForAll(var.to_string(), Box::new(body))
    }

    /// Free variables, sorted by name.
    pub fn free_vars(&self) -> Vec<String> {
        let mut free = BTreeSet::new();
        self.collect_free(&mut BTreeSet::new(), &mut free);
        free.into_iter().collect()
    }

    fn collect_free(&self, bound: &mut BTreeSet<String>, free: &mut BTreeSet<String>) {
        match self {
            PredicateAst::Cmp(_, a, b) => {
                let mut vars = BTreeSet::new();
                a.vars(&mut vars);
                b.vars(&mut vars);
                free.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            PredicateAst::SeqIndexEq(_, t, _) => {
                let mut vars = BTreeSet::new();
                t.vars(&mut vars);
                free.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            PredicateAst::SeqIndexCmp(_, _, t1, _, t2) => {
                let mut vars = BTreeSet::new();
                t1.vars(&mut vars);
                t2.vars(&mut vars);
                free.extend(vars.into_iter().filter(|v| !bound.contains(v)));
            }
            PredicateAst::Not(a) => a.collect_free(bound, free),
            PredicateAst::And(a, b)
            | PredicateAst::Or(a, b)
            | PredicateAst::Implies(a, b) => {
                a.collect_free(bound, free);
                b.collect_free(bound, free);
            }
            PredicateAst::Exists(v, body) | PredicateAst::ForAll(v, body) => {
                let fresh = bound.insert(v.clone());
                body.collect_free(bound, free);
                if fresh {
                    bound.remove(v);
                }
            }
        }
    }

    /// Sequence names used by indexing atoms.
    pub fn sequence_names(&self) -> BTreeSet<String> {
        let mut names = BTreeSet::new();
        self.collect_seqs(&mut names);
        names
    }

    fn collect_seqs(&self, names: &mut BTreeSet<String>) {
        match self {
            PredicateAst::Cmp(..) => {}
            PredicateAst::SeqIndexEq(seq, ..) => {
                names.insert(seq.clone());
            }
            PredicateAst::SeqIndexCmp(_, s1, _, s2, _) => {
                names.insert(s1.clone());
                names.insert(s2.clone());
            }
            PredicateAst::Not(a) => a.collect_seqs(names),
            PredicateAst::And(a, b)
            | PredicateAst::Or(a, b)
            | PredicateAst::Implies(a, b) => {
                a.collect_seqs(names);
                b.collect_seqs(names);
            }
            PredicateAst::Exists(_, body) | PredicateAst::ForAll(_, body) => {
                body.collect_seqs(names)
            }
        }
    }
}

impl fmt::Display for PredicateAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PredicateAst::Cmp(rel, a, b) => write!(f, "{a} {} {b}", rel.symbol()),
            PredicateAst::SeqIndexEq(seq, t, letter) => {
                write!(f, "{seq}[{t}] = {letter}")
            }
            PredicateAst::SeqIndexCmp(rel, s1, t1, s2, t2) => {
                write!(f, "{s1}[{t1}] {} {s2}[{t2}]", rel.symbol())
            }
            PredicateAst::Not(a) => write!(f, "~({a})"),
            PredicateAst::And(a, b) => write!(f, "({a} & {b})"),
            PredicateAst::Or(a, b) => write!(f, "({a} | {b})"),
            PredicateAst::Implies(a, b) => write!(f, "({a} => {b})"),
            PredicateAst::Exists(v, body) => write!(f, "E {v} ({body})"),
            PredicateAst::ForAll(v, body) => write!(f, "A {v} ({body})"),
        }
    }
}
