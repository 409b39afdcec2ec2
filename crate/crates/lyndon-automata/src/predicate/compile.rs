//! Compilation of predicates to multi-track automata.
//!
//! Every compiled predicate is an [`Automaton`] with one track per free
//! variable; the accepted canonical words are exactly the satisfying
//! assignments. Atoms compile to the primitive relation automata from
//! [`crate::numeration`]; compound terms are flattened by introducing fresh
//! existentially quantified variables constrained through the adder, so the
//! only arithmetic primitive is `a + b = c`. Quantifiers compile innermost
//! first, via projection for `E` and the double negation `~E~` for `A`, with
//! minimization after every step.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::automaton::{Automaton, BoolOp, DigitTupleAlphabet, Limits};
use crate::error::{Error, Result};
use crate::numeration::{adder_automaton, comparator_automaton, const_automaton, CmpRel};
use crate::predicate::ast::{PredicateAst, Rel, Term};
use crate::sequence::{Letter, SequenceDfao};

/// A predicate compiled to an automaton, together with the free variable
/// carried by each track.
#[derive(Debug, Clone)]
pub struct CompiledPredicate {
    automaton: Automaton,
    free_vars: Vec<String>,
}

impl CompiledPredicate {
    pub fn from_parts(automaton: Automaton, free_vars: Vec<String>) -> Result<Self> {
        if automaton.alphabet().tracks() != free_vars.len() {
            return Err(Error::Input(format!(
                "{} tracks but {} variables",
                automaton.alphabet().tracks(),
                free_vars.len()
            )));
        }
        let mut sorted = free_vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != free_vars.len() {
            return Err(Error::Input("duplicate variable names".into()));
        }
        Ok(CompiledPredicate {
            automaton,
            free_vars,
        })
    }

    pub fn automaton(&self) -> &Automaton {
        &self.automaton
    }

    pub fn into_automaton(self) -> Automaton {
        self.automaton
    }

    /// Free variables in track order.
    pub fn free_vars(&self) -> &[String] {
        &self.free_vars
    }

    fn track_of(&self, var: &str) -> Option<usize> {
        self.free_vars.iter().position(|v| v == var)
    }

    /// Does the assignment (values in track order) satisfy the predicate?
    pub fn satisfies(&self, values: &[u64]) -> Result<bool> {
        self.automaton.accepts_values(values)
    }

    /// Reorders tracks to the given variable order (a permutation of the
    /// current free variables).
    pub fn reordered(&self, order: &[&str]) -> Result<CompiledPredicate> {
        if order.len() != self.free_vars.len() {
            return Err(Error::Input("variable order has wrong length".into()));
        }
        let perm: Vec<usize> = order
            .iter()
            .map(|v| {
                self.track_of(v)
                    .ok_or_else(|| Error::Input(format!("unknown variable `{v}`")))
            })
            .collect::<Result<_>>()?;
        Ok(CompiledPredicate {
            automaton: self.automaton.permute_tracks(&perm)?,
            free_vars: order.iter().map(|v| v.to_string()).collect(),
        })
    }

    /// Renames a free variable; the new name must be fresh.
    pub fn renamed(&self, from: &str, to: &str) -> Result<CompiledPredicate> {
        if self.track_of(to).is_some() {
            return Err(Error::Input(format!("variable `{to}` already in use")));
        }
        let track = self
            .track_of(from)
            .ok_or_else(|| Error::Input(format!("unknown variable `{from}`")))?;
        let mut free_vars = self.free_vars.clone();
        free_vars[track] = to.to_string();
        CompiledPredicate {
            automaton: self.automaton.clone(),
            free_vars,
        }
        .normalized()
    }

    /// Identifies `merge` with `keep`: every occurrence of `merge` now reads
    /// the digits of `keep`.
    pub fn identified(&self, keep: &str, merge: &str) -> Result<CompiledPredicate> {
        let tk = self
            .track_of(keep)
            .ok_or_else(|| Error::Input(format!("unknown variable `{keep}`")))?;
        let tm = self
            .track_of(merge)
            .ok_or_else(|| Error::Input(format!("unknown variable `{merge}`")))?;
        let automaton = self.automaton.identify_tracks(tk, tm)?.minimize();
        let mut free_vars = self.free_vars.clone();
        free_vars.remove(tm);
        CompiledPredicate {
            automaton,
            free_vars,
        }
        .normalized()
    }

    /// Sorted variable order; the canonical form produced by the compiler.
    fn normalized(self) -> Result<CompiledPredicate> {
        let mut order: Vec<&str> = self.free_vars.iter().map(|s| s.as_str()).collect();
        order.sort();
        if order
            .iter()
            .zip(self.free_vars.iter())
            .all(|(a, b)| *a == b.as_str())
        {
            return Ok(self);
        }
        let order: Vec<String> = order.into_iter().map(str::to_string).collect();
        let refs: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
        self.reordered(&refs)
    }

    /// Extends both predicates to their common variable set (sorted) so they
    /// can be combined trackwise.
    fn align(&self, other: &CompiledPredicate) -> Result<(Automaton, Automaton, Vec<String>)> {
        let mut union: Vec<String> = self.free_vars.clone();
        union.extend(other.free_vars.iter().cloned());
        union.sort();
        union.dedup();

        let widen = |pred: &CompiledPredicate| -> Result<Automaton> {
            let mut automaton = pred.automaton.clone();
            let mut vars = pred.free_vars.clone();
            for v in &union {
                if !vars.contains(v) {
                    automaton = automaton.extend_with_track(vars.len())?;
                    vars.push(v.clone());
                }
            }
            let perm: Vec<usize> = union
                .iter()
                .map(|v| vars.iter().position(|w| w == v).expect("present"))
                .collect();
            automaton.permute_tracks(&perm)
        };
        Ok((widen(self)?, widen(other)?, union))
    }

    pub fn and(&self, other: &CompiledPredicate) -> Result<CompiledPredicate> {
        self.combine(other, BoolOp::And)
    }

    pub fn or(&self, other: &CompiledPredicate) -> Result<CompiledPredicate> {
        self.combine(other, BoolOp::Or)
    }

    pub fn implies(&self, other: &CompiledPredicate) -> Result<CompiledPredicate> {
        self.combine(other, BoolOp::Implies)
    }

    pub fn combine(&self, other: &CompiledPredicate, op: BoolOp) -> Result<CompiledPredicate> {
        let (a, b, vars) = self.align(other)?;
        Ok(CompiledPredicate {
            automaton: a.boolean_combine(&b, op)?,
            free_vars: vars,
        })
    }

    pub fn negated(&self) -> CompiledPredicate {
        CompiledPredicate {
            automaton: self.automaton.negate(),
            free_vars: self.free_vars.clone(),
        }
    }

    /// Existential quantification over one variable. A predicate whose only
    /// variable is quantified away would be closed; that is rejected.
    pub fn exists(&self, var: &str, limits: &Limits) -> Result<CompiledPredicate> {
        let track = match self.track_of(var) {
            Some(t) => t,
            None => return Ok(self.clone()),
        };
        if self.free_vars.len() == 1 {
            return Err(Error::Input(format!(
                "quantifying `{var}` would leave a closed predicate"
            )));
        }
        let automaton = self.automaton.project_with(track, limits)?;
        let mut free_vars = self.free_vars.clone();
        free_vars.remove(track);
        Ok(CompiledPredicate {
            automaton,
            free_vars,
        })
    }

    /// Universal quantification, as the double negation of [`Self::exists`].
    pub fn forall(&self, var: &str, limits: &Limits) -> Result<CompiledPredicate> {
        if self.track_of(var).is_none() {
            return Ok(self.clone());
        }
        Ok(self.negated().exists(var, limits)?.negated())
    }
}

/// Accepts everything (or nothing) over the given variables.
fn trivial_pred(base: u32, vars: Vec<String>, accept: bool) -> Result<CompiledPredicate> {
    let alpha = DigitTupleAlphabet::new(base, vars.len())?;
    let syms = alpha.symbol_count();
    let automaton = Automaton::from_flat(alpha, 0, vec![accept], vec![0; syms]);
    CompiledPredicate::from_parts(automaton, vars)
}

fn rel_letters(rel: Rel, a: Letter, b: Letter) -> bool {
    match rel {
        Rel::Eq => a == b,
        Rel::Ne => a != b,
        Rel::Lt => a < b,
        Rel::Le => a <= b,
        Rel::Gt => a > b,
        Rel::Ge => a >= b,
    }
}

/// Two-track automaton relating letters of two sequences: accepts `(a, b)`
/// when `s1[a] rel s2[b]`.
fn seq_pair_automaton(s1: &SequenceDfao, s2: &SequenceDfao, rel: Rel) -> Result<Automaton> {
    if s1.base() != s2.base() {
        return Err(Error::AlphabetMismatch(
            "sequences have different bases".into(),
        ));
    }
    let k = s1.base() as usize;
    let alpha = DigitTupleAlphabet::new(s1.base(), 2)?;
    let n1 = s1.n_states();
    let n2 = s2.n_states();
    let mut accepting = Vec::with_capacity(n1 * n2);
    let mut transitions = Vec::with_capacity(n1 * n2 * k * k);
    for q1 in 0..n1 {
        for q2 in 0..n2 {
            accepting.push(rel_letters(rel, s1.output(q1), s2.output(q2)));
            for d1 in 0..k {
                for d2 in 0..k {
                    let t1 = s1.step(q1, d1);
                    let t2 = s2.step(q2, d2);
                    transitions.push((t1 * n2 + t2) as u32);
                }
            }
        }
    }
    let initial = (s1.initial() * n2 + s2.initial()) as u32;
    Ok(Automaton::from_flat(alpha, initial, accepting, transitions).minimize())
}

/// Single-track variant for `s1[v] rel s2[v]` on a shared index.
fn seq_lockstep_automaton(s1: &SequenceDfao, s2: &SequenceDfao, rel: Rel) -> Result<Automaton> {
    if s1.base() != s2.base() {
        return Err(Error::AlphabetMismatch(
            "sequences have different bases".into(),
        ));
    }
    let k = s1.base() as usize;
    let alpha = DigitTupleAlphabet::new(s1.base(), 1)?;
    let n1 = s1.n_states();
    let n2 = s2.n_states();
    let mut accepting = Vec::with_capacity(n1 * n2);
    let mut transitions = Vec::with_capacity(n1 * n2 * k);
    for q1 in 0..n1 {
        for q2 in 0..n2 {
            accepting.push(rel_letters(rel, s1.output(q1), s2.output(q2)));
            for d in 0..k {
                transitions.push((s1.step(q1, d) * n2 + s2.step(q2, d)) as u32);
            }
        }
    }
    let initial = (s1.initial() * n2 + s2.initial()) as u32;
    Ok(Automaton::from_flat(alpha, initial, accepting, transitions).minimize())
}

pub(crate) struct Compiler<'a> {
    base: u32,
    env: &'a BTreeMap<String, Arc<SequenceDfao>>,
    limits: Limits,
    fresh: usize,
}

/// Result of constant folding: either a decided boolean or an open formula.
enum Folded {
    Bool(bool),
    Open(PredicateAst),
}

impl<'a> Compiler<'a> {
    pub fn new(base: u32, env: &'a BTreeMap<String, Arc<SequenceDfao>>, limits: Limits) -> Self {
        Compiler {
            base,
            env,
            limits,
            fresh: 0,
        }
    }

    pub fn compile(&mut self, ast: &PredicateAst) -> Result<CompiledPredicate> {
        match self.fold(ast)? {
            Folded::Bool(b) => Err(Error::Input(format!(
                "predicate has no free variables; it is constantly {b}"
            ))),
            Folded::Open(ast) => self.compile_open(&ast),
        }
    }

    fn sequence(&self, name: &str) -> Result<&Arc<SequenceDfao>> {
        self.env
            .get(name)
            .ok_or_else(|| Error::UnknownSequence(name.to_string()))
    }

    /// Evaluates closed atoms and simplifies connectives around them.
    fn fold(&self, ast: &PredicateAst) -> Result<Folded> {
        use Folded::*;
        Ok(match ast {
            PredicateAst::Cmp(rel, t1, t2) => match (eval_term(t1), eval_term(t2)) {
                (Some(a), Some(b)) => Bool(rel_letters(*rel, a, b)),
                _ => Open(ast.clone()),
            },
            PredicateAst::SeqIndexEq(seq, t, letter) => match eval_term(t) {
                Some(n) => Bool(self.sequence(seq)?.letter_at(n) == *letter),
                None => Open(ast.clone()),
            },
            PredicateAst::SeqIndexCmp(rel, s1, t1, s2, t2) => {
                match (eval_term(t1), eval_term(t2)) {
                    (Some(a), Some(b)) => Bool(rel_letters(
                        *rel,
                        self.sequence(s1)?.letter_at(a),
                        self.sequence(s2)?.letter_at(b),
                    )),
                    _ => Open(ast.clone()),
                }
            }
            PredicateAst::Not(a) => match self.fold(a)? {
                Bool(b) => Bool(!b),
                Open(a) => Open(a.not()),
            },
            PredicateAst::And(a, b) => match (self.fold(a)?, self.fold(b)?) {
                (Bool(x), Bool(y)) => Bool(x && y),
                (Bool(false), _) | (_, Bool(false)) => Bool(false),
                (Bool(true), Open(f)) | (Open(f), Bool(true)) => Open(f),
                (Open(x), Open(y)) => Open(x.and(y)),
            },
            PredicateAst::Or(a, b) => match (self.fold(a)?, self.fold(b)?) {
                (Bool(x), Bool(y)) => Bool(x || y),
                (Bool(true), _) | (_, Bool(true)) => Bool(true),
                (Bool(false), Open(f)) | (Open(f), Bool(false)) => Open(f),
                (Open(x), Open(y)) => Open(x.or(y)),
            },
            PredicateAst::Implies(a, b) => match (self.fold(a)?, self.fold(b)?) {
                (Bool(x), Bool(y)) => Bool(!x || y),
                (Bool(false), _) | (_, Bool(true)) => Bool(true),
                (Bool(true), Open(f)) => Open(f),
                (Open(f), Bool(false)) => Open(f.not()),
                (Open(x), Open(y)) => Open(x.implies(y)),
            },
            PredicateAst::Exists(v, body) => match self.fold(body)? {
                Bool(b) => Bool(b),
                Open(f) => Open(PredicateAst::Exists(v.clone(), Box::new(f))),
            },
            PredicateAst::ForAll(v, body) => match self.fold(body)? {
                Bool(b) => Bool(b),
                Open(f) => Open(PredicateAst::ForAll(v.clone(), Box::new(f))),
            },
        })
    }

    fn compile_open(&mut self, ast: &PredicateAst) -> Result<CompiledPredicate> {
        match ast {
            PredicateAst::Cmp(rel, t1, t2) => match rel {
                Rel::Ne => self
                    .compile_open(&PredicateAst::Cmp(Rel::Eq, t1.clone(), t2.clone()))
                    .map(|p| p.negated()),
                Rel::Gt => self.compile_open(&PredicateAst::Cmp(Rel::Lt, t2.clone(), t1.clone())),
                Rel::Ge => self.compile_open(&PredicateAst::Cmp(Rel::Le, t2.clone(), t1.clone())),
                Rel::Eq | Rel::Lt | Rel::Le => self.compile_cmp(*rel, t1, t2),
            },
            PredicateAst::SeqIndexEq(seq, t, letter) => {
                let dfao = self.sequence(seq)?.clone();
                self.compile_indexed(t, |v| {
                    CompiledPredicate::from_parts(dfao.letter_acceptor(*letter), vec![v])
                })
            }
            PredicateAst::SeqIndexCmp(rel, s1, t1, s2, t2) => {
                self.compile_seq_cmp(*rel, s1, t1, s2, t2)
            }
            PredicateAst::Not(a) => Ok(self.compile_open(a)?.negated()),
            PredicateAst::And(a, b) => self.compile_open(a)?.and(&self.compile_open(b)?),
            PredicateAst::Or(a, b) => self.compile_open(a)?.or(&self.compile_open(b)?),
            PredicateAst::Implies(a, b) => {
                self.compile_open(a)?.implies(&self.compile_open(b)?)
            }
            PredicateAst::Exists(v, body) => {
                let inner = self.compile_open(body)?;
                inner
                    .exists(v, &self.limits)
                    .map_err(|e| self.tag_resource_error(e, ast))
            }
            PredicateAst::ForAll(v, body) => {
                let inner = self.compile_open(body)?;
                inner
                    .forall(v, &self.limits)
                    .map_err(|e| self.tag_resource_error(e, ast))
            }
        }
    }

    /// Attaches the responsible subformula to state-cap failures.
    fn tag_resource_error(&self, e: Error, ast: &PredicateAst) -> Error {
        match e {
            Error::StateCap { limit, .. } => Error::StateCap {
                limit,
                context: ast.to_string(),
            },
            other => other,
        }
    }

    fn fresh_var(&mut self) -> String {
        let v = format!("#{}", self.fresh);
        self.fresh += 1;
        v
    }

    /// Rewrites a term into a single variable, pushing adder and constant
    /// constraints plus the fresh names they introduce.
    fn lower_term(
        &mut self,
        term: &Term,
        constraints: &mut Vec<CompiledPredicate>,
        fresh: &mut Vec<String>,
    ) -> Result<String> {
        match term {
            Term::Var(v) => Ok(v.clone()),
            Term::Const(c) => {
                let v = self.fresh_var();
                constraints.push(CompiledPredicate::from_parts(
                    const_automaton(self.base, *c)?,
                    vec![v.clone()],
                )?);
                fresh.push(v.clone());
                Ok(v)
            }
            Term::Add(a, b) => {
                let va = self.lower_term(a, constraints, fresh)?;
                let vb = self.lower_term(b, constraints, fresh)?;
                let vs = self.fresh_var();
                let adder = adder_automaton(self.base)?;
                let pred = if va == vb {
                    // a + a = s: identify the two summand tracks
                    let doubled = adder.identify_tracks(0, 1)?.minimize();
                    CompiledPredicate::from_parts(doubled, vec![va, vs.clone()])?
                } else {
                    CompiledPredicate::from_parts(adder, vec![va, vb, vs.clone()])?
                };
                constraints.push(pred.normalized()?);
                fresh.push(vs.clone());
                Ok(vs)
            }
        }
    }

    /// Conjoins the lowering constraints and projects the fresh variables.
    fn discharge(
        &self,
        base: CompiledPredicate,
        constraints: Vec<CompiledPredicate>,
        fresh: Vec<String>,
    ) -> Result<CompiledPredicate> {
        let mut pred = base;
        for c in constraints {
            pred = pred.and(&c)?;
        }
        for v in fresh.iter().rev() {
            pred = pred.exists(v, &self.limits)?;
        }
        Ok(pred)
    }

    fn compile_cmp(&mut self, rel: Rel, t1: &Term, t2: &Term) -> Result<CompiledPredicate> {
        let mut constraints = Vec::new();
        let mut fresh = Vec::new();
        let v1 = self.lower_term(t1, &mut constraints, &mut fresh)?;
        let v2 = self.lower_term(t2, &mut constraints, &mut fresh)?;
        let base = if v1 == v2 {
            let accept = matches!(rel, Rel::Eq | Rel::Le);
            trivial_pred(self.base, vec![v1], accept)?
        } else {
            let cmp = match rel {
                Rel::Eq => CmpRel::Eq,
                Rel::Lt => CmpRel::Lt,
                Rel::Le => CmpRel::Le,
                _ => unreachable!("rewritten above"),
            };
            CompiledPredicate::from_parts(comparator_automaton(self.base, cmp)?, vec![v1, v2])?
                .normalized()?
        };
        self.discharge(base, constraints, fresh)
    }

    fn compile_indexed(
        &mut self,
        t: &Term,
        make: impl FnOnce(String) -> Result<CompiledPredicate>,
    ) -> Result<CompiledPredicate> {
        let mut constraints = Vec::new();
        let mut fresh = Vec::new();
        let v = self.lower_term(t, &mut constraints, &mut fresh)?;
        let base = make(v)?;
        self.discharge(base, constraints, fresh)
    }

    fn compile_seq_cmp(
        &mut self,
        rel: Rel,
        s1: &str,
        t1: &Term,
        s2: &str,
        t2: &Term,
    ) -> Result<CompiledPredicate> {
        let d1 = self.sequence(s1)?.clone();
        let d2 = self.sequence(s2)?.clone();
        let mut constraints = Vec::new();
        let mut fresh = Vec::new();
        let v1 = self.lower_term(t1, &mut constraints, &mut fresh)?;
        let v2 = self.lower_term(t2, &mut constraints, &mut fresh)?;
        let base = if v1 == v2 {
            CompiledPredicate::from_parts(seq_lockstep_automaton(&d1, &d2, rel)?, vec![v1])?
        } else {
            CompiledPredicate::from_parts(seq_pair_automaton(&d1, &d2, rel)?, vec![v1, v2])?
                .normalized()?
        };
        self.discharge(base, constraints, fresh)
    }
}

fn eval_term(term: &Term) -> Option<u64> {
    match term {
        Term::Const(c) => Some(*c),
        Term::Var(_) => None,
        Term::Add(a, b) => eval_term(a)?.checked_add(eval_term(b)?),
    }
}
