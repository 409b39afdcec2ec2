//! The first-order predicate language and its compiler.
//!
//! Predicates quantify over natural numbers, compare sums of variables and
//! constants, and index registered sequences. [`Session`] owns the sequence
//! registry and resource limits; [`builtins`] provides the stock predicates
//! (primitivity, lexicographic comparison, Lyndon occurrences and friends)
//! as compiler pipelines.

pub mod ast;
pub mod builtins;
mod compile;
mod parser;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::automaton::Limits;
use crate::error::{Error, Result};
use crate::sequence::SequenceDfao;

pub use ast::{PredicateAst, Rel, Term};
pub use builtins::BuiltinPredicate;
pub use compile::CompiledPredicate;

/// A compilation session: a base, a registry of sequences, and limits.
///
/// The registry is immutable during compilation, so one session can serve
/// concurrent compiles.
#[derive(Debug, Clone)]
pub struct Session {
    base: u32,
    limits: Limits,
    seqs: BTreeMap<String, Arc<SequenceDfao>>,
}

impl Session {
    pub fn new(base: u32) -> Session {
        Session {
            base,
            limits: Limits::default(),
            seqs: BTreeMap::new(),
        }
    }

    /// A base-2 session with every built-in sequence registered under its
    /// name (`t`, `tbar`, `r`, `rbar`, `p`, `pbar`, `d`, `dbar`).
    pub fn with_builtins() -> Session {
        let mut session = Session::new(2);
        for name in crate::sequence::BUILTIN_NAMES {
            let seq = SequenceDfao::builtin(name).expect("builtin exists");
            session
                .register_sequence(name, seq)
                .expect("fresh registry entry");
        }
        session
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn set_state_cap(&mut self, max_states: usize) {
        self.limits.max_states = max_states;
    }

    pub fn register_sequence(
        &mut self,
        name: &str,
        seq: Arc<SequenceDfao>,
    ) -> Result<()> {
        if name.is_empty()
            || name == "E"
            || name == "A"
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            || !name.chars().next().unwrap().is_ascii_alphabetic()
        {
            return Err(Error::Input(format!("invalid sequence name `{name}`")));
        }
        if seq.base() != self.base {
            return Err(Error::Input(format!(
                "sequence `{name}` has base {}, session has base {}",
                seq.base(),
                self.base
            )));
        }
        if self.seqs.insert(name.to_string(), seq).is_some() {
            return Err(Error::Input(format!("sequence `{name}` already registered")));
        }
        Ok(())
    }

    pub fn sequence(&self, name: &str) -> Result<&Arc<SequenceDfao>> {
        self.seqs
            .get(name)
            .ok_or_else(|| Error::UnknownSequence(name.to_string()))
    }

    pub fn sequence_names(&self) -> impl Iterator<Item = &str> {
        self.seqs.keys().map(|s| s.as_str())
    }

    /// Parses a predicate and checks scoping and sequence names.
    pub fn parse(&self, text: &str) -> Result<PredicateAst> {
        let ast = parser::parse(text)?;
        self.validate(&ast)?;
        Ok(ast)
    }

    fn validate(&self, ast: &PredicateAst) -> Result<()> {
        for name in ast.sequence_names() {
            self.sequence(&name)?;
        }
        check_scopes(ast, &mut Vec::new())
    }

    /// Compiles a well-scoped predicate into an automaton with one track per
    /// free variable, in sorted name order.
    pub fn compile(&self, ast: &PredicateAst) -> Result<CompiledPredicate> {
        self.validate(ast)?;
        compile::Compiler::new(self.base, &self.seqs, self.limits).compile(ast)
    }

    pub fn compile_str(&self, text: &str) -> Result<CompiledPredicate> {
        let ast = self.parse(text)?;
        self.compile(&ast)
    }

    /// Compiles one of the named stock predicates for a registered sequence.
    pub fn builtin_predicate(
        &self,
        which: BuiltinPredicate,
        seq_name: &str,
    ) -> Result<CompiledPredicate> {
        let seq = self.sequence(seq_name)?;
        builtins::build(which, seq, &self.limits)
    }
}

/// Rejects unbound shadowing and variables that collide with fresh names.
fn check_scopes(ast: &PredicateAst, bound: &mut Vec<String>) -> Result<()> {
    match ast {
        PredicateAst::Cmp(..) | PredicateAst::SeqIndexEq(..) | PredicateAst::SeqIndexCmp(..) => {
            Ok(())
        }
        PredicateAst::Not(a) => check_scopes(a, bound),
        PredicateAst::And(a, b) | PredicateAst::Or(a, b) | PredicateAst::Implies(a, b) => {
            check_scopes(a, bound)?;
            check_scopes(b, bound)
        }
        PredicateAst::Exists(v, body) | PredicateAst::ForAll(v, body) => {
            if bound.contains(v) {
                return Err(Error::Input(format!(
                    "variable `{v}` shadows an enclosing binder"
                )));
            }
            bound.push(v.clone());
            let r = check_scopes(body, bound);
            bound.pop();
            r
        }
    }
}
