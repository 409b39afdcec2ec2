//! k-regular counting of factors through linear representations.
//!
//! A pair automaton over `(n, i)` induces the counting sequence
//! `a(n) = #{i : (n, i) accepted}`. Path counting over the automaton turns
//! this into a linear representation: a row vector `u`, one nonnegative
//! integer matrix per digit, and a column vector `v`, with
//! `a(n) = u_eff * M_{d1} ... M_{dm} * v` for the digits of `n`.
//!
//! `u_eff` is the zero-prefix closure of `u`: accepted pairs may need more
//! digits for `i` than for `n`, and those representations are reached by
//! first reading columns whose `n` digit is zero. `u * M_0^a * M_w * v`
//! counts the partners representable within `a` extra columns; on a trimmed,
//! minimized, padding-closed automaton the initial state carries a zero-column
//! self loop, so the vectors `u * M_0^a` grow monotonically and either reach a
//! fixpoint (the closure) or prove that some `n` has infinitely many partners,
//! which is reported as an error with a witness cycle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automaton::{Automaton, Limits};
use crate::error::{Error, Result};
use crate::numeration::encode;
use crate::predicate::builtins;
use crate::sequence::{Letter, SequenceDfao};

/// What to count per length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    /// Distinct primitive factors of length `n`.
    Primitive,
    /// Distinct Lyndon factors of length `n`.
    Lyndon,
    /// Terms in the Lyndon factorization of the prefix `x[0..n]`.
    TermCount,
}

/// Pair automaton over `(n, i)` whose per-`n` partner count realizes the
/// chosen counting sequence.
pub fn counting_pair_automaton(
    seq: &SequenceDfao,
    kind: CountKind,
    limits: &Limits,
) -> Result<Automaton> {
    let pred = match kind {
        CountKind::Primitive => builtins::counting_pair(seq, false, limits)?,
        CountKind::Lyndon => builtins::counting_pair(seq, true, limits)?,
        CountKind::TermCount => builtins::prefix_term_start(seq, limits)?,
    };
    Ok(pred.into_automaton())
}

/// A k-regular sequence as `u, (M_d), v` over nonnegative integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    base: u32,
    dim: usize,
    u: Vec<BigUint>,
    /// One `dim x dim` row-major matrix per digit.
    mats: Vec<Vec<BigUint>>,
    v: Vec<BigUint>,
    /// Zero-prefix closure of `u`; cached at construction.
    u_eff: Vec<BigUint>,
}

impl LinearRepresentation {
    /// Path-counting representation of a two-track pair automaton. `counted`
    /// names the track whose values are counted per value of the other track.
    ///
    /// The automaton is minimized and trimmed to states that both are
    /// reachable and can reach acceptance before matrices are extracted.
    pub fn from_pair_automaton(a: &Automaton, counted: usize) -> Result<LinearRepresentation> {
        if a.alphabet().tracks() != 2 {
            return Err(Error::Input(
                "linear representations need a two-track automaton".into(),
            ));
        }
        if counted > 1 {
            return Err(Error::Input("counted track must be 0 or 1".into()));
        }
        let a = a.minimize();
        if a.step(a.initial(), 0) != a.initial() {
            return Err(Error::Input(
                "pair automaton must be padding-closed (accepting all \
                 zero-extended representations)"
                    .into(),
            ));
        }
        let value = 1 - counted;
        let base = a.alphabet().base();
        let k = base as usize;

        let co = a.co_reachable();
        // minimized automata have every state reachable
        let keep: Vec<usize> = (0..a.n_states()).filter(|&q| co[q]).collect();
        let mut index = vec![usize::MAX; a.n_states()];
        for (new, &old) in keep.iter().enumerate() {
            index[old] = new;
        }
        let dim = keep.len();

        if dim == 0 {
            // empty language: the all-zero representation
            return Ok(LinearRepresentation {
                base,
                dim: 1,
                u: vec![BigUint::one()],
                mats: vec![vec![BigUint::zero()]; k],
                v: vec![BigUint::zero()],
                u_eff: vec![BigUint::one()],
            });
        }

        let mut mats = vec![vec![BigUint::zero(); dim * dim]; k];
        for (new_q, &old_q) in keep.iter().enumerate() {
            for (d, mat) in mats.iter_mut().enumerate() {
                for e in 0..k {
                    let mut digits = [0u32; 2];
                    digits[value] = d as u32;
                    digits[counted] = e as u32;
                    let sym = a.alphabet().symbol_of_unchecked(&digits);
                    let t = index[a.step(old_q, sym)];
                    if t != usize::MAX {
                        mat[new_q * dim + t] += 1u32;
                    }
                }
            }
        }

        let mut u = vec![BigUint::zero(); dim];
        u[index[a.initial()]] = BigUint::one();
        let v: Vec<BigUint> = keep
            .iter()
            .map(|&q| {
                if a.is_accepting(q) {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            })
            .collect();

        let u_eff = zero_prefix_closure(&u, &mats[0], dim)?;
        Ok(LinearRepresentation {
            base,
            dim,
            u,
            mats,
            v,
            u_eff,
        })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `u_eff * M_{digits of n} * v`.
    pub fn evaluate(&self, n: u64) -> BigUint {
        let mut row = self.u_eff.clone();
        for d in encode(n, self.base) {
            row = row_times_matrix(&row, &self.mats[d as usize], self.dim);
        }
        dot(&row, &self.v)
    }

    /// All values for `0 <= n < count`, sharing matrix products along common
    /// representation prefixes.
    pub fn evaluate_prefix(&self, count: u64) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); count as usize];
        if count == 0 {
            return out;
        }
        let zero_row = row_times_matrix(&self.u_eff, &self.mats[0], self.dim);
        out[0] = dot(&zero_row, &self.v);
        let k = self.base as u64;
        let mut stack: Vec<(Vec<BigUint>, u64)> = Vec::new();
        for d in (1..k.min(count)).rev() {
            let row = row_times_matrix(&self.u_eff, &self.mats[d as usize], self.dim);
            stack.push((row, d));
        }
        while let Some((row, value)) = stack.pop() {
            out[value as usize] = dot(&row, &self.v);
            for d in 0..k {
                let v2 = value * k + d;
                if v2 < count {
                    let row2 = row_times_matrix(&row, &self.mats[d as usize], self.dim);
                    stack.push((row2, v2));
                }
            }
        }
        out
    }

    /// Breadth-first synthesis of an output automaton from the reachable row
    /// vectors `u_eff * M_w`. Terminates with a sequence automaton when the
    /// vector set closes within `cap` states, with unboundedness evidence
    /// when a pumping argument proves the values grow without bound, and with
    /// `CapExceeded` otherwise.
    pub fn synthesize_bounded(&self, cap: usize) -> SynthesisOutcome {
        if cap == 0 {
            return SynthesisOutcome::CapExceeded { states_explored: 0 };
        }
        let k = self.base as usize;
        let mut index: HashMap<Vec<BigUint>, u32> = HashMap::new();
        let mut rows: Vec<Vec<BigUint>> = Vec::new();
        // (parent, digit) links for reconstructing witness words
        let mut parent: Vec<Option<(u32, u32)>> = Vec::new();
        let mut transitions: Vec<u32> = Vec::new();
        let mut queue = VecDeque::new();

        index.insert(self.u_eff.clone(), 0);
        rows.push(self.u_eff.clone());
        parent.push(None);
        queue.push_back(0u32);

        while let Some(id) = queue.pop_front() {
            for d in 0..k {
                let row = row_times_matrix(&rows[id as usize], &self.mats[d], self.dim);
                if let Some(&t) = index.get(&row) {
                    transitions.push(t);
                    continue;
                }
                // new vector: look for a dominated ancestor before adding
                if let Some(evidence) =
                    self.pump_certificate(&rows, &parent, id, d as u32, &row)
                {
                    return SynthesisOutcome::Unbounded(evidence);
                }
                if rows.len() >= cap {
                    return SynthesisOutcome::CapExceeded {
                        states_explored: rows.len(),
                    };
                }
                let t = rows.len() as u32;
                index.insert(row.clone(), t);
                rows.push(row);
                parent.push(Some((id, d as u32)));
                queue.push_back(t);
                transitions.push(t);
            }
        }

        let mut outputs = Vec::with_capacity(rows.len());
        for row in &rows {
            match Letter::try_from(dot(row, &self.v)) {
                Ok(letter) => outputs.push(letter),
                Err(_) => {
                    return SynthesisOutcome::CapExceeded {
                        states_explored: rows.len(),
                    }
                }
            }
        }
        let table: Vec<Vec<usize>> = (0..rows.len())
            .map(|q| (0..k).map(|d| transitions[q * k + d] as usize).collect())
            .collect();
        let dfao = SequenceDfao::from_parts(self.base, 0, outputs, table)
            .expect("synthesized automaton is zero-stable");
        SynthesisOutcome::Bounded(dfao)
    }

    /// Checks whether the fresh vector (reached from `state` on `digit`)
    /// dominates one of its ancestors, and whether pumping the connecting
    /// cycle provably keeps some coordinate growing forever. Trimming already
    /// made every coordinate able to reach acceptance, so persistent growth
    /// anywhere means the counted values are unbounded.
    fn pump_certificate(
        &self,
        rows: &[Vec<BigUint>],
        parent: &[Option<(u32, u32)>],
        state: u32,
        digit: u32,
        row: &[BigUint],
    ) -> Option<UnboundedEvidence> {
        let mut cycle = vec![digit];
        let mut at = state;
        loop {
            let anc = &rows[at as usize];
            if dominates(row, anc) {
                let mut boolean = support_identity(self.dim);
                for &d in cycle.iter().rev() {
                    boolean = support_product(&boolean, &self.mats[d as usize], self.dim);
                }
                let delta: Vec<bool> =
                    (0..self.dim).map(|s| row[s] > anc[s]).collect();
                if supports_persist(&delta, &boolean, self.dim) {
                    let mut prefix = Vec::new();
                    let mut p = at;
                    while let Some((q, d)) = parent[p as usize] {
                        prefix.push(d);
                        p = q;
                    }
                    prefix.reverse();
                    cycle.reverse();
                    return Some(UnboundedEvidence {
                        prefix_digits: prefix,
                        cycle_digits: cycle,
                    });
                }
            }
            match parent[at as usize] {
                Some((q, d)) => {
                    cycle.push(d);
                    at = q;
                }
                None => return None,
            }
        }
    }

    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        writeln!(out, "dim {} base {}", self.dim, self.base).unwrap();
        let line = |row: &[BigUint]| {
            row.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(out, "{}", line(&self.u)).unwrap();
        for mat in &self.mats {
            for r in 0..self.dim {
                writeln!(out, "{}", line(&mat[r * self.dim..(r + 1) * self.dim])).unwrap();
            }
        }
        writeln!(out, "{}", line(&self.v)).unwrap();
        out
    }

    /// Parses [`Self::to_text`] output; the closure is recomputed, so loading
    /// a divergent representation fails like constructing one.
    pub fn from_text(text: &str) -> Result<LinearRepresentation> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::TextFormat("empty input".into()))?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "dim" || parts[2] != "base" {
            return Err(Error::TextFormat(format!("bad header `{header}`")));
        }
        let dim: usize = parts[1]
            .parse()
            .map_err(|_| Error::TextFormat(format!("bad dimension `{}`", parts[1])))?;
        let base: u32 = parts[3]
            .parse()
            .map_err(|_| Error::TextFormat(format!("bad base `{}`", parts[3])))?;
        if dim == 0 || base < 2 {
            return Err(Error::TextFormat("dimension or base out of range".into()));
        }
        let mut row = |expected: usize| -> Result<Vec<BigUint>> {
            let line = lines
                .next()
                .ok_or_else(|| Error::TextFormat("missing row".into()))?;
            let entries: Vec<BigUint> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<BigUint>()
                        .map_err(|_| Error::TextFormat(format!("bad integer `{tok}`")))
                })
                .collect::<Result<_>>()?;
            if entries.len() != expected {
                return Err(Error::TextFormat(format!(
                    "expected {expected} entries, got {}",
                    entries.len()
                )));
            }
            Ok(entries)
        };
        let u = row(dim)?;
        let mut mats = Vec::with_capacity(base as usize);
        for _ in 0..base {
            let mut mat = Vec::with_capacity(dim * dim);
            for _ in 0..dim {
                mat.extend(row(dim)?);
            }
            mats.push(mat);
        }
        let v = row(dim)?;
        if lines.next().is_some() {
            return Err(Error::TextFormat("trailing input".into()));
        }
        let u_eff = zero_prefix_closure(&u, &mats[0], dim)?;
        Ok(LinearRepresentation {
            base,
            dim,
            u,
            mats,
            v,
            u_eff,
        })
    }
}

/// Representation of the number of terms in the Lyndon factorization of each
/// prefix `x[0..n]`.
pub fn term_count_representation(
    seq: &SequenceDfao,
    limits: &Limits,
) -> Result<LinearRepresentation> {
    let pair = counting_pair_automaton(seq, CountKind::TermCount, limits)?;
    LinearRepresentation::from_pair_automaton(&pair, 1)
}

/// Outcome of [`LinearRepresentation::synthesize_bounded`].
#[derive(Debug, Clone)]
pub enum SynthesisOutcome {
    /// The value sequence is bounded; here is a sequence automaton for it.
    Bounded(SequenceDfao),
    /// The values provably grow without bound.
    Unbounded(UnboundedEvidence),
    /// Neither closure nor a pumping certificate within the state budget.
    CapExceeded { states_explored: usize },
}

/// A pumping witness: after reading `prefix`, repeating `cycle` keeps
/// strictly growing a coordinate that can reach acceptance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnboundedEvidence {
    pub prefix_digits: Vec<u32>,
    pub cycle_digits: Vec<u32>,
}

impl fmt::Display for UnboundedEvidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |digits: &[u32]| {
            digits
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .concat()
        };
        write!(
            f,
            "values grow along {}({})^m",
            join(&self.prefix_digits),
            join(&self.cycle_digits)
        )
    }
}

/// Iterates `u * M_0^a` to its fixpoint. On a trimmed, padding-closed
/// automaton these vectors are entrywise nondecreasing, so either they
/// stabilize within `dim` steps or some partner set is infinite.
fn zero_prefix_closure(u: &[BigUint], m0: &[BigUint], dim: usize) -> Result<Vec<BigUint>> {
    let mut cur = u.to_vec();
    for _ in 0..=dim {
        let next = row_times_matrix(&cur, m0, dim);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
    Err(Error::DivergentCount(divergence_witness(u, m0, dim)))
}

/// Describes a zero-column cycle responsible for divergence: a cycle in the
/// `M_0` support graph that keeps receiving new paths.
fn divergence_witness(u: &[BigUint], m0: &[BigUint], dim: usize) -> String {
    // growth vector after dim steps; its support recurs on some cycle
    let mut prev = u.to_vec();
    let mut cur = row_times_matrix(&prev, m0, dim);
    for _ in 0..dim {
        let next = row_times_matrix(&cur, m0, dim);
        prev = std::mem::replace(&mut cur, next);
    }
    let growing: Vec<usize> = (0..dim).filter(|&s| cur[s] > prev[s]).collect();
    let witness = growing.first().copied().unwrap_or(0);
    format!(
        "state {witness} keeps gaining zero-padded paths (growing states: {growing:?}); \
         some length has infinitely many counted partners"
    )
}

fn row_times_matrix(row: &[BigUint], mat: &[BigUint], dim: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); dim];
    for (s, x) in row.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for t in 0..dim {
            let m = &mat[s * dim + t];
            if !m.is_zero() {
                out[t] += x * m;
            }
        }
    }
    out
}

fn dot(a: &[BigUint], b: &[BigUint]) -> BigUint {
    let mut out = BigUint::zero();
    for (x, y) in a.iter().zip(b.iter()) {
        if !x.is_zero() && !y.is_zero() {
            out += x * y;
        }
    }
    out
}

/// `a >= b` pointwise with at least one strict coordinate.
fn dominates(a: &[BigUint], b: &[BigUint]) -> bool {
    let mut strict = false;
    for (x, y) in a.iter().zip(b.iter()) {
        if x < y {
            return false;
        }
        if x > y {
            strict = true;
        }
    }
    strict
}

fn support_identity(dim: usize) -> Vec<bool> {
    let mut out = vec![false; dim * dim];
    for s in 0..dim {
        out[s * dim + s] = true;
    }
    out
}

fn support_product(a: &[bool], m: &[BigUint], dim: usize) -> Vec<bool> {
    let mut out = vec![false; dim * dim];
    for s in 0..dim {
        for r in 0..dim {
            if a[s * dim + r] {
                for t in 0..dim {
                    if !m[r * dim + t].is_zero() {
                        out[s * dim + t] = true;
                    }
                }
            }
        }
    }
    out
}

/// Does the difference's support recur forever under the cycle's support map?
/// The support sequence of `delta * B^m` is eventually periodic; growth is
/// persistent exactly when the periodic part is nonempty.
fn supports_persist(delta: &[bool], boolean: &[bool], dim: usize) -> bool {
    let step = |set: &[bool]| -> Vec<bool> {
        let mut next = vec![false; dim];
        for s in 0..dim {
            if set[s] {
                for t in 0..dim {
                    if boolean[s * dim + t] {
                        next[t] = true;
                    }
                }
            }
        }
        next
    };
    let mut seen: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut set = delta.to_vec();
    for iteration in 0..4096usize {
        if set.iter().all(|&b| !b) {
            return false;
        }
        if seen.insert(set.clone(), iteration).is_some() {
            // entered a cycle of nonempty supports
            return true;
        }
        set = step(&set);
    }
    // did not settle within the budget; make no unboundedness claim
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{self, FactorKind};

    fn limits() -> Limits {
        Limits::default()
    }

    fn eval_u64(rep: &LinearRepresentation, n: u64) -> u64 {
        u64::try_from(rep.evaluate(n)).expect("small count")
    }

    #[test]
    fn lyndon_counts_for_thue_morse() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Lyndon, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        assert_eq!(eval_u64(&rep, 1), 2);
        assert_eq!(eval_u64(&rep, 2), 1);
        assert_eq!(eval_u64(&rep, 3), 2);
        assert_eq!(eval_u64(&rep, 5), 2);
        assert_eq!(eval_u64(&rep, 7), 0);
        assert_eq!(eval_u64(&rep, 10), 1);
    }

    #[test]
    fn primitive_counts_for_thue_morse() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Primitive, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        assert_eq!(eval_u64(&rep, 1), 2);
        assert_eq!(eval_u64(&rep, 4), 8);
        assert_eq!(eval_u64(&rep, 6), 14);
    }

    #[test]
    fn counting_matches_oracle_prefix() {
        let t = SequenceDfao::builtin("t").unwrap();
        let prefix = t.prefix(4096);
        for (kind, fk) in [
            (CountKind::Lyndon, FactorKind::Lyndon),
            (CountKind::Primitive, FactorKind::Primitive),
        ] {
            let pair = counting_pair_automaton(&t, kind, &limits()).unwrap();
            let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
            for n in 1..=24u64 {
                let expected = oracle::count_factors(&prefix, n as usize, fk).unwrap();
                assert_eq!(eval_u64(&rep, n), expected as u64, "{kind:?} at {n}");
            }
        }
    }

    #[test]
    fn term_counts_match_duval() {
        let t = SequenceDfao::builtin("t").unwrap();
        let rep = term_count_representation(&t, &limits()).unwrap();
        assert_eq!(eval_u64(&rep, 0), 1);
        assert_eq!(eval_u64(&rep, 1), 1);
        assert_eq!(eval_u64(&rep, 2), 1);
        assert_eq!(eval_u64(&rep, 3), 2);
        let prefix = t.prefix(129);
        for n in 0..=127u64 {
            let expected = oracle::duval_factorization(&prefix[..=n as usize])
                .unwrap()
                .len() as u64;
            assert_eq!(eval_u64(&rep, n), expected, "n = {n}");
        }
    }

    #[test]
    fn evaluate_prefix_agrees_with_evaluate() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Lyndon, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        let all = rep.evaluate_prefix(200);
        for n in 0..200u64 {
            assert_eq!(all[n as usize], rep.evaluate(n), "n = {n}");
        }
    }

    #[test]
    fn text_roundtrip() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Lyndon, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        let text = rep.to_text();
        let back = LinearRepresentation::from_text(&text).unwrap();
        assert_eq!(rep, back);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn synthesis_of_bounded_counts() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Lyndon, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        match rep.synthesize_bounded(100_000) {
            SynthesisOutcome::Bounded(dfao) => {
                let letters = dfao.output_alphabet();
                assert!(letters.iter().all(|&l| l <= 2), "outputs {letters:?}");
                for n in 0..10_000u64 {
                    assert_eq!(BigUint::from(dfao.letter_at(n)), rep.evaluate(n));
                }
            }
            other => panic!("expected a bounded synthesis, got {other:?}"),
        }
    }

    #[test]
    fn synthesis_detects_unbounded_growth() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Primitive, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        match rep.synthesize_bounded(10_000) {
            SynthesisOutcome::Unbounded(evidence) => {
                // replay the witness: pumping the cycle must keep growing
                let mut row = rep.u_eff.clone();
                for &d in &evidence.prefix_digits {
                    row = row_times_matrix(&row, &rep.mats[d as usize], rep.dim);
                }
                let mut prev = row.clone();
                for _ in 0..3 {
                    let mut next = prev.clone();
                    for &d in &evidence.cycle_digits {
                        next = row_times_matrix(&next, &rep.mats[d as usize], rep.dim);
                    }
                    assert!(dominates(&next, &prev));
                    prev = next;
                }
            }
            SynthesisOutcome::CapExceeded { states_explored } => {
                panic!("expected unboundedness evidence, exhausted {states_explored}")
            }
            SynthesisOutcome::Bounded(_) => panic!("primitive counts are not bounded"),
        }
    }

    #[test]
    fn infinite_partner_sets_are_rejected() {
        // n <= i: every n has infinitely many partners
        let session = crate::predicate::Session::new(2);
        let pred = session.compile_str("n <= i").unwrap();
        let pair = pred.reordered(&["n", "i"]).unwrap().into_automaton();
        match LinearRepresentation::from_pair_automaton(&pair, 1) {
            Err(crate::Error::DivergentCount(witness)) => {
                assert!(!witness.is_empty());
            }
            other => panic!("expected a divergence error, got {other:?}"),
        }
    }

    #[test]
    fn cap_is_respected() {
        let t = SequenceDfao::builtin("t").unwrap();
        let pair = counting_pair_automaton(&t, CountKind::Lyndon, &limits()).unwrap();
        let rep = LinearRepresentation::from_pair_automaton(&pair, 1).unwrap();
        match rep.synthesize_bounded(2) {
            SynthesisOutcome::CapExceeded { states_explored } => {
                assert!(states_explored <= 2);
            }
            other => panic!("expected cap exhaustion, got {other:?}"),
        }
    }
}
