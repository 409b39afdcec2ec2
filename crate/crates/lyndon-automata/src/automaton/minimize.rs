//! Minimization by partition refinement and canonical renumbering.

use std::collections::HashMap;

use super::Automaton;

pub fn minimize(a: &Automaton) -> Automaton {
    let syms = a.alphabet.symbol_count();

    // Restrict to states reachable from the initial state.
    let n = a.n_states();
    let mut reach_id = vec![u32::MAX; n];
    let mut order: Vec<u32> = Vec::new();
    reach_id[a.initial as usize] = 0;
    order.push(a.initial);
    let mut head = 0;
    while head < order.len() {
        let q = order[head] as usize;
        head += 1;
        for s in 0..syms {
            let t = a.transitions[q * syms + s];
            if reach_id[t as usize] == u32::MAX {
                reach_id[t as usize] = order.len() as u32;
                order.push(t);
            }
        }
    }
    let rn = order.len();

    // Moore refinement on the reachable part, seeded by acceptance.
    let mut class: Vec<u32> = order
        .iter()
        .map(|&q| u32::from(a.accepting[q as usize]))
        .collect();
    let mut n_classes = 2usize;
    loop {
        let mut table: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut next = vec![0u32; rn];
        for i in 0..rn {
            let q = order[i] as usize;
            let mut sig = Vec::with_capacity(syms + 1);
            sig.push(class[i]);
            for s in 0..syms {
                let t = a.transitions[q * syms + s] as usize;
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
        if n_classes == rn {
            break;
        }
    }

    // Quotient automaton, then canonical BFS renumbering.
    let mut repr = vec![u32::MAX; n_classes];
    for i in 0..rn {
        let c = class[i] as usize;
        if repr[c] == u32::MAX {
            repr[c] = order[i];
        }
    }
    let initial_class = class[0];

    let mut canon = vec![u32::MAX; n_classes];
    let mut canon_order: Vec<u32> = Vec::new();
    canon[initial_class as usize] = 0;
    canon_order.push(initial_class);
    let mut head = 0;
    let mut transitions = Vec::with_capacity(n_classes * syms);
    let mut accepting = Vec::with_capacity(n_classes);
    while head < canon_order.len() {
        let c = canon_order[head] as usize;
        head += 1;
        let q = repr[c] as usize;
        accepting.push(a.accepting[q]);
        for s in 0..syms {
            let t = a.transitions[q * syms + s] as usize;
            let tc = class[reach_id[t] as usize];
            if canon[tc as usize] == u32::MAX {
                canon[tc as usize] = canon_order.len() as u32;
                canon_order.push(tc);
            }
            transitions.push(canon[tc as usize]);
        }
    }

    Automaton::from_flat(a.alphabet, 0, accepting, transitions)
}
