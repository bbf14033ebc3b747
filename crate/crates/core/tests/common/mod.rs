//! Oracles for integration tests, written without the simulator or the
//! library's group arithmetic.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use grpaut::algebra::Element;
use grpaut::automaton::GroupAutomaton;
use grpaut::simulator::Verdict;

/// Depth-first run enumeration with a best-steps memo. Register values are
/// recomputed from the label words, not taken from the automaton's cache.
///
/// Accepted when some run of at most `t` steps ends accepting at the end of
/// the input with the identity. Otherwise exhausted when a configuration
/// first reached in exactly `t` steps sits at the end of the input in an
/// accepting state and could still take an ε-move from which acceptance is
/// reachable; rejected else.
pub fn dfs_verdict(a: &GroupAutomaton, input: &[usize], t: usize) -> (Verdict, Option<usize>) {
    let spec = a.spec();
    let n = input.len();
    let values: Vec<Element> = a
        .transitions()
        .iter()
        .map(|tr| spec.eval_letters(&tr.label).expect("label evaluates"))
        .collect();
    let mut best: HashMap<(usize, usize, Element), usize> = HashMap::new();
    let mut stack = vec![(a.initial(), 0usize, spec.identity(), 0usize)];
    while let Some((q, pos, g, steps)) = stack.pop() {
        let key = (q, pos, g.clone());
        if best.get(&key).is_some_and(|&s| s <= steps) {
            continue;
        }
        best.insert(key, steps);
        if steps == t {
            continue;
        }
        for (i, tr) in a.transitions().iter().enumerate() {
            if tr.from != q {
                continue;
            }
            let next = match tr.symbol {
                None => pos,
                Some(s) if pos < n && input[pos] == s => pos + 1,
                Some(_) => continue,
            };
            let h = spec.mul(&g, &values[i]).expect("register product");
            stack.push((tr.to, next, h, steps + 1));
        }
    }
    let accepting = |q: usize| a.is_accepting(q);
    let min = best
        .iter()
        .filter(|((q, pos, g), _)| *pos == n && accepting(*q) && spec.is_identity(g))
        .map(|(_, &s)| s)
        .min();
    if min.is_some() {
        return (Verdict::Accepted, min);
    }
    // states from which an accepting state is reachable by ε-moves alone
    let mut live: HashSet<usize> = (0..a.state_count()).filter(|&q| accepting(q)).collect();
    loop {
        let before = live.len();
        for tr in a.transitions() {
            if tr.symbol.is_none() && live.contains(&tr.to) {
                live.insert(tr.from);
            }
        }
        if live.len() == before {
            break;
        }
    }
    let cut_off = best.iter().any(|((q, pos, _), &s)| {
        s == t
            && *pos == n
            && accepting(*q)
            && a
                .transitions()
                .iter()
                .any(|tr| tr.from == *q && tr.symbol.is_none() && live.contains(&tr.to))
    });
    if cut_off {
        (Verdict::BudgetExhausted, None)
    } else {
        (Verdict::RejectedWithinBudget, None)
    }
}

/// All words over `0..k` of length at most `max_len`.
pub fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..k {
                let mut v: Vec<usize> = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Free-group word with letters `±1, ±2, …`, freely reduced.
pub fn free_reduce(word: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in word {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Nonempty freely reduced words over `±1, ±2` of length at most `max_len`.
pub fn reduced_words_f2(max_len: usize) -> Vec<Vec<i32>> {
    let letters = [1, -1, 2, -2];
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub type M2 = [[i128; 2]; 2];

pub fn mul2(a: &M2, b: &M2) -> M2 {
    let mut c = [[0i128; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

pub type M3 = [[i64; 3]; 3];

pub const I3: M3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

pub fn mul3(a: &M3, b: &M3) -> M3 {
    let mut c = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            c[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

/// Unitriangular image of `(x, y, z)` under `(x,y,z)(x',y',z') =
/// (x+x', y+y', z+z'+y·x')`.
pub fn heis_matrix(x: i64, y: i64, z: i64) -> M3 {
    [[1, y, z], [0, 1, x], [0, 0, 1]]
}

/// Ball sizes `g(0..=radius)` by scanning every word over `letters` up to
/// the radius; elements are compared through `key`.
pub fn brute_force_growth<E: Clone, K: std::hash::Hash + Eq>(
    identity: E,
    letters: &[E],
    radius: usize,
    mul: impl Fn(&E, &E) -> E,
    key: impl Fn(&E) -> K,
) -> Vec<usize> {
    let mut seen: HashSet<K> = HashSet::new();
    seen.insert(key(&identity));
    let mut sizes = vec![1];
    let mut layer = vec![identity];
    for _ in 0..radius {
        let mut next = Vec::new();
        for g in &layer {
            for l in letters {
                next.push(mul(g, l));
            }
        }
        for g in &next {
            seen.insert(key(g));
        }
        sizes.push(seen.len());
        layer = next;
    }
    sizes
}
