use std::collections::HashSet;

use rayon::prelude::*;

use super::{run, Budget, Limits, SimError, Verdict};
use crate::algebra::Element;
use crate::automaton::GroupAutomaton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumRow {
    pub word: Vec<usize>,
    pub verdict: Verdict,
    pub min_steps: Option<usize>,
}

fn word_count(symbols: usize, max_len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(symbols as u128);
    }
    total
}

/// All words over `0..symbols` of length at most `max_len`, in
/// length-lexicographic order.
pub fn words_up_to(symbols: usize, max_len: usize, limits: Limits) -> Result<Vec<Vec<usize>>, SimError> {
    let requested = word_count(symbols, max_len);
    if requested > limits.max_words as u128 {
        return Err(SimError::EnumerationCap {
            limit: limits.max_words,
            requested,
        });
    }
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for s in 0..symbols {
                let mut w = out[i].clone();
                w.push(s);
                out.push(w);
            }
        }
        start = end;
        if symbols == 0 {
            break;
        }
    }
    Ok(out)
}

/// Verdict for every word of length at most `max_len`, length-lex order.
pub fn enumerate(
    a: &GroupAutomaton,
    max_len: usize,
    budget: Budget,
    limits: Limits,
) -> Result<Vec<EnumRow>, SimError> {
    let symbols = a.alphabet().len();
    let requested = word_count(symbols, max_len);
    if requested > limits.max_words as u128 {
        return Err(SimError::EnumerationCap {
            limit: limits.max_words,
            requested,
        });
    }
    if a.is_real_time() {
        return enumerate_real_time(a, max_len, budget, limits);
    }
    let words = words_up_to(symbols, max_len, limits)?;
    words
        .into_par_iter()
        .map(|word| {
            let r = run(a, &word, budget, limits)?;
            Ok(EnumRow {
                word,
                verdict: r.verdict,
                min_steps: r.stats.min_accepting_steps,
            })
        })
        .collect()
}

/// Prefix-sharing scan for ε-free automata: every run on a word of length
/// `n` has exactly `n` steps, so the reachable `(state, register)` set at
/// each prefix decides every word.
fn enumerate_real_time(
    a: &GroupAutomaton,
    max_len: usize,
    budget: Budget,
    limits: Limits,
) -> Result<Vec<EnumRow>, SimError> {
    let mut by_len: Vec<Vec<EnumRow>> = vec![Vec::new(); max_len + 1];
    let root = vec![(a.initial(), a.spec().identity())];
    let mut word = Vec::new();
    let mut stored = 0usize;
    descend(a, max_len, budget, limits, &root, &mut word, &mut by_len, &mut stored)?;
    Ok(by_len.into_iter().flatten().collect())
}

#[allow(clippy::too_many_arguments)]
fn descend(
    a: &GroupAutomaton,
    max_len: usize,
    budget: Budget,
    limits: Limits,
    configs: &[(usize, Element)],
    word: &mut Vec<usize>,
    by_len: &mut [Vec<EnumRow>],
    stored: &mut usize,
) -> Result<(), SimError> {
    let n = word.len();
    let fits = budget.steps(n) >= n;
    let accepted = fits
        && configs
            .iter()
            .any(|(q, g)| a.is_accepting(*q) && a.spec().is_identity(g));
    by_len[n].push(EnumRow {
        word: word.clone(),
        verdict: if accepted {
            Verdict::Accepted
        } else {
            Verdict::RejectedWithinBudget
        },
        min_steps: accepted.then_some(n),
    });
    if n == max_len {
        return Ok(());
    }
    for s in 0..a.alphabet().len() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for (q, g) in configs {
            for &t in a.outgoing(*q) {
                let tr = &a.transitions()[t];
                if tr.symbol != Some(s) {
                    continue;
                }
                let h = a.spec().mul(g, a.value(t))?;
                if seen.insert((tr.to, h.clone())) {
                    next.push((tr.to, h));
                }
            }
        }
        *stored += next.len();
        if *stored > limits.max_configurations.saturating_mul(4) {
            return Err(SimError::ConfigurationCap(limits.max_configurations));
        }
        word.push(s);
        descend(a, max_len, budget, limits, &next, word, by_len, stored)?;
        word.pop();
        *stored -= next.len();
    }
    Ok(())
}
