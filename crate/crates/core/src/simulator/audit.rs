use rayon::prelude::*;

use super::{enumerate::words_up_to, run, Budget, Limits, SimError, Verdict};
use crate::automaton::GroupAutomaton;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakRow {
    pub word: Vec<usize>,
    pub bound: usize,
    /// Minimum accepting run length, if one fits in the bound.
    pub min_steps: Option<usize>,
    /// Minimum accepting run length found only by the extended search.
    pub beyond_bound: Option<usize>,
    /// The extended search hit the configuration cap.
    pub unresolved: bool,
}

impl WeakRow {
    pub fn flagged(&self) -> bool {
        self.beyond_bound.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakReport {
    pub rows: Vec<WeakRow>,
}

impl WeakReport {
    pub fn flagged(&self) -> impl Iterator<Item = &WeakRow> {
        self.rows.iter().filter(|r| r.flagged())
    }
}

/// Extended search bound used to look for accepting runs that miss `t(n)`.
pub fn extended_bound(t: usize) -> usize {
    t.saturating_mul(4).saturating_add(32)
}

/// Minimum accepting run length of each word under `t(n)`, flagging words
/// that are accepted only by a longer run (searched up to
/// [`extended_bound`]).
pub fn audit_weak(
    a: &GroupAutomaton,
    words: &[Vec<usize>],
    budget: Budget,
    limits: Limits,
) -> Result<WeakReport, SimError> {
    let rows = words
        .par_iter()
        .map(|word| {
            let bound = budget.steps(word.len());
            let r = run(a, word, budget, limits)?;
            let mut row = WeakRow {
                word: word.clone(),
                bound,
                min_steps: r.stats.min_accepting_steps,
                beyond_bound: None,
                unresolved: false,
            };
            if r.verdict != Verdict::Accepted {
                match run(a, word, Budget::Cap(extended_bound(bound)), limits) {
                    Ok(ext) => row.beyond_bound = ext.stats.min_accepting_steps,
                    Err(SimError::ConfigurationCap(_)) => row.unresolved = true,
                    Err(e) => return Err(e),
                }
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>, SimError>>()?;
    Ok(WeakReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongViolation {
    pub word: Vec<usize>,
    pub bound: usize,
    /// A run of `bound + 1` transitions (not necessarily accepting).
    pub run: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongReport {
    pub words_checked: usize,
    pub violations: Vec<StrongViolation>,
}

/// Looks for any run longer than `bound` on `word`. Register contents never
/// block a move, so runs are paths in the `(state, position)` graph.
fn long_run(a: &GroupAutomaton, word: &[usize], bound: usize) -> Option<Vec<usize>> {
    let width = word.len() + 1;
    let id = |q: usize, i: usize| q * width + i;
    let total = a.state_count() * width;
    let mut layers: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    let mut current = vec![false; total];
    current[id(a.initial(), 0)] = true;
    for _ in 0..=bound {
        let mut parents = vec![None; total];
        let mut next = vec![false; total];
        let mut any = false;
        for node in (0..total).filter(|&v| current[v]) {
            let (q, i) = (node / width, node % width);
            for &t in a.outgoing(q) {
                let tr = &a.transitions()[t];
                let j = match tr.symbol {
                    None => i,
                    Some(s) if i < word.len() && word[i] == s => i + 1,
                    Some(_) => continue,
                };
                let target = id(tr.to, j);
                if !next[target] {
                    next[target] = true;
                    parents[target] = Some((node, t));
                    any = true;
                }
            }
        }
        if !any {
            return None;
        }
        layers.push(parents);
        current = next;
    }
    let mut node = (0..total).find(|&v| current[v])?;
    let mut path = Vec::with_capacity(layers.len());
    for parents in layers.iter().rev() {
        let (prev, t) = parents[node].expect("layered parent");
        path.push(t);
        node = prev;
    }
    path.reverse();
    Some(path)
}

/// Checks the strong bound on every word up to `max_len`: any run, accepting
/// or not, still alive after `t(n)` steps is reported.
pub fn audit_strong(
    a: &GroupAutomaton,
    max_len: usize,
    budget: Budget,
    limits: Limits,
) -> Result<StrongReport, SimError> {
    let words = words_up_to(a.alphabet().len(), max_len, limits)?;
    let words_checked = words.len();
    let violations = words
        .into_par_iter()
        .filter_map(|word| {
            let bound = budget.steps(word.len());
            long_run(a, &word, bound).map(|run| StrongViolation { word, bound, run })
        })
        .collect();
    Ok(StrongReport {
        words_checked,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::parse;

    #[test]
    fn real_time_has_no_strong_violation() {
        let a = parse("group abelian 1\nalphabet a b\nstates p\ninitial p\naccept p\ntrans p a p : e1\ntrans p b p : e1^-1\n").unwrap();
        let r = audit_strong(&a, 6, Budget::affine(1, 0).unwrap(), Limits::default()).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.words_checked, 127);
    }

    #[test]
    fn identity_epsilon_loop_violates_every_bound() {
        let a = parse("group trivial\nalphabet a\nstates p\ninitial p\naccept p\ntrans p eps p : _\n").unwrap();
        for beta in [1, 5, 40] {
            let r = audit_strong(&a, 2, Budget::affine(3, beta).unwrap(), Limits::default()).unwrap();
            assert_eq!(r.violations.len(), 3);
            assert_eq!(r.violations[2].run.len(), 3 * 2 + beta + 1);
        }
    }

    #[test]
    fn weak_flag_for_slow_acceptance() {
        // accepts "a" only after three ε-steps
        let a = parse(
            "group abelian 1\nalphabet a\nstates p q\ninitial p\naccept q\n\
             trans p a q : e1\ntrans q eps q : e1^-1\ntrans p eps p : e1\ntrans p eps p : e1^-1\n",
        )
        .unwrap();
        let words = vec![vec![0]];
        let r = audit_weak(&a, &words, Budget::Cap(1), Limits::default()).unwrap();
        assert_eq!(r.rows[0].min_steps, None);
        assert_eq!(r.rows[0].beyond_bound, Some(2));
        assert_eq!(r.flagged().count(), 1);
    }
}
