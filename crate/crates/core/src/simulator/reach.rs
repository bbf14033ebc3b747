use std::collections::{BTreeSet, HashMap, HashSet};

use super::{Limits, SimError};
use crate::algebra::Element;
use crate::automaton::GroupAutomaton;

/// Register values reachable within `k` steps on some input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReachableSet {
    pub steps: usize,
    /// Each register with the fewest steps that produced it, sorted by
    /// steps then canonical form.
    pub registers: Vec<(Element, usize)>,
    /// Number of distinct `(state, register)` configurations visited.
    pub configurations: usize,
}

impl ReachableSet {
    pub fn len(&self) -> usize {
        self.registers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.registers.is_empty()
    }

    pub fn keys(&self) -> BTreeSet<Vec<u8>> {
        self.registers.iter().map(|(g, _)| g.canonical_key()).collect()
    }
}

/// Every register value over all inputs and all runs of at most `k` steps;
/// the symbol read by each transition is a free choice.
pub fn reachable_registers(a: &GroupAutomaton, k: usize, limits: Limits) -> Result<ReachableSet, SimError> {
    let spec = a.spec();
    let mut seen: HashSet<(usize, Element)> = HashSet::new();
    let mut best: HashMap<Element, usize> = HashMap::new();
    let start = (a.initial(), spec.identity());
    best.insert(start.1.clone(), 0);
    seen.insert(start.clone());
    let mut frontier = vec![start];
    for level in 1..=k {
        let mut next = Vec::new();
        for (q, g) in &frontier {
            for &t in a.outgoing(*q) {
                let h = spec.mul(g, a.value(t))?;
                let cfg = (a.transitions()[t].to, h);
                if seen.contains(&cfg) {
                    continue;
                }
                if seen.len() >= limits.max_configurations {
                    return Err(SimError::ConfigurationCap(limits.max_configurations));
                }
                best.entry(cfg.1.clone()).or_insert(level);
                seen.insert(cfg.clone());
                next.push(cfg);
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    let mut registers: Vec<(Element, usize)> = best.into_iter().collect();
    registers.sort_by(|(g, s), (h, t)| s.cmp(t).then_with(|| g.cmp(h)));
    Ok(ReachableSet {
        steps: k,
        registers,
        configurations: seen.len(),
    })
}
