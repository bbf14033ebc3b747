use std::collections::VecDeque;
use std::fmt;

use super::GroupAutomaton;
use crate::algebra::Element;

/// Cap on the number of simple ε-cycles examined.
const CYCLE_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Info,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FindingKind {
    Unreachable(String),
    Dead(String),
    /// A simple ε-cycle some rotation of which multiplies to the identity.
    IdentityEpsilonCycle(Vec<String>),
    /// An ε-cycle with a non-identity product (e.g. a pop loop).
    EpsilonLoop(Vec<String>),
    /// Cycle enumeration stopped at the cap.
    CycleCapReached,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub kind: FindingKind,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Info => "info",
            Severity::Warning => "warning",
        };
        match &self.kind {
            FindingKind::Unreachable(q) => write!(f, "{sev}: unreachable state {q}"),
            FindingKind::Dead(q) => write!(f, "{sev}: dead state {q}"),
            FindingKind::IdentityEpsilonCycle(c) => {
                write!(f, "{sev}: identity ε-cycle through {}", c.join(" -> "))
            }
            FindingKind::EpsilonLoop(c) => write!(f, "{sev}: ε-loop through {}", c.join(" -> ")),
            FindingKind::CycleCapReached => write!(f, "{sev}: ε-cycle scan truncated"),
        }
    }
}

fn closure(n: usize, start: &[usize], edges: impl Fn(usize) -> Vec<usize>) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = start.iter().copied().collect();
    for &s in start {
        seen[s] = true;
    }
    while let Some(q) = queue.pop_front() {
        for r in edges(q) {
            if !seen[r] {
                seen[r] = true;
                queue.push_back(r);
            }
        }
    }
    seen
}

/// Report-only structural checks. None of the findings is fatal.
pub fn validate(a: &GroupAutomaton) -> Vec<Finding> {
    let n = a.state_count();
    let mut findings = Vec::new();

    let forward = closure(n, &[a.initial()], |q| {
        a.outgoing(q).iter().map(|&t| a.transitions()[t].to).collect()
    });
    let mut reverse = vec![Vec::new(); n];
    for t in a.transitions() {
        reverse[t.to].push(t.from);
    }
    let accepting: Vec<usize> = a.accepting().collect();
    let backward = closure(n, &accepting, |q| reverse[q].clone());

    for q in 0..n {
        if !forward[q] {
            findings.push(Finding {
                severity: Severity::Warning,
                kind: FindingKind::Unreachable(a.states()[q].clone()),
            });
        } else if !backward[q] {
            findings.push(Finding {
                severity: Severity::Warning,
                kind: FindingKind::Dead(a.states()[q].clone()),
            });
        }
    }

    let mut cycles = Vec::new();
    let truncated = epsilon_cycles(a, &mut cycles);
    for cycle in cycles {
        let names: Vec<String> = cycle
            .iter()
            .map(|&t| a.states()[a.transitions()[t].from].clone())
            .collect();
        if some_rotation_is_identity(a, &cycle) {
            findings.push(Finding {
                severity: Severity::Warning,
                kind: FindingKind::IdentityEpsilonCycle(names),
            });
        } else {
            findings.push(Finding {
                severity: Severity::Info,
                kind: FindingKind::EpsilonLoop(names),
            });
        }
    }
    if truncated {
        findings.push(Finding {
            severity: Severity::Info,
            kind: FindingKind::CycleCapReached,
        });
    }
    findings
}

/// Simple cycles in the ε-subgraph as transition-index lists, each found
/// once from its least state. Returns true if the cap was hit.
fn epsilon_cycles(a: &GroupAutomaton, out: &mut Vec<Vec<usize>>) -> bool {
    let eps_out: Vec<Vec<usize>> = (0..a.state_count())
        .map(|q| {
            a.outgoing(q)
                .iter()
                .copied()
                .filter(|&t| a.transitions()[t].symbol.is_none())
                .collect()
        })
        .collect();
    for start in 0..a.state_count() {
        let mut on_path = vec![false; a.state_count()];
        let mut path = Vec::new();
        if dfs(a, &eps_out, start, start, &mut on_path, &mut path, out) {
            return true;
        }
    }
    false
}

fn dfs(
    a: &GroupAutomaton,
    eps_out: &[Vec<usize>],
    start: usize,
    q: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) -> bool {
    on_path[q] = true;
    for &t in &eps_out[q] {
        let to = a.transitions()[t].to;
        if to < start {
            continue;
        }
        path.push(t);
        if to == start {
            out.push(path.clone());
            if out.len() >= CYCLE_CAP {
                return true;
            }
        } else if !on_path[to] && dfs(a, eps_out, start, to, on_path, path, out) {
            return true;
        }
        path.pop();
    }
    on_path[q] = false;
    false
}

fn some_rotation_is_identity(a: &GroupAutomaton, cycle: &[usize]) -> bool {
    let spec = a.spec();
    (0..cycle.len()).any(|r| {
        let mut acc: Element = spec.identity();
        for i in 0..cycle.len() {
            let t = cycle[(r + i) % cycle.len()];
            acc = spec.mul(&acc, a.value(t)).expect("labels share the spec");
        }
        spec.is_identity(&acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::parse;

    #[test]
    fn unreachable_and_dead() {
        let a = parse(
            "group abelian 1\nalphabet a\nstates p q r\ninitial p\naccept r\n\
             trans p a q : e1\n",
        )
        .unwrap();
        let f = validate(&a);
        assert!(f.contains(&Finding {
            severity: Severity::Warning,
            kind: FindingKind::Unreachable("r".into())
        }));
        assert!(f.contains(&Finding {
            severity: Severity::Warning,
            kind: FindingKind::Dead("p".into())
        }));
    }

    #[test]
    fn identity_self_loop() {
        let a = parse("group trivial\nalphabet a\nstates p\ninitial p\naccept p\ntrans p eps p : _\n").unwrap();
        let f = validate(&a);
        assert!(matches!(f[0].kind, FindingKind::IdentityEpsilonCycle(_)));
        assert!(f[0].to_string().contains("identity ε-cycle"));
    }

    #[test]
    fn monoid_rotation_detected() {
        // P1 then Q1 is the identity; Q1 then P1 is not.
        let a = parse(
            "group polycyclic 1\nalphabet a\nstates p q\ninitial p\naccept p\n\
             trans q eps p : Q1\ntrans p eps q : P1\n",
        )
        .unwrap();
        let f = validate(&a);
        assert!(f.iter().any(|x| matches!(x.kind, FindingKind::IdentityEpsilonCycle(_))));
    }
}
