//! Budget-bounded nondeterministic execution of group automata.
//!
//! A configuration is `(state, position, register)`. Runs are explored
//! breadth-first, one step level at a time, so the first accepting
//! configuration found carries a minimum-length witness.

mod audit;
mod enumerate;
mod free;
mod reach;

use std::collections::{HashSet, VecDeque};
use std::fmt::{self, Write as _};

use indexmap::IndexSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element};
use crate::automaton::GroupAutomaton;

pub use audit::{audit_strong, audit_weak, StrongReport, StrongViolation, WeakReport, WeakRow};
pub use free::shortest_accepting_run;
pub use enumerate::{enumerate, words_up_to, EnumRow};
pub use reach::{reachable_registers, ReachableSet};

/// Time bound `t(n)`: affine `alpha·n + beta` or a fixed cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    Affine { alpha: usize, beta: usize },
    Cap(usize),
}

impl Budget {
    pub fn affine(alpha: usize, beta: usize) -> Result<Budget, SimError> {
        if alpha == 0 && beta == 0 {
            return Err(SimError::BadBudget("both coefficients are zero".into()));
        }
        Ok(Budget::Affine { alpha, beta })
    }

    pub fn steps(&self, n: usize) -> usize {
        match *self {
            Budget::Affine { alpha, beta } => alpha.saturating_mul(n).saturating_add(beta),
            Budget::Cap(c) => c,
        }
    }

    /// Parses `a,b` (affine) or a bare integer (cap).
    pub fn parse(text: &str) -> Result<Budget, SimError> {
        let bad = || SimError::BadBudget(text.to_string());
        match text.split_once(',') {
            Some((a, b)) => Budget::affine(
                a.trim().parse().map_err(|_| bad())?,
                b.trim().parse().map_err(|_| bad())?,
            ),
            None => Ok(Budget::Cap(text.trim().parse().map_err(|_| bad())?)),
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::Affine { alpha: 2, beta: 16 }
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Budget::Affine { alpha, beta } => write!(f, "{alpha}n+{beta}"),
            Budget::Cap(c) => write!(f, "{c}"),
        }
    }
}

/// Resource caps. Exceeding one is an error, never a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_configurations: usize,
    pub max_words: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_configurations: 5_000_000,
            max_words: 2_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("configuration cap of {0} exceeded")]
    ConfigurationCap(usize),
    #[error("enumeration cap of {limit} words exceeded ({requested} requested)")]
    EnumerationCap { limit: usize, requested: u128 },
    #[error("invalid budget `{0}`")]
    BadBudget(String),
    #[error("register group is not free")]
    NotFree,
    #[error("input symbol index {0} outside the alphabet")]
    BadInput(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Verdict {
    Accepted,
    RejectedWithinBudget,
    BudgetExhausted,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Accepted => "accepted",
            Verdict::RejectedWithinBudget => "rejected",
            Verdict::BudgetExhausted => "exhausted",
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub budget: usize,
    pub configurations: usize,
    pub distinct_registers: usize,
    pub min_accepting_steps: Option<usize>,
    /// Successors dropped because no completion fits in the budget.
    pub pruned: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunResult {
    pub verdict: Verdict,
    /// Transition indices of a minimum-length accepting run.
    pub trace: Option<Vec<usize>>,
    pub stats: RunStats,
}

struct Node<'a> {
    state: usize,
    pos: usize,
    register: &'a Element,
}

type Configs = IndexSet<(usize, usize, Element)>;

fn node(configs: &Configs, id: usize) -> Node<'_> {
    let (state, pos, register) = configs.get_index(id).expect("known configuration");
    Node {
        state: *state,
        pos: *pos,
        register,
    }
}

/// Minimum number of steps from `(state, pos)` to an accepting state at
/// the end of the input, ignoring the register.
fn distance_to_accept(a: &GroupAutomaton, input: &[usize]) -> Vec<Vec<usize>> {
    let n = input.len();
    let mut reverse = vec![Vec::new(); a.state_count()];
    for t in a.transitions() {
        reverse[t.to].push((t.from, t.symbol));
    }
    let mut dist = vec![vec![usize::MAX; n + 1]; a.state_count()];
    let mut queue = VecDeque::new();
    for q in a.accepting() {
        dist[q][n] = 0;
        queue.push_back((q, n));
    }
    while let Some((q, i)) = queue.pop_front() {
        let d = dist[q][i] + 1;
        for &(p, sym) in &reverse[q] {
            let j = match sym {
                None => i,
                Some(s) if i > 0 && input[i - 1] == s => i - 1,
                Some(_) => continue,
            };
            if dist[p][j] == usize::MAX {
                dist[p][j] = d;
                queue.push_back((p, j));
            }
        }
    }
    dist
}

/// Transition taken, then the new state, position and register.
type Successor = (usize, usize, usize, Element);

/// Successor configurations of `node` admitted under `budget` at `level+1`.
fn expand(
    a: &GroupAutomaton,
    input: &[usize],
    dist: &[Vec<usize>],
    budget: usize,
    level: usize,
    node: &Node<'_>,
) -> Result<(Vec<Successor>, usize), AlgebraError> {
    let mut out = Vec::new();
    let mut pruned = 0;
    for &t in a.outgoing(node.state) {
        let tr = &a.transitions()[t];
        let pos = match tr.symbol {
            None => node.pos,
            Some(s) if node.pos < input.len() && input[node.pos] == s => node.pos + 1,
            Some(_) => continue,
        };
        let d = dist[tr.to][pos];
        if d == usize::MAX {
            continue;
        }
        if level + 1 + d > budget {
            pruned += 1;
            continue;
        }
        let register = a.spec().mul(node.register, a.value(t))?;
        out.push((t, tr.to, pos, register));
    }
    Ok((out, pruned))
}

/// Decides whether `a` has an accepting run on `input` of at most
/// `budget.steps(n)` transitions.
///
/// `RejectedWithinBudget` means no run of length within the budget accepts
/// and no surviving configuration could continue past the budget;
/// `BudgetExhausted` means the budget cut off a configuration that still
/// had a move towards acceptance.
pub fn run(
    a: &GroupAutomaton,
    input: &[usize],
    budget: Budget,
    limits: Limits,
) -> Result<RunResult, SimError> {
    if let Some(&s) = input.iter().find(|&&s| s >= a.alphabet().len()) {
        return Err(SimError::BadInput(s));
    }
    let n = input.len();
    let cap = budget.steps(n);
    let dist = distance_to_accept(a, input);
    let mut stats = RunStats {
        budget: cap,
        ..RunStats::default()
    };

    let start = a.initial();
    if dist[start][0] == usize::MAX || dist[start][0] > cap {
        return Ok(RunResult {
            verdict: Verdict::RejectedWithinBudget,
            trace: None,
            stats,
        });
    }

    let mut configs = Configs::new();
    configs.insert((start, 0, a.spec().identity()));
    let mut parents: Vec<Option<(usize, usize)>> = vec![None];
    let mut frontier = vec![0usize];
    let mut level = 0usize;
    let mut exhausted = false;

    loop {
        if let Some(&hit) = frontier.iter().find(|&&id| {
            let node = node(&configs, id);
            node.pos == n && a.is_accepting(node.state) && a.spec().is_identity(node.register)
        }) {
            stats.configurations = configs.len();
            stats.distinct_registers = count_registers(&configs);
            stats.min_accepting_steps = Some(level);
            return Ok(RunResult {
                verdict: Verdict::Accepted,
                trace: Some(trace_of(&parents, hit)),
                stats,
            });
        }
        if frontier.is_empty() {
            break;
        }
        if level == cap {
            // Anything still able to move towards acceptance was cut off.
            exhausted = frontier.iter().any(|&id| {
                let node = node(&configs, id);
                a.outgoing(node.state).iter().any(|&t| {
                    let tr = &a.transitions()[t];
                    let pos = match tr.symbol {
                        None => node.pos,
                        Some(s) if node.pos < n && input[node.pos] == s => node.pos + 1,
                        Some(_) => return false,
                    };
                    dist[tr.to][pos] != usize::MAX
                })
            });
            break;
        }

        let expanded: Vec<_> = if frontier.len() >= 64 {
            frontier
                .par_iter()
                .map(|&id| expand(a, input, &dist, cap, level, &node(&configs, id)))
                .collect::<Result<_, _>>()?
        } else {
            frontier
                .iter()
                .map(|&id| expand(a, input, &dist, cap, level, &node(&configs, id)))
                .collect::<Result<_, _>>()?
        };

        let mut next = Vec::new();
        for (&parent, (succs, pruned)) in frontier.iter().zip(expanded) {
            stats.pruned += pruned;
            for (t, state, pos, register) in succs {
                let (id, fresh) = configs.insert_full((state, pos, register));
                if !fresh {
                    continue;
                }
                if configs.len() > limits.max_configurations {
                    return Err(SimError::ConfigurationCap(limits.max_configurations));
                }
                parents.push(Some((parent, t)));
                next.push(id);
            }
        }
        frontier = next;
        level += 1;
    }

    stats.configurations = configs.len();
    stats.distinct_registers = count_registers(&configs);
    Ok(RunResult {
        verdict: if exhausted {
            Verdict::BudgetExhausted
        } else {
            Verdict::RejectedWithinBudget
        },
        trace: None,
        stats,
    })
}

fn count_registers(configs: &Configs) -> usize {
    configs.iter().map(|(_, _, g)| g).collect::<HashSet<_>>().len()
}

fn trace_of(parents: &[Option<(usize, usize)>], mut id: usize) -> Vec<usize> {
    let mut out = Vec::new();
    while let Some((parent, t)) = parents[id] {
        out.push(t);
        id = parent;
    }
    out.reverse();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplayStep {
    pub transition: usize,
    pub register: Element,
}

/// Replays a trace from the initial configuration, returning the register
/// after each step, and whether it ends in an accepting configuration.
pub fn replay(
    a: &GroupAutomaton,
    input: &[usize],
    trace: &[usize],
) -> Result<(Vec<ReplayStep>, bool), String> {
    let mut state = a.initial();
    let mut pos = 0;
    let mut register = a.spec().identity();
    let mut steps = Vec::with_capacity(trace.len());
    for (i, &t) in trace.iter().enumerate() {
        let tr = a
            .transitions()
            .get(t)
            .ok_or_else(|| format!("step {i}: no transition {t}"))?;
        if tr.from != state {
            return Err(format!("step {i}: transition leaves {} not {}", tr.from, state));
        }
        if let Some(s) = tr.symbol {
            if input.get(pos) != Some(&s) {
                return Err(format!("step {i}: symbol does not match input"));
            }
            pos += 1;
        }
        state = tr.to;
        register = a.spec().mul(&register, a.value(t)).map_err(|e| e.to_string())?;
        steps.push(ReplayStep {
            transition: t,
            register: register.clone(),
        });
    }
    let accepted = pos == input.len() && a.is_accepting(state) && a.spec().is_identity(&register);
    Ok((steps, accepted))
}

/// One line per step, `state --symbol/label--> state ; register=<literal>`,
/// followed by a `key=value` stats block.
pub fn format_run(a: &GroupAutomaton, input: &[usize], result: &RunResult) -> String {
    let mut out = String::new();
    if let Some(trace) = &result.trace {
        let (steps, _) = replay(a, input, trace).expect("simulator traces replay");
        for step in steps {
            let t = &a.transitions()[step.transition];
            let _ = writeln!(
                out,
                "{} --{}/{}--> {} ; register={}",
                a.states()[t.from],
                t.symbol.map_or("eps", |s| a.alphabet()[s].as_str()),
                a.spec().format_word(&t.label),
                a.states()[t.to],
                step.register
            );
        }
    }
    let s = &result.stats;
    let _ = writeln!(out, "verdict={}", result.verdict);
    let _ = writeln!(out, "input_length={}", input.len());
    let _ = writeln!(out, "budget={}", s.budget);
    let _ = writeln!(out, "configurations={}", s.configurations);
    let _ = writeln!(out, "distinct_registers={}", s.distinct_registers);
    let _ = writeln!(
        out,
        "min_accepting_steps={}",
        s.min_accepting_steps.map_or("none".to_string(), |v| v.to_string())
    );
    let _ = writeln!(out, "pruned={}", s.pruned);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::parse;

    const UPOW: &str = "group bs12\nalphabet a\nstates s0 s1 s2 s3\ninitial s0\naccept s3\n\
        trans s0 eps s0 : B^-1 A^-1\ntrans s0 a s1 : _\ntrans s1 a s1 : A\n\
        trans s1 eps s2 : _\ntrans s2 eps s2 : B\ntrans s2 eps s3 : _\n";

    #[test]
    fn upow_verdicts() {
        let a = parse(UPOW).unwrap();
        let b = Budget::affine(4, 8).unwrap();
        let r = run(&a, &[0; 4], b, Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        let (_, ok) = replay(&a, &[0; 4], r.trace.as_ref().unwrap()).unwrap();
        assert!(ok);
        // i = 2 pre-steps, 4 reads, 1 bridge, k = 2 halvings, 1 bridge
        assert_eq!(r.stats.min_accepting_steps, Some(10));
        let r = run(&a, &[0; 3], b, Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::RejectedWithinBudget);
    }

    #[test]
    fn empty_input_at_accepting_start() {
        let a = parse("group free 1\nalphabet a\nstates p\ninitial p\naccept p\ntrans p a p : x1\n").unwrap();
        let r = run(&a, &[], Budget::Cap(0), Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
        assert_eq!(r.trace, Some(vec![]));
    }

    #[test]
    fn exhausted_when_cut_off() {
        // p accepts at the end of input only after an ε-move it cannot afford.
        let a = parse(
            "group abelian 1\nalphabet a\nstates p q\ninitial p\naccept p q\n\
             trans p a p : e1\ntrans p eps q : e1^-1\ntrans q eps q : e1^-1\n",
        )
        .unwrap();
        let r = run(&a, &[0, 0], Budget::Cap(2), Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::BudgetExhausted);
        let r = run(&a, &[0, 0], Budget::Cap(4), Limits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Accepted);
    }

    #[test]
    fn configuration_cap() {
        let a = parse(UPOW).unwrap();
        let limits = Limits {
            max_configurations: 3,
            ..Limits::default()
        };
        let err = run(&a, &[0; 8], Budget::affine(4, 8).unwrap(), limits).unwrap_err();
        assert_eq!(err, SimError::ConfigurationCap(3));
    }

    #[test]
    fn budget_parse() {
        assert_eq!(Budget::parse("4,8").unwrap().steps(3), 20);
        assert_eq!(Budget::parse("7").unwrap().steps(100), 7);
        assert!(Budget::parse("0,0").is_err());
        assert!(Budget::parse("x").is_err());
        assert_eq!(Budget::default().steps(2), 20);
    }

    #[test]
    fn trace_format() {
        let a = parse(UPOW).unwrap();
        let r = run(&a, &[0], Budget::affine(4, 8).unwrap(), Limits::default()).unwrap();
        let text = format_run(&a, &[0], &r);
        assert!(text.starts_with("s0 --a/_--> s1 ; register=[[1,0],[0,1]]\n"));
        assert!(text.contains("verdict=accepted\n"));
    }
}
