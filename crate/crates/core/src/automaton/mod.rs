//! Group automata: states, alphabet, ε-or-symbol transitions labeled by
//! generator words, an initial state and accepting states.

mod parse;
mod validate;

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GroupSpec, Letter};

pub use parse::parse;
pub use validate::{validate, Finding, FindingKind, Severity};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        source: Box<AutomatonError>,
    },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
    #[error("state index {0} out of range")]
    StateIndex(usize),
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

impl AutomatonError {
    /// Strips line context.
    pub fn root(&self) -> &AutomatonError {
        match self {
            AutomatonError::AtLine { source, .. } => source.root(),
            other => other,
        }
    }
}

/// One transition; `symbol == None` is an ε-move.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub from: usize,
    pub symbol: Option<usize>,
    pub to: usize,
    pub label: Vec<Letter>,
}

/// Transition description used when building an automaton by name.
#[derive(Clone, Debug)]
pub struct TransitionSpec<'a> {
    pub from: &'a str,
    pub symbol: Option<&'a str>,
    pub to: &'a str,
    pub label: Vec<Letter>,
}

#[derive(Clone, Debug)]
pub struct GroupAutomaton {
    spec: GroupSpec,
    states: Vec<String>,
    alphabet: Vec<String>,
    transitions: Vec<Transition>,
    values: Vec<Element>,
    outgoing: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
    label_gen_len_max: usize,
}

impl PartialEq for GroupAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
            && self.states == other.states
            && self.alphabet == other.alphabet
            && self.transitions == other.transitions
            && self.initial == other.initial
            && self.accepting == other.accepting
    }
}

impl Eq for GroupAutomaton {}

impl GroupAutomaton {
    /// Validates and assembles an automaton. Transitions are sorted into a
    /// canonical order and duplicates dropped; every label is evaluated.
    pub fn new(
        spec: GroupSpec,
        states: Vec<String>,
        alphabet: Vec<String>,
        transitions: Vec<Transition>,
        initial: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self, AutomatonError> {
        let mut seen = BTreeSet::new();
        for s in &states {
            if !seen.insert(s.as_str()) {
                return Err(AutomatonError::DuplicateState(s.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for s in &alphabet {
            if !seen.insert(s.as_str()) || s == "eps" {
                return Err(AutomatonError::DuplicateSymbol(s.clone()));
            }
        }
        let n = states.len();
        if initial >= n {
            return Err(AutomatonError::StateIndex(initial));
        }
        let mut accept_flags = vec![false; n];
        for q in accepting {
            *accept_flags.get_mut(q).ok_or(AutomatonError::StateIndex(q))? = true;
        }
        let mut transitions = transitions;
        for t in &transitions {
            if t.from >= n {
                return Err(AutomatonError::StateIndex(t.from));
            }
            if t.to >= n {
                return Err(AutomatonError::StateIndex(t.to));
            }
            if let Some(s) = t.symbol {
                if s >= alphabet.len() {
                    return Err(AutomatonError::UnknownSymbol(format!("#{s}")));
                }
            }
        }
        transitions.sort();
        transitions.dedup();
        let values = transitions
            .iter()
            .map(|t| spec.eval_letters(&t.label))
            .collect::<Result<Vec<_>, _>>()?;
        let mut outgoing = vec![Vec::new(); n];
        for (i, t) in transitions.iter().enumerate() {
            outgoing[t.from].push(i);
        }
        let label_gen_len_max = transitions.iter().map(|t| t.label.len()).max().unwrap_or(0);
        Ok(GroupAutomaton {
            spec,
            states,
            alphabet,
            transitions,
            values,
            outgoing,
            initial,
            accepting: accept_flags,
            label_gen_len_max,
        })
    }

    /// Builds an automaton from state and symbol names.
    pub fn from_names(
        spec: GroupSpec,
        states: &[&str],
        alphabet: &[&str],
        transitions: &[TransitionSpec<'_>],
        initial: &str,
        accepting: &[&str],
    ) -> Result<Self, AutomatonError> {
        let states: Vec<String> = states.iter().map(|s| s.to_string()).collect();
        let alphabet: Vec<String> = alphabet.iter().map(|s| s.to_string()).collect();
        let state = |name: &str| {
            states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| AutomatonError::UnknownState(name.to_string()))
        };
        let symbol = |name: &str| {
            alphabet
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| AutomatonError::UnknownSymbol(name.to_string()))
        };
        let ts = transitions
            .iter()
            .map(|t| {
                Ok(Transition {
                    from: state(t.from)?,
                    symbol: t.symbol.map(symbol).transpose()?,
                    to: state(t.to)?,
                    label: t.label.clone(),
                })
            })
            .collect::<Result<Vec<_>, AutomatonError>>()?;
        let initial = state(initial)?;
        let accepting = accepting.iter().map(|s| state(s)).collect::<Result<Vec<_>, _>>()?;
        GroupAutomaton::new(spec, states, alphabet, ts, initial, accepting)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// The evaluated register update of transition `idx`.
    pub fn value(&self, idx: usize) -> &Element {
        &self.values[idx]
    }

    /// Indices of transitions leaving `state`.
    pub fn outgoing(&self, state: usize) -> &[usize] {
        &self.outgoing[state]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    pub fn accepting(&self) -> impl Iterator<Item = usize> + '_ {
        self.accepting
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| a.then_some(i))
    }

    /// Longest generator word on any transition label.
    pub fn label_gen_len_max(&self) -> usize {
        self.label_gen_len_max
    }

    /// Every transition consumes an input symbol.
    pub fn is_real_time(&self) -> bool {
        self.transitions.iter().all(|t| t.symbol.is_some())
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.alphabet.iter().position(|s| s == name)
    }

    /// Generators that occur in some transition label, in spec order.
    pub fn label_generators(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self
            .transitions
            .iter()
            .flat_map(|t| t.label.iter().map(|l| l.generator))
            .collect();
        used.into_iter().collect()
    }

    /// Splits an input string into alphabet symbols. Whitespace-separated
    /// tokens are used when present; otherwise the longest matching symbol
    /// is taken at each position.
    pub fn parse_input(&self, text: &str) -> Result<Vec<usize>, AutomatonError> {
        parse_symbols(&self.alphabet, text)
    }

    pub fn format_input(&self, word: &[usize]) -> String {
        format_symbols(&self.alphabet, word)
    }

    pub fn format_transition(&self, t: &Transition) -> String {
        format!(
            "{} {} {} : {}",
            self.states[t.from],
            t.symbol.map_or("eps", |s| self.alphabet[s].as_str()),
            self.states[t.to],
            self.spec.format_word(&t.label)
        )
    }

    /// Canonical text form; `parse(serialize(a)) == a`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        writeln!(out, "group {}", self.spec.kind()).unwrap();
        for (name, g) in self.spec.user_generators() {
            writeln!(out, "gen {name} = {g}").unwrap();
        }
        writeln!(out, "alphabet {}", self.alphabet.join(" ").trim_end()).unwrap();
        writeln!(out, "states {}", self.states.join(" ")).unwrap();
        writeln!(out, "initial {}", self.states[self.initial]).unwrap();
        let acc: Vec<&str> = self.accepting().map(|q| self.states[q].as_str()).collect();
        writeln!(out, "accept {}", acc.join(" ")).unwrap();
        for t in &self.transitions {
            writeln!(out, "trans {}", self.format_transition(t)).unwrap();
        }
        // trailing spaces from empty lists are not significant
        out.lines().map(str::trim_end).collect::<Vec<_>>().join("\n") + "\n"
    }

    /// Rewrites every label of length `l > 1` as a chain of `l` transitions
    /// through fresh states; only the first link reads the symbol.
    pub fn split_labels(&self) -> Result<GroupAutomaton, AutomatonError> {
        let mut states = self.states.clone();
        let mut transitions = Vec::new();
        let mut fresh = 0usize;
        for t in &self.transitions {
            if t.label.len() <= 1 {
                transitions.push(t.clone());
                continue;
            }
            let mut prev = t.from;
            for (i, &letter) in t.label.iter().enumerate() {
                let next = if i + 1 == t.label.len() {
                    t.to
                } else {
                    let name = loop {
                        fresh += 1;
                        let candidate = format!("_split{fresh}");
                        if !states.contains(&candidate) {
                            break candidate;
                        }
                    };
                    states.push(name);
                    states.len() - 1
                };
                transitions.push(Transition {
                    from: prev,
                    symbol: if i == 0 { t.symbol } else { None },
                    to: next,
                    label: vec![letter],
                });
                prev = next;
            }
        }
        GroupAutomaton::new(
            self.spec.clone(),
            states,
            self.alphabet.clone(),
            transitions,
            self.initial,
            self.accepting().collect::<Vec<_>>(),
        )
    }
}

pub fn parse_symbols(alphabet: &[String], text: &str) -> Result<Vec<usize>, AutomatonError> {
    let lookup = |tok: &str| {
        alphabet
            .iter()
            .position(|s| s == tok)
            .ok_or_else(|| AutomatonError::UnknownSymbol(tok.to_string()))
    };
    if text.chars().any(char::is_whitespace) {
        return text.split_whitespace().map(lookup).collect();
    }
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let best = alphabet
            .iter()
            .enumerate()
            .filter(|(_, s)| !s.is_empty() && rest.starts_with(s.as_str()))
            .max_by_key(|(_, s)| s.len());
        match best {
            Some((i, s)) => {
                out.push(i);
                rest = &rest[s.len()..];
            }
            None => {
                let tok: String = rest.chars().take(1).collect();
                return Err(AutomatonError::UnknownSymbol(tok));
            }
        }
    }
    Ok(out)
}

pub fn format_symbols(alphabet: &[String], word: &[usize]) -> String {
    let sep = if alphabet.iter().all(|s| s.chars().count() == 1) {
        ""
    } else {
        " "
    };
    word.iter()
        .map(|&s| alphabet[s].as_str())
        .collect::<Vec<_>>()
        .join(sep)
}
