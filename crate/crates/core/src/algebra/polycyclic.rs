//! The polycyclic monoid: partial push/pop maps on strings.
//!
//! A non-zero element `(pop, push)` is the partial map `w·pop ↦ w·push`.
//! Stack symbols are 1-based indices.

use std::fmt;

/// Element of the polycyclic monoid in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyFn {
    /// The empty partial function; absorbing.
    Zero,
    Map { pop: Vec<u32>, push: Vec<u32> },
}

impl PolyFn {
    pub fn identity() -> Self {
        PolyFn::Map {
            pop: Vec::new(),
            push: Vec::new(),
        }
    }

    /// `P_x`: push `x`.
    pub fn push(x: u32) -> Self {
        PolyFn::Map {
            pop: Vec::new(),
            push: vec![x],
        }
    }

    /// `Q_x`: pop `x` (undefined unless the top is `x`).
    pub fn pop(x: u32) -> Self {
        PolyFn::Map {
            pop: vec![x],
            push: Vec::new(),
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, PolyFn::Map { pop, push } if pop.is_empty() && push.is_empty())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &PolyFn) -> PolyFn {
        let (PolyFn::Map { pop: u1, push: v1 }, PolyFn::Map { pop: u2, push: v2 }) = (self, next)
        else {
            return PolyFn::Zero;
        };
        if let Some(t) = v1.strip_suffix(u2.as_slice()) {
            // v1 = t·u2
            let mut push = t.to_vec();
            push.extend_from_slice(v2);
            PolyFn::Map {
                pop: u1.clone(),
                push,
            }
        } else if let Some(t) = u2.strip_suffix(v1.as_slice()) {
            // u2 = t·v1
            let mut pop = t.to_vec();
            pop.extend_from_slice(u1);
            PolyFn::Map {
                pop,
                push: v2.clone(),
            }
        } else {
            PolyFn::Zero
        }
    }

    /// Applies the partial function to a stack (top at the end).
    pub fn apply(&self, stack: &[u32]) -> Option<Vec<u32>> {
        match self {
            PolyFn::Zero => None,
            PolyFn::Map { pop, push } => {
                let rest = stack.strip_suffix(pop.as_slice())?;
                let mut out = rest.to_vec();
                out.extend_from_slice(push);
                Some(out)
            }
        }
    }

    pub fn max_symbol(&self) -> u32 {
        match self {
            PolyFn::Zero => 0,
            PolyFn::Map { pop, push } => pop.iter().chain(push).copied().max().unwrap_or(0),
        }
    }
}

fn join(symbols: &[u32]) -> String {
    symbols.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(".")
}

impl fmt::Display for PolyFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyFn::Zero => f.write_str("zero"),
            PolyFn::Map { pop, push } => match (pop.as_slice(), push.as_slice()) {
                ([], []) => f.write_str("e"),
                ([], [x]) => write!(f, "P{x}"),
                ([x], []) => write!(f, "Q{x}"),
                _ => write!(f, "poly({}|{})", join(pop), join(push)),
            },
        }
    }
}

fn parse_symbols(text: &str) -> Option<Vec<u32>> {
    if text.is_empty() {
        return Some(Vec::new());
    }
    text.split('.')
        .map(|s| s.parse().ok().filter(|&v: &u32| v >= 1))
        .collect()
}

/// Parses `e`, `zero`, `P<i>`, `Q<i>` or `poly(<pop>|<push>)`.
pub fn parse_poly(text: &str) -> Option<PolyFn> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    match text.as_str() {
        "e" => return Some(PolyFn::identity()),
        "zero" => return Some(PolyFn::Zero),
        _ => {}
    }
    if let Some(i) = text.strip_prefix('P') {
        return i.parse().ok().filter(|&v| v >= 1).map(PolyFn::push);
    }
    if let Some(i) = text.strip_prefix('Q') {
        return i.parse().ok().filter(|&v| v >= 1).map(PolyFn::pop);
    }
    let inner = text.strip_prefix("poly(")?.strip_suffix(')')?;
    let (pop, push) = inner.split_once('|')?;
    Some(PolyFn::Map {
        pop: parse_symbols(pop)?,
        push: parse_symbols(push)?,
    })
}
