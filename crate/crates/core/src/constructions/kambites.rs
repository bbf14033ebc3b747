use super::ConstructionError;
use crate::algebra::{Element, GroupKind, GroupSpec, Letter, PolyFn};
use crate::automaton::{GroupAutomaton, Transition};

enum Move {
    Push(u32),
    Pop(u32),
    Stay,
}

fn classify(value: &Element) -> Option<Move> {
    match value {
        Element::Poly(PolyFn::Map { pop, push }) => match (pop.as_slice(), push.as_slice()) {
            ([], []) => Some(Move::Stay),
            ([], [x]) => Some(Move::Push(*x)),
            ([x], []) => Some(Move::Pop(*x)),
            _ => None,
        },
        _ => None,
    }
}

/// Converts an ε-free automaton over the polycyclic monoid on `k` symbols
/// into one over the free group of rank `k + 1`, whose last generator is
/// the padding letter `#` (bound as `h`).
///
/// Each state `q` becomes `q+` and `q-`. A push of `x` on `p → q` becomes
/// `p+ → q+ : x #`, a pop becomes `p- → q+ : x^-1 #`, an identity move
/// becomes `p+ → q+ : _`; every state gets the bridge `q+ → q- : _` and the
/// loop `q- → q- : #^-1`. The start is `q0+` and the accepting states are
/// the `q-` copies of the original ones.
pub fn kambites_convert(m: &GroupAutomaton) -> Result<GroupAutomaton, ConstructionError> {
    let k = match m.spec().kind() {
        GroupKind::Polycyclic(k) => *k,
        other => return Err(ConstructionError::NotPolycyclic(other.to_string())),
    };
    let mut spec = GroupSpec::new(GroupKind::Free(k + 1));
    let pad_name = format!("x{}", k + 1);
    let pad_element = spec.generator(spec.generator_index(&pad_name).expect("builtin")).clone();
    let pad = spec.bind("h", pad_element)?;
    let letter = |x: u32, inverse: bool| Letter::new(x as usize - 1, inverse);

    let n = m.state_count();
    let plus = |q: usize| q;
    let minus = |q: usize| n + q;
    let mut states: Vec<String> = m.states().iter().map(|q| format!("{q}+")).collect();
    states.extend(m.states().iter().map(|q| format!("{q}-")));

    let mut transitions = Vec::new();
    for (i, t) in m.transitions().iter().enumerate() {
        if t.symbol.is_none() {
            return Err(ConstructionError::EpsilonTransition(m.format_transition(t)));
        }
        let (from, label) = match classify(m.value(i)) {
            Some(Move::Push(x)) => (plus(t.from), vec![letter(x, false), Letter::new(pad, false)]),
            Some(Move::Pop(x)) => (minus(t.from), vec![letter(x, true), Letter::new(pad, false)]),
            Some(Move::Stay) => (plus(t.from), Vec::new()),
            None => return Err(ConstructionError::CompoundLabel(m.format_transition(t))),
        };
        transitions.push(Transition {
            from,
            symbol: t.symbol,
            to: plus(t.to),
            label,
        });
    }
    for q in 0..n {
        transitions.push(Transition {
            from: plus(q),
            symbol: None,
            to: minus(q),
            label: Vec::new(),
        });
        transitions.push(Transition {
            from: minus(q),
            symbol: None,
            to: minus(q),
            label: vec![Letter::new(pad, true)],
        });
    }
    Ok(GroupAutomaton::new(
        spec,
        states,
        m.alphabet().to_vec(),
        transitions,
        plus(m.initial()),
        m.accepting().map(minus).collect::<Vec<_>>(),
    )?)
}
