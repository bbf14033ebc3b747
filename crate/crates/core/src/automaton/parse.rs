use super::{AutomatonError, GroupAutomaton, Transition};
use crate::algebra::{AlgebraError, Element, GroupKind, GroupSpec, Letter};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

impl Line<'_> {
    fn syntax(&self, column: usize, message: impl Into<String>) -> AutomatonError {
        AutomatonError::Syntax {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn wrap(&self, err: impl Into<AutomatonError>) -> AutomatonError {
        AutomatonError::AtLine {
            line: self.number,
            source: Box::new(err.into()),
        }
    }

    /// 1-based column of a subslice of this line.
    fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }
}

/// Parses the line-oriented automaton format.
///
/// ```text
/// group bs12
/// alphabet a
/// states s0 s1
/// initial s0
/// accept s1
/// trans s0 eps s0 : B^-1 A^-1
/// trans s0 a s1 : _
/// ```
pub fn parse(text: &str) -> Result<GroupAutomaton, AutomatonError> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, raw)| Line {
            number: i + 1,
            text: raw.split('#').next().unwrap_or(""),
        })
        .filter(|l| !l.text.trim().is_empty())
        .collect();

    let mut group_line = None;
    let mut gens = Vec::new();
    let mut alphabet_line = None;
    let mut states_line = None;
    let mut initial_line = None;
    let mut accept_line = None;
    let mut trans_lines = Vec::new();

    for line in &lines {
        let trimmed = line.text.trim_start();
        let (keyword, rest) = match trimmed.split_once(char::is_whitespace) {
            Some((k, r)) => (k, r),
            None => (trimmed, ""),
        };
        let slot = match keyword {
            "group" => &mut group_line,
            "alphabet" => &mut alphabet_line,
            "states" => &mut states_line,
            "initial" => &mut initial_line,
            "accept" => &mut accept_line,
            "gen" => {
                gens.push((line, rest));
                continue;
            }
            "trans" => {
                trans_lines.push((line, rest));
                continue;
            }
            other => {
                return Err(line.syntax(line.column_of(trimmed), format!("unknown directive `{other}`")))
            }
        };
        if slot.is_some() {
            return Err(line.syntax(line.column_of(trimmed), format!("repeated `{keyword}` directive")));
        }
        *slot = Some((line, rest));
    }

    let (gline, grest) = group_line.ok_or(AutomatonError::Missing("group"))?;
    let kind = GroupKind::parse(grest).map_err(|e| gline.wrap(e))?;
    let mut spec = GroupSpec::new(kind);

    for (line, rest) in gens {
        let (name, literal) = rest
            .split_once('=')
            .ok_or_else(|| line.syntax(line.column_of(rest), "expected `gen <name> = <element>`"))?;
        let element = spec.kind().parse_element(literal).map_err(|e| line.wrap(e))?;
        spec.bind(name.trim(), element).map_err(|e| line.wrap(e))?;
    }

    let words = |slot: Option<(&Line, &str)>, what: &'static str| -> Result<Vec<String>, AutomatonError> {
        let (_, rest) = slot.ok_or(AutomatonError::Missing(what))?;
        Ok(rest.split_whitespace().map(str::to_string).collect())
    };
    let alphabet = words(alphabet_line, "alphabet")?;
    let states = words(states_line, "states")?;
    let state_of = |line: &Line, name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| line.wrap(AutomatonError::UnknownState(name.to_string())))
    };

    let (iline, irest) = initial_line.ok_or(AutomatonError::Missing("initial"))?;
    let initial_name = irest.trim();
    if initial_name.is_empty() || initial_name.contains(char::is_whitespace) {
        return Err(iline.syntax(iline.column_of(irest), "expected exactly one initial state"));
    }
    let initial = state_of(iline, initial_name)?;
    let accepting = match accept_line {
        Some((aline, arest)) => arest
            .split_whitespace()
            .map(|s| state_of(aline, s))
            .collect::<Result<Vec<_>, _>>()?,
        None => Vec::new(),
    };

    let mut transitions = Vec::new();
    for (line, rest) in trans_lines {
        let (head, label) = rest
            .split_once(':')
            .ok_or_else(|| line.syntax(line.column_of(rest), "expected `trans <from> <symbol|eps> <to> : <label>`"))?;
        let parts: Vec<&str> = head.split_whitespace().collect();
        let [from, symbol, to] = parts.as_slice() else {
            return Err(line.syntax(line.column_of(head), "expected `<from> <symbol|eps> <to>`"));
        };
        let symbol = match *symbol {
            "eps" => None,
            s => Some(
                alphabet
                    .iter()
                    .position(|a| a == s)
                    .ok_or_else(|| line.wrap(AutomatonError::UnknownSymbol(s.to_string())))?,
            ),
        };
        let label = parse_label(&mut spec, label).map_err(|e| line.wrap(e))?;
        transitions.push(Transition {
            from: state_of(line, from)?,
            symbol,
            to: state_of(line, to)?,
            label,
        });
    }

    GroupAutomaton::new(spec, states, alphabet, transitions, initial, accepting)
}

/// Label tokens are generator names (optionally `^-1`), `_`, or inline
/// element literals, which are bound to fresh `_litN` names.
fn parse_label(spec: &mut GroupSpec, text: &str) -> Result<Vec<Letter>, AlgebraError> {
    let text = text.trim();
    if text.is_empty() || text == "_" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let (base, inverse) = match tok.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (tok, false),
        };
        if spec.generator_index(base).is_some() {
            out.push(spec.letter(base, inverse)?);
            continue;
        }
        let element = match spec.kind().parse_element(base) {
            Ok(e) => e,
            Err(AlgebraError::BadLiteral { .. }) => {
                return Err(AlgebraError::UnknownGenerator(base.to_string()))
            }
            Err(e) => return Err(e),
        };
        let name = bind_literal(spec, element)?;
        out.push(spec.letter(&name, inverse)?);
    }
    Ok(out)
}

fn bind_literal(spec: &mut GroupSpec, element: Element) -> Result<String, AlgebraError> {
    if let Some((name, _)) = spec
        .user_generators()
        .find(|(n, g)| n.starts_with("_lit") && **g == element)
    {
        return Ok(name.to_string());
    }
    let mut n = 1;
    let name = loop {
        let candidate = format!("_lit{n}");
        if spec.generator_index(&candidate).is_none() {
            break candidate;
        }
        n += 1;
    };
    spec.bind(&name, element)?;
    Ok(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    const UPOW: &str = "\
# BS(1,2) automaton for a^(2^n)
group bs12
alphabet a
states s0 s1 s2 s3
initial s0
accept s3
trans s0 eps s0 : B^-1 A^-1
trans s0 a s1 : _
trans s1 a s1 : A
trans s1 eps s2 : _
trans s2 eps s2 : B
trans s2 eps s3 : _
";

    #[test]
    fn parses_upow() {
        let a = parse(UPOW).unwrap();
        assert_eq!(a.state_count(), 4);
        assert_eq!(a.alphabet(), ["a"]);
        assert_eq!(a.label_gen_len_max(), 2);
        assert_eq!(a.transitions().len(), 6);
    }

    #[test]
    fn unknown_state_is_reported_with_line() {
        let text = UPOW.replace("trans s2 eps s3 : _", "trans s2 eps q9 : _");
        let err = parse(&text).unwrap_err();
        assert_eq!(err.root(), &AutomatonError::UnknownState("q9".into()));
        assert!(err.to_string().starts_with("line 12"));
    }

    #[test]
    fn syntax_error_has_column() {
        let text = UPOW.replace("trans s1 a s1 : A", "trans s1 a : A");
        match parse(&text).unwrap_err() {
            AutomatonError::Syntax { line, column, .. } => {
                assert_eq!(line, 9);
                assert_eq!(column, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn monoid_inverse_rejected() {
        let text = "group polycyclic 1\nalphabet a\nstates p\ninitial p\naccept p\ntrans p a p : P1^-1\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(err.root(), AutomatonError::Algebra(AlgebraError::InverseInMonoid(_))));
    }

    #[test]
    fn singular_generator_rejected() {
        let text = "group matrixq 2\ngen m = [[1,1],[1,1]]\nalphabet a\nstates p\ninitial p\naccept p\n";
        let err = parse(text).unwrap_err();
        assert!(matches!(err.root(), AutomatonError::Algebra(AlgebraError::InvalidElement { .. })));
    }

    #[test]
    fn inline_literals_get_fresh_names() {
        let text = "group posrat\nalphabet a b\nstates p\ninitial p\naccept p\n\
                    trans p a p : 2\ntrans p b p : 1/2\ntrans p b p : 2^-1 2\n";
        let a = parse(text).unwrap();
        let names: Vec<&str> = a.spec().user_generators().map(|(n, _)| n).collect();
        assert_eq!(names, ["_lit1", "_lit2"]);
        let again = parse(&a.serialize()).unwrap();
        assert_eq!(again, a);
    }

    #[test]
    fn serialize_is_canonical() {
        let a = parse(UPOW).unwrap();
        let shuffled: String = {
            let mut lines: Vec<&str> = UPOW.lines().collect();
            lines[6..].reverse();
            lines.join("\n")
        };
        let b = parse(&shuffled).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.serialize(), b.serialize());
        assert_eq!(parse(&a.serialize()).unwrap(), a);
    }

    #[test]
    fn empty_transition_section() {
        let text = "group trivial\nalphabet a\nstates p\ninitial p\naccept\n";
        let a = parse(text).unwrap();
        let out = a.serialize();
        assert!(!out.contains("trans"));
        assert_eq!(parse(&out).unwrap(), a);
    }
}
