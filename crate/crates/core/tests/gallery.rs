mod common;

use num_bigint::BigInt;
use num_rational::BigRational;

use grpaut::algebra::{Element, HeisTriple, RationalMatrix};
use grpaut::constructions::kambites_convert;
use grpaut::gallery::{self, verify_automaton, verify_entry, GalleryEntry};
use grpaut::growth::{counting_audit, lk_oracle};
use grpaut::simulator::{enumerate, replay, shortest_accepting_run, Budget, Limits, Verdict};

use common::*;

fn entry(name: &str) -> GalleryEntry {
    gallery::build(name).unwrap()
}

/// Index of the transition `from --symbol--> to` (`None` for ε).
fn transition(e: &GalleryEntry, from: &str, symbol: Option<&str>, to: &str) -> usize {
    let a = &e.automaton;
    let (f, t) = (a.state_index(from).unwrap(), a.state_index(to).unwrap());
    let s = symbol.map(|s| a.symbol_index(s).unwrap());
    a.transitions()
        .iter()
        .position(|tr| tr.from == f && tr.to == t && tr.symbol == s)
        .unwrap()
}

fn pow2(e: i64) -> BigRational {
    let two = BigRational::from_integer(2.into());
    if e >= 0 {
        num_traits::pow(two, e as usize)
    } else {
        num_traits::pow(two, (-e) as usize).recip()
    }
}

#[test]
fn upow_register_law() {
    let e = entry("upow");
    let a = &e.automaton;
    let grow = transition(&e, "s0", None, "s0");
    let read = transition(&e, "s0", Some("a"), "s1");
    let count = transition(&e, "s1", Some("a"), "s1");
    let hop = transition(&e, "s1", None, "s2");
    let halve = transition(&e, "s2", None, "s2");
    for i in 0..=6i64 {
        for j in 0..=6i64 {
            for k in 0..=6i64 {
                let mut trace = vec![grow; i as usize];
                trace.push(read);
                trace.extend(std::iter::repeat_n(count, j as usize));
                trace.push(hop);
                trace.extend(std::iter::repeat_n(halve, k as usize));
                let input = vec![0; 1 + j as usize];
                let (steps, _) = replay(a, &input, &trace).unwrap();
                let corner = BigRational::from_integer(BigInt::from(2).pow(i as u32) - 1 - j);
                let one = BigRational::from_integer(1.into());
                let zero = BigRational::from_integer(0.into());
                // right multiplication by A₃ halves the whole first column
                let expected = RationalMatrix::from_rows(vec![
                    vec![pow2(i - k), zero.clone()],
                    vec![corner.clone() * pow2(-k), one.clone()],
                ])
                .unwrap();
                if k == 0 || corner == zero {
                    let unhalved = RationalMatrix::from_rows(vec![vec![pow2(i - k), zero.clone()], vec![corner, one]]).unwrap();
                    assert_eq!(unhalved, expected);
                }
                assert_eq!(steps.last().unwrap().register, Element::Matrix(expected), "i={i} j={j} k={k}");
            }
        }
    }
}

#[test]
fn bs_relation() {
    let spec = entry("upow").automaton.spec().clone();
    let lhs = spec.eval_letters(&spec.parse_word("B A B^-1").unwrap()).unwrap();
    let rhs = spec.eval_letters(&spec.parse_word("A A").unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn mult_register_after_reading_x2_y3() {
    let e = entry("mult");
    let x = transition(&e, "s0", Some("x"), "s0");
    let to_y = transition(&e, "s0", None, "s1");
    let y = transition(&e, "s1", Some("y"), "s1");
    let input = e.automaton.parse_input("x x y y y").unwrap();
    let (steps, _) = replay(&e.automaton, &input, &[x, x, to_y, y, y, y]).unwrap();
    assert_eq!(steps.last().unwrap().register, Element::Heis(HeisTriple::new(3, 2, 6)));
}

#[test]
fn anbncn_members_to_nine() {
    let e = entry("anbncn");
    let rows = enumerate(&e.automaton, 9, Budget::affine(1, 2).unwrap(), Limits::default()).unwrap();
    let accepted: Vec<String> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Accepted)
        .map(|r| e.automaton.format_input(&r.word))
        .collect();
    let expected: Vec<String> = ["", "abc", "aabbcc", "aaabbbccc"]
        .iter()
        .map(|w| {
            let word: Vec<usize> = w.chars().map(|c| c as usize - 'a' as usize).collect();
            e.automaton.format_input(&word)
        })
        .collect();
    assert_eq!(accepted, expected);
}

#[test]
fn kx_anbn_agrees_before_and_after_conversion() {
    let report = verify_entry("kx-anbn", Some(12), Limits::default()).unwrap();
    assert!(report.agrees(), "{:?}", report.disagreements);
    assert_eq!(report.accepted, 7);

    let e = entry("kx-anbn");
    let conv = kambites_convert(&e.automaton).unwrap();
    assert_eq!(conv.state_count(), 2 * e.automaton.state_count());
    let wide = Budget::affine(4, 4).unwrap();
    let after = verify_automaton("kx-anbn converted", &conv, &e.oracle, wide, 5, Limits::default()).unwrap();
    assert!(after.agrees(), "{:?}", after.disagreements);
    for w in all_words(2, 12) {
        assert_eq!(shortest_accepting_run(&conv, &w).unwrap().is_some(), e.oracle.contains(&w));
    }
}

#[test]
fn converted_labels_and_padding_blocks() {
    for name in ["kx-anbn", "kx-pal"] {
        let e = entry(name);
        let conv = kambites_convert(&e.automaton).unwrap();
        assert_eq!(conv.state_count(), 2 * e.automaton.state_count());
        let spec = conv.spec();
        let h = spec.generator_index("h").unwrap();
        // x·h, x⁻¹·h, h⁻¹ or the identity
        let shape = |t: usize| -> &'static str {
            let label = &conv.transitions()[t].label;
            match label.as_slice() {
                [] => "identity",
                [l] if l.generator == h && l.inverse => "unpad",
                [x, p] if p.generator == h && !p.inverse && x.generator != h => {
                    if x.inverse {
                        "pop"
                    } else {
                        "push"
                    }
                }
                _ => "other",
            }
        };
        assert!((0..conv.transitions().len()).all(|t| shape(t) != "other"), "{name}");
        for w in all_words(2, 10) {
            let Some(trace) = shortest_accepting_run(&conv, &w).unwrap() else {
                continue;
            };
            // each maximal run of h⁻¹ steps is followed by a pop or ends the run
            for (i, &t) in trace.iter().enumerate() {
                if shape(t) == "unpad" {
                    if let Some(&next) = trace.get(i + 1) {
                        assert!(matches!(shape(next), "unpad" | "pop"), "{name} {w:?}: {trace:?}");
                    }
                }
            }
        }
    }
}

#[test]
fn counting_audits() {
    let mult = entry("mult");
    let l5 = lk_oracle(5);
    let r = counting_audit(&mult.automaton, &l5, Budget::affine(2, 0).unwrap(), 20, Limits::default()).unwrap();
    // a degree-4 ball dwarfs the 2^5 witnessed strings at this scale
    assert_eq!((r.t, r.registers, r.configurations, r.witness_size), (40, 132242, 793452, 32));
    assert!(!r.flagged);

    let anbn = entry("anbn");
    let l2 = lk_oracle(2);
    let audit = |n| counting_audit(&anbn.automaton, &l2, Budget::affine(1, 0).unwrap(), n, Limits::default()).unwrap();
    assert!(!audit(20).flagged);
    assert!(!audit(40).flagged);
    let r = audit(80);
    assert_eq!((r.registers, r.states, r.configurations), (161, 2, 322));
    assert_eq!(r.witness_size, 400);
    assert!(r.flagged);
}
