mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use grpaut::algebra::{Element, GroupKind, GroupSpec, HeisTriple, Letter, PolyFn, RationalMatrix};
use grpaut::automaton::{parse, GroupAutomaton};
use grpaut::constructions::{posrat_spec, Embedding, EmbeddingKind};
use grpaut::gallery::{self, CATALOG};
use grpaut::growth::{ball, dissimilar_from_ball, lk_oracle, lk_witness, pairwise_dissimilar, verify_witness, word_problem_oracle};
use grpaut::simulator::{replay, run, shortest_accepting_run, Budget, Limits, Verdict};

use common::*;

fn specs() -> Vec<GroupSpec> {
    let parse = |kind: &str| GroupSpec::new(GroupKind::parse(kind).unwrap());
    vec![
        parse("free 2"),
        parse("abelian 3"),
        parse("heisenberg"),
        parse("bs12"),
        posrat_spec(&[("two", 2, 1), ("third", 1, 3), ("threehalf", 3, 2)]).unwrap(),
        parse("matrixz 2").with("ma", "[[1,2],[0,1]]").unwrap().with("mb", "[[1,0],[2,1]]").unwrap(),
        parse("matrixq 2")
            .with("a1", "[[2,0],[1,1/2]]")
            .unwrap()
            .with("a3", "[[1,0],[-1,1]]")
            .unwrap()
            .with("a4", "[[1/2,0],[0,2]]")
            .unwrap(),
        parse("product (free 2) (abelian 1)"),
    ]
}

/// Index into `specs()` and three generator words for it.
fn spec_and_words(max_len: usize) -> impl Strategy<Value = (usize, [Vec<(usize, bool)>; 3])> {
    let word = || prop::collection::vec((0usize..8, any::<bool>()), 0..=max_len);
    (0..specs().len(), [word(), word(), word()])
}

fn eval(spec: &GroupSpec, word: &[(usize, bool)]) -> Element {
    let gens = spec.generator_count();
    let letters: Vec<Letter> = word.iter().map(|&(g, inv)| Letter::new(g % gens, inv)).collect();
    spec.eval_letters(&letters).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8000))]

    #[test]
    fn group_axioms((i, [u, v, w]) in spec_and_words(8)) {
        let spec = &specs()[i];
        let (x, y, z) = (eval(spec, &u), eval(spec, &v), eval(spec, &w));
        let xy_z = spec.mul(&spec.mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = spec.mul(&x, &spec.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(spec.mul(&x, &spec.identity()).unwrap(), x.clone());
        prop_assert_eq!(spec.mul(&spec.identity(), &x).unwrap(), x.clone());
        let inv = spec.inverse(&x).unwrap();
        prop_assert!(spec.is_identity(&spec.mul(&x, &inv).unwrap()));
        prop_assert!(spec.is_identity(&spec.mul(&inv, &x).unwrap()));
    }

    #[test]
    fn canonical_keys_identify_equal_elements((i, [u, v, w]) in spec_and_words(6)) {
        let spec = &specs()[i];
        let (x, y, z) = (eval(spec, &u), eval(spec, &v), eval(spec, &w));
        // x·z·z⁻¹ reaches x along a different path
        let detour = spec.mul(&spec.mul(&x, &z).unwrap(), &spec.inverse(&z).unwrap()).unwrap();
        prop_assert_eq!(spec.canonical_key(&detour), spec.canonical_key(&x));
        prop_assert_eq!(spec.canonical_key(&x) == spec.canonical_key(&y), x == y);
    }

    #[test]
    fn literals_round_trip((i, [u, _v, _w]) in spec_and_words(8)) {
        let spec = &specs()[i];
        let x = eval(spec, &u);
        prop_assert_eq!(spec.kind().parse_element(&x.to_string()).unwrap(), x);
    }
}

fn heis_of(t: &HeisTriple) -> M3 {
    let small = |b: &BigInt| i64::try_from(b.clone()).unwrap();
    heis_matrix(small(&t.x), small(&t.y), small(&t.z))
}

fn matrix_of(m: &M3) -> RationalMatrix {
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    RationalMatrix::from_integers(&rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn heisenberg_matrix_homomorphism(a in (-60i64..60, -60i64..60, -60i64..60), b in (-60i64..60, -60i64..60, -60i64..60)) {
        let s = HeisTriple::new(a.0, a.1, a.2);
        let t = HeisTriple::new(b.0, b.1, b.2);
        let st = s.mul(&t);
        prop_assert_eq!(heis_of(&st), mul3(&heis_of(&s), &heis_of(&t)));
        prop_assert_eq!(st.to_matrix(), s.to_matrix().mul(&t.to_matrix()));
        prop_assert_eq!(s.to_matrix(), matrix_of(&heis_of(&s)));
    }

    #[test]
    fn determinant_is_multiplicative(
        a in prop::collection::vec((-9i64..10, 1i64..6), 9),
        b in prop::collection::vec((-9i64..10, 1i64..6), 9),
    ) {
        let m = |e: &[(i64, i64)]| {
            let rows = e.chunks(3).map(|r| r.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect()).collect();
            RationalMatrix::from_rows(rows).unwrap()
        };
        let (x, y) = (m(&a), m(&b));
        prop_assert_eq!(x.mul(&y).determinant(), x.determinant() * y.determinant());
    }

    #[test]
    fn matrix_form_is_canonical(entries in prop::collection::vec((-20i64..20, 1i64..12), 4), scale in 1i64..50) {
        let plain: Vec<Vec<BigRational>> = entries.chunks(2)
            .map(|r| r.iter().map(|&(p, q)| BigRational::new(p.into(), q.into())).collect())
            .collect();
        // the same rationals written with a common unreduced factor
        let scaled: Vec<Vec<BigRational>> = entries.chunks(2)
            .map(|r| r.iter().map(|&(p, q)| BigRational::new_raw((p * scale).into(), (q * scale).into())).collect())
            .collect();
        let x = RationalMatrix::from_rows(plain).unwrap();
        let y = RationalMatrix::from_rows(scaled).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert_eq!(x.to_string(), y.to_string());
        for i in 0..2 {
            for j in 0..2 {
                let (p, q) = entries[2 * i + j];
                prop_assert_eq!(x.get(i, j), BigRational::new(p.into(), q.into()));
            }
        }
    }

    #[test]
    fn sanov_images_of_reduced_words_are_nontrivial(w in prop::collection::vec(prop_oneof![Just(1i32), Just(-1), Just(2), Just(-2)], 1..24)) {
        let w = free_reduce(&w);
        prop_assume!(!w.is_empty());
        let f2 = GroupSpec::new(GroupKind::Free(2));
        let sanov = Embedding::new(EmbeddingKind::Sanov, &f2).unwrap();
        let letters: Vec<Letter> = w.iter().map(|&l| Letter::new(l.unsigned_abs() as usize - 1, l < 0)).collect();
        let image = sanov.map_element(&f2.eval_letters(&letters).unwrap()).unwrap();
        prop_assert!(!sanov.target().is_identity(&image));
        // independent i128 product of the generator matrices
        let ma: M2 = [[1, 2], [0, 1]];
        let mb: M2 = [[1, 0], [2, 1]];
        let inv = |m: &M2| [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
        let product = w.iter().fold([[1i128, 0], [0, 1]], |acc, &l| {
            let g = if l.abs() == 1 { ma } else { mb };
            mul2(&acc, &if l < 0 { inv(&g) } else { g })
        });
        prop_assert_ne!(product, [[1, 0], [0, 1]]);
        let Element::Matrix(m) = image else { panic!("matrix image") };
        let expected: Vec<Vec<BigRational>> = product
            .iter()
            .map(|row| row.iter().map(|&v| BigRational::from_integer(v.into())).collect())
            .collect();
        prop_assert_eq!(m.rows(), expected);
    }
}

fn poly() -> impl Strategy<Value = PolyFn> {
    let side = || prop::collection::vec(1u32..=2, 0..=4);
    prop_oneof![
        1 => Just(PolyFn::Zero),
        8 => (side(), side()).prop_map(|(pop, push)| PolyFn::Map { pop, push }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(3000))]

    #[test]
    fn polycyclic_composition(f in poly(), g in poly(), h in poly(), stack in prop::collection::vec(1u32..=2, 0..7)) {
        prop_assert_eq!(f.then(&g).then(&h), f.then(&g.then(&h)));
        prop_assert_eq!(f.then(&PolyFn::Zero), PolyFn::Zero);
        prop_assert_eq!(PolyFn::Zero.then(&f), PolyFn::Zero);
        prop_assert_eq!(f.then(&PolyFn::identity()), f.clone());
        prop_assert_eq!(PolyFn::identity().then(&f), f.clone());
        // composition of partial maps on a concrete stack
        prop_assert_eq!(f.then(&g).apply(&stack), f.apply(&stack).and_then(|s| g.apply(&s)));
    }
}

/// Automaton text over `free 2` with random ε-moves and labels.
fn free_automaton() -> impl Strategy<Value = String> {
    let label = prop::collection::vec(prop_oneof![Just("x1"), Just("x1^-1"), Just("x2"), Just("x2^-1")], 0..=2);
    let trans = (0usize..3, prop_oneof![Just("a"), Just("b"), Just("eps")], 0usize..3, label);
    (prop::collection::vec(trans, 1..9), prop::collection::vec(any::<bool>(), 3)).prop_map(|(ts, acc)| {
        let mut text = String::from("group free 2\nalphabet a b\nstates s0 s1 s2\ninitial s0\naccept");
        let accepting: Vec<usize> = (0..3).filter(|&q| acc[q] || q == 2).collect();
        for q in accepting {
            text.push_str(&format!(" s{q}"));
        }
        text.push('\n');
        for (from, sym, to, label) in ts {
            let label = if label.is_empty() { "_".to_string() } else { label.join(" ") };
            text.push_str(&format!("trans s{from} {sym} s{to} : {label}\n"));
        }
        text
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pair_search_matches_run_enumeration(text in free_automaton(), input in prop::collection::vec(0usize..2, 0..5)) {
        let a = parse(&text).unwrap();
        let t = 12;
        let (verdict, steps) = dfs_verdict(&a, &input, t);
        let shortest = shortest_accepting_run(&a, &input).unwrap();
        match &shortest {
            Some(trace) => {
                prop_assert!(replay(&a, &input, trace).unwrap().1);
                if trace.len() <= t {
                    prop_assert_eq!(verdict, Verdict::Accepted);
                    prop_assert_eq!(steps, Some(trace.len()));
                } else {
                    prop_assert_ne!(verdict, Verdict::Accepted);
                }
            }
            None => prop_assert_ne!(verdict, Verdict::Accepted),
        }
        let r = run(&a, &input, Budget::Cap(t), Limits::default()).unwrap();
        prop_assert_eq!(r.stats.min_accepting_steps, shortest.filter(|s| s.len() <= t).map(|s| s.len()));
    }

    #[test]
    fn verdicts_match_depth_first_runs(text in free_automaton(), input in prop::collection::vec(0usize..2, 0..5), t in 0usize..10) {
        let a = parse(&text).unwrap();
        let r = run(&a, &input, Budget::Cap(t), Limits::default()).unwrap();
        let (verdict, steps) = dfs_verdict(&a, &input, t);
        prop_assert_eq!(r.verdict, verdict);
        prop_assert_eq!(r.stats.min_accepting_steps, steps);
        if let Some(trace) = &r.trace {
            prop_assert!(trace.len() <= t);
            prop_assert!(replay(&a, &input, trace).unwrap().1);
        }
        // a larger budget keeps an acceptance
        if r.verdict == Verdict::Accepted {
            let more = run(&a, &input, Budget::Cap(t + 3), Limits::default()).unwrap();
            prop_assert_eq!(more.verdict, Verdict::Accepted);
        }
    }

    #[test]
    fn random_automata_round_trip(text in free_automaton()) {
        let a = parse(&text).unwrap();
        let once = a.serialize();
        let b: GroupAutomaton = parse(&once).unwrap();
        prop_assert_eq!(b.serialize(), once);
        prop_assert_eq!(b.transitions(), a.transitions());
    }
}

#[test]
fn gallery_automata_round_trip() {
    for name in CATALOG {
        let a = gallery::build(name).unwrap().automaton;
        let text = a.serialize();
        let b = parse(&text).unwrap();
        assert_eq!(b.serialize(), text, "{name}");
        assert_eq!(b.transitions(), a.transitions(), "{name}");
        assert_eq!(b.label_gen_len_max(), a.label_gen_len_max(), "{name}");
        let longest = a.transitions().iter().map(|t| t.label.len()).max().unwrap_or(0);
        assert_eq!(a.label_gen_len_max(), longest, "{name}");
    }
}

#[test]
fn ball_tables_satisfy_invariants() {
    for (kind, radius) in [("free 2", 6), ("abelian 2", 8), ("abelian 3", 5), ("heisenberg", 6), ("bs12", 7), ("product (free 2) (abelian 1)", 5)] {
        let spec = GroupSpec::new(GroupKind::parse(kind).unwrap());
        let gens = grpaut::growth::resolve_generators(&spec, None).unwrap();
        let table = ball(&spec, &gens, radius, 1_000_000).unwrap();
        table.check_invariants().unwrap_or_else(|e| panic!("{kind}: {e}"));
        for subset in 1..gens.len() {
            let t = ball(&spec, &gens[..subset], radius, 1_000_000).unwrap();
            t.check_invariants().unwrap_or_else(|e| panic!("{kind} on {subset} generators: {e}"));
        }
    }
}

#[test]
fn witnesses_verify_and_are_pairwise_dissimilar() {
    for k in 1..=3 {
        for m in 0..=3 {
            let ws = lk_witness(k, m);
            let oracle = lk_oracle(k);
            assert_eq!(ws.len(), (m + 1).pow(k as u32));
            assert!(verify_witness(&ws, &oracle).ok, "L{k} m={m}");
            assert_eq!(pairwise_dissimilar(&ws, &oracle), None, "L{k} m={m}");
        }
    }
    for kind in ["free 2", "abelian 2", "heisenberg"] {
        let spec = GroupSpec::new(GroupKind::parse(kind).unwrap());
        let gens = grpaut::growth::resolve_generators(&spec, None).unwrap();
        let oracle = word_problem_oracle(&spec, &gens).unwrap();
        for n in 2..=8 {
            let ws = dissimilar_from_ball(&spec, &gens, n, 100_000).unwrap();
            let g = ball(&spec, &gens, n / 2, 100_000).unwrap().len();
            assert_eq!(ws.len(), g, "{kind} n={n}");
            assert!(verify_witness(&ws, &oracle).ok, "{kind} n={n}");
            assert_eq!(pairwise_dissimilar(&ws, &oracle), None, "{kind} n={n}");
        }
    }
}
