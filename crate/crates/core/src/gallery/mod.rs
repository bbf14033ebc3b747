//! Catalog of automata, each with an arithmetic membership oracle written
//! independently of the automaton.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{GroupKind, GroupSpec};
use crate::automaton::{parse, AutomatonError, GroupAutomaton};
use crate::growth::{lk_oracle, word_problem_oracle, LanguageOracle, OracleFamily};
use crate::simulator::{enumerate, Budget, Limits, SimError, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GalleryError {
    #[error("unknown gallery entry `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    pub description: &'static str,
    pub automaton: GroupAutomaton,
    pub oracle: LanguageOracle,
    pub budget: Budget,
    /// Largest input length at which agreement is checked by default.
    pub max_len: usize,
}

/// Names accepted by [`build`]; `lk-<k>` works for every `k ≥ 1`.
pub const CATALOG: &[&str] = &[
    "upow",
    "odd-pow",
    "mult",
    "anbn",
    "anbncn",
    "anbncn-f2xf2",
    "lk-2",
    "lk-3",
    "wp-free2",
    "wp-z",
    "wp-z2",
    "wp-heis",
    "kx-anbn",
    "kx-pal",
    "qplus-abc",
];

const UPOW: &str = "\
# a^(2^n): grow the top-left entry, subtract one per a, halve it back
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

const ODD_POW: &str = "\
# a^(2^(2n+1))
group matrixq 2
gen A1 = [[2,0],[1,1/2]]
gen A2 = [[2,0],[0,1/2]]
gen A3 = [[1,0],[-1,1]]
gen A4 = [[1/2,0],[0,2]]
alphabet a
states s0 s1 s2 s3 s4
initial s0
accept s4
trans s0 eps s1 : A1
trans s1 eps s1 : A2
trans s1 a s2 : A3
trans s2 a s2 : A3
trans s2 eps s3 : A4
trans s3 eps s3 : A4
trans s3 eps s4 : _
";

const MULT: &str = "\
# x^p y^q z^(pq)
group heisenberg
alphabet x y z
states s0 s1 s2 s3 s4 s5
initial s0
accept s5
trans s0 x s0 : a
trans s0 eps s1 : _
trans s1 y s1 : b
trans s1 eps s2 : _
trans s2 z s2 : c^-1
trans s2 eps s3 : _
trans s3 eps s3 : a^-1
trans s3 eps s4 : _
trans s4 eps s4 : b^-1
trans s4 eps s5 : _
";

const ANBN: &str = "\
group abelian 1
alphabet a b
states p q
initial p
accept p q
trans p a p : e1
trans p b q : e1^-1
trans q b q : e1^-1
";

const ANBNCN: &str = "\
group abelian 2
alphabet a b c
states p q r
initial p
accept p r
trans p a p : e1
trans p b q : e1^-1 e2
trans q b q : e1^-1 e2
trans q c r : e2^-1
trans r c r : e2^-1
";

const ANBNCN_F2XF2: &str = "\
# one counter in each factor
group product (free 2) (free 2)
alphabet a b c
states p q r
initial p
accept p r
trans p a p : l_x1 r_x1
trans p b q : l_x1^-1
trans q b q : l_x1^-1
trans q c r : r_x1^-1
trans r c r : r_x1^-1
";

const KX_ANBN: &str = "\
group polycyclic 1
alphabet a b
states p q
initial p
accept p q
trans p a p : P1
trans p b q : Q1
trans q b q : Q1
";

const KX_PAL: &str = "\
# palindromes: push the first half, guess the middle, pop the second half
group polycyclic 2
alphabet a b
states p q
initial p
accept p q
trans p a p : P1
trans p b p : P2
trans p a q : _
trans p b q : _
trans p a q : Q1
trans p b q : Q2
trans q a q : Q1
trans q b q : Q2
";

const QPLUS_ABC: &str = "\
# equal numbers of a, b and c in any order
group posrat
gen two = 2
gen third = 1/3
gen threehalf = 3/2
alphabet a b c
states p
initial p
accept p
trans p a p : two
trans p b p : third
trans p c p : threehalf
";

fn unary_oracle(name: &str, pred: impl Fn(usize) -> bool + Send + Sync + 'static) -> LanguageOracle {
    LanguageOracle::new(name, vec!["a".into()], OracleFamily::Other, move |w: &[usize]| pred(w.len()))
}

/// Splits `w` into maximal blocks `s₀^e₀ s₁^e₁ …` following `order`;
/// returns the exponents if `w` has that shape.
fn block_exponents(w: &[usize], order: &[usize]) -> Option<Vec<usize>> {
    let mut counts = vec![0; order.len()];
    let mut stage = 0;
    for &s in w {
        while stage < order.len() && order[stage] != s {
            stage += 1;
        }
        if stage == order.len() {
            return None;
        }
        counts[stage] += 1;
    }
    Some(counts)
}

fn abc_oracle(name: &str) -> LanguageOracle {
    LanguageOracle::new(name, vec!["a".into(), "b".into(), "c".into()], OracleFamily::Other, |w: &[usize]| {
        matches!(block_exponents(w, &[0, 1, 2]).as_deref(), Some([x, y, z]) if x == y && y == z)
    })
}

fn lk_text(k: usize) -> String {
    let mut out = format!("group abelian {k}\nalphabet 0 1\nstates");
    for i in 1..=k {
        let _ = write!(out, " f{i}");
    }
    for i in 1..=k {
        let _ = write!(out, " g{i}");
    }
    out.push_str(" acc\ninitial f1\naccept acc\n");
    for i in 1..=k {
        let next_f = if i < k { format!("f{}", i + 1) } else { "g1".into() };
        let next_g = if i < k { format!("g{}", i + 1) } else { "acc".into() };
        let _ = writeln!(out, "trans f{i} 0 f{i} : e{i}");
        let _ = writeln!(out, "trans f{i} 1 {next_f} : _");
        let _ = writeln!(out, "trans g{i} 0 g{i} : e{i}^-1");
        let _ = writeln!(out, "trans g{i} 1 {next_g} : _");
    }
    out
}

/// One accepting state with a loop per generator and inverse symbol.
fn wp_entry(kind: GroupKind) -> Result<(GroupAutomaton, LanguageOracle), GalleryError> {
    let spec = GroupSpec::new(kind);
    let gens: Vec<usize> = spec
        .kind()
        .standard_generators()
        .expect("standard generators")
        .iter()
        .map(|n| spec.generator_index(n).expect("builtin"))
        .collect();
    let oracle = word_problem_oracle(&spec, &gens).expect("group kind");
    let mut text = format!(
        "group {}\nalphabet {}\nstates p\ninitial p\naccept p\n",
        spec.kind(),
        oracle.alphabet().join(" ")
    );
    for (i, sym) in oracle.alphabet().iter().enumerate() {
        let name = spec.generator_name(gens[i / 2]);
        let inv = if i % 2 == 1 { "^-1" } else { "" };
        let _ = writeln!(text, "trans p {sym} p : {name}{inv}");
    }
    Ok((parse(&text)?, oracle))
}

pub fn is_power_of_two(n: usize) -> bool {
    n.is_power_of_two()
}

/// `n = 2^(2m+1)` for some `m ≥ 0`.
pub fn is_odd_power_of_two(n: usize) -> bool {
    n.is_power_of_two() && n.trailing_zeros() % 2 == 1
}

pub fn build(name: &str) -> Result<GalleryEntry, GalleryError> {
    let real_time = Budget::Affine { alpha: 1, beta: 2 };
    let entry = |description, text: &str, oracle, budget, max_len| -> Result<GalleryEntry, GalleryError> {
        Ok(GalleryEntry {
            name: name.to_string(),
            description,
            automaton: parse(text)?,
            oracle,
            budget,
            max_len,
        })
    };
    match name {
        "upow" => entry(
            "BS(1,2) automaton for a^(2^n)",
            UPOW,
            unary_oracle("upow", is_power_of_two),
            Budget::Affine { alpha: 4, beta: 8 },
            64,
        ),
        "odd-pow" => entry(
            "SL(2,Q) automaton for a^(2^(2n+1))",
            ODD_POW,
            unary_oracle("odd-pow", is_odd_power_of_two),
            Budget::Affine { alpha: 4, beta: 8 },
            128,
        ),
        "mult" => entry(
            "Heisenberg automaton for x^p y^q z^(pq)",
            MULT,
            LanguageOracle::new(
                "mult",
                vec!["x".into(), "y".into(), "z".into()],
                OracleFamily::Other,
                |w: &[usize]| matches!(block_exponents(w, &[0, 1, 2]).as_deref(), Some([p, q, r]) if p * q == *r),
            ),
            Budget::Affine { alpha: 2, beta: 8 },
            8,
        ),
        "anbn" => entry(
            "Z automaton for a^n b^n",
            ANBN,
            LanguageOracle::new("anbn", vec!["a".into(), "b".into()], OracleFamily::Other, |w: &[usize]| {
                matches!(block_exponents(w, &[0, 1]).as_deref(), Some([x, y]) if x == y)
            }),
            real_time,
            12,
        ),
        "anbncn" => entry("Z^2 automaton for a^n b^n c^n", ANBNCN, abc_oracle("anbncn"), real_time, 12),
        "anbncn-f2xf2" => entry(
            "F2 x F2 two-counter automaton for a^n b^n c^n",
            ANBNCN_F2XF2,
            abc_oracle("anbncn"),
            real_time,
            10,
        ),
        "kx-anbn" => entry(
            "polycyclic automaton for a^n b^n",
            KX_ANBN,
            LanguageOracle::new("anbn", vec!["a".into(), "b".into()], OracleFamily::Other, |w: &[usize]| {
                matches!(block_exponents(w, &[0, 1]).as_deref(), Some([x, y]) if x == y)
            }),
            real_time,
            12,
        ),
        "kx-pal" => entry(
            "polycyclic automaton for palindromes over {a,b}",
            KX_PAL,
            LanguageOracle::new("pal", vec!["a".into(), "b".into()], OracleFamily::Other, |w: &[usize]| {
                w.iter().eq(w.iter().rev())
            }),
            real_time,
            12,
        ),
        "qplus-abc" => entry(
            "Q+ automaton for words with equal numbers of a, b and c",
            QPLUS_ABC,
            LanguageOracle::new(
                "abc-balanced",
                vec!["a".into(), "b".into(), "c".into()],
                OracleFamily::Other,
                |w: &[usize]| {
                    let count = |s| w.iter().filter(|&&x| x == s).count();
                    count(0) == count(1) && count(1) == count(2)
                },
            ),
            real_time,
            8,
        ),
        _ => {
            if let Some(k) = name.strip_prefix("lk-").and_then(|k| k.parse::<usize>().ok()) {
                if k >= 1 {
                    return entry(
                        "real-time Z^k automaton for L_k",
                        &lk_text(k),
                        lk_oracle(k),
                        real_time,
                        12,
                    );
                }
            }
            let kind = match name {
                "wp-free2" => GroupKind::Free(2),
                "wp-z" => GroupKind::Abelian(1),
                "wp-z2" => GroupKind::Abelian(2),
                "wp-heis" => GroupKind::Heisenberg,
                _ => return Err(GalleryError::Unknown(name.to_string())),
            };
            let (automaton, oracle) = wp_entry(kind)?;
            let max_len = if automaton.alphabet().len() <= 2 { 12 } else { 8 };
            Ok(GalleryEntry {
                name: name.to_string(),
                description: "word problem, one state",
                automaton,
                oracle,
                budget: real_time,
                max_len,
            })
        }
    }
}

/// Membership oracle by name: any gallery entry, `lk-<k>`, or `wp-…`.
pub fn oracle_by_name(name: &str) -> Result<LanguageOracle, GalleryError> {
    if let Some(k) = name.strip_prefix('L').and_then(|k| k.parse::<usize>().ok()) {
        return Ok(lk_oracle(k));
    }
    build(name).map(|e| e.oracle)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub max_len: usize,
    pub words: usize,
    pub accepted: usize,
    /// `(word, verdict, oracle membership)` where acceptance and membership differ.
    pub disagreements: Vec<(String, Verdict, bool)>,
    pub exhausted: usize,
    pub max_min_steps: Option<usize>,
    /// Every accepting run found has exactly `|w|` steps.
    pub real_time_runs: bool,
}

impl EntryReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Exhaustive simulator-versus-oracle comparison up to `max_len`.
pub fn verify_automaton(
    name: &str,
    a: &GroupAutomaton,
    oracle: &LanguageOracle,
    budget: Budget,
    max_len: usize,
    limits: Limits,
) -> Result<EntryReport, GalleryError> {
    let rows = enumerate(a, max_len, budget, limits)?;
    let mut report = EntryReport {
        name: name.to_string(),
        max_len,
        words: rows.len(),
        accepted: 0,
        disagreements: Vec::new(),
        exhausted: 0,
        max_min_steps: None,
        real_time_runs: true,
    };
    for row in &rows {
        let member = oracle.contains(&row.word);
        let accepted = row.verdict == Verdict::Accepted;
        if accepted {
            report.accepted += 1;
            let steps = row.min_steps.expect("accepted rows carry steps");
            report.max_min_steps = report.max_min_steps.max(Some(steps));
            report.real_time_runs &= steps == row.word.len();
        }
        if row.verdict == Verdict::BudgetExhausted {
            report.exhausted += 1;
        }
        if accepted != member {
            report.disagreements.push((a.format_input(&row.word), row.verdict, member));
        }
    }
    Ok(report)
}

pub fn verify_entry(name: &str, max_len: Option<usize>, limits: Limits) -> Result<EntryReport, GalleryError> {
    let e = build(name)?;
    verify_automaton(name, &e.automaton, &e.oracle, e.budget, max_len.unwrap_or(e.max_len), limits)
}
