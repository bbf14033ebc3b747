use std::fmt::{self, Write as _};
use std::sync::Arc;

use super::{ball, ball_letters, GrowthError};
use crate::algebra::{GroupSpec, Letter};
use crate::automaton::{format_symbols, parse_symbols, GroupAutomaton};
use crate::simulator::{reachable_registers, Budget, Limits};

type Predicate = Arc<dyn Fn(&[usize]) -> bool + Send + Sync>;

#[derive(Clone, Debug)]
pub enum OracleFamily {
    /// Words over `X ∪ X⁻¹` evaluating to the identity; symbol `2i` is
    /// generator `i`, symbol `2i+1` its inverse.
    WordProblem { spec: GroupSpec, generators: Vec<usize> },
    /// `{ u u : u = 0^a₁ 1 … 0^a_k 1 }`.
    Lk(usize),
    Other,
}

/// A named total membership predicate over an alphabet.
#[derive(Clone)]
pub struct LanguageOracle {
    name: String,
    alphabet: Vec<String>,
    family: OracleFamily,
    predicate: Predicate,
}

impl fmt::Debug for LanguageOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguageOracle")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .finish()
    }
}

impl LanguageOracle {
    pub fn new(
        name: impl Into<String>,
        alphabet: Vec<String>,
        family: OracleFamily,
        predicate: impl Fn(&[usize]) -> bool + Send + Sync + 'static,
    ) -> Self {
        LanguageOracle {
            name: name.into(),
            alphabet,
            family,
            predicate: Arc::new(predicate),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn family(&self) -> &OracleFamily {
        &self.family
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        (self.predicate)(word)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>, GrowthError> {
        if text == "_" {
            return Ok(Vec::new());
        }
        parse_symbols(&self.alphabet, text).map_err(|e| GrowthError::Invalid(e.to_string()))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            "_".to_string()
        } else {
            format_symbols(&self.alphabet, word)
        }
    }

    /// Largest witness set this crate can construct at bound `n`.
    pub fn best_witness(&self, n: usize, max_elements: usize) -> Result<Option<WitnessSet>, GrowthError> {
        Ok(match &self.family {
            OracleFamily::WordProblem { spec, generators } if n >= 2 => {
                Some(dissimilar_from_ball(spec, generators, n, max_elements)?)
            }
            OracleFamily::Lk(k) if n >= 2 * k => Some(lk_witness(*k, (n / 2 - k) / k)),
            _ => None,
        })
    }
}

fn inverse_symbol(name: &str, taken: &[String]) -> String {
    let mut chars = name.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if c.is_ascii_lowercase() {
            let upper = c.to_ascii_uppercase().to_string();
            if !taken.contains(&upper) {
                return upper;
            }
        }
    }
    format!("{name}'")
}

/// The word problem of `spec` over the named generators and their inverses.
pub fn word_problem_oracle(spec: &GroupSpec, generators: &[usize]) -> Result<LanguageOracle, GrowthError> {
    if !spec.kind().is_group() {
        return Err(GrowthError::Invalid(format!("`{}` is not a group", spec.kind())));
    }
    let names: Vec<String> = generators
        .iter()
        .map(|&g| spec.generator_name(g).to_string())
        .collect();
    let mut alphabet = Vec::new();
    for name in &names {
        alphabet.push(name.clone());
        alphabet.push(inverse_symbol(name, &names));
    }
    let letters = ball_letters(spec, generators);
    let eval_spec = spec.clone();
    let predicate = move |word: &[usize]| {
        let w: Vec<Letter> = word.iter().map(|&s| letters[s]).collect();
        eval_spec
            .eval_letters(&w)
            .map(|g| eval_spec.is_identity(&g))
            .unwrap_or(false)
    };
    Ok(LanguageOracle::new(
        format!("W({})", spec.kind()),
        alphabet,
        OracleFamily::WordProblem {
            spec: spec.clone(),
            generators: generators.to_vec(),
        },
        predicate,
    ))
}

/// Membership in `L_k` over `{0, 1}` given as symbol indices.
pub fn lk_member(k: usize, word: &[usize]) -> bool {
    if k == 0 || !word.len().is_multiple_of(2) {
        return false;
    }
    let (u, v) = word.split_at(word.len() / 2);
    u == v && u.last() == Some(&1) && u.iter().filter(|&&s| s == 1).count() == k
}

pub fn lk_oracle(k: usize) -> LanguageOracle {
    LanguageOracle::new(
        format!("L{k}"),
        vec!["0".into(), "1".into()],
        OracleFamily::Lk(k),
        move |w: &[usize]| lk_member(k, w),
    )
}

/// Strings `S` with extensions `v : S → Σ*` at length bound `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    pub oracle: String,
    pub alphabet: Vec<String>,
    pub n: usize,
    pub entries: Vec<(Vec<usize>, Vec<usize>)>,
}

impl WitnessSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn fmt_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            "_".into()
        } else {
            format_symbols(&self.alphabet, w)
        }
    }

    /// Header `# oracle=<name> n=<n> size=<|S|>`, then `w<TAB>v(w)` lines;
    /// `_` is the empty word.
    pub fn serialize(&self) -> String {
        let mut out = format!("# oracle={} n={} size={}\n", self.oracle, self.n, self.len());
        for (w, v) in &self.entries {
            let _ = writeln!(out, "{}\t{}", self.fmt_word(w), self.fmt_word(v));
        }
        out
    }

    /// Reads the serialized form against an oracle's alphabet.
    pub fn parse(text: &str, oracle: &LanguageOracle) -> Result<WitnessSet, GrowthError> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .and_then(|h| h.strip_prefix("# "))
            .ok_or_else(|| GrowthError::Invalid("missing witness header".into()))?;
        let mut name = None;
        let mut n = None;
        // the oracle name may contain spaces; `n=` and `size=` are the last fields
        let fields: Vec<&str> = header.rsplitn(3, ' ').collect();
        for f in fields {
            if let Some(v) = f.strip_prefix("oracle=") {
                name = Some(v.to_string());
            } else if let Some(v) = f.strip_prefix("n=") {
                n = v.parse().ok();
            }
        }
        let n = n.ok_or_else(|| GrowthError::Invalid("header lacks n=".into()))?;
        let mut entries = Vec::new();
        for (i, line) in lines.enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let (w, v) = line
                .split_once('\t')
                .ok_or_else(|| GrowthError::Invalid(format!("line {}: expected w<TAB>v", i + 2)))?;
            entries.push((oracle.parse_word(w.trim())?, oracle.parse_word(v.trim())?));
        }
        Ok(WitnessSet {
            oracle: name.unwrap_or_else(|| oracle.name().to_string()),
            alphabet: oracle.alphabet().to_vec(),
            n,
            entries,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    pub ok: bool,
    /// `(i, j, reason)`: extension of entry `i` fails on entry `j`.
    pub counterexample: Option<(usize, usize, String)>,
}

fn concat(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut w = a.to_vec();
    w.extend_from_slice(b);
    w
}

/// Checks both clauses of uniform `n`-dissimilarity for every ordered pair.
pub fn verify_witness(ws: &WitnessSet, oracle: &LanguageOracle) -> WitnessCheck {
    let fail = |i, j, reason: String| WitnessCheck {
        ok: false,
        counterexample: Some((i, j, reason)),
    };
    for i in 0..ws.len() {
        let v = &ws.entries[i].1;
        for j in 0..ws.len() {
            let wv = concat(&ws.entries[j].0, v);
            if wv.len() > ws.n {
                return fail(i, j, format!("|w·v| = {} exceeds n = {}", wv.len(), ws.n));
            }
            if oracle.contains(&wv) != (i == j) {
                let what = if i == j { "not in the language" } else { "in the language" };
                return fail(i, j, format!("{} is {what}", ws.fmt_word(&wv)));
            }
        }
    }
    WitnessCheck {
        ok: true,
        counterexample: None,
    }
}

/// Direct pairwise `n`-dissimilarity scan: each pair must be separated by
/// some extension drawn from the whole set of extensions.
pub fn pairwise_dissimilar(ws: &WitnessSet, oracle: &LanguageOracle) -> Option<(usize, usize)> {
    let separates = |w: &[usize], x: &[usize], v: &[usize]| {
        w.len() + v.len() <= ws.n
            && x.len() + v.len() <= ws.n
            && oracle.contains(&concat(w, v)) != oracle.contains(&concat(x, v))
    };
    for i in 0..ws.len() {
        for j in i + 1..ws.len() {
            let (w, x) = (&ws.entries[i].0, &ws.entries[j].0);
            let order = [i, j].into_iter().chain((0..ws.len()).filter(|&k| k != i && k != j));
            if !order.into_iter().any(|k| separates(w, x, &ws.entries[k].1)) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Shortlex representatives of `B(⌊n/2⌋)` with inverse extensions, as
/// words over the word-problem alphabet of `generators`.
pub fn dissimilar_from_ball(
    spec: &GroupSpec,
    generators: &[usize],
    n: usize,
    max_elements: usize,
) -> Result<WitnessSet, GrowthError> {
    if n < 2 {
        return Err(GrowthError::Invalid("n must be at least 2".into()));
    }
    let oracle = word_problem_oracle(spec, generators)?;
    let table = ball(spec, generators, n / 2, max_elements)?;
    let letters = ball_letters(spec, generators);
    let symbol = |l: &Letter| letters.iter().position(|m| m == l).expect("ball letter");
    let entries = (0..table.len())
        .map(|i| {
            let w: Vec<usize> = table.representative(i).iter().map(symbol).collect();
            let v: Vec<usize> = w.iter().rev().map(|&s| s ^ 1).collect();
            (w, v)
        })
        .collect();
    Ok(WitnessSet {
        oracle: oracle.name().to_string(),
        alphabet: oracle.alphabet().to_vec(),
        n,
        entries,
    })
}

/// All `0^a₁ 1 … 0^a_k 1` with every `aᵢ ≤ m`, each extended by itself,
/// at bound `n = 2(k + k·m)`.
pub fn lk_witness(k: usize, m: usize) -> WitnessSet {
    let mut entries = Vec::new();
    let mut counts = vec![0usize; k];
    loop {
        let mut w = Vec::new();
        for &a in &counts {
            w.extend(std::iter::repeat_n(0, a));
            w.push(1);
        }
        entries.push((w.clone(), w));
        // odometer, first exponent most significant
        let mut i = k;
        loop {
            if i == 0 {
                return WitnessSet {
                    oracle: format!("L{k}"),
                    alphabet: vec!["0".into(), "1".into()],
                    n: 2 * (k + k * m),
                    entries,
                };
            }
            i -= 1;
            if counts[i] < m {
                counts[i] += 1;
                counts[i + 1..].iter_mut().for_each(|c| *c = 0);
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingReport {
    pub n: usize,
    pub t: usize,
    pub registers: usize,
    pub states: usize,
    pub configurations: usize,
    pub witness_size: usize,
    /// Fewer configurations than witnessed dissimilar strings: two of them
    /// would share a configuration, so the automaton cannot recognize the
    /// language within `t(n)`.
    pub flagged: bool,
}

impl fmt::Display for CountingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "t={}", self.t)?;
        writeln!(f, "registers={}", self.registers)?;
        writeln!(f, "states={}", self.states)?;
        writeln!(f, "configurations={}", self.configurations)?;
        writeln!(f, "witness_size={}", self.witness_size)?;
        writeln!(f, "flagged={}", self.flagged)
    }
}

/// Compares `|states| · |registers reachable within t(n)|` with the best
/// witnessed uniformly `n`-dissimilar set for the oracle.
pub fn counting_audit(
    a: &GroupAutomaton,
    oracle: &LanguageOracle,
    budget: Budget,
    n: usize,
    limits: Limits,
) -> Result<CountingReport, GrowthError> {
    let t = budget.steps(n);
    let witness_size = oracle
        .best_witness(n, limits.max_configurations)?
        .map_or(0, |w| w.len());
    let registers = reachable_registers(a, t, limits)?.len();
    let configurations = registers.saturating_mul(a.state_count());
    Ok(CountingReport {
        n,
        t,
        registers,
        states: a.state_count(),
        configurations,
        witness_size,
        flagged: configurations < witness_size,
    })
}
