//! Cayley balls and growth functions, word-problem and other language
//! oracles, uniformly dissimilar witness sets, and the configuration
//! counting audit.

mod witness;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AlgebraError, Element, GroupKind, GroupSpec, Letter};
use crate::simulator::SimError;

pub use witness::{
    counting_audit, dissimilar_from_ball, lk_member, lk_oracle, lk_witness, pairwise_dissimilar,
    verify_witness, word_problem_oracle, CountingReport, LanguageOracle, OracleFamily, WitnessCheck,
    WitnessSet,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrowthError {
    #[error("ball of radius {radius} exceeds the cap of {limit} elements")]
    Cap { radius: usize, limit: usize },
    #[error("no generating set given and `{0}` has no default")]
    NoGenerators(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Sim(#[from] SimError),
}

/// Resolves generator names; `None` selects the kind's default set.
pub fn resolve_generators(spec: &GroupSpec, names: Option<&[String]>) -> Result<Vec<usize>, GrowthError> {
    let names: Vec<String> = match names {
        Some(n) => n.to_vec(),
        None => spec
            .kind()
            .standard_generators()
            .ok_or_else(|| GrowthError::NoGenerators(spec.kind().to_string()))?,
    };
    names
        .iter()
        .map(|n| spec.generator_index(n).ok_or_else(|| GrowthError::UnknownGenerator(n.clone())))
        .collect()
}

/// Letters of `X ∪ X⁻¹` in the tie-breaking order: each generator, then its
/// inverse (inverses omitted for monoids).
pub fn ball_letters(spec: &GroupSpec, generators: &[usize]) -> Vec<Letter> {
    let group = spec.kind().is_group();
    generators
        .iter()
        .flat_map(|&g| {
            let mut v = vec![Letter::new(g, false)];
            if group {
                v.push(Letter::new(g, true));
            }
            v
        })
        .collect()
}

#[derive(Clone, Debug)]
struct BallEntry {
    element: Element,
    parent: usize,
    letter: Option<Letter>,
    radius: usize,
}

/// Radius-`R` ball with growth values and shortlex representatives.
#[derive(Clone, Debug)]
pub struct BallTable {
    spec: GroupSpec,
    generators: Vec<usize>,
    sizes: Vec<usize>,
    entries: Vec<BallEntry>,
    index: HashMap<Element, usize>,
}

impl BallTable {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_names(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|&g| self.spec.generator_name(g).to_string())
            .collect()
    }

    pub fn radius(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `g(0), …, g(R)`.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Elements in BFS order (shortlex order of their representatives).
    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().map(|e| &e.element)
    }

    /// `|g|_X` if `g` lies in the ball.
    pub fn length(&self, g: &Element) -> Option<usize> {
        self.index.get(g).map(|&i| self.entries[i].radius)
    }

    /// Shortlex-least geodesic word for the `i`-th element.
    pub fn representative(&self, i: usize) -> Vec<Letter> {
        let mut word = Vec::new();
        let mut at = i;
        while let Some(l) = self.entries[at].letter {
            word.push(l);
            at = self.entries[at].parent;
        }
        word.reverse();
        word
    }

    /// `g(0) = 1`, nondecreasing, submultiplicative.
    pub fn check_invariants(&self) -> Result<(), String> {
        let g = &self.sizes;
        if g.first() != Some(&1) {
            return Err(format!("g(0) = {:?}", g.first()));
        }
        for r in 1..g.len() {
            if g[r] < g[r - 1] {
                return Err(format!("g({r}) < g({})", r - 1));
            }
        }
        for m in 0..g.len() {
            for n in 0..g.len() - m {
                if g[m + n] > g[m].saturating_mul(g[n]) {
                    return Err(format!("g({}) > g({m})·g({n})", m + n));
                }
            }
        }
        Ok(())
    }

    /// `r,g(r)` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("r,g(r)\n");
        for (r, g) in self.sizes.iter().enumerate() {
            let _ = writeln!(out, "{r},{g}");
        }
        out
    }
}

/// Breadth-first ball of radius `radius` under right multiplication by
/// `X ∪ X⁻¹`. Layers are expanded in parallel and merged in order.
pub fn ball(spec: &GroupSpec, generators: &[usize], radius: usize, max_elements: usize) -> Result<BallTable, GrowthError> {
    let letters = ball_letters(spec, generators);
    let values = letters
        .iter()
        .map(|&l| spec.letter_value(l))
        .collect::<Result<Vec<_>, _>>()?;
    let identity = spec.identity();
    let mut entries = vec![BallEntry {
        element: identity.clone(),
        parent: 0,
        letter: None,
        radius: 0,
    }];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut sizes = vec![1];
    let mut layer: Vec<usize> = vec![0];
    for r in 1..=radius {
        let products: Vec<Vec<Element>> = layer
            .par_iter()
            .map(|&i| {
                values
                    .iter()
                    .map(|v| spec.mul(&entries[i].element, v))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<_, _>>()?;
        let mut next = Vec::new();
        for (&parent, row) in layer.iter().zip(products) {
            for (k, element) in row.into_iter().enumerate() {
                if index.contains_key(&element) {
                    continue;
                }
                if entries.len() >= max_elements {
                    return Err(GrowthError::Cap {
                        radius: r,
                        limit: max_elements,
                    });
                }
                index.insert(element.clone(), entries.len());
                entries.push(BallEntry {
                    element,
                    parent,
                    letter: Some(letters[k]),
                    radius: r,
                });
                next.push(entries.len() - 1);
            }
        }
        sizes.push(entries.len());
        layer = next;
    }
    Ok(BallTable {
        spec: spec.clone(),
        generators: generators.to_vec(),
        sizes,
        entries,
        index,
    })
}

type LengthFn = Box<dyn Fn(&Element) -> Option<usize> + Send + Sync>;

/// Exact word length for generating sets made of basis elements: free
/// letters, unit vectors, and products of such sets.
fn basis_length(kind: &GroupKind, gens: &[Element]) -> Option<LengthFn> {
    match kind {
        GroupKind::Trivial => Some(Box::new(|_| Some(0))),
        GroupKind::Free(_) => {
            let mut allowed = HashSet::new();
            for g in gens {
                let Element::Free(w) = g else { return None };
                if w.len() != 1 || !allowed.insert(w.letters()[0].generator) {
                    return None;
                }
            }
            Some(Box::new(move |x| match x {
                Element::Free(w) => w
                    .letters()
                    .iter()
                    .all(|l| allowed.contains(&l.generator))
                    .then(|| w.len()),
                _ => None,
            }))
        }
        GroupKind::Abelian(_) => {
            let mut axes = HashSet::new();
            for g in gens {
                let Element::Vector(v) = g else { return None };
                let nonzero: Vec<usize> = (0..v.0.len()).filter(|&i| !v.0[i].is_zero()).collect();
                match nonzero.as_slice() {
                    [i] if v.0[*i].abs() == 1.into() && axes.insert(*i) => {}
                    _ => return None,
                }
            }
            Some(Box::new(move |x| match x {
                Element::Vector(v) => {
                    let mut total = 0usize;
                    for (i, c) in v.0.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        if !axes.contains(&i) {
                            return None;
                        }
                        total = total.checked_add(c.abs().to_usize()?)?;
                    }
                    Some(total)
                }
                _ => None,
            }))
        }
        GroupKind::Product(lk, rk) => {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for g in gens {
                let Element::Pair(l, r) = g else { return None };
                match (lk.is_identity(l), rk.is_identity(r)) {
                    (false, true) => left.push((**l).clone()),
                    (true, false) => right.push((**r).clone()),
                    _ => return None,
                }
            }
            let lf = basis_length(lk, &left)?;
            let rf = basis_length(rk, &right)?;
            Some(Box::new(move |x| match x {
                Element::Pair(l, r) => lf(l)?.checked_add(rf(r)?),
                _ => None,
            }))
        }
        _ => None,
    }
}

enum Strategy {
    Basis(LengthFn),
    Full(BallTable),
    Split(BallTable),
}

/// Membership test for `B_X(R)`.
pub struct BallOracle {
    spec: GroupSpec,
    radius: usize,
    strategy: Strategy,
}

impl BallOracle {
    /// Chooses an exact length formula when `X` is a basis, a full ball for
    /// monoids, and otherwise a meet-in-the-middle test on `B(⌈R/2⌉)`.
    pub fn new(spec: &GroupSpec, generators: &[usize], radius: usize, max_elements: usize) -> Result<BallOracle, GrowthError> {
        let gens: Vec<Element> = generators.iter().map(|&g| spec.generator(g).clone()).collect();
        let strategy = if let Some(f) = basis_length(spec.kind(), &gens) {
            Strategy::Basis(f)
        } else if !spec.kind().is_group() {
            Strategy::Full(ball(spec, generators, radius, max_elements)?)
        } else {
            Strategy::Split(ball(spec, generators, radius.div_ceil(2), max_elements)?)
        };
        Ok(BallOracle {
            spec: spec.clone(),
            radius,
            strategy,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn method(&self) -> &'static str {
        match self.strategy {
            Strategy::Basis(_) => "basis-length",
            Strategy::Full(_) => "full-ball",
            Strategy::Split(_) => "meet-in-the-middle",
        }
    }

    pub fn contains(&self, g: &Element) -> Result<bool, GrowthError> {
        Ok(match &self.strategy {
            Strategy::Basis(f) => f(g).is_some_and(|l| l <= self.radius),
            Strategy::Full(t) => t.length(g).is_some(),
            Strategy::Split(t) => {
                if t.length(g).is_some() {
                    return Ok(true);
                }
                let rest = self.radius / 2;
                for u in t.elements() {
                    let v = self.spec.mul(&self.spec.inverse(u)?, g)?;
                    if t.length(&v).is_some_and(|l| l <= rest) {
                        return Ok(true);
                    }
                }
                false
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GroupKind;

    #[test]
    fn integer_line() {
        let spec = GroupSpec::new(GroupKind::Abelian(1));
        let t = ball(&spec, &[0], 3, 1000).unwrap();
        assert_eq!(t.sizes(), [1, 3, 5, 7]);
        t.check_invariants().unwrap();
        assert_eq!(t.to_csv(), "r,g(r)\n0,1\n1,3\n2,5\n3,7\n");
    }

    #[test]
    fn shortlex_representatives() {
        let spec = GroupSpec::new(GroupKind::Free(2));
        let t = ball(&spec, &[0, 1], 2, 1000).unwrap();
        assert_eq!(t.sizes()[2], 17);
        let words: Vec<String> = (0..6).map(|i| spec.format_word(&t.representative(i))).collect();
        assert_eq!(words, ["_", "x1", "x1^-1", "x2", "x2^-1", "x1 x1"]);
    }

    #[test]
    fn cap_reported() {
        let spec = GroupSpec::new(GroupKind::Free(2));
        assert!(matches!(ball(&spec, &[0, 1], 5, 100), Err(GrowthError::Cap { .. })));
    }

    #[test]
    fn oracle_strategies_agree_with_ball() {
        let spec = GroupSpec::new(GroupKind::Heisenberg);
        let gens = resolve_generators(&spec, None).unwrap();
        let big = ball(&spec, &gens, 6, 1_000_000).unwrap();
        let oracle = BallOracle::new(&spec, &gens, 5, 1_000_000).unwrap();
        assert_eq!(oracle.method(), "meet-in-the-middle");
        for g in big.elements() {
            assert_eq!(oracle.contains(g).unwrap(), big.length(g).unwrap() <= 5);
        }
        let z2 = GroupSpec::new(GroupKind::Abelian(2));
        let oracle = BallOracle::new(&z2, &[0, 1], 3, 1000).unwrap();
        assert_eq!(oracle.method(), "basis-length");
        let full = ball(&z2, &[0, 1], 5, 1000).unwrap();
        for g in full.elements() {
            assert_eq!(oracle.contains(g).unwrap(), full.length(g).unwrap() <= 3);
        }
    }
}
