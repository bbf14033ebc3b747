//! Automaton transformations: homomorphic images under explicit embeddings
//! and the conversion from polycyclic-monoid to free-group registers.

mod kambites;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{
    invert_word, AlgebraError, Element, GroupKind, GroupSpec, HeisTriple, Letter, RationalMatrix,
    ReducedWord,
};
use crate::automaton::{AutomatonError, GroupAutomaton, Transition};

pub use kambites::kambites_convert;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("embedding `{name}` expects source group `{expected}`, found `{found}`")]
    WrongSource {
        name: EmbeddingKind,
        expected: String,
        found: String,
    },
    #[error("generator `{0}` has no image")]
    Unmapped(String),
    #[error("ε-transition {0} not allowed in the input")]
    EpsilonTransition(String),
    #[error("label of transition {0} is not a single push, pop or identity")]
    CompoundLabel(String),
    #[error("expected a polycyclic register, found `{0}`")]
    NotPolycyclic(String),
    #[error("unknown embedding `{0}`")]
    UnknownEmbedding(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EmbeddingKind {
    /// `F₂ → SL(2,Z)` via `[[1,2],[0,1]]`, `[[1,0],[2,1]]`.
    Sanov,
    /// `Q⁺ → SL(2,Q)`, `q ↦ diag(q, 1/q)`.
    Diag,
    /// `F₂ × F₂ → SL(4,Z)` by block-diagonal Sanov images.
    Block,
    /// `Z² → H`, `(m, n) ↦ b^m c^n`.
    HeisAbelian,
}

impl EmbeddingKind {
    pub const ALL: [EmbeddingKind; 4] = [
        EmbeddingKind::Sanov,
        EmbeddingKind::Diag,
        EmbeddingKind::Block,
        EmbeddingKind::HeisAbelian,
    ];

    pub fn parse(name: &str) -> Result<EmbeddingKind, ConstructionError> {
        EmbeddingKind::ALL
            .into_iter()
            .find(|k| k.to_string() == name)
            .ok_or_else(|| ConstructionError::UnknownEmbedding(name.to_string()))
    }

    pub fn source_kind(&self) -> GroupKind {
        match self {
            EmbeddingKind::Sanov => GroupKind::Free(2),
            EmbeddingKind::Diag => GroupKind::PosRat,
            EmbeddingKind::Block => {
                GroupKind::Product(Box::new(GroupKind::Free(2)), Box::new(GroupKind::Free(2)))
            }
            EmbeddingKind::HeisAbelian => GroupKind::Abelian(2),
        }
    }

    pub fn target_kind(&self) -> GroupKind {
        match self {
            EmbeddingKind::Sanov => GroupKind::MatrixZ(2),
            EmbeddingKind::Diag => GroupKind::MatrixQ(2),
            EmbeddingKind::Block => GroupKind::MatrixZ(4),
            EmbeddingKind::HeisAbelian => GroupKind::Heisenberg,
        }
    }
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingKind::Sanov => "sanov",
            EmbeddingKind::Diag => "diag",
            EmbeddingKind::Block => "block",
            EmbeddingKind::HeisAbelian => "heis-abelian",
        })
    }
}

pub fn sanov_a() -> RationalMatrix {
    RationalMatrix::from_integers(&[&[1, 2], &[0, 1]]).expect("2x2")
}

pub fn sanov_b() -> RationalMatrix {
    RationalMatrix::from_integers(&[&[1, 0], &[2, 1]]).expect("2x2")
}

fn sanov_word(w: &ReducedWord) -> RationalMatrix {
    let (a, b) = (sanov_a(), sanov_b());
    let (ai, bi) = (a.inverse().expect("det 1"), b.inverse().expect("det 1"));
    let mut acc = RationalMatrix::identity(2);
    for l in w.letters() {
        let m = match (l.generator, l.inverse) {
            (1, false) => &a,
            (1, true) => &ai,
            (2, false) => &b,
            _ => &bi,
        };
        acc = acc.mul(m);
    }
    acc
}

/// An injective homomorphism together with a generator-image table for a
/// particular source spec.
#[derive(Clone, Debug)]
pub struct Embedding {
    kind: EmbeddingKind,
    source: GroupSpec,
    target: GroupSpec,
    images: Vec<Vec<Letter>>,
}

impl Embedding {
    /// Builds the image table for every generator of `source`.
    pub fn new(kind: EmbeddingKind, source: &GroupSpec) -> Result<Embedding, ConstructionError> {
        if *source.kind() != kind.source_kind() {
            return Err(ConstructionError::WrongSource {
                name: kind,
                expected: kind.source_kind().to_string(),
                found: source.kind().to_string(),
            });
        }
        let mut target = GroupSpec::new(kind.target_kind());
        let mut images = Vec::with_capacity(source.generator_count());
        match kind {
            EmbeddingKind::Sanov => {
                let ma = target.bind("Ma", Element::Matrix(sanov_a()))?;
                let mb = target.bind("Mb", Element::Matrix(sanov_b()))?;
                for (_, g) in source.generators() {
                    let Element::Free(w) = g else { unreachable!("free source") };
                    images.push(free_image(w, ma, mb));
                }
            }
            EmbeddingKind::Block => {
                let block = |m: RationalMatrix, left: bool| {
                    let id = RationalMatrix::identity(2);
                    Element::Matrix(if left {
                        RationalMatrix::block_diagonal(&m, &id)
                    } else {
                        RationalMatrix::block_diagonal(&id, &m)
                    })
                };
                let la = target.bind("L_Ma", block(sanov_a(), true))?;
                let lb = target.bind("L_Mb", block(sanov_b(), true))?;
                let ra = target.bind("R_Ma", block(sanov_a(), false))?;
                let rb = target.bind("R_Mb", block(sanov_b(), false))?;
                for (_, g) in source.generators() {
                    let Element::Pair(l, r) = g else { unreachable!("pair source") };
                    let (Element::Free(l), Element::Free(r)) = (&**l, &**r) else {
                        unreachable!("free components")
                    };
                    let mut word = free_image(l, la, lb);
                    word.extend(free_image(r, ra, rb));
                    images.push(word);
                }
            }
            EmbeddingKind::Diag => {
                for (name, g) in source.generators() {
                    let Element::PosRat(q) = g else { unreachable!("posrat source") };
                    let idx = target.bind(name, Element::Matrix(diag_image(q)))?;
                    images.push(vec![Letter::new(idx, false)]);
                }
            }
            EmbeddingKind::HeisAbelian => {
                let b = target.generator_index("b").expect("builtin b");
                let c = target.generator_index("c").expect("builtin c");
                for (name, g) in source.generators() {
                    let Element::Vector(v) = g else { unreachable!("vector source") };
                    let mut word = Vec::new();
                    for (gen, coord) in [(b, &v.0[0]), (c, &v.0[1])] {
                        let count = coord
                            .abs()
                            .to_usize()
                            .filter(|&c| c <= 1 << 16)
                            .ok_or_else(|| ConstructionError::Unmapped(name.to_string()))?;
                        word.extend(std::iter::repeat_n(Letter::new(gen, coord.is_negative()), count));
                    }
                    images.push(word);
                }
            }
        }
        Ok(Embedding {
            kind,
            source: source.clone(),
            target,
            images,
        })
    }

    pub fn kind(&self) -> EmbeddingKind {
        self.kind
    }

    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn target(&self) -> &GroupSpec {
        &self.target
    }

    /// Image word of a source generator.
    pub fn image(&self, generator: usize) -> &[Letter] {
        &self.images[generator]
    }

    /// Image of a source word, letter by letter through the table.
    pub fn map_letters(&self, word: &[Letter]) -> Vec<Letter> {
        word.iter()
            .flat_map(|l| {
                let img = &self.images[l.generator];
                if l.inverse {
                    invert_word(img)
                } else {
                    img.clone()
                }
            })
            .collect()
    }

    /// Image of an element by the defining formula, independent of the
    /// generator table.
    pub fn map_element(&self, x: &Element) -> Result<Element, ConstructionError> {
        let mismatch = || {
            ConstructionError::Algebra(AlgebraError::KindMismatch {
                kind: self.source.kind().to_string(),
                element: x.to_string(),
            })
        };
        Ok(match (self.kind, x) {
            (EmbeddingKind::Sanov, Element::Free(w)) => Element::Matrix(sanov_word(w)),
            (EmbeddingKind::Diag, Element::PosRat(q)) => Element::Matrix(diag_image(q)),
            (EmbeddingKind::Block, Element::Pair(l, r)) => match (&**l, &**r) {
                (Element::Free(l), Element::Free(r)) => {
                    Element::Matrix(RationalMatrix::block_diagonal(&sanov_word(l), &sanov_word(r)))
                }
                _ => return Err(mismatch()),
            },
            (EmbeddingKind::HeisAbelian, Element::Vector(v)) if v.0.len() == 2 => {
                Element::Heis(HeisTriple::new(v.0[0].clone(), BigInt::from(0), v.0[1].clone()))
            }
            _ => return Err(mismatch()),
        })
    }
}

fn free_image(w: &ReducedWord, first: usize, second: usize) -> Vec<Letter> {
    w.letters()
        .iter()
        .map(|l| Letter::new(if l.generator == 1 { first } else { second }, l.inverse))
        .collect()
}

fn diag_image(q: &BigRational) -> RationalMatrix {
    RationalMatrix::diagonal(vec![q.clone(), q.recip()])
}

/// Replaces every transition label by its image word; states, alphabet and
/// transition graph are unchanged.
pub fn homomorphic_image(a: &GroupAutomaton, e: &Embedding) -> Result<GroupAutomaton, ConstructionError> {
    if a.spec() != e.source() {
        for (name, g) in a.spec().generators() {
            match e.source().generator_index(name) {
                Some(i) if e.source().generator(i) == g => {}
                _ => return Err(ConstructionError::Unmapped(name.to_string())),
            }
        }
        if a.spec().kind() != e.source().kind() {
            return Err(ConstructionError::WrongSource {
                name: e.kind,
                expected: e.source().kind().to_string(),
                found: a.spec().kind().to_string(),
            });
        }
    }
    let index_in_source = |g: usize| {
        let name = a.spec().generator_name(g);
        e.source()
            .generator_index(name)
            .ok_or_else(|| ConstructionError::Unmapped(name.to_string()))
    };
    let transitions = a
        .transitions()
        .iter()
        .map(|t| {
            let label = t
                .label
                .iter()
                .map(|l| Ok(Letter::new(index_in_source(l.generator)?, l.inverse)))
                .collect::<Result<Vec<_>, ConstructionError>>()?;
            Ok(Transition {
                label: e.map_letters(&label),
                ..t.clone()
            })
        })
        .collect::<Result<Vec<_>, ConstructionError>>()?;
    Ok(GroupAutomaton::new(
        e.target().clone(),
        a.states().to_vec(),
        a.alphabet().to_vec(),
        transitions,
        a.initial(),
        a.accepting().collect::<Vec<_>>(),
    )?)
}

/// Uniform random word of length `0..=max_len` over the given generators
/// and, for groups, their inverses.
pub fn random_word(spec: &GroupSpec, generators: &[usize], max_len: usize, rng: &mut impl Rng) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    let invertible = spec.kind().is_group();
    (0..len)
        .map(|_| {
            let g = generators[rng.gen_range(0..generators.len())];
            Letter::new(g, invertible && rng.gen_bool(0.5))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub samples: usize,
    pub failures: Vec<String>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sampled homomorphism and injectivity check on random word pairs of
/// length at most 8. Also checks that the image table agrees with the
/// defining formula.
pub fn verify_embedding(e: &Embedding, samples: usize, seed: u64) -> EmbeddingReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let gens: Vec<usize> = (0..e.source().generator_count()).collect();
    let src = e.source();
    let tgt = e.target();
    let map = |x: &Element| e.map_element(x).map_err(|err| err.to_string());
    if gens.is_empty() {
        return EmbeddingReport { samples: 0, failures };
    }
    match map(&src.identity()) {
        Ok(img) if tgt.is_identity(&img) => {}
        other => failures.push(format!("identity maps to {other:?}")),
    }
    for i in 0..samples {
        let u = random_word(src, &gens, 8, &mut rng);
        let v = random_word(src, &gens, 8, &mut rng);
        let check = || -> Result<Option<String>, String> {
            let x = src.eval_letters(&u).map_err(|e| e.to_string())?;
            let y = src.eval_letters(&v).map_err(|e| e.to_string())?;
            let xy = src.mul(&x, &y).map_err(|e| e.to_string())?;
            let (fx, fy, fxy) = (map(&x)?, map(&y)?, map(&xy)?);
            if tgt.mul(&fx, &fy).map_err(|e| e.to_string())? != fxy {
                return Ok(Some(format!("sample {i}: image of {x}·{y} is not the product of images")));
            }
            if tgt.eval_letters(&e.map_letters(&u)).map_err(|e| e.to_string())? != fx {
                return Ok(Some(format!("sample {i}: generator table disagrees with formula at {x}")));
            }
            if tgt.is_identity(&fxy) && !src.is_identity(&xy) {
                return Ok(Some(format!("sample {i}: {xy} maps to the identity")));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(msg)) | Err(msg) => failures.push(msg),
        }
    }
    EmbeddingReport { samples, failures }
}

/// Convenience: a `posrat` spec with the given named rationals.
pub fn posrat_spec(gens: &[(&str, i64, i64)]) -> Result<GroupSpec, AlgebraError> {
    let mut spec = GroupSpec::new(GroupKind::PosRat);
    for &(name, p, q) in gens {
        if p <= 0 || q <= 0 {
            return Err(AlgebraError::NoInverse(name.to_string()));
        }
        spec.bind(name, Element::PosRat(BigRational::new(p.into(), q.into())))?;
    }
    Ok(spec)
}
