//! Exact arithmetic for every register group and monoid.
//!
//! All elements are kept in a canonical form, so structural equality on
//! [`Element`] is equality in the group. A [`GroupSpec`] pairs a
//! [`GroupKind`] with a table of named generators; transition labels and
//! words are sequences of [`Letter`]s indexing into that table.

pub mod free;
pub mod heisenberg;
pub mod matrix;
pub mod polycyclic;

use std::fmt;

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use free::{FreeLetter, ReducedWord};
pub use heisenberg::HeisTriple;
pub use matrix::{fmt_rational, parse_rational, RationalMatrix};
pub use polycyclic::PolyFn;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("element {element} does not belong to {kind}")]
    KindMismatch { kind: String, element: String },
    #[error("{0} is a monoid; inverses are unavailable")]
    NoInverse(String),
    #[error("singular matrix has no inverse")]
    Singular,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` cannot be inverted in a monoid")]
    InverseInMonoid(String),
    #[error("cannot parse `{text}` as an element of {kind}")]
    BadLiteral { kind: String, text: String },
    #[error("`{text}` is not a valid element of {kind}: {reason}")]
    InvalidElement {
        kind: String,
        text: String,
        reason: String,
    },
    #[error("generator `{0}` is already bound")]
    DuplicateGenerator(String),
    #[error("`{0}` is not a valid generator name")]
    BadName(String),
    #[error("cannot parse group kind `{0}`")]
    BadKind(String),
}

/// Integer vector under componentwise addition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntVector(pub Vec<BigInt>);

impl IntVector {
    pub fn zero(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[axis] = BigInt::one();
        v
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A value in one of the supported groups or monoids, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Trivial,
    Free(ReducedWord),
    Vector(IntVector),
    PosRat(BigRational),
    Matrix(RationalMatrix),
    Heis(HeisTriple),
    Poly(PolyFn),
    Pair(Box<Element>, Box<Element>),
}

impl Element {
    pub fn pair(left: Element, right: Element) -> Self {
        Element::Pair(Box::new(left), Box::new(right))
    }

    /// Injective byte encoding of the canonical form.
    pub fn canonical_key(&self) -> Vec<u8> {
        self.to_string().into_bytes()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Trivial => f.write_str("e"),
            Element::Free(w) => w.fmt(f),
            Element::Vector(v) => v.fmt(f),
            Element::PosRat(q) => fmt_rational(q, f),
            Element::Matrix(m) => m.fmt(f),
            Element::Heis(t) => t.fmt(f),
            Element::Poly(p) => p.fmt(f),
            Element::Pair(l, r) => write!(f, "<{l};{r}>"),
        }
    }
}

/// Which group or monoid a register lives in.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Trivial,
    Free(u32),
    Abelian(usize),
    PosRat,
    MatrixZ(usize),
    MatrixQ(usize),
    Heisenberg,
    /// BS(1,2) realized as the matrix group generated by
    /// `A = [[1,0],[-1,1]]` and `B = [[1/2,0],[0,1]]`.
    Bs12,
    Product(Box<GroupKind>, Box<GroupKind>),
    Polycyclic(u32),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Trivial => f.write_str("trivial"),
            GroupKind::Free(r) => write!(f, "free {r}"),
            GroupKind::Abelian(k) => write!(f, "abelian {k}"),
            GroupKind::PosRat => f.write_str("posrat"),
            GroupKind::MatrixZ(n) => write!(f, "matrixz {n}"),
            GroupKind::MatrixQ(n) => write!(f, "matrixq {n}"),
            GroupKind::Heisenberg => f.write_str("heisenberg"),
            GroupKind::Bs12 => f.write_str("bs12"),
            GroupKind::Product(l, r) => write!(f, "product ({l}) ({r})"),
            GroupKind::Polycyclic(k) => write!(f, "polycyclic {k}"),
        }
    }
}

fn bs_a() -> RationalMatrix {
    RationalMatrix::from_integers(&[&[1, 0], &[-1, 1]]).expect("2x2")
}

fn bs_b() -> RationalMatrix {
    RationalMatrix::diagonal(vec![
        BigRational::new(1.into(), 2.into()),
        BigRational::one(),
    ])
}

fn is_power_of_two(n: &BigInt) -> bool {
    n.is_positive() && (n & (n - 1u32)).is_zero()
}

/// `2^k` for some integer `k`, possibly negative.
fn is_two_power(q: &BigRational) -> bool {
    q.is_positive()
        && ((q.numer().is_one() && is_power_of_two(q.denom()))
            || (q.denom().is_one() && is_power_of_two(q.numer())))
}

fn is_dyadic(q: &BigRational) -> bool {
    is_power_of_two(q.denom())
}

/// Splits `L;R` at the top-level semicolon.
fn split_pair(text: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in text.char_indices() {
        match ch {
            '<' | '(' | '[' => depth += 1,
            '>' | ')' | ']' => depth -= 1,
            ';' if depth == 0 => return Some((&text[..i], &text[i + 1..])),
            _ => {}
        }
    }
    None
}

impl GroupKind {
    /// Parses the parameter part of a `group` line, e.g. `free 2` or
    /// `product (free 2) (abelian 1)`.
    pub fn parse(text: &str) -> Result<GroupKind, AlgebraError> {
        let text = text.trim();
        let bad = || AlgebraError::BadKind(text.to_string());
        let (head, rest) = match text.split_once(char::is_whitespace) {
            Some((h, r)) => (h, r.trim()),
            None => (text, ""),
        };
        let num = |rest: &str| -> Result<usize, AlgebraError> {
            rest.parse::<usize>().ok().filter(|&n| n >= 1).ok_or_else(bad)
        };
        let no_args = |kind: GroupKind| if rest.is_empty() { Ok(kind) } else { Err(bad()) };
        match head.to_ascii_lowercase().as_str() {
            "trivial" => no_args(GroupKind::Trivial),
            "free" => Ok(GroupKind::Free(num(rest)? as u32)),
            "abelian" => Ok(GroupKind::Abelian(num(rest)?)),
            "posrat" => no_args(GroupKind::PosRat),
            "matrixz" => Ok(GroupKind::MatrixZ(num(rest)?)),
            "matrixq" => Ok(GroupKind::MatrixQ(num(rest)?)),
            "heisenberg" => no_args(GroupKind::Heisenberg),
            "bs12" => no_args(GroupKind::Bs12),
            "polycyclic" => Ok(GroupKind::Polycyclic(num(rest)? as u32)),
            "product" => {
                let (left, after) = take_parenthesized(rest).ok_or_else(bad)?;
                let (right, tail) = take_parenthesized(after.trim_start()).ok_or_else(bad)?;
                if !tail.trim().is_empty() {
                    return Err(bad());
                }
                Ok(GroupKind::Product(
                    Box::new(GroupKind::parse(left)?),
                    Box::new(GroupKind::parse(right)?),
                ))
            }
            _ => Err(bad()),
        }
    }

    /// Groups have inverses; the polycyclic monoid (and products containing
    /// it) does not.
    pub fn is_group(&self) -> bool {
        match self {
            GroupKind::Polycyclic(_) => false,
            GroupKind::Product(l, r) => l.is_group() && r.is_group(),
            _ => true,
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupKind::Trivial => Element::Trivial,
            GroupKind::Free(_) => Element::Free(ReducedWord::identity()),
            GroupKind::Abelian(k) => Element::Vector(IntVector::zero(*k)),
            GroupKind::PosRat => Element::PosRat(BigRational::one()),
            GroupKind::MatrixZ(n) | GroupKind::MatrixQ(n) => {
                Element::Matrix(RationalMatrix::identity(*n))
            }
            GroupKind::Bs12 => Element::Matrix(RationalMatrix::identity(2)),
            GroupKind::Heisenberg => Element::Heis(HeisTriple::identity()),
            GroupKind::Product(l, r) => Element::pair(l.identity(), r.identity()),
            GroupKind::Polycyclic(_) => Element::Poly(PolyFn::identity()),
        }
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        match x {
            Element::Trivial => true,
            Element::Free(w) => w.is_empty(),
            Element::Vector(v) => v.0.iter().all(Zero::is_zero),
            Element::PosRat(q) => q.is_one(),
            Element::Matrix(m) => m.is_identity(),
            Element::Heis(t) => t.is_identity(),
            Element::Poly(p) => p.is_identity(),
            Element::Pair(l, r) => match self {
                GroupKind::Product(lk, rk) => lk.is_identity(l) && rk.is_identity(r),
                _ => false,
            },
        }
    }

    /// Why `x` is not a member of this kind, or `None` if it is.
    pub fn membership_error(&self, x: &Element) -> Option<String> {
        let fail = |s: &str| Some(s.to_string());
        match (self, x) {
            (GroupKind::Trivial, Element::Trivial) => None,
            (GroupKind::Free(r), Element::Free(w)) => {
                (w.max_generator() > *r).then(|| format!("generator index exceeds rank {r}"))
            }
            (GroupKind::Abelian(k), Element::Vector(v)) => {
                (v.0.len() != *k).then(|| format!("expected dimension {k}"))
            }
            (GroupKind::PosRat, Element::PosRat(q)) => {
                if q.is_positive() {
                    None
                } else {
                    fail("value must be positive")
                }
            }
            (GroupKind::MatrixZ(n), Element::Matrix(m)) => {
                if m.dim() != *n {
                    Some(format!("expected a {n}x{n} matrix"))
                } else if !m.is_integral() {
                    fail("entries must be integers")
                } else if !m.is_unimodular() {
                    fail("determinant must be +1 or -1")
                } else {
                    None
                }
            }
            (GroupKind::MatrixQ(n), Element::Matrix(m)) => {
                if m.dim() != *n {
                    Some(format!("expected a {n}x{n} matrix"))
                } else if m.determinant().is_zero() {
                    fail("matrix is singular")
                } else {
                    None
                }
            }
            (GroupKind::Bs12, Element::Matrix(m)) => {
                let ok = m.dim() == 2
                    && m.get(0, 1).is_zero()
                    && m.get(1, 1).is_one()
                    && is_two_power(&m.get(0, 0))
                    && is_dyadic(&m.get(1, 0));
                if ok {
                    None
                } else {
                    fail("not of the form [[2^k,0],[d,1]] with d dyadic")
                }
            }
            (GroupKind::Heisenberg, Element::Heis(_)) => None,
            (GroupKind::Product(lk, rk), Element::Pair(l, r)) => {
                lk.membership_error(l).or_else(|| rk.membership_error(r))
            }
            (GroupKind::Polycyclic(k), Element::Poly(p)) => {
                (p.max_symbol() > *k).then(|| format!("stack symbol exceeds {k}"))
            }
            _ => fail("wrong element type"),
        }
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.membership_error(x).is_none()
    }

    fn mismatch(&self, x: &Element) -> AlgebraError {
        AlgebraError::KindMismatch {
            kind: self.to_string(),
            element: x.to_string(),
        }
    }

    /// The register update `x ∘ y`.
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        Ok(match (self, x, y) {
            (GroupKind::Trivial, Element::Trivial, Element::Trivial) => Element::Trivial,
            (GroupKind::Free(_), Element::Free(a), Element::Free(b)) => Element::Free(a.mul(b)),
            (GroupKind::Abelian(k), Element::Vector(a), Element::Vector(b))
                if a.0.len() == *k && b.0.len() == *k =>
            {
                Element::Vector(IntVector(a.0.iter().zip(&b.0).map(|(p, q)| p + q).collect()))
            }
            (GroupKind::PosRat, Element::PosRat(a), Element::PosRat(b)) => Element::PosRat(a * b),
            (
                GroupKind::MatrixZ(n) | GroupKind::MatrixQ(n),
                Element::Matrix(a),
                Element::Matrix(b),
            ) if a.dim() == *n && b.dim() == *n => Element::Matrix(a.mul(b)),
            (GroupKind::Bs12, Element::Matrix(a), Element::Matrix(b))
                if a.dim() == 2 && b.dim() == 2 =>
            {
                Element::Matrix(a.mul(b))
            }
            (GroupKind::Heisenberg, Element::Heis(a), Element::Heis(b)) => Element::Heis(a.mul(b)),
            (GroupKind::Product(lk, rk), Element::Pair(al, ar), Element::Pair(bl, br)) => {
                Element::pair(lk.mul(al, bl)?, rk.mul(ar, br)?)
            }
            (GroupKind::Polycyclic(_), Element::Poly(a), Element::Poly(b)) => Element::Poly(a.then(b)),
            _ => {
                return Err(if self.contains(x) {
                    self.mismatch(y)
                } else {
                    self.mismatch(x)
                })
            }
        })
    }

    pub fn inverse(&self, x: &Element) -> Result<Element, AlgebraError> {
        if !self.is_group() {
            return Err(AlgebraError::NoInverse(self.to_string()));
        }
        Ok(match (self, x) {
            (GroupKind::Trivial, Element::Trivial) => Element::Trivial,
            (GroupKind::Free(_), Element::Free(w)) => Element::Free(w.inverse()),
            (GroupKind::Abelian(_), Element::Vector(v)) => {
                Element::Vector(IntVector(v.0.iter().map(|c| -c).collect()))
            }
            (GroupKind::PosRat, Element::PosRat(q)) => {
                if q.is_zero() {
                    return Err(AlgebraError::Singular);
                }
                Element::PosRat(q.recip())
            }
            (GroupKind::MatrixZ(_) | GroupKind::MatrixQ(_) | GroupKind::Bs12, Element::Matrix(m)) => {
                Element::Matrix(m.inverse().ok_or(AlgebraError::Singular)?)
            }
            (GroupKind::Heisenberg, Element::Heis(t)) => Element::Heis(t.inverse()),
            (GroupKind::Product(lk, rk), Element::Pair(l, r)) => {
                Element::pair(lk.inverse(l)?, rk.inverse(r)?)
            }
            _ => return Err(self.mismatch(x)),
        })
    }

    /// Parses an element literal for this kind and checks membership.
    pub fn parse_element(&self, text: &str) -> Result<Element, AlgebraError> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || AlgebraError::BadLiteral {
            kind: self.to_string(),
            text: text.to_string(),
        };
        let element = if compact == "e" {
            self.identity()
        } else {
            match self {
                GroupKind::Trivial => return Err(bad()),
                GroupKind::Free(_) => Element::Free(free::parse_free(&compact).ok_or_else(bad)?),
                GroupKind::Abelian(_) => {
                    let inner = compact
                        .strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .unwrap_or(&compact);
                    let coords = inner
                        .split(',')
                        .map(|c| c.parse::<BigInt>().ok())
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(bad)?;
                    Element::Vector(IntVector(coords))
                }
                GroupKind::PosRat => Element::PosRat(parse_rational(&compact).ok_or_else(bad)?),
                GroupKind::MatrixZ(_) | GroupKind::MatrixQ(_) | GroupKind::Bs12 => {
                    Element::Matrix(matrix::parse_matrix(&compact).ok_or_else(bad)?)
                }
                GroupKind::Heisenberg => Element::Heis(heisenberg::parse_heis(&compact).ok_or_else(bad)?),
                GroupKind::Product(lk, rk) => {
                    let inner = compact
                        .strip_prefix('<')
                        .and_then(|s| s.strip_suffix('>'))
                        .ok_or_else(bad)?;
                    let (l, r) = split_pair(inner).ok_or_else(bad)?;
                    Element::pair(lk.parse_element(l)?, rk.parse_element(r)?)
                }
                GroupKind::Polycyclic(_) => Element::Poly(polycyclic::parse_poly(&compact).ok_or_else(bad)?),
            }
        };
        match self.membership_error(&element) {
            None => Ok(element),
            Some(reason) => Err(AlgebraError::InvalidElement {
                kind: self.to_string(),
                text: text.to_string(),
                reason,
            }),
        }
    }

    /// Generators bound automatically for this kind.
    pub fn builtin_generators(&self) -> Vec<(String, Element)> {
        match self {
            GroupKind::Free(r) => (1..=*r)
                .map(|i| (format!("x{i}"), Element::Free(ReducedWord::letter(i, false))))
                .collect(),
            GroupKind::Abelian(k) => (0..*k)
                .map(|i| (format!("e{}", i + 1), Element::Vector(IntVector::unit(*k, i))))
                .collect(),
            GroupKind::Heisenberg => vec![
                ("a".into(), Element::Heis(HeisTriple::new(0, 1, 0))),
                ("b".into(), Element::Heis(HeisTriple::new(1, 0, 0))),
                ("c".into(), Element::Heis(HeisTriple::new(0, 0, 1))),
            ],
            GroupKind::Bs12 => vec![
                ("A".into(), Element::Matrix(bs_a())),
                ("B".into(), Element::Matrix(bs_b())),
            ],
            GroupKind::Polycyclic(k) => (1..=*k)
                .map(|i| (format!("P{i}"), Element::Poly(PolyFn::push(i))))
                .chain((1..=*k).map(|i| (format!("Q{i}"), Element::Poly(PolyFn::pop(i)))))
                .collect(),
            GroupKind::Product(lk, rk) => {
                let left = lk
                    .builtin_generators()
                    .into_iter()
                    .map(|(n, g)| (format!("l_{n}"), Element::pair(g, rk.identity())));
                let right = rk
                    .builtin_generators()
                    .into_iter()
                    .map(|(n, g)| (format!("r_{n}"), Element::pair(lk.identity(), g)));
                left.chain(right).collect()
            }
            GroupKind::Trivial | GroupKind::PosRat | GroupKind::MatrixZ(_) | GroupKind::MatrixQ(_) => {
                Vec::new()
            }
        }
    }

    /// The default generating set used for growth computations, if the kind
    /// has one. For the Heisenberg group this is `{a, b}`.
    pub fn standard_generators(&self) -> Option<Vec<String>> {
        match self {
            GroupKind::Trivial => Some(Vec::new()),
            GroupKind::Heisenberg => Some(vec!["a".into(), "b".into()]),
            GroupKind::PosRat | GroupKind::MatrixZ(_) | GroupKind::MatrixQ(_) => None,
            GroupKind::Product(lk, rk) => {
                let mut out: Vec<String> = lk
                    .standard_generators()?
                    .into_iter()
                    .map(|n| format!("l_{n}"))
                    .collect();
                out.extend(rk.standard_generators()?.into_iter().map(|n| format!("r_{n}")));
                Some(out)
            }
            _ => Some(self.builtin_generators().into_iter().map(|(n, _)| n).collect()),
        }
    }
}

fn take_parenthesized(text: &str) -> Option<(&str, &str)> {
    let rest = text.strip_prefix('(')?;
    let mut depth = 1;
    for (i, ch) in rest.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((&rest[..i], &rest[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

/// A generator reference with an exponent sign, resolved against a spec.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.generator, !self.inverse)
    }
}

/// Inverts a word: reverse and flip every exponent.
pub fn invert_word(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|l| l.inv()).collect()
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    name != "_" && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A group kind together with its named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    kind: GroupKind,
    generators: IndexMap<String, Element>,
    builtin_count: usize,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> Self {
        let generators: IndexMap<_, _> = kind.builtin_generators().into_iter().collect();
        let builtin_count = generators.len();
        GroupSpec {
            kind,
            generators,
            builtin_count,
        }
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Binds a new generator name; the element must belong to the kind.
    pub fn bind(&mut self, name: &str, element: Element) -> Result<usize, AlgebraError> {
        if !is_valid_name(name) {
            return Err(AlgebraError::BadName(name.to_string()));
        }
        if self.generators.contains_key(name) {
            return Err(AlgebraError::DuplicateGenerator(name.to_string()));
        }
        if let Some(reason) = self.kind.membership_error(&element) {
            return Err(AlgebraError::InvalidElement {
                kind: self.kind.to_string(),
                text: element.to_string(),
                reason,
            });
        }
        let (idx, _) = self.generators.insert_full(name.to_string(), element);
        Ok(idx)
    }

    pub fn with(mut self, name: &str, literal: &str) -> Result<Self, AlgebraError> {
        let element = self.kind.parse_element(literal)?;
        self.bind(name, element)?;
        Ok(self)
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.get_index_of(name)
    }

    pub fn generator_name(&self, idx: usize) -> &str {
        self.generators.get_index(idx).expect("generator index").0
    }

    pub fn generator(&self, idx: usize) -> &Element {
        self.generators.get_index(idx).expect("generator index").1
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// All generators, builtins first, in binding order.
    pub fn generators(&self) -> impl Iterator<Item = (&str, &Element)> {
        self.generators.iter().map(|(n, e)| (n.as_str(), e))
    }

    /// Generators bound explicitly (not created by the kind).
    pub fn user_generators(&self) -> impl Iterator<Item = (&str, &Element)> {
        self.generators().skip(self.builtin_count)
    }

    pub fn identity(&self) -> Element {
        self.kind.identity()
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element, AlgebraError> {
        self.kind.mul(x, y)
    }

    pub fn inverse(&self, x: &Element) -> Result<Element, AlgebraError> {
        self.kind.inverse(x)
    }

    pub fn is_identity(&self, x: &Element) -> bool {
        self.kind.is_identity(x)
    }

    pub fn canonical_key(&self, x: &Element) -> Vec<u8> {
        x.canonical_key()
    }

    /// Resolves a name with an optional inverse to a letter.
    pub fn letter(&self, name: &str, inverse: bool) -> Result<Letter, AlgebraError> {
        let idx = self
            .generator_index(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        if inverse && !self.kind.is_group() {
            return Err(AlgebraError::InverseInMonoid(name.to_string()));
        }
        Ok(Letter::new(idx, inverse))
    }

    pub fn letter_value(&self, letter: Letter) -> Result<Element, AlgebraError> {
        let g = self.generator(letter.generator);
        if letter.inverse {
            if !self.kind.is_group() {
                return Err(AlgebraError::InverseInMonoid(
                    self.generator_name(letter.generator).to_string(),
                ));
            }
            self.kind.inverse(g)
        } else {
            Ok(g.clone())
        }
    }

    /// Left-to-right product of a word of letters.
    pub fn eval_letters(&self, word: &[Letter]) -> Result<Element, AlgebraError> {
        let mut acc = self.identity();
        for &l in word {
            acc = self.mul(&acc, &self.letter_value(l)?)?;
        }
        Ok(acc)
    }

    /// Left-to-right product of named generators, `true` meaning inverse.
    pub fn eval_word<S: AsRef<str>>(&self, word: &[(S, bool)]) -> Result<Element, AlgebraError> {
        let letters = word
            .iter()
            .map(|(n, inv)| self.letter(n.as_ref(), *inv))
            .collect::<Result<Vec<_>, _>>()?;
        self.eval_letters(&letters)
    }

    /// Parses a whitespace-separated word such as `a b^-1 c`; `_` or the
    /// empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>, AlgebraError> {
        let text = text.trim();
        if text.is_empty() || text == "_" {
            return Ok(Vec::new());
        }
        text.split_whitespace()
            .map(|tok| match tok.strip_suffix("^-1") {
                Some(name) => self.letter(name, true),
                None => self.letter(tok, false),
            })
            .collect()
    }

    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "_".to_string();
        }
        word.iter()
            .map(|l| {
                let name = self.generator_name(l.generator);
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

}

/// Rational helper used by constructions and tests.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sanov() -> GroupSpec {
        GroupSpec::new(GroupKind::MatrixZ(2))
            .with("a", "[[1,2],[0,1]]")
            .unwrap()
            .with("b", "[[1,0],[2,1]]")
            .unwrap()
    }

    #[test]
    fn heisenberg_mul_example() {
        let k = GroupKind::Heisenberg;
        let x = k.parse_element("(1,2,0)h").unwrap();
        let y = k.parse_element("(3,0,0)h").unwrap();
        assert_eq!(k.mul(&x, &y).unwrap().to_string(), "(4,2,6)h");
    }

    #[test]
    fn free_inverse_cancellation() {
        let spec = GroupSpec::new(GroupKind::Free(2));
        let e = spec
            .eval_word(&[("x1", false), ("x2", false), ("x2", true), ("x1", true)])
            .unwrap();
        assert!(spec.is_identity(&e));
    }

    #[test]
    fn sanov_product_and_inverse() {
        let spec = sanov();
        let ab = spec.eval_word(&[("a", false), ("b", false)]).unwrap();
        assert_eq!(ab.to_string(), "[[5,2],[2,1]]");
        let ainv = spec.eval_word(&[("a", true)]).unwrap();
        assert_eq!(ainv.to_string(), "[[1,-2],[0,1]]");
        let conj = spec.eval_word(&[("a", false), ("b", false), ("a", true)]).unwrap();
        assert_eq!(conj.to_string(), "[[5,-8],[2,-3]]");
    }

    #[test]
    fn bs12_relation() {
        let spec = GroupSpec::new(GroupKind::Bs12);
        let lhs = spec.eval_word(&[("B", false), ("A", false), ("B", true)]).unwrap();
        assert_eq!(lhs.to_string(), "[[1,0],[-2,1]]");
        assert_eq!(lhs, spec.eval_word(&[("A", false), ("A", false)]).unwrap());
    }

    #[test]
    fn abelian_inverse() {
        let k = GroupKind::Abelian(2);
        let v = k.parse_element("(3,-1)").unwrap();
        assert_eq!(k.inverse(&v).unwrap().to_string(), "(-3,1)");
    }

    #[test]
    fn empty_word_is_identity() {
        let spec = sanov();
        let empty: [(&str, bool); 0] = [];
        assert!(spec.is_identity(&spec.eval_word(&empty).unwrap()));
    }

    #[test]
    fn polycyclic_identity_is_strict() {
        let spec = GroupSpec::new(GroupKind::Polycyclic(1));
        let pq = spec.eval_word(&[("P1", false), ("Q1", false)]).unwrap();
        let qp = spec.eval_word(&[("Q1", false), ("P1", false)]).unwrap();
        assert!(spec.is_identity(&pq));
        assert!(!spec.is_identity(&qp));
    }

    #[test]
    fn diagonal_inverse_pair() {
        let k = GroupKind::MatrixQ(2);
        let x = k.parse_element("[[2,0],[0,1/2]]").unwrap();
        let y = k.parse_element("[[1/2,0],[0,2]]").unwrap();
        assert!(k.is_identity(&k.mul(&x, &y).unwrap()));
    }

    #[test]
    fn canonical_keys() {
        let ab = GroupKind::Abelian(2);
        assert_eq!(
            ab.identity().canonical_key(),
            ab.parse_element("(0,0)").unwrap().canonical_key()
        );
        let spec = sanov();
        assert_ne!(spec.generator(0).canonical_key(), spec.generator(1).canonical_key());
    }

    #[test]
    fn monoid_errors() {
        let spec = GroupSpec::new(GroupKind::Polycyclic(2));
        assert!(matches!(
            spec.inverse(&spec.identity()),
            Err(AlgebraError::NoInverse(_))
        ));
        assert!(matches!(
            spec.eval_word(&[("P1", true)]),
            Err(AlgebraError::InverseInMonoid(_))
        ));
        assert!(matches!(
            spec.eval_word(&[("P9", false)]),
            Err(AlgebraError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn kind_mismatch() {
        let k = GroupKind::Heisenberg;
        let bad = Element::Trivial;
        assert!(matches!(
            k.mul(&k.identity(), &bad),
            Err(AlgebraError::KindMismatch { .. })
        ));
    }

    #[test]
    fn matrix_kind_validation() {
        assert!(GroupKind::MatrixZ(2).parse_element("[[2,0],[0,1]]").is_err());
        assert!(GroupKind::MatrixQ(2).parse_element("[[1,2],[2,4]]").is_err());
        assert!(GroupKind::MatrixQ(2).parse_element("[[2,0],[0,1]]").is_ok());
        assert!(GroupKind::Bs12.parse_element("[[4,0],[3/8,1]]").is_ok());
        assert!(GroupKind::Bs12.parse_element("[[3,0],[0,1]]").is_err());
    }

    #[test]
    fn kind_parse_round_trip() {
        for text in [
            "trivial",
            "free 2",
            "abelian 3",
            "posrat",
            "matrixq 2",
            "matrixz 4",
            "heisenberg",
            "bs12",
            "polycyclic 2",
            "product (free 2) (free 2)",
            "product (product (free 1) (abelian 2)) (heisenberg)",
        ] {
            assert_eq!(GroupKind::parse(text).unwrap().to_string(), text);
        }
        assert!(GroupKind::parse("free").is_err());
        assert!(GroupKind::parse("free 0").is_err());
        assert!(GroupKind::parse("product (free 2)").is_err());
    }

    #[test]
    fn product_literals() {
        let k = GroupKind::parse("product (free 2) (abelian 1)").unwrap();
        let x = k.parse_element("<x1.x2 ; (3)>").unwrap();
        assert_eq!(x.to_string(), "<x1.x2;(3)>");
        assert_eq!(k.parse_element(&x.to_string()).unwrap(), x);
        assert!(k.parse_element("<x3;(1)>").is_err());
    }
}
