//! The discrete Heisenberg group in normal form `b^x a^y c^z`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::matrix::RationalMatrix;

/// Exponents `(x, y, z)` of the normal form `b^x a^y c^z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HeisTriple {
    pub x: BigInt,
    pub y: BigInt,
    pub z: BigInt,
}

impl HeisTriple {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        HeisTriple {
            x: x.into(),
            y: y.into(),
            z: z.into(),
        }
    }

    pub fn identity() -> Self {
        HeisTriple::new(0, 0, 0)
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+y*x')`.
    pub fn mul(&self, o: &HeisTriple) -> HeisTriple {
        HeisTriple {
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            z: &self.z + &o.z + &self.y * &o.x,
        }
    }

    pub fn inverse(&self) -> HeisTriple {
        HeisTriple {
            x: -&self.x,
            y: -&self.y,
            z: &self.x * &self.y - &self.z,
        }
    }

    /// The unitriangular image `[[1,y,z],[0,1,x],[0,0,1]]`.
    pub fn to_matrix(&self) -> RationalMatrix {
        let int = |v: &BigInt| BigRational::from_integer(v.clone());
        let zero = || BigRational::from_integer(0.into());
        let one = || BigRational::from_integer(1.into());
        RationalMatrix::from_rows(vec![
            vec![one(), int(&self.y), int(&self.z)],
            vec![zero(), one(), int(&self.x)],
            vec![zero(), zero(), one()],
        ])
        .expect("3x3")
    }
}

impl fmt::Display for HeisTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})h", self.x, self.y, self.z)
    }
}

pub fn parse_heis(text: &str) -> Option<HeisTriple> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact.strip_prefix('(')?.strip_suffix(")h")?;
    let parts: Vec<BigInt> = inner
        .split(',')
        .map(|p| p.parse().ok())
        .collect::<Option<_>>()?;
    match parts.as_slice() {
        [x, y, z] => Some(HeisTriple::new(x.clone(), y.clone(), z.clone())),
        _ => None,
    }
}
