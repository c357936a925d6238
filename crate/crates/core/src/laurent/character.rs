use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::rat;
use super::LaurentError;

/// A point of the character torus `(Q*)^m`, or its generic point.
///
/// The generic point stands for "all characters off a proper Zariski-closed
/// subset"; it can't be substituted into a polynomial, but ranks at it are
/// ranks over the fraction field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Character {
    Rational(Vec<BigRational>),
    Generic,
}

impl Character {
    pub fn rational(coords: Vec<BigRational>) -> Result<Self, LaurentError> {
        if let Some(i) = coords.iter().position(Zero::is_zero) {
            return Err(LaurentError::ZeroCoordinate(i));
        }
        Ok(Character::Rational(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, LaurentError> {
        Self::rational(coords.iter().map(|&x| rat(x)).collect())
    }

    pub fn trivial(m: usize) -> Self {
        Character::Rational(vec![BigRational::one(); m])
    }

    pub fn is_generic(&self) -> bool {
        matches!(self, Character::Generic)
    }

    pub fn coords(&self) -> Option<&[BigRational]> {
        match self {
            Character::Rational(c) => Some(c),
            Character::Generic => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.coords().is_some_and(|c| c.iter().all(One::is_one))
    }

    /// Coordinates `[lo, hi)` as a character of a factor torus.
    pub fn restrict(&self, lo: usize, hi: usize) -> Self {
        match self {
            Character::Rational(c) => Character::Rational(c[lo..hi].to_vec()),
            Character::Generic => Character::Generic,
        }
    }

    /// Pullback along an integer map `Z^k -> Z^m` given as an `m x k`
    /// matrix: the new coordinate `j` is `prod_i rho_i^{A_ij}`.
    pub fn pull_back(&self, map: &[Vec<i64>], source_dim: usize) -> Self {
        match self {
            Character::Generic => Character::Generic,
            Character::Rational(rho) => Character::Rational(
                (0..source_dim)
                    .map(|j| {
                        rho.iter().zip(map).fold(BigRational::one(), |acc, (r, row)| {
                            let e = row[j];
                            if e == 0 {
                                acc
                            } else {
                                acc * r.pow(e as i32)
                            }
                        })
                    })
                    .collect(),
            ),
        }
    }

    /// Parses `generic`, `trivial`, or a comma-separated list of rationals.
    pub fn parse(text: &str, m: usize) -> Result<Self, LaurentError> {
        let t = text.trim();
        match t {
            "generic" => return Ok(Character::Generic),
            "trivial" => return Ok(Character::trivial(m)),
            _ => {}
        }
        let coords = t
            .split(',')
            .map(|s| {
                s.trim().parse::<BigRational>().map_err(|_| LaurentError::Parse {
                    position: 0,
                    message: format!("bad character coordinate '{}'", s.trim()),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        if coords.len() != m {
            return Err(LaurentError::VariableCountMismatch { left: m, right: coords.len() });
        }
        Self::rational(coords)
    }

    pub fn labels(&self) -> Vec<String> {
        match self {
            Character::Generic => vec!["generic".to_string()],
            Character::Rational(c) => c.iter().map(ToString::to_string).collect(),
        }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Character::Generic => write!(f, "generic"),
            Character::Rational(c) => write!(f, "({})", self.labels_join(c)),
        }
    }
}

impl Character {
    fn labels_join(&self, c: &[BigRational]) -> String {
        c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl Serialize for Character {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Character::Generic => s.serialize_str("generic"),
            Character::Rational(_) => self.labels().serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Coords(Vec<String>),
        }
        match Repr::deserialize(d)? {
            Repr::Tag(t) if t == "generic" => Ok(Character::Generic),
            Repr::Tag(t) => Err(serde::de::Error::custom(format!("unknown character tag '{t}'"))),
            Repr::Coords(c) => {
                let coords = c
                    .iter()
                    .map(|s| s.parse::<BigRational>().map_err(serde::de::Error::custom))
                    .collect::<Result<Vec<_>, _>>()?;
                Character::rational(coords).map_err(serde::de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_coordinate_rejected() {
        assert_eq!(Character::from_ints(&[1, 0]), Err(LaurentError::ZeroCoordinate(1)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(Character::parse("generic", 3).unwrap(), Character::Generic);
        assert!(Character::parse("trivial", 2).unwrap().is_trivial());
        let c = Character::parse("2, -1/3", 2).unwrap();
        assert_eq!(c.labels(), vec!["2", "-1/3"]);
        assert!(Character::parse("1,2", 3).is_err());
    }

    #[test]
    fn pullback_along_map() {
        // nu: Z^3 -> Z^2 columns (1,0), (0,1), (1,-1)
        let map = vec![vec![1, 0, 1], vec![0, 1, -1]];
        let rho = Character::from_ints(&[2, 3]).unwrap();
        let pulled = rho.pull_back(&map, 3);
        assert_eq!(pulled.labels(), vec!["2", "3", "2/3"]);
    }

    #[test]
    fn json_round_trip() {
        let c = Character::parse("2,-1/3", 2).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(s, r#"["2","-1/3"]"#);
        assert_eq!(serde_json::from_str::<Character>(&s).unwrap(), c);
        assert_eq!(serde_json::from_str::<Character>(r#""generic""#).unwrap(), Character::Generic);
    }
}
