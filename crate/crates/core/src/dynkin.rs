use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DynkinError {
    #[error("{family:?}{rank} is not a Dynkin type")]
    InvalidRank { family: Family, rank: usize },
    #[error("cannot parse Dynkin type {0:?}")]
    Parse(String),
}

/// A connected simply-laced Dynkin type: `A_n` (n ≥ 1), `D_n` (n ≥ 4) or
/// `E_n` (6 ≤ n ≤ 8).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<DynkinType, DynkinError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(DynkinError::InvalidRank { family, rank })
        }
    }

    pub fn a(rank: usize) -> DynkinType {
        DynkinType::new(Family::A, rank).unwrap()
    }

    pub fn d(rank: usize) -> DynkinType {
        DynkinType::new(Family::D, rank).unwrap()
    }

    pub fn e(rank: usize) -> DynkinType {
        DynkinType::new(Family::E, rank).unwrap()
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for DynkinType {
    type Err = DynkinError;

    fn from_str(s: &str) -> Result<DynkinType, DynkinError> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(DynkinError::Parse(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| DynkinError::Parse(s.to_string()))?;
        DynkinType::new(family, rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_side_conditions() {
        assert!(DynkinType::new(Family::A, 0).is_err());
        assert!(DynkinType::new(Family::A, 1).is_ok());
        assert!(DynkinType::new(Family::D, 3).is_err());
        assert!(DynkinType::new(Family::D, 4).is_ok());
        assert!(DynkinType::new(Family::E, 5).is_err());
        assert!(DynkinType::new(Family::E, 8).is_ok());
        assert!(DynkinType::new(Family::E, 9).is_err());
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(DynkinType::e(7).to_string(), "E7");
        assert_eq!("D5".parse::<DynkinType>().unwrap(), DynkinType::d(5));
        assert_eq!("a_3".parse::<DynkinType>().unwrap(), DynkinType::a(3));
        assert!("D3".parse::<DynkinType>().is_err());
        assert!("X4".parse::<DynkinType>().is_err());
    }
}
