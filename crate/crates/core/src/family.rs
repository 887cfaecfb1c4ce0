//! The four polynomial families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Family tag.
///
/// * `P`: `(x+1)(y+1)(x+y) - a xy`
/// * `S`: `y^2 + (x^4 + a x^3 + 2a x^2 + a x + 1) y + x^4`
/// * `Q`: `(x^2+x+1) y^2 + a x(x+1) y + x(x^2+x+1)`
/// * `R`: `(x^2+x+1) y^2 + (x^4 + b x^3 + (2b-4) x^2 + b x + 1) y + x^2(x^2+x+1)`
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    P,
    S,
    Q,
    R,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::P, Family::S, Family::Q, Family::R];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::P => "P",
            Family::S => "S",
            Family::Q => "Q",
            Family::R => "R",
        };
        f.write_str(s)
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "P" | "p" => Ok(Family::P),
            "S" | "s" => Ok(Family::S),
            "Q" | "q" => Ok(Family::Q),
            "R" | "r" => Ok(Family::R),
            other => Err(Error::InvalidInput(format!("unknown family `{other}`"))),
        }
    }
}

/// A family together with its real parameter.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub param: f64,
}

impl FamilySpec {
    pub fn new(family: Family, param: f64) -> Self {
        FamilySpec { family, param }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.param)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        for fam in Family::ALL {
            assert_eq!(fam.to_string().parse::<Family>().unwrap(), fam);
        }
        assert!("X".parse::<Family>().is_err());
        assert_eq!(FamilySpec::new(Family::Q, 4.0).to_string(), "Q_4");
    }
}
