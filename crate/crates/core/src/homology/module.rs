use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp::abelian::factorize;
use crate::fp::AbelianGroup;

/// Coefficients with trivial group action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientModule {
    FiniteAbelian { invariant_factors: Vec<u64> },
    PrimeField { p: u64 },
    Rationals,
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && factorize(p) == vec![(p, 1)]
}

impl CoefficientModule {
    pub fn finite(group: &AbelianGroup) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InvalidInput(format!("coefficient group {group} is infinite")));
        }
        Ok(CoefficientModule::FiniteAbelian { invariant_factors: group.invariant_factors().to_vec() })
    }

    pub fn cyclic(m: u64) -> Self {
        CoefficientModule::FiniteAbelian { invariant_factors: AbelianGroup::from_cyclic(&[m]).invariant_factors().to_vec() }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(CoefficientModule::PrimeField { p })
    }

    /// Orders of the cyclic components, or `None` for the rationals.
    pub fn moduli(&self) -> Option<Vec<u64>> {
        match self {
            CoefficientModule::FiniteAbelian { invariant_factors } => Some(invariant_factors.clone()),
            CoefficientModule::PrimeField { p } => Some(vec![*p]),
            CoefficientModule::Rationals => None,
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientModule::FiniteAbelian { .. })
    }

    pub fn order(&self) -> Option<u64> {
        self.moduli().map(|m| m.iter().product())
    }

    pub fn as_group(&self) -> Option<AbelianGroup> {
        self.moduli().map(|m| AbelianGroup::from_cyclic(&m))
    }
}

impl fmt::Display for CoefficientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientModule::FiniteAbelian { invariant_factors } if invariant_factors.is_empty() => write!(f, "0"),
            CoefficientModule::FiniteAbelian { invariant_factors } => {
                let parts: Vec<String> = invariant_factors.iter().map(|m| format!("Z/{m}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            CoefficientModule::PrimeField { p } => write!(f, "F{p}"),
            CoefficientModule::Rationals => write!(f, "Q"),
        }
    }
}

/// Accepts `Q`, `F<p>` and products of cyclic groups such as `Z/2xZ/4`.
impl FromStr for CoefficientModule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse coefficient module `{s}`"));
        if s == "Q" {
            return Ok(CoefficientModule::Rationals);
        }
        if let Some(p) = s.strip_prefix('F') {
            return CoefficientModule::prime_field(p.parse().map_err(|_| bad())?);
        }
        let mut orders = Vec::new();
        for part in s.split(['x', '*']) {
            let m: u64 = part.trim().strip_prefix("Z/").ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            orders.push(m);
        }
        CoefficientModule::finite(&AbelianGroup::from_cyclic(&orders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parsing() {
        assert_eq!("Q".parse::<CoefficientModule>().unwrap(), CoefficientModule::Rationals);
        assert_eq!("F5".parse::<CoefficientModule>().unwrap(), CoefficientModule::PrimeField { p: 5 });
        assert!("F6".parse::<CoefficientModule>().is_err());
        assert_eq!(
            "Z/6xZ/4".parse::<CoefficientModule>().unwrap(),
            CoefficientModule::FiniteAbelian { invariant_factors: vec![2, 12] }
        );
        assert!("Z/0".parse::<CoefficientModule>().is_err());
        assert_eq!("Z/2xZ/4".parse::<CoefficientModule>().unwrap().to_string(), "Z/2xZ/4");
    }
}
