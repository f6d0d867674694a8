//! Newton-pair sequences describing iterated algebraic cables of the
//! unknot, and the driver comparing the two invariant pipelines.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::coeffring::{RatFunc, Var};
use crate::error::{Error, Result};
use crate::hallrep;
use crate::partitions::{partitions_of, Partition};
use crate::skeinmod;

/// A validated sequence of Newton pairs `(m_i, n_i)`: coprime, `m_i >= 1`.
/// The empty sequence is the unknot itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(i64, i64)>", into = "Vec<(i64, i64)>")]
pub struct NewtonPairs {
    pairs: Vec<(i64, i64)>,
}

impl NewtonPairs {
    pub fn pairs(&self) -> &[(i64, i64)] {
        &self.pairs
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Product of the cabling multiplicities `m_i`.
    pub fn degree_factor(&self) -> u32 {
        self.pairs.iter().map(|(m, _)| *m as u32).product()
    }
}

/// Validate a raw pair list: every `m_i` positive and `gcd(m_i, |n_i|) = 1`
/// (so `(1, 0)` is the only admissible pair with `n_i = 0`).
pub fn validate_pairs(pairs: &[(i64, i64)]) -> Result<NewtonPairs> {
    for &(m, n) in pairs {
        if m < 1 {
            return Err(Error::NonpositiveM(m));
        }
        if m.gcd(&n) != 1 {
            return Err(Error::NotCoprime(m, n));
        }
    }
    Ok(NewtonPairs {
        pairs: pairs.to_vec(),
    })
}

impl TryFrom<Vec<(i64, i64)>> for NewtonPairs {
    type Error = Error;
    fn try_from(pairs: Vec<(i64, i64)>) -> Result<Self> {
        validate_pairs(&pairs)
    }
}

impl From<NewtonPairs> for Vec<(i64, i64)> {
    fn from(p: NewtonPairs) -> Self {
        p.pairs
    }
}

/// Outcome of running both pipelines on one cable and color.
#[derive(Debug, Clone, Serialize)]
pub struct ConnectionReport {
    pub pairs: Vec<(i64, i64)>,
    pub lambda: Vec<u32>,
    pub equal: bool,
    /// Exponents `(a, b)` with `specialized / jH = ±v^a s^b`.
    pub monomial: (i64, i64),
    #[serde(rename = "jE")]
    pub j_e: RatFunc,
    #[serde(rename = "jH")]
    pub j_h: RatFunc,
    pub specialized: RatFunc,
}

/// Run both pipelines, specialize the three-variable polynomial to the skein
/// variables and verify the quotient is `±v^a s^b`.
pub fn compare_connection(
    pairs: &NewtonPairs,
    lambda: &Partition,
    cap: u32,
) -> Result<ConnectionReport> {
    let j_e = hallrep::j_e(pairs, lambda, cap)?;
    let j_h = skeinmod::j_h(pairs, lambda, cap)?;
    let specialized = hallrep::spec_to_skein(&j_e)?;
    let ratio = specialized.div(&j_h)?;
    let (coeff, exps) = ratio.as_monomial().ok_or(Error::NotAMonomialRatio)?;
    let one = num_rational::BigRational::from_integer(1.into());
    if coeff != one && coeff != -one.clone() {
        return Err(Error::NotAMonomialRatio);
    }
    for (i, e) in exps.iter().enumerate() {
        if *e != 0 && i != Var::S as usize && i != Var::V as usize {
            return Err(Error::NotAMonomialRatio);
        }
    }
    Ok(ConnectionReport {
        pairs: pairs.pairs.clone(),
        lambda: lambda.parts().to_vec(),
        equal: true,
        monomial: (exps[Var::V as usize], exps[Var::S as usize]),
        j_e,
        j_h,
        specialized,
    })
}

/// The measured monomial exponents for every partition of the given size;
/// they should agree across the orbit.
pub fn monomials_for_size(pairs: &NewtonPairs, size: u32, cap: u32) -> Result<Vec<(i64, i64)>> {
    partitions_of(size)
        .iter()
        .map(|l| compare_connection(pairs, l, cap).map(|r| r.monomial))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(validate_pairs(&[(2, 3)]).is_ok());
        assert_eq!(validate_pairs(&[(2, 4)]), Err(Error::NotCoprime(2, 4)));
        assert_eq!(validate_pairs(&[(0, 1)]), Err(Error::NonpositiveM(0)));
        assert!(validate_pairs(&[(1, 0)]).is_ok());
        assert_eq!(validate_pairs(&[(2, 0)]), Err(Error::NotCoprime(2, 0)));
    }

    #[test]
    fn degree_factor() {
        let p = validate_pairs(&[(2, 3), (3, 1)]).unwrap();
        assert_eq!(p.degree_factor(), 6);
        assert_eq!(validate_pairs(&[]).unwrap().degree_factor(), 1);
    }

    #[test]
    fn newton_pairs_serde() {
        let p = validate_pairs(&[(2, 3), (1, -1)]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        assert_eq!(text, "[[2,3],[1,-1]]");
        let back: NewtonPairs = serde_json::from_str(&text).unwrap();
        assert_eq!(p, back);
        assert!(serde_json::from_str::<NewtonPairs>("[[2,4]]").is_err());
    }
}
