//! Exact-arithmetic incidence algebras and coalgebras of posets, quivers and
//! graphs, together with the homological invariants computed from them:
//! Cotor groups through truncated cobar complexes, Hochschild cohomology,
//! Ext groups and simplicial cohomology of order complexes.
//!
//! Everything is computed over the rationals; no floating point is used in
//! any linear algebra.

pub mod checks;
pub mod coalgebra;
pub mod combinat;
pub mod error;
pub mod homology;
pub mod report;
pub mod series;
mod sparse;

pub use error::{Error, Result};

use num_bigint::BigInt;
use num_rational::BigRational;

/// The coefficient field.
pub type Rational = BigRational;

/// Integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `num / den`. Panics when `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `p`, `-p` or `p/r` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse {
        line: 0,
        message: format!("not a rational number: {text:?}"),
    };
    match text.split_once('/') {
        Some((p, r)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let r: BigInt = r.trim().parse().map_err(|_| bad())?;
            if r == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rational::new(p, r))
        }
        None => {
            let p: BigInt = text.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(p))
        }
    }
}

/// Complex-size budget: the largest number of cochain coordinates a single
/// complex may have before construction is refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub usize);

impl Budget {
    pub const DEFAULT: Budget = Budget(4_000_000);

    /// Reads `COTORLAB_BUDGET`, falling back to the default.
    pub fn from_env() -> Budget {
        std::env::var("COTORLAB_BUDGET")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Budget)
            .unwrap_or(Budget::DEFAULT)
    }

    pub fn check(self, what: &str, size: usize) -> Result<()> {
        if size > self.0 {
            Err(Error::BudgetExceeded {
                what: what.to_string(),
                size,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), ratio(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn budget_refuses_oversized() {
        assert!(Budget(10).check("c", 10).is_ok());
        assert!(matches!(
            Budget(10).check("c", 11),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
