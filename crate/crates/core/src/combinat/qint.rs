//! Quantum integers at an exact rational parameter.

use num_traits::{One, Zero};

use crate::{Error, Rational, Result};

/// `[n]_q = 1 + q + … + q^{n-1}`.
pub fn q_int(n: usize, q: &Rational) -> Rational {
    let mut sum = Rational::zero();
    let mut power = Rational::one();
    for _ in 0..n {
        sum += &power;
        power *= q;
    }
    sum
}

/// `[n]_q! = [1]_q [2]_q … [n]_q`.
pub fn q_factorial(n: usize, q: &Rational) -> Rational {
    (1..=n).fold(Rational::one(), |acc, m| acc * q_int(m, q))
}

/// Fails with `QDegenerate` when some `[m]_q`, `1 ≤ m ≤ n`, vanishes.
pub fn check_q(n: usize, q: &Rational) -> Result<()> {
    for m in 1..=n {
        if q_int(m, q).is_zero() {
            return Err(Error::QDegenerate {
                m,
                q: q.to_string(),
            });
        }
    }
    Ok(())
}

/// The Gaussian coefficient `[n]_q! / ([k]_q! [n-k]_q!)`.
pub fn q_binomial(n: usize, k: usize, q: &Rational) -> Result<Rational> {
    if k > n {
        return Err(Error::Index(format!("k = {k} exceeds n = {n}")));
    }
    check_q(n, q)?;
    Ok(q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q)))
}

/// Ordinary binomial coefficient as a rational.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * crate::rat((n - i) as i64) / crate::rat((i + 1) as i64);
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, m| acc * crate::rat(m as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    #[test]
    fn edge_values() {
        assert_eq!(q_binomial(7, 0, &rat(5)).unwrap(), rat(1));
        for n in 0..8 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k, &rat(1)).unwrap(), binomial(n, k));
            }
        }
    }

    #[test]
    fn four_choose_two_at_two() {
        // [4]_2! = 1·3·7·15 = 315, [2]_2! = 3.
        assert_eq!(q_factorial(4, &rat(2)), rat(315));
        assert_eq!(q_binomial(4, 2, &rat(2)).unwrap(), rat(35));
    }

    #[test]
    fn counts_subspaces_over_gf2() {
        // Independent count: 2-dimensional subspaces of GF(2)^4 = number of
        // ordered bases of such subspaces divided by |GL_2(GF(2))| = 6.
        let mut ordered_pairs = 0;
        for u in 1u32..16 {
            for v in 1u32..16 {
                if u != v {
                    ordered_pairs += 1;
                }
            }
        }
        // u, v nonzero and distinct ⟹ independent over GF(2).
        assert_eq!(ordered_pairs / 6, 35);
    }

    #[test]
    fn degenerate_parameters() {
        assert!(matches!(
            q_binomial(2, 1, &rat(-1)),
            Err(Error::QDegenerate { m: 2, .. })
        ));
        assert!(matches!(q_binomial(2, 3, &rat(2)), Err(Error::Index(_))));
        assert!(q_binomial(3, 1, &ratio(1, 2)).is_ok());
    }

    #[test]
    fn pascal_and_symmetry() {
        for q in [rat(2), rat(3), ratio(1, 2), rat(-2)] {
            for n in 1..=12 {
                for k in 1..n {
                    let lhs = q_binomial(n, k, &q).unwrap();
                    let mut qk = Rational::one();
                    for _ in 0..k {
                        qk *= &q;
                    }
                    let rhs = q_binomial(n - 1, k - 1, &q).unwrap()
                        + qk * q_binomial(n - 1, k, &q).unwrap();
                    assert_eq!(lhs, rhs);
                    assert_eq!(lhs, q_binomial(n, n - k, &q).unwrap());
                }
            }
        }
    }
}
