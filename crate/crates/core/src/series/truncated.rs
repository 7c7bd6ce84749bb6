use std::fmt;

use num_traits::{One, Zero};

use crate::combinat::qint::{binomial, check_q, q_binomial};
use crate::{parse_rational, Error, Rational, Result};

/// Which reduced incidence algebra a series lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// Cauchy product, indices `0..=bound`.
    Ordinary,
    /// Binomial product, indices `0..=bound`. Coefficients are the values
    /// `f(n)`, not `f(n)/n!`.
    Exponential,
    /// q-binomial product at the given parameter, indices `0..=bound`.
    Eulerian(Rational),
    /// Divisor product, indices `1..=bound`.
    Dirichlet,
}

impl SeriesKind {
    pub fn name(&self) -> &'static str {
        match self {
            SeriesKind::Ordinary => "ordinary",
            SeriesKind::Exponential => "exponential",
            SeriesKind::Eulerian(_) => "eulerian",
            SeriesKind::Dirichlet => "dirichlet",
        }
    }

    /// Parses a kind name; `q` is required for `eulerian` and ignored
    /// otherwise.
    pub fn parse(name: &str, q: Option<Rational>) -> Result<SeriesKind> {
        match name {
            "ordinary" => Ok(SeriesKind::Ordinary),
            "exponential" => Ok(SeriesKind::Exponential),
            "dirichlet" => Ok(SeriesKind::Dirichlet),
            "eulerian" => q.map(SeriesKind::Eulerian).ok_or_else(|| Error::Parse {
                line: 0,
                message: "eulerian series need q".into(),
            }),
            other => Err(Error::Parse {
                line: 0,
                message: format!("unknown series kind {other:?}"),
            }),
        }
    }

    fn first_index(&self) -> usize {
        match self {
            SeriesKind::Dirichlet => 1,
            _ => 0,
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A truncated element of one of the four reduced incidence algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    kind: SeriesKind,
    bound: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// `coeffs[i]` is the coefficient at index `first + i`, where `first` is
    /// 1 for Dirichlet series and 0 otherwise. Missing coefficients are zero;
    /// extra ones are an error.
    pub fn new(kind: SeriesKind, bound: usize, mut coeffs: Vec<Rational>) -> Result<Self> {
        let len = Self::len_for(&kind, bound);
        if coeffs.len() > len {
            return Err(Error::Index(format!(
                "{} coefficients given for bound {bound} ({len} slots)",
                coeffs.len()
            )));
        }
        if let SeriesKind::Eulerian(q) = &kind {
            check_q(bound, q)?;
        }
        coeffs.resize(len, Rational::zero());
        Ok(TruncatedSeries {
            kind,
            bound,
            coeffs,
        })
    }

    fn len_for(kind: &SeriesKind, bound: usize) -> usize {
        match kind {
            SeriesKind::Dirichlet => bound,
            _ => bound + 1,
        }
    }

    pub fn from_fn(kind: SeriesKind, bound: usize, f: impl Fn(usize) -> Rational) -> Result<Self> {
        let first = kind.first_index();
        let coeffs = (0..Self::len_for(&kind, bound)).map(|i| f(i + first)).collect();
        Self::new(kind, bound, coeffs)
    }

    /// The convolution identity δ.
    pub fn identity(kind: SeriesKind, bound: usize) -> Result<Self> {
        let first = kind.first_index();
        Self::from_fn(kind, bound, |n| {
            if n == first {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// The constant function 1.
    pub fn zeta(kind: SeriesKind, bound: usize) -> Result<Self> {
        Self::from_fn(kind, bound, |_| Rational::one())
    }

    pub fn kind(&self) -> &SeriesKind {
        &self.kind
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient at index `n` (zero outside the stored range).
    pub fn coeff(&self, n: usize) -> Rational {
        let first = self.kind.first_index();
        if n < first {
            return Rational::zero();
        }
        self.coeffs.get(n - first).cloned().unwrap_or_else(Rational::zero)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        match (&self.kind, &other.kind) {
            (SeriesKind::Eulerian(p), SeriesKind::Eulerian(q)) if p != q => {
                return Err(Error::QMismatch(p.to_string(), q.to_string()))
            }
            (a, b) if std::mem::discriminant(a) != std::mem::discriminant(b) => {
                return Err(Error::KindMismatch(a.to_string(), b.to_string()))
            }
            _ => {}
        }
        if self.bound != other.bound {
            return Err(Error::BoundMismatch(self.bound, other.bound));
        }
        Ok(())
    }

    /// Weight of `f(r) g(n-r)` in the product at index `n`.
    fn weight(kind: &SeriesKind, n: usize, r: usize) -> Rational {
        match kind {
            SeriesKind::Ordinary => Rational::one(),
            SeriesKind::Exponential => binomial(n, r),
            SeriesKind::Eulerian(q) => q_binomial(n, r, q).expect("q checked at construction"),
            SeriesKind::Dirichlet => unreachable!(),
        }
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = match &self.kind {
            SeriesKind::Dirichlet => {
                let mut out = vec![Rational::zero(); self.bound];
                for i in 1..=self.bound {
                    let fi = &self.coeffs[i - 1];
                    if fi.is_zero() {
                        continue;
                    }
                    let mut j = 1;
                    while i * j <= self.bound {
                        out[i * j - 1] += fi * &other.coeffs[j - 1];
                        j += 1;
                    }
                }
                out
            }
            kind => (0..=self.bound)
                .map(|n| {
                    (0..=n).fold(Rational::zero(), |acc, r| {
                        acc + Self::weight(kind, n, r) * &self.coeffs[r] * &other.coeffs[n - r]
                    })
                })
                .collect(),
        };
        Ok(TruncatedSeries {
            kind: self.kind.clone(),
            bound: self.bound,
            coeffs,
        })
    }

    /// Convolution inverse by forward substitution.
    pub fn invert(&self) -> Result<Self> {
        let lead = &self.coeffs[0];
        if lead.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv_lead = lead.recip();
        let mut out = vec![Rational::zero(); self.coeffs.len()];
        out[0] = inv_lead.clone();
        match &self.kind {
            SeriesKind::Dirichlet => {
                for n in 2..=self.bound {
                    let mut acc = Rational::zero();
                    for d in 2..=n {
                        if n % d == 0 {
                            acc += &self.coeffs[d - 1] * &out[n / d - 1];
                        }
                    }
                    out[n - 1] = -acc * &inv_lead;
                }
            }
            kind => {
                for n in 1..=self.bound {
                    let mut acc = Rational::zero();
                    for r in 1..=n {
                        acc += Self::weight(kind, n, r) * &self.coeffs[r] * &out[n - r];
                    }
                    out[n] = -acc * &inv_lead;
                }
            }
        }
        Ok(TruncatedSeries {
            kind: self.kind.clone(),
            bound: self.bound,
            coeffs: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries {
            kind: self.kind.clone(),
            bound: self.bound,
            coeffs,
        })
    }

    /// Parses `kind=K bound=N coeffs=c1,c2,… [q=p/r]` (fields in any order).
    pub fn parse_literal(text: &str) -> Result<Self> {
        let mut kind = None;
        let mut bound = None;
        let mut coeffs = None;
        let mut q = None;
        let bad = |message: String| Error::Parse { line: 0, message };
        for field in text.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {field:?}")))?;
            match key {
                "kind" => kind = Some(value.to_string()),
                "bound" => {
                    bound = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad bound {value:?}")))?,
                    )
                }
                "coeffs" => {
                    coeffs = Some(
                        value
                            .split(',')
                            .filter(|c| !c.is_empty())
                            .map(parse_rational)
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "q" => q = Some(parse_rational(value)?),
                other => return Err(bad(format!("unknown field {other:?}"))),
            }
        }
        let kind = SeriesKind::parse(&kind.ok_or_else(|| bad("missing kind".into()))?, q)?;
        let bound = bound.ok_or_else(|| bad("missing bound".into()))?;
        Self::new(kind, bound, coeffs.unwrap_or_default())
    }

    pub fn to_literal(&self) -> String {
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let q = match &self.kind {
            SeriesKind::Eulerian(q) => format!(" q={q}"),
            _ => String::new(),
        };
        format!(
            "kind={} bound={} coeffs={}{q}",
            self.kind,
            self.bound,
            coeffs.join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn ones(kind: SeriesKind, bound: usize) -> TruncatedSeries {
        TruncatedSeries::zeta(kind, bound).unwrap()
    }

    #[test]
    fn identities() {
        let d = TruncatedSeries::identity(SeriesKind::Ordinary, 4).unwrap();
        assert_eq!(d.coeffs(), &[rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let d = TruncatedSeries::identity(SeriesKind::Dirichlet, 5).unwrap();
        assert_eq!(d.coeff(1), rat(1));
        assert!((2..=5).all(|n| d.coeff(n).is_zero()));
    }

    #[test]
    fn product_examples() {
        let f = ones(SeriesKind::Ordinary, 3);
        assert_eq!(f.convolve(&f).unwrap().coeffs(), &[rat(1), rat(2), rat(3), rat(4)]);
        let f = ones(SeriesKind::Exponential, 6);
        let p = f.convolve(&f).unwrap();
        for n in 0..=6 {
            assert_eq!(p.coeff(n), rat(1 << n));
        }
        let f = ones(SeriesKind::Eulerian(rat(2)), 2);
        assert_eq!(f.convolve(&f).unwrap().coeff(2), rat(5));
        let f = ones(SeriesKind::Dirichlet, 8);
        assert_eq!(f.convolve(&f).unwrap().coeff(6), rat(4));
    }

    #[test]
    fn inverse_examples() {
        let f = ones(SeriesKind::Ordinary, 5);
        assert_eq!(
            f.invert().unwrap().coeffs(),
            &[rat(1), rat(-1), rat(0), rat(0), rat(0), rat(0)]
        );
        let mu = ones(SeriesKind::Dirichlet, 8).invert().unwrap();
        let expected: Vec<_> = [1, -1, -1, 0, -1, 1, -1, 0].iter().map(|&v| rat(v)).collect();
        assert_eq!(mu.coeffs(), expected.as_slice());
        let d = TruncatedSeries::identity(SeriesKind::Exponential, 4).unwrap();
        assert_eq!(d.invert().unwrap(), d);
        let z = TruncatedSeries::new(SeriesKind::Ordinary, 2, vec![rat(0), rat(1)]).unwrap();
        assert_eq!(z.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn mismatches() {
        let a = ones(SeriesKind::Ordinary, 3);
        let b = ones(SeriesKind::Dirichlet, 3);
        assert!(matches!(a.convolve(&b), Err(Error::KindMismatch(..))));
        let c = ones(SeriesKind::Ordinary, 4);
        assert_eq!(a.convolve(&c), Err(Error::BoundMismatch(3, 4)));
        let p = ones(SeriesKind::Eulerian(rat(2)), 3);
        let q = ones(SeriesKind::Eulerian(rat(3)), 3);
        assert!(matches!(p.convolve(&q), Err(Error::QMismatch(..))));
        assert!(matches!(
            TruncatedSeries::zeta(SeriesKind::Eulerian(rat(-1)), 3),
            Err(Error::QDegenerate { .. })
        ));
    }

    #[test]
    fn literal_round_trip() {
        let s = TruncatedSeries::parse_literal("kind=eulerian bound=3 coeffs=1,1/2,-3 q=1/2").unwrap();
        assert_eq!(s.coeff(1), ratio(1, 2));
        assert_eq!(s.coeff(3), rat(0));
        assert_eq!(TruncatedSeries::parse_literal(&s.to_literal()).unwrap(), s);
        assert!(TruncatedSeries::parse_literal("kind=eulerian bound=3").is_err());
        assert!(TruncatedSeries::parse_literal("kind=ordinary bound=1 coeffs=1,2,3").is_err());
    }
}
