//! Exact constants ledger for the host construction and the lifting step.
//!
//! With `eps = 1/(3(k+1))`:
//! `a0 = 2 + 4/(eps(k+1))`, `a = max{6k, a0}`, `c = 4a/eps^2`, `b = 4ac`,
//! `s = 2k`, `t = (64k)^(2k)`, and the local-lemma product
//! `64k * t^(-1/s)` equals one exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstantsError {
    #[error("k must be at least 1")]
    ZeroPower,
    #[error("override for {0} must be positive")]
    NonPositive(&'static str),
    #[error("a = {a} is below max(6k, a0) = {min}")]
    ABelowMinimum { a: Box<BigRational>, min: Box<BigRational> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperConstants {
    pub k: u32,
    pub epsilon: BigRational,
    pub a0: BigRational,
    pub a: BigRational,
    /// Edge probability of the sampled graph is `c / n`.
    pub c: BigRational,
    pub b: BigRational,
    pub s: u32,
    pub t: BigInt,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn default_epsilon(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(3 * (k as i64 + 1)))
}

pub fn paper_constants(
    k: u32,
    epsilon_override: Option<BigRational>,
    a_override: Option<BigRational>,
) -> Result<PaperConstants, ConstantsError> {
    if k == 0 {
        return Err(ConstantsError::ZeroPower);
    }
    let epsilon = match epsilon_override {
        Some(e) if !e.is_positive() => return Err(ConstantsError::NonPositive("epsilon")),
        Some(e) => e,
        None => default_epsilon(k),
    };
    let kk = rat(k as i64);
    let a0 = rat(2) + rat(4) / (&epsilon * (&kk + rat(1)));
    let min_a = std::cmp::max(rat(6) * &kk, a0.clone());
    let a = match a_override {
        Some(a) if !a.is_positive() => return Err(ConstantsError::NonPositive("a")),
        Some(a) if a < min_a => return Err(ConstantsError::ABelowMinimum { a: Box::new(a), min: Box::new(min_a) }),
        Some(a) => a,
        None => min_a,
    };
    let c = rat(4) * &a / (&epsilon * &epsilon);
    let b = rat(4) * &a * &c;
    let s = 2 * k;
    let t = Pow::pow(BigInt::from(64 * k as i64), s);
    let out = PaperConstants {
        k,
        epsilon,
        a0,
        a,
        c,
        b,
        s,
        t,
    };
    debug_assert!(out.local_lemma_product().is_some_and(|p| p.is_one()));
    Ok(out)
}

impl PaperConstants {
    /// `64k * t^(-1/s)`, or `None` if `t` is not a perfect `s`th power.
    pub fn local_lemma_product(&self) -> Option<BigRational> {
        let root = self.t.nth_root(self.s);
        if Pow::pow(&root, self.s) != self.t || root.is_zero() {
            return None;
        }
        Some(BigRational::new(BigInt::from(64 * self.k as i64), root))
    }

    /// Edge probability `c / n` for the sampled graph on `2an` vertices.
    pub fn edge_probability(&self, n: u64) -> BigRational {
        &self.c / rat(n as i64)
    }
}

impl fmt::Display for PaperConstants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k {}", self.k)?;
        writeln!(f, "epsilon {}", self.epsilon)?;
        writeln!(f, "a0 {}", self.a0)?;
        writeln!(f, "a {}", self.a)?;
        writeln!(f, "c {}", self.c)?;
        writeln!(f, "b {}", self.b)?;
        writeln!(f, "s {}", self.s)?;
        writeln!(f, "t {}", self.t)?;
        match self.local_lemma_product() {
            Some(p) => writeln!(f, "lll_product {p}"),
            None => writeln!(f, "lll_product undefined"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frac(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn k2_defaults() {
        let c = paper_constants(2, None, None).unwrap();
        assert_eq!(c.epsilon, frac(1, 9));
        assert_eq!(c.a0, rat(14));
        assert_eq!(c.a, rat(14));
        assert_eq!(c.c, rat(4536));
        assert_eq!(c.b, rat(254016));
        assert_eq!(c.s, 4);
        assert_eq!(c.t, BigInt::from(268_435_456u64));
        assert_eq!(c.local_lemma_product(), Some(rat(1)));
    }

    #[test]
    fn k1_defaults() {
        let c = paper_constants(1, None, None).unwrap();
        assert_eq!(c.s, 2);
        assert_eq!(c.t, BigInt::from(4096));
        assert_eq!(c.local_lemma_product(), Some(rat(1)));
        // a0 = 2 + 4/(1/6 * 2) = 14 dominates 6k = 6.
        assert_eq!(c.a, rat(14));
    }

    #[test]
    fn explicit_default_epsilon_is_identical() {
        assert_eq!(
            paper_constants(2, Some(frac(1, 9)), None).unwrap(),
            paper_constants(2, None, None).unwrap()
        );
    }

    #[test]
    fn overrides_are_validated() {
        assert_eq!(paper_constants(0, None, None), Err(ConstantsError::ZeroPower));
        assert_eq!(
            paper_constants(2, Some(rat(0)), None),
            Err(ConstantsError::NonPositive("epsilon"))
        );
        assert!(matches!(
            paper_constants(2, None, Some(rat(13))),
            Err(ConstantsError::ABelowMinimum { .. })
        ));
        let big = paper_constants(2, None, Some(rat(20))).unwrap();
        assert_eq!(big.c, rat(4 * 20 * 81));
    }

    #[test]
    fn large_t_is_exact() {
        let c = paper_constants(6, None, None).unwrap();
        assert_eq!(c.t, Pow::pow(BigInt::from(384), 12u32));
        assert!(c.t > BigInt::from(u64::MAX));
        assert_eq!(c.local_lemma_product(), Some(rat(1)));
    }
}
