//! Surface parameters (N, A, λ₁, λ₂) and their admissibility constraints.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_field::gcd_u32;

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceParams {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "A")]
    pub a: u32,
    #[serde(serialize_with = "ser_rational")]
    pub lambda1: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub lambda2: Rational,
}

/// Violations of gcd(N, A) = 1 and (N+1)/3 ≤ A ≤ (2N−1)/3.
pub fn check_na(n: u32, a: u32) -> Vec<String> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(format!("N = {n} must be at least 2"));
        return out;
    }
    if a == 0 || a >= n {
        out.push(format!("A = {a} must lie in 1..N-1"));
    }
    if gcd_u32(n, a) != 1 {
        out.push(format!("gcd(N, A) = gcd({n}, {a}) = {} != 1", gcd_u32(n, a)));
    }
    if 3 * a < n + 1 {
        out.push(format!("A = {a} < (N+1)/3 = {}/3", n + 1));
    }
    if 3 * a > 2 * n - 1 {
        out.push(format!("A = {a} > (2N-1)/3 = {}/3", 2 * n - 1));
    }
    out
}

pub fn validate_na(n: u32, a: u32) -> Result<()> {
    let v = check_na(n, a);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidParams(v))
    }
}

/// All admissible A for the given N.
pub fn valid_a(n: u32) -> Vec<u32> {
    (1..n).filter(|&a| check_na(n, a).is_empty()).collect()
}

/// All admissible (N, A) with N ≤ max_n.
pub fn valid_pairs(max_n: u32) -> Vec<(u32, u32)> {
    (2..=max_n)
        .flat_map(|n| valid_a(n).into_iter().map(move |a| (n, a)))
        .collect()
}

/// Rank statements need N ≠ 2.
pub fn require_rank_hypothesis(n: u32) -> Result<()> {
    if n == 2 {
        Err(Error::Refused(
            "rank certificates require N != 2 (for N = 2 the six Delta-generators span only a 3-dimensional space)".into(),
        ))
    } else {
        Ok(())
    }
}

/// The six excluded values of λ₁ given λ₂, with their labels.
fn t0_exclusions(l2: &Rational) -> Vec<(&'static str, Option<Rational>)> {
    let one = Rational::from(1);
    let inv = |q: Rational| if q == 0 { None } else { Some(q.recip()) };
    vec![
        ("lambda2", Some(l2.clone())),
        ("1 - lambda2", Some(Rational::from(&one - l2))),
        ("1/lambda2", inv(l2.clone())),
        ("1/(1 - lambda2)", inv(Rational::from(&one - l2))),
        (
            "(lambda2 - 1)/lambda2",
            if *l2 == 0 { None } else { Some(Rational::from(l2 - &one) / l2) },
        ),
        (
            "lambda2/(lambda2 - 1)",
            inv(Rational::from(l2 - &one)).map(|r| r * l2),
        ),
    ]
}

/// Violations of the point constraints: λᵢ ∈ (0, 1) and (λ₁, λ₂) ∈ T₀.
pub fn check_point(l1: &Rational, l2: &Rational) -> Vec<String> {
    let mut out = Vec::new();
    for (name, l) in [("lambda1", l1), ("lambda2", l2)] {
        if *l <= 0 || *l >= 1 {
            out.push(format!("{name} = {l} must lie in (0, 1)"));
        }
    }
    for (label, val) in t0_exclusions(l2) {
        if val.as_ref() == Some(l1) {
            out.push(format!("lambda1 = {label} = {l1} violates the T0 condition"));
        }
    }
    out
}

impl SurfaceParams {
    pub fn new(n: u32, a: u32, lambda1: Rational, lambda2: Rational) -> Result<Self> {
        let mut v = check_na(n, a);
        v.extend(check_point(&lambda1, &lambda2));
        if v.is_empty() {
            Ok(SurfaceParams { n, a, lambda1, lambda2 })
        } else {
            Err(Error::InvalidParams(v))
        }
    }

    /// Parse λ values from text ("1/2", "0.25", "3").
    pub fn parse(n: u32, a: u32, l1: &str, l2: &str) -> Result<Self> {
        Self::new(n, a, parse_rational(l1)?, parse_rational(l2)?)
    }

    /// The standard base point (λ₁, λ₂) = (1/2, 1/4).
    pub fn base_point(n: u32, a: u32) -> Result<Self> {
        Self::new(n, a, Rational::from((1, 2)), Rational::from((1, 4)))
    }

    pub fn order(&self) -> u32 {
        2 * self.n
    }

    /// A/N as an exact rational.
    pub fn ratio(&self) -> Rational {
        Rational::from((self.a, self.n))
    }

    pub fn lambda_floats(&self, bits: u32) -> (Float, Float) {
        (
            Float::with_val(bits, &self.lambda1),
            Float::with_val(bits, &self.lambda2),
        )
    }

    /// The point with λ₁ ↔ λ₂ and A ↔ N − A exchanged.
    pub fn swapped(&self) -> Result<Self> {
        Self::new(self.n, self.n - self.a, self.lambda2.clone(), self.lambda1.clone())
    }

    /// A random admissible point on a grid of spacing 1/64, keeping
    /// |λ₁ − λ₂| ≥ 1/16 so closed forms stay well conditioned.
    pub fn random<R: Rng>(n: u32, a: u32, rng: &mut R) -> Result<Self> {
        validate_na(n, a)?;
        loop {
            let l1 = Rational::from((rng.gen_range(3..62), 64));
            let l2 = Rational::from((rng.gen_range(3..62), 64));
            let gap = Rational::from(&l1 - &l2).abs();
            if gap < Rational::from((1, 16)) {
                continue;
            }
            if let Ok(p) = Self::new(n, a, l1, l2) {
                return Ok(p);
            }
        }
    }
}

impl fmt::Display for SurfaceParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N={}, A={}, lambda1={}, lambda2={}",
            self.n, self.a, self.lambda1, self.lambda2
        )
    }
}

/// Exact rational from "p/q", an integer, or a decimal literal.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Other(format!("cannot parse '{s}' as a rational number"));
    if s.contains('/') {
        let q = Rational::from_str(s).map_err(|_| bad())?;
        return Ok(q);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let num = Integer::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let den = Integer::from(Integer::u_pow_u(10, frac_part.len() as u32));
    let q = Rational::from((num, den));
    Ok(if neg { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn validation_examples() {
        assert!(SurfaceParams::new(5, 2, q(1, 2), q(1, 4)).is_ok());
        let e = check_na(3, 1);
        assert_eq!(e.len(), 1);
        assert!(e[0].contains("(N+1)/3"));
        let e = check_na(4, 2);
        assert!(e.iter().any(|s| s.contains("gcd")));
        let e = SurfaceParams::new(5, 2, q(1, 2), q(1, 2)).unwrap_err();
        match e {
            Error::InvalidParams(v) => assert!(v.iter().any(|s| s.contains("T0"))),
            _ => panic!(),
        }
        // 1 - λ₂ is the only other exclusion reachable inside (0,1)
        assert!(SurfaceParams::new(5, 2, q(3, 4), q(1, 4)).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(
            valid_pairs(12),
            vec![
                (2, 1), (5, 2), (5, 3), (7, 3), (7, 4), (8, 3), (8, 5), (9, 4), (9, 5),
                (11, 4), (11, 5), (11, 6), (11, 7), (12, 5), (12, 7)
            ]
        );
        assert!(valid_a(10).is_empty());
        assert!(!check_na(10, 7).is_empty());
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("1/2").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn random_points_are_admissible() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = SurfaceParams::random(7, 3, &mut rng).unwrap();
            assert!(check_point(&p.lambda1, &p.lambda2).is_empty());
        }
    }

    #[test]
    fn rank_hypothesis() {
        assert!(require_rank_hypothesis(2).is_err());
        assert!(require_rank_hypothesis(5).is_ok());
    }
}
