//! Gauss ₂F₁ by its power series, with a rigorous tail bound on the value
//! and on the first two derivatives.

use rug::{Float, Rational};
use serde::Serialize;

use super::quad::QuadSpec;
use crate::error::{Error, Result};
use crate::pf::hyp2f1_params;
use crate::ratfunc::Var;

#[derive(Clone, Debug)]
pub struct Hyp2F1 {
    pub value: Float,
    pub d1: Float,
    pub d2: Float,
    pub terms: usize,
    /// bound on the neglected tail of each of the three series
    pub tail_bound: f64,
}

const MAX_TERMS: usize = 200_000;

/// ₂F₁(a, b; c; λ) and its first two λ-derivatives, for |λ| < 1 and c > 0.
pub fn hyp2f1(a: &Rational, b: &Rational, c: &Rational, lam: &Float, spec: &QuadSpec) -> Result<Hyp2F1> {
    let bits = spec.bits();
    if *c <= 0 {
        return Err(Error::Series(format!("tail bound needs c > 0, got c = {c}")));
    }
    let absl = Float::with_val(bits, lam.abs_ref());
    if absl >= 1 {
        return Err(Error::Series(format!("|lambda| = {lam} is outside the unit disc")));
    }
    let fa = Float::with_val(bits, a);
    let fb = Float::with_val(bits, b);
    let fc = Float::with_val(bits, c);
    let amax = a.clone().abs().to_f64().max(b.clone().abs().to_f64());
    let target = spec.tolerance * 1e-3;

    let mut value = Float::with_val(bits, 0);
    let mut d1 = Float::with_val(bits, 0);
    let mut d2 = Float::with_val(bits, 0);
    let mut ck = Float::with_val(bits, 1);
    let mut pw = [Float::with_val(bits, 1), Float::with_val(bits, 1), Float::with_val(bits, 1)];
    // λ^k, λ^{k−1}, λ^{k−2}; the last two only advance once they are in use
    for k in 0..MAX_TERMS {
        let kf = k as u64;
        let t0 = Float::with_val(bits, &ck * &pw[0]);
        value += &t0;
        let mut t1 = Float::with_val(bits, 0);
        let mut t2 = Float::with_val(bits, 0);
        if k >= 1 {
            t1 = Float::with_val(bits, &ck * &pw[1]) * kf;
            d1 += &t1;
        }
        if k >= 2 {
            t2 = Float::with_val(bits, &ck * &pw[2]) * (kf * (kf - 1));
            d2 += &t2;
        }
        let kk = k.max(1) as f64;
        if kk >= 2.0 * amax + 4.0 {
            let rho = absl.to_f64() * (1.0 + amax / kk).powi(2) * (1.0 + 2.0 / kk).powi(2);
            if rho < 1.0 {
                let biggest = [&t0, &t1, &t2]
                    .iter()
                    .map(|t| t.to_f64().abs())
                    .fold(0.0f64, f64::max);
                let tail = biggest * rho / (1.0 - rho);
                if tail < target || biggest == 0.0 {
                    return Ok(Hyp2F1 {
                        value,
                        d1,
                        d2,
                        terms: k + 1,
                        tail_bound: tail,
                    });
                }
            }
        }
        // c_{k+1} = c_k (a+k)(b+k)/((c+k)(k+1))
        let num = Float::with_val(bits, &fa + kf) * Float::with_val(bits, &fb + kf);
        let den = Float::with_val(bits, &fc + kf) * (kf + 1);
        ck *= num;
        ck /= den;
        if k >= 2 {
            pw[2] *= lam;
        }
        if k >= 1 {
            pw[1] *= lam;
        }
        pw[0] *= lam;
    }
    Err(Error::Series(format!("no convergence within {MAX_TERMS} terms at lambda = {lam}")))
}

#[derive(Clone, Debug, Serialize)]
pub struct HomogeneousResidual {
    pub value: f64,
    pub residual: f64,
    pub terms: usize,
}

/// |λ(1−λ)F″ + (c − 2λ)F′ − abF| for F = ₂F₁(A/N, 1−A/N; c + shift; λ),
/// where c is the parameter matching the operator in `var`. A nonzero
/// `c_shift` is the negative control.
pub fn homogeneous_residual(
    n: u32,
    a: u32,
    lam: &Float,
    var: Var,
    c_shift: i64,
    spec: &QuadSpec,
) -> Result<HomogeneousResidual> {
    let bits = spec.bits();
    let (ga, gb, gc) = hyp2f1_params(var, n, a);
    let series_c = Rational::from(&gc + c_shift);
    let f = hyp2f1(&ga, &gb, &series_c, lam, spec)?;
    let one_m = Float::with_val(bits, 1 - lam);
    let mut r = Float::with_val(bits, lam * &one_m) * &f.d2;
    let c1 = Float::with_val(bits, &gc) - Float::with_val(bits, lam * 2u32);
    r += c1 * &f.d1;
    r -= Float::with_val(bits, Rational::from(&ga * &gb)) * &f.value;
    Ok(HomogeneousResidual {
        value: f.value.to_f64(),
        residual: r.abs().to_f64(),
        terms: f.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadSpec {
        QuadSpec::new(1e-30, 8, 40).unwrap()
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    #[test]
    fn closed_forms() {
        let s = spec();
        let bits = s.bits();
        let zero = Float::with_val(bits, 0);
        let r = hyp2f1(&q(2, 5), &q(3, 5), &q(6, 5), &zero, &s).unwrap();
        assert_eq!(r.value, 1);
        // ₂F₁(1,1;2;λ) = −ln(1−λ)/λ
        let half = Float::with_val(bits, 0.5);
        let r = hyp2f1(&q(1, 1), &q(1, 1), &q(2, 1), &half, &s).unwrap();
        let expect = -(Float::with_val(bits, 0.5).ln()) / 0.5f64;
        assert!(Float::with_val(bits, &r.value - &expect).abs() < 1e-30);
        // derivative: d/dλ[−ln(1−λ)/λ] = 1/(λ(1−λ)) + ln(1−λ)/λ² at 1/2 → 4 + 4 ln(1/2)
        let d = 4.0 + 4.0 * 0.5f64.ln();
        assert!((r.d1.to_f64() - d).abs() < 1e-14);
    }

    #[test]
    fn summation_oracle() {
        // independent 40-digit summation
        let oracle = Float::with_val(200, Float::parse("1.07146211377589767053550241158658484624539631").unwrap());
        let s = spec();
        let lam = Float::with_val(s.bits(), Float::parse("0.3").unwrap());
        let r = hyp2f1(&q(2, 5), &q(3, 5), &q(6, 5), &lam, &s).unwrap();
        assert!(Float::with_val(200, &r.value - &oracle).abs() < 1e-35);
    }

    #[test]
    fn homogeneous() {
        let s = spec();
        let bits = s.bits();
        let l = Float::with_val(bits, Float::parse("0.3").unwrap());
        assert!(homogeneous_residual(5, 2, &l, Var::L1, 0, &s).unwrap().residual < 1e-25);
        let l = Float::with_val(bits, 0.5);
        assert!(homogeneous_residual(7, 3, &l, Var::L2, 0, &s).unwrap().residual < 1e-25);
        let bad = homogeneous_residual(5, 2, &l, Var::L1, 1, &s).unwrap().residual;
        assert!(bad > 1e-3, "{bad}");
    }

    #[test]
    fn domain_errors() {
        let s = spec();
        let one = Float::with_val(s.bits(), 1);
        assert!(hyp2f1(&q(1, 2), &q(1, 2), &q(1, 1), &one, &s).is_err());
        let h = Float::with_val(s.bits(), 0.5);
        assert!(hyp2f1(&q(1, 2), &q(1, 2), &q(-1, 2), &h, &s).is_err());
    }
}
