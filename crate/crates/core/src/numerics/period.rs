//! The period ∫_{K₀}ω over Δ = {0 < y ≤ x < 1}, the inhomogeneous
//! Picard–Fuchs residuals, and the one-dimensional closed-form check.

use rayon::prelude::*;
use rug::float::Constant;
use rug::{Complex, Float, Rational};
use serde::Serialize;

use super::quad::{tanh_sinh, QuadResult, QuadSpec};
use crate::error::{Error, Result};
use crate::kummer::{Radical, Roster, XRoots, YRoots};
use crate::params::SurfaceParams;
use crate::pf::{certificate_terms, certificate_terms_y, PFOperator};
use crate::ratfunc::{Poly, Var};
use crate::CycloNum;

/// One term c·t^{e₀}(1−t)^{e₁}(1−λt)^{e₂}·p(t)/q(t) with the three linear
/// factors stripped out of p and q.
#[derive(Clone, Debug)]
struct FactoredTerm {
    exps: [Float; 3],
    num: Vec<Float>,
    den: Vec<Float>,
}

/// A compiled real evaluator for an element of the x- or y-line algebra at a
/// fixed rational λ, accurate up to both endpoints of [0, 1].
#[derive(Clone, Debug)]
pub struct LineEvaluator {
    lambda: Float,
    terms: Vec<FactoredTerm>,
}

fn horner(c: &[Float], t: &Float) -> Float {
    let mut acc = Float::with_val(t.prec(), 0);
    for k in c.iter().rev() {
        acc *= t;
        acc += k;
    }
    acc
}

fn strip(p: &Poly, f: &Poly) -> (Poly, i64) {
    let mut p = p.clone();
    let mut k = 0;
    while p.num_terms() > 0 {
        match p.div_exact(f) {
            Some(q) => {
                p = q;
                k += 1;
            }
            None => break,
        }
    }
    (p, k)
}

fn poly_floats(p: &Poly, v: Var, bits: u32) -> Result<Vec<Float>> {
    p.coeffs_in(v)
        .iter()
        .map(|c| {
            let q = c
                .constant_value()
                .and_then(|x| x.to_rational())
                .ok_or_else(|| Error::Other(format!("coefficient {c} is not a rational constant")))?;
            Ok(Float::with_val(bits, &q))
        })
        .collect()
}

impl LineEvaluator {
    /// `lam_var` is replaced by `lambda`; `coord` is the line coordinate.
    pub fn compile<R: Roster>(e: &Radical<R>, lam_var: Var, coord: Var, lambda: &Rational, bits: u32) -> Result<Self> {
        let o = e.order();
        let n = e.n() as i64;
        let lam = CycloNum::from_rational(o, lambda);
        let t = Poly::var(o, coord);
        let one_m = Poly::linear(o, coord, 1, -1);
        let one_ml = &Poly::one(o) - &t.scale(&lam);
        let mut terms = Vec::new();
        for (ex, c) in e.terms() {
            let c = c.eval_at(lam_var, &lam)?;
            let mut k = [0i64; 3];
            let mut parts = Vec::new();
            for (sign, p) in [(1i64, c.num()), (-1, c.den())] {
                let mut p = p.clone();
                for (i, f) in [&t, &one_m, &one_ml].into_iter().enumerate() {
                    let (q, m) = strip(&p, f);
                    p = q;
                    k[i] += sign * m;
                }
                parts.push(poly_floats(&p, coord, bits)?);
            }
            let exps = std::array::from_fn(|i| {
                let r = ex.get(i).copied().unwrap_or(0) as i64 + n * k[i];
                Float::with_val(bits, Rational::from((r, n)))
            });
            let den = parts.pop().unwrap();
            let num = parts.pop().unwrap();
            terms.push(FactoredTerm { exps, num, den });
        }
        Ok(LineEvaluator {
            lambda: Float::with_val(bits, lambda),
            terms,
        })
    }

    /// Value at t ∈ (0, 1) given t and 1 − t separately.
    pub fn eval(&self, t: &Float, one_minus_t: &Float) -> Float {
        let bits = t.prec();
        let mut lt = Float::with_val(bits, 1) - Float::with_val(bits, &self.lambda * t);
        lt.ln_mut();
        let logs = [Float::with_val(bits, t.ln_ref()), Float::with_val(bits, one_minus_t.ln_ref()), lt];
        let mut acc = Float::with_val(bits, 0);
        for term in &self.terms {
            let mut s = Float::with_val(bits, 0);
            for i in 0..3 {
                if !term.exps[i].is_zero() {
                    s += Float::with_val(bits, &term.exps[i] * &logs[i]);
                }
            }
            let mut v = s.exp();
            v *= horner(&term.num, t);
            v /= horner(&term.den, t);
            acc += v;
        }
        acc
    }
}

/// F(x) = (x(1−x)(1−λ₁x))^{−A/N} and G(y) = (y(1−y)(1−λ₂y))^{−(N−A)/N},
/// possibly with operators applied, ready for nested quadrature.
pub struct PeriodIntegrand {
    pub params: SurfaceParams,
    outer: LineEvaluator,
    inner: LineEvaluator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    /// the undifferentiated period
    Plain,
    /// 𝒟_{λ1} applied under the integral sign
    Lambda1,
    /// 𝒟_{λ2} applied under the integral sign
    Lambda2,
}

impl PeriodIntegrand {
    pub fn new(p: &SurfaceParams, comp: Component, bits: u32) -> Result<Self> {
        let (n, a) = (p.n, p.a);
        let r = Rational::from((a, n));
        let (mut f, _) = certificate_terms(n, a, &r);
        let (mut g, _) = certificate_terms_y(n, a, &Rational::from((n - a, n)));
        match comp {
            Component::Plain => {}
            Component::Lambda1 => f = PFOperator::make(Var::L1, n, a)?.apply(&f)?,
            Component::Lambda2 => g = PFOperator::make(Var::L2, n, a)?.apply(&g)?,
        }
        Ok(PeriodIntegrand {
            params: p.clone(),
            outer: LineEvaluator::compile::<XRoots>(&f, Var::L1, Var::X, &p.lambda1, bits)?,
            inner: LineEvaluator::compile::<YRoots>(&g, Var::L2, Var::Y, &p.lambda2, bits)?,
        })
    }

    /// Arbitrary factors (for harness self-tests).
    pub fn from_evaluators(params: SurfaceParams, outer: LineEvaluator, inner: LineEvaluator) -> Self {
        PeriodIntegrand { params, outer, inner }
    }

    /// ∫₀¹ F(x) ∫₀ˣ G(y) dy dx.
    pub fn integrate(&self, spec: &QuadSpec) -> Result<QuadResult<Float>> {
        let bits = spec.bits();
        let zero = Float::with_val(bits, 0);
        let one = Float::with_val(bits, 1);
        let mut inner_spec = spec.clone();
        inner_spec.tolerance = spec.tolerance * 0.1;
        let outer = tanh_sinh(
            |x: &Float, dl: &Float, dr: &Float| {
                // x = dl exactly since a = 0; 1 − y = (1 − x) + (x − y)
                let inner = tanh_sinh(
                    |_y: &Float, yl: &Float, yr: &Float| {
                        let omy = Float::with_val(bits, dr + yr);
                        Ok(self.inner.eval(yl, &omy))
                    },
                    &zero,
                    x,
                    &inner_spec,
                )?;
                Ok(self.outer.eval(dl, dr) * inner.value)
            },
            &zero,
            &one,
            spec,
        )?;
        Ok(outer)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodValue {
    pub value: String,
    pub value_f64: f64,
    pub error: f64,
    pub level: u32,
    pub evaluations: usize,
}

fn summarize(r: &QuadResult<Float>) -> PeriodValue {
    PeriodValue {
        value: format!("{:.30}", r.value),
        value_f64: r.value.to_f64(),
        error: r.error,
        level: r.level,
        evaluations: r.evaluations,
    }
}

/// ∫_{K₀}ω as a positive real number.
pub fn period(p: &SurfaceParams, spec: &QuadSpec) -> Result<PeriodValue> {
    let pi = PeriodIntegrand::new(p, Component::Plain, spec.bits())?;
    Ok(summarize(&pi.integrate(spec)?))
}

fn ratio_pow(num: &Rational, den: &Rational, e: &Rational, bits: u32) -> Float {
    let q = Float::with_val(bits, Rational::from(num / den));
    super::quad::powf(&q, &Float::with_val(bits, e))
}

/// (((1−λ₂)/(1−λ₁))^{A/N} − 1)/(λ₁ − λ₂).
pub fn target1(p: &SurfaceParams, bits: u32) -> Result<Float> {
    target1_at(p.n, p.a, &p.lambda1, &p.lambda2, bits)
}

pub fn target1_at(n: u32, a: u32, l1: &Rational, l2: &Rational, bits: u32) -> Result<Float> {
    let one = Rational::from(1);
    let d = Rational::from(l1 - l2);
    if d == 0 {
        return Err(Error::Pole("lambda1 - lambda2".into()));
    }
    let r = ratio_pow(
        &Rational::from(&one - l2),
        &Rational::from(&one - l1),
        &Rational::from((a, n)),
        bits,
    );
    Ok((r - 1u32) / Float::with_val(bits, &d))
}

/// The second component as printed: (1 − ((1−λ₁)/(1−λ₂))^{(N−A)/N})/(λ₁ − λ₂).
pub fn target2_printed(p: &SurfaceParams, bits: u32) -> Result<Float> {
    let one = Rational::from(1);
    let d = Rational::from(&p.lambda1 - &p.lambda2);
    if d == 0 {
        return Err(Error::Pole("lambda1 - lambda2".into()));
    }
    let e = Rational::from(&one - p.ratio());
    let r = ratio_pow(
        &Rational::from(&one - &p.lambda1),
        &Rational::from(&one - &p.lambda2),
        &e,
        bits,
    );
    Ok((Float::with_val(bits, 1) - r) / Float::with_val(bits, &d))
}

#[derive(Clone, Debug, Serialize)]
pub struct InhomogeneousResidual {
    pub value1: f64,
    pub target1: f64,
    pub residual1: f64,
    pub error1: f64,
    pub value2: f64,
    pub target2: f64,
    /// |value2 − printed target|
    pub residual2: f64,
    /// |value2 + printed target|
    pub residual2_sign_corrected: f64,
    pub error2: f64,
}

/// 𝒟_{λi}∫_{K₀}ω by differentiation under the integral sign, against the
/// closed forms of the inhomogeneous system.
pub fn pf_inhomogeneous_residual(p: &SurfaceParams, spec: &QuadSpec) -> Result<InhomogeneousResidual> {
    let bits = spec.bits();
    let comps = [Component::Lambda1, Component::Lambda2];
    let vals: Vec<Result<QuadResult<Float>>> = comps
        .par_iter()
        .map(|c| PeriodIntegrand::new(p, *c, bits)?.integrate(spec))
        .collect();
    let mut it = vals.into_iter();
    let v1 = it.next().unwrap()?;
    let v2 = it.next().unwrap()?;
    let t1 = target1(p, bits)?;
    let t2 = target2_printed(p, bits)?;
    let d = |a: &Float, b: &Float| Float::with_val(bits, a - b).abs().to_f64();
    let s = |a: &Float, b: &Float| Float::with_val(bits, a + b).abs().to_f64();
    Ok(InhomogeneousResidual {
        value1: v1.value.to_f64(),
        target1: t1.to_f64(),
        residual1: d(&v1.value, &t1),
        error1: v1.error,
        value2: v2.value.to_f64(),
        target2: t2.to_f64(),
        residual2: d(&v2.value, &t2),
        residual2_sign_corrected: s(&v2.value, &t2),
        error2: v2.error,
    })
}

/// (A/N)·∫₀¹ (1−λ₂z)^{−(N−A)/N}(1−λ₁z)^{−(N+A)/N} dz against its closed form.
#[derive(Clone, Debug, Serialize)]
pub struct OneDimCheck {
    pub value: f64,
    pub target: f64,
    pub residual: f64,
    pub error: f64,
}

pub fn onedim_check(p: &SurfaceParams, spec: &QuadSpec) -> Result<OneDimCheck> {
    onedim_check_at(p.n, p.a, &p.lambda1, &p.lambda2, spec)
}

/// The same check needing only λᵢ ∈ (0, 1) and λ₁ ≠ λ₂ (no T₀ condition).
pub fn onedim_check_at(n: u32, a: u32, lam1: &Rational, lam2: &Rational, spec: &QuadSpec) -> Result<OneDimCheck> {
    crate::params::validate_na(n, a)?;
    for l in [lam1, lam2] {
        if *l <= 0 || *l >= 1 {
            return Err(Error::InvalidParams(vec![format!("lambda = {l} must lie in (0, 1)")]));
        }
    }
    let bits = spec.bits();
    let t = target1_at(n, a, lam1, lam2, bits)?;
    let l1 = Float::with_val(bits, lam1);
    let l2 = Float::with_val(bits, lam2);
    let (n, a) = (n as i64, a as i64);
    let e2 = Float::with_val(bits, Rational::from((a - n, n)));
    let e1 = Float::with_val(bits, Rational::from((-n - a, n)));
    let c = Float::with_val(bits, Rational::from((a, n)));
    let r = tanh_sinh(
        |z: &Float, _: &Float, _: &Float| {
            let p2 = Float::with_val(bits, 1) - Float::with_val(bits, &l2 * z);
            let p1 = Float::with_val(bits, 1) - Float::with_val(bits, &l1 * z);
            let mut s = Float::with_val(bits, p2.ln_ref()) * &e2;
            s += Float::with_val(bits, p1.ln_ref()) * &e1;
            Ok(s.exp() * &c)
        },
        &Float::with_val(bits, 0),
        &Float::with_val(bits, 1),
        spec,
    )?;
    Ok(OneDimCheck {
        value: r.value.to_f64(),
        target: t.to_f64(),
        residual: Float::with_val(bits, &r.value - &t).abs().to_f64(),
        error: r.error,
    })
}

/// The normal-function value L = (1 − ζ_N^A)·∫_{K₀}ω and its image
/// (1 − ζ_N^A)·(value of 𝒟_{λ1}), assembled from the K₀ integrals.
pub fn normal_function_factor(n: u32, a: u32, bits: u32) -> Complex {
    let pi = Float::with_val(bits, Constant::Pi);
    let ang = Float::with_val(bits, &pi * 2u32) * Float::with_val(bits, Rational::from((a, n)));
    let z = Complex::with_val(bits, (ang.clone().cos(), ang.sin()));
    Complex::with_val(bits, 1) - z
}

/// Central finite difference in λ₁ of the period (a consistency check only).
pub fn period_fd_lambda1(p: &SurfaceParams, h: &Rational, spec: &QuadSpec) -> Result<(f64, f64)> {
    let bits = spec.bits();
    let shift = |s: i32| -> Result<Float> {
        let l1 = Rational::from(&p.lambda1 + Rational::from(h * s));
        let q = SurfaceParams::new(p.n, p.a, l1, p.lambda2.clone())?;
        Ok(PeriodIntegrand::new(&q, Component::Plain, bits)?.integrate(spec)?.value)
    };
    let (fm, fp) = (shift(-1)?, shift(1)?);
    let fd = Float::with_val(bits, &fp - &fm) / Float::with_val(bits, Rational::from(h * 2u32));
    // exact derivative of the integrand in λ₁: ∂F/∂λ₁
    let (f, _) = certificate_terms(p.n, p.a, &p.ratio());
    let df = f.derive(Var::L1);
    let (g, _) = certificate_terms_y(p.n, p.a, &Rational::from(1 - p.ratio()));
    let outer = LineEvaluator::compile::<XRoots>(&df, Var::L1, Var::X, &p.lambda1, bits)?;
    let inner = LineEvaluator::compile::<YRoots>(&g, Var::L2, Var::Y, &p.lambda2, bits)?;
    let exact = PeriodIntegrand::from_evaluators(p.clone(), outer, inner).integrate(spec)?;
    Ok((fd.to_f64(), exact.value.to_f64()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::XKummerElem;
    use crate::ratfunc::RatFunc;

    fn q(a: i64, b: i64) -> Rational {
        Rational::from((a, b))
    }

    fn base() -> SurfaceParams {
        SurfaceParams::new(5, 2, q(1, 2), q(1, 4)).unwrap()
    }

    fn fast() -> QuadSpec {
        QuadSpec::new(1e-12, 9, 25).unwrap()
    }

    #[test]
    fn evaluator_strips_endpoint_factors() {
        // (1−x)^{-1}·(1−x)^{2/5}·x/(x·(1−x)) style expression stays finite near 1
        let o = 10;
        let x = RatFunc::var(o, Var::X);
        let one = RatFunc::one(o);
        let c = (&x * &(&one - &x)).inv().unwrap();
        let e = XKummerElem::monomial(5, 2, c, &[5, 7, 0]);
        let ev = LineEvaluator::compile(&e, Var::L1, Var::X, &q(1, 2), 120).unwrap();
        // = x^0 (1−x)^{2/5}
        let t = Float::with_val(120, Float::parse("1e-30").unwrap());
        let omt = Float::with_val(120, 1) - &t;
        let v = ev.eval(&omt, &t).to_f64();
        assert!((v - 1e-12).abs() < 1e-20, "{v}");
    }

    #[test]
    fn harness_self_tests() {
        let s = fast();
        let bits = s.bits();
        let one = XKummerElem::one(5, 2);
        let ev1 = LineEvaluator::compile(&one, Var::L1, Var::X, &q(1, 2), bits).unwrap();
        let ey1 = LineEvaluator::compile(&crate::kummer::YKummerElem::one(5, 2), Var::L2, Var::Y, &q(1, 4), bits).unwrap();
        let r = PeriodIntegrand::from_evaluators(base(), ev1, ey1).integrate(&s).unwrap();
        assert!((r.value.to_f64() - 0.5).abs() < 1e-12);
        // x^{−1/2}y^{−1/2} over Δ → ∫₀¹ x^{−1/2}·2x^{1/2} = 2
        let o = 4;
        let fx = XKummerElem::monomial(2, 1, RatFunc::one(o), &[-1, 0, 0]);
        let fy = crate::kummer::YKummerElem::monomial(2, 1, RatFunc::one(o), &[-1, 0, 0]);
        let p = SurfaceParams::new(2, 1, q(1, 2), q(1, 4)).unwrap();
        let ex = LineEvaluator::compile(&fx, Var::L1, Var::X, &q(1, 2), bits).unwrap();
        let ey = LineEvaluator::compile(&fy, Var::L2, Var::Y, &q(1, 4), bits).unwrap();
        let r = PeriodIntegrand::from_evaluators(p, ex, ey).integrate(&s).unwrap();
        assert!((r.value.to_f64() - 2.0).abs() < 1e-11, "{}", r.value);
    }

    #[test]
    fn onedim_values() {
        let s = QuadSpec::new(1e-14, 9, 30).unwrap();
        let r = onedim_check(&base(), &s).unwrap();
        assert!(r.residual < 1e-12);
        assert!((r.target - 0.704316090098694290339911255767).abs() < 1e-15);
        let r = onedim_check_at(5, 2, &q(9, 10), &q(1, 10), &s).unwrap();
        assert!((r.target - 1.76028085660086505785688576774).abs() < 1e-14);
        assert!(r.residual < 1e-10);
        let r = onedim_check(&base().swapped().unwrap(), &s).unwrap();
        assert!(r.residual < 1e-10);
        assert!(matches!(onedim_check_at(5, 2, &q(1, 2), &q(1, 2), &s), Err(Error::Pole(_))));
    }

    #[test]
    fn period_and_residuals() {
        let s = fast();
        let p = period(&base(), &s).unwrap();
        assert!((p.value_f64 - 6.349707522827378391933772586).abs() < 1e-10, "{p:?}");
        let r = pf_inhomogeneous_residual(&base(), &s).unwrap();
        assert!(r.residual1 < 1e-10, "{r:?}");
        assert!(r.residual2_sign_corrected < 1e-10, "{r:?}");
        assert!((r.target2 - 0.863789273267537139773392496155).abs() < 1e-14);
        // the printed second component is off by a sign
        assert!(r.residual2 > 1.0);
    }

    #[test]
    fn targets_and_pole() {
        let t = target1(&base(), 100).unwrap();
        assert!((t.to_f64() - 0.704316090098694290339911255767).abs() < 1e-15);
        let mut p = base();
        p.lambda2 = p.lambda1.clone();
        assert!(matches!(target1(&p, 100), Err(Error::Pole(_))));
        let z = normal_function_factor(5, 2, 100) * Complex::with_val(100, t);
        assert!((z.real().to_f64() - 1.27411977640025461217197372769).abs() < 1e-14);
        assert!((z.imag().to_f64() + 0.413986610712309259113439259387).abs() < 1e-14);
    }
}
