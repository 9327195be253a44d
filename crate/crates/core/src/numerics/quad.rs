//! Double-exponential (tanh-sinh) quadrature in MPFR arithmetic.
//!
//! Integrands receive (x, x − a, b − x) with both distances computed without
//! cancellation, so endpoint factors like (1 − x)^{−α} stay accurate all the
//! way into the tails.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_field::digits_to_bits;

/// Absolute tolerance, refinement budget and working precision.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadSpec {
    pub tolerance: f64,
    pub max_level: u32,
    pub digits: u32,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            tolerance: 1e-15,
            max_level: 9,
            digits: 50,
        }
    }
}

impl QuadSpec {
    pub fn new(tolerance: f64, max_level: u32, digits: u32) -> Result<Self> {
        let s = QuadSpec { tolerance, max_level, digits };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        let floor = 10f64.powi(3 - self.digits as i32);
        if !(self.tolerance > 0.0) || self.tolerance < floor {
            return Err(Error::InvalidParams(vec![format!(
                "tolerance {} must be at least 1e{} at {} digits",
                self.tolerance,
                3 - self.digits as i32,
                self.digits
            )]));
        }
        if self.max_level < 2 || self.max_level > 14 {
            return Err(Error::InvalidParams(vec![format!(
                "max_level {} outside 2..=14",
                self.max_level
            )]));
        }
        Ok(())
    }

    pub fn bits(&self) -> u32 {
        digits_to_bits(self.digits)
    }
}

/// Values a quadrature can accumulate.
pub trait QuadValue: Clone + Send + Sync {
    fn zero(bits: u32) -> Self;
    fn add_scaled(&mut self, v: &Self, w: &Float);
    fn mul_float(&mut self, s: &Float);
    /// |self − other| as f64
    fn distance(&self, other: &Self) -> f64;
}

impl QuadValue for Float {
    fn zero(bits: u32) -> Self {
        Float::new(bits)
    }
    fn add_scaled(&mut self, v: &Self, w: &Float) {
        *self += Float::with_val(self.prec(), v * w);
    }
    fn mul_float(&mut self, s: &Float) {
        *self *= s;
    }
    fn distance(&self, other: &Self) -> f64 {
        Float::with_val(self.prec(), self - other).abs().to_f64()
    }
}

impl QuadValue for Complex {
    fn zero(bits: u32) -> Self {
        Complex::new(bits)
    }
    fn add_scaled(&mut self, v: &Self, w: &Float) {
        *self += Complex::with_val(self.prec(), v * w);
    }
    fn mul_float(&mut self, s: &Float) {
        *self *= s;
    }
    fn distance(&self, other: &Self) -> f64 {
        Complex::with_val(self.prec(), self - other).abs().real().to_f64()
    }
}

#[derive(Clone, Debug)]
pub struct QuadResult<V> {
    pub value: V,
    /// |I_k − I_{k−1}| at the accepted level
    pub error: f64,
    pub level: u32,
    pub evaluations: usize,
}

// Node on [−1, 1] for t > 0 (mirrored for t < 0): weight w(t), and the
// normalized distances l = (1+s)/2, r = (1−s)/2 to the two endpoints.
#[derive(Debug)]
struct Node {
    w: Float,
    l: Float,
    r: Float,
}

type Table = Arc<Vec<Node>>;

fn node(t: &Float, bits: u32) -> Node {
    let half_pi = Float::with_val(bits, Constant::Pi) / 2u32;
    let u = Float::with_val(bits, t.sinh_ref()) * &half_pi;
    let e = Float::with_val(bits, -2 * u.clone()).exp();
    let one_p = Float::with_val(bits, 1 + &e);
    let l = Float::with_val(bits, one_p.recip_ref());
    let r = Float::with_val(bits, &e * &l);
    // w = (π/2)·cosh t / cosh²u = (π/2)·cosh t·4e/(1+e)²
    let mut w = Float::with_val(bits, t.cosh_ref()) * &half_pi;
    w *= &r;
    w *= &l;
    w *= 4u32;
    Node { w, l, r }
}

// New nodes at level k: t = j·2^{−k}, j odd (all j ≥ 1 at level 0), up to the
// point where the endpoint distance drops below 2^{−2·bits}.
fn level_table(bits: u32, level: u32) -> Table {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Table>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&(bits, level)) {
        return t.clone();
    }
    let h = Float::with_val(bits, Float::i_exp(1, -(level as i32)));
    let cutoff = Float::with_val(bits, Float::i_exp(1, -2 * bits as i32));
    let (start, step) = if level == 0 { (1u64, 1u64) } else { (1, 2) };
    let mut out = Vec::new();
    let mut j = start;
    loop {
        let t = Float::with_val(bits, &h * j);
        let nd = node(&t, bits);
        if nd.r < cutoff || nd.w.is_zero() {
            break;
        }
        out.push(nd);
        j += step;
    }
    let table = Arc::new(out);
    cache.lock().unwrap().insert((bits, level), table.clone());
    table
}

/// ∫_a^b f(x, x−a, b−x) dx by level-doubling tanh-sinh.
pub fn tanh_sinh<V, F>(f: F, a: &Float, b: &Float, spec: &QuadSpec) -> Result<QuadResult<V>>
where
    V: QuadValue,
    F: Fn(&Float, &Float, &Float) -> Result<V>,
{
    let bits = spec.bits();
    let width = Float::with_val(bits, b - a);
    if width <= 0 {
        return Err(Error::Quadrature(format!("empty or reversed interval [{a}, {b}]")));
    }
    let half = Float::with_val(bits, &width / 2u32);
    let evals = std::cell::Cell::new(0usize);
    let eval_at = |l: &Float, r: &Float| -> Result<V> {
        let dl = Float::with_val(bits, &width * l);
        let dr = Float::with_val(bits, &width * r);
        let x = if l <= r {
            Float::with_val(bits, a + &dl)
        } else {
            Float::with_val(bits, b - &dr)
        };
        evals.set(evals.get() + 1);
        f(&x, &dl, &dr)
    };
    // running Σ w·f over every node seen so far
    let mut sum = V::zero(bits);
    let centre = Float::with_val(bits, 0.5);
    let c = node(&Float::new(bits), bits);
    sum.add_scaled(&eval_at(&centre, &centre)?, &c.w);
    let mut prev: Option<V> = None;
    for level in 0..=spec.max_level {
        for nd in level_table(bits, level).iter() {
            let fl = eval_at(&nd.l, &nd.r)?;
            let fr = eval_at(&nd.r, &nd.l)?;
            sum.add_scaled(&fl, &nd.w);
            sum.add_scaled(&fr, &nd.w);
        }
        let h = Float::with_val(bits, Float::i_exp(1, -(level as i32)));
        let mut est = sum.clone();
        est.mul_float(&Float::with_val(bits, &h * &half));
        if let Some(p) = &prev {
            let err = est.distance(p);
            if !err.is_finite() {
                return Err(Error::Quadrature(format!("non-finite estimate at level {level}")));
            }
            if level >= 3 && err <= spec.tolerance {
                return Ok(QuadResult {
                    value: est,
                    error: err,
                    level,
                    evaluations: evals.get(),
                });
            }
        }
        prev = Some(est);
    }
    let last = prev.expect("at least one level");
    Err(Error::Quadrature(format!(
        "no convergence to {:e} within {} levels ({} evaluations, last value {:?})",
        spec.tolerance,
        spec.max_level,
        evals.get(),
        last.distance(&V::zero(bits))
    )))
}

/// Convenience for integrands that ignore the endpoint distances.
pub fn tanh_sinh_plain<F>(f: F, a: f64, b: f64, spec: &QuadSpec) -> Result<QuadResult<Float>>
where
    F: Fn(&Float) -> Float,
{
    let bits = spec.bits();
    tanh_sinh(
        |x: &Float, _: &Float, _: &Float| Ok(f(x)),
        &Float::with_val(bits, a),
        &Float::with_val(bits, b),
        spec,
    )
}

/// x^e computed as exp(e·ln x) for x > 0.
pub fn powf(x: &Float, e: &Float) -> Float {
    let mut l = Float::with_val(x.prec(), x.ln_ref());
    l *= e;
    l.exp()
}
