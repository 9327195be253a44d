//! Exact arithmetic in the cyclotomic field Q(ζ_{2N}).
//!
//! Elements are stored as integer numerators over a common positive
//! denominator, in the power basis 1, ζ, …, ζ^{φ(2N)−1} reduced modulo the
//! cyclotomic polynomial Φ_{2N}. The embedding into C is fixed once:
//! ζ_{2N} ↦ exp(πi/N).

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use rug::float::Constant;
use rug::{Complex, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Static data for one cyclotomic field: Φ_m and the reduced powers of x.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    degree: usize,
    phi: Vec<Integer>,
    // powers[k] = x^k mod Φ_m, for k < max(m, 2·deg)
    powers: Vec<Vec<Integer>>,
}

impl CycloField {
    fn new(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let count = (order as usize).max(2 * degree).max(1);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![Integer::new(); degree];
        if degree > 0 {
            cur[0] = Integer::from(1);
        }
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x, then subtract top·Φ
            let top = cur.pop().unwrap_or_default();
            cur.insert(0, Integer::new());
            if top != 0 {
                for (c, p) in cur.iter_mut().zip(&phi) {
                    *c -= &top * p;
                }
            }
        }
        CycloField {
            order,
            degree,
            phi,
            powers,
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_m, constant term first.
    pub fn modulus(&self) -> &[Integer] {
        &self.phi
    }
}

/// Field data for Q(ζ_m); built once per order and kept for the process lifetime.
pub fn field(order: u32) -> &'static CycloField {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static CycloField>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().expect("field registry poisoned");
    *map.entry(order)
        .or_insert_with(|| Box::leak(Box::new(CycloField::new(order))))
}

pub fn euler_phi(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Φ_m over Z, constant term first. Computed as (x^m − 1) / Π_{d|m, d<m} Φ_d.
pub fn cyclotomic_poly(m: u32) -> Vec<Integer> {
    let mut p = vec![Integer::new(); m as usize + 1];
    p[0] = Integer::from(-1);
    p[m as usize] = Integer::from(1);
    for d in 1..m {
        if m % d == 0 {
            p = div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

// Exact quotient of integer polynomials by a monic divisor.
fn div_monic(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let db = b.len() - 1;
    let mut r: Vec<Integer> = a.to_vec();
    let mut q = vec![Integer::new(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| *c == 0), "non-exact cyclotomic division");
    q
}

/// Decimal digits → working bits, with guard bits.
pub fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 24
}

/// An exact element of Q(ζ_m), m = 2N.
#[derive(Clone)]
pub struct CycloNum {
    field: &'static CycloField,
    num: Vec<Integer>,
    den: Integer,
}

impl CycloNum {
    pub fn zero(order: u32) -> Self {
        let f = field(order);
        CycloNum {
            field: f,
            num: vec![Integer::new(); f.degree],
            den: Integer::from(1),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = Integer::from(v);
        z
    }

    pub fn from_rational(order: u32, q: &Rational) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = q.numer().clone();
        z.den = q.denom().clone();
        z
    }

    pub fn from_ratio(order: u32, p: i64, q: i64) -> Self {
        Self::from_rational(order, &Rational::from((p, q)))
    }

    /// ζ_m^k for any integer k.
    pub fn zeta(order: u32, k: i64) -> Self {
        let f = field(order);
        let k = k.rem_euclid(order as i64) as usize;
        CycloNum {
            field: f,
            num: f.powers[k].clone(),
            den: Integer::from(1),
        }
    }

    /// Build from rational coefficients on the power basis (any length; reduced mod Φ).
    pub fn from_coeffs(order: u32, coeffs: &[Rational]) -> Self {
        let f = field(order);
        let mut den = Integer::from(1);
        for c in coeffs {
            den.lcm_mut(c.denom());
        }
        let mut wide = vec![Integer::new(); coeffs.len().max(f.degree)];
        for (w, c) in wide.iter_mut().zip(coeffs) {
            *w = Integer::from(&den / c.denom()) * c.numer();
        }
        let mut z = CycloNum {
            field: f,
            num: reduce(f, wide),
            den,
        };
        z.normalize();
        z
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn degree(&self) -> usize {
        self.field.degree
    }

    /// Rational coordinates on the reduced power basis.
    pub fn coeffs(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::from((c.clone(), self.den.clone())))
            .collect()
    }

    pub fn numerators(&self) -> &[Integer] {
        &self.num
    }

    pub fn denominator(&self) -> &Integer {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| *c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.den == 1 && self.num.first().map_or(false, |c| *c == 1) && self.num[1..].iter().all(|c| *c == 0)
    }

    /// Some(q) when the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.num.iter().skip(1).all(|c| *c == 0) {
            let n = self.num.first().cloned().unwrap_or_default();
            Some(Rational::from((n, self.den.clone())))
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field.order != other.field.order {
            Err(Error::OrderMismatch(self.field.order, other.field.order))
        } else {
            Ok(())
        }
    }

    fn normalize(&mut self) {
        if self.is_zero() {
            self.den = Integer::from(1);
            return;
        }
        if self.den < 0 {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.den == 1 {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == 1 {
                return;
            }
            if *c != 0 {
                g.gcd_mut(c);
            }
        }
        if g != 1 {
            self.den.div_exact_mut(&g);
            for c in &mut self.num {
                c.div_exact_mut(&g);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_sub(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_sub(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_impl(&other.inv()?))
    }

    fn add_sub(&self, other: &Self, sub: bool) -> Self {
        let mut out = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if sub { Integer::from(a - b) } else { Integer::from(a + b) })
                .collect();
            CycloNum {
                field: self.field,
                num,
                den: self.den.clone(),
            }
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = Integer::from(a * &other.den);
                    let r = Integer::from(b * &self.den);
                    if sub {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            CycloNum {
                field: self.field,
                num,
                den: Integer::from(&self.den * &other.den),
            }
        };
        out.normalize();
        out
    }

    fn scalar_part(&self) -> Option<&Integer> {
        if self.num[1..].iter().all(|c| *c == 0) {
            Some(&self.num[0])
        } else {
            None
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let f = self.field;
        if f.degree == 1 {
            let mut out = CycloNum {
                field: f,
                num: vec![Integer::from(&self.num[0] * &other.num[0])],
                den: Integer::from(&self.den * &other.den),
            };
            out.normalize();
            return out;
        }
        // scalar fast paths
        if let Some(s) = self.scalar_part() {
            let mut out = CycloNum {
                field: f,
                num: other.num.iter().map(|c| Integer::from(c * s)).collect(),
                den: Integer::from(&self.den * &other.den),
            };
            out.normalize();
            return out;
        }
        if let Some(s) = other.scalar_part() {
            let mut out = CycloNum {
                field: f,
                num: self.num.iter().map(|c| Integer::from(c * s)).collect(),
                den: Integer::from(&self.den * &other.den),
            };
            out.normalize();
            return out;
        }
        let d = f.degree;
        let mut wide = vec![Integer::new(); 2 * d - 1];
        for (i, a) in self.num.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if *b != 0 {
                    wide[i + j] += a * b;
                }
            }
        }
        let mut out = CycloNum {
            field: f,
            num: reduce(f, wide),
            den: Integer::from(&self.den * &other.den),
        };
        out.normalize();
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let mut out = CycloNum {
            field: self.field,
            num: self.num.iter().map(|c| Integer::from(c * k)).collect(),
            den: self.den.clone(),
        };
        out.normalize();
        out
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        let mut out = CycloNum {
            field: self.field,
            num: self.num.iter().map(|c| Integer::from(c * q.numer())).collect(),
            den: Integer::from(&self.den * q.denom()),
        };
        out.normalize();
        out
    }

    /// Multiplicative inverse via extended Euclid against Φ_m over Q.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.to_rational() {
            return Ok(Self::from_rational(self.order(), &q.recip()));
        }
        let f = self.field;
        let mut r0: Vec<Rational> = f.phi.iter().map(|c| Rational::from(c.clone())).collect();
        let mut r1: Vec<Rational> = self.num.iter().map(|c| Rational::from(c.clone())).collect();
        qp_trim(&mut r1);
        let mut s0: Vec<Rational> = Vec::new();
        let mut s1: Vec<Rational> = vec![Rational::from(1)];
        while r1.len() > 1 {
            let (q, r) = qp_divmod(&r0, &r1);
            let next_s = qp_sub(&s0, &qp_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next_s);
        }
        // r1 is a nonzero constant c with s1·a ≡ c (mod Φ)
        let c = r1[0].clone();
        let coeffs: Vec<Rational> = s1
            .iter()
            .map(|s| Rational::from(s / &c) * &self.den)
            .collect();
        Ok(Self::from_coeffs(self.order(), &coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_impl(&sq);
            }
        }
        Ok(acc)
    }

    /// Some(k) when the element equals ζ_m^k.
    pub fn as_root_of_unity(&self) -> Option<u32> {
        if self.den != 1 {
            return None;
        }
        (0..self.order()).find(|&k| self.num == self.field.powers[k as usize])
    }

    /// Complex value with ζ_{2N} ↦ exp(πi/N), at `digits` decimal digits.
    pub fn embed(&self, digits: u32) -> Complex {
        self.embed_bits(digits_to_bits(digits))
    }

    pub fn embed_bits(&self, bits: u32) -> Complex {
        let mut acc = Complex::new(bits);
        if let Some(q) = self.to_rational() {
            acc += Float::with_val(bits, &q);
            return acc;
        }
        let two_pi_over_m = Float::with_val(bits, Constant::Pi) * 2u32 / self.order();
        for (k, c) in self.num.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let angle = Float::with_val(bits, &two_pi_over_m * (k as u32));
            let (s, co) = angle.sin_cos(Float::new(bits));
            let w = Float::with_val(bits, c);
            acc += Complex::with_val(bits, (Float::with_val(bits, &co * &w), Float::with_val(bits, &s * &w)));
        }
        acc / Float::with_val(bits, &self.den)
    }
}

fn reduce(f: &CycloField, mut wide: Vec<Integer>) -> Vec<Integer> {
    let d = f.degree;
    if wide.len() <= d {
        wide.resize(d, Integer::new());
        return wide;
    }
    let high: Vec<Integer> = wide.drain(d..).collect();
    for (j, c) in high.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        let k = j + d;
        let row = if k < f.powers.len() {
            std::borrow::Cow::Borrowed(&f.powers[k])
        } else {
            std::borrow::Cow::Owned(power_mod(f, k))
        };
        for (w, p) in wide.iter_mut().zip(row.iter()) {
            if *p != 0 {
                *w += c * p;
            }
        }
    }
    wide
}

fn power_mod(f: &CycloField, k: usize) -> Vec<Integer> {
    // x^k = x^(k mod m) since x^m ≡ 1
    f.powers[k % f.order as usize].clone()
}

// --- dense univariate polynomials over Q (constant term first), for Euclid ---

fn qp_trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.len() == 1 && p[0] == 0 {
        p.clear();
    }
}

fn qp_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out: Vec<Rational> = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_default();
            let y = b.get(i).cloned().unwrap_or_default();
            x - y
        })
        .collect();
    qp_trim(&mut out);
    out
}

fn qp_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += Rational::from(x * y);
        }
    }
    qp_trim(&mut out);
    out
}

fn qp_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    qp_trim(&mut r);
    let db = b.len() - 1;
    let lead = b.last().unwrap().clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::new(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = Rational::from(&r[k + db] / &lead);
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= Rational::from(&c * bj);
            }
        }
        q[k] = c;
    }
    r.truncate(db);
    qp_trim(&mut r);
    qp_trim(&mut q);
    (q, r)
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.field.order, self)
    }
}

/// Renders as a sum over powers of `z` = ζ_{2N}, lowest power first.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs().iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let abs = Rational::from(c.abs_ref());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match (k, abs == 1) {
                (0, _) => write!(f, "{}", abs)?,
                (_, true) => write!(f, "z^{}", k)?,
                (_, false) => write!(f, "{}*z^{}", abs, k)?,
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a> $tr<&'a CycloNum> for &'a CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                self.$imp(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &'a CycloNum) -> CycloNum {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycloNum> for CycloNum {
    fn mul_assign(&mut self, rhs: &CycloNum) {
        *self = &*self * rhs;
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            field: self.field,
            num: self.num.iter().map(|c| Integer::from(-c)).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: &Complex, b: &Complex, tol: f64) -> bool {
        let d = Complex::with_val(a.prec().0, a - b);
        d.abs().real().to_f64() < tol
    }

    #[test]
    fn cyclotomic_polys() {
        let show = |m| cyclotomic_poly(m).iter().map(|c| c.to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(show(6), vec![1, -1, 1]);
        assert_eq!(show(10), vec![1, -1, 1, -1, 1]);
        assert_eq!(show(16), vec![1, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert_eq!(show(12), vec![1, 0, -1, 0, 1]);
        for m in 1..40 {
            assert_eq!(cyclotomic_poly(m).len() - 1, euler_phi(m) as usize);
        }
    }

    #[test]
    fn inverse_pair_and_minus_one() {
        let z = CycloNum::zeta(10, 1);
        let z9 = CycloNum::zeta(10, 9);
        assert!((&z * &z9).is_one());
        assert_eq!(CycloNum::zeta(10, 5), CycloNum::from_int(10, -1));
        assert_eq!(z.inv().unwrap(), z9);
        assert_eq!(z.pow(10).unwrap(), CycloNum::one(10));
    }

    #[test]
    fn norm_of_one_plus_zeta6() {
        // (1+ζ)(1+ζ̄) = 2 + ζ + ζ⁻¹ = 3 for ζ = e^{iπ/3}
        let one = CycloNum::one(6);
        let p = (&one + &CycloNum::zeta(6, 1)) * (&one + &CycloNum::zeta(6, 5));
        assert_eq!(p, CycloNum::from_int(6, 3));
    }

    #[test]
    fn inverse_of_one_minus_zeta_sq() {
        let e = CycloNum::one(10) - CycloNum::zeta(10, 2);
        let inv = e.inv().unwrap();
        assert!((&e * &inv).is_one());
        // 1/(1−ζ₅) has trace 2 in Q(ζ₅)/Q, a quick sanity on the value:
        let v = inv.embed(30);
        let w = Complex::with_val(128, 1) - CycloNum::zeta(10, 2).embed(30);
        let w = Complex::with_val(128, 1) / w;
        assert!(close(&v, &w, 1e-28));
        assert_eq!(CycloNum::zero(10).inv(), Err(Error::DivisionByZero));
        assert_eq!(CycloNum::one(10).inv().unwrap(), CycloNum::one(10));
    }

    #[test]
    fn embedding_values() {
        let one = CycloNum::one(10).embed(20);
        assert_eq!(one.real().to_f64(), 1.0);
        assert_eq!(one.imag().to_f64(), 0.0);
        let z = CycloNum::zeta(10, 1).embed(20);
        let pi5 = std::f64::consts::PI / 5.0;
        assert!((z.real().to_f64() - pi5.cos()).abs() < 1e-15);
        assert!((z.imag().to_f64() - pi5.sin()).abs() < 1e-15);
        // 1 − ζ₅² = 1 − e^{4πi/5}; oracle digits from an independent MP evaluation
        let v = (CycloNum::one(10) - CycloNum::zeta(10, 4)).embed(40);
        let re = Float::with_val(200, Float::parse("1.8090169943749474241022934171828190588601545899029").unwrap());
        let im = Float::with_val(200, Float::parse("-0.58778525229247312916870595463907276859765243764315").unwrap());
        let d_re = Float::with_val(200, v.real() - &re).abs();
        let d_im = Float::with_val(200, v.imag() - &im).abs();
        assert!(d_re < 1e-39 && d_im < 1e-39);
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = CycloNum::one(10);
        let b = CycloNum::one(14);
        assert_eq!(a.checked_add(&b), Err(Error::OrderMismatch(10, 14)));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn rendering() {
        let e = CycloNum::one(10) - CycloNum::zeta(10, 2).scale_rational(&Rational::from((1, 3)));
        assert_eq!(e.to_string(), "1 - 1/3*z^2");
        assert_eq!(CycloNum::zeta(10, 5).to_string(), "-1");
        assert_eq!(CycloNum::zeta(10, 4).as_root_of_unity(), Some(4));
        assert_eq!(CycloNum::zeta(10, 7).as_root_of_unity(), Some(7));
    }

    fn arb_cyclo(order: u32) -> impl Strategy<Value = CycloNum> {
        let d = euler_phi(order) as usize;
        proptest::collection::vec((-20i64..20, 1i64..6), d).prop_map(move |cs| {
            let qs: Vec<Rational> = cs.iter().map(|&(p, q)| Rational::from((p, q))).collect();
            CycloNum::from_coeffs(order, &qs)
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_cyclo(14), b in arb_cyclo(14), c in arb_cyclo(14)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn even_order_axioms(a in arb_cyclo(16), b in arb_cyclo(16)) {
            if !b.is_zero() {
                let q = a.checked_div(&b).unwrap();
                prop_assert_eq!(&q * &b, a);
            }
        }

        #[test]
        fn embedding_is_homomorphism(a in arb_cyclo(10), b in arb_cyclo(10)) {
            let ea = a.embed(30);
            let eb = b.embed(30);
            let prod = Complex::with_val(ea.prec().0, &ea * &eb);
            let sum = Complex::with_val(ea.prec().0, &ea + &eb);
            prop_assert!(close(&(&a * &b).embed(30), &prod, 1e-25));
            prop_assert!(close(&(&a + &b).embed(30), &sum, 1e-25));
        }

        #[test]
        fn reduction_is_idempotent(a in arb_cyclo(18)) {
            let again = CycloNum::from_coeffs(18, &a.coeffs());
            prop_assert_eq!(again, a);
        }
    }
}
