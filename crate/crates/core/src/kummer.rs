//! Monomial algebras K(r₁, …, r_k) with r_i^N = radicand_i over
//! Q(ζ_{2N})(λ₁, λ₂, x, y).
//!
//! Elements are sparse maps from exponent tuples in [0, N)^k to rational
//! function coefficients; products fold r^N back into the coefficient, so
//! the representation is a normal form and zero-testing is syntactic.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Float};

use crate::error::{Error, Result};
use crate::exact_field::{digits_to_bits, CycloNum};
use crate::ratfunc::{Poly, RatFunc, Var, NVARS};

pub const MAX_ROOTS: usize = 4;
pub type Exps = [u16; MAX_ROOTS];

/// A fixed list of adjoined N-th roots.
pub trait Roster: Copy + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    const NAMES: &'static [&'static str];
    /// r_i^N, as a polynomial in the base variables.
    fn radicand(i: usize, order: u32) -> Poly;

    fn len() -> usize {
        Self::NAMES.len()
    }
}

/// u₁ = λ₁^{1/N}, v₁ = (1−λ₁)^{1/N}, u₂ = λ₂^{1/N}, v₂ = (1−λ₂)^{1/N}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LambdaRoots;

impl Roster for LambdaRoots {
    const NAMES: &'static [&'static str] = &["u1", "v1", "u2", "v2"];
    fn radicand(i: usize, order: u32) -> Poly {
        match i {
            0 => Poly::var(order, Var::L1),
            1 => Poly::linear(order, Var::L1, 1, -1),
            2 => Poly::var(order, Var::L2),
            3 => Poly::linear(order, Var::L2, 1, -1),
            _ => unreachable!("root index"),
        }
    }
}

/// x^{1/N}, (1−x)^{1/N}, (1−λ₁x)^{1/N}: the fibre integrand over the x-line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct XRoots;

impl Roster for XRoots {
    const NAMES: &'static [&'static str] = &["X", "W", "V"];
    fn radicand(i: usize, order: u32) -> Poly {
        let x = Poly::var(order, Var::X);
        match i {
            0 => x,
            1 => Poly::linear(order, Var::X, 1, -1),
            2 => &Poly::one(order) - &(&Poly::var(order, Var::L1) * &x),
            _ => unreachable!("root index"),
        }
    }
}

/// The same roster over the y-line with λ₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct YRoots;

impl Roster for YRoots {
    const NAMES: &'static [&'static str] = &["Y", "W2", "V2"];
    fn radicand(i: usize, order: u32) -> Poly {
        let y = Poly::var(order, Var::Y);
        match i {
            0 => y,
            1 => Poly::linear(order, Var::Y, 1, -1),
            2 => &Poly::one(order) - &(&Poly::var(order, Var::L2) * &y),
            _ => unreachable!("root index"),
        }
    }
}

/// P = (1−λ₂z)^{1/N}, Q = (1−λ₁z)^{1/N}, with z carried by `Var::X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZRoots;

impl Roster for ZRoots {
    const NAMES: &'static [&'static str] = &["P", "Q"];
    fn radicand(i: usize, order: u32) -> Poly {
        let z = Poly::var(order, Var::X);
        let lam = match i {
            0 => Var::L2,
            1 => Var::L1,
            _ => unreachable!("root index"),
        };
        &Poly::one(order) - &(&Poly::var(order, lam) * &z)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Radical<R: Roster> {
    n: u32,
    a: u32,
    terms: BTreeMap<Exps, RatFunc>,
    _roster: PhantomData<R>,
}

pub type KummerElem = Radical<LambdaRoots>;
pub type XKummerElem = Radical<XRoots>;
pub type YKummerElem = Radical<YRoots>;
pub type ZKummerElem = Radical<ZRoots>;

fn radicands<R: Roster>(order: u32) -> Vec<RatFunc> {
    (0..R::len()).map(|i| RatFunc::from_poly(R::radicand(i, order))).collect()
}

impl<R: Roster> Radical<R> {
    pub fn zero(n: u32, a: u32) -> Self {
        Radical {
            n,
            a,
            terms: BTreeMap::new(),
            _roster: PhantomData,
        }
    }

    pub fn one(n: u32, a: u32) -> Self {
        Self::from_ratfunc(n, a, RatFunc::one(2 * n))
    }

    pub fn from_ratfunc(n: u32, a: u32, c: RatFunc) -> Self {
        Self::term(n, a, [0; MAX_ROOTS], c)
    }

    pub fn constant(n: u32, a: u32, c: CycloNum) -> Self {
        Self::from_ratfunc(n, a, RatFunc::constant(c))
    }

    pub fn from_int(n: u32, a: u32, k: i64) -> Self {
        Self::from_ratfunc(n, a, RatFunc::from_int(2 * n, k))
    }

    /// ζ_{2N}^k.
    pub fn zeta(n: u32, a: u32, k: i64) -> Self {
        Self::constant(n, a, CycloNum::zeta(2 * n, k))
    }

    pub fn var(n: u32, a: u32, v: Var) -> Self {
        Self::from_ratfunc(n, a, RatFunc::var(2 * n, v))
    }

    /// A single already-reduced term.
    pub fn term(n: u32, a: u32, e: Exps, c: RatFunc) -> Self {
        debug_assert!(e.iter().all(|&x| (x as u32) < n.max(1)));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Radical {
            n,
            a,
            terms,
            _roster: PhantomData,
        }
    }

    /// The i-th root r_i.
    pub fn root(n: u32, a: u32, i: usize) -> Self {
        let mut e = [0; MAX_ROOTS];
        e[i] = 1;
        Self::monomial(n, a, RatFunc::one(2 * n), &e.map(|x| x as i64))
    }

    /// c · Π r_i^{e_i} for arbitrary integer exponents, folded into normal form.
    pub fn monomial(n: u32, a: u32, c: RatFunc, exps: &[i64]) -> Self {
        let rads = radicands::<R>(2 * n);
        let mut coef = c;
        let mut e = [0u16; MAX_ROOTS];
        for (i, &x) in exps.iter().enumerate().take(R::len()) {
            let q = x.div_euclid(n as i64);
            let r = x.rem_euclid(n as i64);
            e[i] = r as u16;
            if q != 0 {
                coef = &coef * &rads[i].pow(q).expect("radicand is nonzero");
            }
        }
        Self::term(n, a, e, coef)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn order(&self) -> u32 {
        2 * self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &RatFunc)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&[0; MAX_ROOTS]).map_or(false, |c| c.is_one())
    }

    pub fn single_term(&self) -> Option<(&Exps, &RatFunc)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// The coefficient when the element lies in the base field.
    pub fn as_ratfunc(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return Some(RatFunc::zero(self.order()));
        }
        match self.single_term() {
            Some((e, c)) if *e == [0; MAX_ROOTS] => Some(c.clone()),
            _ => None,
        }
    }

    pub fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.a != other.a {
            Err(Error::ParamMismatch(self.n, self.a, other.n, other.a))
        } else {
            Ok(())
        }
    }

    fn insert(&mut self, e: Exps, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&e) {
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(e, s);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let rads = radicands::<R>(self.order());
        let n = self.n as u16;
        let mut out = Self::zero(self.n, self.a);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let mut e = [0u16; MAX_ROOTS];
                let mut c = c1 * c2;
                for i in 0..R::len() {
                    let s = e1[i] + e2[i];
                    if s >= n {
                        e[i] = s - n;
                        c = &c * &rads[i];
                    } else {
                        e[i] = s;
                    }
                }
                out.insert(e, c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.n, self.a);
        for (e, x) in &self.terms {
            out.insert(*e, x * c);
        }
        out
    }

    pub fn scale_cyclo(&self, c: &CycloNum) -> Self {
        let mut out = Self::zero(self.n, self.a);
        for (e, x) in &self.terms {
            out.insert(*e, x.scale(c));
        }
        out
    }

    /// Inverse of a unit: only single-term elements are invertible here.
    pub fn inv(&self) -> Result<Self> {
        let (e, c) = self
            .single_term()
            .ok_or_else(|| Error::NotUnit(self.to_string()))?;
        let exps: Vec<i64> = e.iter().map(|&x| -(x as i64)).collect();
        Ok(Self::monomial(self.n, self.a, c.inv()?, &exps))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if let Some((ex, c)) = self.single_term() {
            let exps: Vec<i64> = ex.iter().map(|&x| x as i64 * e).collect();
            return Ok(Self::monomial(self.n, self.a, c.pow(e)?, &exps));
        }
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.n, self.a);
        for _ in 0..e.unsigned_abs() {
            acc = acc.checked_mul(&base)?;
        }
        Ok(acc)
    }

    /// Derivation extending ∂/∂v with ∂r_i = r_i · ∂(rad_i)/(N·rad_i).
    pub fn derive(&self, v: Var) -> Self {
        let order = self.order();
        let logd: Vec<RatFunc> = (0..R::len())
            .map(|i| {
                let rad = R::radicand(i, order);
                let d = rad.derive(v);
                if d.is_zero() {
                    RatFunc::zero(order)
                } else {
                    RatFunc::new(d.scale(&CycloNum::from_ratio(order, 1, self.n as i64)), rad)
                        .expect("radicand is nonzero")
                }
            })
            .collect();
        let mut out = Self::zero(self.n, self.a);
        for (e, c) in &self.terms {
            let mut d = c.derive(v);
            for i in 0..R::len() {
                if e[i] > 0 && !logd[i].is_zero() {
                    d = &d + &(&(c * &logd[i]).scale(&CycloNum::from_int(order, e[i] as i64)));
                }
            }
            out.insert(*e, d);
        }
        out
    }

    /// Apply a simultaneous substitution of base variables to every coefficient
    /// (roots untouched; the caller is responsible for their images).
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> Result<RatFunc>) -> Result<Self> {
        let mut out = Self::zero(self.n, self.a);
        for (e, c) in &self.terms {
            out.insert(*e, f(c)?);
        }
        Ok(out)
    }

    /// Numeric value with every root ↦ principal real N-th root of its
    /// (positive) radicand and ζ_{2N} ↦ exp(πi/N). `point[i]` is the value of
    /// `Var::ALL[i]`.
    pub fn eval(&self, point: &[Option<Float>; NVARS], digits: u32) -> Result<Complex> {
        let bits = digits_to_bits(digits);
        let order = self.order();
        let cpoint: [Option<Complex>; NVARS] =
            std::array::from_fn(|i| point[i].as_ref().map(|x| Complex::with_val(bits, x)));
        let mut roots = Vec::with_capacity(R::len());
        for i in 0..R::len() {
            let rad = R::radicand(i, order);
            let needed = self.terms.keys().any(|e| e[i] > 0);
            if !needed {
                roots.push(Float::with_val(bits, 1));
                continue;
            }
            let val = rad.eval_complex(&cpoint, bits);
            let re = val.real().clone();
            if re <= 0 {
                return Err(Error::BranchCut(format!("{} = {}", R::NAMES[i], rad)));
            }
            roots.push(re.root(self.n));
        }
        let mut acc = Complex::new(bits);
        for (e, c) in &self.terms {
            let mut t = c.eval_complex(&cpoint, bits)?;
            for i in 0..R::len() {
                for _ in 0..e[i] {
                    t *= &roots[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Convenience: evaluate at λ₁, λ₂ (and optionally x, y) given as f64.
    pub fn eval_f64(&self, vals: [Option<f64>; NVARS], digits: u32) -> Result<Complex> {
        let bits = digits_to_bits(digits);
        let point = vals.map(|v| v.map(|x| Float::with_val(bits, x)));
        self.eval(&point, digits)
    }
}

impl<R: Roster> fmt::Display for Radical<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mono: Vec<String> = (0..R::len())
                .filter(|&i| e[i] > 0)
                .map(|i| {
                    if e[i] == 1 {
                        R::NAMES[i].to_string()
                    } else {
                        format!("{}^{}", R::NAMES[i], e[i])
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "[{}]", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "[{}]*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: Roster> fmt::Debug for Radical<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Radical(N={}, A={}; {})", self.n, self.a, self)
    }
}

macro_rules! radical_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<'a, R: Roster> $tr<&'a Radical<R>> for &'a Radical<R> {
            type Output = Radical<R>;
            fn $m(self, rhs: &'a Radical<R>) -> Radical<R> {
                self.$imp(rhs).expect("parameter mismatch")
            }
        }
        impl<R: Roster> $tr for Radical<R> {
            type Output = Radical<R>;
            fn $m(self, rhs: Radical<R>) -> Radical<R> {
                (&self).$m(&rhs)
            }
        }
        impl<'a, R: Roster> $tr<&'a Radical<R>> for Radical<R> {
            type Output = Radical<R>;
            fn $m(self, rhs: &'a Radical<R>) -> Radical<R> {
                (&self).$m(rhs)
            }
        }
    };
}

radical_binop!(Add, add, checked_add);
radical_binop!(Sub, sub, checked_sub);
radical_binop!(Mul, mul, checked_mul);

impl<R: Roster> Neg for &Radical<R> {
    type Output = Radical<R>;
    fn neg(self) -> Radical<R> {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }
}

impl<R: Roster> Neg for Radical<R> {
    type Output = Radical<R>;
    fn neg(self) -> Radical<R> {
        -&self
    }
}

/// Shorthand constructors for the λ-algebra.
impl KummerElem {
    pub fn u1(n: u32, a: u32) -> Self {
        Self::root(n, a, 0)
    }
    pub fn v1(n: u32, a: u32) -> Self {
        Self::root(n, a, 1)
    }
    pub fn u2(n: u32, a: u32) -> Self {
        Self::root(n, a, 2)
    }
    pub fn v2(n: u32, a: u32) -> Self {
        Self::root(n, a, 3)
    }

    /// Evaluate at (λ₁, λ₂) ∈ (0,1)².
    pub fn eval_at(&self, l1: &Float, l2: &Float, digits: u32) -> Result<Complex> {
        self.eval(&[Some(l1.clone()), Some(l2.clone()), None, None], digits)
    }
}
