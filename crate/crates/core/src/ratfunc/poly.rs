use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Rational};

use crate::exact_field::CycloNum;

pub const NVARS: usize = 4;

/// The fixed variable roster: λ₁ > λ₂ > x > y.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    L1,
    L2,
    X,
    Y,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::L1, Var::L2, Var::X, Var::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::L1 => "l1",
            Var::L2 => "l2",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

/// Exponent vector. Ordered graded-lex with λ₁ > λ₂ > x > y.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] += o.0[i];
        }
        m
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..NVARS).all(|i| self.0[i] <= o.0[i])
    }

    /// o / self, assuming self | o.
    pub fn quotient(&self, o: &Mono) -> Mono {
        let mut m = *o;
        for i in 0..NVARS {
            m.0[i] -= self.0[i];
        }
        m
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut m = *self;
        for i in 0..NVARS {
            m.0[i] = m.0[i].min(o.0[i]);
        }
        m
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over Q(ζ_{2N}) in the fixed roster.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    order: u32,
    terms: BTreeMap<Mono, CycloNum>,
}

impl Poly {
    pub fn zero(order: u32) -> Self {
        Poly {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(CycloNum::one(order))
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::term(c, Mono::ONE)
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::constant(CycloNum::from_int(order, k))
    }

    pub fn from_rational(order: u32, q: &Rational) -> Self {
        Self::constant(CycloNum::from_rational(order, q))
    }

    pub fn term(c: CycloNum, m: Mono) -> Self {
        let order = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { order, terms }
    }

    pub fn var(order: u32, v: Var) -> Self {
        Self::term(CycloNum::one(order), Mono::var(v, 1))
    }

    /// c₀ + c₁·v for integer c₀, c₁ (handy for linear factors like 1 − λ).
    pub fn linear(order: u32, v: Var, c0: i64, c1: i64) -> Self {
        &Self::from_int(order, c0) + &Self::var(order, v).scale(&CycloNum::from_int(order, c1))
    }

    pub fn from_terms(order: u32, it: impl IntoIterator<Item = (Mono, CycloNum)>) -> Self {
        let mut p = Self::zero(order);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &CycloNum)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Mono::ONE)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::ONE).map_or(false, |c| c.is_one())
    }

    pub fn constant_value(&self) -> Option<CycloNum> {
        if self.is_zero() {
            Some(CycloNum::zero(self.order))
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Mono) -> CycloNum {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycloNum::zero(self.order))
    }

    pub fn leading(&self) -> Option<(&Mono, &CycloNum)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> CycloNum {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| CycloNum::zero(self.order))
    }

    pub fn add_term(&mut self, m: Mono, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn sub_term(&mut self, m: Mono, c: &CycloNum) {
        self.add_term(m, &-c);
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn involves(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn scale(&self, c: &CycloNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.order);
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &CycloNum) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.order);
        }
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.order);
        let mut sq = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Scale so the grlex-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn derive(&self, v: Var) -> Poly {
        let mut out = Poly::zero(self.order);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut m2 = *m;
            m2.0[v.index()] -= 1;
            out.add_term(m2, &c.scale_int(e as i64));
        }
        out
    }

    /// Coefficients with respect to v: result[k] is free of v and self = Σ result[k]·v^k.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let mut out = vec![Poly::zero(self.order); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            let mut m2 = *m;
            m2.0[v.index()] = 0;
            out[k].terms.insert(m2, c.clone());
        }
        out
    }

    pub fn coeff_in(&self, v: Var, k: u16) -> Poly {
        let mut out = Poly::zero(self.order);
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                let mut m2 = *m;
                m2.0[v.index()] = 0;
                out.terms.insert(m2, c.clone());
            }
        }
        out
    }

    /// Exact quotient self / d, or None when d does not divide self.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (lm, lc) = d.leading()?;
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.inv().ok()?));
        }
        let lc_inv = lc.inv().ok()?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.order);
        while let Some((m, c)) = r.leading() {
            if !lm.divides(m) {
                return None;
            }
            let tm = lm.quotient(m);
            let tc = c * &lc_inv;
            for (dm, dc) in &d.terms {
                r.sub_term(dm.mul(&tm), &(dc * &tc));
            }
            q.terms.insert(tm, tc);
        }
        Some(q)
    }

    /// Substitute an exact constant for one variable.
    pub fn eval_at(&self, v: Var, value: &CycloNum) -> Poly {
        let mut powers: Vec<CycloNum> = vec![CycloNum::one(self.order)];
        let mut out = Poly::zero(self.order);
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut m2 = *m;
            m2.0[v.index()] = 0;
            out.add_term(m2, &(c * &powers[e]));
        }
        out
    }

    /// Numeric value; `point[i]` is the value of `Var::ALL[i]` (unused variables may be None).
    pub fn eval_complex(&self, point: &[Option<Complex>; NVARS], bits: u32) -> Complex {
        let mut acc = Complex::new(bits);
        for (m, c) in &self.terms {
            let mut t = c.embed_bits(bits);
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    let x = point[v.index()]
                        .as_ref()
                        .unwrap_or_else(|| panic!("no value for variable {}", v.name()));
                    for _ in 0..e {
                        t *= x;
                    }
                }
            }
            acc += t;
        }
        acc
    }

    /// True when every coefficient lies in Q.
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(|c| c.to_rational().is_some())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.sub_term(*m, c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.order, rhs.order, "cyclotomic order mismatch");
        let mut out = Poly::zero(self.order);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

pub(crate) fn fmt_mono(m: &Mono, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut first = true;
    for v in Var::ALL {
        let e = m.exp(v);
        if e == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "{}", v.name())?;
        } else {
            write!(f, "{}^{}", v.name(), e)?;
        }
    }
    Ok(())
}

// Writes a coefficient-times-monomial; the sign of a rational coefficient is
// pulled out so sums read naturally.
fn fmt_term(m: &Mono, c: &CycloNum, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let rational = c.to_rational();
    let (neg, body) = match &rational {
        Some(q) if *q < 0 => (true, CycloNum::from_rational(c.order(), &Rational::from(-q))),
        _ => (false, c.clone()),
    };
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, "{}", if neg { " - " } else { " + " })?;
    }
    let is_unit = body.is_one();
    if *m == Mono::ONE {
        if rational.is_some() {
            write!(f, "{}", body)
        } else {
            write!(f, "({})", body)
        }
    } else {
        if !is_unit {
            if rational.is_some() {
                write!(f, "{}*", body)?;
            } else {
                write!(f, "({})*", body)?;
            }
        }
        fmt_mono(m, f)
    }
}

/// Deterministic rendering, grlex-descending.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            fmt_term(m, c, i == 0, f)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.order, self)
    }
}
