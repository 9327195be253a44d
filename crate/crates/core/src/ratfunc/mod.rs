//! Multivariate polynomials and rational functions over Q(ζ_{2N}).

mod gcd;
mod modp;
mod poly;

pub use gcd::{content_in, gcd, primitive_part};
pub use poly::{Mono, Poly, Var, NVARS};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Complex, Rational};

use crate::error::{Error, Result};
use crate::exact_field::CycloNum;

/// A reduced fraction num/den with gcd(num, den) = 1 and den monic (grlex).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(num.order());
        }
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero constant");
            return RatFunc {
                den: Poly::one(num.order()),
                num: num.scale(&inv),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::make_monic(num, den)
    }

    fn make_monic(num: Poly, den: Poly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.inv().expect("nonzero leading coefficient");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn zero(order: u32) -> Self {
        RatFunc {
            num: Poly::zero(order),
            den: Poly::one(order),
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_poly(Poly::one(order))
    }

    pub fn from_poly(p: Poly) -> Self {
        let order = p.order();
        RatFunc {
            num: p,
            den: Poly::one(order),
        }
    }

    pub fn constant(c: CycloNum) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_poly(Poly::from_int(order, k))
    }

    pub fn from_rational(order: u32, q: &Rational) -> Self {
        Self::from_poly(Poly::from_rational(order, q))
    }

    pub fn var(order: u32, v: Var) -> Self {
        Self::from_poly(Poly::var(order, v))
    }

    pub fn order(&self) -> u32 {
        self.num.order()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<CycloNum> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn involves(&self, v: Var) -> bool {
        self.num.involves(v) || self.den.involves(v)
    }

    pub fn scale(&self, c: &CycloNum) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.order());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::make_monic(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        // numerator and denominator stay coprime under powers
        Ok(Self::make_monic(base.num.pow(e), base.den.pow(e)))
    }

    pub fn derive(&self, v: Var) -> RatFunc {
        if !self.involves(v) {
            return Self::zero(self.order());
        }
        if self.den.is_one() {
            return Self::from_poly(self.num.derive(v));
        }
        // (n/d)' = (n'·d/g − n·d'/g)/(d·d/g) with g = gcd(d, d')
        let dd = self.den.derive(v);
        let g = gcd(&self.den, &dd);
        let (dg, ddg) = if g.is_one() {
            (self.den.clone(), dd)
        } else {
            (self.den.div_exact(&g).unwrap(), dd.div_exact(&g).unwrap())
        };
        let n = &(&self.num.derive(v) * &dg) - &(&self.num * &ddg);
        Self::reduce(n, &self.den * &dg)
    }

    /// Exact substitution of a constant; a vanishing denominator is a pole error.
    pub fn eval_at(&self, v: Var, value: &CycloNum) -> Result<RatFunc> {
        let d = self.den.eval_at(v, value);
        if d.is_zero() {
            return Err(Error::Pole(format!("{} at {} = {}", self.den, v.name(), value)));
        }
        Ok(Self::reduce(self.num.eval_at(v, value), d))
    }

    pub fn eval_complex(&self, point: &[Option<Complex>; NVARS], bits: u32) -> Result<Complex> {
        let d = self.den.eval_complex(point, bits);
        if d.is_zero() {
            return Err(Error::Pole(self.den.to_string()));
        }
        Ok(self.num.eval_complex(point, bits) / d)
    }

    /// Simultaneous substitution: every variable with Some(image) is replaced by it.
    pub fn substitute(&self, images: &[Option<RatFunc>; NVARS]) -> Result<RatFunc> {
        let order = self.order();
        // common denominators: P(p/q) = Σ c_m Π p^e q^(d−e) / Π q^d with d = deg_v P
        let subst = |p: &Poly, degs: &[u16; NVARS]| -> Poly {
            let mut cache: Vec<(Vec<Poly>, Vec<Poly>)> = vec![(Vec::new(), Vec::new()); NVARS];
            let mut out = Poly::zero(order);
            for (m, c) in p.terms() {
                let mut t = Poly::constant(c.clone());
                let mut rest = Mono::ONE;
                for v in Var::ALL {
                    let i = v.index();
                    let e = m.exp(v);
                    match &images[i] {
                        None => rest.0[i] = e,
                        Some(img) => {
                            let (pp, qp) = &mut cache[i];
                            t = &t * &power(pp, img.num(), e as usize);
                            t = &t * &power(qp, img.den(), (degs[i] - e) as usize);
                        }
                    }
                }
                out = &out + &t.mul_term(&rest, &CycloNum::one(order));
            }
            out
        };
        let mut degs = [0u16; NVARS];
        for v in Var::ALL {
            if images[v.index()].is_some() {
                degs[v.index()] = self.num.degree_in(v).max(self.den.degree_in(v));
            }
        }
        let n = subst(&self.num, &degs);
        let d = subst(&self.den, &degs);
        if d.is_zero() {
            return Err(Error::Pole(format!("{} under substitution", self.den)));
        }
        Ok(Self::reduce(n, d))
    }

    pub fn is_rational(&self) -> bool {
        self.num.is_rational() && self.den.is_rational()
    }
}

fn power<'a>(cache: &'a mut Vec<Poly>, base: &Poly, e: usize) -> &'a Poly {
    if cache.is_empty() {
        cache.push(Poly::one(base.order()));
    }
    while cache.len() <= e {
        let next = cache.last().unwrap() * base;
        cache.push(next);
    }
    &cache[e]
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        add_sub(self, rhs, false)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        add_sub(self, rhs, true)
    }
}

fn add_sub(a: &RatFunc, b: &RatFunc, sub: bool) -> RatFunc {
    let comb = |x: &Poly, y: &Poly| if sub { x - y } else { x + y };
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if sub { -b } else { b.clone() };
    }
    if a.den == b.den {
        let n = comb(&a.num, &b.num);
        if a.den.is_one() {
            return RatFunc::from_poly(n);
        }
        return RatFunc::reduce(n, a.den.clone());
    }
    let g = gcd(&a.den, &b.den);
    let (ad, bd) = if g.is_one() {
        (a.den.clone(), b.den.clone())
    } else {
        (a.den.div_exact(&g).unwrap(), b.den.div_exact(&g).unwrap())
    };
    let n = comb(&(&a.num * &bd), &(&b.num * &ad));
    let d = &a.den * &bd;
    RatFunc::reduce(n, d)
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.order());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if let Some(c) = self.constant_value() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.constant_value() {
            return self.scale(&c);
        }
        // cross-cancel: gcd(n1, d2), gcd(n2, d1)
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let div = |p: &Poly, g: &Poly| if g.is_one() { p.clone() } else { p.div_exact(g).unwrap() };
        let n = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let d = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        RatFunc::make_monic(n, d)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |p: &Poly| {
            let s = p.to_string();
            if p.num_terms() > 1 || s.contains('/') {
                format!("({})", s)
            } else {
                s
            }
        };
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", paren(&self.num), paren(&self.den))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{}]({})", self.order(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const M: u32 = 10;

    fn v(x: Var) -> RatFunc {
        RatFunc::var(M, x)
    }
    fn k(c: i64) -> RatFunc {
        RatFunc::from_int(M, c)
    }

    #[test]
    fn arithmetic_examples() {
        let d = &v(Var::L1) - &v(Var::L2);
        assert!(d.checked_div(&d).unwrap().is_one());
        let a = d.inv().unwrap();
        let b = (&v(Var::L2) - &v(Var::L1)).inv().unwrap();
        assert!((&a + &b).is_zero());
        let l = v(Var::L1);
        let q = &l * &(&k(1) - &l);
        let r = &(&(&l * &l) - &l) + &k(1);
        let e = q.checked_div(&r).unwrap();
        assert!((&e * &e.inv().unwrap()).is_one());
        assert_eq!(k(1).checked_div(&k(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn derivatives() {
        let l = v(Var::L1);
        assert_eq!((&l * &l).derive(Var::L1), &k(2) * &l);
        let d = (&v(Var::L1) - &v(Var::L2)).inv().unwrap();
        let expected = -(&(&v(Var::L1) - &v(Var::L2)).pow(-2).unwrap());
        assert_eq!(d.derive(Var::L1), expected);
        assert_eq!((&l * &(&k(1) - &l)).derive(Var::L1), &k(1) - &(&k(2) * &l));
    }

    #[test]
    fn canonical_form() {
        // (2λ₁ − 2)/(4λ₁² − 4) = 1/(2λ₁ + 2) → num 1/2, den λ₁ + 1
        let n = &(&k(2) * &v(Var::L1)) - &k(2);
        let d = &(&k(4) * &v(Var::L1).pow(2).unwrap()) - &k(4);
        let r = n.checked_div(&d).unwrap();
        assert_eq!(r.to_string(), "(1/2)/(l1 + 1)");
        assert!(r.den().leading_coeff().is_one());
    }

    #[test]
    fn substitution() {
        // λ₁ ↦ 1/λ₁, x ↦ λ₁ x applied to λ₁ − x gives 1/λ₁ − λ₁ x
        let f = &v(Var::L1) - &v(Var::X);
        let mut images: [Option<RatFunc>; NVARS] = Default::default();
        images[Var::L1.index()] = Some(v(Var::L1).inv().unwrap());
        images[Var::X.index()] = Some(&v(Var::L1) * &v(Var::X));
        let g = f.substitute(&images).unwrap();
        let expected = &v(Var::L1).inv().unwrap() - &(&v(Var::L1) * &v(Var::X));
        assert_eq!(g, expected);
        // a denominator sent to zero is reported
        let h = (&v(Var::L1) - &v(Var::L2)).inv().unwrap();
        let mut images: [Option<RatFunc>; NVARS] = Default::default();
        images[Var::L1.index()] = Some(v(Var::L2));
        assert!(matches!(h.substitute(&images), Err(Error::Pole(_))));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(((0u16..3, 0u16..3, 0u16..2), -4i64..5, 0i64..10), 1..5).prop_map(|ts| {
            Poly::from_terms(
                M,
                ts.into_iter().map(|((a, b, c), coef, zp)| {
                    (
                        Mono([a, b, c, 0]),
                        &CycloNum::from_int(M, coef) * &CycloNum::zeta(M, zp),
                    )
                }),
            )
        })
    }

    fn arb_rf() -> impl Strategy<Value = RatFunc> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero den", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn self_difference_is_zero(a in arb_rf()) {
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn leibniz(a in arb_rf(), b in arb_rf()) {
            let lhs = (&a * &b).derive(Var::L1);
            let rhs = &(&a.derive(Var::L1) * &b) + &(&a * &b.derive(Var::L1));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn field_ops_roundtrip(a in arb_rf(), b in arb_rf()) {
            let s = &(&a + &b) - &b;
            prop_assert_eq!(&s, &a);
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b).checked_div(&b).unwrap(), &a);
            }
        }

        #[test]
        fn evaluation_homomorphism(a in arb_rf(), b in arb_rf(), p in 1i64..7, q in 2i64..9) {
            let val = CycloNum::from_ratio(M, p, q);
            let ev = |r: &RatFunc| r.eval_at(Var::L1, &val);
            if let (Ok(ea), Ok(eb)) = (ev(&a), ev(&b)) {
                if let Ok(es) = ev(&(&a + &b)) {
                    prop_assert_eq!(es, &ea + &eb);
                }
                if let Ok(ep) = ev(&(&a * &b)) {
                    prop_assert_eq!(ep, &ea * &eb);
                }
            }
        }
    }
}
