//! Multivariate GCD by recursive primitive pseudo-remainder sequences.

use super::poly::{Mono, Poly, Var};

/// Monic greatest common divisor (grlex-leading coefficient 1); gcd(0, 0) = 0.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let order = a.order();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(order);
    }
    // pull out the common monomial factor first
    let ma = mono_content(a);
    let mb = mono_content(b);
    let m = ma.gcd(&mb);
    let a = strip_mono(a, &ma);
    let b = strip_mono(b, &mb);
    let rest = gcd_no_mono(&a, &b);
    if m == Mono::ONE {
        rest
    } else {
        rest.mul_term(&m, &crate::exact_field::CycloNum::one(order))
    }
}

fn mono_content(p: &Poly) -> Mono {
    let mut it = p.terms().map(|(m, _)| *m);
    let first = it.next().unwrap_or(Mono::ONE);
    it.fold(first, |acc, m| acc.gcd(&m))
}

fn strip_mono(p: &Poly, m: &Mono) -> Poly {
    if *m == Mono::ONE {
        return p.clone();
    }
    Poly::from_terms(p.order(), p.terms().map(|(k, c)| (m.quotient(k), c.clone())))
}

fn gcd_no_mono(a: &Poly, b: &Poly) -> Poly {
    let order = a.order();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(order);
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // monomial contents were stripped, so a single term is a constant multiple of 1
        return Poly::one(order);
    }
    let am = a.monic();
    let bm = b.monic();
    if am == bm {
        return am;
    }
    if super::modp::certify_coprime(a, b) {
        return Poly::one(order);
    }
    // a variable present in only one argument can be eliminated through its content
    for v in Var::ALL {
        match (a.involves(v), b.involves(v)) {
            (true, false) => return gcd(&content_in(a, v), b),
            (false, true) => return gcd(a, &content_in(b, v)),
            _ => {}
        }
    }
    // cheap divisibility probes before the full sequence
    if b.total_degree() <= a.total_degree() {
        if a.div_exact(b).is_some() {
            return bm;
        }
    } else if b.div_exact(a).is_some() {
        return am;
    }
    let v = Var::ALL
        .into_iter()
        .filter(|&v| a.involves(v))
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant polynomial involves a variable");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = prem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            g = Poly::one(order);
            break;
        }
        f = g;
        g = primitive_part(&r, v).monic();
    }
    let g = primitive_part(&g, v);
    (&c * &g).monic()
}

/// GCD of the coefficients of p viewed as a polynomial in v (monic, free of v).
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let mut acc = Poly::zero(p.order());
    for c in p.coeffs_in(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

pub fn primitive_part(p: &Poly, v: Var) -> Poly {
    let c = content_in(p, v);
    if c.is_one() || c.is_zero() {
        return p.clone();
    }
    p.div_exact(&c).expect("content divides")
}

/// Pseudo-remainder of f by g with respect to v.
pub fn prem(f: &Poly, g: &Poly, v: Var) -> Poly {
    let dg = g.degree_in(v);
    let lc = g.coeff_in(v, dg);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coeff_in(v, dr);
        let shift = Mono::var(v, dr - dg);
        let t = (&lr * g).mul_term(&shift, &crate::exact_field::CycloNum::one(f.order()));
        r = &(&r * &lc) - &t;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_field::CycloNum;

    fn l1() -> Poly {
        Poly::var(10, Var::L1)
    }
    fn l2() -> Poly {
        Poly::var(10, Var::L2)
    }
    fn x() -> Poly {
        Poly::var(10, Var::X)
    }
    fn c(k: i64) -> Poly {
        Poly::from_int(10, k)
    }

    #[test]
    fn univariate_and_multivariate() {
        let a = &(&l1() - &c(1)) * &(&l1() + &c(2));
        let b = &(&l1() - &c(1)) * &(&l1() - &c(3));
        assert_eq!(gcd(&a, &b), &l1() - &c(1));
        let common = &(&l1() - &l2()) * &(&(&l1() * &x()) - &c(1));
        let a = &common * &(&l2() + &x());
        let b = &common * &(&l1() + &c(5));
        assert_eq!(gcd(&a, &b), common.monic());
        assert!(gcd(&(&l1() + &c(1)), &(&l1() - &c(1))).is_one());
    }

    #[test]
    fn cyclotomic_coefficients() {
        let z = Poly::constant(CycloNum::zeta(10, 1));
        let f = &l1() - &z;
        let a = &f * &(&l1() + &c(1));
        let b = &f * &(&l2() - &c(1));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn monomial_factors() {
        let a = &l1().pow(3) * &(&l2() - &c(1));
        let b = &l1().pow(2) * &l2();
        assert_eq!(gcd(&a, &b), l1().pow(2));
    }
}
