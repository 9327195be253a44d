//! Coprimality certificates via reduction modulo a prime p ≡ 1 (mod 2N).
//!
//! If g = gcd(a, b) involves w, then specializing every other variable at a
//! point where lc_w(a) survives keeps deg_w of g's image, so the images of a
//! and b share a factor of positive w-degree. Contrapositive: trivial image
//! gcds for every shared variable prove gcd(a, b) = 1. Reduction mod p is a
//! ring map from the localization of Z[ζ] at a prime above p, valid as long
//! as no coefficient denominator is divisible by p.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::Integer;

use super::poly::{Poly, Var, NVARS};
use crate::exact_field::CycloNum;

pub(crate) struct ModCtx {
    p: u64,
    // ω^k for k < order, ω a primitive order-th root of unity mod p
    omega: Vec<u64>,
}

pub(crate) fn ctx(order: u32) -> &'static ModCtx {
    static REG: OnceLock<Mutex<HashMap<u32, &'static ModCtx>>> = OnceLock::new();
    let reg = REG.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = reg.lock().expect("modp registry poisoned");
    *map.entry(order)
        .or_insert_with(|| Box::leak(Box::new(ModCtx::new(order))))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl ModCtx {
    fn new(order: u32) -> Self {
        let m = order as u64;
        // largest prime p = k·m + 1 below 2^61
        let mut k = ((1u64 << 61) - 1) / m;
        let p = loop {
            let cand = k * m + 1;
            if Integer::from(cand).is_probably_prime(40) != rug::integer::IsPrime::No {
                break cand;
            }
            k -= 1;
        };
        let prime_factors: Vec<u64> = (2..=m).filter(|q| m % q == 0 && (2..*q).all(|d| q % d != 0)).collect();
        let mut g = 2u64;
        let w = loop {
            let w = powmod(g, (p - 1) / m, p);
            if prime_factors.iter().all(|q| powmod(w, m / q, p) != 1) {
                break w;
            }
            g += 1;
        };
        let mut omega = Vec::with_capacity(order as usize);
        let mut cur = 1u64;
        for _ in 0..order {
            omega.push(cur);
            cur = mulmod(cur, w, p);
        }
        ModCtx { p, omega }
    }

    fn reduce(&self, c: &CycloNum) -> Option<u64> {
        let p = self.p;
        let den = Integer::from(c.denominator() % p).to_u64().unwrap_or(0);
        if den == 0 {
            return None;
        }
        let mut acc = 0u64;
        for (k, n) in c.numerators().iter().enumerate() {
            if *n == 0 {
                continue;
            }
            let r = Integer::from(n % p);
            let r = if r < 0 { r + p } else { r };
            let r = r.to_u64().unwrap();
            acc = (acc + mulmod(r, self.omega[k], p)) % p;
        }
        Some(mulmod(acc, invmod(den, p), p))
    }
}

// Deterministic point generator so results never depend on global state.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self, p: u64) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        (z ^ (z >> 31)) % p
    }
}

fn image(ctx: &ModCtx, a: &Poly, w: Var, pt: &[u64; NVARS]) -> Option<Vec<u64>> {
    let p = ctx.p;
    let mut out = vec![0u64; a.degree_in(w) as usize + 1];
    for (m, c) in a.terms() {
        let mut t = ctx.reduce(c)?;
        for v in Var::ALL {
            if v != w && m.exp(v) > 0 {
                t = mulmod(t, powmod(pt[v.index()], m.exp(v) as u64, p), p);
            }
        }
        let k = m.exp(w) as usize;
        out[k] = (out[k] + t) % p;
    }
    Some(out)
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn is_zero(v: &[u64]) -> bool {
    v.len() == 1 && v[0] == 0
}

fn rem(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = invmod(b[db], p);
    while a.len() > db && !is_zero(&a) {
        let da = a.len() - 1;
        let q = mulmod(a[da], inv, p);
        for j in 0..=db {
            let s = mulmod(q, b[j], p);
            a[da - db + j] = (a[da - db + j] + p - s) % p;
        }
        a.pop();
        if a.is_empty() {
            a.push(0);
        }
        trim(&mut a);
    }
    a
}

// Degree of the univariate gcd over F_p.
fn gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    trim(&mut a);
    trim(&mut b);
    while !is_zero(&b) {
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a.len() - 1
}

/// True only when gcd(a, b) = 1 is certified; false means "unknown".
pub(crate) fn certify_coprime(a: &Poly, b: &Poly) -> bool {
    let ctx = ctx(a.order());
    let p = ctx.p;
    let mut rng = SplitMix(0x5EED_0000 ^ a.order() as u64);
    for w in Var::ALL {
        if !(a.involves(w) && b.involves(w)) {
            continue;
        }
        let mut ok = false;
        for _attempt in 0..3 {
            let mut pt = [0u64; NVARS];
            for v in pt.iter_mut() {
                *v = 1 + rng.next(p - 1);
            }
            let (ia, ib) = match (image(ctx, a, w, &pt), image(ctx, b, w, &pt)) {
                (Some(x), Some(y)) => (x, y),
                _ => return false,
            };
            let keeps = |img: &Vec<u64>, src: &Poly| img[src.degree_in(w) as usize] != 0;
            if !(keeps(&ia, a) || keeps(&ib, b)) {
                continue;
            }
            if gcd_degree(ia, ib, p) == 0 {
                ok = true;
            }
            break;
        }
        if !ok {
            return false;
        }
    }
    true
}
