//! The named 1-cocycles on G̃² and exact checks of their defining identities.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{S3Elem, TildeG2Elem};
use crate::error::{Error, Result};
use crate::kummer::KummerElem;
use crate::ratfunc::{RatFunc, Var};
use crate::CycloNum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Cocycle {
    Eta1,
    Eta2,
    Eta,
    Phi1,
    Phi2,
    Chi,
    Delta1,
    Delta2,
    Theta1,
    Theta2,
}

impl Cocycle {
    pub const ALL: [Cocycle; 10] = [
        Cocycle::Eta1,
        Cocycle::Eta2,
        Cocycle::Eta,
        Cocycle::Phi1,
        Cocycle::Phi2,
        Cocycle::Chi,
        Cocycle::Delta1,
        Cocycle::Delta2,
        Cocycle::Theta1,
        Cocycle::Theta2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Cocycle::Eta1 => "eta1",
            Cocycle::Eta2 => "eta2",
            Cocycle::Eta => "eta",
            Cocycle::Phi1 => "phi1",
            Cocycle::Phi2 => "phi2",
            Cocycle::Chi => "chi",
            Cocycle::Delta1 => "delta1",
            Cocycle::Delta2 => "delta2",
            Cocycle::Theta1 => "theta1",
            Cocycle::Theta2 => "theta2",
        }
    }

    /// The fixed unit m with c(g) = g^♯(m)/m, for the coboundaries.
    pub fn fixed_element(self, n: u32, a: u32) -> Option<KummerElem> {
        let o = 2 * n;
        let q = |v: Var| {
            let l = RatFunc::var(o, v);
            &(&(&l * &l) - &l) + &RatFunc::one(o)
        };
        let (ni, ai) = (n as i64, a as i64);
        let mono = |c: RatFunc, e: [i64; 4]| KummerElem::monomial(n, a, c, &e);
        let delta_m = |v: Var| {
            let l = RatFunc::var(o, v);
            let num = &l * &(&RatFunc::one(o) - &l);
            num.checked_div(&q(v).pow(2).unwrap()).unwrap()
        };
        Some(match self {
            Cocycle::Phi1 => mono(q(Var::L1).inv().unwrap(), [ai, ni - ai, 0, 0]),
            Cocycle::Phi2 => mono(q(Var::L2).inv().unwrap(), [0, 0, ni - ai, ai]),
            Cocycle::Delta1 => KummerElem::from_ratfunc(n, a, delta_m(Var::L1)),
            Cocycle::Delta2 => KummerElem::from_ratfunc(n, a, delta_m(Var::L2)),
            Cocycle::Theta1 => mono(RatFunc::one(o), [1, -1, 0, 0]),
            Cocycle::Theta2 => mono(RatFunc::one(o), [0, 0, -1, 1]),
            _ => return None,
        })
    }

    pub fn value(self, g: &TildeG2Elem) -> Result<KummerElem> {
        let (n, a) = (g.n, g.a);
        if let Some(m) = self.fixed_element(n, a) {
            return coboundary(g, &m);
        }
        match self {
            Cocycle::Eta1 => Ok(KummerElem::from_ratfunc(n, a, eta_table(n, a, g.rho1.base, Var::L1, false))),
            Cocycle::Eta2 => Ok(KummerElem::from_ratfunc(n, a, eta_table(n, a, g.rho2.base, Var::L2, true))),
            Cocycle::Eta => Ok(&Cocycle::Eta1.value(g)? * &Cocycle::Eta2.value(g)?),
            Cocycle::Chi => {
                let p = &Cocycle::Phi1.value(g)? * &Cocycle::Phi2.value(g)?;
                Ok(p.scale_cyclo(&g.zeta_value()))
            }
            _ => unreachable!("coboundaries handled above"),
        }
    }
}

impl fmt::Display for Cocycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Cocycle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Cocycle::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Other(format!("unknown cocycle '{s}'")))
    }
}

/// g^♯(m)/m.
pub fn coboundary(g: &TildeG2Elem, m: &KummerElem) -> Result<KummerElem> {
    g.substitute(m)?.checked_div(m)
}

/// η₁ (and η₂ with A ↦ N − A, which is how the second table reads) as a
/// signed product of powers of λ and 1 − λ.
fn eta_table(n: u32, a: u32, b: S3Elem, v: Var, second: bool) -> RatFunc {
    let o = 2 * n;
    let (ni, ai) = (n as i64, if second { (n - a) as i64 } else { a as i64 });
    let l = RatFunc::var(o, v);
    let m = &RatFunc::one(o) - &l;
    // (sign exponent, λ exponent, (1−λ) exponent)
    let (s, p, q) = match b {
        S3Elem::Id => (0, 0, 0),
        S3Elem::T01 => (ni, 0, ai),
        S3Elem::T0L => (ni - ai, ni - 2 * ai, 2 * ai - ni),
        S3Elem::C01L => (ni - ai, ni - 2 * ai, ai),
        S3Elem::T1L => (0, ni - ai, 0),
        S3Elem::C0L1 => (ai, ni - ai, 2 * ai - ni),
    };
    let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut r = &l.pow(p).unwrap() * &m.pow(q).unwrap();
    if sign < 0 {
        r = -r;
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleFailure {
    pub g: String,
    pub h: String,
    pub difference: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleReport {
    pub cocycle: Cocycle,
    pub checked: usize,
    pub failures: Vec<CocycleFailure>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// c(gh) = h^♯(c(g))·c(h) for every pair, exactly.
pub fn verify_cocycle(c: Cocycle, pairs: &[(TildeG2Elem, TildeG2Elem)]) -> Result<CocycleReport> {
    let results: Vec<Result<Option<CocycleFailure>>> = pairs
        .par_iter()
        .map(|(g, h)| {
            let lhs = c.value(&g.compose(h))?;
            let rhs = &h.substitute(&c.value(g)?)? * &c.value(h)?;
            Ok(if lhs == rhs {
                None
            } else {
                Some(CocycleFailure {
                    g: g.to_string(),
                    h: h.to_string(),
                    difference: (&lhs - &rhs).to_string(),
                })
            })
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        if let Some(f) = r? {
            failures.push(f);
        }
    }
    Ok(CocycleReport {
        cocycle: c,
        checked: pairs.len(),
        failures,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiPowerReport {
    pub element: String,
    /// χ^N = η
    pub chi_power: bool,
    /// η₁ = φ₁^N·sgn(ρ̲₁)^{N−A}
    pub eta1_relation: bool,
    /// η₂ = φ₂^N·sgn(ρ̲₂)^A
    pub eta2_relation: bool,
}

impl ChiPowerReport {
    pub fn passed(&self) -> bool {
        self.chi_power && self.eta1_relation && self.eta2_relation
    }
}

pub fn verify_chi_power(g: &TildeG2Elem) -> Result<ChiPowerReport> {
    let n = g.n as i64;
    let a = g.a as i64;
    let chi_n = Cocycle::Chi.value(g)?.pow(n)?;
    let eta = Cocycle::Eta.value(g)?;
    let s1 = g.rho1.sign().pow((n - a) as u32);
    let s2 = g.rho2.sign().pow(a as u32);
    let e1 = Cocycle::Phi1.value(g)?.pow(n)?.scale_cyclo(&CycloNum::from_int(g.order(), s1));
    let e2 = Cocycle::Phi2.value(g)?.pow(n)?.scale_cyclo(&CycloNum::from_int(g.order(), s2));
    Ok(ChiPowerReport {
        element: g.to_string(),
        chi_power: chi_n == eta,
        eta1_relation: e1 == Cocycle::Eta1.value(g)?,
        eta2_relation: e2 == Cocycle::Eta2.value(g)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VBranch {
    /// N − A odd: k(N−A) ≡ −1 (mod 2N)
    Odd { k: u32 },
    /// N − A even: lA ≡ 1 (mod 2N)
    Even { l: u32 },
}

#[derive(Clone, Debug, Serialize)]
pub struct VTransformReport {
    pub element: String,
    pub branch: VBranch,
    /// the Jacobian·f/g^♯f factor is free of x and y
    pub coordinate_free: bool,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

impl VTransformReport {
    pub fn passed(&self) -> bool {
        self.coordinate_free && self.holds
    }
}

/// Inverse of `x` modulo `m` when it exists.
pub fn inverse_mod(x: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (x.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(m))
}

pub fn v_branch(n: u32, a: u32) -> Result<VBranch> {
    let m = 2 * n as i64;
    let na = (n - a) as i64;
    if na % 2 == 1 {
        let k = inverse_mod(-na, m)
            .ok_or_else(|| Error::Other(format!("no k with k(N-A) = -1 mod 2N for N={n}, A={a}")))?;
        Ok(VBranch::Odd { k: k as u32 })
    } else {
        let l = inverse_mod(a as i64, m)
            .ok_or_else(|| Error::Other(format!("no l with lA = 1 mod 2N for N={n}, A={a}")))?;
        Ok(VBranch::Even { l: l as u32 })
    }
}

/// s(g) with g^♯(v) = s(g)·v: ζ^k·sgn(ρ̲₂)·θ₁θ₂ (N − A odd) or ζ^l·θ₁θ₂ (even).
pub fn v_multiplier(g: &TildeG2Elem) -> Result<KummerElem> {
    let o = g.order();
    let theta = &Cocycle::Theta1.value(g)? * &Cocycle::Theta2.value(g)?;
    let e = g.zeta as i64;
    Ok(match v_branch(g.n, g.a)? {
        VBranch::Odd { k } => theta.scale_cyclo(&CycloNum::zeta(o, e * k as i64).scale_int(g.rho2.sign())),
        VBranch::Even { l } => theta.scale_cyclo(&CycloNum::zeta(o, e * l as i64)),
    })
}

/// The local v-transformation identity, checked exactly:
/// (ζ^k·sgn(ρ̲₂)·θ₁θ₂)^{N−A}  (odd N − A), or (ζ^l·θ₁θ₂)^{N−A}  (even),
/// equals ζ^{−1}φ₁^{−1}φ₂^{−1}·(∂ₓρ^♯x)(∂ᵧρ^♯y)·f(x)/ρ^♯f(x).
pub fn verify_v_transform(g: &TildeG2Elem) -> Result<VTransformReport> {
    let (n, a, o) = (g.n, g.a, g.order());
    let branch = v_branch(n, a)?;
    let e = g.zeta as i64;
    let base = v_multiplier(g)?;
    let lhs = base.pow((n - a) as i64)?;

    let imgs = g.var_images();
    let x = RatFunc::var(o, Var::X);
    let one = RatFunc::one(o);
    let f = &(&x * &(&one - &x)) * &(&one - &(&RatFunc::var(o, Var::L1) * &x));
    let gx = imgs[Var::X.index()].as_ref().unwrap();
    let gy = imgs[Var::Y.index()].as_ref().unwrap();
    let jac = &gx.derive(Var::X) * &gy.derive(Var::Y);
    let factor = &jac * &f.checked_div(&g.substitute_ratfunc(&f)?)?;
    let coordinate_free = !factor.involves(Var::X) && !factor.involves(Var::Y);

    let phis = &Cocycle::Phi1.value(g)? * &Cocycle::Phi2.value(g)?;
    let rhs = phis
        .inv()?
        .scale(&factor)
        .scale_cyclo(&CycloNum::zeta(o, -e));
    Ok(VTransformReport {
        element: g.to_string(),
        branch,
        coordinate_free,
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// Representatives (b₁, b₂) of all 36 base pairs with canonical lifts and ζ.
pub fn base_pair_representatives(n: u32, a: u32) -> Vec<TildeG2Elem> {
    let mut out = Vec::with_capacity(36);
    for b1 in S3Elem::ALL {
        for b2 in S3Elem::ALL {
            out.push(TildeG2Elem::from_bases(n, a, b1, b2));
        }
    }
    out
}

/// All ordered pairs of generators.
pub fn generator_pairs(n: u32, a: u32) -> Vec<(TildeG2Elem, TildeG2Elem)> {
    let gens = TildeG2Elem::generators(n, a);
    let mut out = Vec::with_capacity(gens.len() * gens.len());
    for g in &gens {
        for h in &gens {
            out.push((*g, *h));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::LiftedAut;
    use rand::SeedableRng;

    const N: u32 = 5;
    const A: u32 = 2;

    fn l(v: Var) -> RatFunc {
        RatFunc::var(2 * N, v)
    }

    #[test]
    fn table_values() {
        let g = TildeG2Elem::from_bases(N, A, S3Elem::T01, S3Elem::Id);
        let one = RatFunc::one(2 * N);
        // (−1)^5 (1−λ₁)^2
        let expect = -(&one - &l(Var::L1)).pow(2).unwrap();
        assert_eq!(Cocycle::Eta1.value(&g).unwrap().as_ratfunc().unwrap(), expect);
        assert!(Cocycle::Eta1.value(&TildeG2Elem::identity(N, A)).unwrap().is_one());
        let tp = TildeG2Elem::tau_prime(N, A);
        assert_eq!(Cocycle::Delta1.value(&tp).unwrap().as_ratfunc().unwrap(), -l(Var::L1));
        assert_eq!(Cocycle::Delta2.value(&tp).unwrap().as_ratfunc().unwrap(), -l(Var::L2));
        let t = TildeG2Elem::tau(N, A);
        assert!(Cocycle::Delta1.value(&t).unwrap().is_one());
    }

    #[test]
    fn chi_special_values() {
        // χ(τ′,τ′,−1) = λ₁^{(N−A)/N} λ₂^{A/N}
        let tp = TildeG2Elem::tau_prime(N, A);
        let expect = KummerElem::monomial(N, A, RatFunc::one(2 * N), &[(N - A) as i64, 0, A as i64, 0]);
        assert_eq!(Cocycle::Chi.value(&tp).unwrap(), expect);
        // χ(τ,τ,−1) = −λ₁^{(N−2A)/N}(1−λ₁)^{(2A−N)/N}λ₂^{(2A−N)/N}(1−λ₂)^{(N−2A)/N}
        let t = TildeG2Elem::tau(N, A);
        let (ni, ai) = (N as i64, A as i64);
        let expect = -KummerElem::monomial(
            N,
            A,
            RatFunc::one(2 * N),
            &[ni - 2 * ai, 2 * ai - ni, 2 * ai - ni, ni - 2 * ai],
        );
        assert_eq!(Cocycle::Chi.value(&t).unwrap(), expect);
        // kernel powers: χ(ρⁱ) = ζ_N^{i(N−A)} for ρ: v₁ ↦ ζ_N v₁
        let rho = TildeG2Elem::kernel1(N, A, 0, 1);
        for i in 0..N {
            let c = Cocycle::Chi.value(&rho.pow(i)).unwrap();
            let z = CycloNum::zeta(2 * N, 2 * (i * (N - A)) as i64);
            assert_eq!(c, KummerElem::constant(N, A, z));
        }
    }

    #[test]
    fn cocycle_identity_on_generators() {
        let pairs = generator_pairs(N, A);
        for c in Cocycle::ALL {
            let r = verify_cocycle(c, &pairs).unwrap();
            assert!(r.passed(), "{c}: {:?}", r.failures.first());
        }
        let id = TildeG2Elem::identity(N, A);
        assert!(verify_cocycle(Cocycle::Chi, &[(id, id)]).unwrap().passed());
    }

    #[test]
    fn cocycle_identity_random_7_3() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pairs: Vec<_> = (0..30)
            .map(|_| (TildeG2Elem::random(7, 3, &mut rng), TildeG2Elem::random(7, 3, &mut rng)))
            .collect();
        for c in [Cocycle::Eta, Cocycle::Chi, Cocycle::Delta1, Cocycle::Theta2] {
            assert!(verify_cocycle(c, &pairs).unwrap().passed(), "{c}");
        }
    }

    #[test]
    fn chi_power_all_representatives() {
        for g in base_pair_representatives(N, A) {
            let r = verify_chi_power(&g).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_chi_power(&TildeG2Elem::tau(N, A)).unwrap().passed());
    }

    #[test]
    fn v_transform_both_branches() {
        assert_eq!(v_branch(5, 2).unwrap(), VBranch::Odd { k: 3 });
        assert_eq!(v_branch(5, 3).unwrap(), VBranch::Even { l: 7 });
        for (n, a) in [(5, 2), (5, 3), (7, 3), (7, 4)] {
            for g in base_pair_representatives(n, a) {
                let r = verify_v_transform(&g).unwrap();
                assert!(r.passed(), "{n},{a}: {r:?}");
            }
            let k = TildeG2Elem::canonical(n, a, LiftedAut::kernel(n, 2, 1), LiftedAut::kernel(n, 3, 4));
            assert!(verify_v_transform(&k).unwrap().passed());
        }
    }

    #[test]
    fn wrong_order_is_detected() {
        // c(gh) = g^♯(c(h))·c(g) is not the identity these satisfy
        let g = TildeG2Elem::from_bases(N, A, S3Elem::T01, S3Elem::Id);
        let h = TildeG2Elem::from_bases(N, A, S3Elem::T0L, S3Elem::Id);
        let c = Cocycle::Eta1;
        let lhs = c.value(&g.compose(&h)).unwrap();
        let wrong = &g.substitute(&c.value(&h).unwrap()).unwrap() * &c.value(&g).unwrap();
        assert_ne!(lhs, wrong);
        assert!("nope".parse::<Cocycle>().is_err());
        assert_eq!("chi".parse::<Cocycle>().unwrap(), Cocycle::Chi);
    }
}
