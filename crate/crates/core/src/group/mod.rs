//! S₃ acting on λ by Möbius maps, its lifts to the Kummer algebra, and the
//! fibre product G̃² = G² ×_{μ₂} μ_{2N}.
//!
//! Conventions: every group element is stored through its pullback g^♯ on
//! functions, and `compose(g, h)` is the element gh with
//! (gh)^♯ = h^♯ ∘ g^♯, matching χ(gh) = h^♯(χ(g))·χ(h).

mod cocycle;

pub use cocycle::{
    base_pair_representatives, generator_pairs, inverse_mod, v_branch, v_multiplier, verify_chi_power,
    verify_cocycle, verify_v_transform, Cocycle, CocycleFailure, CocycleReport,
    ChiPowerReport, VBranch, VTransformReport,
};

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kummer::{KummerElem, MAX_ROOTS};
use crate::ratfunc::{Poly, RatFunc, Var, NVARS};
use crate::CycloNum;

/// Elements of the symmetric group on the sections {0, 1, 1/λ}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum S3Elem {
    Id,
    /// (0 1): λ ↦ λ/(λ−1), z ↦ 1−z
    T01,
    /// (0 1/λ): λ ↦ 1−λ, z ↦ (1−λz)/(1−λ)
    T0L,
    /// (1 1/λ): λ ↦ 1/λ, z ↦ λz
    T1L,
    /// (0 1 1/λ): λ ↦ 1/(1−λ), z ↦ 1−λz
    C01L,
    /// (0 1/λ 1): λ ↦ (λ−1)/λ, z ↦ λ(1−z)/(λ−1)
    C0L1,
}

impl S3Elem {
    pub const ALL: [S3Elem; 6] = [
        S3Elem::Id,
        S3Elem::T01,
        S3Elem::T0L,
        S3Elem::T1L,
        S3Elem::C01L,
        S3Elem::C0L1,
    ];

    pub fn label(self) -> &'static str {
        match self {
            S3Elem::Id => "id",
            S3Elem::T01 => "(0 1)",
            S3Elem::T0L => "(0 1/l)",
            S3Elem::T1L => "(1 1/l)",
            S3Elem::C01L => "(0 1 1/l)",
            S3Elem::C0L1 => "(0 1/l 1)",
        }
    }

    /// λ ↦ (aλ + b)/(cλ + d) as [[a, b], [c, d]].
    pub fn mobius(self) -> [[i64; 2]; 2] {
        match self {
            S3Elem::Id => [[1, 0], [0, 1]],
            S3Elem::T01 => [[1, 0], [1, -1]],
            S3Elem::T0L => [[-1, 1], [0, 1]],
            S3Elem::T1L => [[0, 1], [1, 0]],
            S3Elem::C01L => [[0, 1], [-1, 1]],
            S3Elem::C0L1 => [[1, -1], [1, 0]],
        }
    }

    fn from_mobius(m: [[i64; 2]; 2]) -> S3Elem {
        let neg = [[-m[0][0], -m[0][1]], [-m[1][0], -m[1][1]]];
        *S3Elem::ALL
            .iter()
            .find(|g| g.mobius() == m || g.mobius() == neg)
            .expect("S3 is closed under composition")
    }

    /// g∘h as maps on λ (the base of the product gh).
    pub fn compose(self, h: S3Elem) -> S3Elem {
        let a = self.mobius();
        let b = h.mobius();
        let mut c = [[0i64; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        S3Elem::from_mobius(c)
    }

    pub fn inverse(self) -> S3Elem {
        *S3Elem::ALL
            .iter()
            .find(|h| self.compose(**h) == S3Elem::Id)
            .unwrap()
    }

    /// Sign of the permutation: −1 on transpositions.
    pub fn sign(self) -> i64 {
        match self {
            S3Elem::T01 | S3Elem::T0L | S3Elem::T1L => -1,
            _ => 1,
        }
    }

    /// g^♯(λ) for λ = `lam`.
    pub fn lambda_image(self, order: u32, lam: Var) -> RatFunc {
        let m = self.mobius();
        let lin = |p: i64, q: i64| Poly::linear(order, lam, q, p);
        RatFunc::new(lin(m[0][0], m[0][1]), lin(m[1][0], m[1][1])).expect("Mobius denominator")
    }

    /// g^♯(z) for the fibre coordinate `z` over the λ-line `lam`.
    pub fn coord_image(self, order: u32, lam: Var, z: Var) -> RatFunc {
        let one = RatFunc::one(order);
        let l = RatFunc::var(order, lam);
        let x = RatFunc::var(order, z);
        let lx = &l * &x;
        match self {
            S3Elem::Id => x,
            S3Elem::T01 => &one - &x,
            S3Elem::T0L => (&one - &lx).checked_div(&(&one - &l)).unwrap(),
            S3Elem::T1L => lx,
            S3Elem::C01L => &one - &lx,
            S3Elem::C0L1 => (&l * &(&one - &x)).checked_div(&(&l - &one)).unwrap(),
        }
    }

    /// Canonical lift: g^♯(u) = ζ_{2N}^{c₀}·u^{M₀₀}v^{M₀₁}, g^♯(v) = ζ_{2N}^{c₁}·u^{M₁₀}v^{M₁₁}.
    pub fn canonical_lift(self) -> ([[i64; 2]; 2], [i64; 2]) {
        match self {
            S3Elem::Id => ([[1, 0], [0, 1]], [0, 0]),
            S3Elem::T01 => ([[1, -1], [0, -1]], [1, 0]),
            S3Elem::T0L => ([[0, 1], [1, 0]], [0, 0]),
            S3Elem::T1L => ([[-1, 0], [-1, 1]], [0, 1]),
            S3Elem::C01L => ([[0, -1], [1, -1]], [0, 1]),
            S3Elem::C0L1 => ([[-1, 1], [-1, 0]], [1, 0]),
        }
    }

    fn from_root_matrix(m: [[i64; 2]; 2]) -> S3Elem {
        *S3Elem::ALL
            .iter()
            .find(|g| g.canonical_lift().0 == m)
            .expect("root matrix of a lift")
    }
}

impl fmt::Display for S3Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A lift of an S₃ element to Aut(Q(λ)[u, v]/(u^N − λ, v^N − (1−λ))): the
/// canonical lift followed by a twist (i, j) ∈ (2Z/2N)², i.e.
/// u ↦ ζ_{2N}^i·(canonical image of u), v ↦ ζ_{2N}^j·(canonical image of v).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LiftedAut {
    pub n: u32,
    pub base: S3Elem,
    pub twist: (u32, u32),
}

fn modn(x: i64, m: u32) -> u32 {
    x.rem_euclid(m as i64) as u32
}

impl LiftedAut {
    pub fn new(n: u32, base: S3Elem, ti: u32, tj: u32) -> Result<Self> {
        let m = 2 * n;
        if ti % 2 != 0 || tj % 2 != 0 {
            return Err(Error::Other(format!(
                "twist ({ti}, {tj}) is not a pair of N-th roots of unity; only even powers of zeta_2N preserve u^N = lambda"
            )));
        }
        Ok(LiftedAut {
            n,
            base,
            twist: (ti % m, tj % m),
        })
    }

    pub fn canonical(n: u32, base: S3Elem) -> Self {
        LiftedAut { n, base, twist: (0, 0) }
    }

    pub fn identity(n: u32) -> Self {
        Self::canonical(n, S3Elem::Id)
    }

    /// Kernel element (ζ_N^i, ζ_N^j): u ↦ ζ_N^i u, v ↦ ζ_N^j v.
    pub fn kernel(n: u32, i: i64, j: i64) -> Self {
        LiftedAut {
            n,
            base: S3Elem::Id,
            twist: (modn(2 * i, 2 * n), modn(2 * j, 2 * n)),
        }
    }

    pub fn root_matrix(&self) -> [[i64; 2]; 2] {
        self.base.canonical_lift().0
    }

    /// Full ζ_{2N}-exponents of the images of u and v.
    pub fn consts(&self) -> [i64; 2] {
        let c = self.base.canonical_lift().1;
        [
            (c[0] + self.twist.0 as i64).rem_euclid(2 * self.n as i64),
            (c[1] + self.twist.1 as i64).rem_euclid(2 * self.n as i64),
        ]
    }

    fn from_data(n: u32, m: [[i64; 2]; 2], c: [i64; 2]) -> Self {
        let base = S3Elem::from_root_matrix(m);
        let can = base.canonical_lift().1;
        let ti = modn(c[0] - can[0], 2 * n);
        let tj = modn(c[1] - can[1], 2 * n);
        debug_assert!(ti % 2 == 0 && tj % 2 == 0, "lift twists are even");
        LiftedAut { n, base, twist: (ti, tj) }
    }

    /// gh with (gh)^♯ = h^♯ ∘ g^♯.
    pub fn compose(&self, h: &LiftedAut) -> LiftedAut {
        let mg = self.root_matrix();
        let mh = h.root_matrix();
        let cg = self.consts();
        let ch = h.consts();
        let mut m = [[0i64; 2]; 2];
        let mut c = [0i64; 2];
        for r in 0..2 {
            for s in 0..2 {
                m[r][s] = mg[r][0] * mh[0][s] + mg[r][1] * mh[1][s];
            }
            c[r] = cg[r] + mg[r][0] * ch[0] + mg[r][1] * ch[1];
        }
        let out = LiftedAut::from_data(self.n, m, c);
        debug_assert_eq!(out.base, self.base.compose(h.base));
        out
    }

    pub fn inverse(&self) -> LiftedAut {
        let binv = self.base.inverse();
        // g·(can(binv)·k) = id for a unique kernel k; find it directly
        let can = LiftedAut::canonical(self.n, binv);
        let prod = self.compose(&can);
        // prod = kernel element with twist t; its inverse is −t
        let k = LiftedAut {
            n: self.n,
            base: S3Elem::Id,
            twist: (
                modn(-(prod.twist.0 as i64), 2 * self.n),
                modn(-(prod.twist.1 as i64), 2 * self.n),
            ),
        };
        let inv = can.compose(&k);
        debug_assert!(self.compose(&inv).is_identity());
        inv
    }

    pub fn is_identity(&self) -> bool {
        self.base == S3Elem::Id && self.twist == (0, 0)
    }

    pub fn sign(&self) -> i64 {
        self.base.sign()
    }
}

impl fmt::Display for LiftedAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.base, self.twist.0, self.twist.1)
    }
}

/// (ρ₁, ρ₂, ζ_{2N}^e) with ζ^N = sgn(ρ̲₁)^{N−A}·sgn(ρ̲₂)^A.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TildeG2Elem {
    pub n: u32,
    pub a: u32,
    pub rho1: LiftedAut,
    pub rho2: LiftedAut,
    pub zeta: u32,
}

impl TildeG2Elem {
    fn required_parity(n: u32, a: u32, rho1: &LiftedAut, rho2: &LiftedAut) -> u32 {
        let s = rho1.sign().pow(n - a) * rho2.sign().pow(a);
        if s == 1 {
            0
        } else {
            1
        }
    }

    pub fn new(n: u32, a: u32, rho1: LiftedAut, rho2: LiftedAut, zeta: u32) -> Result<Self> {
        let zeta = zeta % (2 * n);
        // ζ_{2N}^{eN} = (−1)^e
        if zeta % 2 != Self::required_parity(n, a, &rho1, &rho2) {
            return Err(Error::Other(format!(
                "zeta_2N^{zeta} violates the sign constraint for ({rho1}, {rho2})"
            )));
        }
        Ok(TildeG2Elem { n, a, rho1, rho2, zeta })
    }

    /// The minimal ζ-exponent satisfying the sign constraint.
    pub fn canonical(n: u32, a: u32, rho1: LiftedAut, rho2: LiftedAut) -> Self {
        let zeta = Self::required_parity(n, a, &rho1, &rho2);
        TildeG2Elem { n, a, rho1, rho2, zeta }
    }

    pub fn from_bases(n: u32, a: u32, b1: S3Elem, b2: S3Elem) -> Self {
        Self::canonical(n, a, LiftedAut::canonical(n, b1), LiftedAut::canonical(n, b2))
    }

    pub fn identity(n: u32, a: u32) -> Self {
        Self::from_bases(n, a, S3Elem::Id, S3Elem::Id)
    }

    /// (ρ₁ with kernel twist (i, j) on the λ₁-roots, id, 1).
    pub fn kernel1(n: u32, a: u32, i: i64, j: i64) -> Self {
        Self::canonical(n, a, LiftedAut::kernel(n, i, j), LiftedAut::identity(n))
    }

    /// (τ, τ, −1) with τ: u ↔ v.
    pub fn tau(n: u32, a: u32) -> Self {
        let t = LiftedAut::canonical(n, S3Elem::T0L);
        Self::new(n, a, t, t, n).expect("(tau, tau, -1) satisfies the sign constraint")
    }

    /// (τ′, τ′, −1) with τ′: u ↦ 1/u, v ↦ ζ_{2N}·v/u.
    pub fn tau_prime(n: u32, a: u32) -> Self {
        let t = LiftedAut::canonical(n, S3Elem::T1L);
        Self::new(n, a, t, t, n).expect("(tau', tau', -1) satisfies the sign constraint")
    }

    /// Generators: kernel twists on both sides, the canonical lifts of the
    /// two transpositions (0 1), (0 1/λ) on each side, and the central ζ_N.
    pub fn generators(n: u32, a: u32) -> Vec<Self> {
        let id = LiftedAut::identity(n);
        let mut g = vec![
            Self::canonical(n, a, LiftedAut::kernel(n, 1, 0), id),
            Self::canonical(n, a, LiftedAut::kernel(n, 0, 1), id),
            Self::canonical(n, a, id, LiftedAut::kernel(n, 1, 0)),
            Self::canonical(n, a, id, LiftedAut::kernel(n, 0, 1)),
            Self::new(n, a, id, id, 2).unwrap(),
        ];
        for b in [S3Elem::T01, S3Elem::T0L] {
            g.push(Self::canonical(n, a, LiftedAut::canonical(n, b), id));
            g.push(Self::canonical(n, a, id, LiftedAut::canonical(n, b)));
        }
        g
    }

    pub fn random<R: Rng>(n: u32, a: u32, rng: &mut R) -> Self {
        let side = |rng: &mut R| {
            let b = S3Elem::ALL[rng.gen_range(0..6)];
            LiftedAut::new(n, b, 2 * rng.gen_range(0..n), 2 * rng.gen_range(0..n)).unwrap()
        };
        let r1 = side(rng);
        let r2 = side(rng);
        let p = Self::required_parity(n, a, &r1, &r2);
        let e = 2 * rng.gen_range(0..n) + p;
        Self::new(n, a, r1, r2, e).unwrap()
    }

    pub fn compose(&self, h: &TildeG2Elem) -> TildeG2Elem {
        TildeG2Elem {
            n: self.n,
            a: self.a,
            rho1: self.rho1.compose(&h.rho1),
            rho2: self.rho2.compose(&h.rho2),
            zeta: (self.zeta + h.zeta) % (2 * self.n),
        }
    }

    pub fn inverse(&self) -> TildeG2Elem {
        TildeG2Elem {
            n: self.n,
            a: self.a,
            rho1: self.rho1.inverse(),
            rho2: self.rho2.inverse(),
            zeta: (2 * self.n - self.zeta) % (2 * self.n),
        }
    }

    pub fn pow(&self, k: u32) -> TildeG2Elem {
        let mut acc = Self::identity(self.n, self.a);
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rho1.is_identity() && self.rho2.is_identity() && self.zeta == 0
    }

    pub fn order(&self) -> u32 {
        2 * self.n
    }

    /// The ζ-component as a field element.
    pub fn zeta_value(&self) -> CycloNum {
        CycloNum::zeta(self.order(), self.zeta as i64)
    }

    /// Images of (λ₁, λ₂, x, y) under g^♯.
    pub fn var_images(&self) -> [Option<RatFunc>; NVARS] {
        let o = self.order();
        [
            Some(self.rho1.base.lambda_image(o, Var::L1)),
            Some(self.rho2.base.lambda_image(o, Var::L2)),
            Some(self.rho1.base.coord_image(o, Var::L1, Var::X)),
            Some(self.rho2.base.coord_image(o, Var::L2, Var::Y)),
        ]
    }

    /// g^♯ of each root u₁, v₁, u₂, v₂ as (ζ_{2N}-exponent, Laurent exponents).
    fn root_images(&self) -> [(i64, [i64; MAX_ROOTS]); 4] {
        let mut out = [(0i64, [0i64; MAX_ROOTS]); 4];
        for (side, rho) in [(0usize, &self.rho1), (1usize, &self.rho2)] {
            let m = rho.root_matrix();
            let c = rho.consts();
            for r in 0..2 {
                let mut e = [0i64; MAX_ROOTS];
                e[2 * side] = m[r][0];
                e[2 * side + 1] = m[r][1];
                out[2 * side + r] = (c[r], e);
            }
        }
        out
    }

    /// The algebra automorphism g^♯ applied to `e`.
    pub fn substitute(&self, e: &KummerElem) -> Result<KummerElem> {
        if e.n() != self.n || e.a() != self.a {
            return Err(Error::ParamMismatch(self.n, self.a, e.n(), e.a()));
        }
        let imgs = self.var_images();
        let roots = self.root_images();
        let o = self.order();
        let mut out = KummerElem::zero(self.n, self.a);
        for (ex, c) in e.terms() {
            let mut exps = [0i64; MAX_ROOTS];
            let mut z = 0i64;
            for (i, &k) in ex.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let (zc, ee) = roots[i];
                z += zc * k as i64;
                for j in 0..MAX_ROOTS {
                    exps[j] += ee[j] * k as i64;
                }
            }
            let coef = c.substitute(&imgs)?.scale(&CycloNum::zeta(o, z));
            out = &out + &KummerElem::monomial(self.n, self.a, coef, &exps);
        }
        Ok(out)
    }

    /// g^♯ on a plain rational function.
    pub fn substitute_ratfunc(&self, f: &RatFunc) -> Result<RatFunc> {
        f.substitute(&self.var_images())
    }
}

impl fmt::Display for TildeG2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, z^{})", self.rho1, self.rho2, self.zeta)
    }
}
