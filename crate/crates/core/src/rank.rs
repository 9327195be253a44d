//! 𝒟-images of the normal functions of ξ₀^{(i)}, ξ₁^{(i)}, their transport
//! Θ_g under G̃², and exact rank certificates over Q(ζ_N).
//!
//! A function Σ_e c_e(λ)·r^e in Kummer normal form becomes a row vector after
//! multiplying by a common denominator: the columns are the monomials
//! u₁^{a₁}v₁^{b₁}u₂^{a₂}v₂^{b₂} (bᵢ < N, λᵢ = uᵢ^N) of the quotient ring
//! Q(ζ_{2N})[u, v]/(u^N + v^N − 1), and for even N each Q(ζ_{2N}) entry is
//! split as c₀ + ζ_{2N}c₁ over Q(ζ_N).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Sub};

use rayon::prelude::*;
use rug::Rational;
use serde::Serialize;

use crate::cycles::CycleKind;
use crate::error::{Error, Result};
use crate::exact_field::{euler_phi, CycloNum};
use crate::group::{Cocycle, LiftedAut, S3Elem, TildeG2Elem};
use crate::kummer::KummerElem;
use crate::params::{require_rank_hypothesis, validate_na};
use crate::ratfunc::{gcd, Poly, RatFunc, Var};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DImageVector {
    pub first: KummerElem,
    pub second: KummerElem,
}

impl DImageVector {
    pub fn new(first: KummerElem, second: KummerElem) -> Self {
        DImageVector { first, second }
    }

    pub fn scale(&self, c: &KummerElem) -> Self {
        DImageVector::new(&self.first * c, &self.second * c)
    }

    pub fn is_zero(&self) -> bool {
        self.first.is_zero() && self.second.is_zero()
    }
}

impl Add for &DImageVector {
    type Output = DImageVector;
    fn add(self, o: &DImageVector) -> DImageVector {
        DImageVector::new(&self.first + &o.first, &self.second + &o.second)
    }
}

impl Sub for &DImageVector {
    type Output = DImageVector;
    fn sub(self, o: &DImageVector) -> DImageVector {
        DImageVector::new(&self.first - &o.first, &self.second - &o.second)
    }
}

impl fmt::Display for DImageVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// ζ_N^k as a Kummer element.
fn zeta_n(n: u32, a: u32, k: i64) -> KummerElem {
    KummerElem::zeta(n, a, 2 * k.rem_euclid(n as i64))
}

fn root_monomial(n: u32, a: u32, exps: &[i64]) -> KummerElem {
    KummerElem::monomial(n, a, RatFunc::one(2 * n), exps)
}

/// (1 − ζ_N^A)/(λ₁ − λ₂).
pub fn prefactor(n: u32, a: u32) -> KummerElem {
    let o = 2 * n;
    let c = CycloNum::one(o).checked_sub(&CycloNum::zeta(o, 2 * a as i64)).expect("same order");
    let d = &RatFunc::var(o, Var::L1) - &RatFunc::var(o, Var::L2);
    let f = RatFunc::constant(c).checked_div(&d).expect("lambda1 - lambda2 is nonzero");
    KummerElem::from_ratfunc(n, a, f)
}

/// The right-hand side of the inhomogeneous Picard–Fuchs system for ξ₁ − ξ₀,
/// with the (1 − ζ^A) normalisation: c·(Y^A − 1, 1 − v₁^{N−A}/v₂^{N−A}),
/// Y = v₂/v₁. The second component is taken as printed.
pub fn base_vector(n: u32, a: u32) -> DImageVector {
    let (ni, ai) = (n as i64, a as i64);
    let c = prefactor(n, a);
    let one = KummerElem::one(n, a);
    let ya = root_monomial(n, a, &[0, -ai, 0, ai]);
    let w = root_monomial(n, a, &[0, ni - ai, 0, ai - ni]);
    DImageVector::new(&ya - &one, &one - &w).scale(&c)
}

/// The closed-form images: c·ζ^{Ai}·(1, −1) for ξ₀^{(i)} and
/// c·ζ^{Ai}·(v₂^A/v₁^A, −v₁^{N−A}/v₂^{N−A}) for ξ₁^{(i)}.
pub fn direct_image(kind: CycleKind, i: u32, n: u32, a: u32) -> DImageVector {
    let (ni, ai) = (n as i64, a as i64);
    let c = &prefactor(n, a) * &zeta_n(n, a, ai * i as i64);
    let v = match kind {
        CycleKind::Xi0 => DImageVector::new(KummerElem::one(n, a), KummerElem::from_int(n, a, -1)),
        CycleKind::Xi1 => DImageVector::new(
            root_monomial(n, a, &[0, -ai, 0, ai]),
            -root_monomial(n, a, &[0, ni - ai, 0, ai - ni]),
        ),
    };
    v.scale(&c)
}

/// Θ_g(φ₁, φ₂) = (χ(g)⁻¹δ₁(g)⁻¹g^♯φ₁, χ(g)⁻¹δ₂(g)⁻¹g^♯φ₂).
pub fn theta_transport(g: &TildeG2Elem, v: &DImageVector) -> Result<DImageVector> {
    let chi_inv = Cocycle::Chi.value(g)?.inv()?;
    let d1 = Cocycle::Delta1.value(g)?.inv()?;
    let d2 = Cocycle::Delta2.value(g)?.inv()?;
    Ok(DImageVector::new(
        &(&chi_inv * &d1) * &g.substitute(&v.first)?,
        &(&chi_inv * &d2) * &g.substitute(&v.second)?,
    ))
}

/// ρ = (ρ₁, id, 1) with ρ₁: v₁ ↦ ζ_N v₁, u₁ ↦ u₁.
pub fn kernel_rho(n: u32, a: u32) -> TildeG2Elem {
    TildeG2Elem::kernel1(n, a, 0, 1)
}

#[derive(Clone, Debug)]
pub struct GeneratorImages {
    pub xi0: Vec<DImageVector>,
    pub xi1: Vec<DImageVector>,
    /// the telescoping derivation reproduces the closed forms exactly
    pub routes_agree: bool,
    pub sum_xi0_zero: bool,
    pub difference_is_base: bool,
}

impl GeneratorImages {
    pub fn passed(&self) -> bool {
        self.routes_agree && self.sum_xi0_zero && self.difference_is_base
    }
}

/// The 2N images, by the closed forms and independently from the base vector:
/// 𝒟ξ₁^{(0)} = (1/N)Σᵢ Θ_{ρ^i}(B), 𝒟ξ₀^{(i)} = 𝒟ξ₁^{(0)} − Θ_{ρ^i}(B),
/// 𝒟ξ₁^{(i)} = 𝒟ξ₀^{(i)} + ζ^{Ai}B.
pub fn generator_images(n: u32, a: u32) -> Result<GeneratorImages> {
    validate_na(n, a)?;
    let xi0: Vec<_> = (0..n).map(|i| direct_image(CycleKind::Xi0, i, n, a)).collect();
    let xi1: Vec<_> = (0..n).map(|i| direct_image(CycleKind::Xi1, i, n, a)).collect();

    let b = base_vector(n, a);
    let rho = kernel_rho(n, a);
    let moved: Vec<DImageVector> = (0..n)
        .into_par_iter()
        .map(|i| theta_transport(&rho.pow(i), &b))
        .collect::<Result<_>>()?;
    let zero = DImageVector::new(KummerElem::zero(n, a), KummerElem::zero(n, a));
    let total = moved.iter().fold(zero.clone(), |acc, m| &acc + m);
    let inv_n = KummerElem::from_ratfunc(n, a, RatFunc::from_rational(2 * n, &Rational::from((1, n))));
    let d1 = total.scale(&inv_n);
    let mut routes_agree = d1 == xi1[0];
    for i in 0..n as usize {
        let d0i = &d1 - &moved[i];
        let d1i = &d0i + &b.scale(&zeta_n(n, a, a as i64 * i as i64));
        routes_agree &= d0i == xi0[i] && d1i == xi1[i];
    }
    let sum_xi0_zero = xi0.iter().fold(zero, |acc, v| &acc + v).is_zero();
    let difference_is_base = &xi1[0] - &xi0[0] == b;
    Ok(GeneratorImages {
        xi0,
        xi1,
        routes_agree,
        sum_xi0_zero,
        difference_is_base,
    })
}

// ---------------------------------------------------------------------------
// exact linear algebra over Q(ζ_N)

type SparseRow = BTreeMap<usize, CycloNum>;

/// Incremental row echelon form over a cyclotomic field.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: Vec<(usize, SparseRow)>,
}

impl Echelon {
    /// Reduce `row` against the stored pivots; keep it if independent.
    pub fn insert(&mut self, mut row: SparseRow) -> Result<bool> {
        for (p, prow) in &self.pivots {
            let Some(c) = row.get(p).cloned() else { continue };
            for (j, x) in prow {
                let cur = row.remove(j);
                let t = c.checked_mul(x)?;
                let v = match cur {
                    Some(y) => y.checked_sub(&t)?,
                    None => t.scale_int(-1),
                };
                if !v.is_zero() {
                    row.insert(*j, v);
                }
            }
        }
        let Some((&p, lead)) = row.iter().next() else {
            return Ok(false);
        };
        let inv = lead.inv()?;
        let row = row
            .into_iter()
            .map(|(j, x)| Ok((j, x.checked_mul(&inv)?)))
            .collect::<Result<SparseRow>>()?;
        self.pivots.push((p, row));
        Ok(true)
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Rank and the indices of an independent subset, in input order.
pub fn matrix_rank(rows: Vec<SparseRow>) -> Result<(usize, Vec<usize>)> {
    let mut e = Echelon::default();
    let mut kept = Vec::new();
    for (i, r) in rows.into_iter().enumerate() {
        if e.insert(r)? {
            kept.push(i);
        }
    }
    Ok((e.rank(), kept))
}

/// c ∈ Q(ζ_{2N}) as (c₀, c₁) ∈ Q(ζ_N)² with c = c₀ + ζ_{2N}c₁; c₁ = 0 for odd N.
pub fn split_coeff(c: &CycloNum, n: u32) -> Result<[CycloNum; 2]> {
    let mut parts = [CycloNum::zero(n), CycloNum::zero(n)];
    for (k, q) in c.coeffs().iter().enumerate() {
        if *q == 0 {
            continue;
        }
        let k = k as i64;
        let (slot, e, sign) = if k % 2 == 0 {
            (0, k / 2, 1)
        } else if n % 2 == 1 {
            // ζ_{2N}^k = −ζ_{2N}^{k+N} and k + N is even
            (0, (k + n as i64) / 2, -1)
        } else {
            (1, (k - 1) / 2, 1)
        };
        let t = CycloNum::zeta(n, e).scale_rational(&Rational::from(q * sign));
        parts[slot] = parts[slot].checked_add(&t)?;
    }
    Ok(parts)
}

fn lcm(a: &Poly, b: &Poly) -> Poly {
    let g = gcd(a, b);
    (a * b).div_exact(&g).expect("gcd divides the product")
}

/// Column key: exponents of (u₁, v₁, u₂, v₂) and the Q(ζ_N)-part.
type ColKey = ([u32; 4], u8);

#[derive(Clone, Debug)]
pub struct FunctionRank {
    pub rank: usize,
    pub independent: Vec<usize>,
    pub columns: usize,
    pub common_denominator: Poly,
}

/// Rank over Q(ζ_N) of Kummer functions, after clearing one common denominator.
pub fn function_rank(n: u32, fs: &[KummerElem]) -> Result<FunctionRank> {
    let o = 2 * n;
    let mut l = Poly::one(o);
    for f in fs {
        for (_, c) in f.terms() {
            if !c.den().is_one() {
                l = lcm(&l, c.den());
            }
        }
    }
    // rows with provisional column keys, assembled in parallel
    let keyed: Vec<Vec<(ColKey, CycloNum)>> = fs
        .par_iter()
        .map(|f| -> Result<Vec<(ColKey, CycloNum)>> {
            let mut out = Vec::new();
            for (e, c) in f.terms() {
                let q = l.div_exact(c.den()).ok_or_else(|| Error::Other("common denominator".into()))?;
                let p = c.num() * &q;
                for (m, x) in p.terms() {
                    let key = [
                        n * m.exp(Var::L1) as u32 + e[0] as u32,
                        e[1] as u32,
                        n * m.exp(Var::L2) as u32 + e[2] as u32,
                        e[3] as u32,
                    ];
                    if m.exp(Var::X) != 0 || m.exp(Var::Y) != 0 {
                        return Err(Error::Other("coordinate variable in a lambda function".into()));
                    }
                    let parts = split_coeff(x, n)?;
                    for (s, part) in parts.into_iter().enumerate() {
                        if !part.is_zero() {
                            out.push(((key, s as u8), part));
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut cols: HashMap<ColKey, usize> = HashMap::new();
    let mut rows = Vec::with_capacity(keyed.len());
    for r in keyed {
        let mut row = SparseRow::new();
        for (k, x) in r {
            let next = cols.len();
            let j = *cols.entry(k).or_insert(next);
            row.insert(j, x);
        }
        rows.push(row);
    }
    let (rank, independent) = matrix_rank(rows)?;
    Ok(FunctionRank {
        rank,
        independent,
        columns: cols.len(),
        common_denominator: l,
    })
}

// ---------------------------------------------------------------------------
// the pole-locus reduction

/// Exponents (p, q) of 1, Y^A, X^{N−2A}Y^{2A−N}, X^{N−A}Y^{2A−N}, X^{N−A}, X^{N−2A}Y^A.
pub fn polelemma_exponents(n: u32, a: u32) -> [(i64, i64); 6] {
    let (n, a) = (n as i64, a as i64);
    [
        (0, 0),
        (0, a),
        (n - 2 * a, 2 * a - n),
        (n - a, 2 * a - n),
        (n - a, 0),
        (n - 2 * a, a),
    ]
}

/// Rank of the N² × k matrix (ζ^{pi + qj}) for the chosen monomials.
pub fn polelemma_rank_of(n: u32, exps: &[(i64, i64)]) -> Result<usize> {
    // columns are the monomials, rows the points; rank is symmetric, so eliminate
    // the k monomials as rows over the N² points
    let rows = exps
        .iter()
        .map(|&(p, q)| {
            let mut r = SparseRow::new();
            for i in 0..n as i64 {
                for j in 0..n as i64 {
                    r.insert((i * n as i64 + j) as usize, CycloNum::zeta(n, p * i + q * j));
                }
            }
            r
        })
        .collect();
    Ok(matrix_rank(rows)?.0)
}

pub fn polelemma(n: u32, a: u32) -> Result<usize> {
    validate_na(n, a)?;
    polelemma_rank_of(n, &polelemma_exponents(n, a))
}

// ---------------------------------------------------------------------------
// span certificates

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorRecord {
    /// the first component of Θ_element(𝒟ξ_base^{(0)})
    pub element: TildeG2Elem,
    pub base: CycleKind,
    pub label: String,
    pub function: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanCertificate {
    pub n: u32,
    pub a: u32,
    pub kind: &'static str,
    pub generators: Vec<GeneratorRecord>,
    /// rank over Q(ζ_N)
    pub rank: usize,
    pub phi: u32,
    /// φ(N)·rank; a lower bound for the full span
    pub dim_q: u32,
    pub independent: Vec<usize>,
    pub columns: usize,
    pub common_denominator: String,
}

impl SpanCertificate {
    /// Rebuild every generator from its stored provenance and recompute the rank.
    pub fn recheck(&self) -> Result<bool> {
        let fs = self
            .generators
            .iter()
            .map(|g| generator_function(&g.element, g.base))
            .collect::<Result<Vec<_>>>()?;
        let r = function_rank(self.n, &fs)?;
        Ok(r.rank == self.rank && r.independent == self.independent && self.rank <= self.generators.len())
    }
}

pub fn generator_function(g: &TildeG2Elem, base: CycleKind) -> Result<KummerElem> {
    Ok(theta_transport(g, &direct_image(base, 0, g.n, g.a))?.first)
}

/// id, ρ = (τ, τ, −1), ρ′ = (τ′, τ′, −1): representatives of Δ/I.
pub fn delta_representatives(n: u32, a: u32) -> Vec<(String, TildeG2Elem)> {
    vec![
        ("id".to_string(), TildeG2Elem::identity(n, a)),
        ("(tau,tau,-1)".to_string(), TildeG2Elem::tau(n, a)),
        ("(tau',tau',-1)".to_string(), TildeG2Elem::tau_prime(n, a)),
    ]
}

/// (id, σ) for the six σ ∈ S₃, canonically lifted.
pub fn full_representatives(n: u32, a: u32) -> Vec<(String, TildeG2Elem)> {
    S3Elem::ALL
        .iter()
        .map(|&s| {
            let g = TildeG2Elem::canonical(n, a, LiftedAut::identity(n), LiftedAut::canonical(n, s));
            (format!("(id,{})", s.label()), g)
        })
        .collect()
}

fn kind_label(k: CycleKind) -> &'static str {
    match k {
        CycleKind::Xi0 => "xi0",
        CycleKind::Xi1 => "xi1",
    }
}

fn certify(n: u32, a: u32, kind: &'static str, elems: Vec<(String, TildeG2Elem)>) -> Result<SpanCertificate> {
    let specs: Vec<(String, TildeG2Elem, CycleKind)> = elems
        .into_iter()
        .flat_map(|(l, g)| [CycleKind::Xi0, CycleKind::Xi1].map(|k| (format!("{l}*{}", kind_label(k)), g, k)))
        .collect();
    let fs = specs
        .par_iter()
        .map(|(_, g, k)| generator_function(g, *k))
        .collect::<Result<Vec<_>>>()?;
    let r = function_rank(n, &fs)?;
    let phi = euler_phi(n);
    let generators = specs
        .into_iter()
        .zip(&fs)
        .map(|((label, element, base), f)| GeneratorRecord {
            element,
            base,
            label,
            function: f.to_string(),
        })
        .collect();
    Ok(SpanCertificate {
        n,
        a,
        kind,
        generators,
        rank: r.rank,
        phi,
        dim_q: phi * r.rank as u32,
        independent: r.independent,
        columns: r.columns,
        common_denominator: r.common_denominator.to_string(),
    })
}

/// The six 𝒟_{λ1}-images spanning Ξ_Δ; expected rank 6 for N ≠ 2.
pub fn rank_delta(n: u32, a: u32) -> Result<SpanCertificate> {
    validate_na(n, a)?;
    require_rank_hypothesis(n)?;
    rank_delta_unchecked(n, a)
}

/// `rank_delta` without the N ≠ 2 hypothesis, for inspecting the degenerate case.
pub fn rank_delta_unchecked(n: u32, a: u32) -> Result<SpanCertificate> {
    certify(n, a, "delta", delta_representatives(n, a))
}

/// The 36 functions Θ_{g·(id,σ)}: g over Δ/I, σ over S₃; expected rank 36.
pub fn rank_full(n: u32, a: u32) -> Result<SpanCertificate> {
    validate_na(n, a)?;
    require_rank_hypothesis(n)?;
    let mut elems = Vec::new();
    for (lg, g) in delta_representatives(n, a) {
        for (lh, h) in full_representatives(n, a) {
            elems.push((format!("{lh}.{lg}"), g.compose(&h)));
        }
    }
    certify(n, a, "full", elems)
}

/// Rank over Q(ζ_N) of the 2N images of Ξ^can (first components); expected 2.
pub fn rank_canonical(n: u32, a: u32) -> Result<usize> {
    let g = generator_images(n, a)?;
    let fs: Vec<KummerElem> = g.xi0.iter().chain(&g.xi1).map(|v| v.first.clone()).collect();
    Ok(function_rank(n, &fs)?.rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn images_two_routes() {
        for (n, a) in [(5, 2), (7, 3), (8, 3), (2, 1)] {
            let g = generator_images(n, a).unwrap();
            assert!(g.passed(), "({n},{a}) {g:?}");
        }
    }

    #[test]
    fn theta_identity_and_composition() {
        let (n, a) = (5, 2);
        let v = direct_image(CycleKind::Xi1, 0, n, a);
        assert_eq!(theta_transport(&TildeG2Elem::identity(n, a), &v).unwrap(), v);
        let g = TildeG2Elem::tau(n, a);
        let h = TildeG2Elem::tau_prime(n, a);
        let lhs = theta_transport(&g.compose(&h), &v).unwrap();
        let rhs = theta_transport(&h, &theta_transport(&g, &v).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_displays() {
        let (n, a) = (5i64, 2i64);
        let (nu, au) = (n as u32, a as u32);
        let c = prefactor(nu, au);
        let x0 = direct_image(CycleKind::Xi0, 0, nu, au);
        // (τ′, τ′, −1): c·λ₁^{(A−N)/N}λ₂^{(N−A)/N}
        let t = theta_transport(&TildeG2Elem::tau_prime(nu, au), &x0).unwrap().first;
        let expect = &c * &root_monomial(nu, au, &[a - n, 0, n - a, 0]);
        assert_eq!(t, expect);
        // (τ, τ, −1): −c·λ₁^{(2A−N)/N}(1−λ₁)^{(N−2A)/N}λ₂^{(N−2A)/N}(1−λ₂)^{(2A−N)/N}, up to a unit
        let t = theta_transport(&TildeG2Elem::tau(nu, au), &x0).unwrap().first;
        let shape = &c * &root_monomial(nu, au, &[2 * a - n, n - 2 * a, n - 2 * a, 2 * a - n]);
        let unit = t.checked_div(&shape).unwrap().as_ratfunc().unwrap().constant_value().unwrap();
        assert!(unit.as_root_of_unity().is_some());
    }

    #[test]
    fn split_roundtrip() {
        for n in [5u32, 8, 6] {
            for k in 0..2 * n as i64 {
                let c = CycloNum::zeta(2 * n, k);
                let [c0, c1] = split_coeff(&c, n).unwrap();
                // embed back
                let lift = |x: &CycloNum| {
                    x.coeffs().iter().enumerate().fold(CycloNum::zero(2 * n), |acc, (j, q)| {
                        acc.checked_add(&CycloNum::zeta(2 * n, 2 * j as i64).scale_rational(q)).unwrap()
                    })
                };
                let back = lift(&c0).checked_add(&lift(&c1).checked_mul(&CycloNum::zeta(2 * n, 1)).unwrap()).unwrap();
                assert_eq!(back, c, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn polelemma_ranks() {
        assert_eq!(polelemma(5, 2).unwrap(), 6);
        assert_eq!(polelemma(7, 3).unwrap(), 6);
        assert_eq!(polelemma_rank_of(5, &[(0, 0)]).unwrap(), 1);
        assert_eq!(polelemma(2, 1).unwrap(), 3);
    }

    #[test]
    fn delta_ranks() {
        for (n, a, dim) in [(5, 2, 24), (7, 3, 36), (8, 3, 24)] {
            let c = rank_delta(n, a).unwrap();
            assert_eq!((c.rank, c.dim_q), (6, dim), "({n},{a})");
            assert!(c.recheck().unwrap());
        }
        assert!(matches!(rank_delta(2, 1), Err(Error::Refused(_))));
        assert_eq!(rank_canonical(5, 2).unwrap(), 2);
    }

    #[test]
    fn full_rank_5_2() {
        let c = rank_full(5, 2).unwrap();
        assert_eq!(c.generators.len(), 36);
        assert_eq!((c.rank, c.dim_q), (36, 144));
    }

    #[test]
    fn degenerate_n2_spans_three() {
        assert_eq!(rank_delta_unchecked(2, 1).unwrap().rank, 3);
        assert!(matches!(rank_full(2, 1), Err(Error::Refused(_))));
    }

    #[test]
    fn full_rank_7_3_and_monotone() {
        let full = rank_full(7, 3).unwrap();
        assert_eq!((full.rank, full.dim_q), (36, 216));
        let delta = rank_delta(7, 3).unwrap();
        assert!(full.rank >= delta.rank && delta.rank >= rank_canonical(7, 3).unwrap());
    }

    #[test]
    fn unit_rescaling_keeps_rank() {
        let (n, a) = (8, 3);
        let c = rank_delta(n, a).unwrap();
        let fs: Vec<KummerElem> = c
            .generators
            .iter()
            .enumerate()
            .map(|(k, g)| {
                let u = zeta_n(n, a, 3 * k as i64 + 1).scale_cyclo(&CycloNum::from_int(2 * n, if k % 2 == 0 { -1 } else { 1 }));
                &generator_function(&g.element, g.base).unwrap() * &u
            })
            .collect();
        assert_eq!(function_rank(n, &fs).unwrap().rank, c.rank);
    }
}
