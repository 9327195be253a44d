//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! The process exits nonzero on any *unexpected* outcome. Criteria listed in
//! `KNOWN_UNATTAINABLE` are still run and reported as FAIL; if one of them
//! starts passing, that is unexpected too.

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::{Float, Rational};

use cyclochow::cycles::verify_closed;
use cyclochow::group::{
    generator_pairs, v_branch, verify_chi_power, verify_cocycle, verify_v_transform, Cocycle, TildeG2Elem, VBranch,
};
use cyclochow::numerics::{homogeneous_residual, onedim_check, onedim_check_at, pf_inhomogeneous_residual, QuadSpec};
use cyclochow::params::valid_pairs;
use cyclochow::pf::{verify_certificate, verify_conjugation};
use cyclochow::rank::{generator_images, polelemma, rank_delta, rank_delta_unchecked, rank_full};
use cyclochow::ratfunc::{RatFunc, Var};
use cyclochow::suite::{conjugation_elements, rescaled_rank, run, v_transform_elements};
use cyclochow::{Command, KummerElem, Result, RunConfig, SurfaceParams};

const TOL_PF: f64 = 1e-8;
const TOL_ONEDIM: f64 = 1e-10;
const TOL_2F1: f64 = 1e-10;
const DIGITS: u32 = 50;
const SEED: u64 = 20241016;
const RANDOM_PAIRS: usize = 200;
const RANDOM_POINTS: usize = 10;
/// 1-D closed form at (N, A, λ₁, λ₂) = (5, 2, 0.9, 0.1), 30-digit mpmath oracle
const ONEDIM_ORACLE: &str = "1.76028085660086505785688576774";

/// The printed λ₂ target of the inhomogeneous system has the wrong sign; no
/// function meets both printed components (see README).
const KNOWN_UNATTAINABLE: &[u32] = &[5];

struct Outcome {
    id: u32,
    pass: bool,
}

fn criterion(id: u32, title: &str, budget: Duration, f: impl FnOnce() -> Result<(bool, String)>) -> Outcome {
    let t = Instant::now();
    let (ok, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let el = t.elapsed();
    let in_budget = el <= budget;
    let pass = ok && in_budget;
    let timing = format!("{:.1}s of {}s", el.as_secs_f64(), budget.as_secs());
    let note = if in_budget { String::new() } else { " [over time budget]".into() };
    println!(
        "{} [{id:>2}] {title} -- {detail} ({timing}){note}",
        if pass { "PASS" } else { "FAIL" }
    );
    Outcome { id, pass }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn spec() -> QuadSpec {
    QuadSpec::new(1e-15, 9, DIGITS).unwrap()
}

fn c1() -> Outcome {
    criterion(1, "cocycle and chi^N = eta identities", secs(4 * 60), || {
        let mut worst = 0.0f64;
        let mut total = 0;
        for (n, a) in [(5, 2), (5, 3), (7, 3), (8, 3)] {
            let t = Instant::now();
            let mut rng = ChaCha8Rng::seed_from_u64(SEED + n as u64 * 100 + a as u64);
            let mut pairs = generator_pairs(n, a);
            for _ in 0..RANDOM_PAIRS {
                pairs.push((TildeG2Elem::random(n, a, &mut rng), TildeG2Elem::random(n, a, &mut rng)));
            }
            for c in Cocycle::ALL {
                let r = verify_cocycle(c, &pairs)?;
                if !r.passed() {
                    return Ok((false, format!("({n},{a}) {}: {} failures", c.name(), r.failures.len())));
                }
            }
            let elems: Vec<TildeG2Elem> = pairs.iter().flat_map(|(g, h)| [*g, *h]).collect();
            for g in &elems {
                let r = verify_chi_power(g)?;
                if !(r.chi_power && r.eta1_relation && r.eta2_relation) {
                    return Ok((false, format!("({n},{a}) chi power fails at {g}")));
                }
            }
            total += pairs.len();
            worst = worst.max(t.elapsed().as_secs_f64());
        }
        Ok((
            worst <= 60.0,
            format!("{total} pairs over 4 parameter sets, 10 cocycles each; slowest set {worst:.1}s (budget 60s)"),
        ))
    })
}

fn c2() -> Outcome {
    criterion(2, "v-transformation, 6 diagonal + 6 mixed lifts", secs(60), || {
        let mut odd = false;
        let mut even = false;
        let mut count = 0;
        for (n, a) in [(5, 2), (7, 4), (5, 3), (7, 3)] {
            match v_branch(n, a)? {
                VBranch::Odd { .. } => odd = true,
                VBranch::Even { .. } => even = true,
            }
            for g in v_transform_elements(n, a) {
                let r = verify_v_transform(&g)?;
                if !r.passed() {
                    return Ok((false, format!("({n},{a}) fails at {}", r.element)));
                }
                count += 1;
            }
        }
        Ok((odd && even, format!("{count} elements exact; odd branch {odd}, even branch {even}")))
    })
}

fn c3() -> Outcome {
    criterion(3, "certificate identity for every valid (N, A), N <= 12", secs(30), || {
        let pairs = valid_pairs(12);
        for &(n, a) in &pairs {
            let r = verify_certificate(n, a)?;
            if !r.passed() {
                return Ok((false, format!("({n},{a}): {r:?}")));
            }
        }
        Ok((true, format!("{} pairs exact, corrupted H rejected in each", pairs.len())))
    })
}

fn c4() -> Outcome {
    criterion(4, "operator conjugation, kernel and diagonal lifts", secs(60), || {
        let mut count = 0;
        for (n, a) in [(5, 2), (7, 3), (8, 3)] {
            for g in conjugation_elements(n, a) {
                for v in [Var::L1, Var::L2] {
                    let r = verify_conjugation(v, &g)?;
                    if !r.holds {
                        return Ok((false, format!("({n},{a}) {} D_{}", r.element, r.var)));
                    }
                    count += 1;
                }
            }
            let tp = TildeG2Elem::tau_prime(n, a);
            for (c, v) in [(Cocycle::Delta1, Var::L1), (Cocycle::Delta2, Var::L2)] {
                if c.value(&tp)? != KummerElem::from_ratfunc(n, a, -RatFunc::var(2 * n, v)) {
                    return Ok((false, format!("({n},{a}) delta(tau') != -lambda")));
                }
            }
        }
        Ok((true, format!("{count} exact conjugations; delta_i(tau') = -lambda_i")))
    })
}

fn c5() -> Outcome {
    criterion(5, "numeric Picard-Fuchs system, 1-D closed form, 2F1 residuals", secs(12 * 120), || {
        let s = spec();
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let mut points = vec![SurfaceParams::base_point(5, 2)?];
        for _ in 0..RANDOM_POINTS {
            points.push(SurfaceParams::random(5, 2, &mut rng)?);
        }
        let (mut r1, mut r2, mut r2c, mut r1d, mut rh, mut slowest) = (0f64, 0f64, 0f64, 0f64, 0f64, 0f64);
        for p in &points {
            let t = Instant::now();
            let r = pf_inhomogeneous_residual(p, &s)?;
            r1 = r1.max(r.residual1);
            r2 = r2.max(r.residual2);
            r2c = r2c.max(r.residual2_sign_corrected);
            r1d = r1d.max(onedim_check(p, &s)?.residual);
            let (l1, l2) = p.lambda_floats(s.bits());
            rh = rh.max(homogeneous_residual(p.n, p.a, &l1, Var::L1, 0, &s)?.residual);
            rh = rh.max(homogeneous_residual(p.n, p.a, &l2, Var::L2, 0, &s)?.residual);
            slowest = slowest.max(t.elapsed().as_secs_f64());
        }
        let oc = onedim_check_at(5, 2, &Rational::from((9, 10)), &Rational::from((1, 10)), &s)?;
        let oracle = Float::with_val(s.bits(), Float::parse(ONEDIM_ORACLE).unwrap()).to_f64();
        let oracle_gap = (oc.target - oracle).abs();
        r1d = r1d.max(oc.residual);
        let others = r1 <= TOL_PF && r2c <= TOL_PF && r1d <= TOL_ONEDIM && rh <= TOL_2F1 && oracle_gap < 1e-14;
        let ok = others && r2 <= TOL_PF && slowest <= 120.0;
        Ok((
            ok,
            format!(
                "{} points: D_l1 max {r1:.1e}; D_l2 vs printed target max {r2:.2e} (sign-corrected {r2c:.1e}); \
                 1-D max {r1d:.1e}; 2F1 max {rh:.1e}; other sub-checks {}; slowest point {slowest:.1}s",
                points.len(),
                if others { "pass" } else { "FAIL" }
            ),
        ))
    })
}

fn c6() -> Outcome {
    criterion(6, "divisor closedness, kernel transport, corrupted family", secs(120), || {
        let pairs = valid_pairs(12);
        let mut fams = 0;
        for &(n, a) in &pairs {
            let r = verify_closed(n, a)?;
            if !r.passed() {
                return Ok((false, format!("({n},{a}): {r:?}")));
            }
            fams += r.checked;
        }
        Ok((true, format!("{fams} families over {} pairs closed exactly", pairs.len())))
    })
}

fn c7() -> Outcome {
    criterion(7, "normal-function images: two routes agree, xi0 sum is 0", secs(120), || {
        let pairs = valid_pairs(12);
        for &(n, a) in &pairs {
            let g = generator_images(n, a)?;
            if !g.passed() {
                return Ok((false, format!("({n},{a}) routes {} sum {}", g.routes_agree, g.sum_xi0_zero)));
            }
        }
        Ok((true, format!("{} pairs exact", pairs.len())))
    })
}

fn c8() -> Outcome {
    criterion(8, "pole-locus matrix rank 6 for every valid (N, A), N <= 12", secs(120), || {
        let pairs: Vec<_> = valid_pairs(12).into_iter().filter(|&(n, _)| n != 2).collect();
        for &(n, a) in &pairs {
            let r = polelemma(n, a)?;
            if r != 6 {
                return Ok((false, format!("({n},{a}) rank {r}")));
            }
        }
        Ok((true, format!("{} pairs (N = 2 excluded by hypothesis)", pairs.len())))
    })
}

fn c9() -> Outcome {
    criterion(9, "diagonal span: rank 6 over Q(zeta_N), dim_Q = 6 phi(N)", secs(3 * 600), || {
        let mut parts = Vec::new();
        for (n, a, dim) in [(5, 2, 24), (7, 3, 36), (8, 3, 24)] {
            let c = rank_delta(n, a)?;
            if c.rank != 6 || c.dim_q != dim || !c.recheck()? {
                return Ok((false, format!("({n},{a}) rank {} dim {}", c.rank, c.dim_q)));
            }
            parts.push(format!("({n},{a}) 6/{dim}"));
        }
        let r2 = rank_delta_unchecked(2, 1)?.rank;
        parts.push(format!("N=2 collapses to {r2}"));
        Ok((r2 == 3, parts.join(", ")))
    })
}

fn c10() -> Outcome {
    criterion(10, "full span: rank 36, dim_Q >= 36 phi(N), unit-rescaling invariant", secs(2 * 1800), || {
        let mut parts = Vec::new();
        for (n, a, dim) in [(5, 2, 144), (7, 3, 216)] {
            let c = rank_full(n, a)?;
            let d = rank_delta(n, a)?;
            let inv = (0..3).all(|k| rescaled_rank(&c, SEED + k).ok() == Some(c.rank))
                && (0..3).all(|k| rescaled_rank(&d, SEED + k).ok() == Some(d.rank));
            if c.rank != 36 || c.dim_q != dim || !inv {
                return Ok((false, format!("({n},{a}) rank {} dim {} invariant {inv}", c.rank, c.dim_q)));
            }
            parts.push(format!("({n},{a}) 36/{dim}"));
        }
        Ok((true, format!("{}; ranks unchanged under 3 random unit rescalings", parts.join(", "))))
    })
}

fn c11() -> Outcome {
    criterion(11, "report-all is byte-identical across runs with one seed", secs(600), || {
        let cfg = RunConfig {
            seed: SEED,
            ..RunConfig::default()
        };
        let a = run(Command::ReportAll, &cfg).without_timings().to_json();
        let b = run(Command::ReportAll, &cfg).without_timings().to_json();
        Ok((a == b, format!("{} bytes, identical: {}", a.len(), a == b)))
    })
}

fn main() {
    println!("acceptance: {DIGITS}-digit numerics, seed {SEED}");
    let outcomes = [c1(), c2(), c3(), c4(), c5(), c6(), c7(), c8(), c9(), c10(), c11()];
    let passed = outcomes.iter().filter(|o| o.pass).count();
    let unexpected: Vec<u32> = outcomes
        .iter()
        .filter(|o| o.pass == KNOWN_UNATTAINABLE.contains(&o.id))
        .map(|o| o.id)
        .collect();
    println!(
        "{passed}/{} criteria pass; known unattainable: {KNOWN_UNATTAINABLE:?}; unexpected outcomes: {unexpected:?}",
        outcomes.len()
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
