//! Randomized property suites over the arithmetic layers, runnable outside the test harness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::character::MultChar;
use crate::constructions::tame_specs;
use crate::exact::{CycValue, Root};
use crate::factors::{dist_to_z, least_r, linear_regime, t_beta_congruence, PairData};
use crate::field::{AbsElt, FieldSpec};
use crate::padic::Ambient;
use crate::report::Check;
use crate::Q;

type Outcome = std::result::Result<String, String>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_cyc(rng: &mut ChaCha8Rng, m: u64) -> CycValue {
    let n = rng.gen_range(1..5);
    CycValue::from_terms(m, (0..n).map(|_| (rng.gen_range(0..m), Q::new(rng.gen_range(-6..7), rng.gen_range(1..4)))))
}

fn exact_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut n = 0;
    for m in [12u64, 20, 36] {
        for _ in 0..100 {
            let (a, b, c) = (random_cyc(&mut rng, m), random_cyc(&mut rng, m), random_cyc(&mut rng, m));
            let mut a2 = a.clone();
            a2.canonicalize();
            ensure(a2.terms() == a.terms(), "canonical form not idempotent")?;
            ensure(a.add(&b).equals(&b.add(&a)) && a.mul(&b).equals(&b.mul(&a)), "commutativity")?;
            ensure(a.mul(&b).mul(&c).equals(&a.mul(&b.mul(&c))), "associativity")?;
            ensure(a.mul(&b.add(&c)).equals(&a.mul(&b).add(&a.mul(&c))), "distributivity")?;
            ensure(a.sub(&a).is_zero(), "additive inverse")?;
            ensure(a.conjugate().conjugate().equals(&a), "conjugation is an involution")?;
            ensure(a.mul(&b).conjugate().equals(&a.conjugate().mul(&b.conjugate())), "conjugation is multiplicative")?;
            n += 1;
        }
    }
    let g = (0..5u64).fold(CycValue::zero(), |acc, t| acc.add(&CycValue::zeta(5, (t * t) % 5)));
    ensure(g.mul(&g.conjugate()).as_rational() == Some(q(5)), "quadratic Gauss sum norm")?;
    Ok(format!("{n} random triples, |Σζ_5^(t²)|² = 5"))
}

fn field_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for p in [5u64, 7, 13] {
        let spec = FieldSpec::new(p, 2, 2, 0).map_err(err)?;
        let amb = Ambient::for_specs(p, &[spec]).map_err(err)?;
        ensure(amb.k >= 10, format!("working precision {} below 10 at p = {p}", amb.k))?;
        let k = amb.embed(&spec).map_err(err)?;
        let qk = spec.q(p);
        for _ in 0..20 {
            let n = rng.gen_range(0..amb.n_units);
            ensure(amb.dlog(&amb.teich(n)).map_err(err)? == n, "Teichmüller round trip")?;
            let (a, b) = (rng.gen_range(-4i64..5), rng.gen_range(0..qk - 1));
            let mut u = amb.one();
            for j in 1..4 {
                u = amb.add(&u, &amb.mul(&amb.zeta(&k, rng.gen_range(0..qk - 1)), &amb.unif_pow(&k, j)));
            }
            let x = amb.mul(&amb.mul(&amb.unif_pow(&k, a), &amb.zeta(&k, b)), &u);
            let (a2, b2, u2) = amb.decompose(&k, &x).map_err(err)?;
            let back = amb.mul(&amb.mul(&amb.unif_pow(&k, a2), &amb.zeta(&k, b2)), &u2);
            ensure(a2 == a && b2 == b && amb.eq(&back, &x), "decomposition round trip")?;
            let target = 10 * amb.edeg as i64;
            let l = amb.log1p_unit(&u, target).map_err(err)?;
            let e = amb.exp_series(&l, target).map_err(err)?;
            ensure(amb.val_pi(&amb.sub(&e, &u)).is_none_or(|v| v >= target), format!("exp∘log at p = {p}"))?;
        }
    }
    // U^1/U^3 of Q_5 has order 25
    let amb = Ambient::new(5, 1, 1).map_err(err)?;
    let logs: Vec<_> = (0..25i64)
        .map(|a| {
            let u = amb.add(&amb.one(), &amb.int(5 * a));
            let l = amb.log1p_unit(&u, 3)?;
            Ok((u, l))
        })
        .collect::<crate::Result<_>>()
        .map_err(err)?;
    for (i, (u, l)) in logs.iter().enumerate() {
        ensure(amb.val_pi(l).is_none_or(|v| v >= 1), "log lands in pZ_5")?;
        let e = amb.exp_series(l, 3).map_err(err)?;
        ensure(amb.val_pi(&amb.sub(&e, u)).is_none_or(|v| v >= 3), "exp∘log on U^1/U^3")?;
        for (_, l2) in &logs[..i] {
            ensure(amb.val_pi(&amb.sub(l, l2)).is_some_and(|v| v < 3), "log not injective on U^1/U^3")?;
        }
    }
    for _ in 0..50 {
        let p = [5u64, 7, 13][rng.gen_range(0..3)];
        let pick = |rng: &mut ChaCha8Rng| {
            let s = tame_specs(p, rng.gen_range(1..4));
            s[rng.gen_range(0..s.len())]
        };
        let (se, sl) = (pick(&mut rng), pick(&mut rng));
        let amb = Ambient::for_specs(p, &[se, sl]).map_err(err)?;
        let (e, l) = (amb.embed(&se).map_err(err)?, amb.embed(&sl).map_err(err)?);
        let total: u32 = amb.tensor_decompose(&e, &l).iter().map(|(_, kg)| kg.degree()).sum();
        ensure(total == se.degree() * sl.degree(), format!("tensor degrees {se:?} ⊗ {sl:?}"))?;
    }
    Ok("Teichmüller/log/exp at precision 10 for p = 5, 7, 13; 25-element bijection; 50 tensor decompositions".into())
}

/// A random character of positive depth on a random tame field, inside the linear range.
fn random_char(rng: &mut ChaCha8Rng, p: u64) -> (FieldSpec, MultChar, Q) {
    loop {
        let f = rng.gen_range(1..3u32);
        let e = rng.gen_range(1..5u32);
        if e as u64 % p == 0 {
            continue;
        }
        let qm1 = p.pow(f) - 1;
        let g = (e as u64).min(qm1);
        let c = rng.gen_range(0..g) % num_integer::gcd(e as u64, qm1);
        let spec = FieldSpec { f, e, c };
        let k = rng.gen_range(1..=2 * e as i64);
        let d = Q::new(k as i128, e as i128);
        if !linear_regime(p, e, d) {
            continue;
        }
        let mut wild = AbsElt::monomial(1, rng.gen_range(0..qm1), -k);
        if k > 1 && rng.gen_bool(0.5) {
            wild = wild.add(&AbsElt::monomial(rng.gen_range(1..p as i64), rng.gen_range(0..qm1), -k + 1));
        }
        let unif = Root::new(rng.gen_range(0..12), 12);
        let chi = MultChar::new(p, spec, unif, rng.gen_range(0..qm1 as i64), wild);
        return (spec, chi, d);
    }
}

fn factor_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut odd, mut even) = (0, 0);
    for i in 0..100 {
        let p = [5u64, 7, 11][i % 3];
        let (spec, chi, d) = random_char(&mut rng, p);
        let amb = Ambient::for_specs(p, &[spec]).map_err(err)?;
        let k = amb.embed(&spec).map_err(err)?;
        let theta = amb.emb(&k, &chi);
        let (g, h) = amb.gauss_sum(&theta).map_err(err)?;
        let ed = (d * q(spec.e as i128)).to_integer();
        if ed % 2 == 1 {
            ensure(g.equals(&CycValue::one()) && h == 0, "G = 1 for odd e·d")?;
            odd += 1;
        } else {
            let n2 = g.mul(&g.conjugate()).mul(&CycValue::rational(Q::from_integer(p as i128).pow(h as i32)));
            ensure(n2.as_rational() == Some(q(1)), format!("|G| = 1 for {chi}"))?;
            even += 1;
        }
        let eps = amb.tate_eps(&theta).map_err(err)?;
        let want = Q::from_integer(p as i128).pow((d * q(spec.degree() as i128)).to_integer() as i32);
        let got = eps.norm_sq_unitary().and_then(|v| v.as_rational());
        ensure(got == Some(want), format!("ε·conj(ε) = q^(N·d) for {chi}: {got:?}"))?;
    }
    for i in 0..50 {
        let p = [5u64, 7, 11][i % 3];
        let (spec, chi1, _) = random_char(&mut rng, p);
        let qm1 = spec.q(p) - 1;
        let chi2 = MultChar::new(p, spec, Root::new(rng.gen_range(0..12), 12), rng.gen_range(0..qm1 as i64), chi1.wild.clone());
        let amb = Ambient::for_specs(p, &[spec]).map_err(err)?;
        let k = amb.embed(&spec).map_err(err)?;
        let c = amb.realize(&k, &chi1.wild);
        let g1 = amb.tate_gamma(&amb.emb(&k, &chi1)).map_err(err)?;
        let g2 = amb.tate_gamma(&amb.emb(&k, &chi2)).map_err(err)?;
        let ratio = amb.eval_char(&k, &chi2, &c).map_err(err)?.div(amb.eval_char(&k, &chi1, &c).map_err(err)?);
        ensure(g1.equals(&g2.mul_root(ratio)), format!("γ(χ1) = (χ2(c)/χ1(c))·γ(χ2) for {chi1} / {chi2}"))?;
    }
    Ok(format!("Gauss sums: {odd} odd, {even} even; 100 ε norms; 50 ratio identities"))
}

fn oracle_linkage(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut agree, mut differ, mut tried) = (0, 0, 0);
    while agree + differ < 120 {
        tried += 1;
        if tried > 5000 {
            return Err(format!("only {} usable instances", agree + differ));
        }
        let p = [5u64, 7, 11][rng.gen_range(0..3)];
        let n = rng.gen_range(1..4u32);
        let k = rng.gen_range(1..=2 * n as i64 + 1);
        let d = Q::new(k as i128, n as i128);
        let specs_e: Vec<FieldSpec> = tame_specs(p, n).into_iter().filter(|s| s.f == 1).collect();
        let se = specs_e[rng.gen_range(0..specs_e.len())];
        let ls = tame_specs(p, rng.gen_range(1..3));
        let sl = ls[rng.gen_range(0..ls.len())];
        let amb = Ambient::for_specs(p, &[se, sl]).map_err(err)?;
        let (e, l) = (amb.embed(&se).map_err(err)?, amb.embed(&sl).map_err(err)?);
        let pairs_n = rng.gen_range(1..3);
        let mut pairs = Vec::new();
        for _ in 0..pairs_n {
            let beta = AbsElt::monomial(1, rng.gen_range(0..p - 1), -k);
            let delta_pow = -(k - 1) / 2;
            let delta = if delta_pow < 0 && rng.gen_bool(0.5) { AbsElt::monomial(1, rng.gen_range(0..p - 1), delta_pow) } else { AbsElt::zero() };
            let rand_unif = |rng: &mut ChaCha8Rng| Root::new(rng.gen_range(0..6), 6);
            let chi = MultChar::new(p, se, rand_unif(&mut rng), rng.gen_range(0..p as i64 - 1), beta.clone());
            let chi2 = MultChar::new(p, se, rand_unif(&mut rng), rng.gen_range(0..p as i64 - 1), beta.add(&delta));
            if !amb.coincide_on_units(&e, &chi, &chi2, d / q(2)).map_err(err)? {
                continue;
            }
            pairs.push(PairData {
                field: e.clone(),
                beta: amb.realize(&e, &beta),
                chi,
                chi2,
            });
        }
        if pairs.is_empty() {
            continue;
        }
        let ql = sl.q(p);
        let j = rng.gen_range(0..=2 * sl.e as i64);
        let wild = if j == 0 { AbsElt::zero() } else { AbsElt::monomial(1, rng.gen_range(0..ql - 1), -j) };
        let eta = MultChar::new(p, sl, Root::new(rng.gen_range(0..4), 4), rng.gen_range(0..ql as i64 - 1), wild);
        match amb.prop_basic_check(&pairs, &l, &eta) {
            Ok(c) => {
                if !c.consistent {
                    return Err(format!("inconsistent at p = {p}, E = {se:?}, L = {sl:?}, η = {eta}: {c:?}"));
                }
                if c.rhs_equal {
                    agree += 1;
                } else {
                    differ += 1;
                }
            }
            Err(crate::Error::Config(_)) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
    ensure(agree > 0 && differ > 0, "one side of the criterion never occurred")?;
    Ok(format!("{} instances ({agree} equal, {differ} unequal), 0 inconsistencies", agree + differ))
}

fn t_beta_suite(seed: u64) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let configs_r2 = [(5u64, 2u32, 3i64), (5, 2, 5), (7, 3, 4), (7, 3, 5), (7, 2, 7), (11, 4, 5), (11, 4, 7), (13, 3, 7), (13, 4, 9), (13, 2, 1)];
    for (p, m_den, m) in configs_r2 {
        let se = FieldSpec::new(p, 1, m_den, 0).map_err(err)?;
        let amb = Ambient::for_specs(p, &[se]).map_err(err)?;
        let e = amb.embed(&se).map_err(err)?;
        let beta = amb.unif_pow(&e, -m);
        let d = Q::new(m as i128, m_den as i128);
        let rep = amb.t_beta_sampled(&beta, &[amb.base_field()], 200, &mut rng).map_err(err)?;
        let want = t_beta_congruence(d, 2);
        ensure(rep.bound == want, format!("r = 2 at d = {d}: sampled {} vs {want}", rep.bound))?;
        if d > q(1) {
            ensure(want == dist_to_z(d), format!("distance to Z at d = {d}"))?;
        }
    }
    for (p, big_m, m, r) in [(13u64, 8u32, 5i64, 3u32), (11, 10, 3, 3), (13, 7, 2, 3)] {
        ensure(least_r(m, big_m as i64) == Some(r as i64), format!("least r for ({big_m},{m})"))?;
        let d = Q::new(m as i128, big_m as i128);
        let bound = t_beta_congruence(d, r);
        ensure(bound > Q::new(1, big_m as i128), format!("t_β({r}) > 1/{big_m}"))?;
        let mut specs = vec![FieldSpec::new(p, 1, big_m, 0).map_err(err)?];
        for s in 1..r {
            specs.extend(tame_specs(p, s));
        }
        let amb = Ambient::for_specs(p, &specs).map_err(err)?;
        let e = amb.embed(&specs[0]).map_err(err)?;
        let ls: Vec<_> = specs[1..].iter().map(|s| amb.embed(s)).collect::<crate::Result<_>>().map_err(err)?;
        let beta = amb.unif_pow(&e, -m);
        let rep = amb.t_beta_sampled(&beta, &ls, 500 / ls.len().max(1), &mut rng).map_err(err)?;
        ensure(rep.bound >= bound, format!("sampled infimum {} below the bound {bound}", rep.bound))?;
    }
    Ok("10 distance-to-Z configurations; bounds at (8,5,3), (10,3,3), (7,2,3)".into())
}

fn to_check(name: &str, r: Outcome) -> Check {
    match r {
        Ok(d) => Check::new(name, true, d),
        Err(d) => Check::new(name, false, d),
    }
}

/// Cyclotomic ring axioms, conjugation, and the quadratic Gauss sum over `Q(ζ_5)`.
pub fn exact(seed: u64) -> Check {
    to_check("exact arithmetic", exact_suite(seed))
}

/// Teichmüller, log/exp and tensor-decomposition bookkeeping.
pub fn fields(seed: u64) -> Check {
    to_check("field arithmetic", field_suite(seed))
}

/// Gauss-sum magnitudes, epsilon norms and the common-representative ratio identity.
pub fn factors(seed: u64) -> Check {
    to_check("local factors", factor_suite(seed))
}

/// Gamma-product verdicts against the character-value criterion on random instances.
pub fn gamma_criterion(seed: u64) -> Check {
    to_check("gamma verdict vs character criterion", oracle_linkage(seed))
}

/// `t_β` congruence bounds against sampled infima.
pub fn t_beta(seed: u64) -> Check {
    to_check("t_β bounds", t_beta_suite(seed))
}

pub fn run_all(seed: u64) -> Vec<Check> {
    vec![exact(seed), fields(seed + 1), factors(seed + 2), gamma_criterion(seed + 3), t_beta(seed + 4)]
}
