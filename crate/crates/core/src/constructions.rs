//! Explicit pairs of parameters that agree on low-dimensional twisted gamma factors,
//! with verifiers for their hypotheses and conclusions.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::character::{EmbChar, MultChar, Parity};
use crate::error::{Error, Result};
use crate::exact::Root;
use crate::factors::{gamma_equal, least_r, linear_regime, t_beta_congruence, PairData, Verdict};
use crate::field::{AbsElt, Field, FieldSpec, Scene};
use crate::padic::{Ambient, GalElt};
use crate::report::{Check, GammaEquivReport, Report, TwistOutcome};
use crate::weil::{Group, Summand, WeilRep};
use crate::Q;

/// Bounds of a [`TestFamily`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyBounds {
    pub max_dim: u32,
    /// Largest depth of a twisting character.
    pub max_depth: Q,
    /// Largest order of a character on the Teichmüller units.
    pub max_order: u64,
    /// Unramified twists: values on the uniformizer range over the `unif_order`-th roots of unity.
    pub unif_order: u32,
}

impl FamilyBounds {
    pub fn new(max_dim: u32, max_depth: Q, max_order: u64) -> FamilyBounds {
        FamilyBounds {
            max_dim,
            max_depth,
            max_order,
            unif_order: 2,
        }
    }
}

impl Default for FamilyBounds {
    fn default() -> FamilyBounds {
        FamilyBounds::new(2, Q::from_integer(2), 24)
    }
}

/// Admissible pairs `(L, η)` up to equivalence within bounds; `τ = Ind_{L/F} η`.
///
/// Wild parts are single monomials `[a]ϖ_L^{-j}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TestFamily {
    pub p: u64,
    pub bounds: FamilyBounds,
    pub members: Vec<MultChar>,
}

/// Tame extensions of `Q_p` of degree `n`, one per isomorphism class.
pub fn tame_specs(p: u64, n: u32) -> Vec<FieldSpec> {
    let mut out: Vec<FieldSpec> = Vec::new();
    for f in 1..=n {
        if n % f != 0 {
            continue;
        }
        let e = n / f;
        if e as u64 % p == 0 {
            continue;
        }
        let qm1 = p.pow(f) - 1;
        let g = (e as u64).gcd(&qm1);
        for c in 0..g {
            let s = FieldSpec { f, e, c };
            if !out.iter().any(|o| o.iso(&s, p)) {
                out.push(s);
            }
        }
    }
    out
}

fn order_mod(t: u64, n: u64) -> u64 {
    n / t.gcd(&n)
}

impl TestFamily {
    pub fn build(scene: &Scene, bounds: &FamilyBounds) -> Result<TestFamily> {
        let p = scene.p;
        let mut members = Vec::new();
        for n in 1..=bounds.max_dim {
            for spec in tame_specs(p, n) {
                members.extend(family_on(scene, spec, bounds)?);
            }
        }
        Ok(TestFamily {
            p,
            bounds: bounds.clone(),
            members,
        })
    }

    pub fn upto(&self, m: u32) -> impl Iterator<Item = &MultChar> {
        self.members.iter().filter(move |c| c.field.degree() <= m)
    }
}

fn family_on(scene: &Scene, spec: FieldSpec, bounds: &FamilyBounds) -> Result<Vec<MultChar>> {
    let p = scene.p;
    let amb = scene.ambient(&[spec])?;
    let l = amb.embed(&spec)?;
    let autos = amb.automorphisms(&l);
    let qm1 = spec.q(p) - 1;
    let jmax = (bounds.max_depth * Q::from_integer(spec.e as i128)).floor().to_integer() as i64;
    let mut wilds = vec![AbsElt::zero()];
    for j in 1..=jmax {
        for a in 0..qm1 {
            wilds.push(AbsElt::monomial(1, a, -j));
        }
    }
    let tames: Vec<u64> = (0..qm1).filter(|t| order_mod(*t, qm1) <= bounds.max_order).collect();
    let unifs: Vec<Root> = (0..bounds.unif_order.max(1) as i64).map(|k| Root::new(k, bounds.unif_order.max(1) as i64)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for w in &wilds {
        for t in &tames {
            for u in &unifs {
                let chi = MultChar::new(p, spec, *u, *t as i64, w.clone());
                if spec.degree() > 1 && !amb.is_admissible(&l, &chi)? {
                    continue;
                }
                let canon = canonical(&amb, &l, &autos, &chi)?;
                if seen.insert(format!("{canon:?}")) {
                    out.push(canon);
                }
            }
        }
    }
    Ok(out)
}

/// Least representative of the orbit of `chi` under `Aut(L/F)`.
fn canonical(amb: &Ambient, l: &Field, autos: &[GalElt], chi: &MultChar) -> Result<MultChar> {
    let theta = amb.emb(l, chi);
    let mut best: Option<(String, MultChar)> = None;
    for g in autos {
        let moved = amb.conj_emb(*g, &theta);
        let moved = EmbChar {
            field: l.clone(),
            comps: moved.comps,
        };
        let c = amb.to_multchar(&moved)?;
        let key = format!("{c:?}");
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, c));
        }
    }
    Ok(best.map(|b| b.1).unwrap_or_else(|| chi.clone()))
}

/// Drops summands occurring identically on both sides.
fn cancel_common(a: &WeilRep, b: &WeilRep) -> (WeilRep, WeilRep) {
    let mut rest_b = b.summands.clone();
    let mut rest_a = Vec::new();
    for s in &a.summands {
        if let Some(i) = rest_b.iter().position(|t| t == s) {
            rest_b.remove(i);
        } else {
            rest_a.push(s.clone());
        }
    }
    (WeilRep { summands: rest_a }, WeilRep { summands: rest_b })
}

/// Compares `γ(s, R_1 ⊗ τ, ψ)` and `γ(s, R_2 ⊗ τ, ψ)` for every `τ` of dimension `≤ level`.
pub fn gamma_equiv_level(scene: &Scene, a: &WeilRep, b: &WeilRep, level: u32, family: &TestFamily) -> Result<GammaEquivReport> {
    let (ra, rb) = cancel_common(a, b);
    let mut specs = ra.specs();
    specs.extend(rb.specs());
    let mut per_twist = Vec::new();
    let mut witness = None;
    let mut worst = Verdict::Equal;
    for eta in family.upto(level) {
        let verdict = if ra.summands.is_empty() && rb.summands.is_empty() {
            Verdict::Equal
        } else {
            let mut s = specs.clone();
            s.push(eta.field);
            let amb = scene.ambient(&s)?;
            let l = amb.embed(&eta.field)?;
            let ga = amb.gamma_rep_twist(&ra, &l, eta)?;
            let gb = amb.gamma_rep_twist(&rb, &l, eta)?;
            gamma_equal(&ga, &gb)
        };
        if verdict != Verdict::Equal {
            if witness.is_none() || (verdict == Verdict::NotEqual && worst != Verdict::NotEqual) {
                witness = Some(format!("dim {} {}", eta.field.degree(), eta));
            }
            if worst != Verdict::NotEqual {
                worst = verdict;
            }
        }
        per_twist.push(TwistOutcome {
            twist: eta.to_string(),
            verdict,
        });
    }
    Ok(GammaEquivReport {
        level,
        tested: per_twist.len(),
        verdict: worst,
        witness,
        per_twist,
    })
}

fn gamma_check(name: &str, g: &GammaEquivReport) -> Check {
    let detail = format!("{} twists of dimension ≤ {}: {:?}", g.tested, g.level, g.verdict);
    Check::new(name, g.verdict == Verdict::Equal && g.tested > 0, detail).with_witness(g.witness.clone())
}

fn require_regime(p: u64, e: u32, d: Q) -> Result<()> {
    if linear_regime(p, e, d) {
        Ok(())
    } else {
        Err(Error::Config(format!("depth {d} with ramification {e} is outside the linear range at p = {p}")))
    }
}

/// The quadratic subextension `E/L` and the involution of `E/L`.
fn quadratic_sub(amb: &Ambient, e: &Field) -> Result<(Field, GalElt)> {
    let l = amb
        .subfields(e)
        .into_iter()
        .find(|l| l.degree() * 2 == e.degree())
        .ok_or_else(|| Error::Unavailable("no quadratic subextension".into()))?;
    let sigma = *l
        .stab
        .iter()
        .find(|g| e.stab.binary_search(g).is_err())
        .ok_or_else(|| Error::Unavailable("no involution".into()))?;
    Ok((l, sigma))
}

fn parity_of(amb: &Ambient, e: &Field, chi: &MultChar) -> Result<Option<Parity>> {
    Ok(amb.self_dual(e, chi)?.map(|x| x.2))
}

fn base_equal(amb: &Ambient, a: &MultChar, b: &MultChar) -> Result<bool> {
    let base = amb.base_field();
    amb.emb_equal(&amb.emb(&base, a), &amb.emb(&base, b))
}

fn basic2_check(amb: &Ambient, pairs: &[PairData], r: u32) -> Result<Check> {
    let name = "twist criterion conditions";
    match amb.prop_basic2_conditions(pairs, r) {
        Ok(rep) => Ok(Check::new(
            name,
            rep.passed(),
            format!(
                "r = {}, t = {:?}: units {}, β-product {}, F^× restriction {}",
                r,
                rep.t.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
                rep.units_coincide,
                rep.beta_product,
                rep.base_restriction
            ),
        )),
        Err(Error::Precision(m)) => Err(Error::Precision(m)),
        Err(e) => Ok(Check::new(name, false, e.to_string())),
    }
}

fn std_check(amb: &Ambient, name: &str, group: Group, std: &WeilRep) -> Result<Check> {
    match amb.std_compose(group, std.clone()) {
        Ok(_) => Ok(Check::new(name, true, format!("valid {group} parameter of dimension {}", std.dim()))),
        Err(Error::Precision(m)) => Err(Error::Precision(m)),
        Err(e) => Ok(Check::new(name, false, e.to_string())),
    }
}

fn pair_data(amb: &Ambient, e: &Field, chi: &MultChar, chi2: &MultChar, beta: &AbsElt) -> PairData {
    PairData {
        field: e.clone(),
        chi: chi.clone(),
        chi2: chi2.clone(),
        beta: amb.realize(e, beta),
    }
}

fn inv_pair(amb: &Ambient, pd: &PairData) -> PairData {
    PairData {
        field: pd.field.clone(),
        chi: pd.chi.inv(amb.p),
        chi2: pd.chi2.inv(amb.p),
        beta: amb.neg(&pd.beta),
    }
}

/// Minimal totally ramified pairs of degree `n` agreeing on `U_E` and differing on `ϖ_E`,
/// compared as `Sp_{2n}` parameters.
pub fn build_noncusp(scene: &Scene, n: u32, bounds: &FamilyBounds, perturb: bool) -> Result<Report> {
    let p = scene.p;
    if n < 2 || p <= n as u64 {
        return Err(Error::Config(format!("need p > N ≥ 2, got N = {n}, p = {p}")));
    }
    let spec = FieldSpec::new(p, 1, n, 0)?;
    let beta = AbsElt::unif_pow(-1);
    require_regime(p, n, Q::new(1, n as i128))?;
    let amb = scene.ambient(&[spec])?;
    let e = amb.embed(&spec)?;
    let chi = MultChar::new(p, spec, Root::one(), 0, beta.clone());
    let mut chi2 = chi.twist_unif(Root::new(1, 4));
    if perturb {
        chi2 = MultChar::new(p, spec, chi2.unif, 1, chi2.wild.clone());
    }
    let group = Group::Sp(n);
    let std1 = WeilRep::new([chi.clone(), MultChar::trivial(FieldSpec::base()), chi.inv(p)]);
    let std2 = WeilRep::new([chi2.clone(), MultChar::trivial(FieldSpec::base()), chi2.inv(p)]);

    let mut rep = Report::new("noncusp", p);
    rep.param("N", n);
    rep.param("perturbed", perturb);
    rep.rep("std∘φ_χ", Some(group), &std1);
    rep.rep("std∘φ_χ'", Some(group), &std2);

    let bt = amb.realize(&e, &beta);
    let minimal = amb.is_quasi_minimal(&e, &bt)? && *amb.depth_of(&bt).denom() == n as i128;
    rep.push(Check::new("minimal totally ramified", minimal, format!("β = ϖ^-1 in {spec:?}")));
    let adm = amb.is_admissible(&e, &chi)? && amb.is_admissible(&e, &chi2)?;
    rep.push(Check::new("pairs admissible", adm, ""));
    let units = amb.coincide_on_units(&e, &chi, &chi2, Q::from_integer(0))?;
    rep.push(Check::new("characters coincide on U_E", units, ""));
    let m1 = amb.eval_char(&e, &chi, &amb.int(-1))?;
    let m2 = amb.eval_char(&e, &chi2, &amb.int(-1))?;
    rep.push(Check::new("χ(-1) = χ'(-1)", m1 == m2, format!("{m1} vs {m2}")));
    rep.push(std_check(&amb, "parameter valid (χ)", group, &std1)?);
    rep.push(std_check(&amb, "parameter valid (χ')", group, &std2)?);
    let pd = pair_data(&amb, &e, &chi, &chi2, &beta);
    let pairs = [pd.clone(), inv_pair(&amb, &pd)];
    rep.push(basic2_check(&amb, &pairs, n)?);

    let fam = TestFamily::build(scene, &FamilyBounds { max_dim: n - 1, ..bounds.clone() })?;
    let g = gamma_equiv_level(scene, &std1, &std2, n - 1, &fam)?;
    rep.push(gamma_check(&format!("gamma-equivalent to level {}", n - 1), &g));
    rep.comparisons.push(g);

    let ineq = !amb.pair_equivalent((&e, &chi), (&e, &chi2))? && !amb.pair_equivalent((&e, &chi), (&e, &chi2.inv(p)))?;
    rep.push(Check::new("pairs inequivalent and non-dual", ineq, ""));
    let std_ineq = !amb.rep_equivalent(&std1, &std2)?;
    rep.push(Check::new("standard compositions inequivalent", std_ineq, ""));
    Ok(rep.finish())
}

fn dual_parity(group: Group) -> Result<(u32, Parity)> {
    match group {
        Group::Sp(n) | Group::SOEven(n) => Ok((n, Parity::Orthogonal)),
        Group::SOOdd(n) => Ok((n, Parity::Symplectic)),
        _ => Err(Error::Config(format!("{group} is not a classical group of this family"))),
    }
}

fn next_coprime_odd(from: i64, m: i64) -> i64 {
    let mut k = from;
    while k % 2 == 0 || k.gcd(&m) != 1 {
        k += 1;
    }
    k
}

/// Self-dual unramified quadratic pair of the given parity, of least order.
fn chi0(amb: &Ambient, scene: &Scene, parity: Parity) -> Result<MultChar> {
    let p = scene.p;
    let spec = FieldSpec::new(p, 2, 1, 0)?;
    let e = amb.embed(&spec)?;
    let qm1 = p * p - 1;
    let mut ts: Vec<u64> = (0..qm1).collect();
    ts.sort_by_key(|t| (order_mod(*t, qm1), *t));
    for t in ts {
        for u in [Root::one(), Root::minus_one()] {
            let c = MultChar::new(p, spec, u, t as i64, AbsElt::zero());
            if amb.is_admissible(&e, &c)? && parity_of(amb, &e, &c)? == Some(parity) {
                return Ok(c);
            }
        }
    }
    Err(Error::Unavailable("no self-dual unramified quadratic pair of this parity".into()))
}

struct CuspSide {
    spec: FieldSpec,
    beta: AbsElt,
    chi: MultChar,
}

/// Self-dual minimal totally ramified pairs of degree `M = 2⌊N/2⌋` and common depth,
/// and their sign twists on the uniformizer.
///
/// With `perturb`, the second pair lives on the same field at a different depth; the
/// sign twist then changes gamma factors of twists whose depth lies between the two.
pub fn build_cusp(scene: &Scene, group: Group, bounds: &FamilyBounds, perturb: bool) -> Result<Report> {
    let p = scene.p;
    let (n, parity) = dual_parity(group)?;
    if n < 2 || p <= n as u64 {
        return Err(Error::Config(format!("need p > N ≥ 2, got N = {n}, p = {p}")));
    }
    let m = 2 * (n / 2);
    let k1 = next_coprime_odd(3, m as i64);
    let k2 = if perturb { next_coprime_odd(k1 + 1, m as i64) } else { k1 };
    for k in [k1, k2] {
        require_regime(p, m, Q::new(k as i128, m as i128))?;
    }
    let spec1 = FieldSpec::new(p, 1, m, 0)?;
    let g = (m as u64).gcd(&(p - 1));
    let mut candidates: Vec<FieldSpec> = if perturb {
        vec![spec1]
    } else {
        (1..g).map(|c| FieldSpec { f: 1, e: m, c }).filter(|s| !s.iso(&spec1, p)).collect()
    };
    candidates.dedup_by(|a, b| a.iso(b, p));
    let needs_det = parity == Parity::Orthogonal;
    let mut chosen: Option<(CuspSide, CuspSide, Option<MultChar>)> = None;
    'outer: for spec2 in candidates {
        let mut specs = vec![spec1, spec2];
        if n % 2 == 1 {
            specs.push(FieldSpec::new(p, 2, 1, 0)?);
        }
        let amb = scene.ambient(&specs)?;
        let c0 = if n % 2 == 1 { Some(chi0(&amb, scene, parity)?) } else { None };
        let mut fams = Vec::new();
        for (spec, k) in [(spec1, k1), (spec2, k2)] {
            let e = amb.embed(&spec)?;
            let (l, sigma) = quadratic_sub(&amb, &e)?;
            let beta = AbsElt::unif_pow(-k);
            let target = beta.add(&AbsElt::zero());
            let mut fam = Vec::new();
            for c in amb.xi_beta_family(&e, sigma, &l, &beta, parity)? {
                if c.wild == target && amb.is_admissible(&e, &c)? {
                    fam.push(c);
                }
            }
            fams.push((spec, e, beta, fam));
        }
        let target_det = match &c0 {
            Some(c) => amb.det_induced(&amb.embed(&c.field)?, c)?,
            None => MultChar::trivial(FieldSpec::base()),
        };
        for a in &fams[0].3 {
            let wa = amb.det_induced(&fams[0].1, a)?;
            for b in &fams[1].3 {
                if perturb && a == b {
                    continue;
                }
                let wb = amb.det_induced(&fams[1].1, b)?;
                if !needs_det || base_equal(&amb, &wa.mul(&wb, p), &target_det)? {
                    chosen = Some((
                        CuspSide { spec: fams[0].0, beta: fams[0].2.clone(), chi: a.clone() },
                        CuspSide { spec: fams[1].0, beta: fams[1].2.clone(), chi: b.clone() },
                        c0.clone(),
                    ));
                    break 'outer;
                }
            }
        }
    }
    let (s1, s2, c0) = chosen.ok_or_else(|| Error::Config(format!("no self-dual pairs of degree {m} satisfy the determinant condition for {group}")))?;

    let mut specs = vec![s1.spec, s2.spec];
    if let Some(c) = &c0 {
        specs.push(c.field);
    }
    let amb = scene.ambient(&specs)?;
    let e1 = amb.embed(&s1.spec)?;
    let e2 = amb.embed(&s2.spec)?;
    let flip = |c: &MultChar| c.twist_unif(Root::minus_one());
    let (chi1, chi2) = (s1.chi.clone(), s2.chi.clone());
    let (chi1p, chi2p) = (flip(&chi1), flip(&chi2));
    let w12 = amb.det_induced(&e1, &chi1)?.mul(&amb.det_induced(&e2, &chi2)?, p);
    let w12p = amb.det_induced(&e1, &chi1p)?.mul(&amb.det_induced(&e2, &chi2p)?, p);
    let build = |a: &MultChar, b: &MultChar, w: &MultChar| -> WeilRep {
        let mut v = Vec::new();
        if group == Group::Sp(n) {
            v.push(if n % 2 == 0 { w.clone() } else { MultChar::trivial(FieldSpec::base()) });
        }
        if let Some(c) = &c0 {
            v.push(c.clone());
        }
        v.push(a.clone());
        v.push(b.clone());
        WeilRep::new(v)
    };
    let std1 = build(&chi1, &chi2, &w12);
    let std2 = build(&chi1p, &chi2p, &w12p);

    let mut rep = Report::new("cusp", p);
    rep.param("group", group);
    rep.param("M", m);
    rep.param("depths", format!("{k1}/{m}, {k2}/{m}"));
    rep.param("perturbed", perturb);
    rep.rep("std∘φ_{χ1,χ2}", Some(group), &std1);
    rep.rep("std∘φ_{χ1',χ2'}", Some(group), &std2);

    let mut par_ok = true;
    for (e, c) in [(&e1, &chi1), (&e2, &chi2), (&e1, &chi1p), (&e2, &chi2p)] {
        par_ok &= parity_of(&amb, e, c)? == Some(parity);
    }
    rep.push(Check::new("self-dual of the dual group's parity", par_ok, format!("{parity:?}")));
    let mut minimal = true;
    for (e, s) in [(&e1, &s1), (&e2, &s2)] {
        let bt = amb.realize(e, &s.beta);
        minimal &= amb.is_quasi_minimal(e, &bt)? && *amb.depth_of(&bt).denom() == m as i128;
    }
    rep.push(Check::new("minimal totally ramified", minimal, ""));
    let mut adm = true;
    for (e, c) in [(&e1, &chi1), (&e2, &chi2), (&e1, &chi1p), (&e2, &chi2p)] {
        adm &= amb.is_admissible(e, c)?;
    }
    rep.push(Check::new("pairs admissible", adm, ""));
    let hyp = !amb.pair_equivalent((&e1, &chi1), (&e2, &chi2))? && !amb.pair_equivalent((&e1, &chi1), (&e2, &chi2p))?;
    rep.push(Check::new("first pair equivalent to neither second pair nor its twist", hyp, format!("{:?} / {:?}", s1.spec, s2.spec)));
    let mut flips = true;
    for (e, s, a, b) in [(&e1, &s1, &chi1, &chi1p), (&e2, &s2, &chi2, &chi2p)] {
        let bt = amb.realize(e, &s.beta);
        flips &= amb.eval_char(e, a, &bt)? == amb.eval_char(e, b, &bt)?.mul(Root::minus_one());
    }
    rep.push(Check::new("χ_i(β_i) = -χ'_i(β_i)", flips, ""));
    rep.push(std_check(&amb, "parameter valid (χ)", group, &std1)?);
    rep.push(std_check(&amb, "parameter valid (χ')", group, &std2)?);
    let pairs = [
        pair_data(&amb, &e1, &chi1, &chi1p, &s1.beta),
        pair_data(&amb, &e2, &chi2, &chi2p, &s2.beta),
    ];
    rep.push(basic2_check(&amb, &pairs, m)?);

    let level = m - 1;
    let fam = TestFamily::build(scene, &FamilyBounds { max_dim: level, ..bounds.clone() })?;
    let g = gamma_equiv_level(scene, &std1, &std2, level, &fam)?;
    rep.push(gamma_check(&format!("gamma-equivalent to level {level}"), &g));
    rep.comparisons.push(g);
    let ineq = !amb.rep_equivalent(&std1, &std2)?;
    rep.push(Check::new("standard compositions inequivalent", ineq, ""));
    Ok(rep.finish())
}

/// `m = N+1` for even `N`, `(3N + (-1)^{(N+1)/2})/2` for odd `N`.
pub fn better_m(n: u32) -> u32 {
    if n % 2 == 0 {
        n + 1
    } else {
        let sign: i64 = if ((n + 1) / 2) % 2 == 0 { 1 } else { -1 };
        ((3 * n as i64 + sign) / 2) as u32
    }
}

/// Self-dual pairs of degree `2N` and depth `m/2N` agreeing on `U^{(1/2N)+}` and on `β`.
pub fn build_better(scene: &Scene, n: u32, parity: Parity, bounds: &FamilyBounds, perturb: bool, search_witness: bool) -> Result<Report> {
    let p = scene.p;
    if n < 2 || p <= n as u64 {
        return Err(Error::Config(format!("need p > N ≥ 2, got N = {n}, p = {p}")));
    }
    let m = better_m(n);
    let e_deg = 2 * n;
    let d = Q::new(m as i128, e_deg as i128);
    require_regime(p, e_deg, d)?;
    let big_m = 2 * (n / 2);
    let spec = FieldSpec::new(p, 1, e_deg, 0)?;
    let amb = scene.ambient(&[spec])?;
    let e = amb.embed(&spec)?;
    let (l, sigma) = quadratic_sub(&amb, &e)?;
    let beta = AbsElt::unif_pow(-(m as i64));
    let target = beta.add(&AbsElt::zero());
    let fam = amb.xi_beta_family(&e, sigma, &l, &beta, parity)?;
    let mut chi = None;
    for c in &fam {
        if c.wild == target && amb.is_admissible(&e, c)? {
            chi = Some(c.clone());
            break;
        }
    }
    let chi = chi.ok_or_else(|| Error::Unavailable(format!("no {parity:?} character represented by β")))?;
    let mut chi2 = None;
    for c in &fam {
        if c.wild != target && c.unif == chi.unif && c.tame == chi.tame && amb.is_admissible(&e, c)? {
            chi2 = Some(c.clone());
            break;
        }
    }
    let mut chi2 = chi2.ok_or_else(|| Error::Unavailable("no second character at level 1/2N".into()))?;
    if perturb {
        chi2 = chi2.twist_unif(Root::minus_one());
    }

    let mut rep = Report::new("better", p);
    rep.param("N", n);
    rep.param("m", m);
    rep.param("parity", format!("{parity:?}"));
    rep.param("perturbed", perturb);
    let r1 = WeilRep::new([chi.clone()]);
    let r2 = WeilRep::new([chi2.clone()]);
    rep.rep("ρ_χ", Some(Group::GL(2 * n)), &r1);
    rep.rep("ρ_χ'", Some(Group::GL(2 * n)), &r2);

    let lr = least_r(m as i64, e_deg as i64);
    rep.push(Check::new("least r with rm ≡ ±1 mod 2N is M-1", lr == Some(big_m as i64 - 1), format!("{lr:?}")));
    let t = t_beta_congruence(d, big_m - 1);
    rep.push(Check::new("t_β(M-1) > 1/2N", t > Q::new(1, e_deg as i128), format!("{t}")));
    let bt = amb.realize(&e, &beta);
    rep.push(Check::new("σ(β) = -β", amb.is_zero(&amb.add(&amb.act(sigma, &bt), &bt)), ""));
    let par_ok = parity_of(&amb, &e, &chi)? == Some(parity) && parity_of(&amb, &e, &chi2)? == Some(parity);
    rep.push(Check::new("self-dual of the requested parity", par_ok, ""));
    let adm = amb.is_admissible(&e, &chi)? && amb.is_admissible(&e, &chi2)?;
    rep.push(Check::new("pairs admissible", adm, ""));
    let co = amb.coincide_on_units(&e, &chi, &chi2, Q::new(1, n as i128))?;
    rep.push(Check::new("coincide on U^{(1/2N)+}", co, ""));
    let vb = (amb.eval_char(&e, &chi, &bt)?, amb.eval_char(&e, &chi2, &bt)?);
    rep.push(Check::new("χ(β) = χ'(β)", vb.0 == vb.1, format!("{} vs {}", vb.0, vb.1)));
    let level = big_m.saturating_sub(2);
    if level >= 1 {
        rep.push(basic2_check(&amb, &[pair_data(&amb, &e, &chi, &chi2, &beta)], level + 1)?);
        let tf = TestFamily::build(scene, &FamilyBounds { max_dim: level, ..bounds.clone() })?;
        let g = gamma_equiv_level(scene, &r1, &r2, level, &tf)?;
        rep.push(gamma_check(&format!("gamma-equivalent to level {level}"), &g));
        rep.comparisons.push(g);
    } else {
        rep.notes.push("level M-2 is zero: nothing to compare".into());
    }
    let ineq = !amb.pair_equivalent((&e, &chi), (&e, &chi2))?;
    rep.push(Check::new("pairs inequivalent", ineq, ""));
    if search_witness {
        let dim = big_m - 1;
        let tf = TestFamily::build(scene, &FamilyBounds { max_dim: dim, ..bounds.clone() })?;
        let sub = TestFamily {
            members: tf.members.into_iter().filter(|c| c.field.degree() == dim).collect(),
            ..tf
        };
        let g = gamma_equiv_level(scene, &r1, &r2, dim, &sub)?;
        rep.notes.push(match (&g.verdict, &g.witness) {
            (Verdict::NotEqual, Some(w)) => format!("distinguishing twist of dimension {dim}: {w}"),
            _ => format!("no distinguishing twist of dimension {dim} among {} tested: inconclusive", g.tested),
        });
    }
    Ok(rep.finish())
}

/// The degree-six orthogonal parameter `ρ_{χ1} ⊕ ρ_{χ2} ⊕ ρ_{χ3}` on the biquadratic field.
pub struct So6Data {
    pub std: WeilRep,
    pub specs: [FieldSpec; 3],
}

pub fn so6_parameter(scene: &Scene, depths: (i64, i64), chi1_order: u64) -> Result<So6Data> {
    let p = scene.p;
    if p % 4 != 3 {
        return Err(Error::Config(format!("p = {p} must be 3 mod 4")));
    }
    if depths.0 == depths.1 {
        return Err(Error::Config("the ramified characters need distinct depths".into()));
    }
    for k in [depths.0, depths.1] {
        if k <= 0 || k % 2 == 0 {
            return Err(Error::Config(format!("wild exponent {k} must be positive and odd")));
        }
        require_regime(p, 2, Q::new(k as i128, 2))?;
    }
    let s1 = FieldSpec::new(p, 2, 1, 0)?;
    let s2 = FieldSpec::new(p, 1, 2, 0)?;
    let s3 = FieldSpec::new(p, 1, 2, 1)?;
    let qm1 = p * p - 1;
    let chi1 = MultChar::new(p, s1, Root::one(), (qm1 / chi1_order) as i64, AbsElt::zero());
    let chi2 = MultChar::new(p, s2, Root::one(), 0, AbsElt::unif_pow(-depths.0));
    let chi3 = MultChar::new(p, s3, Root::one(), 0, AbsElt::unif_pow(-depths.1));
    Ok(So6Data {
        std: WeilRep::new([chi1, chi2, chi3]),
        specs: [s1, s2, s3],
    })
}

/// The orthogonal parameter whose two halves of `∧³` agree although it is not
/// conjugate to its outer twist.
pub fn build_so6(scene: &Scene, depths: (i64, i64), perturb: bool) -> Result<Report> {
    let p = scene.p;
    let data = so6_parameter(scene, depths, if perturb { 8 } else { 4 })?;
    let amb = scene.ambient(&data.specs)?;
    let ks: Vec<Field> = data.specs.iter().map(|s| amb.embed(s)).collect::<Result<_>>()?;
    let l = amb.compositum(&ks[0], &ks[1]);
    let mut rep = Report::new("so6", p);
    rep.param("depths", format!("{}/2, {}/2", depths.0, depths.1));
    rep.param("perturbed", perturb);
    let group = Group::SOEven(3);
    rep.rep("std∘φ", Some(group), &data.std);

    let chis: Vec<&MultChar> = data.std.summands.iter().map(|s| &s.chi).collect();
    let mut orth = true;
    for (k, c) in ks.iter().zip(&chis) {
        orth &= amb.is_admissible(k, c)? && parity_of(&amb, k, c)? == Some(Parity::Orthogonal);
    }
    rep.push(Check::new("orthogonal admissible characters", orth, ""));
    let c1l = amb.inflate(&amb.emb(&ks[0], chis[0]), &l);
    let sq = amb.mul_emb(&c1l, &c1l);
    let one = amb.emb(&l, &MultChar::trivial(l.spec));
    rep.push(Check::new("χ1 through the norm from L is quadratic", amb.emb_equal(&sq, &one)?, ""));
    rep.push(std_check(&amb, "determinant condition", group, &data.std)?);
    let (plus, minus) = amb.wedge3_pm(&data.std, &l)?;
    let eq = amb.char_multiset_eq(&plus, &minus)?;
    rep.push(Check::new("∧³± weight multisets equal over L", eq, format!("{} + {} characters", plus.len(), minus.len())));
    let outer = amb.is_outer_self_conjugate(&data.std)?;
    rep.push(Check::new("not conjugate to its outer twist", !outer, ""));
    Ok(rep.finish())
}

/// Pads the degree-six parameter with unramified characters of order `m_order`
/// into `SO_{2N}`, together with its outer twist.
pub fn build_so2n(scene: &Scene, n: u32, m_order: u64, perturb: bool) -> Result<Report> {
    let p = scene.p;
    if n < 3 {
        return Err(Error::Config("N must be at least 3".into()));
    }
    if m_order <= 2 * n as u64 {
        return Err(Error::Config(format!("M = {m_order} must exceed 2N = {}", 2 * n)));
    }
    if m_order.gcd(&(2 * p)) != 1 {
        return Err(Error::Config(format!("M = {m_order} shares a factor with the degree data (primes of 2p = {})", 2 * p)));
    }
    let data = so6_parameter(scene, (1, 3), 4)?;
    let amb = scene.ambient(&data.specs)?;
    let base = FieldSpec::base();
    let mut pad = Vec::new();
    let mut exps = Vec::new();
    for k in 1..=(n as i64 - 3) {
        let z = if perturb && k == 1 { Root::one() } else { Root::new(k, m_order as i64) };
        pad.push(MultChar::new(p, base, z, 0, AbsElt::zero()));
        pad.push(MultChar::new(p, base, z.inv(), 0, AbsElt::zero()));
        exps.push(k);
        exps.push(-k);
    }
    let padding = WeilRep::new(pad);
    let std1 = data.std.plus(&padding);
    // the outer twist acts inside SO_6; its standard composition is unchanged
    let std2 = std1.clone();
    let group = Group::SOEven(n);
    let mut rep = Report::new("so2n", p);
    rep.param("N", n);
    rep.param("M", m_order);
    rep.param("perturbed", perturb);
    rep.rep("std∘φ'_1", Some(group), &std1);
    rep.rep("std∘φ'_2 (outer twist)", Some(group), &std2);

    rep.push(Check::new("SO_6 block not conjugate to its outer twist", !amb.is_outer_self_conjugate(&data.std)?, ""));
    rep.push(std_check(&amb, "parameter valid", group, &std1)?);
    let want: Vec<i64> = (1..=(n as i64 - 3)).flat_map(|k| [k, -k]).collect();
    rep.push(Check::new("padding exponents ±1..±(N-3)", exps == want, format!("{exps:?} over μ_{m_order}")));
    rep.push(Check::new("outer-equivalent", amb.rep_equivalent(&std1, &std2)?, ""));
    let conj = match amb.is_outer_self_conjugate(&std1) {
        Ok(b) => Check::new("not SO-conjugate", !b, "no self-dual odd-dimensional summand"),
        Err(Error::Precision(m)) => return Err(Error::Precision(m)),
        Err(e) => Check::new("not SO-conjugate", false, e.to_string()),
    };
    rep.push(conj);
    Ok(rep.finish())
}

/// Cubic totally ramified pairs with trivial determinant, agreeing on `U_E`.
pub fn build_g2(scene: &Scene, bounds: &FamilyBounds, perturb: bool) -> Result<Report> {
    let p = scene.p;
    if p <= 3 {
        return Err(Error::Config(format!("need p > 3, got {p}")));
    }
    require_regime(p, 3, Q::new(1, 3))?;
    let spec = FieldSpec::new(p, 1, 3, 0)?;
    let amb = scene.ambient(&[spec])?;
    let e = amb.embed(&spec)?;
    let kappa = amb.kappa(&e)?;
    let k0 = if kappa.on_p == 1 { Root::one() } else { Root::minus_one() };
    let beta = AbsElt::unif_pow(-1);
    let chi1 = MultChar::new(p, spec, k0, 0, beta.clone());
    let mut chi2 = MultChar::new(p, spec, k0.mul(Root::new(1, 3)), 0, beta.clone());
    if perturb {
        chi2 = chi2.twist_unif(Root::minus_one());
    }
    let galois = amb.automorphisms(&e).len() == 3;
    let branch = if galois { "Galois" } else { "non-Galois" };
    let r1 = WeilRep::new([chi1.clone()]);
    let r2 = WeilRep::new([chi2.clone()]);
    let triv = MultChar::trivial(FieldSpec::base());
    let std1 = WeilRep::new([chi1.clone(), triv.clone(), chi1.inv(p)]);
    let std2 = WeilRep::new([chi2.clone(), triv, chi2.inv(p)]);

    let mut rep = Report::new("g2", p);
    rep.param("branch", branch);
    rep.param("perturbed", perturb);
    rep.rep("std∘φ_1", Some(Group::G2), &std1);
    rep.rep("std∘φ_2", Some(Group::G2), &std2);

    let d1 = amb.is_trivial_char(&amb.rep_det(&r1)?)?;
    let d2 = amb.is_trivial_char(&amb.rep_det(&r2)?)?;
    rep.push(Check::new("PGL_3 determinant condition", d1 && d2, format!("κ(p) = {}", kappa.on_p)));
    rep.push(Check::new("characters coincide on U_E", amb.coincide_on_units(&e, &chi1, &chi2, Q::from_integer(0))?, ""));
    let ineq = !amb.pair_equivalent((&e, &chi1), (&e, &chi2))? && !amb.pair_equivalent((&e, &chi1), (&e, &chi2.inv(p)))?;
    rep.push(Check::new("pairs inequivalent including duals", ineq, ""));
    rep.push(std_check(&amb, "parameter valid (φ_1)", Group::G2, &std1)?);
    rep.push(std_check(&amb, "parameter valid (φ_2)", Group::G2, &std2)?);
    let pd = pair_data(&amb, &e, &chi1, &chi2, &beta);
    rep.push(basic2_check(&amb, &[pd.clone(), inv_pair(&amb, &pd)], 3)?);
    let fam = TestFamily::build(scene, &FamilyBounds { max_dim: 2, ..bounds.clone() })?;
    let g = gamma_equiv_level(scene, &std1, &std2, 2, &fam)?;
    rep.push(gamma_check("gamma-equivalent to level 2", &g));
    rep.comparisons.push(g);

    let t1 = amb.tensor_pairs(&e, &chi1, &e, &chi1.inv(p))?;
    let t2 = amb.tensor_pairs(&e, &chi2, &e, &chi2.inv(p))?;
    let shape: Vec<u32> = t1.summands.iter().map(Summand::dim).collect();
    let expect: Vec<u32> = if galois { vec![3, 3, 3] } else { vec![3, 6] };
    let mut sorted = shape.clone();
    sorted.sort();
    rep.push(Check::new(&format!("ρ⊗ρ^∨ decomposition ({branch})"), sorted == expect, format!("{shape:?}")));
    let teq = match amb.rep_equivalent(&t1, &t2) {
        Ok(b) => Check::new("ρ_1⊗ρ_1^∨ ≅ ρ_2⊗ρ_2^∨", b, branch),
        Err(Error::Precision(m)) => return Err(Error::Precision(m)),
        Err(e) => Check::new("ρ_1⊗ρ_1^∨ ≅ ρ_2⊗ρ_2^∨", false, e.to_string()),
    };
    rep.push(teq);
    rep.rep("ρ_1⊗ρ_1^∨", None, &t1);
    rep.rep("ρ_2⊗ρ_2^∨", None, &t2);
    Ok(rep.finish())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RamBeta {
    /// `ϖ^{-10} + ϖ^{-7}`.
    Deep,
    /// `ϖ^{-6} + ϖ^{-5}`.
    Shallow,
}

impl RamBeta {
    pub fn elt(self) -> AbsElt {
        match self {
            RamBeta::Deep => AbsElt::unif_pow(-10).add(&AbsElt::unif_pow(-7)),
            RamBeta::Shallow => AbsElt::unif_pow(-6).add(&AbsElt::unif_pow(-5)),
        }
    }

    fn depth(self) -> Q {
        match self {
            RamBeta::Deep => Q::new(5, 2),
            RamBeta::Shallow => Q::new(3, 2),
        }
    }
}

/// Quartic pairs differing by the unramified quadratic character of `E^×`:
/// all exterior powers agree on character twists.
pub fn build_ramakrishnan(scene: &Scene, which: RamBeta, bounds: &FamilyBounds, perturb: bool) -> Result<Report> {
    let p = scene.p;
    require_regime(p, 4, which.depth())?;
    let spec = FieldSpec::new(p, 1, 4, 0)?;
    let amb = scene.ambient(&[spec])?;
    let e = amb.embed(&spec)?;
    let beta = which.elt();
    let chi = MultChar::new(p, spec, Root::one(), 1, beta.clone());
    let chi2 = chi.twist_unif(if perturb { Root::new(1, 4) } else { Root::minus_one() });
    let r1 = WeilRep::new([chi.clone()]);
    let r2 = WeilRep::new([chi2.clone()]);
    let mut rep = Report::new("ramakrishnan", p);
    rep.param("beta", format!("{which:?}"));
    rep.param("perturbed", perturb);
    rep.rep("ρ_χ", Some(Group::GL(4)), &r1);
    rep.rep("ρ_χ'", Some(Group::GL(4)), &r2);

    let bt = amb.realize(&e, &beta);
    rep.push(Check::new("β quasi-minimal", amb.is_quasi_minimal(&e, &bt)?, ""));
    rep.push(Check::new("pairs admissible", amb.is_admissible(&e, &chi)? && amb.is_admissible(&e, &chi2)?, ""));
    let rf = base_equal(&amb, &amb.restrict_to_base(&e, &chi)?, &amb.restrict_to_base(&e, &chi2)?)?;
    rep.push(Check::new("χ, χ' agree on F^×", rf, ""));
    let vb = (amb.eval_char(&e, &chi, &bt)?, amb.eval_char(&e, &chi2, &bt)?);
    rep.push(Check::new("χ(β) = χ'(β)", vb.0 == vb.1, format!("{} vs {}", vb.0, vb.1)));
    rep.push(Check::new("ρ_χ ≇ ρ_χ'", !amb.pair_equivalent((&e, &chi), (&e, &chi2))?, ""));

    let fam = TestFamily::build(scene, &FamilyBounds { max_dim: 1, ..bounds.clone() })?;
    rep.push(basic2_check(&amb, &[pair_data(&amb, &e, &chi, &chi2, &beta)], 2)?);
    let g1 = gamma_equiv_level(scene, &r1, &r2, 1, &fam)?;
    rep.push(gamma_check("∧¹ gamma equal for character twists", &g1));
    rep.comparisons.push(g1);

    let w = amb.wedge_identities_4dim(&e, &chi, &chi2)?;
    let w2 = amb.wedge_identities_4dim(&e, &chi2, &chi)?;
    let (c3, c3p) = (w.wedge3.summands[0].chi.clone(), w2.wedge3.summands[0].chi.clone());
    rep.rep("∧³ρ_χ = ρ_χ^∨⊗ω", None, &w.wedge3);
    rep.rep("∧³ρ_χ' = ρ_χ'^∨⊗ω'", None, &w2.wedge3);
    let mut pd3 = pair_data(&amb, &e, &c3, &c3p, &beta);
    pd3.beta = amb.neg(&pd3.beta);
    let mut c = basic2_check(&amb, &[pd3], 2)?;
    c.name = "∧³ twist criterion conditions".into();
    rep.push(c);
    let g3 = gamma_equiv_level(scene, &w.wedge3, &w2.wedge3, 1, &fam)?;
    rep.push(gamma_check("∧³ gamma equal for character twists", &g3));
    rep.comparisons.push(g3);
    let tw: Vec<String> = w.twists.iter().map(|t| t.to_string()).collect();
    rep.push(Check::new("∧² equal via a quadratic unramified twist", w.wedge2_equal, format!("η(p) ∈ {tw:?}")));
    rep.push(Check::new("∧⁴ equal (determinants)", w.wedge4_equal, ""));
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tame_spec_counts() {
        // degree 2 over Q_5: unramified, and two ramified classes
        assert_eq!(tame_specs(5, 2).len(), 3);
        assert_eq!(tame_specs(5, 1).len(), 1);
        assert!(tame_specs(5, 5).iter().all(|s| s.e != 5));
    }

    #[test]
    fn better_m_values() {
        assert_eq!(better_m(4), 5);
        assert_eq!(better_m(5), 7);
        assert_eq!(better_m(3), 5);
        assert_eq!(least_r(5, 8), Some(3));
    }

    #[test]
    fn family_is_deterministic() {
        let scene = Scene::new(5).unwrap();
        let b = FamilyBounds::new(1, Q::from_integer(1), 4);
        let a = TestFamily::build(&scene, &b).unwrap();
        let c = TestFamily::build(&scene, &b).unwrap();
        assert_eq!(a.members, c.members);
        assert!(a.members.iter().all(|m| m.field.degree() == 1));
    }

    #[test]
    fn self_comparison_is_equal() {
        let scene = Scene::new(5).unwrap();
        let spec = FieldSpec { f: 1, e: 2, c: 0 };
        let r = WeilRep::new([MultChar::new(5, spec, Root::one(), 0, AbsElt::unif_pow(-3))]);
        let fam = TestFamily::build(&scene, &FamilyBounds::new(1, Q::from_integer(1), 2)).unwrap();
        let g = gamma_equiv_level(&scene, &r, &r, 1, &fam).unwrap();
        assert_eq!(g.verdict, Verdict::Equal);
    }
}
