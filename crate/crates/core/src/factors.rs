//! Gauss sums, Tate factors of characters, twisted gamma products and the
//! valuation bounds used to compare them.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::character::{EmbChar, MultChar};
use crate::error::{Error, Result};
use crate::exact::{lambda_multiset_eq, CycValue, LambdaSymbol, LocalFactor, Poly, Root};
use crate::field::Field;
use crate::padic::{Ambient, TElt};
use crate::Q;

/// Sum of roots of unity as an exact cyclotomic number.
pub fn sum_roots(roots: &[Root]) -> CycValue {
    let m = roots.iter().fold(1i64, |m, r| m.lcm(&r.order())) as u64;
    CycValue::from_terms(
        m,
        roots
            .iter()
            .map(|r| ((r.num() * (m as i64 / r.order())) as u64, Q::from_integer(1))),
    )
}

/// `∏ λ_{K/F}(ψ_F) · factor`, with the constants kept symbolic.
#[derive(Clone, Debug)]
pub struct GammaProduct {
    pub lambdas: Vec<LambdaSymbol>,
    pub factor: LocalFactor,
}

impl GammaProduct {
    pub fn one(q: u64) -> GammaProduct {
        GammaProduct {
            lambdas: Vec::new(),
            factor: LocalFactor::one(q),
        }
    }

    pub fn mul(&self, o: &GammaProduct) -> GammaProduct {
        let mut lambdas = self.lambdas.clone();
        lambdas.extend(o.lambdas.iter().copied());
        GammaProduct {
            lambdas,
            factor: self.factor.mul(&o.factor),
        }
    }

    /// `s ↦ s + k2/2`.
    pub fn shift_half(&self, k2: i64) -> GammaProduct {
        GammaProduct {
            lambdas: self.lambdas.clone(),
            factor: self.factor.shift_half(k2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equal,
    NotEqual,
    Indeterminate,
}

pub fn gamma_equal(a: &GammaProduct, b: &GammaProduct) -> Verdict {
    if !lambda_multiset_eq(&a.lambdas, &b.lambdas) {
        return Verdict::Indeterminate;
    }
    if a.factor.equals(&b.factor) {
        Verdict::Equal
    } else {
        Verdict::NotEqual
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TMethod {
    Congruence,
    Sampled,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TBetaReport {
    pub r: u32,
    pub bound: Q,
    pub method: TMethod,
    pub witnesses: Vec<String>,
}

/// Outcome of comparing both sides of the character-value criterion.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasicCheck {
    pub lhs: Verdict,
    pub rhs_equal: bool,
    pub consistent: bool,
}

/// One item of the sufficient conditions for twisted gamma equality.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Basic2Report {
    pub t: Vec<Q>,
    pub units_coincide: bool,
    pub beta_product: bool,
    pub base_restriction: bool,
    /// Twists of dimension below this are covered when all items pass.
    pub scope: u32,
}

impl Basic2Report {
    pub fn passed(&self) -> bool {
        self.units_coincide && self.beta_product && self.base_restriction
    }
}

/// One member of a family of totally ramified pairs sharing a representative.
#[derive(Clone, Debug)]
pub struct PairData {
    pub field: Field,
    pub chi: MultChar,
    pub chi2: MultChar,
    pub beta: TElt,
}

impl Ambient {
    fn teich_reps(&self, k: &Field) -> Vec<TElt> {
        let qk = k.spec.q(self.p);
        (0..qk - 1).map(|i| self.zeta(k, i)).collect()
    }

    /// `Σ_{x∈J/H} θ^{-1}(x)ψ_K(c(x-1))` and the power of `q^{1/2}` normalizing it.
    pub fn gauss_sum(&self, theta: &EmbChar) -> Result<(CycValue, i64)> {
        let k = &theta.field;
        let c = self.wild_emb(theta);
        let d = self.depth_of(&c);
        if d == Q::from_integer(0) {
            return Err(Error::Config("Gauss sum of a depth-zero character".into()));
        }
        let m = (d * Q::from_integer(k.spec.e as i128)).to_integer() as i64;
        if m % 2 == 1 {
            return Ok((CycValue::one(), 0));
        }
        let step = self.unif_pow(k, m / 2);
        let mut roots = Vec::new();
        let mut zs = vec![self.zero()];
        zs.extend(self.teich_reps(k));
        for a in zs {
            let y = self.mul(&a, &step);
            let x = self.add(&self.one(), &y);
            let r = self.eval_emb(theta, &x)?.inv();
            roots.push(r.mul(self.psi_field(k, &self.mul(&c, &y))?));
        }
        Ok((sum_roots(&roots), -(k.spec.f as i64)))
    }

    /// `ε(s, θ, ψ_K)` for a ramified `θ`, in `X = q^{-s}`.
    pub fn tate_eps(&self, theta: &EmbChar) -> Result<LocalFactor> {
        let k = &theta.field;
        let p = self.p;
        let c = self.wild_emb(theta);
        let d = self.depth_of(&c);
        let n = k.degree() as i64;
        if d > Q::from_integer(0) {
            if !linear_regime(p, k.spec.e, d) {
                return Err(Error::Config(format!("depth {d} on e = {} is outside the linear range at p = {p}", k.spec.e)));
            }
            let nd = (d * Q::from_integer(n as i128)).to_integer() as i64;
            let unit = self.eval_emb(theta, &c)?.inv().mul(self.psi_field(k, &c)?);
            let (g, gh) = self.gauss_sum(theta)?;
            return Ok(LocalFactor::monomial(p, unit, nd, nd + gh).with_sum(g));
        }
        if self.emb_tame(theta)? == 0 {
            return Err(Error::Config("epsilon formula needs a ramified character".into()));
        }
        let mut roots = Vec::new();
        for x in self.teich_reps(k) {
            roots.push(self.eval_emb(theta, &x)?.inv().mul(self.psi_field(k, &x)?));
        }
        Ok(LocalFactor::monomial(p, Root::one(), 0, -(k.spec.f as i64)).with_sum(sum_roots(&roots)))
    }

    /// `γ(s, θ, ψ_K) = ε(s,θ,ψ_K)·L(1-s,θ^{-1})/L(s,θ)`.
    pub fn tate_gamma(&self, theta: &EmbChar) -> Result<LocalFactor> {
        if !self.emb_unramified(theta)? {
            return self.tate_eps(theta);
        }
        let k = &theta.field;
        let f = k.spec.f as i64;
        let z = self.eval_emb(theta, &self.unif(k))?;
        let qf = Q::from_integer(self.p as i128).pow(f as i32);
        let num = Poly::one_minus(z.to_cyc(), f);
        let den = Poly::one_minus(z.inv().to_cyc().scale(qf.recip()), -f);
        Ok(LocalFactor::monomial(self.p, z.inv(), -f, -f).with_ratio(num, den))
    }

    /// `γ(s, Ind χ ⊗ Ind η, ψ_F)` as a product over double cosets.
    pub fn gamma_induced_twist(&self, e: &Field, chi: &MultChar, l: &Field, eta: &MultChar) -> Result<GammaProduct> {
        let mut out = GammaProduct::one(self.p);
        for (g, kg) in self.tensor_decompose(e, l) {
            let theta = self.twist_char(g, e, chi, l, eta, &kg);
            out.lambdas.push(kg.spec.lambda(self.p));
            out.factor = out.factor.mul(&self.tate_gamma(&theta)?);
        }
        Ok(out)
    }

    /// `θ_g = (^gχ)_{K}·η_{K}` on `K = g(E)L`.
    pub fn twist_char(&self, g: crate::padic::GalElt, e: &Field, chi: &MultChar, l: &Field, eta: &MultChar, kg: &Field) -> EmbChar {
        let a = self.conj_emb(g, &self.emb(e, chi));
        let a = self.inflate(&a, kg);
        let b = self.inflate(&self.emb(l, eta), kg);
        self.mul_emb(&a, &b)
    }

    /// `u^±_α(β)` for `α ∈ l`: `N(-α)^{-1} f_α(-β)` or `(-β)^{-r} f_α(-β)`.
    pub fn u_eval(&self, l: &Field, alpha: &TElt, plus: bool, beta: &TElt) -> Result<TElt> {
        let poly = self.char_poly(l, alpha);
        let nb = self.neg(beta);
        let fv = self.eval_poly(&poly, &nb);
        if plus {
            let base = self.base_field();
            let na = self.norm(&self.neg(alpha), l, &base);
            self.div(&fv, &na)
        } else {
            let r = (poly.len() - 1) as u64;
            self.div(&fv, &self.pow(&nb, r))
        }
    }

    /// Sampled infimum of `val(1 - u^±_α(β))` over random `α` in the given fields.
    pub fn t_beta_sampled(&self, beta: &TElt, fields: &[Field], samples: usize, rng: &mut impl rand::Rng) -> Result<TBetaReport> {
        let vb = self.val(beta).ok_or_else(|| Error::Precision("β is zero".into()))?;
        let mut best: Option<Q> = None;
        let mut witnesses = Vec::new();
        let mut r = 0;
        for l in fields {
            r = r.max(l.degree() + 1);
            let el = l.spec.e as i64;
            let ql = l.spec.q(self.p);
            for _ in 0..samples {
                let plus = rng.gen_bool(0.5);
                // leading valuation in units of 1/e_L
                let lo = if plus { -4 * el - (-vb * Q::from_integer(el as i128)).ceil().to_integer() as i64 } else { (vb * Q::from_integer(el as i128)).floor().to_integer() as i64 + 1 };
                let hi = if plus { (vb * Q::from_integer(el as i128)).ceil().to_integer() as i64 - 1 } else { -1 };
                if lo > hi {
                    continue;
                }
                let j = rng.gen_range(lo..=hi);
                let mut alpha = self.mul(&self.zeta(l, rng.gen_range(0..ql - 1)), &self.unif_pow(l, j));
                for extra in 1..3 {
                    if rng.gen_bool(0.5) {
                        let t = self.mul(&self.zeta(l, rng.gen_range(0..ql - 1)), &self.unif_pow(l, j + extra));
                        alpha = self.add(&alpha, &t);
                    }
                }
                let u = self.u_eval(l, &alpha, plus, beta)?;
                let v = match self.val(&self.sub(&self.one(), &u)) {
                    Some(v) => v,
                    None => continue,
                };
                if best.is_none_or(|b| v < b) {
                    best = Some(v);
                    witnesses = vec![format!("deg {} α val {}/{} sign {}", l.degree(), j, el, if plus { '+' } else { '-' })];
                }
            }
        }
        Ok(TBetaReport {
            r,
            bound: best.unwrap_or(Q::from_integer(i64::MAX as i128)),
            method: TMethod::Sampled,
            witnesses,
        })
    }

    /// Checks both sides of the character-value criterion for twisted gamma equality.
    pub fn prop_basic_check(&self, pairs: &[PairData], l: &Field, eta: &MultChar) -> Result<BasicCheck> {
        let alpha = self.realize(l, &eta.wild);
        let d_eta = self.depth_of(&alpha);
        let mut g1 = GammaProduct::one(self.p);
        let mut g2 = GammaProduct::one(self.p);
        let mut r1 = Root::one();
        let mut r2 = Root::one();
        let r = l.degree() as u64;
        let poly = self.char_poly(l, &alpha);
        for pd in pairs {
            let d = self.depth_of(&pd.beta);
            if d == d_eta {
                return Err(Error::Config("twist depth coincides with a pair depth".into()));
            }
            if !self.coincide_on_units(&pd.field, &pd.chi, &pd.chi2, d / Q::from_integer(2))? {
                return Err(Error::Config("pair characters differ on the half-depth units".into()));
            }
            g1 = g1.mul(&self.gamma_induced_twist(&pd.field, &pd.chi, l, eta)?);
            g2 = g2.mul(&self.gamma_induced_twist(&pd.field, &pd.chi2, l, eta)?);
            let mut x = self.eval_poly(&poly, &self.neg(&pd.beta));
            if r % 2 == 1 {
                x = self.neg(&x);
            }
            r1 = r1.mul(self.eval_char(&pd.field, &pd.chi, &x)?);
            r2 = r2.mul(self.eval_char(&pd.field, &pd.chi2, &x)?);
        }
        let lhs = gamma_equal(&g1, &g2);
        let rhs_equal = r1 == r2;
        Ok(BasicCheck {
            lhs,
            rhs_equal,
            consistent: (lhs == Verdict::Equal) == rhs_equal && lhs != Verdict::Indeterminate,
        })
    }

    /// Evaluates the three sufficient conditions for equality against all twists of dimension `< r`.
    pub fn prop_basic2_conditions(&self, pairs: &[PairData], r: u32) -> Result<Basic2Report> {
        let first = pairs.first().ok_or_else(|| Error::Config("no pairs".into()))?;
        let d = self.depth_of(&first.beta);
        let n = first.field.degree();
        let m_den = *d.denom() as u32;
        if r as u64 > self.p.min(m_den as u64) {
            return Err(Error::Config(format!("r = {r} exceeds min(p, M)")));
        }
        let mut ts = Vec::new();
        let mut units = true;
        let mut prod1 = Root::one();
        let mut prod2 = Root::one();
        let base = self.base_field();
        let mut res1 = MultChar::trivial(base.spec);
        let mut res2 = MultChar::trivial(base.spec);
        for pd in pairs {
            if pd.field.degree() != n || pd.field.spec.f != 1 || self.depth_of(&pd.beta) != d {
                return Err(Error::Config("pairs must be totally ramified of common degree and depth".into()));
            }
            let t = t_beta_congruence(d, r);
            ts.push(t);
            if !self.coincide_on_units(&pd.field, &pd.chi, &pd.chi2, t)? {
                units = false;
            }
            prod1 = prod1.mul(self.eval_char(&pd.field, &pd.chi, &pd.beta)?);
            prod2 = prod2.mul(self.eval_char(&pd.field, &pd.chi2, &pd.beta)?);
            res1 = res1.mul(&self.restrict_to_base(&pd.field, &pd.chi)?, self.p);
            res2 = res2.mul(&self.restrict_to_base(&pd.field, &pd.chi2)?, self.p);
        }
        let base_eq = self.emb_equal(&self.emb(&base, &res1), &self.emb(&base, &res2))?;
        Ok(Basic2Report {
            t: ts,
            units_coincide: units,
            beta_product: prod1 == prod2,
            base_restriction: base_eq,
            scope: r,
        })
    }
}

/// Whether `χ(1+x) = ψ_K(c·x)` holds on `U^{(d/2)+}` for `χ = ψ_K(c·log)` of depth `d`:
/// the `x^p/p` term of the logarithm must stay inside the kernel of `ψ_K`.
pub fn linear_regime(p: u64, e: u32, d: Q) -> bool {
    let e = e as i128;
    let v0 = Q::new((d * Q::from_integer(e) / Q::from_integer(2)).floor().to_integer() + 1, e);
    Q::from_integer(p as i128) * v0 >= Q::from_integer(1) + d + Q::new(1, e)
}

/// Least positive element of `x + Z`.
fn least_positive(x: Q) -> Q {
    let f = x - x.floor();
    if f == Q::from_integer(0) {
        Q::from_integer(1)
    } else {
        f
    }
}

/// Lower bound for `t_β(r)` from the valuations of the monomials of `u^±_α(β)`.
///
/// The `-` side only exists for degree-`s` fields when some `α` has `-d < val α < 0`,
/// which needs `d > 1/s`.
pub fn t_beta_congruence(d: Q, r: u32) -> Q {
    let mut best: Option<Q> = None;
    for s in 1..r as i128 {
        for i in 1..=s {
            let id = d * Q::from_integer(i);
            let mut cands = vec![least_positive(-id)];
            if d > Q::new(1, s) {
                cands.push(least_positive(id));
            }
            for c in cands {
                if best.is_none_or(|b| c < b) {
                    best = Some(c);
                }
            }
        }
    }
    best.unwrap_or(Q::from_integer(i64::MAX as i128))
}

/// Distance from `d` to the nearest integer.
pub fn dist_to_z(d: Q) -> Q {
    let f = d - d.floor();
    f.min(Q::from_integer(1) - f)
}

/// Least `r ≥ 1` with `r·m ≡ ±1 (mod M)`.
pub fn least_r(m: i64, big_m: i64) -> Option<i64> {
    (1..=big_m).find(|r| {
        let x = (r * m).rem_euclid(big_m);
        x == 1 || x == big_m - 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{AbsElt, FieldSpec};

    fn setup(p: u64, specs: &[FieldSpec]) -> (Ambient, Vec<Field>) {
        let amb = Ambient::for_specs(p, specs).unwrap();
        let ks = specs.iter().map(|s| amb.embed(s).unwrap()).collect();
        (amb, ks)
    }

    #[test]
    fn gauss_sum_odd_collapses() {
        let spec = FieldSpec { f: 1, e: 2, c: 0 };
        let (amb, ks) = setup(5, &[spec]);
        let chi = MultChar::new(5, spec, Root::one(), 1, AbsElt::unif_pow(-3));
        let (g, h) = amb.gauss_sum(&amb.emb(&ks[0], &chi)).unwrap();
        assert!(g.equals(&CycValue::one()) && h == 0);
    }

    #[test]
    fn gauss_sum_unit_modulus() {
        // E = Q_5, depth 2: five-term sum over U^1/U^2
        let spec = FieldSpec::base();
        let (amb, ks) = setup(5, &[spec]);
        let wild = AbsElt::unif_pow(-2).add(&AbsElt::monomial(3, 0, -1));
        let chi = MultChar::new(5, spec, Root::new(1, 3), 2, wild);
        let (g, h) = amb.gauss_sum(&amb.emb(&ks[0], &chi)).unwrap();
        assert_eq!(h, -1);
        let norm = g.mul(&g.conjugate());
        assert_eq!(norm.as_rational(), Some(Q::from_integer(5)));
    }

    #[test]
    fn unramified_functional_equation() {
        let spec = FieldSpec { f: 2, e: 1, c: 0 };
        let (amb, ks) = setup(5, &[spec]);
        for z in [Root::one(), Root::new(1, 4), Root::minus_one()] {
            let chi = MultChar::new(5, spec, z, 0, AbsElt::zero());
            let a = amb.tate_gamma(&amb.emb(&ks[0], &chi)).unwrap();
            let b = amb.tate_gamma(&amb.emb(&ks[0], &chi.inv(5))).unwrap().reflect();
            assert!(a.mul(&b).equals(&LocalFactor::one(5)));
        }
    }

    #[test]
    fn ramified_functional_equation() {
        let spec = FieldSpec { f: 1, e: 2, c: 1 };
        let (amb, ks) = setup(7, &[spec]);
        let k = &ks[0];
        let minus1 = amb.int(-1);
        for (tame, wild) in [(3, AbsElt::zero()), (1, AbsElt::unif_pow(-3)), (0, AbsElt::unif_pow(-2))] {
            let chi = MultChar::new(7, spec, Root::new(1, 6), tame, wild);
            let a = amb.tate_gamma(&amb.emb(k, &chi)).unwrap();
            let b = amb.tate_gamma(&amb.emb(k, &chi.inv(7))).unwrap().reflect();
            let sign = amb.eval_char(k, &chi, &minus1).unwrap();
            assert!(a.mul(&b).equals(&LocalFactor::monomial(7, sign, 0, 0)), "tame {tame}");
        }
    }

    #[test]
    fn t_beta_r2() {
        for (m, big_m) in [(5, 8), (7, 4), (3, 2), (5, 3)] {
            let d = Q::new(m, big_m);
            let t = t_beta_congruence(d, 2);
            if d > Q::from_integer(1) {
                assert_eq!(t, dist_to_z(d));
            } else {
                assert_eq!(t, Q::from_integer(1) - d);
            }
        }
        assert_eq!(least_r(5, 8), Some(3));
        assert!(t_beta_congruence(Q::new(5, 8), 3) > Q::new(1, 8));
    }
}
