//! Tame extensions of `Q_p` as fixed fields inside an [`Ambient`].

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{LambdaSymbol, Root};
use crate::padic::{gcd, powmod, solve_linear, Ambient, GalElt, TElt};

/// Hasse data of a tame extension: `ϖ^e = ζ^c·p`, `ζ` generating `μ_{p^f-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub f: u32,
    pub e: u32,
    pub c: u64,
}

impl FieldSpec {
    pub fn new(p: u64, f: u32, e: u32, c: u64) -> Result<FieldSpec> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::Config(format!("p = {p} must be odd")));
        }
        if f == 0 || e == 0 {
            return Err(Error::Config("degrees must be positive".into()));
        }
        if e as u64 % p == 0 {
            return Err(Error::Config(format!("e = {e} is divisible by p = {p}")));
        }
        let qf = p.checked_pow(f).ok_or_else(|| Error::Config("residue field too large".into()))?;
        Ok(FieldSpec { f, e, c: c % (qf - 1) })
    }

    pub fn base() -> FieldSpec {
        FieldSpec { f: 1, e: 1, c: 0 }
    }

    pub fn degree(&self) -> u32 {
        self.e * self.f
    }

    pub fn q(&self, p: u64) -> u64 {
        p.pow(self.f)
    }

    /// Canonical representative of the iso-class of the twist.
    pub fn twist_class(&self, p: u64) -> u64 {
        let qm1 = self.q(p) - 1;
        let g = gcd(self.e as i128, qm1 as i128) as u64;
        let mut best = self.c % g;
        let mut c = self.c % g;
        for _ in 0..self.f {
            c = (c * p) % g;
            best = best.min(c);
        }
        best
    }

    pub fn lambda(&self, p: u64) -> LambdaSymbol {
        LambdaSymbol {
            f: self.f,
            e: self.e,
            twist: self.twist_class(p),
        }
    }

    pub fn iso(&self, o: &FieldSpec, p: u64) -> bool {
        self.f == o.f && self.e == o.e && self.twist_class(p) == o.twist_class(p)
    }
}

/// `Σ coef·ζ^t·ϖ^j` in a field given by a [`FieldSpec`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbsElt {
    pub terms: Vec<(i64, u64, i64)>,
}

impl AbsElt {
    pub fn zero() -> AbsElt {
        AbsElt { terms: Vec::new() }
    }

    pub fn monomial(coef: i64, teich: u64, pow: i64) -> AbsElt {
        AbsElt {
            terms: vec![(coef, teich, pow)],
        }
    }

    pub fn unif_pow(pow: i64) -> AbsElt {
        AbsElt::monomial(1, 0, pow)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.0 == 0)
    }

    pub fn add(&self, o: &AbsElt) -> AbsElt {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().copied());
        AbsElt { terms }.merged()
    }

    pub fn neg(&self) -> AbsElt {
        AbsElt {
            terms: self.terms.iter().map(|(a, t, j)| (-a, *t, *j)).collect(),
        }
    }

    fn merged(self) -> AbsElt {
        let mut m: HashMap<(u64, i64), i64> = HashMap::new();
        for (a, t, j) in self.terms {
            *m.entry((t, j)).or_default() += a;
        }
        let mut terms: Vec<_> = m.into_iter().filter(|(_, a)| *a != 0).map(|((t, j), a)| (a, t, j)).collect();
        terms.sort_by_key(|(a, t, j)| (*j, *t, *a));
        AbsElt { terms }
    }
}

/// A subfield of the ambient field, with its canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    pub spec: FieldSpec,
    /// Sorted stabilizer in `Gal(T/Q_p)`.
    pub stab: Vec<GalElt>,
    /// `ζ_K = X^{zeta_exp}`.
    pub zeta_exp: u64,
    /// `ϖ_K = π^{E/e}·X^{unif_j}`.
    pub unif_j: u64,
}

impl Field {
    pub fn degree(&self) -> u32 {
        self.spec.degree()
    }

    pub fn contains(&self, sub: &Field) -> bool {
        self.stab.iter().all(|g| sub.stab.binary_search(g).is_ok())
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a as i128, b as i128) as u64 * b
}

impl Ambient {
    /// Smallest ambient containing Galois closures of all `specs`.
    pub fn for_specs(p: u64, specs: &[FieldSpec]) -> Result<Ambient> {
        let (f, e) = ambient_shape(p, specs)?;
        Ambient::new(p, f, e)
    }

    fn unit_scale(&self, f: u32) -> u64 {
        self.n_units / (self.p.pow(f) - 1)
    }

    /// The canonical embedding of a field spec.
    pub fn embed(&self, spec: &FieldSpec) -> Result<Field> {
        let (fdeg, edeg) = (self.fdeg as u64, self.edeg as u64);
        if fdeg % spec.f as u64 != 0 || edeg % spec.e as u64 != 0 {
            return Err(Error::Config(format!("{spec:?} does not fit in the ambient field")));
        }
        let n = self.n_units as i128;
        let s = self.unit_scale(spec.f);
        let (j, _) = solve_linear(spec.e as i128, (spec.c as i128 * s as i128) % n, n)
            .ok_or_else(|| Error::Config(format!("ambient lacks a root for {spec:?}")))?;
        let j = j as u64;
        let stab = self
            .group()
            .iter()
            .copied()
            .filter(|g| self.fixes(g, spec.f, spec.e, j))
            .collect();
        Ok(Field {
            spec: *spec,
            stab,
            zeta_exp: s,
            unif_j: j,
        })
    }

    fn fixes(&self, g: &GalElt, f: u32, e: u32, j: u64) -> bool {
        if g.a % f != 0 {
            return false;
        }
        let n = self.n_units as i128;
        let pa = powmod(self.p, g.a as u64, self.n_units) as i128;
        let lhs = (g.b as i128) * (n / self.edeg as i128) * (self.edeg as i128 / e as i128) + j as i128 * (pa - 1);
        lhs.rem_euclid(n) == 0
    }

    pub fn base_field(&self) -> Field {
        self.embed(&FieldSpec::base()).expect("base field embeds")
    }

    pub fn top_field(&self) -> Field {
        self.fixed_field(&[GalElt { a: 0, b: 0 }])
    }

    /// Fixed field of a subgroup (given by any generating set containing the subgroup).
    pub fn fixed_field(&self, gens: &[GalElt]) -> Field {
        let h = self.closure(gens);
        let inert = h.iter().filter(|g| g.a == 0).count();
        let e = (self.edeg / inert) as u32;
        let f = (self.fdeg / (h.len() / inert)) as u32;
        let n = self.n_units as i128;
        let mut j0: i128 = 0;
        let mut m: i128 = 1;
        // b·N/e + j·(p^a - 1) ≡ 0 for all (a, b) in h
        for g in &h {
            let pa = powmod(self.p, g.a as u64, self.n_units) as i128;
            let a_coef = (pa - 1).rem_euclid(n);
            let rhs = (-(g.b as i128) * (n / e as i128)).rem_euclid(n);
            let (t, step) = solve_linear((a_coef * m) % n, (rhs - a_coef * j0).rem_euclid(n), n)
                .expect("fixed field has a uniformizer");
            j0 = (j0 + m * t).rem_euclid(n);
            m = gcd(m * step, n);
            if m == 0 {
                m = n;
            }
        }
        let j = j0 as u64;
        let s = self.unit_scale(f);
        let ej = (e as u64 * j) % self.n_units;
        debug_assert_eq!(ej % s, 0);
        let c = (ej / s) % (self.p.pow(f) - 1);
        Field {
            spec: FieldSpec { f, e, c },
            stab: h,
            zeta_exp: s,
            unif_j: j,
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[GalElt]) -> Vec<GalElt> {
        let mut set: BTreeSet<GalElt> = BTreeSet::new();
        set.insert(GalElt { a: 0, b: 0 });
        let mut frontier: Vec<GalElt> = vec![GalElt { a: 0, b: 0 }];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.compose(x, *g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn intersect(&self, a: &[GalElt], b: &[GalElt]) -> Vec<GalElt> {
        a.iter().copied().filter(|g| b.binary_search(g).is_ok()).collect()
    }

    /// Compositum of two embedded fields.
    pub fn compositum(&self, a: &Field, b: &Field) -> Field {
        self.fixed_field(&self.intersect(&a.stab, &b.stab))
    }

    /// `g(K)`.
    pub fn conj_field(&self, g: GalElt, k: &Field) -> Field {
        let gi = self.inverse(g);
        let h: Vec<GalElt> = k.stab.iter().map(|x| self.compose(self.compose(g, *x), gi)).collect();
        self.fixed_field(&h)
    }

    /// Representatives of the left cosets `g·inner` inside `outer`.
    pub fn cosets(&self, outer: &[GalElt], inner: &[GalElt]) -> Vec<GalElt> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for g in outer {
            if seen.contains(g) {
                continue;
            }
            reps.push(*g);
            for h in inner {
                seen.insert(self.compose(*g, *h));
            }
        }
        reps
    }

    /// Representatives of `left \ G / right`.
    pub fn double_cosets(&self, left: &[GalElt], right: &[GalElt]) -> Vec<GalElt> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for g in self.group() {
            if seen.contains(g) {
                continue;
            }
            reps.push(*g);
            for l in left {
                let lg = self.compose(*l, *g);
                for r in right {
                    seen.insert(self.compose(lg, *r));
                }
            }
        }
        reps
    }

    /// Elements `g` with `g(K) = K`, one per automorphism of `K/F`.
    pub fn automorphisms(&self, k: &Field) -> Vec<GalElt> {
        let normalizer: Vec<GalElt> = self
            .group()
            .iter()
            .copied()
            .filter(|g| self.conj_field(*g, k).stab == k.stab)
            .collect();
        self.cosets(&normalizer, &k.stab)
    }

    /// F-embeddings of `src` (canonically embedded) onto the embedded field `dst`.
    pub fn isomorphisms(&self, src: &Field, dst: &Field) -> Vec<GalElt> {
        self.cosets(self.group(), &src.stab)
            .into_iter()
            .filter(|g| self.conj_field(*g, src).stab == dst.stab)
            .collect()
    }

    /// All intermediate fields `k ⊆ L ⊆ Q_p`, including both ends.
    pub fn subfields(&self, k: &Field) -> Vec<Field> {
        let mut groups: BTreeSet<Vec<GalElt>> = BTreeSet::new();
        groups.insert(k.stab.clone());
        let mut frontier = vec![k.stab.clone()];
        while let Some(h) = frontier.pop() {
            for g in self.group() {
                if h.binary_search(g).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(*g);
                let c = self.closure(&gens);
                if groups.insert(c.clone()) {
                    frontier.push(c);
                }
            }
        }
        let mut out: Vec<Field> = groups.into_iter().map(|h| self.fixed_field(&h)).collect();
        out.sort_by_key(|f| (f.degree(), f.spec));
        out
    }

    /// Double-coset decomposition of `E ⊗ L`: one `(g, K_g = g(E)·L)` per coset.
    pub fn tensor_decompose(&self, e: &Field, l: &Field) -> Vec<(GalElt, Field)> {
        self.double_cosets(&l.stab, &e.stab)
            .into_iter()
            .map(|g| {
                let ge = self.conj_field(g, e);
                (g, self.compositum(&ge, l))
            })
            .collect()
    }

    // ---- elements ---------------------------------------------------------

    pub fn unif(&self, k: &Field) -> TElt {
        self.teich_pi(k.unif_j, (self.edeg / k.spec.e as usize) as i64)
    }

    pub fn unif_pow(&self, k: &Field, n: i64) -> TElt {
        let j = ((k.unif_j as i128 * n as i128).rem_euclid(self.n_units as i128)) as u64;
        self.teich_pi(j, n * (self.edeg / k.spec.e as usize) as i64)
    }

    /// `ζ_K^t`.
    pub fn zeta(&self, k: &Field, t: u64) -> TElt {
        self.teich_pi(((t as u128 * k.zeta_exp as u128) % self.n_units as u128) as u64, 0)
    }

    pub fn realize(&self, k: &Field, x: &AbsElt) -> TElt {
        let mut acc = self.zero();
        for (a, t, j) in &x.terms {
            let term = self.mul(&self.mul(&self.zeta(k, *t), &self.unif_pow(k, *j)), &self.int(*a));
            acc = self.add(&acc, &term);
        }
        acc
    }

    /// Valuation normalized so that `val(p) = 1`.
    pub fn val(&self, x: &TElt) -> Option<crate::Q> {
        self.val_pi(x).map(|v| crate::Q::new(v as i128, self.edeg as i128))
    }

    /// `x = ϖ_K^a·ζ_K^b·u` with `u` a principal unit.
    pub fn decompose(&self, k: &Field, x: &TElt) -> Result<(i64, u64, TElt)> {
        let v = self
            .val_pi(x)
            .ok_or_else(|| Error::Precision("decomposing zero".into()))?;
        let step = (self.edeg / k.spec.e as usize) as i64;
        if v % step != 0 {
            return Err(Error::Precision("element not in the field".into()));
        }
        let a = v / step;
        let j = ((k.unif_j as i128 * a as i128).rem_euclid(self.n_units as i128)) as u64;
        let u1 = self.mul_pi_pow(x, -v);
        let u1 = self.mul_teich(&u1, (self.n_units - j) % self.n_units);
        let n = self.dlog(&self.residue(&u1)?)?;
        if n % k.zeta_exp != 0 {
            return Err(Error::Precision("residue not in the field".into()));
        }
        let b = n / k.zeta_exp;
        let u = self.mul_teich(&u1, (self.n_units - n) % self.n_units);
        Ok((a, b, u))
    }

    /// `Σ g(x)` over embeddings of `from` fixing `to`.
    pub fn trace(&self, x: &TElt, from: &Field, to: &Field) -> TElt {
        self.sum_conjugates(&self.cosets(&to.stab, &from.stab), x)
    }

    pub fn norm(&self, x: &TElt, from: &Field, to: &Field) -> TElt {
        self.prod_conjugates(&self.cosets(&to.stab, &from.stab), x)
    }

    /// `ψ_F` of an element of `Q_p`.
    pub fn psi(&self, t: &TElt) -> Result<Root> {
        if t.prec < self.edeg as i64 {
            return Err(Error::Precision("additive character needs the value modulo p".into()));
        }
        if !self.is_rational(t) {
            return Err(Error::Precision("trace did not land in Q_p".into()));
        }
        // level one: x ↦ exp(2πi·{x/p})
        let (num, s) = self.as_qp(t);
        let s = s + 1;
        if s <= 0 {
            return Ok(Root::one());
        }
        if s as u32 > self.k {
            return Err(Error::Precision("additive character argument too deep".into()));
        }
        let ps = self.p.pow(s as u32);
        Ok(Root::new((num % ps) as i64, ps as i64))
    }

    /// `ψ_K = ψ_F∘tr_{K/F}`.
    pub fn psi_field(&self, k: &Field, x: &TElt) -> Result<Root> {
        let b = self.base_field();
        self.psi(&self.trace(x, k, &b))
    }

    /// Coefficients (low to high, monic) of `∏_σ (X - σ(α))` over `F`.
    pub fn char_poly(&self, k: &Field, alpha: &TElt) -> Vec<TElt> {
        let conj = self.cosets(self.group(), &k.stab);
        let mut poly = vec![self.one()];
        for g in conj {
            let root = self.act(g, alpha);
            let mut next = vec![self.zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] = self.add(&next[d + 1], c);
                next[d] = self.sub(&next[d], &self.mul(c, &root));
            }
            poly = next;
        }
        poly
    }

    /// Evaluates a polynomial (low to high) at `x`.
    pub fn eval_poly(&self, poly: &[TElt], x: &TElt) -> TElt {
        let mut acc = self.zero();
        for c in poly.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Reads an element of `Q_p` as an abstract base-field element.
    pub fn to_abs_rational(&self, t: &TElt) -> AbsElt {
        let (num, s) = self.as_qp(t);
        if num == 0 {
            return AbsElt::zero();
        }
        let signed = if num > self.pk / 2 { num as i64 - self.pk as i64 } else { num as i64 };
        AbsElt::monomial(signed, 0, -s).merged()
    }
}

/// Residue degree and ramification index of the smallest suitable ambient.
pub fn ambient_shape(p: u64, specs: &[FieldSpec]) -> Result<(usize, usize)> {
    let mut e: u64 = 1;
    let mut f0: u64 = 1;
    for s in specs {
        e = lcm(e, s.e as u64);
        f0 = lcm(f0, s.f as u64);
    }
    let mut f = f0;
    loop {
        let q = (p as u128).checked_pow(f as u32).filter(|q| *q < (1u128 << 50));
        let Some(q) = q else {
            return Err(Error::Config(format!("no ambient field small enough for {specs:?} at p = {p}")));
        };
        let n = (q - 1) as u64;
        let ok = n % e == 0
            && specs.iter().all(|s| {
                let scale = n / (p.pow(s.f) - 1);
                let g = gcd(s.e as i128, n as i128) as u64;
                ((s.c as u128 * scale as u128) % g as u128) == 0
            });
        if ok {
            return Ok((f as usize, e as usize));
        }
        f += f0;
    }
}

/// Shared cache of ambient fields keyed by shape.
#[derive(Debug)]
pub struct Scene {
    pub p: u64,
    cache: Mutex<HashMap<(usize, usize), Arc<Ambient>>>,
}

impl Scene {
    pub fn new(p: u64) -> Result<Scene> {
        if p < 3 || !crate::padic::is_prime(p) {
            return Err(Error::Config(format!("p = {p} must be an odd prime")));
        }
        Ok(Scene {
            p,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// An ambient large enough for every spec in `specs`.
    pub fn ambient(&self, specs: &[FieldSpec]) -> Result<Arc<Ambient>> {
        let shape = ambient_shape(self.p, specs)?;
        if let Some(a) = self.cache.lock().expect("cache lock").get(&shape) {
            return Ok(a.clone());
        }
        let amb = Arc::new(Ambient::new(self.p, shape.0, shape.1)?);
        self.cache.lock().expect("cache lock").insert(shape, amb.clone());
        Ok(amb)
    }

    pub fn spec(&self, f: u32, e: u32, c: u64) -> Result<FieldSpec> {
        FieldSpec::new(self.p, f, e, c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniformizer_satisfies_its_equation() {
        let amb = Ambient::for_specs(7, &[FieldSpec { f: 2, e: 3, c: 5 }]).unwrap();
        let k = amb.embed(&FieldSpec { f: 2, e: 3, c: 5 }).unwrap();
        let lhs = amb.pow(&amb.unif(&k), 3);
        let rhs = amb.mul(&amb.zeta(&k, 5), &amb.int(7));
        assert!(amb.eq(&lhs, &rhs));
        for g in &k.stab {
            assert!(amb.eq(&amb.act(*g, &amb.unif(&k)), &amb.unif(&k)));
        }
        assert_eq!(amb.group().len() / k.stab.len(), 6);
    }

    #[test]
    fn fixed_field_recovers_spec() {
        let amb = Ambient::for_specs(5, &[FieldSpec { f: 1, e: 4, c: 1 }, FieldSpec { f: 2, e: 1, c: 0 }]).unwrap();
        for spec in [FieldSpec { f: 1, e: 4, c: 1 }, FieldSpec { f: 2, e: 1, c: 0 }, FieldSpec { f: 1, e: 2, c: 1 }] {
            let k = amb.embed(&spec).unwrap();
            let k2 = amb.fixed_field(&k.stab);
            assert_eq!(k2.spec.f, spec.f);
            assert_eq!(k2.spec.e, spec.e);
            assert_eq!(k2.spec.twist_class(5), spec.twist_class(5));
        }
    }

    #[test]
    fn norm_of_uniformizer() {
        let p = 5;
        let spec = FieldSpec { f: 1, e: 4, c: 3 };
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let k = amb.embed(&spec).unwrap();
        let base = amb.base_field();
        let n = amb.norm(&amb.unif(&k), &k, &base);
        // (-1)^{e+1} ζ^c p
        let expect = amb.neg(&amb.mul(&amb.zeta(&k, 3), &amb.int(5)));
        assert!(amb.eq(&n, &expect));
        let t = amb.trace(&amb.one(), &k, &base);
        assert!(amb.eq(&t, &amb.int(4)));
    }

    #[test]
    fn decompose_roundtrip() {
        let spec = FieldSpec { f: 2, e: 2, c: 1 };
        let amb = Ambient::for_specs(7, &[spec]).unwrap();
        let k = amb.embed(&spec).unwrap();
        let x = amb.add(&amb.mul(&amb.zeta(&k, 11), &amb.unif_pow(&k, -3)), &amb.unif_pow(&k, 1));
        let (a, b, u) = amb.decompose(&k, &x).unwrap();
        assert_eq!((a, b), (-3, 11));
        let back = amb.mul(&amb.mul(&amb.unif_pow(&k, a), &amb.zeta(&k, b)), &u);
        assert!(amb.eq(&back, &x));
        let (a, b, _) = amb.decompose(&k, &amb.int(-1)).unwrap();
        assert_eq!((a, b), (0, 24));
    }

    #[test]
    fn tensor_degrees_add_up() {
        let e = FieldSpec { f: 1, e: 4, c: 0 };
        let l = FieldSpec { f: 1, e: 2, c: 0 };
        let amb = Ambient::for_specs(5, &[e, l]).unwrap();
        let (ef, lf) = (amb.embed(&e).unwrap(), amb.embed(&l).unwrap());
        let parts = amb.tensor_decompose(&ef, &lf);
        let total: u32 = parts.iter().map(|(_, k)| k.degree()).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn subfield_counts() {
        let spec = FieldSpec { f: 1, e: 6, c: 0 };
        let amb = Ambient::for_specs(7, &[spec]).unwrap();
        let k = amb.embed(&spec).unwrap();
        let degs: Vec<u32> = amb.subfields(&k).iter().map(|f| f.degree()).collect();
        assert_eq!(degs, vec![1, 2, 3, 6]);
        let spec = FieldSpec { f: 4, e: 1, c: 0 };
        let amb = Ambient::for_specs(5, &[spec]).unwrap();
        let k = amb.embed(&spec).unwrap();
        let degs: Vec<u32> = amb.subfields(&k).iter().map(|f| f.degree()).collect();
        assert_eq!(degs, vec![1, 2, 4]);
    }

    #[test]
    fn char_poly_kills_alpha() {
        let spec = FieldSpec { f: 1, e: 2, c: 0 };
        let amb = Ambient::for_specs(7, &[spec]).unwrap();
        let k = amb.embed(&spec).unwrap();
        let poly = amb.char_poly(&k, &amb.unif(&k));
        assert_eq!(poly.len(), 3);
        assert!(amb.eq(&poly[0], &amb.int(-7)));
        assert!(amb.is_zero(&poly[1]));
        let alpha = amb.add(&amb.unif_pow(&k, -1), &amb.int(3));
        let poly = amb.char_poly(&k, &alpha);
        assert!(amb.is_zero(&amb.eval_poly(&poly, &alpha)));
    }

    #[test]
    fn psi_is_level_one() {
        let amb = Ambient::new(5, 1, 1).unwrap();
        assert!(amb.psi(&amb.int(5)).unwrap().is_one());
        assert_eq!(amb.psi(&amb.int(3)).unwrap(), Root::new(3, 5));
        let x = amb.mul_pi_pow(&amb.int(2), -1);
        assert_eq!(amb.psi(&x).unwrap(), Root::new(2, 25));
    }
}
