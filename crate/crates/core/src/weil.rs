//! Semisimple Weil-group representations as formal multisets of induced summands.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::character::{EmbChar, MultChar, Parity};
use crate::error::{Error, Result};
use crate::exact::Root;
use crate::factors::GammaProduct;
use crate::field::{Field, FieldSpec};
use crate::padic::Ambient;

/// `Ind_{E/F} χ ⊗ st_a`; a character of `F^×` when `E = F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub chi: MultChar,
    pub sl2: u32,
}

impl Summand {
    pub fn new(chi: MultChar) -> Summand {
        Summand { chi, sl2: 1 }
    }

    pub fn dim(&self) -> u32 {
        self.chi.field.degree() * self.sl2
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilRep {
    pub summands: Vec<Summand>,
}

impl WeilRep {
    pub fn new(chis: impl IntoIterator<Item = MultChar>) -> WeilRep {
        WeilRep {
            summands: chis.into_iter().map(Summand::new).collect(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.summands.iter().map(Summand::dim).sum()
    }

    pub fn specs(&self) -> Vec<FieldSpec> {
        let mut v: Vec<FieldSpec> = self.summands.iter().map(|s| s.chi.field).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn dual(&self, p: u64) -> WeilRep {
        WeilRep {
            summands: self
                .summands
                .iter()
                .map(|s| Summand {
                    chi: s.chi.inv(p),
                    sl2: s.sl2,
                })
                .collect(),
        }
    }

    pub fn plus(&self, o: &WeilRep) -> WeilRep {
        let mut summands = self.summands.clone();
        summands.extend(o.summands.iter().cloned());
        WeilRep { summands }
    }
}

impl fmt::Display for WeilRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| if s.sl2 == 1 { format!("Ind {}", s.chi) } else { format!("Ind {}⊗st{}", s.chi, s.sl2) })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Group {
    Sp(u32),
    SOEven(u32),
    SOOdd(u32),
    GL(u32),
    G2,
}

impl Group {
    /// Dimension of the standard representation of the dual group.
    pub fn std_dim(&self) -> u32 {
        match *self {
            Group::Sp(n) => 2 * n + 1,
            Group::SOEven(n) | Group::SOOdd(n) => 2 * n,
            Group::GL(n) => n,
            Group::G2 => 7,
        }
    }

    /// Form preserved by the dual group's standard representation.
    pub fn form(&self) -> Option<Parity> {
        match self {
            Group::Sp(_) | Group::SOEven(_) | Group::G2 => Some(Parity::Orthogonal),
            Group::SOOdd(_) => Some(Parity::Symplectic),
            Group::GL(_) => None,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Sp(n) => write!(f, "Sp{}", 2 * n),
            Group::SOEven(n) => write!(f, "SO{}", 2 * n),
            Group::SOOdd(n) => write!(f, "SO{}", 2 * n + 1),
            Group::GL(n) => write!(f, "GL{n}"),
            Group::G2 => write!(f, "G2"),
        }
    }
}

/// A parameter, recorded through its composition with the standard representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GParameter {
    pub group: Group,
    pub std: WeilRep,
}

/// Output of the degree-four exterior power identities.
#[derive(Clone, Debug)]
pub struct WedgeIdentities {
    /// `∧³ρ = ρ^∨ ⊗ ω`.
    pub wedge3: WeilRep,
    /// Unramified `η` (as `η(p)`) of order dividing 8 with `ρ_χ ≅ ρ_{χ'} ⊗ η`.
    pub twists: Vec<Root>,
    pub wedge2_equal: bool,
    pub wedge4_equal: bool,
}

impl Ambient {
    pub fn summand_field(&self, s: &Summand) -> Result<Field> {
        self.embed(&s.chi.field)
    }

    fn summand_equivalent(&self, a: &Summand, b: &Summand) -> Result<bool> {
        if a.sl2 != b.sl2 || a.chi.field.degree() != b.chi.field.degree() {
            return Ok(false);
        }
        let ka = self.summand_field(a)?;
        let kb = self.summand_field(b)?;
        self.pair_equivalent((&ka, &a.chi), (&kb, &b.chi))
    }

    pub fn summand_admissible(&self, s: &Summand) -> Result<bool> {
        let k = self.summand_field(s)?;
        self.is_admissible(&k, &s.chi)
    }

    /// Equivalence by matching summands up to conjugacy.
    ///
    /// A failed match only proves inequivalence when every unmatched summand is irreducible.
    pub fn rep_equivalent(&self, a: &WeilRep, b: &WeilRep) -> Result<bool> {
        if a.dim() != b.dim() {
            return Ok(false);
        }
        let mut used = vec![false; b.summands.len()];
        let mut left = Vec::new();
        for s in &a.summands {
            let mut found = false;
            for (i, t) in b.summands.iter().enumerate() {
                if !used[i] && self.summand_equivalent(s, t)? {
                    used[i] = true;
                    found = true;
                    break;
                }
            }
            if !found {
                left.push(s.clone());
            }
        }
        if left.is_empty() {
            return Ok(true);
        }
        let right: Vec<&Summand> = b.summands.iter().zip(&used).filter(|(_, u)| !**u).map(|(s, _)| s).collect();
        for s in left.iter().chain(right.iter().copied()) {
            if !self.summand_admissible(s)? {
                return Err(Error::Unavailable("unmatched summand is not irreducible".into()));
            }
        }
        Ok(false)
    }

    /// `det R` as a character of `F^×`.
    pub fn rep_det(&self, r: &WeilRep) -> Result<MultChar> {
        let mut acc = MultChar::trivial(FieldSpec::base());
        for s in &r.summands {
            let k = self.summand_field(s)?;
            let w = self.det_induced(&k, &s.chi)?;
            for _ in 0..s.sl2 {
                acc = acc.mul(&w, self.p);
            }
        }
        Ok(acc)
    }

    pub fn is_trivial_char(&self, chi: &MultChar) -> Result<bool> {
        let k = self.embed(&chi.field)?;
        let t = MultChar::trivial(chi.field);
        self.emb_equal(&self.emb(&k, chi), &self.emb(&k, &t))
    }

    /// `Ind χ ⊗ Ind η` summand by summand; summands need not be irreducible.
    pub fn tensor_pairs(&self, e: &Field, chi: &MultChar, l: &Field, eta: &MultChar) -> Result<WeilRep> {
        let mut out = WeilRep::default();
        for (g, kg) in self.tensor_decompose(e, l) {
            let theta = self.twist_char(g, e, chi, l, eta, &kg);
            out.summands.push(Summand::new(self.to_multchar(&theta)?));
        }
        Ok(out)
    }

    /// Restriction to `W_L` for Galois `L` containing every inducing field, with multiplicities.
    pub fn restrict_to(&self, r: &WeilRep, l: &Field) -> Result<Vec<(EmbChar, u32)>> {
        let mut out = Vec::new();
        for s in &r.summands {
            let k = self.summand_field(s)?;
            if !l.contains(&k) {
                return Err(Error::Config("restriction field does not contain an inducing field".into()));
            }
            let base = self.base_field();
            for g in self.cosets(&base.stab, &k.stab) {
                if !l.contains(&self.conj_field(g, &k)) {
                    return Err(Error::Config("restriction field is not Galois".into()));
                }
                let c = self.conj_emb(g, &self.emb(&k, &s.chi));
                out.push((self.inflate(&c, l), s.sl2));
            }
        }
        Ok(out)
    }

    /// Parity of a self-dual summand, `None` if it is not self-dual.
    pub fn summand_parity(&self, s: &Summand) -> Result<Option<Parity>> {
        let k = self.summand_field(s)?;
        let base = if k.degree() == 1 {
            let sq = s.chi.mul(&s.chi, self.p);
            if self.is_trivial_char(&sq)? {
                Some(Parity::Orthogonal)
            } else {
                None
            }
        } else {
            self.self_dual(&k, &s.chi)?.map(|(_, _, par)| par)
        };
        Ok(base.map(|par| {
            if s.sl2 % 2 == 0 {
                match par {
                    Parity::Orthogonal => Parity::Symplectic,
                    Parity::Symplectic => Parity::Orthogonal,
                }
            } else {
                par
            }
        }))
    }

    /// Validates a standard composition against the group's dimension, form and determinant.
    pub fn std_compose(&self, group: Group, std: WeilRep) -> Result<GParameter> {
        if std.dim() != group.std_dim() {
            return Err(Error::Config(format!("dimension {} does not match {} for {group}", std.dim(), group.std_dim())));
        }
        if let Some(form) = group.form() {
            if !self.rep_equivalent(&std, &std.dual(self.p))? {
                return Err(Error::Config(format!("standard composition for {group} is not self-dual")));
            }
            for s in &std.summands {
                if let Some(par) = self.summand_parity(s)? {
                    if par != form {
                        return Err(Error::Config(format!("summand parity {par:?} incompatible with {group}")));
                    }
                }
            }
            if form == Parity::Orthogonal && !self.is_trivial_char(&self.rep_det(&std)?)? {
                return Err(Error::Config(format!("determinant condition fails for {group}")));
            }
        }
        Ok(GParameter { group, std })
    }

    /// `γ(s, R ⊗ Ind η, ψ_F)`, with `st_a` tags contributing shifted copies.
    pub fn gamma_rep_twist(&self, r: &WeilRep, l: &Field, eta: &MultChar) -> Result<GammaProduct> {
        let mut out = GammaProduct::one(self.p);
        for s in &r.summands {
            let k = self.summand_field(s)?;
            let g = self.gamma_induced_twist(&k, &s.chi, l, eta)?;
            let a = s.sl2 as i64;
            // k2 = 2k for k = (1-a)/2, ..., (a-1)/2
            for k2 in ((1 - a)..=(a - 1)).step_by(2) {
                out = out.mul(&g.shift_half(k2));
            }
        }
        Ok(out)
    }

    /// Multiset equality of characters of a common field.
    pub fn char_multiset_eq(&self, a: &[EmbChar], b: &[EmbChar]) -> Result<bool> {
        if a.len() != b.len() {
            return Ok(false);
        }
        let mut used = vec![false; b.len()];
        for x in a {
            let mut hit = false;
            for (i, y) in b.iter().enumerate() {
                if !used[i] && self.emb_equal(x, y)? {
                    used[i] = true;
                    hit = true;
                    break;
                }
            }
            if !hit {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `W_L`-weights of the two halves of `∧³` for `⊕_{i=1}^3 Ind_{E_i/F} χ_i`, `[E_i:F] = 2`.
    pub fn wedge3_pm(&self, r: &WeilRep, l: &Field) -> Result<(Vec<EmbChar>, Vec<EmbChar>)> {
        let w = self.wedge_weights(r, l)?;
        let one = self.emb(l, &MultChar::trivial(l.spec));
        let prod = |xs: &[&EmbChar]| xs.iter().fold(one.clone(), |acc, x| self.mul_emb(&acc, x));
        let (pos, neg) = (&w.0, &w.1);
        let mut plus = vec![prod(&[&pos[0], &pos[1], &pos[2]])];
        let mut minus = vec![prod(&[&neg[0], &neg[1], &neg[2]])];
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            plus.push(prod(&[&pos[i], &neg[j], &neg[k]]));
            minus.push(prod(&[&neg[i], &pos[j], &pos[k]]));
            plus.push(pos[i].clone());
            plus.push(neg[i].clone());
            minus.push(pos[i].clone());
            minus.push(neg[i].clone());
        }
        Ok((plus, minus))
    }

    /// `(χ_{i,L}, χ_{i,L}^{-1})` for each of the three quadratic summands.
    pub fn wedge_weights(&self, r: &WeilRep, l: &Field) -> Result<(Vec<EmbChar>, Vec<EmbChar>)> {
        if r.summands.len() != 3 || r.summands.iter().any(|s| s.chi.field.degree() != 2 || s.sl2 != 1) {
            return Err(Error::Config("expected three two-dimensional induced summands".into()));
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for s in &r.summands {
            let k = self.summand_field(s)?;
            if !l.contains(&k) {
                return Err(Error::Config("weight field does not contain an inducing field".into()));
            }
            let c = self.inflate(&self.emb(&k, &s.chi), l);
            neg.push(self.inv_emb(&c));
            pos.push(c);
        }
        Ok((pos, neg))
    }

    /// Whether an orthogonal multiplicity-free `R` is conjugate to its outer twist:
    /// exactly when some self-dual summand has odd dimension.
    pub fn is_outer_self_conjugate(&self, r: &WeilRep) -> Result<bool> {
        let mut odd = false;
        for (i, s) in r.summands.iter().enumerate() {
            for t in &r.summands[..i] {
                if self.summand_equivalent(s, t)? {
                    return Err(Error::Config("representation is not multiplicity-free".into()));
                }
            }
            match self.summand_parity(s)? {
                Some(Parity::Symplectic) => return Err(Error::Config("symplectic summand in an orthogonal parameter".into())),
                Some(Parity::Orthogonal) if s.dim() % 2 == 1 => odd = true,
                _ => {}
            }
        }
        if !self.rep_equivalent(r, &r.dual(self.p))? {
            return Err(Error::Config("representation is not self-dual".into()));
        }
        Ok(odd)
    }

    /// `∧³` and the unramified-twist relation between two degree-four pairs.
    pub fn wedge_identities_4dim(&self, e: &Field, chi: &MultChar, chi2: &MultChar) -> Result<WedgeIdentities> {
        if e.degree() != 4 {
            return Err(Error::Config("exterior power identities need degree four".into()));
        }
        let omega = self.det_induced(e, chi)?;
        let omega_e = self.inflate_base(&omega, e)?;
        let wedge3 = WeilRep::new([chi.inv(self.p).mul(&omega_e, self.p)]);
        let mut twists = Vec::new();
        let fspec = self.base_field().spec;
        for k in 0..8 {
            let eta = MultChar::new(self.p, fspec, Root::new(k, 8), 0, Default::default());
            let eta_e = self.inflate_base(&eta, e)?;
            if self.pair_equivalent((e, chi), (e, &chi2.mul(&eta_e, self.p)))? {
                twists.push(Root::new(k, 8));
            }
        }
        let wedge2_equal = twists.iter().any(|t| t.pow(2).is_one());
        let omega2 = self.det_induced(e, chi2)?;
        let base = self.base_field();
        let wedge4_equal = self.emb_equal(&self.emb(&base, &omega), &self.emb(&base, &omega2))?;
        Ok(WedgeIdentities {
            wedge3,
            twists,
            wedge2_equal,
            wedge4_equal,
        })
    }

    /// `η∘N_{E/F}` as a character of `E`, relative to `E`'s own generators.
    pub fn inflate_base(&self, eta: &MultChar, e: &Field) -> Result<MultChar> {
        let base = self.base_field();
        let infl = self.inflate(&self.emb(&base, eta), e);
        self.to_multchar(&infl)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AbsElt;

    #[test]
    fn wedge3_matches_triples() {
        // weights of all 3-subsets of the six weights equal plus ⊎ minus
        let p = 7;
        let specs = [FieldSpec { f: 2, e: 1, c: 0 }, FieldSpec { f: 1, e: 2, c: 0 }, FieldSpec { f: 1, e: 2, c: 3 }];
        let amb = Ambient::for_specs(p, &specs).unwrap();
        let chis = [
            MultChar::new(p, specs[0], Root::one(), 12, AbsElt::zero()),
            MultChar::new(p, specs[1], Root::one(), 0, AbsElt::unif_pow(-3)),
            MultChar::new(p, specs[2], Root::minus_one(), 0, AbsElt::unif_pow(-5)),
        ];
        let r = WeilRep::new(chis.iter().cloned());
        let ks: Vec<Field> = specs.iter().map(|s| amb.embed(s).unwrap()).collect();
        let l = amb.compositum(&ks[0], &ks[1]);
        assert_eq!(l.degree(), 4);
        let (plus, minus) = amb.wedge3_pm(&r, &l).unwrap();
        assert_eq!((plus.len(), minus.len()), (10, 10));
        let (pos, neg) = amb.wedge_weights(&r, &l).unwrap();
        let six: Vec<EmbChar> = pos.into_iter().chain(neg).collect();
        let mut triples = Vec::new();
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    triples.push(amb.mul_emb(&amb.mul_emb(&six[a], &six[b]), &six[c]));
                }
            }
        }
        let all: Vec<EmbChar> = plus.iter().chain(minus.iter()).cloned().collect();
        assert!(amb.char_multiset_eq(&all, &triples).unwrap());
    }

    #[test]
    fn dual_and_det() {
        let p = 5;
        let spec = FieldSpec { f: 1, e: 2, c: 0 };
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let chi = MultChar::new(p, spec, Root::new(1, 3), 1, AbsElt::unif_pow(-3));
        let r = WeilRep::new([chi.clone(), chi.inv(p)]);
        assert!(amb.rep_equivalent(&r, &r.dual(p)).unwrap());
        let single = WeilRep::new([chi.clone()]);
        assert!(!amb.rep_equivalent(&single, &single.dual(p)).unwrap());
        assert_eq!(amb.rep_det(&r).unwrap().unif, Root::one());
    }
}
