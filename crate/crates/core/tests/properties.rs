use proptest::prelude::*;

use tamegamma::constructions::tame_specs;
use tamegamma::factors::linear_regime;
use tamegamma::padic::Ambient;
use tamegamma::{AbsElt, FieldSpec, MultChar, Parity, Root, Scene, WeilRep, Q};

fn small_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11])
}

/// `(p, spec, chi, k)` with `chi` of depth `k/e` in the linear range.
fn char_case() -> impl Strategy<Value = (u64, FieldSpec, MultChar, i64)> {
    (small_prime(), 1u32..3, 1u32..5, 0u64..8, 1i64..9, 0u64..1000, 0i64..12, 0i64..1000)
        .prop_filter_map("outside the linear range", |(p, f, e, c, k, t, u, tame)| {
            let qm1 = p.pow(f) - 1;
            let g = num_integer::gcd(e as u64, qm1);
            let k = 1 + (k - 1) % (2 * e as i64);
            if !linear_regime(p, e, Q::new(k as i128, e as i128)) {
                return None;
            }
            let spec = FieldSpec { f, e, c: c % g };
            let wild = AbsElt::monomial(1, t % qm1, -k);
            let chi = MultChar::new(p, spec, Root::new(u, 12), tame % qm1 as i64, wild);
            Some((p, spec, chi, k))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn valuation_is_additive(p in small_prime(), a in -5i64..6, b in -5i64..6, t in 0u64..24, s in 0u64..24) {
        let amb = Ambient::new(p, 2, 2).unwrap();
        let x = amb.add(&amb.teich_pi(t, a), &amb.teich_pi(s, a + 1));
        let y = amb.teich_pi(s, b);
        prop_assert_eq!(amb.val_pi(&amb.mul(&x, &y)), Some(a + b));
        let sum = amb.add(&x, &y);
        if let Some(v) = amb.val_pi(&sum) {
            prop_assert!(v >= a.min(b));
        }
    }

    #[test]
    fn representing_element_contract((p, spec, chi, k) in char_case(), seed in 0u64..1000) {
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let e = amb.embed(&spec).unwrap();
        let c = amb.realize(&e, &chi.wild);
        let qk = spec.q(p);
        let lo = k / 2 + 1;
        for i in 0..5u64 {
            let j = lo + (i as i64 % 3);
            let x = amb.mul(&amb.zeta(&e, (seed + 7 * i) % (qk - 1)), &amb.unif_pow(&e, j));
            let u = amb.add(&amb.one(), &x);
            let lhs = amb.eval_char(&e, &chi, &u).unwrap();
            let rhs = amb.psi_field(&e, &amb.mul(&c, &x)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn depth_is_detected((p, spec, chi, k) in char_case()) {
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let e = amb.embed(&spec).unwrap();
        let qk = spec.q(p);
        let mut nontrivial = false;
        for t in 0..qk - 1 {
            let at = amb.add(&amb.one(), &amb.mul(&amb.zeta(&e, t), &amb.unif_pow(&e, k)));
            nontrivial |= !amb.eval_char(&e, &chi, &at).unwrap().is_one();
            let above = amb.add(&amb.one(), &amb.mul(&amb.zeta(&e, t), &amb.unif_pow(&e, k + 1)));
            prop_assert!(amb.eval_char(&e, &chi, &above).unwrap().is_one());
        }
        prop_assert!(nontrivial);
    }

    #[test]
    fn kappa_through_towers(p in small_prime(), n in 1u32..5, pick in 0usize..8) {
        let specs = tame_specs(p, n);
        let spec = specs[pick % specs.len()];
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let e = amb.embed(&spec).unwrap();
        let direct = amb.kappa(&e).unwrap();
        for l in amb.subfields(&e) {
            prop_assert_eq!(amb.kappa_via(&e, &l).unwrap(), direct);
        }
    }

    #[test]
    fn compositum_is_associative(p in small_prime(), a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let specs: Vec<FieldSpec> = (1..3).flat_map(|n| tame_specs(p, n)).collect();
        let (x, y, z) = (specs[a % specs.len()], specs[b % specs.len()], specs[c % specs.len()]);
        let amb = Ambient::for_specs(p, &[x, y, z]).unwrap();
        let (x, y, z) = (amb.embed(&x).unwrap(), amb.embed(&y).unwrap(), amb.embed(&z).unwrap());
        let left = amb.compositum(&amb.compositum(&x, &y), &z);
        let right = amb.compositum(&x, &amb.compositum(&y, &z));
        prop_assert!(left.spec.iso(&right.spec, p));
        prop_assert_eq!(left.stab, right.stab);
    }

    #[test]
    fn tensor_dimension_is_multiplicative((p, spec, chi, _k) in char_case(), n in 1u32..3, pick in 0usize..4) {
        let ls = tame_specs(p, n);
        let ls = ls[pick % ls.len()];
        let amb = Ambient::for_specs(p, &[spec, ls]).unwrap();
        let (e, l) = (amb.embed(&spec).unwrap(), amb.embed(&ls).unwrap());
        let eta = MultChar::new(p, ls, Root::one(), 0, AbsElt::zero());
        let t = amb.tensor_pairs(&e, &chi, &l, &eta).unwrap();
        prop_assert_eq!(t.dim(), spec.degree() * ls.degree());
    }

    #[test]
    fn rep_equivalence_is_an_equivalence((p, spec, chi, _k) in char_case(), z in 0i64..4) {
        let amb = Ambient::for_specs(p, &[spec]).unwrap();
        let e = amb.embed(&spec).unwrap();
        prop_assume!(amb.is_admissible(&e, &chi).unwrap());
        let a = WeilRep::new([chi.clone()]);
        // conjugates of χ give the same induced representation
        let autos = amb.automorphisms(&e);
        let g = autos[z as usize % autos.len()];
        let moved = amb.to_multchar(&tamegamma::EmbChar { field: e.clone(), comps: amb.conj_emb(g, &amb.emb(&e, &chi)).comps }).unwrap();
        let b = WeilRep::new([moved]);
        let c = WeilRep::new([chi.twist_unif(Root::new(z, 4))]);
        prop_assert!(amb.rep_equivalent(&a, &a).unwrap());
        let ab = amb.rep_equivalent(&a, &b).unwrap();
        prop_assert!(ab);
        prop_assert_eq!(amb.rep_equivalent(&b, &a).unwrap(), ab);
        let ac = amb.rep_equivalent(&a, &c).unwrap();
        prop_assert_eq!(amb.rep_equivalent(&b, &c).unwrap(), ac);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn self_dual_determinants(p in prop::sample::select(vec![5u64, 7]), k in prop::sample::select(vec![3i64, 5]), orth in any::<bool>()) {
        let scene = Scene::new(p).unwrap();
        let spec = FieldSpec::new(p, 1, 2, 0).unwrap();
        let amb = scene.ambient(&[spec]).unwrap();
        let e = amb.embed(&spec).unwrap();
        let l = amb.base_field();
        let sigma = *l.stab.iter().find(|g| e.stab.binary_search(g).is_err()).unwrap();
        let parity = if orth { Parity::Orthogonal } else { Parity::Symplectic };
        let fam = amb.xi_beta_family(&e, sigma, &l, &AbsElt::unif_pow(-k), parity).unwrap();
        // at least p members once the depth exceeds 2/e
        prop_assert!(fam.len() as u64 >= p);
        for chi in fam.iter().take(6) {
            let w = amb.det_induced(&e, chi).unwrap();
            let wd = amb.det_induced(&e, &chi.inv(p)).unwrap();
            let base = amb.base_field();
            prop_assert!(amb.emb_equal(&amb.emb(&base, &w), &amb.emb(&base, &wd)).unwrap());
            prop_assert!(amb.is_trivial_char(&w.mul(&w, p)).unwrap());
        }
    }
}
