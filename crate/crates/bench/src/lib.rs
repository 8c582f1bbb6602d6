//! Fixtures shared by the benchmarks.

use tamegamma::{AbsElt, FieldSpec, MultChar, Root, Scene, WeilRep};

/// A depth-`k/e` character on the totally ramified field of degree `e`.
pub fn ramified_char(p: u64, e: u32, k: i64) -> MultChar {
    MultChar::new(p, FieldSpec { f: 1, e, c: 0 }, Root::one(), 1, AbsElt::unif_pow(-k))
}

/// Scene and the two sides of the cubic noncuspidal comparison at `p`.
pub fn cubic_pair(p: u64) -> (Scene, WeilRep, WeilRep) {
    let chi = ramified_char(p, 3, 1);
    let chi2 = chi.twist_unif(Root::new(1, 4));
    let triv = MultChar::trivial(FieldSpec::base());
    let a = WeilRep::new([chi.clone(), triv.clone(), chi.inv(p)]);
    let b = WeilRep::new([chi2.clone(), triv, chi2.inv(p)]);
    (Scene::new(p).expect("odd prime"), a, b)
}
