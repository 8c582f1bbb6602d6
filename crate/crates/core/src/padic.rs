//! Fixed-point arithmetic in a finite Galois tame extension `T = Q_{p^F}(π)`,
//! `π^E = p`, `E | p^F - 1`.
//!
//! Every tame field used in a computation is realised as the fixed field of a
//! subgroup of `Gal(T/Q_p)`, so norms, traces, conjugates and composita all
//! reduce to arithmetic in one ring. The unramified part is
//! `Z/p^k[X]/(g)` with `X` the Teichmüller lift of a primitive element.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut a = 0;
            while n % d == 0 {
                n /= d;
                a += 1;
            }
            out.push((d, a));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// `p`-adic valuation of a nonzero integer.
pub fn vp(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n % p == 0 && n > 0 {
        n /= p;
        v += 1;
    }
    v
}

pub(crate) fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: i128, m: i128) -> Option<i128> {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 || (m == 1) {
        Some(s0.rem_euclid(m))
    } else {
        None
    }
}

/// Solutions of `a·x ≡ b (mod m)` as `(x0, step)`, or `None`.
pub(crate) fn solve_linear(a: i128, b: i128, m: i128) -> Option<(i128, i128)> {
    let g = gcd(a, m);
    if b.rem_euclid(g) != 0 {
        return None;
    }
    let m2 = m / g;
    if m2 == 1 {
        return Some((0, 1));
    }
    let x = (b / g).rem_euclid(m2) * inv_mod((a / g).rem_euclid(m2), m2)? % m2;
    Some((x.rem_euclid(m2), m2))
}

/// An element of `Gal(T/Q_p)`: Frobenius power `a` on the unramified part,
/// `π ↦ ξ^b π` with `ξ` a fixed primitive `E`-th root of unity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GalElt {
    pub a: u32,
    pub b: u32,
}

/// The ambient field together with its Galois group.
#[derive(Debug)]
pub struct Ambient {
    pub p: u64,
    /// Residue degree of `T`.
    pub fdeg: usize,
    /// Ramification index of `T`.
    pub edeg: usize,
    /// Working precision: coefficients live in `Z/p^k`.
    pub k: u32,
    pub pk: u64,
    /// `p^F - 1`, the order of the Teichmüller generator `X`.
    pub n_units: u64,
    /// Monic minimal polynomial of `X`, low coefficients.
    g: Vec<u64>,
    /// `frob[a][i]` = image of `X^i` under Frobenius^a.
    frob: Vec<Vec<Vec<u64>>>,
    /// `xi_pow[i] = ξ^i`.
    xi_pow: Vec<Vec<u64>>,
    group: Vec<GalElt>,
    dlog_tables: OnceLock<Vec<DlogPart>>,
}

#[derive(Debug)]
struct DlogPart {
    prime: u64,
    exp: u32,
    gamma_steps: HashMap<u64, u64>,
    giant: u64,
}

/// A `T`-element `p^{-s}·Σ_{j<E} y_j π^j`, known modulo `π^prec`.
#[derive(Clone, Debug)]
pub struct TElt {
    pub(crate) s: i64,
    pub(crate) y: Vec<u64>,
    pub(crate) prec: i64,
}

impl Ambient {
    /// Builds `T` with residue degree `fdeg`, ramification `edeg`.
    pub fn new(p: u64, fdeg: usize, edeg: usize) -> Result<Ambient> {
        if p < 3 || !is_prime(p) {
            return Err(Error::Config(format!("p = {p} must be an odd prime")));
        }
        if edeg as u64 % p == 0 {
            return Err(Error::Config(format!("ramification {edeg} is wild at p = {p}")));
        }
        let qf = (p as u128).pow(fdeg as u32);
        if qf > (1u128 << 50) {
            return Err(Error::Config(format!("residue field {p}^{fdeg} too large")));
        }
        let n_units = (qf - 1) as u64;
        if n_units % edeg as u64 != 0 {
            return Err(Error::Config(format!("μ_{edeg} is not in the degree-{fdeg} unramified field")));
        }
        let mut k = 1u32;
        while (p as u128).pow(k + 1) < (1u128 << 60) {
            k += 1;
        }
        let pk = p.pow(k);
        let h = primitive_poly(p, fdeg, n_units);
        let g = teichmuller_minpoly(p, fdeg, k, pk, &h);
        let mut amb = Ambient {
            p,
            fdeg,
            edeg,
            k,
            pk,
            n_units,
            g,
            frob: Vec::new(),
            xi_pow: Vec::new(),
            group: Vec::new(),
            dlog_tables: OnceLock::new(),
        };
        let x_p = amb.k_pow_x(p);
        let mut frob = vec![identity_images(fdeg)];
        for a in 1..fdeg {
            let prev: &Vec<Vec<u64>> = &frob[a - 1];
            let next = prev.iter().map(|img| amb.k_subst(img, &x_p)).collect();
            frob.push(next);
        }
        amb.frob = frob;
        let xi = amb.k_pow_x(n_units / edeg as u64);
        let mut xi_pow = vec![amb.k_one()];
        for i in 1..edeg {
            let nxt = amb.k_mul(&xi_pow[i - 1], &xi);
            xi_pow.push(nxt);
        }
        amb.xi_pow = xi_pow;
        let mut group = Vec::new();
        for a in 0..fdeg as u32 {
            for b in 0..edeg as u32 {
                group.push(GalElt { a, b });
            }
        }
        amb.group = group;
        Ok(amb)
    }

    /// Total degree `[T : Q_p]`.
    pub fn degree(&self) -> usize {
        self.fdeg * self.edeg
    }

    pub fn group(&self) -> &[GalElt] {
        &self.group
    }

    // ---- unramified part -------------------------------------------------

    fn k_one(&self) -> Vec<u64> {
        let mut v = vec![0; self.fdeg];
        v[0] = 1 % self.pk;
        v
    }

    fn k_reduce_raw(&self, raw: &mut [u128]) -> Vec<u64> {
        let f = self.fdeg;
        let m = self.pk;
        let mut c: Vec<u64> = raw.iter().map(|x| (*x % m as u128) as u64).collect();
        for d in (f..c.len()).rev() {
            let t = c[d];
            if t == 0 {
                continue;
            }
            c[d] = 0;
            for i in 0..f {
                // X^f = -Σ g_i X^i
                let sub = mulmod(t, self.g[i], m);
                let idx = d - f + i;
                c[idx] = (c[idx] + m - sub) % m;
            }
        }
        c.truncate(f);
        c
    }

    pub(crate) fn k_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let f = self.fdeg;
        let mut raw = vec![0u128; 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                raw[i + j] += *x as u128 * *y as u128;
            }
        }
        self.k_reduce_raw(&mut raw)
    }

    fn k_pow_x(&self, e: u64) -> Vec<u64> {
        let mut x = vec![0; self.fdeg];
        if self.fdeg == 1 {
            // X is the Teichmüller root of unity itself: g = X - ζ.
            x[0] = (self.pk - self.g[0]) % self.pk;
        } else {
            x[1] = 1;
        }
        self.k_pow(&x, e)
    }

    fn k_pow(&self, b: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.k_one();
        let mut b = b.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = self.k_mul(&r, &b);
            }
            b = self.k_mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Evaluates the polynomial `a(X)` at `X = x`.
    fn k_subst(&self, a: &[u64], x: &[u64]) -> Vec<u64> {
        let mut acc = vec![0u64; self.fdeg];
        for c in a.iter().rev() {
            acc = self.k_mul(&acc, x);
            acc[0] = (acc[0] + c) % self.pk;
        }
        acc
    }

    fn k_frob(&self, a: &[u64], pow: u32) -> Vec<u64> {
        let pow = pow as usize % self.fdeg;
        if pow == 0 {
            return a.to_vec();
        }
        let m = self.pk;
        let mut out = vec![0u128; self.fdeg];
        for (i, c) in a.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            for (o, v) in out.iter_mut().zip(&self.frob[pow][i]) {
                *o += *c as u128 * *v as u128;
            }
        }
        out.into_iter().map(|x| (x % m as u128) as u64).collect()
    }

    /// Teichmüller power `X^n` (`X` generates `μ_{p^F-1}`).
    pub fn teich(&self, n: u64) -> Vec<u64> {
        self.k_pow_x(n % self.n_units)
    }

    fn residue_code(&self, a: &[u64]) -> u64 {
        let mut code = 0u64;
        for c in a.iter().rev() {
            code = code * self.p + c % self.p;
        }
        code
    }

    fn res_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        self.k_mul(a, b).into_iter().map(|x| x % self.p).collect()
    }

    fn res_pow(&self, b: &[u64], mut e: u64) -> Vec<u64> {
        let mut r = self.k_one();
        r[0] = 1;
        let mut b: Vec<u64> = b.iter().map(|x| x % self.p).collect();
        while e > 0 {
            if e & 1 == 1 {
                r = self.res_mul(&r, &b);
            }
            b = self.res_mul(&b, &b);
            e >>= 1;
        }
        r
    }

    fn dlog_parts(&self) -> &Vec<DlogPart> {
        self.dlog_tables.get_or_init(|| {
            let n = self.n_units;
            let x = self.k_pow_x(1);
            factorize(n)
                .into_iter()
                .map(|(l, a)| {
                    let gamma = self.res_pow(&x, n / l);
                    let m = (l as f64).sqrt().ceil() as u64 + 1;
                    let mut steps = HashMap::new();
                    let mut cur = self.k_one();
                    for j in 0..m {
                        steps.entry(self.residue_code(&cur)).or_insert(j);
                        cur = self.res_mul(&cur, &gamma);
                    }
                    DlogPart {
                        prime: l,
                        exp: a,
                        gamma_steps: steps,
                        giant: m,
                    }
                })
                .collect()
        })
    }

    /// Discrete log of a nonzero residue class (given by any lift) to base `X`.
    pub fn dlog(&self, r: &[u64]) -> Result<u64> {
        if r.iter().all(|c| c % self.p == 0) {
            return Err(Error::Precision("discrete log of a non-unit".into()));
        }
        let n = self.n_units;
        let x = self.k_pow_x(1);
        let mut residues = Vec::new();
        for part in self.dlog_parts() {
            let l = part.prime;
            let la = l.pow(part.exp);
            let h = self.res_pow(&x, n / la);
            let t = self.res_pow(r, n / la);
            let gamma = self.res_pow(&x, n / l);
            let gamma_inv_m = self.res_pow(&gamma, l - (part.giant % l));
            let h_inv = self.res_pow(&h, la - 1);
            let mut xk = 0u64;
            let mut lpow = 1u64;
            for _ in 0..part.exp {
                // (t · h^{-xk})^{la/(l·lpow)} = gamma^{digit}
                let hk = self.res_pow(&h_inv, xk);
                let c = self.res_pow(&self.res_mul(&t, &hk), la / (l * lpow));
                let mut cur = c;
                let mut digit = None;
                for i in 0..=(l / part.giant + 1) {
                    if let Some(j) = part.gamma_steps.get(&self.residue_code(&cur)) {
                        digit = Some((i * part.giant + j) % l);
                        break;
                    }
                    cur = self.res_mul(&cur, &gamma_inv_m);
                }
                let d = digit.ok_or_else(|| Error::Precision("discrete log failed".into()))?;
                xk += d * lpow;
                lpow *= l;
            }
            residues.push((xk, la));
        }
        let mut x0: i128 = 0;
        let mut m: i128 = 1;
        for (r, la) in residues {
            let (sol, step) = solve_linear(m, r as i128 - x0, la as i128).expect("coprime moduli");
            x0 += m * sol;
            m *= step;
            x0 = x0.rem_euclid(m);
        }
        Ok(x0 as u64)
    }

    /// Inverse of a unit of the unramified part.
    fn k_inv(&self, a: &[u64]) -> Result<Vec<u64>> {
        if a.iter().all(|c| c % self.p == 0) {
            return Err(Error::Precision("inverting a non-unit".into()));
        }
        let qf = self.n_units + 1;
        let mut z = self.res_pow(a, qf - 2);
        let mut known = 1u32;
        while known < self.k {
            let az = self.k_mul(a, &z);
            let mut two_minus = az.iter().map(|c| (self.pk - c) % self.pk).collect::<Vec<_>>();
            two_minus[0] = (two_minus[0] + 2) % self.pk;
            z = self.k_mul(&z, &two_minus);
            known *= 2;
        }
        Ok(z)
    }

    // ---- T elements ------------------------------------------------------

    fn full_prec(&self, s: i64) -> i64 {
        self.edeg as i64 * (self.k as i64 - s)
    }

    pub fn zero(&self) -> TElt {
        TElt {
            s: 0,
            y: vec![0; self.degree()],
            prec: self.full_prec(0),
        }
    }

    pub fn one(&self) -> TElt {
        self.int(1)
    }

    pub fn int(&self, n: i64) -> TElt {
        let mut t = self.zero();
        let mut s = 0;
        let mut n = n as i128;
        while n != 0 && n % self.p as i128 == 0 {
            n /= self.p as i128;
            s -= 1;
        }
        t.y[0] = n.rem_euclid(self.pk as i128) as u64;
        let t = TElt { s: 0, ..t };
        if s < 0 {
            self.mul_pi_pow(&t, -s * self.edeg as i64)
        } else {
            t
        }
    }

    /// A unit of the unramified part, placed in the `π^0` block.
    pub fn from_k(&self, a: &[u64]) -> TElt {
        let mut t = self.zero();
        t.y[..self.fdeg].copy_from_slice(a);
        t
    }

    /// `X^n · π^j` for any integer `j`.
    pub fn teich_pi(&self, n: u64, j: i64) -> TElt {
        let t = self.from_k(&self.teich(n));
        self.mul_pi_pow(&t, j)
    }

    pub fn pi(&self) -> TElt {
        self.teich_pi(0, 1)
    }

    fn block<'a>(&self, t: &'a TElt, j: usize) -> &'a [u64] {
        &t.y[j * self.fdeg..(j + 1) * self.fdeg]
    }

    /// Valuation in units of `1/E`, or `None` for zero to precision.
    pub fn val_pi(&self, t: &TElt) -> Option<i64> {
        let e = self.edeg as i64;
        let mut best: Option<i64> = None;
        for j in 0..self.edeg {
            let b = self.block(t, j);
            let v = b.iter().filter(|c| **c != 0).map(|c| vp(*c, self.p) as i64).min();
            if let Some(v) = v {
                let cand = e * v + j as i64 - e * t.s;
                best = Some(best.map_or(cand, |x: i64| x.min(cand)));
            }
        }
        best.filter(|v| *v < t.prec)
    }

    pub fn is_zero(&self, t: &TElt) -> bool {
        self.val_pi(t).is_none()
    }

    fn normalize(&self, mut t: TElt) -> TElt {
        let p = self.p;
        t.prec = t.prec.min(self.full_prec(t.s));
        while t.s > 0 && t.y.iter().all(|c| c % p == 0) && t.y.iter().any(|c| *c != 0) {
            for c in t.y.iter_mut() {
                *c /= p;
            }
            t.s -= 1;
        }
        if t.y.iter().all(|c| *c == 0) {
            t.s = 0;
        }
        t.prec = t.prec.min(self.full_prec(t.s));
        t
    }

    pub fn add(&self, a: &TElt, b: &TElt) -> TElt {
        let s = a.s.max(b.s);
        let m = self.pk;
        let sa = powmod(self.p, (s - a.s) as u64, m);
        let sb = powmod(self.p, (s - b.s) as u64, m);
        let y = a
            .y
            .iter()
            .zip(&b.y)
            .map(|(x, z)| (mulmod(*x, sa, m) + mulmod(*z, sb, m)) % m)
            .collect();
        self.normalize(TElt {
            s,
            y,
            prec: a.prec.min(b.prec),
        })
    }

    pub fn neg(&self, a: &TElt) -> TElt {
        let m = self.pk;
        TElt {
            s: a.s,
            y: a.y.iter().map(|c| (m - c) % m).collect(),
            prec: a.prec,
        }
    }

    pub fn sub(&self, a: &TElt, b: &TElt) -> TElt {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &TElt, b: &TElt) -> TElt {
        let (f, e) = (self.fdeg, self.edeg);
        let m = self.pk;
        let wf = 2 * f - 1;
        let mut raw = vec![0u128; wf * (2 * e - 1)];
        for ja in 0..e {
            let ba = self.block(a, ja);
            if ba.iter().all(|c| *c == 0) {
                continue;
            }
            for jb in 0..e {
                let bb = self.block(b, jb);
                let row = (ja + jb) * wf;
                for (ia, x) in ba.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    for (ib, z) in bb.iter().enumerate() {
                        raw[row + ia + ib] += *x as u128 * *z as u128;
                    }
                }
            }
        }
        let mut y = vec![0u64; f * e];
        for j in 0..(2 * e - 1) {
            let mut r = raw[j * wf..(j + 1) * wf].to_vec();
            let kb = self.k_reduce_raw(&mut r);
            let (tj, scale) = if j >= e { (j - e, self.p) } else { (j, 1) };
            for i in 0..f {
                let v = &mut y[tj * f + i];
                *v = (*v + mulmod(kb[i], scale, m)) % m;
            }
        }
        let va = self.val_pi(a).unwrap_or(a.prec);
        let vb = self.val_pi(b).unwrap_or(b.prec);
        let prec = (a.prec + vb).min(b.prec + va);
        self.normalize(TElt { s: a.s + b.s, y, prec })
    }

    pub fn pow(&self, a: &TElt, n: u64) -> TElt {
        let mut r = self.one();
        let mut b = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                r = self.mul(&r, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    /// Multiplies by `X^n`.
    pub fn mul_teich(&self, a: &TElt, n: u64) -> TElt {
        let x = self.teich(n);
        let mut y = Vec::with_capacity(a.y.len());
        for j in 0..self.edeg {
            y.extend(self.k_mul(self.block(a, j), &x));
        }
        TElt { s: a.s, y, prec: a.prec }
    }

    /// Multiplies by `π^n`, `n ∈ Z`.
    pub fn mul_pi_pow(&self, a: &TElt, n: i64) -> TElt {
        let (f, e) = (self.fdeg, self.edeg as i64);
        let t = n.div_euclid(e);
        let r = n.rem_euclid(e) as usize;
        let m = self.pk;
        let mut y = vec![0u64; a.y.len()];
        for j in 0..self.edeg {
            let (tj, scale) = if j + r >= self.edeg { (j + r - self.edeg, self.p) } else { (j + r, 1) };
            for i in 0..f {
                y[tj * f + i] = mulmod(a.y[j * f + i], scale, m);
            }
        }
        let mut s = a.s - t;
        if s < 0 {
            let sc = powmod(self.p, (-s) as u64, m);
            for c in y.iter_mut() {
                *c = mulmod(*c, sc, m);
            }
            s = 0;
        }
        self.normalize(TElt { s, y, prec: a.prec + n })
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &TElt) -> Result<TElt> {
        let v = self
            .val_pi(a)
            .ok_or_else(|| Error::Precision("inverting zero".into()))?;
        let u = self.mul_pi_pow(a, -v);
        let u0 = self.block(&u, 0).to_vec();
        let mut z = self.from_k(&self.k_inv(&u0)?);
        let target = u.prec;
        let mut known = 1i64;
        let two = self.int(2);
        while known < target {
            let uz = self.mul(&u, &z);
            z = self.mul(&z, &self.sub(&two, &uz));
            known *= 2;
        }
        z.prec = z.prec.min(u.prec);
        Ok(self.mul_pi_pow(&z, -v))
    }

    pub fn div(&self, a: &TElt, b: &TElt) -> Result<TElt> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Applies a Galois element.
    pub fn act(&self, g: GalElt, a: &TElt) -> TElt {
        let mut y = Vec::with_capacity(a.y.len());
        for j in 0..self.edeg {
            let fb = self.k_frob(self.block(a, j), g.a);
            let idx = (g.b as usize * j) % self.edeg;
            y.extend(self.k_mul(&fb, &self.xi_pow[idx]));
        }
        TElt { s: a.s, y, prec: a.prec }
    }

    pub fn compose(&self, g: GalElt, h: GalElt) -> GalElt {
        let e = self.edeg as u64;
        let pa = powmod(self.p, g.a as u64, e);
        GalElt {
            a: (g.a + h.a) % self.fdeg as u32,
            b: ((g.b as u64 + pa * h.b as u64) % e) as u32,
        }
    }

    pub fn inverse(&self, g: GalElt) -> GalElt {
        let e = self.edeg as u64;
        let f = self.fdeg as u32;
        let a = (f - g.a % f) % f;
        let pa = powmod(self.p, a as u64, e);
        GalElt {
            a,
            b: ((e - (pa * g.b as u64) % e) % e) as u32,
        }
    }

    /// Residue class of a unit as a vector of coordinates modulo `p`.
    pub fn residue(&self, u: &TElt) -> Result<Vec<u64>> {
        if u.s != 0 || self.val_pi(u) != Some(0) {
            return Err(Error::Precision("residue of a non-unit".into()));
        }
        Ok(self.block(u, 0).iter().map(|c| c % self.p).collect())
    }

    /// Reads a `Q_p`-element as `(numerator mod p^k, s)` with value `num / p^s`.
    pub fn as_qp(&self, t: &TElt) -> (u64, i64) {
        (t.y[0], t.s)
    }

    /// True when `t` lies in `Q_p` to its precision.
    pub fn is_rational(&self, t: &TElt) -> bool {
        let e = self.edeg as i64;
        t.y.iter().enumerate().skip(1).all(|(idx, c)| {
            if *c == 0 {
                return true;
            }
            let j = (idx / self.fdeg) as i64;
            e * vp(*c, self.p) as i64 + j - e * t.s >= t.prec
        })
    }

    pub fn prec(&self, t: &TElt) -> i64 {
        t.prec
    }

    /// Truncated `p`-adic logarithm of a principal unit, correct modulo `π^target`.
    pub fn log1p_unit(&self, u: &TElt, target: i64) -> Result<TElt> {
        let z = self.sub(u, &self.one());
        let vz = match self.val_pi(&z) {
            None => return Ok(self.zero()),
            Some(v) => v,
        };
        if vz < 1 {
            return Err(Error::Precision("logarithm of a non-principal unit".into()));
        }
        let e = self.edeg as i64;
        let mut acc = self.zero();
        let mut zn = z.clone();
        let mut n: u64 = 1;
        loop {
            let lower = n as i64 * vz - e * vp(n, self.p) as i64;
            if lower < target {
                let vpn = vp(n, self.p);
                let unit = n / self.p.pow(vpn);
                let inv = inv_mod(unit as i128, self.pk as i128).expect("unit") as u64;
                let mut term = zn.clone();
                for c in term.y.iter_mut() {
                    *c = mulmod(*c, inv, self.pk);
                }
                term.s += vpn as i64;
                term.prec -= e * vpn as i64;
                let term = self.normalize(term);
                acc = if n % 2 == 1 { self.add(&acc, &term) } else { self.sub(&acc, &term) };
            }
            // For m ≥ n, m·vz - E·log_p(m) is increasing once m > E/(vz·ln p),
            // and it bounds every later term from below.
            let m = (n + 1) as f64;
            let lp = (self.p as f64).ln();
            if m > e as f64 / (vz as f64 * lp) && m * vz as f64 - e as f64 * m.ln() / lp >= target as f64 {
                break;
            }
            n += 1;
            zn = self.mul(&zn, &z);
        }
        Ok(acc)
    }

    /// Exponential of an element of positive valuation above `1/(p-1)`.
    pub fn exp_series(&self, x: &TElt, target: i64) -> Result<TElt> {
        let vx = match self.val_pi(x) {
            None => return Ok(self.one()),
            Some(v) => v,
        };
        let e = self.edeg as i64;
        if vx * (self.p as i64 - 1) <= e {
            return Err(Error::Config("exponential series does not converge".into()));
        }
        let mut acc = self.one();
        let mut term = self.one();
        let mut n: u64 = 1;
        loop {
            // term = x^n / n!
            let vpn = vp(n, self.p);
            let unit = n / self.p.pow(vpn);
            let inv = inv_mod(unit as i128, self.pk as i128).expect("unit") as u64;
            term = self.mul(&term, x);
            for c in term.y.iter_mut() {
                *c = mulmod(*c, inv, self.pk);
            }
            term.s += vpn as i64;
            term.prec -= e * vpn as i64;
            term = self.normalize(term);
            acc = self.add(&acc, &term);
            // v(x^n/n!) ≥ n(vx - e/(p-1))
            let lower = (n as i64 + 1) * vx - (e * (n as i64 + 1)) / (self.p as i64 - 1);
            if lower > target + e {
                break;
            }
            n += 1;
        }
        Ok(acc)
    }

    /// Trace over a set of coset representatives.
    pub fn sum_conjugates(&self, reps: &[GalElt], a: &TElt) -> TElt {
        let mut acc = self.zero();
        for g in reps {
            acc = self.add(&acc, &self.act(*g, a));
        }
        acc
    }

    pub fn prod_conjugates(&self, reps: &[GalElt], a: &TElt) -> TElt {
        let mut acc = self.one();
        for g in reps {
            acc = self.mul(&acc, &self.act(*g, a));
        }
        acc
    }

    /// Equality to the smaller of the two precisions.
    pub fn eq(&self, a: &TElt, b: &TElt) -> bool {
        self.is_zero(&self.sub(a, b))
    }
}

fn identity_images(f: usize) -> Vec<Vec<u64>> {
    (0..f)
        .map(|i| {
            let mut v = vec![0; f];
            v[i] = 1;
            v
        })
        .collect()
}

fn poly_mulmod_p(a: &[u64], b: &[u64], h: &[u64], p: u64) -> Vec<u64> {
    // h monic of degree f, given by its f low coefficients
    let f = h.len();
    let mut raw = vec![0u64; 2 * f - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            raw[i + j] = (raw[i + j] + x * y) % p;
        }
    }
    for d in (f..raw.len()).rev() {
        let t = raw[d];
        if t == 0 {
            continue;
        }
        raw[d] = 0;
        for i in 0..f {
            raw[d - f + i] = (raw[d - f + i] + p * p - t * h[i] % p) % p;
        }
    }
    raw.truncate(f);
    raw
}

fn poly_powmod_p(b: &[u64], mut e: u64, h: &[u64], p: u64) -> Vec<u64> {
    let f = h.len();
    let mut r = vec![0; f];
    r[0] = 1;
    let mut b = b.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            r = poly_mulmod_p(&r, &b, h, p);
        }
        b = poly_mulmod_p(&b, &b, h, p);
        e >>= 1;
    }
    r
}

/// First monic polynomial (in a fixed enumeration) whose root `x` has order `p^f - 1`.
fn primitive_poly(p: u64, f: usize, n: u64) -> Vec<u64> {
    let primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
    if f == 1 {
        // X - r with r a primitive root
        for r in 2..p.max(3) {
            if primes.iter().all(|l| powmod(r, n / l, p) != 1) {
                return vec![(p - r) % p];
            }
        }
        return vec![p - 1];
    }
    let total = p.pow(f as u32);
    for code in 0..total {
        let mut h = vec![0u64; f];
        let mut c = code;
        for slot in h.iter_mut() {
            *slot = c % p;
            c /= p;
        }
        if h[0] == 0 {
            continue;
        }
        let mut x = vec![0u64; f];
        x[1] = 1;
        let mut one = vec![0u64; f];
        one[0] = 1;
        if poly_powmod_p(&x, n, &h, p) != one {
            continue;
        }
        if primes.iter().all(|l| poly_powmod_p(&x, n / l, &h, p) != one) {
            return h;
        }
    }
    unreachable!("primitive polynomials exist")
}

/// Minimal polynomial over `Z/p^k` of the Teichmüller lift of a root of `h`.
fn teichmuller_minpoly(p: u64, f: usize, k: u32, pk: u64, h: &[u64]) -> Vec<u64> {
    if f == 1 {
        // Teichmüller lift of the primitive root -h[0].
        let r = (p - h[0]) % p;
        let mut t = r;
        let mut known = 1;
        while known <= k {
            t = powmod(t, p, pk);
            known += 1;
        }
        return vec![(pk - t) % pk];
    }
    // Work in Z/p^k[x]/(h) with h lifted naively.
    let mulr = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut raw = vec![0u128; 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                raw[i + j] += *x as u128 * *y as u128;
            }
        }
        let mut c: Vec<u64> = raw.iter().map(|x| (*x % pk as u128) as u64).collect();
        for d in (f..c.len()).rev() {
            let t = c[d];
            if t == 0 {
                continue;
            }
            c[d] = 0;
            for i in 0..f {
                let sub = mulmod(t, h[i], pk);
                c[d - f + i] = (c[d - f + i] + pk - sub) % pk;
            }
        }
        c.truncate(f);
        c
    };
    let powr = |b: &[u64], mut e: u64| -> Vec<u64> {
        let mut r = vec![0u64; f];
        r[0] = 1;
        let mut b = b.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                r = mulr(&r, &b);
            }
            b = mulr(&b, &b);
            e >>= 1;
        }
        r
    };
    let q = p.pow(f as u32);
    let mut tau = vec![0u64; f];
    tau[1] = 1;
    for _ in 0..=k {
        tau = powr(&tau, q);
    }
    // conjugates tau^{p^i}
    let mut conj = vec![tau.clone()];
    for i in 1..f {
        let nxt = powr(&conj[i - 1], p);
        conj.push(nxt);
    }
    // ∏ (Y - c_i) with coefficients in the ring
    let mut poly: Vec<Vec<u64>> = vec![{
        let mut one = vec![0u64; f];
        one[0] = 1;
        one
    }];
    for c in &conj {
        let mut next = vec![vec![0u64; f]; poly.len() + 1];
        for (d, coef) in poly.iter().enumerate() {
            for (slot, v) in next[d + 1].iter_mut().zip(coef) {
                *slot = (*slot + v) % pk;
            }
            let prod = mulr(coef, c);
            for (slot, v) in next[d].iter_mut().zip(prod) {
                *slot = (*slot + pk - v) % pk;
            }
        }
        poly = next;
    }
    let mut g = Vec::with_capacity(f);
    for coef in poly.iter().take(f) {
        debug_assert!(coef[1..].iter().all(|c| *c == 0), "minimal polynomial not over Z_p");
        g.push(coef[0]);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn teichmuller_generator_has_full_order() {
        for (p, f) in [(5u64, 1usize), (5, 2), (7, 3), (13, 2)] {
            let amb = Ambient::new(p, f, 1).unwrap();
            let n = amb.n_units;
            assert_eq!(amb.teich(n), amb.k_one(), "X^(q-1) = 1 for p={p} f={f}");
            for (l, _) in factorize(n) {
                assert_ne!(amb.teich(n / l), amb.k_one());
            }
        }
    }

    #[test]
    fn dlog_inverts_powers() {
        let amb = Ambient::new(5, 4, 1).unwrap();
        for n in [0u64, 1, 7, 100, 311, 623] {
            assert_eq!(amb.dlog(&amb.teich(n)).unwrap(), n);
        }
    }

    #[test]
    fn pi_to_the_e_is_p() {
        let amb = Ambient::new(7, 2, 4).unwrap();
        let pe = amb.pow(&amb.pi(), 4);
        assert!(amb.eq(&pe, &amb.int(7)));
        assert_eq!(amb.val_pi(&amb.int(49)), Some(8));
    }

    #[test]
    fn inverse_and_division() {
        let amb = Ambient::new(5, 2, 3).unwrap();
        let x = amb.add(&amb.teich_pi(3, -2), &amb.teich_pi(1, 1));
        let y = amb.inv(&x).unwrap();
        assert!(amb.eq(&amb.mul(&x, &y), &amb.one()));
        assert_eq!(amb.val_pi(&y), Some(2));
    }

    #[test]
    fn galois_action_is_a_homomorphism() {
        let amb = Ambient::new(5, 2, 4).unwrap();
        let x = amb.add(&amb.teich_pi(5, 1), &amb.teich_pi(2, 3));
        let y = amb.add(&amb.teich_pi(1, 0), &amb.teich_pi(7, 2));
        for g in amb.group().to_vec() {
            let lhs = amb.act(g, &amb.mul(&x, &y));
            let rhs = amb.mul(&amb.act(g, &x), &amb.act(g, &y));
            assert!(amb.eq(&lhs, &rhs));
            for h in amb.group().to_vec() {
                let gh = amb.compose(g, h);
                assert!(amb.eq(&amb.act(gh, &x), &amb.act(g, &amb.act(h, &x))));
            }
            let gi = amb.inverse(g);
            assert!(amb.eq(&amb.act(gi, &amb.act(g, &x)), &x));
        }
    }

    #[test]
    fn log_exp_roundtrip() {
        let amb = Ambient::new(7, 1, 2).unwrap();
        let u = amb.add(&amb.one(), &amb.pi());
        let l = amb.log1p_unit(&u, 12).unwrap();
        let back = amb.exp_series(&l, 12).unwrap();
        let diff = amb.sub(&back, &u);
        assert!(amb.val_pi(&diff).is_none_or(|v| v >= 12));
    }
}
