//! Modular gcd: images modulo word-size primes, evaluation and
//! interpolation in one symbol at a time, Chinese remaindering over primes.
//! Every answer is confirmed by exact division over the integers.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::poly::{Exponents, MultiPoly};

/// Polynomial over Z/p. Keys compare lexicographically with symbol 0 most
/// significant, so the last entry is the lex-leading term.
type Modp = BTreeMap<Exponents, u64>;

/// Dense univariate polynomial over Z/p, lowest degree first, no trailing zeros.
type Uni = Vec<u64>;

const MAX_PRIMES: usize = 64;
const MAX_POINTS: u64 = 2_000;

#[derive(Clone, Copy)]
struct Field {
    p: u64,
}

impl Field {
    fn add(self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((u128::from(a) * u128::from(b)) % u128::from(self.p)) as u64
    }

    fn pow(self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    fn inv(self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }

    fn reduce(self, c: &BigInt) -> u64 {
        c.mod_floor(&BigInt::from(self.p))
            .to_u64()
            .expect("reduced below p")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let f = Field { p: n };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    // these bases are deterministic for all 64-bit n
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(MAX_PRIMES);
        let mut n = (1u64 << 62) - 1;
        while out.len() < MAX_PRIMES {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn trim(u: &mut Uni) {
    while u.last() == Some(&0) {
        u.pop();
    }
}

fn uni_eval(f: Field, u: &[u64], x: u64) -> u64 {
    u.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

fn uni_mul(f: Field, a: &[u64], b: &[u64]) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Uni::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` is nonzero.
fn uni_divrem(f: Field, a: &[u64], b: &[u64]) -> (Uni, Uni) {
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return (Uni::new(), r);
    }
    let inv = f.inv(*b.last().unwrap());
    let mut q = vec![0; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let c = f.mul(*r.last().unwrap(), inv);
        let shift = r.len() - b.len();
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = f.sub(r[i + shift], f.mul(c, bc));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn uni_monic(f: Field, mut u: Uni) -> Uni {
    if let Some(&l) = u.last() {
        let inv = f.inv(l);
        for c in u.iter_mut() {
            *c = f.mul(*c, inv);
        }
    }
    u
}

/// Monic gcd; zero only when both inputs are zero.
fn uni_gcd(f: Field, a: &[u64], b: &[u64]) -> Uni {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = uni_divrem(f, &a, &b).1;
        a = b;
        b = r;
    }
    uni_monic(f, a)
}

fn reduce_poly(f: Field, a: &MultiPoly) -> Modp {
    a.terms()
        .iter()
        .filter_map(|(e, c)| {
            let c = f.reduce(c);
            (c != 0).then(|| (e.clone(), c))
        })
        .collect()
}

fn add_term(f: Field, p: &mut Modp, e: Exponents, c: u64) {
    if c == 0 {
        return;
    }
    match p.get_mut(&e) {
        Some(slot) => {
            *slot = f.add(*slot, c);
            if *slot == 0 {
                p.remove(&e);
            }
        }
        None => {
            p.insert(e, c);
        }
    }
}

/// Coefficients with respect to the symbols other than `y`, each a
/// univariate polynomial in `y`.
fn groups(a: &Modp, y: usize) -> BTreeMap<Exponents, Uni> {
    let mut out: BTreeMap<Exponents, Uni> = BTreeMap::new();
    for (e, &c) in a {
        let k = e[y] as usize;
        let mut key = e.clone();
        key[y] = 0;
        let u = out.entry(key).or_default();
        if u.len() <= k {
            u.resize(k + 1, 0);
        }
        u[k] = c;
    }
    out
}

fn from_groups(gs: &BTreeMap<Exponents, Uni>, y: usize) -> Modp {
    let mut out = Modp::new();
    for (key, u) in gs {
        for (k, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut e = key.clone();
                e[y] = k as u32;
                out.insert(e, c);
            }
        }
    }
    out
}

fn eval_var(f: Field, a: &Modp, y: usize, x: u64) -> Modp {
    let mut out = Modp::new();
    for (e, &c) in a {
        let mut key = e.clone();
        key[y] = 0;
        add_term(f, &mut out, key, f.mul(c, f.pow(x, u64::from(e[y]))));
    }
    out
}

fn scale(f: Field, a: &Modp, c: u64) -> Modp {
    a.iter().map(|(e, &x)| (e.clone(), f.mul(x, c))).collect()
}

fn monic(f: Field, a: &Modp) -> Modp {
    match a.last_key_value() {
        Some((_, &l)) => scale(f, a, f.inv(l)),
        None => Modp::new(),
    }
}

fn is_constant(a: &Modp) -> bool {
    a.keys().all(|e| e.iter().all(|&x| x == 0))
}

/// Primitive part with respect to the symbols other than `y`.
fn primitive_in(f: Field, a: &Modp, y: usize) -> Modp {
    let gs = groups(a, y);
    let content = gs.values().fold(Uni::new(), |g, u| uni_gcd(f, &g, u));
    if content.len() <= 1 {
        return a.clone();
    }
    let gs = gs
        .into_iter()
        .map(|(k, u)| (k, uni_divrem(f, &u, &content).0))
        .collect();
    from_groups(&gs, y)
}

/// Exact division test by lex-leading terms.
fn divides(f: Field, h: &Modp, a: &Modp) -> bool {
    let Some((hm, &hc)) = h.last_key_value() else {
        return a.is_empty();
    };
    let inv = f.inv(hc);
    let mut r = a.clone();
    while let Some((m, &c)) = r.last_key_value() {
        if m.iter().zip(hm.iter()).any(|(x, y)| x < y) {
            return false;
        }
        let shift: Exponents = m.iter().zip(hm.iter()).map(|(x, y)| x - y).collect();
        let q = f.mul(c, inv);
        for (e, &hcoef) in h {
            let key: Exponents = e.iter().zip(shift.iter()).map(|(x, s)| x + s).collect();
            add_term(f, &mut r, key, f.p - f.mul(q, hcoef));
        }
    }
    true
}

/// Monic gcd over Z/p of nonzero `a`, `b` supported on `vars`.
fn gcd_modp(f: Field, a: &Modp, b: &Modp, vars: &[usize]) -> Option<Modp> {
    let (&y, rest) = vars.split_last().expect("at least one symbol");
    let ga = groups(a, y);
    let gb = groups(b, y);
    if rest.is_empty() {
        let g = uni_gcd(f, &ga.into_values().next()?, &gb.into_values().next()?);
        let key = a.keys().next()?.clone();
        return Some(from_groups(&BTreeMap::from([(zeroed(&key, y), g)]), y));
    }
    let ca = ga.values().fold(Uni::new(), |g, u| uni_gcd(f, &g, u));
    let cb = gb.values().fold(Uni::new(), |g, u| uni_gcd(f, &g, u));
    let content = uni_gcd(f, &ca, &cb);
    let strip = |gs: BTreeMap<Exponents, Uni>, c: &Uni| -> BTreeMap<Exponents, Uni> {
        gs.into_iter()
            .map(|(k, u)| (k, uni_divrem(f, &u, c).0))
            .collect()
    };
    let ga = strip(ga, &ca);
    let gb = strip(gb, &cb);
    let lca = ga.last_key_value()?.1.clone();
    let lcb = gb.last_key_value()?.1.clone();
    let gamma = uni_gcd(f, &lca, &lcb);
    let deg_y = |gs: &BTreeMap<Exponents, Uni>| gs.values().map(|u| u.len() - 1).max().unwrap_or(0);
    let bound = gamma.len() - 1 + deg_y(&ga).min(deg_y(&gb));
    let a1 = from_groups(&ga, y);
    let b1 = from_groups(&gb, y);
    let key0 = zeroed(a.keys().next()?, y);
    let with_content = |h: Modp| -> Modp {
        let mut out = Modp::new();
        for (e, &c) in &h {
            for (k, &m) in content.iter().enumerate() {
                let mut key = e.clone();
                key[y] += k as u32;
                add_term(f, &mut out, key, f.mul(c, m));
            }
        }
        monic(f, &out)
    };

    // interpolant, its modulus in y, and the leading monomial of the images
    let mut state: Option<(Modp, Uni, Exponents)> = None;
    let mut points = 0usize;
    for alpha in 1..MAX_POINTS {
        if uni_eval(f, &lca, alpha) == 0 || uni_eval(f, &lcb, alpha) == 0 {
            continue;
        }
        let ea = eval_var(f, &a1, y, alpha);
        let eb = eval_var(f, &b1, y, alpha);
        let g = gcd_modp(f, &ea, &eb, rest)?;
        if is_constant(&g) {
            let one: Modp = BTreeMap::from([(key0.clone(), 1)]);
            return Some(with_content(one));
        }
        let g = scale(f, &g, uni_eval(f, &gamma, alpha));
        let lm = g.last_key_value()?.0.clone();
        let mut unchanged = false;
        match &mut state {
            Some((_, _, cur)) if lm > *cur => continue,
            Some((h, m, cur)) if lm == *cur => {
                let hv = eval_var(f, h, y, alpha);
                if hv == g {
                    unchanged = true;
                } else {
                    let s = f.inv(uni_eval(f, m, alpha));
                    let mut d = g.clone();
                    for (e, &c) in &hv {
                        add_term(f, &mut d, e.clone(), f.p - c);
                    }
                    for (e, &c) in &d {
                        let c = f.mul(c, s);
                        for (k, &mk) in m.iter().enumerate() {
                            let mut key = e.clone();
                            key[y] += k as u32;
                            add_term(f, h, key, f.mul(c, mk));
                        }
                    }
                }
                *m = uni_mul(f, m, &[f.p - alpha, 1]);
                points += 1;
            }
            _ => {
                state = Some((g, vec![f.p - alpha, 1], lm));
                points = 1;
            }
        }
        if unchanged || points > bound {
            let (h, _, _) = state.as_ref()?;
            let cand = monic(f, &primitive_in(f, h, y));
            if divides(f, &cand, &a1) && divides(f, &cand, &b1) {
                return Some(with_content(cand));
            }
            if points > bound + 1 {
                return None;
            }
        }
    }
    None
}

fn zeroed(e: &Exponents, y: usize) -> Exponents {
    let mut k = e.clone();
    k[y] = 0;
    k
}

fn lex_leading_coeff(a: &MultiPoly) -> &BigInt {
    &a.terms()
        .iter()
        .max_by(|x, y| x.0.cmp(&y.0))
        .expect("nonzero")
        .1
}

/// Gcd of primitive, non-constant `a` and `b` up to sign. `None` when the
/// modular images never settle (the caller falls back to the PRS).
pub(super) fn modular_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let n = a.nvars();
    let vars: Vec<usize> = (0..n)
        .filter(|&v| a.contains_var(v) || b.contains_var(v))
        .collect();
    let lca = lex_leading_coeff(a);
    let lcb = lex_leading_coeff(b);
    let gamma = lca.gcd(lcb);

    // coefficients in [0, modulus), the modulus, and the leading monomial
    let mut acc: Option<(BTreeMap<Exponents, BigInt>, BigInt, Exponents)> = None;
    let mut last: Option<MultiPoly> = None;
    for &p in primes() {
        let f = Field { p };
        if f.reduce(lca) == 0 || f.reduce(lcb) == 0 {
            continue;
        }
        let g = gcd_modp(f, &reduce_poly(f, a), &reduce_poly(f, b), &vars)?;
        if is_constant(&g) {
            return Some(MultiPoly::one(n));
        }
        let g = scale(f, &g, f.reduce(&gamma));
        let lm = g.last_key_value()?.0.clone();
        match &mut acc {
            Some((_, _, cur)) if lm > *cur => continue,
            Some((coeffs, m, cur)) if lm == *cur => {
                let m_inv = BigInt::from(f.inv(f.reduce(m)));
                let mut keys: Vec<Exponents> = coeffs.keys().cloned().collect();
                keys.extend(g.keys().filter(|k| !coeffs.contains_key(*k)).cloned());
                for k in keys {
                    let r = coeffs.get(&k).cloned().unwrap_or_default();
                    let s = BigInt::from(g.get(&k).copied().unwrap_or(0));
                    let t = ((s - &r) * &m_inv).mod_floor(&BigInt::from(p));
                    let x = r + &*m * t;
                    if x.is_zero() {
                        coeffs.remove(&k);
                    } else {
                        coeffs.insert(k, x);
                    }
                }
                *m *= p;
            }
            _ => {
                let coeffs = g
                    .iter()
                    .map(|(e, &c)| (e.clone(), BigInt::from(c)))
                    .collect();
                acc = Some((coeffs, BigInt::from(p), lm));
                last = None;
                continue;
            }
        }
        let (coeffs, m, _) = acc.as_ref()?;
        let half: BigInt = m / 2;
        let cand = MultiPoly::from_terms(
            n,
            coeffs
                .iter()
                .map(|(e, c)| (e.clone(), if c > &half { c - m } else { c.clone() })),
        )
        .primitive_part();
        if last.as_ref() == Some(&cand)
            && a.div_exact(&cand).is_some()
            && b.div_exact(&cand).is_some()
        {
            return Some(cand);
        }
        last = Some(cand);
    }
    None
}
