//! Multivariate gcd over the integers.
//!
//! The polynomial is viewed as univariate in one of its symbols with
//! coefficients in the remaining ones; contents are taken recursively and the
//! primitive parts are combined by evaluation-based gcds, with a primitive
//! pseudo-remainder sequence as the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use super::modgcd::modular_gcd;
use super::poly::{Exponents, MultiPoly};

/// Greatest common divisor with positive leading coefficient.
///
/// `gcd(p, 0)` is the canonical associate of `p`; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.canonical_associate().1;
    }
    if b.is_zero() {
        return a.canonical_associate().1;
    }
    if a == b {
        return a.canonical_associate().1;
    }
    let ic = a.content().gcd(&b.content());
    if a.is_constant() || b.is_constant() {
        return MultiPoly::constant(n, ic);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mg: Exponents = ma.iter().zip(mb.iter()).map(|(x, y)| *x.min(y)).collect();
    let pa = a.div_monomial(&ma).primitive_part();
    let pb = b.div_monomial(&mb).primitive_part();
    let g = gcd_primitive(&pa, &pb);
    g.mul_monomial(&mg).scale(&ic)
}

/// Gcd of a whole list, stopping early once it becomes a unit.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a MultiPoly>, nvars: usize) -> MultiPoly {
    let mut g = MultiPoly::zero(nvars);
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Both inputs have unit integer content and no monomial factor.
fn gcd_primitive(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let n = a.nvars();
    if a.is_constant() || b.is_constant() {
        return MultiPoly::one(n);
    }
    let (_, ca) = a.canonical_associate();
    let (_, cb) = b.canonical_associate();
    if ca == cb {
        return ca;
    }
    // Trial division catches the frequent case where one divides the other.
    if ca.len() <= cb.len() {
        if cb.div_exact(&ca).is_some() {
            return ca;
        }
    } else if ca.div_exact(&cb).is_some() {
        return cb;
    }

    // A symbol present in only one argument cannot occur in the gcd, so the
    // gcd divides every coefficient with respect to that symbol.
    for v in 0..n {
        let in_a = a.contains_var(v);
        let in_b = b.contains_var(v);
        if in_a != in_b {
            let (with, without) = if in_a { (a, b) } else { (b, a) };
            let mut g = without.clone();
            for coeff in with.to_univariate(v) {
                if coeff.is_zero() {
                    continue;
                }
                g = gcd(&g, &coeff);
                if g.is_constant() {
                    return MultiPoly::one(n);
                }
            }
            return g.canonical_associate().1;
        }
    }

    let shared: Vec<usize> = (0..n).filter(|&v| a.contains_var(v)).collect();
    if shared
        .iter()
        .all(|&v| coprime_by_evaluation(&a.to_univariate(v), &b.to_univariate(v)))
    {
        return MultiPoly::one(n);
    }
    if let Some(g) = heuristic_gcd(a, b).or_else(|| modular_gcd(a, b)) {
        return g.canonical_associate().1;
    }

    let v = main_variable(a, b);
    let ua = a.to_univariate(v);
    let ub = b.to_univariate(v);
    let cont_a = gcd_many(ua.iter(), n);
    let cont_b = gcd_many(ub.iter(), n);
    let cont = gcd(&cont_a, &cont_b);
    let pa = strip_content(ua, &cont_a);
    let pb = strip_content(ub, &cont_b);
    if coprime_by_evaluation(&pa, &pb) {
        return cont.canonical_associate().1;
    }
    let g = primitive_prs(pa, pb, n);
    let g = MultiPoly::from_univariate(n, v, &g);
    (&g * &cont).canonical_associate().1
}

/// Gcd through evaluation at a large integer: the gcd of the images is
/// lifted back by its balanced xi-adic expansion and accepted only if it
/// divides both inputs. `None` when no evaluation point works.
fn heuristic_gcd(a: &MultiPoly, b: &MultiPoly) -> Option<MultiPoly> {
    let v = main_variable(a, b);
    let norm = |p: &MultiPoly| {
        p.terms()
            .iter()
            .map(|(_, c)| c.abs())
            .max()
            .unwrap_or_default()
    };
    let mut xi: BigInt = 2 * norm(a).min(norm(b)) + 29;
    let degree = a.degree_in(v).max(b.degree_in(v)) as u64;
    for _ in 0..6 {
        if xi.bits() * degree > HEURISTIC_BITS {
            return None;
        }
        let ea = eval_at(a, v, &xi);
        let eb = eval_at(b, v, &xi);
        if !ea.is_zero() && !eb.is_zero() {
            let gamma = gcd(&ea, &eb);
            let g = lift(gamma, v, &xi).primitive_part();
            if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                return Some(g);
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// `p` with symbol `v` set to `x` (the symbol stays, with degree 0).
fn eval_at(p: &MultiPoly, v: usize, x: &BigInt) -> MultiPoly {
    let n = p.nvars();
    let mut acc = MultiPoly::zero(n);
    for c in p.to_univariate(v).iter().rev() {
        acc = &acc.scale(x) + c;
        if acc.is_zero() {
            acc = MultiPoly::zero(n);
        }
    }
    acc
}

/// Inverse of `eval_at` for coefficients smaller than `xi / 2`.
fn lift(mut gamma: MultiPoly, v: usize, xi: &BigInt) -> MultiPoly {
    let n = gamma.nvars();
    let half = xi / 2;
    let mut coeffs = Vec::new();
    while !gamma.is_zero() {
        let digit = MultiPoly::from_terms(
            n,
            gamma.terms().iter().map(|(e, c)| {
                let mut r = c.mod_floor(xi);
                if r > half {
                    r -= xi;
                }
                (e.clone(), r)
            }),
        );
        gamma = (&gamma - &digit).div_scalar(xi);
        coeffs.push(digit);
        if coeffs.len() > 10_000 {
            break;
        }
    }
    if coeffs.is_empty() {
        return MultiPoly::zero(n);
    }
    MultiPoly::from_univariate(n, v, &coeffs)
}

/// The shared symbol of smallest degree; ties go to the later symbol.
fn main_variable(a: &MultiPoly, b: &MultiPoly) -> usize {
    let mut best: Option<(u32, usize)> = None;
    for v in 0..a.nvars() {
        let d = a.degree_in(v).max(b.degree_in(v));
        if d == 0 {
            continue;
        }
        match best {
            Some((bd, _)) if d > bd => {}
            _ => best = Some((d, v)),
        }
    }
    best.expect("non-constant inputs share a symbol").1
}

/// Size limit (bits of the evaluation point times degree) for `heuristic_gcd`.
const HEURISTIC_BITS: u64 = 2_000;

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(PRIME)) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn eval_mod(p: &MultiPoly, point: &[u64]) -> u64 {
    let m = num_bigint::BigInt::from(PRIME);
    let mut acc = 0u64;
    for (exps, c) in p.terms() {
        let c = c.mod_floor(&m);
        let mut t = u64::try_from(c).expect("reduced below the modulus");
        for (&x, &e) in point.iter().zip(exps.iter()) {
            if e > 0 {
                t = mul_mod(t, pow_mod(x, u64::from(e)));
            }
        }
        acc = (acc + t) % PRIME;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, PRIME - 2)
}

/// Degree of the gcd of two univariate polynomials over Z/PRIME.
fn gcd_degree_mod(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    let strip = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    strip(&mut a);
    strip(&mut b);
    while !b.is_empty() {
        // a := a mod b
        let lb_inv = inv_mod(*b.last().unwrap());
        while a.len() >= b.len() {
            let f = mul_mod(*a.last().unwrap(), lb_inv);
            let shift = a.len() - b.len();
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(f, bc);
                a[i + shift] = (a[i + shift] + PRIME - t) % PRIME;
            }
            strip(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Proves that two polynomials, primitive in the main symbol and given by
/// their coefficient lists, are coprime. A modular image at a point where
/// both leading coefficients survive can only have a larger gcd, so degree
/// zero there settles it; `false` means "not proved".
fn coprime_by_evaluation(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    let n = a[0].nvars();
    for attempt in 1..=3u64 {
        let point: Vec<u64> = (0..n as u64)
            .map(|i| {
                mul_mod(
                    0x9E37_79B9_7F4A_7C15 % PRIME,
                    attempt * 1_000_003 + i * 7919 + 17,
                )
            })
            .collect();
        let ia: Vec<u64> = a.iter().map(|c| eval_mod(c, &point)).collect();
        let ib: Vec<u64> = b.iter().map(|c| eval_mod(c, &point)).collect();
        if ia.last() == Some(&0) || ib.last() == Some(&0) {
            continue;
        }
        return gcd_degree_mod(ia, ib) == 0;
    }
    false
}

fn strip_content(coeffs: Vec<MultiPoly>, cont: &MultiPoly) -> Vec<MultiPoly> {
    if cont.is_one() {
        return coeffs;
    }
    coeffs
        .into_iter()
        .map(|c| {
            c.div_exact(cont)
                .expect("content divides every coefficient")
        })
        .collect()
}

fn degree(u: &[MultiPoly]) -> usize {
    u.len() - 1
}

fn trim(u: &mut Vec<MultiPoly>) {
    while u.len() > 1 && u.last().is_some_and(MultiPoly::is_zero) {
        u.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as univariate polynomials over Z[rest].
fn pseudo_rem(mut a: Vec<MultiPoly>, b: &[MultiPoly]) -> Vec<MultiPoly> {
    let db = degree(b);
    let lb = &b[db];
    while a.len() > db && !(a.len() == 1 && a[0].is_zero()) {
        let da = degree(&a);
        if da < db {
            break;
        }
        let la = a[da].clone();
        let shift = da - db;
        for c in a.iter_mut() {
            *c = &*c * lb;
        }
        for (i, bc) in b.iter().enumerate() {
            let t = bc * &la;
            a[i + shift] = &a[i + shift] - &t;
        }
        debug_assert!(a[da].is_zero());
        a.pop();
        trim(&mut a);
        if a.is_empty() {
            a.push(MultiPoly::zero(lb.nvars()));
        }
    }
    a
}

fn is_zero_uni(u: &[MultiPoly]) -> bool {
    u.iter().all(MultiPoly::is_zero)
}

fn primitive_prs(a: Vec<MultiPoly>, b: Vec<MultiPoly>, n: usize) -> Vec<MultiPoly> {
    let (mut r0, mut r1) = if degree(&a) >= degree(&b) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if degree(&r1) == 0 {
            return vec![MultiPoly::one(n)];
        }
        let r = pseudo_rem(r0, &r1);
        if is_zero_uni(&r) {
            return r1;
        }
        if degree(&r) == 0 {
            return vec![MultiPoly::one(n)];
        }
        let c = gcd_many(r.iter(), n);
        let r = strip_content(r, &c);
        r0 = r1;
        r1 = r;
    }
}
