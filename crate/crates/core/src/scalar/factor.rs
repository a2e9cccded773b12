//! Presentation-level factorization of rational functions.
//!
//! Integer content, monomial factors, content with respect to each symbol,
//! square-free parts and factors of degree one in some symbol are split off.
//! Whatever remains is returned as is; this is not a complete multivariate
//! factorization.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::gcd::{gcd, gcd_many};
use super::poly::{grlex, MultiPoly};
use super::ratfun::RatFun;

/// Upper bound on linear-factor candidates tried per symbol.
const MAX_CANDIDATES: usize = 20_000;

/// `unit * prod(factor^mult)`: every factor is primitive, non-constant and
/// has a positive leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: BigInt,
    pub factors: Vec<(MultiPoly, u32)>,
}

/// Numerator and denominator factorizations of a rational function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredRatFun {
    pub numer: FactoredPoly,
    pub denom: FactoredPoly,
}

impl FactoredPoly {
    pub fn expand(&self, nvars: usize) -> MultiPoly {
        let mut acc = MultiPoly::constant(nvars, self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

impl FactoredRatFun {
    pub fn expand(&self, nvars: usize) -> RatFun {
        RatFun::new(self.numer.expand(nvars), self.denom.expand(nvars))
            .expect("nonzero denominator")
    }
}

/// Factors numerator and denominator of `a` separately.
pub fn factor_ratfun(a: &RatFun) -> FactoredRatFun {
    FactoredRatFun {
        numer: factor_poly(a.numer()),
        denom: factor_poly(a.denom()),
    }
}

pub fn factor_poly(p: &MultiPoly) -> FactoredPoly {
    let n = p.nvars();
    if p.is_zero() {
        return FactoredPoly {
            unit: BigInt::zero(),
            factors: Vec::new(),
        };
    }
    let mut unit = p.content();
    let (neg, q) = p.canonical_associate();
    if neg {
        unit = -unit;
    }
    let q = q.primitive_part();
    let mut factors: Vec<(MultiPoly, u32)> = Vec::new();

    let mono = q.monomial_content();
    for (v, &e) in mono.iter().enumerate() {
        if e > 0 {
            push_factor(&mut factors, MultiPoly::var(n, v), e);
        }
    }
    let rest = q.div_monomial(&mono);

    let mut work = vec![(rest, 1u32)];
    while let Some((f, m)) = work.pop() {
        if f.is_constant() {
            continue;
        }
        match split(&f) {
            Some((a, b)) => {
                work.push((a, m));
                work.push((b, m));
            }
            None => push_factor(&mut factors, f, m),
        }
    }

    // Each split normalizes its pieces to positive leading coefficients, so
    // the product can differ from `q` by a sign only.
    let mut out = FactoredPoly { unit, factors };
    let check = out.expand(n);
    if check != *p {
        debug_assert_eq!(-&check, *p);
        out.unit = -out.unit;
    }
    out.factors.sort_by(|(a, ma), (b, mb)| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| cmp_poly(a, b))
            .then(ma.cmp(mb))
    });
    out
}

fn cmp_poly(a: &MultiPoly, b: &MultiPoly) -> std::cmp::Ordering {
    for (x, y) in a.terms().iter().zip(b.terms()) {
        let o = grlex(&y.0, &x.0).then_with(|| x.1.cmp(&y.1));
        if o.is_ne() {
            return o;
        }
    }
    a.len().cmp(&b.len())
}

fn push_factor(factors: &mut Vec<(MultiPoly, u32)>, f: MultiPoly, m: u32) {
    let f = f.canonical_associate().1.primitive_part();
    if let Some(slot) = factors.iter_mut().find(|(g, _)| *g == f) {
        slot.1 += m;
    } else {
        factors.push((f, m));
    }
}

/// Finds a nontrivial splitting `q = ±a*b` of a primitive polynomial with no
/// monomial factor, or `None` if none of the supported patterns applies.
fn split(q: &MultiPoly) -> Option<(MultiPoly, MultiPoly)> {
    let n = q.nvars();
    let mut vars: Vec<usize> = (0..n).filter(|&v| q.contains_var(v)).collect();
    vars.sort_by_key(|&v| (q.degree_in(v), v));

    for &v in &vars {
        let coeffs = q.to_univariate(v);
        let cont = gcd_many(coeffs.iter(), n);
        if !cont.is_constant() {
            let rest = q.div_exact(&cont).expect("content divides");
            return Some((cont, rest));
        }
    }
    for &v in &vars {
        if q.degree_in(v) >= 2 {
            let g = gcd(q, &q.derivative(v));
            if !g.is_constant() {
                let rest = q.div_exact(&g).expect("gcd divides");
                return Some((g, rest));
            }
        }
    }
    // Primitive of degree one in some symbol: irreducible.
    if vars.iter().any(|&v| q.degree_in(v) == 1) {
        return None;
    }
    for &v in &vars {
        if let Some(f) = linear_factor(q, v) {
            let rest = q.div_exact(&f).expect("checked by trial division");
            return Some((f, rest));
        }
    }
    None
}

/// Searches for a factor `a*v + b` of total degree one: `a` is an integer
/// dividing the content of `lc_v(q)` and `b` an integer multiple of a
/// degree-one factor of `tc_v(q)` (or an integer).
fn linear_factor(q: &MultiPoly, v: usize) -> Option<MultiPoly> {
    let n = q.nvars();
    let coeffs = q.to_univariate(v);
    let lc = coeffs.last().unwrap();
    let tc = &coeffs[0];
    if tc.is_zero() {
        return None;
    }
    let lead_divs = integer_divisors(&lc.content());
    let tail = factor_poly(tc);
    let mut forms: Vec<MultiPoly> = vec![MultiPoly::one(n)];
    forms.extend(
        tail.factors
            .iter()
            .filter(|(g, _)| g.total_degree() == 1)
            .map(|(g, _)| g.clone()),
    );
    let scales = integer_divisors(&tail.unit.abs());
    if lead_divs.len() * scales.len() * forms.len() * 2 > MAX_CANDIDATES {
        return None;
    }

    // Fixed evaluation point for the other symbols, used as a cheap filter.
    let point: Vec<BigInt> = (0..n).map(|i| BigInt::from(7 + 13 * i as i64)).collect();
    let q_at: Vec<BigInt> = coeffs.iter().map(|c| c.eval_integers(&point)).collect();
    let x_v = MultiPoly::var(n, v);

    for a in &lead_divs {
        let av = x_v.scale(a);
        for form in &forms {
            let form_at = form.eval_integers(&point);
            for g in &scales {
                for sign in [1i32, -1] {
                    let g = if sign < 0 { -g } else { g.clone() };
                    // Root -b/a of a*v + b must be a root of q at the point.
                    if !vanishes_at(&q_at, &-(&g * &form_at), a) {
                        continue;
                    }
                    let cand = &av + &form.scale(&g);
                    if q.div_exact(&cand).is_some() {
                        return Some(cand);
                    }
                }
            }
        }
    }
    None
}

/// Whether `sum c_i (num/den)^i` is zero, scaled by `den^deg`.
fn vanishes_at(coeffs: &[BigInt], num: &BigInt, den: &BigInt) -> bool {
    let deg = coeffs.len() - 1;
    let mut acc = BigInt::zero();
    let mut num_pow = BigInt::one();
    let mut den_pows = vec![BigInt::one(); deg + 1];
    for i in 1..=deg {
        den_pows[i] = &den_pows[i - 1] * den;
    }
    for (i, c) in coeffs.iter().enumerate() {
        acc += c * &num_pow * &den_pows[deg - i];
        num_pow *= num;
    }
    acc.is_zero()
}

fn integer_divisors(n: &BigInt) -> Vec<BigInt> {
    let Some(mut m) = n.to_u64() else {
        return vec![BigInt::one(), n.clone()];
    };
    if m == 0 {
        return vec![BigInt::one()];
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut p = 2u64;
    while p * p <= m && p < 1_000_000 {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            primes.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut acc = *d;
            next.push(acc);
            for _ in 0..e {
                acc *= p;
                next.push(acc);
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    divs.into_iter().map(BigInt::from).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }
    fn c(n: usize, k: i64) -> MultiPoly {
        MultiPoly::constant(n, k)
    }

    #[test]
    fn monomial_and_linear_parts() {
        // symbols: k, q
        let (k, q) = (s(2, 0), s(2, 1));
        let p = &(&q.pow(6) * &k.pow(2)) + &(&q.pow(6) * &k);
        let f = factor_poly(&p);
        assert_eq!(f.unit, BigInt::one());
        assert!(f.factors.contains(&(q.clone(), 6)));
        assert!(f.factors.contains(&(k.clone(), 1)));
        assert!(f.factors.contains(&(&k + &c(2, 1), 1)));
        assert_eq!(f.expand(2), p);
    }

    #[test]
    fn product_of_linear_forms_recovered() {
        // symbols: k, n, d
        let (k, n, d) = (s(3, 0), s(3, 1), s(3, 2));
        let two = BigInt::from(2);
        let l1 = &(&(&n.scale(&two) + &c(3, 4)) - &d) + &k.scale(&two);
        let l2 = &(&(&n.scale(&two) + &c(3, 2)) - &d) + &k.scale(&two);
        let p = &l1 * &l2;
        let f = factor_poly(&p);
        assert_eq!(f.factors.len(), 2);
        assert!(f
            .factors
            .iter()
            .all(|(g, m)| *m == 1 && g.total_degree() == 1));
        assert_eq!(f.expand(3), p);
    }

    #[test]
    fn irreducible_left_alone() {
        let (x, y) = (s(2, 0), s(2, 1));
        let p = &x.pow(2) + &y.pow(2);
        let f = factor_poly(&p);
        assert_eq!(f.factors, vec![(p, 1)]);
    }

    #[test]
    fn squares_and_signs() {
        let (x, y) = (s(2, 0), s(2, 1));
        let l = &x - &y;
        let p = (&l.pow(2) * &(&x + &c(2, 3))).scale(&BigInt::from(-6));
        let f = factor_poly(&p);
        assert_eq!(f.expand(2), p);
        assert!(f.factors.iter().any(|(_, m)| *m == 2));
        assert_eq!(f.unit.abs(), BigInt::from(6));
    }
}
