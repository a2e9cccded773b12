//! Randomized checks of the coefficient field.

use lda_core::scalar::{factor_poly, gcd, MultiPoly, RatFun};
use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_terms: usize,
    max_deg: u32,
) -> MultiPoly {
    let n = rng.gen_range(0..=max_terms);
    MultiPoly::from_terms(
        nvars,
        (0..n).map(|_| {
            let e: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=max_deg)).collect();
            (
                e.into_iter().collect(),
                BigInt::from(rng.gen_range(-9i64..=9)),
            )
        }),
    )
}

pub fn random_ratfun(rng: &mut ChaCha8Rng, nvars: usize) -> RatFun {
    let num = random_poly(rng, nvars, 3, 2);
    let mut den = random_poly(rng, nvars, 2, 1);
    if den.is_zero() {
        den = MultiPoly::one(nvars);
    }
    RatFun::new(num, den).unwrap()
}

fn nonzero(rng: &mut ChaCha8Rng, nvars: usize) -> RatFun {
    loop {
        let a = random_ratfun(rng, nvars);
        if !a.is_zero() {
            return a;
        }
    }
}

/// `num(a)/den(a)` at `pt`, as a pair, or None when the denominator vanishes.
fn eval(a: &RatFun, pt: &[BigInt]) -> Option<(BigInt, BigInt)> {
    let d = a.denom().eval_integers(pt);
    (d != BigInt::from(0)).then(|| (a.numer().eval_integers(pt), d))
}

fn same_value(x: &(BigInt, BigInt), y: &(BigInt, BigInt)) -> bool {
    &x.0 * &y.1 == &y.0 * &x.1
}

fn is_canonical(a: &RatFun) -> bool {
    let lc_positive = a
        .denom()
        .leading_coeff()
        .is_some_and(|c| c > &BigInt::from(0));
    lc_positive && gcd(a.numer(), a.denom()).is_constant()
}

/// Runs `checks` field-axiom, canonical-form, evaluation and shift checks.
/// Returns descriptions of the failing ones.
pub fn field_suite(checks: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..checks {
        let nvars = rng.gen_range(1..=3);
        let a = random_ratfun(&mut rng, nvars);
        let b = random_ratfun(&mut rng, nvars);
        let c = random_ratfun(&mut rng, nvars);
        let kind = i % 8;
        let ok = match kind {
            0 => &a + &b == &b + &a && &(&a + &b) + &c == &a + &(&b + &c),
            1 => &a * &b == &b * &a && &(&a * &b) * &c == &a * &(&b * &c),
            2 => &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            3 => {
                let d = nonzero(&mut rng, nvars);
                (&a + &(-&a)).is_zero() && (&d * &d.inv().unwrap()).is_one() && &(&a / &d) * &d == a
            }
            4 => {
                // the same value written with a common factor is stored identically
                let g = random_poly(&mut rng, nvars, 2, 1);
                if g.is_zero() {
                    true
                } else {
                    let scaled = RatFun::new(a.numer() * &g, a.denom() * &g).unwrap();
                    scaled == a && is_canonical(&a) && is_canonical(&(&a + &b))
                }
            }
            5 => {
                // arithmetic agrees with evaluation at an integer point
                let pt: Vec<BigInt> = (0..nvars)
                    .map(|_| BigInt::from(rng.gen_range(-20..=20)))
                    .collect();
                match (
                    eval(&a, &pt),
                    eval(&b, &pt),
                    eval(&(&a * &b), &pt),
                    eval(&(&a + &b), &pt),
                ) {
                    (Some(x), Some(y), Some(p), Some(s)) => {
                        let prod = (&x.0 * &y.0, &x.1 * &y.1);
                        let sum = (&x.0 * &y.1 + &y.0 * &x.1, &x.1 * &y.1);
                        same_value(&p, &prod) && same_value(&s, &sum)
                    }
                    _ => true,
                }
            }
            6 => {
                let o: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
                (&a + &b).shift(&o) == &a.shift(&o) + &b.shift(&o)
                    && (&a * &b).shift(&o) == &a.shift(&o) * &b.shift(&o)
                    && is_canonical(&a.shift(&o))
            }
            _ => {
                let o1: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
                let o2: Vec<i64> = (0..nvars).map(|_| rng.gen_range(-3..=3)).collect();
                let sum: Vec<i64> = o1.iter().zip(&o2).map(|(x, y)| x + y).collect();
                let back: Vec<i64> = o1.iter().map(|x| -x).collect();
                a.shift(&o1).shift(&o2) == a.shift(&sum) && a.shift(&o1).shift(&back) == a
            }
        };
        if !ok {
            failures.push(format!(
                "check {i} (kind {kind}): a = {a}, b = {b}, c = {c}"
            ));
        }
    }
    failures
}

/// Factors `count` random products of linear forms and compares the factor
/// multiset and the expansion with the construction.
pub fn factor_suite(count: usize, seed: u64) -> Vec<String> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for i in 0..count {
        let nvars = rng.gen_range(1..=4);
        let unit = BigInt::from(rng.gen_range(1i64..=12) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let mut product = MultiPoly::constant(nvars, unit);
        let mut expected: Vec<(MultiPoly, u32)> = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let f = loop {
                let mut terms: Vec<(Vec<u32>, BigInt)> = Vec::new();
                for v in 0..nvars {
                    if rng.gen_bool(0.6) {
                        let mut e = vec![0u32; nvars];
                        e[v] = 1;
                        terms.push((e, BigInt::from(rng.gen_range(-3i64..=3))));
                    }
                }
                terms.push((vec![0; nvars], BigInt::from(rng.gen_range(-6i64..=6))));
                let f = MultiPoly::from_terms(
                    nvars,
                    terms.into_iter().map(|(e, c)| (e.into_iter().collect(), c)),
                );
                if f.total_degree() == 1 {
                    break f;
                }
            };
            let m = rng.gen_range(1..=3);
            product = &product * &f.pow(m);
            let f = f.primitive_part().canonical_associate().1;
            match expected.iter_mut().find(|(g, _)| *g == f) {
                Some(slot) => slot.1 += m,
                None => expected.push((f, m)),
            }
        }
        let got = factor_poly(&product);
        let mut got_factors = got.factors.clone();
        got_factors.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
        expected.sort_by(|x, y| format!("{x:?}").cmp(&format!("{y:?}")));
        if got.expand(nvars) != product || got_factors != expected {
            failures.push(format!("product {i}: {product}"));
        }
    }
    failures
}
