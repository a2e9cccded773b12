use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u32; 8]>;

/// Graded lexicographic order on exponent vectors: total degree first, then
/// lexicographic with the first symbol heaviest.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
    let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Exponent vector ordered by `grlex`.
#[derive(Clone, PartialEq, Eq)]
struct Grlex(Exponents);

impl Ord for Grlex {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex(&self.0, &other.0)
    }
}

impl PartialOrd for Grlex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are kept strictly descending in [`grlex`] order with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: Vec<(Exponents, BigInt)>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Self {
            nvars,
            terms: vec![(SmallVec::from_elem(0, nvars), c)],
        }
    }

    /// The symbol with index `var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e: Exponents = SmallVec::from_elem(0, nvars);
        e[var] = 1;
        Self {
            nvars,
            terms: vec![(e, BigInt::one())],
        }
    }

    pub fn monomial(exps: Exponents, c: BigInt) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Self {
            nvars,
            terms: vec![(exps, c)],
        }
    }

    /// Builds a polynomial from an arbitrary term list: like terms are merged
    /// and zero coefficients dropped.
    pub fn from_terms(nvars: usize, raw: impl IntoIterator<Item = (Exponents, BigInt)>) -> Self {
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in raw {
            debug_assert_eq!(e.len(), nvars);
            *acc.entry(e).or_insert_with(BigInt::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Exponents, BigInt>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
        Self { nvars, terms }
    }

    /// Assumes `terms` is already strictly descending and free of zeros.
    pub(crate) fn from_sorted(nvars: usize, terms: Vec<(Exponents, BigInt)>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| grlex(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exponents, BigInt)] {
        &self.terms
    }

    /// Number of nonzero terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_exponents(&self) -> Option<&Exponents> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[var]).max().unwrap_or(0)
    }

    pub fn contains_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(e, _)| e[var] > 0)
    }

    /// Sum of the bit lengths of all coefficients plus the number of terms;
    /// used as a cheap size measure for pivot selection.
    pub fn size(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.bits() + 1).sum()
    }

    /// Nonnegative gcd of the integer coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Divides every coefficient by `c`; `c` must divide all of them.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        if c.is_one() {
            return self.clone();
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| {
                    debug_assert!((k % c).is_zero());
                    (e.clone(), k / c)
                })
                .collect(),
        }
    }

    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.div_scalar(&self.content())
    }

    /// Splits off the sign that makes the leading coefficient positive:
    /// returns `(negated, p')` with `p = ±p'` and `lc(p') > 0`.
    pub fn canonical_associate(&self) -> (bool, Self) {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => (true, -self),
            _ => (false, self.clone()),
        }
    }

    /// Elementwise minimum of all exponent vectors.
    pub fn monomial_content(&self) -> Exponents {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return SmallVec::from_elem(0, self.nvars);
        };
        let mut m = first.clone();
        for (e, _) in it {
            for (a, &b) in m.iter_mut().zip(e.iter()) {
                *a = (*a).min(b);
            }
        }
        m
    }

    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, exps: &[u32]) -> Self {
        if exps.iter().all(|&e| e == 0) {
            return self.clone();
        }
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact division: returns `Some(q)` with `self = q * d`, or `None` if `d`
    /// does not divide `self` over the integers.
    pub fn div_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        if d.is_constant() {
            let c = &d.terms[0].1;
            if self.terms.iter().all(|(_, k)| (k % c).is_zero()) {
                return Some(self.div_scalar(c));
            }
            return None;
        }
        if d.is_monomial() {
            let (de, dc) = &d.terms[0];
            let ok = self
                .terms
                .iter()
                .all(|(e, k)| e.iter().zip(de).all(|(a, b)| a >= b) && (k % dc).is_zero());
            if !ok {
                return None;
            }
            return Some(Self {
                nvars: self.nvars,
                terms: self
                    .terms
                    .iter()
                    .map(|(e, k)| (e.iter().zip(de).map(|(a, b)| a - b).collect(), k / dc))
                    .collect(),
            });
        }
        // Cheap rejections: degree per symbol and total degree.
        for v in 0..self.nvars {
            if d.degree_in(v) > self.degree_in(v) {
                return None;
            }
        }
        let (de, dc) = &d.terms[0];
        let mut rem: BTreeMap<Grlex, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (Grlex(e.clone()), c.clone()))
            .collect();
        let mut quot: Vec<(Exponents, BigInt)> = Vec::new();
        while let Some((Grlex(re), rc)) = rem.pop_last() {
            if !re.iter().zip(de).all(|(a, b)| a >= b) {
                return None;
            }
            let (q, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let qe: Exponents = re.iter().zip(de).map(|(a, b)| a - b).collect();
            for (e, c) in &d.terms[1..] {
                let key = Grlex(e.iter().zip(&qe).map(|(a, b)| a + b).collect());
                match rem.entry(key) {
                    Entry::Occupied(mut slot) => {
                        *slot.get_mut() -= &q * c;
                        if slot.get().is_zero() {
                            slot.remove();
                        }
                    }
                    Entry::Vacant(slot) => {
                        slot.insert(-(&q * c));
                    }
                }
            }
            quot.push((qe, q));
        }
        Some(Self::from_sorted(self.nvars, quot))
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(e, _)| e[var] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[var] -= 1;
                (e2, c * BigInt::from(e[var]))
            })
            .collect();
        // Lowering one exponent can reorder terms of different degree.
        Self::from_terms(self.nvars, terms)
    }

    /// Coefficients with respect to `var`: entry `i` multiplies `var^i`.
    pub fn to_univariate(&self, var: usize) -> Vec<MultiPoly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Exponents, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let i = e2[var] as usize;
            e2[var] = 0;
            buckets[i].push((e2, c.clone()));
        }
        buckets
            .into_iter()
            .map(|t| {
                // Removing a single symbol keeps relative grlex order only up to
                // degree ties, so re-sort.
                let mut p = Self {
                    nvars: self.nvars,
                    terms: t,
                };
                p.terms.sort_unstable_by(|a, b| grlex(&b.0, &a.0));
                p
            })
            .collect()
    }

    pub fn from_univariate(nvars: usize, var: usize, coeffs: &[MultiPoly]) -> Self {
        let mut raw = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            for (e, k) in &c.terms {
                let mut e2 = e.clone();
                e2[var] += i as u32;
                raw.push((e2, k.clone()));
            }
        }
        Self::from_terms(nvars, raw)
    }

    /// Substitutes `x_i -> x_i + offsets[i]` for every symbol simultaneously.
    pub fn translate(&self, offsets: &[i64]) -> Self {
        debug_assert_eq!(offsets.len(), self.nvars);
        if offsets.iter().all(|&o| o == 0) || self.is_constant() {
            return self.clone();
        }
        // Powers (x_i + o_i)^k as univariate coefficient lists, cached per symbol.
        let mut cache: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); self.nvars];
        let mut acc: HashMap<Exponents, BigInt> = HashMap::new();
        for (e, c) in &self.terms {
            // Expand prod_i (x_i + o_i)^{e_i} as a product of univariate binomials.
            let mut partial: Vec<(Exponents, BigInt)> =
                vec![(SmallVec::from_elem(0, self.nvars), c.clone())];
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if offsets[i] == 0 {
                    for (pe, _) in partial.iter_mut() {
                        pe[i] = k;
                    }
                    continue;
                }
                let row = binomial_row(&mut cache[i], offsets[i], k);
                let mut next = Vec::with_capacity(partial.len() * row.len());
                for (pe, pc) in &partial {
                    for (j, b) in row.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let mut ne = pe.clone();
                        ne[i] = j as u32;
                        next.push((ne, pc * b));
                    }
                }
                partial = next;
            }
            for (pe, pc) in partial {
                *acc.entry(pe).or_insert_with(BigInt::zero) += pc;
            }
        }
        Self::from_map(self.nvars, acc)
    }

    /// Evaluates every symbol at an integer point.
    pub fn eval_integers(&self, point: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e.iter()) {
                if k > 0 {
                    t *= num_traits::pow(x.clone(), k as usize);
                }
            }
            total += t;
        }
        total
    }
}

/// Coefficients of `(x + o)^k` indexed by the power of `x`.
fn binomial_row(cache: &mut Vec<Vec<BigInt>>, o: i64, k: u32) -> Vec<BigInt> {
    if cache.is_empty() {
        cache.push(vec![BigInt::one()]);
    }
    while cache.len() <= k as usize {
        let prev = cache.last().unwrap();
        let o = BigInt::from(o);
        let mut next = vec![BigInt::zero(); prev.len() + 1];
        for (j, c) in prev.iter().enumerate() {
            next[j + 1] += c;
            next[j] += c * &o;
        }
        cache.push(next);
    }
    cache[k as usize].clone()
}

/// Merges two strictly descending term lists, optionally negating `b`.
fn merge(
    a: &[(Exponents, BigInt)],
    b: &[(Exponents, BigInt)],
    negate_b: bool,
) -> Vec<(Exponents, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match grlex(&a[i].0, &b[j].0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -&b[j].1 } else { b[j].1.clone() };
                out.push((b[j].0.clone(), c));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    &a[i].1 - &b[j].1
                } else {
                    &a[i].1 + &b[j].1
                };
                if !c.is_zero() {
                    out.push((a[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    for t in &b[j..] {
        let c = if negate_b { -&t.1 } else { t.1.clone() };
        out.push((t.0.clone(), c));
    }
    out
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        MultiPoly {
            nvars: self.nvars,
            terms: merge(&self.terms, &rhs.terms, false),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        MultiPoly {
            nvars: self.nvars,
            terms: merge(&self.terms, &rhs.terms, true),
        }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for (_, c) in self.terms.iter_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        debug_assert_eq!(self.nvars, rhs.nvars);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        if self.is_constant() {
            return rhs.scale(&self.terms[0].1);
        }
        if rhs.is_constant() {
            return self.scale(&rhs.terms[0].1);
        }
        if self.is_monomial() {
            let (e, c) = &self.terms[0];
            return rhs.mul_monomial(e).scale(c);
        }
        if rhs.is_monomial() {
            let (e, c) = &rhs.terms[0];
            return self.mul_monomial(e).scale(c);
        }
        let mut acc: HashMap<Exponents, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let p = ca * cb;
                match acc.get_mut(&e) {
                    Some(v) => *v += p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        MultiPoly::from_map(self.nvars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Symbols print as `s1, s2, ...`.
impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (v, &e) in exps.iter().enumerate().filter(|(_, &e)| e > 0) {
                write!(f, "*s{}", v + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}
