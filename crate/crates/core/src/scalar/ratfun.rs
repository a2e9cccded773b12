use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Signed;

use super::gcd::gcd;
use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// An element of Q(symbols): a reduced quotient of integer polynomials.
///
/// The numerator and denominator are coprime and the denominator has a
/// positive leading coefficient, so two values are equal iff their parts are
/// identical. Zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFun {
    pub fn zero(nvars: usize) -> Self {
        Self {
            num: MultiPoly::zero(nvars),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_int(nvars, 1)
    }

    pub fn from_int(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self {
            num: MultiPoly::constant(nvars, c),
            den: MultiPoly::one(nvars),
        }
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let n = p.nvars();
        Self {
            num: p,
            den: MultiPoly::one(n),
        }
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::from_poly(MultiPoly::var(nvars, var))
    }

    /// `num / den` brought to canonical form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: MultiPoly, den: MultiPoly) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return Self::zero(n);
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Self::with_sign(num, den)
    }

    /// Applies the sign convention to an already coprime pair.
    fn with_sign(num: MultiPoly, den: MultiPoly) -> Self {
        if den.leading_coeff().is_some_and(|c| c.is_negative()) {
            Self {
                num: -num,
                den: -den,
            }
        } else {
            Self { num, den }
        }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Rough size used to rank candidate pivots.
    pub fn size(&self) -> u64 {
        self.num.size() + self.den.size()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::with_sign(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    /// Substitutes `x_i -> x_i + offsets[i]`; symbols past the end of
    /// `offsets` (the parameters) are left alone.
    pub fn shift(&self, offsets: &[i64]) -> Self {
        if offsets.iter().all(|&o| o == 0) || self.is_constant() {
            return self.clone();
        }
        let mut full = vec![0i64; self.nvars()];
        full[..offsets.len()].copy_from_slice(offsets);
        // Translation is a ring automorphism fixing the top homogeneous part,
        // so coprimality and the sign of lc(den) both survive.
        Self {
            num: self.num.translate(&full),
            den: self.den.translate(&full),
        }
    }

    /// Substitutes `value` for the symbol `var`.
    pub fn substitute(&self, var: usize, value: &RatFun) -> Result<Self> {
        let num = subst_poly(&self.num, var, value);
        let den = subst_poly(&self.den, var, value);
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        num.checked_div(&den)
    }

    pub fn pow(&self, n: u32) -> Self {
        Self {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }
}

/// Horner evaluation of `p` in `var` with a rational function value.
fn subst_poly(p: &MultiPoly, var: usize, value: &RatFun) -> RatFun {
    let coeffs = p.to_univariate(var);
    let mut acc = RatFun::zero(p.nvars());
    for c in coeffs.iter().rev() {
        acc = &(&acc * value) + &RatFun::from_poly(c.clone());
    }
    acc
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFun::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // With g = gcd(b, d), b = g b', d = g d':
        // a/b + c/d = (a d' + c b') / (g b' d'), and only g can share factors
        // with the new numerator.
        let g = gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RatFun::zero(self.nvars());
            }
            let den = &self.den * &rhs.den;
            return RatFun::with_sign(num, den);
        }
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &d1) + &(&rhs.num * &b1);
        if num.is_zero() {
            return RatFun::zero(self.nvars());
        }
        let h = gcd(&num, &g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        let den = &(&b1 * &d1) * &g;
        RatFun::with_sign(num, den)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero(self.nvars());
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFun::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) are the only possible common factors.
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let a = cancel(&self.num, &g1);
        let d = cancel(&rhs.den, &g1);
        let c = cancel(&rhs.num, &g2);
        let b = cancel(&self.den, &g2);
        RatFun::with_sign(&a * &c, &b * &d)
    }
}

fn cancel(p: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    if g.is_one() {
        p.clone()
    } else {
        p.div_exact(g).expect("gcd divides")
    }
}

/// Panics on division by zero; use [`RatFun::checked_div`] when the divisor
/// may vanish.
impl Div for &RatFun {
    type Output = RatFun;
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl RatFun {
    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }
}

/// Symbols print as `s1, s2, ...`; use the frontend renderer for real names.
impl std::fmt::Display for RatFun {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize, i: usize) -> RatFun {
        RatFun::var(n, i)
    }
    fn c(n: usize, k: i64) -> RatFun {
        RatFun::from_int(n, k)
    }

    #[test]
    fn common_factor_cancels() {
        let x = v(1, 0);
        let a = &(&x * &x) - &c(1, 1);
        let b = &x - &c(1, 1);
        assert_eq!(&a / &b, &x + &c(1, 1));
    }

    #[test]
    fn sum_of_reciprocals() {
        let (x, y) = (v(2, 0), v(2, 1));
        let s = &(&c(2, 1) / &x) + &(&c(2, 1) / &y);
        let expected = RatFun::new(
            &MultiPoly::var(2, 0) + &MultiPoly::var(2, 1),
            &MultiPoly::var(2, 0) * &MultiPoly::var(2, 1),
        )
        .unwrap();
        assert_eq!(s, expected);
    }

    #[test]
    fn division_by_zero() {
        let x = v(1, 0);
        assert_eq!(x.checked_div(&RatFun::zero(1)), Err(Error::DivisionByZero));
        assert!(RatFun::new(MultiPoly::one(1), MultiPoly::zero(1)).is_err());
    }

    #[test]
    fn denominator_sign_normalized() {
        let x = MultiPoly::var(1, 0);
        let r = RatFun::new(MultiPoly::one(1), -&x).unwrap();
        assert!(r.denom().leading_coeff().unwrap().is_positive());
        assert_eq!(r.numer(), &MultiPoly::constant(1, -1));
    }

    #[test]
    fn shift_substitutes_variables_only() {
        // symbols: k, n | m
        let (k, n, m) = (v(3, 0), v(3, 1), v(3, 2));
        let a = &k / &(&n + &c(3, 1));
        assert_eq!(a.shift(&[1, 2]), &(&k + &c(3, 1)) / &(&n + &c(3, 3)));
        assert_eq!(m.shift(&[5, 5]), m);
        assert_eq!(a.shift(&[0, 0]), a);
    }

    #[test]
    fn specialize_parameter() {
        // symbols: n | m2, q2
        let (n, m2, q2) = (v(3, 0), v(3, 1), v(3, 2));
        let zero = RatFun::zero(3);
        let t = &(&c(3, 2) * &m2) * &n;
        assert!(t.substitute(1, &zero).unwrap().is_zero());
        assert_eq!((&q2 - &m2).substitute(1, &zero).unwrap(), q2);
        assert_eq!(
            (&c(3, 1) / &m2).substitute(1, &zero),
            Err(Error::DivisionByZero)
        );
    }
}
