use std::collections::BTreeMap;

use super::ranking::Ranking;
use super::term::DiffTerm;
use crate::error::{Error, Result};
use crate::scalar::RatFun;

/// `constant + sum c_t * t`: a linear difference polynomial over Q(symbols).
///
/// The constant is the inhomogeneous part and never a leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    nsyms: usize,
    terms: BTreeMap<DiffTerm, RatFun>,
    constant: RatFun,
}

impl DiffPoly {
    pub fn zero(nsyms: usize) -> Self {
        Self {
            nsyms,
            terms: BTreeMap::new(),
            constant: RatFun::zero(nsyms),
        }
    }

    pub fn term(t: DiffTerm, c: RatFun) -> Self {
        let mut p = Self::zero(c.nvars());
        p.add_term(t, c);
        p
    }

    pub fn constant_poly(c: RatFun) -> Self {
        let mut p = Self::zero(c.nvars());
        p.constant = c;
        p
    }

    pub fn from_terms(
        nsyms: usize,
        terms: impl IntoIterator<Item = (DiffTerm, RatFun)>,
        constant: RatFun,
    ) -> Self {
        let mut p = Self::zero(nsyms);
        for (t, c) in terms {
            p.add_term(t, c);
        }
        p.constant = constant;
        p
    }

    pub fn nsyms(&self) -> usize {
        self.nsyms
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DiffTerm, &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, t: &DiffTerm) -> Option<&RatFun> {
        self.terms.get(t)
    }

    pub fn constant(&self) -> &RatFun {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    /// No difference terms at all (possibly a nonzero constant).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, t: DiffTerm, c: RatFun) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&t) {
            Some(a) => {
                let s = &*a + &c;
                if s.is_zero() {
                    self.terms.remove(&t);
                } else {
                    *a = s;
                }
            }
            None => {
                self.terms.insert(t, c);
            }
        }
    }

    pub fn add_constant(&mut self, c: &RatFun) {
        self.constant = &self.constant + c;
    }

    pub fn remove_term(&mut self, t: &DiffTerm) -> Option<RatFun> {
        self.terms.remove(t)
    }

    pub fn retain_terms(&mut self, mut keep: impl FnMut(&DiffTerm) -> bool) {
        self.terms.retain(|t, _| keep(t));
    }

    pub fn functions(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().map(|t| t.func)
    }

    pub fn max_degree(&self) -> u32 {
        self.terms.keys().map(DiffTerm::degree).max().unwrap_or(0)
    }

    /// The ranking-maximal term and its coefficient.
    pub fn leading_term(&self, r: &Ranking) -> Result<(&DiffTerm, &RatFun)> {
        self.terms
            .iter()
            .max_by(|a, b| r.compare(a.0, b.0))
            .ok_or(Error::NoLeadingTerm)
    }

    /// Terms sorted by descending rank.
    pub fn sorted_terms(&self, r: &Ranking) -> Vec<(&DiffTerm, &RatFun)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| r.compare(b.0, a.0));
        v
    }

    /// `theta^beta` applied to the whole equation: exponents move by `beta`
    /// and every coefficient is shifted, `theta_i a(x) = a(x + e_i) theta_i`.
    pub fn apply_shift(&self, beta: &[u32]) -> Self {
        if beta.iter().all(|&b| b == 0) {
            return self.clone();
        }
        let offsets: Vec<i64> = beta.iter().map(|&b| i64::from(b)).collect();
        Self {
            nsyms: self.nsyms,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.shifted(beta), c.shift(&offsets)))
                .collect(),
            constant: self.constant.shift(&offsets),
        }
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return Self::zero(self.nsyms);
        }
        if c.is_one() {
            return self.clone();
        }
        Self {
            nsyms: self.nsyms,
            terms: self.terms.iter().map(|(t, a)| (t.clone(), a * c)).collect(),
            constant: &self.constant * c,
        }
    }

    /// `c1 * p1 + c2 * p2`.
    pub fn linear_combine(c1: &RatFun, p1: &DiffPoly, c2: &RatFun, p2: &DiffPoly) -> DiffPoly {
        let mut out = p1.scale(c1);
        out.add_scaled(c2, p2);
        out
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: &RatFun, other: &DiffPoly) {
        if c.is_zero() {
            return;
        }
        for (t, a) in &other.terms {
            self.add_term(t.clone(), a * c);
        }
        if !other.constant.is_zero() {
            self.constant = &self.constant + &(&other.constant * c);
        }
    }

    /// Divides by the leading coefficient.
    pub fn make_monic(&self, r: &Ranking) -> Result<Self> {
        let (_, lc) = self.leading_term(r)?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scale(&lc.inv()?))
    }

    /// Applies `f` to every coefficient (including the constant) and drops
    /// terms that become zero.
    pub fn try_map_coeffs(&self, mut f: impl FnMut(&RatFun) -> Result<RatFun>) -> Result<Self> {
        let mut out = Self::zero(self.nsyms);
        for (t, c) in &self.terms {
            out.add_term(t.clone(), f(c)?);
        }
        out.constant = f(&self.constant)?;
        Ok(out)
    }
}
