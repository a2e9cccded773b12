//! Brute-force membership and normal forms by linear algebra on all shifts of
//! the input equations up to a degree bound. Slow and independent of the
//! Janet machinery; used to cross-check it.

use std::collections::{BTreeMap, HashMap};

use crate::diff::{DiffPoly, DiffTerm, Ranking};
use crate::error::{Error, Result};
use crate::janet::MarkedBasis;
use crate::scalar::RatFun;

type Row = BTreeMap<usize, RatFun>;

/// All shifts `theta^alpha f` with `|alpha| <= bound`, in echelon form.
///
/// Column 0 is the ranking-highest term; the inhomogeneous constant is the
/// last column.
#[derive(Clone, Debug)]
pub struct ProlongationMatrix {
    columns: Vec<DiffTerm>,
    index: HashMap<DiffTerm, usize>,
    // pivot column -> monic row whose first entry is that column
    pivots: BTreeMap<usize, Row>,
    nsyms: usize,
    max_degree: u32,
}

/// All exponent vectors of length `n` with entries summing to at most `d`.
fn shifts_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for e in 0..=(d - used) {
                let mut w = v.clone();
                w.push(e);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

impl ProlongationMatrix {
    pub fn build(equations: &[DiffPoly], ranking: &Ranking, bound: u32) -> Self {
        let nvars = ranking.num_variables();
        let nsyms = equations.first().map_or(0, DiffPoly::nsyms);
        let mut raw: Vec<DiffPoly> = Vec::new();
        for alpha in shifts_up_to(nvars, bound) {
            for f in equations.iter().filter(|f| !f.is_zero()) {
                raw.push(f.apply_shift(&alpha));
            }
        }
        let mut columns: Vec<DiffTerm> = raw
            .iter()
            .flat_map(|p| p.terms().map(|(t, _)| t.clone()))
            .collect();
        columns.sort_by(|a, b| ranking.compare(b, a));
        columns.dedup();
        let index: HashMap<DiffTerm, usize> = columns
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        let constant_col = columns.len();
        let rows: Vec<Row> = raw
            .iter()
            .map(|p| {
                let mut r: Row = p.terms().map(|(t, c)| (index[t], c.clone())).collect();
                if !p.constant().is_zero() {
                    r.insert(constant_col, p.constant().clone());
                }
                r
            })
            .collect();
        let max_degree = equations
            .iter()
            .map(DiffPoly::max_degree)
            .max()
            .unwrap_or(0)
            + bound;
        let mut m = Self {
            columns,
            index,
            pivots: BTreeMap::new(),
            nsyms,
            max_degree,
        };
        m.echelon(rows);
        m
    }

    fn echelon(&mut self, mut rows: Vec<Row>) {
        rows.retain(|r| !r.is_empty());
        while !rows.is_empty() {
            // lowest column index present = highest ranked term
            let col = rows
                .iter()
                .filter_map(|r| r.keys().next().copied())
                .min()
                .expect("nonempty rows");
            let (with, mut without): (Vec<Row>, Vec<Row>) = rows
                .into_iter()
                .partition(|r| r.keys().next() == Some(&col));
            let best = with
                .iter()
                .enumerate()
                .min_by_key(|(_, r)| r.values().map(RatFun::size).sum::<u64>())
                .map(|(i, _)| i)
                .expect("column has a row");
            let mut with = with;
            let pivot = with.swap_remove(best);
            let inv = pivot[&col].inv().expect("nonzero entry");
            let pivot: Row = pivot.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
            for r in with {
                let reduced = subtract_multiple(r, &pivot, col);
                if !reduced.is_empty() {
                    without.push(reduced);
                }
            }
            self.pivots.insert(col, pivot);
            rows = without;
        }
    }

    pub fn columns(&self) -> &[DiffTerm] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether the inhomogeneous column carries a pivot (then 1 is a consequence).
    pub fn is_inconsistent(&self) -> bool {
        self.pivots.contains_key(&self.columns.len())
    }

    /// `h` minus its projection on the row space, reducing from the top.
    pub fn normal_form(&self, h: &DiffPoly) -> Result<DiffPoly> {
        let constant_col = self.columns.len();
        let mut row: Row = BTreeMap::new();
        let mut outside: Vec<(DiffTerm, RatFun)> = Vec::new();
        for (t, c) in h.terms() {
            match self.index.get(t) {
                Some(&i) => {
                    row.insert(i, c.clone());
                }
                None if t.degree() <= self.max_degree => outside.push((t.clone(), c.clone())),
                None => return Err(Error::DegreeBoundTooSmall(self.max_degree as usize)),
            }
        }
        if !h.constant().is_zero() {
            row.insert(constant_col, h.constant().clone());
        }
        let mut done: Row = BTreeMap::new();
        while let Some((col, _)) = row.first_key_value() {
            let col = *col;
            match self.pivots.get(&col) {
                Some(p) => row = subtract_multiple(row, p, col),
                None => {
                    let (c, v) = row.pop_first().expect("nonempty");
                    done.insert(c, v);
                }
            }
        }
        let constant = done
            .remove(&constant_col)
            .unwrap_or_else(|| RatFun::zero(self.nsyms));
        let terms = done
            .into_iter()
            .map(|(c, v)| (self.columns[c].clone(), v))
            .chain(outside);
        Ok(DiffPoly::from_terms(h.nsyms(), terms, constant))
    }
}

/// `r - (r[col] / p[col]) * p` for a monic pivot row `p`.
fn subtract_multiple(mut r: Row, p: &Row, col: usize) -> Row {
    let Some(factor) = r.get(&col).cloned() else {
        return r;
    };
    for (c, v) in p {
        let delta = &factor * v;
        match r.get_mut(c) {
            Some(slot) => {
                let s = &*slot - &delta;
                if s.is_zero() {
                    r.remove(c);
                } else {
                    *slot = s;
                }
            }
            None => {
                r.insert(*c, -delta);
            }
        }
    }
    debug_assert!(!r.contains_key(&col));
    r
}

/// Default degree bound: the largest shift degree in `h` and `equations`, plus 2.
pub fn default_degree_bound(h: &DiffPoly, equations: &[DiffPoly]) -> u32 {
    equations
        .iter()
        .map(DiffPoly::max_degree)
        .chain([h.max_degree()])
        .max()
        .unwrap_or(0)
        + 2
}

/// Normal form of `h` modulo all shifts of `equations` of degree at most `bound`.
pub fn oracle_normal_form(
    h: &DiffPoly,
    equations: &[DiffPoly],
    ranking: &Ranking,
    bound: u32,
) -> Result<DiffPoly> {
    ProlongationMatrix::build(equations, ranking, bound).normal_form(h)
}

/// `h` lies in the span of the shifts of degree at most `bound`.
pub fn oracle_member(
    h: &DiffPoly,
    equations: &[DiffPoly],
    ranking: &Ranking,
    bound: u32,
) -> Result<bool> {
    Ok(oracle_normal_form(h, equations, ranking, bound)?.is_zero())
}

/// Outcome of comparing the Janet engine with the oracle on a set of probes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CrossCheck {
    pub bound: u32,
    /// Basis elements found outside the span of the input shifts.
    pub non_members: Vec<DiffPoly>,
    pub agreed: usize,
    pub mismatches: Vec<DiffPoly>,
    /// Probes the oracle could not decide at this bound.
    pub flagged: Vec<DiffPoly>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.non_members.is_empty() && self.mismatches.is_empty()
    }
}

/// Checks basis membership and compares Groebner normal forms of `probes`
/// with oracle normal forms at the given bound.
pub fn cross_check(
    equations: &[DiffPoly],
    basis: &MarkedBasis,
    probes: &[DiffPoly],
    bound: u32,
) -> CrossCheck {
    let matrix = ProlongationMatrix::build(equations, basis.ranking(), bound);
    let mut out = CrossCheck {
        bound,
        ..CrossCheck::default()
    };
    for p in basis.polys() {
        if !matches!(matrix.normal_form(p), Ok(nf) if nf.is_zero()) {
            out.non_members.push(p.clone());
        }
    }
    for h in probes {
        match matrix.normal_form(h) {
            Ok(nf) if nf == basis.groebner_normal_form(h) => out.agreed += 1,
            Ok(_) => out.mismatches.push(h.clone()),
            Err(_) => out.flagged.push(h.clone()),
        }
    }
    out
}

/// Every term of every function with shift degree at most `degree`.
pub fn probe_terms(
    num_functions: usize,
    num_variables: usize,
    degree: u32,
    nsyms: usize,
) -> Vec<DiffPoly> {
    let mut out = Vec::new();
    for f in 0..num_functions {
        for e in shifts_up_to(num_variables, degree) {
            out.push(DiffPoly::term(DiffTerm::new(f, e), RatFun::one(nsyms)));
        }
    }
    out
}
