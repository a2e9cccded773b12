use crate::diff::{unit_shift, DiffPoly, DiffTerm, Ranking, Shift};
use crate::error::{Error, Result};
use crate::scalar::RatFun;

use super::reduce::reduce_full;

/// Janet multiplicative variables for a set of leading terms.
///
/// Terms are grouped per function. Reading the variables in `var_order`,
/// `theta_v` is multiplicative for `u` iff `deg_v(u)` is maximal among the
/// terms of the same function that agree with `u` on all earlier variables.
/// The result is indexed by term, then by variable index.
pub fn janet_partition(lts: &[&DiffTerm], var_order: &[usize]) -> Vec<Vec<bool>> {
    let nvars = var_order.len();
    lts.iter()
        .map(|u| {
            let mut mult = vec![false; nvars];
            for (pos, &v) in var_order.iter().enumerate() {
                let max = lts
                    .iter()
                    .filter(|w| {
                        w.func == u.func && var_order[..pos].iter().all(|&p| w.exps[p] == u.exps[p])
                    })
                    .map(|w| w.exps[v])
                    .max()
                    .expect("u belongs to its own group");
                mult[v] = u.exps[v] == max;
            }
            mult
        })
        .collect()
}

/// A monic basis element with its Janet multiplicative variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedElement {
    poly: DiffPoly,
    lt: DiffTerm,
    mult: Vec<bool>,
}

impl MarkedElement {
    pub fn poly(&self) -> &DiffPoly {
        &self.poly
    }

    pub fn leading_term(&self) -> &DiffTerm {
        &self.lt
    }

    pub fn is_multiplicative(&self, var: usize) -> bool {
        self.mult[var]
    }

    pub fn multiplicative(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&v| self.mult[v]).collect()
    }

    pub fn nonmultiplicative(&self) -> Vec<usize> {
        (0..self.mult.len()).filter(|&v| !self.mult[v]).collect()
    }
}

/// Monic difference polynomials with pairwise distinct leading terms, marked
/// by Janet division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedBasis {
    elements: Vec<MarkedElement>,
    ranking: Ranking,
}

impl MarkedBasis {
    /// Normalizes, checks leading terms are distinct, and computes markings.
    /// Elements are stored in ascending order of their leading terms.
    pub fn new(polys: Vec<DiffPoly>, ranking: Ranking) -> Result<Self> {
        let mut elems: Vec<(DiffTerm, DiffPoly)> = Vec::with_capacity(polys.len());
        for p in polys {
            let m = p.make_monic(&ranking)?;
            let lt = m.leading_term(&ranking)?.0.clone();
            elems.push((lt, m));
        }
        elems.sort_by(|a, b| ranking.compare(&a.0, &b.0));
        if elems.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::validation(
                "basis",
                "leading terms must be pairwise distinct",
            ));
        }
        let lts: Vec<&DiffTerm> = elems.iter().map(|e| &e.0).collect();
        let marks = janet_partition(&lts, ranking.variable_priority());
        let elements = elems
            .into_iter()
            .zip(marks)
            .map(|((lt, poly), mult)| MarkedElement { poly, lt, mult })
            .collect();
        Ok(Self { elements, ranking })
    }

    pub fn elements(&self) -> &[MarkedElement] {
        &self.elements
    }

    pub fn ranking(&self) -> &Ranking {
        &self.ranking
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn polys(&self) -> Vec<&DiffPoly> {
        self.elements.iter().map(|e| &e.poly).collect()
    }

    pub fn leading_terms(&self) -> Vec<&DiffTerm> {
        self.elements.iter().map(|e| &e.lt).collect()
    }

    pub fn into_polys(self) -> Vec<DiffPoly> {
        self.elements.into_iter().map(|e| e.poly).collect()
    }

    /// The unique element whose Janet cone contains `u`, with the shift.
    pub fn find_j_divisor(&self, u: &DiffTerm) -> Option<(usize, Shift)> {
        self.elements.iter().enumerate().find_map(|(i, e)| {
            let beta = u.quotient(&e.lt)?;
            beta.iter()
                .enumerate()
                .all(|(v, &b)| b == 0 || e.mult[v])
                .then_some((i, beta))
        })
    }

    /// Every element whose Janet cone contains `u` (at most one for a
    /// correctly marked set).
    pub fn all_j_divisors(&self, u: &DiffTerm) -> Vec<(usize, Shift)> {
        self.elements
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                let beta = u.quotient(&e.lt)?;
                beta.iter()
                    .enumerate()
                    .all(|(v, &b)| b == 0 || e.mult[v])
                    .then_some((i, beta))
            })
            .collect()
    }

    /// First element (in basis order) whose leading term divides `u`.
    pub fn find_divisor(&self, u: &DiffTerm) -> Option<(usize, Shift)> {
        self.elements
            .iter()
            .enumerate()
            .find_map(|(i, e)| u.quotient(&e.lt).map(|b| (i, b)))
    }

    /// Janet normal form: only multiplicative shifts are used.
    pub fn j_normal_form(&self, h: &DiffPoly) -> DiffPoly {
        self.j_normal_form_filtered(h, |_| true)
    }

    /// Janet normal form where terms rejected by `keep` are erased after
    /// every reduction step.
    pub fn j_normal_form_filtered(
        &self,
        h: &DiffPoly,
        keep: impl FnMut(&DiffTerm) -> bool,
    ) -> DiffPoly {
        let polys = self.polys();
        reduce_full(h, &self.ranking, &polys, |u| self.find_j_divisor(u), keep)
    }

    /// Unrestricted normal form: any shift of any element may be used.
    pub fn groebner_normal_form(&self, h: &DiffPoly) -> DiffPoly {
        let polys = self.polys();
        reduce_full(h, &self.ranking, &polys, |u| self.find_divisor(u), |_| true)
    }

    /// Every nonmultiplicative prolongation Janet-reduces to zero.
    pub fn check_janet_basis(&self) -> bool {
        self.failing_prolongations().is_empty()
    }

    /// `(element, variable)` pairs whose prolongation does not reduce to zero.
    pub fn failing_prolongations(&self) -> Vec<(usize, usize)> {
        let nvars = self.ranking.num_variables();
        let mut out = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            for v in e.nonmultiplicative() {
                let p = e.poly.apply_shift(&unit_shift(nvars, v));
                if !self.j_normal_form(&p).is_zero() {
                    out.push((i, v));
                }
            }
        }
        out
    }

    /// The reduced Groebner basis of the same module: drop elements whose
    /// leading term is a proper multiple of another's, then tail-reduce.
    pub fn reduced_groebner_basis(&self) -> Vec<DiffPoly> {
        let keep: Vec<&MarkedElement> = self
            .elements
            .iter()
            .filter(|e| {
                !self
                    .elements
                    .iter()
                    .any(|o| o.lt != e.lt && e.lt.is_multiple_of(&o.lt))
            })
            .collect();
        let polys: Vec<&DiffPoly> = keep.iter().map(|e| &e.poly).collect();
        let divisor = |u: &DiffTerm| {
            keep.iter()
                .enumerate()
                .find_map(|(i, e)| u.quotient(&e.lt).map(|b| (i, b)))
        };
        keep.iter()
            .map(|e| {
                let mut tail = e.poly.clone();
                tail.remove_term(&e.lt);
                let mut g = reduce_full(&tail, &self.ranking, &polys, divisor, |_| true);
                g.add_term(e.lt.clone(), RatFun::one(e.poly.nsyms()));
                g
            })
            .collect()
    }

    /// Tail-reduces every element with Janet reductions; leading terms and
    /// markings are unchanged.
    pub(crate) fn autoreduce_tails(&mut self) {
        let reduced: Vec<DiffPoly> = self
            .elements
            .iter()
            .map(|e| {
                let mut tail = e.poly.clone();
                let lc = tail.remove_term(&e.lt).expect("leading term present");
                let mut g = self.j_normal_form(&tail);
                g.add_term(e.lt.clone(), lc);
                g
            })
            .collect();
        for (e, g) in self.elements.iter_mut().zip(reduced) {
            e.poly = g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diff::Ranking;

    fn t(e: &[u32]) -> DiffTerm {
        DiffTerm::new(0, e.iter().copied())
    }

    fn poly(nsyms: usize, terms: &[(&[u32], i64)]) -> DiffPoly {
        DiffPoly::from_terms(
            nsyms,
            terms
                .iter()
                .map(|(e, c)| (t(e), RatFun::from_int(nsyms, *c))),
            RatFun::zero(nsyms),
        )
    }

    #[test]
    fn partition_of_two_terms() {
        let a = t(&[2, 1]);
        let b = t(&[1, 2]);
        let m = janet_partition(&[&a, &b], &[0, 1]);
        assert_eq!(m[0], vec![true, true]);
        assert_eq!(m[1], vec![false, true]);
        let single = janet_partition(&[&b], &[0, 1]);
        assert_eq!(single[0], vec![true, true]);
    }

    #[test]
    fn partition_is_per_function() {
        let a = DiffTerm::new(0, [2, 0]);
        let b = DiffTerm::new(1, [0, 3]);
        let m = janet_partition(&[&a, &b], &[0, 1]);
        assert_eq!(m, vec![vec![true, true], vec![true, true]]);
    }

    #[test]
    fn j_divisor_respects_marking() {
        let r = Ranking::orderly(1, 2);
        let b =
            MarkedBasis::new(vec![poly(0, &[(&[2, 1], 1)]), poly(0, &[(&[1, 2], 1)])], r).unwrap();
        let (i, beta) = b.find_j_divisor(&t(&[3, 1])).unwrap();
        assert_eq!(b.elements()[i].leading_term(), &t(&[2, 1]));
        assert_eq!(beta.as_slice(), &[1, 0]);
        // (1,2) would need the nonmultiplicative theta_1; (2,1) covers it
        let (i, beta) = b.find_j_divisor(&t(&[2, 3])).unwrap();
        assert_eq!(b.elements()[i].leading_term(), &t(&[2, 1]));
        assert_eq!(beta.as_slice(), &[0, 2]);
        assert_eq!(b.all_j_divisors(&t(&[2, 3])).len(), 1);
        assert_eq!(b.find_j_divisor(&t(&[0, 5])), None);
    }

    #[test]
    fn fibonacci_normal_form() {
        let r = Ranking::orderly(1, 1);
        let b = MarkedBasis::new(vec![poly(0, &[(&[2], 1), (&[1], -1), (&[0], -1)])], r).unwrap();
        let nf = b.j_normal_form(&poly(0, &[(&[4], 1)]));
        assert_eq!(nf, poly(0, &[(&[1], 3), (&[0], 2)]));
        let irreducible = poly(0, &[(&[1], 5)]);
        assert_eq!(b.j_normal_form(&irreducible), irreducible);
    }

    #[test]
    fn incomplete_marking_is_detected() {
        let r = Ranking::orderly(1, 2);
        let b = MarkedBasis::new(
            vec![
                poly(0, &[(&[1, 0], 1), (&[0, 0], -1)]),
                poly(0, &[(&[1, 1], 1), (&[0, 0], -2)]),
            ],
            r,
        )
        .unwrap();
        assert!(!b.check_janet_basis());
    }

    #[test]
    fn reduced_basis_drops_multiples() {
        let r = Ranking::orderly(1, 2);
        let b = MarkedBasis::new(
            vec![
                poly(0, &[(&[1, 0], 1), (&[0, 0], -1)]),
                poly(0, &[(&[0, 1], 1), (&[0, 0], -1)]),
                poly(0, &[(&[1, 1], 1), (&[0, 1], -1)]),
            ],
            r,
        )
        .unwrap();
        let g = b.reduced_groebner_basis();
        assert_eq!(
            g,
            vec![
                poly(0, &[(&[0, 1], 1), (&[0, 0], -1)]),
                poly(0, &[(&[1, 0], 1), (&[0, 0], -1)])
            ]
        );
    }

    #[test]
    fn duplicate_leading_terms_rejected() {
        let r = Ranking::orderly(1, 1);
        let p = poly(0, &[(&[1], 1)]);
        assert!(MarkedBasis::new(vec![p.clone(), p.scale(&RatFun::from_int(0, 2))], r).is_err());
    }
}
