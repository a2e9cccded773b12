use std::collections::HashSet;

use crate::diff::{unit_shift, DiffPoly, DiffTerm, Ranking};
use crate::error::{Error, Result};

use super::basis::{janet_partition, MarkedBasis};
use super::reduce::reduce_full;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct JanetOptions {
    /// Upper bound on the number of queue elements processed.
    pub max_iterations: usize,
}

impl Default for JanetOptions {
    fn default() -> Self {
        Self {
            max_iterations: 200_000,
        }
    }
}

/// The minimal normalized Janet basis of the module generated by `polys`.
pub fn janet_basis(polys: &[DiffPoly], ranking: &Ranking) -> Result<MarkedBasis> {
    janet_basis_with(polys, ranking, &JanetOptions::default())
}

struct Element {
    id: usize,
    lt: DiffTerm,
    poly: DiffPoly,
}

struct Completion<'a> {
    ranking: &'a Ranking,
    nvars: usize,
    elems: Vec<Element>,
    mult: Vec<Vec<bool>>,
    // (element id, variable) pairs already prolonged
    done: HashSet<(usize, usize)>,
    queue: Vec<DiffPoly>,
    next_id: usize,
    iterations: usize,
    max_iterations: usize,
}

pub fn janet_basis_with(
    polys: &[DiffPoly],
    ranking: &Ranking,
    opts: &JanetOptions,
) -> Result<MarkedBasis> {
    let mut c = Completion {
        ranking,
        nvars: ranking.num_variables(),
        elems: Vec::new(),
        mult: Vec::new(),
        done: HashSet::new(),
        queue: Vec::new(),
        next_id: 0,
        iterations: 0,
        max_iterations: opts.max_iterations,
    };
    for p in polys {
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Err(inconsistent(p));
        }
        c.queue.push(p.clone());
    }
    if c.queue.is_empty() {
        return Err(Error::validation("equations", "no nonzero equations"));
    }
    c.run()?;
    // Safeguard: re-run while any prolongation still fails to reduce.
    loop {
        let failing: Vec<DiffPoly> = c.failing_prolongations();
        if failing.is_empty() {
            break;
        }
        c.queue.extend(failing);
        c.run()?;
    }
    let mut basis = MarkedBasis::new(
        c.elems.into_iter().map(|e| e.poly).collect(),
        ranking.clone(),
    )?;
    basis.autoreduce_tails();
    Ok(basis)
}

fn inconsistent(p: &DiffPoly) -> Error {
    Error::InconsistentSystem(p.constant().to_string())
}

impl Completion<'_> {
    fn run(&mut self) -> Result<()> {
        loop {
            let mut h = DiffPoly::zero(0);
            let mut found = false;
            while !self.queue.is_empty() {
                let p = self.pop_lowest();
                self.iterations += 1;
                if self.iterations > self.max_iterations {
                    return Err(Error::IterationLimit(self.max_iterations));
                }
                let r = self.normal_form(&p);
                if !r.is_zero() {
                    h = r;
                    found = true;
                    break;
                }
            }
            if !found {
                return Ok(());
            }
            if h.is_constant() {
                return Err(inconsistent(&h));
            }
            let h = h.make_monic(self.ranking)?;
            let lt = h.leading_term(self.ranking)?.0.clone();
            let mut kept = Vec::with_capacity(self.elems.len() + 1);
            for e in std::mem::take(&mut self.elems) {
                if e.lt != lt && e.lt.is_multiple_of(&lt) {
                    self.queue.push(e.poly);
                    self.done.retain(|&(id, _)| id != e.id);
                } else {
                    kept.push(e);
                }
            }
            self.elems = kept;
            self.elems.push(Element {
                id: self.next_id,
                lt,
                poly: h,
            });
            self.next_id += 1;
            self.elems
                .sort_by(|a, b| self.ranking.compare(&a.lt, &b.lt));
            self.remark();
            for (i, e) in self.elems.iter().enumerate() {
                for v in 0..self.nvars {
                    if !self.mult[i][v] && self.done.insert((e.id, v)) {
                        self.queue
                            .push(e.poly.apply_shift(&unit_shift(self.nvars, v)));
                    }
                }
            }
        }
    }

    fn remark(&mut self) {
        let lts: Vec<&DiffTerm> = self.elems.iter().map(|e| &e.lt).collect();
        self.mult = janet_partition(&lts, self.ranking.variable_priority());
    }

    fn pop_lowest(&mut self) -> DiffPoly {
        let ranking = self.ranking;
        let (idx, _) = self
            .queue
            .iter()
            .enumerate()
            .min_by(|a, b| {
                let la = a.1.leading_term(ranking).map(|t| t.0);
                let lb = b.1.leading_term(ranking).map(|t| t.0);
                match (la, lb) {
                    (Ok(x), Ok(y)) => ranking.compare(x, y),
                    (Err(_), Ok(_)) => std::cmp::Ordering::Less,
                    (Ok(_), Err(_)) => std::cmp::Ordering::Greater,
                    (Err(_), Err(_)) => std::cmp::Ordering::Equal,
                }
            })
            .expect("queue is nonempty");
        self.queue.swap_remove(idx)
    }

    fn find_j_divisor(&self, u: &DiffTerm) -> Option<(usize, crate::diff::Shift)> {
        self.elems.iter().enumerate().find_map(|(i, e)| {
            let beta = u.quotient(&e.lt)?;
            beta.iter()
                .enumerate()
                .all(|(v, &b)| b == 0 || self.mult[i][v])
                .then_some((i, beta))
        })
    }

    fn normal_form(&self, p: &DiffPoly) -> DiffPoly {
        let polys: Vec<&DiffPoly> = self.elems.iter().map(|e| &e.poly).collect();
        reduce_full(
            p,
            self.ranking,
            &polys,
            |u| self.find_j_divisor(u),
            |_| true,
        )
    }

    fn failing_prolongations(&self) -> Vec<DiffPoly> {
        let mut out = Vec::new();
        for (i, e) in self.elems.iter().enumerate() {
            for v in 0..self.nvars {
                if self.mult[i][v] {
                    continue;
                }
                let p = e.poly.apply_shift(&unit_shift(self.nvars, v));
                if !self.normal_form(&p).is_zero() {
                    out.push(p);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::RatFun;

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
    fn single_equation_is_its_own_basis() {
        let r = Ranking::orderly(1, 2);
        let f = poly(2, &[(&[1, 1], 1), (&[0, 0], -3)]);
        let b = janet_basis(std::slice::from_ref(&f), &r).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b.elements()[0].poly(), &f);
        assert_eq!(b.elements()[0].multiplicative(), vec![0, 1]);
    }

    #[test]
    fn two_term_system() {
        let r = Ranking::orderly(1, 2);
        let f1 = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let f2 = poly(2, &[(&[1, 0], 1), (&[0, 0], -1)]);
        let b = janet_basis(&[f1, f2], &r).unwrap();
        let got: Vec<DiffPoly> = b.into_polys();
        assert_eq!(
            got,
            vec![
                poly(2, &[(&[0, 1], 1), (&[0, 0], -1)]),
                poly(2, &[(&[1, 0], 1), (&[0, 0], -1)])
            ]
        );
    }

    #[test]
    fn inconsistent_system_is_reported() {
        let r = Ranking::orderly(1, 1);
        let mut f1 = poly(1, &[(&[1], 1)]);
        let mut f2 = f1.clone();
        f1.add_constant(&RatFun::from_int(1, 1));
        f2.add_constant(&RatFun::from_int(1, 2));
        let err = janet_basis(&[f1, f2], &r).unwrap_err();
        assert!(matches!(err, Error::InconsistentSystem(_)));
    }

    #[test]
    fn iteration_limit_aborts() {
        let r = Ranking::orderly(1, 2);
        let f1 = poly(2, &[(&[2, 0], 1), (&[0, 1], -1)]);
        let f2 = poly(2, &[(&[1, 1], 1), (&[0, 0], -1)]);
        let err = janet_basis_with(&[f1, f2], &r, &JanetOptions { max_iterations: 1 }).unwrap_err();
        assert_eq!(err, Error::IterationLimit(1));
    }

    #[test]
    fn output_satisfies_characterization() {
        let r = Ranking::orderly(1, 2);
        let f1 = poly(2, &[(&[2, 0], 1), (&[0, 1], -1), (&[0, 0], 2)]);
        let f2 = poly(2, &[(&[1, 1], 1), (&[1, 0], -1)]);
        let b = janet_basis(&[f1.clone(), f2.clone()], &r).unwrap();
        assert!(b.check_janet_basis());
        assert!(b.j_normal_form(&f1).is_zero());
        assert!(b.j_normal_form(&f2).is_zero());
    }
}
