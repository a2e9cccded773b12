use std::collections::BTreeSet;

use crate::diff::{DiffPoly, DiffTerm};
use crate::error::{Error, Result};
use crate::janet::MarkedBasis;
use crate::scalar::{factor_ratfun, FactoredRatFun, RatFun};

/// Terms of one function that are known to vanish: every term whose
/// constrained shift components equal the given values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VanishingPattern {
    func: usize,
    constraints: Vec<(usize, u32)>,
}

impl VanishingPattern {
    pub fn new(func: usize, mut constraints: Vec<(usize, u32)>) -> Result<Self> {
        if constraints.is_empty() {
            return Err(Error::validation(
                "boundary",
                "a pattern must fix at least one shift",
            ));
        }
        constraints.sort_unstable();
        if constraints.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::validation(
                "boundary",
                "a shift position is constrained twice",
            ));
        }
        Ok(Self { func, constraints })
    }

    /// From parsed arguments, `None` meaning a free position.
    pub fn from_args(func: usize, args: &[Option<u32>]) -> Result<Self> {
        Self::new(
            func,
            args.iter()
                .enumerate()
                .filter_map(|(i, a)| a.map(|v| (i, v)))
                .collect(),
        )
    }

    pub fn func(&self) -> usize {
        self.func
    }

    pub fn constraints(&self) -> &[(usize, u32)] {
        &self.constraints
    }

    pub fn matches(&self, t: &DiffTerm) -> bool {
        t.func == self.func && self.constraints.iter().all(|&(i, v)| t.exps[i] == v)
    }
}

fn vanishes(t: &DiffTerm, patterns: &[VanishingPattern]) -> bool {
    patterns.iter().any(|p| p.matches(t))
}

/// Deletes every term matched by some pattern.
pub fn apply_patterns(p: &DiffPoly, patterns: &[VanishingPattern]) -> DiffPoly {
    let mut out = p.clone();
    out.retain_terms(|t| !vanishes(t, patterns));
    out
}

/// Standard terms of `basis` (no leading term divides them) that match no
/// pattern, ascending in the basis ranking.
pub fn residue_class_basis(
    basis: &MarkedBasis,
    patterns: &[VanishingPattern],
) -> Result<Vec<DiffTerm>> {
    let ranking = basis.ranking();
    let nvars = ranking.num_variables();
    let lts = basis.leading_terms();
    let mut out = Vec::new();
    for func in 0..ranking.num_functions() {
        // Box bounds: past them nothing changes along that coordinate, so a
        // standard term on the outer face starts an infinite ray.
        let mut bound = vec![0u32; nvars];
        for lt in lts.iter().filter(|t| t.func == func) {
            for (b, &e) in bound.iter_mut().zip(&lt.exps) {
                *b = (*b).max(e);
            }
        }
        for p in patterns.iter().filter(|p| p.func == func) {
            for &(i, v) in &p.constraints {
                bound[i] = bound[i].max(v + 1);
            }
        }
        let mut exps = vec![0u32; nvars];
        loop {
            let t = DiffTerm::new(func, exps.iter().copied());
            let standard = !lts.iter().any(|l| t.is_multiple_of(l));
            if standard && !vanishes(&t, patterns) {
                if let Some(i) = (0..nvars).find(|&i| exps[i] == bound[i]) {
                    return Err(Error::InfiniteResidueBasis(format!(
                        "function #{func} is unbounded along shift direction {}",
                        i + 1
                    )));
                }
                out.push(t);
            }
            // odometer over the box
            let mut i = 0;
            while i < nvars {
                if exps[i] < bound[i] {
                    exps[i] += 1;
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == nvars {
                break;
            }
        }
    }
    out.sort_by(|a, b| ranking.compare(a, b));
    Ok(out)
}

/// A target term expressed through standard terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionReport {
    pub target: DiffTerm,
    /// Nonzero coefficients, ranking-descending.
    pub combination: Vec<(DiffTerm, RatFun)>,
    /// Inhomogeneous part of the normal form.
    pub constant: RatFun,
    /// The residue class basis when it is finite, otherwise the support of
    /// the combination.
    pub masters: Vec<DiffTerm>,
    /// Factored coefficients, parallel to `combination`.
    pub factored: Option<Vec<FactoredRatFun>>,
}

impl ReductionReport {
    pub fn normal_form(&self) -> DiffPoly {
        DiffPoly::from_terms(
            self.constant.nvars(),
            self.combination.iter().cloned(),
            self.constant.clone(),
        )
    }
}

/// The Janet normal form of `target`, with the terms matched by `patterns`
/// erased from the result.
///
/// Erasure happens after the reduction. A vanishing term can also be a
/// leading term of the basis (the massless one-loop system has `f(k+2,n)`),
/// and erasing it mid-reduction would drop what its reduction contributes to
/// the surviving terms.
pub fn reduce_to_masters(
    target: &DiffTerm,
    basis: &MarkedBasis,
    patterns: &[VanishingPattern],
    factor: bool,
) -> ReductionReport {
    let ranking = basis.ranking();
    let nsyms = basis.elements().first().map_or(0, |e| e.poly().nsyms());
    let h = DiffPoly::term(target.clone(), RatFun::one(nsyms));
    let nf = apply_patterns(&basis.j_normal_form(&h), patterns);
    let combination: Vec<(DiffTerm, RatFun)> = nf
        .sorted_terms(ranking)
        .into_iter()
        .map(|(t, c)| (t.clone(), c.clone()))
        .collect();
    let masters = residue_class_basis(basis, patterns).unwrap_or_else(|_| {
        let mut s: Vec<DiffTerm> = combination
            .iter()
            .map(|(t, _)| t.clone())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        s.sort_by(|a, b| ranking.compare(a, b));
        s
    });
    let factored = factor.then(|| combination.iter().map(|(_, c)| factor_ratfun(c)).collect());
    ReductionReport {
        target: target.clone(),
        combination,
        constant: nf.constant().clone(),
        masters,
        factored,
    }
}
