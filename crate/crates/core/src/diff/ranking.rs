use std::cmp::Ordering;

use smallvec::SmallVec;

use super::term::DiffTerm;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankingKind {
    /// Total shift degree decides first.
    Orderly,
    /// Function priority decides first.
    Elimination,
}

/// Sort key whose lexicographic order is the ranking.
pub type TermKey = SmallVec<[u32; 8]>;

/// A total order on difference terms compatible with the shift action.
///
/// Both priority lists are heaviest first. Ties in the orderly ranking are
/// broken by function priority and then lexicographically on the exponents,
/// reading the variables in priority order. The elimination ranking compares
/// function priority first and then falls back to the orderly comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ranking {
    kind: RankingKind,
    function_priority: Vec<usize>,
    variable_priority: Vec<usize>,
    // weight[f] grows with priority
    function_weight: Vec<u32>,
}

impl Ranking {
    pub fn new(
        kind: RankingKind,
        function_priority: Vec<usize>,
        variable_priority: Vec<usize>,
    ) -> Result<Self> {
        check_permutation(&function_priority, "ranking.function_order")?;
        check_permutation(&variable_priority, "ranking.variable_order")?;
        let m = function_priority.len();
        let mut function_weight = vec![0; m];
        for (pos, &f) in function_priority.iter().enumerate() {
            function_weight[f] = (m - 1 - pos) as u32;
        }
        Ok(Self {
            kind,
            function_priority,
            variable_priority,
            function_weight,
        })
    }

    /// Declaration order for both functions and variables.
    pub fn with_default_order(
        kind: RankingKind,
        num_functions: usize,
        num_variables: usize,
    ) -> Self {
        Self::new(
            kind,
            (0..num_functions).collect(),
            (0..num_variables).collect(),
        )
        .expect("identity permutations")
    }

    pub fn orderly(num_functions: usize, num_variables: usize) -> Self {
        Self::with_default_order(RankingKind::Orderly, num_functions, num_variables)
    }

    pub fn elimination(num_functions: usize, num_variables: usize) -> Self {
        Self::with_default_order(RankingKind::Elimination, num_functions, num_variables)
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn function_priority(&self) -> &[usize] {
        &self.function_priority
    }

    pub fn variable_priority(&self) -> &[usize] {
        &self.variable_priority
    }

    pub fn num_functions(&self) -> usize {
        self.function_priority.len()
    }

    pub fn num_variables(&self) -> usize {
        self.variable_priority.len()
    }

    pub fn key(&self, t: &DiffTerm) -> TermKey {
        let mut k = TermKey::with_capacity(self.variable_priority.len() + 2);
        let w = self.function_weight[t.func];
        match self.kind {
            RankingKind::Orderly => {
                k.push(t.degree());
                k.push(w);
            }
            RankingKind::Elimination => {
                k.push(w);
                k.push(t.degree());
            }
        }
        k.extend(self.variable_priority.iter().map(|&v| t.exps[v]));
        k
    }

    pub fn compare(&self, u: &DiffTerm, v: &DiffTerm) -> Ordering {
        debug_assert_eq!(u.arity(), v.arity());
        self.key(u).cmp(&self.key(v))
    }
}

fn check_permutation(p: &[usize], path: &str) -> Result<()> {
    let mut seen = vec![false; p.len()];
    for &i in p {
        if i >= p.len() || seen[i] {
            return Err(Error::validation(
                path,
                "must be a permutation of the declared names",
            ));
        }
        seen[i] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(func: usize, e: &[u32]) -> DiffTerm {
        DiffTerm::new(func, e.iter().copied())
    }

    #[test]
    fn orderly_lexicographic_tie_break() {
        let r = Ranking::orderly(1, 2);
        assert_eq!(r.compare(&t(0, &[1, 1]), &t(0, &[0, 2])), Ordering::Greater);
        assert_eq!(r.compare(&t(0, &[0, 0]), &t(0, &[0, 0])), Ordering::Equal);
        assert_eq!(r.compare(&t(0, &[0, 3]), &t(0, &[2, 0])), Ordering::Greater);
    }

    #[test]
    fn variable_priority_changes_tie_break() {
        let r = Ranking::new(RankingKind::Orderly, vec![0], vec![1, 0]).unwrap();
        assert_eq!(r.compare(&t(0, &[1, 1]), &t(0, &[0, 2])), Ordering::Less);
    }

    #[test]
    fn elimination_prefers_heavier_function() {
        // functions: 0 = u_x, 1 = u; u_x heaviest
        let r = Ranking::elimination(2, 2);
        assert_eq!(r.compare(&t(0, &[0, 0]), &t(1, &[5, 7])), Ordering::Greater);
        assert_eq!(r.compare(&t(1, &[1, 0]), &t(1, &[0, 0])), Ordering::Greater);
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(Ranking::new(RankingKind::Orderly, vec![0, 0], vec![0]).is_err());
        assert!(Ranking::new(RankingKind::Orderly, vec![0], vec![1]).is_err());
    }
}
