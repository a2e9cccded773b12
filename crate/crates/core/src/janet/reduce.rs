use std::collections::{BTreeMap, HashMap};

use crate::diff::{DiffPoly, DiffTerm, Ranking, Shift, TermKey};
use crate::scalar::RatFun;

/// Full reduction of `h`, always eliminating the highest reducible term.
///
/// `divisor(u)` names a monic reductor (by index into `polys`) and the shift
/// taking its leading term to `u`. Terms rejected by `keep` are erased as
/// soon as they appear.
pub(crate) fn reduce_full(
    h: &DiffPoly,
    ranking: &Ranking,
    polys: &[&DiffPoly],
    mut divisor: impl FnMut(&DiffTerm) -> Option<(usize, Shift)>,
    mut keep: impl FnMut(&DiffTerm) -> bool,
) -> DiffPoly {
    let nsyms = h.nsyms();
    let mut work: BTreeMap<TermKey, (DiffTerm, RatFun)> = BTreeMap::new();
    for (t, c) in h.terms() {
        if keep(t) {
            work.insert(ranking.key(t), (t.clone(), c.clone()));
        }
    }
    let mut constant = h.constant().clone();
    let mut done: Vec<(DiffTerm, RatFun)> = Vec::new();
    let mut cache: HashMap<(usize, Shift), DiffPoly> = HashMap::new();

    while let Some((_, (t, c))) = work.pop_last() {
        let Some((idx, beta)) = divisor(&t) else {
            done.push((t, c));
            continue;
        };
        let shifted = cache
            .entry((idx, beta.clone()))
            .or_insert_with(|| polys[idx].apply_shift(&beta));
        for (u, a) in shifted.terms() {
            if *u == t || !keep(u) {
                continue;
            }
            let delta = &c * a;
            let key = ranking.key(u);
            match work.get_mut(&key) {
                Some(slot) => {
                    let s = &slot.1 - &delta;
                    if s.is_zero() {
                        work.remove(&key);
                    } else {
                        slot.1 = s;
                    }
                }
                None => {
                    work.insert(key, (u.clone(), -delta));
                }
            }
        }
        if !shifted.constant().is_zero() {
            constant = &constant - &(&c * shifted.constant());
        }
    }
    DiffPoly::from_terms(nsyms, done, constant)
}
