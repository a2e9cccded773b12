//! Random small difference systems shared by the property suites.
#![allow(dead_code)]

pub mod scalar;

use lda_core::diff::{DiffPoly, DiffTerm, Ranking, RankingKind};
use lda_core::scalar::{MultiPoly, RatFun};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// One generated system: variables are the first symbols, then one parameter `c`.
#[derive(Clone, Debug)]
pub struct RandomSystem {
    pub nvars: usize,
    pub nfuncs: usize,
    pub equations: Vec<DiffPoly>,
    pub ranking: Ranking,
}

impl RandomSystem {
    pub fn nsyms(&self) -> usize {
        self.nvars + 1
    }
}

fn coefficient(rng: &mut ChaCha8Rng, nsyms: usize) -> RatFun {
    let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let base = RatFun::from_int(nsyms, c);
    match rng.gen_range(0..10) {
        // a parameter: c*x + 1
        0 => {
            let p = RatFun::var(nsyms, nsyms - 1);
            &(&p * &base) + &RatFun::one(nsyms)
        }
        // depends on the first index: x0 + c
        1 => &RatFun::var(nsyms, 0) + &base,
        _ => base,
    }
}

fn random_term(rng: &mut ChaCha8Rng, nvars: usize, nfuncs: usize, max_degree: u32) -> DiffTerm {
    let total = rng.gen_range(0..=max_degree);
    let mut exps = vec![0u32; nvars];
    for _ in 0..total {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    DiffTerm::new(rng.gen_range(0..nfuncs), exps)
}

/// At most 3 variables, 2 functions, 4 equations of shift degree at most 3.
pub fn random_system(rng: &mut ChaCha8Rng) -> RandomSystem {
    let nvars = rng.gen_range(1..=3);
    let nfuncs = rng.gen_range(1..=2);
    let neqs = rng.gen_range(1..=if nvars == 3 { 3 } else { 4 });
    let max_degree = if nvars == 3 { 2 } else { 3 };
    let nsyms = nvars + 1;
    let mut equations = Vec::new();
    while equations.len() < neqs {
        let nterms = rng.gen_range(2..=3);
        let mut p = DiffPoly::zero(nsyms);
        for _ in 0..nterms {
            p.add_term(
                random_term(rng, nvars, nfuncs, max_degree),
                coefficient(rng, nsyms),
            );
        }
        if p.num_terms() >= 2 {
            equations.push(p);
        }
    }
    let kind = if rng.gen_bool(0.7) {
        RankingKind::Orderly
    } else {
        RankingKind::Elimination
    };
    let mut fo: Vec<usize> = (0..nfuncs).collect();
    fo.shuffle(rng);
    let mut vo: Vec<usize> = (0..nvars).collect();
    vo.shuffle(rng);
    RandomSystem {
        nvars,
        nfuncs,
        equations,
        ranking: Ranking::new(kind, fo, vo).unwrap(),
    }
}

/// A combination of up to three terms with degree at most `max_degree`.
pub fn random_probe(rng: &mut ChaCha8Rng, sys: &RandomSystem, max_degree: u32) -> DiffPoly {
    let mut p = DiffPoly::zero(sys.nsyms());
    for _ in 0..rng.gen_range(1..=3) {
        let c = RatFun::from_int(sys.nsyms(), rng.gen_range(1..=3));
        p.add_term(random_term(rng, sys.nvars, sys.nfuncs, max_degree), c);
    }
    p
}

pub fn int(nsyms: usize, c: i64) -> RatFun {
    RatFun::from_int(nsyms, c)
}

pub fn poly_from(nvars: usize, terms: &[(&[u32], i64)]) -> MultiPoly {
    MultiPoly::from_terms(
        nvars,
        terms
            .iter()
            .map(|(e, c)| (e.iter().copied().collect(), (*c).into())),
    )
}

/// Tallies for the randomized characterization, oracle, and permutation checks.
#[derive(Clone, Debug, Default)]
pub struct SuiteStats {
    pub systems: usize,
    /// Systems whose completion raised an error (inconsistent, limit).
    pub errors: usize,
    pub characterization_failures: usize,
    pub generator_failures: usize,
    pub probes: usize,
    pub agreed: usize,
    /// Oracle answer at +2 differs from the one at +4 (or either errs).
    pub flagged: usize,
    /// Flagged probes whose +4 answer still disagrees with the engine.
    pub flagged_unresolved: usize,
    pub mismatches: usize,
    pub permutation_failures: usize,
}

fn sorted_basis(polys: Vec<DiffPoly>, r: &Ranking) -> Vec<DiffPoly> {
    let mut v = polys;
    v.sort_by(|a, b| r.compare(a.leading_term(r).unwrap().0, b.leading_term(r).unwrap().0));
    v
}

pub fn run_suite(count: usize, seed: u64) -> SuiteStats {
    use lda_core::janet::janet_basis;
    use lda_core::oracle::ProlongationMatrix;
    use rand::SeedableRng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = SuiteStats::default();
    while s.systems < count {
        let sys = random_system(&mut rng);
        s.systems += 1;
        let r = &sys.ranking;
        let b = match janet_basis(&sys.equations, r) {
            Ok(b) => b,
            Err(_) => {
                s.errors += 1;
                continue;
            }
        };
        if !b.check_janet_basis() {
            s.characterization_failures += 1;
        }
        if sys.equations.iter().any(|f| !b.j_normal_form(f).is_zero()) {
            s.generator_failures += 1;
        }

        let top = b
            .leading_terms()
            .iter()
            .map(|t| t.degree())
            .max()
            .unwrap_or(0);
        let input_top = sys
            .equations
            .iter()
            .map(DiffPoly::max_degree)
            .max()
            .unwrap_or(0);
        let d = top.max(input_top) + 2;
        let m2 = ProlongationMatrix::build(&sys.equations, r, d);
        let mut m4 = None;
        for _ in 0..5 {
            let h = random_probe(&mut rng, &sys, top + 1);
            let g = b.groebner_normal_form(&h);
            s.probes += 1;
            let at2 = m2.normal_form(&h);
            let m4 = m4.get_or_insert_with(|| ProlongationMatrix::build(&sys.equations, r, d + 2));
            let at4 = m4.normal_form(&h);
            let stable = matches!((&at2, &at4), (Ok(a), Ok(b)) if a == b);
            if stable {
                if at2.as_ref() == Ok(&g) {
                    s.agreed += 1;
                } else {
                    s.mismatches += 1;
                }
            } else {
                s.flagged += 1;
                if at4.as_ref() != Ok(&g) {
                    s.flagged_unresolved += 1;
                }
            }
        }

        let mut perm = sys.equations.clone();
        perm.reverse();
        perm.shuffle(&mut rng);
        let same = match janet_basis(&perm, r) {
            Ok(b2) => sorted_basis(b2.into_polys(), r) == sorted_basis(b.clone().into_polys(), r),
            Err(_) => false,
        };
        if !same {
            s.permutation_failures += 1;
        }
    }
    s
}

/// `q = c * p` for a single nonzero coefficient `c`.
pub fn proportional(p: &DiffPoly, q: &DiffPoly) -> bool {
    let Some((t, a)) = p.terms().next() else {
        return q.is_zero();
    };
    let Some(b) = q.coeff(t) else {
        return false;
    };
    let c = b / a;
    p.scale(&c) == *q
}

pub fn data_path(name: &str) -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}
