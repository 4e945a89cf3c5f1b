//! Small-scale oracle agreement checks on a user-supplied complex.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use crate::complex::FilteredComplex;
use crate::error::Result;
use crate::persistence::{
    barcode_of, build_antitransposed_coboundary, extract_triples, phcol, restriction_rank_oracle, Endpoint,
};
use crate::random::{random_cochain, random_cocycle};
use crate::rank_invariant::{rank_inv_oracle, RankInvariant, RankQuery};
use crate::steenrod::{cup_square_oracle, is_cocycle, stsq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        format!("{status} {}: {}", self.name, self.detail)
    }
}

/// Caps the number of `(i, j)` windows swept per check.
const MAX_WINDOWS: usize = 400;

fn windows(n: usize, rng: &mut StdRng) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (1..=n).flat_map(|j| (1..=j).map(move |i| (i, j))).collect();
    if all.len() > MAX_WINDOWS {
        all.shuffle(rng);
        all.truncate(MAX_WINDOWS);
        all.sort_unstable();
    }
    all
}

pub fn run(x: &FilteredComplex, seed: u64) -> Result<Vec<CheckResult>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let top = x.dim().unwrap_or(0);
    let n = x.len();
    let mut results = Vec::new();

    let mut compared = 0;
    let mut mismatches = 0;
    for d in 0..=top {
        for _ in 0..8 {
            let s = random_cochain(&mut rng, x, d, 0.5);
            for k in 1..=d + 1 {
                compared += 1;
                if stsq(k, &s, x)? != cup_square_oracle(k, &s, x)? {
                    mismatches += 1;
                }
            }
        }
    }
    results.push(CheckResult {
        name: "stsq-oracle",
        passed: mismatches == 0,
        detail: format!("{compared} comparisons, {mismatches} mismatches"),
    });

    let mut failures = 0;
    let mut trials = 0;
    for d in 1..=top {
        for _ in 0..4 {
            let alpha = random_cocycle(&mut rng, x, d);
            for k in 1..=d {
                trials += 1;
                if !is_cocycle(&stsq(k, &alpha, x)?, x)? {
                    failures += 1;
                }
            }
        }
    }
    results.push(CheckResult {
        name: "cocycle-preservation",
        passed: failures == 0,
        detail: format!("{trials} trials, {failures} failures"),
    });

    let d_perp = build_antitransposed_coboundary(x);
    let (r, v) = phcol(&d_perp);
    let factored = d_perp.mul(&v)? == r;
    let unit_upper = v.is_upper_triangular() && (1..=n).all(|j| v.get(j, j));
    let mut pivots: Vec<usize> = r.columns().iter().filter_map(|c| c.pivot()).collect();
    let before = pivots.len();
    pivots.sort_unstable();
    pivots.dedup();
    results.push(CheckResult {
        name: "reduction",
        passed: factored && unit_upper && pivots.len() == before,
        detail: format!(
            "R = D⊥V: {factored}, V unit upper triangular: {unit_upper}, distinct pivots: {}",
            pivots.len() == before
        ),
    });

    let z = extract_triples(&r, &v, x)?;
    let barcode = barcode_of(&z);
    let ws = windows(n, &mut rng);
    let mut bad = 0;
    for d in 0..=top {
        for &(i, j) in &ws {
            if barcode.count_containing(d, i, j) != restriction_rank_oracle(x, d, i, j)? {
                bad += 1;
            }
        }
    }
    results.push(CheckResult {
        name: "barcode-oracle",
        passed: bad == 0,
        detail: format!("{} windows x {} degrees, {bad} mismatches", ws.len(), top + 1),
    });

    let mut bad = 0;
    let mut evaluated = 0;
    let rank_windows: Vec<(usize, usize)> = ws.iter().copied().take(MAX_WINDOWS / 4).collect();
    for k in 1..=2 {
        for d in 0..=2 {
            let engine = RankInvariant::new(x, &z, k, d)?;
            for &(i, j) in &rank_windows {
                evaluated += 1;
                let q = RankQuery::new(k, d, Endpoint::Stage(i), j);
                if engine.eval(q.i, q.j)? != rank_inv_oracle(x, q)? {
                    bad += 1;
                }
            }
        }
    }
    results.push(CheckResult {
        name: "rank-invariant-oracle",
        passed: bad == 0,
        detail: format!("{evaluated} queries, {bad} mismatches"),
    });

    Ok(results)
}

pub fn all_passed(results: &[CheckResult]) -> bool {
    results.iter().all(|r| r.passed)
}
