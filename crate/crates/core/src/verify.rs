//! Batch verification of the weight identities on one ring.
//!
//! Each check is exhaustive while its case count stays within a fixed budget
//! and falls back to seeded sampling otherwise; sampled checks are flagged.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::module::{
    annihilator, check_row_column_cardinality, enumerate_submodules, left_socle, principal_ideal_set,
    principal_ideals, span_set, word_at, Side, Word,
};
use crate::rational::{frac, int};
use crate::ring::{Elem, FiniteRing};
use crate::weight::{
    correlation_ideal, correlation_vectors_rhs, correlation_vectors_scaled, verify_zero_set, whom_semisimple,
    WeightTable,
};

/// Largest case count a check runs exhaustively (vector pairs count 128 each).
pub const EXHAUSTIVE_BUDGET: u64 = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Exhaustive wherever the budget allows; otherwise everything is sampled.
    pub full: bool,
    pub samples: usize,
    pub seed: u64,
    /// Random matrices for the row/column space check.
    pub matrices: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            full: true,
            samples: 200,
            seed: 0,
            matrices: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub exhaustive: bool,
    pub witness: Option<String>,
    pub note: Option<String>,
}

impl Check {
    fn new(name: &str, cases: u64, exhaustive: bool, witness: Option<String>) -> Self {
        Check {
            name: name.to_string(),
            passed: witness.is_none(),
            cases,
            exhaustive,
            witness,
            note: None,
        }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Check {
            name: name.to_string(),
            passed: true,
            cases: 0,
            exhaustive: false,
            witness: None,
            note: Some(why.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ring: String,
    pub order: usize,
    pub units: usize,
    pub sampled: bool,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ctx<'a> {
    wt: &'a WeightTable,
    ring: &'a FiniteRing,
    opts: &'a VerifyOptions,
}

impl Ctx<'_> {
    fn exhaustive(&self, cases: u64) -> bool {
        self.opts.full && cases <= EXHAUSTIVE_BUDGET
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn elem(&self, rng: &mut ChaCha8Rng) -> Elem {
        rng.gen_range(0..self.ring.order()) as Elem
    }

    fn fmt(&self, x: Elem) -> String {
        self.ring.format_elem(x)
    }

    fn fmt_word(&self, w: &[Elem]) -> String {
        format!("({})", w.iter().map(|&x| self.fmt(x)).collect::<Vec<_>>().join(","))
    }
}

fn check_axioms(ctx: &Ctx) -> Check {
    let witness = ctx.ring.verify().err().map(|e| e.to_string());
    let q = ctx.ring.order() as u64;
    Check::new(
        "ring axioms and generating character",
        q * q * q,
        q <= crate::ring::FULL_AXIOM_CHECK as u64,
        witness,
    )
}

fn check_zero_set(ctx: &Ctx) -> Check {
    let z = verify_zero_set(ctx.wt);
    let q = ctx.ring.order() as u64;
    let mut c = Check::new("zero set", q * z.s0.len() as u64, true, z.witness);
    c.note = Some(format!(
        "S0 = {{{}}}",
        z.s0.iter().map(|&x| ctx.fmt(x)).collect::<Vec<_>>().join(", ")
    ));
    c
}

fn coset_witness(ctx: &Ctx, ideal: &[Elem], mut cs: impl Iterator<Item = Elem>) -> Option<Elem> {
    let (ring, wt) = (ctx.ring, ctx.wt);
    let target = ideal.len() as i64 * wt.denom();
    cs.find(|&c| ideal.iter().map(|&x| wt.scaled(ring.add(x, c))).sum::<i64>() != target)
}

fn check_coset_sums(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let q = ring.order() as u64;
    let principal_cases = 2 * q * q * q;
    let exhaustive = ctx.exhaustive(principal_cases);
    let mut cases = 0u64;
    let mut witness = None;
    if exhaustive {
        'outer: for side in [Side::Left, Side::Right] {
            for ideal in principal_ideals(ring, side) {
                if ideal.len() == 1 {
                    continue;
                }
                cases += (ideal.len() * ring.order()) as u64;
                if let Some(c) = coset_witness(ctx, &ideal, ring.elements()) {
                    witness = Some(format!(
                        "{side:?} ideal {{{}}}, c = {}",
                        ideal.iter().map(|&x| ctx.fmt(x)).collect::<Vec<_>>().join(", "),
                        ctx.fmt(c)
                    ));
                    break 'outer;
                }
            }
        }
    } else {
        let mut rng = ctx.rng(1);
        for _ in 0..ctx.opts.samples {
            let side = if rng.gen_bool(0.5) { Side::Left } else { Side::Right };
            let x = ctx.elem(&mut rng);
            let c = ctx.elem(&mut rng);
            if x == 0 {
                continue;
            }
            let ideal = principal_ideal_set(ring, x, side);
            cases += ideal.len() as u64;
            if coset_witness(ctx, &ideal, std::iter::once(c)).is_some() {
                witness = Some(format!("{side:?} ideal generated by {}, c = {}", ctx.fmt(x), ctx.fmt(c)));
                break;
            }
        }
    }
    // sums of two principal left ideals, sampled in every mode
    if witness.is_none() {
        let mut rng = ctx.rng(2);
        for _ in 0..ctx.opts.samples {
            let (x, y) = (ctx.elem(&mut rng), ctx.elem(&mut rng));
            if x == 0 && y == 0 {
                continue;
            }
            let gens: Vec<Word> = vec![vec![x], vec![y]];
            let ideal: Vec<Elem> = span_set(ring, &gens, 1, Side::Left).into_iter().map(|w| w[0]).collect();
            cases += (ideal.len() * ring.order()) as u64;
            if let Some(c) = coset_witness(ctx, &ideal, ring.elements()) {
                witness = Some(format!("left ideal R{} + R{}, c = {}", ctx.fmt(x), ctx.fmt(y), ctx.fmt(c)));
                break;
            }
        }
    }
    let mut c = Check::new("coset sums", cases, exhaustive, witness);
    c.note = Some("principal ideals plus sampled sums of two principal left ideals".into());
    c
}

fn check_sum_of_squares(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let lhs: i128 = ring.elements().map(|x| (ctx.wt.scaled(x) as i128).pow(2)).sum();
    let lhs = ctx.wt.unscale2(lhs);
    let rhs = int(ring.order() as i128) * (int(1) + frac(1, ring.units().len() as i128));
    let witness = (lhs != rhs).then(|| format!("sum of squares {lhs} != {rhs}"));
    Check::new("sum of squares", ring.order() as u64, true, witness)
}

fn check_correlation_ideal(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let ideals: Vec<Vec<Elem>> = principal_ideals(ring, Side::Left)
        .into_iter()
        .filter(|i| i.len() > 1)
        .collect();
    let q = ring.order();
    let cases: u64 = ideals.iter().map(|i| (i.len() * q * q) as u64).sum();
    let exhaustive = ctx.exhaustive(cases);
    let triples: Vec<(usize, Elem, Elem)> = if exhaustive {
        (0..ideals.len())
            .flat_map(|i| ring.elements().flat_map(move |r| ring.elements().map(move |s| (i, r, s))))
            .collect()
    } else {
        let mut rng = ctx.rng(3);
        (0..ctx.opts.samples)
            .map(|_| (rng.gen_range(0..ideals.len()), ctx.elem(&mut rng), ctx.elem(&mut rng)))
            .collect()
    };
    let results: Vec<(bool, bool)> = crate::exec::map(&triples, |&(i, r, s)| {
        let ideal = &ideals[i];
        let (lhs, rhs) = correlation_ideal(ctx.wt, ideal, r, s);
        let degenerate = ideal.iter().all(|&x| ring.mul(x, r) == 0);
        (lhs == rhs, degenerate && lhs != int(ideal.len() as i128))
    });
    let witness = triples.iter().zip(&results).find(|(_, ok)| !ok.0).map(|(&(i, r, s), _)| {
        format!(
            "ideal R{}, r = {}, s = {}",
            ctx.fmt(ideals[i].iter().copied().find(|&x| principal_ideal_set(ring, x, Side::Left).len() == ideals[i].len()).unwrap_or(0)),
            ctx.fmt(r),
            ctx.fmt(s)
        )
    });
    let degenerate = results.iter().filter(|r| r.1).count();
    let mut c = Check::new("ideal correlation", triples.len() as u64, exhaustive, witness);
    c.note = Some(format!(
        "{degenerate} cases with Ir = 0 where the |I| value does not apply; |I| w(s) used there"
    ));
    c
}

fn check_correlation_vectors(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let q = ring.order() as u64;
    let mut cases = 0u64;
    let mut exhaustive = true;
    let mut witness = None;
    for k in 1..=2usize {
        let words = q.pow(k as u32);
        let pairs = (words - 1) * (words - 1);
        let ex = ctx.exhaustive(pairs * 128);
        exhaustive &= ex;
        let pairs: Vec<(Word, Word)> = if ex {
            (1..words as usize)
                .flat_map(|a| (1..words as usize).map(move |b| (a, b)))
                .map(|(a, b)| (word_at(ring, k, a), word_at(ring, k, b)))
                .collect()
        } else {
            let mut rng = ctx.rng(4 + k as u64);
            (0..ctx.opts.samples)
                .map(|_| {
                    let a = rng.gen_range(1..words as usize);
                    let b = rng.gen_range(1..words as usize);
                    (word_at(ring, k, a), word_at(ring, k, b))
                })
                .collect()
        };
        cases += pairs.len() as u64 * q;
        let bad = crate::exec::find_first(pairs.len(), |i| {
            let (g, h) = &pairs[i];
            let lhs = correlation_vectors_scaled(ctx.wt, g, h);
            ring.elements()
                .find(|&s| ctx.wt.unscale2(lhs[s as usize]) != correlation_vectors_rhs(ctx.wt, g, h, s))
                .map(|s| format!("g = {}, h = {}, s = {}", ctx.fmt_word(g), ctx.fmt_word(h), ctx.fmt(s)))
        });
        if bad.is_some() {
            witness = bad;
            break;
        }
    }
    Check::new("vector correlation", cases, exhaustive, witness)
}

fn check_row_column(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let mut rng = ctx.rng(7);
    let mut witness = None;
    for _ in 0..ctx.opts.matrices {
        let m = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=3);
        let rows: Vec<Word> = (0..m).map(|_| (0..n).map(|_| ctx.elem(&mut rng)).collect()).collect();
        let (a, b, eq) = check_row_column_cardinality(ring, &rows);
        if !eq {
            witness = Some(format!(
                "{}: row space {a}, column space {b}",
                rows.iter().map(|r| ctx.fmt_word(r)).collect::<Vec<_>>().join(" ")
            ));
            break;
        }
    }
    Check::new("row and column spaces", ctx.opts.matrices as u64, false, witness)
}

fn check_duality(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let q = ring.order();
    let dims: Vec<usize> = if q <= 16 { vec![1, 2] } else { vec![1] };
    let mut cases = 0u64;
    let mut witness = None;
    'outer: for &n in &dims {
        let subs = match enumerate_submodules(ring, n, Side::Left, 1 << 16, 4096) {
            Ok(s) => s,
            Err(e) => return Check::skipped("frobenius duality", &e.to_string()),
        };
        let total = q.pow(n as u32);
        for c in &subs {
            cases += 1;
            let perp = match annihilator(ring, c.elements(), n, Side::Right, 1 << 16) {
                Ok(p) => p,
                Err(e) => return Check::skipped("frobenius duality", &e.to_string()),
            };
            if c.len() * perp.len() != total {
                witness = Some(format!(
                    "submodule generated by {} has |C| |C^perp| = {} != {total}",
                    c.generators.iter().map(|g| ctx.fmt_word(g)).collect::<Vec<_>>().join(" "),
                    c.len() * perp.len()
                ));
                break 'outer;
            }
        }
    }
    Check::new("frobenius duality", cases, true, witness)
}

fn check_semisimple(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let Some(params) = ring.semisimple_factors() else {
        return Check::skipped("semisimple formula", "ring is not a product of matrix rings over fields");
    };
    let witness = ring.elements().find_map(|x| {
        let ranks = ring.semisimple_ranks(x)?;
        match whom_semisimple(&params, &ranks) {
            Ok(v) if v == ctx.wt.whom(x) => None,
            Ok(v) => Some(format!("w({}) = {} but the rank formula gives {v}", ctx.fmt(x), ctx.wt.whom(x))),
            Err(e) => Some(e.to_string()),
        }
    });
    Check::new("semisimple formula", ring.order() as u64, true, witness)
}

fn check_outside_socle(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let socle: BTreeSet<Elem> = left_socle(ring).into_iter().collect();
    let one = ctx.wt.denom();
    let outside: Vec<Elem> = ring.elements().filter(|x| !socle.contains(x)).collect();
    let witness = outside
        .iter()
        .find(|&&x| ctx.wt.scaled(x) != one)
        .map(|&x| format!("w({}) = {} outside the socle", ctx.fmt(x), ctx.wt.whom(x)));
    Check::new("weight one outside socle", outside.len() as u64, true, witness)
}

fn check_unit_invariance(ctx: &Ctx) -> Check {
    let ring = ctx.ring;
    let witness = ring.elements().find_map(|x| {
        ring.units()
            .iter()
            .find(|&&u| ctx.wt.scaled(ring.mul(u, x)) != ctx.wt.scaled(x))
            .map(|&u| format!("w({} {}) != w({})", ctx.fmt(u), ctx.fmt(x), ctx.fmt(x)))
    });
    Check::new(
        "unit invariance",
        (ring.order() * ring.units().len()) as u64,
        true,
        witness,
    )
}

/// Runs every check against `wt` (which may carry an injected fault).
pub fn verify_ring(wt: &WeightTable, opts: &VerifyOptions) -> Result<VerifyReport> {
    let ring = wt.ring();
    let ctx = Ctx { wt, ring, opts };
    let checks = vec![
        check_axioms(&ctx),
        check_zero_set(&ctx),
        check_unit_invariance(&ctx),
        check_coset_sums(&ctx),
        check_sum_of_squares(&ctx),
        check_correlation_ideal(&ctx),
        check_correlation_vectors(&ctx),
        check_row_column(&ctx),
        check_duality(&ctx),
        check_semisimple(&ctx),
        check_outside_socle(&ctx),
    ];
    Ok(VerifyReport {
        ring: ring.spec().to_string(),
        order: ring.order(),
        units: ring.units().len(),
        sampled: checks.iter().any(|c| !c.exhaustive && c.cases > 0),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;
    use std::sync::Arc;

    fn table(s: &str) -> WeightTable {
        WeightTable::new(Arc::new(build_ring(&s.parse().unwrap()).unwrap())).unwrap()
    }

    #[test]
    fn small_rings_pass() {
        for s in ["Z4", "M2(GF(2))", "prod(Z2,Z2)", "GF(2^2)"] {
            let rep = verify_ring(&table(s), &VerifyOptions::default()).unwrap();
            assert!(rep.passed(), "{s}: {:#?}", rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
            assert!(rep.check("coset sums").unwrap().exhaustive);
        }
    }

    #[test]
    fn fault_is_caught_with_ideal_witness() {
        let wt = table("Z4").with_fault(2, 1);
        let rep = verify_ring(&wt, &VerifyOptions::default()).unwrap();
        let c = rep.check("coset sums").unwrap();
        assert!(!c.passed);
        assert!(c.witness.as_ref().unwrap().contains("ideal"));
    }

    #[test]
    fn sampled_mode_is_flagged() {
        let opts = VerifyOptions {
            full: false,
            samples: 20,
            ..VerifyOptions::default()
        };
        let rep = verify_ring(&table("Z8"), &opts).unwrap();
        assert!(rep.passed());
        assert!(rep.sampled);
    }
}
