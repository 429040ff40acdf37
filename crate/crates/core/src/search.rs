//! Exhaustive search for modular codes over the points of `PG(R^k)`.
//!
//! A modular code of index `r` puts `r |orbit(P)|` columns on every point it
//! uses, so candidates are (index, point set) pairs rather than arbitrary
//! column multisets.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::code::{
    alpha_multiset, lemma_sweep, modular_index, one_weight_characterization,
    two_weight_profile, LemmaReport, LinearCode, OneWeightCheck, TwoWeightProfile,
};
use crate::dual::{dual_pipeline, DualReport};
use crate::error::{Error, Result};
use crate::graph::{build_gamma, coclique_structure, equivalence_check, measure_srg, predicted_srg, EquivalenceReport, SrgParams};
use crate::module::{check_enumeration, word_at, Side, Word};
use crate::rational::{frac, to_i128, Rational};
use crate::weight::{point_id, unit_orbit, WeightTable};

/// Upper bound on the number of candidate codes in one search.
pub const MAX_CANDIDATES: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    /// Index 1 only: each used point carries its whole unit orbit.
    Index1,
    /// Every index whose multiplicities stay within `mult_cap`.
    Grid { mult_cap: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSpec {
    pub k: usize,
    pub n_max: usize,
    pub mode: SearchMode,
    pub dedupe: bool,
    pub seed: u64,
    pub cap: usize,
}

/// A point `gR` of `PG(R^k)`, identified by the smallest element of `gR^x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub id: Word,
    pub orbit: Vec<Word>,
}

pub fn projective_points(ring: &crate::ring::FiniteRing, k: usize, side: Side, cap: usize) -> Result<Vec<Point>> {
    let total = check_enumeration(ring, k, cap)?;
    let mut points: BTreeMap<Word, Vec<Word>> = BTreeMap::new();
    for i in 1..total {
        let g = word_at(ring, k, i);
        let id = point_id(ring, &g, side);
        if id == g {
            points.insert(id, unit_orbit(ring, &g, side));
        }
    }
    Ok(points.into_iter().map(|(id, orbit)| Point { id, orbit }).collect())
}

/// A candidate: modular index and `(point, multiplicity)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub index: Rational,
    pub points: Vec<(usize, usize)>,
}

impl Candidate {
    pub fn columns(&self, points: &[Point]) -> Vec<Word> {
        self.points
            .iter()
            .flat_map(|&(p, m)| {
                let orbit = &points[p].orbit;
                (0..m).map(move |i| orbit[i % orbit.len()].clone())
            })
            .collect()
    }
}

/// Candidate indices in increasing order with the points admissible for each.
fn index_grid(points: &[Point], spec: &SearchSpec) -> Vec<(Rational, Vec<(usize, usize)>)> {
    let mut grid: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    let mult_cap = match spec.mode {
        SearchMode::Index1 => spec.n_max,
        SearchMode::Grid { mult_cap } => mult_cap.min(spec.n_max),
    };
    for p in points {
        for m in 1..=mult_cap {
            let r = frac(m as i128, p.orbit.len() as i128);
            if spec.mode == SearchMode::Index1 && r != frac(1, 1) {
                continue;
            }
            grid.entry(r).or_default();
        }
    }
    for (r, eligible) in grid.iter_mut() {
        for (i, p) in points.iter().enumerate() {
            let m = r * frac(p.orbit.len() as i128, 1);
            if let Some(m) = to_i128(&m) {
                if m >= 1 && (m as usize) <= mult_cap {
                    eligible.push((i, m as usize));
                }
            }
        }
    }
    grid.into_iter().collect()
}

pub fn enumerate_candidates(points: &[Point], spec: &SearchSpec) -> Result<Vec<Candidate>> {
    fn rec(
        eligible: &[(usize, usize)],
        start: usize,
        budget: usize,
        current: &mut Vec<(usize, usize)>,
        index: &Rational,
        out: &mut Vec<Candidate>,
    ) -> Result<()> {
        for i in start..eligible.len() {
            let (p, m) = eligible[i];
            if m > budget {
                continue;
            }
            current.push((p, m));
            if out.len() >= MAX_CANDIDATES {
                return Err(Error::EnumerationCap {
                    size: out.len() as u128 + 1,
                    cap: MAX_CANDIDATES,
                });
            }
            out.push(Candidate {
                index: index.clone(),
                points: current.clone(),
            });
            rec(eligible, i + 1, budget - m, current, index, out)?;
            current.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    for (r, eligible) in index_grid(points, spec) {
        rec(&eligible, 0, spec.n_max, &mut Vec::new(), &r, &mut out)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointUse {
    pub point: String,
    pub multiplicity: usize,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hit {
    pub n: usize,
    pub columns: Vec<String>,
    pub points: Vec<PointUse>,
    pub profile: TwoWeightProfile,
    pub predicted_srg: Option<SrgParams>,
    pub predicted_error: Option<String>,
    pub measured_srg: Option<SrgParams>,
    pub srg_equal: bool,
    /// `w1 = n` exactly when the measured graph has `mu = K`.
    pub triviality: bool,
    pub coclique: Option<bool>,
    pub dual: Option<DualReport>,
    pub equivalence: Option<EquivalenceReport>,
    pub lemmas: LemmaReport,
}

impl Hit {
    pub fn passed(&self) -> bool {
        self.srg_equal
            && self.triviality
            && self.coclique != Some(false)
            && self.dual.as_ref().map_or(true, DualReport::passed)
            && self.equivalence.as_ref().map_or(true, |e| e.passed() && e.condition_ii)
            && self.lemmas.passed()
    }
}

/// A modular code that is not two-weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Miss {
    pub n: usize,
    pub columns: Vec<String>,
    pub weights: Vec<String>,
    pub one_weight: OneWeightCheck,
    pub equivalence: Option<EquivalenceReport>,
}

impl Miss {
    /// Some clause of the partial difference set condition fails.
    pub fn passed(&self) -> bool {
        self.one_weight.agree && self.equivalence.as_ref().map_or(true, |e| e.passed() && !e.condition_ii)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub ring: String,
    pub k: usize,
    pub n_max: usize,
    pub mode: SearchMode,
    pub points: usize,
    pub candidates: usize,
    pub hits: Vec<Hit>,
    pub misses: Vec<Miss>,
    pub nontrivial_hits: usize,
}

impl SearchReport {
    pub fn passed(&self) -> bool {
        self.hits.iter().all(Hit::passed) && self.misses.iter().all(Miss::passed)
    }
}

enum Outcome {
    Hit(Box<Hit>),
    Miss(Box<Miss>),
}

fn evaluate(wt: &Arc<WeightTable>, points: &[Point], cand: &Candidate, spec: &SearchSpec) -> Result<Outcome> {
    let ring = wt.ring();
    let columns = cand.columns(points);
    let code = LinearCode::from_generators(wt, Side::Left, columns, spec.cap)?;
    debug_assert_eq!(modular_index(&code).as_ref(), Some(&cand.index));
    let fmt_word = |w: &Word| {
        format!(
            "({})",
            w.iter().map(|&x| ring.format_elem(x)).collect::<Vec<_>>().join(",")
        )
    };
    let column_strings: Vec<String> = code.generators().iter().map(fmt_word).collect();
    let trivial_c0 = code.zero_class().len() == 1;
    match two_weight_profile(&code)? {
        Some(profile) => {
            let (predicted_srg, predicted_error) = match predicted_srg(&profile) {
                Ok(p) => (Some(p), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let measured = measure_srg(&build_gamma(&code)?.graph);
            let srg_equal = predicted_srg.is_some() && measured == predicted_srg;
            let triviality = measured
                .as_ref()
                .is_some_and(|m| profile.trivial_graph() == (m.mu == m.k));
            let points_used = alpha_multiset(&code)
                .points
                .into_iter()
                .map(|(id, e)| PointUse {
                    point: fmt_word(&id),
                    multiplicity: e.multiplicity,
                    orbit_size: e.orbit_size,
                })
                .collect();
            Ok(Outcome::Hit(Box::new(Hit {
                n: code.n(),
                columns: column_strings,
                points: points_used,
                coclique: if profile.trivial_graph() { Some(coclique_structure(&code)?) } else { None },
                dual: if trivial_c0 {
                    Some(dual_pipeline(&code, spec.cap, spec.seed)?)
                } else {
                    None
                },
                equivalence: if trivial_c0 { Some(equivalence_check(&code)?) } else { None },
                lemmas: lemma_sweep(&code, spec.seed)?,
                profile,
                predicted_srg,
                predicted_error,
                measured_srg: measured,
                srg_equal,
                triviality,
            })))
        }
        None => Ok(Outcome::Miss(Box::new(Miss {
            n: code.n(),
            columns: column_strings,
            weights: crate::code::weight_distribution(&code)
                .into_iter()
                .map(|(w, c)| format!("{w}:{c}"))
                .collect(),
            one_weight: one_weight_characterization(&code),
            equivalence: if trivial_c0 { Some(equivalence_check(&code)?) } else { None },
        }))),
    }
}

pub fn search(wt: &Arc<WeightTable>, spec: &SearchSpec) -> Result<SearchReport> {
    if spec.n_max == 0 || spec.k == 0 {
        return Err(Error::InvalidSpec("search needs k >= 1 and n_max >= 1".into()));
    }
    let ring = wt.ring();
    let points = projective_points(ring, spec.k, Side::Right, spec.cap)?;
    let mut candidates = enumerate_candidates(&points, spec)?;
    if spec.dedupe {
        // distinct (index, point set) pairs already have distinct column
        // multisets; this only guards against repeated entries
        let mut seen = std::collections::HashSet::new();
        candidates.retain(|c| seen.insert(c.points.clone()));
    }
    let outcomes = crate::exec::map(&candidates, |c| evaluate(wt, &points, c, spec));
    let mut hits = Vec::new();
    let mut misses = Vec::new();
    for o in outcomes {
        match o? {
            Outcome::Hit(h) => hits.push(*h),
            Outcome::Miss(m) => misses.push(*m),
        }
    }
    let nontrivial_hits = hits.iter().filter(|h| !h.profile.trivial_graph()).count();
    Ok(SearchReport {
        ring: ring.spec().to_string(),
        k: spec.k,
        n_max: spec.n_max,
        mode: spec.mode,
        points: points.len(),
        candidates: candidates.len(),
        hits,
        misses,
        nontrivial_hits,
    })
}
