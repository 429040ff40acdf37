//! Linear codes over a ring, their column multisets in `PG(R^k)`, modularity
//! and the two-weight profile.
//!
//! A code has `n` generator vectors `g_1..g_n` in `R^k`. For a left code the
//! `g_j` are the columns of a generator matrix `G` and `C = {xG}`; coordinate
//! `j` of a codeword is `x . g_j` and the points are the right submodules
//! `g_j R`. A right code (the dual construction produces one) has the `g_j` as
//! the rows of `M`, `C = {My}`, coordinate `j` is `g_j . y` and the points are
//! `R g_j`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::module::{add_vec, check_enumeration, span_set, word_at, Side, Word};
use crate::rational::{frac, int, Rational};
use crate::ring::{Elem, FiniteRing};
use crate::weight::{point_id, unit_orbit, WeightTable};

/// Default bound on `|R|^k` for eager enumeration.
pub const DEFAULT_ENUM_CAP: usize = 1 << 20;

/// Lemma sweeps are exhaustive over `R^n` up to this many words.
pub const EXHAUSTIVE_WORDS: usize = 4096;

/// Random words per lemma when the sweep is sampled.
pub const SAMPLED_WORDS: usize = 200;

#[derive(Clone, Debug)]
pub struct LinearCode {
    weights: Arc<WeightTable>,
    side: Side,
    k: usize,
    generators: Vec<Word>,
    codewords: Vec<Word>,
    index: HashMap<Word, usize>,
    scaled: Vec<i64>,
    zero_class: Vec<usize>,
}

/// `G` given by its `k` rows, all of length `n`; returns the left code `{xG}`.
pub fn build_code(weights: &Arc<WeightTable>, rows: &[Word], cap: usize) -> Result<LinearCode> {
    let k = rows.len();
    if k == 0 {
        return Err(Error::Dimension("generator matrix has no rows".into()));
    }
    let n = rows[0].len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("generator matrix rows must share a positive length".into()));
    }
    check_enumeration(weights.ring(), k, cap)?;
    let columns: Vec<Word> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    LinearCode::from_generators(weights, Side::Left, columns, cap)
}

impl LinearCode {
    /// Code with generator vectors `generators` (columns of `G` for a left code,
    /// rows of `M` for a right code). Fails if any vector is zero or the code
    /// has more than `cap` words.
    pub fn from_generators(
        weights: &Arc<WeightTable>,
        side: Side,
        generators: Vec<Word>,
        cap: usize,
    ) -> Result<Self> {
        let ring = weights.ring();
        let n = generators.len();
        if n == 0 {
            return Err(Error::Dimension("code needs at least one coordinate".into()));
        }
        let k = generators[0].len();
        if k == 0 || generators.iter().any(|g| g.len() != k) {
            return Err(Error::Dimension("generator vectors must share a positive length".into()));
        }
        if let Some(j) = generators.iter().position(|g| crate::module::is_zero(g)) {
            return Err(Error::ZeroColumn(j));
        }
        let basis: Vec<Word> = (0..k).map(|i| generators.iter().map(|g| g[i]).collect()).collect();
        let codewords = span_set(ring, &basis, n, side);
        if codewords.len() > cap {
            return Err(Error::EnumerationCap {
                size: codewords.len() as u128,
                cap,
            });
        }
        let scaled: Vec<i64> = crate::exec::map(&codewords, |c| weights.word_scaled(c));
        let index = codewords
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        let zero_class: Vec<usize> = (0..codewords.len()).filter(|&i| scaled[i] == 0).collect();
        let code = LinearCode {
            weights: weights.clone(),
            side,
            k,
            generators,
            codewords,
            index,
            scaled,
            zero_class,
        };
        code.check_zero_class()?;
        Ok(code)
    }

    fn check_zero_class(&self) -> Result<()> {
        let ring = self.ring();
        for &a in &self.zero_class {
            for &b in &self.zero_class {
                let s = add_vec(ring, &self.codewords[a], &self.codewords[b]);
                match self.index.get(&s) {
                    Some(&i) if self.scaled[i] == 0 => {}
                    _ => {
                        return Err(Error::Inconsistent(
                            "weight-zero codewords do not form a subgroup".into(),
                        ))
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &FiniteRing {
        self.weights.ring()
    }

    pub fn weights(&self) -> &Arc<WeightTable> {
        &self.weights
    }

    pub fn side(&self) -> Side {
        self.side
    }

    /// Side on which the unit group acts on generator vectors.
    pub fn point_side(&self) -> Side {
        self.side.opposite()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Word] {
        &self.generators
    }

    /// Codewords in lexicographic order.
    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn position(&self, w: &[Elem]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &[Elem]) -> bool {
        self.index.contains_key(w)
    }

    /// Weight of codeword `i`, scaled by the weight table's denominator.
    pub fn scaled_weight(&self, i: usize) -> i64 {
        self.scaled[i]
    }

    pub fn weight(&self, i: usize) -> Rational {
        self.weights.unscale(self.scaled[i] as i128)
    }

    /// Indices of the weight-zero codewords `C_0`.
    pub fn zero_class(&self) -> &[usize] {
        &self.zero_class
    }

    /// Coordinate `j` of the codeword generated by `x` (`x.g_j` or `g_j.x`).
    pub fn encode(&self, x: &[Elem]) -> Word {
        let ring = self.ring();
        self.generators
            .iter()
            .map(|g| match self.side {
                Side::Left => crate::module::dot(ring, x, g),
                Side::Right => crate::module::dot(ring, g, x),
            })
            .collect()
    }

    /// Same code with generator vectors permuted and rescaled by units.
    pub fn monomial_image(&self, perm: &[usize], units: &[Elem]) -> Result<Self> {
        let ring = self.ring();
        let gens = perm
            .iter()
            .zip(units)
            .map(|(&j, &u)| crate::module::scale(ring, self.point_side(), u, &self.generators[j]))
            .collect();
        Self::from_generators(&self.weights, self.side, gens, usize::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointEntry {
    pub multiplicity: usize,
    pub orbit_size: usize,
}

/// Column multiset keyed by canonical point id (smallest unit-orbit element).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMultiset {
    pub k: usize,
    pub points: BTreeMap<Word, PointEntry>,
}

impl PointMultiset {
    pub fn total(&self) -> usize {
        self.points.values().map(|p| p.multiplicity).sum()
    }
}

pub fn alpha_multiset(code: &LinearCode) -> PointMultiset {
    let ring = code.ring();
    let side = code.point_side();
    let mut points: BTreeMap<Word, PointEntry> = BTreeMap::new();
    for g in code.generators() {
        let id = point_id(ring, g, side);
        points
            .entry(id)
            .and_modify(|p| p.multiplicity += 1)
            .or_insert_with(|| PointEntry {
                multiplicity: 1,
                orbit_size: unit_orbit(ring, g, side).len(),
            });
    }
    PointMultiset { k: code.k(), points }
}

/// `r` with `alpha(P) = r |orbit(P)|` on every occupied point, if one exists.
pub fn modular_index(code: &LinearCode) -> Option<Rational> {
    let alpha = alpha_multiset(code);
    let mut ratios = alpha
        .points
        .values()
        .map(|p| frac(p.multiplicity as i128, p.orbit_size as i128));
    let first = ratios.next()?;
    ratios.all(|r| r == first).then_some(first)
}

/// Exact weight histogram.
pub fn weight_distribution(code: &LinearCode) -> BTreeMap<Rational, usize> {
    let mut scaled: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..code.size() {
        *scaled.entry(code.scaled_weight(i)).or_default() += 1;
    }
    scaled
        .into_iter()
        .map(|(w, c)| (code.weights().unscale(w as i128), c))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoWeightProfile {
    pub n: usize,
    pub size: usize,
    pub size0: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub w1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub w2: Rational,
    pub b0: usize,
    pub b1: usize,
    pub b2: usize,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub index: Option<Rational>,
}

impl TwoWeightProfile {
    pub fn n_q(&self) -> Rational {
        int(self.n as i128)
    }

    pub fn size_q(&self) -> Rational {
        int(self.size as i128)
    }

    pub fn modular_index(&self) -> Result<&Rational> {
        self.index.as_ref().ok_or(Error::NotModular)
    }

    /// `((w2 - n)|C| - w2|C0|) / (w2 - w1)`.
    pub fn predicted_b1(&self) -> Rational {
        let (n, c, c0) = (self.n_q(), self.size_q(), int(self.size0 as i128));
        ((&self.w2 - &n) * &c - &self.w2 * c0) / (&self.w2 - &self.w1)
    }

    /// `((n - w1)|C| + w1|C0|) / (w2 - w1)`.
    pub fn predicted_b2(&self) -> Rational {
        let (n, c, c0) = (self.n_q(), self.size_q(), int(self.size0 as i128));
        ((&n - &self.w1) * &c + &self.w1 * c0) / (&self.w2 - &self.w1)
    }

    /// `(w1 + w2) n |C| == (n^2 + r n)|C| + w1 w2 (|C| - |C0|)` for modular codes.
    pub fn weight_relation_holds(&self) -> Option<bool> {
        let r = self.index.as_ref()?;
        let (n, c, c0) = (self.n_q(), self.size_q(), int(self.size0 as i128));
        let lhs = (&self.w1 + &self.w2) * &n * &c;
        let rhs = (&n * &n + r * &n) * &c + &self.w1 * &self.w2 * (&c - c0);
        Some(lhs == rhs)
    }

    pub fn trivial_graph(&self) -> bool {
        self.w1 == self.n_q()
    }
}

/// The two-weight profile, or `None` unless exactly two nonzero weights occur.
/// Errors if the counts disagree with their closed forms.
pub fn two_weight_profile(code: &LinearCode) -> Result<Option<TwoWeightProfile>> {
    let hist = weight_distribution(code);
    let nonzero: Vec<(&Rational, &usize)> = hist.iter().filter(|(w, _)| **w != int(0)).collect();
    if nonzero.len() != 2 {
        return Ok(None);
    }
    let b0 = code.zero_class().len();
    let profile = TwoWeightProfile {
        n: code.n(),
        size: code.size(),
        size0: b0,
        w1: nonzero[0].0.clone(),
        w2: nonzero[1].0.clone(),
        b0,
        b1: *nonzero[0].1,
        b2: *nonzero[1].1,
        index: modular_index(code),
    };
    if profile.b0 + profile.b1 + profile.b2 != profile.size {
        return Err(Error::Inconsistent("b0 + b1 + b2 != |C|".into()));
    }
    let total = &profile.w1 * int(profile.b1 as i128) + &profile.w2 * int(profile.b2 as i128);
    if total != profile.n_q() * profile.size_q() {
        return Err(Error::Inconsistent("b1 w1 + b2 w2 != n |C|".into()));
    }
    if profile.predicted_b1() != int(profile.b1 as i128) || profile.predicted_b2() != int(profile.b2 as i128) {
        return Err(Error::Inconsistent("frequencies differ from their closed forms".into()));
    }
    if profile.weight_relation_holds() == Some(false) {
        return Err(Error::Inconsistent("modular weight relation fails".into()));
    }
    Ok(Some(profile))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneWeightCheck {
    pub is_one_weight: bool,
    pub modular: bool,
    pub support_is_submodule: bool,
    pub rhs_holds: bool,
    pub agree: bool,
}

/// Union of the unit orbits of the generator vectors.
pub fn support_set(code: &LinearCode) -> Vec<Word> {
    let ring = code.ring();
    let mut v: Vec<Word> = code
        .generators()
        .iter()
        .flat_map(|g| unit_orbit(ring, g, code.point_side()))
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Whether `set` together with zero is a submodule on `side`.
pub fn is_submodule_with_zero(ring: &FiniteRing, set: &[Word], side: Side) -> bool {
    let dim = match set.first() {
        Some(v) => v.len(),
        None => return true,
    };
    let closure = span_set(ring, set, dim, side);
    let has_zero = set.iter().any(|v| crate::module::is_zero(v));
    closure.len() == set.len() + usize::from(!has_zero)
}

pub fn one_weight_characterization(code: &LinearCode) -> OneWeightCheck {
    let hist = weight_distribution(code);
    let is_one_weight = hist.keys().filter(|w| **w != int(0)).count() == 1;
    let modular = modular_index(code).is_some();
    let support_is_submodule = is_submodule_with_zero(code.ring(), &support_set(code), code.point_side());
    let rhs_holds = modular && support_is_submodule;
    OneWeightCheck {
        is_one_weight,
        modular,
        support_is_submodule,
        rhs_holds,
        agree: is_one_weight == rhs_holds,
    }
}

/// `sum_{c in C} w(c) w(c + d)`, scaled by `denom^2`.
fn corr_scaled(code: &LinearCode, d: &[Elem]) -> i128 {
    let ring = code.ring();
    let wt = code.weights();
    (0..code.size())
        .map(|i| {
            let wc = code.scaled_weight(i) as i128;
            if wc == 0 {
                return 0;
            }
            let s = add_vec(ring, &code.codewords()[i], d);
            wc * wt.word_scaled(&s) as i128
        })
        .sum()
}

/// `(lhs, rhs)` of `sum_{c in C} w(c) w(c + d) = |C| (n^2 + r n - r w(d))`.
pub fn lemma_corr_code(code: &LinearCode, d: &[Elem]) -> Result<(Rational, Rational)> {
    let r = modular_index(code).ok_or(Error::NotModular)?;
    check_len(code, d)?;
    let wt = code.weights();
    let lhs = wt.unscale2(corr_scaled(code, d));
    let n = int(code.n() as i128);
    let rhs = int(code.size() as i128) * (&n * &n + &r * &n - &r * wt.whom_word(d));
    Ok((lhs, rhs))
}

fn check_len(code: &LinearCode, d: &[Elem]) -> Result<()> {
    if d.len() != code.n() {
        return Err(Error::Dimension(format!(
            "word of length {} for a code of length {}",
            d.len(),
            code.n()
        )));
    }
    Ok(())
}

fn class_members(code: &LinearCode, w: &Rational) -> Vec<usize> {
    (0..code.size()).filter(|&i| &code.weight(i) == w).collect()
}

/// `(lhs, rhs)` of the coset sum `sum_{c in C_i} w(c + d)` for `class` 1 or 2.
pub fn coset_weight_sum(
    code: &LinearCode,
    profile: &TwoWeightProfile,
    d: &[Elem],
    class: u8,
) -> Result<(Rational, Rational)> {
    profile.modular_index()?;
    check_len(code, d)?;
    let ring = code.ring();
    let wt = code.weights();
    let target = match class {
        1 => &profile.w1,
        2 => &profile.w2,
        _ => return Err(Error::Precondition(format!("class index {class} not in 1..=2"))),
    };
    let lhs_scaled: i128 = class_members(code, target)
        .into_iter()
        .map(|i| wt.word_scaled(&add_vec(ring, &code.codewords()[i], d)) as i128)
        .sum();
    let lhs = wt.unscale(lhs_scaled);
    let wd = wt.whom_word(d);
    let (n, c, c0) = (profile.n_q(), profile.size_q(), int(profile.size0 as i128));
    let b1 = int(profile.b1 as i128);
    let b1w1 = &b1 * &profile.w1;
    let rhs1 = &b1w1 + (&b1 - &b1w1 / &n) * &wd;
    let rhs = if class == 1 {
        rhs1
    } else {
        // second equation of the 2x2 system: S1 + S2 = n|C| - |C0| w(d)
        &n * &c - &c0 * &wd - rhs1
    };
    Ok((lhs, rhs))
}

/// The coordinatewise identities at coordinate `j` for the value `dj`:
/// `sum_{c in C} w(c) w(c_j + dj) = |C|(n + r - r w(dj))` and
/// `sum_{c in C_1} w(c_j + dj) = b1 w1/n + (b1 - b1 w1/n) w(dj)`.
pub fn coordinate_identities(
    code: &LinearCode,
    profile: &TwoWeightProfile,
    j: usize,
    dj: Elem,
) -> Result<[(Rational, Rational); 2]> {
    let r = profile.modular_index()?;
    if j >= code.n() {
        return Err(Error::Dimension(format!("coordinate {j} out of range")));
    }
    let ring = code.ring();
    let wt = code.weights();
    let first: i128 = (0..code.size())
        .map(|i| code.scaled_weight(i) as i128 * wt.scaled(ring.add(code.codewords()[i][j], dj)) as i128)
        .sum();
    let second: i128 = class_members(code, &profile.w1)
        .into_iter()
        .map(|i| wt.scaled(ring.add(code.codewords()[i][j], dj)) as i128)
        .sum();
    let wd = wt.whom(dj);
    let n = profile.n_q();
    let b1 = int(profile.b1 as i128);
    let avg = &b1 * &profile.w1 / &n;
    Ok([
        (wt.unscale2(first), profile.size_q() * (&n + r - r * &wd)),
        (wt.unscale(second), &avg + (&b1 - &avg) * &wd),
    ])
}

/// Outcome of running the code-level identities over a set of words `d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub words: usize,
    pub exhaustive: bool,
    pub correlation: bool,
    pub coset_class1: Option<bool>,
    pub coset_class2: Option<bool>,
    pub coordinates: Option<bool>,
    pub weight_relation: Option<bool>,
    pub witness: Option<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.correlation
            && self.coset_class1 != Some(false)
            && self.coset_class2 != Some(false)
            && self.coordinates != Some(false)
            && self.weight_relation != Some(false)
    }
}

/// Words used by the lemma checks: all of `R^n` when it has at most
/// [`EXHAUSTIVE_WORDS`] elements, else [`SAMPLED_WORDS`] seeded random words.
pub fn lemma_words(ring: &FiniteRing, n: usize, seed: u64) -> (Vec<Word>, bool) {
    match crate::module::ambient_size(ring, n) {
        Some(s) if s <= EXHAUSTIVE_WORDS as u128 => {
            ((0..s as usize).map(|i| word_at(ring, n, i)).collect(), true)
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = ring.order();
            let words = (0..SAMPLED_WORDS)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q) as Elem).collect())
                .collect();
            (words, false)
        }
    }
}

/// Runs the correlation lemma (modular codes) and, for modular two-weight
/// codes, both coset sums, the coordinatewise identities and the weight relation.
pub fn lemma_sweep(code: &LinearCode, seed: u64) -> Result<LemmaReport> {
    modular_index(code).ok_or(Error::NotModular)?;
    let profile = two_weight_profile(code)?.filter(|p| p.index.is_some());
    let (words, exhaustive) = lemma_words(code.ring(), code.n(), seed);
    let failures: Vec<Option<String>> = crate::exec::map(&words, |d| {
        let fmt = || format!("{d:?}");
        match lemma_corr_code(code, d) {
            Ok((l, r)) if l == r => {}
            Ok(_) => return Some(format!("correlation lemma fails at d={}", fmt())),
            Err(e) => return Some(e.to_string()),
        }
        if let Some(p) = &profile {
            for class in [1u8, 2] {
                match coset_weight_sum(code, p, d, class) {
                    Ok((l, r)) if l == r => {}
                    Ok(_) => return Some(format!("coset sum C_{class} fails at d={}", fmt())),
                    Err(e) => return Some(e.to_string()),
                }
            }
        }
        None
    });
    let first_fail = failures.into_iter().flatten().next();
    let mut report = LemmaReport {
        words: words.len(),
        exhaustive,
        correlation: first_fail.as_ref().map_or(true, |w| !w.starts_with("correlation")),
        coset_class1: None,
        coset_class2: None,
        coordinates: None,
        weight_relation: None,
        witness: first_fail.clone(),
    };
    if let Some(p) = &profile {
        let fail = first_fail.as_deref().unwrap_or("");
        report.coset_class1 = Some(!fail.contains("C_1"));
        report.coset_class2 = Some(!fail.contains("C_2"));
        let ring = code.ring();
        let mut coords_ok = true;
        'outer: for j in 0..code.n() {
            for dj in ring.elements() {
                let [a, b] = coordinate_identities(code, p, j, dj)?;
                if a.0 != a.1 || b.0 != b.1 {
                    coords_ok = false;
                    report.witness.get_or_insert(format!(
                        "coordinate identity fails at j={j}, d_j={}",
                        ring.format_elem(dj)
                    ));
                    break 'outer;
                }
            }
        }
        report.coordinates = Some(coords_ok);
        report.weight_relation = p.weight_relation_holds();
    }
    Ok(report)
}
