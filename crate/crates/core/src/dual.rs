//! The dual of a two-weight code: the code generated by the columns of the
//! matrix `M_1` whose rows are the weight-`w1` codewords.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::{
    lemma_words, modular_index, support_set, two_weight_profile, weight_distribution, LinearCode,
    TwoWeightProfile,
};
use crate::error::{Error, Result};
use crate::graph::{build_gamma, measure_srg, predicted_srg, SrgParams};
use crate::module::{add_vec, dot, is_zero, scale, span_set, Side, Word};
use crate::rational::{int, to_i128, Rational};

#[derive(Clone, Debug)]
pub struct DualCode {
    pub source: TwoWeightProfile,
    /// Rows are the weight-`w1` codewords in ascending order.
    pub m1: Vec<Word>,
    pub code: LinearCode,
    pub histogram: BTreeMap<Rational, usize>,
}

impl DualCode {
    pub fn size(&self) -> usize {
        self.code.size()
    }
}

pub fn build_dual(code: &LinearCode, cap: usize) -> Result<DualCode> {
    let source = two_weight_profile(code)?.ok_or(Error::NotTwoWeight)?;
    let w1 = &source.w1;
    let m1: Vec<Word> = (0..code.size())
        .filter(|&i| code.weight(i) == *w1)
        .map(|i| code.codewords()[i].clone())
        .collect();
    let dual = LinearCode::from_generators(code.weights(), code.side().opposite(), m1.clone(), cap)?;
    let histogram = weight_distribution(&dual);
    Ok(DualCode {
        source,
        m1,
        code: dual,
        histogram,
    })
}

fn dual_preconditions(p: &TwoWeightProfile) -> Result<Rational> {
    let r = p.modular_index()?.clone();
    if p.size0 != 1 {
        return Err(Error::Precondition("the dual construction needs C_0 = {0}".into()));
    }
    Ok(r)
}

/// `(w1', w2')`; the two expressions for `w1'` are compared.
pub fn predicted_dual_weights(p: &TwoWeightProfile) -> Result<(Rational, Rational)> {
    let r = dual_preconditions(p)?;
    let (n, c) = (p.n_q(), p.size_q());
    let dw = &p.w2 - &p.w1;
    let w1 = (&p.w2 - &n - &r) * &c / &dw;
    let alt = int(p.b1 as i128) * &p.w1 / &n;
    if w1 != alt {
        return Err(Error::Inconsistent(format!("w1' = {w1} but b1 w1 / n = {alt}")));
    }
    let w2 = (&p.w2 - &n) * &c / &dw;
    Ok((w1, w2))
}

fn whole(name: &'static str, q: Rational) -> Result<i64> {
    to_i128(&q).map(|v| v as i64).ok_or(Error::NonInteger {
        name,
        value: q.to_string(),
    })
}

/// Parameters of `Gamma(C')` in terms of the source code.
pub fn predicted_dual_srg(p: &TwoWeightProfile) -> Result<SrgParams> {
    let r = dual_preconditions(p)?;
    let (n, c) = (p.n_q(), p.size_q());
    let mu = &p.w1 * &p.w2 / (&r * &r * &c);
    let lambda = (int(2) * &n - &p.w1 - &p.w2) / &r + &mu;
    Ok(SrgParams {
        n: p.size as i64,
        k: whole("K'", &n / &r)?,
        lambda: whole("lambda'", lambda)?,
        mu: whole("mu'", mu)?,
        trivial: p.trivial_graph(),
    })
}

/// Outcome of the sweep over `y in R^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct YSweep {
    pub words: usize,
    pub exhaustive: bool,
    /// Both sums of the linear system for `w(d_1), w(d_2)`.
    pub sums: bool,
    /// `w(M_1 y) = w1'` exactly when `G y` lies in the support, `w2'` otherwise.
    pub dual_weights: bool,
    /// `M_1 y = 0` iff `y` is orthogonal to `C`.
    pub kernel: bool,
    pub witness: Option<String>,
}

impl YSweep {
    pub fn passed(&self) -> bool {
        self.sums && self.dual_weights && self.kernel
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleDual {
    pub n: usize,
    pub size: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub w1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub w2: Rational,
    pub parameters_match: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualReport {
    pub n: usize,
    pub size: usize,
    #[serde(with = "crate::rational::serde_str")]
    pub w1: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub w2: Rational,
    pub b1: usize,
    pub b2: usize,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub index: Option<Rational>,
    pub support: bool,
    pub zero_class_trivial: bool,
    pub index_one: bool,
    pub size_equal: bool,
    pub frequencies: bool,
    pub degree: bool,
    pub generated_by_w1: bool,
    pub y_sweep: YSweep,
    /// A column-space vector outside the support, so both dual weights occur.
    pub off_support: Option<Word>,
    pub predicted_srg: SrgParams,
    pub measured_srg: Option<SrgParams>,
    pub srg_equal: bool,
    pub trivial_equal: bool,
    /// Exploratory only; never part of [`DualReport::passed`].
    pub double_dual: Option<DoubleDual>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.support
            && self.zero_class_trivial
            && self.index_one
            && self.size_equal
            && self.frequencies
            && self.degree
            && self.generated_by_w1
            && self.y_sweep.passed()
            && self.off_support.is_some()
            && self.srg_equal
            && self.trivial_equal
    }
}

/// `G y` (left codes) or `y G` (right codes): the column-space vector behind `M_1 y`.
fn column_combination(code: &LinearCode, y: &[u16]) -> Word {
    let ring = code.ring();
    code.generators()
        .iter()
        .zip(y)
        .fold(vec![0; code.k()], |acc, (g, &yj)| {
            add_vec(ring, &acc, &scale(ring, code.point_side(), yj, g))
        })
}

fn pair(code: &LinearCode, c: &[u16], y: &[u16]) -> u16 {
    match code.side() {
        Side::Left => dot(code.ring(), c, y),
        Side::Right => dot(code.ring(), y, c),
    }
}

fn y_sweep(code: &LinearCode, dual: &DualCode, w: &(Rational, Rational), seed: u64) -> Result<YSweep> {
    let r = dual.source.modular_index()?.clone();
    let wt = code.weights();
    let den = wt.denom() as i128;
    let n = code.n() as i128;
    let size = code.size() as i128;
    let omega = support_set(code);
    let (words, exhaustive) = lemma_words(code.ring(), code.n(), seed);
    // r * |C| * den^2 as an integer; r |C| need not be integral on its own
    let r_term = &r * int(size * den * den);
    let r_term = to_i128(&r_term).ok_or_else(|| Error::Inconsistent("r |C| den^2 is not integral".into()))?;
    let (w1s, w2s) = (scaled(&w.0, den)?, scaled(&w.1, den)?);
    let outcomes: Vec<(bool, bool, bool, Option<String>)> = crate::exec::map(&words, |y| {
        let gy = column_combination(code, y);
        let orthogonal = is_zero(&gy);
        let mut s1 = 0i128;
        let mut s2 = 0i128;
        for (i, c) in code.codewords().iter().enumerate() {
            let v = wt.scaled(pair(code, c, y)) as i128;
            s1 += v;
            s2 += code.scaled_weight(i) as i128 * v;
        }
        let in_omega = omega.binary_search(&gy).is_ok();
        let (e1, e2) = if orthogonal {
            (0, 0)
        } else {
            (size * den, n * size * den * den + if in_omega { r_term } else { 0 })
        };
        let sums = s1 == e1 && s2 == e2;
        let d1 = dual.code.encode(y);
        let dw = wt.word_scaled(&d1) as i128;
        let dual_ok = if orthogonal {
            dw == 0
        } else if in_omega {
            dw == w1s
        } else {
            dw == w2s
        };
        let kernel = is_zero(&d1) == orthogonal;
        let witness = (!(sums && dual_ok && kernel)).then(|| format!("y={y:?}"));
        (sums, dual_ok, kernel, witness)
    });
    Ok(YSweep {
        words: words.len(),
        exhaustive,
        sums: outcomes.iter().all(|o| o.0),
        dual_weights: outcomes.iter().all(|o| o.1),
        kernel: outcomes.iter().all(|o| o.2),
        witness: outcomes.into_iter().find_map(|o| o.3),
    })
}

fn scaled(q: &Rational, den: i128) -> Result<i128> {
    to_i128(&(q * int(den))).ok_or_else(|| Error::Inconsistent(format!("{q} not over the weight denominator")))
}

/// Builds `C'` and checks every claim about it against enumeration.
pub fn dual_pipeline(code: &LinearCode, cap: usize, seed: u64) -> Result<DualReport> {
    let dual = build_dual(code, cap)?;
    let p = &dual.source;
    let r = dual_preconditions(p)?.clone();
    let (w1, w2) = predicted_dual_weights(p)?;
    let hist = &dual.histogram;
    let b1 = hist.get(&w1).copied().unwrap_or(0);
    let b2 = hist.get(&w2).copied().unwrap_or(0);
    let support = hist.len() == 3 && hist.get(&int(0)) == Some(&1) && b1 > 0 && b2 > 0;
    let size = dual.size();
    let c = p.size_q();
    let frequencies = b1 + b2 + 1 == size
        && int(b1 as i128) * &w1 + int(b2 as i128) * &w2 == int(p.b1 as i128) * &c;
    let degree = int(b1 as i128) == p.n_q() / &r;
    let index = modular_index(&dual.code);
    let c1: Vec<Word> = dual.m1.clone();
    let generated_by_w1 = span_set(code.ring(), &c1, code.n(), code.side()).len() == code.size();
    let sweep = y_sweep(code, &dual, &(w1.clone(), w2.clone()), seed)?;
    let column_space = span_set(code.ring(), code.generators(), code.k(), code.point_side());
    let omega = support_set(code);
    let off_support = column_space
        .into_iter()
        .find(|v| !is_zero(v) && omega.binary_search(v).is_err());
    let predicted = predicted_dual_srg(p)?;
    let from_profile = two_weight_profile(&dual.code)?
        .filter(|q| q.index.is_some())
        .map(|q| predicted_srg(&q))
        .transpose()?;
    let measured = match two_weight_profile(&dual.code)? {
        Some(_) => measure_srg(&build_gamma(&dual.code)?.graph),
        None => None,
    };
    let srg_equal = measured.as_ref() == Some(&predicted) && from_profile.as_ref() == Some(&predicted);
    let trivial_equal = measured.as_ref().is_some_and(|m| m.trivial == p.trivial_graph());
    let double_dual = match build_dual(&dual.code, cap) {
        Ok(dd) => {
            let q = two_weight_profile(&dd.code)?;
            q.map(|q| DoubleDual {
                parameters_match: q.n == p.n && q.size == p.size && q.w1 == p.w1 && q.w2 == p.w2,
                n: q.n,
                size: q.size,
                w1: q.w1,
                w2: q.w2,
            })
        }
        Err(_) => None,
    };
    Ok(DualReport {
        n: dual.code.n(),
        size,
        w1,
        w2,
        b1,
        b2,
        index_one: index == Some(int(1)),
        index,
        support,
        zero_class_trivial: dual.code.zero_class().len() == 1,
        size_equal: size == p.size,
        frequencies,
        degree,
        generated_by_w1,
        y_sweep: sweep,
        off_support,
        predicted_srg: predicted,
        measured_srg: measured,
        srg_equal,
        trivial_equal,
        double_dual,
    })
}
