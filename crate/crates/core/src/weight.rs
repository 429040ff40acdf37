//! The normalized homogeneous weight, computed exactly.
//!
//! For `x` in `R` the character sum `sum_u zeta_e^{c(ux)}` over the units is an
//! integer. We get it without floating point: collect the exponent histogram
//! into `Q(t) = sum_a N_a t^a`, reduce modulo the cyclotomic polynomial
//! `Phi_e(t)`, and read off the constant remainder `k`. Then
//! `w(x) = 1 - k/|R^x|`.
//!
//! Every weight shares the denominator `|R^x|`, so the table stores integer
//! numerators over that common denominator. Word weights, products and sums
//! stay in integers; [`Rational`] appears only at the API boundary.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::module::{dot, principal_ideal_set, scale, word_at, Side, Word};
use crate::rational::{frac, int, one, Rational};
use crate::ring::{Elem, FiniteRing};

/// Integer polynomial, coefficient of `t^i` at index `i`.
pub type IntPoly = Vec<i64>;

fn trim(mut p: IntPoly) -> IntPoly {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    p
}

/// Exact quotient of `a` by monic `b`.
fn div_exact(a: &[i64], b: &[i64]) -> IntPoly {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if rem.len() <= db {
        return vec![0];
    }
    let mut q = vec![0i64; rem.len() - db];
    for i in (0..q.len()).rev() {
        let c = rem[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                rem[i + j] -= c * bc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "division was not exact");
    trim(q)
}

/// `Phi_n(t)`, from `t^n - 1` divided by `Phi_d` for every proper divisor `d`.
pub fn cyclotomic(n: u32) -> IntPoly {
    let mut memo = HashMap::new();
    cyclotomic_memo(n, &mut memo)
}

fn cyclotomic_memo(n: u32, memo: &mut HashMap<u32, IntPoly>) -> IntPoly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_memo(d, memo);
            p = div_exact(&p, &phi_d);
        }
    }
    memo.insert(n, p.clone());
    p
}

/// Remainder of `a` modulo monic `m`.
pub fn reduce_mod(a: &[i64], m: &[i64]) -> IntPoly {
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    while rem.len() > dm {
        let c = rem.pop().unwrap();
        if c != 0 {
            let shift = rem.len() - dm;
            for (j, &mc) in m[..dm].iter().enumerate() {
                rem[shift + j] -= c * mc;
            }
        }
    }
    if rem.is_empty() {
        rem.push(0);
    }
    trim(rem)
}

/// Integer value of `sum_{u in R^x} chi(ux)`.
fn unit_character_sum(ring: &FiniteRing, phi: &[i64], x: Elem) -> Result<i64> {
    let e = ring.additive_exponent() as usize;
    let mut hist = vec![0i64; e];
    for &u in ring.units() {
        hist[ring.character().exponent(ring.mul(u, x)) as usize] += 1;
    }
    let rem = reduce_mod(&hist, phi);
    if rem.len() != 1 {
        return Err(Error::NonConstantRemainder { element: x as usize });
    }
    Ok(rem[0])
}

/// `w_hom(x)` straight from the character sum (no caching).
pub fn whom(ring: &FiniteRing, x: Elem) -> Result<Rational> {
    let phi = cyclotomic(ring.additive_exponent());
    let k = unit_character_sum(ring, &phi, x)?;
    let units = ring.units().len() as i128;
    Ok(one() - frac(k as i128, units))
}

/// Cached homogeneous weights of every element.
#[derive(Clone, Debug)]
pub struct WeightTable {
    ring: Arc<FiniteRing>,
    num: Vec<i64>,
    den: i64,
}

impl WeightTable {
    /// Computes one character sum per left unit orbit and spreads it over the orbit.
    pub fn new(ring: Arc<FiniteRing>) -> Result<Self> {
        let phi = cyclotomic(ring.additive_exponent());
        let den = ring.units().len() as i64;
        let mut num: Vec<Option<i64>> = vec![None; ring.order()];
        for x in ring.elements() {
            if num[x as usize].is_some() {
                continue;
            }
            let k = unit_character_sum(&ring, &phi, x)?;
            for &u in ring.units() {
                num[ring.mul(u, x) as usize] = Some(den - k);
            }
        }
        Ok(WeightTable {
            num: num.into_iter().map(|v| v.expect("every element lies in an orbit")).collect(),
            den,
            ring,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn ring_arc(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    /// Common denominator `|R^x|`.
    pub fn denom(&self) -> i64 {
        self.den
    }

    /// Numerator of `w(x)` over [`denom`](Self::denom).
    #[inline]
    pub fn scaled(&self, x: Elem) -> i64 {
        self.num[x as usize]
    }

    pub fn whom(&self, x: Elem) -> Rational {
        frac(self.num[x as usize] as i128, self.den as i128)
    }

    #[inline]
    pub fn word_scaled(&self, w: &[Elem]) -> i64 {
        w.iter().map(|&x| self.num[x as usize]).sum()
    }

    /// Sum of coordinate weights.
    pub fn whom_word(&self, w: &[Elem]) -> Rational {
        frac(self.word_scaled(w) as i128, self.den as i128)
    }

    /// A scaled value as a rational (`v / denom`).
    pub fn unscale(&self, v: i128) -> Rational {
        frac(v, self.den as i128)
    }

    /// A doubly scaled value as a rational (`v / denom^2`).
    pub fn unscale2(&self, v: i128) -> Rational {
        frac(v, self.den as i128 * self.den as i128)
    }

    /// Copy with `w(x)` shifted by `delta / denom`; used for fault injection.
    pub fn with_fault(&self, x: Elem, delta: i64) -> Self {
        let mut t = self.clone();
        t.num[x as usize] += delta;
        t
    }

    pub fn all(&self) -> Vec<Rational> {
        self.ring.elements().map(|x| self.whom(x)).collect()
    }
}

/// `1 - prod_i (-1)^{r_i} / ((q_i^{m_i}-1)(q_i^{m_i-1}-1)...(q_i^{m_i-r_i+1}-1))`.
pub fn whom_semisimple(params: &[(u32, usize)], ranks: &[usize]) -> Result<Rational> {
    if params.len() != ranks.len() {
        return Err(Error::Dimension(format!(
            "{} factors but {} ranks",
            params.len(),
            ranks.len()
        )));
    }
    let mut prod = one();
    for (&(q, m), &r) in params.iter().zip(ranks) {
        if r > m {
            return Err(Error::RankOutOfRange { rank: r, max: m });
        }
        let mut den = BigInt::from(1);
        for j in 0..r {
            den *= BigInt::from(q).pow((m - j) as u32) - 1;
        }
        let sign = if r % 2 == 0 { 1 } else { -1 };
        prod *= Rational::new(BigInt::from(sign), den);
    }
    Ok(one() - prod)
}

/// Unit orbit `g R^x` (`Side::Right`) or `R^x g` (`Side::Left`), sorted.
pub fn unit_orbit(ring: &FiniteRing, g: &[Elem], side: Side) -> Vec<Word> {
    let mut v: Vec<Word> = ring.units().iter().map(|&u| scale(ring, side, u, g)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Cyclic module `g R` (`Side::Right`) or `R g` (`Side::Left`), sorted.
pub fn cyclic_module(ring: &FiniteRing, g: &[Elem], side: Side) -> Vec<Word> {
    let mut v: Vec<Word> = ring.elements().map(|r| scale(ring, side, r, g)).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Smallest element of the unit orbit; identifies the point `gR`.
pub fn point_id(ring: &FiniteRing, g: &[Elem], side: Side) -> Word {
    ring.units()
        .iter()
        .map(|&u| scale(ring, side, u, g))
        .min()
        .expect("a ring has at least one unit")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPoint {
    pub orbit: Vec<Word>,
    pub point: Vec<Word>,
    pub id: Word,
}

/// `(g R^x, g R, canonical id)` for a nonzero `g` in the right module `R^k_R`.
pub fn orbit_and_point(ring: &FiniteRing, g: &[Elem]) -> Result<OrbitPoint> {
    if crate::module::is_zero(g) {
        return Err(Error::Precondition("orbit of the zero vector".into()));
    }
    let orbit = unit_orbit(ring, g, Side::Right);
    Ok(OrbitPoint {
        id: orbit[0].clone(),
        point: cyclic_module(ring, g, Side::Right),
        orbit,
    })
}

/// `(lhs, rhs)` of the ideal correlation identity
/// `sum_{x in I} w(x) w(xr + s)` for a nonzero left ideal `I`.
///
/// The right-hand side is `|I| + |I| (|R^x cap (1 + I^perp)| / |R^x|)(1 - w(s))`
/// when `x -> xr` is injective on `I` and `|I|` when it is not, except that a
/// zero image `Ir = {0}` gives `|I| w(s)`.
pub fn correlation_ideal(wt: &WeightTable, ideal: &[Elem], r: Elem, s: Elem) -> (Rational, Rational) {
    let ring = wt.ring();
    let lhs: i128 = ideal
        .iter()
        .map(|&x| wt.scaled(x) as i128 * wt.scaled(ring.add(ring.mul(x, r), s)) as i128)
        .sum();
    (wt.unscale2(lhs), correlation_ideal_rhs(wt, ideal, r, s))
}

pub(crate) fn correlation_ideal_rhs(wt: &WeightTable, ideal: &[Elem], r: Elem, s: Elem) -> Rational {
    let ring = wt.ring();
    let size = ideal.len() as i128;
    let mut image: Vec<Elem> = ideal.iter().map(|&x| ring.mul(x, r)).collect();
    image.sort_unstable();
    image.dedup();
    if image.len() == 1 {
        // Ir = {0}: every term is w(x) w(s)
        return int(size) * wt.whom(s);
    }
    if image.len() < ideal.len() {
        return int(size);
    }
    // I^perp = {y : I y = 0}
    let fixing = ring
        .units()
        .iter()
        .filter(|&&u| {
            let d = ring.sub(u, ring.one());
            ideal.iter().all(|&x| ring.mul(x, d) == 0)
        })
        .count() as i128;
    let units = ring.units().len() as i128;
    int(size) + int(size) * frac(fixing, units) * (one() - wt.whom(s))
}

/// Scaled (`/ denom^2`) left-hand sides of the vector correlation identity,
/// one per `s` in ring order.
pub(crate) fn correlation_vectors_scaled(wt: &WeightTable, g: &[Elem], h: &[Elem]) -> Vec<i128> {
    let ring = wt.ring();
    let q = ring.order();
    let k = g.len();
    let total = q.pow(k as u32);
    // joint distribution of (x.g, x.h)
    let mut joint = vec![0i64; q * q];
    for idx in 0..total {
        let x = word_at(ring, k, idx);
        let a = dot(ring, &x, g) as usize;
        let b = dot(ring, &x, h) as usize;
        joint[a * q + b] += 1;
    }
    ring.elements()
        .map(|s| {
            let mut acc = 0i128;
            for a in 0..q {
                let wa = wt.scaled(a as Elem) as i128;
                if wa == 0 {
                    continue;
                }
                for b in 0..q {
                    let n = joint[a * q + b];
                    if n != 0 {
                        acc += n as i128 * wa * wt.scaled(ring.add(b as Elem, s)) as i128;
                    }
                }
            }
            acc
        })
        .collect()
}

pub(crate) fn correlation_vectors_rhs(wt: &WeightTable, g: &[Elem], h: &[Elem], s: Elem) -> Rational {
    let ring = wt.ring();
    let total = int((ring.order() as i128).pow(g.len() as u32));
    let og = unit_orbit(ring, g, Side::Right);
    if og.binary_search_by(|e| e.as_slice().cmp(h)).is_ok() {
        total.clone() + total / int(og.len() as i128) * (one() - wt.whom(s))
    } else {
        total
    }
}

/// `(lhs, rhs)` of `sum_{x in R^k} w(x.g) w(x.h + s)` for nonzero `g`, `h`.
pub fn correlation_vectors(wt: &WeightTable, g: &[Elem], h: &[Elem], s: Elem) -> Result<(Rational, Rational)> {
    if g.len() != h.len() {
        return Err(Error::Dimension("g and h differ in length".into()));
    }
    if crate::module::is_zero(g) || crate::module::is_zero(h) {
        return Err(Error::Precondition("g and h must be nonzero".into()));
    }
    let lhs = correlation_vectors_scaled(wt, g, h)[s as usize];
    Ok((wt.unscale2(lhs), correlation_vectors_rhs(wt, g, h, s)))
}

/// The zero set, nonnegativity and `S_0`-translation invariance of `w`.
#[derive(Clone, Debug)]
pub struct ZeroSetCheck {
    pub passed: bool,
    pub s0: Vec<Elem>,
    pub witness: Option<String>,
}

pub fn verify_zero_set(wt: &WeightTable) -> ZeroSetCheck {
    let ring = wt.ring();
    let s0 = crate::module::order2_socle_part(ring).even_sums;
    let fail = |w: String| ZeroSetCheck {
        passed: false,
        s0: s0.clone(),
        witness: Some(w),
    };
    if let Some(x) = ring.elements().find(|&x| wt.scaled(x) < 0) {
        return fail(format!("w({}) < 0", ring.format_elem(x)));
    }
    let zeros: Vec<Elem> = ring.elements().filter(|&x| wt.scaled(x) == 0).collect();
    if zeros != s0 {
        return fail(format!(
            "zero set {:?} differs from S0 {:?}",
            zeros.iter().map(|&x| ring.format_elem(x)).collect::<Vec<_>>(),
            s0.iter().map(|&x| ring.format_elem(x)).collect::<Vec<_>>()
        ));
    }
    for x in ring.elements() {
        for &y in &s0 {
            if wt.scaled(ring.add(x, y)) != wt.scaled(x) {
                return fail(format!(
                    "w({} + {}) != w({})",
                    ring.format_elem(x),
                    ring.format_elem(y),
                    ring.format_elem(x)
                ));
            }
        }
    }
    ZeroSetCheck {
        passed: true,
        s0,
        witness: None,
    }
}

/// First `(ideal, c)` with `sum_{x in I} w(x + c) != |I|`, if any.
pub fn coset_sum_witness(wt: &WeightTable, ideal: &[Elem]) -> Option<Elem> {
    let ring = wt.ring();
    let target = ideal.len() as i64 * wt.denom();
    ring.elements().find(|&c| {
        ideal.iter().map(|&x| wt.scaled(ring.add(x, c))).sum::<i64>() != target
    })
}

/// `sum_{x in I} w(x + c) = |I|` for every nonzero principal left and right
/// ideal `I` and every `c`.
pub fn verify_coset_sum(wt: &WeightTable) -> bool {
    let ring = wt.ring();
    [Side::Left, Side::Right].into_iter().all(|side| {
        ring.elements().skip(1).all(|x| {
            let ideal = principal_ideal_set(ring, x, side);
            coset_sum_witness(wt, &ideal).is_none()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn table(s: &str) -> WeightTable {
        WeightTable::new(Arc::new(build_ring(&s.parse().unwrap()).unwrap())).unwrap()
    }

    /// Floating-point evaluation of the defining character sum.
    fn whom_float(ring: &FiniteRing, x: Elem) -> f64 {
        let e = ring.additive_exponent() as f64;
        let s: f64 = ring
            .units()
            .iter()
            .map(|&u| {
                let c = ring.character().exponent(ring.mul(u, x)) as f64;
                (2.0 * std::f64::consts::PI * c / e).cos()
            })
            .sum();
        1.0 - s / ring.units().len() as f64
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(2), vec![1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
        // Phi_105 is the first with a coefficient of absolute value 2
        assert!(cyclotomic(105).iter().any(|&c| c == -2));
        assert_eq!(cyclotomic(105).len(), 49);
    }

    #[test]
    fn reduce() {
        // t^4 = 1 mod t^2 + 1
        assert_eq!(reduce_mod(&[0, 0, 0, 0, 1], &[1, 0, 1]), vec![1]);
        assert_eq!(reduce_mod(&[1, 1, 1, 1], &[1, 0, 1]), vec![0]);
    }

    #[test]
    fn lee_on_z4() {
        let wt = table("Z4");
        assert_eq!(wt.all(), vec![int(0), int(1), int(2), int(1)]);
    }

    #[test]
    fn scaled_hamming_on_fields() {
        for (s, q) in [("GF(2)", 2), ("GF(3)", 3), ("GF(2^2)", 4), ("GF(5)", 5), ("GF(2^3)", 8), ("GF(3^2)", 9)] {
            let wt = table(s);
            assert_eq!(wt.whom(0), int(0));
            for x in wt.ring().elements().skip(1) {
                assert_eq!(wt.whom(x), frac(q, q - 1), "{s}");
            }
        }
    }

    #[test]
    fn matrix_ring_weights() {
        let wt = table("M2(GF(2))");
        let ring = wt.ring();
        for x in ring.elements().skip(1) {
            let expected = if ring.is_unit(x) { frac(2, 3) } else { frac(4, 3) };
            assert_eq!(wt.whom(x), expected);
            assert!((whom_float(ring, x) - crate::rational::to_f64(&expected)).abs() < 1e-12);
        }
    }

    #[test]
    fn direct_matches_table_and_float() {
        for s in ["Z4", "Z6", "Z8", "Z9", "Z12", "prod(Z2,Z2)", "prod(Z2,Z3)", "GF(2^2)", "M2(GF(2))", "prod(Z4,GF(3))"] {
            let wt = table(s);
            let ring = wt.ring();
            for x in ring.elements() {
                let w = whom(ring, x).unwrap();
                assert_eq!(w, wt.whom(x));
                assert!((whom_float(ring, x) - crate::rational::to_f64(&w)).abs() < 1e-9, "{s} {x}");
            }
        }
    }

    #[test]
    fn words() {
        let wt = table("Z4");
        assert_eq!(wt.whom_word(&[0, 0, 0]), int(0));
        assert_eq!(wt.whom_word(&[1, 2, 3]), int(4));
        let wt = table("GF(3)");
        assert_eq!(wt.whom_word(&[1, 1]), int(3));
    }

    #[test]
    fn semisimple_formula() {
        assert_eq!(whom_semisimple(&[(2, 2), (3, 1)], &[0, 0]).unwrap(), int(0));
        assert_eq!(whom_semisimple(&[(2, 2)], &[1]).unwrap(), frac(4, 3));
        assert_eq!(whom_semisimple(&[(2, 1), (2, 1)], &[1, 1]).unwrap(), int(0));
        assert_eq!(whom_semisimple(&[(2, 2)], &[2]).unwrap(), frac(2, 3));
        assert!(matches!(
            whom_semisimple(&[(2, 2)], &[3]),
            Err(Error::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn zero_sets() {
        let c = verify_zero_set(&table("Z4"));
        assert!(c.passed);
        assert_eq!(c.s0, vec![0]);
        let wt = table("prod(Z2,Z2)");
        let c = verify_zero_set(&wt);
        assert!(c.passed);
        assert_eq!(c.s0.len(), 2);
        assert!(verify_zero_set(&table("Z9")).passed);
    }

    #[test]
    fn coset_sums() {
        let wt = table("Z4");
        // I = {0, 2}, c = 1
        assert_eq!(wt.whom(1) + wt.whom(3), int(2));
        assert!(verify_coset_sum(&wt));
        assert!(verify_coset_sum(&table("M2(GF(2))")));
        let broken = wt.with_fault(1, 1);
        assert!(!verify_coset_sum(&broken));
    }

    #[test]
    fn correlation_examples() {
        let wt = table("Z4");
        let all: Vec<Elem> = wt.ring().elements().collect();
        // Ir = {0}: the sum is |I| w(s)
        let (l, r) = correlation_ideal(&wt, &all, 0, 0);
        assert_eq!((l, r), (int(0), int(0)));
        let (l, r) = correlation_ideal(&wt, &all, 0, 2);
        assert_eq!((l, r), (int(8), int(8)));
        // Ir = {0,2} != {0}: the shrinking branch gives |I|
        let (l, r) = correlation_ideal(&wt, &all, 2, 0);
        assert_eq!((l, r), (int(4), int(4)));
        let (l, r) = correlation_ideal(&wt, &all, 1, 0);
        assert_eq!(l, int(6));
        assert_eq!(r, int(6));

        let wt = table("GF(2)");
        let (l, r) = correlation_vectors(&wt, &[1], &[1], 0).unwrap();
        assert_eq!((l, r), (int(4), int(4)));

        let wt = table("Z4");
        let (l, r) = correlation_vectors(&wt, &[1, 0], &[0, 1], 0).unwrap();
        assert_eq!((l, r), (int(16), int(16)));
        // w(1) = 1 kills the correction term
        let (l, r) = correlation_vectors(&wt, &[1, 0], &[3, 0], 1).unwrap();
        assert_eq!((l, r), (int(16), int(16)));
        assert!(correlation_vectors(&wt, &[0, 0], &[1, 0], 0).is_err());
    }

    #[test]
    fn orbits() {
        let r = build_ring(&"Z4".parse().unwrap()).unwrap();
        let op = orbit_and_point(&r, &[1, 0]).unwrap();
        assert_eq!(op.orbit, vec![vec![1, 0], vec![3, 0]]);
        assert_eq!(op.point.len(), 4);
        assert_eq!(op.id, vec![1, 0]);
        let r = build_ring(&"GF(3)".parse().unwrap()).unwrap();
        let op = orbit_and_point(&r, &[1, 0]).unwrap();
        assert_eq!(op.orbit, vec![vec![1, 0], vec![2, 0]]);
        assert_eq!(op.point, vec![vec![0, 0], vec![1, 0], vec![2, 0]]);
        assert!(orbit_and_point(&r, &[0, 0]).is_err());
    }

    #[test]
    fn orbit_iff_point() {
        for s in ["Z4", "GF(3)", "prod(Z2,Z2)"] {
            let r = build_ring(&s.parse().unwrap()).unwrap();
            let vs: Vec<Word> = (1..r.order().pow(2)).map(|i| word_at(&r, 2, i)).collect();
            for g in &vs {
                let a = orbit_and_point(&r, g).unwrap();
                for h in &vs {
                    let b = orbit_and_point(&r, h).unwrap();
                    assert_eq!(a.orbit == b.orbit, a.point == b.point, "{s} {g:?} {h:?}");
                }
            }
        }
    }
}
