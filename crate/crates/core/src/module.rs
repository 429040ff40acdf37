//! Submodules of `R^n`: spans, annihilators, principal ideals and the
//! order-2 socle part.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

pub type Word = Vec<Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

pub fn add_vec(ring: &FiniteRing, a: &[Elem], b: &[Elem]) -> Word {
    a.iter().zip(b).map(|(&x, &y)| ring.add(x, y)).collect()
}

pub fn sub_vec(ring: &FiniteRing, a: &[Elem], b: &[Elem]) -> Word {
    a.iter().zip(b).map(|(&x, &y)| ring.sub(x, y)).collect()
}

pub fn neg_vec(ring: &FiniteRing, a: &[Elem]) -> Word {
    a.iter().map(|&x| ring.neg(x)).collect()
}

/// `r v` for `Side::Left`, `v r` for `Side::Right`.
pub fn scale(ring: &FiniteRing, side: Side, r: Elem, v: &[Elem]) -> Word {
    match side {
        Side::Left => v.iter().map(|&x| ring.mul(r, x)).collect(),
        Side::Right => v.iter().map(|&x| ring.mul(x, r)).collect(),
    }
}

/// `x . y = x_1 y_1 + ... + x_n y_n`.
pub fn dot(ring: &FiniteRing, x: &[Elem], y: &[Elem]) -> Elem {
    x.iter()
        .zip(y)
        .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

pub fn is_zero(v: &[Elem]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `|R|^n`, or `None` on overflow.
pub fn ambient_size(ring: &FiniteRing, n: usize) -> Option<u128> {
    (ring.order() as u128).checked_pow(n as u32)
}

pub fn check_enumeration(ring: &FiniteRing, n: usize, cap: usize) -> Result<usize> {
    match ambient_size(ring, n) {
        Some(s) if s <= cap as u128 => Ok(s as usize),
        s => Err(Error::EnumerationCap {
            size: s.unwrap_or(u128::MAX),
            cap,
        }),
    }
}

/// The `idx`-th vector of `R^n` in lexicographic order.
pub fn word_at(ring: &FiniteRing, n: usize, idx: usize) -> Word {
    let q = ring.order();
    let mut t = idx;
    let mut w = vec![0; n];
    for i in (0..n).rev() {
        w[i] = (t % q) as Elem;
        t /= q;
    }
    w
}

pub fn word_index(ring: &FiniteRing, w: &[Elem]) -> usize {
    let q = ring.order();
    w.iter().fold(0, |acc, &c| acc * q + c as usize)
}

/// A submodule of `R^n` together with its enumerated elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingModuleSpan {
    pub dim: usize,
    pub side: Side,
    pub generators: Vec<Word>,
    elements: Vec<Word>,
}

impl RingModuleSpan {
    /// Elements in lexicographic order.
    pub fn elements(&self) -> &[Word] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(v)).is_ok()
    }

    /// For `dim == 1`: the elements as ring elements.
    pub fn scalars(&self) -> Vec<Elem> {
        self.elements.iter().map(|w| w[0]).collect()
    }

    /// Closed under addition and the side's scalar action, and contains zero.
    pub fn is_closed(&self, ring: &FiniteRing) -> bool {
        self.contains(&vec![0; self.dim])
            && self.elements.iter().all(|a| {
                self.elements.iter().all(|b| self.contains(&add_vec(ring, a, b)))
                    && ring.elements().all(|r| self.contains(&scale(ring, self.side, r, a)))
            })
    }
}

/// Closure of `generators` under addition and `side` scalar multiplication.
pub fn span(ring: &FiniteRing, generators: &[Word], dim: usize, side: Side) -> RingModuleSpan {
    let elements = span_set(ring, generators, dim, side);
    RingModuleSpan {
        dim,
        side,
        generators: generators.to_vec(),
        elements,
    }
}

/// Sorted element list of the span, built one generator at a time as
/// `S <- S + R g`.
pub fn span_set(ring: &FiniteRing, generators: &[Word], dim: usize, side: Side) -> Vec<Word> {
    let mut set: HashSet<Word> = HashSet::new();
    set.insert(vec![0; dim]);
    for g in generators {
        assert_eq!(g.len(), dim, "generator length must equal the ambient dimension");
        let multiples: HashSet<Word> = ring.elements().map(|r| scale(ring, side, r, g)).collect();
        if multiples.iter().all(|m| set.contains(m)) {
            continue;
        }
        let mut next = HashSet::with_capacity(set.len() * multiples.len());
        for s in &set {
            for m in &multiples {
                next.insert(add_vec(ring, s, m));
            }
        }
        set = next;
    }
    let mut v: Vec<Word> = set.into_iter().collect();
    v.sort_unstable();
    v
}

/// `Rx` (left) or `xR` (right).
pub fn principal_ideal(ring: &FiniteRing, x: Elem, side: Side) -> RingModuleSpan {
    span(ring, &[vec![x]], 1, side)
}

/// Elements of `Rx` / `xR` as a sorted, deduplicated list.
pub fn principal_ideal_set(ring: &FiniteRing, x: Elem, side: Side) -> Vec<Elem> {
    let set: BTreeSet<Elem> = ring
        .elements()
        .map(|r| match side {
            Side::Left => ring.mul(r, x),
            Side::Right => ring.mul(x, r),
        })
        .collect();
    set.into_iter().collect()
}

/// Distinct nonzero principal ideals on one side, each as a sorted element list.
pub fn principal_ideals(ring: &FiniteRing, side: Side) -> Vec<Vec<Elem>> {
    let set: BTreeSet<Vec<Elem>> = ring
        .elements()
        .skip(1)
        .map(|x| principal_ideal_set(ring, x, side))
        .collect();
    set.into_iter().collect()
}

/// The generators `s_1..s_tau` of the left ideals of order 2 and the set `S_0`
/// of sums of an even number of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderTwoSocle {
    pub generators: Vec<Elem>,
    pub even_sums: Vec<Elem>,
}

pub fn order2_socle_part(ring: &FiniteRing) -> OrderTwoSocle {
    let generators: Vec<Elem> = ring
        .elements()
        .skip(1)
        .filter(|&x| {
            ring.elements().all(|r| {
                let y = ring.mul(r, x);
                y == 0 || y == x
            })
        })
        .collect();
    let tau = generators.len();
    assert!(tau < 24, "too many order-2 ideals");
    let mut even: BTreeSet<Elem> = BTreeSet::new();
    for mask in 0u32..(1 << tau) {
        if mask.count_ones() % 2 == 0 {
            let s = generators
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .fold(0, |acc, (_, &g)| ring.add(acc, g));
            even.insert(s);
        }
    }
    OrderTwoSocle {
        generators,
        even_sums: even.into_iter().collect(),
    }
}

/// Sum of the minimal left ideals, computed from the minimal principal left ideals.
pub fn left_socle(ring: &FiniteRing) -> Vec<Elem> {
    let ideals = principal_ideals(ring, Side::Left);
    let minimal: Vec<&Vec<Elem>> = ideals
        .iter()
        .filter(|i| {
            i.iter()
                .filter(|&&y| y != 0)
                .all(|&y| principal_ideal_set(ring, y, Side::Left).len() == i.len())
        })
        .collect();
    let gens: Vec<Word> = minimal
        .iter()
        .flat_map(|i| i.iter().filter(|&&y| y != 0).map(|&y| vec![y]))
        .collect();
    span_set(ring, &gens, 1, Side::Left)
        .into_iter()
        .map(|w| w[0])
        .collect()
}

/// `(|left row space|, |right column space|, equal)` of a matrix given by rows.
pub fn check_row_column_cardinality(ring: &FiniteRing, rows: &[Word]) -> (usize, usize, bool) {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let columns: Vec<Word> = (0..n).map(|j| rows.iter().map(|r| r[j]).collect()).collect();
    let row_space = span_set(ring, rows, n, Side::Left).len();
    let col_space = span_set(ring, &columns, m, Side::Right).len();
    (row_space, col_space, row_space == col_space)
}

/// `Side::Left`: `{x : x . s = 0 for all s}`; `Side::Right`: `{x : s . x = 0}`.
pub fn annihilator(
    ring: &FiniteRing,
    set: &[Word],
    dim: usize,
    side: Side,
    cap: usize,
) -> Result<RingModuleSpan> {
    let total = check_enumeration(ring, dim, cap)?;
    let elements: Vec<Word> = crate::exec::map_range(total, |idx| {
        let x = word_at(ring, dim, idx);
        let ok = set.iter().all(|s| {
            let d = match side {
                Side::Left => dot(ring, &x, s),
                Side::Right => dot(ring, s, &x),
            };
            d == 0
        });
        ok.then_some(x)
    })
    .into_iter()
    .flatten()
    .collect();
    Ok(RingModuleSpan {
        dim,
        side,
        generators: elements.clone(),
        elements,
    })
}

/// Every submodule of `R^dim` on one side, found by growing spans one vector
/// at a time from `{0}`. Stops after `limit` submodules.
pub fn enumerate_submodules(
    ring: &FiniteRing,
    dim: usize,
    side: Side,
    cap: usize,
    limit: usize,
) -> Result<Vec<RingModuleSpan>> {
    let total = check_enumeration(ring, dim, cap)?;
    let vectors: Vec<Word> = (0..total).map(|i| word_at(ring, dim, i)).collect();
    let mut seen: HashSet<Vec<Word>> = HashSet::new();
    let zero = span(ring, &[], dim, side);
    seen.insert(zero.elements.clone());
    let mut frontier = vec![zero];
    let mut out = Vec::new();
    while let Some(m) = frontier.pop() {
        for v in &vectors {
            if m.contains(v) {
                continue;
            }
            let mut gens = m.generators.clone();
            gens.push(v.clone());
            let elements = span_set(ring, &gens, dim, side);
            if seen.insert(elements.clone()) {
                frontier.push(RingModuleSpan {
                    dim,
                    side,
                    generators: gens,
                    elements,
                });
            }
        }
        out.push(m);
        if out.len() >= limit {
            break;
        }
    }
    out.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn principal_ideals_z4() {
        let r = ring("Z4");
        assert_eq!(principal_ideal(&r, 2, Side::Left).scalars(), vec![0, 2]);
        assert_eq!(principal_ideal(&r, 3, Side::Left).scalars(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn principal_ideal_matrix_first_column() {
        let r = ring("M2(GF(2))");
        let e11 = r.parse_elem("[1,0;0,0]").unwrap();
        let left = principal_ideal(&r, e11, Side::Left);
        // brute force: r E11 over all 16 r
        let mut expected: Vec<Elem> = r.elements().map(|x| r.mul(x, e11)).collect();
        expected.sort();
        expected.dedup();
        assert_eq!(left.scalars(), expected);
        assert_eq!(left.len(), 4);
        for x in left.scalars() {
            let e = r.entries(x).unwrap();
            assert_eq!((e[1], e[3]), (0, 0), "left multiples of E11 live in the first column");
        }
    }

    #[test]
    fn socle_two_part() {
        let r = ring("Z4");
        let s = order2_socle_part(&r);
        assert_eq!(s.generators, vec![2]);
        assert_eq!(s.even_sums, vec![0]);

        let r = ring("prod(Z2,Z2)");
        let s = order2_socle_part(&r);
        let names: Vec<String> = s.generators.iter().map(|&x| r.format_elem(x)).collect();
        assert_eq!(names, vec!["(0,1)", "(1,0)"]);
        let evens: Vec<String> = s.even_sums.iter().map(|&x| r.format_elem(x)).collect();
        assert_eq!(evens, vec!["(0,0)", "(1,1)"]);

        let s = order2_socle_part(&ring("GF(3)"));
        assert!(s.generators.is_empty());
        assert_eq!(s.even_sums, vec![0]);

        let r = ring("prod(Z2,Z2,Z4)");
        let s = order2_socle_part(&r);
        assert_eq!(s.generators.len(), 3);
        assert_eq!(s.even_sums.len(), 4);
    }

    #[test]
    fn spans() {
        let r = ring("Z4");
        assert_eq!(span(&r, &[vec![1, 0], vec![0, 1]], 2, Side::Left).len(), 16);
        let s = span(&r, &[vec![2, 2]], 2, Side::Left);
        assert_eq!(s.elements(), &[vec![0, 0], vec![2, 2]]);
        assert!(s.is_closed(&r));
        let m = ring("M2(GF(2))");
        let id = vec![vec![m.one(), 0], vec![0, m.one()]];
        assert_eq!(check_row_column_cardinality(&m, &id), (256, 256, true));
    }

    #[test]
    fn row_column_examples() {
        let r = ring("Z4");
        assert_eq!(check_row_column_cardinality(&r, &[vec![1, 0], vec![0, 1]]), (16, 16, true));
        assert_eq!(check_row_column_cardinality(&r, &[vec![2, 0], vec![0, 0]]), (2, 2, true));
    }

    #[test]
    fn annihilators() {
        let r = ring("Z4");
        let all = annihilator(&r, &[vec![0, 0]], 2, Side::Left, 1 << 20).unwrap();
        assert_eq!(all.len(), 16);
        let a = annihilator(&r, &[vec![2]], 1, Side::Right, 1 << 20).unwrap();
        assert_eq!(a.scalars(), vec![0, 2]);
    }

    #[test]
    fn frobenius_duality_exhaustive() {
        for (s, n) in [("Z4", 2), ("GF(3^2)", 2), ("M2(GF(2))", 1), ("prod(Z2,Z2)", 2)] {
            let r = ring(s);
            let subs = enumerate_submodules(&r, n, Side::Left, 1 << 20, 10_000).unwrap();
            assert!(subs.len() >= 3, "{s}");
            let total = r.order().pow(n as u32);
            for c in &subs {
                assert!(c.is_closed(&r));
                let perp = annihilator(&r, c.elements(), n, Side::Right, 1 << 20).unwrap();
                assert_eq!(c.len() * perp.len(), total, "{s} {:?}", c.generators);
            }
        }
    }

    #[test]
    fn submodule_counts() {
        // Z_4^2 has 15 submodules, F_9^2 has 1 + 10 + 1
        let r = ring("Z4");
        assert_eq!(enumerate_submodules(&r, 2, Side::Left, 1 << 20, 1000).unwrap().len(), 15);
        let r = ring("GF(3^2)");
        assert_eq!(enumerate_submodules(&r, 2, Side::Left, 1 << 20, 1000).unwrap().len(), 12);
    }

    #[test]
    fn socles() {
        assert_eq!(left_socle(&ring("Z4")), vec![0, 2]);
        assert_eq!(left_socle(&ring("Z9")), vec![0, 3, 6]);
        assert_eq!(left_socle(&ring("Z6")).len(), 6);
        assert_eq!(left_socle(&ring("Z8")), vec![0, 4]);
        assert_eq!(left_socle(&ring("M2(GF(2))")).len(), 16);
    }
}
