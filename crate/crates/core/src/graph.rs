//! Coset graphs of two-weight codes, strongly regular parameters and partial
//! difference sets.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::code::{is_submodule_with_zero, support_set, two_weight_profile, LinearCode, TwoWeightProfile};
use crate::error::{Error, Result};
use crate::module::{add_vec, scale, span_set, sub_vec, Word};
use crate::rational::{int, to_i128, Rational};
use crate::ring::FiniteRing;

/// Dense simple graph with bitset rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let stride = n.div_ceil(64).max(1);
        Graph {
            n,
            stride,
            bits: vec![0; n * stride],
        }
    }

    /// Graph on `0..n` with `a ~ b` iff `adjacent(a, b)` (evaluated for `a < b`).
    pub fn from_fn(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync + Send) -> Self {
        let rows: Vec<Vec<usize>> =
            crate::exec::map_range(n, |a| ((a + 1)..n).filter(|&b| adjacent(a, b)).collect());
        let mut g = Graph::empty(n);
        for (a, row) in rows.into_iter().enumerate() {
            for b in row {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "loops are not allowed");
        self.bits[a * self.stride + b / 64] |= 1 << (b % 64);
        self.bits[b * self.stride + a / 64] |= 1 << (a % 64);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.bits[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    fn row(&self, a: usize) -> &[u64] {
        &self.bits[a * self.stride..(a + 1) * self.stride]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn common_neighbours(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|a| self.degree(a)).sum::<usize>() / 2
    }

    pub fn neighbours(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&b| self.adjacent(a, b))
    }

    /// DOT text with one labelled node per vertex.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut s = String::from("graph G {\n");
        for (i, l) in labels.iter().enumerate() {
            let _ = writeln!(s, "  {i} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                if self.adjacent(a, b) {
                    let _ = writeln!(s, "  {a} -- {b};");
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgParams {
    pub n: i64,
    pub k: i64,
    pub lambda: i64,
    pub mu: i64,
    pub trivial: bool,
}

impl SrgParams {
    /// `K(K - lambda - 1) = (N - K - 1) mu`.
    pub fn feasible(&self) -> bool {
        self.k * (self.k - self.lambda - 1) == (self.n - self.k - 1) * self.mu
    }

    pub fn tuple(&self) -> (i64, i64, i64, i64) {
        (self.n, self.k, self.lambda, self.mu)
    }
}

/// Measured parameters, or `None` if the graph is not strongly regular.
///
/// Graphs without adjacent pairs report `lambda = 0`; graphs without
/// non-adjacent pairs (complete graphs) report `mu = 0`. `trivial` is
/// `mu == 0 || mu == K`.
pub fn measure_srg(g: &Graph) -> Option<SrgParams> {
    let n = g.order();
    if n == 0 {
        return None;
    }
    let k = g.degree(0);
    if (1..n).any(|a| g.degree(a) != k) {
        return None;
    }
    // per row: (lambda seen, mu seen), None on an internal mismatch
    let rows: Vec<Option<(Option<usize>, Option<usize>)>> = crate::exec::map_range(n, |a| {
        let (mut lam, mut mu) = (None, None);
        for b in (a + 1)..n {
            let c = g.common_neighbours(a, b);
            let slot = if g.adjacent(a, b) { &mut lam } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(v) if v == c => {}
                Some(_) => return None,
            }
        }
        Some((lam, mu))
    });
    let (mut lam, mut mu) = (None, None);
    for row in rows {
        let (l, m) = row?;
        for (acc, v) in [(&mut lam, l), (&mut mu, m)] {
            match (*acc, v) {
                (_, None) => {}
                (None, Some(x)) => *acc = Some(x),
                (Some(a), Some(b)) if a == b => {}
                _ => return None,
            }
        }
    }
    let (lambda, mu) = (lam.unwrap_or(0) as i64, mu.unwrap_or(0) as i64);
    let k = k as i64;
    Some(SrgParams {
        n: n as i64,
        k,
        lambda,
        mu,
        trivial: mu == 0 || mu == k,
    })
}

fn integral(name: &'static str, q: &Rational) -> Result<i64> {
    to_i128(q)
        .map(|v| v as i64)
        .ok_or_else(|| Error::NonInteger {
            name,
            value: q.to_string(),
        })
}

/// Closed-form parameters of `Gamma(C)` for a modular two-weight code.
pub fn predicted_srg(p: &TwoWeightProfile) -> Result<SrgParams> {
    p.modular_index()?;
    let n = p.n_q();
    if p.w2 == n {
        return Err(Error::Inconsistent("w2 = n cannot occur for a two-weight code".into()));
    }
    let big_n = int(p.size as i128) / int(p.size0 as i128);
    let dw = &p.w2 - &p.w1;
    let k = ((&p.w2 - &n) * &big_n - &p.w2) / &dw;
    let lambda = (&k * (&p.w1 * &p.w1 / &n - int(2) * &p.w1) + &p.w2 * (&k - int(1))) / &dw;
    let mu = &k * (&p.w1 * &p.w2 / &n - &p.w1) / &dw;
    let params = SrgParams {
        n: integral("N", &big_n)?,
        k: integral("K", &k)?,
        lambda: integral("lambda", &lambda)?,
        mu: integral("mu", &mu)?,
        trivial: p.w1 == n,
    };
    if params.lambda < 0 || params.mu < 0 || params.k < 0 {
        return Err(Error::Inconsistent(format!("negative parameter in {:?}", params.tuple())));
    }
    if params.trivial != (params.mu == params.k) {
        return Err(Error::Inconsistent("triviality criterion disagrees with mu = K".into()));
    }
    Ok(params)
}

/// `Gamma(C)`: vertices are the cosets of `C_0`, adjacent iff the difference has weight `w1`.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    /// Smallest codeword of each coset, in lexicographic order.
    pub vertices: Vec<Word>,
    pub graph: Graph,
}

impl CosetGraph {
    pub fn labels(&self, ring: &FiniteRing) -> Vec<String> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|&x| ring.format_elem(x)).collect::<Vec<_>>().join(" "))
            .collect()
    }
}

pub fn build_gamma(code: &LinearCode) -> Result<CosetGraph> {
    let p = two_weight_profile(code)?.ok_or(Error::NotTwoWeight)?;
    let ring = code.ring();
    let wt = code.weights();
    let zeros: Vec<&Word> = code.zero_class().iter().map(|&i| &code.codewords()[i]).collect();
    // w(c + z) = w(c) for z in C_0 makes adjacency independent of representatives
    let bad = crate::exec::find_first(code.size(), |i| {
        let c = &code.codewords()[i];
        zeros
            .iter()
            .find(|z| wt.word_scaled(&add_vec(ring, c, z)) != code.scaled_weight(i))
            .map(|_| i)
    });
    if let Some(i) = bad {
        return Err(Error::Inconsistent(format!(
            "weight of codeword {i} changes under translation by C_0"
        )));
    }
    let mut vertices: Vec<Word> = code
        .codewords()
        .iter()
        .map(|c| zeros.iter().map(|z| add_vec(ring, c, z)).min().expect("C_0 contains zero"))
        .collect();
    vertices.sort_unstable();
    vertices.dedup();
    let w1 = scaled_of(code, &p.w1);
    let graph = Graph::from_fn(vertices.len(), |a, b| {
        wt.word_scaled(&sub_vec(ring, &vertices[a], &vertices[b])) == w1
    });
    Ok(CosetGraph { vertices, graph })
}

fn scaled_of(code: &LinearCode, w: &Rational) -> i64 {
    let v = w * int(code.weights().denom() as i128);
    to_i128(&v).expect("weights have the table's denominator") as i64
}

/// For `w1 = n`: the codewords of weight 0 and `w2` form a subcode whose
/// `C_0`-cosets are the cocliques of `Gamma(C)` (and the graph is complete
/// multipartite on them).
pub fn coclique_structure(code: &LinearCode) -> Result<bool> {
    let p = two_weight_profile(code)?.ok_or(Error::NotTwoWeight)?;
    if !p.trivial_graph() {
        return Err(Error::Precondition("coclique structure needs w1 = n".into()));
    }
    let ring = code.ring();
    let w1 = scaled_of(code, &p.w1);
    let sub: Vec<&Word> = (0..code.size())
        .filter(|&i| code.scaled_weight(i) != w1)
        .map(|i| &code.codewords()[i])
        .collect();
    let in_sub = |w: &Word| code.position(w).is_some_and(|i| code.scaled_weight(i) != w1);
    let closed = sub.iter().all(|a| sub.iter().all(|b| in_sub(&add_vec(ring, a, b))))
        && sub.iter().all(|a| ring.elements().all(|r| in_sub(&scale(ring, code.side(), r, a))));
    if !closed {
        return Ok(false);
    }
    let gamma = build_gamma(code)?;
    let vs = &gamma.vertices;
    // class of a vertex = smallest element of v + H
    let class: Vec<Word> = vs
        .iter()
        .map(|v| sub.iter().map(|h| add_vec(ring, v, h)).min().expect("H contains zero"))
        .collect();
    let n = vs.len();
    Ok((0..n).all(|a| {
        ((a + 1)..n).all(|b| gamma.graph.adjacent(a, b) == (class[a] != class[b]))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdsCertificate {
    pub group_order: usize,
    pub size: usize,
    pub lambda: usize,
    pub mu: usize,
    pub regular: bool,
}

impl PdsCertificate {
    pub fn srg_tuple(&self) -> (i64, i64, i64, i64) {
        (self.group_order as i64, self.size as i64, self.lambda as i64, self.mu as i64)
    }
}

/// Checks that `d` is a regular partial difference set in the additive group
/// with element set `group`. Returns `None` for empty `d`, `0 in d`,
/// `-d != d`, or non-constant difference counts. With no element outside
/// `d + {0}`, `mu` is reported as 0.
pub fn pds_check(ring: &FiniteRing, group: &[Word], d: &[Word]) -> Option<PdsCertificate> {
    if d.is_empty() {
        return None;
    }
    let index: HashMap<&Word, usize> = group.iter().enumerate().map(|(i, g)| (g, i)).collect();
    let zero = vec![0; d[0].len()];
    if d.contains(&zero) {
        return None;
    }
    let in_d: HashMap<&Word, ()> = d.iter().map(|x| (x, ())).collect();
    if d.iter().any(|x| !index.contains_key(x)) {
        return None;
    }
    if d.iter().any(|x| !in_d.contains_key(&crate::module::neg_vec(ring, x))) {
        return None;
    }
    let mut counts = vec![0usize; group.len()];
    for a in d {
        for b in d {
            if a != b {
                let diff = sub_vec(ring, a, b);
                counts[*index.get(&diff)?] += 1;
            }
        }
    }
    let (mut lambda, mut mu) = (None, None);
    for (g, &c) in group.iter().zip(&counts) {
        if *g == zero {
            continue;
        }
        let slot = if in_d.contains_key(g) { &mut lambda } else { &mut mu };
        match *slot {
            None => *slot = Some(c),
            Some(v) if v == c => {}
            Some(_) => return None,
        }
    }
    Some(PdsCertificate {
        group_order: group.len(),
        size: d.len(),
        lambda: lambda.unwrap_or(0),
        mu: mu.unwrap_or(0),
        regular: true,
    })
}

/// Cayley graph `Gamma(G, D)`: `x ~ y` iff `x - y` lies in `D`.
pub fn cayley_graph(ring: &FiniteRing, group: &[Word], d: &[Word]) -> Graph {
    let mut dset: Vec<&Word> = d.iter().collect();
    dset.sort_unstable();
    Graph::from_fn(group.len(), |a, b| {
        dset.binary_search(&&sub_vec(ring, &group[a], &group[b])).is_ok()
    })
}

/// Both sides of the code / partial difference set equivalence, plus the
/// submodule criteria for one-weight and `w1 = n` codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub column_space_size: usize,
    pub omega_size: usize,
    pub two_weight: bool,
    pub one_weight: bool,
    pub pds: Option<PdsCertificate>,
    pub omega_submodule: bool,
    pub condition_ii: bool,
    pub agree: bool,
    pub complement_submodule: bool,
    pub one_weight_criterion: bool,
    pub trivial_criterion: bool,
    /// PDS parameters equal the measured parameters of the Cayley graph.
    pub cayley_consistent: Option<bool>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.agree
            && self.one_weight_criterion
            && self.trivial_criterion
            && self.cayley_consistent != Some(false)
    }
}

pub fn equivalence_check(code: &LinearCode) -> Result<EquivalenceReport> {
    if crate::code::modular_index(code).is_none() {
        return Err(Error::NotModular);
    }
    if code.zero_class().len() != 1 {
        return Err(Error::Precondition("C_0 must be {0}".into()));
    }
    let ring = code.ring();
    let side = code.point_side();
    let column_space = span_set(ring, code.generators(), code.k(), side);
    let omega = support_set(code);
    let profile = two_weight_profile(code)?;
    let hist = crate::code::weight_distribution(code);
    let one_weight = hist.keys().filter(|w| **w != int(0)).count() == 1;
    let two_weight = profile.is_some();
    let pds = pds_check(ring, &column_space, &omega);
    let omega_submodule = is_submodule_with_zero(ring, &omega, side);
    let condition_ii = pds.is_some() && !omega_submodule;
    let complement: Vec<Word> = column_space
        .iter()
        .filter(|v| omega.binary_search(v).is_err())
        .cloned()
        .collect();
    let complement_submodule = is_submodule_with_zero(ring, &complement, side);
    let trivial_two_weight = profile.as_ref().is_some_and(|p| p.trivial_graph());
    let cayley_consistent = pds.as_ref().map(|cert| {
        measure_srg(&cayley_graph(ring, &column_space, &omega))
            .is_some_and(|m| m.tuple() == cert.srg_tuple())
    });
    Ok(EquivalenceReport {
        column_space_size: column_space.len(),
        omega_size: omega.len(),
        two_weight,
        one_weight,
        pds,
        omega_submodule,
        condition_ii,
        agree: two_weight == condition_ii,
        complement_submodule,
        one_weight_criterion: omega_submodule == one_weight,
        // the complement criterion is a statement about two-weight codes only
        trivial_criterion: !two_weight || complement_submodule == trivial_two_weight,
        cayley_consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, DEFAULT_ENUM_CAP};
    use crate::module::word_at;
    use crate::ring::build_ring;
    use crate::weight::WeightTable;
    use std::sync::Arc;

    fn code(s: &str, rows: &[&[u16]]) -> LinearCode {
        let wt = Arc::new(WeightTable::new(Arc::new(build_ring(&s.parse().unwrap()).unwrap())).unwrap());
        let rows: Vec<Word> = rows.iter().map(|r| r.to_vec()).collect();
        build_code(&wt, &rows, DEFAULT_ENUM_CAP).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_fn(n, |a, b| (b - a) % n == 1 || (a + n - b) % n == 1)
    }

    #[test]
    fn measure_small_graphs() {
        let k4 = Graph::from_fn(4, |_, _| true);
        let p = measure_srg(&k4).unwrap();
        assert_eq!(p.tuple(), (4, 3, 2, 0));
        assert!(p.trivial && p.feasible());
        let c4 = measure_srg(&cycle(4)).unwrap();
        assert_eq!(c4.tuple(), (4, 2, 0, 2));
        assert!(c4.trivial && c4.feasible());
        let p3 = Graph::from_fn(3, |a, b| b == a + 1);
        assert!(measure_srg(&p3).is_none());
        let c5 = measure_srg(&cycle(5)).unwrap();
        assert_eq!(c5.tuple(), (5, 2, 0, 1));
        assert!(!c5.trivial);
        assert!(measure_srg(&cycle(6)).is_none());
    }

    #[test]
    fn f2_gamma_is_c4() {
        let c = code("GF(2)", &[&[1, 0], &[0, 1]]);
        let g = build_gamma(&c).unwrap();
        assert_eq!(g.vertices.len(), 4);
        let m = measure_srg(&g.graph).unwrap();
        assert_eq!(m.tuple(), (4, 2, 0, 2));
        let p = predicted_srg(&two_weight_profile(&c).unwrap().unwrap()).unwrap();
        assert_eq!(p, m);
        assert!(coclique_structure(&c).unwrap());
    }

    #[test]
    fn f3_gamma_is_srg_9_4_1_2() {
        let c = code("GF(3)", &[&[1, 0], &[0, 1]]);
        let g = build_gamma(&c).unwrap();
        let m = measure_srg(&g.graph).unwrap();
        assert_eq!(m.tuple(), (9, 4, 1, 2));
        assert!(!m.trivial);
        assert_eq!(g.graph.edge_count(), 18);
        let p = predicted_srg(&two_weight_profile(&c).unwrap().unwrap()).unwrap();
        assert_eq!(p, m);
        assert!(matches!(coclique_structure(&c), Err(Error::Precondition(_))));
    }

    #[test]
    fn representative_swap_over_f2_squared() {
        // G = [(1,1) (1,0)] over F2 x F2: C_0 = {0, ((1,1),(0,0))}? No: C_0 needs every
        // coordinate in S_0, so use the all-(1,1) column twice.
        let wt = Arc::new(WeightTable::new(Arc::new(build_ring(&"prod(Z2,Z2)".parse().unwrap()).unwrap())).unwrap());
        let r = wt.ring();
        let one = r.one();
        let e1 = r.parse_elem("(1,0)").unwrap();
        let c = build_code(&wt, &[vec![one, e1]], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(c.zero_class().len(), 1);
        let c = build_code(&wt, &[vec![one, one]], DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(c.zero_class().len(), 2);
        let p = two_weight_profile(&c).unwrap();
        // words: (x,x) for x in R: weights 0,0,4,4 -> one nonzero weight
        assert!(p.is_none());
        assert!(build_gamma(&c).is_err());

        let c = build_code(&wt, &[vec![one, e1, one]], DEFAULT_ENUM_CAP).unwrap();
        let hist = crate::code::weight_distribution(&c);
        assert!(hist.len() >= 2);
    }

    #[test]
    fn pds_examples() {
        let r = build_ring(&"GF(3)".parse().unwrap()).unwrap();
        let group: Vec<Word> = (0..9).map(|i| word_at(&r, 2, i)).collect();
        let d = vec![vec![1, 0], vec![2, 0], vec![0, 1], vec![0, 2]];
        let cert = pds_check(&r, &group, &d).unwrap();
        assert_eq!(cert.srg_tuple(), (9, 4, 1, 2));
        let m = measure_srg(&cayley_graph(&r, &group, &d)).unwrap();
        assert_eq!(m.tuple(), cert.srg_tuple());
        assert!(pds_check(&r, &group, &[]).is_none());
        assert!(pds_check(&r, &group, &[vec![1, 0], vec![0, 1]]).is_none());
        assert!(pds_check(&r, &group, &[vec![0, 0], vec![1, 0], vec![2, 0]]).is_none());
    }

    #[test]
    fn equivalence_examples() {
        let c = code("GF(3)", &[&[1, 0], &[0, 1]]);
        let e = equivalence_check(&c).unwrap();
        assert!(e.two_weight && e.condition_ii && e.agree && e.passed(), "{e:?}");
        assert_eq!(e.pds.as_ref().unwrap().srg_tuple(), (9, 4, 1, 2));

        // one-weight: all nonzero vectors of (1,1)Z4
        let c = code("Z4", &[&[1, 2, 3], &[1, 2, 3]]);
        let e = equivalence_check(&c).unwrap();
        assert!(!e.two_weight && e.omega_submodule && !e.condition_ii && e.agree && e.passed(), "{e:?}");

        let c = code("GF(2)", &[&[1, 0], &[0, 1]]);
        let e = equivalence_check(&c).unwrap();
        assert!(e.two_weight && e.complement_submodule && e.passed(), "{e:?}");

        let nonmod = code("GF(3)", &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(equivalence_check(&nonmod).unwrap_err(), Error::NotModular);
    }

    #[test]
    fn dot_output() {
        let c = code("GF(3)", &[&[1, 0], &[0, 1]]);
        let g = build_gamma(&c).unwrap();
        let dot = g.graph.to_dot(&g.labels(c.ring()));
        assert_eq!(dot.matches(" -- ").count(), 18);
        assert!(dot.contains("label=\"1 2\""));
    }
}
