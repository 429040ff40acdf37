//! Serializable result trees for every front-end command.

use serde::{Deserialize, Serialize};

use crate::code::{
    lemma_sweep, modular_index, one_weight_characterization, two_weight_profile, weight_distribution,
    LemmaReport, LinearCode, OneWeightCheck, TwoWeightProfile,
};
use crate::dual::DualReport;
use crate::error::Result;
use crate::graph::{build_gamma, coclique_structure, measure_srg, predicted_srg, EquivalenceReport, SrgParams};
use crate::rational::Rational;
use crate::search::SearchReport;
use crate::verify::VerifyReport;
use crate::weight::{verify_coset_sum, verify_zero_set, WeightTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub element: String,
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingReport {
    pub spec: String,
    pub order: usize,
    pub units: usize,
    pub exponent: u32,
    pub commutative: bool,
    pub weights: Vec<WeightEntry>,
    pub s0: Vec<String>,
    pub zero_set: bool,
    pub coset_sums: bool,
}

impl RingReport {
    pub fn passed(&self) -> bool {
        self.zero_set && self.coset_sums
    }
}

pub fn ring_report(wt: &WeightTable) -> RingReport {
    let ring = wt.ring();
    let zs = verify_zero_set(wt);
    RingReport {
        spec: ring.spec().to_string(),
        order: ring.order(),
        units: ring.units().len(),
        exponent: ring.additive_exponent(),
        commutative: ring.is_commutative(),
        weights: ring
            .elements()
            .map(|x| WeightEntry {
                element: ring.format_elem(x),
                weight: wt.whom(x),
            })
            .collect(),
        s0: zs.s0.iter().map(|&x| ring.format_elem(x)).collect(),
        zero_set: zs.passed,
        coset_sums: verify_coset_sum(wt),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistogramEntry {
    #[serde(with = "crate::rational::serde_str")]
    pub weight: Rational,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub ring: String,
    pub k: usize,
    pub n: usize,
    pub size: usize,
    pub size0: usize,
    pub histogram: Vec<HistogramEntry>,
    #[serde(with = "crate::rational::serde_opt_str")]
    pub index: Option<Rational>,
    pub profile: Option<TwoWeightProfile>,
    pub one_weight: OneWeightCheck,
    pub lemmas: Option<LemmaReport>,
}

impl CodeReport {
    pub fn passed(&self) -> bool {
        self.one_weight.agree && self.lemmas.as_ref().map_or(true, LemmaReport::passed)
    }
}

pub fn code_report(code: &LinearCode, seed: u64) -> Result<CodeReport> {
    let index = modular_index(code);
    Ok(CodeReport {
        ring: code.ring().spec().to_string(),
        k: code.k(),
        n: code.n(),
        size: code.size(),
        size0: code.zero_class().len(),
        histogram: weight_distribution(code)
            .into_iter()
            .map(|(weight, count)| HistogramEntry { weight, count })
            .collect(),
        profile: two_weight_profile(code)?,
        one_weight: one_weight_characterization(code),
        lemmas: if index.is_some() { Some(lemma_sweep(code, seed)?) } else { None },
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub edges: usize,
    pub measured: Option<SrgParams>,
    pub predicted: Option<SrgParams>,
    pub predicted_error: Option<String>,
    pub equal: bool,
    pub feasible: bool,
    pub coclique: Option<bool>,
}

impl GraphReport {
    pub fn passed(&self) -> bool {
        self.equal && self.feasible && self.coclique != Some(false)
    }
}

/// The report and the DOT rendering of `Gamma(C)`.
pub fn graph_report(code: &LinearCode) -> Result<(GraphReport, String)> {
    let gamma = build_gamma(code)?;
    let profile = two_weight_profile(code)?.expect("build_gamma checked two weights");
    let measured = measure_srg(&gamma.graph);
    let (predicted, predicted_error) = match predicted_srg(&profile) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let coclique = if profile.trivial_graph() && profile.index.is_some() {
        Some(coclique_structure(code)?)
    } else {
        None
    };
    let dot = gamma.graph.to_dot(&gamma.labels(code.ring()));
    Ok((
        GraphReport {
            vertices: gamma.graph.order(),
            edges: gamma.graph.edge_count(),
            equal: predicted.is_some() && measured == predicted,
            feasible: measured.as_ref().is_some_and(SrgParams::feasible),
            measured,
            predicted,
            predicted_error,
            coclique,
        },
        dot,
    ))
}

/// Top-level report; only the sections a command produces are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<RingReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub code: Option<CodeReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<GraphReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub equivalence: Option<EquivalenceReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dual: Option<DualReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verify: Option<VerifyReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search: Option<SearchReport>,
    /// Wall-clock milliseconds; only filled in on request so reports stay reproducible.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            passed: true,
            ring: None,
            code: None,
            graph: None,
            equivalence: None,
            dual: None,
            verify: None,
            search: None,
            elapsed_ms: None,
        }
    }

    /// Recomputes `passed` from the sections present.
    pub fn settle(mut self) -> Self {
        self.passed = self.ring.as_ref().map_or(true, RingReport::passed)
            && self.code.as_ref().map_or(true, CodeReport::passed)
            && self.graph.as_ref().map_or(true, GraphReport::passed)
            && self.equivalence.as_ref().map_or(true, EquivalenceReport::passed)
            && self.dual.as_ref().map_or(true, DualReport::passed)
            && self.verify.as_ref().map_or(true, VerifyReport::passed)
            && self.search.as_ref().map_or(true, SearchReport::passed);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{build_code, DEFAULT_ENUM_CAP};
    use crate::dual::dual_pipeline;
    use crate::graph::equivalence_check;
    use crate::ring::build_ring;
    use crate::search::{search, SearchMode, SearchSpec};
    use crate::verify::{verify_ring, VerifyOptions};
    use std::sync::Arc;

    fn weights(s: &str) -> Arc<WeightTable> {
        Arc::new(WeightTable::new(Arc::new(build_ring(&s.parse().unwrap()).unwrap())).unwrap())
    }

    #[test]
    fn ring_report_z4() {
        let r = ring_report(&weights("Z4"));
        let w: Vec<&str> = r.weights.iter().map(|e| e.element.as_str()).collect();
        assert_eq!(w, ["0", "1", "2", "3"]);
        let v: Vec<String> = r.weights.iter().map(|e| e.weight.to_string()).collect();
        assert_eq!(v, ["0", "1", "2", "1"]);
        assert!(r.passed());
        assert_eq!(ring_report(&weights("prod(Z2,Z2)")).s0.len(), 2);
    }

    #[test]
    fn full_report_round_trips() {
        let wt = weights("GF(3)");
        let code = build_code(&wt, &[vec![1, 0], vec![0, 1]], DEFAULT_ENUM_CAP).unwrap();
        let mut rep = Report::new("all");
        rep.ring = Some(ring_report(&wt));
        rep.code = Some(code_report(&code, 0).unwrap());
        rep.graph = Some(graph_report(&code).unwrap().0);
        rep.equivalence = Some(equivalence_check(&code).unwrap());
        rep.dual = Some(dual_pipeline(&code, DEFAULT_ENUM_CAP, 0).unwrap());
        rep.verify = Some(verify_ring(&wt, &VerifyOptions::default()).unwrap());
        let spec = SearchSpec {
            k: 2,
            n_max: 2,
            mode: SearchMode::Grid { mult_cap: 2 },
            dedupe: true,
            seed: 0,
            cap: DEFAULT_ENUM_CAP,
        };
        rep.search = Some(search(&wt, &spec).unwrap());
        rep.elapsed_ms = Some(3);
        let rep = rep.settle();
        assert!(rep.passed);
        let text = serde_json::to_string_pretty(&rep).unwrap();
        assert!(text.contains("\"3/2\""));
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rep);
    }

    #[test]
    fn analyze_f3_identity() {
        let wt = weights("GF(3)");
        let code = build_code(&wt, &[vec![1, 0], vec![0, 1]], DEFAULT_ENUM_CAP).unwrap();
        let r = code_report(&code, 0).unwrap();
        let p = r.profile.unwrap();
        let got = (p.w1.to_string(), p.w2.to_string(), p.b1, p.b2);
        assert_eq!(got, ("3/2".to_string(), "3".to_string(), 4, 4));
        assert_eq!(r.index.unwrap().to_string(), "1/2");
        let (g, dot) = graph_report(&code).unwrap();
        assert_eq!((g.vertices, g.edges), (9, 18));
        assert!(g.passed());
        assert!(dot.starts_with("graph G {"));
    }
}
