use std::collections::BTreeSet;
use std::sync::Arc;

use frobcode::code::{build_code, DEFAULT_ENUM_CAP};
use frobcode::{build_ring, Elem, WeightTable};
use proptest::prelude::*;

fn weights(spec: &str) -> Arc<WeightTable> {
    let ring = build_ring(&spec.parse().unwrap()).unwrap();
    Arc::new(WeightTable::new(Arc::new(ring)).unwrap())
}

fn matrix(q: Elem) -> impl Strategy<Value = Vec<Vec<Elem>>> {
    (1usize..=2, 1usize..=4).prop_flat_map(move |(k, n)| proptest::collection::vec(proptest::collection::vec(0..q, n), k))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // without zero columns the total weight of a code is n |C|
    #[test]
    fn total_weight_is_n_times_size(rows in matrix(4), spec in prop::sample::select(vec!["Z4", "GF(2^2)", "prod(Z2,Z2)"])) {
        let wt = weights(spec);
        let n = rows[0].len();
        prop_assume!((0..n).all(|j| rows.iter().any(|r| r[j] != 0)));
        let code = build_code(&wt, &rows, DEFAULT_ENUM_CAP).unwrap();
        let total: i64 = (0..code.size()).map(|i| code.scaled_weight(i)).sum();
        prop_assert_eq!(total, n as i64 * code.size() as i64 * wt.denom());
    }

    // the code is exactly the set of left combinations of the rows
    #[test]
    fn codewords_are_row_combinations(rows in matrix(3)) {
        let wt = weights("GF(3)");
        let ring = wt.ring();
        let n = rows[0].len();
        prop_assume!((0..n).all(|j| rows.iter().any(|r| r[j] != 0)));
        let code = build_code(&wt, &rows, DEFAULT_ENUM_CAP).unwrap();
        let mut naive = BTreeSet::new();
        for a in ring.elements() {
            for b in ring.elements() {
                let coef = [a, b];
                let w: Vec<Elem> = (0..n)
                    .map(|j| rows.iter().zip(coef).fold(0, |acc, (r, c)| ring.add(acc, ring.mul(c, r[j]))))
                    .collect();
                naive.insert(w);
            }
        }
        let got: BTreeSet<Vec<Elem>> = code.codewords().iter().cloned().collect();
        prop_assert_eq!(got, naive);
    }
}
